//! Partial Euler products of the twisted symmetric square L-function in
//! floating complex arithmetic.

use num_complex::Complex64;

use crate::error::{bail, Result};

/// Local data at one prime for Euler-product evaluation. `chi = None`
/// marks a ramified twist, whose local factor is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerRow {
    pub p: u64,
    pub alphas: Vec<Complex64>,
    pub chi: Option<Complex64>,
}

/// `∏_p ∏_{i≤j} (1 - χ(p) α_i α_j p^{-s})^{-1}` over the listed primes.
pub fn euler_product(table: &[EulerRow], s: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for row in table {
        let Some(c) = row.chi else { continue };
        let x = Complex64::new(row.p as f64, 0.0).powc(-s);
        let a = &row.alphas;
        for i in 0..a.len() {
            for j in i..a.len() {
                let y = c * a[i] * a[j] * x;
                if y.norm() >= 1.0 {
                    bail!(
                        Convergence,
                        "|χ(p) α_i α_j p^(-s)| = {:.6} >= 1 at p = {}",
                        y.norm(),
                        row.p
                    );
                }
                acc /= Complex64::new(1.0, 0.0) - y;
            }
        }
    }
    Ok(acc)
}

/// Bound on `|L / L_partial - 1|` for the primes `p ≥ cutoff` missing from
/// a partial product, given rank `r`, `σ = Re s` and a uniform bound
/// `m ≥ |χ(p) α_i α_j|`. Uses `-log(1 - y) ≤ 2|y|` for `|y| ≤ 1/2` and
/// `Σ_{n≥P} n^{-σ} ≤ P^{-σ} + P^{1-σ}/(σ - 1)`. `None` when these do
/// not apply.
pub fn euler_tail_bound(r: usize, sigma: f64, m: f64, cutoff: u64) -> Option<f64> {
    if sigma <= 1.0 || cutoff < 2 {
        return None;
    }
    let p = cutoff as f64;
    if m * p.powf(-sigma) > 0.5 {
        return None;
    }
    let pairs = (r * (r + 1) / 2) as f64;
    let sum = p.powf(-sigma) + p.powf(1.0 - sigma) / (sigma - 1.0);
    Some((2.0 * pairs * m * sum).exp() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    fn trivial_rows(below: u64) -> Vec<EulerRow> {
        (2..below)
            .filter(|&p| is_prime(p))
            .map(|p| EulerRow { p, alphas: vec![Complex64::new(1.0, 0.0)], chi: Some(Complex64::new(1.0, 0.0)) })
            .collect()
    }

    #[test]
    fn empty_table_is_one() {
        assert_eq!(euler_product(&[], Complex64::new(2.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rank_one_trivial_approaches_zeta_two() {
        let v = euler_product(&trivial_rows(100), Complex64::new(2.0, 0.0)).unwrap();
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let bound = euler_tail_bound(1, 2.0, 1.0, 100).unwrap();
        assert!(v.im.abs() < 1e-12);
        assert!(v.re < zeta2);
        assert!((zeta2 / v.re - 1.0) <= bound);
    }

    #[test]
    fn unitary_rank_two_at_three() {
        let a = Complex64::from_polar(1.0, 0.7);
        let rows: Vec<EulerRow> = [2u64, 3, 5, 7]
            .iter()
            .map(|&p| EulerRow { p, alphas: vec![a, a.inv()], chi: Some(Complex64::new(1.0, 0.0)) })
            .collect();
        let v = euler_product(&rows, Complex64::new(3.0, 0.0)).unwrap();
        assert!(v.norm().is_finite());
    }

    #[test]
    fn abscissa_violation() {
        let rows = vec![EulerRow { p: 2, alphas: vec![Complex64::new(2.0, 0.0)], chi: Some(Complex64::new(1.0, 0.0)) }];
        assert!(matches!(
            euler_product(&rows, Complex64::new(1.0, 0.0)),
            Err(crate::Error::Convergence(_))
        ));
    }

    #[test]
    fn ramified_rows_contribute_one() {
        let rows = vec![EulerRow { p: 2, alphas: vec![Complex64::new(9.0, 0.0)], chi: None }];
        assert_eq!(euler_product(&rows, Complex64::new(0.5, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn tail_bound_domain() {
        assert!(euler_tail_bound(1, 1.0, 1.0, 100).is_none());
        assert!(euler_tail_bound(1, 2.0, 1.0, 100).unwrap() < 0.03);
    }
}
