//! Unramified local L-factors as exact reciprocal polynomials, and the
//! generating-function identities behind the unramified zeta integral.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::partition::partitions_up_to;
use super::satake::{CharValue, ChiSqrt, SatakeData};
use super::schur::schur_jt;
use super::torus::{shintani_whittaker, toral_q_values, Parabolic, QTerm};
use crate::arith::{fmt_rational, rat, Rational, TruncatedSeries};
use crate::error::{bail, Result};

/// `L = 1 / P(X)` with `X = q^{-s}` and `P(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactor {
    coeffs: Vec<Rational>,
}

impl LocalFactor {
    pub fn one() -> Self {
        LocalFactor { coeffs: vec![Rational::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.first() != Some(&Rational::one()) {
            bail!(Domain, "a reciprocal polynomial must have constant term 1");
        }
        Ok(LocalFactor { coeffs })
    }

    /// `∏ (1 - r X)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut out = Self::one();
        for r in roots {
            out = out.mul(&LocalFactor { coeffs: vec![Rational::one(), -r.clone()] });
        }
        out.trim()
    }

    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LocalFactor { coeffs: out }.trim()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_series(&self, degree: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.coeffs.iter().cloned(), degree)
    }

    /// The L-factor `1/P` as a power series.
    pub fn l_series(&self, degree: usize) -> TruncatedSeries {
        self.to_series(degree).inverse().expect("constant term is 1")
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(k == 0 && self.coeffs.len() == 1) {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if k > 0 && mag.is_one() { String::new() } else { fmt_rational(&mag) };
            match k {
                0 => f.write_str(&coef)?,
                1 => write!(f, "{coef}X")?,
                _ => write!(f, "{coef}X^{k}")?,
            }
        }
        Ok(())
    }
}

/// Reciprocal polynomials of the twisted symmetric square, exterior square
/// and Rankin–Selberg `π × π ⊗ χ` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactors {
    pub sym: LocalFactor,
    pub ext: LocalFactor,
    pub rs: LocalFactor,
}

pub fn local_factors(sat: &SatakeData) -> Result<LocalFactors> {
    let c = sat.chi_value()?;
    let a = sat.alphas();
    let r = a.len();
    let root = |i: usize, j: usize| c * &a[i] * &a[j];
    let sym_roots: Vec<Rational> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).map(|(i, j)| root(i, j)).collect();
    let ext_roots: Vec<Rational> =
        (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).map(|(i, j)| root(i, j)).collect();
    let rs_roots: Vec<Rational> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| root(i, j)).collect();
    Ok(LocalFactors {
        sym: LocalFactor::from_roots(&sym_roots),
        ext: LocalFactor::from_roots(&ext_roots),
        rs: LocalFactor::from_roots(&rs_roots),
    })
}

/// `rs = ext · sym` as polynomials.
pub fn rs_factorization_check(sat: &SatakeData) -> Result<bool> {
    let f = local_factors(sat)?;
    Ok(f.rs == f.ext.mul(&f.sym))
}

/// `Σ s_λ(α) X^{|λ|/2}` over even partitions `λ` with at most `r - 1`
/// parts, truncated at `X^D`.
pub fn even_partition_gf(sat: &SatakeData, degree: usize) -> Result<TruncatedSeries> {
    let r = sat.rank();
    let mut out = TruncatedSeries::zero(degree);
    for mu in partitions_up_to(degree as u32, r - 1) {
        let lam = super::partition::Partition::new(mu.parts().iter().map(|p| 2 * p).collect())?;
        let s = schur_jt(&lam, sat.alphas())?;
        out.add_to_coeff(mu.size() as usize, &s);
    }
    Ok(out)
}

/// `∏_{i≤j} (1 - α_i α_j X)^{-1} = GF(X) · (1 - ω² X^r)^{-1}` to `X^D`.
pub fn bg_identity_check(sat: &SatakeData, degree: usize) -> Result<bool> {
    let untwisted = SatakeData::new(sat.alphas().to_vec(), sat.q(), CharValue::trivial())?;
    let lhs = local_factors(&untwisted)?.sym.l_series(degree);
    let omega = sat.omega();
    let norm = TruncatedSeries::one_minus_monomial(&omega * &omega, sat.rank(), degree);
    let rhs = even_partition_gf(sat, degree)?.try_mul(&norm.inverse()?)?;
    lhs.equal_to(&rhs)
}

/// Value of a Tate factor at a point: finite, or a pole of `1/(1 - cY)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TateValue {
    Finite(Rational),
    Pole,
}

/// `s ↦ (1 - c q^{-(s + shift)})^{-1}`, or the constant 1 when ramified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateFactor {
    pub chi: CharValue,
    pub shift: Rational,
}

pub fn tate_factor(chi: CharValue, shift: Rational) -> TateFactor {
    TateFactor { chi, shift }
}

impl TateFactor {
    /// Whether `c q^{-(s+shift)} = 1`, i.e. `c^d = q^n` for `s + shift = n/d`.
    pub fn is_pole(&self, s: &Rational, q: u64) -> bool {
        let CharValue::Unramified(c) = &self.chi else {
            return false;
        };
        if !c.is_positive() {
            return false;
        }
        let z = s + &self.shift;
        let d = z.denom().clone();
        let Ok(d) = u32::try_from(&d) else {
            return false;
        };
        num_traits::pow(c.clone(), d as usize) == q_pow(q, z.numer())
    }

    pub fn eval(&self, s: &Rational, q: u64) -> Result<TateValue> {
        let CharValue::Unramified(c) = &self.chi else {
            return Ok(TateValue::Finite(Rational::one()));
        };
        if self.is_pole(s, q) {
            return Ok(TateValue::Pole);
        }
        let y = rational_q_power(q, &-(s + &self.shift))?;
        Ok(TateValue::Finite((Rational::one() - c * y).recip()))
    }
}

fn q_pow(q: u64, n: &BigInt) -> Rational {
    let base = Rational::from_integer(BigInt::from(q));
    let e = usize::try_from(n.abs()).expect("exponent fits in usize");
    let p = num_traits::pow(base, e);
    if n.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// `q^z` when it is rational, i.e. when `q` is a perfect `d`-th power for
/// `z = n/d`.
pub fn rational_q_power(q: u64, z: &Rational) -> Result<Rational> {
    let d = u32::try_from(z.denom()).map_err(|_| crate::Error::Unsupported("exponent denominator too large".into()))?;
    let root = (q as f64).powf(1.0 / d as f64).round() as u64;
    let exact = (root.saturating_sub(1)..=root + 1).find(|b| b.checked_pow(d) == Some(q));
    let Some(b) = exact else {
        bail!(Unsupported, "q^({}) is irrational for q = {q}", fmt_rational(z));
    };
    Ok(q_pow(b, z.numer()))
}

/// The twisted unramified zeta integral as a series in `Y = q^{-2s+1/2}`:
/// the sum over even normalized `λ` of `W(t_λ) Q(t_λ) Q'(t_λ) δ_Q(t_λ)^s
/// δ_B(t_λ)^{-1}`. Every term must collapse to a multiple of
/// `Y^{|λ|/2}`; anything else is reported as an inconsistency.
pub fn unramified_zeta_series(sat: &SatakeData, chi_sqrt: &ChiSqrt, degree: usize) -> Result<TruncatedSeries> {
    let r = sat.rank();
    let mut out = TruncatedSeries::zero(degree);
    let q_par = if r >= 2 { Some(Parabolic::mirabolic(r)?) } else { None };
    for mu in partitions_up_to(degree as u32, r - 1) {
        let mut lam: Vec<i64> = mu.parts().iter().map(|&p| 2 * i64::from(p)).collect();
        lam.push(0);
        let w = shintani_whittaker(&lam, sat)?;
        let (qv, qp) = toral_q_values(&lam, sat, chi_sqrt)?;
        let dq_s = match &q_par {
            Some(p) => {
                let e = super::torus::modulus_exponent(p, &lam, r)?;
                QTerm::q_power(Rational::zero(), -Rational::from_integer(e.into()))
            }
            None => QTerm::one(),
        };
        let db_inv = QTerm::modulus_power(&Parabolic::Borel, &lam, r, -Rational::one())?;
        let term = &(&(&w * &qv) * &(&qp * &dq_s)) * &db_inv;
        if term.is_zero() {
            continue;
        }
        let m = Rational::from_integer(mu.size().into());
        if term.s_coeff != &m * rat(-2, 1) || term.q_exp != &m * rat(1, 2) {
            bail!(
                Consistency,
                "term for λ = {lam:?} is {term}, not a multiple of q^({}(-2s + 1/2))",
                fmt_rational(&m)
            );
        }
        out.add_to_coeff(mu.size() as usize, &term.coeff);
    }
    Ok(out)
}

/// `L(2s - ½, Sym² ⊗ χ) · L(r(2s - ½), χ^r ω²)^{-1}` as a series in
/// `Y = q^{-2s+1/2}`.
pub fn unramified_zeta_closed_form(sat: &SatakeData, degree: usize) -> Result<TruncatedSeries> {
    let c = sat.chi_value()?;
    let omega = sat.omega();
    let r = sat.rank();
    let sym = local_factors(sat)?.sym.l_series(degree);
    let norm = TruncatedSeries::one_minus_monomial(num_traits::pow(c.clone(), r) * &omega * &omega, r, degree);
    sym.try_mul(&norm)
}

pub fn unramified_zeta_check(sat: &SatakeData, chi_sqrt: &ChiSqrt, degree: usize) -> Result<bool> {
    if chi_sqrt_mismatch(sat, chi_sqrt)? {
        bail!(Precondition, "the chosen square root does not square to χ(ϖ)");
    }
    let lhs = unramified_zeta_series(sat, chi_sqrt, degree)?;
    lhs.equal_to(&unramified_zeta_closed_form(sat, degree)?)
}

fn chi_sqrt_mismatch(sat: &SatakeData, chi_sqrt: &ChiSqrt) -> Result<bool> {
    Ok(&chi_sqrt.pow(2)? != sat.chi_value()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Sign};

    fn sat(alphas: &[Rational], chi: Rational) -> SatakeData {
        SatakeData::new(alphas.to_vec(), 5, CharValue::Unramified(chi)).unwrap()
    }

    #[test]
    fn rank_one_factors() {
        let a = rat(3, 2);
        let f = local_factors(&sat(&[a.clone()], int(1))).unwrap();
        assert_eq!(f.sym.coeffs(), &[int(1), -(&a * &a)]);
        assert_eq!(f.ext, LocalFactor::one());
        assert_eq!(f.rs, f.sym);
    }

    #[test]
    fn degrees_in_rank_three() {
        let f = local_factors(&sat(&[int(2), int(3), int(5)], int(1))).unwrap();
        assert_eq!((f.sym.degree(), f.ext.degree(), f.rs.degree()), (6, 3, 9));
    }

    #[test]
    fn rs_factorizes() {
        for r in 1..=5 {
            let alphas: Vec<Rational> = (1..=r).map(|i| rat(i as i64 + 1, 2 * i as i64 + 1)).collect();
            assert!(rs_factorization_check(&sat(&alphas, rat(-3, 7))).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn ramified_factors_rejected() {
        let s = SatakeData::new(vec![int(1)], 5, CharValue::Ramified).unwrap();
        assert!(matches!(local_factors(&s), Err(crate::Error::Precondition(_))));
    }

    #[test]
    fn display_of_cube() {
        let f = local_factors(&sat(&[int(1), int(1)], int(1))).unwrap();
        assert_eq!(f.sym.to_string(), "1 - 3X + 3X^2 - X^3");
        assert_eq!(LocalFactor::one().to_string(), "1");
    }

    #[test]
    fn gf_examples() {
        let s = sat(&[int(1), int(1)], int(1));
        let gf = even_partition_gf(&s, 6).unwrap();
        for m in 0..=6 {
            assert_eq!(gf.coeff(m), &int(2 * m as i64 + 1));
        }
        let a = [int(2), rat(-1, 3), int(5)];
        let gf = even_partition_gf(&sat(&a, int(1)), 1).unwrap();
        let h2 = super::super::schur::complete_homogeneous(&a, 2)[2].clone();
        assert_eq!(gf.coeffs(), &[int(1), h2]);
    }

    #[test]
    fn bg_identity_small() {
        assert!(bg_identity_check(&sat(&[int(1), int(1)], int(1)), 3).unwrap());
        assert!(bg_identity_check(&sat(&[rat(2, 3), rat(-7, 5)], int(1)), 10).unwrap());
        let a = [int(2), rat(1, 2), int(3), rat(1, 3)];
        assert!(bg_identity_check(&sat(&a, int(1)), 8).unwrap());
        assert!(bg_identity_check(&sat(&[rat(5, 4)], int(1)), 6).unwrap());
    }

    #[test]
    fn bg_identity_detects_wrong_normalizer() {
        // dropping the ω² X^r correction must break the identity
        let s = sat(&[int(2), int(3)], int(1));
        let lhs = local_factors(&s).unwrap().sym.l_series(6);
        assert_ne!(lhs, even_partition_gf(&s, 6).unwrap());
    }

    #[test]
    fn tate_poles() {
        let triv = tate_factor(CharValue::trivial(), int(0));
        assert!(triv.is_pole(&int(0), 7));
        assert!(!triv.is_pole(&int(1), 7));
        let shifted = tate_factor(CharValue::Unramified(int(7)), int(0));
        assert!(shifted.is_pole(&int(1), 7));
        assert_eq!(shifted.eval(&int(1), 7).unwrap(), TateValue::Pole);
        let ram = tate_factor(CharValue::Ramified, int(0));
        assert_eq!(ram.eval(&int(0), 7).unwrap(), TateValue::Finite(int(1)));
        assert_eq!(triv.eval(&int(1), 3).unwrap(), TateValue::Finite(rat(3, 2)));
        assert_eq!(triv.eval(&rat(1, 2), 9).unwrap(), TateValue::Finite(rat(3, 2)));
        assert!(triv.eval(&rat(1, 2), 5).is_err());
        // 4^(1/2) = 2 = c
        assert!(tate_factor(CharValue::Unramified(int(2)), int(0)).is_pole(&rat(1, 2), 4));
    }

    #[test]
    fn zeta_rank_two_ones() {
        let s = sat(&[int(1), int(1)], int(1));
        let cs = ChiSqrt::new(int(1), Sign::Plus);
        let z = unramified_zeta_series(&s, &cs, 10).unwrap();
        assert_eq!(&z.coeffs()[..4], &[int(1), int(3), int(5), int(7)]);
        assert!(unramified_zeta_check(&s, &cs, 10).unwrap());
        // (1 - X)^{-3} = GF / (1 - X^2)
        let lhs = local_factors(&s).unwrap().sym.l_series(3);
        assert_eq!(lhs.coeffs(), &[int(1), int(3), int(6), int(10)]);
    }

    #[test]
    fn zeta_twisted_rank_three() {
        let s = sat(&[rat(1, 2), int(3), rat(-2, 5)], int(2));
        let cs = ChiSqrt::new(int(2), Sign::Plus);
        assert!(unramified_zeta_check(&s, &cs, 8).unwrap());
        assert_eq!(
            unramified_zeta_series(&s, &cs, 8).unwrap(),
            unramified_zeta_series(&s, &cs.flipped(), 8).unwrap()
        );
    }

    #[test]
    fn zeta_rejects_bad_root() {
        let s = sat(&[int(1), int(2)], int(4));
        assert!(unramified_zeta_check(&s, &ChiSqrt::new(int(3), Sign::Plus), 4).is_err());
    }
}
