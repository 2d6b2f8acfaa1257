//! Schur polynomials evaluated at exact values. The Jacobi–Trudi determinant
//! is the production path; tableau enumeration is kept as an independent
//! cross-check with a hard size cap.

use num_traits::{One, Zero};

use super::partition::Partition;
use crate::arith::Rational;
use crate::error::{bail, Result};

/// Largest `|λ|` the tableau enumeration accepts.
pub const TABLEAU_MAX_SIZE: u64 = 10;
/// Largest number of variables the tableau enumeration accepts.
pub const TABLEAU_MAX_VARS: usize = 4;

/// `h_0, ..., h_n` of the given values.
pub fn complete_homogeneous(values: &[Rational], n: usize) -> Vec<Rational> {
    // h_k(x_1..x_m) = h_k(x_1..x_{m-1}) + x_m h_{k-1}(x_1..x_m)
    let mut h = vec![Rational::zero(); n + 1];
    h[0] = Rational::one();
    for x in values {
        for k in 1..=n {
            let prev = &h[k - 1] * x;
            h[k] += prev;
        }
    }
    h
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// `s_λ(values)` as `det(h_{λ_i - i + j})`.
pub fn schur_jt(lambda: &Partition, values: &[Rational]) -> Result<Rational> {
    let l = lambda.length();
    if l > values.len() {
        bail!(
            Precondition,
            "partition {lambda} has {l} parts but only {} values were given",
            values.len()
        );
    }
    if l == 0 {
        return Ok(Rational::one());
    }
    let parts = &lambda.parts()[..l];
    let top = parts[0] as usize + l;
    let h = complete_homogeneous(values, top);
    let m = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let k = parts[i] as i64 - i as i64 + j as i64;
                    if k < 0 {
                        Rational::zero()
                    } else {
                        h[k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(m))
}

/// `s_λ(values)` as a sum over semistandard tableaux of shape λ.
pub fn schur_tableau_oracle(lambda: &Partition, values: &[Rational]) -> Result<Rational> {
    if lambda.size() > TABLEAU_MAX_SIZE || values.len() > TABLEAU_MAX_VARS {
        bail!(
            Resource,
            "tableau enumeration limited to |λ| <= {TABLEAU_MAX_SIZE} and at most {TABLEAU_MAX_VARS} values"
        );
    }
    let shape: Vec<usize> = lambda.parts()[..lambda.length()].iter().map(|&p| p as usize).collect();
    if shape.len() > values.len() {
        return Ok(Rational::zero());
    }
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut total = Rational::zero();
    fill(&cells, 0, &mut grid, values, Rational::one(), &mut total);
    Ok(total)
}

// Cells are visited row by row, so the left and upper neighbours are
// always filled already.
fn fill(
    cells: &[(usize, usize)],
    k: usize,
    grid: &mut Vec<Vec<usize>>,
    values: &[Rational],
    weight: Rational,
    total: &mut Rational,
) {
    if k == cells.len() {
        *total += weight;
        return;
    }
    let (i, j) = cells[k];
    let lo_row = if j > 0 { grid[i][j - 1] } else { 0 };
    let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..values.len() {
        grid[i][j] = v;
        fill(cells, k + 1, grid, values, &weight * &values[v], total);
    }
}
