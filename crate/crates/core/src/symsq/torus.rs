//! Values at torus points `t_λ = diag(ϖ^λ1, ..., ϖ^λr)`: modulus
//! characters, Shintani's Whittaker formula and the toral semi-Whittaker
//! values. Powers of `q`, including half-integer and `s`-dependent ones,
//! are carried symbolically in [`QTerm`].

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::partition::Partition;
use super::satake::{ChiSqrt, SatakeData};
use super::schur::schur_jt;
use crate::arith::{fmt_rational, rat, Rational};
use crate::error::{bail, Result};

/// Parabolic subgroups of `GL_r` whose modulus characters appear on the
/// torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parabolic {
    /// Upper triangular Borel of `GL_r`.
    Borel,
    /// Borel of `GL_{r-1}` embedded as `h ↦ diag(h, 1)`.
    BorelPrime,
    /// Standard block parabolic with the given block sizes.
    Blocks(Vec<usize>),
}

impl Parabolic {
    /// The `(2, ..., 2)` parabolic; `r` must be even.
    pub fn pairs(r: usize) -> Result<Self> {
        if r % 2 != 0 || r == 0 {
            bail!(Precondition, "the (2,...,2) parabolic needs even r, got {r}");
        }
        Ok(Parabolic::Blocks(vec![2; r / 2]))
    }

    /// The `(r-1, 1)` parabolic.
    pub fn mirabolic(r: usize) -> Result<Self> {
        if r < 2 {
            bail!(Precondition, "the (r-1,1) parabolic needs r >= 2, got {r}");
        }
        Ok(Parabolic::Blocks(vec![r - 1, 1]))
    }
}

/// The integer `e` with `δ_P(t_λ) = q^{-e}`: the sum of `λ_i - λ_j` over
/// the roots `(i, j)` in the unipotent radical.
pub fn modulus_exponent(group: &Parabolic, lambda: &[i64], r: usize) -> Result<i64> {
    if lambda.len() > r {
        bail!(Precondition, "λ has {} entries but r = {r}", lambda.len());
    }
    let l = |i: usize| lambda.get(i).copied().unwrap_or(0);
    let e = match group {
        Parabolic::Borel => (0..r).map(|i| l(i) * (r as i64 - 1 - 2 * i as i64)).sum(),
        Parabolic::BorelPrime => {
            let m = r.saturating_sub(1);
            (0..m).map(|i| l(i) * (m as i64 - 1 - 2 * i as i64)).sum()
        }
        Parabolic::Blocks(sizes) => {
            if sizes.iter().sum::<usize>() != r || sizes.contains(&0) {
                bail!(Precondition, "block sizes {sizes:?} do not partition {r}");
            }
            let block_of: Vec<usize> =
                sizes.iter().enumerate().flat_map(|(b, &n)| std::iter::repeat(b).take(n)).collect();
            let mut e = 0;
            for i in 0..r {
                for j in i + 1..r {
                    if block_of[i] < block_of[j] {
                        e += l(i) - l(j);
                    }
                }
            }
            e
        }
    };
    Ok(e)
}

/// `coeff · q^(q_exp + s_coeff·s)` with `q` and `s` formal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTerm {
    pub coeff: Rational,
    pub q_exp: Rational,
    pub s_coeff: Rational,
}

impl QTerm {
    pub fn constant(coeff: Rational) -> Self {
        QTerm { coeff, q_exp: Rational::zero(), s_coeff: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `q^(q_exp + s_coeff·s)`.
    pub fn q_power(q_exp: Rational, s_coeff: Rational) -> Self {
        QTerm { coeff: Rational::one(), q_exp, s_coeff }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `δ_P(t_λ)^k` for a rational power `k`.
    pub fn modulus_power(group: &Parabolic, lambda: &[i64], r: usize, k: Rational) -> Result<Self> {
        let e = modulus_exponent(group, lambda, r)?;
        Ok(Self::q_power(-Rational::from_integer(e.into()) * k, Rational::zero()))
    }
}

impl Mul for &QTerm {
    type Output = QTerm;
    fn mul(self, rhs: &QTerm) -> QTerm {
        if self.is_zero() || rhs.is_zero() {
            return QTerm::zero();
        }
        QTerm {
            coeff: &self.coeff * &rhs.coeff,
            q_exp: &self.q_exp + &rhs.q_exp,
            s_coeff: &self.s_coeff + &rhs.s_coeff,
        }
    }
}

impl fmt::Display for QTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.coeff))?;
        if self.is_zero() {
            return Ok(());
        }
        match (self.q_exp.is_zero(), self.s_coeff.is_zero()) {
            (true, true) => Ok(()),
            (false, true) => write!(f, "·q^({})", fmt_rational(&self.q_exp)),
            (true, false) => write!(f, "·q^({}s)", fmt_rational(&self.s_coeff)),
            (false, false) => write!(
                f,
                "·q^({} + {}s)",
                fmt_rational(&self.q_exp),
                fmt_rational(&self.s_coeff)
            ),
        }
    }
}

fn check_normalized(lambda: &[i64], r: usize) -> Result<()> {
    if lambda.len() != r {
        bail!(Precondition, "λ must have exactly r = {r} entries, got {}", lambda.len());
    }
    if lambda[r - 1] != 0 {
        bail!(Precondition, "λ must be normalized with λ_r = 0, got {lambda:?}");
    }
    Ok(())
}

/// Shintani's formula: `W(t_λ) = δ_B(t_λ)^{1/2} s_λ(α)` when
/// `λ_1 ≥ ... ≥ λ_{r-1} ≥ 0`, and zero otherwise.
pub fn shintani_whittaker(lambda: &[i64], sat: &SatakeData) -> Result<QTerm> {
    let r = sat.rank();
    check_normalized(lambda, r)?;
    let Ok(p) = Partition::from_signed(lambda) else {
        return Ok(QTerm::zero());
    };
    let s = schur_jt(&p, sat.alphas())?;
    let d = QTerm::modulus_power(&Parabolic::Borel, lambda, r, rat(1, 2))?;
    Ok(&QTerm::constant(s) * &d)
}

/// The pair `(Q(κ(t_λ)), Q'(κ(t_λ)))`:
/// `δ_B^{1/4} χ^{1/2} ω^{-1}(det t_λ)` and `δ_{B'}^{1/4} ω(det t_λ)` for even
/// `λ`, both zero otherwise.
pub fn toral_q_values(lambda: &[i64], sat: &SatakeData, chi_sqrt: &ChiSqrt) -> Result<(QTerm, QTerm)> {
    let r = sat.rank();
    check_normalized(lambda, r)?;
    if lambda.iter().any(|l| l % 2 != 0) {
        return Ok((QTerm::zero(), QTerm::zero()));
    }
    let deg: i64 = lambda.iter().sum();
    if deg < 0 {
        bail!(Precondition, "χ^(1/2) is only evaluated at nonnegative powers, got |λ| = {deg}");
    }
    let omega_det = num_traits::pow(sat.omega(), deg as usize);
    let chi_half = chi_sqrt.pow(deg as u64)?;
    let q_val = &QTerm::constant(chi_half / &omega_det)
        * &QTerm::modulus_power(&Parabolic::Borel, lambda, r, rat(1, 4))?;
    let q_prime = &QTerm::constant(omega_det)
        * &QTerm::modulus_power(&Parabolic::BorelPrime, lambda, r, rat(1, 4))?;
    Ok((q_val, q_prime))
}
