use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rational, Rational, Sign};
use crate::error::{bail, Result};

/// Value of an unramified character at a uniformizer, or the marker for a
/// ramified one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharValue {
    Unramified(Rational),
    Ramified,
}

impl CharValue {
    pub fn trivial() -> Self {
        CharValue::Unramified(Rational::one())
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            CharValue::Unramified(c) => Some(c),
            CharValue::Ramified => None,
        }
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharValue::Unramified(c) => f.write_str(&fmt_rational(c)),
            CharValue::Ramified => f.write_str("ramified"),
        }
    }
}

/// Unramified local data at one place: Satake parameters of `π`, the
/// residue field size and the twisting character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeData {
    alphas: Vec<Rational>,
    q: u64,
    chi: CharValue,
}

impl SatakeData {
    pub fn new(alphas: Vec<Rational>, q: u64, chi: CharValue) -> Result<Self> {
        if alphas.is_empty() {
            bail!(Domain, "at least one Satake parameter is required");
        }
        if alphas.iter().any(Zero::is_zero) {
            bail!(Domain, "Satake parameters must be nonzero");
        }
        if q < 2 {
            bail!(Domain, "residue field size must be at least 2, got {q}");
        }
        if let CharValue::Unramified(c) = &chi {
            if c.is_zero() {
                bail!(Domain, "character value at a uniformizer must be nonzero");
            }
        }
        Ok(SatakeData { alphas, q, chi })
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn chi(&self) -> &CharValue {
        &self.chi
    }

    /// Central character at the uniformizer: the product of the alphas.
    pub fn omega(&self) -> Rational {
        self.alphas.iter().fold(Rational::one(), |acc, a| acc * a)
    }

    pub fn chi_value(&self) -> Result<&Rational> {
        match &self.chi {
            CharValue::Unramified(c) => Ok(c),
            CharValue::Ramified => bail!(Precondition, "the twisting character is ramified"),
        }
    }
}

/// A chosen square root of `χ(ϖ)`, kept symbolic: only the sign of the
/// branch is stored, so `χ(ϖ)` need not be a rational square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiSqrt {
    chi: Rational,
    branch: Sign,
}

impl ChiSqrt {
    pub fn new(chi: Rational, branch: Sign) -> Self {
        ChiSqrt { chi, branch }
    }

    pub fn flipped(&self) -> Self {
        ChiSqrt { chi: self.chi.clone(), branch: self.branch * Sign::Minus }
    }

    pub fn branch(&self) -> Sign {
        self.branch
    }

    /// `χ^{1/2}(ϖ^k)`. Odd `k` needs `χ(ϖ)` to be a rational square.
    pub fn pow(&self, k: u64) -> Result<Rational> {
        let half = num_traits::pow(self.chi.clone(), (k / 2) as usize);
        if k % 2 == 0 {
            return Ok(half);
        }
        let Some(root) = rational_sqrt(&self.chi) else {
            bail!(
                Unsupported,
                "odd power of a square root of {} is not rational",
                fmt_rational(&self.chi)
            );
        };
        let root = if self.branch.is_plus() { root } else { -root };
        Ok(half * root)
    }
}

pub(crate) fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}
