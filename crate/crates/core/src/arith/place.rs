use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use crate::arith::rational::is_prime;
use crate::error::{bail, Result};

/// A place of the rational field: a prime `p` or the real place.
///
/// The complex place is deliberately absent; every Hilbert symbol there is
/// trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Real,
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        if !is_prime(p) {
            bail!(Domain, "{p} is not prime");
        }
        Ok(Place::Finite(p))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Finite(p) => Some(*p),
            Place::Real => None,
        }
    }

    /// Finite places of odd residue characteristic and the real place.
    pub fn is_odd_or_real(&self) -> bool {
        !matches!(self, Place::Finite(2))
    }

    pub(crate) fn require_odd_or_real(&self, what: &str) -> Result<()> {
        if !self.is_odd_or_real() {
            bail!(Unsupported, "{what} requires odd residue characteristic or the real place");
        }
        Ok(())
    }

    /// Parses `inf`, `real` or a prime.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "real" | "oo" | "infinity" => Ok(Place::Real),
            t => {
                let p: u64 = t
                    .parse()
                    .map_err(|_| crate::Error::Domain(format!("bad place {t:?}")))?;
                Place::finite(p)
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => write!(f, "inf"),
        }
    }
}

/// An element of `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, e: u64) -> Self {
        if e % 2 == 0 {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn product<I: IntoIterator<Item = Sign>>(it: I) -> Sign {
        it.into_iter().fold(Sign::Plus, |a, b| a * b)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "1",
            Sign::Minus => "-1",
        })
    }
}
