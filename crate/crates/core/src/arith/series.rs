//! Formal power series in one variable with exact rational coefficients,
//! truncated modulo `X^(D+1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};
use crate::error::{bail, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        TruncatedSeries { coeffs: vec![Rational::zero(); degree + 1] }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// coefficients beyond `degree` are dropped.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Rational>, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        for (k, c) in coeffs.into_iter().enumerate().take(degree + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 - c X^k`.
    pub fn one_minus_monomial(c: Rational, k: usize, degree: usize) -> Self {
        let mut s = Self::one(degree);
        if k <= degree {
            s.coeffs[k] -= c;
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add_to_coeff(&mut self, k: usize, c: &Rational) {
        if k <= self.degree() {
            self.coeffs[k] += c;
        }
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            bail!(
                Domain,
                "truncation degree mismatch: {} vs {}",
                self.degree(),
                other.degree()
            );
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let d = self.degree();
        let mut out = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse modulo `X^(D+1)`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            bail!(Domain, "series with zero constant term is not invertible");
        }
        let d = self.degree();
        let inv0 = c0.recip();
        let mut out = Self::zero(d);
        out.coeffs[0] = inv0.clone();
        for n in 1..=d {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out.coeffs[n - k];
                }
            }
            out.coeffs[n] = -acc * &inv0;
        }
        Ok(out)
    }

    pub fn equal_to(&self, other: &Self) -> Result<bool> {
        self.same_degree(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.degree());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("series degrees must agree")
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(rhs).expect("series degrees must agree")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "[{}] + O(X^{})", parts.join(", "), self.degree() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn ints(v: &[i64], d: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(v.iter().map(|&n| int(n)), d)
    }

    #[test]
    fn geometric_inverse() {
        let s = ints(&[1, -1], 3);
        assert_eq!(s.inverse().unwrap(), ints(&[1, 1, 1, 1], 3));
    }

    #[test]
    fn product_truncates() {
        assert_eq!(&ints(&[1, 1], 3) * &ints(&[1, -1], 3), ints(&[1, 0, -1], 3));
        assert_eq!(&ints(&[0, 1], 2) * &ints(&[0, 0, 1], 2), TruncatedSeries::zero(2));
    }

    #[test]
    fn cube_of_geometric_inverse() {
        let s = ints(&[1, -1], 4).inverse().unwrap().pow(3);
        assert_eq!(s.coeff(2), &int(6));
        assert_eq!(s.coeffs(), ints(&[1, 3, 6, 10, 15], 4).coeffs());
    }

    #[test]
    fn errors() {
        assert!(ints(&[0, 1], 3).inverse().is_err());
        assert!(ints(&[1], 3).try_mul(&ints(&[1], 4)).is_err());
        assert!(ints(&[1], 3).equal_to(&ints(&[1], 2)).is_err());
    }
}
