//! Valuations, Legendre and Hilbert symbols over the completions of `Q`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::place::{Place, Sign};
use super::rational::{abs_numer_denom, big_mod_u64, pow_mod, prime_divisors, Rational};
use crate::error::{bail, Result};

fn require_nonzero(x: &Rational, what: &str) -> Result<()> {
    if x.is_zero() {
        bail!(Domain, "{what} must be nonzero");
    }
    Ok(())
}

fn strip(n: &mut BigInt, p: &BigInt) -> i64 {
    let mut k = 0;
    while (&*n % p).is_zero() {
        *n /= p;
        k += 1;
    }
    k
}

/// Writes `x = p^v * u` with `u` a `p`-adic unit.
pub fn valuation_and_unit(x: &Rational, p: u64) -> Result<(i64, Rational)> {
    require_nonzero(x, "valuation argument")?;
    if p < 2 {
        bail!(Domain, "{p} is not a prime");
    }
    let bp = BigInt::from(p);
    let mut n = x.numer().clone();
    let mut d = x.denom().clone();
    let v = strip(&mut n, &bp) - strip(&mut d, &bp);
    Ok((v, Rational::new(n, d)))
}

pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    valuation_and_unit(x, p).map(|(v, _)| v)
}

/// Legendre symbol `(a/p)` for an odd prime `p` not dividing `a`.
pub fn legendre(a: &BigInt, p: u64) -> Result<Sign> {
    if p == 2 {
        bail!(Domain, "Legendre symbol needs an odd prime");
    }
    let r = big_mod_u64(a, p);
    if r == 0 {
        bail!(Domain, "{p} divides {a}");
    }
    Ok(Sign::from_parity(pow_mod(r, (p - 1) / 2, p) != 1))
}

/// Legendre symbol of a rational `p`-adic unit `n/d`.
pub(crate) fn unit_legendre(u: &Rational, p: u64) -> Result<Sign> {
    Ok(legendre(u.numer(), p)? * legendre(u.denom(), p)?)
}

/// Residue of an odd rational (a 2-adic unit) modulo 8.
fn unit_mod8(u: &Rational) -> u64 {
    let n = big_mod_u64(u.numer(), 8);
    let d = big_mod_u64(u.denom(), 8);
    // odd d satisfies d^2 = 1 mod 8
    n * d % 8
}

/// Local Hilbert symbol `(a, b)_v`.
pub fn hilbert(a: &Rational, b: &Rational, v: Place) -> Result<Sign> {
    require_nonzero(a, "Hilbert symbol argument")?;
    require_nonzero(b, "Hilbert symbol argument")?;
    match v {
        Place::Real => Ok(Sign::from_parity(a.is_negative() && b.is_negative())),
        Place::Finite(2) => {
            let (alpha, u) = valuation_and_unit(a, 2)?;
            let (beta, w) = valuation_and_unit(b, 2)?;
            let (u8_, w8) = (unit_mod8(&u), unit_mod8(&w));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| u64::from(x == 3 || x == 5);
            let e = eps(u8_) * eps(w8)
                + (alpha.rem_euclid(2) as u64) * omega(w8)
                + (beta.rem_euclid(2) as u64) * omega(u8_);
            Ok(Sign::from_parity(e % 2 == 1))
        }
        Place::Finite(p) => {
            let (alpha, u) = valuation_and_unit(a, p)?;
            let (beta, w) = valuation_and_unit(b, p)?;
            let (alpha, beta) = (alpha.rem_euclid(2) as u64, beta.rem_euclid(2) as u64);
            let mut s = Sign::from_parity(alpha * beta * ((p - 1) / 2) % 2 == 1);
            if beta == 1 {
                s *= unit_legendre(&u, p)?;
            }
            if alpha == 1 {
                s *= unit_legendre(&w, p)?;
            }
            Ok(s)
        }
    }
}

/// Places at which `(a, b)_v` can be nontrivial: the real place, 2, and
/// every prime dividing a numerator or denominator.
pub fn relevant_places(values: &[&Rational]) -> Result<Vec<Place>> {
    let mut primes = vec![2u64];
    for x in values {
        require_nonzero(x, "argument")?;
        let (n, d) = abs_numer_denom(x);
        for m in [n, d] {
            if m > BigUint::one() {
                primes.extend(prime_divisors(&m)?);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut places: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    places.push(Place::Real);
    Ok(places)
}

/// Product of `(a, b)_v` over every place where it can be nontrivial.
/// Hilbert reciprocity says the result is `+1`.
pub fn reciprocity_product(a: &Rational, b: &Rational) -> Result<Sign> {
    let places = relevant_places(&[a, b])?;
    let mut s = Sign::Plus;
    for v in places {
        s *= hilbert(a, b, v)?;
    }
    Ok(s)
}

/// Whether `a / b` is a square in the completion at `v`.
pub fn same_square_class(a: &Rational, b: &Rational, v: Place) -> Result<bool> {
    require_nonzero(a, "square-class argument")?;
    require_nonzero(b, "square-class argument")?;
    is_local_square(&(a / b), v)
}

pub fn is_local_square(x: &Rational, v: Place) -> Result<bool> {
    require_nonzero(x, "square-class argument")?;
    match v {
        Place::Real => Ok(x.is_positive()),
        Place::Finite(2) => {
            let (k, u) = valuation_and_unit(x, 2)?;
            Ok(k % 2 == 0 && unit_mod8(&u) == 1)
        }
        Place::Finite(p) => {
            let (k, u) = valuation_and_unit(x, p)?;
            Ok(k % 2 == 0 && unit_legendre(&u, p)?.is_plus())
        }
    }
}

/// Canonical square-class key at an odd prime: `(valuation parity, unit is a residue)`.
pub(crate) fn odd_square_class(x: &Rational, p: u64) -> Result<(bool, bool)> {
    let (k, u) = valuation_and_unit(x, p)?;
    Ok((k.rem_euclid(2) == 1, unit_legendre(&u, p)?.is_plus()))
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&n| pow_mod(n, (p - 1) / 2, p) != 1)
        .expect("odd primes have non-residues")
}

/// Representatives `{1, u, p, u p}` of the square classes at an odd prime,
/// with `u` the least non-residue; `{1, -1}` at the real place;
/// `{±1, ±2, ±5, ±10}` at 2.
pub fn square_class_representatives(v: Place) -> Vec<Rational> {
    let ints: Vec<i64> = match v {
        Place::Real => vec![1, -1],
        Place::Finite(2) => vec![1, -1, 2, -2, 5, -5, 10, -10],
        Place::Finite(p) => {
            let u = least_nonresidue(p) as i64;
            vec![1, u, p as i64, u * p as i64]
        }
    };
    ints.into_iter().map(|n| Rational::from_integer(n.into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation_and_unit(&int(18), 3).unwrap(), (2, int(2)));
        assert_eq!(valuation_and_unit(&rat(5, 9), 3).unwrap(), (-2, int(5)));
        assert_eq!(valuation_and_unit(&int(7), 5).unwrap(), (0, int(7)));
        assert!(valuation_and_unit(&int(0), 5).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&2.into(), 7).unwrap(), Sign::Plus);
        assert_eq!(legendre(&2.into(), 3).unwrap(), Sign::Minus);
        for k in 1..20i64 {
            if k % 11 != 0 {
                assert_eq!(legendre(&(k * k).into(), 11).unwrap(), Sign::Plus);
            }
        }
        assert!(legendre(&14.into(), 7).is_err());
        assert!(legendre(&3.into(), 2).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert(&int(-1), &int(-1), Place::Real).unwrap(), Sign::Minus);
        assert_eq!(hilbert(&int(2), &int(9), Place::Finite(7)).unwrap(), Sign::Plus);
        assert_eq!(hilbert(&int(2), &int(3), Place::Finite(3)).unwrap(), Sign::Minus);
        assert_eq!(hilbert(&int(2), &int(3), Place::Finite(2)).unwrap(), Sign::Minus);
        assert_eq!(hilbert(&int(-1), &int(-1), Place::Finite(2)).unwrap(), Sign::Minus);
        assert!(hilbert(&int(0), &int(3), Place::Real).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        assert_eq!(reciprocity_product(&int(2), &int(3)).unwrap(), Sign::Plus);
        assert_eq!(reciprocity_product(&int(-1), &int(-1)).unwrap(), Sign::Plus);
        assert_eq!(reciprocity_product(&int(1), &rat(-7, 30)).unwrap(), Sign::Plus);
    }

    #[test]
    fn square_class_examples() {
        assert!(same_square_class(&int(2), &int(18), Place::Finite(3)).unwrap());
        assert!(same_square_class(&int(5), &int(20), Place::Finite(7)).unwrap());
        assert!(!same_square_class(&int(1), &int(-1), Place::Real).unwrap());
        assert!(!same_square_class(&int(1), &int(3), Place::Finite(3)).unwrap());
        assert!(same_square_class(&int(1), &int(17), Place::Finite(2)).unwrap());
        assert!(!same_square_class(&int(1), &int(5), Place::Finite(2)).unwrap());
    }

    #[test]
    fn representatives_are_distinct_classes() {
        for v in [Place::Real, Place::Finite(2), Place::Finite(3), Place::Finite(13)] {
            let reps = square_class_representatives(v);
            for (i, a) in reps.iter().enumerate() {
                for (j, b) in reps.iter().enumerate() {
                    assert_eq!(same_square_class(a, b, v).unwrap(), i == j, "{v} {a} {b}");
                }
            }
        }
    }
}
