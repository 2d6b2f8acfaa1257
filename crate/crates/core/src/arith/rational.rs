use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-7/4"` or a terminating decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        bail!(Domain, "empty rational literal");
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| crate::Error::Domain(format!("bad numerator in {t:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| crate::Error::Domain(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            bail!(Domain, "zero denominator in {t:?}");
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            bail!(Domain, "bad decimal literal {t:?}");
        }
        let n: BigInt = digits.parse().expect("digits checked");
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t
        .parse()
        .map_err(|_| crate::Error::Domain(format!("bad rational literal {t:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Renders `n` or `n/d`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn big_mod_u64(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Residue of a rational `n/d` with `d` prime to `m`, as an element of `Z/m`.
pub(crate) fn rational_mod(x: &Rational, m: u64) -> Option<u64> {
    let n = big_mod_u64(x.numer(), m);
    let d = big_mod_u64(x.denom(), m);
    let di = inv_mod(d, m)?;
    Some(((n as u128 * di as u128) % m as u128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Distinct prime divisors of `n > 0`, by trial division.
///
/// Cofactors left after dividing out all primes below `10^6` are accepted as
/// prime only when they are below `10^12`; anything larger is refused.
pub fn prime_divisors(n: &BigUint) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    if n.is_zero() {
        bail!(Domain, "prime divisors of zero");
    }
    let mut m = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        match m.to_u64() {
            Some(c) if c < TRIAL_LIMIT * TRIAL_LIMIT => out.push(c),
            _ => bail!(Resource, "cofactor {m} too large to certify as prime"),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub(crate) fn abs_numer_denom(x: &Rational) -> (BigUint, BigUint) {
    (
        x.numer().abs().to_biguint().expect("abs is nonnegative"),
        x.denom().to_biguint().expect("denominator positive"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("-7/4").unwrap(), rat(-7, 4));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(pow_mod(3, 4, 7), 4);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(3, 9), None);
        assert_eq!(rational_mod(&rat(1, 2), 9), Some(5));
    }

    #[test]
    fn factoring() {
        let n = BigUint::from(2u64 * 2 * 3 * 97 * 1_000_003);
        assert_eq!(prime_divisors(&n).unwrap(), vec![2, 3, 97, 1_000_003]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1));
    }
}
