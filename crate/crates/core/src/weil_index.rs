//! Weil indices `γ(ψ_a)` of the characters of second degree `x ↦ ψ(a x²)`
//! and the normalised ratios `μ_ψ(a) = γ(ψ_a)/γ(ψ)`.
//!
//! Exact values are eighth roots of unity. They are never read off a
//! closed-form convention table: each one is obtained by evaluating the
//! regularised integral `|2a|^{1/2} ∫ ψ(a x²) dx` numerically and snapping
//! the result to the nearest eighth root. At an odd prime the integral is a
//! finite exponential sum over a ball `p^{-j} Z_p`; at the real place it is
//! a Fresnel integral, evaluated by quadrature plus an asymptotic tail.
//!
//! Conventions: the real character is `ψ(x) = e^{2πix}`; the `p`-adic
//! character is `ψ(x) = e^{-2πi{x}_p}` with conductor exactly `Z_p`, so that
//! the product over all places is trivial on `Q`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::rational::rational_mod;
use crate::arith::symbols::{odd_square_class, valuation_and_unit};
use crate::arith::{hilbert, least_nonresidue, Place, Rational, Sign};
use crate::error::{bail, Result};

/// Snapping tolerance between an oracle value and an exact eighth root.
pub const SNAP_TOLERANCE: f64 = 1e-6;

/// Default number of `p`-adic shells summed by [`gauss_shell_oracle`].
pub const DEFAULT_SHELL_DEPTH: u32 = 4;

/// Largest exponential sum evaluated for a single shell depth.
const SHELL_BUDGET: u64 = 4_000_000;

/// `e^{iπ k/4}`, stored as `k mod 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EighthRoot(u8);

impl EighthRoot {
    pub const ONE: EighthRoot = EighthRoot(0);

    pub fn new(exponent: i64) -> Self {
        EighthRoot(exponent.rem_euclid(8) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn from_sign(s: Sign) -> Self {
        match s {
            Sign::Plus => EighthRoot(0),
            Sign::Minus => EighthRoot(4),
        }
    }

    /// `Some(±1)` when the root is real.
    pub fn to_sign(self) -> Option<Sign> {
        match self.0 {
            0 => Some(Sign::Plus),
            4 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn inv(self) -> Self {
        EighthRoot::new(-(self.0 as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        EighthRoot::new(self.0 as i64 * e)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, PI * self.0 as f64 / 4.0)
    }

    /// The eighth root nearest to `z`, with its distance; an error when no
    /// root is within [`SNAP_TOLERANCE`].
    pub fn snap(z: Complex64) -> Result<(Self, f64)> {
        let (best, dist) = (0..8)
            .map(|k| (EighthRoot(k), (z - EighthRoot(k).to_complex()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("eight candidates");
        if dist > SNAP_TOLERANCE {
            bail!(Consistency, "oracle value {z} is {dist:.3e} away from every eighth root of unity");
        }
        Ok((best, dist))
    }
}

impl Mul for EighthRoot {
    type Output = EighthRoot;
    fn mul(self, rhs: EighthRoot) -> EighthRoot {
        EighthRoot::new(self.0 as i64 + rhs.0 as i64)
    }
}

impl Mul<Sign> for EighthRoot {
    type Output = EighthRoot;
    fn mul(self, rhs: Sign) -> EighthRoot {
        self * EighthRoot::from_sign(rhs)
    }
}

impl Div for EighthRoot {
    type Output = EighthRoot;
    fn div(self, rhs: EighthRoot) -> EighthRoot {
        self * rhs.inv()
    }
}

impl fmt::Display for EighthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "e^{iπ/4}",
            2 => "i",
            3 => "e^{3iπ/4}",
            4 => "-1",
            5 => "e^{-3iπ/4}",
            6 => "-i",
            _ => "e^{-iπ/4}",
        })
    }
}

/// `ψ_a(x) = ψ(a x)` for the standard character `ψ` at an odd prime or the
/// real place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCharacter {
    place: Place,
    scale: Rational,
}

impl AdditiveCharacter {
    pub fn standard(place: Place) -> Result<Self> {
        Self::new(place, Rational::one())
    }

    pub fn new(place: Place, scale: Rational) -> Result<Self> {
        place.require_odd_or_real("an additive character")?;
        if scale.is_zero() {
            bail!(Domain, "additive character scale must be nonzero");
        }
        Ok(AdditiveCharacter { place, scale })
    }

    pub fn place(&self) -> Place {
        self.place
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// `ψ_{ab}` from `ψ_a`.
    pub fn scaled(&self, b: &Rational) -> Result<Self> {
        Self::new(self.place, &self.scale * b)
    }

    /// `ψ_a(x)` as a unit complex number.
    pub fn eval(&self, x: &Rational) -> Complex64 {
        let y = &self.scale * x;
        let turns = match self.place {
            Place::Real => fractional_part(&y),
            Place::Finite(p) => -padic_fractional_part(&y, p),
        };
        Complex64::from_polar(1.0, 2.0 * PI * turns)
    }
}

fn fractional_part(y: &Rational) -> f64 {
    let f = y - y.floor();
    f.to_f64().unwrap_or(0.0)
}

/// `{y}_p ∈ [0, 1)`: the rational with `p`-power denominator and
/// `y - {y}_p ∈ Z_p`.
pub(crate) fn padic_fractional_part(y: &Rational, p: u64) -> f64 {
    if y.is_zero() {
        return 0.0;
    }
    let bp = BigInt::from(p);
    let mut d = y.denom().clone();
    let mut pk = BigInt::one();
    while (&d % &bp).is_zero() {
        d /= &bp;
        pk *= &bp;
    }
    if pk.is_one() {
        return 0.0;
    }
    // c = numer * d^{-1} mod p^k
    let phi = &pk / &bp * (&bp - 1);
    let dinv = d.modpow(&(phi - 1), &pk);
    let c = (y.numer() * dinv).mod_floor(&pk);
    let num = c.to_f64().unwrap_or(0.0);
    let den = pk.to_f64().unwrap_or(f64::INFINITY);
    num / den
}

/// Per-depth values of the truncated integral `|a|^{1/2} ∫_{p^{-j} Z_p} ψ(a x²) dx`.
#[derive(Debug, Clone)]
pub struct ShellSequence {
    pub depths: Vec<u32>,
    pub values: Vec<Complex64>,
}

impl ShellSequence {
    pub fn last(&self) -> Complex64 {
        *self.values.last().expect("at least one depth")
    }

    /// Difference between the last two depths: the truncation error estimate.
    pub fn truncation_estimate(&self) -> f64 {
        match self.values.len() {
            0 | 1 => f64::INFINITY,
            n => (self.values[n - 1] - self.values[n - 2]).norm(),
        }
    }
}

fn ceil_half(n: i64) -> i64 {
    n.div_euclid(2) + n.rem_euclid(2)
}

/// Evaluates `|a|^{1/2} ∫_{p^{-j} Z_p} ψ(a x²) dx` for increasing `j`.
///
/// Shells `j ≤ v(a)/2` carry a constant integrand and are skipped; at most
/// `shell_depth` further shells are summed, fewer when an exponential sum
/// would exceed the per-depth budget. At least two depths are always
/// evaluated so that the sequence exhibits its stabilisation.
pub fn gauss_shell_sequence(p: u64, a: &Rational, shell_depth: u32) -> Result<ShellSequence> {
    if p == 2 {
        bail!(Unsupported, "Weil index oracle at p = 2");
    }
    if shell_depth == 0 {
        bail!(Domain, "shell depth must be positive");
    }
    let (v, u) = valuation_and_unit(a, p)?;
    let j0 = ceil_half(v.max(0)) as u32;
    let mut seq = ShellSequence { depths: Vec::new(), values: Vec::new() };
    for j in j0..=j0 + shell_depth {
        let j_i = j as i64;
        // integrand invariant under x -> x + p^m on p^{-j} Z_p
        let m = (j_i - v).max(ceil_half((-v).max(0))).max(-j_i);
        let count_exp = (j_i + m) as u32;
        let count = p.checked_pow(count_exp);
        let over_budget = count.is_none_or(|c| c > SHELL_BUDGET);
        if over_budget && seq.values.len() >= 2 {
            break;
        }
        let count = match count {
            Some(c) if c <= SHELL_BUDGET * p * p => c,
            _ => bail!(Resource, "exponential sum of size {p}^{count_exp} too large"),
        };
        let e = 2 * j_i - v;
        let sum = if e <= 0 {
            Complex64::new(count as f64, 0.0)
        } else {
            let modulus = p
                .checked_pow(e as u32)
                .filter(|&m| m < (1u64 << 62))
                .ok_or_else(|| crate::Error::Resource(format!("modulus {p}^{e} too large")))?;
            let ur = rational_mod(&u, modulus).expect("unit is invertible");
            let mut acc = Complex64::new(0.0, 0.0);
            let step = 2.0 * PI / modulus as f64;
            for k in 0..count {
                let k2 = ((k % modulus) as u128 * (k % modulus) as u128 % modulus as u128) as u64;
                let c = (ur as u128 * k2 as u128 % modulus as u128) as u64;
                acc += Complex64::from_polar(1.0, -step * c as f64);
            }
            acc
        };
        // each representative carries mass p^{-m}; |a|^{1/2} = p^{-v/2}
        let value = sum * (p as f64).powf(-(m as f64) - v as f64 / 2.0);
        seq.depths.push(j);
        seq.values.push(value);
    }
    Ok(seq)
}

/// Depth-limited value of the regularised Gauss integral defining `γ(ψ_a)`
/// at an odd prime.
pub fn gauss_shell_oracle(p: u64, a: &Rational, shell_depth: u32) -> Result<Complex64> {
    Ok(gauss_shell_sequence(p, a, shell_depth)?.last())
}

/// `|2a|^{1/2} ∫_R e^{2πi a x²} dx`, by Gauss–Legendre quadrature on
/// `[0, L]` and the asymptotic expansion of the tail beyond `L`.
pub fn fresnel_oracle(a: &Rational) -> Result<Complex64> {
    if a.is_zero() {
        bail!(Domain, "Fresnel oracle needs a nonzero scale");
    }
    let af = a.to_f64().expect("finite scale");
    let c = 2.0 * PI * af.abs();
    // c L^2 = 400 keeps the tail series terms shrinking fast
    let l = (400.0 / c).sqrt();
    let panels = 6000;
    let h = l / panels as f64;
    const NODES: [(f64, f64); 4] = [
        (-0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
        (-0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
        (0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
        (0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
    ];
    let mut head = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        for (x, w) in NODES {
            let t = mid + 0.5 * h * x;
            head += Complex64::from_polar(w * 0.5 * h, c * t * t);
        }
    }
    // ∫_L^∞ e^{icx²} dx ~ -e^{icL²} Σ_k (2k-1)!! / ((2ic)^{k+1} L^{2k+1})
    let two_ic = Complex64::new(0.0, 2.0 * c);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut dfact = 1.0;
    for k in 0..8 {
        if k > 0 {
            dfact *= (2 * k - 1) as f64;
        }
        tail -= dfact / (two_ic.powi(k + 1) * l.powi(2 * k + 1));
    }
    tail *= Complex64::from_polar(1.0, c * l * l);
    let mut half = head + tail;
    if af < 0.0 {
        half = half.conj();
    }
    Ok(half * 2.0 * (2.0 * af.abs()).sqrt())
}

/// Oracle value of `γ(ψ_a)` for the standard character at `place`.
pub fn weil_index_oracle(place: Place, a: &Rational) -> Result<Complex64> {
    match place {
        Place::Real => fresnel_oracle(a),
        Place::Finite(p) => gauss_shell_oracle(p, a, DEFAULT_SHELL_DEPTH),
    }
}

/// `γ(ψ)` together with the distance between the oracle and the snapped root,
/// evaluating the oracle at the character's own scale (no caching).
pub fn gamma_direct(psi: &AdditiveCharacter) -> Result<(EighthRoot, f64)> {
    EighthRoot::snap(weil_index_oracle(psi.place, &psi.scale)?)
}

type CacheKey = (Place, bool, bool);

fn cache() -> &'static Mutex<HashMap<CacheKey, (EighthRoot, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, (EighthRoot, f64)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Square-class key and canonical representative of `a` at `place`.
fn class_of(place: Place, a: &Rational) -> Result<(CacheKey, Rational)> {
    match place {
        Place::Real => {
            let neg = a.is_negative();
            let rep = if neg { -Rational::one() } else { Rational::one() };
            Ok(((place, neg, false), rep))
        }
        Place::Finite(p) => {
            let (odd, residue) = odd_square_class(a, p)?;
            let mut rep = Rational::one();
            if !residue {
                rep *= Rational::from_integer(least_nonresidue(p).into());
            }
            if odd {
                rep *= Rational::from_integer(p.into());
            }
            Ok(((place, odd, residue), rep))
        }
    }
}

/// `γ(ψ)` with the oracle residual. The oracle runs once per square class
/// of the scale (on its canonical representative) and is memoised.
pub fn gamma_with_residual(psi: &AdditiveCharacter) -> Result<(EighthRoot, f64)> {
    let (key, rep) = class_of(psi.place, &psi.scale)?;
    if let Some(hit) = cache().lock().expect("weil index cache poisoned").get(&key) {
        return Ok(*hit);
    }
    let value = EighthRoot::snap(weil_index_oracle(psi.place, &rep)?)?;
    cache().lock().expect("weil index cache poisoned").insert(key, value);
    Ok(value)
}

/// The Weil index `γ(ψ)` of `x ↦ ψ(x²)`.
pub fn gamma(psi: &AdditiveCharacter) -> Result<EighthRoot> {
    Ok(gamma_with_residual(psi)?.0)
}

/// `μ_ψ(a) = γ(ψ_a) / γ(ψ)`.
pub fn mu(a: &Rational, psi: &AdditiveCharacter) -> Result<EighthRoot> {
    if a.is_zero() {
        bail!(Domain, "μ_ψ is defined on nonzero arguments");
    }
    Ok(gamma(&psi.scaled(a)?)? / gamma(psi)?)
}

/// Both sides of `μ(ab) = μ(a) μ(b) (a, b)_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicativityCheck {
    pub lhs: EighthRoot,
    pub rhs: EighthRoot,
}

impl MultiplicativityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn mu_multiplicativity_check(
    a: &Rational,
    b: &Rational,
    psi: &AdditiveCharacter,
) -> Result<MultiplicativityCheck> {
    let lhs = mu(&(a * b), psi)?;
    let rhs = mu(a, psi)? * mu(b, psi)? * hilbert(a, b, psi.place)?;
    Ok(MultiplicativityCheck { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn eighth_root_arithmetic() {
        let z = EighthRoot::new(3);
        assert_eq!(z * z.inv(), EighthRoot::ONE);
        assert_eq!(z.pow(8), EighthRoot::ONE);
        assert_eq!(EighthRoot::new(-2), EighthRoot::new(6));
        assert_eq!(EighthRoot::from_sign(Sign::Minus).to_string(), "-1");
        assert!(EighthRoot::snap(Complex64::new(0.5, 0.5)).is_err());
    }

    #[test]
    fn shell_oracle_examples() {
        let z = gauss_shell_oracle(5, &int(1), 3).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let z = gauss_shell_oracle(3, &int(3), 3).unwrap();
        assert!(z.re.abs() < 1e-9 && (z.im.abs() - 1.0).abs() < 1e-9, "{z}");
        let z = gauss_shell_oracle(5, &int(4), 3).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert!(gauss_shell_oracle(2, &int(1), 3).is_err());
    }

    #[test]
    fn shell_sequence_stabilises() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in [int(1), int(p as i64), rat(1, p as i64), int((p * p) as i64)] {
                let seq = gauss_shell_sequence(p, &a, DEFAULT_SHELL_DEPTH).unwrap();
                assert!(seq.values.len() >= 2);
                assert!(seq.truncation_estimate() < 1e-8, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn fresnel_gives_eighth_roots() {
        let z = fresnel_oracle(&int(1)).unwrap();
        assert!((z - EighthRoot::new(1).to_complex()).norm() < 1e-8, "{z}");
        let z = fresnel_oracle(&rat(-3, 7)).unwrap();
        assert!((z - EighthRoot::new(-1).to_complex()).norm() < 1e-8, "{z}");
    }

    #[test]
    fn gamma_examples() {
        let real = AdditiveCharacter::standard(Place::Real).unwrap();
        assert_eq!(gamma(&real).unwrap(), EighthRoot::new(1));
        let psi5 = AdditiveCharacter::new(Place::Finite(5), int(2)).unwrap();
        assert_eq!(gamma(&psi5).unwrap(), EighthRoot::ONE);
        let psi7 = AdditiveCharacter::standard(Place::Finite(7)).unwrap();
        assert_eq!(gamma(&psi7.scaled(&int(9)).unwrap()).unwrap(), gamma(&psi7).unwrap());
        assert!(AdditiveCharacter::standard(Place::Finite(2)).is_err());
    }

    #[test]
    fn mu_examples() {
        let psi3 = AdditiveCharacter::standard(Place::Finite(3)).unwrap();
        assert_eq!(mu(&int(4), &psi3).unwrap(), EighthRoot::ONE);
        let m3 = mu(&int(3), &psi3).unwrap();
        assert!(m3 == EighthRoot::new(2) || m3 == EighthRoot::new(-2));
        assert_eq!(m3.pow(2), EighthRoot::from_sign(Sign::Minus));
        let real = AdditiveCharacter::standard(Place::Real).unwrap();
        assert_eq!(mu(&int(-1), &real).unwrap(), EighthRoot::new(-2));
    }

    #[test]
    fn multiplicativity_examples() {
        let psi3 = AdditiveCharacter::standard(Place::Finite(3)).unwrap();
        let c = mu_multiplicativity_check(&int(3), &int(3), &psi3).unwrap();
        assert!(c.holds());
        assert_eq!(c.lhs, EighthRoot::ONE);
        let real = AdditiveCharacter::standard(Place::Real).unwrap();
        let c = mu_multiplicativity_check(&int(-1), &int(-1), &real).unwrap();
        assert!(c.holds());
        assert_eq!(c.rhs, EighthRoot::ONE);
    }

    #[test]
    fn padic_character_values() {
        let psi = AdditiveCharacter::standard(Place::Finite(3)).unwrap();
        assert!((psi.eval(&int(5)) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let z = psi.eval(&rat(1, 3));
        assert!((z - Complex64::from_polar(1.0, -2.0 * PI / 3.0)).norm() < 1e-12);
        // 1/6 = 1/3 * 1/2 and 1/2 = 2 mod 3, so {1/6}_3 = 2/3
        let z = psi.eval(&rat(1, 6));
        assert!((z - Complex64::from_polar(1.0, -4.0 * PI / 3.0)).norm() < 1e-12);
    }
}
