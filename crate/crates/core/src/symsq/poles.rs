//! Normalizing ratios of the intertwining operator for the `(r-1, 1)`
//! exceptional induction, and the bookkeeping of where the normalized
//! Eisenstein series and the symmetric square L-function may have poles.
//!
//! The ratio is stated for normalized induction. The Eisenstein series uses
//! unnormalized induction, which moves `s` by `1/2`: evaluating
//! [`gk_ratio`] at `s - 1/2` turns the numerator argument
//! `r(2s + 1/2) - r + 1` into `r(2s - 1/2) - r + 1`.

use num_traits::Zero;

use super::factors::{tate_factor, TateValue};
use super::satake::CharValue;
use crate::arith::{rat, Rational};
use crate::error::{bail, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkKind {
    /// `r = 2 q_blocks`, character `η^{-2}`.
    Even,
    /// `r = 2 q_blocks + 1`, character `χη^{-2}`.
    Odd,
}

/// Value of a ratio of two Tate factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GkValue {
    Finite(Rational),
    /// The numerator factor is singular.
    Pole,
    /// The denominator factor is singular.
    Zero,
    /// Both factors are singular.
    Indeterminate,
}

/// Shift from the normalized-induction parameter to the Eisenstein series
/// parameter: `s_eis = s_lemma + 1/2`.
pub fn induction_shift() -> Rational {
    rat(1, 2)
}

/// `(r(2s + 1/2) - r + 1, r(2s + q_blocks + 1/2))`.
pub fn gk_arguments(r: usize, q_blocks: usize, s: &Rational) -> (Rational, Rational) {
    let r = Rational::from_integer(r.into());
    let two_s = s * rat(2, 1);
    let num = &r * (&two_s + rat(1, 2)) - &r + rat(1, 1);
    let den = &r * (two_s + Rational::from_integer(q_blocks.into()) + rat(1, 2));
    (num, den)
}

/// `L(r(2s + 1/2) - r + 1, c) / L(r(2s + q_blocks + 1/2), c)` where `c` is
/// the value of `η^{-2}` (even kind) or `χη^{-2}` (odd kind) at `ϖ`.
pub fn gk_ratio(kind: GkKind, r: usize, q_blocks: usize, s: &Rational, chi: &CharValue, q: u64) -> Result<GkValue> {
    let expected = match kind {
        GkKind::Even => 2 * q_blocks,
        GkKind::Odd => 2 * q_blocks + 1,
    };
    if r != expected || q_blocks == 0 {
        bail!(Precondition, "{kind:?} kind needs r = {expected} with q_blocks >= 1, got r = {r}");
    }
    let (a, b) = gk_arguments(r, q_blocks, s);
    let tf = tate_factor(chi.clone(), Rational::zero());
    Ok(match (tf.is_pole(&a, q), tf.is_pole(&b, q)) {
        (true, true) => GkValue::Indeterminate,
        (true, false) => GkValue::Pole,
        (false, true) => GkValue::Zero,
        (false, false) => match (tf.eval(&a, q)?, tf.eval(&b, q)?) {
            (TateValue::Finite(x), TateValue::Finite(y)) => GkValue::Finite(x / y),
            _ => unreachable!("poles were excluded above"),
        },
    })
}

/// Eisenstein `s` at which `r(2s - 1/2) - r + 1` equals `target`.
pub fn normalizer_argument_root(r: usize, target: &Rational) -> Result<Rational> {
    if r == 0 {
        bail!(Precondition, "r must be positive");
    }
    let r = Rational::from_integer(r.into());
    Ok(((target + &r - rat(1, 1)) / &r + rat(1, 2)) / rat(2, 1))
}

/// Exceptional points of the normalized Eisenstein series and of the
/// partial symmetric square L-function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleReport {
    pub r: usize,
    pub normalizer_poles: Vec<Rational>,
    pub l_function_poles: Vec<Rational>,
    /// `(s, 2s - 1/2)` for each normalizer pole.
    pub mapping: Vec<(Rational, Rational)>,
}

/// L-function argument attached to the Eisenstein parameter.
pub fn s_to_l_arg(s: &Rational) -> Rational {
    s * rat(2, 1) - rat(1, 2)
}

pub fn pole_report(r: usize, chi_r_omega_sq_trivial: bool) -> Result<PoleReport> {
    if r == 0 {
        bail!(Precondition, "r must be positive");
    }
    if !chi_r_omega_sq_trivial {
        return Ok(PoleReport { r, normalizer_poles: vec![], l_function_poles: vec![], mapping: vec![] });
    }
    let normalizer_poles = vec![rat(1, 4), rat(3, 4)];
    let mapping = normalizer_poles.iter().map(|s| (s.clone(), s_to_l_arg(s))).collect();
    Ok(PoleReport { r, normalizer_poles, l_function_poles: vec![rat(0, 1), rat(1, 1)], mapping })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn even_kind_pole_at_zero() {
        let v = gk_ratio(GkKind::Even, 2, 1, &int(0), &CharValue::trivial(), 5).unwrap();
        // numerator argument 2(1/2) - 1 = 0
        assert_eq!(v, GkValue::Pole);
    }

    #[test]
    fn even_kind_quarter() {
        let q = 5;
        let v = gk_ratio(GkKind::Even, 2, 1, &rat(1, 4), &CharValue::trivial(), q).unwrap();
        let l = |k: u32| (int(1) - rat(1, 5i64.pow(k))).recip();
        assert_eq!(v, GkValue::Finite(l(1) / l(4)));
    }

    #[test]
    fn ramified_ratio_is_one() {
        let v = gk_ratio(GkKind::Odd, 3, 1, &rat(1, 3), &CharValue::Ramified, 7).unwrap();
        assert_eq!(v, GkValue::Finite(int(1)));
    }

    #[test]
    fn kind_mismatch() {
        assert!(gk_ratio(GkKind::Even, 3, 1, &int(0), &CharValue::trivial(), 5).is_err());
        assert!(gk_ratio(GkKind::Odd, 4, 2, &int(0), &CharValue::trivial(), 5).is_err());
    }

    #[test]
    fn zero_marker_from_denominator() {
        // r(2s + 1 + 1/2) = 0 at s = -3/4 for r = 2
        let v = gk_ratio(GkKind::Even, 2, 1, &rat(-3, 4), &CharValue::trivial(), 3).unwrap();
        assert_eq!(v, GkValue::Zero);
    }

    #[test]
    fn report_tables() {
        let t = pole_report(3, true).unwrap();
        assert_eq!(t.normalizer_poles, vec![rat(1, 4), rat(3, 4)]);
        assert_eq!(t.l_function_poles, vec![int(0), int(1)]);
        assert!(t.mapping.contains(&(rat(3, 4), int(1))));
        assert_eq!(s_to_l_arg(&rat(1, 4)), int(0));
        let n = pole_report(3, false).unwrap();
        assert!(n.normalizer_poles.is_empty() && n.l_function_poles.is_empty() && n.mapping.is_empty());
    }

    #[test]
    fn shifted_numerator_pole_location() {
        // the shifted numerator argument is singular where r(2s - 1/2) - r + 1 = 0
        for r in [2usize, 4, 6] {
            let s_eis = normalizer_argument_root(r, &int(0)).unwrap();
            let s_lemma = &s_eis - induction_shift();
            let v = gk_ratio(GkKind::Even, r, r / 2, &s_lemma, &CharValue::trivial(), 9).unwrap();
            assert_eq!(v, GkValue::Pole, "r = {r}");
            assert_eq!(normalizer_argument_root(r, &int(1)).unwrap(), rat(3, 4));
            // argument 0 is reached at 1/4 + (r-1)/(2r), which is 1/4 only for r = 1
            assert_eq!(s_eis, rat(1, 4) + rat(r as i64 - 1, 2 * r as i64));
        }
        assert_eq!(normalizer_argument_root(1, &int(0)).unwrap(), rat(1, 4));
    }
}
