//! Genuine characters of cover subgroups and characters of unipotent groups.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use super::element::StructuredElement;
use super::sigma::real_sign;
use crate::arith::{fmt_rational, valuation, Place, Rational, Sign};
use crate::error::{bail, Result};
use crate::weil_index::{mu, AdditiveCharacter, EighthRoot};

/// An exact value `scale · ζ` with `ζ` an eighth root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRoot {
    pub scale: Rational,
    pub root: EighthRoot,
}

impl ScaledRoot {
    pub fn one() -> Self {
        ScaledRoot { scale: Rational::one(), root: EighthRoot::ONE }
    }

    pub fn new(scale: Rational, root: EighthRoot) -> Self {
        ScaledRoot { scale, root }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.root.to_complex() * self.scale.to_f64().unwrap_or(f64::NAN)
    }
}

impl Mul for ScaledRoot {
    type Output = ScaledRoot;
    fn mul(self, o: ScaledRoot) -> ScaledRoot {
        ScaledRoot { scale: self.scale * o.scale, root: self.root * o.root }
    }
}

impl fmt::Display for ScaledRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == EighthRoot::ONE {
            write!(f, "{}", fmt_rational(&self.scale))
        } else if self.scale.is_one() {
            write!(f, "{}", self.root)
        } else {
            write!(f, "{}·{}", fmt_rational(&self.scale), self.root)
        }
    }
}

/// A multiplicative character given by its values: unramified at a prime
/// (`χ(x) = c^{v_p(x)}`), or a sign character at the real place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalCharacter {
    Unramified { p: u64, at_uniformizer: Rational },
    RealSign { odd: bool },
}

impl LocalCharacter {
    pub fn trivial(place: Place) -> Self {
        match place {
            Place::Finite(p) => LocalCharacter::Unramified { p, at_uniformizer: Rational::one() },
            Place::Real => LocalCharacter::RealSign { odd: false },
        }
    }

    pub fn place(&self) -> Place {
        match self {
            LocalCharacter::Unramified { p, .. } => Place::Finite(*p),
            LocalCharacter::RealSign { .. } => Place::Real,
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        match self {
            LocalCharacter::Unramified { p, at_uniformizer } => {
                let k = valuation(x, *p)?;
                if at_uniformizer == &Rational::from_integer(0.into()) {
                    bail!(Domain, "character value at the uniformizer must be nonzero");
                }
                let base = if k >= 0 { at_uniformizer.clone() } else { at_uniformizer.recip() };
                Ok(num_traits::pow(base, k.unsigned_abs() as usize))
            }
            LocalCharacter::RealSign { odd } => {
                let s = if *odd { real_sign(x) } else { Sign::Plus };
                Ok(Rational::from_integer(s.to_i64().into()))
            }
        }
    }
}

fn require_same_place(chi: &LocalCharacter, psi: &AdditiveCharacter) -> Result<()> {
    if chi.place() != psi.place() {
        bail!(Domain, "character lives at {} but ψ at {}", chi.place(), psi.place());
    }
    Ok(())
}

/// The genuine torus characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusCharacterKind {
    /// `ξ χ(det t) ∏_{i odd} μ_ψ(t_i)`.
    OmegaChiPsi,
    /// `ξ χ(det t) μ_{ψ_a}(t_1)^{-1} ∏_{i odd, i ≥ 3} μ_ψ(t_i)^{-1}`.
    OmegaChiPsiA(Rational),
}

pub fn character_eval(
    kind: &TorusCharacterKind,
    t: &StructuredElement,
    xi: Sign,
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
) -> Result<ScaledRoot> {
    let v = psi.place();
    v.require_odd_or_real("torus character")?;
    require_same_place(chi, psi)?;
    let entries = match t.torus_entries() {
        Some(e) if t.in_even_torus(v)? => e,
        _ => bail!(Precondition, "{t} is not in the even torus at {v}"),
    };
    let det: Rational = entries.iter().product();
    let mut root = EighthRoot::from_sign(xi);
    for (k, x) in entries.iter().enumerate().step_by(2) {
        root = root
            * match kind {
                TorusCharacterKind::OmegaChiPsi => mu(x, psi)?,
                TorusCharacterKind::OmegaChiPsiA(a) if k == 0 => mu(x, &psi.scaled(a)?)?.inv(),
                TorusCharacterKind::OmegaChiPsiA(_) => mu(x, psi)?.inv(),
            };
    }
    Ok(ScaledRoot::new(chi.eval(&det)?, root))
}

/// The central characters of the covers of `GL_{2q}` and `GL_{2q+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralKind {
    /// `ξ χ(a)^{2q+1} μ_ψ(a)^q` on the center of `GL_{2q+1}`.
    Odd,
    /// `ξ χ(a)^q μ_ψ(a)^q` on the center of `GL_{2q}`.
    EvenSq,
    /// `ξ χ(a)^{2q} η(a) μ_ψ(a)^{-q}` on the center of `GL_{2q}`.
    MQEven,
    /// `ξ χ(a)^q η(a) μ_ψ(a)^{-q}` on the center of `GL_{2q+1}`.
    MQOdd,
}

impl CentralKind {
    /// Rank of the group whose center the character lives on.
    pub fn rank(self, q: usize) -> usize {
        match self {
            CentralKind::Odd | CentralKind::MQOdd => 2 * q + 1,
            CentralKind::EvenSq | CentralKind::MQEven => 2 * q,
        }
    }
}

pub fn central_char_eval(
    kind: CentralKind,
    a: &Rational,
    xi: Sign,
    q: usize,
    chi: &LocalCharacter,
    eta: &LocalCharacter,
    psi: &AdditiveCharacter,
) -> Result<ScaledRoot> {
    psi.place().require_odd_or_real("central character")?;
    require_same_place(chi, psi)?;
    require_same_place(eta, psi)?;
    let c = chi.eval(a)?;
    let m = mu(a, psi)?;
    let qi = q as i64;
    let (chi_pow, eta_val, mu_pow) = match kind {
        CentralKind::Odd => (2 * q + 1, Rational::one(), qi),
        CentralKind::EvenSq => (q, Rational::one(), qi),
        CentralKind::MQEven => (2 * q, eta.eval(a)?, -qi),
        CentralKind::MQOdd => (q, eta.eval(a)?, -qi),
    };
    Ok(ScaledRoot::new(
        num_traits::pow(c, chi_pow) * eta_val,
        EighthRoot::from_sign(xi) * m.pow(mu_pow),
    ))
}

/// Characters of the maximal unipotent subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilpotentKind {
    /// `ψ(x_{r-1,r} + x_{r-3,r-2} + …)`.
    SemiWhittaker,
    /// `ψ(a x_{12} + x_{23} + … + x_{r-1,r})`.
    PsiNa(Rational),
    /// `ψ(a_1 x_{12} + a_2 x_{34} + …)`.
    PsiTuple(Vec<Rational>),
}

/// The argument fed to ψ by a unipotent character.
pub fn nilpotent_char_argument(kind: &NilpotentKind, n: &StructuredElement) -> Result<Rational> {
    let StructuredElement::UnipotentUpper(m) = n else {
        bail!(Precondition, "{n} is not unipotent upper triangular");
    };
    let r = m.len();
    // x(i) = entry (i, i+1), 1-based
    let x = |i: usize| m[i - 1][i].clone();
    let mut arg = Rational::from_integer(0.into());
    match kind {
        NilpotentKind::SemiWhittaker => {
            let mut i = r;
            while i >= 2 {
                arg += x(i - 1);
                i = i.saturating_sub(2);
            }
        }
        NilpotentKind::PsiNa(a) => {
            if r >= 2 {
                arg += a * x(1);
            }
            for i in 2..r {
                arg += x(i);
            }
        }
        NilpotentKind::PsiTuple(aa) => {
            if 2 * aa.len() > r {
                bail!(Domain, "{} block characters need rank at least {}", aa.len(), 2 * aa.len());
            }
            for (k, a) in aa.iter().enumerate() {
                arg += a * x(2 * k + 1);
            }
        }
    }
    Ok(arg)
}

pub fn nilpotent_char_eval(kind: &NilpotentKind, n: &StructuredElement, psi: &AdditiveCharacter) -> Result<Complex64> {
    Ok(psi.eval(&nilpotent_char_argument(kind, n)?))
}
