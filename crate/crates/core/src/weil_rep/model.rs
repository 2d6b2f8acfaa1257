use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::rational::rational_mod;
use crate::arith::{fmt_rational, valuation_and_unit, Place, Rational, Sign};
use crate::cocycle::{LocalCharacter, Mat2};
use crate::error::{bail, Result};
use crate::weil_index::{gamma, mu, AdditiveCharacter, EighthRoot};

/// Largest carrier the model accepts (`p^{2N}`).
pub const MAX_CARRIER: u64 = 6561;

/// Functions supported in `p^{-s} Z_p` and invariant under `p^i Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub s: i64,
    pub i: i64,
}

impl Window {
    pub fn new(s: i64, i: i64) -> Self {
        Window { s, i }
    }

    /// `log_p` of the dimension of the space of such functions.
    pub fn log_dim(self) -> i64 {
        self.s + self.i
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p^-{} Z_p mod p^{} Z_p)", self.s, self.i)
    }
}

/// Operators of the Weil representation on the truncated model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// `γ(ψ) f̂`.
    W,
    /// `ψ(b x²) f(x)`.
    N(Rational),
    /// `|a|^{1/2} μ_ψ(a) f(a x)`.
    T(Rational),
    /// The element `diag(1, a²)`: `χ(a) |a|^{-1/2} f(a^{-1} x)`.
    D(Rational),
    /// The central element `a·I_2`: `χ(a) μ_ψ(a) f`.
    Central(Rational),
    /// `ξ f`.
    Sign(Sign),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::W => write!(f, "w"),
            Generator::N(b) => write!(f, "n({})", fmt_rational(b)),
            Generator::T(a) => write!(f, "t({})", fmt_rational(a)),
            Generator::D(a) => write!(f, "d({}^2)", fmt_rational(a)),
            Generator::Central(a) => write!(f, "z({})", fmt_rational(a)),
            Generator::Sign(s) => write!(f, "sign({s})"),
        }
    }
}

impl Generator {
    /// The underlying matrix, for the `SL₂` generators.
    pub fn matrix(&self) -> Option<Mat2> {
        match self {
            Generator::W => Some(Mat2::w()),
            Generator::N(b) => Some(Mat2::n(b.clone())),
            Generator::T(a) => Some(Mat2::t(a.clone())),
            _ => None,
        }
    }
}

/// Generator word for an `SL₂` element, in application order (rightmost
/// factor first): `t(a) n(b/a)` when `c = 0`, otherwise
/// `n(a/c) t(-1/c) w n(d/c)`.
pub fn normal_form(g: &Mat2) -> Result<Vec<Generator>> {
    if !g.det().is_one() {
        bail!(Domain, "{g} is not in SL2");
    }
    let mut word = Vec::new();
    let mut push = |gen: Generator| match &gen {
        Generator::N(b) if b.is_zero() => {}
        Generator::T(a) if a.is_one() => {}
        _ => word.push(gen),
    };
    if g.c.is_zero() {
        push(Generator::N(&g.b / &g.a));
        push(Generator::T(g.a.clone()));
    } else {
        push(Generator::N(&g.d / &g.c));
        push(Generator::W);
        push(Generator::T(-g.c.recip()));
        push(Generator::N(&g.a / &g.c));
    }
    Ok(word)
}

/// A batch of functions on the carrier (one per column) sharing a window.
#[derive(Debug, Clone)]
pub struct FunctionBatch {
    pub window: Window,
    pub values: DMatrix<Complex64>,
}

/// The truncated Schwartz space of `Q_p`: functions on
/// `p^{-N} Z_p / p^N Z_p`, indexed by `k ↦ x = k p^{-N}`.
#[derive(Debug, Clone)]
pub struct FiniteWeilModel {
    p: u64,
    n: u32,
    psi: AdditiveCharacter,
    chi: LocalCharacter,
    size: u64,
    scale_val: i64,
    gamma: EighthRoot,
    kernel: DMatrix<Complex64>,
}

impl FiniteWeilModel {
    /// Model for the standard character at `p` with trivial `χ`.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        let place = Place::finite(p)?;
        let psi = AdditiveCharacter::standard(place)?;
        Self::with_character(p, n, psi, LocalCharacter::trivial(place))
    }

    /// Model for `ψ_a` (integral `a`) and an unramified `χ`.
    pub fn with_character(p: u64, n: u32, psi: AdditiveCharacter, chi: LocalCharacter) -> Result<Self> {
        if p == 2 {
            bail!(Unsupported, "the finite Weil model needs an odd prime");
        }
        Place::finite(p)?;
        if n == 0 {
            bail!(Domain, "window N must be positive");
        }
        if psi.place() != Place::Finite(p) || chi.place() != Place::Finite(p) {
            bail!(Domain, "ψ and χ must live at {p}");
        }
        let size = p
            .checked_pow(2 * n)
            .filter(|&s| s <= MAX_CARRIER)
            .ok_or_else(|| crate::Error::Resource(format!("carrier {p}^{} exceeds {MAX_CARRIER}", 2 * n)))?;
        let (scale_val, scale_unit) = valuation_and_unit(psi.scale(), p)?;
        if scale_val < 0 {
            bail!(Domain, "the model needs an integral character scale");
        }
        let unit = rational_mod(&scale_unit, size).expect("units are invertible");
        let pk = p.pow(scale_val.min(2 * n as i64) as u32) % size;
        // ψ_a(2 x y) for x = k p^{-N}, y = l p^{-N}
        let kernel = DMatrix::from_fn(size as usize, size as usize, |k, l| {
            let e = (2 * unit as u128 * k as u128 % size as u128 * l as u128 % size as u128 * pk as u128) % size as u128;
            Complex64::from_polar(1.0, -2.0 * PI * e as f64 / size as f64)
        });
        let gamma = gamma(&psi)?;
        Ok(FiniteWeilModel { p, n, psi, chi, size, scale_val, gamma, kernel })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn psi(&self) -> &AdditiveCharacter {
        &self.psi
    }

    pub fn chi(&self) -> &LocalCharacter {
        &self.chi
    }

    pub fn carrier_size(&self) -> usize {
        self.size as usize
    }

    /// `x = k p^{-N}` for carrier index `k`.
    pub fn point(&self, k: usize) -> Rational {
        Rational::new((k as i64).into(), (self.p.pow(self.n) as i64).into())
    }

    /// Carrier index of `-x`.
    pub fn negate_index(&self, k: usize) -> usize {
        (self.size as usize - k) % self.size as usize
    }

    pub fn full_window(&self) -> Window {
        Window::new(self.n as i64, self.n as i64)
    }

    pub fn is_valid(&self, w: Window) -> bool {
        let n = self.n as i64;
        w.s <= n && w.i <= n && w.s + w.i >= 0
    }

    /// All windows the carrier can hold, largest first.
    pub fn windows(&self) -> Vec<Window> {
        let n = self.n as i64;
        let mut out: Vec<Window> = (-n..=n)
            .flat_map(|s| (-n..=n).map(move |i| Window::new(s, i)))
            .filter(|w| self.is_valid(*w))
            .collect();
        out.sort_by_key(|w| (-w.log_dim(), -w.s));
        out
    }

    fn val(&self, x: &Rational) -> Result<(i64, Rational)> {
        valuation_and_unit(x, self.p)
    }

    /// Window of `gen · f` for `f` in window `w`, when the carrier holds it.
    pub fn transform_window(&self, gen: &Generator, w: Window) -> Result<Option<Window>> {
        let out = match gen {
            Generator::W => Window::new(w.i + self.scale_val, w.s - self.scale_val),
            Generator::N(b) if b.is_zero() => w,
            Generator::N(b) => {
                let beta = self.val(b)?.0 + self.scale_val;
                let j0 = (w.s - beta).max(ceil_half(-beta));
                Window::new(w.s, w.i.max(j0))
            }
            Generator::T(a) => {
                let k = self.val(a)?.0;
                Window::new(w.s + k, w.i - k)
            }
            Generator::D(a) => {
                let k = self.val(a)?.0;
                Window::new(w.s - k, w.i + k)
            }
            Generator::Central(a) => {
                self.val(a)?;
                w
            }
            Generator::Sign(_) => w,
        };
        Ok(self.is_valid(out).then_some(out))
    }

    /// Window after applying a word, or `None` if it leaves the carrier.
    pub fn word_window(&self, word: &[Generator], w: Window) -> Result<Option<Window>> {
        let mut cur = w;
        for g in word {
            match self.transform_window(g, cur)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Indicator functions of the cosets `x + p^i Z_p` inside `p^{-s} Z_p`.
    pub fn basis(&self, w: Window) -> Result<FunctionBatch> {
        if !self.is_valid(w) {
            bail!(Window, "window {w} does not fit the carrier");
        }
        let n = self.n as i64;
        let step = self.p.pow((n - w.s) as u32) as usize;
        let period = self.p.pow((n + w.i) as u32) as usize;
        let count = period / step;
        let size = self.size as usize;
        let values = DMatrix::from_fn(size, count, |k, j| {
            if k % period == j * step {
                Complex64::one()
            } else {
                Complex64::zero()
            }
        });
        Ok(FunctionBatch { window: w, values })
    }

    /// Index of `a x` (valuation `k`, unit part `u`), or `None` when
    /// `a x` leaves `p^{-N} Z_p`.
    fn scaled_index(&self, idx: usize, k: i64, u_mod: u64) -> Option<usize> {
        let size = self.size as u128;
        let m = if k >= 0 {
            idx as u128 * (self.p as u128).pow(k.min(2 * self.n as i64) as u32) % size
        } else {
            let d = self.p.pow((-k) as u32) as u128;
            if idx as u128 % d != 0 {
                return None;
            }
            idx as u128 / d
        };
        Some((m * u_mod as u128 % size) as usize)
    }

    fn substitute(&self, values: &DMatrix<Complex64>, a: &Rational, scalar: Complex64) -> Result<DMatrix<Complex64>> {
        let (k, u) = self.val(a)?;
        let u_mod = rational_mod(&u, self.size).expect("units are invertible");
        let mut out = DMatrix::zeros(values.nrows(), values.ncols());
        for idx in 0..values.nrows() {
            if let Some(src) = self.scaled_index(idx, k, u_mod) {
                for c in 0..values.ncols() {
                    out[(idx, c)] = values[(src, c)] * scalar;
                }
            }
        }
        Ok(out)
    }

    fn abs_sqrt(&self, a: &Rational) -> Result<f64> {
        let k = self.val(a)?.0;
        Ok((self.p as f64).powf(-(k as f64) / 2.0))
    }

    fn chi_value(&self, a: &Rational) -> Result<Complex64> {
        let c = self.chi.eval(a)?;
        Ok(Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
    }

    /// Applies one generator; errors if the result would leave the carrier.
    pub fn apply(&self, gen: &Generator, f: &FunctionBatch) -> Result<FunctionBatch> {
        let Some(window) = self.transform_window(gen, f.window)? else {
            bail!(Window, "{gen} maps window {} outside the carrier", f.window);
        };
        let values = match gen {
            Generator::W => {
                let scale = self.abs_sqrt(self.psi.scale())? / (self.p.pow(self.n) as f64);
                &self.kernel * &f.values * (self.gamma.to_complex() * scale)
            }
            Generator::N(b) => {
                let mut out = f.values.clone();
                for idx in 0..out.nrows() {
                    let x = self.point(idx);
                    let phase = self.psi.eval(&(b * &x * &x));
                    for c in 0..out.ncols() {
                        out[(idx, c)] *= phase;
                    }
                }
                out
            }
            Generator::T(a) => {
                let scalar = mu(a, &self.psi)?.to_complex() * self.abs_sqrt(a)?;
                self.substitute(&f.values, a, scalar)?
            }
            Generator::D(a) => {
                let scalar = self.chi_value(a)? / self.abs_sqrt(a)?;
                self.substitute(&f.values, &a.recip(), scalar)?
            }
            Generator::Central(a) => &f.values * (self.chi_value(a)? * mu(a, &self.psi)?.to_complex()),
            Generator::Sign(s) => &f.values * Complex64::new(s.to_i64() as f64, 0.0),
        };
        Ok(FunctionBatch { window, values })
    }

    pub fn apply_word(&self, word: &[Generator], f: &FunctionBatch) -> Result<FunctionBatch> {
        let mut cur = f.clone();
        for g in word {
            cur = self.apply(g, &cur)?;
        }
        Ok(cur)
    }

    /// The operator of an `SL₂` element through its normal form.
    pub fn apply_sl2(&self, g: &Mat2, f: &FunctionBatch) -> Result<FunctionBatch> {
        self.apply_word(&normal_form(g)?, f)
    }
}

pub(crate) fn ceil_half(n: i64) -> i64 {
    n.div_euclid(2) + n.rem_euclid(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn carrier_sizes() {
        assert_eq!(FiniteWeilModel::new(3, 1).unwrap().carrier_size(), 9);
        assert_eq!(FiniteWeilModel::new(5, 1).unwrap().carrier_size(), 25);
        assert_eq!(FiniteWeilModel::new(3, 2).unwrap().carrier_size(), 81);
        assert!(FiniteWeilModel::new(2, 1).is_err());
    }

    #[test]
    fn normal_form_reproduces_the_matrix() {
        let gs = [
            Mat2::w(),
            Mat2::new(int(2), int(3), int(5), int(8)),
            Mat2::new(int(3), rat(1, 2), int(0), rat(1, 3)),
            Mat2::identity(),
        ];
        for g in gs {
            let mut m = Mat2::identity();
            for gen in normal_form(&g).unwrap() {
                m = gen.matrix().unwrap().mul(&m);
            }
            assert_eq!(m, g);
        }
    }

    #[test]
    fn double_fourier_is_reflection() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            let model = FiniteWeilModel::new(p, n).unwrap();
            let b = model.basis(model.full_window()).unwrap();
            let ff = model.apply_word(&[Generator::W, Generator::W], &b).unwrap();
            // γ(ψ)² = μ(-1)^{-1}
            let g2 = model.gamma.pow(2).to_complex();
            for k in 0..model.carrier_size() {
                for c in 0..b.values.ncols() {
                    let expect = b.values[(model.negate_index(k), c)] * g2;
                    assert!((ff.values[(k, c)] - expect).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn delta_transforms_to_constant() {
        let model = FiniteWeilModel::new(3, 1).unwrap();
        let mut f = model.basis(model.full_window()).unwrap();
        f.values = DMatrix::from_fn(9, 1, |k, _| if k == 0 { Complex64::one() } else { Complex64::zero() });
        let g = model.apply(&Generator::W, &f).unwrap();
        for k in 0..9 {
            assert!((g.values[(k, 0)] - model.gamma.to_complex() / 3.0).norm() < 1e-12);
        }
    }

    #[test]
    fn lattice_indicator_is_fixed() {
        let model = FiniteWeilModel::new(5, 1).unwrap();
        let f = model.basis(Window::new(0, 0)).unwrap();
        let g = model.apply(&Generator::W, &f).unwrap();
        assert_eq!(g.window, Window::new(0, 0));
        assert!(max_diff(&g.values, &(&f.values * model.gamma.to_complex())) < 1e-9);
    }

    #[test]
    fn generator_examples() {
        let model = FiniteWeilModel::new(3, 2).unwrap();
        let f = model.basis(Window::new(1, 1)).unwrap();
        let g = model.apply(&Generator::N(int(0)), &f).unwrap();
        assert!(max_diff(&g.values, &f.values) < 1e-12);
        let g = model.apply(&Generator::T(int(2)), &f).unwrap();
        for k in 0..81 {
            let src = (2 * k) % 81;
            for c in 0..f.values.ncols() {
                assert!((g.values[(k, c)] - f.values[(src, c)]).norm() < 1e-12);
            }
        }
        let z = model.apply(&Generator::Central(int(3)), &f).unwrap();
        let m = mu(&int(3), model.psi()).unwrap().to_complex();
        assert!(max_diff(&z.values, &(&f.values * m)) < 1e-12);
    }

    #[test]
    fn window_violations_are_errors() {
        let model = FiniteWeilModel::new(3, 1).unwrap();
        let f = model.basis(model.full_window()).unwrap();
        assert!(matches!(model.apply(&Generator::T(int(3)), &f), Err(crate::Error::Window(_))));
        assert!(model.apply(&Generator::N(rat(1, 3)), &f).is_err());
        assert!(model.basis(Window::new(2, 0)).is_err());
    }
}
