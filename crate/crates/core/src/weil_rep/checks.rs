use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{normal_form, FiniteWeilModel, FunctionBatch, Generator, Window};
use crate::arith::{hilbert, int, is_local_square, least_nonresidue, rat, Place, Rational, Sign};
use crate::cocycle::{kubota_gl2, kubota_sl2, LocalCharacter, Mat2};
use crate::error::{bail, Result};
use crate::weil_index::{mu, AdditiveCharacter};

/// Tolerance for operator identities.
pub const OPERATOR_TOLERANCE: f64 = 1e-9;
/// Tolerance for recognising a scalar as `±1`.
pub const MULTIPLIER_TOLERANCE: f64 = 1e-6;

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The scalar `c` with `op(g) op(h) = c op(gh)` and where it was measured.
#[derive(Debug, Clone)]
pub struct Multiplier {
    pub value: Complex64,
    pub residual: f64,
    pub window: Window,
}

impl Multiplier {
    /// The multiplier as a sign, when it is `±1` within tolerance.
    pub fn sign(&self) -> Option<Sign> {
        if (self.value - 1.0).norm() < MULTIPLIER_TOLERANCE {
            Some(Sign::Plus)
        } else if (self.value + 1.0).norm() < MULTIPLIER_TOLERANCE {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// Least-squares scalar `c` with `a ≈ c b`, and the worst entry residual.
fn scalar_ratio(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<(Complex64, f64)> {
    let den: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    if den < 1e-24 {
        bail!(ModelInconsistency, "reference operator vanishes on the test window");
    }
    let num: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum();
    let c = num / den;
    Ok((c, max_abs(&(a - b * c))))
}

/// Largest window on which every word applies inside the carrier.
fn common_window(model: &FiniteWeilModel, words: &[&[Generator]]) -> Result<Option<Window>> {
    for w in model.windows() {
        let mut ok = true;
        for word in words {
            if model.word_window(word, w)?.is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Empirical projective multiplier of the normal-form section.
pub fn projective_multiplier(model: &FiniteWeilModel, g: &Mat2, h: &Mat2) -> Result<Multiplier> {
    let wg = normal_form(g)?;
    let wh = normal_form(h)?;
    let wgh = normal_form(&g.mul(h))?;
    let composite: Vec<Generator> = wh.iter().chain(&wg).cloned().collect();
    let Some(window) = common_window(model, &[&composite, &wgh])? else {
        bail!(Window, "no window of the ({}, {}) model carries {g} · {h}", model.p(), model.n());
    };
    let basis = model.basis(window)?;
    let lhs = model.apply_word(&composite, &basis)?;
    let rhs = model.apply_word(&wgh, &basis)?;
    let (value, residual) = scalar_ratio(&lhs.values, &rhs.values)?;
    if residual > MULTIPLIER_TOLERANCE {
        bail!(ModelInconsistency, "op({g}) op({h}) is not a multiple of op(gh): residual {residual:.2e}");
    }
    Ok(Multiplier { value, residual, window })
}

/// Generators exercised by the model checks: `w`, `n(b)` and `t(a)` for
/// small `b`, `a` spanning every square class.
pub fn generator_set(model: &FiniteWeilModel) -> Vec<Mat2> {
    let p = model.p() as i64;
    let u = least_nonresidue(model.p()) as i64;
    let mut out = vec![Mat2::w()];
    for b in [int(1), int(-1), int(u), int(p), rat(1, p)] {
        out.push(Mat2::n(b));
    }
    for a in [int(-1), int(u), int(p), rat(1, p), int(u * p)] {
        out.push(Mat2::t(a));
    }
    out
}

/// One multiplier measurement next to the Kubota cocycle.
#[derive(Debug, Clone)]
pub struct MultiplierRecord {
    pub g: Mat2,
    pub h: Mat2,
    pub multiplier: Multiplier,
    pub kubota: Sign,
}

/// Multipliers of all generator pairs the carrier can hold.
pub fn generator_pair_multipliers(model: &FiniteWeilModel) -> Result<Vec<MultiplierRecord>> {
    let gens = generator_set(model);
    let v = Place::Finite(model.p());
    let mut out = Vec::new();
    for g in &gens {
        for h in &gens {
            match projective_multiplier(model, g, h) {
                Ok(m) => out.push(MultiplierRecord { g: g.clone(), h: h.clone(), multiplier: m, kubota: kubota_sl2(g, h, v)? }),
                Err(crate::Error::Window(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Outcome of the seeded cocycle-identity run.
#[derive(Debug, Clone)]
pub struct CocycleRun {
    pub tested: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

/// Checks `c(g,h) c(gh,k) = c(g,hk) c(h,k)` on seeded generator triples;
/// triples whose products leave the carrier are redrawn.
pub fn multiplier_cocycle_run(model: &FiniteWeilModel, triples: usize, seed: u64) -> Result<CocycleRun> {
    let gens = generator_set(model);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = CocycleRun { tested: 0, skipped: 0, failures: Vec::new() };
    let budget = triples * 50;
    while run.tested < triples {
        if run.tested + run.skipped >= budget {
            bail!(Resource, "only {} of {triples} triples fit the carrier", run.tested);
        }
        let pick = |rng: &mut ChaCha8Rng| gens.choose(rng).expect("nonempty").clone();
        let (g, h, k) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (gh, hk) = (g.mul(&h), h.mul(&k));
        let values = [
            projective_multiplier(model, &g, &h),
            projective_multiplier(model, &gh, &k),
            projective_multiplier(model, &g, &hk),
            projective_multiplier(model, &h, &k),
        ];
        if values.iter().any(|r| matches!(r, Err(crate::Error::Window(_)))) {
            run.skipped += 1;
            continue;
        }
        let [a, b, c, d] = values.map(|r| r.map(|m| m.value));
        let (lhs, rhs) = (a? * b?, c? * d?);
        if (lhs - rhs).norm() > MULTIPLIER_TOLERANCE {
            run.failures.push(format!("g={g} h={h} k={k}: {lhs} vs {rhs}"));
        }
        run.tested += 1;
    }
    Ok(run)
}

/// `t(a) ∘ d(a²)` against the central operator and the scalar `χ(a) μ_ψ(a)`.
#[derive(Debug, Clone)]
pub struct CentralCheck {
    pub composite_error: f64,
    pub scalar_error: f64,
}

pub fn central_scalar_check(model: &FiniteWeilModel, a: &Rational) -> Result<CentralCheck> {
    let word = [Generator::D(a.clone()), Generator::T(a.clone())];
    let Some(window) = common_window(model, &[&word])? else {
        bail!(Window, "t({a}) d({a}²) does not fit the carrier");
    };
    let basis = model.basis(window)?;
    let composite = model.apply_word(&word, &basis)?;
    let central = model.apply(&Generator::Central(a.clone()), &basis)?;
    let chi = model.chi().eval(a)?;
    let expected = mu(a, model.psi())?.to_complex() * num_traits::ToPrimitive::to_f64(&chi).unwrap_or(f64::NAN);
    Ok(CentralCheck {
        composite_error: max_abs(&(&composite.values - &central.values)),
        scalar_error: max_abs(&(&central.values - &basis.values * expected)),
    })
}

/// Whether `gen` maps even functions to even ones and odd to odd, on the
/// largest window it can act on.
pub fn parity_invariance_check(model: &FiniteWeilModel, gen: &Generator) -> Result<bool> {
    let Some(window) = common_window(model, &[std::slice::from_ref(gen)])? else {
        bail!(Window, "{gen} acts on no window of the carrier");
    };
    let basis = model.basis(window)?;
    let n = model.carrier_size();
    let reflect = |m: &DMatrix<Complex64>| DMatrix::from_fn(n, m.ncols(), |k, c| m[(model.negate_index(k), c)]);
    let flipped = reflect(&basis.values);
    for parity in [1.0, -1.0] {
        let f = FunctionBatch { window, values: &basis.values + &flipped * Complex64::new(parity, 0.0) };
        let g = model.apply(gen, &f)?;
        if max_abs(&(&reflect(&g.values) - &g.values * Complex64::new(parity, 0.0))) > OPERATOR_TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether evaluation at carrier point `b` satisfies
/// `δ_b(n(c) f) = ψ(c b²) δ_b(f)` on a window containing `b`.
pub fn whittaker_eigen_check(model: &FiniteWeilModel, b: usize, c: &Rational) -> Result<bool> {
    let gen = Generator::N(c.clone());
    let x = model.point(b);
    let Some(window) = model
        .windows()
        .into_iter()
        .find(|w| contains(model, *w, b) && model.transform_window(&gen, *w).ok().flatten().is_some())
    else {
        bail!(Window, "n({c}) acts on no window containing {x}");
    };
    let basis = model.basis(window)?;
    let image = model.apply(&gen, &basis)?;
    let eigen = model.psi().eval(&(c * &x * &x));
    Ok((0..basis.values.ncols()).all(|j| (image.values[(b, j)] - eigen * basis.values[(b, j)]).norm() < OPERATOR_TOLERANCE))
}

fn contains(model: &FiniteWeilModel, w: Window, k: usize) -> bool {
    let step = model.p().pow((model.n() as i64 - w.s) as u32) as usize;
    k % step == 0
}

/// Dimension of `{λ : λ ∘ op(n(c)) = ψ(a c) λ for all c ∈ p^{-m} Z_p}` on
/// functions supported in `Z_p` and invariant under `p^m Z_p`.
pub fn whittaker_functional_dimension(model: &FiniteWeilModel, a: &Rational, m: u32) -> Result<usize> {
    let window = Window::new(0, m as i64);
    let cs = [rat(1, model.p().pow(m) as i64)];
    let ops = whittaker_constraints(model, window, a, &cs)?;
    Ok(nullity(&ops))
}

/// Rows `λ ↦ λ(op(n(c)) − ψ(ac))`, `ψ` the standard character, restricted to the basis of `window`.
fn whittaker_constraints(model: &FiniteWeilModel, window: Window, a: &Rational, cs: &[Rational]) -> Result<Vec<DMatrix<Complex64>>> {
    let basis = model.basis(window)?;
    let psi = AdditiveCharacter::standard(model.psi().place())?;
    let mut out = Vec::new();
    for c in cs {
        let image = model.apply(&Generator::N(c.clone()), &basis)?;
        if image.window != window {
            bail!(Window, "n({c}) does not preserve window {window}");
        }
        out.push(coordinates(model, &image)? - DMatrix::identity(basis.values.ncols(), basis.values.ncols()) * psi.eval(&(a * c)));
    }
    Ok(out)
}

/// Coordinates of a batch in the coset basis of its window.
fn coordinates(model: &FiniteWeilModel, f: &FunctionBatch) -> Result<DMatrix<Complex64>> {
    let n = model.n() as i64;
    let step = model.p().pow((n - f.window.s) as u32) as usize;
    let count = model.p().pow(f.window.log_dim() as u32) as usize;
    Ok(DMatrix::from_fn(count, f.values.ncols(), |j, c| f.values[(j * step, c)]))
}

/// Dimension of the common left kernel of the stacked constraint matrices.
fn nullity(ops: &[DMatrix<Complex64>]) -> usize {
    let dim = ops[0].nrows();
    // λ^T M = 0 for every M: stack the transposes
    let stacked = DMatrix::from_fn(dim * ops.len(), dim, |r, c| ops[r / dim][(c, r % dim)]);
    let rank = stacked.svd(false, false).singular_values.iter().filter(|s| **s > 1e-8).count();
    dim - rank
}

/// Number of residues `x mod p^m` in `Z_p` with `x² ≡ a (mod p^m)`.
pub fn square_root_count(p: u64, a: &Rational, m: u32) -> Result<usize> {
    let modulus = p.pow(m);
    let Some(r) = crate::arith::rational::rational_mod(a, modulus) else {
        return Ok(0);
    };
    Ok((0..modulus).filter(|x| x * x % modulus == r).count())
}

/// Existence of a `ψ_a`-Whittaker functional against square-root
/// enumeration, with the decisive truncation `m = N`.
#[derive(Debug, Clone)]
pub struct WhittakerRecord {
    pub a: Rational,
    pub dimension: usize,
    pub roots: usize,
    pub is_square: bool,
}

pub fn whittaker_existence_table(model: &FiniteWeilModel) -> Result<Vec<WhittakerRecord>> {
    let p = model.p() as i64;
    let u = least_nonresidue(model.p()) as i64;
    let m = model.n();
    let mut targets = vec![int(1), int(u), int(4), int(u * 4)];
    if m >= 2 {
        targets.extend([int(p), int(u * p)]);
    }
    let v = Place::Finite(model.p());
    targets
        .into_iter()
        .map(|a| {
            Ok(WhittakerRecord {
                dimension: whittaker_functional_dimension(model, &a, m)?,
                roots: square_root_count(model.p(), &a, m)?,
                is_square: is_local_square(&a, v)?,
                a,
            })
        })
        .collect()
}

/// Conjugation `g ↦ d^{-1} g d` by `d = diag(1, a)` transports the
/// `ψ`-model to the `ψ_a`-model up to the cover sign computed from the
/// `GL₂` cocycle; for `a = c²` also checks the intertwiner `f ↦ |c|^{1/2} f(cx)`.
#[derive(Debug, Clone)]
pub struct TwistReport {
    pub conjugation_error: f64,
    pub intertwiner_error: Option<f64>,
}

impl TwistReport {
    pub fn holds(&self) -> bool {
        self.conjugation_error < OPERATOR_TOLERANCE && self.intertwiner_error.is_none_or(|e| e < OPERATOR_TOLERANCE)
    }
}

pub fn twist_intertwiner_check(model: &FiniteWeilModel, a: &Rational, sqrt: Option<&Rational>) -> Result<TwistReport> {
    let p = model.p();
    let v = Place::Finite(p);
    let twisted = FiniteWeilModel::with_character(p, model.n(), model.psi().scaled(a)?, model.chi().clone())?;
    let d = Mat2::diag(int(1), a.clone());
    let d_inv = d.inverse()?;
    let mut conjugation_error: f64 = 0.0;
    let mut intertwiner_error: Option<f64> = None;
    if let Some(c) = sqrt {
        if &(c * c) != a {
            bail!(Precondition, "{c}² ≠ {a}");
        }
    }
    for g in generator_set(model) {
        let conj = d_inv.mul(&g).mul(&d);
        let sign = kubota_gl2(&d_inv, &g, v)? * kubota_gl2(&d_inv.mul(&g), &d, v)?
            * kubota_gl2(&d_inv, &d, v)?;
        let wl = normal_form(&conj)?;
        let wr = normal_form(&g)?;
        let Some(window) = common_window(model, &[&wl])? else { continue };
        if twisted.word_window(&wr, window)?.is_none() {
            continue;
        }
        let basis = model.basis(window)?;
        let lhs = model.apply_word(&wl, &basis)?;
        let rhs = twisted.apply_word(&wr, &basis)?;
        let s = Complex64::new(sign.to_i64() as f64, 0.0);
        conjugation_error = conjugation_error.max(max_abs(&(&lhs.values - &rhs.values * s)));
        if let Some(c) = sqrt {
            // I f = |c|^{1/2} f(c x) = t(c) f / μ_ψ(c)
            let intertwine = |m: &FiniteWeilModel, f: &FunctionBatch| -> Result<FunctionBatch> {
                let mut out = m.apply(&Generator::T(c.clone()), f)?;
                out.values /= mu(c, m.psi())?.to_complex();
                Ok(out)
            };
            let Some(w2) = common_window(model, &[&[Generator::T(c.clone())]])? else { continue };
            let Some(wt) = model.transform_window(&Generator::T(c.clone()), w2)? else { continue };
            if twisted.word_window(&wr, wt)?.is_none() || model.word_window(&wr, w2)?.is_none() {
                continue;
            }
            let Some(w_after) = model.word_window(&wr, w2)? else { continue };
            if model.transform_window(&Generator::T(c.clone()), w_after)?.is_none() {
                continue;
            }
            let b2 = model.basis(w2)?;
            // I ∘ r_ψ(g) = r_{ψ_a}(g) ∘ I
            let left = intertwine(model, &model.apply_word(&wr, &b2)?)?;
            let right = twisted.apply_word(&wr, &intertwine(model, &b2)?)?;
            let e = max_abs(&(&left.values - &right.values));
            intertwiner_error = Some(intertwiner_error.unwrap_or(0.0).max(e));
        }
    }
    Ok(TwistReport { conjugation_error, intertwiner_error })
}

/// Existence of a product Whittaker functional on the tensor of two block
/// models with characters `ψ_{a_1}`, `ψ_{a_2}` for the target `ψ_{(b_1, b_2)}`.
#[derive(Debug, Clone)]
pub struct TensorRecord {
    pub blocks: (Rational, Rational),
    pub targets: (Rational, Rational),
    pub dimension: usize,
    pub expected: bool,
}

impl TensorRecord {
    pub fn holds(&self) -> bool {
        (self.dimension > 0) == self.expected
    }
}

pub fn tensor_whittaker_check(p: u64, n: u32, blocks: (&Rational, &Rational), targets: (&Rational, &Rational)) -> Result<TensorRecord> {
    let place = Place::finite(p)?;
    let make = |a: &Rational| {
        FiniteWeilModel::with_character(p, n, AdditiveCharacter::new(place, a.clone())?, LocalCharacter::trivial(place))
    };
    let (m1, m2) = (make(blocks.0)?, make(blocks.1)?);
    let window = Window::new(0, n as i64);
    let c = rat(1, p.pow(n) as i64);
    let ops1 = whittaker_constraints(&m1, window, targets.0, std::slice::from_ref(&c))?;
    let ops2 = whittaker_constraints(&m2, window, targets.1, std::slice::from_ref(&c))?;
    let d = ops1[0].nrows();
    let id = DMatrix::<Complex64>::identity(d, d);
    // constraint for n(c) in block i acting on the tensor product
    let k1 = ops1[0].kronecker(&id);
    let k2 = id.kronecker(&ops2[0]);
    let dimension = nullity(&[k1, k2]);
    let expected = is_local_square(&(targets.0 / blocks.0), place)? && is_local_square(&(targets.1 / blocks.1), place)?;
    Ok(TensorRecord {
        blocks: (blocks.0.clone(), blocks.1.clone()),
        targets: (targets.0.clone(), targets.1.clone()),
        dimension,
        expected,
    })
}

/// Whether the multiplier of every generator pair agrees with
/// `kubota(g, h) · β(g) β(h) / β(gh)` for the given coboundary `β`.
pub fn agrees_with_kubota(records: &[MultiplierRecord], beta: impl Fn(&Mat2) -> Result<Sign>) -> Result<bool> {
    for r in records {
        let Some(s) = r.multiplier.sign() else {
            return Ok(false);
        };
        if s != r.kubota * beta(&r.g)? * beta(&r.h)? * beta(&r.g.mul(&r.h))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(a, a')_p` for the torus pair `t(a), t(a')`.
pub fn torus_expectation(a: &Rational, b: &Rational, p: u64) -> Result<Sign> {
    hilbert(a, b, Place::Finite(p))
}

/// The coboundary relating the normal-form section to Kubota's cocycle:
/// `(-1, c)_p` when the lower-left entry `c` is nonzero, `+1` otherwise.
pub fn kubota_coboundary(g: &Mat2, p: u64) -> Result<Sign> {
    if g.c.is_zero() {
        Ok(Sign::Plus)
    } else {
        hilbert(&int(-1), &g.c, Place::Finite(p))
    }
}
