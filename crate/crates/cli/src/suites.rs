//! Deterministic verification suites, one per library module.

use std::fmt;

use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use metaplectic::arith::{
    hilbert, int, is_prime, rat, reciprocity_product, square_class_representatives, Place, Rational, Sign,
};
use metaplectic::cocycle::{
    block_lemmas_check, central_sigma, cocycle_identity_check, global_sigma_product, sigma,
    sigma_torus_even_reduced, Block, Mat2, StructuredElement,
};
use metaplectic::symsq::{
    bg_identity_check, euler_product, euler_tail_bound, local_factors, partitions_up_to, pole_report,
    rs_factorization_check, s_to_l_arg, schur_jt, schur_tableau_oracle, unramified_zeta_check,
    unramified_zeta_series, CharValue, ChiSqrt, EulerRow, SatakeData,
};
use metaplectic::weil_index::{gamma, gamma_direct, mu, mu_multiplicativity_check, AdditiveCharacter, EighthRoot};
use metaplectic::weil_rep::{
    agrees_with_kubota, central_scalar_check, generator_pair_multipliers, kubota_coboundary, multiplier_cocycle_run,
    parity_invariance_check, tensor_whittaker_check, torus_expectation, twist_intertwiner_check,
    whittaker_existence_table, FiniteWeilModel, Generator,
};
use metaplectic::Result;

use crate::report::{CheckReport, Runner};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Symbols,
    Cocycles,
    Weil,
    WeilRep,
    Symsq,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "symbols" => Suite::Symbols,
            "cocycles" => Suite::Cocycles,
            "weil" => Suite::Weil,
            "weilrep" => Suite::WeilRep,
            "symsq" => Suite::Symsq,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Symbols => "symbols",
            Suite::Cocycles => "cocycles",
            Suite::Weil => "weil",
            Suite::WeilRep => "weilrep",
            Suite::Symsq => "symsq",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub seed: u64,
    pub timings: bool,
}

pub fn run_suite(suite: Suite, cfg: Config) -> CheckReport {
    match suite {
        Suite::Symbols => symbols(cfg),
        Suite::Cocycles => cocycles(cfg),
        Suite::Weil => weil(cfg),
        Suite::WeilRep => {
            let mut r = CheckReport::new("weilrep", cfg.seed);
            for (p, n) in WEIL_MODELS {
                for part in WeilRepPart::ALL {
                    r.extend(weilrep(p, n, part, cfg));
                }
            }
            r
        }
        Suite::Symsq => symsq(cfg),
        Suite::All => {
            let mut r = CheckReport::new("all", cfg.seed);
            for s in [Suite::Symbols, Suite::Cocycles, Suite::Weil, Suite::WeilRep, Suite::Symsq] {
                r.extend(run_suite(s, cfg));
            }
            r
        }
    }
}

fn sign_str(s: Sign) -> String {
    s.to_i64().to_string()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-60..=60);
        if n != 0 {
            return rat(n, rng.gen_range(1..=24));
        }
    }
}

fn tally(ok: usize, total: usize) -> String {
    format!("{ok}/{total}")
}

const ODD_PLACES: [Place; 4] = [Place::Finite(3), Place::Finite(5), Place::Finite(7), Place::Real];

fn symbols(cfg: Config) -> CheckReport {
    let mut r = Runner::new("symbols", cfg.seed, cfg.timings);
    let table: [(i64, i64, Place, i64); 6] = [
        (-1, -1, Place::Real, -1),
        (-1, -1, Place::Finite(2), -1),
        (2, 3, Place::Finite(3), -1),
        (5, 7, Place::Finite(5), -1),
        (3, 3, Place::Finite(3), -1),
        (2, 5, Place::Real, 1),
    ];
    for (a, b, v, want) in table {
        r.case(format!("hilbert({a},{b})_{v}"), format!("a={a} b={b} v={v}"), want.to_string(), || {
            hilbert(&int(a), &int(b), v).map(sign_str)
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for batch in 0..10 {
        let pairs: Vec<(Rational, Rational)> =
            (0..100).map(|_| (random_rational(&mut rng), random_rational(&mut rng))).collect();
        r.case(format!("reciprocity batch {batch}"), "100 seeded pairs", tally(100, 100), || {
            let mut ok = 0;
            for (a, b) in &pairs {
                ok += usize::from(reciprocity_product(a, b)? == Sign::Plus);
            }
            Ok(tally(ok, 100))
        });
    }
    for v in [Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Finite(7), Place::Real] {
        let triples: Vec<[Rational; 3]> = (0..50).map(|_| [0, 1, 2].map(|_| random_rational(&mut rng))).collect();
        r.case(format!("bilinearity at {v}"), "50 seeded triples", tally(50, 50), || {
            let mut ok = 0;
            for [a, b, c] in &triples {
                ok += usize::from(hilbert(a, &(b * c), v)? == hilbert(a, b, v)? * hilbert(a, c, v)?);
            }
            Ok(tally(ok, 50))
        });
        let singles: Vec<Rational> =
            (0..50).map(|_| random_rational(&mut rng)).filter(|a| !a.is_one()).collect();
        let n = singles.len();
        r.case(format!("steinberg and (a,-a) at {v}"), format!("{n} seeded values"), tally(n, n), || {
            let mut ok = 0;
            for a in &singles {
                let one_minus = Rational::one() - a;
                let st = hilbert(a, &one_minus, v)? == Sign::Plus;
                ok += usize::from(st && hilbert(a, &-a, v)? == Sign::Plus);
            }
            Ok(tally(ok, n))
        });
    }
    r.finish()
}

fn torus(v: &[Rational]) -> Result<StructuredElement> {
    StructuredElement::torus(v.to_vec())
}

fn cocycles(cfg: Config) -> CheckReport {
    let mut r = Runner::new("cocycles", cfg.seed, cfg.timings);
    let vals = [int(-1), int(2), int(3), int(5)];
    let rank2: Vec<StructuredElement> = vals
        .iter()
        .flat_map(|a| vals.iter().map(move |b| torus(&[a.clone(), b.clone()]).expect("nonzero entries")))
        .collect();
    for v in ODD_PLACES {
        r.check(format!("normalization at {v}"), "torus, sl2 and central elements", || {
            let id2 = StructuredElement::identity(2);
            let sl = StructuredElement::sl2(Mat2::new(int(2), int(3), int(5), int(8)))?;
            for g in rank2.iter().chain(std::iter::once(&sl)) {
                if sigma(&id2, g, v)? != Sign::Plus || sigma(g, &id2, v)? != Sign::Plus {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        let total = rank2.len().pow(3);
        r.case(format!("torus cocycle identity at {v}"), "all rank-2 triples over {-1,2,3,5}", tally(total, total), || {
            let mut ok = 0;
            for g in &rank2 {
                for h in &rank2 {
                    for k in &rank2 {
                        ok += usize::from(cocycle_identity_check(g, h, k, v)?);
                    }
                }
            }
            Ok(tally(ok, total))
        });
    }
    for v in [Place::Finite(3), Place::Finite(5), Place::Real] {
        r.check(format!("even torus reduction at {v}"), "rank 4 elements with square pair ratios", || {
            let mut elts = Vec::new();
            for x in [int(-1), int(2), int(3)] {
                for y in [int(1), int(7)] {
                    elts.push(torus(&[x.clone() * int(4), x.clone(), y.clone() * int(9), y.clone()])?);
                }
            }
            for g in &elts {
                for h in &elts {
                    if sigma(g, h, v)? != sigma_torus_even_reduced(g, h, v)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        });
        r.check(format!("center exponent at {v}"), "a, b in {-1,2,3}, r = 1..5", || {
            for rank in 1..=5usize {
                for a in [int(-1), int(2), int(3)] {
                    for b in [int(-1), int(2), int(3)] {
                        let za = StructuredElement::central(a.clone(), rank)?;
                        let zb = StructuredElement::central(b.clone(), rank)?;
                        let want = hilbert(&a, &b, v)?.pow((rank * (rank - 1) / 2) as u64);
                        if sigma(&za, &zb, v)? != want || central_sigma(&a, &b, rank, v)? != want {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        });
        r.check(format!("unipotent triviality at {v}"), "n = x_13(7) against tori", || {
            let n = StructuredElement::unipotent_from_entries(3, &[(1, 3, int(7)), (1, 2, rat(1, 3))])?;
            let t = torus(&[int(3), int(-5), int(7)])?;
            Ok(sigma(&n, &t, v)? == Sign::Plus && sigma(&t, &n, v)? == Sign::Plus && sigma(&n, &n, v)? == Sign::Plus)
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.check("global product formula", "40 seeded torus pairs and sl2 pairs", || {
        for _ in 0..20 {
            let g = torus(&[random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng)])?;
            let h = torus(&[random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng)])?;
            if global_sigma_product(&g, &h)? != Sign::Plus {
                return Ok(false);
            }
        }
        let sl = |a: i64, b: i64, c: i64| {
            // a d - b c = 1 with d = (1 + b c) / a
            StructuredElement::sl2(Mat2::new(int(a), int(b), int(c), (int(1) + int(b) * int(c)) / int(a)))
        };
        for (x, y) in [((2, 3, 5), (7, 1, 6)), ((3, -1, 4), (5, 2, -3)), ((-2, 7, 1), (1, 0, 4))] {
            let g = sl(x.0, x.1, x.2)?;
            let h = sl(y.0, y.1, y.2)?;
            if global_sigma_product(&g, &h)? != Sign::Plus {
                return Ok(false);
            }
        }
        Ok(true)
    });
    for v in [Place::Finite(3), Place::Finite(5), Place::Real] {
        r.check(format!("block lemmas at {v}"), "square-determinant blocks in (2,2) and (2,1,2)", || {
            let blocks = [
                Block::Gl2(Mat2::new(int(1), int(1), int(0), int(4))),
                Block::Gl2(Mat2::new(int(3), int(0), int(1), int(3))),
                Block::Torus(vec![int(9), int(1)]),
                Block::Torus(vec![int(6), int(6)]),
                Block::Sl2(Mat2::new(int(2), int(3), int(5), int(8))),
            ];
            for g in &blocks {
                for h in &blocks {
                    if !block_lemmas_check(&[2, 2], 0, 1, g, h, v)? || !block_lemmas_check(&[2, 1, 2], 2, 0, g, h, v)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        });
    }
    r.finish()
}

const WEIL_PLACES: [Place; 6] =
    [Place::Finite(3), Place::Finite(5), Place::Finite(7), Place::Finite(11), Place::Finite(13), Place::Real];

fn weil(cfg: Config) -> CheckReport {
    let mut r = Runner::new("weil", cfg.seed, cfg.timings);
    for v in WEIL_PLACES {
        let reps = square_class_representatives(v);
        let n = reps.len() * reps.len();
        r.case(format!("mu multiplicativity at {v}"), "all square-class pairs", tally(n, n), || {
            let psi = AdditiveCharacter::standard(v)?;
            let mut ok = 0;
            for a in &reps {
                for b in &reps {
                    ok += usize::from(mu_multiplicativity_check(a, b, &psi)?.holds());
                }
            }
            Ok(tally(ok, n))
        });
        r.check(format!("square-class dependence at {v}"), "gamma(psi_{a b^2}) = gamma(psi_a), direct oracle", || {
            for a in &reps {
                let base = gamma(&AdditiveCharacter::new(v, a.clone())?)?;
                for b in [int(2), int(3), rat(1, 2)] {
                    let (direct, residual) = gamma_direct(&AdditiveCharacter::new(v, a * &b * &b)?)?;
                    if direct != base || residual >= 1e-6 {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        });
        r.case(format!("mu(-1) gamma^2 at {v}"), "", EighthRoot::ONE.to_string(), || {
            let psi = AdditiveCharacter::standard(v)?;
            let g = gamma(&psi)?;
            Ok((mu(&int(-1), &psi)? * g * g).to_string())
        });
    }
    r.finish()
}

pub const WEIL_MODELS: [(u64, u32); 4] = [(3, 1), (3, 2), (5, 1), (7, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeilRepPart {
    Multipliers,
    Parity,
    Whittaker,
    Twist,
    Tensor,
}

impl WeilRepPart {
    pub const ALL: [WeilRepPart; 5] =
        [WeilRepPart::Multipliers, WeilRepPart::Parity, WeilRepPart::Whittaker, WeilRepPart::Twist, WeilRepPart::Tensor];

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            WeilRepPart::Multipliers => "multipliers",
            WeilRepPart::Parity => "parity",
            WeilRepPart::Whittaker => "whittaker",
            WeilRepPart::Twist => "twist",
            WeilRepPart::Tensor => "tensor",
        }
    }
}

pub fn weilrep(p: u64, n: u32, part: WeilRepPart, cfg: Config) -> CheckReport {
    let tag = format!("({p},{n})");
    let mut r = Runner::new(&format!("weilrep {} {tag}", part.name()), cfg.seed, cfg.timings);
    let model = match FiniteWeilModel::new(p, n) {
        Ok(m) => m,
        Err(e) => {
            r.case(format!("model {tag}"), format!("p={p} N={n}"), "constructed", || Err(e));
            return r.finish();
        }
    };
    let u = int(metaplectic::arith::least_nonresidue(p) as i64);
    match part {
        WeilRepPart::Multipliers => {
            let recs = generator_pair_multipliers(&model);
            r.check(format!("multipliers are ±1 {tag}"), "all generator pairs", || {
                Ok(recs.as_ref().map_err(Clone::clone)?.iter().all(|x| x.multiplier.sign().is_some()))
            });
            r.check(format!("kubota up to (-1,c)_p {tag}"), "all generator pairs", || {
                agrees_with_kubota(recs.as_ref().map_err(Clone::clone)?, |g| kubota_coboundary(g, p))
            });
            r.check(format!("torus multipliers {tag}"), "diagonal generator pairs", || {
                for x in recs.as_ref().map_err(Clone::clone)? {
                    if x.g.is_diagonal() && x.h.is_diagonal() && x.multiplier.sign() != Some(torus_expectation(&x.g.a, &x.h.a, p)?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
            r.case(format!("cocycle identity {tag}"), "200 seeded triples", "0 failures", || {
                let run = multiplier_cocycle_run(&model, 200, cfg.seed)?;
                Ok(format!("{} failures", run.failures.len()))
            });
            r.check(format!("central scalar {tag}"), "a in {-1, u, p, 1/p}", || {
                for a in [int(-1), u.clone(), int(p as i64), rat(1, p as i64)] {
                    let c = central_scalar_check(&model, &a)?;
                    if c.composite_error >= 1e-9 || c.scalar_error >= 1e-9 {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
        }
        WeilRepPart::Parity => {
            let gens = [
                Generator::W,
                Generator::N(int(1)),
                Generator::N(u.clone()),
                Generator::N(rat(1, p as i64)),
                Generator::T(u.clone()),
                Generator::T(int(p as i64)),
                Generator::D(int(p as i64)),
            ];
            for g in gens {
                r.check(format!("parity under {g} {tag}"), "", || parity_invariance_check(&model, &g));
            }
        }
        WeilRepPart::Whittaker => {
            let table = whittaker_existence_table(&model);
            r.check(format!("whittaker existence {tag}"), "dimension vs square roots vs squareness", || {
                Ok(table
                    .as_ref()
                    .map_err(Clone::clone)?
                    .iter()
                    .all(|x| x.dimension == x.roots && (x.dimension > 0) == x.is_square))
            });
        }
        WeilRepPart::Twist => {
            for (a, sq) in [(int(1), Some(int(1))), (u.clone(), None), (int(p as i64), None), (int(4), Some(int(2)))] {
                r.check(format!("twist by {a} {tag}"), "", || Ok(twist_intertwiner_check(&model, &a, sq.as_ref())?.holds()));
            }
        }
        WeilRepPart::Tensor => {
            let classes = [int(1), u.clone()];
            let mut total = 0;
            let mut cases = Vec::new();
            for a1 in &classes {
                for a2 in &classes {
                    for b1 in &classes {
                        for b2 in &classes {
                            total += 1;
                            cases.push((a1.clone(), a2.clone(), b1.clone(), b2.clone()));
                        }
                    }
                }
            }
            r.case(format!("tensor whittaker q=2 {tag}"), "all unit square classes", tally(total, total), || {
                let mut ok = 0;
                for (a1, a2, b1, b2) in &cases {
                    ok += usize::from(tensor_whittaker_check(p, n, (a1, a2), (b1, b2))?.holds());
                }
                Ok(tally(ok, total))
            });
        }
    }
    r.finish()
}

fn random_alphas(rng: &mut ChaCha8Rng, r: usize) -> Vec<Rational> {
    (0..r)
        .map(|_| loop {
            let n: i64 = rng.gen_range(-7..=7);
            if n != 0 {
                break rat(n, rng.gen_range(1..=5));
            }
        })
        .collect()
}

fn sat(alphas: Vec<Rational>, chi: Rational) -> Result<SatakeData> {
    SatakeData::new(alphas, 7, CharValue::Unramified(chi))
}

fn symsq(cfg: Config) -> CheckReport {
    let mut r = Runner::new("symsq", cfg.seed, cfg.timings);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for nvars in 1..=4usize {
        let values = random_alphas(&mut rng, nvars);
        let parts = partitions_up_to(8, nvars);
        let total = parts.len();
        r.case(format!("schur oracle r={nvars}"), "all |λ| <= 8", tally(total, total), || {
            let mut ok = 0;
            for p in &parts {
                ok += usize::from(schur_jt(p, &values)? == schur_tableau_oracle(p, &values)?);
            }
            Ok(tally(ok, total))
        });
    }
    r.case("rank 2 ones: (1-X)^-3", "alphas 1,1", "1,3,6,10", || {
        let s = local_factors(&sat(vec![int(1), int(1)], int(1))?)?.sym.l_series(3);
        Ok(s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
    });
    for rank in 2..=4usize {
        for k in 0..5 {
            let alphas = random_alphas(&mut rng, rank);
            let chi = random_alphas(&mut rng, 1).remove(0);
            let shown = alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
            let data = sat(alphas, chi.clone());
            r.check(format!("bg identity r={rank} #{k}"), format!("alphas {shown}, D=10"), || bg_identity_check(data.as_ref().map_err(Clone::clone)?, 10));
            r.check(format!("unramified zeta r={rank} #{k}"), format!("alphas {shown}, chi {chi}, D=10"), || {
                let d = data.as_ref().map_err(Clone::clone)?;
                let cs = ChiSqrt::new(chi.clone(), Sign::Plus);
                let same = unramified_zeta_series(d, &cs, 10)? == unramified_zeta_series(d, &cs.flipped(), 10)?;
                Ok(same && unramified_zeta_check(d, &cs, 10)?)
            });
        }
    }
    for rank in 1..=5usize {
        r.case(format!("rs = ext·sym r={rank}"), "10 seeded tuples", tally(10, 10), || {
            let mut ok = 0;
            for _ in 0..10 {
                let alphas = random_alphas(&mut rng, rank);
                let chi = random_alphas(&mut rng, 1).remove(0);
                ok += usize::from(rs_factorization_check(&sat(alphas, chi)?)?);
            }
            Ok(tally(ok, 10))
        });
    }
    r.check("pole report", "r=3", || {
        let t = pole_report(3, true)?;
        let n = pole_report(3, false)?;
        Ok(t.normalizer_poles == vec![rat(1, 4), rat(3, 4)]
            && t.l_function_poles == vec![int(0), int(1)]
            && s_to_l_arg(&rat(3, 4)) == int(1)
            && s_to_l_arg(&rat(1, 4)) == int(0)
            && n.normalizer_poles.is_empty()
            && n.l_function_poles.is_empty())
    });
    r.check("euler product vs zeta(2)", "r=1, trivial data, p < 100", || {
        let rows: Vec<EulerRow> = (2..100u64)
            .filter(|&p| is_prime(p))
            .map(|p| EulerRow { p, alphas: vec![Complex64::new(1.0, 0.0)], chi: Some(Complex64::new(1.0, 0.0)) })
            .collect();
        let partial = euler_product(&rows, Complex64::new(2.0, 0.0))?;
        let direct: f64 = (1..200_000u64).map(|n| 1.0 / (n as f64 * n as f64)).sum::<f64>() + 1.0 / 200_000.0;
        let bound = euler_tail_bound(1, 2.0, 1.0, 100).unwrap_or(f64::INFINITY);
        Ok(partial.im.abs() < 1e-12 && (direct - partial.re).abs() <= partial.re * bound + 1e-9)
    });
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in ["symbols", "cocycles", "weil", "weilrep", "symsq", "all"] {
            assert_eq!(Suite::parse(s).unwrap().to_string(), s);
        }
        assert!(Suite::parse("bogus").is_none());
        assert_eq!(WeilRepPart::parse("tensor"), Some(WeilRepPart::Tensor));
    }

    #[test]
    fn symbols_suite_passes() {
        let rep = run_suite(Suite::Symbols, Config { seed: 0, timings: false });
        assert!(rep.passed(), "{}", rep.to_table());
    }

    #[test]
    fn symsq_suite_passes() {
        let rep = run_suite(Suite::Symsq, Config { seed: 3, timings: false });
        assert!(rep.passed(), "{}", rep.to_table());
    }
}
