use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use metaplectic::arith::{fmt_rational, hilbert, parse_rational, Place, Rational, Sign, TruncatedSeries};
use metaplectic::cocycle::sigma;
use metaplectic::symsq::{
    euler_product, euler_tail_bound, local_factors, pole_report, unramified_zeta_series, CharValue, ChiSqrt,
    SatakeData,
};
use metaplectic::weil_index::{gamma, mu, AdditiveCharacter};
use metaplectic::{Error, Result};

use crate::expr::parse_element;
use crate::report::CheckReport;
use crate::satake_io::ingest_satake;
use crate::suites::{run_suite, weilrep, Config, Suite, WeilRepPart, WEIL_MODELS};

#[derive(Debug, Parser)]
#[command(name = "metaplectic", version, about = "Metaplectic cocycles, Weil indices and symmetric-square local factors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite: symbols, cocycles, weil, weilrep, symsq or all.
    #[command(alias = "run-suite")]
    Check {
        #[arg(long)]
        suite: String,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record per-case wall time (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Finite Weil model checks at (p, N); prints a JSON report.
    WeilrepCheck {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: u32,
        /// multipliers, parity, whittaker, twist or tensor
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hilbert symbol (a, b)_v.
    Hilbert {
        #[arg(short, allow_hyphen_values = true)]
        a: String,
        #[arg(short, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        place: String,
    },
    /// Cocycle value sigma_v(g, h) on structured elements.
    Cocycle {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        place: String,
    },
    /// Weil index gamma(psi_a).
    WeilGamma {
        #[arg(short, allow_hyphen_values = true, default_value = "1")]
        a: String,
        #[arg(long)]
        place: String,
    },
    /// mu_psi(a) = gamma(psi_a) / gamma(psi).
    WeilMu {
        #[arg(short, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        place: String,
    },
    /// Coefficients of the unramified zeta integral in Y = q^{-2s+1/2}.
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        chi: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// Local factors: symmetric square, exterior square and Rankin-Selberg.
    Lfactor {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        chi: String,
    },
    /// Partial Euler product of L^S(s, pi, Sym^2 x chi) from a Satake table.
    Euler {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        s: f64,
        /// Bound the tail past this prime, using the largest |alpha| in the table.
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Poles of the normalizing factor and of the L-function.
    Poles {
        #[arg(long)]
        r: usize,
        #[arg(long, action = clap::ArgAction::Set)]
        trivial: bool,
    },
}

fn rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

fn sign(s: Sign) -> String {
    s.to_i64().to_string()
}

fn series(s: &TruncatedSeries) -> String {
    let c: Vec<String> = s.coeffs().iter().map(fmt_rational).collect();
    format!("[{}]", c.join(", "))
}

fn set(v: &[Rational]) -> String {
    let c: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("{{{}}}", c.join(", "))
}

/// Evaluates a compute command to its printed form.
pub fn compute(cmd: &Command) -> Result<String> {
    Ok(match cmd {
        Command::Hilbert { a, b, place } => {
            sign(hilbert(&parse_rational(a)?, &parse_rational(b)?, Place::parse(place)?)?)
        }
        Command::Cocycle { g, h, place } => sign(sigma(&parse_element(g)?, &parse_element(h)?, Place::parse(place)?)?),
        Command::WeilGamma { a, place } => {
            gamma(&AdditiveCharacter::new(Place::parse(place)?, parse_rational(a)?)?)?.to_string()
        }
        Command::WeilMu { a, place } => {
            mu(&parse_rational(a)?, &AdditiveCharacter::standard(Place::parse(place)?)?)?.to_string()
        }
        Command::Zeta { alphas, chi, q, deg } => {
            let chi = parse_rational(chi)?;
            let sat = SatakeData::new(rationals(alphas)?, *q, CharValue::Unramified(chi.clone()))?;
            series(&unramified_zeta_series(&sat, &ChiSqrt::new(chi, Sign::Plus), *deg)?)
        }
        Command::Lfactor { r, alphas, chi } => {
            let alphas = rationals(alphas)?;
            if alphas.len() != *r {
                return Err(Error::Domain(format!("expected {r} Satake parameters, got {}", alphas.len())));
            }
            // q does not enter the polynomials in X = q^{-s}
            let sat = SatakeData::new(alphas, 2, CharValue::Unramified(parse_rational(chi)?))?;
            let f = local_factors(&sat)?;
            format!("sym: {}\next: {}\nrs:  {}", f.sym, f.ext, f.rs)
        }
        Command::Euler { table, s, cutoff } => {
            let entries = ingest_satake(table)?;
            let rows: Vec<_> = entries.iter().map(|e| e.euler_row()).collect();
            let value = euler_product(&rows, Complex64::new(*s, 0.0))?;
            let mut out = format!("{:.12}", value.re);
            if value.im.abs() > 1e-12 {
                out = format!("{value:.12}");
            }
            if let Some(c) = cutoff {
                let r = entries.iter().map(|e| e.data.rank()).max().unwrap_or(1);
                let m = rows
                    .iter()
                    .flat_map(|row| row.alphas.iter().map(|a| a.norm()))
                    .fold(1.0, f64::max);
                match euler_tail_bound(r, *s, m, *c) {
                    Some(b) => out.push_str(&format!("\nrelative tail bound past {c}: {b:.3e}")),
                    None => out.push_str(&format!("\nno tail bound at s = {s} past {c}")),
                }
            }
            out
        }
        Command::Poles { r, trivial } => {
            let rep = pole_report(*r, *trivial)?;
            format!("normalizer: {}\nL-function: {}", set(&rep.normalizer_poles), set(&rep.l_function_poles))
        }
        Command::Check { .. } | Command::WeilrepCheck { .. } => {
            return Err(Error::Precondition("not a compute command".into()))
        }
    })
}

fn emit(report: &CheckReport, json: Option<&PathBuf>) -> ExitCode {
    print!("{}", report.to_table());
    if let Some(path) = json {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn run(cli: Cli) -> ExitCode {
    match &cli.command {
        Command::Check { suite, json, seed, timings } => {
            let Some(s) = Suite::parse(suite) else {
                eprintln!("error: unknown suite {suite:?}; expected symbols, cocycles, weil, weilrep, symsq or all");
                return ExitCode::from(2);
            };
            emit(&run_suite(s, Config { seed: *seed, timings: *timings }), json.as_ref())
        }
        Command::WeilrepCheck { p, n, suite, seed } => {
            let Some(part) = WeilRepPart::parse(suite) else {
                eprintln!("error: unknown weilrep suite {suite:?}; expected multipliers, parity, whittaker, twist or tensor");
                return ExitCode::from(2);
            };
            if !WEIL_MODELS.contains(&(*p, *n)) {
                eprintln!("note: ({p},{n}) is outside the tested model list; results may hit the carrier limit");
            }
            let report = weilrep(*p, *n, part, Config { seed: *seed, timings: false });
            println!("{}", report.to_json());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        cmd => match compute(cmd) {
            Ok(out) => {
                println!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
