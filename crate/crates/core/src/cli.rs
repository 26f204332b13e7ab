//! Command-line front end. All tables are tab separated without headers.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bernoulli::{bernoulli_numbers, theta_ber};
use crate::bernoulli_poly::{a_poly, NU, X};
use crate::chern::{chern_data_builtin, gamma_mfd_from_chern, ChernData};
use crate::harness::{check_conjecture, nu_threshold, trace_convergence, trace_target, Mode};
use crate::moments::{gamma_ber, gamma_series, v_mfd, v_sing, ChiVector, Manifold};
use crate::rational::{fmt_float, int, parse_rational, parse_rational_list, Rational};
use crate::spectra::{
    spectrum_curve, spectrum_from_weights, spectrum_tpqr, PuiseuxData, Spectrum, TpqrParams, WeightSystem,
};

#[derive(Parser, Debug)]
#[command(name = "specmom", version, about = "Exact spectral moments and Bernoulli moment tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bernoulli numbers B_0 .. B_{N-1}.
    Bernoulli {
        #[arg(long)]
        count: usize,
    },
    /// Coefficients of log((t/2)/sinh(t/2)) up to t^N.
    Theta {
        #[arg(long)]
        order: usize,
    },
    /// The polynomial A_k(x, nu), optionally specialized.
    Apoly {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_rational)]
        x: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        nu: Option<Rational>,
    },
    /// Build a spectrum and print it in the spectrum file format.
    Spectrum {
        #[command(subcommand)]
        kind: SpectrumKind,
    },
    /// Bernoulli moments Gamma_2k of a spectrum.
    Gamma {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_rational, conflicts_with = "mode")]
        nu: Option<Rational>,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        #[arg(long)]
        kmax: usize,
    },
    /// Check the alternating sign pattern; exit status 1 if it fails.
    Check {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        kmax: usize,
    },
    /// Normalized Bernoulli moments approaching the trace target.
    Trace {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_rational)]
        nu: Rational,
        #[arg(long)]
        kmax: usize,
    },
    /// Bernoulli moments of a compact complex manifold.
    Manifold(ManifoldArgs),
    /// Bisection for the smallest nu at which the signs hold.
    NuThreshold {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_rational)]
        nu_hi: Rational,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        kcap: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum SpectrumKind {
    /// Quasihomogeneous singularity from its weights.
    Qh {
        #[arg(long, value_parser = parse_weights)]
        weights: Weights,
    },
    /// Hyperbolic T_pqr surface singularity.
    Tpqr {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        r: i64,
    },
    /// Irreducible plane curve from Puiseux pairs `n:r,n:r,...`.
    Curve {
        #[arg(long, value_parser = parse_pairs)]
        puiseux: Pairs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long, value_parser = parse_weights)]
    weights: Option<Weights>,
    /// `p,q,r`
    #[arg(long, value_parser = parse_triple)]
    tpqr: Option<(i64, i64, i64)>,
    #[arg(long, value_parser = parse_pairs)]
    puiseux: Option<Pairs>,
    #[arg(long)]
    spectrum_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct ManifoldArgs {
    #[command(subcommand)]
    chern: Option<ManifoldChern>,
    #[command(flatten)]
    by_chi: Option<ChiArgs>,
}

#[derive(Args, Debug)]
struct ChiArgs {
    #[arg(long, value_delimiter = ',', conflicts_with = "builtin", required_unless_present = "builtin")]
    chi: Option<Vec<i64>>,
    #[arg(long, value_parser = parse_builtin)]
    builtin: Option<Manifold>,
    /// Defaults to the dimension.
    #[arg(long, value_parser = parse_rational)]
    nu: Option<Rational>,
    #[arg(long)]
    kmax: usize,
}

#[derive(Subcommand, Debug)]
enum ManifoldChern {
    /// Same moments computed from Chern numbers.
    Chern {
        #[arg(long, value_parser = parse_builtin, conflicts_with = "file", required_unless_present = "file")]
        builtin: Option<Manifold>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_parser = parse_rational)]
        nu: Option<Rational>,
        #[arg(long)]
        kmax: usize,
    },
}

#[derive(Debug, Clone)]
struct Weights(Vec<Rational>);

#[derive(Debug, Clone)]
struct Pairs(Vec<(i64, i64)>);

fn parse_weights(s: &str) -> Result<Weights, String> {
    parse_rational_list(s).map(Weights).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_pairs(s: &str) -> Result<Pairs, String> {
    s.split(',')
        .map(|p| {
            let (a, b) = p.split_once(':').ok_or_else(|| format!("expected n:r, got {p:?}"))?;
            let a = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
            let b = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
            Ok((a, b))
        })
        .collect::<Result<_, _>>()
        .map(Pairs)
}

fn parse_triple(s: &str) -> Result<(i64, i64, i64), String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [p, q, r] => Ok((*p, *q, *r)),
        _ => Err(format!("expected p,q,r, got {s:?}")),
    }
}

fn parse_builtin(s: &str) -> Result<Manifold, String> {
    let lower = s.to_ascii_lowercase();
    match lower.split_once(':') {
        None if lower == "k3" => Ok(Manifold::K3),
        Some(("pn", n)) => n.parse::<usize>().map(Manifold::Pn).map_err(|e| e.to_string()),
        Some(("genus", g)) => g.parse::<i64>().map(Manifold::Genus).map_err(|e| e.to_string()),
        _ => Err(format!("unknown manifold {s:?} (expected pn:N, k3 or genus:G)")),
    }
}

/// Failure of a command: usage/input problem or a failed check.
enum Outcome {
    Input(String),
    CheckFailed,
}

impl<E: std::fmt::Display> From<E> for Outcome {
    fn from(e: E) -> Self {
        Outcome::Input(e.to_string())
    }
}

type CmdResult = Result<(), Outcome>;

fn load_source(src: &Source) -> Result<Spectrum, Outcome> {
    if let Some(w) = &src.weights {
        return Ok(spectrum_from_weights(&WeightSystem::new(w.0.clone())?)?);
    }
    if let Some((p, q, r)) = src.tpqr {
        return Ok(spectrum_tpqr(&TpqrParams::new(p, q, r)?));
    }
    if let Some(pairs) = &src.puiseux {
        return Ok(spectrum_curve(&PuiseuxData::new(pairs.0.clone())?)?);
    }
    if let Some(path) = &src.spectrum_file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(Spectrum::parse(&text)?);
    }
    Err(Outcome::Input("no spectrum source given".into()))
}

fn io(e: std::io::Error) -> Outcome {
    Outcome::Input(format!("write failed: {e}"))
}

fn print_moments(out: &mut dyn Write, values: &[Rational]) -> CmdResult {
    for (k, g) in values.iter().enumerate() {
        writeln!(out, "{k}\t{g}").map_err(io)?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Bernoulli { count } => {
            for (k, b) in bernoulli_numbers(count).iter().enumerate() {
                writeln!(out, "{k}\t{b}").map_err(io)?;
            }
        }
        Command::Theta { order } => {
            for (k, c) in theta_ber(order).coeffs().iter().enumerate() {
                writeln!(out, "{k}\t{c}").map_err(io)?;
            }
        }
        Command::Apoly { k, x, nu } => {
            let mut p = a_poly(k);
            if let Some(nu) = &nu {
                p = p.specialize(NU, nu);
            }
            if let Some(x) = &x {
                p = p.specialize(X, x);
            }
            if x.is_some() && nu.is_some() {
                writeln!(out, "{}", p.constant_term()).map_err(io)?;
            } else {
                for (m, c) in p.rows() {
                    let e = |i: usize| m.get(i).copied().unwrap_or(0);
                    writeln!(out, "x^{} nu^{} -> {c}", e(X), e(NU)).map_err(io)?;
                }
            }
        }
        Command::Spectrum { kind } => {
            let s = match kind {
                SpectrumKind::Qh { weights } => spectrum_from_weights(&WeightSystem::new(weights.0)?)?,
                SpectrumKind::Tpqr { p, q, r } => spectrum_tpqr(&TpqrParams::new(p, q, r)?),
                SpectrumKind::Curve { puiseux } => spectrum_curve(&PuiseuxData::new(puiseux.0)?)?,
            };
            write!(out, "{}", s.to_text()).map_err(io)?;
        }
        Command::Gamma { source, nu, mode, kmax } => {
            let s = load_source(&source)?;
            let nu = match (nu, mode) {
                (Some(nu), _) => nu,
                (None, Some(m)) => m.nu_for(&s),
                (None, None) => return Err(Outcome::Input("give --nu or --mode".into())),
            };
            let g = gamma_ber(&v_sing(&s, 2 * kmax), &nu)?;
            print_moments(out, &g.even_moments(kmax))?;
        }
        Command::Check { mode, source, kmax } => {
            let s = load_source(&source)?;
            let r = check_conjecture(&s, mode, kmax);
            write!(out, "{}", r.to_tsv()).map_err(io)?;
            if !r.overall {
                return Err(Outcome::CheckFailed);
            }
        }
        Command::Trace { source, nu, kmax } => {
            let s = load_source(&source)?;
            let target = trace_target(&s);
            for (i, v) in trace_convergence(&s, &nu, kmax)?.iter().enumerate() {
                writeln!(out, "{}\t{}\t{}", i + 1, fmt_float(*v), fmt_float(target)).map_err(io)?;
            }
        }
        Command::Manifold(args) => run_manifold(args, out)?,
        Command::NuThreshold { source, k, nu_hi, steps, kcap } => {
            let s = load_source(&source)?;
            let t = nu_threshold(&s, k, &nu_hi, steps, kcap)?;
            writeln!(out, "{t}\t{}", fmt_float(crate::rational::to_f64(&t))).map_err(io)?;
        }
    }
    Ok(())
}

fn run_manifold(args: ManifoldArgs, out: &mut dyn Write) -> CmdResult {
    match (args.chern, args.by_chi) {
        (Some(ManifoldChern::Chern { builtin, file, nu, kmax }), _) => {
            let data = match (builtin, file) {
                (Some(b), _) => chern_data_builtin(b),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    ChernData::parse(&text)?
                }
                (None, None) => return Err(Outcome::Input("give --builtin or --file".into())),
            };
            let nu = nu.unwrap_or_else(|| int(data.n() as i64));
            let values = (0..=kmax)
                .map(|k| gamma_mfd_from_chern(&data, &nu, k))
                .collect::<Result<Vec<_>, _>>()?;
            print_moments(out, &values)
        }
        (None, Some(a)) => {
            let chi = match (a.chi, a.builtin) {
                (Some(c), _) => ChiVector::from_values(c)?,
                (None, Some(b)) => b.chi(),
                (None, None) => return Err(Outcome::Input("give --chi or --builtin".into())),
            };
            let nu = a.nu.unwrap_or_else(|| int(chi.n() as i64));
            let g = gamma_series(&v_mfd(&chi, 2 * a.kmax).series, &nu);
            let values: Vec<Rational> = (0..=a.kmax).map(|k| g.moment(2 * k)).collect();
            print_moments(out, &values)
        }
        (None, None) => Err(Outcome::Input("give --chi, --builtin or the chern subcommand".into())),
    }
}

/// Runs the command line with explicit output streams and returns the exit
/// status: 0 success, 1 failed check, 2 usage or input error.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(Outcome::CheckFailed) => 1,
        Err(Outcome::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// [`run_cli_with`] on the process's standard streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
