//! `lbound`: command-line front end for the bounds, the constant checks, the
//! explicit formula and the extremal-function tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use lbound::bounds::{
    asymptotic_bound, combined_bound, explicit_lower, explicit_upper, Asymptotic, AsymptoticOptions, BoundReport,
    CombinedOptions, Height, Side,
};
use lbound::error::Error;
use lbound::explicit::{guinand_weil_balance, log_modulus_identity};
use lbound::extremal::ExtremalContext;
use lbound::lfunc::{load_descriptor, ConjectureMode, ConjectureProfile, SelbergDescriptor};
use lbound::prime_sums::{Kind, SumMode};
use lbound::verify::{verify_constant, Lemma};
use lbound::zeros::load_zeros;

mod fmt17;

#[derive(Parser)]
#[command(name = "lbound", version, about = "Explicit bounds for log|L(sigma+it)| in the Selberg class")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Exit with status 0 even when a report fails a hypothesis or check.
    #[arg(long, global = true)]
    allow_invalid: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    GeneralUpper,
    GeneralLower,
    ConjUpper,
    ConjLower,
    PolyUpper,
    PolyLower,
    ExplicitUpper,
    ExplicitLower,
    CombinedUpper,
    CombinedLower,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    G,
    M,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::G => Kind::G,
            KindArg::M => Kind::M,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjArg {
    Conj1,
    Conj2,
}

#[derive(Subcommand)]
enum Command {
    /// Theorem-level bounds over a grid of (sigma, t[, log log tau]).
    Bound {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Builtin (`zeta`, `dirichlet:q:k`) or a JSON descriptor path.
        #[arg(long, default_value = "zeta")]
        descriptor: String,
        /// Grid: `a,b,c` or `lo:hi:count`.
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        t: String,
        /// Synthetic heights: log log tau set independently of t.
        #[arg(long)]
        loglogtau: Option<String>,
        /// Threshold constant for the sigma-regimes.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Multiplier applied to every asymptotic envelope term.
        #[arg(long, default_value_t = 1.0)]
        envelope_constant: f64,
        #[arg(long, value_enum)]
        conjecture: Option<ConjArg>,
        #[arg(long, default_value_t = 1.0)]
        cp1: f64,
        #[arg(long, default_value_t = 0.0)]
        cp2: f64,
    },
    /// Recompute the region maxima behind the extremal-function constants.
    VerifyConstants {
        /// `all` or one of M2G_REAL, M2G_COMPLEX, MURC_REAL, MURC_COMPLEX, GABS, MUR_REAL.
        #[arg(long, default_value = "all")]
        lemma: String,
    },
    /// Both sides of the explicit formula for g_Delta or m_Delta.
    ExplicitFormula {
        #[arg(long, default_value = "zeta")]
        descriptor: String,
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value_t = KindArg::G)]
        kind: KindArg,
        #[arg(long, default_value_t = 1e-10)]
        quad_tol: f64,
    },
    /// Tabulate f_sigma, g_Delta, m_Delta and their Fourier transforms.
    Fourier {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        delta: f64,
        /// Points for f, g, m.
        #[arg(long)]
        x: Option<String>,
        /// Frequencies for the transforms.
        #[arg(long)]
        xi: Option<String>,
    },
    /// The zero-sum identity for log|L(sigma+it)| against its remainder interval.
    Compare {
        #[arg(long, default_value = "zeta")]
        descriptor: String,
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: String,
    },
}

/// Parse `a,b,c` or `lo:hi:count` (inclusive, evenly spaced).
fn parse_grid(s: &str) -> Result<Vec<f64>, Error> {
    let bad = |m: String| Error::Domain(format!("grid '{s}': {m}"));
    let v: Vec<f64> = if s.contains(':') {
        let p: Vec<&str> = s.split(':').collect();
        if p.len() != 3 {
            return Err(bad("expected lo:hi:count".into()));
        }
        let lo: f64 = p[0].trim().parse().map_err(|e| bad(format!("{e}")))?;
        let hi: f64 = p[1].trim().parse().map_err(|e| bad(format!("{e}")))?;
        let n: usize = p[2].trim().parse().map_err(|e| bad(format!("{e}")))?;
        match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
        }
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|e| bad(format!("{e}")))).collect::<Result<_, _>>()?
    };
    if v.is_empty() {
        return Err(bad("empty grid".into()));
    }
    Ok(v)
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Error> {
    fmt17::to_writer(&mut *out, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out).map_err(|e| Error::Io(e.to_string()))
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

fn num(v: f64) -> String {
    fmt17::format_f64(v)
}

struct BoundArgs {
    theorem: Theorem,
    alpha: Option<f64>,
    eps: f64,
    envelope_constant: f64,
    profile: Option<ConjectureProfile>,
}

fn one_bound(desc: &SelbergDescriptor, sigma: f64, h: &Height, a: &BoundArgs) -> Result<BoundReport, Error> {
    let asym = |which| {
        let opts = AsymptoticOptions {
            alpha: a.alpha.unwrap_or(1.0),
            envelope_constant: a.envelope_constant,
            profile: a.profile.clone(),
        };
        asymptotic_bound(desc, sigma, h, which, &opts)
    };
    let comb = |side| {
        let mode = match &a.profile {
            Some(p) if p.mode == ConjectureMode::Conj1 => SumMode::Conj1,
            Some(p) if p.mode == ConjectureMode::Conj2 => SumMode::Conj2,
            _ => SumMode::Poly,
        };
        let opts = CombinedOptions {
            alpha: a.alpha,
            mode,
            profile: a.profile.clone(),
            envelope_constant: a.envelope_constant,
            ..CombinedOptions::default()
        };
        combined_bound(desc, sigma, h, side, &opts)
    };
    match a.theorem {
        Theorem::GeneralUpper => asym(Asymptotic::GeneralUpper { eps: a.eps }),
        Theorem::GeneralLower => asym(Asymptotic::GeneralLower { eps: a.eps }),
        Theorem::ConjUpper => asym(Asymptotic::ConjUpper),
        Theorem::ConjLower => asym(Asymptotic::ConjLower),
        Theorem::PolyUpper => asym(Asymptotic::PolyUpper),
        Theorem::PolyLower => asym(Asymptotic::PolyLower),
        Theorem::ExplicitUpper => explicit_upper(desc, sigma, h, a.alpha),
        Theorem::ExplicitLower => explicit_lower(desc, sigma, h, a.alpha),
        Theorem::CombinedUpper => comb(Side::Upper),
        Theorem::CombinedLower => comb(Side::Lower),
    }
}

/// Outcome of a subcommand: whether every report was valid.
type Run = Result<bool, Error>;

fn run(cli: Cli) -> Run {
    let mut out = sink(&cli.output).map_err(|e| Error::Io(e.to_string()))?;
    let out = out.as_mut();
    let fmt = cli.format;
    let all_ok = match cli.command {
        Command::Bound { theorem, descriptor, sigma, t, loglogtau, alpha, eps, envelope_constant, conjecture, cp1, cp2 } => {
            let desc = load_descriptor(&descriptor)?;
            let sigmas = parse_grid(&sigma)?;
            let ts = parse_grid(&t)?;
            let lls = loglogtau.as_deref().map(parse_grid).transpose()?;
            let profile = conjecture.map(|c| {
                let mode = match c {
                    ConjArg::Conj1 => ConjectureMode::Conj1,
                    ConjArg::Conj2 => ConjectureMode::Conj2,
                };
                ConjectureProfile::constant(mode, cp1, cp2)
            });
            let args = BoundArgs { theorem, alpha, eps, envelope_constant, profile };
            let mut heights = Vec::new();
            for &tv in &ts {
                match &lls {
                    Some(l) => {
                        for &ll in l {
                            heights.push(Height::synthetic(tv, ll)?);
                        }
                    }
                    None => heights.push(Height::from_t(&desc, tv)?),
                }
            }
            let points: Vec<(f64, Height)> =
                sigmas.iter().flat_map(|&s| heights.iter().map(move |h| (s, *h))).collect();
            let reports = points
                .par_iter()
                .map(|(s, h)| one_bound(&desc, *s, h, &args))
                .collect::<Result<Vec<_>, _>>()?;
            match fmt {
                Format::Json => write_json(out, &reports)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.theorem.clone(),
                                r.case.clone(),
                                num(r.sigma),
                                num(r.height.t),
                                num(r.height.log_tau),
                                r.valid.to_string(),
                                num(r.main_term),
                                num(r.total_exact),
                                num(r.envelopes_total),
                                num(r.total()),
                            ]
                        })
                        .collect();
                    write_csv(
                        out,
                        &["theorem", "case", "sigma", "t", "log_tau", "valid", "main_term", "total_exact", "envelopes_total", "total"],
                        &rows,
                    )?
                }
            }
            reports.iter().all(|r| r.valid)
        }
        Command::VerifyConstants { lemma } => {
            let lemmas: Vec<Lemma> =
                if lemma.eq_ignore_ascii_case("all") { Lemma::ALL.to_vec() } else { vec![Lemma::parse(&lemma)?] };
            let reports: Vec<_> = lemmas.par_iter().map(|&l| verify_constant(l)).collect();
            match fmt {
                Format::Json => write_json(out, &reports)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = reports
                        .iter()
                        .flat_map(|r| r.regions.iter())
                        .map(|g| {
                            vec![
                                g.lemma.to_string(),
                                g.region.clone(),
                                num(g.recomputed_max),
                                num(g.arg_max),
                                num(g.tail_bound),
                                num(g.total),
                                num(g.constant),
                                g.pass.to_string(),
                            ]
                        })
                        .collect();
                    write_csv(out, &["lemma", "region", "max", "arg_max", "tail", "total", "constant", "pass"], &rows)?
                }
            }
            reports.iter().all(|r| r.pass)
        }
        Command::ExplicitFormula { descriptor, zeros, sigma, delta, t, kind, quad_tol } => {
            let desc = load_descriptor(&descriptor)?;
            let zs = load_zeros(&zeros)?;
            let ctx = ExtremalContext::new(sigma, delta)?;
            let ts = parse_grid(&t)?;
            let rows = ts
                .par_iter()
                .map(|&tv| guinand_weil_balance(&desc, &ctx, &zs, kind.into(), tv, quad_tol).map(|b| (tv, b)))
                .collect::<Result<Vec<_>, _>>()?;
            match fmt {
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|(tv, b)| serde_json::json!({ "t": tv, "balance": b })).collect();
                    write_json(out, &v)?
                }
                Format::Csv => {
                    let r: Vec<Vec<String>> = rows
                        .iter()
                        .map(|(tv, b)| {
                            vec![
                                num(*tv),
                                num(b.zero_side.value),
                                num(b.rhs.rhs),
                                num(b.residual),
                                num(b.tolerance),
                                b.balanced.to_string(),
                            ]
                        })
                        .collect();
                    write_csv(out, &["t", "zero_side", "rhs", "residual", "tolerance", "balanced"], &r)?
                }
            }
            rows.iter().all(|(_, b)| b.balanced)
        }
        Command::Fourier { sigma, delta, x, xi } => {
            let ctx = ExtremalContext::new(sigma, delta)?;
            let xs = x.as_deref().map(parse_grid).transpose()?.unwrap_or_default();
            let xis = xi.as_deref().map(parse_grid).transpose()?.unwrap_or_default();
            if xs.is_empty() && xis.is_empty() {
                return Err(Error::Domain("fourier needs --x and/or --xi".into()));
            }
            let space: Vec<[f64; 5]> = xs
                .par_iter()
                .map(|&v| {
                    let g = ctx.g_delta_real(v);
                    let m = ctx.m_delta_real(v);
                    [v, ctx.f(v), g.value, m.value, g.tail_bound.max(m.tail_bound)]
                })
                .collect();
            let freq: Vec<[f64; 4]> = xis
                .par_iter()
                .map(|&v| {
                    let g = ctx.ghat(v);
                    let m = ctx.mhat(v);
                    [v, g.value, m.value, g.tail_bound.max(m.tail_bound)]
                })
                .collect();
            match fmt {
                Format::Json => {
                    let v = serde_json::json!({
                        "sigma": sigma,
                        "delta": delta,
                        "space": space.iter().map(|r| serde_json::json!({"x": r[0], "f": r[1], "g": r[2], "m": r[3], "tail": r[4]})).collect::<Vec<_>>(),
                        "frequency": freq.iter().map(|r| serde_json::json!({"xi": r[0], "ghat": r[1], "mhat": r[2], "tail": r[3]})).collect::<Vec<_>>(),
                    });
                    write_json(out, &v)?
                }
                Format::Csv => {
                    let mut rows: Vec<Vec<String>> = Vec::new();
                    for r in &space {
                        rows.push(vec!["space".into(), num(r[0]), num(r[1]), num(r[2]), num(r[3]), num(r[4])]);
                    }
                    for r in &freq {
                        rows.push(vec!["frequency".into(), num(r[0]), String::new(), num(r[1]), num(r[2]), num(r[3])]);
                    }
                    write_csv(out, &["domain", "point", "f", "minorant", "majorant", "tail"], &rows)?
                }
            }
            true
        }
        Command::Compare { descriptor, zeros, sigma, t } => {
            let desc = load_descriptor(&descriptor)?;
            let zs = load_zeros(&zeros)?;
            let ts = parse_grid(&t)?;
            let reps = ts
                .par_iter()
                .map(|&tv| log_modulus_identity(&desc, sigma, tv, &zs))
                .collect::<Result<Vec<_>, _>>()?;
            match fmt {
                Format::Json => write_json(out, &reps)?,
                Format::Csv => {
                    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
                    let rows: Vec<Vec<String>> = reps
                        .iter()
                        .map(|r| {
                            vec![
                                num(r.sigma),
                                num(r.t),
                                opt(r.residual),
                                num(r.interval.l_down),
                                num(r.interval.l_up),
                                num(r.t_trunc),
                                r.inside.map(|b| b.to_string()).unwrap_or_default(),
                            ]
                        })
                        .collect();
                    write_csv(out, &["sigma", "t", "residual", "l_down", "l_up", "t_trunc", "inside"], &rows)?
                }
            }
            reps.iter().all(|r| r.inside.unwrap_or(false))
        }
    };
    out.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(all_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("LBOUND_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("lbound: could not size the thread pool: {e}");
                }
            }
            _ => eprintln!("lbound: ignoring LBOUND_THREADS={n:?}"),
        }
    }
    let allow_invalid = cli.allow_invalid;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) if allow_invalid => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("lbound: at least one report is invalid or failed its check (use --allow-invalid to accept)");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("lbound: {e}");
            ExitCode::FAILURE
        }
    }
}
