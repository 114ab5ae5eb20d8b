use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codebounds::bounds::{self, format_significant};
use codebounds::cyclic::{
    bch_certificate, build_code, theorem_distance, BchCertificate, SpecSummary,
};
use codebounds::distance::{distance_report, weight_distribution, Budget, GeneratorMatrix};
use codebounds::error::{Error, ErrorClass, Result};
use codebounds::fourier::{covering_replay, verify_identities};
use codebounds::spectrum::{eigen_report, SpectrumMode, DEFAULT_DIGITS};
use serde::Serialize;

/// Directory that relative `--out` paths are resolved against.
const OUT_DIR_ENV: &str = "CODEBOUNDS_OUT_DIR";

/// The `(n, d)` pairs tabulated when `table` gets no `--pair`.
const DEFAULT_PAIRS: [(u64, u64); 3] = [(15, 6), (63, 16), (63, 24)];

#[derive(Parser)]
#[command(
    name = "codebounds",
    version,
    about = "Cyclic codes, Hamming-ball spectra and bounds on A(n, d)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text or CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel stages (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cyclic code for (m, c) and certify its designed distance.
    Construct {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        c: u32,
    },
    /// Enumerate the code for (m, c) and report its minimum distance.
    Distance {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        c: u32,
        /// Refuse to enumerate codes of larger dimension.
        #[arg(long, default_value_t = Budget::MIN_DISTANCE_DEFAULT)]
        max_dimension: u32,
        /// Also print the weight distribution.
        #[arg(long)]
        weights: bool,
    },
    /// Top eigenvalue of the Hamming ball of radius r.
    Eigen {
        #[arg(long)]
        r: u32,
        #[arg(
            long,
            required_unless_present = "asymptotic",
            conflicts_with = "asymptotic"
        )]
        n: Option<u64>,
        /// The n -> infinity constant t_r with lambda ~ t_r sqrt(n).
        #[arg(long)]
        asymptotic: bool,
        /// Significant digits kept in the certifying eigenvector.
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
    },
    /// Evaluate bounds at one (n, d), a relative distance, a sqrt(n) regime, or Reed-Muller references.
    Bounds(BoundsArgs),
    /// Bound table for several (n, d) as versioned CSV.
    Table {
        /// An `n:d` pair; repeatable. Defaults to 15:6, 63:16 and 63:24.
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(u64, u64)>,
    },
    /// Check the Fourier identities exactly on seeded random functions.
    FourierVerify {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay the covering argument on a concrete code.
    Replay {
        #[arg(long)]
        r: u32,
        /// Use the cyclic code for `m,c`.
        #[arg(long, value_parser = parse_pair, conflicts_with_all = ["n", "code"])]
        cyclic: Option<(u64, u64)>,
        #[arg(long, requires = "code")]
        n: Option<u32>,
        /// Codewords as binary strings, most significant bit first.
        #[arg(long, value_delimiter = ',')]
        code: Vec<String>,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, requires = "d", conflicts_with_all = ["delta", "regime", "rm"])]
    n: Option<u64>,
    #[arg(long, requires = "n")]
    d: Option<u64>,
    /// Rate bounds at relative distance delta.
    #[arg(long, conflicts_with_all = ["regime", "rm"])]
    delta: Option<f64>,
    /// Regime d = n/2 - a sqrt(n); needs --n-list.
    #[arg(long, requires = "n_list", conflicts_with = "rm")]
    regime: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<u64>,
    /// Reed-Muller reference rows at length 2^m.
    #[arg(long)]
    rm: Option<u32>,
}

fn parse_pair(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s
        .split_once([':', ','])
        .ok_or_else(|| format!("expected `a:b`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn sig(x: f64) -> String {
    format_significant(x, 12)
}

#[derive(Serialize)]
struct ConstructOutput {
    #[serde(flatten)]
    summary: SpecSummary,
    theorem_distance: u64,
    bch: BchCertificate,
}

fn construct(m: u32, c: u32, as_json: bool) -> Result<String> {
    let spec = build_code(m, c)?;
    let out = ConstructOutput {
        summary: spec.summary(),
        theorem_distance: theorem_distance(m, c),
        bch: bch_certificate(&spec)?,
    };
    if as_json {
        return Ok(json(&out));
    }
    let s = &out.summary;
    Ok(format!(
        "m = {}\nc = {}\nn = {}\nk = {}\ngenerator = {}\ndesigned_distance = {}\ntheorem_distance = {}\nbch_best_distance = {}\n",
        s.m, s.c, s.n, s.k, s.generator_hex, s.designed_distance, out.theorem_distance, out.bch.best_distance
    ))
}

#[derive(Serialize)]
struct DistanceOutput {
    #[serde(flatten)]
    report: codebounds::distance::DistanceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<u64>>,
}

fn distance(
    m: u32,
    c: u32,
    max_dimension: u32,
    weights: bool,
    workers: usize,
    as_json: bool,
) -> Result<String> {
    let spec = build_code(m, c)?;
    let budget = Budget {
        max_dimension,
        workers,
    };
    let report = distance_report(&spec, &budget)?;
    let weights = if weights {
        Some(weight_distribution(&GeneratorMatrix::from_spec(&spec), &budget)?.counts)
    } else {
        None
    };
    let out = DistanceOutput { report, weights };
    if as_json {
        return Ok(json(&out));
    }
    let r = &out.report;
    let mut s = format!(
        "n = {}\nk = {}\nd_min = {}\ndesigned_distance = {}\nmeets_design = {}\n",
        r.n, r.k, r.d_min, r.designed_distance, r.meets_design
    );
    if let Some(w) = &out.weights {
        for (i, count) in w.iter().enumerate().filter(|(_, c)| **c > 0) {
            writeln!(s, "A_{i} = {count}").unwrap();
        }
    }
    Ok(s)
}

fn eigen(r: u32, n: Option<u64>, digits: u32, as_json: bool) -> Result<String> {
    let mode = n.map_or(SpectrumMode::Asymptotic, SpectrumMode::Finite);
    let report = eigen_report(mode, r, digits)?;
    if as_json {
        return Ok(json(&report));
    }
    let mut s = format!("lambda = {}\n", sig(report.lambda_float));
    if let (Some(num), Some(den)) = (&report.lambda_certified_num, &report.lambda_certified_den) {
        writeln!(s, "certified_lower = {num}/{den}").unwrap();
    }
    Ok(s)
}

fn bounds_command(args: &BoundsArgs, as_json: bool) -> Result<String> {
    if let (Some(n), Some(d)) = (args.n, args.d) {
        let rows = bounds::bound_table(n, d)?;
        return Ok(if as_json {
            bounds::to_json(&rows)
        } else {
            bounds::to_csv(&rows)
        });
    }
    if let Some(delta) = args.delta {
        let b = bounds::rate_bounds(delta)?;
        if as_json {
            return Ok(json(&b));
        }
        return Ok(format!(
            "delta = {}\neb = {}\nmrrw1 = {}\nmrrw2 = {}\nmrrw2_argmin = {}\n",
            sig(b.delta),
            sig(b.eb),
            sig(b.mrrw1),
            sig(b.mrrw2),
            sig(b.mrrw2_argmin)
        ));
    }
    if let Some(a) = args.regime {
        let rows = bounds::regime_table(a, &args.n_list)?;
        if as_json {
            return Ok(json(&rows));
        }
        return Ok(bounds::regime_to_csv(&rows));
    }
    if let Some(m) = args.rm {
        let rows = bounds::rm_reference(m)?;
        if as_json {
            return Ok(json(&rows));
        }
        let mut s = String::from("code,n,k,d\n");
        for r in &rows {
            writeln!(s, "{},{},{},{}", r.label, r.n, r.k, r.d).unwrap();
        }
        return Ok(s);
    }
    Err(Error::InvalidParameters(
        "bounds needs --n/--d, --delta, --regime/--n-list or --rm".into(),
    ))
}

fn table_command(pairs: &[(u64, u64)], workers: usize, as_json: bool) -> Result<String> {
    let pairs = if pairs.is_empty() {
        &DEFAULT_PAIRS[..]
    } else {
        pairs
    };
    let rows = bounds::table(pairs, workers)?;
    Ok(if as_json {
        bounds::to_json(&rows)
    } else {
        bounds::to_csv(&rows)
    })
}

fn fourier_verify(
    n_min: u32,
    n_max: u32,
    trials: usize,
    seed: u64,
    as_json: bool,
) -> Result<(String, bool)> {
    if n_min > n_max {
        return Err(Error::InvalidParameters(format!(
            "n-min {n_min} exceeds n-max {n_max}"
        )));
    }
    let reports = (n_min..=n_max)
        .map(|n| verify_identities(n, trials, seed))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.all_pass());
    if as_json {
        return Ok((json(&reports), ok));
    }
    let mark = |b: bool| if b { "ok" } else { "FAIL" };
    let mut s = String::new();
    for r in &reports {
        writeln!(
            s,
            "n = {:2}  double_transform {}  expectation {}  parseval {}  convolution_adjoint {}  kernel_spectrum {}  adjacency {}",
            r.n,
            mark(r.double_transform),
            mark(r.expectation),
            mark(r.parseval),
            mark(r.convolution_adjoint),
            mark(r.kernel_spectrum),
            mark(r.adjacency)
        )
        .unwrap();
    }
    Ok((s, ok))
}

fn parse_words(code: &[String]) -> Result<Vec<u32>> {
    code.iter()
        .map(|w| {
            u32::from_str_radix(w.trim(), 2).map_err(|e| {
                Error::InvalidParameters(format!("codeword `{w}` is not a binary string: {e}"))
            })
        })
        .collect()
}

fn replay(
    r: u32,
    cyclic: Option<(u64, u64)>,
    n: Option<u32>,
    code: &[String],
    as_json: bool,
) -> Result<String> {
    let (n, words) = match cyclic {
        Some((m, c)) => {
            let spec = build_code(m as u32, c as u32)?;
            let words = spec
                .codeword_masks()?
                .into_iter()
                .map(|w| w as u32)
                .collect();
            (spec.n as u32, words)
        }
        None => {
            let words = parse_words(code)?;
            let n = match n {
                Some(n) => n,
                None => code
                    .iter()
                    .map(|w| w.trim().len() as u32)
                    .max()
                    .unwrap_or(0),
            };
            (n, words)
        }
    };
    let report = covering_replay(n, &words, r)?;
    if as_json {
        return Ok(json(&report));
    }
    let mut s = format!(
        "n = {}\nr = {}\nd = {}\nsize = {}\nlambda = {}\nbound = {}\n",
        report.n,
        report.r,
        report.d,
        report.size,
        sig(report.lambda),
        sig(report.bound)
    );
    for st in &report.steps {
        writeln!(
            s,
            "{:<28} {:>2}  lhs = {:<20} rhs = {:<20} {}",
            st.name,
            st.relation,
            sig(st.lhs),
            sig(st.rhs),
            if st.pass { "ok" } else { "FAIL" }
        )
        .unwrap();
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let j = cli.json;
    let text = match &cli.command {
        Command::Construct { m, c } => construct(*m, *c, j)?,
        Command::Distance {
            m,
            c,
            max_dimension,
            weights,
        } => distance(*m, *c, *max_dimension, *weights, cli.workers, j)?,
        Command::Eigen { r, n, digits, .. } => eigen(*r, *n, *digits, j)?,
        Command::Bounds(args) => bounds_command(args, j)?,
        Command::Table { pairs } => table_command(pairs, cli.workers, j)?,
        Command::FourierVerify {
            n_min,
            n_max,
            trials,
            seed,
        } => return fourier_verify(*n_min, *n_max, *trials, *seed, j),
        Command::Replay { r, cyclic, n, code } => replay(*r, *cyclic, *n, code, j)?,
    };
    Ok((text, true))
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let path = match std::env::var_os(OUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::InvalidParameters => 2,
        ErrorClass::NotApplicable => 3,
        ErrorClass::BudgetExceeded => 4,
        ErrorClass::Internal => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let msg = msg.trim_start_matches("error: ").trim_end();
            eprintln!("error[invalid-arguments]: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            if let Err(e) = emit(&text, cli.out.as_ref()) {
                eprintln!("error[io]: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error[verification-failed]: at least one identity did not hold");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.tag());
            ExitCode::from(exit_code(&e))
        }
    }
}
