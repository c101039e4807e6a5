//! `merit`: batch front end for constructing arrays, measuring merit
//! factors, rotation sweeps, convergence studies, exhaustive search and
//! identity verification.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use merit_core::arrays::{legendre_array, legendre_sequence, qr_array};
use merit_core::correlation::{autocorrelation, merit_factor};
use merit_core::finite_field::make_ext_field;
use merit_core::identities::{run_suite, Suite};
use merit_core::search::{
    convergence_csv, convergence_study, exhaustive_best_merit, fmt_sig12, mean_inverse_merit, rotation_sweep,
    ConvergenceConfig, MeanMode, Member,
};
use merit_core::{EngineChoice, Error, ExtFieldSpec, Family, PrimeModulus, Rotation, SignPattern, TernaryArray};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNDEFINED: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

/// Decimal rotations are snapped to this denominator.
const DECIMAL_DENOMINATOR: i64 = 1_000_000;

#[derive(Parser, Debug, Serialize)]
#[command(name = "merit", version, about = "Merit factors of quadratic-character arrays")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker thread cap (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Csv,
    Json,
    ArrayText,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum EngineArg {
    Auto,
    Direct,
    Spectral,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => EngineChoice::Auto,
            EngineArg::Direct => EngineChoice::Direct,
            EngineArg::Spectral => EngineChoice::Spectral,
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
enum Command {
    /// Build a family member and write it in array text format.
    Construct(ConstructArgs),
    /// Merit factor of an array file, as JSON.
    Merit(MeritArgs),
    /// Measured and predicted merit over a rotation grid.
    Sweep(SweepArgs),
    /// Finite-p residuals against the asymptotic prediction.
    Converge(ConvergeArgs),
    /// Exhaustive optimum (or mean of 1/F) over small binary arrays.
    Search(SearchArgs),
    /// Numerical identity checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct MemberArgs {
    /// Sign pattern for Legendre arrays: calabro-wolf, all-plus, random or code:<n>.
    #[arg(long, default_value = "calabro-wolf")]
    pattern: PatternArg,
    /// Field basis for quadratic-residue arrays: standard or random.
    #[arg(long, default_value = "standard")]
    basis: BasisArg,
    /// Corner value of quadratic-residue arrays.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    y00: SignArg,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long)]
    family: FamilyArg,
    #[arg(long)]
    p: u64,
    /// Second prime for Legendre arrays (defaults to p).
    #[arg(long)]
    q: Option<u64>,
    /// Zero instead of +1 at index 0 of a Legendre sequence.
    #[arg(long)]
    ternary: bool,
    #[command(flatten)]
    member: MemberArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    s: RatArg,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: RatArg,
}

#[derive(Args, Debug, Serialize)]
struct MeritArgs {
    /// Array text file.
    input: PathBuf,
    /// Also write the correlation table here.
    #[arg(long)]
    spectrum: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct SweepArgs {
    #[arg(long)]
    family: FamilyArg,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 64)]
    grid: i64,
    #[command(flatten)]
    member: MemberArgs,
    /// Long-format CSV (s,t,series,F) for contour plotting.
    #[arg(long)]
    plot_data: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct ConvergeArgs {
    #[arg(long)]
    family: FamilyArg,
    /// Comma-separated odd primes.
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
    /// Comma-separated second primes for Legendre arrays (defaults to --primes).
    #[arg(long, value_delimiter = ',')]
    qs: Option<Vec<u64>>,
    #[arg(long, default_value = "1/4", allow_hyphen_values = true)]
    s: RatArg,
    #[arg(long, default_value = "1/4", allow_hyphen_values = true)]
    t: RatArg,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    y00: SignArg,
}

#[derive(Args, Debug, Serialize)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Report the mean of 1/F instead of the optimum.
    #[arg(long)]
    mean: bool,
    /// Monte-Carlo draws for --mean (exhaustive when absent).
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// all, gauss, omega, gamma, expsum, lagrange or interp.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 13)]
    pmax: u32,
}

// ---------------------------------------------------------------------------
// argument value types

#[derive(Clone, Copy, Debug)]
struct FamilyArg(Family);

impl FromStr for FamilyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse::<Family>().map(FamilyArg).map_err(|e| e.to_string())
    }
}

impl Serialize for FamilyArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.0.name())
    }
}

/// A rotation coordinate; decimals are snapped to a 10⁻⁶ grid.
#[derive(Clone, Copy, Debug)]
struct RatArg {
    value: Ratio<i64>,
    snapped_from: Option<f64>,
}

impl FromStr for RatArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let d: i64 = d.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if d == 0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            return Ok(RatArg { value: Ratio::new(n, d), snapped_from: None });
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(RatArg { value: Ratio::from_integer(n), snapped_from: None });
        }
        let x: f64 = s.parse().map_err(|_| format!("`{s}` is neither a fraction nor a decimal"))?;
        if !x.is_finite() || x.abs() > 1e6 {
            return Err(format!("rotation `{s}` out of range"));
        }
        let value = Ratio::new((x * DECIMAL_DENOMINATOR as f64).round() as i64, DECIMAL_DENOMINATOR);
        Ok(RatArg { value, snapped_from: Some(x) })
    }
}

impl fmt::Display for RatArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value.numer(), self.value.denom())
    }
}

impl Serialize for RatArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug)]
struct SignArg(i8);

impl FromStr for SignArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(SignArg(1)),
            "-1" | "-" => Ok(SignArg(-1)),
            other => Err(format!("expected +1 or -1, got `{other}`")),
        }
    }
}

impl Serialize for SignArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.0)
    }
}

#[derive(Clone, Copy, Debug)]
enum PatternArg {
    CalabroWolf,
    AllPlus,
    Random,
    Code(u64),
}

impl FromStr for PatternArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "calabro-wolf" => Ok(PatternArg::CalabroWolf),
            "all-plus" => Ok(PatternArg::AllPlus),
            "random" => Ok(PatternArg::Random),
            _ => match s.strip_prefix("code:") {
                Some(c) => c.parse().map(PatternArg::Code).map_err(|_| format!("bad pattern code `{c}`")),
                None => Err(format!("unknown pattern `{s}`")),
            },
        }
    }
}

impl Serialize for PatternArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PatternArg::CalabroWolf => s.serialize_str("calabro-wolf"),
            PatternArg::AllPlus => s.serialize_str("all-plus"),
            PatternArg::Random => s.serialize_str("random"),
            PatternArg::Code(c) => s.serialize_str(&format!("code:{c}")),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum BasisArg {
    Standard,
    Random,
}

impl FromStr for BasisArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(BasisArg::Standard),
            "random" => Ok(BasisArg::Random),
            other => Err(format!("unknown basis `{other}`")),
        }
    }
}

// ---------------------------------------------------------------------------
// failures

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Core(Error::UndefinedMerit) => EXIT_UNDEFINED,
            Failure::Core(Error::Numerical(_)) => EXIT_NUMERICAL,
            Failure::Core(_) => EXIT_INPUT,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Input(msg) => f.write_str(msg),
            Failure::Verify(n) => write!(f, "{n} identity check(s) failed"),
        }
    }
}

type Outcome = Result<(), Failure>;

// ---------------------------------------------------------------------------
// helpers

fn prime(p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

fn resolve_format(given: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = given.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Input(format!("format {f:?} is not available for this subcommand")))
    }
}

fn emit(global: &Global, text: &str) -> Outcome {
    match &global.out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn member(family: Family, p: u64, q: u64, args: &MemberArgs, seed: u64) -> Result<Member, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match family {
        Family::QrArray => {
            let pm = prime(p)?;
            let spec = match args.basis {
                BasisArg::Standard => make_ext_field(pm),
                BasisArg::Random => ExtFieldSpec::random_basis(pm, &mut rng),
            };
            Member::Basis { spec, y00: args.y00.0 }
        }
        _ => {
            let (p, q) = (p as usize, q as usize);
            Member::Pattern(match args.pattern {
                PatternArg::CalabroWolf => SignPattern::calabro_wolf(p, q),
                PatternArg::AllPlus => SignPattern::all_plus(p, q),
                PatternArg::Random => SignPattern::random(p, q, &mut rng),
                PatternArg::Code(c) => {
                    if p + q - 1 > 64 || (p + q - 1 < 64 && c >> (p + q - 1) != 0) {
                        return Err(Failure::Input(format!("pattern code {c} needs more than p+q-1 bits")));
                    }
                    SignPattern::from_code(p, q, c)
                }
            })
        }
    })
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_construct(g: &Global, a: &ConstructArgs) -> Outcome {
    let format = resolve_format(g.format, Format::ArrayText, &[Format::ArrayText, Format::Json])?;
    let family = a.family.0;
    let q = a.q.unwrap_or(a.p);
    let base = match family {
        Family::LegendreSeq | Family::TernaryLegendreSeq => {
            legendre_sequence(prime(a.p)?, a.ternary || family == Family::TernaryLegendreSeq)
        }
        Family::LegendreArray => {
            let (pm, qm) = (prime(a.p)?, prime(q)?);
            match member(family, a.p, q, &a.member, g.seed)? {
                Member::Pattern(v) => legendre_array(pm, qm, &v)?,
                Member::Basis { .. } => unreachable!("legendre arrays take a pattern"),
            }
        }
        Family::QrArray => {
            if q != a.p {
                return Err(Failure::Input(format!("quadratic-residue arrays are square, got p={} q={q}", a.p)));
            }
            match member(family, a.p, q, &a.member, g.seed)? {
                Member::Basis { spec, y00 } => qr_array(prime(a.p)?, &spec, y00)?,
                Member::Pattern(_) => unreachable!("qr arrays take a basis"),
            }
        }
    };
    let rot = if family.is_sequence() { Rotation::seq(a.s.value) } else { Rotation::new(a.s.value, a.t.value) };
    let array = base.rotate(rot);
    eprintln!("n={} m={} nonzeros={}", array.rows(), array.cols(), array.nonzero_count());
    let text = match format {
        Format::Json => {
            let rows: Vec<&[i8]> = array.cells().chunks(array.cols()).collect();
            serde_json::to_string(&json!({ "n": array.rows(), "m": array.cols(), "cells": rows })).unwrap() + "\n"
        }
        _ => array.to_text(),
    };
    emit(g, &text)
}

fn cmd_merit(g: &Global, a: &MeritArgs) -> Outcome {
    resolve_format(g.format, Format::Json, &[Format::Json])?;
    let text = fs::read_to_string(&a.input)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", a.input.display())))?;
    let array = TernaryArray::parse_text(&text)?;
    let report = merit_factor(&array, g.engine.into())?;
    if let Some(path) = &a.spectrum {
        write_file(path, &autocorrelation(&array, report.engine)?.to_text())?;
    }
    emit(g, &(report.to_json() + "\n"))
}

fn cmd_sweep(g: &Global, a: &SweepArgs) -> Outcome {
    let format = resolve_format(g.format, Format::Csv, &[Format::Csv, Format::Json])?;
    let family = a.family.0;
    let q = a.q.unwrap_or(a.p);
    let m = member(family, a.p, q, &a.member, g.seed)?;
    let result = rotation_sweep(family, a.p, q, a.grid, &m)?;
    if let Some(path) = &a.plot_data {
        write_file(path, &result.to_plot_csv())?;
    }
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = result
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "s": format!("{}/{}", r.s.numer(), r.s.denom()),
                        "t": format!("{}/{}", r.t.numer(), r.t.denom()),
                        "F_measured": r.f_measured,
                        "F_predicted": *r.f_predicted.numer() as f64 / *r.f_predicted.denom() as f64,
                    })
                })
                .collect();
            serde_json::to_string(&json!({
                "family": family.name(), "p": a.p, "q": q, "grid": a.grid, "rows": rows
            }))
            .unwrap()
                + "\n"
        }
        _ => result.to_csv(),
    };
    emit(g, &text)
}

fn cmd_converge(g: &Global, a: &ConvergeArgs) -> Outcome {
    let format = resolve_format(g.format, Format::Csv, &[Format::Csv, Format::Json])?;
    let qs = a.qs.clone().unwrap_or_else(|| a.primes.clone());
    if qs.len() != a.primes.len() {
        return Err(Failure::Input(format!("--qs has {} entries but --primes has {}", qs.len(), a.primes.len())));
    }
    if a.primes.windows(2).any(|w| w[1] < w[0]) {
        return Err(Failure::Input("--primes must be increasing".into()));
    }
    let cfg = ConvergenceConfig {
        family: a.family.0,
        primes: a.primes.iter().copied().zip(qs).collect(),
        rotation: Rotation::new(a.s.value, a.t.value),
        trials: a.trials,
        seed: g.seed,
        y00: a.y00.0,
    };
    let rows = convergence_study(&cfg)?;
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "p": r.p, "q": r.q,
                        "s": r.rotation.s().to_string(), "t": r.rotation.t().to_string(),
                        "inv_merit_measured": r.measured_f64(),
                        "inv_merit_predicted": r.predicted_f64(),
                        "residual": r.residual,
                        "trial_seed": r.trial_seed,
                    })
                })
                .collect();
            serde_json::to_string(&rows).unwrap() + "\n"
        }
        _ => convergence_csv(&rows),
    };
    emit(g, &text)
}

fn cmd_search(g: &Global, a: &SearchArgs) -> Outcome {
    let format = resolve_format(g.format, Format::Text, &[Format::Text, Format::Json, Format::ArrayText])?;
    if a.mean {
        if format == Format::ArrayText {
            return Err(Failure::Input("--mean has no array to print".into()));
        }
        let mode = match a.samples {
            Some(count) => MeanMode::Sampled { seed: g.seed, count },
            None => MeanMode::Exhaustive,
        };
        let r = mean_inverse_merit(a.n, a.m, mode)?;
        let exact = r.exact.map(|e| format!("{}/{}", e.numer(), e.denom()));
        let text = match format {
            Format::Json => {
                serde_json::to_string(&json!({
                    "n": a.n, "m": a.m, "mean": r.mean, "exact": exact,
                    "std_error": r.std_error, "samples": r.samples,
                }))
                .unwrap()
                    + "\n"
            }
            _ => match (exact, r.std_error) {
                (Some(e), _) => format!("mean 1/F over {}x{} = {e} ≈ {}\n", a.n, a.m, fmt_sig12(r.mean)),
                (None, se) => format!(
                    "mean 1/F over {}x{} ≈ {} ± {} ({} draws)\n",
                    a.n,
                    a.m,
                    fmt_sig12(r.mean),
                    fmt_sig12(se.unwrap_or(0.0)),
                    r.samples
                ),
            },
        };
        return emit(g, &text);
    }
    if a.samples.is_some() {
        return Err(Failure::Input("--samples only applies with --mean".into()));
    }
    let r = exhaustive_best_merit(a.n, a.m)?;
    let (num, den) = (*r.merit.numer(), *r.merit.denom());
    let float = num as f64 / den as f64;
    let text = match format {
        Format::Json => {
            let rows: Vec<&[i8]> = r.witness.cells().chunks(a.m).collect();
            serde_json::to_string(&json!({
                "n": a.n, "m": a.m, "merit_num": num, "merit_den": den, "merit_float": float,
                "energy": r.sidelobe_energy, "witness": rows, "visited": r.visited,
            }))
            .unwrap()
                + "\n"
        }
        Format::ArrayText => r.witness.to_text(),
        _ => format!("F_{{{},{}}} = {num}/{den} ≈ {}\n{}", a.n, a.m, fmt_sig12(float), r.witness.to_text()),
    };
    emit(g, &text)
}

fn cmd_verify(g: &Global, a: &VerifyArgs) -> Outcome {
    let format = resolve_format(g.format, Format::Text, &[Format::Text, Format::Json])?;
    let suite: Suite = a.suite.parse()?;
    if a.pmax < 3 {
        return Err(Failure::Input(format!("--pmax must be at least 3, got {}", a.pmax)));
    }
    let reports = run_suite(suite, a.pmax, g.seed);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "check": r.check, "p": r.p, "passed": r.passed(),
                        "max_err": r.max_err, "failures": r.failures,
                    })
                })
                .collect();
            serde_json::to_string(&rows).unwrap() + "\n"
        }
        _ => {
            let mut out: String = reports.iter().map(|r| format!("{r}\n")).collect();
            out.push_str(&format!("{} checks, {failed} failed\n", reports.len()));
            out
        }
    };
    emit(g, &text)?;
    if failed > 0 {
        return Err(Failure::Verify(failed));
    }
    Ok(())
}

fn rotation_warnings(cli: &Cli) -> Vec<String> {
    let args: Vec<(&str, &RatArg)> = match &cli.command {
        Command::Construct(a) => vec![("s", &a.s), ("t", &a.t)],
        Command::Converge(a) => vec![("s", &a.s), ("t", &a.t)],
        _ => Vec::new(),
    };
    args.into_iter()
        .filter_map(|(name, r)| {
            r.snapped_from
                .map(|x| format!("warning: --{name} {x} rationalised to {r} (denominator {DECIMAL_DENOMINATOR})"))
        })
        .collect()
}

fn run(cli: &Cli) -> Outcome {
    if cli.global.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global()
            .map_err(|e| Failure::Input(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Construct(a) => cmd_construct(&cli.global, a),
        Command::Merit(a) => cmd_merit(&cli.global, a),
        Command::Sweep(a) => cmd_sweep(&cli.global, a),
        Command::Converge(a) => cmd_converge(&cli.global, a),
        Command::Search(a) => cmd_search(&cli.global, a),
        Command::Verify(a) => cmd_verify(&cli.global, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    eprintln!("{}", serde_json::to_string(&cli).expect("config serialises"));
    for w in rotation_warnings(&cli) {
        eprintln!("{w}");
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_arguments() {
        let r: RatArg = "2/8".parse().unwrap();
        assert_eq!(r.value, Ratio::new(1, 4));
        assert!(r.snapped_from.is_none());
        let r: RatArg = "-0.125".parse().unwrap();
        assert_eq!(r.value, Ratio::new(-1, 8));
        assert_eq!(r.snapped_from, Some(-0.125));
        let r: RatArg = "0.3333333".parse().unwrap();
        assert_eq!(r.value, Ratio::new(333_333, 1_000_000));
        assert_eq!("3".parse::<RatArg>().unwrap().value, Ratio::from_integer(3));
        assert!("1/0".parse::<RatArg>().is_err());
        assert!("quarter".parse::<RatArg>().is_err());
    }

    #[test]
    fn pattern_and_sign_arguments() {
        assert!(matches!("code:5".parse::<PatternArg>(), Ok(PatternArg::Code(5))));
        assert!("code:x".parse::<PatternArg>().is_err());
        assert_eq!("-1".parse::<SignArg>().unwrap().0, -1);
        assert!("0".parse::<SignArg>().is_err());
    }
}
