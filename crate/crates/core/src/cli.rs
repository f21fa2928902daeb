//! The `cscert` command line.
//!
//! Every subcommand writes one JSON report (`schema_version` 1) to `--out`
//! or standard output. Reports echo the full configuration and seed, so a
//! report is enough to rerun the experiment; `--no-timestamp` drops the
//! wall-time field, which makes repeated runs byte-identical.
//!
//! Exit codes: 0 on success (a failing certificate is a result, not an
//! error), 2 for invalid input, 3 when a bound is evaluated outside its
//! regime, 4 when exact verification exceeds its capacity.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{
    cdspl_conditions, c0_variant, main_theorem_constants, support_deviations, theorem_constants,
    weak_nsp_certify, weak_nsp_certify_exhaustive, weak_rip_from_deviations, Kernel, NspMethod,
    NspOptions, TheoremInputs,
};
use crate::design::{
    all_supports, binomial, gershgorin_bound, gershgorin_check, read_csv, sample_support, to_csv,
    DesignMatrix, GeneratorSpec, SupportSet,
};
use crate::error::{Error, Result};
use crate::perturbation::{append_sweep, corollary_constants, corollary_mu_thresholds};
use crate::recovery::{basis_pursuit, recovery_experiment};
use crate::rng::derive_seed;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "cscert", version, about = "Coherence-based certificates for compressed-sensing designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Leave the wall time out of the report.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coherence, operator norm and a Gershgorin table.
    Coherence(CoherenceArgs),
    /// Monte-Carlo weak-RIP failure rate against the theoretical bound.
    WeakRip(WeakRipArgs),
    /// Weak-NSP constants and the appendix perturbation constants.
    Constants(ConstantsArgs),
    /// Null-space ratios over random or all supports.
    WeakNsp(WeakNspArgs),
    /// Check the append-one-column eigenvalue bounds on random cases.
    PerturbVerify(PerturbVerifyArgs),
    /// Basis pursuit, once or as a recovery experiment.
    Recover(RecoverArgs),
    /// Write a generated design matrix as CSV.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MatrixArgs {
    /// Design matrix CSV, one row per line.
    #[arg(long, conflicts_with = "gen")]
    pub input: Option<PathBuf>,

    /// Generator spec `kind:n:p:seed` (gaussian, sphere, identity-augmented).
    #[arg(long)]
    pub gen: Option<String>,

    /// Require unit-norm columns instead of normalising them.
    #[arg(long)]
    pub no_normalize: bool,
}

impl MatrixArgs {
    fn given(&self) -> bool {
        self.input.is_some() || self.gen.is_some()
    }

    fn load(&self) -> Result<DesignMatrix> {
        match (&self.input, &self.gen) {
            (Some(path), None) => DesignMatrix::from_raw(read_csv(path)?, !self.no_normalize),
            (None, Some(spec)) => spec.parse::<GeneratorSpec>()?.build(),
            _ => Err(Error::Validation("give exactly one of --input or --gen".into())),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoherenceArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Largest support size in the Gershgorin table (default min(p, 8)).
    #[arg(long)]
    pub s_max: Option<usize>,
    /// Supports per size; sizes with fewer supports are enumerated.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeakRipArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long)]
    pub s0: usize,
    /// Window radius; a comma-separated list gives a sweep.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV of the failure rate per radius.
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// CSV of the per-support deviations `‖Gram − I‖`.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long)]
    pub s0: usize,
    /// Coherence, when no matrix is given.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Number of columns, when no matrix is given.
    #[arg(long)]
    pub p: Option<usize>,
    /// Operator norm, when no matrix is given.
    #[arg(long, default_value_t = 1.0)]
    pub opnorm: f64,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    /// Largest eigenvalue of the unperturbed Gram matrix.
    #[arg(long, default_value_t = 1.25)]
    pub lam1: f64,
    /// Smallest eigenvalue of the unperturbed Gram matrix.
    #[arg(long, default_value_t = 0.75)]
    pub lam_s0: f64,
    /// Also evaluate the experimental `μ ≤ c0 / s0^{5/2}` form.
    #[arg(long)]
    pub c0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeakNspArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long)]
    pub s0: usize,
    #[arg(long = "C", alias = "c")]
    pub c: f64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = crate::certify::DEFAULT_D_MAX)]
    pub d_max: usize,
    /// Certify every support instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
    /// CSV of the per-support worst ratio.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PerturbVerifyArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Support sizes, cycled over the cases.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    pub s0: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include every case in the report.
    #[arg(long)]
    pub records: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Support as 1-based comma-separated indices.
    #[arg(long, value_delimiter = ',', conflicts_with = "s0")]
    pub support: Option<Vec<usize>>,
    /// Draw a support of this size from the seed.
    #[arg(long)]
    pub s0: Option<usize>,
    /// Solve once for this observation instead of running an experiment.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Option<Vec<f64>>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::certify::DEFAULT_D_MAX)]
    pub d_max: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenerateArgs {
    /// Generator spec `kind:n:p:seed`.
    #[arg(long)]
    pub gen: String,
}

/// Columns of plot data; every cell is written in shortest round-trip form.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Series {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }
}

pub fn emit_series(series: &Series, path: &Path) -> Result<()> {
    std::fs::write(path, series.to_csv())?;
    Ok(())
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Regime { .. } | Error::Preconditions(_) | Error::Admissibility { .. } => 3,
        Error::Capacity { .. } => 4,
        _ => 2,
    }
}

struct Output {
    command: &'static str,
    config: Value,
    seed: u64,
    result: Value,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn coherence(a: &CoherenceArgs) -> Result<Output> {
    let x = a.matrix.load()?;
    let mu = x.coherence()?;
    let s_max = a.s_max.unwrap_or(x.p().min(8));
    if s_max == 0 || s_max > x.p() {
        return Err(Error::Validation(format!("s-max = {s_max} must lie in 1..={}", x.p())));
    }
    let mut table = Vec::new();
    for s in 1..=s_max {
        let exhaustive = binomial(x.p(), s) <= a.trials as u64;
        let supports: Vec<SupportSet> = if exhaustive {
            all_supports(x.p(), s).collect()
        } else {
            let base = derive_seed(a.seed, s as u64);
            (0..a.trials as u64)
                .map(|i| sample_support(x.p(), s, base ^ i))
                .collect::<Result<_>>()?
        };
        let mut worst: f64 = 0.0;
        let mut violations = 0;
        for t in &supports {
            let g = gershgorin_check(&x, t)?;
            worst = worst.max(g.exact);
            violations += usize::from(!g.holds);
        }
        table.push(json!({
            "s": s,
            "bound": gershgorin_bound(mu, s),
            "max_observed_deviation": worst,
            "supports_checked": supports.len(),
            "exhaustive": exhaustive,
            "violations": violations,
        }));
    }
    Ok(Output {
        command: "coherence",
        config: to_value(a),
        seed: a.seed,
        result: json!({
            "n": x.n(),
            "p": x.p(),
            "mu": mu,
            "opnorm": x.opnorm(),
            "gershgorin": table,
        }),
    })
}

fn weak_rip(a: &WeakRipArgs) -> Result<Output> {
    let x = a.matrix.load()?;
    for &r in &a.r {
        cdspl_conditions(&x, a.s0, r, a.alpha)?;
    }
    if a.trials == 0 {
        return Err(Error::Validation("at least one trial is required".into()));
    }
    let dev = support_deviations(&x, a.s0, a.trials, a.seed)?;
    let reports = a
        .r
        .iter()
        .map(|&r| weak_rip_from_deviations(&x, &dev, a.s0, r, a.alpha, a.seed))
        .collect::<Result<Vec<_>>>()?;
    if let Some(path) = &a.series {
        let mut s = Series::new(&["r", "failures", "trials", "empirical_failure_rate", "theoretical_bound"]);
        for rep in &reports {
            s.push(vec![
                rep.r,
                rep.failures as f64,
                rep.trials as f64,
                rep.empirical_failure_rate,
                rep.theoretical_bound,
            ]);
        }
        emit_series(&s, path)?;
    }
    if let Some(path) = &a.histogram {
        let mut s = Series::new(&["trial", "deviation"]);
        for (i, d) in dev.iter().enumerate() {
            s.push(vec![i as f64, *d]);
        }
        emit_series(&s, path)?;
    }
    let mu = x.coherence()?;
    Ok(Output {
        command: "weak-rip",
        config: to_value(a),
        seed: a.seed,
        result: json!({
            "n": x.n(),
            "p": x.p(),
            "mu": mu,
            "opnorm": x.opnorm(),
            "gershgorin_bound": gershgorin_bound(mu, a.s0),
            "max_observed_deviation": dev.iter().copied().fold(0.0, f64::max),
            "reports": to_value(&reports),
        }),
    })
}

fn constants(a: &ConstantsArgs) -> Result<Output> {
    let theorem = if a.matrix.given() {
        if a.mu.is_some() || a.p.is_some() {
            return Err(Error::Validation("--mu/--p cannot be combined with a matrix".into()));
        }
        main_theorem_constants(&a.matrix.load()?, a.s0, a.alpha)?
    } else {
        let (Some(mu), Some(p)) = (a.mu, a.p) else {
            return Err(Error::Validation("give a matrix, or both --mu and --p".into()));
        };
        theorem_constants(&TheoremInputs {
            s0: a.s0,
            mu,
            alpha: a.alpha,
            p,
            opnorm: a.opnorm,
        })?
    };
    let corollary = corollary_constants(a.s0, theorem.mu, a.lam1, a.lam_s0)?;
    let c0 = a.c0.map(|c0| c0_variant(a.s0, c0, a.lam1)).transpose()?;
    Ok(Output {
        command: "constants",
        config: to_value(a),
        seed: 0,
        result: json!({
            "theorem": to_value(&theorem),
            "corollary": to_value(&corollary),
            "corollary_mu_thresholds": corollary_mu_thresholds(a.s0),
            "c0_variant": to_value(&c0),
        }),
    })
}

fn weak_nsp(a: &WeakNspArgs) -> Result<Output> {
    let x = a.matrix.load()?;
    let opts = NspOptions {
        method: match a.method {
            MethodArg::Exact => NspMethod::Exact,
            MethodArg::Sampled => NspMethod::Sampled,
        },
        samples: a.samples,
        d_max: a.d_max,
    };
    let report = if a.exhaustive {
        weak_nsp_certify_exhaustive(&x, a.s0, a.c, a.seed, &opts)?
    } else {
        weak_nsp_certify(&x, a.s0, a.c, a.trials, a.seed, &opts)?
    };
    if let Some(path) = &a.histogram {
        let mut s = Series::new(&["support", "worst_ratio", "holds"]);
        for (i, c) in report.certificates.iter().enumerate() {
            s.push(vec![i as f64, c.worst_ratio, f64::from(u8::from(c.holds))]);
        }
        emit_series(&s, path)?;
    }
    Ok(Output {
        command: "weak-nsp",
        config: to_value(a),
        seed: a.seed,
        result: to_value(&report),
    })
}

fn perturb_verify(a: &PerturbVerifyArgs) -> Result<Output> {
    let x = a.matrix.load()?;
    let (summary, records) = append_sweep(&x, &a.s0, a.trials, a.seed)?;
    let mut result = json!({ "summary": to_value(&summary) });
    if a.records {
        result["records"] = to_value(&records);
    }
    Ok(Output {
        command: "perturb-verify",
        config: to_value(a),
        seed: a.seed,
        result,
    })
}

fn recover(a: &RecoverArgs) -> Result<Output> {
    let x = a.matrix.load()?;
    let result = if let Some(y) = &a.y {
        to_value(&basis_pursuit(&x, y)?)
    } else {
        let t0 = match (&a.support, a.s0) {
            (Some(idx), None) => SupportSet::from_one_based(x.p(), idx)?,
            (None, Some(s0)) => sample_support(x.p(), s0, a.seed)?,
            _ => return Err(Error::Validation("give --support, --s0 or --y".into())),
        };
        let kernel = Kernel::of(&x);
        let ratio = match kernel.ratio_exact(&t0, a.d_max) {
            Ok(r) => Some(r),
            Err(Error::Capacity { .. }) => None,
            Err(e) => return Err(e),
        };
        let report = recovery_experiment(&x, &t0, a.trials, a.seed)?;
        let scaled = ratio.map(|r| r * (t0.len() as f64).sqrt());
        json!({
            "experiment": to_value(&report),
            "kernel_dim": kernel.dim(),
            "nsp_ratio": ratio.map(extended),
            "nsp_guarantees_recovery": scaled.map(|v| v < 1.0),
        })
    };
    Ok(Output {
        command: "recover",
        config: to_value(a),
        seed: a.seed,
        result,
    })
}

fn extended(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(if x > 0.0 { "inf" } else { "-inf" })
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    let start = Instant::now();
    let output = match &cli.command {
        Command::Coherence(a) => coherence(a)?,
        Command::WeakRip(a) => weak_rip(a)?,
        Command::Constants(a) => constants(a)?,
        Command::WeakNsp(a) => weak_nsp(a)?,
        Command::PerturbVerify(a) => perturb_verify(a)?,
        Command::Recover(a) => recover(a)?,
        Command::Generate(a) => {
            let x = a.gen.parse::<GeneratorSpec>()?.build()?;
            return emit(&to_csv(x.data()), cli.out.as_deref());
        }
    };
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "cscert",
        "version": env!("CARGO_PKG_VERSION"),
        "command": output.command,
        "config": output.config,
        "seed": output.seed,
        "result": output.result,
    });
    if !cli.no_timestamp {
        report["wall_time_seconds"] = json!(start.elapsed().as_secs_f64());
    }
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialise");
    text.push('\n');
    emit(&text, cli.out.as_deref())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_is_header_only() {
        let s = Series::new(&["r", "rate"]);
        assert_eq!(s.to_csv(), "r,rate\n");
    }

    #[test]
    fn series_round_trips() {
        let mut s = Series::new(&["a", "b"]);
        s.push(vec![0.1 + 0.2, 1e-300]);
        s.push(vec![f64::INFINITY, -3.0]);
        let text = s.to_csv();
        let back: Vec<Vec<f64>> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
            .collect();
        assert_eq!(back, s.rows);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Validation("x".into())), 2);
        assert_eq!(exit_code(&Error::Capacity { dim: 6, d_max: 5 }), 4);
        assert_eq!(exit_code(&Error::Admissibility { mu: 1.0, thresholds: vec![0.1] }), 3);
        assert_eq!(run(["cscert", "weak-rip", "--gen", "gaussian:4:8:1", "--s0", "2"]), 2);
        assert_eq!(run(["cscert", "--help"]), 0);
    }
}
