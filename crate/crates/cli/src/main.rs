//! `stablesim` — sampling, simulation, function evaluation, and
//! verification suites for stable-law-related distributions.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a
//! statistical failure, 2 on usage or parameter errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use stablesim_core::mittag_leffler::{
    frac_poisson_pmf, levy_cdf, linnik_cdf, linnik_density, ml_three, ml_two, EvalResult, MLArgs,
};
use stablesim_core::processes::{
    estimate_pde_solution_with, sample_inverse_subordinator, sample_subdiffusion_direct_with,
    sample_subdiffusion_dual_with, sample_subordinate_bm_with, simulate_frac_poisson,
    simulate_subordinator_path, SubdiffusionRoute, VarianceConvention,
};
use stablesim_core::stable_rng::{
    sample_dual_positive, sample_mittag_leffler_rv, sample_positive_linnik, sample_positive_stable,
    sample_strictly_stable, LinnikParams, OneSidedIndex, StrictStableParams,
};
use stablesim_core::stream::RandomStream;
use stablesim_core::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SEED};
use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "stablesim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw i.i.d. variates from one of the stable-family samplers
    Sample(SampleArgs),
    /// Simulate trajectories, subordinator paths, or density estimates
    Simulate(SimulateArgs),
    /// Evaluate Mittag-Leffler functions and the closed forms built on them
    Eval(EvalArgs),
    /// Run a named verification suite and emit one JSON report per check
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    PositiveStable,
    StrictlyStable,
    MittagLeffler,
    PositiveLinnik,
    DualPositive,
}

#[derive(Args)]
struct SampleArgs {
    /// Distribution to sample from
    #[arg(value_enum)]
    selector: SampleKind,
    /// One-sided index ν ∈ (0, 1]
    #[arg(long)]
    nu: Option<f64>,
    /// Stability index α ∈ (0, 2]
    #[arg(long)]
    alpha: Option<f64>,
    /// Positivity parameter ρ = P{S > 0}
    #[arg(long)]
    rho: Option<f64>,
    /// Linnik rate μ > 0
    #[arg(long)]
    mu: Option<f64>,
    #[arg(short, long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Substream selector
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcessKind {
    Fpp,
    Subordinator,
    InverseSubordinator,
    Subdiffusion,
    SubordinateBm,
    PdeEstimate,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Direct,
    TimeInversion,
    StablePositivePart,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarianceArg {
    /// Generator Δ: B(t) has variance 2t (default)
    GeneratorLaplacian,
    /// Generator (1/2)Δ: B(t) has variance t
    GeneratorHalfLaplacian,
}

impl From<VarianceArg> for VarianceConvention {
    fn from(v: VarianceArg) -> Self {
        match v {
            VarianceArg::GeneratorLaplacian => VarianceConvention::GeneratorLaplacian,
            VarianceArg::GeneratorHalfLaplacian => VarianceConvention::GeneratorHalfLaplacian,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// Process to simulate
    #[arg(value_enum)]
    selector: ProcessKind,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Evaluation time t
    #[arg(long)]
    t: Option<f64>,
    /// Simulation horizon
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    /// Grid spacing of subordinator paths
    #[arg(long)]
    dt: Option<f64>,
    /// Histogram bin count
    #[arg(long)]
    bins: Option<usize>,
    /// Histogram half-width: bins span [-range, range]
    #[arg(long)]
    range: Option<f64>,
    #[arg(short, long, default_value_t = 10)]
    n: usize,
    /// Subdiffusion sampling route
    #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
    route: RouteArg,
    /// Brownian-motion variance convention
    #[arg(long = "bm-variance", value_enum, default_value_t = VarianceArg::GeneratorLaplacian)]
    bm_variance: VarianceArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionKind {
    MlTwo,
    MlThree,
    LinnikDensity,
    LinnikCdf,
    FracPoissonPmf,
    LevyCdf,
}

#[derive(Args)]
struct EvalArgs {
    /// Function to evaluate
    #[arg(value_enum)]
    function: FunctionKind,
    /// Series exponent parameter ξ ∈ (0, 2]
    #[arg(long)]
    xi: Option<f64>,
    /// Offset parameter μ > 0 of E_{ξ,μ}
    #[arg(long = "mu-param")]
    mu_param: Option<f64>,
    /// Prabhakar power γ > 0
    #[arg(long)]
    gamma: Option<f64>,
    /// Argument z
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    /// State index of the fractional-Poisson pmf
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: all | samplers | mlfun | duality | processes | pde
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Per-check significance threshold
    #[arg(long = "threshold-p", default_value_t = 1e-3)]
    threshold_p: f64,
    /// Override α of the duality checks
    #[arg(long)]
    alpha: Option<f64>,
    /// Override ρ of the duality checks
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct UsageError(String);

impl Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Run = Result<ExitCode, UsageError>;
type Sampler = Box<dyn FnMut(&mut RandomStream) -> Result<f64, UsageError>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(args) => run_sample(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Eval(args) => run_eval(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn writer(path: &Option<PathBuf>) -> io::Result<BufWriter<Box<dyn Write>>> {
    Ok(BufWriter::new(match path {
        Some(p) => Box::new(File::create(p)?) as Box<dyn Write>,
        None => Box::new(io::stdout()),
    }))
}

fn require(name: &str, v: Option<f64>) -> Result<f64, UsageError> {
    v.ok_or_else(|| UsageError(format!("missing required parameter --{name}")))
}

fn emit_samples(
    w: &mut impl Write,
    format: Format,
    header: &str,
    params_json: serde_json::Value,
    samples: &[f64],
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "# {header}")?;
            for x in samples {
                writeln!(w, "{x}")?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "record": params_json,
                "samples": samples,
            });
            writeln!(w, "{doc}")?;
        }
    }
    Ok(())
}

fn run_sample(args: SampleArgs) -> Run {
    let mut stream = RandomStream::new(args.seed, args.stream);
    let n = args.n;
    let (name, params, mut draw): (&str, serde_json::Value, Sampler) = match args.selector {
        SampleKind::PositiveStable => {
            let nu = OneSidedIndex::new(require("nu", args.nu)?)?;
            (
                "positive-stable",
                serde_json::json!({"nu": nu.get()}),
                Box::new(move |s| Ok(sample_positive_stable(nu, s))),
            )
        }
        SampleKind::StrictlyStable => {
            let p =
                StrictStableParams::new(require("alpha", args.alpha)?, require("rho", args.rho)?)?;
            (
                "strictly-stable",
                serde_json::json!({"alpha": p.alpha(), "rho": p.rho()}),
                Box::new(move |s| Ok(sample_strictly_stable(p, s)?)),
            )
        }
        SampleKind::MittagLeffler => {
            let nu = OneSidedIndex::new(require("nu", args.nu)?)?;
            (
                "mittag-leffler",
                serde_json::json!({"nu": nu.get()}),
                Box::new(move |s| Ok(sample_mittag_leffler_rv(nu, s))),
            )
        }
        SampleKind::PositiveLinnik => {
            let p = LinnikParams::new(
                OneSidedIndex::new(require("nu", args.nu)?)?,
                require("mu", args.mu)?,
            )?;
            (
                "positive-linnik",
                serde_json::json!({"nu": p.nu(), "mu": p.mu()}),
                Box::new(move |s| Ok(sample_positive_linnik(p, s))),
            )
        }
        SampleKind::DualPositive => {
            let p =
                StrictStableParams::new(require("alpha", args.alpha)?, require("rho", args.rho)?)?;
            (
                "dual-positive",
                serde_json::json!({"alpha": p.alpha(), "rho": p.rho()}),
                Box::new(move |s| Ok(sample_dual_positive(p, s)?)),
            )
        }
    };

    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        samples.push(draw(&mut stream)?);
    }
    let mut w = writer(&args.output)?;
    let header = format!(
        "sample {name} {} n={n} seed={} stream={}",
        compact(&params),
        args.seed,
        args.stream
    );
    let record = serde_json::json!({
        "selector": name, "params": params, "n": n,
        "seed": args.seed, "stream": args.stream,
    });
    emit_samples(&mut w, args.format, &header, record, &samples)?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// `key=value` rendering of a flat JSON map for CSV headers.
fn compact(v: &serde_json::Value) -> String {
    v.as_object()
        .map(|m| {
            m.iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn run_simulate(args: SimulateArgs) -> Run {
    let mut stream = RandomStream::new(args.seed, args.stream);
    let mut w = writer(&args.output)?;
    match args.selector {
        ProcessKind::Fpp => {
            let p = LinnikParams::new(
                OneSidedIndex::new(require("nu", args.nu)?)?,
                require("mu", args.mu)?,
            )?;
            let traj = simulate_frac_poisson(p, require("t-max", args.t_max)?, &mut stream)?;
            match args.format {
                Format::Csv => traj.write_csv(&mut w)?,
                Format::Json => writeln!(w, "{}", serde_json::to_string(&traj)?)?,
            }
        }
        ProcessKind::Subordinator => {
            let idx = OneSidedIndex::new(require("nu", args.nu)?)?;
            let path = simulate_subordinator_path(
                idx,
                require("t-max", args.t_max)?,
                require("dt", args.dt)?,
                &mut stream,
            )?;
            match args.format {
                Format::Csv => path.write_csv(&mut w)?,
                Format::Json => writeln!(w, "{}", serde_json::to_string(&path)?)?,
            }
        }
        ProcessKind::InverseSubordinator => {
            let idx = OneSidedIndex::new(require("alpha", args.alpha)?)?;
            let t = require("t", args.t)?;
            let samples: Vec<f64> = (0..args.n)
                .map(|_| sample_inverse_subordinator(idx, t, &mut stream))
                .collect::<Result<_, _>>()?;
            let record = serde_json::json!({
                "selector": "inverse-subordinator",
                "params": {"alpha": idx.get(), "t": t},
                "n": args.n, "seed": args.seed, "stream": args.stream,
            });
            let header = format!(
                "simulate inverse-subordinator alpha={} t={t} n={} seed={} stream={}",
                idx.get(),
                args.n,
                args.seed,
                args.stream
            );
            emit_samples(&mut w, args.format, &header, record, &samples)?;
        }
        ProcessKind::Subdiffusion => {
            let alpha = require("alpha", args.alpha)?;
            let t = require("t", args.t)?;
            let conv: VarianceConvention = args.bm_variance.into();
            let samples: Vec<f64> = (0..args.n)
                .map(|_| match args.route {
                    RouteArg::Direct => sample_subdiffusion_direct_with(
                        OneSidedIndex::new(alpha)?,
                        t,
                        conv,
                        &mut stream,
                    ),
                    RouteArg::TimeInversion => sample_subdiffusion_dual_with(
                        alpha,
                        t,
                        SubdiffusionRoute::TimeInversion,
                        conv,
                        &mut stream,
                    ),
                    RouteArg::StablePositivePart => sample_subdiffusion_dual_with(
                        alpha,
                        t,
                        SubdiffusionRoute::StablePositivePart,
                        conv,
                        &mut stream,
                    ),
                })
                .collect::<Result<_, _>>()?;
            let route = match args.route {
                RouteArg::Direct => "direct",
                RouteArg::TimeInversion => "time-inversion",
                RouteArg::StablePositivePart => "stable-positive-part",
            };
            let record = serde_json::json!({
                "selector": "subdiffusion",
                "params": {"alpha": alpha, "t": t, "route": route},
                "n": args.n, "seed": args.seed, "stream": args.stream,
            });
            let header = format!(
                "simulate subdiffusion alpha={alpha} t={t} route={route} n={} seed={} stream={}",
                args.n, args.seed, args.stream
            );
            emit_samples(&mut w, args.format, &header, record, &samples)?;
        }
        ProcessKind::SubordinateBm => {
            let alpha = require("alpha", args.alpha)?;
            let t = require("t", args.t)?;
            let samples: Vec<f64> = (0..args.n)
                .map(|_| sample_subordinate_bm_with(alpha, t, args.bm_variance.into(), &mut stream))
                .collect::<Result<_, _>>()?;
            let record = serde_json::json!({
                "selector": "subordinate-bm",
                "params": {"alpha": alpha, "t": t},
                "n": args.n, "seed": args.seed, "stream": args.stream,
            });
            let header = format!(
                "simulate subordinate-bm alpha={alpha} t={t} n={} seed={} stream={}",
                args.n, args.seed, args.stream
            );
            emit_samples(&mut w, args.format, &header, record, &samples)?;
        }
        ProcessKind::PdeEstimate => {
            let idx = OneSidedIndex::new(require("alpha", args.alpha)?)?;
            let est = estimate_pde_solution_with(
                idx,
                require("t", args.t)?,
                args.bins
                    .ok_or_else(|| UsageError("missing required parameter --bins".into()))?,
                require("range", args.range)?,
                args.n,
                args.bm_variance.into(),
                &stream,
            )?;
            match args.format {
                Format::Csv => est.write_csv(&mut w)?,
                Format::Json => writeln!(w, "{}", serde_json::to_string(&est)?)?,
            }
        }
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn run_eval(args: EvalArgs) -> Run {
    let (name, inputs, result): (&str, serde_json::Value, EvalResult) = match args.function {
        FunctionKind::MlTwo => {
            let (xi, mu, z) = (
                require("xi", args.xi)?,
                require("mu-param", args.mu_param)?,
                require("z", args.z)?,
            );
            (
                "ml-two",
                serde_json::json!({"xi": xi, "mu_param": mu, "z": z}),
                ml_two(xi, mu, z)?,
            )
        }
        FunctionKind::MlThree => {
            let a = MLArgs::new(
                require("xi", args.xi)?,
                require("mu-param", args.mu_param)?,
                require("gamma", args.gamma)?,
                require("z", args.z)?,
            )?;
            (
                "ml-three",
                serde_json::json!({"xi": a.xi, "mu_param": a.mu_param, "gamma": a.gamma_param, "z": a.z}),
                ml_three(a)?,
            )
        }
        FunctionKind::LinnikDensity | FunctionKind::LinnikCdf => {
            let p = LinnikParams::new(
                OneSidedIndex::new(require("nu", args.nu)?)?,
                require("mu", args.mu)?,
            )?;
            let t = require("t", args.t)?;
            let (name, value) = match args.function {
                FunctionKind::LinnikDensity => ("linnik-density", linnik_density(p, t)?),
                _ => ("linnik-cdf", linnik_cdf(p, t)?),
            };
            (
                name,
                serde_json::json!({"nu": p.nu(), "mu": p.mu(), "t": t}),
                scalar_result(value),
            )
        }
        FunctionKind::FracPoissonPmf => {
            let nu = OneSidedIndex::new(require("nu", args.nu)?)?;
            let (mu, t) = (require("mu", args.mu)?, require("t", args.t)?);
            let k = args
                .k
                .ok_or_else(|| UsageError("missing required parameter --k".into()))?;
            (
                "frac-poisson-pmf",
                serde_json::json!({"nu": nu.get(), "mu": mu, "t": t, "k": k}),
                scalar_result(frac_poisson_pmf(nu, mu, t, k)?),
            )
        }
        FunctionKind::LevyCdf => {
            let t = require("t", args.t)?;
            (
                "levy-cdf",
                serde_json::json!({"t": t}),
                scalar_result(levy_cdf(t)),
            )
        }
    };
    let mut w = writer(&args.output)?;
    match args.format {
        Format::Csv => {
            writeln!(w, "# eval {name} {}", compact(&inputs))?;
            writeln!(w, "value,est_abs_error,terms_used,regime")?;
            writeln!(
                w,
                "{},{},{},{}",
                result.value,
                result.est_abs_error,
                result.terms_used,
                serde_json::to_value(result.regime)?.as_str().unwrap_or("?")
            )?;
        }
        Format::Json => {
            let doc = serde_json::json!({
                "function": name, "inputs": inputs, "result": result,
            });
            writeln!(w, "{doc}")?;
        }
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// Closed-form scalars reported through the same record shape as ml_two.
fn scalar_result(value: f64) -> EvalResult {
    EvalResult {
        value,
        est_abs_error: 4.0 * f64::EPSILON * value.abs(),
        terms_used: 1,
        regime: stablesim_core::mittag_leffler::Regime::ClosedForm,
    }
}

fn run_verify(args: VerifyArgs) -> Run {
    let suite: Suite = args.suite.parse().map_err(UsageError)?;
    let opts = VerifyOptions {
        seed: args.seed,
        threshold_p: args.threshold_p,
        alpha: args.alpha,
        rho: args.rho,
    };
    let reports = run_suite(suite, &opts);
    let mut w = writer(&args.output)?;
    let mut failed = 0usize;
    for r in &reports {
        writeln!(w, "{}", serde_json::to_string(r)?)?;
        if !r.passed {
            failed += 1;
        }
    }
    w.flush()?;
    eprintln!(
        "{} checks, {} failed (suite '{}', seed {})",
        reports.len(),
        failed,
        args.suite,
        args.seed
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
