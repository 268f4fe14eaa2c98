//! Named verification suites: every distributional identity the samplers
//! and process simulators are supposed to satisfy, run against the analytic
//! Mittag-Leffler formulas and closed-form oracles with fixed seeds, and
//! reported as machine-readable pass/fail records.
//!
//! The CLI `verify` subcommand and the `acceptance` integration test both
//! drive [`run_suite`]; seeds default to [`DEFAULT_SEED`] so runs are
//! deterministic unless a seed is passed explicitly.

use crate::mittag_leffler::{
    frac_poisson_pmf, gamma_fn, levy_cdf, linnik_cdf, ml_three, ml_two, MLArgs,
};
use crate::processes::{
    estimate_pde_solution, first_passage_by_simulation, sample_inverse_subordinator,
    sample_subdiffusion_direct, sample_subdiffusion_dual, sample_subordinate_bm,
    simulate_frac_poisson, simulate_subordinator_path, SubdiffusionRoute,
};
use crate::stable_rng::{
    sample_dual_positive, sample_mittag_leffler_rv, sample_positive_linnik, sample_positive_stable,
    sample_strictly_stable, LinnikParams, OneSidedIndex, StrictStableParams,
};
use crate::stat_tests::{
    chi_square_pmf, ecf_check, ks_one_sample, ks_p_value, ks_two_sample, moment_zscore,
    ChiSquareReport, EcfPoint, KsReport, MomentReport,
};
use crate::stream::{sample_batch, RandomStream};
use num_complex::Complex64;
use serde::Serialize;
use statrs::function::erf::erfc;
use std::f64::consts::PI;
use std::str::FromStr;

/// Seed used by `verify` when none is given on the command line.
pub const DEFAULT_SEED: u64 = 7;
/// Per-check significance threshold of the fixed-seed suites.
pub const DEFAULT_THRESHOLD_P: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub threshold_p: f64,
    /// Override for the duality checks (default 1.5).
    pub alpha: Option<f64>,
    /// Override for the duality checks (default 0.6).
    pub rho: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            threshold_p: DEFAULT_THRESHOLD_P,
            alpha: None,
            rho: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Samplers,
    Mlfun,
    Duality,
    Processes,
    Pde,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "samplers" => Ok(Suite::Samplers),
            "mlfun" => Ok(Suite::Mlfun),
            "duality" => Ok(Suite::Duality),
            "processes" => Ok(Suite::Processes),
            "pde" => Ok(Suite::Pde),
            other => Err(format!(
                "unknown suite '{other}' (expected all|samplers|mlfun|duality|processes|pde)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Detail {
    Ks(KsReport),
    ChiSquare(ChiSquareReport),
    Moment(MomentReport),
    Ecf {
        passed: bool,
        points: Vec<EcfPoint>,
    },
    Tolerance {
        passed: bool,
        max_abs_error: f64,
        tolerance: f64,
    },
}

/// One named check outcome; serializes flat with a `kind` discriminator.
/// Every statistical detail carries its own `passed` field, so the
/// top-level flag here is kept out of the JSON.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub test: String,
    pub seed: u64,
    #[serde(skip)]
    pub passed: bool,
    #[serde(flatten)]
    pub detail: Detail,
}

fn ks(test: &str, seed: u64, r: KsReport) -> VerifyReport {
    VerifyReport {
        test: test.into(),
        seed,
        passed: r.passed,
        detail: Detail::Ks(r),
    }
}

fn chi(test: &str, seed: u64, r: ChiSquareReport) -> VerifyReport {
    VerifyReport {
        test: test.into(),
        seed,
        passed: r.passed,
        detail: Detail::ChiSquare(r),
    }
}

fn moment(test: &str, seed: u64, r: MomentReport) -> VerifyReport {
    VerifyReport {
        test: test.into(),
        seed,
        passed: r.passed,
        detail: Detail::Moment(r),
    }
}

fn ecf(test: &str, seed: u64, points: Vec<EcfPoint>) -> VerifyReport {
    let passed = points.iter().all(|p| p.passed);
    VerifyReport {
        test: test.into(),
        seed,
        passed,
        detail: Detail::Ecf { passed, points },
    }
}

fn tolerance(test: &str, seed: u64, max_abs_error: f64, tol: f64) -> VerifyReport {
    let passed = max_abs_error <= tol;
    VerifyReport {
        test: test.into(),
        seed,
        passed,
        detail: Detail::Tolerance {
            passed,
            max_abs_error,
            tolerance: tol,
        },
    }
}

const N: usize = 100_000;

fn one_sided(nu: f64) -> OneSidedIndex {
    OneSidedIndex::new(nu).expect("valid index")
}

fn linnik(nu: f64, mu: f64) -> LinnikParams {
    LinnikParams::new(one_sided(nu), mu).expect("valid Linnik parameters")
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<VerifyReport> {
    match suite {
        Suite::All => {
            let mut out = samplers_suite(opts);
            out.extend(mlfun_suite(opts));
            out.extend(duality_suite(opts));
            out.extend(processes_suite(opts));
            out.extend(pde_suite(opts));
            out
        }
        Suite::Samplers => samplers_suite(opts),
        Suite::Mlfun => mlfun_suite(opts),
        Suite::Duality => duality_suite(opts),
        Suite::Processes => processes_suite(opts),
        Suite::Pde => pde_suite(opts),
    }
}

pub fn samplers_suite(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let (seed, th) = (opts.seed, opts.threshold_p);
    let mut out = Vec::new();

    // Kanter at ν = 1/2 against the closed-form Lévy CDF erfc(1/(2√t))
    {
        let base = RandomStream::new(seed, 10);
        let xs = sample_batch(&base, N, |s| sample_positive_stable(one_sided(0.5), s));
        out.push(ks(
            "kanter_levy_ks",
            seed,
            ks_one_sample(&xs, levy_cdf, th).expect("ks"),
        ));
    }

    // Laplace-transform battery: mean exp(-λ S_ν) vs exp(-λ^ν)
    for (i, nu10) in (2..=9).enumerate() {
        let nu = nu10 as f64 / 10.0;
        let base = RandomStream::new(seed, 20 + i as u64);
        let xs = sample_batch(&base, N, |s| sample_positive_stable(one_sided(nu), s));
        for lambda in [0.5, 1.0, 2.0] {
            let transformed: Vec<f64> = xs.iter().map(|&x| (-lambda * x).exp()).collect();
            let target = (-lambda.powf(nu)).exp();
            out.push(moment(
                &format!("laplace_transform nu={nu} lambda={lambda}"),
                seed,
                moment_zscore(&transformed, target).expect("moment"),
            ));
        }
    }

    // Mittag-Leffler variate at α = 1/2: law √2·|N| and mean 2/√π
    {
        let base = RandomStream::new(seed, 30);
        let ml = sample_batch(&base, N, |s| sample_mittag_leffler_rv(one_sided(0.5), s));
        let base2 = RandomStream::new(seed, 31);
        let oracle = sample_batch(&base2, N, |s| std::f64::consts::SQRT_2 * s.gaussian().abs());
        out.push(ks(
            "mittag_leffler_halfnormal_ks",
            seed,
            ks_two_sample(&ml, &oracle, th).expect("ks"),
        ));
        out.push(moment(
            "mittag_leffler_mean",
            seed,
            moment_zscore(&ml, 2.0 / PI.sqrt()).expect("moment"),
        ));
    }

    // positive Linnik against the Mittag-Leffler CDF 1 - E_{ν,1}(-μ t^ν)
    {
        let params = linnik(0.7, 1.0);
        let base = RandomStream::new(seed, 32);
        let xs = sample_batch(&base, N, |s| sample_positive_linnik(params, s));
        let cdf = |t: f64| linnik_cdf(params, t).expect("cdf of a positive sample");
        out.push(ks(
            "linnik_ml_cdf_ks",
            seed,
            ks_one_sample(&xs, cdf, th).expect("ks"),
        ));
    }

    // ν = 1 degenerates to Exp(μ)
    {
        let params = linnik(1.0, 2.0);
        let base = RandomStream::new(seed, 33);
        let xs = sample_batch(&base, N, |s| sample_positive_linnik(params, s));
        out.push(ks(
            "linnik_exponential_ks",
            seed,
            ks_one_sample(&xs, |t| 1.0 - (-2.0 * t).exp(), th).expect("ks"),
        ));
    }

    // LT scaling: rate-1 samples times μ^{-1/ν} follow the rate-μ law
    {
        let base1 = RandomStream::new(seed, 34);
        let scaled = sample_batch(&base1, N, |s| {
            sample_positive_linnik(linnik(0.5, 1.0), s) / 16.0
        });
        let base2 = RandomStream::new(seed, 35);
        let direct = sample_batch(&base2, N, |s| sample_positive_linnik(linnik(0.5, 4.0), s));
        out.push(ks(
            "linnik_rate_scaling_ks",
            seed,
            ks_two_sample(&scaled, &direct, th).expect("ks"),
        ));
    }

    // α = 2 is N(0, 2); α = 1, ρ = 1/2 is standard Cauchy
    {
        let base = RandomStream::new(seed, 36);
        let p = StrictStableParams::new(2.0, 0.5).expect("params");
        let xs = sample_batch(&base, N, |s| sample_strictly_stable(p, s).expect("sample"));
        let base2 = RandomStream::new(seed, 37);
        let oracle = sample_batch(&base2, N, |s| std::f64::consts::SQRT_2 * s.gaussian());
        out.push(ks(
            "strictly_stable_gaussian_ks",
            seed,
            ks_two_sample(&xs, &oracle, th).expect("ks"),
        ));

        let base3 = RandomStream::new(seed, 38);
        let p1 = StrictStableParams::new(1.0, 0.5).expect("params");
        let cauchy = sample_batch(&base3, N, |s| {
            sample_strictly_stable(p1, s).expect("sample")
        });
        out.push(ks(
            "strictly_stable_cauchy_ks",
            seed,
            ks_one_sample(&cauchy, |x| 0.5 + x.atan() / PI, th).expect("ks"),
        ));
    }

    // empirical P{X > 0} against ρ
    {
        let p = StrictStableParams::new(1.5, 0.6).expect("params");
        let base = RandomStream::new(seed, 39);
        let ind = sample_batch(&base, N, |s| {
            if sample_strictly_stable(p, s).expect("sample") > 0.0 {
                1.0
            } else {
                0.0
            }
        });
        out.push(moment(
            "positivity_mass",
            seed,
            moment_zscore(&ind, 0.6).expect("moment"),
        ));
    }

    // scale coherence: (α<1, ρ=1) CMS boundary equals the Kanter sampler
    {
        let p = StrictStableParams::new(0.7, 1.0).expect("params");
        let base = RandomStream::new(seed, 40);
        let cms = sample_batch(&base, N, |s| sample_strictly_stable(p, s).expect("sample"));
        let base2 = RandomStream::new(seed, 41);
        let kanter = sample_batch(&base2, N, |s| sample_positive_stable(one_sided(0.7), s));
        out.push(ks(
            "one_sided_scale_coherence_ks",
            seed,
            ks_two_sample(&cms, &kanter, th).expect("ks"),
        ));
    }

    out
}

pub fn mlfun_suite(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let seed = opts.seed;
    let mut out = Vec::new();
    let grid: Vec<f64> = (0..=200).map(|i| -5.0 + i as f64 * 0.05).collect();

    // E_{1,1} = exp
    let mut dev = 0.0f64;
    for &z in &grid {
        dev = dev.max((ml_two(1.0, 1.0, z).expect("eval").value - z.exp()).abs());
    }
    out.push(tolerance("ml_exp_identity", seed, dev, 1e-12));

    // E_{2,1}(-z²) = cos z
    dev = 0.0;
    for &z in &grid {
        dev = dev.max((ml_two(2.0, 1.0, -z * z).expect("eval").value - z.cos()).abs());
    }
    out.push(tolerance("ml_cos_identity", seed, dev, 1e-10));

    // E_{1/2,1}(z) = e^{z²} erfc(-z); relative on the exploding side z > 0
    dev = 0.0;
    for &z in &grid {
        let target = (z * z).exp() * erfc(-z);
        let got = ml_two(0.5, 1.0, z).expect("eval").value;
        dev = dev.max((got - target).abs() / target.abs().max(1.0));
    }
    out.push(tolerance("ml_erfc_identity", seed, dev, 1e-8));

    // Prabhakar γ = 1 reduction on a 200-point series-regime grid
    dev = 0.0;
    for xi in [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0] {
        for mu in [0.4, 1.0, 1.7, 2.5, 3.0] {
            for z in [-2.0, -1.0, -0.3, 0.5, 1.0] {
                let a = ml_three(MLArgs::new(xi, mu, 1.0, z).expect("args")).expect("eval");
                let b = ml_two(xi, mu, z).expect("eval");
                dev = dev.max((a.value - b.value).abs());
            }
        }
    }
    out.push(tolerance("prabhakar_gamma1_reduction", seed, dev, 1e-12));

    // E^{k+1}_{1,k+1}(-x) = e^{-x}/k!
    dev = 0.0;
    for k in 0..=10u32 {
        for x in [0.5, 2.0, 5.0] {
            let args = MLArgs::new(1.0, k as f64 + 1.0, k as f64 + 1.0, -x).expect("args");
            let target = (-x - statrs::function::gamma::ln_gamma(k as f64 + 1.0)).exp();
            dev = dev.max((ml_three(args).expect("eval").value - target).abs());
        }
    }
    out.push(tolerance("prabhakar_poisson_identity", seed, dev, 1e-10));

    // ν = 1 pmf is Poisson
    dev = 0.0;
    for k in 0..=20usize {
        for (mu, t) in [(1.0, 2.0), (3.0, 1.0)] {
            let lambda: f64 = mu * t;
            let target = (k as f64 * lambda.ln()
                - lambda
                - statrs::function::gamma::ln_gamma(k as f64 + 1.0))
            .exp();
            let got = frac_poisson_pmf(one_sided(1.0), mu, t, k).expect("pmf");
            dev = dev.max((got - target).abs());
        }
    }
    out.push(tolerance("pmf_poisson_reduction", seed, dev, 1e-10));

    // pmf normalization and non-negativity over the parameter grid
    let mut norm_dev = 0.0f64;
    let mut min_pmf = f64::INFINITY;
    for nu in [0.3, 0.6, 0.9, 1.0] {
        for mu in [0.5, 1.0, 2.0] {
            for t in [0.5, 1.0, 5.0] {
                let mut sum = 0.0;
                let mut k = 0usize;
                loop {
                    let p = frac_poisson_pmf(one_sided(nu), mu, t, k).expect("pmf");
                    min_pmf = min_pmf.min(p);
                    sum += p;
                    k += 1;
                    if 1.0 - sum < 0.5e-8 || k > 2000 {
                        break;
                    }
                }
                norm_dev = norm_dev.max((sum - 1.0).abs());
            }
        }
    }
    out.push(tolerance("pmf_normalization", seed, norm_dev, 1e-8));
    out.push(tolerance(
        "pmf_nonnegativity",
        seed,
        (-min_pmf).max(0.0),
        0.0,
    ));

    // CDF monotone on a 1000-point log grid
    {
        let params = linnik(0.7, 1.0);
        let mut worst = 0.0f64;
        let mut prev = 0.0f64;
        for i in 0..1000 {
            let t = 10f64.powf(-3.0 + 6.0 * i as f64 / 999.0);
            let c = linnik_cdf(params, t).expect("cdf");
            worst = worst.max(prev - c);
            prev = c;
        }
        out.push(tolerance("linnik_cdf_monotone", seed, worst, 0.0));
    }

    out
}

pub fn duality_suite(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let (seed, th) = (opts.seed, opts.threshold_p);
    let alpha = opts.alpha.unwrap_or(1.5);
    let rho = opts.rho.unwrap_or(0.6);
    let mut out = Vec::new();
    let m = 70_000; // effective (post-conditioning) samples per side

    let conditioned_cms = |seed_id: u64, a: f64, r: f64| -> Vec<f64> {
        let p = StrictStableParams::new(a, r).expect("params");
        let mut s = RandomStream::new(seed, seed_id);
        let mut v = Vec::with_capacity(m);
        while v.len() < m {
            let x = sample_strictly_stable(p, &mut s).expect("sample");
            if x > 0.0 {
                v.push(x);
            }
        }
        v
    };
    let dual_draws = |seed_id: u64, a: f64, r: f64| -> Vec<f64> {
        let p = StrictStableParams::new(a, r).expect("params");
        let base = RandomStream::new(seed, seed_id);
        sample_batch(&base, m, |s| sample_dual_positive(p, s).expect("dual"))
    };

    // conditional duality at (α, ρ)
    out.push(ks(
        &format!("duality_conditional_ks alpha={alpha} rho={rho}"),
        seed,
        ks_two_sample(
            &conditioned_cms(50, alpha, rho),
            &dual_draws(51, alpha, rho),
            th,
        )
        .expect("ks"),
    ));

    // ρ = 1/α: inner law is one-sided, Kanter only
    let rho_inv = 1.0 / alpha;
    out.push(ks(
        &format!("duality_one_sided_ks alpha={alpha}"),
        seed,
        ks_two_sample(
            &conditioned_cms(52, alpha, rho_inv),
            &dual_draws(53, alpha, rho_inv),
            th,
        )
        .expect("ks"),
    ));

    // α = 2: positive part of N(0,2)
    {
        let base = RandomStream::new(seed, 54);
        let halfnorm = sample_batch(&base, m, |s| std::f64::consts::SQRT_2 * s.gaussian().abs());
        out.push(ks(
            "duality_gaussian_ks",
            seed,
            ks_two_sample(&dual_draws(55, 2.0, 0.5), &halfnorm, th).expect("ks"),
        ));
    }

    out
}

pub fn processes_suite(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let (seed, th) = (opts.seed, opts.threshold_p);
    let mut out = Vec::new();

    // renewal counts at t = 1: Poisson at ν = 1, Prabhakar pmf at ν = 0.6
    for (sid, name, nu, mu) in [
        (60, "fpp_poisson_chisq", 1.0, 3.0),
        (61, "fpp_fractional_chisq", 0.6, 1.0),
    ] {
        let params = linnik(nu, mu);
        let base = RandomStream::new(seed, sid);
        let counts_f = sample_batch(&base, N, |s| {
            let traj = simulate_frac_poisson(params, 1.0, s).expect("trajectory");
            assert!(
                traj.event_times.windows(2).all(|w| w[0] < w[1]),
                "event times must strictly increase"
            );
            traj.count_at(1.0).expect("within horizon") as f64
        });
        let max_k = counts_f.iter().cloned().fold(0.0, f64::max) as usize;
        let mut counts = vec![0u64; max_k + 1];
        for &c in &counts_f {
            counts[c as usize] += 1;
        }
        let pmf = |k: usize| frac_poisson_pmf(one_sided(nu), mu, 1.0, k).expect("pmf");
        out.push(chi(
            name,
            seed,
            chi_square_pmf(&counts, pmf, N as u64, th).expect("chi-square"),
        ));
        if nu < 1.0 {
            // renewal survival: P{N(1) = 0} = 1 - F_T(1)
            let zeros: Vec<f64> = counts_f
                .iter()
                .map(|&c| if c == 0.0 { 1.0 } else { 0.0 })
                .collect();
            let surv = 1.0 - linnik_cdf(params, 1.0).expect("cdf");
            out.push(moment(
                "fpp_zero_count_prob",
                seed,
                moment_zscore(&zeros, surv).expect("moment"),
            ));
        }
    }

    // inverse-subordinator mean: E L_t = t^α / Γ(1+α)
    for (i, &alpha) in [0.3, 0.5, 0.7].iter().enumerate() {
        for (j, &t) in [0.5, 1.0, 2.0].iter().enumerate() {
            let base = RandomStream::new(seed, 62 + (3 * i + j) as u64);
            let xs = sample_batch(&base, N, |s| {
                sample_inverse_subordinator(one_sided(alpha), t, s).expect("sample")
            });
            let target = t.powf(alpha) / gamma_fn(1.0 + alpha);
            out.push(moment(
                &format!("inverse_subordinator_mean alpha={alpha} t={t}"),
                seed,
                moment_zscore(&xs, target).expect("moment"),
            ));
        }
    }

    // marginal sampler against the path-level first-passage oracle.
    // The discrete oracle is upper-biased by at most one grid step; the KS
    // distance this induces is bounded by dt·sup density = dt/√π at
    // (α, t) = (1/2, 1), and the statistic is debited accordingly.
    {
        let (alpha, t, dt) = (0.5, 1.0, 1e-4);
        let base = RandomStream::new(seed, 71);
        let marginal = sample_batch(&base, N, |s| {
            sample_inverse_subordinator(one_sided(alpha), t, s).expect("sample")
        });
        let base2 = RandomStream::new(seed, 72);
        let oracle = sample_batch(&base2, 10_000, |s| {
            first_passage_by_simulation(one_sided(alpha), t, dt, s)
        });
        let raw = ks_two_sample(&marginal, &oracle, th).expect("ks");
        let bias = dt / PI.sqrt();
        let n_eff = (raw.n1 as f64) * (raw.n2 as f64) / (raw.n1 + raw.n2) as f64;
        let p_adj = ks_p_value((raw.statistic - bias).max(0.0), n_eff);
        out.push(ks(
            "inverse_subordinator_path_ks",
            seed,
            KsReport {
                p_value: p_adj,
                passed: p_adj > th,
                ..raw
            },
        ));
    }

    // subordinator terminal law: S(1) with ν = 1/2 is Lévy
    {
        let base = RandomStream::new(seed, 73);
        let terminals = sample_batch(&base, 30_000, |s| {
            simulate_subordinator_path(one_sided(0.5), 1.0, 1.0 / 1024.0, s)
                .expect("path")
                .terminal()
        });
        out.push(ks(
            "subordinator_terminal_levy_ks",
            seed,
            ks_one_sample(&terminals, levy_cdf, th).expect("ks"),
        ));
    }

    // terminal law is invariant under grid refinement dt -> dt/4
    {
        let base = RandomStream::new(seed, 74);
        let coarse = sample_batch(&base, 20_000, |s| {
            simulate_subordinator_path(one_sided(0.7), 1.0, 1.0 / 256.0, s)
                .expect("path")
                .terminal()
        });
        let base2 = RandomStream::new(seed, 75);
        let fine = sample_batch(&base2, 20_000, |s| {
            simulate_subordinator_path(one_sided(0.7), 1.0, 1.0 / 1024.0, s)
                .expect("path")
                .terminal()
        });
        out.push(ks(
            "subordinator_refinement_ks",
            seed,
            ks_two_sample(&coarse, &fine, th).expect("ks"),
        ));
    }

    // marginal Laplace transform of the path: E exp(-S(0.5)) = exp(-0.5)
    {
        let base = RandomStream::new(seed, 76);
        let xs = sample_batch(&base, N, |s| {
            let path =
                simulate_subordinator_path(one_sided(0.7), 0.5, 1.0 / 64.0, s).expect("path");
            (-path.terminal()).exp()
        });
        out.push(moment(
            "subordinator_laplace_moment",
            seed,
            moment_zscore(&xs, (-0.5f64).exp()).expect("moment"),
        ));
    }

    // route equivalence: direct vs time-inversion vs positive-part
    for (ci, &alpha) in [1.25, 1.5, 1.8].iter().enumerate() {
        for (cj, &t) in [1.0, 2.0].iter().enumerate() {
            let sid = 80 + (2 * ci + cj) as u64 * 4;
            let direct = sample_batch(&RandomStream::new(seed, sid), N, |s| {
                sample_subdiffusion_direct(one_sided(1.0 / alpha), t, s).expect("sample")
            });
            let inv = sample_batch(&RandomStream::new(seed, sid + 1), N, |s| {
                sample_subdiffusion_dual(alpha, t, SubdiffusionRoute::TimeInversion, s)
                    .expect("sample")
            });
            let pos = sample_batch(&RandomStream::new(seed, sid + 2), N, |s| {
                sample_subdiffusion_dual(alpha, t, SubdiffusionRoute::StablePositivePart, s)
                    .expect("sample")
            });
            for (pair, a, b) in [
                ("direct_vs_inversion", &direct, &inv),
                ("direct_vs_positive", &direct, &pos),
                ("inversion_vs_positive", &inv, &pos),
            ] {
                out.push(ks(
                    &format!("subdiffusion_routes alpha={alpha} t={t} {pair}"),
                    seed,
                    ks_two_sample(a, b, th).expect("ks"),
                ));
            }
        }
    }

    // symmetry and the second-moment law E B(L_1)² = 2/Γ(1+α)
    {
        let base = RandomStream::new(seed, 95);
        let xs = sample_batch(&base, N, |s| {
            sample_subdiffusion_direct(one_sided(0.5), 1.0, s).expect("sample")
        });
        let flipped: Vec<f64> = xs.iter().map(|x| -x).collect();
        out.push(ks(
            "subdiffusion_symmetry_ks",
            seed,
            ks_two_sample(&xs, &flipped, th).expect("ks"),
        ));
        let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
        out.push(moment(
            "subdiffusion_second_moment",
            seed,
            moment_zscore(&sq, 2.0 / gamma_fn(1.5)).expect("moment"),
        ));
    }

    // α = 2 dual routes match the α' = 1/2 direct second moment
    {
        let base = RandomStream::new(seed, 96);
        let sq = sample_batch(&base, N, |s| {
            let x = sample_subdiffusion_dual(2.0, 1.0, SubdiffusionRoute::TimeInversion, s)
                .expect("sample");
            x * x
        });
        out.push(moment(
            "subdiffusion_alpha2_second_moment",
            seed,
            moment_zscore(&sq, 2.0 / gamma_fn(1.5)).expect("moment"),
        ));
    }

    // α -> 1 limit: L_t -> t, so B(L_1) -> N(0, 2)
    {
        let base = RandomStream::new(seed, 97);
        let xs = sample_batch(&base, N, |s| {
            sample_subdiffusion_direct(one_sided(0.999), 1.0, s).expect("sample")
        });
        let base2 = RandomStream::new(seed, 98);
        let gauss = sample_batch(&base2, N, |s| std::f64::consts::SQRT_2 * s.gaussian());
        out.push(ks(
            "subdiffusion_classical_limit_ks",
            seed,
            ks_two_sample(&xs, &gauss, th).expect("ks"),
        ));
    }

    out
}

pub fn pde_suite(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let (seed, th) = (opts.seed, opts.threshold_p);
    let mut out = Vec::new();

    // second moment of the estimated density: 2/Γ(1.5) within 2%
    {
        let est = estimate_pde_solution(
            one_sided(0.5),
            1.0,
            81,
            8.0,
            N,
            &RandomStream::new(seed, 100),
        )
        .expect("estimate");
        let w = est.bin_width();
        let m2: f64 = est
            .density
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mid = 0.5 * (est.x_grid[i] + est.x_grid[i + 1]);
                mid * mid * d * w
            })
            .sum();
        let target = 2.0 / gamma_fn(1.5);
        out.push(tolerance(
            "pde_second_moment",
            seed,
            (m2 - target).abs(),
            0.02 * target,
        ));
        out.push(tolerance(
            "pde_mass_accounting",
            seed,
            (est.total_mass() + est.out_of_range_mass - 1.0).abs(),
            1e-12,
        ));
    }

    // α -> 1: histogram matches the heat kernel e^{-x²/4t}/√(4πt)
    {
        let est = estimate_pde_solution(
            one_sided(0.999),
            1.0,
            81,
            8.0,
            N,
            &RandomStream::new(seed, 101),
        )
        .expect("estimate");
        let w = est.bin_width();
        let mut dev = 0.0f64;
        for (i, d) in est.density.iter().enumerate() {
            let mid = -8.0 + (i as f64 + 0.5) * w;
            let kernel = (-mid * mid / 4.0).exp() / (4.0 * PI).sqrt();
            dev = dev.max((d - kernel).abs());
        }
        let tol = 5.0 * (81.0 / N as f64).sqrt();
        out.push(tolerance("pde_heat_kernel", seed, dev, tol));
    }

    // subordinate BM: ch.f. exp(-t |ξ|^{2/α}) at α = 3/2
    for (i, &t) in [1.0, 2.0].iter().enumerate() {
        let base = RandomStream::new(seed, 102 + i as u64);
        let xs = sample_batch(&base, N, |s| {
            sample_subordinate_bm(1.5, t, s).expect("sample")
        });
        let points = ecf_check(&xs, &[0.5, 1.0, 2.0], |xi| {
            Complex64::new((-t * xi.abs().powf(4.0 / 3.0)).exp(), 0.0)
        })
        .expect("ecf");
        out.push(ecf(&format!("subordinate_bm_ecf t={t}"), seed, points));

        // the same law is t^{α/2} times a symmetric (2/α)-stable variate
        let p = StrictStableParams::new(4.0 / 3.0, 0.5).expect("params");
        let scale = t.powf(0.75);
        let base2 = RandomStream::new(seed, 104 + i as u64);
        let stable = sample_batch(&base2, N, |s| {
            scale * sample_strictly_stable(p, s).expect("sample")
        });
        out.push(ks(
            &format!("subordinate_bm_stable_ks t={t}"),
            seed,
            ks_two_sample(&xs, &stable, th).expect("ks"),
        ));
    }

    // α -> 1 limit of the subordinator: ch.f. -> e^{-ξ²}
    {
        let base = RandomStream::new(seed, 106);
        let xs = sample_batch(&base, N, |s| {
            sample_subordinate_bm(1.001, 1.0, s).expect("sample")
        });
        let points = ecf_check(&xs, &[0.5, 1.0, 2.0], |xi| {
            Complex64::new((-xi * xi).exp(), 0.0)
        })
        .expect("ecf");
        out.push(ecf("subordinate_bm_classical_limit_ecf", seed, points));
    }

    out
}
