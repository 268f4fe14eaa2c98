//! Goodness-of-fit machinery: one- and two-sample Kolmogorov-Smirnov tests,
//! a chi-square test against a pmf with tail pooling, empirical
//! characteristic function checks, and moment z-scores.
//!
//! KS p-values use the asymptotic Kolmogorov distribution (the alternating
//! series of Press et al. 2007, with the theta-function dual form for small
//! arguments); every suite in this crate runs at n >= 10^4 where the
//! asymptotic regime is accurate. All reports serialize to JSON as-is.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatError {
    #[error("need at least {needed} samples, got {got}")]
    ShortInput { needed: usize, got: usize },
    #[error("samples contain non-finite values")]
    NonFinite,
    #[error("counts sum to {got}, expected {expected}")]
    CountMismatch { expected: u64, got: u64 },
    #[error("zero sample variance with mean {mean} != target {target}")]
    ZeroVariance { mean: f64, target: f64 },
    #[error("pooling left fewer than 2 bins with expected count >= 5")]
    DegeneratePooling,
    #[error("pmf is not normalized over the tested support (mass {0})")]
    InvalidPmf(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub statistic: f64,
    pub p_value: f64,
    pub n1: usize,
    /// 0 for a one-sample test.
    pub n2: usize,
    pub passed: bool,
    pub threshold_p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub pooled_bins: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub empirical: f64,
    pub target: f64,
    pub z_score: f64,
    pub n: usize,
    pub passed: bool,
}

/// One entry of an empirical characteristic function check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EcfPoint {
    pub xi: f64,
    pub ecf_re: f64,
    pub ecf_im: f64,
    pub target_re: f64,
    pub target_im: f64,
    pub abs_dev: f64,
    pub threshold: f64,
    pub n: usize,
    pub passed: bool,
}

/// Complement of the asymptotic Kolmogorov CDF at λ = D·√n_eff.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 1e-8 {
        return 1.0;
    }
    if lambda < 1.18 {
        let t = (-PI * PI / (8.0 * lambda * lambda)).exp();
        let cdf = (2.0 * PI).sqrt() / lambda * (t + t.powi(9) + t.powi(25) + t.powi(49));
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let t = (-2.0 * lambda * lambda).exp();
        (2.0 * (t - t.powi(4) + t.powi(9) - t.powi(16))).clamp(0.0, 1.0)
    }
}

/// Asymptotic KS p-value for statistic `d` at effective sample size `n_eff`
/// (n for one-sample, n1·n2/(n1+n2) for two-sample).
pub fn ks_p_value(d: f64, n_eff: f64) -> f64 {
    kolmogorov_q(d * n_eff.sqrt())
}

fn check_finite(samples: &[f64]) -> Result<(), StatError> {
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(StatError::NonFinite);
    }
    Ok(())
}

fn sorted(samples: &[f64]) -> Vec<f64> {
    let mut v = samples.to_vec();
    v.sort_unstable_by(|a, b| a.total_cmp(b));
    v
}

/// One-sample KS test of `samples` against the CDF handle `cdf`.
pub fn ks_one_sample(
    samples: &[f64],
    cdf: impl Fn(f64) -> f64,
    threshold_p: f64,
) -> Result<KsReport, StatError> {
    let n = samples.len();
    if n < 100 {
        return Err(StatError::ShortInput {
            needed: 100,
            got: n,
        });
    }
    check_finite(samples)?;
    let xs = sorted(samples);
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / nf).max((i + 1) as f64 / nf - f);
    }
    let p_value = ks_p_value(d, nf);
    Ok(KsReport {
        statistic: d,
        p_value,
        n1: n,
        n2: 0,
        passed: p_value > threshold_p,
        threshold_p,
    })
}

/// Two-sample KS test; ties are handled by advancing both empirical CDFs
/// through equal values before the gap is measured.
pub fn ks_two_sample(a: &[f64], b: &[f64], threshold_p: f64) -> Result<KsReport, StatError> {
    let (n1, n2) = (a.len(), b.len());
    if n1 < 100 || n2 < 100 {
        return Err(StatError::ShortInput {
            needed: 100,
            got: n1.min(n2),
        });
    }
    check_finite(a)?;
    check_finite(b)?;
    let xs = sorted(a);
    let ys = sorted(b);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n1 && j < n2 {
        let v = xs[i].min(ys[j]);
        while i < n1 && xs[i] == v {
            i += 1;
        }
        while j < n2 && ys[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n1 as f64 - j as f64 / n2 as f64).abs());
    }
    let n_eff = (n1 as f64) * (n2 as f64) / (n1 + n2) as f64;
    let p_value = ks_p_value(d, n_eff);
    Ok(KsReport {
        statistic: d,
        p_value,
        n1,
        n2,
        passed: p_value > threshold_p,
        threshold_p,
    })
}

/// Chi-square test of observed `counts[k]` (k = 0, 1, …) against `pmf`,
/// pooling the tail into one bin until every bin has expected count >= 5.
/// The pooled tail absorbs all pmf mass beyond the observed support, so
/// expected counts sum to n exactly.
pub fn chi_square_pmf(
    counts: &[u64],
    pmf: impl Fn(usize) -> f64,
    n: u64,
    threshold_p: f64,
) -> Result<ChiSquareReport, StatError> {
    let total: u64 = counts.iter().sum();
    if total != n {
        return Err(StatError::CountMismatch {
            expected: n,
            got: total,
        });
    }
    let nf = n as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut cum_p = 0.0f64;
    let mut k = 0usize;
    while k < counts.len() {
        let p = pmf(k);
        let e = nf * p;
        if e < 5.0 {
            break;
        }
        bins.push((counts[k] as f64, e));
        cum_p += p;
        k += 1;
    }
    if cum_p > 1.0 + 1e-8 {
        return Err(StatError::InvalidPmf(cum_p));
    }
    let rest_obs: f64 = counts[k..].iter().sum::<u64>() as f64;
    let rest_exp = (nf * (1.0 - cum_p)).max(0.0);
    if rest_exp >= 5.0 {
        bins.push((rest_obs, rest_exp));
    } else if let Some(last) = bins.last_mut() {
        last.0 += rest_obs;
        last.1 += rest_exp;
    }
    if bins.len() < 2 {
        return Err(StatError::DegeneratePooling);
    }
    let statistic: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = bins.len() - 1;
    let p_value = gamma_ur(dof as f64 / 2.0, statistic / 2.0);
    Ok(ChiSquareReport {
        statistic,
        dof,
        p_value,
        pooled_bins: bins.len(),
        passed: p_value > threshold_p,
    })
}

/// Empirical characteristic function check: per frequency ξ the modulus of
/// `mean e^{iξX} - target(ξ)` must stay below 5/√n.
pub fn ecf_check(
    samples: &[f64],
    xi_values: &[f64],
    target: impl Fn(f64) -> Complex64,
) -> Result<Vec<EcfPoint>, StatError> {
    let n = samples.len();
    if n < 10_000 {
        return Err(StatError::ShortInput {
            needed: 10_000,
            got: n,
        });
    }
    check_finite(samples)?;
    let nf = n as f64;
    let threshold = 5.0 / nf.sqrt();
    Ok(xi_values
        .iter()
        .map(|&xi| {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for &x in samples {
                let (s, c) = (xi * x).sin_cos();
                re += c;
                im += s;
            }
            let ecf = Complex64::new(re / nf, im / nf);
            let tgt = target(xi);
            let abs_dev = (ecf - tgt).norm();
            EcfPoint {
                xi,
                ecf_re: ecf.re,
                ecf_im: ecf.im,
                target_re: tgt.re,
                target_im: tgt.im,
                abs_dev,
                threshold,
                n,
                passed: abs_dev <= threshold,
            }
        })
        .collect())
}

/// z-score of the sample mean against `target`; passes iff |z| <= 4.
///
/// Callers are responsible for applying this only to finite-variance
/// quantities (heavy-tailed variates enter the suites through bounded
/// transforms only).
pub fn moment_zscore(samples: &[f64], target: f64) -> Result<MomentReport, StatError> {
    let n = samples.len();
    if n < 10_000 {
        return Err(StatError::ShortInput {
            needed: 10_000,
            got: n,
        });
    }
    check_finite(samples)?;
    let nf = n as f64;
    let mean = samples.iter().sum::<f64>() / nf;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (nf - 1.0);
    let sd = var.sqrt();
    if sd == 0.0 {
        if mean == target {
            return Ok(MomentReport {
                empirical: mean,
                target,
                z_score: 0.0,
                n,
                passed: true,
            });
        }
        return Err(StatError::ZeroVariance { mean, target });
    }
    let z_score = (mean - target) / (sd / nf.sqrt());
    Ok(MomentReport {
        empirical: mean,
        target,
        z_score,
        n,
        passed: z_score.abs() <= 4.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::RandomStream;
    use statrs::function::erf::erfc;

    fn normal_cdf(x: f64) -> f64 {
        0.5 * erfc(-x / std::f64::consts::SQRT_2)
    }

    fn poisson_draw(lambda: f64, s: &mut RandomStream) -> usize {
        // Knuth product method; fine for the small rates used in tests
        let limit = (-lambda).exp();
        let mut k = 0usize;
        let mut p = 1.0;
        loop {
            p *= s.uniform_open();
            if p <= limit {
                return k;
            }
            k += 1;
        }
    }

    #[test]
    fn ks_one_sample_quantile_construction() {
        let n = 10_000;
        let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let r = ks_one_sample(&xs, |x| x, 0.001).unwrap();
        assert!(r.statistic <= 1.0 / n as f64);
        assert!(r.passed);
    }

    #[test]
    fn ks_one_sample_null_passes() {
        let mut s = RandomStream::new(31, 0);
        let xs: Vec<f64> = (0..20_000).map(|_| s.uniform_open()).collect();
        let r = ks_one_sample(&xs, |x| x.clamp(0.0, 1.0), 0.001).unwrap();
        assert!(r.passed, "p = {}", r.p_value);
        assert_eq!(r.n2, 0);
    }

    #[test]
    fn ks_one_sample_detects_mean_shift() {
        let mut s = RandomStream::new(32, 0);
        let xs: Vec<f64> = (0..10_000).map(|_| s.gaussian()).collect();
        let r = ks_one_sample(&xs, |x| normal_cdf(x - 0.5), 0.001).unwrap();
        assert!(!r.passed);
        assert!(r.p_value < 1e-6, "p = {}", r.p_value);
    }

    #[test]
    fn ks_two_sample_identical_inputs() {
        let xs: Vec<f64> = (0..500).map(|i| i as f64).collect();
        let r = ks_two_sample(&xs, &xs, 0.001).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn ks_two_sample_null_and_power() {
        let mut s = RandomStream::new(33, 0);
        let a: Vec<f64> = (0..20_000).map(|_| s.gaussian()).collect();
        let b: Vec<f64> = (0..20_000).map(|_| s.gaussian()).collect();
        assert!(ks_two_sample(&a, &b, 0.001).unwrap().passed);
        let cauchy: Vec<f64> = (0..10_000)
            .map(|_| (PI * (s.uniform_open() - 0.5)).tan())
            .collect();
        let r = ks_two_sample(&a[..10_000], &cauchy, 0.001).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn ks_rejects_short_or_nonfinite_input() {
        let xs = vec![0.5; 10];
        assert!(matches!(
            ks_one_sample(&xs, |x| x, 0.001),
            Err(StatError::ShortInput { .. })
        ));
        let mut ys = vec![0.5; 200];
        ys[7] = f64::NAN;
        assert!(matches!(
            ks_one_sample(&ys, |x| x, 0.001),
            Err(StatError::NonFinite)
        ));
    }

    fn poisson_pmf(lambda: f64) -> impl Fn(usize) -> f64 {
        move |k| {
            let kf = k as f64;
            (kf * lambda.ln() - lambda - statrs::function::gamma::ln_gamma(kf + 1.0)).exp()
        }
    }

    #[test]
    fn chi_square_synthetic_counts_pass() {
        let n = 100_000u64;
        let pmf = poisson_pmf(3.0);
        let mut counts: Vec<u64> = (0..15)
            .map(|k| (n as f64 * pmf(k)).round() as u64)
            .collect();
        let assigned: u64 = counts.iter().sum();
        counts[3] += n - assigned; // absorb rounding into the modal bin
        let r = chi_square_pmf(&counts, pmf, n, 0.001).unwrap();
        assert!(r.passed);
        assert!(r.statistic < 1.0, "stat = {}", r.statistic);
        assert_eq!(r.dof, r.pooled_bins - 1);
    }

    #[test]
    fn chi_square_null_and_power() {
        let mut s = RandomStream::new(34, 0);
        let n = 100_000usize;
        let mut counts = vec![0u64; 30];
        for _ in 0..n {
            let k = poisson_draw(3.0, &mut s).min(29);
            counts[k] += 1;
        }
        let good = chi_square_pmf(&counts, poisson_pmf(3.0), n as u64, 0.001).unwrap();
        assert!(good.passed, "p = {}", good.p_value);
        let bad = chi_square_pmf(&counts, poisson_pmf(4.0), n as u64, 0.001).unwrap();
        assert!(!bad.passed);
    }

    #[test]
    fn chi_square_validates_counts() {
        let pmf = poisson_pmf(3.0);
        assert!(matches!(
            chi_square_pmf(&[10, 10], pmf, 25, 0.001),
            Err(StatError::CountMismatch { .. })
        ));
    }

    #[test]
    fn ecf_constant_samples_are_exact() {
        let xs = vec![0.0; 10_000];
        let pts = ecf_check(&xs, &[0.5, 1.0, 2.0], |_| Complex64::new(1.0, 0.0)).unwrap();
        for p in pts {
            assert_eq!(p.abs_dev, 0.0);
            assert!(p.passed);
        }
    }

    #[test]
    fn ecf_gaussian_null_and_power() {
        let mut s = RandomStream::new(35, 0);
        let xs: Vec<f64> = (0..100_000)
            .map(|_| std::f64::consts::SQRT_2 * s.gaussian())
            .collect();
        let pts = ecf_check(&xs, &[1.0], |xi| Complex64::new((-xi * xi).exp(), 0.0)).unwrap();
        assert!(pts[0].passed, "dev = {}", pts[0].abs_dev);
        let bad = ecf_check(&xs, &[2.0], |xi| Complex64::new((-xi.abs()).exp(), 0.0)).unwrap();
        assert!(!bad[0].passed);
    }

    #[test]
    fn moment_zscore_cases() {
        let xs = vec![1.5; 10_000];
        let r = moment_zscore(&xs, 1.5).unwrap();
        assert_eq!(r.z_score, 0.0);
        assert!(r.passed);
        assert!(matches!(
            moment_zscore(&xs, 1.6),
            Err(StatError::ZeroVariance { .. })
        ));

        let mut s = RandomStream::new(36, 0);
        let exp: Vec<f64> = (0..100_000).map(|_| s.exp_std()).collect();
        assert!(moment_zscore(&exp, 1.0).unwrap().passed);
        // 5 sigma separation: Exp(1) mean against 1.05 at n = 10^6
        let exp_big: Vec<f64> = (0..1_000_000).map(|_| s.exp_std()).collect();
        let r = moment_zscore(&exp_big, 1.05).unwrap();
        assert!(!r.passed, "z = {}", r.z_score);
    }

    #[test]
    fn reports_serialize_deterministically() {
        let xs: Vec<f64> = (0..200).map(|i| i as f64 / 200.0).collect();
        let r = ks_one_sample(&xs, |x| x, 0.001).unwrap();
        let a = serde_json::to_string(&r).unwrap();
        let b = serde_json::to_string(&r).unwrap();
        assert_eq!(a, b);
        let back: KsReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back, r);
    }
}
