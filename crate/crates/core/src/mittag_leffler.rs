//! Two- and three-parameter Mittag-Leffler functions on the real line, and
//! the positive-Linnik / fractional-Poisson closed forms built from them.
//!
//! `E_{ξ,μ}(z) = Σ_k z^k / Γ(ξk + μ)` and its Prabhakar generalization
//! `E^γ_{ξ,μ}(z) = Σ_k (γ)_k z^k / (k! Γ(ξk + μ))` are evaluated by one of
//! three routes, recorded in [`EvalResult::regime`]:
//!
//! * power series with compensated summation, used whenever its internally
//!   estimated error meets target (always the case for |z| ≲ 7^ξ);
//! * the algebraic asymptotic expansion `-Σ_k z^{-k}/Γ(μ - ξk)` for large
//!   negative z, plus the oscillatory saddle term when ξ ≥ 1;
//! * a Bromwich integral over a parabolic contour (trapezoid rule on
//!   `s = λ(1+iu)²`, cf. Weideman & Trefethen 2007) for 0 < ξ < 1, z < 0.
//!   This is the only route that survives the cancellation band between the
//!   series and asymptotic regimes, where alternating-series amplification
//!   reaches e^{|z|^{1/ξ}}.
//!
//! Every evaluation reports an error estimate intended to bound the true
//! error; the estimates are checked against 300-digit reference values in
//! the test suite.

use crate::stable_rng::{LinnikParams, OneSidedIndex};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma, ln_gamma};
use std::f64::consts::PI;
use thiserror::Error;

const EPS: f64 = f64::EPSILON;
const SERIES_TERM_CAP: usize = 10_000;
const ASYM_TERM_CAP: usize = 400;
/// Absolute error target below which a cheap regime is accepted outright.
const ACCEPT_ABS: f64 = 1e-11;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "series did not converge within {terms_used} terms \
         (partial value {partial_value:e}, accumulated magnitude {sum_abs:e})"
    )]
    NonConvergence {
        terms_used: usize,
        partial_value: f64,
        sum_abs: f64,
    },
}

/// Which evaluation route produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Series,
    Asymptotic,
    ClosedForm,
    Integral,
}

/// Value of a Mittag-Leffler evaluation together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub est_abs_error: f64,
    pub terms_used: usize,
    pub regime: Regime,
}

/// Validated arguments of the three-parameter (Prabhakar) function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLArgs {
    pub xi: f64,
    pub mu_param: f64,
    pub gamma_param: f64,
    pub z: f64,
}

impl MLArgs {
    pub fn new(xi: f64, mu_param: f64, gamma_param: f64, z: f64) -> Result<Self, EvalError> {
        if !(xi > 0.0 && xi <= 2.0) {
            return Err(EvalError::InvalidParameter(format!(
                "xi must lie in (0, 2], got {xi}"
            )));
        }
        if !(mu_param > 0.0 && mu_param.is_finite()) {
            return Err(EvalError::InvalidParameter(format!(
                "mu_param must be positive, got {mu_param}"
            )));
        }
        if !(gamma_param > 0.0 && gamma_param.is_finite()) {
            return Err(EvalError::InvalidParameter(format!(
                "gamma_param must be positive, got {gamma_param}"
            )));
        }
        if !z.is_finite() {
            return Err(EvalError::InvalidParameter(format!(
                "z must be finite, got {z}"
            )));
        }
        Ok(Self {
            xi,
            mu_param,
            gamma_param,
            z,
        })
    }
}

/// sin(πx) with the argument reduced before the multiplication by π, so
/// integer x gives exactly 0 and near-integer x keeps full precision.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let s = (PI * (x - n)).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// sign and log-magnitude of 1/Γ(x), valid for all real x.
///
/// Non-positive integer x gives (0, -inf): 1/Γ is entire with zeros there.
fn recip_gamma_parts(x: f64) -> (f64, f64) {
    if x > 0.0 {
        (1.0, -ln_gamma(x))
    } else {
        // reflection: 1/Γ(x) = sin(πx) Γ(1-x) / π
        let s = sin_pi(x);
        if s == 0.0 {
            (0.0, f64::NEG_INFINITY)
        } else {
            (s.signum(), s.abs().ln() + ln_gamma(1.0 - x) - PI.ln())
        }
    }
}

struct RouteOut {
    value: f64,
    est: f64,
    terms: usize,
}

/// Compensated (Neumaier) power-series summation.
///
/// Returns `Err` only on term-cap exhaustion; hopeless cancellation or
/// imminent overflow is reported through `est = inf` so callers can fall
/// back to another route.
fn prabhakar_series(xi: f64, mu: f64, gamma_p: f64, z: f64) -> Result<RouteOut, EvalError> {
    let ln_gamma_g = ln_gamma(gamma_p);
    let ln_abs_z = if z == 0.0 {
        f64::NEG_INFINITY
    } else {
        z.abs().ln()
    };
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut err_acc = 0.0f64;
    let mut prev_abs = f64::INFINITY;
    let mut last_abs = 0.0f64;
    for k in 0..SERIES_TERM_CAP {
        let kf = k as f64;
        // each term is exp of a difference of log-gammas; its relative
        // error scales with the magnitudes of the pieces, not the result
        let (ln_num, num_mag) = if gamma_p == 1.0 {
            (0.0, 0.0)
        } else {
            let a = ln_gamma(gamma_p + kf);
            let b = ln_gamma(kf + 1.0);
            (a - ln_gamma_g - b, a.abs() + ln_gamma_g.abs() + b.abs())
        };
        let ln_gd = ln_gamma(xi * kf + mu);
        let mut t = if k == 0 {
            (-ln_gamma(mu)).exp()
        } else {
            (ln_num + kf * ln_abs_z - ln_gd).exp()
        };
        if z < 0.0 && k % 2 == 1 {
            t = -t;
        }
        let t_abs = t.abs();
        let comp_mag = num_mag + (kf * ln_abs_z).abs() + ln_gd.abs();
        err_acc += (12.0 + 4.0 * comp_mag) * t_abs;
        sum_abs += t_abs;
        let y = sum + t;
        comp += if sum.abs() >= t_abs {
            (sum - y) + t
        } else {
            (t - y) + sum
        };
        sum = y;
        if sum_abs > 1e280 {
            return Ok(RouteOut {
                value: sum + comp,
                est: f64::INFINITY,
                terms: k + 1,
            });
        }
        if k >= 2 && t_abs <= prev_abs && t_abs < 1e-18 * (1.0 + sum.abs()) {
            let value = sum + comp;
            let est = EPS * (4.0 * sum_abs + err_acc) + 2.0 * t_abs;
            return Ok(RouteOut {
                value,
                est,
                terms: k + 1,
            });
        }
        prev_abs = t_abs;
        last_abs = t_abs;
    }
    Err(EvalError::NonConvergence {
        terms_used: SERIES_TERM_CAP,
        partial_value: sum + comp,
        sum_abs: sum_abs.max(last_abs),
    })
}

/// Algebraic asymptotic expansion at z = -x, truncated at its smallest term,
/// plus the exponentially damped oscillatory contribution for ξ ≥ 1.
fn ml_asymptotic(xi: f64, mu: f64, x: f64) -> Option<RouteOut> {
    if x < 1.5 {
        return None;
    }
    let ln_x = x.ln();
    let mut sum = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut err_acc = 0.0f64;
    let mut prev_abs = f64::INFINITY;
    let mut trunc = 0.0f64;
    let mut terms = 0usize;
    for k in 1..=ASYM_TERM_CAP {
        let kf = k as f64;
        let (sign, ln_rg) = recip_gamma_parts(mu - xi * kf);
        if sign == 0.0 {
            // pole of Γ(μ-ξk): the term vanishes identically; not a
            // convergence signal
            continue;
        }
        let a_abs = (ln_rg - kf * ln_x).exp();
        if a_abs > prev_abs {
            trunc = a_abs;
            break;
        }
        // term: -(-x)^{-k} / Γ(μ-ξk) = (-1)^{k+1} x^{-k} / Γ(μ-ξk)
        let t = if k % 2 == 1 {
            sign * a_abs
        } else {
            -sign * a_abs
        };
        sum += t;
        sum_abs += a_abs;
        err_acc += (12.0 + 4.0 * (ln_rg.abs() + (kf * ln_x).abs())) * a_abs;
        prev_abs = a_abs;
        trunc = a_abs;
        terms = k;
        if a_abs < 1e-19 {
            break;
        }
    }
    let mut osc = 0.0f64;
    let mut osc_est = 0.0f64;
    if xi >= 1.0 {
        let w = x.powf(1.0 / xi);
        let amp_ln = (1.0 - mu) / xi * ln_x + w * (PI / xi).cos();
        if amp_ln < 700.0 {
            let phase = w * (PI / xi).sin() + PI * (1.0 - mu) / xi;
            let amp = amp_ln.exp();
            osc = if xi == 1.0 {
                // single Stokes-line branch
                amp * (PI * (1.0 - mu)).cos()
            } else {
                2.0 / xi * amp * phase.cos()
            };
            osc_est = amp * (12.0 + 4.0 * (amp_ln.abs() + w)) * EPS;
        }
    }
    // remainder of an optimally truncated asymptotic series is of the order
    // of the first omitted term; factor 2 gives the observed margin
    let est = 2.0 * trunc + osc_est + EPS * (4.0 * sum_abs + err_acc);
    Some(RouteOut {
        value: sum + osc,
        est,
        terms,
    })
}

/// Bromwich inversion of `s^{ξγ-μ} (s^ξ - z)^{-γ}` on the parabola
/// `s = λ(1+iu)²`. Valid for z < 0, 0 < ξ < 1 (all singularities of the
/// integrand then sit on the branch cut enclosed by the contour).
fn contour_sum(f: impl Fn(Complex64) -> Complex64) -> RouteOut {
    const LAMBDA: f64 = 2.0;
    const U_MAX: f64 = 8.0;
    const N: usize = 400;
    let h = U_MAX / N as f64;
    let eval = |u: f64| -> (f64, f64) {
        let iu1 = Complex64::new(1.0, u);
        let s = LAMBDA * iu1 * iu1;
        let v = f(s) * iu1;
        (v.re, v.norm())
    };
    let (f0, m0) = eval(0.0);
    let mut fine = 0.0f64;
    let mut coarse = 0.0f64;
    let mut mag = m0;
    for j in 1..=N {
        let (re, m) = eval(j as f64 * h);
        fine += re;
        mag += 2.0 * m;
        if j % 2 == 0 {
            coarse += re;
        }
    }
    let scale = LAMBDA * h / PI;
    let i_fine = scale * (f0 + 2.0 * fine);
    let i_coarse = 2.0 * scale * (f0 + 2.0 * coarse);
    let est = (i_fine - i_coarse).abs() + 16.0 * EPS * scale * mag;
    RouteOut {
        value: i_fine,
        est,
        terms: N + 1,
    }
}

fn contour_ml(xi: f64, mu: f64, gamma_p: f64, x: f64) -> RouteOut {
    contour_sum(|s| s.exp() * s.powf(xi * gamma_p - mu) * (s.powf(xi) + x).powf(-gamma_p))
}

/// Two-parameter Mittag-Leffler function `E_{ξ,μ}(z)`.
pub fn ml_two(xi: f64, mu_param: f64, z: f64) -> Result<EvalResult, EvalError> {
    MLArgs::new(xi, mu_param, 1.0, z)?;
    ml_impl(xi, mu_param, 1.0, z)
}

/// Three-parameter (Prabhakar) function `E^γ_{ξ,μ}(z)`.
pub fn ml_three(args: MLArgs) -> Result<EvalResult, EvalError> {
    ml_impl(args.xi, args.mu_param, args.gamma_param, args.z)
}

fn ml_impl(xi: f64, mu: f64, gamma_p: f64, z: f64) -> Result<EvalResult, EvalError> {
    if z == 0.0 {
        let value = (-ln_gamma(mu)).exp();
        return Ok(EvalResult {
            value,
            est_abs_error: 4.0 * EPS * value.abs(),
            terms_used: 1,
            regime: Regime::ClosedForm,
        });
    }
    // cancellation in the alternating series scales like e^{|z|^{1/ξ}};
    // past e^40 no f64 summation can meet target, so skip straight to the
    // other representations
    let hopeless = z < 0.0 && (-z).powf(1.0 / xi) > 40.0;
    let series: Option<RouteOut> = if hopeless {
        None
    } else {
        match prabhakar_series(xi, mu, gamma_p, z) {
            Ok(out) => Some(out),
            Err(e) if z > 0.0 => return Err(e),
            Err(_) => None,
        }
    };
    if let Some(ref out) = series {
        if out.est <= ACCEPT_ABS * (1.0 + out.value.abs()) {
            return Ok(EvalResult {
                value: out.value,
                est_abs_error: out.est,
                terms_used: out.terms,
                regime: Regime::Series,
            });
        }
    }
    if z > 0.0 {
        // no alternative representation on the positive axis; a finite
        // series result (however large) is exact up to roundoff in the sum
        return match series {
            Some(out) if out.est.is_finite() => Ok(EvalResult {
                value: out.value,
                est_abs_error: out.est,
                terms_used: out.terms,
                regime: Regime::Series,
            }),
            Some(out) => Err(EvalError::NonConvergence {
                terms_used: out.terms,
                partial_value: out.value,
                sum_abs: f64::INFINITY,
            }),
            None => Err(EvalError::NonConvergence {
                terms_used: 0,
                partial_value: f64::NAN,
                sum_abs: f64::INFINITY,
            }),
        };
    }
    let x = -z;
    let asym = if gamma_p == 1.0 {
        ml_asymptotic(xi, mu, x)
    } else {
        None
    };
    if let Some(ref out) = asym {
        if out.est <= ACCEPT_ABS * (1.0 + out.value.abs()) {
            return Ok(EvalResult {
                value: out.value,
                est_abs_error: out.est,
                terms_used: out.terms,
                regime: Regime::Asymptotic,
            });
        }
    }
    if xi < 1.0 {
        let out = contour_ml(xi, mu, gamma_p, x);
        return Ok(EvalResult {
            value: out.value,
            est_abs_error: out.est,
            terms_used: out.terms,
            regime: Regime::Integral,
        });
    }
    // ξ ≥ 1 between the series and asymptotic regimes: return whichever
    // route carries the smaller (honestly reported) estimate
    let series_out = series.filter(|o| o.est.is_finite());
    match (series_out, asym) {
        (Some(s), Some(a)) => {
            let (out, regime) = if s.est <= a.est {
                (s, Regime::Series)
            } else {
                (a, Regime::Asymptotic)
            };
            Ok(EvalResult {
                value: out.value,
                est_abs_error: out.est,
                terms_used: out.terms,
                regime,
            })
        }
        (Some(s), None) => Ok(EvalResult {
            value: s.value,
            est_abs_error: s.est,
            terms_used: s.terms,
            regime: Regime::Series,
        }),
        (None, Some(a)) => Ok(EvalResult {
            value: a.value,
            est_abs_error: a.est,
            terms_used: a.terms,
            regime: Regime::Asymptotic,
        }),
        (None, None) => Err(EvalError::NonConvergence {
            terms_used: SERIES_TERM_CAP,
            partial_value: f64::NAN,
            sum_abs: f64::INFINITY,
        }),
    }
}

/// Density `μ t^{ν-1} E_{ν,ν}(-μ t^ν)` of the positive Linnik law.
pub fn linnik_density(params: LinnikParams, t: f64) -> Result<f64, EvalError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(EvalError::InvalidParameter(format!(
            "density requires t > 0, got {t}"
        )));
    }
    let (nu, mu) = (params.nu(), params.mu());
    let ml = ml_two(nu, nu, -mu * t.powf(nu))?;
    Ok(mu * t.powf(nu - 1.0) * ml.value)
}

/// CDF `1 - E_{ν,1}(-μ t^ν)` of the positive Linnik law.
pub fn linnik_cdf(params: LinnikParams, t: f64) -> Result<f64, EvalError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(EvalError::InvalidParameter(format!(
            "cdf requires t > 0, got {t}"
        )));
    }
    let (nu, mu) = (params.nu(), params.mu());
    let ml = ml_two(nu, 1.0, -mu * t.powf(nu))?;
    Ok((1.0 - ml.value).clamp(0.0, 1.0))
}

/// State probability `P{N^ν(t) = k} = (μt^ν)^k E^{k+1}_{ν,νk+1}(-μt^ν)` of
/// the fractional Poisson process.
///
/// ν = 1 reduces to the Poisson pmf. For ν < 1 the Prabhakar series is used
/// when it meets target accuracy; otherwise the probability is produced by
/// the parabolic-contour inversion with the `(μt^ν)^k` prefactor folded into
/// the integrand, which stays bounded for every k.
pub fn frac_poisson_pmf(nu: OneSidedIndex, mu: f64, t: f64, k: usize) -> Result<f64, EvalError> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(EvalError::InvalidParameter(format!(
            "rate must be positive, got {mu}"
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(EvalError::InvalidParameter(format!(
            "pmf requires t > 0, got {t}"
        )));
    }
    let nu = nu.get();
    if nu == 1.0 {
        let lambda = mu * t;
        let kf = k as f64;
        return Ok((kf * lambda.ln() - lambda - ln_gamma(kf + 1.0)).exp());
    }
    let x = mu * t.powf(nu);
    let ln_xk = k as f64 * x.ln();
    if ln_xk < 280.0 && x.powf(1.0 / nu) <= 40.0 {
        if let Ok(out) = prabhakar_series(nu, nu * k as f64 + 1.0, k as f64 + 1.0, -x) {
            let xk = ln_xk.exp();
            let pmf = xk * out.value;
            if xk * out.est <= 1e-12 * (1.0 + pmf.abs()) {
                return Ok(pmf.clamp(0.0, 1.0));
            }
        }
    }
    let ki = i32::try_from(k)
        .map_err(|_| EvalError::InvalidParameter(format!("state index {k} out of range")))?;
    let out = contour_sum(|s| {
        let d = s.powf(nu) + x;
        let q = x / d;
        s.exp() * s.powf(nu - 1.0) * q.powi(ki) / d
    });
    Ok(out.value.clamp(0.0, 1.0))
}

/// CDF `erfc(1/(2√t))` of the unit one-sided 1/2-stable (Lévy) law.
///
/// Closed-form oracle for the ν = 1/2 sampler tests; returns 0 for t ≤ 0.
pub fn levy_cdf(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    erfc(1.0 / (2.0 * t.sqrt()))
}

/// Γ(x) for positive x, re-exported where samplers and tests need moment
/// targets like t^α/Γ(1+α).
pub fn gamma_fn(x: f64) -> f64 {
    gamma(x)
}
