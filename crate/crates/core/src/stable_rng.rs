//! Random variates for stable and stable-derived laws.
//!
//! Normalization: every law here has unit scale in the sense that the
//! one-sided index-ν law has Laplace transform `E exp(-λ S_ν) = exp(-λ^ν)`
//! and the symmetric index-α law has characteristic function `exp(-|ξ|^α)`.
//! A strictly stable law is parametrized by `(α, ρ)` where `ρ = P{S > 0}`
//! is the positivity parameter; the skewness β of the usual
//! Chambers-Mallows-Stuck parametrization is an internal detail, bridged by
//! [`rho_to_beta`] / [`beta_to_rho`].
//!
//! One-sided sampling is Kanter's method (Kanter 1975); two-sided sampling
//! is the Chambers-Mallows-Stuck construction (Chambers, Mallows & Stuck
//! 1976) rewritten in `(α, ρ)` so that the shift angle is `π(ρ - 1/2)` and
//! no rescaling constant is needed.

use crate::stream::RandomStream;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Uniform draws this close to {0, 1} are rejected and redrawn before they
/// enter a trigonometric formula.
const ENDPOINT_GUARD: f64 = 1e-12;

/// Magnitudes with |ln x| at or above this are resampled instead of
/// overflowing to inf / underflowing to 0 (truncates mass < 1e-15 per draw
/// at the most extreme supported indices).
const MAX_LN_MAGNITUDE: f64 = 708.0;

/// Attempts allowed when conditioning a two-sided draw on positivity.
pub const REJECTION_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StableError {
    #[error("one-sided index must satisfy 0 < nu <= 1, got {0}")]
    InvalidIndex(f64),
    #[error("stability index must satisfy 0 < alpha <= 2, got {0}")]
    InvalidAlpha(f64),
    #[error("positivity parameter must satisfy 0 <= rho <= 1, got {0}")]
    InvalidRho(f64),
    #[error("(alpha, rho) = ({alpha}, {rho}) violates alpha*rho <= 1, alpha*(1-rho) <= 1")]
    ConstraintViolated { alpha: f64, rho: f64 },
    #[error("rate must be positive, got {0}")]
    InvalidRate(f64),
    #[error("unsupported parametrization: {0}")]
    UnsupportedParametrization(String),
    #[error("skewness {0} falls outside [-1, 1]")]
    SkewnessOutOfRange(f64),
    #[error("positivity conditioning exceeded {0} attempts")]
    RejectionCapExceeded(usize),
}

/// Index ν ∈ (0, 1] of a one-sided stable law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneSidedIndex {
    nu: f64,
}

impl OneSidedIndex {
    pub fn new(nu: f64) -> Result<Self, StableError> {
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(StableError::InvalidIndex(nu));
        }
        Ok(Self { nu })
    }

    #[inline]
    pub fn get(&self) -> f64 {
        self.nu
    }
}

/// Parameters (α, ρ) of a strictly stable law, ρ = P{S > 0}.
///
/// Admissibility requires `αρ ≤ 1` and `α(1-ρ) ≤ 1`; α = 2 forces ρ = 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrictStableParams {
    alpha: f64,
    rho: f64,
}

impl StrictStableParams {
    pub fn new(alpha: f64, rho: f64) -> Result<Self, StableError> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(StableError::InvalidAlpha(alpha));
        }
        if !(0.0..=1.0).contains(&rho) {
            return Err(StableError::InvalidRho(rho));
        }
        let tol = 1e-12;
        if alpha * rho > 1.0 + tol || alpha * (1.0 - rho) > 1.0 + tol {
            return Err(StableError::ConstraintViolated { alpha, rho });
        }
        let rho = if alpha == 2.0 {
            if (rho - 0.5).abs() > tol {
                return Err(StableError::ConstraintViolated { alpha, rho });
            }
            0.5
        } else {
            rho
        };
        Ok(Self { alpha, rho })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Parameters of the positive Linnik law with Laplace transform μ/(s^ν + μ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinnikParams {
    nu: OneSidedIndex,
    mu: f64,
}

impl LinnikParams {
    pub fn new(nu: OneSidedIndex, mu: f64) -> Result<Self, StableError> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(StableError::InvalidRate(mu));
        }
        Ok(Self { nu, mu })
    }

    #[inline]
    pub fn nu(&self) -> f64 {
        self.nu.get()
    }

    #[inline]
    pub fn index(&self) -> OneSidedIndex {
        self.nu
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        self.mu
    }
}

#[inline]
fn guarded_uniform(stream: &mut RandomStream) -> f64 {
    loop {
        let u = stream.uniform_open();
        if u > ENDPOINT_GUARD && u < 1.0 - ENDPOINT_GUARD {
            return u;
        }
    }
}

/// One-sided stable variate with Laplace transform exp(-λ^ν).
///
/// Kanter's representation: `S = (A(πU)/E)^((1-ν)/ν)` with
/// `A(u) = sin(νu)^(ν/(1-ν)) · sin((1-ν)u) / sin(u)^(1/(1-ν))`,
/// U uniform on (0,1), E exponential(1). Evaluated in log space so extreme
/// indices cannot overflow; ν = 1 is the point mass at 1.
pub fn sample_positive_stable(nu: OneSidedIndex, stream: &mut RandomStream) -> f64 {
    let nu = nu.get();
    if nu == 1.0 {
        return 1.0;
    }
    loop {
        let u = PI * guarded_uniform(stream);
        let e = stream.exp_std();
        let ln_a = nu / (1.0 - nu) * (nu * u).sin().ln() + ((1.0 - nu) * u).sin().ln()
            - 1.0 / (1.0 - nu) * u.sin().ln();
        let ln_s = (1.0 - nu) / nu * (ln_a - e.ln());
        if ln_s.abs() < MAX_LN_MAGNITUDE {
            return ln_s.exp();
        }
    }
}

/// Strictly stable variate in the (α, ρ) parametrization.
///
/// Chambers-Mallows-Stuck with shift angle `b = π(ρ - 1/2)`:
/// `X = sin(α(V+b)) · cos(V)^(-1/α) · [cos((1-α)V - αb)/W]^((1-α)/α)`,
/// V uniform on (-π/2, π/2), W exponential(1). At ρ = 1 (α < 1) this
/// reduces literally to Kanter's formula, so the one-sided scale matches
/// [`sample_positive_stable`] exactly. α = 2 short-circuits to N(0, 2) and
/// α = 1 is supported only at ρ = 1/2 (standard Cauchy, X = tan V).
pub fn sample_strictly_stable(
    params: StrictStableParams,
    stream: &mut RandomStream,
) -> Result<f64, StableError> {
    let (alpha, rho) = (params.alpha(), params.rho());
    if alpha == 2.0 {
        return Ok(std::f64::consts::SQRT_2 * stream.gaussian());
    }
    if alpha == 1.0 {
        if (rho - 0.5).abs() > 1e-12 {
            return Err(StableError::UnsupportedParametrization(format!(
                "alpha = 1 requires rho = 1/2 (strict stability fails at rho = {rho})"
            )));
        }
        let v = PI * (guarded_uniform(stream) - 0.5);
        return Ok(v.tan());
    }
    let b = PI * (rho - 0.5);
    loop {
        let v = PI * (guarded_uniform(stream) - 0.5);
        let w = stream.exp_std();
        let num = (alpha * (v + b)).sin();
        let psi = (1.0 - alpha) * v - alpha * b;
        let ln_mag = num.abs().ln() - v.cos().ln() / alpha
            + (1.0 - alpha) / alpha * (psi.cos().ln() - w.ln());
        if ln_mag.abs() < MAX_LN_MAGNITUDE {
            return Ok(num.signum() * ln_mag.exp());
        }
    }
}

/// Skewness β of the CMS parametrization for a given positivity parameter.
///
/// `ρ = 1/2 + arctan(β tan(πα/2)) / (πα)`, inverted. Requires α ≠ 1.
pub fn rho_to_beta(alpha: f64, rho: f64) -> Result<f64, StableError> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(StableError::InvalidAlpha(alpha));
    }
    if alpha == 1.0 {
        return Err(StableError::UnsupportedParametrization(
            "beta bridge is undefined at alpha = 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(StableError::InvalidRho(rho));
    }
    if rho == 0.5 {
        return Ok(0.0);
    }
    let beta = (PI * alpha * (rho - 0.5)).tan() / (PI * alpha * 0.5).tan();
    if beta.abs() > 1.0 + 1e-9 {
        return Err(StableError::ConstraintViolated { alpha, rho });
    }
    Ok(beta.clamp(-1.0, 1.0))
}

/// Inverse of [`rho_to_beta`].
pub fn beta_to_rho(alpha: f64, beta: f64) -> Result<f64, StableError> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(StableError::InvalidAlpha(alpha));
    }
    if alpha == 1.0 {
        return Err(StableError::UnsupportedParametrization(
            "beta bridge is undefined at alpha = 1".into(),
        ));
    }
    if !(-1.0..=1.0).contains(&beta) {
        return Err(StableError::SkewnessOutOfRange(beta));
    }
    Ok(0.5 + (beta * (PI * alpha * 0.5).tan()).atan() / (PI * alpha))
}

/// Mittag-Leffler variate `M_α = S_α^{-α}`; moments `E M^n = n!/Γ(1+nα)`.
pub fn sample_mittag_leffler_rv(alpha: OneSidedIndex, stream: &mut RandomStream) -> f64 {
    let a = alpha.get();
    if a == 1.0 {
        return 1.0;
    }
    sample_positive_stable(alpha, stream).powf(-a)
}

/// Positive Linnik variate `E^{1/ν} S_ν` with E exponential of rate μ
/// independent of S_ν; Laplace transform μ/(s^ν + μ).
pub fn sample_positive_linnik(params: LinnikParams, stream: &mut RandomStream) -> f64 {
    let nu = params.nu();
    let e = stream.exp_rate(params.mu());
    if nu == 1.0 {
        return e;
    }
    let s = sample_positive_stable(params.index(), stream);
    e.powf(1.0 / nu) * s
}

/// Positive part of S_{α,ρ} for α ∈ (1, 2], conditioned on positivity,
/// drawn through the inversion duality: `X^{-1/α}` where X is S_{1/α, αρ}
/// conditioned on X > 0.
///
/// When αρ = 1 the inner law is one-sided and Kanter is used directly with
/// no rejection. Otherwise inner draws are rejected until positive, up to
/// [`REJECTION_CAP`] attempts.
pub fn sample_dual_positive(
    params: StrictStableParams,
    stream: &mut RandomStream,
) -> Result<f64, StableError> {
    let (alpha, rho) = (params.alpha(), params.rho());
    if alpha <= 1.0 {
        return Err(StableError::UnsupportedParametrization(format!(
            "duality sampler requires alpha in (1, 2], got {alpha}"
        )));
    }
    let inner_index = 1.0 / alpha;
    let inner_rho = alpha * rho;
    if inner_rho >= 1.0 - 1e-9 {
        let s = sample_positive_stable(OneSidedIndex::new(inner_index)?, stream);
        return Ok(s.powf(-inner_index));
    }
    let inner = StrictStableParams::new(inner_index, inner_rho)?;
    for _ in 0..REJECTION_CAP {
        let x = sample_strictly_stable(inner, stream)?;
        if x > 0.0 {
            return Ok(x.powf(-inner_index));
        }
    }
    Err(StableError::RejectionCapExceeded(REJECTION_CAP))
}
