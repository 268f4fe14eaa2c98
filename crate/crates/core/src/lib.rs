//! Random-variate generation and stochastic-process simulation for
//! stable-law-related distributions, with a built-in statistical
//! verification harness.
//!
//! The crate is organized around five pieces:
//!
//! * [`stream`] — seedable, splittable random streams (the reproducibility
//!   backbone; all samplers are pure functions of an explicit stream);
//! * [`stable_rng`] — one-sided (Kanter) and strictly stable
//!   (Chambers-Mallows-Stuck in the (α, ρ) parametrization) variates, the
//!   Mittag-Leffler and positive-Linnik laws built from them, and the
//!   inversion-duality sampler for positive parts;
//! * [`mittag_leffler`] — numerical evaluation of two- and three-parameter
//!   Mittag-Leffler functions and the Linnik / fractional-Poisson closed
//!   forms;
//! * [`processes`] — fractional Poisson trajectories, stable subordinator
//!   paths and first passages, subdiffusive and subordinate Brownian
//!   motion, and the fractional-diffusion histogram estimator;
//! * [`stat_tests`] / [`verify`] — KS, chi-square, characteristic-function
//!   and moment checks, assembled into fixed-seed verification suites.

pub mod mittag_leffler;
pub mod processes;
pub mod stable_rng;
pub mod stat_tests;
pub mod stream;
pub mod verify;

pub use mittag_leffler::{EvalError, EvalResult, MLArgs, Regime};
pub use processes::{
    PdeEstimate, ProcessError, RenewalTrajectory, SubdiffusionRoute, SubordinatorPath,
    VarianceConvention,
};
pub use stable_rng::{LinnikParams, OneSidedIndex, StableError, StrictStableParams};
pub use stat_tests::{ChiSquareReport, EcfPoint, KsReport, MomentReport, StatError};
pub use stream::RandomStream;
pub use verify::{Suite, VerifyOptions, VerifyReport};
