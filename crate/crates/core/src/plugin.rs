//! Unknown-variance plug-in test for a normal mean.
//!
//! Under each hypothesis the variance is replaced by its MLE
//! σ̂ᵢ² = (1/n) Σ (xⱼ − θᵢ)², and the test rejects when L̂(x|θ₁) ≥ L̂(x|θ₀).
//! Since ln L̂₁ − ln L̂₀ = (n/2) ln(σ̂₀²/σ̂₁²) and
//! σ̂₀² − σ̂₁² = 2x̄(θ₁−θ₀) + θ₀² − θ₁², the decision depends on the data only
//! through x̄ and coincides with the known-variance midpoint rule.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::models::SampleBatch;
use crate::optimum::normal_mean_test;
use crate::procedure::{Decision, Direction, Provenance, Statistic, TestProcedure};
use crate::rng::substream;

use rand::Rng;
use rand_distr::{Distribution, Normal};

/// Normal likelihood maximised over σ² at a fixed mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileLikelihood {
    pub log_value: f64,
    pub sigma2_hat: f64,
}

/// Mean squared deviation about `theta_i`.
pub fn mle_sigma2(sample: &SampleBatch, theta_i: f64) -> f64 {
    sample.sum_sq_dev(theta_i) / sample.len() as f64
}

/// ln L̂ = −(n/2)(ln(2π σ̂²) + 1).
pub fn profile_log_likelihood(sample: &SampleBatch, theta_i: f64) -> Result<ProfileLikelihood> {
    let sigma2_hat = mle_sigma2(sample, theta_i);
    if sigma2_hat == 0.0 {
        return Err(Error::DegenerateSample(format!(
            "every observation equals {theta_i}; the profile likelihood is unbounded"
        )));
    }
    let n = sample.len() as f64;
    Ok(ProfileLikelihood {
        log_value: -0.5 * n * ((2.0 * PI * sigma2_hat).ln() + 1.0),
        sigma2_hat,
    })
}

/// ln L̂(x|θ₁) − ln L̂(x|θ₀) = (n/2) ln(σ̂₀²/σ̂₁²), with a zero variance
/// estimate counting as infinite likelihood.
pub(crate) fn profile_log_ratio(sample: &SampleBatch, theta0: f64, theta1: f64) -> Result<f64> {
    let s0 = mle_sigma2(sample, theta0);
    let s1 = mle_sigma2(sample, theta1);
    match (s0 == 0.0, s1 == 0.0) {
        (true, true) => Err(Error::DegenerateSample(
            "both variance estimates are zero".into(),
        )),
        (true, false) => Ok(f64::NEG_INFINITY),
        (false, true) => Ok(f64::INFINITY),
        (false, false) => Ok(0.5 * sample.len() as f64 * (s0 / s1).ln()),
    }
}

/// φ_p: reject when L̂(x|θ₁) ≥ L̂(x|θ₀).
pub fn plugin_test(theta0: f64, theta1: f64) -> Result<TestProcedure> {
    if !(theta0.is_finite() && theta1.is_finite()) {
        return Err(domain("hypothesised means must be finite"));
    }
    if theta0 == theta1 {
        return Err(Error::DegenerateProblem(format!(
            "theta0 = theta1 = {theta0}"
        )));
    }
    Ok(TestProcedure::new(
        Statistic::ProfileLogLikelihoodRatio { theta0, theta1 },
        0.0,
        Direction::Ge,
        Provenance::ProfilePlugin,
    ))
}

/// Outcome of comparing φ_p with the known-variance midpoint rule φ_m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub trials: usize,
    pub mismatches: usize,
    /// Trials whose x̄ fell inside the rounding band around the midpoint.
    pub excluded_ties: usize,
}

/// Standard deviations used to generate data, cycled over trials.
pub const EQUIVALENCE_SIGMAS: [f64; 3] = [0.1, 1.0, 10.0];

/// True when rounding in σ̂₀² − σ̂₁² could decide the comparison.
pub(crate) fn in_tie_band(sample: &SampleBatch, theta0: f64, theta1: f64) -> bool {
    let mid = 0.5 * (theta0 + theta1);
    let scale = 1.0 + mle_sigma2(sample, theta0) + mle_sigma2(sample, theta1);
    ((sample.mean() - mid) * (theta1 - theta0)).abs() <= 1e-12 * scale
}

/// Draws `trials` random samples (n between 1 and 40, σ cycling through
/// [`EQUIVALENCE_SIGMAS`], true mean spread around both hypotheses) and
/// counts disagreements between φ_p and φ_m.
pub fn check_plugin_equivalence(
    theta0: f64,
    theta1: f64,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    let plugin = plugin_test(theta0, theta1)?;
    let midpoint = normal_mean_test(theta0, theta1, 1.0)?;
    let lo = theta0.min(theta1);
    let hi = theta0.max(theta1);
    let spread = hi - lo;

    let outcomes: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let sigma = EQUIVALENCE_SIGMAS[i % EQUIVALENCE_SIGMAS.len()];
            let n = rng.random_range(1..=40usize);
            let center = rng.random_range((lo - spread)..(hi + spread));
            let normal = Normal::new(center, sigma).map_err(|e| domain(e.to_string()))?;
            let sample = SampleBatch::new((0..n).map(|_| normal.sample(&mut rng)).collect())?;
            if in_tie_band(&sample, theta0, theta1) {
                return Ok((true, false));
            }
            let p: Decision = plugin.decide(&sample)?;
            let m: Decision = midpoint.decide(&sample)?;
            Ok((false, p != m))
        })
        .collect::<Result<_>>()?;

    Ok(EquivalenceReport {
        trials,
        mismatches: outcomes.iter().filter(|o| o.1).count(),
        excluded_ties: outcomes.iter().filter(|o| o.0).count(),
    })
}
