//! Tests minimising α + β for a simple null against a simple alternative.
//!
//! The reference construction is [`build_lr_test`], which rejects whenever
//! `ln L₁ − ln L₀ ≥ 0`. The other builders are closed forms of the same
//! region for particular families and must agree with it decision for
//! decision away from the threshold.

use crate::dist::std_normal_quantile;
use crate::error::{domain, Error, Result};
use crate::models::{ExpFamilyKind, ModelSpec};
use crate::procedure::{Direction, Provenance, Statistic, TestProcedure, TiePolicy};

/// The region `{x : L₁(x) ≥ L₀(x)}`, evaluated in log space.
pub fn build_lr_test(model0: &ModelSpec, model1: &ModelSpec) -> Result<TestProcedure> {
    if !model0.same_family(model1) {
        return Err(domain(format!(
            "models {} and {} do not share a support",
            model0.family_name(),
            model1.family_name()
        )));
    }
    if model0 == model1 {
        return Err(Error::DegenerateProblem(
            "null and alternative models are identical".into(),
        ));
    }
    Ok(TestProcedure::new(
        Statistic::LogLikelihoodRatio {
            null: *model0,
            alt: *model1,
        },
        0.0,
        Direction::Ge,
        Provenance::LikelihoodRatio,
    ))
}

/// N(θ, σ²), σ known: reject when x̄ ≥ (θ₀+θ₁)/2 for θ₁ > θ₀, and when
/// x̄ ≤ (θ₀+θ₁)/2 for θ₁ < θ₀.
pub fn normal_mean_test(theta0: f64, theta1: f64, sigma: f64) -> Result<TestProcedure> {
    // Validates finiteness and σ > 0.
    ModelSpec::normal_mean(theta0, sigma)?;
    ModelSpec::normal_mean(theta1, sigma)?;
    if theta0 == theta1 {
        return Err(Error::DegenerateProblem(format!(
            "theta0 = theta1 = {theta0}"
        )));
    }
    let direction = if theta1 > theta0 {
        Direction::Ge
    } else {
        Direction::Le
    };
    Ok(TestProcedure::new(
        Statistic::Mean,
        0.5 * (theta0 + theta1),
        direction,
        Provenance::NormalMeanMidpoint,
    ))
}

/// The constant c = σ₁²/(σ₁²−σ₀²) · ln(σ₁²/σ₀²).
///
/// Positive for either ordering; tends to 1 as σ₁² → σ₀².
pub fn variance_threshold_constant(sigma0_sq: f64, sigma1_sq: f64) -> f64 {
    let d = sigma1_sq - sigma0_sq;
    sigma1_sq * (d / sigma0_sq).ln_1p() / d
}

/// N(θ, σ²), θ known: reject when Σ((xᵢ−θ)/σ₀)² ≥ n·c if σ₁² > σ₀², and
/// ≤ n·c if σ₁² < σ₀² (dividing the log-ratio inequality by a negative
/// factor flips it).
pub fn normal_variance_test(
    theta: f64,
    sigma0_sq: f64,
    sigma1_sq: f64,
    n: usize,
) -> Result<TestProcedure> {
    ModelSpec::normal_variance(theta, sigma0_sq)?;
    ModelSpec::normal_variance(theta, sigma1_sq)?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    if sigma0_sq == sigma1_sq {
        return Err(Error::DegenerateProblem(format!(
            "sigma0_sq = sigma1_sq = {sigma0_sq}"
        )));
    }
    let c = variance_threshold_constant(sigma0_sq, sigma1_sq);
    let direction = if sigma1_sq > sigma0_sq {
        Direction::Ge
    } else {
        Direction::Le
    };
    Ok(TestProcedure::new(
        Statistic::ScaledSumSquares {
            center: theta,
            scale_sq: sigma0_sq,
        },
        n as f64 * c,
        direction,
        Provenance::NormalVarianceChiSquare,
    )
    .for_sample_size(n))
}

/// Exponential family `c(θ) e^{Q(θ)T(x)} h(x)`: reject when
/// ΣT(xᵢ) ⋈ n·ln(c(θ₀)/c(θ₁)) / (Q(θ₁) − Q(θ₀)), with `≥` when
/// Q(θ₁) > Q(θ₀) and `≤` otherwise.
pub fn expfam_test(
    kind: ExpFamilyKind,
    theta0: f64,
    theta1: f64,
    n: usize,
) -> Result<TestProcedure> {
    kind.check_theta(theta0)?;
    kind.check_theta(theta1)?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    let q0 = kind.q(theta0);
    let dq = kind.q(theta1) - q0;
    if dq == 0.0 {
        return Err(Error::Indistinguishable(q0));
    }
    let threshold = n as f64 * (kind.log_c(theta0) - kind.log_c(theta1)) / dq;
    let direction = if dq > 0.0 {
        Direction::Ge
    } else {
        Direction::Le
    };
    Ok(TestProcedure::new(
        Statistic::SufficientSum { kind },
        threshold,
        direction,
        Provenance::ExpFamilySufficientSum,
    )
    .for_sample_size(n))
}

/// One-sided level-α z test: reject when (x̄−θ₀)/(σ/√n) > z₁₋α, with the
/// exact normal quantile.
pub fn fixed_alpha_comparator(
    theta0: f64,
    sigma: f64,
    n: usize,
    alpha: f64,
) -> Result<TestProcedure> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    let z = std_normal_quantile(1.0 - alpha)?;
    fixed_z_comparator(theta0, sigma, n, z)
}

/// The same one-sided z test with a caller-chosen critical value, e.g. the
/// rounded table value 1.64.
pub fn fixed_z_comparator(
    theta0: f64,
    sigma: f64,
    n: usize,
    critical_z: f64,
) -> Result<TestProcedure> {
    ModelSpec::normal_mean(theta0, sigma)?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    if !critical_z.is_finite() {
        return Err(domain(format!("critical value {critical_z} is not finite")));
    }
    Ok(TestProcedure::new(
        Statistic::StandardizedMean {
            center: theta0,
            sigma,
        },
        critical_z,
        Direction::Ge,
        Provenance::FixedAlphaComparator,
    )
    .with_tie_policy(TiePolicy::AcceptOnTie)
    .for_sample_size(n))
}
