//! Locally optimum tests built from the score ratio L̇/L and locally
//! optimum unbiased tests built from the second-derivative ratio L″/L.
//!
//! Both rules compare the ratio with the absolute constant 1. The constant
//! carries units of 1/θ, so rescaling the parameter changes the test. For
//! the normal mean the unbiased rule's size tends to P[χ²₁ ≥ 1] ≈ 0.317
//! rather than to zero as n grows.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::models::ModelSpec;
use crate::procedure::{Decision, Direction, Provenance, Statistic, TestProcedure};
use crate::rng::substream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Greater,
    Less,
    TwoSided,
}

/// Reading of the lower-side region. Only consulted for [`Side::Less`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `L̇ ≤ L`: rejects at x̄ = θ₀ already.
    #[default]
    Literal,
    /// `L̇ ≤ −L`, the mirror image of the upper-side rule.
    SymmetricAlternative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalTestConfig {
    pub theta0: f64,
    pub side: Side,
    pub variant: Variant,
}

impl LocalTestConfig {
    pub fn new(theta0: f64, side: Side) -> Self {
        LocalTestConfig {
            theta0,
            side,
            variant: Variant::default(),
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    /// `(threshold on L̇/L, direction, provenance)`.
    fn score_rule(&self) -> Result<(f64, Direction, Provenance)> {
        match (self.side, self.variant) {
            (Side::Greater, _) => Ok((1.0, Direction::Ge, Provenance::ScoreRule)),
            (Side::Less, Variant::Literal) => Ok((1.0, Direction::Le, Provenance::ScoreRule)),
            (Side::Less, Variant::SymmetricAlternative) => {
                Ok((-1.0, Direction::Le, Provenance::ScoreRuleSymmetricVariant))
            }
            (Side::TwoSided, _) => Err(Error::Unsupported(
                "two-sided alternatives need the locally optimum unbiased test".into(),
            )),
        }
    }
}

/// Score rule: reject when L̇(x|θ₀)/L(x|θ₀) ≥ 1 (upper side), ≤ 1 (lower
/// side as printed) or ≤ −1 (lower side, mirrored).
pub fn locally_optimum_test(model: &ModelSpec, config: LocalTestConfig) -> Result<TestProcedure> {
    let (threshold, direction, provenance) = config.score_rule()?;
    let at_null = model.with_theta(config.theta0)?;
    Ok(TestProcedure::new(
        Statistic::ScoreRatio {
            model: at_null,
            theta0: config.theta0,
        },
        threshold,
        direction,
        provenance,
    ))
}

/// Closed form of [`locally_optimum_test`] for N(θ, σ²) with σ known:
/// x̄ ≥ θ₀ + σ²/n, x̄ ≤ θ₀ + σ²/n, or x̄ ≤ θ₀ − σ²/n.
pub fn normal_mean_locally_optimum(
    sigma: f64,
    n: usize,
    config: LocalTestConfig,
) -> Result<TestProcedure> {
    ModelSpec::normal_mean(config.theta0, sigma)?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    let (ratio_threshold, direction, provenance) = config.score_rule()?;
    // n(x̄ − θ₀)/σ² ⋈ r  ⇔  x̄ ⋈ θ₀ + r σ²/n
    let threshold = config.theta0 + ratio_threshold * sigma * sigma / n as f64;
    Ok(TestProcedure::new(Statistic::Mean, threshold, direction, provenance).for_sample_size(n))
}

/// Second-derivative rule: reject when L″(x|θ₀)/L(x|θ₀) ≥ 1.
pub fn locally_optimum_unbiased_test(model: &ModelSpec, theta0: f64) -> Result<TestProcedure> {
    let at_null = model.with_theta(theta0)?;
    Ok(TestProcedure::new(
        Statistic::SecondRatio {
            model: at_null,
            theta0,
        },
        1.0,
        Direction::Ge,
        Provenance::SecondDerivativeRule,
    ))
}

/// Closed form for N(θ, σ²), σ known: n(x̄−θ₀)²/σ² ≥ 1 + σ²/n.
pub fn normal_mean_locally_optimum_unbiased(
    theta0: f64,
    sigma: f64,
    n: usize,
) -> Result<TestProcedure> {
    ModelSpec::normal_mean(theta0, sigma)?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    Ok(TestProcedure::new(
        Statistic::CenteredChiSquare {
            center: theta0,
            sigma,
        },
        1.0 + sigma * sigma / n as f64,
        Direction::Ge,
        Provenance::SecondDerivativeRule,
    )
    .for_sample_size(n))
}

/// Monte Carlo estimate of γ̇(θ₀) = E_θ₀[(L̇/L)(x) · 1{reject}].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectEstimate {
    pub mean: f64,
    pub se: f64,
    pub reps: usize,
    pub seed: u64,
}

impl DefectEstimate {
    /// |mean| / se, or 0 when both vanish.
    pub fn z_score(&self) -> f64 {
        if self.se == 0.0 {
            if self.mean == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.mean.abs() / self.se
        }
    }
}

pub const MIN_DEFECT_REPS: usize = 10_000;

/// Slope of the power function at θ₀, estimated from `reps` samples of size
/// `n` drawn under θ₀. Replication `i` uses substream `i` of `seed`.
pub fn unbiasedness_defect(
    test: &TestProcedure,
    model: &ModelSpec,
    theta0: f64,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<DefectEstimate> {
    if reps < MIN_DEFECT_REPS {
        return Err(domain(format!(
            "need at least {MIN_DEFECT_REPS} replications, got {reps}"
        )));
    }
    let null = model.with_theta(theta0)?;
    let terms: Vec<f64> = (0..reps)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let sample = null.draw(n, &mut rng)?;
            match test.decide(&sample)? {
                Decision::Reject => null.score_ratio(theta0, &sample),
                Decision::Accept => Ok(0.0),
            }
        })
        .collect::<Result<_>>()?;

    let k = reps as f64;
    let mean = terms.iter().sum::<f64>() / k;
    let var = terms.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (k - 1.0);
    Ok(DefectEstimate {
        mean,
        se: (var / k).sqrt(),
        reps,
        seed,
    })
}
