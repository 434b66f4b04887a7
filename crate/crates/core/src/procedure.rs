//! Deterministic test procedures: a statistic compared against a threshold.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{ExpFamilyKind, ModelSpec, SampleBatch};
use crate::plugin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    Reject,
    Accept,
}

/// Which side of the threshold rejects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "GE")]
    Ge,
    #[serde(rename = "LE")]
    Le,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Ge => Direction::Le,
            Direction::Le => Direction::Ge,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Ge => ">=",
            Direction::Le => "<=",
        }
    }
}

/// What happens when the statistic lands exactly on the threshold.
///
/// Every region built from a likelihood comparison uses `RejectOnTie`; only
/// the fixed-level comparator, whose rule is a strict inequality, accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiePolicy {
    RejectOnTie,
    AcceptOnTie,
}

/// The construction a procedure came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Raw rule L₁ ≥ L₀.
    LikelihoodRatio,
    /// x̄ against the midpoint of θ₀ and θ₁.
    NormalMeanMidpoint,
    /// Σ((xᵢ−θ)/σ₀)² against n·c.
    NormalVarianceChiSquare,
    /// ΣT(xᵢ) against the exponential-family threshold.
    ExpFamilySufficientSum,
    /// Fixed-level one-sided z test.
    FixedAlphaComparator,
    /// L̇ ≥ L, or L̇ ≤ L on the lower side as printed.
    ScoreRule,
    /// Lower side mirrored: L̇ ≤ −L.
    ScoreRuleSymmetricVariant,
    /// L″ ≥ L.
    SecondDerivativeRule,
    /// Profile likelihoods with the variance replaced by its MLE.
    ProfilePlugin,
    Constant,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::LikelihoodRatio => "likelihood-ratio",
            Provenance::NormalMeanMidpoint => "normal-mean-midpoint",
            Provenance::NormalVarianceChiSquare => "normal-variance-chi-square",
            Provenance::ExpFamilySufficientSum => "exp-family-sufficient-sum",
            Provenance::FixedAlphaComparator => "fixed-alpha-comparator",
            Provenance::ScoreRule => "score-rule",
            Provenance::ScoreRuleSymmetricVariant => "score-rule-symmetric-variant",
            Provenance::SecondDerivativeRule => "second-derivative-rule",
            Provenance::ProfilePlugin => "profile-plugin",
            Provenance::Constant => "constant",
        }
    }
}

/// The sample functions a procedure can threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "statistic", rename_all = "kebab-case")]
pub enum Statistic {
    /// ln L(x|alt) − ln L(x|null).
    LogLikelihoodRatio {
        null: ModelSpec,
        alt: ModelSpec,
    },
    /// x̄.
    Mean,
    /// (x̄ − center) / (σ/√n).
    StandardizedMean {
        center: f64,
        sigma: f64,
    },
    /// n (x̄ − center)² / σ².
    CenteredChiSquare {
        center: f64,
        sigma: f64,
    },
    /// Σ (xᵢ − center)² / scale_sq.
    ScaledSumSquares {
        center: f64,
        scale_sq: f64,
    },
    /// Σ T(xᵢ).
    SufficientSum {
        kind: ExpFamilyKind,
    },
    /// L̇(x|θ₀) / L(x|θ₀).
    ScoreRatio {
        model: ModelSpec,
        theta0: f64,
    },
    /// L″(x|θ₀) / L(x|θ₀).
    SecondRatio {
        model: ModelSpec,
        theta0: f64,
    },
    /// ln L̂(x|θ₁) − ln L̂(x|θ₀) with σ² profiled out.
    ProfileLogLikelihoodRatio {
        theta0: f64,
        theta1: f64,
    },
    Constant {
        value: f64,
    },
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::LogLikelihoodRatio { .. } => "log_likelihood_ratio",
            Statistic::Mean => "sample_mean",
            Statistic::StandardizedMean { .. } => "z_statistic",
            Statistic::CenteredChiSquare { .. } => "n_sq_dev_mean_over_var",
            Statistic::ScaledSumSquares { .. } => "scaled_sum_squares",
            Statistic::SufficientSum { .. } => "sum_sufficient_statistic",
            Statistic::ScoreRatio { .. } => "score_ratio",
            Statistic::SecondRatio { .. } => "second_ratio",
            Statistic::ProfileLogLikelihoodRatio { .. } => "profile_log_likelihood_ratio",
            Statistic::Constant { .. } => "constant",
        }
    }

    pub fn evaluate(&self, sample: &SampleBatch) -> Result<f64> {
        let n = sample.len() as f64;
        match self {
            Statistic::LogLikelihoodRatio { null, alt } => {
                Ok(alt.log_likelihood(sample)? - null.log_likelihood(sample)?)
            }
            Statistic::Mean => Ok(sample.mean()),
            Statistic::StandardizedMean { center, sigma } => {
                Ok((sample.mean() - center) / (sigma / n.sqrt()))
            }
            Statistic::CenteredChiSquare { center, sigma } => {
                Ok(n * (sample.mean() - center).powi(2) / (sigma * sigma))
            }
            Statistic::ScaledSumSquares { center, scale_sq } => {
                Ok(sample.sum_sq_dev(*center) / scale_sq)
            }
            Statistic::SufficientSum { kind } => {
                sample.observations().iter().try_fold(0.0, |acc, &x| {
                    kind.check_support(x)?;
                    Ok(acc + kind.t(x))
                })
            }
            Statistic::ScoreRatio { model, theta0 } => model.score_ratio(*theta0, sample),
            Statistic::SecondRatio { model, theta0 } => model.second_ratio(*theta0, sample),
            Statistic::ProfileLogLikelihoodRatio { theta0, theta1 } => {
                plugin::profile_log_ratio(sample, *theta0, *theta1)
            }
            Statistic::Constant { value } => Ok(*value),
        }
    }
}

/// A decision rule `sample → {Reject, Accept}`.
///
/// Rejects iff `statistic(sample) ⋈ threshold`, where `⋈` is `≥` or `≤`
/// according to the direction and equality is settled by the tie policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestProcedure {
    statistic: Statistic,
    threshold: f64,
    direction: Direction,
    tie_policy: TiePolicy,
    provenance: Provenance,
    /// Thresholds that scale with n only make sense at that n.
    sample_size: Option<usize>,
}

impl TestProcedure {
    pub fn new(
        statistic: Statistic,
        threshold: f64,
        direction: Direction,
        provenance: Provenance,
    ) -> Self {
        TestProcedure {
            statistic,
            threshold,
            direction,
            tie_policy: TiePolicy::RejectOnTie,
            provenance,
            sample_size: None,
        }
    }

    pub fn with_tie_policy(mut self, tie_policy: TiePolicy) -> Self {
        self.tie_policy = tie_policy;
        self
    }

    pub fn for_sample_size(mut self, n: usize) -> Self {
        self.sample_size = Some(n);
        self
    }

    /// A rule that ignores the data.
    pub fn always(decision: Decision) -> Self {
        let threshold = match decision {
            Decision::Reject => 0.0,
            Decision::Accept => 1.0,
        };
        TestProcedure::new(
            Statistic::Constant { value: 0.0 },
            threshold,
            Direction::Ge,
            Provenance::Constant,
        )
    }

    pub fn statistic_kind(&self) -> &Statistic {
        &self.statistic
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn tie_policy(&self) -> TiePolicy {
        self.tie_policy
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn sample_size(&self) -> Option<usize> {
        self.sample_size
    }

    pub fn statistic(&self, sample: &SampleBatch) -> Result<f64> {
        if let Some(expected) = self.sample_size {
            if expected != sample.len() {
                return Err(Error::SampleSizeMismatch {
                    expected,
                    got: sample.len(),
                });
            }
        }
        self.statistic.evaluate(sample)
    }

    pub fn decide(&self, sample: &SampleBatch) -> Result<Decision> {
        let s = self.statistic(sample)?;
        Ok(self.decide_statistic(s))
    }

    /// Applies the threshold to an already computed statistic.
    pub fn decide_statistic(&self, s: f64) -> Decision {
        let strictly_inside = match self.direction {
            Direction::Ge => s > self.threshold,
            Direction::Le => s < self.threshold,
        };
        let reject =
            strictly_inside || (s == self.threshold && self.tie_policy == TiePolicy::RejectOnTie);
        if reject {
            Decision::Reject
        } else {
            Decision::Accept
        }
    }

    pub fn descriptor(&self) -> ProcedureDescriptor {
        ProcedureDescriptor {
            statistic_name: self.statistic.name().to_string(),
            threshold: self.threshold,
            direction: self.direction,
            provenance: self.provenance.label().to_string(),
        }
    }
}

/// Serializable summary of a procedure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcedureDescriptor {
    pub statistic_name: String,
    pub threshold: f64,
    pub direction: Direction,
    pub provenance: String,
}
