//! α + β along a grid of sample sizes for the minimum-error-sum test.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::eval::analytic::{
    analytic_errors_expfam, analytic_errors_normal_mean, analytic_errors_normal_variance,
};
use crate::eval::report::ErrorReport;
pub use crate::models::Family;
use crate::models::ModelSpec;
use crate::optimum::{expfam_test, normal_mean_test, normal_variance_test};
use crate::procedure::TestProcedure;

/// H₀: θ = θ₀ against H₁: θ = θ₁ within one family, at sample size n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleTestProblem {
    pub family: Family,
    pub theta0: f64,
    pub theta1: f64,
    pub n: usize,
}

impl SimpleTestProblem {
    pub fn new(family: Family, theta0: f64, theta1: f64, n: usize) -> Result<Self> {
        family.model(theta0)?;
        family.model(theta1)?;
        if theta0 == theta1 {
            return Err(Error::DegenerateProblem(format!(
                "theta0 = theta1 = {theta0}"
            )));
        }
        if n == 0 {
            return Err(domain("sample size must be at least 1"));
        }
        Ok(SimpleTestProblem {
            family,
            theta0,
            theta1,
            n,
        })
    }

    pub fn null_model(&self) -> Result<ModelSpec> {
        self.family.model(self.theta0)
    }

    pub fn alt_model(&self) -> Result<ModelSpec> {
        self.family.model(self.theta1)
    }

    /// The closed-form minimum α + β test for this family.
    pub fn optimum_test(&self) -> Result<TestProcedure> {
        match self.family {
            Family::NormalMean { sigma } => normal_mean_test(self.theta0, self.theta1, sigma),
            Family::NormalVariance { mean } => {
                normal_variance_test(mean, self.theta0, self.theta1, self.n)
            }
            Family::ExpFamily { kind } => expfam_test(kind, self.theta0, self.theta1, self.n),
        }
    }

    /// Analytic errors of [`Self::optimum_test`] at sample size `n`.
    pub fn optimum_errors_at(&self, n: usize) -> Result<ErrorReport> {
        match self.family {
            Family::NormalMean { sigma } => {
                analytic_errors_normal_mean(self.theta0, self.theta1, sigma, n)
            }
            Family::NormalVariance { mean } => {
                analytic_errors_normal_variance(mean, self.theta0, self.theta1, n)
            }
            Family::ExpFamily { kind } => analytic_errors_expfam(kind, self.theta0, self.theta1, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<ErrorReport>,
    /// Whether α + β strictly decreases along the grid; `None` for a single row.
    pub strictly_decreasing: Option<bool>,
}

/// Analytic α, β of the optimum test at each n in `n_grid`.
pub fn convergence_sweep(problem: &SimpleTestProblem, n_grid: &[usize]) -> Result<SweepTable> {
    if n_grid.is_empty() {
        return Err(domain("the n grid is empty"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) || n_grid[0] == 0 {
        return Err(domain(
            "the n grid must be positive and strictly increasing",
        ));
    }
    let rows = n_grid
        .iter()
        .map(|&n| problem.optimum_errors_at(n))
        .collect::<Result<Vec<_>>>()?;
    let strictly_decreasing =
        (rows.len() > 1).then(|| rows.windows(2).all(|w| w[1].error_sum() < w[0].error_sum()));
    Ok(SweepTable {
        rows,
        strictly_decreasing,
    })
}
