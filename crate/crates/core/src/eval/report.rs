use serde::{Deserialize, Serialize};

use crate::dist::Probability;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Analytic,
    MonteCarlo,
}

/// Size, type II error, power and power − size of one procedure at one n.
///
/// Field order is the CSV column order. `power` is stored as `1 − beta` and
/// `power_minus_size` as `power − alpha`, so both identities hold exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub n: usize,
    pub alpha: Probability,
    pub beta: Probability,
    pub power: Probability,
    pub power_minus_size: f64,
    pub method: Method,
    pub se_alpha: Option<f64>,
    pub se_beta: Option<f64>,
    pub reps: Option<usize>,
    pub seed: Option<u64>,
}

impl ErrorReport {
    pub fn analytic(n: usize, alpha: Probability, beta: Probability) -> Self {
        let power = beta.complement();
        ErrorReport {
            n,
            alpha,
            beta,
            power,
            power_minus_size: power.value() - alpha.value(),
            method: Method::Analytic,
            se_alpha: None,
            se_beta: None,
            reps: None,
            seed: None,
        }
    }

    /// Builds a report from rejection counts under H₀ and acceptance counts
    /// under H₁, with binomial standard errors.
    pub fn monte_carlo(
        n: usize,
        rejects_h0: usize,
        accepts_h1: usize,
        reps: usize,
        seed: u64,
    ) -> Self {
        let k = reps as f64;
        let alpha = Probability::clamped(rejects_h0 as f64 / k);
        let beta = Probability::clamped(accepts_h1 as f64 / k);
        let se = |p: f64| (p * (1.0 - p) / k).sqrt();
        ErrorReport {
            se_alpha: Some(se(alpha.value())),
            se_beta: Some(se(beta.value())),
            reps: Some(reps),
            seed: Some(seed),
            method: Method::MonteCarlo,
            ..ErrorReport::analytic(n, alpha, beta)
        }
    }

    /// α + β.
    pub fn error_sum(&self) -> f64 {
        self.alpha.value() + self.beta.value()
    }
}
