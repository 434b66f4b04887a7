//! One-parameter likelihood models.
//!
//! Each model exposes its log-likelihood together with closed-form score
//! ratios `L̇/L = ∂θ log L` and second-derivative ratios
//! `L″/L = (∂θ log L)² + ∂²θ log L`. Finite differences are only used as a
//! test oracle; the decision rules always evaluate the closed forms.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Bernoulli, Distribution, Exp, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::dist::ln_gamma;
use crate::error::{domain, Error, Result};

/// An ordered, non-empty batch of finite observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SampleBatch {
    observations: Vec<f64>,
}

impl SampleBatch {
    pub fn new(observations: Vec<f64>) -> Result<Self> {
        if observations.is_empty() {
            return Err(domain("a sample needs at least one observation"));
        }
        if let Some(bad) = observations.iter().find(|x| !x.is_finite()) {
            return Err(domain(format!("observation {bad} is not finite")));
        }
        Ok(SampleBatch { observations })
    }

    pub fn observations(&self) -> &[f64] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.observations.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.len() as f64
    }

    /// Σ (xᵢ − center)².
    pub fn sum_sq_dev(&self, center: f64) -> f64 {
        self.observations.iter().map(|x| (x - center).powi(2)).sum()
    }

    pub fn concat(&self, other: &SampleBatch) -> SampleBatch {
        let mut observations = self.observations.clone();
        observations.extend_from_slice(&other.observations);
        SampleBatch { observations }
    }
}

impl TryFrom<Vec<f64>> for SampleBatch {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        SampleBatch::new(v)
    }
}

impl From<SampleBatch> for Vec<f64> {
    fn from(s: SampleBatch) -> Self {
        s.observations
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {v}")))
    }
}

/// N(θ, σ²) with σ known; θ is the parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalMeanModel {
    theta: f64,
    sigma: f64,
}

impl NormalMeanModel {
    pub fn new(theta: f64, sigma: f64) -> Result<Self> {
        check_finite("theta", theta)?;
        check_positive("sigma", sigma)?;
        Ok(NormalMeanModel { theta, sigma })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// N(θ, σ²) with the mean θ known; σ² is the parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalVarianceModel {
    theta: f64,
    sigma2: f64,
}

impl NormalVarianceModel {
    pub fn new(theta: f64, sigma2: f64) -> Result<Self> {
        check_finite("theta", theta)?;
        check_positive("sigma2", sigma2)?;
        Ok(NormalVarianceModel { theta, sigma2 })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }
}

/// The shipped exponential-family instances, each written as
/// `f(x|θ) = c(θ) exp(Q(θ) T(x)) h(x)`.
///
/// | kind                    | c(θ)          | Q(θ)          | T(x) | h(x)                    |
/// |-------------------------|---------------|---------------|------|-------------------------|
/// | Bernoulli               | 1 − θ         | ln(θ/(1−θ))   | x    | 1 on {0, 1}             |
/// | Poisson                 | e^{−θ}        | ln θ          | x    | 1/x! on ℕ               |
/// | Exponential (rate θ)    | θ             | −θ            | x    | 1 on [0, ∞)             |
/// | Normal mean, σ known    | e^{−θ²/2σ²}   | θ/σ²          | x    | φ(x/σ)/σ                |
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExpFamilyKind {
    Bernoulli,
    Poisson,
    Exponential,
    NormalKnownVariance { sigma: f64 },
}

impl ExpFamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExpFamilyKind::Bernoulli => "bernoulli",
            ExpFamilyKind::Poisson => "poisson",
            ExpFamilyKind::Exponential => "exponential",
            ExpFamilyKind::NormalKnownVariance { .. } => "normal-known-variance",
        }
    }

    pub fn check_theta(&self, theta: f64) -> Result<()> {
        let ok = match *self {
            ExpFamilyKind::Bernoulli => theta > 0.0 && theta < 1.0,
            ExpFamilyKind::Poisson | ExpFamilyKind::Exponential => theta.is_finite() && theta > 0.0,
            ExpFamilyKind::NormalKnownVariance { sigma } => {
                check_positive("sigma", sigma)?;
                theta.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!(
                "theta = {theta} is outside the {} parameter range",
                self.name()
            )))
        }
    }

    /// ln c(θ).
    pub fn log_c(&self, theta: f64) -> f64 {
        match *self {
            ExpFamilyKind::Bernoulli => (-theta).ln_1p(),
            ExpFamilyKind::Poisson => -theta,
            ExpFamilyKind::Exponential => theta.ln(),
            ExpFamilyKind::NormalKnownVariance { sigma } => -theta * theta / (2.0 * sigma * sigma),
        }
    }

    /// c(θ).
    pub fn c(&self, theta: f64) -> f64 {
        self.log_c(theta).exp()
    }

    /// Q(θ), the natural-parameter map.
    pub fn q(&self, theta: f64) -> f64 {
        match *self {
            ExpFamilyKind::Bernoulli => theta.ln() - (-theta).ln_1p(),
            ExpFamilyKind::Poisson => theta.ln(),
            ExpFamilyKind::Exponential => -theta,
            ExpFamilyKind::NormalKnownVariance { sigma } => theta / (sigma * sigma),
        }
    }

    /// T(x), the sufficient statistic. Identity for every shipped kind.
    pub fn t(&self, x: f64) -> f64 {
        x
    }

    /// ln h(x), or an error when x is outside the support.
    pub fn log_h(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        Ok(match *self {
            ExpFamilyKind::Bernoulli | ExpFamilyKind::Exponential => 0.0,
            ExpFamilyKind::Poisson => -ln_gamma(x + 1.0),
            ExpFamilyKind::NormalKnownVariance { sigma } => {
                -x * x / (2.0 * sigma * sigma) - sigma.ln() - 0.5 * (2.0 * PI).ln()
            }
        })
    }

    /// h(x).
    pub fn h(&self, x: f64) -> Result<f64> {
        self.log_h(x).map(f64::exp)
    }

    pub fn check_support(&self, x: f64) -> Result<()> {
        let ok = match self {
            ExpFamilyKind::Bernoulli => x == 0.0 || x == 1.0,
            ExpFamilyKind::Poisson => x >= 0.0 && x.fract() == 0.0,
            ExpFamilyKind::Exponential => x >= 0.0,
            ExpFamilyKind::NormalKnownVariance { .. } => x.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfSupport {
                family: self.name(),
                value: x,
            })
        }
    }

    /// The support when it is a finite set.
    pub fn finite_support(&self) -> Option<Vec<f64>> {
        match self {
            ExpFamilyKind::Bernoulli => Some(vec![0.0, 1.0]),
            _ => None,
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, ExpFamilyKind::Bernoulli | ExpFamilyKind::Poisson)
    }

    // First and second derivatives of ln c and Q, registered per kind.

    fn dlog_c(&self, theta: f64) -> f64 {
        match *self {
            ExpFamilyKind::Bernoulli => -1.0 / (1.0 - theta),
            ExpFamilyKind::Poisson => -1.0,
            ExpFamilyKind::Exponential => 1.0 / theta,
            ExpFamilyKind::NormalKnownVariance { sigma } => -theta / (sigma * sigma),
        }
    }

    fn d2log_c(&self, theta: f64) -> f64 {
        match *self {
            ExpFamilyKind::Bernoulli => -1.0 / (1.0 - theta).powi(2),
            ExpFamilyKind::Poisson => 0.0,
            ExpFamilyKind::Exponential => -1.0 / (theta * theta),
            ExpFamilyKind::NormalKnownVariance { sigma } => -1.0 / (sigma * sigma),
        }
    }

    fn dq(&self, theta: f64) -> f64 {
        match *self {
            ExpFamilyKind::Bernoulli => 1.0 / theta + 1.0 / (1.0 - theta),
            ExpFamilyKind::Poisson => 1.0 / theta,
            ExpFamilyKind::Exponential => -1.0,
            ExpFamilyKind::NormalKnownVariance { sigma } => 1.0 / (sigma * sigma),
        }
    }

    fn d2q(&self, theta: f64) -> f64 {
        match *self {
            ExpFamilyKind::Bernoulli => -1.0 / (theta * theta) + 1.0 / (1.0 - theta).powi(2),
            ExpFamilyKind::Poisson => -1.0 / (theta * theta),
            ExpFamilyKind::Exponential | ExpFamilyKind::NormalKnownVariance { .. } => 0.0,
        }
    }
}

/// An exponential-family model at a fixed parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpFamilyModel {
    kind: ExpFamilyKind,
    theta: f64,
}

impl ExpFamilyModel {
    pub fn new(kind: ExpFamilyKind, theta: f64) -> Result<Self> {
        kind.check_theta(theta)?;
        Ok(ExpFamilyModel { kind, theta })
    }

    pub fn kind(&self) -> ExpFamilyKind {
        self.kind
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// f(x|θ) for a single point.
    pub fn density(&self, x: f64) -> Result<f64> {
        let log_h = self.kind.log_h(x)?;
        Ok((self.kind.log_c(self.theta) + self.kind.q(self.theta) * self.kind.t(x) + log_h).exp())
    }

    fn sum_t(&self, sample: &SampleBatch) -> Result<f64> {
        sample.observations().iter().try_fold(0.0, |acc, &x| {
            self.kind.check_support(x)?;
            Ok(acc + self.kind.t(x))
        })
    }
}

/// Any model a test procedure can be built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ModelSpec {
    NormalMean(NormalMeanModel),
    NormalVariance(NormalVarianceModel),
    ExpFamily(ExpFamilyModel),
}

impl ModelSpec {
    pub fn normal_mean(theta: f64, sigma: f64) -> Result<Self> {
        NormalMeanModel::new(theta, sigma).map(ModelSpec::NormalMean)
    }

    pub fn normal_variance(theta: f64, sigma2: f64) -> Result<Self> {
        NormalVarianceModel::new(theta, sigma2).map(ModelSpec::NormalVariance)
    }

    pub fn exp_family(kind: ExpFamilyKind, theta: f64) -> Result<Self> {
        ExpFamilyModel::new(kind, theta).map(ModelSpec::ExpFamily)
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            ModelSpec::NormalMean(_) => "normal-mean",
            ModelSpec::NormalVariance(_) => "normal-variance",
            ModelSpec::ExpFamily(m) => m.kind.name(),
        }
    }

    /// The parameter of interest.
    pub fn theta(&self) -> f64 {
        match self {
            ModelSpec::NormalMean(m) => m.theta,
            ModelSpec::NormalVariance(m) => m.sigma2,
            ModelSpec::ExpFamily(m) => m.theta,
        }
    }

    /// Same family and nuisance values, parameter of interest replaced.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        match self {
            ModelSpec::NormalMean(m) => ModelSpec::normal_mean(theta, m.sigma),
            ModelSpec::NormalVariance(m) => ModelSpec::normal_variance(m.theta, theta),
            ModelSpec::ExpFamily(m) => ModelSpec::exp_family(m.kind, theta),
        }
    }

    /// True when both models differ at most in the parameter of interest.
    pub fn same_family(&self, other: &ModelSpec) -> bool {
        match (self, other) {
            (ModelSpec::NormalMean(a), ModelSpec::NormalMean(b)) => a.sigma == b.sigma,
            (ModelSpec::NormalVariance(a), ModelSpec::NormalVariance(b)) => a.theta == b.theta,
            (ModelSpec::ExpFamily(a), ModelSpec::ExpFamily(b)) => a.kind == b.kind,
            _ => false,
        }
    }

    /// ln L(x|θ), summed observation by observation.
    pub fn log_likelihood(&self, sample: &SampleBatch) -> Result<f64> {
        let xs = sample.observations();
        match self {
            ModelSpec::NormalMean(m) => {
                let norm = -0.5 * (2.0 * PI).ln() - m.sigma.ln();
                let two_var = 2.0 * m.sigma * m.sigma;
                Ok(xs
                    .iter()
                    .map(|x| norm - (x - m.theta).powi(2) / two_var)
                    .sum())
            }
            ModelSpec::NormalVariance(m) => {
                let norm = -0.5 * (2.0 * PI * m.sigma2).ln();
                Ok(xs
                    .iter()
                    .map(|x| norm - (x - m.theta).powi(2) / (2.0 * m.sigma2))
                    .sum())
            }
            ModelSpec::ExpFamily(m) => {
                let log_c = m.kind.log_c(m.theta);
                let q = m.kind.q(m.theta);
                xs.iter().try_fold(0.0, |acc, &x| {
                    let log_h = m.kind.log_h(x)?;
                    Ok(acc + log_c + q * m.kind.t(x) + log_h)
                })
            }
        }
    }

    /// L̇(x|θ₀)/L(x|θ₀) = ∂θ ln L at θ₀.
    pub fn score_ratio(&self, theta0: f64, sample: &SampleBatch) -> Result<f64> {
        let at = self.with_theta(theta0)?;
        let n = sample.len() as f64;
        match at {
            ModelSpec::NormalMean(m) => Ok(n * (sample.mean() - theta0) / (m.sigma * m.sigma)),
            ModelSpec::NormalVariance(m) => {
                let v = m.sigma2;
                Ok(-n / (2.0 * v) + sample.sum_sq_dev(m.theta) / (2.0 * v * v))
            }
            ModelSpec::ExpFamily(m) => {
                let sum_t = m.sum_t(sample)?;
                Ok(n * m.kind.dlog_c(theta0) + m.kind.dq(theta0) * sum_t)
            }
        }
    }

    /// L″(x|θ₀)/L(x|θ₀) = (∂θ ln L)² + ∂²θ ln L at θ₀.
    pub fn second_ratio(&self, theta0: f64, sample: &SampleBatch) -> Result<f64> {
        let at = self.with_theta(theta0)?;
        let score = at.score_ratio(theta0, sample)?;
        let n = sample.len() as f64;
        let curvature = match at {
            ModelSpec::NormalMean(m) => -n / (m.sigma * m.sigma),
            ModelSpec::NormalVariance(m) => {
                let v = m.sigma2;
                n / (2.0 * v * v) - sample.sum_sq_dev(m.theta) / (v * v * v)
            }
            ModelSpec::ExpFamily(m) => {
                n * m.kind.d2log_c(theta0) + m.kind.d2q(theta0) * m.sum_t(sample)?
            }
        };
        Ok(score * score + curvature)
    }

    /// Draws `n` i.i.d. observations.
    pub fn draw<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<SampleBatch> {
        if n == 0 {
            return Err(domain("sample size must be at least 1"));
        }
        let observations: Vec<f64> = match *self {
            ModelSpec::NormalMean(m) => {
                let d = Normal::new(m.theta, m.sigma).map_err(|e| domain(e.to_string()))?;
                (0..n).map(|_| d.sample(rng)).collect()
            }
            ModelSpec::NormalVariance(m) => {
                let d = Normal::new(m.theta, m.sigma2.sqrt()).map_err(|e| domain(e.to_string()))?;
                (0..n).map(|_| d.sample(rng)).collect()
            }
            ModelSpec::ExpFamily(m) => match m.kind {
                ExpFamilyKind::Bernoulli => {
                    let d = Bernoulli::new(m.theta).map_err(|e| domain(e.to_string()))?;
                    (0..n)
                        .map(|_| if d.sample(rng) { 1.0 } else { 0.0 })
                        .collect()
                }
                ExpFamilyKind::Poisson => {
                    let d = Poisson::new(m.theta).map_err(|e| domain(e.to_string()))?;
                    (0..n).map(|_| d.sample(rng)).collect()
                }
                ExpFamilyKind::Exponential => {
                    let d = Exp::new(m.theta).map_err(|e| domain(e.to_string()))?;
                    (0..n).map(|_| d.sample(rng)).collect()
                }
                ExpFamilyKind::NormalKnownVariance { sigma } => {
                    let d = Normal::new(m.theta, sigma).map_err(|e| domain(e.to_string()))?;
                    (0..n).map(|_| d.sample(rng)).collect()
                }
            },
        };
        SampleBatch::new(observations)
    }
}

/// A model family with its nuisance values fixed; `model(θ)` picks the
/// member at a given parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    NormalMean { sigma: f64 },
    NormalVariance { mean: f64 },
    ExpFamily { kind: ExpFamilyKind },
}

impl Family {
    /// Parses a family name as used on the command line. `nuisance` is σ for
    /// `normal-mean`, the known mean for `normal-variance`; the discrete and
    /// exponential families take none.
    pub fn from_name(name: &str, nuisance: Option<f64>) -> Result<Self> {
        let need =
            |what: &str| nuisance.ok_or_else(|| domain(format!("family {name} requires {what}")));
        match name {
            "normal-mean" => Ok(Family::NormalMean {
                sigma: need("sigma")?,
            }),
            "normal-variance" => Ok(Family::NormalVariance {
                mean: nuisance.unwrap_or(0.0),
            }),
            "bernoulli" => Ok(Family::ExpFamily {
                kind: ExpFamilyKind::Bernoulli,
            }),
            "poisson" => Ok(Family::ExpFamily {
                kind: ExpFamilyKind::Poisson,
            }),
            "exponential" => Ok(Family::ExpFamily {
                kind: ExpFamilyKind::Exponential,
            }),
            "normal-known-variance" => Ok(Family::ExpFamily {
                kind: ExpFamilyKind::NormalKnownVariance {
                    sigma: need("sigma")?,
                },
            }),
            other => Err(domain(format!("unknown family {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::NormalMean { .. } => "normal-mean",
            Family::NormalVariance { .. } => "normal-variance",
            Family::ExpFamily { kind } => kind.name(),
        }
    }

    pub fn model(&self, theta: f64) -> Result<ModelSpec> {
        match *self {
            Family::NormalMean { sigma } => ModelSpec::normal_mean(theta, sigma),
            Family::NormalVariance { mean } => ModelSpec::normal_variance(mean, theta),
            Family::ExpFamily { kind } => ModelSpec::exp_family(kind, theta),
        }
    }
}
