//! Exhaustive certification on small discrete sample spaces: enumerate every
//! critical region W and check that {L₁ ≥ L₀} maximises P₁(W) − P₀(W).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::models::{ModelSpec, SampleBatch};
use crate::procedure::{Decision, TestProcedure};

/// Upper bound on the number of sample points (2²⁰ regions).
pub const MAX_ORACLE_POINTS: usize = 20;

/// Regions whose value is within this of the maximum count as co-optimal.
pub const CO_OPTIMAL_TOL: f64 = 1e-12;

/// An enumerated sample space with point masses under both hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteSpace {
    points: Vec<SampleBatch>,
    p0: Vec<f64>,
    p1: Vec<f64>,
}

impl DiscreteSpace {
    pub fn new(points: Vec<SampleBatch>, p0: Vec<f64>, p1: Vec<f64>) -> Result<Self> {
        if points.len() != p0.len() || points.len() != p1.len() {
            return Err(domain("points and masses must have equal length"));
        }
        for (name, masses) in [("p0", &p0), ("p1", &p1)] {
            if masses.iter().any(|&m| m.is_nan() || m < 0.0) {
                return Err(domain(format!("{name} has a negative or NaN mass")));
            }
            let total: f64 = masses.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(domain(format!("{name} sums to {total}, not 1")));
            }
        }
        Ok(DiscreteSpace { points, p0, p1 })
    }

    /// The n-fold product space of a finite-support model pair, points in
    /// lexicographic order of the support.
    pub fn product(model0: &ModelSpec, model1: &ModelSpec, n: usize) -> Result<Self> {
        if !model0.same_family(model1) {
            return Err(domain("models do not share a support"));
        }
        let support = match model0 {
            ModelSpec::ExpFamily(m) => m.kind().finite_support(),
            _ => None,
        }
        .ok_or_else(|| {
            Error::Unsupported(format!("{} has no finite support", model0.family_name()))
        })?;
        if n == 0 {
            return Err(domain("sample size must be at least 1"));
        }
        let count = u32::try_from(n)
            .ok()
            .and_then(|e| support.len().checked_pow(e))
            .filter(|&c| c <= MAX_ORACLE_POINTS)
            .ok_or(Error::Capacity {
                requested: support.len().saturating_pow(n.min(64) as u32),
                limit: MAX_ORACLE_POINTS,
            })?;

        let mut points = Vec::with_capacity(count);
        let mut p0 = Vec::with_capacity(count);
        let mut p1 = Vec::with_capacity(count);
        for idx in 0..count {
            let mut rest = idx;
            let mut obs = vec![0.0; n];
            for slot in obs.iter_mut().rev() {
                *slot = support[rest % support.len()];
                rest /= support.len();
            }
            let point = SampleBatch::new(obs)?;
            p0.push(model0.log_likelihood(&point)?.exp());
            p1.push(model1.log_likelihood(&point)?.exp());
            points.push(point);
        }
        DiscreteSpace::new(points, p0, p1)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SampleBatch] {
        &self.points
    }

    pub fn p0(&self) -> &[f64] {
        &self.p0
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    /// Membership of each point in the rejection region of `test`.
    pub fn region_of(&self, test: &TestProcedure) -> Result<Vec<bool>> {
        self.points
            .iter()
            .map(|p| Ok(test.decide(p)? == Decision::Reject))
            .collect()
    }

    /// Σ_W p₁ − Σ_W p₀.
    pub fn region_value(&self, region: &[bool]) -> f64 {
        region
            .iter()
            .zip(self.p0.iter().zip(&self.p1))
            .filter(|(inside, _)| **inside)
            .map(|(_, (a, b))| b - a)
            .sum()
    }

    /// (α, β) of a region.
    pub fn region_errors(&self, region: &[bool]) -> (f64, f64) {
        let mass = |p: &[f64]| -> f64 {
            region
                .iter()
                .zip(p)
                .filter(|(inside, _)| **inside)
                .map(|(_, m)| m)
                .sum()
        };
        (mass(&self.p0), 1.0 - mass(&self.p1))
    }
}

/// Result of exhaustive region enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub points: usize,
    pub regions: u64,
    /// max over all W of P₁(W) − P₀(W).
    pub max_value: f64,
    /// The same objective for W₀ = {L₁ ≥ L₀}.
    pub w0_value: f64,
    pub w0_region: Vec<bool>,
    pub w0_alpha: f64,
    pub w0_beta: f64,
    pub co_optimal: u64,
    pub certified: bool,
}

/// Enumerates all 2^|S| regions and checks W₀ = {p₁ ≥ p₀} attains the max.
pub fn brute_force_certify(space: &DiscreteSpace) -> Result<Certification> {
    let m = space.len();
    if m > MAX_ORACLE_POINTS {
        return Err(Error::Capacity {
            requested: m,
            limit: MAX_ORACLE_POINTS,
        });
    }
    let gain: Vec<f64> = space.p1.iter().zip(&space.p0).map(|(b, a)| b - a).collect();
    let regions = 1usize << m;

    // value[mask] = value[mask without its lowest bit] + gain[lowest bit]
    let mut value = vec![0.0f64; regions];
    for mask in 1..regions {
        let low = mask.trailing_zeros() as usize;
        value[mask] = value[mask & (mask - 1)] + gain[low];
    }
    let max_value = value.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let co_optimal = value
        .iter()
        .filter(|&&v| v >= max_value - CO_OPTIMAL_TOL)
        .count() as u64;

    let w0_region: Vec<bool> = space
        .p1
        .iter()
        .zip(&space.p0)
        .map(|(b, a)| b >= a)
        .collect();
    let w0_value = space.region_value(&w0_region);
    let (w0_alpha, w0_beta) = space.region_errors(&w0_region);
    Ok(Certification {
        points: m,
        regions: regions as u64,
        max_value,
        w0_value,
        w0_region,
        w0_alpha,
        w0_beta,
        co_optimal,
        certified: w0_value >= max_value - CO_OPTIMAL_TOL,
    })
}
