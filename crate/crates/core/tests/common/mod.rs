//! Helpers shared by the integration tests and the acceptance suite.

#![allow(dead_code)]

use optest::rng::substream;
use optest::{build_lr_test, Family, Result, SampleBatch, SimpleTestProblem};
use rand::Rng;

/// Families the derivative oracle covers.
pub const DERIVATIVE_FAMILIES: [&str; 6] = [
    "normal-mean",
    "normal-variance",
    "bernoulli",
    "poisson",
    "exponential",
    "normal-known-variance",
];

/// A random `(model family, θ₀, sample)` triple plus the step scale for
/// finite differences at θ₀.
pub struct DerivativeCase {
    pub family: Family,
    pub theta0: f64,
    pub sample: SampleBatch,
    pub scale: f64,
}

pub fn derivative_case<R: Rng>(name: &str, rng: &mut R) -> Result<DerivativeCase> {
    let n = rng.random_range(1..=20usize);
    let (family, theta_data, theta0, scale) = match name {
        "normal-mean" | "normal-known-variance" => {
            let sigma = rng.random_range(0.5..3.0);
            let data = rng.random_range(-5.0..5.0);
            let theta0 = data + sigma * rng.random_range(-1.0..1.0);
            (Family::from_name(name, Some(sigma))?, data, theta0, sigma)
        }
        "normal-variance" => {
            let mean = rng.random_range(-2.0..2.0);
            let theta0 = rng.random_range(0.5..4.0);
            let family = Family::from_name(name, Some(mean))?;
            (family, rng.random_range(0.5..4.0), theta0, theta0)
        }
        "bernoulli" => {
            let theta0: f64 = rng.random_range(0.15..0.85);
            (
                Family::from_name(name, None)?,
                rng.random_range(0.1..0.9),
                theta0,
                theta0.min(1.0 - theta0),
            )
        }
        "poisson" => {
            let theta0 = rng.random_range(0.5..5.0);
            (
                Family::from_name(name, None)?,
                rng.random_range(0.5..5.0),
                theta0,
                theta0,
            )
        }
        "exponential" => {
            let theta0 = rng.random_range(0.5..3.0);
            (
                Family::from_name(name, None)?,
                rng.random_range(0.5..3.0),
                theta0,
                theta0,
            )
        }
        other => panic!("no derivative case for {other}"),
    };
    let sample = family.model(theta_data)?.draw(n, rng)?;
    Ok(DerivativeCase {
        family,
        theta0,
        sample,
        scale,
    })
}

/// Relative errors of `score_ratio` and `second_ratio` against five-point
/// finite differences of the log-likelihood, each divided by max(|exact|, 1).
pub fn derivative_errors(case: &DerivativeCase) -> Result<(f64, f64)> {
    let h = 1e-3 * case.scale;
    let ll = |theta: f64| case.family.model(theta)?.log_likelihood(&case.sample);
    let t = case.theta0;
    let (m2, m1, z, p1, p2) = (
        ll(t - 2.0 * h)?,
        ll(t - h)?,
        ll(t)?,
        ll(t + h)?,
        ll(t + 2.0 * h)?,
    );
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);

    let model = case.family.model(t)?;
    let score = model.score_ratio(t, &case.sample)?;
    let second = model.second_ratio(t, &case.sample)?;
    let rel = |approx: f64, exact: f64| (approx - exact).abs() / exact.abs().max(1.0);
    Ok((rel(d1, score), rel(d1 * d1 + d2, second)))
}

/// Decision agreement between the closed-form optimum test and the raw
/// likelihood-ratio rule on random samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrAgreement {
    pub samples: usize,
    pub mismatches: usize,
    /// Samples within 1e-12 (relative) of either rule's threshold.
    pub excluded: usize,
}

/// Draws `samples` samples, alternating between the two hypotheses, with n
/// uniform on 1..=30.
pub fn closed_form_vs_raw_lr(
    family: Family,
    theta0: f64,
    theta1: f64,
    samples: usize,
    seed: u64,
) -> Result<LrAgreement> {
    let model0 = family.model(theta0)?;
    let model1 = family.model(theta1)?;
    let raw = build_lr_test(&model0, &model1)?;
    let mut out = LrAgreement {
        samples,
        mismatches: 0,
        excluded: 0,
    };
    for i in 0..samples {
        let mut rng = substream(seed, i as u64);
        let n = rng.random_range(1..=30usize);
        let closed = SimpleTestProblem::new(family, theta0, theta1, n)?.optimum_test()?;
        let source = if i % 2 == 0 { &model0 } else { &model1 };
        let sample = source.draw(n, &mut rng)?;

        let s = closed.statistic(&sample)?;
        let t = closed.threshold();
        let llr = raw.statistic(&sample)?;
        let scale = model0.log_likelihood(&sample)?.abs() + model1.log_likelihood(&sample)?.abs();
        if (s - t).abs() <= 1e-12 * t.abs().max(1.0) || llr.abs() <= 1e-12 * scale.max(1.0) {
            out.excluded += 1;
            continue;
        }
        if closed.decide_statistic(s) != raw.decide_statistic(llr) {
            out.mismatches += 1;
        }
    }
    Ok(out)
}

/// `(label, family, θ₀, θ₁)` for every closed form checked against the raw rule.
pub fn lr_equivalence_cases() -> Vec<(&'static str, Family, f64, f64)> {
    let normal = Family::NormalMean { sigma: 2.0 };
    let variance = Family::NormalVariance { mean: 1.0 };
    let named = |n: &str| Family::from_name(n, None).unwrap();
    vec![
        ("normal mean, theta1 > theta0", normal, 10.0, 11.0),
        ("normal mean, theta1 < theta0", normal, 11.0, 10.0),
        ("normal variance, s1 > s0", variance, 1.0, 2.5),
        ("normal variance, s1 < s0", variance, 2.5, 1.0),
        ("poisson", named("poisson"), 1.0, 2.0),
        ("bernoulli", named("bernoulli"), 0.3, 0.7),
    ]
}
