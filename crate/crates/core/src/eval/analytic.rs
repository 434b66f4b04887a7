//! Closed-form error probabilities.

use crate::dist::{
    chi2_cdf, chi2_sf, gamma_p, gamma_q, ln_gamma, std_normal_cdf, std_normal_sf, DegreesOfFreedom,
    Probability,
};
use crate::error::{domain, Error, Result};
use crate::eval::report::ErrorReport;
use crate::local::{LocalTestConfig, Side, Variant};
use crate::models::{ExpFamilyKind, ModelSpec};
use crate::optimum::{expfam_test, variance_threshold_constant};
use crate::procedure::{Decision, Direction, TestProcedure};

fn check_mean_problem(theta0: f64, theta1: f64, sigma: f64, n: usize) -> Result<()> {
    ModelSpec::normal_mean(theta0, sigma)?;
    ModelSpec::normal_mean(theta1, sigma)?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    Ok(())
}

fn dof(n: usize) -> Result<DegreesOfFreedom> {
    let k = u32::try_from(n).map_err(|_| domain(format!("n = {n} is too large")))?;
    DegreesOfFreedom::new(k)
}

/// Midpoint test for the normal mean: α = β = 1 − Φ(√n |θ₁−θ₀| / 2σ).
pub fn analytic_errors_normal_mean(
    theta0: f64,
    theta1: f64,
    sigma: f64,
    n: usize,
) -> Result<ErrorReport> {
    check_mean_problem(theta0, theta1, sigma, n)?;
    if theta0 == theta1 {
        return Err(Error::DegenerateProblem(format!(
            "theta0 = theta1 = {theta0}"
        )));
    }
    let half_gap = (n as f64).sqrt() * (theta1 - theta0).abs() / (2.0 * sigma);
    let err = std_normal_sf(half_gap)?;
    Ok(ErrorReport::analytic(n, err, err))
}

/// Variance test: α = P[χ²ₙ ≥ nc], 1 − β = P[χ²ₙ ≥ nc σ₀²/σ₁²] when
/// σ₁² > σ₀²; the complementary tails when σ₁² < σ₀².
pub fn analytic_errors_normal_variance(
    theta: f64,
    sigma0_sq: f64,
    sigma1_sq: f64,
    n: usize,
) -> Result<ErrorReport> {
    ModelSpec::normal_variance(theta, sigma0_sq)?;
    ModelSpec::normal_variance(theta, sigma1_sq)?;
    if sigma0_sq == sigma1_sq {
        return Err(Error::DegenerateProblem(format!(
            "sigma0_sq = sigma1_sq = {sigma0_sq}"
        )));
    }
    let k = dof(n)?;
    let nc = n as f64 * variance_threshold_constant(sigma0_sq, sigma1_sq);
    // Under H₁ the statistic is (σ₁²/σ₀²)·χ²ₙ.
    let under_h1 = nc * sigma0_sq / sigma1_sq;
    let (alpha, beta) = if sigma1_sq > sigma0_sq {
        (chi2_sf(nc, k)?, chi2_cdf(under_h1, k)?)
    } else {
        (chi2_cdf(nc, k)?, chi2_sf(under_h1, k)?)
    };
    Ok(ErrorReport::analytic(n, alpha, beta))
}

/// Upper score rule x̄ ≥ θ₀ + σ²/n:
/// α = 1 − Φ(σ/√n), 1 − β = 1 − Φ(−(θ₁−θ₀)√n/σ + σ/√n).
pub fn analytic_errors_locally_optimum(
    theta0: f64,
    theta1: f64,
    sigma: f64,
    n: usize,
) -> Result<ErrorReport> {
    check_mean_problem(theta0, theta1, sigma, n)?;
    if theta1 < theta0 {
        return Err(Error::Unsupported(
            "the upper score rule formula needs theta1 >= theta0; \
             see analytic_errors_local_rule for the lower side"
                .into(),
        ));
    }
    let root_n = (n as f64).sqrt();
    let alpha = std_normal_sf(sigma / root_n)?;
    let beta = std_normal_cdf(-(theta1 - theta0) * root_n / sigma + sigma / root_n)?;
    Ok(ErrorReport::analytic(n, alpha, beta))
}

/// Any threshold rule on x̄ for N(θ, σ²), using x̄ ~ N(θ, σ²/n).
pub fn analytic_errors_mean_threshold(
    theta0: f64,
    theta1: f64,
    sigma: f64,
    n: usize,
    threshold: f64,
    direction: Direction,
) -> Result<ErrorReport> {
    check_mean_problem(theta0, theta1, sigma, n)?;
    let se = sigma / (n as f64).sqrt();
    let z0 = (threshold - theta0) / se;
    let z1 = (threshold - theta1) / se;
    let (alpha, beta) = match direction {
        Direction::Ge => (std_normal_sf(z0)?, std_normal_cdf(z1)?),
        Direction::Le => (std_normal_cdf(z0)?, std_normal_sf(z1)?),
    };
    Ok(ErrorReport::analytic(n, alpha, beta))
}

/// Score rule for the normal mean on either side and in either lower-side
/// reading.
pub fn analytic_errors_local_rule(
    theta1: f64,
    sigma: f64,
    n: usize,
    config: LocalTestConfig,
) -> Result<ErrorReport> {
    let shift = sigma * sigma / n.max(1) as f64;
    let (threshold, direction) = match (config.side, config.variant) {
        (Side::Greater, _) => (config.theta0 + shift, Direction::Ge),
        (Side::Less, Variant::Literal) => (config.theta0 + shift, Direction::Le),
        (Side::Less, Variant::SymmetricAlternative) => (config.theta0 - shift, Direction::Le),
        (Side::TwoSided, _) => {
            return Err(Error::Unsupported(
                "use analytic_errors_lou for two-sided rules".into(),
            ))
        }
    };
    analytic_errors_mean_threshold(config.theta0, theta1, sigma, n, threshold, direction)
}

/// One-sided z test with critical value `critical_z`:
/// α = 1 − Φ(z), 1 − β = 1 − Φ(z − √n(θ₁−θ₀)/σ).
pub fn analytic_errors_z_test(
    theta0: f64,
    theta1: f64,
    sigma: f64,
    n: usize,
    critical_z: f64,
) -> Result<ErrorReport> {
    check_mean_problem(theta0, theta1, sigma, n)?;
    let shift = (n as f64).sqrt() * (theta1 - theta0) / sigma;
    let alpha = std_normal_sf(critical_z)?;
    let beta = std_normal_cdf(critical_z - shift)?;
    Ok(ErrorReport::analytic(n, alpha, beta))
}

/// Size of the second-derivative rule for the normal mean:
/// P[χ²₁ ≥ 1 + σ²/n].
pub fn analytic_alpha_lou(theta0: f64, sigma: f64, n: usize) -> Result<Probability> {
    ModelSpec::normal_mean(theta0, sigma)?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    chi2_sf(1.0 + sigma * sigma / n as f64, DegreesOfFreedom::new(1)?)
}

/// Size and power of the second-derivative rule for the normal mean. Under
/// θ₁ the standardized mean is N(δ, 1) with δ = √n(θ₁−θ₀)/σ, so with
/// r = √(1 + σ²/n) the acceptance probability is Φ(r − δ) − Φ(−r − δ).
pub fn analytic_errors_lou(theta0: f64, theta1: f64, sigma: f64, n: usize) -> Result<ErrorReport> {
    check_mean_problem(theta0, theta1, sigma, n)?;
    let alpha = analytic_alpha_lou(theta0, sigma, n)?;
    let r = (1.0 + sigma * sigma / n as f64).sqrt();
    let delta = (n as f64).sqrt() * (theta1 - theta0) / sigma;
    let accept = std_normal_cdf(r - delta)?.value() - std_normal_cdf(-r - delta)?.value();
    Ok(ErrorReport::analytic(
        n,
        alpha,
        Probability::clamped(accept),
    ))
}

/// Exact errors of the exponential-family sufficient-sum test, using the
/// law of ΣT(xᵢ): binomial, Poisson, gamma or normal.
pub fn analytic_errors_expfam(
    kind: ExpFamilyKind,
    theta0: f64,
    theta1: f64,
    n: usize,
) -> Result<ErrorReport> {
    let test = expfam_test(kind, theta0, theta1, n)?;
    let (_, alpha) = sum_region_probs(kind, theta0, n, &test);
    let (beta, _) = sum_region_probs(kind, theta1, n, &test);
    Ok(ErrorReport::analytic(
        n,
        Probability::clamped(alpha),
        Probability::clamped(beta),
    ))
}

/// `(P[accept], P[reject])` for a sufficient-sum test at parameter `theta`.
fn sum_region_probs(kind: ExpFamilyKind, theta: f64, n: usize, test: &TestProcedure) -> (f64, f64) {
    let t = test.threshold();
    let nf = n as f64;
    let ge = test.direction() == Direction::Ge;
    // (P[S in the upper part], P[S in the lower part]) with the split at t
    // placed so that the tie belongs to the rejection side.
    let (upper, lower) = match kind {
        ExpFamilyKind::Bernoulli => {
            let mut reject = 0.0;
            let mut accept = 0.0;
            for k in 0..=n {
                let kf = k as f64;
                let ln_pmf = ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0)
                    + kf * theta.ln()
                    + (nf - kf) * (-theta).ln_1p();
                match test.decide_statistic(kf) {
                    Decision::Reject => reject += ln_pmf.exp(),
                    Decision::Accept => accept += ln_pmf.exp(),
                }
            }
            return (accept, reject);
        }
        ExpFamilyKind::Poisson => {
            let lambda = nf * theta;
            if ge {
                // S ≥ m with m = ⌈t⌉
                let m = t.ceil();
                if m <= 0.0 {
                    (1.0, 0.0)
                } else {
                    (gamma_p(m, lambda), gamma_q(m, lambda))
                }
            } else {
                // S ≤ M with M = ⌊t⌋
                let m = t.floor();
                if m < 0.0 {
                    (1.0, 0.0)
                } else {
                    (gamma_p(m + 1.0, lambda), gamma_q(m + 1.0, lambda))
                }
            }
        }
        ExpFamilyKind::Exponential => {
            let x = (theta * t).max(0.0);
            (gamma_q(nf, x), gamma_p(nf, x))
        }
        ExpFamilyKind::NormalKnownVariance { sigma } => {
            let z = (t - nf * theta) / (sigma * nf.sqrt());
            let upper = std_normal_sf(z).map(Probability::value).unwrap_or(0.0);
            let lower = std_normal_cdf(z).map(Probability::value).unwrap_or(1.0);
            (upper, lower)
        }
    };
    if ge {
        (lower, upper)
    } else {
        (upper, lower)
    }
}
