//! Seeded Monte Carlo estimates of α and β.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::eval::report::ErrorReport;
use crate::models::ModelSpec;
use crate::procedure::{Decision, TestProcedure};
use crate::rng::substream;

pub const MIN_MC_REPS: usize = 100;

/// Rejection rate under `model0` and acceptance rate under `model1` over
/// `reps` samples of size `n` each.
///
/// Replication `i` draws its H₀ sample from substream `2i` and its H₁ sample
/// from substream `2i + 1`; counts are integers, so the report is identical
/// for any thread count.
pub fn monte_carlo_errors(
    test: &TestProcedure,
    model0: &ModelSpec,
    model1: &ModelSpec,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<ErrorReport> {
    if reps < MIN_MC_REPS {
        return Err(domain(format!(
            "need at least {MIN_MC_REPS} replications, got {reps}"
        )));
    }
    let (rejects_h0, accepts_h1) = (0..reps)
        .into_par_iter()
        .map(|i| -> Result<(usize, usize)> {
            let i = i as u64;
            let s0 = model0.draw(n, &mut substream(seed, 2 * i))?;
            let s1 = model1.draw(n, &mut substream(seed, 2 * i + 1))?;
            let r0 = usize::from(test.decide(&s0)? == Decision::Reject);
            let a1 = usize::from(test.decide(&s1)? == Decision::Accept);
            Ok((r0, a1))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    Ok(ErrorReport::monte_carlo(
        n, rejects_h0, accepts_h1, reps, seed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::analytic::analytic_errors_normal_mean;
    use crate::optimum::normal_mean_test;

    #[test]
    fn degenerate_rules_are_exact() {
        let m0 = ModelSpec::normal_mean(0.0, 1.0).unwrap();
        let m1 = ModelSpec::normal_mean(1.0, 1.0).unwrap();
        let r = monte_carlo_errors(
            &TestProcedure::always(Decision::Reject),
            &m0,
            &m1,
            4,
            500,
            3,
        )
        .unwrap();
        assert_eq!(r.alpha.value(), 1.0);
        assert_eq!(r.beta.value(), 0.0);
        assert_eq!(r.se_alpha, Some(0.0));
    }

    #[test]
    fn same_seed_same_report() {
        let m0 = ModelSpec::normal_mean(0.0, 1.0).unwrap();
        let m1 = ModelSpec::normal_mean(1.0, 1.0).unwrap();
        let t = normal_mean_test(0.0, 1.0, 1.0).unwrap();
        let a = monte_carlo_errors(&t, &m0, &m1, 4, 2_000, 42).unwrap();
        let b = monte_carlo_errors(&t, &m0, &m1, 4, 2_000, 42).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo_errors(&t, &m0, &m1, 4, 2_000, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn midpoint_test_matches_analytic() {
        let m0 = ModelSpec::normal_mean(0.0, 1.0).unwrap();
        let m1 = ModelSpec::normal_mean(1.0, 1.0).unwrap();
        let t = normal_mean_test(0.0, 1.0, 1.0).unwrap();
        let mc = monte_carlo_errors(&t, &m0, &m1, 4, 20_000, 5).unwrap();
        let an = analytic_errors_normal_mean(0.0, 1.0, 1.0, 4).unwrap();
        assert!((mc.alpha.value() - an.alpha.value()).abs() <= 3.0 * mc.se_alpha.unwrap());
        assert!((mc.beta.value() - an.beta.value()).abs() <= 3.0 * mc.se_beta.unwrap());
    }

    #[test]
    fn too_few_reps() {
        let m0 = ModelSpec::normal_mean(0.0, 1.0).unwrap();
        let t = TestProcedure::always(Decision::Reject);
        assert!(monte_carlo_errors(&t, &m0, &m0, 4, 99, 1).is_err());
    }
}
