use optest::{
    analytic_errors_local_rule, analytic_errors_lou, analytic_errors_z_test, fixed_z_comparator,
    monte_carlo_errors, normal_mean_locally_optimum, normal_mean_locally_optimum_unbiased,
    ErrorReport, Family, LocalTestConfig, Method, Side, SimpleTestProblem, TestProcedure,
};

const REPS: usize = 40_000;

fn assert_within_3se(label: &str, mc: &ErrorReport, analytic: &ErrorReport) {
    assert_eq!(mc.method, Method::MonteCarlo);
    for (what, got, want, se) in [
        (
            "alpha",
            mc.alpha.value(),
            analytic.alpha.value(),
            mc.se_alpha.unwrap(),
        ),
        (
            "beta",
            mc.beta.value(),
            analytic.beta.value(),
            mc.se_beta.unwrap(),
        ),
    ] {
        // A zero SE only arises when the estimate sits at 0 or 1.
        let bound = 3.0 * se.max(1.0 / REPS as f64);
        assert!(
            (got - want).abs() <= bound,
            "{label} {what}: {got} vs {want} (3 SE = {bound})"
        );
    }
}

fn simulate(problem: &SimpleTestProblem, test: &TestProcedure, seed: u64) -> ErrorReport {
    let m0 = problem.null_model().unwrap();
    let m1 = problem.alt_model().unwrap();
    monte_carlo_errors(test, &m0, &m1, problem.n, REPS, seed).unwrap()
}

#[test]
fn optimum_tests_match_analytic_errors() {
    let named = |n: &str| Family::from_name(n, None).unwrap();
    let problems = [
        (Family::NormalMean { sigma: 2.0 }, 10.0, 11.0, 16),
        (Family::NormalMean { sigma: 1.0 }, 1.0, 0.0, 5),
        (Family::NormalVariance { mean: 0.0 }, 1.0, 2.0, 10),
        (Family::NormalVariance { mean: 2.0 }, 3.0, 1.5, 12),
        (named("bernoulli"), 0.3, 0.7, 3),
        (named("bernoulli"), 0.6, 0.4, 25),
        (named("poisson"), 1.0, 2.0, 4),
        (named("exponential"), 2.0, 1.0, 6),
        (
            Family::from_name("normal-known-variance", Some(1.5)).unwrap(),
            0.0,
            1.0,
            3,
        ),
    ];
    for (k, (family, t0, t1, n)) in problems.into_iter().enumerate() {
        let problem = SimpleTestProblem::new(family, t0, t1, n).unwrap();
        let mc = simulate(&problem, &problem.optimum_test().unwrap(), 300 + k as u64);
        let analytic = problem.optimum_errors_at(n).unwrap();
        assert_within_3se(&format!("{family:?} {t0} {t1} n={n}"), &mc, &analytic);
    }
}

#[test]
fn local_rules_and_comparator_match_analytic_errors() {
    let problem =
        SimpleTestProblem::new(Family::NormalMean { sigma: 2.0 }, 10.0, 11.0, 16).unwrap();
    let config = LocalTestConfig::new(10.0, Side::Greater);
    let local = normal_mean_locally_optimum(2.0, 16, config).unwrap();
    assert_within_3se(
        "local",
        &simulate(&problem, &local, 1),
        &analytic_errors_local_rule(11.0, 2.0, 16, config).unwrap(),
    );
    let lou = normal_mean_locally_optimum_unbiased(10.0, 2.0, 16).unwrap();
    assert_within_3se(
        "lou",
        &simulate(&problem, &lou, 2),
        &analytic_errors_lou(10.0, 11.0, 2.0, 16).unwrap(),
    );
    let z = fixed_z_comparator(10.0, 2.0, 16, 1.64).unwrap();
    assert_within_3se(
        "comparator",
        &simulate(&problem, &z, 3),
        &analytic_errors_z_test(10.0, 11.0, 2.0, 16, 1.64).unwrap(),
    );
}

#[test]
fn generic_score_rule_matches_its_closed_form() {
    let problem = SimpleTestProblem::new(Family::NormalMean { sigma: 2.0 }, 10.0, 9.0, 16).unwrap();
    let config = LocalTestConfig::new(10.0, Side::Less);
    let generic = optest::locally_optimum_test(&problem.null_model().unwrap(), config).unwrap();
    assert_within_3se(
        "generic lower-side score rule",
        &simulate(&problem, &generic, 4),
        &analytic_errors_local_rule(9.0, 2.0, 16, config).unwrap(),
    );
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let problem =
        SimpleTestProblem::new(Family::NormalMean { sigma: 2.0 }, 10.0, 11.0, 16).unwrap();
    let test = problem.optimum_test().unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| simulate(&problem, &test, 99))
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(1));
    assert_ne!(one, simulate(&problem, &test, 100));
}
