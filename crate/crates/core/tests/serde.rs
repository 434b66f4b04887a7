use optest::{
    brute_force_certify, convergence_sweep, locally_optimum_test, monte_carlo_errors,
    normal_variance_test, plugin_test, Certification, DiscreteSpace, ErrorReport, Family,
    LocalTestConfig, ModelSpec, Probability, SampleBatch, Side, SimpleTestProblem, SweepTable,
    TestProcedure,
};
use serde::{de::DeserializeOwned, Serialize};

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(value: &T) {
    let json = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&json).unwrap();
    assert_eq!(&back, value, "{json}");
}

#[test]
fn procedures_round_trip() {
    let model = ModelSpec::normal_mean(10.0, 2.0).unwrap();
    let tests: Vec<TestProcedure> = vec![
        optest::normal_mean_test(10.0, 11.0, 2.0).unwrap(),
        normal_variance_test(0.0, 1.0, 2.0, 10).unwrap(),
        optest::expfam_test(optest::ExpFamilyKind::Poisson, 1.0, 2.0, 4).unwrap(),
        optest::fixed_alpha_comparator(10.0, 2.0, 16, 0.05).unwrap(),
        locally_optimum_test(&model, LocalTestConfig::new(10.0, Side::Greater)).unwrap(),
        optest::locally_optimum_unbiased_test(&model, 10.0).unwrap(),
        plugin_test(10.0, 11.0).unwrap(),
        optest::build_lr_test(&model, &model.with_theta(11.0).unwrap()).unwrap(),
        TestProcedure::always(optest::Decision::Reject),
    ];
    for t in &tests {
        round_trip(t);
        round_trip(&t.descriptor());
    }
    let json = serde_json::to_value(tests[0].descriptor()).unwrap();
    assert_eq!(json["direction"], "GE");
    assert_eq!(json["provenance"], "normal-mean-midpoint");
}

#[test]
fn reports_round_trip() {
    let problem =
        SimpleTestProblem::new(Family::NormalMean { sigma: 2.0 }, 10.0, 11.0, 16).unwrap();
    round_trip(&problem);
    let analytic: ErrorReport = problem.optimum_errors_at(16).unwrap();
    round_trip(&analytic);
    let mc = monte_carlo_errors(
        &problem.optimum_test().unwrap(),
        &problem.null_model().unwrap(),
        &problem.alt_model().unwrap(),
        16,
        500,
        3,
    )
    .unwrap();
    round_trip(&mc);
    let sweep: SweepTable = convergence_sweep(&problem, &[4, 16, 64, 256]).unwrap();
    round_trip(&sweep);

    let b = Family::from_name("bernoulli", None).unwrap();
    let space = DiscreteSpace::product(&b.model(0.3).unwrap(), &b.model(0.7).unwrap(), 3).unwrap();
    let c: Certification = brute_force_certify(&space).unwrap();
    round_trip(&c);
}

#[test]
fn invalid_values_are_rejected_on_parse() {
    assert!(serde_json::from_str::<Probability>("1.5").is_err());
    assert!(serde_json::from_str::<Probability>("0.25").is_ok());
    assert!(serde_json::from_str::<SampleBatch>("[]").is_err());
    assert!(serde_json::from_str::<SampleBatch>("[1.0, 2.0]").is_ok());
}
