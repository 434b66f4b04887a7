mod common;

use optest::{ModelSpec, SampleBatch};
use proptest::prelude::*;

#[test]
fn finite_differences_agree_for_every_family() {
    for (k, name) in common::DERIVATIVE_FAMILIES.iter().enumerate() {
        for i in 0..100 {
            let mut rng = optest::rng::substream(5000 + k as u64, i);
            let case = common::derivative_case(name, &mut rng).unwrap();
            let (es, e2) = common::derivative_errors(&case).unwrap();
            assert!(es <= 1e-5, "{name} case {i}: score error {es:e}");
            assert!(e2 <= 1e-4, "{name} case {i}: second ratio error {e2:e}");
        }
    }
}

proptest! {
    #[test]
    fn normal_mean_score_has_closed_form(
        xs in prop::collection::vec(-20.0f64..20.0, 1..30),
        theta0 in -10.0f64..10.0,
        sigma in 0.2f64..5.0,
    ) {
        let n = xs.len() as f64;
        let x = SampleBatch::new(xs).unwrap();
        let model = ModelSpec::normal_mean(theta0, sigma).unwrap();
        let s2 = sigma * sigma;
        let score = n * (x.mean() - theta0) / s2;
        let got = model.score_ratio(theta0, &x).unwrap();
        prop_assert!((got - score).abs() <= 1e-9 * score.abs().max(1.0));
        let second = score * score - n / s2;
        let got = model.second_ratio(theta0, &x).unwrap();
        prop_assert!((got - second).abs() <= 1e-9 * second.abs().max(1.0));
    }

    #[test]
    fn poisson_score_has_closed_form(
        xs in prop::collection::vec(0u32..15, 1..30),
        theta0 in 0.2f64..8.0,
    ) {
        let n = xs.len() as f64;
        let x = SampleBatch::new(xs.into_iter().map(f64::from).collect()).unwrap();
        let model = optest::Family::from_name("poisson", None).unwrap().model(theta0).unwrap();
        let score = x.sum() / theta0 - n;
        let got = model.score_ratio(theta0, &x).unwrap();
        prop_assert!((got - score).abs() <= 1e-9 * score.abs().max(1.0));
        let second = score * score - x.sum() / (theta0 * theta0);
        let got = model.second_ratio(theta0, &x).unwrap();
        prop_assert!((got - second).abs() <= 1e-9 * second.abs().max(1.0));
    }
}
