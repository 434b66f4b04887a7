//! Hypothesis tests that minimise the sum of the two error probabilities,
//! together with locally optimum (score) tests, locally optimum unbiased
//! tests and the profile-likelihood plug-in test for an unknown variance.
//!
//! Every procedure can be evaluated analytically where a closed form is
//! known and by seeded Monte Carlo simulation in every case. Small discrete
//! problems can additionally be certified by exhaustive enumeration of all
//! critical regions.
//!
//! ```
//! use optest::{normal_mean_test, analytic_errors_normal_mean, Direction};
//!
//! let test = normal_mean_test(10.0, 11.0, 2.0).unwrap();
//! assert_eq!(test.threshold(), 10.5);
//! assert_eq!(test.direction(), Direction::Ge);
//!
//! let report = analytic_errors_normal_mean(10.0, 11.0, 2.0, 16).unwrap();
//! assert_eq!(report.alpha, report.beta);
//! ```

pub mod dist;
pub mod error;
pub mod eval;
pub mod local;
pub mod models;
pub mod optimum;
pub mod plugin;
pub mod procedure;
pub mod rng;

pub use dist::{
    chi2_cdf, chi2_sf, std_normal_cdf, std_normal_quantile, std_normal_sf, DegreesOfFreedom,
    Probability,
};
pub use error::{Error, Result};
pub use eval::analytic::{
    analytic_alpha_lou, analytic_errors_expfam, analytic_errors_local_rule,
    analytic_errors_locally_optimum, analytic_errors_lou, analytic_errors_mean_threshold,
    analytic_errors_normal_mean, analytic_errors_normal_variance, analytic_errors_z_test,
};
pub use eval::monte_carlo::monte_carlo_errors;
pub use eval::oracle::{brute_force_certify, Certification, DiscreteSpace, MAX_ORACLE_POINTS};
pub use eval::report::{ErrorReport, Method};
pub use eval::sweep::{convergence_sweep, SimpleTestProblem, SweepTable};
pub use local::{
    locally_optimum_test, locally_optimum_unbiased_test, normal_mean_locally_optimum,
    normal_mean_locally_optimum_unbiased, unbiasedness_defect, DefectEstimate, LocalTestConfig,
    Side, Variant,
};
pub use models::{
    ExpFamilyKind, ExpFamilyModel, Family, ModelSpec, NormalMeanModel, NormalVarianceModel,
    SampleBatch,
};
pub use optimum::{
    build_lr_test, expfam_test, fixed_alpha_comparator, fixed_z_comparator, normal_mean_test,
    normal_variance_test,
};
pub use plugin::{
    check_plugin_equivalence, mle_sigma2, plugin_test, profile_log_likelihood, EquivalenceReport,
    ProfileLikelihood,
};
pub use procedure::{
    Decision, Direction, ProcedureDescriptor, Provenance, Statistic, TestProcedure, TiePolicy,
};
