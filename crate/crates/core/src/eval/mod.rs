//! Error probabilities: closed forms, Monte Carlo estimates, convergence
//! sweeps and the exhaustive-region oracle for small discrete problems.

pub mod analytic;
pub mod monte_carlo;
pub mod oracle;
pub mod report;
pub mod sweep;
