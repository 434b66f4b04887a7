//! Each command turns parsed flags into a serializable output value.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use optest::{
    analytic_errors_local_rule, analytic_errors_lou, analytic_errors_normal_mean,
    analytic_errors_z_test, brute_force_certify, convergence_sweep, fixed_alpha_comparator,
    fixed_z_comparator, locally_optimum_test, locally_optimum_unbiased_test, monte_carlo_errors,
    normal_mean_locally_optimum, normal_mean_locally_optimum_unbiased, plugin_test,
    std_normal_quantile, Certification, DiscreteSpace, ErrorReport, Family, LocalTestConfig,
    ProcedureDescriptor, Side, SimpleTestProblem, SweepTable, TestProcedure, Variant,
};

use crate::args::{
    AnalyzeArgs, CompareArgs, FamilyArgs, LocalArgs, OracleArgs, ProcedureArg, ProcedureArgs,
    SideArg, SimulateArgs, SweepArgs, VariantArg,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProcedureKind {
    Optimum,
    Local,
    Lou,
    Plugin,
    FixedAlpha,
}

impl ProcedureKind {
    pub fn label(self) -> &'static str {
        match self {
            ProcedureKind::Optimum => "optimum",
            ProcedureKind::Local => "local",
            ProcedureKind::Lou => "lou",
            ProcedureKind::Plugin => "plugin",
            ProcedureKind::FixedAlpha => "fixed-alpha",
        }
    }
}

impl From<ProcedureArg> for ProcedureKind {
    fn from(p: ProcedureArg) -> Self {
        match p {
            ProcedureArg::Optimum => ProcedureKind::Optimum,
            ProcedureArg::Local => ProcedureKind::Local,
            ProcedureArg::Lou => ProcedureKind::Lou,
            ProcedureArg::Plugin => ProcedureKind::Plugin,
            ProcedureArg::FixedAlpha => ProcedureKind::FixedAlpha,
        }
    }
}

/// How the fixed-alpha comparator's critical value is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "kebab-case")]
pub enum Level {
    Alpha { alpha: f64 },
    CriticalZ { z: f64 },
}

impl Level {
    pub fn describe(self) -> String {
        match self {
            Level::Alpha { alpha } => format!("alpha={alpha}"),
            Level::CriticalZ { z } => format!("z={z}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Choice {
    pub kind: ProcedureKind,
    pub level: Option<Level>,
    pub local: LocalTestConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub problem: SimpleTestProblem,
    pub procedure: ProcedureKind,
    pub level: Option<Level>,
    pub descriptor: ProcedureDescriptor,
    pub analytic: ErrorReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateOutput {
    pub problem: SimpleTestProblem,
    pub procedure: ProcedureKind,
    pub level: Option<Level>,
    pub descriptor: ProcedureDescriptor,
    pub monte_carlo: ErrorReport,
    /// Present when a closed form exists for this procedure.
    pub analytic: Option<ErrorReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub procedure: ProcedureKind,
    pub level: Option<Level>,
    pub descriptor: ProcedureDescriptor,
    pub analytic: ErrorReport,
    pub monte_carlo: Option<ErrorReport>,
}

/// Rows sorted by analytic power − size, largest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompareOutput(pub Vec<CompareRow>);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub family: Family,
    pub theta0: f64,
    pub theta1: f64,
    pub table: SweepTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OraclePoint {
    pub observations: Vec<f64>,
    /// Σ T(xᵢ), the statistic the optimum test thresholds.
    pub sufficient_sum: f64,
    pub p0: f64,
    pub p1: f64,
    pub in_region: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleOutput {
    pub family: Family,
    pub theta0: f64,
    pub theta1: f64,
    pub n: usize,
    pub status: Status,
    /// W₀ = {L₁ ≥ L₀}, described through the sufficient sum k when possible.
    pub region: String,
    pub certification: Certification,
    pub points: Vec<OraclePoint>,
}

/// A printed value and the number of decimals it was printed with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub value: f64,
    pub decimals: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReproStatus {
    /// The recomputed value rounds to the reference at its printed precision.
    Agrees,
    RoundingSlip,
    RecomputedOnly,
}

impl ReproStatus {
    pub fn label(self) -> &'static str {
        match self {
            ReproStatus::Agrees => "agrees",
            ReproStatus::RoundingSlip => "rounding slip",
            ReproStatus::RecomputedOnly => "recomputed only",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproRow {
    pub quantity: String,
    pub reference: Option<Reference>,
    pub recomputed: f64,
    pub status: ReproStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproOutput {
    pub theta0: f64,
    pub theta1: f64,
    pub sigma: f64,
    pub n: usize,
    pub rows: Vec<ReproRow>,
    pub local_beats_rounded_comparator: bool,
    pub local_beats_exact_comparator: bool,
}

pub fn family_from(args: &FamilyArgs) -> Result<Family> {
    let name = args.family.as_str();
    let nuisance = match name {
        "normal-mean" | "normal-known-variance" => {
            if args.mean.is_some() {
                bail!("--mean does not apply to family {name}; use --sigma");
            }
            args.sigma
        }
        "normal-variance" => {
            if args.sigma.is_some() {
                bail!("--sigma does not apply to family normal-variance; theta0 and theta1 are the variances");
            }
            args.mean
        }
        _ => {
            if args.sigma.is_some() || args.mean.is_some() {
                bail!("family {name} takes neither --sigma nor --mean");
            }
            None
        }
    };
    Ok(Family::from_name(name, nuisance)?)
}

pub fn problem_from(args: &FamilyArgs, n: usize) -> Result<SimpleTestProblem> {
    Ok(SimpleTestProblem::new(
        family_from(args)?,
        args.theta0,
        args.theta1,
        n,
    )?)
}

fn local_config(problem: &SimpleTestProblem, args: &LocalArgs) -> LocalTestConfig {
    let side = match args.side {
        Some(SideArg::Greater) => Side::Greater,
        Some(SideArg::Less) => Side::Less,
        Some(SideArg::TwoSided) => Side::TwoSided,
        None if problem.theta1 > problem.theta0 => Side::Greater,
        None => Side::Less,
    };
    let variant = match args.variant {
        VariantArg::Literal => Variant::Literal,
        VariantArg::Symmetric => Variant::SymmetricAlternative,
    };
    LocalTestConfig::new(problem.theta0, side).with_variant(variant)
}

fn choice_from(problem: &SimpleTestProblem, args: &ProcedureArgs) -> Result<Choice> {
    let kind = ProcedureKind::from(args.procedure);
    let level = match (kind, args.alpha, args.critical_z) {
        (ProcedureKind::FixedAlpha, Some(alpha), None) => Some(Level::Alpha { alpha }),
        (ProcedureKind::FixedAlpha, None, Some(z)) => Some(Level::CriticalZ { z }),
        (ProcedureKind::FixedAlpha, None, None) => {
            bail!("--procedure fixed-alpha requires --alpha or --critical-z")
        }
        (ProcedureKind::FixedAlpha, Some(_), Some(_)) => {
            bail!("--alpha and --critical-z are mutually exclusive")
        }
        (_, None, None) => None,
        _ => bail!("--alpha and --critical-z only apply to --procedure fixed-alpha"),
    };
    Ok(Choice {
        kind,
        level,
        local: local_config(problem, &args.local),
    })
}

fn known_sigma(problem: &SimpleTestProblem, kind: ProcedureKind) -> Result<f64> {
    match problem.family {
        Family::NormalMean { sigma } => Ok(sigma),
        other => bail!(
            "procedure {} is only defined for family normal-mean, not {}",
            kind.label(),
            other.name()
        ),
    }
}

/// The procedure selected by `choice`, using closed forms where they exist.
pub fn build_test(problem: &SimpleTestProblem, choice: &Choice) -> Result<TestProcedure> {
    let (theta0, n) = (problem.theta0, problem.n);
    let test = match (choice.kind, problem.family) {
        (ProcedureKind::Optimum, _) => problem.optimum_test()?,
        (ProcedureKind::Local, Family::NormalMean { sigma }) => {
            normal_mean_locally_optimum(sigma, n, choice.local)?
        }
        (ProcedureKind::Local, _) => locally_optimum_test(&problem.null_model()?, choice.local)?,
        (ProcedureKind::Lou, Family::NormalMean { sigma }) => {
            normal_mean_locally_optimum_unbiased(theta0, sigma, n)?
        }
        (ProcedureKind::Lou, _) => locally_optimum_unbiased_test(&problem.null_model()?, theta0)?,
        (ProcedureKind::Plugin, _) => {
            known_sigma(problem, choice.kind)?;
            plugin_test(theta0, problem.theta1)?
        }
        (ProcedureKind::FixedAlpha, _) => {
            let sigma = known_sigma(problem, choice.kind)?;
            match choice.level {
                Some(Level::Alpha { alpha }) => fixed_alpha_comparator(theta0, sigma, n, alpha)?,
                Some(Level::CriticalZ { z }) => fixed_z_comparator(theta0, sigma, n, z)?,
                None => bail!("--procedure fixed-alpha requires --alpha or --critical-z"),
            }
        }
    };
    Ok(test)
}

/// Closed-form errors, or `None` when the combination has no formula.
pub fn analytic_for(problem: &SimpleTestProblem, choice: &Choice) -> Result<Option<ErrorReport>> {
    let (theta0, theta1, n) = (problem.theta0, problem.theta1, problem.n);
    if choice.kind == ProcedureKind::Optimum {
        return Ok(Some(problem.optimum_errors_at(n)?));
    }
    let Family::NormalMean { sigma } = problem.family else {
        return Ok(None);
    };
    let report = match choice.kind {
        ProcedureKind::Optimum => unreachable!("handled above"),
        ProcedureKind::Local => analytic_errors_local_rule(theta1, sigma, n, choice.local)?,
        ProcedureKind::Lou => analytic_errors_lou(theta0, theta1, sigma, n)?,
        // The plug-in decision coincides with the midpoint rule.
        ProcedureKind::Plugin => analytic_errors_normal_mean(theta0, theta1, sigma, n)?,
        ProcedureKind::FixedAlpha => {
            let z = match choice.level {
                Some(Level::Alpha { alpha }) => std_normal_quantile(1.0 - alpha)?,
                Some(Level::CriticalZ { z }) => z,
                None => bail!("--procedure fixed-alpha requires --alpha or --critical-z"),
            };
            analytic_errors_z_test(theta0, theta1, sigma, n, z)?
        }
    };
    Ok(Some(report))
}

fn simulate_test(
    problem: &SimpleTestProblem,
    test: &TestProcedure,
    reps: usize,
    seed: u64,
) -> Result<ErrorReport> {
    let model0 = problem.null_model()?;
    let model1 = problem.alt_model()?;
    Ok(monte_carlo_errors(
        test, &model0, &model1, problem.n, reps, seed,
    )?)
}

pub fn analyze(args: &AnalyzeArgs) -> Result<AnalyzeOutput> {
    let problem = problem_from(&args.family, args.n)?;
    let choice = choice_from(&problem, &args.procedure)?;
    let test = build_test(&problem, &choice)?;
    let Some(analytic) = analytic_for(&problem, &choice)? else {
        bail!(
            "no analytic formula for procedure {} with family {}; run `optest simulate` for a Monte Carlo estimate",
            choice.kind.label(),
            problem.family.name()
        );
    };
    Ok(AnalyzeOutput {
        problem,
        procedure: choice.kind,
        level: choice.level,
        descriptor: test.descriptor(),
        analytic,
    })
}

pub fn simulate(args: &SimulateArgs) -> Result<SimulateOutput> {
    let problem = problem_from(&args.family, args.n)?;
    let choice = choice_from(&problem, &args.procedure)?;
    let test = build_test(&problem, &choice)?;
    let monte_carlo = simulate_test(&problem, &test, args.sim.reps, args.sim.seed)?;
    Ok(SimulateOutput {
        problem,
        procedure: choice.kind,
        level: choice.level,
        descriptor: test.descriptor(),
        monte_carlo,
        analytic: analytic_for(&problem, &choice)?,
    })
}

pub fn compare(args: &CompareArgs) -> Result<CompareOutput> {
    let problem = problem_from(&args.family, args.n)?;
    let local = local_config(&problem, &args.local);
    let level = match args.critical_z {
        Some(z) => Level::CriticalZ { z },
        None => Level::Alpha { alpha: args.alpha },
    };
    let kinds = [
        ProcedureKind::Optimum,
        ProcedureKind::Local,
        ProcedureKind::Lou,
        ProcedureKind::FixedAlpha,
    ];
    let mut rows = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let level = (kind == ProcedureKind::FixedAlpha).then_some(level);
        let choice = Choice { kind, level, local };
        let test = build_test(&problem, &choice)?;
        let Some(analytic) = analytic_for(&problem, &choice)? else {
            bail!(
                "no analytic formula for procedure {} with family {}; run `optest simulate` per procedure instead",
                kind.label(),
                problem.family.name()
            );
        };
        let monte_carlo = if args.reps > 0 {
            Some(simulate_test(&problem, &test, args.reps, args.seed)?)
        } else {
            None
        };
        rows.push(CompareRow {
            procedure: kind,
            level,
            descriptor: test.descriptor(),
            analytic,
            monte_carlo,
        });
    }
    rows.sort_by(|a, b| {
        b.analytic
            .power_minus_size
            .total_cmp(&a.analytic.power_minus_size)
    });
    Ok(CompareOutput(rows))
}

pub fn sweep(args: &SweepArgs) -> Result<SweepOutput> {
    let first = *args.grid.first().context("the --grid list is empty")?;
    let problem = problem_from(&args.family, first.max(1))?;
    let table = convergence_sweep(&problem, &args.grid)?;
    Ok(SweepOutput {
        family: problem.family,
        theta0: problem.theta0,
        theta1: problem.theta1,
        table,
    })
}

pub fn oracle(args: &OracleArgs) -> Result<OracleOutput> {
    let problem = problem_from(&args.family, args.n)?;
    let space = DiscreteSpace::product(&problem.null_model()?, &problem.alt_model()?, args.n)?;
    let certification = brute_force_certify(&space)?;
    let t = |x: f64| match problem.family {
        Family::ExpFamily { kind } => kind.t(x),
        _ => x,
    };
    let points: Vec<OraclePoint> = space
        .points()
        .iter()
        .zip(space.p0())
        .zip(space.p1())
        .zip(&certification.w0_region)
        .map(|(((x, &p0), &p1), &in_region)| OraclePoint {
            observations: x.observations().to_vec(),
            sufficient_sum: x.observations().iter().map(|&v| t(v)).sum(),
            p0,
            p1,
            in_region,
        })
        .collect();
    Ok(OracleOutput {
        family: problem.family,
        theta0: problem.theta0,
        theta1: problem.theta1,
        n: args.n,
        status: if certification.certified {
            Status::Pass
        } else {
            Status::Fail
        },
        region: describe_region(&points),
        certification,
        points,
    })
}

/// `{k >= c}` or `{k <= c}` when membership is a threshold on the sufficient
/// sum, otherwise the explicit list of member points.
pub fn describe_region(points: &[OraclePoint]) -> String {
    let inside: Vec<f64> = points
        .iter()
        .filter(|p| p.in_region)
        .map(|p| p.sufficient_sum)
        .collect();
    let outside: Vec<f64> = points
        .iter()
        .filter(|p| !p.in_region)
        .map(|p| p.sufficient_sum)
        .collect();
    if inside.is_empty() {
        return "{}".into();
    }
    if outside.is_empty() {
        return "whole sample space".into();
    }
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max(&outside) < min(&inside) {
        format!("{{k >= {}}}", min(&inside))
    } else if max(&inside) < min(&outside) {
        format!("{{k <= {}}}", max(&inside))
    } else {
        let members: Vec<String> = points
            .iter()
            .filter(|p| p.in_region)
            .map(|p| {
                let xs: Vec<String> = p.observations.iter().map(|v| v.to_string()).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        format!("{{{}}}", members.join(", "))
    }
}

const REPRO_THETA0: f64 = 10.0;
const REPRO_THETA1: f64 = 11.0;
const REPRO_SIGMA: f64 = 2.0;
const REPRO_N: usize = 16;
const REPRO_ROUNDED_Z: f64 = 1.64;
const REPRO_NOMINAL_ALPHA: f64 = 0.05;

fn repro_row(quantity: &str, reference: Option<(f64, u32)>, recomputed: f64) -> ReproRow {
    let reference = reference.map(|(value, decimals)| Reference { value, decimals });
    let status = match reference {
        None => ReproStatus::RecomputedOnly,
        Some(r) => {
            let scale = 10f64.powi(r.decimals as i32);
            if (recomputed * scale).round() == (r.value * scale).round() {
                ReproStatus::Agrees
            } else {
                ReproStatus::RoundingSlip
            }
        }
    };
    ReproRow {
        quantity: quantity.into(),
        reference,
        recomputed,
        status,
    }
}

pub fn repro() -> Result<ReproOutput> {
    let (t0, t1, s, n) = (REPRO_THETA0, REPRO_THETA1, REPRO_SIGMA, REPRO_N);
    let local = analytic_errors_local_rule(t1, s, n, LocalTestConfig::new(t0, Side::Greater))?;
    let rounded = analytic_errors_z_test(t0, t1, s, n, REPRO_ROUNDED_Z)?;
    let exact_z = std_normal_quantile(1.0 - REPRO_NOMINAL_ALPHA)?;
    let exact = analytic_errors_z_test(t0, t1, s, n, exact_z)?;

    let rows = vec![
        repro_row("local: size", Some((0.3085, 4)), local.alpha.value()),
        repro_row("local: power", Some((0.9337, 4)), local.power.value()),
        repro_row(
            "local: power - size",
            Some((0.6252, 4)),
            local.power_minus_size,
        ),
        repro_row(
            "comparator z=1.64: size",
            Some((0.05, 2)),
            rounded.alpha.value(),
        ),
        repro_row(
            "comparator z=1.64: power",
            Some((0.6406, 4)),
            rounded.power.value(),
        ),
        repro_row(
            "comparator z=1.64: power - nominal size",
            Some((0.5906, 4)),
            rounded.power.value() - REPRO_NOMINAL_ALPHA,
        ),
        repro_row(
            "comparator z=1.64: power - size",
            None,
            rounded.power_minus_size,
        ),
        repro_row("comparator exact z: critical value", None, exact_z),
        repro_row("comparator exact z: power", None, exact.power.value()),
        repro_row(
            "comparator exact z: power - size",
            None,
            exact.power_minus_size,
        ),
    ];
    Ok(ReproOutput {
        theta0: t0,
        theta1: t1,
        sigma: s,
        n,
        rows,
        local_beats_rounded_comparator: local.power_minus_size > rounded.power_minus_size,
        local_beats_exact_comparator: local.power_minus_size > exact.power_minus_size,
    })
}
