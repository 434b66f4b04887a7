//! Table, CSV and JSON renderings of command outputs.
//!
//! Tables round to five significant digits; CSV and JSON carry full
//! precision so that parsing them recovers the exact values.

use anyhow::Result;
use serde::Serialize;

use optest::{Direction, ErrorReport, Method, ProcedureDescriptor};

use crate::args::Format;
use crate::commands::{
    AnalyzeOutput, CompareOutput, OracleOutput, ReproOutput, SimulateOutput, SweepOutput,
};

pub trait Render: Serialize {
    fn table(&self) -> String;
    fn csv(&self) -> Result<String>;

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.table()),
            Format::Csv => self.csv(),
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
        }
    }
}

/// Formats `x` with five significant digits.
pub fn sig5(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..5).contains(&magnitude) {
        let decimals = (4 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.4e}")
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn direction_code(d: Direction) -> &'static str {
    match d {
        Direction::Ge => "GE",
        Direction::Le => "LE",
    }
}

fn method_code(m: Method) -> &'static str {
    match m {
        Method::Analytic => "analytic",
        Method::MonteCarlo => "monte-carlo",
    }
}

const DESCRIPTOR_COLUMNS: [&str; 4] = ["statistic", "threshold", "direction", "provenance"];

fn descriptor_cells(d: &ProcedureDescriptor) -> Vec<String> {
    vec![
        d.statistic_name.clone(),
        d.threshold.to_string(),
        direction_code(d.direction).into(),
        d.provenance.clone(),
    ]
}

const REPORT_COLUMNS: [&str; 10] = [
    "n",
    "alpha",
    "beta",
    "power",
    "power_minus_size",
    "method",
    "se_alpha",
    "se_beta",
    "reps",
    "seed",
];

fn report_cells(r: &ErrorReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.alpha.value().to_string(),
        r.beta.value().to_string(),
        r.power.value().to_string(),
        r.power_minus_size.to_string(),
        method_code(r.method).into(),
        opt(r.se_alpha),
        opt(r.se_beta),
        opt(r.reps),
        opt(r.seed),
    ]
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Column-aligned plain-text table; the first column is left-aligned.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self) -> String {
        let cols = self.header.len();
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate().take(cols) {
                let pad = width[i] - cell.chars().count();
                if i > 0 {
                    s.push_str("  ");
                }
                if i == 0 {
                    s.push_str(cell);
                    s.push_str(&" ".repeat(pad));
                } else {
                    s.push_str(&" ".repeat(pad));
                    s.push_str(cell);
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        let total = width.iter().sum::<usize>() + 2 * cols.saturating_sub(1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn problem_lines(
    family: &str,
    theta0: f64,
    theta1: f64,
    n: Option<usize>,
) -> Vec<(&'static str, String)> {
    let mut v = vec![
        ("family", family.to_string()),
        ("theta0", sig5(theta0)),
        ("theta1", sig5(theta1)),
    ];
    if let Some(n) = n {
        v.push(("n", n.to_string()));
    }
    v
}

fn procedure_lines(name: String, d: &ProcedureDescriptor) -> Vec<(&'static str, String)> {
    vec![
        ("procedure", name),
        ("statistic", d.statistic_name.clone()),
        ("threshold", sig5(d.threshold)),
        ("direction", direction_code(d.direction).into()),
        ("provenance", d.provenance.clone()),
    ]
}

fn procedure_name(
    kind: crate::commands::ProcedureKind,
    level: Option<crate::commands::Level>,
) -> String {
    match level {
        Some(l) => format!("{} ({})", kind.label(), l.describe()),
        None => kind.label().into(),
    }
}

fn report_table(reports: &[&ErrorReport]) -> String {
    let mut t = Table::new(&["method", "alpha", "se", "beta", "se", "power", "power-size"]);
    for r in reports {
        t.push(vec![
            method_code(r.method).into(),
            sig5(r.alpha.value()),
            r.se_alpha.map(sig5).unwrap_or_else(|| "-".into()),
            sig5(r.beta.value()),
            r.se_beta.map(sig5).unwrap_or_else(|| "-".into()),
            sig5(r.power.value()),
            sig5(r.power_minus_size),
        ]);
    }
    t.render()
}

impl Render for AnalyzeOutput {
    fn table(&self) -> String {
        let p = &self.problem;
        let mut lines = problem_lines(p.family.name(), p.theta0, p.theta1, Some(p.n));
        lines.extend(procedure_lines(
            procedure_name(self.procedure, self.level),
            &self.descriptor,
        ));
        key_values(&lines) + "\n" + &report_table(&[&self.analytic])
    }

    fn csv(&self) -> Result<String> {
        let mut header = vec!["procedure"];
        header.extend(DESCRIPTOR_COLUMNS);
        header.extend(REPORT_COLUMNS);
        let mut row = vec![self.procedure.label().to_string()];
        row.extend(descriptor_cells(&self.descriptor));
        row.extend(report_cells(&self.analytic));
        csv_string(&header, &[row])
    }
}

impl Render for SimulateOutput {
    fn table(&self) -> String {
        let p = &self.problem;
        let mut lines = problem_lines(p.family.name(), p.theta0, p.theta1, Some(p.n));
        lines.extend(procedure_lines(
            procedure_name(self.procedure, self.level),
            &self.descriptor,
        ));
        if let (Some(reps), Some(seed)) = (self.monte_carlo.reps, self.monte_carlo.seed) {
            lines.push(("reps", reps.to_string()));
            lines.push(("seed", seed.to_string()));
        }
        let mut reports = vec![&self.monte_carlo];
        reports.extend(self.analytic.as_ref());
        key_values(&lines) + "\n" + &report_table(&reports)
    }

    fn csv(&self) -> Result<String> {
        let mut header = vec!["procedure"];
        header.extend(DESCRIPTOR_COLUMNS);
        header.extend(REPORT_COLUMNS);
        let rows: Vec<Vec<String>> = std::iter::once(&self.monte_carlo)
            .chain(self.analytic.as_ref())
            .map(|r| {
                let mut row = vec![self.procedure.label().to_string()];
                row.extend(descriptor_cells(&self.descriptor));
                row.extend(report_cells(r));
                row
            })
            .collect();
        csv_string(&header, &rows)
    }
}

const COMPARE_COLUMNS: [&str; 16] = [
    "procedure",
    "level",
    "statistic",
    "threshold",
    "direction",
    "provenance",
    "n",
    "alpha",
    "beta",
    "power",
    "power_minus_size",
    "mc_alpha",
    "mc_se_alpha",
    "mc_power",
    "mc_se_power",
    "mc_power_minus_size",
];

impl Render for CompareOutput {
    fn table(&self) -> String {
        let with_mc = self.0.iter().any(|r| r.monte_carlo.is_some());
        let mut header = vec!["procedure", "threshold", "alpha", "power", "power-size"];
        if with_mc {
            header.extend(["mc alpha", "se", "mc power", "se", "mc power-size"]);
        }
        let mut t = Table::new(&header);
        for row in &self.0 {
            let a = &row.analytic;
            let mut cells = vec![
                procedure_name(row.procedure, row.level),
                format!(
                    "{} {}",
                    row.descriptor.direction.symbol(),
                    sig5(row.descriptor.threshold)
                ),
                sig5(a.alpha.value()),
                sig5(a.power.value()),
                sig5(a.power_minus_size),
            ];
            if let Some(m) = &row.monte_carlo {
                cells.extend([
                    sig5(m.alpha.value()),
                    opt(m.se_alpha.map(sig5)),
                    sig5(m.power.value()),
                    opt(m.se_beta.map(sig5)),
                    sig5(m.power_minus_size),
                ]);
            }
            t.push(cells);
        }
        t.render()
    }

    fn csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .0
            .iter()
            .map(|row| {
                let a = &row.analytic;
                let m = row.monte_carlo.as_ref();
                let mut cells = vec![
                    row.procedure.label().to_string(),
                    opt(row.level.map(|l| l.describe())),
                ];
                cells.extend(descriptor_cells(&row.descriptor));
                cells.extend([
                    a.n.to_string(),
                    a.alpha.value().to_string(),
                    a.beta.value().to_string(),
                    a.power.value().to_string(),
                    a.power_minus_size.to_string(),
                    opt(m.map(|m| m.alpha.value())),
                    opt(m.and_then(|m| m.se_alpha)),
                    opt(m.map(|m| m.power.value())),
                    opt(m.and_then(|m| m.se_beta)),
                    opt(m.map(|m| m.power_minus_size)),
                ]);
                cells
            })
            .collect();
        csv_string(&COMPARE_COLUMNS, &rows)
    }
}

impl Render for SweepOutput {
    fn table(&self) -> String {
        let head = key_values(&problem_lines(
            self.family.name(),
            self.theta0,
            self.theta1,
            None,
        ));
        let mut t = Table::new(&["n", "alpha", "beta", "alpha+beta", "power-size"]);
        for r in &self.table.rows {
            t.push(vec![
                r.n.to_string(),
                sig5(r.alpha.value()),
                sig5(r.beta.value()),
                sig5(r.error_sum()),
                sig5(r.power_minus_size),
            ]);
        }
        let verdict = match self.table.strictly_decreasing {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a (single row)",
        };
        format!(
            "{head}\n{}\nalpha+beta strictly decreasing: {verdict}\n",
            t.render()
        )
    }

    fn csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .table
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.alpha.value().to_string(),
                    r.beta.value().to_string(),
                    r.power.value().to_string(),
                    r.power_minus_size.to_string(),
                    r.error_sum().to_string(),
                ]
            })
            .collect();
        csv_string(
            &[
                "n",
                "alpha",
                "beta",
                "power",
                "power_minus_size",
                "alpha_plus_beta",
            ],
            &rows,
        )
    }
}

fn point_label(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

impl Render for OracleOutput {
    fn table(&self) -> String {
        let c = &self.certification;
        let mut lines = problem_lines(self.family.name(), self.theta0, self.theta1, Some(self.n));
        lines.extend([
            ("points", c.points.to_string()),
            ("regions", c.regions.to_string()),
            ("W0", self.region.clone()),
            ("W0 power-size", sig5(c.w0_value)),
            ("W0 alpha", sig5(c.w0_alpha)),
            ("W0 beta", sig5(c.w0_beta)),
            ("max power-size", sig5(c.max_value)),
            ("co-optimal", c.co_optimal.to_string()),
            ("result", self.status.label().into()),
        ]);
        let mut t = Table::new(&["point", "k", "p0", "p1", "in W0"]);
        for p in &self.points {
            t.push(vec![
                point_label(&p.observations),
                if p.sufficient_sum.fract() == 0.0 {
                    p.sufficient_sum.to_string()
                } else {
                    sig5(p.sufficient_sum)
                },
                sig5(p.p0),
                sig5(p.p1),
                if p.in_region { "yes" } else { "no" }.into(),
            ]);
        }
        key_values(&lines) + "\n" + &t.render()
    }

    fn csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let xs: Vec<String> = p.observations.iter().map(|v| v.to_string()).collect();
                vec![
                    i.to_string(),
                    xs.join(" "),
                    p.sufficient_sum.to_string(),
                    p.p0.to_string(),
                    p.p1.to_string(),
                    p.in_region.to_string(),
                ]
            })
            .collect();
        csv_string(
            &[
                "index",
                "observations",
                "sufficient_sum",
                "p0",
                "p1",
                "in_region",
            ],
            &rows,
        )
    }
}

impl Render for ReproOutput {
    fn table(&self) -> String {
        let head = key_values(&[
            ("theta0", sig5(self.theta0)),
            ("theta1", sig5(self.theta1)),
            ("sigma", sig5(self.sigma)),
            ("n", self.n.to_string()),
        ]);
        let mut t = Table::new(&["quantity", "reference", "recomputed", "status"]);
        for r in &self.rows {
            t.push(vec![
                r.quantity.clone(),
                r.reference
                    .map(|x| format!("{:.*}", x.decimals as usize, x.value))
                    .unwrap_or_else(|| "-".into()),
                sig5(r.recomputed),
                r.status.label().into(),
            ]);
        }
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        format!(
            "{head}\n{}\nlocal beats comparator on power - size (z=1.64): {}\nlocal beats comparator on power - size (exact z): {}\n",
            t.render(),
            yes_no(self.local_beats_rounded_comparator),
            yes_no(self.local_beats_exact_comparator),
        )
    }

    fn csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.quantity.clone(),
                    opt(r.reference.map(|x| x.value)),
                    opt(r.reference.map(|x| x.decimals)),
                    r.recomputed.to_string(),
                    r.status.label().into(),
                ]
            })
            .collect();
        csv_string(
            &[
                "quantity",
                "reference",
                "reference_decimals",
                "recomputed",
                "status",
            ],
            &rows,
        )
    }
}
