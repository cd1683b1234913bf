//! Rendering of records and reports.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use higgs_betti_core::algebra::{LaurentPoly, Monomial, Rational, VarId};
use higgs_betti_core::verify::{self, CheckReport};

use crate::record::OutputRecord;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Plain,
    Latex,
}

fn power(e: i32, style: Style) -> String {
    match (e, style) {
        (0, _) => String::new(),
        (1, _) => "t".to_string(),
        (e, Style::Plain) => format!("t^{e}"),
        (e, Style::Latex) => format!("t^{{{e}}}"),
    }
}

/// Descending order, e.g. `4*t^10 - 20*t^9 + 1`.
fn render(coeffs: &[(i32, Rational)], style: Style) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (e, c)) in coeffs.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let p = power(*e, style);
        if p.is_empty() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&p);
        } else if style == Style::Plain {
            write!(s, "{abs}*{p}").unwrap();
        } else {
            write!(s, "{abs}{p}").unwrap();
        }
    }
    s
}

pub fn plain_poly(coeffs: &[(i32, Rational)]) -> String {
    render(coeffs, Style::Plain)
}

pub fn latex_expanded(coeffs: &[(i32, Rational)]) -> String {
    render(coeffs, Style::Latex)
}

/// `2^b t^m (1-t)^g (Q)` when `2^b (1-t)^g` divides `p`, else the expanded form.
pub fn latex_factored(p: &LaurentPoly, g: usize, b: usize) -> String {
    let Ok(quot) = p.exact_divide(&verify::component_factor(g, b)) else {
        return latex_expanded(&p.univariate_coeffs(VarId::T));
    };
    let coeffs = quot.univariate_coeffs(VarId::T);
    let Some(&(low, _)) = coeffs.first() else {
        return "0".to_string();
    };
    let quot = quot.mul_monomial(&Monomial::var(VarId::T, -low), &Rational::ONE);
    let mut scalar = Rational::from_i64(1 << b);
    let inner = if quot.is_constant() {
        scalar = &scalar * &quot.constant_term();
        String::new()
    } else {
        format!("\\left({}\\right)", latex_expanded(&quot.univariate_coeffs(VarId::T)))
    };
    let lead = if scalar.is_one() {
        String::new()
    } else if (-&scalar).is_one() {
        "-".to_string()
    } else {
        scalar.to_string()
    };
    let one_minus_t = match g {
        0 => String::new(),
        1 => "(1-t)".to_string(),
        g => format!("(1-t)^{{{g}}}"),
    };
    format!("{lead}{}{one_minus_t}{inner}", power(low, Style::Latex))
}

fn record_latex(rec: &OutputRecord) -> Result<String, CliError> {
    let p = rec.polynomial()?;
    Ok(match rec.params.b {
        Some(b) => latex_factored(&p, rec.params.g, b),
        None => latex_expanded(&p.univariate_coeffs(VarId::T)),
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "-".to_string())
}

fn text_line(rec: &OutputRecord) -> Result<String, CliError> {
    let p = &rec.params;
    Ok(format!(
        "g={} b={} r={} d={} field={} pipeline={}: {}",
        p.g,
        opt(p.b),
        p.r,
        opt(p.d),
        p.field,
        rec.pipeline,
        plain_poly(&rec.coefficients()?)
    ))
}

/// Renders one record (`compute`).
pub fn render_record(rec: &OutputRecord, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rec).map_err(internal)? + "\n"),
        Format::Latex => Ok(format!("${}$\n", record_latex(rec)?)),
        Format::Text => Ok(text_line(rec)? + "\n"),
        Format::Csv => render_records(std::slice::from_ref(rec), Format::Csv),
    }
}

/// Renders a table of records.
pub fn render_records(recs: &[OutputRecord], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(recs).map_err(internal)? + "\n"),
        Format::Text => {
            let mut s = String::new();
            for rec in recs {
                s.push_str(&text_line(rec)?);
                s.push('\n');
            }
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "g",
                "b",
                "r",
                "d",
                "field",
                "pipeline",
                "engine_version",
                "wall_ms",
                "poly",
            ])
            .map_err(internal)?;
            for rec in recs {
                let p = &rec.params;
                w.write_record([
                    p.g.to_string(),
                    opt(p.b),
                    p.r.to_string(),
                    opt(p.d),
                    p.field.clone(),
                    rec.pipeline.clone(),
                    rec.engine_version.clone(),
                    rec.wall_ms.to_string(),
                    plain_poly(&rec.coefficients()?),
                ])
                .map_err(internal)?;
            }
            String::from_utf8(w.into_inner().map_err(internal)?).map_err(internal)
        }
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{cccl}\n$g$ & $b$ & $r$ & $P_t$ \\\\\n\\hline\n");
            for rec in recs {
                let p = &rec.params;
                writeln!(s, "{} & {} & {} & ${}$ \\\\", p.g, opt(p.b), p.r, record_latex(rec)?).unwrap();
            }
            s.push_str("\\end{tabular}\n");
            Ok(s)
        }
    }
}

pub fn parse_records(json: &str) -> Result<Vec<OutputRecord>, CliError> {
    serde_json::from_str(json).map_err(|e| CliError::Invalid(format!("not a record list: {e}")))
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub g: usize,
    pub b: Option<usize>,
    pub r: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportWitness {
    pub left: String,
    pub right: String,
    pub note: String,
}

/// A check outcome in the machine-readable report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub check: String,
    pub params: ReportParams,
    pub status: String,
    pub witness: Option<ReportWitness>,
    pub detail: Option<String>,
}

impl ReportRecord {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn from_check(rep: &CheckReport) -> Self {
        ReportRecord {
            check: rep.kind.name().to_string(),
            params: ReportParams {
                g: rep.g,
                b: rep.b,
                r: rep.r,
            },
            status: if rep.passed { "pass" } else { "fail" }.to_string(),
            witness: rep.witness.as_ref().map(|w| ReportWitness {
                left: w.left.clone(),
                right: w.right.clone(),
                note: w.note.clone(),
            }),
            detail: rep.detail.clone(),
        }
    }
}

pub fn render_reports(reps: &[ReportRecord], format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(reps).map_err(internal)? + "\n");
    }
    let mut s = String::new();
    for r in reps {
        write!(s, "{} {} g={}", r.status.to_uppercase(), r.check, r.params.g).unwrap();
        if let Some(b) = r.params.b {
            write!(s, " b={b}").unwrap();
        }
        if let Some(rank) = r.params.r {
            write!(s, " r={rank}").unwrap();
        }
        if let Some(w) = &r.witness {
            write!(s, ": {}\n  left:  {}\n  right: {}", w.note, w.left, w.right).unwrap();
        }
        s.push('\n');
    }
    let failed = reps.iter().filter(|r| !r.passed()).count();
    writeln!(s, "{} checks, {} failed", reps.len(), failed).unwrap();
    Ok(s)
}
