//! Report documents: serializable mirrors of the core results, plus the
//! aligned text rendering. The text is produced from these structs so both
//! renderings carry the same numbers.

use std::fmt::Write as _;

use dimpoly_core::chains::{ChainAudit, DimBoundReport};
use dimpoly_core::kaehler::{ComparisonReport, DimensionPolynomial, DimensionReport, ProbeReport, ProbeVerdict};
use dimpoly_core::numpoly::NumericalPolynomial;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    /// `sha256:<hex>` of the problem file bytes.
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub tasks: Vec<TaskOutput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum TaskOutput {
    ChiExtension { reports: Vec<Report> },
    ChiIntermediate { reports: Vec<Report> },
    QuasiProbe { values: Vec<ValueRow>, verdict: Verdict },
    ChainAudit { audit: Audit },
    Theorem5Chain { caps: Vec<usize>, members: Vec<Vec<String>>, audit: Audit },
    DimBound(DimBound),
    CompareGenerators(Comparison),
}

impl TaskOutput {
    pub fn kind(&self) -> &'static str {
        match self {
            TaskOutput::ChiExtension { .. } => "chi_extension",
            TaskOutput::ChiIntermediate { .. } => "chi_intermediate",
            TaskOutput::QuasiProbe { .. } => "quasi_probe",
            TaskOutput::ChainAudit { .. } => "chain_audit",
            TaskOutput::Theorem5Chain { .. } => "theorem5_chain",
            TaskOutput::DimBound(_) => "dim_bound",
            TaskOutput::CompareGenerators(_) => "compare_generators",
        }
    }
}

fn num(v: &BigInt) -> String {
    v.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub index: Vec<usize>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Polynomial {
    /// `coefficients[i]` multiplies `C(t+i, i)`.
    Univariate { display: String, coefficients: Vec<String>, threshold: i64, invariants: Invariants },
    Multivariate { display: String, caps: Vec<usize>, terms: Vec<Term>, threshold: Vec<i64>, invariants: MultiInvariants },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub degree: i64,
    pub leading: String,
    pub top: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiInvariants {
    pub total_degree: i64,
    pub top_coefficient: String,
    pub top_terms: Vec<Term>,
    pub support: Vec<Vec<usize>>,
    pub maximal: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub r: Vec<i64>,
    pub value: u64,
    pub polynomial: String,
    pub oracle: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub r_max: i64,
    pub agree: bool,
    pub mismatches: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub polynomial: Polynomial,
    pub table: Vec<Row>,
    pub oracle: Option<OracleCheck>,
}

fn uni_coeffs(p: &NumericalPolynomial) -> Vec<String> {
    p.coeffs().iter().map(num).collect()
}

impl From<&DimensionReport> for Report {
    fn from(rep: &DimensionReport) -> Self {
        let polynomial = match &rep.polynomial {
            DimensionPolynomial::Univariate { poly, threshold, invariants } => Polynomial::Univariate {
                display: poly.to_string(),
                coefficients: uni_coeffs(poly),
                threshold: *threshold,
                invariants: Invariants {
                    degree: invariants.degree,
                    leading: num(&invariants.leading),
                    top: num(&invariants.top),
                },
            },
            DimensionPolynomial::Multivariate { poly, threshold, invariants } => Polynomial::Multivariate {
                display: poly.to_string(),
                caps: poly.caps().to_vec(),
                terms: poly.terms().map(|(index, c)| Term { index, coefficient: num(c) }).collect(),
                threshold: threshold.clone(),
                invariants: MultiInvariants {
                    total_degree: invariants.total_degree,
                    top_coefficient: num(&invariants.top_coefficient),
                    top_terms: invariants
                        .top_terms
                        .iter()
                        .map(|(index, c)| Term { index: index.clone(), coefficient: num(c) })
                        .collect(),
                    support: invariants.support.iter().cloned().collect(),
                    maximal: invariants.maximal.iter().cloned().collect(),
                },
            },
        };
        Report {
            polynomial,
            table: rep
                .table
                .iter()
                .map(|row| Row { r: row.r.clone(), value: row.value, polynomial: num(&row.polynomial), oracle: row.oracle })
                .collect(),
            oracle: rep.oracle.as_ref().map(|o| OracleCheck {
                r_max: o.r_max,
                agree: o.mismatches.is_empty(),
                mismatches: o.mismatches.clone(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRow {
    pub r: i64,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Polynomial { display: String, coefficients: Vec<String>, threshold: i64 },
    NotEventuallyPolynomial { r: i64 },
}

impl From<&ProbeReport> for TaskOutput {
    fn from(p: &ProbeReport) -> Self {
        let verdict = match &p.verdict {
            ProbeVerdict::Polynomial { poly, threshold } => {
                Verdict::Polynomial { display: poly.to_string(), coefficients: uni_coeffs(poly), threshold: *threshold }
            }
            ProbeVerdict::NotEventuallyPolynomial { r } => Verdict::NotEventuallyPolynomial { r: *r },
        };
        TaskOutput::QuasiProbe { values: p.values.iter().map(|&(r, value)| ValueRow { r, value }).collect(), verdict }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMember {
    pub display: String,
    pub coefficients: Vec<String>,
    pub threshold: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub link: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub polynomials: Vec<ChainMember>,
    pub gaps: Vec<Gap>,
    pub strictly_descending: bool,
}

impl From<&ChainAudit> for Audit {
    fn from(a: &ChainAudit) -> Self {
        Audit {
            polynomials: a
                .polynomials
                .iter()
                .map(|(p, t)| ChainMember { display: p.to_string(), coefficients: uni_coeffs(p), threshold: *t })
                .collect(),
            gaps: a.gaps.iter().map(|&(link, degree)| Gap { link, degree }).collect(),
            strictly_descending: a.strictly_descending(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimBound {
    pub type_lower_bound: usize,
    pub top_coefficients: Vec<String>,
    pub drops: Vec<String>,
    pub dim: String,
    pub audit: Audit,
}

impl From<&DimBoundReport> for DimBound {
    fn from(d: &DimBoundReport) -> Self {
        DimBound {
            type_lower_bound: d.type_lower_bound,
            top_coefficients: d.top_coefficients.iter().map(num).collect(),
            drops: d.drops.iter().map(num).collect(),
            dim: num(&d.dim),
            audit: Audit::from(&d.audit),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub left: Report,
    pub right: Report,
    pub left_invariants: Invariants,
    pub right_invariants: Invariants,
    pub agree: bool,
}

fn triple((d, c, top): &(i64, BigInt, BigInt)) -> Invariants {
    Invariants { degree: *d, leading: num(c), top: num(top) }
}

impl From<&ComparisonReport> for Comparison {
    fn from(c: &ComparisonReport) -> Self {
        Comparison {
            left: Report::from(&c.left),
            right: Report::from(&c.right),
            left_invariants: triple(&c.left_invariants),
            right_invariants: triple(&c.right_invariants),
            agree: c.agree,
        }
    }
}

fn fmt_r(r: &[i64]) -> String {
    if r.len() == 1 {
        r[0].to_string()
    } else {
        format!("({})", r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

fn fmt_vec<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

/// Right-aligned columns.
fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        cells.iter().zip(&widths).map(|(c, w)| format!("{:>w$}", c, w = w)).collect::<Vec<_>>().join("  ")
    };
    let _ = writeln!(out, "    {}", line(header.to_vec()));
    for row in rows {
        let _ = writeln!(out, "    {}", line(row.iter().map(String::as_str).collect()));
    }
}

fn render_report(out: &mut String, rep: &Report) {
    match &rep.polynomial {
        Polynomial::Univariate { display, threshold, invariants, .. } => {
            let _ = writeln!(out, "  polynomial  {}", display);
            let _ = writeln!(out, "  threshold   {}", threshold);
            let _ = writeln!(
                out,
                "  invariants  d = {}, c_d = {}, c_(m+n) = {}",
                invariants.degree, invariants.leading, invariants.top
            );
        }
        Polynomial::Multivariate { display, threshold, invariants, .. } => {
            let _ = writeln!(out, "  polynomial  {}", display);
            let _ = writeln!(out, "  threshold   {}", fmt_r(threshold));
            let _ = writeln!(
                out,
                "  invariants  total degree = {}, top coefficient = {}",
                invariants.total_degree, invariants.top_coefficient
            );
            let maximal: Vec<String> = invariants.maximal.iter().map(|m| fmt_r(&m.iter().map(|&v| v as i64).collect::<Vec<_>>())).collect();
            let _ = writeln!(out, "  maximal     {}", maximal.join(" "));
        }
    }
    let rows: Vec<Vec<String>> = rep
        .table
        .iter()
        .map(|row| {
            vec![
                fmt_r(&row.r),
                row.value.to_string(),
                row.polynomial.clone(),
                row.oracle.map_or("-".into(), |o| o.to_string()),
            ]
        })
        .collect();
    table(out, &["r", "value", "polynomial", "oracle"], &rows);
    if let Some(o) = &rep.oracle {
        let verdict = if o.agree { "agrees".to_string() } else { format!("MISMATCH at {}", fmt_vec(&o.mismatches.iter().map(|r| fmt_r(r)).collect::<Vec<_>>())) };
        let _ = writeln!(out, "  oracle      r_max = {}, {}", o.r_max, verdict);
    }
}

fn render_audit(out: &mut String, a: &Audit) {
    let rows: Vec<Vec<String>> = a
        .polynomials
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let gap = a.gaps.iter().find(|g| g.link == i).map_or("".into(), |g| g.degree.to_string());
            vec![i.to_string(), m.display.clone(), m.threshold.to_string(), gap]
        })
        .collect();
    table(out, &["i", "polynomial", "threshold", "gap"], &rows);
    let _ = writeln!(out, "  strictly descending: {}", if a.strictly_descending { "yes" } else { "no" });
}

/// Aligned plain-text rendering.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} (schema {})", doc.tool, doc.version, doc.schema);
    let _ = writeln!(out, "input {}", doc.input_digest);
    if let Some(n) = &doc.name {
        let _ = writeln!(out, "problem {}", n);
    }
    for (i, t) in doc.tasks.iter().enumerate() {
        let _ = writeln!(out, "\ntask {}: {}", i + 1, t.kind());
        match t {
            TaskOutput::ChiExtension { reports } | TaskOutput::ChiIntermediate { reports } => {
                for (k, r) in reports.iter().enumerate() {
                    if k > 0 {
                        out.push('\n');
                    }
                    render_report(&mut out, r);
                }
            }
            TaskOutput::QuasiProbe { values, verdict } => {
                let rows: Vec<Vec<String>> = values.iter().map(|v| vec![v.r.to_string(), v.value.to_string()]).collect();
                table(&mut out, &["r", "trdeg"], &rows);
                match verdict {
                    Verdict::Polynomial { display, threshold, .. } => {
                        let _ = writeln!(out, "  verdict     polynomial {} from r = {}", display, threshold);
                    }
                    Verdict::NotEventuallyPolynomial { r } => {
                        let _ = writeln!(out, "  verdict     not eventually polynomial (fit fails at r = {})", r);
                    }
                }
            }
            TaskOutput::ChainAudit { audit } => render_audit(&mut out, audit),
            TaskOutput::Theorem5Chain { caps, members, audit } => {
                let _ = writeln!(out, "  caps        {}", fmt_vec(caps));
                for (i, m) in members.iter().enumerate() {
                    let gens = if m.is_empty() { "K".to_string() } else { m.join(", ") };
                    let _ = writeln!(out, "  F_{:<9} {}", i, gens);
                }
                render_audit(&mut out, audit);
            }
            TaskOutput::DimBound(d) => {
                let _ = writeln!(out, "  type >=     {}", d.type_lower_bound);
                let _ = writeln!(out, "  top coeffs  {}", fmt_vec(&d.top_coefficients));
                let _ = writeln!(out, "  drops       {}", fmt_vec(&d.drops));
                let _ = writeln!(out, "  dim         {}", d.dim);
            }
            TaskOutput::CompareGenerators(c) => {
                let inv = |i: &Invariants| format!("d = {}, c_d = {}, c_(m+n) = {}", i.degree, i.leading, i.top);
                let _ = writeln!(out, "  left        {}", inv(&c.left_invariants));
                let _ = writeln!(out, "  right       {}", inv(&c.right_invariants));
                let _ = writeln!(out, "  agree       {}", if c.agree { "yes" } else { "no" });
                let _ = writeln!(out, "  left report");
                render_report(&mut out, &c.left);
                let _ = writeln!(out, "  right report");
                render_report(&mut out, &c.right);
            }
        }
    }
    out
}
