//! Verdicts, reports, the matrix JSON format and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Absolute floor under every relative slack.
pub const SLACK_FLOOR: f64 = 1e-12;

/// `{"rows": r, "cols": c, "re": [...], "im": [...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: m.data().iter().map(|z| z.re).collect(),
            im: m.data().iter().map(|z| z.im).collect(),
        }
    }
}

impl MatrixJson {
    /// An empty `im` array means a real matrix.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let len = self.rows * self.cols;
        if self.re.len() != len || !(self.im.is_empty() || self.im.len() == len) {
            return Err(Error::ShapeMismatch(format!(
                "matrix JSON declares {}x{} but has {} real and {} imaginary parts",
                self.rows,
                self.cols,
                self.re.len(),
                self.im.len()
            )));
        }
        let data = (0..len)
            .map(|k| Complex64::new(self.re[k], self.im.get(k).copied().unwrap_or(0.0)))
            .collect();
        CMatrix::new(self.rows, self.cols, data)
    }
}

/// Everything needed to re-evaluate one trial.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialInputs {
    pub suite: String,
    /// Case family inside the suite.
    pub kind: String,
    pub case_id: String,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixJson>,
    #[serde(default)]
    pub scalars: BTreeMap<String, f64>,
    #[serde(default)]
    pub dims: Vec<usize>,
}

impl TrialInputs {
    pub fn new(suite: &str, kind: &str, case_id: impl Into<String>) -> Self {
        Self {
            suite: suite.to_string(),
            kind: kind.to_string(),
            case_id: case_id.into(),
            ..Self::default()
        }
    }

    pub fn with_matrix(mut self, name: &str, m: &CMatrix) -> Self {
        self.matrices.insert(name.to_string(), m.into());
        self
    }

    pub fn with_scalar(mut self, name: &str, v: f64) -> Self {
        self.scalars.insert(name.to_string(), v);
        self
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = dims;
        self
    }

    pub fn matrix(&self, name: &str) -> Result<CMatrix> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::BadSpec(format!("trial {} has no matrix `{name}`", self.case_id)))?
            .to_matrix()
    }

    pub fn scalar(&self, name: &str) -> Result<f64> {
        self.scalars
            .get(name)
            .copied()
            .ok_or_else(|| Error::BadSpec(format!("trial {} has no scalar `{name}`", self.case_id)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Verdict {
    Holds,
    Violated,
    Skipped(String),
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("HOLDS"),
            Verdict::Violated => f.write_str("VIOLATED"),
            Verdict::Skipped(reason) => write!(f, "SKIPPED({reason})"),
        }
    }
}

impl From<Verdict> for String {
    fn from(v: Verdict) -> Self {
        v.to_string()
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "HOLDS" => Ok(Verdict::Holds),
            "VIOLATED" => Ok(Verdict::Violated),
            _ => s
                .strip_prefix("SKIPPED(")
                .and_then(|r| r.strip_suffix(')'))
                .map(|r| Verdict::Skipped(r.to_string()))
                .ok_or_else(|| Error::BadSpec(format!("unknown verdict `{s}`"))),
        }
    }
}

impl TryFrom<String> for Verdict {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// How a bound is compared with its reference quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `reference ≤ bound_value + slack`.
    Dominates,
    /// `|bound_value − reference| ≤ tol`.
    Equals { tol: f64 },
    /// `reference − bound_value > gap`.
    StrictlyBelow { gap: f64 },
}

/// One checked bound inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub bound_name: String,
    /// NaN for skipped checks, written as `null`.
    #[serde(with = "nan_as_null")]
    pub bound_value: f64,
    pub reference: String,
    #[serde(with = "nan_as_null")]
    pub reference_value: f64,
    pub relation: Relation,
    pub verdict: Verdict,
    /// Signed headroom: positive when the relation holds with room to spare.
    pub margin: Option<f64>,
}

mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_nan() {
            s.serialize_none()
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub case_id: String,
    pub oracle: String,
    pub oracle_value: f64,
    pub slack_used: f64,
    pub bounds: Vec<BoundEntry>,
    /// Present on reports with at least one violation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<TrialInputs>,
}

impl BoundReport {
    pub fn violations(&self) -> usize {
        self.bounds.iter().filter(|b| b.verdict.is_violated()).count()
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.bounds.iter().find(|b| b.bound_name == name)
    }
}

/// Accumulates checks for one trial.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    case_id: String,
    oracle: String,
    oracle_value: f64,
    slack_rel: f64,
    bounds: Vec<BoundEntry>,
}

impl ReportBuilder {
    pub fn new(case_id: impl Into<String>, oracle: &str, oracle_value: f64, slack_rel: f64) -> Self {
        Self {
            case_id: case_id.into(),
            oracle: oracle.to_string(),
            oracle_value,
            slack_rel,
            bounds: Vec::new(),
        }
    }

    pub fn oracle_value(&self) -> f64 {
        self.oracle_value
    }

    /// `slack_rel · max(1, |a|, |b|)`, floored at [`SLACK_FLOOR`].
    pub fn tolerance(&self, a: f64, b: f64) -> f64 {
        (self.slack_rel * 1f64.max(a.abs()).max(b.abs())).max(SLACK_FLOOR)
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, name: &str, value: f64, reference: &str, reference_value: f64, relation: Relation, holds: bool, margin: f64) {
        self.bounds.push(BoundEntry {
            bound_name: name.to_string(),
            bound_value: value,
            reference: reference.to_string(),
            reference_value,
            relation,
            verdict: if holds { Verdict::Holds } else { Verdict::Violated },
            margin: Some(margin),
        });
    }

    /// `name` must dominate the oracle.
    pub fn upper(&mut self, name: &str, value: f64) -> &mut Self {
        let (oracle, v) = (self.oracle.clone(), self.oracle_value);
        self.dominates(name, value, &oracle, v)
    }

    /// `reference ≤ value` up to the relative slack.
    pub fn dominates(&mut self, name: &str, value: f64, reference: &str, reference_value: f64) -> &mut Self {
        let tol = self.tolerance(value, reference_value);
        self.dominates_with(name, value, reference, reference_value, tol)
    }

    /// `reference ≤ value + tol` for an explicit absolute `tol`.
    pub fn dominates_with(&mut self, name: &str, value: f64, reference: &str, reference_value: f64, tol: f64) -> &mut Self {
        let margin = value - reference_value;
        let holds = margin >= -tol && value.is_finite() && reference_value.is_finite();
        self.push(name, value, reference, reference_value, Relation::Dominates, holds, margin);
        self
    }

    /// `|value − reference| ≤ tol`.
    pub fn equals(&mut self, name: &str, value: f64, reference: &str, reference_value: f64, tol: f64) -> &mut Self {
        let margin = tol - (value - reference_value).abs();
        self.push(
            name,
            value,
            reference,
            reference_value,
            Relation::Equals { tol },
            margin >= 0.0,
            margin,
        );
        self
    }

    /// `reference − value > gap`.
    pub fn strictly_below(&mut self, name: &str, value: f64, reference: &str, reference_value: f64, gap: f64) -> &mut Self {
        let margin = (reference_value - value) - gap;
        self.push(
            name,
            value,
            reference,
            reference_value,
            Relation::StrictlyBelow { gap },
            margin > 0.0,
            margin,
        );
        self
    }

    pub fn skip(&mut self, name: &str, reference: &str, reason: impl Into<String>) -> &mut Self {
        self.bounds.push(BoundEntry {
            bound_name: name.to_string(),
            bound_value: f64::NAN,
            reference: reference.to_string(),
            reference_value: f64::NAN,
            relation: Relation::Dominates,
            verdict: Verdict::Skipped(reason.into()),
            margin: None,
        });
        self
    }

    /// Attaches `inputs` only when some check failed.
    pub fn finish(self, inputs: TrialInputs) -> BoundReport {
        let violated = self.bounds.iter().any(|b| b.verdict.is_violated());
        BoundReport {
            case_id: self.case_id,
            oracle: self.oracle,
            oracle_value: self.oracle_value,
            slack_used: self.slack_rel,
            bounds: self.bounds,
            inputs: violated.then_some(inputs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Human,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "human" => Ok(Self::Human),
            _ => Err(Error::BadSpec(format!("unknown output format `{s}`"))),
        }
    }
}

pub const CSV_HEADER: &str = "case_id,oracle,bound_name,bound_value,verdict,margin";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:e}")
    }
}

/// Writes `reports` in the chosen format.
pub fn emit<W: Write + ?Sized>(reports: &[BoundReport], format: OutputFormat, out: &mut W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in reports {
                for b in &r.bounds {
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        csv_field(&r.case_id),
                        num(r.oracle_value),
                        csv_field(&b.bound_name),
                        num(b.bound_value),
                        csv_field(&b.verdict.to_string()),
                        b.margin.map(num).unwrap_or_default()
                    )?;
                }
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, reports)?;
            writeln!(out)?;
        }
        OutputFormat::Human => emit_human(reports, out)?,
    }
    Ok(())
}

#[derive(Default)]
struct Tally {
    checks: usize,
    holds: usize,
    violated: usize,
    skipped: usize,
    worst: Option<f64>,
}

/// Per-check summary, the violations, then a tightest-first table per report
/// when there are few reports.
fn emit_human<W: Write + ?Sized>(reports: &[BoundReport], out: &mut W) -> Result<()> {
    let mut tallies: BTreeMap<(String, String), Tally> = BTreeMap::new();
    for r in reports {
        for b in &r.bounds {
            let t = tallies.entry((b.bound_name.clone(), b.reference.clone())).or_default();
            t.checks += 1;
            match b.verdict {
                Verdict::Holds => t.holds += 1,
                Verdict::Violated => t.violated += 1,
                Verdict::Skipped(_) => t.skipped += 1,
            }
            if let Some(m) = b.margin {
                t.worst = Some(t.worst.map_or(m, |w: f64| w.min(m)));
            }
        }
    }
    let total: usize = reports.iter().map(BoundReport::violations).sum();
    writeln!(out, "{} reports, {} violations", reports.len(), total)?;
    writeln!(out)?;
    writeln!(
        out,
        "{:<28} {:<20} {:>7} {:>7} {:>8} {:>7} {:>14}",
        "bound", "against", "checks", "holds", "violated", "skipped", "min margin"
    )?;
    for ((name, reference), t) in &tallies {
        writeln!(
            out,
            "{:<28} {:<20} {:>7} {:>7} {:>8} {:>7} {:>14}",
            name,
            reference,
            t.checks,
            t.holds,
            t.violated,
            t.skipped,
            t.worst.map(|m| format!("{m:.3e}")).unwrap_or_else(|| "-".into())
        )?;
    }
    for r in reports.iter().filter(|r| r.violations() > 0) {
        writeln!(out)?;
        writeln!(out, "VIOLATION in {}:", r.case_id)?;
        for b in r.bounds.iter().filter(|b| b.verdict.is_violated()) {
            writeln!(
                out,
                "  {} = {:.17e} against {} = {:.17e}, margin {:.3e}",
                b.bound_name,
                b.bound_value,
                b.reference,
                b.reference_value,
                b.margin.unwrap_or(f64::NAN)
            )?;
        }
    }
    if reports.len() <= 20 {
        for r in reports {
            writeln!(out)?;
            writeln!(out, "{}  ({} = {:.12})", r.case_id, r.oracle, r.oracle_value)?;
            let mut ranked: Vec<&BoundEntry> = r.bounds.iter().filter(|b| !b.bound_value.is_nan()).collect();
            ranked.sort_by(|a, b| a.bound_value.total_cmp(&b.bound_value));
            for b in ranked {
                writeln!(
                    out,
                    "  {:<28} {:>20.12}  {:<10} vs {}",
                    b.bound_name,
                    b.bound_value,
                    b.verdict.to_string(),
                    b.reference
                )?;
            }
            for b in r.bounds.iter().filter(|b| b.bound_value.is_nan()) {
                writeln!(out, "  {:<28} {:>20}  {}", b.bound_name, "-", b.verdict)?;
            }
        }
    }
    Ok(())
}

/// Parses a JSON file holding one report or an array of reports.
pub fn parse_reports(text: &str) -> Result<Vec<BoundReport>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.is_array() {
        Ok(serde_json::from_value(value)?)
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report(violate: bool) -> BoundReport {
        let mut b = ReportBuilder::new("case-0", "w", 1.0, 1e-8);
        b.upper("THM2", if violate { 0.5 } else { 1.2 });
        b.equals("AOK_A", 1.3, "AOK_B", 1.3, 1e-10);
        b.skip("BHUNIA_ADM", "w", "blocks differ");
        b.finish(TrialInputs::new("numrad-chain", "block", "case-0").with_matrix("A", &CMatrix::identity(2)))
    }

    #[test]
    fn csv_header_only_for_empty() {
        let mut buf = Vec::new();
        emit(&[], OutputFormat::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut r = sample_report(false);
        r.oracle_value = 0.1 + 0.2;
        r.bounds[0].bound_value = std::f64::consts::PI / 7.0;
        let mut buf = Vec::new();
        emit(std::slice::from_ref(&r), OutputFormat::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let parsed = parse_reports(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0].oracle_value.to_bits(), r.oracle_value.to_bits());
        assert_eq!(parsed[0].bounds[0].bound_value.to_bits(), r.bounds[0].bound_value.to_bits());
        assert_eq!(parsed[0].bounds[2].verdict, Verdict::Skipped("blocks differ".into()));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn violations_carry_inputs_and_margin() {
        let ok = sample_report(false);
        assert!(ok.inputs.is_none());
        let bad = sample_report(true);
        assert_eq!(bad.violations(), 1);
        assert!(bad.bounds[0].margin.unwrap() < 0.0);
        let m = bad.inputs.as_ref().unwrap().matrix("A").unwrap();
        assert_eq!(m, CMatrix::identity(2));
    }

    #[test]
    fn matrix_json_validates_shape() {
        let bad = MatrixJson {
            rows: 2,
            cols: 2,
            re: vec![1.0; 3],
            im: vec![],
        };
        assert!(bad.to_matrix().is_err());
        let real = MatrixJson {
            rows: 1,
            cols: 2,
            re: vec![1.0, 2.0],
            im: vec![],
        };
        assert_eq!(real.to_matrix().unwrap().get(0, 1), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn verdict_strings() {
        for v in [Verdict::Holds, Verdict::Violated, Verdict::Skipped("x (y)".into())] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        }
    }
}
