//! Serializable reports and their JSON, CSV and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use systole_core::lefschetz::{FeasibilityWitness, LefschetzProfile};
use systole_core::search::{Candidate, SearchStats};
use systole_core::{IntPoly, ReciprocalPolynomial};

pub const SCHEMA: &str = "pa-systole/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub value: f64,
    pub polynomial: Option<Vec<i64>>,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub polynomial: Vec<i64>,
    pub root: f64,
}

impl CandidateRecord {
    pub fn from_candidate(c: &Candidate) -> Self {
        CandidateRecord {
            polynomial: c.poly.full_descending(),
            root: c.root,
        }
    }

    pub fn to_candidate(&self) -> Option<Candidate> {
        let poly = ReciprocalPolynomial::from_int_poly(&IntPoly::from_descending(&self.polynomial))
            .ok()?;
        Some(Candidate {
            poly,
            root: self.root,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub total: u64,
    pub fractional: u64,
    pub surviving: u64,
    pub bound_rejections: u64,
    pub root_rejections: u64,
    pub no_convergence: u64,
    pub boundary_hits: Vec<CandidateRecord>,
    pub review: Vec<Vec<i64>>,
}

impl StatsRecord {
    pub fn from_stats(s: &SearchStats) -> Self {
        StatsRecord {
            total: s.total,
            fractional: s.fractional,
            surviving: s.surviving,
            bound_rejections: s.bound_rejections,
            root_rejections: s.root_rejections,
            no_convergence: s.no_convergence,
            boundary_hits: s
                .boundary_hits
                .iter()
                .map(CandidateRecord::from_candidate)
                .collect(),
            review: s.review.iter().map(|p| p.full_descending()).collect(),
        }
    }

    pub fn to_stats(&self) -> Option<SearchStats> {
        Some(SearchStats {
            total: self.total,
            fractional: self.fractional,
            surviving: self.surviving,
            bound_rejections: self.bound_rejections,
            root_rejections: self.root_rejections,
            no_convergence: self.no_convergence,
            boundary_hits: self
                .boundary_hits
                .iter()
                .map(|c| c.to_candidate())
                .collect::<Option<_>>()?,
            review: self
                .review
                .iter()
                .map(|d| ReciprocalPolynomial::from_int_poly(&IntPoly::from_descending(d)).ok())
                .collect::<Option<_>>()?,
        })
    }
}

/// Wall-clock figures; never part of the content hash.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub enumeration_ms: u64,
    pub filter_ms: u64,
    pub total_ms: u64,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub schema: String,
    pub genus: usize,
    pub bound: BoundRecord,
    pub candidates: Vec<CandidateRecord>,
    pub stats: StatsRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub degree: u32,
    pub length: u32,
    pub rotation: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionRow {
    pub label: String,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub structure: String,
    pub cycles: Vec<CycleRecord>,
    /// Period → number of regular periodic orbits.
    pub regular_orbits: BTreeMap<usize, u64>,
    pub decomposition: Vec<DecompositionRow>,
}

impl WitnessRecord {
    pub fn new(w: &FeasibilityWitness, profile: &LefschetzProfile) -> Self {
        WitnessRecord {
            structure: w.structure.to_string(),
            cycles: w
                .structure
                .cycles
                .iter()
                .map(|c| CycleRecord {
                    degree: c.degree,
                    length: c.length,
                    rotation: c.rotation,
                })
                .collect(),
            regular_orbits: w.nonzero_counts(),
            decomposition: w
                .decomposition(profile)
                .into_iter()
                .map(|(label, values)| DecompositionRow { label, values })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumVerdict {
    pub stratum: String,
    pub degrees: Vec<u32>,
    pub feasible: bool,
    pub witnesses: Vec<WitnessRecord>,
    /// Smallest horizon at which every orbit structure has failed.
    pub eliminated_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariantVerdict {
    /// `P(X)` or `P(-X)`.
    pub variant: String,
    pub charpoly: Vec<i64>,
    pub sign: i8,
    pub lefschetz: Vec<i64>,
    pub strata: Vec<StratumVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateVerdict {
    pub label: String,
    pub polynomial: Vec<i64>,
    pub root: f64,
    pub variants: Vec<VariantVerdict>,
    pub survives: bool,
    /// `"P(-X) (2,10)"` entries.
    pub feasible: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

/// One non-orientable singularity pattern in genus 2, passed to the
/// sphere quotient and its orienting cover.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverCase {
    pub data: String,
    pub quotient: String,
    pub cover_stratum: String,
    pub cover_genus: usize,
    pub outcome: String,
    pub candidates: Vec<CandidateVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimumRecord {
    pub polynomial: Vec<i64>,
    pub root: f64,
    pub feasible: Vec<String>,
    /// `survivor` or `bound`.
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema: String,
    pub genus: usize,
    pub bound: BoundRecord,
    pub horizon: usize,
    pub candidates: Vec<CandidateVerdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cover_analysis: Vec<CoverCase>,
    pub minimum: Option<MinimumRecord>,
    pub stats: StatsRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub schema: String,
    pub polynomial: Vec<i64>,
    pub horizon: usize,
    pub variants: Vec<VariantVerdict>,
}

/// Any report the `report` command can re-render.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AnyReport {
    Pipeline(PipelineReport),
    Enumeration(EnumerationReport),
    Filter(FilterReport),
}

// Untagged deserialization buffers the input and then cannot read the
// integer keys of `regular_orbits`, so pick the variant by its fields.
impl<'de> Deserialize<'de> for AnyReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(d)?;
        let has = |key: &str| value.get(key).is_some();
        let report = if has("variants") {
            serde_json::from_value(value).map(AnyReport::Filter)
        } else if has("horizon") {
            serde_json::from_value(value).map(AnyReport::Pipeline)
        } else {
            serde_json::from_value(value).map(AnyReport::Enumeration)
        };
        report.map_err(D::Error::custom)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// SHA-256 of the JSON with the timing block removed.
pub fn content_hash(report: &PipelineReport) -> String {
    let mut r = report.clone();
    r.timing = None;
    hex(&Sha256::digest(to_json(&r).as_bytes()))
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// `x^6-x^4-x^3-x^2+1`.
pub fn poly_text(desc: &[i64]) -> String {
    IntPoly::from_descending(desc)
        .display_with("x")
        .replace(' ', "")
}

fn bound_text(b: &BoundRecord) -> String {
    match &b.polynomial {
        Some(p) => format!("{:.5} ({})", b.value, poly_text(p)),
        None => format!("{:.5}", b.value),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{:w$}", s, w = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

impl EnumerationReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from("index,root,polynomial\n");
                for (i, c) in self.candidates.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{},{:.10},{}",
                        i + 1,
                        c.root,
                        csv_field(&format!("{:?}", c.polynomial))
                    );
                }
                out
            }
            Format::Table => {
                let mut out = format!(
                    "genus {}, bound {}: {} candidates\n",
                    self.genus,
                    bound_text(&self.bound),
                    self.candidates.len()
                );
                let mut rows = vec![vec!["".into(), "root".into(), "polynomial".into()]];
                for (i, c) in self.candidates.iter().enumerate() {
                    rows.push(vec![
                        format!("P{}", i + 1),
                        format!("{:.5}", c.root),
                        poly_text(&c.polynomial),
                    ]);
                }
                out.push_str(&align(&rows));
                let _ = writeln!(
                    out,
                    "trace cases {} (fractional {}, integral {})",
                    self.stats.total, self.stats.fractional, self.stats.surviving
                );
                out
            }
        }
    }
}

fn verdict_csv(out: &mut String, scope: &str, c: &CandidateVerdict) {
    for v in &c.variants {
        for s in &v.strata {
            let witness = s
                .witnesses
                .first()
                .map(|w| w.structure.clone())
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{:.10},{},{},{},{},{},{}",
                scope,
                c.label,
                c.root,
                csv_field(&poly_text(&c.polynomial)),
                v.variant,
                csv_field(&s.stratum),
                s.feasible,
                csv_field(&witness),
                s.eliminated_at.map(|n| n.to_string()).unwrap_or_default()
            );
        }
    }
}

fn verdict_rows(rows: &mut Vec<Vec<String>>, c: &CandidateVerdict) {
    let feasible = if c.feasible.is_empty() {
        "eliminated".to_string()
    } else {
        c.feasible.join(", ")
    };
    rows.push(vec![
        c.label.clone(),
        format!("{:.5}", c.root),
        poly_text(&c.polynomial),
        feasible,
    ]);
    if let Some(flag) = &c.flag {
        rows.push(vec![
            String::new(),
            String::new(),
            String::new(),
            format!("note: {flag}"),
        ]);
    }
}

impl PipelineReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from(
                    "scope,label,root,polynomial,variant,stratum,feasible,witness,eliminated_at\n",
                );
                for c in &self.candidates {
                    verdict_csv(&mut out, &format!("genus{}", self.genus), c);
                }
                for case in &self.cover_analysis {
                    for c in &case.candidates {
                        verdict_csv(&mut out, &format!("cover{}", case.data), c);
                    }
                }
                out
            }
            Format::Table => {
                let mut out = format!(
                    "genus {}, bound {}, horizon {}\n",
                    self.genus,
                    bound_text(&self.bound),
                    self.horizon
                );
                if self.candidates.is_empty() {
                    out.push_str("no candidates below the bound\n");
                } else {
                    let mut rows = vec![vec![
                        "".into(),
                        "root".into(),
                        "polynomial".into(),
                        "feasible".into(),
                    ]];
                    for c in &self.candidates {
                        verdict_rows(&mut rows, c);
                    }
                    out.push_str(&align(&rows));
                }
                for case in &self.cover_analysis {
                    let _ = writeln!(
                        out,
                        "\nnon-orientable data {} -> quotient {} -> cover stratum {} in genus {}: {}",
                        case.data, case.quotient, case.cover_stratum, case.cover_genus, case.outcome
                    );
                    if !case.candidates.is_empty() {
                        let mut rows = vec![vec![
                            "".into(),
                            "root".into(),
                            "polynomial".into(),
                            "feasible".into(),
                        ]];
                        for c in &case.candidates {
                            verdict_rows(&mut rows, c);
                        }
                        let mut lrows = vec![vec![
                            "".to_string(),
                            "L(f)".into(),
                            "L(f^2)".into(),
                            "L(f^3)".into(),
                        ]];
                        for c in &case.candidates {
                            if let Some(v) = c.variants.first() {
                                let mut r = vec![c.label.clone()];
                                r.extend(v.lefschetz.iter().take(3).map(|x| x.to_string()));
                                lrows.push(r);
                            }
                        }
                        out.push_str(&align(&rows));
                        out.push('\n');
                        out.push_str(&align(&lrows));
                    }
                }
                match &self.minimum {
                    Some(m) => {
                        let _ = writeln!(
                            out,
                            "\nminimum: {} @ {:.5} [{}]{}",
                            poly_text(&m.polynomial),
                            m.root,
                            m.source,
                            if m.feasible.is_empty() {
                                String::new()
                            } else {
                                format!(" on {}", m.feasible.join(", "))
                            }
                        );
                        if let Some(n) = &m.note {
                            let _ = writeln!(out, "  {n}");
                        }
                    }
                    None => out.push_str("\nminimum: none\n"),
                }
                out
            }
        }
    }
}

fn decomposition_table(w: &WitnessRecord) -> String {
    let Some(first) = w.decomposition.first() else {
        return String::new();
    };
    let mut rows = vec![std::iter::once("n".to_string())
        .chain((1..=first.values.len()).map(|n| n.to_string()))
        .collect()];
    for r in &w.decomposition {
        rows.push(
            std::iter::once(r.label.clone())
                .chain(r.values.iter().map(|v| v.to_string()))
                .collect(),
        );
    }
    align(&rows)
}

impl FilterReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from("variant,stratum,feasible,witness,eliminated_at\n");
                for v in &self.variants {
                    for s in &v.strata {
                        let witness = s
                            .witnesses
                            .first()
                            .map(|w| w.structure.clone())
                            .unwrap_or_default();
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{}",
                            v.variant,
                            csv_field(&s.stratum),
                            s.feasible,
                            csv_field(&witness),
                            s.eliminated_at.map(|n| n.to_string()).unwrap_or_default()
                        );
                    }
                }
                out
            }
            Format::Table => {
                let mut out = format!(
                    "{}, horizon {}\n",
                    poly_text(&self.polynomial),
                    self.horizon
                );
                for v in &self.variants {
                    let _ = writeln!(
                        out,
                        "\n{} = {} (sign {:+})",
                        v.variant,
                        poly_text(&v.charpoly),
                        v.sign
                    );
                    if let Some(e) = &v.error {
                        let _ = writeln!(out, "  {e}");
                        continue;
                    }
                    for s in &v.strata {
                        match (s.feasible, s.eliminated_at) {
                            (true, _) => {
                                let _ = writeln!(out, "  {} feasible", s.stratum);
                                for w in &s.witnesses {
                                    let _ = writeln!(out, "    {}", w.structure);
                                    for line in decomposition_table(w).lines() {
                                        let _ = writeln!(out, "      {line}");
                                    }
                                }
                            }
                            (false, Some(n)) => {
                                let _ = writeln!(out, "  {} eliminated at n = {n}", s.stratum);
                            }
                            (false, None) => {
                                let _ = writeln!(out, "  {} eliminated", s.stratum);
                            }
                        }
                    }
                }
                out
            }
        }
    }
}

impl AnyReport {
    pub fn render(&self, format: Format) -> String {
        match self {
            AnyReport::Pipeline(r) => r.render(format),
            AnyReport::Enumeration(r) => r.render(format),
            AnyReport::Filter(r) => r.render(format),
        }
    }
}
