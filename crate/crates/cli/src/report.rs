//! Result bundle, analysis reports and CSV traces.

use schemars::JsonSchema;
use serde::Serialize;
use serde_json::value::RawValue;
use subdiv_core::analysis::{
    ApproxOrderReport, C1Report, CauchyTrace, ContractivityReport, DisplacementReport, DividedDiffTrace,
    LocalityReport, ProximityType1Report, ProximityType2Report,
};
use subdiv_core::schemes::SchemeSpec;

use crate::data::DataFile;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, JsonSchema)]
pub struct DividedDiffReport {
    pub trace: DividedDiffTrace,
    pub c1: C1Report,
}

/// One analysis result, tagged by kind.
#[derive(Debug, Clone, Serialize, JsonSchema)]
#[serde(tag = "kind", content = "report", rename_all = "kebab-case")]
pub enum Report {
    Contractivity(ContractivityReport),
    Displacement(DisplacementReport),
    Proximity1(ProximityType1Report),
    Proximity2(ProximityType2Report),
    Cauchy(CauchyTrace),
    DividedDiff(DividedDiffReport),
    ApproxOrder(ApproxOrderReport),
    Locality(LocalityReport),
}

#[derive(Debug, Clone, Serialize, JsonSchema)]
pub struct LevelSummary {
    pub level: usize,
    pub points: usize,
    /// Global fine index of the first element.
    pub origin: i64,
    /// `None` for a single-element level.
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Serialize, JsonSchema)]
pub struct LevelDump {
    pub level: usize,
    pub origin: i64,
    pub knots: Vec<f64>,
    pub data: DataFile,
}

/// Command-line values that replaced config values for this run.
#[derive(Debug, Clone, Default, Serialize, JsonSchema)]
pub struct Overrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Serialize, JsonSchema)]
pub struct Runtime {
    pub elapsed_ms: f64,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize, JsonSchema)]
pub struct ResultBundle {
    pub version: String,
    /// The config document exactly as read.
    #[schemars(with = "serde_json::Value")]
    pub config: Box<RawValue>,
    pub overrides: Overrides,
    pub space: String,
    pub scheme: SchemeSpec,
    pub levels: Vec<LevelSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dumps: Option<Vec<LevelDump>>,
    pub reports: Vec<Report>,
    pub runtime: Runtime,
}

/// A plot-ready table with a fixed column order.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub stem: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(stem: &'static str, header: &[&'static str]) -> Self {
        Self {
            stem,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

pub fn num(x: f64) -> String {
    x.to_string()
}

pub fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn level_table(levels: &[LevelSummary]) -> CsvTable {
    let mut t = CsvTable::new("delta_trace", &["level", "points", "delta"]);
    for l in levels {
        t.push(vec![l.level.to_string(), l.points.to_string(), opt(l.delta)]);
    }
    t
}

impl Report {
    pub fn tables(&self) -> Vec<CsvTable> {
        match self {
            Report::Contractivity(r) => {
                let mut t = CsvTable::new("contractivity", &["l", "block", "ratio"]);
                for row in &r.rows {
                    for (b, x) in row.ratios.iter().enumerate() {
                        t.push(vec![row.l.to_string(), b.to_string(), opt(*x)]);
                    }
                }
                vec![t]
            }
            Report::Displacement(r) => {
                let mut t = CsvTable::new("displacement", &["level", "ratio"]);
                for (k, x) in r.per_level.iter().enumerate() {
                    t.push(vec![k.to_string(), opt(*x)]);
                }
                vec![t]
            }
            Report::Proximity1(r) => {
                let mut t = CsvTable::new("proximity1", &["scale", "delta", "sup", "bound", "within_bound"]);
                for p in &r.sweep {
                    t.push(vec![num(p.scale), num(p.delta), num(p.sup), opt(p.bound), opt(p.within_bound)]);
                }
                vec![t]
            }
            Report::Proximity2(r) => {
                let mut t = CsvTable::new("proximity2_errors", &["j", "e_j", "ratio"]);
                for (j, e) in r.errors.iter().enumerate() {
                    t.push(vec![j.to_string(), num(*e), opt(r.ratios.get(j).copied().flatten())]);
                }
                vec![t]
            }
            Report::Cauchy(r) => {
                let mut t = CsvTable::new("cauchy", &["k", "d_k", "ratio"]);
                for (k, d) in r.d.iter().enumerate() {
                    t.push(vec![k.to_string(), num(*d), opt(r.ratios.get(k).copied().flatten())]);
                }
                vec![t]
            }
            Report::DividedDiff(r) => {
                let mut t = CsvTable::new("divided_diff", &["level", "count", "delta", "sup_distance"]);
                for (k, l) in r.trace.levels.iter().enumerate() {
                    let sup = if k == 0 { None } else { r.trace.sup_distances.get(k - 1).copied().flatten() };
                    t.push(vec![l.level.to_string(), l.values.len().to_string(), num(l.delta), opt(sup)]);
                }
                vec![t]
            }
            Report::ApproxOrder(r) => {
                let mut t = CsvTable::new("approx_order", &["h", "points", "error", "bound", "within_bound"]);
                for row in &r.rows {
                    t.push(vec![
                        num(row.h),
                        row.points.to_string(),
                        num(row.error),
                        num(row.bound),
                        row.within_bound.to_string(),
                    ]);
                }
                vec![t]
            }
            Report::Locality(_) => Vec::new(),
        }
    }
}
