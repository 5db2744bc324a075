//! JSON wire formats: instance files, verification reports, cover and depth
//! outputs.
//!
//! Instances are kept human-auditable: plain decimal numbers (serde_json
//! round-trips doubles exactly), unknown keys rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::DepthReport;
use crate::cover::CoverResult;
use crate::density::{Certificate, HypothesisReport, Instance, InstanceError};
use crate::geometry::{GeometryError, Homothet, NormBody, Point};

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

/// On-disk instance schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dim: usize,
    pub norm: NormSpec,
    pub red: Vec<RedEntry>,
    pub blue: Vec<Vec<f64>>,
    pub lambda: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NormSpec {
    Euclidean,
    Linf,
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RedEntry {
    pub point: Vec<f64>,
    pub radius: f64,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let norm = match inst.body() {
            NormBody::Euclidean { .. } => NormSpec::Euclidean,
            NormBody::Linf { .. } => NormSpec::Linf,
            NormBody::Polygon(p) => NormSpec::Polygon { vertices: p.vertices().to_vec() },
        };
        InstanceFile {
            dim: inst.body().dim(),
            norm,
            red: inst
                .red()
                .iter()
                .map(|h| RedEntry { point: h.center.coords.clone(), radius: h.ratio })
                .collect(),
            blue: inst.blue().iter().map(|b| b.coords.clone()).collect(),
            lambda: inst.lambda(),
        }
    }

    pub fn into_instance(self) -> Result<Instance, ReadError> {
        if self.dim == 0 {
            return Err(ReadError::Invalid("key \"dim\" must be at least 1".into()));
        }
        let body = match self.norm {
            NormSpec::Euclidean => NormBody::euclidean(self.dim),
            NormSpec::Linf => NormBody::linf(self.dim),
            NormSpec::Polygon { vertices } => {
                if self.dim != 2 {
                    return Err(ReadError::Invalid(format!(
                        "key \"norm\": polygon bodies require dim = 2, got {}",
                        self.dim
                    )));
                }
                NormBody::polygon(vertices)
            }
        }
        .map_err(|e| ReadError::Invalid(format!("key \"norm\": {e}")))?;

        let mut red = Vec::with_capacity(self.red.len());
        for (i, entry) in self.red.into_iter().enumerate() {
            if entry.point.len() != self.dim {
                return Err(ReadError::Invalid(format!(
                    "key \"red[{i}].point\": expected {} coordinates, got {}",
                    self.dim,
                    entry.point.len()
                )));
            }
            if entry.point.iter().any(|c| !c.is_finite()) {
                return Err(ReadError::Invalid(format!("key \"red[{i}].point\": coordinates must be finite")));
            }
            if !(entry.radius.is_finite() && entry.radius > 0.0) {
                return Err(ReadError::Invalid(format!(
                    "key \"red[{i}].radius\": must be positive and finite, got {}",
                    entry.radius
                )));
            }
            red.push(Homothet::new(Point::new(entry.point), entry.radius));
        }

        let mut blue = Vec::with_capacity(self.blue.len());
        for (i, coords) in self.blue.into_iter().enumerate() {
            if coords.len() != self.dim {
                return Err(ReadError::Invalid(format!(
                    "key \"blue[{i}]\": expected {} coordinates, got {}",
                    self.dim,
                    coords.len()
                )));
            }
            if coords.iter().any(|c| !c.is_finite()) {
                return Err(ReadError::Invalid(format!("key \"blue[{i}]\": coordinates must be finite")));
            }
            blue.push(Point::new(coords));
        }

        Instance::new(body, red, blue, self.lambda).map_err(|e| match e {
            InstanceError::EmptyRed => ReadError::Invalid("key \"red\": must be nonempty".into()),
            InstanceError::InvalidLambda(l) => {
                ReadError::Invalid(format!("key \"lambda\": must be positive and finite, got {l}"))
            }
            InstanceError::Geometry(GeometryError::DimensionMismatch { expected, got }) => {
                ReadError::Invalid(format!("dimension mismatch: expected {expected}, got {got}"))
            }
            other => ReadError::Invalid(other.to_string()),
        })
    }
}

/// Parse and validate an instance from JSON text.
pub fn read_instance(json: &str) -> Result<Instance, ReadError> {
    let file: InstanceFile = serde_json::from_str(json)?;
    file.into_instance()
}

/// Serialize an instance to pretty JSON.
pub fn write_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst))
        .expect("instance serialization cannot fail")
}

/// Slack for the report verdict comparison `global_ratio ≥ bound`.
pub const VERDICT_SLACK: f64 = 1e-12;

/// Verification report emitted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub hypothesis: HypothesisSection,
    pub certificate: Option<CertificateSection>,
    pub global_ratio: f64,
    /// `lambda / depth_bound`.
    pub bound: f64,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisSection {
    pub per_member: Vec<MemberRow>,
    pub all_satisfied: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MemberRow {
    pub red_count: usize,
    pub blue_count: usize,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateSection {
    pub selected: Vec<usize>,
    pub per_selected: Vec<[usize; 2]>,
    pub depth_bound: usize,
    pub chain: ChainSection,
    pub max_blue_depth: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainSection {
    pub red_sum: u64,
    pub blue_over_lambda: f64,
    pub depth_term: f64,
}

impl HypothesisSection {
    pub fn from_report(report: &HypothesisReport) -> Self {
        HypothesisSection {
            per_member: report
                .per_member
                .iter()
                .map(|c| MemberRow {
                    red_count: c.red_count,
                    blue_count: c.blue_count,
                    satisfied: c.satisfied,
                })
                .collect(),
            all_satisfied: report.all_satisfied,
        }
    }
}

impl CertificateSection {
    pub fn from_certificate(cert: &Certificate) -> Self {
        CertificateSection {
            selected: cert.selected.clone(),
            per_selected: cert.per_selected.iter().map(|&(r, b)| [r, b]).collect(),
            depth_bound: cert.depth_bound,
            chain: ChainSection {
                red_sum: cert.chain.red_sum,
                blue_over_lambda: cert.chain.blue_over_lambda,
                depth_term: cert.chain.depth_term,
            },
            max_blue_depth: cert.max_blue_depth,
        }
    }
}

/// Cover output: selection order plus the covering member per red point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverFile {
    pub selected: Vec<usize>,
    pub covered_by: Vec<usize>,
}

impl CoverFile {
    pub fn from_result(result: &CoverResult) -> Self {
        CoverFile { selected: result.selected.clone(), covered_by: result.covered_by.clone() }
    }
}

/// Depth query output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthFile {
    pub probe: Vec<f64>,
    pub depth: usize,
    pub containing_indices: Vec<usize>,
}

impl DepthFile {
    pub fn from_report(report: &DepthReport) -> Self {
        DepthFile {
            probe: report.probe.coords.clone(),
            depth: report.depth,
            containing_indices: report.containing.clone(),
        }
    }
}
