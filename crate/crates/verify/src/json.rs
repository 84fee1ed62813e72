//! JSON shapes of everything the tool prints.

use std::collections::BTreeMap;

use cuboid_core::sweep::ControlCase;
use cuboid_core::{CheckResult, CurvePoint, ExternalCertificate, SweepReport, Violation};
use serde::{Deserialize, Serialize};

pub const SCHEMA_ID: &str = "cuboid-certificate/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Affine { t: String, w: String },
    Infinity { infinity: bool },
}

impl From<&CurvePoint> for PointJson {
    fn from(p: &CurvePoint) -> Self {
        match p {
            CurvePoint::Infinity => PointJson::Infinity { infinity: true },
            CurvePoint::Affine { t, w } => PointJson::Affine { t: t.to_string(), w: w.to_string() },
        }
    }
}

pub fn points_json(points: &[CurvePoint]) -> Vec<PointJson> {
    points.iter().map(PointJson::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub check: String,
    pub status: String,
    pub citation: String,
    pub witness: String,
}

impl From<&CheckResult> for CheckJson {
    fn from(c: &CheckResult) -> Self {
        CheckJson {
            check: c.check.as_str().to_string(),
            status: c.status.as_str().to_string(),
            citation: c.citation.clone(),
            witness: c.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub p: u64,
    pub q: u64,
    pub kind: String,
    pub detail: String,
}

impl From<&Violation> for ViolationJson {
    fn from(v: &Violation) -> Self {
        ViolationJson { p: v.p, q: v.q, kind: v.kind.as_str().to_string(), detail: v.detail.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlJson {
    pub p: u64,
    pub q: u64,
    pub ps_roots: Vec<String>,
    pub qpq_integer_roots: Vec<String>,
    pub even_factor: Option<String>,
    pub quotient: Option<String>,
    pub normalized_factor_divides: bool,
    pub ok: bool,
}

impl From<&ControlCase> for ControlJson {
    fn from(c: &ControlCase) -> Self {
        ControlJson {
            p: c.params.p(),
            q: c.params.q(),
            ps_roots: c.ps_roots.iter().map(|x| x.to_string()).collect(),
            qpq_integer_roots: c.qpq_integer_roots.iter().map(|x| x.to_string()).collect(),
            even_factor: c.even_factor.as_ref().map(|f| f.to_string()),
            quotient: c.quotient.as_ref().map(|f| f.to_string()),
            normalized_factor_divides: c.normalized_factor_divides,
            ok: c.ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepJson {
    pub bound: u64,
    pub pairs_checked: usize,
    pub violations: Vec<ViolationJson>,
    pub control_case: ControlJson,
}

impl From<&SweepReport> for SweepJson {
    fn from(r: &SweepReport) -> Self {
        SweepJson {
            bound: r.bound,
            pairs_checked: r.pairs_checked,
            violations: r.violations.iter().map(ViolationJson::from).collect(),
            control_case: ControlJson::from(&r.control_case),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalJson {
    /// The check this assumption stands in for.
    pub check: String,
    pub claim: String,
    pub source: String,
    pub rank_bound: u32,
    pub claimed_points: Vec<PointJson>,
    pub transcript: Vec<String>,
}

impl ExternalJson {
    pub fn new(check: &str, ext: &ExternalCertificate) -> Self {
        ExternalJson {
            check: check.to_string(),
            claim: ext.claim.clone(),
            source: ext.source.clone(),
            rank_bound: ext.rank_bound,
            claimed_points: points_json(&ext.claimed_points),
            transcript: ext.transcript.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub height: u64,
    pub sweep_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passes: usize,
    pub failures: usize,
    pub external_assumptions: usize,
}

/// The aggregate certificate. Everything except `timing` is a pure function
/// of the configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub toolkit_version: String,
    pub status: String,
    pub config: ConfigJson,
    pub summary: Summary,
    pub checks: Vec<CheckJson>,
    pub external_assumptions: Vec<ExternalJson>,
    pub curve_points: Vec<PointJson>,
    pub sweep: SweepJson,
    /// Wall-clock milliseconds per check.
    pub timing: BTreeMap<String, f64>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// The certificate text with the `timing` object removed.
    pub fn to_json_without_timing(&self) -> String {
        let mut value = serde_json::to_value(self).expect("certificate serializes");
        if let Some(map) = value.as_object_mut() {
            map.remove("timing");
        }
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}
