//! The JSON report and its table rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use qtype_core::types::{GenericValueReport, SliceSample, Status, TypeEstimate, UpperCertificate, Verdict, Witness};
use qtype_core::{Order, TypeValue};

use crate::config::ConfigView;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateView {
    pub lower: TypeValue,
    pub upper: TypeValue,
    pub status: Status,
    /// Agreed generic value, `"UNRESOLVED"`, or absent for single computations.
    pub agreed_value: Option<String>,
    pub agreement_count: Option<usize>,
    pub upper_certificate: Option<UpperCertificate>,
    pub sampled_estimate: Option<TypeValue>,
    pub truncation: Option<Verdict>,
}

impl EstimateView {
    pub fn from_estimate(e: &TypeEstimate) -> Self {
        Self {
            lower: e.lower.clone(),
            upper: e.upper.clone(),
            status: e.status,
            agreed_value: None,
            agreement_count: None,
            upper_certificate: e.upper_certificate.clone(),
            sampled_estimate: e.sampled_estimate.clone(),
            truncation: e.truncation.clone(),
        }
    }

    /// The agreed estimate, or the full sample range when unresolved.
    pub fn from_generic(r: &GenericValueReport) -> Self {
        let mut v = match &r.estimate {
            Some(e) => Self::from_estimate(e),
            None => {
                let lower = r.samples.iter().map(|s| s.estimate.lower.clone()).min().unwrap_or(TypeValue::int(0));
                let upper = r.samples.iter().map(|s| s.estimate.upper.clone()).max().unwrap_or(TypeValue::Infinity);
                let upper = upper.max(lower.clone());
                Self {
                    status: Status::classify(&lower, &upper),
                    lower,
                    upper,
                    agreed_value: None,
                    agreement_count: None,
                    upper_certificate: None,
                    sampled_estimate: None,
                    truncation: None,
                }
            }
        };
        v.agreed_value = Some(agreed_text(r));
        v.agreement_count = Some(r.agreement_count);
        v
    }
}

pub fn agreed_text(r: &GenericValueReport) -> String {
    r.agreed_value.as_ref().map_or_else(|| "UNRESOLVED".to_string(), ToString::to_string)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessView {
    pub curve: String,
    pub base: Vec<String>,
    pub order: Order,
    pub nu: u32,
    pub ratio: TypeValue,
}

impl From<&Witness> for WitnessView {
    fn from(w: &Witness) -> Self {
        Self {
            curve: w.curve.to_string(),
            base: w.curve.base().iter().map(ToString::to_string).collect(),
            order: w.order,
            nu: w.nu,
            ratio: w.ratio.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleView {
    pub index: usize,
    pub seed: u64,
    pub forms: Vec<String>,
    pub lower: TypeValue,
    pub upper: TypeValue,
    pub status: Status,
    pub witness: Option<WitnessView>,
}

impl From<&SliceSample> for SampleView {
    fn from(s: &SliceSample) -> Self {
        Self {
            index: s.index,
            seed: s.seed,
            forms: s.forms.iter().map(ToString::to_string).collect(),
            lower: s.estimate.lower.clone(),
            upper: s.estimate.upper.clone(),
            status: s.estimate.status,
            witness: s.estimate.witnesses.first().map(WitnessView::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seeds {
    pub master: u64,
    pub samples: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    /// `None` when the check is recorded but not asserted.
    pub holds: Option<bool>,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub invariant: String,
    pub q: Option<usize>,
    pub point: Option<Vec<String>>,
    pub estimate: Option<EstimateView>,
    pub witnesses: Vec<WitnessView>,
    pub samples: Vec<SampleView>,
    pub seeds: Seeds,
    pub lemma_checks: Vec<LemmaCheck>,
    pub config: ConfigView,
    /// Command-specific payload.
    pub result: serde_json::Value,
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(invariant: &str, config: &ConfigView) -> Self {
        Self {
            invariant: invariant.to_string(),
            q: None,
            point: None,
            estimate: None,
            witnesses: Vec::new(),
            samples: Vec::new(),
            seeds: Seeds {
                master: config.seed,
                samples: Vec::new(),
            },
            lemma_checks: Vec::new(),
            config: config.clone(),
            result: serde_json::Value::Null,
            notes: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn with_generic(mut self, r: &GenericValueReport) -> Self {
        self.q = Some(r.q);
        self.point = Some(r.point.iter().map(ToString::to_string).collect());
        self.estimate = Some(EstimateView::from_generic(r));
        self.witnesses = r
            .estimate
            .as_ref()
            .map(|e| e.witnesses.iter().map(WitnessView::from).collect())
            .unwrap_or_default();
        self.samples = r.samples.iter().map(SampleView::from).collect();
        self.seeds.samples = r.samples.iter().map(|s| s.seed).collect();
        self.notes.extend(r.notes.iter().cloned());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "invariant  {}", self.invariant);
        if let Some(q) = self.q {
            let _ = writeln!(out, "q          {q}");
        }
        if let Some(p) = &self.point {
            let _ = writeln!(out, "point      ({})", p.join(", "));
        }
        if let Some(e) = &self.estimate {
            if let Some(a) = &e.agreed_value {
                let _ = writeln!(out, "agreed     {a} ({} samples agree)", e.agreement_count.unwrap_or(0));
            }
            let _ = writeln!(out, "lower      {}", e.lower);
            let _ = writeln!(out, "upper      {}", e.upper);
            let _ = writeln!(out, "status     {}", e.status);
            if let Some(s) = &e.sampled_estimate {
                let _ = writeln!(out, "sampled    {s} (estimate, not a bound)");
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness    {}  ν(γ)={}  order={}  ratio={}", w.curve, w.nu, w.order, w.ratio);
        }
        if !self.samples.is_empty() {
            let _ = writeln!(out, "\n{:>3}  {:>20}  {:>6}  {:>6}  {:<10}  forms", "#", "seed", "lower", "upper", "status");
            for s in &self.samples {
                let _ = writeln!(
                    out,
                    "{:>3}  {:>20}  {:>6}  {:>6}  {:<10}  {}",
                    s.index,
                    s.seed,
                    s.lower.to_string(),
                    s.upper.to_string(),
                    s.status.to_string(),
                    s.forms.join("; ")
                );
            }
        }
        if let Some(rows) = self.result.get("rows").and_then(|r| r.as_array()) {
            let _ = writeln!(out);
            for row in rows {
                let cells: Vec<String> = row
                    .as_object()
                    .map(|o| o.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect())
                    .unwrap_or_default();
                let _ = writeln!(out, "  {}", cells.join("  "));
            }
        } else if !self.result.is_null() {
            let _ = writeln!(out, "\n{}", serde_json::to_string_pretty(&self.result).unwrap_or_default());
        }
        for c in &self.lemma_checks {
            let verdict = match c.holds {
                Some(true) => "holds",
                Some(false) => "FAILS",
                None => "recorded",
            };
            let _ = writeln!(out, "check      {}: {verdict}", c.name);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note       {n}");
        }
        out
    }
}

fn plain(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
