use serde::{Deserialize, Serialize};

use crate::curves::CurveGerm;
use crate::ideals::UpperMethod;
use crate::value::{Order, TypeValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "interval")]
    Interval,
    #[serde(rename = "lower-only")]
    LowerOnly,
}

impl Status {
    pub fn classify(lower: &TypeValue, upper: &TypeValue) -> Status {
        if lower == upper {
            Status::Exact
        } else if upper.is_finite() {
            Status::Interval
        } else {
            Status::LowerOnly
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::Interval => "interval",
            Status::LowerOnly => "lower-only",
        })
    }
}

/// A curve together with the order it achieves and the resulting ratio.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub curve: CurveGerm,
    pub order: Order,
    pub nu: u32,
    pub ratio: TypeValue,
}

impl Witness {
    pub fn new(curve: CurveGerm, order: Order) -> Self {
        let nu = curve.nu();
        Self {
            ratio: order.ratio(nu),
            curve,
            order,
            nu,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperCertificate {
    pub method: UpperMethod,
    /// Bound on the holomorphic (weighted) ideal type.
    pub value: u32,
}

/// Truncation-order verdict for an estimate computed from `r_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Stable { k: u32 },
    RaiseK { k: u32, suggested: u32 },
}

impl Verdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::Stable { .. })
    }
}

/// Certified lower bound, certified upper bound and witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEstimate {
    pub lower: TypeValue,
    pub upper: TypeValue,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub upper_certificate: Option<UpperCertificate>,
    /// `2·max_U` over sampled twists: an estimate, never a bound.
    pub sampled_estimate: Option<TypeValue>,
    pub truncation: Option<Verdict>,
    pub notes: Vec<String>,
}

impl TypeEstimate {
    pub fn new(lower: TypeValue, upper: TypeValue) -> Self {
        assert!(lower <= upper, "lower bound {lower} exceeds upper bound {upper}");
        Self {
            status: Status::classify(&lower, &upper),
            lower,
            upper,
            witnesses: Vec::new(),
            upper_certificate: None,
            sampled_estimate: None,
            truncation: None,
            notes: Vec::new(),
        }
    }

    pub fn exact_value(&self) -> Option<&TypeValue> {
        (self.status == Status::Exact).then_some(&self.lower)
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}
