//! Checks of the truncation, sandwich and local-boundedness relations on
//! computed estimates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::serde_util::ratio_string;
use crate::value::TypeValue;

use super::estimate::{Status, TypeEstimate, Verdict};

/// Stable when `upper < k`, or when the truncation is the identity
/// (`k >= deg`) and the estimate is finite; otherwise suggests a larger `k`.
pub fn truncation_stability(estimate: &TypeEstimate, k: u32, model_degree: u32) -> Verdict {
    let below_k = estimate.upper < TypeValue::int(k as i64);
    let identity = k >= model_degree && estimate.upper.is_finite();
    if below_k || identity {
        return Verdict::Stable { k };
    }
    let basis = if estimate.upper.is_finite() { &estimate.upper } else { &estimate.lower };
    let suggested = match basis {
        TypeValue::Finite(v) => {
            let c = v.ceil().to_integer();
            u32::try_from(c).unwrap_or(u32::MAX / 2).saturating_mul(2).saturating_add(1)
        }
        TypeValue::Infinity => k.saturating_mul(2).saturating_add(1),
    };
    Verdict::RaiseK {
        k,
        suggested: suggested.max(k + 1),
    }
}

/// `(A, B)` with `A = (n-q+1)² + n-q+2` and `B = (n-q+1)²`.
pub fn bound_exponents(n: usize, q: usize) -> (u32, u32) {
    let m = (n - q + 1) as u32;
    (m * m + m + 1, m * m)
}

/// `2^A · d^B` exactly.
pub fn local_bound(n: usize, q: usize, d: &BigRational) -> BigRational {
    let (a, b) = bound_exponents(n, q);
    let two = BigRational::from_integer(BigInt::from(2));
    Pow::pow(&two, a) * Pow::pow(d, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub n: usize,
    pub q: usize,
    pub exponent_two: u32,
    pub exponent_base: u32,
    /// Value at the base point used in the bound (its upper estimate).
    pub base_value: TypeValue,
    /// `2^A · base^B`, absent when the base value is infinite.
    pub bound: Option<String>,
    pub observed: TypeValue,
    /// `bound - observed` when both are finite.
    pub slack: Option<String>,
    pub vacuous: bool,
    pub holds: bool,
}

/// Checks `lower(D_q(p)) <= 2^A · upper(D_q(p0))^B`.
pub fn bound_check(p0: &TypeEstimate, p: &TypeEstimate, n: usize, q: usize) -> BoundCheck {
    bound_check_values(&p0.upper, &p.lower, n, q)
}

pub fn bound_check_values(base: &TypeValue, observed: &TypeValue, n: usize, q: usize) -> BoundCheck {
    let (a, b) = bound_exponents(n, q);
    let mut out = BoundCheck {
        n,
        q,
        exponent_two: a,
        exponent_base: b,
        base_value: base.clone(),
        bound: None,
        observed: observed.clone(),
        slack: None,
        vacuous: true,
        holds: true,
    };
    if let TypeValue::Finite(d) = base {
        let bound = local_bound(n, q, d);
        out.vacuous = false;
        out.bound = Some(ratio_string(&bound));
        match observed {
            TypeValue::Finite(v) => {
                out.holds = v <= &bound;
                out.slack = Some(ratio_string(&(&bound - v)));
            }
            TypeValue::Infinity => out.holds = false,
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichEntry {
    pub label: String,
    pub lower: TypeValue,
    pub status: Status,
    /// `lower <= D_q upper`, asserted only when the upper is certified.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub dq_upper: TypeValue,
    pub dq_lower: TypeValue,
    pub entries: Vec<SandwichEntry>,
    /// Largest sampled lower bound; only a lower estimate of the supremum.
    pub sampled_sup: TypeValue,
    /// `D_q lower <= 2·sampled_sup^(n-q+1)`: recorded, not asserted.
    pub dq_vs_twice_power: Option<bool>,
    /// `Δ_q lower <= 2·sampled_sup`: recorded, not asserted.
    pub delta_vs_twice_sup: Option<bool>,
    pub asserted: bool,
    pub holds: bool,
}

/// `sup_U Δ_q(I(U)) <= D_q(M_k)` on certified data, plus the recorded
/// upper-side relations.
pub fn sandwich_check(
    dq: &TypeEstimate,
    delta_q: Option<&TypeEstimate>,
    n: usize,
    q: usize,
    twisted: &[(String, TypeEstimate)],
) -> SandwichReport {
    let certified = dq.upper.is_finite();
    let entries: Vec<SandwichEntry> = twisted
        .iter()
        .map(|(label, e)| SandwichEntry {
            label: label.clone(),
            lower: e.lower.clone(),
            status: e.status,
            holds: certified.then(|| e.lower <= dq.upper),
        })
        .collect();
    let sampled_sup = twisted
        .iter()
        .map(|(_, e)| e.lower.clone())
        .max()
        .unwrap_or(TypeValue::int(0));
    let twice = sampled_sup.scale(&BigRational::from_integer(BigInt::from(2)));
    let dq_vs_twice_power = match &sampled_sup {
        TypeValue::Finite(s) if !twisted.is_empty() => {
            let m = (n - q + 1) as u32;
            let rhs = TypeValue::Finite(Pow::pow(s, m) * BigRational::from_integer(BigInt::from(2)));
            Some(dq.lower <= rhs)
        }
        _ => None,
    };
    let delta_vs_twice_sup = delta_q.filter(|_| !twisted.is_empty()).map(|d| d.lower <= twice);
    let holds = entries.iter().all(|e| e.holds != Some(false));
    SandwichReport {
        dq_upper: dq.upper.clone(),
        dq_lower: dq.lower.clone(),
        entries,
        sampled_sup,
        dq_vs_twice_power,
        delta_vs_twice_sup,
        asserted: certified && !twisted.is_empty(),
        holds,
    }
}
