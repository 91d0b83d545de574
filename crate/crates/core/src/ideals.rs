//! Holomorphic polynomial ideals at the origin: local multiplicity by
//! truncated linear algebra, membership, and certified upper bounds on the
//! ideal type.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::SparseVec;
use crate::algebra::{pullback_holo, Exponent, GaussianRational as GQ, HoloPoly, LinearSubspaceChart, Matrix, SparseEchelon};
use crate::curves::{holo_order_along, CurveGerm};
use crate::error::{Error, Result};
use crate::value::{Order, TypeValue};

pub const DEFAULT_MAX_MULT_DEGREE: u32 = 24;

/// A finitely generated ideal of holomorphic polynomials, centered at 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoloIdeal {
    n: usize,
    gens: Vec<HoloPoly>,
}

impl HoloIdeal {
    /// Zero generators are dropped and duplicates removed; an empty input
    /// list is rejected, while a list of zeros gives the zero ideal.
    pub fn new(n: usize, gens: Vec<HoloPoly>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut out: Vec<HoloPoly> = Vec::new();
        for g in gens {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.nvars(),
                });
            }
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Self { n, gens: out })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[HoloPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Some generator is a unit at the origin.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| !g.constant_term().is_zero())
    }

    /// Restriction to a linear slice through the origin.
    pub fn pullback(&self, chart: &LinearSubspaceChart) -> Result<HoloIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| pullback_holo(g, chart))
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            return Ok(HoloIdeal {
                n: chart.slice_dim(),
                gens,
            });
        }
        HoloIdeal::new(chart.slice_dim(), gens)
    }

    /// `min_j ν(φ_j∘γ)`; infinity for the zero ideal.
    pub fn order_along(&self, gamma: &CurveGerm) -> Result<Order> {
        if gamma.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: gamma.nvars(),
            });
        }
        Ok(self
            .gens
            .iter()
            .map(|g| holo_order_along(g, gamma))
            .min()
            .unwrap_or(Order::Infinity))
    }
}

/// `(I, w)`: generators of `I` followed by the forms `w`.
pub fn add_linear_forms(ideal: &HoloIdeal, forms: &[HoloPoly]) -> Result<HoloIdeal> {
    for (i, w) in forms.iter().enumerate() {
        if w.nvars() != ideal.n {
            return Err(Error::DimensionMismatch {
                expected: ideal.n,
                found: w.nvars(),
            });
        }
        if w.is_zero() || w.terms().keys().any(|e| e.degree() != 1) {
            return Err(Error::NotLinearForm(i));
        }
    }
    let mut gens = ideal.gens.clone();
    gens.extend(forms.iter().cloned());
    if gens.is_empty() {
        return Ok(ideal.clone());
    }
    HoloIdeal::new(ideal.n, gens)
}

/// Whether the homogeneous linear forms are linearly independent.
pub fn forms_independent(forms: &[HoloPoly]) -> bool {
    if forms.is_empty() {
        return true;
    }
    let rows: Vec<Vec<GQ>> = forms.iter().map(HoloPoly::linear_coeffs).collect();
    Matrix::from_rows(rows).rank() == forms.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultStatus {
    /// Some power of the maximal ideal lies in `I`; the value is exact.
    Certified,
    /// Every generator vanishes on an explicit curve; the value is infinite.
    CertifiedInfinite,
    /// The quotient kept growing linearly through the budget.
    NotZeroDimensionalSuspected,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityResult {
    pub value: Order,
    pub certified: bool,
    /// Degree `D` with every monomial of degree `D` in `I` (when certified finite).
    pub witness_degree: Option<u32>,
    pub status: MultStatus,
    /// `dim O/(I + m^D)` at the last degree examined; always a lower bound.
    pub lower_bound: u32,
}

fn monomial_index(n: usize, max_deg: u32) -> (Vec<Exponent>, HashMap<Exponent, usize>) {
    let monos = Exponent::all_up_to(n, max_deg);
    let index = monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    (monos, index)
}

fn row_of(p: &HoloPoly, index: &HashMap<Exponent, usize>, below: u32) -> SparseVec {
    p.terms()
        .iter()
        .filter(|(e, _)| e.degree() < below)
        .map(|(e, c)| (index[e], c.clone()))
        .collect()
}

/// Span of `{x^δ g}` modulo `m^D` inside polynomials of degree `< D`.
fn truncated_span(ideal: &HoloIdeal, d: u32, index: &HashMap<Exponent, usize>) -> SparseEchelon {
    let mut ech = SparseEchelon::new();
    for g in &ideal.gens {
        let o = g.order().unwrap_or(0);
        if o >= d {
            continue;
        }
        for delta in Exponent::all_up_to(ideal.n, d - 1 - o) {
            let row = row_of(&g.mul_monomial(&delta), index, d);
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    ech
}

/// Looks for a line `t ↦ t·v`, `v ∈ {-1,0,1}ⁿ`, on which every generator vanishes.
pub fn vanishing_line(ideal: &HoloIdeal) -> Option<CurveGerm> {
    let n = ideal.n;
    let total = 3usize.pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let v: Vec<GQ> = (0..n)
            .map(|_| {
                let digit = (c % 3) as i64 - 1;
                c /= 3;
                GQ::from_int(digit)
            })
            .collect();
        let comps = v.iter().map(|x| HoloPoly::monomial(1, Exponent(vec![1]), x.clone())).collect();
        let Ok(gamma) = CurveGerm::at_origin(comps) else { continue };
        if ideal.gens.iter().all(|g| holo_order_along(g, &gamma) == Order::Infinity) {
            return Some(gamma);
        }
    }
    None
}

/// `dim O/I` by sweeping `D = 1, 2, ...`; certified once `m^(D-1) ⊆ I + m^D`,
/// which by Nakayama gives `m^(D-1) ⊆ I`.
pub fn mult(ideal: &HoloIdeal, max_degree: u32) -> Result<MultiplicityResult> {
    if max_degree < 1 {
        return Err(Error::InvalidParameter("max_degree must be at least 1".into()));
    }
    if ideal.is_unit() {
        return Ok(MultiplicityResult {
            value: Order::Finite(0),
            certified: true,
            witness_degree: Some(0),
            status: MultStatus::Certified,
            lower_bound: 0,
        });
    }
    if let Some(_line) = vanishing_line(ideal) {
        return Ok(MultiplicityResult {
            value: Order::Infinity,
            certified: true,
            witness_degree: None,
            status: MultStatus::CertifiedInfinite,
            lower_bound: 0,
        });
    }
    let (monos, index) = monomial_index(ideal.n, max_degree);
    let mut codims: Vec<u32> = Vec::new();
    for d in 1..=max_degree {
        let ech = truncated_span(ideal, d, &index);
        let ncols = monos.iter().take_while(|e| e.degree() < d).count();
        let codim = (ncols - ech.rank()) as u32;
        codims.push(codim);
        let top_in = Exponent::all_of_degree(ideal.n, d - 1)
            .iter()
            .all(|e| ech.contains(SparseVec::from([(index[e], GQ::one())])));
        if top_in {
            return Ok(MultiplicityResult {
                value: Order::Finite(codim),
                certified: true,
                witness_degree: Some(d - 1),
                status: MultStatus::Certified,
                lower_bound: codim,
            });
        }
    }
    let last = *codims.last().unwrap();
    let k = codims.len();
    let growing = k >= 4 && {
        let inc: Vec<i64> = (k - 3..k).map(|i| codims[i] as i64 - codims[i - 1] as i64).collect();
        inc[0] > 0 && inc.iter().all(|&x| x == inc[0])
    };
    Ok(if growing {
        MultiplicityResult {
            value: Order::Infinity,
            certified: false,
            witness_degree: None,
            status: MultStatus::NotZeroDimensionalSuspected,
            lower_bound: last,
        }
    } else {
        MultiplicityResult {
            value: Order::Finite(last),
            certified: false,
            witness_degree: None,
            status: MultStatus::BudgetExhausted,
            lower_bound: last,
        }
    })
}

/// Whether `φ` lies in the span of `{x^δ g : deg(x^δ g) <= D}`.
pub fn membership_up_to(ideal: &HoloIdeal, phi: &HoloPoly, d: u32) -> bool {
    if phi.is_zero() {
        return true;
    }
    if phi.degree() > d {
        return false;
    }
    let (_, index) = monomial_index(ideal.n, d);
    let mut ech = SparseEchelon::new();
    for g in &ideal.gens {
        let dg = g.degree();
        if dg > d {
            continue;
        }
        for delta in Exponent::all_up_to(ideal.n, d - dg) {
            ech.insert(row_of(&g.mul_monomial(&delta), &index, d + 1));
        }
    }
    ech.contains(row_of(phi, &index, d + 1))
}

/// `Δ >= radicand^(1/index)`, kept as an integer inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBound {
    pub radicand: u32,
    pub index: u32,
}

impl RootBound {
    /// Whether `v^index >= radicand`; infinity always satisfies it.
    pub fn admits(&self, v: &TypeValue) -> bool {
        match v {
            TypeValue::Infinity => true,
            TypeValue::Finite(r) => {
                let num: BigInt = Pow::pow(r.numer(), self.index);
                let den: BigInt = Pow::pow(r.denom(), self.index);
                num >= den * BigInt::from(self.radicand)
            }
        }
    }

    /// Smallest integer `d` with `d^index >= radicand`.
    pub fn integer_floor(&self) -> u32 {
        if self.index == 0 {
            return 0;
        }
        (0..=self.radicand)
            .find(|&d| BigInt::from(d).pow(self.index) >= BigInt::from(self.radicand))
            .unwrap_or(self.radicand)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultChain {
    pub n: usize,
    pub q: usize,
    pub mult: MultiplicityResult,
    /// `Δ <= mult`, present when `mult` is certified finite.
    pub upper: Option<u32>,
    /// `Δ^(n-q) >= mult`, present when `mult` is certified finite.
    pub root: Option<RootBound>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub delta_le_mult: bool,
    pub mult_le_delta_pow: bool,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.delta_le_mult && self.mult_le_delta_pow
    }
}

impl MultChain {
    /// Tests `lower(Δ) <= mult` and `mult <= upper(Δ)^(n-q)`.
    pub fn check(&self, lower: &TypeValue, upper: &TypeValue) -> Option<ChainCheck> {
        let m = self.upper?;
        let root = self.root.as_ref()?;
        Some(ChainCheck {
            delta_le_mult: *lower <= TypeValue::int(m as i64),
            mult_le_delta_pow: root.admits(upper),
        })
    }
}

/// The multiplicity chain, available only when `I` has `q_forms`
/// independent linear generators.
pub fn mult_chain(ideal: &HoloIdeal, q_forms: usize, max_degree: u32) -> Result<MultChain> {
    let linear: Vec<Vec<GQ>> = ideal
        .gens
        .iter()
        .filter(|g| g.degree() == 1 && g.constant_term().is_zero())
        .map(HoloPoly::linear_coeffs)
        .collect();
    let rank = if linear.is_empty() { 0 } else { Matrix::from_rows(linear).rank() };
    if rank < q_forms || q_forms > ideal.n {
        return Err(Error::InvalidParameter(format!(
            "ideal has {rank} independent linear generators, {q_forms} required"
        )));
    }
    let m = mult(ideal, max_degree)?;
    let (upper, root) = match (m.certified, m.value) {
        (true, Order::Finite(v)) => (
            Some(v),
            Some(RootBound {
                radicand: v,
                index: (ideal.n - q_forms) as u32,
            }),
        ),
        _ => (None, None),
    };
    Ok(MultChain {
        n: ideal.n,
        q: q_forms,
        mult: m,
        upper,
        root,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperMethod {
    /// A generator is a unit: every order is zero.
    Unit,
    /// Initial forms of low-order generators have no common nonzero zero.
    InitialForms,
    /// A power of the maximal ideal lies in the ideal.
    WitnessDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeUpper {
    pub value: u32,
    pub method: UpperMethod,
}

/// Whether homogeneous forms have only the trivial common zero, decided by
/// checking that some degree is filled by the forms' multiples.
pub fn forms_isolated(n: usize, forms: &[HoloPoly], max_degree: u32) -> bool {
    if forms.len() < n || n == 0 {
        return n == 0;
    }
    let mut degs: Vec<u32> = forms.iter().map(HoloPoly::degree).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let reg: u32 = degs[..n].iter().sum::<u32>() + 1 - n as u32;
    let top = reg.min(max_degree.max(degs[0]));
    for d in degs[n - 1]..=top {
        let cols = Exponent::all_of_degree(n, d);
        let index: HashMap<Exponent, usize> = cols.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut ech = SparseEchelon::new();
        for f in forms {
            let df = f.degree();
            if df > d {
                continue;
            }
            for delta in Exponent::all_of_degree(n, d - df) {
                let row: SparseVec = f
                    .mul_monomial(&delta)
                    .terms()
                    .iter()
                    .map(|(e, c)| (index[e], c.clone()))
                    .collect();
                ech.insert(row);
                if ech.rank() == cols.len() {
                    return true;
                }
            }
        }
    }
    false
}

/// Certified upper bound on `sup_γ min_j w_j·ν(φ_j∘γ)/ν(γ)`.
///
/// Initial-form test: if the initial forms of the generators with
/// `w_j·ord(φ_j) <= d` have no common nonzero zero, the leading coefficient
/// of any curve misses one of them, so the ratio is at most `d`.
/// Witness test: `m^D ⊆ (φ_j)` bounds the ratio by `max_j w_j · D`.
pub fn weighted_type_upper(n: usize, gens: &[(HoloPoly, u32)], max_degree: u32) -> Result<Option<TypeUpper>> {
    let gens: Vec<&(HoloPoly, u32)> = gens.iter().filter(|(g, _)| !g.is_zero()).collect();
    if gens.iter().any(|(g, _)| !g.constant_term().is_zero()) {
        return Ok(Some(TypeUpper {
            value: 0,
            method: UpperMethod::Unit,
        }));
    }
    if gens.is_empty() {
        return Ok(None);
    }
    let mut best: Option<TypeUpper> = None;
    let mut thresholds: Vec<u32> = gens.iter().map(|(g, w)| w * g.order().unwrap()).collect();
    thresholds.sort_unstable();
    thresholds.dedup();
    for d in thresholds {
        let forms: Vec<HoloPoly> = gens
            .iter()
            .filter(|(g, w)| w * g.order().unwrap() <= d)
            .map(|(g, _)| g.initial_form())
            .collect();
        if forms_isolated(n, &forms, max_degree) {
            best = Some(TypeUpper {
                value: d,
                method: UpperMethod::InitialForms,
            });
            break;
        }
    }
    let ideal = HoloIdeal::new(n, gens.iter().map(|(g, _)| g.clone()).collect())?;
    let m = mult(&ideal, max_degree)?;
    if let (true, Some(w)) = (m.certified, m.witness_degree) {
        let wmax = gens.iter().map(|(_, w)| *w).max().unwrap_or(1);
        let v = wmax * w;
        if best.as_ref().is_none_or(|b| v < b.value) {
            best = Some(TypeUpper {
                value: v,
                method: UpperMethod::WitnessDegree,
            });
        }
    }
    Ok(best)
}

/// Unweighted certified upper bound on `Δ(I)`.
pub fn ideal_type_upper(ideal: &HoloIdeal, max_degree: u32) -> Result<Option<TypeUpper>> {
    if ideal.is_zero() {
        return Ok(None);
    }
    let gens: Vec<(HoloPoly, u32)> = ideal.gens.iter().map(|g| (g.clone(), 1)).collect();
    weighted_type_upper(ideal.n, &gens, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::holo_from_text;
    use crate::rng;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn ideal(n: usize, gens: &[&str]) -> HoloIdeal {
        HoloIdeal::new(n, gens.iter().map(|s| holo_from_text(s, n).unwrap()).collect()).unwrap()
    }

    fn mult_value(i: &HoloIdeal) -> u32 {
        let r = mult(i, 60).unwrap();
        assert!(r.certified, "{i:?}: {r:?}");
        r.value.finite().unwrap()
    }

    #[test]
    fn fixture_multiplicities() {
        assert_eq!(mult_value(&ideal(2, &["z1^2", "z2^3"])), 6);
        assert_eq!(mult_value(&ideal(2, &["z1", "z2"])), 1);
        assert_eq!(mult_value(&ideal(2, &["z1^2", "z2^2 + z1*z2"])), 4);
        assert_eq!(mult_value(&ideal(3, &["z1", "z2^3", "z3^3"])), 9);
        // a = b = c = 1: (z2^2, z3^2 + z2*z3) in the (z2, z3) plane.
        assert_eq!(mult_value(&ideal(2, &["z1^2", "z2^2 + z1*z2"])), 4);
        assert_eq!(mult_value(&ideal(3, &["z1^2 - z2*z3", "z2^2", "z1 + z2 + z3"])), 4);
        assert_eq!(mult_value(&ideal(2, &["1 + z1", "z2"])), 0);
    }

    #[test]
    fn infinite_multiplicity_is_certified_by_a_line() {
        let r = mult(&ideal(2, &["z1^2"]), 10).unwrap();
        assert_eq!(r.value, Order::Infinity);
        assert!(r.certified);
        let r = mult(&ideal(2, &["z1^2 - z2^3"]), 8).unwrap();
        assert!(!r.certified);
        assert_eq!(r.status, MultStatus::NotZeroDimensionalSuspected);
    }

    #[test]
    fn membership_examples() {
        assert!(membership_up_to(&ideal(1, &["z1^2"]), &holo_from_text("z1^3", 1).unwrap(), 3));
        assert!(!membership_up_to(&ideal(2, &["z1"]), &holo_from_text("z2", 2).unwrap(), 5));
        let i = ideal(2, &["z1^2", "z2^2 + z1*z2"]);
        assert!(membership_up_to(&i, &holo_from_text("z2^3", 2).unwrap(), 4));
    }

    #[test]
    fn linear_forms_added_or_pulled_back_agree() {
        let i = ideal(2, &["z1^2"]);
        let w = holo_from_text("z2", 2).unwrap();
        assert_eq!(mult_value(&add_linear_forms(&i, &[w]).unwrap()), 2);
        let i = ideal(2, &["z1^2", "z2^3"]);
        assert_eq!(add_linear_forms(&i, &[]).unwrap(), i);

        let base = ideal(4, &["z1^2 - z2*z3", "z2^2", "z4"]);
        let w = holo_from_text("z1 + 2*z2 - z3 + 3*z4", 4).unwrap();
        let chart = LinearSubspaceChart::from_forms(4, vec![w.clone()]).unwrap();
        let via_chart = mult_value(&base.pullback(&chart).unwrap());
        let via_forms = mult_value(&add_linear_forms(&base, &[w]).unwrap());
        assert_eq!(via_chart, via_forms);
    }

    #[test]
    fn chain_fixtures() {
        let b = mult_chain(&ideal(2, &["z1", "z2^2"]), 1, 24).unwrap();
        assert_eq!(b.upper, Some(2));
        assert_eq!(b.root.as_ref().unwrap().integer_floor(), 2);
        let b = mult_chain(&ideal(3, &["z1", "z2^3", "z3^3"]), 1, 24).unwrap();
        assert_eq!(b.upper, Some(9));
        assert_eq!(b.root.as_ref().unwrap().integer_floor(), 3);
        assert!(b.check(&TypeValue::int(3), &TypeValue::int(3)).unwrap().holds());
        assert!(!b.check(&TypeValue::int(3), &TypeValue::int(2)).unwrap().holds());
        assert!(mult_chain(&ideal(2, &["z1^2", "z2^2"]), 1, 24).is_err());
        let b = mult_chain(&ideal(3, &["z1", "z2", "z3"]), 3, 24).unwrap();
        assert_eq!(b.upper, Some(1));
    }

    #[test]
    fn type_upper_certificates() {
        let u = ideal_type_upper(&ideal(3, &["z1 + z2 + z3", "z1^2 - z2*z3", "z2^2"]), 24).unwrap().unwrap();
        assert_eq!((u.value, u.method), (2, UpperMethod::InitialForms));
        let u = ideal_type_upper(&ideal(3, &["z1", "z2^3", "z3^3"]), 24).unwrap().unwrap();
        assert_eq!(u.value, 3);
        // Curve (t^2, t) has ratio 4, matching the initial-form bound.
        let u = ideal_type_upper(&ideal(2, &["z1 - z2^2", "z2^4"]), 24).unwrap().unwrap();
        assert_eq!((u.value, u.method), (4, UpperMethod::InitialForms));
        // Initial forms z1^2 and z2^2 meet only at the origin.
        let u = ideal_type_upper(&ideal(2, &["z1^2 - z2^3", "z2^2 - z1^3"]), 24).unwrap().unwrap();
        assert_eq!((u.value, u.method), (2, UpperMethod::InitialForms));
        let w = weighted_type_upper(2, &[(holo_from_text("z2", 2).unwrap(), 1), (holo_from_text("z1^2", 2).unwrap(), 2)], 24)
            .unwrap()
            .unwrap();
        assert_eq!(w.value, 4);
    }

    /// Staircase oracle: monomials not divisible by any generator exponent.
    fn staircase_count(n: usize, gens: &[Vec<u32>], cap: u32) -> Option<u32> {
        let mut count = 0u32;
        for e in Exponent::all_up_to(n, cap) {
            if !gens.iter().any(|g| g.iter().zip(&e.0).all(|(a, b)| a <= b)) {
                count += 1;
                if e.degree() == cap {
                    return None;
                }
            }
        }
        Some(count)
    }

    fn monomial_ideal(n: usize, gens: &[Vec<u32>]) -> HoloIdeal {
        HoloIdeal::new(n, gens.iter().map(|g| HoloPoly::monomial(n, Exponent(g.clone()), GQ::one())).collect()).unwrap()
    }

    #[test]
    fn monomial_staircases_one_and_two_variables() {
        for a in 1..=50u32 {
            assert_eq!(mult_value(&monomial_ideal(1, &[vec![a]])), a);
        }
        // Every staircase of size <= 10 in two variables, from partitions.
        fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if n == 0 {
                out.push(prefix.clone());
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                partitions(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut seen = 0;
        for size in 1..=10 {
            let mut parts = Vec::new();
            partitions(size, size, &mut Vec::new(), &mut parts);
            for lam in parts {
                // Row i has lam[i] boxes; minimal generators are the outer corners.
                let mut gens = vec![vec![0, lam.len() as u32]];
                for (i, &l) in lam.iter().enumerate() {
                    if i == 0 || l < lam[i - 1] {
                        gens.push(vec![l, i as u32]);
                    }
                }
                let oracle = staircase_count(2, &gens, 60).unwrap();
                assert_eq!(oracle, size);
                assert_eq!(mult_value(&monomial_ideal(2, &gens)), oracle);
                seen += 1;
            }
        }
        assert_eq!(seen, 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22 + 30 + 42);
    }

    #[test]
    fn monomial_staircases_three_variables() {
        for a in 1..=50u32 {
            for b in 1..=50 / a {
                for c in 1..=50 / (a * b) {
                    let gens = vec![vec![a, 0, 0], vec![0, b, 0], vec![0, 0, c]];
                    let oracle = staircase_count(3, &gens, 60).unwrap();
                    assert_eq!(oracle, a * b * c);
                    if a + b + c <= 20 {
                        assert_eq!(mult_value(&monomial_ideal(3, &gens)), oracle);
                    }
                }
            }
        }
        let mut r = rng::rng_from_seed(11);
        let mut checked = BTreeSet::new();
        use rand::Rng;
        while checked.len() < 60 {
            let mut gens: Vec<Vec<u32>> = (0..3).map(|i| {
                let mut e = vec![0; 3];
                e[i] = r.random_range(1..=5);
                e
            }).collect();
            for _ in 0..r.random_range(0..4) {
                gens.push((0..3).map(|_| r.random_range(0..=3)).collect());
            }
            let Some(oracle) = staircase_count(3, &gens, 40) else { continue };
            if oracle > 50 || !checked.insert(gens.clone()) {
                continue;
            }
            assert_eq!(mult_value(&monomial_ideal(3, &gens)), oracle, "{gens:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn mult_invariant_under_linear_change(seed in any::<u64>()) {
            let mut r = rng::rng_from_seed(seed);
            let a = rng::gl_matrix(&mut r, 2, 2);
            let i = ideal(2, &["z1^2", "z2^2 + z1*z2"]);
            let images: Vec<HoloPoly> = (0..2).map(|k| HoloPoly::linear(a.row(k))).collect();
            let j = HoloIdeal::new(2, i.gens().iter().map(|g| g.compose(&images)).collect()).unwrap();
            prop_assert_eq!(mult_value(&j), 4);
        }

        #[test]
        fn adding_a_generator_never_increases_mult(k in 0usize..6) {
            let extras = ["z1*z2", "z2^2", "z1 + z2^2", "z1^2", "z2^3 - z1", "z1*z2^2"];
            let i = ideal(2, &["z1^3", "z2^4"]);
            let mut gens = i.gens().to_vec();
            gens.push(holo_from_text(extras[k], 2).unwrap());
            let j = HoloIdeal::new(2, gens).unwrap();
            prop_assert!(mult_value(&j) <= mult_value(&i));
        }

        #[test]
        fn special_fibre_dominates(c in 1i64..5) {
            // (z1^2 + s*z2, z2^2) at s = 0 vs s = c.
            let special = ideal(2, &["z1^2", "z2^2"]);
            let generic = HoloIdeal::new(2, vec![
                holo_from_text(&format!("z1^2 + {c}*z2"), 2).unwrap(),
                holo_from_text("z2^2", 2).unwrap(),
            ]).unwrap();
            prop_assert!(mult_value(&special) >= mult_value(&generic));
        }
    }
}
