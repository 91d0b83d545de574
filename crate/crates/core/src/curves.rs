//! Holomorphic curve germs and orders of vanishing along them.
//!
//! A germ is stored as its displacement `γ(t) - p`: `n` polynomials in `t`
//! with zero constant term. Orders are computed by expanding the composite
//! in `(t, t̄)` up to a degree bound that doubles until a nonzero coefficient
//! appears or the bound reaches the exact degree of the composite.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::parse::{scalar_from_text, split_top_level, univariate_from_text};
use crate::algebra::{translate, Exponent, GaussianRational as GQ, HermPoly, HoloPoly, Matrix};
use crate::error::{Error, Result};
use crate::value::Order;

/// A non-constant curve germ `t ↦ base + components(t)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CurveGerm {
    base: Vec<GQ>,
    components: Vec<HoloPoly>,
}

impl CurveGerm {
    /// Components are one-variable polynomials with zero constant term.
    pub fn new(base: Vec<GQ>, components: Vec<HoloPoly>) -> Result<Self> {
        if base.len() != components.len() {
            return Err(Error::DimensionMismatch {
                expected: components.len(),
                found: base.len(),
            });
        }
        for c in &components {
            if c.nvars() != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    found: c.nvars(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(Error::ConstantCurve);
            }
        }
        if components.iter().all(HoloPoly::is_zero) {
            return Err(Error::ConstantCurve);
        }
        Ok(Self { base, components })
    }

    pub fn at_origin(components: Vec<HoloPoly>) -> Result<Self> {
        let base = vec![GQ::zero(); components.len()];
        Self::new(base, components)
    }

    /// Curve given by dense coefficient lists: `coeffs[i][k]` multiplies `t^(k+1)`.
    pub fn from_coeffs(base: Vec<GQ>, coeffs: &[Vec<GQ>]) -> Result<Self> {
        let comps = coeffs.iter().map(|c| poly_from_dense(c, 1)).collect();
        Self::new(base, comps)
    }

    /// Parses `"(t, -t, 0, 0)"`; the base point defaults to the origin.
    pub fn from_text(src: &str, base: Option<Vec<GQ>>) -> Result<Self> {
        let trimmed = src.trim();
        let (inner, off) = match trimmed.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            Some(inner) => (inner, src.find('(').unwrap_or(0) + 1),
            None => (trimmed, src.len() - src.trim_start().len()),
        };
        let mut comps = Vec::new();
        for (pos, part) in split_top_level(inner) {
            let p = univariate_from_text(part).map_err(|e| match e {
                Error::Parse { pos: p, msg } => Error::Parse {
                    pos: p + pos + off,
                    msg,
                },
                other => other,
            })?;
            comps.push(p);
        }
        match base {
            Some(b) => Self::new(b, comps),
            None => Self::at_origin(comps),
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn base(&self) -> &[GQ] {
        &self.base
    }

    pub fn components(&self) -> &[HoloPoly] {
        &self.components
    }

    pub fn with_base(&self, base: Vec<GQ>) -> Result<Self> {
        Self::new(base, self.components.clone())
    }

    /// `ν(γ)`: the lowest power of `t` over all components.
    pub fn nu(&self) -> u32 {
        self.components
            .iter()
            .filter_map(HoloPoly::order)
            .min()
            .expect("curve germ is non-constant")
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(HoloPoly::degree).max().unwrap_or(0)
    }

    /// Dense coefficients of component `i`, index `k` holding `t^k`.
    pub fn dense(&self, i: usize) -> Vec<GQ> {
        dense_of(&self.components[i])
    }

    /// `γ(t·u(t))` for a unit `u` (`u(0) != 0`).
    pub fn reparametrize(&self, u: &HoloPoly) -> Result<Self> {
        if u.nvars() != 1 || u.constant_term().is_zero() {
            return Err(Error::InvalidParameter("reparametrization needs a unit u(t) with u(0) != 0".into()));
        }
        let s = u.mul_monomial(&Exponent(vec![1]));
        self.substitute(&s)
    }

    /// `γ(t^m)`.
    pub fn precompose_power(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("power must be positive".into()));
        }
        self.substitute(&HoloPoly::monomial(1, Exponent(vec![m]), GQ::one()))
    }

    fn substitute(&self, s: &HoloPoly) -> Result<Self> {
        let comps = self.components.iter().map(|c| c.compose(std::slice::from_ref(s))).collect();
        Self::new(self.base.clone(), comps)
    }

    /// The image `A·(γ - p)` based at `base`, for an `m × n` matrix `A`.
    pub fn map_linear(&self, a: &Matrix, base: Vec<GQ>) -> Result<Self> {
        if a.ncols() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: a.ncols(),
            });
        }
        let comps = (0..a.nrows())
            .map(|i| {
                let mut acc = HoloPoly::zero(1);
                for (j, c) in self.components.iter().enumerate() {
                    if !a[(i, j)].is_zero() {
                        acc = acc.add(&c.scale(&a[(i, j)]));
                    }
                }
                acc
            })
            .collect();
        Self::new(base, comps)
    }

    /// Key used to break ties between witnesses of equal ratio.
    pub fn tie_key(&self) -> (u32, u32, Vec<(u32, usize, GQ)>) {
        let mut coeffs = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            for (e, v) in c.terms() {
                coeffs.push((e.0[0], i, v.clone()));
            }
        }
        (self.nu(), self.degree(), coeffs)
    }

    /// Compares tie keys; scalars compare by modulus, then positive first.
    pub fn tie_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a0, a1, a2) = self.tie_key();
        let (b0, b1, b2) = other.tie_key();
        a0.cmp(&b0).then(a1.cmp(&b1)).then_with(|| {
            for (x, y) in a2.iter().zip(&b2) {
                let o = x.0.cmp(&y.0).then(x.1.cmp(&y.1)).then_with(|| x.2.norm_sqr().cmp(&y.2.norm_sqr()))
                    .then_with(|| y.2.lex_cmp(&x.2));
                if o.is_ne() {
                    return o;
                }
            }
            a2.len().cmp(&b2.len())
        })
    }

    pub fn component_text(&self, i: usize) -> String {
        self.components[i].to_string().replace("z1", "t")
    }
}

impl fmt::Display for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.nvars()).map(|i| self.component_text(i)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveGerm{self}@{:?}", self.base)
    }
}

#[derive(Serialize, Deserialize)]
struct CurveRecord {
    components: Vec<String>,
    base: Vec<String>,
}

impl Serialize for CurveGerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRecord {
            components: (0..self.nvars()).map(|i| self.component_text(i)).collect(),
            base: self.base.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveGerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = CurveRecord::deserialize(d)?;
        let comps = rec
            .components
            .iter()
            .map(|s| univariate_from_text(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let base = rec
            .base
            .iter()
            .map(|s| scalar_from_text(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CurveGerm::new(base, comps).map_err(D::Error::custom)
    }
}

/// A real polynomial together with the point it is centered at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermGerm {
    center: Vec<GQ>,
    local: HermPoly,
}

impl HermGerm {
    /// Recenters `r` (given in ambient coordinates) at `p`.
    pub fn at(r: &HermPoly, p: &[GQ]) -> Result<Self> {
        Ok(Self {
            center: p.to_vec(),
            local: translate(r, p)?,
        })
    }

    pub fn origin(r: HermPoly) -> Self {
        Self {
            center: vec![GQ::zero(); r.nvars()],
            local: r,
        }
    }

    pub fn center(&self) -> &[GQ] {
        &self.center
    }

    pub fn local(&self) -> &HermPoly {
        &self.local
    }
}

/// `ν(γ)`.
pub fn nu_curve(gamma: &CurveGerm) -> u32 {
    gamma.nu()
}

fn check_dim(n: usize, gamma: &CurveGerm) -> Result<()> {
    if n != gamma.nvars() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: gamma.nvars(),
        });
    }
    Ok(())
}

/// `ν(r∘γ)` for `r` written in coordinates centered at `γ.base`.
pub fn nu_along(r: &HermPoly, gamma: &CurveGerm) -> Result<Order> {
    check_dim(r.nvars(), gamma)?;
    Ok(order_along(r, gamma))
}

/// `ν(r∘γ)` for a centered germ; the center must be the curve's base point.
pub fn nu_along_germ(r: &HermGerm, gamma: &CurveGerm) -> Result<Order> {
    check_dim(r.local.nvars(), gamma)?;
    if r.center != gamma.base {
        return Err(Error::BasePointMismatch);
    }
    Ok(order_along(&r.local, gamma))
}

/// `min_i ν(r_i∘γ)`, which is the order of the whole ideal along `γ`.
pub fn ideal_nu_along(gens: &[HermPoly], gamma: &CurveGerm) -> Result<Order> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut best = Order::Infinity;
    for r in gens {
        best = best.min(nu_along(r, gamma)?);
    }
    Ok(best)
}

/// Germ variant of [`ideal_nu_along`]; all centers must equal the base point.
pub fn ideal_nu_along_germs(gens: &[HermGerm], gamma: &CurveGerm) -> Result<Order> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut best = Order::Infinity;
    for r in gens {
        best = best.min(nu_along_germ(r, gamma)?);
    }
    Ok(best)
}

/// `ν(φ∘γ)` for a holomorphic `φ` centered at `γ.base`.
pub fn holo_nu_along(phi: &HoloPoly, gamma: &CurveGerm) -> Result<Order> {
    check_dim(phi.nvars(), gamma)?;
    Ok(holo_order_along(phi, gamma))
}

pub(crate) fn dense_of(p: &HoloPoly) -> Vec<GQ> {
    let mut out = vec![GQ::zero(); p.degree() as usize + 1];
    for (e, c) in p.terms() {
        out[e.0[0] as usize] = c.clone();
    }
    out
}

pub(crate) fn poly_from_dense(c: &[GQ], shift: u32) -> HoloPoly {
    HoloPoly::from_terms(
        1,
        c.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (Exponent(vec![k as u32 + shift]), v.clone())),
    )
}

fn mul_dense_trunc(a: &[GQ], b: &[GQ], bound: usize) -> Vec<GQ> {
    let len = (a.len() + b.len()).saturating_sub(1).min(bound + 1);
    let mut out = vec![GQ::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if i >= len || x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// Truncated powers of the curve components, shared across monomials.
struct CurvePowers {
    comps: Vec<Vec<GQ>>,
    bound: usize,
    powers: Vec<Vec<Vec<GQ>>>,
    monos: std::collections::HashMap<Exponent, Vec<GQ>>,
}

impl CurvePowers {
    fn new(gamma: &CurveGerm, bound: usize) -> Self {
        let comps: Vec<Vec<GQ>> = (0..gamma.nvars()).map(|i| gamma.dense(i)).collect();
        let powers = comps.iter().map(|_| vec![vec![GQ::one()]]).collect();
        Self {
            comps,
            bound,
            powers,
            monos: Default::default(),
        }
    }

    fn power(&mut self, i: usize, k: u32) -> Vec<GQ> {
        while self.powers[i].len() <= k as usize {
            let next = mul_dense_trunc(self.powers[i].last().unwrap(), &self.comps[i], self.bound);
            self.powers[i].push(next);
        }
        self.powers[i][k as usize].clone()
    }

    fn monomial(&mut self, e: &Exponent) -> Vec<GQ> {
        if let Some(v) = self.monos.get(e) {
            return v.clone();
        }
        let mut acc = vec![GQ::one()];
        for (i, &k) in e.0.iter().enumerate() {
            if k > 0 {
                let p = self.power(i, k);
                acc = mul_dense_trunc(&acc, &p, self.bound);
            }
        }
        self.monos.insert(e.clone(), acc.clone());
        acc
    }
}

fn initial_bound(lowest: u32, full: u32) -> u32 {
    (2 * lowest).max(8).min(full)
}

/// `ν(r∘γ)` with no dimension check; `r` is centered at the base point.
pub(crate) fn order_along(r: &HermPoly, gamma: &CurveGerm) -> Order {
    if r.is_zero() {
        return Order::Infinity;
    }
    let nu = gamma.nu();
    let full = r.degree() * gamma.degree();
    let lowest = r.order().unwrap_or(0) * nu;
    let mut bound = initial_bound(lowest, full);
    loop {
        if let Some(v) = order_truncated(r, gamma, nu, bound) {
            return Order::Finite(v);
        }
        if bound >= full {
            return Order::Infinity;
        }
        bound = (bound * 2).min(full);
    }
}

/// Lowest total degree `<= bound` of a nonzero `t^a t̄^b` coefficient.
fn order_truncated(r: &HermPoly, gamma: &CurveGerm, nu: u32, bound: u32) -> Option<u32> {
    let b = bound as usize;
    let mut pw = CurvePowers::new(gamma, b);
    let mut grid = vec![GQ::zero(); (b + 1) * (b + 1)];
    for (be, c) in r.terms() {
        if be.degree() * nu > bound {
            continue;
        }
        let pa = pw.monomial(&be.alpha);
        let pb = pw.monomial(&be.beta);
        for (i, x) in pa.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let cx = c * x;
            for (j, y) in pb.iter().enumerate() {
                if i + j > b {
                    break;
                }
                if !y.is_zero() {
                    grid[i * (b + 1) + j] += &(&cx * &y.conj());
                }
            }
        }
    }
    (0..=b).find(|&s| (0..=s).any(|i| !grid[i * (b + 1) + (s - i)].is_zero())).map(|s| s as u32)
}

/// `ν(φ∘γ)` with no dimension check.
pub(crate) fn holo_order_along(phi: &HoloPoly, gamma: &CurveGerm) -> Order {
    if phi.is_zero() {
        return Order::Infinity;
    }
    let nu = gamma.nu();
    let full = phi.degree() * gamma.degree();
    let lowest = phi.order().unwrap_or(0) * nu;
    let mut bound = initial_bound(lowest, full);
    loop {
        let v = holo_compose_trunc(phi, gamma, bound);
        if let Some(k) = v.iter().position(|c| !c.is_zero()) {
            return Order::Finite(k as u32);
        }
        if bound >= full {
            return Order::Infinity;
        }
        bound = (bound * 2).min(full);
    }
}

/// Dense coefficients of `φ∘γ` up to `t^bound`.
pub(crate) fn holo_compose_trunc(phi: &HoloPoly, gamma: &CurveGerm, bound: u32) -> Vec<GQ> {
    let b = bound as usize;
    let nu = gamma.nu();
    let mut pw = CurvePowers::new(gamma, b);
    let mut out = vec![GQ::zero(); b + 1];
    for (e, c) in phi.terms() {
        if e.degree() * nu > bound {
            continue;
        }
        for (k, x) in pw.monomial(e).iter().enumerate() {
            if !x.is_zero() {
                out[k] += &(c * x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::herm_from_text;
    use crate::algebra::scalar::GaussianRational;
    use proptest::prelude::*;

    fn ex13() -> HermPoly {
        herm_from_text("Re(z4) + |z1^2 - z2*z3|^2 + |z2|^4", 4).unwrap()
    }

    fn curve(src: &str) -> CurveGerm {
        CurveGerm::from_text(src, None).unwrap()
    }

    #[test]
    fn curve_orders() {
        assert_eq!(curve("(t, -t, 0, 0)").nu(), 1);
        assert_eq!(curve("(t^2, t^3)").nu(), 2);
        assert_eq!(curve("(t^3 + t^4, 0)").nu(), 3);
        assert!(matches!(CurveGerm::from_text("(0, 0)", None), Err(Error::ConstantCurve)));
        assert!(matches!(CurveGerm::from_text("(1 + t)", None), Err(Error::ConstantCurve)));
    }

    #[test]
    fn gamma_one_at_origin() {
        assert_eq!(nu_along(&ex13(), &curve("(t, -t, 0, 0)")).unwrap(), Order::Finite(4));
    }

    #[test]
    fn gamma_two_at_nearby_point() {
        // a = b = eps = 1: z2 = t^2/(1-t), z3 - 1 = -t - t^2/(1-t), expanded to degree 7.
        let p = vec![GQ::zero(), GQ::zero(), GQ::from_int(1), GQ::zero()];
        let z2: Vec<GaussianRational> = (0..7).map(|k| GQ::from_int(if k >= 1 { 1 } else { 0 })).collect();
        let z3: Vec<GaussianRational> = (0..7).map(|_| GQ::from_int(-1)).collect();
        let z1 = vec![GQ::from_int(1)];
        let g = CurveGerm::from_coeffs(p.clone(), &[z1, z2, z3, vec![]]).unwrap();
        assert_eq!(g.degree(), 7);
        let germ = HermGerm::at(&ex13(), &p).unwrap();
        assert_eq!(nu_along_germ(&germ, &g).unwrap(), Order::Finite(8));
        let at_origin = CurveGerm::at_origin(g.components().to_vec()).unwrap();
        assert!(matches!(nu_along_germ(&germ, &at_origin), Err(Error::BasePointMismatch)));
    }

    #[test]
    fn small_examples() {
        let r = herm_from_text("|z1|^2", 1).unwrap();
        assert_eq!(nu_along(&r, &curve("(t^3)")).unwrap(), Order::Finite(6));
        let gens = vec![herm_from_text("Re(z2) + |z1|^2", 2).unwrap(), herm_from_text("|z1|^2", 2).unwrap()];
        assert_eq!(ideal_nu_along(&gens, &curve("(t, 0)")).unwrap(), Order::Finite(2));
        let gens = vec![herm_from_text("|z1|^2", 2).unwrap()];
        assert_eq!(ideal_nu_along(&gens, &curve("(0, t)")).unwrap(), Order::Infinity);
        let gens = vec![herm_from_text("Re(z2)", 2).unwrap(), herm_from_text("|z1|^4", 2).unwrap()];
        assert_eq!(ideal_nu_along(&gens, &curve("(t, t^3)")).unwrap(), Order::Finite(3));
        assert!(matches!(ideal_nu_along(&[], &curve("(t)")), Err(Error::EmptyGenerators)));
        assert!(nu_along(&r, &curve("(t, t)")).is_err());
    }

    #[test]
    fn cancellation_reaches_infinity() {
        let r = herm_from_text("|z1 - z2^2|^2", 2).unwrap();
        assert_eq!(nu_along(&r, &curve("(t^2, t)")).unwrap(), Order::Infinity);
        let phi = crate::algebra::holo_from_text("z1 - z2^2", 2).unwrap();
        assert_eq!(holo_nu_along(&phi, &curve("(t^2, t)")).unwrap(), Order::Infinity);
        assert_eq!(holo_nu_along(&phi, &curve("(t^2 + t^5, t)")).unwrap(), Order::Finite(5));
    }

    #[test]
    fn text_and_json_round_trip() {
        let g = CurveGerm::from_text("(t - 1/2*t^3, i*t^2)", Some(vec![GQ::from_int(1), GQ::i()])).unwrap();
        let again = CurveGerm::from_text(&g.to_string(), Some(g.base().to_vec())).unwrap();
        assert_eq!(g, again);
        let json = serde_json::to_string(&g).unwrap();
        let back: CurveGerm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }

    // Strategies: small mixed polynomials built as Re(h) + Σ ±|f_j|², and short curves.

    fn small_gq() -> impl Strategy<Value = GQ> {
        (-2i64..=2, -1i64..=1).prop_map(|(a, b)| GQ::from_parts(a, b))
    }

    fn holo(n: usize, maxdeg: u32) -> impl Strategy<Value = HoloPoly> {
        let monos: Vec<Exponent> = Exponent::all_up_to(n, maxdeg).into_iter().filter(|e| !e.is_zero()).collect();
        let m = monos.len();
        prop::collection::vec(small_gq(), m).prop_map(move |cs| {
            HoloPoly::from_terms(n, monos.iter().cloned().zip(cs).filter(|(_, c)| !c.is_zero()))
        })
    }

    fn herm(n: usize) -> impl Strategy<Value = HermPoly> {
        (holo(n, 2), prop::collection::vec((holo(n, 2), any::<bool>()), 1..3)).prop_map(move |(h, fs)| {
            let mut r = h.re();
            for (f, pos) in fs {
                let sq = f.abs_sq();
                r = if pos { r.add(&sq) } else { r.sub(&sq) };
            }
            r
        })
    }

    fn germ(n: usize) -> impl Strategy<Value = CurveGerm> {
        prop::collection::vec(prop::collection::vec(small_gq(), 3), n)
            .prop_filter_map("constant", move |cs| CurveGerm::from_coeffs(vec![GQ::zero(); n], &cs).ok())
    }

    fn unit() -> impl Strategy<Value = HoloPoly> {
        (small_gq(), prop::collection::vec(small_gq(), 3)).prop_filter_map("u(0) = 0", |(c0, rest)| {
            if c0.is_zero() {
                return None;
            }
            let mut all = vec![c0];
            all.extend(rest);
            Some(poly_from_dense(&all, 0))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reparametrization_invariance(r in herm(2), g in germ(2), u in unit()) {
            let h = g.reparametrize(&u).unwrap();
            prop_assert_eq!(h.nu(), g.nu());
            prop_assert_eq!(nu_along(&r, &h).unwrap(), nu_along(&r, &g).unwrap());
        }

        #[test]
        fn valuation_is_additive(r in herm(2), s in herm(2), g in germ(2)) {
            let a = nu_along(&r, &g).unwrap();
            let b = nu_along(&s, &g).unwrap();
            prop_assert_eq!(nu_along(&r.mul(&s), &g).unwrap(), a + b);
        }

        #[test]
        fn sum_dominates_min(r in herm(2), s in herm(2), g in germ(2)) {
            let a = nu_along(&r, &g).unwrap();
            let b = nu_along(&s, &g).unwrap();
            let sum = nu_along(&r.add(&s), &g).unwrap();
            prop_assert!(sum >= a.min(b));
            if a != b {
                prop_assert_eq!(sum, a.min(b));
            }
        }

        #[test]
        fn order_bounded_below_by_degree(r in herm(3), g in germ(3)) {
            if let Some(d) = r.order() {
                prop_assert!(nu_along(&r, &g).unwrap() >= Order::Finite(g.nu() * d));
            }
        }

        #[test]
        fn truncated_expansion_matches_full_composition(r in herm(2), g in germ(2)) {
            let full = r.compose(&substitution(&g));
            let expected = full.order().map(Order::Finite).unwrap_or(Order::Infinity);
            prop_assert_eq!(nu_along(&r, &g).unwrap(), expected);
        }
    }

    // Independent oracle: substitute the curve as a 1-variable polynomial and expand fully.
    fn substitution(g: &CurveGerm) -> Vec<HoloPoly> {
        g.components().to_vec()
    }
}
