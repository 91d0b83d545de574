//! Sparse polynomials over ℚ(i).
//!
//! [`HoloPoly`] lives in `ℚ(i)[z1..zn]`; [`MixedPoly`] in `ℚ(i)[z, z̄]`;
//! [`HermPoly`] is a `MixedPoly` whose coefficients are conjugate-symmetric,
//! i.e. a real-valued polynomial function.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::GaussianRational as GQ;
use crate::error::{Error, Result};

/// Exponent multi-index. Ordered graded-lexicographically: lower total
/// degree first, then larger leading exponents first (`z1² < z1z2 < z2²`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponents in `n` variables of total degree exactly `d`, in
    /// graded-lex order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Exponent> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Exponent(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return if d == 0 { vec![Exponent(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// All exponents of total degree `<= d`, in graded-lex order.
    pub fn all_up_to(n: usize, d: u32) -> Vec<Exponent> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent, prefix: &str, first: &mut bool) -> fmt::Result {
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !*first {
            write!(f, "*")?;
        }
        *first = false;
        write!(f, "{prefix}z{}", i + 1)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Writes `coef*monomial` terms joined by ` + ` / ` - `.
fn fmt_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a GQ, Vec<(&'a Exponent, &'static str)>)>,
{
    let mut any = false;
    for (c, monos) in terms {
        let is_const = monos.iter().all(|(e, _)| e.is_zero());
        let (neg, mag) = if c.im.is_zero() && c.re < BigRational::zero() {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        if any {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        } else if neg {
            write!(f, "-")?;
        }
        any = true;
        let mut first = true;
        if is_const || !mag.is_one() {
            if mag.im.is_zero() && !mag.re.is_integer() && !is_const {
                write!(f, "({mag})")?;
            } else {
                write!(f, "{mag}")?;
            }
            first = false;
        }
        for (e, prefix) in monos {
            fmt_monomial(f, e, prefix, &mut first)?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// A holomorphic polynomial in `n` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct HoloPoly {
    n: usize,
    terms: BTreeMap<Exponent, GQ>,
}

impl HoloPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GQ) -> Self {
        Self::monomial(n, Exponent::zero(n), c)
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, Exponent::unit(n, i), GQ::one())
    }

    pub fn monomial(n: usize, e: Exponent, c: GQ) -> Self {
        assert_eq!(e.len(), n, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { n, terms }
    }

    /// Linear form `Σ coeffs[i]·z_i`.
    pub fn linear(coeffs: &[GQ]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Exponent::unit(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exponent, GQ)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: GQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, GQ> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> GQ {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> GQ {
        self.coeff(&Exponent::zero(self.n))
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    /// Lowest total degree of a nonzero term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Exponent::degree)
    }

    pub fn homogeneous_part(&self, d: u32) -> HoloPoly {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree homogeneous part (the zero polynomial maps to itself).
    pub fn initial_form(&self) -> HoloPoly {
        match self.order() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    /// Coefficients of the degree-one part.
    pub fn linear_coeffs(&self) -> Vec<GQ> {
        (0..self.n)
            .map(|i| self.coeff(&Exponent::unit(self.n, i)))
            .collect()
    }

    pub fn truncate(&self, k: u32) -> HoloPoly {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GQ) -> HoloPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &HoloPoly) -> HoloPoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HoloPoly) -> HoloPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HoloPoly {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &HoloPoly) -> HoloPoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    /// Product truncated to total degree `<= k`.
    pub fn mul_trunc(&self, other: &HoloPoly, k: u32) -> HoloPoly {
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            if da > k {
                break;
            }
            for (eb, cb) in &other.terms {
                if da + eb.degree() > k {
                    break;
                }
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> HoloPoly {
        let mut acc = Self::constant(self.n, GQ::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_monomial(&self, e: &Exponent) -> HoloPoly {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.add(e), c.clone())).collect(),
        }
    }

    pub fn eval(&self, point: &[GQ]) -> GQ {
        assert_eq!(point.len(), self.n, "point dimension mismatch");
        let mut acc = GQ::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Partial derivative with respect to `z_i`.
    pub fn derivative(&self, i: usize) -> HoloPoly {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[i] -= 1;
            out.add_term(ne, c * &GQ::from_int(k as i64));
        }
        out
    }

    /// Substitutes `z_i ↦ images[i]`; all images share one variable count.
    pub fn compose(&self, images: &[HoloPoly]) -> HoloPoly {
        assert_eq!(images.len(), self.n, "substitution arity mismatch");
        let m = images.first().map(|p| p.n).unwrap_or(0);
        let mut cache = PowerCache::new(images);
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let p = cache.monomial(e, m);
            out = out.add(&p.scale(c));
        }
        out
    }

    /// The antiholomorphic polynomial `conj(self)` as a mixed polynomial.
    pub fn conj_mixed(&self) -> MixedPoly {
        let z = Exponent::zero(self.n);
        MixedPoly::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(e, c)| (BiExponent::new(z.clone(), e.clone()), c.conj())),
        )
    }

    pub fn to_mixed(&self) -> MixedPoly {
        let z = Exponent::zero(self.n);
        MixedPoly::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(e, c)| (BiExponent::new(e.clone(), z.clone()), c.clone())),
        )
    }

    /// `|self|² = self·conj(self)`.
    pub fn abs_sq(&self) -> HermPoly {
        HermPoly::from_mixed_unchecked(self.to_mixed().mul(&self.conj_mixed()))
    }

    /// `Re(self) = (self + conj(self)) / 2`.
    pub fn re(&self) -> HermPoly {
        let sum = self.to_mixed().add(&self.conj_mixed());
        HermPoly::from_mixed_unchecked(sum.scale(&GQ::half()))
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().map(|(e, c)| (c, vec![(e, "")])))
    }
}

impl fmt::Debug for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoloPoly[{}]({})", self.n, self)
    }
}

/// Caches powers of substitution images and the monomials built from them.
pub(crate) struct PowerCache<'a> {
    images: &'a [HoloPoly],
    powers: Vec<Vec<HoloPoly>>,
    monos: HashMap<Exponent, HoloPoly>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(images: &'a [HoloPoly]) -> Self {
        Self {
            images,
            powers: images
                .iter()
                .map(|p| vec![HoloPoly::constant(p.n, GQ::one())])
                .collect(),
            monos: HashMap::new(),
        }
    }

    fn power(&mut self, i: usize, k: u32) -> &HoloPoly {
        while self.powers[i].len() <= k as usize {
            let next = self.powers[i].last().unwrap().mul(&self.images[i]);
            self.powers[i].push(next);
        }
        &self.powers[i][k as usize]
    }

    pub(crate) fn monomial(&mut self, e: &Exponent, m: usize) -> HoloPoly {
        if let Some(p) = self.monos.get(e) {
            return p.clone();
        }
        let mut acc = HoloPoly::constant(m, GQ::one());
        for (i, &k) in e.0.iter().enumerate() {
            if k > 0 {
                let p = self.power(i, k).clone();
                acc = acc.mul(&p);
            }
        }
        self.monos.insert(e.clone(), acc.clone());
        acc
    }
}

/// Exponent pair `(α, β)` for the monomial `z^α z̄^β`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiExponent {
    pub alpha: Exponent,
    pub beta: Exponent,
}

impl BiExponent {
    pub fn new(alpha: Exponent, beta: Exponent) -> Self {
        Self { alpha, beta }
    }

    pub fn degree(&self) -> u32 {
        self.alpha.degree() + self.beta.degree()
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.beta.clone(), self.alpha.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.alpha.add(&other.alpha), self.beta.add(&other.beta))
    }

    pub fn is_pure(&self) -> bool {
        self.alpha.is_zero() || self.beta.is_zero()
    }
}

impl Ord for BiExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for BiExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BiExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.alpha, self.beta)
    }
}

/// A polynomial in `z` and `z̄` with no symmetry requirement.
#[derive(Clone, PartialEq, Eq)]
pub struct MixedPoly {
    n: usize,
    terms: BTreeMap<BiExponent, GQ>,
}

impl MixedPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GQ) -> Self {
        Self::from_terms(
            n,
            [(BiExponent::new(Exponent::zero(n), Exponent::zero(n)), c)],
        )
    }

    pub fn var(n: usize, i: usize) -> Self {
        HoloPoly::var(n, i).to_mixed()
    }

    pub fn conj_var(n: usize, i: usize) -> Self {
        HoloPoly::var(n, i).conj_mixed()
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (BiExponent, GQ)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert!(e.alpha.len() == n && e.beta.len() == n, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: BiExponent, c: GQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<BiExponent, GQ> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(BiExponent::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, e: &BiExponent) -> GQ {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn conj(&self) -> MixedPoly {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.swapped(), c.conj()))
                .collect(),
        }
    }

    /// Pairs `(α, β)` whose coefficient breaks `c_{βα} = conj(c_{αβ})`.
    pub fn symmetry_violations(&self) -> Vec<BiExponent> {
        let mut bad = Vec::new();
        for (e, c) in &self.terms {
            let mirror = self.coeff(&e.swapped());
            if mirror != c.conj() {
                bad.push(e.clone());
            }
        }
        bad
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|e| e.beta.is_zero())
    }

    /// The holomorphic polynomial, if no `z̄` appears.
    pub fn to_holo(&self) -> Option<HoloPoly> {
        if !self.is_holomorphic() {
            return None;
        }
        Some(HoloPoly::from_terms(
            self.n,
            self.terms.iter().map(|(e, c)| (e.alpha.clone(), c.clone())),
        ))
    }

    pub fn scale(&self, c: &GQ) -> MixedPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &MixedPoly) -> MixedPoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MixedPoly {
        self.scale(&-GQ::one())
    }

    pub fn sub(&self, other: &MixedPoly) -> MixedPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MixedPoly) -> MixedPoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MixedPoly {
        let mut acc = Self::constant(self.n, GQ::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn truncate(&self, k: u32) -> MixedPoly {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[GQ]) -> GQ {
        assert_eq!(point.len(), self.n, "point dimension mismatch");
        let conj: Vec<GQ> = point.iter().map(GQ::conj).collect();
        let mut acc = GQ::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.n {
                if e.alpha.0[i] > 0 {
                    t = &t * &point[i].pow(e.alpha.0[i]);
                }
                if e.beta.0[i] > 0 {
                    t = &t * &conj[i].pow(e.beta.0[i]);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `z_i ↦ images[i]` and `z̄_i ↦ conj(images[i])`.
    pub fn compose(&self, images: &[HoloPoly]) -> MixedPoly {
        assert_eq!(images.len(), self.n, "substitution arity mismatch");
        let m = images.first().map(|p| p.n).unwrap_or(0);
        let mut cache = PowerCache::new(images);
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let a = cache.monomial(&e.alpha, m);
            let b = cache.monomial(&e.beta, m);
            for (ea, ca) in &a.terms {
                let cac = ca * c;
                for (eb, cb) in &b.terms {
                    out.add_term(BiExponent::new(ea.clone(), eb.clone()), &cac * &cb.conj());
                }
            }
        }
        out
    }
}

impl fmt::Display for MixedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(
            f,
            self.terms
                .iter()
                .map(|(e, c)| (c, vec![(&e.alpha, ""), (&e.beta, "~")])),
        )
    }
}

impl fmt::Debug for MixedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedPoly[{}]({})", self.n, self)
    }
}

/// A real-valued polynomial in `(z, z̄)`: `c_{βα} = conj(c_{αβ})` for all
/// stored pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct HermPoly(MixedPoly);

impl HermPoly {
    pub fn zero(n: usize) -> Self {
        Self(MixedPoly::zero(n))
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Self(MixedPoly::constant(n, GQ::real(c)))
    }

    pub fn from_mixed(p: MixedPoly) -> Result<Self> {
        let bad = p.symmetry_violations();
        if bad.is_empty() {
            Ok(Self(p))
        } else {
            Err(Error::SymmetryViolation {
                pairs: bad
                    .into_iter()
                    .map(|e| (e.alpha.0, e.beta.0))
                    .collect(),
            })
        }
    }

    pub(crate) fn from_mixed_unchecked(p: MixedPoly) -> Self {
        debug_assert!(p.symmetry_violations().is_empty());
        Self(p)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (BiExponent, GQ)>) -> Result<Self> {
        Self::from_mixed(MixedPoly::from_terms(n, terms))
    }

    pub fn as_mixed(&self) -> &MixedPoly {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.n
    }

    pub fn terms(&self) -> &BTreeMap<BiExponent, GQ> {
        &self.0.terms
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.0.degree()
    }

    /// Lowest total degree `|α|+|β|` of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.0.terms.keys().next().map(BiExponent::degree)
    }

    pub fn coeff(&self, e: &BiExponent) -> GQ {
        self.0.coeff(e)
    }

    pub fn add(&self, other: &HermPoly) -> HermPoly {
        Self(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &HermPoly) -> HermPoly {
        Self(self.0.sub(&other.0))
    }

    pub fn neg(&self) -> HermPoly {
        Self(self.0.neg())
    }

    pub fn mul(&self, other: &HermPoly) -> HermPoly {
        Self(self.0.mul(&other.0))
    }

    pub fn scale(&self, c: &BigRational) -> HermPoly {
        Self(self.0.scale(&GQ::real(c.clone())))
    }

    pub fn truncate(&self, k: u32) -> HermPoly {
        Self(self.0.truncate(k))
    }

    /// Exact value at a Gaussian-rational point; always real.
    pub fn eval(&self, point: &[GQ]) -> BigRational {
        let v = self.0.eval(point);
        debug_assert!(v.im.is_zero());
        v.re
    }

    pub fn eval_complex(&self, point: &[GQ]) -> GQ {
        self.0.eval(point)
    }

    pub fn compose(&self, images: &[HoloPoly]) -> HermPoly {
        Self(self.0.compose(images))
    }

    /// Terms with `β = 0` as a holomorphic polynomial.
    pub fn holomorphic_part(&self) -> HoloPoly {
        HoloPoly::from_terms(
            self.nvars(),
            self.terms()
                .iter()
                .filter(|(e, _)| e.beta.is_zero())
                .map(|(e, c)| (e.alpha.clone(), c.clone())),
        )
    }
}

impl fmt::Display for HermPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for HermPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermPoly[{}]({})", self.nvars(), self.0)
    }
}

/// One entry of the canonical JSON form of a [`HermPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub re: String,
    pub im: String,
}

impl Serialize for HermPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use crate::serde_util::ratio_string;
        let recs: Vec<TermRecord> = self
            .terms()
            .iter()
            .map(|(e, c)| TermRecord {
                alpha: e.alpha.0.clone(),
                beta: e.beta.0.clone(),
                re: ratio_string(&c.re),
                im: ratio_string(&c.im),
            })
            .collect();
        recs.serialize(s)
    }
}

impl HermPoly {
    /// Rebuilds from canonical records; `n` is needed for the zero polynomial.
    pub fn from_records(n: usize, recs: &[TermRecord]) -> Result<Self> {
        use crate::serde_util::parse_ratio;
        let mut p = MixedPoly::zero(n);
        for r in recs {
            if r.alpha.len() != n || r.beta.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.alpha.len().max(r.beta.len()),
                });
            }
            let re = parse_ratio(&r.re).map_err(Error::Json)?;
            let im = parse_ratio(&r.im).map_err(Error::Json)?;
            p.add_term(
                BiExponent::new(Exponent(r.alpha.clone()), Exponent(r.beta.clone())),
                GQ::new(re, im),
            );
        }
        Self::from_mixed(p)
    }
}

impl Serialize for HoloPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
