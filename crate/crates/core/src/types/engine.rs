//! Type computations: `Δ` of a real model or a holomorphic ideal, `Δ_q` by
//! slicing, and generic values of slice types.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{pullback, GaussianRational as GQ, HermPoly, HoloPoly, LinearSubspaceChart};
use crate::curves::{holo_order_along, order_along, CurveGerm};
use crate::decomp::{decompose, square_pieces, twisted_ideal, union_basis, RationalUnitary};
use crate::error::{Error, Result};
use crate::ideals::{forms_independent, ideal_type_upper, weighted_type_upper, HoloIdeal, DEFAULT_MAX_MULT_DEGREE};
use crate::rng::{derive_seed, linear_form, rng_from_seed, DEFAULT_SEED};
use crate::value::{Order, TypeValue};

use super::estimate::{Status, TypeEstimate, UpperCertificate, Witness};
use super::lemmas::truncation_stability;
use super::model::HypersurfaceModel;
use super::search::{lower_from, reverify, search, SearchBudget, Target};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Truncation order; `None` means `2·deg + 1`.
    pub k: Option<u32>,
    pub budget: SearchBudget,
    pub max_mult_degree: u32,
    pub num_samples: usize,
    pub min_agreement: usize,
    pub seed: u64,
    /// Height of the Gaussian-integer coefficients of sampled linear forms.
    pub form_height: i64,
    /// Number of sampled unitaries for the uncertified estimate.
    pub u_samples: usize,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            k: None,
            budget: SearchBudget::default(),
            max_mult_degree: DEFAULT_MAX_MULT_DEGREE,
            num_samples: 7,
            min_agreement: 5,
            seed: DEFAULT_SEED,
            form_height: 5,
            u_samples: 3,
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        if self.min_agreement < 3 || self.num_samples < self.min_agreement {
            return Err(Error::InvalidParameter(format!(
                "need num_samples >= min_agreement >= 3 (got {} and {})",
                self.num_samples, self.min_agreement
            )));
        }
        if self.k == Some(0) || self.max_mult_degree == 0 || self.form_height <= 0 {
            return Err(Error::InvalidParameter("budgets must be positive".into()));
        }
        Ok(())
    }
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Holomorphic pieces of one generator and whether its mixed part is
/// semidefinite (after a sign flip if needed).
struct Pieces {
    h: HoloPoly,
    squares: Option<Vec<HoloPoly>>,
    others: Vec<HoloPoly>,
}

fn pieces_of(r: &HermPoly, k: u32) -> Result<Pieces> {
    let d = decompose(r, k)?;
    if let Some(sq) = square_pieces(&d) {
        return Ok(Pieces {
            h: d.h,
            squares: Some(sq.pieces),
            others: Vec::new(),
        });
    }
    let neg = decompose(&r.neg(), k)?;
    if let Some(sq) = square_pieces(&neg) {
        return Ok(Pieces {
            h: neg.h,
            squares: Some(sq.pieces),
            others: Vec::new(),
        });
    }
    let mut others = d.f.clone();
    others.extend(d.g.iter().cloned());
    Ok(Pieces {
        h: d.h,
        squares: None,
        others,
    })
}

/// `min(ν(h∘γ), 2·min_j ν(s_j∘γ))`.
fn psd_order(p: &Pieces, gamma: &CurveGerm) -> Order {
    let mut o = holo_order_along(&p.h, gamma);
    for s in p.squares.iter().flatten() {
        o = o.min(holo_order_along(s, gamma).scale(2));
    }
    o
}

fn check_centered(gens: &[HermPoly]) -> Result<usize> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let n = first.nvars();
    if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.nvars(),
        });
    }
    Ok(n)
}

/// `Δ` at the origin of the model cut out by `gens`, computed on `r_k`.
pub fn delta_one(gens: &[HermPoly], k: u32, params: &Params) -> Result<TypeEstimate> {
    let n = check_centered(gens)?;
    let rs: Vec<HermPoly> = gens.iter().map(|r| crate::decomp::truncate(r, k)).collect::<Result<_>>()?;
    let model_degree = gens.iter().map(HermPoly::degree).max().unwrap_or(0);
    let origin = vec![GQ::zero(); n];
    if rs.iter().any(|r| !r.eval(&origin).is_zero()) {
        let mut e = TypeEstimate::new(TypeValue::int(0), TypeValue::int(0))
            .note("a generator does not vanish at the point");
        e.upper_certificate = Some(UpperCertificate {
            method: crate::ideals::UpperMethod::Unit,
            value: 0,
        });
        e.truncation = Some(truncation_stability(&e, k, model_degree));
        return Ok(e);
    }
    if rs.iter().all(HermPoly::is_zero) {
        let mut e = TypeEstimate::new(TypeValue::Infinity, TypeValue::Infinity).note("every generator vanishes identically");
        if let Ok(line) = CurveGerm::from_coeffs(origin.clone(), &unit_line(n)) {
            e.witnesses.push(Witness::new(line, Order::Infinity));
        }
        e.truncation = Some(truncation_stability(&e, k, model_degree));
        return Ok(e);
    }
    let pieces: Vec<Pieces> = rs.iter().map(|r| pieces_of(r, k)).collect::<Result<_>>()?;
    let mut holo: Vec<HoloPoly> = Vec::new();
    for p in &pieces {
        holo.push(p.h.clone());
        holo.extend(p.squares.iter().flatten().cloned());
        holo.extend(p.others.iter().cloned());
    }
    let target = Target::Herm(&rs);
    let outcome = search(target, &holo, &params.budget)?;
    let lower = lower_from(&outcome);
    let mut witnesses = Vec::new();
    if let Some(w) = outcome.best {
        if !reverify(target, &w) {
            return Err(Error::InvalidParameter("witness failed re-verification".into()));
        }
        witnesses.push(w);
    }
    let all_psd = pieces.iter().all(|p| p.squares.is_some());
    let mut notes = vec![format!("lower bound from curve search over {} candidates", outcome.examined)];
    let mut upper = TypeValue::Infinity;
    let mut certificate = None;
    let mut sampled = None;
    if all_psd {
        let formula_ok = witnesses.iter().all(|w| {
            let direct = rs.iter().map(|r| order_along(r, &w.curve)).min().unwrap_or(Order::Infinity);
            let via = pieces.iter().map(|p| psd_order(p, &w.curve)).min().unwrap_or(Order::Infinity);
            direct == via
        });
        if !formula_ok {
            notes.push("order formula failed on a witness; upper bound withheld".into());
        } else {
            let mut weighted: Vec<(HoloPoly, u32)> = Vec::new();
            for p in &pieces {
                weighted.push((p.h.clone(), 1));
                for s in p.squares.iter().flatten() {
                    weighted.push((s.clone(), 2));
                }
            }
            match weighted_type_upper(n, &weighted, params.max_mult_degree)? {
                Some(t) => {
                    upper = TypeValue::int(t.value as i64);
                    notes.push(format!("upper bound {} from the semidefinite decomposition ({:?})", t.value, t.method));
                    certificate = Some(UpperCertificate {
                        method: t.method,
                        value: t.value,
                    });
                }
                None => notes.push("no upper certificate within the degree budget".into()),
            }
        }
    } else {
        notes.push("mixed part is indefinite: upper bound not certified".into());
        sampled = Some(sampled_twisted_estimate(&rs, k, params)?);
    }
    if lower > upper {
        return Err(Error::InvalidParameter(format!("inconsistent bounds: lower {lower} exceeds upper {upper}")));
    }
    let mut e = TypeEstimate::new(lower, upper);
    e.witnesses = witnesses;
    e.upper_certificate = certificate;
    e.sampled_estimate = sampled;
    e.notes = notes;
    e.truncation = Some(truncation_stability(&e, k, model_degree));
    Ok(e)
}

fn unit_line(n: usize) -> Vec<Vec<GQ>> {
    (0..n).map(|i| vec![if i == 0 { GQ::from_int(1) } else { GQ::zero() }]).collect()
}

/// The unitaries used for twisted ideals: `I`, `-I` and seeded Cayley samples.
pub fn sample_unitaries(size: usize, count: usize, seed: u64) -> Vec<(String, RationalUnitary)> {
    let mut out = vec![
        ("I".to_string(), RationalUnitary::identity(size)),
        ("-I".to_string(), RationalUnitary::minus_identity(size)),
    ];
    for i in 0..count.saturating_sub(2) {
        let s = derive_seed(seed, 0x5500 + i as u64);
        let mut rng = rng_from_seed(s);
        out.push((format!("cayley#{i}"), RationalUnitary::sample(&mut rng, size)));
    }
    out.truncate(count.max(1));
    out
}

/// `2·max_U` of lower bounds on `Δ(I(U))` over sampled unitaries.
fn sampled_twisted_estimate(rs: &[HermPoly], k: u32, params: &Params) -> Result<TypeValue> {
    let size = union_basis(rs, k)?.len();
    let mut best = TypeValue::int(0);
    for (_, u) in sample_unitaries(size, params.u_samples, params.seed) {
        let ideal = twisted_ideal(rs, &u, k)?;
        let e = ideal_type(&ideal, params)?;
        best = best.max(e.lower);
    }
    Ok(best.scale(&two()))
}

/// `Δ(I)` at the origin for a holomorphic ideal.
pub fn ideal_type(ideal: &HoloIdeal, params: &Params) -> Result<TypeEstimate> {
    let n = ideal.nvars();
    if ideal.is_zero() {
        let mut e = TypeEstimate::new(TypeValue::Infinity, TypeValue::Infinity).note("zero ideal");
        if let Ok(line) = CurveGerm::from_coeffs(vec![GQ::zero(); n], &unit_line(n)) {
            e.witnesses.push(Witness::new(line, Order::Infinity));
        }
        return Ok(e);
    }
    let gens = ideal.gens();
    let target = Target::Holo(gens);
    let outcome = search(target, gens, &params.budget)?;
    let lower = lower_from(&outcome);
    let upper_cert = ideal_type_upper(ideal, params.max_mult_degree)?;
    let upper = upper_cert
        .as_ref()
        .map(|t| TypeValue::int(t.value as i64))
        .unwrap_or(TypeValue::Infinity);
    let lower = if upper_cert.as_ref().is_some_and(|t| t.value == 0) {
        TypeValue::int(0)
    } else {
        lower
    };
    if lower > upper {
        return Err(Error::InvalidParameter(format!("inconsistent bounds: lower {lower} exceeds upper {upper}")));
    }
    let mut e = TypeEstimate::new(lower, upper);
    if let Some(w) = outcome.best {
        if !reverify(target, &w) {
            return Err(Error::InvalidParameter("witness failed re-verification".into()));
        }
        if w.ratio == e.lower {
            e.witnesses.push(w);
        }
    }
    e.upper_certificate = upper_cert.map(|t| UpperCertificate {
        method: t.method,
        value: t.value,
    });
    e.notes.push(format!("lower bound from curve search over {} candidates", outcome.examined));
    Ok(e)
}

/// Real generators or a holomorphic ideal, both centered at the origin.
#[derive(Clone, Debug)]
pub enum IdealInput {
    Herm(Vec<HermPoly>),
    Holo(HoloIdeal),
}

impl IdealInput {
    pub fn nvars(&self) -> Result<usize> {
        match self {
            IdealInput::Herm(g) => check_centered(g),
            IdealInput::Holo(i) => Ok(i.nvars()),
        }
    }
}

/// One sampled slice: its seed, forms and the type of the restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceSample {
    pub index: usize,
    pub seed: u64,
    pub forms: Vec<HoloPoly>,
    pub estimate: TypeEstimate,
}

/// `q - 1` seeded independent linear forms and their chart.
pub fn sample_chart(n: usize, q: usize, seed: u64, height: i64) -> Result<(Vec<HoloPoly>, LinearSubspaceChart)> {
    if q == 0 || q > n {
        return Err(Error::BadQ { q, n });
    }
    let mut rng = rng_from_seed(seed);
    loop {
        let forms: Vec<HoloPoly> = (0..q - 1).map(|_| linear_form(&mut rng, n, height)).collect();
        if forms_independent(&forms) {
            let chart = LinearSubspaceChart::from_forms(n, forms.clone())?;
            return Ok((forms, chart));
        }
    }
}

fn slice_estimate(input: &IdealInput, chart: &LinearSubspaceChart, k: u32, params: &Params) -> Result<TypeEstimate> {
    let mut e = match input {
        IdealInput::Herm(gens) => {
            let pulled: Vec<HermPoly> = gens.iter().map(|r| pullback(r, chart)).collect::<Result<_>>()?;
            delta_one(&pulled, k, params)?
        }
        IdealInput::Holo(ideal) => {
            let pulled = ideal.pullback(chart)?;
            ideal_type(&pulled, params)?
        }
    };
    // Slice witnesses are reported in ambient coordinates.
    let base = vec![GQ::zero(); chart.ambient_dim()];
    e.witnesses = e
        .witnesses
        .into_iter()
        .map(|w| {
            let curve = w.curve.map_linear(chart.param(), base.clone())?;
            Ok(Witness::new(curve, w.order))
        })
        .collect::<Result<_>>()?;
    Ok(e)
}

fn run_samples(input: &IdealInput, n: usize, q: usize, k: u32, params: &Params) -> Result<Vec<SliceSample>> {
    if q == 0 || q > n {
        return Err(Error::BadQ { q, n });
    }
    if q == 1 {
        let chart = LinearSubspaceChart::full(n);
        let estimate = slice_estimate(input, &chart, k, params)?;
        return Ok(vec![SliceSample {
            index: 0,
            seed: params.seed,
            forms: Vec::new(),
            estimate,
        }]);
    }
    (0..params.num_samples)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(params.seed, i as u64);
            let (forms, chart) = sample_chart(n, q, seed, params.form_height)?;
            let estimate = slice_estimate(input, &chart, k, params)?;
            Ok(SliceSample {
                index: i,
                seed,
                forms,
                estimate,
            })
        })
        .collect()
}

fn default_k(input: &IdealInput) -> u32 {
    match input {
        IdealInput::Herm(g) => 2 * g.iter().map(HermPoly::degree).max().unwrap_or(0) + 1,
        IdealInput::Holo(i) => 2 * i.gens().iter().map(HoloPoly::degree).max().unwrap_or(0) + 1,
    }
}

/// `Δ_q` as an infimum over slices: the minimum of the sampled upper bounds
/// is an upper bound; the lower field is the smallest sampled lower bound.
pub fn delta_q_ideal(input: &IdealInput, q: usize, params: &Params) -> Result<(TypeEstimate, Vec<SliceSample>)> {
    let n = input.nvars()?;
    let k = params.k.unwrap_or_else(|| default_k(input));
    let samples = run_samples(input, n, q, k, params)?;
    let upper = samples.iter().map(|s| s.estimate.upper.clone()).min().unwrap_or(TypeValue::Infinity);
    let lower = samples.iter().map(|s| s.estimate.lower.clone()).min().unwrap_or(TypeValue::int(0));
    let mut e = TypeEstimate::new(lower.clone(), upper.clone());
    if let Some(best) = samples.iter().find(|s| s.estimate.lower == lower) {
        e.witnesses = best.estimate.witnesses.clone();
    }
    if let Some(best) = samples.iter().find(|s| s.estimate.upper == upper) {
        e.upper_certificate = best.estimate.upper_certificate.clone();
        e.truncation = best.estimate.truncation.clone();
    }
    e.sampled_estimate = samples.iter().filter_map(|s| s.estimate.sampled_estimate.clone()).max();
    e.notes.push(format!("minimum over {} sampled slices", samples.len()));
    if q > 1 {
        e.notes.push("the lower field bounds the sampled slices, not every slice".into());
    }
    Ok((e, samples))
}

/// Generic value of the slice type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericValueReport {
    pub q: usize,
    pub point: Vec<GQ>,
    pub k: u32,
    pub samples: Vec<SliceSample>,
    /// Common lower bound of at least `min_agreement` samples, if any.
    #[serde(serialize_with = "agreed_ser")]
    pub agreed_value: Option<TypeValue>,
    pub agreed_status: Option<Status>,
    pub agreement_count: usize,
    /// Estimate of the first agreeing sample.
    pub estimate: Option<TypeEstimate>,
    pub notes: Vec<String>,
}

fn agreed_ser<S: serde::Serializer>(v: &Option<TypeValue>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(t) => t.serialize(s),
        None => s.serialize_str("UNRESOLVED"),
    }
}

impl GenericValueReport {
    pub fn resolved(&self) -> bool {
        self.agreed_value.is_some()
    }

    /// Resolved with an exact slice value.
    pub fn exact(&self) -> bool {
        self.agreed_status == Some(Status::Exact)
    }
}

/// Groups samples by `(lower, status)`; the largest group wins, ties going
/// to the smaller key.
fn agreement(samples: &[SliceSample], min_agreement: usize) -> (Option<(TypeValue, Status)>, usize) {
    let mut groups: BTreeMap<(TypeValue, Status), usize> = BTreeMap::new();
    for s in samples {
        *groups.entry((s.estimate.lower.clone(), s.estimate.status)).or_default() += 1;
    }
    let mut best: Option<((TypeValue, Status), usize)> = None;
    for (key, count) in groups {
        if best.as_ref().is_none_or(|(_, c)| count > *c) {
            best = Some((key, count));
        }
    }
    match best {
        Some((key, count)) if count >= min_agreement => (Some(key), count),
        Some((_, count)) => (None, count),
        None => (None, 0),
    }
}

/// `D_q(M, p)` as the generic value of `Δ` on seeded slices through `p`.
pub fn dq_via_slices(model: &HypersurfaceModel, p: &[GQ], q: usize, params: &Params) -> Result<GenericValueReport> {
    params.validate()?;
    if q == 0 || q > model.n {
        return Err(Error::BadQ { q, n: model.n });
    }
    let local = model.at(p)?;
    let k = params.k.unwrap_or_else(|| model.default_k());
    let input = IdealInput::Herm(local);
    let mut samples = run_samples(&input, model.n, q, k, params)?;
    for s in &mut samples {
        for w in &mut s.estimate.witnesses {
            w.curve = w.curve.with_base(p.to_vec())?;
        }
    }
    let mut notes = Vec::new();
    let (key, count, min) = if q == 1 {
        notes.push("q = 1: no slicing, a single computation".into());
        let s = &samples[0].estimate;
        (Some((s.lower.clone(), s.status)), 1, 1)
    } else {
        let (key, count) = agreement(&samples, params.min_agreement);
        (key, count, params.min_agreement)
    };
    if key.is_none() {
        notes.push(format!("UNRESOLVED: largest agreeing group has {count} of {} samples, {min} required", samples.len()));
    } else if q > 1 {
        notes.push("generic value accepted by sample agreement; membership in the good open set is not decided".into());
    }
    let estimate = key
        .as_ref()
        .and_then(|(v, st)| samples.iter().find(|s| &s.estimate.lower == v && s.estimate.status == *st))
        .map(|s| s.estimate.clone());
    Ok(GenericValueReport {
        q,
        point: p.to_vec(),
        k,
        samples,
        agreed_status: key.as_ref().map(|(_, st)| *st),
        agreed_value: key.map(|(v, _)| v),
        agreement_count: count,
        estimate,
        notes,
    })
}

/// `min_r max_γ ν(r∘γ)/ν(γ)` for user-supplied curves inside the slice.
/// Curves are based at the point of evaluation; the chart's forms are taken
/// relative to that point.
pub fn raw_dq_inner(model: &HypersurfaceModel, curves: &[CurveGerm], chart: &LinearSubspaceChart) -> Result<TypeValue> {
    if curves.is_empty() {
        return Err(Error::InvalidParameter("no curves supplied".into()));
    }
    if chart.ambient_dim() != model.n {
        return Err(Error::DimensionMismatch {
            expected: model.n,
            found: chart.ambient_dim(),
        });
    }
    let mut ratios: Vec<Vec<TypeValue>> = vec![Vec::new(); model.gens.len()];
    for gamma in curves {
        if gamma.nvars() != model.n {
            return Err(Error::DimensionMismatch {
                expected: model.n,
                found: gamma.nvars(),
            });
        }
        for (i, w) in chart.forms().iter().enumerate() {
            if holo_order_along(w, gamma) != Order::Infinity {
                return Err(Error::CurveNotInSlice { form: i });
            }
        }
        let local = model.at(gamma.base())?;
        for (r, acc) in local.iter().zip(ratios.iter_mut()) {
            acc.push(order_along(r, gamma).ratio(gamma.nu()));
        }
    }
    Ok(ratios
        .into_iter()
        .map(|v| v.into_iter().max().unwrap_or(TypeValue::int(0)))
        .min()
        .unwrap_or(TypeValue::int(0)))
}

/// `Δ_q(I(U, k, 0))` for a twisted ideal of centered generators.
pub fn twisted_delta_q(rs: &[HermPoly], u: &RationalUnitary, k: u32, q: usize, params: &Params) -> Result<TypeEstimate> {
    let ideal = twisted_ideal(rs, u, k)?;
    let p = Params { k: Some(k), ..params.clone() };
    Ok(delta_q_ideal(&IdealInput::Holo(ideal), q, &p)?.0)
}
