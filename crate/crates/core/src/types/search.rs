//! Lower bounds on types by exhibiting curves.
//!
//! Three families are tried: monomial curves `z_i = c_i t^(a_i)`, binomial
//! curves, and lifted curves. A lifted curve starts from a tangent direction
//! `v` on which the initial forms of a chosen set of holomorphic pieces
//! vanish and is extended one degree at a time by solving the linear system
//! that kills the next coefficient of every chosen piece along the curve.

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Exponent, GaussianRational as GQ, HermPoly, HoloPoly, Matrix};
use crate::curves::{holo_compose_trunc, holo_order_along, order_along, CurveGerm};
use crate::error::{Error, Result};
use crate::value::{Order, TypeValue};

use super::estimate::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Template {
    Monomial,
    Binomial,
    Lifted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Degree reached by lifted curves.
    pub max_curve_degree: u32,
    /// Largest `|c|` for integer coefficients of monomial curves.
    pub max_coeff_height: i64,
    /// Largest exponent of monomial and binomial curves.
    pub max_exponent: u32,
    pub templates: Vec<Template>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_curve_degree: 10,
            max_coeff_height: 1,
            max_exponent: 4,
            templates: vec![Template::Monomial, Template::Lifted],
        }
    }
}

/// What is being measured along a curve.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    /// `min_r ν(r∘γ)` over real generators.
    Herm(&'a [HermPoly]),
    /// `min_φ ν(φ∘γ)` over holomorphic generators.
    Holo(&'a [HoloPoly]),
}

impl Target<'_> {
    pub fn nvars(&self) -> usize {
        match self {
            Target::Herm(g) => g[0].nvars(),
            Target::Holo(g) => g[0].nvars(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Target::Herm(g) => g.is_empty(),
            Target::Holo(g) => g.is_empty(),
        }
    }

    pub fn order(&self, gamma: &CurveGerm) -> Order {
        match self {
            Target::Herm(g) => g.iter().map(|r| order_along(r, gamma)).min().unwrap_or(Order::Infinity),
            Target::Holo(g) => g.iter().map(|f| holo_order_along(f, gamma)).min().unwrap_or(Order::Infinity),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: Option<Witness>,
    pub examined: usize,
}

fn mono_curve(n: usize, parts: &[Option<(i64, u32)>]) -> Option<CurveGerm> {
    let comps: Vec<HoloPoly> = parts
        .iter()
        .map(|p| match p {
            None => HoloPoly::zero(1),
            Some((c, a)) => HoloPoly::monomial(1, Exponent(vec![*a]), GQ::from_int(*c)),
        })
        .collect();
    debug_assert_eq!(comps.len(), n);
    CurveGerm::at_origin(comps).ok()
}

/// All monomial curves within the budget whose exponents are coprime
/// (`γ(t^m)` has the same ratio as `γ`).
pub fn monomial_curves(n: usize, height: i64, max_exp: u32) -> Vec<CurveGerm> {
    let mut options: Vec<Option<(i64, u32)>> = vec![None];
    for a in 1..=max_exp {
        for c in 1..=height {
            options.push(Some((c, a)));
            options.push(Some((-c, a)));
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let parts: Vec<Option<(i64, u32)>> = idx.iter().map(|&i| options[i]).collect();
        let g = parts.iter().flatten().fold(0u32, |acc, &(_, a)| acc.gcd(&a));
        if g == 1 {
            if let Some(c) = mono_curve(n, &parts) {
                out.push(c);
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < options.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Components `0`, `±t^a` or `±t^a ± t^b` (`a < b <= max_exp`), for `n <= 3`.
pub fn binomial_curves(n: usize, max_exp: u32) -> Vec<CurveGerm> {
    if n > 3 {
        return Vec::new();
    }
    let mut options: Vec<HoloPoly> = vec![HoloPoly::zero(1)];
    let t = |a: u32, c: i64| HoloPoly::monomial(1, Exponent(vec![a]), GQ::from_int(c));
    for a in 1..=max_exp {
        for c in [1, -1] {
            options.push(t(a, c));
            for b in (a + 1)..=max_exp {
                for d in [1, -1] {
                    options.push(t(a, c).add(&t(b, d)));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let comps: Vec<HoloPoly> = idx.iter().map(|&i| options[i].clone()).collect();
        if comps.iter().any(|c| c.terms().len() == 2) {
            if let Ok(c) = CurveGerm::at_origin(comps) {
                out.push(c);
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < options.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Small integer combinations of a basis, up to sign.
fn direction_candidates(basis: &[Vec<GQ>], n: usize) -> Vec<Vec<GQ>> {
    let kappa = basis.len();
    let mut out: Vec<Vec<GQ>> = Vec::new();
    let mut push = |v: Vec<GQ>| {
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            let v = if first.re < num_rational::BigRational::zero() || (first.re.is_zero() && first.im < num_rational::BigRational::zero()) {
                v.iter().map(|x| -x.clone()).collect()
            } else {
                v
            };
            if !out.contains(&v) {
                out.push(v);
            }
        }
    };
    let combine = |coeffs: &[i64]| -> Vec<GQ> {
        let mut v = vec![GQ::zero(); n];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                for i in 0..n {
                    v[i] += &(&b[i] * &GQ::from_int(*c));
                }
            }
        }
        v
    };
    if kappa <= 4 {
        let total = 3usize.pow(kappa as u32);
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<i64> = (0..kappa)
                .map(|_| {
                    let d = (c % 3) as i64 - 1;
                    c /= 3;
                    d
                })
                .collect();
            push(combine(&coeffs));
        }
    } else {
        for i in 0..kappa {
            let mut e = vec![0i64; kappa];
            e[i] = 1;
            push(combine(&e));
            for j in (i + 1)..kappa {
                for s in [1, -1] {
                    let mut e = vec![0i64; kappa];
                    e[i] = 1;
                    e[j] = s;
                    push(combine(&e));
                }
            }
        }
    }
    out
}

fn gradient_at(f: &HoloPoly, v: &[GQ]) -> Vec<GQ> {
    (0..f.nvars()).map(|i| f.derivative(i).eval(v)).collect()
}

/// Extends `t·v` degree by degree so that every piece vanishes to higher
/// order; stops at `max_deg` or when the linear system is inconsistent.
pub fn lift_curve(pieces: &[&HoloPoly], v: &[GQ], max_deg: u32) -> Option<CurveGerm> {
    let n = v.len();
    let i0 = v.iter().position(|x| !x.is_zero())?;
    let mut coeffs: Vec<Vec<GQ>> = v.iter().map(|x| vec![x.clone()]).collect();
    let inits: Vec<(u32, Vec<GQ>)> = pieces
        .iter()
        .map(|p| (p.order().unwrap_or(0), gradient_at(&p.initial_form(), v)))
        .collect();
    let base = vec![GQ::zero(); n];
    for j in 2..=max_deg {
        let cur = CurveGerm::from_coeffs(base.clone(), &coeffs).ok()?;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (p, (e, grad)) in pieces.iter().zip(&inits) {
            let target = j + e - 1;
            let series = holo_compose_trunc(p, &cur, target);
            rows.push(grad.clone());
            rhs.push(-series[target as usize].clone());
        }
        let mut pin = vec![GQ::zero(); n];
        pin[i0] = GQ::one();
        rows.push(pin);
        rhs.push(GQ::zero());
        let Some(sol) = Matrix::from_rows(rows).solve(&rhs) else { break };
        for (c, s) in coeffs.iter_mut().zip(sol) {
            c.push(s);
        }
    }
    CurveGerm::from_coeffs(base, &coeffs).ok()
}

/// `(S, v)` pairs: subsets of at most three pieces and tangent directions
/// on which their initial forms vanish.
fn lift_jobs(pieces: &[HoloPoly], n: usize) -> Vec<(Vec<usize>, Vec<GQ>)> {
    let m = pieces.len();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    for a in 0..m {
        subsets.push(vec![a]);
        for b in (a + 1)..m {
            subsets.push(vec![a, b]);
            for c in (b + 1)..m {
                subsets.push(vec![a, b, c]);
            }
        }
    }
    let mut jobs = Vec::new();
    for s in subsets {
        let linear: Vec<Vec<GQ>> = s
            .iter()
            .filter(|&&i| pieces[i].order() == Some(1))
            .map(|&i| pieces[i].linear_coeffs())
            .collect();
        let kernel = if linear.is_empty() {
            Matrix::identity(n).to_rows()
        } else {
            Matrix::from_rows(linear).nullspace()
        };
        if kernel.is_empty() {
            continue;
        }
        for v in direction_candidates(&kernel, n) {
            if s.iter().all(|&i| pieces[i].initial_form().eval(&v).is_zero()) {
                jobs.push((s.clone(), v));
            }
        }
    }
    jobs
}

fn better(a: &Witness, b: &Witness) -> bool {
    a.ratio > b.ratio || (a.ratio == b.ratio && a.curve.tie_cmp(&b.curve).is_lt())
}

/// Runs every template and returns the best verified witness.
pub fn search(target: Target<'_>, pieces: &[HoloPoly], budget: &SearchBudget) -> Result<SearchOutcome> {
    if budget.templates.is_empty() {
        return Err(Error::EmptyTemplates);
    }
    if target.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let n = target.nvars();
    let mut candidates: Vec<CurveGerm> = Vec::new();
    if budget.templates.contains(&Template::Monomial) {
        candidates.extend(monomial_curves(n, budget.max_coeff_height, budget.max_exponent));
    }
    if budget.templates.contains(&Template::Binomial) {
        candidates.extend(binomial_curves(n, budget.max_exponent.min(3)));
    }
    if budget.templates.contains(&Template::Lifted) {
        let pieces: Vec<HoloPoly> = {
            let mut v: Vec<HoloPoly> = Vec::new();
            for p in pieces {
                if p.order().is_some_and(|o| o >= 1) && !v.contains(p) {
                    v.push(p.clone());
                }
            }
            v
        };
        let jobs = lift_jobs(&pieces, n);
        let lifted: Vec<Option<CurveGerm>> = jobs
            .par_iter()
            .map(|(s, v)| {
                let chosen: Vec<&HoloPoly> = s.iter().map(|&i| &pieces[i]).collect();
                lift_curve(&chosen, v, budget.max_curve_degree)
            })
            .collect();
        candidates.extend(lifted.into_iter().flatten());
    }
    let examined = candidates.len();
    let scored: Vec<Witness> = candidates
        .into_par_iter()
        .map(|c| {
            let o = target.order(&c);
            Witness::new(c, o)
        })
        .collect();
    let mut best: Option<Witness> = None;
    for w in scored {
        if best.as_ref().is_none_or(|b| better(&w, b)) {
            best = Some(w);
        }
    }
    let best = best.map(|w| trim(target, w));
    Ok(SearchOutcome { best, examined })
}

/// Drops high-order terms of a witness while its order is unchanged.
fn trim(target: Target<'_>, w: Witness) -> Witness {
    let Order::Finite(_) = w.order else { return w };
    for d in w.curve.nu()..w.curve.degree() {
        let comps: Vec<HoloPoly> = w.curve.components().iter().map(|c| c.truncate(d)).collect();
        if let Ok(c) = CurveGerm::new(w.curve.base().to_vec(), comps) {
            if target.order(&c) == w.order {
                return Witness::new(c, w.order);
            }
        }
    }
    w
}

/// Re-evaluates a witness against the target.
pub fn reverify(target: Target<'_>, w: &Witness) -> bool {
    let o = target.order(&w.curve);
    o == w.order && o.ratio(w.curve.nu()) == w.ratio
}

pub fn lower_from(outcome: &SearchOutcome) -> TypeValue {
    outcome.best.as_ref().map(|w| w.ratio.clone()).unwrap_or(TypeValue::int(0))
}
