//! Taylor truncation and the decomposition `r_k = Re h + ‖f‖² − ‖g‖²`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::{BiExponent, Exponent, GaussianRational as GQ, HermPoly, HoloPoly, Matrix};
use crate::error::{Error, Result};
use crate::ideals::HoloIdeal;
use crate::rng;

/// `r_k`: drops every term of total degree above `k`.
pub fn truncate(r: &HermPoly, k: u32) -> Result<HermPoly> {
    if k < 1 {
        return Err(Error::BadTruncation(k));
    }
    Ok(r.truncate(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub k: u32,
    pub n: usize,
    /// Nonconstant holomorphic monomials of the mixed part, graded-lex.
    pub basis: Vec<Exponent>,
    /// `C[i][j]` is the coefficient of `z^basis[j] · conj(z^basis[i])`.
    pub c: Matrix,
    pub h: HoloPoly,
    pub f: Vec<HoloPoly>,
    pub g: Vec<HoloPoly>,
    /// `r(0) != 0`: every type at the point is zero.
    pub nonvanishing: bool,
}

impl Decomposition {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn monomials(&self) -> Vec<HoloPoly> {
        monomial_vector(self.n, &self.basis)
    }

    /// `Re h + Σ|f_j|² − Σ|g_j|²`.
    pub fn reconstruct(&self) -> HermPoly {
        let mut acc = self.h.re();
        for f in &self.f {
            acc = acc.add(&f.abs_sq());
        }
        for g in &self.g {
            acc = acc.sub(&g.abs_sq());
        }
        acc
    }

    /// `m*·C·m`, the mixed part.
    pub fn mixed_part(&self) -> HermPoly {
        hermitian_form(self.n, &self.basis, &self.c)
    }

    pub fn psd(&self) -> bool {
        psd_flag(self)
    }

    /// Entry of `C` addressed by monomials rather than positions.
    pub fn entry(&self, row: &Exponent, col: &Exponent) -> Option<GQ> {
        let i = self.basis.iter().position(|e| e == row)?;
        let j = self.basis.iter().position(|e| e == col)?;
        Some(self.c[(i, j)].clone())
    }
}

fn monomial_vector(n: usize, basis: &[Exponent]) -> Vec<HoloPoly> {
    basis.iter().map(|e| HoloPoly::monomial(n, e.clone(), GQ::one())).collect()
}

fn hermitian_form(n: usize, basis: &[Exponent], c: &Matrix) -> HermPoly {
    let mut terms = Vec::new();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            if !c[(i, j)].is_zero() {
                terms.push((BiExponent::new(bj.clone(), bi.clone()), c[(i, j)].clone()));
            }
        }
    }
    HermPoly::from_terms(n, terms).expect("Hermitian matrix gives a real form")
}

fn mixed_basis(r: &HermPoly) -> BTreeSet<Exponent> {
    let mut set = BTreeSet::new();
    for e in r.terms().keys() {
        if !e.alpha.is_zero() && !e.beta.is_zero() {
            set.insert(e.alpha.clone());
            set.insert(e.beta.clone());
        }
    }
    set
}

/// Pure part `h` with `Re h` reproducing the terms with `α = 0` or `β = 0`.
fn pure_part(r: &HermPoly) -> HoloPoly {
    let n = r.nvars();
    let mut h = HoloPoly::zero(n);
    for (e, c) in r.terms() {
        if e.beta.is_zero() {
            let c = if e.alpha.is_zero() { c.clone() } else { c * &GQ::from_int(2) };
            h.add_term(e.alpha.clone(), c);
        }
    }
    h
}

fn matrix_over(r: &HermPoly, basis: &[Exponent]) -> Matrix {
    let mut c = Matrix::zeros(basis.len(), basis.len());
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            c[(i, j)] = r.coeff(&BiExponent::new(bj.clone(), bi.clone()));
        }
    }
    c
}

/// `f = ½(C+I)m`, `g = ½(C−I)m`.
fn split(n: usize, basis: &[Exponent], c: &Matrix) -> (Vec<HoloPoly>, Vec<HoloPoly>) {
    let size = basis.len();
    let id = Matrix::identity(size);
    let half = GQ::half();
    let plus = c.add(&id).scale(&half);
    let minus = c.sub(&id).scale(&half);
    let m = monomial_vector(n, basis);
    let apply = |a: &Matrix| -> Vec<HoloPoly> {
        (0..size)
            .map(|i| {
                let mut acc = HoloPoly::zero(n);
                for (j, mj) in m.iter().enumerate() {
                    if !a[(i, j)].is_zero() {
                        acc = acc.add(&mj.scale(&a[(i, j)]));
                    }
                }
                acc
            })
            .collect()
    };
    (apply(&plus), apply(&minus))
}

/// Decomposition of `r_k` over the monomials of its own mixed part.
pub fn decompose(r: &HermPoly, k: u32) -> Result<Decomposition> {
    let rk = truncate(r, k)?;
    let basis: Vec<Exponent> = mixed_basis(&rk).into_iter().collect();
    decompose_over(&rk, k, basis)
}

/// Decomposition over a prescribed basis containing the mixed monomials of
/// `r_k`; missing rows and columns of `C` are zero.
pub fn decompose_over(r: &HermPoly, k: u32, basis: Vec<Exponent>) -> Result<Decomposition> {
    let rk = truncate(r, k)?;
    let needed = mixed_basis(&rk);
    if !needed.iter().all(|e| basis.contains(e)) {
        return Err(Error::BasisSizeMismatch {
            unitary: basis.len(),
            basis: needed.len(),
        });
    }
    let n = rk.nvars();
    let c = matrix_over(&rk, &basis);
    let (f, g) = split(n, &basis, &c);
    let h = pure_part(&rk);
    let nonvanishing = !h.constant_term().is_zero();
    Ok(Decomposition {
        k,
        n,
        basis,
        c,
        h,
        f,
        g,
        nonvanishing,
    })
}

/// Exact `C = Σ d_k l_k l_k*` with `d_k > 0`, or `None` if `C` is not PSD.
pub fn ldl_psd(c: &Matrix) -> Option<Vec<(BigRational, Vec<GQ>)>> {
    let size = c.nrows();
    let mut a = c.clone();
    let mut out = Vec::new();
    let mut active: Vec<usize> = (0..size).collect();
    loop {
        if active.is_empty() {
            return Some(out);
        }
        if active.iter().any(|&i| a[(i, i)].re.is_negative()) {
            return None;
        }
        let Some(pos) = active.iter().position(|&i| !a[(i, i)].is_zero()) else {
            // Zero diagonal: PSD only if the remaining block vanishes.
            let all_zero = active.iter().all(|&i| active.iter().all(|&j| a[(i, j)].is_zero()));
            return all_zero.then_some(out);
        };
        let p = active.remove(pos);
        let d = a[(p, p)].re.clone();
        let inv = GQ::real(d.recip());
        let mut l = vec![GQ::zero(); size];
        l[p] = GQ::one();
        for &i in &active {
            l[i] = &a[(i, p)] * &inv;
        }
        for &i in &active {
            for &j in &active {
                let delta = (&l[i] * &l[j].conj()).scale(&d);
                a[(i, j)] -= &delta;
            }
        }
        out.push((d, l));
    }
}

pub fn psd_flag(d: &Decomposition) -> bool {
    ldl_psd(&d.c).is_some()
}

/// Weighted square pieces: `m*Cm = Σ d_k |s_k|²` with `s_k = l_k*·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarePieces {
    pub weights: Vec<BigRational>,
    pub pieces: Vec<HoloPoly>,
}

impl SquarePieces {
    pub fn sum_of_squares(&self, n: usize) -> HermPoly {
        let mut acc = HermPoly::zero(n);
        for (w, s) in self.weights.iter().zip(&self.pieces) {
            acc = acc.add(&s.abs_sq().scale(w));
        }
        acc
    }
}

pub fn square_pieces(d: &Decomposition) -> Option<SquarePieces> {
    let ldl = ldl_psd(&d.c)?;
    let m = d.monomials();
    let mut weights = Vec::new();
    let mut pieces = Vec::new();
    for (w, l) in ldl {
        let mut s = HoloPoly::zero(d.n);
        for (lj, mj) in l.iter().zip(&m) {
            if !lj.is_zero() {
                s = s.add(&mj.scale(&lj.conj()));
            }
        }
        weights.push(w);
        pieces.push(s);
    }
    Some(SquarePieces { weights, pieces })
}

/// A unitary matrix with Gaussian-rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalUnitary {
    u: Matrix,
}

impl RationalUnitary {
    pub fn identity(size: usize) -> Self {
        Self {
            u: Matrix::identity(size),
        }
    }

    pub fn minus_identity(size: usize) -> Self {
        Self {
            u: Matrix::identity(size).scale(&GQ::from_int(-1)),
        }
    }

    /// Checks `U*U = I` exactly.
    pub fn from_matrix(u: Matrix) -> Result<Self> {
        if !u.is_square() || !u.conj_transpose().mul(&u).is_identity() {
            return Err(Error::InvalidParameter("matrix is not unitary".into()));
        }
        Ok(Self { u })
    }

    pub fn size(&self) -> usize {
        self.u.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.u
    }

    /// Cayley transform of a seeded random skew-Hermitian matrix.
    pub fn sample<R: Rng>(rng: &mut R, size: usize) -> Self {
        loop {
            let s = rng::skew_hermitian(rng, size, 2, 2);
            if let Ok(u) = cayley_unitary(&s) {
                return u;
            }
        }
    }
}

/// `U = (I − S)(I + S)⁻¹`.
pub fn cayley_unitary(s: &Matrix) -> Result<RationalUnitary> {
    if !s.is_skew_hermitian() {
        return Err(Error::NotSkewHermitian);
    }
    let id = Matrix::identity(s.nrows());
    let inv = id.add(s).inverse().ok_or(Error::Resample)?;
    Ok(RationalUnitary {
        u: id.sub(s).mul(&inv),
    })
}

/// Union of the mixed monomials of every `r_k`, graded-lex.
pub fn union_basis(rs: &[HermPoly], k: u32) -> Result<Vec<Exponent>> {
    let mut set = BTreeSet::new();
    for r in rs {
        set.extend(mixed_basis(&truncate(r, k)?));
    }
    Ok(set.into_iter().collect())
}

/// `I(U)`: generated by every `h_r` and the components of `f_r − U·g_r`,
/// with all decompositions taken over the union basis.
pub fn twisted_ideal(rs: &[HermPoly], u: &RationalUnitary, k: u32) -> Result<HoloIdeal> {
    let first = rs.first().ok_or(Error::EmptyGenerators)?;
    let n = first.nvars();
    let basis = union_basis(rs, k)?;
    if u.size() != basis.len() {
        return Err(Error::BasisSizeMismatch {
            unitary: u.size(),
            basis: basis.len(),
        });
    }
    let mut gens = Vec::new();
    for r in rs {
        let d = decompose_over(r, k, basis.clone())?;
        gens.push(d.h.clone());
        for i in 0..basis.len() {
            let mut acc = d.f[i].clone();
            for (j, gj) in d.g.iter().enumerate() {
                if !u.u[(i, j)].is_zero() {
                    acc = acc.sub(&gj.scale(&u.u[(i, j)]));
                }
            }
            gens.push(acc);
        }
    }
    if gens.iter().all(HoloPoly::is_zero) {
        gens.push(HoloPoly::zero(n));
    }
    HoloIdeal::new(n, gens)
}

#[derive(Serialize)]
struct DecompositionDump {
    k: u32,
    n: usize,
    basis: Vec<String>,
    c: Vec<Vec<String>>,
    h: String,
    f: Vec<String>,
    g: Vec<String>,
    psd: bool,
    nonvanishing: bool,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n;
        DecompositionDump {
            k: self.k,
            n,
            basis: self.monomials().iter().map(ToString::to_string).collect(),
            c: self.c.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            h: self.h.to_string(),
            f: self.f.iter().map(ToString::to_string).collect(),
            g: self.g.iter().map(ToString::to_string).collect(),
            psd: self.psd(),
            nonvanishing: self.nonvanishing,
        }
        .serialize(s)
    }
}
