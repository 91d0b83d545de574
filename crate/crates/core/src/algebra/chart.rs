//! Affine changes of variables: recentering at a point, restriction to a
//! complex linear subspace through the base point, and invertible linear
//! coordinate changes.

use num_traits::Zero;

use super::linalg::Matrix;
use super::poly::{HermPoly, HoloPoly};
use super::scalar::GaussianRational as GQ;
use crate::error::{Error, Result};

/// The subspace `{w = 0}` cut out by `q - 1` linear forms, together with a
/// linear parametrization `L: ℂ^{n-q+1} → ℂⁿ` of it (columns of `param`).
#[derive(Clone, Debug)]
pub struct LinearSubspaceChart {
    n: usize,
    q: usize,
    forms: Vec<HoloPoly>,
    param: Matrix,
}

impl LinearSubspaceChart {
    /// Builds the chart of `{w = 0}`. Forms must be homogeneous linear and
    /// independent, so the slice has dimension `n - len(forms)`.
    pub fn from_forms(n: usize, forms: Vec<HoloPoly>) -> Result<Self> {
        for (i, w) in forms.iter().enumerate() {
            if w.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.nvars(),
                });
            }
            if w.is_zero() || w.terms().keys().any(|e| e.degree() != 1) {
                return Err(Error::NotLinearForm(i));
            }
        }
        if forms.len() >= n {
            return Err(Error::BadQ { q: forms.len() + 1, n });
        }
        let rows: Vec<Vec<GQ>> = forms.iter().map(HoloPoly::linear_coeffs).collect();
        let basis = if rows.is_empty() {
            Matrix::identity(n).to_rows()
        } else {
            Matrix::from_rows(rows).nullspace()
        };
        let expected = n - forms.len();
        if basis.len() != expected {
            return Err(Error::DependentForms {
                expected,
                found: basis.len(),
            });
        }
        let mut param = Matrix::zeros(n, expected);
        for (j, v) in basis.iter().enumerate() {
            for i in 0..n {
                param[(i, j)] = v[i].clone();
            }
        }
        Ok(Self {
            n,
            q: forms.len() + 1,
            forms,
            param,
        })
    }

    /// The whole space (`q = 1`, no forms, identity parametrization).
    pub fn full(n: usize) -> Self {
        Self {
            n,
            q: 1,
            forms: Vec::new(),
            param: Matrix::identity(n),
        }
    }

    /// A chart with an explicit parametrization; the forms must vanish on its
    /// image and the matrix must have full column rank `n - q + 1`.
    pub fn with_param(n: usize, forms: Vec<HoloPoly>, param: Matrix) -> Result<Self> {
        let q = forms.len() + 1;
        if param.nrows() != n || q > n || param.ncols() != n - q + 1 {
            return Err(Error::DimensionMismatch {
                expected: n - q.min(n) + 1,
                found: param.ncols(),
            });
        }
        if param.rank() != param.ncols() {
            return Err(Error::InvalidParameter("parametrization is not of full column rank".into()));
        }
        let chart = Self { n, q, forms, param };
        for (i, w) in chart.forms.iter().enumerate() {
            if !w.compose(&chart.images()).is_zero() {
                return Err(Error::CurveNotInSlice { form: i });
            }
        }
        Ok(chart)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn slice_dim(&self) -> usize {
        self.param.ncols()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn forms(&self) -> &[HoloPoly] {
        &self.forms
    }

    pub fn param(&self) -> &Matrix {
        &self.param
    }

    /// `z_i = Σ_j param[i][j]·u_j` as polynomials in the slice coordinates.
    pub fn images(&self) -> Vec<HoloPoly> {
        (0..self.n)
            .map(|i| HoloPoly::linear(self.param.row(i)))
            .collect()
    }
}

/// `r(z + p, conj(z + p))`, expanded exactly.
pub fn translate(r: &HermPoly, p: &[GQ]) -> Result<HermPoly> {
    let n = r.nvars();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    if p.iter().all(Zero::is_zero) {
        return Ok(r.clone());
    }
    Ok(r.compose(&shift_images(p)))
}

/// Holomorphic analogue of [`translate`].
pub fn translate_holo(f: &HoloPoly, p: &[GQ]) -> Result<HoloPoly> {
    let n = f.nvars();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    if p.iter().all(Zero::is_zero) {
        return Ok(f.clone());
    }
    Ok(f.compose(&shift_images(p)))
}

fn shift_images(p: &[GQ]) -> Vec<HoloPoly> {
    let n = p.len();
    (0..n)
        .map(|i| HoloPoly::var(n, i).add(&HoloPoly::constant(n, p[i].clone())))
        .collect()
}

/// Restriction `r ∘ L` to the slice, in `n - q + 1` variables.
pub fn pullback(r: &HermPoly, chart: &LinearSubspaceChart) -> Result<HermPoly> {
    if r.nvars() != chart.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: chart.ambient_dim(),
            found: r.nvars(),
        });
    }
    Ok(r.compose(&chart.images()))
}

pub fn pullback_holo(f: &HoloPoly, chart: &LinearSubspaceChart) -> Result<HoloPoly> {
    if f.nvars() != chart.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: chart.ambient_dim(),
            found: f.nvars(),
        });
    }
    Ok(f.compose(&chart.images()))
}

/// `r(A u)` for an `n × m` matrix `A`.
pub fn linear_change(r: &HermPoly, a: &Matrix) -> Result<HermPoly> {
    if a.nrows() != r.nvars() {
        return Err(Error::DimensionMismatch {
            expected: r.nvars(),
            found: a.nrows(),
        });
    }
    let images: Vec<HoloPoly> = (0..a.nrows()).map(|i| HoloPoly::linear(a.row(i))).collect();
    Ok(r.compose(&images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{herm_from_text, holo_from_text};

    #[test]
    fn translate_identity_and_expansion() {
        let r = herm_from_text("|z1|^2", 1).unwrap();
        assert_eq!(translate(&r, &[GQ::zero()]).unwrap(), r);
        let t = translate(&r, &[GQ::from_int(1)]).unwrap();
        assert_eq!(t, herm_from_text("|z1|^2 + 2 Re(z1) + 1", 1).unwrap());
        assert!(translate(&r, &[GQ::zero(), GQ::zero()]).is_err());
    }

    #[test]
    fn translate_value_consistency() {
        let r = herm_from_text("Re(z4) + |z1^2 - z2*z3|^2 + |z2|^4", 4).unwrap();
        let p = vec![GQ::zero(), GQ::from_ratio(1, 3), GQ::from_int(1), GQ::i()];
        let t = translate(&r, &p).unwrap();
        let zero = vec![GQ::zero(); 4];
        assert_eq!(t.eval(&zero), r.eval(&p));
    }

    #[test]
    fn pullback_kills_re_z4_on_hyperplane() {
        let r = herm_from_text("Re(z4) + |z1^2 - z2*z3|^2 + |z2|^4", 4).unwrap();
        let w = holo_from_text("z4", 4).unwrap();
        let chart = LinearSubspaceChart::from_forms(4, vec![w]).unwrap();
        let got = pullback(&r, &chart).unwrap();
        assert_eq!(got, herm_from_text("|z1^2 - z2*z3|^2 + |z2|^4", 3).unwrap());
    }

    #[test]
    fn full_chart_is_identity_and_diagonal_substitution() {
        let r = herm_from_text("|z1|^2 + |z2|^2", 2).unwrap();
        assert_eq!(pullback(&r, &LinearSubspaceChart::full(2)).unwrap(), r);
        let w = holo_from_text("z2 - z1", 2).unwrap();
        let chart = LinearSubspaceChart::from_forms(2, vec![w]).unwrap();
        assert_eq!(pullback(&r, &chart).unwrap(), herm_from_text("2*|z1|^2", 1).unwrap());
    }

    #[test]
    fn chart_rejects_bad_forms() {
        let w1 = holo_from_text("z1 + z2", 3).unwrap();
        let w2 = holo_from_text("2 z1 + 2 z2", 3).unwrap();
        assert!(matches!(
            LinearSubspaceChart::from_forms(3, vec![w1, w2]),
            Err(Error::DependentForms { .. })
        ));
        let quad = holo_from_text("z1^2", 3).unwrap();
        assert!(matches!(LinearSubspaceChart::from_forms(3, vec![quad]), Err(Error::NotLinearForm(0))));
    }

    #[test]
    fn forms_vanish_on_parametrization() {
        let w = holo_from_text("z1 + 2 z2 - i z3 + z4", 4).unwrap();
        let chart = LinearSubspaceChart::from_forms(4, vec![w.clone()]).unwrap();
        assert!(w.compose(&chart.images()).is_zero());
        assert_eq!(chart.param().rank(), 3);
    }
}
