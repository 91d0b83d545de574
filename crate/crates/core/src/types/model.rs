use serde::Serialize;

use crate::algebra::{translate, GaussianRational as GQ, HermPoly};
use crate::error::{Error, Result};

/// A real hypersurface presented by real polynomial generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypersurfaceModel {
    pub n: usize,
    pub gens: Vec<HermPoly>,
    pub label: String,
}

impl HypersurfaceModel {
    pub fn new(n: usize, gens: Vec<HermPoly>, label: impl Into<String>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.nvars(),
            });
        }
        Ok(Self {
            n,
            gens,
            label: label.into(),
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(HermPoly::degree).max().unwrap_or(0)
    }

    /// `2·deg + 1`.
    pub fn default_k(&self) -> u32 {
        2 * self.max_degree() + 1
    }

    /// Generators recentered so that `p` becomes the origin.
    pub fn at(&self, p: &[GQ]) -> Result<Vec<HermPoly>> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.len(),
            });
        }
        self.gens.iter().map(|r| translate(r, p)).collect()
    }

    /// The model with every generator truncated at degree `k`.
    pub fn truncated(&self, k: u32) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|r| crate::decomp::truncate(r, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, gens, format!("{} (k={k})", self.label))
    }

    /// Whether `p` lies on every generator's zero set.
    pub fn contains(&self, p: &[GQ]) -> bool {
        p.len() == self.n && self.gens.iter().all(|r| num_traits::Zero::is_zero(&r.eval(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::herm_from_text;

    #[test]
    fn construction_and_translation() {
        assert_eq!(HypersurfaceModel::new(2, vec![], "x"), Err(Error::EmptyGenerators));
        let r = herm_from_text("Re(z2) + |z1|^2", 2).unwrap();
        let m = HypersurfaceModel::new(2, vec![r], "m").unwrap();
        assert_eq!(m.default_k(), 5);
        let p = vec![GQ::from_int(1), GQ::from_int(-1)];
        assert!(m.contains(&p));
        let local = m.at(&p).unwrap();
        assert!(num_traits::Zero::is_zero(&local[0].eval(&[GQ::from_int(0), GQ::from_int(0)])));
        assert!(matches!(m.at(&p[..1]), Err(Error::DimensionMismatch { .. })));
    }
}
