//! Finite-dimensional nilpotent representations of bound quivers over `F_q`:
//! Hom and extension spaces, isomorphism testing, automorphism counts, Hall
//! numbers and isoclass tables.

mod category;
mod decomp;
mod hom;
mod submod;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Coords, Mat};
use crate::quiver::BoundQuiver;

pub use category::{Fingerprint, IsoClass, ModCat};
pub use decomp::{aut_count_by_enumeration, decompose, EndStructure};
pub use hom::{ext_data, extension_module, hom_dim, hom_space, ExtData};
pub use submod::{for_each_submodule, Subquotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid representation: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

/// A representation: one vector space `F_q^{dims[i]}` per vertex and one
/// matrix of shape `dims[target] x dims[source]` per arrow of the bound quiver.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqRep {
    pub q: u32,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl FqRep {
    pub fn zero(bq: &BoundQuiver, q: u32) -> Self {
        Self::zero_with_dims(bq, q, vec![0; bq.n_vertices()])
    }

    pub fn zero_with_dims(bq: &BoundQuiver, q: u32, dims: Vec<usize>) -> Self {
        let maps = bq
            .qbar
            .arrows
            .iter()
            .map(|a| Mat::zeros(dims[a.target], dims[a.source]))
            .collect();
        Self { q, dims, maps }
    }

    /// The simple module at vertex `i`.
    pub fn simple(bq: &BoundQuiver, q: u32, i: usize) -> Self {
        let mut dims = vec![0; bq.n_vertices()];
        dims[i] = 1;
        Self::zero_with_dims(bq, q, dims)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dims_i64(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Mat::diag(a, b))
            .collect();
        Self {
            q: self.q,
            dims,
            maps,
        }
    }

    /// Composite of the maps along a path (arrows in traversal order).
    pub fn eval_path(&self, bq: &BoundQuiver, path: &[usize]) -> Mat {
        let start = bq.qbar.arrows[path[0]].source;
        let mut acc = Mat::identity(self.dims[start]);
        for &a in path {
            acc = self.maps[a].mul(&acc, self.q);
        }
        acc
    }

    /// Checks shapes, relations and nilpotency.
    pub fn validate(&self, bq: &BoundQuiver) -> Result<(), RepError> {
        if self.dims.len() != bq.n_vertices() || self.maps.len() != bq.qbar.arrows.len() {
            return Err(RepError::Invalid("wrong number of spaces or maps".into()));
        }
        for (k, a) in bq.qbar.arrows.iter().enumerate() {
            let m = &self.maps[k];
            if m.rows != self.dims[a.target] || m.cols != self.dims[a.source] {
                return Err(RepError::Invalid(format!("map `{}` has wrong shape", a.label)));
            }
            if m.data.iter().any(|&x| x >= self.q) {
                return Err(RepError::Invalid(format!("map `{}` has entries outside F_q", a.label)));
            }
        }
        for rel in &bq.relations {
            let (w, u) = {
                let p = &rel.terms[0].1;
                (bq.qbar.arrows[*p.last().unwrap()].target, bq.qbar.arrows[p[0]].source)
            };
            let mut acc = Mat::zeros(self.dims[w], self.dims[u]);
            for (c, path) in &rel.terms {
                let cc = c.rem_euclid(self.q as i64) as u32;
                acc = acc.add(&self.eval_path(bq, path).scale(cc, self.q), self.q);
            }
            if !acc.is_zero() {
                return Err(RepError::Invalid("a relation does not vanish".into()));
            }
        }
        if !self.is_nilpotent(bq) {
            return Err(RepError::Invalid("representation is not nilpotent".into()));
        }
        Ok(())
    }

    /// Nilpotent iff the total arrow operator on `sum_i M_i` is nilpotent,
    /// which is equivalent to every cycle composite being nilpotent.
    pub fn is_nilpotent(&self, bq: &BoundQuiver) -> bool {
        let n = self.total_dim();
        if n == 0 {
            return true;
        }
        let offs = self.offsets();
        let mut big = Mat::zeros(n, n);
        for (k, a) in bq.qbar.arrows.iter().enumerate() {
            let m = &self.maps[k];
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let (i, j) = (offs[a.target] + r, offs[a.source] + c);
                    let x = (big.get(i, j) + m.get(r, c)) % self.q;
                    big.set(i, j, x);
                }
            }
        }
        big.pow(n, self.q).is_zero()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.dims.len());
        let mut s = 0;
        for &d in &self.dims {
            offs.push(s);
            s += d;
        }
        offs
    }

    /// Restriction to a subrepresentation spanned by the given per-vertex
    /// bases (columns). The subspaces must be invariant.
    pub fn restrict(&self, bq: &BoundQuiver, bases: &[Mat]) -> Self {
        let coords: Vec<Coords> = bases.iter().map(|b| Coords::new(b, self.q)).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
        let maps = bq
            .qbar
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let img = self.maps[k].mul(&bases[a.source], self.q);
                coords[a.target].of_mat(&img)
            })
            .collect();
        Self {
            q: self.q,
            dims,
            maps,
        }
    }

    pub fn from_json(bq: &BoundQuiver, q: u32, s: &str) -> Result<Self, RepError> {
        let spec: RepSpec =
            serde_json::from_str(s).map_err(|e| RepError::Invalid(e.to_string()))?;
        spec.build(bq, q)
    }

    pub fn to_json(&self, bq: &BoundQuiver) -> String {
        let dims = bq
            .qbar
            .vertices
            .iter()
            .zip(&self.dims)
            .map(|(v, d)| (v.clone(), *d))
            .collect();
        let maps = bq
            .qbar
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| (a.label.clone(), m.to_rows()))
            .collect();
        serde_json::to_string(&RepSpec { dims, maps }).expect("serializable")
    }
}

/// JSON form of a module: dimensions per vertex id and row-major matrices
/// per arrow label (shape target x source). Omitted maps are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepSpec {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<u32>>>,
}

impl RepSpec {
    pub fn build(&self, bq: &BoundQuiver, q: u32) -> Result<FqRep, RepError> {
        let mut dims = vec![0; bq.n_vertices()];
        for (v, d) in &self.dims {
            let i = bq
                .qbar
                .vertex_index(v)
                .map_err(|e| RepError::Invalid(e.to_string()))?;
            dims[i] = *d;
        }
        let mut rep = FqRep::zero_with_dims(bq, q, dims);
        for (label, rows) in &self.maps {
            let k = bq
                .qbar
                .arrow_index(label)
                .map_err(|e| RepError::Invalid(e.to_string()))?;
            let a = &bq.qbar.arrows[k];
            let m = if rows.is_empty() {
                Mat::zeros(rep.dims[a.target], 0)
            } else {
                if rows.iter().any(|r| r.len() != rows[0].len()) {
                    return Err(RepError::Invalid(format!("ragged matrix for `{label}`")));
                }
                Mat::from_rows(rows, q)
            };
            if m.rows != rep.dims[a.target] || (m.cols != rep.dims[a.source] && m.rows > 0) {
                return Err(RepError::Invalid(format!("map `{label}` has wrong shape")));
            }
            if m.rows > 0 {
                rep.maps[k] = m;
            }
        }
        rep.validate(bq)?;
        Ok(rep)
    }
}


#[cfg(test)]
mod category_tests;
