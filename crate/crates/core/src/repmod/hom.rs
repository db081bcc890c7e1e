//! Hom spaces and extension cocycles.

use crate::linalg::{all_vectors, Mat};
use crate::quiver::BoundQuiver;

use super::FqRep;

/// Offsets of the per-vertex blocks `f_i : M_i -> N_i` in the flattened
/// unknown vector.
fn hom_layout(m: &FqRep, n: &FqRep) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut s = 0;
    for i in 0..m.dims.len() {
        offs.push(s);
        s += n.dims[i] * m.dims[i];
    }
    (offs, s)
}

/// Linear system whose kernel is `Hom(M, N)`: for every arrow `a : s -> t`,
/// `f_t M(a) - N(a) f_s = 0`.
fn hom_system(bq: &BoundQuiver, m: &FqRep, n: &FqRep) -> (Mat, Vec<usize>, usize) {
    let p = m.q;
    let (offs, nvars) = hom_layout(m, n);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (k, a) in bq.qbar.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[k];
        let na = &n.maps[k];
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![0u32; nvars];
                // (f_t M(a))[r][c] = sum_k f_t[r][k] M(a)[k][c]
                for kk in 0..m.dims[t] {
                    let x = ma.get(kk, c);
                    if x != 0 {
                        let idx = offs[t] + r * m.dims[t] + kk;
                        row[idx] = (row[idx] + x) % p;
                    }
                }
                // (N(a) f_s)[r][c] = sum_k N(a)[r][k] f_s[k][c]
                for kk in 0..n.dims[s] {
                    let x = na.get(r, kk);
                    if x != 0 {
                        let idx = offs[s] + kk * m.dims[s] + c;
                        row[idx] = (row[idx] + p - x) % p;
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let mat = if rows.is_empty() {
        Mat::zeros(0, nvars)
    } else {
        Mat::from_rows(&rows, p)
    };
    (mat, offs, nvars)
}

fn unflatten(m: &FqRep, n: &FqRep, offs: &[usize], v: &[u32]) -> Vec<Mat> {
    (0..m.dims.len())
        .map(|i| {
            let mut f = Mat::zeros(n.dims[i], m.dims[i]);
            for r in 0..n.dims[i] {
                for c in 0..m.dims[i] {
                    f.set(r, c, v[offs[i] + r * m.dims[i] + c]);
                }
            }
            f
        })
        .collect()
}

/// An `F_q`-basis of `Hom(M, N)`, each element a tuple of vertex maps.
pub fn hom_space(bq: &BoundQuiver, m: &FqRep, n: &FqRep) -> Vec<Vec<Mat>> {
    let (sys, offs, nvars) = hom_system(bq, m, n);
    if nvars == 0 {
        return Vec::new();
    }
    sys.nullspace(m.q)
        .iter()
        .map(|v| unflatten(m, n, &offs, v))
        .collect()
}

pub fn hom_dim(bq: &BoundQuiver, m: &FqRep, n: &FqRep) -> usize {
    let (sys, _, nvars) = hom_system(bq, m, n);
    nvars - sys.rank(m.q)
}

/// Cocycle data for extensions `0 -> N -> E -> M -> 0`.
///
/// A cocycle assigns to every arrow `a : s -> t` a matrix `c_a : M_s -> N_t`
/// so that the block upper triangular maps `[[N(a), c_a], [0, M(a)]]` satisfy
/// the relations. Coboundaries `N(a) h_s - h_t M(a)` give isomorphic middle
/// terms, so `complement` (a complement of the coboundaries inside the
/// cocycles) enumerates each extension class exactly once.
#[derive(Debug, Clone)]
pub struct ExtData {
    pub offs: Vec<usize>,
    pub nvars: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub complement: Vec<Vec<u32>>,
}

impl ExtData {
    pub fn ext_dim(&self) -> usize {
        self.complement.len()
    }

    /// Every combination of the complement basis: one cocycle per class.
    pub fn classes(&self, q: u32) -> impl Iterator<Item = Vec<u32>> + '_ {
        all_vectors(self.complement.len(), q).map(move |coef| self.cocycle(&coef, q))
    }

    /// One cocycle per line in `Ext^1`, plus the split class. Classes on the
    /// same line have isomorphic middle terms.
    pub fn classes_up_to_scalar(&self, q: u32) -> impl Iterator<Item = Vec<u32>> + '_ {
        all_vectors(self.complement.len(), q)
            .filter(|coef| coef.iter().find(|&&x| x != 0).map_or(true, |&x| x == 1))
            .map(move |coef| self.cocycle(&coef, q))
    }

    fn cocycle(&self, coef: &[u32], q: u32) -> Vec<u32> {
        let mut c = vec![0u32; self.nvars];
        for (x, b) in coef.iter().zip(&self.complement) {
            if *x == 0 {
                continue;
            }
            for (ci, bi) in c.iter_mut().zip(b) {
                *ci = (*ci + x * bi) % q;
            }
        }
        c
    }
}

fn cocycle_layout(bq: &BoundQuiver, m: &FqRep, n: &FqRep) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut s = 0;
    for a in &bq.qbar.arrows {
        offs.push(s);
        s += n.dims[a.target] * m.dims[a.source];
    }
    (offs, s)
}

/// Computes cocycles, coboundaries and a complement for `Ext^1(M, N)`.
pub fn ext_data(bq: &BoundQuiver, m: &FqRep, n: &FqRep) -> ExtData {
    let p = m.q;
    let (offs, nvars) = cocycle_layout(bq, m, n);
    // Relation constraints.
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for rel in &bq.relations {
        let first = &rel.terms[0].1;
        let u = bq.qbar.arrows[first[0]].source;
        let w = bq.qbar.arrows[*first.last().unwrap()].target;
        let mut block = vec![vec![0u32; nvars]; n.dims[w] * m.dims[u]];
        for (coef, path) in &rel.terms {
            let cc = coef.rem_euclid(p as i64) as u32;
            for j in 0..path.len() {
                let a = path[j];
                let arrow = &bq.qbar.arrows[a];
                // left = N(a_k) ... N(a_{j+1}), right = M(a_{j-1}) ... M(a_1)
                let mut left = Mat::identity(n.dims[arrow.target]);
                for &b in &path[j + 1..] {
                    left = n.maps[b].mul(&left, p);
                }
                let mut right = Mat::identity(m.dims[u]);
                for &b in &path[..j] {
                    right = m.maps[b].mul(&right, p);
                }
                let (nt, ms) = (n.dims[arrow.target], m.dims[arrow.source]);
                for r in 0..n.dims[w] {
                    for col in 0..m.dims[u] {
                        let row = &mut block[r * m.dims[u] + col];
                        for x in 0..nt {
                            let l = left.get(r, x);
                            if l == 0 {
                                continue;
                            }
                            for y in 0..ms {
                                let rr = right.get(y, col);
                                if rr == 0 {
                                    continue;
                                }
                                let idx = offs[a] + x * ms + y;
                                row[idx] = (row[idx] + cc * l % p * rr) % p;
                            }
                        }
                    }
                }
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|&x| x != 0)));
    }
    let z_basis: Vec<Vec<u32>> = if rows.is_empty() {
        (0..nvars)
            .map(|k| {
                let mut v = vec![0; nvars];
                v[k] = 1;
                v
            })
            .collect()
    } else {
        Mat::from_rows(&rows, p).nullspace(p)
    };
    // Coboundaries: images of the elementary h.
    let mut b_vecs: Vec<Vec<u32>> = Vec::new();
    for i in 0..m.dims.len() {
        for r in 0..n.dims[i] {
            for c in 0..m.dims[i] {
                // h = E_{rc} at vertex i.
                let mut v = vec![0u32; nvars];
                for (k, arrow) in bq.qbar.arrows.iter().enumerate() {
                    let (s, t) = (arrow.source, arrow.target);
                    let ms = m.dims[s];
                    if s == i {
                        // N(a) h_s: column c of N(a) h_s = N(a) e_r, placed at column c.
                        for x in 0..n.dims[t] {
                            let val = n.maps[k].get(x, r);
                            if val != 0 {
                                let idx = offs[k] + x * ms + c;
                                v[idx] = (v[idx] + val) % p;
                            }
                        }
                    }
                    if t == i {
                        // h_t M(a): row r equals row c of M(a).
                        for y in 0..ms {
                            let val = m.maps[k].get(c, y);
                            if val != 0 {
                                let idx = offs[k] + r * ms + y;
                                v[idx] = (v[idx] + p - val) % p;
                            }
                        }
                    }
                }
                b_vecs.push(v);
            }
        }
    }
    let mut span: Vec<Vec<u32>> = Vec::new();
    let mut rank = 0;
    for v in &b_vecs {
        span.push(v.clone());
        let r = Mat::from_rows(&span, p).rank(p);
        if r > rank {
            rank = r;
        } else {
            span.pop();
        }
    }
    let coboundary_dim = rank;
    let mut complement = Vec::new();
    for z in &z_basis {
        span.push(z.clone());
        let r = Mat::from_rows(&span, p).rank(p);
        if r > rank {
            rank = r;
            complement.push(z.clone());
        } else {
            span.pop();
        }
    }
    ExtData {
        offs,
        nvars,
        cocycle_dim: z_basis.len(),
        coboundary_dim,
        complement,
    }
}

/// The middle term `E_c` with `E_c(a) = [[N(a), c_a], [0, M(a)]]`; `N` is the
/// submodule and `M` the quotient.
pub fn extension_module(bq: &BoundQuiver, m: &FqRep, n: &FqRep, ext: &ExtData, c: &[u32]) -> FqRep {
    let dims: Vec<usize> = n.dims.iter().zip(&m.dims).map(|(a, b)| a + b).collect();
    let maps = bq
        .qbar
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let (nt, ms) = (n.dims[a.target], m.dims[a.source]);
            let mut ca = Mat::zeros(nt, ms);
            for x in 0..nt {
                for y in 0..ms {
                    ca.set(x, y, c[ext.offs[k] + x * ms + y]);
                }
            }
            Mat::block(
                &n.maps[k],
                &ca,
                &Mat::zeros(m.dims[a.target], n.dims[a.source]),
                &m.maps[k],
            )
        })
        .collect();
    FqRep { q: m.q, dims, maps }
}
