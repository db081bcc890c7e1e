//! Enumeration of subrepresentations with a prescribed dimension vector.

use crate::linalg::{grassmannian, Mat};
use crate::quiver::BoundQuiver;

use super::{FqRep, RepError};

/// Budget on the number of subspace tuples visited.
pub const SUBMODULE_BUDGET: u64 = 20_000_000;

/// A submodule together with the induced quotient.
pub struct Subquotient {
    pub sub: FqRep,
    pub quot: FqRep,
}

/// A subspace given by RREF rows and pivot columns.
struct Sub<'a> {
    pivots: &'a [usize],
    rows: &'a Mat,
}

impl Sub<'_> {
    /// Reduces `w` modulo the subspace; returns the residue.
    fn reduce(&self, w: &[u32], p: u32) -> Vec<u32> {
        let mut r = w.to_vec();
        for (j, &pc) in self.pivots.iter().enumerate() {
            let f = r[pc];
            if f == 0 {
                continue;
            }
            for c in 0..r.len() {
                r[c] = (r[c] + p - f * self.rows.get(j, c) % p) % p;
            }
        }
        r
    }

    fn contains(&self, w: &[u32], p: u32) -> bool {
        self.reduce(w, p).iter().all(|&x| x == 0)
    }

    fn basis_vec(&self, j: usize) -> Vec<u32> {
        (0..self.rows.cols).map(|c| self.rows.get(j, c)).collect()
    }
}

/// Calls `f` on every submodule of `l` with dimension vector `sub_dims`.
pub fn for_each_submodule(
    bq: &BoundQuiver,
    l: &FqRep,
    sub_dims: &[usize],
    f: &mut dyn FnMut(Subquotient) -> Result<(), RepError>,
) -> Result<(), RepError> {
    let p = l.q;
    let n = l.dims.len();
    if sub_dims.iter().zip(&l.dims).any(|(a, b)| a > b) {
        return Ok(());
    }
    let grs: Vec<Vec<(Vec<usize>, Mat)>> =
        (0..n).map(|i| grassmannian(l.dims[i], sub_dims[i], p)).collect();
    let total: u64 = grs.iter().map(|g| g.len() as u64).product();
    if total > SUBMODULE_BUDGET {
        return Err(RepError::Capacity(format!(
            "{total} subspace tuples exceed the submodule enumeration budget"
        )));
    }
    let mut choice = vec![0usize; n];
    rec(bq, l, &grs, 0, &mut choice, f)
}

fn compatible(bq: &BoundQuiver, l: &FqRep, grs: &[Vec<(Vec<usize>, Mat)>], choice: &[usize], upto: usize) -> bool {
    let p = l.q;
    let v = upto;
    for (k, a) in bq.qbar.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        // Check arrows whose later endpoint is v and whose other endpoint is chosen.
        if s.max(t) != v {
            continue;
        }
        let ss = &grs[s][choice[s]];
        let tt = &grs[t][choice[t]];
        let src = Sub { pivots: &ss.0, rows: &ss.1 };
        let tgt = Sub { pivots: &tt.0, rows: &tt.1 };
        for j in 0..src.pivots.len() {
            let img = l.maps[k].mul_vec(&src.basis_vec(j), p);
            if !tgt.contains(&img, p) {
                return false;
            }
        }
    }
    true
}

fn rec(
    bq: &BoundQuiver,
    l: &FqRep,
    grs: &[Vec<(Vec<usize>, Mat)>],
    v: usize,
    choice: &mut Vec<usize>,
    f: &mut dyn FnMut(Subquotient) -> Result<(), RepError>,
) -> Result<(), RepError> {
    let n = l.dims.len();
    if v == n {
        return f(build(bq, l, grs, choice));
    }
    for idx in 0..grs[v].len() {
        choice[v] = idx;
        if compatible(bq, l, grs, choice, v) {
            rec(bq, l, grs, v + 1, choice, f)?;
        }
    }
    Ok(())
}

fn build(bq: &BoundQuiver, l: &FqRep, grs: &[Vec<(Vec<usize>, Mat)>], choice: &[usize]) -> Subquotient {
    let p = l.q;
    let subs: Vec<Sub> = (0..l.dims.len())
        .map(|i| {
            let g = &grs[i][choice[i]];
            Sub { pivots: &g.0, rows: &g.1 }
        })
        .collect();
    let sub_dims: Vec<usize> = subs.iter().map(|s| s.pivots.len()).collect();
    let quot_dims: Vec<usize> = l.dims.iter().zip(&sub_dims).map(|(a, b)| a - b).collect();
    let nonpiv: Vec<Vec<usize>> = (0..l.dims.len())
        .map(|i| (0..l.dims[i]).filter(|c| !subs[i].pivots.contains(c)).collect())
        .collect();
    let mut sub_maps = Vec::new();
    let mut quot_maps = Vec::new();
    for (k, a) in bq.qbar.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let mut sm = Mat::zeros(sub_dims[t], sub_dims[s]);
        for j in 0..sub_dims[s] {
            let img = l.maps[k].mul_vec(&subs[s].basis_vec(j), p);
            // Coordinates in an RREF basis are the entries at the pivots.
            for (r, &pc) in subs[t].pivots.iter().enumerate() {
                sm.set(r, j, img[pc]);
            }
        }
        let mut qm = Mat::zeros(quot_dims[t], quot_dims[s]);
        for (j, &c) in nonpiv[s].iter().enumerate() {
            let mut e = vec![0u32; l.dims[s]];
            e[c] = 1;
            let img = subs[t].reduce(&l.maps[k].mul_vec(&e, p), p);
            for (r, &rc) in nonpiv[t].iter().enumerate() {
                qm.set(r, j, img[rc]);
            }
        }
        sub_maps.push(sm);
        quot_maps.push(qm);
    }
    Subquotient {
        sub: FqRep { q: p, dims: sub_dims, maps: sub_maps },
        quot: FqRep { q: p, dims: quot_dims, maps: quot_maps },
    }
}
