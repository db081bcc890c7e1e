//! Krull–Schmidt decomposition, isomorphism testing and automorphism counts.
//!
//! Decomposition splits a module along the Fitting decomposition of an
//! endomorphism that is neither nilpotent nor invertible. Automorphism counts
//! then follow from the structure of `End(M) / rad End(M)`, a product of
//! matrix rings `M_n(F_{q^d})`, one per isotypic component.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{all_vectors, Mat};
use crate::quiver::BoundQuiver;

use super::hom::{hom_dim, hom_space};
use super::{FqRep, RepError};

/// Largest Hom-space size searched exhaustively.
pub const EXHAUSTIVE_CAP: u64 = 1 << 14;
const RANDOM_TRIES: usize = 256;

fn size(q: u32, dim: usize) -> u64 {
    (q as u64).saturating_pow(dim as u32)
}

fn combine(basis: &[Vec<Mat>], coef: &[u32], q: u32, template: &[Mat]) -> Vec<Mat> {
    let mut out: Vec<Mat> = template.to_vec();
    for (b, &c) in basis.iter().zip(coef) {
        if c == 0 {
            continue;
        }
        for (o, m) in out.iter_mut().zip(b) {
            *o = o.add(&m.scale(c, q), q);
        }
    }
    out
}

fn zero_tuple(m: &FqRep, n: &FqRep) -> Vec<Mat> {
    m.dims
        .iter()
        .zip(&n.dims)
        .map(|(&a, &b)| Mat::zeros(b, a))
        .collect()
}

fn tuple_invertible(f: &[Mat], q: u32) -> bool {
    f.iter().all(|x| x.is_invertible(q))
}

fn random_coef(rng: &mut ChaCha8Rng, len: usize, q: u32) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

/// Finds an invertible element of `Hom(X, Y)`, if any.
fn find_invertible(
    basis: &[Vec<Mat>],
    template: &[Mat],
    q: u32,
) -> Result<Option<Vec<Mat>>, RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a11);
    for _ in 0..RANDOM_TRIES {
        let f = combine(basis, &random_coef(&mut rng, basis.len(), q), q, template);
        if tuple_invertible(&f, q) {
            return Ok(Some(f));
        }
    }
    if size(q, basis.len()) > EXHAUSTIVE_CAP {
        return Err(RepError::Capacity(format!(
            "Hom space of dimension {} over F_{} too large to search",
            basis.len(),
            q
        )));
    }
    for coef in all_vectors(basis.len(), q) {
        let f = combine(basis, &coef, q, template);
        if tuple_invertible(&f, q) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Splits `m` along the Fitting decomposition of the endomorphism `x`, when
/// that decomposition is nontrivial.
fn fitting_split(bq: &BoundQuiver, m: &FqRep, x: &[Mat]) -> Option<(FqRep, FqRep)> {
    let q = m.q;
    let n = m.dims.iter().copied().max().unwrap_or(0);
    let powers: Vec<Mat> = x.iter().map(|f| f.pow(n, q)).collect();
    let mut kers = Vec::new();
    let mut ims = Vec::new();
    let mut kdim = 0;
    for (i, y) in powers.iter().enumerate() {
        let k = y.nullspace(q);
        kdim += k.len();
        kers.push(Mat::from_cols(m.dims[i], &k));
        ims.push(y.column_space(q));
    }
    if kdim == 0 || kdim == m.total_dim() {
        return None;
    }
    Some((m.restrict(bq, &kers), m.restrict(bq, &ims)))
}

fn shifted(x: &[Mat], lambda: u32, q: u32) -> Vec<Mat> {
    x.iter()
        .map(|f| f.sub(&Mat::identity(f.rows).scale(lambda, q), q))
        .collect()
}

/// Tries to split `m` into two nonzero summands.
fn split_once(bq: &BoundQuiver, m: &FqRep) -> Result<Option<(FqRep, FqRep)>, RepError> {
    let q = m.q;
    let basis = hom_space(bq, m, m);
    let template = zero_tuple(m, m);
    let try_elem = |x: &[Mat]| -> Option<(FqRep, FqRep)> {
        for lambda in 0..q {
            let y = if lambda == 0 { x.to_vec() } else { shifted(x, lambda, q) };
            if let Some(s) = fitting_split(bq, m, &y) {
                return Some(s);
            }
        }
        None
    };
    for b in &basis {
        if let Some(s) = try_elem(b) {
            return Ok(Some(s));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xf177);
    for _ in 0..RANDOM_TRIES {
        let x = combine(&basis, &random_coef(&mut rng, basis.len(), q), q, &template);
        if let Some(s) = try_elem(&x) {
            return Ok(Some(s));
        }
    }
    if size(q, basis.len()) > EXHAUSTIVE_CAP {
        return Err(RepError::Capacity(format!(
            "cannot certify indecomposability: End has dimension {}",
            basis.len()
        )));
    }
    for coef in all_vectors(basis.len(), q) {
        let x = combine(&basis, &coef, q, &template);
        if let Some(s) = fitting_split(bq, m, &x) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Decomposes `m` into indecomposable summands.
pub fn decompose(bq: &BoundQuiver, m: &FqRep) -> Result<Vec<FqRep>, RepError> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.total_dim() == 1 {
            out.push(x);
            continue;
        }
        match split_once(bq, &x)? {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => out.push(x),
        }
    }
    out.sort_by_key(|r| (r.total_dim(), r.dims.clone()));
    Ok(out)
}

/// Whether `x` and `y` are isomorphic.
pub fn isomorphic(bq: &BoundQuiver, x: &FqRep, y: &FqRep) -> Result<bool, RepError> {
    if x.dims != y.dims {
        return Ok(false);
    }
    if x == y {
        return Ok(true);
    }
    let h = hom_dim(bq, x, y);
    if h != hom_dim(bq, x, x) || h != hom_dim(bq, y, y) {
        return Ok(false);
    }
    let basis = hom_space(bq, x, y);
    match find_invertible(&basis, &zero_tuple(x, y), x.q) {
        Ok(found) => Ok(found.is_some()),
        Err(RepError::Capacity(msg)) => {
            // Fall back on Krull–Schmidt: compare indecomposable summands.
            let dx = decompose(bq, x)?;
            let dy = decompose(bq, y)?;
            if dx.len() == 1 && dy.len() == 1 {
                return Err(RepError::Capacity(msg));
            }
            multiset_iso(bq, &dx, &dy)
        }
        Err(e) => Err(e),
    }
}

fn multiset_iso(bq: &BoundQuiver, xs: &[FqRep], ys: &[FqRep]) -> Result<bool, RepError> {
    if xs.len() != ys.len() {
        return Ok(false);
    }
    let mut used = vec![false; ys.len()];
    'outer: for a in xs {
        for (j, b) in ys.iter().enumerate() {
            if !used[j] && isomorphic(bq, a, b)? {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Counts invertible endomorphisms by listing all of `End(M)`.
pub fn aut_count_by_enumeration(bq: &BoundQuiver, m: &FqRep) -> Result<BigInt, RepError> {
    let basis = hom_space(bq, m, m);
    let q = m.q;
    if size(q, basis.len()) > EXHAUSTIVE_CAP * 64 {
        return Err(RepError::Capacity(format!(
            "End space of dimension {} too large to enumerate",
            basis.len()
        )));
    }
    let template = zero_tuple(m, m);
    let mut count = 0u64;
    for coef in all_vectors(basis.len(), q) {
        if tuple_invertible(&combine(&basis, &coef, q, &template), q) {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

/// Isotypic structure of `End(M)`: its dimension and, for every isotypic
/// component, the multiplicity `n` and the residue field degree `d` of the
/// local endomorphism ring of the indecomposable summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndStructure {
    pub q: u32,
    pub end_dim: usize,
    pub blocks: Vec<(usize, usize)>,
}

impl EndStructure {
    pub fn of(bq: &BoundQuiver, m: &FqRep) -> Result<Self, RepError> {
        let q = m.q;
        let end_dim = hom_dim(bq, m, m);
        let parts = decompose(bq, m)?;
        let mut groups: Vec<(FqRep, usize)> = Vec::new();
        'outer: for p in parts {
            for g in groups.iter_mut() {
                if isomorphic(bq, &g.0, &p)? {
                    g.1 += 1;
                    continue 'outer;
                }
            }
            groups.push((p, 1));
        }
        let mut blocks = Vec::new();
        for (u, n) in groups {
            let h = hom_dim(bq, &u, &u) as u32;
            let units = aut_count_by_enumeration(bq, &u)?;
            // |End(U)^x| = q^h - q^(h-d) for a local ring with residue field F_{q^d}.
            let nonunits = BigInt::from(q).pow(h) - units;
            let mut e = 0u32;
            let mut x = nonunits;
            while x > BigInt::one() {
                x /= q;
                e += 1;
            }
            blocks.push((n, (h - e) as usize));
        }
        Ok(Self { q, end_dim, blocks })
    }

    pub fn is_local(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].0 == 1
    }

    /// `|Aut M| = q^{dim End} prod over blocks prod_{k=1}^{n} (1 - q^{-dk})`.
    pub fn aut_count(&self) -> BigInt {
        let qb = BigInt::from(self.q);
        let mut acc = BigRational::from_integer(qb.pow(self.end_dim as u32));
        for &(n, d) in &self.blocks {
            for k in 1..=n {
                let qdk = BigRational::from_integer(qb.pow((d * k) as u32));
                acc *= BigRational::one() - qdk.recip();
            }
        }
        assert!(acc.is_integer(), "automorphism count must be an integer");
        let out = acc.to_integer();
        debug_assert!(!out.is_zero());
        out
    }
}
