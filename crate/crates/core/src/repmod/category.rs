//! Module categories at a fixed prime with lazily built isoclass tables.
//!
//! Isoclasses of dimension vector `d` are generated as extensions
//! `0 -> S_i -> E -> M -> 0` with `M` running over the isoclasses of
//! dimension `d - e_i`: every nonzero nilpotent module has a simple
//! submodule, so nothing is missed. Classes are keyed by a fingerprint made of
//! Hom dimensions against smaller indecomposables; ties are settled by an
//! explicit isomorphism search.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::quiver::BoundQuiver;

use super::decomp::{isomorphic, EndStructure};
use super::hom::{ext_data, extension_module, hom_dim, ExtData};
use super::submod::for_each_submodule;
use super::{FqRep, RepError};

pub type Fingerprint = Vec<i64>;

/// Largest total dimension of modules used as fingerprint probes.
const PROBE_MAX_DIM: usize = 4;

/// One isomorphism class.
#[derive(Debug)]
pub struct IsoClass {
    pub id: usize,
    pub rep: FqRep,
    pub label: String,
    pub fingerprint: Fingerprint,
    end: OnceLock<Result<EndStructure, RepError>>,
}

impl IsoClass {
    pub fn dims(&self) -> &[usize] {
        &self.rep.dims
    }

    pub fn total_dim(&self) -> usize {
        self.rep.total_dim()
    }
}

#[derive(Default)]
struct DimTable {
    ids: Vec<usize>,
    by_fp: HashMap<Fingerprint, Vec<usize>>,
}

#[derive(Default)]
struct Inner {
    classes: Vec<Arc<IsoClass>>,
    tables: HashMap<Vec<usize>, DimTable>,
    /// Indecomposable classes usable as probes, with their total dimension.
    probes: Vec<usize>,
    /// Exact representation lookups already resolved.
    memo: HashMap<FqRep, usize>,
}

/// A module category `mod(A)` for a bound quiver `A` over `F_q`.
pub struct ModCat {
    pub bq: BoundQuiver,
    pub q: u32,
    inner: Mutex<Inner>,
}

impl ModCat {
    pub fn new(bq: BoundQuiver, q: u32) -> Self {
        Self {
            bq,
            q,
            inner: Mutex::new(Inner::default()),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.bq.n_vertices()
    }

    pub fn simple(&self, i: usize) -> FqRep {
        FqRep::simple(&self.bq, self.q, i)
    }

    pub fn zero_rep(&self) -> FqRep {
        FqRep::zero(&self.bq, self.q)
    }

    pub fn class(&self, id: usize) -> Arc<IsoClass> {
        self.inner.lock().unwrap().classes[id].clone()
    }

    /// Id of the zero module.
    pub fn zero_id(&self) -> usize {
        self.identify(&self.zero_rep()).expect("zero module")
    }

    pub fn simple_id(&self, i: usize) -> usize {
        self.identify(&self.simple(i)).expect("simple module")
    }

    /// All isoclasses of the given dimension vector.
    pub fn classes_of_dims(&self, dims: &[usize]) -> Result<Vec<usize>, RepError> {
        let mut inner = self.inner.lock().unwrap();
        self.ensure(&mut inner, dims)?;
        Ok(inner.tables[dims].ids.clone())
    }

    /// All isoclasses with total dimension at most `max_total`.
    pub fn enumerate_isoclasses(&self, max_total: usize) -> Result<Vec<usize>, RepError> {
        let n = self.n_vertices();
        let mut out = Vec::new();
        for total in 0..=max_total {
            for d in compositions(total, n) {
                out.extend(self.classes_of_dims(&d)?);
            }
        }
        Ok(out)
    }

    /// Isoclass id of a module (which must satisfy the relations).
    pub fn identify(&self, rep: &FqRep) -> Result<usize, RepError> {
        let mut inner = self.inner.lock().unwrap();
        if let Some(&id) = inner.memo.get(rep) {
            return Ok(id);
        }
        self.ensure(&mut inner, &rep.dims)?;
        let id = self.find(&inner, rep)?.ok_or_else(|| {
            RepError::Consistency("module missing from its isoclass table".into())
        })?;
        if inner.memo.len() < 200_000 {
            inner.memo.insert(rep.clone(), id);
        }
        Ok(id)
    }

    fn find(&self, inner: &Inner, rep: &FqRep) -> Result<Option<usize>, RepError> {
        let table = &inner.tables[&rep.dims];
        if table.ids.len() == 1 {
            return Ok(Some(table.ids[0]));
        }
        let fp = self.fingerprint(inner, rep);
        let Some(cands) = table.by_fp.get(&fp) else {
            return Ok(None);
        };
        if cands.len() == 1 {
            return Ok(Some(cands[0]));
        }
        for &id in cands {
            if isomorphic(&self.bq, &inner.classes[id].rep, rep)? {
                return Ok(Some(id));
            }
        }
        Ok(None)
    }

    fn fingerprint(&self, inner: &Inner, rep: &FqRep) -> Fingerprint {
        let mut fp: Fingerprint = rep.dims.iter().map(|&d| d as i64).collect();
        fp.push(hom_dim(&self.bq, rep, rep) as i64);
        let total = rep.total_dim();
        for &pid in &inner.probes {
            let p = &inner.classes[pid].rep;
            if p.total_dim() >= total {
                continue;
            }
            fp.push(hom_dim(&self.bq, p, rep) as i64);
            fp.push(hom_dim(&self.bq, rep, p) as i64);
        }
        fp
    }

    fn ensure(&self, inner: &mut Inner, dims: &[usize]) -> Result<(), RepError> {
        if inner.tables.contains_key(dims) {
            return Ok(());
        }
        let n = dims.len();
        let total: usize = dims.iter().sum();
        if total <= 1 {
            let rep = if total == 0 {
                self.zero_rep()
            } else {
                self.simple(dims.iter().position(|&d| d == 1).unwrap())
            };
            let mut table = DimTable::default();
            self.add_class(inner, &mut table, rep)?;
            inner.tables.insert(dims.to_vec(), table);
            return Ok(());
        }
        // Probes of smaller dimension must exist before fingerprints are taken.
        for t in 1..total.min(PROBE_MAX_DIM + 1) {
            for d in compositions(t, n) {
                if d.iter().zip(dims).all(|(a, b)| a <= b) || t < total {
                    self.ensure(inner, &d)?;
                }
            }
        }
        // Every nonzero nilpotent module has a simple submodule and a simple
        // quotient, so either family of extensions reaches all classes; take
        // the one with fewer extension classes to walk through.
        let mut below: Vec<(FqRep, FqRep, ExtData)> = Vec::new();
        let mut above: Vec<(FqRep, FqRep, ExtData)> = Vec::new();
        for i in 0..n {
            if dims[i] == 0 {
                continue;
            }
            let mut smaller = dims.to_vec();
            smaller[i] -= 1;
            self.ensure(inner, &smaller)?;
            let s = self.simple(i);
            for &id in &inner.tables[&smaller].ids {
                let m = inner.classes[id].rep.clone();
                below.push((m.clone(), s.clone(), ext_data(&self.bq, &m, &s)));
                above.push((s.clone(), m.clone(), ext_data(&self.bq, &s, &m)));
            }
        }
        let cost = |v: &[(FqRep, FqRep, ExtData)]| -> f64 { v.iter().map(|(_, _, e)| (self.q as f64).powi(e.ext_dim() as i32)).sum() };
        let chosen = if cost(&above) < cost(&below) { above } else { below };
        let mut table = DimTable::default();
        for (quot, sub, ext) in &chosen {
            for c in ext.classes_up_to_scalar(self.q) {
                let e = extension_module(&self.bq, quot, sub, ext, &c);
                self.insert(inner, &mut table, e)?;
            }
        }
        inner.tables.insert(dims.to_vec(), table);
        Ok(())
    }

    fn insert(&self, inner: &mut Inner, table: &mut DimTable, rep: FqRep) -> Result<(), RepError> {
        let fp = self.fingerprint(inner, &rep);
        if let Some(cands) = table.by_fp.get(&fp) {
            for &id in cands {
                if isomorphic(&self.bq, &inner.classes[id].rep, &rep)? {
                    return Ok(());
                }
            }
        }
        self.add_class_fp(inner, table, rep, fp)
    }

    fn add_class(&self, inner: &mut Inner, table: &mut DimTable, rep: FqRep) -> Result<(), RepError> {
        let fp = self.fingerprint(inner, &rep);
        self.add_class_fp(inner, table, rep, fp)
    }

    fn add_class_fp(
        &self,
        inner: &mut Inner,
        table: &mut DimTable,
        rep: FqRep,
        fp: Fingerprint,
    ) -> Result<(), RepError> {
        let id = inner.classes.len();
        let label = self.label_for(&rep, table.ids.len());
        let total = rep.total_dim();
        let class = Arc::new(IsoClass {
            id,
            rep,
            label,
            fingerprint: fp.clone(),
            end: OnceLock::new(),
        });
        if total >= 1 && total <= PROBE_MAX_DIM {
            let st = EndStructure::of(&self.bq, &class.rep)?;
            if st.is_local() {
                inner.probes.push(id);
            }
            let _ = class.end.set(Ok(st));
        }
        inner.classes.push(class);
        table.ids.push(id);
        table.by_fp.entry(fp).or_default().push(id);
        Ok(())
    }

    fn label_for(&self, rep: &FqRep, k: usize) -> String {
        let total = rep.total_dim();
        if total == 0 {
            return "0".into();
        }
        if total == 1 {
            let i = rep.dims.iter().position(|&d| d == 1).unwrap();
            return format!("S{}", self.bq.qbar.vertices[i]);
        }
        let dims: Vec<String> = rep.dims.iter().map(|d| d.to_string()).collect();
        format!("M({})#{}", dims.join(","), k + 1)
    }

    pub fn end_structure(&self, id: usize) -> Result<EndStructure, RepError> {
        let class = self.class(id);
        class
            .end
            .get_or_init(|| EndStructure::of(&self.bq, &class.rep))
            .clone()
    }

    /// `|Aut(M)|` for a class.
    pub fn aut_count(&self, id: usize) -> Result<BigInt, RepError> {
        Ok(self.end_structure(id)?.aut_count())
    }

    /// `|Aut(M)|` for an arbitrary module.
    pub fn aut_count_rep(&self, rep: &FqRep) -> Result<BigInt, RepError> {
        let id = self.identify(rep)?;
        self.aut_count(id)
    }

    pub fn is_isomorphic(&self, x: &FqRep, y: &FqRep) -> Result<bool, RepError> {
        isomorphic(&self.bq, x, y)
    }

    pub fn hom_dim(&self, x: &FqRep, y: &FqRep) -> usize {
        hom_dim(&self.bq, x, y)
    }

    /// Hall number `F^L_{MN}`: submodules `X` of `L` with `X = N` and `L/X = M`.
    pub fn hall_number(&self, l: usize, m: usize, n: usize) -> Result<BigInt, RepError> {
        let (lc, mc, nc) = (self.class(l), self.class(m), self.class(n));
        let ok = lc
            .dims()
            .iter()
            .zip(mc.dims().iter().zip(nc.dims()))
            .all(|(a, (b, c))| *a == b + c);
        if !ok {
            return Ok(BigInt::from(0));
        }
        let mut count = 0u64;
        for_each_submodule(&self.bq, &lc.rep, nc.dims(), &mut |sq| {
            if self.identify(&sq.sub)? == n && self.identify(&sq.quot)? == m {
                count += 1;
            }
            Ok(())
        })?;
        Ok(BigInt::from(count))
    }

    /// Hall numbers `F^L_{MN}` for every pair `(M, N)` at once, keyed by ids.
    pub fn hall_numbers_of(&self, l: usize, sub_dims: &[usize]) -> Result<HashMap<(usize, usize), u64>, RepError> {
        let lc = self.class(l);
        let mut out: HashMap<(usize, usize), u64> = HashMap::new();
        for_each_submodule(&self.bq, &lc.rep, sub_dims, &mut |sq| {
            let key = (self.identify(&sq.quot)?, self.identify(&sq.sub)?);
            *out.entry(key).or_insert(0) += 1;
            Ok(())
        })?;
        Ok(out)
    }

    /// `|Ext^1(M,N)_L| = F^L_{MN} |Hom(M,N)| |Aut M| |Aut N| / |Aut L|`.
    pub fn ext1_with_middle(&self, m: usize, n: usize, l: usize) -> Result<BigInt, RepError> {
        let f = self.hall_number(l, m, n)?;
        self.riedtmann_peng(m, n, l, f)
    }

    pub fn riedtmann_peng(&self, m: usize, n: usize, l: usize, f: BigInt) -> Result<BigInt, RepError> {
        let h = BigInt::from(self.q).pow(self.hom_dim(&self.class(m).rep, &self.class(n).rep) as u32);
        let num = f * h * self.aut_count(m)? * self.aut_count(n)?;
        let den = self.aut_count(l)?;
        if &num % &den != BigInt::from(0) {
            return Err(RepError::Consistency(format!(
                "Riedtmann-Peng count {num}/{den} is not an integer"
            )));
        }
        Ok(num / den)
    }
}

/// All vectors of `n` nonnegative integers summing to `total`.
pub fn compositions(total: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
