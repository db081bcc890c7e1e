//! The iHall algebra of an iquiver: elements in the basis `[X] * K_alpha`
//! with `X` a `kQ`-module and `alpha` an integer vector, products computed
//! in `mod(Lambda^i)` and reduced back to that basis through eps-homology.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::exactarith::{q_double_factorial, q_factorial, q_int, specialize_poly, ArithError, QuadCoeff};
use crate::hallcore::HallAlgebra;
use crate::linalg::{Coords, Mat};
use crate::quiver::{apply_tau, bound_quiver, BoundQuiver, IQuiver};
use crate::repmod::{ext_data, extension_module, hom_dim, FqRep, ModCat, RepError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IHallError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0}")]
    Unsupported(String),
}

/// Basis key: a `kQ`-isoclass id and a torus exponent.
pub type IKey = (usize, Vec<i64>);

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IHallElement {
    pub terms: BTreeMap<IKey, QuadCoeff>,
}

impl IHallElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(x: usize, alpha: Vec<i64>, c: QuadCoeff) -> Self {
        let mut e = Self::zero();
        e.add_term((x, alpha), &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: IKey, c: &QuadCoeff) {
        if c.is_zero() {
            return;
        }
        if let Some(x) = self.terms.get_mut(&key) {
            *x += c;
            if x.is_zero() {
                self.terms.remove(&key);
            }
        } else {
            self.terms.insert(key, c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &QuadCoeff) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), &(x * c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &(c * &QuadCoeff::from_int(-1, c.q)));
        }
        out
    }

    pub fn coeff(&self, x: usize, alpha: &[i64]) -> Option<&QuadCoeff> {
        self.terms.get(&(x, alpha.to_vec()))
    }
}

/// Result of reducing a `Lambda^i`-module: `[M] = scalar * [X] * K_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub scalar: QuadCoeff,
    pub x: usize,
    pub alpha: Vec<i64>,
}

/// Symbols for iHall generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IGen {
    S(usize),
    E(usize),
    KInv(usize),
}

/// Generators of the universal iquantum group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TuiGen {
    B(usize),
    K(usize),
    KInv(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn plus(self, n: i64) -> Self {
        let base = if self == Parity::Odd { 1 } else { 0 };
        Parity::of(base + n)
    }
}

/// The iHall algebra of an iquiver at a fixed prime.
pub struct IHall {
    pub iq: IQuiver,
    pub bq: BoundQuiver,
    /// Isoclasses of `kQ`-modules; these index the basis.
    pub kq: Arc<ModCat>,
    q: u32,
    cache: Mutex<HashMap<(usize, usize), IHallElement>>,
}

impl IHall {
    pub fn new(iq: IQuiver, q: u32) -> Self {
        let bq = bound_quiver(&iq);
        let kq = Arc::new(ModCat::new(BoundQuiver::path_algebra(iq.quiver.clone()), q));
        Self {
            iq,
            bq,
            kq,
            q,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.iq.n()
    }

    fn zero_alpha(&self) -> Vec<i64> {
        vec![0; self.n()]
    }

    fn unit(&self, i: usize, s: i64) -> Vec<i64> {
        let mut a = self.zero_alpha();
        a[i] = s;
        a
    }

    pub fn one(&self) -> IHallElement {
        IHallElement::term(self.kq.zero_id(), self.zero_alpha(), QuadCoeff::one(self.q))
    }

    pub fn basis(&self, x: usize, alpha: Vec<i64>) -> IHallElement {
        IHallElement::term(x, alpha, QuadCoeff::one(self.q))
    }

    pub fn torus(&self, alpha: Vec<i64>) -> IHallElement {
        self.basis(self.kq.zero_id(), alpha)
    }

    pub fn simple(&self, i: usize) -> IHallElement {
        self.basis(self.kq.simple_id(i), self.zero_alpha())
    }

    pub fn generator(&self, g: IGen) -> IHallElement {
        match g {
            IGen::S(i) => self.simple(i),
            IGen::E(i) => self.torus(self.unit(i, 1)),
            IGen::KInv(i) => self.torus(self.unit(i, -1)),
        }
    }

    /// Parses `S<v>`, `E<v>` or `K<v>^-1` with `<v>` a vertex id.
    pub fn parse_generator(&self, s: &str) -> Result<IGen, IHallError> {
        let bad = || IHallError::UnknownGenerator(s.to_string());
        let vertex = |name: &str| self.iq.quiver.vertex_index(name).map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('K').and_then(|r| r.strip_suffix("^-1")) {
            return Ok(IGen::KInv(vertex(rest)?));
        }
        if let Some(rest) = s.strip_prefix('S') {
            return Ok(IGen::S(vertex(rest)?));
        }
        if let Some(rest) = s.strip_prefix('E') {
            return Ok(IGen::E(vertex(rest)?));
        }
        Err(bad())
    }

    /// The generalized simple `E_i`: `k[eps]/(eps^2)` at a split vertex, and
    /// `S_i` glued onto `S_{tau i}` by `eps_i` otherwise.
    pub fn generalized_simple(&self, i: usize) -> FqRep {
        let t = self.iq.tau[i];
        let mut dims = vec![0; self.n()];
        dims[i] += 1;
        dims[t] += 1;
        let mut rep = FqRep::zero_with_dims(&self.bq, self.q, dims);
        let e = self.bq.eps[i];
        if t == i {
            rep.maps[e] = Mat::from_rows(&[vec![0, 0], vec![1, 0]], self.q);
        } else {
            rep.maps[e] = Mat::from_rows(&[vec![1]], self.q);
        }
        rep
    }

    /// A `kQ`-module viewed as a `Lambda^i`-module with zero eps-action.
    pub fn lift(&self, x: &FqRep) -> FqRep {
        let mut rep = FqRep::zero_with_dims(&self.bq, self.q, x.dims.clone());
        for (k, m) in x.maps.iter().enumerate() {
            rep.maps[k] = m.clone();
        }
        rep
    }

    /// Normal form through eps-homology: `H_i = ker eps_i / im eps_{tau i}`
    /// with the induced `kQ`-action, `alpha_i = rank eps_i`, and scalar
    /// `v^{-<H, alpha + tau alpha>_Q} q^{<H, tau alpha>_Q}`.
    pub fn reduce(&self, m: &FqRep) -> Result<Reduced, IHallError> {
        let q = self.q;
        let n = self.n();
        let tau = &self.iq.tau;
        let mut alpha = vec![0i64; n];
        // Per vertex: basis of ker eps_i as image-part followed by homology representatives.
        let mut frames: Vec<(Coords, usize, usize)> = Vec::with_capacity(n);
        let mut reps: Vec<Mat> = Vec::with_capacity(n);
        for i in 0..n {
            let d = m.dims[i];
            let eps_i = &m.maps[self.bq.eps[i]];
            alpha[i] = if d == 0 { 0 } else { eps_i.rank(q) as i64 };
            let ker = if d == 0 { Vec::new() } else { eps_i.nullspace(q) };
            let into = &m.maps[self.bq.eps[tau[i]]];
            let mut basis: Vec<Vec<u32>> = Vec::new();
            if into.cols > 0 && d > 0 {
                let img = into.column_space(q);
                basis.extend((0..img.cols).map(|c| img.col(c)));
            }
            let n_img = basis.len();
            let mut hreps = Vec::new();
            for v in ker {
                let mut trial = basis.clone();
                trial.push(v.clone());
                if Mat::from_cols(d, &trial).rank(q) == trial.len() {
                    basis.push(v.clone());
                    hreps.push(v);
                }
            }
            let h = hreps.len();
            reps.push(Mat::from_cols(d, &hreps));
            let frame = Mat::from_cols(d, &basis);
            frames.push((Coords::new(&frame, q), n_img, h));
        }
        let hdims: Vec<usize> = frames.iter().map(|f| f.2).collect();
        let kq_bq = &self.kq.bq;
        let mut x = FqRep::zero_with_dims(kq_bq, q, hdims.clone());
        for (k, a) in kq_bq.qbar.arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let mut mk = Mat::zeros(hdims[t], hdims[s]);
            for j in 0..hdims[s] {
                let img = m.maps[k].mul_vec(&reps[s].col(j), q);
                let c = frames[t].0.of(&img);
                for r in 0..hdims[t] {
                    mk.set(r, j, c[frames[t].1 + r]);
                }
            }
            x.maps[k] = mk;
        }
        let xid = self.kq.identify(&x)?;
        let h: Vec<i64> = hdims.iter().map(|&d| d as i64).collect();
        let fd = self.iq.form_data();
        let ta = apply_tau(tau, &alpha);
        let res = self.iq.torus_res(&alpha);
        let scalar = &QuadCoeff::v_pow(-fd.euler_form(&h, &res) as i32, q)
            * &QuadCoeff::v_pow(2 * fd.euler_form(&h, &ta) as i32, q);
        Ok(Reduced { scalar, x: xid, alpha })
    }

    /// `[M]` written in the iHall basis.
    pub fn class_of(&self, m: &FqRep) -> Result<IHallElement, IHallError> {
        let r = self.reduce(m)?;
        Ok(IHallElement::term(r.x, r.alpha, r.scalar))
    }

    /// Exponent `e` with `K_alpha * [Y] = v^e [Y] * K_alpha`.
    pub fn torus_commutation(&self, alpha: &[i64], y_dims: &[i64]) -> i64 {
        let fd = self.iq.form_data();
        let mut e = 0;
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ti = self.unit(self.iq.tau[i], 1);
            let ui = self.unit(i, 1);
            e += a * (fd.symmetrized_form(y_dims, &ti) - fd.symmetrized_form(y_dims, &ui));
        }
        e
    }

    /// `[X] * [Y]` for `kQ`-isoclasses, summed over extension cocycles in
    /// `mod(Lambda^i)` and reduced.
    pub fn module_product(&self, x: usize, y: usize) -> Result<IHallElement, IHallError> {
        if let Some(p) = self.cache.lock().unwrap().get(&(x, y)) {
            return Ok(p.clone());
        }
        let q = self.q;
        let (xr, yr) = (self.lift(&self.kq.class(x).rep), self.lift(&self.kq.class(y).rep));
        let hom = BigInt::from(q).pow(hom_dim(&self.bq, &xr, &yr) as u32);
        let twist = self.iq.form_data().euler_form(&xr.dims_i64(), &yr.dims_i64());
        let w = &QuadCoeff::from_rational(BigRational::new(BigInt::one(), hom), q) * &QuadCoeff::v_pow(twist as i32, q);
        let ext = ext_data(&self.bq, &xr, &yr);
        let mut tally: HashMap<FqRep, u64> = HashMap::new();
        for c in ext.classes(q) {
            *tally.entry(extension_module(&self.bq, &xr, &yr, &ext, &c)).or_insert(0) += 1;
        }
        let mut out = IHallElement::zero();
        for (e, count) in tally {
            let r = self.reduce(&e)?;
            let c = &(&r.scalar * &w) * &QuadCoeff::from_int(count as i64, q);
            out.add_term((r.x, r.alpha), &c);
        }
        self.cache.lock().unwrap().insert((x, y), out.clone());
        Ok(out)
    }

    /// Product of basis elements `([X] K_a) * ([Y] K_b)`.
    pub fn basis_product(&self, a: &IKey, b: &IKey) -> Result<IHallElement, IHallError> {
        let q = self.q;
        let ydims = self.kq.class(b.0).rep.dims_i64();
        let e = self.torus_commutation(&a.1, &ydims);
        let shift: Vec<i64> = a.1.iter().zip(&b.1).map(|(x, y)| x + y).collect();
        let p = self.module_product(a.0, b.0)?;
        let mut out = IHallElement::zero();
        let f = QuadCoeff::v_pow(e as i32, q);
        for ((x, al), c) in &p.terms {
            let k: Vec<i64> = al.iter().zip(&shift).map(|(u, v)| u + v).collect();
            out.add_term((*x, k), &(c * &f));
        }
        Ok(out)
    }

    pub fn mul(&self, x: &IHallElement, y: &IHallElement) -> Result<IHallElement, IHallError> {
        let mut out = IHallElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let c = ca * cb;
                for (k, ck) in &self.basis_product(a, b)?.terms {
                    out.add_term(k.clone(), &(&c * ck));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, xs: &[&IHallElement]) -> Result<IHallElement, IHallError> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &IHallElement, n: u32) -> Result<IHallElement, IHallError> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// The twisted `kQ` Hall algebra sharing this algebra's isoclass table.
    pub fn kq_hall(&self) -> HallAlgebra {
        HallAlgebra::with_category(self.kq.clone())
    }

    /// Image of a generator of the universal iquantum group. Orbit
    /// representatives get `-1/(q-1) [S_j]`, the other vertex of a
    /// two-element orbit `v/(q-1) [S_j]`; `tk_i` goes to `-q^{-1} K_i` at
    /// split vertices and to `v^{-c_{i,tau i}/2} K_i` otherwise.
    pub fn psi_image(&self, g: TuiGen) -> Result<IHallElement, IHallError> {
        let q = self.q;
        let qm1 = BigRational::from_integer(BigInt::from(q as i64 - 1));
        Ok(match g {
            TuiGen::B(j) => {
                let c = if self.iq.is_rep(j) {
                    QuadCoeff::from_rational(BigRational::from_integer((-1).into()) / qm1, q)
                } else {
                    QuadCoeff::v_pow(1, q).scale(&(BigRational::one() / qm1))
                };
                self.simple(j).scale(&c)
            }
            TuiGen::K(i) => self.torus(self.unit(i, 1)).scale(&self.tk_scalar(i)?),
            TuiGen::KInv(i) => self.torus(self.unit(i, -1)).scale(&self.tk_scalar(i)?.inv()?),
        })
    }

    fn tk_scalar(&self, i: usize) -> Result<QuadCoeff, IHallError> {
        let q = self.q;
        if self.iq.is_split_vertex(i) {
            return Ok(QuadCoeff::from_rational(BigRational::new((-1).into(), q.into()), q));
        }
        let c = self.iq.cartan(i, self.iq.tau[i]);
        if c % 2 != 0 {
            return Err(IHallError::Unsupported(format!("odd Cartan entry c_(i,tau i) = {c}")));
        }
        Ok(QuadCoeff::v_pow((-c / 2) as i32, q))
    }

    /// `[S_i]^{(n)}` at a split vertex, by the product definition in terms of
    /// `[S_i]^2 + v^{-1}(v^2-1)^2 [j]^2 K_i`.
    pub fn idivided_power_by_definition(&self, i: usize, n: u32, parity: Parity) -> Result<IHallElement, IHallError> {
        self.require_split_vertex(i)?;
        let q = self.q;
        let s = self.simple(i);
        let s2 = self.mul(&s, &s)?;
        let kk = self.torus(self.unit(i, 1));
        let v = QuadCoeff::v_pow(1, q);
        let c0 = &(&v - &QuadCoeff::v_pow(-1, q)) * &(&v - &QuadCoeff::v_pow(-1, q));
        let k = n / 2;
        let mut acc = if n % 2 == 1 { s.clone() } else { self.one() };
        for j in 1..=k as i64 {
            let m = match (parity, n % 2) {
                (Parity::Odd, _) => 2 * j - 1,
                (Parity::Even, 1) => 2 * j,
                (Parity::Even, _) => 2 * j - 2,
            };
            let qi = specialize_poly(&q_int(m), q);
            let factor = s2.add(&kk.scale(&(&(&v * &c0) * &(&qi * &qi))));
            acc = self.mul(&acc, &factor)?;
        }
        let f = specialize_poly(&q_factorial(n), q);
        Ok(acc.scale(&f.inv()?))
    }

    /// Closed-form expansion of the i-divided power of `[S_i]` at a split
    /// vertex without loops, in the basis `[(n-2k)S_i] * K_i^k`.
    pub fn idivided_power(&self, i: usize, n: u32, parity: Parity) -> Result<IHallElement, IHallError> {
        self.require_split_vertex(i)?;
        let q = self.q;
        let sign: i64 = match (parity, n % 2) {
            (Parity::Even, 0) | (Parity::Odd, 1) => -1,
            _ => 1,
        };
        let vmv = &QuadCoeff::v_pow(1, q) - &QuadCoeff::v_pow(-1, q);
        let mut out = IHallElement::zero();
        for k in 0..=(n / 2) as i64 {
            let r = n as i64 - 2 * k;
            let e = k * (k + sign) - r * (r - 1) / 2;
            let den = &specialize_poly(&q_factorial(r as u32), q) * &specialize_poly(&q_double_factorial(2 * k as u32), q);
            let c = &(&QuadCoeff::v_pow(e as i32, q) * &vmv.pow(k as i32)?) * &den.inv()?;
            let x = self.kq.identify(&multiple_of_simple(&self.kq, i, r as usize))?;
            out.add_term((x, self.unit(i, k)), &c);
        }
        Ok(out)
    }

    fn require_split_vertex(&self, i: usize) -> Result<(), IHallError> {
        let looped = self.iq.quiver.arrows.iter().any(|a| a.source == i && a.target == i);
        if i < self.n() && self.iq.is_split_vertex(i) && !looped {
            Ok(())
        } else {
            Err(IHallError::Unsupported("i-divided powers need a split vertex without loops".into()))
        }
    }

    pub fn render(&self, x: &IHallElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&IKey> = x.terms.keys().collect();
        keys.sort_by_key(|k| (self.kq.class(k.0).total_dim(), k.0, k.1.clone()));
        keys.iter()
            .map(|k| {
                let mut s = format!("({}) * [{}]", x.terms[*k], self.kq.class(k.0).label);
                if k.1.iter().any(|&a| a != 0) {
                    let parts: Vec<String> = k.1.iter().map(|a| a.to_string()).collect();
                    s.push_str(&format!(" * K{{{}}}", parts.join(",")));
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self, x: &IHallElement) -> String {
        #[derive(Serialize)]
        struct Term {
            module: String,
            dims: Vec<usize>,
            alpha: Vec<i64>,
            coeff: String,
        }
        let terms: Vec<Term> = x
            .terms
            .iter()
            .map(|((id, alpha), c)| {
                let cls = self.kq.class(*id);
                Term {
                    module: cls.label.clone(),
                    dims: cls.dims().to_vec(),
                    alpha: alpha.clone(),
                    coeff: c.to_string(),
                }
            })
            .collect();
        serde_json::to_string_pretty(&terms).expect("serializable")
    }
}

/// `S_i^{(+) k}` as a module of the given category.
pub fn multiple_of_simple(cat: &ModCat, i: usize, k: usize) -> FqRep {
    let s = cat.simple(i);
    let mut acc = cat.zero_rep();
    for _ in 0..k {
        acc = acc.direct_sum(&s);
    }
    acc
}

pub mod rank_one;

#[cfg(test)]
mod tests;
