//! Reflection functors at a sink or source orbit of an iquiver, the induced
//! isomorphism of iHall algebras, and the braid operators `T''_{i,1}` on the
//! universal iquantum group that they realize.
//!
//! Modules over the iquiver algebra are handled as representations of the
//! bound quiver `Q-bar`. At a sink `l` the functor replaces the spaces at
//! `l` and `tau l` by the kernels of their incoming maps; the eps-action on
//! the kernels is the one induced componentwise. The source version is
//! obtained by conjugating with vector space duality.

#[cfg(test)]
mod tests;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::exactarith::{QuadCoeff, RationalFunction};
use crate::ihallalg::{IHall, IHallElement, IHallError, Parity, TuiGen};
use crate::iqgverify::{evaluate, IqgError, NCExpr, PsiEval, Sym};
use crate::linalg::{Coords, Mat};
use crate::quiver::{bound_quiver, validate_iquiver, BoundQuiver, IQuiver, Quiver, QuiverError};
use crate::repmod::{ext_data, hom_dim, FqRep, RepError};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReflectError {
    #[error(transparent)]
    Hall(#[from] IHallError),
    #[error(transparent)]
    Iqg(#[from] IqgError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("vertex `{0}` is not a sink")]
    NotSink(String),
    #[error("vertex `{0}` is not a source")]
    NotSource(String),
    #[error("vertex `{0}` has c(i, tau i) = {1}; braid operators need 0 or 2")]
    NotInTauBar(String, i64),
    #[error("{0}")]
    Unsupported(String),
    #[error("inconsistent torsion resolution: {0}")]
    Resolution(String),
}

impl From<RepError> for ReflectError {
    fn from(e: RepError) -> Self {
        ReflectError::Hall(IHallError::Rep(e))
    }
}

fn orbit(iq: &IQuiver, l: usize) -> Vec<usize> {
    if iq.tau[l] == l {
        vec![l]
    } else {
        vec![l, iq.tau[l]]
    }
}

pub fn is_sink(q: &Quiver, l: usize) -> bool {
    q.arrows.iter().all(|a| a.source != l)
}

pub fn is_source(q: &Quiver, l: usize) -> bool {
    q.arrows.iter().all(|a| a.target != l)
}

/// `s_l Q`: every arrow incident to the orbit of `l` reversed. For a sink
/// or source orbit these are exactly the arrows ending (or starting) there.
pub fn reflect_iquiver(iq: &IQuiver, l: usize) -> Result<IQuiver, ReflectError> {
    let o = orbit(iq, l);
    let q = &iq.quiver;
    let arrows: Vec<(String, String, String)> = q
        .arrows
        .iter()
        .map(|a| {
            let (s, t) = if o.contains(&a.source) || o.contains(&a.target) {
                (a.target, a.source)
            } else {
                (a.source, a.target)
            };
            (q.vertices[s].clone(), q.vertices[t].clone(), a.label.clone())
        })
        .collect();
    let quiver = Quiver::new(&q.vertices, &arrows, q.allow_loops)?;
    Ok(validate_iquiver(quiver, &iq.tau, Some(&iq.arrow_tau))?)
}

/// The iquiver on the opposite quiver with the same involutions.
pub fn opposite_iquiver(iq: &IQuiver) -> IQuiver {
    validate_iquiver(iq.quiver.opposite(), &iq.tau, Some(&iq.arrow_tau)).expect("opposite of an iquiver is an iquiver")
}

/// The dual representation over the iquiver algebra of the opposite iquiver.
/// `eps_i` of the dual is the transpose of `eps_{tau i}`.
pub fn dual_module(from: &BoundQuiver, to: &BoundQuiver, tau: &[usize], m: &FqRep) -> FqRep {
    let mut out = FqRep::zero_with_dims(to, m.q, m.dims.clone());
    for k in 0..from.qbar.arrows.len() {
        if !from.eps.contains(&k) {
            out.maps[k] = m.maps[k].transpose();
        }
    }
    for (i, &t) in tau.iter().enumerate() {
        out.maps[to.eps[i]] = m.maps[from.eps[t]].transpose();
    }
    out
}

/// `s_l` on dimension vectors, composed with `s_{tau l}` for a two-element orbit.
pub fn reflect_dims(iq: &IQuiver, l: usize, d: &[i64]) -> Vec<i64> {
    let c = iq.form_data().cartan;
    let mut out = d.to_vec();
    for v in orbit(iq, l) {
        let pairing: i64 = (0..out.len()).map(|j| c[v][j] * out[j]).sum();
        out[v] -= pairing;
    }
    out
}

fn sub_block(m: &Mat, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
    let mut out = Mat::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            out.set(r, c, m.get(r0 + r, c0 + c));
        }
    }
    out
}

fn hcat(rows: usize, blocks: &[&Mat]) -> Mat {
    let cols: Vec<Vec<u32>> = blocks.iter().flat_map(|b| (0..b.cols).map(move |j| b.col(j))).collect();
    Mat::from_cols(rows, &cols)
}

fn q_arrows_into(bq: &BoundQuiver, v: usize) -> Vec<usize> {
    bq.q_arrows().into_iter().filter(|&k| bq.qbar.arrows[k].target == v).collect()
}

/// The kernel construction at a sink orbit. `bq` belongs to `iq` and `out`
/// to the reflected iquiver; arrow indices agree between the two.
pub fn sink_functor(iq: &IQuiver, bq: &BoundQuiver, out: &BoundQuiver, l: usize, m: &FqRep) -> FqRep {
    let q = m.q;
    let o = orbit(iq, l);
    let mut dims = m.dims.clone();
    let mut kernels: HashMap<usize, Mat> = HashMap::new();
    let mut offsets: HashMap<usize, HashMap<usize, usize>> = HashMap::new();
    let mut domain: HashMap<usize, usize> = HashMap::new();
    for &v in &o {
        let arrows = q_arrows_into(bq, v);
        let mut off = HashMap::new();
        let mut total = 0;
        for &k in &arrows {
            off.insert(k, total);
            total += m.dims[bq.qbar.arrows[k].source];
        }
        let blocks: Vec<&Mat> = arrows.iter().map(|&k| &m.maps[k]).collect();
        let phi = hcat(m.dims[v], &blocks);
        let ker = if total == 0 { Vec::new() } else { phi.nullspace(q) };
        let kmat = Mat::from_cols(total, &ker);
        dims[v] = kmat.cols;
        kernels.insert(v, kmat);
        offsets.insert(v, off);
        domain.insert(v, total);
    }
    let mut n = FqRep::zero_with_dims(out, q, dims);
    for k in bq.q_arrows() {
        let a = &bq.qbar.arrows[k];
        if o.contains(&a.target) {
            let kv = &kernels[&a.target];
            n.maps[k] = sub_block(kv, offsets[&a.target][&k], m.dims[a.source], 0, kv.cols);
        } else {
            n.maps[k] = m.maps[k].clone();
        }
    }
    for u in 0..iq.n() {
        if !o.contains(&u) {
            n.maps[out.eps[u]] = m.maps[bq.eps[u]].clone();
        }
    }
    for &v in &o {
        let tv = iq.tau[v];
        let (kv, kt) = (&kernels[&v], &kernels[&tv]);
        let mut e = Mat::zeros(domain[&tv], domain[&v]);
        for (&k, &c0) in &offsets[&v] {
            let kt_arrow = iq.arrow_tau[k];
            let r0 = offsets[&tv][&kt_arrow];
            let s = bq.qbar.arrows[k].source;
            let eps = &m.maps[bq.eps[s]];
            for r in 0..eps.rows {
                for c in 0..eps.cols {
                    e.set(r0 + r, c0 + c, eps.get(r, c));
                }
            }
        }
        n.maps[out.eps[v]] = if kt.cols == 0 || kv.cols == 0 {
            Mat::zeros(kt.cols, kv.cols)
        } else {
            Coords::new(kt, q).of_mat(&e.mul(kv, q))
        };
    }
    n
}

/// Vectors completing the radical at `v` (the span of all images of arrows
/// of `Q-bar` ending at `v`) to a basis of `M_v`.
fn top_complement(bq: &BoundQuiver, m: &FqRep, v: usize) -> Vec<Vec<u32>> {
    let q = m.q;
    let d = m.dims[v];
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for (k, a) in bq.qbar.arrows.iter().enumerate() {
        if a.target == v {
            cols.extend((0..m.maps[k].cols).map(|j| m.maps[k].col(j)));
        }
    }
    let mut basis: Vec<Vec<u32>> = if cols.is_empty() {
        Vec::new()
    } else {
        let cs = Mat::from_cols(d, &cols).column_space(q);
        (0..cs.cols).map(|j| cs.col(j)).collect()
    };
    let mut extra = Vec::new();
    for i in 0..d {
        let mut u = vec![0u32; d];
        u[i] = 1;
        let mut trial = basis.clone();
        trial.push(u.clone());
        if Mat::from_cols(d, &trial).rank(q) == trial.len() {
            basis = trial;
            extra.push(u);
        }
    }
    extra
}

/// `t` copies of the generalized simple `E_i`.
fn free_copies(iq: &IQuiver, bq: &BoundQuiver, q: u32, i: usize, t: usize) -> FqRep {
    let ti = iq.tau[i];
    let mut dims = vec![0; iq.n()];
    dims[i] += t;
    dims[ti] += t;
    let mut e = FqRep::zero_with_dims(bq, q, dims);
    let mut eps = Mat::zeros(if ti == i { 2 * t } else { t }, if ti == i { 2 * t } else { t });
    for k in 0..t {
        if ti == i {
            eps.set(t + k, k, 1);
        } else {
            eps.set(k, k, 1);
        }
    }
    e.maps[bq.eps[i]] = eps;
    e
}

/// Glues `cs.len()` copies of `E_{i0}` onto `m` so that the given vectors at
/// the sink `v` become images of the new generators along an arrow `i0 -> v`.
fn cover_top(iq: &IQuiver, bq: &BoundQuiver, m: &FqRep, v: usize, cs: &[Vec<u32>]) -> Result<(FqRep, FqRep), ReflectError> {
    let q = m.q;
    let t = cs.len();
    let a0 = *q_arrows_into(bq, v).first().ok_or_else(|| {
        ReflectError::Unsupported(format!("vertex `{}` has no incoming arrow to absorb its top", iq.vertex_name(v)))
    })?;
    let i0 = bq.qbar.arrows[a0].source;
    let ti0 = iq.tau[i0];
    let ta0 = iq.arrow_tau[a0];
    let mut dims = m.dims.clone();
    let x_at = m.dims[i0];
    let ex_at = if ti0 == i0 { m.dims[i0] + t } else { m.dims[ti0] };
    dims[i0] += t;
    dims[ti0] += t;
    let mut x = FqRep::zero_with_dims(bq, q, dims.clone());
    for (k, a) in bq.qbar.arrows.iter().enumerate() {
        let mut mk = Mat::zeros(dims[a.target], dims[a.source]);
        let old = &m.maps[k];
        for r in 0..old.rows {
            for c in 0..old.cols {
                mk.set(r, c, old.get(r, c));
            }
        }
        x.maps[k] = mk;
    }
    let eps_v = &m.maps[bq.eps[v]];
    for (k, c) in cs.iter().enumerate() {
        for (r, &val) in c.iter().enumerate() {
            x.maps[a0].set(r, x_at + k, val);
        }
        let ec = eps_v.mul_vec(c, q);
        for (r, &val) in ec.iter().enumerate() {
            x.maps[ta0].set(r, ex_at + k, val);
        }
        x.maps[bq.eps[i0]].set(ex_at + k, x_at + k, 1);
    }
    x.validate(bq)?;
    Ok((x, free_copies(iq, bq, q, i0, t)))
}

/// A short exact sequence `0 -> M -> X -> T -> 0` with `X`, `T` free of
/// top at the sink orbit and `T` a sum of generalized simples.
pub fn sink_resolution(iq: &IQuiver, bq: &BoundQuiver, l: usize, m: &FqRep) -> Result<(FqRep, FqRep), ReflectError> {
    let mut x = m.clone();
    let mut t = FqRep::zero(bq, m.q);
    for v in orbit(iq, l) {
        let cs = top_complement(bq, &x, v);
        if cs.is_empty() {
            continue;
        }
        let (nx, e) = cover_top(iq, bq, &x, v, &cs)?;
        x = nx;
        t = t.direct_sum(&e);
    }
    if orbit(iq, l).iter().any(|&v| !top_complement(bq, &x, v).is_empty()) {
        return Err(ReflectError::Resolution("top at the sink orbit survived".into()));
    }
    Ok((x, t))
}

/// Whether `Hom(M, S_l + S_{tau l}) = 0`.
pub fn in_torsion_class(iq: &IQuiver, bq: &BoundQuiver, l: usize, m: &FqRep) -> bool {
    orbit(iq, l).iter().all(|&v| top_complement(bq, m, v).is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Sink,
    Source,
}

/// The isomorphism `Gamma_l` (at a sink) or `Gamma_l^-` (at a source)
/// between the iHall algebras of `Q` and `s_l Q`.
pub struct Reflection {
    pub vertex: usize,
    pub dir: Direction,
    pub src: Arc<IHall>,
    pub dst: Arc<IHall>,
    /// The iquiver where the kernel construction runs: `Q` at a sink, its
    /// opposite at a source; `work_out` is its reflection.
    work: IQuiver,
    work_bq: BoundQuiver,
    work_out: IQuiver,
    work_out_bq: BoundQuiver,
    cache: Mutex<HashMap<usize, IHallElement>>,
}

impl Reflection {
    pub fn new(iq: IQuiver, l: usize, q: u32, dir: Direction) -> Result<Self, ReflectError> {
        let target = reflect_iquiver(&iq, l)?;
        Self::between(Arc::new(IHall::new(iq, q)), Arc::new(IHall::new(target, q)), l, dir)
    }

    /// Uses existing algebras, so that elements can be passed back and forth.
    pub fn between(src: Arc<IHall>, dst: Arc<IHall>, l: usize, dir: Direction) -> Result<Self, ReflectError> {
        let iq = &src.iq;
        let name = iq.vertex_name(l).to_string();
        let work = match dir {
            Direction::Sink => {
                if !is_sink(&iq.quiver, l) {
                    return Err(ReflectError::NotSink(name));
                }
                iq.clone()
            }
            Direction::Source => {
                if !is_source(&iq.quiver, l) {
                    return Err(ReflectError::NotSource(name));
                }
                opposite_iquiver(iq)
            }
        };
        if reflect_iquiver(iq, l)?.quiver != dst.iq.quiver {
            return Err(ReflectError::Unsupported("target algebra does not belong to the reflected iquiver".into()));
        }
        let work_out = reflect_iquiver(&work, l)?;
        Ok(Self {
            vertex: l,
            dir,
            work_bq: bound_quiver(&work),
            work_out_bq: bound_quiver(&work_out),
            work,
            work_out,
            src,
            dst,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// `F_l^+` or `F_l^-` on a module over the source iquiver algebra.
    pub fn functor(&self, m: &FqRep) -> FqRep {
        let l = self.vertex;
        match self.dir {
            Direction::Sink => sink_functor(&self.work, &self.work_bq, &self.work_out_bq, l, m),
            Direction::Source => {
                let dm = dual_module(&self.src.bq, &self.work_bq, &self.src.iq.tau, m);
                let r = sink_functor(&self.work, &self.work_bq, &self.work_out_bq, l, &dm);
                dual_module(&self.work_out_bq, &self.dst.bq, &self.work_out.tau, &r)
            }
        }
    }

    /// `(X, T)` with `0 -> M -> X -> T -> 0` at a sink and
    /// `0 -> T -> X -> M -> 0` at a source; `X`, `T` lie in the subcategory
    /// where the functor is an equivalence and `T` has projective dimension
    /// at most one.
    pub fn resolution(&self, m: &FqRep) -> Result<(FqRep, FqRep), ReflectError> {
        let l = self.vertex;
        match self.dir {
            Direction::Sink => sink_resolution(&self.work, &self.work_bq, l, m),
            Direction::Source => {
                let dm = dual_module(&self.src.bq, &self.work_bq, &self.src.iq.tau, m);
                let (x, t) = sink_resolution(&self.work, &self.work_bq, l, &dm)?;
                let back = |r: &FqRep| dual_module(&self.work_bq, &self.src.bq, &self.work.tau, r);
                Ok((back(&x), back(&t)))
            }
        }
    }

    pub fn reflect_dims(&self, d: &[i64]) -> Vec<i64> {
        reflect_dims(&self.src.iq, self.vertex, d)
    }

    fn torus_inverse(h: &IHall, t: &IHallElement) -> Result<IHallElement, ReflectError> {
        let mut it = t.terms.iter();
        match (it.next(), it.next()) {
            (Some(((x, a), c)), None) if *x == h.kq.zero_id() => {
                let neg: Vec<i64> = a.iter().map(|e| -e).collect();
                Ok(h.torus(neg).scale(&c.inv().map_err(IHallError::from)?))
            }
            _ => Err(ReflectError::Resolution("torsion term is not a torus element".into())),
        }
    }

    fn combine(&self, h: &IHall, x: &IHallElement, t: &IHallElement) -> Result<IHallElement, ReflectError> {
        let ti = Self::torus_inverse(h, t)?;
        Ok(match self.dir {
            Direction::Sink => h.mul(&ti, x)?,
            Direction::Source => h.mul(x, &ti)?,
        })
    }

    /// The scalar `c` with `[M] = c [T]^{-1} * [X]` (sink) or
    /// `[M] = c [X] * [T]^{-1}` (source) in the source algebra.
    pub fn resolution_scalar(&self, m: &FqRep, x: &FqRep, t: &FqRep) -> Result<QuadCoeff, ReflectError> {
        let h = &self.src;
        let lhs = h.class_of(m)?;
        let rhs = self.combine(h, &h.class_of(x)?, &h.class_of(t)?)?;
        let (k, c) = lhs.terms.iter().next().ok_or_else(|| ReflectError::Resolution("zero class".into()))?;
        match rhs.terms.get(k) {
            Some(d) if rhs.terms.len() == 1 => Ok(c.checked_div(d).map_err(IHallError::from)?),
            _ => Err(ReflectError::Resolution(format!("{} is not a multiple of {}", h.render(&rhs), h.render(&lhs)))),
        }
    }

    /// `v^{<res T, res M>_Q} q^{-<T, M>}` for a sink resolution.
    pub fn sink_prefactor(&self, m: &FqRep, t: &FqRep) -> QuadCoeff {
        let h = &self.src;
        let q = h.q();
        let e = h.iq.form_data().euler_form(&t.dims_i64(), &m.dims_i64());
        let hom = hom_dim(&h.bq, t, m) as i32;
        let ext = ext_data(&h.bq, t, m).ext_dim() as i32;
        QuadCoeff::v_pow(e as i32 - 2 * (hom - ext), q)
    }

    /// `Gamma([M])` for an arbitrary module over the source iquiver algebra.
    pub fn gamma_module(&self, m: &FqRep) -> Result<IHallElement, ReflectError> {
        let (x, t) = self.resolution(m)?;
        let c = self.resolution_scalar(m, &x, &t)?;
        let fx = self.dst.class_of(&self.functor(&x))?;
        let ft = self.dst.class_of(&self.functor(&t))?;
        Ok(self.combine(&self.dst, &fx, &ft)?.scale(&c))
    }

    fn gamma_class(&self, id: usize) -> Result<IHallElement, ReflectError> {
        if let Some(x) = self.cache.lock().unwrap().get(&id) {
            return Ok(x.clone());
        }
        let m = self.src.lift(&self.src.kq.class(id).rep);
        let out = self.gamma_module(&m)?;
        self.cache.lock().unwrap().insert(id, out.clone());
        Ok(out)
    }

    /// `Gamma` on an element in the basis `[X] * K_alpha`, using
    /// `Gamma(K_alpha) = K'_{s alpha}`.
    pub fn gamma(&self, x: &IHallElement) -> Result<IHallElement, ReflectError> {
        let mut out = IHallElement::zero();
        for ((id, alpha), c) in &x.terms {
            let k = self.dst.torus(self.reflect_dims(alpha));
            let img = self.dst.mul(&self.gamma_class(*id)?, &k)?;
            out = out.add(&img.scale(c));
        }
        Ok(out)
    }
}

fn vpow(e: i64) -> RationalFunction {
    RationalFunction::v_pow(e as i32)
}

fn sign(e: i64) -> RationalFunction {
    if e.rem_euclid(2) == 0 {
        RationalFunction::one()
    } else {
        RationalFunction::from_int(-1)
    }
}

/// `(-v^2 tk_i)^e`, allowing negative `e`.
fn neg_v2_tk_pow(i: usize, e: i64) -> NCExpr {
    let s = if e >= 0 { Sym::Tk(i) } else { Sym::TkInv(i) };
    let word = vec![s; e.unsigned_abs() as usize];
    NCExpr::word(&sign(e) * &vpow(2 * e), word)
}

fn tk_pow(i: usize, e: i64) -> NCExpr {
    let s = if e >= 0 { Sym::Tk(i) } else { Sym::TkInv(i) };
    NCExpr::mono(&vec![s; e.unsigned_abs() as usize])
}

/// A divided-power token, or the empty word in order zero.
fn div(s: Sym) -> NCExpr {
    match s {
        Sym::BDiv(_, 0) | Sym::BiDiv(_, 0, _) => NCExpr::one(),
        s => NCExpr::atom(s),
    }
}

/// `T''_{i,1}` on a generator `B_j`, `tk_j` or `tk_j^{-1}`. The parity
/// `p` selects the i-divided powers used at a split vertex.
pub fn braid_t(iq: &IQuiver, i: usize, target: Sym, p: Parity) -> Result<NCExpr, ReflectError> {
    let c = iq.form_data().cartan;
    let ti = iq.tau[i];
    if ti != i && c[i][ti] != 0 {
        return Err(ReflectError::NotInTauBar(iq.vertex_name(i).to_string(), c[i][ti]));
    }
    let atom = NCExpr::atom;
    if ti == i {
        return Ok(match target {
            Sym::Tk(j) => neg_v2_tk_pow(i, -c[i][j]).mul(&atom(Sym::Tk(j))),
            Sym::TkInv(j) => neg_v2_tk_pow(i, c[i][j]).mul(&atom(Sym::TkInv(j))),
            Sym::B(j) if j == i => neg_v2_tk_pow(i, -1).mul(&atom(Sym::B(i))),
            Sym::B(j) => {
                let m = -c[i][j];
                let other = p.plus(c[i][j]);
                let mut out = NCExpr::zero();
                for u in 0..=m / 2 {
                    for r in 0..=m - 2 * u {
                        let s = m - 2 * u - r;
                        if u > 0 && Parity::of(r) != p {
                            continue;
                        }
                        let w = NCExpr::product(&[
                            div(Sym::BiDiv(i, r as u32, p)),
                            atom(Sym::B(j)),
                            div(Sym::BiDiv(i, s as u32, other)),
                            neg_v2_tk_pow(i, u),
                        ]);
                        out = out.add(&w.scale(&(&sign(r) * &vpow(r))));
                    }
                }
                out
            }
            other => return Err(ReflectError::Unsupported(format!("no braid image for {other:?}"))),
        });
    }
    Ok(match target {
        Sym::Tk(j) => NCExpr::product(&[tk_pow(i, -c[i][j]), tk_pow(ti, -c[ti][j]), atom(Sym::Tk(j))]),
        Sym::TkInv(j) => NCExpr::product(&[tk_pow(i, c[i][j]), tk_pow(ti, c[ti][j]), atom(Sym::TkInv(j))]),
        Sym::B(j) if j == i => NCExpr::product(&[atom(Sym::TkInv(i)), atom(Sym::B(ti))]).scale(&RationalFunction::from_int(-1)),
        Sym::B(j) if j == ti => NCExpr::product(&[atom(Sym::B(i)), atom(Sym::TkInv(ti))]).scale(&RationalFunction::from_int(-1)),
        Sym::B(j) => {
            let (a, b) = (-c[i][j], -c[ti][j]);
            let mut out = NCExpr::zero();
            for u in 0..=a.max(b) {
                for r in 0..=(a - u) {
                    for s in 0..=(b - u) {
                        let w = NCExpr::product(&[
                            div(Sym::BDiv(i, r as u32)),
                            div(Sym::BDiv(ti, (b - u - s) as u32)),
                            atom(Sym::B(j)),
                            div(Sym::BDiv(ti, s as u32)),
                            div(Sym::BDiv(i, (a - r - u) as u32)),
                            tk_pow(ti, u),
                        ]);
                        let e = r - s + (a - r - s - u) * u;
                        out = out.add(&w.scale(&(&sign(r + s) * &vpow(e))));
                    }
                }
            }
            out
        }
        other => return Err(ReflectError::Unsupported(format!("no braid image for {other:?}"))),
    })
}

/// `psi_{Q'}(T''_{i,1}(g)) = Gamma_i(psi_Q(g))` for every generator `g`.
pub fn verify_commuting_square(iq: &IQuiver, i: usize, q: u32, p: Parity) -> Result<Report, ReflectError> {
    let r = Reflection::new(iq.clone(), i, q, Direction::Sink)?;
    commuting_square(&r, p)
}

pub fn commuting_square(r: &Reflection, p: Parity) -> Result<Report, ReflectError> {
    let iq = &r.src.iq;
    let names = &iq.quiver.vertices;
    let pn = if p == Parity::Even { 0 } else { 1 };
    let mut rep = Report::new();
    for j in 0..iq.n() {
        for (g, s) in [(TuiGen::B(j), Sym::B(j)), (TuiGen::K(j), Sym::Tk(j)), (TuiGen::KInv(j), Sym::TkInv(j))] {
            let id = format!("square({},p={pn})", s.render(names));
            let lhs = evaluate(&PsiEval { h: &r.dst }, &braid_t(iq, r.vertex, s, p)?)?;
            let rhs = r.gamma(&r.src.psi_image(g)?)?;
            let diff = lhs.sub(&rhs);
            if diff.is_zero() {
                rep.push(id, true, "");
            } else {
                rep.push(id, false, format!("T-side {} ; Gamma-side {}", r.dst.render(&lhs), r.dst.render(&rhs)));
            }
        }
    }
    Ok(rep)
}

/// `Gamma^-` at the same vertex undoes `Gamma` on simples and torus generators.
pub fn verify_inverse(r: &Reflection) -> Result<Report, ReflectError> {
    let back = Reflection::between(r.dst.clone(), r.src.clone(), r.vertex, match r.dir {
        Direction::Sink => Direction::Source,
        Direction::Source => Direction::Sink,
    })?;
    let h = &r.src;
    let names = &h.iq.quiver.vertices;
    let mut rep = Report::new();
    for j in 0..h.n() {
        let mut e = vec![0; h.n()];
        e[j] = 1;
        for (id, x) in [(format!("S{}", names[j]), h.simple(j)), (format!("K{}", names[j]), h.torus(e))] {
            let y = back.gamma(&r.gamma(&x)?)?;
            let ok = y == x;
            rep.push(format!("inverse({id})"), ok, if ok { String::new() } else { h.render(&y) });
        }
    }
    Ok(rep)
}
