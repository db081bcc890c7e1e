//! Evaluation of relation sets inside iHall algebras.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactarith::{q_binom_or_zero, q_factorial, specialize, specialize_poly, QuadCoeff};
use crate::hallcore::uw_data;
use crate::ihallalg::{multiple_of_simple, IHall, IHallElement, IHallError, Parity, TuiGen};
use crate::quiver::{BoundQuiver, IQuiver, Quiver};
use crate::repmod::RepError;
use crate::report::Report;

use super::identities::p_tilde;
use super::ncexpr::{NCExpr, Sym};
use super::relations::{relation_set, Style};
use super::IqgError;

/// Assigns iHall elements to generator symbols.
pub trait Evaluator {
    fn hall(&self) -> &IHall;
    fn image(&self, s: Sym) -> Result<IHallElement, IqgError>;
}

/// The map from the universal iquantum group.
pub struct PsiEval<'a> {
    pub h: &'a IHall,
}

impl Evaluator for PsiEval<'_> {
    fn hall(&self) -> &IHall {
        self.h
    }

    fn image(&self, s: Sym) -> Result<IHallElement, IqgError> {
        let g = match s {
            Sym::B(j) => TuiGen::B(j),
            Sym::Tk(i) => TuiGen::K(i),
            Sym::TkInv(i) => TuiGen::KInv(i),
            other => return Err(IqgError::UnsupportedSymbol(format!("{other:?}"))),
        };
        Ok(self.h.psi_image(g)?)
    }
}

/// The map from the Drinfeld double into the iHall algebra of the diagonal
/// iquiver: `E_i -> v/(q-1) [S_i']`, `F_i -> -1/(q-1) [S_i]`,
/// `K~_i -> K_i`, `K~'_i -> K_i'`.
pub struct DoubleEval<'a> {
    pub h: &'a IHall,
    pub n: usize,
}

impl Evaluator for DoubleEval<'_> {
    fn hall(&self) -> &IHall {
        self.h
    }

    fn image(&self, s: Sym) -> Result<IHallElement, IqgError> {
        let q = self.h.q();
        let qm1 = BigRational::from_integer(BigInt::from(q as i64 - 1));
        let unit = |i: usize, e: i64| {
            let mut a = vec![0; 2 * self.n];
            a[i] = e;
            self.h.torus(a)
        };
        Ok(match s {
            Sym::E(i) => self.h.simple(i + self.n).scale(&QuadCoeff::v_pow(1, q).scale(&qm1.recip())),
            Sym::F(i) => self.h.simple(i).scale(&QuadCoeff::from_rational(-qm1.recip(), q)),
            Sym::Kt(i) => unit(i, 1),
            Sym::KtInv(i) => unit(i, -1),
            Sym::Kp(i) => unit(i + self.n, 1),
            Sym::KpInv(i) => unit(i + self.n, -1),
            other => return Err(IqgError::UnsupportedSymbol(format!("{other:?}"))),
        })
    }
}

/// Evaluates an expression after expanding divided-power tokens. Word
/// prefixes are cached.
pub fn evaluate(ev: &dyn Evaluator, e: &NCExpr) -> Result<IHallElement, IqgError> {
    let h = ev.hall();
    let q = h.q();
    let mut cache: HashMap<Vec<Sym>, IHallElement> = HashMap::new();
    let mut images: HashMap<Sym, IHallElement> = HashMap::new();
    let mut out = IHallElement::zero();
    for (w, c) in &e.expand().terms {
        let mut acc = h.one();
        for k in 0..w.len() {
            let prefix = &w[..=k];
            if let Some(x) = cache.get(prefix) {
                acc = x.clone();
                continue;
            }
            let img = match images.get(&w[k]) {
                Some(x) => x.clone(),
                None => {
                    let x = ev.image(w[k])?;
                    images.insert(w[k], x.clone());
                    x
                }
            };
            acc = h.mul(&acc, &img)?;
            cache.insert(prefix.to_vec(), acc.clone());
        }
        out = out.add(&acc.scale(&specialize(c, q)?));
    }
    Ok(out)
}

fn is_capacity(e: &IqgError) -> bool {
    matches!(e, IqgError::Hall(IHallError::Rep(RepError::Capacity(_))))
}

fn check_relations(ev: &dyn Evaluator, rels: super::relations::RelationSet) -> Result<Report, IqgError> {
    let mut rels = rels;
    rels.sort_by(|a, b| a.id.cmp(&b.id));
    let mut rep = Report::new();
    for r in rels {
        match evaluate(ev, &r.residual()) {
            Ok(x) if x.is_zero() => rep.push(r.id, true, ""),
            Ok(x) => rep.push(r.id, false, ev.hall().render(&x)),
            Err(e) if is_capacity(&e) => rep.skip(r.id, e.to_string()),
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

/// Substitutes the Hall images of `B_i`, `tk_i` into every relation of the
/// chosen presentation and reports the residuals.
pub fn verify_presentation(iq: &IQuiver, q: u32, style: Style) -> Result<Report, IqgError> {
    if style == Style::DrinfeldDoubleSerre {
        return verify_drinfeld_double(&iq.quiver, q);
    }
    let rels = relation_set(&iq.form_data(), &iq.tau, &iq.quiver.vertices, style)?;
    let h = IHall::new(iq.clone(), q);
    check_relations(&PsiEval { h: &h }, rels)
}

/// Checks the relations of `U~` on the iHall algebra of the diagonal iquiver
/// of an acyclic quiver.
pub fn verify_drinfeld_double(quiver: &Quiver, q: u32) -> Result<Report, IqgError> {
    if BoundQuiver::path_algebra(quiver.clone()).has_oriented_cycle() {
        return Err(IqgError::Constraint("the quiver must be acyclic".into()));
    }
    let n = quiver.n_vertices();
    let tau: Vec<usize> = (0..n).collect();
    let rels = relation_set(&quiver.form_data(), &tau, &quiver.vertices, Style::DrinfeldDoubleSerre)?;
    let h = IHall::new(IQuiver::diagonal(quiver), q);
    check_relations(&DoubleEval { h: &h, n }, rels)
}

/// The split rank-two iquiver with `a` arrows `1 -> 2` and `b` arrows `2 -> 1`.
pub fn split_rank_two(a: usize, b: usize) -> IQuiver {
    IQuiver::split(Quiver::rank_two(a, b))
}

/// `sum_n (-1)^n [S_1]^{(n)}_p * [S_2] * [S_1]^{(1+a+b-n)}_{a+b+p}` on the
/// split rank-two iquiver, using the closed-form i-divided powers.
pub fn iserre_sum(h: &IHall, a: usize, b: usize, parity: Parity) -> Result<IHallElement, IqgError> {
    let top = (1 + a + b) as u32;
    let other = parity.plus((a + b) as i64);
    let s2 = h.simple(1);
    let mut sum = IHallElement::zero();
    for n in 0..=top {
        let l = h.idivided_power(0, n, parity)?;
        let r = h.idivided_power(0, top - n, other)?;
        let term = h.mul(&h.mul(&l, &s2)?, &r)?;
        sum = if n % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
    }
    Ok(sum)
}

pub fn verify_iserre(a: usize, b: usize, q: u32, parity: Parity) -> Result<Report, IqgError> {
    let h = IHall::new(split_rank_two(a, b), q);
    let mut rep = Report::new();
    let pn = if parity == Parity::Even { 0 } else { 1 };
    let id = format!("iserre(a={a},b={b},q={q},p={pn})");
    match iserre_sum(&h, a, b, parity) {
        Ok(x) if x.is_zero() => rep.push(id, true, ""),
        Ok(x) => rep.push(id, false, h.render(&x)),
        Err(e) if is_capacity(&e) => rep.skip(id, e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(rep)
}

/// Right-hand side of the closed formula for `[sS_1] * [S_2] * [tS_1]`:
/// `v^{-tb} sum_r sum_M v^{p~} (v-v^{-1})^{s-r+t+1} [s]![t]!/[r]!
/// [u-w, t-r-w] / |Aut M| [M] * K_1^r` over modules `M` of dimension
/// `(s+t-2r, 1)` with `W_M <= U_M`.
pub fn sss_formula(h: &IHall, a: usize, b: usize, s: usize, t: usize) -> Result<IHallElement, IqgError> {
    let q = h.q();
    let (ai, bi, si, ti) = (a as i64, b as i64, s as i64, t as i64);
    let vmv = &QuadCoeff::v_pow(1, q) - &QuadCoeff::v_pow(-1, q);
    let mut out = IHallElement::zero();
    for r in 0..=s.min(t) {
        let ri = r as i64;
        let fact = &(&specialize_poly(&q_factorial(s as u32), q) * &specialize_poly(&q_factorial(t as u32), q))
            * &specialize_poly(&q_factorial(r as u32), q).inv()?;
        for m in h.kq.classes_of_dims(&[s + t - 2 * r, 1])? {
            let rep = h.kq.class(m).rep.clone();
            let (u, w, ok) = uw_data(&rep, a, b);
            if !ok {
                continue;
            }
            let (u, w) = (u as i64, w as i64);
            let e = -ti * bi + p_tilde(ai, bi, ri, si, ti, u, w);
            let bin = specialize_poly(&q_binom_or_zero(u - w, ti - ri - w), q);
            let aut = QuadCoeff::from_rational(BigRational::from_integer(h.kq.aut_count(m)?), q);
            let c = &(&(&QuadCoeff::v_pow(e as i32, q) * &vmv.pow((si - ri + ti + 1) as i32)?) * &(&fact * &bin)) * &aut.inv()?;
            out.add_term((m, vec![ri, 0]), &c);
        }
    }
    Ok(out)
}

/// Compares the closed triple-product formula with direct products.
pub fn verify_sss(a: usize, b: usize, q: u32, max_st: usize) -> Result<Report, IqgError> {
    let h = IHall::new(split_rank_two(a, b), q);
    let mut rep = Report::new();
    for s in 0..=max_st {
        for t in 0..=max_st {
            let id = format!("sss(a={a},b={b},q={q},s={s},t={t})");
            let ss = h.kq.identify(&multiple_of_simple(&h.kq, 0, s))?;
            let ts = h.kq.identify(&multiple_of_simple(&h.kq, 0, t))?;
            let direct = h.mul_all(&[&h.basis(ss, vec![0, 0]), &h.simple(1), &h.basis(ts, vec![0, 0])])?;
            let formula = sss_formula(&h, a, b, s, t)?;
            let diff = direct.sub(&formula);
            if diff.is_zero() {
                rep.push(id, true, "");
            } else {
                rep.push(id, false, h.render(&diff));
            }
        }
    }
    Ok(rep)
}
