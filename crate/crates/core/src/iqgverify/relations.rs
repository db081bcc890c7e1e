//! Fully instantiated relation sets for `U~`, the universal iquantum group
//! in its Serre presentation, and its simplified Dynkin form.

use num_rational::BigRational;

use crate::exactarith::{pochhammer, q_binom, q_int, v_minus_vinv, LaurentPoly, RationalFunction};
use crate::ihallalg::Parity;
use crate::quiver::FormData;

use super::ncexpr::{NCExpr, Sym};
use super::IqgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Serre presentation with i-divided powers, any symmetric Cartan matrix.
    Ikm,
    /// Simplified presentation for Dynkin type.
    IDynkin,
    /// Drinfeld double `U~` with quantum Serre relations.
    DrinfeldDoubleSerre,
}

impl std::str::FromStr for Style {
    type Err = IqgError;
    fn from_str(s: &str) -> Result<Self, IqgError> {
        match s {
            "ikm" => Ok(Style::Ikm),
            "idynkin" => Ok(Style::IDynkin),
            "drinfeld_double_serre" | "double" => Ok(Style::DrinfeldDoubleSerre),
            _ => Err(IqgError::Constraint(format!("unknown relation style `{s}`"))),
        }
    }
}

/// A relation `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub id: String,
    pub lhs: NCExpr,
    pub rhs: NCExpr,
}

impl RelationInstance {
    pub fn residual(&self) -> NCExpr {
        self.lhs.sub(&self.rhs)
    }
}

pub type RelationSet = Vec<RelationInstance>;

fn rf(p: LaurentPoly) -> RationalFunction {
    RationalFunction::from_poly(p)
}

fn vp(e: i64) -> RationalFunction {
    RationalFunction::v_pow(e as i32)
}

fn inv_vmv() -> RationalFunction {
    rf(v_minus_vinv()).recip().expect("v - v^-1 is nonzero")
}

fn commutator(a: &NCExpr, b: &NCExpr) -> NCExpr {
    a.mul(b).sub(&b.mul(a))
}

fn rel(id: String, lhs: NCExpr, rhs: NCExpr) -> RelationInstance {
    RelationInstance { id, lhs, rhs }
}

/// Whether a symmetric Cartan matrix is positive definite (finite type).
pub fn is_finite_type(c: &[Vec<i64>]) -> bool {
    let n = c.len();
    for k in 1..=n {
        let mut m: Vec<Vec<BigRational>> = (0..k)
            .map(|i| (0..k).map(|j| BigRational::from_integer(c[i][j].into())).collect())
            .collect();
        let mut det = BigRational::from_integer(1.into());
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| m[r][col] != BigRational::from_integer(0.into())) else {
                return false;
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let piv = m[col][col].clone();
            det *= &piv;
            for r in col + 1..k {
                let f = &m[r][col] / &piv;
                for j in col..k {
                    let x = &m[col][j] * &f;
                    m[r][j] -= x;
                }
            }
        }
        if det <= BigRational::from_integer(0.into()) {
            return false;
        }
    }
    true
}

/// Builds the relation set of the given style. `tau` is ignored for the
/// Drinfeld double. Vertex names are used in relation ids.
pub fn relation_set(fd: &FormData, tau: &[usize], names: &[String], style: Style) -> Result<RelationSet, IqgError> {
    let n = fd.n();
    let c = &fd.cartan;
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(IqgError::Constraint(format!("vertex {} carries a loop", names[i])));
        }
    }
    match style {
        Style::Ikm => {
            for i in 0..n {
                let cit = c[i][tau[i]];
                if tau[i] != i && cit % 2 != 0 {
                    return Err(IqgError::Constraint(format!(
                        "c_(i,tau i) = {cit} at vertex {} is odd",
                        names[i]
                    )));
                }
            }
            Ok(ikm(c, tau, names))
        }
        Style::IDynkin => {
            if !is_finite_type(c) {
                return Err(IqgError::Constraint("Cartan matrix is not of finite type".into()));
            }
            Ok(idynkin(c, tau, names))
        }
        Style::DrinfeldDoubleSerre => Ok(double(c, names)),
    }
}

fn torus_relations(c: &[Vec<i64>], tau: &[usize], names: &[String], tag: &str, out: &mut RelationSet) {
    let n = c.len();
    let a = Sym::Tk;
    for i in 0..n {
        for l in 0..n {
            if i < l {
                out.push(rel(
                    format!("{tag}(tk{}tk{})", names[i], names[l]),
                    commutator(&NCExpr::atom(a(i)), &NCExpr::atom(a(l))),
                    NCExpr::zero(),
                ));
            }
            let e = c[tau[i]][l] - c[i][l];
            out.push(rel(
                format!("{tag}(tk{}B{})", names[i], names[l]),
                NCExpr::mono(&[Sym::Tk(i), Sym::B(l)]),
                NCExpr::word(vp(e), vec![Sym::B(l), Sym::Tk(i)]),
            ));
        }
    }
}

fn bb_relations(c: &[Vec<i64>], tau: &[usize], names: &[String], tag: &str, out: &mut RelationSet) {
    let n = c.len();
    for i in 0..n {
        for j in i + 1..n {
            if c[i][j] == 0 && tau[i] != j {
                out.push(rel(
                    format!("{tag}(i={},j={})", names[i], names[j]),
                    commutator(&NCExpr::atom(Sym::B(i)), &NCExpr::atom(Sym::B(j))),
                    NCExpr::zero(),
                ));
            }
        }
    }
}

/// `sum_n (-1)^n X^{(n)} Y X^{(N-n)}` for a divided-power constructor.
fn serre_sum(top: u32, left: impl Fn(u32) -> Sym, mid: Sym, right: impl Fn(u32) -> Sym, sign_shift: i64) -> NCExpr {
    let mut out = NCExpr::zero();
    for k in 0..=top {
        let s = if (k as i64 + sign_shift).rem_euclid(2) == 0 { 1 } else { -1 };
        out = out.add(&NCExpr::word(RationalFunction::from_int(s), vec![left(k), mid, right(top - k)]));
    }
    out
}

fn ikm(c: &[Vec<i64>], tau: &[usize], names: &[String]) -> RelationSet {
    let n = c.len();
    let mut out = Vec::new();
    torus_relations(c, tau, names, "relation1", &mut out);
    bb_relations(c, tau, names, "relation2", &mut out);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let top = (1 - c[i][j]) as u32;
            if tau[i] == i {
                for p in [Parity::Even, Parity::Odd] {
                    let q = p.plus(c[i][j]);
                    let lhs = serre_sum(top, |k| Sym::BiDiv(i, k, p), Sym::B(j), |k| Sym::BiDiv(i, k, q), 0);
                    let pn = if p == Parity::Even { 0 } else { 1 };
                    out.push(rel(format!("relation6(i={},j={},p={pn})", names[i], names[j]), lhs, NCExpr::zero()));
                }
            } else if j != tau[i] {
                let lhs = serre_sum(top, |k| Sym::BDiv(i, k), Sym::B(j), |k| Sym::BDiv(i, k), 0);
                out.push(rel(format!("relation3(i={},j={})", names[i], names[j]), lhs, NCExpr::zero()));
            }
        }
        if tau[i] != i {
            let ti = tau[i];
            let cit = c[i][ti];
            let top = (1 - cit) as u32;
            let lhs = serre_sum(top, |k| Sym::BDiv(i, k), Sym::B(ti), |k| Sym::BDiv(i, k), cit);
            let m = (-cit) as u32;
            let vm2 = LaurentPoly::v_pow(-2);
            let v2 = LaurentPoly::v_pow(2);
            let c1 = &vp(cit) * &rf(pochhammer(&vm2, &vm2, m));
            let c2 = rf(pochhammer(&v2, &v2, m));
            let rhs = NCExpr::word(c1, vec![Sym::BDiv(i, m), Sym::Tk(i)])
                .sub(&NCExpr::word(c2, vec![Sym::BDiv(i, m), Sym::Tk(ti)]))
                .scale(&inv_vmv());
            out.push(rel(format!("relation5(i={})", names[i]), lhs, rhs));
        }
    }
    out
}

fn idynkin(c: &[Vec<i64>], tau: &[usize], names: &[String]) -> RelationSet {
    let n = c.len();
    let mut out = Vec::new();
    torus_relations(c, tau, names, "Dynrelation1", &mut out);
    bb_relations(c, tau, names, "DynrelationBB", &mut out);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if tau[i] != i && j != tau[i] {
                let top = 1 - c[i][j];
                let mut lhs = NCExpr::zero();
                for s in 0..=top {
                    let mut w = vec![Sym::B(i); s as usize];
                    w.push(Sym::B(j));
                    w.extend(vec![Sym::B(i); (top - s) as usize]);
                    let sign = if s % 2 == 0 { 1 } else { -1 };
                    let coef = rf(q_binom(top, s).expect("nonnegative").scale(&BigRational::from_integer(sign.into())));
                    lhs = lhs.add(&NCExpr::word(coef, w));
                }
                out.push(rel(format!("DynrelationSerre(i={},j={})", names[i], names[j]), lhs, NCExpr::zero()));
            }
            if c[i][j] == -1 && tau[i] == i {
                let (bi, bj) = (Sym::B(i), Sym::B(j));
                let lhs = NCExpr::mono(&[bi, bi, bj])
                    .sub(&NCExpr::word(rf(q_int(2)), vec![bi, bj, bi]))
                    .add(&NCExpr::mono(&[bj, bi, bi]));
                let rhs = NCExpr::word(vp(1), vec![Sym::Tk(i), bj]);
                out.push(rel(format!("Dynrelation2(i={},j={})", names[i], names[j]), lhs, rhs));
            }
        }
        if tau[i] != i {
            let ti = tau[i];
            let lhs = commutator(&NCExpr::atom(Sym::B(ti)), &NCExpr::atom(Sym::B(i)));
            let rhs = NCExpr::atom(Sym::Tk(i)).sub(&NCExpr::atom(Sym::Tk(ti))).scale(&inv_vmv());
            out.push(rel(format!("Dynrelation5(i={})", names[i]), lhs, rhs));
        }
    }
    out
}

fn double(c: &[Vec<i64>], names: &[String]) -> RelationSet {
    let n = c.len();
    let mut out = Vec::new();
    let at = NCExpr::atom;
    for i in 0..n {
        for j in 0..n {
            let rhs = if i == j { at(Sym::Kt(i)).sub(&at(Sym::Kp(i))).scale(&inv_vmv()) } else { NCExpr::zero() };
            out.push(rel(format!("KK(E{},F{})", names[i], names[j]), commutator(&at(Sym::E(i)), &at(Sym::F(j))), rhs));
            if i < j {
                for (a, b, t) in [(Sym::Kt(i), Sym::Kt(j), "KK"), (Sym::Kp(i), Sym::Kp(j), "KK'")] {
                    out.push(rel(format!("{t}({},{})", names[i], names[j]), commutator(&at(a), &at(b)), NCExpr::zero()));
                }
            }
            out.push(rel(
                format!("KK(K{},K'{})", names[i], names[j]),
                commutator(&at(Sym::Kt(i)), &at(Sym::Kp(j))),
                NCExpr::zero(),
            ));
            let e = c[i][j];
            let pairs = [
                ("EK", Sym::Kt(i), Sym::E(j), e),
                ("EK", Sym::Kt(i), Sym::F(j), -e),
                ("K2", Sym::Kp(i), Sym::E(j), -e),
                ("K2", Sym::Kp(i), Sym::F(j), e),
            ];
            for (tag, k, x, ex) in pairs {
                out.push(rel(
                    format!("{tag}({},{})", k.render(names), x.render(names)),
                    NCExpr::mono(&[k, x]),
                    NCExpr::word(vp(ex), vec![x, k]),
                ));
            }
            if i != j {
                let top = (1 - c[i][j]) as u32;
                let se = serre_sum(top, |k| Sym::EDiv(i, k), Sym::E(j), |k| Sym::EDiv(i, k), 0);
                out.push(rel(format!("serre1(i={},j={})", names[i], names[j]), se, NCExpr::zero()));
                let sf = serre_sum(top, |k| Sym::FDiv(i, k), Sym::F(j), |k| Sym::FDiv(i, k), 0);
                out.push(rel(format!("serre2(i={},j={})", names[i], names[j]), sf, NCExpr::zero()));
            }
        }
    }
    out
}
