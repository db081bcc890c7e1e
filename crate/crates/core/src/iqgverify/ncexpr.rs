//! Formal noncommutative polynomials over `Q(v)` in quantum group generators.

use std::collections::BTreeMap;

use crate::exactarith::{q_factorial, q_int, LaurentPoly, RationalFunction};
use crate::ihallalg::Parity;

/// A generator symbol. Divided-power tokens are expanded by [`NCExpr::expand`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    B(usize),
    Tk(usize),
    TkInv(usize),
    E(usize),
    F(usize),
    /// `K~_i`
    Kt(usize),
    KtInv(usize),
    /// `K~'_i`
    Kp(usize),
    KpInv(usize),
    /// `B_i^{(n)} = B_i^n / [n]!`
    BDiv(usize, u32),
    /// The i-divided power `B_{i,p}^{(n)}` at a split vertex.
    BiDiv(usize, u32, Parity),
    EDiv(usize, u32),
    FDiv(usize, u32),
}

impl Sym {
    pub fn render(&self, names: &[String]) -> String {
        let n = |i: &usize| names.get(*i).cloned().unwrap_or_else(|| i.to_string());
        match self {
            Sym::B(i) => format!("B{}", n(i)),
            Sym::Tk(i) => format!("tk{}", n(i)),
            Sym::TkInv(i) => format!("tk{}^-1", n(i)),
            Sym::E(i) => format!("E{}", n(i)),
            Sym::F(i) => format!("F{}", n(i)),
            Sym::Kt(i) => format!("K{}", n(i)),
            Sym::KtInv(i) => format!("K{}^-1", n(i)),
            Sym::Kp(i) => format!("K'{}", n(i)),
            Sym::KpInv(i) => format!("K'{}^-1", n(i)),
            Sym::BDiv(i, k) => format!("B{}^({k})", n(i)),
            Sym::BiDiv(i, k, p) => {
                let p = if *p == Parity::Even { "ev" } else { "odd" };
                format!("B{},{p}^({k})", n(i))
            }
            Sym::EDiv(i, k) => format!("E{}^({k})", n(i)),
            Sym::FDiv(i, k) => format!("F{}^({k})", n(i)),
        }
    }

    fn is_token(&self) -> bool {
        matches!(self, Sym::BDiv(..) | Sym::BiDiv(..) | Sym::EDiv(..) | Sym::FDiv(..))
    }
}

/// A finite sum of coefficient times word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCExpr {
    pub terms: BTreeMap<Vec<Sym>, RationalFunction>,
}

impl NCExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(RationalFunction::one(), vec![])
    }

    pub fn word(c: RationalFunction, w: Vec<Sym>) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    pub fn atom(s: Sym) -> Self {
        Self::word(RationalFunction::one(), vec![s])
    }

    /// Product of atoms.
    pub fn mono(ws: &[Sym]) -> Self {
        Self::word(RationalFunction::one(), ws.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Vec<Sym>, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalFunction::from_int(-1)))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }

    pub fn product(factors: &[NCExpr]) -> Self {
        factors.iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    /// Replaces every divided-power token by its defining polynomial in
    /// `B_i`, `tk_i`, `E_i`, `F_i`.
    pub fn expand(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::word(c.clone(), vec![]);
            for s in w {
                let f = if s.is_token() { expand_token(*s) } else { Self::atom(*s) };
                acc = acc.mul(&f);
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(|s| s.render(names)).collect();
                let word = if word.is_empty() { "1".to_string() } else { word.join(" ") };
                format!("({}) {}", c.render("v"), word)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn inv_factorial(n: u32) -> RationalFunction {
    RationalFunction::from_poly(q_factorial(n)).recip().expect("[n]! is nonzero")
}

fn power(s: Sym, n: u32) -> NCExpr {
    NCExpr::mono(&vec![s; n as usize])
}

fn expand_token(s: Sym) -> NCExpr {
    match s {
        Sym::BDiv(i, n) => power(Sym::B(i), n).scale(&inv_factorial(n)),
        Sym::EDiv(i, n) => power(Sym::E(i), n).scale(&inv_factorial(n)),
        Sym::FDiv(i, n) => power(Sym::F(i), n).scale(&inv_factorial(n)),
        Sym::BiDiv(i, m, p) => {
            let b = NCExpr::atom(Sym::B(i));
            let b2 = power(Sym::B(i), 2);
            let vtk = NCExpr::word(RationalFunction::v_pow(1), vec![Sym::Tk(i)]);
            let k = m / 2;
            let mut acc = if m % 2 == 1 { b } else { NCExpr::one() };
            for s in 1..=k as i64 {
                let j = match (p, m % 2) {
                    (Parity::Odd, _) => 2 * s - 1,
                    (Parity::Even, 1) => 2 * s,
                    (Parity::Even, _) => 2 * s - 2,
                };
                let qj: LaurentPoly = &q_int(j) * &q_int(j);
                acc = acc.mul(&b2.sub(&vtk.scale(&RationalFunction::from_poly(qj))));
            }
            acc.scale(&inv_factorial(m))
        }
        other => NCExpr::atom(other),
    }
}
