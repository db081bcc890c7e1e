//! The subalgebra of the split rank-one iHall algebra spanned by
//! `[mS] * K^k`, with `v` and `K` kept formal.
//!
//! `K` is central and `[S] * [mS] = v^{-m} [(m+1)S] + (v^m - v^{-m}) [(m-1)S] * K`,
//! which is all that is needed to multiply by `[S]` on the left.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactarith::{q_double_factorial, q_factorial, q_int, LaurentPoly, RationalFunction};

use super::Parity;

/// `sum c_{m,k} [mS] * K^k` with coefficients in `Q(v)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RankOne {
    pub terms: BTreeMap<(u32, u32), RationalFunction>,
}

impl RankOne {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(0, 0)
    }

    /// `[mS] * K^k`.
    pub fn basis(m: u32, k: u32) -> Self {
        let mut x = Self::zero();
        x.add_term(m, k, &RationalFunction::one());
        x
    }

    pub fn add_term(&mut self, m: u32, k: u32, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((m, k)).or_insert_with(RationalFunction::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&(m, k));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((m, k), c) in &other.terms {
            out.add_term(*m, *k, c);
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for ((m, k), x) in &self.terms {
            out.add_term(*m, *k, &(x * c));
        }
        out
    }

    pub fn times_k(&self) -> Self {
        let mut out = Self::zero();
        for ((m, k), c) in &self.terms {
            out.add_term(*m, k + 1, c);
        }
        out
    }

    /// Left multiplication by `[S]`.
    pub fn s_times(&self) -> Self {
        let mut out = Self::zero();
        for ((m, k), c) in &self.terms {
            let m_i = *m as i32;
            out.add_term(m + 1, *k, &(c * &RationalFunction::v_pow(-m_i)));
            if *m > 0 {
                let d = &RationalFunction::v_pow(m_i) - &RationalFunction::v_pow(-m_i);
                out.add_term(m - 1, k + 1, &(c * &d));
            }
        }
        out
    }

    /// Coefficient of `[mS] * K^k`.
    pub fn coeff(&self, m: u32, k: u32) -> RationalFunction {
        self.terms.get(&(m, k)).cloned().unwrap_or_else(RationalFunction::zero)
    }
}

impl fmt::Debug for RankOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, k), c)| format!("({})*[{m}S]*K^{k}", c.render("v")))
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

fn rf(p: LaurentPoly) -> RationalFunction {
    RationalFunction::from_poly(p)
}

/// Closed form of `[S]^{(n)}` with the given parity:
/// `sum_k v^{e_k} (v - v^{-1})^k / ([n-2k]! [2k]!!) [(n-2k)S] * K^k`.
pub fn closed_form(n: u32, parity: Parity) -> RankOne {
    let sign: i64 = match (parity, n % 2) {
        (Parity::Even, 0) | (Parity::Odd, 1) => -1,
        _ => 1,
    };
    let vmv = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
    let mut out = RankOne::zero();
    for k in 0..=n / 2 {
        let r = n - 2 * k;
        let (ki, ri) = (k as i64, r as i64);
        let e = ki * (ki + sign) - ri * (ri - 1) / 2;
        let num = &LaurentPoly::v_pow(e as i32) * &vmv.pow(k);
        let den = &q_factorial(r) * &q_double_factorial(2 * k);
        let c = RationalFunction::new(num, den).expect("nonzero q-factorials");
        out.add_term(r, k, &c);
    }
    out
}

/// `[S]^{(n)}` from the two-step recursions: multiplying by `[S]` raises
/// the index by one, with a correction `v (v - v^{-1})^2 [j] K` every
/// second step.
pub fn by_recursion(n: u32, parity: Parity) -> RankOne {
    let vmv = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
    let c = rf(&LaurentPoly::v_pow(1) * &(&vmv * &vmv));
    let mut seq = vec![RankOne::one(), RankOne::basis(1, 0)];
    for j in 2..=n {
        let prev = &seq[j as usize - 1];
        let mut next = prev.s_times();
        // The step from j-1 to j carries the correction when j-1 has the
        // parity opposite to the chosen one.
        let corrected = match parity {
            Parity::Odd => (j - 1) % 2 == 1,
            Parity::Even => (j - 1) % 2 == 0,
        };
        if corrected {
            let before = &seq[j as usize - 2];
            next = next.add(&before.times_k().scale(&(&c * &rf(q_int(j as i64 - 1)))));
        }
        let inv = rf(q_int(j as i64)).recip().expect("nonzero quantum integer");
        seq.push(next.scale(&inv));
    }
    seq.truncate(n as usize + 1);
    seq.pop().unwrap_or_else(RankOne::one)
}

/// The right side of `[S] * [mS] = v^{-m} [(m+1)S] + (v^m - v^{-m}) [(m-1)S] * K`.
pub fn sms_formula(m: u32) -> RankOne {
    RankOne::basis(m, 0).s_times()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_equals_recursion() {
        for n in 0..=8 {
            for p in [Parity::Even, Parity::Odd] {
                assert_eq!(closed_form(n, p), by_recursion(n, p), "n={n} {p:?}");
            }
        }
    }

    #[test]
    fn second_even_power() {
        let two = rf(q_int(2)).recip().unwrap();
        let mut want = RankOne::zero();
        want.add_term(2, 0, &(&RationalFunction::v_pow(-1) * &two));
        let vmv = &RationalFunction::v_pow(1) - &RationalFunction::v_pow(-1);
        want.add_term(0, 1, &(&vmv * &two));
        assert_eq!(closed_form(2, Parity::Even), want);
        assert_eq!(closed_form(1, Parity::Odd), RankOne::basis(1, 0));
    }
}
