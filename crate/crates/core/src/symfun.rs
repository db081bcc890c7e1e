//! Symmetric functions written in the generators `q_r` with coefficients in
//! `Q(t)[theta]`: Hall-Littlewood `Q_lambda`, `P_lambda`, the iHL functions
//! `Q^i_alpha`, and two executable isomorphism checks against Hall algebras
//! of the Jordan quiver.
//!
//! Coefficients are [`RationalFunction`]s whose variable is read as `t`.
//! The generators `q_r` are algebraically independent, so a [`SymFun`] is
//! simply a polynomial in them; `q_0 = 1` and `q_r = 0` for `r < 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactarith::{ArithError, LaurentPoly, RationalFunction};
use crate::ihallalg::{IHall, IHallError};
use crate::quiver::{BoundQuiver, IQuiver, Quiver};
use crate::report::Report;
use crate::repmod::{FqRep, ModCat, RepError};

#[cfg(test)]
mod tests;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("truncation bound {bound} is below the weight {weight}")]
    Truncation { bound: usize, weight: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("linear solve failed: {0}")]
    Solve(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Hall(#[from] IHallError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A partition with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SymError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(SymError::Partition(format!("{parts:?} is not weakly decreasing and positive")));
        }
        Ok(Self(parts))
    }

    /// Sorts the parts first.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    /// Parses `"2,1"`; the empty string and `"0"` give the empty partition.
    pub fn parse(s: &str) -> Result<Self, SymError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| SymError::Partition(format!("`{p}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `n(lambda) = sum (i-1) lambda_i`.
    pub fn n(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// `m_i(lambda)` for every part size that occurs.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&p| p as i64).collect()
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for k in 0..self.len().max(other.len()) {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The indeterminate `t`.
pub fn t() -> RationalFunction {
    RationalFunction::v_pow(1)
}

fn t_pow(e: i32) -> RationalFunction {
    RationalFunction::v_pow(e)
}

/// `phi_r(t) = (1-t)(1-t^2)...(1-t^r)`.
pub fn phi(r: u32) -> RationalFunction {
    let mut p = LaurentPoly::one();
    for k in 1..=r as i32 {
        p = &p * &LaurentPoly::from_terms([(0, 1), (k, -1)]);
    }
    RationalFunction::from_poly(p)
}

/// `b_lambda(t) = prod_i phi_{m_i(lambda)}(t)`.
pub fn b_coeff(lambda: &Partition) -> RationalFunction {
    lambda
        .multiplicities()
        .values()
        .fold(RationalFunction::one(), |acc, &m| &acc * &phi(m))
}

/// Key of one term: the power of `theta` and the `q`-monomial, written as
/// the weakly decreasing list of generator indices.
pub type SymKey = (u32, Vec<u32>);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymFun {
    terms: BTreeMap<SymKey, RationalFunction>,
}

impl SymFun {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, Vec::new(), RationalFunction::one())
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::term(0, Vec::new(), c)
    }

    pub fn theta() -> Self {
        Self::term(1, Vec::new(), RationalFunction::one())
    }

    /// `c * theta^theta * q_{idx[0]} q_{idx[1]} ...`; zero if some index is
    /// negative, and `q_0` factors are dropped.
    pub fn term(theta: u32, idx: Vec<u32>, c: RationalFunction) -> Self {
        let mut s = Self::default();
        let mut idx: Vec<u32> = idx.into_iter().filter(|&r| r > 0).collect();
        idx.sort_unstable_by(|a, b| b.cmp(a));
        s.add_term((theta, idx), &c);
        s
    }

    /// The generator `q_r`.
    pub fn q(r: i64) -> Self {
        match r {
            r if r < 0 => Self::zero(),
            0 => Self::one(),
            r => Self::term(0, vec![r as u32], RationalFunction::one()),
        }
    }

    /// `q_alpha = q_{alpha_1} q_{alpha_2} ...` for an integer vector.
    pub fn q_vector(alpha: &[i64]) -> Self {
        if alpha.iter().any(|&a| a < 0) {
            return Self::zero();
        }
        Self::term(0, alpha.iter().map(|&a| a as u32).collect(), RationalFunction::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymKey, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coeff(&self, theta: u32, idx: &[u32]) -> RationalFunction {
        self.terms
            .get(&(theta, idx.to_vec()))
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    fn add_term(&mut self, key: SymKey, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(RationalFunction::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalFunction::from_int(-1)))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((ta, ia), ca) in &self.terms {
            for ((tb, ib), cb) in &other.terms {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                idx.sort_unstable_by(|a, b| b.cmp(a));
                out.add_term((ta + tb, idx), &(ca * cb));
            }
        }
        out
    }

    /// The part multiplying `theta^r`, as a theta-free function.
    pub fn theta_component(&self, r: u32) -> Self {
        let mut out = Self::zero();
        for ((th, idx), c) in &self.terms {
            if *th == r {
                out.add_term((0, idx.clone()), c);
            }
        }
        out
    }

    pub fn theta_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(th, _)| *th).max()
    }

    /// Substitutes `theta = 0`.
    pub fn at_theta_zero(&self) -> Self {
        self.theta_component(0)
    }

    /// Substitutes a rational value for `theta`.
    pub fn at_theta(&self, x: &BigRational) -> Self {
        let mut out = Self::zero();
        for ((th, idx), c) in &self.terms {
            out.add_term((0, idx.clone()), &c.scale(&pow_rat(x, *th as i32)));
        }
        out
    }

    /// Substitutes a rational value for `t`; coefficients become constants.
    pub fn at_t(&self, x: &BigRational) -> Result<Self, SymError> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &RationalFunction::from_rational(c.eval(x)?));
        }
        Ok(out)
    }

    /// Degree with `deg q_r = r`, counting `theta` as 0.
    pub fn q_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(_, idx)| idx.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

fn pow_rat(x: &BigRational, e: i32) -> BigRational {
    let mut p = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        p *= x;
    }
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn render_monomial(theta: u32, idx: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut k = 0;
    while k < idx.len() {
        let r = idx[k];
        let mut e = 0;
        while k < idx.len() && idx[k] == r {
            e += 1;
            k += 1;
        }
        parts.push(if e == 1 { format!("q_{r}") } else { format!("q_{r}^{e}") });
    }
    parts.reverse();
    match theta {
        0 => {}
        1 => parts.push("theta".into()),
        e => parts.push(format!("theta^{e}")),
    }
    parts.join("*")
}

impl fmt::Display for SymFun {
    /// Terms sorted by theta power, then by `q`-monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&SymKey> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let mut ra = a.1.clone();
            let mut rb = b.1.clone();
            ra.reverse();
            rb.reverse();
            a.0.cmp(&b.0).then(ra.cmp(&rb))
        });
        for (i, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let mono = render_monomial(key.0, &key.1);
            let cs = c.render("t");
            let single = c.as_poly().is_some_and(|p| p.terms().count() == 1) && !cs.contains('/');
            let (neg, body) = match (single, cs.strip_prefix('-')) {
                (true, Some(rest)) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let term = if mono.is_empty() {
                if single { body } else { format!("({body})") }
            } else if body == "1" {
                mono
            } else if single {
                format!("{body}*{mono}")
            } else {
                format!("({body})*{mono}")
            };
            f.write_str(&term)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFun({self})")
    }
}

/// A factor of the operator products: the raising operator `R_ij` or the
/// lowering operator `L_ij` (indices 0-based, `i < j`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Op {
    Raise(usize, usize),
    Lower(usize, usize),
}

fn raising_ops(n: usize) -> Vec<Op> {
    let mut ops = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            ops.push(Op::Raise(i, j));
        }
    }
    ops
}

fn lowering_ops(n: usize) -> Vec<Op> {
    let mut ops = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            ops.push(Op::Lower(i, j));
        }
    }
    ops
}

/// Tail sums `sum_{k >= m} a_k` for every `m`.
fn tails(a: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + 1];
    for m in (0..a.len()).rev() {
        out[m] = out[m + 1] + a[m];
    }
    out
}

/// Applies the factors `(1 - R_ij)/(1 - t R_ij)` and
/// `(1 - theta L_ij)/(1 - theta t L_ij)` in the given order to `q_alpha`.
///
/// Every factor only lowers the tail sums of the index vector, and a term
/// survives only if all its indices end up nonnegative, so the powers of a
/// factor at `(i, j)` are bounded by the tail sum of `alpha` from `j`, and
/// intermediate vectors with a negative tail sum are dropped.
pub fn operator_expand(alpha: &[i64], ops: &[Op]) -> SymFun {
    let bound = tails(alpha);
    if bound.iter().any(|&s| s < 0) {
        return SymFun::zero();
    }
    let mut state: BTreeMap<(Vec<i64>, u32), RationalFunction> = BTreeMap::new();
    state.insert((alpha.to_vec(), 0), RationalFunction::one());
    let step = &t() - &RationalFunction::one();
    for op in ops {
        let (i, j, lower) = match *op {
            Op::Raise(i, j) => (i, j, false),
            Op::Lower(i, j) => (i, j, true),
        };
        let mut next: BTreeMap<(Vec<i64>, u32), RationalFunction> = BTreeMap::new();
        for ((v, th), c) in &state {
            for r in 0..=bound[j] {
                let mut w = v.clone();
                if lower {
                    w[i] -= r;
                    w[j] -= r;
                } else {
                    w[i] += r;
                    w[j] -= r;
                }
                if tails(&w).iter().any(|&s| s < 0) {
                    break;
                }
                let coeff = if r == 0 {
                    c.clone()
                } else {
                    &(c * &step) * &t_pow(r as i32 - 1)
                };
                let key = (w, th + if lower { r as u32 } else { 0 });
                let e = next.entry(key).or_insert_with(RationalFunction::zero);
                *e = &*e + &coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        state = next;
    }
    let mut out = SymFun::zero();
    for ((v, th), c) in state {
        if v.iter().all(|&x| x >= 0) {
            out = out.add(&SymFun::term(th, v.iter().map(|&x| x as u32).collect(), c));
        }
    }
    out
}

/// Hall-Littlewood `Q_lambda = prod_{i<j} (1 - R_ij)/(1 - t R_ij) q_lambda`.
pub fn hl_q(lambda: &Partition) -> SymFun {
    operator_expand(&lambda.as_i64(), &raising_ops(lambda.len()))
}

/// `P_lambda = Q_lambda / b_lambda(t)`.
pub fn hl_p(lambda: &Partition) -> SymFun {
    let b = b_coeff(lambda);
    let inv = b.recip().expect("b_lambda is a nonzero product of nonzero polynomials");
    hl_q(lambda).scale(&inv)
}

/// The iHL function `Q^i_alpha` for an integer vector `alpha`.
pub fn ihl_q(alpha: &[i64]) -> SymFun {
    let mut ops = lowering_ops(alpha.len());
    ops.extend(raising_ops(alpha.len()));
    operator_expand(alpha, &ops)
}

/// Coefficients of `F(x) = (1 - x)/(1 - t x)` up to `x^bound`, by
/// multiplying `1 - x` into the geometric series of `1/(1 - t x)`.
fn f_series(bound: usize) -> Vec<RationalFunction> {
    let geo: Vec<RationalFunction> = (0..=bound).map(|k| t_pow(k as i32)).collect();
    (0..=bound)
        .map(|r| {
            if r == 0 {
                geo[0].clone()
            } else {
                &geo[r] - &geo[r - 1]
            }
        })
        .collect()
}

/// The coefficient of `u^lambda` in
/// `prod_i Q(u_i) prod_{i<j} F(u_i^{-1} u_j) F(theta u_i u_j)`, computed as a
/// truncated Laurent series in `u_1, ..., u_l`.
///
/// Each `Q(u_i)` contributes a nonnegative power, so only exponent vectors
/// `e <= lambda` from the `F`-part matter; their tail sums only grow while
/// the `F`-factors are multiplied in, which caps every power at
/// `|lambda| <= bound`.
pub fn ihl_genfun_coeff(lambda: &Partition, bound: usize) -> Result<SymFun, SymError> {
    let weight = lambda.size() as usize;
    if bound < weight {
        return Err(SymError::Truncation { bound, weight });
    }
    let target = lambda.as_i64();
    let n = target.len();
    let cap = tails(&target);
    let f = f_series(bound);
    let fits = |e: &[i64]| tails(e).iter().zip(&cap).all(|(a, b)| a <= b);
    let mut series: HashMap<Vec<i64>, SymFun> = HashMap::new();
    series.insert(vec![0; n], SymFun::one());
    for i in 0..n {
        for j in i + 1..n {
            for lowering in [false, true] {
                let mut next: HashMap<Vec<i64>, SymFun> = HashMap::new();
                for (e, c) in &series {
                    for (r, fr) in f.iter().enumerate() {
                        let mut w = e.clone();
                        if lowering {
                            w[i] += r as i64;
                        } else {
                            w[i] -= r as i64;
                        }
                        w[j] += r as i64;
                        if !fits(&w) {
                            continue;
                        }
                        let mut term = c.scale(fr);
                        if lowering {
                            term = term.mul(&SymFun::term(r as u32, Vec::new(), RationalFunction::one()));
                        }
                        let slot = next.entry(w).or_default();
                        *slot = slot.add(&term);
                    }
                }
                next.retain(|_, c| !c.is_zero());
                series = next;
            }
        }
    }
    let mut out = SymFun::zero();
    for (e, c) in series {
        let rest: Vec<i64> = target.iter().zip(&e).map(|(l, x)| l - x).collect();
        out = out.add(&c.mul(&SymFun::q_vector(&rest)));
    }
    Ok(out)
}

/// The nilpotent Jordan-quiver module with blocks `lambda`.
pub fn jordan_module(bq: &BoundQuiver, q: u32, lambda: &Partition) -> FqRep {
    let n = lambda.size() as usize;
    let mut m = FqRep::zero_with_dims(bq, q, vec![n]);
    let mut off = 0;
    for &b in lambda.parts() {
        for k in 1..b as usize {
            m.maps[0].set(off + k, off + k - 1, 1);
        }
        off += b as usize;
    }
    m
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn inv_q(q: u32) -> BigRational {
    rat(1) / rat(q as i64)
}

/// The Jordan-quiver module category over `F_q`, with partition lookup.
pub struct JordanModules {
    pub cat: ModCat,
    ids: HashMap<Partition, usize>,
}

impl JordanModules {
    pub fn new(q: u32) -> Self {
        Self {
            cat: ModCat::new(BoundQuiver::path_algebra(Quiver::jordan()), q),
            ids: HashMap::new(),
        }
    }

    pub fn id(&mut self, lambda: &Partition) -> Result<usize, SymError> {
        if let Some(&id) = self.ids.get(lambda) {
            return Ok(id);
        }
        let m = jordan_module(&self.cat.bq, self.cat.q, lambda);
        let id = self.cat.identify(&m)?;
        self.ids.insert(lambda.clone(), id);
        Ok(id)
    }

    /// `F^lambda_{mu nu}`: submodules of `M(lambda)` of type `nu` and cotype `mu`.
    pub fn hall_number(&mut self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigInt, SymError> {
        let (l, m, n) = (self.id(lambda)?, self.id(mu)?, self.id(nu)?);
        Ok(self.cat.hall_number(l, m, n)?)
    }
}

/// Checks `q^{-n(mu)} P_mu * q^{-n(nu)} P_nu = sum_lambda F^lambda_{mu nu} q^{-n(lambda)} P_lambda`
/// at `t = q^{-1}`, with Hall numbers counted among `F_q[x]`-modules.
pub fn steinitz_product_check(mu: &Partition, nu: &Partition, q: u32, max_weight: u32) -> Result<Report, SymError> {
    let w = mu.size() + nu.size();
    if w > max_weight {
        return Err(SymError::Capacity(format!("|mu|+|nu| = {w} exceeds {max_weight}")));
    }
    let mut jm = JordanModules::new(q);
    let x = inv_q(q);
    let scaled_p = |l: &Partition| -> Result<SymFun, SymError> {
        let s = RationalFunction::from_rational(pow_rat(&rat(q as i64), -(l.n() as i32)));
        hl_p(l).at_t(&x).map(|p| p.scale(&s))
    };
    let lhs = scaled_p(mu)?.mul(&scaled_p(nu)?);
    let (m_id, n_id) = (jm.id(mu)?, jm.id(nu)?);
    let mut rhs = SymFun::zero();
    let mut structure = Vec::new();
    for lambda in Partition::all(w) {
        let l_id = jm.id(&lambda)?;
        let counts = jm.cat.hall_numbers_of(l_id, &[nu.size() as usize])?;
        let f = counts.get(&(m_id, n_id)).copied().unwrap_or(0);
        if f == 0 {
            continue;
        }
        structure.push(format!("{f}*u{lambda}"));
        rhs = rhs.add(&scaled_p(&lambda)?.scale(&RationalFunction::from_int(f as i64)));
    }
    let mut rep = Report::new();
    let id = format!("steinitz(mu={mu},nu={nu},q={q})");
    let diff = lhs.sub(&rhs);
    if diff.is_zero() {
        let prod = if structure.is_empty() { "0".to_string() } else { structure.join(" + ") };
        rep.push(id, true, format!("u{mu}*u{nu} = {prod}"));
    } else {
        rep.push(id, false, format!("difference {diff}"));
    }
    Ok(rep)
}

/// Checks `|Aut M(lambda)| = q^{|lambda| + 2 n(lambda)} b_lambda(q^{-1})`.
pub fn aut_formula_check(lambda: &Partition, q: u32) -> Result<Report, SymError> {
    let mut jm = JordanModules::new(q);
    let id = jm.id(lambda)?;
    let count = BigRational::from_integer(jm.cat.aut_count(id)?);
    let e = (lambda.size() + 2 * lambda.n()) as i32;
    let formula = pow_rat(&rat(q as i64), e) * b_coeff(lambda).eval(&inv_q(q))?;
    let mut rep = Report::new();
    rep.push(
        format!("aut(lambda={lambda},q={q})"),
        count == formula,
        format!("counted {count}, formula {formula}"),
    );
    Ok(rep)
}

/// Solves `a x = b` over `Q` for a square system; `None` if singular.
pub fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..n {
                    let d = &f * &a[col][k];
                    a[r][k] -= d;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some(b)
}

/// Rank of a rational matrix given by rows.
pub fn rank_rational(mut a: Vec<Vec<BigRational>>) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..a.len() {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for k in col..cols {
                    let d = &f * &a[rank][k];
                    a[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Jordan iHall data: the algebra and the classes `[S^{(lambda)}]`.
pub struct JordanIHall {
    pub hall: IHall,
    ids: HashMap<Partition, usize>,
}

impl JordanIHall {
    pub fn new(q: u32) -> Self {
        Self {
            hall: IHall::new(IQuiver::split(Quiver::jordan()), q),
            ids: HashMap::new(),
        }
    }

    pub fn id(&mut self, lambda: &Partition) -> Result<usize, SymError> {
        if let Some(&id) = self.ids.get(lambda) {
            return Ok(id);
        }
        let kq = &self.hall.kq;
        let id = kq.identify(&jordan_module(&kq.bq, kq.q, lambda))?;
        self.ids.insert(lambda.clone(), id);
        Ok(id)
    }

    /// `[E_1]^k * prod_i [S^{(r_i)}]` for the parts `r_i` of `rho`.
    pub fn monomial(&mut self, rho: &Partition, k: u32) -> Result<crate::ihallalg::IHallElement, SymError> {
        let mut x = self.hall.torus(vec![k as i64]);
        for &r in rho.parts() {
            let id = self.id(&Partition(vec![r]))?;
            let s = self.hall.basis(id, vec![0]);
            x = self.hall.mul(&x, &s)?;
        }
        Ok(x)
    }

    /// Coefficients `c_(rho,k)` with `[S^{(lambda)}] = sum c [E_1]^k prod [S^{(rho_i)}]`.
    pub fn express(&mut self, lambda: &Partition) -> Result<Vec<((Partition, u32), BigRational)>, SymError> {
        let w = lambda.size();
        let mut index: Vec<(Partition, u32)> = Vec::new();
        for k in 0..=w / 2 {
            for p in Partition::all(w - 2 * k) {
                index.push((p, k));
            }
        }
        let mut row_of: HashMap<(usize, i64), usize> = HashMap::new();
        for (r, (p, k)) in index.iter().enumerate() {
            row_of.insert((self.id(p)?, *k as i64), r);
        }
        let n = index.len();
        let mut a = vec![vec![BigRational::zero(); n]; n];
        for (c, (rho, k)) in index.iter().enumerate() {
            let x = self.monomial(rho, *k)?;
            for ((cls, alpha), coeff) in &x.terms {
                let r = *row_of
                    .get(&(*cls, alpha[0]))
                    .ok_or_else(|| SymError::Solve(format!("term outside degree {w}: class {cls}, K^{}", alpha[0])))?;
                a[r][c] = coeff
                    .as_rational()
                    .ok_or_else(|| SymError::Solve(format!("irrational structure constant {coeff:?}")))?;
            }
        }
        let target_row = row_of[&(self.id(lambda)?, 0)];
        let mut b = vec![BigRational::zero(); n];
        b[target_row] = BigRational::one();
        let sol = solve_rational(a, b)
            .ok_or_else(|| SymError::Solve(format!("monomials of degree {w} are not a basis")))?;
        Ok(index.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect())
    }
}

/// `Phi(E_1) = q theta`, `Phi([S^{(r)}]) = q^r q_r`, evaluated on a monomial.
fn phi_monomial(rho: &Partition, k: u32, q: u32) -> SymFun {
    let qq = rat(q as i64);
    let mut s = SymFun::term(k, rho.parts().to_vec(), RationalFunction::one());
    s = s.scale(&RationalFunction::from_rational(pow_rat(&qq, (k + rho.size()) as i32)));
    s
}

/// Writes `[S^{(lambda)}]` in the generators of the Jordan iHall algebra,
/// maps it through `Phi` and compares with `q^{|lambda|+n(lambda)} Q^i_lambda`
/// at `t = q^{-1}`.
pub fn jordan_iso_check(lambda: &Partition, q: u32) -> Result<Report, SymError> {
    let mut jh = JordanIHall::new(q);
    let coeffs = jh.express(lambda)?;
    let mut image = SymFun::zero();
    for ((rho, k), c) in &coeffs {
        image = image.add(&phi_monomial(rho, *k, q).scale(&RationalFunction::from_rational(c.clone())));
    }
    let e = (lambda.size() + lambda.n()) as i32;
    let expected = ihl_q(&lambda.as_i64())
        .at_t(&inv_q(q))?
        .scale(&RationalFunction::from_rational(pow_rat(&rat(q as i64), e)));
    let mut rep = Report::new();
    let id = format!("jordan-iso(lambda={lambda},q={q})");
    if image == expected {
        rep.push(id, true, format!("Phi[S^{lambda}] = {image}"));
    } else {
        rep.push(id, false, format!("Phi gives {image}, expected {expected}"));
    }
    Ok(rep)
}
