//! Standalone q-binomial identities behind the rank-two iSerre relation.

use crate::exactarith::{q_binom, q_binom_or_zero, q_double_factorial, q_factorial, LaurentPoly, RationalFunction};
use crate::report::Report;

use super::IqgError;

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Exponent of `v` in the triple product `[sS_1] * [S_2] * [tS_1]` on the
/// rank-two split iquiver, for the term with `r` copies of `E_1` and a module
/// `M` with invariants `u`, `w`.
pub fn p_tilde(a: i64, b: i64, r: i64, s: i64, t: i64, u: i64, w: i64) -> i64 {
    2 * (s - r) * (t - r - a) - s * (t - a) + 2 * b * r - 2 * r * (t - r) - r * r + r * s + t * t + binom2(t) + (s - r) * (s - r)
        + binom2(s - r)
        + (u - (t - r)) * ((t - r) - w)
        + 1
}

/// Exponent attached to the `(n, k, m, r)` term of the expanded iSerre sum
/// for even `n`: the two i-divided power exponents plus `p_tilde` with
/// `s = n - 2k`, `t = 1 + a + b - n - 2m`. Odd `n` adds `2k - 2m`.
pub fn z_tilde(a: i64, b: i64, n: i64, k: i64, m: i64, r: i64, u: i64, w: i64) -> i64 {
    let s = n - 2 * k;
    let t = 1 + a + b - n - 2 * m;
    k * (k - 1) + m * (m + 1) - binom2(s) - binom2(t) + p_tilde(a, b, r, s, t, u, w)
}

/// Checks the admissible range for `T~(a, b, d, u, w)`.
pub fn check_t_constraint(a: i64, b: i64, d: i64, u: i64, w: i64) -> Result<(), IqgError> {
    let ok = a >= 0
        && b >= 0
        && d >= 0
        && 2 * d <= a + b + 1
        && (0..=b).contains(&w)
        && b + 1 - 2 * d <= u
        && u <= 1 + a + b - 2 * d
        && !(u == 0 && d == 0);
    if ok {
        Ok(())
    } else {
        Err(IqgError::Constraint(format!("(a,b,d,u,w) = ({a},{b},{d},{u},{w}) is outside the admissible range")))
    }
}

/// The coefficient sum `T~(a, b, d, u, w)` in formal `v`.
///
/// Every term is brought over the common denominator `([2d]!!)^2 [d]!`.
pub fn tilde_t(a: i64, b: i64, d: i64, u: i64, w: i64) -> Result<RationalFunction, IqgError> {
    check_t_constraint(a, b, d, u, w)?;
    Ok(tilde_t_unchecked(a, b, d, u, w))
}

fn tilde_t_unchecked(a: i64, b: i64, d: i64, u: i64, w: i64) -> RationalFunction {
    let top = 1 + a + b;
    let dd = d as u32;
    let den = &(&q_double_factorial(2 * dd) * &q_double_factorial(2 * dd)) * &q_factorial(dd);
    let mut num = LaurentPoly::zero();
    for n in 0..=top {
        let kmax = if n % 2 == 0 { n / 2 } else { (n - 1) / 2 };
        for k in 0..=kmax.min(d) {
            for m in 0..=((top - n) / 2).min(d - k) {
                let r = d - k - m;
                if r > n - 2 * k {
                    continue;
                }
                let mut e = -(top - n - 2 * m) * b + z_tilde(a, b, n, k, m, r, u, w);
                if n % 2 == 1 {
                    e += 2 * k - 2 * m;
                }
                let part = &(&q_double_factorial(2 * k as u32) * &q_double_factorial(2 * m as u32)) * &q_factorial(r as u32);
                let cofactor = den.div_exact(&part).expect("denominator divides the common one");
                let bin = q_binom_or_zero(u - w, top - n - 2 * m - r - w);
                let mut term = &(&cofactor * &bin) * &LaurentPoly::v_pow(e as i32);
                if n % 2 == 1 {
                    term = -term;
                }
                num += &term;
            }
        }
    }
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `sum_k v^{-k(p-k+1)} [p k]` and `prod_{j=1}^p (1 + v^{-j})`.
pub fn first_aux_sides(p: u32) -> (LaurentPoly, LaurentPoly) {
    let p = p as i64;
    let mut lhs = LaurentPoly::zero();
    for k in 0..=p {
        lhs += &(&q_binom(p, k).expect("nonnegative") * &LaurentPoly::v_pow((-k * (p - k + 1)) as i32));
    }
    let mut rhs = LaurentPoly::one();
    for j in 1..=p {
        rhs = &rhs * &(&LaurentPoly::one() + &LaurentPoly::v_pow(-j as i32));
    }
    (lhs, rhs)
}

/// `sum_{k+m+r=d} (-1)^r v^{binom(r+1,2) - 2(k-1)m} / ([r]! [2k]!! [2m]!!)`.
pub fn second_aux_sum(d: u32) -> RationalFunction {
    let den = &(&q_double_factorial(2 * d) * &q_double_factorial(2 * d)) * &q_factorial(d);
    let d = d as i64;
    let mut num = LaurentPoly::zero();
    for k in 0..=d {
        for m in 0..=d - k {
            let r = d - k - m;
            let part = &(&q_double_factorial(2 * k as u32) * &q_double_factorial(2 * m as u32)) * &q_factorial(r as u32);
            let cof = den.div_exact(&part).expect("denominator divides the common one");
            let e = (r + 1) * r / 2 - 2 * (k - 1) * m;
            let mut term = &cof * &LaurentPoly::v_pow(e as i32);
            if r % 2 == 1 {
                term = -term;
            }
            num += &term;
        }
    }
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// Checks both auxiliary identities for `1 <= p' <= p` and `1 <= d' <= d`.
pub fn aux_binomial_identities(p: u32, d: u32) -> Report {
    let mut rep = Report::new();
    for pp in 1..=p {
        let (l, r) = first_aux_sides(pp);
        let ok = l == r;
        let detail = if ok { "sides agree".to_string() } else { format!("lhs {} rhs {}", l.render("v"), r.render("v")) };
        rep.push(format!("aux-product(p={pp})"), ok, detail);
    }
    for dd in 1..=d {
        let s = second_aux_sum(dd);
        let ok = s.is_zero();
        let detail = if ok { "sum vanishes".to_string() } else { format!("sum {}", s.render("v")) };
        rep.push(format!("aux-triple-sum(d={dd})"), ok, detail);
    }
    rep
}

/// Checks `T~ = 0` over the whole admissible range with `a + b <= max_ab`.
pub fn verify_tilde_t_range(max_ab: i64) -> Report {
    let mut rep = Report::new();
    for a in 0..=max_ab {
        for b in 0..=max_ab - a {
            for d in 0..=(a + b + 1) / 2 {
                for w in 0..=b {
                    for u in (b + 1 - 2 * d).max(0)..=(1 + a + b - 2 * d) {
                        if check_t_constraint(a, b, d, u, w).is_err() {
                            continue;
                        }
                        let t = tilde_t_unchecked(a, b, d, u, w);
                        let ok = t.is_zero();
                        let detail = if ok { "0".to_string() } else { t.render("v") };
                        rep.push(format!("tildeT(a={a},b={b},d={d},u={u},w={w})"), ok, detail);
                    }
                }
            }
        }
    }
    rep
}
