//! Quantum integers, factorials, binomials and Pochhammer symbols.

use super::{ArithError, LaurentPoly};

/// `[n] = (v^n - v^-n) / (v - v^-1)`, extended by `[-n] = -[n]`.
pub fn q_int(n: i64) -> LaurentPoly {
    let m = n.unsigned_abs() as i32;
    let p = LaurentPoly::from_terms((0..m).map(|k| (m - 1 - 2 * k, 1)));
    if n < 0 {
        -p
    } else {
        p
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| &acc * &q_int(k))
}

/// `[n]!! = [n][n-2]...` down to `[2]` or `[1]`; `[0]!! = 1`.
pub fn q_double_factorial(n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut k = n as i64;
    while k > 0 {
        acc = &acc * &q_int(k);
        k -= 2;
    }
    acc
}

/// Quantum binomial `[m choose r]` for any integer `m` and `r >= 0`.
pub fn q_binom(m: i64, r: i64) -> Result<LaurentPoly, ArithError> {
    if r < 0 {
        return Err(ArithError::NegativeArgument(r));
    }
    let mut num = LaurentPoly::one();
    for k in 0..r {
        num = &num * &q_int(m - k);
    }
    num.div_exact(&q_factorial(r as u32))
}

/// Quantum binomial that vanishes for negative lower index, the convention
/// used when summing over ranges that may step outside `0..=m`.
pub fn q_binom_or_zero(m: i64, r: i64) -> LaurentPoly {
    if r < 0 {
        LaurentPoly::zero()
    } else {
        q_binom(m, r).expect("nonnegative lower index")
    }
}

/// `(a; x)_n = (1 - a)(1 - a x) ... (1 - a x^(n-1))`.
pub fn pochhammer(a: &LaurentPoly, x: &LaurentPoly, n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut ax = a.clone();
    for _ in 0..n {
        acc = &acc * &(&LaurentPoly::one() - &ax);
        ax = &ax * x;
    }
    acc
}

/// `v - v^-1`.
pub fn v_minus_vinv() -> LaurentPoly {
    LaurentPoly::from_terms([(1, 1), (-1, -1)])
}
