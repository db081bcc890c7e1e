//! Laurent polynomials in a single formal variable with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// A Laurent polynomial `sum c_n v^n` with `c_n` rational.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `c * v^e`.
    pub fn monomial(c: BigRational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(rat(1), e)
    }

    /// Builds from `(exponent, integer coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &rat(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn coeff(&self, e: i32) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Leading (highest exponent) coefficient.
    pub fn lead(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// If the polynomial is a constant, returns it.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// If the polynomial is a single monomial, returns `(coefficient, exponent)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, e: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, x)| (e + k, x.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `v -> v^k` (k may be negative).
    pub fn substitute_power(&self, k: i32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e * k, c);
        }
        out
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ArithError> {
        if x.is_zero() && self.min_exp().map_or(false, |m| m < 0) {
            return Err(ArithError::DivisionByZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators after clearing denominators.
    fn integer_content(&self) -> BigInt {
        use num_integer::Integer;
        let l = self.denominator_lcm();
        self.terms.values().fold(BigInt::zero(), |acc, c| {
            let n = (c * BigRational::from_integer(l.clone())).to_integer();
            acc.gcd(&n)
        })
    }

    /// Rational content `c` with `self / c` integral and primitive, sign chosen
    /// so the leading coefficient of `self / c` is positive.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let c = BigRational::new(self.integer_content(), self.denominator_lcm());
        if self.lead().unwrap().is_negative() {
            -c
        } else {
            c
        }
    }

    /// Division with remainder after shifting both sides to ordinary
    /// polynomials: `self = q * d + r` where `r` spans fewer exponents than `d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let Some(smin) = self.min_exp() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let dmin = d.min_exp().unwrap();
        let (q, r) = self.shift(-smin).poly_div_rem(&d.shift(-dmin));
        Ok((q.shift(smin - dmin), r.shift(smin)))
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self, ArithError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ArithError::InexactDivision)
        }
    }

    /// Monic greatest common divisor up to a power of `v`, normalized to
    /// lowest exponent zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.normalize_low();
        let mut b = other.normalize_low();
        while !b.is_zero() {
            let (_, r) = a.poly_div_rem(&b);
            a = b;
            b = r.normalize_low();
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().unwrap().clone();
        a.scale(&l.recip())
    }

    /// Shifts so the lowest exponent is zero.
    fn normalize_low(&self) -> Self {
        match self.min_exp() {
            Some(m) => self.shift(-m),
            None => Self::zero(),
        }
    }

    /// Ordinary polynomial division; both sides have non-negative exponents.
    fn poly_div_rem(&self, d: &Self) -> (Self, Self) {
        let dmax = d.max_exp().unwrap();
        let dlead = d.lead().unwrap().clone();
        let mut r = self.clone();
        let mut quo = Self::zero();
        while let Some(rmax) = r.max_exp() {
            if rmax < dmax {
                break;
            }
            let t = Self::monomial(r.lead().unwrap() / &dlead, rmax - dmax);
            r = &r - &(&t * d);
            quo = &quo + &t;
        }
        (quo, r)
    }

    /// Renders with the given variable name, descending exponents.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("v"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
