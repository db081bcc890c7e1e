//! The quadratic ring `Q[v]/(v^2 - q)` used once the formal variable is
//! specialized to the square root of a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::rat;
use super::{ArithError, LaurentPoly, RationalFunction};

/// `a + b*v` with `v^2 = q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadCoeff {
    pub a: BigRational,
    pub b: BigRational,
    pub q: u32,
}

impl QuadCoeff {
    pub fn new(a: BigRational, b: BigRational, q: u32) -> Self {
        Self { a, b, q }
    }

    pub fn zero(q: u32) -> Self {
        Self::new(BigRational::zero(), BigRational::zero(), q)
    }

    pub fn one(q: u32) -> Self {
        Self::from_rational(BigRational::one(), q)
    }

    pub fn from_int(n: i64, q: u32) -> Self {
        Self::from_rational(rat(n), q)
    }

    pub fn from_rational(a: BigRational, q: u32) -> Self {
        Self::new(a, BigRational::zero(), q)
    }

    /// `v^e` for any integer `e`.
    pub fn v_pow(e: i32, q: u32) -> Self {
        let qq = BigRational::from_integer(BigInt::from(q));
        let half = e.div_euclid(2);
        let scale = if half >= 0 {
            num_traits::pow(qq, half as usize)
        } else {
            num_traits::pow(qq.recip(), (-half) as usize)
        };
        if e.rem_euclid(2) == 0 {
            Self::new(scale, BigRational::zero(), q)
        } else {
            Self::new(BigRational::zero(), scale, q)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Rational value when the `v` component vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c, self.q)
    }

    /// Field norm `a^2 - q b^2`; nonzero for nonzero elements since `q` is
    /// not a rational square.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.q as i64)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::new(&self.a / &n, -&self.b / &n, self.q))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i32) -> Result<Self, ArithError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.q);
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "QuadCoeff values over different q");
    }
}

/// Image of a Laurent polynomial under `v -> sqrt(q)`.
pub fn specialize_poly(p: &LaurentPoly, q: u32) -> QuadCoeff {
    let mut acc = QuadCoeff::zero(q);
    for (e, c) in p.terms() {
        acc += &QuadCoeff::v_pow(e, q).scale(c);
    }
    acc
}

/// Image of a rational function under `v -> sqrt(q)`.
pub fn specialize(f: &RationalFunction, q: u32) -> Result<QuadCoeff, ArithError> {
    let n = specialize_poly(f.numerator(), q);
    let d = specialize_poly(f.denominator(), q);
    if d.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    n.checked_div(&d)
}

fn fmt_rat(r: &BigRational) -> String {
    r.to_string()
}

impl fmt::Display for QuadCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*v", fmt_rat(&self.a), fmt_rat(&-&self.b))
        } else {
            write!(f, "{} + {}*v", fmt_rat(&self.a), fmt_rat(&self.b))
        }
    }
}

impl fmt::Debug for QuadCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadCoeff({self}; q={})", self.q)
    }
}

impl<'a> Add<&'a QuadCoeff> for &'a QuadCoeff {
    type Output = QuadCoeff;
    fn add(self, rhs: &QuadCoeff) -> QuadCoeff {
        self.check(rhs);
        QuadCoeff::new(&self.a + &rhs.a, &self.b + &rhs.b, self.q)
    }
}

impl Add for QuadCoeff {
    type Output = QuadCoeff;
    fn add(self, rhs: QuadCoeff) -> QuadCoeff {
        &self + &rhs
    }
}

impl AddAssign<&QuadCoeff> for QuadCoeff {
    fn add_assign(&mut self, rhs: &QuadCoeff) {
        self.check(rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QuadCoeff> for QuadCoeff {
    fn sub_assign(&mut self, rhs: &QuadCoeff) {
        self.check(rhs);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl<'a> Sub<&'a QuadCoeff> for &'a QuadCoeff {
    type Output = QuadCoeff;
    fn sub(self, rhs: &QuadCoeff) -> QuadCoeff {
        self.check(rhs);
        QuadCoeff::new(&self.a - &rhs.a, &self.b - &rhs.b, self.q)
    }
}

impl Sub for QuadCoeff {
    type Output = QuadCoeff;
    fn sub(self, rhs: QuadCoeff) -> QuadCoeff {
        &self - &rhs
    }
}

impl Neg for &QuadCoeff {
    type Output = QuadCoeff;
    fn neg(self) -> QuadCoeff {
        QuadCoeff::new(-&self.a, -&self.b, self.q)
    }
}

impl Neg for QuadCoeff {
    type Output = QuadCoeff;
    fn neg(self) -> QuadCoeff {
        -&self
    }
}

impl<'a> Mul<&'a QuadCoeff> for &'a QuadCoeff {
    type Output = QuadCoeff;
    fn mul(self, rhs: &QuadCoeff) -> QuadCoeff {
        self.check(rhs);
        let q = rat(self.q as i64);
        QuadCoeff::new(
            &self.a * &rhs.a + &self.b * &rhs.b * q,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.q,
        )
    }
}

impl Mul for QuadCoeff {
    type Output = QuadCoeff;
    fn mul(self, rhs: QuadCoeff) -> QuadCoeff {
        &self * &rhs
    }
}
