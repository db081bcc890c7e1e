//! Exact coefficient arithmetic.
//!
//! Two coefficient modes are supported: the formal mode works with Laurent
//! polynomials and rational functions in `v`, the specialized mode with
//! `a + b*v` where `v^2 = q`. [`CoeffValue`] carries either one and refuses to
//! combine values from different modes.

mod laurent;
mod qcomb;
mod quad;
mod ratfun;

use std::fmt;

use thiserror::Error;

pub use laurent::LaurentPoly;
pub use qcomb::{
    pochhammer, q_binom, q_binom_or_zero, q_double_factorial, q_factorial, q_int, v_minus_vinv,
};
pub use quad::{specialize, specialize_poly, QuadCoeff};
pub use ratfun::RationalFunction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("negative argument {0}")]
    NegativeArgument(i64),
    #[error("cannot mix formal and specialized coefficients")]
    ModeMismatch,
    #[error("specialized coefficients over different primes {0} and {1}")]
    PrimeMismatch(u32, u32),
}

/// A scalar in one of the two coefficient modes.
#[derive(Clone, PartialEq, Eq)]
pub enum CoeffValue {
    Formal(RationalFunction),
    Special(QuadCoeff),
}

impl CoeffValue {
    fn pair<'a>(
        &'a self,
        other: &'a Self,
    ) -> Result<PairRef<'a>, ArithError> {
        match (self, other) {
            (CoeffValue::Formal(a), CoeffValue::Formal(b)) => Ok(PairRef::Formal(a, b)),
            (CoeffValue::Special(a), CoeffValue::Special(b)) => {
                if a.q != b.q {
                    Err(ArithError::PrimeMismatch(a.q, b.q))
                } else {
                    Ok(PairRef::Special(a, b))
                }
            }
            _ => Err(ArithError::ModeMismatch),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(match self.pair(other)? {
            PairRef::Formal(a, b) => CoeffValue::Formal(a + b),
            PairRef::Special(a, b) => CoeffValue::Special(a + b),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(match self.pair(other)? {
            PairRef::Formal(a, b) => CoeffValue::Formal(a - b),
            PairRef::Special(a, b) => CoeffValue::Special(a - b),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(match self.pair(other)? {
            PairRef::Formal(a, b) => CoeffValue::Formal(a * b),
            PairRef::Special(a, b) => CoeffValue::Special(a * b),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(match self.pair(other)? {
            PairRef::Formal(a, b) => CoeffValue::Formal(a.checked_div(b)?),
            PairRef::Special(a, b) => CoeffValue::Special(a.checked_div(b)?),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CoeffValue::Formal(a) => a.is_zero(),
            CoeffValue::Special(a) => a.is_zero(),
        }
    }

    /// Moves a formal value into the specialized mode; specialized values
    /// must already live over `q`.
    pub fn specialize(&self, q: u32) -> Result<QuadCoeff, ArithError> {
        match self {
            CoeffValue::Formal(a) => specialize(a, q),
            CoeffValue::Special(a) if a.q == q => Ok(a.clone()),
            CoeffValue::Special(a) => Err(ArithError::PrimeMismatch(a.q, q)),
        }
    }
}

enum PairRef<'a> {
    Formal(&'a RationalFunction, &'a RationalFunction),
    Special(&'a QuadCoeff, &'a QuadCoeff),
}

impl fmt::Display for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffValue::Formal(a) => write!(f, "{a}"),
            CoeffValue::Special(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Debug for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn specialize_examples() {
        let v2 = RationalFunction::v_pow(2);
        assert_eq!(specialize(&v2, 2).unwrap(), QuadCoeff::from_int(2, 2));
        let two = RationalFunction::from_poly(q_int(2));
        assert_eq!(
            specialize(&two, 3).unwrap(),
            QuadCoeff::new(BigRational::from_integer(0.into()), BigRational::new(4.into(), 3.into()), 3)
        );
        let f = RationalFunction::new(LaurentPoly::one(), v_minus_vinv()).unwrap();
        assert_eq!(specialize(&f, 2).unwrap(), QuadCoeff::v_pow(1, 2));
    }

    #[test]
    fn specialize_rejects_zero_denominator() {
        let f = RationalFunction::new(LaurentPoly::one(), LaurentPoly::from_terms([(2, 1), (0, -2)]))
            .unwrap();
        assert_eq!(specialize(&f, 2), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn modes_do_not_mix() {
        let a = CoeffValue::Formal(RationalFunction::one());
        let b = CoeffValue::Special(QuadCoeff::one(2));
        assert_eq!(a.add(&b), Err(ArithError::ModeMismatch));
        let c = CoeffValue::Special(QuadCoeff::one(3));
        assert_eq!(b.mul(&c), Err(ArithError::PrimeMismatch(2, 3)));
    }
}
