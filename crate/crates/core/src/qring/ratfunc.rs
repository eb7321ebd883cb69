//! Reduced rational functions in `q`.
//!
//! A [`RatFunc`] is a fraction of Laurent polynomials kept in a canonical
//! form, so that equality of values is structural equality:
//! - numerator and denominator are coprime as ordinary polynomials after
//!   clearing powers of `q`,
//! - the denominator is an ordinary polynomial whose constant (lowest
//!   exponent) coefficient is exactly `1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigRational, One, Zero};

use super::laurent::{dense_divrem, dense_gcd, LaurentPoly};
use super::PoleAtOneError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Builds the reduced fraction `num/den`. Panics when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "RatFunc denominator must be nonzero");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self {
                num,
                den: LaurentPoly::one(),
            };
        }
        if den.num_terms() == 1 {
            // Unit denominator c*q^e: fold it into the numerator.
            let e = den.min_exp().unwrap();
            let c = den.coeff(e);
            let inv = LaurentPoly::monomial(-e, c.recip());
            return Self {
                num: &num * &inv,
                den: LaurentPoly::one(),
            };
        }
        let (na, nv) = num.to_dense();
        let (da, dv) = den.to_dense();
        let g = dense_gcd(&nv, &dv);
        let (mut n1, r1) = dense_divrem(&nv, &g);
        debug_assert!(r1.is_empty());
        let (mut d1, r2) = dense_divrem(&dv, &g);
        debug_assert!(r2.is_empty());
        let c = d1[0].clone();
        debug_assert!(!c.is_zero());
        if !c.is_one() {
            for x in &mut n1 {
                *x /= &c;
            }
            for x in &mut d1 {
                *x /= &c;
            }
        }
        Self {
            num: LaurentPoly::from_dense(na - da, &n1),
            den: LaurentPoly::from_dense(0, &d1),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying Laurent polynomial when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Cancels common factors of `q - 1` (the fraction is stored reduced, so
    /// none remain) and evaluates at `q = 1`. Fails when the reduced
    /// denominator vanishes there.
    pub fn eval_at_one(&self) -> Result<BigRational, PoleAtOneError> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(PoleAtOneError);
        }
        Ok(self.num.eval_one() / d)
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num + &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_power(1)
    }

    fn q_minus_qinv() -> LaurentPoly {
        &q() - &LaurentPoly::q_power(-1)
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (q^2 - 1) / (q - q^-1) == q
        let f = RatFunc::new(&LaurentPoly::q_power(2) - &LaurentPoly::one(), q_minus_qinv());
        assert_eq!(f, RatFunc::from_laurent(q()));
        assert!(f.as_laurent().is_some());
    }

    #[test]
    fn eval_at_one_handles_poles() {
        let f = RatFunc::new(&LaurentPoly::q_power(2) - &LaurentPoly::one(), q_minus_qinv());
        assert_eq!(f.eval_at_one().unwrap(), BigRational::one());
        assert_eq!(
            RatFunc::from_int(5).eval_at_one().unwrap(),
            BigRational::from_integer(5.into())
        );
        let pole = RatFunc::new(LaurentPoly::one(), q_minus_qinv());
        assert!(pole.eval_at_one().is_err());
    }

    #[test]
    fn denominator_constant_term_is_one() {
        let f = RatFunc::new(LaurentPoly::one(), &LaurentPoly::from_int(-2) * &q_minus_qinv());
        assert_eq!(f.denominator().coeff(f.denominator().min_exp().unwrap()), BigRational::one());
        assert_eq!(f.denominator().min_exp(), Some(0));
    }
}
