//! Integer-exponent Laurent polynomials in the deformation variable `q`,
//! with exact rational coefficients.
//!
//! A [`LaurentPoly`] is stored as a sparse map from exponent to coefficient.
//! No zero coefficients are ever stored, so two values are equal iff their
//! term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact Laurent polynomial in `q` over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::q_power(0)
    }

    /// The monomial `q^exp`.
    pub fn q_power(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// The monomial `coeff * q^exp`.
    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lowest exponent with nonzero coefficient. `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub(crate) fn add_term(&mut self, exp: i64, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q -> q^k` (exponent scaling). `k` must be nonzero.
    pub fn scale_exponents(&self, k: i64) -> Self {
        assert!(k != 0, "exponent scale must be nonzero");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e * k, c.clone()))
            .collect();
        Self { terms }
    }

    /// Halves every exponent; `None` if any exponent is odd.
    pub fn halve_exponents(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e % 2 != 0 {
                return None;
            }
            terms.insert(e / 2, c.clone());
        }
        Some(Self { terms })
    }

    /// Evaluates at `q = 1`, i.e. sums all coefficients.
    pub fn eval_one(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Exact division. Returns `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (na, nv) = self.to_dense();
        let (da, dv) = divisor.to_dense();
        let (quot, rem) = dense_divrem(&nv, &dv);
        if !rem.is_empty() {
            return None;
        }
        Some(Self::from_dense(na - da, &quot))
    }

    /// Dense representation `(min_exp, coeffs)` with `coeffs[0] != 0`.
    /// The zero polynomial maps to `(0, [])`.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigRational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (lo, coeffs)
    }

    pub(crate) fn from_dense(shift: i64, coeffs: &[BigRational]) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(shift + k as i64, c.clone());
            }
        }
        Self { terms }
    }

    /// Serializes as sorted `[exponent, numerator, denominator]` triples.
    pub fn to_triples(&self) -> Vec<(i64, BigInt, BigInt)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn from_triples(triples: &[(i64, BigInt, BigInt)]) -> Self {
        let mut out = Self::zero();
        for (e, p, q) in triples {
            out.add_term(*e, &BigRational::new(p.clone(), q.clone()));
        }
        out
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        LaurentPoly { terms }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
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

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

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

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Dense polynomial division: returns `(quotient, remainder)` with the
/// remainder trimmed of leading zeros (empty means exact).
pub(crate) fn dense_divrem(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = den.len() - 1;
    assert!(!den[dd].is_zero(), "denominator has a zero leading coefficient");
    if num.len() <= dd {
        return (Vec::new(), trim(num.to_vec()));
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigRational::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let lead = &rem[k + dd] / &den[dd];
        if lead.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            let sub = &lead * d;
            rem[k + j] -= sub;
        }
        quot[k] = lead;
    }
    (trim(quot), trim(rem))
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Monic gcd over ℚ[x] by the Euclidean algorithm.
pub(crate) fn dense_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = dense_divrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_power(1)
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        let r = LaurentPoly::monomial(3, BigRational::zero());
        assert!(r.is_zero());
    }

    #[test]
    fn mul_by_zero_is_zero() {
        let p = &q() + &LaurentPoly::q_power(-4);
        assert!((&p * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn exact_div_detects_remainders() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1
        let num = &LaurentPoly::q_power(2) - &LaurentPoly::q_power(-2);
        let den = &q() - &LaurentPoly::q_power(-1);
        let quot = num.exact_div(&den).unwrap();
        assert_eq!(quot, &q() + &LaurentPoly::q_power(-1));
        let bad = &num + &LaurentPoly::one();
        assert!(bad.exact_div(&den).is_none());
    }

    #[test]
    fn triples_round_trip() {
        let p = &(&q() * &LaurentPoly::from_int(3)) - &LaurentPoly::q_power(-2);
        assert_eq!(LaurentPoly::from_triples(&p.to_triples()), p);
    }

    #[test]
    fn display_is_readable() {
        let p = &(&LaurentPoly::q_power(2) + &LaurentPoly::from_int(2)) + &LaurentPoly::q_power(-2);
        assert_eq!(p.to_string(), "q^2 + 2 + q^-2");
    }
}
