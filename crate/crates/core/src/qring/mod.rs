//! Exact arithmetic in ℚ(q) plus the scalar q-combinatorial quantities used
//! by the closed formulas for the structure constants.
//!
//! Conventions:
//! - `q_i = q^{ε_i}` and `q_j = q^{ε_j}` for the local Cartan data held in a
//!   [`QContext`];
//! - `[m]` is the symmetric q-number `(q^m - q^-m)/(q - q^-1)` (in a scaled
//!   variable), `(N)` the modified square-variable number
//!   `(1 - q_i^{2N})/(1 - q_i^2)`;
//! - `(x;x)_m` is the finite q-Pochhammer product.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! all Laurent divisions performed here are checked to have zero remainder.

mod laurent;
mod ratfunc;

use std::fmt;

pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;

use thiserror::Error;

/// Evaluation at `q = 1` hit a pole: the reduced denominator vanishes there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("pole at q = 1: reduced denominator vanishes")]
pub struct PoleAtOneError;

/// A rejected set of local Cartan data.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("off-diagonal Cartan entries must be non-positive: a_ij = {a_ij}, a_ji = {a_ji}")]
    PositiveOffDiagonal { a_ij: i64, a_ji: i64 },
    #[error("symmetrizers must be positive: eps_i = {eps_i}, eps_j = {eps_j}")]
    NonPositiveSymmetrizer { eps_i: i64, eps_j: i64 },
    #[error("symmetrizability violated: eps_i*a_ij = {lhs} but eps_j*a_ji = {rhs}")]
    NotSymmetrizable { lhs: i64, rhs: i64 },
    #[error("zero pattern violated: a_ij = 0 iff a_ji = 0 fails for a_ij = {a_ij}, a_ji = {a_ji}")]
    ZeroPattern { a_ij: i64, a_ji: i64 },
}

/// Local Cartan data for the index pair `(i, j)`: the two off-diagonal
/// entries and the symmetrizers fixing `q_i = q^{ε_i}`, `q_j = q^{ε_j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QContext {
    a_ij: i64,
    a_ji: i64,
    eps_i: i64,
    eps_j: i64,
}

impl QContext {
    pub fn new(a_ij: i64, a_ji: i64, eps_i: i64, eps_j: i64) -> Result<Self, CartanError> {
        if a_ij > 0 || a_ji > 0 {
            return Err(CartanError::PositiveOffDiagonal { a_ij, a_ji });
        }
        if eps_i <= 0 || eps_j <= 0 {
            return Err(CartanError::NonPositiveSymmetrizer { eps_i, eps_j });
        }
        if (a_ij == 0) != (a_ji == 0) {
            return Err(CartanError::ZeroPattern { a_ij, a_ji });
        }
        let (lhs, rhs) = (eps_i * a_ij, eps_j * a_ji);
        if lhs != rhs {
            return Err(CartanError::NotSymmetrizable { lhs, rhs });
        }
        Ok(Self {
            a_ij,
            a_ji,
            eps_i,
            eps_j,
        })
    }

    /// Symmetric data with `a_ij = a_ji = a` and `ε_i = ε_j = 1`.
    pub fn symmetric(a: i64) -> Self {
        Self::new(a, a, 1, 1).expect("symmetric Cartan data is always valid")
    }

    pub fn a_ij(&self) -> i64 {
        self.a_ij
    }

    pub fn a_ji(&self) -> i64 {
        self.a_ji
    }

    pub fn eps_i(&self) -> i64 {
        self.eps_i
    }

    pub fn eps_j(&self) -> i64 {
        self.eps_j
    }

    pub fn one_minus_a(&self) -> i64 {
        1 - self.a_ij
    }

    /// `q_i^e` as a Laurent polynomial.
    pub fn qi_pow(&self, e: i64) -> LaurentPoly {
        LaurentPoly::q_power(self.eps_i * e)
    }

    /// `q_j^e` as a Laurent polynomial.
    pub fn qj_pow(&self, e: i64) -> LaurentPoly {
        LaurentPoly::q_power(self.eps_j * e)
    }

    /// `q_i - q_i^{-1}`.
    pub fn qi_minus_inv(&self) -> LaurentPoly {
        &self.qi_pow(1) - &self.qi_pow(-1)
    }

    /// `q_j - q_j^{-1}`.
    pub fn qj_minus_inv(&self) -> LaurentPoly {
        &self.qj_pow(1) - &self.qj_pow(-1)
    }

    /// `[n]_{q_i}`.
    pub fn q_int_i(&self, n: i64) -> LaurentPoly {
        q_integer(n, self.eps_i)
    }

    /// `[n]_{q_i}!`.
    pub fn q_fact_i(&self, n: i64) -> LaurentPoly {
        q_factorial(n, self.eps_i)
    }

    /// The q_i-binomial coefficient `[n over m]_{q_i}`.
    pub fn q_binom_i(&self, n: i64, m: i64) -> LaurentPoly {
        q_binomial(n, m, self.eps_i)
    }
}

impl fmt::Display for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a_ij = {}, a_ji = {}, eps_i = {}, eps_j = {}",
            self.a_ij, self.a_ji, self.eps_i, self.eps_j
        )
    }
}

/// A scalar graded by a power of the deformation parameter `c_i`: the value
/// multiplies `c_i^{c_power}`. Sums are only formed between equal grades,
/// which matches the fixed `Z_i`-power of the term a coefficient attaches to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff {
    pub c_power: u32,
    pub value: RatFunc,
}

impl Coeff {
    pub fn new(c_power: u32, value: RatFunc) -> Self {
        Self { c_power, value }
    }

    pub fn zero(c_power: u32) -> Self {
        Self::new(c_power, RatFunc::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        assert_eq!(
            self.c_power, other.c_power,
            "cannot add coefficients of different c-grade"
        );
        Coeff::new(self.c_power, &self.value + &other.value)
    }

    pub fn scaled(&self, by: &RatFunc) -> Coeff {
        Coeff::new(self.c_power, &self.value * by)
    }

    pub fn neg(&self) -> Coeff {
        Coeff::new(self.c_power, -&self.value)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.c_power {
            0 => write!(f, "{}", self.value),
            1 => write!(f, "c * ({})", self.value),
            k => write!(f, "c^{k} * ({})", self.value),
        }
    }
}

/// The q-number `[n]` in the variable `q^scale`:
/// `(q^{scale n} - q^{-scale n}) / (q^scale - q^{-scale})`, an odd function
/// of `n`.
pub fn q_integer(n: i64, scale: i64) -> LaurentPoly {
    assert!(scale > 0, "q_integer scale must be positive");
    if n == 0 {
        return LaurentPoly::zero();
    }
    if n < 0 {
        return -q_integer(-n, scale);
    }
    let mut out = LaurentPoly::zero();
    for k in 0..n {
        out += &LaurentPoly::q_power(scale * (n - 1 - 2 * k));
    }
    out
}

/// `[n]! = [1][2]...[n]` in the variable `q^scale`.
pub fn q_factorial(n: i64, scale: i64) -> LaurentPoly {
    assert!(n >= 0, "q_factorial of a negative integer");
    let mut out = LaurentPoly::one();
    for k in 1..=n {
        out *= &q_integer(k, scale);
    }
    out
}

/// The q-binomial coefficient `[n over m]` in the variable `q^scale`.
/// Requires `0 <= m <= n`; every intermediate division is exact and checked.
pub fn q_binomial(n: i64, m: i64, scale: i64) -> LaurentPoly {
    assert!(
        0 <= m && m <= n,
        "q_binomial requires 0 <= m <= n, got n = {n}, m = {m}"
    );
    let mut out = LaurentPoly::one();
    for i in 1..=m {
        out *= &q_integer(n - m + i, scale);
        out = out
            .exact_div(&q_integer(i, scale))
            .expect("q-binomial division is exact");
    }
    out
}

/// The finite q-Pochhammer product `(x;x)_m = prod_{k=1}^m (1 - x^k)` for
/// `x = q^{x_exp}`. The empty product (`m = 0`) is 1.
pub fn q_pochhammer(x_exp: i64, m: i64) -> LaurentPoly {
    assert!(x_exp != 0, "q_pochhammer base exponent must be nonzero");
    assert!(m >= 0, "q_pochhammer order must be a natural number");
    let mut out = LaurentPoly::one();
    for k in 1..=m {
        out *= &(&LaurentPoly::one() - &LaurentPoly::q_power(k * x_exp));
    }
    out
}

/// The modified q_i^2-number `(N) = (1 - q_i^{2N})/(1 - q_i^2)`, defined for
/// every integer `N` (the fraction is always exact) and equal to
/// `q_i^{N-1}[N]_{q_i}`.
pub fn q_modified_square(n: i64, ctx: &QContext) -> LaurentPoly {
    let e = ctx.eps_i();
    if n == 0 {
        return LaurentPoly::zero();
    }
    let mut out = LaurentPoly::zero();
    if n > 0 {
        // 1 + q^2 + ... + q^{2(N-1)} in q_i
        for k in 0..n {
            out += &LaurentPoly::q_power(2 * e * k);
        }
    } else {
        // -(q^{-2} + q^{-4} + ... + q^{2N}) in q_i
        for k in n..0 {
            out -= &LaurentPoly::q_power(2 * e * k);
        }
    }
    out
}

/// `alpha_N = (N)_{q_i^2} q_i^{-2N+2}` for `N >= 0`, and exactly 0 for `N < 0`.
pub fn alpha_coeff(n: i64, ctx: &QContext) -> LaurentPoly {
    if n < 0 {
        return LaurentPoly::zero();
    }
    &q_modified_square(n, ctx) * &ctx.qi_pow(-2 * n + 2)
}

/// `gamma_{M,N} = (N - M)_{q_i^2} q_i^{-a_ij - 2N + 2}`; zero iff `M == N`.
pub fn gamma_coeff(m: i64, n: i64, ctx: &QContext) -> LaurentPoly {
    &q_modified_square(n - m, ctx) * &ctx.qi_pow(-ctx.a_ij() - 2 * n + 2)
}

/// Even and odd part of an integer: `(floor(d/2), d mod 2)` with
/// `d == 2*even + odd`.
pub fn even_odd(d: i64) -> (i64, i64) {
    (d.div_euclid(2), d.rem_euclid(2))
}
