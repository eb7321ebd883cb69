//! Divided powers of the coideal generators, the free-algebra resummation
//! identity behind the divided-power form of the relations, and the
//! classical (q→1) coefficients of the inhomogeneous Serre relations.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use crate::qring::{
    even_odd, Coeff, LaurentPoly, PoleAtOneError, QContext, RatFunc,
};
use crate::relations::rho_case1_projection;

/// The expansion coefficient `α^{(s)}_{k,N}`: the sum over strictly
/// increasing k-tuples `1-s <= ℓ_1 < ... < ℓ_k <= N` of `Π [2ℓ+s]_{q_i}²`;
/// 1 for `k = 0` and 0 outside the defined range.
pub fn alpha_sk(k: i64, n: i64, s: u8, ctx: &QContext) -> LaurentPoly {
    assert!(s <= 1);
    if k == 0 {
        return LaurentPoly::one();
    }
    if k < 0 || k > n + s as i64 {
        return LaurentPoly::zero();
    }
    // strictly increasing tuples in [1-s, n]
    let lo = 1 - s as i64;
    let mut total = LaurentPoly::zero();
    let mut tuple: Vec<i64> = (lo..lo + k).collect();
    loop {
        let mut prod = LaurentPoly::one();
        for &ell in &tuple {
            prod *= &ctx.q_int_i(2 * ell + s as i64).pow(2);
        }
        total += &prod;
        // advance strictly increasing tuple bounded by n
        let klen = tuple.len();
        let mut pos = klen;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            let max_here = n - (klen - 1 - pos) as i64;
            if tuple[pos] < max_here {
                tuple[pos] += 1;
                for later in pos + 1..klen {
                    tuple[later] = tuple[later - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A divided power `B^{(r)}_{i,variant} = Σ_k coeffs[k] · B_i^{r-2k}`, with
/// `coeffs[k] = (q_i c_i)^k α^{(variant)}_{k, ...} / [r]_{q_i}!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedPower {
    pub r: u32,
    pub variant: u8,
    pub coeffs: BTreeMap<u32, Coeff>,
}

pub fn divided_power(r: u32, variant: u8, ctx: &QContext) -> DividedPower {
    assert!(variant <= 1);
    let (r_e, r_p) = even_odd(r as i64);
    let fact = RatFunc::from_laurent(ctx.q_fact_i(r as i64));
    let inv_fact = fact.recip().expect("q-factorial is nonzero");
    let n = r_e + r_p * (1 - variant as i64) - 1;
    let mut coeffs = BTreeMap::new();
    for k in 0..=r_e {
        let alpha = alpha_sk(k, n, variant, ctx);
        let value = &RatFunc::from_laurent(&ctx.qi_pow(k) * &alpha) * &inv_fact;
        if !value.is_zero() {
            coeffs.insert(k as u32, Coeff::new(k as u32, value));
        }
    }
    DividedPower {
        r,
        variant,
        coeffs,
    }
}

/// Key of a free-algebra term in the resummation check: x-power left of y,
/// x-power right of y, and the grade in `c_i`.
type ClwKey = (i64, i64, u32);

fn clw_add(map: &mut BTreeMap<ClwKey, LaurentPoly>, key: ClwKey, val: &LaurentPoly) {
    if val.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(entry) => {
            *entry += val;
            if entry.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, val.clone());
        }
    }
}

/// Expands `[1-a]_{q_i}! Σ_m (-1)^m B^{(m)}_{i,L} y B^{(1-a-m)}_{i,R}` in the
/// free algebra on two symbols and checks it against the collected form
/// `Σ_{m,ℓ} (-1)^m (q_i c_i)^ℓ Θ^{(variant)}_{m,1-a-m-2ℓ} x^m y x^{1-a-m-2ℓ}`.
/// The left/right variants pair as `(0, a_p)` for variant 0 and
/// `(1, 1-a_p)` for variant 1. No algebra relations are imposed: the check
/// is a pure resummation identity between scalar coefficients.
pub fn clw_collapse_check(variant: u8, ctx: &QContext) -> bool {
    assert!(variant <= 1);
    let a = ctx.a_ij();
    let n = 1 - a;
    let (_, a_p) = even_odd(a);
    let (left_var, right_var) = if variant == 0 {
        (0u8, a_p as u8)
    } else {
        (1u8, (1 - a_p) as u8)
    };

    // left-hand side, scaled by [1-a]!: the per-m scale factor becomes the
    // q_i-binomial [1-a over m]
    let mut lhs: BTreeMap<ClwKey, LaurentPoly> = BTreeMap::new();
    for m in 0..=n {
        let binom = ctx.q_binom_i(n, m);
        let left = divided_power(m as u32, left_var, ctx);
        let right = divided_power((n - m) as u32, right_var, ctx);
        for (k1, c1) in &left.coeffs {
            for (k2, c2) in &right.coeffs {
                // c1.value * c2.value * [m]! [1-a-m]! is a Laurent polynomial
                let v1 = &c1.value * &RatFunc::from_laurent(ctx.q_fact_i(m));
                let v2 = &c2.value * &RatFunc::from_laurent(ctx.q_fact_i(n - m));
                let prod = &(&v1 * &v2) * &RatFunc::from_laurent(binom.clone());
                let poly = prod
                    .as_laurent()
                    .expect("factorial-scaled divided-power coefficients are Laurent")
                    .clone();
                let signed = if m % 2 == 1 { -&poly } else { poly };
                let key = (
                    m - 2 * *k1 as i64,
                    (n - m) - 2 * *k2 as i64,
                    k1 + k2,
                );
                clw_add(&mut lhs, key, &signed);
            }
        }
    }

    // right-hand side: the Θ-collected double sum
    let mut rhs: BTreeMap<ClwKey, LaurentPoly> = BTreeMap::new();
    for m in 0..=n {
        let (top, _) = even_odd(n - m);
        for ell in 0..=top {
            let m_prime = n - m - 2 * ell;
            let theta = crate::relations::theta_constant(m, m_prime, variant, ctx);
            let scaled = &theta * &ctx.qi_pow(ell);
            let signed = if m % 2 == 1 { -&scaled } else { scaled };
            clw_add(&mut rhs, (m, m_prime, ell as u32), &signed);
        }
    }

    lhs == rhs
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Closed forms for the classical coefficients `c_s[r]` (two equivalent
/// shapes). The empty sum reads as 1 at the boundary.
pub fn classical_c_closed(s: i64, r: i64, form: u8) -> BigInt {
    assert!(0 <= s && s <= r, "requires 0 <= s <= r");
    let (r_e, r_p) = even_odd(r);
    if (r - s + 1).rem_euclid(2) == 0 {
        return BigInt::zero();
    }
    let half = (r - s) / 2;
    match form {
        1 => sum_tuples(half, r_p, r_e + r_p - 1, |ell| {
            let v = big(2 * ell + 1 - r_p);
            &v * &v
        }),
        2 => {
            let mut total = BigInt::zero();
            let mut odd_sq = BigInt::one(); // Π_{k=0}^{m} (2k-1)², starts at m=0
            for m in 0..=half {
                if m > 0 {
                    let f = big(2 * m - 1);
                    odd_sq *= &f * &f;
                }
                let inner = sum_tuples(half - m, 1 - r_p, r_e - m - 1, |ell| {
                    let v = big(2 * ell + r_p);
                    &v * &v
                });
                total += binom_int(r, 2 * m) * &odd_sq * inner;
            }
            total
        }
        _ => panic!("form must be 1 or 2"),
    }
}

/// Sum over strictly increasing `len`-tuples in `[lo, hi]` of the product of
/// `f` over the entries; 1 for `len == 0`.
fn sum_tuples(len: i64, lo: i64, hi: i64, f: impl Fn(i64) -> BigInt) -> BigInt {
    assert!(len >= 0);
    if len == 0 {
        return BigInt::one();
    }
    if hi - lo + 1 < len {
        return BigInt::zero();
    }
    let len = len as usize;
    let mut tuple: Vec<i64> = (lo..lo + len as i64).collect();
    let mut total = BigInt::zero();
    loop {
        let mut prod = BigInt::one();
        for &ell in &tuple {
            prod *= f(ell);
        }
        total += prod;
        let mut pos = len;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            let max_here = hi - (len - 1 - pos) as i64;
            if tuple[pos] < max_here {
                tuple[pos] += 1;
                for later in pos + 1..len {
                    tuple[later] = tuple[later - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binom_int(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * big(n - i) / big(i + 1);
    }
    out
}

/// The recursion `c_s[r] = c_{s-1}[r-1] + (r-1) c_s[r-2]` exactly as
/// transcribed, with boundaries `c_r[r] = 1`, `c_{r-1}[r] = 0` and
/// `c_{-1}[·] = 0`.
///
/// Diagnostic only: the transcribed recursion disagrees with the closed
/// forms starting at `(s, r) = (1, 3)`; the closed forms are corroborated by
/// the independent q→1 limit, so they are the ones used everywhere else.
pub fn classical_c_recursion(s: i64, r: i64) -> BigInt {
    assert!(0 <= s && s <= r, "requires 0 <= s <= r");
    if s == r {
        return BigInt::one();
    }
    if s == r - 1 {
        return BigInt::zero();
    }
    // r >= 2 here since s <= r - 2
    let left = if s == 0 {
        BigInt::zero() // c_{-1}[r-1] = 0
    } else {
        classical_c_recursion(s - 1, r - 1)
    };
    left + big(r - 1) * classical_c_recursion(s, r - 2)
}

/// The q→1 limit of the sign-folded split coefficient
/// `(-1)^{(1-a-m-m')/2} ρ_{m,m'}` with the `c_i`-grade collapsed to 1.
pub fn specialize_rho_q1(
    m: i64,
    m_prime: i64,
    ctx: &QContext,
) -> Result<BigRational, PoleAtOneError> {
    let a = ctx.a_ij();
    let rho = rho_case1_projection(m, m_prime, ctx);
    let w = (1 - a - m - m_prime) / 2;
    let folded = if w.rem_euclid(2) == 1 {
        -&rho.value
    } else {
        rho.value.clone()
    };
    folded.eval_at_one()
}

/// The classical inhomogeneous Serre relation for one Cartan entry: the
/// expanded right-hand side as a map `(m, m') -> integer` and the compact
/// nested-commutator form as a map `s -> coefficient of (ad b_i)^s b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalRelation {
    pub a_ij: i64,
    pub terms: BTreeMap<(u32, u32), BigInt>,
    pub compact: BTreeMap<u32, BigInt>,
}

/// Builds the classical relation from the closed-form coefficients:
/// `(ad b_i)^{1-a} b_j = Σ (-1)^{a+m} binom(m+m', m') c_{m+m'}[1-a] b^m b_j b^{m'}`,
/// compactly `Σ_s (-1)^{a+s} c_s[1-a] (ad b_i)^s b_j`.
pub fn classical_relation(a: i64) -> ClassicalRelation {
    assert!(a <= 0);
    let r = 1 - a;
    let mut terms = BTreeMap::new();
    let mut compact = BTreeMap::new();
    for s in 0..=(-1 - a).max(-1) {
        let c = classical_c_closed(s, r, 1);
        if c.is_zero() {
            continue;
        }
        let signed = if (a + s).rem_euclid(2) == 1 { -&c } else { c.clone() };
        compact.insert(s as u32, signed);
        for m_prime in 0..=s {
            let m = s - m_prime;
            let v = binom_int(s, m_prime) * &c;
            let signed = if (a + m).rem_euclid(2) == 1 { -v } else { v };
            terms.insert((m as u32, m_prime as u32), signed);
        }
    }
    ClassicalRelation {
        a_ij: a,
        terms,
        compact,
    }
}
