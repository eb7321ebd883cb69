//! Closed-form structure constants and assembly of the complete relation
//! tables.
//!
//! The quantum Serre polynomial `F_ij(B_i, B_j)` of degree `1 - a_ij` equals
//! a lower-order polynomial whose coefficients are the structure constants:
//! - first case (both indices fixed, neither black): terms
//!   `Z^w B_i^m B_j B_i^{m'}` with coefficients `ρ_{m,m'}`,
//! - second case (second index black): terms `Z^t B_i^m B_j B_i^{m'} Z^{w-t}`
//!   with `ρ_{m,m',t}` plus terms `Z^t W K_j Z^{w'-t} B_i^m` with `σ_{m,t}`,
//! - the swapped-pair case: two terms `B_i^{-a} Z_i` and `B_i^{-a} Z_j`,
//! - the split case: the first case with `Z_i = -1` folded into the signs.
//!
//! `Z_i` and `W_ij` are opaque symbols here; only their powers and the fixed
//! factor order are tracked. `Z_i` does not commute with `B_j` in the second
//! case, so symbolic factors are never reordered within a term shape.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;

use crate::combinat::{
    enumerate_l, enumerate_lp, enumerate_s_case1, enumerate_s_case2, enumerate_sp, even_odd,
    nvector, s_slot, theta_exponent, zeta, BinaryTuple, NVector,
};
use crate::onsager::alpha_sk;
use crate::qring::{
    alpha_coeff, gamma_coeff, q_modified_square, q_pochhammer, Coeff, LaurentPoly, QContext,
    RatFunc,
};

/// Which opaque central-ish symbol a swapped-pair term carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TauSlot {
    Zi,
    Zj,
}

/// The symbolic shape of one term of an assembled relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TermShape {
    /// `Z^{z_power} B_i^m B_j B_i^{m'}` (first case; split and classical use
    /// `z_power = 0`).
    Zbb { m: u32, m_prime: u32, z_power: u32 },
    /// `Z^t B_i^m B_j B_i^{m'} Z^{z_power - t}` (second case).
    Zbbz {
        m: u32,
        m_prime: u32,
        t: u32,
        z_power: u32,
    },
    /// `Z^t W K_j Z^{z_power - t} B_i^m` (second case).
    Zwkzb { m: u32, t: u32, z_power: u32 },
    /// `B_i^{power} Z_i` or `B_i^{power} Z_j` (swapped-pair case).
    BzTau { power: u32, slot: TauSlot },
}

impl fmt::Display for TermShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn pow(f: &mut fmt::Formatter<'_>, base: &str, e: u32) -> fmt::Result {
            match e {
                0 => Ok(()),
                1 => write!(f, "{base} "),
                _ => write!(f, "{base}^{e} "),
            }
        }
        match self {
            TermShape::Zbb { m, m_prime, z_power } => {
                pow(f, "Z", *z_power)?;
                pow(f, "Bi", *m)?;
                write!(f, "Bj")?;
                if *m_prime > 0 {
                    write!(f, " ")?;
                    pow(f, "Bi", *m_prime)?;
                }
                Ok(())
            }
            TermShape::Zbbz {
                m,
                m_prime,
                t,
                z_power,
            } => {
                pow(f, "Z", *t)?;
                pow(f, "Bi", *m)?;
                write!(f, "Bj ")?;
                pow(f, "Bi", *m_prime)?;
                pow(f, "Z", z_power - t)?;
                Ok(())
            }
            TermShape::Zwkzb { m, t, z_power } => {
                pow(f, "Z", *t)?;
                write!(f, "W Kj ")?;
                pow(f, "Z", z_power - t)?;
                pow(f, "Bi", *m)?;
                Ok(())
            }
            TermShape::BzTau { power, slot } => {
                pow(f, "Bi", *power)?;
                match slot {
                    TauSlot::Zi => write!(f, "Zi"),
                    TauSlot::Zj => write!(f, "Zj"),
                }
            }
        }
    }
}

/// Which of the relation families a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CaseTag {
    Case1,
    Case2,
    Tau,
    Split,
    Classical,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Tau => "tau",
            CaseTag::Split => "split",
            CaseTag::Classical => "classical",
        };
        write!(f, "{s}")
    }
}

/// An assembled relation `F_ij(B_i, B_j) = Σ coeff · shape`. Only nonzero
/// coefficients are stored; iteration order is the canonical
/// `(kind, m, m', t)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    pub ctx: QContext,
    pub case_tag: CaseTag,
    pub terms: BTreeMap<TermShape, Coeff>,
}

impl RelationTable {
    fn insert(&mut self, shape: TermShape, coeff: Coeff) {
        if !coeff.is_zero() {
            self.terms.insert(shape, coeff);
        }
    }

    pub fn coeff(&self, shape: &TermShape) -> Option<&Coeff> {
        self.terms.get(shape)
    }
}

/// A polynomial in two free noncommuting symbols with rational-function
/// coefficients. Words are sequences over `{A, B}`; for quantum Serre
/// expansions every word has `B`-degree one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FreeVar {
    A,
    B,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeBiPoly {
    pub terms: BTreeMap<Vec<FreeVar>, RatFunc>,
}

impl FreeBiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, word: Vec<FreeVar>, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(entry) => {
                *entry += &coeff;
                if entry.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }
}

fn word_aba(left: i64, right: i64) -> Vec<FreeVar> {
    let mut w = vec![FreeVar::A; left as usize];
    w.push(FreeVar::B);
    w.extend(std::iter::repeat_n(FreeVar::A, right as usize));
    w
}

/// The quantum Serre polynomial
/// `F_ij(x, y) = Σ_{ℓ=0}^{1-a} (-1)^ℓ [1-a over ℓ]_{q_i} x^{1-a-ℓ} y x^ℓ`.
pub fn fij_free(ctx: &QContext) -> FreeBiPoly {
    let n = ctx.one_minus_a();
    let mut out = FreeBiPoly::zero();
    for ell in 0..=n {
        let mut c = ctx.q_binom_i(n, ell);
        if ell % 2 != 0 {
            c = -&c;
        }
        out.add_term(word_aba(n - ell, ell), RatFunc::from_laurent(c));
    }
    out
}

/// Expands the ordered product of q-commutators
/// `ad_{q_i^m}` for `m = a/2 .. -a/2` applied to `y`; the innermost factor
/// is the one with the largest exponent. Half-integer powers are handled by
/// doubling the exponent lattice; they all cancel in the result, which must
/// equal [`fij_free`].
pub fn nested_qcomm(ctx: &QContext, a_var: FreeVar, b_var: FreeVar) -> FreeBiPoly {
    assert!(a_var != b_var, "the two symbols must be distinct");
    let r = ctx.one_minus_a();
    // doubled exponents: 2m = (1 - r) + 2p for the p-th factor
    let mut acc: BTreeMap<Vec<FreeVar>, LaurentPoly> = BTreeMap::new();
    acc.insert(vec![b_var], LaurentPoly::one());
    for p in (0..r).rev() {
        let doubled = ctx.eps_i() * (1 - r + 2 * p);
        let plus = LaurentPoly::q_power(doubled);
        let minus = LaurentPoly::q_power(-doubled);
        let mut next: BTreeMap<Vec<FreeVar>, LaurentPoly> = BTreeMap::new();
        let mut add = |word: Vec<FreeVar>, c: LaurentPoly| {
            if c.is_zero() {
                return;
            }
            match next.get_mut(&word) {
                Some(entry) => {
                    *entry += &c;
                    if entry.is_zero() {
                        next.remove(&word);
                    }
                }
                None => {
                    next.insert(word, c);
                }
            }
        };
        for (word, c) in &acc {
            let mut left = vec![a_var];
            left.extend_from_slice(word);
            add(left, &plus * c);
            let mut right = word.clone();
            right.push(a_var);
            add(right, -&(&minus * c));
        }
        acc = next;
    }
    let mut out = FreeBiPoly::zero();
    for (word, c) in acc {
        let halved = c
            .halve_exponents()
            .expect("half-integer q-powers cancel in the nested commutator");
        out.add_term(word, RatFunc::from_laurent(halved));
    }
    out
}

/// `Θ^{(variant)}_{m,m'}`: the single sum over `r` of a q_i-binomial times
/// two divided-power expansion coefficients.
pub fn theta_constant(m: i64, m_prime: i64, variant: u8, ctx: &QContext) -> LaurentPoly {
    let a = ctx.a_ij();
    assert!(m >= 0 && m_prime >= 0 && m + m_prime <= 1 - a);
    assert_eq!((a + m + m_prime).rem_euclid(2), 1, "a + m + m' must be odd");
    let w = (1 - a - m - m_prime) / 2;
    let (m_e, m_p) = even_odd(m);
    let (a_e, a_p) = even_odd(a);
    let mut total = LaurentPoly::zero();
    for r in 0..=w {
        let binom = ctx.q_binom_i(1 - a, m + 2 * r);
        let (first, second) = match variant {
            0 => (
                alpha_sk(r, r + m_e + m_p - 1, 0, ctx),
                alpha_sk(w - r, -a_e - a_p - r - m_e - m_p, a_p as u8, ctx),
            ),
            1 => (
                alpha_sk(r, r + m_e - 1, 1, ctx),
                alpha_sk(w - r, -a_e - r - m_e - 1, (1 - a_p) as u8, ctx),
            ),
            _ => panic!("variant must be 0 or 1"),
        };
        total += &(&(&binom * &first) * &second);
    }
    total
}

fn parity(n: i64) -> i64 {
    n.rem_euclid(2)
}

fn sign(neg: bool, p: LaurentPoly) -> LaurentPoly {
    if neg {
        -&p
    } else {
        p
    }
}

/// First-case structure constant through the divided-power route:
/// `(a+m+m')_p (-1)^{a+m} (-q_i c_i)^w Θ^{(variant)}_{m,m'}`.
pub fn rho_case1_theta(m: i64, m_prime: i64, variant: u8, ctx: &QContext) -> Coeff {
    let a = ctx.a_ij();
    assert!(m >= 0 && m_prime >= 0 && m + m_prime <= -1 - a);
    let c_power = ((1 - a - m - m_prime) / 2) as u32;
    if parity(a + m + m_prime) == 0 {
        return Coeff::zero(c_power);
    }
    let w = (1 - a - m - m_prime) / 2;
    let theta = theta_constant(m, m_prime, variant, ctx);
    // (-1)^{a+m} (-q_i)^w
    let neg = parity(a + m) == 1;
    let mut value = sign(neg != (w % 2 == 1), ctx.qi_pow(w));
    value *= &theta;
    Coeff::new(c_power, RatFunc::from_laurent(value))
}

/// Shared inner sum of the projection-route structure constants: for each
/// `(k, l, s)` the summand is
/// `(-1)^{k+1} [1-a over k]_{q_i} q_i^{θ_{l,s,k}} Π_r ((ζ^{(r-1)}+1))^{F-slot}`.
fn projection_sum<F>(m: i64, m_prime: i64, ctx: &QContext, mut s_set: F) -> LaurentPoly
where
    F: FnMut(i64) -> Vec<BinaryTuple>,
{
    let a = ctx.a_ij();
    let mut total = LaurentPoly::zero();
    for k in m_prime..=(1 - a - m) {
        let binom = ctx.q_binom_i(1 - a, k);
        for l in enumerate_l(m, m_prime, k, a) {
            for s in s_set(k) {
                let mut term = &binom * &ctx.qi_pow(theta_exponent(&l, &s, k, a));
                for r in 1..=(1 - a) {
                    if l.get(r) == 0 && s_slot(&l, &s, r) == 1 {
                        term *= &q_modified_square(zeta(&l, &s, r - 1) + 1, ctx);
                    }
                }
                total += &sign(k % 2 == 0, term);
            }
        }
    }
    total
}

/// First-case structure constant `ρ_{m,m'}` through the projection route.
/// The `(q_i - q_i^{-1})^w` denominator cancels exactly; the division is
/// checked and a failure aborts (it would be an implementation bug).
pub fn rho_case1_projection(m: i64, m_prime: i64, ctx: &QContext) -> Coeff {
    let a = ctx.a_ij();
    assert!(m >= 0 && m_prime >= 0 && m + m_prime <= -1 - a);
    let c_power = ((1 - a - m - m_prime) / 2) as u32;
    if parity(a + m + m_prime) == 0 {
        return Coeff::zero(c_power);
    }
    let w = (1 - a - m - m_prime) / 2;
    let total = projection_sum(m, m_prime, ctx, |_| enumerate_s_case1(m, m_prime, a));
    let numerator = &total * &ctx.qi_pow(2 * w);
    let value = numerator
        .exact_div(&ctx.qi_minus_inv().pow(w as u32))
        .expect("first-case structure constants are Laurent polynomials");
    Coeff::new(c_power, RatFunc::from_laurent(value))
}

/// Second-case constant `ρ_{m,m',t}`: the projection sum over the t-refined
/// tuple set; may carry `(q_i - q_i^{-1})` denominators.
pub fn rho_case2(m: i64, m_prime: i64, t: i64, ctx: &QContext) -> Coeff {
    let a = ctx.a_ij();
    assert!(m >= 0 && m_prime >= 0 && m + m_prime <= -1 - a && t >= 0);
    let c_power = ((1 - a - m - m_prime) / 2) as u32;
    if parity(a + m + m_prime) == 0 {
        return Coeff::zero(c_power);
    }
    let w = (1 - a - m - m_prime) / 2;
    let total = projection_sum(m, m_prime, ctx, |k| {
        enumerate_s_case2(m, m_prime, k, t, a)
    });
    let value = RatFunc::new(
        &total * &ctx.qi_pow(2 * w),
        ctx.qi_minus_inv().pow(w as u32),
    );
    Coeff::new(c_power, value)
}

/// The iterated-recursion coefficient
/// `c^{(b)}_{a,N} = Σ_{0 ≤ p_1 ≤ ... ≤ p_{b-a} ≤ a} Π_r γ_{N_0-a+p_r, |N|_{0;b-p_r-r+1}-(b-p_r-r)}`,
/// with `c^{(a)}_{a,N} = 1`.
pub fn cab_coefficient(a_idx: i64, b_idx: i64, n: &NVector, ctx: &QContext) -> LaurentPoly {
    assert!(0 <= a_idx && a_idx <= b_idx);
    let depth = (b_idx - a_idx) as usize;
    if depth == 0 {
        return LaurentPoly::one();
    }
    let n0 = n.entries[0];
    let mut total = LaurentPoly::zero();
    // non-decreasing tuples (p_1, ..., p_depth) in {0..=a_idx}
    let mut stack = vec![0i64; depth];
    loop {
        let mut prod = LaurentPoly::one();
        for (r0, &p) in stack.iter().enumerate() {
            let r = r0 as i64 + 1;
            let idx = (b_idx - p - r + 1) as usize;
            prod *= &gamma_coeff(n0 - a_idx + p, n.prefix_sum(idx) - (b_idx - p - r), ctx);
            if prod.is_zero() {
                break;
            }
        }
        total += &prod;
        // advance the non-decreasing tuple
        let mut pos = depth;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            if stack[pos] < a_idx {
                stack[pos] += 1;
                let v = stack[pos];
                for later in stack[pos + 1..].iter_mut() {
                    *later = v;
                }
                break;
            }
        }
    }
}

/// Second-case structure constant `σ_{m,t}` through the closed form: the
/// quintuple sum with the residual alpha product and the `T = 0` / `T > 0`
/// bracket dichotomy.
pub fn sigma_case2(m: i64, t: i64, ctx: &QContext) -> Coeff {
    let a = ctx.a_ij();
    assert!(m >= 0 && t >= 0 && m <= -1 - a);
    let c_power = ((1 - a - m) / 2) as u32;
    if parity(a + m) == 0 {
        return Coeff::zero(c_power);
    }
    let w = (1 - a - m) / 2;
    let mut numerator = LaurentPoly::zero();
    for k in 1..=(1 - a) {
        let binom = ctx.q_binom_i(1 - a, k);
        for d in 0..k {
            for m_prime in 0..=m {
                for l in enumerate_lp(m, m_prime, k, d, a) {
                    for s in enumerate_sp(m, m_prime, k, t, d, a) {
                        let nv = nvector(&l, &s, k, d, t, ctx);
                        let summand = sigma_term(&l, &s, k, d, t, m_prime, &nv, ctx);
                        numerator += &sign(k % 2 == 0, &binom * &summand);
                    }
                }
            }
        }
    }
    let den = &ctx.qi_minus_inv().pow(w as u32) * &ctx.qj_minus_inv();
    Coeff::new(c_power, RatFunc::new(numerator, den))
}

/// One `(k, d, m', l, s)` summand of [`sigma_case2`], without the sign and
/// binomial and before division by the global denominator.
#[allow(clippy::too_many_arguments)]
fn sigma_term(
    l: &BinaryTuple,
    s: &BinaryTuple,
    k: i64,
    d: i64,
    t: i64,
    m_prime: i64,
    nv: &NVector,
    ctx: &QContext,
) -> LaurentPoly {
    let a = ctx.a_ij();
    let big_t = nv.t as i64;
    let n0 = nv.entries[0];

    // κ exponent
    let mut kappa = 0i64;
    for r in 1..=(-a) {
        let weight = l.get(r) + (1 - l.get(r)) * (1 - s_slot(l, s, r));
        kappa -= 2 * zeta(l, s, r - 1) * weight;
    }
    let n_1_tp1: i64 = nv.entries[1..].iter().sum();
    kappa += -a * (n0 - n_1_tp1 - m_prime + d) + 2 * (k + t - d - 1);

    // residual alpha product over R_{k,d}
    let mut residual = LaurentPoly::one();
    for (idx, &r) in nv.r_set.iter().enumerate() {
        if l.get(r) == 0 && s_slot(l, s, r) == 0 {
            residual *= &alpha_coeff(zeta(l, s, r - 1) - nv.nu[idx], ctx);
            if residual.is_zero() {
                return LaurentPoly::zero();
            }
        }
    }

    let zeta_kd = zeta(l, s, 1 - a - k + d);
    let bracket = if big_t == 0 {
        // [α_{ζ^{(1-a-k+d)}} - q_i^a (q_i^a α_{N_0} + γ_{N_0, N_0+N_1})]
        let inner = &(&ctx.qi_pow(a) * &alpha_coeff(n0, ctx))
            + &gamma_coeff(n0, n0 + nv.entries[1], ctx);
        &alpha_coeff(zeta_kd, ctx) - &(&ctx.qi_pow(a) * &inner)
    } else {
        // Σ_u q_i^{au} ω_{N^{(0)},u} + Σ_u q_i^{au} ω_{N^{(1)},u}
        let mut total = LaurentPoly::zero();
        let alpha_zeta = alpha_coeff(zeta_kd, ctx);
        let mut alpha_run = LaurentPoly::one(); // Π_{r=0}^{u-1} α_{N_0 - r}
        for u in 0..=big_t {
            if u >= nv.xi0.max(0) && u < big_t {
                let gam = gamma_coeff(n0 - u, nv.prefix_sum(nv.t) - (big_t - 1), ctx);
                let mix = &(&ctx.qi_pow(a) * &alpha_coeff(n0 - u, ctx)) + &gam;
                total += &(&(&(&ctx.qi_pow(a * u) * &alpha_zeta)
                    * &cab_coefficient(u, big_t - 1, nv, ctx))
                    * &(&mix * &alpha_run));
            }
            if u >= nv.xi1.max(0) {
                let gam = gamma_coeff(n0 - u, nv.prefix_sum(nv.t + 1) - big_t, ctx);
                let mix = &(&ctx.qi_pow(a) * &alpha_coeff(n0 - u, ctx)) + &gam;
                total -= &(&(&(&ctx.qi_pow(a * u + a) * &cab_coefficient(u, big_t, nv, ctx))
                    * &mix)
                    * &alpha_run);
            }
            alpha_run *= &alpha_coeff(n0 - u, ctx);
        }
        total
    };

    &(&ctx.qi_pow(kappa) * &residual) * &bracket
}

/// The two swapped-pair coefficients: the factors multiplying
/// `B_i^{-a} Z_i` (grade in `c_i`) and `B_i^{-a} Z_j` (grade in `c_j`).
pub fn c_tau_coefficients(ctx: &QContext) -> (Coeff, Coeff) {
    let a = ctx.a_ij();
    let denom = ctx.qi_minus_inv().pow(2);
    let zi = RatFunc::new(
        -&(&ctx.qi_pow(a - 1) * &q_pochhammer(2 * ctx.eps_i(), 1 - a)),
        denom.clone(),
    );
    let zj = RatFunc::new(
        -&(&ctx.qi_pow(1) * &q_pochhammer(-2 * ctx.eps_i(), 1 - a)),
        denom,
    );
    (Coeff::new(1, zi), Coeff::new(1, zj))
}

/// Assembles the complete relation table for the requested case. The split
/// case folds the sign `(-1)^w` of `Z_i = -1` into the coefficients; the
/// classical case delegates to the integer coefficients of the specialized
/// relation.
pub fn assemble_relation(case_tag: CaseTag, ctx: &QContext) -> RelationTable {
    let a = ctx.a_ij();
    let mut table = RelationTable {
        ctx: *ctx,
        case_tag,
        terms: BTreeMap::new(),
    };
    match case_tag {
        CaseTag::Case1 | CaseTag::Split => {
            for m in 0..=(-1 - a).max(-1) {
                for m_prime in 0..=(-1 - a - m) {
                    if parity(a + m + m_prime) == 0 {
                        continue;
                    }
                    let w = (1 - a - m - m_prime) / 2;
                    let mut coeff = rho_case1_projection(m, m_prime, ctx);
                    let z_power;
                    if case_tag == CaseTag::Split {
                        if w % 2 == 1 {
                            coeff = coeff.neg();
                        }
                        z_power = 0;
                    } else {
                        z_power = w as u32;
                    }
                    table.insert(
                        TermShape::Zbb {
                            m: m as u32,
                            m_prime: m_prime as u32,
                            z_power,
                        },
                        coeff,
                    );
                }
            }
        }
        CaseTag::Case2 => {
            for m in 0..=(-1 - a).max(-1) {
                for m_prime in 0..=(-1 - a - m) {
                    if parity(a + m + m_prime) == 0 {
                        continue;
                    }
                    let w = (1 - a - m - m_prime) / 2;
                    for t in 0..=w {
                        table.insert(
                            TermShape::Zbbz {
                                m: m as u32,
                                m_prime: m_prime as u32,
                                t: t as u32,
                                z_power: w as u32,
                            },
                            rho_case2(m, m_prime, t, ctx),
                        );
                    }
                }
            }
            for m in 0..=(-1 - a).max(-1) {
                if parity(a + m) == 0 {
                    continue;
                }
                let w = (-1 - a - m) / 2;
                for t in 0..=w {
                    table.insert(
                        TermShape::Zwkzb {
                            m: m as u32,
                            t: t as u32,
                            z_power: w as u32,
                        },
                        sigma_case2(m, t, ctx),
                    );
                }
            }
        }
        CaseTag::Tau => {
            let (zi, zj) = c_tau_coefficients(ctx);
            table.insert(
                TermShape::BzTau {
                    power: (-a) as u32,
                    slot: TauSlot::Zi,
                },
                zi,
            );
            table.insert(
                TermShape::BzTau {
                    power: (-a) as u32,
                    slot: TauSlot::Zj,
                },
                zj,
            );
        }
        CaseTag::Classical => {
            let rel = crate::onsager::classical_relation(a);
            for ((m, m_prime), v) in &rel.terms {
                table.insert(
                    TermShape::Zbb {
                        m: *m,
                        m_prime: *m_prime,
                        z_power: 0,
                    },
                    Coeff::new(
                        0,
                        RatFunc::constant(BigRational::from_integer(v.clone())),
                    ),
                );
            }
        }
    }
    table
}

/// Checks `ρ_{m,m'} == (-1)^{1-a} ρ_{m',m}` on every stored term of a
/// first-case or split table.
pub fn check_symmetry(table: &RelationTable) -> bool {
    assert!(
        matches!(table.case_tag, CaseTag::Case1 | CaseTag::Split),
        "symmetry applies to first-case and split tables"
    );
    let a = table.ctx.a_ij();
    let flip = (1 - a).rem_euclid(2) == 1;
    for (shape, coeff) in &table.terms {
        let TermShape::Zbb { m, m_prime, z_power } = shape else {
            return false;
        };
        let mirror = TermShape::Zbb {
            m: *m_prime,
            m_prime: *m,
            z_power: *z_power,
        };
        let Some(other) = table.coeff(&mirror) else {
            return false;
        };
        let expect = if flip { other.neg() } else { other.clone() };
        if coeff != &expect {
            return false;
        }
    }
    true
}
