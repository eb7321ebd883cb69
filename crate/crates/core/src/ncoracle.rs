//! Brute-force verification path: free noncommutative polynomials over the
//! two-index quantum-group fragment `{E_i, F_i, K_i^{±1}, E_j, F_j, K_j^{±1}}`,
//! normal ordering by the defining relations, and extraction of the pure
//! Cartan coefficient. Every structure constant can be recomputed from here
//! without touching the closed forms.
//!
//! The rewriting moves all `K`-letters to the right (picking up `q`-power
//! factors) and then straightens `F·E` adjacencies with
//! `F_b E_a = E_a F_b - δ_ab (K_a - K_a^{-1})/(q_a - q_a^{-1})`,
//! leftmost-innermost. Each swap strictly reduces the number of `(F, E)`
//! inversions plus the letter count, so the process terminates, and all
//! rewrites are identities in the algebra, so the result is
//! strategy-independent.

use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::{s_slot, BinaryTuple};
use crate::qring::{Coeff, LaurentPoly, QContext, RatFunc};

/// Which of the two indices a generator carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Idx {
    I,
    J,
}

/// A generator letter of the free alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E(Idx),
    F(Idx),
    KPlus(Idx),
    KMinus(Idx),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, idx) = match self {
            Letter::E(x) => ("E", x),
            Letter::F(x) => ("F", x),
            Letter::KPlus(x) => ("K+", x),
            Letter::KMinus(x) => ("K-", x),
        };
        let idx = match idx {
            Idx::I => "i",
            Idx::J => "j",
        };
        // Ei, Fj, Ki+, Kj-
        match self {
            Letter::E(_) | Letter::F(_) => write!(f, "{}{}", &name[..1], idx),
            Letter::KPlus(_) => write!(f, "K{idx}+"),
            Letter::KMinus(_) => write!(f, "K{idx}-"),
        }
    }
}

/// A word in the free monoid on the generator alphabet. The empty word is
/// the multiplicative identity.
pub type NCWord = Vec<Letter>;

/// Debug rendering of a word, e.g. "Fi Kj- Ei Ki-".
pub fn render_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A noncommutative polynomial: a finite map from words to coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<NCWord, RatFunc>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Vec::new())
    }

    pub fn from_word(word: NCWord) -> Self {
        Self::from_term(word, RatFunc::one())
    }

    pub fn from_term(word: NCWord, coeff: RatFunc) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn add_term(&mut self, word: NCWord, coeff: RatFunc) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &RatFunc)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, by: &RatFunc) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * by);
        }
        out
    }

    /// Word-concatenation product, extended bilinearly.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }
}

/// Key of a standard-ordered term: `E`-letters, then `F`-letters, then the
/// two Cartan exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StdKey {
    pub e_word: Vec<Letter>,
    pub f_word: Vec<Letter>,
    pub k_exp_i: i64,
    pub k_exp_j: i64,
}

/// A polynomial in standard ordering: all `E`-letters left of all
/// `F`-letters, all Cartan content collected into the two exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StandardForm {
    terms: BTreeMap<StdKey, RatFunc>,
}

impl StandardForm {
    pub fn terms(&self) -> impl Iterator<Item = (&StdKey, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &StdKey) -> RatFunc {
        self.terms.get(key).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Coefficient of the pure Cartan term `K_i^{nI} K_j^{nJ}`.
    pub fn pure_k_coeff(&self, n_i: i64, n_j: i64) -> RatFunc {
        self.coeff(&StdKey {
            e_word: Vec::new(),
            f_word: Vec::new(),
            k_exp_i: n_i,
            k_exp_j: n_j,
        })
    }

    /// Expands back into a free polynomial (E-word, F-word, then K-letters).
    pub fn to_ncpoly(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (key, c) in &self.terms {
            let mut word = key.e_word.clone();
            word.extend_from_slice(&key.f_word);
            push_k_letters(&mut word, Idx::I, key.k_exp_i);
            push_k_letters(&mut word, Idx::J, key.k_exp_j);
            out.add_term(word, c.clone());
        }
        out
    }
}

fn push_k_letters(word: &mut NCWord, idx: Idx, exp: i64) {
    let letter = if exp >= 0 {
        Letter::KPlus(idx)
    } else {
        Letter::KMinus(idx)
    };
    for _ in 0..exp.abs() {
        word.push(letter);
    }
}

/// Internal coefficient during rewriting: a Laurent polynomial divided by
/// fixed powers of `(q_i - q_i^{-1})` and `(q_j - q_j^{-1})`. Keeping the
/// denominators symbolic avoids a gcd per rewrite step.
#[derive(Clone, Debug)]
struct Scaled {
    poly: LaurentPoly,
    di: u32,
    dj: u32,
}

impl Scaled {
    fn one() -> Self {
        Self {
            poly: LaurentPoly::one(),
            di: 0,
            dj: 0,
        }
    }

    fn mul_q_power(&mut self, e: i64) {
        self.poly = &self.poly * &LaurentPoly::q_power(e);
    }

    fn add_assign(&mut self, other: &Scaled, ctx: &QContext) {
        let di = self.di.max(other.di);
        let dj = self.dj.max(other.dj);
        let lift = |s: &Scaled| {
            let mut p = s.poly.clone();
            if di > s.di {
                p = &p * &ctx.qi_minus_inv().pow(di - s.di);
            }
            if dj > s.dj {
                p = &p * &ctx.qj_minus_inv().pow(dj - s.dj);
            }
            p
        };
        self.poly = &lift(self) + &lift(other);
        self.di = di;
        self.dj = dj;
    }

    fn to_ratfunc(&self, ctx: &QContext) -> RatFunc {
        let den = &ctx.qi_minus_inv().pow(self.di) * &ctx.qj_minus_inv().pow(self.dj);
        RatFunc::new(self.poly.clone(), den)
    }
}

fn eps(ctx: &QContext, idx: Idx) -> i64 {
    match idx {
        Idx::I => ctx.eps_i(),
        Idx::J => ctx.eps_j(),
    }
}

fn cartan(ctx: &QContext, a: Idx, b: Idx) -> i64 {
    match (a, b) {
        (Idx::I, Idx::I) | (Idx::J, Idx::J) => 2,
        (Idx::I, Idx::J) => ctx.a_ij(),
        (Idx::J, Idx::I) => ctx.a_ji(),
    }
}

/// The factor picked up by `K_a^{sign}` moving right across one letter
/// (`E_b`: `q_a^{sign·a_ab}`, `F_b`: `q_a^{-sign·a_ab}`, `K`: none),
/// as an exponent of `q`.
fn k_crossing_exp(ctx: &QContext, a: Idx, sign: i64, letter: Letter) -> i64 {
    match letter {
        Letter::E(b) => sign * eps(ctx, a) * cartan(ctx, a, b),
        Letter::F(b) => -sign * eps(ctx, a) * cartan(ctx, a, b),
        _ => 0,
    }
}

/// One term mid-rewrite: the K-letters have already been swept out into the
/// two exponents; `ef` holds only `E`/`F` letters.
struct PendingTerm {
    coeff: Scaled,
    ef: Vec<Letter>,
    k_i: i64,
    k_j: i64,
}

/// Sweeps all K-letters of `word` to the right, returning the E/F letters
/// in order, the collected exponents, and the q-power exponent picked up.
fn sweep_k(ctx: &QContext, word: &[Letter]) -> (Vec<Letter>, i64, i64, i64) {
    let mut ef = Vec::with_capacity(word.len());
    let mut k_i = 0i64;
    let mut k_j = 0i64;
    let mut q_exp = 0i64;
    for (p, letter) in word.iter().enumerate() {
        let (idx, sign) = match letter {
            Letter::KPlus(x) => (*x, 1),
            Letter::KMinus(x) => (*x, -1),
            other => {
                ef.push(*other);
                continue;
            }
        };
        for later in &word[p + 1..] {
            q_exp += k_crossing_exp(ctx, idx, sign, *later);
        }
        match idx {
            Idx::I => k_i += sign,
            Idx::J => k_j += sign,
        }
    }
    (ef, k_i, k_j, q_exp)
}

/// Normal-orders a single word (coefficient 1) into standard form with
/// `Scaled` coefficients.
fn normal_order_word(ctx: &QContext, word: &[Letter]) -> BTreeMap<StdKey, Scaled> {
    let mut out: BTreeMap<StdKey, Scaled> = BTreeMap::new();
    let (ef, k_i, k_j, q_exp) = sweep_k(ctx, word);
    let mut start = Scaled::one();
    start.mul_q_power(q_exp);
    let mut work = vec![PendingTerm {
        coeff: start,
        ef,
        k_i,
        k_j,
    }];

    while let Some(term) = work.pop() {
        // leftmost F·E adjacency
        let pos = term
            .ef
            .windows(2)
            .position(|w| matches!((w[0], w[1]), (Letter::F(_), Letter::E(_))));
        let Some(p) = pos else {
            // word is E* F*: split and merge
            let split = term.ef.iter().position(|l| matches!(l, Letter::F(_)));
            let (e_word, f_word) = match split {
                Some(s) => (term.ef[..s].to_vec(), term.ef[s..].to_vec()),
                None => (term.ef.clone(), Vec::new()),
            };
            let key = StdKey {
                e_word,
                f_word,
                k_exp_i: term.k_i,
                k_exp_j: term.k_j,
            };
            match out.get_mut(&key) {
                Some(acc) => acc.add_assign(&term.coeff, ctx),
                None => {
                    out.insert(key, term.coeff);
                }
            }
            continue;
        };

        let (Letter::F(b), Letter::E(a)) = (term.ef[p], term.ef[p + 1]) else {
            unreachable!()
        };

        // swapped term: F_b E_a -> E_a F_b
        let mut swapped = term.ef.clone();
        swapped.swap(p, p + 1);
        work.push(PendingTerm {
            coeff: term.coeff.clone(),
            ef: swapped,
            k_i: term.k_i,
            k_j: term.k_j,
        });

        if a == b {
            // -(K_a - K_a^{-1})/(q_a - q_a^{-1}): the inserted K passes over
            // the rest of the word on its way out.
            let mut rest = term.ef.clone();
            rest.drain(p..=p + 1);
            for sign in [1i64, -1] {
                let mut coeff = term.coeff.clone();
                match a {
                    Idx::I => coeff.di += 1,
                    Idx::J => coeff.dj += 1,
                }
                // sign of the generated term: -K_a, +K_a^{-1}
                if sign == 1 {
                    coeff.poly = -&coeff.poly;
                }
                let mut crossing = 0i64;
                for later in &rest[p..] {
                    crossing += k_crossing_exp(ctx, a, sign, *later);
                }
                coeff.mul_q_power(crossing);
                let (mut k_i, mut k_j) = (term.k_i, term.k_j);
                match a {
                    Idx::I => k_i += sign,
                    Idx::J => k_j += sign,
                }
                work.push(PendingTerm {
                    coeff,
                    ef: rest.clone(),
                    k_i,
                    k_j,
                });
            }
        }
    }
    out
}

/// Rewrites a free polynomial into standard ordering: all `E`-letters before
/// all `F`-letters before all Cartan content. The result represents the same
/// algebra element.
pub fn normal_order(p: &NCPoly, ctx: &QContext) -> StandardForm {
    let mut out = StandardForm::default();
    for (word, c) in p.terms() {
        for (key, scaled) in normal_order_word(ctx, word) {
            let v = &scaled.to_ratfunc(ctx) * c;
            if v.is_zero() {
                continue;
            }
            let entry = out.terms.entry(key).or_insert_with(RatFunc::zero);
            *entry += &v;
        }
    }
    out.terms.retain(|_, c| !c.is_zero());
    out
}

/// Normal-orders `p` and extracts the coefficient of the pure Cartan term
/// `K_i^{nI} K_j^{nJ}` (the counit kills everything with surviving `E`/`F`
/// letters).
pub fn counit_project(p: &NCPoly, n_i: i64, n_j: i64, ctx: &QContext) -> RatFunc {
    let target = StdKey {
        e_word: Vec::new(),
        f_word: Vec::new(),
        k_exp_i: n_i,
        k_exp_j: n_j,
    };
    let mut total = RatFunc::zero();
    for (word, c) in p.terms() {
        let ordered = normal_order_word(ctx, word);
        if let Some(scaled) = ordered.get(&target) {
            total += &(&scaled.to_ratfunc(ctx) * c);
        }
    }
    total
}

/// The slot monomial: `K_i^{-1}` when `l_r = 1`, `F_i` when `l_r = 0` and the
/// s-slot is 1, `E_i K_i^{-1}` when both are 0.
fn slot_letters(l: &BinaryTuple, s: &BinaryTuple, r: i64) -> Vec<Letter> {
    if l.get(r) == 1 {
        vec![Letter::KMinus(Idx::I)]
    } else if s_slot(l, s, r) == 1 {
        vec![Letter::F(Idx::I)]
    } else {
        vec![Letter::E(Idx::I), Letter::KMinus(Idx::I)]
    }
}

/// The first-case monomial: slots `1..=1-a-k`, then `K_j^{-1}`, then slots
/// `2-a-k..=1-a`.
pub fn build_p(l: &BinaryTuple, s: &BinaryTuple, k: i64, ctx: &QContext) -> NCPoly {
    let a = ctx.a_ij();
    assert_eq!(l.len() as i64, 1 - a, "l must have length 1 - a_ij");
    assert_eq!(
        s.len() as i64,
        1 - a - l.weight(),
        "s must have length 1 - a_ij - |l|"
    );
    assert!((0..=1 - a).contains(&k));
    let mut word = Vec::new();
    for r in 1..=(1 - a - k) {
        word.extend(slot_letters(l, s, r));
    }
    word.push(Letter::KMinus(Idx::J));
    for r in (2 - a - k)..=(1 - a) {
        word.extend(slot_letters(l, s, r));
    }
    NCPoly::from_word(word)
}

/// The second-case two-term polynomial: slots with `F_j` inserted after
/// position `1-a-k` and the binomial `(E_j E_i - q_i^{a_ij} E_i E_j) K_i^{-1}`
/// after position `1-a-k+d`.
pub fn build_r(l: &BinaryTuple, s: &BinaryTuple, k: i64, d: i64, ctx: &QContext) -> NCPoly {
    let a = ctx.a_ij();
    assert_eq!(l.len() as i64, -a, "l must have length -a_ij");
    assert_eq!(
        s.len() as i64,
        -a - l.weight(),
        "s must have length -a_ij - |l|"
    );
    assert!((1..=1 - a).contains(&k) && (0..k).contains(&d));
    let mut prefix = Vec::new();
    for r in 1..=(1 - a - k) {
        prefix.extend(slot_letters(l, s, r));
    }
    prefix.push(Letter::F(Idx::J));
    for r in (2 - a - k)..=(1 - a - k + d) {
        prefix.extend(slot_letters(l, s, r));
    }
    let mut suffix = Vec::new();
    for r in (2 - a - k + d)..=(-a) {
        suffix.extend(slot_letters(l, s, r));
    }

    let mut word0 = prefix.clone();
    word0.extend([Letter::E(Idx::J), Letter::E(Idx::I), Letter::KMinus(Idx::I)]);
    word0.extend_from_slice(&suffix);

    let mut word1 = prefix;
    word1.extend([Letter::E(Idx::I), Letter::E(Idx::J), Letter::KMinus(Idx::I)]);
    word1.extend_from_slice(&suffix);

    let mut p = NCPoly::from_word(word0);
    p.add_term(word1, RatFunc::from_laurent(-&ctx.qi_pow(a)));
    p
}

fn parity(n: i64) -> i64 {
    n.rem_euclid(2)
}

fn sign_of_k(k: i64) -> RatFunc {
    // (-1)^{k+1}
    if k % 2 == 0 {
        RatFunc::from_int(-1)
    } else {
        RatFunc::one()
    }
}

/// Recomputes the first-case structure constant `ρ_{m,m'}` through the
/// counit-projection of the raw monomials. The pure Cartan target is
/// `(K_i^{-(1-a_ij)}, K_j^{-1})`, which the projection singles out.
pub fn oracle_rho_case1(m: i64, m_prime: i64, ctx: &QContext) -> Coeff {
    let a = ctx.a_ij();
    let c_power = ((1 - a - m - m_prime).max(0) / 2) as u32;
    if parity(a + m + m_prime) == 0 {
        return Coeff::zero(c_power);
    }
    let mut total = RatFunc::zero();
    for k in m_prime..=(1 - a - m) {
        let binom = RatFunc::from_laurent(ctx.q_binom_i(1 - a, k));
        for l in crate::combinat::enumerate_l(m, m_prime, k, a) {
            for s in crate::combinat::enumerate_s_case1(m, m_prime, a) {
                let p = build_p(&l, &s, k, ctx);
                let proj = counit_project(&p, -(1 - a), -1, ctx);
                total += &(&(&sign_of_k(k) * &binom) * &proj);
            }
        }
    }
    Coeff::new(c_power, total)
}

/// As [`oracle_rho_case1`] with the t-refined tuple set.
pub fn oracle_rho_case2(m: i64, m_prime: i64, t: i64, ctx: &QContext) -> Coeff {
    let a = ctx.a_ij();
    let c_power = ((1 - a - m - m_prime).max(0) / 2) as u32;
    if parity(a + m + m_prime) == 0 {
        return Coeff::zero(c_power);
    }
    let mut total = RatFunc::zero();
    for k in m_prime..=(1 - a - m) {
        let binom = RatFunc::from_laurent(ctx.q_binom_i(1 - a, k));
        for l in crate::combinat::enumerate_l(m, m_prime, k, a) {
            for s in crate::combinat::enumerate_s_case2(m, m_prime, k, t, a) {
                let p = build_p(&l, &s, k, ctx);
                let proj = counit_project(&p, -(1 - a), -1, ctx);
                total += &(&(&sign_of_k(k) * &binom) * &proj);
            }
        }
    }
    Coeff::new(c_power, total)
}

/// Recomputes the second-case structure constant `σ_{m,t}` through the
/// counit-projection of the two-term monomials.
pub fn oracle_sigma(m: i64, t: i64, ctx: &QContext) -> Coeff {
    let a = ctx.a_ij();
    let c_power = ((1 - a - m).max(0) / 2) as u32;
    if parity(a + m) == 0 {
        return Coeff::zero(c_power);
    }
    let mut total = RatFunc::zero();
    for k in 1..=(1 - a) {
        let binom = RatFunc::from_laurent(ctx.q_binom_i(1 - a, k));
        for d in 0..k {
            for m_prime in 0..=m {
                let twist = RatFunc::from_laurent(ctx.qi_pow(m_prime * a));
                for l in crate::combinat::enumerate_lp(m, m_prime, k, d, a) {
                    for s in crate::combinat::enumerate_sp(m, m_prime, k, t, d, a) {
                        let r = build_r(&l, &s, k, d, ctx);
                        let proj = counit_project(&r, -(1 - a), -1, ctx);
                        total += &(&(&(&sign_of_k(k) * &binom) * &twist) * &proj);
                    }
                }
            }
        }
    }
    Coeff::new(c_power, total)
}
