//! Laws of the brute-force path: the vanishing conditions for the projected
//! monomials, the level-product and two-term projection recursions, and
//! soundness of the rewriting itself.

use num::BigRational;
use proptest::prelude::*;

use qsp_core::combinat::BinaryTuple;
use qsp_core::ncoracle::{
    build_p, build_r, counit_project, normal_order, Idx, Letter, NCPoly,
};
use qsp_core::qring::{alpha_coeff, gamma_coeff, LaurentPoly, QContext, RatFunc};
use qsp_core::relations::cab_coefficient;

fn all_tuples(len: i64) -> Vec<BinaryTuple> {
    (0u64..(1u64 << len))
        .map(|m| BinaryTuple::from_mask(m, len as usize))
        .collect()
}

/// Violations of the balance/ballot conditions make the projection vanish:
/// (a) `a + |l|` even, (b) `|s| != (1-a-|l|)/2`, (c) some prefix of `s` has
/// more 0s than 1s.
fn condition_abc(a: i64, l: &BinaryTuple, s: &BinaryTuple) -> bool {
    if (a + l.weight()).rem_euclid(2) == 0 {
        return true;
    }
    if 2 * s.weight() != 1 - a - l.weight() {
        return true;
    }
    (1..=s.len() as i64).any(|p| 2 * s.partial_sum(1, p) < p)
}

#[test]
fn vanishing_conditions_for_p_monomials() {
    for a in -4..=-1i64 {
        let ctx = QContext::symmetric(a);
        for l in all_tuples(1 - a) {
            if l.weight() == 1 - a {
                continue;
            }
            for s in all_tuples(1 - a - l.weight()) {
                if !condition_abc(a, &l, &s) {
                    continue;
                }
                for k in 0..=(1 - a) {
                    let p = build_p(&l, &s, k, &ctx);
                    assert!(
                        counit_project(&p, -(1 - a), -1, &ctx).is_zero(),
                        "a={a} l={} s={} k={k}",
                        l.render(),
                        s.render()
                    );
                }
            }
        }
    }
}

#[test]
fn vanishing_conditions_for_r_monomials() {
    // conditions (a)-(c) as above, plus (d) a touching prefix at or after the
    // binomial insertion point and (e) an empty prefix there
    for a in -4..=-1i64 {
        let ctx = QContext::symmetric(a);
        for l in all_tuples(-a) {
            for s in all_tuples(-a - l.weight()) {
                for k in 1..=(1 - a) {
                    for d in 0..k {
                        let cut = 1 - a - k + d - l.partial_sum(1, 1 - a - k + d);
                        let cond_d = (cut..=(-a - l.weight()))
                            .any(|p| p >= 1 && 2 * s.partial_sum(1, p) == p);
                        let cond_e = s.partial_sum(1, cut) == 0;
                        if !(condition_abc(a, &l, &s) || cond_d || cond_e) {
                            continue;
                        }
                        let r = build_r(&l, &s, k, d, &ctx);
                        assert!(
                            counit_project(&r, -(1 - a), -1, &ctx).is_zero(),
                            "a={a} l={} s={} k={k} d={d}",
                            l.render(),
                            s.render()
                        );
                    }
                }
            }
        }
    }
}

/// Builds the balanced word encoded by a 0/1 pattern (1 -> F_i,
/// 0 -> (q_i - q_i^{-1}) E_i) as a one-term polynomial.
fn balanced_word(pattern: &BinaryTuple, ctx: &QContext) -> NCPoly {
    let mut word = Vec::new();
    let mut tilde_count = 0u32;
    for p in 1..=(pattern.len() as i64) {
        if pattern.get(p) == 1 {
            word.push(Letter::F(Idx::I));
        } else {
            word.push(Letter::E(Idx::I));
            tilde_count += 1;
        }
    }
    NCPoly::from_term(
        word,
        RatFunc::from_laurent(ctx.qi_minus_inv().pow(tilde_count)),
    )
}

#[test]
fn level_product_law_on_balanced_words() {
    // over all ballot patterns of half-length <= 5 and several contexts:
    // the projection is the product over E-positions of
    // (ζ^{(p-1)})_{q_i^2} q_i^{-2ζ^{(p-1)}+2}
    let contexts = [
        QContext::new(-1, -1, 1, 1).unwrap(),
        QContext::new(-1, -1, 2, 2).unwrap(),
        QContext::new(-2, -2, 3, 3).unwrap(),
        QContext::new(-2, -1, 1, 2).unwrap(),
        QContext::new(-3, -3, 1, 1).unwrap(),
        QContext::new(-3, -1, 1, 3).unwrap(),
        QContext::new(-4, -2, 1, 2).unwrap(),
        QContext::new(-5, -5, 2, 2).unwrap(),
    ];
    let mut cases = 0usize;
    for m in 0..=5i64 {
        let len = 2 * m;
        for pattern in all_tuples(len) {
            if 2 * pattern.weight() != len {
                continue;
            }
            if (1..=len).any(|p| 2 * pattern.partial_sum(1, p) < p) {
                continue;
            }
            for ctx in &contexts {
                let y = balanced_word(&pattern, ctx);
                let projected = counit_project(&y, -m, 0, ctx);
                let mut expected = LaurentPoly::one();
                for p in 1..=len {
                    if pattern.get(p) == 0 {
                        let zeta = 2 * pattern.partial_sum(1, p - 1) - (p - 1);
                        expected = &expected * &alpha_coeff(zeta, ctx);
                    }
                }
                assert_eq!(
                    projected,
                    RatFunc::from_laurent(expected),
                    "pattern = {}",
                    pattern.render()
                );
                cases += 1;
            }
        }
    }
    assert!(cases >= 500, "only {cases} cases exercised");
}

// Words over {F_i, Ẽ_i, Ẽ_j, F_j} are encoded as 0/1/2/3 in the recursion
// tests below; the Ẽ letters carry their (q - q^{-1}) normalization.

fn repeat(code: u8, n: i64) -> Vec<u8> {
    vec![code; n as usize]
}

#[test]
fn two_term_projection_recursion() {
    // Y = F^{N0} F_j F^{N1} Ẽ_i X splits as
    // α_{N0}·(F^{N0-1} F_j F^{N1} X) + γ_{N0,N0+N1}·(F^{N0} F_j F^{N1-1} X)
    for ctx in [QContext::symmetric(-2), QContext::new(-2, -1, 1, 2).unwrap()] {
        let mut checked = 0usize;
        for n0 in 0..=3i64 {
            for n1 in 0..=3i64 {
                for xlen in 0..=4usize {
                    for mask in 0..3usize.pow(xlen as u32) {
                        let mut x = Vec::with_capacity(xlen);
                        let mut v = mask;
                        for _ in 0..xlen {
                            x.push((v % 3) as u8);
                            v /= 3;
                        }
                        // exactly one Ẽ_j in X; i-letters balance the word
                        if x.iter().filter(|&&c| c == 2).count() != 1 {
                            continue;
                        }
                        let fx = x.iter().filter(|&&c| c == 0).count() as i64;
                        let ex = x.iter().filter(|&&c| c == 1).count() as i64;
                        let m = n0 + n1 + fx;
                        if m != 1 + ex {
                            continue;
                        }
                        let mut y = repeat(0, n0);
                        y.push(3); // F_j
                        y.extend(repeat(0, n1));
                        y.push(1);
                        y.extend(x.iter().copied());

                        // assemble with the F_j marker
                        let build = |codes: &[u8]| {
                            let mut word = Vec::new();
                            let mut scale = LaurentPoly::one();
                            for &c in codes {
                                match c {
                                    0 => word.push(Letter::F(Idx::I)),
                                    1 => {
                                        word.push(Letter::E(Idx::I));
                                        scale = &scale * &ctx.qi_minus_inv();
                                    }
                                    2 => {
                                        word.push(Letter::E(Idx::J));
                                        scale = &scale * &ctx.qj_minus_inv();
                                    }
                                    3 => word.push(Letter::F(Idx::J)),
                                    _ => unreachable!(),
                                }
                            }
                            NCPoly::from_term(word, RatFunc::from_laurent(scale))
                        };

                        let lhs = counit_project(&build(&y), -m, -1, &ctx);

                        let mut rhs = RatFunc::zero();
                        if n0 >= 1 {
                            let mut y1 = repeat(0, n0 - 1);
                            y1.push(3);
                            y1.extend(repeat(0, n1));
                            y1.extend(x.iter().copied());
                            rhs += &(&RatFunc::from_laurent(alpha_coeff(n0, &ctx))
                                * &counit_project(&build(&y1), -(m - 1), -1, &ctx));
                        }
                        if n1 >= 1 {
                            let mut y2 = repeat(0, n0);
                            y2.push(3);
                            y2.extend(repeat(0, n1 - 1));
                            y2.extend(x.iter().copied());
                            rhs += &(&RatFunc::from_laurent(gamma_coeff(n0, n0 + n1, &ctx))
                                * &counit_project(&build(&y2), -(m - 1), -1, &ctx));
                        }
                        assert_eq!(lhs, rhs, "n0={n0} n1={n1} x={x:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked >= 90, "only {checked} configurations checked");
    }
}

#[test]
fn full_induction_coefficient_matches_direct_ordering() {
    // Y = F^{N0} F_j F^{N1} Ẽ ... F^{NT} Ẽ Ẽ_j X: the closed coefficient
    // υ_N relates the (i,j)-projection of Y to the i-projection of the
    // collapsed word F^{|N|_{0;T}-T} X.
    let ctx = QContext::symmetric(-2);
    let mut checked = 0usize;
    for t in 1..=3usize {
        let entries_count = t + 1;
        for mask in 0..3usize.pow(entries_count as u32) {
            let mut entries = Vec::with_capacity(entries_count);
            let mut v = mask;
            for _ in 0..entries_count {
                entries.push((v % 3) as i64);
                v /= 3;
            }
            let head: i64 = entries.iter().sum();
            if head < t as i64 {
                continue;
            }
            for x_f in 0..=1i64 {
                // balance: M = head + x_f = t + x_e
                let x_e = head + x_f - t as i64;
                if !(0..=2).contains(&x_e) {
                    continue;
                }
                let m = head + x_f;

                let mut codes = repeat(0, entries[0]);
                codes.push(3);
                for &n_b in &entries[1..] {
                    codes.extend(repeat(0, n_b));
                    codes.push(1);
                }
                codes.push(2);
                // X: Ẽ's then F's (any fixed shape works for the law)
                codes.extend(repeat(1, x_e));
                codes.extend(repeat(0, x_f));

                let build = |codes: &[u8]| {
                    let mut word = Vec::new();
                    let mut scale = LaurentPoly::one();
                    for &c in codes {
                        match c {
                            0 => word.push(Letter::F(Idx::I)),
                            1 => {
                                word.push(Letter::E(Idx::I));
                                scale = &scale * &ctx.qi_minus_inv();
                            }
                            2 => {
                                word.push(Letter::E(Idx::J));
                                scale = &scale * &ctx.qj_minus_inv();
                            }
                            3 => word.push(Letter::F(Idx::J)),
                            _ => unreachable!(),
                        }
                    }
                    NCPoly::from_term(word, RatFunc::from_laurent(scale))
                };

                let lhs = counit_project(&build(&codes), -m, -1, &ctx);

                // υ_N from the closed pieces
                let nv = qsp_core::combinat::NVector {
                    t,
                    entries: {
                        let mut e = entries.clone();
                        e.push(0);
                        e
                    },
                    xi0: 0,
                    xi1: 0,
                    r_set: vec![],
                    nu: vec![],
                };
                let n0 = entries[0];
                let tail: i64 = entries[1..].iter().sum();
                let a = ctx.a_ij();
                let mut upsilon = LaurentPoly::zero();
                let mut alpha_run = LaurentPoly::one();
                for u in 0..=(t as i64 - 1) {
                    if u >= (t as i64 - tail - 1).max(0) {
                        let gam =
                            gamma_coeff(n0 - u, (n0 + tail) - (t as i64 - 1), &ctx);
                        let mix = &(&ctx.qi_pow(a) * &alpha_coeff(n0 - u, &ctx)) + &gam;
                        let c = cab_coefficient(u, t as i64 - 1, &nv, &ctx);
                        upsilon += &(&(&(&ctx.qi_pow(-a * (n0 - u)) * &c) * &mix) * &alpha_run);
                    }
                    alpha_run = &alpha_run * &alpha_coeff(n0 - u, &ctx);
                }

                let mut collapsed = repeat(0, head - t as i64);
                collapsed.extend(repeat(1, x_e));
                collapsed.extend(repeat(0, x_f));
                let rhs = &RatFunc::from_laurent(upsilon)
                    * &counit_project(&build(&collapsed), -(m - t as i64), 0, &ctx);

                assert_eq!(lhs, rhs, "t={t} entries={entries:?} x_f={x_f}");
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "only {checked} configurations checked");
}

fn arb_letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::E(Idx::I)),
        Just(Letter::E(Idx::J)),
        Just(Letter::F(Idx::I)),
        Just(Letter::F(Idx::J)),
        Just(Letter::KPlus(Idx::I)),
        Just(Letter::KMinus(Idx::I)),
        Just(Letter::KPlus(Idx::J)),
        Just(Letter::KMinus(Idx::J)),
    ]
}

fn arb_poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec(
        (prop::collection::vec(arb_letter(), 0..4), -3i64..4),
        1..3,
    )
    .prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (word, c) in terms {
            p.add_term(
                word,
                RatFunc::constant(BigRational::from_integer(c.into())),
            );
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // normal_order is a homomorphism onto the straightened representation
    #[test]
    fn normal_order_is_sound(p in arb_poly(), r in arb_poly()) {
        let ctx = QContext::new(-2, -1, 1, 2).unwrap();
        let direct = normal_order(&p.mul(&r), &ctx);
        let staged = normal_order(
            &normal_order(&p, &ctx).to_ncpoly().mul(&normal_order(&r, &ctx).to_ncpoly()),
            &ctx,
        );
        prop_assert_eq!(direct, staged);
    }
}
