//! Property tests for the exact-arithmetic layer.

use num::BigRational;
use proptest::prelude::*;

use qsp_core::qring::{q_binomial, q_integer, q_modified_square, LaurentPoly, QContext, RatFunc};

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::btree_map(-6i64..7, -9i64..10, 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p += &LaurentPoly::monomial(e, BigRational::from_integer(c.into()));
        }
        p
    })
}

fn arb_nonzero() -> impl Strategy<Value = LaurentPoly> {
    arb_laurent().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ratfunc_recip_is_inverse(a in arb_nonzero(), b in arb_nonzero()) {
        let f = RatFunc::new(a, b);
        let g = f.recip().unwrap();
        prop_assert!((&f * &g).is_one());
    }

    #[test]
    fn normalization_is_idempotent(a in arb_laurent(), b in arb_nonzero()) {
        let f = RatFunc::new(a, b);
        let again = RatFunc::new(f.numerator().clone(), f.denominator().clone());
        prop_assert_eq!(f, again);
    }

    #[test]
    fn addition_matches_evaluation(a in arb_laurent(), b in arb_nonzero(),
                                   c in arb_laurent(), d in arb_nonzero()) {
        // structural arithmetic agrees with evaluation at a generic point
        // (q = 3), whenever no denominator vanishes there
        let three = BigRational::from_integer(3.into());
        let eval = |p: &LaurentPoly| -> Option<BigRational> {
            let mut acc = BigRational::from_integer(0.into());
            for (e, coeff) in p.iter() {
                let mut term = coeff.clone();
                let pw = if *e >= 0 { three.clone() } else { three.recip() };
                for _ in 0..e.unsigned_abs() {
                    term *= &pw;
                }
                acc += term;
            }
            Some(acc)
        };
        let f = RatFunc::new(a, b);
        let g = RatFunc::new(c, d);
        let sum = &f + &g;
        let ev = |r: &RatFunc| -> Option<BigRational> {
            let den = eval(r.denominator())?;
            if den == BigRational::from_integer(0.into()) {
                return None;
            }
            Some(eval(r.numerator())? / den)
        };
        if let (Some(x), Some(y), Some(z)) = (ev(&f), ev(&g), ev(&sum)) {
            prop_assert_eq!(x + y, z);
        }
    }

    #[test]
    fn triples_round_trip(p in arb_laurent()) {
        prop_assert_eq!(LaurentPoly::from_triples(&p.to_triples()), p);
    }
}

#[test]
fn q_binomial_symmetry() {
    for scale in 1..=3i64 {
        for n in 0..=10i64 {
            for m in 0..=n {
                assert_eq!(
                    q_binomial(n, m, scale),
                    q_binomial(n, n - m, scale),
                    "n={n} m={m} scale={scale}"
                );
            }
        }
    }
}

#[test]
fn modified_square_matches_scaled_integer() {
    for eps in 1..=3i64 {
        let ctx = QContext::new(-1, -1, eps, eps).unwrap();
        for n in 1..=10i64 {
            assert_eq!(
                q_modified_square(n, &ctx),
                &ctx.qi_pow(n - 1) * &q_integer(n, eps)
            );
        }
    }
}
