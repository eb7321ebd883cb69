//! Cross-validation of the closed-form structure constants against the
//! brute-force normal-ordering oracle, and the scalar identities tying the
//! different closed forms together.

use qsp_core::ncoracle::{oracle_rho_case1, oracle_rho_case2, oracle_sigma};
use qsp_core::qring::QContext;
use qsp_core::relations::{
    check_symmetry, fij_free, nested_qcomm, rho_case1_projection, rho_case1_theta, rho_case2,
    sigma_case2, theta_constant, assemble_relation, CaseTag, FreeVar,
};

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

#[test]
fn rho_case1_three_way_agreement() {
    // projection == theta(0) == theta(1) == oracle, exactly
    for a in -3..=0i64 {
        let ctx = QContext::symmetric(a);
        for m in 0..=(-1 - a).max(-1) {
            for m_prime in 0..=(-1 - a - m) {
                let proj = rho_case1_projection(m, m_prime, &ctx);
                let t0 = rho_case1_theta(m, m_prime, 0, &ctx);
                let t1 = rho_case1_theta(m, m_prime, 1, &ctx);
                let orc = oracle_rho_case1(m, m_prime, &ctx);
                assert_eq!(proj, t0, "a={a} m={m} m'={m_prime}");
                assert_eq!(proj, t1, "a={a} m={m} m'={m_prime}");
                assert_eq!(proj, orc, "a={a} m={m} m'={m_prime}");
            }
        }
    }
}

#[test]
fn rho_case1_agreement_with_scaled_variable() {
    // a nontrivial symmetrizer exercises the q_i = q^{ε_i} scaling everywhere
    let ctx = QContext::new(-2, -1, 1, 2).unwrap();
    for m in 0..=1 {
        for m_prime in 0..=(1 - m) {
            let proj = rho_case1_projection(m, m_prime, &ctx);
            assert_eq!(proj, rho_case1_theta(m, m_prime, 0, &ctx));
            assert_eq!(proj, oracle_rho_case1(m, m_prime, &ctx));
        }
    }
    let ctx = QContext::new(-1, -2, 2, 1).unwrap();
    assert_eq!(
        rho_case1_projection(0, 0, &ctx),
        oracle_rho_case1(0, 0, &ctx)
    );
}

#[test]
fn rho_case2_oracle_agreement() {
    for a in -3..=0i64 {
        let ctx = QContext::symmetric(a);
        for m in 0..=(-1 - a).max(-1) {
            for m_prime in 0..=(-1 - a - m) {
                if !odd(a + m + m_prime) {
                    continue;
                }
                let w = (1 - a - m - m_prime) / 2;
                for t in 0..=w {
                    assert_eq!(
                        rho_case2(m, m_prime, t, &ctx),
                        oracle_rho_case2(m, m_prime, t, &ctx),
                        "a={a} m={m} m'={m_prime} t={t}"
                    );
                }
            }
        }
    }
}

#[test]
fn sigma_oracle_agreement() {
    for a in -3..=0i64 {
        let ctx = QContext::symmetric(a);
        for m in 0..=(-1 - a).max(-1) {
            if !odd(a + m) {
                continue;
            }
            for t in 0..=((-1 - a - m) / 2) {
                assert_eq!(
                    sigma_case2(m, t, &ctx),
                    oracle_sigma(m, t, &ctx),
                    "a={a} m={m} t={t}"
                );
            }
        }
    }
}

#[test]
fn sigma_oracle_agreement_mixed_symmetrizers() {
    // ε_i != ε_j exercises the q_j-dependence of σ
    let ctx = QContext::new(-2, -1, 1, 2).unwrap();
    for m in 0..=1 {
        if !odd(ctx.a_ij() + m) {
            continue;
        }
        for t in 0..=((-1 - ctx.a_ij() - m) / 2) {
            assert_eq!(sigma_case2(m, t, &ctx), oracle_sigma(m, t, &ctx));
        }
    }
    let ctx = QContext::new(-4, -2, 1, 2).unwrap();
    assert_eq!(sigma_case2(1, 0, &ctx), oracle_sigma(1, 0, &ctx));
}

#[test]
fn theta_variants_agree_to_minus_six() {
    for a in -6..=-1i64 {
        let ctx = QContext::symmetric(a);
        for m in 0..=(1 - a) {
            for m_prime in 0..=(1 - a - m) {
                if !odd(a + m + m_prime) {
                    continue;
                }
                assert_eq!(
                    theta_constant(m, m_prime, 0, &ctx),
                    theta_constant(m, m_prime, 1, &ctx),
                    "a={a} m={m} m'={m_prime}"
                );
            }
        }
    }
}

#[test]
fn t_collapse_to_minus_four() {
    // Σ_t ρ_{m,m',t} == ρ_{m,m'}
    for a in -4..=-1i64 {
        let ctx = QContext::symmetric(a);
        for m in 0..=(-1 - a) {
            for m_prime in 0..=(-1 - a - m) {
                if !odd(a + m + m_prime) {
                    continue;
                }
                let w = (1 - a - m - m_prime) / 2;
                let mut total = rho_case2(m, m_prime, 0, &ctx);
                for t in 1..=w {
                    total = total.add(&rho_case2(m, m_prime, t, &ctx));
                }
                assert_eq!(
                    total,
                    rho_case1_projection(m, m_prime, &ctx),
                    "a={a} m={m} m'={m_prime}"
                );
            }
        }
    }
}

#[test]
fn nested_qcomm_matches_serre_polynomial_to_minus_six() {
    for a in -6..=0i64 {
        let ctx = QContext::symmetric(a);
        assert_eq!(nested_qcomm(&ctx, FreeVar::A, FreeVar::B), fij_free(&ctx));
    }
}

#[test]
fn case1_symmetry_to_minus_six() {
    for a in -6..=-1i64 {
        let table = assemble_relation(CaseTag::Case1, &QContext::symmetric(a));
        assert!(check_symmetry(&table), "a = {a}");
        let split = assemble_relation(CaseTag::Split, &QContext::symmetric(a));
        assert!(check_symmetry(&split), "split a = {a}");
    }
}
