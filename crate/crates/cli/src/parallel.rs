//! Parallel table assembly: cells are computed by a rayon map and merged
//! into the canonical ordering, so the result is identical to the
//! sequential assembly regardless of worker count.

use rayon::prelude::*;

use qsp_core::qring::{Coeff, QContext};
use qsp_core::relations::{
    assemble_relation, rho_case1_projection, rho_case2, sigma_case2, CaseTag, RelationTable,
    TermShape,
};

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Same output as [`assemble_relation`], with the per-cell structure
/// constants fanned out to the current rayon pool.
pub fn assemble_parallel(case_tag: CaseTag, ctx: &QContext) -> RelationTable {
    let a = ctx.a_ij();
    let mut cells: Vec<TermShape> = Vec::new();
    match case_tag {
        CaseTag::Case1 | CaseTag::Split => {
            for m in 0..=(-1 - a).max(-1) {
                for m_prime in 0..=(-1 - a - m) {
                    if !odd(a + m + m_prime) {
                        continue;
                    }
                    let w = ((1 - a - m - m_prime) / 2) as u32;
                    cells.push(TermShape::Zbb {
                        m: m as u32,
                        m_prime: m_prime as u32,
                        z_power: if case_tag == CaseTag::Split { 0 } else { w },
                    });
                }
            }
        }
        CaseTag::Case2 => {
            for m in 0..=(-1 - a).max(-1) {
                for m_prime in 0..=(-1 - a - m) {
                    if !odd(a + m + m_prime) {
                        continue;
                    }
                    let w = ((1 - a - m - m_prime) / 2) as u32;
                    for t in 0..=w {
                        cells.push(TermShape::Zbbz {
                            m: m as u32,
                            m_prime: m_prime as u32,
                            t,
                            z_power: w,
                        });
                    }
                }
            }
            for m in 0..=(-1 - a).max(-1) {
                if !odd(a + m) {
                    continue;
                }
                let w = ((-1 - a - m) / 2) as u32;
                for t in 0..=w {
                    cells.push(TermShape::Zwkzb {
                        m: m as u32,
                        t,
                        z_power: w,
                    });
                }
            }
        }
        // the swapped-pair and classical tables are two-or-three cells
        CaseTag::Tau | CaseTag::Classical => return assemble_relation(case_tag, ctx),
    }

    let computed: Vec<(TermShape, Coeff)> = cells
        .into_par_iter()
        .map(|shape| {
            let coeff = match shape {
                TermShape::Zbb { m, m_prime, .. } => {
                    let mut c = rho_case1_projection(m as i64, m_prime as i64, ctx);
                    let w = (1 - a - m as i64 - m_prime as i64) / 2;
                    if case_tag == CaseTag::Split && w % 2 == 1 {
                        c = c.neg();
                    }
                    c
                }
                TermShape::Zbbz { m, m_prime, t, .. } => {
                    rho_case2(m as i64, m_prime as i64, t as i64, ctx)
                }
                TermShape::Zwkzb { m, t, .. } => sigma_case2(m as i64, t as i64, ctx),
                TermShape::BzTau { .. } => unreachable!(),
            };
            (shape, coeff)
        })
        .collect();

    let mut table = RelationTable {
        ctx: *ctx,
        case_tag,
        terms: Default::default(),
    };
    for (shape, coeff) in computed {
        if !coeff.is_zero() {
            table.terms.insert(shape, coeff);
        }
    }
    table
}
