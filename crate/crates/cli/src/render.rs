//! Rendering of assembled relations: human-readable text, canonical JSON
//! (sorted term shapes, normalized coefficients, round-trippable), and LaTeX
//! tables.

use anyhow::{anyhow, bail, Result};
use num::BigInt;
use serde_json::{json, Map, Value};

use qsp_core::qring::{Coeff, LaurentPoly, QContext, RatFunc};
use qsp_core::relations::{CaseTag, RelationTable, TauSlot, TermShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(format!("unknown format {other:?} (text, json, latex)")),
        }
    }
}

pub fn render(table: &RelationTable, format: Format) -> String {
    match format {
        Format::Text => render_text(table),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(table)).expect("JSON rendering");
            s.push('\n');
            s
        }
        Format::Latex => render_latex(table),
    }
}

fn case_str(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::Case1 => "case1",
        CaseTag::Case2 => "case2",
        CaseTag::Tau => "tau",
        CaseTag::Split => "split",
        CaseTag::Classical => "classical",
    }
}

fn case_from_str(s: &str) -> Result<CaseTag> {
    Ok(match s {
        "case1" => CaseTag::Case1,
        "case2" => CaseTag::Case2,
        "tau" => CaseTag::Tau,
        "split" => CaseTag::Split,
        "classical" => CaseTag::Classical,
        other => bail!("unknown case tag {other}"),
    })
}

fn kind_str(shape: &TermShape) -> &'static str {
    match shape {
        TermShape::Zbb { .. } => "ZBB",
        TermShape::Zbbz { .. } => "ZBBZ",
        TermShape::Zwkzb { .. } => "ZWKZB",
        TermShape::BzTau { slot: TauSlot::Zi, .. } => "BZ_tau_i",
        TermShape::BzTau { slot: TauSlot::Zj, .. } => "BZ_tau_j",
    }
}

fn poly_json(p: &LaurentPoly) -> Value {
    let triples: Vec<Value> = p
        .to_triples()
        .into_iter()
        .map(|(e, p, q)| {
            json!([
                e,
                i64::try_from(&p).expect("coefficient exceeds i64 in JSON output"),
                i64::try_from(&q).expect("coefficient exceeds i64 in JSON output"),
            ])
        })
        .collect();
    Value::Array(triples)
}

fn poly_from_json(v: &Value) -> Result<LaurentPoly> {
    crate::golden::parse_poly(v)
}

/// Canonical JSON: terms in the canonical shape order, coefficients as
/// normalized num/den triple arrays.
pub fn to_json(table: &RelationTable) -> Value {
    let mut terms = Vec::new();
    for (shape, coeff) in &table.terms {
        let mut obj = Map::new();
        obj.insert("kind".into(), json!(kind_str(shape)));
        let (m, m_prime, t, z_power) = match shape {
            TermShape::Zbb { m, m_prime, z_power } => {
                (*m, Some(*m_prime), None, *z_power)
            }
            TermShape::Zbbz {
                m,
                m_prime,
                t,
                z_power,
            } => (*m, Some(*m_prime), Some(*t), *z_power),
            TermShape::Zwkzb { m, t, z_power } => (*m, None, Some(*t), *z_power),
            TermShape::BzTau { power, .. } => (*power, None, None, 0),
        };
        obj.insert("m".into(), json!(m));
        obj.insert(
            "m_prime".into(),
            m_prime.map_or(Value::Null, |v| json!(v)),
        );
        obj.insert("t".into(), t.map_or(Value::Null, |v| json!(v)));
        obj.insert("z_power".into(), json!(z_power));
        obj.insert("c_power".into(), json!(coeff.c_power));
        obj.insert("num".into(), poly_json(coeff.value.numerator()));
        obj.insert("den".into(), poly_json(coeff.value.denominator()));
        terms.push(Value::Object(obj));
    }
    json!({
        "case": case_str(table.case_tag),
        "a_ij": table.ctx.a_ij(),
        "eps_i": table.ctx.eps_i(),
        "eps_j": table.ctx.eps_j(),
        "terms": terms,
    })
}

/// Parses the canonical JSON back into a relation table. The second Cartan
/// entry is recovered from symmetrizability (`a_ji = eps_i a_ij / eps_j`).
pub fn from_json(v: &Value) -> Result<RelationTable> {
    let case_tag = case_from_str(
        v.get("case")
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("missing case"))?,
    )?;
    let a_ij = v
        .get("a_ij")
        .and_then(Value::as_i64)
        .ok_or_else(|| anyhow!("missing a_ij"))?;
    let eps_i = v
        .get("eps_i")
        .and_then(Value::as_i64)
        .ok_or_else(|| anyhow!("missing eps_i"))?;
    let eps_j = v
        .get("eps_j")
        .and_then(Value::as_i64)
        .ok_or_else(|| anyhow!("missing eps_j"))?;
    if eps_j == 0 || (eps_i * a_ij) % eps_j != 0 {
        bail!("a_ji is not recoverable from the symmetrizers");
    }
    let ctx = QContext::new(a_ij, eps_i * a_ij / eps_j, eps_i, eps_j)?;
    let mut table = RelationTable {
        ctx,
        case_tag,
        terms: Default::default(),
    };
    for term in v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("missing terms"))?
    {
        let kind = term
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("missing term kind"))?;
        let get = |key: &str| -> Result<u32> {
            term.get(key)
                .and_then(Value::as_u64)
                .map(|v| v as u32)
                .ok_or_else(|| anyhow!("missing field {key}"))
        };
        let shape = match kind {
            "ZBB" => TermShape::Zbb {
                m: get("m")?,
                m_prime: get("m_prime")?,
                z_power: get("z_power")?,
            },
            "ZBBZ" => TermShape::Zbbz {
                m: get("m")?,
                m_prime: get("m_prime")?,
                t: get("t")?,
                z_power: get("z_power")?,
            },
            "ZWKZB" => TermShape::Zwkzb {
                m: get("m")?,
                t: get("t")?,
                z_power: get("z_power")?,
            },
            "BZ_tau_i" => TermShape::BzTau {
                power: get("m")?,
                slot: TauSlot::Zi,
            },
            "BZ_tau_j" => TermShape::BzTau {
                power: get("m")?,
                slot: TauSlot::Zj,
            },
            other => bail!("unknown term kind {other}"),
        };
        let num = poly_from_json(&term["num"])?;
        let den = poly_from_json(&term["den"])?;
        table
            .terms
            .insert(shape, Coeff::new(get("c_power")?, RatFunc::new(num, den)));
    }
    Ok(table)
}

fn coeff_text(c: &Coeff) -> String {
    let c_part = match c.c_power {
        0 => String::new(),
        1 => "c ".to_string(),
        k => format!("c^{k} "),
    };
    if c.value.denominator().is_one() {
        format!("{c_part}({})", c.value.numerator())
    } else {
        format!(
            "{c_part}({}) / ({})",
            c.value.numerator(),
            c.value.denominator()
        )
    }
}

pub fn render_text(table: &RelationTable) -> String {
    let mut out = String::new();
    let ctx = &table.ctx;
    out.push_str(&format!(
        "# case {}: a_ij = {}, a_ji = {}, eps_i = {}, eps_j = {}\n",
        case_str(table.case_tag),
        ctx.a_ij(),
        ctx.a_ji(),
        ctx.eps_i(),
        ctx.eps_j()
    ));
    if table.case_tag == CaseTag::Classical {
        let rel = qsp_core::onsager::classical_relation(ctx.a_ij());
        out.push_str(&format!("(ad b_i)^{} b_j =", 1 - ctx.a_ij()));
        if rel.compact.is_empty() {
            out.push_str(" 0\n");
            return out;
        }
        let mut first = true;
        for (s, c) in &rel.compact {
            out.push_str(&signed_int(c, first));
            first = false;
            out.push_str(&match s {
                0 => " b_j".to_string(),
                1 => " (ad b_i) b_j".to_string(),
                s => format!(" (ad b_i)^{s} b_j"),
            });
        }
        out.push('\n');
        out.push_str("expanded:\n");
        for ((m, mp), c) in &rel.terms {
            out.push_str(&format!("  ({m},{mp}):  {c} * b_i^{m} b_j b_i^{mp}\n"));
        }
        return out;
    }
    out.push_str("F_ij(B_i, B_j) =\n");
    if table.terms.is_empty() {
        out.push_str("  0\n");
    }
    for (shape, coeff) in &table.terms {
        out.push_str(&format!("  + {}  *  {}\n", coeff_text(coeff), shape));
    }
    out
}

fn signed_int(c: &BigInt, first: bool) -> String {
    use num::Signed;
    if c.is_negative() {
        format!(" - {}", c.abs())
    } else if first {
        format!(" {c}")
    } else {
        format!(" + {c}")
    }
}

fn poly_latex(p: &LaurentPoly) -> String {
    use num::Signed;
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let triples = p.to_triples();
    for (i, (e, num, den)) in triples.iter().rev().enumerate() {
        let neg = num.is_negative();
        let num_abs = num.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if den == &BigInt::from(1) {
            format!("{num_abs}")
        } else {
            format!("\\tfrac{{{num_abs}}}{{{den}}}")
        };
        let show_coeff = coeff != "1" || *e == 0;
        if show_coeff {
            out.push_str(&coeff);
        }
        if *e != 0 {
            out.push_str(&format!("q^{{{e}}}"));
        }
    }
    out
}

fn coeff_latex(c: &Coeff) -> String {
    let c_part = match c.c_power {
        0 => String::new(),
        1 => "c\\,".to_string(),
        k => format!("c^{{{k}}}\\,"),
    };
    if c.value.denominator().is_one() {
        format!("{c_part}\\left({}\\right)", poly_latex(c.value.numerator()))
    } else {
        format!(
            "{c_part}\\frac{{{}}}{{{}}}",
            poly_latex(c.value.numerator()),
            poly_latex(c.value.denominator())
        )
    }
}

fn shape_latex(shape: &TermShape) -> String {
    fn pow(base: &str, e: u32) -> String {
        match e {
            0 => String::new(),
            1 => format!("{base} "),
            _ => format!("{base}^{{{e}}} "),
        }
    }
    match shape {
        TermShape::Zbb { m, m_prime, z_power } => format!(
            "{}{}B_j {}",
            pow("\\mathcal{Z}_i", *z_power),
            pow("B_i", *m),
            pow("B_i", *m_prime)
        ),
        TermShape::Zbbz {
            m,
            m_prime,
            t,
            z_power,
        } => format!(
            "{}{}B_j {}{}",
            pow("\\mathcal{Z}_i", *t),
            pow("B_i", *m),
            pow("B_i", *m_prime),
            pow("\\mathcal{Z}_i", z_power - t)
        ),
        TermShape::Zwkzb { m, t, z_power } => format!(
            "{}\\mathcal{{W}}_{{ij}}K_j {}{}",
            pow("\\mathcal{Z}_i", *t),
            pow("\\mathcal{Z}_i", z_power - t),
            pow("B_i", *m)
        ),
        TermShape::BzTau { power, slot } => format!(
            "{}{}",
            pow("B_i", *power),
            match slot {
                TauSlot::Zi => "\\mathcal{Z}_i",
                TauSlot::Zj => "\\mathcal{Z}_j",
            }
        ),
    }
}

/// LaTeX output mirroring the familiar table layouts: first-case constants
/// as an m×m' array, second-case families as (m,m')×t and m×t arrays,
/// otherwise a displayed equation.
pub fn render_latex(table: &RelationTable) -> String {
    let a = table.ctx.a_ij();
    let mut out = String::new();
    out.push_str(&format!(
        "%% case {}: a_ij = {}, eps_i = {}, eps_j = {}\n",
        case_str(table.case_tag),
        a,
        table.ctx.eps_i(),
        table.ctx.eps_j()
    ));
    match table.case_tag {
        CaseTag::Case1 | CaseTag::Split => {
            let max = (-1 - a).max(0);
            out.push_str(&format!(
                "\\begin{{array}}{{c|{}}}\n",
                "c".repeat((max + 1) as usize)
            ));
            out.push_str("m \\backslash m'");
            for mp in 0..=max {
                out.push_str(&format!(" & {mp}"));
            }
            out.push_str(" \\\\\\hline\n");
            for m in 0..=max {
                out.push_str(&format!("{m}"));
                for mp in 0..=max {
                    out.push_str(" & ");
                    if m + mp > max {
                        continue;
                    }
                    let w = ((1 - a - m - mp) / 2).max(0) as u32;
                    let z_power = if table.case_tag == CaseTag::Split { 0 } else { w };
                    let shape = TermShape::Zbb {
                        m: m as u32,
                        m_prime: mp as u32,
                        z_power,
                    };
                    match table.coeff(&shape) {
                        Some(c) => out.push_str(&coeff_latex(c)),
                        None => out.push('0'),
                    }
                }
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{array}\n");
        }
        CaseTag::Case2 => {
            // ρ_{m,m',t} block: coefficients of Z^t B_i^m B_j B_i^{m'} Z^{w-t}
            out.push_str("%% constants rho_{m,m',t} on Z^t B_i^m B_j B_i^{m'} Z^{w-t}\n");
            let pairs: Vec<(u32, u32, u32)> = table
                .terms
                .keys()
                .filter_map(|s| match s {
                    TermShape::Zbbz { m, m_prime, z_power, .. } => {
                        Some((*m, *m_prime, *z_power))
                    }
                    _ => None,
                })
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let tmax = pairs.iter().map(|p| p.2).max().unwrap_or(0);
            out.push_str(&format!(
                "\\begin{{array}}{{c|{}}}\n(m,m') \\backslash t",
                "c".repeat((tmax + 1) as usize)
            ));
            for t in 0..=tmax {
                out.push_str(&format!(" & {t}"));
            }
            out.push_str(" \\\\\\hline\n");
            for (m, mp, z_power) in pairs {
                out.push_str(&format!("({m},{mp})"));
                for t in 0..=tmax {
                    out.push_str(" & ");
                    let shape = TermShape::Zbbz {
                        m,
                        m_prime: mp,
                        t,
                        z_power,
                    };
                    match table.coeff(&shape) {
                        Some(c) => out.push_str(&coeff_latex(c)),
                        None => {
                            if t <= z_power {
                                out.push('0');
                            }
                        }
                    }
                }
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{array}\n");
            // σ_{m,t} block
            let rows: Vec<(u32, u32)> = table
                .terms
                .keys()
                .filter_map(|s| match s {
                    TermShape::Zwkzb { m, z_power, .. } => Some((*m, *z_power)),
                    _ => None,
                })
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            if !rows.is_empty() {
                let tmax = rows.iter().map(|r| r.1).max().unwrap_or(0);
                out.push_str(
                    "%% constants sigma_{m,t} on Z^t \\mathcal{W}_{ij}K_j Z^{w'-t} B_i^m\n",
                );
                out.push_str(&format!(
                    "\\begin{{array}}{{c|{}}}\nm \\backslash t",
                    "c".repeat((tmax + 1) as usize)
                ));
                for t in 0..=tmax {
                    out.push_str(&format!(" & {t}"));
                }
                out.push_str(" \\\\\\hline\n");
                for (m, z_power) in rows {
                    out.push_str(&format!("{m}"));
                    for t in 0..=tmax {
                        out.push_str(" & ");
                        let shape = TermShape::Zwkzb { m, t, z_power };
                        match table.coeff(&shape) {
                            Some(c) => out.push_str(&coeff_latex(c)),
                            None => {
                                if t <= z_power {
                                    out.push('0');
                                }
                            }
                        }
                    }
                    out.push_str(" \\\\\n");
                }
                out.push_str("\\end{array}\n");
            }
        }
        CaseTag::Tau | CaseTag::Classical => {
            out.push_str("\\begin{aligned}\nF_{ij}(B_i,B_j) ={} &");
            let mut first = true;
            for (shape, coeff) in &table.terms {
                if !first {
                    out.push_str(" \\\\\n&+ ");
                }
                first = false;
                out.push_str(&format!("{} \\, {}", coeff_latex(coeff), shape_latex(shape)));
            }
            out.push_str("\n\\end{aligned}\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsp_core::relations::assemble_relation;

    #[test]
    fn json_round_trips() {
        for (case, a) in [
            (CaseTag::Case1, -3),
            (CaseTag::Case2, -2),
            (CaseTag::Split, -2),
            (CaseTag::Tau, -1),
            (CaseTag::Classical, -2),
        ] {
            let table = assemble_relation(case, &QContext::symmetric(a));
            let parsed = from_json(&to_json(&table)).unwrap();
            assert_eq!(parsed, table, "case {case:?} a={a}");
        }
        // non-unit symmetrizers
        let ctx = qsp_core::qring::QContext::new(-2, -1, 1, 2).unwrap();
        let table = assemble_relation(CaseTag::Case2, &ctx);
        assert_eq!(from_json(&to_json(&table)).unwrap(), table);
    }

    #[test]
    fn text_render_shows_the_single_cell() {
        let table = assemble_relation(CaseTag::Case1, &QContext::symmetric(-1));
        let text = render_text(&table);
        assert!(text.contains("Z Bj"), "got: {text}");
        assert!(text.contains("c (q)"), "got: {text}");
    }

    #[test]
    fn classical_text_shows_compact_form() {
        let table = assemble_relation(CaseTag::Classical, &QContext::symmetric(-2));
        let text = render_text(&table);
        assert!(text.contains("(ad b_i)^3 b_j ="), "got: {text}");
        assert!(text.contains("- 4 (ad b_i) b_j"), "got: {text}");
    }

    #[test]
    fn latex_renders_without_panicking() {
        for (case, a) in [(CaseTag::Case1, -3), (CaseTag::Case2, -3), (CaseTag::Tau, -2)] {
            let table = assemble_relation(case, &QContext::symmetric(a));
            let tex = render_latex(&table);
            assert!(tex.contains("\\begin{a"), "case {case:?} a={a}");
        }
    }
}
