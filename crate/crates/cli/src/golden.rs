//! Golden structure-constant tables: embedded data files, transcribed once
//! per cell, against which the assembled relations are compared exactly.
//!
//! Each file fixes its Cartan data (symmetric entries, unit symmetrizers)
//! and lists every cell of one published table, including zero cells and
//! cells defined by reference to another cell (resolved at load time).

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use qsp_core::qring::{Coeff, LaurentPoly, QContext, RatFunc};
use qsp_core::relations::{assemble_relation, CaseTag, RelationTable, TermShape};

/// The ten golden tables, keyed by id.
pub const TABLE_IDS: [&str; 10] = [
    "T1a", "T1b", "T1c", "T4", "T2a", "T2b", "T5", "T3a", "T3b", "T6",
];

const RAW: [(&str, &str); 10] = [
    ("T1a", include_str!("../data/golden/t1a.json")),
    ("T1b", include_str!("../data/golden/t1b.json")),
    ("T1c", include_str!("../data/golden/t1c.json")),
    ("T4", include_str!("../data/golden/t4.json")),
    ("T2a", include_str!("../data/golden/t2a.json")),
    ("T2b", include_str!("../data/golden/t2b.json")),
    ("T5", include_str!("../data/golden/t5.json")),
    ("T3a", include_str!("../data/golden/t3a.json")),
    ("T3b", include_str!("../data/golden/t3b.json")),
    ("T6", include_str!("../data/golden/t6.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoldenKind {
    /// First-case constants ρ_{m,m'}.
    Rho,
    /// Second-case constants ρ_{m,m',t}.
    RhoT,
    /// Second-case constants σ_{m,t}.
    Sigma,
}

#[derive(Clone, Debug)]
pub enum GoldenValue {
    Zero,
    Direct(Coeff),
    Ref { m: u32, m_prime: u32, sign: i64 },
}

#[derive(Clone, Debug)]
pub struct GoldenEntry {
    pub m: u32,
    pub m_prime: Option<u32>,
    pub t: Option<u32>,
    pub expr: String,
    pub value: GoldenValue,
}

#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub id: String,
    pub kind: GoldenKind,
    pub ctx: QContext,
    pub entries: Vec<GoldenEntry>,
}

pub fn load_table(id: &str) -> Result<GoldenTable> {
    let raw = RAW
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, v)| *v)
        .ok_or_else(|| anyhow!("unknown golden table id {id}"))?;
    parse_table(raw).with_context(|| format!("golden table {id}"))
}

pub fn load_all() -> Result<Vec<GoldenTable>> {
    TABLE_IDS.iter().map(|id| load_table(id)).collect()
}

fn parse_table(raw: &str) -> Result<GoldenTable> {
    let v: Value = serde_json::from_str(raw)?;
    let id = str_field(&v, "table")?.to_string();
    let kind = match str_field(&v, "kind")? {
        "rho" => GoldenKind::Rho,
        "rho_t" => GoldenKind::RhoT,
        "sigma" => GoldenKind::Sigma,
        other => bail!("unknown table kind {other}"),
    };
    let ctx = QContext::new(
        int_field(&v, "a_ij")?,
        int_field(&v, "a_ji")?,
        int_field(&v, "eps_i")?,
        int_field(&v, "eps_j")?,
    )?;
    let mut entries = Vec::new();
    for (i, e) in v["entries"]
        .as_array()
        .ok_or_else(|| anyhow!("entries must be an array"))?
        .iter()
        .enumerate()
    {
        entries.push(parse_entry(e, kind).with_context(|| format!("entry {i}"))?);
    }
    Ok(GoldenTable {
        id,
        kind,
        ctx,
        entries,
    })
}

fn parse_entry(e: &Value, kind: GoldenKind) -> Result<GoldenEntry> {
    let m = int_field(e, "m")? as u32;
    let m_prime = match kind {
        GoldenKind::Sigma => None,
        _ => Some(int_field(e, "m_prime")? as u32),
    };
    let t = match kind {
        GoldenKind::Rho => None,
        _ => Some(int_field(e, "t")? as u32),
    };
    let expr = str_field(e, "expr")?.to_string();
    let value = if e.get("zero").and_then(Value::as_bool) == Some(true) {
        GoldenValue::Zero
    } else if let Some(r) = e.get("ref") {
        GoldenValue::Ref {
            m: int_field(r, "m")? as u32,
            m_prime: int_field(r, "m_prime")? as u32,
            sign: int_field(r, "sign")?,
        }
    } else {
        let c_power = int_field(e, "c_power")? as u32;
        let num = parse_poly(&e["num"]).context("num")?;
        let den = parse_poly(&e["den"]).context("den")?;
        GoldenValue::Direct(Coeff::new(c_power, RatFunc::new(num, den)))
    };
    Ok(GoldenEntry {
        m,
        m_prime,
        t,
        expr,
        value,
    })
}

pub fn parse_poly(v: &Value) -> Result<LaurentPoly> {
    let arr = v.as_array().ok_or_else(|| anyhow!("expected triple array"))?;
    let mut triples = Vec::with_capacity(arr.len());
    for t in arr {
        let t = t.as_array().ok_or_else(|| anyhow!("expected [e, p, q]"))?;
        if t.len() != 3 {
            bail!("triple must have three components");
        }
        let e = t[0].as_i64().ok_or_else(|| anyhow!("bad exponent"))?;
        let p = t[1].as_i64().ok_or_else(|| anyhow!("bad numerator"))?;
        let q = t[2].as_i64().ok_or_else(|| anyhow!("bad denominator"))?;
        triples.push((e, p.into(), q.into()));
    }
    Ok(LaurentPoly::from_triples(&triples))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| anyhow!("missing string field {key}"))
}

fn int_field(v: &Value, key: &str) -> Result<i64> {
    v.get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| anyhow!("missing integer field {key}"))
}

fn cell_name(table: &GoldenTable, e: &GoldenEntry) -> String {
    match table.kind {
        GoldenKind::Rho => format!("{} (m={}, m'={})", table.id, e.m, e.m_prime.unwrap()),
        GoldenKind::RhoT => format!(
            "{} (m={}, m'={}, t={})",
            table.id,
            e.m,
            e.m_prime.unwrap(),
            e.t.unwrap()
        ),
        GoldenKind::Sigma => format!("{} (m={}, t={})", table.id, e.m, e.t.unwrap()),
    }
}

/// Resolves a reference chain (one level deep, the way the tables use them).
fn resolve(table: &GoldenTable, entry: &GoldenEntry) -> Result<Option<Coeff>> {
    match &entry.value {
        GoldenValue::Zero => Ok(None),
        GoldenValue::Direct(c) => Ok(Some(c.clone())),
        GoldenValue::Ref { m, m_prime, sign } => {
            let target = table
                .entries
                .iter()
                .find(|o| o.m == *m && o.m_prime == Some(*m_prime))
                .ok_or_else(|| {
                    anyhow!("{}: dangling reference to (m={m}, m'={m_prime})", table.id)
                })?;
            match &target.value {
                GoldenValue::Direct(c) => Ok(Some(if *sign < 0 { c.neg() } else { c.clone() })),
                _ => bail!("{}: reference target must be a direct entry", table.id),
            }
        }
    }
}

fn shape_of(table: &GoldenTable, e: &GoldenEntry) -> TermShape {
    let a = table.ctx.a_ij();
    match table.kind {
        GoldenKind::Rho => TermShape::Zbb {
            m: e.m,
            m_prime: e.m_prime.unwrap(),
            z_power: ((1 - a - e.m as i64 - e.m_prime.unwrap() as i64) / 2) as u32,
        },
        GoldenKind::RhoT => TermShape::Zbbz {
            m: e.m,
            m_prime: e.m_prime.unwrap(),
            t: e.t.unwrap(),
            z_power: ((1 - a - e.m as i64 - e.m_prime.unwrap() as i64) / 2) as u32,
        },
        GoldenKind::Sigma => TermShape::Zwkzb {
            m: e.m,
            t: e.t.unwrap(),
            z_power: ((-1 - a - e.m as i64) / 2) as u32,
        },
    }
}

fn kind_matches(kind: GoldenKind, shape: &TermShape) -> bool {
    matches!(
        (kind, shape),
        (GoldenKind::Rho, TermShape::Zbb { .. })
            | (GoldenKind::RhoT, TermShape::Zbbz { .. })
            | (GoldenKind::Sigma, TermShape::Zwkzb { .. })
    )
}

/// Compares one golden table against a freshly assembled relation. Every
/// cell must match exactly after normalization, and every assembled nonzero
/// term of the table's kind must be covered by a cell.
pub fn check_against(table: &GoldenTable, assembled: &RelationTable) -> Result<()> {
    for entry in &table.entries {
        let shape = shape_of(table, entry);
        let expected = resolve(table, entry)?;
        let actual = assembled.coeff(&shape);
        match (expected, actual) {
            (None, None) => {}
            (None, Some(c)) => bail!(
                "{}: expected zero, assembled {}",
                cell_name(table, entry),
                c
            ),
            (Some(c), None) => bail!(
                "{}: expected {}, assembled zero",
                cell_name(table, entry),
                c
            ),
            (Some(want), Some(got)) => {
                if &want != got {
                    bail!(
                        "{}: mismatch\n  expected {}\n  got      {}",
                        cell_name(table, entry),
                        want,
                        got
                    );
                }
            }
        }
    }
    for shape in assembled.terms.keys() {
        if !kind_matches(table.kind, shape) {
            continue;
        }
        let covered = table.entries.iter().any(|e| shape_of(table, e) == *shape);
        if !covered {
            bail!("{}: assembled term {shape:?} not covered by any cell", table.id);
        }
    }
    Ok(())
}

/// Assembles the right relation for a table and compares.
pub fn check_table(table: &GoldenTable) -> Result<()> {
    let case = match table.kind {
        GoldenKind::Rho => CaseTag::Case1,
        GoldenKind::RhoT | GoldenKind::Sigma => CaseTag::Case2,
    };
    let assembled = assemble_relation(case, &table.ctx);
    check_against(table, &assembled)
}
