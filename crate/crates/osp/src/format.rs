//! JSON and DOT encodings of crystal elements and graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use osp_core::hooktab::{HookPartition, HookTableau, HookType};
use osp_core::pvcrystal::{CrystalGraph, Edge, PVElement};
use osp_core::radcrystal::{RadArray, RadCrystal};
use osp_core::superroot::{AlgebraType, Family, Root};

/// {"c": {"i,j": value}}; zero entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayJson {
    pub c: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tableau: Option<Vec<Vec<u8>>>,
}

fn parse_key(key: &str) -> Result<Root> {
    let (i, j) = key.split_once(',').ok_or_else(|| anyhow!("bad root key {key:?}, expected \"i,j\""))?;
    let i: usize = i.trim().parse().with_context(|| format!("bad root key {key:?}"))?;
    let j: usize = j.trim().parse().with_context(|| format!("bad root key {key:?}"))?;
    Ok(Root::new(i, j))
}

pub fn array_to_json(x: &RadCrystal, c: &RadArray) -> ArrayJson {
    let c = c
        .0
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(k, &v)| {
            let r = x.rs.pair(k);
            (format!("{},{}", r.i, r.j), v)
        })
        .collect();
    ArrayJson { c, tableau: None }
}

pub fn array_from_json(x: &RadCrystal, j: &ArrayJson) -> Result<RadArray> {
    let pairs = j.c.iter().map(|(k, &v)| Ok((parse_key(k)?, v))).collect::<Result<Vec<_>>>()?;
    Ok(x.from_pairs(&pairs)?)
}

pub fn element_to_json(x: &RadCrystal, b: &PVElement) -> ArrayJson {
    ArrayJson { tableau: Some(b.tab.rows().to_vec()), ..array_to_json(x, &b.rad) }
}

pub fn element_from_json(x: &RadCrystal, h: HookType, j: &ArrayJson) -> Result<PVElement> {
    let rows = j.tableau.clone().ok_or_else(|| anyhow!("element has no \"tableau\" field"))?;
    Ok(PVElement { rad: array_from_json(x, j)?, tab: HookTableau::new(h, rows)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub c: BTreeMap<String, u32>,
    pub tableau: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(rename = "type")]
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub lambda: Vec<usize>,
    pub max_degree: u32,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

pub fn graph_to_json(x: &RadCrystal, g: &CrystalGraph) -> GraphJson {
    GraphJson {
        family: g.algebra.family.to_string(),
        m: g.algebra.m,
        n: g.algebra.n,
        lambda: g.lambda.parts().to_vec(),
        max_degree: g.max_degree,
        vertices: g
            .vertices
            .iter()
            .enumerate()
            .map(|(id, b)| VertexJson { id, c: array_to_json(x, &b.rad).c, tableau: b.tab.rows().to_vec() })
            .collect(),
        edges: g.edges.iter().map(|e| EdgeJson { from: e.from, to: e.to, color: e.color }).collect(),
    }
}

pub fn parse_family(s: &str) -> Result<Family> {
    match s {
        "b" => Ok(Family::B),
        "c" => Ok(Family::C),
        "d" => Ok(Family::D),
        _ => bail!("unknown family {s:?}"),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<CrystalGraph> {
    let algebra = AlgebraType::new(parse_family(&j.family)?, j.m, j.n)?;
    let x = RadCrystal::new(algebra);
    let h = HookType::from(algebra);
    let mut vertices = Vec::with_capacity(j.vertices.len());
    for (k, v) in j.vertices.iter().enumerate() {
        if v.id != k {
            bail!("vertex ids must be 0..{} in order, found {} at position {k}", j.vertices.len(), v.id);
        }
        let el = ArrayJson { c: v.c.clone(), tableau: Some(v.tableau.clone()) };
        vertices.push(element_from_json(&x, h, &el)?);
    }
    let edges = j
        .edges
        .iter()
        .map(|e| {
            if e.from >= vertices.len() || e.to >= vertices.len() {
                bail!("edge {} -> {} refers to a missing vertex", e.from, e.to);
            }
            Ok(Edge { from: e.from, color: e.color, to: e.to })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrystalGraph { algebra, lambda: HookPartition::new(&j.lambda)?, max_degree: j.max_degree, vertices, edges })
}

pub fn element_label(x: &RadCrystal, b: &PVElement) -> String {
    let rows: Vec<String> =
        b.tab.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("")).collect();
    format!("{} | {}", x.format(&b.rad), rows.join("/"))
}

pub fn graph_to_dot(x: &RadCrystal, g: &CrystalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph crystal {{").unwrap();
    writeln!(out, "  // {} lambda={} max_degree={}", g.algebra, g.lambda, g.max_degree).unwrap();
    for (k, b) in g.vertices.iter().enumerate() {
        writeln!(out, "  v{k} [label=\"{}\"];", element_label(x, b)).unwrap();
    }
    for e in &g.edges {
        writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, e.color).unwrap();
    }
    out.push_str("}\n");
    out
}
