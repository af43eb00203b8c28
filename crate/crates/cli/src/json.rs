//! JSON documents exchanged by the CLI.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use tetrify_core::solver::SolveResult;
use tetrify_core::{Tet, Triangle, Triangulation};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error("{0:?} does not name distinct vertices")]
    Repeated(Vec<usize>),
    #[error("expected a `tets` list or a result `witness`")]
    NoTriangulation,
}

#[derive(Serialize, Deserialize)]
struct TetsDoc {
    tets: Vec<[usize; 4]>,
}

#[derive(Serialize)]
struct StarDoc {
    tets: Vec<[usize; 4]>,
    size: usize,
    vertex: usize,
}

#[derive(Serialize, Deserialize)]
struct SurfaceDoc {
    triangles: Vec<[usize; 3]>,
}

/// Either a triangulation document or a solve result.
#[derive(Deserialize)]
struct AnyTets {
    tets: Option<Vec<[usize; 4]>>,
    witness: Option<Vec<[usize; 4]>>,
}

#[derive(Serialize)]
struct Stats {
    nodes: u64,
    candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    millis: Option<u64>,
}

#[derive(Serialize)]
struct ResultDoc {
    status: &'static str,
    value: Option<usize>,
    witness: Option<Vec<[usize; 4]>>,
    stats: Stats,
}

fn tet_lists(t: &Triangulation) -> Vec<[usize; 4]> {
    t.tets().iter().map(Tet::vertices).collect()
}

fn to_triangulation(list: Vec<[usize; 4]>) -> Result<Triangulation, JsonError> {
    list.into_iter()
        .map(|[a, b, c, d]| Tet::new(a, b, c, d).ok_or_else(|| JsonError::Repeated(vec![a, b, c, d])))
        .collect()
}

pub fn triangulation_to_json(t: &Triangulation) -> String {
    serde_json::to_string(&TetsDoc { tets: tet_lists(t) }).expect("plain data")
}

pub fn star_to_json(t: &Triangulation, vertex: usize) -> String {
    let doc = StarDoc {
        tets: tet_lists(t),
        size: t.len(),
        vertex,
    };
    serde_json::to_string(&doc).expect("plain data")
}

/// Reads `{"tets": ...}` or the `witness` of a result document.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, JsonError> {
    let doc: AnyTets = serde_json::from_str(text)?;
    to_triangulation(doc.tets.or(doc.witness).ok_or(JsonError::NoTriangulation)?)
}

pub fn surface_to_json(s: &BTreeSet<Triangle>) -> String {
    let doc = SurfaceDoc {
        triangles: s.iter().map(Triangle::vertices).collect(),
    };
    serde_json::to_string(&doc).expect("plain data")
}

pub fn parse_surface(text: &str) -> Result<BTreeSet<Triangle>, JsonError> {
    let doc: SurfaceDoc = serde_json::from_str(text)?;
    doc.triangles
        .into_iter()
        .map(|[a, b, c]| Triangle::new(a, b, c).ok_or_else(|| JsonError::Repeated(vec![a, b, c])))
        .collect()
}

/// `millis` is only included on request, so that repeated runs print
/// identical bytes by default.
pub fn result_to_json(r: &SolveResult, with_time: bool) -> String {
    let doc = ResultDoc {
        status: r.status.as_str(),
        value: r.value,
        witness: r.witness.as_ref().map(tet_lists),
        stats: Stats {
            nodes: r.stats.nodes,
            candidates: r.stats.candidates,
            millis: with_time.then_some(r.stats.millis),
        },
    };
    serde_json::to_string(&doc).expect("plain data")
}
