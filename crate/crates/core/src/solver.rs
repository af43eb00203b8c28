//! Complete search for minimum, maximum and bounded-size triangulations,
//! the starring heuristic, and an independent triangulation checker.
//!
//! The search grows a set of pairwise compatible candidates outward from a
//! tetrahedron at vertex 0. An *open* triangle is a triangle of a chosen
//! tetrahedron that is not on the surface and is covered from one side only;
//! the lexicographically smallest open triangle is always extended next, so
//! every triangulation is reached exactly once. When nothing is open the
//! chosen tetrahedra fill the polyhedron.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::candidates::{enumerate_candidates, is_boundary_triangle, tet_in_polyhedron, CandidateSet, ContainmentError};
use crate::geometry::{orient3d, simplices_properly_intersect, Location, Point3};
use crate::polygon::locate_in_polygon;
use crate::polyhedron::{validate, volume6, Polyhedron, PolyhedronError, Tet, Triangle, Triangulation};
use crate::rational::{common_denominator, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    InvalidPolyhedron(#[from] PolyhedronError),
    #[error(transparent)]
    Containment(#[from] ContainmentError),
    #[error("invalid solve spec: {0}")]
    InvalidSpec(SpecError),
    #[error("starring needs a convex polyhedron")]
    NotConvex,
    #[error("vertex {0} is out of range")]
    InvalidVertex(usize),
    #[error("candidate volumes do not fit the search's integer scale")]
    VolumeOverflow,
    #[error("time limits need the `std` feature")]
    TimeLimitUnsupported,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    EdgeOutOfRange(Edge),
    ForcedAndForbidden(Edge),
    SurfaceTriangleOffFace(Triangle),
    SurfaceTriangleOutOfRange(Triangle),
    SurfaceOverlap(Triangle, Triangle),
    SurfaceDoesNotTile(usize),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::EdgeOutOfRange(e) => write!(f, "edge {e} uses a vertex out of range"),
            SpecError::ForcedAndForbidden(e) => write!(f, "edge {e} is both forced and forbidden"),
            SpecError::SurfaceTriangleOffFace(t) => write!(f, "surface triangle {t} lies on no face"),
            SpecError::SurfaceTriangleOutOfRange(t) => write!(f, "surface triangle {t} uses a vertex out of range"),
            SpecError::SurfaceOverlap(a, b) => write!(f, "surface triangles {a} and {b} overlap"),
            SpecError::SurfaceDoesNotTile(face) => write!(f, "surface triangles do not tile face {face}"),
        }
    }
}

/// An unordered pair of distinct vertex indices, stored ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Some(Edge(a, b)),
            core::cmp::Ordering::Greater => Some(Edge(b, a)),
            core::cmp::Ordering::Equal => None,
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Minimize,
    Maximize,
    /// Is there a triangulation with *fewer than* `k` tetrahedra?
    Decide(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveSpec {
    pub mode: Mode,
    pub forced_edges: BTreeSet<Edge>,
    pub forbidden_edges: BTreeSet<Edge>,
    /// Exact set of boundary triangles the triangulation must induce.
    pub surface: Option<BTreeSet<Triangle>>,
    pub node_limit: Option<u64>,
    pub time_limit_ms: Option<u64>,
}

impl SolveSpec {
    pub fn new(mode: Mode) -> Self {
        SolveSpec {
            mode,
            forced_edges: BTreeSet::new(),
            forbidden_edges: BTreeSet::new(),
            surface: None,
            node_limit: None,
            time_limit_ms: None,
        }
    }

    pub fn minimize() -> Self {
        SolveSpec::new(Mode::Minimize)
    }

    pub fn maximize() -> Self {
        SolveSpec::new(Mode::Maximize)
    }

    pub fn decide(k: usize) -> Self {
        SolveSpec::new(Mode::Decide(k))
    }

    pub fn force(mut self, e: Edge) -> Self {
        self.forced_edges.insert(e);
        self
    }

    pub fn forbid(mut self, e: Edge) -> Self {
        self.forbidden_edges.insert(e);
        self
    }

    pub fn with_surface(mut self, surface: BTreeSet<Triangle>) -> Self {
        self.surface = Some(surface);
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn with_time_limit_ms(mut self, ms: u64) -> Self {
        self.time_limit_ms = Some(ms);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Feasible,
    Infeasible,
    Limit,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "OPTIMAL",
            Status::Feasible => "FEASIBLE",
            Status::Infeasible => "INFEASIBLE",
            Status::Limit => "LIMIT",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub nodes: u64,
    pub candidates: usize,
    /// Wall time; always 0 without the `std` feature.
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    pub value: Option<usize>,
    pub witness: Option<Triangulation>,
    pub stats: SolveStats,
}

/// Independent validity check: every tet is non-degenerate and inside `p`,
/// all pairs meet face to face, the volumes add up to the volume of `p`, and
/// (if given) the triangles of `t` on the surface of `p` are exactly
/// `surface`.
pub fn check_triangulation(
    p: &Polyhedron,
    t: &Triangulation,
    surface: Option<&BTreeSet<Triangle>>,
) -> Result<bool, SolveError> {
    p.ensure_valid()?;
    let n = p.vertex_count();
    if t.is_empty() || t.tets().iter().any(|tet| tet.vertices().iter().any(|&v| v >= n)) {
        return Ok(false);
    }
    let points: Vec<[Point3; 4]> = t.tets().iter().map(|tet| tet.points(p)).collect();
    for (tet, pts) in t.tets().iter().zip(&points) {
        if orient3d(&pts[0], &pts[1], &pts[2], &pts[3]).is_zero() || !tet_in_polyhedron(tet, p)? {
            return Ok(false);
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let proper = simplices_properly_intersect(&points[i], &points[j]).expect("checked non-degenerate");
            if !proper {
                return Ok(false);
            }
        }
    }
    let total: Rat = t.tets().iter().map(|tet| tet.volume6(p)).sum();
    if total != volume6(p)? {
        return Ok(false);
    }
    if let Some(required) = surface {
        let mut uses: BTreeMap<Triangle, usize> = BTreeMap::new();
        for tet in t.tets() {
            for tri in tet.triangles() {
                *uses.entry(tri).or_default() += 1;
            }
        }
        let induced: Vec<Triangle> = uses
            .into_iter()
            .filter(|(tri, count)| *count == 1 && is_boundary_triangle(p, tri))
            .map(|(tri, _)| tri)
            .collect();
        if !induced.iter().eq(required.iter()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `check_triangulation` plus the forced and forbidden edge constraints.
pub fn check_solution(p: &Polyhedron, t: &Triangulation, spec: &SolveSpec) -> Result<bool, SolveError> {
    let has = |e: &Edge| t.tets().iter().any(|tet| tet.has_edge(e.0, e.1));
    if !spec.forced_edges.iter().all(has) || spec.forbidden_edges.iter().any(has) {
        return Ok(false);
    }
    check_triangulation(p, t, spec.surface.as_ref())
}

/// Checks that `surface` is a triangulation of the boundary of `p` using only
/// its vertices: each triangle lies in a face, no two overlap, and their
/// areas add up to each face's area.
pub fn validate_surface(p: &Polyhedron, surface: &BTreeSet<Triangle>) -> Result<(), SolveError> {
    p.ensure_valid()?;
    let invalid = |e| Err(SolveError::InvalidSpec(e));
    let n = p.vertex_count();
    let mut per_face: Vec<Vec<Triangle>> = alloc::vec![Vec::new(); p.face_count()];
    for &tri in surface {
        if tri.vertices().iter().any(|&v| v >= n) {
            return invalid(SpecError::SurfaceTriangleOutOfRange(tri));
        }
        let pts = tri.vertices().map(|v| p.vertices()[v].clone());
        let centroid = Point3::centroid(pts.iter());
        let face = (0..p.face_count()).find(|&f| {
            let face = &p.faces()[f];
            tri.vertices().iter().all(|v| face.contains(v))
                && locate_in_polygon(&centroid, &p.face_points(f), &p.face_normal(f)) == Location::Interior
        });
        match face {
            Some(f) => per_face[f].push(tri),
            None => return invalid(SpecError::SurfaceTriangleOffFace(tri)),
        }
    }
    for (f, tris) in per_face.iter().enumerate() {
        let normal = p.face_normal(f);
        let area: Rat = tris
            .iter()
            .map(|tri| {
                let [a, b, c] = tri.vertices().map(|v| &p.vertices()[v]);
                b.sub(a).cross(&c.sub(a)).dot(&normal).abs()
            })
            .sum();
        // |normal|^2 is twice the face area times |normal|
        if area != normal.dot(&normal) {
            return invalid(SpecError::SurfaceDoesNotTile(f));
        }
        for i in 0..tris.len() {
            for j in i + 1..tris.len() {
                let a = tris[i].vertices().map(|v| p.vertices()[v].clone());
                let b = tris[j].vertices().map(|v| p.vertices()[v].clone());
                if !simplices_properly_intersect(&a, &b).unwrap_or(false) {
                    return invalid(SpecError::SurfaceOverlap(tris[i], tris[j]));
                }
            }
        }
    }
    Ok(())
}

/// Cones `v` to a fan triangulation of every face not incident to `v`; each
/// face is fanned from its lowest-index vertex.
pub fn star_triangulation(p: &Polyhedron, v: usize) -> Result<Triangulation, SolveError> {
    let report = validate(p);
    if let Some(violation) = report.violations.into_iter().next() {
        return Err(PolyhedronError::Invalid(violation).into());
    }
    if v >= p.vertex_count() {
        return Err(SolveError::InvalidVertex(v));
    }
    if !report.convex {
        return Err(SolveError::NotConvex);
    }
    let mut tets = Vec::new();
    for face in p.faces().iter().filter(|f| !f.contains(&v)) {
        let start = (0..face.len()).min_by_key(|&i| face[i]).expect("faces are non-empty");
        let apex = face[start];
        for k in 1..face.len() - 1 {
            let b = face[(start + k) % face.len()];
            let c = face[(start + k + 1) % face.len()];
            let tet = Tet::new(v, apex, b, c).expect("v is not on the face");
            let [w, x, y, z] = tet.points(p);
            if !orient3d(&w, &x, &y, &z).is_zero() {
                tets.push(tet);
            }
        }
    }
    Ok(Triangulation::new(tets))
}

/// The smallest star over all vertices; ties go to the lowest index.
pub fn best_star(p: &Polyhedron) -> Result<(usize, Triangulation), SolveError> {
    let mut best: Option<(usize, Triangulation)> = None;
    for v in 0..p.vertex_count() {
        let t = star_triangulation(p, v)?;
        if best.as_ref().is_none_or(|(_, b)| t.len() < b.len()) {
            best = Some((v, t));
        }
    }
    best.ok_or(SolveError::InvalidVertex(0))
}

pub fn min_triangulation(p: &Polyhedron) -> Result<SolveResult, SolveError> {
    solve(p, &enumerate_candidates(p)?, &SolveSpec::minimize())
}

pub fn max_triangulation(p: &Polyhedron) -> Result<SolveResult, SolveError> {
    solve(p, &enumerate_candidates(p)?, &SolveSpec::maximize())
}

/// Runs the search. `c` must be `enumerate_candidates(p)`.
pub fn solve(p: &Polyhedron, c: &CandidateSet, spec: &SolveSpec) -> Result<SolveResult, SolveError> {
    p.ensure_valid()?;
    check_spec(p, spec)?;
    let clock = Clock::start(spec.time_limit_ms)?;
    let mut search = Search::new(p, c, spec, clock)?;
    let mut result = search.run();
    result.stats.millis = search.clock.elapsed_ms();
    Ok(result)
}

fn check_spec(p: &Polyhedron, spec: &SolveSpec) -> Result<(), SolveError> {
    let n = p.vertex_count();
    for e in spec.forced_edges.iter().chain(&spec.forbidden_edges) {
        if e.1 >= n {
            return Err(SolveError::InvalidSpec(SpecError::EdgeOutOfRange(*e)));
        }
    }
    if let Some(e) = spec.forced_edges.intersection(&spec.forbidden_edges).next() {
        return Err(SolveError::InvalidSpec(SpecError::ForcedAndForbidden(*e)));
    }
    if let Some(surface) = &spec.surface {
        validate_surface(p, surface)?;
    }
    Ok(())
}

struct Clock {
    limit_ms: Option<u64>,
    #[cfg(feature = "std")]
    start: std::time::Instant,
}

impl Clock {
    fn start(limit_ms: Option<u64>) -> Result<Self, SolveError> {
        #[cfg(not(feature = "std"))]
        if limit_ms.is_some() {
            return Err(SolveError::TimeLimitUnsupported);
        }
        Ok(Clock {
            limit_ms,
            #[cfg(feature = "std")]
            start: std::time::Instant::now(),
        })
    }

    fn elapsed_ms(&self) -> u64 {
        #[cfg(feature = "std")]
        {
            self.start.elapsed().as_millis() as u64
        }
        #[cfg(not(feature = "std"))]
        {
            0
        }
    }

    fn expired(&self) -> bool {
        self.limit_ms.is_some_and(|limit| self.elapsed_ms() >= limit)
    }
}

struct Search<'a> {
    c: &'a CandidateSet,
    mode: Mode,
    spec: &'a SolveSpec,
    clock: Clock,
    /// Candidate indices of each tet's four triangles.
    tri_of: Vec<[usize; 4]>,
    tri_boundary: Vec<bool>,
    /// Candidates containing each triangle.
    tri_cands: Vec<BitSet>,
    volume: Vec<u128>,
    total: u128,
    /// Candidates containing each forced edge.
    forced: Vec<BitSet>,
    allowed: BitSet,
    // mutable state
    chosen: Vec<usize>,
    uses: Vec<u8>,
    open: BTreeSet<usize>,
    filled: u128,
    nodes: u64,
    aborted: bool,
    best: Option<(usize, Triangulation)>,
}

impl<'a> Search<'a> {
    fn new(p: &Polyhedron, c: &'a CandidateSet, spec: &'a SolveSpec, clock: Clock) -> Result<Self, SolveError> {
        let m = c.len();
        let mut triangles: Vec<Triangle> = c.tets().iter().flat_map(|t| t.triangles()).collect();
        triangles.sort_unstable();
        triangles.dedup();
        let tri_index = |t: &Triangle| triangles.binary_search(t).expect("collected above");
        let tri_of: Vec<[usize; 4]> = c.tets().iter().map(|t| t.triangles().map(|tri| tri_index(&tri))).collect();
        let mut tri_boundary = alloc::vec![false; triangles.len()];
        let mut tri_cands: Vec<BitSet> = (0..triangles.len()).map(|_| BitSet::new(m)).collect();
        for (i, tris) in tri_of.iter().enumerate() {
            for (k, &tri) in tris.iter().enumerate() {
                tri_cands[tri].insert(i);
                tri_boundary[tri] |= c.boundary(i)[k];
            }
        }

        let total6 = volume6(p)?;
        let scale = common_denominator((0..m).map(|i| c.volume6(i)).chain([&total6]));
        let to_int = |r: &Rat| r.scaled_to_u128(&scale).ok_or(SolveError::VolumeOverflow);
        let volume = (0..m).map(|i| to_int(c.volume6(i))).collect::<Result<Vec<_>, _>>()?;
        let total = to_int(&total6)?;
        if volume.iter().try_fold(0u128, |acc, v| acc.checked_add(*v)).is_none() {
            return Err(SolveError::VolumeOverflow);
        }

        let mut allowed = BitSet::new(m);
        for (i, tet) in c.tets().iter().enumerate() {
            let forbidden = spec.forbidden_edges.iter().any(|e| tet.has_edge(e.0, e.1));
            let off_surface = spec.surface.as_ref().is_some_and(|s| {
                tet.triangles()
                    .iter()
                    .zip(c.boundary(i))
                    .any(|(tri, on_boundary)| on_boundary && !s.contains(tri))
            });
            if !forbidden && !off_surface {
                allowed.insert(i);
            }
        }
        let forced = spec
            .forced_edges
            .iter()
            .map(|e| {
                let mut s = BitSet::new(m);
                for (i, tet) in c.tets().iter().enumerate() {
                    if tet.has_edge(e.0, e.1) {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();

        Ok(Search {
            c,
            mode: spec.mode,
            spec,
            clock,
            tri_of,
            tri_boundary,
            tri_cands,
            volume,
            total,
            forced,
            allowed,
            chosen: Vec::new(),
            uses: alloc::vec![0; triangles.len()],
            open: BTreeSet::new(),
            filled: 0,
            nodes: 0,
            aborted: false,
            best: None,
        })
    }

    fn run(&mut self) -> SolveResult {
        let roots: Vec<usize> = self.allowed.iter().filter(|&i| self.c.tet(i).contains(0)).collect();
        let mut avail = self.allowed.clone();
        let decided = |s: &Self| matches!(s.mode, Mode::Decide(_)) && s.best.is_some();
        let feasible = self.forced.iter().all(|f| f.intersects(&self.allowed));
        if feasible {
            for &r in &roots {
                if self.aborted || decided(self) {
                    break;
                }
                let mut child = avail.clone();
                child.intersect_with(self.c.compat_row(r));
                self.push(r);
                self.descend(&child);
                self.pop(r);
                // later roots never reuse an earlier one
                avail.remove(r);
            }
        }
        let stats = SolveStats {
            nodes: self.nodes,
            candidates: self.c.len(),
            millis: 0,
        };
        let (value, witness) = match self.best.take() {
            Some((v, w)) => (Some(v), Some(w)),
            None => (None, None),
        };
        let status = if self.aborted {
            Status::Limit
        } else {
            match (self.mode, &witness) {
                (_, None) => Status::Infeasible,
                (Mode::Decide(_), Some(_)) => Status::Feasible,
                (_, Some(_)) => Status::Optimal,
            }
        };
        SolveResult {
            status,
            value,
            witness,
            stats,
        }
    }

    fn push(&mut self, i: usize) {
        self.chosen.push(i);
        self.filled += self.volume[i];
        for k in 0..4 {
            let tri = self.tri_of[i][k];
            self.uses[tri] += 1;
            if self.tri_boundary[tri] {
                continue;
            }
            if self.uses[tri] == 1 {
                self.open.insert(tri);
            } else {
                self.open.remove(&tri);
            }
        }
    }

    fn pop(&mut self, i: usize) {
        let last = self.chosen.pop();
        debug_assert_eq!(last, Some(i));
        self.filled -= self.volume[i];
        for k in 0..4 {
            let tri = self.tri_of[i][k];
            self.uses[tri] -= 1;
            if self.tri_boundary[tri] {
                continue;
            }
            if self.uses[tri] == 1 {
                self.open.insert(tri);
            } else {
                self.open.remove(&tri);
            }
        }
    }

    fn descend(&mut self, avail: &BitSet) {
        self.nodes += 1;
        if self.spec.node_limit.is_some_and(|limit| self.nodes > limit)
            || (self.nodes.is_multiple_of(256) && self.clock.expired())
        {
            self.aborted = true;
            return;
        }
        let Some(&tri) = self.open.first() else {
            self.leaf();
            return;
        };
        if self.pruned(avail) {
            return;
        }
        let mut branches = avail.clone();
        branches.intersect_with(&self.tri_cands[tri]);
        for i in branches.iter() {
            let mut child = avail.clone();
            child.intersect_with(self.c.compat_row(i));
            self.push(i);
            self.descend(&child);
            self.pop(i);
            if self.aborted || (matches!(self.mode, Mode::Decide(_)) && self.best.is_some()) {
                return;
            }
        }
    }

    fn pruned(&self, avail: &BitSet) -> bool {
        let rem = self.total - self.filled;
        let count = self.chosen.len();
        let unrealized = |f: &BitSet| !self.chosen.iter().any(|&i| f.contains(i));
        if self.forced.iter().any(|f| unrealized(f) && !f.intersects(avail)) {
            return true;
        }
        let volumes = avail.iter().map(|i| self.volume[i]);
        match self.mode {
            Mode::Minimize | Mode::Decide(_) => {
                let Some(max) = volumes.max() else {
                    return true;
                };
                let bound = count + rem.div_ceil(max) as usize;
                match (self.mode, &self.best) {
                    (Mode::Decide(k), _) => bound >= k,
                    (_, Some((best, _))) => bound > *best,
                    _ => false,
                }
            }
            Mode::Maximize => {
                let Some(min) = volumes.min() else {
                    return true;
                };
                let bound = count + (rem / min) as usize;
                self.best.as_ref().is_some_and(|(best, _)| bound < *best)
            }
        }
    }

    fn leaf(&mut self) {
        if self.filled != self.total {
            return;
        }
        if !self.forced.iter().all(|f| self.chosen.iter().any(|&i| f.contains(i))) {
            return;
        }
        let count = self.chosen.len();
        if let Mode::Decide(k) = self.mode {
            if count >= k {
                return;
            }
        }
        let witness: Triangulation = self.chosen.iter().map(|&i| self.c.tet(i)).collect();
        let better = match (&self.best, self.mode) {
            (None, _) => true,
            (Some((best, _)), Mode::Minimize) if count != *best => count < *best,
            (Some((best, _)), Mode::Maximize) if count != *best => count > *best,
            (Some((_, w)), _) => witness < *w,
        };
        if better {
            self.best = Some((count, witness));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use alloc::vec;

    fn tets(list: &[[usize; 4]]) -> Triangulation {
        list.iter().map(|&[a, b, c, d]| Tet::new(a, b, c, d).unwrap()).collect()
    }

    fn cube_five() -> Triangulation {
        tets(&[[0, 3, 5, 6], [0, 1, 3, 5], [0, 2, 3, 6], [0, 4, 5, 6], [3, 5, 6, 7]])
    }

    #[test]
    fn checker_accepts_cube_five() {
        assert_eq!(check_triangulation(&gen_cube(), &cube_five(), None), Ok(true));
    }

    #[test]
    fn checker_rejects_volume_deficit() {
        let partial = Triangulation::new(cube_five().tets()[1..].to_vec());
        assert_eq!(check_triangulation(&gen_cube(), &partial, None), Ok(false));
    }

    #[test]
    fn checker_rejects_overlap() {
        // the two tets meet in their interiors near the cube centre
        let t = tets(&[[0, 3, 5, 6], [1, 2, 4, 7]]);
        assert_eq!(check_triangulation(&gen_cube(), &t, None), Ok(false));
        assert_eq!(check_triangulation(&gen_cube(), &Triangulation::default(), None), Ok(false));
    }

    #[test]
    fn checker_surface_constraint() {
        let cube = gen_cube();
        let t = cube_five();
        let mut surface = BTreeSet::new();
        for tet in t.tets() {
            for tri in tet.triangles() {
                if is_boundary_triangle(&cube, &tri) {
                    surface.insert(tri);
                }
            }
        }
        assert_eq!(surface.len(), 12);
        assert_eq!(validate_surface(&cube, &surface), Ok(()));
        assert_eq!(check_triangulation(&cube, &t, Some(&surface)), Ok(true));
        let flipped: BTreeSet<Triangle> = surface
            .iter()
            .filter(|t| t.vertices() != [0, 1, 3] && t.vertices() != [0, 2, 3])
            .copied()
            .chain([Triangle::new(0, 1, 2).unwrap(), Triangle::new(1, 2, 3).unwrap()])
            .collect();
        assert_eq!(validate_surface(&cube, &flipped), Ok(()));
        assert_eq!(check_triangulation(&cube, &t, Some(&flipped)), Ok(false));
    }

    #[test]
    fn surface_validation_errors() {
        let cube = gen_cube();
        let half: BTreeSet<Triangle> = [Triangle::new(0, 1, 3).unwrap()].into();
        assert!(matches!(
            validate_surface(&cube, &half),
            Err(SolveError::InvalidSpec(SpecError::SurfaceDoesNotTile(_)))
        ));
        let across: BTreeSet<Triangle> = [Triangle::new(0, 1, 7).unwrap()].into();
        assert!(matches!(
            validate_surface(&cube, &across),
            Err(SolveError::InvalidSpec(SpecError::SurfaceTriangleOffFace(_)))
        ));
    }

    #[test]
    fn stars() {
        let cube = gen_cube();
        for v in 0..8 {
            let t = star_triangulation(&cube, v).unwrap();
            assert_eq!(t.len(), 6);
            assert_eq!(check_triangulation(&cube, &t, None), Ok(true));
        }
        for v in 0..6 {
            assert_eq!(star_triangulation(&gen_prism(), v).unwrap().len(), 3);
        }
        assert_eq!(star_triangulation(&gen_tetrahedron(), 2).unwrap().len(), 1);
        assert_eq!(star_triangulation(&cube, 8), Err(SolveError::InvalidVertex(8)));
        let s = gen_schoenhardt(&SchoenhardtParams::default()).unwrap();
        assert_eq!(star_triangulation(&s, 0), Err(SolveError::NotConvex));
        let (v, t) = best_star(&cube).unwrap();
        assert_eq!((v, t.len()), (0, 6));
    }

    #[test]
    fn cube_min_and_decide() {
        let cube = gen_cube();
        let c = enumerate_candidates(&cube).unwrap();
        let r = solve(&cube, &c, &SolveSpec::minimize()).unwrap();
        assert_eq!((r.status, r.value), (Status::Optimal, Some(5)));
        // the other 5-tet triangulation is lexicographically first
        let expected = tets(&[[0, 1, 2, 4], [1, 2, 3, 7], [1, 2, 4, 7], [1, 4, 5, 7], [2, 4, 6, 7]]);
        assert_eq!(r.witness, Some(expected));
        assert_eq!(solve(&cube, &c, &SolveSpec::decide(5)).unwrap().status, Status::Infeasible);
        let r = solve(&cube, &c, &SolveSpec::decide(6)).unwrap();
        assert_eq!((r.status, r.value), (Status::Feasible, Some(5)));
    }

    #[test]
    fn cube_max() {
        let cube = gen_cube();
        let r = max_triangulation(&cube).unwrap();
        assert_eq!((r.status, r.value), (Status::Optimal, Some(6)));
        assert_eq!(check_triangulation(&cube, r.witness.as_ref().unwrap(), None), Ok(true));
    }

    #[test]
    fn prism_min_and_surface() {
        let prism = gen_prism();
        let r = min_triangulation(&prism).unwrap();
        assert_eq!((r.status, r.value), (Status::Optimal, Some(3)));
        let (twisted, surface) = gen_prism_twisted_surface();
        let c = enumerate_candidates(&twisted).unwrap();
        let r = solve(&twisted, &c, &SolveSpec::minimize().with_surface(surface)).unwrap();
        assert_eq!(r.status, Status::Infeasible);
    }

    #[test]
    fn schoenhardt_infeasible() {
        let s = gen_schoenhardt(&SchoenhardtParams::default()).unwrap();
        assert_eq!(min_triangulation(&s).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn edge_constraints() {
        let cube = gen_cube();
        let c = enumerate_candidates(&cube).unwrap();
        // Every 5-tet triangulation uses a regular tetrahedron, whose edges
        // are face diagonals; forbidding 0-3 rules out the one on {0,3,5,6}.
        let spec = SolveSpec::minimize().forbid(Edge::new(0, 3).unwrap());
        let r = solve(&cube, &c, &spec).unwrap();
        assert_eq!(r.value, Some(5));
        assert!(!r.witness.as_ref().unwrap().tets().iter().any(|t| t.has_edge(0, 3)));
        assert_eq!(check_solution(&cube, r.witness.as_ref().unwrap(), &spec), Ok(true));
        // the long diagonal forces a non-regular triangulation
        let spec = SolveSpec::minimize().force(Edge::new(0, 7).unwrap());
        let r = solve(&cube, &c, &spec).unwrap();
        assert_eq!(r.value, Some(6));
        assert_eq!(check_solution(&cube, r.witness.as_ref().unwrap(), &spec), Ok(true));
        let both = SolveSpec::minimize().force(Edge::new(0, 7).unwrap()).forbid(Edge::new(7, 0).unwrap());
        assert!(matches!(
            solve(&cube, &c, &both),
            Err(SolveError::InvalidSpec(SpecError::ForcedAndForbidden(_)))
        ));
        let far = SolveSpec::minimize().force(Edge::new(0, 9).unwrap());
        assert!(matches!(solve(&cube, &c, &far), Err(SolveError::InvalidSpec(_))));
    }

    #[test]
    fn node_limit() {
        let cube = gen_cube();
        let c = enumerate_candidates(&cube).unwrap();
        let r = solve(&cube, &c, &SolveSpec::maximize().with_node_limit(3)).unwrap();
        assert_eq!(r.status, Status::Limit);
        assert!(r.stats.nodes <= 4);
    }

    #[test]
    fn edge_normalization() {
        assert_eq!(Edge::new(3, 1), Edge::new(1, 3));
        assert_eq!(Edge::new(2, 2), None);
        assert_eq!(vec![Edge::new(1, 3).unwrap().endpoints()], vec![(1, 3)]);
        assert_eq!(alloc::format!("{}", Status::Infeasible), "INFEASIBLE");
    }

    #[test]
    fn decide_zero_is_infeasible() {
        let cube = gen_cube();
        let c = enumerate_candidates(&cube).unwrap();
        assert_eq!(solve(&cube, &c, &SolveSpec::decide(0)).unwrap().status, Status::Infeasible);
    }
}
