//! Polyhedron data model, validation, volume and the counting bounds.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{orient3d, orient3d_det, Location, Point3, Sign};
use crate::polygon::{ear_clip, locate_in_polygon, newell_normal};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyhedronError {
    #[error("invalid polyhedron: {0}")]
    Invalid(Violation),
    #[error("vertex count {0} is below 4")]
    TooFewVertices(usize),
}

/// A closed orientable polyhedral surface given as explicit face cycles, each
/// counterclockwise when viewed from outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    vertices: Vec<Point3>,
    faces: Vec<Vec<usize>>,
}

impl Polyhedron {
    /// Builds without validation; see [`validate`].
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Self {
        Polyhedron { vertices, faces }
    }

    /// Builds and rejects the result unless [`validate`] reports no violation.
    pub fn validated(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Self, PolyhedronError> {
        let p = Polyhedron::new(vertices, faces);
        p.ensure_valid()?;
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_points(&self, f: usize) -> Vec<Point3> {
        self.faces[f].iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Outward (for a valid polyhedron) Newell normal of face `f`.
    pub fn face_normal(&self, f: usize) -> Point3 {
        newell_normal(&self.face_points(f))
    }

    /// Triangles of face `f` in global indices, oriented like the face.
    pub fn face_triangles(&self, f: usize) -> Option<Vec<[usize; 3]>> {
        let face = &self.faces[f];
        let local = ear_clip(&self.face_points(f))?;
        Some(local.into_iter().map(|t| t.map(|i| face[i])).collect())
    }

    pub fn ensure_valid(&self) -> Result<(), PolyhedronError> {
        match validate(self).violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(PolyhedronError::Invalid(v)),
        }
    }

    /// Classifies `p` against the closed face `f`.
    pub fn locate_on_face(&self, p: &Point3, f: usize) -> Location {
        let pts = self.face_points(f);
        let normal = newell_normal(&pts);
        if !p.sub(&pts[0]).dot(&normal).is_zero() {
            return Location::Outside;
        }
        locate_in_polygon(p, &pts, &normal)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.faces.iter().filter(|f| f.contains(&v)).count()
    }
}

/// Three distinct vertex indices, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle([usize; 3]);

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Option<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        (v[0] != v[1] && v[1] != v[2]).then_some(Triangle(v))
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Four distinct vertex indices, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tet([usize; 4]);

impl Tet {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Option<Self> {
        let mut v = [a, b, c, d];
        v.sort_unstable();
        (v[0] != v[1] && v[1] != v[2] && v[2] != v[3]).then_some(Tet(v))
    }

    pub fn vertices(&self) -> [usize; 4] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.contains(a) && self.contains(b)
    }

    /// The four triangles; triangle `k` omits vertex `k`.
    pub fn triangles(&self) -> [Triangle; 4] {
        let [a, b, c, d] = self.0;
        [
            Triangle([b, c, d]),
            Triangle([a, c, d]),
            Triangle([a, b, d]),
            Triangle([a, b, c]),
        ]
    }

    pub fn points(&self, p: &Polyhedron) -> [Point3; 4] {
        self.0.map(|i| p.vertices[i].clone())
    }

    pub fn volume6(&self, p: &Polyhedron) -> Rat {
        let [a, b, c, d] = self.0.map(|i| &p.vertices[i]);
        orient3d_det(a, b, c, d).abs()
    }
}

impl fmt::Display for Tet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{},{}}}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// A set of tetrahedra kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Triangulation {
    tets: Vec<Tet>,
}

impl Triangulation {
    pub fn new(mut tets: Vec<Tet>) -> Self {
        tets.sort_unstable();
        tets.dedup();
        Triangulation { tets }
    }

    pub fn tets(&self) -> &[Tet] {
        &self.tets
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }
}

impl FromIterator<Tet> for Triangulation {
    fn from_iter<I: IntoIterator<Item = Tet>>(iter: I) -> Self {
        Triangulation::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoFaces,
    FaceTooSmall { face: usize },
    IndexOutOfRange { face: usize, index: usize },
    RepeatedIndex { face: usize },
    DegenerateFace { face: usize },
    NonPlanarFace { face: usize },
    NonSimpleFace { face: usize },
    DuplicateVertex { first: usize, second: usize },
    UnusedVertex { vertex: usize },
    VertexOnFace { vertex: usize, face: usize },
    EdgeNotManifold { a: usize, b: usize, faces: usize },
    InconsistentOrientation { a: usize, b: usize },
    EulerCharacteristic { v: usize, e: usize, f: usize },
    InwardOrientation,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NoFaces => write!(f, "no faces"),
            FaceTooSmall { face } => write!(f, "face {face} has fewer than 3 vertices"),
            IndexOutOfRange { face, index } => {
                write!(f, "face {face} references missing vertex {index}")
            }
            RepeatedIndex { face } => write!(f, "face {face} repeats a vertex"),
            DegenerateFace { face } => write!(f, "face {face} is degenerate (collinear)"),
            NonPlanarFace { face } => write!(f, "face {face} is not planar"),
            NonSimpleFace { face } => write!(f, "face {face} is not a simple polygon"),
            DuplicateVertex { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            UnusedVertex { vertex } => write!(f, "vertex {vertex} is on no face"),
            VertexOnFace { vertex, face } => {
                write!(f, "vertex {vertex} lies on face {face} without belonging to it")
            }
            EdgeNotManifold { a, b, faces } => {
                write!(f, "edge {a}-{b} is used by {faces} faces (expected 2)")
            }
            InconsistentOrientation { a, b } => {
                write!(f, "inconsistent edge orientations on edge {a}-{b}")
            }
            EulerCharacteristic { v, e, f: faces } => {
                write!(f, "V - E + F = {v} - {e} + {faces} != 2")
            }
            InwardOrientation => write!(f, "faces are oriented inward (negative volume)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Meaningful only when there are no violations.
    pub convex: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural and geometric invariant of a polyhedron and
/// reports convexity.
pub fn validate(p: &Polyhedron) -> ValidationReport {
    let n = p.vertices.len();
    let mut violations = Vec::new();
    if p.faces.is_empty() {
        violations.push(Violation::NoFaces);
    }

    let mut structurally_ok = true;
    for (fi, face) in p.faces.iter().enumerate() {
        if face.len() < 3 {
            violations.push(Violation::FaceTooSmall { face: fi });
            structurally_ok = false;
        }
        if let Some(&index) = face.iter().find(|&&i| i >= n) {
            violations.push(Violation::IndexOutOfRange { face: fi, index });
            structurally_ok = false;
        }
        let mut sorted = face.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            violations.push(Violation::RepeatedIndex { face: fi });
            structurally_ok = false;
        }
    }

    // directed edge -> count, keyed by undirected pair
    let mut edges: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for face in &p.faces {
        for i in 0..face.len() {
            let (a, b) = (face[i], face[(i + 1) % face.len()]);
            let entry = edges.entry((a.min(b), a.max(b))).or_insert((0, 0));
            if a < b {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
    }
    for (&(a, b), &(fwd, bwd)) in &edges {
        if fwd + bwd != 2 {
            violations.push(Violation::EdgeNotManifold { a, b, faces: fwd + bwd });
        } else if fwd != 1 {
            violations.push(Violation::InconsistentOrientation { a, b });
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            if p.vertices[i] == p.vertices[j] {
                violations.push(Violation::DuplicateVertex { first: i, second: j });
            }
        }
    }
    let mut used = alloc::vec![false; n];
    for face in &p.faces {
        for &i in face.iter().filter(|&&i| i < n) {
            used[i] = true;
        }
    }
    for (vertex, _) in used.iter().enumerate().filter(|(_, &u)| !u) {
        violations.push(Violation::UnusedVertex { vertex });
    }

    let e = edges.len();
    let f = p.faces.len();
    if n + f != e + 2 {
        violations.push(Violation::EulerCharacteristic { v: n, e, f });
    }

    let mut convex = false;
    if structurally_ok && !p.faces.is_empty() {
        let mut geometric_ok = true;
        for fi in 0..f {
            let pts = p.face_points(fi);
            let normal = newell_normal(&pts);
            let Some(base) = (1..pts.len())
                .flat_map(|j| (j + 1..pts.len()).map(move |k| (j, k)))
                .find(|&(j, k)| !pts[j].sub(&pts[0]).cross(&pts[k].sub(&pts[0])).is_zero())
            else {
                violations.push(Violation::DegenerateFace { face: fi });
                geometric_ok = false;
                continue;
            };
            if pts
                .iter()
                .any(|q| !orient3d(&pts[0], &pts[base.0], &pts[base.1], q).is_zero())
            {
                violations.push(Violation::NonPlanarFace { face: fi });
                geometric_ok = false;
                continue;
            }
            if normal.is_zero() || p.face_triangles(fi).is_none() {
                violations.push(Violation::NonSimpleFace { face: fi });
                geometric_ok = false;
                continue;
            }
            for v in 0..n {
                if !p.faces[fi].contains(&v)
                    && p.vertices[v].sub(&pts[0]).dot(&normal).is_zero()
                    && locate_in_polygon(&p.vertices[v], &pts, &normal) != Location::Outside
                {
                    violations.push(Violation::VertexOnFace { vertex: v, face: fi });
                }
            }
        }
        if geometric_ok {
            if signed_volume6(p).sign() != Sign::Positive {
                violations.push(Violation::InwardOrientation);
            }
            convex = (0..f).all(|fi| {
                let pts = p.face_points(fi);
                let normal = newell_normal(&pts);
                (0..n)
                    .filter(|v| !p.faces[fi].contains(v))
                    .all(|v| p.vertices[v].sub(&pts[0]).dot(&normal).sign() == Sign::Negative)
            });
        }
    }

    ValidationReport {
        convex: convex && violations.is_empty(),
        violations,
        vertex_count: n,
        edge_count: e,
        face_count: f,
    }
}

/// Sum over faces of signed tetrahedra from the origin to a fan of each face.
/// Correct whether or not the origin is inside: the signed contributions of
/// the far side cancel.
fn signed_volume6(p: &Polyhedron) -> Rat {
    let origin = Point3::default();
    let mut total = Rat::zero();
    for face in &p.faces {
        let apex = &p.vertices[face[0]];
        for k in 1..face.len() - 1 {
            total += &orient3d_det(&origin, apex, &p.vertices[face[k]], &p.vertices[face[k + 1]]);
        }
    }
    total
}

/// Six times the enclosed volume.
pub fn volume6(p: &Polyhedron) -> Result<Rat, PolyhedronError> {
    p.ensure_valid()?;
    Ok(signed_volume6(p))
}

pub fn is_simplicial(p: &Polyhedron) -> Result<bool, PolyhedronError> {
    p.ensure_valid()?;
    Ok(p.faces.iter().all(|f| f.len() == 3))
}

/// `F = 2n - 4` for simplicial polyhedra; vacuously true otherwise.
pub fn face_count_identity(p: &Polyhedron) -> Result<bool, PolyhedronError> {
    Ok(!is_simplicial(p)? || p.face_count() + 4 == 2 * p.vertex_count())
}

/// Smallest and largest possible triangulation sizes of a convex polyhedron
/// with `n` vertices: `n - 3` and `C(n, 2) - 2n + 3`.
pub fn bounds(n: usize) -> Result<(usize, usize), PolyhedronError> {
    if n < 4 {
        return Err(PolyhedronError::TooFewVertices(n));
    }
    Ok((n - 3, n * (n - 1) / 2 + 3 - 2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cube, gen_prism, gen_schoenhardt, gen_tetrahedron, SchoenhardtParams};
    use alloc::vec;

    #[test]
    fn bounds_examples() {
        assert_eq!(bounds(4), Ok((1, 1)));
        assert_eq!(bounds(8), Ok((5, 15)));
        assert_eq!(bounds(6), Ok((3, 6)));
        assert_eq!(bounds(3), Err(PolyhedronError::TooFewVertices(3)));
    }

    #[test]
    fn cube_validates_convex() {
        let report = validate(&gen_cube());
        assert!(report.is_ok(), "{:?}", report.violations);
        assert!(report.convex);
        assert_eq!((report.vertex_count, report.edge_count, report.face_count), (8, 12, 6));
    }

    #[test]
    fn reversed_face_is_reported() {
        let cube = gen_cube();
        let mut faces = cube.faces().to_vec();
        faces[0].reverse();
        let bad = Polyhedron::new(cube.vertices().to_vec(), faces);
        let report = validate(&bad);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::InconsistentOrientation { .. })));
    }

    #[test]
    fn all_faces_reversed_is_inward() {
        let cube = gen_cube();
        let faces = cube.faces().iter().map(|f| f.iter().rev().copied().collect()).collect();
        let bad = Polyhedron::new(cube.vertices().to_vec(), faces);
        assert_eq!(validate(&bad).violations, vec![Violation::InwardOrientation]);
    }

    #[test]
    fn structural_violations() {
        let cube = gen_cube();
        let mut faces = cube.faces().to_vec();
        faces[1][0] = 42;
        faces.pop();
        let report = validate(&Polyhedron::new(cube.vertices().to_vec(), faces));
        assert!(report.violations.contains(&Violation::IndexOutOfRange { face: 1, index: 42 }));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::EdgeNotManifold { .. })));
        assert!(!report.is_ok());
        assert!(!report.convex);
    }

    #[test]
    fn nonplanar_face_detected() {
        let mut verts = gen_cube().vertices().to_vec();
        verts[7] = Point3::new(Rat::one(), Rat::one(), Rat::new(3, 2));
        let report = validate(&Polyhedron::new(verts, gen_cube().faces().to_vec()));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NonPlanarFace { .. })));
    }

    #[test]
    fn volumes() {
        assert_eq!(volume6(&gen_cube()), Ok(Rat::from_int(6)));
        assert_eq!(volume6(&gen_tetrahedron()), Ok(Rat::one()));
        assert_eq!(volume6(&gen_prism()), Ok(Rat::from_int(3)));
    }

    #[test]
    fn volume_ignores_origin_position() {
        let shift = Point3::from_ints(-7, 3, 11);
        let cube = gen_cube();
        let moved = Polyhedron::new(
            cube.vertices().iter().map(|v| v.add(&shift)).collect(),
            cube.faces().to_vec(),
        );
        assert_eq!(volume6(&moved), Ok(Rat::from_int(6)));
    }

    #[test]
    fn simpliciality() {
        assert_eq!(is_simplicial(&gen_cube()), Ok(false));
        assert_eq!(face_count_identity(&gen_cube()), Ok(true));
        let s = gen_schoenhardt(&SchoenhardtParams::default()).unwrap();
        assert_eq!(is_simplicial(&s), Ok(true));
        assert_eq!(s.face_count(), 8);
        assert_eq!(face_count_identity(&s), Ok(true));
    }

    #[test]
    fn tet_and_triangle_normalize() {
        assert_eq!(Tet::new(5, 0, 3, 6).unwrap().vertices(), [0, 3, 5, 6]);
        assert!(Tet::new(1, 1, 2, 3).is_none());
        assert_eq!(Triangle::new(2, 0, 1).unwrap().vertices(), [0, 1, 2]);
        let t = Tet::new(0, 1, 2, 3).unwrap();
        assert_eq!(t.triangles()[0], Triangle::new(1, 2, 3).unwrap());
        let tri = Triangulation::new(vec![Tet::new(3, 5, 6, 7).unwrap(), Tet::new(0, 1, 3, 5).unwrap()]);
        assert_eq!(tri.tets()[0].vertices(), [0, 1, 3, 5]);
    }
}
