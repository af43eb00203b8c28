//! Candidate tetrahedra of an instance and their pairwise compatibility.
//!
//! A candidate is any non-degenerate tetrahedron on the polyhedron's vertices
//! that lies inside the solid. Two candidates are compatible when they meet
//! face to face; the solver only ever combines pairwise compatible ones.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bitset::BitSet;
use crate::geometry::{
    meet_properly, orient3d_det, point_in_simplex, Location, OrientTable, Orientation, Point3, Sign,
};
use crate::polygon::{locate_in_polygon, newell_normal};
use crate::polyhedron::{validate, Polyhedron, PolyhedronError, Tet, Triangle};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContainmentError {
    #[error(transparent)]
    InvalidPolyhedron(#[from] PolyhedronError),
    #[error("every ray direction hit an edge, vertex or face plane")]
    RetriesExhausted,
}

const RAY_DIRECTIONS: usize = 64;

struct Face {
    points: Vec<Point3>,
    normal: Point3,
}

/// Per-face geometry of a validated polyhedron, built once per query batch.
struct Surface {
    faces: Vec<Face>,
    triangles: Vec<[Point3; 3]>,
}

impl Surface {
    fn new(p: &Polyhedron) -> Self {
        let faces = (0..p.face_count())
            .map(|f| {
                let points = p.face_points(f);
                let normal = newell_normal(&points);
                Face { points, normal }
            })
            .collect();
        let triangles = (0..p.face_count())
            .flat_map(|f| p.face_triangles(f).expect("validated faces are simple"))
            .map(|t| t.map(|i| p.vertices()[i].clone()))
            .collect();
        Surface { faces, triangles }
    }

    fn locate(&self, p: &Point3) -> Result<Location, ContainmentError> {
        for face in &self.faces {
            if p.sub(&face.points[0]).dot(&face.normal).is_zero()
                && locate_in_polygon(p, &face.points, &face.normal) != Location::Outside
            {
                return Ok(Location::Boundary);
            }
        }
        'directions: for dir in ray_directions() {
            let mut crossings = 0usize;
            for face in &self.faces {
                let height = face.points[0].sub(p).dot(&face.normal);
                let speed = dir.dot(&face.normal);
                if speed.is_zero() {
                    if height.is_zero() {
                        // ray runs inside the face plane
                        continue 'directions;
                    }
                    continue;
                }
                let t = &height / &speed;
                if t.sign() != Sign::Positive {
                    continue;
                }
                let hit = p.add(&dir.scale(&t));
                match locate_in_polygon(&hit, &face.points, &face.normal) {
                    Location::Interior => crossings += 1,
                    Location::Boundary => continue 'directions,
                    Location::Outside => {}
                }
            }
            return Ok(if crossings % 2 == 1 {
                Location::Interior
            } else {
                Location::Outside
            });
        }
        Err(ContainmentError::RetriesExhausted)
    }

    /// Does the open tetrahedron meet the closed surface?
    fn interior_meets_surface(&self, tet: &[Point3; 4]) -> bool {
        let planes = inward_planes(tet);
        self.triangles.iter().any(|tri| {
            let mut poly: Vec<Point3> = tri.to_vec();
            for plane in &planes {
                poly = clip(&poly, plane);
                if poly.is_empty() {
                    return false;
                }
            }
            // The clipped polygon is (tet ∩ triangle); its vertex centroid is in
            // its relative interior, which lies in the open tet iff the open tet
            // meets the triangle at all.
            let c = Point3::centroid(poly.iter());
            point_in_simplex(&c, tet) == Ok(Location::Interior)
        })
    }
}

/// Fixed pseudo-random integer directions, identical on every run.
fn ray_directions() -> impl Iterator<Item = Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a_0001);
    core::iter::from_fn(move || loop {
        let c = [0; 3].map(|_| (rng.next_u64() % 195) as i64 - 97);
        if c != [0, 0, 0] {
            return Some(Point3::from_ints(c[0], c[1], c[2]));
        }
    })
    .take(RAY_DIRECTIONS)
}

/// Affine functionals, positive inside the tet, one per facet.
struct Plane {
    base: [Point3; 3],
    flip: bool,
}

impl Plane {
    fn eval(&self, x: &Point3) -> Rat {
        let d = orient3d_det(&self.base[0], &self.base[1], &self.base[2], x);
        if self.flip {
            -d
        } else {
            d
        }
    }
}

fn inward_planes(tet: &[Point3; 4]) -> [Plane; 4] {
    core::array::from_fn(|k| {
        let base: [Point3; 3] = core::array::from_fn(|j| tet[if j < k { j } else { j + 1 }].clone());
        let flip = orient3d_det(&base[0], &base[1], &base[2], &tet[k]).sign() == Sign::Negative;
        Plane { base, flip }
    })
}

/// Sutherland-Hodgman step: keeps the part of a convex polygon where the
/// functional is non-negative.
fn clip(poly: &[Point3], plane: &Plane) -> Vec<Point3> {
    let values: Vec<Rat> = poly.iter().map(|p| plane.eval(p)).collect();
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (hi, hj) = (&values[i], &values[j]);
        if hi.sign() != Sign::Negative {
            out.push(poly[i].clone());
        }
        let crosses = matches!(
            (hi.sign(), hj.sign()),
            (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive)
        );
        if crosses && poly.len() > 1 {
            let t = hi / &(hi - hj);
            out.push(poly[i].add(&poly[j].sub(&poly[i]).scale(&t)));
        }
    }
    out
}

/// Exact point classification against a validated polyhedron by ray
/// casting; directions that graze an edge, a vertex, or run within a face
/// plane are discarded and the next direction is tried.
pub fn point_in_polyhedron(p: &Point3, poly: &Polyhedron) -> Result<Location, ContainmentError> {
    poly.ensure_valid()?;
    Surface::new(poly).locate(p)
}

/// Is the closed tetrahedron contained in the solid?
///
/// For convex solids this always holds. Otherwise containment is equivalent
/// to the open tetrahedron missing the boundary surface while its centroid
/// is interior.
pub fn tet_in_polyhedron(t: &Tet, poly: &Polyhedron) -> Result<bool, ContainmentError> {
    let report = validate(poly);
    if let Some(v) = report.violations.into_iter().next() {
        return Err(PolyhedronError::Invalid(v).into());
    }
    if report.convex {
        return Ok(true);
    }
    tet_in_solid(t, poly, &Surface::new(poly))
}

fn tet_in_solid(t: &Tet, poly: &Polyhedron, surface: &Surface) -> Result<bool, ContainmentError> {
    let pts = t.points(poly);
    if surface.interior_meets_surface(&pts) {
        return Ok(false);
    }
    Ok(surface.locate(&Point3::centroid(pts.iter()))? == Location::Interior)
}

/// True iff all three vertices of `tri` belong to one face.
pub fn is_boundary_triangle(poly: &Polyhedron, tri: &Triangle) -> bool {
    let v = tri.vertices();
    poly.faces().iter().any(|f| v.iter().all(|i| f.contains(i)))
}

/// Counts gathered while enumerating candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CandidateCounts {
    pub subsets: usize,
    pub degenerate: usize,
    pub outside: usize,
}

#[derive(Debug, Clone)]
pub struct CandidateSet {
    tets: Vec<Tet>,
    compat: Vec<BitSet>,
    volume6: Vec<Rat>,
    boundary: Vec<[bool; 4]>,
    counts: CandidateCounts,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    pub fn tets(&self) -> &[Tet] {
        &self.tets
    }

    pub fn tet(&self, i: usize) -> Tet {
        self.tets[i]
    }

    pub fn index_of(&self, t: &Tet) -> Option<usize> {
        self.tets.binary_search(t).ok()
    }

    pub fn compatible(&self, i: usize, j: usize) -> bool {
        self.compat[i].contains(j)
    }

    /// Candidates compatible with `i`.
    pub fn compat_row(&self, i: usize) -> &BitSet {
        &self.compat[i]
    }

    pub fn volume6(&self, i: usize) -> &Rat {
        &self.volume6[i]
    }

    /// Entry `k` tells whether triangle `k` of the tet (the one omitting its
    /// `k`-th vertex) lies on the polyhedron's surface.
    pub fn boundary(&self, i: usize) -> [bool; 4] {
        self.boundary[i]
    }

    pub fn counts(&self) -> CandidateCounts {
        self.counts
    }
}

/// All admissible tetrahedra in lexicographic order, with their compatibility
/// relation, volumes and boundary triangles.
pub fn enumerate_candidates(poly: &Polyhedron) -> Result<CandidateSet, ContainmentError> {
    let report = validate(poly);
    if let Some(v) = report.violations.into_iter().next() {
        return Err(PolyhedronError::Invalid(v).into());
    }
    let surface = (!report.convex).then(|| Surface::new(poly));
    let table = OrientTable::new(poly.vertices());
    let n = poly.vertex_count();

    let mut counts = CandidateCounts::default();
    let mut tets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    counts.subsets += 1;
                    if table.orient(a, b, c, d).is_zero() {
                        counts.degenerate += 1;
                        continue;
                    }
                    let t = Tet::new(a, b, c, d).expect("distinct indices");
                    if let Some(surface) = &surface {
                        if !tet_in_solid(&t, poly, surface)? {
                            counts.outside += 1;
                            continue;
                        }
                    }
                    tets.push(t);
                }
            }
        }
    }

    let m = tets.len();
    let mut compat: Vec<BitSet> = (0..m).map(|_| BitSet::new(m)).collect();
    for i in 0..m {
        for j in i + 1..m {
            if meet_properly(&table, &tets[i].vertices(), &tets[j].vertices()) {
                compat[i].insert(j);
                compat[j].insert(i);
            }
        }
    }
    let volume6 = tets.iter().map(|t| t.volume6(poly)).collect();
    let boundary = tets
        .iter()
        .map(|t| t.triangles().map(|tri| is_boundary_triangle(poly, &tri)))
        .collect();
    Ok(CandidateSet {
        tets,
        compat,
        volume6,
        boundary,
        counts,
    })
}
