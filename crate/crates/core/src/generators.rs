//! Constructors for the benchmark polyhedra.
//!
//! All coordinates are chosen rational witnesses. Every geometric property a
//! generator promises (convexity, reflex diagonals, an interior axis) is
//! re-checked with the exact predicates before the polyhedron is returned.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::candidates::point_in_polyhedron;
use crate::geometry::{orient3d, Location, Point3, Sign};
use crate::polyhedron::{validate, Polyhedron, Triangle};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("generated polyhedron failed certification: {0}")]
    Certification(&'static str),
    #[error("no valid sample after {0} attempts")]
    RetriesExhausted(usize),
}

/// Parameters of a twisted triangular prism with three reflex diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchoenhardtParams {
    /// `(cos, sin)` of the twist of the top triangle, a rational point on the
    /// unit circle strictly between 0 and 60 degrees.
    pub twist: (Rat, Rat),
    pub height: Rat,
    /// Scale of the bottom triangle relative to the top; 1 is the classic
    /// solid, larger values give the enlarged-base variant.
    pub base_scale: Rat,
}

impl Default for SchoenhardtParams {
    fn default() -> Self {
        SchoenhardtParams {
            twist: (Rat::new(24, 25), Rat::new(7, 25)),
            height: Rat::from_int(3),
            base_scale: Rat::one(),
        }
    }
}

impl SchoenhardtParams {
    pub fn enlarged() -> Self {
        SchoenhardtParams {
            base_scale: Rat::from_int(2),
            ..Default::default()
        }
    }

    pub fn check(&self) -> Result<(), GeneratorError> {
        let (c, s) = &self.twist;
        if c * c + s * s != Rat::one() {
            return Err(GeneratorError::InvalidParams("twist is not on the unit circle"));
        }
        if s.sign() != Sign::Positive || c <= &Rat::new(1, 2) {
            return Err(GeneratorError::InvalidParams(
                "twist angle must lie strictly between 0 and 60 degrees",
            ));
        }
        if self.height.sign() != Sign::Positive {
            return Err(GeneratorError::InvalidParams("height must be positive"));
        }
        if self.base_scale < 1 {
            return Err(GeneratorError::InvalidParams("base scale must be at least 1"));
        }
        Ok(())
    }
}

/// Parameters of the fan: a double pyramid over a long circular arc whose
/// axis `ab` is an interior diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanParams {
    /// Number of gaps between consecutive arc points (`m`); there are `m + 1`
    /// arc points.
    pub spokes: usize,
    /// Arc points use half-angle tangents evenly spaced in `[-reach, reach]`;
    /// the arc exceeds a half circle iff `reach > 1`.
    pub reach: Rat,
}

impl FanParams {
    pub fn new(spokes: usize) -> Self {
        FanParams {
            spokes,
            reach: Rat::from_int(2),
        }
    }
}

fn pt(x: Rat, y: Rat, z: Rat) -> Point3 {
    Point3::new(x, y, z)
}

fn faces(list: &[&[usize]]) -> Vec<Vec<usize>> {
    list.iter().map(|f| f.to_vec()).collect()
}

/// The unit right-handed frame `(0,0,0), (1,0,0), (0,1,0), (0,0,1)`.
pub fn gen_tetrahedron() -> Polyhedron {
    Polyhedron::new(
        vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 1),
        ],
        faces(&[&[0, 2, 1], &[0, 1, 3], &[0, 3, 2], &[1, 2, 3]]),
    )
}

/// `{0,1}^3` with vertex `i` at `(i & 1, (i >> 1) & 1, (i >> 2) & 1)`.
pub fn gen_cube() -> Polyhedron {
    let vertices = (0..8i64)
        .map(|i| Point3::from_ints(i & 1, (i >> 1) & 1, (i >> 2) & 1))
        .collect();
    Polyhedron::new(
        vertices,
        faces(&[
            &[0, 2, 3, 1],
            &[4, 5, 7, 6],
            &[0, 1, 5, 4],
            &[2, 6, 7, 3],
            &[0, 4, 6, 2],
            &[1, 3, 7, 5],
        ]),
    )
}

/// Right prism over the unit right triangle, height 1; vertex `i + 3` sits
/// above vertex `i`.
pub fn gen_prism() -> Polyhedron {
    Polyhedron::new(
        vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 1),
            Point3::from_ints(1, 0, 1),
            Point3::from_ints(0, 1, 1),
        ],
        faces(&[&[0, 2, 1], &[3, 4, 5], &[0, 1, 4, 3], &[1, 2, 5, 4], &[2, 0, 3, 5]]),
    )
}

/// The prism together with a surface triangulation whose three side
/// diagonals `i -> (i + 1) % 3 + 3` all turn the same way.
pub fn gen_prism_twisted_surface() -> (Polyhedron, BTreeSet<Triangle>) {
    let prism = gen_prism();
    let mut surface = BTreeSet::new();
    surface.insert(Triangle::new(0, 1, 2).unwrap());
    surface.insert(Triangle::new(3, 4, 5).unwrap());
    for i in 0..3 {
        let (b0, b1) = (i, (i + 1) % 3);
        let (t0, t1) = (b0 + 3, b1 + 3);
        surface.insert(Triangle::new(b0, b1, t1).unwrap());
        surface.insert(Triangle::new(b0, t1, t0).unwrap());
    }
    (prism, surface)
}

/// Reference triangle with centroid at the origin, close to equilateral.
fn schoenhardt_reference() -> [(Rat, Rat); 3] {
    [
        (Rat::from_int(2), Rat::zero()),
        (Rat::from_int(-1), Rat::new(7, 4)),
        (Rat::from_int(-1), Rat::new(-7, 4)),
    ]
}

/// Bottom vertices `0..3` at `z = 0`, top vertices `3..6` at `z = height`,
/// top vertex `i + 3` being bottom vertex `i` (unscaled) turned clockwise by
/// the twist, so the surface diagonals `(bottom i + 1, top i)` fold inward.
pub fn gen_schoenhardt(params: &SchoenhardtParams) -> Result<Polyhedron, GeneratorError> {
    params.check()?;
    let (c, s) = &params.twist;
    let reference = schoenhardt_reference();
    let mut vertices = Vec::with_capacity(6);
    for (x, y) in &reference {
        vertices.push(pt(x * &params.base_scale, y * &params.base_scale, Rat::zero()));
    }
    for (x, y) in &reference {
        vertices.push(pt(c * x + s * y, c * y - s * x, params.height.clone()));
    }
    let mut fs = vec![vec![0, 2, 1], vec![3, 4, 5]];
    for i in 0..3 {
        let (b0, b1) = (i, (i + 1) % 3);
        let (t0, t1) = (b0 + 3, b1 + 3);
        fs.push(vec![b0, b1, t0]);
        fs.push(vec![b1, t1, t0]);
    }
    let p = Polyhedron::new(vertices, fs);
    let report = validate(&p);
    if !report.is_ok() {
        return Err(GeneratorError::Certification("twisted prism does not validate"));
    }
    if report.convex {
        return Err(GeneratorError::Certification("twisted prism came out convex"));
    }
    for (b, t) in schoenhardt_reflex_diagonals() {
        let mid = Point3::centroid([&p.vertices()[b], &p.vertices()[t]]);
        if point_in_polyhedron(&mid, &p) != Ok(Location::Outside) {
            return Err(GeneratorError::Certification("a long diagonal is not reflex"));
        }
    }
    Ok(p)
}

/// The three side diagonals `(bottom i, top i + 1)` missing from the surface,
/// which pass outside the twisted prism.
pub fn schoenhardt_reflex_diagonals() -> [(usize, usize); 3] {
    [(0, 4), (1, 5), (2, 3)]
}

/// Apex `a = 0` at `(0,0,1)`, apex `b = 1` at `(0,0,-1)`, arc points `2..`
/// on the unit circle in `z = 0`.
pub fn gen_fan(params: &FanParams) -> Result<Polyhedron, GeneratorError> {
    let m = params.spokes;
    if m < 3 {
        return Err(GeneratorError::InvalidParams("a fan needs at least 3 spokes"));
    }
    if params.reach <= 1 {
        return Err(GeneratorError::InvalidParams("arc must exceed a half circle (reach > 1)"));
    }
    let mut vertices = vec![Point3::from_ints(0, 0, 1), Point3::from_ints(0, 0, -1)];
    for k in 0..=m {
        let t = -&params.reach + &params.reach * Rat::new(2 * k as i64, m as i64);
        let t2 = &t * &t;
        let denom = Rat::one() + &t2;
        vertices.push(pt(
            (Rat::one() - &t2) / &denom,
            (Rat::from_int(2) * &t) / &denom,
            Rat::zero(),
        ));
    }
    let arc = |k: usize| 2 + k;
    let mut fs = Vec::with_capacity(2 * m + 2);
    for k in 0..=m {
        let (p, q) = (arc(k), arc((k + 1) % (m + 1)));
        fs.push(vec![0, p, q]);
        fs.push(vec![1, q, p]);
    }
    let poly = Polyhedron::new(vertices, fs);
    let report = validate(&poly);
    if !report.is_ok() || !report.convex {
        return Err(GeneratorError::Certification("fan is not a valid convex polyhedron"));
    }
    let mid = Point3::centroid([&poly.vertices()[0], &poly.vertices()[1]]);
    if point_in_polyhedron(&mid, &poly) != Ok(Location::Interior) {
        return Err(GeneratorError::Certification("axis diagonal is not interior"));
    }
    Ok(poly)
}

const RANDOM_GRID: i64 = 100;
const RANDOM_ATTEMPTS: usize = 1000;

/// A random convex polyhedron with exactly `n` vertices in general position,
/// sampled near the unit sphere on a grid of step 1/100. Deterministic in
/// `(n, seed)`.
pub fn gen_random_convex(n: usize, seed: u64) -> Result<Polyhedron, GeneratorError> {
    if n < 4 {
        return Err(GeneratorError::InvalidParams("need at least 4 vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (2 * RANDOM_GRID + 1) as u64;
    let lo = RANDOM_GRID * RANDOM_GRID * 16 / 25;
    let hi = RANDOM_GRID * RANDOM_GRID;
    for _ in 0..RANDOM_ATTEMPTS {
        let mut coords: Vec<[i64; 3]> = Vec::with_capacity(n);
        while coords.len() < n {
            let c = [0; 3].map(|_| (rng.next_u64() % span) as i64 - RANDOM_GRID);
            let r2: i64 = c.iter().map(|v| v * v).sum();
            if (lo..=hi).contains(&r2) {
                coords.push(c);
            }
        }
        let points: Vec<Point3> = coords
            .iter()
            .map(|c| {
                let [x, y, z] = c.map(|v| Rat::new(v, RANDOM_GRID));
                pt(x, y, z)
            })
            .collect();
        if let Some(p) = hull_in_general_position(points) {
            return Ok(p);
        }
    }
    Err(GeneratorError::RetriesExhausted(RANDOM_ATTEMPTS))
}

/// Convex hull of points with no four coplanar, by testing every triple as
/// a supporting plane. Returns `None` if the points are not in general
/// position or some point is not a hull vertex.
fn hull_in_general_position(points: Vec<Point3>) -> Option<Polyhedron> {
    let n = points.len();
    let mut fs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut side = None;
                let mut supporting = true;
                for l in (0..n).filter(|&l| l != i && l != j && l != k) {
                    let s = orient3d(&points[i], &points[j], &points[k], &points[l]);
                    if s.is_zero() {
                        return None;
                    }
                    match side {
                        None => side = Some(s),
                        Some(prev) if prev != s => {
                            supporting = false;
                            break;
                        }
                        _ => {}
                    }
                }
                if supporting {
                    fs.push(match side {
                        Some(Sign::Positive) => vec![i, k, j],
                        _ => vec![i, j, k],
                    });
                }
            }
        }
    }
    let poly = Polyhedron::new(points, fs);
    let report = validate(&poly);
    (report.is_ok() && report.convex).then_some(poly)
}
