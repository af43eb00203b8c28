//! Exact geometric predicates on rational points.
//!
//! Everything here is decided by signs of exact rational determinants; there is
//! no floating-point stage. The face-to-face test between simplices is written
//! once against the [`Orientation`] trait so the candidate builder can run it
//! over a precomputed sign table while the free functions run it over raw
//! points.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl Point3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(Rat::from_int(x), Rat::from_int(y), Rat::from_int(z))
    }

    pub fn sub(&self, other: &Point3) -> Point3 {
        Point3::new(&self.x - &other.x, &self.y - &other.y, &self.z - &other.z)
    }

    pub fn add(&self, other: &Point3) -> Point3 {
        Point3::new(&self.x + &other.x, &self.y + &other.y, &self.z + &other.z)
    }

    pub fn scale(&self, k: &Rat) -> Point3 {
        Point3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn dot(&self, other: &Point3) -> Rat {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Point3) -> Point3 {
        Point3::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coord(&self, axis: usize) -> &Rat {
        match axis {
            0 => &self.x,
            1 => &self.y,
            _ => &self.z,
        }
    }

    /// Arithmetic mean of a non-empty point list.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Point3>) -> Point3 {
        let mut sum = Point3::default();
        let mut count = 0i64;
        for p in points {
            sum = sum.add(p);
            count += 1;
        }
        assert!(count > 0, "centroid of an empty point list");
        sum.scale(&Rat::new(1, count))
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Sign {
        match v {
            v if v < 0 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Where a point sits relative to a closed simplex or solid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Outside,
    Boundary,
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("simplex vertices are affinely dependent")]
    DegenerateSimplex,
    #[error("a simplex needs 1 to 4 vertices, got {0}")]
    SimplexSize(usize),
}

/// Signed `det[b - a, c - a, d - a]`, i.e. six times the signed volume.
pub fn orient3d_det(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Rat {
    let u = b.sub(a);
    let v = c.sub(a);
    let w = d.sub(a);
    u.cross(&v).dot(&w)
}

/// Positive iff `d` lies on the positive side of the oriented plane `(a, b, c)`,
/// the side a right-handed frame `(a, b, c)` points to.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    orient3d_det(a, b, c, d).sign()
}

/// Six times the unsigned volume of the tetrahedron `abcd`.
pub fn tet_volume6(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Rat {
    orient3d_det(a, b, c, d).abs()
}

pub fn collinear(a: &Point3, b: &Point3, c: &Point3) -> bool {
    b.sub(a).cross(&c.sub(a)).is_zero()
}

/// Side of `p` relative to the directed line `u -> v`, measured inside a plane
/// with normal `normal`. All points are assumed to lie in that plane.
pub(crate) fn side_in_plane(u: &Point3, v: &Point3, p: &Point3, normal: &Point3) -> Sign {
    v.sub(u).cross(&p.sub(u)).dot(normal).sign()
}

fn check_simplex(points: &[Point3]) -> Result<(), GeometryError> {
    let ok = match points.len() {
        1 => true,
        2 => points[0] != points[1],
        3 => !collinear(&points[0], &points[1], &points[2]),
        4 => !orient3d(&points[0], &points[1], &points[2], &points[3]).is_zero(),
        n => return Err(GeometryError::SimplexSize(n)),
    };
    if ok {
        Ok(())
    } else {
        Err(GeometryError::DegenerateSimplex)
    }
}

/// Classifies `p` against the closed simplex spanned by `simplex`. For lower
/// dimensional simplices `Interior` means the relative interior.
pub fn point_in_simplex(p: &Point3, simplex: &[Point3]) -> Result<Location, GeometryError> {
    check_simplex(simplex)?;
    Ok(locate_coords(p, simplex))
}

fn locate_coords(p: &Point3, s: &[Point3]) -> Location {
    match s.len() {
        1 => {
            if *p == s[0] {
                Location::Interior
            } else {
                Location::Outside
            }
        }
        2 => locate_on_segment(p, &s[0], &s[1]),
        3 => {
            if !orient3d(&s[0], &s[1], &s[2], p).is_zero() {
                return Location::Outside;
            }
            let normal = s[1].sub(&s[0]).cross(&s[2].sub(&s[0]));
            let signs = [
                side_in_plane(&s[0], &s[1], p, &normal),
                side_in_plane(&s[1], &s[2], p, &normal),
                side_in_plane(&s[2], &s[0], p, &normal),
            ];
            classify_signs(&signs, Sign::Positive)
        }
        _ => {
            let orientation = orient3d(&s[0], &s[1], &s[2], &s[3]);
            let signs = [
                orient3d(p, &s[1], &s[2], &s[3]),
                orient3d(&s[0], p, &s[2], &s[3]),
                orient3d(&s[0], &s[1], p, &s[3]),
                orient3d(&s[0], &s[1], &s[2], p),
            ];
            classify_signs(&signs, orientation)
        }
    }
}

fn locate_on_segment(p: &Point3, a: &Point3, b: &Point3) -> Location {
    let dir = b.sub(a);
    let rel = p.sub(a);
    if !dir.cross(&rel).is_zero() {
        return Location::Outside;
    }
    let t = rel.dot(&dir);
    let len2 = dir.dot(&dir);
    if t.sign() == Sign::Negative || t > len2 {
        Location::Outside
    } else if t.is_zero() || t == len2 {
        Location::Boundary
    } else {
        Location::Interior
    }
}

/// Barycentric-style classification: every sign must agree with `inside`
/// (or vanish) for the point to be in the closed simplex.
fn classify_signs(signs: &[Sign], inside: Sign) -> Location {
    if signs.iter().any(|&s| s == -inside) {
        Location::Outside
    } else if signs.iter().all(|&s| s == inside) {
        Location::Interior
    } else {
        Location::Boundary
    }
}

/// Access to points by index plus an exact orientation oracle over them.
///
/// Distinct indices must refer to distinct points; the face-to-face test uses
/// index equality as vertex identity.
pub trait Orientation {
    fn point(&self, i: usize) -> &Point3;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn orient(&self, a: usize, b: usize, c: usize, d: usize) -> Sign {
        orient3d(self.point(a), self.point(b), self.point(c), self.point(d))
    }
}

/// Orientation signs for every ordered quadruple of a small point set,
/// computed once from the sorted quadruples.
#[derive(Debug, Clone)]
pub struct OrientTable<'a> {
    points: &'a [Point3],
    signs: Vec<i8>,
}

impl<'a> OrientTable<'a> {
    pub fn new(points: &'a [Point3]) -> Self {
        let n = points.len();
        let mut signs = alloc::vec![0i8; n * n * n * n];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let s = orient3d(&points[a], &points[b], &points[c], &points[d]).as_i8();
                        if s == 0 {
                            continue;
                        }
                        for (perm, parity) in PERMUTATIONS_4 {
                            let q = [a, b, c, d];
                            let idx = ((q[perm[0]] * n + q[perm[1]]) * n + q[perm[2]]) * n
                                + q[perm[3]];
                            signs[idx] = s * parity;
                        }
                    }
                }
            }
        }
        OrientTable { points, signs }
    }
}

impl Orientation for OrientTable<'_> {
    fn point(&self, i: usize) -> &Point3 {
        &self.points[i]
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    fn orient(&self, a: usize, b: usize, c: usize, d: usize) -> Sign {
        let n = self.points.len();
        Sign::from_i8(self.signs[((a * n + b) * n + c) * n + d])
    }
}

const PERMUTATIONS_4: [([usize; 4], i8); 24] = [
    ([0, 1, 2, 3], 1),
    ([0, 1, 3, 2], -1),
    ([0, 2, 1, 3], -1),
    ([0, 2, 3, 1], 1),
    ([0, 3, 1, 2], 1),
    ([0, 3, 2, 1], -1),
    ([1, 0, 2, 3], -1),
    ([1, 0, 3, 2], 1),
    ([1, 2, 0, 3], 1),
    ([1, 2, 3, 0], -1),
    ([1, 3, 0, 2], -1),
    ([1, 3, 2, 0], 1),
    ([2, 0, 1, 3], 1),
    ([2, 0, 3, 1], -1),
    ([2, 1, 0, 3], -1),
    ([2, 1, 3, 0], 1),
    ([2, 3, 0, 1], 1),
    ([2, 3, 1, 0], -1),
    ([3, 0, 1, 2], -1),
    ([3, 0, 2, 1], 1),
    ([3, 1, 0, 2], 1),
    ([3, 1, 2, 0], -1),
    ([3, 2, 0, 1], -1),
    ([3, 2, 1, 0], 1),
];

struct PointArena {
    points: Vec<Point3>,
}

impl PointArena {
    fn intern(&mut self, p: &Point3) -> usize {
        match self.points.iter().position(|q| q == p) {
            Some(i) => i,
            None => {
                self.points.push(p.clone());
                self.points.len() - 1
            }
        }
    }
}

impl Orientation for PointArena {
    fn point(&self, i: usize) -> &Point3 {
        &self.points[i]
    }

    fn len(&self) -> usize {
        self.points.len()
    }
}

/// True iff the two closed simplices meet face to face: their intersection is
/// the convex hull of their shared vertices (possibly empty), so every pair of
/// faces whose relative interiors meet has identical vertex sets. A simplex
/// repeated verbatim does not count as meeting itself properly.
pub fn simplices_properly_intersect(s1: &[Point3], s2: &[Point3]) -> Result<bool, GeometryError> {
    check_simplex(s1)?;
    check_simplex(s2)?;
    let mut arena = PointArena { points: Vec::new() };
    let i1: Vec<usize> = s1.iter().map(|p| arena.intern(p)).collect();
    let i2: Vec<usize> = s2.iter().map(|p| arena.intern(p)).collect();
    Ok(meet_properly(&arena, &i1, &i2))
}

/// Index form of [`simplices_properly_intersect`]; both simplices must be
/// non-degenerate.
///
/// The intersection of two simplices is a polytope whose vertices are single
/// points where the affine hulls of a face of each meet transversally. So it
/// suffices to check vertex-in-simplex, edge/edge crossings and
/// edge/triangle piercings; any such contact away from the shared vertices
/// makes the intersection improper.
pub fn meet_properly<K: Orientation + ?Sized>(k: &K, s1: &[usize], s2: &[usize]) -> bool {
    if s1.len() == s2.len() && s1.iter().all(|v| s2.contains(v)) {
        return false;
    }
    for (a, b) in [(s1, s2), (s2, s1)] {
        for &v in a {
            if !b.contains(&v) && locate_index(k, v, b) != Location::Outside {
                return false;
            }
        }
    }
    for (a, b) in pairs(s1) {
        for (c, d) in pairs(s2) {
            if a != c && a != d && b != c && b != d && segments_cross(k, [a, b, c, d], s1, s2) {
                return false;
            }
        }
    }
    for (a, b) in [(s1, s2), (s2, s1)] {
        for (p, q) in pairs(a) {
            for tri in triples(b) {
                if !tri.contains(&p) && !tri.contains(&q) && edge_pierces_triangle(k, p, q, tri) {
                    return false;
                }
            }
        }
    }
    true
}

fn pairs(s: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..s.len()).flat_map(move |i| (i + 1..s.len()).map(move |j| (s[i], s[j])))
}

fn triples(s: &[usize]) -> impl Iterator<Item = [usize; 3]> + '_ {
    (0..s.len()).flat_map(move |i| {
        (i + 1..s.len()).flat_map(move |j| (j + 1..s.len()).map(move |l| [s[i], s[j], s[l]]))
    })
}

/// Closed-simplex classification of an indexed point. Tetrahedra use only
/// orientation signs; lower-dimensional simplices fall back to coordinates.
pub fn locate_index<K: Orientation + ?Sized>(k: &K, v: usize, s: &[usize]) -> Location {
    if s.len() == 4 {
        let orientation = k.orient(s[0], s[1], s[2], s[3]);
        let signs = [
            k.orient(v, s[1], s[2], s[3]),
            k.orient(s[0], v, s[2], s[3]),
            k.orient(s[0], s[1], v, s[3]),
            k.orient(s[0], s[1], s[2], v),
        ];
        classify_signs(&signs, orientation)
    } else {
        let pts: Vec<Point3> = s.iter().map(|&i| k.point(i).clone()).collect();
        locate_coords(k.point(v), &pts)
    }
}

/// Do the open segments `ab` and `cd` (four distinct points) cross at a single
/// point?
fn segments_cross<K: Orientation + ?Sized>(
    k: &K,
    [a, b, c, d]: [usize; 4],
    s1: &[usize],
    s2: &[usize],
) -> bool {
    if !k.orient(a, b, c, d).is_zero() {
        return false;
    }
    // Any point off the common plane turns in-plane sidedness into orientation
    // signs. If the four points are collinear no such point exists in any
    // case, and collinear segments never cross at a single point.
    let off_plane = s1.iter().chain(s2).copied().find(|&e| {
        ![a, b, c, d].contains(&e)
            && (!k.orient(a, b, c, e).is_zero()
                || !k.orient(a, b, d, e).is_zero()
                || !k.orient(a, c, d, e).is_zero()
                || !k.orient(b, c, d, e).is_zero())
    });
    let (sc, sd, sa, sb) = match off_plane {
        Some(e) => (
            k.orient(a, b, e, c),
            k.orient(a, b, e, d),
            k.orient(c, d, e, a),
            k.orient(c, d, e, b),
        ),
        None => {
            let [pa, pb, pc, pd] = [a, b, c, d].map(|i| k.point(i));
            let normal = [
                pb.sub(pa).cross(&pc.sub(pa)),
                pb.sub(pa).cross(&pd.sub(pa)),
                pc.sub(pa).cross(&pd.sub(pa)),
            ]
            .into_iter()
            .find(|n| !n.is_zero());
            let Some(normal) = normal else {
                return false;
            };
            (
                side_in_plane(pa, pb, pc, &normal),
                side_in_plane(pa, pb, pd, &normal),
                side_in_plane(pc, pd, pa, &normal),
                side_in_plane(pc, pd, pb, &normal),
            )
        }
    };
    opposite(sc, sd) && opposite(sa, sb)
}

fn opposite(s: Sign, t: Sign) -> bool {
    !s.is_zero() && s == -t
}

/// Does the open segment `pq` cross the plane of triangle `tri` transversally
/// at a point strictly inside the triangle?
fn edge_pierces_triangle<K: Orientation + ?Sized>(k: &K, p: usize, q: usize, tri: [usize; 3]) -> bool {
    let [c, d, e] = tri;
    if !opposite(k.orient(c, d, e, p), k.orient(c, d, e, q)) {
        return false;
    }
    let s0 = k.orient(p, q, c, d);
    let s1 = k.orient(p, q, d, e);
    let s2 = k.orient(p, q, e, c);
    !s0.is_zero() && s0 == s1 && s1 == s2
}
