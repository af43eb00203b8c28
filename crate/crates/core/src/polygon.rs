//! Planar polygon helpers: exact normals, point location and ear clipping.
//!
//! Polygons live in 3D; each routine projects onto the coordinate plane
//! dropping an axis along which the normal is non-zero, which is a bijection
//! on the polygon's plane.

use alloc::vec::Vec;

use crate::geometry::{Location, Point3, Sign};
use crate::rational::Rat;

/// Newell's normal: twice the vector area of the polygon. Points out of the
/// side from which the cycle is counterclockwise.
pub fn newell_normal(points: &[Point3]) -> Point3 {
    let mut n = Point3::default();
    for i in 0..points.len() {
        let a = &points[i];
        let b = &points[(i + 1) % points.len()];
        n = n.add(&a.cross(b));
    }
    n
}

#[derive(Debug, Clone)]
struct Projection {
    u: usize,
    v: usize,
    /// Sign of the dropped normal component; flips the projected orientation
    /// so that the polygon is counterclockwise in (u, v).
    flip: bool,
}

impl Projection {
    fn new(normal: &Point3) -> Option<Self> {
        let axis = (0..3).rev().find(|&k| !normal.coord(k).is_zero())?;
        let (u, v) = match axis {
            0 => (1, 2),
            1 => (2, 0),
            _ => (0, 1),
        };
        Some(Projection {
            u,
            v,
            flip: normal.coord(axis).sign() == Sign::Negative,
        })
    }

    fn orient2d(&self, a: &Point3, b: &Point3, c: &Point3) -> Sign {
        let (u, v) = (self.u, self.v);
        let det = (b.coord(u) - a.coord(u)) * (c.coord(v) - a.coord(v))
            - (b.coord(v) - a.coord(v)) * (c.coord(u) - a.coord(u));
        if self.flip {
            -det.sign()
        } else {
            det.sign()
        }
    }
}

/// Locates a point already known to lie in the polygon's plane.
pub fn locate_in_polygon(p: &Point3, polygon: &[Point3], normal: &Point3) -> Location {
    let Some(proj) = Projection::new(normal) else {
        return Location::Outside;
    };
    let (u, v) = (proj.u, proj.v);
    let (pu, pv) = (p.coord(u), p.coord(v));
    let mut inside = false;
    for i in 0..polygon.len() {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % polygon.len()];
        if on_segment_2d(&proj, a, b, p) {
            return Location::Boundary;
        }
        let (au, av) = (a.coord(u), a.coord(v));
        let (bu, bv) = (b.coord(u), b.coord(v));
        if (av > pv) != (bv > pv) {
            // u-coordinate where the edge meets the horizontal line through p
            let x = au + &((pv - av) * (bu - au) / (bv - av));
            if pu < &x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Interior
    } else {
        Location::Outside
    }
}

fn on_segment_2d(proj: &Projection, a: &Point3, b: &Point3, p: &Point3) -> bool {
    if !proj.orient2d(a, b, p).is_zero() {
        return false;
    }
    let within = |k: usize| {
        let (lo, hi) = if a.coord(k) <= b.coord(k) {
            (a.coord(k), b.coord(k))
        } else {
            (b.coord(k), a.coord(k))
        };
        lo <= p.coord(k) && p.coord(k) <= hi
    };
    within(proj.u) && within(proj.v)
}

/// Ear-clips a simple polygon. Returns local index triples with the same
/// orientation as the input cycle, or `None` if the polygon is not simple
/// (or degenerate).
pub fn ear_clip(polygon: &[Point3]) -> Option<Vec<[usize; 3]>> {
    let normal = newell_normal(polygon);
    let proj = Projection::new(&normal)?;
    let mut remaining: Vec<usize> = (0..polygon.len()).collect();
    let mut out = Vec::with_capacity(polygon.len().saturating_sub(2));
    while remaining.len() > 3 {
        let m = remaining.len();
        let ear = (0..m).find(|&i| {
            let (a, b, c) = (remaining[(i + m - 1) % m], remaining[i], remaining[(i + 1) % m]);
            let (pa, pb, pc) = (&polygon[a], &polygon[b], &polygon[c]);
            if proj.orient2d(pa, pb, pc) != Sign::Positive {
                return false;
            }
            remaining.iter().all(|&j| {
                j == a
                    || j == b
                    || j == c
                    || proj.orient2d(pa, pb, &polygon[j]) == Sign::Negative
                    || proj.orient2d(pb, pc, &polygon[j]) == Sign::Negative
                    || proj.orient2d(pc, pa, &polygon[j]) == Sign::Negative
            })
        })?;
        let (a, b, c) = (
            remaining[(ear + m - 1) % m],
            remaining[ear],
            remaining[(ear + 1) % m],
        );
        out.push([a, b, c]);
        remaining.remove(ear);
    }
    if remaining.len() == 3 {
        let [a, b, c] = [remaining[0], remaining[1], remaining[2]];
        if proj.orient2d(&polygon[a], &polygon[b], &polygon[c]) != Sign::Positive {
            return None;
        }
        out.push([a, b, c]);
    }
    Some(out)
}

/// Twice the signed area of a planar polygon, scaled by the length of
/// `reference_normal` (any normal of the polygon's plane).
pub fn signed_area2(polygon: &[Point3], reference_normal: &Point3) -> Rat {
    newell_normal(polygon).dot(reference_normal)
}
