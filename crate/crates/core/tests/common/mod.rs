//! Reference implementations used only by tests. They share no code with the
//! predicates they check: arithmetic is `Ratio<i128>` and every question is
//! answered by brute-force linear algebra.
#![allow(dead_code)]

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use tetrify_core::{Point3, Polyhedron};

pub type Q = Ratio<i128>;
pub type P = [Q; 3];

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn ip(x: i64, y: i64, z: i64) -> P {
    [q(x as i128), q(y as i128), q(z as i128)]
}

pub fn from_point(p: &Point3) -> P {
    [&p.x, &p.y, &p.z].map(|c| {
        Q::new(
            c.numer().to_i128().expect("small coordinates"),
            c.denom().to_i128().expect("small coordinates"),
        )
    })
}

pub fn to_point(p: &P) -> Point3 {
    let r = |c: &Q| tetrify_core::Rat::new(*c.numer() as i64, *c.denom() as i64);
    Point3::new(r(&p[0]), r(&p[1]), r(&p[2]))
}

/// Cofactor expansion of the 3x3 determinant of `b - a, c - a, d - a`.
pub fn det(a: &P, b: &P, c: &P, d: &P) -> Q {
    let u: P = [0, 1, 2].map(|k| b[k] - a[k]);
    let v: P = [0, 1, 2].map(|k| c[k] - a[k]);
    let w: P = [0, 1, 2].map(|k| d[k] - a[k]);
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0])
}

/// Solves `cols · x = rhs` when the columns are linearly independent and the
/// system is consistent; `None` otherwise.
pub fn solve_unique(cols: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let rows = rhs.len();
    let n = cols.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        let pr = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, pr);
        let pv = m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x /= pv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot = m[pivot_row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|k| m[k][n]).collect())
}

fn affinely_independent(s: &[P]) -> bool {
    let lifted: Vec<Vec<Q>> = s.iter().map(|p| vec![p[0], p[1], p[2], q(1)]).collect();
    rank(&lifted) == s.len()
}

/// Rank of a list of vectors by row reduction.
fn rank(vectors: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = vectors.to_vec();
    let mut r = 0;
    let rows = m.first().map_or(0, |c| c.len());
    for row in 0..rows {
        let Some(p) = (r..m.len()).find(|&i| !m[i][row].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pv = m[r][row];
        for i in 0..m.len() {
            if i != r && !m[i][row].is_zero() {
                let f = m[i][row] / pv;
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn non_degenerate(s: &[P]) -> bool {
    affinely_independent(s)
}

/// Barycentric coordinates of `x` in the affinely independent `s`, if `x`
/// lies in its affine hull.
pub fn barycentric(x: &P, s: &[P]) -> Option<Vec<Q>> {
    let cols: Vec<Vec<Q>> = s.iter().map(|p| vec![p[0], p[1], p[2], q(1)]).collect();
    solve_unique(&cols, &[x[0], x[1], x[2], q(1)])
}

pub fn in_hull(x: &P, s: &[P]) -> bool {
    !s.is_empty() && barycentric(x, s).is_some_and(|l| l.iter().all(|v| *v >= q(0)))
}

fn shared(s1: &[P], s2: &[P]) -> Vec<P> {
    s1.iter().filter(|p| s2.contains(p)).copied().collect()
}

/// Extreme points of `s1 ∩ s2`: the basic feasible solutions of
/// `Σ λ_i s1_i = Σ μ_j s2_j`, `Σ λ = Σ μ = 1`, `λ, μ ≥ 0`.
pub fn intersection_vertices(s1: &[P], s2: &[P]) -> Vec<P> {
    let k1 = s1.len();
    let vars = k1 + s2.len();
    let column = |v: usize| -> Vec<Q> {
        if v < k1 {
            let p = &s1[v];
            vec![p[0], p[1], p[2], q(1), q(0)]
        } else {
            let p = &s2[v - k1];
            vec![-p[0], -p[1], -p[2], q(0), q(1)]
        }
    };
    let rhs = [q(0), q(0), q(0), q(1), q(1)];
    let mut out = Vec::new();
    for mask in 1u32..(1 << vars) {
        if mask.count_ones() > 5 {
            continue;
        }
        let support: Vec<usize> = (0..vars).filter(|v| mask >> v & 1 == 1).collect();
        let cols: Vec<Vec<Q>> = support.iter().map(|&v| column(v)).collect();
        let Some(x) = solve_unique(&cols, &rhs) else {
            continue;
        };
        if x.iter().any(|v| *v < q(0)) {
            continue;
        }
        let mut point = [q(0), q(0), q(0)];
        for (&v, w) in support.iter().zip(&x) {
            if v < k1 {
                for k in 0..3 {
                    point[k] += *w * s1[v][k];
                }
            }
        }
        if !out.contains(&point) {
            out.push(point);
        }
    }
    out
}

/// Points `Σ (k_i / res) s_i` over all compositions of `res`.
pub fn grid(s: &[P], res: i128) -> Vec<P> {
    fn rec(s: &[P], res: i128, left: i128, idx: usize, acc: P, out: &mut Vec<P>) {
        if idx + 1 == s.len() {
            let w = Q::new(left, res);
            out.push([0, 1, 2].map(|k| acc[k] + w * s[idx][k]));
            return;
        }
        for k in 0..=left {
            let w = Q::new(k, res);
            let next = [0, 1, 2].map(|c| acc[c] + w * s[idx][c]);
            rec(s, res, left - k, idx + 1, next, out);
        }
    }
    let mut out = Vec::new();
    rec(s, res, res, 0, [q(0), q(0), q(0)], &mut out);
    out
}

/// Sampling oracle for face-to-face intersection: the pair is proper unless a
/// sample of `s1 ∩ s2` lies outside the hull of the shared vertices. Samples
/// are the exact extreme points of the intersection plus a barycentric grid
/// on each simplex. A simplex paired with itself is reported improper.
pub fn properly_intersect_oracle(s1: &[P], s2: &[P], res: i128) -> bool {
    let mut a = s1.to_vec();
    let mut b = s2.to_vec();
    a.sort();
    b.sort();
    if a == b {
        return false;
    }
    let common = shared(s1, s2);
    let bad = |x: &P| !in_hull(x, &common);
    if intersection_vertices(s1, s2).iter().any(bad) {
        return false;
    }
    let grid_hit = |from: &[P], into: &[P]| grid(from, res).iter().any(|x| in_hull(x, into) && bad(x));
    !(grid_hit(s1, s2) || grid_hit(s2, s1))
}

/// Tets on the polyhedron's vertices that are non-degenerate. Only valid as a
/// candidate list for convex input.
pub fn convex_candidates(p: &Polyhedron) -> Vec<[usize; 4]> {
    let pts: Vec<P> = p.vertices().iter().map(from_point).collect();
    let n = pts.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if !det(&pts[a], &pts[b], &pts[c], &pts[d]).is_zero() {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Six times the volume of a convex polyhedron, as the sum over a fan of
/// every face from vertex 0 of the face, coned to the first vertex.
pub fn convex_volume6(p: &Polyhedron) -> Q {
    let pts: Vec<P> = p.vertices().iter().map(from_point).collect();
    let apex = pts[0];
    let mut total = q(0);
    for f in p.faces() {
        for k in 1..f.len() - 1 {
            total += det(&apex, &pts[f[0]], &pts[f[k]], &pts[f[k + 1]]);
        }
    }
    total
}

/// Sizes of every triangulation of a convex polyhedron: all sets of pairwise
/// face-to-face tets whose volumes add up to the whole. Exhaustive, with no
/// bound other than the volume never exceeding the total.
pub fn all_triangulation_sizes(p: &Polyhedron) -> Vec<usize> {
    let pts: Vec<P> = p.vertices().iter().map(from_point).collect();
    let tets = convex_candidates(p);
    let vol: Vec<Q> = tets
        .iter()
        .map(|t| det(&pts[t[0]], &pts[t[1]], &pts[t[2]], &pts[t[3]]).abs())
        .collect();
    let simplex = |t: &[usize; 4]| t.map(|i| pts[i]);
    let m = tets.len();
    let mut compat = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let ok = properly_intersect_oracle(&simplex(&tets[i]), &simplex(&tets[j]), 1);
            compat[i][j] = ok;
            compat[j][i] = ok;
        }
    }
    let total = convex_volume6(p);
    let mut sizes = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        filled: Q,
        total: Q,
        vol: &[Q],
        compat: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
    ) {
        if filled == total {
            sizes.push(chosen.len());
            return;
        }
        for i in start..vol.len() {
            if filled + vol[i] > total || !chosen.iter().all(|&j| compat[i][j]) {
                continue;
            }
            chosen.push(i);
            rec(i + 1, filled + vol[i], total, vol, compat, chosen, sizes);
            chosen.pop();
        }
    }
    rec(0, q(0), total, &vol, &compat, &mut chosen, &mut sizes);
    sizes
}
