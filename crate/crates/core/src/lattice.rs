//! Integer lattice polygons: hulls, Minkowski sums, areas and a couple of
//! exact predicates used by the subdivision code.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const fn new(i: i64, j: i64) -> Self {
        LatticePoint { i, j }
    }
}

impl std::ops::Add for LatticePoint {
    type Output = LatticePoint;

    fn add(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.i + other.i, self.j + other.j)
    }
}

impl std::ops::Sub for LatticePoint {
    type Output = LatticePoint;

    fn sub(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.i - other.i, self.j - other.j)
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from([i, j]: [i64; 2]) -> Self {
        LatticePoint { i, j }
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.i, p.j]
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((i, j): (i64, i64)) -> Self {
        LatticePoint { i, j }
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

pub fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i)
}

/// Counter-clockwise convex hull without collinear boundary points, starting
/// from the lexicographically smallest vertex.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Minkowski sum of two convex lattice polygons given by their vertices.
pub fn minkowski_sum(a: &[LatticePoint], b: &[LatticePoint]) -> Vec<LatticePoint> {
    let sums: Vec<LatticePoint> = a
        .iter()
        .flat_map(|&p| b.iter().map(move |&q| p + q))
        .collect();
    convex_hull(&sums)
}

/// Twice the signed area of a polygon (positive for counter-clockwise).
pub fn twice_area(poly: &[LatticePoint]) -> i64 {
    let n = poly.len();
    (0..n)
        .map(|k| {
            let p = poly[k];
            let q = poly[(k + 1) % n];
            p.i * q.j - q.i * p.j
        })
        .sum()
}

/// Closed containment in a counter-clockwise convex polygon.
pub fn contains_point(poly: &[LatticePoint], p: LatticePoint) -> bool {
    let n = poly.len();
    (0..n).all(|k| cross(poly[k], poly[(k + 1) % n], p) >= 0)
}

/// Edges of a counter-clockwise polygon as `(start, end)` pairs.
pub fn edges(poly: &[LatticePoint]) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
    let n = poly.len();
    (0..n).map(move |k| (poly[k], poly[(k + 1) % n]))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive direction and lattice length of a segment.
pub fn primitive(from: LatticePoint, to: LatticePoint) -> (LatticePoint, i64) {
    let d = to - from;
    let g = gcd(d.i, d.j);
    (LatticePoint::new(d.i / g, d.j / g), g)
}

type Q = Ratio<i128>;

/// Exact area of the intersection of two counter-clockwise convex polygons,
/// by Sutherland–Hodgman clipping over `i128` rationals.
pub fn intersection_area(a: &[LatticePoint], b: &[LatticePoint]) -> Ratio<i128> {
    let to_q = |p: &LatticePoint| (Q::from(p.i as i128), Q::from(p.j as i128));
    let mut poly: Vec<(Q, Q)> = a.iter().map(to_q).collect();
    let m = b.len();
    for k in 0..m {
        if poly.is_empty() {
            break;
        }
        let (e0, e1) = (to_q(&b[k]), to_q(&b[(k + 1) % m]));
        let side = |p: &(Q, Q)| (e1.0 - e0.0) * (p.1 - e0.1) - (e1.1 - e0.1) * (p.0 - e0.0);
        let mut next = Vec::with_capacity(poly.len() + 1);
        for idx in 0..poly.len() {
            let cur = poly[idx];
            let prev = poly[(idx + poly.len() - 1) % poly.len()];
            let (sc, sp) = (side(&cur), side(&prev));
            let zero = Q::from(0);
            if sc >= zero {
                if sp < zero {
                    next.push(lerp(prev, cur, sp, sc));
                }
                next.push(cur);
            } else if sp >= zero {
                next.push(lerp(prev, cur, sp, sc));
            }
        }
        poly = next;
    }
    if poly.len() < 3 {
        return Q::from(0);
    }
    let n = poly.len();
    let twice: Q = (0..n)
        .map(|k| {
            let p = poly[k];
            let q = poly[(k + 1) % n];
            p.0 * q.1 - q.0 * p.1
        })
        .fold(Q::from(0), |acc, x| acc + x);
    twice / Q::from(2)
}

fn lerp(p: (Q, Q), q: (Q, Q), sp: Q, sq: Q) -> (Q, Q) {
    let t = sp / (sp - sq);
    (p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(i: i64, j: i64) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let hull = convex_hull(&[lp(0, 0), lp(2, 0), lp(1, 0), lp(0, 2), lp(1, 1), lp(0, 1)]);
        assert_eq!(hull, vec![lp(0, 0), lp(2, 0), lp(0, 2)]);
    }

    #[test]
    fn triangle_plus_three_segments_is_a_six_edged_cell() {
        let tri = [lp(0, 0), lp(1, 0), lp(0, 1)];
        let mut cell = tri.to_vec();
        for seg in [
            [lp(0, 0), lp(1, 0)],
            [lp(0, 0), lp(0, 1)],
            [lp(1, 0), lp(0, 1)],
        ] {
            cell = minkowski_sum(&cell, &seg);
        }
        assert_eq!(cell.len(), 6);
        assert_eq!(twice_area(&cell), 13);
    }

    #[test]
    fn clipped_area() {
        let sq = [lp(0, 0), lp(2, 0), lp(2, 2), lp(0, 2)];
        let shifted = [lp(1, 1), lp(3, 1), lp(3, 3), lp(1, 3)];
        assert_eq!(intersection_area(&sq, &shifted), Q::from(1));
        let tri = [lp(0, 0), lp(1, 0), lp(0, 1)];
        let other = [lp(1, 0), lp(1, 1), lp(0, 1)];
        assert_eq!(intersection_area(&tri, &other), Q::from(0));
        let inner = [lp(0, 0), lp(1, 0), lp(0, 1)];
        assert_eq!(intersection_area(&sq, &inner), Q::new(1, 2));
    }
}
