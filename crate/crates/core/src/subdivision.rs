//! The dual Newton subdivision of `n·Δ₂`.
//!
//! Cells come from the Minkowski construction in [`crate::arrangement`]. The
//! coefficients of the product of the line polynomials give an independent
//! lift of the lattice points, and [`check_regularity`] confirms that every
//! cell is exactly a face of the upper hull of that lift.

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ArrangementAnalysis, CellClass, CellPolygon};
use crate::error::CoreError;
use crate::lattice::{self, LatticePoint};
use crate::rational::Rational;

/// Lattice points `(i, j)` with `i, j ≥ 0` and `i + j ≤ n`.
pub fn simplex_points(n: usize) -> Vec<LatticePoint> {
    let n = n as i64;
    (0..=n)
        .flat_map(|i| (0..=n - i).map(move |j| LatticePoint::new(i, j)))
        .collect()
}

/// Coefficients `h(i, j)` of the product of the line polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftTable {
    n: usize,
    values: Vec<Rational>,
}

impl LiftTable {
    fn index(&self, i: i64, j: i64) -> Option<usize> {
        let n = self.n as i64;
        (i >= 0 && j >= 0 && i + j <= n).then(|| (i * (n + 1) + j) as usize)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: LatticePoint) -> Option<&Rational> {
        self.index(p.i, p.j).map(|k| &self.values[k])
    }

    pub fn get_mut(&mut self, p: LatticePoint) -> Option<&mut Rational> {
        self.index(p.i, p.j).map(|k| &mut self.values[k])
    }

    pub fn entries(&self) -> Vec<(i64, i64, Rational)> {
        simplex_points(self.n)
            .into_iter()
            .map(|p| (p.i, p.j, self.get(p).expect("in simplex").clone()))
            .collect()
    }
}

impl Serialize for LiftTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(serializer)
    }
}

/// Dynamic program over the lines with state `(i, j)`:
/// `h'(i, j) = max(h(i−1, j) + a, h(i, j−1) + b, h(i, j) + c)`.
pub fn product_coefficients(arr: &Arrangement) -> LiftTable {
    let n = arr.len();
    let side = n + 1;
    let mut current: Vec<Option<Rational>> = vec![None; side * side];
    current[0] = Some(Rational::zero());
    for (placed, line) in arr.lines().iter().enumerate() {
        let (a, b, c) = line.coefficients();
        let mut next: Vec<Option<Rational>> = vec![None; side * side];
        for i in 0..=placed + 1 {
            for j in 0..=placed + 1 - i {
                let mut best: Option<Rational> = None;
                let mut offer = |v: Option<Rational>| {
                    if let Some(v) = v {
                        if best.as_ref().is_none_or(|b| v > *b) {
                            best = Some(v);
                        }
                    }
                };
                if i > 0 {
                    offer(current[(i - 1) * side + j].as_ref().map(|h| h + &a));
                }
                if j > 0 {
                    offer(current[i * side + j - 1].as_ref().map(|h| h + &b));
                }
                offer(current[i * side + j].as_ref().map(|h| h + &c));
                next[i * side + j] = best;
            }
        }
        current = next;
    }
    let values = current
        .into_iter()
        .map(|v| v.unwrap_or_else(Rational::zero))
        .collect();
    LiftTable { n, values }
}

#[derive(Clone, Debug)]
pub struct DualSubdivision {
    pub n: usize,
    pub cells: Vec<CellPolygon>,
    pub lift: LiftTable,
}

pub fn dual_subdivision(arr: &Arrangement) -> Result<DualSubdivision, CoreError> {
    DualSubdivision::from_analysis(arr, &ArrangementAnalysis::new(arr))
}

impl DualSubdivision {
    pub fn from_analysis(
        arr: &Arrangement,
        analysis: &ArrangementAnalysis,
    ) -> Result<Self, CoreError> {
        let sub = DualSubdivision {
            n: arr.len(),
            cells: analysis.cells.clone(),
            lift: product_coefficients(arr),
        };
        sub.check_tiling().map_err(CoreError::TilingFailure)?;
        Ok(sub)
    }

    /// Exact area sum, containment in `n·Δ₂` and pairwise interior
    /// disjointness.
    pub fn check_tiling(&self) -> Result<(), String> {
        let n = self.n as i64;
        let mut total = 0i64;
        for (idx, cell) in self.cells.iter().enumerate() {
            let area = cell.twice_area();
            if area <= 0 {
                return Err(format!("cell {idx} has non-positive area"));
            }
            total += area;
            if let Some(p) = cell
                .vertices
                .iter()
                .find(|p| p.i < 0 || p.j < 0 || p.i + p.j > n)
            {
                return Err(format!(
                    "cell {idx} vertex {p:?} outside the Newton polygon"
                ));
            }
        }
        if total != n * n {
            return Err(format!("cell areas sum to {total}/2, expected {}/2", n * n));
        }
        let boxes: Vec<(i64, i64, i64, i64)> =
            self.cells.iter().map(|c| bbox(&c.vertices)).collect();
        for a in 0..self.cells.len() {
            for b in a + 1..self.cells.len() {
                let (ba, bb) = (boxes[a], boxes[b]);
                if ba.0 >= bb.2 || bb.0 >= ba.2 || ba.1 >= bb.3 || bb.1 >= ba.3 {
                    continue;
                }
                let overlap =
                    lattice::intersection_area(&self.cells[a].vertices, &self.cells[b].vertices);
                if *overlap.numer() != 0 {
                    return Err(format!("cells {a} and {b} overlap in area {overlap}"));
                }
            }
        }
        Ok(())
    }

    pub fn triangles(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.class == CellClass::Triangle)
            .map(|(idx, _)| idx)
    }

    /// Triangles with fewer than two edges on the boundary of `n·Δ₂`.
    pub fn non_corner_triangles(&self) -> Vec<usize> {
        self.triangles()
            .filter(|&t| boundary_edge_count(&self.cells[t], self.n) < 2)
            .collect()
    }

    pub fn export(&self) -> SubdivisionExport {
        SubdivisionExport {
            n: self.n,
            cells: self
                .cells
                .iter()
                .map(|c| CellExport {
                    vertices: c.vertices.clone(),
                    class: c.class,
                    dual_point: c.dual_point.clone(),
                    boundary_edges: boundary_edge_count(c, self.n),
                })
                .collect(),
            lift: self.lift.clone(),
        }
    }
}

fn bbox(poly: &[LatticePoint]) -> (i64, i64, i64, i64) {
    let min_i = poly.iter().map(|p| p.i).min().unwrap_or(0);
    let min_j = poly.iter().map(|p| p.j).min().unwrap_or(0);
    let max_i = poly.iter().map(|p| p.i).max().unwrap_or(0);
    let max_j = poly.iter().map(|p| p.j).max().unwrap_or(0);
    (min_i, min_j, max_i, max_j)
}

#[derive(Clone, Debug, Serialize)]
pub struct CellExport {
    pub vertices: Vec<LatticePoint>,
    pub class: CellClass,
    pub dual_point: crate::lines::Point2,
    pub boundary_edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubdivisionExport {
    pub n: usize,
    pub cells: Vec<CellExport>,
    pub lift: LiftTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct RegularityViolation {
    pub cell: usize,
    pub point: LatticePoint,
    pub reason: String,
}

impl std::fmt::Display for RegularityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cell {} at {:?}: {}", self.cell, self.point, self.reason)
    }
}

/// Affine function `α + β·i + γ·j` through three lifted points.
struct Affine {
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
}

impl Affine {
    fn through(pts: [LatticePoint; 3], vals: [&Rational; 3]) -> Option<Affine> {
        let (u, v) = (pts[1] - pts[0], pts[2] - pts[0]);
        let det = u.i * v.j - u.j * v.i;
        if det == 0 {
            return None;
        }
        let (du, dv) = (vals[1] - vals[0], vals[2] - vals[0]);
        let det = Rational::from(det);
        let beta = (&du * Rational::from(v.j) - &dv * Rational::from(u.j)) / &det;
        let gamma = (&dv * Rational::from(u.i) - &du * Rational::from(v.i)) / &det;
        let alpha = vals[0] - &beta * Rational::from(pts[0].i) - &gamma * Rational::from(pts[0].j);
        Some(Affine { alpha, beta, gamma })
    }

    fn at(&self, p: LatticePoint) -> Rational {
        &self.alpha + &self.beta * Rational::from(p.i) + &self.gamma * Rational::from(p.j)
    }
}

/// Every cell must be a face of the upper hull of the lift: the affine
/// function through its lifted vertices agrees with `h` on the cell's lattice
/// points and dominates `h` everywhere else.
pub fn check_regularity(sub: &DualSubdivision) -> Result<(), RegularityViolation> {
    let points = simplex_points(sub.n);
    for (idx, cell) in sub.cells.iter().enumerate() {
        let v = &cell.vertices;
        let lifted = |p: LatticePoint| {
            sub.lift.get(p).ok_or_else(|| RegularityViolation {
                cell: idx,
                point: p,
                reason: "vertex outside the lift table".into(),
            })
        };
        let phi = Affine::through(
            [v[0], v[1], v[2]],
            [lifted(v[0])?, lifted(v[1])?, lifted(v[2])?],
        )
        .ok_or_else(|| RegularityViolation {
            cell: idx,
            point: v[0],
            reason: "degenerate cell".into(),
        })?;
        for &p in &points {
            let h = sub.lift.get(p).expect("simplex point");
            let value = phi.at(p);
            if lattice::contains_point(v, p) {
                if value != *h {
                    return Err(RegularityViolation {
                        cell: idx,
                        point: p,
                        reason: format!("lift {h} off the cell plane (plane value {value})"),
                    });
                }
            } else if value < *h {
                return Err(RegularityViolation {
                    cell: idx,
                    point: p,
                    reason: format!("lift {h} above the cell plane (plane value {value})"),
                });
            }
        }
    }
    Ok(())
}

pub fn is_regular(sub: &DualSubdivision) -> bool {
    check_regularity(sub).is_ok()
}

/// Number of cell edges lying on `i = 0`, `j = 0` or `i + j = n`.
pub fn boundary_edge_count(cell: &CellPolygon, n: usize) -> usize {
    let n = n as i64;
    cell.edges()
        .filter(|(p, q)| {
            (p.i == 0 && q.i == 0) || (p.j == 0 && q.j == 0) || (p.i + p.j == n && q.i + q.j == n)
        })
        .count()
}

/// Every triangle has at least one edge on the boundary of `n·Δ₂`.
pub fn is_near_pencil(sub: &DualSubdivision) -> bool {
    sub.triangles()
        .all(|t| boundary_edge_count(&sub.cells[t], sub.n) >= 1)
}

fn shares_edge(a: &CellPolygon, b: &CellPolygon) -> bool {
    a.edges().any(|(p, q)| {
        b.edges().any(|(r, s)| {
            if lattice::cross(p, q, r) != 0 || lattice::cross(p, q, s) != 0 {
                return false;
            }
            // Project onto the edge direction and test for a positive-length
            // overlap.
            let d = q - p;
            let proj = |x: LatticePoint| (x.i - p.i) * d.i + (x.j - p.j) * d.j;
            let (lo, hi) = (0, proj(q));
            let (r0, r1) = (proj(r).min(proj(s)), proj(r).max(proj(s)));
            lo.max(r0) < hi.min(r1)
        })
    })
}

/// Primitive directions of the two edges of `poly` leaving vertex `at`.
fn corner_directions(poly: &[LatticePoint], at: usize) -> (LatticePoint, LatticePoint) {
    let len = poly.len();
    let next = poly[(at + 1) % len];
    let prev = poly[(at + len - 1) % len];
    (
        lattice::primitive(poly[at], next).0,
        lattice::primitive(poly[at], prev).0,
    )
}

/// Whether parallelogram `s` fills the angle vertically opposite to the
/// corner `corner` of triangle `t`.
fn fills_opposite_angle(t: &CellPolygon, corner: usize, s: &CellPolygon) -> bool {
    let p = t.vertices[corner];
    let Some(at) = s.vertices.iter().position(|&v| v == p) else {
        return false;
    };
    let (t1, t2) = corner_directions(&t.vertices, corner);
    let (s1, s2) = corner_directions(&s.vertices, at);
    let neg = |d: LatticePoint| LatticePoint::new(-d.i, -d.j);
    (s1 == neg(t1) && s2 == neg(t2)) || (s1 == neg(t2) && s2 == neg(t1))
}

/// Semiuniform cells determined by triangle `t`: those sharing an edge with
/// it, and parallelograms placed in the angle vertically opposite one of its
/// corners (edge lengths arbitrary). Returns cell indices in ascending order.
pub fn determined_faces(sub: &DualSubdivision, t: usize) -> Result<Vec<usize>, CoreError> {
    let tri = sub.cells.get(t).ok_or(CoreError::NotATriangle(t))?;
    if tri.class != CellClass::Triangle {
        return Err(CoreError::NotATriangle(t));
    }
    Ok(sub
        .cells
        .iter()
        .enumerate()
        .filter(|(idx, s)| *idx != t && s.class.is_semiuniform())
        .filter(|(_, s)| {
            shares_edge(tri, s)
                || (s.class == CellClass::Parallelogram
                    && (0..3).any(|corner| fills_opposite_angle(tri, corner, s)))
        })
        .map(|(idx, _)| idx)
        .collect())
}

/// Size of the union of the faces determined by all non-corner triangles.
pub fn determined_union_count(sub: &DualSubdivision) -> usize {
    let mut union: Vec<usize> = sub
        .non_corner_triangles()
        .into_iter()
        .flat_map(|t| determined_faces(sub, t).expect("triangle"))
        .collect();
    union.sort_unstable();
    union.dedup();
    union.len()
}
