//! Tropical line arrangements and their local data.
//!
//! A point `q` of the plane is an arrangement vertex when the dual cell at
//! `q` is two-dimensional: either some line has its vertex at `q`, or lines
//! pass through `q` along rays of at least two different directions.
//!
//! The dual cell is the Minkowski sum, over all lines, of the convex hull of
//! the exponents in that line's argmax set at `q`. With `c` the number of
//! lines centred at `q` and `s_a`, `s_b`, `s_c` the numbers of lines passing
//! through `q` on their south, west and north-east rays, the cell is
//!
//! ```text
//! c·Δ + s_a·[(0,0),(1,0)] + s_b·[(0,0),(0,1)] + s_c·[(1,0),(0,1)]
//! ```
//!
//! translated by the exponents of the remaining lines. So `s_a` counts the
//! lines whose dual edge is horizontal, `s_b` vertical and `s_c` diagonal.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::lattice::{self, LatticePoint};
use crate::lines::{self, ArgmaxSet, Point2, TropicalLine};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    lines: Vec<TropicalLine>,
}

pub fn build_arrangement(lines: Vec<TropicalLine>) -> Result<Arrangement, CoreError> {
    Arrangement::new(lines)
}

impl Arrangement {
    pub fn new(lines: Vec<TropicalLine>) -> Result<Self, CoreError> {
        if lines.is_empty() {
            return Err(CoreError::EmptyArrangement);
        }
        for (second, l) in lines.iter().enumerate() {
            if let Some(first) = lines[..second].iter().position(|m| m == l) {
                return Err(CoreError::DuplicateLine { first, second });
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn from_vertices(vertices: impl IntoIterator<Item = Point2>) -> Result<Self, CoreError> {
        Arrangement::new(vertices.into_iter().map(lines::line_from_vertex).collect())
    }

    pub fn lines(&self) -> &[TropicalLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// Local data of the arrangement at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub point: Point2,
    pub per_line_argmax: Vec<ArgmaxSet>,
    /// Number of lines with their vertex at `point` (0 or 1).
    pub c: usize,
    /// Lines through `point` on their south ray (argmax `{1,3}`).
    pub s_a: usize,
    /// Lines through `point` on their west ray (argmax `{2,3}`).
    pub s_b: usize,
    /// Lines through `point` on their north-east ray (argmax `{1,2}`).
    pub s_c: usize,
}

impl VertexData {
    pub fn at(arr: &Arrangement, point: Point2) -> Self {
        let per_line_argmax: Vec<ArgmaxSet> = arr.lines.iter().map(|l| l.argmax(&point)).collect();
        let count = |set: ArgmaxSet| per_line_argmax.iter().filter(|&&a| a == set).count();
        VertexData {
            c: count(ArgmaxSet::ALL),
            s_a: count(ArgmaxSet::SOUTH_RAY),
            s_b: count(ArgmaxSet::WEST_RAY),
            s_c: count(ArgmaxSet::NORTHEAST_RAY),
            per_line_argmax,
            point,
        }
    }

    fn nonzero_directions(&self) -> usize {
        [self.s_a, self.s_b, self.s_c]
            .iter()
            .filter(|&&s| s > 0)
            .count()
    }

    /// Whether the dual cell at this point is two-dimensional.
    pub fn is_vertex(&self) -> bool {
        self.c >= 1 || self.nonzero_directions() >= 2
    }

    pub fn singleton_count(&self) -> usize {
        self.per_line_argmax.iter().filter(|a| a.len() == 1).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellClass {
    Triangle,
    Parallelogram,
    Hexagon,
    #[serde(rename = "non_uniform_4")]
    NonUniform4,
    #[serde(rename = "non_uniform_5")]
    NonUniform5,
    #[serde(rename = "non_uniform_6")]
    NonUniform6,
}

impl CellClass {
    pub fn edge_count(self) -> usize {
        match self {
            CellClass::Triangle => 3,
            CellClass::Parallelogram | CellClass::NonUniform4 => 4,
            CellClass::NonUniform5 => 5,
            CellClass::Hexagon | CellClass::NonUniform6 => 6,
        }
    }

    /// Parallelograms and hexagons, dual to stable intersections of the
    /// first kind.
    pub fn is_semiuniform(self) -> bool {
        matches!(self, CellClass::Parallelogram | CellClass::Hexagon)
    }

    /// Cells dual to stable intersections of the second kind.
    pub fn is_non_uniform(self) -> bool {
        matches!(
            self,
            CellClass::NonUniform4 | CellClass::NonUniform5 | CellClass::NonUniform6
        )
    }
}

impl fmt::Display for CellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CellClass::Triangle => "triangle",
            CellClass::Parallelogram => "parallelogram",
            CellClass::Hexagon => "hexagon",
            CellClass::NonUniform4 => "non_uniform_4",
            CellClass::NonUniform5 => "non_uniform_5",
            CellClass::NonUniform6 => "non_uniform_6",
        };
        f.write_str(s)
    }
}

pub fn classify_cell(vd: &VertexData) -> Result<CellClass, CoreError> {
    if !vd.is_vertex() {
        return Err(CoreError::NotAVertex(Box::new(vd.point.clone())));
    }
    let d = vd.nonzero_directions();
    Ok(match (vd.c, d) {
        (0, 2) => CellClass::Parallelogram,
        (0, _) => CellClass::Hexagon,
        (_, 0) => CellClass::Triangle,
        (_, 1) => CellClass::NonUniform4,
        (_, 2) => CellClass::NonUniform5,
        _ => CellClass::NonUniform6,
    })
}

/// A positioned two-dimensional cell of the dual subdivision of `n·Δ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPolygon {
    /// Counter-clockwise, starting at the lexicographically smallest vertex.
    pub vertices: Vec<LatticePoint>,
    pub class: CellClass,
    pub dual_point: Point2,
}

impl CellPolygon {
    pub fn twice_area(&self) -> i64 {
        lattice::twice_area(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        lattice::edges(&self.vertices)
    }
}

const UNIT_TRIANGLE: [LatticePoint; 3] = [
    LatticePoint::new(0, 0),
    LatticePoint::new(1, 0),
    LatticePoint::new(0, 1),
];

pub fn dual_cell(vd: &VertexData) -> Result<CellPolygon, CoreError> {
    let class = classify_cell(vd)?;
    let mut cell = vec![LatticePoint::new(0, 0)];
    for set in &vd.per_line_argmax {
        let hull: Vec<LatticePoint> = set.exponents().map(LatticePoint::from).collect();
        cell = lattice::minkowski_sum(&cell, &hull);
    }
    debug_assert!(vd.c == 0 || cell.len() >= 3 || cell == UNIT_TRIANGLE);
    Ok(CellPolygon {
        vertices: cell,
        class,
        dual_point: vd.point.clone(),
    })
}

/// Candidate points: every line vertex and every crossing of two non-parallel
/// rays of different lines.
fn candidate_points(arr: &Arrangement) -> BTreeSet<Point2> {
    let mut out: BTreeSet<Point2> = arr.lines.iter().map(|l| l.vertex.clone()).collect();
    for (idx, l1) in arr.lines.iter().enumerate() {
        for l2 in &arr.lines[idx + 1..] {
            out.extend(lines::ray_crossings(l1, l2));
        }
    }
    out
}

/// All arrangement vertices, sorted lexicographically by point.
pub fn arrangement_vertices(arr: &Arrangement) -> Vec<VertexData> {
    candidate_points(arr)
        .into_iter()
        .map(|p| VertexData::at(arr, p))
        .filter(VertexData::is_vertex)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub n: usize,
    /// Two-dimensional faces of the dual subdivision.
    pub t: usize,
    pub triangles: usize,
    /// Stable intersections.
    pub b: usize,
    /// Stable intersections of the first kind.
    pub k: usize,
    /// Stable intersections of the second kind.
    pub h: usize,
}

impl Counts {
    pub fn from_classes(n: usize, classes: impl IntoIterator<Item = CellClass>) -> Self {
        let mut counts = Counts {
            n,
            t: 0,
            triangles: 0,
            b: 0,
            k: 0,
            h: 0,
        };
        for class in classes {
            counts.t += 1;
            if class == CellClass::Triangle {
                counts.triangles += 1;
            } else {
                counts.b += 1;
                if class.is_semiuniform() {
                    counts.k += 1;
                } else {
                    counts.h += 1;
                }
            }
        }
        counts
    }

    /// `t = triangles + b`, `b = k + h`, `h = n − triangles` and
    /// `n ≤ t ≤ n(n−1)/2 + n`.
    pub fn check_identities(&self) -> Result<(), String> {
        let Counts {
            n,
            t,
            triangles,
            b,
            k,
            h,
        } = *self;
        if t != triangles + b {
            return Err(format!("t = {t} but triangles + b = {}", triangles + b));
        }
        if b != k + h {
            return Err(format!("b = {b} but k + h = {}", k + h));
        }
        if h + triangles != n {
            return Err(format!(
                "h = {h} but n - triangles = {}",
                n as i64 - triangles as i64
            ));
        }
        let upper = n * (n - 1) / 2 + n;
        if t < n || t > upper {
            return Err(format!("t = {t} outside [{n}, {upper}]"));
        }
        Ok(())
    }
}

pub fn counts(arr: &Arrangement) -> Counts {
    ArrangementAnalysis::new(arr).counts
}

/// Per-line argmax sets at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTuple(pub Vec<ArgmaxSet>);

impl fmt::Display for TypeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, a) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

pub fn type_tuple(arr: &Arrangement, q: &Point2) -> TypeTuple {
    TypeTuple(arr.lines.iter().map(|l| l.argmax(q)).collect())
}

/// Vertices, dual cells and counts of one arrangement, computed together.
#[derive(Clone, Debug)]
pub struct ArrangementAnalysis {
    pub n: usize,
    pub vertices: Vec<VertexData>,
    pub cells: Vec<CellPolygon>,
    pub counts: Counts,
}

impl ArrangementAnalysis {
    pub fn new(arr: &Arrangement) -> Self {
        let vertices = arrangement_vertices(arr);
        let cells: Vec<CellPolygon> = vertices
            .iter()
            .map(|vd| dual_cell(vd).expect("filtered to vertices"))
            .collect();
        let counts = Counts::from_classes(arr.len(), cells.iter().map(|c| c.class));
        ArrangementAnalysis {
            n: arr.len(),
            vertices,
            cells,
            counts,
        }
    }

    pub fn report(&self) -> ArrangementReport {
        let Counts {
            n,
            t,
            triangles,
            b,
            k,
            h,
        } = self.counts;
        ArrangementReport {
            n,
            t,
            triangles,
            b,
            k,
            h,
            vertices: self
                .vertices
                .iter()
                .zip(&self.cells)
                .map(|(vd, cell)| VertexReport {
                    point: vd.point.clone(),
                    class: cell.class,
                    type_tuple: TypeTuple(vd.per_line_argmax.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub point: Point2,
    pub class: CellClass,
    #[serde(rename = "type")]
    pub type_tuple: TypeTuple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementReport {
    pub n: usize,
    pub t: usize,
    pub triangles: usize,
    pub b: usize,
    pub k: usize,
    pub h: usize,
    pub vertices: Vec<VertexReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::line_from_vertex;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::new(x, y)
    }

    fn arr(vs: &[(i64, i64)]) -> Arrangement {
        Arrangement::from_vertices(vs.iter().map(|&(x, y)| p(x, y))).unwrap()
    }

    fn pencil() -> Arrangement {
        arr(&[(0, 0), (0, 2), (2, 0), (-2, -2)])
    }

    fn lp(i: i64, j: i64) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    #[test]
    fn build_validates() {
        assert_eq!(arr(&[(0, 0)]).len(), 1);
        assert_eq!(
            Arrangement::from_vertices([p(0, 0), p(0, 0)]),
            Err(CoreError::DuplicateLine {
                first: 0,
                second: 1
            })
        );
        assert_eq!(Arrangement::new(vec![]), Err(CoreError::EmptyArrangement));
        assert_eq!(pencil().len(), 4);
    }

    #[test]
    fn vertices_examples() {
        let single = arrangement_vertices(&arr(&[(0, 0)]));
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].c, 1);

        let pencil = arrangement_vertices(&pencil());
        let points: Vec<Point2> = pencil.iter().map(|v| v.point.clone()).collect();
        assert_eq!(points, vec![p(-2, -2), p(0, 0), p(0, 2), p(2, 0)]);

        let two = arrangement_vertices(&arr(&[(0, 0), (2, 1)]));
        let points: Vec<Point2> = two.iter().map(|v| v.point.clone()).collect();
        assert_eq!(points, vec![p(0, 0), p(1, 1), p(2, 1)]);
    }

    #[test]
    fn classification_examples() {
        let vd = |c, s_a, s_b, s_c| VertexData {
            point: p(0, 0),
            per_line_argmax: vec![],
            c,
            s_a,
            s_b,
            s_c,
        };
        assert_eq!(classify_cell(&vd(1, 0, 0, 0)), Ok(CellClass::Triangle));
        assert_eq!(classify_cell(&vd(0, 1, 1, 0)), Ok(CellClass::Parallelogram));
        assert_eq!(classify_cell(&vd(1, 1, 1, 1)), Ok(CellClass::NonUniform6));
        assert_eq!(classify_cell(&vd(0, 2, 3, 1)), Ok(CellClass::Hexagon));
        assert_eq!(classify_cell(&vd(1, 0, 4, 0)), Ok(CellClass::NonUniform4));
        assert_eq!(classify_cell(&vd(1, 2, 0, 1)), Ok(CellClass::NonUniform5));
        assert_eq!(
            classify_cell(&vd(0, 0, 5, 0)),
            Err(CoreError::NotAVertex(Box::new(p(0, 0))))
        );
    }

    #[test]
    fn pencil_cells() {
        let a = pencil();
        let origin = VertexData::at(&a, p(0, 0));
        let cell = dual_cell(&origin).unwrap();
        assert_eq!(cell.class, CellClass::NonUniform6);
        assert_eq!(cell.vertices.len(), 6);
        assert_eq!(cell.twice_area(), 13);

        let top = dual_cell(&VertexData::at(&a, p(0, 2))).unwrap();
        assert_eq!(top.class, CellClass::Triangle);
        assert_eq!(top.vertices, vec![lp(0, 3), lp(1, 3), lp(0, 4)]);

        let single = dual_cell(&VertexData::at(&arr(&[(0, 0)]), p(0, 0))).unwrap();
        assert_eq!(single.vertices, UNIT_TRIANGLE.to_vec());

        assert!(matches!(
            dual_cell(&VertexData::at(&a, p(5, 7))),
            Err(CoreError::NotAVertex(_))
        ));
    }

    #[test]
    fn counts_examples() {
        let c = counts(&arr(&[(0, 0)]));
        assert_eq!((c.t, c.triangles, c.b, c.k, c.h), (1, 1, 0, 0, 0));
        let c = counts(&arr(&[(0, 0), (2, 1)]));
        assert_eq!((c.t, c.triangles, c.b, c.k, c.h), (3, 2, 1, 1, 0));
        let c = counts(&pencil());
        assert_eq!((c.t, c.triangles, c.b, c.k, c.h), (4, 3, 1, 0, 1));
        c.check_identities().unwrap();
    }

    #[test]
    fn type_tuples() {
        let single = arr(&[(0, 0)]);
        assert_eq!(
            type_tuple(&single, &p(0, 0)),
            TypeTuple(vec![ArgmaxSet::ALL])
        );
        assert_eq!(type_tuple(&single, &p(-1, -3)).0[0].len(), 1);
        let t = type_tuple(&pencil(), &p(0, 0));
        assert_eq!(t.to_string(), "(123, 13, 23, 12)");
    }

    #[test]
    fn report_serialization_shape() {
        let report = ArrangementAnalysis::new(&arr(&[(0, 0), (2, 1)])).report();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["t"], 3);
        assert_eq!(json["vertices"][1]["point"], serde_json::json!(["1", "1"]));
        assert_eq!(json["vertices"][1]["class"], "parallelogram");
        assert_eq!(json["vertices"][1]["type"], serde_json::json!(["12", "23"]));
    }

    #[test]
    fn lines_round_trip_through_json() {
        let l = line_from_vertex(Point2::new(crate::Rational::new(-7, 2), 3));
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"vertex":["-7/2","3"]}"#);
        assert_eq!(serde_json::from_str::<TropicalLine>(&s).unwrap(), l);
    }
}
