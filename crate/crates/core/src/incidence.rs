//! Point configurations, projective duality and stable lines.
//!
//! A point `P` is dual to the line with vertex `−P`. Stable lines through a
//! configuration correspond one-to-one to stable intersections of the dual
//! arrangement: a stable intersection at `q` gives the stable line with
//! vertex `−q`.

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ArrangementAnalysis, CellClass};
use crate::error::CoreError;
use crate::lines::{line_from_vertex, Point2, TropicalLine};
use crate::rational::Rational;
use crate::semiring::{cramer_stable_solution, TropMatrix2x3, TropScalar};
use crate::subdivision::{is_near_pencil, DualSubdivision};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    points: Vec<Point2>,
}

impl PointConfig {
    pub fn new(points: Vec<Point2>) -> Result<Self, CoreError> {
        if points.is_empty() {
            return Err(CoreError::EmptyConfig);
        }
        for (second, p) in points.iter().enumerate() {
            if let Some(first) = points[..second].iter().position(|q| q == p) {
                return Err(CoreError::DuplicatePoint { first, second });
            }
        }
        Ok(PointConfig { points })
    }

    pub fn from_integers(points: &[(i64, i64)]) -> Result<Self, CoreError> {
        PointConfig::new(points.iter().map(|&(x, y)| Point2::new(x, y)).collect())
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The line dual to a point: its vertex is the negated point.
pub fn dual_line(p: &Point2) -> TropicalLine {
    line_from_vertex(p.neg())
}

pub fn dualize_points(cfg: &PointConfig) -> Result<Arrangement, CoreError> {
    Arrangement::new(cfg.points.iter().map(dual_line).collect())
}

/// `p` lies on the dual of `q` exactly when `q` lies on the dual of `p`.
pub fn incidence_preserved(p: &Point2, q: &Point2) -> bool {
    let forward = dual_line(q).contains(p);
    let backward = dual_line(p).contains(q);
    assert_eq!(forward, backward, "duality must preserve incidence");
    forward
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StableLineKind {
    /// The line is the only line through its incident points.
    UniquelyDetermined,
    /// One of the incident points is the vertex of the line.
    VertexWitnessed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableLineRecord {
    pub line: TropicalLine,
    pub incident: Vec<usize>,
    pub kind: StableLineKind,
}

fn require(cfg: &PointConfig, needed: usize) -> Result<(), CoreError> {
    if cfg.len() < needed {
        Err(CoreError::TooFewPoints {
            needed,
            got: cfg.len(),
        })
    } else {
        Ok(())
    }
}

/// Stable lines read off an already analyzed dual arrangement.
pub fn stable_lines_from_analysis(analysis: &ArrangementAnalysis) -> Vec<StableLineRecord> {
    analysis
        .vertices
        .iter()
        .zip(&analysis.cells)
        .filter(|(_, cell)| cell.class != CellClass::Triangle)
        .map(|(vd, _)| StableLineRecord {
            line: line_from_vertex(vd.point.neg()),
            incident: vd
                .per_line_argmax
                .iter()
                .enumerate()
                .filter(|(_, a)| a.len() >= 2)
                .map(|(idx, _)| idx)
                .collect(),
            kind: if vd.c > 0 {
                StableLineKind::VertexWitnessed
            } else {
                StableLineKind::UniquelyDetermined
            },
        })
        .collect()
}

pub fn stable_lines_through(cfg: &PointConfig) -> Result<Vec<StableLineRecord>, CoreError> {
    require(cfg, 2)?;
    let arr = dualize_points(cfg)?;
    Ok(stable_lines_from_analysis(&ArrangementAnalysis::new(&arr)))
}

/// Stable line through two points from the stable solution of the system
/// with rows `(x, y, 0)`.
pub fn stable_line_two_points(p1: &Point2, p2: &Point2) -> Result<TropicalLine, CoreError> {
    if p1 == p2 {
        return Err(CoreError::EqualPoints(Box::new(p1.clone())));
    }
    let row = |p: &Point2| [p.x.clone(), p.y.clone(), Rational::zero()];
    let matrix = TropMatrix2x3::from_finite([row(p1), row(p2)]);
    let [o1, o2, o3] = cramer_stable_solution(&matrix)?;
    let finite = |s: TropScalar| match s {
        TropScalar::Finite(r) => r,
        TropScalar::NegInfinity => unreachable!("finite matrix"),
    };
    let (o1, o2, o3) = (finite(o1), finite(o2), finite(o3));
    let line = TropicalLine::from_coefficients(&o1, &o2, &o3);
    assert!(
        line.contains(p1) && line.contains(p2),
        "stable line misses a point"
    );
    Ok(line)
}

pub fn ordinary_stable_lines(cfg: &PointConfig) -> Result<Vec<StableLineRecord>, CoreError> {
    Ok(stable_lines_through(cfg)?
        .into_iter()
        .filter(|r| r.incident.len() == 2)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbeVerdict {
    pub v: usize,
    pub b: usize,
    pub bound_holds: bool,
    pub equality: bool,
    pub near_pencil: bool,
    pub consistent: bool,
}

impl DbeVerdict {
    pub fn new(v: usize, b: usize, near_pencil: bool) -> Self {
        let equality = b + 3 == v;
        DbeVerdict {
            v,
            b,
            bound_holds: b + 3 >= v,
            equality,
            near_pencil,
            consistent: !equality || near_pencil,
        }
    }
}

pub fn dbe_check(cfg: &PointConfig) -> Result<DbeVerdict, CoreError> {
    require(cfg, 4)?;
    let arr = dualize_points(cfg)?;
    let analysis = ArrangementAnalysis::new(&arr);
    let b = stable_lines_from_analysis(&analysis).len();
    let sub = DualSubdivision::from_analysis(&arr, &analysis)?;
    Ok(DbeVerdict::new(cfg.len(), b, is_near_pencil(&sub)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::new(x, y)
    }

    fn pencil_points() -> PointConfig {
        PointConfig::from_integers(&[(0, 0), (0, -2), (-2, 0), (2, 2)]).unwrap()
    }

    #[test]
    fn config_validation() {
        assert_eq!(PointConfig::new(vec![]), Err(CoreError::EmptyConfig));
        assert_eq!(
            PointConfig::from_integers(&[(1, 1), (2, 2), (1, 1)]),
            Err(CoreError::DuplicatePoint {
                first: 0,
                second: 2
            })
        );
    }

    #[test]
    fn duality_examples() {
        let single = dualize_points(&PointConfig::from_integers(&[(0, 0)]).unwrap()).unwrap();
        assert_eq!(single.lines()[0].vertex, p(0, 0));
        let pencil = dualize_points(&pencil_points()).unwrap();
        let vertices: Vec<Point2> = pencil.lines().iter().map(|l| l.vertex.clone()).collect();
        assert_eq!(vertices, vec![p(0, 0), p(0, 2), p(2, 0), p(-2, -2)]);
        let neg = dualize_points(&PointConfig::from_integers(&[(1, -2)]).unwrap()).unwrap();
        assert_eq!(neg.lines()[0].vertex, p(-1, 2));
    }

    #[test]
    fn incidence_examples() {
        assert!(incidence_preserved(&p(0, 0), &p(0, 0)));
        assert!(incidence_preserved(&p(-2, 0), &p(0, 0)));
        assert!(!incidence_preserved(&p(1, 2), &p(0, 0)));
    }

    #[test]
    fn stable_lines_examples() {
        let records = stable_lines_through(&pencil_points()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].line.vertex, p(0, 0));
        assert_eq!(records[0].incident, vec![0, 1, 2, 3]);
        assert_eq!(records[0].kind, StableLineKind::VertexWitnessed);

        let generic =
            stable_lines_through(&PointConfig::from_integers(&[(0, 0), (1, 3)]).unwrap()).unwrap();
        assert_eq!(generic.len(), 1);
        assert_eq!(generic[0].kind, StableLineKind::UniquelyDetermined);
        assert_eq!(generic[0].line.vertex, p(0, 2));

        let coaxial =
            stable_lines_through(&PointConfig::from_integers(&[(-3, 2), (-1, 2)]).unwrap())
                .unwrap();
        assert_eq!(coaxial.len(), 1);
        assert_eq!(coaxial[0].line.vertex, p(-1, 2));
        assert_eq!(coaxial[0].kind, StableLineKind::VertexWitnessed);

        assert_eq!(
            stable_lines_through(&PointConfig::from_integers(&[(0, 0)]).unwrap()),
            Err(CoreError::TooFewPoints { needed: 2, got: 1 })
        );
    }

    #[test]
    fn cramer_line_examples() {
        assert_eq!(
            stable_line_two_points(&p(-3, 2), &p(-1, 2)).unwrap().vertex,
            p(-1, 2)
        );
        assert_eq!(
            stable_line_two_points(&p(0, 0), &p(1, 3)).unwrap().vertex,
            p(0, 2)
        );
        assert_eq!(
            stable_line_two_points(&p(0, 0), &p(2, 2)).unwrap().vertex,
            p(0, 0)
        );
        assert_eq!(
            stable_line_two_points(&p(5, 1), &p(5, 1)),
            Err(CoreError::EqualPoints(Box::new(p(5, 1))))
        );
    }

    #[test]
    fn ordinary_lines_examples() {
        let two = PointConfig::from_integers(&[(0, 0), (1, 3)]).unwrap();
        assert_eq!(ordinary_stable_lines(&two).unwrap().len(), 1);
        assert!(ordinary_stable_lines(&pencil_points()).unwrap().is_empty());
    }

    #[test]
    fn dbe_examples() {
        let v = dbe_check(&pencil_points()).unwrap();
        assert_eq!(
            v,
            DbeVerdict {
                v: 4,
                b: 1,
                bound_holds: true,
                equality: true,
                near_pencil: true,
                consistent: true
            }
        );
        // no two coaxial
        let generic = PointConfig::from_integers(&[(0, 0), (1, 3), (3, 4), (5, 1)]).unwrap();
        let v = dbe_check(&generic).unwrap();
        assert!(v.b >= 4 && !v.equality && v.consistent);

        let six_lines =
            PointConfig::from_integers(&[(0, 0), (2, 2), (2, 6), (-4, 6), (-10, 4), (-8, 0)])
                .unwrap();
        let v = dbe_check(&six_lines).unwrap();
        assert!(v.bound_holds && !v.equality && v.near_pencil && v.consistent);

        assert_eq!(
            dbe_check(&PointConfig::from_integers(&[(0, 0), (1, 1), (2, 5)]).unwrap()),
            Err(CoreError::TooFewPoints { needed: 4, got: 3 })
        );
    }
}
