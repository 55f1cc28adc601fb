//! Tropical lines in the max-plus plane.
//!
//! A line `max(a + x, b + y, c)` is stored by its vertex `(c − a, c − b)`;
//! it is the union of three closed rays leaving the vertex in the directions
//! `(−1, 0)`, `(0, −1)` and `(1, 1)`.
//!
//! Terms are numbered 1 (the `x` term), 2 (the `y` term) and 3 (the
//! constant). At a point `q` the argmax set of a line is the set of terms
//! attaining the maximum; `q` lies on the line iff at least two do.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::rational::Rational;
use crate::semiring::TropScalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(Rational, Rational)", into = "(Rational, Rational)")]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: impl Into<Rational>, y: impl Into<Rational>) -> Self {
        Point2 {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        Point2::new(0, 0)
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Point2 {
        Point2 {
            x: &self.x + dx,
            y: &self.y + dy,
        }
    }

    pub fn neg(&self) -> Point2 {
        Point2 {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl From<(Rational, Rational)> for Point2 {
    fn from((x, y): (Rational, Rational)) -> Self {
        Point2 { x, y }
    }
}

impl From<Point2> for (Rational, Rational) {
    fn from(p: Point2) -> Self {
        (p.x, p.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Non-empty subset of the term indices `{1, 2, 3}`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgmaxSet(u8);

impl ArgmaxSet {
    pub const X: ArgmaxSet = ArgmaxSet(0b001);
    pub const Y: ArgmaxSet = ArgmaxSet(0b010);
    pub const CONST: ArgmaxSet = ArgmaxSet(0b100);
    /// `{1, 3}`: the point is on the south ray.
    pub const SOUTH_RAY: ArgmaxSet = ArgmaxSet(0b101);
    /// `{2, 3}`: the point is on the west ray.
    pub const WEST_RAY: ArgmaxSet = ArgmaxSet(0b110);
    /// `{1, 2}`: the point is on the north-east ray.
    pub const NORTHEAST_RAY: ArgmaxSet = ArgmaxSet(0b011);
    pub const ALL: ArgmaxSet = ArgmaxSet(0b111);

    /// Builds a set from term indices in `1..=3`. Returns `None` for an empty
    /// or out-of-range input.
    pub fn from_terms(terms: &[u8]) -> Option<ArgmaxSet> {
        let mut mask = 0u8;
        for &t in terms {
            if !(1..=3).contains(&t) {
                return None;
            }
            mask |= 1 << (t - 1);
        }
        (mask != 0).then_some(ArgmaxSet(mask))
    }

    pub fn contains(self, term: u8) -> bool {
        (1..=3).contains(&term) && self.0 & (1 << (term - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn terms(self) -> impl Iterator<Item = u8> {
        (1..=3u8).filter(move |&t| self.contains(t))
    }

    /// Exponent vectors of the terms, with `1 ↦ (1,0)`, `2 ↦ (0,1)`,
    /// `3 ↦ (0,0)`.
    pub fn exponents(self) -> impl Iterator<Item = (i64, i64)> {
        self.terms().map(|t| match t {
            1 => (1, 0),
            2 => (0, 1),
            _ => (0, 0),
        })
    }
}

impl fmt::Display for ArgmaxSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.terms() {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ArgmaxSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for ArgmaxSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ArgmaxSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let terms: Option<Vec<u8>> = s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        terms
            .and_then(|t| ArgmaxSet::from_terms(&t))
            .ok_or_else(|| serde::de::Error::custom(format!("invalid argmax set `{s}`")))
    }
}

/// The three ray directions of a tropical line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    W,
    S,
    NE,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::W, Direction::S, Direction::NE];

    pub fn vector(self) -> (i64, i64) {
        match self {
            Direction::W => (-1, 0),
            Direction::S => (0, -1),
            Direction::NE => (1, 1),
        }
    }

    /// Argmax set of a line at the interior points of its ray in this
    /// direction.
    pub fn argmax(self) -> ArgmaxSet {
        match self {
            Direction::W => ArgmaxSet::WEST_RAY,
            Direction::S => ArgmaxSet::SOUTH_RAY,
            Direction::NE => ArgmaxSet::NORTHEAST_RAY,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TropicalLine {
    pub vertex: Point2,
}

impl fmt::Debug for TropicalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TropicalLine{}", self.vertex)
    }
}

pub fn line_from_vertex(vertex: Point2) -> TropicalLine {
    TropicalLine { vertex }
}

impl TropicalLine {
    pub fn new(vertex: Point2) -> Self {
        line_from_vertex(vertex)
    }

    /// The line `max(a + x, b + y, c)`; its vertex is `(c − a, c − b)`.
    pub fn from_coefficients(a: &Rational, b: &Rational, c: &Rational) -> Self {
        line_from_vertex(Point2 { x: c - a, y: c - b })
    }

    /// Coefficients `(a, b, c)` normalized to `c = 0`.
    pub fn coefficients(&self) -> (Rational, Rational, Rational) {
        (-&self.vertex.x, -&self.vertex.y, Rational::zero())
    }

    fn terms_at(&self, q: &Point2) -> [Rational; 3] {
        [
            &q.x - &self.vertex.x,
            &q.y - &self.vertex.y,
            Rational::zero(),
        ]
    }

    pub fn eval_argmax(&self, q: &Point2) -> (TropScalar, ArgmaxSet) {
        let terms = self.terms_at(q);
        let max = terms.iter().max().expect("three terms").clone();
        let mut mask = 0u8;
        for (i, t) in terms.iter().enumerate() {
            if *t == max {
                mask |= 1 << i;
            }
        }
        (TropScalar::Finite(max), ArgmaxSet(mask))
    }

    pub fn argmax(&self, q: &Point2) -> ArgmaxSet {
        self.eval_argmax(q).1
    }

    pub fn contains(&self, q: &Point2) -> bool {
        self.argmax(q).len() >= 2
    }

    pub fn ray(&self, direction: Direction) -> Ray {
        Ray {
            origin: self.vertex.clone(),
            direction,
        }
    }

    pub fn rays(&self) -> [Ray; 3] {
        Direction::ALL.map(|d| self.ray(d))
    }
}

pub fn eval_argmax(line: &TropicalLine, q: &Point2) -> (TropScalar, ArgmaxSet) {
    line.eval_argmax(q)
}

pub fn contains(line: &TropicalLine, q: &Point2) -> bool {
    line.contains(q)
}

/// Closed ray `{origin + s·direction : s ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub origin: Point2,
    pub direction: Direction,
}

fn cross(ax: &Rational, ay: &Rational, bx: i64, by: i64) -> Rational {
    ax * Rational::from(by) - ay * Rational::from(bx)
}

impl Ray {
    /// The single crossing point of two non-parallel rays, if any. Parallel
    /// rays return `None` even when they overlap.
    pub fn crossing(&self, other: &Ray) -> Option<Point2> {
        let (d1x, d1y) = self.direction.vector();
        let (d2x, d2y) = other.direction.vector();
        let denom = d1x * d2y - d1y * d2x;
        if denom == 0 {
            return None;
        }
        let wx = &other.origin.x - &self.origin.x;
        let wy = &other.origin.y - &self.origin.y;
        let denom = Rational::from(denom);
        let s = cross(&wx, &wy, d2x, d2y) / &denom;
        let t = cross(&wx, &wy, d1x, d1y) / &denom;
        if s.is_negative() || t.is_negative() {
            return None;
        }
        Some(Point2 {
            x: &self.origin.x + &s * Rational::from(d1x),
            y: &self.origin.y + &s * Rational::from(d1y),
        })
    }
}

/// Common axis direction of two distinct points, if they are coaxial.
pub fn coaxial_points(p: &Point2, q: &Point2) -> Result<Option<Direction>, CoreError> {
    if p == q {
        return Err(CoreError::EqualPoints(Box::new(p.clone())));
    }
    Ok(if p.y == q.y {
        Some(Direction::W)
    } else if p.x == q.x {
        Some(Direction::S)
    } else if &p.x - &q.x == &p.y - &q.y {
        Some(Direction::NE)
    } else {
        None
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IntersectionKind {
    /// No vertex of either line sits at the point.
    FirstKind,
    /// The point is the vertex of one of the lines.
    SecondKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableIntersection {
    pub point: Point2,
    pub kind: IntersectionKind,
}

/// All crossing points of non-parallel ray pairs of two lines, deduplicated.
pub fn ray_crossings(l1: &TropicalLine, l2: &TropicalLine) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::new();
    for r1 in l1.rays() {
        for r2 in l2.rays() {
            if let Some(p) = r1.crossing(&r2) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// The unique stable intersection of two distinct lines.
///
/// Non-coaxial vertices meet in a single transversal crossing. For coaxial
/// vertices the lines overlap along a ray; the stable point is then the
/// vertex that lies on the other line.
pub fn pairwise_stable_intersection(
    l1: &TropicalLine,
    l2: &TropicalLine,
) -> Result<StableIntersection, CoreError> {
    if l1 == l2 {
        return Err(CoreError::IdenticalLines(Box::new(l1.vertex.clone())));
    }
    match coaxial_points(&l1.vertex, &l2.vertex)? {
        Some(_) => {
            let on1 = l1.contains(&l2.vertex);
            let on2 = l2.contains(&l1.vertex);
            assert!(
                on1 != on2,
                "exactly one coaxial vertex lies on the other line"
            );
            let point = if on1 {
                l2.vertex.clone()
            } else {
                l1.vertex.clone()
            };
            Ok(StableIntersection {
                point,
                kind: IntersectionKind::SecondKind,
            })
        }
        None => {
            let mut points = ray_crossings(l1, l2);
            assert_eq!(points.len(), 1, "non-coaxial lines cross exactly once");
            let point = points.pop().expect("one crossing");
            assert!(point != l1.vertex && point != l2.vertex);
            Ok(StableIntersection {
                point,
                kind: IntersectionKind::FirstKind,
            })
        }
    }
}

/// Intersection of `l1` with `l2` shifted by `eps · dir`, computed by solving
/// the pairwise term equalities directly. Serves as an independent check of
/// [`pairwise_stable_intersection`] in the limit `eps → 0`.
pub fn perturbed_intersection_oracle(
    l1: &TropicalLine,
    l2: &TropicalLine,
    eps: &Rational,
    dir: &Point2,
) -> Result<Point2, CoreError> {
    if l1 == l2 {
        return Err(CoreError::IdenticalLines(Box::new(l1.vertex.clone())));
    }
    let shifted = line_from_vertex(l2.vertex.translate(&(eps * &dir.x), &(eps * &dir.y)));
    if shifted == *l1 || coaxial_points(&l1.vertex, &shifted.vertex)?.is_some() {
        return Err(CoreError::NotTransversal);
    }
    // Each tie between two terms of a line is one affine equation
    // alpha·x + beta·y = gamma.
    let ties = |v: &Point2| -> [(i64, i64, Rational); 3] {
        [
            (1, -1, &v.x - &v.y),
            (1, 0, v.x.clone()),
            (0, 1, v.y.clone()),
        ]
    };
    let mut found: Vec<Point2> = Vec::new();
    for (a1, b1, g1) in ties(&l1.vertex) {
        for (a2, b2, g2) in ties(&shifted.vertex) {
            let det = a1 * b2 - a2 * b1;
            if det == 0 {
                continue;
            }
            let det = Rational::from(det);
            let x = (&g1 * Rational::from(b2) - &g2 * Rational::from(b1)) / &det;
            let y = (&g2 * Rational::from(a1) - &g1 * Rational::from(a2)) / &det;
            let p = Point2 { x, y };
            if l1.contains(&p) && shifted.contains(&p) && !found.contains(&p) {
                found.push(p);
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one point")),
        _ => Err(CoreError::NotTransversal),
    }
}
