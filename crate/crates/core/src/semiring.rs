//! Max-plus semiring primitives.
//!
//! `⊕` is `max` and `⊙` is `+` over `ℚ ∪ {−∞}`. Besides the two operations
//! this module provides the 2×2 tropical permanent and the stable solution of
//! a 2×3 tropical linear system, which is what a stable line through two
//! points reduces to.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::rational::Rational;

/// An element of the tropical semiring. The derived order puts `NegInfinity`
/// below every finite value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TropScalar {
    NegInfinity,
    Finite(Rational),
}

impl TropScalar {
    pub fn finite(value: impl Into<Rational>) -> Self {
        TropScalar::Finite(value.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropScalar::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            TropScalar::Finite(r) => Some(r),
            TropScalar::NegInfinity => None,
        }
    }

    pub fn oplus(&self, other: &TropScalar) -> TropScalar {
        trop_add(self, other)
    }

    pub fn otimes(&self, other: &TropScalar) -> TropScalar {
        trop_mul(self, other)
    }
}

impl From<Rational> for TropScalar {
    fn from(value: Rational) -> Self {
        TropScalar::Finite(value)
    }
}

impl From<i64> for TropScalar {
    fn from(value: i64) -> Self {
        TropScalar::Finite(Rational::from(value))
    }
}

impl fmt::Debug for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::NegInfinity => f.write_str("-inf"),
            TropScalar::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Tropical sum `a ⊕ b = max(a, b)`.
pub fn trop_add(a: &TropScalar, b: &TropScalar) -> TropScalar {
    match a.cmp(b) {
        Ordering::Less => b.clone(),
        _ => a.clone(),
    }
}

/// Tropical product `a ⊙ b = a + b`; `−∞` absorbs.
pub fn trop_mul(a: &TropScalar, b: &TropScalar) -> TropScalar {
    match (a, b) {
        (TropScalar::Finite(x), TropScalar::Finite(y)) => TropScalar::Finite(x + y),
        _ => TropScalar::NegInfinity,
    }
}

/// `max(m11 ⊙ m22, m12 ⊙ m21)`.
pub fn trop_permanent_2x2(
    m11: &TropScalar,
    m12: &TropScalar,
    m21: &TropScalar,
    m22: &TropScalar,
) -> TropScalar {
    trop_add(&trop_mul(m11, m22), &trop_mul(m12, m21))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropMatrix2x3 {
    pub rows: [[TropScalar; 3]; 2],
}

impl TropMatrix2x3 {
    pub fn new(rows: [[TropScalar; 3]; 2]) -> Self {
        TropMatrix2x3 { rows }
    }

    pub fn from_finite(rows: [[Rational; 3]; 2]) -> Self {
        TropMatrix2x3 {
            rows: rows.map(|row| row.map(TropScalar::Finite)),
        }
    }

    /// Permanent of the 2×2 minor left after deleting `column`.
    pub fn minor(&self, column: usize) -> TropScalar {
        let keep: Vec<usize> = (0..3).filter(|&c| c != column).collect();
        let [r0, r1] = &self.rows;
        trop_permanent_2x2(&r0[keep[0]], &r0[keep[1]], &r1[keep[0]], &r1[keep[1]])
    }
}

/// Stable solution `(|O¹| : |O²| : |O³|)` of a finite 2×3 tropical system,
/// where `|Oⁱ|` is the permanent of the minor without column `i`. Only the
/// differences between the three outputs are meaningful.
pub fn cramer_stable_solution(matrix: &TropMatrix2x3) -> Result<[TropScalar; 3], CoreError> {
    for (r, row) in matrix.rows.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            if !entry.is_finite() {
                return Err(CoreError::InfiniteEntry { row: r, column: c });
            }
        }
    }
    Ok([matrix.minor(0), matrix.minor(1), matrix.minor(2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> TropScalar {
        TropScalar::Finite(Rational::new(n, d))
    }

    fn s(v: i64) -> TropScalar {
        TropScalar::from(v)
    }

    #[test]
    fn add_examples() {
        assert_eq!(trop_add(&s(3), &s(5)), s(5));
        assert_eq!(trop_add(&TropScalar::NegInfinity, &q(7, 2)), q(7, 2));
        assert_eq!(trop_add(&s(-2), &s(-2)), s(-2));
        assert_eq!(
            trop_add(&TropScalar::NegInfinity, &TropScalar::NegInfinity),
            TropScalar::NegInfinity
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(trop_mul(&s(3), &s(5)), s(8));
        assert_eq!(
            trop_mul(&TropScalar::NegInfinity, &s(7)),
            TropScalar::NegInfinity
        );
        assert_eq!(trop_mul(&q(1, 2), &q(1, 3)), q(5, 6));
    }

    #[test]
    fn permanent_examples() {
        assert_eq!(trop_permanent_2x2(&s(2), &s(0), &s(2), &s(0)), s(2));
        assert_eq!(trop_permanent_2x2(&s(-3), &s(0), &s(-1), &s(0)), s(-1));
        let ninf = TropScalar::NegInfinity;
        assert_eq!(trop_permanent_2x2(&s(0), &ninf, &ninf, &s(0)), s(0));
    }

    fn finite(rows: [[i64; 3]; 2]) -> TropMatrix2x3 {
        TropMatrix2x3::new(rows.map(|r| r.map(s)))
    }

    #[test]
    fn cramer_examples() {
        // u = 3, u' = 1, v = 2 gives (v : -u' : -u' + v)
        assert_eq!(
            cramer_stable_solution(&finite([[-3, 2, 0], [-1, 2, 0]])).unwrap(),
            [s(2), s(-1), s(1)]
        );
        assert_eq!(
            cramer_stable_solution(&finite([[0, 0, 0], [0, 0, 0]])).unwrap(),
            [s(0), s(0), s(0)]
        );
        assert_eq!(
            cramer_stable_solution(&finite([[-5, 1, 0], [-2, 1, 0]])).unwrap(),
            [s(1), s(-2), s(-1)]
        );
    }

    #[test]
    fn cramer_rejects_infinite_entries() {
        let mut m = finite([[0, 0, 0], [0, 0, 0]]);
        m.rows[1][2] = TropScalar::NegInfinity;
        assert_eq!(
            cramer_stable_solution(&m),
            Err(CoreError::InfiniteEntry { row: 1, column: 2 })
        );
    }

    fn scalar() -> impl Strategy<Value = TropScalar> {
        prop_oneof![
            1 => Just(TropScalar::NegInfinity),
            6 => (-50i64..50, 1i64..6).prop_map(|(n, d)| q(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn semiring_laws(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(trop_add(&a, &b), trop_add(&b, &a));
            prop_assert_eq!(trop_add(&trop_add(&a, &b), &c), trop_add(&a, &trop_add(&b, &c)));
            prop_assert_eq!(trop_add(&a, &a), a.clone());
            prop_assert_eq!(
                trop_mul(&a, &trop_add(&b, &c)),
                trop_add(&trop_mul(&a, &b), &trop_mul(&a, &c))
            );
            prop_assert_eq!(trop_mul(&a, &TropScalar::NegInfinity), TropScalar::NegInfinity);
        }

        #[test]
        fn permanent_symmetric_under_row_and_column_swap(
            a in scalar(), b in scalar(), c in scalar(), d in scalar()
        ) {
            prop_assert_eq!(
                trop_permanent_2x2(&a, &b, &c, &d),
                trop_permanent_2x2(&d, &c, &b, &a)
            );
        }

        #[test]
        fn cramer_row_shift_equivariance(
            entries in proptest::array::uniform6(-20i64..20),
            row in 0usize..2,
            shift in -10i64..10,
        ) {
            let rows = [
                [entries[0], entries[1], entries[2]],
                [entries[3], entries[4], entries[5]],
            ];
            let base = cramer_stable_solution(&finite(rows)).unwrap();
            let mut shifted = rows;
            for e in shifted[row].iter_mut() {
                *e += shift;
            }
            let moved = cramer_stable_solution(&finite(shifted)).unwrap();
            for (b, m) in base.iter().zip(moved.iter()) {
                prop_assert_eq!(trop_mul(b, &s(shift)), m.clone());
            }
        }
    }
}
