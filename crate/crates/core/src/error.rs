use thiserror::Error;

use crate::lines::Point2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("matrix entry ({row}, {column}) is -inf")]
    InfiniteEntry { row: usize, column: usize },
    #[error("points coincide at {0}")]
    EqualPoints(Box<Point2>),
    #[error("lines are identical (vertex {0})")]
    IdenticalLines(Box<Point2>),
    #[error("shifted lines do not meet transversally")]
    NotTransversal,
    #[error("arrangement is empty")]
    EmptyArrangement,
    #[error("duplicate line at index {second} (same vertex as index {first})")]
    DuplicateLine { first: usize, second: usize },
    #[error("point {0} is not a vertex of the arrangement")]
    NotAVertex(Box<Point2>),
    #[error("dual cells do not tile the Newton polygon: {0}")]
    TilingFailure(String),
    #[error("cell {0} is not a triangle")]
    NotATriangle(usize),
    #[error("point configuration is empty")]
    EmptyConfig,
    #[error("duplicate point at index {second} (same as index {first})")]
    DuplicatePoint { first: usize, second: usize },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("a {grid}x{grid} grid cannot hold {n} distinct points")]
    GridTooSmall { n: usize, grid: u32 },
    #[error("coordinate range {range} cannot hold {n} distinct points")]
    RangeTooSmall { n: usize, range: u32 },
    #[error("search budget of {0} configurations exhausted without a witness")]
    BudgetExhausted(u64),
    #[error("failure search only supports 4 or 5 points, got {0}")]
    UnsupportedSearchSize(usize),
}
