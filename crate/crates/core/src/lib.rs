//! Exact computations on tropical line arrangements in the max-plus plane.
//!
//! The crate computes stable intersections of tropical lines, the dual Newton
//! subdivision of an arrangement with its face classification, and, on the
//! point side, stable lines through a configuration. The [`sweep`] module
//! checks the lower bound `b ≥ v − 3` on the number of stable lines (with
//! equality only for near-pencils) over exhaustive and random families of
//! integer configurations.
//!
//! All geometry uses exact rationals.
//!
//! ```
//! use troplines_core::{dbe_check, PointConfig};
//!
//! let cfg = PointConfig::from_integers(&[(0, 0), (0, -2), (-2, 0), (2, 2)]).unwrap();
//! let verdict = dbe_check(&cfg).unwrap();
//! assert_eq!(verdict.b, 1);
//! assert!(verdict.equality && verdict.near_pencil);
//! ```

pub mod arrangement;
pub mod error;
pub mod incidence;
pub mod lattice;
pub mod lines;
pub mod rational;
pub mod semiring;
pub mod subdivision;
pub mod sweep;

pub use arrangement::{
    arrangement_vertices, build_arrangement, classify_cell, counts, dual_cell, type_tuple,
    Arrangement, ArrangementAnalysis, ArrangementReport, CellClass, CellPolygon, Counts, TypeTuple,
    VertexData,
};
pub use error::CoreError;
pub use incidence::{
    dbe_check, dualize_points, incidence_preserved, ordinary_stable_lines, stable_line_two_points,
    stable_lines_through, DbeVerdict, PointConfig, StableLineKind, StableLineRecord,
};
pub use lattice::LatticePoint;
pub use lines::{
    coaxial_points, line_from_vertex, pairwise_stable_intersection, perturbed_intersection_oracle,
    ArgmaxSet, Direction, IntersectionKind, Point2, StableIntersection, TropicalLine,
};
pub use rational::Rational;
pub use semiring::{
    cramer_stable_solution, trop_add, trop_mul, trop_permanent_2x2, TropMatrix2x3, TropScalar,
};
pub use subdivision::{
    boundary_edge_count, check_regularity, determined_faces, determined_union_count,
    dual_subdivision, is_near_pencil, product_coefficients, DualSubdivision, LiftTable,
};
pub use sweep::{
    enumerate_configs, random_config, run_sweep, run_sweep_with, sg_failure_search, Checks,
    ConfigResult, Execution, SweepMode, SweepParams, SweepReport,
};
