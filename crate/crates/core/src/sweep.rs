//! Exhaustive and seeded random sweeps over integer point configurations.
//!
//! Every configuration is a pure function of its index in the sweep, so the
//! work splits into index ranges that run independently (in parallel with the
//! `parallel` feature) and are merged in index order. Reports are therefore
//! identical across thread counts.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{ArrangementAnalysis, CellClass};
use crate::error::CoreError;
use crate::incidence::{dualize_points, stable_lines_from_analysis, DbeVerdict, PointConfig};
use crate::lines::{pairwise_stable_intersection, Point2};
use crate::subdivision::{
    boundary_edge_count, check_regularity, determined_faces, determined_union_count,
    is_near_pencil, DualSubdivision,
};

/// Configurations handed to the workers per batch; results are emitted in
/// index order after each batch.
const BATCH: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive { grid: u32 },
    Random { samples: u64, range: u32, seed: u64 },
}

/// Invariant suites to run on every configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// `b ≥ v − 3`, and equality forces a near-pencil with three corner
    /// triangles and no other triangle.
    pub dbe: bool,
    /// Distinct pairwise stable intersections equal the non-triangular cells.
    pub cross_oracle: bool,
    /// Tiling of `n·Δ₂` and regularity against the product lift.
    pub subdivision: bool,
    pub counts: bool,
    /// `t = n` implies at most three triangles.
    pub triangle_lemma: bool,
    /// Lower bounds on determined semiuniform faces.
    pub determined: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks {
            dbe: true,
            cross_oracle: true,
            subdivision: true,
            counts: true,
            triangle_lemma: true,
            determined: true,
        }
    }
}

impl Default for Checks {
    fn default() -> Self {
        Checks::all()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepParams {
    pub n: usize,
    #[serde(flatten)]
    pub mode: SweepMode,
    pub checks: Checks,
}

impl SweepParams {
    pub fn exhaustive(n: usize, grid: u32) -> Self {
        SweepParams {
            n,
            mode: SweepMode::Exhaustive { grid },
            checks: Checks::all(),
        }
    }

    pub fn random(n: usize, samples: u64, range: u32, seed: u64) -> Self {
        SweepParams {
            n,
            mode: SweepMode::Random {
                samples,
                range,
                seed,
            },
            checks: Checks::all(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the current rayon pool; identical to `Sequential` when the crate
    /// is built without the `parallel` feature.
    #[default]
    Parallel,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `k`-subsets of `0..items` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    items: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(items: usize, k: usize) -> Self {
        Combinations::starting_at(items, k, 0)
    }

    /// Positions the stream at the combination of lexicographic rank `rank`.
    pub fn starting_at(items: usize, k: usize, rank: u64) -> Self {
        Combinations {
            items,
            current: unrank_combination(items, k, rank),
        }
    }
}

/// The combination of rank `rank` among the `k`-subsets of `0..items`.
pub fn unrank_combination(items: usize, k: usize, mut rank: u64) -> Option<Vec<usize>> {
    if k > items || rank >= binomial(items as u64, k as u64) {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    for slot in 0..k {
        loop {
            let remaining = binomial((items - next - 1) as u64, (k - slot - 1) as u64);
            if rank < remaining {
                break;
            }
            rank -= remaining;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    Some(out)
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut succ = out.clone();
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if succ[pos] < self.items - (k - pos) {
                succ[pos] += 1;
                for later in pos + 1..k {
                    succ[later] = succ[later - 1] + 1;
                }
                self.current = Some(succ);
                break;
            }
        }
        Some(out)
    }
}

fn grid_point(grid: u32, index: usize) -> (i64, i64) {
    let g = grid as usize;
    ((index / g) as i64, (index % g) as i64)
}

fn check_grid(n: usize, grid: u32) -> Result<(), CoreError> {
    if n == 0 || grid < 2 || (grid as usize).pow(2) < n {
        return Err(CoreError::GridTooSmall { n, grid });
    }
    Ok(())
}

/// All `n`-subsets of the `grid × grid` lattice `{0..grid}²`, in
/// lexicographic order of the points.
pub fn enumerate_configs(
    n: usize,
    grid: u32,
) -> Result<impl Iterator<Item = PointConfig>, CoreError> {
    check_grid(n, grid)?;
    let items = (grid as usize).pow(2);
    Ok(Combinations::new(items, n).map(move |combo| config_from_combination(grid, &combo)))
}

fn config_from_combination(grid: u32, combo: &[usize]) -> PointConfig {
    let pts: Vec<(i64, i64)> = combo.iter().map(|&k| grid_point(grid, k)).collect();
    PointConfig::from_integers(&pts).expect("distinct grid points")
}

fn check_range(n: usize, range: u32) -> Result<(), CoreError> {
    let side = 2 * range as u64 + 1;
    if n == 0 || range < 1 || side * side < n as u64 {
        return Err(CoreError::RangeTooSmall { n, range });
    }
    Ok(())
}

/// `n` distinct points drawn uniformly from `[−range, range]²` by rejection.
pub fn random_config<R: Rng + ?Sized>(
    n: usize,
    range: u32,
    rng: &mut R,
) -> Result<PointConfig, CoreError> {
    check_range(n, range)?;
    let r = range as i64;
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.random_range(-r..=r), rng.random_range(-r..=r));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointConfig::from_integers(&pts)
}

/// Generator for the `index`-th random sample of a seeded sweep.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

impl SweepParams {
    pub fn validate(&self) -> Result<(), CoreError> {
        match self.mode {
            SweepMode::Exhaustive { grid } => check_grid(self.n, grid),
            SweepMode::Random { range, .. } => check_range(self.n, range),
        }
    }

    pub fn total(&self) -> u64 {
        match self.mode {
            SweepMode::Exhaustive { grid } => binomial((grid as u64).pow(2), self.n as u64),
            SweepMode::Random { samples, .. } => samples,
        }
    }

    /// The configuration at position `index` of the sweep.
    pub fn config_at(&self, index: u64) -> PointConfig {
        match self.mode {
            SweepMode::Exhaustive { grid } => {
                let combo = unrank_combination((grid as usize).pow(2), self.n, index)
                    .expect("index within sweep");
                config_from_combination(grid, &combo)
            }
            SweepMode::Random { range, seed, .. } => {
                random_config(self.n, range, &mut sample_rng(seed, index)).expect("validated range")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub invariant: String,
    pub details: String,
}

/// Per-configuration outcome; one JSONL line of a sweep stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigResult {
    pub index: u64,
    pub points: Vec<Point2>,
    pub t: usize,
    pub triangles: usize,
    pub b: usize,
    pub k: usize,
    pub h: usize,
    pub near_pencil: bool,
    /// Non-corner triangles.
    pub m: usize,
    pub determined_union: usize,
    /// `b − (n − 3)`, present when `n ≥ 4`.
    pub excess: Option<i64>,
    pub violations: Vec<Finding>,
}

/// Runs every enabled invariant suite on one configuration.
pub fn analyze_config(index: u64, cfg: &PointConfig, checks: &Checks) -> ConfigResult {
    let n = cfg.len();
    let mut violations: Vec<Finding> = Vec::new();
    let mut fail = |invariant: &str, details: String| {
        violations.push(Finding {
            invariant: invariant.to_string(),
            details,
        })
    };

    let arr = dualize_points(cfg).expect("distinct points give distinct lines");
    let analysis = ArrangementAnalysis::new(&arr);
    let counts = analysis.counts;

    if checks.counts {
        if let Err(e) = counts.check_identities() {
            fail("counts", e);
        }
        let records = stable_lines_from_analysis(&analysis);
        if records.len() != counts.b {
            fail(
                "duality",
                format!("{} stable lines but b = {}", records.len(), counts.b),
            );
        }
    }

    if checks.cross_oracle {
        let pairwise: BTreeSet<Point2> = arr
            .lines()
            .iter()
            .enumerate()
            .flat_map(|(i, l1)| {
                arr.lines()[i + 1..].iter().map(move |l2| {
                    pairwise_stable_intersection(l1, l2)
                        .expect("distinct")
                        .point
                })
            })
            .collect();
        let faces: BTreeSet<Point2> = analysis
            .cells
            .iter()
            .filter(|c| c.class != CellClass::Triangle)
            .map(|c| c.dual_point.clone())
            .collect();
        if pairwise.len() != counts.b || pairwise != faces {
            fail(
                "cross_oracle",
                format!(
                    "{} pairwise stable intersections, {} non-triangular faces",
                    pairwise.len(),
                    faces.len()
                ),
            );
        }
    }

    let sub = match DualSubdivision::from_analysis(&arr, &analysis) {
        Ok(sub) => Some(sub),
        Err(e) => {
            fail("tiling", e.to_string());
            None
        }
    };

    let mut near_pencil = false;
    let mut m = 0;
    let mut union = 0;
    if let Some(sub) = &sub {
        near_pencil = is_near_pencil(sub);
        let non_corner = sub.non_corner_triangles();
        m = non_corner.len();
        union = determined_union_count(sub);

        if checks.subdivision {
            if let Err(v) = check_regularity(sub) {
                fail("regularity", v.to_string());
            }
        }

        if checks.triangle_lemma && counts.t == n && counts.triangles > 3 {
            fail(
                "triangle_lemma",
                format!("t = n = {n} with {} triangles", counts.triangles),
            );
        }

        if checks.determined {
            for &t in &non_corner {
                let boundary = boundary_edge_count(&sub.cells[t], sub.n);
                let need = if boundary == 0 { 3 } else { 1 };
                let got = determined_faces(sub, t).expect("triangle").len();
                if got < need {
                    fail(
                        "determined_faces",
                        format!(
                            "triangle at {} with {boundary} boundary edges determines {got} < {need}",
                            sub.cells[t].dual_point
                        ),
                    );
                }
            }
            if !(counts.k >= union && union >= m) {
                fail(
                    "determined_union",
                    format!("k = {}, union = {union}, m = {m}", counts.k),
                );
            }
        }

        if checks.dbe && n >= 4 {
            let verdict = DbeVerdict::new(n, counts.b, near_pencil);
            if !verdict.bound_holds {
                fail("dbe_bound", format!("b = {} < v - 3 = {}", counts.b, n - 3));
            }
            if !verdict.consistent {
                fail(
                    "dbe_near_pencil",
                    format!("b = v - 3 = {} but not a near-pencil", counts.b),
                );
            }
            let corners = counts.triangles - m;
            if verdict.equality && (corners != 3 || m != 0) {
                fail(
                    "sharpness",
                    format!("b = v - 3 with {corners} corner and {m} other triangles"),
                );
            }
        }
    }

    ConfigResult {
        index,
        points: cfg.points().to_vec(),
        t: counts.t,
        triangles: counts.triangles,
        b: counts.b,
        k: counts.k,
        h: counts.h,
        near_pencil,
        m,
        determined_union: union,
        excess: (n >= 4).then(|| counts.b as i64 - (n as i64 - 3)),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: u64,
    pub config: PointConfig,
    pub invariant: String,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub configs_tested: u64,
    pub violations: Vec<Violation>,
    /// `b − (n − 3)` → number of configurations.
    pub histogram: BTreeMap<i64, u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, result: &ConfigResult) {
        self.configs_tested += 1;
        if let Some(e) = result.excess {
            *self.histogram.entry(e).or_insert(0) += 1;
        }
        for f in &result.violations {
            self.violations.push(Violation {
                index: result.index,
                config: PointConfig::new(result.points.clone()).expect("valid config"),
                invariant: f.invariant.clone(),
                details: f.details.clone(),
            });
        }
    }

    /// Merges a report covering later indices into this one.
    pub fn merge(&mut self, other: SweepReport) {
        self.configs_tested += other.configs_tested;
        self.violations.extend(other.violations);
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_insert(0) += v;
        }
        self.elapsed += other.elapsed;
    }
}

fn map_range<T, F>(range: std::ops::Range<u64>, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.map(f).collect(),
    }
}

/// Runs a sweep, handing each configuration result to `sink` in index order.
pub fn run_sweep_with<S>(
    params: &SweepParams,
    exec: Execution,
    mut sink: S,
) -> Result<SweepReport, CoreError>
where
    S: FnMut(&ConfigResult),
{
    params.validate()?;
    let started = Instant::now();
    let total = params.total();
    let mut report = SweepReport::default();
    let mut start = 0;
    while start < total {
        let end = (start + BATCH).min(total);
        let results = map_range(start..end, exec, |idx| {
            analyze_config(idx, &params.config_at(idx), &params.checks)
        });
        for r in &results {
            sink(r);
            report.record(r);
        }
        start = end;
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

pub fn run_sweep(params: &SweepParams) -> Result<SweepReport, CoreError> {
    run_sweep_with(params, Execution::default(), |_| {})
}

/// Searches the `grid × grid` lattice for `n`-point configurations without an
/// ordinary stable line. Returns up to `limit` witnesses from the first batch
/// that contains one, or `BudgetExhausted` after `budget` configurations.
pub fn sg_failure_search(
    n: usize,
    grid: u32,
    budget: u64,
    limit: usize,
    exec: Execution,
) -> Result<Vec<PointConfig>, CoreError> {
    if !(4..=5).contains(&n) {
        return Err(CoreError::UnsupportedSearchSize(n));
    }
    let params = SweepParams::exhaustive(n, grid);
    params.validate()?;
    let total = params.total().min(budget);
    let mut start = 0;
    while start < total {
        let end = (start + BATCH).min(total);
        let hits = map_range(start..end, exec, |idx| {
            let cfg = params.config_at(idx);
            let arr = dualize_points(&cfg).expect("distinct");
            let ordinary = stable_lines_from_analysis(&ArrangementAnalysis::new(&arr))
                .iter()
                .any(|r| r.incident.len() == 2);
            (!ordinary).then_some(cfg)
        });
        let witnesses: Vec<PointConfig> = hits.into_iter().flatten().take(limit).collect();
        if !witnesses.is_empty() {
            return Ok(witnesses);
        }
        start = end;
    }
    Err(CoreError::BudgetExhausted(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::ordinary_stable_lines;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_configs(1, 2).unwrap().count(), 4);
        assert_eq!(enumerate_configs(4, 4).unwrap().count(), 1820);
        assert_eq!(enumerate_configs(2, 2).unwrap().count(), 6);
        assert!(matches!(
            enumerate_configs(4, 1),
            Err(CoreError::GridTooSmall { .. })
        ));
        assert!(matches!(
            enumerate_configs(5, 2),
            Err(CoreError::GridTooSmall { .. })
        ));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let first: Vec<Vec<Point2>> = enumerate_configs(2, 2)
            .unwrap()
            .map(|c| c.points().to_vec())
            .collect();
        let p = |x, y| Point2::new(x, y);
        assert_eq!(first[0], vec![p(0, 0), p(0, 1)]);
        assert_eq!(first[5], vec![p(1, 0), p(1, 1)]);
    }

    #[test]
    fn unrank_agrees_with_iteration() {
        for (rank, combo) in Combinations::new(9, 4).enumerate() {
            assert_eq!(unrank_combination(9, 4, rank as u64), Some(combo));
        }
        assert_eq!(unrank_combination(9, 4, binomial(9, 4)), None);
        let tail: Vec<Vec<usize>> = Combinations::starting_at(6, 3, 17).collect();
        assert_eq!(tail, vec![vec![2, 3, 5], vec![2, 4, 5], vec![3, 4, 5]]);
    }

    #[test]
    fn random_configs() {
        let a = random_config(4, 10, &mut sample_rng(42, 0)).unwrap();
        let b = random_config(4, 10, &mut sample_rng(42, 0)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_config(4, 10, &mut sample_rng(42, 1)).unwrap());
        assert_eq!(random_config(5, 1, &mut sample_rng(0, 0)).unwrap().len(), 5);
        assert_eq!(random_config(9, 1, &mut sample_rng(0, 0)).unwrap().len(), 9);
        assert_eq!(
            random_config(10, 1, &mut sample_rng(0, 0)),
            Err(CoreError::RangeTooSmall { n: 10, range: 1 })
        );
    }

    #[test]
    fn pencil_lands_in_the_zero_bucket() {
        let cfg = PointConfig::from_integers(&[(0, 0), (0, -2), (-2, 0), (2, 2)]).unwrap();
        let r = analyze_config(0, &cfg, &Checks::all());
        assert_eq!(r.excess, Some(0));
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn small_exhaustive_sweep_is_clean_and_thread_independent() {
        let params = SweepParams::exhaustive(4, 3);
        let mut seq = Vec::new();
        let a = run_sweep_with(&params, Execution::Sequential, |r| seq.push(r.clone())).unwrap();
        let mut par = Vec::new();
        let b = run_sweep_with(&params, Execution::Parallel, |r| par.push(r.clone())).unwrap();
        assert_eq!(a.configs_tested, 126);
        assert!(a.passed(), "{:?}", a.violations);
        assert_eq!(seq, par);
        assert_eq!((a.histogram, a.violations), (b.histogram, b.violations));
    }

    #[test]
    fn failure_search() {
        let w = sg_failure_search(4, 5, u64::MAX, 1, Execution::Parallel).unwrap();
        assert_eq!(w.len(), 1);
        assert!(ordinary_stable_lines(&w[0]).unwrap().is_empty());
        assert_eq!(
            sg_failure_search(2, 5, 10, 1, Execution::Sequential),
            Err(CoreError::UnsupportedSearchSize(2))
        );
        assert_eq!(
            sg_failure_search(5, 6, 3, 1, Execution::Sequential),
            Err(CoreError::BudgetExhausted(3))
        );
    }
}
