mod input;
mod render;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use troplines_core::incidence::stable_lines_from_analysis;
use troplines_core::sweep::Checks;
use troplines_core::{
    cramer_stable_solution, dualize_points, is_near_pencil, run_sweep_with, sg_failure_search,
    Arrangement, ArrangementAnalysis, ArrangementReport, DbeVerdict, DualSubdivision, Execution,
    Point2, Rational, StableLineRecord, SweepMode, SweepParams, TropMatrix2x3, TropScalar,
};

use crate::input::{parse_point_arg, read_input, Input};

#[derive(Parser, Debug)]
#[command(
    name = "troplines",
    version,
    about = "Stable lines and dual subdivisions of tropical line arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a lines or points file and write a JSON report.
    Analyze {
        input: PathBuf,
        /// Report path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the dual subdivision (cells and lift) as JSON.
        #[arg(long)]
        subdivision: Option<PathBuf>,
    },
    /// Draw the arrangement and its dual subdivision side by side.
    Render {
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Sweep point configurations and check the stable-line bounds.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Grid side for exhaustive mode; points lie in {0..grid-1}².
        #[arg(long, required_if_eq("mode", "exhaustive"))]
        grid: Option<u32>,
        #[arg(long, required_if_eq("mode", "random"))]
        samples: Option<u64>,
        /// Coordinates are drawn from [-range, range].
        #[arg(long, default_value_t = 20)]
        range: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 1 runs sequentially.
        #[arg(long, env = "TROPLINES_JOBS")]
        jobs: Option<usize>,
        /// Stream one JSON record per configuration to this file.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Stable line through two points.
    StableLine {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point_arg)]
        p1: Point2,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point_arg)]
        p2: Point2,
    },
    /// Look for configurations on a grid with no ordinary stable line.
    SgSearch {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        grid: u32,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

/// Successful runs either verify or find a counterexample.
enum Outcome {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            input,
            output,
            subdivision,
        } => analyze(&input, output.as_deref(), subdivision.as_deref()),
        Command::Render { input, svg } => render(&input, &svg),
        Command::Verify {
            n,
            mode,
            grid,
            samples,
            range,
            seed,
            jobs,
            jsonl,
        } => {
            let mode = match mode {
                Mode::Exhaustive => SweepMode::Exhaustive {
                    grid: grid.expect("required by clap"),
                },
                Mode::Random => SweepMode::Random {
                    samples: samples.expect("required by clap"),
                    range,
                    seed,
                },
            };
            let params = SweepParams {
                n,
                mode,
                checks: Checks::all(),
            };
            verify(&params, jobs, jsonl.as_deref())
        }
        Command::StableLine { p1, p2 } => stable_line(&p1, &p2),
        Command::SgSearch {
            n,
            grid,
            budget,
            limit,
        } => sg_search(n, grid, budget, limit),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    input: &'static str,
    #[serde(flatten)]
    arrangement: ArrangementReport,
    near_pencil: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    stable_lines: Option<Vec<StableLineRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dbe: Option<DbeVerdict>,
}

fn write_json(path: Option<&Path>, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn arrangement_of(input: &Input) -> Result<Arrangement> {
    Ok(match input {
        Input::Lines(arr) => arr.clone(),
        Input::Points(cfg) => dualize_points(cfg)?,
    })
}

fn analyze(path: &Path, output: Option<&Path>, subdivision: Option<&Path>) -> Result<Outcome> {
    let input = read_input(path)?;
    let arr = arrangement_of(&input)?;
    let analysis = ArrangementAnalysis::new(&arr);
    let sub = DualSubdivision::from_analysis(&arr, &analysis)?;
    let near_pencil = is_near_pencil(&sub);
    let (stable_lines, dbe) = match &input {
        Input::Points(cfg) => {
            let records = stable_lines_from_analysis(&analysis);
            let dbe =
                (cfg.len() >= 4).then(|| DbeVerdict::new(cfg.len(), records.len(), near_pencil));
            (Some(records), dbe)
        }
        Input::Lines(_) => (None, None),
    };
    let report = AnalyzeReport {
        input: input.kind(),
        arrangement: analysis.report(),
        near_pencil,
        stable_lines,
        dbe,
    };
    if let Some(p) = subdivision {
        write_json(Some(p), &sub.export())?;
    }
    write_json(output, &report)?;
    Ok(Outcome::Ok)
}

fn render(path: &Path, svg: &Path) -> Result<Outcome> {
    let input = read_input(path)?;
    let arr = arrangement_of(&input)?;
    let analysis = ArrangementAnalysis::new(&arr);
    let sub = DualSubdivision::from_analysis(&arr, &analysis)?;
    std::fs::write(svg, render::render_svg(&arr, &analysis, &sub))
        .with_context(|| format!("cannot write {}", svg.display()))?;
    Ok(Outcome::Ok)
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

fn verify(params: &SweepParams, jobs: Option<usize>, jsonl: Option<&Path>) -> Result<Outcome> {
    params.validate()?;
    let mut sink = match jsonl {
        Some(p) => Some(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => None,
    };
    let mut write_err = None;
    let mut emit = |r: &troplines_core::ConfigResult| {
        if let Some(w) = sink.as_mut() {
            if write_err.is_none() {
                if let Err(e) = serde_json::to_writer(&mut *w, r)
                    .map_err(anyhow::Error::from)
                    .and_then(|_| {
                        w.write_all(b"\n")?;
                        Ok(())
                    })
                {
                    write_err = Some(e);
                }
            }
        }
    };
    let report = match jobs {
        Some(1) => run_sweep_with(params, Execution::Sequential, &mut emit)?,
        Some(j) => {
            thread_pool(j)?.install(|| run_sweep_with(params, Execution::Parallel, &mut emit))?
        }
        None => run_sweep_with(params, Execution::Parallel, &mut emit)?,
    };
    if let Some(e) = write_err {
        return Err(e.context("cannot write the JSONL stream"));
    }
    if let Some(mut w) = sink {
        w.flush()?;
    }

    let histogram: serde_json::Map<String, serde_json::Value> = report
        .histogram
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let summary = json!({
        "params": params,
        "configs_tested": report.configs_tested,
        "violation_count": report.violations.len(),
        "violations": report.violations,
        "histogram": histogram,
        "passed": report.passed(),
        "elapsed_ms": report.elapsed.as_millis() as u64,
    });
    write_json(None, &summary)?;
    if let Some(v) = report.violations.first() {
        eprintln!(
            "counterexample: {} at index {} ({}): {:?}",
            v.invariant,
            v.index,
            v.details,
            v.config.points()
        );
        return Ok(Outcome::Violation);
    }
    Ok(Outcome::Ok)
}

fn stable_line(p1: &Point2, p2: &Point2) -> Result<Outcome> {
    if p1 == p2 {
        bail!("--p1 and --p2 must differ (both are {p1})");
    }
    let row = |p: &Point2| [p.x.clone(), p.y.clone(), Rational::zero()];
    let solution = cramer_stable_solution(&TropMatrix2x3::from_finite([row(p1), row(p2)]))?;
    let coeffs: Vec<String> = solution
        .iter()
        .map(|s| match s {
            TropScalar::Finite(r) => r.to_string(),
            TropScalar::NegInfinity => "-inf".to_string(),
        })
        .collect();
    let line = troplines_core::stable_line_two_points(p1, p2)?;
    println!("coefficients ({})", coeffs.join(" : "));
    println!("vertex {}", line.vertex);
    Ok(Outcome::Ok)
}

fn sg_search(n: usize, grid: u32, budget: u64, limit: usize) -> Result<Outcome> {
    let witnesses = sg_failure_search(n, grid, budget, limit, Execution::Parallel)?;
    let points: Vec<&[Point2]> = witnesses.iter().map(|w| w.points()).collect();
    write_json(None, &json!({ "n": n, "grid": grid, "witnesses": points }))?;
    Ok(Outcome::Ok)
}
