//! Parsing of `{"lines": [...]}` and `{"points": [...]}` input files.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;
use troplines_core::{Arrangement, CoreError, Point2, PointConfig, Rational, TropicalLine};

pub enum Input {
    Lines(Arrangement),
    Points(PointConfig),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Lines(_) => "lines",
            Input::Points(_) => "points",
        }
    }
}

pub fn read_input(path: &Path) -> Result<Input> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_input(&text).with_context(|| format!("invalid input file {}", path.display()))
}

pub fn parse_input(text: &str) -> Result<Input> {
    if text.trim().is_empty() {
        bail!("input is empty");
    }
    let value: Value = serde_json::from_str(text).context("input is not valid JSON")?;
    let obj = value
        .as_object()
        .ok_or_else(|| anyhow!("top level must be an object"))?;
    match (obj.get("lines"), obj.get("points")) {
        (Some(_), Some(_)) => bail!("input has both \"lines\" and \"points\""),
        (Some(lines), None) => parse_lines(lines).map(Input::Lines),
        (None, Some(points)) => parse_points(points).map(Input::Points),
        (None, None) => bail!("input needs a top-level \"lines\" or \"points\" key"),
    }
}

fn parse_points(value: &Value) -> Result<PointConfig> {
    let items = value
        .as_array()
        .ok_or_else(|| anyhow!("points: expected an array"))?;
    let points = items
        .iter()
        .enumerate()
        .map(|(idx, p)| parse_point(p, &format!("points[{idx}]")))
        .collect::<Result<Vec<_>>>()?;
    PointConfig::new(points).map_err(|e| match e {
        CoreError::EmptyConfig => anyhow!("points: at least one point is required"),
        other => anyhow!("points: {other}"),
    })
}

fn parse_lines(value: &Value) -> Result<Arrangement> {
    let items = value
        .as_array()
        .ok_or_else(|| anyhow!("lines: expected an array"))?;
    let lines = items
        .iter()
        .enumerate()
        .map(|(idx, l)| {
            let field = format!("lines[{idx}]");
            let vertex = l
                .get("vertex")
                .ok_or_else(|| anyhow!("{field}.vertex: missing"))?;
            parse_point(vertex, &format!("{field}.vertex")).map(TropicalLine::new)
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(lines).map_err(|e| match e {
        CoreError::EmptyArrangement => anyhow!("lines: at least one line is required"),
        CoreError::DuplicateLine { first, second } => {
            anyhow!("lines: duplicate line at index {second} (same as index {first})")
        }
        other => anyhow!("lines: {other}"),
    })
}

fn parse_point(value: &Value, field: &str) -> Result<Point2> {
    match value.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point2::new(
            parse_rational(x, &format!("{field}[0]"))?,
            parse_rational(y, &format!("{field}[1]"))?,
        )),
        _ => bail!("{field}: expected a pair [x, y]"),
    }
}

fn parse_rational(value: &Value, field: &str) -> Result<Rational> {
    match value {
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from)
            .ok_or_else(|| anyhow!("{field}: {n} is not an integer; use a \"p/q\" string")),
        Value::String(s) => s.parse().map_err(|e| anyhow!("{field}: {e}")),
        _ => bail!("{field}: expected an integer or a \"p/q\" string"),
    }
}

/// Parses `x,y` with rational coordinates.
pub fn parse_point_arg(s: &str) -> Result<Point2, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let coord = |c: &str| {
        c.trim()
            .parse::<Rational>()
            .map_err(|e| format!("{c:?}: {e}"))
    };
    Ok(Point2::new(coord(x)?, coord(y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        format!("{:#}", parse_input(text).err().unwrap())
    }

    #[test]
    fn detects_kind() {
        assert_eq!(
            parse_input(r#"{"points": [[0, 0], ["1/2", -3]]}"#)
                .unwrap()
                .kind(),
            "points"
        );
        assert_eq!(
            parse_input(r#"{"lines": [{"vertex": [1, "2"]}]}"#)
                .unwrap()
                .kind(),
            "lines"
        );
    }

    #[test]
    fn errors_name_the_field() {
        assert!(err("").contains("empty"));
        assert!(
            err(r#"{"points": [[0, 0], [1, 1], [0, 0]]}"#).contains("duplicate point at index 2")
        );
        assert!(err(r#"{"points": [[0, 0], [1]]}"#).contains("points[1]"));
        assert!(err(r#"{"points": [[0, "1/0"]]}"#).contains("points[0][1]"));
        assert!(err(r#"{"lines": [{"apex": [0, 0]}]}"#).contains("lines[0].vertex"));
        assert!(err(r#"{"shapes": []}"#).contains("\"lines\" or \"points\""));
        assert!(err(r#"{"points": []}"#).contains("at least one point"));
    }

    #[test]
    fn point_arguments() {
        assert_eq!(parse_point_arg("-3,2").unwrap(), Point2::new(-3, 2));
        assert_eq!(
            parse_point_arg("1/2, 4").unwrap(),
            Point2::new(Rational::new(1, 2), 4)
        );
        assert!(parse_point_arg("3").is_err());
    }
}
