//! Moment vectors and grids from flags or a JSON file.

use std::fs;
use std::path::Path;

use moment_core::rational::{int, parse_rational};
use moment_core::{Error, GridSpec, MomentVector, Rational};
use serde_json::Value;

/// One vector to run a command on.
#[derive(Debug, Clone)]
pub struct Item {
    pub moments: MomentVector,
    pub grid: GridSpec,
}

fn rational_from_json(v: &Value, position: usize) -> Result<Rational, Error> {
    let at = |msg: String| Error::Parse(format!("entry {position}: {msg}"));
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| match e {
            Error::Parse(msg) => at(msg),
            other => other,
        }),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(int(i)),
            None => Err(at(format!(
                "`{n}` is not an integer; write exact values as p/q strings (e.g. \"3/2\")"
            ))),
        },
        other => Err(at(format!("expected a rational string, got {other}"))),
    }
}

fn item_from_json(v: &Value, default_grid: &GridSpec) -> Result<Item, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("each input must be an object with a \"moments\" list".into()))?;
    let list = obj
        .get("moments")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"moments\" list".into()))?;
    if list.is_empty() {
        return Err(Error::Parse("moment list is empty".into()));
    }
    let moments = list
        .iter()
        .enumerate()
        .map(|(i, x)| rational_from_json(x, i + 1))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = match obj.get("grid") {
        None | Some(Value::Null) => default_grid.clone(),
        Some(Value::String(s)) => GridSpec::parse(s)?,
        Some(g) => {
            let grid: GridSpec =
                serde_json::from_value(g.clone()).map_err(|e| Error::Parse(format!("bad grid: {e}")))?;
            grid.validate()?;
            grid
        }
    };
    Ok(Item { moments: MomentVector::new(moments), grid })
}

/// Items in a file: a single object, or an array of objects for batch runs.
/// Returns whether the file held an array.
pub fn read_file(path: &Path, default_grid: &GridSpec) -> Result<(Vec<Result<Item, Error>>, bool), Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: invalid JSON: {e}", path.display())))?;
    match value {
        Value::Array(items) => Ok((items.iter().map(|v| item_from_json(v, default_grid)).collect(), true)),
        other => Ok((vec![item_from_json(&other, default_grid)], false)),
    }
}
