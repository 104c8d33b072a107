//! One function per subcommand. Each returns a report holding the JSON
//! object, the human-readable text, and the exit code.

use moment_core::hankel::PositivityClass;
use moment_core::oracle::fixture_with_constant;
use moment_core::rational::format_rational;
use moment_core::solver::{forced_extension, min_poly as solver_min_poly, minimal_extension};
use moment_core::sufficiency::sufficiency_report;
use moment_core::{
    classify_with, lform_eval, realizable_on_NN, Error, FixtureCase, GridSpec, MomentVector, Rational, RootPattern,
    SolverConfig, SymmetricRationalMatrix, Verdict,
};
use serde_json::{json, Map, Value};

use crate::input::Item;

pub const SCHEMA: u64 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvariantViolation(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

pub fn error_report(command: &str, e: &Error) -> Report {
    let json = json!({"schema": SCHEMA, "command": command, "error": e.to_string()});
    Report { json, text: format!("error: {e}"), code: exit_code(e) }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("certificate types serialize")
}

fn header(command: &str, item: &Item) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    map.insert("moments".into(), json!(strings(item.moments.as_slice())));
    map.insert("grid".into(), to_value(&item.grid));
    map
}

fn merge(mut base: Map<String, Value>, extra: Value) -> Value {
    if let Value::Object(extra) = extra {
        base.extend(extra);
    }
    Value::Object(base)
}

fn first(item: &Item, n: Option<usize>) -> Result<MomentVector, Error> {
    match n {
        Some(n) => item.moments.prefix(n),
        None => Ok(item.moments.clone()),
    }
}

pub fn check(item: &Item, config: &SolverConfig) -> Result<Report, Error> {
    let verdict = classify_with(&item.moments, &item.grid, config)?;
    let code = if verdict.is_realizable() { EXIT_OK } else { EXIT_NO };
    Ok(Report {
        json: merge(header("check", item), to_value(&verdict)),
        text: format!("m = {} on {}\n{verdict}", item.moments, item.grid.describe()),
        code,
    })
}

/// The minimizing polynomial of degree `n` (default: the vector length) and,
/// when all `n` moments are present, its value.
pub fn min_poly(item: &Item, n: Option<usize>, config: &SolverConfig) -> Result<Report, Error> {
    let n = n.unwrap_or(item.moments.len());
    if n == 0 {
        return Err(Error::Domain("--n must be at least 1".into()));
    }
    let prefix = item.moments.prefix(n - 1)?;
    if n > 1 {
        let verdict = classify_with(&prefix, &item.grid, config)?;
        if !matches!(verdict, Verdict::IRealizable(_)) {
            let json = merge(
                header("min-poly", item),
                json!({"n": n, "error": "the prefix m^(n-1) is not interior", "prefix_verdict": to_value(&verdict)}),
            );
            let text = format!("the prefix of length {} is not interior, so P_{n} is undefined\n{verdict}", n - 1);
            return Ok(Report { json, text, code: EXIT_NO });
        }
    }
    let p = solver_min_poly(&item.moments, n, &item.grid, config.strategy)?;
    let roots = p.roots().map(strings).unwrap_or_default();
    let mut extra = json!({"n": n, "polynomial": to_value(&p), "roots": roots});
    let mut text = format!("P_{n} = {p}\nroots: {}", roots.join(", "));
    let mut code = EXIT_OK;
    if item.moments.len() >= n {
        let value = lform_eval(&p, &item.moments.prefix(n)?)?;
        extra["value"] = json!(format_rational(&value));
        text.push_str(&format!("\nL_P(m) = {}", format_rational(&value)));
        if value < Rational::from_integer(0.into()) {
            code = EXIT_NO;
        }
    }
    Ok(Report { json: merge(header("min-poly", item), extra), text, code })
}

/// The next moment: the minimal value after an interior prefix, the forced
/// value after a boundary prefix.
pub fn extend(item: &Item, n: Option<usize>, config: &SolverConfig) -> Result<Report, Error> {
    let m = first(item, n)?;
    let verdict = classify_with(&m, &item.grid, config)?;
    let next = m.len() + 1;
    let (extra, text) = match &verdict {
        Verdict::IRealizable(_) => {
            let (value, mu) = minimal_extension(&m, &item.grid, config.strategy)?;
            (
                json!({"m_next_min": format_rational(&value), "index": next, "measure": to_value(&mu)}),
                format!("m_{next} >= {}, with equality only for {mu}", format_rational(&value)),
            )
        }
        Verdict::BRealizable(c) => {
            let shift = next - c.polynomial.degree().expect("nonzero");
            let value = forced_extension(&m, &c.polynomial, shift)?;
            (
                json!({"m_next_forced": format_rational(&value), "index": next, "measure": to_value(&c.measure)}),
                format!("m_{next} is forced to {} by the unique measure {}", format_rational(&value), c.measure),
            )
        }
        Verdict::NotRealizable(_) => {
            let json = merge(header("extend", item), json!({"error": "not realizable", "verdict": to_value(&verdict)}));
            return Ok(Report { json, text: format!("no extension exists\n{verdict}"), code: EXIT_NO });
        }
    };
    Ok(Report { json: merge(header("extend", item), extra), text, code: EXIT_OK })
}

fn matrix_rows(d: &SymmetricRationalMatrix) -> Vec<Vec<String>> {
    d.rows().iter().map(|r| strings(r)).collect()
}

fn class_name(c: &PositivityClass) -> &'static str {
    match c {
        PositivityClass::PositiveDefinite => "positive_definite",
        PositivityClass::PositiveSemidefiniteSingular { .. } => "semidefinite_singular",
        PositivityClass::Indefinite { .. } => "indefinite",
    }
}

pub fn sufficient(item: &Item) -> Result<Report, Error> {
    if item.grid != GridSpec::Nn0 {
        return Err(Error::Domain("the sufficient test is stated for the nonnegative integers (grid nn0)".into()));
    }
    let report = sufficiency_report(&item.moments)?;
    let ok = report.iter().all(|(_, c)| c.is_definite());
    let matrices: Vec<Value> = report
        .iter()
        .enumerate()
        .map(|(i, (d, c))| json!({"j": i + 1, "class": class_name(c), "rows": matrix_rows(d)}))
        .collect();
    let mut text = format!("m = {}\n", item.moments);
    for (i, (d, c)) in report.iter().enumerate() {
        let rows: Vec<String> = matrix_rows(d).iter().map(|r| format!("[{}]", r.join(", "))).collect();
        text.push_str(&format!("D_{} = [{}]: {}\n", i + 1, rows.join(", "), class_name(c)));
    }
    text.push_str(if ok {
        "sufficient: all D_j positive definite, so m is I-realizable"
    } else {
        "inconclusive: some D_j is not positive definite"
    });
    Ok(Report {
        json: merge(header("sufficient", item), json!({"sufficient": ok, "matrices": matrices})),
        text,
        code: if ok { EXIT_OK } else { EXIT_NO },
    })
}

/// The finite condition set on `{0..N}`; `N` from `--N` or an `nn:N` grid.
pub fn oracle(item: &Item, big_n: Option<u64>) -> Result<Report, Error> {
    let big_n = match (big_n, &item.grid) {
        (Some(n), _) => n,
        (None, GridSpec::Nn { n }) => *n,
        _ => return Err(Error::Domain("oracle needs --N or a grid nn:N".into())),
    };
    if (big_n as usize) < item.moments.len() {
        return Err(Error::Domain(format!("need N >= n, got N = {big_n}, n = {}", item.moments.len())));
    }
    let report = realizable_on_NN(&item.moments, big_n)?;
    let text = match &report.first_violation {
        None => format!("m = {} satisfies every condition on {{0..{big_n}}}", item.moments),
        Some(v) => format!(
            "m = {} violates the condition for P = {}: L_P(m) = {} < 0",
            item.moments,
            v.polynomial,
            format_rational(&v.value)
        ),
    };
    let mut extra = to_value(&report);
    extra["N"] = json!(big_n);
    let mut base = header("oracle", item);
    base.insert("grid".into(), to_value(&GridSpec::Nn { n: big_n }));
    Ok(Report {
        json: merge(base, extra),
        text,
        code: if report.satisfied { EXIT_OK } else { EXIT_NO },
    })
}

pub fn fixture(alpha: &[Rational], case: FixtureCase, n: usize, c: &Rational) -> Result<Report, Error> {
    let pattern = RootPattern::new(alpha.to_vec(), &GridSpec::Nn0)?;
    let m = fixture_with_constant(&pattern, case, n, c)?;
    let json = json!({
        "schema": SCHEMA,
        "command": "fixture",
        "alpha": strings(alpha),
        "case": to_value(&case),
        "n": n,
        "moments": strings(m.as_slice()),
    });
    let list = strings(m.as_slice()).join(",");
    Ok(Report { json, text: list, code: EXIT_OK })
}
