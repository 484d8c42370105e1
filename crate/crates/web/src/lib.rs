//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns plain strings or integer vectors so the same
//! functions run natively under `cargo test`.

use liewa_core::catalog::Catalog;
use liewa_core::constructions::Builder;
use liewa_core::groups::{rep_matrix, Sl2Element};
use liewa_core::linalg::format_rational;
use liewa_core::orbit::{BallAction, Space};
use liewa_core::{format, report};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest ball radius the page may request.
pub const MAX_RADIUS: usize = 8;

fn error_json(kind: &str, message: impl ToString) -> String {
    json!({"schema_version": report::SCHEMA_VERSION, "error": {"kind": kind, "message": message.to_string()}}).to_string()
}

/// Analyzes either a builder expression (`v_sl2 3`) or a structure-constant
/// JSON document, and returns the analysis report as JSON.
#[wasm_bindgen]
pub fn analyze_json(input: &str) -> String {
    let trimmed = input.trim();
    let (name, parsed) = if trimmed.starts_with('{') {
        ("input".to_string(), format::parse(trimmed).map_err(|e| error_json("parse_error", e)))
    } else {
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let built = Builder::parse_all(&tokens).and_then(|b| b.build()).map_err(|e| error_json("usage", e));
        (trimmed.to_string(), built)
    };
    let g = match parsed {
        Ok(g) => g,
        Err(e) => return e,
    };
    match report::analyze(&name, &g, &Catalog::builtin()) {
        Ok(r) => r.to_json(),
        Err(e) => error_json("analysis", e),
    }
}

/// Orbit of `(x, y)` in `Z^2` under the ball of radius `radius`, flattened
/// as `[x0, y0, x1, y1, ...]`. Points with a coordinate outside `±bound`
/// are dropped.
#[wasm_bindgen]
pub fn orbit_points(x: i32, y: i32, radius: usize, bound: i32) -> Vec<i32> {
    let action = BallAction::new(Space::Lattice { m: 2 }, radius.min(MAX_RADIUS));
    let p = [x.into(), y.into()];
    let mut out = Vec::new();
    for q in action.orbit(&p) {
        let coords: Option<Vec<i32>> = q.iter().map(|c| i32::try_from(c).ok().filter(|v| v.abs() <= bound)).collect();
        if let Some(c) = coords {
            out.extend(c);
        }
    }
    out
}

/// `Z'(A)` for `A = [[a, b], [c, d]]` as a JSON array of rows of strings.
#[wasm_bindgen]
pub fn rep_matrix_json(m: usize, a: i32, b: i32, c: i32, d: i32) -> String {
    if m == 0 || m > 12 {
        return error_json("usage", "dimension must be between 1 and 12");
    }
    let g = match Sl2Element::from_i64(a.into(), b.into(), c.into(), d.into()) {
        Ok(g) => g,
        Err(e) => return error_json("usage", e),
    };
    let z = rep_matrix(m, &g);
    let rows: Vec<Vec<String>> = (0..m).map(|i| (0..m).map(|j| format_rational(&z[(i, j)])).collect()).collect();
    json!({"schema_version": report::SCHEMA_VERSION, "m": m, "matrix": rows}).to_string()
}
