//! JSON structure-constant files.
//!
//! ```json
//! {"dim": 3, "basis": ["h", "e", "f"],
//!  "brackets": [{"i": 0, "j": 1, "terms": [[1, "2"]]}]}
//! ```
//!
//! Indices are 0-based, only `i < j` is listed, and coefficients are strings
//! `"p/q"` or `"p"`. Missing pairs bracket to zero.

use serde_json::{json, Value};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError, StructureTable};
use crate::linalg::{format_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("brackets[{entry}]: {reason}")]
    Entry { entry: usize, reason: String },
    #[error("brackets[{entry}]: index {index} out of range for dim {dim}")]
    IndexOutOfRange { entry: usize, index: usize, dim: usize },
    #[error("brackets[{entry}]: requires i < j, got i = {i}, j = {j}")]
    NotAscending { entry: usize, i: usize, j: usize },
    #[error("brackets[{entry}]: duplicate pair ({i},{j})")]
    Duplicate { entry: usize, i: usize, j: usize },
    #[error("brackets[{entry}]: bad rational '{text}'")]
    BadRational { entry: usize, text: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Emits nonzero brackets `[x_i, x_j]` with `i < j`, in lexicographic order.
pub fn to_value(g: &LieAlgebra) -> Value {
    let n = g.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let terms: Vec<Value> = g
                .basis_bracket(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| json!([k, format_rational(c)]))
                .collect();
            if !terms.is_empty() {
                brackets.push(json!({"i": i, "j": j, "terms": terms}));
            }
        }
    }
    json!({"dim": n, "basis": g.names(), "brackets": brackets})
}

pub fn emit(g: &LieAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(g)).expect("serializable");
    s.push('\n');
    s
}

fn index(v: &Value, entry: usize, what: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| FormatError::Entry { entry, reason: format!("{what} must be a nonnegative integer") })
}

fn coefficient(v: &Value, entry: usize) -> Result<Rational, FormatError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        other => return Err(FormatError::BadRational { entry, text: other.to_string() }),
    };
    parse_rational(&text).ok_or(FormatError::BadRational { entry, text })
}

pub fn parse(text: &str) -> Result<LieAlgebra, FormatError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| FormatError::Malformed(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| FormatError::Malformed("top level must be an object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| FormatError::Malformed("missing or non-integer 'dim'".into()))? as usize;
    let basis: Vec<String> = match obj.get("basis") {
        None => (0..dim).map(|i| format!("x{i}")).collect(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|b| b.as_str().map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| FormatError::Malformed("'basis' must be an array of strings".into()))?,
        Some(_) => return Err(FormatError::Malformed("'basis' must be an array of strings".into())),
    };
    if basis.len() != dim {
        return Err(FormatError::Malformed(format!("'basis' has {} names but dim is {dim}", basis.len())));
    }
    let brackets = match obj.get("brackets") {
        None => &[][..],
        Some(Value::Array(items)) => items.as_slice(),
        Some(_) => return Err(FormatError::Malformed("'brackets' must be an array".into())),
    };

    let mut table = StructureTable::zeros(dim);
    let mut seen = std::collections::HashSet::new();
    for (entry, b) in brackets.iter().enumerate() {
        let b = b.as_object().ok_or(FormatError::Entry { entry, reason: "must be an object".into() })?;
        let field = |name: &str| b.get(name).ok_or(FormatError::Entry { entry, reason: format!("missing '{name}'") });
        let i = index(field("i")?, entry, "i")?;
        let j = index(field("j")?, entry, "j")?;
        for idx in [i, j] {
            if idx >= dim {
                return Err(FormatError::IndexOutOfRange { entry, index: idx, dim });
            }
        }
        if i >= j {
            return Err(FormatError::NotAscending { entry, i, j });
        }
        if !seen.insert((i, j)) {
            return Err(FormatError::Duplicate { entry, i, j });
        }
        let terms = field("terms")?
            .as_array()
            .ok_or(FormatError::Entry { entry, reason: "'terms' must be an array".into() })?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let pair = t
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or(FormatError::Entry { entry, reason: "each term must be [k, \"p/q\"]".into() })?;
            let k = index(&pair[0], entry, "term index")?;
            if k >= dim {
                return Err(FormatError::IndexOutOfRange { entry, index: k, dim });
            }
            if parsed.iter().any(|(prev, _)| *prev == k) {
                return Err(FormatError::Entry { entry, reason: format!("term index {k} repeated") });
            }
            parsed.push((k, coefficient(&pair[1], entry)?));
        }
        table.set_terms(i, j, &parsed);
    }
    Ok(LieAlgebra::new(basis, table)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    #[test]
    fn round_trip_builders() {
        for (_, g) in corpus() {
            assert_eq!(parse(&emit(&g)).unwrap(), g);
        }
    }

    #[test]
    fn emitted_sl2() {
        let v = to_value(&sl2());
        assert_eq!(v["dim"], 3);
        assert_eq!(v["brackets"].as_array().unwrap().len(), 3);
        assert_eq!(v["brackets"][0], json!({"i": 0, "j": 1, "terms": [[1, "2"]]}));
    }

    #[test]
    fn rejections() {
        let doc = |brackets: &str| format!(r#"{{"dim": 3, "basis": ["a","b","c"], "brackets": {brackets}}}"#);
        assert!(matches!(parse("not json"), Err(FormatError::Malformed(_))));
        assert!(matches!(parse(r#"{"basis": []}"#), Err(FormatError::Malformed(_))));
        assert!(matches!(parse(&doc(r#"[{"i":1,"j":1,"terms":[]}]"#)), Err(FormatError::NotAscending { .. })));
        assert!(matches!(parse(&doc(r#"[{"i":2,"j":1,"terms":[]}]"#)), Err(FormatError::NotAscending { .. })));
        assert!(matches!(parse(&doc(r#"[{"i":0,"j":3,"terms":[]}]"#)), Err(FormatError::IndexOutOfRange { index: 3, .. })));
        assert!(matches!(parse(&doc(r#"[{"i":0,"j":1,"terms":[[5,"1"]]}]"#)), Err(FormatError::IndexOutOfRange { .. })));
        assert!(matches!(parse(&doc(r#"[{"i":0,"j":1,"terms":[[2,"x"]]}]"#)), Err(FormatError::BadRational { .. })));
        assert!(matches!(
            parse(&doc(r#"[{"i":0,"j":1,"terms":[]},{"i":0,"j":1,"terms":[]}]"#)),
            Err(FormatError::Duplicate { entry: 1, .. })
        ));
        assert!(matches!(parse(r#"{"dim": 2, "basis": ["a"]}"#), Err(FormatError::Malformed(_))));
    }

    #[test]
    fn corrupted_sign_reports_the_triple() {
        let text = emit(&sl2()).replacen("\"-2\"", "\"2\"", 1);
        match parse(&text) {
            Err(FormatError::Lie(LieError::Jacobi(v))) => assert_eq!(v[0].triple, (0, 1, 2)),
            other => panic!("expected a jacobi violation, got {other:?}"),
        }
    }

    #[test]
    fn defaults_and_missing_pairs() {
        let g = parse(r#"{"dim": 2}"#).unwrap();
        assert_eq!(g.names(), ["x0", "x1"]);
        assert!(g.is_solvable());
    }
}
