//! The JSON instance format.
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "field": "q" | "gf:<p>",
//!   "name": "optional label",
//!   "group": { "order": n, "cayley": [[...], ...] },
//!   "algebra": {
//!     "dim": d,
//!     "structure_constants": [[i, j, k, "v"], ...],   // nonzero e_i e_j coefficients on e_k
//!     "unit": ["..."], "trace": ["..."]
//!   },
//!   "action": {
//!     "rho": [ d x d matrix per element, row-major ],
//!     "c": [[ c_{g,h} as a d-vector ]],
//!     "c_e": ["..."]
//!   }
//! }
//! ```
//!
//! Scalars are strings, either integers or `num/den`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::AlgebraData;
use crate::bundle::TwistedBundle;
use crate::group::FiniteGroup;
use crate::linalg::{Field, Matrix, Scalar};
use crate::report::Report;

pub const FORMAT_VERSION: u32 = 1;

/// Where and why parsing failed. `location` is a JSON path or `line:column`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn at(location: impl Into<String>, message: impl fmt::Display) -> Self {
        ParseError { location: location.into(), message: message.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("validation failed: {}", describe_failures(.0))]
    Validation(Box<Report>),
}

fn describe_failures(report: &Report) -> String {
    report
        .failures()
        .map(|c| match &c.witness {
            Some(w) => format!("{} at elements {:?}", c.name, w.elements),
            None => c.name.clone(),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Reinterpret every scalar in this field instead of the declared one.
    pub field: Option<Field>,
    /// Skip the twisted-bundle validation.
    pub skip_validate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: Option<String>,
    pub bundle: TwistedBundle,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileGroup {
    order: usize,
    cayley: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileAlgebra {
    dim: usize,
    structure_constants: Vec<(usize, usize, usize, String)>,
    unit: Vec<String>,
    trace: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileAction {
    rho: Vec<Vec<Vec<String>>>,
    c: Vec<Vec<Vec<String>>>,
    c_e: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    format_version: u32,
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    group: FileGroup,
    algebra: FileAlgebra,
    action: FileAction,
}

fn scalars(field: Field, path: &str, items: &[String]) -> Result<Vec<Scalar>, ParseError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| field.parse(s).map_err(|e| ParseError::at(format!("{path}[{i}]"), e)))
        .collect()
}

fn expect_len(path: &str, expected: usize, found: usize) -> Result<(), ParseError> {
    if expected == found {
        Ok(())
    } else {
        Err(ParseError::at(path, format!("expected {expected} entries, found {found}")))
    }
}

pub fn parse_instance(text: &str, opts: &ParseOptions) -> Result<Instance, InstanceError> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| ParseError::at(format!("line {} column {}", e.line(), e.column()), e))?;
    if file.format_version != FORMAT_VERSION {
        return Err(ParseError::at("format_version", format!("unsupported version {}", file.format_version)).into());
    }
    let declared: Field = file.field.parse().map_err(|e| ParseError::at("field", e))?;
    let field = opts.field.unwrap_or(declared);

    let group = FiniteGroup::from_cayley_table(&file.group.cayley).map_err(|e| ParseError::at("group.cayley", e))?;
    if group.order() != file.group.order {
        return Err(ParseError::at("group.order", format!("table has order {}", group.order())).into());
    }
    let order = group.order();

    let alg = &file.algebra;
    let n = alg.dim;
    let mut entries = Vec::with_capacity(alg.structure_constants.len());
    for (r, (i, j, k, v)) in alg.structure_constants.iter().enumerate() {
        let path = format!("algebra.structure_constants[{r}]");
        if *i >= n || *j >= n || *k >= n {
            return Err(ParseError::at(path, format!("index out of range for dimension {n}")).into());
        }
        let v = field.parse(v).map_err(|e| ParseError::at(format!("{path}[3]"), e))?;
        entries.push((*i, *j, *k, v));
    }
    expect_len("algebra.unit", n, alg.unit.len())?;
    expect_len("algebra.trace", n, alg.trace.len())?;
    let unit = scalars(field, "algebra.unit", &alg.unit)?;
    let trace = scalars(field, "algebra.trace", &alg.trace)?;
    let algebra = AlgebraData::from_sparse(field, n, &entries, unit, trace).map_err(|e| ParseError::at("algebra", e))?;

    let act = &file.action;
    expect_len("action.rho", order, act.rho.len())?;
    let mut rho = Vec::with_capacity(order);
    for (g, m) in act.rho.iter().enumerate() {
        let path = format!("action.rho[{g}]");
        expect_len(&path, n, m.len())?;
        let mut rows = Vec::with_capacity(n);
        for (i, row) in m.iter().enumerate() {
            let rp = format!("{path}[{i}]");
            expect_len(&rp, n, row.len())?;
            rows.push(scalars(field, &rp, row)?);
        }
        rho.push(Matrix::from_rows(field, n, &rows).map_err(|e| ParseError::at(path, e))?);
    }
    expect_len("action.c", order, act.c.len())?;
    let mut cocycle = Vec::with_capacity(order);
    for (g, row) in act.c.iter().enumerate() {
        let path = format!("action.c[{g}]");
        expect_len(&path, order, row.len())?;
        let mut out = Vec::with_capacity(order);
        for (h, v) in row.iter().enumerate() {
            let p = format!("{path}[{h}]");
            expect_len(&p, n, v.len())?;
            out.push(scalars(field, &p, v)?);
        }
        cocycle.push(out);
    }
    expect_len("action.c_e", n, act.c_e.len())?;
    let c_e = scalars(field, "action.c_e", &act.c_e)?;

    let bundle = TwistedBundle::new(algebra, group, rho, cocycle, c_e).map_err(|e| ParseError::at("action", e))?;
    if !opts.skip_validate {
        let report = bundle.validate();
        if !report.passed() {
            return Err(InstanceError::Validation(Box::new(report)));
        }
    }
    Ok(Instance { name: file.name, bundle })
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn serialize_instance(bundle: &TwistedBundle, name: Option<&str>) -> String {
    let a = bundle.algebra();
    let grp = bundle.group();
    let n = a.dim();
    let file = InstanceFile {
        format_version: FORMAT_VERSION,
        field: bundle.field().to_string(),
        name: name.map(str::to_string),
        group: FileGroup { order: grp.order(), cayley: grp.cayley_table() },
        algebra: FileAlgebra {
            dim: n,
            structure_constants: a
                .sparse_entries()
                .into_iter()
                .map(|(i, j, k, v)| (i, j, k, v.to_string()))
                .collect(),
            unit: strings(a.unit()),
            trace: strings(a.trace_vector()),
        },
        action: FileAction {
            rho: grp.elements().map(|g| bundle.rho(g).row_vectors().iter().map(|r| strings(r)).collect()).collect(),
            c: grp
                .elements()
                .map(|g| grp.elements().map(|h| strings(bundle.cocycle(g, h))).collect())
                .collect(),
            c_e: strings(bundle.c_e()),
        },
    };
    let value = serde_json::to_value(&file).expect("instance serializes");
    let mut out = String::new();
    write_compact_pretty(&value, 0, &mut out);
    out.push('\n');
    out
}

/// Pretty JSON that keeps arrays of plain values on one line.
pub fn write_compact_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("plain values serialize"));
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_compact_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_compact_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("plain values serialize")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn round_trip_z2() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(2), Field::Rationals);
        let text = serialize_instance(&b, Some("z2"));
        let back = parse_instance(&text, &ParseOptions::default()).unwrap();
        assert_eq!(back.bundle, b);
        assert_eq!(back.name.as_deref(), Some("z2"));
        assert_eq!(serialize_instance(&back.bundle, Some("z2")), text);
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(2), Field::Rationals);
        let text = serialize_instance(&b, None).replacen("\"trace\": [\"1\",\"0\"]", "\"trace\": [\"1/0\",\"0\"]", 1);
        match parse_instance(&text, &ParseOptions::default()) {
            Err(InstanceError::Parse(e)) => assert_eq!(e.location, "algebra.trace[0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_a_line() {
        let err = parse_instance("{\n  \"format_version\": 1,\n  oops\n}", &ParseOptions::default()).unwrap_err();
        match err {
            InstanceError::Parse(e) => assert!(e.location.starts_with("line 3"), "{e}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn broken_cocycle_is_a_validation_error() {
        let b = builders::group_algebra_bundle(&FiniteGroup::cyclic(3), Field::Rationals);
        let minus_one: Vec<Scalar> = b.cocycle(1, 2).iter().map(|x| -x).collect();
        let bad = b.with_cocycle(1, 2, minus_one);
        let text = serialize_instance(&bad, None);
        match parse_instance(&text, &ParseOptions::default()) {
            Err(InstanceError::Validation(r)) => {
                let c = r.get("cocycle.associativity").unwrap();
                assert!(!c.passed());
                assert_eq!(c.witness.as_ref().unwrap().elements.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        let opts = ParseOptions { skip_validate: true, ..Default::default() };
        assert!(parse_instance(&text, &opts).is_ok());
    }

    #[test]
    fn field_override_reinterprets_scalars() {
        let b = builders::pauli_bundle(Field::Rationals).unwrap();
        let text = serialize_instance(&b, None);
        let gf = Field::prime(101).unwrap();
        let opts = ParseOptions { field: Some(gf), ..Default::default() };
        let back = parse_instance(&text, &opts).unwrap();
        assert_eq!(back.bundle, builders::pauli_bundle(gf).unwrap());
    }
}
