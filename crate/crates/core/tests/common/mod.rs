//! Shared test oracles, independent of the library's numerical path:
//! exact integer rank by fraction-free elimination, a projective-line grid
//! search for minimum pencil rank, and a small JSON-Schema checker for the
//! published output schemas.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use schmidt_locus::linalg::CVector;
use schmidt_locus::locus::BlockFamily;
use schmidt_locus::RankPolicy;

use num_complex::Complex64;
use serde_json::Value;

/// Exact rank of an integer matrix via Bareiss fraction-free elimination.
/// All divisions are exact by construction; i128 is ample for the small
/// matrices with entries of magnitude <= 2 used in these tests.
pub fn integer_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut rank = 0usize;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                m[r][c] = (m[r][c] * m[rank][col] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Minimum pencil rank of a 2-block family by brute force over a grid on the
/// projective line: directions (cos theta, sin theta * e^{i phi}) cover every
/// direction up to global phase. 101 x 100 > 10^4 points.
pub fn grid_min_rank(family: &BlockFamily, policy: &RankPolicy) -> usize {
    assert_eq!(family.m(), 2, "grid oracle only covers two-block families");
    let theta_steps = 100usize;
    let phi_steps = 100usize;
    let mut best = usize::MAX;
    for i in 0..=theta_steps {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / theta_steps as f64;
        let (s, c) = theta.sin_cos();
        for j in 0..phi_steps {
            let phi = std::f64::consts::TAU * j as f64 / phi_steps as f64;
            let dir = CVector::from_vec(vec![
                Complex64::new(c, 0.0),
                Complex64::from_polar(s, phi),
            ]);
            let rank = family.rank_at(&dir, policy).expect("unit direction");
            best = best.min(rank);
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root exists")
}

pub fn load_schema(name: &str) -> Value {
    let path = workspace_root().join("schemas").join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema is valid JSON")
}

/// Check `instance` against `schema`, resolving `$ref` into the root's
/// `definitions`. Supports the keyword subset the published schemas use:
/// type, required, properties, additionalProperties (false), items (single
/// schema), enum, oneOf, minItems/maxItems, minimum/maximum,
/// exclusiveMinimum.
pub fn validate_schema(root: &Value, schema: &Value, instance: &Value, path: &str) -> Vec<String> {
    let mut errors = Vec::new();
    check(root, schema, instance, path, &mut errors);
    errors
}

pub fn assert_valid(schema_file: &str, instance: &Value) {
    let schema = load_schema(schema_file);
    let errors = validate_schema(&schema, &schema, instance, "$");
    assert!(
        errors.is_empty(),
        "instance violates {schema_file}:\n{}",
        errors.join("\n")
    );
}

fn resolve<'a>(root: &'a Value, schema: &'a Value) -> &'a Value {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let name = reference
            .strip_prefix("#/definitions/")
            .unwrap_or_else(|| panic!("unsupported $ref {reference}"));
        return root
            .get("definitions")
            .and_then(|d| d.get(name))
            .unwrap_or_else(|| panic!("dangling $ref {reference}"));
    }
    schema
}

fn type_matches(ty: &str, instance: &Value) -> bool {
    match ty {
        "object" => instance.is_object(),
        "array" => instance.is_array(),
        "string" => instance.is_string(),
        "boolean" => instance.is_boolean(),
        "null" => instance.is_null(),
        "number" => instance.is_number(),
        "integer" => {
            instance.is_i64()
                || instance.is_u64()
                || instance.as_f64().is_some_and(|f| f.fract() == 0.0)
        }
        other => panic!("unsupported type keyword {other}"),
    }
}

fn check(root: &Value, schema: &Value, instance: &Value, path: &str, errors: &mut Vec<String>) {
    let schema = resolve(root, schema);

    if let Some(ty) = schema.get("type") {
        let allowed: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(Value::as_str).collect(),
            _ => panic!("bad type keyword"),
        };
        if !allowed.iter().any(|t| type_matches(t, instance)) {
            errors.push(format!("{path}: expected type {allowed:?}"));
            return;
        }
    }

    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(instance) {
            errors.push(format!("{path}: value not in enum {options:?}"));
        }
    }

    if let Some(number) = instance.as_f64() {
        if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
            if number < min {
                errors.push(format!("{path}: {number} below minimum {min}"));
            }
        }
        if let Some(max) = schema.get("maximum").and_then(Value::as_f64) {
            if number > max {
                errors.push(format!("{path}: {number} above maximum {max}"));
            }
        }
        if let Some(min) = schema.get("exclusiveMinimum").and_then(Value::as_f64) {
            if number <= min {
                errors.push(format!("{path}: {number} not above {min}"));
            }
        }
    }

    if let Some(object) = instance.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !object.contains_key(key) {
                    errors.push(format!("{path}: missing required property {key:?}"));
                }
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        if let Some(properties) = properties {
            for (key, value) in object {
                if let Some(sub) = properties.get(key) {
                    check(root, sub, value, &format!("{path}.{key}"), errors);
                } else if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                    errors.push(format!("{path}: unexpected property {key:?}"));
                }
            }
        }
    }

    if let Some(array) = instance.as_array() {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (array.len() as u64) < min {
                errors.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
            if (array.len() as u64) > max {
                errors.push(format!("{path}: more than {max} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            for (i, element) in array.iter().enumerate() {
                check(root, items, element, &format!("{path}[{i}]"), errors);
            }
        }
    }

    if let Some(variants) = schema.get("oneOf").and_then(Value::as_array) {
        let matching = variants
            .iter()
            .filter(|variant| validate_schema(root, variant, instance, path).is_empty())
            .count();
        if matching != 1 {
            errors.push(format!("{path}: {matching} oneOf variants matched, want 1"));
        }
    }
}
