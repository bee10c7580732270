//! Canonical JSON and CSV schemas shared by all commands: strict
//! validation with field diagnostics, deterministic serialization, masses
//! written with 17 significant digits.

use std::collections::BTreeSet;

use ranset_core::frame::{Frame, SubsetMask};
use ranset_core::mass::MassFunction;
use ranset_core::maxent::{EntropyKind, FeatureTable, MaxentProblem};
use ranset_core::multivariate::Refining;
use ranset_core::pac::{HypothesisClass, PairDistribution};
use ranset_core::regression::RegressionSample;
use ranset_core::total_belief::TotalBeliefProblem;
use serde_json::Value;

/// Schema version written into every emitted document.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{0}")]
    Core(#[from] ranset_core::Error),
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn schema_err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(FormatError::Schema {
        path: path.to_string(),
        message: message.into(),
    })
}

/// Formats a mass with 17 significant digits, enough to round-trip any f64.
fn fmt_mass(x: f64) -> String {
    format!("{x:.16e}")
}

fn object<'v>(value: &'v Value, path: &str) -> Result<&'v serde_json::Map<String, Value>> {
    value
        .as_object()
        .ok_or(())
        .or_else(|_| schema_err(path, "expected an object"))
}

/// Rejects unknown fields in strict mode; `kind`/`schema_version` are always
/// accepted (the document envelope).
fn check_fields(
    map: &serde_json::Map<String, Value>,
    allowed: &[&str],
    expected_kind: &str,
    path: &str,
    strict: bool,
) -> Result<()> {
    if let Some(kind) = map.get("kind") {
        if kind.as_str() != Some(expected_kind) {
            return schema_err(
                &format!("{path}.kind"),
                format!("expected {expected_kind:?}, found {kind}"),
            );
        }
    }
    if strict {
        for key in map.keys() {
            if key != "kind" && key != "schema_version" && !allowed.contains(&key.as_str()) {
                return schema_err(&format!("{path}.{key}"), "unknown field (strict mode)");
            }
        }
    }
    Ok(())
}

fn string_array(value: &Value, path: &str) -> Result<Vec<String>> {
    let array = value
        .as_array()
        .ok_or(())
        .or_else(|_| schema_err(path, "expected an array of strings"))?;
    array
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or(())
                .or_else(|_| schema_err(&format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn labels_to_mask(frame: &Frame, labels: &[String], path: &str) -> Result<SubsetMask> {
    let mut seen = BTreeSet::new();
    for label in labels {
        if !seen.insert(label.clone()) {
            return schema_err(path, format!("duplicate label {label:?} in set"));
        }
    }
    frame
        .mask_of_labels(labels.iter().map(String::as_str))
        .map_err(Into::into)
}

/// Parses a mass-function document:
/// `{"frame": [...], "masses": [{"set": [...], "m": x}, ...],
///   "normalized": bool}`.
pub fn parse_mass(text: &str, strict: bool) -> Result<MassFunction> {
    let value: Value = serde_json::from_str(text)?;
    parse_mass_value(&value, "$", strict)
}

fn parse_mass_value(value: &Value, path: &str, strict: bool) -> Result<MassFunction> {
    let map = object(value, path)?;
    check_fields(map, &["frame", "masses", "normalized"], "mass", path, strict)?;
    let frame_labels = string_array(
        map.get("frame")
            .ok_or(())
            .or_else(|_| schema_err(path, "missing field `frame`"))?,
        &format!("{path}.frame"),
    )?;
    let frame = Frame::new(frame_labels)?;
    let normalized = match map.get("normalized") {
        None => true,
        Some(Value::Bool(b)) => *b,
        Some(_) => return schema_err(&format!("{path}.normalized"), "expected a boolean"),
    };
    let masses_value = map
        .get("masses")
        .ok_or(())
        .or_else(|_| schema_err(path, "missing field `masses`"))?;
    let masses = masses_value
        .as_array()
        .ok_or(())
        .or_else(|_| schema_err(&format!("{path}.masses"), "expected an array"))?;
    let mut entries: Vec<(SubsetMask, f64)> = Vec::with_capacity(masses.len());
    let mut seen_sets = BTreeSet::new();
    for (i, entry) in masses.iter().enumerate() {
        let entry_path = format!("{path}.masses[{i}]");
        let entry_map = object(entry, &entry_path)?;
        if strict {
            for key in entry_map.keys() {
                if key != "set" && key != "m" {
                    return schema_err(
                        &format!("{entry_path}.{key}"),
                        "unknown field (strict mode)",
                    );
                }
            }
        }
        let set_labels = string_array(
            entry_map
                .get("set")
                .ok_or(())
                .or_else(|_| schema_err(&entry_path, "missing field `set`"))?,
            &format!("{entry_path}.set"),
        )?;
        let mask = labels_to_mask(&frame, &set_labels, &format!("{entry_path}.set"))?;
        if !seen_sets.insert(mask) {
            return schema_err(&format!("{entry_path}.set"), "duplicate set");
        }
        let m = entry_map
            .get("m")
            .and_then(Value::as_f64)
            .ok_or(())
            .or_else(|_| schema_err(&format!("{entry_path}.m"), "expected a number"))?;
        entries.push((mask, m));
    }
    MassFunction::new(frame, entries, normalized).map_err(Into::into)
}

/// Serializes a mass function with deterministic key order and
/// lexicographically sorted label arrays.
pub fn serialize_mass(m: &MassFunction) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!(
        "  \"schema_version\": \"{SCHEMA_VERSION}\",\n  \"kind\": \"mass\",\n"
    ));
    out.push_str("  \"frame\": [");
    let labels: Vec<String> = m
        .frame()
        .labels()
        .iter()
        .map(|l| serde_json::to_string(l).expect("string encodes"))
        .collect();
    out.push_str(&labels.join(", "));
    out.push_str("],\n  \"masses\": [\n");
    let rows: Vec<String> = m
        .focal_elements()
        .map(|(set, mass)| {
            let mut set_labels: Vec<&str> = m.frame().labels_of(set);
            set_labels.sort_unstable();
            let encoded: Vec<String> = set_labels
                .iter()
                .map(|l| serde_json::to_string(l).expect("string encodes"))
                .collect();
            format!(
                "    {{\"set\": [{}], \"m\": {}}}",
                encoded.join(", "),
                fmt_mass(mass)
            )
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str(&format!(
        "\n  ],\n  \"normalized\": {}\n}}\n",
        m.is_normalized_regime()
    ));
    out
}

/// Parses a refining document:
/// `{"coarse": [...], "fine": [...], "cells": {"w": ["a", ...], ...}}`.
pub fn parse_refining(text: &str, strict: bool) -> Result<Refining> {
    let value: Value = serde_json::from_str(text)?;
    parse_refining_value(&value, "$", strict)
}

fn parse_refining_value(value: &Value, path: &str, strict: bool) -> Result<Refining> {
    let map = object(value, path)?;
    check_fields(map, &["coarse", "fine", "cells"], "refining", path, strict)?;
    let coarse = Frame::new(string_array(
        map.get("coarse")
            .ok_or(())
            .or_else(|_| schema_err(path, "missing field `coarse`"))?,
        &format!("{path}.coarse"),
    )?)?;
    let fine = Frame::new(string_array(
        map.get("fine")
            .ok_or(())
            .or_else(|_| schema_err(path, "missing field `fine`"))?,
        &format!("{path}.fine"),
    )?)?;
    let cells_value = map
        .get("cells")
        .ok_or(())
        .or_else(|_| schema_err(path, "missing field `cells`"))?;
    let cells_map = object(cells_value, &format!("{path}.cells"))?;
    let mut cells = Vec::with_capacity(coarse.size());
    for label in coarse.labels() {
        let cell_path = format!("{path}.cells.{label}");
        let cell_value = cells_map
            .get(label)
            .ok_or(())
            .or_else(|_| schema_err(&cell_path, "missing cell for coarse outcome"))?;
        let labels = string_array(cell_value, &cell_path)?;
        cells.push(labels_to_mask(&fine, &labels, &cell_path)?);
    }
    if strict {
        for key in cells_map.keys() {
            if coarse.index_of(key).is_none() {
                return schema_err(
                    &format!("{path}.cells.{key}"),
                    "cell key is not a coarse outcome",
                );
            }
        }
    }
    Refining::new(coarse, fine, cells).map_err(Into::into)
}

pub fn serialize_refining(rho: &Refining) -> String {
    let enc = |l: &str| serde_json::to_string(l).expect("string encodes");
    let coarse: Vec<String> = rho.coarse().labels().iter().map(|l| enc(l)).collect();
    let fine: Vec<String> = rho.fine().labels().iter().map(|l| enc(l)).collect();
    let mut out = String::from("{\n");
    out.push_str(&format!(
        "  \"schema_version\": \"{SCHEMA_VERSION}\",\n  \"kind\": \"refining\",\n"
    ));
    out.push_str(&format!("  \"coarse\": [{}],\n", coarse.join(", ")));
    out.push_str(&format!("  \"fine\": [{}],\n", fine.join(", ")));
    out.push_str("  \"cells\": {\n");
    let rows: Vec<String> = rho
        .coarse()
        .labels()
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let labels: Vec<String> = rho
                .fine()
                .labels_of(rho.cell(i))
                .iter()
                .map(|l| enc(l))
                .collect();
            format!("    {}: [{}]", enc(label), labels.join(", "))
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  }\n}\n");
    out
}

/// Parses a total-belief problem bundle:
/// `{"refining": {...}, "prior": {mass on the coarse frame},
///   "conditionals": {"w": {mass on that cell}, ...}}`.
pub fn parse_total_belief_problem(text: &str, strict: bool) -> Result<TotalBeliefProblem> {
    let value: Value = serde_json::from_str(text)?;
    let map = object(&value, "$")?;
    check_fields(
        map,
        &["refining", "prior", "conditionals"],
        "total-belief-problem",
        "$",
        strict,
    )?;
    let rho = parse_refining_value(
        map.get("refining")
            .ok_or(())
            .or_else(|_| schema_err("$", "missing field `refining`"))?,
        "$.refining",
        strict,
    )?;
    let prior = parse_mass_value(
        map.get("prior")
            .ok_or(())
            .or_else(|_| schema_err("$", "missing field `prior`"))?,
        "$.prior",
        strict,
    )?;
    let conditionals_value = map
        .get("conditionals")
        .ok_or(())
        .or_else(|_| schema_err("$", "missing field `conditionals`"))?;
    let conditionals_map = object(conditionals_value, "$.conditionals")?;
    let mut conditionals = Vec::with_capacity(rho.coarse().size());
    for label in rho.coarse().labels() {
        let path = format!("$.conditionals.{label}");
        let value = conditionals_map
            .get(label)
            .ok_or(())
            .or_else(|_| schema_err(&path, "missing conditional for coarse outcome"))?;
        conditionals.push(parse_mass_value(value, &path, strict)?);
    }
    TotalBeliefProblem::new(rho, prior, conditionals).map_err(Into::into)
}

/// Parses a regression dataset CSV with header `x,y`; `y ∈ {0, 1, NA}`.
pub fn parse_dataset_csv(text: &str) -> Result<Vec<RegressionSample>> {
    let mut samples = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.eq_ignore_ascii_case("x,y") {
            continue;
        }
        let mut parts = line.split(',');
        let (Some(x_raw), Some(y_raw), None) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(FormatError::Csv {
                line: idx + 1,
                message: "expected two columns `x,y`".into(),
            });
        };
        let x: f64 = x_raw.trim().parse().map_err(|_| FormatError::Csv {
            line: idx + 1,
            message: format!("invalid covariate {x_raw:?}"),
        })?;
        let y = match y_raw.trim() {
            "0" => Some(false),
            "1" => Some(true),
            "NA" | "na" | "" => None,
            other => {
                return Err(FormatError::Csv {
                    line: idx + 1,
                    message: format!("invalid outcome {other:?} (want 0, 1 or NA)"),
                })
            }
        };
        samples.push(RegressionSample { x, y });
    }
    Ok(samples)
}

/// Parses a trial sequence CSV: one outcome label per row (header
/// `outcome` optional); labels must belong to `frame`.
pub fn parse_trials_csv(text: &str, frame: &Frame) -> Result<Vec<usize>> {
    let mut outcomes = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (idx == 0 && line.eq_ignore_ascii_case("outcome")) {
            continue;
        }
        match frame.index_of(line) {
            Some(i) => outcomes.push(i),
            None => {
                return Err(FormatError::Csv {
                    line: idx + 1,
                    message: format!("outcome {line:?} is not in the model frame"),
                })
            }
        }
    }
    Ok(outcomes)
}

/// Parses a max-entropy feature file:
/// `{"x": [...], "classes": [...],
///   "features": [{"name": ..., "table": [[per class] per x]}, ...]}`.
pub fn parse_features(text: &str, strict: bool) -> Result<(Vec<String>, Vec<String>, Vec<FeatureTable>)> {
    let value: Value = serde_json::from_str(text)?;
    let map = object(&value, "$")?;
    check_fields(map, &["x", "classes", "features"], "features", "$", strict)?;
    let xs = string_array(
        map.get("x")
            .ok_or(())
            .or_else(|_| schema_err("$", "missing field `x`"))?,
        "$.x",
    )?;
    let classes = string_array(
        map.get("classes")
            .ok_or(())
            .or_else(|_| schema_err("$", "missing field `classes`"))?,
        "$.classes",
    )?;
    let features_value = map
        .get("features")
        .ok_or(())
        .or_else(|_| schema_err("$", "missing field `features`"))?;
    let features_array = features_value
        .as_array()
        .ok_or(())
        .or_else(|_| schema_err("$.features", "expected an array"))?;
    let mut features = Vec::with_capacity(features_array.len());
    for (i, feature) in features_array.iter().enumerate() {
        let path = format!("$.features[{i}]");
        let fmap = object(feature, &path)?;
        let name = fmap
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or(&format!("f{i}"))
            .to_string();
        let table = fmap
            .get("table")
            .and_then(Value::as_array)
            .ok_or(())
            .or_else(|_| schema_err(&path, "missing field `table`"))?;
        if table.len() != xs.len() {
            return schema_err(&format!("{path}.table"), "one row per observation required");
        }
        let mut values = Vec::with_capacity(xs.len() * classes.len());
        for (r, row) in table.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or(())
                .or_else(|_| schema_err(&format!("{path}.table[{r}]"), "expected an array"))?;
            if row.len() != classes.len() {
                return schema_err(
                    &format!("{path}.table[{r}]"),
                    "one value per class required",
                );
            }
            for (c, v) in row.iter().enumerate() {
                values.push(v.as_f64().ok_or(()).or_else(|_| {
                    schema_err(&format!("{path}.table[{r}][{c}]"), "expected a number")
                })?);
            }
        }
        features.push(FeatureTable { name, values });
    }
    Ok((xs, classes, features))
}

/// Parses a classification dataset CSV with header `x,class` and builds a
/// max-entropy problem together with the given features.
pub fn build_maxent_problem(
    data_csv: &str,
    features_text: &str,
    entropy: EntropyKind,
    strict: bool,
) -> Result<MaxentProblem> {
    let (xs, classes, features) = parse_features(features_text, strict)?;
    let mut counts = vec![0usize; xs.len() * classes.len()];
    let mut total = 0usize;
    for (idx, line) in data_csv.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (idx == 0 && line.eq_ignore_ascii_case("x,class")) {
            continue;
        }
        let mut parts = line.split(',');
        let (Some(x_raw), Some(c_raw), None) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(FormatError::Csv {
                line: idx + 1,
                message: "expected two columns `x,class`".into(),
            });
        };
        let x = xs
            .iter()
            .position(|l| l == x_raw.trim())
            .ok_or_else(|| FormatError::Csv {
                line: idx + 1,
                message: format!("unknown observation {x_raw:?}"),
            })?;
        let c = classes
            .iter()
            .position(|l| l == c_raw.trim())
            .ok_or_else(|| FormatError::Csv {
                line: idx + 1,
                message: format!("unknown class {c_raw:?}"),
            })?;
        counts[x * classes.len() + c] += 1;
        total += 1;
    }
    if total == 0 {
        return Err(FormatError::Csv {
            line: 0,
            message: "dataset is empty".into(),
        });
    }
    let histogram: Vec<f64> = counts.iter().map(|&c| c as f64 / total as f64).collect();
    let x_refs: Vec<&str> = xs.iter().map(String::as_str).collect();
    let class_refs: Vec<&str> = classes.iter().map(String::as_str).collect();
    MaxentProblem::new(&x_refs, &class_refs, histogram, features, entropy).map_err(Into::into)
}

/// A parsed PAC simulation scenario.
pub struct PacScenario {
    pub class: HypothesisClass,
    pub n: usize,
    pub epsilon: f64,
    pub trials: usize,
    /// Realizable mode: the data distribution. Credal mode: the vertices.
    pub distributions: Vec<PairDistribution>,
    pub credal: bool,
}

/// Parses a PAC scenario document:
/// `{"class": {"thresholds": 8} | {"table": [[...], ...]},
///   "n": 60, "epsilon": 0.1, "trials": 1000,
///   "truth": {"hypothesis": 3, "marginal": [...]}            (realizable)
///   "vertices": [{"hypothesis": h, "marginal": [...]}, ...]  (credal)}`.
pub fn parse_pac_scenario(text: &str, strict: bool) -> Result<PacScenario> {
    let value: Value = serde_json::from_str(text)?;
    let map = object(&value, "$")?;
    check_fields(
        map,
        &["class", "n", "epsilon", "trials", "truth", "vertices"],
        "pac-scenario",
        "$",
        strict,
    )?;
    let class_value = map
        .get("class")
        .ok_or(())
        .or_else(|_| schema_err("$", "missing field `class`"))?;
    let class_map = object(class_value, "$.class")?;
    let class = if let Some(t) = class_map.get("thresholds") {
        let x_size = t
            .as_u64()
            .ok_or(())
            .or_else(|_| schema_err("$.class.thresholds", "expected the domain size"))?;
        HypothesisClass::thresholds_binary(x_size as usize)
    } else if let Some(table) = class_map.get("table").and_then(Value::as_array) {
        let mut hypotheses = Vec::with_capacity(table.len());
        let mut x_size = 0;
        let mut y_size = 0;
        for (i, row) in table.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or(())
                .or_else(|_| schema_err(&format!("$.class.table[{i}]"), "expected an array"))?;
            let labels: Vec<usize> = row
                .iter()
                .map(|v| v.as_u64().unwrap_or(0) as usize)
                .collect();
            x_size = labels.len();
            y_size = y_size.max(labels.iter().copied().max().unwrap_or(0) + 1);
            hypotheses.push(labels);
        }
        HypothesisClass::new(x_size, y_size.max(2), hypotheses)?
    } else {
        return schema_err("$.class", "expected `thresholds` or `table`");
    };
    let number = |field: &str| -> Result<f64> {
        map.get(field)
            .and_then(Value::as_f64)
            .ok_or(())
            .or_else(|_| schema_err("$", format!("missing numeric field `{field}`")))
    };
    let n = number("n")? as usize;
    let epsilon = number("epsilon")?;
    let trials = number("trials")? as usize;

    let parse_point = |value: &Value, path: &str| -> Result<PairDistribution> {
        let pmap = object(value, path)?;
        let h = pmap
            .get("hypothesis")
            .and_then(Value::as_u64)
            .ok_or(())
            .or_else(|_| schema_err(path, "missing `hypothesis` index"))? as usize;
        if h >= class.len() {
            return schema_err(path, "hypothesis index out of range");
        }
        let marginal: Vec<f64> = match pmap.get("marginal") {
            Some(v) => v
                .as_array()
                .ok_or(())
                .or_else(|_| schema_err(path, "expected `marginal` array"))?
                .iter()
                .map(|x| x.as_f64().unwrap_or(0.0))
                .collect(),
            None => vec![1.0 / class.x_size() as f64; class.x_size()],
        };
        PairDistribution::labelled_by(&class, h, &marginal).map_err(Into::into)
    };

    if let Some(vertices) = map.get("vertices") {
        let array = vertices
            .as_array()
            .ok_or(())
            .or_else(|_| schema_err("$.vertices", "expected an array"))?;
        let distributions: Result<Vec<_>> = array
            .iter()
            .enumerate()
            .map(|(i, v)| parse_point(v, &format!("$.vertices[{i}]")))
            .collect();
        Ok(PacScenario {
            class,
            n,
            epsilon,
            trials,
            distributions: distributions?,
            credal: true,
        })
    } else if let Some(truth) = map.get("truth") {
        Ok(PacScenario {
            distributions: vec![parse_point(truth, "$.truth")?],
            class,
            n,
            epsilon,
            trials,
            credal: false,
        })
    } else {
        schema_err("$", "expected `truth` (realizable) or `vertices` (credal)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_round_trip_is_identity() {
        let text = r#"{"frame": ["x", "y", "z"],
                       "masses": [{"set": ["x"], "m": 0.3},
                                  {"set": ["x", "z"], "m": 0.2},
                                  {"set": ["x", "y", "z"], "m": 0.5}]}"#;
        let m = parse_mass(text, true).unwrap();
        let serialized = serialize_mass(&m);
        let back = parse_mass(&serialized, true).unwrap();
        assert_eq!(m, back);
        // And the second serialization is byte-identical.
        assert_eq!(serialized, serialize_mass(&back));
    }

    #[test]
    fn mass_sum_far_from_one_is_rejected() {
        let text = r#"{"frame": ["x", "y"], "masses": [{"set": ["x"], "m": 0.999}]}"#;
        let err = parse_mass(text, true).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Core(ranset_core::Error::NormalizationError(_))
        ));
    }

    #[test]
    fn duplicate_sets_are_rejected() {
        let text = r#"{"frame": ["x", "y"],
                       "masses": [{"set": ["x"], "m": 0.5},
                                  {"set": ["x"], "m": 0.5}]}"#;
        assert!(parse_mass(text, false).is_err());
    }

    #[test]
    fn strict_mode_rejects_unknown_fields() {
        let text = r#"{"frame": ["x", "y"], "masses": [{"set": ["x", "y"], "m": 1.0}],
                       "extra": 1}"#;
        assert!(parse_mass(text, true).is_err());
        assert!(parse_mass(text, false).is_ok());
    }

    #[test]
    fn overlapping_refining_cells_are_rejected() {
        let text = r#"{"coarse": ["w1", "w2"], "fine": ["a", "b", "c"],
                       "cells": {"w1": ["a", "b"], "w2": ["b", "c"]}}"#;
        let err = parse_refining(text, true).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Core(ranset_core::Error::InvalidRefining(_))
        ));
    }

    #[test]
    fn dataset_csv_round_trip() {
        let text = "x,y\n0.5,1\n-1.25,0\n2.0,NA\n";
        let samples = parse_dataset_csv(text).unwrap();
        assert_eq!(samples.len(), 3);
        assert_eq!(samples[0], RegressionSample::observed(0.5, true));
        assert_eq!(samples[2], RegressionSample::missing(2.0));
    }

    #[test]
    fn masses_use_seventeen_significant_digits() {
        let frame = Frame::new(["x", "y"]).unwrap();
        let m = MassFunction::new(
            frame.clone(),
            [(SubsetMask::singleton(0), 0.3), (frame.full(), 0.7)],
            true,
        )
        .unwrap();
        let text = serialize_mass(&m);
        assert!(text.contains("2.9999999999999999e-1"), "{text}");
    }
}
