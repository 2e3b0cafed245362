//! JSON documents exchanged by the command-line tool.
//!
//! Every document is an object with a `kind` tag. All kinds except `family`
//! carry a `scenario` header `{"parties", "settings", "outcomes"}`.
//!
//! | kind                  | payload                                                       |
//! |-----------------------|---------------------------------------------------------------|
//! | `scenario`            | header only                                                   |
//! | `behavior`            | `mode`, `tables[settings_tuple][outcome_tuple]`               |
//! | `functional`          | `mode`, `coefficients[settings_tuple][outcome_tuple]`         |
//! | `signed-distribution` | `mode`, `weights[assignment]`                                 |
//! | `quantum-model`       | `local_dims`, `state`, `measurements[party][setting][outcome]` |
//! | `family`              | `members`: behavior file paths, relative to the family file   |
//!
//! Settings tuples and outcome tuples are listed lexicographically, party 1
//! slowest. With `mode: "exact"` every number is a string (`"3/16"`, `"-1"`,
//! `"0.25"`); with `mode: "float"` numbers are JSON numbers. Complex matrices
//! are `{"re": [[..]], "im": [[..]]}` with rows outermost; `im` may be omitted.

use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value as Json};

use crate::behavior::{Behavior, NONSIGNALING_TOLERANCE};
use crate::error::{Error, Result};
use crate::functional::BellFunctional;
use crate::nonlocality::SignedDistribution;
use crate::quantum::{CMatrix, QuantumModel};
use crate::scalar::{format_rational, parse_rational, Entries, Mode};
use crate::scenario::Scenario;

/// A parsed and validated document.
#[derive(Clone, Debug)]
pub enum Document {
    Scenario(Scenario),
    Behavior(Behavior),
    Functional(BellFunctional),
    SignedDistribution(SignedDistribution),
    QuantumModel(QuantumModel),
    Family(Vec<PathBuf>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum Raw {
    Scenario {
        scenario: Json,
    },
    Behavior {
        scenario: Json,
        mode: Mode,
        tables: Vec<Vec<Json>>,
    },
    Functional {
        scenario: Json,
        mode: Mode,
        coefficients: Vec<Vec<Json>>,
    },
    SignedDistribution {
        scenario: Json,
        mode: Mode,
        weights: Vec<Json>,
    },
    QuantumModel {
        scenario: Json,
        local_dims: Vec<usize>,
        state: RawMatrix,
        measurements: Vec<Vec<Vec<RawMatrix>>>,
    },
    Family {
        members: Vec<String>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Scenario headers are structural; a bad one is a parse error.
fn scenario_of(raw: Json) -> Result<Scenario> {
    serde_json::from_value(raw).map_err(|e| parse_err(format!("scenario header: {e}")))
}

fn number(mode: Mode, x: &Json, at: &str) -> Result<NumberIn> {
    match (mode, x) {
        (Mode::Exact, Json::String(s)) => parse_rational(s)
            .map(NumberIn::Exact)
            .ok_or_else(|| parse_err(format!("{at}: `{s}` is not a rational"))),
        (Mode::Float, Json::Number(n)) => n
            .as_f64()
            .map(NumberIn::Float)
            .ok_or_else(|| parse_err(format!("{at}: `{n}` is not representable as f64"))),
        (Mode::Exact, other) => Err(parse_err(format!("{at}: exact entries are strings \"p/q\", got {other}"))),
        (Mode::Float, other) => Err(parse_err(format!("{at}: float entries are numbers, got {other}"))),
    }
}

enum NumberIn {
    Exact(crate::Rational),
    Float(f64),
}

fn entries(mode: Mode, values: &[Json], at: &str) -> Result<Entries> {
    let mut out = Entries::zeros(mode, 0);
    for (i, x) in values.iter().enumerate() {
        match (&mut out, number(mode, x, &format!("{at}[{i}]"))?) {
            (Entries::Exact(v), NumberIn::Exact(r)) => v.push(r),
            (Entries::Float(v), NumberIn::Float(f)) => v.push(f),
            _ => unreachable!("number() honors the mode"),
        }
    }
    Ok(out)
}

/// Flattens per-settings-tuple lists after checking their shape.
fn flat_tables(scenario: &Scenario, mode: Mode, tables: &[Vec<Json>], name: &str) -> Result<Entries> {
    if tables.len() != scenario.settings_tuples() {
        return Err(parse_err(format!(
            "{name}: expected {} settings tuples, got {}",
            scenario.settings_tuples(),
            tables.len()
        )));
    }
    let flat: Vec<Json> = tables
        .iter()
        .enumerate()
        .map(|(t, row)| {
            if row.len() != scenario.outcome_tuples() {
                Err(parse_err(format!(
                    "{name}[{t}]: expected {} outcome tuples, got {}",
                    scenario.outcome_tuples(),
                    row.len()
                )))
            } else {
                Ok(row.clone())
            }
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    entries(mode, &flat, name)
}

fn matrix_in(raw: &RawMatrix, at: &str) -> Result<CMatrix> {
    let n = raw.re.len();
    if raw.re.iter().any(|r| r.len() != n) {
        return Err(parse_err(format!("{at}: `re` is not square")));
    }
    if let Some(im) = &raw.im {
        if im.len() != n || im.iter().any(|r| r.len() != n) {
            return Err(parse_err(format!("{at}: `im` does not match `re`")));
        }
    }
    Ok(DMatrix::from_fn(n, n, |i, j| {
        Complex64::new(raw.re[i][j], raw.im.as_ref().map_or(0.0, |im| im[i][j]))
    }))
}

fn matrix_out(m: &CMatrix) -> RawMatrix {
    let rows = |f: fn(&Complex64) -> f64| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
    let im: Vec<Vec<f64>> = rows(|z| z.im);
    let real = im.iter().flatten().all(|&x| x == 0.0);
    RawMatrix { re: rows(|z| z.re), im: if real { None } else { Some(im) } }
}

fn json_entries(e: &Entries) -> Vec<Json> {
    match e {
        Entries::Exact(v) => v.iter().map(|r| Json::String(format_rational(r))).collect(),
        Entries::Float(v) => v
            .iter()
            .map(|&x| Number::from_f64(x).map(Json::Number).unwrap_or(Json::Null))
            .collect(),
    }
}

fn json_tables(scenario: &Scenario, e: &Entries) -> Vec<Vec<Json>> {
    json_entries(e).chunks(scenario.outcome_tuples()).map(<[Json]>::to_vec).collect()
}

fn header(s: &Scenario) -> Json {
    serde_json::to_value(s).expect("scenario serializes")
}

impl Document {
    /// Parses and validates a document.
    ///
    /// Malformed JSON, unknown kinds and shape errors give [`Error::Parse`]; well-formed
    /// documents whose content breaks an invariant (e.g. a negative probability)
    /// give the corresponding validation error.
    pub fn parse(text: &str) -> Result<Document> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        Ok(match raw {
            Raw::Scenario { scenario } => Document::Scenario(scenario_of(scenario)?),
            Raw::Behavior { scenario, mode, tables } => {
                let sc = scenario_of(scenario)?;
                let e = flat_tables(&sc, mode, &tables, "tables")?;
                Document::Behavior(Behavior::from_entries(sc, e, NONSIGNALING_TOLERANCE)?)
            }
            Raw::Functional { scenario, mode, coefficients } => {
                let sc = scenario_of(scenario)?;
                let e = flat_tables(&sc, mode, &coefficients, "coefficients")?;
                Document::Functional(BellFunctional::from_entries(sc, e)?)
            }
            Raw::SignedDistribution { scenario, mode, weights } => {
                let sc = scenario_of(scenario)?;
                let e = entries(mode, &weights, "weights")?;
                Document::SignedDistribution(SignedDistribution::new(&sc, e)?)
            }
            Raw::QuantumModel { scenario, local_dims, state, measurements } => {
                let sc = scenario_of(scenario)?;
                let state = matrix_in(&state, "state")?;
                let measurements = measurements
                    .iter()
                    .enumerate()
                    .map(|(n, family)| {
                        family
                            .iter()
                            .enumerate()
                            .map(|(s, povm)| {
                                povm.iter()
                                    .enumerate()
                                    .map(|(k, m)| matrix_in(m, &format!("measurements[{n}][{s}][{k}]")))
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Document::QuantumModel(QuantumModel::new(sc, local_dims, state, measurements)?)
            }
            Raw::Family { members } => Document::Family(members.into_iter().map(PathBuf::from).collect()),
        })
    }

    pub fn load(path: &Path) -> Result<Document> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Document::parse(&text)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Scenario(_) => "scenario",
            Document::Behavior(_) => "behavior",
            Document::Functional(_) => "functional",
            Document::SignedDistribution(_) => "signed-distribution",
            Document::QuantumModel(_) => "quantum-model",
            Document::Family(_) => "family",
        }
    }

    pub fn to_json(&self) -> Json {
        let raw = match self {
            Document::Scenario(sc) => Raw::Scenario { scenario: header(sc) },
            Document::Behavior(b) => Raw::Behavior {
                scenario: header(b.scenario()),
                mode: b.mode(),
                tables: json_tables(b.scenario(), b.entries()),
            },
            Document::Functional(f) => Raw::Functional {
                scenario: header(f.scenario()),
                mode: f.mode(),
                coefficients: json_tables(f.scenario(), f.coefficients()),
            },
            Document::SignedDistribution(t) => Raw::SignedDistribution {
                scenario: header(t.scenario()),
                mode: t.weights().mode(),
                weights: json_entries(t.weights()),
            },
            Document::QuantumModel(m) => Raw::QuantumModel {
                scenario: header(m.scenario()),
                local_dims: m.local_dims().to_vec(),
                state: matrix_out(m.state()),
                measurements: m
                    .measurements()
                    .iter()
                    .map(|f| f.iter().map(|p| p.iter().map(matrix_out).collect()).collect())
                    .collect(),
            },
            Document::Family(members) => Raw::Family {
                members: members.iter().map(|p| p.display().to_string()).collect(),
            },
        };
        serde_json::to_value(raw).expect("documents serialize")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("documents serialize") + "\n"
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json_string()).map_err(|source| Error::Io { path: path.display().to_string(), source })
    }
}

/// Loads a behavior document, rejecting other kinds.
pub fn load_behavior(path: &Path) -> Result<Behavior> {
    match Document::load(path)? {
        Document::Behavior(b) => Ok(b),
        other => Err(parse_err(format!("{}: expected a behavior document, found `{}`", path.display(), other.kind()))),
    }
}

/// Loads a family document and every member behavior it lists.
pub fn load_family(path: &Path) -> Result<Vec<Behavior>> {
    let members = match Document::load(path)? {
        Document::Family(m) => m,
        other => {
            return Err(parse_err(format!("{}: expected a family document, found `{}`", path.display(), other.kind())))
        }
    };
    let base = path.parent().unwrap_or(Path::new("."));
    members.iter().map(|m| load_behavior(&base.join(m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::pr_box;
    use crate::functional::builtin;
    use crate::quantum::{chsh_optimal_model, random_model};

    fn round_trip(doc: &Document) -> Document {
        Document::parse(&doc.to_json_string()).unwrap()
    }

    #[test]
    fn behavior_round_trip_is_exact() {
        let b = pr_box();
        let text = Document::Behavior(b.clone()).to_json_string();
        assert!(text.contains("\"1/2\""));
        match round_trip(&Document::Behavior(b.clone())) {
            Document::Behavior(back) => assert_eq!(back, b),
            other => panic!("wrong kind {}", other.kind()),
        }
    }

    #[test]
    fn float_behavior_round_trip_is_bit_exact() {
        let b = chsh_optimal_model().born_behavior().unwrap();
        match round_trip(&Document::Behavior(b.clone())) {
            Document::Behavior(back) => assert_eq!(back.entries(), b.entries()),
            other => panic!("wrong kind {}", other.kind()),
        }
    }

    #[test]
    fn functional_and_model_round_trip() {
        let f = builtin("ZG", Some(3)).unwrap();
        match round_trip(&Document::Functional(f.clone())) {
            Document::Functional(back) => assert_eq!(back, f),
            other => panic!("wrong kind {}", other.kind()),
        }
        let m = random_model(&Scenario::chsh(), 5, false).unwrap();
        match round_trip(&Document::QuantumModel(m.clone())) {
            Document::QuantumModel(back) => {
                assert_eq!(back.state(), m.state());
                assert_eq!(back.measurements(), m.measurements());
            }
            other => panic!("wrong kind {}", other.kind()),
        }
    }

    #[test]
    fn parse_errors_and_validation_errors_differ() {
        assert!(matches!(Document::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(Document::parse(r#"{"kind":"nope"}"#), Err(Error::Parse(_))));
        let sc = r#""scenario":{"parties":2,"settings":[1,1],"outcomes":[2,2]}"#;
        let short = format!(r#"{{"kind":"behavior",{sc},"mode":"exact","tables":[["1/2","1/2"]]}}"#);
        assert!(matches!(Document::parse(&short), Err(Error::Parse(_))));
        let float_in_exact = format!(r#"{{"kind":"behavior",{sc},"mode":"exact","tables":[[0.5,0,0,0.5]]}}"#);
        assert!(matches!(Document::parse(&float_in_exact), Err(Error::Parse(_))));
        let negative = format!(r#"{{"kind":"behavior",{sc},"mode":"exact","tables":[["3/2","-1/2","0","0"]]}}"#);
        assert!(matches!(Document::parse(&negative), Err(Error::NegativeEntry { .. })));
        let ok = format!(r#"{{"kind":"behavior",{sc},"mode":"float","tables":[[0.5,0,0,0.5]]}}"#);
        assert!(matches!(Document::parse(&ok), Ok(Document::Behavior(_))));
    }

    #[test]
    fn family_members_resolve_relative_to_the_family_file() {
        let dir = tempfile::tempdir().unwrap();
        Document::Behavior(pr_box()).save(&dir.path().join("pr.json")).unwrap();
        fs::create_dir(dir.path().join("sub")).unwrap();
        let family = Document::Family(vec!["../pr.json".into()]);
        family.save(&dir.path().join("sub/family.json")).unwrap();
        let members = load_family(&dir.path().join("sub/family.json")).unwrap();
        assert_eq!(members, vec![pr_box()]);
    }
}
