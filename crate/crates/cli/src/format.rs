//! JSON encodings for instances, allocations, reports, and solve outcomes.
//!
//! Instance files look like
//!
//! ```json
//! {
//!   "agents": 2,
//!   "goods": ["a", "b"],
//!   "class": "binary",
//!   "valuations": [[1, 0], [1, 1]],
//!   "frozen": {"a": 0}
//! }
//! ```
//!
//! with `"rankings": [["a", "b"], ...]` (good names, most preferred first)
//! replacing `"valuations"` for the lexicographic class. Allocation files are
//! `{"bundles": [["a"], ["b"]]}`. Item values are arbitrary-precision
//! non-negative integers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use faircomp_core::checkers::FairnessReport;
use faircomp_core::model::{
    Instance, ModelError, PartialAllocation, SolveOutcome, ValuationClass,
};
use faircomp_core::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Debug)]
pub enum FormatError {
    Syntax(String),
    AgentCountMismatch { declared: usize, rows: usize },
    UnknownClass(String),
    MissingValuations,
    MissingRankings,
    UnexpectedField { class: ValuationClass, field: &'static str },
    UnknownGood(String),
    NonIntegerValue { agent: usize, good: usize },
    Model(ModelError),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax(msg) => write!(f, "malformed JSON: {msg}"),
            FormatError::AgentCountMismatch { declared, rows } => {
                write!(f, "\"agents\" declares {declared} agents but {rows} rows are given")
            }
            FormatError::UnknownClass(class) => write!(
                f,
                "unknown class {class:?} (expected \"binary\", \"lexicographic\", or \"additive\")"
            ),
            FormatError::MissingValuations => {
                write!(f, "binary and additive instances need a \"valuations\" field")
            }
            FormatError::MissingRankings => {
                write!(f, "lexicographic instances need a \"rankings\" field")
            }
            FormatError::UnexpectedField { class, field } => {
                write!(f, "{class} instances must not carry a {field:?} field")
            }
            FormatError::UnknownGood(name) => write!(f, "unknown good {name:?}"),
            FormatError::NonIntegerValue { agent, good } => {
                write!(f, "agent {agent}, good {good}: value is not a non-negative integer")
            }
            FormatError::Model(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<ModelError> for FormatError {
    fn from(err: ModelError) -> Self {
        FormatError::Model(err)
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    agents: usize,
    goods: Vec<String>,
    class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valuations: Option<Vec<Vec<serde_json::Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rankings: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    frozen: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct AllocationDoc {
    bundles: Vec<Vec<String>>,
}

fn good_index(goods: &[String], name: &str) -> Result<usize, FormatError> {
    goods
        .iter()
        .position(|g| g == name)
        .ok_or_else(|| FormatError::UnknownGood(name.to_string()))
}

fn number_to_biguint(
    number: &serde_json::Number,
    agent: usize,
    good: usize,
) -> Result<BigUint, FormatError> {
    let text = number.to_string();
    BigUint::from_str(&text).map_err(|_| FormatError::NonIntegerValue { agent, good })
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    let frozen: BTreeMap<usize, usize> = doc
        .frozen
        .iter()
        .map(|(name, &agent)| Ok((good_index(&doc.goods, name)?, agent)))
        .collect::<Result<_, FormatError>>()?;

    let instance = match doc.class.as_str() {
        "binary" | "additive" => {
            let class = if doc.class == "binary" {
                ValuationClass::Binary
            } else {
                ValuationClass::Additive
            };
            if doc.rankings.is_some() {
                return Err(FormatError::UnexpectedField {
                    class,
                    field: "rankings",
                });
            }
            let rows = doc.valuations.ok_or(FormatError::MissingValuations)?;
            if rows.len() != doc.agents {
                return Err(FormatError::AgentCountMismatch {
                    declared: doc.agents,
                    rows: rows.len(),
                });
            }
            let values: Vec<Vec<BigUint>> = rows
                .iter()
                .enumerate()
                .map(|(agent, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(good, v)| number_to_biguint(v, agent, good))
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            if class == ValuationClass::Binary {
                let one = BigUint::from(1u8);
                for (agent, row) in values.iter().enumerate() {
                    for (good, v) in row.iter().enumerate() {
                        if *v > one {
                            return Err(ModelError::BinaryValueOutOfRange { agent, good }.into());
                        }
                    }
                }
                let small: Vec<Vec<u64>> = values
                    .iter()
                    .map(|row| row.iter().map(|v| u64::try_from(v).unwrap()).collect())
                    .collect();
                Instance::binary(doc.goods, small, frozen)?
            } else {
                Instance::additive(doc.goods, values, frozen)?
            }
        }
        "lexicographic" => {
            if doc.valuations.is_some() {
                return Err(FormatError::UnexpectedField {
                    class: ValuationClass::Lexicographic,
                    field: "valuations",
                });
            }
            let named = doc.rankings.ok_or(FormatError::MissingRankings)?;
            if named.len() != doc.agents {
                return Err(FormatError::AgentCountMismatch {
                    declared: doc.agents,
                    rows: named.len(),
                });
            }
            let rankings: Vec<Vec<usize>> = named
                .iter()
                .map(|row| row.iter().map(|name| good_index(&doc.goods, name)).collect())
                .collect::<Result<_, _>>()?;
            Instance::lexicographic(doc.goods, rankings, frozen)?
        }
        other => return Err(FormatError::UnknownClass(other.to_string())),
    };
    Ok(instance)
}

/// Serializes an instance back into the file schema. Round trips with
/// `parse_instance`.
pub fn serialize_instance(inst: &Instance) -> String {
    let frozen: BTreeMap<String, usize> = (0..inst.m())
        .filter_map(|g| inst.frozen_owner(g).map(|a| (inst.good_names()[g].clone(), a)))
        .collect();
    let (class, valuations, rankings) = match inst.class() {
        ValuationClass::Lexicographic => {
            let rankings: Vec<Vec<String>> = (0..inst.n_agents())
                .map(|i| {
                    inst.ranking(i)
                        .expect("lexicographic instance")
                        .iter()
                        .map(|&g| inst.good_names()[g].clone())
                        .collect()
                })
                .collect();
            ("lexicographic", None, Some(rankings))
        }
        class => {
            let name = if class == ValuationClass::Binary {
                "binary"
            } else {
                "additive"
            };
            let rows: Vec<Vec<serde_json::Number>> = (0..inst.n_agents())
                .map(|i| {
                    inst.item_values(i)
                        .iter()
                        .map(|v| {
                            serde_json::Number::from_string_unchecked(v.to_string())
                        })
                        .collect()
                })
                .collect();
            (name, Some(rows), None)
        }
    };
    let doc = InstanceDoc {
        agents: inst.n_agents(),
        goods: inst.good_names().to_vec(),
        class: class.to_string(),
        valuations,
        rankings,
        frozen,
    };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

/// Parses an allocation file against an instance.
pub fn parse_allocation(text: &str, inst: &Instance) -> Result<PartialAllocation, FormatError> {
    let doc: AllocationDoc =
        serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    let bundles = doc
        .bundles
        .iter()
        .map(|bundle| {
            bundle
                .iter()
                .map(|name| good_index(inst.good_names(), name))
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PartialAllocation::new(inst, bundles)?)
}

pub fn serialize_allocation(inst: &Instance, alloc: &PartialAllocation) -> String {
    let doc = AllocationDoc {
        bundles: alloc
            .bundles()
            .iter()
            .map(|b| b.iter().map(|&g| inst.good_names()[g].clone()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

/// Stable JSON rendering of a fairness report (violations are already
/// ordered by agent, then counterpart).
pub fn report_to_json(report: &FairnessReport) -> serde_json::Value {
    json!({
        "property": report.property.to_string(),
        "holds": report.holds,
        "violations": report.violations.iter().map(|v| {
            json!({
                "agent": v.agent,
                "counterpart": v.counterpart,
                "explanation": v.explanation,
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn outcome_to_json(inst: &Instance, outcome: &SolveOutcome) -> serde_json::Value {
    json!({
        "status": outcome.status.to_string(),
        "witness": outcome.witness.as_ref().map(|alloc| {
            serde_json::from_str::<serde_json::Value>(&serialize_allocation(inst, alloc))
                .expect("allocation serializes")
        }),
        "note": outcome.note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lex_counterexample_file() {
        let text = r#"{
            "agents": 2,
            "goods": ["g1", "g2", "f1", "f2"],
            "class": "lexicographic",
            "rankings": [["g1", "g2", "f1", "f2"], ["f1", "f2", "g1", "g2"]],
            "frozen": {"f1": 0, "f2": 1}
        }"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.n_agents(), 2);
        assert_eq!(inst.unallocated(), vec![0, 1]);
        assert_eq!(inst.frozen_owner(2), Some(0));
    }

    #[test]
    fn parse_empty_goods() {
        let inst = parse_instance(
            r#"{"agents": 1, "goods": [], "class": "binary", "valuations": [[]]}"#,
        )
        .unwrap();
        assert_eq!(inst.m(), 0);
    }

    #[test]
    fn binary_value_out_of_range() {
        let err = parse_instance(
            r#"{"agents": 1, "goods": ["a"], "class": "binary", "valuations": [[2]]}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            FormatError::Model(ModelError::BinaryValueOutOfRange { .. })
        ));
    }

    #[test]
    fn ranking_not_a_permutation() {
        let err = parse_instance(
            r#"{"agents": 1, "goods": ["a", "b"], "class": "lexicographic",
                "rankings": [["a", "a"]]}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            FormatError::Model(ModelError::RankingNotPermutation { .. })
        ));
    }

    #[test]
    fn unknown_frozen_good() {
        let err = parse_instance(
            r#"{"agents": 1, "goods": ["a"], "class": "binary", "valuations": [[1]],
                "frozen": {"zzz": 0}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, FormatError::UnknownGood(_)));
    }

    #[test]
    fn big_values_round_trip() {
        let text = r#"{
            "agents": 1,
            "goods": ["a"],
            "class": "additive",
            "valuations": [[123456789012345678901234567890]]
        }"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(
            inst.item_value(0, 0).to_string(),
            "123456789012345678901234567890"
        );
        let again = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn allocation_round_trip() {
        let inst = parse_instance(
            r#"{"agents": 2, "goods": ["a", "b"], "class": "binary",
                "valuations": [[1, 0], [0, 1]]}"#,
        )
        .unwrap();
        let alloc = parse_allocation(r#"{"bundles": [["b"], ["a"]]}"#, &inst).unwrap();
        assert_eq!(alloc.bundle(0).iter().copied().collect::<Vec<_>>(), vec![1]);
        let text = serialize_allocation(&inst, &alloc);
        assert_eq!(parse_allocation(&text, &inst).unwrap(), alloc);
    }
}
