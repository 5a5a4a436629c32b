//! Answer validation and the consistency check against earlier assertions.

use serde::{Deserialize, Serialize};

use crate::context::AttrSet;
use crate::implication::{Implication, ImplicationSet};
use crate::lattice::ImplicationConditionContext;

use super::{Answer, Counterexample, Mode, Question, Universe};

/// Why an answer was refused. The question stays pending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "code", rename_all = "kebab-case")]
pub enum Rejection {
    #[error("a counterexample is required when the implication does not hold for every condition")]
    MissingCounterexample,
    #[error("no counterexample may be given when the implication holds for every condition")]
    UnexpectedCounterexample,
    #[error("condition {condition:?} is not part of the question")]
    HoldsForOutsideQuestion { condition: String },
    #[error("unknown attribute {name:?}")]
    UnknownAttribute { name: String },
    #[error("unknown condition {name:?}")]
    UnknownCondition { name: String },
    #[error("unknown expert {name:?}")]
    UnknownExpert { name: String },
    #[error("counterexample name must not be empty")]
    EmptyName,
    #[error("{0}")]
    WrongKind(String),
    #[error("the counterexample does not violate the implication under any rejected condition")]
    NoViolation,
    #[error("the counterexample violates the implication under {condition:?}, which was claimed to hold")]
    ContradictsClaim { condition: String },
    #[error("expert {expert:?} was not asked or accepted the implication")]
    ExpertNotRefuting { expert: String },
    #[error("the counterexample violates {implication}, asserted to hold under {condition:?}")]
    ContradictsKnowledge {
        implication: String,
        condition: String,
    },
    #[error("answer refers to question {got}, the pending question is {expected}")]
    StaleQuestion { expected: u64, got: u64 },
}

impl Rejection {
    /// Stable kebab-case code.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::MissingCounterexample => "missing-counterexample",
            Rejection::UnexpectedCounterexample => "unexpected-counterexample",
            Rejection::HoldsForOutsideQuestion { .. } => "holds-for-outside-question",
            Rejection::UnknownAttribute { .. } => "unknown-attribute",
            Rejection::UnknownCondition { .. } => "unknown-condition",
            Rejection::UnknownExpert { .. } => "unknown-expert",
            Rejection::EmptyName => "empty-name",
            Rejection::WrongKind(_) => "wrong-kind",
            Rejection::NoViolation => "no-violation",
            Rejection::ContradictsClaim { .. } => "contradicts-claim",
            Rejection::ExpertNotRefuting { .. } => "expert-not-refuting",
            Rejection::ContradictsKnowledge { .. } => "inconsistent",
            Rejection::StaleQuestion { .. } => "stale-question",
        }
    }
}

fn violates(row: &AttrSet, imp: &Implication) -> bool {
    !imp.is_respected_by(row)
}

fn check_attributes(u: &Universe, row: &AttrSet) -> Result<(), Rejection> {
    match row.iter().find(|&&m| m >= u.attributes.len()) {
        Some(m) => Err(Rejection::UnknownAttribute {
            name: format!("#{m}"),
        }),
        None => Ok(()),
    }
}

/// Checks the answer against the question alone.
pub(crate) fn validate_answer(
    u: &Universe,
    mode: Mode,
    q: &Question,
    ans: &Answer,
) -> Result<(), Rejection> {
    if let Some(&b) = ans.holds_for.iter().find(|b| !q.conditions.contains(b)) {
        return Err(Rejection::HoldsForOutsideQuestion {
            condition: u
                .conditions
                .get(b)
                .cloned()
                .unwrap_or_else(|| format!("#{b}")),
        });
    }
    let full = ans.holds_for == q.conditions;
    let ce = match (&ans.counterexample, full) {
        (None, true) => return Ok(()),
        (Some(_), true) => return Err(Rejection::UnexpectedCounterexample),
        (None, false) => return Err(Rejection::MissingCounterexample),
        (Some(ce), false) => ce,
    };
    if ce.name().is_empty() {
        return Err(Rejection::EmptyName);
    }
    let imp = q.implication();
    match (mode, ce) {
        (Mode::Triadic, Counterexample::Object(row)) => {
            if row.table.len() != u.conditions.len() {
                return Err(Rejection::WrongKind(format!(
                    "the object table must list {} conditions, got {}",
                    u.conditions.len(),
                    row.table.len()
                )));
            }
            for r in &row.table {
                check_attributes(u, r)?;
            }
            if let Some(&b) = ans
                .holds_for
                .iter()
                .find(|&&b| violates(&row.table[b], &imp))
            {
                return Err(Rejection::ContradictsClaim {
                    condition: u.conditions[b].clone(),
                });
            }
            let refuted = q
                .conditions
                .difference(&ans.holds_for)
                .any(|&b| violates(&row.table[b], &imp));
            if !refuted {
                return Err(Rejection::NoViolation);
            }
            Ok(())
        }
        (
            Mode::Family,
            Counterexample::Expert {
                expert, attributes, ..
            },
        ) => {
            let name =
                u.conditions
                    .get(*expert)
                    .cloned()
                    .ok_or_else(|| Rejection::UnknownExpert {
                        name: format!("#{expert}"),
                    })?;
            if !q.conditions.contains(expert) || ans.holds_for.contains(expert) {
                return Err(Rejection::ExpertNotRefuting { expert: name });
            }
            check_attributes(u, attributes)?;
            if !violates(attributes, &imp) {
                return Err(Rejection::NoViolation);
            }
            Ok(())
        }
        (Mode::Triadic, Counterexample::Expert { .. }) => Err(Rejection::WrongKind(
            "triadic sessions expect an object with its full condition table".into(),
        )),
        (Mode::Family, Counterexample::Object(_)) => Err(Rejection::WrongKind(
            "family sessions expect an expert-attributed counterexample".into(),
        )),
    }
}

/// Checks a counterexample against every implication asserted so far: the
/// recorded `kc` entries and the background implications of the current
/// node (which apply to every condition of `d`).
pub(crate) fn check_consistency(
    u: &Universe,
    ce: &Counterexample,
    records: &[&ImplicationConditionContext],
    background: &ImplicationSet,
    d: &crate::context::ConditionSet,
) -> Result<(), Rejection> {
    let rows: Vec<(usize, &AttrSet)> = match ce {
        Counterexample::Object(row) => row.table.iter().enumerate().collect(),
        Counterexample::Expert {
            expert, attributes, ..
        } => vec![(*expert, attributes)],
    };
    for (b, row) in rows {
        let asserted = records
            .iter()
            .flat_map(|kc| kc.entries())
            .filter(|e| e.holds_for.contains(&b))
            .map(|e| &e.implication);
        let extra = background.iter().filter(|_| d.contains(&b));
        if let Some(imp) = asserted.chain(extra).find(|imp| violates(row, imp)) {
            return Err(Rejection::ContradictsKnowledge {
                implication: imp.render(&u.attributes),
                condition: u.conditions[b].clone(),
            });
        }
    }
    Ok(())
}
