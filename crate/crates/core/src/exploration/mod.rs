//! The exploration protocol.
//!
//! An [`ExplorationSession`] walks the nonempty condition sets `D` from the
//! largest to the smallest. For each `D` it runs attribute exploration over
//! the subposition of the example rows under `D`, starting from the
//! implications already known to hold for every condition in `D`, and asks
//! the expert `A ⇒ A''` for every lectically enumerated premise `A` that is
//! neither closed nor entailed. Answers state the subset of `D` for which the
//! implication holds, plus one counterexample whenever that subset falls
//! short of `D`.
//!
//! The session is a plain value: [`ExplorationSession::pending`] exposes the
//! open question, [`ExplorationSession::submit`] answers it, and the whole
//! state serializes to JSON so a run can stop and resume at any question.

mod drivers;
mod expert;
mod schedule;
mod session;
pub mod terminal;
mod transcript;
mod validate;
pub mod wire;

use serde::{Deserialize, Serialize};

use crate::context::{AttrSet, ConditionSet, ContextFamily, ObjectRow, TriadicContext};
use crate::implication::{render_set, Implication};

pub use drivers::{
    explore_conditions, family_exploration, next_extent_exploration, run_session,
    triadic_exploration, ConditionsOutcome, ExplorationOutcome,
};
pub use expert::{Expert, MemberExpert, OracleExpert, Panel, ScriptedExpert};
pub use schedule::{linear_extension, restricted, TieOrder};
pub use session::{ExplorationSession, SessionOptions, Status};
pub use transcript::{transcript_csv, TranscriptRow};
pub use validate::Rejection;

/// Attribute and condition (or expert) names shared by every part of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    pub attributes: Vec<String>,
    pub conditions: Vec<String>,
}

impl Universe {
    pub fn render_attributes(&self, set: &AttrSet) -> String {
        render_set(set, &self.attributes)
    }

    pub fn render_conditions(&self, set: &ConditionSet) -> String {
        render_set(set, &self.conditions)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn condition_index(&self, name: &str) -> Option<usize> {
        self.conditions.iter().position(|c| c == name)
    }
}

/// Triadic exploration over conditions, or the multi-expert variant over a
/// context family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Triadic,
    Family,
}

/// What a rejected question contributes to the context of conditional
/// implications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Record the implication with the conditions it was asserted to hold for.
    #[default]
    RecordPartialHolds,
    /// Record only implications accepted for all of `D`.
    OnlyFullHolds,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "record-partial-holds" | "partial" => Ok(Variant::RecordPartialHolds),
            "only-full-holds" | "full" => Ok(Variant::OnlyFullHolds),
            other => Err(format!(
                "unknown variant {other:?} (expected record-partial-holds or only-full-holds)"
            )),
        }
    }
}

/// The counterexamples collected so far.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "context", rename_all = "kebab-case")]
pub enum Examples {
    Triadic(TriadicContext),
    Family(ContextFamily),
}

impl Examples {
    pub fn mode(&self) -> Mode {
        match self {
            Examples::Triadic(_) => Mode::Triadic,
            Examples::Family(_) => Mode::Family,
        }
    }

    pub fn universe(&self) -> Universe {
        match self {
            Examples::Triadic(t) => Universe {
                attributes: t.attributes().to_vec(),
                conditions: t.conditions().to_vec(),
            },
            Examples::Family(f) => Universe {
                attributes: f.attributes().to_vec(),
                conditions: f.member_ids(),
            },
        }
    }

    /// Rows of the example subposition under `d`.
    pub fn rows_under<'a>(
        &'a self,
        d: &'a ConditionSet,
    ) -> Box<dyn Iterator<Item = &'a AttrSet> + 'a> {
        match self {
            Examples::Triadic(t) => Box::new(t.rows_under(d)),
            Examples::Family(f) => Box::new(f.rows_under(d)),
        }
    }

    /// Number of stored counterexample objects (counted per member in family
    /// mode).
    pub fn object_count(&self) -> usize {
        match self {
            Examples::Triadic(t) => t.objects().len(),
            Examples::Family(f) => f.members().map(|(_, c)| c.objects().len()).sum(),
        }
    }

    pub fn as_triadic(&self) -> Option<&TriadicContext> {
        match self {
            Examples::Triadic(t) => Some(t),
            Examples::Family(_) => None,
        }
    }

    pub fn as_family(&self) -> Option<&ContextFamily> {
        match self {
            Examples::Family(f) => Some(f),
            Examples::Triadic(_) => None,
        }
    }
}

/// "Does `premise ⇒ conclusion` hold for every condition in `conditions`?"
/// The conclusion is the closure of the premise in the current examples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Question {
    pub conditions: ConditionSet,
    pub premise: AttrSet,
    pub conclusion: AttrSet,
}

impl Question {
    pub fn implication(&self) -> Implication {
        Implication::new(self.premise.clone(), self.conclusion.clone())
    }

    /// `"{d1, d2}: p ⟹ c"`.
    pub fn render(&self, u: &Universe) -> String {
        format!(
            "{{{}}}: {}",
            u.conditions_list(&self.conditions),
            self.implication().render(&u.attributes)
        )
    }
}

impl Universe {
    fn conditions_list(&self, set: &ConditionSet) -> String {
        set.iter()
            .map(|&b| self.conditions[b].as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// A counterexample: a full object row (triadic mode) or one expert's object
/// (family mode).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    Object(ObjectRow),
    Expert {
        expert: usize,
        name: String,
        attributes: AttrSet,
    },
}

impl Counterexample {
    pub fn name(&self) -> &str {
        match self {
            Counterexample::Object(row) => &row.name,
            Counterexample::Expert { name, .. } => name,
        }
    }
}

/// The expert's reply to a [`Question`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answer {
    pub holds_for: ConditionSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Answer {
    /// The implication holds for all of `d`.
    pub fn accept(d: &ConditionSet) -> Self {
        Answer {
            holds_for: d.clone(),
            counterexample: None,
        }
    }

    pub fn reject(holds_for: ConditionSet, counterexample: Counterexample) -> Self {
        Answer {
            holds_for,
            counterexample: Some(counterexample),
        }
    }
}
