//! Name-based JSON forms of questions, answers and session configuration,
//! as used by the HTTP service and the terminal front end.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::context::{AttrSet, ConditionSet, ContextFamily, ObjectRow, TriadicContext};
use crate::error::{Error, Result};
use crate::format::{parse_family_json, parse_triadic_json};
use crate::implication::{Implication, ImplicationSet};

use super::schedule::TieOrder;
use super::session::{ExplorationSession, SessionOptions};
use super::validate::Rejection;
use super::{Answer, Counterexample, Examples, Mode, Question, Universe, Variant};

/// The pending question with progress information.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionView {
    /// Answers must echo this number.
    pub seq: u64,
    pub conditions: Vec<String>,
    pub premise: Vec<String>,
    /// `A''`, premise included.
    pub conclusion: Vec<String>,
    /// `A'' \ A`.
    pub added: Vec<String>,
    pub text: String,
    pub node: usize,
    pub schedule_len: usize,
}

fn names(set: &AttrSet, all: &[String]) -> Vec<String> {
    set.iter().map(|&i| all[i].clone()).collect()
}

impl QuestionView {
    pub fn new(s: &ExplorationSession, q: &Question) -> Self {
        let u = s.universe();
        QuestionView {
            seq: s.seq(),
            conditions: names(&q.conditions, &u.conditions),
            premise: names(&q.premise, &u.attributes),
            conclusion: names(&q.conclusion, &u.attributes),
            added: names(&q.implication().added(), &u.attributes),
            text: q.implication().render(&u.attributes),
            node: s.node_index(),
            schedule_len: s.schedule().len(),
        }
    }

    pub fn of(s: &ExplorationSession) -> Option<Self> {
        s.pending().map(|q| QuestionView::new(s, q))
    }
}

/// A counterexample by name. Triadic sessions give `table` as
/// `[attribute, condition]` pairs; family sessions give `expert` and
/// `attributes`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleWire {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expert: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attributes: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<u64>,
    pub holds_for: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleWire>,
}

fn attribute(u: &Universe, name: &str) -> Result<usize, Rejection> {
    u.attribute_index(name)
        .ok_or_else(|| Rejection::UnknownAttribute {
            name: name.to_owned(),
        })
}

fn condition(u: &Universe, name: &str) -> Result<usize, Rejection> {
    u.condition_index(name)
        .ok_or_else(|| Rejection::UnknownCondition {
            name: name.to_owned(),
        })
}

impl AnswerWire {
    /// Resolves names against the universe.
    pub fn resolve(&self, u: &Universe, mode: Mode) -> Result<Answer, Rejection> {
        let holds_for = self
            .holds_for
            .iter()
            .map(|c| condition(u, c))
            .collect::<Result<ConditionSet, _>>()?;
        let counterexample = match &self.counterexample {
            None => None,
            Some(ce) => Some(match mode {
                Mode::Triadic => {
                    if ce.expert.is_some() || ce.attributes.is_some() {
                        return Err(Rejection::WrongKind(
                            "triadic counterexamples carry a table of [attribute, condition] pairs"
                                .into(),
                        ));
                    }
                    let mut pairs = Vec::new();
                    for (m, b) in ce.table.iter().flatten() {
                        pairs.push((attribute(u, m)?, condition(u, b)?));
                    }
                    Counterexample::Object(ObjectRow::from_pairs(
                        ce.name.clone(),
                        u.conditions.len(),
                        pairs,
                    ))
                }
                Mode::Family => {
                    if ce.table.is_some() {
                        return Err(Rejection::WrongKind(
                            "family counterexamples carry an expert and an attribute list".into(),
                        ));
                    }
                    let expert_name = ce.expert.as_deref().ok_or_else(|| {
                        Rejection::WrongKind("family counterexamples must name the expert".into())
                    })?;
                    let expert =
                        u.condition_index(expert_name)
                            .ok_or_else(|| Rejection::UnknownExpert {
                                name: expert_name.to_owned(),
                            })?;
                    let attributes = ce
                        .attributes
                        .iter()
                        .flatten()
                        .map(|m| attribute(u, m))
                        .collect::<Result<AttrSet, _>>()?;
                    Counterexample::Expert {
                        expert,
                        name: ce.name.clone(),
                        attributes,
                    }
                }
            }),
        };
        Ok(Answer {
            holds_for,
            counterexample,
        })
    }

    pub fn from_answer(u: &Universe, ans: &Answer, seq: Option<u64>) -> Self {
        let counterexample = ans.counterexample.as_ref().map(|ce| match ce {
            Counterexample::Object(row) => CounterexampleWire {
                name: row.name.clone(),
                table: Some(
                    row.pairs()
                        .map(|(m, b)| (u.attributes[m].clone(), u.conditions[b].clone()))
                        .collect(),
                ),
                ..Default::default()
            },
            Counterexample::Expert {
                expert,
                name,
                attributes,
            } => CounterexampleWire {
                name: name.clone(),
                expert: Some(u.conditions[*expert].clone()),
                attributes: Some(names(attributes, &u.attributes)),
                ..Default::default()
            },
        });
        AnswerWire {
            seq,
            holds_for: names(&ans.holds_for, &u.conditions),
            counterexample,
        }
    }
}

/// A background implication by attribute names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationWire {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
}

/// Everything needed to start a session.
///
/// `examples` is optional. In triadic mode it is a triadic context file,
/// where `attributes` and `conditions` may be omitted. In family mode it has
/// the family file's `members` map, and experts it leaves out start empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    #[serde(default = "triadic")]
    pub mode: Mode,
    pub attributes: Vec<String>,
    /// Conditions, or expert ids in family mode.
    #[serde(alias = "experts")]
    pub conditions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub examples: Option<Value>,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default)]
    pub order: TieOrder,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict_to: Option<Vec<String>>,
    #[serde(default)]
    pub allow_large_schedule: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub background: Vec<ImplicationWire>,
}

fn triadic() -> Mode {
    Mode::Triadic
}

fn fill_names(
    value: &Value,
    attributes: &[String],
    conditions: Option<&[String]>,
) -> Result<String> {
    let mut obj = value
        .as_object()
        .cloned()
        .ok_or_else(|| Error::invalid("examples must be a JSON object"))?;
    for (key, expected) in [("attributes", Some(attributes)), ("conditions", conditions)] {
        let Some(expected) = expected else { continue };
        match obj.get(key) {
            None => {
                obj.insert(key.to_owned(), json!(expected));
            }
            Some(given) if given == &json!(expected) => {}
            Some(_) => {
                return Err(Error::invalid(format!(
                    "examples list different {key} than the session"
                )))
            }
        }
    }
    Ok(Value::Object(obj).to_string())
}

impl SessionConfig {
    /// A triadic configuration over the names of `t` with `t` as examples.
    pub fn for_triadic(t: &TriadicContext) -> Self {
        SessionConfig {
            mode: Mode::Triadic,
            attributes: t.attributes().to_vec(),
            conditions: t.conditions().to_vec(),
            examples: Some(serde_json::to_value(t).expect("context serializes")),
            variant: Variant::default(),
            order: TieOrder::default(),
            restrict_to: None,
            allow_large_schedule: false,
            background: Vec::new(),
        }
    }

    pub fn universe(&self) -> Universe {
        Universe {
            attributes: self.attributes.clone(),
            conditions: self.conditions.clone(),
        }
    }

    fn examples(&self) -> Result<Examples> {
        match self.mode {
            Mode::Triadic => {
                let t = match &self.examples {
                    None => {
                        TriadicContext::empty(self.attributes.clone(), self.conditions.clone())?
                    }
                    Some(v) => parse_triadic_json(&fill_names(
                        v,
                        &self.attributes,
                        Some(&self.conditions),
                    )?)?,
                };
                Ok(Examples::Triadic(t))
            }
            Mode::Family => {
                let mut f = match &self.examples {
                    None => ContextFamily::empty(self.attributes.clone(), Vec::new())?,
                    Some(v) => parse_family_json(&fill_names(v, &self.attributes, None)?)?,
                };
                if let Some(extra) = f
                    .member_ids()
                    .into_iter()
                    .find(|id| !self.conditions.contains(id))
                {
                    return Err(Error::invalid(format!(
                        "examples name unknown expert {extra:?}"
                    )));
                }
                // reorder to the configured expert order, adding empty members
                let members = self
                    .conditions
                    .iter()
                    .map(|id| {
                        let ctx = match f.member_index(id) {
                            Some(i) => f.member(i).clone(),
                            None => crate::context::FormalContext::empty(self.attributes.clone())?,
                        };
                        Ok((id.clone(), ctx))
                    })
                    .collect::<Result<Vec<_>>>()?;
                f = ContextFamily::new(self.attributes.clone(), members)?;
                Ok(Examples::Family(f))
            }
        }
    }

    pub fn options(&self) -> Result<SessionOptions> {
        let u = self.universe();
        let mut opts = SessionOptions::default()
            .variant(self.variant)
            .order(self.order)
            .allow_large_schedule(self.allow_large_schedule);
        if let Some(r) = &self.restrict_to {
            let set = r
                .iter()
                .map(|c| condition(&u, c).map_err(|e| Error::invalid(e.to_string())))
                .collect::<Result<ConditionSet>>()?;
            opts = opts.restrict_to(set);
        }
        let lookup = |names: &[String]| -> Result<AttrSet> {
            names
                .iter()
                .map(|m| attribute(&u, m).map_err(|e| Error::invalid(e.to_string())))
                .collect()
        };
        let mut l0 = ImplicationSet::new();
        for imp in &self.background {
            let premise = lookup(&imp.premise)?;
            let mut conclusion = lookup(&imp.conclusion)?;
            conclusion.extend(premise.iter().copied());
            l0.insert(Implication::new(premise, conclusion));
        }
        Ok(opts.background(l0))
    }

    /// Validates the configuration and starts the session at its first
    /// open question.
    pub fn build(&self) -> Result<ExplorationSession> {
        if self.attributes.is_empty() {
            return Err(Error::invalid("at least one attribute is required"));
        }
        ExplorationSession::new(self.examples()?, None, self.options()?)
    }
}
