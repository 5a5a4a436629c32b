//! The resumable exploration state machine.

use serde::{Deserialize, Serialize};

use crate::closure::next_closure;
use crate::context::{row_closure, AttrSet, ConditionSet};
use crate::error::{Error, Result};
use crate::implication::ImplicationSet;
use crate::lattice::ImplicationConditionContext;

use super::schedule::{linear_extension, restricted, TieOrder};
use super::transcript::TranscriptRow;
use super::validate::{check_consistency, validate_answer, Rejection};
use super::{Answer, Counterexample, Examples, Mode, Question, Universe, Variant};

/// Schedules grow as `2^|B|`; more conditions than this need an explicit
/// override.
pub const MAX_UNGUARDED_CONDITIONS: usize = 12;

/// Knobs for a session.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionOptions {
    pub variant: Variant,
    pub order: TieOrder,
    /// Only explore subsets of these conditions.
    pub restrict_to: Option<ConditionSet>,
    pub allow_large_schedule: bool,
    /// Implications taken as known for every condition set.
    pub background: ImplicationSet,
}

impl SessionOptions {
    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    pub fn order(mut self, o: TieOrder) -> Self {
        self.order = o;
        self
    }

    pub fn restrict_to(mut self, conditions: ConditionSet) -> Self {
        self.restrict_to = Some(conditions);
        self
    }

    pub fn allow_large_schedule(mut self, allow: bool) -> Self {
        self.allow_large_schedule = allow;
        self
    }

    pub fn background(mut self, l0: ImplicationSet) -> Self {
        self.background = l0;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    AwaitingAnswer,
    Finished,
    /// The last answer contradicted earlier assertions and was refused; the
    /// question is still pending.
    Inconsistent,
}

/// Progress within one condition set `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct NodeState {
    conditions: ConditionSet,
    /// `D'` in the context of conditional implications plus everything
    /// accepted for `D` so far.
    accepted: ImplicationSet,
    premise: AttrSet,
}

/// The complete state of an exploration. Serializes to a self-contained
/// snapshot; a restored session continues at the same question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationSession {
    universe: Universe,
    variant: Variant,
    background: ImplicationSet,
    examples: Examples,
    kc: ImplicationConditionContext,
    /// What the current node has recorded; merged into `kc` when it ends.
    fragment: ImplicationConditionContext,
    schedule: Vec<ConditionSet>,
    node_index: usize,
    node: Option<NodeState>,
    pending: Option<Question>,
    transcript: Vec<TranscriptRow>,
    status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    last_inconsistency: Option<Rejection>,
}

impl ExplorationSession {
    /// A session over the full schedule of nonempty condition sets.
    pub fn new(
        examples: Examples,
        kc: Option<ImplicationConditionContext>,
        options: SessionOptions,
    ) -> Result<Self> {
        let n = examples.universe().conditions.len();
        if n > MAX_UNGUARDED_CONDITIONS && !options.allow_large_schedule {
            return Err(Error::PreconditionViolation(format!(
                "{n} conditions give {} condition sets; pass the large-schedule override to proceed",
                (1u128 << n) - 1
            )));
        }
        let mut schedule = linear_extension(n, options.order);
        if let Some(within) = &options.restrict_to {
            if within.iter().any(|&b| b >= n) {
                return Err(Error::invalid("restriction names an unknown condition"));
            }
            schedule = restricted(schedule, within);
        }
        Self::with_schedule(examples, kc, schedule, options)
    }

    /// A session over an explicit list of condition sets.
    pub fn with_schedule(
        examples: Examples,
        kc: Option<ImplicationConditionContext>,
        schedule: Vec<ConditionSet>,
        options: SessionOptions,
    ) -> Result<Self> {
        let universe = examples.universe();
        if universe.conditions.is_empty() {
            return Err(Error::invalid(match examples.mode() {
                Mode::Triadic => "at least one condition is required",
                Mode::Family => "at least one expert is required",
            }));
        }
        let n_attr = universe.attributes.len();
        if options
            .background
            .iter()
            .any(|imp| imp.premise.union(&imp.conclusion).any(|&m| m >= n_attr))
        {
            return Err(Error::invalid(
                "background implication over unknown attributes",
            ));
        }
        for d in &schedule {
            if d.is_empty() || d.iter().any(|&b| b >= universe.conditions.len()) {
                return Err(Error::invalid(
                    "schedule entries must be nonempty sets of known conditions",
                ));
            }
        }
        let kc = match kc {
            Some(kc) => {
                if kc.attributes() != universe.attributes.as_slice()
                    || kc.conditions() != universe.conditions.as_slice()
                {
                    return Err(Error::invalid(
                        "the implication context does not match the examples' attributes and conditions",
                    ));
                }
                kc
            }
            None => ImplicationConditionContext::new(
                universe.attributes.clone(),
                universe.conditions.clone(),
            ),
        };
        let all: ConditionSet = schedule.iter().flatten().copied().collect();
        for imp in &options.background {
            if examples.rows_under(&all).any(|r| !imp.is_respected_by(r)) {
                return Err(Error::PreconditionViolation(format!(
                    "background implication {} is violated by the examples",
                    imp.render(&universe.attributes)
                )));
            }
        }
        let fragment = ImplicationConditionContext::new(
            universe.attributes.clone(),
            universe.conditions.clone(),
        );
        let mut session = ExplorationSession {
            universe,
            variant: options.variant,
            background: options.background,
            examples,
            kc,
            fragment,
            schedule,
            node_index: 0,
            node: None,
            pending: None,
            transcript: Vec::new(),
            status: Status::AwaitingAnswer,
            last_inconsistency: None,
        };
        session.advance();
        Ok(session)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn mode(&self) -> Mode {
        self.examples.mode()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn examples(&self) -> &Examples {
        &self.examples
    }

    /// The context of conditional implications of completed nodes.
    pub fn kc(&self) -> &ImplicationConditionContext {
        &self.kc
    }

    /// Completed nodes plus what the current node has recorded.
    pub fn current_kc(&self) -> ImplicationConditionContext {
        let mut kc = self.kc.clone();
        kc.merge(&self.fragment);
        kc
    }

    pub fn schedule(&self) -> &[ConditionSet] {
        &self.schedule
    }

    /// Position of the current node in the schedule (`schedule.len()` once
    /// finished).
    pub fn node_index(&self) -> usize {
        self.node_index
    }

    pub fn current_conditions(&self) -> Option<&ConditionSet> {
        self.node.as_ref().map(|n| &n.conditions)
    }

    /// Implications known for the current node.
    pub fn accepted(&self) -> Option<&ImplicationSet> {
        self.node.as_ref().map(|n| &n.accepted)
    }

    pub fn pending(&self) -> Option<&Question> {
        self.pending.as_ref()
    }

    /// Number of answered questions; identifies the pending one.
    pub fn seq(&self) -> u64 {
        self.transcript.len() as u64
    }

    pub fn transcript(&self) -> &[TranscriptRow] {
        &self.transcript
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_finished(&self) -> bool {
        self.status == Status::Finished
    }

    pub fn last_inconsistency(&self) -> Option<&Rejection> {
        self.last_inconsistency.as_ref()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("session serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: ExplorationSession =
            serde_json::from_str(text).map_err(|e| Error::parse(Some(e.line()), e.to_string()))?;
        if s.examples.universe() != s.universe
            || s.kc.attributes() != s.universe.attributes.as_slice()
            || s.kc.conditions() != s.universe.conditions.as_slice()
        {
            return Err(Error::invalid(
                "snapshot parts disagree on attributes or conditions",
            ));
        }
        if (s.status == Status::Finished) != s.pending.is_none() {
            return Err(Error::invalid(
                "snapshot status does not match its pending question",
            ));
        }
        Ok(s)
    }

    /// Validates and applies an answer to the pending question, then moves
    /// on to the next open question (possibly in a later node).
    pub fn submit(&mut self, answer: Answer) -> Result<()> {
        let q = self.pending.clone().ok_or(Error::NoPendingQuestion)?;
        validate_answer(&self.universe, self.mode(), &q, &answer).map_err(Error::Rejected)?;
        let node = self
            .node
            .as_mut()
            .expect("a pending question belongs to a node");
        let imp = q.implication();
        let answer = match answer.counterexample {
            None => {
                node.accepted.insert(imp.clone());
                self.fragment.record(&imp, &answer.holds_for);
                answer
            }
            Some(ce) => {
                if let Err(r) = check_consistency(
                    &self.universe,
                    &ce,
                    &[&self.kc, &self.fragment],
                    &node.accepted,
                    &node.conditions,
                ) {
                    log::warn!("refusing inconsistent counterexample: {r}");
                    self.status = Status::Inconsistent;
                    self.last_inconsistency = Some(r.clone());
                    return Err(Error::Inconsistent(r));
                }
                let ce = self.ingest(ce);
                if self.variant == Variant::RecordPartialHolds {
                    self.fragment.record(&imp, &answer.holds_for);
                }
                Answer::reject(answer.holds_for, ce)
            }
        };
        self.transcript
            .push(TranscriptRow::new(&self.universe, q, answer));
        self.pending = None;
        self.status = Status::AwaitingAnswer;
        self.last_inconsistency = None;
        self.advance();
        Ok(())
    }

    fn fresh_name(name: &str, taken: impl Fn(&str) -> bool) -> String {
        if !taken(name) {
            return name.to_owned();
        }
        let fresh = (2..)
            .map(|k| format!("{name}#{k}"))
            .find(|n| !taken(n))
            .expect("unbounded suffixes");
        log::warn!("counterexample name {name:?} is taken; stored as {fresh:?}");
        fresh
    }

    /// Adds the counterexample to the examples; returns it under the name it
    /// was stored as.
    fn ingest(&mut self, ce: Counterexample) -> Counterexample {
        match (&mut self.examples, ce) {
            (Examples::Triadic(t), Counterexample::Object(mut row)) => {
                row.name = Self::fresh_name(&row.name, |n| t.object_index(n).is_some());
                t.push_object(row.clone())
                    .expect("validated counterexample");
                Counterexample::Object(row)
            }
            (
                Examples::Family(f),
                Counterexample::Expert {
                    expert,
                    name,
                    attributes,
                },
            ) => {
                let ctx = f.member_mut(expert);
                let name = Self::fresh_name(&name, |n| ctx.object_index(n).is_some());
                ctx.push_object(name.clone(), attributes.clone())
                    .expect("validated counterexample");
                Counterexample::Expert {
                    expert,
                    name,
                    attributes,
                }
            }
            _ => unreachable!("validation checks the counterexample kind"),
        }
    }

    /// Runs the engine until a question is open or the schedule is done.
    fn advance(&mut self) {
        let n = self.universe.attributes.len();
        while self.pending.is_none() {
            let Some(node) = self.node.as_mut() else {
                let Some(d) = self.schedule.get(self.node_index) else {
                    self.status = Status::Finished;
                    return;
                };
                let mut accepted = self.background.clone();
                accepted.extend(self.kc.implications_for(d));
                self.node = Some(NodeState {
                    conditions: d.clone(),
                    accepted,
                    premise: AttrSet::new(),
                });
                continue;
            };
            let a = &node.premise;
            let closed = row_closure(self.examples.rows_under(&node.conditions), a, n);
            if &closed != a && !closed.is_subset(&node.accepted.closure(a)) {
                self.pending = Some(Question {
                    conditions: node.conditions.clone(),
                    premise: a.clone(),
                    conclusion: closed,
                });
                self.status = Status::AwaitingAnswer;
                return;
            }
            match next_closure(a, n, &node.accepted) {
                Some(next) => node.premise = next,
                None => {
                    self.kc.merge(&self.fragment);
                    self.fragment = ImplicationConditionContext::new(
                        self.universe.attributes.clone(),
                        self.universe.conditions.clone(),
                    );
                    self.node = None;
                    self.node_index += 1;
                }
            }
        }
    }
}
