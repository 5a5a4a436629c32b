//! Running a session to completion against an [`Expert`].

use crate::context::{ConditionSet, ContextFamily, TriadicContext};
use crate::error::Result;
use crate::implication::ImplicationSet;
use crate::lattice::ImplicationConditionContext;

use super::session::{ExplorationSession, SessionOptions};
use super::transcript::{transcript_csv, TranscriptRow};
use super::{Examples, Expert, Universe, Variant};

/// Result of a complete exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationOutcome {
    pub universe: Universe,
    pub examples: Examples,
    pub kc: ImplicationConditionContext,
    pub transcript: Vec<TranscriptRow>,
}

impl ExplorationOutcome {
    fn from_session(s: ExplorationSession) -> Self {
        ExplorationOutcome {
            universe: s.universe().clone(),
            examples: s.examples().clone(),
            kc: s.kc().clone(),
            transcript: s.transcript().to_vec(),
        }
    }

    pub fn question_count(&self) -> usize {
        self.transcript.len()
    }

    pub fn transcript_csv(&self) -> String {
        transcript_csv(&self.universe, &self.transcript)
    }
}

/// Answers pending questions until the session finishes.
pub fn run_session<E: Expert + ?Sized>(
    session: &mut ExplorationSession,
    expert: &mut E,
) -> Result<()> {
    while let Some(q) = session.pending().cloned() {
        let answer = expert.answer(session.universe(), &q)?;
        session.submit(answer)?;
    }
    Ok(())
}

/// Explores every scheduled condition set, starting from `examples` and an
/// optional prior context of conditional implications.
pub fn triadic_exploration<E: Expert + ?Sized>(
    examples: TriadicContext,
    kc: Option<ImplicationConditionContext>,
    expert: &mut E,
    options: SessionOptions,
) -> Result<ExplorationOutcome> {
    let mut s = ExplorationSession::new(Examples::Triadic(examples), kc, options)?;
    run_session(&mut s, expert)?;
    Ok(ExplorationOutcome::from_session(s))
}

/// The multi-expert variant: condition sets are sets of experts and each
/// counterexample extends only the context of the expert who gave it.
pub fn family_exploration<E: Expert + ?Sized>(
    examples: ContextFamily,
    kc: Option<ImplicationConditionContext>,
    experts: &mut E,
    options: SessionOptions,
) -> Result<ExplorationOutcome> {
    let mut s = ExplorationSession::new(Examples::Family(examples), kc, options)?;
    run_session(&mut s, experts)?;
    Ok(ExplorationOutcome::from_session(s))
}

/// Result of exploring a single condition set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionsOutcome {
    /// Implications accepted for all of `D`, without the background.
    pub implications: ImplicationSet,
    pub examples: Examples,
    pub fragment: ImplicationConditionContext,
    pub transcript: Vec<TranscriptRow>,
}

/// Attribute exploration of the subposition under `d`, relative to the
/// background implications `l0`.
pub fn explore_conditions<E: Expert + ?Sized>(
    d: &ConditionSet,
    examples: Examples,
    l0: &ImplicationSet,
    expert: &mut E,
    variant: Variant,
) -> Result<ConditionsOutcome> {
    let options = SessionOptions::default()
        .variant(variant)
        .background(l0.clone());
    let mut s = ExplorationSession::with_schedule(examples, None, vec![d.clone()], options)?;
    run_session(&mut s, expert)?;
    let fragment = s.kc().clone();
    let implications = fragment
        .entries()
        .iter()
        .filter(|e| &e.holds_for == d && !l0.contains(&e.implication))
        .map(|e| e.implication.clone())
        .collect();
    Ok(ConditionsOutcome {
        implications,
        examples: s.examples().clone(),
        fragment,
        transcript: s.transcript().to_vec(),
    })
}

/// Visits condition sets in the order of the extents of the growing context
/// of conditional implications instead of a fixed schedule. Starts with all
/// conditions, then repeatedly takes the lectically next extent `X` of the
/// current context and explores `X'`, stopping at the first empty or
/// missing one.
///
/// Kept for comparison only: condition sets whose implications never made it
/// into the context are never reached, so the result can be incomplete.
pub fn next_extent_exploration<E: Expert + ?Sized>(
    examples: TriadicContext,
    expert: &mut E,
    options: SessionOptions,
) -> Result<ExplorationOutcome> {
    let all: ConditionSet = (0..examples.conditions().len()).collect();
    let mut s = ExplorationSession::with_schedule(
        Examples::Triadic(examples),
        None,
        vec![all.clone()],
        options.clone(),
    )?;
    run_session(&mut s, expert)?;
    let mut transcript = s.transcript().to_vec();
    let mut visited = vec![all];
    let mut extent = crate::context::ObjectSet::new();
    loop {
        let ctx = s.kc().to_formal_context();
        let objects = ctx.objects().len();
        let close = |x: &crate::context::ObjectSet| ctx.extent_of(&ctx.intent_of(x));
        let Some(next) = crate::closure::next_closure(&extent, objects, &close) else {
            break;
        };
        let d = ctx.intent_of(&next);
        if d.is_empty() {
            break;
        }
        extent = next;
        if visited.contains(&d) {
            continue;
        }
        visited.push(d.clone());
        s = ExplorationSession::with_schedule(
            s.examples().clone(),
            Some(s.kc().clone()),
            vec![d],
            options.clone(),
        )?;
        run_session(&mut s, expert)?;
        transcript.extend_from_slice(s.transcript());
    }
    let mut out = ExplorationOutcome::from_session(s);
    out.transcript = transcript;
    Ok(out)
}
