//! Answering questions: oracles over a known domain, scripted replays and
//! panels of independent experts.

use crate::context::{AttrSet, ConditionSet, ContextFamily, FormalContext, TriadicContext};
use crate::error::{Error, Result};
use crate::implication::Implication;

use super::transcript::TranscriptRow;
use super::{Answer, Counterexample, Question, Universe};

/// Anything that answers exploration questions.
pub trait Expert {
    fn answer(&mut self, universe: &Universe, question: &Question) -> Result<Answer>;
}

impl<F> Expert for F
where
    F: FnMut(&Universe, &Question) -> Result<Answer>,
{
    fn answer(&mut self, universe: &Universe, question: &Question) -> Result<Answer> {
        self(universe, question)
    }
}

/// Answers from a completely known domain: the implication holds exactly for
/// the conditions whose slice satisfies it; the counterexample is the first
/// violating object in domain order.
#[derive(Debug, Clone)]
pub struct OracleExpert {
    domain: Domain,
}

#[derive(Debug, Clone)]
enum Domain {
    Triadic(TriadicContext),
    Family(ContextFamily),
}

impl OracleExpert {
    pub fn triadic(t: TriadicContext) -> Self {
        OracleExpert {
            domain: Domain::Triadic(t),
        }
    }

    /// Each member answers for itself; the first refuting member supplies the
    /// counterexample.
    pub fn family(f: ContextFamily) -> Self {
        OracleExpert {
            domain: Domain::Family(f),
        }
    }

    fn check_universe(&self, u: &Universe) -> Result<()> {
        let (attrs, conds) = match &self.domain {
            Domain::Triadic(t) => (t.attributes().to_vec(), t.conditions().to_vec()),
            Domain::Family(f) => (f.attributes().to_vec(), f.member_ids()),
        };
        if attrs != u.attributes || conds != u.conditions {
            return Err(Error::invalid(
                "the oracle's domain does not match the session's attributes and conditions",
            ));
        }
        Ok(())
    }
}

fn first_violation<'a>(
    mut rows: impl Iterator<Item = (usize, &'a AttrSet)>,
    imp: &Implication,
) -> Option<usize> {
    rows.find(|(_, r)| !imp.is_respected_by(r)).map(|(g, _)| g)
}

impl Expert for OracleExpert {
    fn answer(&mut self, u: &Universe, q: &Question) -> Result<Answer> {
        self.check_universe(u)?;
        let imp = q.implication();
        match &self.domain {
            Domain::Triadic(t) => {
                let g_count = t.objects().len();
                let holds_under = |b: usize| (0..g_count).all(|g| imp.is_respected_by(t.row(g, b)));
                let holds_for: ConditionSet = q
                    .conditions
                    .iter()
                    .copied()
                    .filter(|&b| holds_under(b))
                    .collect();
                if holds_for == q.conditions {
                    return Ok(Answer::accept(&q.conditions));
                }
                let g = (0..g_count)
                    .find(|&g| {
                        q.conditions
                            .iter()
                            .any(|&b| !imp.is_respected_by(t.row(g, b)))
                    })
                    .expect("a failing condition has a violating object");
                Ok(Answer::reject(
                    holds_for,
                    Counterexample::Object(t.object_row(g)),
                ))
            }
            Domain::Family(f) => {
                let violation =
                    |e: usize| first_violation(f.member(e).rows().iter().enumerate(), &imp);
                let holds_for: ConditionSet = q
                    .conditions
                    .iter()
                    .copied()
                    .filter(|&e| violation(e).is_none())
                    .collect();
                let Some(e) = q
                    .conditions
                    .iter()
                    .copied()
                    .find(|e| !holds_for.contains(e))
                else {
                    return Ok(Answer::accept(&q.conditions));
                };
                let g = violation(e).expect("refuting member");
                let ctx = f.member(e);
                Ok(Answer::reject(
                    holds_for,
                    Counterexample::Expert {
                        expert: e,
                        name: ctx.objects()[g].clone(),
                        attributes: ctx.row(g).clone(),
                    },
                ))
            }
        }
    }
}

/// Replays recorded answers; any question that differs from the next
/// recorded one is a [`Error::TranscriptDivergence`].
#[derive(Debug, Clone)]
pub struct ScriptedExpert {
    rows: Vec<TranscriptRow>,
    position: usize,
}

impl ScriptedExpert {
    pub fn new(rows: Vec<TranscriptRow>) -> Self {
        ScriptedExpert { rows, position: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.rows.len() - self.position
    }
}

impl Expert for ScriptedExpert {
    fn answer(&mut self, u: &Universe, q: &Question) -> Result<Answer> {
        let Some(row) = self.rows.get(self.position) else {
            return Err(Error::TranscriptDivergence(format!(
                "script exhausted at question {}",
                q.render(u)
            )));
        };
        if &row.question != q {
            return Err(Error::TranscriptDivergence(format!(
                "expected question {}, got {}",
                row.question.render(u),
                q.render(u)
            )));
        }
        self.position += 1;
        Ok(row.answer.clone())
    }
}

/// A single expert of a panel: judges an implication in its own view and
/// offers a counterexample `(name, attributes)` when it disagrees.
pub trait MemberExpert {
    fn judge(
        &mut self,
        attributes: &[String],
        implication: &Implication,
    ) -> Result<Option<(String, AttrSet)>>;
}

/// A formal context acts as an oracle for its own view.
impl MemberExpert for FormalContext {
    fn judge(
        &mut self,
        attributes: &[String],
        imp: &Implication,
    ) -> Result<Option<(String, AttrSet)>> {
        if self.attributes() != attributes {
            return Err(Error::invalid(
                "member context has a different attribute list",
            ));
        }
        Ok(first_violation(self.rows().iter().enumerate(), imp)
            .map(|g| (self.objects()[g].clone(), self.row(g).clone())))
    }
}

/// Experts addressed by position (the family's member order). Every expert
/// of `D` judges the question; a single consolidated answer goes back with
/// the counterexample of the first dissenting expert.
#[derive(Default)]
pub struct Panel {
    members: Vec<Box<dyn MemberExpert>>,
}

impl Panel {
    pub fn new() -> Self {
        Panel::default()
    }

    pub fn with(mut self, member: impl MemberExpert + 'static) -> Self {
        self.members.push(Box::new(member));
        self
    }

    /// One oracle member per family member.
    pub fn oracles(f: &ContextFamily) -> Self {
        f.members()
            .fold(Panel::new(), |p, (_, ctx)| p.with(ctx.clone()))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Expert for Panel {
    fn answer(&mut self, u: &Universe, q: &Question) -> Result<Answer> {
        if self.members.len() != u.conditions.len() {
            return Err(Error::invalid(format!(
                "panel has {} experts, the session {}",
                self.members.len(),
                u.conditions.len()
            )));
        }
        let imp = q.implication();
        let mut holds_for = ConditionSet::new();
        let mut first = None;
        for &e in &q.conditions {
            match self.members[e].judge(&u.attributes, &imp)? {
                None => {
                    holds_for.insert(e);
                }
                Some((name, attributes)) => {
                    first.get_or_insert(Counterexample::Expert {
                        expert: e,
                        name,
                        attributes,
                    });
                }
            }
        }
        Ok(match first {
            None => Answer::accept(&q.conditions),
            Some(ce) => Answer::reject(holds_for, ce),
        })
    }
}
