//! Line-oriented question/answer loop for a human expert.
//!
//! Each question is printed with its condition set. The expert first lists the
//! conditions (or experts) for which the implication holds: comma-separated
//! names, `all` or `none`. If that falls short of the question, a
//! counterexample follows. It has a name, then one attribute line per
//! condition (triadic), or the refuting expert and one attribute line (family).

use std::io::{self, BufRead, Write};

use crate::error::Error;

use super::session::{ExplorationSession, Status};
use super::validate::Rejection;
use super::wire::{AnswerWire, CounterexampleWire};
use super::{Mode, Universe};

/// How a terminal run ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TerminalOutcome {
    Finished,
    /// Input ended before the session finished.
    Interrupted,
    /// The expert contradicted earlier answers; the answer was refused.
    Inconsistent(Rejection),
}

fn split_names(line: &str) -> Vec<String> {
    line.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

struct Prompter<R, W> {
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> Prompter<R, W> {
    /// `None` on end of input.
    fn ask(&mut self, prompt: &str) -> io::Result<Option<String>> {
        write!(self.output, "{prompt}> ")?;
        self.output.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            writeln!(self.output)?;
            return Ok(None);
        }
        Ok(Some(line.trim().to_owned()))
    }

    fn read_answer(
        &mut self,
        u: &Universe,
        mode: Mode,
        asked: &[String],
    ) -> io::Result<Option<AnswerWire>> {
        let Some(line) = self.ask("holds for (names, all, none)")? else {
            return Ok(None);
        };
        let holds_for = match line.as_str() {
            "all" | "true" | "yes" => asked.to_vec(),
            "none" | "" => Vec::new(),
            _ => split_names(&line),
        };
        let mut answer = AnswerWire {
            seq: None,
            holds_for,
            counterexample: None,
        };
        if answer.holds_for.len() == asked.len()
            && asked.iter().all(|c| answer.holds_for.contains(c))
        {
            return Ok(Some(answer));
        }
        let Some(name) = self.ask("counterexample name")? else {
            return Ok(None);
        };
        let mut ce = CounterexampleWire {
            name,
            ..Default::default()
        };
        match mode {
            Mode::Triadic => {
                let mut table = Vec::new();
                for b in &u.conditions {
                    let Some(line) = self.ask(&format!("  attributes under {b}"))? else {
                        return Ok(None);
                    };
                    table.extend(split_names(&line).into_iter().map(|m| (m, b.clone())));
                }
                ce.table = Some(table);
            }
            Mode::Family => {
                let Some(expert) = self.ask("  expert")? else {
                    return Ok(None);
                };
                let Some(line) = self.ask("  attributes")? else {
                    return Ok(None);
                };
                ce.expert = Some(expert);
                ce.attributes = Some(split_names(&line));
            }
        }
        answer.counterexample = Some(ce);
        Ok(Some(answer))
    }
}

/// Runs the session against `input` until it finishes, input ends, or an
/// answer contradicts earlier ones. `after_answer` runs after every accepted
/// answer (typically to write a snapshot).
pub fn run_terminal<R, W, F>(
    session: &mut ExplorationSession,
    input: R,
    output: W,
    mut after_answer: F,
) -> io::Result<TerminalOutcome>
where
    R: BufRead,
    W: Write,
    F: FnMut(&ExplorationSession) -> io::Result<()>,
{
    let mut p = Prompter { input, output };
    loop {
        let Some(q) = session.pending().cloned() else {
            writeln!(
                p.output,
                "exploration finished after {} questions",
                session.seq()
            )?;
            return Ok(TerminalOutcome::Finished);
        };
        let u = session.universe().clone();
        let asked: Vec<String> = q
            .conditions
            .iter()
            .map(|&b| u.conditions[b].clone())
            .collect();
        writeln!(
            p.output,
            "\nquestion {} (condition set {}/{}): under {{{}}}\n  {}",
            session.seq() + 1,
            session.node_index() + 1,
            session.schedule().len(),
            asked.join(", "),
            q.implication().render(&u.attributes)
        )?;
        loop {
            let Some(wire) = p.read_answer(&u, session.mode(), &asked)? else {
                return Ok(TerminalOutcome::Interrupted);
            };
            let submitted = wire
                .resolve(&u, session.mode())
                .map_err(Error::Rejected)
                .and_then(|ans| session.submit(ans));
            match submitted {
                Ok(()) => {
                    after_answer(session)?;
                    break;
                }
                Err(Error::Rejected(r)) => writeln!(p.output, "rejected ({}): {r}", r.code())?,
                Err(Error::Inconsistent(r)) => {
                    debug_assert_eq!(session.status(), Status::Inconsistent);
                    writeln!(p.output, "inconsistent: {r}")?;
                    after_answer(session)?;
                    return Ok(TerminalOutcome::Inconsistent(r));
                }
                Err(other) => return Err(io::Error::other(other.to_string())),
            }
        }
    }
}
