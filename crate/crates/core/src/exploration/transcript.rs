use serde::{Deserialize, Serialize};

use super::{Answer, Counterexample, Question, Universe};

/// One question and its answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRow {
    pub question: Question,
    pub answer: Answer,
    /// `"true"` for an acceptance, the counterexample name otherwise
    /// (`"expert:name"` in family mode).
    pub label: String,
}

impl TranscriptRow {
    pub fn new(u: &Universe, question: Question, answer: Answer) -> Self {
        let label = match &answer.counterexample {
            None => "true".to_owned(),
            Some(Counterexample::Object(row)) => row.name.clone(),
            Some(Counterexample::Expert { expert, name, .. }) => {
                format!("{}:{name}", u.conditions[*expert])
            }
        };
        TranscriptRow {
            question,
            answer,
            label,
        }
    }

    pub fn accepted(&self) -> bool {
        self.answer.counterexample.is_none()
    }
}

/// `conditions,premise,conclusion,holds_for,answer`; the conclusion lists
/// only attributes not in the premise, `∅` marks an empty set.
pub fn transcript_csv(u: &Universe, rows: &[TranscriptRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["conditions", "premise", "conclusion", "holds_for", "answer"])
        .expect("in-memory write");
    for r in rows {
        let q = &r.question;
        w.write_record([
            u.render_conditions(&q.conditions),
            u.render_attributes(&q.premise),
            u.render_attributes(&q.implication().added()),
            u.render_conditions(&r.answer.holds_for),
            r.label.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::ObjectRow;

    #[test]
    fn csv_layout() {
        let u = Universe {
            attributes: vec!["a".into(), "b".into()],
            conditions: vec!["d1".into(), "d2".into()],
        };
        let d = [0, 1].into_iter().collect();
        let q = Question {
            conditions: [0, 1].into(),
            premise: [].into(),
            conclusion: [0, 1].into(),
        };
        let ce = Counterexample::Object(ObjectRow::new("1", vec![[0].into(), [].into()]));
        let rows = vec![
            TranscriptRow::new(&u, q.clone(), Answer::reject([].into(), ce)),
            TranscriptRow::new(
                &u,
                Question {
                    premise: [1].into(),
                    ..q
                },
                Answer::accept(&d),
            ),
        ];
        assert_eq!(
            transcript_csv(&u, &rows),
            "conditions,premise,conclusion,holds_for,answer\n\"d1, d2\",∅,\"a, b\",∅,1\n\"d1, d2\",b,a,\"d1, d2\",true\n"
        );
    }
}
