//! The order in which condition sets are explored.

use serde::{Deserialize, Serialize};

use crate::context::ConditionSet;

/// How condition sets of equal size are ordered.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieOrder {
    /// By ascending index tuple: `{0,1}, {0,2}, {1,2}`.
    #[default]
    Lexicographic,
    /// The reverse of the above within each size class: `{1,2}, {0,2}, {0,1}`.
    ReverseLexicographic,
}

impl std::str::FromStr for TieOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lexicographic" | "lex" => Ok(TieOrder::Lexicographic),
            "reverse-lexicographic" | "revlex" => Ok(TieOrder::ReverseLexicographic),
            other => Err(format!(
                "unknown order {other:?} (expected lexicographic or reverse-lexicographic)"
            )),
        }
    }
}

/// All nonempty subsets of `{0, .., n-1}`, largest first — a linear
/// extension of the subsets ordered by reverse inclusion.
pub fn linear_extension(n: usize, order: TieOrder) -> Vec<ConditionSet> {
    assert!(
        n < usize::BITS as usize,
        "too many conditions for a schedule"
    );
    let mut out = Vec::with_capacity((1usize << n).saturating_sub(1));
    for k in (1..=n).rev() {
        let mut class = Vec::new();
        combinations(n, k, 0, &mut Vec::new(), &mut class);
        if order == TieOrder::ReverseLexicographic {
            class.reverse();
        }
        out.extend(class);
    }
    out
}

fn combinations(
    n: usize,
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<ConditionSet>,
) {
    if cur.len() == k {
        out.push(cur.iter().copied().collect());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// The schedule restricted to subsets of `within`.
pub fn restricted(schedule: Vec<ConditionSet>, within: &ConditionSet) -> Vec<ConditionSet> {
    schedule
        .into_iter()
        .filter(|d| d.is_subset(within))
        .collect()
}
