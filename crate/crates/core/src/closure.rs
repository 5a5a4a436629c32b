//! NextClosure and the (relative) canonical base.

use crate::context::{AttrSet, FormalContext};
use crate::error::{Error, Result};
use crate::implication::{Implication, ImplicationSet};

/// A closure operator on subsets of `{0, .., n-1}`.
pub trait ClosureOperator {
    fn close(&self, x: &AttrSet) -> AttrSet;
}

impl<F> ClosureOperator for F
where
    F: Fn(&AttrSet) -> AttrSet,
{
    fn close(&self, x: &AttrSet) -> AttrSet {
        self(x)
    }
}

impl ClosureOperator for ImplicationSet {
    fn close(&self, x: &AttrSet) -> AttrSet {
        self.closure(x)
    }
}

impl ClosureOperator for FormalContext {
    fn close(&self, x: &AttrSet) -> AttrSet {
        FormalContext::close(self, x)
    }
}

/// The lectically next `clo`-closed set after `a` over `{0, .., n-1}`, or
/// `None` when `a` is the last one.
///
/// Index order is the lectic order: the largest index is the least
/// significant position, so from `∅` the first candidate is `{n-1}`. `a`
/// itself need not be closed.
pub fn next_closure<C>(a: &AttrSet, n: usize, clo: &C) -> Option<AttrSet>
where
    C: ClosureOperator + ?Sized,
{
    let mut prefix = a.clone();
    for i in (0..n).rev() {
        if prefix.remove(&i) {
            continue;
        }
        prefix.insert(i);
        let candidate = clo.close(&prefix);
        prefix.remove(&i);
        // accept when nothing below i was added
        if candidate.range(..i).eq(prefix.range(..i)) {
            return Some(candidate);
        }
    }
    None
}

/// All `clo`-closed sets in lectic order, starting with `clo(∅)`.
pub fn closed_sets<C>(n: usize, clo: &C) -> impl Iterator<Item = AttrSet> + '_
where
    C: ClosureOperator + ?Sized,
{
    let mut next = Some(clo.close(&AttrSet::new()));
    std::iter::from_fn(move || {
        let current = next.take()?;
        next = next_closure(&current, n, clo);
        Some(current)
    })
}

/// Lectic comparison: `a < b` iff the smallest index in the symmetric
/// difference belongs to `b`.
pub fn lectic_cmp(a: &AttrSet, b: &AttrSet) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match a.symmetric_difference(b).next() {
        None => Ordering::Equal,
        Some(i) if b.contains(i) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// Canonical base of `ctx` relative to the background implications `l0`.
///
/// Walks the sets closed under `l0` and the implications emitted so far, in
/// lectic order; every such set that is not an intent of `ctx` is a relative
/// pseudo-intent and contributes `P ⇒ P''`.
pub fn canonical_base(ctx: &FormalContext, l0: &ImplicationSet) -> Result<ImplicationSet> {
    if let Some(bad) = l0.iter().find(|imp| !imp.holds_in(ctx)) {
        return Err(Error::PreconditionViolation(format!(
            "background implication {} does not hold in the context",
            bad.render(ctx.attributes())
        )));
    }
    let n = ctx.attributes().len();
    let mut working = l0.clone();
    let mut base = ImplicationSet::new();
    let mut a = working.closure(&AttrSet::new());
    loop {
        let closed = ctx.close(&a);
        if closed != a {
            let imp = Implication::new(a.clone(), closed);
            working.insert(imp.clone());
            base.insert(imp);
        }
        match next_closure(&a, n, &working) {
            Some(next) => a = next,
            None => return Ok(base),
        }
    }
}
