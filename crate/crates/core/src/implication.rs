//! Attribute implications, their semantics and entailment.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::{row_closure, AttrSet, ConditionSet, FormalContext, TriadicContext};

/// `premise ⇒ conclusion` over an attribute list fixed by the caller.
///
/// Equality compares the full sets, so `b ⇒ ab` and `b ⇒ a` are distinct
/// values even though they render identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Implication {
    pub premise: AttrSet,
    pub conclusion: AttrSet,
}

impl Implication {
    pub fn new(premise: AttrSet, conclusion: AttrSet) -> Self {
        Implication {
            premise,
            conclusion,
        }
    }

    /// `true` iff `t` is a model: the premise is not contained or the
    /// conclusion is.
    pub fn is_respected_by(&self, t: &AttrSet) -> bool {
        !self.premise.is_subset(t) || self.conclusion.is_subset(t)
    }

    /// Every object row of `ctx` respects the implication.
    pub fn holds_in(&self, ctx: &FormalContext) -> bool {
        ctx.rows().iter().all(|r| self.is_respected_by(r))
    }

    /// The conclusion without the premise attributes.
    pub fn added(&self) -> AttrSet {
        self.conclusion.difference(&self.premise).copied().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.conclusion.is_subset(&self.premise)
    }

    /// `"p1, p2 ⟹ c1, c2"` with the premise attributes dropped from the
    /// conclusion and `∅` for an empty side.
    pub fn render(&self, attributes: &[String]) -> String {
        format!(
            "{} ⟹ {}",
            render_set(&self.premise, attributes),
            render_set(&self.added(), attributes)
        )
    }
}

/// Comma-separated names in index order, `∅` when empty.
pub fn render_set(set: &AttrSet, names: &[String]) -> String {
    if set.is_empty() {
        return "∅".to_owned();
    }
    set.iter()
        .map(|&i| names.get(i).map(String::as_str).unwrap_or("?"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &AttrSet| {
            if s.is_empty() {
                "∅".to_owned()
            } else {
                s.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        write!(f, "{} ⟹ {}", side(&self.premise), side(&self.conclusion))
    }
}

pub fn respects(t: &AttrSet, imp: &Implication) -> bool {
    imp.is_respected_by(t)
}

/// `conclusion ⊆ premise''` in `ctx`.
pub fn implication_holds(ctx: &FormalContext, imp: &Implication) -> bool {
    imp.conclusion.is_subset(&row_closure(
        ctx.rows(),
        &imp.premise,
        ctx.attributes().len(),
    ))
}

/// An ordered list of distinct implications.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ImplicationSet(Vec<Implication>);

impl ImplicationSet {
    pub fn new() -> Self {
        ImplicationSet(Vec::new())
    }

    /// Appends `imp` unless already present; returns whether it was added.
    pub fn insert(&mut self, imp: Implication) -> bool {
        if self.0.contains(&imp) {
            return false;
        }
        self.0.push(imp);
        true
    }

    pub fn contains(&self, imp: &Implication) -> bool {
        self.0.contains(imp)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implication> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Implication] {
        &self.0
    }

    /// The smallest superset of `x` respecting every member.
    pub fn closure(&self, x: &AttrSet) -> AttrSet {
        l_closure(self.0.iter(), x)
    }

    /// `imp` is entailed: every model of the set is a model of `imp`.
    pub fn entails(&self, imp: &Implication) -> bool {
        imp.conclusion.is_subset(&self.closure(&imp.premise))
    }

    /// Members not contained in `other`, in order.
    pub fn difference(&self, other: &ImplicationSet) -> ImplicationSet {
        ImplicationSet(
            self.0
                .iter()
                .filter(|i| !other.contains(i))
                .cloned()
                .collect(),
        )
    }

    /// Copy without the member at `index`.
    pub fn without(&self, index: usize) -> ImplicationSet {
        let mut v = self.0.clone();
        v.remove(index);
        ImplicationSet(v)
    }
}

impl FromIterator<Implication> for ImplicationSet {
    fn from_iter<T: IntoIterator<Item = Implication>>(iter: T) -> Self {
        let mut set = ImplicationSet::new();
        for imp in iter {
            set.insert(imp);
        }
        set
    }
}

impl Extend<Implication> for ImplicationSet {
    fn extend<T: IntoIterator<Item = Implication>>(&mut self, iter: T) {
        for imp in iter {
            self.insert(imp);
        }
    }
}

impl<'a> IntoIterator for &'a ImplicationSet {
    type Item = &'a Implication;
    type IntoIter = std::slice::Iter<'a, Implication>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for ImplicationSet {
    type Item = Implication;
    type IntoIter = std::vec::IntoIter<Implication>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Closure of `x` under `implications`: fire every implication whose premise
/// is contained until nothing changes.
pub fn l_closure<'a, I>(implications: I, x: &AttrSet) -> AttrSet
where
    I: IntoIterator<Item = &'a Implication>,
    I::IntoIter: Clone,
{
    let implications = implications.into_iter();
    let mut out = x.clone();
    loop {
        let before = out.len();
        for imp in implications.clone() {
            if imp.premise.is_subset(&out) {
                out.extend(imp.conclusion.iter().copied());
            }
        }
        if out.len() == before {
            return out;
        }
    }
}

pub fn follows(imp: &Implication, l: &ImplicationSet) -> bool {
    l.entails(imp)
}

/// `R ⇒_C S`: the implication holds in every condition context of `C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConditionalImplication {
    pub implication: Implication,
    pub conditions: ConditionSet,
}

impl ConditionalImplication {
    pub fn new(implication: Implication, conditions: ConditionSet) -> Self {
        ConditionalImplication {
            implication,
            conditions,
        }
    }

    /// `"p ⟹ c @ {b1, b2}"`.
    pub fn render(&self, attributes: &[String], conditions: &[String]) -> String {
        let conds: Vec<&str> = self
            .conditions
            .iter()
            .map(|&b| conditions[b].as_str())
            .collect();
        format!(
            "{} @ {{{}}}",
            self.implication.render(attributes),
            conds.join(", ")
        )
    }
}

/// Validity of a conditional implication; vacuously true for `C = ∅`.
pub fn conditional_holds(t: &TriadicContext, cimp: &ConditionalImplication) -> bool {
    let imp = &cimp.implication;
    cimp.conditions
        .iter()
        .all(|&b| (0..t.objects().len()).all(|g| imp.is_respected_by(t.row(g, b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> AttrSet {
        v.iter().copied().collect()
    }

    fn imp(p: &[usize], c: &[usize]) -> Implication {
        Implication::new(s(p), s(c))
    }

    const A: usize = 0;
    const B: usize = 1;

    #[test]
    fn respects_examples() {
        assert!(respects(&s(&[A]), &imp(&[B], &[A])));
        assert!(!respects(&s(&[A]), &imp(&[], &[A, B])));
        assert!(respects(&s(&[A, B]), &imp(&[A], &[B])));
    }

    #[test]
    fn holds_on_t1_slices() {
        let t = TriadicContext::from_names(&["1"], &["a", "b"], &["d1", "d2"], &[("1", "a", "d1")])
            .unwrap();
        let (d1, d2) = (t.slice(0).unwrap(), t.slice(1).unwrap());
        assert!(implication_holds(&d1, &imp(&[], &[A])));
        assert!(!implication_holds(&d2, &imp(&[], &[A])));
        assert!(!implication_holds(&d1, &imp(&[A], &[B])));
        assert!(implication_holds(&d2, &imp(&[A], &[B])));
        assert!(implication_holds(&d1, &imp(&[A, B], &[A, B])));
        assert_eq!(
            imp(&[A], &[B]).holds_in(&d2),
            implication_holds(&d2, &imp(&[A], &[B]))
        );
    }

    #[test]
    fn closure_examples() {
        let l: ImplicationSet = [imp(&[B], &[A, B])].into_iter().collect();
        assert_eq!(l.closure(&s(&[B])), s(&[A, B]));
        assert_eq!(ImplicationSet::new().closure(&s(&[B])), s(&[B]));
        let l: ImplicationSet = [imp(&[B], &[A])].into_iter().collect();
        assert_eq!(l.closure(&s(&[A])), s(&[A]));
    }

    #[test]
    fn chained_closure() {
        let l: ImplicationSet = [imp(&[1], &[2]), imp(&[0], &[1]), imp(&[2, 0], &[3])]
            .into_iter()
            .collect();
        assert_eq!(l.closure(&s(&[0])), s(&[0, 1, 2, 3]));
    }

    #[test]
    fn follows_examples() {
        let l: ImplicationSet = [imp(&[], &[A])].into_iter().collect();
        assert!(follows(&imp(&[B], &[A]), &l));
        let l: ImplicationSet = [imp(&[B], &[A])].into_iter().collect();
        assert!(!follows(&imp(&[], &[A]), &l));
        let i = imp(&[A], &[B]);
        assert!(follows(&i, &[i.clone()].into_iter().collect()));
    }

    #[test]
    fn set_rejects_duplicates() {
        let mut l = ImplicationSet::new();
        assert!(l.insert(imp(&[B], &[A, B])));
        assert!(!l.insert(imp(&[B], &[A, B])));
        assert!(l.insert(imp(&[B], &[A])));
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn rendering() {
        let attrs = vec!["a".to_owned(), "b".to_owned()];
        assert_eq!(imp(&[], &[A, B]).render(&attrs), "∅ ⟹ a, b");
        assert_eq!(imp(&[B], &[A, B]).render(&attrs), "b ⟹ a");
        let conds = vec!["d1".to_owned(), "d2".to_owned()];
        let c = ConditionalImplication::new(imp(&[A], &[A, B]), s(&[1]));
        assert_eq!(c.render(&attrs, &conds), "a ⟹ b @ {d2}");
    }

    #[test]
    fn conditional_validity_on_t1() {
        let t = TriadicContext::from_names(&["1"], &["a", "b"], &["d1", "d2"], &[("1", "a", "d1")])
            .unwrap();
        let c =
            |p: &[usize], q: &[usize], d: &[usize]| ConditionalImplication::new(imp(p, q), s(d));
        assert!(conditional_holds(&t, &c(&[], &[A], &[0])));
        assert!(!conditional_holds(&t, &c(&[], &[A], &[0, 1])));
        assert!(conditional_holds(&t, &c(&[], &[A, B], &[])));
    }
}
