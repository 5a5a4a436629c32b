//! Concept lattices and the lattice of conditional implications.

use serde::{Deserialize, Serialize};

use crate::closure::{closed_sets, lectic_cmp};
use crate::context::{AttrSet, ConditionSet, FormalContext, ObjectSet, TriadicContext};
use crate::exploration::{self, OracleExpert, SessionOptions};
use crate::implication::{Implication, ImplicationSet};

/// A formal concept `(extent, intent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttrSet,
}

/// All concepts of `ctx`, intents in lectic order.
pub fn concepts(ctx: &FormalContext) -> Vec<Concept> {
    closed_sets(ctx.attributes().len(), ctx)
        .map(|intent| Concept {
            extent: ctx.extent_of(&intent),
            intent,
        })
        .collect()
}

/// Concepts ordered by extent inclusion, with the covering pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptLattice {
    pub concepts: Vec<Concept>,
    /// `(lower, upper)` index pairs of the covering relation.
    pub covers: Vec<(usize, usize)>,
    pub top: usize,
    pub bottom: usize,
}

impl ConceptLattice {
    /// Indices of the concepts strictly below `i`.
    pub fn strictly_below(&self, i: usize) -> Vec<usize> {
        let ext = &self.concepts[i].extent;
        (0..self.concepts.len())
            .filter(|&j| j != i && self.concepts[j].extent.is_subset(ext))
            .collect()
    }
}

/// Orders the concepts by intent size (largest first, then lectically) and
/// computes the covering relation. Expects the concepts of one context.
pub fn build_lattice(mut concepts: Vec<Concept>) -> ConceptLattice {
    assert!(
        !concepts.is_empty(),
        "a concept lattice has at least one concept"
    );
    concepts.sort_by(|a, b| {
        b.intent
            .len()
            .cmp(&a.intent.len())
            .then_with(|| lectic_cmp(&a.intent, &b.intent))
    });
    let below = |i: usize, j: usize| i != j && concepts[i].extent.is_subset(&concepts[j].extent);
    let n = concepts.len();
    let mut covers = Vec::new();
    for lo in 0..n {
        for hi in 0..n {
            if below(lo, hi) && !(0..n).any(|mid| below(lo, mid) && below(mid, hi)) {
                covers.push((lo, hi));
            }
        }
    }
    let bottom = (0..n)
        .min_by_key(|&i| concepts[i].extent.len())
        .expect("nonempty");
    let top = (0..n)
        .max_by_key(|&i| concepts[i].extent.len())
        .expect("nonempty");
    ConceptLattice {
        concepts,
        covers,
        top,
        bottom,
    }
}

/// One asked implication and the conditions it was asserted to hold for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KcEntry {
    pub implication: Implication,
    pub holds_for: ConditionSet,
}

/// The context of conditional implications: asked implications as objects,
/// conditions (or experts) as attributes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationConditionContext {
    attributes: Vec<String>,
    conditions: Vec<String>,
    entries: Vec<KcEntry>,
}

impl ImplicationConditionContext {
    pub fn new(attributes: Vec<String>, conditions: Vec<String>) -> Self {
        ImplicationConditionContext {
            attributes,
            conditions,
            entries: Vec::new(),
        }
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn conditions(&self) -> &[String] {
        &self.conditions
    }

    pub fn entries(&self) -> &[KcEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn holds_for(&self, imp: &Implication) -> Option<&ConditionSet> {
        self.entries
            .iter()
            .find(|e| &e.implication == imp)
            .map(|e| &e.holds_for)
    }

    /// Adds `imp` as an object (if new) and marks it for `conditions`.
    pub fn record(&mut self, imp: &Implication, conditions: &ConditionSet) {
        match self.entries.iter_mut().find(|e| &e.implication == imp) {
            Some(e) => e.holds_for.extend(conditions.iter().copied()),
            None => self.entries.push(KcEntry {
                implication: imp.clone(),
                holds_for: conditions.clone(),
            }),
        }
    }

    /// Object-wise union of incidences.
    pub fn merge(&mut self, other: &ImplicationConditionContext) {
        for e in &other.entries {
            self.record(&e.implication, &e.holds_for);
        }
    }

    /// `D'`: the implications marked for every condition in `d`.
    pub fn implications_for(&self, d: &ConditionSet) -> ImplicationSet {
        self.entries
            .iter()
            .filter(|e| d.is_subset(&e.holds_for))
            .map(|e| e.implication.clone())
            .collect()
    }

    /// Rendering used as the object identifier of `imp`.
    pub fn object_name(&self, imp: &Implication) -> String {
        imp.render(&self.attributes)
    }

    /// The context as a plain formal context. Objects carry their rendering;
    /// a repeated rendering gets a `#k` suffix.
    pub fn to_formal_context(&self) -> FormalContext {
        let mut names: Vec<String> = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let base = self.object_name(&e.implication);
            let mut name = base.clone();
            let mut k = 2;
            while names.contains(&name) {
                name = format!("{base} #{k}");
                k += 1;
            }
            names.push(name);
        }
        let rows = self.entries.iter().map(|e| e.holds_for.clone()).collect();
        FormalContext::from_rows(names, self.conditions.clone(), rows)
            .expect("kc entries reference known conditions")
    }
}

/// A node of the labeled lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledNode {
    pub id: usize,
    pub intent: ConditionSet,
    pub extent: Vec<Implication>,
    /// Extent members not entailed by the extents of the nodes below.
    pub label: Vec<Implication>,
    /// The top node with empty intent; it stands for every implication.
    pub universe: bool,
}

/// The concept lattice of a [`ImplicationConditionContext`] with reduced
/// implication labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledImplicationLattice {
    pub attributes: Vec<String>,
    pub conditions: Vec<String>,
    pub nodes: Vec<LabeledNode>,
    pub edges: Vec<(usize, usize)>,
    pub top: usize,
    pub bottom: usize,
}

/// Lattice of `kc`.
pub fn kc_lattice(kc: &ImplicationConditionContext) -> ConceptLattice {
    build_lattice(concepts(&kc.to_formal_context()))
}

/// Labels every node of `lattice` (built from `kc`) with the implications of
/// its extent that do not follow from everything strictly below it.
pub fn label_nodes(
    kc: &ImplicationConditionContext,
    lattice: &ConceptLattice,
) -> LabeledImplicationLattice {
    let imp_of = |g: &usize| kc.entries[*g].implication.clone();
    let nodes = lattice
        .concepts
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let extent: Vec<Implication> = c.extent.iter().map(imp_of).collect();
            let universe = i == lattice.top && c.intent.is_empty();
            let label = if universe {
                Vec::new()
            } else {
                let below: ImplicationSet = lattice
                    .strictly_below(i)
                    .into_iter()
                    .flat_map(|j| lattice.concepts[j].extent.iter().map(imp_of))
                    .collect();
                extent
                    .iter()
                    .filter(|imp| !below.entails(imp))
                    .cloned()
                    .collect()
            };
            LabeledNode {
                id: i,
                intent: c.intent.clone(),
                extent,
                label,
                universe,
            }
        })
        .collect();
    LabeledImplicationLattice {
        attributes: kc.attributes.clone(),
        conditions: kc.conditions.clone(),
        nodes,
        edges: lattice.covers.clone(),
        top: lattice.top,
        bottom: lattice.bottom,
    }
}

/// Runs a complete oracle exploration of `t` and labels the resulting
/// context of conditional implications.
pub fn conditional_implication_lattice(t: &TriadicContext) -> LabeledImplicationLattice {
    let outcome = exploration::triadic_exploration(
        TriadicContext::empty(t.attributes().to_vec(), t.conditions().to_vec())
            .expect("identifiers of a valid context"),
        None,
        &mut OracleExpert::triadic(t.clone()),
        SessionOptions::default().allow_large_schedule(true),
    )
    .expect("oracle answers are always valid");
    let lattice = kc_lattice(&outcome.kc);
    label_nodes(&outcome.kc, &lattice)
}

#[derive(Serialize)]
struct NodeJson<'a> {
    id: usize,
    intent: Vec<&'a str>,
    extent: Vec<String>,
    label: Vec<String>,
    universe: bool,
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    nodes: Vec<NodeJson<'a>>,
    edges: &'a [(usize, usize)],
}

impl LabeledImplicationLattice {
    pub fn node(&self, intent: &ConditionSet) -> Option<&LabeledNode> {
        self.nodes.iter().find(|n| &n.intent == intent)
    }

    pub fn condition_names(&self, set: &ConditionSet) -> Vec<&str> {
        set.iter().map(|&b| self.conditions[b].as_str()).collect()
    }

    pub fn render(&self, imps: &[Implication]) -> Vec<String> {
        imps.iter().map(|i| i.render(&self.attributes)).collect()
    }

    /// `{"nodes":[{"id","intent","extent","label","universe"}],"edges":[[lower,upper]]}`
    pub fn to_json(&self) -> String {
        let doc = LatticeJson {
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeJson {
                    id: n.id,
                    intent: self.condition_names(&n.intent),
                    extent: self.render(&n.extent),
                    label: self.render(&n.label),
                    universe: n.universe,
                })
                .collect(),
            edges: &self.edges,
        };
        serde_json::to_string_pretty(&doc).expect("lattice serializes")
    }

    /// Graphviz rendering, bottom to top.
    pub fn to_dot(&self) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = String::from(
            "digraph conditional_implications {\n  rankdir=BT;\n  node [shape=box];\n",
        );
        for n in &self.nodes {
            let mut lines = vec![if n.intent.is_empty() {
                "∅".to_owned()
            } else {
                self.condition_names(&n.intent).join(", ")
            }];
            if n.universe {
                lines.push("all implications".to_owned());
            } else {
                lines.extend(self.render(&n.label));
            }
            let label: Vec<String> = lines.iter().map(|l| esc(l)).collect();
            out.push_str(&format!("  n{} [label=\"{}\"];\n", n.id, label.join("\\n")));
        }
        for (lo, hi) in &self.edges {
            out.push_str(&format!("  n{lo} -> n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }
}
