//! Triadic attribute exploration.
//!
//! Formal and triadic contexts ([`context`]), implications and their closure
//! ([`implication`], [`closure`]), concept lattices and the lattice of
//! conditional implications ([`lattice`]), and the interactive exploration
//! protocol that acquires conditional implications from experts
//! ([`exploration`]).

pub mod closure;
pub mod context;
pub mod error;
pub mod exploration;
pub mod format;
pub mod implication;
pub mod lattice;

pub use closure::{canonical_base, closed_sets, lectic_cmp, next_closure, ClosureOperator};
pub use context::{
    full_set, row_closure, AttrSet, ConditionSet, ContextFamily, FormalContext, ObjectRow,
    ObjectSet, TriadicContext,
};
pub use error::{Error, Result};
pub use exploration::{
    explore_conditions, family_exploration, linear_extension, triadic_exploration, Answer,
    Counterexample, Examples, Expert, ExplorationOutcome, ExplorationSession, Mode, OracleExpert,
    Panel, Question, ScriptedExpert, SessionOptions, Status, TieOrder, Universe, Variant,
};
pub use implication::{
    conditional_holds, follows, implication_holds, l_closure, respects, ConditionalImplication,
    Implication, ImplicationSet,
};
pub use lattice::{
    build_lattice, concepts, conditional_implication_lattice, kc_lattice, label_nodes, Concept,
    ConceptLattice, ImplicationConditionContext, LabeledImplicationLattice,
};
