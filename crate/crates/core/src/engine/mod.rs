//! Membership deduction over the lattice of concordance filtrations.

pub mod kb;
pub mod lattice;

pub use kb::{
    lt_sample_points, Certificate, Deduction, Entry, External, Fact, Justification, KnowledgeBase, Obstruction,
    Polarity, TraceStep, Verdict, DEFAULT_BOUND,
};
pub use lattice::{axioms, Edge, Family, Lattice, Node, Predicate};
