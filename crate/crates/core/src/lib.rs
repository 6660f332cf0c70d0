//! Reasoning for EL extended with universally quantified concept variables.
//!
//! Axioms such as `X ⊑ ∃r.X` or `∃owns.(X ⊓ Pet) ⊑ ∃feeds.X` are read as
//! second-order statements: they must hold for every assignment of the
//! variable `X` to a subset of the domain. For the range-restricted,
//! lhs-linear, rhs-safe fragment ("gelo") this coincides with grounding the
//! variables over a finite expansion base of relevant EL concepts, so
//! entailment reduces to classical EL saturation. For the narrower "gelt"
//! fragment the base has a closed form and entailment is polynomial.
//!
//! The crate is `no_std` (it needs `alloc`). Concrete syntax, file formats
//! and the command-line front end live in the companion `elx` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod names;

pub mod concept;
pub mod entailment;
pub mod expansion;
pub mod fragments;
pub mod oracle;
pub mod saturation;
pub mod sugar;

pub use concept::{Axiom, Concept, ConceptBase, Ontology, Signature, Substitution};
pub use entailment::{check_schema, decide, generalize_goal, DecideOptions, EntailmentVerdict, Status};
pub use error::{Error, Result};
pub use expansion::{expansion_base, ExpansionTrace};
pub use fragments::{classify, FragmentReport, Violation, ViolationKind};
pub use names::{ConceptName, RoleName, VarName};
pub use oracle::{ElemSet, FiniteInterpretation, Valuation};
pub use saturation::{canonical_interpretation, entails_ground, CanonicalInterpretation};
pub use sugar::SugarAxiom;
