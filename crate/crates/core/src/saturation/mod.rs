//! Classical EL reasoning on ground ontologies.
//!
//! Queries `C ⊑ D` with complex sides are internalized: `C` receives a name
//! defined below it, `D` a name defined above it, and the query becomes a
//! subsumer lookup after one saturation.

mod index;
mod normal;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

pub use index::{saturate, SaturationIndex};
pub use normal::{normalize_ontology, Basic, NormalAxiom, NormalForm};

use crate::concept::{Axiom, Concept, ConceptBase, Ontology};
use crate::error::{Error, Result};
use crate::oracle::FiniteInterpretation;
pub(crate) use normal::require_ground;
use normal::Normalizer;

/// A saturated ground ontology prepared to answer subsumption queries
/// between registered concepts.
#[derive(Clone, Debug)]
pub struct GroundReasoner {
    index: SaturationIndex,
    subjects: BTreeMap<Concept, Basic>,
    subsumers: BTreeMap<Concept, Basic>,
}

impl GroundReasoner {
    /// `subjects` may appear on the left of later queries, `subsumers` on the right.
    pub fn new<'a>(
        kb: &Ontology,
        subjects: impl IntoIterator<Item = &'a Concept>,
        subsumers: impl IntoIterator<Item = &'a Concept>,
    ) -> Result<GroundReasoner> {
        let mut normalizer = Normalizer::default();
        for axiom in kb {
            normalizer.add_axiom(axiom)?;
        }
        let mut subject_names = BTreeMap::new();
        for c in subjects {
            require_ground(c)?;
            let name = normalizer.downward_name(c);
            subject_names.insert(c.clone(), name);
        }
        let mut subsumer_names = BTreeMap::new();
        for c in subsumers {
            require_ground(c)?;
            let name = normalizer.upward_name(c);
            subsumer_names.insert(c.clone(), name);
        }
        let nf = normalizer.finish();
        let extra = subject_names.values().chain(subsumer_names.values()).cloned();
        let mut index = saturate(&nf.axioms, extra.collect::<Vec<_>>());
        index.name_table = nf.definitions;
        Ok(GroundReasoner { index, subjects: subject_names, subsumers: subsumer_names })
    }

    /// `kb ⊨ sub ⊑ sup`; `None` when `sub` was not registered as a subject
    /// or a complex `sup` was not registered as a subsumer.
    pub fn entails(&self, sub: &Concept, sup: &Concept) -> Option<bool> {
        let sub = self.subjects.get(sub)?;
        let sup = match sup {
            Concept::Top => return Some(true),
            Concept::Atom(a) => Basic::Name(a.clone()),
            complex => self.subsumers.get(complex)?.clone(),
        };
        self.index.is_subsumed(sub, &sup)
    }

    pub fn index(&self) -> &SaturationIndex {
        &self.index
    }
}

/// `kb ⊨ goal` under classical semantics, for ground `kb` and `goal`.
pub fn entails_ground(kb: &Ontology, goal: &Axiom) -> Result<bool> {
    let reasoner = GroundReasoner::new(kb, [&goal.lhs], [&goal.rhs])?;
    Ok(reasoner.entails(&goal.lhs, &goal.rhs).expect("goal sides registered"))
}

/// Canonical interpretation of a ground ontology over a concept base: one
/// element `x_C` per `C ∈ H`, `x_C ∈ A` iff `kb ⊨ C ⊑ A`, and
/// `(x_C, x_D) ∈ r` iff `kb ⊨ C ⊑ ∃r.D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalInterpretation {
    pub interpretation: FiniteInterpretation,
    /// Defining concept of each domain element, by element index.
    pub elements: Vec<Concept>,
}

impl CanonicalInterpretation {
    pub fn element_of(&self, concept: &Concept) -> Option<usize> {
        self.elements.iter().position(|c| c == concept)
    }
}

pub fn canonical_interpretation(kb: &Ontology, base: &ConceptBase) -> Result<CanonicalInterpretation> {
    if base.is_empty() {
        return Err(Error::EmptyBase);
    }
    let mut sig = kb.signature();
    for c in base {
        c.collect_signature(&mut sig);
    }
    let mut probes: Vec<Concept> = sig.concepts.iter().map(|a| Concept::Atom(a.clone())).collect();
    for role in &sig.roles {
        for d in base {
            probes.push(Concept::exists(role.clone(), d.clone()));
        }
    }
    let reasoner = GroundReasoner::new(kb, base, &probes)?;

    let elements: Vec<Concept> = base.iter().cloned().collect();
    let domain = (0..elements.len()).map(|i| format!("x{i}"));
    let mut interpretation = FiniteInterpretation::new(domain)?;
    for (i, c) in elements.iter().enumerate() {
        for a in &sig.concepts {
            if reasoner.entails(c, &Concept::Atom(a.clone())) == Some(true) {
                interpretation.add_concept_member(a, i);
            }
        }
        for role in &sig.roles {
            for (j, d) in elements.iter().enumerate() {
                if reasoner.entails(c, &Concept::exists(role.clone(), d.clone())) == Some(true) {
                    interpretation.add_role_pair(role, i, j);
                }
            }
        }
    }
    Ok(CanonicalInterpretation { interpretation, elements })
}
