//! Structural transformation of ground ontologies into EL normal form.
//!
//! Complex subconcepts get a generated name `#def:<printed concept>`. A name
//! used where its concept occurs negatively is defined upward (`C ⊑ N`), one
//! used positively is defined downward (`N ⊑ C`); a concept occurring both
//! ways gets both directions under the same name. The definitions only
//! mention fresh names, so entailments over the original signature are
//! preserved.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::concept::{Axiom, Concept, Ontology};
use crate::error::{Error, Result};
use crate::names::{ConceptName, RoleName};

/// Operand of a normal axiom: a concept name or Top.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Basic {
    Top,
    Name(ConceptName),
}

impl Basic {
    pub fn as_concept(&self) -> Concept {
        match self {
            Basic::Top => Concept::Top,
            Basic::Name(n) => Concept::Atom(n.clone()),
        }
    }

    fn of(concept: &Concept) -> Option<Basic> {
        match concept {
            Concept::Top => Some(Basic::Top),
            Concept::Atom(n) => Some(Basic::Name(n.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for Basic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basic::Top => f.write_str("Top"),
            Basic::Name(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NormalAxiom {
    /// `A ⊑ B`
    Subsumption(Basic, Basic),
    /// `A₁ ⊓ A₂ ⊑ B`
    Conjunction(Basic, Basic, Basic),
    /// `A ⊑ ∃r.B`
    Existential(Basic, RoleName, Basic),
    /// `∃r.A ⊑ B`
    Restriction(RoleName, Basic, Basic),
}

impl NormalAxiom {
    pub fn to_axiom(&self) -> Axiom {
        match self {
            NormalAxiom::Subsumption(a, b) => Axiom::new(a.as_concept(), b.as_concept()),
            NormalAxiom::Conjunction(a1, a2, b) => {
                Axiom::new(Concept::and([a1.as_concept(), a2.as_concept()]), b.as_concept())
            }
            NormalAxiom::Existential(a, r, b) => Axiom::new(a.as_concept(), Concept::exists(r.clone(), b.as_concept())),
            NormalAxiom::Restriction(r, a, b) => Axiom::new(Concept::exists(r.clone(), a.as_concept()), b.as_concept()),
        }
    }
}

impl fmt::Display for NormalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalAxiom::Subsumption(a, b) => write!(f, "{a} SubClassOf {b}"),
            NormalAxiom::Conjunction(a1, a2, b) => write!(f, "{a1} and {a2} SubClassOf {b}"),
            NormalAxiom::Existential(a, r, b) => write!(f, "{a} SubClassOf exists {r}.{b}"),
            NormalAxiom::Restriction(r, a, b) => write!(f, "exists {r}.{a} SubClassOf {b}"),
        }
    }
}

/// Output of [`normalize_ontology`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    pub axioms: BTreeSet<NormalAxiom>,
    /// Generated name → the complex concept it stands for.
    pub definitions: BTreeMap<ConceptName, Concept>,
}

impl NormalForm {
    /// Every operand mentioned by the normal axioms.
    pub fn basics(&self) -> BTreeSet<Basic> {
        let mut out = BTreeSet::new();
        for axiom in &self.axioms {
            match axiom {
                NormalAxiom::Subsumption(a, b) => out.extend([a.clone(), b.clone()]),
                NormalAxiom::Conjunction(a1, a2, b) => out.extend([a1.clone(), a2.clone(), b.clone()]),
                NormalAxiom::Existential(a, _, b) | NormalAxiom::Restriction(_, a, b) => {
                    out.extend([a.clone(), b.clone()])
                }
            }
        }
        out
    }
}

pub fn normalize_ontology(kb: &Ontology) -> Result<NormalForm> {
    let mut normalizer = Normalizer::default();
    for axiom in kb {
        normalizer.add_axiom(axiom)?;
    }
    Ok(normalizer.finish())
}

/// Incremental normalizer; also hands out names for query concepts.
#[derive(Default)]
pub(crate) struct Normalizer {
    out: NormalForm,
    defined_down: BTreeSet<Concept>,
    defined_up: BTreeSet<Concept>,
}

impl Normalizer {
    pub(crate) fn finish(self) -> NormalForm {
        self.out
    }

    pub(crate) fn add_axiom(&mut self, axiom: &Axiom) -> Result<()> {
        require_ground(&axiom.lhs)?;
        require_ground(&axiom.rhs)?;
        if axiom.rhs == Concept::Top {
            return Ok(());
        }
        if let Some(rhs) = Basic::of(&axiom.rhs) {
            match &axiom.lhs {
                Concept::Exists(role, filler) => {
                    let filler = self.upward_name(filler);
                    self.emit(NormalAxiom::Restriction(role.clone(), filler, rhs));
                    return Ok(());
                }
                Concept::Conj(conjuncts) if conjuncts.len() == 2 => {
                    if let (Some(a1), Some(a2)) = (Basic::of(&conjuncts[0]), Basic::of(&conjuncts[1])) {
                        self.emit(NormalAxiom::Conjunction(a1, a2, rhs));
                        return Ok(());
                    }
                }
                _ => {}
            }
        }
        let lhs = self.upward_name(&axiom.lhs);
        self.assert_below(lhs, &axiom.rhs);
        Ok(())
    }

    /// Name `N` with `C ⊑ N` entailed by the emitted definitions.
    pub(crate) fn upward_name(&mut self, concept: &Concept) -> Basic {
        if let Some(basic) = Basic::of(concept) {
            return basic;
        }
        let name = self.name_for(concept);
        if self.defined_up.insert(concept.clone()) {
            match concept {
                Concept::Exists(role, filler) => {
                    let filler = self.upward_name(filler);
                    self.emit(NormalAxiom::Restriction(role.clone(), filler, name.clone()));
                }
                Concept::Conj(conjuncts) => {
                    let names: Vec<Basic> = conjuncts.iter().map(|c| self.upward_name(c)).collect();
                    let mut acc = names[0].clone();
                    for (i, next) in names.iter().enumerate().skip(1) {
                        let target = if i + 1 == names.len() {
                            name.clone()
                        } else {
                            self.name_for(&Concept::Conj(conjuncts[..=i].to_vec()))
                        };
                        self.emit(NormalAxiom::Conjunction(acc, next.clone(), target.clone()));
                        acc = target;
                    }
                }
                Concept::Top | Concept::Atom(_) | Concept::Var(_) => unreachable!("checked ground and non-basic"),
            }
        }
        name
    }

    /// Name `N` with `N ⊑ C` entailed by the emitted definitions.
    pub(crate) fn downward_name(&mut self, concept: &Concept) -> Basic {
        if let Some(basic) = Basic::of(concept) {
            return basic;
        }
        let name = self.name_for(concept);
        if self.defined_down.insert(concept.clone()) {
            self.assert_below(name.clone(), concept);
        }
        name
    }

    /// Emits axioms for `lhs ⊑ concept`.
    fn assert_below(&mut self, lhs: Basic, concept: &Concept) {
        match concept {
            Concept::Top => {}
            Concept::Atom(a) => {
                let rhs = Basic::Name(a.clone());
                if lhs != rhs {
                    self.emit(NormalAxiom::Subsumption(lhs, rhs));
                }
            }
            Concept::Exists(role, filler) => {
                let filler = self.downward_name(filler);
                self.emit(NormalAxiom::Existential(lhs, role.clone(), filler));
            }
            Concept::Conj(conjuncts) => {
                for c in conjuncts {
                    self.assert_below(lhs.clone(), c);
                }
            }
            Concept::Var(_) => unreachable!("checked ground"),
        }
    }

    fn name_for(&mut self, concept: &Concept) -> Basic {
        let name = ConceptName::new(format!("{}{}", ConceptName::DEFINITION_PREFIX, concept));
        self.out.definitions.entry(name.clone()).or_insert_with(|| concept.clone());
        Basic::Name(name)
    }

    fn emit(&mut self, axiom: NormalAxiom) {
        self.out.axioms.insert(axiom);
    }
}

pub(crate) fn require_ground(concept: &Concept) -> Result<()> {
    if concept.is_ground() {
        Ok(())
    } else {
        Err(Error::NotGround(format!("{concept}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::Concept as C;

    fn n(a: &str) -> Basic {
        Basic::Name(a.into())
    }

    fn kb(axioms: impl IntoIterator<Item = Axiom>) -> Ontology {
        axioms.into_iter().collect()
    }

    #[test]
    fn rhs_conjunction_is_split() {
        let nf = normalize_ontology(&kb([Axiom::new(
            C::atom("A"),
            C::and([C::exists("r", C::atom("B")), C::exists("s", C::atom("C"))]),
        )]))
        .unwrap();
        let expected: BTreeSet<_> = [
            NormalAxiom::Existential(n("A"), "r".into(), n("B")),
            NormalAxiom::Existential(n("A"), "s".into(), n("C")),
        ]
        .into_iter()
        .collect();
        assert_eq!(nf.axioms, expected);
        assert!(nf.definitions.is_empty());
    }

    #[test]
    fn normal_restriction_is_kept() {
        let nf = normalize_ontology(&kb([Axiom::new(C::exists("t", C::atom("B")), C::atom("D"))])).unwrap();
        assert_eq!(nf.axioms.into_iter().collect::<Vec<_>>(), [NormalAxiom::Restriction("t".into(), n("B"), n("D"))]);
    }

    #[test]
    fn complex_filler_gets_a_generated_name() {
        let nf = normalize_ontology(&kb([Axiom::new(
            C::atom("A"),
            C::exists("r", C::and([C::atom("B"), C::atom("C")])),
        )]))
        .unwrap();
        let fresh = n("#def:B and C");
        let expected: BTreeSet<_> = [
            NormalAxiom::Existential(n("A"), "r".into(), fresh.clone()),
            NormalAxiom::Subsumption(fresh.clone(), n("B")),
            NormalAxiom::Subsumption(fresh, n("C")),
        ]
        .into_iter()
        .collect();
        assert_eq!(nf.axioms, expected);
        assert_eq!(nf.definitions.len(), 1);
    }

    #[test]
    fn long_lhs_conjunction_is_binarized() {
        let lhs = C::and([C::atom("A"), C::atom("B"), C::atom("C")]);
        let nf = normalize_ontology(&kb([Axiom::new(lhs, C::atom("D"))])).unwrap();
        let ab = n("#def:A and B");
        let abc = n("#def:A and B and C");
        let expected: BTreeSet<_> = [
            NormalAxiom::Conjunction(n("A"), n("B"), ab.clone()),
            NormalAxiom::Conjunction(ab, n("C"), abc.clone()),
            NormalAxiom::Subsumption(abc, n("D")),
        ]
        .into_iter()
        .collect();
        assert_eq!(nf.axioms, expected);
    }

    #[test]
    fn nonground_input_is_rejected() {
        let err = normalize_ontology(&kb([Axiom::new(C::var("X"), C::atom("A"))])).unwrap_err();
        assert!(matches!(err, Error::NotGround(_)));
    }

    #[test]
    fn output_is_linear_in_input() {
        let mut concept = C::atom("A");
        for i in 0..50 {
            concept = C::and([C::atom(alloc::format!("B{i}").as_str()), C::exists("r", concept)]);
        }
        let ontology = kb([Axiom::new(concept.clone(), concept)]);
        let nf = normalize_ontology(&ontology).unwrap();
        assert!(nf.axioms.len() <= 4 * ontology.size());
    }
}
