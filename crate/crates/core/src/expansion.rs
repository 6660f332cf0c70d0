//! Expansion bases: the finite sets of ground concepts over which a gelo
//! ontology is instantiated.
//!
//! Level 0 holds the goal's lhs and the existential fillers in it. Each
//! further level adds every instance, over the previous level, of every
//! existential filler occurring positively in the ontology.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::concept::{Axiom, Concept, ConceptBase, Ontology, Substitution};
use crate::error::{Error, Result};
use crate::fragments::classify;
use crate::saturation::require_ground;

/// Upper bound on the size of one expansion level.
pub const DEFAULT_BASE_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTrace {
    /// `H⁰, H¹, …`; on a fixpoint the last level repeats the one before it.
    pub levels: Vec<ConceptBase>,
    pub fixpoint_reached: bool,
    /// Set when the next level would have exceeded the size cap.
    pub capped: bool,
    /// The ontology grounded over the last level.
    pub grounded: Ontology,
}

impl ExpansionTrace {
    pub fn final_base(&self) -> &ConceptBase {
        self.levels.last().expect("level 0 always present")
    }
}

/// `{F} ∪ {D | ∃r.D ∈ sub(F)}` for a ground goal `F ⊑ E`.
pub fn h0(goal: &Axiom) -> Result<ConceptBase> {
    require_ground(&goal.lhs)?;
    require_ground(&goal.rhs)?;
    let mut base = goal.lhs.existential_fillers();
    base.insert(goal.lhs.clone());
    Ok(base)
}

/// Fillers `D` of the existentials in `sub⁺(kb)`.
pub fn positive_fillers(kb: &Ontology) -> BTreeSet<Concept> {
    kb.positive_subconcepts()
        .into_iter()
        .filter_map(|c| match c {
            Concept::Exists(_, filler) => Some(*filler),
            _ => None,
        })
        .collect()
}

/// Number of new instances the next level would try to build.
fn instance_count(fillers: &BTreeSet<Concept>, base_len: usize) -> usize {
    fillers
        .iter()
        .map(|d| {
            let k = d.vars().len() as u32;
            base_len.checked_pow(k).unwrap_or(usize::MAX)
        })
        .fold(0usize, usize::saturating_add)
}

/// `H ∪ ⋃_{∃r.D ∈ sub⁺(kb)} D↓H`.
pub fn expand_level(base: &ConceptBase, kb: &Ontology) -> Result<ConceptBase> {
    expand_with(base, &positive_fillers(kb))
}

fn expand_with(base: &ConceptBase, fillers: &BTreeSet<Concept>) -> Result<ConceptBase> {
    let mut next = base.clone();
    for d in fillers {
        next.extend(d.ground_instances(base)?);
    }
    Ok(next)
}

/// Expands from `h0(goal)` for at most `level_budget` steps, stopping early
/// at a fixpoint.
pub fn expansion_base(kb: &Ontology, goal: &Axiom, level_budget: usize) -> Result<ExpansionTrace> {
    expansion_base_capped(kb, goal, level_budget, DEFAULT_BASE_CAP)
}

pub fn expansion_base_capped(kb: &Ontology, goal: &Axiom, level_budget: usize, cap: usize) -> Result<ExpansionTrace> {
    let fillers = positive_fillers(kb);
    let mut levels = alloc::vec![h0(goal)?];
    let mut fixpoint_reached = false;
    let mut capped = false;
    for _ in 0..level_budget {
        let last = levels.last().unwrap();
        if last.len().saturating_add(instance_count(&fillers, last.len())) > cap {
            capped = true;
            break;
        }
        let next = expand_with(last, &fillers)?;
        fixpoint_reached = &next == last;
        levels.push(next);
        if fixpoint_reached {
            break;
        }
    }
    let grounded = kb.ground_instances(levels.last().unwrap())?;
    Ok(ExpansionTrace { levels, fixpoint_reached, capped, grounded })
}

/// `H⁰ ∪ {D | ∃r.D ∈ sub⁺(kb), D ground}`: the expansion base of a gelt ontology.
pub fn gelt_closed_form(kb: &Ontology, goal: &Axiom) -> Result<ConceptBase> {
    let mut base = h0(goal)?;
    base.extend(positive_fillers(kb).into_iter().filter(Concept::is_ground));
    Ok(base)
}

/// Rewrites a gelt ontology so each axiom has at most one variable: the rhs
/// is split into its conjuncts and, per conjunct, lhs variables it does not
/// mention become Top.
pub fn v1_normalize(kb: &Ontology) -> Result<Ontology> {
    let mut out = Ontology::new();
    for axiom in kb {
        let report = classify(axiom);
        if !report.is_gelt {
            return Err(Error::OutsideGelt(alloc::boxed::Box::new((axiom.clone(), report))));
        }
        let conjuncts: Vec<&Concept> = match &axiom.rhs {
            Concept::Conj(cs) => cs.iter().collect(),
            other => alloc::vec![other],
        };
        for c in conjuncts {
            let keep = c.vars();
            let theta: Substitution = axiom
                .lhs
                .vars()
                .into_iter()
                .map(|v| {
                    let image = if keep.contains(&v) { Concept::Var(v.clone()) } else { Concept::Top };
                    (v, image)
                })
                .collect();
            out.insert(Axiom::new(axiom.lhs.substitute(&theta)?, c.clone()));
        }
    }
    Ok(out)
}
