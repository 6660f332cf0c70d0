//! Entailment under second-order semantics for gelo ontologies.
//!
//! The ontology is grounded over successive expansion levels and each
//! grounding is handed to the EL reasoner. A positive answer at any level is
//! final. A negative answer is final once the expansion reaches a fixpoint.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::concept::{Axiom, Concept, ConceptBase, Ontology, Substitution};
use crate::error::{Error, Result};
use crate::expansion::{expand_level, h0, positive_fillers, v1_normalize, DEFAULT_BASE_CAP};
use crate::fragments::classify;
use crate::names::{ConceptName, VarName};
use crate::saturation::{entails_ground, require_ground};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Entailed,
    NotEntailed,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Entailed => "ENTAILED",
            Status::NotEntailed => "NOT ENTAILED",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub status: Status,
    /// Expansion level of the last grounding checked.
    pub level: usize,
    pub definitive: bool,
    /// The goal after replacing its variables by fresh names.
    pub goal: Axiom,
    pub fresh: BTreeMap<VarName, ConceptName>,
    /// Bases `H⁰ … Hᵏ` up to `level`.
    pub levels: Vec<ConceptBase>,
    pub fixpoint_reached: bool,
    /// The ontology grounded over `levels[level]`.
    pub grounding: Ontology,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DecideOptions {
    /// Highest expansion level to ground over.
    pub level_budget: usize,
    /// Rewrite gelt axioms to one variable each before expanding.
    pub single_variable: bool,
    /// Largest expansion level tolerated before answering Unknown.
    pub base_cap: usize,
}

impl Default for DecideOptions {
    fn default() -> DecideOptions {
        DecideOptions { level_budget: 10, single_variable: false, base_cap: DEFAULT_BASE_CAP }
    }
}

/// Replaces each goal variable by a distinct concept name that occurs in
/// neither `kb` nor `goal`: `F0`, `F1`, … with used names skipped.
pub fn generalize_goal(kb: &Ontology, goal: &Axiom) -> (Axiom, BTreeMap<VarName, ConceptName>) {
    let vars = goal.vars();
    if vars.is_empty() {
        return (goal.clone(), BTreeMap::new());
    }
    let mut used: BTreeSet<ConceptName> = kb.signature().concepts;
    used.extend(goal.signature().concepts);
    let mut fresh = BTreeMap::new();
    let mut counter = 0usize;
    for v in vars {
        let name = loop {
            let candidate = ConceptName::new(format!("F{counter}"));
            counter += 1;
            if !used.contains(&candidate) {
                break candidate;
            }
        };
        fresh.insert(v, name);
    }
    let theta: Substitution = fresh.iter().map(|(v, n)| (v.clone(), Concept::Atom(n.clone()))).collect();
    let ground = goal.substitute(&theta).expect("every goal variable mapped");
    (ground, fresh)
}

/// Fails with [`Error::OutsideGelo`] listing every axiom outside the fragment.
pub fn require_gelo(kb: &Ontology) -> Result<()> {
    let outside: Vec<_> = kb
        .iter()
        .filter_map(|a| {
            let report = classify(a);
            (!report.is_gelo).then(|| (a.clone(), report))
        })
        .collect();
    if outside.is_empty() {
        Ok(())
    } else {
        Err(Error::OutsideGelo(outside))
    }
}

/// Decides `kb ⊨² goal` for a gelo `kb`; nonground goals are generalized first.
pub fn decide(kb: &Ontology, goal: &Axiom, options: DecideOptions) -> Result<EntailmentVerdict> {
    require_gelo(kb)?;
    let (goal, fresh) = generalize_goal(kb, goal);
    let normalized;
    let kb = if options.single_variable {
        normalized = v1_normalize(kb)?;
        &normalized
    } else {
        kb
    };
    let fillers = positive_fillers(kb);
    let mut levels = alloc::vec![h0(&goal)?];
    loop {
        let level = levels.len() - 1;
        let base = &levels[level];
        let grounding = kb.ground_instances(base)?;
        let verdict = |status, definitive, fixpoint_reached, levels, grounding| EntailmentVerdict {
            status,
            level,
            definitive,
            goal: goal.clone(),
            fresh: fresh.clone(),
            levels,
            fixpoint_reached,
            grounding,
        };
        if entails_ground(&grounding, &goal)? {
            return Ok(verdict(Status::Entailed, true, false, levels, grounding));
        }
        let projected = fillers
            .iter()
            .map(|d| base.len().checked_pow(d.vars().len() as u32).unwrap_or(usize::MAX))
            .fold(base.len(), usize::saturating_add);
        if level >= options.level_budget || projected > options.base_cap {
            return Ok(verdict(Status::Unknown, false, false, levels, grounding));
        }
        let next = expand_level(base, kb)?;
        if &next == base {
            return Ok(verdict(Status::NotEntailed, true, true, levels, grounding));
        }
        levels.push(next);
    }
}

/// `kb↓H ⊨ goal↓H`: every instance of the goal over `base` follows from the
/// instances of `kb` over `base`. Works for any axioms, gelo or not.
pub fn check_schema(kb: &Ontology, goal: &Axiom, base: &ConceptBase) -> Result<bool> {
    if base.is_empty() {
        return Err(Error::EmptyBase);
    }
    for c in base {
        require_ground(c)?;
    }
    let grounding = kb.ground_instances(base)?;
    for instance in goal.ground_instances(base)? {
        if !entails_ground(&grounding, &instance)? {
            return Ok(false);
        }
    }
    Ok(true)
}
