use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::interp::{ElemSet, FiniteInterpretation};
use crate::concept::{Axiom, Concept, Ontology};
use crate::error::{Error, Result};
use crate::fragments::{check_linear, check_range_restricted};
use crate::names::{RoleName, VarName};

/// Assignment of variables to subsets of the domain.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Valuation(BTreeMap<VarName, ElemSet>);

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn with(mut self, var: impl Into<VarName>, set: ElemSet) -> Valuation {
        self.0.insert(var.into(), set);
        self
    }

    pub fn insert(&mut self, var: VarName, set: ElemSet) {
        self.0.insert(var, set);
    }

    pub fn get(&self, var: &VarName) -> Option<&ElemSet> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, &ElemSet)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.0.values().all(|s| s.len() == 1)
    }

    /// Pointwise inclusion on the variables of `self`.
    pub fn is_below(&self, other: &Valuation) -> bool {
        self.0.iter().all(|(v, s)| other.get(v).is_some_and(|o| s.is_subset(o)))
    }

    /// `η(X)={b,c}, η(Y)={}` with element names from `interp`.
    pub fn display<'a>(&'a self, interp: &'a FiniteInterpretation) -> impl fmt::Display + 'a {
        DisplayValuation { valuation: self, interp }
    }
}

struct DisplayValuation<'a> {
    valuation: &'a Valuation,
    interp: &'a FiniteInterpretation,
}

impl fmt::Display for DisplayValuation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (var, set)) in self.valuation.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "η({})={{", var.as_str())?;
            for (j, e) in set.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                f.write_str(self.interp.element_name(e))?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// `C^{I,η}`, treating variables as names interpreted by `η`.
pub fn eval_concept(interp: &FiniteInterpretation, eta: &Valuation, concept: &Concept) -> Result<ElemSet> {
    let n = interp.domain_size();
    Ok(match concept {
        Concept::Top => ElemSet::full(n),
        Concept::Atom(a) => interp.concept_ext(a),
        Concept::Var(v) => eta.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Concept::Exists(role, filler) => {
            let filler = eval_concept(interp, eta, filler)?;
            let mut out = ElemSet::empty(n);
            for d in 0..n {
                if interp.successors(role, d).is_some_and(|succ| succ.intersects(&filler)) {
                    out.insert(d);
                }
            }
            out
        }
        Concept::Conj(conjuncts) => {
            let mut out = ElemSet::full(n);
            for c in conjuncts {
                out.intersect_with(&eval_concept(interp, eta, c)?);
            }
            out
        }
    })
}

/// `I ⊨_η axiom`.
pub fn satisfies(interp: &FiniteInterpretation, eta: &Valuation, axiom: &Axiom) -> Result<bool> {
    Ok(eval_concept(interp, eta, &axiom.lhs)?.is_subset(&eval_concept(interp, eta, &axiom.rhs)?))
}

/// Which valuations a second-order check ranges over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Every subset for every variable.
    All,
    /// One-element subsets only; complete for range-restricted axioms with a linear lhs.
    Singleton,
}

/// Whether the singleton shortcut is complete for `axiom`.
pub fn singleton_applicable(axiom: &Axiom) -> bool {
    check_range_restricted(axiom) && check_linear(&axiom.lhs)
}

/// Largest `|Δ|·|vars|` accepted in [`Mode::All`].
pub const MAX_ALL_MODE_BITS: usize = 40;

/// First valuation (in enumeration order) under which `axiom` fails.
pub fn find_violation(interp: &FiniteInterpretation, axiom: &Axiom, mode: Mode) -> Result<Option<Valuation>> {
    let vars: Vec<VarName> = axiom.vars().into_iter().collect();
    let n = interp.domain_size();
    let choices: Vec<ElemSet> = match mode {
        Mode::Singleton => {
            if !singleton_applicable(axiom) {
                return Err(Error::SingletonNotApplicable(axiom.clone()));
            }
            (0..n).map(|d| ElemSet::singleton(n, d)).collect()
        }
        Mode::All => {
            let bits = n * vars.len();
            if bits > MAX_ALL_MODE_BITS {
                return Err(Error::SearchTooLarge { states_log2: bits as u32, ceiling: 1u128 << MAX_ALL_MODE_BITS });
            }
            if vars.is_empty() {
                Vec::new()
            } else {
                (0..1u64 << n).map(|mask| ElemSet::from_mask(n, mask)).collect()
            }
        }
    };
    let mut digits = alloc::vec![0usize; vars.len()];
    loop {
        let eta: Valuation = Valuation(vars.iter().zip(&digits).map(|(v, &d)| (v.clone(), choices[d].clone())).collect());
        if !satisfies(interp, &eta, axiom)? {
            return Ok(Some(eta));
        }
        let mut advanced = false;
        for digit in digits.iter_mut().rev() {
            *digit += 1;
            if *digit < choices.len() {
                advanced = true;
                break;
            }
            *digit = 0;
        }
        if !advanced {
            return Ok(None);
        }
    }
}

/// `I ⊨² axiom`.
pub fn satisfies_so(interp: &FiniteInterpretation, axiom: &Axiom, mode: Mode) -> Result<bool> {
    Ok(find_violation(interp, axiom, mode)?.is_none())
}

/// Singleton mode when it is complete for the axiom, otherwise all valuations.
pub fn preferred_mode(axiom: &Axiom) -> Mode {
    if singleton_applicable(axiom) {
        Mode::Singleton
    } else {
        Mode::All
    }
}

/// `I ⊨² KB`; `Some((axiom, η))` names the first failure.
pub fn satisfies_so_kb(interp: &FiniteInterpretation, kb: &Ontology) -> Result<Option<(Axiom, Valuation)>> {
    for axiom in kb {
        if let Some(eta) = find_violation(interp, axiom, preferred_mode(axiom))? {
            return Ok(Some((axiom.clone(), eta)));
        }
    }
    Ok(None)
}

/// `r₁ ∘ ⋯ ∘ rₘ ⊆ s₁ ∘ ⋯ ∘ sₙ` over `interp`.
pub fn check_role_composition(interp: &FiniteInterpretation, lhs: &[RoleName], rhs: &[RoleName]) -> Result<bool> {
    if lhs.is_empty() || rhs.is_empty() {
        return Err(Error::EmptyRoleChain);
    }
    let left = compose(interp, lhs);
    let right = compose(interp, rhs);
    Ok(left.iter().zip(&right).all(|(l, r)| l.is_subset(r)))
}

/// Composed relation as successor sets per source element.
fn compose(interp: &FiniteInterpretation, chain: &[RoleName]) -> Vec<ElemSet> {
    let n = interp.domain_size();
    let mut reach: Vec<ElemSet> = (0..n).map(|d| ElemSet::singleton(n, d)).collect();
    for role in chain {
        reach = reach
            .iter()
            .map(|from| {
                let mut next = ElemSet::empty(n);
                for mid in from.iter() {
                    if let Some(succ) = interp.successors(role, mid) {
                        next.union_with(succ);
                    }
                }
                next
            })
            .collect();
    }
    reach
}
