//! Syntactic fragment judgments.
//!
//! An axiom `C ⊑ D` is in gelo when it is range restricted
//! (`vars(D) ⊆ vars(C)`), `C` is linear (no variable twice) and `D` is safe
//! (variables occur only as `∃r.X`). It is in gelt when additionally every
//! positively occurring `∃r.E` has `E` a bare variable or ground. Positive
//! occurrences are exactly the rhs subterms, so only the rhs is constrained
//! by the gelt condition.

use alloc::vec::Vec;
use core::fmt;

use crate::concept::{Axiom, Concept};
use crate::names::VarName;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    /// Variable on the rhs that does not occur on the lhs.
    NotRangeRestricted(VarName),
    /// Variable occurring more than once on the lhs.
    NotLinear { var: VarName, occurrences: usize },
    /// Variable on the rhs that is not the immediate filler of an existential.
    Unsafe(VarName),
    /// Positive existential whose filler is neither a variable nor ground.
    NestedVariable,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Smallest subterm that exhibits the violation.
    pub subterm: Concept,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::NotRangeRestricted(var) => {
                write!(f, "not range restricted: {var} occurs on the rhs but not on the lhs")
            }
            ViolationKind::NotLinear { var, occurrences } => match occurrences {
                2 => write!(f, "lhs not linear: {var} occurs twice"),
                n => write!(f, "lhs not linear: {var} occurs {n} times"),
            },
            ViolationKind::Unsafe(var) => {
                write!(f, "rhs not safe: {var} is not the direct filler of an existential in `{}`", self.subterm)
            }
            ViolationKind::NestedVariable => write!(
                f,
                "not gelt: filler of `{}` is neither a variable nor ground",
                self.subterm
            ),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FragmentReport {
    pub range_restricted: bool,
    pub lhs_linear: bool,
    pub rhs_safe: bool,
    pub is_gelo: bool,
    pub is_gelt: bool,
    pub violations: Vec<Violation>,
}

pub fn check_range_restricted(axiom: &Axiom) -> bool {
    axiom.rhs.vars().is_subset(&axiom.lhs.vars())
}

pub fn check_linear(concept: &Concept) -> bool {
    concept.var_occurrences().values().all(|&n| n <= 1)
}

pub fn check_safe(concept: &Concept) -> bool {
    unsafe_occurrences(concept).is_empty()
}

/// `(variable, enclosing subterm)` for every variable occurrence that is not
/// the direct filler of an existential.
fn unsafe_occurrences(concept: &Concept) -> Vec<(VarName, Concept)> {
    fn walk(c: &Concept, parent: Option<&Concept>, out: &mut Vec<(VarName, Concept)>) {
        match c {
            Concept::Var(v) => {
                if !matches!(parent, Some(Concept::Exists(..))) {
                    out.push((v.clone(), parent.unwrap_or(c).clone()));
                }
            }
            _ => {
                for child in c.children() {
                    walk(child, Some(c), out);
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(concept, None, &mut out);
    out
}

/// Positive existentials violating the gelt filler condition.
fn nested_variable_existentials(rhs: &Concept) -> Vec<Concept> {
    let mut out = Vec::new();
    rhs.visit(&mut |c| {
        if let Concept::Exists(_, filler) = c {
            if !matches!(**filler, Concept::Var(_)) && !filler.is_ground() {
                out.push(c.clone());
            }
        }
    });
    out
}

pub fn classify(axiom: &Axiom) -> FragmentReport {
    let mut violations = Vec::new();

    let lhs_vars = axiom.lhs.vars();
    for var in axiom.rhs.vars() {
        if !lhs_vars.contains(&var) {
            violations.push(Violation {
                kind: ViolationKind::NotRangeRestricted(var.clone()),
                subterm: axiom.rhs.clone(),
            });
        }
    }
    let range_restricted = violations.is_empty();

    for (var, occurrences) in axiom.lhs.var_occurrences() {
        if occurrences > 1 {
            violations.push(Violation {
                kind: ViolationKind::NotLinear { var, occurrences },
                subterm: axiom.lhs.clone(),
            });
        }
    }
    let lhs_linear = check_linear(&axiom.lhs);

    let unsafe_vars = unsafe_occurrences(&axiom.rhs);
    let rhs_safe = unsafe_vars.is_empty();
    for (var, subterm) in unsafe_vars {
        violations.push(Violation { kind: ViolationKind::Unsafe(var), subterm });
    }

    let is_gelo = range_restricted && lhs_linear && rhs_safe;
    let nested = nested_variable_existentials(&axiom.rhs);
    let is_gelt = is_gelo && nested.is_empty();
    for subterm in nested {
        violations.push(Violation { kind: ViolationKind::NestedVariable, subterm });
    }

    FragmentReport { range_restricted, lhs_linear, rhs_safe, is_gelo, is_gelt, violations }
}
