//! Exhaustive countermodel search over small domains.
//!
//! Concepts are compiled to evaluators over `u64` element masks, so a
//! domain holds at most 8 elements when roles are present (the successor
//! relation of one role must fit in 64 bits).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::eval::{preferred_mode, Mode, Valuation};
use super::interp::{ElemSet, FiniteInterpretation};
use crate::concept::{Axiom, Concept, Ontology};
use crate::error::{Error, Result};
use crate::names::{ConceptName, RoleName, VarName};

/// Default bound on the number of interpretations enumerated for one domain size.
pub const DEFAULT_STATE_CEILING: u128 = 1 << 30;

/// Largest domain the compiled evaluator supports when roles are present.
pub const MAX_DOMAIN_WITH_ROLES: usize = 8;

/// A finite model of the KB that violates the goal under `valuation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub interpretation: FiniteInterpretation,
    pub valuation: Valuation,
}

enum Code {
    Top,
    Name(usize),
    Var(usize),
    Exists(usize, Box<Code>),
    And(Vec<Code>),
}

struct Compiled {
    lhs: Code,
    rhs: Code,
    vars: Vec<VarName>,
    mode: Mode,
}

struct Tables<'a> {
    concepts: BTreeMap<&'a ConceptName, usize>,
    roles: BTreeMap<&'a RoleName, usize>,
}

impl Tables<'_> {
    fn compile(&self, concept: &Concept, vars: &[VarName]) -> Code {
        match concept {
            Concept::Top => Code::Top,
            Concept::Atom(a) => Code::Name(self.concepts[a]),
            Concept::Var(v) => Code::Var(vars.iter().position(|w| w == v).expect("variable collected")),
            Concept::Exists(r, filler) => Code::Exists(self.roles[r], Box::new(self.compile(filler, vars))),
            Concept::Conj(cs) => Code::And(cs.iter().map(|c| self.compile(c, vars)).collect()),
        }
    }

    fn compile_axiom(&self, axiom: &Axiom) -> Compiled {
        let vars: Vec<VarName> = axiom.vars().into_iter().collect();
        Compiled {
            lhs: self.compile(&axiom.lhs, &vars),
            rhs: self.compile(&axiom.rhs, &vars),
            mode: preferred_mode(axiom),
            vars,
        }
    }
}

struct Model {
    n: usize,
    full: u64,
    concepts: Vec<u64>,
    /// `succ[r * n + d]`: successors of `d` under role `r`.
    succ: Vec<u64>,
}

impl Model {
    fn eval(&self, code: &Code, vals: &[u64]) -> u64 {
        match code {
            Code::Top => self.full,
            Code::Name(i) => self.concepts[*i],
            Code::Var(i) => vals[*i],
            Code::Exists(r, filler) => {
                let filler = self.eval(filler, vals);
                if filler == 0 {
                    return 0;
                }
                let row = &self.succ[r * self.n..(r + 1) * self.n];
                let mut out = 0;
                for (d, &s) in row.iter().enumerate() {
                    if s & filler != 0 {
                        out |= 1 << d;
                    }
                }
                out
            }
            Code::And(cs) => {
                let mut out = self.full;
                for c in cs {
                    out &= self.eval(c, vals);
                    if out == 0 {
                        break;
                    }
                }
                out
            }
        }
    }

    /// First violating valuation, as masks in variable order.
    fn violation(&self, axiom: &Compiled) -> Option<Vec<u64>> {
        let (first, last) = match axiom.mode {
            Mode::Singleton => (1u64, 1u64 << (self.n - 1)),
            Mode::All => (0, self.full),
        };
        let step = |v: u64| match axiom.mode {
            Mode::Singleton => v << 1,
            Mode::All => v + 1,
        };
        let mut vals = alloc::vec![first; axiom.vars.len()];
        loop {
            if self.eval(&axiom.lhs, &vals) & !self.eval(&axiom.rhs, &vals) != 0 {
                return Some(vals);
            }
            let mut advanced = false;
            for v in vals.iter_mut().rev() {
                if *v != last {
                    *v = step(*v);
                    advanced = true;
                    break;
                }
                *v = first;
            }
            if !advanced {
                return None;
            }
        }
    }
}

/// `log₂` of the number of interpretations over `n` elements.
fn state_bits(n: usize, concepts: usize, roles: usize) -> usize {
    n * concepts + n * n * roles
}

/// Searches interpretations with at most `max_domain` elements, smallest
/// domains first, for a second-order model of `kb` that violates `goal`.
/// Fails with [`Error::SearchTooLarge`] before enumerating anything if the
/// largest domain would exceed `ceiling` interpretations.
pub fn refute_entailment(kb: &Ontology, goal: &Axiom, max_domain: usize, ceiling: u128) -> Result<Option<Countermodel>> {
    let mut sig = kb.signature();
    goal.collect_signature(&mut sig);
    let nc = sig.concepts.len();
    let nr = sig.roles.len();
    if max_domain == 0 {
        return Ok(None);
    }
    let bits = state_bits(max_domain, nc, nr);
    let limit = if nr > 0 { MAX_DOMAIN_WITH_ROLES } else { 64 };
    if max_domain > limit || bits >= 128 || (1u128 << bits) > ceiling {
        return Err(Error::SearchTooLarge { states_log2: bits.min(u32::MAX as usize) as u32, ceiling });
    }

    let tables = Tables {
        concepts: sig.concepts.iter().enumerate().map(|(i, a)| (a, i)).collect(),
        roles: sig.roles.iter().enumerate().map(|(i, r)| (r, i)).collect(),
    };
    let axioms: Vec<Compiled> = kb.iter().map(|a| tables.compile_axiom(a)).collect();
    let goal_code = tables.compile_axiom(goal);

    for n in 1..=max_domain {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let role_full = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
        let total: u128 = 1u128 << state_bits(n, nc, nr);
        let mut model = Model { n, full, concepts: alloc::vec![0; nc], succ: alloc::vec![0; nr * n] };
        for state in 0..total {
            let mut rest = state;
            for c in model.concepts.iter_mut() {
                *c = (rest as u64) & full;
                rest >>= n;
            }
            for r in 0..nr {
                let pairs = (rest as u64) & role_full;
                rest >>= n * n;
                for d in 0..n {
                    model.succ[r * n + d] = (pairs >> (d * n)) & full;
                }
            }
            let Some(vals) = model.violation(&goal_code) else { continue };
            if axioms.iter().all(|a| model.violation(a).is_none()) {
                return Ok(Some(export(&model, &sig.concepts, &sig.roles, &goal_code.vars, &vals)));
            }
        }
    }
    Ok(None)
}

fn element_name(i: usize) -> alloc::string::String {
    if i < 26 {
        format!("{}", (b'a' + i as u8) as char)
    } else {
        format!("d{i}")
    }
}

fn export<'a>(
    model: &Model,
    concepts: impl IntoIterator<Item = &'a ConceptName>,
    roles: impl IntoIterator<Item = &'a RoleName>,
    vars: &[VarName],
    vals: &[u64],
) -> Countermodel {
    let n = model.n;
    let mut interp = FiniteInterpretation::new((0..n).map(element_name)).expect("nonempty domain");
    for (i, name) in concepts.into_iter().enumerate() {
        interp.declare_concept(name);
        for d in ElemSet::from_mask(n, model.concepts[i]).iter() {
            interp.add_concept_member(name, d);
        }
    }
    for (r, role) in roles.into_iter().enumerate() {
        interp.declare_role(role);
        for d in 0..n {
            for e in ElemSet::from_mask(n, model.succ[r * n + d]).iter() {
                interp.add_role_pair(role, d, e);
            }
        }
    }
    let mut valuation = Valuation::new();
    for (v, &mask) in vars.iter().zip(vals) {
        valuation.insert(v.clone(), ElemSet::from_mask(n, mask));
    }
    Countermodel { interpretation: interp, valuation }
}
