//! Second-order semantics over explicit finite interpretations.

mod eval;
mod interp;
mod search;

pub use eval::{
    check_role_composition, eval_concept, find_violation, preferred_mode, satisfies, satisfies_so, satisfies_so_kb,
    singleton_applicable, Mode, Valuation, MAX_ALL_MODE_BITS,
};
pub use interp::{ElemSet, FiniteInterpretation};
pub use search::{refute_entailment, Countermodel, DEFAULT_STATE_CEILING, MAX_DOMAIN_WITH_ROLES};
