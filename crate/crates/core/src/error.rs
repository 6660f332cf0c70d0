use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::concept::Axiom;
use crate::fragments::FragmentReport;
use crate::names::{RoleName, VarName};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A substitution or valuation does not cover a variable of the expression.
    UnboundVariable(VarName),
    /// Grounding a nonground expression over an empty concept base.
    EmptyBase,
    /// An operation that needs a ground expression got one with variables.
    NotGround(String),
    /// `decide` refuses ontologies outside gelo.
    OutsideGelo(Vec<(Axiom, FragmentReport)>),
    /// The single-variable rewrite only applies to gelt axioms.
    OutsideGelt(Box<(Axiom, FragmentReport)>),
    /// The singleton-valuation shortcut needs a range-restricted axiom with a linear lhs.
    SingletonNotApplicable(Axiom),
    EmptyDomain,
    UnknownElement(String),
    /// Brute-force enumeration would exceed the configured state ceiling.
    SearchTooLarge { states_log2: u32, ceiling: u128 },
    EmptyRoleChain,
    /// Role-value-maps with a composite rhs leave gelt; their entailment is undecidable.
    CompositeRoleChain { lhs: Vec<RoleName>, rhs: Vec<RoleName> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnboundVariable(var) => write!(f, "variable {var} is not bound"),
            Error::EmptyBase => f.write_str("cannot ground a nonground expression over an empty concept base"),
            Error::NotGround(what) => write!(f, "expected a ground expression, got `{what}`"),
            Error::OutsideGelo(offenders) => {
                write!(f, "ontology is outside gelo; {} axiom(s) rejected:", offenders.len())?;
                for (axiom, report) in offenders {
                    write!(f, "\n  {axiom}")?;
                    for violation in &report.violations {
                        write!(f, "\n    - {violation}")?;
                    }
                }
                Ok(())
            }
            Error::OutsideGelt(boxed) => {
                let (axiom, report) = &**boxed;
                write!(f, "axiom `{axiom}` is not gelt")?;
                for violation in &report.violations {
                    write!(f, "; {violation}")?;
                }
                Ok(())
            }
            Error::SingletonNotApplicable(axiom) => write!(
                f,
                "singleton valuations are only complete for range-restricted axioms with a linear lhs; `{axiom}` is not"
            ),
            Error::EmptyDomain => f.write_str("interpretation domain must be nonempty"),
            Error::UnknownElement(elem) => write!(f, "element `{elem}` is not in the domain"),
            Error::SearchTooLarge { states_log2, ceiling } => write!(
                f,
                "enumeration needs 2^{states_log2} interpretations, above the ceiling of {ceiling}"
            ),
            Error::EmptyRoleChain => f.write_str("role chains must be nonempty"),
            Error::CompositeRoleChain { lhs, rhs } => {
                write!(f, "role chain ")?;
                write_chain(f, lhs)?;
                write!(f, " SubClassOf ")?;
                write_chain(f, rhs)?;
                f.write_str(
                    " has a composite right-hand side; general role-value-maps make entailment undecidable, only a single rhs role is supported",
                )
            }
        }
    }
}

fn write_chain(f: &mut fmt::Formatter<'_>, roles: &[RoleName]) -> fmt::Result {
    for (i, role) in roles.iter().enumerate() {
        if i > 0 {
            f.write_str(" o ")?;
        }
        write!(f, "{role}")?;
    }
    Ok(())
}

impl core::error::Error for Error {}
