//! Classical constructors expressed as axioms with one concept variable.

use alloc::vec::Vec;
use core::fmt;

use crate::concept::{Axiom, Concept};
use crate::error::{Error, Result};
use crate::names::{RoleName, VarName};

/// Variable used by [`SugarAxiom::desugar`]; sugar forms only contain ground
/// concepts, so it cannot clash.
pub const DEFAULT_VAR: &str = "__v0";

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SugarAxiom {
    /// `r₁ ∘ ⋯ ∘ rₘ ⊑ s`. A longer rhs is representable but rejected on desugaring.
    RoleChain { lhs: Vec<RoleName>, rhs: Vec<RoleName> },
    /// Every instance of `lhs` is `role`-related to itself. `lhs = Top`
    /// makes `role` reflexive.
    SelfRestriction { lhs: Concept, role: RoleName },
    /// Within `lhs`, `sub_role` is contained in `super_role`.
    LocalRvm { lhs: Concept, sub_role: RoleName, super_role: RoleName },
    /// `C₀ ⊓ ∃r₁.(C₁ ⊓ ∃r₂.(⋯ ⊓ ∃rₙ.(Cₙ ⊓ X))) ⊑ ∃s.X` with
    /// `prefix = [(C₀, r₁), …, (Cₙ₋₁, rₙ)]` and `guard = Cₙ`.
    Generalized { prefix: Vec<(Concept, RoleName)>, guard: Concept, rhs_role: RoleName },
}

impl SugarAxiom {
    pub fn reflexive(role: impl Into<RoleName>) -> SugarAxiom {
        SugarAxiom::SelfRestriction { lhs: Concept::Top, role: role.into() }
    }

    pub fn desugar(&self) -> Result<Axiom> {
        self.desugar_with(&VarName::new(DEFAULT_VAR))
    }

    pub fn desugar_with(&self, var: &VarName) -> Result<Axiom> {
        let x = Concept::Var(var.clone());
        Ok(match self {
            SugarAxiom::RoleChain { lhs, rhs } => {
                if lhs.is_empty() || rhs.is_empty() {
                    return Err(Error::EmptyRoleChain);
                }
                if rhs.len() != 1 {
                    return Err(Error::CompositeRoleChain { lhs: lhs.clone(), rhs: rhs.clone() });
                }
                let chain = lhs.iter().rev().fold(x.clone(), |inner, r| Concept::exists(r.clone(), inner));
                Axiom::new(chain, Concept::exists(rhs[0].clone(), x))
            }
            SugarAxiom::SelfRestriction { lhs, role } => {
                Axiom::new(Concept::and([lhs.clone(), x.clone()]), Concept::exists(role.clone(), x))
            }
            SugarAxiom::LocalRvm { lhs, sub_role, super_role } => Axiom::new(
                Concept::and([lhs.clone(), Concept::exists(sub_role.clone(), x.clone())]),
                Concept::exists(super_role.clone(), x),
            ),
            SugarAxiom::Generalized { prefix, guard, rhs_role } => {
                let innermost = Concept::and([guard.clone(), x.clone()]);
                let lhs = prefix
                    .iter()
                    .rev()
                    .fold(innermost, |inner, (c, r)| Concept::and([c.clone(), Concept::exists(r.clone(), inner)]));
                Axiom::new(lhs, Concept::exists(rhs_role.clone(), x))
            }
        })
    }
}

fn roles(f: &mut fmt::Formatter<'_>, chain: &[RoleName]) -> fmt::Result {
    for (i, r) in chain.iter().enumerate() {
        if i > 0 {
            f.write_str(" o ")?;
        }
        write!(f, "{r}")?;
    }
    Ok(())
}

/// Prints the surface form accepted by the `elx` parser where one exists.
impl fmt::Display for SugarAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SugarAxiom::RoleChain { lhs, rhs } => {
                f.write_str("chain: ")?;
                roles(f, lhs)?;
                f.write_str(" SubClassOf ")?;
                roles(f, rhs)
            }
            SugarAxiom::SelfRestriction { lhs, role } => write!(f, "{lhs} SubClassOf exists {role}.Self"),
            SugarAxiom::LocalRvm { lhs, sub_role, super_role } => {
                write!(f, "{lhs} SubClassOf ({sub_role} subRoleOf {super_role})")
            }
            SugarAxiom::Generalized { .. } => match self.desugar() {
                Ok(axiom) => write!(f, "{axiom}"),
                Err(e) => write!(f, "{e}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::Concept as C;
    use crate::fragments::classify;
    use alloc::string::ToString;
    use alloc::vec;

    fn x() -> C {
        C::var(DEFAULT_VAR)
    }

    #[test]
    fn grandfather_chain() {
        let s = SugarAxiom::RoleChain { lhs: vec!["father".into(), "father".into()], rhs: vec!["grandfather".into()] };
        let expected = Axiom::new(C::exists("father", C::exists("father", x())), C::exists("grandfather", x()));
        assert_eq!(s.desugar().unwrap(), expected);
        assert!(classify(&expected).is_gelt);
    }

    #[test]
    fn self_restriction() {
        let s = SugarAxiom::SelfRestriction { lhs: C::atom("GreatApes"), role: "recognize".into() };
        let expected = Axiom::new(C::and([C::atom("GreatApes"), x()]), C::exists("recognize", x()));
        assert_eq!(s.desugar().unwrap(), expected);
        assert_eq!(SugarAxiom::reflexive("r").desugar().unwrap(), Axiom::new(x(), C::exists("r", x())));
    }

    #[test]
    fn local_rvm() {
        let s = SugarAxiom::LocalRvm { lhs: C::atom("Male"), sub_role: "isParentOf".into(), super_role: "isFatherOf".into() };
        let expected = Axiom::new(C::and([C::atom("Male"), C::exists("isParentOf", x())]), C::exists("isFatherOf", x()));
        assert_eq!(s.desugar().unwrap(), expected);
        assert_eq!(s.to_string(), "Male SubClassOf (isParentOf subRoleOf isFatherOf)");
    }

    #[test]
    fn generalized_shape() {
        let s = SugarAxiom::Generalized {
            prefix: vec![(C::atom("C0"), "r1".into()), (C::atom("C1"), "r2".into())],
            guard: C::atom("C2"),
            rhs_role: "s".into(),
        };
        let lhs = C::and([
            C::atom("C0"),
            C::exists("r1", C::and([C::atom("C1"), C::exists("r2", C::and([C::atom("C2"), x()]))])),
        ]);
        let axiom = s.desugar().unwrap();
        assert_eq!(axiom, Axiom::new(lhs, C::exists("s", x())));
        assert!(classify(&axiom).is_gelt);
    }

    #[test]
    fn composite_rhs_is_rejected() {
        let s = SugarAxiom::RoleChain { lhs: vec!["r".into()], rhs: vec!["s".into(), "s".into()] };
        assert!(matches!(s.desugar(), Err(Error::CompositeRoleChain { .. })));
        let empty = SugarAxiom::RoleChain { lhs: vec![], rhs: vec!["s".into()] };
        assert_eq!(empty.desugar(), Err(Error::EmptyRoleChain));
    }
}
