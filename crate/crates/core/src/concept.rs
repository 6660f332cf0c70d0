//! Concept and axiom syntax trees.
//!
//! A [`Concept`] built through the smart constructors (or passed through
//! [`Concept::normalize`]) is canonical: conjunctions are flat, sorted,
//! duplicate-free, Top-free and have at least two conjuncts. Canonical form
//! gives cheap syntactic equality, which concept bases and grounding rely on.
//! The derived `Ord` compares constructor tag first (Top, Var, Atom, Exists,
//! Conj), then identifiers, then children, which fixes the conjunct order and
//! every printed output.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::names::{ConceptName, RoleName, VarName};

/// Finite set of ground concepts used to instantiate variables.
pub type ConceptBase = BTreeSet<Concept>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Concept {
    Top,
    Var(VarName),
    Atom(ConceptName),
    Exists(RoleName, Box<Concept>),
    Conj(Vec<Concept>),
}

impl Concept {
    pub fn atom(name: impl Into<ConceptName>) -> Concept {
        Concept::Atom(name.into())
    }

    pub fn var(name: impl Into<VarName>) -> Concept {
        Concept::Var(name.into())
    }

    pub fn exists(role: impl Into<RoleName>, filler: Concept) -> Concept {
        Concept::Exists(role.into(), Box::new(filler.normalize()))
    }

    /// Canonical conjunction of `conjuncts`; empty gives Top, one gives itself.
    pub fn and(conjuncts: impl IntoIterator<Item = Concept>) -> Concept {
        conjunction_of(conjuncts.into_iter().map(|c| c.normalize()))
    }

    pub fn normalize(&self) -> Concept {
        match self {
            Concept::Top | Concept::Atom(_) | Concept::Var(_) => self.clone(),
            Concept::Exists(role, filler) => Concept::Exists(role.clone(), Box::new(filler.normalize())),
            Concept::Conj(conjuncts) => conjunction_of(conjuncts.iter().map(Concept::normalize)),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Concept::Top | Concept::Atom(_) | Concept::Var(_) => true,
            Concept::Exists(_, filler) => filler.is_canonical(),
            Concept::Conj(conjuncts) => {
                conjuncts.len() >= 2
                    && conjuncts.windows(2).all(|w| w[0] < w[1])
                    && conjuncts
                        .iter()
                        .all(|c| !matches!(c, Concept::Top | Concept::Conj(_)) && c.is_canonical())
            }
        }
    }

    /// Immediate children in the syntax tree.
    pub fn children(&self) -> &[Concept] {
        match self {
            Concept::Top | Concept::Atom(_) | Concept::Var(_) => &[],
            Concept::Exists(_, filler) => core::slice::from_ref(filler),
            Concept::Conj(conjuncts) => conjuncts,
        }
    }

    /// All subterms, including `self`.
    pub fn subconcepts(&self) -> BTreeSet<Concept> {
        let mut out = BTreeSet::new();
        self.collect_subconcepts(&mut out);
        out
    }

    pub(crate) fn collect_subconcepts(&self, out: &mut BTreeSet<Concept>) {
        if out.insert(self.clone()) {
            for child in self.children() {
                child.collect_subconcepts(out);
            }
        }
    }

    /// Fillers `D` of every `∃r.D` occurring in `self`.
    pub fn existential_fillers(&self) -> BTreeSet<Concept> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| {
            if let Concept::Exists(_, filler) = c {
                out.insert((**filler).clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Concept)) {
        f(self);
        for child in self.children() {
            child.visit(f);
        }
    }

    pub fn vars(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| {
            if let Concept::Var(v) = c {
                out.insert(v.clone());
            }
        });
        out
    }

    /// Number of occurrences of each variable.
    pub fn var_occurrences(&self) -> BTreeMap<VarName, usize> {
        let mut out = BTreeMap::new();
        self.visit(&mut |c| {
            if let Concept::Var(v) = c {
                *out.entry(v.clone()).or_insert(0) += 1;
            }
        });
        out
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Concept::Top | Concept::Atom(_) => true,
            Concept::Var(_) => false,
            Concept::Exists(_, filler) => filler.is_ground(),
            Concept::Conj(conjuncts) => conjuncts.iter().all(Concept::is_ground),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Concept::size).sum::<usize>()
    }

    pub fn collect_signature(&self, sig: &mut Signature) {
        self.visit(&mut |c| match c {
            Concept::Atom(a) => {
                sig.concepts.insert(a.clone());
            }
            Concept::Exists(r, _) => {
                sig.roles.insert(r.clone());
            }
            _ => {}
        });
    }

    /// Replaces every variable by its image and renormalizes.
    pub fn substitute(&self, theta: &Substitution) -> Result<Concept> {
        Ok(match self {
            Concept::Top | Concept::Atom(_) => self.clone(),
            Concept::Var(v) => theta.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?.normalize(),
            Concept::Exists(role, filler) => Concept::Exists(role.clone(), Box::new(filler.substitute(theta)?)),
            Concept::Conj(conjuncts) => conjunction_of(
                conjuncts
                    .iter()
                    .map(|c| c.substitute(theta))
                    .collect::<Result<Vec<_>>>()?,
            ),
        })
    }

    /// `D↓H`: every instance of `self` with variables drawn from `base`.
    pub fn ground_instances(&self, base: &ConceptBase) -> Result<BTreeSet<Concept>> {
        let vars: Vec<VarName> = self.vars().into_iter().collect();
        if vars.is_empty() {
            return Ok(core::iter::once(self.clone()).collect());
        }
        let mut out = BTreeSet::new();
        for theta in Substitutions::new(&vars, base)? {
            out.insert(self.substitute(&theta)?);
        }
        Ok(out)
    }
}

/// Flattens nested conjunctions of already-normalized concepts.
fn conjunction_of(conjuncts: impl IntoIterator<Item = Concept>) -> Concept {
    let mut flat = Vec::new();
    for c in conjuncts {
        match c {
            Concept::Top => {}
            Concept::Conj(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    flat.sort();
    flat.dedup();
    match flat.len() {
        0 => Concept::Top,
        1 => flat.pop().unwrap(),
        _ => Concept::Conj(flat),
    }
}

/// General concept inclusion `lhs ⊑ rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Axiom {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Axiom {
    pub fn new(lhs: Concept, rhs: Concept) -> Axiom {
        Axiom { lhs: lhs.normalize(), rhs: rhs.normalize() }
    }

    pub fn normalize(&self) -> Axiom {
        Axiom::new(self.lhs.clone(), self.rhs.clone())
    }

    pub fn subconcepts(&self) -> BTreeSet<Concept> {
        let mut out = self.lhs.subconcepts();
        self.rhs.collect_subconcepts(&mut out);
        out
    }

    /// `(sub⁺, sub⁻)`. Without negation every rhs subterm is positive and
    /// every lhs subterm negative.
    pub fn polar_subconcepts(&self) -> (BTreeSet<Concept>, BTreeSet<Concept>) {
        (self.rhs.subconcepts(), self.lhs.subconcepts())
    }

    pub fn vars(&self) -> BTreeSet<VarName> {
        let mut vars = self.lhs.vars();
        vars.extend(self.rhs.vars());
        vars
    }

    pub fn is_ground(&self) -> bool {
        self.lhs.is_ground() && self.rhs.is_ground()
    }

    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }

    pub fn collect_signature(&self, sig: &mut Signature) {
        self.lhs.collect_signature(sig);
        self.rhs.collect_signature(sig);
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        self.collect_signature(&mut sig);
        sig
    }

    pub fn substitute(&self, theta: &Substitution) -> Result<Axiom> {
        Ok(Axiom { lhs: self.lhs.substitute(theta)?, rhs: self.rhs.substitute(theta)? })
    }

    /// `α↓H`: all instances with variables drawn from `base`.
    pub fn ground_instances(&self, base: &ConceptBase) -> Result<BTreeSet<Axiom>> {
        let vars: Vec<VarName> = self.vars().into_iter().collect();
        if vars.is_empty() {
            return Ok(core::iter::once(self.clone()).collect());
        }
        let mut out = BTreeSet::new();
        for theta in Substitutions::new(&vars, base)? {
            out.insert(self.substitute(&theta)?);
        }
        Ok(out)
    }
}

/// Finite set of axioms, kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ontology {
    axioms: BTreeSet<Axiom>,
}

impl Ontology {
    pub fn new() -> Ontology {
        Ontology::default()
    }

    /// Returns false when the axiom was already present.
    pub fn insert(&mut self, axiom: Axiom) -> bool {
        self.axioms.insert(axiom.normalize())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter()
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    pub fn subconcepts(&self) -> BTreeSet<Concept> {
        let mut out = BTreeSet::new();
        for axiom in &self.axioms {
            axiom.lhs.collect_subconcepts(&mut out);
            axiom.rhs.collect_subconcepts(&mut out);
        }
        out
    }

    /// `sub⁺(KB)`: subterms of every right-hand side.
    pub fn positive_subconcepts(&self) -> BTreeSet<Concept> {
        let mut out = BTreeSet::new();
        for axiom in &self.axioms {
            axiom.rhs.collect_subconcepts(&mut out);
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.axioms.iter().all(Axiom::is_ground)
    }

    pub fn size(&self) -> usize {
        self.axioms.iter().map(Axiom::size).sum()
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for axiom in &self.axioms {
            axiom.collect_signature(&mut sig);
        }
        sig
    }

    /// `KB↓H`.
    pub fn ground_instances(&self, base: &ConceptBase) -> Result<Ontology> {
        let mut out = Ontology::new();
        for axiom in &self.axioms {
            out.axioms.extend(axiom.ground_instances(base)?);
        }
        Ok(out)
    }
}

impl FromIterator<Axiom> for Ontology {
    fn from_iter<I: IntoIterator<Item = Axiom>>(iter: I) -> Self {
        let mut kb = Ontology::new();
        kb.extend(iter);
        kb
    }
}

impl Extend<Axiom> for Ontology {
    fn extend<I: IntoIterator<Item = Axiom>>(&mut self, iter: I) {
        for axiom in iter {
            self.insert(axiom);
        }
    }
}

impl<'a> IntoIterator for &'a Ontology {
    type Item = &'a Axiom;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Axiom>;

    fn into_iter(self) -> Self::IntoIter {
        self.axioms.iter()
    }
}

/// Concept and role names occurring in an expression.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Signature {
    pub concepts: BTreeSet<ConceptName>,
    pub roles: BTreeSet<RoleName>,
}

impl Signature {
    pub fn extend(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
    }
}

/// Map from variables to concepts, `[X₁/C₁, …]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Substitution(BTreeMap<VarName, Concept>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn with(mut self, var: impl Into<VarName>, image: Concept) -> Substitution {
        self.insert(var.into(), image);
        self
    }

    pub fn insert(&mut self, var: VarName, image: Concept) {
        self.0.insert(var, image.normalize());
    }

    pub fn get(&self, var: &VarName) -> Option<&Concept> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, &Concept)> {
        self.0.iter()
    }

    pub fn is_ground(&self) -> bool {
        self.0.values().all(Concept::is_ground)
    }
}

impl FromIterator<(VarName, Concept)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (VarName, Concept)>>(iter: I) -> Self {
        let mut theta = Substitution::new();
        for (var, image) in iter {
            theta.insert(var, image);
        }
        theta
    }
}

/// Odometer over all maps `vars → base`.
struct Substitutions<'a> {
    vars: &'a [VarName],
    base: Vec<&'a Concept>,
    digits: Vec<usize>,
    done: bool,
}

impl<'a> Substitutions<'a> {
    fn new(vars: &'a [VarName], base: &'a ConceptBase) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptyBase);
        }
        Ok(Substitutions { vars, base: base.iter().collect(), digits: alloc::vec![0; vars.len()], done: false })
    }
}

impl Iterator for Substitutions<'_> {
    type Item = Substitution;

    fn next(&mut self) -> Option<Substitution> {
        if self.done {
            return None;
        }
        let theta = Substitution(
            self.vars.iter().zip(&self.digits).map(|(v, &d)| (v.clone(), self.base[d].clone())).collect(),
        );
        self.done = true;
        for digit in self.digits.iter_mut().rev() {
            *digit += 1;
            if *digit < self.base.len() {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(theta)
    }
}

// Surface syntax: `exists r.C` binds a single atomic, existential or
// parenthesized filler, conjunction is written `and`.
impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("Top"),
            Concept::Atom(a) => write!(f, "{a}"),
            Concept::Var(v) => write!(f, "{v}"),
            Concept::Exists(role, filler) => {
                write!(f, "exists {role}.")?;
                match **filler {
                    Concept::Conj(_) => write!(f, "({filler})"),
                    _ => write!(f, "{filler}"),
                }
            }
            Concept::Conj(conjuncts) => {
                for (i, c) in conjuncts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" and ")?;
                    }
                    match c {
                        Concept::Conj(_) => write!(f, "({c})")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} SubClassOf {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axiom in &self.axioms {
            writeln!(f, "{axiom}")?;
        }
        Ok(())
    }
}

impl Concept {
    /// Canonical printed form; used for generated names.
    pub fn render(&self) -> alloc::string::String {
        self.to_string()
    }
}
