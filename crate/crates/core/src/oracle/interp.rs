use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::names::{ConceptName, RoleName};

/// Subset of a finite domain, as a bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElemSet {
    words: SmallVec<[u64; 2]>,
}

impl ElemSet {
    pub fn empty(domain_size: usize) -> ElemSet {
        ElemSet { words: smallvec![0; domain_size.div_ceil(64).max(1)] }
    }

    pub fn full(domain_size: usize) -> ElemSet {
        let mut set = ElemSet::empty(domain_size);
        for i in 0..domain_size {
            set.insert(i);
        }
        set
    }

    pub fn singleton(domain_size: usize, elem: usize) -> ElemSet {
        let mut set = ElemSet::empty(domain_size);
        set.insert(elem);
        set
    }

    /// Elements are the set bits of `mask`; needs `domain_size ≤ 64`.
    pub fn from_mask(domain_size: usize, mask: u64) -> ElemSet {
        debug_assert!(domain_size <= 64);
        let mut set = ElemSet::empty(domain_size);
        set.words[0] = mask;
        set
    }

    pub fn from_elems(domain_size: usize, elems: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut set = ElemSet::empty(domain_size);
        for e in elems {
            set.insert(e);
        }
        set
    }

    pub fn insert(&mut self, elem: usize) {
        self.words[elem / 64] |= 1 << (elem % 64);
    }

    pub fn contains(&self, elem: usize) -> bool {
        self.words.get(elem / 64).is_some_and(|w| w & (1 << (elem % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit)
            })
        })
    }
}

/// Finite interpretation with named elements. Names without an entry
/// denote the empty extension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteInterpretation {
    domain: Vec<Arc<str>>,
    concepts: BTreeMap<ConceptName, ElemSet>,
    /// Successor sets per source element.
    roles: BTreeMap<RoleName, Vec<ElemSet>>,
}

impl FiniteInterpretation {
    /// Duplicate element names are merged; the domain must be nonempty.
    pub fn new<S: Into<Arc<str>>>(domain: impl IntoIterator<Item = S>) -> Result<FiniteInterpretation> {
        let mut elems: Vec<Arc<str>> = Vec::new();
        for e in domain {
            let e = e.into();
            if !elems.contains(&e) {
                elems.push(e);
            }
        }
        if elems.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(FiniteInterpretation { domain: elems, concepts: BTreeMap::new(), roles: BTreeMap::new() })
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> + '_ {
        self.domain.iter().map(|e| &**e)
    }

    pub fn element_name(&self, elem: usize) -> &str {
        &self.domain[elem]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.domain.iter().position(|e| &**e == name)
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.element_index(name).ok_or_else(|| Error::UnknownElement(name.into()))
    }

    pub fn add_concept_member(&mut self, name: &ConceptName, elem: usize) {
        assert!(elem < self.domain.len(), "element index out of range");
        let n = self.domain.len();
        self.concepts.entry(name.clone()).or_insert_with(|| ElemSet::empty(n)).insert(elem);
    }

    /// Registers `name` with an empty extension if it has none yet.
    pub fn declare_concept(&mut self, name: &ConceptName) {
        let n = self.domain.len();
        self.concepts.entry(name.clone()).or_insert_with(|| ElemSet::empty(n));
    }

    pub fn declare_role(&mut self, role: &RoleName) {
        let n = self.domain.len();
        self.roles.entry(role.clone()).or_insert_with(|| alloc::vec![ElemSet::empty(n); n]);
    }

    pub fn add_role_pair(&mut self, role: &RoleName, from: usize, to: usize) {
        assert!(from < self.domain.len() && to < self.domain.len(), "element index out of range");
        self.declare_role(role);
        self.roles.get_mut(role).unwrap()[from].insert(to);
    }

    pub fn concept_ext(&self, name: &ConceptName) -> ElemSet {
        self.concepts.get(name).cloned().unwrap_or_else(|| ElemSet::empty(self.domain.len()))
    }

    pub fn successors(&self, role: &RoleName, from: usize) -> Option<&ElemSet> {
        self.roles.get(role).map(|succ| &succ[from])
    }

    pub fn role_pairs(&self, role: &RoleName) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.roles
            .get(role)
            .into_iter()
            .flat_map(|succ| succ.iter().enumerate().flat_map(|(a, set)| set.iter().map(move |b| (a, b))))
    }

    pub fn concept_names(&self) -> impl Iterator<Item = &ConceptName> + '_ {
        self.concepts.keys()
    }

    pub fn role_names(&self) -> impl Iterator<Item = &RoleName> + '_ {
        self.roles.keys()
    }
}

/// Prints the `*.model` text format.
impl fmt::Display for FiniteInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("domain:")?;
        for e in &self.domain {
            write!(f, " {e}")?;
        }
        writeln!(f)?;
        for (name, ext) in &self.concepts {
            write!(f, "{name}:")?;
            for e in ext.iter() {
                write!(f, " {}", self.domain[e])?;
            }
            writeln!(f)?;
        }
        for role in self.roles.keys() {
            write!(f, "{role}:")?;
            for (a, b) in self.role_pairs(role) {
                write!(f, " ({},{})", self.domain[a], self.domain[b])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn elem_set_basics() {
        let mut s = ElemSet::empty(70);
        s.insert(3);
        s.insert(65);
        assert!(s.contains(65) && s.contains(3) && !s.contains(4));
        assert_eq!(s.iter().collect::<Vec<_>>(), [3, 65]);
        assert_eq!(s.len(), 2);
        assert!(s.is_subset(&ElemSet::full(70)));
        assert!(!ElemSet::full(70).is_subset(&s));
        assert_eq!(ElemSet::from_mask(3, 0b110).iter().collect::<Vec<_>>(), [1, 2]);
    }

    #[test]
    fn empty_domain_is_rejected() {
        assert_eq!(FiniteInterpretation::new(Vec::<&str>::new()), Err(Error::EmptyDomain));
    }

    #[test]
    fn prints_model_format() {
        let mut i = FiniteInterpretation::new(["a", "b"]).unwrap();
        i.add_concept_member(&"A".into(), 0);
        i.add_role_pair(&"r".into(), 0, 1);
        i.add_role_pair(&"r".into(), 0, 1);
        assert_eq!(i.to_string(), "domain: a b\nA: a\nr: (a,b)\n");
        assert_eq!(i.role_pairs(&"r".into()).collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
