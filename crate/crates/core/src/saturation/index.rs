//! Completion-rule saturation over normal axioms.
//!
//! Rules, with `S(A)` the derived subsumers of `A` and `R(r)` the derived
//! `r`-links:
//!
//! * CR1: `A′ ∈ S(A)`, `A′ ⊑ B` gives `B ∈ S(A)`
//! * CR2: `A₁, A₂ ∈ S(A)`, `A₁ ⊓ A₂ ⊑ B` gives `B ∈ S(A)`
//! * CR3: `A′ ∈ S(A)`, `A′ ⊑ ∃r.B` gives `(A, B) ∈ R(r)`
//! * CR4: `(A, B) ∈ R(r)`, `B′ ∈ S(B)`, `∃r.B′ ⊑ A″` gives `A″ ∈ S(A)`
//!
//! Each derived fact is queued once and every rule fires from the newly
//! derived premise only, so the work is bounded by the number of facts times
//! the index fan-out.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::normal::{Basic, NormalAxiom};
use crate::concept::Concept;
use crate::names::{ConceptName, RoleName};

/// Saturated subsumer and link stores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationIndex {
    pub(crate) basics: Vec<Basic>,
    pub(crate) ids: BTreeMap<Basic, usize>,
    pub(crate) roles: Vec<RoleName>,
    pub(crate) subsumers: Vec<Bitset>,
    pub(crate) links: Vec<BTreeSet<(usize, usize)>>,
    pub(crate) name_table: BTreeMap<ConceptName, Concept>,
}

impl SaturationIndex {
    /// `S(A)`; `None` for names the index never saw.
    pub fn subsumers(&self, of: &Basic) -> Option<impl Iterator<Item = &Basic> + '_> {
        let id = *self.ids.get(of)?;
        Some(self.subsumers[id].iter().map(move |j| &self.basics[j]))
    }

    pub fn is_subsumed(&self, sub: &Basic, sup: &Basic) -> Option<bool> {
        if *sup == Basic::Top {
            return Some(true);
        }
        let a = *self.ids.get(sub)?;
        Some(self.ids.get(sup).is_some_and(|&b| self.subsumers[a].contains(b)))
    }

    /// `R(r)` as name pairs.
    pub fn links(&self, role: &RoleName) -> impl Iterator<Item = (&Basic, &Basic)> + '_ {
        let pairs = self.roles.iter().position(|r| r == role).map(|i| &self.links[i]);
        pairs.into_iter().flatten().map(move |&(a, b)| (&self.basics[a], &self.basics[b]))
    }

    pub fn names(&self) -> impl Iterator<Item = &Basic> + '_ {
        self.basics.iter()
    }

    /// Generated names and the concepts they define.
    pub fn name_table(&self) -> &BTreeMap<ConceptName, Concept> {
        &self.name_table
    }
}

/// Least fixpoint of CR1–CR4 with `S(A) = {A, Top}` initially, for every
/// name in `nf` plus `names`.
pub fn saturate<'a>(
    nf: impl IntoIterator<Item = &'a NormalAxiom>,
    names: impl IntoIterator<Item = Basic>,
) -> SaturationIndex {
    let mut builder = Builder::default();
    builder.intern(Basic::Top);
    let axioms: Vec<&NormalAxiom> = nf.into_iter().collect();
    for axiom in &axioms {
        builder.index(axiom);
    }
    for name in names {
        builder.intern(name);
    }
    builder.run();
    builder.finish()
}

#[derive(Default)]
struct Builder {
    basics: Vec<Basic>,
    ids: BTreeMap<Basic, usize>,
    roles: Vec<RoleName>,
    role_ids: BTreeMap<RoleName, usize>,
    told: Vec<Vec<usize>>,
    /// operand → (other operand, conclusion)
    conjunctions: Vec<Vec<(usize, usize)>>,
    /// premise → (role, filler)
    existentials: Vec<Vec<(usize, usize)>>,
    /// filler → (role, conclusion)
    restrictions: Vec<Vec<(usize, usize)>>,
    subsumers: Vec<Bitset>,
    subsumer_lists: Vec<Vec<usize>>,
    links: Vec<BTreeSet<(usize, usize)>>,
    /// per role: target → sources
    predecessors: Vec<BTreeMap<usize, Vec<usize>>>,
    queue: VecDeque<Fact>,
}

enum Fact {
    Subsumer(usize, usize),
    Link(usize, usize, usize),
}

impl Builder {
    fn intern(&mut self, basic: Basic) -> usize {
        if let Some(&id) = self.ids.get(&basic) {
            return id;
        }
        let id = self.basics.len();
        self.ids.insert(basic.clone(), id);
        self.basics.push(basic);
        self.told.push(Vec::new());
        self.conjunctions.push(Vec::new());
        self.existentials.push(Vec::new());
        self.restrictions.push(Vec::new());
        id
    }

    fn role(&mut self, role: &RoleName) -> usize {
        if let Some(&id) = self.role_ids.get(role) {
            return id;
        }
        let id = self.roles.len();
        self.role_ids.insert(role.clone(), id);
        self.roles.push(role.clone());
        self.links.push(BTreeSet::new());
        self.predecessors.push(BTreeMap::new());
        id
    }

    fn index(&mut self, axiom: &NormalAxiom) {
        match axiom {
            NormalAxiom::Subsumption(a, b) => {
                let (a, b) = (self.intern(a.clone()), self.intern(b.clone()));
                self.told[a].push(b);
            }
            NormalAxiom::Conjunction(a1, a2, b) => {
                let (a1, a2, b) = (self.intern(a1.clone()), self.intern(a2.clone()), self.intern(b.clone()));
                self.conjunctions[a1].push((a2, b));
                if a1 != a2 {
                    self.conjunctions[a2].push((a1, b));
                }
            }
            NormalAxiom::Existential(a, r, b) => {
                let (a, r, b) = (self.intern(a.clone()), self.role(r), self.intern(b.clone()));
                self.existentials[a].push((r, b));
            }
            NormalAxiom::Restriction(r, a, b) => {
                let (r, a, b) = (self.role(r), self.intern(a.clone()), self.intern(b.clone()));
                self.restrictions[a].push((r, b));
            }
        }
    }

    fn run(&mut self) {
        let n = self.basics.len();
        self.subsumers = vec![Bitset::new(n); n];
        self.subsumer_lists = vec![Vec::new(); n];
        let top = self.ids[&Basic::Top];
        for a in 0..n {
            self.queue.push_back(Fact::Subsumer(a, a));
            self.queue.push_back(Fact::Subsumer(a, top));
        }
        while let Some(fact) = self.queue.pop_front() {
            match fact {
                Fact::Subsumer(a, b) => self.add_subsumer(a, b),
                Fact::Link(r, a, b) => self.add_link(r, a, b),
            }
        }
    }

    fn add_subsumer(&mut self, a: usize, b: usize) {
        if !self.subsumers[a].insert(b) {
            return;
        }
        self.subsumer_lists[a].push(b);
        // CR1
        for &c in &self.told[b] {
            self.queue.push_back(Fact::Subsumer(a, c));
        }
        // CR2
        for &(other, c) in &self.conjunctions[b] {
            if self.subsumers[a].contains(other) {
                self.queue.push_back(Fact::Subsumer(a, c));
            }
        }
        // CR3
        for &(r, c) in &self.existentials[b] {
            self.queue.push_back(Fact::Link(r, a, c));
        }
        // CR4, new subsumer of a link target
        for &(r, c) in &self.restrictions[b] {
            if let Some(sources) = self.predecessors[r].get(&a) {
                for &p in sources {
                    self.queue.push_back(Fact::Subsumer(p, c));
                }
            }
        }
    }

    fn add_link(&mut self, r: usize, a: usize, b: usize) {
        if !self.links[r].insert((a, b)) {
            return;
        }
        self.predecessors[r].entry(b).or_default().push(a);
        // CR4, new link
        for &b2 in &self.subsumer_lists[b] {
            for &(r2, c) in &self.restrictions[b2] {
                if r2 == r {
                    self.queue.push_back(Fact::Subsumer(a, c));
                }
            }
        }
    }

    fn finish(self) -> SaturationIndex {
        SaturationIndex {
            basics: self.basics,
            ids: self.ids,
            roles: self.roles,
            subsumers: self.subsumers,
            links: self.links,
            name_table: BTreeMap::new(),
        }
    }
}

/// Fixed-size bitset over interned name ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bitset(Vec<u64>);

impl Bitset {
    fn new(bits: usize) -> Bitset {
        Bitset(vec![0; bits.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) -> bool {
        let (word, bit) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[word] & bit == 0;
        self.0[word] |= bit;
        fresh
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1u64 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(a: &str) -> Basic {
        Basic::Name(a.into())
    }

    #[test]
    fn transitivity() {
        let nf = [NormalAxiom::Subsumption(n("A"), n("B")), NormalAxiom::Subsumption(n("B"), n("C"))];
        let idx = saturate(&nf, []);
        assert_eq!(idx.is_subsumed(&n("A"), &n("C")), Some(true));
        assert_eq!(idx.is_subsumed(&n("C"), &n("A")), Some(false));
    }

    #[test]
    fn existential_then_restriction() {
        let nf = [
            NormalAxiom::Existential(n("A"), "r".into(), n("B")),
            NormalAxiom::Restriction("r".into(), n("B"), n("D")),
        ];
        let idx = saturate(&nf, []);
        assert_eq!(idx.is_subsumed(&n("A"), &n("D")), Some(true));
        assert_eq!(idx.links(&"r".into()).collect::<Vec<_>>(), [(&n("A"), &n("B"))]);
    }

    #[test]
    fn restriction_fires_on_later_subsumer_of_link_target() {
        let nf = [
            NormalAxiom::Existential(n("A"), "r".into(), n("B")),
            NormalAxiom::Subsumption(n("B"), n("C")),
            NormalAxiom::Restriction("r".into(), n("C"), n("D")),
        ];
        assert_eq!(saturate(&nf, []).is_subsumed(&n("A"), &n("D")), Some(true));
    }

    #[test]
    fn conjunction_rule() {
        let nf = [
            NormalAxiom::Subsumption(n("A"), n("B")),
            NormalAxiom::Subsumption(n("A"), n("C")),
            NormalAxiom::Conjunction(n("B"), n("C"), n("D")),
        ];
        let idx = saturate(&nf, []);
        assert_eq!(idx.is_subsumed(&n("A"), &n("D")), Some(true));
        assert_eq!(idx.is_subsumed(&n("B"), &n("D")), Some(false));
    }

    #[test]
    fn empty_input_only_initializes() {
        let idx = saturate(&[], [n("A"), n("B")]);
        let subs: Vec<_> = idx.subsumers(&n("A")).unwrap().cloned().collect();
        assert_eq!(subs.len(), 2);
        assert!(subs.contains(&n("A")) && subs.contains(&Basic::Top));
        assert_eq!(idx.is_subsumed(&n("A"), &n("B")), Some(false));
        assert_eq!(idx.is_subsumed(&n("Z"), &n("A")), None);
    }

    #[test]
    fn top_on_the_left_applies_everywhere() {
        let nf = [
            NormalAxiom::Subsumption(Basic::Top, n("B")),
            NormalAxiom::Restriction("r".into(), Basic::Top, n("C")),
            NormalAxiom::Existential(n("A"), "r".into(), n("D")),
        ];
        let idx = saturate(&nf, []);
        assert_eq!(idx.is_subsumed(&n("A"), &n("B")), Some(true));
        assert_eq!(idx.is_subsumed(&n("A"), &n("C")), Some(true));
        assert_eq!(idx.is_subsumed(&n("D"), &n("C")), Some(false));
    }
}
