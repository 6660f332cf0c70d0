mod common;

use common::*;
use elx_core::{classify, Axiom, Concept, ConceptBase, Substitution};
use proptest::prelude::*;

proptest! {
    #[test]
    fn normalize_is_idempotent_and_canonical(c in concept(4, true)) {
        let n = c.normalize();
        prop_assert!(n.is_canonical());
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn substitution_commutes_with_normalization(
        c in concept(3, true),
        x in ground_concept(2),
        y in ground_concept(2),
    ) {
        let theta = Substitution::new().with("X", x).with("Y", y);
        let raw = Concept::Conj(vec![c.clone(), c.clone()]);
        prop_assert_eq!(raw.substitute(&theta).unwrap(), c.normalize().substitute(&theta).unwrap());
        prop_assert!(c.substitute(&theta).unwrap().is_ground());
    }

    #[test]
    fn grounding_size_is_bounded(a in gelo_axiom(), base in proptest::collection::btree_set(ground_concept(2), 1..4)) {
        let instances = a.ground_instances(&base).unwrap();
        let k = a.vars().len() as u32;
        prop_assert!(instances.len() <= base.len().pow(k).max(1));
        prop_assert!(instances.iter().all(Axiom::is_ground));
    }

    #[test]
    fn polarity_partitions_subconcepts(a in gelo_axiom()) {
        let (pos, neg) = a.polar_subconcepts();
        let all: std::collections::BTreeSet<_> = pos.union(&neg).cloned().collect();
        prop_assert_eq!(all, a.subconcepts());
    }

    #[test]
    fn generated_shapes_land_in_their_fragment(a in gelo_axiom(), b in gelt_axiom()) {
        prop_assert!(classify(&a).is_gelo);
        let rb = classify(&b);
        prop_assert!(rb.is_gelt && rb.is_gelo);
        prop_assert!(rb.violations.is_empty());
    }
}

#[test]
fn single_instance_over_singleton_base() {
    let base: ConceptBase = [Concept::atom("A")].into_iter().collect();
    let a = Axiom::new(Concept::var("X"), Concept::exists("r", Concept::var("X")));
    assert_eq!(a.ground_instances(&base).unwrap().len(), 1);
}
