mod common;

use common::*;
use elx_core::entailment::{check_schema, decide, DecideOptions, Status};
use elx_core::expansion::{expansion_base, gelt_closed_form, v1_normalize};
use elx_core::oracle::{find_violation, refute_entailment, satisfies_so_kb, Mode, DEFAULT_STATE_CEILING};
use elx_core::saturation::{normalize_ontology, saturate, Basic};
use elx_core::{canonical_interpretation, entails_ground, Axiom, Concept, Ontology, Substitution};
use proptest::prelude::*;

/// Largest domain the refuter can cover for this signature in reasonable time.
fn refute_domain(kb: &Ontology, goal: &Axiom) -> usize {
    let mut sig = kb.signature();
    goal.collect_signature(&mut sig);
    let bits = |n: usize| n * sig.concepts.len() + n * n * sig.roles.len();
    (1..=3).take_while(|&n| bits(n) <= 20).last().unwrap_or(1)
}

fn goal_strategy() -> BoxedStrategy<Axiom> {
    prop_oneof![
        3 => ground_axiom(),
        1 => (ground_concept(1), proptest::sample::select(&ROLES[..]))
            .prop_map(|(c, r)| Axiom::new(Concept::and([c, Concept::var("X")]), Concept::exists(r, Concept::var("X")))),
    ]
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn saturation_is_reflexive_and_transitive(kb in proptest::collection::vec(ground_axiom(), 1..5)) {
        let kb: Ontology = kb.into_iter().collect();
        let nf = normalize_ontology(&kb).unwrap();
        let names: Vec<Basic> = NAMES.iter().map(|n| Basic::Name((*n).into())).collect();
        let index = saturate(&nf.axioms, names.clone());
        for a in &names {
            prop_assert_eq!(index.is_subsumed(a, a), Some(true));
            prop_assert_eq!(index.is_subsumed(a, &Basic::Top), Some(true));
            for b in &names {
                for c in &names {
                    if index.is_subsumed(a, b) == Some(true) && index.is_subsumed(b, c) == Some(true) {
                        prop_assert_eq!(index.is_subsumed(a, c), Some(true));
                    }
                }
            }
        }
    }

    #[test]
    fn ground_reasoning_agrees_with_models(kb in proptest::collection::vec(ground_axiom(), 1..4), goal in ground_axiom()) {
        let kb: Ontology = kb.into_iter().collect();
        let entailed = entails_ground(&kb, &goal).unwrap();
        let domain = refute_domain(&kb, &goal).min(2);
        let counter = refute_entailment(&kb, &goal, domain, DEFAULT_STATE_CEILING).unwrap();
        if entailed {
            prop_assert!(counter.is_none());
        } else {
            let mut base = elx_core::expansion::h0(&goal).unwrap();
            base.extend(elx_core::expansion::positive_fillers(&kb));
            let canon = canonical_interpretation(&kb, &base).unwrap();
            prop_assert_eq!(satisfies_so_kb(&canon.interpretation, &kb).unwrap(), None);
            prop_assert!(find_violation(&canon.interpretation, &goal, Mode::All).unwrap().is_some());
        }
    }

    #[test]
    fn gelt_expansion_closes_in_two_levels(kb in gelt_kb(4), goal in ground_axiom()) {
        let trace = expansion_base(&kb, &goal, 10).unwrap();
        prop_assert!(trace.fixpoint_reached);
        prop_assert!(trace.levels.len() <= 3);
        prop_assert_eq!(trace.final_base(), &gelt_closed_form(&kb, &goal).unwrap());
        prop_assert!(trace.final_base().len() <= kb.size() + goal.size());
        for w in trace.levels.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn gelo_expansion_is_monotone(a in gelo_axiom(), goal in ground_axiom()) {
        let kb: Ontology = [a].into_iter().collect();
        let trace = expansion_base(&kb, &goal, 3).unwrap();
        for w in trace.levels.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn entailed_verdicts_have_no_small_countermodel(kb in gelt_kb(3), goal in goal_strategy()) {
        let v = decide(&kb, &goal, DecideOptions::default()).unwrap();
        prop_assert!(v.definitive);
        let domain = refute_domain(&kb, &goal);
        let counter = refute_entailment(&kb, &goal, domain, DEFAULT_STATE_CEILING).unwrap();
        if v.status == Status::Entailed {
            prop_assert!(counter.is_none(), "countermodel {:?}", counter);
        }
        if counter.is_some() {
            prop_assert_eq!(v.status, Status::NotEntailed);
        }
    }

    #[test]
    fn not_entailed_verdicts_have_a_canonical_countermodel(kb in gelt_kb(4), goal in goal_strategy()) {
        let v = decide(&kb, &goal, DecideOptions::default()).unwrap();
        if v.status == Status::NotEntailed {
            let base = v.levels.last().unwrap();
            let canon = canonical_interpretation(&v.grounding, base).unwrap();
            for axiom in &kb {
                prop_assert_eq!(find_violation(&canon.interpretation, axiom, Mode::Singleton).unwrap(), None, "{}", axiom);
            }
            prop_assert!(find_violation(&canon.interpretation, &v.goal, Mode::All).unwrap().is_some());
        }
    }

    #[test]
    fn entailment_persists_at_higher_levels(kb in gelt_kb(4), goal in ground_axiom()) {
        let v = decide(&kb, &goal, DecideOptions::default()).unwrap();
        if v.status == Status::Entailed {
            let trace = expansion_base(&kb, &goal, 10).unwrap();
            for base in trace.levels.iter().skip(v.level) {
                prop_assert!(entails_ground(&kb.ground_instances(base).unwrap(), &goal).unwrap());
            }
        }
    }

    #[test]
    fn entailed_schema_goals_hold_for_every_instance(kb in gelt_kb(3), goal in goal_strategy()) {
        let v = decide(&kb, &goal, DecideOptions::default()).unwrap();
        if v.status == Status::Entailed && !goal.is_ground() {
            for c in v.levels.last().unwrap() {
                let theta = Substitution::new().with("X", c.clone());
                let instance = goal.substitute(&theta).unwrap();
                prop_assert_eq!(decide(&kb, &instance, DecideOptions::default()).unwrap().status, Status::Entailed);
            }
            prop_assert!(check_schema(&kb, &v.goal, v.levels.last().unwrap()).unwrap());
        }
    }

    #[test]
    fn single_variable_rewrite_keeps_models(kb in gelt_kb(3), i in interpretation(2)) {
        let rewritten = v1_normalize(&kb).unwrap();
        for axiom in &rewritten {
            prop_assert!(axiom.vars().len() <= 1);
        }
        prop_assert_eq!(
            satisfies_so_kb(&i, &kb).unwrap().is_none(),
            satisfies_so_kb(&i, &rewritten).unwrap().is_none()
        );
    }

    #[test]
    fn single_variable_rewrite_keeps_verdicts(kb in gelt_kb(3), goal in goal_strategy()) {
        let plain = decide(&kb, &goal, DecideOptions::default()).unwrap();
        let opts = DecideOptions { single_variable: true, ..DecideOptions::default() };
        prop_assert_eq!(decide(&kb, &goal, opts).unwrap().status, plain.status);
    }
}
