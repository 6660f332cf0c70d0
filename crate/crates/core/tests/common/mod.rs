#![allow(dead_code)]

use elx_core::{Axiom, Concept, ElemSet, FiniteInterpretation, Ontology, Valuation};
use proptest::prelude::*;

pub const NAMES: [&str; 3] = ["A", "B", "C"];
pub const ROLES: [&str; 2] = ["r", "s"];
pub const VARS: [&str; 2] = ["X", "Y"];

pub fn leaf(with_vars: bool) -> BoxedStrategy<Concept> {
    let mut options: Vec<BoxedStrategy<Concept>> = vec![
        Just(Concept::Top).boxed(),
        proptest::sample::select(&NAMES[..]).prop_map(Concept::atom).boxed(),
    ];
    if with_vars {
        options.push(proptest::sample::select(&VARS[..]).prop_map(Concept::var).boxed());
    }
    proptest::strategy::Union::new(options).boxed()
}

pub fn concept(depth: u32, with_vars: bool) -> BoxedStrategy<Concept> {
    leaf(with_vars)
        .prop_recursive(depth, 24, 3, |inner| {
            prop_oneof![
                (proptest::sample::select(&ROLES[..]), inner.clone()).prop_map(|(r, c)| Concept::exists(r, c)),
                proptest::collection::vec(inner, 2..=3).prop_map(Concept::and),
            ]
        })
        .boxed()
}

pub fn ground_concept(depth: u32) -> BoxedStrategy<Concept> {
    concept(depth, false)
}

/// Replaces every variable occurrence after the first by `A`.
pub fn linearize(c: &Concept) -> Concept {
    fn go(c: &Concept, seen: &mut Vec<String>) -> Concept {
        match c {
            Concept::Var(v) => {
                if seen.iter().any(|s| s == v.as_str()) {
                    Concept::atom("A")
                } else {
                    seen.push(v.as_str().to_string());
                    c.clone()
                }
            }
            Concept::Exists(r, f) => Concept::exists(r.clone(), go(f, seen)),
            Concept::Conj(cs) => Concept::and(cs.iter().map(|x| go(x, seen)).collect::<Vec<_>>()),
            _ => c.clone(),
        }
    }
    go(c, &mut Vec::new())
}

/// Keeps a variable only as the direct filler of an existential and only
/// if it is in `allowed`; other variables become `B`. With `gelt`, fillers
/// that are neither a variable nor ground are grounded.
pub fn make_safe(c: &Concept, allowed: &[String], gelt: bool) -> Concept {
    fn ground(c: &Concept) -> Concept {
        match c {
            Concept::Var(_) => Concept::atom("B"),
            Concept::Exists(r, f) => Concept::exists(r.clone(), ground(f)),
            Concept::Conj(cs) => Concept::and(cs.iter().map(ground).collect::<Vec<_>>()),
            _ => c.clone(),
        }
    }
    fn go(c: &Concept, allowed: &[String], gelt: bool) -> Concept {
        match c {
            Concept::Var(_) => Concept::atom("B"),
            Concept::Exists(r, f) => match &**f {
                Concept::Var(v) if allowed.iter().any(|a| a == v.as_str()) => c.clone(),
                other if gelt => Concept::exists(r.clone(), ground(other)),
                other => Concept::exists(r.clone(), go(other, allowed, gelt)),
            },
            Concept::Conj(cs) => Concept::and(cs.iter().map(|x| go(x, allowed, gelt)).collect::<Vec<_>>()),
            _ => c.clone(),
        }
    }
    go(c, allowed, gelt)
}

fn shaped_axiom(lhs: Concept, rhs: Concept, link: Option<&str>, gelt: bool) -> Axiom {
    let lhs = linearize(&lhs);
    let vars: Vec<String> = lhs.vars().iter().map(|v| v.as_str().to_string()).collect();
    let mut rhs = make_safe(&rhs, &vars, gelt);
    if let (Some(role), Some(v)) = (link, vars.first()) {
        rhs = Concept::and([rhs, Concept::exists(role, Concept::var(v.as_str()))]);
    }
    Axiom::new(lhs, rhs)
}

fn axiom_parts() -> impl Strategy<Value = (Concept, Concept, Option<&'static str>)> {
    (concept(3, true), concept(2, true), proptest::option::weighted(0.7, proptest::sample::select(&ROLES[..])))
}

pub fn gelo_axiom() -> BoxedStrategy<Axiom> {
    axiom_parts().prop_map(|(l, r, link)| shaped_axiom(l, r, link, false)).boxed()
}

pub fn gelt_axiom() -> BoxedStrategy<Axiom> {
    axiom_parts().prop_map(|(l, r, link)| shaped_axiom(l, r, link, true)).boxed()
}

pub fn gelt_kb(max_axioms: usize) -> BoxedStrategy<Ontology> {
    proptest::collection::vec(gelt_axiom(), 1..=max_axioms).prop_map(|v| v.into_iter().collect()).boxed()
}

pub fn ground_axiom() -> BoxedStrategy<Axiom> {
    (ground_concept(2), ground_concept(2)).prop_map(|(l, r)| Axiom::new(l, r)).boxed()
}

/// Interpretation over `a, b, …` with up to `max_n` elements, signature
/// `NAMES` and `ROLES`.
pub fn interpretation(max_n: usize) -> BoxedStrategy<FiniteInterpretation> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0u64..(1 << n), NAMES.len()),
                proptest::collection::vec(0u64..(1 << (n * n)), ROLES.len()),
            )
        })
        .prop_map(|(n, cs, rs)| build_interpretation(n, &cs, &rs))
        .boxed()
}

pub fn build_interpretation(n: usize, concepts: &[u64], roles: &[u64]) -> FiniteInterpretation {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut i = FiniteInterpretation::new(names).unwrap();
    for (name, mask) in NAMES.iter().zip(concepts) {
        i.declare_concept(&(*name).into());
        for d in 0..n {
            if mask >> d & 1 == 1 {
                i.add_concept_member(&(*name).into(), d);
            }
        }
    }
    for (role, mask) in ROLES.iter().zip(roles) {
        i.declare_role(&(*role).into());
        for a in 0..n {
            for b in 0..n {
                if mask >> (a * n + b) & 1 == 1 {
                    i.add_role_pair(&(*role).into(), a, b);
                }
            }
        }
    }
    i
}

pub fn valuation_for(n: usize, masks: &[u64]) -> Valuation {
    let mut v = Valuation::new();
    for (var, mask) in VARS.iter().zip(masks) {
        v.insert((*var).into(), ElemSet::from_mask(n, mask & ((1 << n) - 1)));
    }
    v
}

/// Interpretation together with a valuation of `VARS`.
pub fn interpretation_and_valuation(max_n: usize) -> BoxedStrategy<(FiniteInterpretation, Valuation)> {
    interpretation(max_n)
        .prop_flat_map(|i| {
            let n = i.domain_size();
            (Just(i), proptest::collection::vec(0u64..(1 << n), VARS.len()))
        })
        .prop_map(|(i, masks)| {
            let n = i.domain_size();
            (i, valuation_for(n, &masks))
        })
        .boxed()
}

/// Every singleton valuation below `eta` on `vars`.
pub fn singletons_below(eta: &Valuation, vars: &[elx_core::VarName], n: usize) -> Vec<Valuation> {
    let mut out = vec![Valuation::new()];
    for v in vars {
        let set = eta.get(v).cloned().unwrap_or_else(|| ElemSet::empty(n));
        let mut next = Vec::new();
        for partial in &out {
            for e in set.iter() {
                let mut p = partial.clone();
                p.insert(v.clone(), ElemSet::singleton(n, e));
                next.push(p);
            }
        }
        out = next;
    }
    out
}
