use std::collections::BTreeSet;

use proptest::prelude::*;

use effdual_core::duality::{dualize, exception_laws, state_laws};
use effdual_core::semantics::{extend, handle, lookup, update, ElemFunction, HandlerList};
use effdual_core::terms::Obj;
use effdual_core::{equiv, eval, type_of, Elem, FamilySignature, Term, Value};

const NAMES: [&str; 4] = ["i", "j", "k", "l"];

fn signature() -> impl Strategy<Value = FamilySignature> {
    prop::collection::vec(1usize..=4, 1..=4)
        .prop_map(|sizes| FamilySignature::new(NAMES.iter().copied().zip(sizes)).unwrap())
}

fn small_signature() -> impl Strategy<Value = FamilySignature> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_map(|sizes| FamilySignature::new(NAMES.iter().copied().zip(sizes)).unwrap())
}

fn sizes(sig: &FamilySignature) -> Vec<usize> {
    sig.entries().iter().map(|e| e.size()).collect()
}

proptest! {
    #[test]
    fn enumeration_counts(sig in signature()) {
        let sz = sizes(&sig);
        prop_assert_eq!(sig.enumerate_states().len(), sz.iter().product::<usize>());
        prop_assert_eq!(sig.enumerate_exceptions().len(), sz.iter().sum::<usize>());
    }

    #[test]
    fn enumerations_are_distinct_and_deterministic(sig in signature()) {
        let states = sig.enumerate_states();
        let excs = sig.enumerate_exceptions();
        prop_assert_eq!(states.iter().collect::<BTreeSet<_>>().len(), states.len());
        prop_assert_eq!(excs.iter().collect::<BTreeSet<_>>().len(), excs.len());
        prop_assert_eq!(&states, &sig.enumerate_states());
        prop_assert_eq!(&excs, &sig.enumerate_exceptions());
    }

    #[test]
    fn update_leaves_its_input_alone(sig in small_signature(), pick in any::<prop::sample::Index>(), a in 0usize..3) {
        let states = sig.enumerate_states();
        let s = pick.get(&states).clone();
        let snapshot = s.clone();
        for ix in sig.indices() {
            let a = Elem(a % sig.size(ix).unwrap());
            let r = update(&sig, ix, a, &s).unwrap();
            prop_assert_eq!(lookup(&sig, ix, &r).unwrap(), a);
            for other in sig.indices().filter(|&o| o != ix) {
                prop_assert_eq!(lookup(&sig, other, &r), lookup(&sig, other, &s));
            }
        }
        prop_assert_eq!(s, snapshot);
    }

    #[test]
    fn law_families_hold(sig in small_signature()) {
        for law in state_laws(&sig).iter().chain(&exception_laws(&sig)) {
            prop_assert!(law.check(&sig).unwrap().is_equal(), "{}", law.name);
        }
    }

    #[test]
    fn handling_fixes_incoming_exceptions(
        picks in prop::collection::vec((any::<prop::sample::Index>(), 0usize..3), 0..3),
        body in any::<prop::sample::Index>(),
    ) {
        let sig = FamilySignature::new([("i", 2), ("j", 3)]).unwrap();
        let y = Obj::with_exc(Obj::val("i"));
        let ys = y.elements(&sig).unwrap();
        let x = Obj::val("j");
        let f = ElemFunction::tabulate(&sig, x.clone(), y.clone(), |v| {
            let Value::Elem(Elem(a)) = v else { unreachable!() };
            Ok(ys[(body.index(ys.len()) + a) % ys.len()].clone())
        })
        .unwrap();
        let handlers: HandlerList = picks
            .iter()
            .map(|(ix, shift)| {
                let k = sig.indices().nth(ix.index(sig.len())).unwrap();
                let g = ElemFunction::tabulate(&sig, Obj::par(sig.name(k)), y.clone(), |v| {
                    let Value::Elem(Elem(a)) = v else { unreachable!() };
                    Ok(ys[(a + shift) % ys.len()].clone())
                })
                .unwrap();
                (k, g)
            })
            .collect();
        let h = handle(&sig, &f, &handlers).unwrap();
        for e in sig.enumerate_exceptions() {
            let v = Value::exceptional(e);
            prop_assert_eq!(h.get(&v), Some(&v));
        }
    }
}

fn library() -> (FamilySignature, Vec<Term>) {
    let sig = FamilySignature::new([("i", 2), ("j", 3)]).unwrap();
    let terms = state_laws(&sig)
        .into_iter()
        .chain(exception_laws(&sig))
        .flat_map(|l| [l.lhs, l.rhs])
        .collect();
    (sig, terms)
}

#[test]
fn eval_stays_in_the_codomain() {
    let (sig, terms) = library();
    for t in &terms {
        let ty = type_of(&sig, t).unwrap();
        for x in ty.domain.elements(&sig).unwrap() {
            let y = eval(&sig, t, &x).unwrap();
            assert!(ty.codomain.contains(&sig, &y), "{t} at {x:?} gave {y:?}");
        }
    }
}

#[test]
fn equiv_is_an_equivalence_on_the_library() {
    let (sig, terms) = library();
    let typed: Vec<_> = terms
        .iter()
        .map(|t| (t, type_of(&sig, t).unwrap()))
        .collect();
    let same = |a: &Term, b: &Term| equiv(&sig, a, b).map(|v| v.is_equal()).unwrap_or(false);
    for (a, ta) in &typed {
        assert!(same(a, a), "{a} not reflexive");
        for (b, tb) in typed.iter().filter(|(_, tb)| tb.same_as(ta)) {
            assert_eq!(same(a, b), same(b, a), "{a} / {b}");
            for (c, _) in typed.iter().filter(|(_, tc)| tc.same_as(tb)) {
                if same(a, b) && same(b, c) {
                    assert!(same(a, c), "{a} = {b} = {c}");
                }
            }
        }
    }
}

#[test]
fn empty_handle_term_is_the_propagating_extension() {
    let sig = FamilySignature::new([("i", 2), ("j", 3)]).unwrap();
    let bodies = [
        "raise[i]{val[j]}",
        "raise[j]{st}",
        "inl{par[i], exc}",
        "inl{val[i], exc} . lookup[i]",
        "recovery[j]",
        "case(inl{par[i], exc}, raise[j]{par[i]} . id{par[j]})",
    ];
    for src in bodies {
        let f = effdual_core::parse(src).unwrap();
        let ty = type_of(&sig, &f).unwrap();
        let table = ElemFunction::tabulate(&sig, ty.domain.clone(), ty.codomain.clone(), |x| {
            eval(&sig, &f, x)
        })
        .unwrap();
        let ext = extend(&sig, &table).unwrap();
        let h = Term::handle(f.clone(), vec![]);
        for (x, y) in ext.table() {
            assert_eq!(&eval(&sig, &h, x).unwrap(), y, "{src} at {x:?}");
        }
    }
}

fn contains_effect(t: &Term) -> bool {
    match t {
        Term::Raise(..) | Term::Handle(..) => true,
        Term::Compose(a, b) | Term::Pair(a, b) | Term::Case(a, b) => {
            contains_effect(a) || contains_effect(b)
        }
        _ => false,
    }
}

fn term() -> impl Strategy<Value = Term> {
    let ix = || prop_oneof![Just("i".to_string()), Just("j".to_string())];
    let obj = prop_oneof![
        Just(Obj::St),
        Just(Obj::Exc),
        Just(Obj::val("i")),
        Just(Obj::par("j"))
    ];
    let leaf = prop_oneof![
        obj.clone().prop_map(Term::Id),
        ix().prop_map(Term::Lookup),
        ix().prop_map(Term::Update),
        ix().prop_map(Term::Constructor),
        ix().prop_map(Term::Recovery),
        (ix(), obj.clone()).prop_map(|(i, o)| Term::Raise(i, o)),
        (obj.clone(), obj.clone()).prop_map(|(a, b)| Term::Prl(a, b)),
        (obj.clone(), obj).prop_map(|(a, b)| Term::Inr(a, b)),
    ];
    leaf.prop_recursive(4, 16, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::compose(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::pair(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::case(a, b)),
            (inner.clone(), prop::collection::vec((ix(), inner), 0..2))
                .prop_map(|(f, hs)| Term::handle(f, hs)),
        ]
    })
}

proptest! {
    #[test]
    fn dualize_rejects_exactly_the_effectful_terms(t in term()) {
        prop_assert_eq!(dualize(&t).is_err(), contains_effect(&t));
    }
}
