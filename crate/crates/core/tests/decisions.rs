mod common;

use common::*;
use hypgrp_core::decisions::*;
use hypgrp_core::{BuildOptions, Error, HyperbolicContext, Word};
use proptest::prelude::*;

fn ws(ctx: &HyperbolicContext, items: &[&str]) -> Vec<Word> {
    items.iter().map(|s| w(ctx, s)).collect()
}

fn fmt_all(ctx: &HyperbolicContext, words: &[Word]) -> Vec<String> {
    words.iter().map(|x| ctx.format(x)).collect()
}

#[test]
fn classification() {
    let d = dinf();
    assert_eq!(classify_element(d, &w(d, "s")).unwrap(), ElementClass::Finite { order: 2 });
    assert!(matches!(classify_element(d, &w(d, "st")).unwrap(), ElementClass::InfiniteOrder { .. }));
    assert_eq!(classify_element(f2(), &Word::empty()).unwrap(), ElementClass::Finite { order: 1 });
    assert_eq!(classify_element(z3(), &w(z3(), "aa")).unwrap(), ElementClass::Finite { order: 3 });
}

#[test]
fn torsion_classes() {
    assert_eq!(fmt_all(f2(), &torsion_class_representatives(f2()).unwrap()), ["ε"]);
    assert_eq!(fmt_all(dinf(), &torsion_class_representatives(dinf()).unwrap()), ["ε", "s", "t"]);
    assert_eq!(torsion_class_representatives(z3()).unwrap().len(), 3);
}

#[test]
fn conjugacy_into_cyclic_subgroups() {
    let (f, d) = (f2(), dinf());
    assert_eq!(conjugate_into_cyclic(f, &w(f, "ba"), &w(f, "ab")).unwrap(), vec![1]);
    assert!(conjugate_into_cyclic(f, &w(f, "a"), &w(f, "b")).unwrap().is_empty());
    let mut got = conjugate_into_cyclic(d, &w(d, "ts"), &w(d, "st")).unwrap();
    got.sort();
    assert_eq!(got, vec![-1, 1]);
    assert!(matches!(conjugate_into_cyclic(d, &w(d, "st"), &w(d, "s")), Err(Error::Torsion { order: 2 })));
}

#[test]
fn cyclic_membership() {
    let (f, d) = (f2(), dinf());
    assert_eq!(member_of_cyclic(f, &w(f, "aaa"), &w(f, "a")).unwrap(), Some(3));
    assert_eq!(member_of_cyclic(f, &w(f, "ab"), &w(f, "a")).unwrap(), None);
    assert_eq!(member_of_cyclic(d, &w(d, "stst"), &w(d, "st")).unwrap(), Some(2));
}

#[test]
fn virtually_cyclic_membership() {
    let (f, d) = (f2(), dinf());
    assert!(member_of_virtually_z(d, &w(d, "t"), &ws(d, &["", "s"]), &w(d, "st")).unwrap());
    let reps = ws(f, &["", "a"]);
    assert!(member_of_virtually_z(f, &w(f, "aaa"), &reps, &w(f, "aa")).unwrap());
    assert!(!member_of_virtually_z(f, &w(f, "b"), &reps, &w(f, "aa")).unwrap());
    assert!(member_of_virtually_z(f, &w(f, "b"), &ws(f, &["a"]), &w(f, "aa")).is_err());
}

#[test]
fn double_cosets() {
    let f = f2();
    let p = |s: &str| w(f, s);
    assert_eq!(double_coset_decide(f, &p("ab"), &p("b"), &p("a"), &p("b")).unwrap(), Some((1, 0)));
    assert_eq!(double_coset_decide(f, &p("ba"), &p("ab"), &p("a"), &p("a")).unwrap(), Some((-1, 1)));
    assert_eq!(double_coset_decide(f, &p("b"), &p("a"), &p("a"), &p("a")).unwrap(), None);
}

#[test]
fn commensurability() {
    let (f, d) = (f2(), dinf());
    let c = commensurate_cyclic(f, &w(f, "a"), &w(f, "aa")).unwrap().unwrap();
    assert_eq!((c.n1, c.n2, c.witness.conjugator.len()), (2, 1, 0));
    assert_eq!(commensurate_cyclic(f, &w(f, "a"), &w(f, "b")).unwrap(), None);
    let c = commensurate_cyclic(d, &w(d, "st"), &w(d, "ts")).unwrap().unwrap();
    assert_eq!((c.n1, c.n2), (1, 1));
    let g = &c.witness.conjugator;
    assert!(d.are_equal(&w(d, "st").conjugate_by(g), &w(d, "ts")));
}

#[test]
fn malnormality() {
    let (f, d) = (f2(), dinf());
    assert_eq!(malnormal_cyclic(f, &w(f, "a")).unwrap(), MalnormalityVerdict::Malnormal);
    assert_eq!(malnormal_cyclic(f, &w(f, "aa")).unwrap(), MalnormalityVerdict::Witness { g: w(f, "a"), p: 1, q: 1 });
    assert_eq!(malnormal_cyclic(d, &w(d, "st")).unwrap(), MalnormalityVerdict::Witness { g: w(d, "s"), p: 1, q: -1 });
}

#[test]
fn family_malnormality() {
    let f = f2();
    assert_eq!(malnormal_family(f, &ws(f, &["a", "b"])).unwrap(), FamilyVerdict::Malnormal);
    assert_eq!(
        malnormal_family(f, &ws(f, &["a", "baB"])).unwrap_or_else(|e| panic!("{e}")),
        FamilyVerdict::CrossWitness { i: 0, j: 1, g: w(f, "b"), p: 1, q: 1 }
    );
    match malnormal_family(f, &ws(f, &["a", "aa"])).unwrap() {
        FamilyVerdict::CrossWitness { i: 0, j: 1, g, p: 2, q: 1 } => assert!(g.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn centralizers_and_normalizers() {
    let (f, d) = (f2(), dinf());
    let eps = vec![Word::empty()];
    assert_eq!(centralizer_cyclic(f, &w(f, "a")).unwrap().representatives, eps);
    assert_eq!(centralizer_cyclic(d, &w(d, "st")).unwrap().representatives, eps);
    assert_eq!(centralizer_cyclic(f, &w(f, "ab")).unwrap().representatives, eps);
    assert_eq!(fmt_all(d, &normalizer_cyclic(d, &w(d, "st")).unwrap().representatives), ["ε", "s"]);
    assert_eq!(normalizer_cyclic(f, &w(f, "a")).unwrap().representatives, eps);
    assert_eq!(normalizer_cyclic(f, &w(f, "ab")).unwrap().representatives, eps);
}

#[test]
fn roots_and_maximality() {
    let (f, d) = (f2(), dinf());
    let show = |ctx: &HyperbolicContext, rs: Vec<(Word, u64)>| -> Vec<(String, u64)> {
        rs.into_iter().map(|(r, e)| (ctx.format(&r), e)).collect()
    };
    assert_eq!(
        show(f, roots(f, &w(f, "aaaa")).unwrap()),
        [("a".to_string(), 4), ("aa".to_string(), 2), ("aaaa".to_string(), 1)]
    );
    assert_eq!(show(f, roots(f, &w(f, "ab")).unwrap()), [("ab".to_string(), 1)]);
    assert_eq!(show(d, roots(d, &w(d, "stst")).unwrap()), [("st".to_string(), 2), ("stst".to_string(), 1)]);
    assert!(maximal_cyclic(f, &w(f, "a")).unwrap());
    assert!(!maximal_cyclic(f, &w(f, "aa")).unwrap());
    assert!(maximal_cyclic(d, &w(d, "st")).unwrap());
}

#[test]
fn centralizers_of_subgroups() {
    let (f, d) = (f2(), dinf());
    assert_eq!(
        centralizer_fg(f, &ws(f, &["a", "b"]), 4).unwrap(),
        CentralizerResult::Finite { elements: vec![Word::empty()] }
    );
    match centralizer_fg(f, &ws(f, &["aa", "aaa"]), 4).unwrap() {
        CentralizerResult::VirtuallyZ { transversal } => {
            assert_eq!(transversal.base, w(f, "a"));
            assert_eq!(transversal.representatives, vec![Word::empty()]);
        }
        other => panic!("{other:?}"),
    }
    match centralizer_fg(d, &ws(d, &["st"]), 4).unwrap() {
        CentralizerResult::VirtuallyZ { transversal } => {
            assert_eq!(transversal.base, w(d, "st"));
            assert_eq!(transversal.representatives, vec![Word::empty()]);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(centralizer_fg(d, &ws(d, &["s"]), 4), Err(Error::NoInfiniteOrder { search_len: 4 })));
}

#[test]
fn centers() {
    let finite = CentralizerResult::Finite { elements: vec![Word::empty()] };
    assert_eq!(center(f2(), 4).unwrap(), finite);
    assert_eq!(center(dinf(), 4).unwrap(), finite);
    match center(z(), 4).unwrap() {
        CentralizerResult::VirtuallyZ { transversal } => {
            assert_eq!(transversal.base, w(z(), "a"));
            assert_eq!(transversal.representatives, vec![Word::empty()]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn small_cancellation_smoke() {
    let s = sigma2();
    assert!(matches!(classify_element(s, &w(s, "ab")).unwrap(), ElementClass::InfiniteOrder { .. }));
    let capped = load_with("sigma2", BuildOptions { ball_vertex_cap: 20_000, ..BuildOptions::default() });
    assert!(matches!(torsion_class_representatives(&capped), Err(Error::BallOverflow { radius: 33, cap: 20_000 })));
    assert_eq!(member_of_cyclic(s, &w(s, "ababab"), &w(s, "ab")).unwrap(), Some(3));
    assert_eq!(member_of_cyclic(s, &w(s, "BAAB"), &w(s, "ab")).unwrap(), None);
    assert_eq!(conjugate_into_cyclic(s, &w(s, "ba"), &w(s, "ab")).unwrap(), vec![1]);
    assert!(matches!(commensurate_cyclic(s, &w(s, "ab"), &w(s, "cd")), Err(Error::Infeasible { .. })));
}

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * rank, 1..=max_len)
        .prop_map(|codes| Word::from_letters(codes.into_iter().map(hypgrp_core::Letter::from_code).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn powers_are_members(h in letters(2, 4), n in -5i64..=5) {
        let f = f2();
        prop_assume!(!f.is_trivial(&h));
        let m = member_of_cyclic(f, &h.pow(n), &h).unwrap();
        prop_assert_eq!(m, Some(n));
        prop_assert!(member_of_virtually_z(f, &h.pow(n), &[Word::empty()], &h).unwrap());
    }

    #[test]
    fn conjugated_powers_are_found(h in letters(2, 3), g in letters(2, 3), n in 1i64..=3) {
        let d = dinf();
        let Ok(ElementClass::InfiniteOrder { .. }) = classify_element(d, &h) else { return Ok(()) };
        let found = conjugate_into_cyclic(d, &h.pow(n).conjugate_by(&g), &h).unwrap();
        prop_assert!(found.contains(&n));
        prop_assert!(found.len() <= 2);
    }

    #[test]
    fn centralizer_representatives_commute(h in letters(2, 3)) {
        let f = f2();
        prop_assume!(!f.is_trivial(&h));
        let t = centralizer_cyclic(f, &h).unwrap();
        prop_assert_eq!(t.representatives.first(), Some(&Word::empty()));
        for r in &t.representatives {
            prop_assert!(f.are_equal(&r.concat(&h), &h.concat(r)));
        }
    }
}
