use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use origami_core::greens::{compute_greens, Relation};
use origami_core::jones::{diagram_mul, diagram_of_word, JonesDiagram};
use origami_core::origami::{p_alpha, p_beta, RegularForms};
use origami_core::{
    build_jones_presentation, build_origami_presentation, kb_complete, shortlex_compare,
    tc_enumerate, Alphabet, Budget, ElementId, Family, Kind, MonoidTable, RewriteSystem, TcOptions,
    Word,
};
use proptest::prelude::*;

fn origami(n: usize) -> MonoidTable {
    tc_enumerate(
        &build_origami_presentation(n, true).unwrap(),
        TcOptions::default(),
    )
    .unwrap()
}

fn jones(n: usize) -> MonoidTable {
    tc_enumerate(&build_jones_presentation(n).unwrap(), TcOptions::default()).unwrap()
}

fn o4() -> &'static (MonoidTable, RewriteSystem) {
    static CELL: OnceLock<(MonoidTable, RewriteSystem)> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = build_origami_presentation(4, true).unwrap();
        (
            tc_enumerate(&p, TcOptions::default()).unwrap(),
            kb_complete(&p, Budget::default()),
        )
    })
}

fn o5() -> &'static MonoidTable {
    static CELL: OnceLock<MonoidTable> = OnceLock::new();
    CELL.get_or_init(|| origami(5))
}

fn j5() -> &'static MonoidTable {
    static CELL: OnceLock<MonoidTable> = OnceLock::new();
    CELL.get_or_init(|| jones(5))
}

fn word_in(family: Family, n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let alphabet = Alphabet::new(family, n).unwrap();
    prop::collection::vec(0..alphabet.size(), 0..=max_len)
        .prop_map(move |ps| ps.into_iter().map(|p| alphabet.generator(p)).collect())
}

proptest! {
    #[test]
    fn shortlex_is_a_total_order(a in word_in(Family::Origami, 4, 6), b in word_in(Family::Origami, 4, 6), c in word_in(Family::Origami, 4, 6)) {
        let ab = shortlex_compare(&a, &b);
        prop_assert_eq!(ab, shortlex_compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if a.len() < b.len() {
            prop_assert_eq!(ab, Ordering::Less);
        }
        if ab != Ordering::Greater && shortlex_compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(shortlex_compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn bar_and_reverse_are_commuting_involutions(w in word_in(Family::Origami, 5, 10)) {
        let b = w.bar().unwrap();
        prop_assert_eq!(b.bar().unwrap(), w.clone());
        prop_assert_eq!(w.reverse().reverse(), w.clone());
        prop_assert_eq!(b.reverse(), w.reverse().bar().unwrap());
        prop_assert_eq!(b.len(), w.len());
    }

    #[test]
    fn words_print_and_parse_back(w in word_in(Family::Origami, 6, 8)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn normal_forms_respect_concatenation(u in word_in(Family::Origami, 4, 10), v in word_in(Family::Origami, 4, 10)) {
        let (m, sys) = o4();
        prop_assert!(sys.is_complete());
        let nu = sys.normalize(&u).unwrap();
        prop_assert_eq!(sys.normalize(&u.concat(&v)).unwrap(), sys.normalize(&nu.concat(&v)).unwrap());
        // both engines pick the shortlex-least word of the class
        prop_assert_eq!(&nu, m.rep(m.element_of(&u).unwrap()));
        prop_assert!(sys.is_irreducible(&nu));
    }

    #[test]
    fn table_product_matches_concatenation(u in word_in(Family::Origami, 5, 12), v in word_in(Family::Origami, 5, 12)) {
        let m = o5();
        let (a, b) = (m.element_of(&u).unwrap(), m.element_of(&v).unwrap());
        prop_assert_eq!(m.element_of(&u.concat(&v)).unwrap(), m.product(a, b));
        prop_assert_eq!(m.element_of(m.rep(a)).unwrap(), a);
    }

    #[test]
    fn bar_is_well_defined_on_elements(u in word_in(Family::Origami, 5, 12)) {
        let m = o5();
        let e = m.element_of(&u).unwrap();
        let direct = m.element_of(&u.bar().unwrap()).unwrap();
        prop_assert_eq!(direct, m.element_of(&m.rep(e).bar().unwrap()).unwrap());
    }

    #[test]
    fn projections_are_well_defined(u in word_in(Family::Origami, 5, 12)) {
        let m = o5();
        let rep = m.rep(m.element_of(&u).unwrap());
        for proj in [p_alpha, p_beta] {
            prop_assert_eq!(m.element_of(&proj(&u).unwrap()).unwrap(), m.element_of(&proj(rep).unwrap()).unwrap());
        }
    }

    #[test]
    fn diagrams_multiply_like_words(u in word_in(Family::Jones, 6, 10), v in word_in(Family::Jones, 6, 10)) {
        let du = diagram_of_word(&u, 6).unwrap();
        let dv = diagram_of_word(&v, 6).unwrap();
        prop_assert_eq!(diagram_mul(&du, &dv).unwrap().diagram, diagram_of_word(&u.concat(&v), 6).unwrap());
        prop_assert_eq!(du.flip(), diagram_of_word(&u.reverse(), 6).unwrap());
        prop_assert!(du.is_valid());
        prop_assert_eq!(du.to_string().parse::<JonesDiagram>().unwrap(), du);
    }

    #[test]
    fn jones_table_agrees_with_diagrams(u in word_in(Family::Jones, 5, 12), v in word_in(Family::Jones, 5, 12)) {
        let m = j5();
        let same_element = m.element_of(&u).unwrap() == m.element_of(&v).unwrap();
        let same_diagram = diagram_of_word(&u, 5).unwrap() == diagram_of_word(&v, 5).unwrap();
        prop_assert_eq!(same_element, same_diagram);
    }
}

/// Partition of the elements by a set-valued key, as sorted classes.
fn partition_by<K: Ord>(m: &MonoidTable, key: impl Fn(ElementId) -> K) -> BTreeSet<Vec<u32>> {
    let mut groups: BTreeMap<K, Vec<u32>> = BTreeMap::new();
    for e in m.elements() {
        groups.entry(key(e)).or_default().push(e.0);
    }
    groups.into_values().collect()
}

fn classes_of(m: &MonoidTable, rel: Relation) -> BTreeSet<Vec<u32>> {
    let g = compute_greens(m);
    g.classes(rel)
        .iter()
        .map(|c| c.iter().map(|e| e.0).collect())
        .collect()
}

#[test]
fn greens_classes_match_principal_ideals() {
    for m in [origami(2), origami(3), jones(3), jones(4), jones(5)] {
        let all: Vec<ElementId> = m.elements().collect();
        let right = |a: ElementId| {
            all.iter()
                .map(|&x| m.product(a, x))
                .collect::<BTreeSet<_>>()
        };
        let left = |a: ElementId| {
            all.iter()
                .map(|&x| m.product(x, a))
                .collect::<BTreeSet<_>>()
        };
        let two = |a: ElementId| {
            all.iter()
                .flat_map(|&x| all.iter().map(move |&y| (x, y)))
                .map(|(x, y)| m.product(m.product(x, a), y))
                .collect::<BTreeSet<_>>()
        };
        let r = partition_by(&m, right);
        let l = partition_by(&m, left);
        assert_eq!(classes_of(&m, Relation::R), r);
        assert_eq!(classes_of(&m, Relation::L), l);
        assert_eq!(classes_of(&m, Relation::J), partition_by(&m, two));
        assert_eq!(
            classes_of(&m, Relation::H),
            partition_by(&m, |a| (right(a), left(a)))
        );
    }
}

#[test]
fn regular_forms_spell_their_elements() {
    for n in 2..=5 {
        let m = origami(n);
        let forms = RegularForms::compute(&m).unwrap();
        for e in m.elements() {
            let f = forms.get(e);
            assert_eq!(
                m.element_of(&f.word()).unwrap(),
                e,
                "n={n}: {f} for {}",
                m.rep(e)
            );
            assert_eq!(
                f.u.to_word(Kind::Alpha).len() + f.v.to_word(Kind::Beta).len(),
                f.u.len() + f.v.len()
            );
        }
    }
}

#[test]
fn kb_and_congruence_agree_on_small_monoids() {
    for n in 2..=6 {
        let p = build_jones_presentation(n).unwrap();
        let sys = kb_complete(&p, Budget::default());
        assert_eq!(
            sys.to_table().unwrap(),
            tc_enumerate(&p, TcOptions::default()).unwrap()
        );
    }
    for n in 2..=5 {
        let p = build_origami_presentation(n, false).unwrap();
        let sys = kb_complete(&p, Budget::default());
        assert_eq!(
            sys.to_table().unwrap(),
            tc_enumerate(&p, TcOptions::default()).unwrap()
        );
    }
}

#[test]
fn jones_tables_pass_the_diagram_check() {
    for n in 2..=7 {
        let r = origami_core::jones::check_diagram_oracle(&jones(n)).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(
            r.get_metric("diagrams"),
            Some(origami_core::jones::catalan(n as u64))
        );
    }
    assert!(origami_core::jones::check_diagram_oracle(&origami(3)).is_err());
}
