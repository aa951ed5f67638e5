use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tube_ncr::quivalg::{
    contraction_quiver, drinfeld_localize, tube_algebra, tube_basis_count, tube_u, tube_v,
    ArrowConvention, Strategy,
};
use tube_ncr::{AlgebraElement, Field, PolyRing, Presentation, RingMap};

fn tube(n: usize) -> Presentation {
    tube_algebra(n, &PolyRing::t_ring(Field::Rationals, n)).unwrap()
}

fn xy() -> Arc<PolyRing> {
    PolyRing::new(Field::Rationals, ["x", "y"]).unwrap()
}

fn shipped() -> Vec<(&'static str, Presentation)> {
    let s = xy();
    let conifold = contraction_quiver(1, &s, &[s.var(0), s.var(1)], ArrowConvention::Tube).unwrap();
    let august_f: Vec<_> = ["x", "x^2+y^3", "y"].iter().map(|t| s.parse(t).unwrap()).collect();
    let august = contraction_quiver(2, &s, &august_f, ArrowConvention::Tube).unwrap();
    let t1 = tube(1);
    let loc = drinfeld_localize(&t1.base_change(&RingMap::parse(t1.ring(), &s, &["x", "y"]).unwrap()).unwrap(), "0").unwrap();
    vec![
        ("tube0", tube(0)),
        ("tube2", tube(2)),
        ("tube3", tube(3)),
        ("conifold", conifold),
        ("august", august),
        ("localised", loc),
    ]
}

fn random_basis_element(p: &Presentation, words: &[tube_ncr::PathWord], rng: &mut ChaCha8Rng) -> AlgebraElement {
    use rand::Rng;
    let w = words[rng.gen_range(0..words.len())].clone();
    AlgebraElement::word(p.ring(), w)
}

#[test]
fn associativity_on_basis_triples() {
    for (name, p) in shipped() {
        let words = p.irreducible_words(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x = random_basis_element(&p, &words, &mut rng);
            let y = random_basis_element(&p, &words, &mut rng);
            let z = random_basis_element(&p, &words, &mut rng);
            let l = p.multiply(&p.multiply(&x, &y), &z);
            let r = p.multiply(&x, &p.multiply(&y, &z));
            assert_eq!(l, r, "{name}: ({}) ({}) ({})", p.display(&x), p.display(&y), p.display(&z));
        }
    }
}

#[test]
fn center_relation_up_to_n5() {
    for n in 0..=5 {
        let p = tube(n);
        let (u, v) = (tube_u(&p), tube_v(&p));
        let prod = (0..=n).fold(p.ring().one(), |acc, i| &acc * &p.ring().var(i));
        assert_eq!(p.multiply(&u, &v), p.scalar(&prod), "n={n}");
        assert_eq!(p.multiply(&v, &u), p.scalar(&prod), "n={n}");
        for i in 0..=n {
            let t = p.scalar(&p.ring().var(i));
            assert_eq!(p.multiply(&u, &t), p.multiply(&t, &u));
        }
    }
}

#[test]
fn normal_forms_do_not_depend_on_reduction_order() {
    for (name, p) in shipped() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..1000u64 {
            let w = p.random_word(&mut rng, 9);
            let e = AlgebraElement::word(p.ring(), w);
            let reference = p.normal_form_with(&e, Strategy::Leftmost);
            assert_eq!(p.normal_form_with(&e, Strategy::Rightmost), reference, "{name}");
            assert_eq!(p.normal_form_with(&e, Strategy::Random(k)), reference, "{name}");
            for (w, _) in reference.terms() {
                assert!(p.is_irreducible(w));
            }
        }
    }
}

#[test]
fn d_squared_vanishes_on_bases() {
    for (name, p) in shipped() {
        for w in p.irreducible_words(6) {
            let e = AlgebraElement::word(p.ring(), w);
            assert!(p.differential(&p.differential(&e)).is_zero(), "{name}: {}", p.display(&e));
        }
    }
}

#[test]
fn tube_graded_ranks_match_monotone_path_count() {
    for n in 0..=5 {
        let p = tube(n);
        let len = 2 * (n + 1) + 2;
        for i in 0..=n {
            for j in 0..=n {
                let got = p.graded_basis(&i.to_string(), &j.to_string(), 0, len).unwrap();
                assert_eq!(got.len(), tube_basis_count(n, i, j, len), "n={n} {i}->{j}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn leibniz_rule_on_random_words(seed in any::<u64>(), split in 0usize..6) {
        for (_, p) in shipped() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = p.random_word(&mut rng, split);
            let w = p.random_word(&mut rng, 5);
            let (v, w) = (AlgebraElement::word(p.ring(), v.clone()), AlgebraElement::word(p.ring(), w));
            let vw = p.multiply(&v, &w);
            let deg = v.terms().next().map(|(w, _)| p.degree(w)).unwrap();
            let dv_w = p.multiply(&p.differential(&v), &w);
            let v_dw = p.multiply(&v, &p.differential(&w));
            let rhs = if deg % 2 == 0 { dv_w.add(&v_dw) } else { dv_w.sub(&v_dw) };
            prop_assert_eq!(p.differential(&p.normal_form(&vw)), rhs);
        }
    }

    #[test]
    fn localised_words_square_to_zero(seed in any::<u64>()) {
        let p = drinfeld_localize(&tube(2), "1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = p.random_word(&mut rng, 8);
        let e = p.normal_form(&AlgebraElement::word(p.ring(), w));
        prop_assert!(p.differential(&p.differential(&e)).is_zero());
    }
}
