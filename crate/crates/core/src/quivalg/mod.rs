//! Graded quiver presentations: rewriting normal forms, the graded Leibniz
//! differential, and the named families (tube algebra, contraction quiver,
//! Drinfeld localisation).

mod element;
mod families;
mod presentation;
mod quiver;

pub use element::AlgebraElement;
pub use families::{
    contraction_quiver, drinfeld_localize, tube_a_path, tube_algebra, tube_b_path,
    tube_basis_count, tube_u, tube_v, ArrowConvention,
};
pub use presentation::{ConfluenceReport, CriticalPair, Presentation, RewriteRule, Strategy};
pub use quiver::{Arrow, PathWord, Quiver};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exactalg::{Field, PolyRing};

    fn tube(n: usize) -> Presentation {
        tube_algebra(n, &PolyRing::t_ring(Field::Rationals, n)).unwrap()
    }

    fn conifold() -> Presentation {
        let s = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        let f = vec![s.parse("x").unwrap(), s.parse("y").unwrap()];
        contraction_quiver(1, &s, &f, ArrowConvention::Tube).unwrap()
    }

    #[test]
    fn backtracking_pair_contracts_to_a_scalar() {
        for n in 0..4 {
            let p = tube(n);
            let e = p.el(&["a0", "b0"]).unwrap();
            let expect = if n == 0 { "t0*e0" } else { "t0*e1" };
            assert_eq!(p.display(&e), expect);
        }
    }

    #[test]
    fn lazy_paths_are_irreducible() {
        let p = tube(2);
        let e = p.idempotent("1").unwrap();
        assert_eq!(p.normal_form(&e), e);
    }

    #[test]
    fn reduction_order_does_not_matter() {
        let p = tube(3);
        let w = AlgebraElement::word(p.ring(), p.word(&["a1", "b1", "a1"]).unwrap());
        let l = p.normal_form_with(&w, Strategy::Leftmost);
        let r = p.normal_form_with(&w, Strategy::Rightmost);
        assert_eq!(l, r);
        assert_eq!(p.display(&l), "t1*a1");
    }

    #[test]
    fn shapes_of_small_tube_algebras() {
        let p = tube(1);
        assert_eq!((p.quiver().vertices().len(), p.quiver().arrows().len(), p.rules().len()), (2, 4, 4));
        let p = tube(0);
        assert_eq!((p.quiver().vertices().len(), p.quiver().arrows().len(), p.rules().len()), (1, 2, 2));
        assert_eq!(p.display(&p.el(&["b0", "a0"]).unwrap()), "t0*e0");
        assert!(tube_algebra(2, &PolyRing::t_ring(Field::Rationals, 1)).is_err());
    }

    #[test]
    fn tube_algebras_are_confluent() {
        for n in 0..6 {
            assert!(tube(n).check_confluence().is_confluent());
        }
        assert!(conifold().check_confluence().is_confluent());
    }

    #[test]
    fn adversarial_rules_are_flagged() {
        let r = PolyRing::t_ring(Field::Rationals, 0);
        let mut q = Quiver::new(["0"]).unwrap();
        let a = q.add_arrow("a", "0", "0", 0).unwrap();
        let b = q.add_arrow("b", "0", "0", 0).unwrap();
        let e = q.lazy("0").unwrap();
        let rules = vec![
            RewriteRule { lhs: (a, b), rhs: AlgebraElement::term(e.clone(), r.one()) },
            RewriteRule { lhs: (b, a), rhs: AlgebraElement::term(e, r.int(2)) },
        ];
        let p = Presentation::new(q, r, rules, BTreeMap::new()).unwrap();
        let report = p.check_confluence();
        assert!(!report.is_confluent());
        let aba = report.unresolved.iter().find(|c| p.quiver().fmt_word(&c.word) == "a*b*a").unwrap();
        let mut sides = [p.display(&aba.left), p.display(&aba.right)];
        sides.sort();
        assert_eq!(sides, ["2*a".to_string(), "a".to_string()]);
    }

    #[test]
    fn single_monomial_rule_is_confluent() {
        let r = PolyRing::t_ring(Field::Rationals, 0);
        let mut q = Quiver::new(["0"]).unwrap();
        let a = q.add_arrow("alpha", "0", "0", -1).unwrap();
        let rules = vec![RewriteRule { lhs: (a, a), rhs: AlgebraElement::zero(&r) }];
        let p = Presentation::new(q, r, rules, BTreeMap::new()).unwrap();
        assert!(p.check_confluence().is_confluent());
        assert_eq!(p.check_confluence().overlaps_checked, 1);
    }

    #[test]
    fn non_terminating_rules_rejected() {
        let r = PolyRing::t_ring(Field::Rationals, 0);
        let mut q = Quiver::new(["0"]).unwrap();
        let a = q.add_arrow("a", "0", "0", 0).unwrap();
        let b = q.add_arrow("b", "0", "0", 0).unwrap();
        let rhs = AlgebraElement::word(&r, PathWord::from_arrows(&q, vec![b, a]).unwrap());
        let rules = vec![RewriteRule { lhs: (a, b), rhs }];
        assert!(Presentation::new(q, r, rules, BTreeMap::new()).is_err());
    }

    #[test]
    fn multiplication_by_idempotents() {
        let p = tube(2);
        let a0 = p.el(&["a0"]).unwrap();
        assert_eq!(p.multiply(&p.idempotent("1").unwrap(), &a0), a0);
        assert!(p.multiply(&p.idempotent("0").unwrap(), &a0).is_zero());
        assert_eq!(p.multiply(&a0, &p.idempotent("0").unwrap()), a0);
        let b0 = p.el(&["b0"]).unwrap();
        assert_eq!(p.display(&p.multiply(&a0, &b0)), "t0*e1");
    }

    #[test]
    fn center_relation_small() {
        let p = tube(2);
        let (u, v) = (tube_u(&p), tube_v(&p));
        let t = p.ring().parse("t0*t1*t2").unwrap();
        assert_eq!(p.multiply(&u, &v), p.scalar(&t));
        assert_eq!(p.multiply(&v, &u), p.scalar(&t));
    }

    #[test]
    fn conifold_differential() {
        let p = conifold();
        assert_eq!(p.display(&p.differential(&p.el(&["alpha"]).unwrap())), "x*e1");
        assert!(p.differential(&p.idempotent("1").unwrap()).is_zero());
        let dab = p.differential(&p.el(&["alpha", "beta"]).unwrap());
        assert_eq!(p.display(&dab), "-y*alpha+x*beta");
        let aba = p.el(&["alpha", "beta", "alpha"]).unwrap();
        assert!(p.differential(&p.differential(&aba)).is_zero());
    }

    #[test]
    fn contraction_quiver_shapes() {
        let s = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        let f: Vec<_> = ["x", "x^2+y^3", "y"].iter().map(|t| s.parse(t).unwrap()).collect();
        let p = contraction_quiver(2, &s, &f, ArrowConvention::Tube).unwrap();
        assert_eq!(p.display(&p.el(&["a1", "b1"]).unwrap()), "(y^3 + x^2)*e2");
        assert_eq!(p.display(&p.el(&["b1", "a1"]).unwrap()), "(y^3 + x^2)*e1");
        let p = contraction_quiver(2, &s, &f, ArrowConvention::Reversed).unwrap();
        assert_eq!(p.display(&p.el(&["a1", "b1"]).unwrap()), "(y^3 + x^2)*e1");
        assert!(contraction_quiver(0, &s, &f[..1], ArrowConvention::Tube).is_err());
        let f0 = vec![s.zero(), s.parse("y").unwrap()];
        let p = contraction_quiver(1, &s, &f0, ArrowConvention::Tube).unwrap();
        assert!(p.differential(&p.el(&["alpha"]).unwrap()).is_zero());
    }

    #[test]
    fn localisation_adds_eps() {
        let p = tube(1);
        let loc = drinfeld_localize(&p, "0").unwrap();
        assert_eq!(loc.quiver().arrows().len(), 5);
        assert_eq!(loc.display(&loc.differential(&loc.el(&["eps"]).unwrap())), "e0");
        let w = loc.el(&["a0", "eps", "b0"]).unwrap();
        assert_eq!(loc.display(&loc.differential(&w)), "t0*e1");
        assert!(drinfeld_localize(&conifold(), "1").is_err());
    }

    #[test]
    fn graded_basis_examples() {
        let p = conifold();
        let b: Vec<_> = p.graded_basis("1", "1", -2, 4).unwrap().iter().map(|w| p.quiver().fmt_word(w)).collect();
        assert_eq!(b, ["alpha*beta", "beta*alpha"]);
        assert!(p.graded_basis("1", "1", 1, 6).unwrap().is_empty());
        let t = tube(2);
        let b: Vec<_> = t.graded_basis("0", "1", 0, 4).unwrap().iter().map(|w| t.quiver().fmt_word(w)).collect();
        assert_eq!(b, ["a0", "b1*b2", "a0*a2*a1*a0"]);
        let e0 = t.graded_basis("0", "0", 0, 6).unwrap();
        assert_eq!(e0.len(), 5);
    }

    #[test]
    fn json_round_trip() {
        for p in [tube(2), conifold()] {
            let back = Presentation::from_json(&p.to_json()).unwrap();
            assert_eq!(back.text_dump(), p.text_dump());
        }
    }

    #[test]
    fn bad_differentials_rejected() {
        let r = PolyRing::t_ring(Field::Rationals, 0);
        let mut q = Quiver::new(["0"]).unwrap();
        let a = q.add_arrow("alpha", "0", "0", -1).unwrap();
        let b = q.add_arrow("beta", "0", "0", -2).unwrap();
        // d(beta) = alpha, d(alpha) = e: d^2(beta) = e != 0
        let mut diff = BTreeMap::new();
        diff.insert(a, AlgebraElement::word(&r, q.lazy("0").unwrap()));
        diff.insert(b, AlgebraElement::word(&r, PathWord::from_arrows(&q, vec![a]).unwrap()));
        assert!(Presentation::new(q.clone(), r.clone(), vec![], diff).is_err());
        // d(alpha) of the wrong degree
        let mut diff = BTreeMap::new();
        diff.insert(a, AlgebraElement::word(&r, PathWord::from_arrows(&q, vec![a]).unwrap()));
        assert!(Presentation::new(q, r, vec![], diff).is_err());
    }
}
