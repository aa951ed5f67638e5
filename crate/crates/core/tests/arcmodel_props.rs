use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tube_ncr::arcmodel::{annulus, arc_label, disc, structurally_equal, transport};
use tube_ncr::quivalg::{contraction_quiver, tube_algebra, ArrowConvention};
use tube_ncr::{AlgebraElement, Field, PolyRing};

#[test]
fn generated_and_algebraic_normal_forms_agree() {
    for n in 0..=5 {
        let g = annulus(n).generate_presentation(Field::Rationals).unwrap().presentation;
        let t = tube_algebra(n, &PolyRing::t_ring(Field::Rationals, n)).unwrap();
        let amap = structurally_equal(&g, &t, arc_label).unwrap();
        let vmap: Vec<usize> = g
            .quiver()
            .vertices()
            .iter()
            .map(|v| t.quiver().vertex_index(&arc_label(v)).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..1000 {
            let w = g.random_word(&mut rng, 8);
            let e = AlgebraElement::word(g.ring(), w);
            let lhs = transport(&g.normal_form(&e), t.ring(), &vmap, &amap);
            let rhs = t.normal_form(&transport(&e, t.ring(), &vmap, &amap));
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}

#[test]
fn degrees_follow_face_type() {
    for n in 1..=6 {
        let s = disc(n).unwrap();
        let g = s.generate_presentation(Field::Rationals).unwrap();
        let degs: Vec<i32> = g.presentation.quiver().arrows().iter().map(|a| a.deg).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 0).count(), 2 * (n - 1));
        assert_eq!(degs.iter().filter(|&&d| d == -1).count(), 2);
        assert_eq!(g.provenance.len(), s.faces.len());
        let r = PolyRing::t_ring(Field::Rationals, n);
        let f: Vec<_> = (0..=n).map(|i| r.var(i)).collect();
        let c = contraction_quiver(n, &r, &f, ArrowConvention::Tube).unwrap();
        assert!(structurally_equal(&g.presentation, &c, arc_label).is_ok());
    }
    for n in 0..=6 {
        let g = annulus(n).generate_presentation(Field::Prime(3)).unwrap().presentation;
        assert!(g.quiver().arrows().iter().all(|a| a.deg == 0));
        assert!(!g.has_differential());
    }
}
