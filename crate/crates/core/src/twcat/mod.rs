//! Finite A∞ product tables and one-sided twisted complexes over them.
//!
//! Everything here works in characteristic 2, where the A∞ and twisted
//! complex sign conventions disappear; tables refuse other fields.

mod halftwist;
mod table;
mod tw;

pub use halftwist::{
    braid_object_image, braid_object_images, check_halftwist, delta_twist, halftwist_data, halftwist_tables,
    negative_controls, realise, rho, rho_coefficients, verify_halftwist, Check, HalftwistData, HalftwistReport,
    ObjectImage, Wrapping, WrappingReport, ALPHA_P, BETA_P, P, PBAR, PSI,
};
pub use table::{AInfReport, AInfTable, AInfViolation, Comb, Morphism, MAX_MU_ARITY};
pub use tw::{mu_tw, tw_routes, Route, TwComplex, TwMorphism};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, PolyRing};
    use crate::quivalg::tube_algebra;

    #[test]
    fn tube_algebra_as_a_table_is_ainf() {
        let p = tube_algebra(2, &PolyRing::t_ring(Field::Prime(2), 2)).unwrap();
        let t = AInfTable::from_presentation(&p, 3).unwrap();
        let r = t.ainf_check(3).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.tuples_checked > 0 && r.tuples_skipped > 0);
    }

    #[test]
    fn tables_need_characteristic_two() {
        assert!(AInfTable::new(&PolyRing::t_ring(Field::Rationals, 1)).is_err());
        let p = tube_algebra(1, &PolyRing::t_ring(Field::Prime(3), 1)).unwrap();
        assert!(AInfTable::from_presentation(&p, 2).is_err());
    }

    #[test]
    fn wrapping_split() {
        for n in 2..=5 {
            let l = halftwist_tables(n, Wrapping::Left).unwrap();
            let r = halftwist_tables(n, Wrapping::Right).unwrap();
            let an = format!("a{n}");
            let mu = |t: &AInfTable, args: &[&str]| {
                let ids: Vec<usize> = args.iter().map(|a| t.require(a).unwrap()).collect();
                t.fmt_comb(&t.mu(&ids).unwrap())
            };
            assert_eq!(mu(&l, &["b0", ALPHA_P, P]), "eL0");
            assert_eq!(mu(&l, &[&an, BETA_P, P]), "0");
            assert_eq!(mu(&r, &["b0", ALPHA_P, P]), "0");
            assert_eq!(mu(&r, &[&an, BETA_P, P]), "eL0");
            for t in [&l, &r] {
                assert_eq!(mu(t, &[ALPHA_P, P, "b0"]), "eL1");
                assert_eq!(mu(t, &[BETA_P, P, &an]), format!("eL{n}"));
                assert_eq!(t.morphisms()[t.require(P).unwrap()].deg, 1);
            }
        }
        assert!(halftwist_tables(1, Wrapping::Left).is_err());
    }

    #[test]
    fn tables_satisfy_ainf_to_arity_five() {
        for w in Wrapping::BOTH {
            let r = halftwist_tables(3, w).unwrap().ainf_check(5).unwrap();
            assert!(r.passed(), "{w}: {:?}", r.violations);
        }
    }

    #[test]
    fn halftwist_passes_and_controls_fail() {
        let rep = verify_halftwist(2).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        for (name, failed, _) in negative_controls(2).unwrap() {
            assert!(failed, "{name}");
        }
    }

    #[test]
    fn q1_q2_route_is_unique() {
        let t = halftwist_tables(2, Wrapping::Left).unwrap();
        let d = halftwist_data(&t, 2).unwrap();
        let routes = tw_routes(&t, &[&d.q1, &d.q2]).unwrap();
        let through: Vec<_> = routes.iter().filter(|r| !t.mu(&r.args).unwrap().is_empty()).collect();
        assert_eq!(through.len(), 1);
        assert_eq!(t.names(&through[0].args), ["p", "b0", "alpha'"]);
    }

    #[test]
    fn braid_images() {
        let n = 3;
        assert_eq!(braid_object_image(n, 0, 0).to_string(), "[L1⊕L3 --(b0,a3)--> L0]");
        assert_eq!(braid_object_image(n, 1, 0).to_string(), "L0");
        assert_eq!(rho(n, &braid_object_image(n, 0, 0)), braid_object_image(n, 1, 1));
        let p = tube_algebra(n, &PolyRing::t_ring(Field::Prime(2), n)).unwrap();
        let t = AInfTable::from_presentation(&p, 1).unwrap();
        for img in braid_object_images(n).values() {
            assert!(realise(&t, img).is_ok(), "{img}");
            assert_eq!(&delta_twist(img), img);
        }
    }
}
