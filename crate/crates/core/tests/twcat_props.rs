use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tube_ncr::quivalg::tube_algebra;
use tube_ncr::twcat::{
    braid_object_image, braid_object_images, halftwist_data, halftwist_tables, mu_tw, realise, rho,
    rho_coefficients, AInfTable, Comb, TwComplex, TwMorphism, Wrapping,
};
use tube_ncr::{Field, PolyRing};

fn complexes(t: &AInfTable, n: usize) -> Vec<TwComplex> {
    let d = halftwist_data(t, n).unwrap();
    let mut out = vec![d.lprime, d.psi];
    for o in ["L0", "L1", &format!("L{n}")] {
        for s in [-1, 0] {
            out.push(TwComplex::object(t, o, s).unwrap());
        }
    }
    out
}

/// Random degree-`deg` morphism: each admissible basis element enters
/// each entry with probability 1/2.
fn random_morphism(t: &AInfTable, a: &TwComplex, b: &TwComplex, deg: i32, rng: &mut ChaCha8Rng) -> TwMorphism {
    let mut entries = BTreeMap::new();
    for (i, &(x, s)) in a.terms.iter().enumerate() {
        for (j, &(y, u)) in b.terms.iter().enumerate() {
            let mut c = Comb::new();
            for (k, m) in t.morphisms().iter().enumerate() {
                if m.src == x && m.tgt == y && m.deg + s - u == deg && rng.gen_bool(0.5) {
                    c.insert(k, t.ring().one());
                }
            }
            if !c.is_empty() {
                entries.insert((i, j), c);
            }
        }
    }
    TwMorphism::from_entries(t, a, b, deg, entries).unwrap()
}

fn sum(ms: &[TwMorphism]) -> TwMorphism {
    ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.add(m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// μ2 is associative up to the μ3 correction (and μ1 terms).
    #[test]
    fn tw_ainf_relation_on_triples(seed in any::<u64>(), n in 2usize..5, left in any::<bool>()) {
        let w = if left { Wrapping::Left } else { Wrapping::Right };
        let t = halftwist_tables(n, w).unwrap();
        let cs = complexes(&t, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: Vec<&TwComplex> = (0..4).map(|_| &cs[rng.gen_range(0..cs.len())]).collect();
        let f1 = random_morphism(&t, c[0], c[1], rng.gen_range(-1..=1), &mut rng);
        let f2 = random_morphism(&t, c[1], c[2], rng.gen_range(-1..=1), &mut rng);
        let f3 = random_morphism(&t, c[2], c[3], rng.gen_range(-1..=1), &mut rng);
        let mu = |fs: &[&TwMorphism]| mu_tw(&t, fs).unwrap();
        let total = sum(&[
            mu(&[&mu(&[&f3, &f2, &f1])]),
            mu(&[&mu(&[&f3]), &f2, &f1]),
            mu(&[&f3, &mu(&[&f2]), &f1]),
            mu(&[&f3, &f2, &mu(&[&f1])]),
            mu(&[&mu(&[&f3, &f2]), &f1]),
            mu(&[&f3, &mu(&[&f2, &f1])]),
        ]);
        prop_assert!(total.is_zero(), "{:?}", total.entries);
        // μ1 squares to zero as well
        prop_assert!(mu(&[&mu(&[&f1])]).is_zero());
    }
}

#[test]
fn rho_has_order_n_plus_one() {
    for n in 0..=6 {
        let ring = PolyRing::t_ring(Field::Prime(2), n);
        let r = rho_coefficients(&ring).unwrap();
        let p = ring.parse("t0^2*t1 + t0 + 1").unwrap_or_else(|_| ring.parse("t0^2 + t0 + 1").unwrap());
        let mut q = p.clone();
        for k in 1..=n + 1 {
            q = r.apply(&q).unwrap();
            assert_eq!(q == p, k == n + 1 || n == 0, "n={n} k={k}");
        }
        for (&(i, j), img) in &braid_object_images(n) {
            let mut x = img.clone();
            for k in 1..=n + 1 {
                x = rho(n, &x);
                if k < n + 1 {
                    assert_eq!(x, braid_object_image(n, i + k, j + k));
                }
            }
            assert_eq!(&x, img);
        }
    }
}

#[test]
fn realised_braid_images_square_to_zero() {
    for n in 0..=5 {
        let p = tube_algebra(n, &PolyRing::t_ring(Field::Prime(2), n)).unwrap();
        let t = AInfTable::from_presentation(&p, 2).unwrap();
        for img in braid_object_images(n).values() {
            let c = realise(&t, img).unwrap();
            assert!(c.maurer_cartan(&t).unwrap().is_empty());
        }
    }
}
