//! End-to-end acceptance run: one line per criterion, nonzero exit if any
//! fails. Expected values come from closed forms and direct enumeration
//! written out here, not from the library.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use tube_ncr::arcmodel::{annulus, arc_label, disc, structurally_equal};
use tube_ncr::cohom::{
    august_presentation, august_relations, char2_pagoda_check, h0_presentation, localization_consistency,
    name_august_cosets, pagoda, pagoda_class, sphere_complex, truncated_cohomology, Bounds, SphereVariant, Status,
    DEFAULT_LOCALIZATION_BOUNDS,
};
use tube_ncr::quivalg::{contraction_quiver, tube_algebra, tube_u, tube_v, ArrowConvention};
use tube_ncr::toric::{base_change_end, end_algebra, wedge_nonvanishing};
use tube_ncr::twcat::{negative_controls, verify_halftwist};
use tube_ncr::{AlgebraElement, Field, PolyRing};

/// Irreducible words `i -> j` of length exactly `len` in the tube algebra
/// on `n + 1` vertices: the lazy path, the `a`-path when `len ≡ j − i` and
/// the `b`-path when `len ≡ i − j` (mod `n + 1`).
fn tube_words_of_length(n: usize, i: usize, j: usize, len: usize) -> usize {
    let m = n + 1;
    if len == 0 {
        return usize::from(i == j);
    }
    usize::from(len % m == (j + m - i) % m) + usize::from(len % m == (i + m - j) % m)
}

fn c1_tube_freeness() {
    for n in 0..=5 {
        let p = tube_algebra(n, &PolyRing::t_ring(Field::Rationals, n)).unwrap();
        let bound = 2 * (n + 1) + 3;
        for i in 0..=n {
            for j in 0..=n {
                let got = p.graded_basis(&i.to_string(), &j.to_string(), 0, bound).unwrap();
                let want: usize = (0..=bound).map(|l| tube_words_of_length(n, i, j, l)).sum();
                assert_eq!(got.len(), want, "n={n} {i}->{j}");
            }
        }
    }
}

fn c2_arc_round_trip() {
    for n in 0..=5 {
        let g = annulus(n).generate_presentation(Field::Rationals).unwrap().presentation;
        let t = tube_algebra(n, &PolyRing::t_ring(Field::Rationals, n)).unwrap();
        structurally_equal(&g, &t, arc_label).unwrap_or_else(|e| panic!("annulus({n}): {e}"));
    }
    for n in 1..=5 {
        let g = disc(n).unwrap().generate_presentation(Field::Rationals).unwrap().presentation;
        let r = PolyRing::t_ring(Field::Rationals, n);
        let f: Vec<_> = (0..=n).map(|i| r.var(i)).collect();
        let c = contraction_quiver(n, &r, &f, ArrowConvention::Tube).unwrap();
        structurally_equal(&g, &c, arc_label).unwrap_or_else(|e| panic!("disc({n}): {e}"));
    }
}

fn c3_center_relation() {
    for n in 0..=5 {
        let r = PolyRing::t_ring(Field::Rationals, n);
        let p = tube_algebra(n, &r).unwrap();
        let t_all = (0..=n).fold(r.one(), |acc, i| &acc * &r.var(i));
        let want = p.unit().scale(&t_all);
        let (u, v) = (tube_u(&p), tube_v(&p));
        assert_eq!(p.multiply(&u, &v), want, "uv, n={n}");
        assert_eq!(p.multiply(&v, &u), want, "vu, n={n}");
    }
}

fn c4_halftwist() {
    for n in 2..=5 {
        let r = verify_halftwist(n).unwrap();
        assert!(r.passed(), "n={n}: {}", r.to_json());
        for (name, failed, detail) in negative_controls(n).unwrap() {
            assert!(failed, "negative control `{name}` unexpectedly passed at n={n}: {detail}");
        }
    }
}

fn c5_b_side_isomorphism() {
    for n in 1..=4 {
        let bound = 2 * (n + 1) + 4;
        let r = end_algebra(n, bound).unwrap();
        assert!(r.passed(), "n={n}: {:?}", r.counterexample);
        for (i, j, ranks) in &r.ranks {
            let want: Vec<usize> = (0..=bound).map(|l| tube_words_of_length(n, *i, *j, l)).collect();
            assert_eq!(ranks, &want, "n={n} hom({i},{j})");
        }
        assert!(r.pairs_checked > 0);
    }
}

fn c6_wedge() {
    let start = Instant::now();
    for n in 2..=6 {
        let r = wedge_nonvanishing(n).unwrap();
        assert!(r.holds(), "n={n}: {:?}", r.counterexample);
        assert_eq!(r.patterns, 1 << (2 * (n + 1)));
    }
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
}

fn c7_base_change() {
    let t = PolyRing::new(Field::Rationals, ["t"]).unwrap();
    for n in 1..=3 {
        let r = base_change_end(n, &vec![t.var(0); n + 1], 2 * (n + 1) + 4).unwrap();
        assert!(r.passed(), "(t,…,t), n={n}: {:?}", r.counterexample);
    }
    let s = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
    let r = base_change_end(1, &[s.var(0), s.var(1)], 8).unwrap();
    assert!(r.passed(), "(x,y): {:?}", r.counterexample);
}

fn c8_sphere() {
    for f in [Field::Rationals, Field::Prime(5)] {
        let c = sphere_complex(f, SphereVariant::Amended).unwrap();
        let reports = c.cohomology(6);
        let got: Vec<(i32, usize)> = reports.iter().map(|r| (r.degree, r.rank)).collect();
        assert_eq!(got, vec![(-2, 0), (-1, 0), (0, 1), (1, 0), (2, 0), (3, 1)], "{f}");
        assert!(reports.iter().all(|r| r.status == Status::Stable));
        assert_eq!(reports[2].generators, vec!["e"]);
        assert_eq!(reports[5].generators, vec!["ybar"]);
        assert!(sphere_complex(f, SphereVariant::Printed).is_err());
    }
}

fn c9_conifold() {
    let s = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
    let g = contraction_quiver(1, &s, &[s.var(0), s.var(1)], ArrowConvention::Tube).unwrap();
    let want: [(usize, &[&str]); 5] = [
        (1, &["e1"]),
        (0, &[]),
        (1, &["alpha*beta+beta*alpha"]),
        (0, &[]),
        (1, &["alpha*beta*alpha*beta+beta*alpha*beta*alpha"]),
    ];
    for (m, (rank, gens)) in want.iter().enumerate() {
        for b in [8, 10] {
            let r = truncated_cohomology(&g, "1", "1", m as i32, Bounds::new(b, b as u32)).unwrap();
            assert_eq!((r.rank, r.status), (*rank, Status::Stable), "m={m} at ({b},{b})");
            assert_eq!(r.generators, *gens, "m={m}");
        }
    }
}

fn c10_pagoda() {
    for n in 2..=4u32 {
        // monomials x^a y^b of degree <= n + 2 outside (y, x^n)
        let want = (0..=n + 2).flat_map(|a| (0..=n + 2 - a).map(move |b| (a, b))).filter(|&(a, b)| b == 0 && a < n).count();
        let p = pagoda(n, Field::Rationals).unwrap();
        let r = truncated_cohomology(&p, "1", "1", 0, Bounds::new(2, n + 2)).unwrap();
        assert_eq!((r.rank, r.status), (want, Status::Stable), "n={n}");
        assert!(!pagoda_class(n, Field::Rationals, 2 * n + 2).unwrap().nontrivial, "x^{n} over Q");
        assert!(char2_pagoda_check(n).unwrap().nontrivial, "x^{n} over F2");
    }
}

fn c11_august() {
    let p = august_presentation(Field::Rationals).unwrap();
    let mut h = h0_presentation(&p, 10, 10).unwrap();
    assert!(h.two_sided);
    name_august_cosets(&mut h).unwrap();
    let verdicts = august_relations(&h).unwrap();
    let names: Vec<&str> = verdicts.iter().map(|v| v.relation.as_str()).collect();
    assert_eq!(
        names,
        [
            "l^2 = ac",
            "m^3 = ca",
            "la = 0",
            "am = 0",
            "cl = 0",
            "mc = 0",
            "m^3 = y^3*e1",
            "y^3*e1 = (y^3 + x^2)*e1",
            "(y^3 + x^2)*e1 = ca"
        ]
    );
    for v in &verdicts {
        assert!(v.holds && v.witness.is_some(), "{}", v.relation);
    }
    // and the ideal is not everything: e1 itself survives
    let e1 = p.idempotent("1").unwrap();
    assert!(!h.verify("e1 = 0", &e1, &AlgebraElement::zero(p.ring())).unwrap().holds);
}

fn c12_localization() {
    let s = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
    let r = localization_consistency(&s.var(0), &s.var(1), DEFAULT_LOCALIZATION_BOUNDS, 4).unwrap();
    let ranks: Vec<(usize, usize)> = r.rows.iter().map(|row| (row.contraction.rank, row.localized.rank)).collect();
    assert_eq!(ranks, vec![(1, 1), (0, 0), (1, 1), (0, 0), (1, 1)]);
    assert!(r.passed(), "{}", r.to_json());
}

fn main() {
    let criteria: [(&str, fn()); 12] = [
        ("tube algebra freeness", c1_tube_freeness),
        ("arc/algebra round trip", c2_arc_round_trip),
        ("center relation uv = vu = t0...tn", c3_center_relation),
        ("half-twist verification", c4_halftwist),
        ("B-side isomorphism", c5_b_side_isomorphism),
        ("wedge nonvanishing", c6_wedge),
        ("base change", c7_base_change),
        ("sphere complex", c8_sphere),
        ("conifold contraction algebra", c9_conifold),
        ("pagoda", c10_pagoda),
        ("August example", c11_august),
        ("localisation consistency", c12_localization),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} {name:<36} PASS ({secs:.2}s)", k + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} {name:<36} FAIL ({secs:.2}s): {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
