use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use tube_ncr::exactalg::{monomials_up_to, truncated_solve, SolveMode, SolveOutcome};
use tube_ncr::{Field, Monomial, Poly, PolyRing, RingMap, Scalar};

fn xy(field: Field) -> Arc<PolyRing> {
    PolyRing::new(field, ["x", "y"]).unwrap()
}

prop_compose! {
    fn small_poly(nvars: usize)(terms in prop::collection::vec((prop::collection::vec(0u32..3, nvars), -4i64..5), 0..5)) -> Vec<(Vec<u32>, i64)> {
        terms
    }
}

fn build(ring: &Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> Poly {
    let mut p = ring.zero();
    for (e, c) in terms {
        p = &p + &ring.monomial(Monomial(e.clone()), Scalar::from_integer((*c).into()));
    }
    p
}

/// Dense Gauss–Jordan rank; deliberately independent of
/// the sparse echelon code under test.
fn dense_rank(field: Field, mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let inv = field.inv(&rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let v = field.mul(&rows[rank][c], &f);
                    rows[r][c] = field.sub(&rows[r][c], &v);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of `{v : A v = 0}` with entries of degree <= bound, by dense
/// linear algebra on the coefficient matrix.
fn oracle_kernel_dim(a: &[Vec<Poly>], ring: &Arc<PolyRing>, bound: u32) -> usize {
    let cols = a[0].len();
    let dom = monomials_up_to(ring.nvars(), bound);
    let maxdeg = a.iter().flatten().filter_map(Poly::degree).max().unwrap_or(0);
    let cod = monomials_up_to(ring.nvars(), bound + maxdeg);
    let mut matrix = Vec::new();
    for m in &dom {
        for j in 0..cols {
            let mut row = Vec::new();
            for r in a {
                let img = r[j].mul_monomial(m, &Scalar::one());
                for cm in &cod {
                    row.push(img.coefficient(cm));
                }
            }
            matrix.push(row);
        }
    }
    dom.len() * cols - dense_rank(ring.field(), matrix)
}

/// Dimension of the k-span of all monomial multiples (within the bound) of
/// the returned generators.
fn span_dim(gens: &[Vec<Poly>], ring: &Arc<PolyRing>, bound: u32) -> usize {
    let cod = monomials_up_to(ring.nvars(), bound);
    let mut rows = Vec::new();
    for g in gens {
        let d = g.iter().filter_map(Poly::degree).max().unwrap_or(0);
        for m in monomials_up_to(ring.nvars(), bound - d) {
            let mut row = Vec::new();
            for p in g {
                let s = p.mul_monomial(&m, &Scalar::one());
                for cm in &cod {
                    row.push(s.coefficient(cm));
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        0
    } else {
        dense_rank(ring.field(), rows)
    }
}

fn kernel_gens(a: &[Vec<Poly>], ring: &Arc<PolyRing>, bound: u32) -> Vec<Vec<Poly>> {
    match truncated_solve(a, ring, &SolveMode::Kernel, bound).unwrap() {
        SolveOutcome::Kernel { generators, .. } => generators,
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn syzygy_of_x_and_y() {
    let r = xy(Field::Rationals);
    let a = vec![vec![r.var(0), r.var(1)]];
    let g = kernel_gens(&a, &r, 3);
    assert_eq!(g, vec![vec![r.var(1), -&r.var(0)]]);
    assert_eq!(span_dim(&g, &r, 3), oracle_kernel_dim(&a, &r, 3));
}

#[test]
fn syzygy_used_by_the_sphere_complex() {
    let r = PolyRing::t_ring(Field::Rationals, 1);
    let a = vec![vec![r.var(1), r.var(0)]];
    let g = kernel_gens(&a, &r, 4);
    assert_eq!(g, vec![vec![r.var(0), -&r.var(1)]]);
    assert_eq!(span_dim(&g, &r, 4), oracle_kernel_dim(&a, &r, 4));
}

#[test]
fn substitution_examples() {
    let r = PolyRing::t_ring(Field::Rationals, 2);
    let t = PolyRing::new(Field::Rationals, ["t"]).unwrap();
    let m = RingMap::parse(&r, &t, &["t", "t", "t"]).unwrap();
    assert_eq!(m.apply(&r.parse("t0*t1*t2").unwrap()).unwrap(), t.parse("t^3").unwrap());
}

#[test]
fn characteristic_dispatch() {
    for (field, vanishes) in [(Field::Rationals, false), (Field::Prime(2), true), (Field::Prime(3), false), (Field::Prime(5), false)] {
        let r = xy(field);
        for n in 1..5 {
            let a = r.parse(&format!("y + x^{n}")).unwrap();
            let b = r.parse(&format!("y - x^{n}")).unwrap();
            let d = &a - &b;
            assert_eq!(d.is_zero(), vanishes, "{field} n={n}");
            if !vanishes {
                assert_eq!(d, r.parse(&format!("2*x^{n}")).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substitution_is_a_ring_homomorphism(
        p in small_poly(2), q in small_poly(2),
        images in prop::collection::vec(small_poly(3), 2),
        prime in prop::sample::select(vec![0u32, 2, 3, 7]),
    ) {
        let field = if prime == 0 { Field::Rationals } else { Field::Prime(prime) };
        let src = xy(field);
        let tgt = PolyRing::t_ring(field, 2);
        let ims: Vec<Poly> = images.iter().map(|t| build(&tgt, t)).collect();
        let m = RingMap::new(&src, &tgt, ims).unwrap();
        let (p, q) = (build(&src, &p), build(&src, &q));
        prop_assert_eq!(m.apply(&(&p * &q)).unwrap(), &m.apply(&p).unwrap() * &m.apply(&q).unwrap());
        prop_assert_eq!(m.apply(&(&p + &q)).unwrap(), &m.apply(&p).unwrap() + &m.apply(&q).unwrap());
        prop_assert_eq!(RingMap::identity(&src).apply(&p).unwrap(), p);
    }

    #[test]
    fn text_and_json_round_trip(p in small_poly(2)) {
        let r = xy(Field::Rationals);
        let p = build(&r, &p);
        prop_assert_eq!(r.parse(&p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(Poly::from_json(&r, &p.to_json()).unwrap(), p);
    }

    #[test]
    fn kernel_vectors_are_exact_and_grow_with_the_bound(
        row in prop::collection::vec(small_poly(2), 2..4),
        prime in prop::sample::select(vec![0u32, 5]),
    ) {
        let field = if prime == 0 { Field::Rationals } else { Field::Prime(prime) };
        let r = xy(field);
        let a = vec![row.iter().map(|t| build(&r, t)).collect::<Vec<_>>()];
        let bound = a[0].iter().filter_map(Poly::degree).max().unwrap_or(0).max(1);
        let gens = kernel_gens(&a, &r, bound);
        for g in &gens {
            let mut s = r.zero();
            for (x, v) in a[0].iter().zip(g) {
                s = &s + &(x * v);
            }
            prop_assert!(s.is_zero());
        }
        prop_assert_eq!(span_dim(&gens, &r, bound), oracle_kernel_dim(&a, &r, bound));
        // Generators found at the bound are still in the span at bound + 2.
        let wider = kernel_gens(&a, &r, bound + 2);
        let before = span_dim(&wider, &r, bound + 2);
        let mut joint = wider.clone();
        joint.extend(gens.iter().cloned());
        prop_assert_eq!(span_dim(&joint, &r, bound + 2), before);
    }

    #[test]
    fn membership_witnesses_check_out(c in small_poly(2), d in small_poly(2)) {
        let r = xy(Field::Rationals);
        let gens = vec![r.parse("x^2 + y").unwrap(), r.parse("x*y").unwrap()];
        let (c, d) = (build(&r, &c), build(&r, &d));
        let target = &(&gens[0] * &c) + &(&gens[1] * &d);
        let a = vec![gens.clone()];
        match truncated_solve(&a, &r, &SolveMode::Membership(vec![target.clone()]), 6).unwrap() {
            SolveOutcome::Member { witness, bound } => {
                prop_assert_eq!(bound, 6);
                let back = &(&gens[0] * &witness[0]) + &(&gens[1] * &witness[1]);
                prop_assert_eq!(back, target);
            }
            other => prop_assert!(false, "expected membership, got {:?}", other),
        }
    }
}
