//! Fixtures shared by the criterion benchmarks.

use std::sync::Arc;

use tube_ncr::exactalg::SolveMode;
use tube_ncr::quivalg::{contraction_quiver, tube_algebra, tube_u, tube_v, ArrowConvention};
use tube_ncr::{AlgebraElement, Field, Poly, PolyRing, Presentation};

pub fn tube(n: usize) -> Presentation {
    tube_algebra(n, &PolyRing::t_ring(Field::Rationals, n)).expect("tube algebra")
}

/// `u` and `v` of the tube algebra, whose product exercises rewriting along
/// every vertex.
pub fn tube_uv(p: &Presentation) -> (AlgebraElement, AlgebraElement) {
    (tube_u(p), tube_v(p))
}

/// The conifold: one vertex, `f = (x, y)`.
pub fn conifold() -> Presentation {
    let s = PolyRing::new(Field::Rationals, ["x", "y"]).expect("ring");
    contraction_quiver(1, &s, &[s.var(0), s.var(1)], ArrowConvention::Tube).expect("contraction algebra")
}

/// Membership of `target` in the ideal generated by the entries of `gens`,
/// as a one-row system.
pub fn membership_problem(field: Field, gens: &[&str], target: &str) -> (Arc<PolyRing>, Vec<Vec<Poly>>, SolveMode) {
    let r = PolyRing::new(field, ["x", "y", "z"]).expect("ring");
    let row = gens.iter().map(|g| r.parse(g).expect("generator")).collect();
    let mode = SolveMode::Membership(vec![r.parse(target).expect("target")]);
    (r, vec![row], mode)
}
