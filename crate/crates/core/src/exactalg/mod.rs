//! Exact coefficient arithmetic: fields, polynomial rings, ring maps and a
//! truncated-degree linear solver.

mod field;
pub mod linsolve;
mod parse;
mod poly;
mod ringmap;

pub use field::{Field, Scalar};
pub use linsolve::{truncated_solve, CoordIndex, Echelon, SolveMode, SolveOutcome, SparseVec};
pub use poly::{monomials_up_to, Monomial, Poly, PolyRing};
pub use ringmap::{substitute, RingMap};
pub(crate) use poly::same_ring as poly_same_ring;
