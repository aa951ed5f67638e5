//! Exact computations around the tube algebra of a cylinder relative to a
//! set of marked points.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactalg`]: exact fields, multivariate polynomials, ring maps and a
//!   degree-truncated sparse linear solver.
//! - [`quivalg`]: graded quiver presentations with rewriting normal forms and
//!   Leibniz differentials, plus constructors for the tube algebra, the
//!   contraction quiver and Drinfeld localisation.
//! - [`arcmodel`]: combinatorial marked surfaces (annulus, disc) and the
//!   presentation generated from their faces.
//! - [`twcat`]: finite A-infinity product tables and twisted complexes, used
//!   to check the half-twist equivalence.
//! - [`toric`]: Cox-ring weight enumeration, section modules and the
//!   endomorphism algebra of the tilting bundle.
//! - [`cohom`]: bound-labelled cohomology of free complexes and DG quiver
//!   algebras.

pub mod arcmodel;
pub mod cohom;
pub mod error;
pub mod exactalg;
pub mod quivalg;
pub mod toric;
pub mod twcat;

pub use error::{Error, Result};
pub use exactalg::{Field, Monomial, Poly, PolyRing, RingMap, Scalar};
pub use quivalg::{AlgebraElement, PathWord, Presentation, Quiver};
