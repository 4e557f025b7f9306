//! Quadratic monomial schemes over path algebras: the affine variety of
//! algebras sharing a tip set, the ideal cutting out its Gröbner locus, and
//! the homological invariants shared by every point of it.
//!
//! A [`QuadraticScheme`] fixes a quiver, an admissible order and a set of
//! length-2 tips. Each choice of coefficients for the rewriting rules
//! `t -> sum c(t, n) n` is a [`Point`]; [`variety_ideal`] returns the
//! polynomials that vanish exactly on the points whose rules form a Gröbner
//! basis.
//!
//! ```
//! use koszul_core::fixtures;
//! use koszul_core::variety::{buchberger_check, variety_ideal};
//!
//! let scheme = fixtures::example_5_4();
//! let ideal = variety_ideal(&scheme);
//! assert_eq!(ideal.dimension(), 13);
//! let point = fixtures::commutative_point(&scheme);
//! assert!(buchberger_check(&scheme, &point).unwrap().is_groebner());
//! ```

pub mod coefficients;
pub mod constructions;
pub mod element;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod invariants;
pub mod order;
pub mod quiver;
pub mod variety;

pub use coefficients::{Monomial, Poly, Rational, Var};
pub use element::{Element, RewriteSystem, Rule};
pub use error::{Error, Result};
pub use exec::Execution;
pub use invariants::Dimension;
pub use order::{AdmissibleOrder, Direction, LengthLex};
pub use quiver::{ArrowId, Path, Quiver, VertexId};
pub use variety::{Point, QuadraticScheme, VarietyIdeal};
