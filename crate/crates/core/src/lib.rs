//! Exact cluster combinatorics of type A-infinity.
//!
//! * [`laurent`]: Laurent polynomials over the integers.
//! * [`quiver`]: finite quivers, mutation, eventually periodic A-infinity words.
//! * [`seeds`]: seed mutation and the cluster variables of type A_n.
//! * [`tower`]: the specialization maps between the type A_n algebras and
//!   their inverse limit.
//! * [`infgon`]: finitely presented triangulations of the infinity-gon.
//! * [`diagcat`]: the category of diagonals and its Hom/Ext calculus.
//!
//! Scans that are embarrassingly parallel take an [`Exec`] strategy.

pub mod diagcat;
pub mod exec;
pub mod infgon;
pub mod laurent;
pub mod quiver;
pub mod seeds;
pub mod tower;

pub use exec::Exec;
pub use laurent::{LaurentError, LaurentPoly, Monomial, VarIndex};
