//! Exact symbolic kernel for deciding integrability criteria of discrete
//! equations: the Laurent property, irreducibility of terms, and pairwise
//! co-primeness (singularity confinement read algebraically).
//!
//! The crate is organized around a sparse multivariate polynomial type over
//! arbitrary-precision integers ([`poly::MultiPoly`]), reduced rational
//! functions ([`laurent::RationalFunction`]), one-dimensional recurrence
//! evolution ([`recurrence`]), the discrete KdV quarter-lattice
//! ([`lattice`]), and the criterion layer ([`analysis`]).

pub mod analysis;
pub mod factored;
pub mod lattice;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod recurrence;
pub mod report;

pub use laurent::{LaurentPoly, RationalFunction, UnitSpec};
pub use poly::{Monomial, MultiPoly, PolyError, PrimePoly, VarTable};
pub use recurrence::{RecurrenceSpec, TermSequence};
