//! Finite multiplicative lattices (commutative unital quantales) and their
//! z-elements.
//!
//! * [`lattice`]: finite bounded lattices, bitset element sets, homomorphisms.
//! * [`quantale`]: validated multiplications, residuals, built-in fixtures.
//! * [`spectra`]: maximal, prime, semiprime, primary and irreducible elements.
//! * [`ztheory`]: z-elements, the z-closure, z-classes and the quotient frame.
//! * [`verifier`]: executable theorem catalog, corpus enumeration and
//!   counterexample search.
//! * [`mlat`] and [`query`]: the `.mlat` text format and report rendering
//!   behind the `zlat` command.

pub mod lattice;
pub mod mlat;
pub mod quantale;
pub mod query;
pub mod spectra;
pub mod verifier;
pub mod ztheory;

pub use lattice::{BoundKind, ElementId, ElementSet, FiniteLattice, LatticeError, LatticeHom};
pub use quantale::{MultTable, MultiplicativeLattice, QuantaleError};
pub use spectra::{ClassificationRecord, LatticePredicates, SpectraError};
pub use ztheory::{QuotientFrame, ZError, ZPredicates, ZProfile};
