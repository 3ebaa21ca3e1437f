//! Ideal arithmetic and star operations in Prüfer domains.

pub mod almost_dedekind;
pub mod error;
pub mod format;
pub mod gen;
pub mod hlocal;
pub mod oracle;
pub mod quad;
pub mod semistar;
pub mod suite;
pub mod valuation;

pub use error::{AlgebraError, ParseError};
pub use hlocal::{DomainPresentation, Factorization, GlobalIdeal, MaxClass, MaxId, PropKind};
pub use quad::{QuadExt, Rational};
pub use valuation::{Coord, Cut, Level, LocalClass, LocalOp, ValueGroup};
