//! Exact computations with the Fibonacci, Lucas and Appell derivations of
//! `Q[x_0, x_1, ...]`: kernel elements, intertwining maps and the polynomial
//! identities they induce.

pub mod derivops;
pub mod dixmier;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod identity;
pub mod intertwine;
pub mod polyring;

pub use derivops::{Builtin, Derivation};
pub use error::{Error, Result};
pub use exactnum::{Rational, TruncatedSeries};
pub use families::FamilyKind;
pub use identity::{IdentityReport, ScanReport};
pub use intertwine::{CoeffTable, IntertwiningReport, LinearSubstitution, MapKind, Route};
pub use polyring::{Monomial, Poly, PolyMatrix, Var};
