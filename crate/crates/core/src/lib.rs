//! Exact invariants of plumbing graphs: canonical orders of the Gorenstein
//! form, blow-ups, special-module graphs, representation type, and sets of
//! orders of curve-germ modules.
//!
//! The numeric core is generic over [`scalar::Scalar`]; the aliases below fix
//! arbitrary-precision rationals.

pub mod blowup;
pub mod canonical;
pub mod error;
pub mod families;
pub mod graph;
pub mod linalg;
pub mod ordersets;
pub mod reptype;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use graph::{PlumbingGraph, Vertex, VertexId};

pub type Rational = num_rational::BigRational;
pub type Canonical = canonical::CanonicalData<Rational>;
pub type Special = special::SpecialReport<Rational>;
pub type Entry = special::McKayEntry<Rational>;
pub type Classification = reptype::Classification<Rational>;
