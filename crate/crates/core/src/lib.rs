//! Exact embedded resolution of plane curve singularities over finite
//! fields, log discrepancies of the resulting models, and liftings of the
//! whole picture to characteristic zero.

pub mod blowup;
pub mod error;
pub mod ideal;
pub mod invariants;
pub mod lifting;
pub mod linalg;
pub mod polyring;
pub mod problem;
pub mod report;
pub mod resolution;
pub mod scalars;
pub mod toric;

pub use blowup::{BlowupTree, DualGraph};
pub use error::{Error, Result};
pub use ideal::{Ideal, MultiIdeal};
pub use polyring::{Chart, Monomial, Poly};
pub use scalars::{extend_field, lift_field, Embedding, Field, FieldKind, ReductionMap, Scalar};
pub use resolution::{embedded_resolve, follow, log_resolve, ResolveOptions, Resolution};
pub use invariants::{DivisorTable, EquisingularityType, ExtRational, InvariantReport};
pub use lifting::{campillo, lift, LiftArtifact, LiftContext};
