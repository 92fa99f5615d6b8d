//! Exact computer algebra for semifree differential graded commutative
//! algebras: Chevalley-Eilenberg presentations, fiber integration,
//! cyclification, twisted Laurent complexes, Fourier-Mukai transforms and the
//! super-Minkowski T-duality data.

pub mod algfile;
pub mod check;
pub mod constructions;
pub mod dgca;
pub mod field;
pub mod gca;
pub mod library;
pub mod linalg;
pub mod random;
pub mod superminkowski;
pub mod tduality;
pub mod twisted;

pub use check::Check;
pub use constructions::{CentralExtension, ConstructionError, Cyclification, ExtensionFiberProduct, Projection};
pub use dgca::{CohomologyReport, DgcaError, Morphism, Presentation};
pub use field::{FieldKind, Scalar};
pub use gca::{Algebra, Element, GenId, Generator, Monomial, Parity};
pub use twisted::{FmQuintuple, TwistSpec, TwistedCochain, TwistedError};
