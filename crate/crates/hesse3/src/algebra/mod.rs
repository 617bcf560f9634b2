//! Exact arithmetic: prime and extension fields, univariate polynomials,
//! factorization and root extraction, and small matrices.

pub mod factor;
pub mod field;
pub mod mat3;
pub mod poly;
pub mod ratfn;

pub use factor::{factor, roots_in};
pub use field::{embed, is_subfield_order, set_seed, Field, FieldElement, FieldSpec};
pub use mat3::Mat3;
pub use poly::{discriminant, resultant, UniPoly};
pub use ratfn::RatFn;
