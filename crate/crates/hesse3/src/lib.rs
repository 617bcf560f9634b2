#![no_std]
extern crate alloc;

pub mod algebra;
pub mod elliptic;
pub mod error;
pub mod pencil;
pub mod plane_cubic;
pub mod symplectic;
pub mod torsion;

pub use error::Error;
