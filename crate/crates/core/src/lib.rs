//! Exact verification engine for equivariant bundles on the G2 flag
//! variety and the total space `V` of `𝒪(-h-H)` over it.

pub mod bundles;
pub mod checks;
pub mod coxring;
pub mod error;
pub mod rootdata;
pub mod sod;
pub mod totalspace;
pub mod weylbott;

pub use error::{Error, Result};
