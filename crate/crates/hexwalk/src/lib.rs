//! hexwalk: exact machinery for self-avoiding walks on the honeycomb
//! mid-edge lattice.
//!
//! Geometry lives on an integer grid (x in units of 1/4, y in units of
//! sqrt(3)/12), weights live in the cyclotomic field Q(zeta_48), and every
//! identity audit is an exact zero test.  Floating point never enters a
//! decision; decimal output is produced by certified interval evaluation.

pub mod cache;
pub mod construct;
pub mod cyclo;
pub mod domain;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod observable;
pub mod oracle;
pub mod partition;
pub mod render;

pub use error::{Error, Result};
