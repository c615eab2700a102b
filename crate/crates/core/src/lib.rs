//! Compact simple Lie algebras in a Weyl basis, the 3-symmetric spaces they
//! carry, and sectional curvature of normal homogeneous metrics.

pub mod chevalley;
pub mod compact;
pub mod curvature;
pub mod error;
pub mod presets;
pub mod rational;
pub mod rootsys;
pub mod surd;
pub mod threesym;

pub use error::{Error, Result};
