//! Profile-function neighbourhood bases on the closed upper half-plane.
//!
//! - [`profile`]: profile functions, basic families and their axioms.
//! - [`geometry`]: neighbourhoods, the two-neighbourhood lens, containment
//!   and refinement between bases, and the vertical power map.
//! - [`criterion`]: a refutation procedure that certifies two power-law
//!   families induce non-homeomorphic spaces.
//! - [`liminf`]: numeric lower-limit estimation on geometric grids.

pub mod bisect;
pub mod error;
pub mod interval;
pub mod profile;
pub mod geometry;
pub mod criterion;
pub mod liminf;

pub use error::{Error, Result};
