//! Covering-knot construction toolkit.
//!
//! Builds links from knot diagrams by inserting an unknotted staple at every
//! crossing, performs 1/q twist surgery on the staples, and emits
//! machine-checkable certificates: preserved Alexander polynomial, a
//! peripheral-structure-preserving epimorphism of knot groups verified in
//! finite quotients, and ribbon-concordance band data.

pub mod construction;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod poly;

pub use diagram::Diagram;
pub use error::{Error, Result};
