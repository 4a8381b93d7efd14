//! Generic constructions and checks over any [`Triangulated`] instance.
//!
//! [`Triangulated`]: crate::category::Triangulated

pub mod basic;
pub mod biproducts;
pub mod dot;
pub mod filling;
pub mod grid;
pub mod op;
pub mod puppe;
pub mod triple;
pub mod verify;

pub use basic::*;
pub use biproducts::*;
pub use filling::*;
pub use grid::*;
pub use op::Op;
pub use puppe::*;
pub use triple::*;
pub use verify::*;
