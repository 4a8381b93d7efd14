//! Exact, executable triangulated categories.
//!
//! The crate provides exact linear algebra, an abstract contract for
//! triangulated categories with generic constructions and axiom checkers on
//! top of it, three concrete instances (semisimple vector spaces, the
//! homotopy category of bounded chain complexes, and the stable module
//! category over the dual numbers) and Verdier localization.

pub mod linalg;
pub mod localization;
pub mod category;
pub mod chain;
pub mod frobenius;
pub mod report;
pub mod vect;
pub mod toolkit;
