//! Positroid cells of the totally nonnegative Grassmannian in exact
//! arithmetic.
//!
//! A cell is indexed by a Le-diagram. [`measurement::measure`] maps a
//! Le-tableau to the Plücker vector of its point, [`cell_locator::locate`]
//! finds the cell of a Plücker vector, and [`inversion`] recovers the
//! tableau, either through the Möbius function of the face poset or from the
//! minimal totally positive base.

pub mod cell_locator;
pub mod combinatorics;
pub mod error;
pub mod gamma_graph;
pub mod inversion;
pub mod json;
pub mod matrix_io;
pub mod measurement;
pub mod plucker;
pub mod rational;

pub use error::{Error, ErrorClass};
pub use rational::Rational;
