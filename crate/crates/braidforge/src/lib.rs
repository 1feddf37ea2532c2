//! Braid group representations and the invariants they carry.
//!
//! Exact arithmetic lives in [`ring`]; [`burau`] and [`templieb`] build the
//! Alexander and Jones polynomials; [`anyon`] and [`jonesrep`] specialize to
//! roots of unity; [`simulate`] and [`localize`] sit on top.

pub mod anyon;
pub mod braid;
pub mod burau;
mod error;
pub mod jonesrep;
pub mod localize;
pub mod ring;
pub mod simulate;
pub mod templieb;

pub use error::{Error, Result};

/// Default numeric tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
