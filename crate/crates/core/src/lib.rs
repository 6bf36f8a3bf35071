//! Finite flat commutative group schemes as finite free Hopf algebras over
//! `Z`, `Q` and `Z/N`: invariant measures, non-nullity ideals, the non-null
//! subscheme, Haar measures with integration in stages, and primitive
//! elements of truncated p-divisible towers.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod exactalg;
pub mod groups;
pub mod hopf;
pub mod primitive;
pub mod verify;

pub use error::{Error, Result};
