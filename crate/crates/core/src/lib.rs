#![allow(clippy::needless_range_loop, clippy::len_without_is_empty, clippy::type_complexity)]

//! Exact local Hecke algebra computations over finite chain rings `O/m^N`.

pub mod curves;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod liealg;
pub mod orbits;
pub mod ringcore;
pub mod satake;

pub use error::{Error, Result};
