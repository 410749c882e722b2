//! Exact verification toolkit for Grassmann graphs `J_q(n, D)`.
//!
//! * [`exact`]: big integers, rationals, q-analogs and integer polynomials.
//! * [`params`]: classical parameters, intersection arrays, spectra.
//! * [`qpoly`]: triple intersection numbers and the local-eigenvalue argument.
//! * [`gf`]: small finite fields and row reduction.
//! * [`graphs`]: explicit graphs and exact combinatorial/spectral checks.
//! * [`recognize`]: recognising q-clique extensions of square grids.
//! * [`cli`]: the `grassmann` command line.

pub mod error;
pub mod exact;
pub mod params;
pub mod gf;
pub mod graphs;
pub mod qpoly;
pub mod recognize;
pub mod cli;

pub use error::{Error, Result};
