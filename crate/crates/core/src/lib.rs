//! Numerical toolkit for the excess-charge problem of atoms.
//!
//! The crate computes the discrete variational constants `α_{N,s}`, the
//! mean-field constant `β_s` and its lower bound `b(s)`, the multipole
//! series that link the two, the explicit physical constants entering the
//! kinetic-energy estimates, and finally upper bounds on the number of
//! electrons `N_c(Z)` a nucleus of charge `Z` can bind.
//!
//! Every scalar inequality the bounds rest on can be re-checked on dense
//! grids through [`verify`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constants;
pub mod error;
pub mod excess;
pub mod exec;
pub mod multipole;
pub mod quad;
pub mod radial;
pub mod reference;
pub mod specfun;
pub mod variational;
pub mod verify;

mod bfgs;
mod nelder_mead;

pub use error::{Error, Result};
pub use exec::Exec;
