//! Exact, finite-instance machinery for the prime spectrum of rings of
//! functions `E -> D`.
//!
//! A ring of functions is a subring of `D^E` that contains every constant
//! function. For a maximal ideal `M` of `D` with finite residue field, the
//! prime ideals containing the kernel of the reduction `R -> (D/M)^E` are
//! exactly the ideals `M_U = { f : f^{-1}(M) in U }` for ultrafilters `U` on
//! `E`. Everything in this crate is executable on finite `E`, where every
//! ultrafilter is principal:
//!
//! - [`algebra`]: exact arithmetic in `Z`, `Z/m`, `F_p` and `F_{p^k}`,
//!   polynomials, determinants and residue maps `D -> D/M`.
//! - [`funcring`]: value tables over a finite `E`, generated rings of
//!   functions and their finite images in `(D/M)^E`.
//! - [`setfilters`]: filters, ultrafilters, zero-locus families and the
//!   finite intersection property.
//! - [`constructions`]: norm forms, intersection combiners, unit-one lifts
//!   and dichotomy witnesses.
//! - [`spectrum`]: finite commutative rings, ideal enumeration and the
//!   verification harnesses for the classification theorems.
//! - [`intpoly`]: integer-valued polynomials in the binomial basis and
//!   membership in `M_alpha` via truncated p-adic arguments.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod expr;
pub mod funcring;
pub mod intpoly;
pub mod setfilters;
pub mod spectrum;

pub use error::{Error, Result};
