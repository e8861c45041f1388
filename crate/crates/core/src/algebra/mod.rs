//! Exact arithmetic in the base rings `D` and residue rings `D/M`.

mod fpx;
mod matrix;
mod mpoly;
mod poly;
pub mod primes;
mod residue;
mod ring;

pub use matrix::matrix_det;
pub use mpoly::MPoly;
pub use poly::{irreducible_poly, Poly, Poly2};
pub use residue::{MDescriptor, Residue};
pub use ring::{BaseRing, ExtField, RingElem, MAX_MODULUS};
