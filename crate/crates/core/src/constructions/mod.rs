//! The explicit constructions: norm forms, the two intersection combiners,
//! the unit-one lift and the dichotomy witness.

mod combiners;
mod dichotomy;
mod lift;
mod normform;

pub use combiners::{
    binary_combiner_normform, combine_finitecase, combine_notalgcl, ideal_certificate, interpolation_form,
    CombinerForm, CombinerKind,
};
pub use dichotomy::{dichotomy_witness, Dichotomy};
pub use lift::{unit_one_lift, UnitLift};
pub use normform::{
    multiplication_determinant, multiplication_matrix, norm_form, norm_form_with_modulus, NForm, NORM_DEGREE_CAP,
    NORM_FIELD_CAP,
};
