use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::normform::norm_form;
use crate::algebra::{BaseRing, Poly, Poly2, Residue, RingElem};
use crate::funcring::FnValue;
use crate::{Error, Result};

/// Where a [`CombinerForm`] came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombinerKind {
    /// A norm form of a degree-`k` extension of `D/M` with variables identified.
    NormForm { k: usize },
    /// Interpolation on the grid `A' x B'` of residue codes, both containing 0.
    Interpolation { xs: Vec<u32>, ys: Vec<u32> },
}

/// A binary polynomial `s` over `D` with zero constant term whose reduction
/// `s̄` mod `M` is zero at `(0, 0)` and nowhere else on the relevant grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinerForm {
    lifted: Poly2,
    reduced: Poly2,
    residue: Residue,
    kind: CombinerKind,
}

impl CombinerForm {
    /// `s` over `D`.
    pub fn form(&self) -> &Poly2 {
        &self.lifted
    }

    /// `s̄` over `D/M`.
    pub fn reduced(&self) -> &Poly2 {
        &self.reduced
    }

    pub fn residue(&self) -> &Residue {
        &self.residue
    }

    pub fn kind(&self) -> &CombinerKind {
        &self.kind
    }

    fn new(reduced: Poly2, residue: &Residue, kind: CombinerKind) -> Result<Self> {
        if !reduced.ring().is_zero(&reduced.constant_term()) {
            return Err(Error::CheckFailed("combiner has a nonzero constant term".into()));
        }
        let lifted = reduced.map_coeffs(residue.base().clone(), |c| residue.lift(c));
        let back = lifted.map_coeffs(residue.quotient().clone(), |c| residue.reduce(c));
        if back != reduced {
            return Err(Error::CheckFailed("lifted combiner does not reduce to the original".into()));
        }
        Ok(Self { lifted, reduced, residue: residue.clone(), kind })
    }
}

/// `s` from a norm form of degree `k` over `D/M`, with all variables but the
/// first identified, lifted coefficientwise to canonical representatives.
///
/// For `D/M = F_p` any `k` up to the norm-form caps works. For a non-prime
/// residue field `F_q` only `k = 2` is built: `x^2 + a xy + b y^2`, the norm
/// form of `F_q[t]/(t^2 - a t + b)` for the least `(a, b)` (by code) without
/// a root in `F_q`.
pub fn binary_combiner_normform(k: usize, residue: &Residue) -> Result<CombinerForm> {
    residue.require_maximal()?;
    let field = residue.quotient().clone();
    let reduced = match &field {
        BaseRing::PrimeField(p) => {
            let nf = norm_form(*p, k)?;
            let mut s = Poly2::zero(field.clone());
            for ((i, j), c) in nf.identify_to_binary() {
                s.add_term((i, j), &RingElem::Residue(c));
            }
            s
        }
        BaseRing::ExtField(_) if k == 2 => quadratic_norm(&field),
        _ => {
            return Err(Error::Unsupported(format!(
                "degree-{k} norm combiner over {}; only k = 2 for non-prime residue fields",
                field.describe()
            )));
        }
    };
    let q = field.order().expect("finite") as u32;
    for a in 0..q {
        for b in 0..q {
            let (x, y) = (field.from_code(a), field.from_code(b));
            if (a, b) != (0, 0) && field.is_zero(&reduced.eval(&x, &y)?) {
                return Err(Error::CheckFailed(format!("binary form vanishes at ({x}, {y})")));
            }
        }
    }
    CombinerForm::new(reduced, residue, CombinerKind::NormForm { k })
}

fn quadratic_norm(field: &BaseRing) -> Poly2 {
    let q = field.order().expect("finite") as u32;
    for a in 0..q {
        for b in 0..q {
            let (ae, be) = (field.from_code(a), field.from_code(b));
            // t^2 - a t + b has no root
            let rootless = field.elements().all(|t| {
                let v = field.add(&field.sub(&field.mul(&t, &t), &field.mul(&ae, &t)), &be);
                !field.is_zero(&v)
            });
            if rootless {
                let mut s = Poly2::zero(field.clone());
                s.add_term((2, 0), &field.one());
                s.add_term((1, 1), &ae);
                s.add_term((0, 2), &be);
                return s;
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

fn same_length(f: &FnValue, g: &FnValue) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::GroundSetMismatch { expected: f.len(), got: g.len() });
    }
    Ok(())
}

/// `h = s(f, g)` pointwise.
pub fn combine_notalgcl(f: &FnValue, g: &FnValue, residue: &Residue, s: &CombinerForm) -> Result<FnValue> {
    same_length(f, g)?;
    if s.residue() != residue {
        return Err(Error::ParentMismatch);
    }
    let values = f.values().iter().zip(g.values()).map(|(a, b)| s.form().eval(a, b)).collect::<Result<Vec<_>>>()?;
    Ok(FnValue::from_values(values))
}

/// The interpolation combiner for the residues taken by `f` and `g`:
/// `s̄` is 0 at `(0, 0)` and 1 at every other point of `(A ∪ {0}) x (B ∪ {0})`.
pub fn interpolation_form(f: &FnValue, g: &FnValue, residue: &Residue) -> Result<CombinerForm> {
    same_length(f, g)?;
    residue.require_maximal()?;
    let field = residue.quotient().clone();
    let grid = |v: &FnValue| -> Result<Vec<u32>> {
        let mut set: BTreeSet<u32> = BTreeSet::new();
        set.insert(0);
        for a in v.values() {
            residue.base().check(a)?;
            set.insert(residue.reduce_code(a));
        }
        Ok(set.into_iter().collect())
    };
    let (xs, ys) = (grid(f)?, grid(g)?);
    let lx: Vec<Poly> = xs.iter().map(|&a| lagrange_basis(&field, &xs, a)).collect::<Result<_>>()?;
    let ly: Vec<Poly> = ys.iter().map(|&b| lagrange_basis(&field, &ys, b)).collect::<Result<_>>()?;
    let mut s = Poly2::zero(field.clone());
    for (ia, &a) in xs.iter().enumerate() {
        for (ib, &b) in ys.iter().enumerate() {
            if (a, b) == (0, 0) {
                continue;
            }
            for (i, ca) in lx[ia].coeffs().iter().enumerate() {
                for (j, cb) in ly[ib].coeffs().iter().enumerate() {
                    s.add_term((i as u32, j as u32), &field.mul(ca, cb));
                }
            }
        }
    }
    for &a in &xs {
        for &b in &ys {
            let want = if (a, b) == (0, 0) { field.zero() } else { field.one() };
            if s.eval(&field.from_code(a), &field.from_code(b))? != want {
                return Err(Error::CheckFailed(format!("interpolation misses grid point ({a}, {b})")));
            }
        }
    }
    CombinerForm::new(s, residue, CombinerKind::Interpolation { xs, ys })
}

/// `prod_{c != a} (x - c) / (a - c)` over the field, for codes.
fn lagrange_basis(field: &BaseRing, nodes: &[u32], a: u32) -> Result<Poly> {
    let ae = field.from_code(a);
    let mut out = Poly::constant(field.clone(), field.one());
    for &c in nodes.iter().filter(|&&c| c != a) {
        let ce = field.from_code(c);
        let inv = field.inverse(&field.sub(&ae, &ce))?;
        let lin = Poly::new(field.clone(), alloc::vec![field.neg(&ce), field.one()])?;
        out = out.mul(&lin)?.scale(&inv);
    }
    Ok(out)
}

/// `h = s(f, g)` for the interpolation combiner built from `f` and `g`.
pub fn combine_finitecase(f: &FnValue, g: &FnValue, residue: &Residue) -> Result<(FnValue, CombinerForm)> {
    let s = interpolation_form(f, g, residue)?;
    let h = combine_notalgcl(f, g, residue, &s)?;
    Ok((h, s))
}

/// Cofactors `(a, b)` with `s(f, g) = a·f + b·g`, both polynomial in `f, g`
/// over `D` and hence in any ring of functions containing `f` and `g`.
pub fn ideal_certificate(s: &CombinerForm, f: &FnValue, g: &FnValue) -> Result<(FnValue, FnValue)> {
    same_length(f, g)?;
    let (a, b) = s
        .form()
        .split_by_variables()
        .ok_or_else(|| Error::CheckFailed("combiner has a nonzero constant term".into()))?;
    let eval = |p: &Poly2| -> Result<FnValue> {
        Ok(FnValue::from_values(
            f.values().iter().zip(g.values()).map(|(x, y)| p.eval(x, y)).collect::<Result<Vec<_>>>()?,
        ))
    };
    Ok((eval(&a)?, eval(&b)?))
}
