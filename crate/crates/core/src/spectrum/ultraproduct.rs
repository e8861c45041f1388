use alloc::format;
use alloc::vec::Vec;

use super::FiniteRing;
use crate::setfilters::{PointSet, SetFilter, UltrafilterFin};
use crate::{Error, Result};

/// A product of finite rings modulo agreement on an ultrafilter set, with
/// the isomorphism onto the selected factor.
#[derive(Clone, Debug)]
pub struct Ultraproduct {
    product: FiniteRing,
    class_of: Vec<usize>,
    reps: Vec<usize>,
    factor: usize,
    /// `iso[c]` is the element of the selected factor matching class `c`.
    iso: Vec<usize>,
}

impl Ultraproduct {
    pub fn product(&self) -> &FiniteRing {
        &self.product
    }

    /// Number of congruence classes.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn factor(&self) -> usize {
        self.factor
    }

    pub fn iso(&self) -> &[usize] {
        &self.iso
    }
}

/// `∏ rings / ~` where `r ~ t` iff `{ s : r_s = t_s }` belongs to `u`,
/// computed literally from agreement sets, then checked to be isomorphic to
/// the factor at the ultrafilter's point.
pub fn ultraproduct_principal(rings: &[FiniteRing], u: &UltrafilterFin, cap: usize) -> Result<Ultraproduct> {
    if u.ground_size() != rings.len() {
        return Err(Error::GroundSetMismatch { expected: rings.len(), got: u.ground_size() });
    }
    let refs: Vec<&FiniteRing> = rings.iter().collect();
    let product = FiniteRing::product(&refs, cap)?;
    let mut offsets = Vec::with_capacity(rings.len() + 1);
    offsets.push(0);
    for r in rings {
        offsets.push(offsets.last().unwrap() + r.width());
    }
    let block = |i: usize, s: usize| &product.element(i)[offsets[s]..offsets[s + 1]];
    let agreement = |a: usize, b: usize| PointSet::from_indices((0..rings.len()).filter(|&s| block(a, s) == block(b, s)));

    let mut class_of = Vec::with_capacity(product.len());
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..product.len() {
        match reps.iter().position(|&r| u.contains_set(agreement(i, r))) {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(i);
            }
        }
    }

    let factor = u.point();
    let target = &rings[factor];
    let to_factor = |i: usize| target.index_of(block(i, factor)).expect("blocks are factor elements");
    let iso: Vec<usize> = reps.iter().map(|&r| to_factor(r)).collect();
    let fail = |msg| Err(Error::CheckFailed(msg));
    // well defined and bijective
    if (0..product.len()).any(|i| iso[class_of[i]] != to_factor(i)) {
        return fail(format!("congruence classes do not follow coordinate {factor}"));
    }
    let mut sorted = iso.clone();
    sorted.sort_unstable();
    if sorted != (0..target.len()).collect::<Vec<_>>() {
        return fail(format!("{} classes for a factor of size {}", reps.len(), target.len()));
    }
    // a ring homomorphism on class representatives
    for c in 0..reps.len() {
        for d in 0..reps.len() {
            let (a, b) = (reps[c], reps[d]);
            if iso[class_of[product.add(a, b)]] != target.add(iso[c], iso[d])
                || iso[class_of[product.mul(a, b)]] != target.mul(iso[c], iso[d])
            {
                return fail(format!("classes {c}, {d} break the homomorphism"));
            }
        }
    }
    if iso[class_of[product.one()]] != target.one() {
        return fail("identity not preserved".into());
    }
    Ok(Ultraproduct { product, class_of, reps, factor, iso })
}
