use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::algebra::{Poly, Residue, RingElem};
use crate::funcring::FnValue;
use crate::{Error, Result};

/// The output of [`unit_one_lift`] together with how it was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitLift {
    /// `f = u·h(g)`, congruent to 1 mod `M` at every point.
    pub f: FnValue,
    /// Canonical representatives `d_1 < ... < d_k` of the residues of `g`.
    pub residues: Vec<RingElem>,
    /// `u`, the canonical lift of `((-1)^{k+1} d_1 ... d_k)^{-1}` mod `M`.
    pub u: RingElem,
    /// `P(y) = u·(prod (y - d_i) - (-1)^k prod d_i)`, so `f = P(g)`.
    pub poly: Poly,
    /// `P(y) / y`, so `f = cofactor(g)·g` exhibits `f` in the ideal of `g`.
    pub cofactor: Poly,
}

/// An element of the ideal generated by an `M`-unit-valued `g` that is
/// `≡ 1` mod `M` at every point.
pub fn unit_one_lift(g: &FnValue, residue: &Residue) -> Result<UnitLift> {
    residue.require_maximal()?;
    let base = residue.base().clone();
    let field = residue.quotient();
    let mut codes = BTreeSet::new();
    for (point, v) in g.values().iter().enumerate() {
        base.check(v)?;
        if residue.contains(v) {
            return Err(Error::NotUnitValued { point });
        }
        codes.insert(residue.reduce_code(v));
    }
    let residues: Vec<RingElem> = codes.iter().map(|&c| residue.lift_code(c)).collect();
    let k = residues.len();

    let mut product = Poly::constant(base.clone(), base.one());
    let mut dprod = base.one();
    for d in &residues {
        product = product.mul(&Poly::new(base.clone(), alloc::vec![base.neg(d), base.one()])?)?;
        dprod = base.mul(&dprod, d);
    }
    let sign = |odd: bool, x: &RingElem| if odd { base.neg(x) } else { x.clone() };
    let h = product.sub(&Poly::constant(base.clone(), sign(k % 2 == 1, &dprod)))?;
    let target = residue.reduce(&sign(k % 2 == 0, &dprod));
    let u = residue.lift(&field.inverse(&target)?);
    let poly = h.scale(&u);
    if !base.is_zero(&poly.coeff(0)) {
        return Err(Error::CheckFailed(alloc::string::String::from("lift polynomial has a constant term")));
    }
    let values = g.values().iter().map(|v| poly.eval(v)).collect::<Result<Vec<_>>>()?;
    let f = FnValue::from_values(values);
    if let Some(point) = f.values().iter().position(|v| residue.reduce(v) != field.one()) {
        return Err(Error::CheckFailed(alloc::format!("lift is not 1 mod M at point {point}")));
    }
    let cofactor = poly.shift_down();
    Ok(UnitLift { f, residues, u, poly, cofactor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseRing, MDescriptor};

    fn ints(v: &[i64]) -> FnValue {
        FnValue::from_values(v.iter().map(|&n| RingElem::int(n)).collect())
    }

    fn m(n: i64) -> Residue {
        Residue::new(BaseRing::Integers, MDescriptor::principal(n)).unwrap()
    }

    #[test]
    fn examples() {
        let l = unit_one_lift(&ints(&[2, 7]), &m(5)).unwrap();
        assert_eq!(l.u, RingElem::int(3));
        assert_eq!(l.f, ints(&[6, 21]));

        let g = ints(&[1, 6, 11]);
        let l = unit_one_lift(&g, &m(5)).unwrap();
        assert_eq!(l.u, RingElem::int(1));
        assert_eq!(l.f, g);

        let g = ints(&[1, 2, 4, 5]);
        let l = unit_one_lift(&g, &m(3)).unwrap();
        assert_eq!(l.u, RingElem::int(1));
        // (g - 1)(g - 2) - 2
        assert_eq!(l.f, ints(&[-2, -2, 4, 10]));

        assert_eq!(unit_one_lift(&ints(&[1, 3]), &m(3)), Err(Error::NotUnitValued { point: 1 }));
        assert_eq!(unit_one_lift(&ints(&[1]), &m(4)), Err(Error::NotMaximal));
    }

    #[test]
    fn cofactor_certificate() {
        let g = ints(&[2, 3, 4, 6, -1, 13]);
        let l = unit_one_lift(&g, &m(7)).unwrap();
        let z = BaseRing::Integers;
        for (e, v) in g.values().iter().enumerate() {
            assert_eq!(&z.mul(&l.cofactor.eval(v).unwrap(), v), l.f.get(e));
        }
    }
}
