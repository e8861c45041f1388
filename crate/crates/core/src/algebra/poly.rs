use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::fpx;
use super::primes::is_prime;
use super::ring::{BaseRing, RingElem};
use crate::{Error, Result};

/// Univariate polynomial over a [`BaseRing`], normalized so the highest
/// stored coefficient is nonzero. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: BaseRing,
    coeffs: Vec<RingElem>,
}

impl Poly {
    pub fn new(ring: BaseRing, coeffs: Vec<RingElem>) -> Result<Self> {
        for c in &coeffs {
            ring.check(c)?;
        }
        let mut p = Self { ring, coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn zero(ring: BaseRing) -> Self {
        Self { ring, coeffs: Vec::new() }
    }

    pub fn constant(ring: BaseRing, c: RingElem) -> Self {
        let mut p = Self { ring, coeffs: alloc::vec![c] };
        p.normalize();
        p
    }

    /// The polynomial `x`.
    pub fn x(ring: BaseRing) -> Self {
        let coeffs = alloc::vec![ring.zero(), ring.one()];
        Self { ring, coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.ring.add(&self.coeff(i), &other.coeff(i))).collect();
        let mut p = Self { ring: self.ring.clone(), coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        self.add(&other.scale(&self.ring.from_i64(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        let mut coeffs = alloc::vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &self.ring.mul(a, b));
            }
        }
        let mut p = Self { ring: self.ring.clone(), coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        let mut p = Self { ring: self.ring.clone(), coeffs };
        p.normalize();
        p
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &RingElem) -> Result<RingElem> {
        self.ring.check(a)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, a), c)))
    }

    /// `(self - self(0)) / x`, the cofactor of `x` once the constant term is
    /// removed.
    pub fn shift_down(&self) -> Self {
        let coeffs = self.coeffs.iter().skip(1).cloned().collect();
        Self { ring: self.ring.clone(), coeffs }
    }
}

/// The smallest monic irreducible polynomial of degree `k` over `F_p`.
///
/// Monic candidates are ordered by the integer whose base-`p` digits are the
/// lower coefficients, constant term least significant.
pub fn irreducible_poly(p: u64, k: usize) -> Result<Poly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidRing(alloc::string::String::from("degree must be >= 1")));
    }
    let ring = BaseRing::prime_field(p)?;
    let coeffs = fpx::smallest_irreducible(p, k).into_iter().map(RingElem::Residue).collect();
    Poly::new(ring, coeffs)
}

/// Bivariate polynomial `sum c_ij x^i y^j` with only nonzero coefficients
/// stored, keyed by `(i, j)` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    ring: BaseRing,
    terms: BTreeMap<(u32, u32), RingElem>,
}

impl Poly2 {
    pub fn zero(ring: BaseRing) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        ring: BaseRing,
        terms: impl IntoIterator<Item = ((u32, u32), RingElem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (exp, c) in terms {
            p.ring.check(&c)?;
            p.add_term(exp, &c);
        }
        Ok(p)
    }

    /// Adds `c x^i y^j`, merging with any existing term.
    pub fn add_term(&mut self, exp: (u32, u32), c: &RingElem) {
        let sum = match self.terms.get(&exp) {
            Some(old) => self.ring.add(old, c),
            None => c.clone(),
        };
        if self.ring.is_zero(&sum) {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RingElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> RingElem {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// `sum c_ij a^i b^j`.
    pub fn eval(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.ring.check(a)?;
        self.ring.check(b)?;
        let r = &self.ring;
        Ok(self.terms.iter().fold(r.zero(), |acc, ((i, j), c)| {
            let t = r.mul(c, &r.mul(&r.pow(a, *i as u64), &r.pow(b, *j as u64)));
            r.add(&acc, &t)
        }))
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: BaseRing, f: impl Fn(&RingElem) -> RingElem) -> Self {
        let mut out = Self::zero(target);
        for (exp, c) in &self.terms {
            out.add_term(*exp, &f(c));
        }
        out
    }

    /// Splits `self = x * a(x, y) + y * b(y)`; only defined when the constant
    /// term is zero.
    pub fn split_by_variables(&self) -> Option<(Poly2, Poly2)> {
        if !self.ring.is_zero(&self.constant_term()) {
            return None;
        }
        let mut a = Self::zero(self.ring.clone());
        let mut b = Self::zero(self.ring.clone());
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                a.add_term((i - 1, j), c);
            } else {
                b.add_term((0, j - 1), c);
            }
        }
        Some((a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residues(v: &[u64]) -> Vec<RingElem> {
        v.iter().map(|&c| RingElem::Residue(c)).collect()
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(irreducible_poly(3, 1).unwrap().coeffs(), residues(&[0, 1]).as_slice());
        assert_eq!(irreducible_poly(2, 2).unwrap().coeffs(), residues(&[1, 1, 1]).as_slice());
        assert_eq!(irreducible_poly(2, 3).unwrap().coeffs(), residues(&[1, 1, 0, 1]).as_slice());
        assert_eq!(irreducible_poly(3, 2).unwrap().coeffs(), residues(&[1, 0, 1]).as_slice());
        assert!(irreducible_poly(4, 2).is_err());
    }

    /// Oracle: a monic polynomial is irreducible iff no product of two monic
    /// polynomials of positive degree equals it. Enumerates all such products.
    fn irreducible_by_products(p: u64, f: &[u64]) -> bool {
        let k = f.len() - 1;
        for d in 1..k {
            for a in 0..p.pow(d as u32) {
                for b in 0..p.pow((k - d) as u32) {
                    let g = fpx::monic_from_code(p, d, a);
                    let h = fpx::monic_from_code(p, k - d, b);
                    if fpx::mul(p, &g, &h) == f {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_is_smallest_and_irreducible() {
        for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f: Vec<u64> = irreducible_poly(p, k)
                .unwrap()
                .coeffs()
                .iter()
                .map(|c| match c {
                    RingElem::Residue(v) => *v,
                    _ => unreachable!(),
                })
                .collect();
            assert!(irreducible_by_products(p, &f));
            for x in 0..p {
                let val = f.iter().rev().fold(0, |acc, c| (acc * x + c) % p);
                assert_ne!(val, 0, "root {x} of {f:?}");
            }
            let code = f[..k].iter().rev().fold(0u64, |acc, &d| acc * p + d);
            for smaller in 0..code {
                assert!(!irreducible_by_products(p, &fpx::monic_from_code(p, k, smaller)));
            }
        }
    }

    #[test]
    fn poly2_eval_examples() {
        let s = |ring: BaseRing| {
            let one = ring.one();
            Poly2::from_terms(ring, [((2, 0), one.clone()), ((1, 1), one.clone()), ((0, 2), one)])
                .unwrap()
        };
        let f2 = BaseRing::prime_field(2).unwrap();
        let s2 = s(f2.clone());
        assert_eq!(s2.eval(&f2.zero(), &f2.zero()), Ok(f2.zero()));
        assert_eq!(s2.eval(&f2.one(), &f2.one()), Ok(f2.one()));
        let sz = s(BaseRing::Integers);
        assert_eq!(sz.eval(&RingElem::int(2), &RingElem::int(3)), Ok(RingElem::int(19)));
        assert_eq!(sz.eval(&RingElem::Residue(1), &RingElem::int(3)), Err(Error::ParentMismatch));
    }

    #[test]
    fn split_reassembles() {
        let z = BaseRing::Integers;
        let s = Poly2::from_terms(
            z.clone(),
            [((1, 0), RingElem::int(1)), ((0, 1), RingElem::int(1)), ((1, 1), RingElem::int(1)), ((0, 3), RingElem::int(5))],
        )
        .unwrap();
        let (a, b) = s.split_by_variables().unwrap();
        for x in -3..4 {
            for y in -3..4 {
                let (x, y) = (RingElem::int(x), RingElem::int(y));
                let lhs = s.eval(&x, &y).unwrap();
                let rhs = z.add(
                    &z.mul(&x, &a.eval(&x, &y).unwrap()),
                    &z.mul(&y, &b.eval(&x, &y).unwrap()),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }
}
