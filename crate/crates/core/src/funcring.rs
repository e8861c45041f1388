//! Rings of functions on a finite set `E`, as value tables.
//!
//! A [`FuncRing`] is the subring of `D^E` generated by the constant functions
//! and a list of named generators. Its elements are only ever produced from
//! generators and constants (by [`FuncRing::eval_expr`] and the pointwise
//! operations): whether an arbitrary table over `D = Z` belongs to the ring is
//! not decided here. Over a finite quotient `D/M` the question is decidable,
//! and [`ImageRing::reduce`] answers it for the image in `(D/M)^E`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::algebra::{BaseRing, MDescriptor, Poly, Poly2, Residue, RingElem};
use crate::expr::{parse_expression, Evaluator, Expr};
use crate::setfilters::{PointSet, MAX_POINTS};
use crate::spectrum::FiniteRing;
use crate::{Error, Result};

/// Default cap on the size of an image ring.
pub const IMAGE_CAP: usize = 65536;

/// A function `E -> D` as its values along the order of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FnValue(Vec<RingElem>);

impl FnValue {
    /// A bare value table; nothing ties it to a particular ring.
    pub fn from_values(values: Vec<RingElem>) -> Self {
        FnValue(values)
    }

    pub fn values(&self) -> &[RingElem] {
        &self.0
    }

    pub fn get(&self, e: usize) -> &RingElem {
        &self.0[e]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncRing {
    base: BaseRing,
    points: Vec<RingElem>,
    generators: Vec<(String, FnValue)>,
}

impl FuncRing {
    /// `E` must be nonempty, duplicate-free and of size at most 62.
    pub fn new(base: BaseRing, points: Vec<RingElem>) -> Result<Self> {
        if points.is_empty() || points.len() > MAX_POINTS {
            return Err(Error::ShapeMismatch(format!("|E| = {} not in 1..=62", points.len())));
        }
        for (i, e) in points.iter().enumerate() {
            base.check(e)?;
            if points[..i].contains(e) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(Self { base, points, generators: Vec::new() })
    }

    pub fn with_generator(mut self, name: &str, f: FnValue) -> Result<Self> {
        self.check_fn(&f)?;
        if self.generators.iter().any(|(n, _)| n == name) {
            return Err(Error::ShapeMismatch(format!("generator `{name}` declared twice")));
        }
        self.generators.push((name.to_string(), f));
        Ok(self)
    }

    /// Adds a generator defined by an expression in `x` (the identity
    /// function `E -> D`) and the generators declared so far.
    pub fn with_generator_expr(self, name: &str, text: &str) -> Result<Self> {
        let f = self.eval_in_x(&parse_expression(text)?)?;
        self.with_generator(name, f)
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn points(&self) -> &[RingElem] {
        &self.points
    }

    /// `|E|`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn generators(&self) -> &[(String, FnValue)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&FnValue> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    fn check_fn(&self, f: &FnValue) -> Result<()> {
        if f.len() != self.size() {
            return Err(Error::GroundSetMismatch { expected: self.size(), got: f.len() });
        }
        f.0.iter().try_for_each(|v| self.base.check(v))
    }

    /// A value table over this ring's `E` and `D`. Membership in the ring is
    /// not checked (see the module docs).
    pub fn function(&self, values: Vec<RingElem>) -> Result<FnValue> {
        let f = FnValue(values);
        self.check_fn(&f)?;
        Ok(f)
    }

    pub fn constant(&self, c: &RingElem) -> FnValue {
        FnValue(alloc::vec![c.clone(); self.size()])
    }

    pub fn identity(&self) -> FnValue {
        FnValue(self.points.clone())
    }

    fn zip(&self, f: &FnValue, g: &FnValue, op: impl Fn(&RingElem, &RingElem) -> RingElem) -> FnValue {
        FnValue(f.0.iter().zip(&g.0).map(|(a, b)| op(a, b)).collect())
    }

    pub fn add(&self, f: &FnValue, g: &FnValue) -> FnValue {
        self.zip(f, g, |a, b| self.base.add(a, b))
    }

    pub fn sub(&self, f: &FnValue, g: &FnValue) -> FnValue {
        self.zip(f, g, |a, b| self.base.sub(a, b))
    }

    pub fn mul(&self, f: &FnValue, g: &FnValue) -> FnValue {
        self.zip(f, g, |a, b| self.base.mul(a, b))
    }

    pub fn scale(&self, c: &RingElem, f: &FnValue) -> FnValue {
        FnValue(f.0.iter().map(|a| self.base.mul(c, a)).collect())
    }

    /// `g ∘ f` for a polynomial `g` over `D`.
    pub fn apply_poly(&self, g: &Poly, f: &FnValue) -> Result<FnValue> {
        if g.ring() != &self.base {
            return Err(Error::ParentMismatch);
        }
        Ok(FnValue(f.0.iter().map(|a| g.eval(a)).collect::<Result<_>>()?))
    }

    /// `e -> s(f(e), g(e))`.
    pub fn apply_poly2(&self, s: &Poly2, f: &FnValue, g: &FnValue) -> Result<FnValue> {
        if s.ring() != &self.base {
            return Err(Error::ParentMismatch);
        }
        Ok(FnValue(f.0.iter().zip(&g.0).map(|(a, b)| s.eval(a, b)).collect::<Result<_>>()?))
    }

    /// Pointwise evaluation of an expression in the generator names.
    pub fn eval_expr(&self, expr: &Expr) -> Result<FnValue> {
        expr.eval(&Pointwise { ring: self, allow_x: false })
    }

    /// Like [`Self::eval_expr`], with `x` also standing for the identity.
    pub fn eval_in_x(&self, expr: &Expr) -> Result<FnValue> {
        expr.eval(&Pointwise { ring: self, allow_x: true })
    }
}

struct Pointwise<'a> {
    ring: &'a FuncRing,
    allow_x: bool,
}

impl Evaluator<FnValue> for Pointwise<'_> {
    fn constant(&self, n: &BigInt) -> FnValue {
        self.ring.constant(&self.ring.base.from_int(n))
    }

    fn variable(&self, name: &str) -> Result<FnValue> {
        match self.ring.generator(name) {
            Some(f) => Ok(f.clone()),
            None if self.allow_x && name == "x" => Ok(self.ring.identity()),
            None => Err(Error::UnknownGenerator(name.to_string())),
        }
    }

    fn add(&self, a: &FnValue, b: &FnValue) -> FnValue {
        self.ring.add(a, b)
    }

    fn sub(&self, a: &FnValue, b: &FnValue) -> FnValue {
        self.ring.sub(a, b)
    }

    fn mul(&self, a: &FnValue, b: &FnValue) -> FnValue {
        self.ring.mul(a, b)
    }
}

/// An ideal of a [`FuncRing`] given by generators.
#[derive(Clone, Debug)]
pub struct IdealDescriptor<'a> {
    ring: &'a FuncRing,
    generators: Vec<FnValue>,
}

impl<'a> IdealDescriptor<'a> {
    pub fn new(ring: &'a FuncRing, generators: Vec<FnValue>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::ShapeMismatch(String::from("an ideal needs at least one generator")));
        }
        generators.iter().try_for_each(|g| ring.check_fn(g))?;
        Ok(Self { ring, generators })
    }

    pub fn ring(&self) -> &'a FuncRing {
        self.ring
    }

    pub fn generators(&self) -> &[FnValue] {
        &self.generators
    }
}

/// `f^{-1}(M)` as a bitmask over `E`.
pub fn preimage(f: &FnValue, m: &Residue) -> PointSet {
    PointSet::from_indices(f.0.iter().enumerate().filter(|(_, v)| m.contains(v)).map(|(e, _)| e))
}

/// Whether every value of `f` is a unit modulo the maximal ideal `M`.
pub fn is_m_unit_valued(f: &FnValue, m: &Residue) -> Result<bool> {
    m.require_maximal()?;
    Ok(preimage(f, m).is_empty())
}

/// The image of a ring of functions in `(D/M)^E`, with the reduction map.
#[derive(Clone, Debug)]
pub struct ImageRing {
    ring: FiniteRing,
    residue: Residue,
    coord_residue: Residue,
}

impl ImageRing {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    /// The reduction `D -> D/M`.
    pub fn residue(&self) -> &Residue {
        &self.residue
    }

    /// The zero ideal of `D/M`: membership in `M` after reduction.
    pub fn coord_residue(&self) -> &Residue {
        &self.coord_residue
    }

    /// `f mod M` as a tuple of codes, in or out of the image.
    pub fn reduce_tuple(&self, f: &FnValue) -> Box<[u32]> {
        f.0.iter().map(|v| self.residue.reduce_code(v)).collect()
    }

    /// Index of `f mod M` in the image, or `None` if `f` reduces outside it.
    pub fn reduce(&self, f: &FnValue) -> Option<usize> {
        self.ring.index_of(&self.reduce_tuple(f))
    }

    /// Canonical lift to `D^E` of an image element.
    pub fn lift(&self, i: usize) -> FnValue {
        FnValue(self.ring.element(i).iter().map(|&c| self.residue.lift_code(c)).collect())
    }
}

/// The subring of `(D/M)^E` generated by the constants and the reduced
/// generators of `R`, listed in sorted tuple order.
pub fn image_ring(r: &FuncRing, m: &Residue, cap: usize) -> Result<ImageRing> {
    if m.base() != r.base() {
        return Err(Error::ParentMismatch);
    }
    let coord = m.quotient().clone();
    let gens: Vec<Box<[u32]>> = r.generators.iter().map(|(_, g)| g.0.iter().map(|v| m.reduce_code(v)).collect()).collect();
    let ring = FiniteRing::generated(&coord, r.size(), &gens, cap)?;
    let coord_residue = Residue::new(coord, MDescriptor::Zero)?;
    Ok(ImageRing { ring, residue: m.clone(), coord_residue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn ints(v: &[i64]) -> Vec<RingElem> {
        v.iter().map(|&n| RingElem::int(n)).collect()
    }

    fn m(n: i64) -> Residue {
        Residue::new(BaseRing::Integers, MDescriptor::principal(n)).unwrap()
    }

    fn x_ring(n: i64) -> FuncRing {
        FuncRing::new(BaseRing::Integers, ints(&(0..n).collect::<Vec<_>>())).unwrap().with_generator_expr("x", "x").unwrap()
    }

    #[test]
    fn eval_expr_examples() {
        let r = FuncRing::new(BaseRing::Integers, ints(&[0, 1, 2])).unwrap();
        let g1 = r.identity();
        let r = r.with_generator("g1", g1).unwrap();
        let v = r.eval_expr(&parse_expression("g1^2 + 1").unwrap()).unwrap();
        assert_eq!(v.values(), ints(&[1, 2, 5]));
        assert_eq!(r.eval_expr(&parse_expression("3").unwrap()).unwrap().values(), ints(&[3, 3, 3]));
        assert_eq!(
            r.eval_expr(&parse_expression("g7").unwrap()),
            Err(Error::UnknownGenerator(String::from("g7")))
        );
        // `x` is only implicit in generator definitions
        assert!(r.eval_expr(&parse_expression("x").unwrap()).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FuncRing::new(BaseRing::Integers, ints(&[0, 1, 0])), Err(Error::DuplicatePoint(2)));
        assert!(FuncRing::new(BaseRing::Integers, Vec::new()).is_err());
        let r = FuncRing::new(BaseRing::Integers, ints(&[0, 1])).unwrap();
        assert_eq!(r.function(ints(&[1])), Err(Error::GroundSetMismatch { expected: 2, got: 1 }));
        assert!(r.function(alloc::vec![RingElem::Residue(1), RingElem::int(0)]).is_err());
    }

    #[test]
    fn preimage_examples() {
        let r = FuncRing::new(BaseRing::Integers, ints(&[0, 1, 2, 3])).unwrap();
        let f = r.function(ints(&[1, 2, 0, 4])).unwrap();
        assert_eq!(preimage(&f, &m(2)), PointSet::from_indices([1, 2, 3]));
        assert_eq!(preimage(&r.constant(&RingElem::int(1)), &m(2)), PointSet::EMPTY);
        assert_eq!(preimage(&r.constant(&RingElem::int(0)), &m(7)), PointSet::full(4));
    }

    #[test]
    fn unit_valued_examples() {
        let r = FuncRing::new(BaseRing::Integers, ints(&[0, 1, 2])).unwrap();
        assert!(is_m_unit_valued(&r.function(ints(&[1, 3, 5])).unwrap(), &m(2)).unwrap());
        assert!(!is_m_unit_valued(&r.function(ints(&[1, 2, 3])).unwrap(), &m(2)).unwrap());
        assert_eq!(is_m_unit_valued(&r.function(ints(&[1, 3, 5])).unwrap(), &m(6)), Err(Error::NotMaximal));

        let f5 = BaseRing::prime_field(5).unwrap();
        let r = FuncRing::new(f5.clone(), f5.elements().collect()).unwrap();
        let zero = Residue::new(f5, MDescriptor::Zero).unwrap();
        let id = r.identity();
        assert!(!is_m_unit_valued(&id, &zero).unwrap());
        let shifted = r.add(&id, &r.constant(&RingElem::Residue(1)));
        assert!(!is_m_unit_valued(&shifted, &zero).unwrap());
        let sq1 = r.add(&r.mul(&id, &id), &r.constant(&RingElem::Residue(2)));
        // x^2 + 2 has no root mod 5
        assert!(is_m_unit_valued(&sq1, &zero).unwrap());
    }

    #[test]
    fn image_ring_examples() {
        let img = image_ring(&x_ring(3), &m(2), IMAGE_CAP).unwrap();
        let s = img.ring();
        let elems: Vec<&[u32]> = s.elements().collect();
        assert_eq!(elems, [&[0, 0, 0][..], &[0, 1, 0], &[1, 0, 1], &[1, 1, 1]]);

        let consts = FuncRing::new(BaseRing::Integers, ints(&[0, 1, 2])).unwrap();
        assert_eq!(image_ring(&consts, &m(3), IMAGE_CAP).unwrap().ring().len(), 3);

        let r = FuncRing::new(BaseRing::Integers, ints(&[0, 1])).unwrap().with_generator("g", FnValue(ints(&[0, 1]))).unwrap();
        assert_eq!(image_ring(&r, &m(2), IMAGE_CAP).unwrap().ring().len(), 4);

        assert!(matches!(image_ring(&x_ring(12), &m(5), 1000), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn image_ring_over_extension_contains_all_constants() {
        let f4 = BaseRing::galois_field(2, 2).unwrap();
        let r = FuncRing::new(f4.clone(), f4.elements().take(3).collect()).unwrap().with_generator_expr("x", "x").unwrap();
        let img = image_ring(&r, &Residue::new(f4.clone(), MDescriptor::Zero).unwrap(), IMAGE_CAP).unwrap();
        for c in 0..4 {
            assert!(img.ring().constant(c).is_some());
        }
        // x separates the three points, so S is all of F_4^3
        assert_eq!(img.ring().len(), 64);
        img.ring().verify_closure().unwrap();
    }

    #[test]
    fn reduce_and_lift() {
        let r = x_ring(3);
        let img = image_ring(&r, &m(2), IMAGE_CAP).unwrap();
        let f = r.eval_expr(&parse_expression("x^2 + 3*x + 5").unwrap()).unwrap();
        let i = img.reduce(&f).unwrap();
        assert_eq!(img.ring().element(i), [1, 1, 1]);
        assert_eq!(img.lift(i).values(), ints(&[1, 1, 1]));
        assert_eq!(img.reduce(&r.function(ints(&[1, 0, 0])).unwrap()), None);
    }
}
