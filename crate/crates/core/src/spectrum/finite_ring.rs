use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BaseRing, Residue};
use crate::setfilters::PointSet;
use crate::{Error, Result};

/// Rings with at most this many elements get precomputed operation tables.
pub const TABLE_CAP: usize = 1024;

/// An explicit finite commutative ring: a subring of a product of finite
/// base rings, with pointwise operations.
///
/// Elements are tuples of element codes, one per coordinate, stored in
/// lexicographic order; an element is referred to by its index in that
/// order. The zero tuple is always index 0.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    coords: Vec<BaseRing>,
    flat: Vec<u32>,
    len: usize,
    one: usize,
    tables: Option<Tables>,
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl FiniteRing {
    /// The subring of `coord^width` generated by the diagonal constants and
    /// `gens`: the additive span of the scalar basis times the multiplicative
    /// monoid of the generators.
    pub fn generated(coord: &BaseRing, width: usize, gens: &[Box<[u32]>], cap: usize) -> Result<Self> {
        let q = finite_order(coord)?;
        if width == 0 {
            return Err(Error::ShapeMismatch(String::from("empty coordinate list")));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != width || g.iter().any(|&c| c as u64 >= q)) {
            return Err(Error::ShapeMismatch(format!("generator {g:?} is not a tuple over {}", coord.describe())));
        }
        if q as usize > cap {
            return Err(Error::TooLarge { what: "finite ring", size: q as usize, cap });
        }
        let coords = vec![coord.clone(); width];
        let one: Box<[u32]> = vec![coord.code(&coord.one()); width].into();
        let mul = |a: &[u32], b: &[u32]| -> Box<[u32]> { a.iter().zip(b).map(|(&x, &y)| coord.mul_codes(x, y)).collect() };

        let mut monoid = BTreeSet::new();
        monoid.insert(one.clone());
        let mut frontier = vec![one];
        while let Some(m) = frontier.pop() {
            for g in gens {
                let next = mul(&m, g);
                if monoid.insert(next.clone()) {
                    if monoid.len() > cap {
                        return Err(Error::TooLarge { what: "finite ring", size: monoid.len(), cap });
                    }
                    frontier.push(next);
                }
            }
        }

        let basis: Vec<Box<[u32]>> = scalar_basis(coord).into_iter().map(|c| vec![c; width].into()).collect();
        let spanning = monoid.iter().flat_map(|m| basis.iter().map(move |b| mul(b, m)));
        let elements = additive_span(&coords, spanning, cap)?;
        Ok(Self::from_sorted(coords, elements))
    }

    /// All of `coord^width`.
    pub fn full_power(coord: &BaseRing, width: usize, cap: usize) -> Result<Self> {
        let q = finite_order(coord)?;
        let unit = |e: usize| -> Box<[u32]> { (0..width).map(|i| (i == e) as u32).collect() };
        let gens: Vec<Box<[u32]>> = (0..width).map(unit).collect();
        if q.checked_pow(width as u32).map_or(true, |n| n > cap as u64) {
            return Err(Error::TooLarge { what: "finite ring", size: usize::MAX, cap });
        }
        Self::generated(coord, width, &gens, cap)
    }

    /// The direct product of `factors`, coordinates concatenated.
    pub fn product(factors: &[&FiniteRing], cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ShapeMismatch(String::from("empty product")));
        }
        let size = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.len()).filter(|&n| n <= cap));
        let Some(_) = size else {
            return Err(Error::TooLarge { what: "finite ring", size: usize::MAX, cap });
        };
        let coords: Vec<BaseRing> = factors.iter().flat_map(|f| f.coords.iter().cloned()).collect();
        let mut elements: Vec<Vec<u32>> = vec![Vec::new()];
        for f in factors {
            let mut next = Vec::with_capacity(elements.len() * f.len());
            for prefix in &elements {
                for i in 0..f.len() {
                    let mut t = prefix.clone();
                    t.extend_from_slice(f.element(i));
                    next.push(t);
                }
            }
            elements = next;
        }
        Ok(Self::from_sorted(coords, elements.into_iter().map(Into::into).collect()))
    }

    /// A single finite base ring as a one-coordinate ring.
    pub fn of_base(coord: &BaseRing) -> Result<Self> {
        Self::generated(coord, 1, &[], usize::MAX)
    }

    fn from_sorted(coords: Vec<BaseRing>, elements: Vec<Box<[u32]>>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let len = elements.len();
        let flat: Vec<u32> = elements.iter().flat_map(|e| e.iter().copied()).collect();
        let mut ring = Self { coords, flat, len, one: 0, tables: None };
        let one: Vec<u32> = ring.coords.iter().map(|c| c.code(&c.one())).collect();
        ring.one = ring.index_of(&one).expect("rings are unital");
        if len <= TABLE_CAP {
            let mut add = vec![0u32; len * len];
            let mut mul = vec![0u32; len * len];
            for i in 0..len {
                for j in i..len {
                    let s = ring.lookup(&ring.add_tuples(ring.element(i), ring.element(j))) as u32;
                    let p = ring.lookup(&ring.mul_tuples(ring.element(i), ring.element(j))) as u32;
                    add[i * len + j] = s;
                    add[j * len + i] = s;
                    mul[i * len + j] = p;
                    mul[j * len + i] = p;
                }
            }
            ring.tables = Some(Tables { add, mul });
        }
        ring
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn width(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BaseRing] {
        &self.coords
    }

    /// The common coordinate ring, if all coordinates agree.
    pub fn uniform_coord(&self) -> Option<&BaseRing> {
        let first = &self.coords[0];
        self.coords.iter().all(|c| c == first).then_some(first)
    }

    pub fn element(&self, i: usize) -> &[u32] {
        let w = self.width();
        &self.flat[i * w..(i + 1) * w]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u32]> {
        self.flat.chunks(self.width())
    }

    pub fn index_of(&self, t: &[u32]) -> Option<usize> {
        if t.len() != self.width() {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.element(mid).cmp(t) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn lookup(&self, t: &[u32]) -> usize {
        self.index_of(t).expect("finite ring is closed under its operations")
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// The diagonal constant with code `c`, for rings with uniform coordinates.
    pub fn constant(&self, c: u32) -> Option<usize> {
        self.uniform_coord()?;
        self.index_of(&vec![c; self.width()])
    }

    pub fn add_tuples(&self, a: &[u32], b: &[u32]) -> Box<[u32]> {
        self.coords.iter().zip(a.iter().zip(b)).map(|(c, (&x, &y))| c.add_codes(x, y)).collect()
    }

    pub fn mul_tuples(&self, a: &[u32], b: &[u32]) -> Box<[u32]> {
        self.coords.iter().zip(a.iter().zip(b)).map(|(c, (&x, &y))| c.mul_codes(x, y)).collect()
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[i * self.len + j] as usize,
            None => self.lookup(&self.add_tuples(self.element(i), self.element(j))),
        }
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[i * self.len + j] as usize,
            None => self.lookup(&self.mul_tuples(self.element(i), self.element(j))),
        }
    }

    pub fn neg(&self, i: usize) -> usize {
        let t: Box<[u32]> = self.coords.iter().zip(self.element(i)).map(|(c, &x)| c.neg_code(x)).collect();
        self.lookup(&t)
    }

    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg(j))
    }

    pub fn pow(&self, i: usize, mut e: u64) -> usize {
        let (mut acc, mut sq) = (self.one, i);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, i: usize) -> bool {
        (0..self.len).any(|j| self.mul(i, j) == self.one)
    }

    /// Recomputes every sum, product and negative from the coordinates and
    /// checks it is an element; also checks commutativity and the identity.
    pub fn verify_closure(&self) -> Result<()> {
        for i in 0..self.len {
            let (a, na) = (self.element(i), self.neg_tuple(i));
            if self.index_of(&na).is_none() {
                return Err(Error::CheckFailed(format!("-{a:?} not in ring")));
            }
            if self.mul_tuples(a, self.element(self.one)).as_ref() != a {
                return Err(Error::CheckFailed(format!("1 is not an identity for {a:?}")));
            }
            for j in 0..self.len {
                let b = self.element(j);
                for t in [self.add_tuples(a, b), self.mul_tuples(a, b)] {
                    if self.index_of(&t).is_none() {
                        return Err(Error::CheckFailed(format!("{t:?} from {a:?}, {b:?} not in ring")));
                    }
                }
                if self.mul_tuples(a, b) != self.mul_tuples(b, a) {
                    return Err(Error::CheckFailed(format!("{a:?} and {b:?} do not commute")));
                }
            }
        }
        Ok(())
    }

    fn neg_tuple(&self, i: usize) -> Box<[u32]> {
        self.coords.iter().zip(self.element(i)).map(|(c, &x)| c.neg_code(x)).collect()
    }

    /// Positions `e` whose coordinate lies in `M`. `residue` must be over the
    /// coordinate rings.
    pub fn m_locus(&self, i: usize, residue: &Residue) -> PointSet {
        let coord = residue.base();
        PointSet::from_indices(
            self.element(i).iter().enumerate().filter(|&(_, &c)| residue.contains(&coord.from_code(c))).map(|(e, _)| e),
        )
    }

    /// No coordinate lies in `M`.
    pub fn is_m_unit_valued(&self, i: usize, residue: &Residue) -> bool {
        self.m_locus(i, residue).is_empty()
    }
}

fn finite_order(coord: &BaseRing) -> Result<u64> {
    coord.order().ok_or_else(|| Error::InvalidRing(format!("{} is not finite", coord.describe())))
}

/// Codes whose integer multiples span the coordinate ring additively.
fn scalar_basis(coord: &BaseRing) -> Vec<u32> {
    match coord {
        BaseRing::ExtField(f) => {
            let p = f.p() as u32;
            (0..f.degree()).map(|i| p.pow(i as u32)).collect()
        }
        _ => vec![coord.code(&coord.one())],
    }
}

/// The additive subgroup generated by `spanning`, built one cyclic subgroup
/// at a time from cosets of what is already there.
fn additive_span(
    coords: &[BaseRing],
    spanning: impl Iterator<Item = Box<[u32]>>,
    cap: usize,
) -> Result<Vec<Box<[u32]>>> {
    let add = |a: &[u32], b: &[u32]| -> Box<[u32]> { coords.iter().zip(a.iter().zip(b)).map(|(c, (&x, &y))| c.add_codes(x, y)).collect() };
    let mut span: BTreeSet<Box<[u32]>> = BTreeSet::new();
    span.insert(vec![0u32; coords.len()].into());
    for v in spanning {
        if span.contains(&v) {
            continue;
        }
        let base: Vec<Box<[u32]>> = span.iter().cloned().collect();
        // S + <v> is the union of the cosets S + jv until jv falls back into S
        let mut shift = v.clone();
        loop {
            for s in &base {
                span.insert(add(s, &shift));
            }
            if span.len() > cap {
                return Err(Error::TooLarge { what: "finite ring", size: span.len(), cap });
            }
            shift = add(&shift, &v);
            if base.binary_search(&shift).is_ok() {
                break;
            }
        }
    }
    Ok(span.into_iter().collect())
}
