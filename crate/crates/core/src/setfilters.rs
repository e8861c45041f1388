//! Filters and ultrafilters on a finite ground set `E`, zero-locus families
//! `Z_M(I)` and the finite intersection property.
//!
//! Subsets of `E` are bitmasks over the fixed order of `E`. A filter on a
//! finite set is the family of supersets of a single nonempty set, so
//! [`FilterFin`] stores just that minimal member, and every ultrafilter is
//! principal. Non-principal ultrafilters need an infinite ground set and are
//! not modelled.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Residue;
use crate::funcring::{preimage, FnValue, IdealDescriptor, IMAGE_CAP};
use crate::spectrum::{FiniteIdeal, FiniteRing};
use crate::{Error, Result};

/// Largest supported `|E|`.
pub const MAX_POINTS: usize = 62;

/// A subset of `E` as a bitmask over the order of `E`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        PointSet((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        PointSet(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset(Self::full(n))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A family of subsets of an `n`-point set, deduplicated and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    members: Vec<PointSet>,
}

impl SetFamily {
    pub fn new(n: usize, members: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::ShapeMismatch(alloc::format!("ground set size {n} not in 1..=62")));
        }
        let mut members: Vec<PointSet> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.fits(n)) {
            return Err(Error::ShapeMismatch(alloc::format!("{bad} is not a subset of an {n}-point set")));
        }
        members.sort();
        members.dedup();
        Ok(Self { n, members })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Intersection of all members; `E` itself for the empty family.
    pub fn intersection(&self) -> PointSet {
        self.members.iter().fold(PointSet::full(self.n), |acc, &m| acc.intersection(m))
    }

    pub fn is_subfamily_of(&self, filter: &impl SetFilter) -> bool {
        self.members.iter().all(|&m| filter.contains_set(m))
    }
}

/// Anything that decides membership of subsets of a finite ground set.
pub trait SetFilter {
    fn ground_size(&self) -> usize;
    fn contains_set(&self, s: PointSet) -> bool;
}

/// A filter on a finite set: all supersets of one nonempty minimal member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FilterFin {
    n: usize,
    minimal: PointSet,
}

impl FilterFin {
    pub fn new(n: usize, minimal: PointSet) -> Result<Self> {
        if n == 0 || n > MAX_POINTS || !minimal.fits(n) {
            return Err(Error::ShapeMismatch(alloc::format!("{minimal} on {n} points")));
        }
        if minimal.is_empty() {
            return Err(Error::CheckFailed(alloc::string::String::from("a filter cannot contain the empty set")));
        }
        Ok(Self { n, minimal })
    }

    /// The filter `{E}`.
    pub fn trivial(n: usize) -> Self {
        Self { n, minimal: PointSet::full(n) }
    }

    pub fn minimal_member(&self) -> PointSet {
        self.minimal
    }

    /// `self ⊆ other` as families of sets.
    pub fn is_subfilter_of(&self, other: &FilterFin) -> bool {
        self.n == other.n && other.minimal.is_subset(self.minimal)
    }

    /// Every filter on `n <= 20` points, one per nonempty minimal member.
    pub fn all(n: usize) -> impl Iterator<Item = FilterFin> {
        assert!(n <= 20, "too many filters to list");
        (1..1u64 << n).map(move |b| FilterFin { n, minimal: PointSet(b) })
    }
}

impl SetFilter for FilterFin {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn contains_set(&self, s: PointSet) -> bool {
        self.minimal.is_subset(s)
    }
}

/// The principal ultrafilter of all subsets containing `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UltrafilterFin {
    n: usize,
    point: usize,
}

impl UltrafilterFin {
    pub fn new(n: usize, point: usize) -> Result<Self> {
        if point >= n || n > MAX_POINTS {
            return Err(Error::ShapeMismatch(alloc::format!("point {point} outside {n} points")));
        }
        Ok(Self { n, point })
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn as_filter(&self) -> FilterFin {
        FilterFin { n: self.n, minimal: PointSet::singleton(self.point) }
    }
}

impl SetFilter for UltrafilterFin {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn contains_set(&self, s: PointSet) -> bool {
        s.contains(self.point)
    }
}

/// The filter generated by a family with the finite intersection property:
/// its minimal member is the intersection of all members.
///
/// On failure the error lists a subfamily with empty intersection that is
/// minimal: dropping any one of its members leaves a nonempty intersection.
pub fn fip_filter(family: &SetFamily) -> Result<FilterFin> {
    let n = family.n;
    let meet = family.intersection();
    if !meet.is_empty() {
        return Ok(FilterFin { n, minimal: meet });
    }
    // shortest failing prefix, then prune to a minimal violating subfamily
    let mut acc = PointSet::full(n);
    let mut witness = Vec::new();
    for &m in &family.members {
        acc = acc.intersection(m);
        witness.push(m);
        if acc.is_empty() {
            break;
        }
    }
    let mut i = 0;
    while i < witness.len() {
        let rest = witness
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(PointSet::full(n), |a, (_, &m)| a.intersection(m));
        if rest.is_empty() {
            witness.remove(i);
        } else {
            i += 1;
        }
    }
    Err(Error::FipViolated { members: witness.into_iter().map(PointSet::bits).collect() })
}

/// All ultrafilters containing `filter`: the principal ones at points of its
/// minimal member, in ascending point order.
pub fn refinements(filter: &FilterFin) -> Vec<UltrafilterFin> {
    filter.minimal.iter().map(|point| UltrafilterFin { n: filter.n, point }).collect()
}

/// The refinement at the smallest point of the minimal member.
pub fn canonical_refinement(filter: &FilterFin) -> UltrafilterFin {
    refinements(filter)[0]
}

/// `f ∈ M_F`, i.e. `f^{-1}(M)` is a member of `F`.
pub fn mf_contains(f: &FnValue, m: &Residue, filter: &impl SetFilter) -> Result<bool> {
    if f.len() != filter.ground_size() {
        return Err(Error::GroundSetMismatch { expected: filter.ground_size(), got: f.len() });
    }
    Ok(filter.contains_set(preimage(f, m)))
}

/// `Z_M(I)` for an ideal given by generators, computed exactly inside the
/// finite image of the ring of functions in `(D/M)^E`.
pub fn zero_locus_family(ideal: &IdealDescriptor<'_>, m: &Residue) -> Result<SetFamily> {
    let image = crate::funcring::image_ring(ideal.ring(), m, IMAGE_CAP)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| image.reduce(g).ok_or(Error::ParentMismatch))
        .collect::<Result<Vec<_>>>()?;
    let s = image.ring();
    let generated = s.ideal_generated(&gens);
    Ok(zero_locus_of(s, &generated, image.coord_residue()))
}

/// `{ t^{-1}(M) : t ∈ ideal }` for an ideal of a finite ring of tuples,
/// where `residue` decides membership in `M` coordinatewise.
pub fn zero_locus_of(ring: &FiniteRing, ideal: &FiniteIdeal, residue: &Residue) -> SetFamily {
    let members: Vec<PointSet> = ideal.members().map(|i| ring.m_locus(i, residue)).collect();
    SetFamily::new(ring.width(), members).expect("loci are subsets of E")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseRing, MDescriptor, RingElem};
    use crate::funcring::FuncRing;

    fn set(v: &[usize]) -> PointSet {
        PointSet::from_indices(v.iter().copied())
    }

    #[test]
    fn fip_examples() {
        let fam = SetFamily::new(3, [set(&[0, 1]), set(&[1, 2])]).unwrap();
        assert_eq!(fip_filter(&fam).unwrap().minimal_member(), set(&[1]));

        let fam = SetFamily::new(3, [set(&[0]), set(&[1])]).unwrap();
        assert_eq!(fip_filter(&fam), Err(Error::FipViolated { members: alloc::vec![1, 2] }));

        let fam = SetFamily::new(3, []).unwrap();
        assert_eq!(fip_filter(&fam).unwrap(), FilterFin::trivial(3));
    }

    #[test]
    fn fip_witness_is_minimal() {
        // pairwise intersecting, empty triple intersection
        let fam = SetFamily::new(3, [set(&[0, 1]), set(&[1, 2]), set(&[0, 2]), set(&[0, 1, 2])]).unwrap();
        let Err(Error::FipViolated { members }) = fip_filter(&fam) else { panic!() };
        assert_eq!(members.len(), 3);
    }

    #[test]
    fn refinement_examples() {
        let f = FilterFin::new(3, set(&[1])).unwrap();
        assert_eq!(refinements(&f).iter().map(|u| u.point()).collect::<Vec<_>>(), [1]);
        let t = FilterFin::trivial(3);
        assert_eq!(refinements(&t).iter().map(|u| u.point()).collect::<Vec<_>>(), [0, 1, 2]);
        let f = FilterFin::new(3, set(&[0, 2])).unwrap();
        assert_eq!(refinements(&f).iter().map(|u| u.point()).collect::<Vec<_>>(), [0, 2]);
        assert_eq!(canonical_refinement(&f).point(), 0);
        // every refinement really contains the filter
        for u in refinements(&f) {
            assert!(f.is_subfilter_of(&u.as_filter()));
        }
        assert!(FilterFin::new(3, PointSet::EMPTY).is_err());
    }

    /// Oracle: an ultrafilter decides every subset, by definition, and on a
    /// finite set the ultrafilters are exactly the principal ones.
    #[test]
    fn ultrafilters_are_exactly_principal_on_small_sets() {
        for n in 1..=4usize {
            let subsets: Vec<PointSet> = (0..1u64 << n).map(PointSet::from_bits).collect();
            let mut count = 0;
            for f in FilterFin::all(n) {
                let decides = subsets.iter().all(|&c| f.contains_set(c) || f.contains_set(c.complement(n)));
                assert_eq!(decides, f.minimal_member().len() == 1);
                count += decides as usize;
            }
            assert_eq!(count, n);
        }
    }

    fn m2() -> Residue {
        Residue::new(BaseRing::Integers, MDescriptor::principal(2)).unwrap()
    }

    #[test]
    fn mf_contains_examples() {
        let r = FuncRing::new(BaseRing::Integers, (0..3).map(RingElem::int).collect()).unwrap();
        let f = r.function([1, 2, 0].map(RingElem::int).to_vec()).unwrap();
        let m = m2();
        assert!(!mf_contains(&f, &m, &UltrafilterFin::new(3, 0).unwrap()).unwrap());
        assert!(mf_contains(&f, &m, &UltrafilterFin::new(3, 1).unwrap()).unwrap());
        let filt = FilterFin::new(3, set(&[1, 2])).unwrap();
        assert!(mf_contains(&f, &m, &filt).unwrap());
        let g = r.function([1, 2, 1].map(RingElem::int).to_vec()).unwrap();
        assert!(!mf_contains(&g, &m, &filt).unwrap());
        let zero = r.constant(&RingElem::int(0));
        for filt in FilterFin::all(3) {
            assert!(mf_contains(&zero, &m, &filt).unwrap());
        }
        assert_eq!(
            mf_contains(&f, &m, &FilterFin::trivial(4)),
            Err(Error::GroundSetMismatch { expected: 4, got: 3 })
        );
    }

    #[test]
    fn zero_locus_examples() {
        let r = FuncRing::new(BaseRing::Integers, (0..3).map(RingElem::int).collect())
            .unwrap()
            .with_generator_expr("x", "x")
            .unwrap();
        let m = m2();
        let g = r.function([0, 1, 0].map(RingElem::int).to_vec()).unwrap();
        let fam = zero_locus_family(&IdealDescriptor::new(&r, alloc::vec![g]).unwrap(), &m).unwrap();
        assert_eq!(fam.members(), [set(&[0, 2]), set(&[0, 1, 2])]);

        let zero = r.constant(&RingElem::int(0));
        let fam = zero_locus_family(&IdealDescriptor::new(&r, alloc::vec![zero]).unwrap(), &m).unwrap();
        assert_eq!(fam.members(), [PointSet::full(3)]);

        let one = r.constant(&RingElem::int(1));
        let fam = zero_locus_family(&IdealDescriptor::new(&r, alloc::vec![one]).unwrap(), &m).unwrap();
        assert!(fam.contains(PointSet::EMPTY));
    }
}
