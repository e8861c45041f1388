use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use super::FiniteRing;
use crate::algebra::Residue;
use crate::setfilters::PointSet;
use crate::{Error, Result};

/// Default cap on `|S|` for full ideal enumeration.
pub const ENUMERATION_CAP: usize = 1024;

/// An ideal of a [`FiniteRing`], as the set of member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteIdeal {
    members: FixedBitSet,
}

impl FiniteIdeal {
    fn from_bits(members: FixedBitSet) -> Self {
        Self { members }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Member indices in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn is_subset(&self, other: &FiniteIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_proper(&self, ring: &FiniteRing) -> bool {
        !self.contains(ring.one())
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.members().collect())
    }
}

/// Canonical order: by size, then by the ascending member list.
fn canonical_sort(ideals: &mut [FiniteIdeal]) {
    ideals.sort_by_cached_key(FiniteIdeal::sort_key);
}

impl FiniteRing {
    fn bits(&self, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.len());
        b.extend(members);
        b
    }

    pub fn zero_ideal(&self) -> FiniteIdeal {
        FiniteIdeal::from_bits(self.bits([self.zero()]))
    }

    pub fn unit_ideal(&self) -> FiniteIdeal {
        FiniteIdeal::from_bits(self.bits(0..self.len()))
    }

    /// `aS`, which is already closed under addition.
    pub fn principal_ideal(&self, a: usize) -> FiniteIdeal {
        FiniteIdeal::from_bits(self.bits((0..self.len()).map(|s| self.mul(a, s))))
    }

    /// `I + J` as a union of cosets of `I`.
    pub fn ideal_sum(&self, i: &FiniteIdeal, j: &FiniteIdeal) -> FiniteIdeal {
        let base: Vec<usize> = i.members().collect();
        let mut out = i.members.clone();
        for b in j.members() {
            if out.contains(b) {
                continue;
            }
            for &a in &base {
                out.insert(self.add(a, b));
            }
        }
        FiniteIdeal::from_bits(out)
    }

    pub fn ideal_generated(&self, gens: &[usize]) -> FiniteIdeal {
        gens.iter().fold(self.zero_ideal(), |acc, &g| {
            if acc.contains(g) { acc } else { self.ideal_sum(&acc, &self.principal_ideal(g)) }
        })
    }

    /// Whether `members` is an ideal: contains 0, closed under addition and
    /// under multiplication by every element.
    pub fn is_ideal(&self, ideal: &FiniteIdeal) -> bool {
        let m: Vec<usize> = ideal.members().collect();
        ideal.contains(self.zero())
            && m.iter().all(|&a| m.iter().all(|&b| ideal.contains(self.add(a, b))))
            && m.iter().all(|&a| (0..self.len()).all(|s| ideal.contains(self.mul(a, s))))
    }

    /// `{ t : t_e ∈ M }`, the trace of `M_U` for the ultrafilter at `e`.
    pub fn m_kernel(&self, e: usize, residue: &Residue) -> FiniteIdeal {
        let coord = residue.base();
        let members = (0..self.len()).filter(|&t| residue.contains(&coord.from_code(self.element(t)[e])));
        FiniteIdeal::from_bits(self.bits(members))
    }

    /// `{ t : t_e ∈ M for every e }`, the trace of `R(E, M)`.
    pub fn m_valued_ideal(&self, residue: &Residue) -> FiniteIdeal {
        let full = PointSet::full(self.width());
        FiniteIdeal::from_bits(self.bits((0..self.len()).filter(|&t| self.m_locus(t, residue) == full)))
    }

    /// `{ t : t^{-1}(M) ∈ F }` for a filter given by its membership test.
    pub fn m_filter_ideal(&self, residue: &Residue, filter: &impl crate::setfilters::SetFilter) -> FiniteIdeal {
        FiniteIdeal::from_bits(self.bits((0..self.len()).filter(|&t| filter.contains_set(self.m_locus(t, residue)))))
    }

    pub fn ideal_from_members(&self, members: impl IntoIterator<Item = usize>) -> Result<FiniteIdeal> {
        let ideal = FiniteIdeal::from_bits(self.bits(members));
        if self.is_ideal(&ideal) {
            Ok(ideal)
        } else {
            Err(Error::CheckFailed(alloc::string::String::from("member set is not an ideal")))
        }
    }
}

/// Every ideal of `ring`: principal ideals closed under pairwise sums until
/// nothing new appears, in canonical order.
pub fn enumerate_ideals(ring: &FiniteRing, cap: usize) -> Result<Vec<FiniteIdeal>> {
    if ring.len() > cap {
        return Err(Error::TooLarge { what: "ring for ideal enumeration", size: ring.len(), cap });
    }
    let mut principals: Vec<(usize, FiniteIdeal)> = Vec::new();
    let mut seen_principal = BTreeSet::new();
    for a in 0..ring.len() {
        let p = ring.principal_ideal(a);
        if seen_principal.insert(p.members.clone()) {
            principals.push((a, p));
        }
    }
    let mut seen: BTreeSet<FixedBitSet> = seen_principal;
    let mut queue: Vec<FiniteIdeal> = principals.iter().map(|(_, p)| p.clone()).collect();
    let mut next = 0;
    while next < queue.len() {
        let current = queue[next].clone();
        next += 1;
        for (a, p) in &principals {
            if current.contains(*a) {
                continue;
            }
            let sum = ring.ideal_sum(&current, p);
            if seen.insert(sum.members.clone()) {
                queue.push(sum);
            }
        }
    }
    canonical_sort(&mut queue);
    Ok(queue)
}

/// The maximal ideals among `ideals` (proper, not strictly inside another
/// proper one).
pub fn maximal_among(ring: &FiniteRing, ideals: &[FiniteIdeal]) -> Vec<FiniteIdeal> {
    let proper: Vec<&FiniteIdeal> = ideals.iter().filter(|i| i.is_proper(ring)).collect();
    proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .map(|i| (*i).clone())
        .collect()
}

/// `S / I` with classes numbered by their smallest member.
#[derive(Clone, Debug)]
pub struct Quotient<'a> {
    ring: &'a FiniteRing,
    class_of: Vec<usize>,
    reps: Vec<usize>,
}

impl<'a> Quotient<'a> {
    pub fn new(ring: &'a FiniteRing, ideal: &FiniteIdeal) -> Self {
        let mut class_of = vec![usize::MAX; ring.len()];
        let mut reps = Vec::new();
        let members: Vec<usize> = ideal.members().collect();
        for x in 0..ring.len() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &i in &members {
                class_of[ring.add(x, i)] = c;
            }
        }
        Self { ring, class_of, reps }
    }

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

    pub fn add(&self, c: usize, d: usize) -> usize {
        self.class_of[self.ring.add(self.reps[c], self.reps[d])]
    }

    pub fn mul(&self, c: usize, d: usize) -> usize {
        self.class_of[self.ring.mul(self.reps[c], self.reps[d])]
    }

    pub fn zero(&self) -> usize {
        self.class_of[self.ring.zero()]
    }

    pub fn one(&self) -> usize {
        self.class_of[self.ring.one()]
    }

    /// No zero divisors among nonzero classes, and `1 ≠ 0`.
    pub fn is_domain(&self) -> bool {
        let (z, n) = (self.zero(), self.len());
        self.one() != z && (0..n).filter(|&c| c != z).all(|c| (0..n).filter(|&d| d != z).all(|d| self.mul(c, d) != z))
    }

    /// Every nonzero class invertible, and `1 ≠ 0`.
    pub fn is_field(&self) -> bool {
        let (z, n) = (self.zero(), self.len());
        self.one() != z && (0..n).filter(|&c| c != z).all(|c| (0..n).any(|d| self.mul(c, d) == self.one()))
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> u64 {
        let (mut acc, mut n) = (self.one(), 1u64);
        while acc != self.zero() {
            acc = self.add(acc, self.one());
            n += 1;
        }
        n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeMaximal {
    pub prime: bool,
    pub maximal: bool,
}

/// Primality and maximality of `ideal` read off the quotient tables.
pub fn prime_maximal_test(ring: &FiniteRing, ideal: &FiniteIdeal) -> PrimeMaximal {
    let q = Quotient::new(ring, ideal);
    PrimeMaximal { prime: q.is_domain(), maximal: q.is_field() }
}
