//! Finite commutative rings, their ideal lattices, and exhaustive checks of
//! the classification of primes over `M` in rings of functions.

mod finite_ring;
mod ideals;
mod ultraproduct;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use finite_ring::{FiniteRing, TABLE_CAP};
pub use ideals::{
    enumerate_ideals, maximal_among, prime_maximal_test, FiniteIdeal, PrimeMaximal, Quotient, ENUMERATION_CAP,
};
pub use ultraproduct::{ultraproduct_principal, Ultraproduct};

use crate::algebra::Residue;
use crate::constructions::{dichotomy_witness, Dichotomy};
use crate::funcring::{image_ring, FuncRing, ImageRing, IMAGE_CAP};
use crate::setfilters::{fip_filter, zero_locus_of, FilterFin, PointSet, SetFilter};
use crate::{Error, Result};

/// How `S / Q` compares with the residue field `F = D/M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueFieldCheck {
    /// `representatives[c]` is the class of the constant with code `c` in `F`.
    pub representatives: Vec<usize>,
    pub quotient_size: usize,
    pub characteristic: u64,
}

/// Checks that the constants represent every class of `S / Q` exactly once
/// and that `c -> c + Q` is a ring isomorphism `F -> S / Q`.
///
/// `residue` reduces the coordinate ring of `S` onto `F`; constants of `F`
/// are carried into `S` by their canonical lifts.
pub fn quotient_residue_check(s: &FiniteRing, q: &FiniteIdeal, residue: &Residue) -> Result<ResidueFieldCheck> {
    let fail = |msg: String| Err(Error::CheckFailed(msg));
    let coord = s.uniform_coord().ok_or_else(|| Error::CheckFailed(String::from("S has no common coordinate ring")))?;
    if coord != residue.base() {
        return Err(Error::ParentMismatch);
    }
    let field = residue.quotient();
    if !field.is_field() {
        return Err(Error::NotMaximal);
    }
    let quotient = Quotient::new(s, q);
    if !quotient.is_field() {
        return fail(String::from("Q is not maximal"));
    }
    let order = field.order().expect("residue fields are finite") as u32;
    let mut representatives = Vec::with_capacity(order as usize);
    for c in 0..order {
        let lift = coord.code(&residue.lift_code(c));
        let Some(i) = s.constant(lift) else {
            return fail(format!("constant {} is not in S", field.from_code(c)));
        };
        representatives.push(quotient.class_of(i));
    }
    let mut seen = alloc::vec![None; quotient.len()];
    for (c, &class) in representatives.iter().enumerate() {
        if let Some(d) = seen[class] {
            return fail(format!(
                "constants {} and {} are congruent mod Q",
                field.from_code(d as u32),
                field.from_code(c as u32)
            ));
        }
        seen[class] = Some(c);
    }
    if let Some(class) = seen.iter().position(Option::is_none) {
        return fail(format!("no constant represents the class of {:?}", s.element(quotient.rep(class))));
    }
    for a in 0..order {
        for b in 0..order {
            let (ca, cb) = (representatives[a as usize], representatives[b as usize]);
            if representatives[field.add_codes(a, b) as usize] != quotient.add(ca, cb)
                || representatives[field.mul_codes(a, b) as usize] != quotient.mul(ca, cb)
            {
                return fail(format!(
                    "constant map is not a homomorphism at {}, {}",
                    field.from_code(a),
                    field.from_code(b)
                ));
            }
        }
    }
    let characteristic = quotient.characteristic();
    if characteristic != field.characteristic() {
        return fail(format!("characteristic {characteristic} differs from {}", field.characteristic()));
    }
    Ok(ResidueFieldCheck { representatives, quotient_size: quotient.len(), characteristic })
}

/// Outcome of [`verify_finitethm`].
#[derive(Clone, Debug)]
pub struct FiniteThmReport {
    pub image: ImageRing,
    pub ideal_count: usize,
    /// Primes of `S`, in canonical ideal order.
    pub primes: Vec<FiniteIdeal>,
    /// For each point `e`, the index in `primes` of `M_{U_e} ∩ S`, if prime.
    pub point_primes: Vec<Option<usize>>,
    /// Points grouped by the prime their ultrafilter gives, by least point.
    pub fibration: Vec<PointSet>,
    pub sets_equal: bool,
    pub all_maximal: bool,
    pub residue_fields: bool,
    /// The first failed check, if any.
    pub failure: Option<String>,
}

impl FiniteThmReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks on the image `S` of `R` in `(D/M)^E` that the primes of `S` are
/// exactly the traces `M_U ∩ S` of the principal ultrafilters, that each is
/// maximal, and that each residue field is `D/M`.
pub fn verify_finitethm(r: &FuncRing, m: &Residue, cap: usize) -> Result<FiniteThmReport> {
    m.require_maximal()?;
    let image = image_ring(r, m, IMAGE_CAP)?;
    let s = image.ring();
    let ideals = enumerate_ideals(s, cap)?;
    let tests: Vec<PrimeMaximal> = ideals.iter().map(|i| prime_maximal_test(s, i)).collect();
    let primes: Vec<FiniteIdeal> =
        ideals.iter().zip(&tests).filter(|(_, t)| t.prime).map(|(i, _)| i.clone()).collect();
    let all_maximal = tests.iter().all(|t| t.prime == t.maximal);

    let kernels: Vec<FiniteIdeal> = (0..r.size()).map(|e| s.m_kernel(e, image.coord_residue())).collect();
    let point_primes: Vec<Option<usize>> = kernels.iter().map(|k| primes.iter().position(|p| p == k)).collect();
    let sets_equal = point_primes.iter().all(Option::is_some)
        && (0..primes.len()).all(|i| point_primes.contains(&Some(i)));

    let mut fibration: Vec<PointSet> = Vec::new();
    for e in 0..r.size() {
        match fibration.iter_mut().find(|f| kernels[f.iter().next().unwrap()] == kernels[e]) {
            Some(f) => f.insert(e),
            None => fibration.push(PointSet::singleton(e)),
        }
    }

    let mut failure = None;
    let mut residue_fields = true;
    for p in &primes {
        if let Err(err) = quotient_residue_check(s, p, image.coord_residue()) {
            residue_fields = false;
            failure.get_or_insert(format!("residue field: {err}"));
        }
    }
    if !sets_equal {
        failure.get_or_insert(String::from("primes of S differ from the ultrafilter ideals"));
    }
    if !all_maximal {
        failure.get_or_insert(String::from("a prime ideal is not maximal"));
    }
    Ok(FiniteThmReport {
        ideal_count: ideals.len(),
        image,
        primes,
        point_primes,
        fibration,
        sets_equal,
        all_maximal,
        residue_fields,
        failure,
    })
}

/// Outcome of [`verify_mf_containment`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfReport {
    pub ideal_count: usize,
    /// Ideals without an `M`-unit-valued element.
    pub unit_free: usize,
    /// Ideals whose zero-locus family has the finite intersection property.
    pub fip: usize,
    /// Ideals maximal among the unit-free ones.
    pub maximal_unit_free: usize,
    /// Distinct traces `M_U ∩ S` of principal ultrafilters.
    pub ultrafilter_traces: usize,
    pub failure: Option<String>,
}

impl MfReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// For every ideal `I` of the image `S`: `I` has no `M`-unit-valued element
/// iff `Z_M(I)` has the finite intersection property iff `I ⊆ M_F` for some
/// filter `F` (all filters tried when `|E| <= 12`), with `I ⊆ M_F` for the
/// filter generated by `Z_M(I)`. Also checks that the ideals maximal among
/// unit-free ones are exactly the `M_U ∩ S`.
pub fn verify_mf_containment(image: &ImageRing, cap: usize) -> Result<MfReport> {
    image.residue().require_maximal()?;
    let s = image.ring();
    let zero_res = image.coord_residue();
    let n = s.width();
    let ideals = enumerate_ideals(s, cap)?;
    let mut failure = None;
    let mut unit_free_ideals = Vec::new();
    let mut fip = 0;
    for ideal in &ideals {
        let unit_free = ideal.members().all(|t| !s.is_m_unit_valued(t, zero_res));
        let family = zero_locus_of(s, ideal, zero_res);
        let generated = fip_filter(&family).ok();
        let contained_in_generated =
            generated.as_ref().is_some_and(|f| ideal.members().all(|t| f.contains_set(s.m_locus(t, zero_res))));
        let some_filter = if n <= 12 {
            FilterFin::all(n).any(|f| ideal.members().all(|t| f.contains_set(s.m_locus(t, zero_res))))
        } else {
            contained_in_generated
        };
        fip += generated.is_some() as usize;
        if unit_free != generated.is_some() || unit_free != some_filter || unit_free != contained_in_generated {
            failure.get_or_insert(format!(
                "ideal {:?}: unit-free {unit_free}, fip {}, in some M_F {some_filter}",
                ideal.members().collect::<Vec<_>>(),
                generated.is_some()
            ));
        }
        if unit_free {
            unit_free_ideals.push(ideal.clone());
        }
    }
    let maximal: Vec<&FiniteIdeal> = unit_free_ideals
        .iter()
        .filter(|i| !unit_free_ideals.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .collect();
    let mut traces: Vec<FiniteIdeal> = Vec::new();
    for e in 0..n {
        let k = s.m_kernel(e, zero_res);
        if !traces.contains(&k) {
            traces.push(k);
        }
    }
    let same = maximal.len() == traces.len() && maximal.iter().all(|i| traces.contains(i));
    if !same {
        failure.get_or_insert(String::from("maximal unit-free ideals differ from the ultrafilter traces"));
    }
    Ok(MfReport {
        ideal_count: ideals.len(),
        unit_free: unit_free_ideals.len(),
        fip,
        maximal_unit_free: maximal.len(),
        ultrafilter_traces: traces.len(),
        failure,
    })
}

/// One maximal ideal of a dichotomy model and how it was classified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyCase {
    pub ideal: FiniteIdeal,
    pub outcome: Dichotomy,
    /// Independently: `R(E, M) ∩ T ⊆ Q`.
    pub contains: bool,
    /// Independently: some element of `Q` is `≡ 1` mod `M` at every point.
    pub has_one_mod_m: bool,
    pub has_unit_valued: bool,
}

impl DichotomyCase {
    pub fn pass(&self) -> bool {
        let branch2 = matches!(self.outcome, Dichotomy::Witness { .. });
        self.contains != self.has_one_mod_m
            && branch2 == self.has_one_mod_m
            && branch2 == self.has_unit_valued
    }
}

/// Runs [`dichotomy_witness`] on every maximal ideal of `t` and checks,
/// against brute-force membership tests, that exactly one branch holds and
/// that the second holds iff the ideal has an `M`-unit-valued element.
pub fn classify_dichotomy(t: &FiniteRing, residue: &Residue, cap: usize) -> Result<Vec<DichotomyCase>> {
    let ideals = enumerate_ideals(t, cap)?;
    let kernel = t.m_valued_ideal(residue);
    let one_mod_m: Vec<usize> = (0..t.len())
        .filter(|&i| {
            t.element(i).iter().all(|&c| {
                let v = residue.base().from_code(c);
                residue.quotient().is_zero(&residue.quotient().sub(&residue.reduce(&v), &residue.quotient().one()))
            })
        })
        .collect();
    let mut out = Vec::new();
    for q in ideals.iter().filter(|q| prime_maximal_test(t, q).maximal) {
        let outcome = dichotomy_witness(t, q, residue)?;
        out.push(DichotomyCase {
            ideal: q.clone(),
            outcome,
            contains: kernel.is_subset(q),
            has_one_mod_m: one_mod_m.iter().any(|&i| q.contains(i)),
            has_unit_valued: q.members().any(|i| t.is_m_unit_valued(i, residue)),
        });
    }
    Ok(out)
}
