//! Randomized properties across modules. Oracles are recomputed here from
//! plain values wherever that is cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use ultraprime_core::algebra::{BaseRing, MDescriptor, Poly, Residue, RingElem};
use ultraprime_core::constructions::{
    binary_combiner_normform, combine_finitecase, combine_notalgcl, ideal_certificate, unit_one_lift, Dichotomy,
};
use ultraprime_core::funcring::{image_ring, preimage, FnValue, FuncRing, IdealDescriptor};
use ultraprime_core::setfilters::{
    fip_filter, mf_contains, refinements, zero_locus_family, FilterFin, PointSet, SetFamily, UltrafilterFin,
};
use ultraprime_core::spectrum::{
    classify_dichotomy, enumerate_ideals, prime_maximal_test, ultraproduct_principal, verify_finitethm,
    verify_mf_containment, FiniteRing,
};

fn residue(p: u64) -> Residue {
    Residue::new(BaseRing::Integers, MDescriptor::principal(p as i64)).unwrap()
}

fn ints(v: &[i64]) -> FnValue {
    FnValue::from_values(v.iter().map(|&n| RingElem::int(n)).collect())
}

fn mask(v: &[i64], p: u64) -> u64 {
    v.iter().enumerate().filter(|(_, &x)| x.rem_euclid(p as i64) == 0).fold(0, |m, (e, _)| m | 1 << e)
}

fn func_ring(n: usize, gens: &[Vec<i64>]) -> FuncRing {
    let mut r = FuncRing::new(BaseRing::Integers, (0..n as i64).map(RingElem::int).collect()).unwrap();
    for (i, g) in gens.iter().enumerate() {
        r = r.with_generator(&format!("g{i}"), ints(&g[..n])).unwrap();
    }
    r
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn values(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..30, n)
}

/// Up to three generators over `n` points, values in `-10..10`.
fn generators() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-10i64..10, n), 0..=3)))
}

fn small_field() -> impl Strategy<Value = BaseRing> {
    prop::sample::select(vec![(2u64, 2usize), (2, 3), (3, 2), (2, 4), (5, 2), (2, 5), (7, 2), (2, 6), (3, 3), (4, 1)])
        .prop_map(|(p, k)| if k == 1 { BaseRing::integers_mod(p).unwrap() } else { BaseRing::galois_field(p, k).unwrap() })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_on_random_elements(ring in small_field(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let q = ring.order().unwrap() as u32;
        let (a, b, c) = (ring.from_code(a % q), ring.from_code(b % q), ring.from_code(c % q));
        prop_assert_eq!(ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c)));
        prop_assert_eq!(ring.mul(&a, &ring.mul(&b, &c)), ring.mul(&ring.mul(&a, &b), &c));
        prop_assert_eq!(ring.add(&a, &ring.neg(&a)), ring.zero());
        if let Ok(inv) = ring.inverse(&a) {
            prop_assert_eq!(ring.mul(&a, &inv), ring.one());
        } else {
            prop_assert!(!ring.is_domain() || ring.is_zero(&a));
        }
    }

    #[test]
    fn preimage_of_product_is_union(p in prime(), f in values(8), g in values(8)) {
        let r = func_ring(8, &[]);
        let m = residue(p);
        let h = r.mul(&ints(&f), &ints(&g));
        prop_assert_eq!(preimage(&h, &m).bits(), mask(&f, p) | mask(&g, p));
    }

    #[test]
    fn image_ring_is_closed_with_constants(p in prime(), (n, gens) in generators()) {
        let r = func_ring(n, &gens);
        if let Ok(img) = image_ring(&r, &residue(p), 1024) {
            let s = img.ring();
            prop_assert!(s.verify_closure().is_ok());
            for c in 0..p as u32 {
                prop_assert!(s.constant(c).is_some());
            }
        }
    }

    #[test]
    fn zero_constant_polynomials_stay_in_ideal(
        p in prime(),
        (n, gens) in generators(),
        coeffs in prop::collection::vec(-5i64..5, 1..4),
        pick in any::<prop::sample::Index>(),
    ) {
        let r = func_ring(n, &gens);
        let Ok(img) = image_ring(&r, &residue(p), 256) else { return Ok(()) };
        let s = img.ring();
        let mut full = vec![RingElem::int(0)];
        full.extend(coeffs.iter().map(|&c| RingElem::int(c)));
        let g = Poly::new(BaseRing::Integers, full).unwrap();
        let a = pick.index(s.len());
        let ideal = s.principal_ideal(a);
        let v = r.apply_poly(&g, &img.lift(a)).unwrap();
        prop_assert!(ideal.contains(img.reduce(&v).unwrap()));
    }

    #[test]
    fn larger_filter_gives_larger_filter_ideal(p in prime(), f in values(5), big in 1u64..32, extra in 0u64..32) {
        let n = 5;
        let m = residue(p);
        // F has minimal member A ⊇ B, the minimal member of G, so F ⊆ G
        let b = PointSet::from_bits(big);
        let a = b.union(PointSet::from_bits(extra));
        let (ff, gg) = (FilterFin::new(n, a).unwrap(), FilterFin::new(n, b).unwrap());
        prop_assert!(ff.is_subfilter_of(&gg));
        if mf_contains(&ints(&f), &m, &ff).unwrap() {
            prop_assert!(mf_contains(&ints(&f), &m, &gg).unwrap());
        }
    }

    #[test]
    fn ideal_in_filter_ideal_iff_loci_in_filter(p in prime(), (n, gens) in generators(), extra in values(5), minimal in 1u64..32) {
        let r = func_ring(n, &gens);
        let m = residue(p);
        let minimal = PointSet::from_bits(minimal).intersection(PointSet::full(n));
        prop_assume!(!minimal.is_empty());
        let filter = FilterFin::new(n, minimal).unwrap();
        let ideal = IdealDescriptor::new(&r, vec![ints(&extra[..n])]).unwrap();
        let Ok(family) = zero_locus_family(&ideal, &m) else { return Ok(()) };
        let Ok(img) = image_ring(&r, &m, 1 << 16) else { return Ok(()) };
        let s = img.ring();
        let gen = img.reduce(&ints(&extra[..n]));
        // I ⊆ M_F, checked on the ideal the generator spans in the image
        let inside = match gen {
            Some(i) => s.principal_ideal(i).members().all(|t| mf_contains(&img.lift(t), &m, &filter).unwrap()),
            None => family.members().iter().all(|&z| filter.minimal_member().is_subset(z)),
        };
        prop_assert_eq!(inside, family.is_subfamily_of(&filter));
    }

    #[test]
    fn fip_iff_some_filter_contains_family(n in 1usize..=6, sets in prop::collection::vec(0u64..64, 0..5)) {
        let sets: Vec<PointSet> = sets.into_iter().map(|b| PointSet::from_bits(b).intersection(PointSet::full(n))).collect();
        let fam = SetFamily::new(n, sets.clone()).unwrap();
        let meet = sets.iter().fold(PointSet::full(n), |a, &b| a.intersection(b));
        let some = FilterFin::all(n).any(|f| fam.is_subfamily_of(&f));
        match fip_filter(&fam) {
            Ok(f) => {
                prop_assert!(some);
                prop_assert_eq!(f.minimal_member(), meet);
                let pts: Vec<usize> = refinements(&f).iter().map(UltrafilterFin::point).collect();
                prop_assert_eq!(pts, meet.iter().collect::<Vec<_>>());
            }
            Err(_) => prop_assert!(!some && meet.is_empty()),
        }
    }

    #[test]
    fn ultrafilter_membership_is_pointwise(p in prime(), f in values(7), e in 0usize..7) {
        let u = UltrafilterFin::new(7, e).unwrap();
        prop_assert_eq!(mf_contains(&ints(&f), &residue(p), &u).unwrap(), f[e].rem_euclid(p as i64) == 0);
    }

    #[test]
    fn ultrafilter_traces_are_prime(p in prime(), (n, gens) in generators()) {
        let r = func_ring(n, &gens);
        let Ok(img) = image_ring(&r, &residue(p), 1024) else { return Ok(()) };
        let s = img.ring();
        for e in 0..n {
            let trace = s.m_filter_ideal(img.coord_residue(), &UltrafilterFin::new(n, e).unwrap());
            let t = prime_maximal_test(s, &trace);
            prop_assert!(t.prime && t.maximal);
        }
    }

    #[test]
    fn combiners_cut_out_common_zeros(p in prime(), k in 2usize..=3, (f, g) in (1usize..=12).prop_flat_map(|n| (values(n), values(n)))) {
        let m = residue(p);
        let (fv, gv) = (ints(&f), ints(&g));
        let target = mask(&f, p) & mask(&g, p);
        let form = binary_combiner_normform(k, &m).unwrap();
        let h1 = combine_notalgcl(&fv, &gv, &m, &form).unwrap();
        let (h2, form2) = combine_finitecase(&fv, &gv, &m).unwrap();
        for (h, s) in [(&h1, &form), (&h2, &form2)] {
            prop_assert_eq!(preimage(h, &m).bits(), target);
            let (a, b) = ideal_certificate(s, &fv, &gv).unwrap();
            let r = func_ring(f.len(), &[]);
            prop_assert_eq!(&r.add(&r.mul(&a, &fv), &r.mul(&b, &gv)), h);
        }
    }

    #[test]
    fn iterated_combiners_cut_out_all_zeros(p in prime(), list in (1usize..=10).prop_flat_map(|n| prop::collection::vec(values(n), 1..6))) {
        let m = residue(p);
        let target = list.iter().fold(u64::MAX, |acc, f| acc & mask(f, p));
        let form = binary_combiner_normform(2, &m).unwrap();
        let mut h1 = ints(&list[0]);
        let mut h2 = ints(&list[0]);
        for f in &list[1..] {
            h1 = combine_notalgcl(&h1, &ints(f), &m, &form).unwrap();
            h2 = combine_finitecase(&h2, &ints(f), &m).unwrap().0;
        }
        let n = list[0].len();
        prop_assert_eq!(preimage(&h1, &m).bits(), target & ((1 << n) - 1));
        prop_assert_eq!(preimage(&h2, &m).bits(), target & ((1 << n) - 1));
    }

    #[test]
    fn unit_one_lift_is_one_mod_m(p in prop::sample::select(vec![2u64, 3, 5, 7]), g in prop::collection::vec(-100i64..100, 1..=12)) {
        let g: Vec<i64> = g.into_iter().map(|v| if v.rem_euclid(p as i64) == 0 { v + 1 } else { v }).collect();
        let lift = unit_one_lift(&ints(&g), &residue(p)).unwrap();
        let pb = BigInt::from(p);
        for v in lift.f.values() {
            let RingElem::Integer(x) = v else { unreachable!() };
            prop_assert_eq!(x.mod_floor(&pb), BigInt::from(1));
        }
    }

    #[test]
    fn finite_theorem_on_random_configs(p in prime(), (n, gens) in generators()) {
        let r = func_ring(n, &gens);
        let m = residue(p);
        prop_assume!(image_ring(&r, &m, 1024).is_ok());
        let rep = verify_finitethm(&r, &m, 1024).unwrap();
        prop_assert!(rep.pass(), "{:?}", rep.failure);
        let mf = verify_mf_containment(&rep.image, 1024).unwrap();
        prop_assert!(mf.pass(), "{:?}", mf.failure);
    }

    #[test]
    fn dichotomy_has_exactly_one_branch(
        (modulus, p) in prop::sample::select(vec![(4u64, 2u64), (9, 3), (6, 2), (6, 3), (10, 5), (12, 2)]),
        width in 1usize..=3,
        gens in prop::collection::vec(prop::collection::vec(0u32..12, 3), 0..=2),
    ) {
        let base = BaseRing::integers_mod(modulus).unwrap();
        let m = Residue::new(base.clone(), MDescriptor::principal(p as i64)).unwrap();
        let gens: Vec<Box<[u32]>> = gens.iter().map(|g| g[..width].iter().map(|&c| c % modulus as u32).collect()).collect();
        let t = FiniteRing::generated(&base, width, &gens, 4096).unwrap();
        for case in classify_dichotomy(&t, &m, 4096).unwrap() {
            prop_assert!(case.pass(), "{:?}", case);
            prop_assert_eq!(matches!(case.outcome, Dichotomy::Witness { .. }), case.has_unit_valued);
        }
    }

    #[test]
    fn prime_iff_maximal(
        modulus in prop::sample::select(vec![4u64, 6, 8, 9, 12]),
        width in 1usize..=2,
        gens in prop::collection::vec(prop::collection::vec(0u32..12, 2), 0..=2),
    ) {
        let base = BaseRing::integers_mod(modulus).unwrap();
        let gens: Vec<Box<[u32]>> = gens.iter().map(|g| g[..width].iter().map(|&c| c % modulus as u32).collect()).collect();
        let s = FiniteRing::generated(&base, width, &gens, 4096).unwrap();
        for i in enumerate_ideals(&s, 4096).unwrap() {
            let t = prime_maximal_test(&s, &i);
            prop_assert_eq!(t.prime, t.maximal);
        }
    }

    #[test]
    fn ideals_match_subset_oracle(modulus in prop::sample::select(vec![2u64, 3, 4]), gens in prop::collection::vec(prop::collection::vec(0u32..4, 2), 0..=2)) {
        let base = BaseRing::integers_mod(modulus).unwrap();
        let gens: Vec<Box<[u32]>> = gens.iter().map(|g| g.iter().map(|&c| c % modulus as u32).collect()).collect();
        let s = FiniteRing::generated(&base, 2, &gens, 16).unwrap();
        let n = s.len();
        let mut oracle: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|&mask| mask & 1 == 1)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|set| set.iter().all(|&a| set.iter().all(|&b| set.contains(&s.add(a, b))) && (0..n).all(|r| set.contains(&s.mul(a, r)))))
            .collect();
        oracle.sort_by_key(|v| (v.len(), v.clone()));
        let got: Vec<Vec<usize>> = enumerate_ideals(&s, 16).unwrap().iter().map(|i| i.members().collect()).collect();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn principal_ultraproduct_is_the_factor(
        factors in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 6, 8, 9]), 1..=3),
        pick in any::<prop::sample::Index>(),
    ) {
        let rings: Vec<FiniteRing> = factors.iter().map(|&m| FiniteRing::of_base(&BaseRing::integers_mod(m).unwrap()).unwrap()).collect();
        let point = pick.index(rings.len());
        let up = ultraproduct_principal(&rings, &UltrafilterFin::new(rings.len(), point).unwrap(), 4096).unwrap();
        prop_assert_eq!(up.len(), rings[point].len());
        prop_assert_eq!(up.product().len(), factors.iter().product::<u64>() as usize);
    }
}
