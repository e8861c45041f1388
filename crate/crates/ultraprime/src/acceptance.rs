//! Seeded acceptance suite shared by `verify-all` and the `acceptance` test.
//!
//! Every criterion draws from its own ChaCha stream derived from the seed,
//! so results do not depend on which other criteria ran. Each check compares
//! a library result against an oracle computed here directly from values.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use ultraprime_core::algebra::primes::is_prime;
use ultraprime_core::algebra::{BaseRing, MDescriptor, Residue, RingElem};
use ultraprime_core::constructions::{
    binary_combiner_normform, combine_finitecase, combine_notalgcl, ideal_certificate, norm_form, unit_one_lift,
    CombinerForm, Dichotomy,
};
use ultraprime_core::funcring::{image_ring, FnValue, FuncRing, ImageRing};
use ultraprime_core::intpoly::{
    chabert_member, divide_by_constant, eval_binomial, precision_oracle, pseudoprincipal_z, rep_containment_check,
    required_precision, ChabertOutcome, IVPoly, PadicApprox,
};
use ultraprime_core::setfilters::{mf_contains, UltrafilterFin};
use ultraprime_core::spectrum::{
    classify_dichotomy, enumerate_ideals, ultraproduct_principal, verify_finitethm, verify_mf_containment,
    FiniteIdeal, FiniteRing,
};
use ultraprime_core::Error;

use crate::report;

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "norm forms have only the trivial zero"),
    (2, "combiners cut out the common zero set"),
    (3, "unit-one lift"),
    (4, "primes of the image are the ultrafilter ideals"),
    (5, "unit-free ideals and filter ideals"),
    (6, "dichotomy for maximal ideals"),
    (7, "membership at p-adic arguments"),
    (8, "divisibility and containment"),
    (9, "principal ultraproducts"),
    (10, "deterministic reports"),
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub cases: usize,
    pub details: Map<String, Value>,
    pub failure: Option<Value>,
}

impl CriterionResult {
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("id".into(), json!(self.id));
        out.insert("name".into(), json!(self.name));
        out.insert("verdict".into(), report::verdict(self.pass));
        out.insert("cases".into(), json!(self.cases));
        out.insert("details".into(), Value::Object(self.details.clone()));
        if let Some(f) = &self.failure {
            out.insert("failure".into(), f.clone());
        }
        Value::Object(out)
    }

    /// `criterion  3 unit-one lift: PASS (800 cases)`
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!("criterion {:>2} {}: {verdict} ({} cases)", self.id, self.name, self.cases);
        if let Some(f) = &self.failure {
            s.push_str(&format!(" first failure: {f}"));
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<Value>,
    details: Map<String, Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn error(&mut self, context: Value, err: impl std::fmt::Display) {
        self.check(false, || json!({ "context": context, "error": err.to_string() }));
    }

    fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.into(), value.into());
    }

    fn finish(self, id: u32) -> CriterionResult {
        let name = CRITERIA[id as usize - 1].1;
        let pass = self.failure.is_none() && self.cases > 0;
        CriterionResult { id, name, pass, cases: self.cases, details: self.details, failure: self.failure }
    }
}

fn stream(seed: u64, id: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(id));
    rng
}

/// Criteria 1 to 9, then 10 as an in-process rerun compared byte for byte.
/// The test target also compares two separate processes.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let first: Vec<CriterionResult> = (1..=9).map(|id| run(id, seed)).collect();
    let second: Vec<CriterionResult> = (1..=9).map(|id| run(id, seed)).collect();
    let bytes = |rs: &[CriterionResult]| serde_json::to_string(&rs.iter().map(CriterionResult::to_json).collect::<Vec<_>>()).expect("json");
    let (a, b) = (bytes(&first), bytes(&second));
    let mut t = Tally::default();
    t.check(a == b, || json!({ "first_difference_at": a.bytes().zip(b.bytes()).position(|(x, y)| x != y) }));
    t.note("compared_bytes", a.len());
    let mut out = first;
    out.push(t.finish(10));
    out
}

pub fn run(id: u32, seed: u64) -> CriterionResult {
    let mut rng = stream(seed, id);
    match id {
        1 => norm_forms(),
        2 => combiners(&mut rng),
        3 => unit_lifts(&mut rng),
        4 => finite_theorem(&mut rng),
        5 => containment(&mut rng),
        6 => dichotomy(&mut rng),
        7 => chabert(&mut rng),
        8 => divisibility(&mut rng),
        9 => ultraproducts(&mut rng),
        _ => panic!("criterion {id} is not run on its own"),
    }
}

fn int_mod(v: &RingElem, p: u64) -> u64 {
    match v {
        RingElem::Integer(n) => n.mod_floor(&BigInt::from(p)).try_into().expect("below p"),
        _ => panic!("expected an integer value"),
    }
}

fn big(v: &RingElem) -> &BigInt {
    match v {
        RingElem::Integer(n) => n,
        _ => panic!("expected an integer value"),
    }
}

fn residue_z(p: u64) -> Residue {
    Residue::new(BaseRing::Integers, MDescriptor::Principal(BigInt::from(p))).expect("p >= 2")
}

fn random_values(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> FnValue {
    FnValue::from_values((0..n).map(|_| RingElem::int(rng.gen_range(-bound..=bound))).collect())
}

fn zero_mask(f: &FnValue, p: u64) -> u64 {
    f.values().iter().enumerate().filter(|(_, v)| int_mod(v, p) == 0).fold(0, |m, (e, _)| m | 1 << e)
}

fn norm_forms() -> CriterionResult {
    let mut t = Tally::default();
    let mut pairs = Vec::new();
    for p in (2u64..=64).filter(|&p| is_prime(p)) {
        let mut k = 2;
        while p.pow(k as u32) <= 4096 {
            pairs.push((p, k));
            k += 1;
        }
    }
    let mut points = 0u64;
    for &(p, k) in &pairs {
        let nf = match norm_form(p, k) {
            Ok(nf) => nf,
            Err(e) => {
                t.error(json!([p, k]), e);
                continue;
            }
        };
        // The form at a coefficient vector is the field norm w^((q-1)/(p-1))
        // of the element with those coefficients.
        let field = BaseRing::ExtField(nf.field().clone());
        let q = p.pow(k as u32);
        let grid = nf.form().eval_grid();
        let mut bad = None;
        for code in 0..q {
            let w = field.from_code(code as u32);
            let norm = match field.pow(&w, (q - 1) / (p - 1)) {
                RingElem::Ext(cs) if cs[1..].iter().all(|&c| c == 0) => cs[0],
                other => {
                    bad = Some(json!({ "p": p, "k": k, "norm_outside_prime_field": report::elem(&other) }));
                    break;
                }
            };
            let expect = if code == 0 { 0 } else { norm };
            if grid[code as usize] != expect || (code != 0 && grid[code as usize] == 0) {
                bad = Some(json!({ "p": p, "k": k, "point_code": code, "form": grid[code as usize], "norm": norm }));
                break;
            }
        }
        points += q;
        t.check(bad.is_none(), || bad.unwrap());
    }
    t.note("field_sizes", pairs.len());
    t.note("points_checked", points);
    t.finish(1)
}

/// Preimage against the zero-set oracle, and `h = a·f + b·g` in `Z^E`.
fn check_combined(
    t: &mut Tally,
    label: &str,
    p: u64,
    f: &FnValue,
    g: &FnValue,
    h: &FnValue,
    form: &CombinerForm,
) {
    let target = zero_mask(f, p) & zero_mask(g, p);
    let got = zero_mask(h, p);
    let (a, b) = match ideal_certificate(form, f, g) {
        Ok(ab) => ab,
        Err(e) => return t.error(json!({ "combiner": label }), e),
    };
    let exact = (0..f.len()).all(|e| big(a.get(e)) * big(f.get(e)) + big(b.get(e)) * big(g.get(e)) == *big(h.get(e)));
    t.check(got == target && exact, || {
        json!({
            "combiner": label, "p": p, "f": report::values(f), "g": report::values(g),
            "h": report::values(h), "target": target, "got": got, "certificate_exact": exact,
        })
    });
}

/// `h` lies in the ideal of the image ring generated by `f` and `g`.
fn image_membership(p: u64, f: &FnValue, g: &FnValue, hs: &[&FnValue]) -> Result<bool, Error> {
    let n = f.len();
    let ring = FuncRing::new(BaseRing::Integers, (0..n as i64).map(RingElem::int).collect())?
        .with_generator("f", f.clone())?
        .with_generator("g", g.clone())?;
    let image: ImageRing = image_ring(&ring, &residue_z(p), 1024)?;
    let s = image.ring();
    let (fi, gi) = (image.reduce(f).expect("generator"), image.reduce(g).expect("generator"));
    let ideal = s.ideal_generated(&[fi, gi]);
    Ok(hs.iter().all(|h| image.reduce(h).is_some_and(|i| ideal.contains(i))))
}

fn combiners(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    let mut membership_checked = 0usize;
    for p in [2u64, 3, 5] {
        let m = residue_z(p);
        let forms: Vec<CombinerForm> = [2, 3].iter().map(|&k| binary_combiner_normform(k, &m).expect("prime field")).collect();
        for n in 1..=12usize {
            for trial in 0..200 {
                let f = random_values(rng, n, 3 * p as i64);
                let g = random_values(rng, n, 3 * p as i64);
                let form = &forms[trial % 2];
                let h1 = match combine_notalgcl(&f, &g, &m, form) {
                    Ok(h) => h,
                    Err(e) => {
                        t.error(json!({ "p": p, "n": n, "trial": trial }), e);
                        continue;
                    }
                };
                check_combined(&mut t, "norm_form", p, &f, &g, &h1, form);
                match combine_finitecase(&f, &g, &m) {
                    Ok((h2, form2)) => {
                        check_combined(&mut t, "interpolation", p, &f, &g, &h2, &form2);
                        if p.pow(n as u32) <= 1024 && trial % 4 == 0 {
                            membership_checked += 1;
                            match image_membership(p, &f, &g, &[&h1, &h2]) {
                                Ok(ok) => t.check(ok, || json!({ "image_membership": false, "p": p, "n": n, "trial": trial })),
                                Err(e) => t.error(json!({ "image_membership": [p, n, trial] }), e),
                            }
                        }
                    }
                    Err(e) => t.error(json!({ "p": p, "n": n, "trial": trial }), e),
                }
            }
        }
    }
    t.note("pairs_per_size", 200);
    t.note("image_ring_membership_checks", membership_checked);
    t.finish(2)
}

fn unit_lifts(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    for p in [2u64, 3, 5, 7] {
        let m = residue_z(p);
        for trial in 0..200 {
            let n = rng.gen_range(1..=12);
            let values: Vec<RingElem> = (0..n)
                .map(|_| loop {
                    let v = rng.gen_range(-100i64..=100);
                    if v.rem_euclid(p as i64) != 0 {
                        break RingElem::int(v);
                    }
                })
                .collect();
            let g = FnValue::from_values(values);
            let lift = match unit_one_lift(&g, &m) {
                Ok(l) => l,
                Err(e) => {
                    t.error(json!({ "p": p, "trial": trial }), e);
                    continue;
                }
            };
            let one_mod_p = lift.f.values().iter().all(|v| int_mod(v, p) == 1);
            // f = cofactor(g)·g, evaluated by Horner on the integer values
            let cofactor_ok = (0..n).all(|e| {
                let x = big(g.get(e));
                let c = lift.cofactor.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * x + big(c));
                c * x == *big(lift.f.get(e))
            });
            t.check(one_mod_p && cofactor_ok, || {
                json!({ "p": p, "g": report::values(&g), "f": report::values(&lift.f), "in_ideal": cofactor_ok })
            });
        }
    }
    t.finish(3)
}

/// A random ring of functions over `Z` on `0..n` with up to three generators.
fn random_func_ring(rng: &mut ChaCha8Rng, n: usize) -> FuncRing {
    let points: Vec<RingElem> = (0..n as i64).map(RingElem::int).collect();
    let mut ring = FuncRing::new(BaseRing::Integers, points).expect("n in 1..=62");
    for i in 0..rng.gen_range(0..=3) {
        let f = random_values(rng, n, 10);
        ring = ring.with_generator(&format!("g{i}"), f).expect("fresh name");
    }
    ring
}

/// `{ s : s(e) = 0 }` for each point, straight from the tuples.
fn point_kernels(s: &FiniteRing, n: usize) -> BTreeSet<Vec<usize>> {
    (0..n).map(|e| (0..s.len()).filter(|&i| s.element(i)[e] == 0).collect()).collect()
}

fn finite_theorem(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    let (mut accepted, mut skipped, mut attempts) = (0usize, 0usize, 0usize);
    let mut largest = 0usize;
    while accepted < 60 && attempts < 2000 {
        attempts += 1;
        let p = [2u64, 3, 5][attempts % 3];
        let n = rng.gen_range(1..=6);
        let ring = random_func_ring(rng, n);
        let m = residue_z(p);
        match image_ring(&ring, &m, 1024) {
            Ok(_) => {}
            Err(Error::TooLarge { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => {
                t.error(json!({ "attempt": attempts }), e);
                continue;
            }
        }
        accepted += 1;
        let rep = match verify_finitethm(&ring, &m, 1024) {
            Ok(r) => r,
            Err(e) => {
                t.error(json!({ "p": p, "n": n }), e);
                continue;
            }
        };
        let s = rep.image.ring();
        largest = largest.max(s.len());
        let primes: BTreeSet<Vec<usize>> = rep.primes.iter().map(|q| q.members().collect()).collect();
        let kernels = point_kernels(s, n);
        // each S/P must be the residue field F_p
        let index_p = rep.primes.iter().all(|q| s.len() == q.len() * p as usize);
        t.check(rep.pass() && primes == kernels && index_p, || {
            json!({
                "p": p, "n": n,
                "generators": ring.generators().iter().map(|(_, f)| report::values(f)).collect::<Vec<_>>(),
                "library": rep.failure, "prime_sets_match": primes == kernels, "index_p": index_p,
            })
        });
    }
    t.note("configurations", accepted);
    t.note("skipped_over_1024", skipped);
    t.note("largest_image", largest);
    t.finish(4)
}

fn containment(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    let (mut rings, mut ideals, mut attempts) = (0usize, 0usize, 0usize);
    while rings < 40 && attempts < 2000 {
        attempts += 1;
        let p = [2u64, 3, 5][attempts % 3];
        let n = rng.gen_range(1..=6);
        let ring = random_func_ring(rng, n);
        let image = match image_ring(&ring, &residue_z(p), 256) {
            Ok(im) => im,
            Err(Error::TooLarge { .. }) => continue,
            Err(e) => {
                t.error(json!({ "attempt": attempts }), e);
                continue;
            }
        };
        rings += 1;
        let s = image.ring();
        let rep = match verify_mf_containment(&image, 256) {
            Ok(r) => r,
            Err(e) => {
                t.error(json!({ "p": p, "n": n }), e);
                continue;
            }
        };
        let all = enumerate_ideals(s, 256).expect("within cap");
        ideals += all.len();
        let full = (1u64 << n) - 1;
        let locus = |i: usize| s.element(i).iter().enumerate().filter(|(_, &c)| c == 0).fold(0u64, |m, (e, _)| m | 1 << e);
        // On a finite ground set the FIP is a nonempty total intersection.
        let unit_free: Vec<&FiniteIdeal> = all
            .iter()
            .filter(|q| q.members().all(|i| locus(i) != 0))
            .collect();
        let fip_agrees = all.iter().all(|q| {
            let meet = q.members().fold(full, |m, i| m & locus(i));
            (meet != 0) == q.members().all(|i| locus(i) != 0)
        });
        let maximal: BTreeSet<Vec<usize>> = unit_free
            .iter()
            .filter(|q| !unit_free.iter().any(|r| r.len() > q.len() && q.is_subset(r)))
            .map(|q| q.members().collect())
            .collect();
        let traces_ok = maximal == point_kernels(s, n);
        t.check(rep.pass() && fip_agrees && traces_ok && rep.ideal_count == all.len(), || {
            json!({ "p": p, "n": n, "library": rep.failure, "fip_agrees": fip_agrees, "traces": traces_ok })
        });
    }
    t.note("image_rings", rings);
    t.note("ideals", ideals);
    t.finish(5)
}

struct DichotomyModel {
    modulus: u64,
    p: u64,
    width: usize,
    gens: Vec<Box<[u32]>>,
}

fn dichotomy_models(rng: &mut ChaCha8Rng) -> Vec<DichotomyModel> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let q = p * p;
        for width in 1..=3usize {
            // one generator: every tuple for |E| <= 2, a sample for |E| = 3
            let total = q.pow(width as u32);
            let mut singles: Vec<u64> = (0..total).collect();
            if width == 3 {
                singles.shuffle(rng);
                singles.truncate(40);
            }
            for code in singles {
                let g: Box<[u32]> = (0..width).map(|i| (code / q.pow(i as u32) % q) as u32).collect();
                out.push(DichotomyModel { modulus: q, p, width, gens: vec![g] });
            }
            for _ in 0..10 {
                let gens = (0..2).map(|_| (0..width).map(|_| rng.gen_range(0..q as u32)).collect()).collect();
                out.push(DichotomyModel { modulus: q, p, width, gens });
            }
        }
    }
    // Over Z/p^2 every M-valued function is nilpotent, so only the first
    // branch can occur; composite moduli reach the second.
    for (modulus, p) in [(6u64, 2u64), (6, 3), (10, 5), (12, 3)] {
        for width in 1..=3usize {
            for _ in 0..6 {
                let k = rng.gen_range(0..=2);
                let gens = (0..k).map(|_| (0..width).map(|_| rng.gen_range(0..modulus as u32)).collect()).collect();
                out.push(DichotomyModel { modulus, p, width, gens });
            }
        }
    }
    out
}

fn dichotomy(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    let (mut models, mut cases, mut branch2) = (0usize, 0usize, 0usize);
    for model in dichotomy_models(rng) {
        let base = BaseRing::integers_mod(model.modulus).expect("modulus >= 2");
        let m = Residue::new(base.clone(), MDescriptor::Principal(BigInt::from(model.p))).expect("p | modulus");
        let ring = match FiniteRing::generated(&base, model.width, &model.gens, 4096) {
            Ok(r) => r,
            Err(e) => {
                t.error(json!({ "modulus": model.modulus, "gens": format!("{:?}", model.gens) }), e);
                continue;
            }
        };
        models += 1;
        let found = match classify_dichotomy(&ring, &m, 4096) {
            Ok(c) => c,
            Err(e) => {
                t.error(json!({ "modulus": model.modulus }), e);
                continue;
            }
        };
        let p = model.p as u32;
        let m_valued: Vec<usize> = (0..ring.len()).filter(|&i| ring.element(i).iter().all(|&c| c % p == 0)).collect();
        for case in &found {
            cases += 1;
            let q = &case.ideal;
            let contains = m_valued.iter().all(|&i| q.contains(i));
            let unit_valued = q.members().any(|i| ring.element(i).iter().all(|&c| c % p != 0));
            let witness_ok = match case.outcome {
                Dichotomy::Contains => contains,
                Dichotomy::Witness { f, g, h } => {
                    branch2 += 1;
                    let one = ring.one();
                    !contains
                        && q.contains(f)
                        && ring.element(f).iter().all(|&c| c % p == 1 % p)
                        && m_valued.contains(&g)
                        && !q.contains(g)
                        && ring.add(ring.mul(h, g), f) == one
                }
            };
            t.check(case.pass() && witness_ok && (contains != unit_valued), || {
                json!({
                    "modulus": model.modulus, "p": model.p, "ring_size": ring.len(),
                    "ideal": report::ideal(&ring, q), "contains": contains, "unit_valued": unit_valued,
                })
            });
        }
    }
    t.note("models", models);
    t.note("maximal_ideals", cases);
    t.note("second_branch", branch2);
    t.finish(6)
}

fn random_ivpoly(rng: &mut ChaCha8Rng, max_degree: usize, bound: i64) -> IVPoly {
    let d = rng.gen_range(0..=max_degree);
    let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    if coeffs[d] == 0 {
        coeffs[d] = 1;
    }
    IVPoly::from_i64(&coeffs)
}

fn chabert(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    for trial in 0..100 {
        let f = random_ivpoly(rng, 6, 20);
        for p in [2u64, 3, 5] {
            let n = required_precision(&f, p);
            // (a) congruent arguments mod p^N give congruent values mod p
            let limit = p.pow(n + 2);
            let oracle = precision_oracle(&f, p, n + 2, limit);
            t.check(oracle.is_some_and(|o| o <= n), || json!({ "part": "a", "poly": f.to_string(), "p": p, "bound": n, "oracle": oracle }));

            // (b) exact integer arguments
            let pb = BigInt::from(p);
            for _ in 0..10 {
                let a = BigInt::from(rng.gen_range(-500i64..=500));
                let direct = eval_binomial(&f, &a).is_multiple_of(&pb);
                let extra = rng.gen_range(0..3);
                let got = PadicApprox::of_integer(p, n + extra, &a).and_then(|alpha| chabert_member(&f, &alpha));
                let ok = matches!((&got, direct), (Ok(ChabertOutcome::Member), true) | (Ok(ChabertOutcome::NonMember), false));
                t.check(ok, || json!({ "part": "b", "poly": f.to_string(), "p": p, "a": report::int(&a), "got": format!("{got:?}") }));
            }

            // (c) principal ultrafilters on a window of Z
            let start = rng.gen_range(-20i64..=20);
            let points: Vec<RingElem> = (start..start + 8).map(RingElem::int).collect();
            let values = FnValue::from_values(points.iter().map(|a| RingElem::Integer(eval_binomial(&f, big(a)))).collect());
            let m = residue_z(p);
            for (e, a) in points.iter().enumerate() {
                let u = UltrafilterFin::new(points.len(), e).expect("e < 8");
                let via_filter = mf_contains(&values, &m, &u);
                let via_chabert = PadicApprox::of_integer(p, n, big(a)).and_then(|alpha| chabert_member(&f, &alpha));
                let ok = match (&via_filter, &via_chabert) {
                    (Ok(x), Ok(y)) => *x == (*y == ChabertOutcome::Member),
                    _ => false,
                };
                t.check(ok, || json!({ "part": "c", "trial": trial, "poly": f.to_string(), "p": p, "a": report::elem(a) }));
            }
        }
    }
    t.finish(7)
}

fn divisibility(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    for _ in 0..200 {
        let g = random_ivpoly(rng, 6, 50);
        let mut c = rng.gen_range(-40i64..=40);
        if c == 0 {
            c = 7;
        }
        let c = BigInt::from(c);
        let f = g.scale(&c);
        let got = divide_by_constant(&f, &c);
        t.check(got.as_ref() == Ok(&g), || json!({ "g": g.to_string(), "c": report::int(&c), "got": format!("{got:?}") }));

        // a perturbed f is divisible exactly when every coefficient is
        let bumped = f.add(&IVPoly::binomial(rng.gen_range(0..=6)));
        let divisible = bumped.coeffs().iter().all(|a| a.is_multiple_of(&c));
        match divide_by_constant(&bumped, &c) {
            Ok(q) => t.check(divisible && q.scale(&c) == bumped, || json!({ "bumped": bumped.to_string(), "c": report::int(&c) })),
            Err(Error::NotDivisible { witness }) => {
                let d = bumped.degree().unwrap_or(0) as i64;
                let first_bad = (0..=d)
                    .map(BigInt::from)
                    .find(|a| !eval_binomial(&bumped, a).is_multiple_of(&c));
                t.check(!divisible && first_bad.as_ref() == Some(&witness), || {
                    json!({ "bumped": bumped.to_string(), "c": report::int(&c), "witness": report::int(&witness) })
                });
            }
            Err(e) => t.error(json!({ "bumped": bumped.to_string() }), e),
        }
    }
    for _ in 0..50 {
        let p = *[2u64, 3, 5, 7, 11, 13].choose(rng).expect("nonempty");
        let g = random_ivpoly(rng, 6, 30);
        let f = g.scale(&BigInt::from(p));
        let window = rng.gen_range(-30i64..=0)..rng.gen_range(1i64..=30);
        match rep_containment_check(&f, p, window.clone()) {
            Ok(rep) => {
                let ok = rep.g == g
                    && rep.m == 1
                    && rep.s.is_one()
                    && window.clone().all(|a| eval_binomial(&rep.g, &BigInt::from(a)) * p == eval_binomial(&f, &BigInt::from(a)));
                t.check(ok, || json!({ "f": f.to_string(), "p": p }));
            }
            Err(e) => t.error(json!({ "f": f.to_string(), "p": p }), e),
        }
    }
    let mut pairs = 0usize;
    for q in (2u64..=13).filter(|&q| is_prime(q)) {
        for v in (-1000i64..=1000).filter(|&v| v != 0 && v % q as i64 == 0) {
            pairs += 1;
            let p = BigInt::from(v);
            let (mut rest, mut m) = (v, 0u32);
            while rest % q as i64 == 0 {
                rest /= q as i64;
                m += 1;
            }
            let got = pseudoprincipal_z(q, &p);
            t.check(got == Ok((m, BigInt::from(rest))), || json!({ "q": q, "p": v, "got": format!("{got:?}") }));
        }
        let off = pseudoprincipal_z(q, &BigInt::from(q as i64 * 1000 + 1));
        t.check(matches!(off, Err(Error::NotOverP { .. })), || json!({ "q": q, "expected": "NotOverP" }));
    }
    t.note("pseudoprincipal_pairs", pairs);
    t.finish(8)
}

fn small_rings() -> Vec<BaseRing> {
    let mut out: Vec<BaseRing> = (2..=16).map(|m| BaseRing::integers_mod(m).expect("m >= 2")).collect();
    for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        out.push(BaseRing::galois_field(p, k).expect("small field"));
    }
    out
}

fn ultraproducts(rng: &mut ChaCha8Rng) -> CriterionResult {
    let mut t = Tally::default();
    let pool = small_rings();
    let mut tuples = 0;
    while tuples < 20 {
        let len = rng.gen_range(1..=3);
        let bases: Vec<&BaseRing> = (0..len).map(|_| pool.choose(rng).expect("nonempty")).collect();
        let rings: Vec<FiniteRing> = bases.iter().map(|b| FiniteRing::of_base(b).expect("finite")).collect();
        if rings.iter().map(FiniteRing::len).product::<usize>() > 4096 {
            continue;
        }
        tuples += 1;
        let point = rng.gen_range(0..len);
        let u = UltrafilterFin::new(len, point).expect("point < len");
        let names: Vec<String> = bases.iter().map(|b| b.describe()).collect();
        let up = match ultraproduct_principal(&rings, &u, 4096) {
            Ok(up) => up,
            Err(e) => {
                t.error(json!({ "factors": names, "point": point }), e);
                continue;
            }
        };
        let factor = &rings[point];
        let prod = up.product();
        let offset: usize = rings[..point].iter().map(FiniteRing::width).sum();
        let width = factor.width();
        let project = |i: usize| factor.index_of(&prod.element(i)[offset..offset + width]).expect("component");
        // The class map must be the projection to the chosen factor, which
        // is then automatically a surjective homomorphism.
        let mut ok = up.len() == factor.len() && (0..prod.len()).all(|i| up.iso()[up.class_of(i)] == project(i));
        for _ in 0..200 {
            let (a, b) = (rng.gen_range(0..prod.len()), rng.gen_range(0..prod.len()));
            let iso = |i: usize| up.iso()[up.class_of(i)];
            ok &= iso(prod.add(a, b)) == factor.add(iso(a), iso(b));
            ok &= iso(prod.mul(a, b)) == factor.mul(iso(a), iso(b));
        }
        let classes: BTreeSet<usize> = up.iso().iter().copied().collect();
        ok &= classes.len() == factor.len();
        t.check(ok, || json!({ "factors": names, "point": point }));
    }
    t.finish(9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_of_order() {
        let a: u64 = stream(42, 3).gen();
        let _: u64 = stream(42, 2).gen();
        let b: u64 = stream(42, 3).gen();
        assert_eq!(a, b);
        assert_ne!(a, stream(42, 4).gen::<u64>());
    }

    #[test]
    fn empty_tally_does_not_pass() {
        assert!(!Tally::default().finish(1).pass);
    }
}
