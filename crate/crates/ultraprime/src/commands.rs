//! One function per subcommand, each producing a [`Report`].

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use ultraprime_core::algebra::primes::is_prime;
use ultraprime_core::algebra::{BaseRing, Residue};
use ultraprime_core::constructions::{
    binary_combiner_normform, combine_finitecase, combine_notalgcl, ideal_certificate, norm_form, unit_one_lift,
    CombinerForm, CombinerKind, Dichotomy,
};
use ultraprime_core::funcring::{preimage, FnValue, FuncRing, IdealDescriptor};
use ultraprime_core::intpoly::{
    chabert_member, divide_by_constant, pseudoprincipal_z, rep_containment_check, required_precision, ChabertOutcome,
};
use ultraprime_core::setfilters::{
    canonical_refinement, fip_filter, mf_contains, refinements, zero_locus_family, PointSet, SetFamily,
    UltrafilterFin,
};
use ultraprime_core::spectrum::{
    classify_dichotomy, ultraproduct_principal, verify_finitethm, verify_mf_containment, FiniteRing,
    ENUMERATION_CAP,
};
use ultraprime_core::Error;

use crate::acceptance;
use crate::config::{self, Config};
use crate::report::{self, Report};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Normform,
    Combine,
    Unitlift,
    Zerolocus,
    Filters,
    Spectrum,
    Dichotomy,
    Ultraproduct,
    Chabert,
    Divide,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Normform => "normform",
            Command::Combine => "combine",
            Command::Unitlift => "unitlift",
            Command::Zerolocus => "zerolocus",
            Command::Filters => "filters",
            Command::Spectrum => "spectrum",
            Command::Dichotomy => "dichotomy",
            Command::Ultraproduct => "ultraproduct",
            Command::Chabert => "chabert",
            Command::Divide => "divide",
            Command::VerifyAll => "verify-all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A loaded config file together with the command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct Options {
    /// The config file as written, echoed into the report.
    pub raw: Option<Value>,
    pub config: Config,
    pub seed: Option<u64>,
    pub cap: Option<usize>,
    pub p: Option<u64>,
    pub k: Option<usize>,
}

impl Options {
    pub fn with_config_file(mut self, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let raw: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        self.config = serde_json::from_value(raw.clone()).with_context(|| format!("in {}", path.display()))?;
        self.raw = Some(raw);
        Ok(self)
    }

    pub fn seed(&self) -> u64 {
        self.seed.or(self.config.seed).unwrap_or(DEFAULT_SEED)
    }

    pub fn cap(&self, default: usize) -> usize {
        self.cap.or(self.config.cap).unwrap_or(default)
    }

    fn p(&self) -> Result<u64> {
        self.p.or(self.config.p).ok_or_else(|| anyhow!("missing `p`"))
    }

    fn k(&self) -> Result<usize> {
        self.k.or(self.config.k).ok_or_else(|| anyhow!("missing `k`"))
    }

    /// The config echo plus any overriding flags.
    fn echo(&self) -> Value {
        let mut out = Map::new();
        out.insert("config".into(), self.raw.clone().unwrap_or(Value::Null));
        let mut flags = Map::new();
        if let Some(s) = self.seed {
            flags.insert("seed".into(), report::uint(s));
        }
        if let Some(c) = self.cap {
            flags.insert("cap".into(), json!(c));
        }
        if let Some(p) = self.p {
            flags.insert("p".into(), report::uint(p));
        }
        if let Some(k) = self.k {
            flags.insert("k".into(), json!(k));
        }
        out.insert("flags".into(), Value::Object(flags));
        Value::Object(out)
    }
}

pub fn run(command: Command, opts: &Options) -> Result<Report> {
    let mut r = Report::new(command.name(), opts.echo());
    match command {
        Command::Normform => normform(opts, &mut r)?,
        Command::Combine => combine(opts, &mut r)?,
        Command::Unitlift => unitlift(opts, &mut r)?,
        Command::Zerolocus => zerolocus(opts, &mut r)?,
        Command::Filters => filters(opts, &mut r)?,
        Command::Spectrum => spectrum(opts, &mut r)?,
        Command::Dichotomy => dichotomy(opts, &mut r)?,
        Command::Ultraproduct => ultraproduct(opts, &mut r)?,
        Command::Chabert => chabert(opts, &mut r)?,
        Command::Divide => divide(opts, &mut r)?,
        Command::VerifyAll => verify_all(opts, &mut r)?,
    }
    Ok(r)
}

/// Exit status for an error that escaped a command: failed internal checks
/// count as verification failures, everything else as bad input.
pub fn error_exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::CheckFailed(_)) => 1,
        _ => 2,
    }
}

fn normform(opts: &Options, r: &mut Report) -> Result<()> {
    let (p, k) = (opts.p()?, opts.k()?);
    let nf = norm_form(p, k)?;
    let grid = nf.form().eval_grid();
    let zeros: Vec<usize> = grid.iter().enumerate().skip(1).filter(|(_, &v)| v == 0).map(|(i, _)| i).collect();
    r.set("p", report::uint(p))
        .set("k", k)
        .set("modulus", json!(nf.field().modulus()))
        .set("form", report::mpoly_text(nf.form()))
        .set("terms", report::mpoly(nf.form()))
        .set("term_count", nf.form().len())
        .set("only_trivial_zero", report::verdict(zeros.is_empty()));
    if let Some(&code) = zeros.first() {
        r.fail(json!({ "nontrivial_zero_code": code }));
    }
    Ok(())
}

fn combine(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let ring = c.func_ring()?;
    let m = c.residue(ring.base())?;
    let f = config::function(&ring, c.f.as_ref().ok_or_else(|| anyhow!("missing `f`"))?).context("f")?;
    let g = config::function(&ring, c.g.as_ref().ok_or_else(|| anyhow!("missing `g`"))?).context("g")?;
    let target = preimage(&f, &m).intersection(preimage(&g, &m));
    r.set("f_preimage", report::point_set(preimage(&f, &m)))
        .set("g_preimage", report::point_set(preimage(&g, &m)))
        .set("target", report::point_set(target));

    let (h, form) = combine_finitecase(&f, &g, &m)?;
    let out = combiner_section(&ring, &m, &form, &f, &g, &h, target)?;
    if out.1 {
        r.set("interpolation", out.0);
    } else {
        r.set("interpolation", out.0.clone()).fail(json!({ "combiner": "interpolation", "detail": out.0 }));
    }

    let k = c.combiner_degree.unwrap_or(2);
    match binary_combiner_normform(k, &m) {
        Ok(form) => {
            let h = combine_notalgcl(&f, &g, &m, &form)?;
            let (section, ok) = combiner_section(&ring, &m, &form, &f, &g, &h, target)?;
            if !ok {
                r.fail(json!({ "combiner": "norm_form", "detail": section.clone() }));
            }
            r.set("norm_form", section);
        }
        Err(err @ (Error::Unsupported(_) | Error::TooLarge { .. })) => {
            r.set("norm_form", json!({ "skipped": err.to_string() }));
        }
        Err(err) => return Err(err.into()),
    }
    Ok(())
}

/// Checks `h` against the target preimage and the certificate
/// `h = a·f + b·g` in `D^E`; returns the section and whether both hold.
fn combiner_section(
    ring: &FuncRing,
    m: &Residue,
    form: &CombinerForm,
    f: &FnValue,
    g: &FnValue,
    h: &FnValue,
    target: PointSet,
) -> Result<(Value, bool)> {
    let got = preimage(h, m);
    let (a, b) = ideal_certificate(form, f, g)?;
    let combo = ring.add(&ring.mul(&a, f), &ring.mul(&b, g));
    let in_ideal = combo == *h;
    let kind = match form.kind() {
        CombinerKind::NormForm { k } => json!({ "norm_form_degree": k }),
        CombinerKind::Interpolation { xs, ys } => json!({ "grid_x": xs, "grid_y": ys }),
    };
    let section = json!({
        "kind": kind,
        "form": report::poly2(form.form()),
        "h": report::values(h),
        "h_preimage": report::point_set(got),
        "preimage_matches": report::verdict(got == target),
        "certificate": { "a": report::values(&a), "b": report::values(&b) },
        "in_ideal": report::verdict(in_ideal),
    });
    Ok((section, got == target && in_ideal))
}

fn unitlift(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let ring = c.func_ring()?;
    let m = c.residue(ring.base())?;
    let g = config::function(&ring, c.g.as_ref().ok_or_else(|| anyhow!("missing `g`"))?).context("g")?;
    let lift = match unit_one_lift(&g, &m) {
        Ok(lift) => lift,
        Err(Error::NotUnitValued { point }) => {
            r.set("g", report::values(&g)).fail(json!({ "not_unit_valued_at": point }));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let q = m.quotient();
    let bad: Vec<usize> =
        (0..g.len()).filter(|&e| m.reduce(lift.f.get(e)) != q.one()).collect();
    let via_cofactor = ring.mul(&ring.apply_poly(&lift.cofactor, &g)?, &g);
    r.set("g", report::values(&g))
        .set("residues", json!(lift.residues.iter().map(report::elem).collect::<Vec<_>>()))
        .set("u", report::elem(&lift.u))
        .set("poly", report::poly(&lift.poly))
        .set("f", report::values(&lift.f))
        .set("one_mod_m", report::verdict(bad.is_empty()))
        .set("in_ideal_of_g", report::verdict(via_cofactor == lift.f));
    if let Some(&e) = bad.first() {
        r.fail(json!({ "not_one_mod_m_at": e }));
    }
    if via_cofactor != lift.f {
        r.fail(json!({ "cofactor": report::poly(&lift.cofactor) }));
    }
    Ok(())
}

fn ideal_functions(ring: &FuncRing, c: &Config) -> Result<Vec<FnValue>> {
    let specs = c.ideal.as_ref().ok_or_else(|| anyhow!("missing `ideal`"))?;
    specs.iter().enumerate().map(|(i, s)| config::function(ring, s).with_context(|| format!("ideal[{i}]"))).collect()
}

fn zerolocus(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let ring = c.func_ring()?;
    let m = c.residue(ring.base())?;
    let gens = ideal_functions(&ring, c)?;
    let ideal = IdealDescriptor::new(&ring, gens)?;
    let fam = zero_locus_family(&ideal, &m)?;
    r.set("family", report::family(&fam))
        .set("size", fam.members().len())
        .set("intersection", report::point_set(fam.intersection()))
        .set("fip", report::verdict(!fam.intersection().is_empty()));
    Ok(())
}

fn filters(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let (fam, check) = match (&c.family, &c.ideal) {
        (Some(sets), None) => {
            let n = c.points.as_ref().map(Vec::len).ok_or_else(|| anyhow!("`family` needs `points` for the ground set"))?;
            let sets = sets.iter().map(|s| PointSet::from_indices(s.iter().copied())).collect::<Vec<_>>();
            if let Some(s) = sets.iter().find(|s| !s.fits(n)) {
                bail!("set {s} is not inside a ground set of {n} points");
            }
            (SetFamily::new(n, sets)?, None)
        }
        (None, Some(_)) => {
            let ring = c.func_ring()?;
            let m = c.residue(ring.base())?;
            let gens = ideal_functions(&ring, c)?;
            let fam = zero_locus_family(&IdealDescriptor::new(&ring, gens.clone())?, &m)?;
            (fam, Some((gens, m)))
        }
        _ => bail!("`filters` needs exactly one of `family` and `ideal`"),
    };
    r.set("family", report::family(&fam));
    let filter = match fip_filter(&fam) {
        Ok(filter) => filter,
        Err(Error::FipViolated { members }) => {
            let sets: Vec<Value> = members.iter().map(|&b| report::point_set(PointSet::from_bits(b))).collect();
            r.set("fip", report::verdict(false)).fail(json!({ "empty_intersection_of": sets }));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let ultra: Vec<usize> = refinements(&filter).iter().map(UltrafilterFin::point).collect();
    r.set("fip", report::verdict(true))
        .set("filter_generator", report::point_set(filter.minimal_member()))
        .set("ultrafilter_points", json!(ultra))
        .set("canonical_refinement", canonical_refinement(&filter).point());
    if let Some((gens, m)) = check {
        let inside = gens.iter().map(|f| mf_contains(f, &m, &filter)).collect::<Result<Vec<_>, _>>()?;
        r.set("generators_in_filter_ideal", report::verdict(inside.iter().all(|&b| b)));
        if let Some(i) = inside.iter().position(|&b| !b) {
            r.fail(json!({ "generator_outside_filter_ideal": i }));
        }
    }
    Ok(())
}

fn spectrum(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let ring = c.func_ring()?;
    let m = c.residue(ring.base())?;
    let cap = opts.cap(ENUMERATION_CAP);
    let thm = verify_finitethm(&ring, &m, cap)?;
    let s = thm.image.ring();
    let mf = verify_mf_containment(&thm.image, cap)?;
    r.set("image_size", s.len())
        .set("ideal_count", thm.ideal_count)
        .set("prime_count", thm.primes.len())
        .set("ultrafilter_count", ring.size())
        .set("primes", Value::Array(thm.primes.iter().map(|p| report::ideal(s, p)).collect()))
        .set("point_primes", json!(thm.point_primes))
        .set("fibration", Value::Array(thm.fibration.iter().map(|&f| report::point_set(f)).collect()))
        .set("primes_are_ultrafilter_traces", report::verdict(thm.sets_equal))
        .set("primes_maximal", report::verdict(thm.all_maximal))
        .set("residue_fields", report::verdict(thm.residue_fields))
        .set(
            "containment",
            json!({
                "ideals": mf.ideal_count,
                "unit_free": mf.unit_free,
                "fip": mf.fip,
                "maximal_unit_free": mf.maximal_unit_free,
                "ultrafilter_traces": mf.ultrafilter_traces,
                "verdict": report::verdict(mf.pass()),
            }),
        );
    if let Some(fail) = &thm.failure {
        r.fail(json!(fail));
    }
    if let Some(fail) = &mf.failure {
        r.fail(json!(fail));
    }
    Ok(())
}

/// The finite ring of functions generated by the config's generators over a
/// finite base ring.
fn finite_model(c: &Config, cap: usize) -> Result<(FuncRing, FiniteRing)> {
    let ring = c.func_ring()?;
    let base = ring.base().clone();
    if base == BaseRing::Integers {
        bail!("finite models need a finite base ring");
    }
    let gens: Vec<Box<[u32]>> =
        ring.generators().iter().map(|(_, f)| f.values().iter().map(|v| base.code(v)).collect()).collect();
    let t = FiniteRing::generated(&base, ring.size(), &gens, cap)?;
    Ok((ring, t))
}

fn dichotomy(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let cap = opts.cap(4096);
    let (ring, t) = finite_model(c, cap)?;
    let m = c.residue(ring.base())?;
    let cases = classify_dichotomy(&t, &m, cap)?;
    let mut rows = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        let outcome = match &case.outcome {
            Dichotomy::Contains => json!("contains"),
            Dichotomy::Witness { f, g, h } => json!({
                "f": report::tuple(t.element(*f)),
                "g": report::tuple(t.element(*g)),
                "h": report::tuple(t.element(*h)),
            }),
        };
        rows.push(json!({
            "ideal": report::ideal(&t, &case.ideal),
            "outcome": outcome,
            "contains": case.contains,
            "has_one_mod_m": case.has_one_mod_m,
            "has_unit_valued": case.has_unit_valued,
            "verdict": report::verdict(case.pass()),
        }));
        if !case.pass() {
            r.fail(json!({ "case": i }));
        }
    }
    r.set("ring_size", t.len()).set("maximal_ideals", cases.len()).set("cases", rows);
    Ok(())
}

fn ultraproduct(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let names = c.factors.as_ref().ok_or_else(|| anyhow!("missing `factors`"))?;
    let rings = names
        .iter()
        .map(|n| {
            let base = config::parse_ring(n)?;
            if base == BaseRing::Integers {
                bail!("factor `{n}` is infinite");
            }
            Ok(FiniteRing::of_base(&base)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let point = c.point.unwrap_or(0);
    let u = UltrafilterFin::new(rings.len(), point)?;
    let up = ultraproduct_principal(&rings, &u, opts.cap(1 << 16))?;
    let factor = &rings[point];
    let iso: Vec<Value> = up.iso().iter().map(|&i| report::tuple(factor.element(i))).collect();
    r.set("product_size", up.product().len())
        .set("classes", up.len())
        .set("factor_size", factor.len())
        .set("class_images", iso)
        .set("isomorphic", report::verdict(up.len() == factor.len()));
    if up.len() != factor.len() {
        r.fail(json!({ "classes": up.len(), "factor_size": factor.len() }));
    }
    Ok(())
}

fn chabert(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let f = c.poly()?;
    let alpha = c.alpha()?;
    let n = required_precision(&f, alpha.p());
    r.set("poly", f.to_string())
        .set("binomial_coefficients", f.coeffs().iter().map(report::int).collect::<Vec<_>>())
        .set("required_precision", n);
    match chabert_member(&f, &alpha)? {
        ChabertOutcome::Member => r.set("outcome", "member"),
        ChabertOutcome::NonMember => r.set("outcome", "non_member"),
        ChabertOutcome::InsufficientPrecision { precision, member, non_member } => r.set(
            "outcome",
            json!({
                "insufficient_precision": {
                    "precision": precision,
                    "member_residue": report::int(&member),
                    "non_member_residue": report::int(&non_member),
                }
            }),
        ),
    };
    Ok(())
}

fn divide(opts: &Options, r: &mut Report) -> Result<()> {
    let c = &opts.config;
    let f = c.poly()?;
    let divisor = config::integer(c.divisor.as_ref().ok_or_else(|| anyhow!("missing `divisor`"))?)?;
    r.set("poly", f.to_string());
    match divide_by_constant(&f, &divisor) {
        Ok(g) => {
            r.set("quotient", g.to_string())
                .set("quotient_coefficients", g.coeffs().iter().map(report::int).collect::<Vec<_>>());
        }
        Err(Error::NotDivisible { witness }) => {
            r.set("quotient", Value::Null).fail(json!({ "not_divisible_at": report::int(&witness) }));
        }
        Err(e) => return Err(e.into()),
    }
    if let Some(q) = c.q {
        match pseudoprincipal_z(q, &divisor) {
            Ok((m, s)) => r.set("pseudoprincipal", json!({ "q": q, "m": m, "s": report::int(&s) })),
            Err(Error::NotOverP { .. }) => r.set("pseudoprincipal", Value::Null).fail(json!({ "not_over": q })),
            Err(e) => return Err(e.into()),
        };
    }
    if let Some(p) = u64::try_from(&divisor).ok().filter(|&p| is_prime(p)) {
        let d = f.degree().unwrap_or(0) as i64;
        let (lo, hi) = c.window.unwrap_or((0, 2 * (d + 1)));
        match rep_containment_check(&f, p, lo..hi) {
            Ok(rep) => r.set(
                "containment",
                json!({ "g": rep.g.to_string(), "m": rep.m, "s": report::int(&rep.s), "window": [lo, hi] }),
            ),
            Err(Error::PreconditionFailed { witness }) => r
                .set("containment", Value::Null)
                .fail(json!({ "precondition_fails_at": report::int(&witness) })),
            Err(Error::NotDivisible { witness }) => {
                r.set("containment", Value::Null).fail(json!({ "not_divisible_at": report::int(&witness) }))
            }
            Err(e) => return Err(e.into()),
        };
    }
    Ok(())
}

fn verify_all(opts: &Options, r: &mut Report) -> Result<()> {
    let seed = opts.seed();
    r.set("seed", report::uint(seed));
    let results = acceptance::run_all(seed);
    let mut rows = Vec::new();
    for res in &results {
        if !res.pass {
            r.fail(json!({ "criterion": res.id }));
        }
        rows.push(res.to_json());
    }
    r.set("criteria", rows);
    Ok(())
}
