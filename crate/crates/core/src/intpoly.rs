//! Integer-valued polynomials on `Z` in the binomial basis.
//!
//! `f = sum c_n C(x, n)` with integer `c_n` is integer-valued on all of `Z`,
//! and every integer-valued polynomial has this form, so `Int(Z)` is just
//! integer coefficient vectors here. Divisibility by a constant becomes
//! divisibility of the coefficients.
//!
//! Membership in `M_alpha = { f : f(alpha) ∈ pZ_p }` for a p-adic `alpha` is
//! decided from a truncation `alpha ≡ r mod p^N`, using that `f mod p` only
//! depends on the argument mod `p^{1 + v_p(d!)}`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::algebra::primes::{factorial_valuation, is_prime, valuation};
use crate::expr::{parse_expression, Evaluator, Expr};
use crate::{Error, Result};

/// Most residues [`chabert_member`] will evaluate.
pub const CHABERT_RESIDUE_CAP: u64 = 1 << 20;

/// `sum c_n C(x, n)`; trailing zero coefficients are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IVPoly {
    coeffs: Vec<BigInt>,
}

impl IVPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut out = Self { coeffs };
        out.trim();
        out
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `C(x, n)`.
    pub fn binomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Self { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The polynomial with values `values[a]` at `a = 0, 1, ...`, from the
    /// forward-difference table at 0.
    pub fn from_values(values: &[BigInt]) -> Self {
        let mut row = values.to_vec();
        let mut coeffs = Vec::with_capacity(values.len());
        while !row.is_empty() {
            coeffs.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Self::new(coeffs)
    }

    /// Converts `(sum a_i x^i) / denominator`, rejecting it with the least
    /// `a >= 0` where the value is not an integer.
    pub fn from_monomial(numerators: &[BigInt], denominator: &BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Unsupported("zero denominator".to_string()));
        }
        let d = numerators.len().max(1);
        let mut values = Vec::with_capacity(d);
        for a in 0..d {
            let x = BigInt::from(a);
            let num = numerators.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c);
            let (q, r) = num.div_rem(denominator);
            if !r.is_zero() {
                return Err(Error::NotDivisible { witness: x });
            }
            values.push(q);
        }
        Ok(Self::from_values(&values))
    }

    /// Parses a polynomial in `x` with integer coefficients, optionally
    /// followed by `/ n` for a positive integer `n`.
    pub fn parse(text: &str) -> Result<Self> {
        let (body, denominator) = match text.rfind('/') {
            Some(pos) => {
                let tail = text[pos + 1..].trim();
                let den: BigInt = tail
                    .parse()
                    .ok()
                    .filter(|d: &BigInt| d.is_positive() && tail.bytes().all(|b| b.is_ascii_digit()))
                    .ok_or(Error::Syntax { pos: pos + 1, msg: "expected a positive integer denominator".to_string() })?;
                (&text[..pos], den)
            }
            None => (text, BigInt::one()),
        };
        let expr = parse_expression(body)?;
        let numerators = monomial_coeffs(&expr)?;
        Self::from_monomial(&numerators, &denominator)
    }

    /// Monomial coefficients `(a_i, den)` with `f = sum a_i x^i / den`.
    pub fn to_monomial(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.coeffs.len();
        let den: BigInt = (1..d.max(1)).fold(BigInt::one(), |acc, n| acc * BigInt::from(n));
        // den * C(x, n) = (den / n!) * x (x - 1) ... (x - n + 1)
        let mut out = vec![BigInt::zero(); d];
        let mut falling = vec![BigInt::one()];
        let mut fact = BigInt::one();
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                fact *= BigInt::from(n);
                let shift = BigInt::from(n - 1);
                let mut next = vec![BigInt::zero(); falling.len() + 1];
                for (i, a) in falling.iter().enumerate() {
                    next[i + 1] += a;
                    next[i] -= a * &shift;
                }
                falling = next;
            }
            let scale = &den / &fact * c;
            for (i, a) in falling.iter().enumerate() {
                out[i] += a * &scale;
            }
        }
        let g = out.iter().fold(den.clone(), |g, a| g.gcd(a));
        if g.is_zero() {
            return (Vec::new(), BigInt::one());
        }
        let mut nums: Vec<BigInt> = out.into_iter().map(|a| a / &g).collect();
        while nums.last().is_some_and(Zero::is_zero) {
            nums.pop();
        }
        (nums, den / g)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for IVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let a = c.abs();
            match (n, a.is_one()) {
                (0, _) => write!(f, "{sep}{a}")?,
                (_, true) => write!(f, "{sep}C(x,{n})")?,
                (_, false) => write!(f, "{sep}{a}*C(x,{n})")?,
            }
        }
        Ok(())
    }
}

struct Dense;

fn dense_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

impl Evaluator<Vec<BigInt>> for Dense {
    fn constant(&self, n: &BigInt) -> Vec<BigInt> {
        dense_trim(vec![n.clone()])
    }

    fn variable(&self, name: &str) -> Result<Vec<BigInt>> {
        if name == "x" {
            Ok(vec![BigInt::zero(), BigInt::one()])
        } else {
            Err(Error::UnknownGenerator(name.to_string()))
        }
    }

    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        dense_trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
    }

    fn sub(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        dense_trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
    }

    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        dense_trim(out)
    }
}

/// Monomial coefficients of an expression in `x`.
pub fn monomial_coeffs(expr: &Expr) -> Result<Vec<BigInt>> {
    expr.eval(&Dense)
}

/// `C(a, n)` for any integer `a`, via the falling factorial.
pub fn binomial_at(a: &BigInt, n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..n {
        acc = acc * (a - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `f(a)` exactly.
pub fn eval_binomial(f: &IVPoly, a: &BigInt) -> BigInt {
    let mut binom = BigInt::one();
    let mut acc = BigInt::zero();
    for (n, c) in f.coeffs.iter().enumerate() {
        if n > 0 {
            // C(a, n) = C(a, n - 1) (a - n + 1) / n, exact
            binom = binom * (a - BigInt::from(n - 1)) / BigInt::from(n);
        }
        acc += c * &binom;
    }
    acc
}

/// `N = 1 + v_p(d!)` for `d = deg f`: arguments congruent mod `p^N` give
/// values congruent mod `p`.
pub fn required_precision(f: &IVPoly, p: u64) -> u32 {
    let d = f.degree().unwrap_or(0) as u64;
    1 + factorial_valuation(d, p) as u32
}

/// The p-adic integers `alpha ≡ r mod p^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    p: u64,
    n: u32,
    r: BigInt,
}

impl PadicApprox {
    /// `r` is reduced into `[0, p^n)`.
    pub fn new(p: u64, n: u32, r: &BigInt) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::Unsupported("p-adic precision must be at least 1".to_string()));
        }
        let modulus = BigInt::from(p).pow(n);
        Ok(Self { p, n, r: r.mod_floor(&modulus) })
    }

    /// The integer `a` truncated at precision `n`.
    pub fn of_integer(p: u64, n: u32, a: &BigInt) -> Result<Self> {
        Self::new(p, n, a)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn residue(&self) -> &BigInt {
        &self.r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChabertOutcome {
    Member,
    NonMember,
    /// Residues mod `p^precision` compatible with `alpha` that disagree.
    InsufficientPrecision { precision: u32, member: BigInt, non_member: BigInt },
}

/// Whether `f ∈ M_alpha`, i.e. `p | f(alpha)`, decided on the residues mod
/// `p^L`, `L = max(N, required_precision)`, compatible with `alpha`.
pub fn chabert_member(f: &IVPoly, alpha: &PadicApprox) -> Result<ChabertOutcome> {
    let p = alpha.p;
    let level = alpha.n.max(required_precision(f, p));
    let count = p
        .checked_pow(level - alpha.n)
        .filter(|&c| c <= CHABERT_RESIDUE_CAP)
        .ok_or(Error::TooLarge { what: "compatible residues", size: usize::MAX, cap: CHABERT_RESIDUE_CAP as usize })?;
    let step = BigInt::from(p).pow(alpha.n);
    let pb = BigInt::from(p);
    let (mut member, mut non_member) = (None, None);
    for j in 0..count {
        let s = &alpha.r + &step * BigInt::from(j);
        let divisible = eval_binomial(f, &s).mod_floor(&pb).is_zero();
        let slot = if divisible { &mut member } else { &mut non_member };
        slot.get_or_insert(s);
        if member.is_some() && non_member.is_some() {
            break;
        }
    }
    Ok(match (member, non_member) {
        (Some(_), None) => ChabertOutcome::Member,
        (None, Some(_)) => ChabertOutcome::NonMember,
        (Some(member), Some(non_member)) => ChabertOutcome::InsufficientPrecision { precision: level, member, non_member },
        (None, None) => unreachable!("at least one residue is evaluated"),
    })
}

/// `g` with `c·g = f`, failing with the least `a >= 0` where `c ∤ f(a)`.
pub fn divide_by_constant(f: &IVPoly, c: &BigInt) -> Result<IVPoly> {
    if c.is_zero() {
        return Err(Error::Unsupported("division by zero".to_string()));
    }
    if f.coeffs.iter().any(|a| !a.is_multiple_of(c)) {
        let d = f.degree().unwrap_or(0);
        let witness = (0..=d)
            .map(BigInt::from)
            .find(|a| !eval_binomial(f, a).is_multiple_of(c))
            .expect("a nonzero difference table has a nonzero value");
        return Err(Error::NotDivisible { witness });
    }
    let g = IVPoly::new(f.coeffs.iter().map(|a| a / c).collect());
    if g.scale(c) != *f {
        return Err(Error::CheckFailed(format!("{c}·g differs from f")));
    }
    Ok(g)
}

/// For `P = (q)` over `p`: `m = v_q(p)` and `s = p / q^m`, so `s ∉ P` and
/// `s P^m = pZ`.
pub fn pseudoprincipal_z(q: u64, p: &BigInt) -> Result<(u32, BigInt)> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let qb = BigInt::from(q);
    if p.is_zero() || !p.is_multiple_of(&qb) {
        return Err(Error::NotOverP { q, p: p.clone() });
    }
    let m = valuation(p, q);
    let qm = qb.clone().pow(m);
    let s = p / &qm;
    if s.is_multiple_of(&qb) || !(&s * &qm).is_multiple_of(p) {
        return Err(Error::CheckFailed(format!("bad witness ({m}, {s}) for q={q}, p={p}")));
    }
    Ok((m, s))
}

/// Outcome of [`rep_containment_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepContainment {
    /// `f / p`, an element of `Int(Z)` again.
    pub g: IVPoly,
    /// The pseudoprincipal pair `(m, s)` for `P = (p)` over `p`, i.e. `(1, 1)`.
    pub m: u32,
    pub s: BigInt,
}

/// For `f` with `p | f(a)` on `window`: `s f^m = p g` with `g ∈ Int(Z)`.
///
/// Over `Z` the pseudoprincipal pair for `(p)` over `p` is `(1, 1)`, so this
/// is `g = f / p`, checked exactly and on the window.
pub fn rep_containment_check(f: &IVPoly, p: u64, window: Range<i64>) -> Result<RepContainment> {
    let pb = BigInt::from(p);
    if let Some(a) = window.clone().find(|&a| !eval_binomial(f, &BigInt::from(a)).is_multiple_of(&pb)) {
        return Err(Error::PreconditionFailed { witness: BigInt::from(a) });
    }
    let (m, s) = pseudoprincipal_z(p, &pb)?;
    let g = divide_by_constant(f, &pb)?;
    for a in window.map(BigInt::from) {
        if &pb * eval_binomial(&g, &a) != eval_binomial(f, &a) {
            return Err(Error::CheckFailed(format!("p·g({a}) differs from f({a})")));
        }
    }
    Ok(RepContainment { g, m, s })
}

/// Smallest `N` such that `a ≡ b mod p^N` forces `f(a) ≡ f(b) mod p` on
/// `[0, limit)`, by brute force; `None` if even `p^max_n` is not enough.
pub fn precision_oracle(f: &IVPoly, p: u64, max_n: u32, limit: u64) -> Option<u32> {
    let pb = BigInt::from(p);
    let values: Vec<BigInt> = (0..limit).map(|a| eval_binomial(f, &BigInt::from(a)).mod_floor(&pb)).collect();
    (1..=max_n).find(|&n| {
        let period = p.pow(n) as usize;
        (period..values.len()).all(|a| values[a] == values[a - period])
    })
}

/// `v_p(f(a))`, or `None` when `f(a) = 0`.
pub fn value_valuation(f: &IVPoly, a: &BigInt, p: u64) -> Option<u32> {
    let v = eval_binomial(f, a);
    (!v.is_zero()).then(|| valuation(&v, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_binomial(&IVPoly::binomial(2), &big(5)), big(10));
        assert_eq!(eval_binomial(&IVPoly::binomial(3), &big(2)), big(0));
        assert_eq!(eval_binomial(&IVPoly::from_i64(&[0, 1, 2]), &big(3)), big(9));
        // C(-1, n) = (-1)^n
        for n in 0..6 {
            assert_eq!(binomial_at(&big(-1), n), big(if n % 2 == 0 { 1 } else { -1 }));
            assert_eq!(eval_binomial(&IVPoly::binomial(n), &big(-1)), binomial_at(&big(-1), n));
        }
    }

    #[test]
    fn precision_examples() {
        assert_eq!(required_precision(&IVPoly::binomial(2), 2), 2);
        assert_eq!(required_precision(&IVPoly::binomial(1), 7), 1);
        assert_eq!(required_precision(&IVPoly::binomial(4), 2), 4);
        assert_eq!(precision_oracle(&IVPoly::binomial(2), 2, 8, 64), Some(2));
        assert_eq!(precision_oracle(&IVPoly::binomial(4), 2, 8, 64), Some(3));
        assert_eq!(precision_oracle(&IVPoly::binomial(1), 3, 8, 81), Some(1));
    }

    /// The bound never undershoots the brute-force precision, for every
    /// `C(x, d)` with `d <= 8` and small primes.
    #[test]
    fn precision_bound_is_sound() {
        for p in [2u64, 3, 5, 7] {
            for d in 0..=8usize {
                let f = IVPoly::binomial(d);
                let n = required_precision(&f, p);
                let limit = p.pow(n + 2);
                let found = precision_oracle(&f, p, n + 2, limit).expect("bound holds");
                assert!(found <= n, "p={p} d={d}: oracle {found} > bound {n}");
            }
        }
    }

    #[test]
    fn chabert_examples() {
        let c2 = IVPoly::binomial(2);
        assert_eq!(chabert_member(&c2, &PadicApprox::new(2, 2, &big(0)).unwrap()).unwrap(), ChabertOutcome::Member);
        let x = IVPoly::binomial(1);
        assert_eq!(chabert_member(&x, &PadicApprox::new(2, 1, &big(1)).unwrap()).unwrap(), ChabertOutcome::NonMember);
        assert_eq!(
            chabert_member(&c2, &PadicApprox::new(2, 1, &big(1)).unwrap()).unwrap(),
            ChabertOutcome::InsufficientPrecision { precision: 2, member: big(1), non_member: big(3) }
        );
        assert!(PadicApprox::new(4, 1, &big(0)).is_err());
        assert_eq!(PadicApprox::new(3, 2, &big(-1)).unwrap().residue(), &big(8));
    }

    #[test]
    fn divide_examples() {
        assert_eq!(divide_by_constant(&IVPoly::from_i64(&[0, 0, 2]), &big(2)).unwrap(), IVPoly::binomial(2));
        assert_eq!(
            divide_by_constant(&IVPoly::from_i64(&[2, 0, 0, 6]), &big(2)).unwrap(),
            IVPoly::from_i64(&[1, 0, 0, 3])
        );
        assert_eq!(divide_by_constant(&IVPoly::binomial(1), &big(2)), Err(Error::NotDivisible { witness: big(1) }));
    }

    #[test]
    fn pseudoprincipal_examples() {
        assert_eq!(pseudoprincipal_z(5, &big(5)).unwrap(), (1, big(1)));
        assert_eq!(pseudoprincipal_z(2, &big(12)).unwrap(), (2, big(3)));
        assert_eq!(pseudoprincipal_z(3, &big(10)), Err(Error::NotOverP { q: 3, p: big(10) }));
        assert_eq!(pseudoprincipal_z(2, &big(-40)).unwrap(), (3, big(-5)));
    }

    #[test]
    fn rep_containment_examples() {
        let f = IVPoly::parse("x^2 + x").unwrap();
        assert_eq!(f, IVPoly::from_i64(&[0, 2, 2]));
        let rep = rep_containment_check(&f, 2, 0..10).unwrap();
        assert_eq!(rep.g, IVPoly::from_i64(&[0, 1, 1]));
        assert_eq!(rep_containment_check(&IVPoly::from_i64(&[2]), 2, 0..5).unwrap().g, IVPoly::from_i64(&[1]));
        assert_eq!(
            rep_containment_check(&IVPoly::binomial(1), 2, 0..5),
            Err(Error::PreconditionFailed { witness: big(1) })
        );
    }

    #[test]
    fn monomial_input() {
        assert_eq!(IVPoly::parse("x*(x-1)/2").unwrap(), IVPoly::binomial(2));
        // (x^3 - x) / 6 = C(x + 1, 3) = C(x, 3) + C(x, 2)
        assert_eq!(IVPoly::parse("(x^3 - x) / 6").unwrap(), IVPoly::from_i64(&[0, 0, 1, 1]));
        assert_eq!(IVPoly::parse("x^2/2"), Err(Error::NotDivisible { witness: big(1) }));
        assert!(matches!(IVPoly::parse("x/0"), Err(Error::Syntax { .. })));
        assert!(matches!(IVPoly::parse("y + 1"), Err(Error::UnknownGenerator(_))));
        assert_eq!(IVPoly::parse("7").unwrap(), IVPoly::from_i64(&[7]));
        assert_eq!(IVPoly::binomial(3).to_monomial(), (vec![big(0), big(2), big(-3), big(1)], big(6)));
    }

    #[test]
    fn display() {
        assert_eq!(IVPoly::from_i64(&[-1, 1, 0, 3]).to_string(), "-1 + C(x,1) + 3*C(x,3)");
        assert_eq!(IVPoly::zero().to_string(), "0");
    }

    fn ivpoly() -> impl Strategy<Value = IVPoly> {
        prop::collection::vec(-50i64..50, 0..7).prop_map(|v| IVPoly::from_i64(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn values_round_trip(values in prop::collection::vec(-1000i64..1000, 1..8)) {
            let vals: Vec<BigInt> = values.iter().map(|&v| big(v)).collect();
            let f = IVPoly::from_values(&vals);
            for (a, v) in vals.iter().enumerate() {
                prop_assert_eq!(&eval_binomial(&f, &big(a as i64)), v);
            }
        }

        #[test]
        fn monomial_round_trip(f in ivpoly()) {
            let (nums, den) = f.to_monomial();
            prop_assert_eq!(IVPoly::from_monomial(&nums, &den).unwrap(), f);
        }

        #[test]
        fn divide_round_trip(f in ivpoly(), c in prop_oneof![-30i64..-1, 1i64..30]) {
            let c = big(c);
            prop_assert_eq!(divide_by_constant(&f.scale(&c), &c).unwrap(), f);
        }

        #[test]
        fn eval_matches_monomial_form(f in ivpoly(), a in -40i64..40) {
            let (nums, den) = f.to_monomial();
            let x = big(a);
            let num = nums.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c);
            prop_assert_eq!(num, eval_binomial(&f, &x) * den);
        }

        #[test]
        fn chabert_at_integers_matches_valuation(f in ivpoly(), a in -200i64..200, pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let n = required_precision(&f, p);
            let alpha = PadicApprox::of_integer(p, n, &big(a)).unwrap();
            let direct = value_valuation(&f, &big(a), p).map_or(true, |v| v >= 1);
            let outcome = chabert_member(&f, &alpha).unwrap();
            prop_assert_eq!(outcome == ChabertOutcome::Member, direct);
            prop_assert!(outcome != ChabertOutcome::NonMember || !direct);
        }

        #[test]
        fn pseudoprincipal_witness_is_valid(q in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), k in 1i64..80, sign in any::<bool>()) {
            let p = big(if sign { -k } else { k }) * big(q as i64);
            let (m, s) = pseudoprincipal_z(q, &p).unwrap();
            prop_assert!(!s.is_multiple_of(&big(q as i64)));
            prop_assert_eq!(s * big(q as i64).pow(m), p);
        }
    }
}
