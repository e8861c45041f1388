use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fpx;
use super::primes::{inv_mod, is_prime};
use crate::{Error, Result};

/// Upper bound (exclusive) for `m` in `Z/m`, for `p`, and for `p^k`.
///
/// Keeps every product of two representatives inside `u64` and every element
/// code inside `u32`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// `F_p[t] / (modulus)` for a monic irreducible `modulus` of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    p: u64,
    modulus: Vec<u64>,
}

impl ExtField {
    /// `modulus` is given low-degree-first and must be monic and irreducible.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fpx::trim(&mut modulus);
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::InvalidRing(String::from(
                "extension modulus must be monic of degree >= 1",
            )));
        }
        let k = (modulus.len() - 1) as u32;
        match p.checked_pow(k) {
            Some(q) if q < MAX_MODULUS => {}
            _ => return Err(Error::InvalidRing(format!("field of order {p}^{k} is too large"))),
        }
        if !fpx::is_irreducible(p, &modulus) {
            return Err(Error::InvalidRing(String::from("extension modulus is reducible")));
        }
        Ok(Self { p, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    fn normalize(&self, mut c: Vec<u64>) -> Vec<u64> {
        c.resize(self.degree(), 0);
        c
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let prod = fpx::mul(self.p, a, b);
        self.normalize(fpx::rem(self.p, &prod, &self.modulus))
    }

    fn code(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn digits(&self, mut code: u64) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }
}

/// The rings `D` and `D/M` the rest of the crate computes in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    /// `Z/m`, `m >= 2`; a domain only when `m` is prime.
    IntegersMod(u64),
    PrimeField(u64),
    ExtField(ExtField),
}

/// A bare ring element; the ring it lives in is always passed alongside.
///
/// Representations are canonical: `Residue` holds a value in `[0, m)` and
/// `Ext` holds exactly `k` coefficients in `[0, p)`, low-degree-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElem {
    Integer(BigInt),
    Residue(u64),
    Ext(Vec<u64>),
}

impl RingElem {
    pub fn int(n: i64) -> Self {
        RingElem::Integer(BigInt::from(n))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Integer(n) => write!(f, "{n}"),
            RingElem::Residue(v) => write!(f, "{v}"),
            RingElem::Ext(c) => {
                write!(f, "[")?;
                for (i, d) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl BaseRing {
    pub fn integers_mod(m: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidRing(format!("modulus {m} out of range")));
        }
        Ok(BaseRing::IntegersMod(m))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_MODULUS {
            return Err(Error::InvalidRing(format!("prime {p} out of range")));
        }
        Ok(BaseRing::PrimeField(p))
    }

    /// `F_{p^k}` over the smallest irreducible polynomial of degree `k`.
    pub fn galois_field(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidRing(String::from("extension degree must be >= 1")));
        }
        match p.checked_pow(k as u32) {
            Some(q) if q < MAX_MODULUS => {}
            _ => return Err(Error::InvalidRing(format!("field of order {p}^{k} is too large"))),
        }
        Ok(BaseRing::ExtField(ExtField::new(p, fpx::smallest_irreducible(p, k))?))
    }

    pub fn is_domain(&self) -> bool {
        match self {
            BaseRing::IntegersMod(m) => is_prime(*m),
            _ => true,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, BaseRing::Integers) && self.is_domain()
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, BaseRing::Integers)
    }

    /// Number of elements, `None` for `Z`.
    pub fn order(&self) -> Option<u64> {
        match self {
            BaseRing::Integers => None,
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => Some(*m),
            BaseRing::ExtField(f) => Some(f.order()),
        }
    }

    /// Characteristic, `0` for `Z`.
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseRing::Integers => 0,
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => *m,
            BaseRing::ExtField(f) => f.p,
        }
    }

    pub fn zero(&self) -> RingElem {
        self.from_u64(0)
    }

    pub fn one(&self) -> RingElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> RingElem {
        match self {
            BaseRing::Integers => RingElem::Integer(BigInt::from(n)),
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => RingElem::Residue(n % m),
            BaseRing::ExtField(f) => {
                let mut c = alloc::vec![0; f.degree()];
                c[0] = n % f.p;
                RingElem::Ext(c)
            }
        }
    }

    /// The image of an integer under `Z -> self`.
    pub fn from_int(&self, n: &BigInt) -> RingElem {
        match self {
            BaseRing::Integers => RingElem::Integer(n.clone()),
            _ => {
                let c = self.characteristic();
                let r = n.mod_floor(&BigInt::from(c)).to_u64().expect("residue fits");
                self.from_u64(r)
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> RingElem {
        self.from_int(&BigInt::from(n))
    }

    pub fn contains(&self, a: &RingElem) -> bool {
        match (self, a) {
            (BaseRing::Integers, RingElem::Integer(_)) => true,
            (BaseRing::IntegersMod(m) | BaseRing::PrimeField(m), RingElem::Residue(v)) => v < m,
            (BaseRing::ExtField(f), RingElem::Ext(c)) => {
                c.len() == f.degree() && c.iter().all(|&d| d < f.p)
            }
            _ => false,
        }
    }

    pub fn check(&self, a: &RingElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Integer(n) => n.is_zero(),
            RingElem::Residue(v) => *v == 0,
            RingElem::Ext(c) => c.iter().all(|&d| d == 0),
        }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (BaseRing::Integers, RingElem::Integer(x), RingElem::Integer(y)) => {
                RingElem::Integer(x + y)
            }
            (
                BaseRing::IntegersMod(m) | BaseRing::PrimeField(m),
                RingElem::Residue(x),
                RingElem::Residue(y),
            ) => RingElem::Residue((x + y) % m),
            (BaseRing::ExtField(f), RingElem::Ext(x), RingElem::Ext(y)) => {
                RingElem::Ext(x.iter().zip(y).map(|(a, b)| (a + b) % f.p).collect())
            }
            _ => mismatch(),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match (self, a) {
            (BaseRing::Integers, RingElem::Integer(x)) => RingElem::Integer(-x),
            (BaseRing::IntegersMod(m) | BaseRing::PrimeField(m), RingElem::Residue(x)) => {
                RingElem::Residue((m - x) % m)
            }
            (BaseRing::ExtField(f), RingElem::Ext(x)) => {
                RingElem::Ext(x.iter().map(|d| (f.p - d) % f.p).collect())
            }
            _ => mismatch(),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (BaseRing::Integers, RingElem::Integer(x), RingElem::Integer(y)) => {
                RingElem::Integer(x * y)
            }
            (
                BaseRing::IntegersMod(m) | BaseRing::PrimeField(m),
                RingElem::Residue(x),
                RingElem::Residue(y),
            ) => RingElem::Residue(x * y % m),
            (BaseRing::ExtField(f), RingElem::Ext(x), RingElem::Ext(y)) => {
                RingElem::Ext(f.mul(x, y))
            }
            _ => mismatch(),
        }
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse; `NotAUnit` for zero and zero divisors.
    pub fn inverse(&self, a: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        match (self, a) {
            (BaseRing::Integers, RingElem::Integer(x)) => {
                if x.abs().is_one() {
                    Ok(a.clone())
                } else {
                    Err(Error::NotAUnit)
                }
            }
            (BaseRing::IntegersMod(m) | BaseRing::PrimeField(m), RingElem::Residue(x)) => {
                inv_mod(*x, *m).map(RingElem::Residue).ok_or(Error::NotAUnit)
            }
            (BaseRing::ExtField(f), RingElem::Ext(_)) => {
                if self.is_zero(a) {
                    Err(Error::NotAUnit)
                } else {
                    Ok(self.pow(a, f.order() - 2))
                }
            }
            _ => Err(Error::ParentMismatch),
        }
    }

    /// Dense index of an element of a finite ring: the residue itself, or
    /// `sum c_i p^i` for extension-field coefficient vectors.
    pub fn code(&self, a: &RingElem) -> u32 {
        match (self, a) {
            (BaseRing::IntegersMod(_) | BaseRing::PrimeField(_), RingElem::Residue(v)) => *v as u32,
            (BaseRing::ExtField(f), RingElem::Ext(c)) => f.code(c) as u32,
            _ => panic!("code() needs an element of a finite ring"),
        }
    }

    pub fn from_code(&self, code: u32) -> RingElem {
        match self {
            BaseRing::ExtField(f) => RingElem::Ext(f.digits(code as u64)),
            BaseRing::Integers => panic!("from_code() needs a finite ring"),
            _ => self.from_u64(code as u64),
        }
    }

    /// All elements of a finite ring in code order.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let n = self.order().expect("elements() needs a finite ring");
        (0..n).map(move |c| self.from_code(c as u32))
    }

    /// Code-level addition for finite rings.
    pub fn add_codes(&self, a: u32, b: u32) -> u32 {
        match self {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => ((a as u64 + b as u64) % m) as u32,
            BaseRing::ExtField(f) if f.p == 2 => a ^ b,
            _ => self.code(&self.add(&self.from_code(a), &self.from_code(b))),
        }
    }

    pub fn mul_codes(&self, a: u32, b: u32) -> u32 {
        match self {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => (a as u64 * b as u64 % m) as u32,
            _ => self.code(&self.mul(&self.from_code(a), &self.from_code(b))),
        }
    }

    pub fn neg_code(&self, a: u32) -> u32 {
        match self {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => ((m - a as u64) % m) as u32,
            BaseRing::ExtField(f) if f.p == 2 => a,
            _ => self.code(&self.neg(&self.from_code(a))),
        }
    }

    /// Integer representative of an element of `Z`, `Z/m` or `F_p`.
    pub fn to_bigint(&self, a: &RingElem) -> Option<BigInt> {
        match a {
            RingElem::Integer(n) => Some(n.clone()),
            RingElem::Residue(v) => Some(BigInt::from(*v)),
            RingElem::Ext(_) => None,
        }
    }

    /// Short descriptor such as `Z`, `Z/6`, `F_5` or `F_2^3`.
    pub fn describe(&self) -> String {
        match self {
            BaseRing::Integers => String::from("Z"),
            BaseRing::IntegersMod(m) => format!("Z/{m}"),
            BaseRing::PrimeField(p) => format!("F_{p}"),
            BaseRing::ExtField(f) => format!("F_{}^{}", f.p, f.degree()),
        }
    }
}

fn mismatch() -> ! {
    panic!("ring element does not belong to this ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> BaseRing {
        BaseRing::galois_field(2, 2).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let f5 = BaseRing::prime_field(5).unwrap();
        assert_eq!(f5.inverse(&RingElem::Residue(2)), Ok(RingElem::Residue(3)));

        // t * (t + 1) = t^2 + t = 1 modulo t^2 + t + 1
        let f4 = f4();
        let t = RingElem::Ext(alloc::vec![0, 1]);
        assert_eq!(f4.inverse(&t), Ok(RingElem::Ext(alloc::vec![1, 1])));

        for ring in [f5, f4, BaseRing::integers_mod(6).unwrap(), BaseRing::Integers] {
            assert_eq!(ring.inverse(&ring.zero()), Err(Error::NotAUnit));
        }
        let z6 = BaseRing::IntegersMod(6);
        assert_eq!(z6.inverse(&RingElem::Residue(2)), Err(Error::NotAUnit));
        assert_eq!(z6.inverse(&RingElem::Residue(5)), Ok(RingElem::Residue(5)));
        assert_eq!(BaseRing::Integers.inverse(&RingElem::int(-1)), Ok(RingElem::int(-1)));
    }

    #[test]
    fn domain_flags() {
        assert!(BaseRing::Integers.is_domain());
        assert!(!BaseRing::Integers.is_field());
        assert!(BaseRing::IntegersMod(7).is_field());
        assert!(!BaseRing::IntegersMod(9).is_domain());
        assert!(f4().is_field());
    }

    #[test]
    fn codes_round_trip() {
        for ring in [f4(), BaseRing::galois_field(3, 2).unwrap(), BaseRing::IntegersMod(9)] {
            for (i, e) in ring.elements().enumerate() {
                assert_eq!(ring.code(&e) as usize, i);
                assert!(ring.contains(&e));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(BaseRing::prime_field(9), Err(Error::NotPrime(9)));
        assert!(BaseRing::integers_mod(1).is_err());
        assert!(ExtField::new(2, alloc::vec![1, 0, 1]).is_err()); // t^2 + 1 = (t + 1)^2
        assert!(ExtField::new(2, alloc::vec![1, 1, 1]).is_ok());
    }

    /// Field axioms, exhaustively, on every `F_{p^k}` with `p^k <= 64`.
    #[test]
    fn field_axioms_exhaustive() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = BaseRing::galois_field(p, k).unwrap();
            let elems: std::vec::Vec<_> = f.elements().collect();
            for a in &elems {
                assert_eq!(f.add(a, &f.neg(a)), f.zero());
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, &f.inverse(a).unwrap()), f.one());
                }
                for b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &elems {
                        assert_eq!(f.mul(a, &f.mul(b, c)), f.mul(&f.mul(a, b), c));
                        assert_eq!(f.add(a, &f.add(b, c)), f.add(&f.add(a, b), c));
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    }
                }
            }
        }
    }
}
