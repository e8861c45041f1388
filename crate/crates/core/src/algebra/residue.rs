use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::primes::is_prime;
use super::ring::{BaseRing, RingElem, MAX_MODULUS};
use crate::{Error, Result};

/// An ideal `M` of a base ring: the zero ideal or a principal ideal `(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MDescriptor {
    Zero,
    Principal(BigInt),
}

impl MDescriptor {
    pub fn principal(m: i64) -> Self {
        MDescriptor::Principal(BigInt::from(m))
    }
}

/// The reduction `D -> D/M` for an ideal `M` with finite quotient.
///
/// Carries canonical lifts back into `D`: residues in `[0, m)` for `Z` and
/// `Z/n`, and the identity when `M` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    base: BaseRing,
    m: MDescriptor,
    quotient: BaseRing,
}

impl Residue {
    pub fn new(base: BaseRing, m: MDescriptor) -> Result<Self> {
        let quotient = match (&base, &m) {
            (BaseRing::Integers, MDescriptor::Zero) => {
                return Err(Error::BadModulus(String::from("Z/(0) is infinite")));
            }
            (BaseRing::Integers, MDescriptor::Principal(g)) => {
                let g = g.abs();
                if g.is_zero() {
                    return Err(Error::BadModulus(String::from("Z/(0) is infinite")));
                }
                let g = g.to_u64().filter(|&g| g < MAX_MODULUS).ok_or_else(|| {
                    Error::BadModulus(format!("modulus {g} out of range"))
                })?;
                quotient_mod(g)?
            }
            (BaseRing::IntegersMod(n), MDescriptor::Principal(d)) => {
                let g = d.mod_floor(&BigInt::from(*n)).gcd(&BigInt::from(*n));
                let g = g.to_u64().expect("gcd divides n");
                if g == *n { base.clone() } else { quotient_mod(g)? }
            }
            (_, MDescriptor::Zero) => base.clone(),
            (_, MDescriptor::Principal(c)) => {
                if !base.is_zero(&base.from_int(c)) {
                    return Err(Error::BadModulus(format!("{c} is a unit of {}", base.describe())));
                }
                base.clone()
            }
        };
        Ok(Self { base, m, quotient })
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn m(&self) -> &MDescriptor {
        &self.m
    }

    /// The finite ring `D/M`.
    pub fn quotient(&self) -> &BaseRing {
        &self.quotient
    }

    pub fn is_maximal(&self) -> bool {
        self.quotient.is_field()
    }

    pub fn require_maximal(&self) -> Result<()> {
        if self.is_maximal() { Ok(()) } else { Err(Error::NotMaximal) }
    }

    pub fn reduce(&self, a: &RingElem) -> RingElem {
        match (&self.base, a) {
            (BaseRing::Integers, RingElem::Integer(n)) => self.quotient.from_int(n),
            (BaseRing::IntegersMod(_), RingElem::Residue(v)) => self.quotient.from_u64(*v),
            _ => a.clone(),
        }
    }

    pub fn reduce_code(&self, a: &RingElem) -> u32 {
        self.quotient.code(&self.reduce(a))
    }

    /// Whether `a` lies in `M`.
    pub fn contains(&self, a: &RingElem) -> bool {
        self.quotient.is_zero(&self.reduce(a))
    }

    /// Canonical representative in `D` of an element of `D/M`.
    pub fn lift(&self, r: &RingElem) -> RingElem {
        match (&self.base, r) {
            (BaseRing::Integers, RingElem::Residue(v)) => RingElem::Integer(BigInt::from(*v)),
            (BaseRing::IntegersMod(_), RingElem::Residue(v)) => RingElem::Residue(*v),
            _ => r.clone(),
        }
    }

    pub fn lift_code(&self, code: u32) -> RingElem {
        self.lift(&self.quotient.from_code(code))
    }

    /// Human-readable `(m)` or `(0)`.
    pub fn describe_m(&self) -> String {
        match &self.m {
            MDescriptor::Zero => String::from("(0)"),
            MDescriptor::Principal(g) => format!("({g})"),
        }
    }
}

fn quotient_mod(g: u64) -> Result<BaseRing> {
    if g == 1 {
        return Err(Error::BadModulus(String::from("M is the whole ring")));
    }
    if is_prime(g) { BaseRing::prime_field(g) } else { BaseRing::integers_mod(g) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotients() {
        let r = Residue::new(BaseRing::Integers, MDescriptor::principal(-6)).unwrap();
        assert_eq!(r.quotient(), &BaseRing::IntegersMod(6));
        assert!(!r.is_maximal());
        assert_eq!(r.reduce_code(&RingElem::int(-1)), 5);
        assert_eq!(r.lift_code(5), RingElem::int(5));

        let r = Residue::new(BaseRing::IntegersMod(9), MDescriptor::principal(3)).unwrap();
        assert_eq!(r.quotient(), &BaseRing::PrimeField(3));
        assert!(r.contains(&RingElem::Residue(6)));
        assert!(!r.contains(&RingElem::Residue(4)));
        assert_eq!(r.lift_code(2), RingElem::Residue(2));

        let r = Residue::new(BaseRing::IntegersMod(6), MDescriptor::principal(4)).unwrap();
        assert_eq!(r.quotient(), &BaseRing::PrimeField(2));

        let f5 = BaseRing::prime_field(5).unwrap();
        assert!(Residue::new(f5.clone(), MDescriptor::Zero).unwrap().is_maximal());
        assert!(Residue::new(f5.clone(), MDescriptor::principal(10)).is_ok());
        assert!(Residue::new(f5, MDescriptor::principal(2)).is_err());
        assert!(Residue::new(BaseRing::Integers, MDescriptor::Zero).is_err());
        assert!(Residue::new(BaseRing::Integers, MDescriptor::principal(1)).is_err());
        assert!(Residue::new(BaseRing::IntegersMod(6), MDescriptor::principal(5)).is_err());
    }
}
