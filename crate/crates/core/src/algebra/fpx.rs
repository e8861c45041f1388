//! Dense polynomials over a prime field `F_p`, coefficients low-degree-first.
//!
//! These are the raw building blocks for extension-field arithmetic; the
//! public, ring-generic polynomial type is [`super::Poly`].

use alloc::vec;
use alloc::vec::Vec;

use super::primes::inv_mod;

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero divisor `d`.
pub(crate) fn rem(p: u64, a: &[u64], d: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut d = d.to_vec();
    trim(&mut d);
    assert!(!d.is_empty(), "division by the zero polynomial");
    let lead_inv = inv_mod(*d.last().unwrap(), p).expect("leading coefficient is a unit mod p");
    let dd = d.len() - 1;
    while r.len() > dd && !r.is_empty() {
        let shift = r.len() - 1 - dd;
        let c = r.last().unwrap() * lead_inv % p;
        for (j, &y) in d.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        trim(&mut r);
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`.
pub(crate) fn monic_from_code(p: u64, deg: usize, mut code: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        out.push(code % p);
        code /= p;
    }
    out.push(1);
    out
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree at most `deg / 2`.
pub(crate) fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let g = monic_from_code(p, d, code);
            if rem(p, &f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The smallest monic irreducible polynomial of degree `k` over `F_p`, where
/// candidates are ordered by the integer whose base-`p` digits are the lower
/// coefficients (constant term least significant).
pub(crate) fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut code = 0u64;
    loop {
        let f = monic_from_code(p, k, code);
        if is_irreducible(p, &f) {
            return f;
        }
        code += 1;
    }
}
