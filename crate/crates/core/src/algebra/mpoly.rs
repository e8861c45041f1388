use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Sparse multivariate polynomial over a prime field `F_p`.
///
/// Terms are keyed by exponent vectors of length `nvars`; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl MPoly {
    pub fn zero(p: u64, nvars: usize) -> Self {
        Self { p, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, nvars: usize, c: u64) -> Self {
        let mut out = Self::zero(p, nvars);
        out.add_term(vec![0; nvars], c);
        out
    }

    /// `c * x_i`.
    pub fn monomial_var(p: u64, nvars: usize, i: usize, c: u64) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut out = Self::zero(p, nvars);
        out.add_term(exp, c);
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: u64) {
        debug_assert_eq!(exp.len(), self.nvars);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = (*slot + c) % self.p;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = (self.p - *c) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + ca * cb) % self.p;
            }
        }
        acc.retain(|_, c| *c != 0);
        Self { p: self.p, nvars: self.nvars, terms: acc }
    }

    /// Total degrees of the terms, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let t = e.iter().zip(point).fold(c, |t, (&k, &x)| t * pow_mod(x % p, k as u64, p) % p);
            (acc + t) % p
        })
    }

    /// Values at every point of `F_p^nvars`, indexed by `sum x_i p^i`.
    ///
    /// Exponents are first folded with `x^p = x` (valid on `F_p`), which gives
    /// a dense table of at most `p^nvars` coefficients; each variable is then
    /// evaluated in turn along its axis.
    pub fn eval_grid(&self) -> Vec<u64> {
        let p = self.p;
        let size = (p as usize).pow(self.nvars as u32);
        let mut table = vec![0u64; size];
        for (e, &c) in &self.terms {
            let mut idx = 0usize;
            let mut stride = 1usize;
            for &k in e {
                let folded = if k == 0 { 0 } else { (k as u64 - 1) % (p - 1) + 1 };
                idx += folded as usize * stride;
                stride *= p as usize;
            }
            table[idx] = (table[idx] + c) % p;
        }
        let pu = p as usize;
        let mut stride = 1usize;
        let mut line = vec![0u64; pu];
        for _ in 0..self.nvars {
            for base in 0..size {
                if (base / stride) % pu != 0 {
                    continue;
                }
                for (d, slot) in line.iter_mut().enumerate() {
                    *slot = table[base + d * stride];
                }
                for x in 0..pu {
                    // Horner along this axis
                    let v = line.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c) % p);
                    table[base + x * stride] = v;
                }
            }
            stride *= pu;
        }
        table
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}
