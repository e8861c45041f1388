use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{irreducible_poly, BaseRing, ExtField, MPoly, RingElem};
use crate::{Error, Result};

/// Largest field order `p^k` a norm form is built for.
pub const NORM_FIELD_CAP: u64 = 1 << 16;
/// Largest degree: the form has up to `C(2k-1, k)` terms.
pub const NORM_DEGREE_CAP: usize = 12;
/// Degrees up to this also get the symbolic determinant as a cross-check.
const DETERMINANT_CHECK_DEGREE: usize = 6;

/// The norm form of `F_{p^k}` over `F_p` in the power basis `1, t, ..., t^{k-1}`:
/// a form of degree `k` in `k` variables that vanishes only at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NForm {
    field: ExtField,
    form: MPoly,
}

impl NForm {
    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn k(&self) -> usize {
        self.field.degree()
    }

    /// The extension field the form comes from.
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn form(&self) -> &MPoly {
        &self.form
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        self.form.eval(point)
    }

    /// The binary form obtained by setting `x_0 = x` and `x_1 = ... = x_{k-1} = y`,
    /// as `((i, j), c)` for `c x^i y^j`.
    pub fn identify_to_binary(&self) -> BTreeMap<(u32, u32), u64> {
        let p = self.p();
        let mut out: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for (e, c) in self.form.terms() {
            let key = (e[0], e[1..].iter().sum());
            let slot = out.entry(key).or_insert(0);
            *slot = (*slot + c) % p;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

/// The norm form for the smallest irreducible modulus of degree `k`.
pub fn norm_form(p: u64, k: usize) -> Result<NForm> {
    check_size(p, k)?;
    let modulus: Vec<u64> = irreducible_poly(p, k)?
        .coeffs()
        .iter()
        .map(|c| match c {
            RingElem::Residue(v) => *v,
            _ => unreachable!("irreducible_poly lives over F_p"),
        })
        .collect();
    norm_form_with_modulus(p, modulus)
}

fn check_size(p: u64, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Unsupported(format!("norm form of degree {k}: need k >= 2")));
    }
    if k > NORM_DEGREE_CAP {
        return Err(Error::TooLarge { what: "norm form degree", size: k, cap: NORM_DEGREE_CAP });
    }
    match p.checked_pow(k as u32) {
        Some(q) if q <= NORM_FIELD_CAP => Ok(()),
        _ => Err(Error::TooLarge { what: "norm form field order", size: usize::MAX, cap: NORM_FIELD_CAP as usize }),
    }
}

/// The norm form for an explicit monic irreducible `modulus` (low degree first).
///
/// The form is expanded as the product of the `k` Frobenius conjugates
/// `sum_i x_i t^{i p^j}`, whose coefficients must all land in `F_p`. For small
/// `k` the determinant of the multiplication matrix is also expanded and must
/// agree. Construction fails unless the form vanishes only at zero on all of
/// `F_p^k`.
pub fn norm_form_with_modulus(p: u64, modulus: Vec<u64>) -> Result<NForm> {
    let field = ExtField::new(p, modulus)?;
    let k = field.degree();
    check_size(p, k)?;
    let gf = LogTables::new(&field);
    let form = conjugate_product(&gf, k)?;
    if k <= DETERMINANT_CHECK_DEGREE && multiplication_determinant(&field) != form {
        return Err(Error::CheckFailed(format!("conjugate product and determinant disagree for p={p}, k={k}")));
    }
    if form.homogeneous_degree() != Some(k as u32) {
        return Err(Error::CheckFailed(format!("norm form is not homogeneous of degree {k}")));
    }
    let grid = form.eval_grid();
    if let Some(code) = grid.iter().skip(1).position(|&v| v == 0) {
        return Err(Error::CheckFailed(format!("norm form vanishes at nonzero point with code {}", code + 1)));
    }
    Ok(NForm { field, form })
}

/// Multiplication in `F_{p^k}` on element codes through discrete logarithms.
pub(crate) struct LogTables {
    p: u64,
    k: usize,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl LogTables {
    pub(crate) fn new(field: &ExtField) -> Self {
        let ring = BaseRing::ExtField(field.clone());
        let q = field.order() as u32;
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![0u32; q as usize];
        for g in 2..q {
            let mut x = 1u32;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().enumerate() {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *slot = x;
                x = ring.mul_codes(x, g);
            }
            if ok {
                break;
            }
        }
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Self { p: field.p(), k: field.degree(), exp, log }
    }

    fn order_minus_one(&self) -> u64 {
        self.exp.len() as u64
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len();
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n]
    }

    pub(crate) fn add(&self, mut a: u32, mut b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as u32;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    /// `t^n` where `t` has code `p`.
    fn t_pow(&self, n: u64) -> u32 {
        let lt = self.log[self.p as usize] as u64;
        self.exp[(lt * n % self.order_minus_one()) as usize]
    }
}

/// Exponent vectors packed five bits per variable.
const BITS: u32 = 5;

fn unpack(key: u64, k: usize) -> Vec<u32> {
    (0..k).map(|i| (key >> (BITS * i as u32) & 31) as u32).collect()
}

fn conjugate_product(gf: &LogTables, k: usize) -> Result<MPoly> {
    let p = gf.p;
    let mut terms: BTreeMap<u64, u32> = BTreeMap::new();
    terms.insert(0, 1);
    for j in 0..k {
        // sigma^j(w) = sum_i x_i t^{i p^j}
        let frob = p.pow(j as u32);
        let coeffs: Vec<u32> = (0..k).map(|i| gf.t_pow(i as u64 * frob)).collect();
        let mut next: BTreeMap<u64, u32> = BTreeMap::new();
        for (&key, &c) in &terms {
            for (i, &a) in coeffs.iter().enumerate() {
                let prod = gf.mul(c, a);
                if prod == 0 {
                    continue;
                }
                let slot = next.entry(key + (1 << (BITS * i as u32))).or_insert(0);
                *slot = gf.add(*slot, prod);
            }
        }
        next.retain(|_, c| *c != 0);
        terms = next;
    }
    let mut form = MPoly::zero(p, k);
    for (key, c) in terms {
        if c as u64 >= p {
            return Err(Error::CheckFailed(format!("norm coefficient {c} is not in F_{p}")));
        }
        form.add_term(unpack(key, k), c as u64);
    }
    Ok(form)
}

/// Coordinates of `t^n` in the power basis.
fn power_coords(field: &ExtField, n: usize) -> Vec<u64> {
    let ring = BaseRing::ExtField(field.clone());
    let t = ring.from_code(field.p() as u32);
    match ring.pow(&t, n as u64) {
        RingElem::Ext(c) => c,
        _ => unreachable!(),
    }
}

/// The determinant of the matrix of `v -> w v` for the generic element
/// `w = sum_i x_i t^i`, expanded symbolically by Laplace expansion over
/// column subsets.
pub fn multiplication_determinant(field: &ExtField) -> MPoly {
    let (p, k) = (field.p(), field.degree());
    let powers: Vec<Vec<u64>> = (0..2 * k).map(|n| power_coords(field, n)).collect();
    // entry (r, j): coordinate r of w t^j
    let entry = |r: usize, j: usize| -> MPoly {
        let mut out = MPoly::zero(p, k);
        for i in 0..k {
            let c = powers[i + j][r];
            if c != 0 {
                out = out.add(&MPoly::monomial_var(p, k, i, c));
            }
        }
        out
    };
    let mut minors: Vec<MPoly> = vec![MPoly::zero(p, k); 1 << k];
    minors[0] = MPoly::constant(p, k, 1);
    for mask in 1usize..1 << k {
        let row = mask.count_ones() as usize - 1;
        let mut acc = MPoly::zero(p, k);
        for c in (0..k).filter(|c| mask >> c & 1 == 1) {
            let term = entry(row, c).mul(&minors[mask & !(1 << c)]);
            let above = (mask >> (c + 1)).count_ones();
            acc = if above % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        minors[mask] = acc;
    }
    minors.pop().unwrap()
}

/// The matrix of `v -> w v` at a concrete `w` (coordinates), over `F_p`.
pub fn multiplication_matrix(field: &ExtField, w: &[u64]) -> Vec<Vec<RingElem>> {
    let (p, k) = (field.p(), field.degree());
    let powers: Vec<Vec<u64>> = (0..2 * k).map(|n| power_coords(field, n)).collect();
    (0..k)
        .map(|r| {
            (0..k)
                .map(|j| RingElem::Residue((0..k).fold(0, |acc, i| (acc + w[i] * powers[i + j][r]) % p)))
                .collect()
        })
        .collect()
}
