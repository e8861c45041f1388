use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ring::{BaseRing, RingElem};
use crate::{Error, Result};

/// Exact determinant of a square matrix over a field, by Gaussian
/// elimination. The empty matrix has determinant one.
pub fn matrix_det(field: &BaseRing, m: &[Vec<RingElem>]) -> Result<RingElem> {
    let n = m.len();
    if let Some(row) = m.iter().find(|row| row.len() != n) {
        return Err(Error::ShapeMismatch(format!("{n} rows but a row of length {}", row.len())));
    }
    if !field.is_field() {
        return Err(Error::Unsupported(String::from("determinant by elimination needs a field")));
    }
    for e in m.iter().flatten() {
        field.check(e)?;
    }
    let mut a: Vec<Vec<RingElem>> = m.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return Ok(field.zero());
        };
        if pivot != col {
            a.swap(pivot, col);
            det = field.neg(&det);
        }
        let inv = field.inverse(&a[col][col])?;
        det = field.mul(&det, &a[col][col]);
        for r in col + 1..n {
            if field.is_zero(&a[r][col]) {
                continue;
            }
            let factor = field.mul(&a[r][col], &inv);
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Oracle: cofactor expansion along the first row.
    fn det_cofactor(ring: &BaseRing, m: &[Vec<RingElem>]) -> RingElem {
        let n = m.len();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let minor: Vec<Vec<RingElem>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let term = ring.mul(&m[0][j], &det_cofactor(ring, &minor));
            acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }

    fn mat(ring: &BaseRing, rows: &[&[u64]]) -> Vec<Vec<RingElem>> {
        rows.iter().map(|r| r.iter().map(|&v| ring.from_u64(v)).collect()).collect()
    }

    #[test]
    fn examples() {
        let f2 = BaseRing::prime_field(2).unwrap();
        assert_eq!(matrix_det(&f2, &mat(&f2, &[&[1, 0], &[0, 1]])), Ok(f2.one()));
        assert_eq!(matrix_det(&f2, &mat(&f2, &[&[1, 1], &[1, 0]])), Ok(f2.one()));
        assert_eq!(matrix_det(&f2, &mat(&f2, &[&[0, 0], &[0, 0]])), Ok(f2.zero()));
        assert!(matches!(
            matrix_det(&f2, &mat(&f2, &[&[1, 0, 1], &[0, 1, 1]])),
            Err(Error::ShapeMismatch(_))
        ));
    }

    fn product(ring: &BaseRing, a: &[Vec<RingElem>], b: &[Vec<RingElem>]) -> Vec<Vec<RingElem>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&a[i][k], &b[k][j]))))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn multiplicative_and_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in [
            BaseRing::prime_field(2).unwrap(),
            BaseRing::prime_field(5).unwrap(),
            BaseRing::prime_field(13).unwrap(),
            BaseRing::galois_field(2, 3).unwrap(),
        ] {
            let q = ring.order().unwrap() as u32;
            for _ in 0..60 {
                let n = rng.gen_range(0..=5);
                let mut rand_mat = || -> Vec<Vec<RingElem>> {
                    (0..n).map(|_| (0..n).map(|_| ring.from_code(rng.gen_range(0..q))).collect()).collect()
                };
                let a = rand_mat();
                let b = rand_mat();
                let da = matrix_det(&ring, &a).unwrap();
                let db = matrix_det(&ring, &b).unwrap();
                assert_eq!(da, det_cofactor(&ring, &a));
                assert_eq!(ring.mul(&da, &db), det_cofactor(&ring, &product(&ring, &a, &b)));
            }
        }
    }
}
