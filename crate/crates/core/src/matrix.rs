//! Dense square-matrix arithmetic over an arbitrary semiring.

use crate::semiring::Semiring;

pub(crate) fn mat_vec<K: Semiring>(matrix: &[Vec<K>], vector: &[K]) -> Vec<K> {
    matrix
        .iter()
        .map(|row| {
            let mut acc = K::zero();
            for (entry, value) in row.iter().zip(vector) {
                if !entry.is_zero() && !value.is_zero() {
                    acc = acc.add(&entry.mul(value));
                }
            }
            acc
        })
        .collect()
}

pub(crate) fn identity<K: Semiring>(size: usize) -> Vec<Vec<K>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { K::one() } else { K::zero() })
                .collect()
        })
        .collect()
}

pub(crate) fn mat_mul<K: Semiring>(a: &[Vec<K>], b: &[Vec<K>]) -> Vec<Vec<K>> {
    let size = a.len();
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut acc = K::zero();
                    for (entry, row) in a[i].iter().zip(b) {
                        if !entry.is_zero() && !row[j].is_zero() {
                            acc = acc.add(&entry.mul(&row[j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Square-and-multiply exponentiation.
pub(crate) fn mat_pow<K: Semiring>(matrix: &[Vec<K>], mut exponent: usize) -> Vec<Vec<K>> {
    let mut result = identity(matrix.len());
    let mut base = matrix.to_vec();
    while exponent > 0 {
        if exponent & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        exponent >>= 1;
        if exponent > 0 {
            base = mat_mul(&base, &base);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;

    fn m(rows: &[&[u32]]) -> Vec<Vec<BigUint>> {
        rows.iter()
            .map(|row| row.iter().map(|v| BigUint::from(*v)).collect())
            .collect()
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        let a = m(&[&[1, 1], &[1, 0]]);
        let mut expected = identity(2);
        for n in 0..8 {
            assert_eq!(mat_pow(&a, n), expected, "n = {n}");
            expected = mat_mul(&expected, &a);
        }
    }

    #[test]
    fn mat_vec_applies_rows() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let v = vec![BigUint::from(5u32), BigUint::from(7u32)];
        assert_eq!(
            mat_vec(&a, &v),
            vec![BigUint::from(19u32), BigUint::from(21u32)]
        );
    }
}
