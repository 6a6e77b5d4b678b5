//! Exact matrix routines: determinants over `Z` and `Z[t]`, congruence
//! diagonalisation over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPoly;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn is_square(m: &[Vec<i64>]) -> bool {
    m.iter().all(|r| r.len() == m.len())
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Bareiss determinant over `Z[t]`.
pub fn det_poly(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut a = m.to_vec();
    let mut prev = IntPoly::one();
    let mut neg = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    neg = !neg;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        -&d
    } else {
        d
    }
}

/// Inertia of a symmetric rational matrix: `(positive, negative, zero)`.
pub fn inertia(m: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a = m.to_vec();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        // symmetric pivoting: bring a nonzero diagonal entry to position k
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, p);
        } else if let Some((i, j)) =
            (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        {
            // zero diagonal: add row/column j to i, giving diagonal 2 a_ij
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for r in 0..n {
                let v = a[r][j].clone();
                a[r][i] += v;
            }
            swap_sym(&mut a, k, i);
        } else {
            break;
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

/// Signature and nullity of a symmetric rational matrix.
pub fn symmetric_signature(m: &[Vec<BigRational>]) -> (i64, usize) {
    let (p, q, z) = inertia(m);
    (p as i64 - q as i64, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: &[&[i64]]) -> Vec<Vec<BigRational>> {
        to_rational(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn signatures() {
        assert_eq!(symmetric_signature(&q(&[&[-2, 1], &[1, -2]])), (-2, 0));
        assert_eq!(symmetric_signature(&q(&[&[0, 1], &[1, 0]])), (0, 0));
        assert_eq!(symmetric_signature(&q(&[&[0, 0], &[0, 0]])), (0, 2));
        assert_eq!(symmetric_signature(&q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]])), (1, 0));
        assert_eq!(symmetric_signature(&q(&[&[1, 1], &[1, 1]])), (1, 1));
    }

    #[test]
    fn determinants() {
        let m = to_big(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(det_int(&m), BigInt::from(18));
        let m = to_big(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det_int(&m), BigInt::from(-1));
        let t = IntPoly::x();
        let one = IntPoly::one();
        let pm = vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]];
        assert_eq!(det_poly(&pm), IntPoly::from_i64(&[-1, 0, 1]));
    }
}
