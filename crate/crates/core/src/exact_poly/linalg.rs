//! Exact Gaussian elimination over any [`Field`].

use super::field::Field;

/// Dense row-major matrix.
pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("pivot nonzero");
        for j in c..cols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = field.mul(&f, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(field, &mut m).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = m.clone();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&m[r][f]);
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, if any.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix.
pub fn det<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            d = field.neg(&d);
        }
        d = field.mul(&d, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("pivot nonzero");
        for i in (c + 1)..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for j in c..n {
                let t = field.mul(&f, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::field::Rationals;
    use crate::exact_poly::rational::{q, Rational};

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&Rationals, &m), 1);
        let k = kernel(&Rationals, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(s, q(0));
            }
        }
    }

    #[test]
    fn det_and_solve() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        assert_eq!(det(&Rationals, &m), q(5));
        let x = solve(&Rationals, &m, &[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(solve(&Rationals, &mat(&[&[1, 1], &[1, 1]]), &[q(0), q(1)]).is_none());
    }
}
