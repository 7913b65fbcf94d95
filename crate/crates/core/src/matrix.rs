//! Exact dense linear algebra: determinants and kernels.
//!
//! Three determinant routes with different trade-offs:
//! - cofactor expansion for size <= 4,
//! - fraction-free Bareiss elimination (needs exact division) for larger
//!   matrices with polynomial entries,
//! - a division-free expansion by minors over column subsets, used where
//!   entries live in a ring whose division is costly (cyclotomic numbers,
//!   extension fields).

use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Field, Ring};

fn require_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NonSquareMatrix { rows: n, cols: row.len() });
        }
    }
    Ok(n)
}

/// Default determinant: cofactor expansion up to 4x4, Bareiss above.
pub fn det<T: Ring + ExactDiv>(m: &[Vec<T>]) -> Result<T> {
    let n = require_square(m)?;
    Ok(if n <= 4 { det_cofactor(m) } else { det_bareiss(m) })
}

pub fn det_cofactor<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    match n {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        _ => {
            let mut acc = T::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * det_cofactor(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Division-free expansion by minors, O(n * 2^n) ring multiplications.
/// minor[s] for a k-subset s of columns is the determinant over the first k
/// rows; each level extends by one row.
pub fn det_minors<T: Ring>(m: &[Vec<T>]) -> Result<T> {
    let n = require_square(m)?;
    assert!(n <= 20, "minor expansion is exponential; use Bareiss");
    if n == 0 {
        return Ok(T::one());
    }
    let mut minors: Vec<Option<T>> = vec![None; 1 << n];
    minors[0] = Some(T::one());
    for s in 1usize..(1 << n) {
        let k = s.count_ones() as usize; // row index = k-1
        let mut acc = T::zero();
        let mut sign_pos = true;
        for j in (0..n).rev() {
            if s & (1 << j) != 0 {
                if !m[k - 1][j].is_zero() {
                    let sub = minors[s & !(1 << j)].as_ref().expect("filled in order");
                    let term = m[k - 1][j].clone() * sub.clone();
                    acc = if sign_pos { acc + term } else { acc - term };
                }
                sign_pos = !sign_pos;
            }
        }
        minors[s] = Some(acc);
    }
    Ok(minors[(1 << n) - 1].take().unwrap())
}

/// Fraction-free Gaussian elimination (Bareiss); the interior divisions are
/// exact by Sylvester's identity.
pub fn det_bareiss<T: Ring + ExactDiv>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut sign_pos = true;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_pos = !sign_pos;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_pos {
        d
    } else {
        -d
    }
}

/// Reduced row echelon form in place; returns pivot column per pivot row.
pub fn rref<F: Field>(a: &mut Vec<Vec<F>>) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for j in c..cols {
            a[r][j] = a[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    a[i][j] = a[i][j].clone() - f.clone() * a[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Canonical kernel basis of the column-action map x -> A x; one basis vector
/// per free column in ascending column order.
pub fn kernel<F: Field>(a: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m: Vec<Vec<F>> = a.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank<F: Field>(a: &[Vec<F>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}
