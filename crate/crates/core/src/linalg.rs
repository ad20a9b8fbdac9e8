//! Small exact dense linear algebra over a [`Scalar`] field: rank and
//! nullspace by fraction-free-enough Gaussian elimination (pivots normalized,
//! no rounding anywhere).

use crate::field::{FieldCtx, Scalar};

/// Row-reduces `m` in place and returns the pivot column of each nonzero row.
pub fn row_reduce(m: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c].clone();
                for c2 in 0..cols {
                    let d = m[r][c2].mul(&f);
                    m[k][c2] = m[k][c2].sub(&d);
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

pub fn rank(mut m: Vec<Vec<Scalar>>) -> usize {
    row_reduce(&mut m).len()
}

/// A basis of `{x : M·x = 0}` for the matrix given by rows.
pub fn nullspace(field: FieldCtx, mut m: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let pivots = row_reduce(&mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            // x_pc = −Σ_{free c} M[row][c]·x_c
            v[pc] = m[row][free].neg();
        }
        basis.push(v);
    }
    basis
}
