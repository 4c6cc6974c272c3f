//! Exact linear algebra over the rationals, just enough for solving
//! conformality constraint systems.

use crate::arith::Rational;

/// Basis of the kernel of a homogeneous system given by rows of length
/// `ncols`.
pub(crate) fn kernel_basis(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].recip().unwrap();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= &delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&rows[r][free];
        }
        basis.push(v);
    }
    basis
}
