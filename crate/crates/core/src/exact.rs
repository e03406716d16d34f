//! Fraction-free (Bareiss) elimination over an integral domain.
//!
//! Every intermediate entry is a minor of the input matrix, so each division
//! is exact and no rationals are needed.

use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, One, Zero};

use crate::graph::Graph;

/// Square 0/1 adjacency matrix over `T`.
pub fn adjacency_matrix<T: Zero + One + Clone>(g: &Graph) -> Vec<Vec<T>> {
    let n = g.n();
    let mut a = vec![vec![T::zero(); n]; n];
    for (i, j) in g.edges() {
        a[i][j] = T::one();
        a[j][i] = T::one();
    }
    a
}

/// Determinant of a square matrix. Row swaps flip the sign.
pub fn bareiss_determinant<T>(mut a: Vec<Vec<T>>) -> T
where
    T: Num + Clone + Neg<Output = T>,
{
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Rank via fraction-free row echelon form; columns without a pivot are skipped.
pub fn bareiss_rank<T>(mut a: Vec<Vec<T>>) -> usize
where
    T: Num + Clone,
{
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = a[i][j].clone() * a[rank][col].clone()
                    - a[i][col].clone() * a[rank][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][col] = T::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Exact determinant of the adjacency matrix.
pub fn determinant_exact(g: &Graph) -> BigInt {
    bareiss_determinant(adjacency_matrix::<BigInt>(g))
}

/// Exact rank of the adjacency matrix.
pub fn rank_exact(g: &Graph) -> usize {
    bareiss_rank(adjacency_matrix::<BigInt>(g))
}
