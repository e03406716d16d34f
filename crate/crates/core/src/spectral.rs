//! Adjacency spectra via cyclic Jacobi rotations, and the derived scalars
//! consumed by the energy bounds.

use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::Scalar;

/// Default absolute threshold below which an eigenvalue counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },
    #[error("matrix must be square and symmetric")]
    NotSymmetric,
}

/// Adjacency eigenvalues in descending order together with the energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
    energy: T,
}

impl<T: Scalar> Spectrum<T> {
    /// Wraps precomputed eigenvalues; they are sorted descending here.
    pub fn from_values(mut values: Vec<T>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        let energy = values.iter().fold(T::zero(), |acc, v| acc + v.abs());
        Spectrum { values, energy }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum of lambda_i^k`.
    pub fn power_sum(&self, k: i32) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + v.powi(k))
    }
}

/// Scalars derived from a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralStats<T> {
    /// Largest eigenvalue.
    pub lambda1: T,
    /// Smallest eigenvalue modulus; exactly zero when the graph is singular.
    pub t: T,
    /// Smallest modulus among eigenvalues above `zero_tol`.
    pub t_nz: Option<T>,
    /// Number of eigenvalues with modulus above `zero_tol`.
    pub rank: usize,
    /// Product of the eigenvalues.
    pub det: T,
    pub is_singular: bool,
    pub zero_tol: T,
}

pub fn eigenvalues<T: Scalar>(g: &Graph) -> Result<Spectrum<T>, SpectralError> {
    let n = g.n();
    let mut a = vec![T::zero(); n * n];
    for (i, j) in g.edges() {
        a[i * n + j] = T::one();
        a[j * n + i] = T::one();
    }
    symmetric_eigenvalues(a, n).map(Spectrum::from_values)
}

/// Eigenvalues of a dense symmetric `n x n` row-major matrix, unsorted.
pub fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<T>, n: usize) -> Result<Vec<T>, SpectralError> {
    if a.len() != n * n {
        return Err(SpectralError::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if a[i * n + j] != a[j * n + i] {
                return Err(SpectralError::NotSymmetric);
            }
        }
    }

    let frobenius = a.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
    let tol = T::from_count(n.max(1))
        * T::lit(1e-12).max(T::epsilon() * T::lit(4.0) * frobenius);
    let two = T::lit(2.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < tol {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (two * apq);
                let sign = if theta < T::zero() { -T::one() } else { T::one() };
                let t = sign / (theta.abs() + theta.hypot(T::one()));
                let c = T::one() / t.hypot(T::one());
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
    }
    let off_norm = off_diagonal_norm(&a, n);
    if off_norm < tol {
        return Ok((0..n).map(|i| a[i * n + i]).collect());
    }
    Err(SpectralError::ConvergenceFailure { sweeps: MAX_SWEEPS, off_norm: off_norm.to_f64_lossy() })
}

fn off_diagonal_norm<T: Scalar>(a: &[T], n: usize) -> T {
    let mut sum = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            sum = sum + a[i * n + j] * a[i * n + j];
        }
    }
    (sum + sum).sqrt()
}

/// # Panics
/// If `zero_tol` is not positive.
pub fn spectral_stats<T: Scalar>(spec: &Spectrum<T>, zero_tol: T) -> SpectralStats<T> {
    assert!(zero_tol > T::zero(), "zero tolerance must be positive");
    let values = spec.values();
    let lambda1 = values.first().copied().unwrap_or_else(T::zero);
    let nonzero: Vec<T> = values.iter().map(|v| v.abs()).filter(|&v| v > zero_tol).collect();
    let t_nz = nonzero.iter().copied().reduce(T::min);
    let rank = nonzero.len();
    let is_singular = rank < values.len();
    // numerical zeros are reported as exact zeros
    let t = if is_singular { T::zero() } else { t_nz.unwrap_or_else(T::zero) };
    let det = values.iter().fold(T::one(), |acc, &v| acc * v);
    SpectralStats { lambda1, t, t_nz, rank, det, is_singular, zero_tol }
}
