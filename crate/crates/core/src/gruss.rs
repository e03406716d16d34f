//! Discrete Grüss-type inequalities on `R^n` with the normalized inner
//! product `<x, y> = (1/n) sum x_i y_i`, and the energy chain built on them.
//!
//! For vectors with entrywise bounds `phi <= x_i <= Phi`, `gamma <= y_i <= Gamma`
//! the Chebyshev functional `T(x, y) = <x, y> - A(x) A(y)` satisfies
//!
//! ```text
//! |T(x, y)| <= sqrt((Phi - A(x))(A(x) - phi)(Gamma - A(y))(A(y) - gamma))
//!           <= (Phi - phi)(Gamma - gamma) / 4
//! ```
//!
//! [`energy_chain`] applies the first inequality to `x_i = |lambda_i|` and
//! `y_i = E - |lambda_i|`, whose inner product is `P = sum_{i != j} |lambda_i||lambda_j|`.

use thiserror::Error;

use crate::scalar::Scalar;
use crate::spectral::{SpectralStats, Spectrum};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrussError {
    #[error("vector is empty")]
    EmptyVector,
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds { lower: f64, upper: f64 },
    #[error("entry {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds { index: usize, value: f64, lower: f64, upper: f64 },
    #[error("factor {0:e} under the square root is negative; vector bounds are violated")]
    NegativeFactor(f64),
    #[error("energy chain needs at least one edge")]
    EmptyGraph,
    #[error("rank-restricted chain needs a non-zero eigenvalue")]
    ZeroRank,
    #[error("P = {p} fell below its lower estimate {p_lower}")]
    ChainViolated { p: f64, p_lower: f64 },
}

/// A real vector with known entrywise bounds and its arithmetic mean.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedVector<T> {
    entries: Vec<T>,
    lower: T,
    upper: T,
    mean: T,
}

impl<T: Scalar> BoundedVector<T> {
    /// Entries may overshoot the bounds by rounding slack (1e-12 in `f64`).
    pub fn new(entries: Vec<T>, lower: T, upper: T) -> Result<Self, GrussError> {
        if entries.is_empty() {
            return Err(GrussError::EmptyVector);
        }
        let slack = T::rounding_slack(upper.abs().max(lower.abs()));
        if lower > upper + slack {
            return Err(GrussError::InvertedBounds {
                lower: lower.to_f64_lossy(),
                upper: upper.to_f64_lossy(),
            });
        }
        for (index, &value) in entries.iter().enumerate() {
            if value < lower - slack || value > upper + slack {
                return Err(GrussError::OutOfBounds {
                    index,
                    value: value.to_f64_lossy(),
                    lower: lower.to_f64_lossy(),
                    upper: upper.to_f64_lossy(),
                });
            }
        }
        let sum = entries.iter().fold(T::zero(), |acc, &v| acc + v);
        let mean = sum / T::from_count(entries.len());
        Ok(BoundedVector { entries, lower, upper, mean })
    }

    /// Bounds taken as the entrywise minimum and maximum.
    pub fn tight(entries: Vec<T>) -> Result<Self, GrussError> {
        let lower = entries.iter().copied().reduce(T::min).ok_or(GrussError::EmptyVector)?;
        let upper = entries.iter().copied().reduce(T::max).ok_or(GrussError::EmptyVector)?;
        BoundedVector::new(entries, lower, upper)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn lower(&self) -> T {
        self.lower
    }

    pub fn upper(&self) -> T {
        self.upper
    }

    /// `A(x) = (1/n) sum x_i`.
    pub fn mean(&self) -> T {
        self.mean
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `T(x, y) = (1/n) sum x_i y_i - A(x) A(y)`.
pub fn chebyshev_functional<T: Scalar>(
    x: &BoundedVector<T>,
    y: &BoundedVector<T>,
) -> Result<T, GrussError> {
    if x.len() != y.len() {
        return Err(GrussError::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(GrussError::EmptyVector);
    }
    let dot = x.entries.iter().zip(&y.entries).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
    Ok(dot / T::from_count(x.len()) - x.mean * y.mean)
}

/// Classical constant: `(Phi - phi)(Gamma - gamma) / 4`.
pub fn gruss_bound<T: Scalar>(x: &BoundedVector<T>, y: &BoundedVector<T>) -> T {
    (x.upper - x.lower) * (y.upper - y.lower) / T::lit(4.0)
}

/// Mean-sensitive bound `sqrt((Phi - A(x))(A(x) - phi)(Gamma - A(y))(A(y) - gamma))`.
///
/// Factors that undershoot zero by at most the rounding slack are clamped
/// to zero; anything more negative means the bounds do not hold.
pub fn dragomir_bound<T: Scalar>(x: &BoundedVector<T>, y: &BoundedVector<T>) -> Result<T, GrussError> {
    let factors = [x.upper - x.mean, x.mean - x.lower, y.upper - y.mean, y.mean - y.lower];
    let scale = [x.upper, x.lower, y.upper, y.lower].iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let slack = T::rounding_slack(scale);
    let mut product = T::one();
    for f in factors {
        if f < -slack {
            return Err(GrussError::NegativeFactor(f.to_f64_lossy()));
        }
        product = product * f.max(T::zero());
    }
    Ok(product.sqrt())
}

/// Every quantity in the Grüss-based energy estimate for one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyChain<T> {
    /// `sum_{i != j} |lambda_i| |lambda_j|`, summed directly.
    pub p: T,
    /// Length of the `x`/`y` vectors: `n`, or the rank when restricted.
    pub len: usize,
    /// `A(x)`, which is `E / len`.
    pub mean_x: T,
    /// `A(y)`, which is `(len - 1) E / len`.
    pub mean_y: T,
    /// Chebyshev functional `T(x, y) = P / len - A(x) A(y)`.
    pub functional: T,
    /// Mean-sensitive Grüss bound evaluated on `x` and `y`.
    pub gruss_rhs: T,
    /// Its closed form `(lambda_1 - E/len)(E/len - t)`.
    pub gruss_rhs_closed: T,
    /// `len * (A(x) A(y) - gruss_rhs)`, the estimate read off the inequality.
    pub p_lower_from_gruss: T,
    /// `E^2 + len lambda_1 t - (lambda_1 + t) E`.
    pub p_lower: T,
}

/// Builds `x_i = |lambda_i|` on `[t, lambda_1]` and `y_i = E - |lambda_i|` on
/// `[E - lambda_1, E - t]`, evaluates the Grüss estimate and checks
/// `P >= p_lower`. With `restrict_to_nonzero`, zero eigenvalues are dropped
/// and `t`, `n` become `t_nz` and the rank.
pub fn energy_chain<T: Scalar>(
    spec: &Spectrum<T>,
    stats: &SpectralStats<T>,
    restrict_to_nonzero: bool,
) -> Result<EnergyChain<T>, GrussError> {
    if stats.lambda1 <= stats.zero_tol {
        return Err(GrussError::EmptyGraph);
    }
    let energy = spec.energy();
    let lambda1 = stats.lambda1;
    let (moduli, t): (Vec<T>, T) = if restrict_to_nonzero {
        let t_nz = stats.t_nz.ok_or(GrussError::ZeroRank)?;
        (spec.values().iter().map(|v| v.abs()).filter(|&v| v > stats.zero_tol).collect(), t_nz)
    } else {
        (spec.values().iter().map(|v| v.abs()).collect(), stats.t)
    };
    if moduli.is_empty() {
        return Err(GrussError::ZeroRank);
    }
    let len = moduli.len();
    let len_t = T::from_count(len);

    let mut p = T::zero();
    for (i, &a) in moduli.iter().enumerate() {
        for (j, &b) in moduli.iter().enumerate() {
            if i != j {
                p = p + a * b;
            }
        }
    }

    let y_entries: Vec<T> = moduli.iter().map(|&v| energy - v).collect();
    let x = BoundedVector::new(moduli, t, lambda1)?;
    let y = BoundedVector::new(y_entries, energy - lambda1, energy - t)?;

    let functional = chebyshev_functional(&x, &y)?;
    let gruss_rhs = dragomir_bound(&x, &y)?;
    let e_over = energy / len_t;
    let gruss_rhs_closed = (lambda1 - e_over) * (e_over - t);
    let p_lower_from_gruss = len_t * (x.mean() * y.mean() - gruss_rhs);
    let p_lower = energy * energy + len_t * lambda1 * t - (lambda1 + t) * energy;

    let slack = T::lit(1e-9).max(T::epsilon() * T::lit(1024.0) * energy * energy);
    if p < p_lower - slack {
        return Err(GrussError::ChainViolated { p: p.to_f64_lossy(), p_lower: p_lower.to_f64_lossy() });
    }
    Ok(EnergyChain {
        p,
        len,
        mean_x: x.mean(),
        mean_y: y.mean(),
        functional,
        gruss_rhs,
        gruss_rhs_closed,
        p_lower_from_gruss,
        p_lower,
    })
}
