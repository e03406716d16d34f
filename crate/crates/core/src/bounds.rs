//! Energy bounds, irregularity measures and the per-graph comparison report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::determinant_exact;
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::scalar::Scalar;
use crate::spectral::{eigenvalues, spectral_stats, SpectralError, SpectralStats, Spectrum};

/// Absolute tolerance for the report's soundness flag.
pub const REPORT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bound is undefined for a graph without edges")]
    EmptyGraph,
}

/// `sqrt(2m + n(n-1)|det A|^(2/n))`, with `0^(2/n) = 0`.
pub fn mcclelland_lower<T: Scalar>(n: usize, m: usize, det_abs: T) -> T {
    let nt = T::from_count(n);
    let det_term = if det_abs > T::zero() {
        (T::lit(2.0) / nt * det_abs.ln()).exp()
    } else {
        T::zero()
    };
    (T::from_count(2 * m) + nt * T::from_count(n.saturating_sub(1)) * det_term).sqrt()
}

/// `sqrt(2mn)`.
pub fn mcclelland_upper<T: Scalar>(n: usize, m: usize) -> T {
    T::from_count(2 * m * n).sqrt()
}

/// `2 sqrt(m)`.
pub fn caporossi_lower<T: Scalar>(m: usize) -> T {
    T::lit(2.0) * T::from_count(m).sqrt()
}

fn require_edges<T: Scalar>(m: usize, lambda1: T) -> Result<(), BoundsError> {
    if m == 0 || lambda1 <= T::zero() {
        Err(BoundsError::EmptyGraph)
    } else {
        Ok(())
    }
}

/// `(2m + n lambda_1 t) / (lambda_1 + t)`.
pub fn main_lower<T: Scalar>(n: usize, m: usize, lambda1: T, t: T) -> Result<T, BoundsError> {
    require_edges(m, lambda1)?;
    Ok((T::from_count(2 * m) + T::from_count(n) * lambda1 * t) / (lambda1 + t))
}

/// `2m / lambda_1`.
pub fn cor_nice_lower<T: Scalar>(m: usize, lambda1: T) -> Result<T, BoundsError> {
    require_edges(m, lambda1)?;
    Ok(T::from_count(2 * m) / lambda1)
}

/// `sqrt(2mn) * sqrt(4 lambda_1 t / (lambda_1 + t)^2)`; zero for singular graphs.
pub fn amgm_lower<T: Scalar>(n: usize, m: usize, lambda1: T, t: T) -> Result<T, BoundsError> {
    require_edges(m, lambda1)?;
    let s = lambda1 + t;
    Ok(mcclelland_upper::<T>(n, m) * (T::lit(4.0) * lambda1 * t / (s * s)).sqrt())
}

/// `(2m + r lambda_1 t_nz) / (lambda_1 + t_nz)` with `r` the rank.
pub fn rank_lower<T: Scalar>(m: usize, rank: usize, lambda1: T, t_nz: T) -> Result<T, BoundsError> {
    require_edges(m, lambda1)?;
    if rank == 0 || t_nz <= T::zero() {
        return Err(BoundsError::EmptyGraph);
    }
    Ok((T::from_count(2 * m) + T::from_count(rank) * lambda1 * t_nz) / (lambda1 + t_nz))
}

/// Degree-irregularity measures; both equal 1 exactly on regular graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Irregularity<T> {
    /// `n sum_{ij in E} sqrt(d_i d_j) / (2 m^2)`
    pub epsilon: T,
    /// `lambda_1 / d = lambda_1 n / (2m)`
    pub beta: T,
}

pub fn irregularity<T: Scalar>(g: &Graph, stats: &SpectralStats<T>) -> Result<Irregularity<T>, BoundsError> {
    let m = g.edge_count();
    if m == 0 {
        return Err(BoundsError::EmptyGraph);
    }
    let degrees = g.degree_sequence();
    let edge_sum = g
        .edges()
        .fold(T::zero(), |acc, (i, j)| acc + T::from_count(degrees[i] * degrees[j]).sqrt());
    let n = T::from_count(g.n());
    let m_t = T::from_count(m);
    Ok(Irregularity {
        epsilon: n * edge_sum / (T::lit(2.0) * m_t * m_t),
        beta: stats.lambda1 * n / (T::lit(2.0) * m_t),
    })
}

/// Conjectured lower bound `n / epsilon` (connected graphs).
pub fn conj1_lower<T: Scalar>(n: usize, epsilon: T) -> Result<T, BoundsError> {
    if epsilon <= T::zero() {
        return Err(BoundsError::EmptyGraph);
    }
    Ok(T::from_count(n) / epsilon)
}

/// Conjectured upper bound `2m / sqrt(lambda_1)` (connected graphs).
pub fn conj2_upper<T: Scalar>(m: usize, lambda1: T) -> Result<T, BoundsError> {
    require_edges(m, lambda1)?;
    Ok(T::from_count(2 * m) / lambda1.sqrt())
}

/// Names of every bound the report carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundName {
    McClellandLower,
    Caporossi,
    Main,
    CorNice,
    Amgm,
    RankBound,
    McClellandUpper,
    Conj1,
    Conj2,
}

impl BoundName {
    pub const ALL: [BoundName; 9] = [
        BoundName::McClellandLower,
        BoundName::Caporossi,
        BoundName::Main,
        BoundName::CorNice,
        BoundName::Amgm,
        BoundName::RankBound,
        BoundName::McClellandUpper,
        BoundName::Conj1,
        BoundName::Conj2,
    ];

    /// Bounds with proofs; soundness checks use only these.
    pub const PROVEN: [BoundName; 7] = [
        BoundName::McClellandLower,
        BoundName::Caporossi,
        BoundName::Main,
        BoundName::CorNice,
        BoundName::Amgm,
        BoundName::RankBound,
        BoundName::McClellandUpper,
    ];

    pub const CONJECTURAL: [BoundName; 2] = [BoundName::Conj1, BoundName::Conj2];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::McClellandLower => "mcclelland_lower",
            BoundName::Caporossi => "caporossi",
            BoundName::Main => "main",
            BoundName::CorNice => "cor_nice",
            BoundName::Amgm => "amgm",
            BoundName::RankBound => "rank_bound",
            BoundName::McClellandUpper => "mcclelland_upper",
            BoundName::Conj1 => "conj1",
            BoundName::Conj2 => "conj2",
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, BoundName::McClellandUpper | BoundName::Conj2)
    }

    pub fn is_conjectural(self) -> bool {
        matches!(self, BoundName::Conj1 | BoundName::Conj2)
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown bound `{0}`")]
pub struct UnknownBound(pub String);

impl FromStr for BoundName {
    type Err = UnknownBound;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundName::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| UnknownBound(s.to_string()))
    }
}

impl Serialize for BoundName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBounds<T> {
    pub mcclelland_lower: T,
    pub caporossi: T,
    pub main: Option<T>,
    pub cor_nice: Option<T>,
    pub amgm: Option<T>,
    pub rank_bound: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjecturalBounds<T> {
    pub conj1: T,
    pub conj2: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphFlags {
    pub is_connected: bool,
    pub is_regular: bool,
    pub is_triangle_free: bool,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// All bounds for one graph, compared against its energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    /// Absent for `n > 62`.
    pub graph6: Option<String>,
    pub n: usize,
    pub m: usize,
    pub energy: T,
    pub spectrum: Vec<T>,
    pub lambda1: T,
    pub t: T,
    pub t_nz: Option<T>,
    pub rank: usize,
    #[serde(serialize_with = "display_string")]
    pub det: BigInt,
    pub lower: LowerBounds<T>,
    pub mcclelland_upper: T,
    /// Present only for connected graphs with at least one edge.
    pub conjectural: Option<ConjecturalBounds<T>>,
    pub irregularity: Option<Irregularity<T>>,
    pub flags: GraphFlags,
    /// `E - bound` for lower bounds, `bound - E` for upper bounds.
    pub slack: BTreeMap<BoundName, T>,
    /// Every proven bound holds within [`REPORT_TOL`].
    pub sound: bool,
}

fn display_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl<T: Scalar> BoundReport<T> {
    pub fn value(&self, name: BoundName) -> Option<T> {
        match name {
            BoundName::McClellandLower => Some(self.lower.mcclelland_lower),
            BoundName::Caporossi => Some(self.lower.caporossi),
            BoundName::Main => self.lower.main,
            BoundName::CorNice => self.lower.cor_nice,
            BoundName::Amgm => self.lower.amgm,
            BoundName::RankBound => self.lower.rank_bound,
            BoundName::McClellandUpper => Some(self.mcclelland_upper),
            BoundName::Conj1 => self.conjectural.as_ref().map(|c| c.conj1),
            BoundName::Conj2 => self.conjectural.as_ref().map(|c| c.conj2),
        }
    }

    pub fn slack_of(&self, name: BoundName) -> Option<T> {
        self.slack.get(&name).copied()
    }
}

/// Runs the spectral pipeline once and evaluates every bound.
pub fn bound_report<T: Scalar>(g: &Graph, zero_tol: T) -> Result<BoundReport<T>, ReportError> {
    let spec: Spectrum<T> = eigenvalues(g)?;
    let stats = spectral_stats(&spec, zero_tol);
    Ok(report_from_parts(g, &spec, &stats))
}

pub(crate) fn report_from_parts<T: Scalar>(
    g: &Graph,
    spec: &Spectrum<T>,
    stats: &SpectralStats<T>,
) -> BoundReport<T> {
    let n = g.n();
    let m = g.edge_count();
    let energy = spec.energy();
    let det = determinant_exact(g);
    let det_abs = T::lit(det.to_f64().unwrap_or(f64::INFINITY).abs());
    let (lambda1, t) = (stats.lambda1, stats.t);

    let lower = LowerBounds {
        mcclelland_lower: mcclelland_lower(n, m, det_abs),
        caporossi: caporossi_lower(m),
        main: main_lower(n, m, lambda1, t).ok(),
        cor_nice: cor_nice_lower(m, lambda1).ok(),
        amgm: amgm_lower(n, m, lambda1, t).ok(),
        rank_bound: stats.t_nz.and_then(|tnz| rank_lower(m, stats.rank, lambda1, tnz).ok()),
    };
    let flags = GraphFlags {
        is_connected: g.is_connected(),
        is_regular: g.is_regular(),
        is_triangle_free: g.is_triangle_free(),
    };
    let irregularity = irregularity(g, stats).ok();
    let conjectural = match (flags.is_connected, irregularity) {
        (true, Some(irr)) => conj1_lower(n, irr.epsilon)
            .and_then(|conj1| Ok(ConjecturalBounds { conj1, conj2: conj2_upper(m, lambda1)? }))
            .ok(),
        _ => None,
    };

    let mut report = BoundReport {
        graph6: write_graph6(g).ok(),
        n,
        m,
        energy,
        spectrum: spec.values().to_vec(),
        lambda1,
        t,
        t_nz: stats.t_nz,
        rank: stats.rank,
        det,
        lower,
        mcclelland_upper: mcclelland_upper(n, m),
        conjectural,
        irregularity,
        flags,
        slack: BTreeMap::new(),
        sound: true,
    };
    for name in BoundName::ALL {
        if let Some(v) = report.value(name) {
            let slack = if name.is_upper() { v - energy } else { energy - v };
            report.slack.insert(name, slack);
        }
    }
    let tol = T::lit(REPORT_TOL);
    report.sound = BoundName::PROVEN
        .iter()
        .all(|&b| report.slack_of(b).is_none_or(|s| s >= -tol));
    report
}
