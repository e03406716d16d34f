//! Graph energy and its spectral lower and upper bounds.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`, which is what the tooling uses.
//!
//! ```
//! use geb::{bound_report, Graph};
//!
//! let report: geb::BoundReport64 = bound_report(&Graph::petersen(), 1e-8).unwrap();
//! assert!((report.energy - 16.0).abs() < 1e-9);
//! assert!((report.lower.main.unwrap() - 15.0).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod cli;
pub mod enumeration;
pub mod exact;
pub mod graph;
pub mod graph6;
pub mod gruss;
pub mod harness;
pub mod scalar;
pub mod spectral;

pub use bounds::{bound_report, BoundName, BoundReport};
pub use enumeration::{canonical_form, enumerate_all, enumerate_connected, CanonicalForm};
pub use exact::{determinant_exact, rank_exact};
pub use graph::{Graph, GraphError};
pub use graph6::{parse_graph6, stream_corpus, write_graph6};
pub use gruss::{chebyshev_functional, dragomir_bound, energy_chain, gruss_bound, BoundedVector, EnergyChain};
pub use scalar::Scalar;
pub use spectral::{eigenvalues, spectral_stats, SpectralStats, Spectrum, DEFAULT_ZERO_TOL};

pub type Spectrum64 = Spectrum<f64>;
pub type SpectralStats64 = SpectralStats<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type BoundedVector64 = BoundedVector<f64>;
pub type EnergyChain64 = EnergyChain<f64>;

pub type Spectrum32 = Spectrum<f32>;
pub type BoundReport32 = BoundReport<f32>;
