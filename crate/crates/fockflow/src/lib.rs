//! Few-photon linear optics on a sparse Fock-state representation: states
//! |n₀, n₁, …⟩ propagated exactly through networks of beam splitters and
//! phase shifters, with presets for a plain Mach-Zehnder interferometer and
//! a braced variant whose leaking mirrors feed a second, outer recombiner.
//!
//! The numeric type is generic over [`Float`] (`f64` or `f32`); the `*64`
//! aliases at the crate root are the ones to reach for.
//!
//! ```
//! use fockflow::{BeamSplitterSpec64, ModeUnitary64, StateVector64};
//! use num_complex::Complex64;
//!
//! // Two photons meeting at a balanced splitter always leave together.
//! let splitter = ModeUnitary64::beam_splitter(&BeamSplitterSpec64::balanced());
//! let pair = StateVector64::from_entries(2, [(vec![1, 1], Complex64::new(1.0, 0.0))])?;
//! let out = splitter.apply(&pair)?;
//!
//! let together = StateVector64::from_entries(
//!     2,
//!     [
//!         (vec![2, 0], Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2)),
//!         (vec![0, 2], Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2)),
//!     ],
//! )?;
//! assert!((out.inner_product(&together)?.norm() - 1.0).abs() < 1e-12);
//! # Ok::<(), fockflow::Error>(())
//! ```

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod float;
pub mod fock;
pub mod network;
pub mod oracle;
pub mod verify;

pub use analysis::{
    duality, duality_audit, measured_visibility, sweep_p46, uniform_phase_grid,
    unit_interval_grid, DualityAudit, DualityMetrics, SweepGrid,
};
pub use error::{Error, Result};
pub use experiments::{
    input_state, mzi_duality, sector_decompose, BracedMzi, Detector, InputKind,
    SectorDecomposition, WheelerMzi,
};
pub use float::Float;
pub use fock::{enumerate_basis, FockBasisState, ReducedDensityMatrix, StateVector};
pub use network::{BeamSplitterSpec, ExperimentParams, ModeUnitary};

pub type StateVector64 = fock::StateVector<f64>;
pub type StateVector32 = fock::StateVector<f32>;
pub type ReducedDensityMatrix64 = fock::ReducedDensityMatrix<f64>;
pub type ReducedDensityMatrix32 = fock::ReducedDensityMatrix<f32>;
pub type ModeUnitary64 = network::ModeUnitary<f64>;
pub type ModeUnitary32 = network::ModeUnitary<f32>;
pub type BeamSplitterSpec64 = network::BeamSplitterSpec<f64>;
pub type BeamSplitterSpec32 = network::BeamSplitterSpec<f32>;
pub type ExperimentParams64 = network::ExperimentParams<f64>;
pub type ExperimentParams32 = network::ExperimentParams<f32>;
pub type WheelerMzi64 = experiments::WheelerMzi<f64>;
pub type WheelerMzi32 = experiments::WheelerMzi<f32>;
pub type BracedMzi64 = experiments::BracedMzi<f64>;
pub type BracedMzi32 = experiments::BracedMzi<f32>;
