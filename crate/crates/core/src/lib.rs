//! Optimization-free quantum resource measures.
//!
//! For a resource theory whose free states are the image of an idempotent, unital
//! channel `E`, the Tsallis relative entropy distance to the free set has a closed form:
//!
//! ```text
//! min_{σ ∈ Fix(E)} S̃_a(ρ|σ) = (Tr E(ρ^a)^{1/a} - 1) / (a - 1)
//! ```
//!
//! with the relative entropy `S(E(ρ)) - S(ρ)` at `a = 1`. The crate provides
//!
//! - [`linalg`]: density matrices and spectral matrix functions,
//! - [`channels`]: Kraus/superoperator channels and the dephasing, Lüders, modified
//!   coarse-grained, twirling and complete-mixing resource-destroying maps,
//! - [`measures`]: the divergence, the closed form and its minimizer,
//! - [`oracle`]: an independent simplex search over the free states,
//! - [`verify`]: seeded property suites with JSON/CSV reports,
//! - [`io`]: the JSON file formats used by the `rmeasure` binary.

pub mod channels;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod verify;

pub use channels::{
    certify_rdm, cyclic_twirl, dephasing, dephasing_map, lueders_map, mixing_map, modified_coarse_map,
    twirling_map, LinearMap, MeasurementPartition, QuantumChannel, ResourceDestroyingMap,
};
pub use error::{Error, Result};
pub use linalg::{random_density_matrix, validate_density, ComplexMatrix, DensityMatrix};
pub use measures::{closed_form_measure, tsallis_relative_entropy, MeasureReport, TsallisOrder};
pub use oracle::{minimize_over_free_states, OracleConfig, OracleResult};
