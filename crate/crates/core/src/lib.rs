//! Quantum counter erasure: the mathematics of two-term decompositions of
//! rank-2 mixed states and their preparation at a distance.
//!
//! A rank-2 mixture ρ = r∣1⟩⟨1∣ + (1−r)∣2⟩⟨2∣ decomposes into two pure
//! states in exactly one way once one member is chosen from its range; the
//! second member is the *counter state*. Every such decomposition is in
//! bijection with a yes-no measurement on the opposite half of a purifying
//! 2⊗2 entangled state, which prepares the pair at a distance: one branch
//! revives a chosen state (erasure), the other its counter state (counter
//! erasure). With a screen attached, the two branches produce interference
//! and counter-interference patterns that cancel to the incoherent mixture.
//!
//! Modules:
//! - [`states`]: small complex linear algebra — vectors, operators, tensor
//!   products, partial traces, phase-insensitive comparison.
//! - [`decomposition`]: the (p, θ)-parametrized decomposition, its weight,
//!   the counter state, and the uniqueness machinery.
//! - [`distant`]: Schmidt purification, (q, λ)-measurements, the maps in
//!   both directions, selective and nonselective collapse, the
//!   distant-measurement criterion.
//! - [`interference`]: discretized two-slit waves and pattern densities.
//! - [`ensemble`]: a deterministic Monte Carlo realization with per-photon
//!   random sub-streams.
//! - [`verify`]: the invariant grids and randomized self-checks.
//!
//! # Example
//!
//! ```
//! use qce_core::{luders_select, measurement_for_decomposition, purify};
//! use qce_core::{Branch, MinimalMixture, RangeState};
//!
//! let rho = MinimalMixture::new(0.3)?;
//! let range = RangeState::new(0.6, std::f64::consts::FRAC_PI_4)?;
//! let decomposition = rho.decompose(&range)?;
//!
//! // the one measurement on the opposite subsystem that prepares it
//! let m = measurement_for_decomposition(&rho, &range);
//! let omega = purify(&rho);
//! let outcome = luders_select(&omega, &m, Branch::Mu1)?;
//! assert!((outcome.probability - decomposition.weight).abs() < 1e-12);
//! # Ok::<(), qce_core::Error>(())
//! ```

pub mod decomposition;
pub mod distant;
pub mod ensemble;
pub mod error;
pub mod interference;
pub mod json;
pub mod states;
pub mod verify;

pub use error::{Error, Result};

pub use decomposition::{MinimalMixture, PairDecomposition, RangeState};
pub use distant::{
    decomposition_for_measurement, is_distant_measurement, luders_select,
    measurement_for_decomposition, nonselective_measure, purify, Branch, MeasurementOutcome,
    SchmidtState, YesNoMeasurement,
};
pub use ensemble::{chi_squared, chi_squared_against, run, SimConfig, SimReport};
pub use interference::{
    gaussian_two_slit, patterns, superpose, PatternSet, SampledWave, ScreenGrid, Sign, SlitWavePair,
};
pub use states::{
    partial_trace_opposite, partial_trace_subsystem, states_equal_up_to_phase, tensor,
    CompositeVector, Operator, StateVector, IDENTITY_TOL, NORM_TOL,
};
