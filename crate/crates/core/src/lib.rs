//! Entanglement of two-qubit X-states shared between an inertial observer
//! and a uniformly accelerated one, under correlated (memory) noise.
//!
//! The pipeline is: build an X-state ([`xstate`]), map the accelerated
//! qubit to Rindler region I ([`unruh`]), send both qubits through a
//! correlated channel ([`channels`]) and measure what is left
//! ([`concurrence`]). [`sweep`] drives parameter scans and writes CSV/SVG;
//! [`validation`] bundles the numerical acceptance checks.
//!
//! Everything is at most 8x8, so linear algebra is done by hand in [`qmat`].

pub mod channels;
pub mod concurrence;
pub mod error;
pub mod qmat;
pub mod sweep;
pub mod unruh;
pub mod validation;
pub mod xstate;

pub use channels::{apply_channel, Application, ChannelKind, ChannelSpec, KrausSet};
pub use concurrence::{closed_form_concurrence, wootters_concurrence, xstate_concurrence, ConcurrenceResult, Method};
pub use error::{Error, Result};
pub use qmat::{ComplexMatrix, DensityMatrix, Strictness, C64};
pub use sweep::{figure_preset, run_sweep, FigureName, Grid, SweepAxis, SweepRow, SweepSpec};
pub use unruh::{acceleration_to_r, unruh_oracle, unruh_transform, AccelerationParam, PhysicalAcceleration};
pub use xstate::{build_x_state, StatePreset, XStateCoeffs};
