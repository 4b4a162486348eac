//! List decoding of generalised Reed–Solomon codes with the Guruswami–Sudan
//! algorithm, where the interpolation module basis is refined one parameter step at a
//! time and decoding is attempted whenever the radius grows.
//!
//! The pipeline: [`InterpolationContext`] derives `G` and `R` from the received word,
//! [`InterpolationState`] holds a weak Popov basis for parameters `(s, ell)` and steps
//! it with [`InterpolationState::microstep1`] / [`InterpolationState::microstep2`],
//! [`y_roots`] extracts candidate messages and [`multi_trial_decode`] drives it all
//! from a [`Schedule`]. The [`oracles`] module holds slow independent checks.

pub mod codec;
pub mod decoder;
pub mod error;
pub mod field;
pub mod gsmodule;
pub mod oracles;
pub mod poly;
pub mod polymat;
pub mod profile;
pub mod rootfind;

pub use codec::{hamming_distance, inject_errors, CodeSpec, GrsCode};
pub use decoder::{
    make_schedule, multi_trial_decode, refine, DecodeResult, Schedule, Status, StopPoint, Token, TraceEntry,
};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use gsmodule::{
    compute_e, decoding_radius, BivarPoly, InterpolationContext, InterpolationState, ParamTriple, ReductionReport,
};
pub use oracles::{brute_force_nearest, brute_force_roots, oracle_min_interpolation, OracleBudget};
pub use poly::{Degree, Poly};
pub use polymat::{reduce_to_weak_popov, PolyMatrix, SimpleTransform, TransformLog, WeightVector};
pub use rootfind::{filter_candidates, y_roots, RootCandidate};
