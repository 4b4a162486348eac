//! The Guruswami–Sudan interpolation module `M_{s,ell}`: permissibility arithmetic,
//! its explicit basis, and the two micro-step refinements between reduced bases.

mod bivar;
mod context;
mod params;
mod state;

pub use bivar::BivarPoly;
pub use context::InterpolationContext;
pub use params::{compute_e, decoding_radius, ParamTriple};
pub use state::{basis_det_degree, InterpolationState, ReductionReport, StateSummary};
