//! Type invariants: `Δ`, `Δ_q`, generic slice values, and the checks of
//! truncation stability, the sandwich inequalities and the local bound.

pub mod engine;
pub mod estimate;
pub mod lemmas;
pub mod model;
pub mod search;

pub use engine::{
    delta_one, delta_q_ideal, dq_via_slices, ideal_type, raw_dq_inner, sample_chart, sample_unitaries, twisted_delta_q,
    GenericValueReport, IdealInput, Params, SliceSample,
};
pub use estimate::{Status, TypeEstimate, UpperCertificate, Verdict, Witness};
pub use lemmas::{bound_check, bound_check_values, sandwich_check, truncation_stability, BoundCheck, SandwichReport};
pub use model::HypersurfaceModel;
pub use search::{search, SearchBudget, Target, Template};
