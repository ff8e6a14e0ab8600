//! Krein–Stieltjes and Krein–Langer strings: construction from moments,
//! solution propagation, truncated Weyl functions, trace identities,
//! determinacy diagnostics and moment recovery.

mod construct;
mod diagnostics;
mod model;
mod propagate;
mod weyl;

pub use construct::{
    kl_from_ledger, kl_from_moments, kl_from_moments_max, kl_from_pade, kl_index_map,
    stieltjes_from_moments, stieltjes_from_moments_max,
};
pub use diagnostics::{
    moments_from_kl, singularity_diagnostic, trace_sums, RecoveredMoments, SingularityReport,
    TraceResiduals, Verdict,
};
pub use model::{Cell, KreinLangerString, StieltjesView, StringEnd};
pub use propagate::{
    point_count, propagate, propagate_in, propagate_polynomial, PointValues, PropagationRing,
    PropagationState,
};
pub use weyl::{m_truncated, m_truncated_exact, m_truncated_ratfun, string_weyl_ratfun};
