//! Subcategories of the module category: Fac, Ext-projectives and perpendicular
//! categories, approximations, τ-rigid, support τ-tilting and tilting
//! predicates, completions, enumerations and exhaustive checks.

mod approx;
mod complete;
mod context;
mod enumerate;
mod predicates;
mod subcat;
mod verify;

pub use approx::{ApproxSeq, ApproxWitness, RightApprox};
pub use complete::{CompletionMethod, CompletionReport};
pub use context::TauContext;
pub use enumerate::MAX_BRUTE_FORCE_MEMBERS;
pub use predicates::{PredicateSummary, SupportReport, TiltingReport};
pub use subcat::Subcat;
pub use verify::{
    BijectionReport, BongartzSequence, Check, CheckReport, SequenceStatus, TiltingSequence, DEFAULT_SEARCH_BOUND,
};
