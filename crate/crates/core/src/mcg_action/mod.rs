//! Words in the centrally extended pure mapping class group of the
//! punctured torus, acting on `Perf(X_n)` through spherical twists:
//! `a ↦ T_O`, `b_i ↦ T_{κ(x_i)}`, `t ↦ [1]`.
//!
//! Relations are verified object-wise on finite batteries. A passing report
//! says every battery object satisfies the identity up to a certified
//! isomorphism; it is not a proof of a natural equivalence.

mod action;
mod word;

pub use action::{
    check_braid, check_g_relation, check_pipeline_laws, default_battery, evaluate_word, fixed_point_diagnostics,
    BatteryItem, FixedPointReport, Object, Outcome, RelationCheck, RelationReport,
};
pub use word::{Generator, Letter, McgWord};
