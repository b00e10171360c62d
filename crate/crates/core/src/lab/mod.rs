//! Convergence of sequences and of curve families relative to neighborhood
//! schedules.

pub mod curve;
pub mod limit;
pub mod meets;
pub mod poly;
pub mod sequence;

pub use curve::{Curve, CurveFamily, CurvePiece, FamilyKind, PolylineGen, BUILTIN_FAMILIES};
pub use limit::{
    lct_matrix, limit_curve_check, local_sets, witness_search, FoundWitness, LctParams, LctRow, LimitDefinition,
    LimitVerdict, SearchBudget, MAX_STRIDE,
};
pub use meets::{curve_meets_nbhd, Certificate, Meeting};
pub use poly::Poly;
pub use sequence::{
    converges, discriminator_sequences, expected_discriminator, EventSequence, Horizon, Outcome, Verdict, Witness,
};
