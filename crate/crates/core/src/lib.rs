//! Causal relations of flat spacetime and the cone-based topologies built
//! from them, as membership predicates that can be sampled and checked.
//!
//! Everything numeric is generic over [`Scalar`]; the `*64` aliases below
//! are what the command-line tool uses.

// `!(a < b)` is deliberate: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod kernel;
pub mod lab;
pub mod order;
pub mod sampling;
pub mod scalar;
pub mod topology;
pub mod transform;

pub use error::{Error, Result};
pub use geometry::{
    causal, chronological, classify, classify_displacement, euclidean_norm_sq, horismos, minkowski_dot, quadratic_form,
    CausalClass, Displacement, Event, TolerancePolicy,
};
pub use kernel::{
    generate_from_subbase, intersection_topology, random_base, verify_lemma1, FiniteSpace, IntersectionOutcome,
    Lemma1Report, Mask, SetFamily,
};
pub use order::{
    in_region, minimal_interval_nbhd, minimal_via_subbases, related, ConeKind, ConeRegion, HorismosConvention,
    MinimalNbhd, Partition, RelationKind, Side,
};
pub use sampling::Sampler;
pub use scalar::Scalar;
pub use topology::{
    alexandrov_nbhd, local_schedule, member, schedule_sets, trace_on_line, BasicNbhd, OpenSet, Schedule, SubbasicSet,
    TopologyKind, TraceInterval,
};
pub use transform::{apply_transform, GTransform, Lorentz};

pub type Event64 = Event<f64>;
pub type Event32 = Event<f32>;
pub type Tolerance64 = TolerancePolicy<f64>;
pub type BasicNbhd64 = BasicNbhd<f64>;
pub type Schedule64 = Schedule<f64>;
pub type GTransform64 = GTransform<f64>;
pub type Partition64 = Partition<f64>;
pub type CurveFamily64 = lab::CurveFamily<f64>;
pub type Verdict64 = lab::Verdict<f64>;
