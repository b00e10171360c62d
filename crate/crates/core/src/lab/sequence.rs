//! Finite-horizon convergence of event sequences relative to a topology's
//! neighborhood schedule.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Event, TolerancePolicy};
use crate::lab::meets::Certificate;
use crate::scalar::Scalar;
use crate::topology::{schedule_sets, OpenSet, Schedule, TopologyKind};

/// `n` ranges over `1..=n_max`; "infinitely often" means a trailing block of
/// at least `tail_fraction` of the indices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Horizon {
    pub n_max: usize,
    pub tail_fraction: f64,
}

impl Default for Horizon {
    fn default() -> Self {
        Self {
            n_max: 256,
            tail_fraction: 0.9,
        }
    }
}

impl Horizon {
    pub fn new(n_max: usize, tail_fraction: f64) -> Result<Self> {
        if n_max < 16 || !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
            return Err(Error::Invalid(
                "horizon needs n_max >= 16 and tail fraction in (0, 1]".into(),
            ));
        }
        Ok(Self { n_max, tail_fraction })
    }

    /// Trailing block length needed out of `len` indices.
    pub fn required_tail(&self, len: usize) -> usize {
        ((self.tail_fraction * len as f64).ceil() as usize).clamp(1, len.max(1))
    }
}

pub type SequenceGen<S> = Arc<dyn Fn(usize) -> Event<S> + Send + Sync>;

/// Closed-form sequence `n -> x_n` with candidate limit.
#[derive(Clone)]
pub struct EventSequence<S> {
    pub name: String,
    pub limit: Event<S>,
    pub n_max: usize,
    generator: SequenceGen<S>,
}

impl<S: Scalar> fmt::Debug for EventSequence<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EventSequence")
            .field("name", &self.name)
            .field("limit", &self.limit)
            .field("n_max", &self.n_max)
            .finish()
    }
}

impl<S: Scalar> EventSequence<S> {
    pub fn new(name: &str, limit: Event<S>, n_max: usize, generator: SequenceGen<S>) -> Result<Self> {
        if n_max < 16 {
            return Err(Error::Invalid("sequences need n_max >= 16".into()));
        }
        Ok(Self {
            name: name.to_string(),
            limit,
            n_max,
            generator,
        })
    }

    /// `x_n = limit + direction / n`.
    pub fn approach(name: &str, limit: Event<S>, direction: Vec<S>, n_max: usize) -> Result<Self> {
        if direction.len() != limit.coords().len() {
            return Err(Error::BadDimension(direction.len()));
        }
        let base = limit.clone();
        Self::new(
            name,
            limit,
            n_max,
            Arc::new(move |n| base.offset(S::one() / S::of(n as f64), &direction)),
        )
    }

    pub fn at(&self, n: usize) -> Event<S> {
        (self.generator)(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    ConvergesRelativeToSchedule,
    Refuted,
}

impl Outcome {
    pub fn accepted(self) -> bool {
        self == Outcome::ConvergesRelativeToSchedule
    }

    pub fn short(self) -> &'static str {
        match self {
            Outcome::ConvergesRelativeToSchedule => "accepted",
            Outcome::Refuted => "refuted",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::ConvergesRelativeToSchedule => "ConvergesRelativeToSchedule",
            Outcome::Refuted => "Refuted",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<S> {
    /// The sequence is outside `set` at index `last_outside` (the horizon end).
    Exit { set: OpenSet<S>, last_outside: usize },
    /// `set` around `point` of the limit curve misses the members listed in
    /// `failing`; each listed certificate proves one miss.
    Curve {
        point: Event<S>,
        set: OpenSet<S>,
        failing: Vec<usize>,
        certificates: Vec<(usize, Certificate<S>)>,
    },
}

impl<S: Scalar> fmt::Display for Witness<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Exit { set, last_outside } => write!(f, "{set} excludes x_{last_outside}"),
            Witness::Curve {
                point,
                set,
                failing,
                certificates,
            } => {
                write!(f, "p={point} {set} misses {} members", failing.len())?;
                if let Some((n, c)) = certificates.first() {
                    write!(f, "; n={n}: {c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Refutations carry a witness; acceptance is relative to `schedule` and
/// the horizon.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<S> {
    pub outcome: Outcome,
    pub witness: Option<Witness<S>>,
    pub horizon: Horizon,
    pub schedule: Schedule<S>,
    /// First index of the trailing block, per schedule set (accepted runs).
    pub thresholds: Vec<usize>,
}

impl<S: Scalar> Verdict<S> {
    pub fn accepted(&self) -> bool {
        self.outcome.accepted()
    }

    /// A refutation whose witness still excludes the last index of the
    /// horizon. Refutations that only fail the tail-fraction threshold
    /// (early misses, later hits) are not conclusive.
    pub fn conclusive(&self) -> bool {
        match &self.witness {
            Some(Witness::Exit { last_outside, .. }) => *last_outside == self.horizon.n_max,
            Some(Witness::Curve { failing, .. }) => failing.last() == Some(&self.horizon.n_max),
            None => false,
        }
    }
}

/// For each schedule set `B` at the limit, the least `N` with `x_n ∈ B` for
/// all `n ∈ [N, n_max]`; refuted with `B` if `x_{n_max} ∉ B`.
pub fn converges<S: Scalar>(
    seq: &EventSequence<S>,
    kind: TopologyKind,
    schedule: &Schedule<S>,
    tol: &TolerancePolicy<S>,
) -> Result<Verdict<S>> {
    let sets = schedule_sets(kind, &seq.limit, schedule, tol)?;
    let points: Vec<Event<S>> = (1..=seq.n_max).map(|n| seq.at(n)).collect();
    let horizon = Horizon {
        n_max: seq.n_max,
        ..Horizon::default()
    };
    let mut thresholds = Vec::with_capacity(sets.len());
    for set in sets {
        let mut last_out = 0;
        for (i, q) in points.iter().enumerate() {
            if !set.contains(q, tol)? {
                last_out = i + 1;
            }
        }
        if last_out == seq.n_max {
            return Ok(Verdict {
                outcome: Outcome::Refuted,
                witness: Some(Witness::Exit {
                    set,
                    last_outside: last_out,
                }),
                horizon,
                schedule: schedule.clone(),
                thresholds,
            });
        }
        thresholds.push(last_out + 1);
    }
    Ok(Verdict {
        outcome: Outcome::ConvergesRelativeToSchedule,
        witness: None,
        horizon,
        schedule: schedule.clone(),
        thresholds,
    })
}

/// The three direction rows used to tell the topologies apart: approach
/// along a null, a timelike and a spacelike direction.
pub fn discriminator_sequences<S: Scalar>(spatial_dim: usize, n_max: usize) -> Result<Vec<EventSequence<S>>> {
    let origin = Event::origin(spatial_dim)?;
    let unit = |idx: &[usize]| {
        let mut v = vec![S::zero(); spatial_dim + 1];
        for &i in idx {
            v[i] = S::one();
        }
        v
    };
    Ok(vec![
        EventSequence::approach("null", origin.clone(), unit(&[0, 1]), n_max)?,
        EventSequence::approach("timelike", origin.clone(), unit(&[0]), n_max)?,
        EventSequence::approach("spacelike", origin, unit(&[1]), n_max)?,
    ])
}

/// Accept/refute pattern for [`discriminator_sequences`], derived from
/// which cone pieces each basic set keeps near its apex.
pub fn expected_discriminator(row: &str, kind: TopologyKind) -> Option<bool> {
    use TopologyKind::*;
    let accepted = match row {
        "null" => matches!(
            kind,
            Manifold | Alexandrov | ZTDash | ZSDash | IntSpacelikeDash | IntCausalDash
        ),
        "timelike" => matches!(
            kind,
            Manifold | Alexandrov | Z | ZT | ZTDash | IntHorismos | IntSpacelike | IntSpacelikeDash
        ),
        "spacelike" => matches!(
            kind,
            Manifold | Alexandrov | Z | ZS | ZSDash | IntHorismos | IntCausal | IntCausalDash
        ),
        _ => return None,
    };
    Some(accepted)
}
