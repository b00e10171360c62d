//! Basic open sets of the twelve cone topologies, their countable local
//! schedules, the intersection combinator and traces on lines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{classify_displacement, euclidean_norm_sq, CausalClass, Event, TolerancePolicy};
use crate::order::{
    minimal_interval_nbhd, subbasic_complement_contains, ConeKind, ConeRegion, Partition, RelationKind, Side,
};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TopologyKind {
    Manifold,
    Alexandrov,
    Z,
    ZT,
    ZS,
    IntHorismos,
    IntSpacelike,
    IntCausal,
    ZTDash,
    ZSDash,
    IntSpacelikeDash,
    IntCausalDash,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 12] = [
        TopologyKind::Manifold,
        TopologyKind::Alexandrov,
        TopologyKind::Z,
        TopologyKind::ZT,
        TopologyKind::ZS,
        TopologyKind::IntHorismos,
        TopologyKind::IntSpacelike,
        TopologyKind::IntCausal,
        TopologyKind::ZTDash,
        TopologyKind::ZSDash,
        TopologyKind::IntSpacelikeDash,
        TopologyKind::IntCausalDash,
    ];

    /// The six kinds whose basic sets remove the light cone.
    pub const LIGHT_CONE_REMOVED: [TopologyKind; 6] = [
        TopologyKind::Z,
        TopologyKind::ZT,
        TopologyKind::ZS,
        TopologyKind::IntHorismos,
        TopologyKind::IntSpacelike,
        TopologyKind::IntCausal,
    ];

    /// The four kinds whose basic sets put the light cone back.
    pub const LIGHT_CONE_RESTORED: [TopologyKind; 4] = [
        TopologyKind::ZTDash,
        TopologyKind::ZSDash,
        TopologyKind::IntSpacelikeDash,
        TopologyKind::IntCausalDash,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Manifold => "manifold",
            TopologyKind::Alexandrov => "alexandrov",
            TopologyKind::Z => "z",
            TopologyKind::ZT => "zt",
            TopologyKind::ZS => "zs",
            TopologyKind::IntHorismos => "int-horismos",
            TopologyKind::IntSpacelike => "int-spacelike",
            TopologyKind::IntCausal => "int-causal",
            TopologyKind::ZTDash => "zt-dash",
            TopologyKind::ZSDash => "zs-dash",
            TopologyKind::IntSpacelikeDash => "int-spacelike-dash",
            TopologyKind::IntCausalDash => "int-causal-dash",
        }
    }

    /// Basic sets are intersected with a Euclidean ball (or diamond).
    pub fn is_bounded(self) -> bool {
        matches!(
            self,
            TopologyKind::Manifold
                | TopologyKind::Alexandrov
                | TopologyKind::Z
                | TopologyKind::ZT
                | TopologyKind::ZS
                | TopologyKind::ZTDash
                | TopologyKind::ZSDash
        )
    }

    pub fn is_dashed(self) -> bool {
        Self::LIGHT_CONE_RESTORED.contains(&self)
    }

    pub fn needs_partition(self) -> bool {
        matches!(self, TopologyKind::IntSpacelike | TopologyKind::IntSpacelikeDash)
    }

    pub fn dashed(self) -> Option<TopologyKind> {
        match self {
            TopologyKind::ZT => Some(TopologyKind::ZTDash),
            TopologyKind::ZS => Some(TopologyKind::ZSDash),
            TopologyKind::IntSpacelike => Some(TopologyKind::IntSpacelikeDash),
            TopologyKind::IntCausal => Some(TopologyKind::IntCausalDash),
            _ => None,
        }
    }

    pub fn undashed(self) -> Option<TopologyKind> {
        Self::ALL.into_iter().find(|k| k.dashed() == Some(self))
    }

    /// Relation whose interval topology this kind is, for the unbounded kinds.
    pub fn relation<S: Scalar>(self, partition: Option<&Partition<S>>) -> Option<RelationKind<S>> {
        let p = || partition.cloned();
        match self {
            TopologyKind::IntHorismos => Some(RelationKind::HorismosIrr),
            TopologyKind::IntCausal => Some(RelationKind::CausalIrr),
            TopologyKind::IntCausalDash => Some(RelationKind::Chrono),
            TopologyKind::IntSpacelike => p().map(RelationKind::SpacelikeLeq),
            TopologyKind::IntSpacelikeDash => p().map(RelationKind::SpacelikeLt),
            _ => None,
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['_', '\''], "-");
        Self::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown topology kind {s:?}")))
    }
}

/// A concrete basic open set.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicNbhd<S> {
    kind: TopologyKind,
    center: Event<S>,
    radius: Option<S>,
    partition: Option<Partition<S>>,
    tips: Option<(Event<S>, Event<S>)>,
}

impl<S: Scalar> BasicNbhd<S> {
    /// Ball-bounded kind at `center` with radius `eps`. For `Alexandrov` the
    /// tips are `center -/+ (eps/2) e_t`, which keeps the diamond inside the ball.
    pub fn bounded(kind: TopologyKind, center: Event<S>, eps: S) -> Result<Self> {
        if !kind.is_bounded() {
            return Err(Error::UnexpectedRadius(kind.name()));
        }
        if !(eps.is_finite() && eps > S::zero()) {
            return Err(Error::MissingRadius(kind.name()));
        }
        if kind == TopologyKind::Alexandrov {
            let mut dt = vec![S::zero(); center.coords().len()];
            dt[0] = eps / S::of(2.0);
            let a = center.offset(-S::one(), &dt);
            let b = center.translated(&dt);
            let mut n = alexandrov_nbhd(a, b, &TolerancePolicy::default())?;
            n.radius = Some(eps);
            return Ok(n);
        }
        Ok(Self {
            kind,
            center,
            radius: Some(eps),
            partition: None,
            tips: None,
        })
    }

    /// Unbounded interval kind at `center`; spacelike kinds get the partition
    /// along the first spatial axis unless one is supplied later.
    pub fn interval(kind: TopologyKind, center: Event<S>) -> Result<Self> {
        if kind.is_bounded() {
            return Err(Error::MissingRadius(kind.name()));
        }
        let partition = if kind.needs_partition() {
            Some(Partition::along(center.spatial_dim(), 0)?)
        } else {
            None
        };
        Ok(Self {
            kind,
            center,
            radius: None,
            partition,
            tips: None,
        })
    }

    /// Dispatches to [`Self::bounded`] or [`Self::interval`]; `eps` is ignored
    /// for unbounded kinds.
    pub fn at(kind: TopologyKind, center: Event<S>, eps: S) -> Result<Self> {
        if kind.is_bounded() {
            Self::bounded(kind, center, eps)
        } else {
            Self::interval(kind, center)
        }
    }

    /// Intersects an interval kind's minimal set with the ball of radius
    /// `eps`, giving the basic sets of its meet with the manifold topology.
    pub fn localized(mut self, eps: S) -> Result<Self> {
        if self.kind.is_bounded() {
            return Err(Error::UnexpectedRadius(self.kind.name()));
        }
        if !(eps.is_finite() && eps > S::zero()) {
            return Err(Error::MissingRadius(self.kind.name()));
        }
        self.radius = Some(eps);
        Ok(self)
    }

    pub fn with_partition(mut self, p: Partition<S>) -> Result<Self> {
        if !self.kind.needs_partition() {
            return Err(Error::UnexpectedPartition(self.kind.name()));
        }
        if p.axis().len() != self.center.spatial_dim() {
            return Err(Error::BadPartition);
        }
        self.partition = Some(p);
        Ok(self)
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn center(&self) -> &Event<S> {
        &self.center
    }

    pub fn radius(&self) -> Option<S> {
        self.radius
    }

    pub fn partition(&self) -> Option<&Partition<S>> {
        self.partition.as_ref()
    }

    pub fn tips(&self) -> Option<(&Event<S>, &Event<S>)> {
        self.tips.as_ref().map(|(a, b)| (a, b))
    }

    pub fn member(&self, q: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
        use TopologyKind::*;
        let v = self.center.displacement_to(q)?;
        if self.kind == Alexandrov {
            let (a, b) = self.tips.as_ref().expect("alexandrov has tips");
            let lo = classify_displacement(&a.displacement_to(q)?, tol);
            let hi = classify_displacement(&q.displacement_to(b)?, tol);
            return Ok(lo == CausalClass::ChronoFuture && hi == CausalClass::ChronoFuture);
        }
        if !self.kind.is_bounded() {
            let rel = self
                .kind
                .relation(self.partition.as_ref())
                .ok_or(Error::MissingPartition(self.kind.name()))?;
            let inside = minimal_interval_nbhd(&rel, &self.center)?.contains(q, tol)?;
            return Ok(match self.radius {
                Some(eps) => inside && euclidean_norm_sq(&v) < eps * eps,
                None => inside,
            });
        }
        let eps = self.radius.ok_or(Error::MissingRadius(self.kind.name()))?;
        let in_ball = euclidean_norm_sq(&v) < eps * eps;
        let class = classify_displacement(&v, tol);
        let apex = class == CausalClass::Equal;
        Ok(match self.kind {
            Manifold => in_ball,
            Z => in_ball && (apex || !class.is_null()),
            ZT => apex || (class.is_chrono() && in_ball),
            ZS => apex || (class == CausalClass::Spacelike && in_ball),
            ZTDash => apex || (class.is_causal() && in_ball),
            ZSDash => apex || ((class == CausalClass::Spacelike || class.is_null()) && in_ball),
            _ => unreachable!("handled above"),
        })
    }
}

impl<S: Scalar> fmt::Display for BasicNbhd<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[x={}", self.kind, self.center)?;
        if let Some((a, b)) = &self.tips {
            write!(f, ", a={a}, b={b}")?;
        } else if let Some(r) = self.radius {
            write!(f, ", eps={r}")?;
        }
        if let Some(p) = &self.partition {
            write!(f, ", e=")?;
            for (i, c) in p.axis().iter().enumerate() {
                write!(f, "{}{c}", if i == 0 { "(" } else { "," })?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

pub fn member<S: Scalar>(b: &BasicNbhd<S>, q: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
    b.member(q, tol)
}

/// Diamond `I+(a) ∩ I-(b)`.
pub fn alexandrov_nbhd<S: Scalar>(a: Event<S>, b: Event<S>, tol: &TolerancePolicy<S>) -> Result<BasicNbhd<S>> {
    let v = a.displacement_to(&b)?;
    if classify_displacement(&v, tol) != CausalClass::ChronoFuture {
        return Err(Error::NotChronological);
    }
    let center = a.offset(S::of(0.5), &v);
    Ok(BasicNbhd {
        kind: TopologyKind::Alexandrov,
        center,
        radius: None,
        partition: None,
        tips: Some((a, b)),
    })
}

/// Radius of a Euclidean ball around the diamond's center that lies inside
/// the diamond: the distance from the center to the nearer tip's null cone.
pub fn alexandrov_inner_radius<S: Scalar>(b: &BasicNbhd<S>) -> Option<S> {
    let (a, _) = b.tips()?;
    let w = a.displacement_to(b.center()).ok()?;
    let spatial = euclidean_norm_sq(&w[1..]).sqrt();
    Some((w[0] - spatial) / S::of(2.0).sqrt())
}

pub fn intersection_member<S: Scalar>(
    b1: &BasicNbhd<S>,
    b2: &BasicNbhd<S>,
    q: &Event<S>,
    tol: &TolerancePolicy<S>,
) -> Result<bool> {
    b1.center().check_same_dim(b2.center())?;
    Ok(b1.member(q, tol)? && b2.member(q, tol)?)
}

/// A subbasic open set `M \ upper(anchor)` or `M \ lower(anchor)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubbasicSet<S> {
    pub relation: RelationKind<S>,
    pub anchor: Event<S>,
    pub side: Side,
}

impl<S: Scalar> SubbasicSet<S> {
    pub fn contains(&self, q: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
        subbasic_complement_contains(&self.relation, &self.anchor, self.side, q, tol)
    }
}

/// Open sets reachable from basic and subbasic sets by finite intersection.
#[derive(Clone, Debug, PartialEq)]
pub enum OpenSet<S> {
    Basic(BasicNbhd<S>),
    Subbasic(SubbasicSet<S>),
    Meet(Vec<OpenSet<S>>),
}

impl<S: Scalar> OpenSet<S> {
    pub fn contains(&self, q: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
        match self {
            OpenSet::Basic(b) => b.member(q, tol),
            OpenSet::Subbasic(s) => s.contains(q, tol),
            OpenSet::Meet(parts) => {
                for p in parts {
                    if !p.contains(q, tol)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn as_basic(&self) -> Option<&BasicNbhd<S>> {
        match self {
            OpenSet::Basic(b) => Some(b),
            _ => None,
        }
    }
}

impl<S: Scalar> fmt::Display for OpenSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpenSet::Basic(b) => write!(f, "{b}"),
            OpenSet::Subbasic(s) => {
                let side = match s.side {
                    Side::Upper => "upper",
                    Side::Lower => "lower",
                };
                write!(f, "M\\{side}_{}({})", s.relation, s.anchor)
            }
            OpenSet::Meet(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ∩ ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Countable shrinking schedule: radii `eps0 * 2^-k` for `k < steps`, plus
/// optional subbasic witnesses anchored elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule<S> {
    eps0: S,
    steps: usize,
    pub extra: Vec<SubbasicSet<S>>,
}

impl<S: Scalar> Schedule<S> {
    pub fn new(eps0: S, steps: usize) -> Result<Self> {
        if !(eps0.is_finite() && eps0 > S::zero()) || steps == 0 {
            return Err(Error::Invalid("schedule needs eps0 > 0 and steps >= 1".into()));
        }
        Ok(Self {
            eps0,
            steps,
            extra: Vec::new(),
        })
    }

    pub fn with_extra(mut self, s: SubbasicSet<S>) -> Self {
        self.extra.push(s);
        self
    }

    pub fn eps0(&self) -> S {
        self.eps0
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn radii(&self) -> Vec<S> {
        let half = S::of(0.5);
        let mut r = self.eps0;
        (0..self.steps)
            .map(|_| {
                let cur = r;
                r = r * half;
                cur
            })
            .collect()
    }
}

/// Nested basic sets at `x`; unbounded kinds yield their minimal set once.
pub fn local_schedule<S: Scalar>(kind: TopologyKind, x: &Event<S>, eps0: S, steps: usize) -> Result<Vec<BasicNbhd<S>>> {
    let sched = Schedule::new(eps0, steps)?;
    if !kind.is_bounded() {
        return Ok(vec![BasicNbhd::interval(kind, x.clone())?]);
    }
    sched
        .radii()
        .into_iter()
        .map(|r| BasicNbhd::bounded(kind, x.clone(), r))
        .collect()
}

/// The schedule's basic sets at `x` plus its extra witnesses, which must
/// contain `x`.
pub fn schedule_sets<S: Scalar>(
    kind: TopologyKind,
    x: &Event<S>,
    schedule: &Schedule<S>,
    tol: &TolerancePolicy<S>,
) -> Result<Vec<OpenSet<S>>> {
    let mut out: Vec<OpenSet<S>> = local_schedule(kind, x, schedule.eps0, schedule.steps)?
        .into_iter()
        .map(OpenSet::Basic)
        .collect();
    for w in &schedule.extra {
        if !w.contains(x, tol)? {
            return Err(Error::OffCenter);
        }
        out.push(OpenSet::Subbasic(w.clone()));
    }
    Ok(out)
}

/// Maximal run of member parameters along a line, as the extreme member
/// parameters found after refining each boundary by bisection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceInterval<S> {
    pub lo: S,
    pub hi: S,
    /// The run reaches the end of the sampled window.
    pub lo_clipped: bool,
    pub hi_clipped: bool,
}

impl<S: Scalar> TraceInterval<S> {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Parameter set `{s in [-half_range, half_range] : point + s*direction in b}`
/// detected on a grid of `samples` points.
pub fn trace_on_line<S: Scalar>(
    b: &BasicNbhd<S>,
    point: &Event<S>,
    direction: &[S],
    samples: usize,
    half_range: S,
    tol: &TolerancePolicy<S>,
) -> Result<Vec<TraceInterval<S>>> {
    if direction.len() != point.coords().len() {
        return Err(Error::BadDimension(direction.len()));
    }
    if direction.iter().all(|c| c.is_zero()) || samples < 2 {
        return Err(Error::Degenerate);
    }
    let at = |s: S| -> Result<bool> { b.member(&point.offset(s, direction), tol) };
    let last = samples - 1;
    // symmetric in i, and exactly 0 at the middle of an odd grid
    let step = |i: usize| -> S { half_range * S::of(2.0 * i as f64 - last as f64) / S::of(last as f64) };
    let refine = |inside: S, outside: S| -> Result<S> {
        let (mut i, mut o) = (inside, outside);
        for _ in 0..80 {
            let mid = (i + o) * S::of(0.5);
            if mid == i || mid == o {
                break;
            }
            if at(mid)? {
                i = mid;
            } else {
                o = mid;
            }
        }
        Ok(i)
    };
    let flags = (0..samples).map(|i| at(step(i))).collect::<Result<Vec<bool>>>()?;
    let mut out = Vec::new();
    let mut i = 0;
    while i < samples {
        if !flags[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < samples && flags[i + 1] {
            i += 1;
        }
        let end = i;
        let lo = if start == 0 {
            step(0)
        } else {
            refine(step(start), step(start - 1))?
        };
        let hi = if end == last {
            step(last)
        } else {
            refine(step(end), step(end + 1))?
        };
        out.push(TraceInterval {
            lo,
            hi,
            lo_clipped: start == 0,
            hi_clipped: end == last,
        });
        i += 1;
    }
    Ok(out)
}

/// Region used by the dashed/undashed relation: the punctured light cone.
pub fn punctured_light_cone<S: Scalar>(x: &Event<S>) -> ConeRegion<S> {
    ConeRegion::new(ConeKind::LightConeBoth, x.clone(), None).expect("no partition needed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[f64]) -> Event<f64> {
        Event::from_f64(c).unwrap()
    }

    fn o() -> Event<f64> {
        ev(&[0.0; 4])
    }

    fn tol() -> TolerancePolicy<f64> {
        TolerancePolicy::default()
    }

    #[test]
    fn member_examples() {
        let zt = BasicNbhd::bounded(TopologyKind::ZT, o(), 1.0).unwrap();
        assert!(zt.member(&ev(&[0.5, 0.0, 0.0, 0.0]), &tol()).unwrap());
        let null = ev(&[0.5, 0.5, 0.0, 0.0]);
        assert!(!zt.member(&null, &tol()).unwrap());
        let ztd = BasicNbhd::bounded(TopologyKind::ZTDash, o(), 1.0).unwrap();
        assert!(ztd.member(&null, &tol()).unwrap());
        // ball minus punctured light cone keeps spacelike points
        let z = BasicNbhd::bounded(TopologyKind::Z, o(), 1.0).unwrap();
        assert!(z.member(&ev(&[0.0, 0.5, 0.0, 0.0]), &tol()).unwrap());
        assert!(z.member(&o(), &tol()).unwrap());
        assert!(!z.member(&ev(&[0.0, 1.5, 0.0, 0.0]), &tol()).unwrap());
    }

    #[test]
    fn every_kind_contains_its_center() {
        let x = ev(&[0.3, -0.2, 1.0, 0.0]);
        for k in TopologyKind::ALL {
            let b = BasicNbhd::at(k, x.clone(), 0.25).unwrap();
            assert!(b.member(&x, &tol()).unwrap(), "{k}");
        }
    }

    #[test]
    fn radius_rules() {
        assert_eq!(
            BasicNbhd::interval(TopologyKind::ZT, o()),
            Err(Error::MissingRadius("zt"))
        );
        assert_eq!(
            BasicNbhd::bounded(TopologyKind::IntCausal, o(), 1.0),
            Err(Error::UnexpectedRadius("int-causal"))
        );
        assert_eq!(
            BasicNbhd::bounded(TopologyKind::ZS, o(), -1.0),
            Err(Error::MissingRadius("zs"))
        );
        let p = Partition::along(3, 1).unwrap();
        assert!(BasicNbhd::interval(TopologyKind::IntSpacelike, o())
            .unwrap()
            .with_partition(p.clone())
            .is_ok());
        assert!(BasicNbhd::interval(TopologyKind::IntCausal, o())
            .unwrap()
            .with_partition(p)
            .is_err());
    }

    #[test]
    fn schedule_examples() {
        let s = local_schedule(TopologyKind::Manifold, &o(), 1.0, 3).unwrap();
        let radii: Vec<f64> = s.iter().map(|b| b.radius().unwrap()).collect();
        assert_eq!(radii, vec![1.0, 0.5, 0.25]);
        let s = local_schedule(TopologyKind::IntSpacelike, &o(), 1.0, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].member(&ev(&[-40.0, 3.0, 0.0, 0.0]), &tol()).unwrap());
        assert!(!s[0].member(&ev(&[0.0, 3.0, 0.0, 0.0]), &tol()).unwrap());
        let s = local_schedule(TopologyKind::ZS, &o(), 1.0, 2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].radius(), Some(0.5));
        assert!(Schedule::new(0.0, 2).is_err());
        assert!(Schedule::new(1.0, 0).is_err());
    }

    #[test]
    fn extra_witness_must_contain_center() {
        let w = SubbasicSet {
            relation: RelationKind::Chrono,
            anchor: ev(&[-1.0, 0.0, 0.0, 0.0]),
            side: Side::Upper,
        };
        // origin is in I+(anchor), so it is not in the complement
        let s = Schedule::new(1.0, 2).unwrap().with_extra(w);
        assert_eq!(
            schedule_sets(TopologyKind::Manifold, &o(), &s, &tol()),
            Err(Error::OffCenter)
        );
    }

    #[test]
    fn alexandrov_examples() {
        let d = alexandrov_nbhd(ev(&[-1.0, 0.0, 0.0, 0.0]), ev(&[1.0, 0.0, 0.0, 0.0]), &tol()).unwrap();
        assert!(d.member(&o(), &tol()).unwrap());
        assert!(!d.member(&ev(&[0.0, 2.0, 0.0, 0.0]), &tol()).unwrap());
        assert!(d.member(&ev(&[0.0, 0.5, 0.0, 0.0]), &tol()).unwrap());
        assert_eq!(
            alexandrov_nbhd(o(), ev(&[0.0, 1.0, 0.0, 0.0]), &tol()),
            Err(Error::NotChronological)
        );
        assert!((alexandrov_inner_radius(&d).unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn trace_examples() {
        let t_axis = [1.0, 0.0, 0.0, 0.0];
        let x_axis = [0.0, 1.0, 0.0, 0.0];
        let zt = BasicNbhd::bounded(TopologyKind::ZT, o(), 1.0).unwrap();
        let tr = trace_on_line(&zt, &o(), &t_axis, 401, 2.0, &tol()).unwrap();
        assert_eq!(tr.len(), 1);
        assert!((tr[0].lo + 1.0).abs() < 1e-9 && (tr[0].hi - 1.0).abs() < 1e-9);
        let zs = BasicNbhd::bounded(TopologyKind::ZS, o(), 1.0).unwrap();
        let tr = trace_on_line(&zs, &o(), &t_axis, 401, 2.0, &tol()).unwrap();
        assert_eq!(tr.len(), 1);
        assert!(tr[0].is_point() && tr[0].lo == 0.0);
        let tr = trace_on_line(&zs, &o(), &x_axis, 401, 2.0, &tol()).unwrap();
        assert_eq!(tr.len(), 1);
        assert!((tr[0].lo + 1.0).abs() < 1e-9 && (tr[0].hi - 1.0).abs() < 1e-9);
        assert_eq!(
            trace_on_line(&zs, &o(), &[0.0; 4], 11, 1.0, &tol()),
            Err(Error::Degenerate)
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for k in TopologyKind::ALL {
            assert_eq!(k.name().parse::<TopologyKind>().unwrap(), k);
        }
        assert_eq!("ZT_dash".parse::<TopologyKind>().unwrap(), TopologyKind::ZTDash);
        assert!("fine".parse::<TopologyKind>().is_err());
        for k in TopologyKind::LIGHT_CONE_RESTORED {
            assert_eq!(k.undashed().unwrap().dashed(), Some(k));
        }
    }
}
