//! Order relations on events, cone regions, upper/lower sets and the minimal
//! neighborhoods of the interval topologies they generate.
//!
//! The interval topology of a relation `R` has as subbase the complements of
//! the strict upper sets `{q : z R q}` and lower sets `{q : q R z}`. At a
//! center `x` the intersection of the two complements anchored at `x` is the
//! smallest subbasic intersection containing `x`; it has a closed form as a
//! cone region plus apex, returned by [`minimal_interval_nbhd`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{classify_displacement, CausalClass, Event, TolerancePolicy};
use crate::scalar::Scalar;

/// Spatial unit axis splitting each space cone into two half-cones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Partition<S> {
    axis: Vec<S>,
}

impl<S: Scalar> Partition<S> {
    pub fn new(axis: Vec<S>) -> Result<Self> {
        if axis.is_empty() || axis.len() > 3 || axis.iter().any(|c| !c.is_finite()) {
            return Err(Error::BadPartition);
        }
        let n2 = axis.iter().fold(S::zero(), |a, &c| a + c * c);
        if (n2.sqrt() - S::one()).abs() > S::of(S::DEFAULT_TAU).sqrt() {
            return Err(Error::BadPartition);
        }
        Ok(Self { axis })
    }

    /// Unit vector along spatial axis `i` (0-based).
    pub fn along(spatial_dim: usize, i: usize) -> Result<Self> {
        if i >= spatial_dim {
            return Err(Error::BadPartition);
        }
        let mut axis = vec![S::zero(); spatial_dim];
        axis[i] = S::one();
        Self::new(axis)
    }

    pub fn axis(&self) -> &[S] {
        &self.axis
    }

    /// Which half-cone the spatial part of `v` falls in. Ties within `band`
    /// go to the sign of the first nonzero spatial coordinate.
    pub fn side(&self, v: &[S], band: S) -> Ordering {
        let spatial = &v[1..];
        let dot = spatial.iter().zip(&self.axis).fold(S::zero(), |a, (&x, &e)| a + x * e);
        if dot > band {
            return Ordering::Greater;
        }
        if dot < -band {
            return Ordering::Less;
        }
        spatial
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| {
                if *c > S::zero() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            })
            .unwrap_or(Ordering::Equal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeKind {
    TimeConeBoth,
    SpaceCone,
    SpaceConePlus,
    SpaceConeMinus,
    LightConeBoth,
    CausalConeBoth,
    ClosedSpaceCone,
}

impl ConeKind {
    fn name(self) -> &'static str {
        match self {
            ConeKind::TimeConeBoth => "TimeConeBoth",
            ConeKind::SpaceCone => "SpaceCone",
            ConeKind::SpaceConePlus => "SpaceConePlus",
            ConeKind::SpaceConeMinus => "SpaceConeMinus",
            ConeKind::LightConeBoth => "LightConeBoth",
            ConeKind::CausalConeBoth => "CausalConeBoth",
            ConeKind::ClosedSpaceCone => "ClosedSpaceCone",
        }
    }

    fn needs_partition(self) -> bool {
        matches!(self, ConeKind::SpaceConePlus | ConeKind::SpaceConeMinus)
    }
}

/// A cone region with its apex excluded.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeRegion<S> {
    pub kind: ConeKind,
    pub apex: Event<S>,
    pub partition: Option<Partition<S>>,
}

impl<S: Scalar> ConeRegion<S> {
    pub fn new(kind: ConeKind, apex: Event<S>, partition: Option<Partition<S>>) -> Result<Self> {
        match (kind.needs_partition(), &partition) {
            (true, None) => return Err(Error::MissingPartition(kind.name())),
            (true, Some(p)) if p.axis().len() != apex.spatial_dim() => return Err(Error::BadPartition),
            _ => {}
        }
        Ok(Self { kind, apex, partition })
    }

    pub fn contains(&self, q: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
        let v = self.apex.displacement_to(q)?;
        let class = classify_displacement(&v, tol);
        Ok(match self.kind {
            ConeKind::TimeConeBoth => class.is_chrono(),
            ConeKind::SpaceCone => class == CausalClass::Spacelike,
            ConeKind::LightConeBoth => class.is_null(),
            ConeKind::CausalConeBoth => class.is_causal(),
            ConeKind::ClosedSpaceCone => class == CausalClass::Spacelike || class.is_null(),
            ConeKind::SpaceConePlus | ConeKind::SpaceConeMinus => {
                if class != CausalClass::Spacelike {
                    return Ok(false);
                }
                let p = self.partition.as_ref().expect("checked at construction");
                let want = if self.kind == ConeKind::SpaceConePlus {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                p.side(&v, tol.band(&v)) == want
            }
        })
    }
}

pub fn in_region<S: Scalar>(r: &ConeRegion<S>, q: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
    r.contains(q, tol)
}

/// Strict (irreflexive) relations that generate interval topologies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum RelationKind<S> {
    /// `x << y`
    Chrono,
    /// `x <<= y`: future time cone or future light cone, `y != x`.
    CausalIrr,
    /// `x ->irr y`: future light cone, `y != x`.
    HorismosIrr,
    /// `x <= y`: `y` in the plus half of the space cone of `x`, or `x ->irr y`.
    SpacelikeLeq(Partition<S>),
    /// `x < y`: `y` in the plus half of the space cone of `x` only.
    SpacelikeLt(Partition<S>),
}

impl<S> RelationKind<S> {
    pub fn name(&self) -> &'static str {
        match self {
            RelationKind::Chrono => "chrono",
            RelationKind::CausalIrr => "causal-irr",
            RelationKind::HorismosIrr => "horismos-irr",
            RelationKind::SpacelikeLeq(_) => "spacelike-leq",
            RelationKind::SpacelikeLt(_) => "spacelike-lt",
        }
    }
}

impl<S> fmt::Display for RelationKind<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn space_plus<S: Scalar>(p: &Partition<S>, v: &[S], class: CausalClass, tol: &TolerancePolicy<S>) -> bool {
    class == CausalClass::Spacelike && p.side(v, tol.band(v)) == Ordering::Greater
}

pub fn related<S: Scalar>(k: &RelationKind<S>, x: &Event<S>, y: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
    let v = x.displacement_to(y)?;
    let class = classify_displacement(&v, tol);
    if let RelationKind::SpacelikeLeq(p) | RelationKind::SpacelikeLt(p) = k {
        if p.axis().len() != x.spatial_dim() {
            return Err(Error::BadPartition);
        }
    }
    Ok(match k {
        RelationKind::Chrono => class == CausalClass::ChronoFuture,
        RelationKind::CausalIrr => {
            matches!(class, CausalClass::ChronoFuture | CausalClass::HorismosFuture)
        }
        RelationKind::HorismosIrr => class == CausalClass::HorismosFuture,
        RelationKind::SpacelikeLeq(p) => class == CausalClass::HorismosFuture || space_plus(p, &v, class, tol),
        RelationKind::SpacelikeLt(p) => space_plus(p, &v, class, tol),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Upper,
    Lower,
}

/// Whether `q` lies in the strict upper (or lower) set of `z`.
pub fn in_side_set<S: Scalar>(
    k: &RelationKind<S>,
    z: &Event<S>,
    side: Side,
    q: &Event<S>,
    tol: &TolerancePolicy<S>,
) -> Result<bool> {
    match side {
        Side::Upper => related(k, z, q, tol),
        Side::Lower => related(k, q, z, tol),
    }
}

/// `q` lies in the subbasic open set `M \ upper(z)` (or `M \ lower(z)`).
pub fn subbasic_complement_contains<S: Scalar>(
    k: &RelationKind<S>,
    z: &Event<S>,
    side: Side,
    q: &Event<S>,
    tol: &TolerancePolicy<S>,
) -> Result<bool> {
    Ok(!in_side_set(k, z, side, q, tol)?)
}

/// Cone region plus apex, optionally complemented (apex kept either way).
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalNbhd<S> {
    pub region: ConeRegion<S>,
    pub complemented: bool,
}

impl<S: Scalar> MinimalNbhd<S> {
    pub fn apex(&self) -> &Event<S> {
        &self.region.apex
    }

    pub fn contains(&self, q: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
        if q == self.apex() {
            return Ok(true);
        }
        Ok(self.region.contains(q, tol)? != self.complemented)
    }
}

/// Closed form of `(M \ upper(x)) ∩ (M \ lower(x))`.
pub fn minimal_interval_nbhd<S: Scalar>(k: &RelationKind<S>, x: &Event<S>) -> Result<MinimalNbhd<S>> {
    let (kind, complemented) = match k {
        RelationKind::Chrono => (ConeKind::ClosedSpaceCone, false),
        RelationKind::CausalIrr => (ConeKind::SpaceCone, false),
        RelationKind::HorismosIrr => (ConeKind::LightConeBoth, true),
        RelationKind::SpacelikeLeq(p) | RelationKind::SpacelikeLt(p) => {
            if p.axis().len() != x.spatial_dim() {
                return Err(Error::BadPartition);
            }
            if matches!(k, RelationKind::SpacelikeLeq(_)) {
                (ConeKind::TimeConeBoth, false)
            } else {
                (ConeKind::CausalConeBoth, false)
            }
        }
    };
    Ok(MinimalNbhd {
        region: ConeRegion::new(kind, x.clone(), None)?,
        complemented,
    })
}

/// Membership in the minimal neighborhood computed directly from the two
/// subbasic complements anchored at `x`.
pub fn minimal_via_subbases<S: Scalar>(
    k: &RelationKind<S>,
    x: &Event<S>,
    q: &Event<S>,
    tol: &TolerancePolicy<S>,
) -> Result<bool> {
    if q == x {
        return Ok(true);
    }
    Ok(subbasic_complement_contains(k, x, Side::Upper, q, tol)?
        && subbasic_complement_contains(k, x, Side::Lower, q, tol)?)
}

/// Where the null cone goes when building `<=` from a space-cone partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HorismosConvention {
    /// Future null in the upper set, past null in the lower set.
    Split,
    /// The whole punctured null cone in both.
    Full,
}

/// Minimal `<=` neighborhood built from subbases under either null convention.
pub fn spacelike_minimal_with_convention<S: Scalar>(
    p: &Partition<S>,
    x: &Event<S>,
    q: &Event<S>,
    conv: HorismosConvention,
    tol: &TolerancePolicy<S>,
) -> Result<bool> {
    if q == x {
        return Ok(true);
    }
    let v = x.displacement_to(q)?;
    let class = classify_displacement(&v, tol);
    let side = if class == CausalClass::Spacelike {
        p.side(&v, tol.band(&v))
    } else {
        Ordering::Equal
    };
    let (in_upper, in_lower) = match conv {
        HorismosConvention::Split => (
            side == Ordering::Greater || class == CausalClass::HorismosFuture,
            side == Ordering::Less || class == CausalClass::HorismosPast,
        ),
        HorismosConvention::Full => (
            side == Ordering::Greater || class.is_null(),
            side == Ordering::Less || class.is_null(),
        ),
    };
    Ok(!in_upper && !in_lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[f64]) -> Event<f64> {
        Event::from_f64(c).unwrap()
    }

    fn e1() -> Partition<f64> {
        Partition::along(3, 0).unwrap()
    }

    #[test]
    fn region_examples() {
        let tol = TolerancePolicy::default();
        let o = ev(&[0.0; 4]);
        let r = ConeRegion::new(ConeKind::TimeConeBoth, o.clone(), None).unwrap();
        assert!(r.contains(&ev(&[-0.5, 0.0, 0.0, 0.0]), &tol).unwrap());
        assert!(!r.contains(&o, &tol).unwrap());
        let r = ConeRegion::new(ConeKind::SpaceConePlus, o.clone(), Some(e1())).unwrap();
        assert!(r.contains(&ev(&[0.0, 1.0, 0.0, 0.0]), &tol).unwrap());
        let r = ConeRegion::new(ConeKind::CausalConeBoth, o.clone(), None).unwrap();
        assert!(r.contains(&ev(&[1.0, 1.0, 0.0, 0.0]), &tol).unwrap());
        assert_eq!(
            ConeRegion::new(ConeKind::SpaceConeMinus, o, None),
            Err(Error::MissingPartition("SpaceConeMinus"))
        );
    }

    #[test]
    fn partition_tie_break() {
        let tol = TolerancePolicy::default();
        let o = ev(&[0.0; 4]);
        let plus = ConeRegion::new(ConeKind::SpaceConePlus, o.clone(), Some(e1())).unwrap();
        let minus = ConeRegion::new(ConeKind::SpaceConeMinus, o, Some(e1())).unwrap();
        // orthogonal to e: decided by first nonzero spatial coordinate
        let q = ev(&[0.0, 0.0, -1.0, 3.0]);
        assert!(!plus.contains(&q, &tol).unwrap());
        assert!(minus.contains(&q, &tol).unwrap());
    }

    #[test]
    fn related_examples() {
        let tol = TolerancePolicy::default();
        let o = ev(&[0.0; 4]);
        assert!(related(&RelationKind::Chrono, &o, &ev(&[1.0, 0.0, 0.0, 0.0]), &tol).unwrap());
        assert!(!related(&RelationKind::HorismosIrr, &o, &o, &tol).unwrap());
        let leq = RelationKind::SpacelikeLeq(e1());
        assert!(!related(&leq, &o, &ev(&[0.0, -1.0, 0.0, 0.0]), &tol).unwrap());
        assert!(related(&leq, &o, &ev(&[0.0, 1.0, 0.0, 0.0]), &tol).unwrap());
        assert!(related(&leq, &o, &ev(&[1.0, 0.0, 1.0, 0.0]), &tol).unwrap());
        assert!(!related(&RelationKind::SpacelikeLt(e1()), &o, &ev(&[1.0, 0.0, 1.0, 0.0]), &tol).unwrap());
        assert!(related(&RelationKind::CausalIrr, &o, &ev(&[1.0, 1.0, 0.0, 0.0]), &tol).unwrap());
    }

    #[test]
    fn subbasic_examples() {
        let tol = TolerancePolicy::default();
        let o = ev(&[0.0; 4]);
        let c = RelationKind::Chrono;
        assert!(subbasic_complement_contains(&c, &o, Side::Upper, &ev(&[0.0, 1.0, 0.0, 0.0]), &tol).unwrap());
        assert!(!subbasic_complement_contains(&c, &o, Side::Upper, &ev(&[1.0, 0.0, 0.0, 0.0]), &tol).unwrap());
        let leq = RelationKind::SpacelikeLeq(e1());
        assert!(!subbasic_complement_contains(&leq, &o, Side::Upper, &ev(&[0.0, 1.0, 0.0, 0.0]), &tol).unwrap());
    }

    /// Enumerates which strict upper/lower sets contain the point; a point in
    /// none of them is in the minimal neighborhood.
    fn complement_oracle(k: &RelationKind<f64>, q: &Event<f64>) -> bool {
        let tol = TolerancePolicy::default();
        let o = ev(&[0.0; 4]);
        let upper = related(k, &o, q, &tol).unwrap();
        let lower = related(k, q, &o, &tol).unwrap();
        q == &o || !(upper || lower)
    }

    #[test]
    fn minimal_nbhd_examples() {
        let tol = TolerancePolicy::default();
        let o = ev(&[0.0; 4]);
        let q = ev(&[0.5, 0.0, 0.0, 0.0]);
        let leq = RelationKind::SpacelikeLeq(e1());
        assert!(complement_oracle(&leq, &q));
        assert!(minimal_interval_nbhd(&leq, &o).unwrap().contains(&q, &tol).unwrap());
        assert!(!complement_oracle(&RelationKind::CausalIrr, &q));
        assert!(!minimal_interval_nbhd(&RelationKind::CausalIrr, &o)
            .unwrap()
            .contains(&q, &tol)
            .unwrap());
        let n = ev(&[1.0, 1.0, 0.0, 0.0]);
        assert!(!minimal_interval_nbhd(&RelationKind::HorismosIrr, &o)
            .unwrap()
            .contains(&n, &tol)
            .unwrap());
        for k in [
            RelationKind::Chrono,
            RelationKind::CausalIrr,
            RelationKind::HorismosIrr,
            leq,
        ] {
            assert!(minimal_interval_nbhd(&k, &o).unwrap().contains(&o, &tol).unwrap());
        }
    }

    #[test]
    fn partition_must_be_unit() {
        assert_eq!(Partition::new(vec![1.0, 1.0]), Err(Error::BadPartition));
        assert!(Partition::new(vec![0.6, 0.8]).is_ok());
    }
}
