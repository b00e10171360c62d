//! Rational parametric curves and the causal-curve families used by the
//! limit-curve experiments.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{euclidean_norm_sq, Event};
use crate::lab::poly::Poly;
use crate::scalar::Scalar;

/// `q(s) = num(s) / den(s)` for `s in [lo, hi]`, with `den > 0` there.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePiece<S> {
    pub num: Vec<Poly<S>>,
    pub den: Poly<S>,
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> CurvePiece<S> {
    pub fn point(&self, s: S) -> Event<S> {
        let d = self.den.eval(s);
        Event::from_vec_unchecked(self.num.iter().map(|p| p.eval(s) / d).collect())
    }

    pub fn is_affine(&self) -> bool {
        self.den.degree() == 0 && self.num.iter().all(|p| p.degree() <= 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve<S> {
    pub pieces: Vec<CurvePiece<S>>,
    pub label: String,
}

impl<S: Scalar> Curve<S> {
    /// `origin + s * direction`, `s in [lo, hi]`.
    pub fn line(origin: &Event<S>, direction: &[S], lo: S, hi: S) -> Result<Self> {
        if direction.len() != origin.coords().len() {
            return Err(Error::BadDimension(direction.len()));
        }
        if direction.iter().all(|c| c.is_zero()) || !(lo < hi) {
            return Err(Error::Degenerate);
        }
        let num = origin
            .coords()
            .iter()
            .zip(direction)
            .map(|(&o, &d)| Poly::linear(o, d))
            .collect();
        Ok(Self {
            pieces: vec![CurvePiece {
                num,
                den: Poly::constant(S::one()),
                lo,
                hi,
            }],
            label: format!("line({origin}+s*d)"),
        })
    }

    /// Segments between consecutive vertices, each parametrized by `[0, 1]`.
    pub fn polyline(vertices: &[Event<S>]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Degenerate);
        }
        let mut pieces = Vec::with_capacity(vertices.len() - 1);
        for w in vertices.windows(2) {
            let d = w[0].displacement_to(&w[1])?;
            if d.iter().all(|c| c.is_zero()) {
                return Err(Error::Degenerate);
            }
            pieces.push(CurvePiece {
                num: w[0]
                    .coords()
                    .iter()
                    .zip(&d)
                    .map(|(&o, &dd)| Poly::linear(o, dd))
                    .collect(),
                den: Poly::constant(S::one()),
                lo: S::zero(),
                hi: S::one(),
            });
        }
        Ok(Self {
            pieces,
            label: format!("polyline({} vertices)", vertices.len()),
        })
    }

    /// Timelike branch `x = sqrt(t^2 + a^2)` for `t in [t_lo, t_hi]`, in the
    /// rational parameter `w = e^σ` (`t = a sinh σ`, `x = a cosh σ`).
    pub fn hyperbola(a: S, t_lo: S, t_hi: S, spatial_dim: usize) -> Result<Self> {
        if !(a > S::zero()) || !(t_lo < t_hi) || !(1..=3).contains(&spatial_dim) {
            return Err(Error::Degenerate);
        }
        let w_of = |t: S| (t + (t * t + a * a).sqrt()) / a;
        let half = a * S::of(0.5);
        let mut num = vec![
            Poly::new(vec![-half, S::zero(), half]),
            Poly::new(vec![half, S::zero(), half]),
        ];
        num.resize(spatial_dim + 1, Poly::constant(S::zero()));
        Ok(Self {
            pieces: vec![CurvePiece {
                num,
                den: Poly::linear(S::zero(), S::one()),
                lo: w_of(t_lo),
                hi: w_of(t_hi),
            }],
            label: format!("hyperbola(a={a})"),
        })
    }

    pub fn spatial_dim(&self) -> usize {
        self.pieces[0].num.len() - 1
    }

    /// Vertices shared by consecutive pieces.
    pub fn kinks(&self) -> Vec<Event<S>> {
        self.pieces.iter().skip(1).map(|p| p.point(p.lo)).collect()
    }

    /// `count` points spaced evenly in the internal parameter, excluding the
    /// start, skipping any within `1e-12` of an excluded event.
    pub fn sample_points(&self, count: usize, exclude: &[Event<S>]) -> Vec<(usize, S, Event<S>)> {
        let lengths: Vec<S> = self.pieces.iter().map(|p| p.hi - p.lo).collect();
        let total = lengths.iter().fold(S::zero(), |a, &b| a + b);
        let mut out = Vec::new();
        for j in 1..=count {
            let mut pos = total * S::of(j as f64) / S::of(count as f64);
            let mut idx = 0;
            while idx + 1 < self.pieces.len() && pos > lengths[idx] {
                pos = pos - lengths[idx];
                idx += 1;
            }
            let piece = &self.pieces[idx];
            let s = (piece.lo + pos).min(piece.hi);
            let q = piece.point(s);
            let near = exclude.iter().any(|e| {
                e.displacement_to(&q)
                    .map(|v| euclidean_norm_sq(&v) <= S::of(1e-24))
                    .unwrap_or(false)
            });
            if !near {
                out.push((idx, s, q));
            }
        }
        out
    }
}

/// Closed-form generator of the `n`-th member of a polyline family.
pub type PolylineGen<S> = Arc<dyn Fn(usize) -> Vec<Event<S>> + Send + Sync>;

#[derive(Clone)]
pub enum FamilyKind<S> {
    /// `s (1, cos θ_n, sin θ_n)` with `θ_n = θ0 / n`; limit `s (1, 1, 0)`.
    RotatingNullGeodesics { theta0: S },
    /// `(s, s + 1/n, 0..)`; limit `(s, s, 0..)`.
    ParallelNullLines,
    /// `x = sqrt(t^2 + 1/n^2)`; limit the broken null curve `x = |t|`.
    TimelikeHyperbolae,
    /// `s (1, v_n, 0..)` with `v_n = v0 / n`; limit the time axis.
    RotatingTimelikeLines { v0: S },
    Polyline {
        name: String,
        members: PolylineGen<S>,
        limit: Vec<Event<S>>,
    },
}

impl<S: fmt::Debug> fmt::Debug for FamilyKind<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::RotatingNullGeodesics { theta0 } => {
                write!(f, "RotatingNullGeodesics {{ theta0: {theta0:?} }}")
            }
            FamilyKind::ParallelNullLines => f.write_str("ParallelNullLines"),
            FamilyKind::TimelikeHyperbolae => f.write_str("TimelikeHyperbolae"),
            FamilyKind::RotatingTimelikeLines { v0 } => {
                write!(f, "RotatingTimelikeLines {{ v0: {v0:?} }}")
            }
            FamilyKind::Polyline { name, .. } => write!(f, "Polyline({name})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CurveFamily<S> {
    pub kind: FamilyKind<S>,
    pub spatial_dim: usize,
    pub range: (S, S),
}

/// Names accepted by [`CurveFamily::builtin`].
pub const BUILTIN_FAMILIES: [&str; 4] = [
    "rotating-null-geodesics",
    "parallel-null-lines",
    "timelike-hyperbolae",
    "rotating-timelike-lines",
];

impl<S: Scalar> CurveFamily<S> {
    pub fn rotating_null_geodesics(spatial_dim: usize) -> Result<Self> {
        if !(2..=3).contains(&spatial_dim) {
            // distinct null directions need two spatial dimensions
            return Err(Error::BadDimension(spatial_dim + 1));
        }
        Ok(Self {
            kind: FamilyKind::RotatingNullGeodesics { theta0: S::of(0.5) },
            spatial_dim,
            range: (S::zero(), S::of(2.0)),
        })
    }

    pub fn parallel_null_lines(spatial_dim: usize) -> Result<Self> {
        check_dim(spatial_dim)?;
        Ok(Self {
            kind: FamilyKind::ParallelNullLines,
            spatial_dim,
            range: (S::zero(), S::of(2.0)),
        })
    }

    pub fn timelike_hyperbolae(spatial_dim: usize) -> Result<Self> {
        check_dim(spatial_dim)?;
        Ok(Self {
            kind: FamilyKind::TimelikeHyperbolae,
            spatial_dim,
            range: (S::of(-2.0), S::of(2.0)),
        })
    }

    pub fn rotating_timelike_lines(spatial_dim: usize) -> Result<Self> {
        check_dim(spatial_dim)?;
        Ok(Self {
            kind: FamilyKind::RotatingTimelikeLines { v0: S::of(0.5) },
            spatial_dim,
            range: (S::zero(), S::of(2.0)),
        })
    }

    pub fn polyline(name: &str, spatial_dim: usize, members: PolylineGen<S>, limit: Vec<Event<S>>) -> Result<Self> {
        check_dim(spatial_dim)?;
        Curve::polyline(&limit)?;
        Ok(Self {
            kind: FamilyKind::Polyline {
                name: name.to_string(),
                members,
                limit,
            },
            spatial_dim,
            range: (S::zero(), S::one()),
        })
    }

    pub fn builtin(name: &str, spatial_dim: usize) -> Result<Self> {
        match name {
            "rotating-null-geodesics" => Self::rotating_null_geodesics(spatial_dim),
            "parallel-null-lines" => Self::parallel_null_lines(spatial_dim),
            "timelike-hyperbolae" => Self::timelike_hyperbolae(spatial_dim),
            "rotating-timelike-lines" => Self::rotating_timelike_lines(spatial_dim),
            _ => Err(Error::Invalid(format!("unknown curve family {name:?}"))),
        }
    }

    pub fn with_range(mut self, lo: S, hi: S) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Degenerate);
        }
        self.range = (lo, hi);
        Ok(self)
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FamilyKind::RotatingNullGeodesics { .. } => BUILTIN_FAMILIES[0].into(),
            FamilyKind::ParallelNullLines => BUILTIN_FAMILIES[1].into(),
            FamilyKind::TimelikeHyperbolae => BUILTIN_FAMILIES[2].into(),
            FamilyKind::RotatingTimelikeLines { .. } => BUILTIN_FAMILIES[3].into(),
            FamilyKind::Polyline { name, .. } => format!("polyline:{name}"),
        }
    }

    /// Whether members are intersected with cones and balls in closed form.
    /// Polyline members are piecewise affine, so they are exact as well.
    pub fn is_analytic(&self) -> bool {
        !matches!(self.kind, FamilyKind::Polyline { .. })
    }

    fn unit(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.spatial_dim + 1];
        v[i] = S::one();
        v
    }

    pub fn member(&self, n: usize) -> Result<Curve<S>> {
        if n == 0 {
            return Err(Error::Invalid("family members are indexed from 1".into()));
        }
        let nn = S::of(n as f64);
        let origin = Event::origin(self.spatial_dim)?;
        let (lo, hi) = self.range;
        let mut c = match &self.kind {
            FamilyKind::RotatingNullGeodesics { theta0 } => {
                let th = *theta0 / nn;
                let mut d = self.unit(0);
                d[1] = th.cos();
                d[2] = th.sin();
                Curve::line(&origin, &d, lo, hi)?
            }
            FamilyKind::ParallelNullLines => {
                let mut o = vec![S::zero(); self.spatial_dim + 1];
                o[1] = S::one() / nn;
                let mut d = self.unit(0);
                d[1] = S::one();
                Curve::line(&Event::new(o)?, &d, lo, hi)?
            }
            FamilyKind::TimelikeHyperbolae => Curve::hyperbola(S::one() / nn, lo, hi, self.spatial_dim)?,
            FamilyKind::RotatingTimelikeLines { v0 } => {
                let mut d = self.unit(0);
                d[1] = *v0 / nn;
                Curve::line(&origin, &d, lo, hi)?
            }
            FamilyKind::Polyline { members, .. } => Curve::polyline(&members(n))?,
        };
        c.label = format!("{}[n={n}]", self.name());
        Ok(c)
    }

    pub fn limit(&self) -> Result<Curve<S>> {
        let origin = Event::origin(self.spatial_dim)?;
        let (lo, hi) = self.range;
        let mut c = match &self.kind {
            FamilyKind::RotatingNullGeodesics { .. } | FamilyKind::ParallelNullLines => {
                let mut d = self.unit(0);
                d[1] = S::one();
                Curve::line(&origin, &d, lo, hi)?
            }
            FamilyKind::TimelikeHyperbolae => {
                let mut a = self.unit(0);
                a[0] = lo;
                a[1] = lo.abs();
                let mut b = self.unit(0);
                b[0] = hi;
                b[1] = hi.abs();
                Curve::polyline(&[Event::new(a)?, origin, Event::new(b)?])?
            }
            FamilyKind::RotatingTimelikeLines { .. } => Curve::line(&origin, &self.unit(0), lo, hi)?,
            FamilyKind::Polyline { limit, .. } => Curve::polyline(limit)?,
        };
        c.label = format!("{}[limit]", self.name());
        Ok(c)
    }

    /// Point shared by every member and the limit, if any.
    pub fn common_point(&self) -> Option<Event<S>> {
        match self.kind {
            FamilyKind::RotatingNullGeodesics { .. } | FamilyKind::RotatingTimelikeLines { .. } => {
                Event::origin(self.spatial_dim).ok()
            }
            _ => None,
        }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadDimension(n + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{classify, quadratic_form, CausalClass, TolerancePolicy};

    #[test]
    fn hyperbola_points_lie_on_branch() {
        let c = Curve::<f64>::hyperbola(0.25, -2.0, 2.0, 2).unwrap();
        let p = &c.pieces[0];
        for k in 0..=20 {
            let s = p.lo + (p.hi - p.lo) * k as f64 / 20.0;
            let q = p.point(s);
            let (t, x) = (q.time(), q.spatial()[0]);
            assert!((x - (t * t + 0.0625).sqrt()).abs() < 1e-12);
            assert!((quadratic_form(q.coords()) + 0.0625).abs() < 1e-12);
        }
        assert!((p.point(p.lo).time() + 2.0).abs() < 1e-12);
        assert!((p.point(p.hi).time() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rotating_members_are_null_rays() {
        let tol = TolerancePolicy::default();
        let fam = CurveFamily::<f64>::rotating_null_geodesics(2).unwrap();
        let o = Event::origin(2).unwrap();
        for n in [1, 7, 256] {
            let c = fam.member(n).unwrap();
            let q = c.pieces[0].point(1.5);
            assert_eq!(classify(&o, &q, &tol).unwrap(), CausalClass::HorismosFuture);
        }
        assert!(CurveFamily::<f64>::rotating_null_geodesics(1).is_err());
    }

    #[test]
    fn samples_skip_kink() {
        let fam = CurveFamily::<f64>::timelike_hyperbolae(1).unwrap();
        let lim = fam.limit().unwrap();
        let kinks = lim.kinks();
        assert_eq!(kinks, vec![Event::origin(1).unwrap()]);
        let pts = lim.sample_points(16, &kinks);
        assert_eq!(pts.len(), 15);
        for (_, _, q) in &pts {
            assert!((q.spatial()[0] - q.time().abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn rotating_samples_hit_unit_point() {
        let fam = CurveFamily::<f64>::rotating_null_geodesics(2).unwrap();
        let lim = fam.limit().unwrap();
        let pts = lim.sample_points(16, &[fam.common_point().unwrap()]);
        assert_eq!(pts.len(), 16);
        assert!(pts.iter().any(|(_, _, q)| q.coords() == [1.0, 1.0, 0.0]));
    }
}
