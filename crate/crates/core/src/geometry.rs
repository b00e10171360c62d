//! Events of 1+n Minkowski space, the quadratic form, and tolerance-aware
//! causal classification.
//!
//! Coordinate 0 is time, coordinates `1..=n` are spatial, and the metric
//! signature is `(+, -, .., -)`. The auxiliary Riemannian metric used for
//! balls is the Euclidean metric of the same frame.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Event<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if !(2..=4).contains(&coords.len()) {
            return Err(Error::BadDimension(coords.len()));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { coords })
    }

    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| S::of(c)).collect())
    }

    /// The origin of 1+`spatial_dim` space.
    pub fn origin(spatial_dim: usize) -> Result<Self> {
        Self::new(vec![S::zero(); spatial_dim + 1])
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<S>) -> Self {
        debug_assert!((2..=4).contains(&coords.len()));
        Self { coords }
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn time(&self) -> S {
        self.coords[0]
    }

    pub fn spatial(&self) -> &[S] {
        &self.coords[1..]
    }

    /// Number of spatial dimensions `n`.
    pub fn spatial_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch(self.spatial_dim(), other.spatial_dim()));
        }
        Ok(())
    }

    /// `other - self`.
    pub fn displacement_to(&self, other: &Self) -> Result<Vec<S>> {
        self.check_same_dim(other)?;
        Ok(self.coords.iter().zip(&other.coords).map(|(&a, &b)| b - a).collect())
    }

    /// `self + v`; panics if `v` has the wrong length.
    pub fn translated(&self, v: &[S]) -> Self {
        assert_eq!(v.len(), self.coords.len(), "displacement length");
        Self::from_vec_unchecked(self.coords.iter().zip(v).map(|(&a, &b)| a + b).collect())
    }

    /// `self + s * v`.
    pub fn offset(&self, s: S, v: &[S]) -> Self {
        assert_eq!(v.len(), self.coords.len(), "displacement length");
        Self::from_vec_unchecked(self.coords.iter().zip(v).map(|(&a, &b)| a + s * b).collect())
    }

    pub fn euclidean_distance(&self, other: &Self) -> Result<S> {
        Ok(euclidean_norm_sq(&self.displacement_to(other)?).sqrt())
    }
}

impl<S: Scalar> fmt::Display for Event<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `v_t^2 - sum v_i^2`.
pub fn quadratic_form<S: Scalar>(v: &[S]) -> S {
    let (t, xs) = v.split_first().expect("nonempty vector");
    xs.iter().fold(*t * *t, |acc, &x| acc - x * x)
}

/// Minkowski bilinear form, `Q(u + v) = Q(u) + 2<u,v> + Q(v)`.
pub fn minkowski_dot<S: Scalar>(u: &[S], v: &[S]) -> S {
    debug_assert_eq!(u.len(), v.len());
    let mut acc = u[0] * v[0];
    for i in 1..u.len() {
        acc = acc - u[i] * v[i];
    }
    acc
}

pub fn euclidean_norm_sq<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::zero(), |acc, &x| acc + x * x)
}

/// A displacement `y - x` together with its derived quantities.
#[derive(Clone, Debug, PartialEq)]
pub struct Displacement<S> {
    pub v: Vec<S>,
    q: S,
    norm_sq: S,
}

impl<S: Scalar> Displacement<S> {
    pub fn between(x: &Event<S>, y: &Event<S>) -> Result<Self> {
        Ok(Self::from_vec(x.displacement_to(y)?))
    }

    pub fn from_vec(v: Vec<S>) -> Self {
        let q = quadratic_form(&v);
        let norm_sq = euclidean_norm_sq(&v);
        Self { v, q, norm_sq }
    }

    pub fn q(&self) -> S {
        self.q
    }

    pub fn euclidean_norm(&self) -> S {
        self.norm_sq.sqrt()
    }

    pub fn euclidean_norm_sq(&self) -> S {
        self.norm_sq
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(|c| c.is_zero())
    }
}

/// Width of the band around the null cone inside which a displacement is
/// classified as null: `|q| <= tau_rel * max(1, |v|^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy<S> {
    tau_rel: S,
}

impl<S: Scalar> TolerancePolicy<S> {
    pub fn new(tau_rel: S) -> Result<Self> {
        if !(tau_rel.is_finite() && tau_rel > S::zero()) {
            return Err(Error::BadTolerance);
        }
        Ok(Self { tau_rel })
    }

    pub fn tau_rel(&self) -> S {
        self.tau_rel
    }

    pub fn scale_of(&self, norm_sq: S) -> S {
        norm_sq.max(S::one())
    }

    pub fn band_of(&self, norm_sq: S) -> S {
        self.tau_rel * self.scale_of(norm_sq)
    }

    pub fn band(&self, v: &[S]) -> S {
        self.band_of(euclidean_norm_sq(v))
    }
}

impl<S: Scalar> Default for TolerancePolicy<S> {
    fn default() -> Self {
        Self {
            tau_rel: S::of(S::DEFAULT_TAU),
        }
    }
}

/// Causal relationship of an ordered pair `(x, y)`, read as "y is ... of x".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CausalClass {
    Equal,
    ChronoFuture,
    ChronoPast,
    HorismosFuture,
    HorismosPast,
    Spacelike,
}

impl CausalClass {
    pub const ALL: [CausalClass; 6] = [
        CausalClass::Equal,
        CausalClass::ChronoFuture,
        CausalClass::ChronoPast,
        CausalClass::HorismosFuture,
        CausalClass::HorismosPast,
        CausalClass::Spacelike,
    ];

    /// Class of `(y, x)` given the class of `(x, y)`.
    pub fn time_reversed(self) -> Self {
        use CausalClass::*;
        match self {
            ChronoFuture => ChronoPast,
            ChronoPast => ChronoFuture,
            HorismosFuture => HorismosPast,
            HorismosPast => HorismosFuture,
            c => c,
        }
    }

    pub fn is_chrono(self) -> bool {
        matches!(self, CausalClass::ChronoFuture | CausalClass::ChronoPast)
    }

    pub fn is_null(self) -> bool {
        matches!(self, CausalClass::HorismosFuture | CausalClass::HorismosPast)
    }

    /// Strictly inside or on the null cone, apex excluded.
    pub fn is_causal(self) -> bool {
        self.is_chrono() || self.is_null()
    }

    pub fn name(self) -> &'static str {
        match self {
            CausalClass::Equal => "Equal",
            CausalClass::ChronoFuture => "ChronoFuture",
            CausalClass::ChronoPast => "ChronoPast",
            CausalClass::HorismosFuture => "HorismosFuture",
            CausalClass::HorismosPast => "HorismosPast",
            CausalClass::Spacelike => "Spacelike",
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies a displacement vector. Zero is `Equal`, tested before the band.
pub fn classify_displacement<S: Scalar>(v: &[S], tol: &TolerancePolicy<S>) -> CausalClass {
    if v.iter().all(|c| c.is_zero()) {
        return CausalClass::Equal;
    }
    let q = quadratic_form(v);
    let band = tol.band(v);
    let t = v[0];
    if q > band {
        // q > 0 forces t != 0
        if t > S::zero() {
            CausalClass::ChronoFuture
        } else {
            CausalClass::ChronoPast
        }
    } else if q < -band {
        CausalClass::Spacelike
    } else if t > S::zero() {
        CausalClass::HorismosFuture
    } else if t < S::zero() {
        CausalClass::HorismosPast
    } else {
        // purely spatial but shorter than the band: q < 0 exactly
        CausalClass::Spacelike
    }
}

pub fn classify<S: Scalar>(x: &Event<S>, y: &Event<S>, tol: &TolerancePolicy<S>) -> Result<CausalClass> {
    Ok(classify_displacement(&x.displacement_to(y)?, tol))
}

/// `x << y`, irreflexive.
pub fn chronological<S: Scalar>(x: &Event<S>, y: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
    Ok(classify(x, y, tol)? == CausalClass::ChronoFuture)
}

/// `x ≺ y`, reflexive.
pub fn causal<S: Scalar>(x: &Event<S>, y: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
    Ok(matches!(
        classify(x, y, tol)?,
        CausalClass::Equal | CausalClass::ChronoFuture | CausalClass::HorismosFuture
    ))
}

/// `x -> y` (horismos), reflexive.
pub fn horismos<S: Scalar>(x: &Event<S>, y: &Event<S>, tol: &TolerancePolicy<S>) -> Result<bool> {
    Ok(matches!(
        classify(x, y, tol)?,
        CausalClass::Equal | CausalClass::HorismosFuture
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[f64]) -> Event<f64> {
        Event::from_f64(c).unwrap()
    }

    #[test]
    fn quadratic_form_examples() {
        assert_eq!(quadratic_form(&[1.0, 0.0, 0.0, 0.0]), 1.0);
        assert_eq!(quadratic_form(&[1.0, 1.0, 0.0, 0.0]), 0.0);
        // 0.25 - 0.09 - 0.16, exact up to roundoff
        assert!(quadratic_form(&[0.5, 0.3, 0.4, 0.0_f64]).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let tol = TolerancePolicy::default();
        let o = ev(&[0.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            classify(&o, &ev(&[1.0, 0.0, 0.0, 0.0]), &tol).unwrap(),
            CausalClass::ChronoFuture
        );
        assert_eq!(
            classify(&o, &ev(&[1.0, 1.0, 0.0, 0.0]), &tol).unwrap(),
            CausalClass::HorismosFuture
        );
        assert_eq!(
            classify(&o, &ev(&[0.0, 1.0, 0.0, 0.0]), &tol).unwrap(),
            CausalClass::Spacelike
        );
        assert_eq!(classify(&o, &o, &tol).unwrap(), CausalClass::Equal);
        assert_eq!(
            classify(&o, &ev(&[-1.0, 0.5, 0.0, 0.0]), &tol).unwrap(),
            CausalClass::ChronoPast
        );
        assert_eq!(
            classify(&o, &ev(&[-1.0, 0.0, 1.0, 0.0]), &tol).unwrap(),
            CausalClass::HorismosPast
        );
    }

    #[test]
    fn equal_is_checked_before_band() {
        let tol = TolerancePolicy::default();
        let x = ev(&[3.0, 1.0, 2.0]);
        assert_eq!(classify(&x, &x, &tol).unwrap(), CausalClass::Equal);
        // tiny spatial displacement lands in the band with t = 0
        let y = ev(&[3.0, 1.0 + 1e-12, 2.0]);
        assert_eq!(classify(&x, &y, &tol).unwrap(), CausalClass::Spacelike);
        assert_eq!(classify(&y, &x, &tol).unwrap(), CausalClass::Spacelike);
    }

    #[test]
    fn band_is_relative_to_scale() {
        let tol = TolerancePolicy::<f64>::default();
        // 1e6-scale null vector with roundoff-size defect stays null
        let v = [1e6, 1e6 * (1.0 + 1e-12), 0.0];
        assert_eq!(classify_displacement(&v, &tol), CausalClass::HorismosFuture);
        assert_eq!(tol.band(&[0.1, 0.0]), 1e-9);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let tol = TolerancePolicy::default();
        let err = classify(&ev(&[0.0, 0.0]), &ev(&[0.0, 0.0, 0.0]), &tol).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch(1, 2));
    }

    #[test]
    fn rejects_bad_events() {
        assert!(Event::<f64>::new(vec![0.0]).is_err());
        assert!(Event::<f64>::new(vec![0.0; 5]).is_err());
        assert_eq!(Event::<f64>::new(vec![0.0, f64::NAN]), Err(Error::NonFinite(1)));
        assert!(TolerancePolicy::new(0.0_f64).is_err());
    }

    #[test]
    fn reflexivity_conventions() {
        let tol = TolerancePolicy::default();
        let x = ev(&[0.3, -1.0, 2.0, 0.5]);
        assert!(!chronological(&x, &x, &tol).unwrap());
        assert!(causal(&x, &x, &tol).unwrap());
        assert!(horismos(&x, &x, &tol).unwrap());
    }

    #[test]
    fn works_in_f32() {
        let tol = TolerancePolicy::<f32>::default();
        let o = Event::<f32>::origin(2).unwrap();
        let y = Event::<f32>::from_f64(&[0.5, 0.3, 0.4]).unwrap();
        assert_eq!(classify(&o, &y, &tol).unwrap(), CausalClass::HorismosFuture);
    }
}
