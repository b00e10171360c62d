//! The group generated by orthochronous Lorentz transformations,
//! translations and positive dilatations.

use crate::error::{Error, Result};
use crate::geometry::Event;
use crate::scalar::Scalar;

/// Square matrix acting on 1+n vectors, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Lorentz<S> {
    dim: usize,
    m: Vec<S>,
}

impl<S: Scalar> Lorentz<S> {
    pub fn identity(spatial_dim: usize) -> Self {
        let dim = spatial_dim + 1;
        let mut m = vec![S::zero(); dim * dim];
        for i in 0..dim {
            m[i * dim + i] = S::one();
        }
        Self { dim, m }
    }

    /// Row-major `(1+n) x (1+n)` matrix. Validity is checked by [`GTransform::new`].
    pub fn from_rows(spatial_dim: usize, m: Vec<S>) -> Result<Self> {
        let dim = spatial_dim + 1;
        if m.len() != dim * dim || !(2..=4).contains(&dim) {
            return Err(Error::BadDimension(m.len()));
        }
        Ok(Self { dim, m })
    }

    /// Boost with velocity `v` (|v| < 1) along spatial axis `axis` (0-based).
    pub fn boost_axis(spatial_dim: usize, axis: usize, v: S) -> Result<Self> {
        let mut dir = vec![S::zero(); spatial_dim];
        *dir.get_mut(axis).ok_or(Error::Degenerate)? = S::one();
        Self::boost(&dir, v)
    }

    /// Boost with speed `v` along the unit spatial direction `dir`:
    /// `t' = g(t - v n.x)`, `x' = x + (g - 1)(n.x)n - g v t n`.
    pub fn boost(dir: &[S], v: S) -> Result<Self> {
        let n2 = dir.iter().fold(S::zero(), |a, &c| a + c * c);
        if n2.is_zero() || !(v.abs() < S::one()) {
            return Err(Error::Degenerate);
        }
        let inv = S::one() / n2.sqrt();
        let n: Vec<S> = dir.iter().map(|&c| c * inv).collect();
        let g = S::one() / (S::one() - v * v).sqrt();
        let dim = n.len() + 1;
        let mut m = vec![S::zero(); dim * dim];
        m[0] = g;
        for i in 0..n.len() {
            m[i + 1] = -g * v * n[i];
            m[(i + 1) * dim] = -g * v * n[i];
            for j in 0..n.len() {
                let delta = if i == j { S::one() } else { S::zero() };
                m[(i + 1) * dim + j + 1] = delta + (g - S::one()) * n[i] * n[j];
            }
        }
        Ok(Self { dim, m })
    }

    /// Spatial rotation by `angle` in the plane of spatial axes `i`, `j`.
    pub fn rotation(spatial_dim: usize, i: usize, j: usize, angle: S) -> Result<Self> {
        if i == j || i >= spatial_dim || j >= spatial_dim {
            return Err(Error::Degenerate);
        }
        let mut r = Self::identity(spatial_dim);
        let d = r.dim;
        let (c, s) = (angle.cos(), angle.sin());
        let (a, b) = (i + 1, j + 1);
        r.m[a * d + a] = c;
        r.m[a * d + b] = -s;
        r.m[b * d + a] = s;
        r.m[b * d + b] = c;
        Ok(r)
    }

    pub fn spatial_dim(&self) -> usize {
        self.dim - 1
    }

    pub fn entry(&self, row: usize, col: usize) -> S {
        self.m[row * self.dim + col]
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut m = vec![S::zero(); d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = S::zero();
                for k in 0..d {
                    acc = acc + self.m[r * d + k] * other.m[k * d + c];
                }
                m[r * d + c] = acc;
            }
        }
        Self { dim: d, m }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.dim);
        let d = self.dim;
        (0..d)
            .map(|r| (0..d).fold(S::zero(), |acc, k| acc + self.m[r * d + k] * v[k]))
            .collect()
    }

    /// `max |(L^T eta L - eta)_{ij}|`.
    pub fn metric_defect(&self) -> S {
        let d = self.dim;
        let eta = |i: usize| if i == 0 { S::one() } else { -S::one() };
        let mut worst = S::zero();
        for i in 0..d {
            for j in 0..d {
                let mut acc = S::zero();
                for k in 0..d {
                    acc = acc + self.m[k * d + i] * eta(k) * self.m[k * d + j];
                }
                let target = if i == j { eta(i) } else { S::zero() };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }
}

/// `x -> dilatation * (lambda x) + translation`.
#[derive(Clone, Debug, PartialEq)]
pub struct GTransform<S> {
    lambda: Lorentz<S>,
    translation: Vec<S>,
    dilatation: S,
}

impl<S: Scalar> GTransform<S> {
    /// Validates `lambda^T eta lambda = eta` within `tau`, orthochronicity and
    /// `dilatation > 0`.
    pub fn new(lambda: Lorentz<S>, translation: Vec<S>, dilatation: S, tau: S) -> Result<Self> {
        if translation.len() != lambda.dim {
            return Err(Error::BadDimension(translation.len()));
        }
        if translation.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(0));
        }
        if !(dilatation.is_finite() && dilatation > S::zero()) {
            return Err(Error::BadDilatation);
        }
        let defect = lambda.metric_defect();
        if !(defect <= tau) || !(lambda.entry(0, 0) > S::zero()) {
            return Err(Error::NotLorentz(defect.to_f64_lossy()));
        }
        Ok(Self {
            lambda,
            translation,
            dilatation,
        })
    }

    pub fn identity(spatial_dim: usize) -> Self {
        Self {
            lambda: Lorentz::identity(spatial_dim),
            translation: vec![S::zero(); spatial_dim + 1],
            dilatation: S::one(),
        }
    }

    pub fn translation(by: Vec<S>) -> Result<Self> {
        let n = by.len().checked_sub(1).ok_or(Error::BadDimension(0))?;
        Self::new(Lorentz::identity(n), by, S::one(), S::of(S::DEFAULT_TAU))
    }

    pub fn lorentz(lambda: Lorentz<S>) -> Result<Self> {
        let n = lambda.spatial_dim();
        Self::new(lambda, vec![S::zero(); n + 1], S::one(), S::of(S::DEFAULT_TAU))
    }

    pub fn lambda(&self) -> &Lorentz<S> {
        &self.lambda
    }

    pub fn dilatation(&self) -> S {
        self.dilatation
    }

    pub fn translation_vec(&self) -> &[S] {
        &self.translation
    }

    /// Acts on displacements: translation drops out.
    pub fn apply_linear(&self, v: &[S]) -> Vec<S> {
        self.lambda.apply(v).into_iter().map(|c| c * self.dilatation).collect()
    }

    pub fn apply(&self, x: &Event<S>) -> Result<Event<S>> {
        if x.coords().len() != self.lambda.dim {
            return Err(Error::DimensionMismatch(x.spatial_dim(), self.lambda.spatial_dim()));
        }
        let lin = self.apply_linear(x.coords());
        Event::new(lin.into_iter().zip(&self.translation).map(|(a, &b)| a + b).collect())
    }
}

pub fn apply_transform<S: Scalar>(g: &GTransform<S>, x: &Event<S>) -> Result<Event<S>> {
    g.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::quadratic_form;

    #[test]
    fn identity_fixes_events() {
        let g = GTransform::<f64>::identity(3);
        let x = Event::from_f64(&[0.3, -2.0, 1.0, 7.5]).unwrap();
        assert_eq!(g.apply(&x).unwrap(), x);
    }

    #[test]
    fn boost_example() {
        // gamma = 1.25 for v = 0.6
        let l = Lorentz::<f64>::boost_axis(3, 0, 0.6).unwrap();
        let g = GTransform::lorentz(l).unwrap();
        let y = g.apply(&Event::from_f64(&[1.0, 0.0, 0.0, 0.0]).unwrap()).unwrap();
        let expect = [1.25, -0.75, 0.0, 0.0];
        for (a, b) in y.coords().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{y}");
        }
        assert!((quadratic_form(y.coords()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn translation_example() {
        let g = GTransform::translation(vec![1.0; 4]).unwrap();
        let y = g.apply(&Event::<f64>::origin(3).unwrap()).unwrap();
        assert_eq!(y.coords(), &[1.0; 4]);
    }

    #[test]
    fn rejects_non_lorentz_and_time_reversal() {
        let shear = Lorentz::from_rows(1, vec![1.0, 0.5, 0.0, 1.0]).unwrap();
        assert!(matches!(GTransform::lorentz(shear), Err(Error::NotLorentz(_))));
        let flip = Lorentz::from_rows(1, vec![-1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(GTransform::lorentz(flip).is_err());
        let ok = Lorentz::<f64>::identity(1);
        assert_eq!(GTransform::new(ok, vec![0.0; 2], 0.0, 1e-9), Err(Error::BadDilatation));
    }

    #[test]
    fn compositions_stay_lorentz() {
        let b = Lorentz::<f64>::boost(&[0.3, -0.4, 0.5], 0.9).unwrap();
        let r = Lorentz::rotation(3, 0, 2, 1.1).unwrap();
        assert!(b.compose(&r).compose(&b).metric_defect() < 1e-12);
    }
}
