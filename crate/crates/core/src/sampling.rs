//! Deterministic seeded generators for events, group elements and partitions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Event;
use crate::order::Partition;
use crate::scalar::Scalar;
use crate::transform::{GTransform, Lorentz};

pub const MAX_BOOST: f64 = 0.9;
pub const DILATATION_RANGE: (f64, f64) = (0.5, 2.0);

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    spatial_dim: usize,
}

impl Sampler {
    pub fn new(seed: u64, spatial_dim: usize) -> Self {
        assert!((1..=3).contains(&spatial_dim), "spatial dimension 1..=3");
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spatial_dim,
        }
    }

    /// Independent generator for case `index` of stream `stream`; the result
    /// does not depend on evaluation order.
    pub fn for_index(seed: u64, stream: u64, index: u64, spatial_dim: usize) -> Self {
        let mixed = splitmix(splitmix(seed ^ splitmix(stream)) ^ index);
        Self::new(mixed, spatial_dim)
    }

    pub fn spatial_dim(&self) -> usize {
        self.spatial_dim
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform<S: Scalar>(&mut self, lo: f64, hi: f64) -> S {
        S::of(self.rng.gen_range(lo..hi))
    }

    fn coords<S: Scalar>(&mut self, bound: f64) -> Vec<S> {
        (0..=self.spatial_dim).map(|_| self.uniform(-bound, bound)).collect()
    }

    /// Uniform in the cube `[-bound, bound]^(1+n)`.
    pub fn random_event<S: Scalar>(&mut self, bound: f64) -> Event<S> {
        Event::new(self.coords(bound)).expect("finite")
    }

    pub fn unit_spatial<S: Scalar>(&mut self) -> Vec<S> {
        loop {
            let v: Vec<f64> = (0..self.spatial_dim).map(|_| self.rng.gen_range(-1.0..1.0)).collect();
            let n2: f64 = v.iter().map(|c| c * c).sum();
            if (1e-4..=1.0).contains(&n2) {
                let n = n2.sqrt();
                return v.into_iter().map(|c| S::of(c / n)).collect();
            }
        }
    }

    pub fn partition<S: Scalar>(&mut self) -> Partition<S> {
        Partition::new(self.unit_spatial()).expect("unit axis")
    }

    /// Future timelike vector with `t` in `[0.1, bound]` and speed at most 0.95.
    pub fn future_timelike<S: Scalar>(&mut self, bound: f64) -> Vec<S> {
        let t: f64 = self.rng.gen_range(0.1..bound.max(0.2));
        let speed: f64 = self.rng.gen_range(0.0..0.95);
        let dir: Vec<f64> = self.unit_spatial();
        std::iter::once(S::of(t))
            .chain(dir.into_iter().map(|c| S::of(c * speed * t)))
            .collect()
    }

    /// Future null vector `t (1, u)` with unit `u`.
    pub fn future_null<S: Scalar>(&mut self, bound: f64) -> Vec<S> {
        let t: f64 = self.rng.gen_range(0.1..bound.max(0.2));
        let dir: Vec<f64> = self.unit_spatial();
        std::iter::once(S::of(t))
            .chain(dir.into_iter().map(|c| S::of(c * t)))
            .collect()
    }

    /// Rotation about every spatial plane followed by a boost.
    pub fn random_lorentz<S: Scalar>(&mut self) -> Lorentz<S> {
        let n = self.spatial_dim;
        let mut l = Lorentz::identity(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let angle = self.uniform(-std::f64::consts::PI, std::f64::consts::PI);
                l = Lorentz::rotation(n, i, j, angle).expect("valid plane").compose(&l);
            }
        }
        let v: S = self.uniform(-MAX_BOOST, MAX_BOOST);
        let dir = self.unit_spatial();
        Lorentz::boost(&dir, v).expect("subluminal").compose(&l)
    }

    pub fn random_g<S: Scalar>(&mut self, bound: f64) -> GTransform<S> {
        let lambda = self.random_lorentz();
        let translation = self.coords(bound);
        let dilatation = self.uniform(DILATATION_RANGE.0, DILATATION_RANGE.1);
        GTransform::new(lambda, translation, dilatation, S::of(S::DEFAULT_TAU)).expect("generated transform is valid")
    }
}

/// First event drawn from a fresh generator seeded with `seed`.
pub fn random_event<S: Scalar>(seed: u64, spatial_dim: usize, bound: f64) -> Event<S> {
    Sampler::new(seed, spatial_dim).random_event(bound)
}

pub fn random_g<S: Scalar>(seed: u64, spatial_dim: usize, bound: f64) -> GTransform<S> {
    Sampler::new(seed, spatial_dim).random_g(bound)
}
