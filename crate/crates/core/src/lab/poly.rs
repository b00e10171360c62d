//! Dense univariate polynomials with real-root isolation on an interval.

use std::ops::{Add, Mul, Sub};

use crate::scalar::Scalar;

/// `c[0] + c[1] s + c[2] s^2 + ...`
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    c: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut c: Vec<S>) -> Self {
        while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            c.push(S::zero());
        }
        Self { c }
    }

    pub fn constant(a: S) -> Self {
        Self::new(vec![a])
    }

    /// `a + b s`
    pub fn linear(a: S, b: S) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> S {
        self.c.get(i).copied().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn scale(&self, k: S) -> Self {
        Self::new(self.c.iter().map(|&x| x * k).collect())
    }

    pub fn eval(&self, s: S) -> S {
        self.c.iter().rev().fold(S::zero(), |acc, &x| acc * s + x)
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() == 1 {
            return Self::constant(S::zero());
        }
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| x * S::of(i as f64))
                .collect(),
        )
    }

    fn is_zero_poly(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Sign-change roots in `[lo, hi]`, plus touching roots. Each root of
    /// the derivative splits the interval into monotone pieces, each holding
    /// at most one root, located by bisection.
    pub fn roots_in(&self, lo: S, hi: S) -> Vec<S> {
        if self.degree() == 0 || !(lo <= hi) {
            return Vec::new();
        }
        if self.degree() == 1 {
            let r = -self.c[0] / self.c[1];
            return if r >= lo && r <= hi { vec![r] } else { Vec::new() };
        }
        let mut knots = vec![lo];
        knots.extend(self.derivative().roots_in(lo, hi));
        knots.push(hi);
        let mut out = Vec::new();
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa.is_zero() {
                out.push(a);
                continue;
            }
            if fb.is_zero() || (fa < S::zero()) == (fb < S::zero()) {
                continue;
            }
            let (mut l, mut r) = (a, b);
            let neg_left = fa < S::zero();
            for _ in 0..200 {
                let m = (l + r) * S::of(0.5);
                if m == l || m == r {
                    break;
                }
                let fm = self.eval(m);
                if fm.is_zero() {
                    l = m;
                    r = m;
                    break;
                }
                if (fm < S::zero()) == neg_left {
                    l = m;
                } else {
                    r = m;
                }
            }
            out.push((l + r) * S::of(0.5));
        }
        if self.eval(hi).is_zero() {
            out.push(hi);
        }
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
        out.dedup();
        out
    }

    /// Roots and critical points in `[lo, hi]`; between consecutive
    /// breakpoints the polynomial has constant sign.
    pub fn breakpoints_in(&self, lo: S, hi: S) -> Vec<S> {
        if self.is_zero_poly() {
            return Vec::new();
        }
        let mut out = self.roots_in(lo, hi);
        if self.degree() >= 2 {
            out.extend(self.derivative().roots_in(lo, hi));
        }
        out
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;

    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.c.len().max(rhs.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;

    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.c.len().max(rhs.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;

    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        let mut c = vec![S::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j] + a * b;
            }
        }
        Poly::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Poly<f64> {
        Poly::new(c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1.0, 2.0]);
        let b = p(&[-1.0, 0.0, 3.0]);
        assert_eq!((&a * &b).coeffs(), &[-1.0, -2.0, 3.0, 6.0]);
        assert_eq!((&a + &b).coeffs(), &[0.0, 2.0, 3.0]);
        assert_eq!((&b - &b).degree(), 0);
        assert_eq!(b.derivative().coeffs(), &[0.0, 6.0]);
        assert_eq!(b.eval(2.0), 11.0);
    }

    #[test]
    fn quartic_roots() {
        // (s-1)(s+2)(s-0.5)(s-3)
        let f = &(&p(&[-1.0, 1.0]) * &p(&[2.0, 1.0])) * &(&p(&[-0.5, 1.0]) * &p(&[-3.0, 1.0]));
        let r = f.roots_in(-5.0, 5.0);
        let expect = [-2.0, 0.5, 1.0, 3.0];
        assert_eq!(r.len(), 4);
        for (a, b) in r.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{r:?}");
        }
        assert_eq!(f.roots_in(1.5, 2.5), Vec::<f64>::new());
    }

    #[test]
    fn double_root_is_a_breakpoint() {
        let f = p(&[1.0, -2.0, 1.0]);
        let b = f.breakpoints_in(-3.0, 3.0);
        assert!(b.iter().any(|&x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(p(&[2.0]).roots_in(-1.0, 1.0).is_empty());
        assert!(p(&[0.0]).breakpoints_in(-1.0, 1.0).is_empty());
    }
}
