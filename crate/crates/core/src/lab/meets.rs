//! Exact curve/neighborhood intersection by sign analysis.
//!
//! Along a rational piece every quantity a membership recipe looks at (the
//! quadratic form and Euclidean norm of `q(s) - center`, the null band edges,
//! the partition dot product, each coordinate) is a polynomial in `s` after
//! clearing the positive denominator. Between consecutive roots of those
//! polynomials every recipe is constant, so probing the roots, the cell
//! midpoints and the ends decides the intersection.

use std::fmt;

use crate::error::Result;
use crate::geometry::{classify, euclidean_norm_sq, CausalClass, Event, TolerancePolicy};
use crate::lab::curve::{Curve, CurvePiece};
use crate::lab::poly::Poly;
use crate::scalar::Scalar;
use crate::topology::BasicNbhd;

/// Points probed per piece when re-verifying a certificate at base density.
pub const BASE_RESOLUTION: usize = 1000;

/// One sign cell of an emptiness proof: on `[lo, hi]` no critical polynomial
/// changes sign, and the probe is not a member.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell<S> {
    pub lo: S,
    pub hi: S,
    pub probe: S,
    pub class: CausalClass,
    pub distance: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PieceCertificate<S> {
    pub lo: S,
    pub hi: S,
    /// Numerator of `Q(q(s) - center)`; equals it when the piece is affine.
    pub cone: Poly<S>,
    pub affine: bool,
    pub cells: Vec<Cell<S>>,
}

/// Proof that a curve misses a basic set.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<S> {
    pub nbhd: String,
    pub curve: String,
    pub tau: S,
    pub pieces: Vec<PieceCertificate<S>>,
    pub evaluated: usize,
}

impl<S: Scalar> Certificate<S> {
    pub fn cell_count(&self) -> usize {
        self.pieces.iter().map(|p| p.cells.len()).sum()
    }

    /// Coefficients `[c0, c1, c2]` of `Q(q(s) - center)` for a single affine piece.
    pub fn affine_cone_coeffs(&self) -> Option<[S; 3]> {
        match self.pieces.as_slice() {
            [p] if p.affine => Some([p.cone.coeff(0), p.cone.coeff(1), p.cone.coeff(2)]),
            _ => None,
        }
    }

    /// Samples `factor * max(evaluated, BASE_RESOLUTION)` parameters per
    /// piece and confirms none is a member.
    pub fn reverify(
        &self,
        curve: &Curve<S>,
        b: &BasicNbhd<S>,
        tol: &TolerancePolicy<S>,
        factor: usize,
    ) -> Result<bool> {
        let count = factor.max(1) * self.evaluated.max(BASE_RESOLUTION);
        for piece in &curve.pieces {
            for i in 0..=count {
                let s = piece.lo + (piece.hi - piece.lo) * S::of(i as f64) / S::of(count as f64);
                if b.member(&piece.point(s), tol)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn sign_word<S: Scalar>(x: S, strict_neg: &'static str, zero: &'static str, pos: &'static str) -> &'static str {
    if x < S::zero() {
        strict_neg
    } else if x.is_zero() {
        zero
    } else {
        pos
    }
}

impl<S: Scalar> fmt::Display for Certificate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine_cone_coeffs() {
            Some([c0, c1, c2]) => {
                let p = &self.pieces[0];
                if c2.abs() <= self.tau {
                    write!(
                        f,
                        "EMPTY: Q(s) = {c1:e}·s + {c0:e}, a{}, b{} on [{}, {}]",
                        sign_word(c1, "<0", "=0", ">0"),
                        sign_word(c0, "≤0", "≤0", ">0"),
                        p.lo,
                        p.hi
                    )?;
                } else {
                    write!(
                        f,
                        "EMPTY: Q(s) = {c2:e}·s^2 + {c1:e}·s + {c0:e} on [{}, {}]",
                        p.lo, p.hi
                    )?;
                }
            }
            None => write!(f, "EMPTY: {} pieces", self.pieces.len())?,
        }
        write!(f, "; {} sign cells; {}", self.cell_count(), self.nbhd)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Meeting<S> {
    Meets { piece: usize, param: S, point: Event<S> },
    Empty(Certificate<S>),
}

impl<S: Scalar> Meeting<S> {
    pub fn meets(&self) -> bool {
        matches!(self, Meeting::Meets { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate<S>> {
        match self {
            Meeting::Empty(c) => Some(c),
            Meeting::Meets { .. } => None,
        }
    }
}

struct Relative<S> {
    w: Vec<Poly<S>>,
    q: Poly<S>,
    n: Poly<S>,
}

fn relative<S: Scalar>(piece: &CurvePiece<S>, r: &Event<S>) -> Relative<S> {
    let w: Vec<Poly<S>> = piece
        .num
        .iter()
        .zip(r.coords())
        .map(|(p, &c)| p - &piece.den.scale(c))
        .collect();
    let mut q = &w[0] * &w[0];
    let mut n = q.clone();
    for wi in &w[1..] {
        let sq = wi * wi;
        q = &q - &sq;
        n = &n + &sq;
    }
    Relative { w, q, n }
}

fn critical_polys<S: Scalar>(piece: &CurvePiece<S>, b: &BasicNbhd<S>, tau: S) -> Vec<Poly<S>> {
    let den = &piece.den;
    let den2 = den * den;
    let mut refs = vec![b.center().clone()];
    if let Some((a, t)) = b.tips() {
        refs.push(a.clone());
        refs.push(t.clone());
    }
    let mut out = Vec::new();
    for (k, r) in refs.iter().enumerate() {
        let rel = relative(piece, r);
        let tau_d2 = den2.scale(tau);
        let tau_n = rel.n.scale(tau);
        out.extend(rel.w.iter().cloned());
        out.push(&rel.q + &tau_d2);
        out.push(&rel.q - &tau_d2);
        out.push(&rel.q + &tau_n);
        out.push(&rel.q - &tau_n);
        out.push(&rel.n - &den2);
        out.push(rel.q.clone());
        if k == 0 {
            if let Some(eps) = b.radius() {
                out.push(&rel.n - &den2.scale(eps * eps));
            }
            if let Some(p) = b.partition() {
                let dot = rel.w[1..]
                    .iter()
                    .zip(p.axis())
                    .fold(Poly::constant(S::zero()), |acc, (wi, &e)| &acc + &wi.scale(e));
                let dot_den = &dot * den;
                let tau_den = den.scale(tau);
                out.push(&dot + &tau_den);
                out.push(&dot - &tau_den);
                out.push(&dot_den + &tau_n);
                out.push(&dot_den - &tau_n);
            }
            // closest approach to the center
            let dn = &(&rel.n.derivative() * den) - &(&rel.n * &den.derivative()).scale(S::of(2.0));
            out.push(dn);
        }
    }
    out
}

fn near_apex<S: Scalar>(q: &Event<S>, c: &Event<S>, tau: S) -> bool {
    let d2 = euclidean_norm_sq(&c.displacement_to(q).expect("same dimension"));
    let scale = euclidean_norm_sq(c.coords()).max(S::one());
    d2 <= tau * tau * scale
}

/// Decides whether `curve` meets `b`. A curve passing within `tau` of the
/// center meets it (the apex is in every basic set).
pub fn curve_meets_nbhd<S: Scalar>(curve: &Curve<S>, b: &BasicNbhd<S>, tol: &TolerancePolicy<S>) -> Result<Meeting<S>> {
    b.center().check_same_dim(&curve.pieces[0].point(curve.pieces[0].lo))?;
    let tau = tol.tau_rel();
    let mut evaluated = 0;
    // cheap probes first: ends and closest approach to the center
    for (idx, piece) in curve.pieces.iter().enumerate() {
        let rel = relative(piece, b.center());
        let den = &piece.den;
        let dn = &(&rel.n.derivative() * den) - &(&rel.n * &den.derivative()).scale(S::of(2.0));
        let closest = dn.roots_in(piece.lo, piece.hi);
        let width = piece.hi - piece.lo;
        let mut probes = closest.clone();
        for &r in &closest {
            let mut d = width;
            for _ in 0..5 {
                d = d * S::of(0.1);
                probes.extend([r - d, r + d].into_iter().filter(|&x| x >= piece.lo && x <= piece.hi));
            }
        }
        probes.push(piece.lo);
        probes.push(piece.hi);
        for s in probes {
            let q = piece.point(s);
            evaluated += 1;
            if near_apex(&q, b.center(), tau) || b.member(&q, tol)? {
                return Ok(Meeting::Meets {
                    piece: idx,
                    param: s,
                    point: q,
                });
            }
        }
    }
    let mut pieces = Vec::with_capacity(curve.pieces.len());
    for (idx, piece) in curve.pieces.iter().enumerate() {
        let mut knots = vec![piece.lo, piece.hi];
        for p in critical_polys(piece, b, tau) {
            knots.extend(p.breakpoints_in(piece.lo, piece.hi));
        }
        knots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        knots.dedup();
        let mut probes = Vec::with_capacity(2 * knots.len());
        for (i, &k) in knots.iter().enumerate() {
            probes.push(k);
            if let Some(&next) = knots.get(i + 1) {
                probes.push((k + next) * S::of(0.5));
            }
        }
        let mut cells = Vec::new();
        for (i, &s) in probes.iter().enumerate() {
            let q = piece.point(s);
            evaluated += 1;
            if near_apex(&q, b.center(), tau) || b.member(&q, tol)? {
                return Ok(Meeting::Meets {
                    piece: idx,
                    param: s,
                    point: q,
                });
            }
            if i % 2 == 1 {
                cells.push(Cell {
                    lo: probes[i - 1],
                    hi: probes[i + 1],
                    probe: s,
                    class: classify(b.center(), &q, tol)?,
                    distance: b.center().euclidean_distance(&q)?,
                });
            }
        }
        let cone = relative(piece, b.center()).q;
        pieces.push(PieceCertificate {
            lo: piece.lo,
            hi: piece.hi,
            cone,
            affine: piece.is_affine(),
            cells,
        });
    }
    Ok(Meeting::Empty(Certificate {
        nbhd: b.to_string(),
        curve: curve.label.clone(),
        tau,
        pieces,
        evaluated,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::curve::CurveFamily;
    use crate::topology::TopologyKind;

    fn ev(c: &[f64]) -> Event<f64> {
        Event::from_f64(c).unwrap()
    }

    #[test]
    fn rotating_null_misses_time_cone_at_unit_point() {
        let tol = TolerancePolicy::default();
        let fam = CurveFamily::<f64>::rotating_null_geodesics(2).unwrap();
        let p = ev(&[1.0, 1.0, 0.0]);
        let b = BasicNbhd::bounded(TopologyKind::ZT, p.clone(), 0.5).unwrap();
        for n in [1, 2, 10, 256] {
            let c = fam.member(n).unwrap();
            let m = curve_meets_nbhd(&c, &b, &tol).unwrap();
            let cert = m.certificate().expect("empty");
            let [c0, c1, _] = cert.affine_cone_coeffs().unwrap();
            let th = 0.5 / n as f64;
            assert!((c1 + 2.0 * (1.0 - th.cos())).abs() < 1e-12, "{cert}");
            assert_eq!(c0, 0.0);
            assert!(cert.to_string().starts_with("EMPTY: Q(s) = "));
            assert!(cert.to_string().contains("a<0, b≤0"));
            assert!(cert.reverify(&c, &b, &tol, 10).unwrap());
        }
    }

    #[test]
    fn rotating_null_meets_ball() {
        let tol = TolerancePolicy::default();
        let fam = CurveFamily::<f64>::rotating_null_geodesics(2).unwrap();
        let p = ev(&[1.0, 1.0, 0.0]);
        let b = BasicNbhd::bounded(TopologyKind::Manifold, p, 0.5).unwrap();
        for n in [2, 10, 256] {
            let m = curve_meets_nbhd(&fam.member(n).unwrap(), &b, &tol).unwrap();
            assert!(m.meets());
        }
    }

    #[test]
    fn curve_through_center_meets_every_kind() {
        let tol = TolerancePolicy::default();
        let c = Curve::line(&ev(&[0.0, 0.0, 0.0]), &[1.0, 0.3, -0.2], -1.0, 1.0).unwrap();
        let center = c.pieces[0].point(0.7);
        for k in TopologyKind::ALL {
            let b = BasicNbhd::at(k, center.clone(), 0.1).unwrap();
            assert!(curve_meets_nbhd(&c, &b, &tol).unwrap().meets(), "{k}");
        }
    }

    #[test]
    fn tangential_null_contact_is_found() {
        // (1, 1, s) is spacelike from the origin except at s = 0, where it is null
        let tol = TolerancePolicy::default();
        let center = ev(&[0.0, 0.0, 0.0]);
        let c = Curve::line(&ev(&[1.0, 1.0, 0.0]), &[0.0, 0.0, 1.0], -1.0, 2.0).unwrap();
        let dash = BasicNbhd::bounded(TopologyKind::ZTDash, center.clone(), 10.0).unwrap();
        match curve_meets_nbhd(&c, &dash, &tol).unwrap() {
            Meeting::Meets { param, .. } => assert!(param.abs() < 1e-4),
            m => panic!("expected contact, got {m:?}"),
        }
        let zt = BasicNbhd::bounded(TopologyKind::ZT, center, 10.0).unwrap();
        assert!(!curve_meets_nbhd(&c, &zt, &tol).unwrap().meets());
    }

    #[test]
    fn hyperbola_analysis_matches_dense_sampling() {
        let tol = TolerancePolicy::default();
        let fam = CurveFamily::<f64>::timelike_hyperbolae(1).unwrap();
        let centers = [ev(&[0.5, 0.5]), ev(&[-1.0, 1.0]), ev(&[0.2, 0.9]), ev(&[0.0, 0.05])];
        for n in [1, 3, 20] {
            let c = fam.member(n).unwrap();
            for x in &centers {
                for k in TopologyKind::ALL {
                    let b = BasicNbhd::at(k, x.clone(), 0.3).unwrap();
                    let exact = curve_meets_nbhd(&c, &b, &tol).unwrap();
                    if let Some(cert) = exact.certificate() {
                        assert!(cert.reverify(&c, &b, &tol, 10).unwrap(), "{k} n={n} x={x}");
                    }
                }
            }
        }
    }
}
