//! Limit-curve checks: does a family of curves accumulate on a given curve,
//! as seen by the neighborhoods of a topology?

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Event, TolerancePolicy};
use crate::lab::curve::{Curve, CurveFamily};
use crate::lab::meets::{curve_meets_nbhd, Certificate, Meeting};
use crate::lab::sequence::{Horizon, Outcome, Verdict, Witness};
use crate::scalar::Scalar;
use crate::topology::{local_schedule, BasicNbhd, OpenSet, Schedule, TopologyKind};

/// How "γ is a limit curve of γ_n" is read at a finite horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LimitDefinition {
    /// Every neighborhood of every sampled point of γ meets a cofinite
    /// tail of the members.
    D1,
    /// Some arithmetic subsequence (stride up to [`MAX_STRIDE`]) passes D1.
    D2,
}

pub const MAX_STRIDE: usize = 8;

impl LimitDefinition {
    pub const ALL: [LimitDefinition; 2] = [LimitDefinition::D1, LimitDefinition::D2];
}

impl fmt::Display for LimitDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitDefinition::D1 => "D1",
            LimitDefinition::D2 => "D2",
        })
    }
}

impl FromStr for LimitDefinition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "D1" => Ok(LimitDefinition::D1),
            "D2" => Ok(LimitDefinition::D2),
            _ => Err(Error::Invalid(format!("unknown limit definition {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LctParams<S> {
    pub schedule: Schedule<S>,
    pub horizon: Horizon,
    /// Points sampled on the limit curve.
    pub samples: usize,
    pub tol: TolerancePolicy<S>,
}

impl<S: Scalar> Default for LctParams<S> {
    fn default() -> Self {
        Self {
            schedule: Schedule::new(S::of(0.5), 4).expect("valid default schedule"),
            horizon: Horizon::default(),
            samples: 16,
            tol: TolerancePolicy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitVerdict<S> {
    pub verdict: Verdict<S>,
    /// Stride of the accepted subsequence (1 for D1).
    pub stride: Option<usize>,
    pub points_checked: usize,
    pub sets_checked: usize,
}

impl<S: Scalar> LimitVerdict<S> {
    pub fn accepted(&self) -> bool {
        self.verdict.accepted()
    }
}

/// Sample points of `gamma` ordered from the middle of its parameter range
/// outward, leaving out the family's common point and the kinks of `gamma`.
fn ordered_samples<S: Scalar>(fam: &CurveFamily<S>, gamma: &Curve<S>, count: usize) -> Vec<Event<S>> {
    let mut exclude: Vec<Event<S>> = fam.common_point().into_iter().collect();
    exclude.extend(gamma.kinks());
    let mut pts: Vec<(usize, Event<S>)> = gamma
        .sample_points(count, &exclude)
        .into_iter()
        .map(|(_, _, q)| q)
        .enumerate()
        .collect();
    let mid = count as f64 / 2.0;
    pts.sort_by(|(a, _), (b, _)| {
        let da = ((*a + 1) as f64 - mid).abs();
        let db = ((*b + 1) as f64 - mid).abs();
        da.partial_cmp(&db).expect("finite").then(a.cmp(b))
    });
    pts.into_iter().map(|(_, q)| q).collect()
}

/// Shrinking basic sets at `p`. Interval kinds are cut down to balls so
/// that only the part of a member near `p` counts.
pub fn local_sets<S: Scalar>(kind: TopologyKind, p: &Event<S>, eps0: S, steps: usize) -> Result<Vec<BasicNbhd<S>>> {
    if kind.is_bounded() {
        return local_schedule(kind, p, eps0, steps);
    }
    Schedule::new(eps0, steps)?
        .radii()
        .into_iter()
        .map(|r| BasicNbhd::interval(kind, p.clone())?.localized(r))
        .collect()
}

fn members<S: Scalar>(fam: &CurveFamily<S>, n_max: usize) -> Result<Vec<Curve<S>>> {
    (1..=n_max).map(|n| fam.member(n)).collect()
}

/// Per index, `None` when member `n` meets `b`, else its certificate.
fn miss_row<S: Scalar>(
    curves: &[Curve<S>],
    b: &BasicNbhd<S>,
    tol: &TolerancePolicy<S>,
) -> Result<Vec<Option<Certificate<S>>>> {
    curves
        .iter()
        .map(|c| {
            Ok(match curve_meets_nbhd(c, b, tol)? {
                Meeting::Meets { .. } => None,
                Meeting::Empty(cert) => Some(cert),
            })
        })
        .collect()
}

/// First index `N` (1-based, within the stride-`k` subsequence) such that
/// every later entry meets, if the trailing block is long enough.
fn cofinite_start<S>(row: &[Option<Certificate<S>>], stride: usize, horizon: &Horizon) -> Option<usize> {
    let sub: Vec<bool> = row
        .iter()
        .skip(stride - 1)
        .step_by(stride)
        .map(|m| m.is_none())
        .collect();
    let len = sub.len();
    if len == 0 {
        return None;
    }
    let last_miss = sub.iter().rposition(|ok| !ok).map(|i| i + 1).unwrap_or(0);
    let tail = len - last_miss;
    (tail >= horizon.required_tail(len)).then_some(last_miss + 1)
}

/// Per member: `None` if it meets the set, else the proof it misses.
type MissRow<S> = Vec<Option<Certificate<S>>>;

struct Table<S> {
    cells: Vec<(Event<S>, BasicNbhd<S>, MissRow<S>)>,
}

fn refutation<S: Scalar>(p: &Event<S>, b: &BasicNbhd<S>, row: &[Option<Certificate<S>>]) -> Witness<S> {
    let failing: Vec<usize> = row
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_some())
        .map(|(i, _)| i + 1)
        .collect();
    let certificates = row
        .iter()
        .enumerate()
        .filter_map(|(i, m)| m.clone().map(|c| (i + 1, c)))
        .collect();
    Witness::Curve {
        point: p.clone(),
        set: OpenSet::Basic(b.clone()),
        failing,
        certificates,
    }
}

/// Checks `gamma` as a limit curve of `fam` under `kind`. Refutations name
/// the point, the basic set and one emptiness certificate per missed member.
pub fn limit_curve_check<S: Scalar>(
    fam: &CurveFamily<S>,
    gamma: &Curve<S>,
    kind: TopologyKind,
    defn: LimitDefinition,
    params: &LctParams<S>,
) -> Result<LimitVerdict<S>> {
    if gamma.pieces.is_empty() || gamma.spatial_dim() != fam.spatial_dim {
        return Err(Error::Degenerate);
    }
    let points = ordered_samples(fam, gamma, params.samples);
    if points.is_empty() {
        return Err(Error::Degenerate);
    }
    let n_max = params.horizon.n_max;
    let curves = members(fam, n_max)?;
    let tol = &params.tol;
    let finish = |outcome, witness, thresholds, stride, table: &Table<S>| LimitVerdict {
        verdict: Verdict {
            outcome,
            witness,
            horizon: params.horizon,
            schedule: params.schedule.clone(),
            thresholds,
        },
        stride,
        points_checked: points.len(),
        sets_checked: table.cells.len(),
    };

    let mut table = Table { cells: Vec::new() };
    let mut d1_failure = None;
    for p in &points {
        for b in local_sets(kind, p, params.schedule.eps0(), params.schedule.steps())? {
            let row = miss_row(&curves, &b, tol)?;
            let ok = cofinite_start(&row, 1, &params.horizon).is_some();
            table.cells.push((p.clone(), b, row));
            if !ok && d1_failure.is_none() {
                d1_failure = Some(table.cells.len() - 1);
                if defn == LimitDefinition::D1 {
                    break;
                }
            }
        }
        if d1_failure.is_some() && defn == LimitDefinition::D1 {
            break;
        }
    }

    let strides: Vec<usize> = match defn {
        LimitDefinition::D1 => vec![1],
        LimitDefinition::D2 => (1..=MAX_STRIDE).collect(),
    };
    for k in strides {
        let starts: Option<Vec<usize>> = table
            .cells
            .iter()
            .map(|(_, _, row)| cofinite_start(row, k, &params.horizon))
            .collect();
        if let Some(th) = starts {
            return Ok(finish(Outcome::ConvergesRelativeToSchedule, None, th, Some(k), &table));
        }
    }
    let blocks_every_stride =
        |row: &[Option<Certificate<S>>]| (1..=MAX_STRIDE).all(|k| cofinite_start(row, k, &params.horizon).is_none());
    let idx = match defn {
        LimitDefinition::D1 => d1_failure,
        LimitDefinition::D2 => table.cells.iter().position(|(_, _, row)| blocks_every_stride(row)),
    }
    .or(d1_failure)
    .unwrap_or(0);
    let (p, b, row) = &table.cells[idx];
    let w = refutation(p, b, row);
    Ok(finish(Outcome::Refuted, Some(w), Vec::new(), None, &table))
}

/// One cell of the experiment matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LctRow<S> {
    pub family: String,
    pub kind: TopologyKind,
    pub defn: LimitDefinition,
    pub result: LimitVerdict<S>,
}

/// Every (family, kind, definition) cell against each family's own limit
/// curve, rows ordered by family, then kind, then definition.
pub fn lct_matrix<S: Scalar>(
    families: &[CurveFamily<S>],
    kinds: &[TopologyKind],
    defns: &[LimitDefinition],
    params: &LctParams<S>,
) -> Result<Vec<LctRow<S>>> {
    let mut jobs = Vec::new();
    for (fi, fam) in families.iter().enumerate() {
        for &kind in kinds {
            for &defn in defns {
                jobs.push((fi, fam, kind, defn));
            }
        }
    }
    let limits = families.iter().map(|f| f.limit()).collect::<Result<Vec<_>>>()?;
    jobs.par_iter()
        .map(|&(fi, fam, kind, defn)| {
            let result = limit_curve_check(fam, &limits[fi], kind, defn, params)?;
            Ok(LctRow {
                family: fam.name(),
                kind,
                defn,
                result,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Candidate points along the limit curve.
    pub points: usize,
    /// Radii `eps0 * 2^-k`, `k < eps_levels`.
    pub eps_levels: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            points: 8,
            eps_levels: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoundWitness<S> {
    pub point: Event<S>,
    pub nbhd: BasicNbhd<S>,
    /// Certificates for `n = 1..=n_max`, in order.
    pub certificates: Vec<Certificate<S>>,
}

/// First (point, basic set) on the limit curve that every member up to the
/// horizon misses, searching points from the middle of the curve outward
/// and radii from large to small.
pub fn witness_search<S: Scalar>(
    fam: &CurveFamily<S>,
    kind: TopologyKind,
    budget: SearchBudget,
    params: &LctParams<S>,
) -> Result<Option<FoundWitness<S>>> {
    let gamma = fam.limit()?;
    let curves = members(fam, params.horizon.n_max)?;
    let levels = budget.eps_levels.max(1);
    for p in ordered_samples(fam, &gamma, budget.points) {
        'sets: for b in local_sets(kind, &p, params.schedule.eps0(), levels)? {
            let mut certs = Vec::with_capacity(curves.len());
            for c in &curves {
                match curve_meets_nbhd(c, &b, &params.tol)? {
                    Meeting::Meets { .. } => continue 'sets,
                    Meeting::Empty(cert) => certs.push(cert),
                }
            }
            return Ok(Some(FoundWitness {
                point: p,
                nbhd: b,
                certificates: certs,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[f64]) -> Event<f64> {
        Event::from_f64(c).unwrap()
    }

    fn rotating() -> CurveFamily<f64> {
        CurveFamily::rotating_null_geodesics(2).unwrap()
    }

    #[test]
    fn definition_parses() {
        assert_eq!("d2".parse::<LimitDefinition>().unwrap(), LimitDefinition::D2);
        assert!("D3".parse::<LimitDefinition>().is_err());
    }

    #[test]
    fn rotating_null_under_manifold_and_zt() {
        let fam = rotating();
        let gamma = fam.limit().unwrap();
        let params = LctParams::default();
        let m = limit_curve_check(&fam, &gamma, TopologyKind::Manifold, LimitDefinition::D1, &params).unwrap();
        assert!(m.accepted());
        let z = limit_curve_check(&fam, &gamma, TopologyKind::ZT, LimitDefinition::D1, &params).unwrap();
        assert_eq!(z.verdict.outcome, Outcome::Refuted);
        match z.verdict.witness.unwrap() {
            Witness::Curve {
                point,
                set,
                failing,
                certificates,
            } => {
                assert_eq!(point, ev(&[1.0, 1.0, 0.0]));
                assert_eq!(set.as_basic().unwrap().radius(), Some(0.5));
                assert_eq!(failing.len(), 256);
                assert_eq!(certificates.len(), 256);
            }
            w => panic!("{w}"),
        }
    }

    #[test]
    fn interval_spacelike_refutes_rotating_null() {
        let fam = rotating();
        let gamma = fam.limit().unwrap();
        let v = limit_curve_check(
            &fam,
            &gamma,
            TopologyKind::IntSpacelike,
            LimitDefinition::D1,
            &LctParams::default(),
        )
        .unwrap();
        assert!(!v.accepted());
    }

    #[test]
    fn search_finds_unit_point_for_zt_only() {
        let fam = rotating();
        let params = LctParams::default();
        let w = witness_search(&fam, TopologyKind::ZT, SearchBudget::default(), &params)
            .unwrap()
            .unwrap();
        assert_eq!(w.point, ev(&[1.0, 1.0, 0.0]));
        assert_eq!(w.nbhd.radius(), Some(0.5));
        assert!(witness_search(&fam, TopologyKind::Z, SearchBudget::default(), &params)
            .unwrap()
            .is_none());
        let par = CurveFamily::<f64>::parallel_null_lines(2).unwrap();
        assert!(witness_search(&par, TopologyKind::ZT, SearchBudget::default(), &params)
            .unwrap()
            .is_none());
    }

    #[test]
    fn hyperbolae_accepted_by_balls() {
        let fam = CurveFamily::<f64>::timelike_hyperbolae(1).unwrap();
        let gamma = fam.limit().unwrap();
        let v = limit_curve_check(
            &fam,
            &gamma,
            TopologyKind::Manifold,
            LimitDefinition::D1,
            &LctParams::default(),
        )
        .unwrap();
        assert!(v.accepted(), "{:?}", v.verdict.witness);
    }
}
