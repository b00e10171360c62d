//! Seeded invariant suites. Case `i` of a suite draws from its own
//! generator, so counts and first witnesses do not depend on scheduling.

use conetop::lab::{converges, discriminator_sequences, expected_discriminator, EventSequence};
use conetop::order::{minimal_via_subbases, spacelike_minimal_with_convention};
use conetop::sampling::Sampler;
use conetop::topology::{alexandrov_inner_radius, punctured_light_cone, trace_on_line};
use conetop::{
    causal, chronological, classify, minimal_interval_nbhd, related, verify_lemma1, BasicNbhd64, Event64, FiniteSpace,
    HorismosConvention, Partition64, RelationKind, Schedule64, TopologyKind,
};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::report::Row;

pub const SUITES: [&str; 9] = [
    "relations",
    "zt-interval",
    "pairings",
    "dashed",
    "lemma1",
    "discriminators",
    "traces",
    "refinement",
    "convergence",
];

/// Counts for one named check.
#[derive(Clone, Debug, Default)]
struct Tally {
    checked: u64,
    violations: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
        self
    }
}

/// Runs `case` for every index in parallel and folds the per-check tallies
/// in index order.
fn run_cases<const K: usize, F>(count: usize, case: F) -> CliResult<[Tally; K]>
where
    F: Fn(usize, &mut [Tally; K]) -> CliResult<()> + Sync,
{
    let per_case: Vec<[Tally; K]> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut t: [Tally; K] = std::array::from_fn(|_| Tally::default());
            case(i, &mut t)?;
            Ok(t)
        })
        .collect::<CliResult<_>>()?;
    let mut acc: [Tally; K] = std::array::from_fn(|_| Tally::default());
    for t in per_case {
        for (a, b) in acc.iter_mut().zip(t) {
            *a = std::mem::take(a).merge(b);
        }
    }
    Ok(acc)
}

fn rows<const K: usize>(suite: &str, names: [&str; K], tallies: [Tally; K]) -> Vec<Row> {
    names
        .into_iter()
        .zip(tallies)
        .map(|(n, t)| Row::counted(suite, n, t.checked, t.violations, t.first))
        .collect()
}

fn stream(suite: &str) -> u64 {
    suite.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn sampler(cfg: &ExperimentConfig, suite: &str, i: usize) -> Sampler {
    Sampler::for_index(cfg.seed, stream(suite), i as u64, cfg.spatial_dim)
}

fn dist2(a: &Event64, b: &Event64) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// A point near `x` of a type chosen by `i`: uniform, future/past timelike,
/// future/past null, or spacelike.
fn probe(s: &mut Sampler, x: &Event64, scale: f64, i: usize) -> Event64 {
    match i % 6 {
        0 => x.translated(s.random_event::<f64>(scale).coords()),
        1 => x.translated(&s.future_timelike::<f64>(scale)),
        2 => x.offset(-1.0, &s.future_timelike::<f64>(scale)),
        3 => x.translated(&s.future_null::<f64>(scale)),
        4 => x.offset(-1.0, &s.future_null::<f64>(scale)),
        _ => {
            let mut v = s.future_timelike::<f64>(scale);
            // swap time and a spatial component: timelike becomes spacelike
            v.swap(0, 1);
            x.translated(&v)
        }
    }
}

pub fn relations(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let bound = cfg.props.bound;
    let names = ["irreflexivity", "time-reversal", "transitivity", "g-invariance"];
    let transforms: Vec<_> = (0..cfg.props.transforms)
        .map(|k| sampler(cfg, "relations/g", k).random_g::<f64>(bound))
        .collect();
    let t = run_cases::<4, _>(cfg.props.relation_cases, |i, t| {
        let mut s = sampler(cfg, "relations", i);
        let x = s.random_event::<f64>(bound);
        let y = s.random_event::<f64>(bound);
        let irr = !chronological(&x, &x, &tol)?
            && !related(&RelationKind::HorismosIrr, &x, &x, &tol)?
            && !related(&RelationKind::CausalIrr, &x, &x, &tol)?;
        t[0].check(irr, || format!("x={x}"));
        let fwd = classify(&x, &y, &tol)?;
        let back = classify(&y, &x, &tol)?;
        t[1].check(back == fwd.time_reversed(), || format!("x={x} y={y}: {fwd} vs {back}"));
        let b = x.translated(&s.future_timelike::<f64>(bound));
        let c = b.translated(&s.future_timelike::<f64>(bound));
        let d = b.translated(&s.future_null::<f64>(bound));
        let trans = chronological(&x, &c, &tol)? && causal(&x, &d, &tol)?;
        t[2].check(trans, || format!("x={x} y={b} z={c} w={d}"));
        let pairs = [
            y.clone(),
            x.translated(&s.future_null::<f64>(bound)),
            x.offset(-1.0, &s.future_timelike::<f64>(bound)),
        ];
        for g in &transforms {
            let gx = g.apply(&x)?;
            for q in &pairs {
                let same = classify(&x, q, &tol)? == classify(&gx, &g.apply(q)?, &tol)?;
                t[3].check(same, || format!("x={x} y={q}"));
            }
        }
        Ok(())
    })?;
    Ok(rows("relations", names, t))
}

pub fn zt_interval(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let bound = cfg.props.bound;
    let partitions: Vec<Partition64> = (0..cfg.props.partitions.max(1))
        .map(|k| sampler(cfg, "zt-interval/partition", k).partition())
        .collect();
    let names = [
        "zt-is-leq-minimal-in-ball",
        "partition-invariance",
        "closed-form",
        "null-convention",
    ];
    let n = cfg.props.membership_samples;
    let t = run_cases::<4, _>(n * partitions.len(), |i, t| {
        let p = &partitions[i / n];
        let mut s = sampler(cfg, "zt-interval", i);
        let x = s.random_event::<f64>(bound);
        let eps = s.uniform::<f64>(0.05, 1.5);
        let q = probe(&mut s, &x, 1.5 * eps, i);
        let rel = RelationKind::SpacelikeLeq(p.clone());
        let minimal = minimal_via_subbases(&rel, &x, &q, &tol)?;
        let zt = BasicNbhd64::bounded(TopologyKind::ZT, x.clone(), eps)?.member(&q, &tol)?;
        t[0].check(zt == (minimal && dist2(&x, &q) < eps * eps), || {
            format!("x={x} eps={eps} q={q}")
        });
        let base = minimal_via_subbases(&RelationKind::SpacelikeLeq(partitions[0].clone()), &x, &q, &tol)?;
        let lt = minimal_via_subbases(&RelationKind::SpacelikeLt(p.clone()), &x, &q, &tol)?;
        let lt0 = minimal_via_subbases(&RelationKind::SpacelikeLt(partitions[0].clone()), &x, &q, &tol)?;
        t[1].check(base == minimal && lt == lt0, || format!("x={x} q={q}"));
        let closed = minimal_interval_nbhd(&rel, &x)?.contains(&q, &tol)?;
        t[2].check(closed == minimal, || format!("x={x} q={q}"));
        let split = spacelike_minimal_with_convention(p, &x, &q, HorismosConvention::Split, &tol)?;
        let full = spacelike_minimal_with_convention(p, &x, &q, HorismosConvention::Full, &tol)?;
        t[3].check(split == full && split == minimal, || format!("x={x} q={q}"));
        Ok(())
    })?;
    Ok(rows("zt-interval", names, t))
}

pub fn pairings(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let bound = cfg.props.bound;
    let names = ["z-is-horismos-minimal-in-ball", "zs-is-causal-minimal-in-ball"];
    let pairs = [
        (TopologyKind::Z, RelationKind::HorismosIrr),
        (TopologyKind::ZS, RelationKind::CausalIrr),
    ];
    let t = run_cases::<2, _>(cfg.props.membership_samples, |i, t| {
        let mut s = sampler(cfg, "pairings", i);
        let x = s.random_event::<f64>(bound);
        let eps = s.uniform::<f64>(0.05, 1.5);
        let q = probe(&mut s, &x, 1.5 * eps, i);
        for (k, (kind, rel)) in pairs.iter().enumerate() {
            let oracle = minimal_via_subbases(rel, &x, &q, &tol)? && dist2(&x, &q) < eps * eps;
            let got = BasicNbhd64::bounded(*kind, x.clone(), eps)?.member(&q, &tol)?;
            t[k].check(got == oracle, || format!("x={x} eps={eps} q={q}"));
        }
        Ok(())
    })?;
    Ok(rows("pairings", names, t))
}

pub fn dashed(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let bound = cfg.props.bound;
    let undashed = [
        TopologyKind::ZT,
        TopologyKind::ZS,
        TopologyKind::IntSpacelike,
        TopologyKind::IntCausal,
    ];
    let names = [
        "zt-dash",
        "zs-dash",
        "int-spacelike-dash",
        "int-causal-dash",
        "z-is-zt-union-zs",
    ];
    let t = run_cases::<5, _>(cfg.props.membership_samples, |i, t| {
        let mut s = sampler(cfg, "dashed", i);
        let x = s.random_event::<f64>(bound);
        let eps = s.uniform::<f64>(0.05, 1.5);
        let q = probe(&mut s, &x, 1.5 * eps, i);
        let on_cone = punctured_light_cone(&x).contains(&q, &tol)?;
        for (k, kind) in undashed.iter().enumerate() {
            let plain = BasicNbhd64::at(*kind, x.clone(), eps)?.member(&q, &tol)?;
            let with_cone =
                BasicNbhd64::at(kind.dashed().expect("has dashed form"), x.clone(), eps)?.member(&q, &tol)?;
            t[k].check(plain == (with_cone && !on_cone), || format!("{kind} x={x} q={q}"));
        }
        let m = |k| -> CliResult<bool> { Ok(BasicNbhd64::bounded(k, x.clone(), eps)?.member(&q, &tol)?) };
        let z = m(TopologyKind::Z)?;
        let union = m(TopologyKind::ZT)? || m(TopologyKind::ZS)?;
        t[4].check(z == union, || format!("x={x} eps={eps} q={q}"));
        Ok(())
    })?;
    Ok(rows("dashed", names, t))
}

/// Base-lemma trials on random base pairs; returns (trials, failures, first).
pub fn lemma1_trials(cfg: &ExperimentConfig) -> CliResult<(u64, u64, Option<String>)> {
    let max_n = cfg.props.kernel_max_points;
    let [t] = run_cases::<1, _>(cfg.props.kernel_trials, |i, t| {
        let mut s = sampler(cfg, "lemma1", i);
        let n = 1 + (i % max_n);
        let space = FiniteSpace::new(n)?;
        let b1 = conetop::random_base(s.rng(), space);
        let b2 = conetop::random_base(s.rng(), space);
        let r = verify_lemma1(&b1, &b2)?;
        t[0].check(r.passed(), || format!("n={n} counterexample={:?}", r.counterexample));
        Ok(())
    })?;
    Ok((t.checked, t.violations, t.first))
}

pub fn lemma1(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let (checked, bad, first) = lemma1_trials(cfg)?;
    Ok(vec![Row::counted(
        "lemma1",
        "base-of-intersection",
        checked,
        bad,
        first,
    )])
}

pub fn discriminators(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let sched = cfg.schedule()?;
    let seqs = discriminator_sequences::<f64>(cfg.spatial_dim, cfg.horizon.n_max)?;
    let mut out = Vec::new();
    for seq in &seqs {
        let mut tally = Tally::default();
        for kind in TopologyKind::ALL {
            let v = converges(seq, kind, &sched, &tol)?;
            let want = expected_discriminator(&seq.name, kind).expect("known row");
            tally.check(v.accepted() == want, || format!("{kind}: {}", v.outcome));
        }
        out.push(Row::counted(
            "discriminators",
            seq.name.clone(),
            tally.checked,
            tally.violations,
            tally.first,
        ));
    }
    Ok(out)
}

pub fn traces(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let bound = cfg.props.bound;
    // odd count so the center is a grid point
    let samples = cfg.props.trace_samples | 1;
    let names = ["zt-time-axis", "zs-space-axis", "zt-spacelike-line"];
    let cases = 100;
    let t = run_cases::<3, _>(cases, |i, t| {
        let mut s = sampler(cfg, "traces", i);
        let x = s.random_event::<f64>(bound);
        let eps = s.uniform::<f64>(0.1, 1.5);
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * eps.max(1.0);
        let single = |tr: &[conetop::TraceInterval<f64>]| {
            tr.len() == 1 && close(tr[0].lo, -eps) && close(tr[0].hi, eps) && !tr[0].lo_clipped && !tr[0].hi_clipped
        };
        let mut time_axis = vec![0.0; x.coords().len()];
        time_axis[0] = 1.0;
        let zt = BasicNbhd64::bounded(TopologyKind::ZT, x.clone(), eps)?;
        let tr = trace_on_line(&zt, &x, &time_axis, samples, 2.0 * eps, &tol)?;
        t[0].check(single(&tr), || format!("x={x} eps={eps}: {tr:?}"));
        let mut space_axis = vec![0.0];
        space_axis.extend(s.unit_spatial::<f64>());
        let zs = BasicNbhd64::bounded(TopologyKind::ZS, x.clone(), eps)?;
        let tr = trace_on_line(&zs, &x, &space_axis, samples, 2.0 * eps, &tol)?;
        t[1].check(single(&tr), || format!("x={x} eps={eps}: {tr:?}"));
        let mut line = s.future_timelike::<f64>(1.0);
        line.swap(0, 1);
        let tr = trace_on_line(&zt, &x, &line, samples, 2.0 * eps, &tol)?;
        // bisection may stop at parameters too small to move the point
        let apex_only = tr.len() == 1 && x.offset(tr[0].lo, &line) == x && x.offset(tr[0].hi, &line) == x;
        t[2].check(apex_only, || format!("x={x} eps={eps} d={line:?}: {tr:?}"));
        Ok(())
    })?;
    Ok(rows("traces", names, t))
}

pub fn refinement(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let bound = cfg.props.bound;
    let names = ["diamond-in-ball", "ball-in-diamond"];
    let t = run_cases::<2, _>(cfg.props.refinement_centers, |i, t| {
        let mut s = sampler(cfg, "refinement", i);
        let x = s.random_event::<f64>(bound);
        let eps = s.uniform::<f64>(0.05, 1.5);
        let diamond = BasicNbhd64::bounded(TopologyKind::Alexandrov, x.clone(), eps)?;
        let (a, b) = diamond.tips().expect("diamond has tips");
        // the tips are the points of the closed diamond farthest from the center
        let tips_inside = dist2(&x, a) < eps * eps && dist2(&x, b) < eps * eps;
        t[0].check(tips_inside, || format!("x={x} eps={eps}"));
        let r = alexandrov_inner_radius(&diamond).expect("diamond");
        let ball = BasicNbhd64::bounded(TopologyKind::Manifold, x.clone(), r)?;
        for k in 0..64 {
            let q = probe(&mut s, &x, r, k);
            if ball.member(&q, &tol)? {
                t[1].check(diamond.member(&q, &tol)?, || format!("x={x} eps={eps} q={q}"));
            }
            let q = probe(&mut s, &x, eps, k);
            if diamond.member(&q, &tol)? {
                t[0].check(dist2(&x, &q) < eps * eps, || format!("x={x} eps={eps} q={q}"));
            }
        }
        Ok(())
    })?;
    Ok(rows("refinement", names, t))
}

/// Refutation monotonicity and dashed dominance on random approach
/// sequences. Diamonds are not cones at their center, so a diamond can
/// exclude `x_64` and still contain `x_256`; those flips are counted in their
/// own row instead of against the monotonicity check.
pub fn convergence(cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    let tol = cfg.tolerance()?;
    let names = ["refutation-monotone", "dashed-dominance", "alexandrov-horizon-flips"];
    let n_max = cfg.horizon.n_max;
    let coarse = cfg.schedule()?;
    let fine = Schedule64::new(cfg.schedule.eps0, cfg.schedule.steps + 2)?;
    let [mono, dom, flips] = run_cases::<3, _>(200, |i, t| {
        let mut s = sampler(cfg, "convergence", i);
        let limit = s.random_event::<f64>(cfg.props.bound);
        let dir = match i % 3 {
            0 => s.future_null::<f64>(1.0),
            1 => s.future_timelike::<f64>(1.0),
            _ => s.random_event::<f64>(1.0).coords().to_vec(),
        };
        let short = EventSequence::approach("short", limit.clone(), dir.clone(), (n_max / 4).max(16))?;
        let long = EventSequence::approach("long", limit, dir, n_max)?;
        for kind in TopologyKind::ALL {
            if !converges(&short, kind, &coarse, &tol)?.accepted() {
                let still = !converges(&long, kind, &coarse, &tol)?.accepted()
                    && !converges(&short, kind, &fine, &tol)?.accepted();
                let slot = if kind == TopologyKind::Alexandrov { 2 } else { 0 };
                t[slot].check(still, || format!("{kind} case {i}"));
            }
            if let Some(plain) = kind.undashed() {
                if !converges(&long, kind, &coarse, &tol)?.accepted() {
                    t[1].check(!converges(&long, plain, &coarse, &tol)?.accepted(), || {
                        format!("{kind} case {i}")
                    });
                }
            }
        }
        Ok(())
    })?;
    let mut out = rows("convergence", [names[0], names[1]], [mono, dom]);
    let mut row = Row::new("convergence", names[2]);
    row.verdict = "observed".into();
    row.checked = flips.checked;
    row.witness = flips.first.unwrap_or_default();
    row.note = format!(
        "{} of {} short-horizon diamond refutations accepted at the full horizon; finite-horizon artifact",
        flips.violations, flips.checked
    );
    out.push(row);
    Ok(out)
}

pub fn run_suite(name: &str, cfg: &ExperimentConfig) -> CliResult<Vec<Row>> {
    match name {
        "relations" => relations(cfg),
        "zt-interval" => zt_interval(cfg),
        "pairings" => pairings(cfg),
        "dashed" => dashed(cfg),
        "lemma1" => lemma1(cfg),
        "discriminators" => discriminators(cfg),
        "traces" => traces(cfg),
        "refinement" => refinement(cfg),
        "convergence" => convergence(cfg),
        other => Err(crate::error::CliError::Usage(format!("unknown suite {other:?}"))),
    }
}
