use conetop::order::{minimal_via_subbases, spacelike_minimal_with_convention};
use conetop::sampling::Sampler;
use conetop::topology::{alexandrov_inner_radius, punctured_light_cone};
use conetop::{
    local_schedule, BasicNbhd64, Event64, HorismosConvention, Partition64, RelationKind, Tolerance64, TopologyKind,
};
use proptest::prelude::*;

fn tol() -> Tolerance64 {
    Tolerance64::default()
}

fn dist2(a: &Event64, b: &Event64) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Near-center points of every causal type, plus uniform ones.
fn probes(s: &mut Sampler, x: &Event64, scale: f64) -> Vec<Event64> {
    let mut out = vec![x.clone()];
    for _ in 0..4 {
        out.push(x.translated(s.random_event::<f64>(scale).coords()));
        let tl = s.future_timelike::<f64>(scale);
        out.push(x.translated(&tl));
        out.push(x.offset(-1.0, &tl));
        let nl = s.future_null::<f64>(scale);
        out.push(x.translated(&nl));
        out.push(x.offset(-1.0, &nl));
    }
    out
}

proptest! {
    #[test]
    fn zt_is_minimal_leq_set_inside_ball(seed in any::<u64>(), dim in 1usize..=3) {
        let mut s = Sampler::new(seed, dim);
        let x = s.random_event::<f64>(2.0);
        let eps = s.uniform::<f64>(0.1, 1.5);
        let zt = BasicNbhd64::bounded(TopologyKind::ZT, x.clone(), eps).unwrap();
        let rel = RelationKind::SpacelikeLeq(s.partition());
        for q in probes(&mut s, &x, 1.5) {
            let oracle = minimal_via_subbases(&rel, &x, &q, &tol()).unwrap() && dist2(&x, &q) < eps * eps;
            prop_assert_eq!(zt.member(&q, &tol()).unwrap(), oracle, "q={}", q);
        }
    }

    #[test]
    fn minimal_sets_ignore_partition_and_null_convention(seed in any::<u64>(), dim in 1usize..=3) {
        let mut s = Sampler::new(seed, dim);
        let x = s.random_event::<f64>(2.0);
        let (p1, p2): (Partition64, Partition64) = (s.partition(), s.partition());
        for q in probes(&mut s, &x, 1.5) {
            for k in [
                |p| RelationKind::SpacelikeLeq(p),
                |p| RelationKind::SpacelikeLt(p),
            ] {
                let a = minimal_via_subbases(&k(p1.clone()), &x, &q, &tol()).unwrap();
                let b = minimal_via_subbases(&k(p2.clone()), &x, &q, &tol()).unwrap();
                prop_assert_eq!(a, b);
            }
            let split = spacelike_minimal_with_convention(&p1, &x, &q, HorismosConvention::Split, &tol()).unwrap();
            let full = spacelike_minimal_with_convention(&p1, &x, &q, HorismosConvention::Full, &tol()).unwrap();
            prop_assert_eq!(split, full);
        }
    }

    #[test]
    fn ball_pairings(seed in any::<u64>(), dim in 1usize..=3) {
        let mut s = Sampler::new(seed, dim);
        let x = s.random_event::<f64>(2.0);
        let eps = s.uniform::<f64>(0.1, 1.5);
        let pairs = [
            (TopologyKind::Z, RelationKind::HorismosIrr),
            (TopologyKind::ZS, RelationKind::CausalIrr),
            (TopologyKind::ZSDash, RelationKind::Chrono),
        ];
        for (kind, rel) in pairs {
            let b = BasicNbhd64::bounded(kind, x.clone(), eps).unwrap();
            for q in probes(&mut s, &x, 1.5) {
                let oracle = minimal_via_subbases(&rel, &x, &q, &tol()).unwrap() && dist2(&x, &q) < eps * eps;
                prop_assert_eq!(b.member(&q, &tol()).unwrap(), oracle, "{} q={}", kind, q);
            }
        }
    }

    #[test]
    fn undashed_is_dashed_minus_light_cone(seed in any::<u64>(), dim in 1usize..=3) {
        let mut s = Sampler::new(seed, dim);
        let x = s.random_event::<f64>(2.0);
        let eps = s.uniform::<f64>(0.1, 1.5);
        let cone = punctured_light_cone(&x);
        for kind in TopologyKind::ALL.into_iter().filter(|k| k.dashed().is_some()) {
            let dashed = kind.dashed().unwrap();
            let u = BasicNbhd64::at(kind, x.clone(), eps).unwrap();
            let d = BasicNbhd64::at(dashed, x.clone(), eps).unwrap();
            for q in probes(&mut s, &x, 1.5) {
                let expect = d.member(&q, &tol()).unwrap() && !cone.contains(&q, &tol()).unwrap();
                prop_assert_eq!(u.member(&q, &tol()).unwrap(), expect, "{} q={}", kind, q);
            }
        }
    }

    #[test]
    fn z_splits_into_time_and_space_parts(seed in any::<u64>(), dim in 1usize..=3) {
        let mut s = Sampler::new(seed, dim);
        let x = s.random_event::<f64>(2.0);
        let eps = s.uniform::<f64>(0.1, 1.5);
        let [z, zt, zs] = [TopologyKind::Z, TopologyKind::ZT, TopologyKind::ZS]
            .map(|k| BasicNbhd64::bounded(k, x.clone(), eps).unwrap());
        for q in probes(&mut s, &x, 1.5) {
            let union = zt.member(&q, &tol()).unwrap() || zs.member(&q, &tol()).unwrap();
            prop_assert_eq!(z.member(&q, &tol()).unwrap(), union);
        }
    }

    #[test]
    fn diamonds_and_balls_refine_each_other(seed in any::<u64>(), dim in 1usize..=3) {
        let mut s = Sampler::new(seed, dim);
        let x = s.random_event::<f64>(2.0);
        let eps = s.uniform::<f64>(0.1, 1.5);
        let ball = BasicNbhd64::bounded(TopologyKind::Manifold, x.clone(), eps).unwrap();
        let diamond = BasicNbhd64::bounded(TopologyKind::Alexandrov, x.clone(), eps).unwrap();
        let inner = alexandrov_inner_radius(&diamond).unwrap();
        let small = BasicNbhd64::bounded(TopologyKind::Manifold, x.clone(), inner).unwrap();
        for q in probes(&mut s, &x, eps) {
            if diamond.member(&q, &tol()).unwrap() {
                prop_assert!(ball.member(&q, &tol()).unwrap());
            }
            if small.member(&q, &tol()).unwrap() {
                prop_assert!(diamond.member(&q, &tol()).unwrap());
            }
        }
    }

    #[test]
    fn schedules_nest(seed in any::<u64>(), dim in 1usize..=3) {
        let mut s = Sampler::new(seed, dim);
        let x = s.random_event::<f64>(2.0);
        for kind in TopologyKind::ALL.into_iter().filter(|k| k.is_bounded()) {
            let sets = local_schedule(kind, &x, 1.0, 4).unwrap();
            for q in probes(&mut s, &x, 1.0) {
                let flags: Vec<bool> = sets.iter().map(|b| b.member(&q, &tol()).unwrap()).collect();
                for w in flags.windows(2) {
                    prop_assert!(w[0] || !w[1], "{} q={}", kind, q);
                }
            }
        }
    }
}

#[test]
fn every_set_contains_its_center() {
    let x = Event64::from_f64(&[0.3, -1.0, 2.0]).unwrap();
    for k in TopologyKind::ALL {
        assert!(
            BasicNbhd64::at(k, x.clone(), 0.2).unwrap().member(&x, &tol()).unwrap(),
            "{k}"
        );
    }
}
