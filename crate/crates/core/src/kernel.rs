//! Exact topology algebra on finite ground sets, subsets encoded as bitmasks.
//!
//! Ground sets are capped at 12 points so every closure is computed
//! exhaustively.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 12;

pub type Mask = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    n: usize,
}

impl FiniteSpace {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_POINTS).contains(&n) {
            return Err(Error::GroundSetSize(n));
        }
        Ok(Self { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> Mask {
        (1 << self.n) - 1
    }

    pub fn singleton(&self, i: usize) -> Mask {
        assert!(i < self.n);
        1 << i
    }

    pub fn set(&self, points: &[usize]) -> Mask {
        points.iter().fold(0, |m, &i| m | self.singleton(i))
    }

    pub fn discrete(&self) -> SetFamily {
        SetFamily::new(*self, 0..=self.full())
    }

    pub fn indiscrete(&self) -> SetFamily {
        SetFamily::new(*self, [0, self.full()])
    }
}

/// A family of subsets. Structural properties are computed on demand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    space: FiniteSpace,
    sets: BTreeSet<Mask>,
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.space.n;
        let shown: Vec<String> = self
            .sets
            .iter()
            .map(|&m| {
                let pts: Vec<String> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        write!(f, "SetFamily(n={n}; {})", shown.join(" "))
    }
}

impl SetFamily {
    pub fn new(space: FiniteSpace, sets: impl IntoIterator<Item = Mask>) -> Self {
        let full = space.full();
        Self {
            space,
            sets: sets.into_iter().map(|m| m & full).collect(),
        }
    }

    pub fn space(&self) -> FiniteSpace {
        self.space
    }

    pub fn sets(&self) -> impl Iterator<Item = Mask> + '_ {
        self.sets.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.sets.contains(&m)
    }

    pub fn is_cover(&self) -> bool {
        self.sets.iter().fold(0, |acc, &m| acc | m) == self.space.full()
    }

    pub fn closed_under_intersection(&self) -> bool {
        self.first_pair_violation(|a, b| a & b).is_none()
    }

    pub fn closed_under_union(&self) -> bool {
        self.first_pair_violation(|a, b| a | b).is_none()
    }

    fn first_pair_violation(&self, op: impl Fn(Mask, Mask) -> Mask) -> Option<Mask> {
        let v: Vec<Mask> = self.sets.iter().copied().collect();
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                let c = op(a, b);
                if !self.sets.contains(&c) {
                    return Some(c);
                }
            }
        }
        None
    }

    pub fn is_topology(&self) -> bool {
        self.contains(0)
            && self.contains(self.space.full())
            && self.closed_under_union()
            && self.closed_under_intersection()
    }

    /// Base axioms: covers the ground set, and every point of `B1 ∩ B2` has
    /// a member `B3 ⊆ B1 ∩ B2` containing it. Returns the first offending
    /// intersection on failure.
    pub fn base_violation(&self) -> Option<Mask> {
        if !self.is_cover() {
            return Some(self.space.full());
        }
        let v: Vec<Mask> = self.sets.iter().copied().collect();
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i..] {
                let inter = a & b;
                let covered = v.iter().filter(|&&c| c & !inter == 0).fold(0, |acc, &c| acc | c);
                if covered != inter {
                    return Some(inter);
                }
            }
        }
        None
    }

    pub fn is_base(&self) -> bool {
        self.base_violation().is_none()
    }

    /// Whether `self` is a base for the topology `t`: every member is open
    /// and every open set is a union of members. Returns a counterexample.
    pub fn base_for_violation(&self, t: &SetFamily) -> Option<Mask> {
        if let Some(m) = self.sets.iter().find(|m| !t.contains(**m)) {
            return Some(*m);
        }
        t.sets
            .iter()
            .find(|&&u| {
                let union = self.sets.iter().filter(|&&b| b & !u == 0).fold(0, |acc, &b| acc | b);
                union != u
            })
            .copied()
    }

    fn pairwise_meets(&self, other: &SetFamily) -> SetFamily {
        assert_eq!(self.space, other.space, "same ground set");
        SetFamily::new(
            self.space,
            self.sets.iter().flat_map(|&a| other.sets.iter().map(move |&b| a & b)),
        )
    }
}

fn close_under(
    space: FiniteSpace,
    seed: Mask,
    sets: impl Iterator<Item = Mask>,
    op: fn(Mask, Mask) -> Mask,
) -> BTreeSet<Mask> {
    let mut acc: BTreeSet<Mask> = BTreeSet::from([seed]);
    for s in sets {
        let s = s & space.full();
        let next: Vec<Mask> = acc.iter().map(|&r| op(r, s)).collect();
        acc.extend(next);
    }
    acc
}

/// Topology generated by a subbase: finite intersections (the empty one is
/// `X`), then arbitrary unions (the empty one is `∅`).
pub fn generate_from_subbase(s: &SetFamily) -> SetFamily {
    let space = s.space;
    let base = close_under(space, space.full(), s.sets(), |a, b| a & b);
    let top = close_under(space, 0, base.into_iter(), |a, b| a | b);
    SetFamily { space, sets: top }
}

/// Result of [`intersection_topology`]; failure to form a base is a value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionOutcome {
    Topology(SetFamily),
    NotABase { counterexample: Mask },
}

impl IntersectionOutcome {
    pub fn topology(self) -> Option<SetFamily> {
        match self {
            IntersectionOutcome::Topology(t) => Some(t),
            IntersectionOutcome::NotABase { .. } => None,
        }
    }
}

/// Topology based on `{U1 ∩ U2 : U1 ∈ t1, U2 ∈ t2}`, provided that family
/// is a base.
pub fn intersection_topology(t1: &SetFamily, t2: &SetFamily) -> IntersectionOutcome {
    let meets = t1.pairwise_meets(t2);
    match meets.base_violation() {
        Some(m) => IntersectionOutcome::NotABase { counterexample: m },
        None => IntersectionOutcome::Topology(generate_from_subbase(&meets)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Report {
    /// `{B1 ∩ B2}` is a base for the intersection topology of the generated
    /// topologies.
    pub part1: bool,
    /// The topology generated by `{B1 ∩ B2}` equals the intersection topology.
    pub part2: bool,
    pub counterexample: Option<Mask>,
    pub intersection: Option<SetFamily>,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.part1 && self.part2
    }
}

/// Checks both halves of the base lemma for intersection topologies on the
/// given bases.
pub fn verify_lemma1(b1: &SetFamily, b2: &SetFamily) -> Result<Lemma1Report> {
    for b in [b1, b2] {
        if let Some(m) = b.base_violation() {
            return Err(Error::NotABase(m));
        }
    }
    let t1 = generate_from_subbase(b1);
    let t2 = generate_from_subbase(b2);
    let bint = b1.pairwise_meets(b2);
    let tint = match intersection_topology(&t1, &t2) {
        IntersectionOutcome::Topology(t) => t,
        IntersectionOutcome::NotABase { counterexample } => {
            return Ok(Lemma1Report {
                part1: false,
                part2: false,
                counterexample: Some(counterexample),
                intersection: None,
            })
        }
    };
    let v1 = bint.base_violation().or_else(|| bint.base_for_violation(&tint));
    let generated = generate_from_subbase(&bint);
    let v2 = if bint.is_base() {
        generated.sets.symmetric_difference(&tint.sets).next().copied()
    } else {
        None
    };
    Ok(Lemma1Report {
        part1: v1.is_none(),
        part2: v2.is_none(),
        counterexample: v1.or(v2),
        intersection: Some(tint),
    })
}

/// Random base: a few random subsets closed under pairwise intersection,
/// plus the whole set.
pub fn random_base<R: Rng>(rng: &mut R, space: FiniteSpace) -> SetFamily {
    let k = rng.gen_range(1..=space.n + 2);
    let raw: Vec<Mask> = (0..k).map(|_| rng.gen_range(0..=space.full())).collect();
    let closed = close_under(space, space.full(), raw.into_iter(), |a, b| a & b);
    SetFamily { space, sets: closed }
}
