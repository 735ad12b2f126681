//! The difference hierarchy over the open sets, realised on points of compact
//! countable spaces.
//!
//! Points of a compact countable term are named by [`PointAddress`] paths. Sets
//! are intensional: parity or threshold conditions on point ranks. The canonical
//! sets `A_a` on `K(a+1)` are reduced to and from the complete sets `B_a` on Baire
//! space by explicit map terms that can be evaluated and sampled.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ordinal::{Ordinal, Parity};
use crate::space::{self, SeqSpec, SpaceError, SpaceTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{0} is not a compact countable space")]
    NotCompactCountable(SpaceTerm),
    #[error("address {address} is not a point of {space}")]
    InvalidAddress { address: PointAddress, space: SpaceTerm },
    #[error("map cannot be applied to {0}")]
    BadMapInput(String),
}

pub type Result<T> = std::result::Result<T, DiffError>;

/// A point of a compact countable term, as a path of member indices.
///
/// Each step selects a part of a finite sum or a member of a gluing. A path
/// ending at a gluing names its basepoint.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct PointAddress(pub Vec<u64>);

impl PointAddress {
    pub fn root() -> PointAddress {
        PointAddress(Vec::new())
    }

    fn prepend(&self, n: u64) -> PointAddress {
        let mut path = Vec::with_capacity(self.0.len() + 1);
        path.push(n);
        path.extend_from_slice(&self.0);
        PointAddress(path)
    }
}

impl fmt::Display for PointAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl std::str::FromStr for PointAddress {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("address must be bracketed: {s}"))?;
        if inner.trim().is_empty() {
            return Ok(PointAddress::root());
        }
        inner
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad index {x:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(PointAddress)
    }
}

fn require_compact_countable(t: &SpaceTerm) -> Result<()> {
    t.validate()?;
    if space::is_compact(t) && space::is_countable(t) {
        Ok(())
    } else {
        Err(DiffError::NotCompactCountable(t.clone()))
    }
}

/// All addresses with at most `depth` steps and member indices at most `depth`.
pub fn enumerate_points(t: &SpaceTerm, depth: u64) -> Result<Vec<PointAddress>> {
    require_compact_countable(t)?;
    let mut out = Vec::new();
    visit_points(t, depth, depth, &mut |p, _| {
        out.push(p.clone());
        true
    })?;
    Ok(out)
}

/// Visits every address with at most `steps` steps and member indices at most
/// `max_index`, together with the CB rank of its point. The visitor returns
/// false to stop; the result is false when it did.
pub fn visit_points(
    t: &SpaceTerm,
    steps: u64,
    max_index: u64,
    visit: &mut dyn FnMut(&PointAddress, &Ordinal) -> bool,
) -> Result<bool> {
    require_compact_countable(t)?;
    let mut path = PointAddress::root();
    collect_points(t, steps, max_index, &mut path, visit)
}

fn collect_points(
    t: &SpaceTerm,
    steps: u64,
    max_index: u64,
    path: &mut PointAddress,
    visit: &mut dyn FnMut(&PointAddress, &Ordinal) -> bool,
) -> Result<bool> {
    match space::normalize(t)? {
        SpaceTerm::Point => Ok(visit(path, &Ordinal::zero())),
        SpaceTerm::SumFin(parts) => {
            if steps == 0 {
                return Ok(true);
            }
            for (i, part) in parts.iter().enumerate() {
                path.0.push(i as u64);
                let go_on = collect_points(part, steps - 1, max_index, path, visit)?;
                path.0.pop();
                if !go_on {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        SpaceTerm::Glue(spec) => {
            if !visit(path, &glue_basepoint_rank(&spec)) {
                return Ok(false);
            }
            if steps == 0 {
                return Ok(true);
            }
            for n in 0..=max_index {
                path.0.push(n);
                let go_on = collect_points(&spec.member(n), steps - 1, max_index, path, visit)?;
                path.0.pop();
                if !go_on {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(DiffError::NotCompactCountable(other)),
    }
}

/// CB rank of the point at `p`.
pub fn point_cb_rank(t: &SpaceTerm, p: &PointAddress) -> Result<Ordinal> {
    require_compact_countable(t)?;
    let invalid = || DiffError::InvalidAddress { address: p.clone(), space: t.clone() };
    let mut cur = t.clone();
    let mut steps = p.0.iter();
    loop {
        match space::normalize(&cur)? {
            SpaceTerm::Point => {
                return if steps.next().is_none() { Ok(Ordinal::zero()) } else { Err(invalid()) };
            }
            SpaceTerm::SumFin(mut parts) => {
                let i = *steps.next().ok_or_else(invalid)? as usize;
                if i >= parts.len() {
                    return Err(invalid());
                }
                cur = parts.swap_remove(i);
            }
            SpaceTerm::Glue(spec) => match steps.next() {
                None => return Ok(glue_basepoint_rank(&spec)),
                Some(&n) => cur = spec.member(n),
            },
            _ => return Err(invalid()),
        }
    }
}

fn glue_basepoint_rank(spec: &SeqSpec) -> Ordinal {
    let (_, tail) = spec.parts();
    space::basepoint_rank(tail).expect("compact countable glue")
}

/// Whether `p` lies in `A_a`: its rank has parity opposite to `a`.
pub fn a_alpha_membership(alpha: &Ordinal, t: &SpaceTerm, p: &PointAddress) -> Result<bool> {
    Ok(point_cb_rank(t, p)?.parity() != alpha.parity())
}

/// An open set described by a rank condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OpenSet {
    Nothing,
    All,
    /// Points of rank at most the bound.
    RankAtMost(Ordinal),
    /// Points of rank strictly below the bound.
    RankBelow(Ordinal),
}

impl OpenSet {
    fn contains(&self, rank: &Ordinal) -> bool {
        match self {
            OpenSet::Nothing => false,
            OpenSet::All => true,
            OpenSet::RankAtMost(b) => rank <= b,
            OpenSet::RankBelow(b) => rank < b,
        }
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpenSet::Nothing => f.write_str("empty"),
            OpenSet::All => f.write_str("all"),
            OpenSet::RankAtMost(b) => write!(f, "rank <= {b}"),
            OpenSet::RankBelow(b) => write!(f, "rank < {b}"),
        }
    }
}

/// A sequence of open sets `(U_g)` indexed by ordinals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OpenSequence {
    /// `U_g` for `g < len`; later indices are empty.
    Explicit(Vec<OpenSet>),
    /// `U_g` is the set of points of rank at most `g`.
    RankThresholds,
}

impl OpenSequence {
    /// Least index `g < alpha` whose set contains a point of the given rank.
    fn least_index(&self, alpha: &Ordinal, rank: &Ordinal) -> Option<Ordinal> {
        match self {
            OpenSequence::Explicit(sets) => sets
                .iter()
                .enumerate()
                .map(|(i, u)| (Ordinal::from(i as u64), u))
                .take_while(|(g, _)| g < alpha)
                .find(|(_, u)| u.contains(rank))
                .map(|(g, _)| g),
            OpenSequence::RankThresholds => (rank < alpha).then(|| rank.clone()),
        }
    }
}

/// Membership of `p` in the difference `D_a((U_g))`.
pub fn eval_difference(
    sets: &OpenSequence,
    alpha: &Ordinal,
    t: &SpaceTerm,
    p: &PointAddress,
) -> Result<bool> {
    let rank = point_cb_rank(t, p)?;
    Ok(sets.least_index(alpha, &rank).is_some_and(|g| g.parity() != alpha.parity()))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RankCondition {
    /// Points whose rank has this parity.
    Parity(Parity),
    /// Points of rank strictly below the bound.
    Below(Ordinal),
}

/// A subset of a compact countable space given by a condition on point ranks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankSet {
    pub space: SpaceTerm,
    pub condition: RankCondition,
}

impl RankSet {
    /// The set `A_a` inside `K(a+1)`.
    pub fn a_alpha(alpha: &Ordinal) -> RankSet {
        RankSet {
            space: SpaceTerm::K(alpha.successor()),
            condition: RankCondition::Parity(alpha.parity().flip()),
        }
    }

    pub fn contains(&self, p: &PointAddress) -> Result<bool> {
        let rank = point_cb_rank(&self.space, p)?;
        Ok(match &self.condition {
            RankCondition::Parity(q) => rank.parity() == *q,
            RankCondition::Below(b) => rank < *b,
        })
    }
}

/// An index `b` and open sets whose `b`-th difference is the given set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferenceWitness {
    pub beta: Ordinal,
    pub opens: OpenSequence,
}

pub fn difference_witness(s: &RankSet) -> Result<DifferenceWitness> {
    require_compact_countable(&s.space)?;
    let r = space::cb_rank(&s.space)?;
    Ok(match &s.condition {
        RankCondition::Below(b) => DifferenceWitness {
            beta: Ordinal::one(),
            opens: OpenSequence::Explicit(vec![OpenSet::RankBelow(b.clone())]),
        },
        // Points have rank below r; thresholds up to r (or r-1) assign each rank its own parity.
        RankCondition::Parity(q) => {
            let beta = if *q == r.parity() {
                r.predecessor().expect("compact countable ranks are successors")
            } else {
                r
            };
            DifferenceWitness { beta, opens: OpenSequence::RankThresholds }
        }
    })
}

// ---------------------------------------------------------------------------
// Baire points and the complete sets B_a

/// An eventually-zero point of Baire space: blocks `(n, m)` spell `0^n (m+1)`,
/// followed by zeros forever.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BairePoint(pub Vec<(u64, u64)>);

impl BairePoint {
    fn split_first(&self) -> Option<((u64, u64), BairePoint)> {
        self.0.split_first().map(|(b, rest)| (*b, BairePoint(rest.to_vec())))
    }

    fn prepend(&self, block: (u64, u64)) -> BairePoint {
        let mut blocks = vec![block];
        blocks.extend_from_slice(&self.0);
        BairePoint(blocks)
    }
}

impl fmt::Display for BairePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, m) in &self.0 {
            for _ in 0..*n {
                f.write_str("0.")?;
            }
            write!(f, "{}.", m + 1)?;
        }
        f.write_str("0^w")
    }
}

/// The odd ordinal used for the `n`-th member of a limit stage.
fn odd_at(alpha: &Ordinal, n: u64) -> Ordinal {
    let a = alpha.fundamental_sequence(n).expect("limit stage");
    match a.parity() {
        Parity::Odd => a,
        Parity::Even => a.successor(),
    }
}

/// Membership in the complete set of the `a`-th difference class on Baire space.
pub fn b_alpha_membership(alpha: &Ordinal, y: &BairePoint) -> bool {
    if alpha.is_zero() {
        return false;
    }
    let Some(((n, _), rest)) = y.split_first() else {
        return false;
    };
    let inner = match alpha.predecessor() {
        Some(beta) => beta,
        None => odd_at(alpha, n),
    };
    !b_alpha_membership(&inner, &rest)
}

// ---------------------------------------------------------------------------
// Reduction maps

/// A point of either a `K` space or Baire space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Point {
    K(PointAddress),
    Baire(BairePoint),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::K(p) => write!(f, "{p}"),
            Point::Baire(y) => write!(f, "{y}"),
        }
    }
}

/// The maps applied inside the members of a gluing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Family {
    /// Every member uses the same map.
    Uniform(Box<MapTerm>),
    /// Members follow the fundamental sequence of a limit, through odd stages.
    AlongLimit { alpha: Ordinal, forward: bool },
}

impl Family {
    /// Target member index and map for source member `n`.
    fn member(&self, n: u64) -> (u64, MapTerm) {
        match self {
            Family::Uniform(f) => (n, (**f).clone()),
            Family::AlongLimit { alpha, forward: true } => {
                let from = alpha.fundamental_sequence(n).expect("limit");
                let odd = odd_at(alpha, n);
                let f = MapTerm::Embed { from, to: odd.clone() }.then(forward_map(&odd));
                (n, f)
            }
            Family::AlongLimit { alpha, forward: false } => {
                let odd = odd_at(alpha, n);
                let j = (n..)
                    .find(|&j| alpha.fundamental_sequence(j).expect("limit") >= odd)
                    .expect("fundamental sequences are cofinal");
                let to = alpha.fundamental_sequence(j).expect("limit");
                (j, backward_map(&odd).then(MapTerm::Embed { from: odd, to }))
            }
        }
    }
}

/// Terms denoting continuous maps between `K` spaces and Baire space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MapTerm {
    Identity,
    ConstantTo(Point),
    /// On `K` points: the basepoint goes to `0^w`, member `n` goes to block `(n, 0)`
    /// followed by the member map. On Baire points: `0^w` goes to the basepoint,
    /// `0^n (m+1) x` goes to member `j` at the image of `x`.
    GlueMap(Family),
    /// Baire to Baire: `0^n (m+1) x` to `0^n 1 x`, fixing `0^w`.
    RetractToGlue,
    /// A rank-preserving closed embedding `K(c+1) -> K(d+1)`.
    Embed { from: Ordinal, to: Ordinal },
    Then(Box<MapTerm>, Box<MapTerm>),
}

impl MapTerm {
    pub fn then(self, next: MapTerm) -> MapTerm {
        MapTerm::Then(Box::new(self), Box::new(next))
    }
}

/// Evaluates a map term at a point.
pub fn apply(map: &MapTerm, p: &Point) -> Result<Point> {
    match (map, p) {
        (MapTerm::Identity, _) => Ok(p.clone()),
        (MapTerm::ConstantTo(q), _) => Ok(q.clone()),
        (MapTerm::Then(f, g), _) => apply(g, &apply(f, p)?),
        (MapTerm::GlueMap(_), Point::K(a)) if a.0.is_empty() => Ok(Point::Baire(BairePoint::default())),
        (MapTerm::GlueMap(fam), Point::K(a)) => {
            let (j, f) = fam.member(a.0[0]);
            match apply(&f, &Point::K(PointAddress(a.0[1..].to_vec())))? {
                Point::Baire(y) => Ok(Point::Baire(y.prepend((j, 0)))),
                other => Err(DiffError::BadMapInput(format!("member image {other} is not in Baire space"))),
            }
        }
        (MapTerm::GlueMap(fam), Point::Baire(y)) => match y.split_first() {
            None => Ok(Point::K(PointAddress::root())),
            Some(((n, _), rest)) => {
                let (j, f) = fam.member(n);
                match apply(&f, &Point::Baire(rest))? {
                    Point::K(a) => Ok(Point::K(a.prepend(j))),
                    other => Err(DiffError::BadMapInput(format!("member image {other} is not a K point"))),
                }
            }
        },
        (MapTerm::RetractToGlue, Point::Baire(y)) => Ok(Point::Baire(match y.split_first() {
            None => y.clone(),
            Some(((n, _), rest)) => rest.prepend((n, 0)),
        })),
        (MapTerm::Embed { from, to }, Point::K(a)) => Ok(Point::K(embed(from, to, a))),
        (m, p) => Err(DiffError::BadMapInput(format!("{m:?} at {p}"))),
    }
}

/// Image of `a` under the canonical embedding `K(c+1) -> K(d+1)`, `c <= d`.
fn embed(c: &Ordinal, d: &Ordinal, a: &PointAddress) -> PointAddress {
    if c >= d {
        return a.clone();
    }
    match d.predecessor() {
        Some(pred) => embed(c, &pred, a).prepend(0),
        None => {
            let j = (0..)
                .find(|&j| d.fundamental_sequence(j).expect("limit") >= *c)
                .expect("cofinal");
            embed(c, &d.fundamental_sequence(j).expect("limit"), a).prepend(j)
        }
    }
}

/// Reduces `A_a` on `K(a+1)` to `B_a` on Baire space.
pub fn forward_map(alpha: &Ordinal) -> MapTerm {
    if alpha.is_zero() {
        return MapTerm::ConstantTo(Point::Baire(BairePoint::default()));
    }
    match alpha.predecessor() {
        Some(beta) => MapTerm::GlueMap(Family::Uniform(Box::new(forward_map(&beta)))),
        None => MapTerm::GlueMap(Family::AlongLimit { alpha: alpha.clone(), forward: true }),
    }
}

/// Reduces `B_a` on Baire space to `A_a` on `K(a+1)`.
pub fn backward_map(alpha: &Ordinal) -> MapTerm {
    if alpha.is_zero() {
        return MapTerm::ConstantTo(Point::K(PointAddress::root()));
    }
    let glue = match alpha.predecessor() {
        Some(beta) => MapTerm::GlueMap(Family::Uniform(Box::new(backward_map(&beta)))),
        None => MapTerm::GlueMap(Family::AlongLimit { alpha: alpha.clone(), forward: false }),
    };
    MapTerm::RetractToGlue.then(glue)
}

/// Maps witnessing that `A_a` and `B_a` are Wadge equivalent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionWitness {
    pub alpha: Ordinal,
    pub forward: MapTerm,
    pub backward: MapTerm,
}

pub fn reduction_for_a(alpha: &Ordinal) -> ReductionWitness {
    ReductionWitness { alpha: alpha.clone(), forward: forward_map(alpha), backward: backward_map(alpha) }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub checked: u64,
    pub mismatches: u64,
    pub example: Option<String>,
    /// The point budget ran out before sampling finished.
    pub truncated: bool,
}

/// Largest number of `K` points sampled by [`verify_reduction`].
pub const POINT_BUDGET: u64 = 250_000;

/// Checks both reductions on every sampled point up to `depth`.
pub fn verify_reduction(w: &ReductionWitness, depth: u64) -> Result<VerificationReport> {
    let space = SpaceTerm::K(w.alpha.successor());
    let a_set = RankSet::a_alpha(&w.alpha);
    let mut report = VerificationReport { checked: 0, mismatches: 0, example: None, truncated: false };
    let mut failure = None;
    let finished = visit_points(&space, depth, depth, &mut |p, rank| {
        if report.checked >= POINT_BUDGET {
            return false;
        }
        let inside = rank.parity() != w.alpha.parity();
        let outcome = apply(&w.forward, &Point::K(p.clone())).map(|image| {
            let hit = matches!(&image, Point::Baire(y) if b_alpha_membership(&w.alpha, y));
            (inside == hit, format!("forward {p} -> {image}"))
        });
        record(&mut report, &mut failure, outcome);
        true
    })?;
    report.truncated = !finished;
    if let Some(e) = failure {
        return Err(e);
    }
    for y in sample_baire(depth) {
        let outcome = apply(&w.backward, &Point::Baire(y.clone())).and_then(|image| {
            let hit = match &image {
                Point::K(a) => a_set.contains(a)?,
                Point::Baire(_) => false,
            };
            Ok((hit == b_alpha_membership(&w.alpha, &y), format!("backward {y} -> {image}")))
        });
        record(&mut report, &mut failure, outcome);
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(report)
}

fn record(
    report: &mut VerificationReport,
    failure: &mut Option<DiffError>,
    outcome: Result<(bool, String)>,
) {
    match outcome {
        Ok((agrees, desc)) => {
            report.checked += 1;
            if !agrees {
                report.mismatches += 1;
                report.example.get_or_insert(desc);
            }
        }
        Err(e) => {
            failure.get_or_insert(e);
        }
    }
}

/// Baire points with at most three blocks, zero runs up to `depth` and digits up to 3.
fn sample_baire(depth: u64) -> Vec<BairePoint> {
    let blocks: Vec<(u64, u64)> =
        (0..=depth).flat_map(|n| (0..3).map(move |m| (n, m))).collect();
    let mut out = vec![BairePoint::default()];
    let mut frontier = vec![BairePoint::default()];
    for _ in 0..3 {
        let next: Vec<BairePoint> = frontier
            .iter()
            .flat_map(|y| blocks.iter().map(move |b| BairePoint([y.0.as_slice(), &[*b]].concat())))
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
