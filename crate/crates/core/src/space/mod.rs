//! Space terms and their topological invariants.
//!
//! A [`SpaceTerm`] denotes a zero-dimensional Polish space built from points,
//! Cantor space, Baire space, finite and countable disjoint sums, pointed
//! gluing of an omega-sequence, and the one-point attachment of a pointed space
//! to a Cantor space. The canonical countable spaces `K(a)`, `Y(a)`, `Z(a)` are
//! kept as sugar and expanded by [`normalize`] on demand.
//!
//! Every invariant is computed by structural recursion. Sequences are drawn
//! from the closed family [`SeqSpec`], so each recursion has a closed form per
//! sequence shape: a finite prefix followed by a constant tail or by a tail of
//! canonical compact spaces whose ranks climb along a fundamental sequence.

mod parse;

use std::fmt;

use thiserror::Error;

use crate::ordinal::Ordinal;

pub use parse::{parse_term, TermParseError};

/// Syntax tree of a zero-dimensional Polish space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SpaceTerm {
    /// Only produced as the expansion of `K(0)`; removed by [`normalize`].
    Empty,
    Point,
    Cantor,
    Baire,
    SumFin(Vec<SpaceTerm>),
    SumOmega(SeqSpec),
    /// Pointed gluing: copies of the members converging to one added basepoint.
    Glue(SeqSpec),
    /// A Cantor space with the basepoint of a pointed space identified with one of its points.
    AttachToCantor(Box<SpaceTerm>),
    K(Ordinal),
    Y(Ordinal),
    Z(Ordinal),
}

/// An omega-sequence of nonempty space terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SeqSpec {
    Constant(Box<SpaceTerm>),
    /// `n -> K(l[n]+1)` for a limit `l`.
    KAlong(Ordinal),
    /// `n -> w * K(l[n]+1)` for a limit `l`.
    OmegaTimesKAlong(Ordinal),
    Prefixed(Vec<SpaceTerm>, Box<SeqSpec>),
}

/// The eventual behaviour of a sequence once its finite prefix is dropped.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Tail<'a> {
    Constant(&'a SpaceTerm),
    KAlong(&'a Ordinal),
    OmegaTimesKAlong(&'a Ordinal),
}

/// Cantor-Bendixson degree: a positive natural or `w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Degree {
    Finite(u64),
    Omega,
}

impl Degree {
    fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::Omega,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(n) => write!(f, "{n}"),
            Degree::Omega => f.write_str("w"),
        }
    }
}

/// The pair (CB-rank, CB-degree) of a countable space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CbType {
    pub rank: Ordinal,
    pub degree: Degree,
}

impl fmt::Display for CbType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rank, self.degree)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("the empty space is not a valid input")]
    EmptySpace,
    #[error("ill-formed term: {0}")]
    IllFormed(String),
    #[error("space is uncountable")]
    Uncountable,
    #[error("perfect kernel is not compact")]
    KernelNotCompact,
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
}

pub type Result<T> = std::result::Result<T, SpaceError>;

impl SeqSpec {
    /// The `n`-th member of the sequence.
    pub fn member(&self, n: u64) -> SpaceTerm {
        match self {
            SeqSpec::Constant(t) => (**t).clone(),
            SeqSpec::KAlong(l) => SpaceTerm::K(along(l, n).successor()),
            SeqSpec::OmegaTimesKAlong(l) => SpaceTerm::SumOmega(SeqSpec::Constant(Box::new(
                SpaceTerm::K(along(l, n).successor()),
            ))),
            SeqSpec::Prefixed(prefix, tail) => match prefix.get(n as usize) {
                Some(t) => t.clone(),
                None => tail.member(n - prefix.len() as u64),
            },
        }
    }

    /// Flattened finite prefix and the eventual tail.
    pub(crate) fn parts(&self) -> (Vec<&SpaceTerm>, Tail<'_>) {
        let mut prefix = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                SeqSpec::Prefixed(p, rest) => {
                    prefix.extend(p.iter());
                    cur = rest;
                }
                SeqSpec::Constant(t) => return (prefix, Tail::Constant(t)),
                SeqSpec::KAlong(l) => return (prefix, Tail::KAlong(l)),
                SeqSpec::OmegaTimesKAlong(l) => return (prefix, Tail::OmegaTimesKAlong(l)),
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SeqSpec::Constant(t) => {
                t.validate()?;
                if **t == SpaceTerm::Empty {
                    return Err(SpaceError::IllFormed("sequence member is empty".into()));
                }
                Ok(())
            }
            SeqSpec::KAlong(l) | SeqSpec::OmegaTimesKAlong(l) => {
                if l.is_limit() {
                    Ok(())
                } else {
                    Err(SpaceError::IllFormed(format!("{l} is not a limit ordinal")))
                }
            }
            SeqSpec::Prefixed(prefix, tail) => {
                if prefix.is_empty() {
                    return Err(SpaceError::IllFormed("empty prefix".into()));
                }
                for t in prefix {
                    t.validate()?;
                    if *t == SpaceTerm::Empty {
                        return Err(SpaceError::IllFormed("sequence member is empty".into()));
                    }
                }
                tail.validate()
            }
        }
    }
}

fn along(l: &Ordinal, n: u64) -> Ordinal {
    l.fundamental_sequence(n).expect("SeqSpec limits are validated")
}

impl SpaceTerm {
    /// `w * t`, the sum of omega copies of `t`.
    pub fn omega_times(t: SpaceTerm) -> SpaceTerm {
        SpaceTerm::SumOmega(SeqSpec::Constant(Box::new(t)))
    }

    /// Checks the well-formedness conditions of every constructor.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceTerm::Empty | SpaceTerm::Point | SpaceTerm::Cantor | SpaceTerm::Baire => Ok(()),
            SpaceTerm::SumFin(parts) => {
                if parts.is_empty() {
                    return Err(SpaceError::IllFormed("sum needs at least one part".into()));
                }
                parts.iter().try_for_each(SpaceTerm::validate)
            }
            SpaceTerm::SumOmega(spec) | SpaceTerm::Glue(spec) => spec.validate(),
            SpaceTerm::AttachToCantor(t) => {
                t.validate()?;
                if !t.is_pointed() {
                    return Err(SpaceError::IllFormed(format!(
                        "attach needs a glue, K or Z term, got {t}"
                    )));
                }
                Ok(())
            }
            SpaceTerm::K(a) => {
                if a.is_successor() {
                    Ok(())
                } else {
                    Err(SpaceError::IllFormed(format!("K({a}) needs a successor index")))
                }
            }
            SpaceTerm::Y(a) | SpaceTerm::Z(a) => {
                if a.is_zero() {
                    Err(SpaceError::IllFormed("Y and Z need a nonzero index".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    fn is_pointed(&self) -> bool {
        matches!(self, SpaceTerm::Glue(_) | SpaceTerm::K(_) | SpaceTerm::Z(_))
    }

    fn checked(&self) -> Result<()> {
        self.validate()?;
        if self.is_empty_space() {
            return Err(SpaceError::EmptySpace);
        }
        Ok(())
    }

    fn is_empty_space(&self) -> bool {
        match self {
            SpaceTerm::Empty => true,
            SpaceTerm::SumFin(parts) => parts.iter().all(SpaceTerm::is_empty_space),
            _ => false,
        }
    }
}

/// Expands `K`, `Y` and `Z` one level, flattens nested finite sums and drops empty parts.
pub fn normalize(t: &SpaceTerm) -> Result<SpaceTerm> {
    t.validate()?;
    Ok(expand(t))
}

fn expand(t: &SpaceTerm) -> SpaceTerm {
    match t {
        SpaceTerm::K(a) => {
            let beta = a.predecessor().expect("validated successor");
            if beta.is_zero() {
                SpaceTerm::Point
            } else if beta.is_limit() {
                SpaceTerm::Glue(SeqSpec::KAlong(beta))
            } else {
                SpaceTerm::Glue(SeqSpec::Constant(Box::new(SpaceTerm::K(beta))))
            }
        }
        SpaceTerm::Y(d) => match d.predecessor() {
            Some(pred) => SpaceTerm::omega_times(SpaceTerm::K(pred.successor())),
            None => SpaceTerm::SumOmega(SeqSpec::KAlong(d.clone())),
        },
        SpaceTerm::Z(d) => match d.predecessor() {
            Some(pred) => SpaceTerm::Glue(SeqSpec::Constant(Box::new(SpaceTerm::omega_times(
                SpaceTerm::K(pred.successor()),
            )))),
            None => SpaceTerm::Glue(SeqSpec::OmegaTimesKAlong(d.clone())),
        },
        SpaceTerm::SumFin(parts) => {
            let mut flat = Vec::new();
            flatten_into(parts, &mut flat);
            match flat.len() {
                0 => SpaceTerm::Empty,
                _ => SpaceTerm::SumFin(flat),
            }
        }
        SpaceTerm::Glue(SeqSpec::Constant(c)) if **c == SpaceTerm::Empty => SpaceTerm::Point,
        other => other.clone(),
    }
}

fn flatten_into(parts: &[SpaceTerm], out: &mut Vec<SpaceTerm>) {
    for p in parts {
        match expand(p) {
            SpaceTerm::Empty => {}
            SpaceTerm::SumFin(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
}

/// The sequence glued by a pointed term, or `None` for the one-point space `K(1)`.
fn pointed_spec(t: &SpaceTerm) -> Option<SeqSpec> {
    match expand(t) {
        SpaceTerm::Glue(spec) => Some(spec),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Countability and compactness

pub fn is_countable(t: &SpaceTerm) -> bool {
    match t {
        SpaceTerm::Empty | SpaceTerm::Point | SpaceTerm::K(_) | SpaceTerm::Y(_) | SpaceTerm::Z(_) => {
            true
        }
        SpaceTerm::Cantor | SpaceTerm::Baire | SpaceTerm::AttachToCantor(_) => false,
        SpaceTerm::SumFin(parts) => parts.iter().all(is_countable),
        SpaceTerm::SumOmega(spec) | SpaceTerm::Glue(spec) => {
            let (prefix, tail) = spec.parts();
            prefix.into_iter().all(is_countable)
                && match tail {
                    Tail::Constant(c) => is_countable(c),
                    _ => true,
                }
        }
    }
}

pub fn is_compact(t: &SpaceTerm) -> bool {
    match t {
        SpaceTerm::Empty | SpaceTerm::Point | SpaceTerm::Cantor | SpaceTerm::K(_) => true,
        SpaceTerm::Baire | SpaceTerm::Y(_) | SpaceTerm::Z(_) | SpaceTerm::SumOmega(_) => false,
        SpaceTerm::SumFin(parts) => parts.iter().all(is_compact),
        SpaceTerm::Glue(spec) => {
            let (prefix, tail) = spec.parts();
            prefix.into_iter().all(is_compact)
                && match tail {
                    Tail::Constant(c) => is_compact(c),
                    Tail::KAlong(_) => true,
                    Tail::OmegaTimesKAlong(_) => false,
                }
        }
        SpaceTerm::AttachToCantor(inner) => is_compact(inner),
    }
}

/// Whether the perfect kernel (the largest subspace without isolated points) is compact.
pub fn kernel_compact(t: &SpaceTerm) -> bool {
    match t {
        SpaceTerm::Baire => false,
        SpaceTerm::Empty
        | SpaceTerm::Point
        | SpaceTerm::Cantor
        | SpaceTerm::K(_)
        | SpaceTerm::Y(_)
        | SpaceTerm::Z(_) => true,
        SpaceTerm::SumFin(parts) => parts.iter().all(kernel_compact),
        // Infinitely many nonempty kernels in a sum form a non-compact kernel.
        SpaceTerm::SumOmega(spec) => {
            let (prefix, tail) = spec.parts();
            prefix.into_iter().all(kernel_compact)
                && match tail {
                    Tail::Constant(c) => is_countable(c),
                    _ => true,
                }
        }
        // Kernels of glued copies converge to the basepoint.
        SpaceTerm::Glue(spec) => {
            let (prefix, tail) = spec.parts();
            prefix.into_iter().all(kernel_compact)
                && match tail {
                    Tail::Constant(c) => kernel_compact(c),
                    _ => true,
                }
        }
        SpaceTerm::AttachToCantor(inner) => kernel_compact(inner),
    }
}

// ---------------------------------------------------------------------------
// Cantor-Bendixson rank and degree

/// Least `b` such that the `b`-th CB derivative equals the perfect kernel.
pub fn cb_rank(t: &SpaceTerm) -> Result<Ordinal> {
    t.checked()?;
    Ok(rank(t))
}

pub(crate) fn rank(t: &SpaceTerm) -> Ordinal {
    match t {
        SpaceTerm::Empty | SpaceTerm::Cantor | SpaceTerm::Baire => Ordinal::zero(),
        SpaceTerm::Point => Ordinal::one(),
        SpaceTerm::K(a) | SpaceTerm::Y(a) => a.clone(),
        SpaceTerm::Z(a) => a.successor(),
        SpaceTerm::SumFin(parts) => parts.iter().map(rank).max().unwrap_or_default(),
        SpaceTerm::SumOmega(spec) => {
            let (prefix, tail) = spec.parts();
            max_rank(&prefix).max(tail_rank_sup(tail))
        }
        SpaceTerm::Glue(spec) => {
            let (prefix, tail) = spec.parts();
            match basepoint_rank(tail) {
                Some(rho) => max_rank(&prefix).max(rho.successor()),
                None => max_rank(&prefix).max(tail_rank_sup(tail)),
            }
        }
        // Derivatives of the attached space stabilise once only the basepoint could survive.
        SpaceTerm::AttachToCantor(inner) => match pointed_spec(inner) {
            Some(spec) => {
                let (prefix, tail) = spec.parts();
                max_rank(&prefix).max(tail_rank_sup(tail))
            }
            None => Ordinal::zero(),
        },
    }
}

fn max_rank(terms: &[&SpaceTerm]) -> Ordinal {
    terms.iter().map(|t| rank(t)).max().unwrap_or_default()
}

/// Supremum of member ranks over the tail.
fn tail_rank_sup(tail: Tail<'_>) -> Ordinal {
    match tail {
        Tail::Constant(c) => rank(c),
        Tail::KAlong(l) | Tail::OmegaTimesKAlong(l) => l.clone(),
    }
}

/// CB rank of the basepoint of a gluing with the given tail: the least `g`
/// such that only finitely many members survive `g` derivatives. `None` when
/// infinitely many members are uncountable, so that the basepoint lies in the kernel.
pub(crate) fn basepoint_rank(tail: Tail<'_>) -> Option<Ordinal> {
    match tail {
        Tail::Constant(c) if !is_countable(c) => None,
        other => Some(tail_rank_sup(other)),
    }
}

/// CB-type of a countable space.
pub fn cb_type(t: &SpaceTerm) -> Result<CbType> {
    t.checked()?;
    if !is_countable(t) {
        return Err(SpaceError::Uncountable);
    }
    let rank = rank(t);
    let degree = if rank.is_limit() { Degree::Omega } else { degree(t, &rank) };
    Ok(CbType { rank, degree })
}

/// Number of points in the last nonempty derivative of a countable `t` of successor rank `r`.
fn degree(t: &SpaceTerm, r: &Ordinal) -> Degree {
    let attainers = |terms: &[&SpaceTerm]| {
        terms
            .iter()
            .filter(|p| rank(p) == *r)
            .fold(Degree::Finite(0), |acc, p| acc.plus(degree(p, r)))
    };
    match t {
        SpaceTerm::Empty => Degree::Finite(0),
        SpaceTerm::Point | SpaceTerm::K(_) | SpaceTerm::Z(_) => Degree::Finite(1),
        SpaceTerm::Y(_) => Degree::Omega,
        SpaceTerm::SumFin(parts) => attainers(&parts.iter().collect::<Vec<_>>()),
        SpaceTerm::SumOmega(spec) => {
            let (prefix, tail) = spec.parts();
            match tail {
                Tail::Constant(c) if rank(c) == *r => Degree::Omega,
                _ => attainers(&prefix),
            }
        }
        SpaceTerm::Glue(spec) => {
            let (prefix, tail) = spec.parts();
            let rho = basepoint_rank(tail).expect("countable glue");
            let own = if rho.successor() == *r { Degree::Finite(1) } else { Degree::Finite(0) };
            own.plus(attainers(&prefix))
        }
        SpaceTerm::Cantor | SpaceTerm::Baire | SpaceTerm::AttachToCantor(_) => {
            unreachable!("uncountable")
        }
    }
}

pub fn is_simple(t: &SpaceTerm) -> Result<bool> {
    let ty = cb_type(t)?;
    Ok(ty.rank.is_successor() && ty.degree == Degree::Finite(1))
}

// ---------------------------------------------------------------------------
// Compact rank

/// Least `a <= cb_rank(t)` such that the `a`-th CB derivative is compact.
pub fn comp_rank(t: &SpaceTerm) -> Result<Ordinal> {
    t.checked()?;
    if !kernel_compact(t) {
        return Err(SpaceError::KernelNotCompact);
    }
    Ok(crank(t))
}

fn crank(t: &SpaceTerm) -> Ordinal {
    if is_compact(t) {
        return Ordinal::zero();
    }
    match t {
        SpaceTerm::Y(d) | SpaceTerm::Z(d) => d.clone(),
        SpaceTerm::SumFin(parts) => parts.iter().map(crank).max().unwrap_or_default(),
        // A sum has compact derivative once cofinitely many members are exhausted.
        SpaceTerm::SumOmega(spec) => {
            let (prefix, tail) = spec.parts();
            let head = prefix.into_iter().map(crank).max().unwrap_or_default();
            head.max(tail_rank_sup(tail))
        }
        SpaceTerm::Glue(spec) => glue_crank(spec),
        SpaceTerm::AttachToCantor(inner) => pointed_spec(inner).map_or_else(Ordinal::zero, |s| glue_crank(&s)),
        SpaceTerm::Empty | SpaceTerm::Point | SpaceTerm::Cantor | SpaceTerm::K(_) => Ordinal::zero(),
        SpaceTerm::Baire => unreachable!("kernel checked"),
    }
}

fn glue_crank(spec: &SeqSpec) -> Ordinal {
    let (prefix, tail) = spec.parts();
    let head = prefix.into_iter().map(crank).max().unwrap_or_default();
    let tail = match tail {
        Tail::Constant(c) => crank(c),
        Tail::KAlong(_) => Ordinal::zero(),
        Tail::OmegaTimesKAlong(l) => l.clone(),
    };
    head.max(tail)
}

// ---------------------------------------------------------------------------
// Clopen spectra below a limit

/// Supremum of `b+1` over the CB ranks `b < alpha` of nonempty clopen subspaces of `t`.
pub fn reach(t: &SpaceTerm, alpha: &Ordinal) -> Result<Ordinal> {
    t.checked()?;
    if !alpha.is_limit() {
        return Err(SpaceError::NotLimit(alpha.clone()));
    }
    Ok(reach_of(t, alpha))
}

fn below(b: &Ordinal, alpha: &Ordinal) -> Ordinal {
    if b < alpha {
        b.successor()
    } else {
        alpha.clone()
    }
}

fn reach_of(t: &SpaceTerm, alpha: &Ordinal) -> Ordinal {
    match t {
        SpaceTerm::Empty => Ordinal::zero(),
        SpaceTerm::Point => Ordinal::from(2),
        SpaceTerm::Cantor | SpaceTerm::Baire => Ordinal::one(),
        // Clopen subsets of K(a) have exactly the successor ranks up to a.
        SpaceTerm::K(a) => below(a, alpha),
        SpaceTerm::Y(_) | SpaceTerm::Z(_) => reach_of(&expand(t), alpha),
        SpaceTerm::SumFin(parts) => parts.iter().map(|p| reach_of(p, alpha)).max().unwrap_or_default(),
        SpaceTerm::SumOmega(spec) => {
            let (prefix, tail) = spec.parts();
            let head = prefix.into_iter().map(|p| reach_of(p, alpha)).max().unwrap_or_default();
            // Unions across infinitely many summands are clopen and realise limits of the spectrum.
            let tail = match tail {
                Tail::Constant(c) => {
                    let r = reach_of(c, alpha);
                    if r.is_limit() && r < *alpha {
                        r.successor()
                    } else {
                        r
                    }
                }
                Tail::KAlong(l) | Tail::OmegaTimesKAlong(l) => below(l, alpha),
            };
            head.max(tail)
        }
        SpaceTerm::Glue(spec) => {
            let (_, tail) = spec.parts();
            let around_base = match basepoint_rank(tail) {
                Some(rho) => below(&rho.successor(), alpha),
                None => below(&tail_rank_sup(tail), alpha),
            };
            member_reach(spec, alpha).max(around_base)
        }
        SpaceTerm::AttachToCantor(inner) => match pointed_spec(inner) {
            Some(spec) => {
                let (_, tail) = spec.parts();
                let around_base = below(&tail_rank_sup(tail), alpha);
                member_reach(&spec, alpha).max(around_base).max(Ordinal::one())
            }
            None => Ordinal::one(),
        },
    }
}

/// Supremum of member reaches: clopens of a gluing that avoid the basepoint.
fn member_reach(spec: &SeqSpec, alpha: &Ordinal) -> Ordinal {
    let (prefix, tail) = spec.parts();
    let head = prefix.into_iter().map(|p| reach_of(p, alpha)).max().unwrap_or_default();
    let tail = match tail {
        Tail::Constant(c) => reach_of(c, alpha),
        Tail::KAlong(l) | Tail::OmegaTimesKAlong(l) => l.clone().min(alpha.clone()),
    };
    head.max(tail)
}

/// Decides whether `t` has an infinite clopen partition whose pieces from some
/// index on have CB ranks below `alpha` and cofinal in it.
///
/// Equivalently: some clopen set disjoint from the `alpha`-th derivative has CB
/// rank exactly `alpha`.
pub fn limit_partition_selfdual(t: &SpaceTerm, alpha: &Ordinal) -> Result<bool> {
    t.checked()?;
    if !kernel_compact(t) {
        return Err(SpaceError::KernelNotCompact);
    }
    if !alpha.is_limit() {
        return Err(SpaceError::NotLimit(alpha.clone()));
    }
    Ok(limit_clopen(t, alpha))
}

fn limit_clopen(t: &SpaceTerm, alpha: &Ordinal) -> bool {
    match t {
        SpaceTerm::Empty | SpaceTerm::Point | SpaceTerm::Cantor | SpaceTerm::Baire | SpaceTerm::K(_) => {
            false
        }
        SpaceTerm::Y(_) | SpaceTerm::Z(_) => limit_clopen(&expand(t), alpha),
        SpaceTerm::SumFin(parts) => parts.iter().any(|p| limit_clopen(p, alpha)),
        SpaceTerm::SumOmega(spec) => {
            let (prefix, tail) = spec.parts();
            prefix.into_iter().any(|p| limit_clopen(p, alpha))
                || match tail {
                    Tail::Constant(c) => limit_clopen(c, alpha) || reach_of(c, alpha) >= *alpha,
                    Tail::KAlong(l) | Tail::OmegaTimesKAlong(l) => l >= alpha,
                }
        }
        // A clopen set avoiding the basepoint meets only finitely many glued members.
        SpaceTerm::Glue(spec) => glue_limit_clopen(spec, alpha),
        SpaceTerm::AttachToCantor(inner) => {
            pointed_spec(inner).is_some_and(|s| glue_limit_clopen(&s, alpha))
        }
    }
}

fn glue_limit_clopen(spec: &SeqSpec, alpha: &Ordinal) -> bool {
    let (prefix, tail) = spec.parts();
    prefix.into_iter().any(|p| limit_clopen(p, alpha))
        || match tail {
            Tail::Constant(c) => limit_clopen(c, alpha),
            Tail::KAlong(_) => false,
            // Some member w*K(a) has a >= alpha.
            Tail::OmegaTimesKAlong(l) => l > alpha,
        }
}

// ---------------------------------------------------------------------------
// Printing in the term grammar

impl fmt::Display for SpaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTerm::Empty => f.write_str("empty"),
            SpaceTerm::Point => f.write_str("1"),
            SpaceTerm::Cantor => f.write_str("C"),
            SpaceTerm::Baire => f.write_str("N"),
            SpaceTerm::K(a) => write!(f, "K({a})"),
            SpaceTerm::Y(a) => write!(f, "Y({a})"),
            SpaceTerm::Z(a) => write!(f, "Z({a})"),
            SpaceTerm::SumFin(parts) => {
                f.write_str("sum(")?;
                write_list(f, parts)?;
                f.write_str(")")
            }
            SpaceTerm::SumOmega(spec) => write!(f, "sumw({spec})"),
            SpaceTerm::Glue(spec) => write!(f, "glue({spec})"),
            SpaceTerm::AttachToCantor(t) => write!(f, "attach({t})"),
        }
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::Constant(t) => write!(f, "const: {t}"),
            SeqSpec::KAlong(l) => write!(f, "K-along: {l}"),
            SeqSpec::OmegaTimesKAlong(l) => write!(f, "wK-along: {l}"),
            SeqSpec::Prefixed(prefix, tail) => {
                f.write_str("prefix([")?;
                write_list(f, prefix)?;
                write!(f, "]; {tail})")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[SpaceTerm]) -> fmt::Result {
    for (i, t) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests;
