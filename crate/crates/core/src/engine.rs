//! The Wadge invariant `(alpha, theta)` and the level structure it determines.
//!
//! `theta` is the length of the hierarchy of a space and `alpha` the least level
//! from which every countable-cofinality limit level is a nonselfdual pair. Both
//! are computed from the CB-type and compact rank by closed-form case analysis.
//!
//! Limit levels of uncountable cofinality are not representable in CNF below
//! epsilon-zero. For the record, those levels always carry a nonselfdual pair.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::ordinal::{ExtOrdinal, Ordinal};
use crate::space::{self, SpaceError, SpaceTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("level {level} is outside [1, {theta})")]
    OutOfRange { level: Ordinal, theta: ExtOrdinal },
    #[error("invalid invariant: {0}")]
    InvalidInvariant(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;

/// The complete Wadge invariant of a zero-dimensional Polish space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WadgeInvariant {
    pub alpha: ExtOrdinal,
    pub theta: ExtOrdinal,
}

impl fmt::Display for WadgeInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, theta={})", self.alpha, self.theta)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum LevelKind {
    SelfdualDegree,
    NonselfdualPair,
}

impl LevelKind {
    fn flip(self) -> LevelKind {
        match self {
            LevelKind::SelfdualDegree => LevelKind::NonselfdualPair,
            LevelKind::NonselfdualPair => LevelKind::SelfdualDegree,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LevelLabel {
    /// The difference class of the given index over the open sets, and its dual.
    DifferenceClassPair(Ordinal),
    /// `{X}` and `{empty}`.
    BottomPair,
    /// Nontrivial clopen sets.
    ClopenDegree,
    /// The selfdual degree following the given number of nonselfdual pairs.
    SelfdualSupremum(Ordinal),
    /// Every subset of a non-simple countable space.
    FullPowerSet,
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelLabel::DifferenceClassPair(b) => write!(f, "DifferenceClassPair({b})"),
            LevelLabel::BottomPair => f.write_str("BottomPair"),
            LevelLabel::ClopenDegree => f.write_str("ClopenDegree"),
            LevelLabel::SelfdualSupremum(b) => write!(f, "SelfdualSupremum({b})"),
            LevelLabel::FullPowerSet => f.write_str("FullPowerSet"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LevelDescription {
    pub level: Ordinal,
    pub kind: LevelKind,
    pub label: LevelLabel,
}

pub fn theta_of(t: &SpaceTerm) -> Result<ExtOrdinal> {
    let rank = space::cb_rank(t)?;
    if !space::is_countable(t) {
        return Ok(ExtOrdinal::BigTheta);
    }
    let simple = space::is_simple(t)?;
    let (lambda, n) = rank.split();
    let theta = if lambda.is_zero() {
        Ordinal::from(if simple { 2 * n } else { 2 * n + 1 })
    } else if n == 0 {
        lambda.successor()
    } else {
        let beta = u64::from(!simple);
        let delta = match alpha_of(t)? {
            ExtOrdinal::Countable(a) => u64::from(a > lambda),
            ExtOrdinal::BigTheta => 1,
        };
        lambda.plus(2 * n + beta + delta - 1)
    };
    Ok(ExtOrdinal::Countable(theta))
}

pub fn alpha_of(t: &SpaceTerm) -> Result<ExtOrdinal> {
    let r = match space::comp_rank(t) {
        Ok(r) => r,
        Err(SpaceError::KernelNotCompact) => return Ok(ExtOrdinal::BigTheta),
        Err(e) => return Err(e.into()),
    };
    let (base, n) = r.split();
    let alpha = if n > 0 {
        if base.is_zero() {
            Ordinal::zero()
        } else {
            base.successor()
        }
    } else if r.is_zero() {
        Ordinal::zero()
    } else if space::limit_partition_selfdual(t, &r)? {
        r.successor()
    } else if r == Ordinal::omega() {
        Ordinal::zero()
    } else if r.is_limit_of_limits() {
        r
    } else {
        r.strip_omega().expect("limit of the form l+w").successor()
    };
    Ok(ExtOrdinal::Countable(alpha))
}

pub fn wadge_invariant(t: &SpaceTerm) -> Result<WadgeInvariant> {
    Ok(WadgeInvariant { alpha: alpha_of(t)?, theta: theta_of(t)? })
}

pub fn same_hierarchy(a: &SpaceTerm, b: &SpaceTerm) -> Result<bool> {
    Ok(wadge_invariant(a)? == wadge_invariant(b)?)
}

fn check_range(level: &Ordinal, inv: &WadgeInvariant) -> Result<()> {
    let in_range = !level.is_zero() && ExtOrdinal::Countable(level.clone()) < inv.theta;
    if in_range {
        Ok(())
    } else {
        Err(EngineError::OutOfRange { level: level.clone(), theta: inv.theta.clone() })
    }
}

pub fn level_kind(t: &SpaceTerm, a: &Ordinal) -> Result<LevelKind> {
    let inv = wadge_invariant(t)?;
    check_range(a, &inv)?;
    Ok(kind_at(a, &inv.alpha))
}

fn kind_at(a: &Ordinal, alpha: &ExtOrdinal) -> LevelKind {
    let (lambda, n) = a.split();
    let at_base = if lambda.is_zero() {
        // Level 0 does not exist; treating it as selfdual makes 1 nonselfdual.
        LevelKind::SelfdualDegree
    } else if ExtOrdinal::Countable(lambda.clone()) < *alpha {
        LevelKind::SelfdualDegree
    } else {
        LevelKind::NonselfdualPair
    };
    if n % 2 == 0 {
        at_base
    } else {
        at_base.flip()
    }
}

/// Number of nonselfdual levels strictly below `a`, as an ordinal.
fn nonselfdual_below(a: &Ordinal, alpha: &ExtOrdinal) -> Ordinal {
    let (lambda, n) = a.split();
    if lambda.is_zero() {
        return Ordinal::from(n / 2);
    }
    let extra = match kind_at(&lambda, alpha) {
        LevelKind::NonselfdualPair => n.div_ceil(2),
        LevelKind::SelfdualDegree => n / 2,
    };
    lambda.plus(extra)
}

pub fn describe_level(t: &SpaceTerm, a: &Ordinal) -> Result<LevelDescription> {
    let inv = wadge_invariant(t)?;
    check_range(a, &inv)?;
    let simple = space::is_countable(t) && space::is_simple(t)?;
    Ok(describe(a, &inv, space::is_countable(t) && !simple))
}

fn describe(a: &Ordinal, inv: &WadgeInvariant, countable_non_simple: bool) -> LevelDescription {
    let kind = kind_at(a, &inv.alpha);
    let count = nonselfdual_below(a, &inv.alpha);
    let label = match kind {
        LevelKind::NonselfdualPair if count.is_zero() => LevelLabel::BottomPair,
        LevelKind::NonselfdualPair => LevelLabel::DifferenceClassPair(count),
        LevelKind::SelfdualDegree => {
            let is_top = inv.theta == ExtOrdinal::Countable(a.successor());
            if countable_non_simple && is_top {
                LevelLabel::FullPowerSet
            } else if *a == Ordinal::from(2) {
                LevelLabel::ClopenDegree
            } else {
                LevelLabel::SelfdualSupremum(count)
            }
        }
    };
    LevelDescription { level: a.clone(), kind, label }
}

/// Bounds on which levels a rendering lists.
#[derive(Clone, Debug)]
pub struct RenderWindow {
    /// Largest CNF coefficient, applied recursively to exponents.
    pub max_coeff: u64,
    pub max_levels: usize,
}

impl Default for RenderWindow {
    fn default() -> Self {
        RenderWindow { max_coeff: 6, max_levels: 512 }
    }
}

#[derive(Clone, Debug)]
pub struct Rendering {
    pub levels: Vec<LevelDescription>,
    /// Some levels below the bound were skipped by the window.
    pub truncated: bool,
}

pub fn hierarchy_render(t: &SpaceTerm, up_to: &Ordinal) -> Result<Vec<LevelDescription>> {
    Ok(hierarchy_render_with(t, up_to, &RenderWindow::default())?.levels)
}

pub fn hierarchy_render_with(
    t: &SpaceTerm,
    up_to: &Ordinal,
    window: &RenderWindow,
) -> Result<Rendering> {
    let inv = wadge_invariant(t)?;
    let bound = ExtOrdinal::Countable(up_to.clone());
    if bound > inv.theta {
        return Err(EngineError::OutOfRange { level: up_to.clone(), theta: inv.theta });
    }
    let countable_non_simple = space::is_countable(t) && !space::is_simple(t)?;
    let (levels, complete) = representable_below(up_to, window);
    let levels = levels
        .iter()
        .filter(|a| !a.is_zero())
        .map(|a| describe(a, &inv, countable_non_simple))
        .collect();
    Ok(Rendering { levels, truncated: !complete })
}

/// Ordinals below `bound` whose CNF coefficients (recursively) stay within the
/// window, in increasing order. The flag is true when nothing was skipped.
fn representable_below(bound: &Ordinal, window: &RenderWindow) -> (Vec<Ordinal>, bool) {
    if let Some(n) = bound.as_finite() {
        let n = n.min(window.max_levels as u64);
        return ((0..n).map(Ordinal::from).collect(), n == bound.as_finite().unwrap());
    }
    let (exps, _) = representable_below(&bound.leading_exponent().successor(), window);
    let mut out = Vec::new();
    let _ = enumerate_from(Ordinal::zero(), exps.len(), &exps, bound, window, &mut out);
    (out, false)
}

fn enumerate_from(
    prefix: Ordinal,
    exp_limit: usize,
    exps: &[Ordinal],
    bound: &Ordinal,
    window: &RenderWindow,
    out: &mut Vec<Ordinal>,
) -> ControlFlow<()> {
    if prefix >= *bound || out.len() >= window.max_levels {
        return ControlFlow::Break(());
    }
    out.push(prefix.clone());
    for (i, e) in exps[..exp_limit].iter().enumerate() {
        for c in 1..=window.max_coeff {
            let next = prefix.add(&Ordinal::monomial(e.clone(), c));
            enumerate_from(next, i, exps, bound, window, out)?;
        }
    }
    ControlFlow::Continue(())
}

/// Checks the shape constraints on `(alpha, theta)`.
pub fn validate_invariant(inv: &WadgeInvariant) -> Result<()> {
    let bad = |msg: String| Err(EngineError::InvalidInvariant(msg));
    if inv.alpha > inv.theta {
        return bad(format!("alpha {} exceeds theta {}", inv.alpha, inv.theta));
    }
    if let ExtOrdinal::Countable(theta) = &inv.theta {
        if !theta.is_successor() || *theta < Ordinal::from(2) {
            return bad(format!("theta {theta} must be a successor of at least 2"));
        }
    }
    if let ExtOrdinal::Countable(alpha) = &inv.alpha {
        let admissible = alpha.is_zero()
            || alpha.is_limit_of_limits()
            || alpha.predecessor().is_some_and(|p| p.is_limit());
        if !admissible {
            return bad(format!("alpha {alpha} must be 0, l+1 for a limit l, or a limit of limits"));
        }
    }
    Ok(())
}

/// Builds a space term with the given invariant.
pub fn realize_invariant(inv: &WadgeInvariant) -> Result<SpaceTerm> {
    validate_invariant(inv)?;
    let theta = match &inv.theta {
        ExtOrdinal::BigTheta => return Ok(realize_uncountable(&inv.alpha)),
        ExtOrdinal::Countable(theta) => theta,
    };
    let alpha = inv.alpha.countable().expect("alpha <= theta").clone();
    let (lambda, m) = theta.split();
    if lambda.is_zero() {
        // Finite ranks only admit alpha = 0, which validation already forced.
        let n = m / 2;
        return Ok(if m % 2 == 0 {
            SpaceTerm::K(Ordinal::from(n))
        } else {
            SpaceTerm::SumFin(vec![SpaceTerm::K(Ordinal::from(n)), SpaceTerm::K(Ordinal::from(n))])
        });
    }
    let alpha_high = alpha == lambda.successor();
    if m == 1 && alpha_high {
        return Ok(SpaceTerm::Y(lambda));
    }
    let (n, simple) = if m == 1 {
        (1, true)
    } else if m % 2 == 0 {
        (m / 2, alpha_high)
    } else if alpha_high {
        ((m - 1) / 2, false)
    } else {
        (m.div_ceil(2), true)
    };
    let top = lambda.plus(n);
    let mut parts = vec![SpaceTerm::K(top.clone())];
    if !simple {
        parts.push(SpaceTerm::K(top));
    }
    if alpha_high {
        parts.push(SpaceTerm::Y(lambda));
    } else if let Some(mu) = alpha.predecessor() {
        parts.push(SpaceTerm::Y(mu));
    } else if !alpha.is_zero() {
        if alpha == lambda && n == 1 {
            parts[0] = SpaceTerm::Z(lambda);
        } else {
            parts.push(SpaceTerm::Z(alpha));
        }
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SpaceTerm::SumFin(parts) })
}

fn realize_uncountable(alpha: &ExtOrdinal) -> SpaceTerm {
    let alpha = match alpha {
        ExtOrdinal::BigTheta => return SpaceTerm::Baire,
        ExtOrdinal::Countable(a) => a,
    };
    if alpha.is_zero() {
        return SpaceTerm::Cantor;
    }
    let extra = match alpha.predecessor() {
        Some(lambda) => SpaceTerm::Y(lambda),
        None => SpaceTerm::Z(alpha.clone()),
    };
    SpaceTerm::SumFin(vec![SpaceTerm::Cantor, extra])
}
