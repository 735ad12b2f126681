//! Independent checks and random inputs.
//!
//! A compact countable space is homeomorphic to a countable successor ordinal,
//! and its CB-type can be read off the leading Cantor normal form term of that
//! ordinal. [`cb_type_oracle`] computes the type this way, so it shares no logic
//! with the derivative bookkeeping in [`crate::space`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ordinal::Ordinal;
use crate::space::{self, CbType, Degree, SeqSpec, SpaceError, SpaceTerm};

/// Order type of a canonical well-ordering of a compact countable space.
pub fn order_type(t: &SpaceTerm) -> Result<Ordinal, SpaceError> {
    t.validate()?;
    tau(t).ok_or_else(|| SpaceError::IllFormed(format!("{t} is not compact and countable")))
}

fn tau(t: &SpaceTerm) -> Option<Ordinal> {
    match t {
        SpaceTerm::Point => Some(Ordinal::one()),
        SpaceTerm::K(a) => {
            let beta = a.predecessor()?;
            if beta.is_zero() {
                Some(Ordinal::one())
            } else if beta.is_limit() {
                Some(tau_seq(&SeqSpec::KAlong(beta))?.successor())
            } else {
                Some(tau(&SpaceTerm::K(beta))?.mul(&Ordinal::omega()).successor())
            }
        }
        SpaceTerm::SumFin(parts) => {
            parts.iter().try_fold(Ordinal::zero(), |acc, p| Some(acc.add(&tau(p)?)))
        }
        SpaceTerm::Glue(spec) => Some(tau_seq(spec)?.successor()),
        _ => None,
    }
}

/// Order type of the ordinal sum of all members.
fn tau_seq(spec: &SeqSpec) -> Option<Ordinal> {
    match spec {
        SeqSpec::Constant(c) => Some(tau(c)?.mul(&Ordinal::omega())),
        SeqSpec::KAlong(l) => Some(Ordinal::omega_pow(l.clone())),
        SeqSpec::OmegaTimesKAlong(_) => None,
        SeqSpec::Prefixed(prefix, tail) => {
            let head = prefix.iter().try_fold(Ordinal::zero(), |acc, p| Some(acc.add(&tau(p)?)))?;
            Some(head.add(&tau_seq(tail)?))
        }
    }
}

/// CB-type read from the leading CNF term of the order type.
pub fn cb_type_oracle(t: &SpaceTerm) -> Result<CbType, SpaceError> {
    let tau = order_type(t)?;
    let (exp, coeff) = tau.cnf().next().map(|(e, c)| (e.clone(), c)).expect("nonempty");
    if !tau.is_successor() {
        return Err(SpaceError::IllFormed(format!("order type {tau} is not a successor")));
    }
    Ok(CbType { rank: exp.successor(), degree: Degree::Finite(coeff) })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TermFilter {
    #[default]
    Any,
    Countable,
    Compact,
    CompactCountable,
    CompactKernel,
}

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub max_depth: u32,
    pub ordinal_pool: Vec<Ordinal>,
    pub allow_uncountable: bool,
    pub seed: u64,
    pub filter: TermFilter,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        let pool = ["1", "2", "3", "w", "w+1", "w*2", "w*3+2", "w^2", "w^2+w"];
        GeneratorConfig {
            max_depth: 3,
            ordinal_pool: pool.iter().map(|s| s.parse().unwrap()).collect(),
            allow_uncountable: true,
            seed: 0,
            filter: TermFilter::Any,
        }
    }
}

/// An endless, seed-determined stream of well-formed nonempty terms.
pub struct TermStream {
    cfg: GeneratorConfig,
    rng: ChaCha8Rng,
}

pub fn generate_terms(cfg: GeneratorConfig) -> TermStream {
    let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    TermStream { cfg, rng }
}

impl Iterator for TermStream {
    type Item = SpaceTerm;

    fn next(&mut self) -> Option<SpaceTerm> {
        let compact = matches!(self.cfg.filter, TermFilter::Compact | TermFilter::CompactCountable);
        let uncountable = self.cfg.allow_uncountable
            && !matches!(self.cfg.filter, TermFilter::Countable | TermFilter::CompactCountable);
        loop {
            let t = self.term(self.cfg.max_depth, compact, uncountable);
            if self.accepts(&t) {
                return Some(t);
            }
        }
    }
}

impl TermStream {
    fn accepts(&self, t: &SpaceTerm) -> bool {
        if t.validate().is_err() {
            return false;
        }
        match self.cfg.filter {
            TermFilter::Any => true,
            TermFilter::Countable => space::is_countable(t),
            TermFilter::Compact => space::is_compact(t),
            TermFilter::CompactCountable => space::is_compact(t) && space::is_countable(t),
            TermFilter::CompactKernel => space::kernel_compact(t),
        }
    }

    fn pick(&mut self) -> Ordinal {
        self.cfg.ordinal_pool.choose(&mut self.rng).cloned().unwrap_or_else(Ordinal::one)
    }

    fn pick_limit(&mut self) -> Option<Ordinal> {
        let limits: Vec<Ordinal> =
            self.cfg.ordinal_pool.iter().filter(|o| o.is_limit()).cloned().collect();
        limits.choose(&mut self.rng).cloned()
    }

    fn successor_index(&mut self) -> Ordinal {
        let a = self.pick();
        if a.is_successor() {
            a
        } else {
            a.successor()
        }
    }

    fn nonzero_index(&mut self) -> Ordinal {
        let a = self.pick();
        if a.is_zero() {
            Ordinal::one()
        } else {
            a
        }
    }

    fn leaf(&mut self, compact: bool, uncountable: bool) -> SpaceTerm {
        let choices = if compact { 3 } else { 5 };
        match self.rng.gen_range(0..choices + if uncountable { 2 } else { 0 }) {
            0 => SpaceTerm::Point,
            1 | 2 => SpaceTerm::K(self.successor_index()),
            c if c < choices => {
                if c == 3 {
                    SpaceTerm::Y(self.nonzero_index())
                } else {
                    SpaceTerm::Z(self.nonzero_index())
                }
            }
            c if c == choices => SpaceTerm::Cantor,
            _ if compact => SpaceTerm::Cantor,
            _ => SpaceTerm::Baire,
        }
    }

    fn term(&mut self, depth: u32, compact: bool, uncountable: bool) -> SpaceTerm {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.leaf(compact, uncountable);
        }
        let kinds = if uncountable { 4 } else { 3 };
        match self.rng.gen_range(0..kinds) {
            0 => {
                let n = self.rng.gen_range(2..=3);
                SpaceTerm::SumFin((0..n).map(|_| self.term(depth - 1, compact, uncountable)).collect())
            }
            1 if !compact => SpaceTerm::SumOmega(self.seq(depth - 1, false, uncountable)),
            1 | 2 => SpaceTerm::Glue(self.seq(depth - 1, compact, uncountable)),
            _ => {
                let inner = match self.term(depth - 1, compact, uncountable) {
                    t @ (SpaceTerm::Glue(_) | SpaceTerm::K(_) | SpaceTerm::Z(_)) => t,
                    other => SpaceTerm::Glue(SeqSpec::Constant(Box::new(other))),
                };
                SpaceTerm::AttachToCantor(Box::new(inner))
            }
        }
    }

    fn seq(&mut self, depth: u32, compact: bool, uncountable: bool) -> SeqSpec {
        let tail = match (self.rng.gen_range(0..3), self.pick_limit()) {
            (1, Some(l)) => SeqSpec::KAlong(l),
            (2, Some(l)) if !compact => SeqSpec::OmegaTimesKAlong(l),
            _ => SeqSpec::Constant(Box::new(self.term(depth, compact, uncountable))),
        };
        if self.rng.gen_bool(0.3) {
            let n = self.rng.gen_range(1..=2);
            let prefix = (0..n).map(|_| self.term(depth, compact, uncountable)).collect();
            SeqSpec::Prefixed(prefix, Box::new(tail))
        } else {
            tail
        }
    }
}
