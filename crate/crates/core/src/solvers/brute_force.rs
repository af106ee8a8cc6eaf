use crate::election::ShiftEvaluator;
use crate::{Error, Guarantee, Instance, PriceList, Result, Rule, SolveResult};

use super::Best;

/// Largest number of search nodes the oracle visits before giving up.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// Restrictions on the actions the oracle considers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// At most this many effective unit shifts in total.
    pub max_shifts: Option<usize>,
    /// At most this many voters with a nonzero shift.
    pub max_affected: Option<usize>,
}

pub fn brute_force(inst: &Instance, rule: Rule) -> Result<SolveResult> {
    brute_force_with(inst, rule, BruteForceOptions::default())
}

/// Exhaustive search over all shift actions; returns the cheapest successful one,
/// breaking ties towards the lexicographically smallest action.
pub fn brute_force_with(inst: &Instance, rule: Rule, opts: BruteForceOptions) -> Result<SolveResult> {
    let caps = inst.caps();
    if inst.budget().is_none() && opts == BruteForceOptions::default() {
        let size = caps.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c as u64 + 1));
        if size.is_none_or(|s| s > ENUMERATION_LIMIT) {
            return Err(Error::EnumerationTooLarge(format!(
                "more than {ENUMERATION_LIMIT} shift actions"
            )));
        }
    }
    let ev = inst.evaluator(rule);
    let mut cheapest_next = vec![None; caps.len() + 1];
    for v in (0..caps.len()).rev() {
        let own = (caps[v] > 0).then(|| inst.prices().get(v).price(1));
        cheapest_next[v] = match (own, cheapest_next[v + 1]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    let mut search = Search {
        ev: &ev,
        prices: inst.prices(),
        caps: &caps,
        cheapest_next,
        opts,
        budget: inst.budget(),
        best: Best::default(),
        current: vec![0; caps.len()],
        delta: vec![0; inst.num_candidates()],
        nodes: 0,
    };
    search.visit(0, 0, 0, 0)?;
    let nodes = search.nodes;
    SolveResult::conclude(inst, rule, search.best.action, Guarantee::Exact, nodes)
}

struct Search<'a> {
    ev: &'a ShiftEvaluator,
    prices: &'a PriceList,
    caps: &'a [usize],
    /// Least price of a first unit shift among voters `v..`.
    cheapest_next: Vec<Option<u64>>,
    opts: BruteForceOptions,
    budget: Option<u64>,
    best: Best,
    current: Vec<usize>,
    delta: Vec<i64>,
    nodes: u64,
}

impl Search<'_> {
    fn visit(&mut self, v: usize, cost: u64, shifts: usize, affected: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > ENUMERATION_LIMIT {
            return Err(Error::EnumerationTooLarge(format!(
                "search exceeded {ENUMERATION_LIMIT} nodes"
            )));
        }
        let stuck = self.opts.max_affected.is_some_and(|a| affected >= a)
            || self.opts.max_shifts.is_some_and(|t| shifts >= t)
            || self.cheapest_next[v].is_none_or(|p| {
                let c = cost.saturating_add(p);
                self.budget.is_some_and(|b| c > b) || !self.best.beats(c)
            });
        if stuck {
            if self.ev.wins_with_passes(&self.delta) {
                self.best.offer(cost, &self.current);
            }
            return Ok(());
        }
        let f = self.prices.get(v);
        let mut applied = 0;
        for k in 0..=self.caps[v] {
            let c = cost
                .checked_add(f.price(k))
                .ok_or_else(|| Error::Capacity("total price overflows 64 bits".into()))?;
            let over_budget = self.budget.is_some_and(|b| c > b);
            let over_shifts = self.opts.max_shifts.is_some_and(|t| shifts + k > t);
            let over_affected = k > 0 && self.opts.max_affected.is_some_and(|a| affected + 1 > a);
            if over_budget || over_shifts || over_affected || !self.best.beats(c) {
                break;
            }
            if k > 0 {
                self.delta[self.ev.ahead(v)[k - 1]] += 1;
                applied = k;
            }
            self.current[v] = k;
            self.visit(v + 1, c, shifts + k, affected + usize::from(k > 0))?;
        }
        for &c in &self.ev.ahead(v)[..applied] {
            self.delta[c] -= 1;
        }
        self.current[v] = 0;
        Ok(())
    }
}
