use crate::{Error, Guarantee, Instance, Result, Rule, SolveResult};

use super::Best;

/// Largest electorate the subset solver accepts.
pub const MAX_SUBSET_VOTERS: usize = 25;

/// Exact solver for all-or-nothing prices: under such prices a voter is either left
/// alone or has `p` moved to the top, so trying every voter subset suffices.
pub fn solve_all_or_nothing(inst: &Instance, rule: Rule) -> Result<SolveResult> {
    if !inst.classify().all_or_nothing {
        return Err(Error::WrongPriceFamily("all-or-nothing"));
    }
    let n = inst.num_voters();
    if n > MAX_SUBSET_VOTERS {
        return Err(Error::Capacity(format!(
            "{n} voters exceed the subset solver's limit of {MAX_SUBSET_VOTERS}"
        )));
    }
    let caps = inst.caps();
    let ev = inst.evaluator(rule);
    let mut best = Best::default();
    let mut action = vec![0; n];
    for mask in 0u64..1 << n {
        for (v, a) in action.iter_mut().enumerate() {
            *a = if mask >> v & 1 == 1 { caps[v] } else { 0 };
        }
        let cost = inst.cost(&action)?;
        if best.beats(cost) && ev.wins(&action) {
            best.offer(cost, &action);
        }
    }
    SolveResult::conclude(inst, rule, best.action, Guarantee::Exact, 1 << n)
}
