use std::collections::HashMap;

use crate::flow::cheapest_assignment;
use crate::{Error, Guarantee, Instance, Result, Rule, SolveResult};

/// Largest number of combined multiplicity guesses the solver accepts.
pub const GUESS_LIMIT: u64 = 10_000_000;

/// Exact solver for arbitrary prices whose running time is polynomial in the
/// number of voters for a fixed number of candidates.
///
/// Voters with identical orders form blocks. For each block the solver guesses how
/// many of its voters get each shift amount; the guess alone fixes the shifted
/// election, and the cheapest voters to realize it come from a min-cost flow.
pub fn xp_flow_solve(inst: &Instance, rule: Rule) -> Result<SolveResult> {
    let blocks = inst.election().blocks();
    let caps = inst.caps();
    let ev = inst.evaluator(rule);
    let total = blocks.iter().try_fold(1u64, |acc, b| {
        acc.checked_mul(multisets(b.len() as u64, caps[b[0]] as u64 + 1)?)
    });
    if total.is_none_or(|t| t > GUESS_LIMIT) {
        return Err(Error::EnumerationTooLarge(format!("more than {GUESS_LIMIT} guesses")));
    }
    let guesses: Vec<Vec<Vec<u64>>> =
        blocks.iter().map(|b| compositions(b.len() as u64, caps[b[0]] + 1)).collect();
    let mut assignments: Vec<HashMap<usize, (u64, Vec<usize>)>> = vec![HashMap::new(); blocks.len()];
    let mut choice = vec![0usize; blocks.len()];
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut explored = 0u64;
    loop {
        explored += 1;
        let mut delta = vec![0i64; inst.num_candidates()];
        for (b, block) in blocks.iter().enumerate() {
            let q = &guesses[b][choice[b]];
            let ahead = ev.ahead(block[0]);
            // q[j] voters pass the j nearest candidates ahead of p.
            let mut at_least = 0i64;
            for j in (1..q.len()).rev() {
                at_least += q[j] as i64;
                delta[ahead[j - 1]] += at_least;
            }
        }
        if ev.wins_with_passes(&delta) {
            let mut cost = 0u64;
            for (b, block) in blocks.iter().enumerate() {
                if !assignments[b].contains_key(&choice[b]) {
                    let fs: Vec<_> = block.iter().map(|&v| inst.prices().get(v).clone()).collect();
                    let found = cheapest_assignment(&fs, &guesses[b][choice[b]])?
                        .expect("multiplicities sum to the block size");
                    assignments[b].insert(choice[b], found);
                }
                cost += assignments[b][&choice[b]].0;
            }
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                let mut action = vec![0; inst.num_voters()];
                for (b, block) in blocks.iter().enumerate() {
                    for (&v, &k) in block.iter().zip(&assignments[b][&choice[b]].1) {
                        action[v] = k;
                    }
                }
                best = Some((cost, action));
            }
        }
        // Advance the odometer over all blocks' guesses.
        let mut b = 0;
        while b < blocks.len() {
            choice[b] += 1;
            if choice[b] < guesses[b].len() {
                break;
            }
            choice[b] = 0;
            b += 1;
        }
        if b == blocks.len() {
            break;
        }
    }
    SolveResult::conclude(inst, rule, best.map(|(_, a)| a), Guarantee::Exact, explored)
}

/// Number of ways to split `total` into `parts` ordered nonnegative parts, if it fits.
fn multisets(total: u64, parts: u64) -> Option<u64> {
    // C(total + parts − 1, parts − 1), built incrementally to stay exact.
    let mut acc = 1u64;
    for i in 1..parts {
        acc = acc.checked_mul(total + i)? / i;
    }
    Some(acc)
}

/// All vectors of `parts` nonnegative integers summing to `total`.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn go(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            go(total - k, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}
