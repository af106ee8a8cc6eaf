//! Exact solvers and the greedy heuristic.

mod all_or_nothing;
mod brute_force;
mod fpt_shifts;
mod greedy;
mod xp_flow;

pub use all_or_nothing::{solve_all_or_nothing, MAX_SUBSET_VOTERS};
pub use brute_force::{brute_force, brute_force_with, BruteForceOptions, ENUMERATION_LIMIT};
pub use fpt_shifts::fpt_shifts;
pub(crate) use fpt_shifts::{guesses, relevant_voters};
pub use greedy::greedy_convex;
pub use xp_flow::{xp_flow_solve, GUESS_LIMIT};

/// Keeps the cheapest action seen so far; earlier actions win ties.
#[derive(Debug, Default)]
pub(crate) struct Best {
    pub(crate) cost: Option<u64>,
    pub(crate) action: Option<Vec<usize>>,
}

impl Best {
    pub(crate) fn beats(&self, cost: u64) -> bool {
        self.cost.is_none_or(|c| cost < c)
    }

    pub(crate) fn offer(&mut self, cost: u64, action: &[usize]) {
        if self.beats(cost) {
            self.cost = Some(cost);
            self.action = Some(action.to_vec());
        }
    }
}
