//! Shift Bribery instances and solver results.

use std::fmt;

use crate::election::ShiftEvaluator;
use crate::{Election, Error, FamilyTags, PriceList, Rational, Result, Rule, ShiftAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    election: Election,
    prices: PriceList,
    preferred: usize,
    budget: Option<u64>,
}

impl Instance {
    pub fn new(
        election: Election,
        prices: PriceList,
        preferred: usize,
        budget: Option<u64>,
    ) -> Result<Instance> {
        if preferred >= election.num_candidates() {
            return Err(Error::InvalidArgument(format!("preferred candidate {preferred} out of range")));
        }
        prices.validate(&election, preferred)?;
        Ok(Instance { election, prices, preferred, budget })
    }

    /// An instance where every voter has unit prices.
    pub fn with_unit_prices(election: Election, preferred: usize, budget: Option<u64>) -> Result<Instance> {
        let prices = PriceList::unit(&election, preferred);
        Instance::new(election, prices, preferred, budget)
    }

    pub fn election(&self) -> &Election {
        &self.election
    }

    pub fn prices(&self) -> &PriceList {
        &self.prices
    }

    pub fn preferred(&self) -> usize {
        self.preferred
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn with_budget(&self, budget: Option<u64>) -> Instance {
        Instance { budget, ..self.clone() }
    }

    pub fn num_voters(&self) -> usize {
        self.election.num_voters()
    }

    pub fn num_candidates(&self) -> usize {
        self.election.num_candidates()
    }

    /// Position of the preferred candidate in every order.
    pub fn positions(&self) -> Vec<usize> {
        self.election.positions_of(self.preferred)
    }

    /// The largest useful shift per voter.
    pub fn caps(&self) -> Vec<usize> {
        self.positions().into_iter().map(|r| r - 1).collect()
    }

    pub fn cost(&self, s: &[usize]) -> Result<u64> {
        self.prices.cost(s)
    }

    pub fn classify(&self) -> FamilyTags {
        self.prices.classify(&self.election, self.preferred)
    }

    pub fn evaluator(&self, rule: Rule) -> ShiftEvaluator {
        ShiftEvaluator::new(&self.election, self.preferred, rule)
    }

    /// Whether `p` wins after `s`, computed by rebuilding the shifted election.
    pub fn is_successful(&self, rule: Rule, s: &[usize]) -> Result<bool> {
        let shifted = self.election.apply_shift(self.preferred, s)?;
        Ok(shifted.is_winner(self.preferred, rule))
    }

    /// Total number of effective unit shifts available.
    pub fn total_shifts(&self) -> usize {
        self.caps().iter().sum()
    }
}

/// Quality statement attached to a solver's answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guarantee {
    Exact,
    /// Spent at most this factor times the optimum.
    Factor(Rational),
    Heuristic,
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guarantee::Exact => f.write_str("exact"),
            Guarantee::Factor(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Guarantee::Heuristic => f.write_str("heuristic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub feasible: bool,
    pub action: Option<ShiftAction>,
    pub spent: u64,
    pub guarantee: Guarantee,
    /// Solver-specific count of explored nodes, guesses or evaluations.
    pub explored: u64,
}

impl SolveResult {
    /// Packages a solver's best action after re-checking it through the election
    /// model and comparing its price with the budget.
    pub fn conclude(
        inst: &Instance,
        rule: Rule,
        best: Option<ShiftAction>,
        guarantee: Guarantee,
        explored: u64,
    ) -> Result<SolveResult> {
        let infeasible = SolveResult { feasible: false, action: None, spent: 0, guarantee, explored };
        let Some(action) = best else { return Ok(infeasible) };
        let spent = inst.cost(&action)?;
        assert!(
            inst.is_successful(rule, &action)?,
            "solver returned an unsuccessful action {action:?}"
        );
        if inst.budget().is_some_and(|b| spent > b) {
            return Ok(infeasible);
        }
        Ok(SolveResult { feasible: true, action: Some(action), spent, guarantee, explored })
    }
}
