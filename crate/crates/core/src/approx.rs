//! Approximation schemes parameterized by the number of voters and by the number
//! of candidates, and the stepwise view of shift actions the latter works with.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::election::ShiftEvaluator;
use crate::solvers::Best;
use crate::{Error, Guarantee, Instance, Rational, Result, Rule, ShiftAction, SolveResult};

/// Voters sharing one order, sorted by the price of moving `p` to the top
/// (voter index breaks ties).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub voters: Vec<usize>,
    /// Largest useful shift, the position of `p` minus one.
    pub cap: usize,
    /// `increments[y-1][k]` = π(y) − π(y−1) for the k-th voter, y = 1..m−1.
    pub increments: Vec<Vec<u64>>,
}

impl Block {
    /// Price of moving the first `count` voters from y−1 to y positions.
    pub fn step_cost(&self, y: usize, count: usize) -> u64 {
        self.increments[y - 1][..count].iter().sum()
    }
}

pub fn sorted_blocks(inst: &Instance) -> Vec<Block> {
    let caps = inst.caps();
    let steps = inst.num_candidates() - 1;
    inst.election()
        .blocks()
        .into_iter()
        .map(|mut voters| {
            let cap = caps[voters[0]];
            voters.sort_by_key(|&v| (inst.prices().get(v).price(cap), v));
            let increments = (1..=steps)
                .map(|y| {
                    voters
                        .iter()
                        .map(|&v| {
                            let f = inst.prices().get(v);
                            f.price(y) - f.price(y - 1)
                        })
                        .collect()
                })
                .collect();
            Block { voters, cap, increments }
        })
        .collect()
}

/// For each block and each step y, how many of the block's first voters are
/// shifted by at least y positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepwiseShiftAction {
    pub mu: Vec<Vec<usize>>,
}

impl StepwiseShiftAction {
    pub fn is_valid(&self, blocks: &[Block]) -> bool {
        self.mu.len() == blocks.len()
            && self.mu.iter().zip(blocks).all(|(mu, b)| {
                mu.iter().all(|&c| c <= b.voters.len()) && mu.windows(2).all(|w| w[1] <= w[0])
            })
    }

    /// The stepwise form of an action, counting voters shifted at least y positions.
    pub fn from_action(action: &[usize], blocks: &[Block], steps: usize) -> StepwiseShiftAction {
        let mu = blocks
            .iter()
            .map(|b| (1..=steps).map(|y| b.voters.iter().filter(|&&v| action[v] >= y).count()).collect())
            .collect();
        StepwiseShiftAction { mu }
    }
}

/// Budget per block and per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepwiseBudget {
    pub b: Vec<Vec<u64>>,
}

impl StepwiseBudget {
    /// What each step of `mu` costs.
    pub fn of(mu: &StepwiseShiftAction, blocks: &[Block]) -> StepwiseBudget {
        let b = mu
            .mu
            .iter()
            .zip(blocks)
            .map(|(counts, block)| {
                counts.iter().enumerate().map(|(i, &c)| block.step_cost(i + 1, c)).collect()
            })
            .collect();
        StepwiseBudget { b }
    }

    pub fn total(&self) -> u64 {
        self.b.iter().flatten().sum()
    }
}

/// Turns counts of affordable voters per step into a valid stepwise action: a voter
/// can take step y only after step y−1.
fn cap_steps(affordable: Vec<Vec<usize>>, blocks: &[Block]) -> StepwiseShiftAction {
    let mu = affordable
        .into_iter()
        .zip(blocks)
        .map(|(counts, block)| {
            let mut prev = block.voters.len();
            counts
                .into_iter()
                .map(|c| {
                    prev = prev.min(c);
                    prev
                })
                .collect()
        })
        .collect();
    StepwiseShiftAction { mu }
}

/// The largest valid stepwise action whose step y in block x costs at most `b[x][y-1]`.
pub fn pi_s_shift(blocks: &[Block], b: &StepwiseBudget) -> StepwiseShiftAction {
    let affordable = blocks
        .iter()
        .zip(&b.b)
        .map(|(block, budgets)| {
            budgets
                .iter()
                .enumerate()
                .map(|(i, &limit)| {
                    let incs = &block.increments[i];
                    let mut spent = 0u64;
                    incs.iter().take_while(|&&c| {
                        spent = spent.saturating_add(c);
                        spent <= limit
                    })
                    .count()
                })
                .collect()
        })
        .collect();
    cap_steps(affordable, blocks)
}

/// In each block, the first μ_y voters are shifted by at least y positions; shifts
/// stop at `p`'s position.
pub fn stepwise_to_shift(
    mu: &StepwiseShiftAction,
    blocks: &[Block],
    num_voters: usize,
) -> Result<ShiftAction> {
    if !mu.is_valid(blocks) {
        return Err(Error::InvalidArgument("stepwise shift action is not valid".into()));
    }
    let mut action = vec![0; num_voters];
    for (counts, block) in mu.mu.iter().zip(blocks) {
        for (rank, &v) in block.voters.iter().enumerate() {
            action[v] = counts.iter().filter(|&&c| c > rank).count().min(block.cap);
        }
    }
    Ok(action)
}

fn check_epsilon(epsilon: Rational) -> Result<()> {
    if epsilon <= Rational::zero() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    Ok(())
}

/// Approximation scheme in the number of voters: returns a successful action of
/// price at most (1+ε)·OPT.
///
/// For each guess of the most expensive single price π_max an optimal action pays,
/// prices are rounded up to multiples of ε·π_max/n, prices above π_max are made
/// unaffordable, and every vector of small rounded per-voter budgets is tried.
pub fn fptas_voters(inst: &Instance, rule: Rule, epsilon: Rational) -> Result<SolveResult> {
    check_epsilon(epsilon)?;
    let guarantee = Guarantee::Factor(Rational::one() + epsilon);
    let ev = inst.evaluator(rule);
    let n = inst.num_voters() as u128;
    let caps = inst.caps();
    let zero = vec![0; caps.len()];
    if ev.wins(&zero) {
        return SolveResult::conclude(inst, rule, Some(zero), guarantee, 1);
    }
    let (a, c) = (*epsilon.numer() as u128, *epsilon.denom() as u128);
    let max_budget = (n * c).div_ceil(a);
    let guesses: BTreeSet<u64> = (0..caps.len())
        .flat_map(|v| (1..=caps[v]).map(move |j| inst.prices().get(v).price(j)))
        .collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut best = Best::default();
    let mut explored = 0u64;
    let mut consider = |action: &[usize], best: &mut Best| -> Result<()> {
        if seen.insert(action.to_vec()) {
            explored += 1;
            let cost = inst.cost(action)?;
            if best.beats(cost) && ev.wins(action) {
                best.offer(cost, action);
            }
        }
        Ok(())
    };
    for &pi_max in &guesses {
        if pi_max == 0 {
            let free: Vec<usize> =
                (0..caps.len()).map(|v| inst.prices().get(v).affordable(0, caps[v])).collect();
            consider(&free, &mut best)?;
            continue;
        }
        // Rounded price ⌈π / K⌉ with K = ε·π_max/n; shifts above π_max are never affordable.
        let rounded = |v: usize, l: usize| -> Option<u128> {
            let price = inst.prices().get(v).price(l) as u128;
            (price <= pi_max as u128).then(|| (price * n * c).div_ceil(a * pi_max as u128))
        };
        // Shifts reachable as the largest affordable shift for some budget ≤ max_budget.
        let reachable: Vec<Vec<usize>> = (0..caps.len())
            .map(|v| {
                (0..=caps[v])
                    .filter(|&l| {
                        rounded(v, l).is_some_and(|r| r <= max_budget)
                            && (l == caps[v] || rounded(v, l + 1) != rounded(v, l))
                    })
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; caps.len()];
        loop {
            let action: Vec<usize> = choice.iter().zip(&reachable).map(|(&i, r)| r[i]).collect();
            consider(&action, &mut best)?;
            let mut v = 0;
            while v < choice.len() {
                choice[v] += 1;
                if choice[v] < reachable[v].len() {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
            if v == choice.len() {
                break;
            }
        }
    }
    SolveResult::conclude(inst, rule, best.action, guarantee, explored)
}

/// Smallest integer k ≥ 0 with e^k ≥ x.
fn ceil_ln(x: Rational) -> usize {
    let value = *x.numer() as f64 / *x.denom() as f64;
    if value <= 1.0 {
        return 0;
    }
    value.ln().ceil() as usize
}

/// Approximation scheme in the number of candidates for sortable prices: returns a
/// successful action of price at most (1+ε)²·OPT.
///
/// Trial budgets grow geometrically. For each, a recursive search hands out chunks
/// of the remaining budget to single (block, step) entries; after enough levels the
/// handed-out vector is within ε·B/M of a stepwise budget distribution of some
/// successful action in every entry, so topping every entry up by ε·B/M and taking
/// the largest affordable stepwise action succeeds.
pub fn fptas_candidates(inst: &Instance, rule: Rule, epsilon: Rational) -> Result<SolveResult> {
    check_epsilon(epsilon)?;
    if !inst.classify().sortable {
        return Err(Error::WrongPriceFamily("sortable"));
    }
    let guarantee = Guarantee::Factor((Rational::one() + epsilon) * (Rational::one() + epsilon));
    let ev = inst.evaluator(rule);
    let caps = inst.caps();
    // Every zero-price shift, which is the whole of any action an OPT of 0 can use.
    let free: Vec<usize> = (0..caps.len()).map(|v| inst.prices().get(v).affordable(0, caps[v])).collect();
    if ev.wins(&free) {
        return SolveResult::conclude(inst, rule, Some(free), guarantee, 1);
    }
    if !ev.wins(&caps) {
        return SolveResult::conclude(inst, rule, None, guarantee, 2);
    }
    let all_top = inst.cost(&caps)?;
    let blocks = sorted_blocks(inst);
    let mut search = BudgetSearch::new(inst, &ev, &blocks, epsilon);

    let (a, c) = (BigInt::from(*epsilon.numer()), BigInt::from(*epsilon.denom()));
    let (grow_num, grow_den) = (&c + &a, c.clone());
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    let mut last = None;
    loop {
        let ceil = num.div_ceil(&den);
        let budget = if ceil >= BigInt::from(all_top) { all_top } else { u64::try_from(ceil).unwrap() };
        if last != Some(budget) {
            last = Some(budget);
            if let Some(action) = search.run(budget) {
                return SolveResult::conclude(inst, rule, Some(action), guarantee, search.explored);
            }
        }
        if budget == all_top {
            // Unreachable: the all-top distribution is a witness at this budget.
            debug_assert!(false, "budget search failed at the all-top price");
            return SolveResult::conclude(inst, rule, Some(caps), guarantee, search.explored);
        }
        num *= &grow_num;
        den *= &grow_den;
    }
}

/// Most stepwise actions enumerated to find the minimal successful ones.
const MINIMAL_LIMIT: u128 = 1 << 16;

/// The recursive budget search of the candidate-count scheme at one trial budget.
///
/// Values are kept as integers scaled by c·M^D (ε = a/c, D the depth), which makes
/// every chunk and the final top-up exact. Pruning only drops subtrees without a
/// successful leaf: those whose most generous completion fails; on small
/// instances, those from which no minimal successful stepwise action is
/// affordable with the chunks left; and, among entries whose affordable count can
/// no longer change below the current node, all but the first, since they lead to
/// identical leaves. Children are tried largest gap to the cheapest reachable
/// minimal success first.
struct BudgetSearch<'a> {
    inst: &'a Instance,
    ev: &'a ShiftEvaluator,
    blocks: &'a [Block],
    /// (block, step) pairs with step ≤ the block's cap.
    entries: Vec<(usize, usize)>,
    epsilon: Rational,
    depth: usize,
    memo: HashMap<Vec<usize>, bool>,
    /// Componentwise-minimal successful counts per entry, when few enough to list.
    minimal: Option<Vec<Vec<usize>>>,
    explored: u64,
}

struct Scaled {
    chunks: Vec<BigInt>,
    /// remaining[l] = sum of chunks[l..].
    remaining: Vec<BigInt>,
    bump: BigInt,
    /// thresholds[e][k] = scaled price of the first k voters' step in entry e.
    thresholds: Vec<Vec<BigInt>>,
}

impl<'a> BudgetSearch<'a> {
    fn new(inst: &'a Instance, ev: &'a ShiftEvaluator, blocks: &'a [Block], epsilon: Rational) -> Self {
        let entries: Vec<(usize, usize)> = blocks
            .iter()
            .enumerate()
            .flat_map(|(x, b)| (1..=b.cap).map(move |y| (x, y)))
            .collect();
        let m = entries.len() as i64;
        let depth = entries.len() * ceil_ln(Rational::from_integer(m) / epsilon) + 1;
        let mut search =
            BudgetSearch { inst, ev, blocks, entries, epsilon, depth, memo: HashMap::new(), minimal: None, explored: 0 };
        search.minimal = search.minimal_successes();
        search
    }

    fn minimal_successes(&mut self) -> Option<Vec<Vec<usize>>> {
        // Nonincreasing counts over each block's steps.
        let mut per_block: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut total: u128 = 1;
        for b in self.blocks.iter().filter(|b| b.cap > 0) {
            let mut seqs = vec![Vec::new()];
            for _ in 0..b.cap {
                seqs = seqs
                    .into_iter()
                    .flat_map(|s: Vec<usize>| {
                        let top = s.last().copied().unwrap_or(b.voters.len());
                        (0..=top).map(move |k| {
                            let mut t = s.clone();
                            t.push(k);
                            t
                        })
                    })
                    .collect();
            }
            total = total.saturating_mul(seqs.len() as u128);
            if total > MINIMAL_LIMIT {
                return None;
            }
            per_block.push(seqs);
        }
        let mut winners = Vec::new();
        let mut pick = vec![0; per_block.len()];
        loop {
            let counts: Vec<usize> = pick.iter().zip(&per_block).flat_map(|(&i, seqs)| seqs[i].iter().copied()).collect();
            if self.outcome(&counts).0 {
                winners.push(counts);
            }
            let Some(x) = (0..pick.len()).find(|&x| pick[x] + 1 < per_block[x].len()) else { break };
            pick[x] += 1;
            pick[..x].iter_mut().for_each(|i| *i = 0);
        }
        winners.sort_by_key(|w| w.iter().sum::<usize>());
        let mut minimal: Vec<Vec<usize>> = Vec::new();
        for w in winners {
            if !minimal.iter().any(|u| u.iter().zip(&w).all(|(a, b)| a <= b)) {
                minimal.push(w);
            }
        }
        Some(minimal)
    }

    /// Gaps from `q` to the cheapest minimal success still affordable with the
    /// chunks left, `None` when there is none. Every entry short of its target
    /// needs at least ⌈gap/chunk⌉ of the remaining levels. Without a list of
    /// minimal successes nothing is known and the gaps are empty.
    fn target_gaps(&self, s: &Scaled, q: &[BigInt], level: usize) -> Option<Vec<BigInt>> {
        let Some(minimal) = &self.minimal else { return Some(Vec::new()) };
        let levels_left = BigInt::from(self.depth - level);
        let mut best: Option<(BigInt, Vec<BigInt>)> = None;
        for w in minimal {
            let gaps: Vec<BigInt> = w
                .iter()
                .zip(&s.thresholds)
                .zip(q)
                .map(|((k, th), qe)| (&th[*k] - qe - &s.bump).max(BigInt::zero()))
                .collect();
            let need: BigInt = gaps.iter().sum();
            if need > s.remaining[level] || best.as_ref().is_some_and(|(b, _)| *b <= need) {
                continue;
            }
            if level < self.depth && !s.chunks[level].is_zero() {
                let chunks: BigInt = gaps.iter().map(|g| g.div_ceil(&s.chunks[level])).sum();
                if chunks > levels_left {
                    continue;
                }
            }
            best = Some((need, gaps));
        }
        best.map(|(_, gaps)| gaps)
    }

    fn scaled(&self, budget: u64) -> Scaled {
        let m = BigInt::from(self.entries.len());
        let d = self.depth;
        let (a, c) = (BigInt::from(*self.epsilon.numer()), BigInt::from(*self.epsilon.denom()));
        let b = BigInt::from(budget);
        let scale = &c * num_traits::pow(m.clone(), d);
        let chunks: Vec<BigInt> = (0..d)
            .map(|l| &c * &b * num_traits::pow(&m - 1, l) * num_traits::pow(m.clone(), d - 1 - l))
            .collect();
        let mut remaining = vec![BigInt::zero(); d + 1];
        for l in (0..d).rev() {
            remaining[l] = &remaining[l + 1] + &chunks[l];
        }
        let bump = a * &b * num_traits::pow(m.clone(), d - 1);
        let thresholds = self
            .entries
            .iter()
            .map(|&(x, y)| {
                let block = &self.blocks[x];
                (0..=block.voters.len()).map(|k| BigInt::from(block.step_cost(y, k)) * &scale).collect()
            })
            .collect();
        Scaled { chunks, remaining, bump, thresholds }
    }

    fn run(&mut self, budget: u64) -> Option<ShiftAction> {
        let scaled = self.scaled(budget);
        let mut q = vec![BigInt::zero(); self.entries.len()];
        self.visit(&scaled, &mut q, 0)
    }

    fn affordable(thresholds: &[BigInt], value: &BigInt) -> usize {
        thresholds.partition_point(|t| t <= value) - 1
    }

    /// Leaf test: the stepwise action affordable with the given counts.
    fn outcome(&mut self, counts: &[usize]) -> (bool, Option<ShiftAction>) {
        let mut per_block: Vec<Vec<usize>> =
            self.blocks.iter().map(|b| vec![0; b.increments.len()]).collect();
        for (&(x, y), &k) in self.entries.iter().zip(counts) {
            per_block[x][y - 1] = k;
        }
        // Steps past a block's cap cost nothing and change nothing.
        for (x, b) in self.blocks.iter().enumerate() {
            for y in b.cap + 1..=b.increments.len() {
                per_block[x][y - 1] = if b.cap == 0 { b.voters.len() } else { per_block[x][b.cap - 1] };
            }
        }
        let mu = cap_steps(per_block, self.blocks);
        let action = stepwise_to_shift(&mu, self.blocks, self.inst.num_voters()).expect("valid by construction");
        if let Some(&won) = self.memo.get(counts) {
            return (won, won.then_some(action));
        }
        let won = self.ev.wins(&action);
        self.memo.insert(counts.to_vec(), won);
        (won, won.then_some(action))
    }

    fn visit(&mut self, s: &Scaled, q: &mut Vec<BigInt>, level: usize) -> Option<ShiftAction> {
        self.explored += 1;
        let gaps = self.target_gaps(s, q, level)?;
        let lo: Vec<usize> = q
            .iter()
            .zip(&s.thresholds)
            .map(|(qe, th)| Self::affordable(th, &(qe + &s.bump)))
            .collect();
        let hi: Vec<usize> = q
            .iter()
            .zip(&s.thresholds)
            .map(|(qe, th)| Self::affordable(th, &(qe + &s.bump + &s.remaining[level])))
            .collect();
        let (optimistic, action) = self.outcome(&hi);
        if !optimistic {
            return None;
        }
        if lo == hi {
            // Every leaf below has these counts.
            return action;
        }
        // Largest gaps first; the order does not affect which subtrees succeed.
        let mut order: Vec<usize> = (0..q.len()).collect();
        if !gaps.is_empty() {
            order.sort_by(|&a, &b| gaps[b].cmp(&gaps[a]));
        }
        let mut dead_tried = false;
        for e in order {
            if lo[e] == hi[e] {
                if dead_tried {
                    continue;
                }
                dead_tried = true;
            }
            q[e] += &s.chunks[level];
            let found = self.visit(s, q, level + 1);
            q[e] -= &s.chunks[level];
            if found.is_some() {
                return found;
            }
        }
        None
    }
}
