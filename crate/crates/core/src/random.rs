//! Random instances for sweeps, tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::{Election, Instance, PriceFunction, PriceList, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PriceFamily {
    Unit,
    AllOrNothing,
    Convex,
    /// Every voter's prices are a multiple of one shared increasing profile.
    Sortable,
    /// Any monotone prices.
    Arbitrary,
}

impl PriceFamily {
    pub const ALL: [PriceFamily; 5] = [
        PriceFamily::Unit,
        PriceFamily::AllOrNothing,
        PriceFamily::Convex,
        PriceFamily::Sortable,
        PriceFamily::Arbitrary,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PriceFamily::Unit => "unit",
            PriceFamily::AllOrNothing => "aon",
            PriceFamily::Convex => "convex",
            PriceFamily::Sortable => "sortable",
            PriceFamily::Arbitrary => "arbitrary",
        }
    }
}

/// Candidate names `p, c1, c2, …`; `p` is index 0.
pub fn candidate_names(m: usize) -> Vec<String> {
    std::iter::once("p".to_string()).chain((1..m).map(|i| format!("c{i}"))).collect()
}

/// An election with `n` voters over `m` candidates. Each voter after the first
/// repeats an earlier voter's order with probability `repeat`, so blocks of
/// identical orders appear.
pub fn random_election<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, repeat: f64) -> Result<Election> {
    let mut orders: Vec<Vec<usize>> = Vec::with_capacity(n);
    for _ in 0..n {
        if !orders.is_empty() && rng.gen_bool(repeat) {
            let copy = orders[rng.gen_range(0..orders.len())].clone();
            orders.push(copy);
        } else {
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(rng);
            orders.push(order);
        }
    }
    Election::new(candidate_names(m), orders)
}

/// Prices from `family` for every voter of `e`, with per-step increments of at
/// most `max_step`.
pub fn random_prices<R: Rng + ?Sized>(
    rng: &mut R,
    e: &Election,
    p: usize,
    family: PriceFamily,
    max_step: u64,
) -> PriceList {
    let m = e.num_candidates();
    let top = max_step.max(1);
    let profile: Vec<u64> = {
        let mut acc = 0;
        (0..m).map(|_| {
            acc += rng.gen_range(1..=top);
            acc
        })
        .collect()
    };
    let functions = e
        .positions_of(p)
        .into_iter()
        .map(|pos| match family {
            PriceFamily::Unit => PriceFunction::unit(m, pos),
            PriceFamily::AllOrNothing => PriceFunction::all_or_nothing(m, pos, rng.gen_range(0..=top)),
            PriceFamily::Convex => {
                let mut steps: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=top)).collect();
                steps.sort_unstable();
                let sums: Vec<u64> = steps
                    .iter()
                    .scan(0, |acc, s| {
                        *acc += s;
                        Some(*acc)
                    })
                    .collect();
                PriceFunction::from_fn(m, pos, |l| sums[l - 1])
            }
            PriceFamily::Sortable => {
                let w = rng.gen_range(0..=top);
                PriceFunction::from_fn(m, pos, |l| w * profile[l - 1])
            }
            PriceFamily::Arbitrary => {
                let mut acc = 0;
                let sums: Vec<u64> = (0..m)
                    .map(|_| {
                        acc += rng.gen_range(0..=top);
                        acc
                    })
                    .collect();
                PriceFunction::from_fn(m, pos, |l| sums[l - 1])
            }
        })
        .collect();
    PriceList::new(functions)
}

/// A random instance with preferred candidate `p` (index 0).
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    family: PriceFamily,
    budget: Option<u64>,
) -> Result<Instance> {
    let e = random_election(rng, m, n, 0.3)?;
    let prices = random_prices(rng, &e, 0, family, 3);
    Instance::new(e, prices, 0, budget)
}
