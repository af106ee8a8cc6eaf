//! Seeded workloads for the solver benchmarks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shiftbribery::random::{candidate_names, random_instance, random_prices, PriceFamily};
use shiftbribery::{Election, Instance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A budget-free random instance with `m` candidates and `n` voters.
pub fn instance(m: usize, n: usize, family: PriceFamily, seed: u64) -> Instance {
    random_instance(&mut rng(seed), m, n, family, None).expect("valid sizes")
}

/// `n` voters spread round-robin over exactly `blocks` distinct orders.
pub fn blocky(m: usize, n: usize, blocks: usize, family: PriceFamily, seed: u64) -> Instance {
    let mut r = rng(seed);
    let mut distinct: Vec<Vec<usize>> = Vec::with_capacity(blocks);
    while distinct.len() < blocks {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut r);
        if !distinct.contains(&order) {
            distinct.push(order);
        }
    }
    let orders = (0..n).map(|i| distinct[i % blocks].clone()).collect();
    let e = Election::new(candidate_names(m), orders).expect("valid orders");
    let prices = random_prices(&mut r, &e, 0, family, 3);
    Instance::new(e, prices, 0, None).expect("valid instance")
}

/// The first seed from `seed` on whose instance p does not already win.
pub fn losing(m: usize, n: usize, family: PriceFamily, seed: u64, rule: shiftbribery::Rule) -> Instance {
    (seed..)
        .map(|s| instance(m, n, family, s))
        .find(|inst| !inst.is_successful(rule, &vec![0; n]).unwrap_or(true))
        .expect("some seed loses")
}
