//! Independent oracles and instance enumerators shared by the test targets.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shiftbribery::reductions::{GraphInstance, SetCoverInstance};
use shiftbribery::{Election, Instance, Rational, Rule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rules() -> [Rule; 4] {
    [
        Rule::Borda,
        Rule::Maximin,
        Rule::Copeland(Rational::new(1, 2)),
        Rule::Copeland(Rational::new(0, 1)),
    ]
}

/// Pairwise counts straight from the definition.
pub fn count(e: &Election, c: usize, d: usize) -> i64 {
    e.orders()
        .iter()
        .filter(|o| o.iter().position(|&x| x == c) < o.iter().position(|&x| x == d))
        .count() as i64
}

/// Scores times the rule's scale, from first principles.
pub fn naive_scores(e: &Election, rule: Rule) -> Vec<i64> {
    let m = e.num_candidates();
    (0..m)
        .map(|c| {
            let others = (0..m).filter(|&d| d != c);
            match rule {
                Rule::Borda => others.map(|d| count(e, c, d)).sum(),
                // A lone candidate has no opponent to lose to.
                Rule::Maximin => others.map(|d| count(e, c, d)).min().unwrap_or(e.num_voters() as i64),
                Rule::Copeland(alpha) => others
                    .map(|d| {
                        let (a, b) = (count(e, c, d), count(e, d, c));
                        if a > b {
                            *alpha.denom()
                        } else if a == b {
                            *alpha.numer()
                        } else {
                            0
                        }
                    })
                    .sum(),
            }
        })
        .collect()
}

pub fn naive_wins(e: &Election, p: usize, rule: Rule) -> bool {
    let s = naive_scores(e, rule);
    s.iter().all(|&x| x <= s[p])
}

/// Moves `p` forward in each order, clamped at the top.
pub fn naive_shift(e: &Election, p: usize, s: &[usize]) -> Election {
    let orders = e
        .orders()
        .iter()
        .zip(s)
        .map(|(o, &k)| {
            let mut o = o.clone();
            let at = o.iter().position(|&x| x == p).unwrap();
            let to = at.saturating_sub(k);
            o.remove(at);
            o.insert(to, p);
            o
        })
        .collect();
    Election::new(e.names().to_vec(), orders).unwrap()
}

/// Every shift action of `inst`, by odometer.
pub fn all_actions(inst: &Instance) -> Vec<Vec<usize>> {
    let caps = inst.caps();
    let mut out = vec![vec![0; caps.len()]];
    for (v, &cap) in caps.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..=cap).map(move |k| {
                    let mut a = a.clone();
                    a[v] = k;
                    a
                })
            })
            .collect();
    }
    out
}

/// Minimum cost of a successful action using at most `max_shifts` unit shifts,
/// by plain enumeration with naive scoring.
pub fn naive_opt(inst: &Instance, rule: Rule, max_shifts: Option<usize>) -> Option<u64> {
    all_actions(inst)
        .into_iter()
        .filter(|a| max_shifts.is_none_or(|t| a.iter().sum::<usize>() <= t))
        .filter(|a| naive_wins(&naive_shift(inst.election(), inst.preferred(), a), inst.preferred(), rule))
        .map(|a| inst.cost(&a).unwrap())
        .min()
}

pub fn set_cover_exists(sc: &SetCoverInstance) -> bool {
    let sets = sc.family.len();
    (0u32..1 << sets).any(|mask| {
        mask.count_ones() as usize <= sc.k && {
            let mut covered = vec![false; sc.universe];
            for (i, set) in sc.family.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &u in set {
                        covered[u] = true;
                    }
                }
            }
            covered.iter().all(|&c| c)
        }
    })
}

pub fn clique_exists(g: &GraphInstance) -> bool {
    let n = g.vertices;
    (0u32..1 << n).any(|mask| {
        mask.count_ones() as usize == g.k
            && g.edges.iter().filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1).count()
                == g.k * (g.k - 1) / 2
    })
}

/// All Set Cover instances with |U| ≤ 3, |S| ≤ 3 nonempty sets, k ≤ 2, up to
/// the order of sets.
pub fn small_set_covers() -> Vec<SetCoverInstance> {
    fn families(from: usize, left: usize, count: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..count {
            acc.push(i);
            families(i, left - 1, count, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for universe in 1..=3usize {
        let subsets: Vec<Vec<usize>> = (1u32..1 << universe)
            .map(|m| (0..universe).filter(|&u| m >> u & 1 == 1).collect())
            .collect();
        for sets in 1..=3usize {
            let mut picks = Vec::new();
            families(0, sets, subsets.len(), &mut Vec::new(), &mut picks);
            for pick in picks {
                let family: Vec<Vec<usize>> = pick.iter().map(|&i| subsets[i].clone()).collect();
                for k in 1..=2.min(sets) {
                    out.push(SetCoverInstance::new(universe, family.clone(), k).unwrap());
                }
            }
        }
    }
    out
}

/// All graphs on `n` labeled vertices.
pub fn graphs(n: usize, k: usize) -> Vec<GraphInstance> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            GraphInstance::new(n, edges, k).unwrap()
        })
        .collect()
}
