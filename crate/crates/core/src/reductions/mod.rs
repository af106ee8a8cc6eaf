//! Instance factories for the standard hardness constructions.
//!
//! Each factory builds the full election for a Set Cover, Clique or
//! Multicolored Clique instance. Wherever a construction leaves a choice open
//! (which fillers, which subset), the lowest candidate indices are used.

pub mod gadgets;

mod clique;
mod mcc;
mod setcover;

use std::collections::BTreeSet;

use crate::{Election, Error, Instance, PriceFunction, PriceList, Result};

pub use clique::reduce_clique_copeland;
pub use mcc::reduce_mcc_copeland;
pub use setcover::reduce_setcover;

/// Which price family a construction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PriceVariant {
    Unit,
    AllOrNothing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    /// Elements are 0..universe.
    pub universe: usize,
    pub family: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetCoverInstance {
    pub fn new(universe: usize, family: Vec<Vec<usize>>, k: usize) -> Result<SetCoverInstance> {
        if k == 0 || k > family.len() {
            return Err(Error::Precondition(format!("need 1 ≤ k ≤ {}, got {k}", family.len())));
        }
        let mut clean = Vec::with_capacity(family.len());
        for (i, set) in family.into_iter().enumerate() {
            let unique: BTreeSet<usize> = set.iter().copied().collect();
            if unique.len() != set.len() || unique.iter().any(|&u| u >= universe) {
                return Err(Error::Precondition(format!("set {i} is not a subset of the universe")));
            }
            clean.push(unique.into_iter().collect());
        }
        Ok(SetCoverInstance { universe, family: clean, k })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInstance {
    pub vertices: usize,
    /// Undirected edges with the smaller endpoint first, sorted.
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
    /// Color of each vertex, in 0..k.
    pub coloring: Option<Vec<usize>>,
}

impl GraphInstance {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, k: usize) -> Result<GraphInstance> {
        let mut clean = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Precondition(format!("self-loop at vertex {a}")));
            }
            if a >= vertices || b >= vertices {
                return Err(Error::Precondition(format!("edge ({a}, {b}) leaves the graph")));
            }
            if !clean.insert((a.min(b), a.max(b))) {
                return Err(Error::Precondition(format!("edge ({a}, {b}) repeats")));
            }
        }
        Ok(GraphInstance { vertices, edges: clean.into_iter().collect(), k, coloring: None })
    }

    pub fn with_coloring(mut self, coloring: Vec<usize>) -> Result<GraphInstance> {
        if coloring.len() != self.vertices || coloring.iter().any(|&c| c >= self.k) {
            return Err(Error::Precondition("coloring must give every vertex a color below k".into()));
        }
        self.coloring = Some(coloring);
        Ok(self)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// A generated instance with the facts its construction relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub instance: Instance,
    /// Most voters a solution may affect, when the construction bounds it.
    pub affected: Option<usize>,
    /// Isolated vertices added to meet parity assumptions.
    pub padding: usize,
}

/// Candidate bookkeeping shared by the factories.
#[derive(Default)]
struct Cands {
    names: Vec<String>,
}

impl Cands {
    fn add(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    fn group(&mut self, prefix: &str, count: usize) -> Vec<usize> {
        (1..=count).map(|i| self.add(format!("{prefix}{i}"))).collect()
    }

    fn len(&self) -> usize {
        self.names.len()
    }

    /// All candidates not in any of `used`, ascending.
    fn rest(&self, used: &[&[usize]]) -> Vec<usize> {
        let used: BTreeSet<usize> = used.iter().flat_map(|s| s.iter().copied()).collect();
        (0..self.len()).filter(|c| !used.contains(c)).collect()
    }
}

fn rev(v: &[usize]) -> Vec<usize> {
    v.iter().rev().copied().collect()
}

/// Concatenates order segments.
fn cat(parts: &[&[usize]]) -> Vec<usize> {
    parts.iter().flat_map(|s| s.iter().copied()).collect()
}

/// Voters with their price functions, priced once the candidate count is final.
#[derive(Default)]
struct Voters {
    orders: Vec<Vec<usize>>,
    /// Price of every shift by ℓ ≥ 1, as a function of ℓ; `None` means unit prices.
    flat: Vec<Option<u64>>,
}

impl Voters {
    fn unit(&mut self, order: Vec<usize>) {
        self.orders.push(order);
        self.flat.push(None);
    }

    fn flat(&mut self, order: Vec<usize>, price: u64) {
        self.orders.push(order);
        self.flat.push(Some(price));
    }

    fn build(self, cands: Cands, p: usize, budget: u64) -> Result<Instance> {
        let m = cands.len();
        let prices = self
            .orders
            .iter()
            .zip(&self.flat)
            .map(|(o, f)| {
                let at = o.iter().position(|&c| c == p).expect("every order ranks p") + 1;
                match f {
                    None => PriceFunction::unit(m, at),
                    Some(c) => PriceFunction::all_or_nothing(m, at, *c),
                }
            })
            .collect();
        let election = Election::new(cands.names, self.orders)?;
        Instance::new(election, PriceList::new(prices), p, Some(budget))
    }
}
