//! Elections as sequences of linear orders, pairwise counts, the three scoring
//! rules and shift application.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Rational, Result};

/// Upper bound on the number of candidates and on the number of voters.
pub const MAX_DIMENSION: usize = 1_000_000;

/// Per-voter numbers of positions by which the preferred candidate moves forward.
pub type ShiftAction = Vec<usize>;

pub type Score = Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Borda,
    Maximin,
    /// Copeland with the given tie value α ∈ [0, 1].
    Copeland(Rational),
}

impl Rule {
    pub fn copeland(alpha: Rational) -> Result<Rule> {
        if alpha < Rational::from_integer(0) || alpha > Rational::from_integer(1) {
            return Err(Error::InvalidArgument(format!("alpha {alpha} outside [0,1]")));
        }
        Ok(Rule::Copeland(alpha))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Rule::Borda => "borda",
            Rule::Maximin => "maximin",
            Rule::Copeland(_) => "copeland",
        }
    }

    /// Factor by which scores are multiplied to make them integers.
    pub fn scale(&self) -> i64 {
        match self {
            Rule::Copeland(alpha) => *alpha.denom(),
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Copeland(alpha) => write!(f, "copeland({alpha})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    names: Vec<String>,
    index: HashMap<String, usize>,
    orders: Vec<Vec<usize>>,
}

impl Election {
    /// Builds an election from candidate names and orders given as candidate indices,
    /// most preferred first.
    pub fn new(names: Vec<String>, orders: Vec<Vec<usize>>) -> Result<Election> {
        let m = names.len();
        if m > MAX_DIMENSION || orders.len() > MAX_DIMENSION {
            return Err(Error::Capacity(format!(
                "{} candidates and {} voters exceed the limit of {MAX_DIMENSION}",
                m,
                orders.len()
            )));
        }
        if m == 0 {
            return Err(Error::InvalidElection("no candidates".into()));
        }
        if orders.is_empty() {
            return Err(Error::InvalidElection("no voters".into()));
        }
        let mut index = HashMap::with_capacity(m);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidElection("empty candidate name".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidElection(format!("duplicate candidate `{name}`")));
            }
        }
        let mut seen = vec![usize::MAX; m];
        for (v, order) in orders.iter().enumerate() {
            if order.len() != m {
                return Err(Error::InvalidElection(format!(
                    "voter {} ranks {} candidates, expected {m}",
                    v + 1,
                    order.len()
                )));
            }
            for &c in order {
                if c >= m || seen[c] == v {
                    return Err(Error::InvalidElection(format!(
                        "voter {} does not rank every candidate exactly once",
                        v + 1
                    )));
                }
                seen[c] = v;
            }
        }
        Ok(Election { names, index, orders })
    }

    /// Builds an election from orders spelled with candidate names.
    pub fn from_names<S: AsRef<str>>(names: &[S], orders: &[Vec<S>]) -> Result<Election> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut idx_orders = Vec::with_capacity(orders.len());
        for order in orders {
            let mut o = Vec::with_capacity(order.len());
            for c in order {
                let c = c.as_ref();
                o.push(*index.get(c).ok_or_else(|| Error::UnknownCandidate(c.to_string()))?);
            }
            idx_orders.push(o);
        }
        Election::new(names, idx_orders)
    }

    pub fn num_candidates(&self) -> usize {
        self.names.len()
    }

    pub fn num_voters(&self) -> usize {
        self.orders.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: usize) -> &str {
        &self.names[c]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn order(&self, v: usize) -> &[usize] {
        &self.orders[v]
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    /// 1-based position of `c` in voter `v`'s order.
    pub fn position(&self, v: usize, c: usize) -> usize {
        self.orders[v].iter().position(|&x| x == c).expect("candidate ranked by every voter") + 1
    }

    /// Positions of `p` in every voter's order.
    pub fn positions_of(&self, p: usize) -> Vec<usize> {
        (0..self.num_voters()).map(|v| self.position(v, p)).collect()
    }

    /// Voters grouped by identical order, groups in order of first appearance.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut first: HashMap<&[usize], usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, order) in self.orders.iter().enumerate() {
            let b = *first.entry(order.as_slice()).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
        }
        blocks
    }

    pub fn pairwise(&self) -> Pairwise {
        Pairwise::new(self)
    }

    pub fn scores(&self, rule: Rule) -> Vec<Score> {
        self.pairwise().scores(rule)
    }

    pub fn winners(&self, rule: Rule) -> Vec<usize> {
        self.pairwise().winners(rule)
    }

    pub fn is_winner(&self, c: usize, rule: Rule) -> bool {
        self.winners(rule).contains(&c)
    }

    /// Moves `p` forward by `s[v]` positions in each voter's order, stopping at the top.
    pub fn apply_shift(&self, p: usize, s: &[usize]) -> Result<Election> {
        if s.len() != self.num_voters() {
            return Err(Error::LengthMismatch { expected: self.num_voters(), got: s.len() });
        }
        if p >= self.num_candidates() {
            return Err(Error::InvalidArgument(format!("candidate index {p} out of range")));
        }
        let orders = self
            .orders
            .iter()
            .zip(s)
            .map(|(order, &k)| {
                let mut order = order.clone();
                let at = order.iter().position(|&x| x == p).unwrap();
                let to = at - k.min(at);
                order[to..=at].rotate_right(1);
                order
            })
            .collect();
        Ok(Election { names: self.names.clone(), index: self.index.clone(), orders })
    }
}

/// The matrix N(c, d) of voters preferring `c` to `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairwise {
    m: usize,
    n: usize,
    counts: Vec<u32>,
}

impl Pairwise {
    pub fn new(e: &Election) -> Pairwise {
        let m = e.num_candidates();
        let mut counts = vec![0u32; m * m];
        for order in e.orders() {
            for (i, &c) in order.iter().enumerate() {
                let row = &mut counts[c * m..(c + 1) * m];
                for &d in &order[i + 1..] {
                    row[d] += 1;
                }
            }
        }
        Pairwise { m, n: e.num_voters(), counts }
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn num_voters(&self) -> usize {
        self.n
    }

    pub fn get(&self, c: usize, d: usize) -> i64 {
        self.counts[c * self.m + d] as i64
    }

    /// N(c, d) − N(d, c).
    pub fn margin(&self, c: usize, d: usize) -> i64 {
        self.get(c, d) - self.get(d, c)
    }

    /// Scores multiplied by `rule.scale()`, as integers.
    pub fn scaled_scores(&self, rule: Rule) -> Vec<i64> {
        let m = self.m;
        (0..m)
            .map(|c| match rule {
                Rule::Borda => (0..m).filter(|&d| d != c).map(|d| self.get(c, d)).sum(),
                Rule::Maximin => (0..m)
                    .filter(|&d| d != c)
                    .map(|d| self.get(c, d))
                    .min()
                    .unwrap_or(self.n as i64),
                Rule::Copeland(alpha) => (0..m)
                    .filter(|&d| d != c)
                    .map(|d| copeland_points(self.get(c, d), self.get(d, c), alpha))
                    .sum(),
            })
            .collect()
    }

    pub fn scores(&self, rule: Rule) -> Vec<Score> {
        let scale = rule.scale();
        self.scaled_scores(rule).into_iter().map(|s| Rational::new(s, scale)).collect()
    }

    pub fn winners(&self, rule: Rule) -> Vec<usize> {
        let scores = self.scaled_scores(rule);
        let best = *scores.iter().max().unwrap();
        (0..self.m).filter(|&c| scores[c] == best).collect()
    }
}

fn copeland_points(ncd: i64, ndc: i64, alpha: Rational) -> i64 {
    if ncd > ndc {
        *alpha.denom()
    } else if ncd == ndc {
        *alpha.numer()
    } else {
        0
    }
}

/// Decides whether `p` wins after a shift action without rebuilding the election.
///
/// Shifting `p` only changes the pairs (p, c), so every score is the base score
/// corrected by how often `p` passes each candidate.
#[derive(Clone, Debug)]
pub struct ShiftEvaluator {
    rule: Rule,
    p: usize,
    m: usize,
    ahead: Vec<Vec<usize>>,
    n_pc: Vec<i64>,
    n_cp: Vec<i64>,
    rest: Vec<i64>,
}

impl ShiftEvaluator {
    pub fn new(e: &Election, p: usize, rule: Rule) -> ShiftEvaluator {
        let m = e.num_candidates();
        let nm = e.pairwise();
        let ahead = e
            .orders()
            .iter()
            .map(|o| {
                let at = o.iter().position(|&x| x == p).unwrap();
                o[..at].iter().rev().copied().collect()
            })
            .collect();
        let n_pc = (0..m).map(|c| nm.get(p, c)).collect();
        let n_cp = (0..m).map(|c| nm.get(c, p)).collect();
        // Contribution of all pairs not involving p to each other candidate's score.
        let rest = (0..m)
            .map(|c| {
                let others = (0..m).filter(|&d| d != c && d != p);
                match rule {
                    Rule::Borda => others.map(|d| nm.get(c, d)).sum(),
                    Rule::Maximin => others.map(|d| nm.get(c, d)).min().unwrap_or(i64::MAX),
                    Rule::Copeland(a) => {
                        others.map(|d| copeland_points(nm.get(c, d), nm.get(d, c), a)).sum()
                    }
                }
            })
            .collect();
        ShiftEvaluator { rule, p, m, ahead, n_pc, n_cp, rest }
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn preferred(&self) -> usize {
        self.p
    }

    pub fn num_voters(&self) -> usize {
        self.ahead.len()
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    /// Candidates ranked ahead of `p` by voter `v`, nearest first.
    pub fn ahead(&self, v: usize) -> &[usize] {
        &self.ahead[v]
    }

    /// Position of `p` in voter `v`'s order.
    pub fn position(&self, v: usize) -> usize {
        self.ahead[v].len() + 1
    }

    /// How often `p` passes each candidate under `action`.
    pub fn passes(&self, action: &[usize]) -> Vec<i64> {
        let mut delta = vec![0i64; self.m];
        for (v, &k) in action.iter().enumerate() {
            for &c in self.ahead[v].iter().take(k) {
                delta[c] += 1;
            }
        }
        delta
    }

    pub fn wins(&self, action: &[usize]) -> bool {
        self.wins_with_passes(&self.passes(action))
    }

    /// Scaled scores after `p` passes candidate `c` exactly `delta[c]` times.
    pub fn scaled_scores_with_passes(&self, delta: &[i64]) -> Vec<i64> {
        let p = self.p;
        (0..self.m)
            .map(|c| {
                if c == p {
                    let row = (0..self.m)
                        .filter(|&d| d != p)
                        .map(|d| (self.n_pc[d] + delta[d], self.n_cp[d] - delta[d]));
                    match self.rule {
                        Rule::Borda => row.map(|(x, _)| x).sum(),
                        Rule::Maximin => row.map(|(x, _)| x).min().unwrap_or(0),
                        Rule::Copeland(a) => row.map(|(x, y)| copeland_points(x, y, a)).sum(),
                    }
                } else {
                    let (x, y) = (self.n_cp[c] - delta[c], self.n_pc[c] + delta[c]);
                    match self.rule {
                        Rule::Borda => self.rest[c] + x,
                        Rule::Maximin => self.rest[c].min(x),
                        Rule::Copeland(a) => self.rest[c] + copeland_points(x, y, a),
                    }
                }
            })
            .collect()
    }

    pub fn wins_with_passes(&self, delta: &[i64]) -> bool {
        let scores = self.scaled_scores_with_passes(delta);
        let ps = scores[self.p];
        scores.iter().all(|&s| s <= ps)
    }
}
