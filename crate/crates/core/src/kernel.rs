//! Partial kernels for Borda and Maximin, parameterized by the number t of unit shifts.
//!
//! A kernel keeps the budget and answers the same yes/no question as its input
//! when both are restricted to actions with at most t unit shifts. Prices stay
//! unbounded; only the candidate and voter counts shrink.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::election::ShiftEvaluator;
use crate::reductions::gadgets::point_pair;
use crate::solvers::{guesses, relevant_voters};
use crate::{Election, Error, Instance, PriceFunction, PriceList, Result, Rule};

/// Where a kernel candidate comes from; indices refer to the input election.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateOrigin {
    Preferred(usize),
    /// A candidate some successful action must pass.
    Critical(usize),
    /// A non-critical candidate within t positions ahead of `p` for a retained voter.
    Filler(usize),
    /// An input candidate kept by the Maximin kernel.
    Kept(usize),
    Dummy,
}

/// Where a kernel voter comes from; indices refer to the input election.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VoterOrigin {
    /// The input voter itself, when the input was returned unchanged.
    Unchanged(usize),
    /// A retained input voter restricted to the kept candidates.
    Retained(usize),
    /// The reverse of a retained voter.
    ReverseDummy(usize),
    /// One half of a point-pair gadget.
    PointPair,
    /// Any other fixed voter that sets up scores or head-to-head margins.
    Gadget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutput {
    pub instance: Instance,
    /// Origin of every kernel candidate, by kernel index.
    pub candidate_map: Vec<CandidateOrigin>,
    /// Origin of every kernel voter, by kernel index.
    pub voter_map: Vec<VoterOrigin>,
}

impl KernelOutput {
    pub fn is_unchanged(&self) -> bool {
        self.voter_map.iter().all(|o| matches!(o, VoterOrigin::Unchanged(_)))
    }
}

/// Upper bounds on the size of a kernel built for `n` input voters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelBounds {
    pub candidates: usize,
    pub voters: usize,
}

/// Most voters any guess keeps: t + 1 guesses, each keeping t voters per pair of a
/// shift length and a subset of at most t critical candidates.
fn retained_bound(t: usize, n: usize) -> usize {
    let per_guess = 1usize
        .checked_shl(t as u32)
        .and_then(|p| p.checked_mul(t * t))
        .and_then(|x| x.checked_mul(t + 1));
    per_guess.map_or(n, |b| b.min(n))
}

pub fn bounds(rule: Rule, t: usize, n: usize) -> KernelBounds {
    let v = retained_bound(t, n);
    match rule {
        Rule::Maximin => {
            let hub_rounds = 6 * t + 7 + (t + 2) * (4 * t + 5);
            KernelBounds {
                candidates: t * v + t + 5,
                voters: 2 * v + 1 + 2 * ((t + 2) / 2 + hub_rounds),
            }
        }
        _ => KernelBounds {
            candidates: t * v + 2 * t + 4,
            voters: 2 * v + 2 * t * (2 * t + 1) + 2 * (t + 1),
        },
    }
}

/// A kernel of `inst`, or `inst` itself when it is already within the kernel bounds.
pub fn kernelize(inst: &Instance, rule: Rule, t: usize) -> Result<KernelOutput> {
    check(inst, rule)?;
    let b = bounds(rule, t, inst.num_voters());
    if inst.num_candidates() <= b.candidates && inst.num_voters() <= b.voters {
        let p = inst.preferred();
        return Ok(KernelOutput {
            instance: inst.clone(),
            candidate_map: (0..inst.num_candidates())
                .map(|c| if c == p { CandidateOrigin::Preferred(c) } else { CandidateOrigin::Kept(c) })
                .collect(),
            voter_map: (0..inst.num_voters()).map(VoterOrigin::Unchanged).collect(),
        });
    }
    build_kernel(inst, rule, t)
}

/// Builds the kernel even when the input is small.
pub fn build_kernel(inst: &Instance, rule: Rule, t: usize) -> Result<KernelOutput> {
    check(inst, rule)?;
    match rule {
        Rule::Borda => borda_kernel(inst, t),
        _ => maximin_kernel(inst, t),
    }
}

fn check(inst: &Instance, rule: Rule) -> Result<()> {
    if let Rule::Copeland(_) = rule {
        return Err(Error::RuleNotSupported("kernels exist for Borda and Maximin only".into()));
    }
    if inst.budget().is_none() {
        return Err(Error::Precondition("kernelization needs a budget".into()));
    }
    Ok(())
}

/// Voters some optimal action with at most t shifts can be confined to.
fn retained_voters(inst: &Instance, rule: Rule, t: usize) -> Result<Vec<usize>> {
    let n = inst.num_voters();
    let small = 1usize
        .checked_shl(t as u32)
        .and_then(|p| p.checked_mul(t.pow(3)))
        .is_some_and(|b| n <= b);
    if small {
        Ok((0..n).collect())
    } else {
        relevant_voters(inst, rule, t)
    }
}

/// The candidates within t positions ahead of `p` over the retained voters.
fn passable(ev: &ShiftEvaluator, voters: &[usize], t: usize) -> BTreeSet<usize> {
    voters.iter().flat_map(|&v| ev.ahead(v).iter().take(t).copied()).collect()
}

/// Collects kernel candidates first and voters second.
struct Builder<'a> {
    inst: &'a Instance,
    blocked: u64,
    names: Vec<String>,
    taken: HashSet<String>,
    candidate_map: Vec<CandidateOrigin>,
    id: HashMap<usize, usize>,
    orders: Vec<Vec<usize>>,
    prices: Vec<PriceFunction>,
    voter_map: Vec<VoterOrigin>,
}

impl<'a> Builder<'a> {
    /// Starts with the given input candidates in ascending order.
    fn new(inst: &'a Instance, kept: &BTreeSet<usize>, tag: impl Fn(usize) -> CandidateOrigin) -> Result<Self> {
        let blocked = inst
            .budget()
            .and_then(|b| b.checked_add(1))
            .ok_or_else(|| Error::Capacity("budget + 1 overflows 64 bits".into()))?;
        let e = inst.election();
        let mut b = Builder {
            inst,
            blocked,
            names: Vec::new(),
            taken: e.names().iter().cloned().collect(),
            candidate_map: Vec::new(),
            id: HashMap::new(),
            orders: Vec::new(),
            prices: Vec::new(),
            voter_map: Vec::new(),
        };
        for &c in kept {
            b.id.insert(c, b.names.len());
            b.names.push(e.name(c).to_string());
            b.candidate_map.push(tag(c));
        }
        Ok(b)
    }

    fn dummy(&mut self, base: &str) -> usize {
        let mut name = base.to_string();
        while !self.taken.insert(name.clone()) {
            name.push('\'');
        }
        self.names.push(name);
        self.candidate_map.push(CandidateOrigin::Dummy);
        self.names.len() - 1
    }

    fn p(&self) -> usize {
        self.id[&self.inst.preferred()]
    }

    fn all(&self) -> Vec<usize> {
        (0..self.names.len()).collect()
    }

    /// A voter no within-budget action can touch.
    fn fixed(&mut self, order: Vec<usize>, origin: VoterOrigin) {
        let at = order.iter().position(|&c| c == self.p()).unwrap() + 1;
        self.prices.push(PriceFunction::all_or_nothing(self.names.len(), at, self.blocked));
        self.orders.push(order);
        self.voter_map.push(origin);
    }

    /// Voter `v` as `⟨front⟩ ≻ p ≻ ⟨rest⟩`, where `front` keeps `v`'s relative order,
    /// followed by its fixed reverse.
    fn retain(&mut self, v: usize, front: &BTreeSet<usize>) {
        let e = self.inst.election();
        let p = self.inst.preferred();
        let mut order: Vec<usize> = e
            .order(v)
            .iter()
            .take_while(|&&c| c != p)
            .filter(|c| front.contains(c))
            .map(|c| self.id[c])
            .collect();
        let at = order.len() + 1;
        order.push(self.p());
        let placed: HashSet<usize> = order.iter().copied().collect();
        order.extend(self.all().into_iter().filter(|c| !placed.contains(c)));
        let original = self.inst.prices().get(v).clone();
        self.prices.push(PriceFunction::from_fn(self.names.len(), at, |l| original.price(l)));
        let reverse: Vec<usize> = order.iter().rev().copied().collect();
        self.orders.push(order);
        self.voter_map.push(VoterOrigin::Retained(v));
        self.fixed(reverse, VoterOrigin::ReverseDummy(v));
    }

    fn finish(self) -> Result<KernelOutput> {
        let p = self.p();
        let election = Election::new(self.names, self.orders)?;
        let instance = Instance::new(election, PriceList::new(self.prices), p, self.inst.budget())?;
        Ok(KernelOutput { instance, candidate_map: self.candidate_map, voter_map: self.voter_map })
    }
}

/// Critical candidates keep their lead over `p` through point-pair gadgets, and
/// every retained voter keeps the candidates `p` could pass in it.
///
/// Let t0 be the least gain that leaves at most t0 candidates more than t0 points
/// ahead of `p`. Any successful action gains at least t0, so only those candidates
/// need passing; a dummy t0 points ahead that `p` can never pass enforces the same
/// lower bound in the kernel. Leads above 2t cannot be closed within t shifts and
/// are capped at 2t + 1.
fn borda_kernel(inst: &Instance, t: usize) -> Result<KernelOutput> {
    let e = inst.election();
    let p = inst.preferred();
    let scores = e.pairwise().scaled_scores(Rule::Borda);
    let (floor, critical) = match guesses(inst, Rule::Borda, t)?.into_iter().next() {
        Some(g) => (g.gain, g.critical),
        None => (t + 1, BTreeSet::new()),
    };
    if floor == 0 {
        return trivial_kernel(inst);
    }
    let retained = retained_voters(inst, Rule::Borda, t)?;
    let ev = inst.evaluator(Rule::Borda);
    let mut kept = passable(&ev, &retained, t);
    kept.extend(&critical);
    kept.insert(p);
    let mut b = Builder::new(inst, &kept, |c| {
        if c == p {
            CandidateOrigin::Preferred(c)
        } else if critical.contains(&c) {
            CandidateOrigin::Critical(c)
        } else {
            CandidateOrigin::Filler(c)
        }
    })?;
    let mut pairs = Vec::new();
    for &c in &critical {
        let lead = (scores[c] - scores[p]).min(2 * t as i64 + 1) as usize;
        let d = b.dummy(&format!("d_{}", e.name(c)));
        pairs.push((b.id[&c], d, lead));
    }
    let (h, h_low) = (b.dummy("h"), b.dummy("h_low"));
    pairs.push((h, h_low, floor));
    let z = b.dummy("z");
    let np = b.p();
    for (c, d, count) in pairs {
        let rest: Vec<usize> = b.all().into_iter().filter(|x| ![np, c, d, z].contains(x)).collect();
        let [first, second] = point_pair(np, &[], c, d, &rest, z)?;
        for _ in 0..count {
            b.fixed(first.clone(), VoterOrigin::PointPair);
            b.fixed(second.clone(), VoterOrigin::PointPair);
        }
    }
    for &v in &retained {
        let front: BTreeSet<usize> = ev
            .ahead(v)
            .iter()
            .enumerate()
            .filter(|&(i, c)| i < t || critical.contains(c))
            .map(|(_, &c)| c)
            .collect();
        b.retain(v, &front);
    }
    b.finish()
}

/// The kernel for an input `p` already wins: `p` against one dummy.
fn trivial_kernel(inst: &Instance) -> Result<KernelOutput> {
    let p = inst.preferred();
    let mut b = Builder::new(inst, &BTreeSet::from([p]), CandidateOrigin::Preferred)?;
    let z = b.dummy("z");
    b.fixed(vec![b.p(), z], VoterOrigin::Gadget);
    b.finish()
}

fn clamp(v: i64, hi: i64) -> i64 {
    v.clamp(0, hi)
}

/// Maximin kernel over the candidates `p` can pass plus two representatives of
/// the rest, with every other head-to-head count rebuilt from fixed voters.
///
/// Write s for `p`'s score, G = n − 2s, x_c = N(p, c) − s and y_c = N(c, p) − s = G − x_c.
/// After an action with at most t shifts, `p`'s score is s + min_c (x_c + passes_c),
/// which is at most s + t, and `c`'s score is s + min(β_c, y_c − passes_c) with β_c
/// its best count against candidates other than `p`. Success therefore depends on
/// x only up to t + 1, on y only in the classes ≤ 0, 1..=2t and ≥ 2t + 1, and on
/// min(β, y) only clamped to 0..=t + 1. Among candidates `p` cannot pass, only the
/// one with the least x and the one with the largest min(β, y) matter.
///
/// The kernel realizes these values with G replaced by 3t + 2 once it exceeds that.
/// Candidates with clamped value b meet their minimum against a dummy Y_b; among
/// themselves, kept candidates get margins 2(⌈β_c/2⌉ − ⌈β_d/2⌉), adjusted by one
/// voter when G is odd, which never undercuts either side's minimum.
fn maximin_kernel(inst: &Instance, t: usize) -> Result<KernelOutput> {
    let e = inst.election();
    let p = inst.preferred();
    if e.is_winner(p, Rule::Maximin) {
        return trivial_kernel(inst);
    }
    let m = e.num_candidates();
    let n = e.num_voters() as i64;
    let nm = e.pairwise();
    let ti = t as i64;
    let s = (0..m).filter(|&c| c != p).map(|c| nm.get(p, c)).min().unwrap();
    let g = n - 2 * s;
    let x = |c: usize| nm.get(p, c) - s;
    let lambda = |c: usize| {
        let beta = (0..m).filter(|&d| d != p && d != c).map(|d| nm.get(c, d) - s).min();
        beta.map_or(g - x(c), |b| b.min(g - x(c)))
    };
    let retained = retained_voters(inst, Rule::Maximin, t)?;
    let ev = inst.evaluator(Rule::Maximin);
    let reachable = passable(&ev, &retained, t);
    let mut kept = reachable.clone();
    let others: Vec<usize> = (0..m).filter(|&c| c != p && !reachable.contains(&c)).collect();
    if let Some(&lo) = others.iter().min_by_key(|&&c| (x(c), c)) {
        kept.insert(lo);
    }
    if let Some(&hi) = others.iter().min_by_key(|&&c| (-lambda(c), c)) {
        kept.insert(hi);
    }
    kept.insert(p);

    let gk = if g > 3 * ti + 2 { 3 * ti + 2 } else { g };
    let x_class = |x: i64| x.min(ti + 1);
    let y_class = |y: i64| clamp(y, 2 * ti + 1);
    let mut xk = HashMap::new();
    let mut bk = HashMap::new();
    for &c in kept.iter().filter(|&&c| c != p) {
        let target = (x_class(x(c)), y_class(g - x(c)));
        let xc = (0..=gk + ti + 1)
            .find(|&v| (x_class(v), y_class(gk - v)) == target)
            .expect("compressed values exist for every class");
        xk.insert(c, xc);
        bk.insert(c, clamp(lambda(c), ti + 1));
    }

    let mut b = Builder::new(inst, &kept, |c| {
        if c == p {
            CandidateOrigin::Preferred(c)
        } else {
            CandidateOrigin::Kept(c)
        }
    })?;
    let np = b.p();
    let kept_ids: Vec<usize> = kept.iter().filter(|&&c| c != p).map(|c| b.id[c]).collect();
    let beta: HashMap<usize, i64> = kept.iter().filter(|&&c| c != p).map(|c| (b.id[c], bk[c])).collect();
    let xs: HashMap<usize, i64> = kept.iter().filter(|&&c| c != p).map(|c| (b.id[c], xk[c])).collect();
    let mut ys = BTreeMap::new();
    for v in beta.values().copied().collect::<BTreeSet<_>>() {
        ys.insert(v, b.dummy(&format!("y{v}")));
    }
    let y_ids: Vec<usize> = ys.values().copied().collect();
    let all = b.all();
    let size = all.len();

    // Target margins N(a, c) − N(c, a) over the kernel candidates.
    let mut want = vec![vec![0i64; size]; size];
    let set = |w: &mut Vec<Vec<i64>>, a: usize, c: usize, v: i64| {
        w[a][c] = v;
        w[c][a] = -v;
    };
    for &c in &kept_ids {
        set(&mut want, np, c, 2 * xs[&c] - gk);
        for (&v, &y) in &ys {
            let count = if beta[&c] == v { v } else { ti + 1 };
            set(&mut want, c, y, 2 * count - gk);
        }
    }
    for &y in &y_ids {
        set(&mut want, np, y, 2 * (ti + 1).max(gk) - gk);
    }
    let half = |c: usize| (beta[&c] + 1) / 2;
    let mut tie_break = Vec::new();
    if gk % 2 == 1 {
        let (even, odd): (Vec<usize>, Vec<usize>) = kept_ids.iter().copied().partition(|&c| beta[&c] % 2 == 0);
        tie_break.push(np);
        tie_break.extend(even);
        tie_break.extend(odd);
        tie_break.extend(&y_ids);
    }
    let above = |a: usize, c: usize| -> i64 {
        match (tie_break.iter().position(|&x| x == a), tie_break.iter().position(|&x| x == c)) {
            (Some(i), Some(j)) if i < j => 1,
            (Some(_), Some(_)) => -1,
            _ => 0,
        }
    };
    for (i, &c) in kept_ids.iter().enumerate() {
        for &d in &kept_ids[i + 1..] {
            set(&mut want, c, d, 2 * (half(c) - half(d)) + above(c, d));
        }
    }
    for (i, &y) in y_ids.iter().enumerate() {
        for &z in &y_ids[i + 1..] {
            set(&mut want, y, z, above(y, z));
        }
    }

    let mut have = vec![vec![0i64; size]; size];
    if !tie_break.is_empty() {
        record(&mut b, &mut have, tie_break.clone());
    }
    let levels = kept_ids.iter().map(|&c| half(c)).max().unwrap_or(0);
    for level in 1..=levels {
        let (top, bottom): (Vec<usize>, Vec<usize>) = all.iter().copied().partition(|&c| beta.contains_key(&c) && half(c) >= level);
        let mut first = top.clone();
        first.extend(&bottom);
        let mut second: Vec<usize> = top.iter().rev().copied().collect();
        second.extend(bottom.iter().rev());
        record(&mut b, &mut have, first);
        record(&mut b, &mut have, second);
    }
    // Each hub settles its remaining contests with stars `h ≻ ⟨R⟩ ≻ ⟨W⟩`,
    // `⟨W⟩ʳ ≻ h ≻ ⟨R⟩ʳ` (h over R by two) and reverse stars (R over h by two).
    let hubs: Vec<(usize, Vec<usize>)> = std::iter::once((np, all.iter().copied().filter(|&c| c != np).collect()))
        .chain(y_ids.iter().map(|&y| (y, kept_ids.clone())))
        .collect();
    for (h, rivals) in hubs {
        loop {
            let wins: Vec<usize> = rivals.iter().copied().filter(|&c| want[h][c] - have[h][c] >= 2).collect();
            let losses: Vec<usize> = rivals.iter().copied().filter(|&c| want[h][c] - have[h][c] <= -2).collect();
            if wins.is_empty() && losses.is_empty() {
                break;
            }
            for (group, hub_first) in [(wins, true), (losses, false)] {
                if group.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = all.iter().copied().filter(|&c| c != h && !group.contains(&c)).collect();
                let mut first = Vec::new();
                let mut second: Vec<usize> = rest.iter().rev().copied().collect();
                if hub_first {
                    first.push(h);
                    first.extend(&group);
                    second.push(h);
                    second.extend(group.iter().rev());
                } else {
                    first.extend(&group);
                    first.push(h);
                    second.extend(group.iter().rev());
                    second.push(h);
                }
                first.extend(&rest);
                record(&mut b, &mut have, first);
                record(&mut b, &mut have, second);
            }
        }
    }
    debug_assert_eq!(want, have, "kernel margins differ from their targets");
    for &v in &retained {
        let front: BTreeSet<usize> = ev.ahead(v).iter().take(t).copied().collect();
        b.retain(v, &front);
    }
    b.finish()
}

/// Adds a fixed gadget voter and its head-to-head contributions.
fn record(b: &mut Builder, have: &mut [Vec<i64>], order: Vec<usize>) {
    for (i, &a) in order.iter().enumerate() {
        for &c in &order[i + 1..] {
            have[a][c] += 1;
            have[c][a] -= 1;
        }
    }
    b.fixed(order, VoterOrigin::Gadget);
}
