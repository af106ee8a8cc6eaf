use std::collections::{BTreeMap, BTreeSet};

use crate::election::ShiftEvaluator;
use crate::{Error, Guarantee, Instance, Result, Rule, SolveResult};

use super::Best;

/// Exact solver over actions with at most `t` unit shifts, for Borda and Maximin.
///
/// For each guess of how many points `p` gains, only the candidates that must be
/// passed matter. Voters are grouped by which of those candidates a j-position
/// shift passes, and only the cheapest few voters of each group can appear in an
/// optimal action, so the enumeration runs over a set of voters bounded in `t`.
pub fn fpt_shifts(inst: &Instance, rule: Rule, t: usize) -> Result<SolveResult> {
    let ev = inst.evaluator(rule);
    let caps = inst.caps();
    let mut best = Best::default();
    let mut explored = 0u64;
    for guess in guesses(inst, rule, t)? {
        let voters = candidate_voters(inst, &ev, &guess.critical, guess.depth);
        let mut enumeration = Enumeration {
            inst,
            ev: &ev,
            voters: &voters,
            caps: &caps,
            action: vec![0; caps.len()],
            best: &mut best,
            explored: &mut explored,
        };
        enumeration.run(0, guess.depth, guess.exact)?;
    }
    SolveResult::conclude(inst, rule, best.action, Guarantee::Exact, explored)
}

/// One admissible guess of how many points `p` gains.
#[derive(Clone, Debug)]
pub(crate) struct Guess {
    pub(crate) gain: usize,
    /// Candidates a successful action with this gain must pass.
    pub(crate) critical: BTreeSet<usize>,
    /// Longest shift and group size worth considering; also the shift total.
    pub(crate) depth: usize,
    /// Whether the action must use exactly `depth` shifts (Borda) or at most (Maximin).
    pub(crate) exact: bool,
}

/// The gains 0..=t that survive the counting argument, with their critical sets.
///
/// Under Borda, gaining t' points takes exactly t' shifts and every candidate more
/// than t' points ahead must be passed. Under Maximin, reaching score s + t' means
/// passing every c with N(p, c) < s + t', and also every c whose score exceeds
/// s + t', since only passing lowers that score.
pub(crate) fn guesses(inst: &Instance, rule: Rule, t: usize) -> Result<Vec<Guess>> {
    if let Rule::Copeland(_) = rule {
        return Err(Error::RuleNotSupported(
            "the shift-count solver handles Borda and Maximin only".into(),
        ));
    }
    let nm = inst.election().pairwise();
    let scores = nm.scaled_scores(rule);
    let p = inst.preferred();
    let m = inst.num_candidates();
    let s = scores[p];
    let mut out = Vec::new();
    for gain in 0..=t {
        let target = s + gain as i64;
        let ahead_of_target = (0..m).filter(|&c| c != p && scores[c] > target);
        if rule == Rule::Borda {
            let critical: BTreeSet<usize> = ahead_of_target.collect();
            if critical.len() <= gain {
                out.push(Guess { gain, critical, depth: gain, exact: true });
            }
        } else {
            let mut critical: BTreeSet<usize> =
                (0..m).filter(|&c| c != p && nm.get(p, c) < target).collect();
            if critical.len() > t - gain + 1 {
                continue;
            }
            critical.extend(ahead_of_target);
            if critical.len() <= t {
                out.push(Guess { gain, critical, depth: t, exact: false });
            }
        }
    }
    Ok(out)
}

/// All voters any guess may need.
pub(crate) fn relevant_voters(inst: &Instance, rule: Rule, t: usize) -> Result<Vec<usize>> {
    let ev = inst.evaluator(rule);
    let mut all = BTreeSet::new();
    for guess in guesses(inst, rule, t)? {
        all.extend(candidate_voters(inst, &ev, &guess.critical, guess.depth));
    }
    Ok(all.into_iter().collect())
}

/// The union over (j, passed critical set) of the `depth` cheapest voters for whom a
/// shift by exactly j positions passes that critical set, for j = 1..=depth.
fn candidate_voters(
    inst: &Instance,
    ev: &ShiftEvaluator,
    critical: &BTreeSet<usize>,
    depth: usize,
) -> Vec<usize> {
    let mut groups: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in 0..inst.num_voters() {
        let ahead = ev.ahead(v);
        for j in 1..=depth.min(ahead.len()) {
            let mut passed: Vec<usize> =
                ahead[..j].iter().copied().filter(|c| critical.contains(c)).collect();
            passed.sort_unstable();
            groups.entry((j, passed)).or_default().push(v);
        }
    }
    let mut chosen = BTreeSet::new();
    for ((j, _), mut members) in groups {
        members.sort_by_key(|&v| (inst.prices().get(v).price(j), v));
        chosen.extend(members.into_iter().take(depth));
    }
    chosen.into_iter().collect()
}

struct Enumeration<'a> {
    inst: &'a Instance,
    ev: &'a ShiftEvaluator,
    voters: &'a [usize],
    caps: &'a [usize],
    action: Vec<usize>,
    best: &'a mut Best,
    explored: &'a mut u64,
}

impl Enumeration<'_> {
    /// Distributes up to `left` shifts over `voters[i..]`; with `exact`, all of them.
    fn run(&mut self, i: usize, left: usize, exact: bool) -> Result<()> {
        if i == self.voters.len() {
            if exact && left > 0 {
                return Ok(());
            }
            *self.explored += 1;
            let cost = self.inst.cost(&self.action)?;
            if self.best.beats(cost) && self.ev.wins(&self.action) {
                self.best.offer(cost, &self.action);
            }
            return Ok(());
        }
        let v = self.voters[i];
        for k in 0..=left.min(self.caps[v]) {
            self.action[v] = k;
            self.run(i + 1, left - k, exact)?;
        }
        self.action[v] = 0;
        Ok(())
    }
}
