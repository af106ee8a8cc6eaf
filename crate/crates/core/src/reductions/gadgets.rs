//! Order-pair gadgets shared by the reductions and the kernels.
//!
//! Candidates are plain indices. Every `⟨A⟩` is A in ascending order, and `⟨A⟩ʳ`
//! its reverse.

use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

fn ascending(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v
}

fn reversed(v: &[usize]) -> Vec<usize> {
    v.iter().rev().copied().collect()
}

/// `p ≻ ⟨A⟩ ≻ d ≻ g ≻ ⟨B⟩ ≻ z` and `z ≻ ⟨B⟩ʳ ≻ d ≻ g ≻ ⟨A⟩ʳ ≻ p`.
///
/// Under Borda, `d` ends one point ahead of every other candidate and two ahead of `g`.
pub fn point_pair(p: usize, a: &[usize], d: usize, g: usize, b: &[usize], z: usize) -> Result<[Vec<usize>; 2]> {
    let a = ascending(a);
    let b = ascending(b);
    let mut seen = BTreeSet::new();
    for &c in [p, d, g, z].iter().chain(&a).chain(&b) {
        if !seen.insert(c) {
            return Err(Error::InvalidArgument(format!("point-pair uses candidate {c} twice")));
        }
    }
    let mut first = vec![p];
    first.extend(&a);
    first.extend([d, g]);
    first.extend(&b);
    first.push(z);
    let mut second = vec![z];
    second.extend(reversed(&b));
    second.extend([d, g]);
    second.extend(reversed(&a));
    second.push(p);
    Ok([first, second])
}

/// `a_i ≻ ⟨A_i⟩ ≻ ⟨A ∖ A_i⟩` and `⟨A ∖ A_i⟩ʳ ≻ a_i ≻ ⟨A_i⟩ʳ`, where `A_i` holds the
/// (|A| − 1)/2 candidates following `a_i` cyclically in ascending order.
///
/// `a_i` beats `A_i` in both orders; every other pair splits.
pub fn half_seq(set: &[usize], ai: usize) -> Result<[Vec<usize>; 2]> {
    let all = ascending(set);
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("half-seq set has repeated candidates".into()));
    }
    if all.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("half-seq needs an odd set, got {}", all.len())));
    }
    let i = all
        .binary_search(&ai)
        .map_err(|_| Error::InvalidArgument(format!("candidate {ai} is not in the half-seq set")))?;
    let x = all.len() / 2;
    let next: Vec<usize> = (1..=x).map(|k| all[(i + k) % all.len()]).collect();
    let others: Vec<usize> = all.iter().copied().filter(|&c| c != ai && !next.contains(&c)).collect();
    let mut first = vec![ai];
    first.extend(&next);
    first.extend(&others);
    let mut second = reversed(&others);
    second.push(ai);
    second.extend(reversed(&next));
    Ok([first, second])
}

/// Keeps two candidates far apart in every order the McGarvey construction emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub p: usize,
    pub d: usize,
    /// Least number of candidates ranked between `p` and `d`.
    pub gap: usize,
}

/// Voters realizing the given head-to-head margins over `candidates`.
///
/// `targets[(x, y)]` is N(x, y) − N(y, x); unlisted pairs get margin 0, and a pair
/// may be listed in either or both directions. Margins must share a parity. Even
/// margins come from pairs `x ≻ y ≻ ⟨R⟩`, `⟨R⟩ʳ ≻ x ≻ y` that move a single contest by
/// two; odd margins add one leading voter with the ascending order.
///
/// With a separation, `p` and `d` sit at the ends of every order (first or second
/// against last or second to last). Contests between `p` and `d` then use pairs
/// `d ≻ ⟨R⟩ ≻ p`, `d ≻ ⟨R⟩ʳ ≻ p` whose side effects are cancelled by ordinary pairs.
pub fn mcgarvey(
    candidates: &[usize],
    targets: &BTreeMap<(usize, usize), i64>,
    separation: Option<Separation>,
) -> Result<Vec<Vec<usize>>> {
    let cands = ascending(candidates);
    if cands.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("McGarvey candidates repeat".into()));
    }
    let m = cands.len();
    let index: BTreeMap<usize, usize> = cands.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut want = vec![vec![0i64; m]; m];
    let mut given = vec![vec![false; m]; m];
    for (&(x, y), &margin) in targets {
        let (Some(&i), Some(&j)) = (index.get(&x), index.get(&y)) else {
            return Err(Error::InvalidArgument(format!("margin for ({x}, {y}) names an unknown candidate")));
        };
        if i == j {
            return Err(Error::InvalidArgument(format!("margin of candidate {x} against itself")));
        }
        if given[i][j] && want[i][j] != margin {
            return Err(Error::InvalidArgument(format!("contradictory margins for ({x}, {y})")));
        }
        given[i][j] = true;
        given[j][i] = true;
        want[i][j] = margin;
        want[j][i] = -margin;
    }
    let odd = want
        .iter()
        .enumerate()
        .any(|(i, row)| row.iter().enumerate().any(|(j, &w)| i != j && w.rem_euclid(2) == 1));
    for i in 0..m {
        for j in (i + 1)..m {
            if (want[i][j].rem_euclid(2) == 1) != odd {
                return Err(Error::InvalidArgument("McGarvey margins must share a parity".into()));
            }
        }
    }
    let sep = match separation {
        Some(s) => {
            let (Some(&pi), Some(&di)) = (index.get(&s.p), index.get(&s.d)) else {
                return Err(Error::InvalidArgument("separated candidates must be among the candidates".into()));
            };
            if pi == di || m < 3 || s.gap + 3 > m {
                return Err(Error::InvalidArgument(format!(
                    "cannot keep {} candidates between two of {m}",
                    s.gap
                )));
            }
            Some((s.p, s.d))
        }
        None => None,
    };
    let mut voters = Vec::new();
    let mut emit = |order: Vec<usize>, want: &mut Vec<Vec<i64>>| {
        for a in 0..m {
            for b in (a + 1)..m {
                let (i, j) = (index[&order[a]], index[&order[b]]);
                want[i][j] -= 1;
                want[j][i] += 1;
            }
        }
        voters.push(order);
    };
    if odd {
        let base = match sep {
            Some((p, d)) => {
                let mut o = vec![p];
                o.extend(cands.iter().copied().filter(|&c| c != p && c != d));
                o.push(d);
                o
            }
            None => cands.clone(),
        };
        emit(base, &mut want);
    }
    if let Some((p, d)) = sep {
        let rest: Vec<usize> = cands.iter().copied().filter(|&c| c != p && c != d).collect();
        let (pi, di) = (index[&p], index[&d]);
        while want[pi][di] != 0 {
            let (top, bottom) = if want[di][pi] > 0 { (d, p) } else { (p, d) };
            for inner in [rest.clone(), reversed(&rest)] {
                let mut o = vec![top];
                o.extend(inner);
                o.push(bottom);
                emit(o, &mut want);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            while want[i][j] > 0 {
                let [a, b] = mcgarvey_pair(&cands, cands[i], cands[j], sep);
                emit(a, &mut want);
                emit(b, &mut want);
            }
        }
    }
    Ok(voters)
}

/// Two orders that put `x` over `y` twice and tie every other contest.
fn mcgarvey_pair(cands: &[usize], x: usize, y: usize, sep: Option<(usize, usize)>) -> [Vec<usize>; 2] {
    let Some((p, d)) = sep else {
        let rest: Vec<usize> = cands.iter().copied().filter(|&c| c != x && c != y).collect();
        let mut first = vec![x, y];
        first.extend(&rest);
        let mut second = reversed(&rest);
        second.extend([x, y]);
        return [first, second];
    };
    // Whichever of p and d is not in the contest takes an end; the other sits
    // next to it or at the opposite end.
    let rest: Vec<usize> = cands.iter().copied().filter(|&c| ![x, y, p, d].contains(&c)).collect();
    let (lead, tail) = if x == d || y == d { (d, p) } else { (p, d) };
    let mut first = Vec::new();
    let mut second = Vec::new();
    if x == lead || y == lead {
        first.extend([x, y]);
    } else {
        first.extend([lead, x, y]);
    }
    first.extend(&rest);
    first.push(tail);
    second.push(tail);
    second.extend(reversed(&rest));
    if x == lead || y == lead {
        second.extend([x, y]);
    } else {
        second.extend([x, y, lead]);
    }
    [first, second]
}
