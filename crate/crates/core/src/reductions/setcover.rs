use std::collections::BTreeMap;

use super::gadgets::{mcgarvey, point_pair, Separation};
use super::{cat, rev, Cands, PriceVariant, Reduction, SetCoverInstance, Voters};
use crate::{Result, Rule};

/// Set Cover with cover size k to Shift Bribery with at most k affected voters.
///
/// Candidates are `p`, `d`, `g`, one per element and a rule-specific number of
/// fillers. Each set S_i yields a voter who ranks S_i plus padding directly above
/// `p`, so moving `p` to the top passes exactly the elements of S_i. With unit
/// prices the budget is k(n + 1); with all-or-nothing prices it is k, those set
/// voters cost 1 and every other voter costs k + 1.
pub fn reduce_setcover(sc: &SetCoverInstance, rule: Rule, prices: PriceVariant) -> Result<Reduction> {
    let n = sc.universe;
    let k = sc.k;
    let b = k * (n + 1);
    let mut c = Cands::default();
    let p = c.add("p".into());
    let d = c.add("d".into());
    let g = c.add("g".into());
    let u = c.group("u", n);
    let fillers = match rule {
        Rule::Maximin => 2 * n * k + 2 * k,
        _ => 2 * b + 2,
    };
    let f = c.group("f", fillers);
    let mut v = Voters::default();
    // Set voters come first; for all-or-nothing prices only the odd ones are cheap.
    let set_voters = |v: &mut Voters| {
        for set in &sc.family {
            let s: Vec<usize> = set.iter().map(|&e| u[e]).collect();
            let pad = &f[..n - s.len()];
            let first = match rule {
                Rule::Maximin => {
                    let other_u: Vec<usize> = u.iter().copied().filter(|x| !s.contains(x)).collect();
                    cat(&[&[g], &s, pad, &[p], &f[n - s.len()..], &other_u, &[d]])
                }
                _ => {
                    let rest = c.rest(&[&[d, p], &s, pad]);
                    cat(&[&[d], &s, pad, &[p], &rest])
                }
            };
            let second = rev(&first);
            match prices {
                PriceVariant::Unit => {
                    v.unit(first);
                    v.unit(second);
                }
                PriceVariant::AllOrNothing => {
                    v.flat(first, 1);
                    v.flat(second, k as u64 + 1);
                }
            }
        }
    };
    set_voters(&mut v);
    let mut fixed = Vec::new();
    match rule {
        Rule::Borda => {
            for &ui in &u {
                let rest = c.rest(&[&[ui, g, p, d]]);
                let pair = point_pair(p, &[], ui, g, &rest, d)?;
                for _ in 0..=b {
                    fixed.extend(pair.clone());
                }
            }
            let wall = &f[..=b];
            let z = f[b + 1];
            let rest = c.rest(&[&[p, g, d, z], wall]);
            let pair = point_pair(p, wall, d, g, &rest, z)?;
            for _ in 0..b + k {
                fixed.extend(pair.clone());
            }
        }
        Rule::Maximin => {
            let (x1, x2) = f.split_at(n * k + k);
            let groups: [(usize, Vec<usize>); 4] = [
                (k, cat(&[&[p, d, g], &u, x1, x2])),
                (k - 1, cat(&[&[g], x1, &[p], x2, &[d], &u])),
                (1, cat(&[&[g], &u, x1, &[p], x2, &[d]])),
                (2 * k, cat(&[&[d, g], &u, x2, &[p], x1])),
            ];
            for (count, order) in groups {
                fixed.extend(std::iter::repeat_n(order, count));
            }
        }
        Rule::Copeland(_) => {
            let mut fp = vec![g];
            fp.extend(&f);
            let r = fp.len();
            let odd_voter = cat(&[&[p, d], &u, &fp]);
            let mut want: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            let mut set = |x: usize, y: usize, margin: i64| {
                want.insert((x, y), margin);
            };
            set(d, p, 2 * k as i64 - 1);
            for &ui in &u {
                set(d, ui, 1);
                set(p, ui, -1);
            }
            for (j, &x) in fp.iter().enumerate() {
                let beaten = j < r - n;
                set(d, x, if beaten { 1 } else { -1 });
                set(p, x, if beaten { 1 } else { -(2 * k as i64 + 1) });
            }
            for (i, &ui) in u.iter().enumerate() {
                for &uj in &u[..i] {
                    set(ui, uj, 1);
                }
                for (j, &x) in fp.iter().enumerate() {
                    set(ui, x, if j < r - i { 1 } else { -1 });
                }
            }
            for a in 0..r {
                for step in 1..=r / 2 {
                    set(fp[a], fp[(a + step) % r], 1);
                }
            }
            // The odd voter's own contribution is taken out of the targets.
            for (i, &x) in odd_voter.iter().enumerate() {
                for &y in &odd_voter[i + 1..] {
                    if let Some(m) = want.get_mut(&(x, y)) {
                        *m -= 1;
                    } else if let Some(m) = want.get_mut(&(y, x)) {
                        *m += 1;
                    }
                }
            }
            let all: Vec<usize> = (0..c.len()).collect();
            fixed.push(odd_voter);
            fixed.extend(mcgarvey(&all, &want, Some(Separation { p, d, gap: b }))?);
        }
    }
    for order in fixed {
        match prices {
            PriceVariant::Unit => v.unit(order),
            PriceVariant::AllOrNothing => v.flat(order, k as u64 + 1),
        }
    }
    let budget = match prices {
        PriceVariant::Unit => b as u64,
        PriceVariant::AllOrNothing => k as u64,
    };
    Ok(Reduction { instance: v.build(c, p, budget)?, affected: Some(k), padding: 0 })
}
