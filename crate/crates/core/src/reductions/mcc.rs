use std::collections::BTreeSet;

use super::{cat, rev, Cands, GraphInstance, Reduction, Voters};
use crate::{Error, Result};

/// Multicolored Clique on a regular, properly colored graph to Copeland Shift
/// Bribery with unit prices and 2k + 3 voters.
///
/// Each color owns two voters. Shifting `p` through them passes a run of
/// selection and filler blocks, one block pair per vertex of that color, and the
/// only way to pass every selection block within budget leaves exactly one
/// vertex whose incident edge candidates are passed in both voters. `p` then
/// needs k(k − 1)/2 edge candidates, which forces the chosen vertices to be
/// pairwise adjacent.
pub fn reduce_mcc_copeland(graph: &GraphInstance) -> Result<Reduction> {
    let k = graph.k;
    let n = graph.vertices;
    let coloring = graph
        .coloring
        .as_ref()
        .ok_or_else(|| Error::Precondition("multicolored clique needs a coloring".into()))?;
    if k == 0 || n == 0 {
        return Err(Error::Precondition("need at least one color and one vertex".into()));
    }
    let delta = graph.degree(0);
    if (0..n).any(|v| graph.degree(v) != delta) {
        return Err(Error::Precondition("graph must be regular".into()));
    }
    if graph.edges.iter().any(|&(a, b)| coloring[a] == coloring[b]) {
        return Err(Error::Precondition("coloring must be proper".into()));
    }
    let pairs = k * (k - 1) / 2;
    if graph.edges.len() < pairs {
        return Err(Error::Precondition("fewer edges than a clique needs".into()));
    }
    let cube = n.checked_pow(3).ok_or_else(|| Error::Capacity("graph too large".into()))?;
    let fifth = n.checked_pow(5).ok_or_else(|| Error::Capacity("graph too large".into()))?;

    // Vertices of each color, ascending.
    let mut by_color = vec![Vec::new(); k];
    for v in 0..n {
        by_color[coloring[v]].push(v);
    }

    let mut c = Cands::default();
    let p = c.add("p".into());
    let d = c.add("d".into());
    // sel[i][j] and fill[i][j] for j = 0..=n_i.
    let mut sel = Vec::with_capacity(k);
    let mut fill = Vec::with_capacity(k);
    for (i, members) in by_color.iter().enumerate() {
        let mut s_i = Vec::new();
        let mut f_i = Vec::new();
        for j in 0..=members.len() {
            s_i.push(c.group(&format!("s{}.{}.", i + 1, j + 1), cube));
            f_i.push(c.group(&format!("f{}.{}.", i + 1, j + 1), 2 * cube));
        }
        sel.push(s_i);
        fill.push(f_i);
    }
    let edge: Vec<usize> = graph.edges.iter().map(|&(a, b)| c.add(format!("e{a}-{b}"))).collect();
    let dummy: Vec<Vec<usize>> = (1..=3).map(|i| c.group(&format!("d{i}."), fifth)).collect();

    // Edge candidates incident to each vertex.
    let incident = |v: usize| -> Vec<usize> {
        graph
            .edges
            .iter()
            .zip(&edge)
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &e)| e)
            .collect()
    };
    let flatten = |sets: &[Vec<usize>]| -> Vec<usize> { sets.iter().flatten().copied().collect() };
    let all_sel: Vec<usize> = sel.iter().flat_map(|s| flatten(s)).collect();
    let all_fill: Vec<usize> = fill.iter().flat_map(|f| flatten(f)).collect();
    let sel_fill: Vec<usize> = {
        let mut v = cat(&[&all_sel, &all_fill]);
        v.sort_unstable();
        v
    };
    let others = |i: usize| -> Vec<usize> {
        let mut v = dummy.iter().enumerate().filter(|&(j, _)| j != i).flat_map(|(_, s)| s.iter().copied()).collect::<Vec<_>>();
        v.sort_unstable();
        v
    };

    let mut voters = Voters::default();
    for (i, members) in by_color.iter().enumerate() {
        let ni = members.len();
        let own_edges: BTreeSet<usize> = members.iter().flat_map(|&v| incident(v)).collect();
        let mut first_part = Vec::new();
        for j in 1..=ni {
            first_part.extend(&sel[i][j]);
            first_part.extend(incident(members[j - 1]));
            first_part.extend(&fill[i][j]);
        }
        first_part.push(p);
        let mut second_part = Vec::new();
        for j in (0..ni).rev() {
            second_part.extend(&sel[i][j]);
            second_part.extend(incident(members[j]));
            second_part.extend(&fill[i][j]);
        }
        second_part.push(p);
        let mut rest_sel_edges: Vec<usize> = sel
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != i)
            .flat_map(|(_, s)| flatten(s))
            .chain(edge.iter().copied().filter(|e| !own_edges.contains(e)))
            .collect();
        rest_sel_edges.sort_unstable();
        let rest_fill: Vec<usize> =
            fill.iter().enumerate().filter(|&(x, _)| x != i).flat_map(|(_, f)| flatten(f)).collect();
        voters.unit(cat(&[
            &[d],
            &sel[i][0],
            &fill[i][0],
            &dummy[0],
            &first_part,
            &others(0),
            &rest_sel_edges,
            &rest_fill,
        ]));
        voters.unit(cat(&[
            &rev(&rest_sel_edges),
            &sel[i][ni],
            &fill[i][ni],
            &rev(&others(0)),
            &second_part,
            &rev(&dummy[0]),
            &[d],
            &rev(&rest_fill),
        ]));
    }
    let (chosen, remaining) = edge.split_at(pairs);
    voters.unit(cat(&[&[d], &edge, &dummy[0], &[p], &others(0), &sel_fill]));
    voters.unit(cat(&[remaining, &[d], chosen, &dummy[1], &[p], &others(1), &sel_fill]));
    voters.unit(cat(&[&sel_fill, &edge, &dummy[2], &[p], &others(2), &[d]]));

    let budget = ((n + k) * (3 * cube + delta)) as u64;
    Ok(Reduction { instance: voters.build(c, p, budget)?, affected: None, padding: 0 })
}
