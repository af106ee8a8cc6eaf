use super::gadgets::half_seq;
use super::{cat, rev, Cands, GraphInstance, PriceVariant, Reduction, Voters};
use crate::{Error, Result};

/// Clique with clique size k to Copeland Shift Bribery with t = k(k − 1) unit shifts.
///
/// Every edge {x, y} yields a voter `x ≻ y ≻ p ≻ …` and its reverse, so shifting `p`
/// to the top passes both endpoints. Fixed voters make `d` the unique winner, k
/// points ahead of `p`, and leave each vertex 2k − 3 voters ahead of `p`; `p`
/// catches up exactly by passing the k vertices of a clique k − 1 times each.
///
/// With all-or-nothing prices the graph is padded with isolated vertices to an
/// odd order above 6, edge voters cost 1, everything else costs more than the
/// budget k(k − 1)/2. With unit prices the graph is padded so that vertices plus
/// edges is odd, the budget is 3k(k − 1)/2, and walls of filler candidates ahead
/// of `p` stand in for the expensive voters.
pub fn reduce_clique_copeland(graph: &GraphInstance, prices: PriceVariant) -> Result<Reduction> {
    let k = graph.k;
    if k < 2 {
        return Err(Error::Precondition("clique size must be at least 2".into()));
    }
    match prices {
        PriceVariant::AllOrNothing => all_or_nothing(graph, k),
        PriceVariant::Unit => unit(graph, k),
    }
}

fn all_or_nothing(graph: &GraphInstance, k: usize) -> Result<Reduction> {
    let mut n = graph.vertices.max(7);
    if n.is_multiple_of(2) {
        n += 1;
    }
    let budget = (k * (k - 1) / 2) as u64;
    let blocked = budget + 1;
    let mut c = Cands::default();
    let p = c.add("p".into());
    let d = c.add("d".into());
    let x = c.group("x", n);
    let dummies = c.group("e", 2 * n);
    if k + 1 > dummies.len() {
        return Err(Error::Precondition("clique size exceeds the graph order".into()));
    }
    let d1 = &dummies[..k + 1];
    let d_rest = &dummies[k + 1..];
    let mut v = Voters::default();
    for &(a, b) in &graph.edges {
        let first = cat(&[&[x[a], x[b], p], &c.rest(&[&[x[a], x[b], p]])]);
        v.flat(rev(&first), blocked);
        v.flat(first, 1);
    }
    let vd = cat(&[&x, &dummies]);
    v.flat(cat(&[&vd, &[p, d]]), blocked);
    for _ in 0..k - 2 {
        v.flat(cat(&[&x, &[p, d], &dummies]), blocked);
        v.flat(cat(&[&rev(&dummies), &[d], &rev(&x), &[p]]), blocked);
    }
    v.flat(cat(&[&[d], &dummies, &[p], &x]), blocked);
    v.flat(cat(&[&rev(&x), &[p, d], &rev(&dummies)]), blocked);
    v.flat(cat(&[&[p], d_rest, d1, &x, &[d]]), blocked);
    v.flat(cat(&[&[d], &rev(&x), &rev(d1), &[p], &rev(d_rest)]), blocked);
    for &a in &vd {
        let [first, second] = half_seq(&vd, a)?;
        v.flat(cat(&[&first, &[p, d]]), blocked);
        v.flat(cat(&[&[d, p], &second]), blocked);
    }
    let padding = n - graph.vertices;
    Ok(Reduction { instance: v.build(c, p, budget)?, affected: None, padding })
}

fn unit(graph: &GraphInstance, k: usize) -> Result<Reduction> {
    let m = graph.edges.len();
    let n = if (graph.vertices + m).is_multiple_of(2) { graph.vertices + 1 } else { graph.vertices };
    let b = 3 * k * (k - 1) / 2;
    let small = k * (k - 1) / 2 + k + 1;
    let large = (4 * (m + n))
        .checked_sub(small)
        .ok_or_else(|| Error::Precondition("graph too small for the dummy candidates".into()))?;
    let mut c = Cands::default();
    let p = c.add("p".into());
    let d = c.add("d".into());
    let x = c.group("x", n);
    let d1 = c.group("e", large);
    let d2 = c.group("h", small);
    let f1 = c.group("f", b);
    let f2 = c.group("g", b);
    let q = c.group("q", m);
    let f = cat(&[&f1, &f2]);
    let mut v = Voters::default();
    for (i, &(a, b)) in graph.edges.iter().enumerate() {
        let head = [q[i], x[a], x[b], p];
        let first = cat(&[&head, &f, &c.rest(&[&head, &f])]);
        v.unit(rev(&first));
        v.unit(first);
    }
    v.unit(cat(&[&q, &x, &[d], &d2, &f, &[p], &d1]));
    let others = c.rest(&[&[p, d], &f]);
    v.unit(cat(&[&[p, d], &f, &others]));
    v.unit(cat(&[&rev(&others), &rev(&f), &[p, d]]));
    let others = c.rest(&[&[p], &f, &x]);
    for _ in 0..k - 2 {
        v.unit(cat(&[&x, &f, &[p], &others]));
        v.unit(cat(&[&rev(&others), &rev(&x), &rev(&f), &[p]]));
    }
    let others = c.rest(&[&[p], &f, &d1]);
    for _ in 0..k - 1 {
        v.unit(cat(&[&[p], &d1, &f1, &f2, &others]));
        v.unit(cat(&[&rev(&others), &rev(&f2), &[p], &rev(&d1), &rev(&f1)]));
        v.unit(cat(&[&[p], &d1, &f2, &f1, &others]));
        v.unit(cat(&[&rev(&others), &rev(&f1), &[p], &rev(&d1), &rev(&f2)]));
    }
    let a = cat(&[&x, &d1, &d2, &q]);
    for &y in &a {
        let [first, second] = half_seq(&a, y)?;
        v.unit(cat(&[&first, &f, &[p, d]]));
        v.unit(cat(&[&[d, p], &rev(&f), &second]));
    }
    let padding = n - graph.vertices;
    Ok(Reduction { instance: v.build(c, p, b as u64)?, affected: None, padding })
}
