mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use shiftbribery::reductions::gadgets::{half_seq, mcgarvey, point_pair, Separation};
use shiftbribery::reductions::{
    reduce_clique_copeland, reduce_mcc_copeland, reduce_setcover, GraphInstance, PriceVariant, SetCoverInstance,
};
use shiftbribery::solvers::{brute_force_with, BruteForceOptions};
use shiftbribery::{Election, Instance, Rational, Rule};

fn names(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("c{i}")).collect()
}

fn election(m: usize, orders: Vec<Vec<usize>>) -> Election {
    Election::new(names(m), orders).unwrap()
}

/// Realized margins of a voter list, all zero when it is empty.
fn realized(m: usize, voters: Vec<Vec<usize>>) -> Vec<Vec<i64>> {
    if voters.is_empty() {
        return vec![vec![0; m]; m];
    }
    margins(&election(m, voters))
}

fn margins(e: &Election) -> Vec<Vec<i64>> {
    let m = e.num_candidates();
    (0..m).map(|x| (0..m).map(|y| count(e, x, y) - count(e, y, x)).collect()).collect()
}

#[test]
fn point_pair_orders() {
    let [a, b] = point_pair(0, &[], 1, 2, &[3], 4).unwrap();
    assert_eq!(a, vec![0, 1, 2, 3, 4]);
    assert_eq!(b, vec![4, 3, 1, 2, 0]);
    let e = election(5, vec![a, b]);
    assert_eq!(count(&e, 1, 2), 2);
    assert_eq!(count(&e, 1, 0), 1);
    assert_eq!(count(&e, 0, 1), 1);
}

#[test]
fn point_pair_borda_effect() {
    // p = 0, A = {5, 6}, d = 1, g = 2, B = {3, 4}, z = 7.
    let pair = point_pair(0, &[6, 5], 1, 2, &[4, 3], 7).unwrap();
    let e = election(8, pair.to_vec());
    let s = naive_scores(&e, Rule::Borda);
    for c in [0, 3, 4, 5, 6, 7] {
        assert_eq!(s[1], s[c] + 1, "candidate {c}");
    }
    assert_eq!(s[1], s[2] + 2);
}

#[test]
fn point_pair_needs_a_plus_two_shifts_to_pass_d() {
    // p sits behind ⟨A⟩ʳ, g and d in the second order.
    let pair = point_pair(0, &[5, 6], 1, 2, &[3, 4], 7).unwrap();
    let e = election(8, pair.to_vec());
    let before = naive_scores(&e, Rule::Borda)[1];
    for k in 0..=5 {
        let after = naive_scores(&naive_shift(&e, 0, &[0, k]), Rule::Borda)[1];
        assert_eq!(after < before, k >= 4, "shift {k}");
    }
}

#[test]
fn point_pair_rejects_overlap() {
    assert!(point_pair(0, &[1], 1, 2, &[], 3).is_err());
    assert!(point_pair(0, &[3], 1, 2, &[3], 4).is_err());
}

#[test]
fn half_seq_three() {
    let [a, b] = half_seq(&[1, 2, 3], 1).unwrap();
    assert_eq!(a, vec![1, 2, 3]);
    assert_eq!(b, vec![3, 1, 2]);
    let e = election(4, vec![cat0(a), cat0(b)]);
    assert_eq!((count(&e, 1, 2), count(&e, 2, 1)), (2, 0));
    assert_eq!((count(&e, 1, 3), count(&e, 3, 1)), (1, 1));
}

fn cat0(mut v: Vec<usize>) -> Vec<usize> {
    v.push(0);
    v
}

#[test]
fn half_seq_five_pattern() {
    let set = [0, 1, 2, 3, 4];
    for ai in set {
        let e = election(5, half_seq(&set, ai).unwrap().to_vec());
        let mg = margins(&e);
        for x in set {
            for y in set {
                if x == y {
                    continue;
                }
                let beaten = x == ai && (1..=2).any(|k| y == (ai + k) % 5);
                let beats = y == ai && (1..=2).any(|k| x == (ai + k) % 5);
                let expected = if beaten { 2 } else if beats { -2 } else { 0 };
                assert_eq!(mg[x][y], expected, "a_i={ai}, ({x},{y})");
            }
        }
    }
}

#[test]
fn half_seq_singleton_and_even() {
    assert_eq!(half_seq(&[7], 7).unwrap(), [vec![7], vec![7]]);
    assert!(half_seq(&[1, 2], 1).is_err());
    assert!(half_seq(&[1, 2, 3], 4).is_err());
}

#[test]
fn mcgarvey_single_margin() {
    let targets = BTreeMap::from([((0, 1), 2)]);
    let voters = mcgarvey(&[0, 1, 2], &targets, None).unwrap();
    assert_eq!(voters.len(), 2);
    let mg = margins(&election(3, voters));
    assert_eq!(mg[0][1], 2);
    assert_eq!(mg[0][2], 0);
    assert_eq!(mg[1][2], 0);
}

#[test]
fn mcgarvey_zero_targets() {
    assert!(mcgarvey(&[0, 1, 2], &BTreeMap::new(), None).unwrap().is_empty());
}

#[test]
fn mcgarvey_rejects_mixed_parity() {
    let targets = BTreeMap::from([((0, 1), 2), ((1, 2), 1)]);
    assert!(mcgarvey(&[0, 1, 2], &targets, None).is_err());
}

#[test]
fn mcgarvey_rejects_impossible_separation() {
    let sep = Separation { p: 0, d: 1, gap: 3 };
    assert!(mcgarvey(&[0, 1, 2, 3], &BTreeMap::new(), Some(sep)).is_err());
}

fn tournament() -> impl Strategy<Value = (usize, bool, Vec<i64>)> {
    (2usize..=5, any::<bool>()).prop_flat_map(|(m, odd)| {
        let pairs = m * (m - 1) / 2;
        (Just(m), Just(odd), prop::collection::vec(-3i64..=3, pairs))
    })
}

fn targets_of(m: usize, odd: bool, raw: &[i64]) -> BTreeMap<(usize, usize), i64> {
    let mut t = BTreeMap::new();
    let mut it = raw.iter();
    for x in 0..m {
        for y in x + 1..m {
            let r = *it.next().unwrap();
            t.insert((x, y), 2 * r + odd as i64);
        }
    }
    t
}

proptest! {
    #[test]
    fn mcgarvey_realizes_random_margins((m, odd, raw) in tournament()) {
        let targets = targets_of(m, odd, &raw);
        let voters = mcgarvey(&(0..m).collect::<Vec<_>>(), &targets, None).unwrap();
        let mg = realized(m, voters);
        for (&(x, y), &want) in &targets {
            prop_assert_eq!(mg[x][y], want);
        }
    }

    #[test]
    fn mcgarvey_with_separation(odd in any::<bool>(), raw in prop::collection::vec(-3i64..=3, 28), gap in 0usize..=5) {
        let m = 8;
        let targets = targets_of(m, odd, &raw);
        let sep = Separation { p: 2, d: 5, gap };
        let voters = mcgarvey(&(0..m).collect::<Vec<_>>(), &targets, Some(sep)).unwrap();
        for o in &voters {
            let a = o.iter().position(|&c| c == 2).unwrap();
            let b = o.iter().position(|&c| c == 5).unwrap();
            prop_assert!(a.abs_diff(b) > gap);
        }
        let mg = realized(m, voters);
        for (&(x, y), &want) in &targets {
            prop_assert_eq!(mg[x][y], want);
        }
    }
}

fn decide(inst: &Instance, rule: Rule, affected: Option<usize>) -> bool {
    let opts = BruteForceOptions { max_affected: affected, ..Default::default() };
    brute_force_with(inst, rule, opts).unwrap().feasible
}

#[test]
fn setcover_borda_single_element() {
    let sc = SetCoverInstance::new(1, vec![vec![0]], 1).unwrap();
    let r = reduce_setcover(&sc, Rule::Borda, PriceVariant::Unit).unwrap();
    let inst = &r.instance;
    let fillers = inst.election().names().iter().filter(|n| n.starts_with('f')).count();
    assert_eq!(fillers, 6);
    assert_eq!(inst.budget(), Some(2));
    assert_eq!(r.affected, Some(1));
    assert!(decide(inst, Rule::Borda, r.affected));
}

#[test]
fn setcover_borda_uncoverable() {
    let sc = SetCoverInstance::new(2, vec![vec![0]], 1).unwrap();
    let r = reduce_setcover(&sc, Rule::Borda, PriceVariant::Unit).unwrap();
    assert!(!decide(&r.instance, Rule::Borda, r.affected));
}

#[test]
fn setcover_borda_score_table() {
    for sc in [
        SetCoverInstance::new(2, vec![vec![0], vec![0, 1]], 1).unwrap(),
        SetCoverInstance::new(3, vec![vec![0, 2], vec![1], vec![2]], 2).unwrap(),
    ] {
        let r = reduce_setcover(&sc, Rule::Borda, PriceVariant::Unit).unwrap();
        let e = r.instance.election();
        let s = naive_scores(e, Rule::Borda);
        let b = (sc.k * (sc.universe + 1)) as i64;
        let (p, d) = (0, 1);
        let l = s[p];
        assert_eq!(s[d], l + b + sc.k as i64);
        for u in 0..sc.universe {
            let ui = e.index_of(&format!("u{}", u + 1)).unwrap();
            assert_eq!(s[ui], l + b + 1);
        }
    }
}

/// Pairwise counts of the Maximin construction, by candidate group.
#[test]
fn setcover_maximin_table() {
    for sc in [
        SetCoverInstance::new(2, vec![vec![0], vec![1]], 2).unwrap(),
        SetCoverInstance::new(3, vec![vec![0, 1], vec![2], vec![1, 2]], 2).unwrap(),
        SetCoverInstance::new(1, vec![vec![0]], 1).unwrap(),
    ] {
        let r = reduce_setcover(&sc, Rule::Maximin, PriceVariant::Unit).unwrap();
        let e = r.instance.election();
        let (n, k, m) = (sc.universe as i64, sc.k as i64, sc.family.len() as i64);
        let idx = |s: &str| e.index_of(s).unwrap();
        let (p, d, g) = (idx("p"), idx("d"), idx("g"));
        let us: Vec<usize> = (1..=n).map(|i| idx(&format!("u{i}"))).collect();
        let fs: Vec<usize> = (0..e.num_candidates()).filter(|&c| e.name(c).starts_with('f')).collect();
        assert_eq!(fs.len() as i64, 2 * n * k + 2 * k);
        let eq = |x: usize, y: usize, want: i64| assert_eq!(count(e, x, y), want, "N({},{})", e.name(x), e.name(y));
        eq(p, g, m + k);
        eq(p, d, m + 2 * k);
        eq(g, p, m + 3 * k);
        eq(g, d, m + k);
        eq(d, p, m + 2 * k);
        eq(d, g, m + 3 * k);
        for &u in &us {
            eq(p, u, m + 2 * k - 1);
            eq(g, u, m + 4 * k);
            eq(d, u, m + 4 * k - 1);
            eq(u, p, m + 2 * k + 1);
            eq(u, g, m);
            eq(u, d, m + 1);
            for &v in &us {
                if u != v {
                    assert!(count(e, u, v) <= m + 4 * k);
                }
            }
            for &f in &fs {
                eq(u, f, m + 3 * k + 1);
                eq(f, u, m + k - 1);
            }
        }
        for &f in &fs {
            assert!(count(e, p, f) >= m + 2 * k);
            assert!(count(e, f, p) <= m + 2 * k);
            eq(g, f, m + 4 * k);
            eq(d, f, m + 3 * k);
            eq(f, g, m);
            eq(f, d, m + k);
            for &h in &fs {
                if f != h {
                    assert!(count(e, f, h) <= m + 4 * k);
                }
            }
        }
        let s = naive_scores(e, Rule::Maximin);
        assert_eq!(s[p], m + k);
        assert_eq!(s[d], m + 2 * k);
        assert!((0..e.num_candidates()).filter(|&c| c != d).all(|c| s[c] < s[d]));
    }
}

#[test]
fn setcover_answers_match() {
    let variants = [PriceVariant::Unit, PriceVariant::AllOrNothing];
    let rules = [Rule::Borda, Rule::Maximin, Rule::Copeland(Rational::new(1, 2))];
    for sc in small_set_covers().into_iter().filter(|sc| sc.universe <= 2 && sc.family.len() <= 2) {
        let want = set_cover_exists(&sc);
        for rule in rules {
            for prices in variants {
                let r = reduce_setcover(&sc, rule, prices).unwrap();
                assert_eq!(decide(&r.instance, rule, r.affected), want, "{sc:?} {rule} {prices:?}");
            }
        }
    }
}

#[test]
fn clique_triangle_and_path() {
    let triangle = GraphInstance::new(3, vec![(0, 1), (1, 2), (0, 2)], 3).unwrap();
    let path = GraphInstance::new(3, vec![(0, 1), (1, 2)], 3).unwrap();
    let copeland = Rule::Copeland(Rational::new(1, 2));
    for (g, want) in [(triangle, true), (path, false)] {
        let r = reduce_clique_copeland(&g, PriceVariant::AllOrNothing).unwrap();
        assert_eq!(r.padding, 4);
        assert_eq!(decide(&r.instance, copeland, None), want);
    }
}

#[test]
fn clique_all_or_nothing_winner() {
    for g in [
        GraphInstance::new(3, vec![(0, 1), (1, 2), (0, 2)], 2).unwrap(),
        GraphInstance::new(8, vec![(0, 1), (2, 7)], 3).unwrap(),
    ] {
        let r = reduce_clique_copeland(&g, PriceVariant::AllOrNothing).unwrap();
        let e = r.instance.election();
        let n = (g.vertices + r.padding) as i64;
        let copeland = Rule::Copeland(Rational::new(1, 2));
        let s = naive_scores(e, copeland);
        let d = e.index_of("d").unwrap();
        // Scores are doubled: α = 1/2.
        assert_eq!(s[d], 2 * 2 * n);
        assert!((0..s.len()).filter(|&c| c != d).all(|c| s[c] < s[d]));
    }
}

#[test]
fn clique_unit_winner_and_gap() {
    for g in [
        GraphInstance::new(3, vec![(0, 1), (1, 2), (0, 2)], 3).unwrap(),
        GraphInstance::new(4, vec![(0, 1), (1, 2)], 2).unwrap(),
    ] {
        let k = g.k as i64;
        let r = reduce_clique_copeland(&g, PriceVariant::Unit).unwrap();
        assert_eq!((g.vertices + r.padding + g.edges.len()) % 2, 1);
        let e = r.instance.election();
        let copeland = Rule::Copeland(Rational::new(1, 2));
        let s = naive_scores(e, copeland);
        let (p, d) = (0, e.index_of("d").unwrap());
        assert!((0..s.len()).filter(|&c| c != d).all(|c| s[c] < s[d]));
        assert_eq!(s[d] - s[p], 2 * (k + k * (k - 1) / 2));
    }
}

#[test]
fn clique_unit_small_answers() {
    let copeland = Rule::Copeland(Rational::new(1, 2));
    let triangle = GraphInstance::new(3, vec![(0, 1), (1, 2), (0, 2)], 2).unwrap();
    let empty = GraphInstance::new(3, vec![], 2).unwrap();
    for (g, want) in [(triangle, true), (empty, false)] {
        let r = reduce_clique_copeland(&g, PriceVariant::Unit).unwrap();
        assert_eq!(decide(&r.instance, copeland, None), want);
    }
}

#[test]
fn clique_rejects_small_k() {
    let g = GraphInstance::new(3, vec![(0, 1)], 1).unwrap();
    assert!(reduce_clique_copeland(&g, PriceVariant::AllOrNothing).is_err());
}

fn square() -> GraphInstance {
    // K_{2,2} with colors {0, 1} and {2, 3}.
    GraphInstance::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)], 2).unwrap().with_coloring(vec![0, 0, 1, 1]).unwrap()
}

#[test]
fn mcc_structure() {
    let r = reduce_mcc_copeland(&square()).unwrap();
    let e = r.instance.election();
    assert_eq!(e.num_voters(), 7);
    let n: usize = 4;
    assert_eq!(e.num_candidates(), 2 + 2 * 3 * 3 * n.pow(3) + 4 + 3 * n.pow(5));
    let p = e.index_of("p").unwrap();
    let nm = e.pairwise();
    let mut edges = 0;
    let mut selection = 0;
    for c in 0..e.num_candidates() {
        let name = e.name(c);
        if name.starts_with('e') {
            edges += 1;
            assert_eq!(nm.get(c, p), nm.get(p, c) + 7, "{name}");
        } else if name.starts_with('s') {
            selection += 1;
            assert_eq!(nm.get(c, p), nm.get(p, c) + 1, "{name}");
        }
    }
    assert_eq!((edges, selection), (4, 6 * 64));
    let d = e.index_of("d").unwrap();
    assert_eq!(e.winners(Rule::Copeland(Rational::new(1, 2))), vec![d]);
    assert_eq!(r.instance.budget(), Some(6 * (3 * 64 + 2)));
}

#[test]
fn mcc_preconditions() {
    let irregular = GraphInstance::new(3, vec![(0, 1), (0, 2)], 2).unwrap().with_coloring(vec![0, 1, 1]).unwrap();
    assert!(reduce_mcc_copeland(&irregular).is_err());
    let improper =
        GraphInstance::new(4, vec![(0, 1), (2, 3)], 2).unwrap().with_coloring(vec![0, 0, 1, 1]).unwrap();
    assert!(reduce_mcc_copeland(&improper).is_err());
    let uncolored = GraphInstance::new(2, vec![(0, 1)], 2).unwrap();
    assert!(reduce_mcc_copeland(&uncolored).is_err());
}

#[test]
fn generated_instances_are_valid() {
    let sc = SetCoverInstance::new(3, vec![vec![0, 1], vec![2]], 2).unwrap();
    for rule in [Rule::Borda, Rule::Maximin, Rule::Copeland(Rational::new(1, 3))] {
        for prices in [PriceVariant::Unit, PriceVariant::AllOrNothing] {
            let inst = reduce_setcover(&sc, rule, prices).unwrap().instance;
            assert!(inst.prices().validate(inst.election(), inst.preferred()).is_ok());
            let e = inst.election();
            for x in 0..e.num_candidates() {
                for y in 0..x {
                    assert_eq!(count(e, x, y) + count(e, y, x), e.num_voters() as i64);
                }
            }
        }
    }
}
