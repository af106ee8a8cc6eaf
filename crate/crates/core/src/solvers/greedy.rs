use crate::{Error, Guarantee, Instance, Rational, Result, Rule, SolveResult};

/// Repeatedly buys the cheapest available unit shift (lowest voter index on ties)
/// until `p` wins or no shift is left.
pub fn greedy_convex(inst: &Instance, rule: Rule) -> Result<SolveResult> {
    if !inst.classify().convex {
        return Err(Error::WrongPriceFamily("convex"));
    }
    let caps = inst.caps();
    let ev = inst.evaluator(rule);
    let mut action = vec![0; caps.len()];
    let mut steps = 0u64;
    let won = loop {
        if ev.wins(&action) {
            break true;
        }
        let next = (0..caps.len())
            .filter(|&v| action[v] < caps[v])
            .min_by_key(|&v| {
                let f = inst.prices().get(v);
                (f.price(action[v] + 1) - f.price(action[v]), v)
            });
        match next {
            Some(v) => action[v] += 1,
            None => break false,
        }
        steps += 1;
    };
    let guarantee = match rule {
        Rule::Borda => Guarantee::Factor(Rational::from_integer(2)),
        _ => Guarantee::Heuristic,
    };
    SolveResult::conclude(inst, rule, won.then_some(action), guarantee, steps)
}
