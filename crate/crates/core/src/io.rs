//! The line-oriented instance file format and JSON result documents.
//!
//! ```text
//! # comment
//! rule: copeland
//! alpha: 1/2
//! candidates: p,a,b
//! preferred: p
//! budget: 3
//! voters: 2
//! a>p>b ; unit
//! b>a>p ; list:1,4
//! ```
//!
//! `alpha` is only allowed for Copeland and defaults to 1/2; `budget` is
//! optional. Prices are `unit`, `aon:C` or `list:` followed by π(1), …, π(m−1).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::{Election, Error, Guarantee, Instance, PriceFunction, PriceList, Rational, Result, Rule, SolveResult};

/// An instance together with the rule it is posed under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub rule: Rule,
    pub instance: Instance,
}

/// Price encoding of one voter record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PriceSpec {
    Unit,
    AllOrNothing(u64),
    List(Vec<u64>),
}

impl PriceSpec {
    fn build(&self, m: usize, position: usize) -> PriceFunction {
        match self {
            PriceSpec::Unit => PriceFunction::unit(m, position),
            PriceSpec::AllOrNothing(c) => PriceFunction::all_or_nothing(m, position, *c),
            PriceSpec::List(values) => PriceFunction::new(values.clone()),
        }
    }

    /// The shortest spec that rebuilds `f` exactly.
    fn describe(f: &PriceFunction, m: usize, position: usize) -> PriceSpec {
        if *f == PriceFunction::unit(m, position) {
            return PriceSpec::Unit;
        }
        if let Some(&c) = f.table().last() {
            if *f == PriceFunction::all_or_nothing(m, position, c) {
                return PriceSpec::AllOrNothing(c);
            }
        }
        PriceSpec::List(f.table().to_vec())
    }
}

impl std::fmt::Display for PriceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PriceSpec::Unit => f.write_str("unit"),
            PriceSpec::AllOrNothing(c) => write!(f, "aon:{c}"),
            PriceSpec::List(values) => {
                let parts: Vec<String> = values.iter().map(u64::to_string).collect();
                write!(f, "list:{}", parts.join(","))
            }
        }
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a rational p/q"));
    let (num, den) = match s.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses a rule name, with `alpha` for Copeland.
pub fn parse_rule(name: &str, alpha: Option<Rational>) -> Result<Rule> {
    match name.trim() {
        "borda" => Ok(Rule::Borda),
        "maximin" => Ok(Rule::Maximin),
        "copeland" => Rule::copeland(alpha.unwrap_or(Rational::new(1, 2))),
        other => Err(Error::InvalidArgument(format!("unknown rule `{other}`"))),
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || ",>;#:".contains(c))
}

fn parse_price(text: &str) -> std::result::Result<PriceSpec, String> {
    let text = text.trim();
    if text == "unit" {
        return Ok(PriceSpec::Unit);
    }
    if let Some(c) = text.strip_prefix("aon:") {
        return c.trim().parse().map(PriceSpec::AllOrNothing).map_err(|_| format!("bad price `{c}`"));
    }
    if let Some(list) = text.strip_prefix("list:") {
        if list.trim().is_empty() {
            return Ok(PriceSpec::List(Vec::new()));
        }
        return list
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| format!("bad price `{}`", x.trim())))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(PriceSpec::List);
    }
    Err(format!("unknown price spec `{text}`, expected unit, aon:C or list:..."))
}

/// Parses an instance file. Errors carry the 1-based line they refer to.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut header: HashMap<&str, (usize, &str)> = HashMap::new();
    let mut records: Vec<(usize, &str, PriceSpec)> = Vec::new();
    let mut expected_voters: Option<usize> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(n) = expected_voters {
            let (order, price) =
                content.split_once(';').ok_or_else(|| err(line, "expected `ORDER ; PRICES`".into()))?;
            if records.len() == n {
                return Err(err(line, format!("more than the declared {n} voters")));
            }
            records.push((line, order.trim(), parse_price(price).map_err(|m| err(line, m))?));
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| err(line, format!("expected `key: value`, found `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "rule" | "alpha" | "candidates" | "preferred" | "budget" => {
                if header.insert(key, (line, value)).is_some() {
                    return Err(err(line, format!("`{key}` given twice")));
                }
            }
            "voters" => {
                let n = value.parse().map_err(|_| err(line, format!("bad voter count `{value}`")))?;
                header.insert(key, (line, value));
                expected_voters = Some(n);
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let field = |key: &str| header.get(key).copied().ok_or_else(|| err(last, format!("missing `{key}`")));

    let (rule_line, rule_name) = field("rule")?;
    let alpha = match header.get("alpha") {
        Some(&(line, value)) => {
            if rule_name != "copeland" {
                return Err(err(line, "alpha is only allowed for copeland".into()));
            }
            Some(parse_rational(value).map_err(|e| err(line, e.to_string()))?)
        }
        None => None,
    };
    let rule = parse_rule(rule_name, alpha).map_err(|e| err(rule_line, e.to_string()))?;

    let (cand_line, cand_text) = field("candidates")?;
    let names: Vec<String> = cand_text.split(',').map(|s| s.trim().to_string()).collect();
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if !valid_name(name) {
            return Err(err(cand_line, format!("invalid candidate name `{name}`")));
        }
        if index.insert(name.as_str(), i).is_some() {
            return Err(err(cand_line, format!("duplicate candidate `{name}`")));
        }
    }
    let m = names.len();
    let (pref_line, pref_name) = field("preferred")?;
    let p = *index.get(pref_name).ok_or_else(|| err(pref_line, format!("unknown candidate `{pref_name}`")))?;
    let budget = match header.get("budget") {
        Some(&(line, value)) => Some(value.parse().map_err(|_| err(line, format!("bad budget `{value}`")))?),
        None => None,
    };
    let (voters_line, _) = field("voters")?;
    let n = expected_voters.unwrap_or(0);
    if records.len() < n {
        return Err(err(last, format!("declared {n} voters, found {}", records.len())));
    }
    if n == 0 {
        return Err(err(voters_line, "at least one voter is required".into()));
    }

    let mut orders = Vec::with_capacity(n);
    let mut prices = Vec::with_capacity(n);
    for (line, order_text, spec) in records {
        let mut order = Vec::with_capacity(m);
        let mut seen = vec![false; m];
        for name in order_text.split('>').map(str::trim) {
            let c = *index.get(name).ok_or_else(|| err(line, format!("unknown candidate `{name}`")))?;
            if std::mem::replace(&mut seen[c], true) {
                return Err(err(line, format!("candidate `{name}` ranked twice")));
            }
            order.push(c);
        }
        if order.len() != m {
            return Err(err(line, format!("order ranks {} of {m} candidates", order.len())));
        }
        let position = order.iter().position(|&c| c == p).unwrap() + 1;
        let f = spec.build(m, position);
        if f.table().len() != m - 1 {
            return Err(err(line, format!("price list has {} entries, expected {}", f.table().len(), m - 1)));
        }
        f.validate(position).map_err(|v| err(line, v.to_string()))?;
        orders.push(order);
        prices.push(f);
    }
    let election = Election::new(names, orders).map_err(|e| err(cand_line, e.to_string()))?;
    let instance = Instance::new(election, PriceList::new(prices), p, budget)?;
    Ok(InstanceFile { rule, instance })
}

/// Writes an instance file, preceded by `comments` as `#` lines.
pub fn serialize_instance(file: &InstanceFile, comments: &[String]) -> String {
    let inst = &file.instance;
    let e = inst.election();
    let m = e.num_candidates();
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "rule: {}", file.rule.name());
    if let Rule::Copeland(alpha) = file.rule {
        let _ = writeln!(out, "alpha: {}", format_rational(alpha));
    }
    let _ = writeln!(out, "candidates: {}", e.names().join(","));
    let _ = writeln!(out, "preferred: {}", e.name(inst.preferred()));
    if let Some(b) = inst.budget() {
        let _ = writeln!(out, "budget: {b}");
    }
    let _ = writeln!(out, "voters: {}", e.num_voters());
    let positions = inst.positions();
    for (v, order) in e.orders().iter().enumerate() {
        let names: Vec<&str> = order.iter().map(|&c| e.name(c)).collect();
        let spec = PriceSpec::describe(inst.prices().get(v), m, positions[v]);
        let _ = writeln!(out, "{} ; {spec}", names.join(">"));
    }
    out
}

/// Builds an instance from orders alone, giving every voter the same price spec.
pub fn from_orders<S: AsRef<str>>(
    rule: Rule,
    candidates: &[S],
    preferred: &str,
    budget: Option<u64>,
    orders: &[Vec<S>],
    prices: &PriceSpec,
) -> Result<InstanceFile> {
    let election = Election::from_names(candidates, orders)?;
    let p = election.index_of(preferred).ok_or_else(|| Error::UnknownCandidate(preferred.into()))?;
    let m = election.num_candidates();
    let list = election.positions_of(p).into_iter().map(|pos| prices.build(m, pos)).collect();
    let instance = Instance::new(election, PriceList::new(list), p, budget)?;
    Ok(InstanceFile { rule, instance })
}

/// Solver settings recorded next to a result.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResultMeta {
    pub solver: String,
    pub rule: Option<Rule>,
    pub t: Option<usize>,
    pub epsilon: Option<Rational>,
    pub max_affected: Option<usize>,
    pub budget: Option<u64>,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_affected: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ResultDocument {
    pub solver: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    pub parameters: Parameters,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<usize>>,
    pub spent: u64,
    pub guarantee: String,
    pub wall_time_us: u64,
    pub explored: u64,
}

impl ResultDocument {
    pub fn new(r: &SolveResult, meta: &ResultMeta) -> ResultDocument {
        ResultDocument {
            solver: meta.solver.clone(),
            rule: meta.rule.map(|r| r.to_string()),
            parameters: Parameters {
                t: meta.t,
                epsilon: meta.epsilon.map(format_rational),
                max_affected: meta.max_affected,
                budget: meta.budget,
            },
            feasible: r.feasible,
            action: r.action.clone(),
            spent: r.spent,
            guarantee: guarantee_text(r.guarantee),
            wall_time_us: meta.wall_time.as_micros().try_into().unwrap_or(u64::MAX),
            explored: r.explored,
        }
    }
}

fn guarantee_text(g: Guarantee) -> String {
    g.to_string()
}

/// Pretty-printed JSON with a fixed key order.
pub fn serialize_result(r: &SolveResult, meta: &ResultMeta) -> String {
    serde_json::to_string_pretty(&ResultDocument::new(r, meta)).expect("result documents always serialize")
}
