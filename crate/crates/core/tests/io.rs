mod common;

use std::time::Duration;

use common::*;
use proptest::prelude::*;
use shiftbribery::io::*;
use shiftbribery::random::{random_instance, PriceFamily};
use shiftbribery::{Error, Guarantee, Rational, Rule, SolveResult};

fn line_of(text: &str) -> usize {
    match parse_instance(text) {
        Err(Error::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn minimal_file() {
    let f = parse_instance("rule: borda\ncandidates: d,p\npreferred: p\nvoters: 1\nd>p ; unit\n").unwrap();
    assert_eq!(f.rule, Rule::Borda);
    assert_eq!(f.instance.num_voters(), 1);
    assert_eq!(f.instance.budget(), None);
    assert_eq!(f.instance.prices().get(0).table(), &[1]);
}

#[test]
fn copeland_alpha_defaults_to_half() {
    let f = parse_instance("rule: copeland\ncandidates: d,p\npreferred: p\nvoters: 1\nd>p ; unit\n").unwrap();
    assert_eq!(f.rule, Rule::Copeland(Rational::new(1, 2)));
    let f = parse_instance("rule: copeland\nalpha: 1/3\ncandidates: d,p\npreferred: p\nvoters: 1\nd>p ; unit\n").unwrap();
    assert_eq!(f.rule, Rule::Copeland(Rational::new(1, 3)));
}

#[test]
fn errors_name_their_line() {
    let head = "rule: borda\ncandidates: a,b,p\npreferred: p\nvoters: 2\n";
    assert_eq!(line_of(&format!("{head}a>b>p ; unit\na>a>p ; unit\n")), 6);
    assert_eq!(line_of(&format!("{head}a>b>p ; unit\na>b>p ; list:1\n")), 6);
    assert_eq!(line_of(&format!("{head}a>b>p ; unit\na>b>q ; unit\n")), 6);
    assert_eq!(line_of(&format!("{head}a>b>p ; list:2,1\na>b>p ; unit\n")), 5);
    assert_eq!(line_of(&format!("{head}a>b>p ; unit\na>b>p ; pricy\n")), 6);
    assert_eq!(line_of("rule: borda\ncandidates: a,p\npreferred: x\nvoters: 1\na>p ; unit\n"), 3);
    assert_eq!(line_of("rule: plurality\ncandidates: a,p\npreferred: p\nvoters: 1\na>p ; unit\n"), 1);
    assert_eq!(line_of("rule: borda\nalpha: 1/2\ncandidates: a,p\npreferred: p\nvoters: 1\na>p ; unit\n"), 2);
    assert_eq!(line_of("rule: borda\ncandidates: a,a\npreferred: a\nvoters: 1\na>a ; unit\n"), 2);
    assert_eq!(line_of("rule: borda\ncandidates: a,p\npreferred: p\nvoters: 2\na>p ; unit\n"), 5);
    assert_eq!(line_of("# only a comment\n"), 1);
}

#[test]
fn arity_error_mentions_entries() {
    let text = "rule: borda\ncandidates: a,b,p\npreferred: p\nvoters: 1\na>b>p ; list:1\n";
    let Err(Error::Parse { message, .. }) = parse_instance(text) else { panic!() };
    assert!(message.contains("entries"), "{message}");
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "# header\n\nrule: maximin # trailing\ncandidates: a,p\npreferred: p\nbudget: 4\nvoters: 1\n\na>p ; aon:3 # cheap\n";
    let f = parse_instance(text).unwrap();
    assert_eq!(f.instance.budget(), Some(4));
    assert_eq!(f.instance.prices().get(0).table(), &[3]);
}

#[test]
fn serialization_prefers_short_price_specs() {
    let text = "rule: copeland\nalpha: 0/1\ncandidates: a,b,p\npreferred: p\nbudget: 2\nvoters: 3\n\
                a>b>p ; unit\na>p>b ; aon:4\np>a>b ; list:0,0\n";
    let f = parse_instance(text).unwrap();
    let out = serialize_instance(&f, &["made by hand".into()]);
    assert!(out.starts_with("# made by hand\nrule: copeland\nalpha: 0/1\n"));
    assert!(out.contains("a>b>p ; unit\n"));
    assert!(out.contains("a>p>b ; aon:4\n"));
    assert_eq!(parse_instance(&out).unwrap(), f);
}

#[test]
fn importer_gives_uniform_prices() {
    let orders = vec![vec!["a", "p", "b"], vec!["b", "a", "p"]];
    let f = from_orders(Rule::Borda, &["a", "b", "p"], "p", Some(3), &orders, &PriceSpec::AllOrNothing(2)).unwrap();
    assert_eq!(f.instance.prices().get(0).table(), &[2, 2]);
    assert_eq!(f.instance.prices().get(1).table(), &[2, 2]);
}

#[test]
fn result_documents() {
    let meta = ResultMeta { solver: "bruteforce".into(), rule: Some(Rule::Borda), ..Default::default() };
    let zero = SolveResult { feasible: true, action: Some(vec![0, 0]), spent: 0, guarantee: Guarantee::Exact, explored: 1 };
    let doc: serde_json::Value = serde_json::from_str(&serialize_result(&zero, &meta)).unwrap();
    assert_eq!(doc["spent"], 0);
    assert_eq!(doc["action"], serde_json::json!([0, 0]));
    assert_eq!(doc["guarantee"], "exact");

    let eps = Rational::from_integer(1);
    let factor = Guarantee::Factor((Rational::from_integer(1) + eps) * (Rational::from_integer(1) + eps));
    let approx = SolveResult { guarantee: factor, ..zero.clone() };
    let meta = ResultMeta { epsilon: Some(eps), wall_time: Duration::from_millis(3), ..meta };
    let text = serialize_result(&approx, &meta);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["guarantee"], "4/1");
    assert_eq!(doc["parameters"]["epsilon"], "1/1");
    assert_eq!(doc["wall_time_us"], 3000);

    let infeasible = SolveResult { feasible: false, action: None, spent: 0, guarantee: Guarantee::Exact, explored: 9 };
    let doc: serde_json::Value = serde_json::from_str(&serialize_result(&infeasible, &meta)).unwrap();
    assert_eq!(doc["feasible"], false);
    assert!(doc.get("action").is_none());

    // Keys come out in a fixed order.
    let keys: Vec<usize> = ["\"solver\"", "\"parameters\"", "\"feasible\"", "\"spent\"", "\"guarantee\"", "\"explored\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn rationals() {
    assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1, 2));
    assert_eq!(parse_rational("2").unwrap(), Rational::from_integer(2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
    assert_eq!(format_rational(Rational::from_integer(4)), "4/1");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn round_trip(seed in any::<u64>(), m in 1usize..=6, n in 1usize..=6, f in 0usize..5, budget in prop::option::of(0u64..50), r in 0usize..4) {
        let mut g = rng(seed);
        let instance = random_instance(&mut g, m, n, PriceFamily::ALL[f], budget).unwrap();
        let file = InstanceFile { rule: rules()[r], instance };
        let text = serialize_instance(&file, &[]);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(serialize_instance(&back, &[]), text);
    }
}
