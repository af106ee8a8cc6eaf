use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use shiftbribery::approx::{fptas_candidates, fptas_voters};
use shiftbribery::io::{parse_instance, parse_rational, parse_rule, serialize_instance, serialize_result, InstanceFile, ResultMeta};
use shiftbribery::kernel::{build_kernel, kernelize as kernel, CandidateOrigin, VoterOrigin};
use shiftbribery::solvers::{
    brute_force_with, fpt_shifts, greedy_convex, solve_all_or_nothing, xp_flow_solve, BruteForceOptions,
};
use shiftbribery::{Guarantee, Rule, SolveResult};

use crate::{Algo, ClassifyArgs, Failure, KernelizeArgs, RuleArgs, RuleName, SolveArgs, VerifyArgs};
use crate::{EXIT_INFEASIBLE, EXIT_OK};

pub fn read_instance(path: &Path) -> Result<InstanceFile, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// The rule from the flags, or the file's when no rule flag is given.
pub fn resolve_rule(args: &RuleArgs, file: &InstanceFile) -> Result<Rule, Failure> {
    let alpha = args.alpha.as_deref().map(parse_rational).transpose()?;
    match (args.rule, alpha) {
        (None, None) => Ok(file.rule),
        (None, Some(a)) => match file.rule {
            Rule::Copeland(_) => Ok(Rule::copeland(a)?),
            other => Err(Failure::usage(format!("--alpha needs a copeland rule, the file uses {other}"))),
        },
        (Some(r), a) => {
            if a.is_some() && r != RuleName::Copeland {
                return Err(Failure::usage("--alpha is only meaningful with --rule copeland"));
            }
            let name = match r {
                RuleName::Borda => "borda",
                RuleName::Maximin => "maximin",
                RuleName::Copeland => "copeland",
            };
            Ok(parse_rule(name, a)?)
        }
    }
}

pub fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Bruteforce => "bruteforce",
        Algo::FptShifts => "fpt-shifts",
        Algo::Aon => "aon",
        Algo::XpFlow => "xp-flow",
        Algo::Greedy => "greedy",
        Algo::FptasVoters => "fptas-voters",
        Algo::FptasCandidates => "fptas-candidates",
    }
}

/// Runs the chosen solver and returns its result with the settings used.
pub fn run_solver(args: &SolveArgs) -> Result<(SolveResult, ResultMeta), Failure> {
    let file = read_instance(&args.input)?;
    let rule = resolve_rule(&args.rule, &file)?;
    let inst = match args.budget {
        Some(b) => file.instance.with_budget(Some(b)),
        None => file.instance,
    };
    let name = algo_name(args.algo);
    if args.t.is_some() && !matches!(args.algo, Algo::Bruteforce | Algo::FptShifts) {
        return Err(Failure::usage(format!("--t does not apply to {name}")));
    }
    if args.max_affected.is_some() && args.algo != Algo::Bruteforce {
        return Err(Failure::usage(format!("--max-affected does not apply to {name}")));
    }
    if args.epsilon.is_some() && !matches!(args.algo, Algo::FptasVoters | Algo::FptasCandidates) {
        return Err(Failure::usage(format!("--epsilon does not apply to {name}")));
    }
    if args.algo == Algo::FptShifts && matches!(rule, Rule::Copeland(_)) {
        return Err(Failure::usage(
            "fpt-shifts supports only borda and maximin; the number-of-shifts algorithm does not extend to copeland",
        ));
    }
    let epsilon = match (&args.epsilon, args.algo) {
        (Some(e), _) => Some(parse_rational(e)?),
        (None, Algo::FptasVoters | Algo::FptasCandidates) => Some(shiftbribery::Rational::new(1, 2)),
        _ => None,
    };
    let t = match args.algo {
        Algo::FptShifts => Some(args.t.unwrap_or_else(|| inst.total_shifts())),
        _ => args.t,
    };
    let start = Instant::now();
    let result = match args.algo {
        Algo::Bruteforce => {
            brute_force_with(&inst, rule, BruteForceOptions { max_shifts: t, max_affected: args.max_affected })?
        }
        Algo::FptShifts => fpt_shifts(&inst, rule, t.unwrap())?,
        Algo::Aon => solve_all_or_nothing(&inst, rule)?,
        Algo::XpFlow => xp_flow_solve(&inst, rule)?,
        Algo::Greedy => greedy_convex(&inst, rule)?,
        Algo::FptasVoters => fptas_voters(&inst, rule, epsilon.unwrap())?,
        Algo::FptasCandidates => fptas_candidates(&inst, rule, epsilon.unwrap())?,
    };
    let meta = ResultMeta {
        solver: name.into(),
        rule: Some(rule),
        t,
        epsilon,
        max_affected: args.max_affected,
        budget: inst.budget(),
        wall_time: start.elapsed(),
    };
    Ok((result, meta))
}

pub fn solve(args: &SolveArgs) -> Result<u8, Failure> {
    let (r, meta) = run_solver(args)?;
    if args.json {
        println!("{}", serialize_result(&r, &meta));
    } else {
        println!("solver: {} ({})", meta.solver, meta.rule.unwrap());
        println!("feasible: {}", if r.feasible { "yes" } else { "no" });
        if let Some(a) = &r.action {
            println!("action: {}", join(a));
            println!("spent: {}", r.spent);
        }
        match r.guarantee {
            Guarantee::Factor(f) => println!("guarantee: at most {f} times the optimum"),
            g => println!("guarantee: {g}"),
        }
        println!("explored: {}", r.explored);
    }
    Ok(if r.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn kernelize(args: &KernelizeArgs) -> Result<u8, Failure> {
    let file = read_instance(&args.input)?;
    let rule = resolve_rule(&args.rule, &file)?;
    let inst = match args.budget {
        Some(b) => file.instance.with_budget(Some(b)),
        None => file.instance,
    };
    let out = if args.force { build_kernel(&inst, rule, args.t)? } else { kernel(&inst, rule, args.t)? };
    let names = inst.election().names();
    let origin = |c: &CandidateOrigin| match c {
        CandidateOrigin::Preferred(i) | CandidateOrigin::Kept(i) => names[*i].clone(),
        CandidateOrigin::Critical(i) => format!("{} (critical)", names[*i]),
        CandidateOrigin::Filler(i) => format!("{} (filler)", names[*i]),
        CandidateOrigin::Dummy => "dummy".into(),
    };
    let mut comments = vec![format!("kernel of {} for at most {} unit shifts under {rule}", args.input.display(), args.t)];
    if out.is_unchanged() {
        comments.push("input already within the kernel bounds; returned unchanged".into());
    } else {
        let kernel_names = out.instance.election().names();
        for (name, c) in kernel_names.iter().zip(&out.candidate_map) {
            if !matches!(c, CandidateOrigin::Dummy) {
                comments.push(format!("candidate {name} <- {}", origin(c)));
            }
        }
        let retained: Vec<String> = out
            .voter_map
            .iter()
            .enumerate()
            .filter_map(|(k, v)| match v {
                VoterOrigin::Retained(i) => Some(format!("{}<-{}", k + 1, i + 1)),
                _ => None,
            })
            .collect();
        comments.push(format!("retained voters (kernel<-input, 1-based): {}", retained.join(" ")));
    }
    print!("{}", serialize_instance(&InstanceFile { rule, instance: out.instance }, &comments));
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Classification {
    unit: bool,
    convex: bool,
    all_or_nothing: bool,
    sortable: bool,
    blocks: usize,
    total_shifts: usize,
}

pub fn classify(args: &ClassifyArgs) -> Result<u8, Failure> {
    let file = read_instance(&args.input)?;
    let inst = &file.instance;
    let tags = inst.classify();
    let report = Classification {
        unit: tags.unit,
        convex: tags.convex,
        all_or_nothing: tags.all_or_nothing,
        sortable: tags.sortable,
        blocks: inst.election().blocks().len(),
        total_shifts: inst.total_shifts(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("plain struct"));
    } else {
        println!("families: {tags}");
        println!("candidates: {}", inst.num_candidates());
        println!("voters: {}", inst.num_voters());
        println!("blocks: {}", report.blocks);
        println!("total shifts: {}", report.total_shifts);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Verdict {
    successful: bool,
    cost: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    within_budget: Option<bool>,
}

pub fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let file = read_instance(&args.input)?;
    let rule = resolve_rule(&args.rule, &file)?;
    let inst = &file.instance;
    let action: Vec<usize> = args
        .action
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::usage(format!("bad shift `{}`", s.trim()))))
        .collect::<Result<_, _>>()?;
    let successful = inst.is_successful(rule, &action)?;
    let cost = inst.cost(&action)?;
    let within_budget = inst.budget().map(|b| cost <= b);
    let verdict = Verdict { successful, cost, within_budget };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&verdict).expect("plain struct"));
    } else {
        println!("successful: {}", if successful { "yes" } else { "no" });
        println!("cost: {cost}");
        if let Some(b) = inst.budget() {
            println!("budget: {b} ({})", if cost <= b { "within" } else { "exceeded" });
        }
    }
    Ok(if successful && within_budget != Some(false) { EXIT_OK } else { EXIT_INFEASIBLE })
}
