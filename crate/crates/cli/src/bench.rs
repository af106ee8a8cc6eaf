use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::Args;
use serde::Deserialize;

use crate::commands::read_instance;
use crate::{Failure, EXIT_CAPACITY, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};

/// Environment variable with the number of solver processes run at once.
pub const WORKERS_ENV: &str = "SHIFTBRIBERY_WORKERS";

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Suite file (JSON) listing instances and solver settings.
    #[arg(long)]
    pub suite: PathBuf,
    /// Solver processes run at once; defaults to $SHIFTBRIBERY_WORKERS, then the CPU count.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Suite {
    /// Instance files, relative to the suite file.
    instances: Vec<PathBuf>,
    solvers: Vec<SolverSpec>,
    /// Rules to run every instance under; the instance's own rule when absent.
    #[serde(default)]
    rules: Vec<RuleSpec>,
    /// Per-job wall-clock limit.
    timeout_ms: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverSpec {
    algo: String,
    t: Option<usize>,
    epsilon: Option<String>,
    max_affected: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleSpec {
    rule: String,
    alpha: Option<String>,
}

struct Job {
    instance: PathBuf,
    label: String,
    candidates: usize,
    voters: usize,
    rule: Option<RuleSpec>,
    solver: SolverSpec,
}

struct Outcome {
    status: &'static str,
    doc: Option<serde_json::Value>,
    elapsed: Duration,
    message: String,
}

fn workers(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(w) = flag {
        return if w == 0 { Err(Failure::usage("--workers must be positive")) } else { Ok(w) };
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(w),
            _ => Err(Failure::usage(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn solve_args(job: &Job) -> Vec<String> {
    let mut args = vec!["solve".to_string(), "--json".into(), "--algo".into(), job.solver.algo.clone()];
    args.extend(["--input".into(), job.instance.display().to_string()]);
    if let Some(r) = &job.rule {
        args.extend(["--rule".into(), r.rule.clone()]);
        if let Some(a) = &r.alpha {
            args.extend(["--alpha".into(), a.clone()]);
        }
    }
    if let Some(t) = job.solver.t {
        args.extend(["--t".into(), t.to_string()]);
    }
    if let Some(e) = &job.solver.epsilon {
        args.extend(["--epsilon".into(), e.clone()]);
    }
    if let Some(a) = job.solver.max_affected {
        args.extend(["--max-affected".into(), a.to_string()]);
    }
    args
}

fn run_job(exe: &Path, job: &Job, timeout: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let child = Command::new(exe)
        .args(solve_args(job))
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn();
    let mut child = match child {
        Ok(c) => c,
        Err(e) => return Outcome { status: "error", doc: None, elapsed: start.elapsed(), message: e.to_string() },
    };
    // Readers keep the pipes drained while the solver runs.
    let mut out = child.stdout.take().unwrap();
    let mut err = child.stderr.take().unwrap();
    let out_reader = std::thread::spawn(move || {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut out, &mut s).ok();
        s
    });
    let err_reader = std::thread::spawn(move || {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut err, &mut s).ok();
        s
    });
    let status = loop {
        match child.try_wait() {
            Ok(Some(status)) => break Some(status),
            Ok(None) if timeout.is_some_and(|t| start.elapsed() >= t) => {
                let _ = child.kill();
                let _ = child.wait();
                break None;
            }
            Ok(None) => std::thread::sleep(Duration::from_millis(2)),
            Err(_) => break None,
        }
    };
    let elapsed = start.elapsed();
    let stdout = out_reader.join().unwrap_or_default();
    let stderr = err_reader.join().unwrap_or_default();
    let message = stderr.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
    let Some(status) = status else {
        return Outcome { status: "timeout", doc: None, elapsed, message };
    };
    let status = match status.code().map(|c| c as u8) {
        Some(EXIT_OK) => "ok",
        Some(EXIT_INFEASIBLE) => "infeasible",
        Some(EXIT_USAGE) => "usage",
        Some(EXIT_CAPACITY) => "capacity",
        _ => "error",
    };
    Outcome { status, doc: serde_json::from_str(&stdout).ok(), elapsed, message }
}

pub fn run(args: &BenchArgs) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(&args.suite)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.suite.display())))?;
    let suite: Suite =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", args.suite.display())))?;
    let base = args.suite.parent().unwrap_or(Path::new("."));
    let rules: Vec<Option<RuleSpec>> =
        if suite.rules.is_empty() { vec![None] } else { suite.rules.iter().cloned().map(Some).collect() };
    let mut jobs = Vec::new();
    for path in &suite.instances {
        let full = base.join(path);
        let file = read_instance(&full)?;
        for rule in &rules {
            for solver in &suite.solvers {
                jobs.push(Job {
                    instance: full.clone(),
                    label: path.display().to_string(),
                    candidates: file.instance.num_candidates(),
                    voters: file.instance.num_voters(),
                    rule: rule.clone(),
                    solver: solver.clone(),
                });
            }
        }
    }
    let exe = std::env::current_exe().map_err(|e| Failure::usage(format!("cannot locate own executable: {e}")))?;
    let timeout = suite.timeout_ms.map(Duration::from_millis);
    let next = AtomicUsize::new(0);
    let outcomes: Mutex<Vec<Option<Outcome>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers(args.workers)?.min(jobs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let o = run_job(&exe, job, timeout);
                outcomes.lock().unwrap()[i] = Some(o);
            });
        }
        Ok::<(), Failure>(())
    })?;

    let mut w = csv::Writer::from_writer(std::io::stdout());
    let header = [
        "instance", "candidates", "voters", "algo", "rule", "t", "epsilon", "status", "feasible", "spent",
        "guarantee", "explored", "solver_us", "process_us", "message",
    ];
    let io_err = |e: csv::Error| Failure::usage(format!("cannot write CSV: {e}"));
    w.write_record(header).map_err(io_err)?;
    for (job, outcome) in jobs.iter().zip(outcomes.into_inner().unwrap()) {
        let o = outcome.expect("every job ran");
        let field = |key: &str| -> String {
            match o.doc.as_ref().and_then(|d| d.get(key)) {
                Some(serde_json::Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
                None => String::new(),
            }
        };
        let param = |key: &str| -> String {
            match o.doc.as_ref().and_then(|d| d.get("parameters")).and_then(|p| p.get(key)) {
                Some(serde_json::Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
                None => String::new(),
            }
        };
        let rule = match (&o.doc, &job.rule) {
            (Some(_), _) => field("rule"),
            (None, Some(r)) => r.rule.clone(),
            (None, None) => String::new(),
        };
        w.write_record([
            job.label.clone(),
            job.candidates.to_string(),
            job.voters.to_string(),
            job.solver.algo.clone(),
            rule,
            param("t"),
            param("epsilon"),
            o.status.to_string(),
            field("feasible"),
            field("spent"),
            field("guarantee"),
            field("explored"),
            field("wall_time_us"),
            o.elapsed.as_micros().to_string(),
            o.message.clone(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(|e| Failure::usage(format!("cannot write CSV: {e}")))?;
    Ok(EXIT_OK)
}
