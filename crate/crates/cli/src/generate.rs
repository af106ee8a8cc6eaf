use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shiftbribery::io::{parse_rational, parse_rule, serialize_instance, InstanceFile};
use shiftbribery::random::{random_instance, PriceFamily};
use shiftbribery::reductions::{
    reduce_clique_copeland, reduce_mcc_copeland, reduce_setcover, GraphInstance, PriceVariant, Reduction,
    SetCoverInstance,
};
use shiftbribery::Rule;

use crate::{Failure, RuleArgs, RuleName, EXIT_OK};

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub what: Construction,
    /// Write to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Construction {
    /// Set Cover to Shift Bribery with a cap on affected voters.
    Setcover {
        /// Elements are 0..universe.
        #[arg(long)]
        universe: usize,
        /// Sets separated by `;`, elements by `,`, e.g. "0,1;2".
        #[arg(long)]
        sets: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, value_enum)]
        prices: Prices,
    },
    /// Clique to Copeland Shift Bribery.
    Clique {
        #[arg(long)]
        vertices: usize,
        /// Edges as "a-b" pairs separated by `,`.
        #[arg(long, default_value = "")]
        edges: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        prices: Prices,
        /// Copeland tie value as p/q.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Multicolored Clique on a regular, properly colored graph to Copeland Shift Bribery.
    Mcc {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: String,
        #[arg(long)]
        k: usize,
        /// Color of every vertex, separated by `,`.
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// A random instance with preferred candidate p.
    Random {
        #[arg(long)]
        candidates: usize,
        #[arg(long)]
        voters: usize,
        #[arg(long, value_enum, default_value = "unit")]
        family: Family,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        rule: RuleArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Prices {
    Unit,
    Aon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Unit,
    Aon,
    Convex,
    Sortable,
    Arbitrary,
}

fn numbers(text: &str, sep: char) -> Result<Vec<usize>, Failure> {
    text.split(sep)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::usage(format!("`{s}` is not a number"))))
        .collect()
}

fn edges(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (a, b) = pair.split_once('-').ok_or_else(|| Failure::usage(format!("edge `{pair}` is not a-b")))?;
            let parse = |s: &str| s.trim().parse().map_err(|_| Failure::usage(format!("edge `{pair}` is not a-b")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn variant(p: Prices) -> PriceVariant {
    match p {
        Prices::Unit => PriceVariant::Unit,
        Prices::Aon => PriceVariant::AllOrNothing,
    }
}

fn copeland(alpha: &Option<String>) -> Result<Rule, Failure> {
    Ok(parse_rule("copeland", alpha.as_deref().map(parse_rational).transpose()?)?)
}

fn flag_rule(args: &RuleArgs, default: Rule) -> Result<Rule, Failure> {
    let alpha = args.alpha.as_deref().map(parse_rational).transpose()?;
    let name = match args.rule {
        None if alpha.is_none() => return Ok(default),
        None | Some(RuleName::Copeland) => "copeland",
        Some(RuleName::Borda) => "borda",
        Some(RuleName::Maximin) => "maximin",
    };
    if alpha.is_some() && name != "copeland" {
        return Err(Failure::usage("--alpha is only meaningful with --rule copeland"));
    }
    Ok(parse_rule(name, alpha)?)
}

fn describe(r: &Reduction, comments: &mut Vec<String>) {
    if let Some(a) = r.affected {
        comments.push(format!("affected-voter cap {a}: solve with --max-affected {a}"));
    }
    if r.padding > 0 {
        comments.push(format!("padded with {} isolated vertices", r.padding));
    }
}

pub fn run(args: &GenerateArgs) -> Result<u8, Failure> {
    let mut comments = Vec::new();
    let file = match &args.what {
        Construction::Setcover { universe, sets, k, rule, prices } => {
            let family = sets.split(';').map(|s| numbers(s, ',')).collect::<Result<Vec<_>, _>>()?;
            let sc = SetCoverInstance::new(*universe, family, *k)?;
            let rule = flag_rule(rule, Rule::Borda)?;
            let r = reduce_setcover(&sc, rule, variant(*prices))?;
            comments.push(format!("set cover: universe {universe}, sets {sets}, cover size {k}"));
            describe(&r, &mut comments);
            InstanceFile { rule, instance: r.instance }
        }
        Construction::Clique { vertices, edges: e, k, prices, alpha } => {
            let g = GraphInstance::new(*vertices, edges(e)?, *k)?;
            let r = reduce_clique_copeland(&g, variant(*prices))?;
            comments.push(format!("clique of size {k} in a graph on {vertices} vertices with edges {e}"));
            describe(&r, &mut comments);
            InstanceFile { rule: copeland(alpha)?, instance: r.instance }
        }
        Construction::Mcc { vertices, edges: e, k, coloring, alpha } => {
            let g = GraphInstance::new(*vertices, edges(e)?, *k)?.with_coloring(numbers(coloring, ',')?)?;
            let r = reduce_mcc_copeland(&g)?;
            comments.push(format!(
                "multicolored clique with {k} colors on {vertices} vertices, edges {e}, coloring {coloring}"
            ));
            describe(&r, &mut comments);
            InstanceFile { rule: copeland(alpha)?, instance: r.instance }
        }
        Construction::Random { candidates, voters, family, budget, seed, rule } => {
            if *candidates == 0 || *voters == 0 {
                return Err(Failure::usage("random instances need at least one candidate and one voter"));
            }
            let family = match family {
                Family::Unit => PriceFamily::Unit,
                Family::Aon => PriceFamily::AllOrNothing,
                Family::Convex => PriceFamily::Convex,
                Family::Sortable => PriceFamily::Sortable,
                Family::Arbitrary => PriceFamily::Arbitrary,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let instance = random_instance(&mut rng, *candidates, *voters, family, *budget)?;
            comments.push(format!("random {} instance, seed {seed}", family.name()));
            InstanceFile { rule: flag_rule(rule, Rule::Borda)?, instance }
        }
    };
    let text = serialize_instance(&file, &comments);
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}
