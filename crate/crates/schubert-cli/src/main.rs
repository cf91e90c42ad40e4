use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use schubert_calc::expansion::{EmbeddedVariety, ExpansionEngine, Mode};
use schubert_calc::io::{
    class_to_json, format_rational, load_oracle, parse_box, parse_partition, write_file, ExpansionReport,
};
use schubert_calc::ring::{
    homology_basis, pair_kind, schubert_product, segre_pushforward, triple_point_number, GrassmannianSpec,
    HomologyClass, PairKind,
};
use schubert_calc::verify::{run_suite, VerifySuite};
use schubert_calc::worked_example::x321_report;
use schubert_calc::{BoxSize, BoxedPartition, Error, Result};

/// Exact Schubert calculus and symbolic characteristic-class expansions.
///
/// Partitions are written "3,2,1 @ 3x3" (parts, then the box MxK) and
/// "- @ 2x2" for the zero partition.
#[derive(Parser, Debug)]
#[command(name = "schubert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection product [X_a]·[X_b].
    Product {
        #[arg(value_parser = partition)]
        a: BoxedPartition,
        #[arg(value_parser = partition)]
        b: BoxedPartition,
    },
    /// Classifies the pair as empty, point or other.
    Pairkind {
        #[arg(value_parser = partition)]
        a: BoxedPartition,
        #[arg(value_parser = partition)]
        b: BoxedPartition,
    },
    /// Point coefficient of [X_a]·[X_b]·[X_c].
    Triple {
        #[arg(value_parser = partition)]
        a: BoxedPartition,
        #[arg(value_parser = partition)]
        b: BoxedPartition,
        #[arg(value_parser = partition)]
        c: BoxedPartition,
    },
    /// Schubert basis of H_{2d} of a Schubert variety or of the Grassmannian.
    Basis {
        #[arg(long = "box", value_parser = boxsize, conflicts_with = "schubert")]
        bx: Option<BoxSize>,
        #[arg(long, value_parser = partition)]
        schubert: Option<BoxedPartition>,
        #[arg(long)]
        degree: usize,
    },
    /// Segre pushforward S_*([X_a'] × [X_a'']).
    SegrePush {
        #[arg(value_parser = partition)]
        a1: BoxedPartition,
        #[arg(value_parser = partition)]
        a2: BoxedPartition,
    },
    /// Components of the singular locus of X_a.
    Singular {
        #[arg(long, value_parser = partition)]
        schubert: BoxedPartition,
    },
    /// Complementary profile (m'', k'', a'') of a partition.
    Profile {
        #[arg(long, value_parser = partition)]
        schubert: BoxedPartition,
    },
    /// Normally nonsingular expansion of a Schubert variety.
    Expand {
        #[arg(long, value_parser = partition)]
        schubert: BoxedPartition,
        #[arg(long, value_enum, default_value_t = ModeArg::Shallow)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluates an expansion under an oracle table.
    Resolve {
        #[arg(long, value_parser = partition)]
        schubert: BoxedPartition,
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Shallow)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(value_parser = suite)]
        suite: VerifySuite,
        #[arg(long = "box", value_parser = boxsize)]
        bx: Option<BoxSize>,
        #[arg(long)]
        max_cells: Option<usize>,
        /// Random cases for the Segre suites.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Time budget in seconds (consistency suite).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Runs a worked example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// Also writes the structured report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Shallow,
    Deep,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Shallow => Mode::Shallow,
            ModeArg::Deep => Mode::Deep,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExampleName {
    X321,
}

fn partition(s: &str) -> std::result::Result<BoxedPartition, String> {
    parse_partition(s).map_err(|e| e.to_string())
}

fn boxsize(s: &str) -> std::result::Result<BoxSize, String> {
    parse_box(s).map_err(|e| e.to_string())
}

fn suite(s: &str) -> std::result::Result<VerifySuite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Rendered output and whether the command succeeded.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn lines(v: &[BoxedPartition]) -> String {
    v.iter().map(|a| format!("{a}\n")).collect()
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<String> {
    match out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

fn run(command: Command) -> Result<Outcome> {
    Ok(match command {
        Command::Product { a, b } => Outcome::ok(class_to_json(&schubert_product(&a, &b)?) + "\n"),
        Command::Pairkind { a, b } => {
            let kind = match pair_kind(&a, &b)? {
                PairKind::Empty => "empty",
                PairKind::Point => "point",
                PairKind::Other => "other",
            };
            Outcome::ok(format!("{kind}\n"))
        }
        Command::Triple { a, b, c } => Outcome::ok(format!("{}\n", format_rational(&triple_point_number(&a, &b, &c)?))),
        Command::Basis { bx, schubert, degree } => {
            let top = match (schubert, bx) {
                (Some(a), _) => a,
                (None, Some(bx)) => BoxedPartition::full(bx),
                (None, None) => {
                    return Err(Error::Syntax { input: "basis".into(), message: "needs --box or --schubert".into() })
                }
            };
            Outcome::ok(lines(&homology_basis(GrassmannianSpec::new(top.bx()), &top, degree)?))
        }
        Command::SegrePush { a1, a2 } => {
            let c = segre_pushforward(&HomologyClass::schubert(&a1), &HomologyClass::schubert(&a2))?;
            Outcome::ok(class_to_json(&c) + "\n")
        }
        Command::Singular { schubert } => Outcome::ok(lines(&schubert.lw_singular_partitions())),
        Command::Profile { schubert } => {
            let p = schubert.complementary_profile()?;
            Outcome::ok(format!("m'' = {}\nk'' = {}\na'' = {}\n", p.m2, p.k2, p.complement))
        }
        Command::Expand { schubert, mode, out } => {
            let engine = ExpansionEngine::new(mode.into());
            let e = engine.expand_all(&EmbeddedVariety::schubert(&schubert))?;
            Outcome::ok(emit(ExpansionReport::from_expansion(&e).to_json(), &out)?)
        }
        Command::Resolve { schubert, oracle, mode, out } => {
            let table = load_oracle(&oracle)?;
            let engine = ExpansionEngine::new(mode.into());
            let c = schubert_calc::expansion::resolve(&engine, &EmbeddedVariety::schubert(&schubert), &table)?;
            Outcome::ok(emit(class_to_json(&c) + "\n", &out)?)
        }
        Command::Verify { suite, bx, max_cells, random, seed, budget } => {
            let mut bounds = suite.default_bounds();
            bounds.bx = bx;
            if let Some(n) = max_cells {
                bounds.max_cells = n;
            }
            if let Some(n) = random {
                bounds.random_cases = n;
            }
            if let Some(s) = seed {
                bounds.seed = s;
            }
            bounds.budget = budget.map(Duration::from_secs);
            let r = run_suite(suite, &bounds)?;
            let mut text = r.to_string();
            text.push_str(&format!("elapsed {:.3} s\n", r.elapsed.as_secs_f64()));
            Outcome { text, ok: r.passed() }
        }
        Command::Example { name: ExampleName::X321, out } => {
            let r = x321_report()?;
            if let Some(p) = &out {
                write_file(p, &r.to_json())?;
            }
            Outcome::ok(r.to_string())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            print!("{}", o.text);
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
