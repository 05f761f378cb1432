//! Command-line front end: build and query the witness grammars, decide
//! semilinear membership, run the refuter, and drive the cross-check sweeps.
//!
//! Exit codes: 0 for positive or computed results, 1 for negative verdicts
//! (non-member, `false`, not linear, a failing sweep), 2 for unusable input
//! (bad files, wrong dimensions, non-light refuter input), and 3 when an
//! internal consistency check fails — code 3 means a bug here, not in the
//! input.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use linwit::oracle::{
    sweep_disjointness, sweep_grammar_vs_predicate, sweep_member_oracle, sweep_refuter,
    sweep_separation_pairs, sweep_stratified, LanguageTarget, SweepReport,
};
use linwit::refutation::{refute, verify_result, RefutationResult, RefuteError};
use linwit::witness::{
    build_component_grammar, build_union_grammar, member_component, member_language, ComponentId,
    ExponentVector,
};
use linwit::{Grammar, SemilinearUnion};

#[derive(Parser)]
#[command(
    name = "linwit",
    version,
    about = "Bounded linear grammars, semilinear sets, and a refuter for light \
             descriptions of the witness language's complement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, run, and inspect the witness grammars.
    Grammar {
        #[command(subcommand)]
        action: GrammarAction,
    },
    /// Decide membership of an exponent vector, e.g. `member "(0 0 0 0 0 0 0 0 0)"`.
    Member {
        /// The point, as space-separated coordinates, parentheses optional.
        point: String,
        /// Builtin target: `L` (the whole language) or `L1`..`L4`.
        #[arg(long = "in", value_name = "TARGET", conflicts_with = "union")]
        target: Option<String>,
        /// A semilinear union file to decide against instead.
        #[arg(long, value_name = "FILE")]
        union: Option<PathBuf>,
    },
    /// Refute a semilinear union file claimed to describe the complement of
    /// the witness language's image.
    Refute {
        /// The union, one `alpha:`/`beta:` block per linear set.
        file: PathBuf,
        /// Append the replayable construction trace as `#` comment lines
        /// followed by the union itself.
        #[arg(long)]
        trace: bool,
        /// Re-check the result through the membership predicates.
        #[arg(long)]
        verify: bool,
    },
    /// Cross-check sweeps; exit 0 on PASS, 1 on FAIL.
    Sweep {
        #[command(subcommand)]
        which: SweepCommand,
    },
}

#[derive(Subcommand)]
enum GrammarAction {
    /// Print one of the builtin grammars.
    Build {
        /// `1`..`4` (or `L1`..`L4`) for a component, `union` for the whole
        /// language.
        #[arg(long)]
        component: String,
        /// Write to a file instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Recognize a sentence; prints `true` or `false`.
    Parse {
        #[command(flatten)]
        source: GrammarSource,
        /// Whitespace-separated terminals; empty for the empty sentence.
        #[arg(long)]
        input: String,
    },
    /// Count distinct parse trees; prints a number or `INFINITE`.
    Count {
        #[command(flatten)]
        source: GrammarSource,
        #[arg(long)]
        input: String,
    },
    /// List every sentence up to a length, shortest first, one per line.
    #[command(name = "enum")]
    Enumerate {
        #[command(flatten)]
        source: GrammarSource,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Check that no rule uses more than one nonterminal on its right-hand
    /// side; prints `linear` or `not linear`.
    CheckLinear {
        #[arg(long, value_name = "FILE")]
        grammar: PathBuf,
    },
}

/// Exactly one grammar source: a file, or a builtin by name.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GrammarSource {
    /// A grammar file in the `lhs -> rhs | rhs` text form.
    #[arg(long, value_name = "FILE")]
    grammar: Option<PathBuf>,
    /// `1`..`4`, `L1`..`L4`, or `union`.
    #[arg(long)]
    component: Option<String>,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Grammar vs membership predicate on all sorted words up to a length.
    Grammar {
        /// Predicate and default grammar: `union` or a component.
        #[arg(long, default_value = "union")]
        component: String,
        /// Sweep this grammar file instead of the builtin one.
        #[arg(long, value_name = "FILE")]
        grammar: Option<PathBuf>,
        #[arg(long = "max-len", default_value_t = 5)]
        max_len: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pairwise component disjointness on a coordinate grid.
    Disjoint {
        #[arg(long = "max-coord", default_value_t = 2)]
        max_coord: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Separating coordinate pairs: structure plus grid exclusivity.
    Pairs {
        #[arg(long = "max-coord", default_value_t = 2)]
        max_coord: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Refuter vs independent verification on random light unions.
    Refuter {
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long = "max-sets", default_value_t = 3)]
        max_sets: u64,
        #[arg(long = "max-basis", default_value_t = 4)]
        max_basis: u64,
        #[arg(long = "max-coord", default_value_t = 3)]
        max_coord: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Stratification verdicts on fixed instances.
    Stratified {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Backtracking membership vs brute-force enumeration.
    MemberOracle {
        #[arg(long, default_value_t = 1000)]
        queries: u64,
        #[arg(long = "max-basis", default_value_t = 5)]
        max_basis: u64,
        #[arg(long = "max-coord", default_value_t = 3)]
        max_coord: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

/// An error plus the exit code it maps to.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError { message: message.into(), code: 2 }
    }

    fn internal(message: impl Into<String>) -> CliError {
        CliError { message: message.into(), code: 3 }
    }
}

impl From<RefuteError> for CliError {
    fn from(error: RefuteError) -> CliError {
        match error {
            RefuteError::Inconsistency(_) => CliError::internal(error.to_string()),
            _ => CliError::input(error.to_string()),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {}", error.message);
            ExitCode::from(error.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Grammar { action } => run_grammar(action),
        Command::Member { point, target, union } => run_member(&point, target.as_deref(), union),
        Command::Refute { file, trace, verify } => run_refute(&file, trace, verify),
        Command::Sweep { which } => run_sweep(which),
    }
}

/// `1`..`4` or `L1`..`L4` (case-insensitive) name a component; `L`, `l`, and
/// `union` name the whole language (`None`).
fn parse_target(text: &str) -> Result<Option<ComponentId>, CliError> {
    let lowered = text.to_ascii_lowercase();
    match lowered.as_str() {
        "l" | "union" => Ok(None),
        "1" | "l1" => Ok(Some(ComponentId::L1)),
        "2" | "l2" => Ok(Some(ComponentId::L2)),
        "3" | "l3" => Ok(Some(ComponentId::L3)),
        "4" | "l4" => Ok(Some(ComponentId::L4)),
        _ => Err(CliError::input(format!(
            "unknown target {text:?}: expected 1..4, L1..L4, or union"
        ))),
    }
}

fn builtin_grammar(selector: &str) -> Result<Grammar, CliError> {
    Ok(match parse_target(selector)? {
        None => build_union_grammar(),
        Some(component) => build_component_grammar(component),
    })
}

fn read_to_string(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|error| CliError::input(format!("cannot read {}: {error}", path.display())))
}

fn load_grammar(source: &GrammarSource) -> Result<Grammar, CliError> {
    match (&source.grammar, &source.component) {
        (Some(path), None) => {
            let text = read_to_string(path)?;
            Grammar::from_text(&text)
                .map_err(|error| CliError::input(format!("{}: {error}", path.display())))
        }
        (None, Some(selector)) => builtin_grammar(selector),
        _ => Err(CliError::input("give exactly one of --grammar and --component")),
    }
}

fn run_grammar(action: GrammarAction) -> Result<ExitCode, CliError> {
    match action {
        GrammarAction::Build { component, out } => {
            let grammar = builtin_grammar(&component)?;
            let text = grammar.to_text();
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|error| {
                    CliError::input(format!("cannot write {}: {error}", path.display()))
                })?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        GrammarAction::Parse { source, input } => {
            let grammar = load_grammar(&source)?;
            let accepted = grammar
                .recognize(&input)
                .map_err(|error| CliError::input(error.to_string()))?;
            println!("{accepted}");
            Ok(verdict_code(accepted))
        }
        GrammarAction::Count { source, input } => {
            let grammar = load_grammar(&source)?;
            let count = grammar
                .count_parses(&input)
                .map_err(|error| CliError::input(error.to_string()))?;
            println!("{count}");
            Ok(ExitCode::SUCCESS)
        }
        GrammarAction::Enumerate { source, max_len } => {
            let grammar = load_grammar(&source)?;
            let sentences = grammar
                .enumerate_language(max_len)
                .map_err(|error| CliError::input(error.to_string()))?;
            for sentence in sentences {
                println!("{sentence}");
            }
            Ok(ExitCode::SUCCESS)
        }
        GrammarAction::CheckLinear { grammar } => {
            let text = read_to_string(&grammar)?;
            let parsed = Grammar::from_text(&text)
                .map_err(|error| CliError::input(format!("{}: {error}", grammar.display())))?;
            let linear =
                parsed.is_linear().map_err(|error| CliError::input(error.to_string()))?;
            println!("{}", if linear { "linear" } else { "not linear" });
            Ok(verdict_code(linear))
        }
    }
}

fn verdict_code(positive: bool) -> ExitCode {
    if positive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_member(
    point_text: &str,
    target: Option<&str>,
    union: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let point: ExponentVector =
        point_text.parse().map_err(|error| CliError::input(format!("bad point: {error}")))?;

    if let Some(path) = union {
        let text = read_to_string(&path)?;
        let union = SemilinearUnion::parse(&text, Some(point.dim()))
            .map_err(|error| CliError::input(format!("{}: {error}", path.display())))?;
        let verdict =
            union.member(&point).map_err(|error| CliError::input(error.to_string()))?;
        return Ok(match verdict {
            Some(witness) => {
                println!(
                    "member set={} coeffs={:?}",
                    witness.set_index + 1,
                    witness.coefficients
                );
                ExitCode::SUCCESS
            }
            None => {
                println!("non-member");
                ExitCode::from(1)
            }
        });
    }

    match parse_target(target.unwrap_or("L"))? {
        None => {
            let verdict =
                member_language(&point).map_err(|error| CliError::input(error.to_string()))?;
            Ok(match verdict {
                Some(component) => {
                    println!("member {component}");
                    ExitCode::SUCCESS
                }
                None => {
                    println!("non-member");
                    ExitCode::from(1)
                }
            })
        }
        Some(component) => {
            let verdict = member_component(&point, component)
                .map_err(|error| CliError::input(error.to_string()))?;
            println!("{}", if verdict { "member" } else { "non-member" });
            Ok(verdict_code(verdict))
        }
    }
}

/// The `#`-prefixed construction trace: every line re-parses as a comment in
/// the union text format, so result + trace + union stays machine-readable.
fn render_trace(result: &RefutationResult) -> String {
    let trace = &result.trace;
    let mut out = String::new();
    let _ = writeln!(out, "# M = {}", trace.bound);
    let _ = writeln!(out, "# v = {}", trace.base_point);
    if let Some(index) = trace.set_index {
        let _ = writeln!(out, "# covering set {}", index + 1);
    }
    if let Some(coefficients) = &trace.coefficients {
        let _ = writeln!(out, "# coefficients {coefficients:?}");
    }
    let _ = writeln!(out, "# step {}", trace.fired_step);
    if let (Some(index), Some(delta)) = (trace.adjusted_index, trace.delta) {
        let _ = writeln!(out, "# adjusted beta[{}] by {delta:+}", index + 1);
    }
    if let Some(removed) = &trace.removed_for_u {
        let display: Vec<usize> = removed.iter().map(|i| i + 1).collect();
        let _ = writeln!(out, "# removed for u {display:?}");
    }
    if let Some(u_point) = &trace.u_point {
        let _ = writeln!(out, "# u = {u_point}");
    }
    if let Some(removed) = &trace.removed_final {
        let display: Vec<usize> = removed.iter().map(|i| i + 1).collect();
        let _ = writeln!(out, "# removed for w {display:?}");
    }
    if let (Some(index), Some(boost)) = (trace.boost_index, trace.boost) {
        let _ = writeln!(out, "# basis[{}] += {boost}", index + 1);
    }
    out
}

fn run_refute(file: &PathBuf, trace: bool, verify: bool) -> Result<ExitCode, CliError> {
    let text = read_to_string(file)?;
    let union = SemilinearUnion::parse(&text, Some(linwit::DIMENSION))
        .map_err(|error| CliError::input(format!("{}: {error}", file.display())))?;
    let result = refute(&union)?;
    println!("{}", result.summary());

    let mut code = ExitCode::SUCCESS;
    if verify {
        if verify_result(&union, &result) {
            println!("verification: PASS");
        } else {
            println!("verification: FAIL");
            code = ExitCode::from(3);
        }
    }
    if trace {
        print!("{}", render_trace(&result));
        println!("# input union:");
        print!("{}", union.to_text());
    }
    Ok(code)
}

fn run_sweep(which: SweepCommand) -> Result<ExitCode, CliError> {
    let (report, format) = match which {
        SweepCommand::Grammar { component, grammar, max_len, format } => {
            let target = match parse_target(&component)? {
                None => LanguageTarget::Union,
                Some(c) => LanguageTarget::Component(c),
            };
            let subject = match &grammar {
                Some(path) => {
                    let text = read_to_string(path)?;
                    Grammar::from_text(&text)
                        .map_err(|error| CliError::input(format!("{}: {error}", path.display())))?
                }
                None => match target {
                    LanguageTarget::Union => build_union_grammar(),
                    LanguageTarget::Component(c) => build_component_grammar(c),
                },
            };
            let report = sweep_grammar_vs_predicate(&subject, target, max_len)
                .map_err(|error| CliError::input(error.to_string()))?;
            (report, format)
        }
        SweepCommand::Disjoint { max_coord, format } => (sweep_disjointness(max_coord), format),
        SweepCommand::Pairs { max_coord, format } => (sweep_separation_pairs(max_coord), format),
        SweepCommand::Refuter { trials, max_sets, max_basis, max_coord, seed, format } => {
            (sweep_refuter(trials, max_sets, max_basis, max_coord, seed), format)
        }
        SweepCommand::Stratified { format } => (sweep_stratified(), format),
        SweepCommand::MemberOracle { queries, max_basis, max_coord, seed, format } => {
            (sweep_member_oracle(queries, max_basis, max_coord, seed), format)
        }
    };
    print_report(&report, format);
    Ok(verdict_code(report.passed()))
}

fn print_report(report: &SweepReport, format: Format) {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Tsv => print!("{}", report.render_tsv()),
    }
}
