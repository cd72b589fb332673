//! Command-line interface over the library: matrix ingestion, one subcommand
//! per top-level operation, deterministic text/JSON output, binomial
//! rendering, and DOT export of fiber graphs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use toric_markov::{
    collect_markov_bases, count_markov_from_seed, fiber_graph, fiber_graph_dot, generating_fibers,
    indispensable_from_seed, markov_bases_from_seed, matrix_to_json, parse_key, parse_matrix,
    parse_moves, prufer_tree, random_markov_from_seed, render_binomial,
    seed_markov_basis_with_budget, universal_from_seed, verify_markov_basis, verify_seed_basis,
    BasisKind, CompletionBudget, ConfigMatrix, Error, FiberGraph, MarkovBasis, Move, Result,
    DEFAULT_FIBER_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "toric-markov",
    version,
    about = "Minimal Markov bases of toric ideals: count, enumerate, sample, and analyze"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One move per line, space-separated integers.
    Rows,
    /// A single JSON object.
    Json,
    /// Binomials over x1..xn.
    Binomials,
}

#[derive(Args)]
struct MatrixArgs {
    /// Inline matrix: rows split by ';' or newlines, entries by commas or
    /// spaces; JSON ({"rows": [[..]]}) also accepted.
    matrix: Option<String>,

    /// Read the matrix from a file instead of the command line.
    #[arg(long, conflicts_with = "matrix")]
    file: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Rows)]
    format: Format,

    /// Bypass the completion engine with a seed basis from a file (one move
    /// per line); it is verified against its own fibers before use.
    #[arg(long)]
    seed_basis: Option<PathBuf>,

    /// Cap on the number of elements of any fiber.
    #[arg(long, env = "TORIC_MARKOV_FIBER_LIMIT", default_value_t = DEFAULT_FIBER_LIMIT)]
    fiber_limit: usize,

    /// Cap on S-pairs processed by the completion engine.
    #[arg(long, default_value_t = 1_000_000)]
    pairs_budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a generating set of moves (not necessarily minimal).
    Seed(MatrixArgs),
    /// Count all minimal Markov bases exactly.
    Count(MatrixArgs),
    /// Enumerate all minimal Markov bases in a deterministic order.
    Bases {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Emit at most this many bases.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Sample uniformly random minimal Markov bases.
    Random {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Number of independent samples.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Seed for the (ChaCha8) random number generator.
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Moves contained in every minimal Markov basis.
    Indispensable(MatrixArgs),
    /// Moves contained in some minimal Markov basis.
    Universal(MatrixArgs),
    /// Print fiber graphs: all generating fibers, or one selected key.
    FiberGraph {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Fiber key, e.g. "30" or "1,0,2".
        #[arg(long, short = 't')]
        key: Option<String>,
        /// Emit Graphviz DOT instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Decode a Prüfer sequence into the edges of its labelled tree.
    Prufer {
        /// Comma-separated sequence, e.g. "0,0,2,4"; empty for two vertices.
        #[arg(long, default_value = "")]
        seq: String,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Rows)]
        format: Format,
    },
    /// Check whether a move set generates the toric ideal and is minimal.
    Verify {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// File with the moves to verify, one per line.
        #[arg(long)]
        basis: PathBuf,
    },
}

fn main() -> ExitCode {
    // Die quietly instead of panicking when stdout closes early, e.g. when
    // a long enumeration is piped into `head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_matrix(args: &MatrixArgs) -> Result<(Vec<Vec<BigInt>>, ConfigMatrix)> {
    let text = match (&args.matrix, &args.file) {
        (Some(inline), None) => inline.clone(),
        (None, Some(path)) => read_file(path)?,
        _ => {
            return Err(Error::Parse {
                line: 0,
                col: 0,
                message: "provide a matrix inline or with --file".to_string(),
            })
        }
    };
    let rows = parse_matrix(&text)?;
    let a = ConfigMatrix::admit(rows.clone())?.with_fiber_limit(args.fiber_limit);
    Ok((rows, a))
}

/// Seed basis: from `--seed-basis` (verified before use) or from the
/// completion engine.
fn load_seed(a: &ConfigMatrix, args: &MatrixArgs) -> Result<MarkovBasis> {
    match &args.seed_basis {
        Some(path) => {
            let vectors = parse_moves(&read_file(path)?, a.col_count())?;
            verify_seed_basis(a, &vectors)
        }
        None => seed_markov_basis_with_budget(
            a,
            &CompletionBudget {
                max_pairs: args.pairs_budget,
                wall_limit: None,
            },
        ),
    }
}

fn move_row(m: &Move) -> String {
    m.vector()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn moves_json(moves: &[Move]) -> serde_json::Value {
    serde_json::Value::Array(
        moves
            .iter()
            .map(|m| serde_json::json!(m.vector()))
            .collect(),
    )
}

fn base_json(rows: &[Vec<BigInt>]) -> serde_json::Map<String, serde_json::Value> {
    let mut map = serde_json::Map::new();
    map.insert("matrix".to_string(), matrix_to_json(rows)["rows"].clone());
    map
}

fn print_move_set(rows: &[Vec<BigInt>], basis: &MarkovBasis, format: Format) {
    match format {
        Format::Rows => {
            for m in basis.moves() {
                println!("{}", move_row(m));
            }
        }
        Format::Binomials => {
            for m in basis.moves() {
                println!("{}", render_binomial(m));
            }
        }
        Format::Json => {
            let mut map = base_json(rows);
            map.insert("kind".to_string(), serde_json::json!(basis.kind().as_str()));
            map.insert("moves".to_string(), moves_json(basis.moves()));
            println!("{}", serde_json::Value::Object(map));
        }
    }
}

fn print_basis_list(
    rows: &[Vec<BigInt>],
    bases: &[MarkovBasis],
    kind: BasisKind,
    count: Option<&toric_markov::BigCount>,
    format: Format,
) {
    match format {
        Format::Rows => {
            for (i, b) in bases.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                for m in b.moves() {
                    println!("{}", move_row(m));
                }
            }
        }
        Format::Binomials => {
            for b in bases.iter() {
                let line: Vec<String> = b.moves().iter().map(render_binomial).collect();
                println!("{}", line.join(", "));
            }
        }
        Format::Json => {
            let mut map = base_json(rows);
            map.insert("kind".to_string(), serde_json::json!(kind.as_str()));
            if let Some(c) = count {
                map.insert("count".to_string(), serde_json::json!(c.to_string()));
            }
            map.insert(
                "bases".to_string(),
                serde_json::Value::Array(bases.iter().map(|b| moves_json(b.moves())).collect()),
            );
            println!("{}", serde_json::Value::Object(map));
        }
    }
}

fn fiber_text(g: &FiberGraph) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    writeln!(
        s,
        "fiber {}: {} elements, {} components",
        g.key(),
        g.fiber().len(),
        g.component_count()
    )
    .unwrap();
    for (i, comp) in g.components().iter().enumerate() {
        let members: Vec<String> = comp
            .iter()
            .map(|&idx| {
                let coords: Vec<String> = g.fiber().elements()[idx]
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                format!("({})", coords.join(","))
            })
            .collect();
        writeln!(s, "component {}: {}", i + 1, members.join(" ")).unwrap();
    }
    s
}

fn fiber_json(g: &FiberGraph) -> serde_json::Value {
    serde_json::json!({
        "key": g.key().coords().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "elements": g.fiber().elements(),
        "components": g.components(),
    })
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Seed(args) => {
            let (rows, a) = load_matrix(&args)?;
            let seed = load_seed(&a, &args)?;
            print_move_set(&rows, &seed, args.format);
        }
        Command::Count(args) => {
            let (rows, a) = load_matrix(&args)?;
            let seed = load_seed(&a, &args)?;
            let count = count_markov_from_seed(&a, &seed)?;
            match args.format {
                Format::Json => {
                    let mut map = base_json(&rows);
                    map.insert("count".to_string(), serde_json::json!(count.to_string()));
                    println!("{}", serde_json::Value::Object(map));
                }
                _ => println!("{count}"),
            }
        }
        Command::Bases { matrix, limit } => {
            let (rows, a) = load_matrix(&matrix)?;
            let seed = load_seed(&a, &matrix)?;
            if matrix.format == Format::Json {
                let count = count_markov_from_seed(&a, &seed)?;
                let bases = match limit {
                    Some(l) => markov_bases_from_seed(&a, &seed)?.take(l).collect(),
                    None => collect_markov_bases(&a, &seed, None)?,
                };
                print_basis_list(
                    &rows,
                    &bases,
                    BasisKind::Minimal,
                    Some(&count),
                    matrix.format,
                );
            } else {
                // Streaming: no materialization cap applies.
                let stream = markov_bases_from_seed(&a, &seed)?;
                let mut first = true;
                for b in stream.take(limit.unwrap_or(usize::MAX)) {
                    match matrix.format {
                        Format::Rows => {
                            if !first {
                                println!();
                            }
                            for m in b.moves() {
                                println!("{}", move_row(m));
                            }
                        }
                        Format::Binomials => {
                            let line: Vec<String> = b.moves().iter().map(render_binomial).collect();
                            println!("{}", line.join(", "));
                        }
                        Format::Json => unreachable!(),
                    }
                    first = false;
                }
            }
        }
        Command::Random {
            matrix,
            count,
            rng_seed,
        } => {
            let (rows, a) = load_matrix(&matrix)?;
            let seed = load_seed(&a, &matrix)?;
            let samples = random_markov_from_seed(&a, &seed, rng_seed, count)?;
            print_basis_list(&rows, &samples, BasisKind::Sample, None, matrix.format);
        }
        Command::Indispensable(args) => {
            let (rows, a) = load_matrix(&args)?;
            let seed = load_seed(&a, &args)?;
            let s = indispensable_from_seed(&a, &seed)?;
            print_move_set(&rows, &s, args.format);
        }
        Command::Universal(args) => {
            let (rows, a) = load_matrix(&args)?;
            let seed = load_seed(&a, &args)?;
            let u = universal_from_seed(&a, &seed)?;
            print_move_set(&rows, &u, args.format);
        }
        Command::FiberGraph { matrix, key, dot } => {
            let (rows, a) = load_matrix(&matrix)?;
            let graphs = match key {
                Some(text) => vec![fiber_graph(&a, &parse_key(&text, a.row_count())?)?],
                None => {
                    let seed = load_seed(&a, &matrix)?;
                    generating_fibers(&a, &seed)?
                }
            };
            if dot {
                for g in &graphs {
                    print!("{}", fiber_graph_dot(g));
                }
            } else {
                match matrix.format {
                    Format::Json => {
                        let mut map = base_json(&rows);
                        map.insert(
                            "fibers".to_string(),
                            serde_json::Value::Array(
                                graphs.iter().map(|g| fiber_json(g)).collect(),
                            ),
                        );
                        println!("{}", serde_json::Value::Object(map));
                    }
                    _ => {
                        for g in &graphs {
                            print!("{}", fiber_text(g));
                        }
                    }
                }
            }
        }
        Command::Prufer { seq, n, format } => {
            let labels: Vec<usize> = seq
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::BadSequence {
                        reason: format!("bad label {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            let edges = prufer_tree(&labels, n)?;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({ "n": n, "seq": labels, "edges": edges })
                    );
                }
                _ => {
                    let text: Vec<String> =
                        edges.iter().map(|(u, v)| format!("{{{u},{v}}}")).collect();
                    println!("{}", text.join(" "));
                }
            }
        }
        Command::Verify { matrix, basis } => {
            let (rows, a) = load_matrix(&matrix)?;
            let vectors = parse_moves(&read_file(&basis)?, a.col_count())?;
            let seed = load_seed(&a, &matrix)?;
            let reference: Vec<_> = generating_fibers(&a, &seed)?
                .iter()
                .map(|g| g.key().clone())
                .collect();
            let verdict = verify_markov_basis(&a, &vectors, &reference)?;
            match matrix.format {
                Format::Json => {
                    let mut map = base_json(&rows);
                    map.insert(
                        "generates".to_string(),
                        serde_json::json!(verdict.generates),
                    );
                    map.insert("minimal".to_string(), serde_json::json!(verdict.minimal));
                    map.insert(
                        "certificate".to_string(),
                        match &verdict.certificate {
                            Some(c) => serde_json::json!({
                                "fiber": c.fiber.coords().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                                "u": c.u,
                                "v": c.v,
                            }),
                            None => serde_json::Value::Null,
                        },
                    );
                    println!("{}", serde_json::Value::Object(map));
                }
                _ => {
                    println!("generates: {}", verdict.generates);
                    println!("minimal: {}", verdict.minimal);
                    if let Some(c) = &verdict.certificate {
                        println!(
                            "certificate: fiber {} separates ({}) from ({})",
                            c.fiber,
                            c.u.iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                            c.v.iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                        );
                    }
                }
            }
            if !verdict.generates {
                return Ok(ExitCode::from(5));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
