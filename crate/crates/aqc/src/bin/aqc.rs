//! Command-line front end: optimal-parameter tables, code construction,
//! verification, concatenation, nonexistence certificates and searches.
//!
//! Exit codes: 0 success, 1 semantic negative (infeasible, mismatch, not
//! found), 2 usage or parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aqc::bounds::{self, Dim};
use aqc::code::{render_k, CodeSummary, LineMultiset};
use aqc::constructions;
use aqc::geometry::standard_flag;
use aqc::io;
use aqc::search::{self, IncidenceTarget, SearchOptions};
use aqc::Error;

#[derive(Parser)]
#[command(name = "aqc", version, about = "Optimal additive quaternary codes of dimension k <= 3")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the optimal-parameter table n_k(s) as TSV
    Tables {
        /// Quaternary dimension: 1, 1.5, 2, 2.5 or 3
        #[arg(long)]
        k: String,
        #[arg(long)]
        s_max: u32,
    },
    /// Build a code and write it as a code file
    Construct(ConstructArgs),
    /// Verify a code file and print its parameters and weight distribution
    Verify {
        file: PathBuf,
        /// Expected parameters n,k,d; exits 1 unless n and k match and the
        /// measured distance is at least d
        #[arg(long)]
        expect: Option<String>,
    },
    /// Concatenate with the binary [3,2,2] code and print the binary parameters
    Concat {
        file: PathBuf,
        /// Write the binary generator matrix here
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Emit a concatenation + Griesmer nonexistence certificate
    Certify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: String,
        #[arg(long)]
        d: u32,
    },
    /// Run a backtracking search and write the first solution
    Search(SearchArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ConstructTargetGroup {
    /// Target length (with --k and --d)
    #[arg(long, requires = "k", requires = "d")]
    n: Option<u32>,
    /// Build the maximal-length representative D_s
    #[arg(long)]
    design: Option<u32>,
    /// Build C(g,h,v,e); four comma-separated multiplicities
    #[arg(long = "C", value_name = "g,h,v,e")]
    c_params: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    target: ConstructTargetGroup,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// V | E | spread | species | arc
    #[arg(long)]
    mode: String,
    /// Ambient projective dimension for spread mode
    #[arg(long, default_value_t = 3)]
    pg: usize,
    /// Multiset size for species mode
    #[arg(long)]
    n: Option<u32>,
    /// Maximum hyperplane species for species mode
    #[arg(long)]
    smax: Option<u32>,
    /// F2 dimension of the ambient space for species mode
    #[arg(long, default_value_t = 5)]
    k2: usize,
    /// Node budget
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(short)]
    output: Option<PathBuf>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn semantic_error(msg: &str) -> ExitCode {
    eprintln!("{msg}");
    ExitCode::from(1)
}

fn parse_dim(s: &str) -> Result<Dim, String> {
    s.parse::<Dim>().map_err(|e| e.to_string())
}

fn emit(text: &str, output: &Option<PathBuf>) -> std::io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summary_line(s: &CodeSummary) -> String {
    let weights: Vec<String> = s.weights.iter().map(|(w, c)| format!("{w}: {c}")).collect();
    format!("{} weights {{{}}}", s.params(), weights.join(", "))
}

fn run_tables(k: &str, s_max: u32) -> ExitCode {
    let dim = match parse_dim(k) {
        Ok(d) => d,
        Err(e) => return usage_error(&e),
    };
    let rows = match bounds::optimal_table(dim, s_max) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    println!("s\tn");
    for (s, n) in rows {
        match n {
            Some(n) => println!("{s}\t{n}"),
            None => println!("{s}\tinf"),
        }
    }
    ExitCode::SUCCESS
}

fn run_construct(args: &ConstructArgs) -> ExitCode {
    let built = if let Some(spec) = &args.target.c_params {
        let parts: Vec<_> = spec.split(',').map(|t| t.trim().parse::<u32>()).collect();
        if parts.len() != 4 || parts.iter().any(|p| p.is_err()) {
            return usage_error("--C takes four comma-separated non-negative integers");
        }
        let vals: Vec<u32> = parts.into_iter().map(|p| p.unwrap()).collect();
        constructions::build_c(&constructions::ConstructionParams {
            g: vals[0],
            h: vals[1],
            v: vals[2],
            e: vals[3],
        })
    } else if let Some(s) = args.target.design {
        constructions::build_d(s)
    } else {
        let n = args.target.n.expect("clap group");
        let (k, d) = match (&args.k, args.d) {
            (Some(k), Some(d)) => (k, d),
            _ => return usage_error("--n requires --k and --d"),
        };
        let dim = match parse_dim(k) {
            Ok(dim) => dim,
            Err(e) => return usage_error(&e),
        };
        constructions::code_for(n, dim, d)
    };
    match built {
        Ok(lm) => {
            if emit(&io::serialize_code(&lm), &args.output).is_err() {
                return semantic_error("cannot write output file");
            }
            ExitCode::SUCCESS
        }
        Err(Error::Infeasible(cert)) => semantic_error(&cert.to_string()),
        Err(Error::InvalidParams(msg)) => usage_error(&msg),
        Err(e) => semantic_error(&e.to_string()),
    }
}

fn load_code(path: &PathBuf) -> Result<LineMultiset, ExitCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage_error(&format!("cannot read {}: {e}", path.display())))?;
    io::parse_code(&text).map_err(|e| usage_error(&e.to_string()))
}

fn run_verify(file: &PathBuf, expect: &Option<String>) -> ExitCode {
    let lm = match load_code(file) {
        Ok(lm) => lm,
        Err(code) => return code,
    };
    let summary = match lm.summarize() {
        Ok(s) => s,
        Err(e) => return semantic_error(&e.to_string()),
    };
    println!("{}", summary_line(&summary));
    if let Some(spec) = expect {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 3 {
            return usage_error("--expect takes n,k,d");
        }
        let (n, dim, d) = match (parts[0].trim().parse::<u32>(), parse_dim(parts[1].trim()), parts[2].trim().parse::<u32>()) {
            (Ok(n), Ok(k), Ok(d)) => (n, k, d),
            _ => return usage_error("--expect takes n,k,d"),
        };
        if summary.n != n || summary.k2 != dim.k2() || summary.d < d {
            return semantic_error(&format!(
                "mismatch: measured {}, expected [{}, {}, >= {}]",
                summary.params(),
                n,
                render_k(dim.k2()),
                d
            ));
        }
    }
    ExitCode::SUCCESS
}

fn run_concat(file: &PathBuf, output: &Option<PathBuf>) -> ExitCode {
    let lm = match load_code(file) {
        Ok(lm) => lm,
        Err(code) => return code,
    };
    let gm = match lm.generator_matrix() {
        Ok(gm) => gm,
        Err(e) => return semantic_error(&e.to_string()),
    };
    let bin = gm.concat_322();
    let summary = match bin.summary() {
        Ok(s) => s,
        Err(e) => return semantic_error(&e.to_string()),
    };
    if let Some(path) = output {
        if fs::write(path, io::serialize_binary(&bin)).is_err() {
            return semantic_error("cannot write output file");
        }
    }
    println!("[{}, {}, {}]_2", summary.n, summary.k, summary.d);
    ExitCode::SUCCESS
}

fn run_certify(n: u32, k: &str, d: u32) -> ExitCode {
    let dim = match parse_dim(k) {
        Ok(dim) => dim,
        Err(e) => return usage_error(&e),
    };
    let cert = bounds::nonexistence_certificate(n, dim, d);
    println!("{cert}");
    if cert.violation {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cover_to_multiset(k2: usize, ids: &[usize]) -> LineMultiset {
    LineMultiset::from_entries(k2, ids.iter().map(|&id| (id, 1))).expect("valid cover")
}

fn run_search(args: &SearchArgs) -> ExitCode {
    let opts = SearchOptions {
        first_only: true,
        max_nodes: args.budget,
        symmetry_pruning: true,
    };
    let flag = standard_flag();
    let outcome: Result<(Option<LineMultiset>, search::SearchStats), Error> =
        match args.mode.as_str() {
            "V" | "E" => {
                let target = if args.mode == "V" {
                    constructions::v_target(&flag)
                } else {
                    constructions::e_target(&flag)
                };
                target.and_then(|t| search::exact_line_cover(&t, &opts)).map(|(sols, stats)| {
                    (sols.first().map(|s| cover_to_multiset(5, s)), stats)
                })
            }
            "spread" => {
                let target = aqc::geometry::Geometry::get(args.pg)
                    .map(|g| vec![1u32; g.point_count as usize])
                    .and_then(|req| IncidenceTarget::new(args.pg, req));
                target.and_then(|t| search::exact_line_cover(&t, &opts)).map(|(sols, stats)| {
                    (sols.first().map(|s| cover_to_multiset(args.pg + 1, s)), stats)
                })
            }
            "species" => match (args.n, args.smax) {
                (Some(n), Some(smax)) => search::bounded_species_search(n, smax, args.k2, &opts),
                _ => return usage_error("species mode needs --n and --smax"),
            },
            "arc" => match search::arc_search(args.n.unwrap_or(9) as usize, args.smax.unwrap_or(3)) {
                Some(points) => {
                    let mut lm = LineMultiset::new(6).expect("PG(5,2)");
                    for p in &points {
                        lm.add(aqc::gf4::point_to_gf2_line(p), 1).expect("valid line");
                    }
                    Ok((Some(lm), search::SearchStats::default()))
                }
                None => Ok((None, search::SearchStats::default())),
            },
            other => return usage_error(&format!("unknown search mode {other:?}")),
        };
    match outcome {
        Ok((Some(lm), stats)) => {
            if emit(&io::serialize_code(&lm), &args.output).is_err() {
                return semantic_error("cannot write output file");
            }
            println!("{}\t{}", stats.nodes, stats.solutions);
            ExitCode::SUCCESS
        }
        Ok((None, stats)) => {
            println!("{}\t{}", stats.nodes, stats.solutions);
            semantic_error("search completed with no solution")
        }
        Err(e) => semantic_error(&e.to_string()),
    }
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Tables { k, s_max } => run_tables(&k, s_max),
        Cmd::Construct(args) => run_construct(&args),
        Cmd::Verify { file, expect } => run_verify(&file, &expect),
        Cmd::Concat { file, output } => run_concat(&file, &output),
        Cmd::Certify { n, k, d } => run_certify(n, &k, d),
        Cmd::Search(args) => run_search(&args),
    }
}
