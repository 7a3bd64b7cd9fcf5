//! Command-line front end: verify embedded certificates, emit CNF encodings,
//! run solvers, enumerate models, build catalogs, assemble pivot instances,
//! and compute small Ramsey values and counting bounds.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tourney_core::artifacts::{
    load_artifact, parse_external_db, verify_artifact, ArtifactName, DbFormat,
};
use tourney_core::catalog::{
    build_catalog, extend_catalog, parse_catalog, write_catalog, Catalog, PartCatalogs,
};
use tourney_core::encode::{emit_dimacs, emit_varmap, encode, pivot_instance};
use tourney_core::solver::{enumerate_models, solve_and_decode};
use tourney_core::tournament::{
    avg_cycles_per_edge, binomial, max_3cycles_bound, min_tt3_bound,
};
use tourney_core::{Encoding, PartialTournament, SolverConfig, SolverStatus, Tournament};

/// Environment variable consulted for the solver path when `--solver` is absent.
const SOLVER_ENV: &str = "TOURNEY_SOLVER";

#[derive(Parser)]
#[command(name = "tourney", version, about = "transitive-subtournament toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Human,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Direct,
    Cycle,
    Reduced,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Encoding {
        match e {
            EncodingArg::Direct => Encoding::Direct,
            EncodingArg::Cycle => Encoding::Cycle,
            EncodingArg::Reduced => Encoding::Reduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Matrix,
    Hex,
}

#[derive(Args)]
struct SolverArgs {
    /// Solver executable; falls back to $TOURNEY_SOLVER, then to a `dimsat`
    /// binary next to this one, then to `dimsat` on PATH.
    #[arg(long)]
    solver: Option<PathBuf>,
    /// Per-instance wall-clock limit in seconds.
    #[arg(long)]
    timeout: Option<u64>,
    /// Concurrent solver processes for batched work.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let solver = self
            .solver
            .clone()
            .or_else(|| std::env::var_os(SOLVER_ENV).map(PathBuf::from))
            .or_else(|| {
                let sibling = std::env::current_exe().ok()?.with_file_name("dimsat");
                sibling.is_file().then_some(sibling)
            })
            .unwrap_or_else(|| PathBuf::from("dimsat"));
        SolverConfig::new(solver)
            .with_timeout(self.timeout.map(Duration::from_secs))
            .with_workers(self.workers.max(1))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every claim attached to the embedded certificate tournaments.
    Verify {
        /// Artifact names to check (default: all).
        names: Vec<String>,
        /// External database file to validate in addition.
        #[arg(long = "db")]
        db: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "matrix")]
        format: Format,
        /// Require the external database to hold exactly the 37 doubly
        /// regular classes.
        #[arg(long)]
        doubly_regular: bool,
        #[arg(long, value_enum, default_value = "human")]
        report: Report,
    },
    /// Emit the CNF forbidding TT_k on n vertices.
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "reduced")]
        encoding: EncodingArg,
        /// Output file (stdout when absent).
        #[arg(long = "out")]
        out: Option<PathBuf>,
        /// Also write the variable map sidecar here.
        #[arg(long = "varmap-out")]
        varmap_out: Option<PathBuf>,
    },
    /// Solve one TT_k-freeness instance and decode the witness if any.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "reduced")]
        encoding: EncodingArg,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "human")]
        report: Report,
    },
    /// Enumerate TT_k-free tournaments on n vertices up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Stop after this many labeled models.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "reduced")]
        encoding: EncodingArg,
        #[arg(long, value_enum, default_value = "hex")]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Build the catalog of TT_k-free tournaments on n vertices.
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Extend an existing catalog file by one vertex instead of building
        /// from the block decomposition.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Use one-vertex-at-a-time extension from scratch instead of the
        /// block decomposition.
        #[arg(long)]
        extend: bool,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        report: Report,
    },
    /// Assemble (and optionally solve) a pivot-extension instance
    /// IN -> pivot -> OUT under a global TT_k prohibition.
    Pivot {
        #[arg(long)]
        k: usize,
        /// In-neighborhood block: generic:N, artifact:NAME, or
        /// file:PATH[:INDEX] (matrix or catalog format by extension).
        #[arg(long = "in-block")]
        in_block: String,
        /// Out-neighborhood block, same grammar.
        #[arg(long = "out-block")]
        out_block: String,
        #[arg(long, value_enum, default_value = "cycle")]
        encoding: EncodingArg,
        /// Write the DIMACS instance (plus a .vars sidecar) instead of solving.
        #[arg(long = "emit")]
        emit: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "human")]
        report: Report,
    },
    /// Determine R(k) by solving successive orders until Unsat.
    Ramsey {
        #[arg(long)]
        k: usize,
        /// Give up (status unknown) beyond this order.
        #[arg(long = "max-n", default_value_t = 40)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "reduced")]
        encoding: EncodingArg,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "human")]
        report: Report,
    },
    /// Counting bounds for order n: minimum TT_3 count, maximum 3-cycle
    /// count, average 3-cycles per edge, and the implied block-size cap.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "human")]
        report: Report,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tourney: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Verify { names, db, format, doubly_regular, report } => {
            cmd_verify(&names, db.as_deref(), format, doubly_regular, report)
        }
        Command::Encode { n, k, encoding, out, varmap_out } => {
            let f = encode(encoding.into(), n, k, None)?;
            let text = emit_dimacs(&f);
            match &out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            if let Some(path) = &varmap_out {
                fs::write(path, emit_varmap(&f.varmap))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { n, k, encoding, solver, report } => {
            let f = encode(encoding.into(), n, k, None)?;
            let (outcome, witness) = solve_and_decode(&f, k, &solver.config())?;
            print_status(report, n, outcome.status, outcome.wall_time, witness.as_ref());
            Ok(match outcome.status {
                SolverStatus::Unknown => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Enumerate { n, k, limit, encoding, format, solver } => {
            let f = encode(encoding.into(), n, k, None)?;
            let found = enumerate_models(&f, k, &solver.config(), limit)?;
            println!("classes={}", found.len());
            for t in &found {
                match format {
                    Format::Hex => println!("{}", tourney_core::catalog::encode_hex_entry(t)),
                    Format::Matrix => print!("{}\n", t.to_matrix_text()),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { n, k, input, extend, out, report } => {
            let mut parts = PartCatalogs::new();
            let cat: Catalog = if let Some(path) = &input {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                extend_catalog(&parse_catalog(&text)?)
            } else if extend {
                parts.catalog(k, n)?.clone()
            } else {
                build_catalog(n, k, &mut parts)?
            };
            if report == Report::Kv {
                println!("n={} k={} complete={} classes={}", cat.n, cat.k, cat.complete, cat.len());
            } else {
                println!(
                    "{} isomorphism classes of TT_{}-free tournaments on {} vertices",
                    cat.len(),
                    cat.k,
                    cat.n
                );
            }
            if let Some(path) = &out {
                fs::write(path, write_catalog(&cat))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pivot { k, in_block, out_block, encoding, emit, solver, report } => {
            let inn = parse_block_spec(&in_block)?;
            let out = parse_block_spec(&out_block)?;
            let f = pivot_instance(&inn, &out, k, encoding.into())?;
            if let Some(path) = &emit {
                fs::write(path, emit_dimacs(&f))?;
                fs::write(path.with_extension("vars"), emit_varmap(&f.varmap))?;
                return Ok(ExitCode::SUCCESS);
            }
            let (outcome, witness) = solve_and_decode(&f, k, &solver.config())?;
            let n = inn.n() + 1 + out.n();
            print_status(report, n, outcome.status, outcome.wall_time, witness.as_ref());
            Ok(match outcome.status {
                SolverStatus::Unknown => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Ramsey { k, max_n, encoding, solver, report } => {
            cmd_ramsey(k, max_n, encoding.into(), &solver.config(), report)
        }
        Command::Bounds { n, report } => cmd_bounds(n, report),
    }
}

fn print_status(
    report: Report,
    n: usize,
    status: SolverStatus,
    wall: Duration,
    witness: Option<&Tournament>,
) {
    let status_str = match status {
        SolverStatus::Sat => "sat",
        SolverStatus::Unsat => "unsat",
        SolverStatus::Unknown => "unknown",
    };
    match report {
        Report::Kv => println!("n={n} status={status_str} wall_secs={:.3}", wall.as_secs_f64()),
        Report::Human => {
            println!("n = {n}: {status_str} ({:.3} s)", wall.as_secs_f64())
        }
    }
    if let Some(t) = witness {
        print!("{}", t.to_matrix_text());
    }
}

fn cmd_verify(
    names: &[String],
    db: Option<&Path>,
    format: Format,
    doubly_regular: bool,
    report: Report,
) -> Result<ExitCode> {
    let selected: Vec<ArtifactName> = if names.is_empty() {
        ArtifactName::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|s| s.parse().map_err(|e: tourney_core::artifacts::ArtifactError| anyhow!(e)))
            .collect::<Result<_>>()?
    };
    let mut all_pass = true;
    for name in selected {
        let artifact = load_artifact(name);
        let rep = verify_artifact(&artifact);
        for r in &rep.results {
            all_pass &= r.pass;
            match report {
                Report::Kv => println!(
                    "artifact={name} claim=\"{}\" pass={}",
                    r.claim,
                    r.pass
                ),
                Report::Human => {
                    println!("{name}: {} ... {}", r.claim, if r.pass { "ok" } else { "FAIL" })
                }
            }
        }
        for note in &rep.notes {
            match report {
                Report::Kv => println!("artifact={name} note=\"{note}\""),
                Report::Human => println!("{name}: note: {note}"),
            }
        }
    }
    if let Some(path) = db {
        let fmt = match format {
            Format::Matrix => DbFormat::MatrixText,
            Format::Hex => DbFormat::CatalogHex,
        };
        match parse_external_db(path, fmt, doubly_regular) {
            Ok(db) => match report {
                Report::Kv => println!("db=\"{}\" entries={} pass=true", path.display(), db.tournaments.len()),
                Report::Human => {
                    println!("{}: {} entries, all checks passed", path.display(), db.tournaments.len())
                }
            },
            Err(e) => {
                all_pass = false;
                match report {
                    Report::Kv => println!("db=\"{}\" pass=false error=\"{e}\"", path.display()),
                    Report::Human => println!("{}: FAIL: {e}", path.display()),
                }
            }
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

/// Block grammar: `generic:N` (N free vertices), `artifact:NAME`,
/// `file:PATH[:INDEX]` with matrix text or the catalog format.
fn parse_block_spec(spec: &str) -> Result<PartialTournament> {
    if let Some(rest) = spec.strip_prefix("generic:") {
        let n: usize = rest.parse().context("generic:N needs an integer")?;
        return Ok(PartialTournament::new(n));
    }
    if let Some(rest) = spec.strip_prefix("artifact:") {
        let name: ArtifactName =
            rest.parse().map_err(|e: tourney_core::artifacts::ArtifactError| anyhow!(e))?;
        return Ok(PartialTournament::from_tournament(&load_artifact(name).tournament));
    }
    if let Some(rest) = spec.strip_prefix("file:") {
        let (path, index) = match rest.rsplit_once(':') {
            Some((p, idx)) if idx.chars().all(|c| c.is_ascii_digit()) => {
                (PathBuf::from(p), idx.parse::<usize>().unwrap())
            }
            _ => (PathBuf::from(rest), 0),
        };
        let text = fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        let t = if text.starts_with("tournament-catalog") {
            let cat = parse_catalog(&text)?;
            cat.entries
                .get(index)
                .map(|e| e.tournament.clone())
                .ok_or_else(|| anyhow!("catalog has {} entries, index {index}", cat.len()))?
        } else {
            let db = parse_external_db(&path, DbFormat::MatrixText, false)?;
            db.tournaments
                .get(index)
                .cloned()
                .ok_or_else(|| anyhow!("file has {} blocks, index {index}", db.tournaments.len()))?
        };
        return Ok(PartialTournament::from_tournament(&t));
    }
    bail!("bad block spec {spec:?}: expected generic:N, artifact:NAME, or file:PATH[:INDEX]")
}

fn cmd_ramsey(
    k: usize,
    max_n: usize,
    encoding: Encoding,
    cfg: &SolverConfig,
    report: Report,
) -> Result<ExitCode> {
    for n in k..=max_n {
        let f = encode(encoding, n, k, None)?;
        let (outcome, witness) = solve_and_decode(&f, k, cfg)?;
        print_status(report, n, outcome.status, outcome.wall_time, witness.as_ref());
        match outcome.status {
            SolverStatus::Sat => continue,
            SolverStatus::Unsat => {
                match report {
                    Report::Kv => println!("ramsey_k={k} ramsey_n={n}"),
                    Report::Human => println!("R({k}) = {n}"),
                }
                return Ok(ExitCode::SUCCESS);
            }
            SolverStatus::Unknown => {
                match report {
                    Report::Kv => println!("ramsey_k={k} ramsey_n=unknown"),
                    Report::Human => println!("R({k}) unresolved at n = {n} (solver gave up)"),
                }
                return Ok(ExitCode::from(2));
            }
        }
    }
    match report {
        Report::Kv => println!("ramsey_k={k} ramsey_n=>{max_n}"),
        Report::Human => println!("R({k}) > {max_n} (search limit reached)"),
    }
    Ok(ExitCode::from(2))
}

fn cmd_bounds(n: u64, report: Report) -> Result<ExitCode> {
    if n < 3 {
        bail!("bounds needs n >= 3");
    }
    let tt3_min = min_tt3_bound(n);
    let cycles_max = max_3cycles_bound(n).num;
    let avg = avg_cycles_per_edge(n);
    // unreduced display form: cycles / (C(n,2)/3) when divisible
    let pairs = binomial(n, 2);
    let (raw_num, raw_den) =
        if pairs % 3 == 0 { (cycles_max, pairs / 3) } else { (3 * cycles_max, pairs) };
    let cap = avg.floor();

    match report {
        Report::Kv => {
            println!("n={n}");
            println!("tt3_min={tt3_min}");
            println!("cycles_max={cycles_max}");
            println!("avg_raw={raw_num}/{raw_den}");
            println!("avg={avg}");
            println!("d_cap={cap}");
        }
        Report::Human => {
            println!("order {n}:");
            println!("  TT_3 count >= {tt3_min}");
            println!("  3-cycle count <= {cycles_max}");
            println!("  average 3-cycles per edge = {raw_num}/{raw_den} = {avg}");
            println!("  block |D| cap = {cap}");
        }
    }

    if avg.is_integer() && n % 4 == 3 {
        // the integer average is attained only by doubly regular tournaments
        let dr_cycles = n * (n + 1) * (n - 1) / 24;
        let dr_tt3 = binomial(n, 3) - dr_cycles;
        match report {
            Report::Kv => {
                println!("avg_exact=true");
                println!("dr_cycles={dr_cycles}");
                println!("dr_tt3={dr_tt3}");
            }
            Report::Human => {
                println!("  average is exact: only doubly regular tournaments attain it");
                println!("  doubly regular: 3-cycles = {dr_cycles}, TT_3 count = {dr_tt3}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
