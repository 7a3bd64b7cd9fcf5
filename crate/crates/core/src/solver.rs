//! Subprocess harness for external DIMACS SAT solvers.
//!
//! The harness depends only on the solver's output grammar ("s ..." and
//! "v ..." lines) and the conventional exit statuses 10 (SAT) / 20 (UNSAT);
//! any DIMACS-conformant executable works. Solver answers are untrusted:
//! every decoded model is re-verified against the transitivity oracle by
//! callers in this module.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::encode::{emit_dimacs, CnfFormula};
use crate::tournament::{Tournament, TournamentError};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("solver executable not found: {0}")]
    SolverNotFound(PathBuf),
    #[error("solver crashed (exit status {status:?}): {stderr}")]
    SolverCrashed { status: Option<i32>, stderr: String },
    #[error("solver reported SAT but assigned no model")]
    MissingModel,
    #[error("outcome is not SAT")]
    NotSat,
    #[error("decoded assignment is not a tournament: {0}")]
    BadModel(#[from] TournamentError),
    #[error("decoded tournament contains a TT_{0}, solver model rejected")]
    OracleRejected(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub solver: PathBuf,
    /// Per-instance wall-clock limit. `None` means unlimited.
    pub timeout: Option<Duration>,
    pub workers: usize,
}

impl SolverConfig {
    pub fn new(solver: impl Into<PathBuf>) -> Self {
        SolverConfig { solver: solver.into(), timeout: None, workers: 1 }
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        assert!(workers >= 1);
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverStatus {
    Sat,
    Unsat,
    /// Timeout or an indeterminate solver answer.
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SolverOutcome {
    pub status: SolverStatus,
    /// Assignment of every variable, index 0 = variable 1. `Sat` only.
    pub model: Option<Vec<bool>>,
    pub wall_time: Duration,
    /// Verbatim solver stdout.
    pub log: String,
}

/// Runs the solver on a DIMACS file already on disk.
pub fn solve_file(path: &Path, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
    let start = Instant::now();
    let mut child = Command::new(&cfg.solver)
        .arg(path)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                SolverError::SolverNotFound(cfg.solver.clone())
            } else {
                SolverError::Io(e)
            }
        })?;

    let timed_out = loop {
        match child.try_wait()? {
            Some(_) => break false,
            None => {
                if let Some(limit) = cfg.timeout {
                    if start.elapsed() > limit {
                        let _ = child.kill();
                        let _ = child.wait();
                        break true;
                    }
                }
                std::thread::sleep(Duration::from_millis(10));
            }
        }
    };
    let output = child.wait_with_output()?;
    let wall_time = start.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout).into_owned();

    if timed_out {
        return Ok(SolverOutcome {
            status: SolverStatus::Unknown,
            model: None,
            wall_time,
            log: format!("{stdout}\nc harness: killed after timeout\n"),
        });
    }

    let mut status = None;
    let mut assigned: Vec<i32> = Vec::new();
    for line in stdout.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            status = match rest.trim() {
                "SATISFIABLE" => Some(SolverStatus::Sat),
                "UNSATISFIABLE" => Some(SolverStatus::Unsat),
                _ => Some(SolverStatus::Unknown),
            };
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                if let Ok(lit) = tok.parse::<i32>() {
                    if lit != 0 {
                        assigned.push(lit);
                    }
                }
            }
        }
    }

    // exit-status conventions honored when no status line was printed
    let status = match status {
        Some(s) => s,
        None => match output.status.code() {
            Some(10) => SolverStatus::Sat,
            Some(20) => SolverStatus::Unsat,
            code => {
                return Err(SolverError::SolverCrashed {
                    status: code,
                    stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
                })
            }
        },
    };

    let model = if status == SolverStatus::Sat {
        let max_var = assigned.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        let mut m = vec![false; max_var];
        for lit in assigned {
            m[lit.unsigned_abs() as usize - 1] = lit > 0;
        }
        Some(m)
    } else {
        None
    };

    Ok(SolverOutcome { status, model, wall_time, log: stdout })
}

/// Writes the formula to a temp file and runs the solver on it.
pub fn solve(f: &CnfFormula, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
    let mut tmp = tempfile::Builder::new().suffix(".cnf").tempfile()?;
    tmp.write_all(emit_dimacs(f).as_bytes())?;
    tmp.flush()?;
    let mut outcome = solve_file(tmp.path(), cfg)?;
    if outcome.status == SolverStatus::Sat {
        // pad the model out to the declared variable count; unlisted
        // variables default to false
        let model = outcome.model.get_or_insert_with(Vec::new);
        if model.len() < f.var_count {
            model.resize(f.var_count, false);
        }
    }
    Ok(outcome)
}

/// Projects a SAT model onto the edge variables and rebuilds the tournament.
/// Cycle-auxiliary variables are ignored.
pub fn decode_model(
    outcome: &SolverOutcome,
    f: &CnfFormula,
) -> Result<Tournament, SolverError> {
    if outcome.status != SolverStatus::Sat {
        return Err(SolverError::NotSat);
    }
    let model = outcome.model.as_ref().ok_or(SolverError::MissingModel)?;
    let n = f.varmap.n;
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let var = f.varmap.edge_var(i, j) as usize;
            bits.push(model.get(var - 1).copied().unwrap_or(false));
        }
    }
    Ok(Tournament::from_upper_triangle_bits(n, &bits)?)
}

/// Solve, decode, and verify against the independent transitivity oracle.
pub fn solve_and_decode(
    f: &CnfFormula,
    k: usize,
    cfg: &SolverConfig,
) -> Result<(SolverOutcome, Option<Tournament>), SolverError> {
    let outcome = solve(f, cfg)?;
    if outcome.status != SolverStatus::Sat {
        return Ok((outcome, None));
    }
    let t = decode_model(&outcome, f)?;
    if t.has_tt_k(k) {
        return Err(SolverError::OracleRejected(k));
    }
    Ok((outcome, Some(t)))
}

/// Enumerates isomorph-distinct models by labeled blocking.
///
/// After each model, a blocking clause negating the exact edge-variable
/// assignment is added (auxiliary variables are implied by the edges, so
/// blocking them would re-admit the same tournament). The labeled stream
/// is post-filtered by canonical form.
pub fn enumerate_models(
    f: &CnfFormula,
    k: usize,
    cfg: &SolverConfig,
    limit: Option<usize>,
) -> Result<Vec<Tournament>, SolverError> {
    let mut work = f.clone();
    let mut seen: Vec<(CanonicalForm, Tournament)> = Vec::new();
    let mut found = 0usize;
    loop {
        if let Some(limit) = limit {
            if found >= limit {
                break;
            }
        }
        let (_outcome, t) = solve_and_decode(&work, k, cfg)?;
        let Some(t) = t else { break };
        found += 1;
        let cf = canonical_form(&t);
        if !seen.iter().any(|(c, _)| *c == cf) {
            seen.push((cf, t.clone()));
        }
        let n = t.n();
        let mut blocking = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let var = work.varmap.edge_var(i, j);
                blocking.push(if t.has_edge(i, j) { -var } else { var });
            }
        }
        work.clauses.push(blocking);
    }
    Ok(seen.into_iter().map(|(_, t)| t).collect())
}

/// Runs up to `cfg.workers` solver processes concurrently, one per instance.
/// Outcome order matches input order; per-instance failures are recorded and
/// the batch continues. When `log_dir` is given, each instance's solver
/// stdout and wall time are persisted to `instance_<i>.log`.
pub fn solve_batch(
    instances: &[CnfFormula],
    cfg: &SolverConfig,
    log_dir: Option<&Path>,
) -> Vec<Result<SolverOutcome, SolverError>> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    if let Some(dir) = log_dir {
        let _ = fs::create_dir_all(dir);
    }
    let next = AtomicUsize::new(0);
    let results: Vec<Mutex<Option<Result<SolverOutcome, SolverError>>>> =
        instances.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.min(instances.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= instances.len() {
                    break;
                }
                let result = solve(&instances[i], cfg);
                if let Some(dir) = log_dir {
                    let body = match &result {
                        Ok(o) => format!(
                            "{}\nc harness: wall_time_secs={:.3}\n",
                            o.log,
                            o.wall_time.as_secs_f64()
                        ),
                        Err(e) => format!("c harness: error: {e}\n"),
                    };
                    let _ = fs::write(dir.join(format!("instance_{i}.log")), body);
                }
                *results[i].lock().unwrap() = Some(result);
            });
        }
    });

    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled every slot"))
        .collect()
}
