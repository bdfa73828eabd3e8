//! Command-line front end. Human-readable results go to standard output,
//! the resolved configuration to standard error, and `--output FILE`
//! writes a JSON report.
//!
//! Exit codes: 0 success (or an inconclusive equivalence test), 1 a
//! computed count disagrees with its reference, 2 usage or validation
//! error, 3 states proven locally inequivalent, 4 size or resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use luinv_core::analysis::{
    self, charpoly_identities, dimension_of_degree, generator_completeness, local_equiv_test,
    DimensionOptions, EquivalenceOptions, Verdict,
};
use luinv_core::invariant::{eval_invariant, observable_means, Contract};
use luinv_core::reduce::{
    all_tuple_class_count, reduction_counts, ReductionOptions, TWO_QUBIT_REDUCTION_TABLE,
};
use luinv_core::sample::{random_density, random_local_unitary, random_rational_projector};
use luinv_core::symbolic::expand_symbolic;
use luinv_core::tree::{catalan, enumerate_trees};
use luinv_core::{DensityOperator, InvariantId, Role, Scalar};
use serde_json::{json, Value};

use crate::state_file::{ScalarKind, StateFile, StateFileError};

/// Environment variable fixing the worker thread count.
pub const THREADS_ENV: &str = "LUINV_THREADS";

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INEQUIVALENT: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "luinv",
    version,
    about = "Local-unitary polynomial invariants of qubit density operators"
)]
pub struct Cli {
    /// Write a machine-readable JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the ordered binary trees on k nodes and their permutations.
    Trees {
        #[arg(long)]
        k: usize,
        /// Print only the number of trees.
        #[arg(long)]
        count_only: bool,
        /// Draw each tree as an indented outline.
        #[arg(long)]
        draw: bool,
    },
    /// Count the tuples to consider at degree k after each reduction step.
    Reduce {
        #[arg(long)]
        k: usize,
        /// Number of qubits N.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Evaluate one invariant at a state.
    Eval {
        #[command(flatten)]
        state: StateArgs,
        /// Permutations in cycle notation joined by ';', e.g. "(1 2 3);(1 2)".
        #[arg(long)]
        perms: String,
        /// Degree k, when larger than the largest moved point.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Expand an invariant of N qubits as a polynomial in the matrix entries.
    Expand {
        #[arg(long)]
        perms: String,
        #[arg(long)]
        k: Option<usize>,
        /// Write the polynomial as text to this file.
        #[arg(long, value_name = "FILE")]
        poly: Option<PathBuf>,
    },
    /// Estimate the dimension of the degree-k invariants of two qubits.
    Dims {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
        /// Skip the rerun with doubled samples.
        #[arg(long)]
        no_stability_check: bool,
        #[arg(long)]
        long_running: bool,
        /// Also compute the exact rank modulo 2^61-1 at rational states.
        #[arg(long)]
        exact: bool,
    },
    /// Rank of all degree-k monomials in the 21 generating invariants.
    Complete {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check the characteristic-polynomial identities at a two-qubit state.
    Charpoly {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Compare two states invariant by invariant.
    Equiv {
        a: String,
        b: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Relative tolerance for float comparisons.
        #[arg(long, default_value_t = analysis::EQUIVALENCE_TOLERANCE)]
        tolerance: f64,
        #[arg(long)]
        long_running: bool,
        #[arg(long)]
        projector: bool,
        #[arg(long)]
        raw: bool,
    },
    /// Write a random state (or exact projector) file.
    Sample {
        /// Subsystem dimensions, e.g. 2,2.
        #[arg(long, value_delimiter = ',', default_value = "2,2")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write an exact rational projector of this rank instead.
        #[arg(long)]
        projector_rank: Option<usize>,
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
    /// Apply a random local unitary to a qubit state and write the result.
    Conjugate {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// State file, or `rho1` / `rho2` for the bundled reference states.
    #[arg(long)]
    pub state: String,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Validate as a projector (P² = P) instead of a unit-trace state.
    #[arg(long, conflicts_with = "raw")]
    pub projector: bool,
    /// Skip validation.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Permit k = 8 (several minutes).
    #[arg(long)]
    pub long_running: bool,
    /// Abort after this many conjugation steps.
    #[arg(long)]
    pub max_steps: Option<u64>,
}

#[derive(Debug, Args)]
pub struct Sampling {
    /// Number of random states (default d_k + 50).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact when the file stores rationals, float otherwise.
    Auto,
    Float,
    Rational,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] luinv_core::Error),
    #[error(transparent)]
    StateFile(#[from] StateFileError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use luinv_core::Error as E;
        match self {
            CliError::Core(E::Size { .. } | E::Resource { .. })
            | CliError::StateFile(StateFileError::Core(E::Size { .. } | E::Resource { .. })) => {
                EXIT_RESOURCE
            }
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced: text for standard output, a JSON report and
/// an exit code.
pub struct Outcome {
    pub text: String,
    pub report: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String, report: Value) -> Self {
        Self {
            text,
            report,
            code: EXIT_OK,
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    configure_threads(err);
    let _ = writeln!(err, "luinv: config {}", resolved_config(&cli));
    match execute(&cli.command) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if let Some(path) = &cli.output {
                let mut body =
                    serde_json::to_string_pretty(&outcome.report).expect("report serializes");
                body.push('\n');
                if let Err(source) = std::fs::write(path, body) {
                    let e = CliError::Io {
                        path: path.display().to_string(),
                        source,
                    };
                    let _ = writeln!(err, "luinv: error: {e}");
                    return EXIT_USAGE;
                }
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "luinv: error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads(err: &mut dyn Write) {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            // Fails only if a pool already exists (repeated in-process runs).
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        _ => {
            let _ = writeln!(err, "luinv: warning: ignoring {THREADS_ENV}={value:?}");
        }
    }
}

fn resolved_config(cli: &Cli) -> Value {
    let threads = rayon::current_num_threads();
    let output = cli.output.as_ref().map(|p| p.display().to_string());
    let cmd = match &cli.command {
        Command::Trees {
            k,
            count_only,
            draw,
        } => {
            json!({"command": "trees", "k": k, "count_only": count_only, "draw": draw})
        }
        Command::Reduce { k, n, budget } => json!({
            "command": "reduce", "k": k, "n": n,
            "long_running": budget.long_running, "max_steps": budget.max_steps,
        }),
        Command::Eval { state, perms, k } => json!({
            "command": "eval", "state": state.state, "mode": mode_name(state.mode),
            "role": role_name(role_of(state.projector, state.raw)), "perms": perms, "k": k,
        }),
        Command::Expand { perms, k, poly } => json!({
            "command": "expand", "perms": perms, "k": k,
            "poly": poly.as_ref().map(|p| p.display().to_string()),
        }),
        Command::Dims {
            k,
            sampling,
            no_stability_check,
            long_running,
            exact,
        } => json!({
            "command": "dims", "k": k, "samples": sampling.samples, "seed": sampling.seed,
            "stability_check": !no_stability_check, "long_running": long_running, "exact": exact,
            "rank_tolerance": analysis::RANK_TOLERANCE,
        }),
        Command::Complete { k, sampling } => json!({
            "command": "complete", "k": k, "samples": sampling.samples, "seed": sampling.seed,
            "rank_tolerance": analysis::RANK_TOLERANCE,
        }),
        Command::Charpoly { state } => json!({
            "command": "charpoly", "state": state.state, "mode": mode_name(state.mode),
        }),
        Command::Equiv {
            a,
            b,
            max_degree,
            mode,
            tolerance,
            long_running,
            projector,
            raw,
        } => json!({
            "command": "equiv", "a": a, "b": b, "max_degree": max_degree, "mode": mode_name(*mode),
            "tolerance": tolerance, "long_running": long_running,
            "role": role_name(role_of(*projector, *raw)),
        }),
        Command::Sample {
            dims,
            seed,
            projector_rank,
            file,
        } => json!({
            "command": "sample", "dims": dims, "seed": seed, "projector_rank": projector_rank,
            "file": file.display().to_string(),
        }),
        Command::Conjugate { state, seed, file } => json!({
            "command": "conjugate", "state": state.state, "seed": seed,
            "file": file.display().to_string(),
        }),
    };
    json!({"threads": threads, "output": output, "run": cmd})
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Auto => "auto",
        Mode::Float => "float",
        Mode::Rational => "rational",
    }
}

fn role_of(projector: bool, raw: bool) -> Role {
    if raw {
        Role::Raw
    } else if projector {
        Role::Projector
    } else {
        Role::State
    }
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::State => "state",
        Role::Projector => "projector",
        Role::Raw => "raw",
    }
}

/// A loaded operator in the arithmetic the run uses.
enum Loaded {
    Float(DensityOperator<num_complex::Complex64>),
    Exact(DensityOperator<luinv_core::GaussianRational>),
}

fn load(spec: &str, mode: Mode, role: Role) -> CliResult<Loaded> {
    let file = StateFile::load(spec)?;
    let exact = match mode {
        Mode::Auto => file.scalar == ScalarKind::Rational,
        Mode::Float => false,
        Mode::Rational => true,
    };
    Ok(if exact {
        Loaded::Exact(file.to_exact(role)?)
    } else {
        Loaded::Float(file.to_float(role)?)
    })
}

fn value_json<S: Scalar>(v: &S) -> Value {
    let z = v.to_c64();
    json!({"text": v.to_text(), "re": z.re, "im": z.im})
}

fn execute(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Trees {
            k,
            count_only,
            draw,
        } => cmd_trees(*k, *count_only, *draw),
        Command::Reduce { k, n, budget } => cmd_reduce(*k, *n, budget),
        Command::Eval { state, perms, k } => {
            let id = parse_id(perms, *k)?;
            match load(
                &state.state,
                state.mode,
                role_of(state.projector, state.raw),
            )? {
                Loaded::Float(rho) => cmd_eval(&id, &rho),
                Loaded::Exact(rho) => cmd_eval(&id, &rho),
            }
        }
        Command::Expand { perms, k, poly } => cmd_expand(&parse_id(perms, *k)?, poly.as_deref()),
        Command::Dims {
            k,
            sampling,
            no_stability_check,
            long_running,
            exact,
        } => {
            let opts = DimensionOptions {
                samples: sampling.samples,
                seed: sampling.seed,
                check_stability: !no_stability_check,
                allow_long_running: *long_running,
                exact: *exact,
            };
            cmd_dims(*k, opts)
        }
        Command::Complete { k, sampling } => cmd_complete(*k, sampling),
        Command::Charpoly { state } => match load(
            &state.state,
            state.mode,
            role_of(state.projector, state.raw),
        )? {
            Loaded::Float(rho) => cmd_charpoly(&rho),
            Loaded::Exact(rho) => cmd_charpoly(&rho),
        },
        Command::Equiv {
            a,
            b,
            max_degree,
            mode,
            tolerance,
            long_running,
            projector,
            raw,
        } => {
            let role = role_of(*projector, *raw);
            let opts = EquivalenceOptions {
                max_degree: *max_degree,
                tolerance: *tolerance,
                allow_long_running: *long_running,
            };
            let (la, lb) = (load(a, *mode, role)?, load(b, *mode, role)?);
            match (la, lb) {
                (Loaded::Exact(x), Loaded::Exact(y)) => cmd_equiv(&x, &y, opts),
                (Loaded::Float(x), Loaded::Float(y)) => cmd_equiv(&x, &y, opts),
                (Loaded::Exact(x), Loaded::Float(y)) => cmd_equiv(&x.to_float(), &y, opts),
                (Loaded::Float(x), Loaded::Exact(y)) => cmd_equiv(&x, &y.to_float(), opts),
            }
        }
        Command::Sample {
            dims,
            seed,
            projector_rank,
            file,
        } => cmd_sample(dims, *seed, *projector_rank, file),
        Command::Conjugate { state, seed, file } => {
            let rho = match load(
                &state.state,
                Mode::Float,
                role_of(state.projector, state.raw),
            )? {
                Loaded::Float(r) => r,
                Loaded::Exact(r) => r.to_float(),
            };
            let moved = rho.conjugate_local(&random_local_unitary(rho.parties(), *seed))?;
            write_state(&StateFile::from_float(&moved), file)
        }
    }
}

fn parse_id(perms: &str, k: Option<usize>) -> CliResult<InvariantId> {
    Ok(InvariantId::new(luinv_core::PermTuple::parse(perms, k)?))
}

fn cmd_trees(k: usize, count_only: bool, draw: bool) -> CliResult<Outcome> {
    let trees = enumerate_trees(k)?;
    let mut text = format!("# ordered binary trees with k={k} nodes: {}\n", trees.len());
    let mut listing = Vec::new();
    if !count_only {
        for (i, t) in trees.iter().enumerate() {
            let perm = t.to_permutation();
            text.push_str(&format!("{:>5}  {}\n", i + 1, perm));
            if draw {
                for line in t.render().lines() {
                    text.push_str(&format!("         {line}\n"));
                }
            }
            listing
                .push(json!({"index": i + 1, "permutation": perm.to_string(), "tree": t.render()}));
        }
    }
    let report = json!({
        "command": "trees", "k": k, "count": trees.len(),
        "catalan": catalan(k as u64), "trees": listing,
    });
    Ok(Outcome::ok(text, report))
}

fn cmd_reduce(k: usize, n: usize, budget: &Budget) -> CliResult<Outcome> {
    let opts = ReductionOptions {
        allow_long_running: budget.long_running,
        max_steps: budget.max_steps,
    };
    let counts = reduction_counts(k, n, opts)?;
    let row = counts.as_array();
    let burnside = all_tuple_class_count(k, n);
    let mut text = format!(
        "# k={k} N={n}: tuples tree-tuples classes transitive-tuples transitive-classes unmeltable\n{}\n",
        row.iter().map(u128::to_string).collect::<Vec<_>>().join(" ")
    );
    text.push_str(&format!(
        "# classes of all N-tuples (Burnside): {burnside}\n"
    ));
    let reference = (n == 2)
        .then(|| TWO_QUBIT_REDUCTION_TABLE.get(k.wrapping_sub(1)))
        .flatten();
    let mut code = EXIT_OK;
    let matches = reference.map(|r| r.iter().zip(row).all(|(&a, b)| a as u128 == b));
    match matches {
        Some(true) => text.push_str("# matches the reference row\n"),
        Some(false) => {
            text.push_str(&format!(
                "# MISMATCH with reference row {:?}\n",
                reference.unwrap()
            ));
            code = EXIT_MISMATCH;
        }
        None => {}
    }
    let report = json!({
        "command": "reduce", "k": k, "n": n,
        "columns": row.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "burnside_all_tuple_classes": burnside.to_string(),
        "reference": reference, "matches_reference": matches,
    });
    Ok(Outcome { text, report, code })
}

fn cmd_eval<S: Contract>(id: &InvariantId, rho: &DensityOperator<S>) -> CliResult<Outcome> {
    let f = eval_invariant(id, rho)?;
    let (m1, m2) = observable_means(id, rho)?;
    let text = format!(
        "{id} = {}\n<M1> = {}\n<M2> = {}\n",
        f.to_text(),
        m1.to_text(),
        m2.to_text()
    );
    let report = json!({
        "command": "eval", "tuple": id.tuple().to_string(), "degree": id.degree(),
        "mode": if S::EXACT { "rational" } else { "float" },
        "value": value_json(&f), "m1": value_json(&m1), "m2": value_json(&m2),
    });
    Ok(Outcome::ok(text, report))
}

fn cmd_expand(id: &InvariantId, poly: Option<&Path>) -> CliResult<Outcome> {
    let p = expand_symbolic(id)?;
    if let Some(path) = poly {
        std::fs::write(path, p.to_text()).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    let text = format!(
        "{id}: degree {}, {} terms, coefficient sum {}\n",
        p.degree(),
        p.term_count(),
        p.coefficient_sum()
    );
    let report = json!({
        "command": "expand", "tuple": id.tuple().to_string(), "degree": p.degree(),
        "terms": p.term_count(), "coefficient_sum": p.coefficient_sum(),
    });
    Ok(Outcome::ok(text, report))
}

fn cmd_dims(k: usize, opts: DimensionOptions) -> CliResult<Outcome> {
    let r = dimension_of_degree(k, opts)?;
    let mut text = format!(
        "d_{k} = {}  (reference {}, {} candidates, {} samples, seed {})\n# {}\n",
        r.rank.rank,
        r.expected.map_or("none".into(), |d| d.to_string()),
        r.candidates,
        r.samples,
        opts.seed,
        analysis::describe_rank(&r.rank)
    );
    if let Some(d) = r.doubled_rank {
        text.push_str(&format!("# rank with {} samples: {d}\n", 2 * r.samples));
    }
    if let Some(d) = r.exact_rank {
        text.push_str(&format!("# exact rank mod 2^61-1: {d}\n"));
    }
    let code = if r.expected.is_some() && !r.matches_reference() {
        text.push_str("# MISMATCH with reference\n");
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    if !r.is_stable() {
        text.push_str("# warning: rank changed when doubling the samples\n");
    }
    let report = json!({
        "command": "dims", "k": k, "rank": r.rank.rank, "expected": r.expected,
        "candidates": r.candidates, "samples": r.samples, "seed": opts.seed,
        "doubled_rank": r.doubled_rank, "stable": r.is_stable(), "exact_rank": r.exact_rank,
        "smallest_kept_sv": r.rank.smallest_kept, "largest_dropped_sv": r.rank.largest_dropped,
    });
    Ok(Outcome { text, report, code })
}

fn cmd_complete(k: usize, s: &Sampling) -> CliResult<Outcome> {
    let r = generator_completeness(k, s.samples, s.seed)?;
    let text = format!(
        "degree {k}: expected {}, achieved {}  ({} monomials, {} samples)\n# exact rank mod 2^61-1: {}\n# numerical rank: {}, {}\n",
        r.expected,
        r.exact_rank,
        r.monomials,
        r.samples,
        r.exact_rank,
        r.rank.rank,
        analysis::describe_rank(&r.rank)
    );
    let report = json!({
        "command": "complete", "k": k, "expected": r.expected, "achieved": r.exact_rank,
        "numerical_rank": r.rank.rank,
        "monomials": r.monomials, "samples": r.samples, "seed": s.seed,
        "smallest_kept_sv": r.rank.smallest_kept, "largest_dropped_sv": r.rank.largest_dropped,
    });
    let code = if r.is_complete() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok(Outcome { text, report, code })
}

fn cmd_charpoly<S: Contract>(rho: &DensityOperator<S>) -> CliResult<Outcome> {
    let r = charpoly_identities(rho)?;
    let mut text = String::new();
    for c in &r.checks {
        text.push_str(&format!(
            "{:<36} {}  vs  {}\n",
            c.name,
            c.lhs.to_text(),
            c.rhs.to_text()
        ));
    }
    text.push_str(&format!(
        "# max deviation {:e}{}\n",
        r.max_deviation,
        if r.exact { " (exact equality)" } else { "" }
    ));
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "lhs": value_json(&c.lhs), "rhs": value_json(&c.rhs)}))
        .collect();
    let report = json!({
        "command": "charpoly", "mode": if S::EXACT { "rational" } else { "float" },
        "max_deviation": r.max_deviation, "exact": r.exact, "checks": checks,
    });
    Ok(Outcome::ok(text, report))
}

fn cmd_equiv<S: Contract>(
    a: &DensityOperator<S>,
    b: &DensityOperator<S>,
    opts: EquivalenceOptions,
) -> CliResult<Outcome> {
    let r = local_equiv_test(a, b, opts)?;
    let (witness, va, vb) = match &r.verdict {
        Verdict::Inequivalent {
            witness,
            value_a,
            value_b,
        } => (
            Some(witness.tuple().to_string()),
            Some(value_json(value_a)),
            Some(value_json(value_b)),
        ),
        Verdict::InconclusiveUpToDegree(_) => (None, None, None),
    };
    let report = json!({
        "command": "equiv", "verdict": r.verdict.to_string(), "witness": witness,
        "witness_degree": r.verdict.is_inequivalent().then_some(r.degrees_checked),
        "value_a": va, "value_b": vb, "degrees_checked": r.degrees_checked,
        "invariants_checked": r.invariants_checked,
        "mode": if r.exact { "exact" } else { "float" },
        "tolerance": if r.exact { Value::Null } else { json!(r.tolerance) },
    });
    let code = if r.verdict.is_inequivalent() {
        EXIT_INEQUIVALENT
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        text: r.to_string(),
        report,
        code,
    })
}

fn cmd_sample(dims: &[usize], seed: u64, rank: Option<usize>, file: &Path) -> CliResult<Outcome> {
    let state = match rank {
        Some(r) => StateFile::from_exact(&random_rational_projector(dims, r, seed)?),
        None => StateFile::from_float(&random_density(dims, seed)?),
    };
    write_state(&state, file)
}

fn write_state(state: &StateFile, file: &Path) -> CliResult<Outcome> {
    state.write(file)?;
    let text = format!("wrote {}\n", file.display());
    let report = json!({"written": file.display().to_string(), "dims": state.dims});
    Ok(Outcome::ok(text, report))
}
