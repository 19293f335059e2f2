//! Command-line front end.
//!
//! `qlorder <command> --config <file> [--json <out>]` loads a presentation
//! from a strict JSON config, runs one command against it, prints a
//! deterministic human-readable report to stdout, and optionally writes the
//! machine-readable report (canonical section plus wall-clock time) to a
//! file.  Exit codes: `0` all verdicts pass, `1` some verdict failed, `2`
//! parse or construction error, `3` the base group lacks the subgroup
//! ceiling map an order query needs, `4` every column of a truncated
//! operator check was masked.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::base::{HnnPresentation, IntLattice, ValidationState};
use crate::config::{AnyPresentation, Bounds, ConfigFile};
use crate::controlled::{height_map, kernel_checks, Extension};
use crate::error::QlError;
use crate::hnn::{
    enumerate_words, format_general, format_word, group_nf, join_star, leq_star, min_pair, nf,
    parse_gen_word, parse_pos_word, sigma_elements, to_normal_form, token_length, GenToken,
    NormalFormWord, PosToken,
};
use crate::oracle::{
    base_pair_bound_check, confluence_check, min_pair_agreement, order_agreement_suite,
};
use crate::order::{JoinResult, QloGroup};
use crate::report::{Report, TimedReport};
use crate::toeplitz::{
    build_basis, check_covariance, check_hk_invariance, check_matrix_units, toeplitz_op,
};

/// Token-length cap for the operator arguments the covariance command
/// enumerates.
const COVARIANCE_ARG_TOKENS: usize = 3;
/// Stem heights and per-syllable size bound for the matrix-units command.
const MATRIX_UNIT_MAX_HEIGHT: usize = 2;
const MATRIX_UNIT_STEM_BOUND: usize = 3;
/// Stem and element bounds for the level-invariance command.
const HK_MAX_HEIGHT: usize = 2;
const HK_STEM_BOUND: usize = 2;
const HK_ELEM_BOUND: usize = 2;
/// Fixed inputs for the rewrite-order confluence check inside `verify`.
const VERIFY_CONFLUENCE_ORDERS: usize = 10;
const VERIFY_CONFLUENCE_SEED: u64 = 17;
/// Stem per-syllable bound for the level-separation check inside `verify`.
const VERIFY_SEPARATION_STEM_BOUND: usize = 3;
/// Levels of the height map probed by `verify`.
const VERIFY_MAX_LEVEL: usize = 2;

#[derive(Parser)]
#[command(
    name = "qlorder",
    version,
    about = "Exact order computations in quasi-lattice ordered groups and their HNN extensions"
)]
struct Cli {
    /// JSON config describing the presentation and search bounds.
    #[arg(long, global = true, env = "QLORDER_CONFIG", value_name = "FILE")]
    config: Option<PathBuf>,

    /// Also write the machine-readable report to this path.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a word to canonical form.
    ///
    /// Positive words print their normal form; words with inverse letters
    /// print the fully reduced general form.
    Normalize { word: String },

    /// Order queries between positive words.
    Order {
        #[command(subcommand)]
        query: OrderQuery,
    },

    /// Run hypothesis validation and every algorithm-agreement suite.
    Verify,

    /// Finite-truncation checks of the isometric representation.
    Toeplitz {
        #[command(subcommand)]
        check: ToeplitzCheck,
    },
}

#[derive(Subcommand)]
enum OrderQuery {
    /// Decide whether x is below y.
    Le { x: String, y: String },
    /// Least upper bound of x and y, or "infinity" when none exists.
    Join { x: String, y: String },
    /// Minimal positive pair (mu, nu) with x·y⁻¹ = mu·nu⁻¹.
    Minpair { x: String, y: String },
    /// Enumerate the canonical stems of a given height.
    Stems {
        /// Number of stable letters in each stem.
        #[arg(long)]
        height: usize,
        /// Size bound for each syllable.
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum ToeplitzCheck {
    /// Range projections compose like joins on safe columns.
    Covariance,
    /// Stem operators behave like matrix units on safe columns.
    #[command(name = "matrix-units")]
    MatrixUnits,
    /// Height-k subspaces are invariant under stem-conjugated operators.
    Hk,
    /// Print the sparse 0/1 matrix of one truncated operator.
    Export { word: String },
}

/// Run one presentation-generic command body against whichever base-group
/// family the config chose.
macro_rules! with_pres {
    ($any:expr, |$p:ident| $body:expr) => {
        match $any {
            AnyPresentation::Lattice($p) => $body,
            AnyPresentation::Free($p) => $body,
        }
    };
}

/// Parse the process arguments, run the command, print the report, and
/// return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let started = Instant::now();
    let command_name = command_name(&cli.command);
    match execute(&cli) {
        Ok(report) => {
            print_human(&report);
            let code = if report.all_passed() { 0 } else { 1 };
            if let Err(e) = write_json(&cli.json, report, started) {
                eprintln!("error: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            let (outcome, code) = error_outcome(&e);
            let mut report = Report::new(command_name, "");
            report.outcome = outcome.into();
            report.results.push(format!("error: {e}"));
            if let Err(w) = write_json(&cli.json, report, started) {
                eprintln!("error: {w}");
                return 2;
            }
            code
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Normalize { .. } => "normalize",
        Command::Order { query } => match query {
            OrderQuery::Le { .. } => "order le",
            OrderQuery::Join { .. } => "order join",
            OrderQuery::Minpair { .. } => "order minpair",
            OrderQuery::Stems { .. } => "order stems",
        },
        Command::Verify => "verify",
        Command::Toeplitz { check } => match check {
            ToeplitzCheck::Covariance => "toeplitz covariance",
            ToeplitzCheck::MatrixUnits => "toeplitz matrix-units",
            ToeplitzCheck::Hk => "toeplitz hk",
            ToeplitzCheck::Export { .. } => "toeplitz export",
        },
    }
}

fn error_outcome(e: &QlError) -> (&'static str, i32) {
    match e {
        QlError::CeilingUnsupported => ("unsupported", 3),
        QlError::InsufficientTruncation => ("insufficient_truncation", 4),
        _ => ("error", 2),
    }
}

/// Human output is best-effort: a reader that stops early (`qlorder … |
/// head`) closes the pipe, and that must not turn a successful run into a
/// panic.  The exit code and the `--json` report are the reliable channels.
fn print_human(report: &Report) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut emit = |line: &str| {
        let _ = writeln!(out, "{line}");
    };
    emit(&format!("presentation: {}", report.presentation));
    for line in &report.results {
        emit(line);
    }
    for check in &report.checks {
        emit(&check.line());
    }
    emit(&format!("outcome: {}", report.outcome));
}

fn write_json(
    path: &Option<PathBuf>,
    report: Report,
    started: Instant,
) -> Result<(), QlError> {
    let Some(path) = path else { return Ok(()) };
    let timed = TimedReport {
        canonical: report,
        elapsed_ms: started.elapsed().as_millis(),
    };
    let text =
        serde_json::to_string_pretty(&timed).expect("report serialization cannot fail");
    std::fs::write(path, text + "\n").map_err(QlError::Io)
}

fn execute(cli: &Cli) -> Result<Report, QlError> {
    let config_path = cli.config.as_ref().ok_or_else(|| {
        QlError::Parse("no config file: pass --config or set QLORDER_CONFIG".into())
    })?;
    let cfg = ConfigFile::from_path(config_path)?;
    let any = cfg.build()?;
    let bounds = &cfg.bounds;
    match &cli.command {
        Command::Normalize { word } => with_pres!(&any, |p| cmd_normalize(p, word)),
        Command::Order { query } => with_pres!(&any, |p| cmd_order(p, query)),
        Command::Verify => with_pres!(&any, |p| cmd_verify(p, bounds)),
        Command::Toeplitz { check } => with_pres!(&any, |p| cmd_toeplitz(p, bounds, check)),
    }
}

/// Parse a positive word and rewrite it to normal form.
fn parse_nf<G: QloGroup>(
    pres: &HnnPresentation<G>,
    text: &str,
) -> Result<NormalFormWord<G::Elem>, QlError> {
    let tokens = parse_pos_word(pres.base(), text)?;
    nf(pres, &tokens)
}

fn cmd_normalize<G: QloGroup>(
    pres: &HnnPresentation<G>,
    text: &str,
) -> Result<Report, QlError> {
    let g = pres.base();
    let tokens = parse_gen_word(g, text)?;
    let all_positive = tokens.iter().all(|t| match t {
        GenToken::T => true,
        GenToken::TInv => false,
        GenToken::Elem(e) => g.is_positive(e),
    });
    let mut report = Report::new("normalize", pres.name());
    report.results.push(format!("input: {text}"));

    let positive_form = if all_positive {
        let pos: Vec<PosToken<G::Elem>> = tokens
            .iter()
            .map(|t| match t {
                GenToken::T => PosToken::T,
                GenToken::Elem(e) => PosToken::Elem(e.clone()),
                GenToken::TInv => unreachable!("filtered above"),
            })
            .collect();
        Some(nf(pres, &pos)?)
    } else {
        let reduced = group_nf(pres, &tokens);
        let as_nf = to_normal_form(pres, &reduced);
        if as_nf.is_none() {
            report.results.push(format!("reduced: {}", format_general(g, &reduced)));
            report.results.push("positive: no".into());
        }
        as_nf
    };
    if let Some(w) = positive_form {
        report.results.push(format!("normal_form: {}", format_word(g, &w)));
        report.results.push(format!("height: {}", w.height()));
        report.results.push(format!("tokens: {}", token_length(g, &w)));
    }
    Ok(report)
}

fn cmd_order<G: QloGroup>(
    pres: &HnnPresentation<G>,
    query: &OrderQuery,
) -> Result<Report, QlError> {
    let g = pres.base();
    match query {
        OrderQuery::Le { x, y } => {
            let xw = parse_nf(pres, x)?;
            let yw = parse_nf(pres, y)?;
            let mut report = Report::new("order le", pres.name());
            report.results.push(format!("x: {}", format_word(g, &xw)));
            report.results.push(format!("y: {}", format_word(g, &yw)));
            report
                .results
                .push(format!("le: {}", leq_star(pres, &xw, &yw)?));
            Ok(report)
        }
        OrderQuery::Join { x, y } => {
            let xw = parse_nf(pres, x)?;
            let yw = parse_nf(pres, y)?;
            let mut report = Report::new("order join", pres.name());
            report.results.push(format!("x: {}", format_word(g, &xw)));
            report.results.push(format!("y: {}", format_word(g, &yw)));
            match join_star(pres, &xw, &yw)? {
                JoinResult::Finite(z) => {
                    report.results.push(format!("join: {}", format_word(g, &z)));
                    report.results.push(format!("height: {}", z.height()));
                }
                JoinResult::Infinity => report.results.push("join: infinity".into()),
            }
            Ok(report)
        }
        OrderQuery::Minpair { x, y } => {
            let xw = parse_nf(pres, x)?;
            let yw = parse_nf(pres, y)?;
            let mut report = Report::new("order minpair", pres.name());
            report.results.push(format!("x: {}", format_word(g, &xw)));
            report.results.push(format!("y: {}", format_word(g, &yw)));
            let pair = min_pair(pres, &xw, &yw);
            report.results.push(format!("mu: {}", format_word(g, &pair.mu)));
            report.results.push(format!("nu: {}", format_word(g, &pair.nu)));
            Ok(report)
        }
        OrderQuery::Stems { height, bound } => {
            let mut report = Report::new("order stems", pres.name());
            report.results.push(format!("height: {height}"));
            report.results.push(format!("bound: {bound}"));
            let stems = sigma_elements(pres, *height, *bound);
            report.results.push(format!("count: {}", stems.len()));
            for s in &stems {
                report
                    .results
                    .push(format!("stem: {}", format_word(g, s.word())));
            }
            Ok(report)
        }
    }
}

fn cmd_verify<G: QloGroup>(
    pres: &HnnPresentation<G>,
    bounds: &Bounds,
) -> Result<Report, QlError> {
    let mut report = Report::new("verify", pres.name());
    report.results.push(match pres.validation() {
        ValidationState::Validated(r) => {
            format!("constructed: validated at bound {}", r.bound)
        }
        ValidationState::Unvalidated => "constructed: unvalidated".into(),
    });

    let hypotheses = pres.validate(bounds.validate_bound);
    for check in hypotheses.checks() {
        report.push_check(check);
    }
    if !hypotheses.passed() {
        report
            .results
            .push("algorithm suites skipped: hypotheses failed".into());
        return Ok(report);
    }

    report.push_check(confluence_check(
        pres,
        bounds.enum_bound.min(5),
        VERIFY_CONFLUENCE_ORDERS,
        VERIFY_CONFLUENCE_SEED,
    )?);
    for check in order_agreement_suite(pres, bounds.enum_bound, bounds.enum_bound + 2)? {
        report.push_check(check);
    }
    for check in min_pair_agreement(
        pres,
        bounds.enum_bound.saturating_sub(1),
        bounds.enum_bound + 1,
    )? {
        report.push_check(check);
    }
    report.push_check(base_pair_bound_check(
        pres,
        bounds.enum_bound + 1,
        bounds.enum_bound + 1,
    )?);

    let ext = Extension::new(pres);
    let integers = IntLattice::new(1)?;
    let candidate = height_map(&ext, &integers);
    report.push_check(candidate.check_join_preservation(bounds.enum_bound)?);
    for k in 0..=VERIFY_MAX_LEVEL {
        let level = vec![k as i64];
        report.push_check(candidate.check_level_cover(&level, bounds.enum_bound)?);
        report.push_check(candidate.check_level_separation(
            &level,
            VERIFY_SEPARATION_STEM_BOUND,
            bounds.enum_bound,
        )?);
    }
    for check in kernel_checks(pres, bounds.enum_bound)? {
        report.push_check(check);
    }
    Ok(report)
}

fn cmd_toeplitz<G: QloGroup>(
    pres: &HnnPresentation<G>,
    bounds: &Bounds,
    which: &ToeplitzCheck,
) -> Result<Report, QlError> {
    let g = pres.base();
    let basis = build_basis(pres, bounds.truncation);
    let mut report = Report::new(
        match which {
            ToeplitzCheck::Covariance => "toeplitz covariance",
            ToeplitzCheck::MatrixUnits => "toeplitz matrix-units",
            ToeplitzCheck::Hk => "toeplitz hk",
            ToeplitzCheck::Export { .. } => "toeplitz export",
        },
        pres.name(),
    );
    report.results.push(format!("truncation: {}", bounds.truncation));
    report.results.push(format!("basis_size: {}", basis.len()));
    match which {
        ToeplitzCheck::Covariance => {
            let args = enumerate_words(pres, COVARIANCE_ARG_TOKENS.min(bounds.truncation));
            for p in &args {
                for q in &args {
                    report.push_check(check_covariance(pres, &basis, p, q)?);
                }
            }
        }
        ToeplitzCheck::MatrixUnits => {
            for k in 0..=MATRIX_UNIT_MAX_HEIGHT {
                report.push_check(check_matrix_units(
                    pres,
                    &basis,
                    k,
                    MATRIX_UNIT_STEM_BOUND,
                )?);
            }
        }
        ToeplitzCheck::Hk => {
            for k in 0..=HK_MAX_HEIGHT {
                report.push_check(check_hk_invariance(
                    pres,
                    &basis,
                    k,
                    HK_STEM_BOUND,
                    HK_ELEM_BOUND,
                )?);
            }
        }
        ToeplitzCheck::Export { word } => {
            let w = parse_nf(pres, word)?;
            let op = toeplitz_op(pres, &basis, &w);
            report.results.push(format!("word: {}", format_word(g, &w)));
            report.results.push(format!("safe_columns: {}", op.safe_count()));
            for line in op.export_triplets().lines() {
                report.results.push(line.to_string());
            }
        }
    }
    Ok(report)
}
