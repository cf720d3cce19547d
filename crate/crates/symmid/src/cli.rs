//! Batch driver: construct instances, certify them, compare formula
//! against oracle, expand series, and emit reproducible JSON/CSV reports.
//!
//! Exit codes: `0` all checks passed, `1` a certified check failed (data,
//! not a crash), `2` usage or precondition error. Every report embeds the
//! seed, the full configuration, the library version, and the rank mode,
//! and is byte-identical across reruns of the same command line.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::chains::{
    chain_stability_check, equivariant_hilbert_series, equivariant_poincare_series,
    hilbert_series_unreduced_variant, multiplicity_limit_check, stage_hf_polynomial,
};
use crate::construction::{build_f_alpha, certify_from_invariant, random_alpha, ConstructionError};
use crate::duality::InvariantSubspace;
use crate::exactla::RankMode;
use crate::exec;
use crate::invariants::{betti_formula, betti_oracle, hilbert_function, multiplicity, n_min};
use crate::ratio::rat_to_string;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The acceptance grid exercised by `verify --grid`.
pub const VERIFY_GRID: [(usize, u32, usize); 8] = [
    (3, 2, 1),
    (4, 2, 1),
    (5, 2, 1),
    (3, 2, 2),
    (5, 3, 1),
    (5, 3, 2),
    (5, 3, 3),
    (6, 3, 1),
];

pub const GRID_SEEDS: u64 = 5;

#[derive(Parser)]
#[command(
    name = "symmid",
    version,
    about = "Symmetric ideals of general forms: construction, certification, series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum ModeArg {
    Exact,
    Fast,
}

impl From<ModeArg> for RankMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => RankMode::Exact,
            ModeArg::Fast => RankMode::Fast,
        }
    }
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Number of variables of the ambient polynomial ring
    #[arg(long)]
    n: Option<usize>,
    /// Generator degree
    #[arg(long)]
    d: Option<u32>,
    /// Dimension of the generating space up to symmetry
    #[arg(long)]
    r: Option<usize>,
    /// Seed for all randomness in the run
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Coefficient bound for sampled alpha vectors
    #[arg(long, default_value_t = 100)]
    coeff_bound: i64,
    /// Rank strategy: exact certifies everything; fast accepts two-prime
    /// modular agreement and confirms exactly on disagreement
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample alpha vectors and emit the generator polynomials
    Gen(GenArgs),
    /// Certify an instance (or the whole grid) as general
    Verify(VerifyArgs),
    /// Betti table: closed formula against the Koszul homology oracle
    Betti(BettiArgs),
    /// Equivariant Hilbert and Poincaré series with coefficient checks
    Series(SeriesArgs),
    /// Run one coefficient matrix across a list of ring sizes
    Chain(ChainArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Run the built-in acceptance grid (optionally "n,d,r;n,d,r;...")
    #[arg(long, num_args = 0..=1, default_missing_value = "")]
    grid: Option<String>,
    /// Certify a deliberately degenerate candidate instead of a sampled
    /// one: "power" is the orbit of x_1^d, "invariant" the orbit of the
    /// type-(d) symmetric sum. Both fail the dimension check.
    #[arg(long, value_parser = ["power", "invariant"])]
    degenerate: Option<String>,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Expansion order in the ring-index variable
    #[arg(long, default_value_t = 8)]
    orders: u32,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated ring sizes, ascending
    #[arg(long)]
    n_list: String,
}

/// Serialized run configuration, embedded in every report.
#[derive(Serialize, Clone)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub seed: u64,
    pub coeff_bound: i64,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_list: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<u32>,
}

fn envelope(config: &RunConfig, payload: serde_json::Value) -> serde_json::Value {
    serde_json::json!({
        "tool": "symmid",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "report": payload,
    })
}

fn emit(out: &Option<std::path::PathBuf>, value: &serde_json::Value) -> std::io::Result<()> {
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("serializable")
    );
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn require(opt: Option<usize>, name: &str) -> Result<usize, String> {
    opt.ok_or_else(|| format!("--{name} is required"))
}

/// Entry point shared by the binary and the integration tests.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    exec::configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Betti(args) => cmd_betti(args),
        Command::Series(args) => cmd_series(args),
        Command::Chain(args) => cmd_chain(args),
    }
}

fn config_from(common: &CommonArgs, command: &str) -> RunConfig {
    RunConfig {
        command: command.into(),
        n: common.n,
        d: common.d,
        r: common.r,
        seed: common.seed,
        coeff_bound: common.coeff_bound,
        mode: RankMode::from(common.mode).label().into(),
        grid: None,
        n_list: None,
        orders: None,
    }
}

fn cmd_gen(args: GenArgs) -> i32 {
    let c = &args.common;
    let (n, d, r) = match (|| -> Result<_, String> {
        Ok((
            require(c.n, "n")?,
            require(c.d.map(|d| d as usize), "d")? as u32,
            require(c.r, "r")?,
        ))
    })() {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let config = config_from(c, "gen");
    let alphas = random_alpha(d, r, c.seed, c.coeff_bound);
    let mut generators = Vec::new();
    for alpha in &alphas {
        match build_f_alpha(alpha, d, n) {
            Ok(g) => generators.push(g.to_json()),
            Err(ConstructionError::TooFewVariables { required, n }) => {
                return usage_error(&format!(
                    "construction at d={d} requires n >= {required}, got {n}"
                ));
            }
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    let payload = serde_json::json!({
        "n": n, "d": d, "r": r,
        "alpha": alphas.iter().map(|row| row.iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "generators": generators,
    });
    match emit(&c.out, &envelope(&config, payload)) {
        Ok(()) => EXIT_OK,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn parse_grid(grid_arg: &str) -> Result<Vec<(usize, u32, usize)>, String> {
    if grid_arg.is_empty() {
        return Ok(VERIFY_GRID.to_vec());
    }
    grid_arg
        .split(';')
        .map(|entry| {
            let parts: Vec<&str> = entry.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(format!("bad grid entry {entry:?}, expected n,d,r"));
            }
            let n = parts[0]
                .parse()
                .map_err(|e| format!("bad n in {entry:?}: {e}"))?;
            let d = parts[1]
                .parse()
                .map_err(|e| format!("bad d in {entry:?}: {e}"))?;
            let r = parts[2]
                .parse()
                .map_err(|e| format!("bad r in {entry:?}: {e}"))?;
            Ok((n, d, r))
        })
        .collect()
}

fn cmd_verify(args: VerifyArgs) -> i32 {
    let c = &args.common;
    let mode = RankMode::from(c.mode);
    let mut config = config_from(c, "verify");
    config.grid = args.grid.clone();

    if let Some(kind) = &args.degenerate {
        return cmd_verify_degenerate(c, kind, mode, &config);
    }

    let instances: Vec<(usize, u32, usize, u64)> = match &args.grid {
        Some(spec) => {
            let grid = match parse_grid(spec) {
                Ok(g) => g,
                Err(e) => return usage_error(&e),
            };
            grid.into_iter()
                .flat_map(|(n, d, r)| (0..GRID_SEEDS).map(move |k| (n, d, r, c.seed + k)))
                .collect()
        }
        None => {
            let (n, d, r) = match (|| -> Result<_, String> {
                Ok((
                    require(c.n, "n")?,
                    require(c.d.map(|d| d as usize), "d")? as u32,
                    require(c.r, "r")?,
                ))
            })() {
                Ok(v) => v,
                Err(e) => return usage_error(&e),
            };
            vec![(n, d, r, c.seed)]
        }
    };

    let bound = c.coeff_bound;
    let results: Vec<serde_json::Value> =
        exec::map_collect(exec::ExecMode::Auto, instances, move |(n, d, r, seed)| {
            let alphas = random_alpha(d, r, seed, bound);
            let u = InvariantSubspace::from_alpha_rows(n, d, &alphas);
            let outcome = certify_from_invariant(&u, r, mode);
            let hf = hilbert_function(&outcome.quotient);
            serde_json::json!({
                "n": n, "d": d, "r": r, "seed": seed,
                "passed": outcome.certificate.passed,
                "certificate": outcome.certificate,
                "hilbert_function": hf,
                "multiplicity": multiplicity(&outcome.quotient).to_string(),
            })
        });
    let all_passed = results.iter().all(|v| v["passed"].as_bool() == Some(true));
    let payload = serde_json::json!({
        "certified": all_passed && mode == RankMode::Exact,
        "all_passed": all_passed,
        "instances": results,
    });
    if emit(&c.out, &envelope(&config, payload)).is_err() {
        return usage_error("cannot write output");
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_verify_degenerate(c: &CommonArgs, kind: &str, mode: RankMode, config: &RunConfig) -> i32 {
    use crate::polyring::{m_basis, Monomial, Polynomial};
    let (n, d) = match (|| -> Result<_, String> {
        Ok((require(c.n, "n")?, require(c.d.map(|d| d as usize), "d")? as u32))
    })() {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let form = match kind {
        "power" => {
            let mut exps = vec![0u32; n];
            exps[0] = d;
            Polynomial::monomial(n, false, Monomial::new(exps), crate::ratio::rat(1))
        }
        _ => match m_basis(&crate::partitions::enumerate(d, d as usize).entries.last().unwrap().clone(), n, false) {
            Ok(p) => p,
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    let outcome = match crate::construction::certify_from_forms(&[form], n, mode) {
        Ok(o) => o,
        Err(e) => return usage_error(&e.to_string()),
    };
    let payload = serde_json::json!({
        "certified": false,
        "all_passed": outcome.certificate.passed,
        "degenerate": kind,
        "instances": [{
            "n": n, "d": d, "r": 1, "seed": c.seed,
            "passed": outcome.certificate.passed,
            "certificate": outcome.certificate,
            "hilbert_function": hilbert_function(&outcome.quotient),
        }],
    });
    if emit(&c.out, &envelope(config, payload)).is_err() {
        return usage_error("cannot write output");
    }
    if outcome.certificate.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_betti(args: BettiArgs) -> i32 {
    let c = &args.common;
    let mode = RankMode::from(c.mode);
    let (n, d, r) = match (|| -> Result<_, String> {
        Ok((
            require(c.n, "n")?,
            require(c.d.map(|d| d as usize), "d")? as u32,
            require(c.r, "r")?,
        ))
    })() {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let config = config_from(c, "betti");

    let formula = betti_formula(n, d, r);
    let mut warnings = Vec::new();
    if n < n_min(d, r) {
        warnings.push(format!(
            "n = {n} is below the guaranteed bound {}",
            n_min(d, r)
        ));
    }

    let alphas = random_alpha(d, r, c.seed, c.coeff_bound);
    let u = InvariantSubspace::from_alpha_rows(n, d, &alphas);
    let outcome = certify_from_invariant(&u, r, mode);
    let oracle = betti_oracle(&outcome.quotient);
    let (oracle_json, matches) = match &oracle {
        Ok(table) => (
            serde_json::json!({"beta": betti_entries(table), "text": table.to_text()}),
            Some(table.beta == formula.beta),
        ),
        Err(e) => (serde_json::json!({ "skipped": e.to_string() }), None),
    };

    let payload = serde_json::json!({
        "certificate_passed": outcome.certificate.passed,
        "formula": {"beta": betti_entries(&formula), "text": formula.to_text(),
                    "a": formula.a, "ell": formula.ell, "b": formula.b, "u": formula.u},
        "oracle": oracle_json,
        "formula_equals_oracle": matches,
        "warnings": warnings,
    });
    if emit(&c.out, &envelope(&config, payload)).is_err() {
        return usage_error("cannot write output");
    }
    match matches {
        Some(false) => EXIT_CHECK_FAILED,
        _ => {
            if outcome.certificate.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
    }
}

fn betti_entries(t: &crate::invariants::BettiTable) -> Vec<serde_json::Value> {
    t.beta
        .iter()
        .map(|(&(i, j), &v)| serde_json::json!({"i": i, "j": j, "value": v}))
        .collect()
}

fn cmd_series(args: SeriesArgs) -> i32 {
    let c = &args.common;
    let (d, r) = match (|| -> Result<_, String> {
        Ok((
            require(c.d.map(|d| d as usize), "d")? as u32,
            require(c.r, "r")?,
        ))
    })() {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    if r > crate::partitions::count(d) {
        return usage_error(&format!(
            "r = {r} exceeds P({d}) = {}",
            crate::partitions::count(d)
        ));
    }
    let mut config = config_from(c, "series");
    config.orders = Some(args.orders);

    let orders = args.orders;
    let hilbert = equivariant_hilbert_series(d, r);
    let variant = hilbert_series_unreduced_variant(d, r);
    let series = hilbert.expand([orders, d + 1, 0]);
    let variant_series = variant.expand([orders, d + 1, 0]);

    // CSV: one row per n with the Hilbert coefficients, the Betti column
    // totals, and the normalized multiplicity
    let mut csv = String::from("n,hf,betti_totals,e_over_n_pow\n");
    let mut reduced_matches = true;
    let mut variant_matches = true;
    let start = n_min(d, r);
    for n in start..=orders as usize {
        let expected = stage_hf_polynomial(n, d, r);
        let poly = series.t_polynomial_at_s(n as u32);
        let vpoly = variant_series.t_polynomial_at_s(n as u32);
        for (i, &e) in expected.iter().enumerate() {
            if poly[i] != crate::ratio::rat(e as i64) {
                reduced_matches = false;
            }
            if vpoly[i] != crate::ratio::rat(e as i64) {
                variant_matches = false;
            }
        }
        let table = betti_formula(n, d, r);
        let totals: Vec<String> = (0..=n).map(|i| table.total(i).to_string()).collect();
        let mult = multiplicity_limit_check(d, r, std::iter::once(n));
        csv.push_str(&format!(
            "{},{},{},{}\n",
            n,
            expected
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            totals.join(" "),
            mult.rows[0].ratio,
        ));
    }

    let poincare = equivariant_poincare_series(d, r);
    let payload = serde_json::json!({
        "hilbert_series": hilbert.to_json(),
        "hilbert_series_matches_instances": reduced_matches,
        "unreduced_variant": variant.to_json(),
        "unreduced_variant_matches_instances": variant_matches,
        "poincare_series": poincare.to_json(),
        "csv": csv,
        "compared_n_range": [start, orders],
    });
    if emit(&c.out, &envelope(&config, payload)).is_err() {
        return usage_error("cannot write output");
    }
    if reduced_matches {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_chain(args: ChainArgs) -> i32 {
    let c = &args.common;
    let mode = RankMode::from(c.mode);
    let (d, r) = match (|| -> Result<_, String> {
        Ok((
            require(c.d.map(|d| d as usize), "d")? as u32,
            require(c.r, "r")?,
        ))
    })() {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let n_list: Result<Vec<usize>, _> = args
        .n_list
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect();
    let n_list = match n_list {
        Ok(l) if !l.is_empty() && l.windows(2).all(|w| w[0] < w[1]) => l,
        Ok(_) => return usage_error("--n-list must be nonempty and strictly ascending"),
        Err(e) => return usage_error(&format!("bad --n-list: {e}")),
    };
    let mut config = config_from(c, "chain");
    config.n_list = Some(args.n_list.clone());

    let alphas = random_alpha(d, r, c.seed, c.coeff_bound);
    let chain = chain_stability_check(&alphas, d, r, &n_list, mode);
    let payload = serde_json::json!({
        "chain": chain,
        "all_passed": chain.all_passed(),
        "stage_certificates": chain.stages.iter().map(|s| serde_json::json!({
            "n": s.n, "certificate": s.certificate,
        })).collect::<Vec<_>>(),
    });
    if emit(&c.out, &envelope(&config, payload)).is_err() {
        return usage_error("cannot write output");
    }
    if chain.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
