//! Command implementations behind the `coinscale` binary.
//!
//! Every command renders into a [`CmdOutput`] instead of printing, so tests
//! can drive the same code path as the binary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coinscale_core::analytic::lincomb_count;
use coinscale_core::combinatorics::choose;
use coinscale_core::sensitivity::sensitivity_result;
use coinscale_core::strategies::{
    augmented_sweep, gen_divisibility, gen_indiscreet_piles, gen_linear_combination, gen_shapovalov_for,
    gen_three_family, gen_three_family_augmented, search_lincomb, solve_solution_vectors, Family, LinCombConfig,
    SearchLimits, SolutionVector,
};
use coinscale_core::verifier::{best_order, subset_table, DEFAULT_ORACLE_CAP};
use coinscale_core::{oracle_admissible_count, verify, AdmissibleReport, Ratio, Strategy};

pub const EXIT_PROVEN: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_PROVEN: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "coinscale",
    version,
    about = "Verify, generate and search fake-coin proof strategies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a strategy file. Exit 0 when proven, 2 when not, 1 on error.
    Verify(VerifyArgs),
    /// Admissible counts for every subset of a strategy's weighings.
    Table(TableArgs),
    /// Build a strategy from one of the known families.
    Generate(GenerateArgs),
    /// Rank linear-combination configurations by admissible count.
    Search(SearchArgs),
    /// Average sensitivity of MOD*_m over ranges of n and m.
    Sensitivity(SensitivityArgs),
    /// List solution vectors of sum c_i x_i = target with x_i <= g_i.
    Solve(SolveArgs),
    /// Base vs augmented three-family success over small parameters.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
    /// Cross-check counts against coin-level enumeration.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, env = "COINSCALE_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
    /// Append the greedy weighing order.
    #[arg(long)]
    pub best_order: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Shapovalov,
    Divisibility,
    Indiscreet,
    ThreeFamily,
    ThreeFamilyAugmented,
    Lincomb,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub f: usize,
    #[arg(long)]
    pub d: usize,
    /// Pile count for divisibility and indiscreet.
    #[arg(long)]
    pub a: Option<usize>,
    /// Fake-holding family for the three-family strategies.
    #[arg(long, default_value = "A")]
    pub placement_family: Family,
    /// Group multiplicities for lincomb.
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<usize>,
    /// Pile sizes for lincomb.
    #[arg(long, value_delimiter = ',')]
    pub g: Vec<usize>,
    /// Fakes per pile in each lincomb group; defaults to the first solution vector.
    #[arg(long, value_delimiter = ',')]
    pub placement: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Verify the generated strategy and use the verify exit code.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub f: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 3)]
    pub max_groups: usize,
    #[arg(long)]
    pub max_multiplicity: Option<usize>,
    #[arg(long)]
    pub max_pile: Option<usize>,
    #[arg(long, default_value_t = 120)]
    pub max_t: usize,
    #[arg(long, default_value_t = 5_000_000)]
    pub max_configs: usize,
    /// Rows shown.
    #[arg(long, default_value_t = 10)]
    pub top: usize,
    /// Write the best configuration as a strategy file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    /// A value or an inclusive range such as `16-64`.
    #[arg(long, default_value = "1-16")]
    pub n: String,
    #[arg(long, default_value = "2-6")]
    pub m: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub c: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<usize>,
    #[arg(long)]
    pub target: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 20)]
    pub max_t: usize,
    #[arg(long, default_value_t = 8)]
    pub max_d: usize,
    #[arg(long)]
    pub json: bool,
}

/// Settings shared by the commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub oracle_cap: u64,
    pub limits: SearchLimits,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            oracle_cap: DEFAULT_ORACLE_CAP,
            limits: SearchLimits::default(),
            json: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            code: EXIT_PROVEN,
        }
    }
}

pub fn run(cli: Cli) -> Result<CmdOutput> {
    match cli.command {
        Command::Verify(a) => {
            let config = RunConfig {
                oracle_cap: a.oracle_cap,
                json: a.json,
                ..RunConfig::default()
            };
            cmd_verify(&a.file, a.oracle, &config)
        }
        Command::Table(a) => cmd_table(&a.file, a.best_order, a.json),
        Command::Generate(a) => cmd_generate(&a),
        Command::Search(a) => cmd_search(&a),
        Command::Sensitivity(a) => cmd_sensitivity(&parse_range(&a.n)?, &parse_range(&a.m)?, a.json),
        Command::Solve(a) => cmd_solve(&a.c, &a.g, a.target, a.json),
        Command::Sweep(a) => cmd_sweep(a.max_t, a.max_d, a.json),
    }
}

pub fn load_strategy(path: &Path) -> Result<Strategy> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Strategy::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn exit_for(report: &AdmissibleReport) -> i32 {
    if report.success {
        EXIT_PROVEN
    } else {
        EXIT_NOT_PROVEN
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_report(strategy: &Strategy, r: &AdmissibleReport) -> String {
    let mut out = String::new();
    let p = &r.params;
    let _ = writeln!(out, "t = {}, f = {}, d = {}", p.t, p.f, p.d);
    let _ = writeln!(out, "weighings: {}", strategy.num_weighings());
    let _ = writeln!(out, "syndrome: {}", r.syndrome);
    let sizes: Vec<String> = r.class_sizes.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "classes: {}", sizes.join(" "));
    let _ = writeln!(out, "count_f: {} of {}", r.count_f, r.prior_f);
    let _ = writeln!(out, "count_d: {}", r.count_d);
    let _ = writeln!(out, "success: {}", yes_no(r.success));
    let _ = writeln!(out, "discreet: {}", yes_no(r.discreet));
    if r.success && !r.discreet {
        let exposed: Vec<String> = r.exposed_classes().iter().map(|j| format!("K{}", j + 1)).collect();
        let _ = writeln!(out, "exposed classes: {}", exposed.join(" "));
    }
    let _ = writeln!(
        out,
        "X = {}/{} ≈ {} ({})",
        r.prior_f,
        r.count_f,
        r.revealing_factor.to_decimal(4),
        r.revealing_factor
    );
    let _ = writeln!(
        out,
        "R = {} ≈ {}",
        r.revealing_coefficient,
        r.revealing_coefficient.to_decimal(4)
    );
    out
}

pub fn cmd_verify(path: &Path, oracle: bool, config: &RunConfig) -> Result<CmdOutput> {
    let strategy = load_strategy(path)?;
    let report = verify(&strategy)?;
    let mut out = if config.json {
        json_line(&report)?
    } else {
        let mut text = String::new();
        for issue in &strategy.validate().issues {
            let _ = writeln!(text, "{issue}");
        }
        text + &render_report(&strategy, &report)
    };
    if oracle {
        let (t, f, d) = (strategy.params.t, strategy.params.f, strategy.params.d);
        let visits = choose(t, f) + choose(t, d);
        if visits > config.oracle_cap.into() {
            if !config.json {
                let _ = writeln!(
                    out,
                    "oracle: skipped, {visits} subsets exceed the cap {}",
                    config.oracle_cap
                );
            }
        } else {
            let syndrome = &report.syndrome;
            let of = oracle_admissible_count(&strategy, f, syndrome, config.oracle_cap)?;
            let od = oracle_admissible_count(&strategy, d, syndrome, config.oracle_cap)?;
            if of != report.count_f || od != report.count_d {
                bail!(
                    "oracle disagrees: count_f {} vs {}, count_d {} vs {}",
                    report.count_f,
                    of,
                    report.count_d,
                    od
                );
            }
            if !config.json {
                let _ = writeln!(out, "oracle: count_f {of}, count_d {od} (agrees)");
            }
        }
    }
    Ok(CmdOutput {
        stdout: out,
        code: exit_for(&report),
    })
}

fn subset_label(weighings: &[usize]) -> String {
    if weighings.is_empty() {
        "∅".to_string()
    } else {
        weighings
            .iter()
            .map(|i| format!("h{}", i + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn cmd_table(path: &Path, with_best_order: bool, json: bool) -> Result<CmdOutput> {
    let strategy = load_strategy(path)?;
    let rows = subset_table(&strategy)?;
    let order = if with_best_order {
        Some(best_order(&strategy)?)
    } else {
        None
    };
    if json {
        let text = match order {
            Some(order) => json_line(&serde_json::json!({ "rows": rows, "best_order": order }))?,
            None => json_line(&rows)?,
        };
        return Ok(CmdOutput::ok(text));
    }
    let labels: Vec<String> = rows.iter().map(|r| subset_label(&r.weighings)).collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0).max(9);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$}  {:>12}  {:>12}", "weighings", "count_f", "count_d");
    for (label, row) in labels.iter().zip(&rows) {
        let _ = writeln!(
            out,
            "{:<width$}  {:>12}  {:>12}",
            label,
            row.count_f.to_string(),
            row.count_d.to_string()
        );
    }
    if let Some(order) = order {
        let _ = writeln!(out, "best order: {}", subset_label(&order));
    }
    Ok(CmdOutput::ok(out))
}

fn need_a(a: Option<usize>) -> Result<usize> {
    a.context("this family needs --a")
}

pub fn generate(args: &GenerateArgs) -> Result<Strategy> {
    let (t, f, d) = (args.t, args.f, args.d);
    let strategy = match args.family {
        FamilyName::Shapovalov => gen_shapovalov_for(t, f, d)?,
        FamilyName::Divisibility => gen_divisibility(t, f, d, need_a(args.a)?)?,
        FamilyName::Indiscreet => gen_indiscreet_piles(t, f, d, need_a(args.a)?)?,
        FamilyName::ThreeFamily => gen_three_family(t, f, d, args.placement_family)?,
        FamilyName::ThreeFamilyAugmented => gen_three_family_augmented(t, f, d, args.placement_family)?,
        FamilyName::Lincomb => {
            if args.c.is_empty() || args.g.is_empty() {
                bail!("lincomb needs --c and --g");
            }
            let config = LinCombConfig::new(args.c.clone(), args.g.clone());
            config.check(t, f)?;
            let placement = if args.placement.is_empty() {
                config
                    .solutions(f)
                    .into_iter()
                    .next()
                    .with_context(|| format!("no solution vector represents f = {f}"))?
            } else {
                SolutionVector(args.placement.clone())
            };
            gen_linear_combination(t, f, d, &config, &placement)?
        }
    };
    Ok(strategy)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<CmdOutput> {
    let strategy = generate(args)?;
    let text = strategy.to_json_pretty() + "\n";
    let mut out = String::new();
    match &args.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => out.push_str(&text),
    }
    if !args.verify {
        return Ok(CmdOutput::ok(out));
    }
    let report = verify(&strategy)?;
    if args.json {
        out.push_str(&json_line(&report)?);
    } else {
        out.push_str(&render_report(&strategy, &report));
    }
    Ok(CmdOutput {
        stdout: out,
        code: exit_for(&report),
    })
}

pub fn cmd_search(args: &SearchArgs) -> Result<CmdOutput> {
    let limits = SearchLimits {
        max_groups: args.max_groups,
        max_multiplicity: args.max_multiplicity.unwrap_or(usize::MAX),
        max_pile: args.max_pile.unwrap_or(usize::MAX),
        max_t: args.max_t,
        max_configs: args.max_configs,
    };
    let outcome = search_lincomb(args.t, args.f, args.d, &limits)?;
    if let (Some(path), Some(best)) = (&args.out, outcome.ranked.first()) {
        let strategy = gen_linear_combination(args.t, args.f, args.d, &best.config, &best.solutions[0])?;
        fs::write(path, strategy.to_json_pretty() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        return Ok(CmdOutput::ok(json_line(&outcome)?));
    }
    let prior = choose(args.t, args.f);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "t = {}, f = {}, d = {}: {} feasible of {} configurations",
        args.t,
        args.f,
        args.d,
        outcome.ranked.len(),
        outcome.examined
    );
    if outcome.partial {
        let _ = writeln!(out, "partial: stopped after {} configurations", outcome.examined);
    }
    for (rank, r) in outcome.ranked.iter().take(args.top).enumerate() {
        let x = Ratio::new(prior.clone(), r.count.clone())?;
        let _ = writeln!(
            out,
            "{:>3}. {:<28} count {:>14}  X ≈ {}  solutions {}",
            rank + 1,
            r.config.to_string(),
            r.count.to_string(),
            x.to_decimal(4),
            r.solutions.len()
        );
    }
    Ok(CmdOutput::ok(out))
}

/// `"6"` or an inclusive range `"4-8"`.
pub fn parse_range(text: &str) -> Result<Vec<usize>> {
    let parse = |s: &str| s.trim().parse::<usize>().with_context(|| format!("bad number {s:?}"));
    match text.split_once('-') {
        Some((lo, hi)) => {
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                bail!("empty range {text:?}");
            }
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![parse(text)?]),
    }
}

/// Integers without the `/1`.
fn plain(r: &Ratio) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

pub fn cmd_sensitivity(ns: &[usize], ms: &[usize], json: bool) -> Result<CmdOutput> {
    let mut rows = Vec::new();
    for &n in ns {
        for &m in ms {
            rows.push(sensitivity_result(n, m)?);
        }
    }
    if json {
        return Ok(CmdOutput::ok(json_line(&rows)?));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4} {:>3}  {:>24} {:>14}  {:>14}  {:>10}  {:>10}",
        "n", "m", "exact", "decimal", "trig", "2n/m", "α/√n"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>4} {:>3}  {:>24} {:>14}  {:>14.6}  {:>10}  {:>10.6}",
            r.n,
            r.m,
            plain(&r.exact),
            r.exact.to_decimal(6),
            r.trig,
            plain(&r.asymptote),
            r.bound_order
        );
    }
    Ok(CmdOutput::ok(out))
}

pub fn cmd_solve(c: &[usize], g: &[usize], target: usize, json: bool) -> Result<CmdOutput> {
    let solutions = solve_solution_vectors(c, g, target)?;
    if json {
        return Ok(CmdOutput::ok(json_line(&serde_json::json!({
            "solutions": solutions,
            "count": lincomb_count(c, g, &solutions)?.to_string(),
        }))?));
    }
    let mut out = String::new();
    for s in &solutions {
        let items: Vec<String> = s.0.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "({})", items.join(", "));
    }
    let _ = writeln!(out, "{} solution vectors", solutions.len());
    if !solutions.is_empty() {
        let _ = writeln!(out, "count: {}", lincomb_count(c, g, &solutions)?);
    }
    Ok(CmdOutput::ok(out))
}

pub fn cmd_sweep(max_t: usize, max_d: usize, json: bool) -> Result<CmdOutput> {
    let rows = augmented_sweep(max_t, max_d)?;
    if json {
        return Ok(CmdOutput::ok(json_line(&rows)?));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4} {:>3} {:>3}  {:>5}  {:>9}  {:>8}  {:>9}  {:>8}",
        "t", "f", "d", "base", "augmented", "discreet", "weighings", "expected"
    );
    for r in &rows {
        let _ = writeln!(
            out,
            "{:>4} {:>3} {:>3}  {:>5}  {:>9}  {:>8}  {:>9}  {:>8}",
            r.t,
            r.f,
            r.d,
            yes_no(r.base_success),
            yes_no(r.augmented_success),
            yes_no(r.augmented_discreet),
            r.augmented_weighings,
            yes_no(r.expected)
        );
    }
    let expected = rows.iter().filter(|r| r.expected).count();
    let held = rows
        .iter()
        .filter(|r| r.expected && r.augmented_success && r.augmented_discreet)
        .count();
    let _ = writeln!(
        out,
        "expected rows: {expected}, augmented strategy proves discreetly on {held}"
    );
    Ok(CmdOutput::ok(out))
}
