//! `rootstack`: batch front-end for pushforward checks, vanishing tables and
//! monoid checks. One job per config file; the report goes to stdout.
//!
//! Exit status: 0 every check passes, 1 some check fails, 2 malformed input,
//! 3 a hypothesis of the computation is violated, 4 internal inconsistency.

mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::Rational64;

use rootstack_core::cechtoric::{
    binomial, bott_oracle, line_bundle_closed_form, log_differential_cohomology, weight_support_bound,
    EquivariantSheafModel, ScanOptions,
};
use rootstack_core::monoid::{lift_chart, FreeMonoidMorphism, PrimeField, RootField, Rationals};
use rootstack_core::qdivisor::{format_rational, parse_rational};
use rootstack_core::rootmodel::{LocalChart, MonomialModule};
use rootstack_core::stackcheck::{kv_vanishing_check, verify_pushforward, GlobalQuotientModel, StackForms, VanishingReport};
use rootstack_core::{Error, ErrorKind, Schedule};

use config::{Format, JobConfig, Mode};
use report::{GeneratorRow, LocalEntry, MonoidReport, PushforwardReport};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Precondition => 3,
                ErrorKind::Internal => 4,
            },
            CliError::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) | CliError::Internal(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rootstack", version, about = "Root stack pushforward, vanishing and monoid checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare coarse and stack cohomology of a root-stack line bundle.
    Pushforward(JobArgs),
    /// Vanishing table of Ω^i(log D) ⊗ O(−⌈E⌉) on ℙⁿ.
    Vanishing(JobArgs),
    /// Simplicity, irreducible bijection and chart lifting of a monoid morphism.
    MonoidCheck(JobArgs),
}

#[derive(Debug, clap::Args)]
struct JobArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the format in the config file.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Overrides the automatic weight box.
    #[arg(long)]
    weight_bound: Option<i64>,
    /// Also run the brute-force cross-checks.
    #[arg(long)]
    oracle: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match &cli.command {
        Command::Pushforward(a) => (Mode::Pushforward, a),
        Command::Vanishing(a) => (Mode::Vanishing, a),
        Command::MonoidCheck(a) => (Mode::MonoidCheck, a),
    };
    match run(mode, args) {
        Ok((text, pass)) => {
            print!("{text}");
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}

fn run(mode: Mode, args: &JobArgs) -> Result<(String, bool), CliError> {
    let cfg = JobConfig::load(&args.config)?;
    cfg.check_mode(mode)?;
    let format = args.format.or(cfg.format).unwrap_or_default();
    let opts = ScanOptions { schedule: Schedule::Parallel, weight_bound: args.weight_bound };
    if let Some(b) = args.weight_bound {
        if b < 1 {
            return Err(CliError::Input(format!("weight bound {b} must be positive")));
        }
    }
    Ok(match mode {
        Mode::Vanishing => {
            let r = vanishing(&cfg, opts, args.oracle)?;
            let text = if format == Format::Tsv { report::vanishing_tsv(&r) } else { report::structured(&r) };
            (text, r.pass)
        }
        Mode::Pushforward => {
            let r = pushforward(&cfg, opts, args.oracle)?;
            let text = if format == Format::Tsv { report::pushforward_tsv(&r) } else { report::structured(&r) };
            (text, r.pass)
        }
        Mode::MonoidCheck => {
            let r = monoid_check(&cfg, args.oracle)?;
            let text = if format == Format::Tsv { report::monoid_tsv(&r) } else { report::structured(&r) };
            (text, r.pass)
        }
    })
}

fn vanishing(cfg: &JobConfig, opts: ScanOptions, oracle: bool) -> Result<VanishingReport, CliError> {
    let pair = cfg.pair()?;
    let e = cfg.divisor()?;
    let report = kv_vanishing_check(&pair, &e, opts)?;
    if oracle {
        cross_check_coarse(&report)?;
    }
    Ok(report)
}

/// Recomputes every coarse slice sequentially on a larger weight box, and
/// against closed forms when the boundary is empty or full.
fn cross_check_coarse(r: &VanishingReport) -> Result<(), CliError> {
    let n = r.dimension;
    let s = &r.boundary;
    for i in 0..=n {
        let model = EquivariantSheafModel::new(n, i, s, r.twist)?;
        let bound = weight_support_bound(n, i, s.len(), r.twist) + 3;
        let wide = log_differential_cohomology(&model, ScanOptions { schedule: Schedule::Sequential, weight_bound: Some(bound) })?;
        let mut expected = vec![wide];
        if s.is_empty() {
            expected.push(bott_oracle(n, i, r.twist));
        } else if s.len() == n + 1 {
            let rank = binomial(n as i64, i as i64) as usize;
            expected.push(line_bundle_closed_form(n, r.twist).iter().map(|h| h * rank).collect());
        }
        let got: Vec<usize> = (0..=n).map(|j| r.coarse.get(i, j, r.twist).unwrap_or(0)).collect();
        if let Some(other) = expected.iter().find(|x| **x != got) {
            return Err(CliError::Internal(format!("oracle disagrees at i={i}: {got:?} vs {other:?}")));
        }
    }
    Ok(())
}

fn pushforward(cfg: &JobConfig, opts: ScanOptions, oracle: bool) -> Result<PushforwardReport, CliError> {
    let pair = cfg.pair()?;
    let job = cfg.pushforward.as_ref().ok_or_else(|| CliError::Input("missing [pushforward]".into()))?;
    let forms = job.forms.unwrap_or(StackForms::Plain);
    let n = pair.ambient_dim;
    let r = pair.components.len();
    if job.a.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: job.a.len() }.into());
    }
    let orders: Vec<u64> = pair.components.iter().map(|c| c.root_order).collect();
    let mut exps = Vec::with_capacity(r);
    for (c, &a) in pair.components.iter().zip(&job.a) {
        let a = u64::try_from(a).map_err(|_| Error::InvalidInput(format!("coefficient {a} must be non-negative")))?;
        if forms == StackForms::Plain && a % c.root_order == 0 {
            let component = c.hyperplane.unwrap_or_default();
            return Err(Error::RootOrderDividesCoefficient { component, order: c.root_order, coefficient: a as i64 }.into());
        }
        exps.push(a);
    }

    // a chart of ℙⁿ meets at most n boundary hyperplanes; charts are checked independently of n
    let module = MonomialModule::new(LocalChart::new(n.max(r), orders.clone())?, exps.clone())?;
    let inv = module.invariant_submodule();
    let brute = if oracle {
        let bound = exps.iter().max().copied().unwrap_or(0) + orders.iter().max().copied().unwrap_or(1);
        Some(module.invariant_submodule_oracle(bound, opts.schedule)?)
    } else {
        None
    };
    let local: Vec<LocalEntry> = pair
        .components
        .iter()
        .enumerate()
        .map(|(k, c)| LocalEntry {
            component: c.name.clone(),
            root_order: c.root_order,
            coefficient: job.a[k],
            coarse_coefficient: inv.coarse_coefficients[k],
            oracle: brute.as_ref().map(|b| b.coarse_coefficients[k]),
        })
        .collect();
    let local_pass = local.iter().all(|e| e.oracle.map_or(true, |o| o == e.coarse_coefficient));

    let (global, note) = match GlobalQuotientModel::from_pair(&pair) {
        Ok(model) => {
            // the model lists the boundary in increasing order
            let a: Vec<i64> = model
                .boundary()
                .iter()
                .map(|&j| job.a[pair.components.iter().position(|c| c.hyperplane == Some(j)).expect("boundary component")])
                .collect();
            (Some(verify_pushforward(&model, &a, job.integral_part.as_deref(), forms, opts)?), None)
        }
        Err(Error::UnequalRootOrders) => {
            (None, Some("root orders differ, so only the local model is checked".to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let pass = local_pass && global.as_ref().map_or(true, |g| g.pass);
    Ok(PushforwardReport { dimension: n, root_orders: orders, coefficients: job.a.clone(), local, global, note, pass })
}

fn monoid_check(cfg: &JobConfig, oracle: bool) -> Result<MonoidReport, CliError> {
    let m = cfg.morphism.as_ref().ok_or_else(|| CliError::Input("missing [morphism]".into()))?;
    let rho = FreeMonoidMorphism::from_rows(&m.rows)?;
    let (simple, reason, bijection) = match rho.irreducible_bijection() {
        Ok(images) => (true, None, images),
        Err(Error::NotSimple(why)) => (false, Some(why), Vec::new()),
        Err(e) => return Err(e.into()),
    };
    if oracle && simple && FreeMonoidMorphism::from_images(rho.target().rank, &bijection)? != rho {
        return Err(CliError::Internal("irreducible bijection does not rebuild the morphism".into()));
    }
    let bijection: Vec<GeneratorRow> = bijection
        .iter()
        .enumerate()
        .map(|(generator, im)| GeneratorRow { generator, target: im.target, multiplier: im.multiplier })
        .collect();

    let mut field_name = None;
    let mut lifted = None;
    if let Some(field) = &m.field {
        let units = m.units.as_ref().ok_or_else(|| CliError::Input("lifting needs `units`".into()))?;
        let orders = rho.diagonal_multipliers()?;
        let parsed = units.iter().map(|u| parse_rational(u)).collect::<Result<Vec<Rational64>, _>>()?;
        if field == "Q" {
            let v = lift_chart(&rho, &parsed, &Rationals)?;
            check_roots(&Rationals, &v, &orders, &parsed)?;
            lifted = Some(v.iter().map(format_rational).collect());
        } else if let Some(p) = field.strip_prefix("F_").and_then(|p| p.parse::<u64>().ok()) {
            let f = PrimeField::new(p)?;
            let reduced = parsed
                .iter()
                .map(|u| {
                    u.is_integer()
                        .then(|| f.reduce(*u.numer()))
                        .ok_or_else(|| CliError::Input(format!("unit {u} is not an integer mod {p}")))
                })
                .collect::<Result<Vec<u64>, _>>()?;
            let v = lift_chart(&rho, &reduced, &f)?;
            check_roots(&f, &v, &orders, &reduced)?;
            lifted = Some(v.iter().map(u64::to_string).collect());
        } else {
            return Err(Error::InvalidField(field.clone()).into());
        }
        field_name = Some(field.clone());
    }
    Ok(MonoidReport {
        source_rank: rho.source().rank,
        target_rank: rho.target().rank,
        injective: rho.is_injective(),
        simple,
        reason,
        bijection,
        field: field_name,
        lifted_units: lifted,
        pass: simple,
    })
}

fn check_roots<F: RootField>(field: &F, v: &[F::Elem], orders: &[u64], units: &[F::Elem]) -> Result<(), CliError> {
    for ((vi, &b), u) in v.iter().zip(orders).zip(units) {
        if field.pow(vi, b) != *u {
            return Err(CliError::Internal(format!("{vi:?}^{b} ≠ {u:?} in {}", field.name())));
        }
    }
    Ok(())
}
