//! Command-line front end: reads a JSON instance file (one object, or an
//! array processed as a batch), dispatches to the library, and prints one
//! JSON document on stdout. Diagnostics go to stderr.
//!
//! Exit codes: 0 success, 2 invalid or degenerate input, 3 resource limit
//! exceeded.

mod emit;
mod instance;

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, Subcommand};
use latgap::bounds::{bounds_report, covering_radius, grid_cover_check};
use latgap::frobenius::{frobenius_reduction, lambda_a, oracle_frobenius, FrobeniusInput};
use latgap::gomory::{IpInstance, IpOptimum};
use latgap::groupsolve::{CostVector, GapCertificate, GroupInstance};
use latgap::{Error, Integer, Rational, ResourceLimits};
use serde_json::{json, Value};

use instance::Instance;

#[derive(Parser)]
#[command(
    name = "latgap",
    version,
    about = "Lattice programming gaps, Frobenius numbers, certified bounds, group relaxations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// JSON instance file: one instance object or an array of instances.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Coset budget for quotient-graph solves.
    #[arg(long, global = true, value_name = "N", default_value_t = 10_000_000)]
    max_cosets: u64,
    /// Re-validate every printed certificate (value and membership).
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gap of a group instance, with a witness certificate.
    Gap,
    /// Cheapest point of one residue class (instance field "r").
    Solve,
    /// Frobenius number of a coin set.
    Frobenius {
        /// Inline coin set, e.g. --a 3,5,7, instead of a file.
        #[arg(
            long,
            value_delimiter = ',',
            value_name = "LIST",
            conflicts_with = "input"
        )]
        a: Option<Vec<String>>,
    },
    /// Certified lower and upper bounds for the gap.
    Bounds {
        /// Also compute the exact gap.
        #[arg(long)]
        with_gap: bool,
    },
    /// Gomory group relaxation of an integer program.
    Relax {
        /// Relax a single constraint row instead of the whole system.
        #[arg(long, value_name = "I")]
        row: Option<usize>,
        /// Also emit a right-hand side on which the bound is attained.
        #[arg(long)]
        witness: bool,
    },
    /// Brute-force oracles: box scan, representability table, IP scan.
    Oracle {
        /// Per-coordinate box for the integer-program scan.
        #[arg(long = "box", value_name = "B")]
        box_limit: Option<u64>,
    },
    /// Grid-check that the covering radius covers a fundamental box.
    CoverCheck {
        /// Grid pitch as a rational, e.g. 1/16.
        #[arg(long = "grid-h", value_name = "H", default_value = "1/16")]
        grid_h: String,
    },
}

/// A failed run: the process exit code plus a message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: if e.is_resource_limit() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// A certificate that fails its own re-validation is a solver defect, not
/// an input problem; it gets a distinct exit code.
fn inconsistent(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn main() {
    let cli = Cli::parse();
    let limits = ResourceLimits::with_max_cosets(cli.max_cosets);
    std::process::exit(run(&cli, &limits));
}

fn run(cli: &Cli, limits: &ResourceLimits) -> i32 {
    let doc = match load_input(cli) {
        Ok(doc) => doc,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    match doc {
        Value::Array(items) => {
            let (values, code) = run_batch(&items, cli, limits);
            println!("{}", Value::Array(values));
            code
        }
        single => match run_one(&single, cli, limits) {
            Ok(v) => {
                println!("{v}");
                0
            }
            Err(f) => {
                eprintln!("error: {}", f.message);
                f.code
            }
        },
    }
}

fn load_input(cli: &Cli) -> Result<Value, Failure> {
    if let Cmd::Frobenius { a: Some(list) } = &cli.cmd {
        let entries: Vec<Value> = list.iter().map(|s| Value::String(s.clone())).collect();
        return Ok(json!({ "kind": "frobenius", "a": entries }));
    }
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| invalid("--input FILE is required (or --a for frobenius)"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("malformed JSON: {e}")))
}

/// Batch instances run concurrently on a small worker pool; output order
/// matches input order regardless of completion order.
fn run_batch(items: &[Value], cli: &Cli, limits: &ResourceLimits) -> (Vec<Value>, i32) {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Value, Failure>>>> =
        items.iter().map(|_| Mutex::new(None)).collect();
    let workers = std::thread::available_parallelism()
        .map(|c| c.get())
        .unwrap_or(1)
        .min(items.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let result = run_one(&items[i], cli, limits);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });

    let mut out = Vec::with_capacity(items.len());
    let mut code = 0;
    for (i, slot) in slots.into_iter().enumerate() {
        match slot.into_inner().unwrap().expect("worker filled every slot") {
            Ok(v) => out.push(v),
            Err(f) => {
                eprintln!("instance {i}: {}", f.message);
                out.push(json!({ "error": f.message }));
                code = code.max(f.code);
            }
        }
    }
    (out, code)
}

fn run_one(doc: &Value, cli: &Cli, limits: &ResourceLimits) -> Result<Value, Failure> {
    let parsed = instance::parse(doc).map_err(invalid)?;
    match (&cli.cmd, parsed) {
        (Cmd::Gap, Instance::Group { inst, .. }) => cmd_gap(&inst, cli.verify, limits),
        (Cmd::Solve, Instance::Group { inst, r }) => {
            let r = r.ok_or_else(|| invalid("solve needs the instance field \"r\""))?;
            cmd_solve(&inst, &r, cli.verify, limits)
        }
        (Cmd::Frobenius { .. }, Instance::Frobenius(coins)) => {
            cmd_frobenius(&coins, cli.verify, limits)
        }
        (Cmd::Bounds { with_gap }, Instance::Group { inst, .. }) => {
            cmd_bounds(&inst, *with_gap, limits)
        }
        (Cmd::Relax { row, witness }, Instance::Ip(ip)) => {
            cmd_relax(&ip, *row, *witness, cli.verify, limits)
        }
        (Cmd::Oracle { box_limit }, parsed) => cmd_oracle(parsed, *box_limit, limits),
        (Cmd::CoverCheck { grid_h }, Instance::Group { inst, .. }) => {
            cmd_cover_check(&inst, grid_h, limits)
        }
        (_, parsed) => Err(invalid(format!(
            "instance kind {:?} does not fit this subcommand",
            parsed.kind()
        ))),
    }
}

fn cmd_gap(inst: &GroupInstance, verify: bool, limits: &ResourceLimits) -> Result<Value, Failure> {
    let start = Instant::now();
    let paths = inst.solve_all(limits)?;
    let cert = inst.gap_from(&paths);
    let elapsed = start.elapsed().as_secs_f64();
    if verify {
        verify_certificate(inst, &cert)?;
    }
    let mut out = json!({
        "gap": emit::rat_str(&cert.gap),
        "witness_label": emit::label_value(&cert.witness),
        "witness_x": emit::ints_value(&cert.witness_x),
        "cosets": cert.coset_count,
        "elapsed": elapsed,
    });
    if verify {
        out["verified"] = json!(true);
    }
    Ok(out)
}

fn verify_certificate(inst: &GroupInstance, cert: &GapCertificate) -> Result<(), Failure> {
    let value_ok = inst.cost().dot(&cert.witness_x) == cert.gap;
    let label_ok = inst
        .snf()
        .label(&cert.witness_x)
        .map(|l| l == cert.witness)
        .unwrap_or(false);
    if value_ok && label_ok {
        Ok(())
    } else {
        Err(inconsistent("gap certificate failed re-validation"))
    }
}

fn cmd_solve(
    inst: &GroupInstance,
    r: &[Integer],
    verify: bool,
    limits: &ResourceLimits,
) -> Result<Value, Failure> {
    let start = Instant::now();
    let sol = inst.solve_m(r, limits)?;
    let elapsed = start.elapsed().as_secs_f64();
    if verify {
        let value_ok = inst.cost().dot(&sol.minimizer) == sol.value;
        let same_class = inst.snf().label(&sol.minimizer).ok() == Some(sol.residue.clone())
            && inst.snf().label(r).ok() == Some(sol.residue.clone());
        if !(value_ok && same_class) {
            return Err(inconsistent("solution failed re-validation"));
        }
    }
    let mut out = json!({
        "value": emit::rat_str(&sol.value),
        "minimizer": emit::ints_value(&sol.minimizer),
        "residue": emit::label_value(&sol.residue),
        "elapsed": elapsed,
    });
    if verify {
        out["verified"] = json!(true);
    }
    Ok(out)
}

fn cmd_frobenius(
    coins: &FrobeniusInput,
    verify: bool,
    limits: &ResourceLimits,
) -> Result<Value, Failure> {
    let reduction = frobenius_reduction(coins, limits)?;
    if verify {
        let leading: Vec<Rational> = coins.entries()[..coins.dim()]
            .iter()
            .map(|a| Rational::from_integer(a.clone()))
            .collect();
        let cost = CostVector::new(leading).map_err(Failure::from)?;
        let inst = GroupInstance::new(lambda_a(coins), cost).map_err(Failure::from)?;
        verify_certificate(&inst, &reduction.certificate)?;
        if reduction.certificate.gap != reduction.gap {
            return Err(inconsistent("reduction failed re-validation"));
        }
    }
    let mut out = json!({
        "frobenius": emit::int_value(&reduction.frobenius),
        "gap": emit::rat_str(&reduction.gap),
        "det": emit::int_value(&reduction.modulus),
    });
    if verify {
        out["verified"] = json!(true);
    }
    Ok(out)
}

fn cmd_bounds(
    inst: &GroupInstance,
    with_gap: bool,
    limits: &ResourceLimits,
) -> Result<Value, Failure> {
    let gap = if with_gap {
        Some(inst.gap(limits)?.gap)
    } else {
        None
    };
    let report = bounds_report(inst.basis().det_abs(), inst.cost(), gap);
    Ok(emit::bounds_value(&report))
}

fn cmd_relax(
    ip: &IpInstance,
    row: Option<usize>,
    witness: bool,
    verify: bool,
    limits: &ResourceLimits,
) -> Result<Value, Failure> {
    let relax = match row {
        Some(i) => ip.single_row_relaxation(i)?,
        None => ip.build_relaxation()?,
    };
    let bound = relax.solve(limits)?;
    if verify {
        let inst = relax.instance();
        let value_ok = inst.cost().dot(&bound.minimizer) == bound.group_value;
        let label_ok = inst.snf().label(&bound.minimizer).ok() == Some(bound.label.clone());
        if !(value_ok && label_ok) {
            return Err(inconsistent("relaxation minimizer failed re-validation"));
        }
    }
    let lp = relax.lp();
    let mut out = json!({
        "lp": {
            "value": emit::rat_str(&lp.value),
            "basic": lp.basic,
            "nonbasic": lp.nonbasic,
            "x": emit::rats_value(&lp.x),
            "reduced": emit::rats_value(&lp.reduced),
            "unique": lp.unique,
        },
        "relaxation": {
            "cosets": emit::int_value(relax.instance().snf().group_order()),
            "residue": emit::ints_value(relax.residue()),
            "constant": emit::rat_str(relax.constant()),
        },
        "bound": {
            "bound": emit::rat_str(&bound.bound),
            "group_value": emit::rat_str(&bound.group_value),
            "minimizer": emit::ints_value(&bound.minimizer),
            "label": emit::label_value(&bound.label),
        },
    });
    if witness {
        let cert = relax.instance().gap(limits)?;
        let w = relax.witness_rhs(&cert)?;
        out["witness"] = json!({
            "rhs": emit::ints_value(&w.rhs),
            "predicted": emit::rat_str(&w.predicted),
        });
    }
    if verify {
        out["verified"] = json!(true);
    }
    Ok(out)
}

fn cmd_oracle(
    parsed: Instance,
    box_limit: Option<u64>,
    limits: &ResourceLimits,
) -> Result<Value, Failure> {
    match parsed {
        Instance::Group { inst, r } => {
            let r = r.ok_or_else(|| invalid("the group oracle needs the instance field \"r\""))?;
            let value = inst.oracle_m(&r, limits)?;
            Ok(json!({ "value": emit::rat_str(&value) }))
        }
        Instance::Frobenius(coins) => {
            let f = oracle_frobenius(&coins, limits)?;
            Ok(json!({ "frobenius": emit::int_value(&f) }))
        }
        Instance::Ip(ip) => {
            let b =
                box_limit.ok_or_else(|| invalid("--box B is required for the integer-program oracle"))?;
            match ip.ip_bruteforce(b, limits)? {
                IpOptimum::Optimal { value, minimizer } => Ok(json!({
                    "status": "optimal",
                    "value": emit::rat_str(&value),
                    "minimizer": emit::ints_value(&minimizer),
                })),
                IpOptimum::Infeasible => Ok(json!({ "status": "infeasible" })),
            }
        }
    }
}

fn cmd_cover_check(
    inst: &GroupInstance,
    grid_h: &str,
    limits: &ResourceLimits,
) -> Result<Value, Failure> {
    let h = instance::rational_str(grid_h).map_err(invalid)?;
    let rho = covering_radius(inst, limits)?;
    let report = grid_cover_check(inst, &rho, &h, limits)?;
    Ok(emit::cover_value(&rho, &h, &report))
}
