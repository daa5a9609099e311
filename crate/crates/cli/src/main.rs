use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use gekeler::field::DEFAULT_SEED;
use gekeler::gekeler::{finite_level_ratio, gekeler_product, gekeler_ratio, partial_products, rational_string};
use gekeler::ideal::index_ideal;
use gekeler::oracle::{brute_orbit_count, brute_sl_count, commutant_dimension, count_matrices, sl_order, DEFAULT_BUDGET};
use gekeler::overorders::p_overorders;
use gekeler::parse::{parse_bivariate, parse_poly};
use gekeler::primes::{kummer_dedekind, order_discriminant, primes_above};
use gekeler::weak::local_icm;
use gekeler::zeta::l_polynomial;
use gekeler::{AlgebraError, Curve, Fq, FqPoly};

#[derive(Parser, Debug)]
#[command(name = "gekeler", version)]
#[command(about = "Ideal class monoids of orders in F_q(T)[x]/f and local Gekeler ratios")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Field size, a prime power
    #[arg(long, global = true, default_value_t = 3)]
    q: u64,

    /// Monic polynomial in x over F_q[T], e.g. "x^2 - T^3"
    #[arg(long, global = true)]
    f: Option<String>,

    /// Monic irreducible polynomial in T
    #[arg(long, global = true)]
    prime: Option<String>,

    /// Level n of the truncation A/p^n
    #[arg(long, global = true)]
    level: Option<usize>,

    /// Highest prime degree in partial products
    #[arg(long = "check-depth", global = true)]
    check_depth: Option<usize>,

    /// Cap on brute-force enumeration size
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Seed for randomized polynomial factoring
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include wall-clock timings (makes output nondeterministic)
    #[arg(long, global = true, default_value_t = false)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminant, singular primes and prime splitting
    Primes,
    /// p-overorders of A[x]/f
    Overorders,
    /// Local ideal class monoid at a prime
    Icm,
    /// Local Gekeler ratio, optionally with its finite-level value
    Ratio,
    /// Exact product of all local ratios
    Product,
    /// Constant field, genus and L-polynomial
    Zeta,
    /// Brute-force checks over A/p^n
    Oracle {
        #[command(subcommand)]
        check: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Matrices over A/p^n with characteristic polynomial f
    Count,
    /// Conjugacy orbits among them
    Orbits {
        /// Count reductions of solutions this many levels higher; defaults to v_p(disc)
        #[arg(long = "lift-depth")]
        lift_depth: Option<usize>,
    },
    /// Dimension of the commutant of the companion matrix
    Commutant,
    /// |SL_r(A/p^n)| by enumeration and in closed form
    Slcount {
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
}

fn require<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str, AlgebraError> {
    v.as_deref().ok_or_else(|| AlgebraError::Parse { line: 1, col: 1, msg: format!("--{name} is required") })
}

struct Job {
    common: Common,
    field: Fq,
}

impl Job {
    fn f(&self) -> Result<gekeler::BiPoly, AlgebraError> {
        parse_bivariate(&self.field, require(&self.common.f, "f")?)
    }

    fn curve(&self) -> Result<Curve, AlgebraError> {
        Curve::new(&self.field, self.f()?)
    }

    fn prime(&self) -> Result<FqPoly, AlgebraError> {
        let p = parse_poly(&self.field, require(&self.common.prime, "prime")?)?;
        gekeler::primes::check_prime(&p)?;
        Ok(p)
    }

    fn level(&self) -> usize {
        self.common.level.unwrap_or(1)
    }
}

fn primes_report(job: &Job) -> Result<Value, AlgebraError> {
    let c = job.curve()?;
    let ctx = &c.ctx;
    let singular: Vec<Value> = c
        .singular
        .iter()
        .map(|p| {
            Ok(json!({
                "p": ctx.poly_string(p),
                "in_R": kummer_dedekind(&c.r_order, p)?.to_json(ctx),
                "in_O_K": primes_above(&c.o_k, p)?.to_json(ctx),
            }))
        })
        .collect::<Result<_, AlgebraError>>()?;
    let mut out = json!({
        "disc_f": ctx.poly_string(&c.disc),
        "disc_O_K": ctx.poly_string(&order_discriminant(&c.o_k)),
        "index_O_K_R": ctx.poly_string(&index_ideal(c.o_k.ideal(), c.r_order.ideal())?),
        "singular_primes": singular,
        "maximal_order": c.o_k.to_json(),
        "infinity": {
            "model": c.infinity.ctx.f_string(),
            "shift": c.infinity.shift,
            "places": c.infinite_places.iter().map(|q| json!({"e": q.e, "f": q.f_res})).collect::<Vec<_>>(),
        },
    });
    if job.common.prime.is_some() {
        let p = job.prime()?;
        out["prime"] = json!({
            "p": ctx.poly_string(&p),
            "kummer_dedekind": kummer_dedekind(&c.r_order, &p)?.to_json(ctx),
            "in_O_K": primes_above(&c.o_k, &p)?.to_json(ctx),
        });
    }
    Ok(out)
}

fn ratio_report(job: &Job) -> Result<Value, AlgebraError> {
    let c = job.curve()?;
    let p = job.prime()?;
    let lr = gekeler_ratio(&c, &p)?;
    let mut out = lr.to_json(&c);
    if let Some(n) = job.common.level {
        let v = finite_level_ratio(&c, &p, n, job.common.budget)?;
        out["finite_level"] = json!({"level": n, "value": rational_string(&v)});
    }
    Ok(out)
}

fn product_report(job: &Job) -> Result<Value, AlgebraError> {
    let c = job.curve()?;
    let rep = gekeler_product(&c)?;
    let mut out = rep.to_json(&c);
    if let Some(d) = job.common.check_depth {
        let limit = rep.to_f64();
        let partial: Vec<Value> = partial_products(&c, d)?
            .iter()
            .map(|pp| {
                let v = pp.value.to_f64().unwrap_or(f64::NAN);
                json!({
                    "degree": pp.degree,
                    "value": rational_string(&pp.value),
                    "log_gap": format!("{:.6e}", (v / limit).ln().abs()),
                })
            })
            .collect();
        out["partial_products"] = Value::Array(partial);
    }
    Ok(out)
}

fn oracle_report(job: &Job, check: &OracleCommand) -> Result<Value, AlgebraError> {
    let budget = job.common.budget;
    match check {
        OracleCommand::Count => {
            let f = job.f()?;
            let p = job.prime()?;
            let n = job.level();
            Ok(json!({"level": n, "count": count_matrices(&f, &p, n, budget)?.to_string()}))
        }
        OracleCommand::Orbits { lift_depth } => {
            let c = job.curve()?;
            let p = job.prime()?;
            let n = job.level();
            let depth = lift_depth.unwrap_or_else(|| c.disc.valuation(&p));
            let oc = brute_orbit_count(c.ctx.f(), &p, n, depth, budget)?;
            Ok(json!({"level": oc.level, "lift_depth": oc.lift_depth, "matrices": oc.matrices, "orbits": oc.orbits}))
        }
        OracleCommand::Commutant => {
            let c = job.curve()?;
            Ok(json!({"r": c.rank(), "commutant_dimension": commutant_dimension(c.ctx.f())}))
        }
        OracleCommand::Slcount { rank } => {
            let p = job.prime()?;
            let n = job.level();
            let g = brute_sl_count(*rank, &p, n, budget)?;
            let closed = sl_order(*rank, p.norm() as u128, n);
            Ok(json!({
                "rank": rank,
                "level": n,
                "sl": g.sl.to_string(),
                "gl": g.gl.to_string(),
                "units": g.units.to_string(),
                "closed_form": closed.to_string(),
                "agrees": closed == g.sl,
            }))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Primes => "primes",
        Command::Overorders => "overorders",
        Command::Icm => "icm",
        Command::Ratio => "ratio",
        Command::Product => "product",
        Command::Zeta => "zeta",
        Command::Oracle { check: OracleCommand::Count } => "oracle count",
        Command::Oracle { check: OracleCommand::Orbits { .. } } => "oracle orbits",
        Command::Oracle { check: OracleCommand::Commutant } => "oracle commutant",
        Command::Oracle { check: OracleCommand::Slcount { .. } } => "oracle slcount",
    }
}

fn run(job: &Job, command: &Command) -> Result<Value, AlgebraError> {
    match command {
        Command::Primes => primes_report(job),
        Command::Overorders => {
            let c = job.curve()?;
            Ok(p_overorders(&c.r_order, &job.prime()?)?.to_json())
        }
        Command::Icm => {
            let c = job.curve()?;
            Ok(local_icm(&c.r_order, &job.prime()?)?.to_json())
        }
        Command::Ratio => ratio_report(job),
        Command::Product => product_report(job),
        Command::Zeta => Ok(l_polynomial(&job.curve()?)?.to_json()),
        Command::Oracle { check } => oracle_report(job, check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common.clone();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(common.jobs.max(1)).build_global() {
        eprintln!("thread pool: {e}");
    }
    let start = Instant::now();
    let mut input = Map::new();
    input.insert("q".into(), json!(common.q));
    for (k, v) in [("f", &common.f), ("prime", &common.prime)] {
        if let Some(v) = v {
            input.insert(k.into(), json!(v));
        }
    }
    if let Some(n) = common.level {
        input.insert("level".into(), json!(n));
    }
    if let Some(d) = common.check_depth {
        input.insert("check_depth".into(), json!(d));
    }
    let outcome = Fq::with_seed(common.q, common.seed).and_then(|field| {
        let job = Job { common: common.clone(), field };
        run(&job, &cli.command)
    });
    let mut report = json!({
        "command": command_name(&cli.command),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": common.seed,
        "input": Value::Object(input),
    });
    let code = match outcome {
        Ok(v) => {
            report["result"] = v;
            ExitCode::SUCCESS
        }
        Err(e) => {
            let pre = e.is_precondition();
            report["error"] = json!({
                "kind": if pre { "precondition" } else { "invariant" },
                "message": e.to_string(),
            });
            eprintln!("error: {e}");
            ExitCode::from(if pre { 2 } else { 1 })
        }
    };
    if common.timings {
        report["timings"] = json!({"total_ms": start.elapsed().as_millis() as u64});
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    code
}
