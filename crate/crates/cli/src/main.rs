use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use niho_core::boomerang::{fbct_distribution, sozd_distribution, BoomerangDistribution};
use niho_core::codes::weight_distribution;
use niho_core::diff::differential_spectrum;
use niho_core::niho::{
    cij_count, cij_matrix, cij_predicted, count_v, curve_points, niho_pair_sum, s_from_d,
    search_locally_apn,
};
use niho_core::verify::verify;
use niho_core::walsh::{moment_from_distribution, walsh_distribution};
use niho_core::{
    build_field, make_niho, predict, Elem, Error, Field, NihoExponent, Options, DEFAULT_BUDGET,
};

mod output;

use output::{Report, Table};

/// Exact spectra of Niho power functions over F_{p^{2m}}.
#[derive(Parser)]
#[command(name = "niho", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Characteristic.
    #[arg(long)]
    p: u32,
    /// Half the extension degree: the field is F_{p^{2m}}.
    #[arg(long)]
    m: u32,
    /// Work budget in field-element operations.
    #[arg(long, env = "NIHO_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Exponent {
    /// Exponent d of x^d.
    #[arg(long)]
    d: Option<u64>,
    /// Niho parameter s, giving d = s(p^m - 1) + 1.
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the field model.
    Field(Common),
    /// Differential spectrum of x^d.
    Diff {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exponent: Exponent,
    },
    /// Walsh value distribution and power-sum moments.
    Walsh {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exponent: Exponent,
    },
    /// Feistel boomerang connectivity distribution (p = 2).
    Fbct {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exponent: Exponent,
        /// Enumerate every (a, b) instead of using the a/b scaling.
        #[arg(long)]
        naive: bool,
    },
    /// Second-order zero differential distribution.
    Sozd {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exponent: Exponent,
        #[arg(long)]
        naive: bool,
    },
    /// Weight distribution of the cyclic code C_{1,d}.
    Codes {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exponent: Exponent,
    },
    /// Closed-form predictions for a Niho exponent.
    Predict {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exponent: Exponent,
    },
    /// Measure everything the predictions claim and compare.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exponent: Exponent,
    },
    /// Classify every Niho residue s by brute force.
    Search {
        #[command(flatten)]
        common: Common,
        /// Annotate each residue with its cyclotomic class.
        #[arg(long)]
        classes: bool,
    },
    /// Rational points on αx^{n1} + βy^{n2} + 1 = 0.
    Curve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        /// α = ψ^alpha_log.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        alpha_log: i64,
        /// β = ψ^beta_log.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        beta_log: i64,
    },
    /// Solution count of the μ_{p^m+1} system and the matching Walsh sum.
    Vsys {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        g1: i64,
        #[arg(long, allow_negative_numbers = true)]
        g2: i64,
        /// Element representation of u.
        #[arg(long)]
        u: u32,
        /// Element representation of v.
        #[arg(long)]
        v: u32,
    },
    /// Sizes of the classes C_{i,j} against their closed form.
    Cij {
        #[command(flatten)]
        common: Common,
        #[arg(long, requires = "j")]
        i: Option<u64>,
        #[arg(long, requires = "i")]
        j: Option<u64>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Field(c) => c,
            Command::Diff { common, .. }
            | Command::Walsh { common, .. }
            | Command::Fbct { common, .. }
            | Command::Sozd { common, .. }
            | Command::Codes { common, .. }
            | Command::Predict { common, .. }
            | Command::Verify { common, .. }
            | Command::Search { common, .. }
            | Command::Curve { common, .. }
            | Command::Vsys { common, .. }
            | Command::Cij { common, .. } => common,
        }
    }
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. } => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

fn with_field(mut report: Value, f: &Field) -> Value {
    report["field"] = json!(f.describe());
    report
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn resolve(f: &Field, e: &Exponent) -> Result<(u64, Option<NihoExponent>), Failure> {
    match (e.d, e.s) {
        (_, Some(s)) => {
            let n = make_niho(f.p(), f.m(), s);
            Ok((n.d, Some(n)))
        }
        (Some(d), None) => Ok((
            d,
            s_from_d(f.p(), f.m(), d).map(|s| make_niho(f.p(), f.m(), s as i64)),
        )),
        (None, None) => Err(Failure::Usage("one of --d or --s is required".into())),
    }
}

fn require_niho(f: &Field, e: &Exponent) -> Result<NihoExponent, Failure> {
    match resolve(f, e)? {
        (_, Some(n)) => Ok(n),
        (d, None) => Err(Failure::Usage(format!(
            "{d} is not a Niho exponent for p={} m={}",
            f.p(),
            f.m()
        ))),
    }
}

fn element(f: &Field, rep: u32) -> Result<Elem, Failure> {
    Ok(f.elem(rep)?)
}

fn boomerang_report(f: &Field, dist: &BoomerangDistribution) -> Report {
    let rows = dist
        .entries
        .iter()
        .map(|(v, c)| vec![v.to_string(), c.to_string()])
        .collect();
    Report::new(with_field(to_json(dist), f)).with_table(Table::new(&["value", "count"], rows))
}

fn run(command: &Command, f: &Field, opts: &Options) -> Outcome {
    let report = match command {
        Command::Field(_) => Report::new(json!({ "field": f.describe() })),
        Command::Diff { exponent, .. } => {
            let (d, _) = resolve(f, exponent)?;
            let s = differential_spectrum(f, d)?;
            let rows = s
                .counts
                .iter()
                .map(|(i, w)| vec![i.to_string(), w.to_string()])
                .collect();
            let json = json!({
                "d": d,
                "uniformity": s.uniformity,
                "locally_apn": s.locally_apn,
                "max_outside_prime_field": s.max_outside_prime_field,
                "spectrum": s.counts,
            });
            Report::new(with_field(json, f)).with_table(Table::new(&["i", "omega"], rows))
        }
        Command::Walsh { exponent, .. } => {
            let (d, _) = resolve(f, exponent)?;
            let dist = walsh_distribution(f, d, opts)?;
            let moments = (1..=4)
                .map(|r| moment_from_distribution(f, &dist, r, opts))
                .collect::<Result<Vec<_>, _>>()?;
            let mut json = to_json(&dist);
            json["moments"] = to_json(&moments);
            let rows = dist
                .entries
                .iter()
                .map(|(w, c)| vec![w.to_string(), c.to_string()])
                .collect();
            Report::new(with_field(json, f))
                .with_table(Table::new(&["value", "multiplicity"], rows))
        }
        Command::Fbct {
            exponent, naive, ..
        } => {
            let (d, _) = resolve(f, exponent)?;
            boomerang_report(f, &fbct_distribution(f, d, *naive, opts)?)
        }
        Command::Sozd {
            exponent, naive, ..
        } => {
            let (d, _) = resolve(f, exponent)?;
            boomerang_report(f, &sozd_distribution(f, d, *naive, opts)?)
        }
        Command::Codes { exponent, .. } => {
            let (d, _) = resolve(f, exponent)?;
            let w = weight_distribution(f, d, opts)?;
            let rows = w
                .weights
                .iter()
                .map(|(k, c)| vec![k.to_string(), c.to_string()])
                .collect();
            Report::new(with_field(to_json(&w), f)).with_table(Table::new(&["w", "count"], rows))
        }
        Command::Predict { exponent, .. } => {
            let e = require_niho(f, exponent)?;
            Report::new(with_field(to_json(&predict(&e)), f))
        }
        Command::Verify { exponent, .. } => {
            let e = require_niho(f, exponent)?;
            let r = verify(f, &e, opts)?;
            Report::new(to_json(&r)).failed_if(!r.pass)
        }
        Command::Search { classes, .. } => {
            let r = search_locally_apn(f.p(), f.m(), *classes, opts)?;
            let flag = |b: Option<bool>| b.map_or(String::new(), |b| b.to_string());
            let rows = r
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.s.to_string(),
                        e.d.to_string(),
                        e.s1.to_string(),
                        e.s2.to_string(),
                        e.predicted.uniformity.to_string(),
                        e.measured.uniformity.to_string(),
                        to_json(&e.predicted.locally_apn)
                            .as_str()
                            .unwrap_or_default()
                            .to_string(),
                        e.measured.locally_apn.to_string(),
                        e.matches.to_string(),
                        flag(e.f1_member),
                    ]
                })
                .collect();
            let header = [
                "s",
                "d",
                "s1",
                "s2",
                "predicted_uniformity",
                "measured_uniformity",
                "predicted_locally_apn",
                "measured_locally_apn",
                "match",
                "f1_member",
            ];
            Report::new(with_field(to_json(&r), f))
                .with_table(Table::new(&header, rows))
                .failed_if(!r.mismatches.is_empty())
        }
        Command::Curve {
            n1,
            n2,
            alpha_log,
            beta_log,
            ..
        } => {
            let r = curve_points(f, *n1, *n2, f.psi_pow(*alpha_log), f.psi_pow(*beta_log))?;
            Report::new(with_field(to_json(&r), f)).failed_if(r.matches == Some(false))
        }
        Command::Vsys { g1, g2, u, v, .. } => {
            let (ue, ve) = (element(f, *u)?, element(f, *v)?);
            let count = count_v(f, *g1, *g2, ue, ve);
            let sum = niho_pair_sum(f, *g1, *g2, ve, ue);
            let expected = (count as i128 - 1) * f.subfield_order() as i128;
            let matches = sum.as_integer() == Some(expected);
            let json = json!({
                "g1": g1,
                "g2": g2,
                "u": u,
                "v": v,
                "count": count,
                "walsh_sum": sum,
                "predicted_walsh_sum": expected,
                "match": matches,
            });
            Report::new(with_field(json, f)).failed_if(!matches)
        }
        Command::Cij { i, j, .. } => {
            let pm = f.subfield_order();
            let cells: Vec<(u64, u64, u64)> = match (i, j) {
                (Some(i), Some(j)) => {
                    let any = make_niho(f.p(), f.m(), 2);
                    vec![(*i, *j, cij_count(f, &any, *i, *j)?)]
                }
                _ => cij_matrix(f)
                    .into_iter()
                    .enumerate()
                    .flat_map(|(i, row)| {
                        row.into_iter()
                            .enumerate()
                            .map(move |(j, c)| (i as u64, j as u64, c))
                    })
                    .collect(),
            };
            let all_match = cells.iter().all(|&(i, j, c)| c == cij_predicted(pm, i, j));
            let entries: Vec<Value> = cells
                .iter()
                .map(|&(i, j, c)| json!({"i": i, "j": j, "count": c, "predicted": cij_predicted(pm, i, j)}))
                .collect();
            let rows = cells
                .iter()
                .map(|&(i, j, c)| {
                    vec![
                        i.to_string(),
                        j.to_string(),
                        c.to_string(),
                        cij_predicted(pm, i, j).to_string(),
                    ]
                })
                .collect();
            let json = json!({
                "entries": entries,
                "total": cells.iter().map(|c| c.2).sum::<u64>(),
                "match": all_match,
            });
            Report::new(with_field(json, f))
                .with_table(Table::new(&["i", "j", "count", "predicted"], rows))
                .failed_if(!all_match)
        }
    };
    Ok(report)
}

#[cfg(feature = "parallel")]
fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(job),
        None => job(),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<T: Send>(_workers: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    job()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common().clone();
    let opts = Options::with_budget(common.budget);
    let outcome = in_pool(common.workers, || {
        let f = build_field(common.p, common.m)?;
        run(&cli.command, &f, &opts)
    });
    let report = match outcome {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    if let Err(msg) = report.emit(common.format, common.output.as_deref()) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
