use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use rmtest::algebra::{parse_polynomial, parse_u32_list, Field, Polynomial, Ring};
use rmtest::battery::run_suite;
use rmtest::combin::{combin_table, n_q};
use rmtest::error::{EnumerationSize, Error, Result};
use rmtest::estimator::{exact_or_sample, Budget, Evaluation, ExactProb, Mode};
use rmtest::genbasis::{to_generalized, FieldOrdering};
use rmtest::multtests::{
    exact_acceptance_probability, exact_akklr, exact_corr_h, floor_log, le_root,
    robust_distance_experiment, robust_reduction_check, sampled_acceptance, sampled_akklr,
    sampled_corr_h, soundness_bound, TestConfig, UnivariatePoly, DEFAULT_CQ,
};
use rmtest::report::{check_relation, flatten};
use rmtest::rmcode::{distance, CodeParams};
use rmtest::setmultilin::{random_system, system_vanishing_probability};
use rmtest::sztest::{degree_drop_probability, tight_witness, SzMode, SzQuery};

/// Exact and sampled experiments on Reed-Muller membership tests.
#[derive(Parser)]
#[command(name = "rmtest", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Master seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration budget (default: RMTEST_BUDGET, else 2^24).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the JSON report to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Also write a CSV rendering of the report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Suppress stdout output.
    #[arg(long, global = true)]
    quiet: bool,
    /// Relation the report must satisfy, e.g. "p_hat <= bound"; repeatable.
    #[arg(long, global = true, value_name = "RELATION")]
    expect: Vec<String>,
}

#[derive(Args, Clone)]
struct SampleArgs {
    /// Enumerate exactly.
    #[arg(long, conflicts_with = "trials")]
    exact: bool,
    /// Monte Carlo trials; without --exact or --trials, exact enumeration is
    /// used when it fits the budget and 10000 trials otherwise.
    #[arg(long)]
    trials: Option<u64>,
}

const DEFAULT_TRIALS: u64 = 10_000;

#[derive(Args)]
struct TestArgs {
    /// Polynomial file in the text format.
    #[arg(long)]
    poly: PathBuf,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    e: u32,
    #[arg(long)]
    k: Option<u32>,
    #[command(flatten)]
    sample: SampleArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Degree-drop probability of f P against its bounds.
    Sz {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Degree of the tight witness used when --poly is absent.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        poly: Option<PathBuf>,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// N_q, |U_s(m)| and |D_s(m)| tables as CSV.
    Combin {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Generalized-monomial coefficients of a polynomial.
    BasisDump {
        #[arg(long)]
        poly: PathBuf,
        /// Field ordering xi_0,...,xi_{q-1}; defaults to 0,1,...,q-1.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Distance to P_q(n, d) and a nearest codeword.
    Distance {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        d: u32,
    },
    /// Test_{e,k}: accept iff f P_1 ... P_k lies in P_q(n, d + ek).
    TestEk {
        #[command(flatten)]
        args: TestArgs,
        /// The constant c_q of the soundness bound.
        #[arg(long, default_value_t = DEFAULT_CQ, allow_negative_numbers = true)]
        cq: i64,
        /// L for the lower bound q^{-N_q(L,e)}; defaults to floor(log_q Delta).
        #[arg(long)]
        l: Option<u32>,
    },
    /// Corr-h: accept iff f h(P) lies in P_q(n, d + ek).
    CorrH {
        #[command(flatten)]
        args: TestArgs,
        /// Coefficients of h from the constant term up, comma separated.
        #[arg(long)]
        h: String,
    },
    /// Distance of f P to P_q(n, d + e) over the multipliers P.
    Robust {
        #[command(flatten)]
        args: TestArgs,
        /// Thresholds for the exact reduction check, comma separated.
        #[arg(long)]
        delta_prime: Option<String>,
    },
    /// Restriction to a random (d+1)-dimensional affine subspace.
    Akklr {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Vanishing probabilities of random partitioned systems.
    Setmultilin {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        blocks: usize,
        #[arg(long, default_value_t = 2)]
        polys: usize,
        #[arg(long, default_value_t = 3)]
        terms: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Runs the acceptance battery; table on stderr, JSON on stdout.
    Suite,
}

enum Output {
    Json(Value),
    Text(String),
    /// A report whose `passed` field decides the exit code.
    Verdict(Value),
}

fn read_poly(path: &Path) -> Result<Polynomial> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parameter(format!("{}: {e}", path.display())))?;
    parse_polynomial(&text)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn eval_fields(ev: &Evaluation) -> Value {
    json!({
        "mode": ev.mode,
        "accept_count": ev.accept_count,
        "total": ev.total,
        "p_hat": ev.p_hat,
        "ci_low": ev.ci_low,
        "ci_high": ev.ci_high,
        "seed": ev.seed,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

/// Runs exact enumeration or sampling as requested, or dispatches on the
/// budget when neither is forced.
fn evaluate<E, S>(
    sample: &SampleArgs,
    size: EnumerationSize,
    budget: Budget,
    exact: E,
    sampled: S,
) -> Result<Evaluation>
where
    E: FnOnce() -> Result<ExactProb>,
    S: FnOnce(u64) -> Result<rmtest::estimator::EstimateResult>,
{
    if sample.exact {
        return Ok(Evaluation::exact(exact()?));
    }
    if let Some(t) = sample.trials {
        return Ok(Evaluation::sampled(&sampled(t)?));
    }
    exact_or_sample(size, budget, exact, || sampled(DEFAULT_TRIALS))
}

fn test_config(f: &Polynomial, a: &TestArgs, k: u32) -> Result<TestConfig> {
    let ring = f.ring();
    TestConfig::new(CodeParams::for_ring(&ring, a.d)?, a.e, k)
}

/// Distance of `f` to the tested code, when it fits the budget.
fn far_distance(f: &Polynomial, code: &CodeParams, budget: Budget) -> Result<Option<u64>> {
    match distance(f, code, budget.get()) {
        Ok(r) => Ok(Some(r.distance)),
        Err(Error::Infeasible { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let budget = Budget::resolve(g.budget)?;
    let seed = g.seed;
    match &cli.command {
        Command::Sz {
            q,
            n,
            d,
            e,
            s,
            poly,
            sample,
        } => {
            let ring = Ring::new(*q, *n)?;
            let f = match (poly, d) {
                (Some(p), _) => read_poly(p)?,
                (None, Some(d)) => tight_witness(ring, *d, &FieldOrdering::natural(ring.field()))?,
                (None, None) => return Err(Error::Parameter("sz needs --poly or --d".into())),
            };
            if f.ring().q() != ring.q() || f.ring().n() != ring.n() {
                return Err(Error::ParameterMismatch {
                    left: f.ring().to_string(),
                    right: ring.to_string(),
                });
            }
            let query = SzQuery::new(f.clone(), *e, *s)?;
            let mode = if sample.exact
                || (sample.trials.is_none() && query.enumeration_size().fits(budget.get()))
            {
                SzMode::Exact
            } else {
                SzMode::Sampled {
                    trials: sample.trials.unwrap_or(DEFAULT_TRIALS),
                    seed,
                }
            };
            let rep = degree_drop_probability(&query, mode, budget)?;
            let extra = json!({
                "f": f.to_string(),
                "p_hat": rep.probability.p_hat,
                "equal": rep.probability.exact_prob().map(|p| p.eq_inv_pow(rep.q, rep.u_lm)),
            });
            Ok(Output::Json(merge(to_value(&rep), extra)))
        }
        Command::Combin { q, n } => {
            let rows = combin_table(*q, *n)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)
                    .map_err(|e| Error::Parameter(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Parameter(e.to_string()))?;
            Ok(Output::Text(String::from_utf8(bytes).expect("utf-8 csv")))
        }
        Command::BasisDump { poly, ordering } => {
            let f = read_poly(poly)?;
            let field = f.ring().field();
            let ord = match ordering {
                Some(s) => FieldOrdering::new(field, parse_u32_list(s)?)?,
                None => FieldOrdering::natural(field),
            };
            Ok(Output::Text(to_generalized(&f, &ord)?.dump()))
        }
        Command::Distance { poly, d } => {
            let f = read_poly(poly)?;
            let code = CodeParams::for_ring(&f.ring(), *d)?;
            Ok(Output::Json(to_value(&distance(&f, &code, budget.get())?)))
        }
        Command::TestEk { args, cq, l } => {
            let f = read_poly(&args.poly)?;
            let cfg = test_config(&f, args, args.k.unwrap_or(1))?;
            let size = EnumerationSize::new(
                u64::from(cfg.code.q),
                cfg.multiplier_dimension() * u64::from(cfg.k),
            );
            let ev = evaluate(
                &args.sample,
                size,
                budget,
                || exact_acceptance_probability(&f, &cfg, budget),
                |t| sampled_acceptance(&f, &cfg, t, seed),
            )?;
            let delta = far_distance(&f, &cfg.code, budget)?;
            let q = f64::from(cfg.code.q);
            let mut report = merge(json!({ "params": cfg }), eval_fields(&ev));
            let l = l.or_else(|| delta.filter(|&d| d > 0).map(|d| floor_log(cfg.code.q, d)));
            let n_l = l.map(|l| n_q(cfg.code.q, i64::from(l), i64::from(cfg.e)) as f64);
            let extra = match delta {
                Some(0) => json!({ "bound": 1.0, "bound_vacuous": true }),
                Some(delta) => {
                    let b = soundness_bound(&cfg, delta, *cq)?;
                    json!({ "bound": b.bound, "bound_vacuous": b.vacuous, "soundness": b })
                }
                None => json!({ "bound": null, "bound_vacuous": null }),
            };
            let extra = merge(
                extra,
                json!({
                    "delta": delta,
                    "l": l,
                    "lower_bound": n_l.map(|x| q.powf(-x)),
                    "exact_degree_bound": n_l.map(|x| f64::from(cfg.k) * q.powf(-x)),
                }),
            );
            report = merge(report, extra);
            Ok(Output::Json(report))
        }
        Command::CorrH { args, h } => {
            let f = read_poly(&args.poly)?;
            let coeffs: Vec<u64> = parse_u32_list(h)?.into_iter().map(u64::from).collect();
            let h = UnivariatePoly::new(f.ring().field(), &coeffs)?;
            let k = args.k.unwrap_or(h.degree());
            let cfg = test_config(&f, args, k)?;
            let size = EnumerationSize::new(u64::from(cfg.code.q), cfg.multiplier_dimension());
            let ev = evaluate(
                &args.sample,
                size,
                budget,
                || exact_corr_h(&f, &cfg, &h, budget),
                |t| sampled_corr_h(&f, &cfg, &h, t, seed),
            )?;
            let reference = match exact_acceptance_probability(&f, &cfg, budget) {
                Ok(p) => Some(p),
                Err(Error::Infeasible { .. }) => None,
                Err(e) => return Err(e),
            };
            let bound = reference.map(|p| p.to_f64().powf(1.0 / f64::from(1u32 << k)));
            let consistent = match (ev.exact_prob(), reference) {
                (Some(a), Some(b)) => Some(le_root(a, b, k)),
                _ => None,
            };
            let report = merge(json!({ "params": cfg, "h": h.coeffs() }), eval_fields(&ev));
            Ok(Output::Json(merge(
                report,
                json!({
                    "bound": bound,
                    "bound_vacuous": bound.map(|b| b >= 1.0),
                    "test_e_k": reference,
                    "consistent": consistent,
                }),
            )))
        }
        Command::Robust { args, delta_prime } => {
            let f = read_poly(&args.poly)?;
            let cfg = test_config(&f, args, args.k.unwrap_or(1))?;
            let size = EnumerationSize::new(u64::from(cfg.code.q), cfg.multiplier_dimension());
            let exact =
                args.sample.exact || (args.sample.trials.is_none() && size.fits(budget.get()));
            let trials = (!exact).then(|| (args.sample.trials.unwrap_or(DEFAULT_TRIALS), seed));
            let summary = robust_distance_experiment(&f, &cfg, trials, budget)?;
            let at_zero = summary.histogram.get(&0).copied().unwrap_or(0);
            let ev = match summary.mode {
                Mode::Exact => Evaluation::exact(ExactProb::new(at_zero, summary.samples)),
                Mode::Sampled => Evaluation::sampled(
                    &rmtest::estimator::EstimateResult::from_counts(at_zero, summary.samples, seed),
                ),
            };
            let reductions = match delta_prime {
                Some(list) => parse_u32_list(list)?
                    .into_iter()
                    .map(|dp| robust_reduction_check(&f, cfg.code, cfg.e, u64::from(dp), budget))
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let holds = reductions.iter().all(|r| r.holds);
            let report = merge(json!({ "params": cfg }), eval_fields(&ev));
            Ok(Output::Json(merge(
                report,
                json!({
                    "bound": null,
                    "bound_vacuous": null,
                    "distances": summary,
                    "reductions": reductions,
                    "reductions_hold": holds,
                }),
            )))
        }
        Command::Akklr { poly, d, sample } => {
            let f = read_poly(poly)?;
            let code = CodeParams::for_ring(&f.ring(), *d)?;
            let (n, k) = (code.n as u64, u64::from(*d) + 1);
            let size = EnumerationSize::new(u64::from(code.q), n * (k + 1));
            let ev = evaluate(
                sample,
                size,
                budget,
                || exact_akklr(&f, &code, budget),
                |t| sampled_akklr(&f, &code, t, seed),
            )?;
            let report = merge(json!({ "params": code }), eval_fields(&ev));
            Ok(Output::Json(merge(
                report,
                json!({ "bound": null, "bound_vacuous": null }),
            )))
        }
        Command::Setmultilin {
            q,
            vars,
            blocks,
            polys,
            terms,
            count,
        } => {
            let field = Field::new(*q)?;
            let mut runs = Vec::new();
            for i in 0..*count {
                let mut rng = rmtest::estimator::stream_rng(seed, i);
                let sys = random_system(field, *vars, *blocks, *polys, *terms, &mut rng)?;
                let rep = system_vanishing_probability(&sys, budget.get())?;
                let shown: Vec<String> = sys.polys.iter().map(ToString::to_string).collect();
                runs.push(merge(to_value(&rep), json!({ "system": shown })));
            }
            let holds = runs.iter().all(|r| r["holds"] == Value::Bool(true));
            Ok(Output::Json(
                json!({ "q": q, "vars": vars, "blocks": blocks, "runs": runs, "holds": holds }),
            ))
        }
        Command::Suite => {
            let rep = run_suite(seed, budget)?;
            if !g.quiet {
                eprint!("{}", rep.table());
            }
            Ok(Output::Verdict(to_value(&rep)))
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Parameter(format!("{}: {e}", path.display())))
}

fn csv_text(report: &Value) -> Result<String> {
    let cells = flatten(report);
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parameter(e.to_string());
    w.write_record(cells.iter().map(|(k, _)| k)).map_err(err)?;
    w.write_record(cells.iter().map(|(_, v)| v)).map_err(err)?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Parameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 csv"))
}

fn emit(g: &Global, out: &Output) -> Result<bool> {
    match out {
        Output::Text(text) => {
            if let Some(p) = &g.csv {
                write_file(p, text)?;
            }
            if !g.quiet {
                print!("{text}");
            }
            if !g.expect.is_empty() {
                return Err(Error::Parameter(
                    "this subcommand has no report to check".into(),
                ));
            }
            Ok(true)
        }
        Output::Verdict(report) => {
            let ok = emit(g, &Output::Json(report.clone()))?;
            Ok(ok && report["passed"] == Value::Bool(true))
        }
        Output::Json(report) => {
            let text = serde_json::to_string_pretty(report).expect("json") + "\n";
            match &g.json {
                Some(p) => write_file(p, &text)?,
                None if !g.quiet => {
                    let mut out = std::io::stdout().lock();
                    let _ = out.write_all(text.as_bytes());
                }
                None => {}
            }
            if let Some(p) = &g.csv {
                write_file(p, &csv_text(report)?)?;
            }
            let mut ok = true;
            for rel in &g.expect {
                let held = check_relation(report, rel)?;
                if !held {
                    eprintln!("relation failed: {rel}");
                }
                ok &= held;
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli.global, &out)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::Infeasible { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
