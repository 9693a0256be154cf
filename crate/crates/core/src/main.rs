//! Command-line front end. One command per process; exit codes are
//! 0 = verified / ok, 1 = refuted, 2 = error or budget exceeded.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use su2_biharmonic::error::VerifyError;
use su2_biharmonic::euclid;
use su2_biharmonic::latex;
use su2_biharmonic::ops::GroupContext;
use su2_biharmonic::parse::parse_poly;
use su2_biharmonic::rep::{build_rep, CoeffMode};
use su2_biharmonic::verify::{self, Budget, Verdict};
use su2_biharmonic::{GaussRat, Poly, Var, ENGINE_VERSION};

#[derive(Parser)]
#[command(
    name = "su2bih",
    version,
    about = "Exact verification of biharmonic rational functions on SU(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OutputFlags {
    /// Emit a machine-readable JSON certificate.
    #[arg(long)]
    json: bool,
    /// Emit LaTeX instead of plain text.
    #[arg(long)]
    latex: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the irreducible representation matrix of dimension n+1.
    Rep {
        n: usize,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Apply the tension field to a polynomial expression.
    Tension {
        expr: String,
        /// Ambient group size (the n of U(n)).
        #[arg(long, default_value_t = 2)]
        ngroup: usize,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Apply the conformality operator to two polynomial expressions.
    Kappa {
        expr1: String,
        expr2: String,
        #[arg(long, default_value_t = 2)]
        ngroup: usize,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Verify biharmonicity of f = P/Q built from columns alpha, beta.
    /// Default checks the parameterized theorem family; --symbolic
    /// keeps p, q fully symbolic and extracts the condition system;
    /// --p/--q evaluate a concrete family.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        /// Comma-separated Gaussian rationals, e.g. "1,1/2,3+4*i".
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// Fully symbolic p, q: extract the condition system.
        #[arg(long)]
        symbolic: bool,
        #[arg(long, default_value_t = 5_000_000)]
        budget_terms: usize,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Machine-test the general-n conjecture for one pair or all pairs.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
        #[arg(long)]
        all_pairs: bool,
        #[arg(long, default_value_t = 5_000_000)]
        budget_terms: usize,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Check the sphere-lift equalities for a family at exact samples.
    Lift {
        /// Family selector "n,alpha,beta", e.g. --family 2,3,1.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Dualize a family to the hyperbolic model and check it there.
    Dual {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Run the built-in golden/property battery.
    Selftest,
}

#[derive(Serialize)]
struct Certificate<T: Serialize> {
    engine_version: &'static str,
    command: String,
    inputs: BTreeMap<String, String>,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(cert: &Certificate<T>) {
    println!("{}", serde_json::to_string_pretty(cert).unwrap());
}

fn parse_gauss_list(s: &str) -> Result<Vec<GaussRat>, String> {
    s.split(',')
        .map(|part| GaussRat::parse(part.trim()).map_err(|e| e.to_string()))
        .collect()
}

fn parse_family(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<_> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("family selector must be n,alpha,beta".into());
    }
    let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.trim().parse()).collect();
    let nums = nums.map_err(|_| "family indices must be integers".to_string())?;
    Ok((nums[0], nums[1], nums[2]))
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn verdict_exit(v: &Verdict) -> ExitCode {
    if v.biharmonic {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_verdict(v: &Verdict) {
    println!(
        "n={} (alpha,beta)=({},{}): harmonic={} biharmonic={} proper_biharmonic={:?}",
        v.n, v.alpha, v.beta, v.harmonic, v.biharmonic, v.proper_biharmonic
    );
    if let Some(w) = &v.witness {
        println!(
            "  witness x=({}) with tau(f)={} and Q={}",
            w.x.join(", "),
            w.tau_value,
            w.q_value
        );
    }
    if let Some(c) = &v.first_failing_condition {
        println!("  REFUTED: {c}");
    }
    for n in &v.notes {
        println!("  note: {n}");
    }
}

fn run_rep(n: usize, out: OutputFlags) -> ExitCode {
    if n == 0 {
        return fail("representation index must be >= 1");
    }
    let rep = build_rep(n);
    if out.json {
        #[derive(Serialize)]
        struct Body {
            n: usize,
            entries: Vec<Vec<Poly>>,
        }
        emit(&Certificate {
            engine_version: ENGINE_VERSION,
            command: "rep".into(),
            inputs: BTreeMap::from([("n".to_string(), n.to_string())]),
            body: Body {
                n,
                entries: rep.entries.clone(),
            },
        });
    } else if out.latex {
        println!("{}", latex::latex_matrix(&rep.entries));
    } else {
        for row in &rep.entries {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            println!("[ {} ]", cells.join(" | "));
        }
    }
    ExitCode::SUCCESS
}

fn run_tension(expr: &str, ngroup: usize, out: OutputFlags) -> ExitCode {
    let f = match parse_poly(expr) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let ctx = GroupContext::new(ngroup);
    match ctx.tau(&f) {
        Ok(t) => {
            if out.json {
                emit(&Certificate {
                    engine_version: ENGINE_VERSION,
                    command: "tension".into(),
                    inputs: BTreeMap::from([
                        ("expr".to_string(), expr.to_string()),
                        ("ngroup".to_string(), ngroup.to_string()),
                    ]),
                    body: BTreeMap::from([("tau".to_string(), t)]),
                });
            } else if out.latex {
                println!("{}", latex::latex_poly(&t));
            } else {
                println!("{t}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn run_kappa(e1: &str, e2: &str, ngroup: usize, out: OutputFlags) -> ExitCode {
    let (f, h) = match (parse_poly(e1), parse_poly(e2)) {
        (Ok(f), Ok(h)) => (f, h),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    let ctx = GroupContext::new(ngroup);
    match ctx.kappa(&f, &h) {
        Ok(k) => {
            if out.latex {
                println!("{}", latex::latex_poly(&k));
            } else if out.json {
                emit(&Certificate {
                    engine_version: ENGINE_VERSION,
                    command: "kappa".into(),
                    inputs: BTreeMap::from([
                        ("expr1".to_string(), e1.to_string()),
                        ("expr2".to_string(), e2.to_string()),
                    ]),
                    body: BTreeMap::from([("kappa".to_string(), k)]),
                });
            } else {
                println!("{k}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

#[derive(Serialize)]
struct VerifyBody {
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition_system: Option<verify::ConditionSystem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_latex: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    n: usize,
    alpha: usize,
    beta: usize,
    p: Option<String>,
    q: Option<String>,
    symbolic: bool,
    budget_terms: usize,
    out: OutputFlags,
) -> ExitCode {
    let budget = Budget {
        max_terms: budget_terms,
    };
    let mut inputs = BTreeMap::from([
        ("n".to_string(), n.to_string()),
        ("alpha".to_string(), alpha.to_string()),
        ("beta".to_string(), beta.to_string()),
        ("budget_terms".to_string(), budget_terms.to_string()),
    ]);
    let result: Result<(Verdict, Option<verify::ConditionSystem>, Option<String>), VerifyError> =
        if let (Some(p), Some(q)) = (&p, &q) {
            inputs.insert("p".to_string(), p.clone());
            inputs.insert("q".to_string(), q.clone());
            let pv = match parse_gauss_list(p) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            let qv = match parse_gauss_list(q) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            verify::verify_concrete(n, alpha, beta, pv, qv, &budget).map(|v| (v, None, None))
        } else if symbolic {
            inputs.insert("mode".to_string(), "symbolic".to_string());
            verify::verify_symbolic(n, alpha, beta, &budget).and_then(|v| {
                let sys = if alpha != beta {
                    Some(verify::extract_conditions(n, alpha, beta, &budget)?)
                } else {
                    None
                };
                Ok((v, sys, None))
            })
        } else {
            inputs.insert("mode".to_string(), "parameterized family".to_string());
            let tau_latex = family_tau_latex(n, alpha, beta, &budget).ok();
            verify::check_conjecture(n, alpha, beta, &budget).map(|v| (v, None, tau_latex))
        };
    match result {
        Ok((verdict, condition_system, tau_latex)) => {
            let exit = verdict_exit(&verdict);
            if out.json {
                emit(&Certificate {
                    engine_version: ENGINE_VERSION,
                    command: "verify".into(),
                    inputs,
                    body: VerifyBody {
                        verdict,
                        condition_system,
                        tau_latex: if out.latex { tau_latex } else { None },
                    },
                });
            } else {
                print_verdict(&verdict);
                if let Some(sys) = &condition_system {
                    println!(
                        "condition system (det^{} and Q^{} divided out, content {}):",
                        sys.det_power, sys.q_power_removed, sys.content
                    );
                    for c in &sys.conditions {
                        println!("  [{}]  {}", c.z_monomial, c.poly_text);
                    }
                }
                if out.latex {
                    if let Some(t) = tau_latex {
                        println!("tau(f) = {t}");
                    }
                }
            }
            exit
        }
        Err(VerifyError::BudgetExceeded { got, budget }) => {
            eprintln!("budget exceeded: {got} terms > {budget}; partial certificate only");
            ExitCode::from(2)
        }
        Err(e) => fail(e),
    }
}

fn family_tau_latex(
    n: usize,
    alpha: usize,
    beta: usize,
    budget: &Budget,
) -> Result<String, VerifyError> {
    let (ps, qs) = verify::parameterized_family(n);
    let fields = verify::family_fields(
        n,
        &CoeffMode::Polys(ps),
        &CoeffMode::Polys(qs),
        alpha,
        beta,
        budget,
    )?;
    Ok(latex::latex_ratfn(&fields.tau_f))
}

fn run_conjecture(
    n: usize,
    alpha: Option<usize>,
    beta: Option<usize>,
    all_pairs: bool,
    budget_terms: usize,
    out: OutputFlags,
) -> ExitCode {
    let budget = Budget {
        max_terms: budget_terms,
    };
    let pairs: Vec<(usize, usize)> = if all_pairs {
        (1..=n + 1)
            .flat_map(|a| (1..=n + 1).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect()
    } else {
        match (alpha, beta) {
            (Some(a), Some(b)) => vec![(a, b)],
            _ => return fail("give --alpha and --beta, or --all-pairs"),
        }
    };
    let mut verdicts = Vec::new();
    for (a, b) in pairs {
        match verify::check_conjecture(n, a, b, &budget) {
            Ok(v) => {
                if !out.json {
                    print_verdict(&v);
                }
                verdicts.push(v);
            }
            Err(VerifyError::BudgetExceeded { got, budget: lim }) => {
                eprintln!(
                    "budget exceeded at pair ({a},{b}): {got} terms > {lim}; partial certificate"
                );
                if out.json {
                    emit(&Certificate {
                        engine_version: ENGINE_VERSION,
                        command: "conjecture".into(),
                        inputs: BTreeMap::from([
                            ("n".to_string(), n.to_string()),
                            ("completed_pairs".to_string(), verdicts.len().to_string()),
                        ]),
                        body: BTreeMap::from([("verdicts".to_string(), verdicts)]),
                    });
                }
                return ExitCode::from(2);
            }
            Err(e) => return fail(e),
        }
    }
    let all_ok = verdicts.iter().all(|v| v.verified());
    if out.json {
        emit(&Certificate {
            engine_version: ENGINE_VERSION,
            command: "conjecture".into(),
            inputs: BTreeMap::from([
                ("n".to_string(), n.to_string()),
                ("all_pairs".to_string(), all_pairs.to_string()),
                ("budget_terms".to_string(), budget_terms.to_string()),
            ]),
            body: BTreeMap::from([("verdicts".to_string(), verdicts)]),
        });
    } else {
        println!(
            "conjecture at n={n}: {}",
            if all_ok { "VERIFIED" } else { "REFUTED" }
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_lift(family: &str, samples: usize, out: OutputFlags) -> ExitCode {
    let (n, alpha, beta) = match parse_family(family) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let budget = Budget::default();
    let (ps, qs) = verify::parameterized_family(n);
    let fields = match verify::family_fields(
        n,
        &CoeffMode::Polys(ps),
        &CoeffMode::Polys(qs),
        alpha,
        beta,
        &budget,
    ) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let inst = verify::default_parameter_instance();
    let fhat = match euclid::embed_su2(&fields.f) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let delta_fhat = euclid::FlatOperator::euclidean().apply(&fhat);
    let mut reports = Vec::new();
    let mut ok = true;
    for x in verify::sphere_points(samples * 4) {
        match euclid::lift_check_sphere(&fields.tau_f, &delta_fhat, &x, &inst) {
            Ok(r) => {
                ok &= r.equal;
                reports.push(r);
            }
            Err(_) => continue,
        }
        if reports.len() >= samples {
            break;
        }
    }
    let bitension_zero = euclid::sphere_bitension(&fhat).num.is_zero();
    if out.json {
        #[derive(Serialize)]
        struct Body {
            samples: Vec<euclid::LiftReport>,
            bitension_identity_zero: bool,
        }
        emit(&Certificate {
            engine_version: ENGINE_VERSION,
            command: "lift".into(),
            inputs: BTreeMap::from([("family".to_string(), family.to_string())]),
            body: Body {
                samples: reports,
                bitension_identity_zero: bitension_zero,
            },
        });
    } else {
        for r in &reports {
            println!(
                "x=({}): group={} flat={} equal={}",
                r.x.join(", "),
                r.group_route,
                r.flat_route,
                r.equal
            );
        }
        println!("flat bitension numerator identically zero: {bitension_zero}");
    }
    if ok && bitension_zero {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_dual(family: &str, out: OutputFlags) -> ExitCode {
    let (n, alpha, beta) = match parse_family(family) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let budget = Budget::default();
    let (ps, qs) = verify::parameterized_family(n);
    let fields = match verify::family_fields(
        n,
        &CoeffMode::Polys(ps),
        &CoeffMode::Polys(qs),
        alpha,
        beta,
        &budget,
    ) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let fhat = match euclid::embed_su2(&fields.f) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let fstar = match euclid::dualize(&fhat) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let bitension_zero = euclid::hyperbolic_bitension(&fstar).num.is_zero();
    let inst = verify::default_parameter_instance();
    let box_fstar = euclid::FlatOperator::minkowski().apply(&fstar);
    let mut values = Vec::new();
    for x in euclid::hyperbolic_points(12) {
        let mut map: BTreeMap<Var, GaussRat> = euclid::x_point_map(&x, 0);
        map.extend(inst.iter().map(|(k, v)| (*k, v.clone())));
        if let Ok(v) = box_fstar.eval(&map) {
            values.push((
                x.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                v.to_string(),
                !v.is_zero(),
            ));
        }
        if values.len() >= 3 {
            break;
        }
    }
    let tau_nonzero = values.iter().all(|(_, _, nz)| *nz) && values.len() >= 3;
    if out.json {
        #[derive(Serialize)]
        struct Body {
            dual_function: String,
            bitension_identity_zero: bool,
            tau_samples: Vec<(Vec<String>, String, bool)>,
        }
        emit(&Certificate {
            engine_version: ENGINE_VERSION,
            command: "dual".into(),
            inputs: BTreeMap::from([("family".to_string(), family.to_string())]),
            body: Body {
                dual_function: fstar.to_string(),
                bitension_identity_zero: bitension_zero,
                tau_samples: values,
            },
        });
    } else {
        println!("f* = {fstar}");
        println!("wave-operator bitension numerator identically zero: {bitension_zero}");
        for (x, v, _) in &values {
            println!("tau(f*) sample at x=({}): {}", x.join(", "), v);
        }
    }
    if bitension_zero && tau_nonzero {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_selftest() -> ExitCode {
    let results = su2_biharmonic::selftest::run();
    let mut all_ok = true;
    for r in &results {
        println!(
            "{} {} ({})",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        all_ok &= r.passed;
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Rep { n, out } => run_rep(n, out),
        Command::Tension { expr, ngroup, out } => run_tension(&expr, ngroup, out),
        Command::Kappa {
            expr1,
            expr2,
            ngroup,
            out,
        } => run_kappa(&expr1, &expr2, ngroup, out),
        Command::Verify {
            n,
            alpha,
            beta,
            p,
            q,
            symbolic,
            budget_terms,
            out,
        } => run_verify(n, alpha, beta, p, q, symbolic, budget_terms, out),
        Command::Conjecture {
            n,
            alpha,
            beta,
            all_pairs,
            budget_terms,
            out,
        } => run_conjecture(n, alpha, beta, all_pairs, budget_terms, out),
        Command::Lift {
            family,
            samples,
            out,
        } => run_lift(&family, samples, out),
        Command::Dual { family, out } => run_dual(&family, out),
        Command::Selftest => run_selftest(),
    }
}
