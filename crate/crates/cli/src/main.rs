//! `forge`: command line front end for the exact Cherednik algebra toolkit.
//!
//! Exit codes: 0 when every selected check passes, 1 when a check fails,
//! 2 for bad input.

mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use forge_core::cherednik::RcaContext;
use forge_core::dunkl::DunklContext;
use forge_core::groups::{find_reflections, GroupSpec};
use forge_core::parse::{parse_element, parse_operator, parse_vector};
use forge_core::scalars::MPoly;
use forge_core::suite::{self, Scale, SuiteOptions, SuiteReport};
use forge_core::{ForgeError, Monomial, Result};
use rayon::prelude::*;
use serde::Serialize;

use load::load_group;

#[derive(Parser)]
#[command(name = "forge", version, about = "Exact rational Cherednik algebra computations and identity checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Define, enumerate and inspect groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Arithmetic in the rational Cherednik algebra.
    #[command(subcommand)]
    Rca(RcaCmd),
    /// Dunkl operators.
    #[command(subcommand)]
    Dunkl(DunklCmd),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Jet calculus.
    #[command(subcommand)]
    Jets(JetsCmd),
    /// Summarize JSON reports written by `verify --json`.
    Report {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Write a group configuration from generator matrices.
    Define {
        #[arg(long)]
        dim: usize,
        /// Root of unity order used by the literals (`z` is exp(2 pi i / N)).
        #[arg(long, default_value_t = 1)]
        cyclotomic_order: u32,
        /// Generator as rows separated by `;`, entries by `,`: "0,1;1,0".
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the elements.
    List {
        #[arg(long)]
        group: String,
    },
    /// Reflections with roots, coroots and classes.
    Reflections {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum RcaCmd {
    /// Product `a * b` in PBW normal form.
    Mul {
        #[arg(long)]
        group: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum DunklCmd {
    /// Print the Dunkl operator `D_xi`.
    Show {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "e1")]
        xi: String,
    },
    /// Apply `D_xi` to a polynomial in `x1, x2, ...`.
    Apply {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "e1")]
        xi: String,
        #[arg(long)]
        f: String,
    },
}

#[derive(Subcommand)]
enum JetsCmd {
    /// Flatness of the Taylor section of an operator along paths of charts.
    FlatCheck {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        order: u32,
        /// Operator in `x1, d1, ...` such as "x1^2*d1".
        #[arg(long)]
        op: String,
        /// `auto` for 20 seeded paths, or a number of paths.
        #[arg(long, default_value = "auto")]
        paths: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SuiteName {
    Pbw,
    DunklCommute,
    DunklEmbed,
    Hc,
    Jets,
    Gluing,
    Induction,
    All,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Record elapsed time per check (makes reports nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    suite: SuiteName,
    /// Group file or built-in name; defaults to the shipped groups.
    #[arg(long)]
    group: Option<String>,
    /// Truncation order (hc: K, jets: reconstruction depth).
    #[arg(long)]
    order: Option<u32>,
    /// Dimension l of the centralizer problem; must match the group.
    #[arg(long)]
    codim: Option<usize>,
    /// Dimension of the slice for the gluing model.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Truncation (K_x, K_y) for the gluing model.
    #[arg(long, default_value = "4,4")]
    orders: String,
    #[arg(long = "G", default_value = "S3")]
    big_g: String,
    #[arg(long = "H", default_value = "S2")]
    big_h: String,
    #[arg(long = "A", default_value = "C[x]/(x^3)")]
    algebra: String,
    /// Small sample sizes.
    #[arg(long)]
    quick: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    tool: &'static str,
    version: &'static str,
    passed: bool,
    reports: &'a [SuiteReport],
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(passed)` or a configuration error.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Group(c) => group_cmd(c).map(|_| true),
        Command::Rca(RcaCmd::Mul { group, a, b }) => {
            let (_, g) = load_group(&group)?;
            let ctx = RcaContext::new(g);
            let x = parse_element(&ctx, &a)?;
            let y = parse_element(&ctx, &b)?;
            println!("{}", ctx.format(&ctx.multiply(&x, &y)?));
            Ok(true)
        }
        Command::Dunkl(c) => dunkl_cmd(c).map(|_| true),
        Command::Verify(args) => verify(args),
        Command::Jets(JetsCmd::FlatCheck { dim, order, op, paths, out }) => {
            if dim == 0 {
                return Err(ForgeError::Invalid("--dim must be positive".into()));
            }
            let op = parse_operator(dim, &op)?;
            let paths = match paths.as_str() {
                "auto" => 20,
                n => n.parse().map_err(|_| ForgeError::Parse(format!("--paths expects 'auto' or a number, got '{n}'")))?,
            };
            let rep = suite::flat_check_suite(&op, dim, order, paths, options(&out));
            emit(&[rep], &out)
        }
        Command::Report { paths } => summarize(&paths),
    }
}

fn options(out: &OutputArgs) -> SuiteOptions {
    SuiteOptions { seed: out.seed, timings: out.timings }
}

fn parse_matrix(s: &str) -> Vec<Vec<String>> {
    s.split(';').map(|row| row.split(',').map(|e| e.trim().to_string()).collect()).collect()
}

fn group_cmd(c: GroupCmd) -> Result<()> {
    match c {
        GroupCmd::Define { dim, cyclotomic_order, generators, out } => {
            let spec = GroupSpec { cyclotomic_order, dim, generators: generators.iter().map(|g| parse_matrix(g)).collect() };
            let g = spec.build(load::group_cap()?)?;
            let text = serde_json::to_string_pretty(&spec).map_err(|e| ForgeError::Invalid(e.to_string()))?;
            match out {
                Some(p) => {
                    std::fs::write(&p, text + "\n").map_err(|e| ForgeError::Invalid(format!("{}: {e}", p.display())))?;
                    println!("wrote {} (order {})", p.display(), g.order());
                }
                None => println!("{text}"),
            }
        }
        GroupCmd::List { group } => {
            let (label, g) = load_group(&group)?;
            println!("{label}: order {}, dimension {}", g.order(), g.dim());
            for (i, m) in g.elements().iter().enumerate() {
                let rows: Vec<String> =
                    m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")).collect();
                println!("g{i}: [{}]", rows.join("; "));
            }
        }
        GroupCmd::Reflections { group } => {
            let (label, g) = load_group(&group)?;
            let refl = find_reflections(&g);
            println!("{label}: {} reflections", refl.len());
            let vec = |v: &[forge_core::CycNum]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            for (k, r) in refl.iter().enumerate() {
                println!(
                    "s{}: g{} class c{} lambda {} root ({}) coroot ({})",
                    k + 1,
                    r.element,
                    r.class + 1,
                    r.lambda,
                    vec(&r.alpha_vee),
                    vec(&r.alpha)
                );
            }
        }
    }
    Ok(())
}

fn dunkl_cmd(c: DunklCmd) -> Result<()> {
    let (group, xi, f) = match c {
        DunklCmd::Show { group, xi } => (group, xi, None),
        DunklCmd::Apply { group, xi, f } => (group, xi, Some(f)),
    };
    let (_, g) = load_group(&group)?;
    let l = g.dim();
    let order = g.cyclotomic_order();
    let ctx = DunklContext::new(RcaContext::new(g));
    let v = parse_vector(&xi, l, order)?;
    let d = ctx.dunkl_operator(&v);
    match f {
        None => println!("{}", ctx.format_op(&d)),
        Some(f) => {
            let op = parse_operator(l, &f)?;
            let mut p = MPoly::zero();
            for ((x, dd), c) in op.terms() {
                if *dd != Monomial::one() {
                    return Err(ForgeError::Parse(format!("'{f}' is not a polynomial")));
                }
                p.add_term(x.clone(), c.clone());
            }
            println!("{}", ctx.format_coeff(&ctx.apply(&d, &ctx.coeff_poly(p))));
        }
    }
    Ok(())
}

type Task = Box<dyn Fn() -> Result<SuiteReport> + Send + Sync>;

fn verify(args: VerifyArgs) -> Result<bool> {
    let opts = options(&args.out);
    let scale = if args.quick { Scale::QUICK } else { Scale::FULL };
    let groups = match &args.group {
        Some(g) => vec![load_group(g)?],
        None => suite::standard_groups(),
    };
    let mut tasks: Vec<Task> = Vec::new();
    let s = args.suite;
    let all = s == SuiteName::All;
    if all && args.group.is_some() {
        return Err(ForgeError::Invalid("verify all runs the shipped inputs; drop --group".into()));
    }
    for (name, g) in &groups {
        let (name, g) = (name.clone(), g.clone());
        if all || s == SuiteName::Pbw {
            let (name, g) = (name.clone(), g.clone());
            tasks.push(Box::new(move || Ok(suite::pbw_suite(&RcaContext::new(g.clone()), &name, scale.pbw_triples, 3, opts))));
        }
        if all || s == SuiteName::DunklCommute {
            let (name, g) = (name.clone(), g.clone());
            tasks.push(Box::new(move || Ok(suite::dunkl_commute_suite(&DunklContext::new(RcaContext::new(g.clone())), &name, opts))));
        }
        if all || s == SuiteName::DunklEmbed {
            tasks.push(Box::new(move || {
                Ok(suite::dunkl_embed_suite(&DunklContext::new(RcaContext::new(g.clone())), &name, scale.embed_pairs, opts))
            }));
        }
    }
    if all || s == SuiteName::Hc {
        let k = args.order.unwrap_or(3);
        let hc_groups = match &args.group {
            Some(g) => vec![load_group(g)?],
            None => suite::hc_groups(),
        };
        for (name, g) in hc_groups {
            if let Some(l) = args.codim {
                if l != g.dim() {
                    return Err(ForgeError::Shape(format!("--codim {l} but the group acts on C^{}", g.dim())));
                }
            }
            tasks.push(Box::new(move || Ok(suite::hc_suite(&RcaContext::new(g.clone()), &name, scale.hc_elements, k, opts))));
        }
    }
    if all || s == SuiteName::Jets {
        let k = args.order.unwrap_or(4);
        tasks.push(Box::new(move || Ok(suite::jets_suite(scale.jet_ops, scale.jet_paths, k, opts))));
    }
    if all || s == SuiteName::Gluing {
        let (kx, ky) = parse_orders(&args.orders)?;
        if args.n < 2 {
            return Err(ForgeError::Invalid("--n must be at least 2".into()));
        }
        let order = match &args.group {
            Some(g) if !all => {
                let (_, g) = load_group(g)?;
                if g.dim() != 1 {
                    return Err(ForgeError::InvalidGroup("the transversal group must act on C^1".into()));
                }
                g.order() as u32
            }
            _ => 2,
        };
        let m = args.n - 1;
        tasks.push(Box::new(move || suite::gluing_suite(m, order, kx, ky, scale.gluing_random, opts)));
    }
    if all || s == SuiteName::Induction {
        let pairs: Vec<(String, String)> = if all {
            vec![("S3".into(), "S2".into()), ("Z4".into(), "Z2".into())]
        } else {
            vec![(args.big_g.clone(), args.big_h.clone())]
        };
        for (g, h) in pairs {
            // fail early on bad names and algebras
            forge_core::induction::standard_pair(&g, &h)?;
            forge_core::induction::parse_algebra(&args.algebra)?;
            let a = args.algebra.clone();
            tasks.push(Box::new(move || suite::induction_suite(&g, &h, &a, scale.induction_triples, scale.induction_pairs, opts)));
        }
    }
    let reports: Vec<SuiteReport> = tasks.par_iter().map(|t| t()).collect::<Result<_>>()?;
    emit(&reports, &args.out)
}

fn parse_orders(s: &str) -> Result<(u32, u32)> {
    let bad = || ForgeError::Parse(format!("--orders expects 'Kx,Ky', got '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Human summary on stdout, JSON to `--json`. Returns whether all passed.
fn emit(reports: &[SuiteReport], out: &OutputArgs) -> Result<bool> {
    let passed = reports.iter().all(|r| r.passed);
    for r in reports {
        println!("{} [{}] {}", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.group);
        for c in &r.checks {
            let time = c.elapsed_ms.map(|t| format!(" {t:.1}ms")).unwrap_or_default();
            println!("  {} {} ({} cases){time}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.cases);
            for res in &c.residuals {
                println!("      {}: {}", res.label, res.dump);
            }
        }
    }
    if let Some(path) = &out.json {
        let file = ReportFile { tool: "forge", version: env!("CARGO_PKG_VERSION"), passed, reports };
        let text = serde_json::to_string_pretty(&file).map_err(|e| ForgeError::Invalid(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| ForgeError::Invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(passed)
}

fn summarize(paths: &[PathBuf]) -> Result<bool> {
    let mut passed = true;
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| ForgeError::Invalid(format!("{}: {e}", p.display())))?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| ForgeError::Parse(format!("{}: {e}", p.display())))?;
        let reports = v["reports"].as_array().ok_or_else(|| ForgeError::Parse(format!("{}: no reports", p.display())))?;
        println!("{}: {} suites", p.display(), reports.len());
        for r in reports {
            let checks = r["checks"].as_array().map(Vec::as_slice).unwrap_or_default();
            let failed = checks.iter().filter(|c| c["passed"] != true).count();
            let ok = r["passed"] == true;
            passed &= ok;
            println!(
                "  {} {} {}: {}/{} checks passed",
                if ok { "PASS" } else { "FAIL" },
                r["suite"].as_str().unwrap_or("?"),
                r["group"].as_str().unwrap_or("?"),
                checks.len() - failed,
                checks.len()
            );
        }
    }
    Ok(passed)
}
