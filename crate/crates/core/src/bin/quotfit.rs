//! Command-line front end: runs the Quot-scheme pipeline chart by chart,
//! re-verifies the worked examples against golden fixtures, and exposes
//! the Macaulay and ideal utilities.
//!
//! Exit codes are a contract: 0 success / certified true, 1 certified
//! false (or not certified), 2 usage / parse errors, 3 resource budget
//! exceeded.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use quotfit::grobner::{ideal_equal, parse_ideal_text, radical_member, Ideal};
use quotfit::macaulay::{macaulay_growth, macaulay_rep};
use quotfit::polyring::{ideal_from_json, ideal_to_json, parse_polynomial};
use quotfit::quotcore::report::{build_report, render_text, ChartReport};
use quotfit::quotcore::{
    analyze_chart, homogenize_chart_ideal, radical_stability_check, GrassmannChart, QuotProblem,
    Stabilization,
};
use quotfit::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "quotfit",
    version,
    about = "Exact Fitting-ideal equations for Quot schemes on Grassmannian charts"
)]
struct Cli {
    /// Worker threads for minor enumeration (0 = library default)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Example {
    /// p=1, r=1, n=2, d=2: all strata vanish on every chart
    #[value(name = "hilb-p1")]
    HilbP1,
    /// p=2, r=1, n=1, d=1: homogenized equations are the Segre quadric
    #[value(name = "p1xp1")]
    P1xP1,
    /// p=3, r=1, n=1, d=1: homogenized equations are the 2x2 minors
    #[value(name = "segre-p3")]
    SegreP3,
    /// p=2, r=2, n=1, d=1: first stratum matches the three quadrics
    #[value(name = "p2-plane")]
    P2Plane,
}

#[derive(Args)]
struct QuotArgs {
    /// Sheaf rank p >= 1
    #[arg(long)]
    p: u32,
    /// Projective-space dimension r >= 1
    #[arg(long)]
    r: u32,
    /// Quotient length n >= 1
    #[arg(long)]
    n: u32,
    /// Starting degree d >= n
    #[arg(long)]
    d: u32,
    /// Number of Fitting strata to accumulate
    #[arg(long, default_value_t = 3)]
    s_max: u32,
    /// Comma-separated pivot indices into the F_d basis (default 0..n)
    #[arg(long)]
    chart_pivots: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also emit the homogenized ideal (n = 1 only)
    #[arg(long)]
    homogenize: bool,
    /// Certify strata 2..=s_max against the radical of the first stratum
    #[arg(long)]
    radical_check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the chart equations of the Quot scheme
    QuotEquations(QuotArgs),
    /// Report where the cumulative Fitting chain stabilizes
    QuotStabilize(QuotArgs),
    /// Recompute a named worked example and certify it against its golden
    QuotVerify {
        #[arg(value_enum)]
        example: Example,
    },
    /// Macaulay representation of n in degree d
    MacaulayRep {
        n: u64,
        d: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Macaulay growth bound n^<d>
    MacaulayGrowth {
        n: u64,
        d: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduced Groebner basis of an ideal file (.json or fixture text)
    IdealGb {
        ideal: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Whether two ideal files generate the same ideal
    IdealEqual { a: PathBuf, b: PathBuf },
    /// Whether a polynomial lies in an ideal
    IdealMember {
        #[arg(long)]
        ideal: PathBuf,
        /// Polynomial in text syntax, or a path to a file containing one
        #[arg(long)]
        poly: String,
    },
    /// Whether a polynomial lies in the radical of an ideal
    IdealRadicalMember {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        poly: String,
    },
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // a failure here only means a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    std::process::exit(match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Resource(_) => 3,
                _ => 2,
            }
        }
    });
}

fn limits() -> Result<Limits, Error> {
    let mut limits = Limits::default();
    if let Ok(cap) = std::env::var("QUOT_MINOR_CAP") {
        limits.minor_cap = cap
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("QUOT_MINOR_CAP={cap} is not a count")))?;
    }
    if let Ok(budget) = std::env::var("QUOT_GB_BUDGET") {
        limits.gb_budget = budget.parse().map_err(|_| {
            Error::InvalidParameter(format!("QUOT_GB_BUDGET={budget} is not a count"))
        })?;
    }
    Ok(limits)
}

fn parse_pivots(args: &QuotArgs) -> Result<Vec<usize>, Error> {
    match &args.chart_pivots {
        None => Ok((0..args.n as usize).collect()),
        Some(spec) => spec
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad pivot index `{tok}`")))
            })
            .collect(),
    }
}

fn chart_report(args: &QuotArgs, limits: &Limits) -> Result<(ChartReport, bool), Error> {
    let problem = QuotProblem::new(args.p, args.r, args.n, args.d)?;
    let pivots = parse_pivots(args)?;
    let chart = GrassmannChart::new(&problem, &pivots)?;
    let analysis = analyze_chart(&chart, args.s_max, limits)?;
    let radical = if args.radical_check {
        Some(radical_stability_check(&chart, args.s_max, limits)?)
    } else {
        None
    };
    let homogenized = if args.homogenize {
        Some(homogenize_chart_ideal(&chart, &analysis.equations, limits)?)
    } else {
        None
    };
    let certified = matches!(analysis.stabilization, Stabilization::Certified { .. });
    let report =
        build_report(&chart, &analysis, args.s_max, radical, homogenized.as_ref());
    Ok((report, certified))
}

fn print_report(report: &ChartReport, format: Format) {
    match format {
        Format::Text => print!("{}", render_text(report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        ),
    }
}

fn read_ideal(path: &Path) -> Result<Ideal, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "json") {
        ideal_from_json(&text)
    } else {
        parse_ideal_text(&text)
    }
}

/// `--poly` accepts inline text or a path to a file holding one polynomial.
fn read_poly_arg(ideal: &Ideal, arg: &str) -> Result<quotfit::polyring::Polynomial, Error> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        parse_polynomial(ideal.ring(), text.trim())
    } else {
        parse_polynomial(ideal.ring(), arg)
    }
}

fn bool_exit(value: bool) -> i32 {
    println!("{value}");
    if value {
        0
    } else {
        1
    }
}

fn run(command: Command) -> Result<i32, Error> {
    let limits = limits()?;
    match command {
        Command::QuotEquations(args) => {
            let (report, _) = chart_report(&args, &limits)?;
            print_report(&report, args.format);
            Ok(0)
        }
        Command::QuotStabilize(args) => {
            let (report, certified) = chart_report(&args, &limits)?;
            print_report(&report, args.format);
            Ok(if certified { 0 } else { 1 })
        }
        Command::QuotVerify { example } => verify(example, &limits),
        Command::MacaulayRep { n, d, format } => {
            let rep = macaulay_rep(n, d)?;
            match format {
                Format::Text => {
                    let sum = (0..rep.parts.len())
                        .map(|j| format!("C({},{})", rep.parts[j], rep.index(j)))
                        .collect::<Vec<_>>()
                        .join(" + ");
                    let sum = if sum.is_empty() { "0".to_string() } else { sum };
                    println!("{n} = {sum}");
                    println!("{n}^<{d}> = {}", rep.growth());
                }
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "n": n,
                        "d": d,
                        "parts": rep.parts,
                        "growth": rep.growth().to_string(),
                    })
                ),
            }
            Ok(0)
        }
        Command::MacaulayGrowth { n, d, format } => {
            let growth = macaulay_growth(n, d)?;
            match format {
                Format::Text => println!("{growth}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "n": n, "d": d, "growth": growth.to_string() })
                ),
            }
            Ok(0)
        }
        Command::IdealGb { ideal, format } => {
            let ideal = read_ideal(&ideal)?;
            let gb = ideal.groebner_basis(&limits)?.to_vec();
            match format {
                Format::Text => {
                    for g in &gb {
                        println!("{g}");
                    }
                }
                Format::Json => {
                    let as_ideal = Ideal::new(ideal.ring(), gb)?;
                    println!("{}", ideal_to_json(&as_ideal));
                }
            }
            Ok(0)
        }
        Command::IdealEqual { a, b } => {
            let a = read_ideal(&a)?;
            let b = read_ideal(&b)?;
            Ok(bool_exit(ideal_equal(&a, &b, &limits)?))
        }
        Command::IdealMember { ideal, poly } => {
            let ideal = read_ideal(&ideal)?;
            let f = read_poly_arg(&ideal, &poly)?;
            Ok(bool_exit(ideal.contains(&f, &limits)?))
        }
        Command::IdealRadicalMember { ideal, poly } => {
            let ideal = read_ideal(&ideal)?;
            let f = read_poly_arg(&ideal, &poly)?;
            Ok(bool_exit(radical_member(&f, &ideal, &limits)?))
        }
    }
}

struct Check {
    label: String,
    pass: bool,
}

fn check(label: impl Into<String>, pass: bool) -> Check {
    Check { label: label.into(), pass }
}

/// Recompute a worked example from scratch and certify it against the
/// golden fixture; fixtures are never used as computation inputs.
fn verify(example: Example, limits: &Limits) -> Result<i32, Error> {
    let mut checks: Vec<Check> = Vec::new();
    match example {
        Example::HilbP1 => {
            let fixture = parse_ideal_text(include_str!("../../fixtures/hilb-p1.ideal"))?;
            let problem = QuotProblem::new(1, 1, 2, 2)?;
            for pivots in GrassmannChart::all_pivot_sets(&problem) {
                let chart = GrassmannChart::new(&problem, &pivots)?;
                let analysis = analyze_chart(&chart, 3, limits)?;
                let zero = analysis.equations.is_zero_ideal();
                if chart.pivots() == [0, 1] {
                    checks.push(check(
                        "default chart ring matches the golden",
                        chart.chart_ring() == fixture.ring(),
                    ));
                }
                checks.push(check(
                    format!("chart {:?}: zero ideal at every stratum", pivots),
                    zero,
                ));
                checks.push(check(
                    format!("chart {:?}: stabilization offset 1", pivots),
                    analysis.stabilization == Stabilization::Certified { offset: 1 },
                ));
            }
        }
        Example::P1xP1 => {
            let fixture = parse_ideal_text(include_str!("../../fixtures/p1xp1.ideal"))?;
            let problem = QuotProblem::new(2, 1, 1, 1)?;
            for pivots in GrassmannChart::all_pivot_sets(&problem) {
                let chart = GrassmannChart::new(&problem, &pivots)?;
                let analysis = analyze_chart(&chart, 3, limits)?;
                if chart.pivots() == [0] {
                    let r = chart.chart_ring();
                    let expected = Ideal::new(r, vec![parse_polynomial(r, "u1*u2 - u3")?])?;
                    checks.push(check(
                        "pivot-0 chart equations are (u1*u2 - u3)",
                        ideal_equal(&analysis.equations, &expected, limits)?,
                    ));
                }
                let hom = homogenize_chart_ideal(&chart, &analysis.equations, limits)?;
                checks.push(check(
                    format!("chart {:?}: homogenized ideal is the golden quadric", pivots),
                    ideal_equal(&hom.ideal, &fixture, limits)?,
                ));
                checks.push(check(
                    format!("chart {:?}: stabilization offset 1", pivots),
                    analysis.stabilization == Stabilization::Certified { offset: 1 },
                ));
            }
        }
        Example::SegreP3 => {
            let fixture = parse_ideal_text(include_str!("../../fixtures/segre-p3.ideal"))?;
            let problem = QuotProblem::new(3, 1, 1, 1)?;
            for pivots in GrassmannChart::all_pivot_sets(&problem) {
                let chart = GrassmannChart::new(&problem, &pivots)?;
                let analysis = analyze_chart(&chart, 3, limits)?;
                let hom = homogenize_chart_ideal(&chart, &analysis.equations, limits)?;
                checks.push(check(
                    format!("chart {:?}: homogenized ideal is the golden minors", pivots),
                    ideal_equal(&hom.ideal, &fixture, limits)?,
                ));
                checks.push(check(
                    format!("chart {:?}: stabilization offset 1", pivots),
                    analysis.stabilization == Stabilization::Certified { offset: 1 },
                ));
            }
        }
        Example::P2Plane => {
            let fixture = parse_ideal_text(include_str!("../../fixtures/p2-plane.ideal"))?;
            let problem = QuotProblem::new(2, 2, 1, 1)?;
            let chart = GrassmannChart::default_chart(&problem)?;
            let analysis = analyze_chart(&chart, 2, limits)?;
            checks.push(check(
                "pivot-0 chart ring matches the golden",
                chart.chart_ring() == fixture.ring(),
            ));
            checks.push(check(
                "first stratum equals the three golden quadrics",
                ideal_equal(&analysis.cumulative[0], &fixture, limits)?,
            ));
            checks.push(check(
                "cumulative ideal equals the three golden quadrics",
                ideal_equal(&analysis.equations, &fixture, limits)?,
            ));
            checks.push(check(
                "stabilization offset 1",
                analysis.stabilization == Stabilization::Certified { offset: 1 },
            ));
            checks.push(check(
                "radical check over strata 2..=3",
                radical_stability_check(&chart, 3, limits)?,
            ));
        }
    }
    let mut all = true;
    for c in &checks {
        println!("{}: {}", if c.pass { "PASS" } else { "FAIL" }, c.label);
        all &= c.pass;
    }
    Ok(if all { 0 } else { 1 })
}
