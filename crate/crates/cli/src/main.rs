use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prudent_core::asymptotics::{constants, growth_estimate_for};
use prudent_core::closed::{
    length_series_closed, three_sided_closed, three_sided_length_closed, triangular_closed, two_sided_closed, Terms,
};
use prudent_core::equations::{
    iterate_1sided, iterate_2sided, iterate_2sided_diagonal, iterate_2sided_refined_sum, iterate_3sided,
    iterate_4sided, iterate_triangular, length_series,
};
use prudent_core::lattice::{enumerate_counts_with, Walk};
use prudent_core::render::{render, Format, RenderOptions};
use prudent_core::sampler::{kinetic_sample_with, rng_for, ExtTable, DEFAULT_BUDGET_BYTES};
use prudent_core::series::SeriesJson;
use prudent_core::verify::{run_verify, VerifyOptions};
use prudent_core::{Error, Execution, Int, TSeries, WalkClass};

/// Exact enumeration, series and random generation of prudent walks.
#[derive(Parser, Debug)]
#[command(name = "prudent", version, about)]
struct Cli {
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of walks of each length.
    Count(CountArgs),
    /// Generating function by iterating the functional equations.
    Series(SeriesArgs),
    /// Series expansion of the explicit solutions.
    Closedform(ClosedArgs),
    /// Asymptotic constants and growth estimates.
    Asym(AsymArgs),
    /// Random walks, uniform or kinetic.
    Sample(SampleArgs),
    /// Draw a walk as SVG or ASCII.
    Render(RenderArgs),
    /// Cross-check all counting routes.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    #[value(name = "one-sided", alias = "1")]
    OneSided,
    #[value(name = "two-sided", alias = "2")]
    TwoSided,
    #[value(name = "three-sided", alias = "3")]
    ThreeSided,
    #[value(name = "prudent", alias = "4")]
    Prudent,
    #[value(name = "triangular", alias = "tri")]
    Triangular,
}

impl From<ClassArg> for WalkClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::OneSided => WalkClass::OneSided,
            ClassArg::TwoSided => WalkClass::TwoSided,
            ClassArg::ThreeSided => WalkClass::ThreeSided,
            ClassArg::Prudent => WalkClass::Prudent4,
            ClassArg::Triangular => WalkClass::Triangular,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    BruteForce,
    Table,
    Iteration,
    Closed,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long, short)]
    class: ClassArg,
    /// Largest length.
    #[arg(long, short = 'n', value_parser = clap::value_parser!(u32).range(0..=2000))]
    max_n: u32,
    #[arg(long, value_enum, default_value = "iteration")]
    route: RouteArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesWhat {
    /// P(t;1).
    Length,
    /// P(t;u) with the class's catalytic statistic.
    POfU,
    /// 2-sided P(t,z;u), z marking X+Y.
    RefinedSum,
    /// 2-sided P(t,z;u), z marking X-Y.
    RefinedDiff,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, short)]
    class: ClassArg,
    /// Truncation order N (coefficients up to t^N).
    #[arg(long, short = 'N', value_parser = clap::value_parser!(u32).range(0..=400))]
    order: u32,
    #[arg(long, value_enum, default_value = "length")]
    what: SeriesWhat,
}

#[derive(Args, Debug)]
struct ClosedArgs {
    #[arg(long, short)]
    class: ClassArg,
    #[arg(long, short = 'N', value_parser = clap::value_parser!(u32).range(1..=1000))]
    order: u32,
    /// Number of summands of the three-sided or triangular sum; default automatic.
    #[arg(long)]
    terms: Option<usize>,
    /// Also expand P(t;u) (two- and three-sided).
    #[arg(long)]
    full: bool,
}

#[derive(Args, Debug)]
struct AsymArgs {
    #[arg(long, short)]
    class: ClassArg,
    /// Also estimate the growth constant from this many closed-form coefficients.
    #[arg(long, value_parser = clap::value_parser!(u32).range(20..=1000))]
    growth_order: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SampleFormat {
    Steps,
    Json,
    Svg,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, short)]
    class: ClassArg,
    /// Walk length.
    #[arg(long, short = 'n', value_parser = clap::value_parser!(u32).range(0..=100_000))]
    length: u32,
    /// Number of walks.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=10_000_000))]
    count: u32,
    /// Walk i is drawn from the ChaCha8 stream i of this seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "steps")]
    format: SampleFormat,
    /// Kinetic sampler (prudent class only) instead of the uniform one.
    #[arg(long)]
    kinetic: bool,
    /// Memory budget for the extension table, in MiB.
    #[arg(long, default_value_t = 2048)]
    budget_mib: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LatticeArg {
    Square,
    Tri,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Steps as letters NESW (square) or digits 0-5 (triangular).
    #[arg(long, conflicts_with = "input")]
    walk: Option<String>,
    /// JSON walk file as written by `sample --format json`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "square")]
    lattice: LatticeArg,
    #[arg(long, value_enum, default_value = "svg")]
    format: RenderFormat,
    #[arg(long)]
    no_grid: bool,
    #[arg(long)]
    no_box: bool,
    /// Pixels per lattice unit.
    #[arg(long, default_value_t = 20.0)]
    scale: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(0..=16))]
    oracle_n: u32,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(0..=200))]
    table_n: u32,
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..=400))]
    series_order: u32,
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..=100))]
    prudent4_order: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=5))]
    box_k: u32,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Error(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<String, Failure>;

/// Iteration for unrestricted prudent walks takes about a minute at this order.
const PRUDENT_MAX_ORDER: usize = 100;

fn counts_json(s: &TSeries<Int>) -> Value {
    Value::from(s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn exec_of(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn cmd_count(a: &CountArgs, exec: Execution) -> Outcome {
    let class = WalkClass::from(a.class);
    let n = a.max_n as usize;
    let counts: Vec<String> = match a.route {
        RouteArg::BruteForce => {
            let cap = if class == WalkClass::Prudent4 || class == WalkClass::Triangular { 13 } else { 16 };
            if n > cap {
                return Err(Error::InvalidInput(format!("brute force is limited to n <= {cap} for {class}")).into());
            }
            enumerate_counts_with(class, n, exec).iter().map(|c| c.to_string()).collect()
        }
        RouteArg::Table => (0..=n)
            .map(|m| ExtTable::build_with(class, m, exec, DEFAULT_BUDGET_BYTES).map(|t| t.total().to_string()))
            .collect::<Result<_, _>>()?,
        RouteArg::Iteration => {
            if class == WalkClass::Prudent4 && n > PRUDENT_MAX_ORDER {
                return Err(Error::InvalidInput(format!(
                    "prudent-walk iteration is limited to n <= {PRUDENT_MAX_ORDER}"
                ))
                .into());
            }
            length_series(class, n)?.coeffs().iter().map(|c| c.to_string()).collect()
        }
        RouteArg::Closed => length_series_closed(class, n)?.coeffs().iter().map(|c| c.to_string()).collect(),
    };
    let route = a.route.to_possible_value().expect("route name").get_name().to_string();
    Ok(pretty(&json!({ "class": class.name(), "route": route, "counts": counts })))
}

fn cmd_series(a: &SeriesArgs) -> Outcome {
    let class = WalkClass::from(a.class);
    let n = a.order as usize;
    if class == WalkClass::Prudent4 && n > PRUDENT_MAX_ORDER {
        return Err(
            Error::InvalidInput(format!("prudent-walk iteration is limited to N <= {PRUDENT_MAX_ORDER}")).into()
        );
    }
    let json = match (a.what, class) {
        (SeriesWhat::Length, _) => SeriesJson::from_tseries(&length_series(class, n)?),
        (SeriesWhat::POfU, WalkClass::OneSided) => SeriesJson::from_tseries(&iterate_1sided(n)?),
        (SeriesWhat::POfU, WalkClass::TwoSided) => SeriesJson::from_cpoly(&iterate_2sided(n)?.p_of_u),
        (SeriesWhat::POfU, WalkClass::ThreeSided) => SeriesJson::from_cpoly(&iterate_3sided(n)?.p_of_u),
        (SeriesWhat::POfU, WalkClass::Prudent4) => SeriesJson::from_cpoly(&iterate_4sided(n)?.p_of_u),
        (SeriesWhat::POfU, WalkClass::Triangular) => SeriesJson::from_cpoly(&iterate_triangular(n)?.p_of_u),
        (SeriesWhat::RefinedSum, WalkClass::TwoSided) => SeriesJson::from_cpoly(&iterate_2sided_refined_sum(n)?),
        (SeriesWhat::RefinedDiff, WalkClass::TwoSided) => SeriesJson::from_cpoly(&iterate_2sided_diagonal(n)?),
        _ => return Err(Error::InvalidInput("refined series exist for two-sided walks only".into()).into()),
    };
    Ok(json.to_string_pretty() + "\n")
}

fn cmd_closed(a: &ClosedArgs) -> Outcome {
    let class = WalkClass::from(a.class);
    let n = a.order as usize;
    let terms = a.terms.map_or(Terms::Auto, Terms::Fixed);
    let mut out = json!({ "class": class.name(), "order": n });
    match class {
        WalkClass::OneSided => out["p1"] = counts_json(&length_series_closed(class, n)?),
        WalkClass::TwoSided => {
            let c = two_sided_closed(n)?;
            out["u"] = counts_json(&c.u);
            out["p1"] = counts_json(&c.p1);
            if a.full {
                out["p_of_u"] = serde_json::to_value(SeriesJson::from_cpoly(&c.p_of_u)).expect("json");
            }
        }
        WalkClass::ThreeSided => {
            let c = if a.full { three_sided_closed(n, terms)? } else { three_sided_length_closed(n, terms)? };
            out["q"] = counts_json(&c.q);
            out["t_1t"] = counts_json(&c.t_1t);
            out["p1"] = counts_json(&c.p1);
            out["summand_valuations"] = json!(c.summand_valuations);
            if let Some(p) = &c.p_of_u {
                out["p_of_u"] = serde_json::to_value(SeriesJson::from_cpoly(p)).expect("json");
            }
        }
        WalkClass::Triangular => {
            let c = triangular_closed(n, terms)?;
            out["y"] = counts_json(&c.y);
            out["r_1t"] = counts_json(&c.r_1t);
            out["p1"] = counts_json(&c.p1);
            out["summands"] = json!(c.summands);
        }
        WalkClass::Prudent4 => return Err(length_series_closed(class, n).unwrap_err().into()),
    }
    Ok(pretty(&out))
}

fn cmd_asym(a: &AsymArgs) -> Outcome {
    let class = WalkClass::from(a.class);
    let mut out = constants(class)?.to_json();
    if let Some(order) = a.growth_order {
        let g = growth_estimate_for(class, order as usize)?;
        let tail = g.extrapolated.len().saturating_sub(5);
        out["growth_estimate"] = json!({
            "order": order,
            "mu_hat": g.mu_hat,
            "raw_ratio": g.raw_ratio,
            "last_extrapolated": &g.extrapolated[tail..],
            "provenance": "empirical",
        });
    }
    Ok(pretty(&out))
}

fn cmd_sample(a: &SampleArgs, exec: Execution) -> Outcome {
    let class = WalkClass::from(a.class);
    let n = a.length as usize;
    let walks: Vec<Walk> = if a.kinetic {
        if class != WalkClass::Prudent4 {
            return Err(Error::InvalidInput("the kinetic sampler generates prudent walks only".into()).into());
        }
        (0..a.count as u64).map(|i| Walk::Square(kinetic_sample_with(n, &mut rng_for(a.seed, i)))).collect()
    } else {
        let budget = a.budget_mib.saturating_mul(1 << 20);
        let table = ExtTable::build_with(class, n, exec, budget)?;
        table.samples(a.count as usize, a.seed, exec)?
    };
    Ok(match a.format {
        SampleFormat::Steps => walks.iter().map(|w| format!("{w}\n")).collect(),
        SampleFormat::Json => {
            let arr: Vec<Value> = walks.iter().map(|w| w.to_json()).collect();
            pretty(&if arr.len() == 1 { arr[0].clone() } else { Value::from(arr) })
        }
        SampleFormat::Svg => {
            if walks.len() != 1 {
                return Err(Error::InvalidInput("SVG output takes --count 1".into()).into());
            }
            render(&walks[0], Format::Svg, &RenderOptions::default())?
        }
    })
}

fn cmd_render(a: &RenderArgs) -> Outcome {
    let walk = match (&a.walk, &a.input) {
        (Some(s), None) => Walk::parse(s, matches!(a.lattice, LatticeArg::Tri))?,
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
            Walk::from_json(&text)?
        }
        _ => return Err(Error::InvalidInput("give either --walk or --input".into()).into()),
    };
    if !(a.scale.is_finite() && a.scale > 0.0) {
        return Err(Error::InvalidInput("scale must be positive".into()).into());
    }
    let opts = RenderOptions { scale: a.scale, grid: !a.no_grid, draw_box: !a.no_box, ..Default::default() };
    let format = match a.format {
        RenderFormat::Svg => Format::Svg,
        RenderFormat::Ascii => Format::Ascii,
    };
    Ok(render(&walk, format, &opts)?)
}

fn cmd_verify(a: &VerifyArgs, exec: Execution) -> Outcome {
    let opts = VerifyOptions {
        oracle_n: a.oracle_n as usize,
        table_n: a.table_n as usize,
        series_order: a.series_order as usize,
        prudent4_order: a.prudent4_order as usize,
        box_k: a.box_k as usize,
        exec,
    };
    let report = run_verify(&opts)?;
    let text = if a.json { pretty(&report.to_json()) } else { report.to_text() };
    if report.all_agree() {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        Error::NonIntegral(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = exec_of(&cli);
    let result = match &cli.command {
        Command::Count(a) => cmd_count(a, exec),
        Command::Series(a) => cmd_series(a),
        Command::Closedform(a) => cmd_closed(a),
        Command::Asym(a) => cmd_asym(a),
        Command::Sample(a) => cmd_sample(a, exec),
        Command::Render(a) => cmd_render(a),
        Command::Verify(a) => cmd_verify(a, exec),
    };
    let (text, code) = match result {
        Ok(t) => (t, 0),
        Err(Failure::Mismatch(t)) => (t, 1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(&cli.output, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
