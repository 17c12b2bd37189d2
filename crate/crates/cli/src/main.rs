//! Command-line driver: every computation in the library behind one
//! reproducible interface. All configuration is flags (no environment,
//! no config files), reals are printed at a fixed digit count, and all
//! accumulation is exact, so output is byte-identical for a fixed
//! command line regardless of the worker count.
//!
//! Exit codes: 0 success, 1 verification-gate failure, 2 usage error,
//! 3 budget-guard refusal.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fareycut::arith::{rational_to_f64, ReducedFraction};
use fareycut::asymptotics::{
    delta_cuts, f_alpha, fundamental_constants, harmonic_residuals, irrational_experiment,
    predict, step_count_mean_coefficients, tail_experiment,
};
use fareycut::contfrac::{cf_statistics, hickerson_sum, minus_cf, regular_cf};
use fareycut::counting::{count_n, count_r, count_r_cases, count_t, pomi_deviation, PomiTail};
use fareycut::dedekind::{dedekind_fast, dedekind_naive};
use fareycut::error::Error;
use fareycut::farey::{aggregate, FareyCutSpec, Side, Statistic};

mod verify;

#[derive(Parser)]
#[command(name = "fareycut", version, about = "Exact Dedekind sums, continued fractions and Farey-cut statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for tabular reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads for the parallel sweeps (default: all cores).
    /// Results are identical for every setting.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Digits used when printing real numbers.
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,

    /// Write the report to this path instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatArg {
    /// Dedekind sum s(x)
    S,
    /// minus-expansion length ℓ(x)
    Ell,
    /// regular-expansion length L(x)
    #[value(name = "L")]
    L,
    /// alternating partial-quotient sum Σ±(x)
    Sigma,
}

impl StatArg {
    fn statistic(self) -> Statistic {
        match self {
            StatArg::S => Statistic::DedekindS,
            StatArg::Ell => Statistic::Ell,
            StatArg::L => Statistic::RegularLen,
            StatArg::Sigma => Statistic::SigmaPm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    /// 𝓕(Q) ∩ [0, α)
    Lower,
    /// 𝓕(Q) ∩ (1−α, 1]
    Complement,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::Lower => Side::Lower,
            SideArg::Complement => Side::UpperComplement,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dedekind sum s(a, b) by all three routes.
    Sum { a: i64, b: u64 },

    /// Regular and minus expansions of v/w with their statistics.
    Cf { v: u64, w: u64 },

    /// Exact cut averages over a Q grid, with two-term predictions.
    Average(AverageArgs),

    /// Run a verification suite; exits 1 if any gate fails.
    Verify(VerifyArgs),

    /// Solution counts of the step-count systems.
    Counts(CountsArgs),

    /// The analytic constants and derived coefficients.
    Constants,

    /// Normalised cut differences Δ, or the convergent-sandwich
    /// experiment when a digit list is given.
    Delta(DeltaArgs),

    /// Exact Dedekind tail sums over the fractions below 1/log Q.
    Tail(GridArg),

    /// Harmonic-sum residual report.
    Residuals(ResidualsArgs),

    /// Modular-inverse window counts against equidistribution.
    Pomi(PomiArgs),
}

#[derive(Args)]
struct AverageArgs {
    /// Statistic to average.
    #[arg(long, value_enum)]
    stat: StatArg,
    /// Cut point v/w (auto-reduced with a warning if not in lowest terms).
    #[arg(long, value_parser = parse_fraction)]
    alpha: ReducedFraction,
    /// Which side of the cut.
    #[arg(long, value_enum, default_value_t = SideArg::Lower)]
    side: SideArg,
    /// Comma-separated strictly increasing orders, e.g. 500,1000,2000.
    #[arg(long)]
    grid: Option<Grid>,
    /// Single order (alternative to --grid).
    #[arg(long)]
    qmax: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_enum)]
    suite: verify::Suite,
    /// Scale of the exhaustive sweeps (suites clamp it to sane ranges).
    #[arg(long)]
    qmax: Option<u64>,
}

#[derive(Args)]
struct CountsArgs {
    /// Which counter: the direct sum N, the eight-variable system T,
    /// the four-variable system R, or the five-case split of R.
    #[arg(long, value_enum)]
    kind: CountKind,
    #[arg(long, value_parser = parse_fraction)]
    alpha: ReducedFraction,
    /// Order bound Q (for N, T, R).
    #[arg(long)]
    qmax: Option<u64>,
    /// Size parameter U for the case split (counts R_α(U²)).
    #[arg(long)]
    ubound: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    N,
    T,
    R,
    Cases,
}

#[derive(Args)]
struct DeltaArgs {
    /// Lower-cut point of Δ(β′, β).
    #[arg(long, value_parser = parse_fraction)]
    beta_prime: Option<ReducedFraction>,
    /// Complement-cut point of Δ(β′, β).
    #[arg(long, value_parser = parse_fraction)]
    beta: Option<ReducedFraction>,
    #[arg(long)]
    qmax: Option<u64>,
    /// Partial quotients of the cut, e.g. 1,1,1,1 (switches to the
    /// convergent-sandwich experiment).
    #[arg(long)]
    cf: Option<DigitList>,
    #[arg(long)]
    grid: Option<Grid>,
}

#[derive(Args)]
struct GridArg {
    #[arg(long)]
    grid: Grid,
}

#[derive(Args)]
struct ResidualsArgs {
    /// Upper limit of the harmonic sums.
    #[arg(long)]
    x: u64,
    /// Cut for the κ_α rows.
    #[arg(long, value_parser = parse_fraction, default_value = "1/3")]
    alpha: ReducedFraction,
}

#[derive(Args)]
struct PomiArgs {
    /// Modulus.
    #[arg(long)]
    p: u64,
    #[arg(long, value_parser = parse_fraction)]
    alpha: ReducedFraction,
    /// Window [x1, x2]; defaults to the full period [0, p].
    #[arg(long)]
    x1: Option<f64>,
    #[arg(long)]
    x2: Option<f64>,
}

fn parse_fraction(s: &str) -> Result<ReducedFraction, String> {
    let raw: Vec<&str> = s.split('/').collect();
    let frac = ReducedFraction::from_str(s).map_err(|e| e.to_string())?;
    if raw.len() == 2 {
        if let (Ok(n), Ok(d)) = (raw[0].trim().parse::<u64>(), raw[1].trim().parse::<u64>()) {
            if d != 0 && (frac.num() != n || frac.den() != d) {
                eprintln!("warning: {s} is not in lowest terms; using {frac}");
            }
        }
    }
    Ok(frac)
}

/// Strictly increasing comma-separated orders.
#[derive(Clone)]
struct Grid(Vec<u64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let grid: Result<Vec<u64>, _> = s.split(',').map(|t| t.trim().parse::<u64>()).collect();
        let grid = grid.map_err(|e| e.to_string())?;
        if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err("grid must be non-empty and strictly increasing".into());
        }
        Ok(Grid(grid))
    }
}

/// Comma-separated positive partial quotients.
#[derive(Clone)]
struct DigitList(Vec<u64>);

impl FromStr for DigitList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let ds: Result<Vec<u64>, _> = s.split(',').map(|t| t.trim().parse::<u64>()).collect();
        let ds = ds.map_err(|e| e.to_string())?;
        if ds.is_empty() || ds.contains(&0) {
            return Err("partial quotients must be positive".into());
        }
        Ok(DigitList(ds))
    }
}

/// A rendered report: fixed column names, pre-formatted cells.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.delimited(","),
            Format::Tsv => self.delimited("\t"),
            Format::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: serde_json::Map<String, serde_json::Value> = self
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                            .collect();
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    fn delimited(&self, sep: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.columns.join(sep));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(sep));
        }
        out
    }
}

fn fmt_f(x: f64, digits: usize) -> String {
    format!("{x:.digits$}")
}

fn opt_f(x: Option<f64>, digits: usize) -> String {
    x.map(|v| fmt_f(v, digits)).unwrap_or_default()
}

fn digit_list(ds: &[u64]) -> String {
    ds.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn run(cli: &Cli) -> Result<Table, Error> {
    let digits = cli.digits;
    match &cli.command {
        Command::Sum { a, b } => {
            let naive = dedekind_naive(*a, *b)?;
            // the other two routes evaluate on the reduced representative
            if *b == 0 {
                return Err(Error::Domain("denominator must be positive".into()));
            }
            let x = ReducedFraction::new(a.rem_euclid(*b as i64) as u64, *b)?;
            let fast = dedekind_fast(x.num() as i64, x.den())?;
            let closed = hickerson_sum(x)?;
            if naive != fast || fast != closed {
                return Err(Error::Domain("internal: Dedekind routes disagree".into()));
            }
            Ok(Table {
                columns: vec!["route", "value", "decimal"],
                rows: vec![
                    vec!["sawtooth-sum".into(), naive.to_string(), fmt_f(rational_to_f64(&naive), digits)],
                    vec!["reciprocity".into(), fast.to_string(), fmt_f(rational_to_f64(&fast), digits)],
                    vec!["closed-form".into(), closed.to_string(), fmt_f(rational_to_f64(&closed), digits)],
                ],
            })
        }
        Command::Cf { v, w } => {
            let x = ReducedFraction::new(*v, *w)?;
            let mut rows = Vec::new();
            if !x.is_one() {
                rows.push(vec!["regular-digits".into(), digit_list(&regular_cf(x)?.digits)]);
            }
            if !x.is_zero() {
                let m = minus_cf(x)?;
                rows.push(vec!["minus-digits".into(), digit_list(&m.digits)]);
                rows.push(vec!["ell".into(), m.len().to_string()]);
            }
            if !x.is_zero() && !x.is_one() {
                let st = cf_statistics(x)?;
                rows.push(vec!["L".into(), st.len.to_string()]);
                rows.push(vec!["sigma-odd".into(), st.sigma_odd.to_string()]);
                rows.push(vec!["sigma-even".into(), st.sigma_even.to_string()]);
                rows.push(vec!["sigma-pm".into(), st.sigma_pm.to_string()]);
                rows.push(vec!["eps".into(), st.eps.to_string()]);
            }
            if !x.is_one() {
                rows.push(vec!["dedekind-s".into(), hickerson_sum(x)?.to_string()]);
            }
            Ok(Table {
                columns: vec!["field", "value"],
                rows,
            })
        }
        Command::Average(args) => {
            let grid = grid_or_single(&args.grid, args.qmax)?;
            let stat = args.stat.statistic();
            let side = args.side.side();
            let mut rows = Vec::new();
            for &q in &grid {
                let report = aggregate(
                    &FareyCutSpec {
                        q_max: q,
                        alpha: args.alpha,
                        side,
                    },
                    stat,
                );
                let pred = predict(stat, args.alpha, q, side).ok();
                let residual = pred.as_ref().map(|p| report.mean - p.main_terms);
                rows.push(vec![
                    q.to_string(),
                    report.count.to_string(),
                    report.cut_count.to_string(),
                    report.total.to_string(),
                    fmt_f(report.mean, digits),
                    opt_f(pred.as_ref().map(|p| p.main_terms), digits),
                    opt_f(residual, digits),
                ]);
            }
            Ok(Table {
                columns: vec!["q", "count", "cut_count", "total", "mean", "predicted", "residual"],
                rows,
            })
        }
        Command::Verify(_) => unreachable!("verify is dispatched in main"),
        Command::Counts(args) => counts(args),
        Command::Constants => {
            let c = fundamental_constants();
            let (c1, c2) = step_count_mean_coefficients();
            let mut rows = vec![
                vec!["zeta2".into(), fmt_f(c.zeta2, digits), c.notes[0].into()],
                vec!["zeta_prime2".into(), fmt_f(c.zeta_prime2, digits), c.notes[1].into()],
                vec!["euler_gamma".into(), fmt_f(c.euler_gamma, digits), c.notes[2].into()],
                vec!["step_count_c1".into(), fmt_f(c1, digits), "leading mean step-count coefficient".into()],
                vec!["step_count_c2".into(), fmt_f(c2, digits), "second mean step-count coefficient".into()],
            ];
            for alpha in [
                ReducedFraction::new(1, 2).unwrap(),
                ReducedFraction::new(1, 3).unwrap(),
                ReducedFraction::new(2, 5).unwrap(),
            ] {
                rows.push(vec![
                    format!("F({alpha})"),
                    fmt_f(f_alpha(alpha)?, digits),
                    "cut-bias constant".into(),
                ]);
            }
            Ok(Table {
                columns: vec!["constant", "value", "note"],
                rows,
            })
        }
        Command::Delta(args) => delta(args, digits),
        Command::Tail(args) => {
            let mut rows = Vec::new();
            for &q in &args.grid.0 {
                let t = tail_experiment(q)?;
                let loglog = (q as f64).ln().ln();
                rows.push(vec![
                    q.to_string(),
                    t.set_size.to_string(),
                    t.farey_count.to_string(),
                    t.sum_s_a_b.to_string(),
                    t.sum_s_b_a.to_string(),
                    fmt_f(t.normalized_residual, digits),
                    fmt_f(t.normalized_residual / loglog, digits),
                    fmt_f(t.bound_ratio, digits),
                ]);
            }
            Ok(Table {
                columns: vec![
                    "q", "set_size", "farey_count", "sum_s_a_b", "sum_s_b_a",
                    "normalized_residual", "residual_over_loglog", "bound_ratio",
                ],
                rows,
            })
        }
        Command::Residuals(args) => {
            let rows = harmonic_residuals(args.x, args.alpha)?
                .into_iter()
                .map(|r| {
                    vec![
                        r.id.to_string(),
                        fmt_f(r.x, 0),
                        fmt_f(r.lhs, digits),
                        fmt_f(r.rhs, digits),
                        fmt_f(r.residual, digits),
                        fmt_f(r.scaled, digits),
                        r.scale_desc.to_string(),
                    ]
                })
                .collect();
            Ok(Table {
                columns: vec!["identity", "x", "lhs", "rhs", "residual", "scaled", "scale"],
                rows,
            })
        }
        Command::Pomi(args) => {
            let x1 = args.x1.unwrap_or(0.0);
            let x2 = args.x2.unwrap_or(args.p as f64);
            let mut rows = Vec::new();
            for (tail, name) in [(PomiTail::Lower, "lower"), (PomiTail::Upper, "upper")] {
                let r = pomi_deviation(args.p, args.alpha, x1, x2, tail)?;
                rows.push(vec![
                    name.into(),
                    args.p.to_string(),
                    args.alpha.to_string(),
                    r.count.to_string(),
                    fmt_f(r.main, digits),
                    fmt_f(r.deviation, digits),
                ]);
            }
            Ok(Table {
                columns: vec!["tail", "p", "alpha", "count", "main", "deviation"],
                rows,
            })
        }
    }
}

fn grid_or_single(grid: &Option<Grid>, qmax: Option<u64>) -> Result<Vec<u64>, Error> {
    match (grid, qmax) {
        (Some(g), None) => Ok(g.0.clone()),
        (None, Some(q)) => Ok(vec![q]),
        _ => Err(Error::Domain("give exactly one of --grid or --qmax".into())),
    }
}

fn counts(args: &CountsArgs) -> Result<Table, Error> {
    let columns = vec!["kind", "bound", "alpha", "value", "method"];
    let row = |kind: &str, bound: u64, value: u64, method: &str| {
        vec![
            kind.into(),
            bound.to_string(),
            args.alpha.to_string(),
            value.to_string(),
            method.into(),
        ]
    };
    match args.kind {
        CountKind::N => {
            let q = need_qmax(args)?;
            let c = count_n(q, args.alpha);
            Ok(Table {
                columns,
                rows: vec![row("N", q, c.value, "direct-sum")],
            })
        }
        CountKind::T => {
            let q = need_qmax(args)?;
            let c = count_t(q, args.alpha)?;
            Ok(Table {
                columns,
                rows: vec![row("T", q, c.value, "eight-var")],
            })
        }
        CountKind::R => {
            let q = need_qmax(args)?;
            let c = count_r(q, args.alpha);
            Ok(Table {
                columns,
                rows: vec![row("R", q, c.value, "four-var")],
            })
        }
        CountKind::Cases => {
            let u = args
                .ubound
                .ok_or_else(|| Error::Domain("--ubound is required for the case split".into()))?;
            let split = count_r_cases(u, args.alpha)?;
            let mut rows: Vec<Vec<String>> = split
                .cases
                .iter()
                .enumerate()
                .map(|(i, &v)| row(&format!("case{}", i + 1), u, v, "case-split"))
                .collect();
            rows.push(row("total", u, split.total(), "case-split"));
            Ok(Table { columns, rows })
        }
    }
}

fn need_qmax(args: &CountsArgs) -> Result<u64, Error> {
    args.qmax
        .ok_or_else(|| Error::Domain("--qmax is required for this counter".into()))
}

fn delta(args: &DeltaArgs, digits: usize) -> Result<Table, Error> {
    match (&args.cf, &args.beta, &args.beta_prime) {
        (Some(cf), None, None) => {
            let grid = args
                .grid
                .clone()
                .ok_or_else(|| Error::Domain("--grid is required with --cf".into()))?;
            let rows = irrational_experiment(&cf.0, &grid.0)?
                .into_iter()
                .map(|r| {
                    vec![
                        r.q_max.to_string(),
                        r.beta.to_string(),
                        r.beta_prime.to_string(),
                        fmt_f(r.delta_upper, digits),
                        fmt_f(r.delta_lower, digits),
                        fmt_f(r.twelve_mean_s, digits),
                        fmt_f(r.ratio_to_log, digits),
                        fmt_f(r.slack, digits),
                        r.sandwich_ok.to_string(),
                    ]
                })
                .collect();
            Ok(Table {
                columns: vec![
                    "q", "beta", "beta_prime", "delta_upper", "delta_lower",
                    "twelve_mean_s", "ratio_to_log", "slack", "sandwich_ok",
                ],
                rows,
            })
        }
        (None, Some(beta), Some(beta_prime)) => {
            let q = args
                .qmax
                .ok_or_else(|| Error::Domain("--qmax is required with --beta".into()))?;
            let up = delta_cuts(*beta_prime, *beta, q);
            let lo = delta_cuts(*beta, *beta_prime, q);
            Ok(Table {
                columns: vec!["q", "beta", "beta_prime", "delta_upper", "delta_lower"],
                rows: vec![vec![
                    q.to_string(),
                    beta.to_string(),
                    beta_prime.to_string(),
                    fmt_f(up.value, digits),
                    fmt_f(lo.value, digits),
                ]],
            })
        }
        _ => Err(Error::Domain(
            "give either --cf with --grid, or --beta and --beta-prime with --qmax".into(),
        )),
    }
}

fn emit(table: &Table, cli: &Cli) -> Result<(), ExitCode> {
    let rendered = table.render(cli.format);
    match &cli.out {
        None => print!("{rendered}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return Err(ExitCode::from(2));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let outcome = match &cli.command {
        Command::Verify(args) => verify::run_suite(args.suite, args.qmax, cli.digits)
            .map(|(table, ok)| (table, if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })),
        _ => run(&cli).map(|table| (table, ExitCode::SUCCESS)),
    };
    match outcome {
        Ok((table, code)) => match emit(&table, &cli) {
            Ok(()) => code,
            Err(code) => code,
        },
        Err(Error::Budget {
            name,
            limit,
            requested,
        }) => {
            eprintln!("error: {name} allows at most {limit}, got {requested}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
