//! `cpap`: enumeration, cluster tables, equations, poles and growth
//! estimates for consecutive-pattern-avoiding permutations.
//!
//! Exit codes: 0 success, 2 a check failed, 3 a resource budget was hit (the
//! completed prefix is still written), 4 bad input or a domain error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cpap_core::analytic::{
    algebraic_verify, dfinite_fit, hp, hypergeometric_series, iterate_t, ode_library, ode_series_solve,
    pole_chain, t_from_g, tree_witness, v_constant, LinearODE, OdeSource, PoleMode,
};
use cpap_core::asymptotics::{
    ratio_extrapolate, reference_values, estimate_series, EstimateConfig, RatioSequence, ResultRow, ResultsTable,
};
use cpap_core::cluster::{gj_invert, OverlapFamily};
use cpap_core::dp::{cached_count_series, count_series_with, DpConfig, Engine, SeriesCache};
use cpap_core::perm::{brute_count, ClassId, Pattern};
use cpap_core::series::{CountSeries, SeriesDocument, TruncatedSeries};
use cpap_core::verify::{Profile, SeriesSource, Suite};
use cpap_core::Error;

const EXIT_CHECK: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_DOMAIN: u8 = 4;

#[derive(Parser)]
#[command(name = "cpap", version, about = "Consecutive-pattern-avoiding permutations")]
struct Cli {
    /// Directory for cached count series.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count avoiders c_0..c_N.
    Enumerate(EnumerateArgs),
    /// Cluster numbers s_{n,k} from a recurrence.
    Clusters(ClusterArgs),
    /// Cluster series T(x) of 1 m 2 ... (m-1) by iterating its functional equation.
    Iterate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Poles of the cluster series of 1 m 2 ... (m-1).
    Poles {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        depth: usize,
        /// Every branch instead of the single chain.
        #[arg(long)]
        all: bool,
        /// Decimal digits printed per coordinate.
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// The constant v, the limit of the exact iterates.
    V {
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Known linear ODEs: series solutions and fitting.
    Ode {
        #[command(subcommand)]
        action: OdeAction,
    },
    /// Check a polynomial relation P(x, T) = 0 on a cluster series.
    Algverify {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 60)]
        order: usize,
        /// Also check the hypergeometric form of T.
        #[arg(long)]
        hypergeometric: bool,
    },
    /// Growth constant and amplitude estimates.
    Asymptotics(AsymptoticsArgs),
    /// Run all eleven verification criteria.
    VerifyAll {
        /// Reduced orders and digit targets.
        #[arg(long)]
        quick: bool,
        /// Directory of stored `{class}.json` count series to use when long enough.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
struct Target {
    /// A pattern in one-line notation, e.g. 1423.
    #[arg(long, conflicts_with = "class", required_unless_present = "class")]
    pattern: Option<Pattern>,
    /// A class label such as 4.V; its least member is used.
    #[arg(long)]
    class: Option<ClassId>,
}

impl Target {
    fn pattern(&self) -> Pattern {
        match (&self.pattern, self.class) {
            (Some(p), _) => p.clone(),
            (None, Some(c)) => c.canonical(),
            (None, None) => unreachable!("clap requires one of them"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Dp,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Ranks,
    Frontier,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Algorithm::Dp)]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = EngineArg::Ranks)]
    engine: EngineArg,
    /// Working-memory budget for the enumerator, in MiB.
    #[arg(long, default_value_t = 2048)]
    memory_mib: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Onem,
    General,
    Tree,
    #[value(name = "14523")]
    P14523,
    #[value(name = "15243")]
    P15243,
}

#[derive(Args)]
struct ClusterArgs {
    /// Recurrence family; alternatively give --pattern.
    #[arg(long, value_enum, required_unless_present = "pattern")]
    family: Option<FamilyArg>,
    #[arg(long)]
    m: Option<usize>,
    /// Overlap parameter of the general family.
    #[arg(long)]
    c: Option<usize>,
    /// Pick the family that governs this pattern.
    #[arg(long, conflicts_with = "family")]
    pattern: Option<Pattern>,
    #[arg(long)]
    n: usize,
    /// Emit the avoider counts obtained by cluster inversion instead.
    #[arg(long)]
    invert: bool,
}

#[derive(Subcommand)]
enum OdeAction {
    /// Series solution w(x) of a known equation, or its reciprocal.
    Solve {
        /// `4.I`, `increasing:M` or `prefix:A,M`.
        #[arg(long)]
        source: OdeSource,
        #[arg(long)]
        n: usize,
        /// Emit the avoider counts n! [x^n] 1/w(x) instead of w.
        #[arg(long)]
        reciprocal: bool,
    },
    /// Fit a linear ODE to 1/C(x) for a class or a stored series.
    Fit {
        #[command(flatten)]
        target: Target,
        /// Number of series terms used.
        #[arg(long, default_value_t = 40)]
        terms: usize,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Print a known equation.
    Show {
        #[arg(long)]
        source: OdeSource,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Da,
    Ratio,
}

#[derive(Args)]
struct AsymptoticsArgs {
    /// Class label, or `all` for every class.
    #[arg(long, required_unless_present = "series")]
    class: Option<String>,
    /// A stored count series to analyse instead.
    #[arg(long, conflicts_with = "class")]
    series: Option<PathBuf>,
    /// Series order; defaults to 80 for length 4 and 70 for length 5.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Da)]
    method: MethodArg,
    /// Stored `{class}.json` series to use when long enough.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

/// A command's result: text to emit and the exit code to finish with.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_DOMAIN } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => match emit(cli.out.as_deref(), &out.text) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_DOMAIN)
            }
        },
        Err(Error::BudgetExceeded { completed, reason }) => {
            eprintln!("budget exceeded: {reason}; writing the {} completed terms", completed.len());
            let tag = format!("{} (partial: {reason})", completed.provenance());
            let partial = completed.with_provenance(tag);
            let text = series_output(&partial, cli.format);
            if let Err(e) = emit(cli.out.as_deref(), &text) {
                eprintln!("error: {e}");
            }
            ExitCode::from(EXIT_BUDGET)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) | Error::UnstableExtrapolation(_) | Error::NoPhysicalSingularity(_) => EXIT_CHECK,
        _ => EXIT_DOMAIN,
    }
}

/// Writes to a temporary sibling and renames it, so readers never see a
/// partial file.
fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, path)
        }
    }
}

fn run(cli: &Cli) -> cpap_core::Result<Output> {
    let cache = cli.cache_dir.as_ref().map(SeriesCache::new);
    match &cli.command {
        Command::Enumerate(a) => enumerate(a, cache.as_ref(), cli.format),
        Command::Clusters(a) => clusters(a, cli.format),
        Command::Iterate { m, n } => {
            let t = iterate_t(*m, *n)?;
            Ok(Output::ok(rational_output(&t, &format!("iterated cluster series m={m}"), cli.format)))
        }
        Command::Poles { m, depth, all, digits } => {
            let mode = if *all { PoleMode::All } else { PoleMode::Single };
            let set = pole_chain(*m, *depth, mode, hp::bits_for_digits(*digits + 10))?;
            let text = match cli.format {
                Format::Csv => set.to_csv(*digits),
                Format::Json => {
                    let rows: Vec<_> = set
                        .poles
                        .iter()
                        .map(|p| {
                            json!({
                                "depth": p.depth,
                                "branch": p.branch,
                                "re": hp::decimal(&p.value.re, *digits),
                                "im": hp::decimal(&p.value.im, *digits),
                                "residual": format!("{:.3e}", hp::to_f64(&p.residual)),
                            })
                        })
                        .collect();
                    pretty(&json!({ "m": m, "depth": depth, "poles": rows }))
                }
            };
            Ok(Output::ok(text))
        }
        Command::V { digits } => {
            let v = v_constant(*digits)?;
            let text = match cli.format {
                Format::Csv => format!("v,error_bound,terms\n{},{:.3e},{}\n", v.decimal(), hp::to_f64(&v.error_bound), v.terms),
                Format::Json => pretty(&json!({
                    "v": v.decimal(),
                    "digits": v.digits,
                    "error_bound": format!("{:.3e}", hp::to_f64(&v.error_bound)),
                    "terms": v.terms,
                })),
            };
            Ok(Output::ok(text))
        }
        Command::Ode { action } => ode(action, cache.as_ref(), cli.format),
        Command::Algverify { m, order, hypergeometric } => algverify(*m, *order, *hypergeometric, cli.format),
        Command::Asymptotics(a) => asymptotics(a, cache, cli.format),
        Command::VerifyAll { quick, fixtures, only } => {
            let profile = if *quick { Profile::Quick } else { Profile::Full };
            let source = SeriesSource { fixtures: fixtures.clone(), cache };
            let mut suite = Suite::new(profile, source);
            let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only.clone() };
            let mut reports = Vec::new();
            for id in ids {
                let r = suite.run(id);
                eprintln!("{}", r.line());
                reports.push(r);
            }
            let passed = reports.iter().all(|r| r.passed);
            let text = pretty(&json!({
                "profile": profile,
                "thresholds": profile.thresholds(),
                "passed": passed,
                "criteria": reports,
            }));
            Ok(Output { text, code: if passed { 0 } else { EXIT_CHECK } })
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn series_output(s: &CountSeries, format: Format) -> String {
    match format {
        Format::Json => s.to_json(),
        Format::Csv => {
            let mut out = String::from("n,count\n");
            for (n, c) in s.counts().iter().enumerate() {
                let _ = writeln!(out, "{n},{c}");
            }
            out
        }
    }
}

fn rational_output(t: &TruncatedSeries, provenance: &str, format: Format) -> String {
    match format {
        Format::Json => t.to_document(provenance).to_json(),
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (n, c) in t.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{n},{c}");
            }
            out
        }
    }
}

fn enumerate(a: &EnumerateArgs, cache: Option<&SeriesCache>, format: Format) -> cpap_core::Result<Output> {
    let pat = a.target.pattern();
    let series = match a.algorithm {
        Algorithm::Brute => {
            let counts = (0..=a.n)
                .map(|k| brute_count(&pat, k).map(Into::into))
                .collect::<cpap_core::Result<Vec<_>>>()?;
            CountSeries::new(counts, format!("brute:{pat}"))?
        }
        Algorithm::Dp => {
            let cfg = DpConfig {
                engine: match a.engine {
                    EngineArg::Ranks => Engine::Ranks,
                    EngineArg::Frontier => Engine::Frontier,
                },
                memory_cap_bytes: u128::from(a.memory_mib) << 20,
            };
            match cache {
                Some(c) => cached_count_series(&pat, a.n, &cfg, c, |p, why| {
                    eprintln!("warning: ignoring cache file {}: {why}", p.display())
                })?,
                None => count_series_with(&pat, a.n, &cfg)?,
            }
        }
    };
    // Same bytes whichever engine or cache produced the counts.
    let series = series.with_provenance(format!("counts:{pat}"));
    Ok(Output::ok(series_output(&series, format)))
}

fn clusters(a: &ClusterArgs, format: Format) -> cpap_core::Result<Output> {
    let need_m = || a.m.ok_or_else(|| Error::InvalidInput("--m is required for this family".into()));
    let family = match (&a.pattern, a.family) {
        (Some(p), _) => OverlapFamily::for_pattern(p)
            .ok_or_else(|| Error::NoKnownEquation(format!("no cluster recurrence for {p}")))?,
        (None, Some(FamilyArg::Onem)) => OverlapFamily::OneM { m: need_m()? },
        (None, Some(FamilyArg::Tree)) => OverlapFamily::Tree { m: need_m()? },
        (None, Some(FamilyArg::General)) => OverlapFamily::General {
            m: need_m()?,
            c: a.c.ok_or_else(|| Error::InvalidInput("--c is required for the general family".into()))?,
        },
        (None, Some(FamilyArg::P14523)) => OverlapFamily::P14523,
        (None, Some(FamilyArg::P15243)) => OverlapFamily::P15243,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let table = family.table(a.n)?;
    if a.invert {
        let c = gj_invert(&table.signed_sum(), a.n)?;
        return Ok(Output::ok(series_output(&c.with_provenance(format!("cluster inversion:{family}")), format)));
    }
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let rows: Vec<Vec<String>> =
                (0..=a.n).map(|n| table.row(n).iter().map(ToString::to_string).collect()).collect();
            let t: Vec<String> = table.signed_sum().values().iter().map(ToString::to_string).collect();
            pretty(&json!({ "family": family.to_string(), "order": a.n, "rows": rows, "signed_sum": t }))
        }
    };
    Ok(Output::ok(text))
}

fn ode(action: &OdeAction, cache: Option<&SeriesCache>, format: Format) -> cpap_core::Result<Output> {
    match action {
        OdeAction::Solve { source, n, reciprocal } => {
            let y = ode_series_solve(&ode_library(*source)?, *n)?;
            if *reciprocal {
                let b = y.reciprocal()?.egf_to_ogf();
                let ints = b
                    .to_integers()
                    .ok_or_else(|| Error::Internal("reciprocal has non-integer counts".into()))?;
                let counts = ints
                    .into_iter()
                    .map(|v| v.try_into().map_err(|_| Error::Internal("negative count".into())))
                    .collect::<cpap_core::Result<Vec<_>>>()?;
                let s = CountSeries::new(counts, format!("counts:{}", source.pattern()?))?;
                Ok(Output::ok(series_output(&s, format)))
            } else {
                Ok(Output::ok(rational_output(&y, &format!("ode solution:{source}"), format)))
            }
        }
        OdeAction::Fit { target, terms, order, degree } => {
            if *terms < 2 {
                return Err(Error::InvalidInput("need at least two terms".into()));
            }
            let pat = target.pattern();
            let counts = match cache {
                Some(c) => cached_count_series(&pat, terms - 1, &DpConfig::default(), c, |_, _| {})?,
                None => count_series_with(&pat, terms - 1, &DpConfig::default())?,
            };
            let y = counts.egf().reciprocal()?;
            let found = dfinite_fit(&y, *order, *degree)?;
            Ok(Output::ok(ode_output(found.as_ref(), format)))
        }
        OdeAction::Show { source } => Ok(Output::ok(ode_output(Some(&ode_library(*source)?), format))),
    }
}

fn ode_output(ode: Option<&LinearODE>, format: Format) -> String {
    match (ode, format) {
        (None, Format::Json) => "null\n".into(),
        (None, Format::Csv) => "power,derivative,coefficient\n".into(),
        (Some(o), Format::Json) => {
            let mut s = o.to_json();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        (Some(o), Format::Csv) => {
            let mut out = String::from("power,derivative,coefficient\n");
            for (i, p) in o.coeffs().iter().enumerate() {
                for (j, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        let _ = writeln!(out, "{j},{i},{c}");
                    }
                }
            }
            out
        }
    }
}

fn algverify(m: usize, order: usize, hypergeometric: bool, format: Format) -> cpap_core::Result<Output> {
    let t = OverlapFamily::Tree { m }.table(order)?.signed_sum().ogf();
    let w = tree_witness(m)?;
    let valuation = algebraic_verify(&w, &t);
    let holds = valuation > order;
    let g_holds = if hypergeometric { Some(t_from_g(&hypergeometric_series(m, order)?)? == t) } else { None };
    let ok = holds && g_holds.unwrap_or(true);
    let text = match format {
        Format::Json => pretty(&json!({
            "m": m,
            "order": order,
            "relation": w.to_string(),
            "residual_valuation": valuation,
            "relation_holds": holds,
            "hypergeometric_matches": g_holds,
        })),
        Format::Csv => format!(
            "m,order,residual_valuation,relation_holds,hypergeometric_matches\n{m},{order},{valuation},{holds},{}\n",
            g_holds.map(|b| b.to_string()).unwrap_or_default()
        ),
    };
    Ok(Output { text, code: if ok { 0 } else { EXIT_CHECK } })
}

fn asymptotics(a: &AsymptoticsArgs, cache: Option<SeriesCache>, format: Format) -> cpap_core::Result<Output> {
    let source = SeriesSource { fixtures: a.fixtures.clone(), cache };
    let mut jobs: Vec<(String, CountSeries)> = Vec::new();
    if let Some(path) = &a.series {
        let text = std::fs::read_to_string(path)?;
        let doc = SeriesDocument::from_json(&text)?;
        let mut s = CountSeries::from_document(&doc)?;
        if let Some(n) = a.n {
            s = s.prefix(n);
        }
        jobs.push((path.display().to_string(), s));
    } else {
        let label = a.class.as_deref().expect("clap requires one of them");
        let classes: Vec<ClassId> =
            if label == "all" { ClassId::all() } else { vec![label.parse()?] };
        for c in classes {
            let n = a.n.unwrap_or(if c.length() == 4 { 80 } else { 70 });
            jobs.push((c.to_string(), source.class_series(c, n)?));
        }
    }
    let mut table = ResultsTable::default();
    for (label, series) in &jobs {
        let row = match a.method {
            MethodArg::Da => ResultRow::new(label.clone(), &estimate_series(series, &EstimateConfig::default())?),
            MethodArg::Ratio => {
                let digits = EstimateConfig::default().start_digits;
                let rs = RatioSequence::from_counts(series, hp::bits_for_digits(digits))?;
                let est = ratio_extrapolate(&rs, 12.min(rs.order().saturating_sub(5)))?;
                ResultRow {
                    class: label.clone(),
                    order: rs.order(),
                    kappa: hp::decimal(&est.kappa, (est.stable_digits_kappa as usize + 3).max(12)),
                    kappa_stable_digits: est.stable_digits_kappa,
                    amplitude: None,
                    amplitude_stable_digits: None,
                    method: est.method.to_string(),
                    ratio_kappa: None,
                    ratio_stable_digits: None,
                    precision_digits: digits,
                    detail: est.detail,
                }
            }
        };
        table.push(row);
    }
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|r| {
                    // Published values alongside, when the row is a known class.
                    let mut v = serde_json::to_value(r).expect("plain data");
                    if let Ok(c) = r.class.parse::<ClassId>() {
                        let p = reference_values(c);
                        v["published_kappa"] = json!(p.kappa);
                        v["published_amplitude"] = json!(p.amplitude);
                        v["published_amplitude_kappa_shift"] = json!(p.kappa_shift);
                    }
                    v
                })
                .collect();
            pretty(&json!({ "rows": rows }))
        }
    };
    Ok(Output::ok(text))
}
