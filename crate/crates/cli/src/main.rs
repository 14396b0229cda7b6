//! `hurwitz-atlas`: series, fits, brackets, graphs, Hurwitz numbers and
//! gravity constants from the command line.
//!
//! Output is JSON unless `--csv` is given. Errors are printed to stderr as
//! `{"error": {"code": …, "message": …}}`, with exit status 2 for usage
//! errors and 1 for everything else.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use hurwitz_atlas::algebra::{closed_form, fit, fit_escalating, leading_asymptotic, AElement, FitFailure};
use hurwitz_atlas::bracket::{
    decompose_to_graphs, f_series, g0_convention_terms, weighted_f_series, Bracket, BracketTable, ClosedBracket,
    Monomial,
};
use hurwitz_atlas::dendrology::{self, MomentKind};
use hurwitz_atlas::graph::{automorphism_count, catalog, extension_table, f_h_closed_form};
use hurwitz_atlas::hurwitz::{self, HurwitzQuery, Partition};
use hurwitz_atlas::rational::{self, big, factorial, Rational};
use hurwitz_atlas::series::{generator, Generator, PowerSeries};
use hurwitz_atlas::{guard, Error};

#[derive(Parser)]
#[command(name = "hurwitz-atlas", version, about = "Exact tree series, brackets and Hurwitz numbers")]
struct Cli {
    /// Print CSV rows `n,numerator,denominator` instead of JSON.
    #[arg(long, global = true)]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of Y, Z or the A_n series.
    Series(SeriesArgs),
    /// Express a coefficient sequence in the basis X^k.
    Fit(FitArgs),
    /// Evaluate brackets and their generating series.
    Bracket(BracketArgs),
    /// Automorphisms and extension counts for simple graphs.
    Graphs(GraphsArgs),
    /// Hurwitz numbers of marked coverings of the sphere.
    Hurwitz(HurwitzArgs),
    /// Leading asymptotic of the genus-g Hurwitz series.
    Gravity(GravityArgs),
    /// Path-length moments over labeled trees.
    Trees(TreesArgs),
}

#[derive(Args)]
struct SeriesArgs {
    /// Y, Z or A.
    #[arg(long = "gen")]
    generator: Generator,
    #[arg(long)]
    order: usize,
}

#[derive(Args)]
struct FitArgs {
    /// CSV (`n,numerator,denominator`) or a JSON list of rational strings.
    #[arg(long)]
    coeffs: PathBuf,
    #[arg(long)]
    window: usize,
    #[arg(long, default_value_t = 8)]
    holdout: usize,
    /// Try every window from 1 up to `--window`.
    #[arg(long)]
    escalate: bool,
}

#[derive(Args)]
struct BracketArgs {
    /// Initial-value table in JSON; the genus-2 table is used by default.
    #[arg(long, conflicts_with = "closed")]
    table: Option<PathBuf>,
    /// A closed-form bracket instead of a table: g0, g1 or g1beta.
    #[arg(long)]
    closed: Option<ClosedBracket>,
    /// Indices such as "2,3".
    #[arg(long, allow_hyphen_values = true)]
    monomial: Option<String>,
    /// Generating series to this order.
    #[arg(long)]
    fseries: Option<usize>,
    /// Weights of the distinguished points, e.g. "2,1".
    #[arg(long, requires = "fseries")]
    weights: Option<String>,
    /// Add q + q²/4 to the genus-0 series.
    #[arg(long, requires = "fseries")]
    convention: bool,
    /// Simple graphs and coefficients for each initial value.
    #[arg(long)]
    decompose: bool,
}

#[derive(Args)]
struct GraphsArgs {
    /// Catalog file; the built-in catalog is used by default.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Tabulate extensions with this many numbered vertices.
    #[arg(long)]
    extensions: Option<usize>,
}

#[derive(Args)]
struct HurwitzArgs {
    #[arg(long)]
    genus: u32,
    /// Ramification profiles separated by ';', e.g. "2;3,1". Empty for none.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    mu: String,
    /// A single degree.
    #[arg(long, conflicts_with = "series", required_unless_present = "series")]
    n: Option<u32>,
    /// All degrees up to this order, with the normalized series.
    #[arg(long)]
    series: Option<usize>,
    /// Count by enumerating permutations (small degree only).
    #[arg(long, requires = "n")]
    brute: bool,
    /// Fit the series with windows up to this size.
    #[arg(long, requires = "series")]
    window: Option<usize>,
}

#[derive(Args)]
struct GravityArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, default_value_t = 28)]
    order: usize,
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// Allow genus 3 and above.
    #[arg(long)]
    stretch: bool,
}

#[derive(Args)]
struct TreesArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    /// m for power moments, p for binomial moments.
    #[arg(long)]
    kind: MomentKind,
    /// Use the closed distance table instead of enumerating trees.
    #[arg(long)]
    counted: bool,
}

enum Output {
    Json(Value),
    Csv(String),
}

enum Failure {
    Usage(String),
    Compute(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> Value {
        let mut body = Map::new();
        match self {
            Failure::Usage(m) => {
                body.insert("code".into(), json!("usage"));
                body.insert("message".into(), json!(m));
            }
            Failure::Io(m) => {
                body.insert("code".into(), json!("io"));
                body.insert("message".into(), json!(m));
            }
            Failure::Compute(e) => {
                body.insert("code".into(), json!(e.code()));
                body.insert("message".into(), json!(e.to_string()));
                if let Error::FitFailed { window, index, .. } = e {
                    body.insert("window".into(), json!(window));
                    body.insert("index".into(), json!(index));
                }
            }
        }
        json!({ "error": body })
    }
}

type Outcome = Result<Output, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn no_csv(csv: bool, what: &str) -> Result<(), Failure> {
    if csv {
        return Err(Failure::Usage(format!("{what} has no CSV form")));
    }
    Ok(())
}

fn series_output(s: &PowerSeries, csv: bool, wrap: impl FnOnce(Value) -> Value) -> Output {
    if csv {
        Output::Csv(s.to_csv())
    } else {
        Output::Json(wrap(json!(s.to_strings())))
    }
}

fn fit_failure(f: FitFailure) -> Failure {
    Failure::Compute(Error::FitFailed { window: f.window, reason: f.to_string(), index: f.first_mismatch })
}

fn element_report(elem: &AElement) -> Value {
    let asym = match leading_asymptotic(elem) {
        Ok(a) => {
            let mut v = a.to_json();
            v["c_decimal"] = json!(a.c_decimal(30));
            v
        }
        Err(_) => Value::Null,
    };
    json!({
        "element": elem.to_json(),
        "closed_form": closed_form(elem).to_json(),
        "asymptotic": asym,
    })
}

fn run_series(a: SeriesArgs, csv: bool) -> Outcome {
    let s = generator(a.generator, a.order);
    let name = match a.generator {
        Generator::Y => "Y",
        Generator::Z => "Z",
        Generator::ASequence => "A",
    };
    Ok(series_output(&s, csv, |c| json!({"generator": name, "order": a.order, "coefficients": c})))
}

fn parse_coeffs(text: &str) -> Result<PowerSeries, Failure> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let list = match &v {
            Value::Array(_) => &v,
            Value::Object(m) => m.get("coefficients").ok_or_else(|| Error::Parse("missing \"coefficients\"".into()))?,
            _ => unreachable!(),
        };
        let items: Vec<String> = list
            .as_array()
            .ok_or_else(|| Error::Parse("coefficients must be a list".into()))?
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Parse("coefficients must be rational strings".into())),
            })
            .collect::<Result<_, _>>()?;
        Ok(PowerSeries::from_strings(&items)?)
    } else {
        Ok(PowerSeries::from_csv(text)?)
    }
}

fn run_fit(a: FitArgs, csv: bool) -> Outcome {
    no_csv(csv, "fit")?;
    let s = parse_coeffs(&read(&a.coeffs)?)?;
    let elem = if a.escalate {
        fit_escalating(&s, a.window, a.holdout)
    } else {
        fit(&s, a.window, a.holdout)
    }
    .map_err(fit_failure)?;
    let mut out = element_report(&elem);
    out["window"] = json!(a.window);
    out["holdout"] = json!(a.holdout);
    Ok(Output::Json(out))
}

fn parse_weights(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| Failure::Usage(format!("bad weight {t:?}"))))
        .collect()
}

fn run_bracket(a: BracketArgs, csv: bool) -> Outcome {
    if a.monomial.is_none() && a.fseries.is_none() && !a.decompose {
        return Err(Failure::Usage("bracket needs --monomial, --fseries or --decompose".into()));
    }
    let table = match (&a.table, a.closed) {
        (_, Some(_)) => None,
        (Some(path), None) => Some(BracketTable::from_json_str(&read(path)?)?),
        (None, None) => Some(BracketTable::genus2_beta1()),
    };
    let closed = a.closed;
    let b: &dyn Bracket = match (&table, &closed) {
        (Some(t), _) => t,
        (None, Some(c)) => c,
        (None, None) => unreachable!(),
    };
    if a.convention && closed != Some(ClosedBracket::G0) {
        return Err(Failure::Usage("--convention applies to --closed g0 only".into()));
    }

    let mut out = Map::new();
    out.insert("genus".into(), json!(b.genus()));
    if let Some(m) = &a.monomial {
        let m: Monomial = m.parse()?;
        out.insert("monomial".into(), json!(m.to_string()));
        out.insert("value".into(), json!(rational::to_string(&b.value(&m)?)));
    }
    if let Some(order) = a.fseries {
        let mut s = match &a.weights {
            Some(w) => weighted_f_series(b, &parse_weights(w)?, order)?,
            None => f_series(b, order)?,
        };
        if a.convention {
            s = &s + &g0_convention_terms(order);
        }
        if csv {
            return Ok(Output::Csv(s.to_csv()));
        }
        out.insert("fseries".into(), json!(s.to_strings()));
    }
    no_csv(csv, "bracket without --fseries")?;
    if a.decompose {
        let t = table.as_ref().ok_or_else(|| Failure::Usage("--decompose needs a bracket table".into()))?;
        let terms = decompose_to_graphs(t)?;
        let total = terms.iter().fold(AElement::zero(), |acc, term| acc.add(&term.series_element()));
        out.insert("decomposition".into(), json!(terms.iter().map(|t| t.to_json()).collect::<Vec<_>>()));
        out.insert("element".into(), total.to_json());
    }
    Ok(Output::Json(Value::Object(out)))
}

fn run_graphs(a: GraphsArgs, csv: bool) -> Outcome {
    no_csv(csv, "graphs")?;
    let graphs = match &a.catalog {
        Some(path) => catalog::parse(&read(path)?)?,
        None => catalog::builtin(),
    };
    let mut entries = Vec::new();
    for named in &graphs {
        let h = &named.graph;
        let mut entry = json!({
            "name": named.name,
            "p": h.p(),
            "aut": automorphism_count(h.graph()).to_string(),
            "star_valency": h.star_valency(),
            "vertices": h.non_star_vertices(),
            "edges": h.edge_count(),
            "graph": h.graph().to_json_value(),
        });
        if h.p() == 0 {
            entry["element"] = f_h_closed_form(h).to_json();
        }
        if let Some(n) = a.extensions {
            let table = extension_table(h, n, h.p())?;
            let total = table.values().fold(Rational::from_integer(0.into()), |acc, v| acc + v);
            let rows: Map<String, Value> = table
                .iter()
                .map(|(val, v)| {
                    let key: Vec<String> = val.iter().map(usize::to_string).collect();
                    (key.join(","), json!(rational::to_string(v)))
                })
                .collect();
            let mut ext = json!({"level": n, "table": rows, "total": rational::to_string(&total)});
            if h.p() == 0 {
                let expected = f_h_closed_form(h).to_series(n).coeff(n) * big(factorial(n as u64));
                ext["expected"] = json!(rational::to_string(&expected));
            }
            entry["extensions"] = ext;
        }
        entries.push(entry);
    }
    Ok(Output::Json(json!({ "graphs": entries })))
}

fn mus_label(mus: &[Partition]) -> String {
    mus.iter().map(Partition::to_string).collect::<Vec<_>>().join(";")
}

fn run_hurwitz(a: HurwitzArgs, csv: bool) -> Outcome {
    let mus = hurwitz::parse_partitions(&a.mu)?;
    if let Some(n) = a.n {
        let q = HurwitzQuery::new(a.genus, mus.clone(), n);
        let h = if a.brute {
            hurwitz::brute_force_oracle(&q)?
        } else {
            hurwitz::connected_counts(a.genus, &mus, n as usize)?.swap_remove(n as usize)
        };
        if csv {
            return Ok(Output::Csv(format!("n,numerator,denominator\n{},{},{}\n", n, h.numer(), h.denom())));
        }
        return Ok(Output::Json(json!({"n": n, "h": rational::to_string(&h)})));
    }
    let order = a.series.expect("clap requires --n or --series");
    let h = hurwitz::connected_counts(a.genus, &mus, order)?;
    if csv {
        return Ok(Output::Csv(PowerSeries::new(h).to_csv()));
    }
    let series = hurwitz::h_series(a.genus, &mus, order)?;
    let rows: Vec<Value> = h
        .iter()
        .zip(series.coeffs())
        .enumerate()
        .map(|(n, (v, c))| json!({"n": n, "h": rational::to_string(v), "coefficient": rational::to_string(c)}))
        .collect();
    let mut out = json!({
        "genus": a.genus,
        "mu": mus_label(&mus),
        "rows": rows,
        "exceptional": hurwitz::is_exceptional(a.genus, &mus),
    });
    if let Some(w) = a.window {
        let elem = fit_escalating(&series, w, hurwitz::FIT_HOLDOUT).map_err(fit_failure)?;
        out["fit"] = element_report(&elem);
    }
    Ok(Output::Json(out))
}

fn run_gravity(a: GravityArgs, csv: bool) -> Outcome {
    no_csv(csv, "gravity")?;
    if a.genus >= 3 && !a.stretch {
        return Err(Failure::Usage("genus 3 and above is slow; pass --stretch".into()));
    }
    // The unramified genus-1 series is not in the algebra; one marked point
    // gives a series that is.
    let mus = if a.genus == 1 { vec![Partition::new(vec![1])?] } else { Vec::new() };
    let (elem, asym) = hurwitz::fit_and_b(a.genus, &mus, a.order, a.window)?;
    let expected_alpha = if a.genus == 1 {
        Rational::from_integer(0.into())
    } else {
        Rational::new((5 * (a.genus as i64 - 1) - 2).into(), 2.into())
    };
    Ok(Output::Json(json!({
        "genus": a.genus,
        "mu": mus_label(&mus),
        "order": a.order,
        "window": a.window,
        "element": elem.to_json(),
        "alpha": rational::to_string(&asym.alpha),
        "expected_alpha": rational::to_string(&expected_alpha),
        "c_gauss": rational::to_string(&asym.c_gauss),
        "c_plain": rational::to_string(&asym.c_plain),
        "b": asym.c_decimal(30),
    })))
}

fn run_trees(a: TreesArgs, csv: bool) -> Outcome {
    no_csv(csv, "trees")?;
    let value = if a.counted {
        dendrology::path_moments_counted(a.n, a.k, a.kind)
    } else {
        dendrology::path_moments(a.n, a.k, a.kind)?
    };
    let predicted =
        dendrology::moment_prediction(a.k, a.kind).to_series(a.n).coeff(a.n) * big(factorial(a.n as u64));
    Ok(Output::Json(json!({
        "n": a.n,
        "k": a.k,
        "kind": a.kind.name(),
        "value": rational::to_string(&value),
        "predicted": rational::to_string(&predicted),
        "method": if a.counted { "distance table" } else { "enumeration" },
    })))
}

fn run(cli: Cli) -> Outcome {
    let csv = cli.csv;
    match cli.command {
        Command::Series(a) => run_series(a, csv),
        Command::Fit(a) => run_fit(a, csv),
        Command::Bracket(a) => run_bracket(a, csv),
        Command::Graphs(a) => run_graphs(a, csv),
        Command::Hurwitz(a) => run_hurwitz(a, csv),
        Command::Gravity(a) => run_gravity(a, csv),
        Command::Trees(a) => run_trees(a, csv),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = Failure::Usage(e.to_string().trim().to_string());
            eprintln!("{}", f.to_json());
            return ExitCode::from(f.exit_code());
        }
    };
    if guard::overridden() {
        eprintln!("warning: {} is set, enumeration limits are off", guard::OVERRIDE_ENV);
    }
    match run(cli) {
        Ok(out) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("JSON serializes") + "\n",
                Output::Csv(s) => s,
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}
