//! `kdl`: inspect Kummer curves, enumerate invariant non-special divisors and
//! build LCP pairs of AG codes.

mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kummer_core::codes::{lcp_build_general, lcp_build_regime, LcpPair, Regime};
use kummer_core::curve::{make_abstract_curve, make_curve, CurveSpec, InvariantTuple, KummerCurve, RamificationData};
use kummer_core::ffield::{make_field, FieldElement};
use kummer_core::instances::{catalog_curve, reproduce};
use kummer_core::nonspecial::{criterion_check, enumerate_nonspecial_capped, Mode, DEFAULT_MAX_SEARCH};
use serde::Serialize;

use emit::Format;

#[derive(Parser, Debug)]
#[command(name = "kdl", version, about = "Invariant non-special divisors and LCP codes on Kummer curves")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curve data: ramification, genus, split points.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Enumerate or check invariant non-special tuples.
    Nonspecial {
        #[command(subcommand)]
        cmd: NonspecialCmd,
    },
    /// Build an LCP pair of AG codes.
    Lcp {
        #[command(subcommand)]
        cmd: LcpCmd,
    },
    /// Count rational places.
    Census(CurveArgs),
    /// Rebuild a catalog example and compare against its expected values.
    Reproduce { id: String },
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    Info(CurveArgs),
}

#[derive(Subcommand, Debug)]
enum NonspecialCmd {
    Enumerate {
        #[command(flatten)]
        curve: CurveArgs,
        /// Keep one representative per permutation of equal-lambda indices.
        #[arg(long)]
        dedup: bool,
    },
    Check {
        #[command(flatten)]
        curve: CurveArgs,
        /// `n0,n1,...,nr`.
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Cond3)]
        mode: ModeArg,
    },
}

#[derive(Subcommand, Debug)]
enum LcpCmd {
    Build(LcpArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Cond2,
    Cond3,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RegimeArg {
    HalfSingle,
    HalfDoubleN1,
    HalfDoubleN2,
    LambdaTwo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WhichCode {
    G,
    H,
}

#[derive(Args, Debug)]
struct LcpArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Specialized family; without it `--tuple` and `--phi` are required.
    #[arg(long, value_enum)]
    regime: Option<RegimeArg>,
    /// Half-place coefficient for `half-single`.
    #[arg(long = "big-n", default_value_t = 0)]
    big_n: u32,
    /// Sequence index for `lambda-two`.
    #[arg(long, default_value_t = 1)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    tuple: Option<String>,
    /// Totally ramified branch indices (0-based) forming `Phi`.
    #[arg(long, value_delimiter = ',')]
    phi: Option<Vec<usize>>,
    /// Use the first `t` completely split points (default: all).
    #[arg(long)]
    t: Option<usize>,
    /// Recipe parameter (default: smallest admissible).
    #[arg(long)]
    s: Option<i64>,
    /// Print a generator matrix instead of the report.
    #[arg(long, value_enum)]
    matrix: Option<WhichCode>,
}

/// A curve given by catalog id, JSON spec file or inline flags (in that precedence).
#[derive(Args, Debug, Clone)]
struct CurveArgs {
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    lambdas: Option<Vec<u32>>,
    /// `p,k` for `GF(p^k)`; omit for a field-free curve.
    #[arg(long)]
    field: Option<String>,
    /// Branch point encodings, one per lambda.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<u32>>,
    /// Leading coefficient encoding.
    #[arg(long, default_value_t = 1)]
    a: u32,
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<kummer_core::Error> for CliError {
    fn from(e: kummer_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

impl CurveArgs {
    fn resolve(&self) -> CliResult<KummerCurve> {
        if let Some(id) = &self.catalog {
            return Ok(catalog_curve(id)?);
        }
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let spec: CurveSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad curve spec {}: {e}", path.display())))?;
            return Ok(KummerCurve::from_spec(&spec)?);
        }
        let (Some(m), Some(lambdas)) = (self.m, &self.lambdas) else {
            return Err(CliError::Usage(
                "give a curve via --catalog, --spec, or --m with --lambdas".into(),
            ));
        };
        let Some(field) = &self.field else {
            if self.alphas.is_some() {
                return Err(CliError::Usage("--alphas needs --field".into()));
            }
            return Ok(make_abstract_curve(m, lambdas)?);
        };
        let parts: Vec<&str> = field.split(',').collect();
        let (p, k) = match parts.as_slice() {
            [p, k] => (
                p.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad --field {field}")))?,
                k.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad --field {field}")))?,
            ),
            _ => return Err(CliError::Usage(format!("--field expects p,k, got {field}"))),
        };
        let Some(alphas) = &self.alphas else {
            return Err(CliError::Usage("--field needs --alphas".into()));
        };
        if alphas.len() != lambdas.len() {
            return Err(CliError::Usage(format!(
                "{} alphas for {} lambdas",
                alphas.len(),
                lambdas.len()
            )));
        }
        let f = make_field(p, k)?;
        let branches = alphas
            .iter()
            .zip(lambdas)
            .map(|(&al, &l)| Ok((f.element(al as u64)?, l)))
            .collect::<kummer_core::Result<Vec<(FieldElement, u32)>>>()?;
        Ok(make_curve(&f, m, &branches, f.element(self.a as u64)?)?)
    }
}

fn parse_tuple(s: &str) -> CliResult<InvariantTuple> {
    InvariantTuple::parse(s).map_err(CliError::Usage)
}

#[derive(Serialize)]
struct CurveInfo {
    spec: CurveSpec,
    r: usize,
    ramification: RamificationData,
    genus: i64,
    split_points: Option<usize>,
}

fn curve_info(args: &CurveArgs, format: Format) -> CliResult<String> {
    let curve = args.resolve()?;
    let split_points = match curve.field() {
        Some(_) => Some(curve.split_points()?.len()),
        None => None,
    };
    let info = CurveInfo {
        spec: curve.to_spec(),
        r: curve.r(),
        ramification: curve.ramification().clone(),
        genus: curve.genus(),
        split_points,
    };
    let ram = &info.ramification;
    Ok(match format {
        Format::Json => emit::json(&info),
        Format::Csv => {
            let mut out = String::from("m,r,lambdas,d,e,Lambda,d_inf,e_inf,genus,split_points\n");
            let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                curve.m(),
                info.r,
                join(curve.lambdas()),
                join(&ram.d),
                join(&ram.e),
                ram.big_lambda,
                ram.d_inf,
                ram.e_inf,
                info.genus,
                split_points.map(|n| n.to_string()).unwrap_or_default()
            ));
            out
        }
        Format::Text => {
            let mut rows = vec![
                ("m", curve.m().to_string()),
                ("r", info.r.to_string()),
                ("lambdas", format!("{:?}", curve.lambdas())),
                ("d", format!("{:?}", ram.d)),
                ("e", format!("{:?}", ram.e)),
                ("Lambda", ram.big_lambda.to_string()),
                ("d_inf", ram.d_inf.to_string()),
                ("e_inf", ram.e_inf.to_string()),
                ("genus", info.genus.to_string()),
            ];
            if let Some(f) = curve.field() {
                rows.push(("field", format!("GF({}^{})", f.characteristic(), f.degree())));
                let alphas: Vec<u32> = curve.alphas().iter().map(|a| a.enc()).collect();
                rows.push(("alphas", format!("{alphas:?}")));
                rows.push(("a", curve.leading_coeff().enc().to_string()));
            }
            if let Some(t) = split_points {
                rows.push(("split_points", t.to_string()));
            }
            emit::pairs(&rows)
        }
    })
}

fn max_search() -> CliResult<u128> {
    match std::env::var("KDL_MAX_SEARCH") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("KDL_MAX_SEARCH must be an integer, got {v}"))),
        Err(_) => Ok(DEFAULT_MAX_SEARCH),
    }
}

fn enumerate(curve: &CurveArgs, dedup: bool, format: Format) -> CliResult<String> {
    let c = curve.resolve()?;
    let found = enumerate_nonspecial_capped(&c, dedup, max_search()?)?;
    Ok(emit::tuples(&found, c.r(), format))
}

fn check(curve: &CurveArgs, tuple: &str, mode: ModeArg, format: Format) -> CliResult<(String, bool)> {
    let c = curve.resolve()?;
    let t = parse_tuple(tuple)?;
    let mode = match mode {
        ModeArg::Cond2 => Mode::Cond2,
        ModeArg::Cond3 => Mode::Cond3,
    };
    let report = criterion_check(&c, &t, mode)?;
    let ok = report.is_nonspecial();
    let out = match format {
        Format::Json => emit::json(&report),
        Format::Csv => {
            let mut out = String::from("j,B,C,pass\n");
            for (j, row) in &report.rows {
                out.push_str(&format!("{j},{},{},{}\n", row.bound, row.count, row.pass));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "tuple {}  degree {}  genus {}  in box {}\n",
                report.tuple, report.degree, report.genus, report.bounds_ok
            );
            out.push_str(" j    B    C  pass\n");
            for (j, row) in &report.rows {
                out.push_str(&format!("{j:>2} {:>4} {:>4}  {}\n", row.bound, row.count, row.pass));
            }
            out.push_str(if ok {
                "verdict: non-special of degree g\n"
            } else {
                "verdict: fails\n"
            });
            out
        }
    };
    Ok((out, ok))
}

fn lcp(args: &LcpArgs, format: Format) -> CliResult<(String, bool)> {
    let curve = args.curve.resolve()?;
    let pair: LcpPair = match args.regime {
        Some(r) => {
            let regime = match r {
                RegimeArg::HalfSingle => Regime::HalfSingle { n: args.big_n },
                RegimeArg::HalfDoubleN1 => Regime::HalfDoubleN1,
                RegimeArg::HalfDoubleN2 => Regime::HalfDoubleN2,
                RegimeArg::LambdaTwo => Regime::LambdaTwo { k: args.k },
            };
            lcp_build_regime(&curve, regime, args.t, args.s)?
        }
        None => {
            let (Some(tuple), Some(phi)) = (&args.tuple, &args.phi) else {
                return Err(CliError::Usage("without --regime, give --tuple and --phi".into()));
            };
            let a = parse_tuple(tuple)?;
            let mut points = curve.split_points()?;
            if let Some(t) = args.t {
                points.truncate(t);
            }
            let lo = kummer_core::codes::s_range(
                curve.genus(),
                curve.m(),
                phi.len(),
                points.len() * curve.m() as usize,
            )?
            .0;
            lcp_build_general(&curve, &a, phi, &points, args.s.unwrap_or(lo))?
        }
    };
    if let Some(which) = args.matrix {
        let code = match which {
            WhichCode::G => &pair.c,
            WhichCode::H => &pair.e,
        };
        let out = match format {
            Format::Json => emit::json(&code.gen.to_json()),
            _ => code.gen.to_csv(),
        };
        return Ok((out, pair.verified));
    }
    let report = pair.report();
    let out = match format {
        Format::Json => emit::json(&report),
        Format::Csv => {
            let mut out = String::from("code,n,k,deg,designed_distance\n");
            for (name, p) in [("G", &report.params_g), ("H", &report.params_h)] {
                out.push_str(&format!("{name},{},{},{},{}\n", p.n, p.k, p.deg, p.designed_distance));
            }
            out
        }
        Format::Text => {
            let code = |p: &kummer_core::codes::CodeParams| format!("[{}, {}, >= {}]  deg {}", p.n, p.k, p.designed_distance, p.deg);
            let mut rows = vec![
                ("A", report.a.to_string()),
                ("phi", format!("{:?}", report.phi)),
                ("t", report.t.to_string()),
                ("s", report.s.to_string()),
                ("C_L(D,G)", code(&report.params_g)),
                ("C_L(D,H)", code(&report.params_h)),
                ("gcd(G,H) = A - Q_inf", report.identities.gcd_ok.to_string()),
                ("lmd identity", report.identities.lmd_ok.to_string()),
                ("verified", report.verified.to_string()),
            ];
            for note in &report.notes {
                rows.push(("note", note.clone()));
            }
            emit::pairs(&rows)
        }
    };
    Ok((out, pair.verified))
}

fn census(args: &CurveArgs, format: Format) -> CliResult<String> {
    let c = args.resolve()?.census()?;
    Ok(match format {
        Format::Json => emit::json(&c),
        Format::Csv => format!(
            "n,split_points,split_places,branch_places,infinity_places,hasse_weil_bound,is_maximal\n{},{},{},{},{},{},{}\n",
            c.n, c.split_points, c.split_places, c.branch_places, c.infinity_places, c.hasse_weil_bound, c.is_maximal
        ),
        Format::Text => emit::pairs(&[
            ("rational places", c.n.to_string()),
            ("split points", c.split_points.to_string()),
            ("split places", c.split_places.to_string()),
            ("branch places", c.branch_places.to_string()),
            ("places at infinity", c.infinity_places.to_string()),
            ("Hasse-Weil bound", c.hasse_weil_bound.to_string()),
            ("maximal", c.is_maximal.to_string()),
        ]),
    })
}

fn repro(id: &str, format: Format) -> CliResult<(String, bool)> {
    let rep = reproduce(id)?;
    let out = match format {
        Format::Json => emit::json(&rep),
        Format::Csv => {
            let mut out = String::from("key,expected,observed,match\n");
            for (k, v) in &rep.expected {
                let obs = rep.observed.get(k).map(|o| o.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{k},{},{},{}\n",
                    csv_field(&v.to_string()),
                    csv_field(&obs),
                    !rep.mismatches.contains(k)
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (k, v) in &rep.expected {
                let obs = rep.observed.get(k).map(|o| o.to_string()).unwrap_or_else(|| "-".into());
                let mark = if rep.mismatches.contains(k) { "MISMATCH" } else { "ok" };
                out.push_str(&format!("{mark:<8} {k}: expected {v}, observed {obs}\n"));
            }
            out.push_str(if rep.matches { "all values reproduced\n" } else { "some values differ\n" });
            out
        }
    };
    Ok((out, rep.matches))
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn run(cli: Cli) -> CliResult<(String, bool)> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    match &cli.command {
        Command::Curve { cmd: CurveCmd::Info(args) } => Ok((curve_info(args, format)?, true)),
        Command::Nonspecial { cmd } => match cmd {
            NonspecialCmd::Enumerate { curve, dedup } => Ok((enumerate(curve, *dedup, format)?, true)),
            NonspecialCmd::Check { curve, tuple, mode } => check(curve, tuple, *mode, format),
        },
        Command::Lcp { cmd: LcpCmd::Build(args) } => lcp(args, format),
        Command::Census(args) => Ok((census(args, format)?, true)),
        Command::Reproduce { id } => repro(id, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            emit::write(&out);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
