use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hodgeform::artinian::{gram_report, hilbert_report, Reduction};
use hodgeform::complex::{topology_report, ComplexSpec, TopologyReport};
use hodgeform::degree::{DegreeMap, FaceMonomial, Lsop, PowerDegree, Target};
use hodgeform::verify::{self, desk_suite, run_suite, CheckOutcome, Expectation, Fixture, ProfileTarget, Report, Status};
use hodgeform::{Error, Field, SimplicialComplex};

const EXIT_FALSIFIED: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INPUT: u8 = 66;
const EXIT_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(name = "hodgeform", version, about = "Degree maps and Hodge-Riemann forms of Stanley-Reisner rings")]
struct Cli {
    /// Coefficient field: 0 for Q, a prime p, or 2^e.
    #[arg(long = "char", global = true, default_value = "0")]
    field: Field,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Parameter system: generic, punctured:1,2,3, or a JSON file of scalar rows.
    #[arg(long, global = true, default_value = "generic")]
    lsop: String,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// A built-in complex, see `fixtures`.
    #[arg(long, conflicts_with = "complex")]
    fixture: Option<String>,
    /// A JSON file {"n": .., "facets": [[..], ..]}.
    #[arg(long)]
    complex: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Reduce,
    Kx,
}

#[derive(Subcommand)]
enum Command {
    /// Topology, orientation and f- and h-vectors.
    Analyze(Source),
    /// deg of a monomial, or of l^d when none is given.
    Degree {
        #[command(flatten)]
        source: Source,
        /// e.g. x1^2*x3
        #[arg(long)]
        monomial: Option<FaceMonomial>,
        #[arg(long, value_enum, default_value = "reduce")]
        method: Method,
    },
    /// Hodge-Riemann Gram matrix and determinant in degree q.
    Gram {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: usize,
        /// Comma-separated monomials; selected automatically if omitted.
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<FaceMonomial>>,
        /// Read valuations off along curves instead of expanding D_q.
        #[arg(long)]
        specialized: bool,
    },
    /// Dimensions of the artinian reduction and its Gorenstein quotient.
    Hilbert(Source),
    /// Run the desk suite or one check on one fixture.
    Verify {
        #[arg(long, value_enum, conflicts_with_all = ["fixture", "check"])]
        suite: Option<Suite>,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, value_enum, default_value = "ord-profile")]
        check: Check,
        /// Degree for degree-dependent checks; 0 profiles deg(l^d).
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Expand exactly instead of specializing along curves.
        #[arg(long)]
        exact: bool,
    },
    /// List the built-in complexes.
    Fixtures,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Desk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    OrdProfile,
    MiddleDegree,
    StrongLefschetz,
    Formulas,
    NovikSwartz,
    Normalization,
    DualOracle,
    GramSymmetry,
    Locality,
    Flip,
    BasisInvariance,
    StellarBlock,
}

/// Errors split by exit code.
enum Failure {
    Usage(String),
    Data(Error),
    Input(String),
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFixture(_)
            | Error::InvalidField(_)
            | Error::Parse(_)
            | Error::InvalidDimension(_)
            | Error::NotAFace(_)
            | Error::NotAFacet(_)
            | Error::NotPure
            | Error::NotPseudomanifold(_)
            | Error::NonOrientable
            | Error::NotLsop(_)
            | Error::PuncturedAtFacet { .. }
            | Error::EmptyFacetList
            | Error::EmptyFacet
            | Error::VertexOutOfRange { .. }
            | Error::Inhomogeneous(_)
            | Error::NonSquare { .. } => Failure::Data(e),
            Error::Io(_) | Error::Json(_) => Failure::Input(e.to_string()),
            e => Failure::Internal(e),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.parallel {
        if n == 0 {
            eprintln!("error: --parallel must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_SOFTWARE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Data(e) => (EXIT_DATA, e.to_string()),
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Internal(e) => (EXIT_SOFTWARE, e.to_string()),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Fixtures => fixtures(cli),
        Command::Analyze(src) => analyze(cli, &load(src)?),
        Command::Degree { source, monomial, method } => degree(cli, &load(source)?, monomial.as_ref(), *method),
        Command::Gram { source, q, basis, specialized } => {
            let fx = load(source)?;
            let r = reduction(cli, &fx)?;
            let report = gram_report(&r, *q, basis.clone(), !specialized)?;
            emit(cli, &report, || {
                let mut out = vec![format!("q = {}, basis: {}", report.q, join(&report.basis))];
                if let Some(m) = &report.matrix {
                    out.push("Gram matrix:".into());
                    out.extend(m.iter().map(|row| format!("  [{}]", row.iter().map(|e| brief(e)).collect::<Vec<_>>().join(", "))));
                }
                if let Some(det) = &report.determinant {
                    out.push(format!("D_{} = {}", report.q, brief(det)));
                }
                if let Some(c) = &report.square_class {
                    out.push(format!("D_{} / prod [F] = {c} * square", report.q));
                }
                if !report.ord_profile.is_empty() {
                    out.push("ord profile:".into());
                    out.extend(report.ord_profile.iter().map(|(s, v)| format!("  [{s}] {v}")));
                }
                out
            })
        }
        Command::Hilbert(src) => {
            let fx = load(src)?;
            let r = reduction(cli, &fx)?;
            let h = hilbert_report(&r)?;
            emit(cli, &h, || {
                vec![
                    format!("H    {:?}", h.h),
                    format!("Hbar {:?}", h.hbar),
                    format!("h-vector {:?}, reduced Betti {:?}", h.h_vector, h.reduced_betti),
                    format!("homology manifold: {}, predicted Hbar {:?}", h.is_homology_manifold, h.prediction),
                ]
            })
        }
        Command::Verify { suite: Some(Suite::Desk), .. } => {
            require_generic(cli)?;
            let report = run_suite(&desk_suite(cli.field, cli.seed), cli.field, cli.seed)?;
            report_suite(cli, &report)
        }
        Command::Verify { suite: None, fixture, check, q, exact } => {
            require_generic(cli)?;
            let name = fixture.as_deref().ok_or_else(|| Failure::Usage("verify needs --suite or --fixture".into()))?;
            let fx = verify::fixture(name)?;
            let outcome = single_check(&fx, name, *check, *q, *exact, cli.field, cli.seed)?;
            let report = Report {
                schema_version: verify::SCHEMA_VERSION,
                field: cli.field.to_string(),
                seed: cli.seed,
                outcomes: vec![verify::GroupedOutcome { group: "single".into(), outcome }],
            };
            report_suite(cli, &report)
        }
    }
}

fn single_check(fx: &Fixture, name: &str, check: Check, q: usize, exact: bool, f: Field, seed: u64) -> Result<CheckOutcome, Failure> {
    let out = match check {
        Check::OrdProfile if q == 0 => {
            verify::check_ord_profile(fx, f, seed, ProfileTarget::PowerDegree, Expectation::Exact { facet: -1, other: 0 }, exact)
        }
        Check::OrdProfile => {
            verify::check_ord_profile(fx, f, seed, ProfileTarget::Gram { q }, Expectation::Parity { facet: 1, other: 0 }, exact)
        }
        Check::MiddleDegree => verify::check_middledegree(fx, f, seed),
        Check::StrongLefschetz => verify::check_strongg(fx, f, seed, q, false),
        Check::Formulas => verify::check_fixture_formulas(name, f, seed),
        Check::NovikSwartz => verify::check_novik_swartz(fx, f, seed),
        Check::Normalization => verify::check_degree_normalization(fx, f, seed),
        Check::DualOracle => verify::check_dual_oracle(fx, f, seed),
        Check::GramSymmetry => verify::check_gram_symmetry(fx, f, seed, q),
        Check::Locality => verify::check_locality(fx, f, seed),
        Check::Flip => verify::check_flip_antisymmetry(fx, f, seed),
        Check::BasisInvariance => verify::check_basis_invariance(fx, f, seed, q, 5),
        Check::StellarBlock => verify::check_stellar_block(fx, f, seed, q),
    };
    Ok(out?)
}

fn require_generic(cli: &Cli) -> Result<(), Failure> {
    if cli.lsop != "generic" {
        return Err(Failure::Usage("verify always uses the generic system; drop --lsop".into()));
    }
    Ok(())
}

fn report_suite(cli: &Cli, report: &Report) -> Outcome {
    let code = match report.exit_code() {
        0 => 0,
        2 => EXIT_FALSIFIED,
        _ => EXIT_INCONCLUSIVE,
    };
    emit(cli, report, || {
        let mut out: Vec<String> = report
            .outcomes
            .iter()
            .map(|g| {
                let o = &g.outcome;
                let status = match o.status {
                    Status::Verified => "verified",
                    Status::Falsified => "FALSIFIED",
                    Status::Inconclusive => "inconclusive",
                };
                let mut line = format!("{status:<12} [{}] {} on {} ({} ms)", g.group, o.claim, o.fixture, o.runtime_ms);
                if let Some(w) = &o.witness {
                    line.push_str(&format!("\n             witness: {}", w.detail));
                    if let (Some(s), Some(v)) = (&w.subset, w.ord) {
                        line.push_str(&format!(" (subset {s:?}, ord {v})"));
                    }
                }
                line
            })
            .collect();
        out.push(format!(
            "{} verified, {} falsified, {} inconclusive",
            report.count(Status::Verified),
            report.count(Status::Falsified),
            report.count(Status::Inconclusive)
        ));
        out
    })?;
    Ok(code)
}

fn fixtures(cli: &Cli) -> Outcome {
    let names = verify::fixture_names();
    emit(cli, &names, || names.iter().map(|s| s.to_string()).collect())
}

#[derive(Serialize)]
struct Analysis {
    name: String,
    n: usize,
    d: usize,
    facets: Vec<Vec<usize>>,
    f_vector: Vec<usize>,
    h_vector: Vec<i64>,
    topology: TopologyReport,
    /// Facet signs of a coherent orientation, if one exists over the field.
    orientation: Option<Vec<i8>>,
}

fn analyze(cli: &Cli, fx: &Fixture) -> Outcome {
    let c = &fx.complex;
    let orientation = match fx.orientation(cli.field) {
        Ok(o) if o.is_compatible(c) => Some(o.signs().to_vec()),
        Ok(_) | Err(Error::NonOrientable) | Err(Error::NotPseudomanifold(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let a = Analysis {
        name: fx.name.clone(),
        n: c.n(),
        d: c.d(),
        facets: c.facets().to_vec(),
        f_vector: c.f_vector(),
        h_vector: c.h_vector()?,
        topology: topology_report(c, cli.field)?,
        orientation,
    };
    emit(cli, &a, || {
        vec![
            format!("{}: n = {}, d = {}, {} facets", a.name, a.n, a.d, a.facets.len()),
            format!("f-vector {:?}", a.f_vector),
            format!("h-vector {:?}", a.h_vector),
            format!(
                "connected: {}, pseudomanifold: {}, homology manifold: {}, homology sphere: {}",
                a.topology.connected, a.topology.is_pseudomanifold, a.topology.is_homology_manifold, a.topology.is_homology_sphere
            ),
            format!("reduced Betti {:?}", a.topology.reduced_betti),
            match &a.orientation {
                Some(s) => format!("orientation {s:?}"),
                None => "not orientable over this field".into(),
            },
        ]
    })
}

#[derive(Serialize)]
struct DegreeValue {
    monomial: String,
    method: &'static str,
    value: String,
}

fn degree(cli: &Cli, fx: &Fixture, m: Option<&FaceMonomial>, method: Method) -> Outcome {
    let r = reduction(cli, fx)?;
    let map: DegreeMap<_> = r.symbolic()?;
    let d = r.d();
    let (label, value) = match (m, method) {
        (None, _) => (format!("l^{d}"), PowerDegree.eval(&map)?),
        (Some(m), Method::Reduce) => (m.to_string(), map.reduce(m)?),
        (Some(m), Method::Kx) => (m.to_string(), map.kx(m)?),
    };
    let out = DegreeValue {
        monomial: label,
        method: match method {
            Method::Reduce => "reduce",
            Method::Kx => "kx",
        },
        value: value.to_string(),
    };
    emit(cli, &out, || vec![format!("deg({}) = {}", out.monomial, brief(&out.value))])
}

fn load(src: &Source) -> Result<Fixture, Failure> {
    match (&src.fixture, &src.complex) {
        (Some(name), _) => Ok(verify::fixture(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let spec: ComplexSpec = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let complex = SimplicialComplex::from_spec(&spec)?;
            Ok(Fixture { name: path.display().to_string(), complex, signs: None })
        }
        (None, None) => Err(Failure::Usage("give --fixture or --complex".into())),
    }
}

/// Rows of scalars as JSON strings or integers, `rows[i][j-1]` the
/// coefficient of x_j in the i-th form.
fn lsop_from_file(path: &str, field: Field) -> Result<Lsop, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let rows: Vec<Vec<serde_json::Value>> = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => field.parse_scalar(s),
                    v => field.parse_scalar(&v.to_string()),
                })
                .collect::<hodgeform::Result<Vec<_>>>()
        })
        .collect::<hodgeform::Result<Vec<_>>>()?;
    Ok(Lsop::from_scalars(rows)?)
}

fn reduction(cli: &Cli, fx: &Fixture) -> Result<Reduction, Failure> {
    let c = &fx.complex;
    let lsop = match cli.lsop.as_str() {
        "generic" => Lsop::generic(c.d(), c.n()),
        s if s.starts_with("punctured:") => {
            let subset = s["punctured:".len()..]
                .split(',')
                .map(|v| v.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad --lsop `{s}`")))?;
            Lsop::punctured(c, &subset)?
        }
        path => lsop_from_file(path, cli.field)?,
    };
    if lsop.d() != c.d() || lsop.n() != c.n() {
        return Err(Failure::Usage(format!("parameter system is {}x{}, complex needs {}x{}", lsop.d(), lsop.n(), c.d(), c.n())));
    }
    Ok(fx.reduction(lsop, cli.field, cli.seed)?)
}

/// Long expressions are elided in text output; `--json` prints them whole.
fn brief(e: &str) -> String {
    const LIMIT: usize = 240;
    if e.len() <= LIMIT {
        e.to_string()
    } else {
        format!("<{} terms, {} chars; see --json>", e.matches(&['+', '-'][..]).count() + 1, e.len())
    }
}

fn join(b: &[FaceMonomial]) -> String {
    b.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
}

fn emit<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> Vec<String>) -> Outcome {
    if cli.json {
        let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.into()))?;
        println!("{s}");
    } else {
        for line in text() {
            println!("{line}");
        }
    }
    Ok(0)
}
