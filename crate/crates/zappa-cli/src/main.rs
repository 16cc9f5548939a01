//! `zappa` — homology of matched pairs from JSON descriptions.
//!
//! Exit codes: 0 success, 1 validation failure, 2 enumeration cap exceeded,
//! 3 I/O, parse or usage error.

mod input;
mod selftest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use zappa::abelian::AbelianGroup;
use zappa::category::{FiniteCategory, DEFAULT_CAP};
use zappa::chain_maps::Theories;
use zappa::cocycle::{
    cochain2_from_raw, cochain2_to_raw, is_cohomologous, psi2, validate_categorical_2cocycle, validate_total_2cocycle,
    Coefficients, Cohomologous, Convention, RawCochain2, RawTotalCochain, TotalCochain,
};
use zappa::complexes::{categorical_complex, diagonal_complex, render_tuple, DoubleComplex};
use zappa::spectral::{pages, Orientation};
use zappa::Error;

use input::Input;

#[derive(Parser)]
#[command(name = "zappa", version, about = "Homology of matched pairs of finite categories")]
struct Cli {
    /// Highest homological degree to report.
    #[arg(long, short = 'K', default_value_t = 3, global = true)]
    max_degree: usize,
    /// Largest basis allowed in any degree.
    #[arg(long, env = "ZAPPA_CAP", default_value_t = DEFAULT_CAP, global = true)]
    cap: u128,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theory {
    Categorical,
    Diagonal,
    Total,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    Pi,
    Psi,
    Nabla,
    Aw,
    RPi,
    RPsi,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Hv,
    Vh,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    DualTotal,
    Literal,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::DualTotal => Convention::DualTotal,
            ConventionArg::Literal => Convention::Literal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category, matched pair or weighted graph.
    Validate { input: PathBuf },
    /// Homology groups of one of the three complexes.
    Homology {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Theory::Categorical)]
        theory: Theory,
        /// Print the complex itself as JSON instead.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Compare H^⋈, H^Δ and H^Tot of a matched pair through Π, Ψ and ∇.
    Compare {
        input: PathBuf,
        /// Print one chain map per degree, with basis labels, as JSON.
        #[arg(long, value_enum)]
        dump_map: Option<MapName>,
    },
    /// First or second page of a spectral sequence of the double complex.
    Spectral {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OrientationArg::Vh)]
        orientation: OrientationArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        page: u8,
    },
    /// Homology of the self-similar action of a weighted graph.
    Odometer {
        input: PathBuf,
        /// Also run the finite-length oracles at this path length.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 4)]
        cutoff: usize,
        /// Search bound for the gcd criterion.
        #[arg(long, default_value_t = zappa::odometer::DEFAULT_GCD_BOUND)]
        gcd_bound: usize,
    },
    /// ℚ/ℤ-valued 2-cochains.
    Cocycle {
        #[command(subcommand)]
        action: CocycleAction,
    },
    /// Randomised property suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per suite.
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum CocycleAction {
    /// Check a categorical 2-cocycle `{"c": [[f, g, "a/b"]]}` on a category
    /// (or on the product of a matched pair).
    Check { category: PathBuf, cochain: PathBuf },
    /// Check a total 2-cocycle on a matched pair.
    Validate {
        pair: PathBuf,
        cochain: PathBuf,
        #[arg(long, value_enum, default_value_t = ConventionArg::DualTotal)]
        convention: ConventionArg,
    },
    /// Validate a total 2-cocycle and transfer it to the product category.
    Transfer {
        pair: PathBuf,
        cochain: PathBuf,
        #[arg(long, value_enum, default_value_t = ConventionArg::DualTotal)]
        convention: ConventionArg,
    },
    /// Decide whether two categorical 2-cochains differ by a coboundary.
    Cohomologous {
        category: PathBuf,
        first: PathBuf,
        second: PathBuf,
        /// Restrict coefficients to (1/n)ℤ/ℤ.
        #[arg(long)]
        modulus: Option<u64>,
    },
}

pub enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
    /// A completed check that came out negative; the report is already printed.
    Invalid,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_cap() => 2,
            Failure::Lib(Error::Parse(_)) | Failure::Io(_) | Failure::Usage(_) => 3,
            Failure::Lib(_) | Failure::Invalid => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Lib(e) => report_error(cli.format, &e.to_string()),
                Failure::Io(m) | Failure::Usage(m) => report_error(cli.format, m),
                Failure::Invalid => {}
            }
            ExitCode::from(f.code())
        }
    }
}

fn report_error(format: Format, msg: &str) {
    match format {
        Format::Text => eprintln!("error: {msg}"),
        Format::Json => println!("{}", json!({ "error": msg })),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn group_rows(gs: &[AbelianGroup]) -> Vec<serde_json::Value> {
    gs.iter()
        .enumerate()
        .map(|(k, g)| json!({ "degree": k, "free_rank": g.free_rank, "torsion": g.torsion.iter().map(|t| t.to_string().parse::<u64>().map(serde_json::Value::from).unwrap_or_else(|_| t.to_string().into())).collect::<Vec<_>>() }))
        .collect()
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let k = cli.max_degree;
    let cap = cli.cap;
    if cap == 0 {
        return Err(Failure::Usage("--cap must be positive".into()));
    }
    match &cli.command {
        Command::Validate { input } => validate(cli, input),
        Command::Homology { input, theory, dump_complex } => {
            let (label, groups, raw) = match (input::load(input)?, theory) {
                (Input::Category(c), Theory::Categorical) => {
                    let cx = categorical_complex(&c, k, cap)?;
                    ("categorical", cx.homology_groups(k)?, cx.to_raw(|t| render_tuple(&c, t)))
                }
                (Input::Pair(mp), Theory::Categorical) => {
                    let zs = mp.zappa_szep()?;
                    let cx = categorical_complex(&zs.category, k, cap)?;
                    ("categorical", cx.homology_groups(k)?, cx.to_raw(|t| render_tuple(&zs.category, t)))
                }
                (Input::Pair(mp), Theory::Diagonal) => {
                    let cx = diagonal_complex(&mp, k, cap)?;
                    ("diagonal", cx.homology_groups(k)?, cx.to_raw(|x| x.render(&mp)))
                }
                (Input::Pair(mp), Theory::Total) => {
                    let cx = DoubleComplex::new(&mp, k, cap)?.total()?;
                    ("total", cx.homology_groups(k)?, cx.to_raw(|x| x.render(&mp)))
                }
                (other, _) => {
                    return Err(Failure::Usage(format!("this theory needs a matched pair, found a {}", other.kind())))
                }
            };
            if *dump_complex {
                return Ok(pretty(&raw));
            }
            Ok(match cli.format {
                Format::Json => pretty(&json!({ "theory": label, "homology": group_rows(&groups) })),
                Format::Text => {
                    let mut s = format!("{label} homology\n");
                    for (d, g) in groups.iter().enumerate() {
                        writeln!(s, "H_{d} = {g}").unwrap();
                    }
                    s
                }
            })
        }
        Command::Compare { input, dump_map } => compare(cli, &input::pair(input)?, *dump_map),
        Command::Spectral { input, orientation, page } => {
            let mp = input::pair(input)?;
            let dc = DoubleComplex::new(&mp, k + 1, cap)?;
            let o = match orientation {
                OrientationArg::Hv => Orientation::Hv,
                OrientationArg::Vh => Orientation::Vh,
            };
            let ps = pages(&dc, o)?;
            let p = if *page == 1 { &ps.first } else { &ps.second };
            Ok(match cli.format {
                Format::Json => pretty(&p.to_json()),
                Format::Text => p.render(),
            })
        }
        Command::Odometer { input, check, cutoff, gcd_bound } => {
            let g = input::graph(input)?;
            let report = g.odometer_homology(*gcd_bound)?;
            let oracles = if *check {
                let dec = g.verify_decomposition(*cutoff, cap)?;
                let by_paths = g.coker_m_by_paths(*cutoff)?;
                Some((dec, by_paths))
            } else {
                None
            };
            let ok = report.consistent
                && oracles.as_ref().is_none_or(|(d, c)| d.holds() && *c == report.h1.quotient);
            let out = match cli.format {
                Format::Json => pretty(&json!({
                    "report": report,
                    "oracles": oracles.as_ref().map(|(d, c)| json!({
                        "cutoff": cutoff,
                        "decomposition": d,
                        "coker_m_by_paths": c,
                    })),
                })),
                Format::Text => {
                    let mut s = report.render();
                    if let Some((d, c)) = &oracles {
                        writeln!(
                            s,
                            "oracles at length ≤ {cutoff}: decomposition {} on {} paths, im Δ̃ ∩ ZE¹ {}, coker M from paths {}",
                            if d.failures.is_empty() { "holds" } else { "FAILS" },
                            d.checked,
                            if d.intersection_trivial { "= 0" } else { "≠ 0" },
                            c
                        )
                        .unwrap();
                    }
                    s
                }
            };
            if ok {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Invalid)
            }
        }
        Command::Cocycle { action } => cocycle(cli, action),
        Command::Selftest { seed, cases } => {
            let summary = selftest::run(*seed, *cases, cap);
            let out = match cli.format {
                Format::Json => pretty(&summary),
                Format::Text => summary.render(),
            };
            if summary.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Invalid)
            }
        }
    }
}

fn validate(cli: &Cli, path: &Path) -> Result<String, Failure> {
    let loaded = match input::load(path) {
        Ok(x) => x,
        Err(Failure::Lib(e)) if !matches!(e, Error::Parse(_)) && !e.is_cap() => {
            match cli.format {
                Format::Json => print!("{}", pretty(&json!({ "valid": false, "error": e.to_string() }))),
                Format::Text => println!("invalid: {e}"),
            }
            return Err(Failure::Invalid);
        }
        Err(f) => return Err(f),
    };
    let (kind, detail) = match &loaded {
        Input::Category(c) => ("category", json!({ "objects": c.num_objects(), "morphisms": c.len() })),
        Input::Pair(mp) => {
            let zs = mp.zappa_szep()?;
            ("matched pair", json!({ "objects": mp.c().num_objects(), "c": mp.c().len(), "d": mp.d().len(), "product": zs.category.len() }))
        }
        Input::Graph(g) => ("weighted graph", json!({ "vertices": g.num_vertices(), "edges": g.num_edges() })),
    };
    Ok(match cli.format {
        Format::Json => pretty(&json!({ "valid": true, "kind": kind, "sizes": detail })),
        Format::Text => {
            let sizes = detail
                .as_object()
                .unwrap()
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect::<Vec<_>>()
                .join(", ");
            format!("ok: {kind} ({sizes})\n")
        }
    })
}

fn compare(cli: &Cli, mp: &zappa::matched_pair::MatchedPair, dump: Option<MapName>) -> Result<String, Failure> {
    let k = cli.max_degree;
    let th = Theories::new(mp, k, cli.cap)?;
    let cat = &th.zs.category;
    let cell = |x: &zappa::complexes::Cell| x.render(mp);
    let tuple = |t: &zappa::category::ComposableTuple| render_tuple(cat, t);
    if let Some(m) = dump {
        let raw = match m {
            MapName::Pi => th.pi()?.to_raw(&th.diagonal, &th.product, cell, tuple),
            MapName::Psi => th.psi()?.to_raw(&th.product, &th.total, tuple, cell),
            MapName::Nabla => th.eilenberg_zilber()?.to_raw(&th.total, &th.diagonal, cell, cell),
            MapName::Aw => th.alexander_whitney()?.to_raw(&th.diagonal, &th.total, cell, cell),
            MapName::RPi => th.r_pi()?.to_raw(&th.product, &th.diagonal, tuple, cell),
            MapName::RPsi => th.r_psi()?.to_raw(&th.total, &th.product, cell, tuple),
        };
        return Ok(pretty(&raw));
    }
    let (pi, psi, nabla) = (th.pi()?, th.psi()?, th.eilenberg_zilber()?);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for d in 0..=k {
        let hp = pi.on_homology(d, &th.diagonal, &th.product)?;
        let hs = psi.on_homology(d, &th.product, &th.total)?;
        let hn = nabla.on_homology(d, &th.total, &th.diagonal)?;
        let round = hn.compose(&hs)?.compose(&hp)?.is_identity();
        let groups = [th.product.homology(d)?.group, th.diagonal.homology(d)?.group, th.total.homology(d)?.group];
        let isos = [hp.is_isomorphism(), hs.is_isomorphism(), hn.is_isomorphism()];
        all_ok &= round && isos.iter().all(|&x| x) && groups[0] == groups[1] && groups[1] == groups[2];
        rows.push((d, groups, isos, round));
    }
    let out = match cli.format {
        Format::Json => pretty(&json!({
            "degrees": rows.iter().map(|(d, g, i, r)| json!({
                "degree": d,
                "product": g[0], "diagonal": g[1], "total": g[2],
                "pi_iso": i[0], "psi_iso": i[1], "nabla_iso": i[2],
                "round_trip_identity": r,
            })).collect::<Vec<_>>(),
            "agree": all_ok,
        })),
        Format::Text => {
            let w = rows.iter().flat_map(|r| r.1.iter().map(|g| g.to_string().chars().count())).max().unwrap_or(1).max(5);
            let mut s = format!("{:<3} {:<w$} {:<w$} {:<w$}  Π    Ψ    ∇    ∇ΨΠ\n", "k", "H^⋈", "H^Δ", "H^Tot");
            let v = |b: bool| if b { "iso " } else { "NO  " };
            for (d, g, i, r) in &rows {
                writeln!(
                    s,
                    "{d:<3} {:<w$} {:<w$} {:<w$}  {} {} {} {}",
                    g[0].to_string(),
                    g[1].to_string(),
                    g[2].to_string(),
                    v(i[0]),
                    v(i[1]),
                    v(i[2]),
                    if *r { "id" } else { "NOT id" }
                )
                .unwrap();
            }
            s
        }
    };
    if all_ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Invalid)
    }
}

fn load_cochain2(cat: &FiniteCategory, path: &Path) -> Result<zappa::cocycle::Cochain2, Failure> {
    let raw: RawCochain2 = input::parse(path, &input::read(path)?)?;
    Ok(cochain2_from_raw(cat, &raw)?)
}

fn verdict(cli: &Cli, what: &str, r: zappa::Result<()>, extra: serde_json::Value) -> Result<String, Failure> {
    let (valid, why) = match r {
        Ok(()) => (true, None),
        Err(e @ (Error::CocycleViolation(_) | Error::NotComposable(_) | Error::IndexOutOfRange { .. })) => {
            (false, Some(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let out = match cli.format {
        Format::Json => {
            let mut v = json!({ "check": what, "valid": valid, "violation": why });
            if let (Some(o), Some(e)) = (v.as_object_mut(), extra.as_object()) {
                o.extend(e.clone());
            }
            pretty(&v)
        }
        Format::Text => {
            let mut s = match &why {
                None => format!("ok: {what}\n"),
                Some(w) => format!("invalid {what}: {w}\n"),
            };
            if let Some(e) = extra.as_object() {
                for (k, v) in e {
                    writeln!(s, "{k}: {v}").unwrap();
                }
            }
            s
        }
    };
    if valid {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Invalid)
    }
}

fn cocycle(cli: &Cli, action: &CocycleAction) -> Result<String, Failure> {
    match action {
        CocycleAction::Check { category, cochain } => {
            let cat = input::category(category)?;
            let c = load_cochain2(&cat, cochain)?;
            verdict(cli, "categorical 2-cocycle", validate_categorical_2cocycle(&cat, &c), json!({}))
        }
        CocycleAction::Validate { pair, cochain, convention } => {
            let mp = input::pair(pair)?;
            let raw: RawTotalCochain = input::parse(cochain, &input::read(cochain)?)?;
            let phi = TotalCochain::from_raw(&mp, &raw)?;
            verdict(cli, "total 2-cocycle", validate_total_2cocycle(&mp, &phi, (*convention).into()), json!({}))
        }
        CocycleAction::Transfer { pair, cochain, convention } => {
            let mp = input::pair(pair)?;
            let raw: RawTotalCochain = input::parse(cochain, &input::read(cochain)?)?;
            let phi = TotalCochain::from_raw(&mp, &raw)?;
            let conv = (*convention).into();
            if let Err(e) = validate_total_2cocycle(&mp, &phi, conv) {
                return verdict(cli, "total 2-cocycle", Err(e), json!({}));
            }
            let zs = mp.zappa_szep()?;
            let c = psi2(&mp, &zs, &phi, conv);
            let image = serde_json::to_value(cochain2_to_raw(&zs.category, &c)).expect("serialisable");
            verdict(
                cli,
                "transferred 2-cocycle",
                validate_categorical_2cocycle(&zs.category, &c),
                json!({ "psi2": image["c"] }),
            )
        }
        CocycleAction::Cohomologous { category, first, second, modulus } => {
            let cat = input::category(category)?;
            let c1 = load_cochain2(&cat, first)?;
            let c2 = load_cochain2(&cat, second)?;
            if *modulus == Some(0) {
                return Err(Failure::Usage("--modulus must be positive".into()));
            }
            let coeffs = modulus.map_or(Coefficients::QmodZ, Coefficients::Cyclic);
            let res = is_cohomologous(&cat, &c1, &c2, coeffs)?;
            let coeff_name = modulus.map_or("Q/Z".to_string(), |n| format!("(1/{n})Z/Z"));
            Ok(match (&res, cli.format) {
                (Cohomologous::Yes(b), Format::Json) => pretty(&json!({
                    "coefficients": coeff_name,
                    "cohomologous": true,
                    "b": b.iter().map(|(f, v)| json!([cat.mid(*f), v])).collect::<Vec<_>>(),
                })),
                (Cohomologous::No(u), Format::Json) => pretty(&json!({
                    "coefficients": coeff_name,
                    "cohomologous": false,
                    "certificate": u.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })),
                (Cohomologous::Yes(b), Format::Text) => {
                    let mut s = format!("cohomologous over {coeff_name}: c2 − c1 = d¹b with\n");
                    for (f, v) in b {
                        writeln!(s, "  b({}) = {v}", cat.mid(*f)).unwrap();
                    }
                    s
                }
                (Cohomologous::No(u), Format::Text) => {
                    let support = u.iter().filter(|x| x.to_string() != "0").count();
                    format!("not cohomologous over {coeff_name} (certificate on {support} composable pairs)\n")
                }
            })
        }
    }
}
