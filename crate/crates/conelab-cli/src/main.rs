//! `conelab` — generate, minimize and test spectral inequality cones.
//!
//! Exit codes: 0 success / member / equal / all samples passed;
//! 1 negative verdict; 2 usage or parse error; 3 numerics failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conelab::combinat::Partition;
use conelab::doc::InequalityDocument;
use conelab::exec::ExecMode;
use conelab::horn::{horn_description, HornCone, HornOptions};
use conelab::ineq::{ConeDescription, MembershipReport};
use conelab::lp::{cones_equal, minimize_description, ConesEqualOutcome};
use conelab::lr::lr_coefficient;
use conelab::lrmn::{lrmn_description, LrmnCone, LrmnOptions, TripleForm};
use conelab::offdiag::{
    a_description, s_description, t_description, thompson_rows, ACone, AMethod, OffdiagOptions,
    SCone, StMethod, TCone,
};
use conelab::point::{point_exact, point_float};
use conelab::verify::{run_verify, ConeId, VerifyConfig, VerifyReport};
use conelab::Error;

#[derive(Parser)]
#[command(
    name = "conelab",
    version,
    about = "Spectral inequality cones: generation, membership, minimization, verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Littlewood-Richardson coefficient c^lambda_{mu,nu}
    Lr {
        /// Partition, e.g. 3,2,1 (use 0 for the empty partition)
        lambda: String,
        mu: String,
        nu: String,
    },
    /// Generate an inequality description
    Gen(GenArgs),
    /// Decide membership of a point (exact rationals unless --tol is given)
    Check(CheckArgs),
    /// Sample random matrices and test the cone's defining membership
    Verify(VerifyArgs),
    /// Exact equality of the cones of two generated documents
    Equal {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConeArg {
    Horn,
    Lrmn,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "T", alias = "t")]
    T,
    Thompson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SizeArgs {
    /// Size for horn; second block for lrmn
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// First block size for lrmn
    #[arg(short = 'm', long)]
    m: Option<usize>,
    /// First block size for A/S/T, matrix size for thompson
    #[arg(short = 'p', long)]
    p: Option<usize>,
    /// Second block size for A/S/T
    #[arg(short = 'q', long)]
    q: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    cone: ConeArg,
    #[command(flatten)]
    size: SizeArgs,
    /// A: fflp|embed (default fflp); lrmn: half|full (default half)
    #[arg(long)]
    method: Option<String>,
    /// Keep only coefficient-one triples and include the chamber facets,
    /// i.e. emit the minimal known description
    #[arg(long)]
    c1: bool,
    /// Append the chamber rows of every block
    #[arg(long)]
    chamber: bool,
    /// Drop rows proved redundant by exact LP before printing
    #[arg(long)]
    minimize: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    cone: ConeArg,
    #[command(flatten)]
    size: SizeArgs,
    /// Point literal, e.g. "lambda=1,0,0,-1;s=1,0" with rational entries
    #[arg(long)]
    point: String,
    /// A: fflp|embed; S/T: direct|pullback
    #[arg(long)]
    method: Option<String>,
    /// Floating tolerance; enables decimal point entries
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    cone: ConeArg,
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long)]
    samples: usize,
    /// RNG seed; one stream per sample index
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    configure_workers();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::NoConvergence(_) => 3u8,
                _ => 2u8,
            };
            ExitCode::from(code)
        }
    }
}

/// Honors CONELAB_WORKERS for the verify command's sample parallelism.
fn configure_workers() {
    if let Ok(v) = std::env::var("CONELAB_WORKERS") {
        if let Ok(n) = v.parse::<usize>() {
            conelab::exec::set_worker_count(n);
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Lr { lambda, mu, nu } => {
            let l = parse_partition(&lambda)?;
            let m = parse_partition(&mu)?;
            let n = parse_partition(&nu)?;
            println!("{}", lr_coefficient(&l, &m, &n));
            Ok(0)
        }
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Check(args) => cmd_check(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Equal { a, b } => cmd_equal(&a, &b),
    }
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    let parts: Result<Vec<u32>, _> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(u32::from_str)
        .collect();
    let parts = parts.map_err(|_| Error::Parse(format!("bad partition {s:?}")))?;
    Partition::new(parts)
}

struct Sizes {
    n: usize,
    m: usize,
    p: usize,
    q: usize,
}

fn sizes_for(cone: ConeArg, s: &SizeArgs) -> Result<Sizes, Error> {
    let missing = |what: &str| Error::Parse(format!("missing required size {what}"));
    match cone {
        ConeArg::Horn => Ok(Sizes { n: s.n.ok_or_else(|| missing("-n"))?, m: 0, p: 0, q: 0 }),
        ConeArg::Lrmn => Ok(Sizes {
            m: s.m.ok_or_else(|| missing("-m"))?,
            n: s.n.ok_or_else(|| missing("-n"))?,
            p: 0,
            q: 0,
        }),
        ConeArg::A | ConeArg::S | ConeArg::T => {
            let p = s.p.ok_or_else(|| missing("-p"))?;
            let q = s.q.ok_or_else(|| missing("-q"))?;
            Ok(Sizes { n: 0, m: 0, p, q })
        }
        ConeArg::Thompson => Ok(Sizes { n: 0, m: 0, p: s.p.ok_or_else(|| missing("-p"))?, q: 0 }),
    }
}

fn build_description(
    cone: ConeArg,
    sz: &Sizes,
    method: Option<&str>,
    c1: bool,
    chamber: bool,
) -> Result<(ConeDescription, String, BTreeMap<String, usize>), Error> {
    // The coefficient-one refinement is the minimal list only together with
    // the chamber facets, so --c1 pulls them in.
    let chamber = chamber || c1;
    let mut params = BTreeMap::new();
    match cone {
        ConeArg::Horn => {
            params.insert("n".into(), sz.n);
            let d = horn_description(sz.n, HornOptions { c1_only: c1, chamber })?;
            Ok((d, "triples".into(), params))
        }
        ConeArg::Lrmn => {
            params.insert("m".into(), sz.m);
            params.insert("n".into(), sz.n);
            let form = match method.unwrap_or("half") {
                "half" => TripleForm::Half,
                "full" => TripleForm::Full,
                other => return Err(Error::Parse(format!("unknown lrmn method {other:?}"))),
            };
            let d = lrmn_description(sz.m, sz.n, LrmnOptions { c1_only: c1, form, chamber })?;
            let id = if form == TripleForm::Half { "half" } else { "full" };
            Ok((d, id.into(), params))
        }
        ConeArg::A => {
            params.insert("p".into(), sz.p);
            params.insert("q".into(), sz.q);
            let m = match method.unwrap_or("fflp") {
                "fflp" => AMethod::Fflp,
                "embed" => AMethod::Embed,
                other => return Err(Error::Parse(format!("unknown A method {other:?}"))),
            };
            let d = a_description(sz.p, sz.q, m, OffdiagOptions { c1_only: c1, chamber })?;
            let id = if m == AMethod::Fflp { "fflp" } else { "embed" };
            Ok((d, id.into(), params))
        }
        ConeArg::S => {
            params.insert("p".into(), sz.p);
            params.insert("q".into(), sz.q);
            let d = s_description(sz.p, sz.q, OffdiagOptions { c1_only: c1, chamber })?;
            Ok((d, "direct".into(), params))
        }
        ConeArg::T => {
            params.insert("p".into(), sz.p);
            params.insert("q".into(), sz.q);
            let d = t_description(sz.p, sz.q, OffdiagOptions { c1_only: c1, chamber })?;
            Ok((d, "direct".into(), params))
        }
        ConeArg::Thompson => {
            params.insert("p".into(), sz.p);
            let mut d = thompson_rows(sz.p)?;
            if chamber {
                d.append_chamber();
            }
            Ok((d, "interlacing".into(), params))
        }
    }
}

fn cone_id_str(cone: ConeArg) -> &'static str {
    match cone {
        ConeArg::Horn => "horn",
        ConeArg::Lrmn => "lrmn",
        ConeArg::A => "A",
        ConeArg::S => "S",
        ConeArg::T => "T",
        ConeArg::Thompson => "thompson",
    }
}

fn cmd_gen(args: GenArgs) -> Result<u8, Error> {
    let sz = sizes_for(args.cone, &args.size)?;
    let (mut desc, method, params) = build_description(
        args.cone,
        &sz,
        args.method.as_deref(),
        args.c1,
        args.chamber,
    )?;
    if args.minimize {
        let (min, _) = minimize_description(&desc)?;
        desc = min;
    }
    let doc = InequalityDocument::from_description(
        &desc,
        cone_id_str(args.cone),
        params,
        &method,
        args.c1,
        args.chamber || args.c1,
        args.minimize,
    );
    match args.format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Text => {
            println!(
                "# {} method={} equalities={} inequalities={}",
                desc.name,
                method,
                desc.equalities.len(),
                desc.inequalities.len()
            );
            for row in &desc.equalities {
                println!("{}", desc.render_row(row));
            }
            for row in &desc.inequalities {
                println!("{}", desc.render_row(row));
            }
        }
    }
    Ok(0)
}

fn print_report(report: &MembershipReport) {
    if report.member {
        println!("member");
    } else {
        println!("not a member; {} violated row(s):", report.violations.len());
        for v in &report.violations {
            match &v.provenance {
                Some(p) => println!("  {}   [{}]", v.rendered, p),
                None => println!("  {}", v.rendered),
            }
        }
    }
}

fn cmd_check(args: CheckArgs) -> Result<u8, Error> {
    let sz = sizes_for(args.cone, &args.size)?;
    // A reference description provides block names/dims for point parsing.
    let (desc, _, _) = build_description(args.cone, &sz, None, false, false)?;
    let report = match args.tol {
        Some(tol) => {
            let blocks = point_float(&args.point, &desc)?;
            check_float(args.cone, &sz, &blocks, args.method.as_deref(), tol)?
        }
        None => {
            let blocks = point_exact(&args.point, &desc)?;
            check_exact(args.cone, &sz, &blocks, args.method.as_deref())?
        }
    };
    print_report(&report);
    Ok(if report.member { 0 } else { 1 })
}

fn a_method(method: Option<&str>) -> Result<AMethod, Error> {
    match method.unwrap_or("fflp") {
        "fflp" => Ok(AMethod::Fflp),
        "embed" => Ok(AMethod::Embed),
        other => Err(Error::Parse(format!("unknown A method {other:?}"))),
    }
}

fn st_method(method: Option<&str>) -> Result<StMethod, Error> {
    match method.unwrap_or("direct") {
        "direct" => Ok(StMethod::Direct),
        "pullback" => Ok(StMethod::Pullback),
        other => Err(Error::Parse(format!("unknown method {other:?}"))),
    }
}

fn check_float(
    cone: ConeArg,
    sz: &Sizes,
    blocks: &[Vec<f64>],
    method: Option<&str>,
    tol: f64,
) -> Result<MembershipReport, Error> {
    match cone {
        ConeArg::Horn => {
            HornCone::new(sz.n)?.member_float(&blocks[0], &blocks[1], &blocks[2], tol)
        }
        ConeArg::Lrmn => {
            LrmnCone::new(sz.m, sz.n)?.member_float(&blocks[0], &blocks[1], &blocks[2], tol)
        }
        ConeArg::A => {
            ACone::new(sz.p, sz.q)?.member_float(&blocks[0], &blocks[1], a_method(method)?, tol)
        }
        ConeArg::S => SCone::new(sz.p, sz.q)?.member_float(
            &blocks[0],
            &blocks[1],
            &blocks[2],
            st_method(method)?,
            tol,
        ),
        ConeArg::T => TCone::new(sz.p, sz.q)?.member_float(
            &blocks[0],
            &blocks[1],
            &blocks[2],
            st_method(method)?,
            tol,
        ),
        ConeArg::Thompson => thompson_rows(sz.p)?.evaluate_float(blocks, tol),
    }
}

fn check_exact(
    cone: ConeArg,
    sz: &Sizes,
    blocks: &[Vec<num::BigRational>],
    method: Option<&str>,
) -> Result<MembershipReport, Error> {
    match cone {
        ConeArg::Horn => HornCone::new(sz.n)?.member_exact(&blocks[0], &blocks[1], &blocks[2]),
        ConeArg::Lrmn => {
            LrmnCone::new(sz.m, sz.n)?.member_exact(&blocks[0], &blocks[1], &blocks[2])
        }
        ConeArg::A => {
            ACone::new(sz.p, sz.q)?.member_exact(&blocks[0], &blocks[1], a_method(method)?)
        }
        ConeArg::S => SCone::new(sz.p, sz.q)?.member_exact(
            &blocks[0],
            &blocks[1],
            &blocks[2],
            st_method(method)?,
        ),
        ConeArg::T => TCone::new(sz.p, sz.q)?.member_exact(
            &blocks[0],
            &blocks[1],
            &blocks[2],
            st_method(method)?,
        ),
        ConeArg::Thompson => thompson_rows(sz.p)?.evaluate_exact(blocks),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let sz = sizes_for(args.cone, &args.size)?;
    let cone = match args.cone {
        ConeArg::Horn => ConeId::Horn { n: sz.n },
        ConeArg::Lrmn => ConeId::Lrmn { m: sz.m, n: sz.n },
        ConeArg::A => ConeId::A { p: sz.p, q: sz.q },
        ConeArg::S => ConeId::S { p: sz.p, q: sz.q },
        ConeArg::T => ConeId::T { p: sz.p, q: sz.q },
        ConeArg::Thompson => {
            return Err(Error::Parse(
                "verify drives A/S/T/horn/lrmn; thompson is covered by T".into(),
            ))
        }
    };
    let report = run_verify(&VerifyConfig {
        cone,
        samples: args.samples,
        seed: args.seed,
        tol: args.tol,
        mode: ExecMode::auto(),
    })?;
    print_verify_report(&report, args.format, args.seed, args.tol);
    Ok(if report.failed == 0 { 0 } else { 1 })
}

fn print_verify_report(report: &VerifyReport, format: Format, seed: u64, tol: f64) {
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "cone": report.cone,
                "samples": report.samples,
                "seed": seed,
                "tol": tol,
                "passed": report.passed,
                "failed": report.failed,
                "min_slack": report.min_slack,
                "max_eq_residual": report.max_eq_residual,
                "failures": report.failures,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("report json"));
        }
        Format::Text => {
            println!(
                "{}: passed={} failed={} min_slack={:e} max_eq_residual={:e}",
                report.cone, report.passed, report.failed, report.min_slack, report.max_eq_residual
            );
        }
    }
}

fn cmd_equal(a: &PathBuf, b: &PathBuf) -> Result<u8, Error> {
    let read = |p: &PathBuf| -> Result<InequalityDocument, Error> {
        let text = std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        InequalityDocument::from_json(&text)
    };
    let da = read(a)?;
    let db = read(b)?;
    let ca = da.to_description()?;
    let cb = db.to_description()?;
    if ca.block_dims() != cb.block_dims() {
        return Err(Error::DimensionMismatch(format!(
            "documents describe different spaces: {:?} vs {:?}",
            ca.block_dims(),
            cb.block_dims()
        )));
    }
    match cones_equal(&ca, &cb)? {
        ConesEqualOutcome::Equal => {
            println!("equal");
            Ok(0)
        }
        ConesEqualOutcome::Unequal { witness, violated_row, witness_in_first } => {
            let holder = if witness_in_first { da.display_name() } else { db.display_name() };
            println!("unequal: point in {holder} violating \"{violated_row}\"");
            let coords: Vec<String> = witness.iter().map(|r| r.to_string()).collect();
            println!("witness: [{}]", coords.join(", "));
            Ok(1)
        }
    }
}
