//! Command-line front end: compute characters, specialize them, verify the
//! fixture bank and the property suites, and export JSON or DOT.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 resource cap.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use qtchar::engine::{Caps, CharResult, Engine};
use qtchar::error::Error;
use qtchar::fixture::parse_factors;
use qtchar::langlands::{
    dims_report, dual_pair_for_kr, kr_interp_monomial, ordinary_duality_check, t_system_check,
    tensor_dual, KRSpec,
};
use qtchar::lie::parse_algebra_id;
use qtchar::ring::{Direction, Ring, Scheme};
use qtchar::{Monomial, SpectralIndex};

#[derive(Parser)]
#[command(name = "qtchar", about = "Interpolating (q,t)-characters of KR modules")]
struct Cli {
    /// Worklist grade cap.
    #[arg(long, global = true, default_value_t = 64)]
    grade_cap: u32,
    /// Worklist term cap.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    term_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Selection {
    /// Algebra id: A1, A2, A3, B2, B3, C2, C3, F4, G2, optionally with
    /// a uniform label multiplier, e.g. `A1,labels=2`.
    #[arg(long)]
    algebra: String,
    /// Interpolation direction.
    #[arg(long, default_value = "forward")]
    direction: String,
    /// KR module as `node:length:qshift:tshift` (node is 1-based).
    #[arg(long)]
    kr: Option<String>,
    /// Dominant starting monomial, e.g. `Y[1,(0,0)] Y[2,(5,3)]`.
    #[arg(long)]
    monomial: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an interpolating character.
    Char(Selection),
    /// Compute a character and print one specialization.
    Specialize {
        #[command(flatten)]
        selection: Selection,
        /// Which specialization: q or t.
        #[arg(long)]
        side: String,
    },
    /// Print the dimension report of a character.
    Dims(Selection),
    /// Compute a KR character and verify the Langlands-dual pair checks.
    Dual {
        #[command(flatten)]
        selection: Selection,
        /// Additional KR factors `node:length:qshift:tshift` for a tensor
        /// product.
        #[arg(long)]
        tensor: Vec<String>,
        /// Assert that the tensor product is simple (required with --tensor).
        #[arg(long)]
        assume_simple: bool,
    },
    /// Verify the dimension recursions for an algebra.
    Tsystem {
        #[arg(long)]
        algebra: String,
    },
    /// Run a verification suite: paper, props or all.
    Verify {
        #[arg(long)]
        suite: String,
        /// Fixture directory for the paper suite.
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
    },
    /// Export a character as json, dot or text.
    Export {
        #[command(flatten)]
        selection: Selection,
        #[arg(long)]
        format: String,
    },
}

fn parse_kr(raw: &str) -> Result<KRSpec, Error> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidInput(
            "--kr wants node:length:qshift:tshift".into(),
        ));
    }
    let num = |s: &str| {
        s.parse::<i32>()
            .map_err(|_| Error::InvalidInput(format!("bad number `{s}` in --kr")))
    };
    let node = num(parts[0])?;
    if node < 1 {
        return Err(Error::InvalidInput("--kr node is 1-based".into()));
    }
    Ok(KRSpec {
        node: node as usize - 1,
        length: num(parts[1])? as u32,
        shift: SpectralIndex::new(num(parts[2])?, num(parts[3])?),
    })
}

struct Selected {
    scheme: Scheme,
    engine: Engine,
    m0: Monomial,
}

fn select(selection: &Selection, caps: Caps) -> Result<Selected, Error> {
    let alg = Arc::new(parse_algebra_id(&selection.algebra)?);
    let dir = match selection.direction.as_str() {
        "forward" => Direction::Forward,
        "reverse" => Direction::Reverse,
        other => return Err(Error::InvalidInput(format!("unknown direction `{other}`"))),
    };
    let scheme = Scheme { alg, dir };
    let m0 = match (&selection.kr, &selection.monomial) {
        (Some(kr), None) => kr_interp_monomial(&scheme, &parse_kr(kr)?)?,
        (None, Some(expr)) => parse_factors(expr, 0)?,
        _ => {
            return Err(Error::InvalidInput(
                "choose exactly one of --kr or --monomial".into(),
            ))
        }
    };
    let engine = Engine::new(Ring::Interp(scheme.clone()), caps);
    Ok(Selected { scheme, engine, m0 })
}

fn print_result(c: &CharResult) {
    let report = dims_report(c);
    println!(
        "# highest: {}",
        qtchar::render::render_monomial(&c.highest, "Y")
    );
    println!(
        "# dims: q={} t={} idempotent-free={}",
        report.dim_q, report.dim_t, report.iota_free
    );
    println!("{}", c.poly.render());
}

fn run(cli: Cli) -> Result<bool, Error> {
    let caps = Caps {
        grade: cli.grade_cap,
        terms: cli.term_cap,
    };
    match cli.command {
        Command::Char(selection) => {
            let sel = select(&selection, caps)?;
            let result = sel.engine.char_f(&sel.m0)?;
            print_result(&result);
            Ok(true)
        }
        Command::Specialize { selection, side } => {
            let sel = select(&selection, caps)?;
            let result = sel.engine.char_f(&sel.m0)?;
            let spec = match side.as_str() {
                "q" => result.poly.specialize_q()?,
                "t" => result.poly.specialize_t()?,
                other => return Err(Error::InvalidInput(format!("unknown side `{other}`"))),
            };
            println!("{}", spec.render());
            Ok(true)
        }
        Command::Dims(selection) => {
            let sel = select(&selection, caps)?;
            let result = sel.engine.char_f(&sel.m0)?;
            let report = dims_report(&result);
            println!(
                "q={} t={} idempotent-free={}",
                report.dim_q, report.dim_t, report.iota_free
            );
            Ok(true)
        }
        Command::Dual {
            selection,
            tensor,
            assume_simple,
        } => {
            let kr = selection
                .kr
                .clone()
                .ok_or_else(|| Error::InvalidInput("dual needs a --kr specification".into()))?;
            let sel = select(&selection, caps)?;
            let mut pairs = vec![dual_pair_for_kr(&sel.engine, &parse_kr(&kr)?)?];
            if !tensor.is_empty() && !assume_simple {
                return Err(Error::InvalidInput(
                    "tensor duals need --assume-simple (irreducibility is an input assertion)"
                        .into(),
                ));
            }
            for raw in &tensor {
                pairs.push(dual_pair_for_kr(&sel.engine, &parse_kr(raw)?)?);
            }
            let pair = if pairs.len() == 1 {
                pairs.pop().unwrap()
            } else {
                tensor_dual(&sel.engine, &pairs)?
            };
            println!("# dual algebra: {}", sel.scheme.alg.dual_name);
            println!(
                "# dims: source={} dual={}",
                pair.report.dims.0, pair.report.dims.1
            );
            println!(
                "# affine-minuscule: source={} dual={}",
                pair.report.source_minuscule, pair.report.dual_minuscule
            );
            println!("# dual highest is a KR string: {}", pair.report.dual_is_kr);
            if sel.scheme.dir == Direction::Forward && tensor.is_empty() {
                let ordinary = ordinary_duality_check(&sel.scheme.alg, &pair)?;
                println!(
                    "# ordinary duality: dominates={} highest-weights-match={}",
                    ordinary.dominates, ordinary.highest_match
                );
            }
            println!("{}", pair.dual.render());
            Ok(pair.report.all_ok())
        }
        Command::Tsystem { algebra } => {
            let alg = Arc::new(parse_algebra_id(&algebra)?);
            let checks = t_system_check(&alg, caps)?;
            let mut ok = true;
            for check in checks {
                ok &= check.pass;
                println!(
                    "[{}] {} ({} = {})",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name,
                    check.lhs,
                    check.rhs
                );
            }
            Ok(ok)
        }
        Command::Verify { suite, fixtures } => {
            let mut outcomes = Vec::new();
            if suite == "paper" || suite == "all" {
                outcomes.extend(qtchar::verify::verify_paper(&fixtures, caps)?);
            }
            if suite == "props" || suite == "all" {
                outcomes.extend(qtchar::verify::verify_props(caps));
            }
            if outcomes.is_empty() {
                return Err(Error::InvalidInput(format!("unknown suite `{suite}`")));
            }
            let mut ok = true;
            for o in &outcomes {
                ok &= o.pass;
                println!(
                    "[{}] {} ({})",
                    if o.pass { "PASS" } else { "FAIL" },
                    o.name,
                    o.locus
                );
                if !o.pass {
                    for line in o.details.lines() {
                        println!("    {line}");
                    }
                }
            }
            Ok(ok)
        }
        Command::Export { selection, format } => {
            let sel = select(&selection, caps)?;
            let result = sel.engine.char_f(&sel.m0)?;
            match format.as_str() {
                "json" => println!("{}", qtchar::export::export_json(&result)?),
                "dot" => println!("{}", qtchar::export::export_dot(&result.poly)),
                "text" => print_result(&result),
                other => return Err(Error::InvalidInput(format!("unknown format `{other}`"))),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(Error::Resource(msg)) => {
            eprintln!("resource cap exceeded: {msg}");
            ExitCode::from(3)
        }
        Err(Error::InvalidInput(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
