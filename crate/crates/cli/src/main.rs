mod config;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use soergel::bimodule::{BSWord, Obj};
use soergel::complex::{gaussian_eliminate, homotopy_class_space};
use soergel::morphism::hom_basis;
use soergel::rouquier::rouquier;
use soergel::{BraidWord, Error, HeckeElement};

use config::Config;
use suites::{Suite, Verdict};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Parser)]
#[command(name = "soergel", version, about = "Exact computations with Soergel bimodules and Rouquier complexes")]
struct Cli {
    /// Optional TOML file with defaults for windows, lattice bounds and threads.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The Rouquier complex of a braid word such as "s1 s2 s1'".
    Rouquier {
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
        /// Split B_iB_i summands and cancel invertible components.
        #[arg(long)]
        reduce: bool,
    },
    /// The image of a braid word in the Hecke algebra.
    Hecke {
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Runs a verification suite.
    Verify {
        suite: Suite,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        strands: Option<usize>,
        /// Internal degrees -D..=D for homology checks.
        #[arg(long)]
        window: Option<i32>,
        /// Include wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Hexagons, slides and permutation-bimodule compatibility together.
    PrebraidSuite {
        #[arg(long)]
        window: Option<i32>,
        #[arg(long)]
        timings: bool,
    },
    /// Degree-d bimodule maps between Bott-Samelson bimodules.
    Hom {
        /// `n:[i,j,..]:shift`, or letters like `B1B2` with --strands.
        a: String,
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: i32,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Dimension of the space of chain maps up to homotopy.
    Classes {
        a: String,
        b: String,
        #[arg(long)]
        strands: Option<usize>,
    },
}

fn braid(text: &str, strands: Option<usize>) -> soergel::Result<BraidWord> {
    match strands {
        Some(n) => BraidWord::parse(n, text),
        None => BraidWord::parse_infer(text, 2),
    }
}

fn bs_word(text: &str, strands: Option<usize>) -> soergel::Result<BSWord> {
    if text.contains(':') {
        return text.parse();
    }
    let t = text.trim();
    let letters: Vec<usize> = if t == "R" || t.is_empty() {
        Vec::new()
    } else {
        t.split('B')
            .skip(1)
            .enumerate()
            .map(|(k, d)| {
                d.trim().parse().map_err(|_| Error::Parse { line: 1, column: k + 1, message: format!("bad letter 'B{}'", d) })
            })
            .collect::<soergel::Result<_>>()?
    };
    let n = strands.unwrap_or_else(|| letters.iter().max().map_or(2, |m| m + 1));
    BSWord::new(n, letters, 0)
}

fn print(json_out: bool, value: serde_json::Value, text: String) {
    if json_out {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{}", text);
    }
}

fn run(cli: Cli) -> soergel::Result<ExitCode> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Rouquier { braid: b, strands, reduce } => {
            let w = braid(&b, strands)?;
            let mut c = Arc::new(rouquier(&w)?);
            if reduce {
                c = gaussian_eliminate(&c, true)?.0;
            }
            let text = c.to_string();
            print(cli.json, serde_json::to_value(&*c).expect("serializable"), text);
        }
        Command::Hecke { braid: b, strands } => {
            let w = braid(&b, strands)?;
            let h = HeckeElement::braid_image(&w);
            let value = json!({ "schema": "soergel.hecke/1", "braid": w.to_string(), "element": h });
            print(cli.json, value, h.to_string());
        }
        Command::Verify { suite, max_len, strands, window, timings } => {
            let cfg = cfg.with_overrides(max_len, strands, window);
            let report = suites::run(suite, &cfg, timings);
            return Ok(finish(cli.json, &report));
        }
        Command::PrebraidSuite { window, timings } => {
            let cfg = cfg.with_overrides(None, None, window);
            let report = suites::run(Suite::Prebraid, &cfg, timings);
            return Ok(finish(cli.json, &report));
        }
        Command::Hom { a, b, deg, strands } => {
            let (x, y) = (bs_word(&a, strands)?, bs_word(&b, strands)?);
            let (mx, my) = (Obj::Word(x.clone()).realize(), Obj::Word(y.clone()).realize());
            let basis = hom_basis(&mx, &my, deg)?;
            let value = json!({
                "schema": "soergel.hom/1",
                "source": x, "target": y, "degree": deg,
                "dimension": basis.len(),
                "basis": basis,
            });
            print(cli.json, value, format!("dim Hom^{}({}, {}) = {}", deg, Obj::Word(x), Obj::Word(y), basis.len()));
        }
        Command::Classes { a, b, strands } => {
            let n = strands.map(Ok).unwrap_or_else(|| {
                Ok::<_, Error>(braid(&a, None)?.strands().max(braid(&b, None)?.strands()))
            })?;
            let (wa, wb) = (BraidWord::parse(n, &a)?, BraidWord::parse(n, &b)?);
            let (ca, cb) = (Arc::new(rouquier(&wa)?), Arc::new(rouquier(&wb)?));
            let s = homotopy_class_space(&ca, &cb)?;
            let value = json!({
                "schema": "soergel.classes/1",
                "source": wa.to_string(), "target": wb.to_string(),
                "dimension": s.dimension, "chain_maps": s.chain_maps, "null_homotopic": s.null_homotopic,
            });
            print(cli.json, value, format!("dim [F({}), F({})] = {}", wa, wb, s.dimension));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn finish(json_out: bool, report: &suites::Report) -> ExitCode {
    let text = report
        .checks
        .iter()
        .map(|c| format!("{:<12} {}", c.verdict.as_str(), c.name))
        .chain([format!("{}: {}", report.suite, report.verdict.as_str())])
        .collect::<Vec<_>>()
        .join("\n");
    print(json_out, serde_json::to_value(report).expect("serializable"), text);
    match report.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => ExitCode::from(1),
        Verdict::Inconclusive => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let json_out = cli.json;
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::Parse { .. } | Error::IndexOutOfRange { .. } | Error::StrandMismatch { .. } => 3,
                _ => 1,
            };
            if json_out {
                let v = json!({ "schema": "soergel.error/1", "reason": e.code(), "message": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                eprintln!("error [{}]: {}", e.code(), e);
            }
            ExitCode::from(code)
        }
    }
}
