//! Command-line interface: invariants, isomorphism, regular covers, the
//! real-moduli test, Belyi polynomial checks and reduction, exhaustive
//! enumeration, DOT export, and the corpus self-test.
//!
//! Exit codes: 0 success/yes, 1 no/mismatch, 2 usage error, 3 input error,
//! 4 resource cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dessinkit::belyi;
use dessinkit::corpus;
use dessinkit::dessin::{Dessin, Passport};
use dessinkit::dot;
use dessinkit::dsnfile;
use dessinkit::enumerate::{self, EnumerationRequest};
use dessinkit::error::Error;
use dessinkit::expr;
use dessinkit::group;

#[derive(Parser)]
#[command(
    name = "dessinkit",
    about = "Dessins d'enfants as permutation pairs, with exact Belyi polynomial reduction",
    version
)]
struct Cli {
    /// Worker threads for library-internal parallelism (output is identical
    /// for any value).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants of a dessin file.
    Invariants(InvariantsArgs),
    /// Test two dessin files for isomorphism (exit 0 yes / 1 no).
    Iso { a: PathBuf, b: PathBuf },
    /// Write the regular cover of a dessin to a new file.
    RegularCover { input: PathBuf, output: PathBuf },
    /// Report whether the field of moduli is real and obstructed.
    ModuliReal { input: PathBuf },
    /// Exact polynomial checks over the rationals.
    Belyi {
        #[command(subcommand)]
        action: BelyiAction,
    },
    /// Enumerate dessins of a given degree.
    Enumerate(EnumerateArgs),
    /// Export the bipartite graph of a dessin as DOT.
    ExportDot { input: PathBuf, output: PathBuf },
    /// Verify the bundled corpus (or a directory of .dsn files).
    Selftest {
        /// Directory of .dsn files to verify instead of the bundled corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InvariantsArgs {
    input: PathBuf,
    /// Line-oriented key=value output.
    #[arg(long)]
    machine: bool,
}

#[derive(Subcommand)]
enum BelyiAction {
    /// Print the critical-value report and the Belyi verdict.
    Check { expression: String },
    /// Run the reduction pipeline and print the verified result.
    Reduce { expression: String },
}

#[derive(Args)]
struct EnumerateArgs {
    degree: usize,
    /// Enumerate pointed classes (base-edge labelings) instead of
    /// isomorphism classes.
    #[arg(long)]
    pointed: bool,
    /// Keep only dessins with this passport, e.g. "2,2,1,1/3,2,1/6".
    #[arg(long)]
    passport: Option<String>,
    /// Raise the degree cap (defaults: 7 unpointed, 6 pointed).
    #[arg(long)]
    cap: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = std::env::var("DESSINKIT_MAX_GROUP")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(group::DEFAULT_GROUP_CAP);
    let threads = cli.threads.max(1);
    match run(cli.command, cap, threads) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::GroupTooLarge { .. } | Error::DegreeTooLarge { .. } => 4,
        _ => 3,
    }
}

fn load(path: &Path) -> Result<Dessin, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {}", path.display(), e),
    })?;
    dsnfile::parse(&text).map(|(d, _)| d)
}

fn run(cmd: Command, cap: usize, threads: usize) -> Result<ExitCode, Error> {
    match cmd {
        Command::Invariants(args) => invariants(&args, cap, threads),
        Command::Iso { a, b } => {
            let da = load(&a)?;
            let db = load(&b)?;
            match da.is_isomorphic(&db) {
                Some(phi) => {
                    println!("isomorphic via {}", phi);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not isomorphic");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::RegularCover { input, output } => {
            let d = load(&input)?;
            let g = group::closure_capped(&d, cap, threads)?;
            let cover = group::regular_cover_of_closure(&d, &g)?;
            let comments = vec![
                format!("regular cover of {}", input.display()),
                format!("group order {}, genus {}", g.order(), cover.genus()),
            ];
            std::fs::write(&output, dsnfile::serialize(&cover, &comments)).map_err(|e| {
                Error::Parse {
                    line: 0,
                    msg: format!("{}: {}", output.display(), e),
                }
            })?;
            println!(
                "wrote degree-{} cover (group order {}, genus {}) to {}",
                cover.degree(),
                g.order(),
                cover.genus(),
                output.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::ModuliReal { input } => {
            let d = load(&input)?;
            let rep = group::real_moduli_test(&d);
            println!("status={}", rep.status);
            if let Some(w) = &rep.witness {
                println!("witness={}", w);
            }
            if let Some(o) = &rep.witness_order {
                println!("witness_order={}", o);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Belyi { action } => belyi_cmd(action),
        Command::Enumerate(args) => enumerate_cmd(&args),
        Command::ExportDot { input, output } => {
            let d = load(&input)?;
            std::fs::write(&output, dot::to_dot(&d)).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("{}: {}", output.display(), e),
            })?;
            println!("wrote {}", output.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { corpus: dir } => selftest(dir.as_deref()),
    }
}

fn invariants(args: &InvariantsArgs, cap: usize, threads: usize) -> Result<ExitCode, Error> {
    let d = load(&args.input)?;
    let passport = d.passport();
    let dtype = d.dessin_type();
    let auto = group::automorphisms(&d);
    let closure = group::closure_capped(&d, cap, threads);
    let mut lines: Vec<(&str, String)> = vec![
        ("degree", d.degree().to_string()),
        ("black_vertices", d.black_vertex_count().to_string()),
        ("white_vertices", d.white_vertex_count().to_string()),
        ("faces", d.face_count().to_string()),
        ("one_face", d.one_face().to_string()),
        ("passport", passport.to_string()),
        ("genus", d.genus().to_string()),
        ("type", dtype.to_string()),
        ("aut_order", auto.order().to_string()),
    ];
    let mut code = ExitCode::SUCCESS;
    match &closure {
        Ok(g) => {
            lines.push(("closure_order", g.order().to_string()));
            lines.push(("regular", (g.order() == d.degree()).to_string()));
        }
        Err(e) => {
            eprintln!("note: {}", e);
            code = ExitCode::from(4);
        }
    }
    for (k, v) in &lines {
        if args.machine {
            println!("{}={}", k, v);
        } else {
            println!("{:<16} {}", k, v);
        }
    }
    Ok(code)
}

fn belyi_cmd(action: BelyiAction) -> Result<ExitCode, Error> {
    match action {
        BelyiAction::Check { expression } => {
            let f = expr::parse_poly(&expression)?;
            if f.degree().map_or(true, |d| d < 1) {
                return Err(Error::ExprParse(
                    "expected a polynomial of degree at least 1".into(),
                ));
            }
            let rep = belyi::critical_values(&f)?;
            println!("polynomial={}", f);
            println!("critvals_sqfree={}", rep.critvals_sqfree);
            let rats: Vec<String> = rep.rational_values.iter().map(|v| v.to_string()).collect();
            println!("rational_values={{{}}}", rats.join(", "));
            println!("nonrational_factor={}", rep.nonrational_factor);
            let verdict = belyi::is_belyi_polynomial(&f)?;
            println!("belyi={}", verdict);
            Ok(if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        BelyiAction::Reduce { expression } => {
            let f = expr::parse_poly(&expression)?;
            if f.degree().map_or(true, |d| d < 1) {
                return Err(Error::ExprParse(
                    "expected a polynomial of degree at least 1".into(),
                ));
            }
            let red = belyi::belyi_reduce_detailed(&f)?;
            println!("input={}", f);
            for (i, g) in red.chain.iter().enumerate() {
                println!("chain[{}]={}", i, g);
            }
            let set: Vec<String> = red.special_set.iter().map(|v| v.to_string()).collect();
            println!("special_set={{{}}}", set.join(", "));
            println!("consolidator={}", red.consolidator);
            println!("result_degree={}", red.result.degree().map_or(0, |d| d));
            println!("result={}", red.result);
            println!("belyi={}", belyi::is_belyi_polynomial(&red.result)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn enumerate_cmd(args: &EnumerateArgs) -> Result<ExitCode, Error> {
    let passport_filter = match &args.passport {
        Some(s) => Some(Passport::parse(s)?),
        None => None,
    };
    let req = EnumerationRequest {
        degree: args.degree,
        passport_filter,
        pointed: args.pointed,
    };
    let found = match args.cap {
        Some(c) => enumerate::enumerate_dessins_capped(&req, c)?,
        None => enumerate::enumerate_dessins(&req)?,
    };
    println!(
        "count {} ({} classes of degree {})",
        found.len(),
        if args.pointed { "pointed" } else { "unpointed" },
        args.degree
    );
    for d in &found {
        println!();
        print!("{}", dsnfile::serialize(d, &[]));
    }
    Ok(ExitCode::SUCCESS)
}

fn selftest(dir: Option<&Path>) -> Result<ExitCode, Error> {
    let entries = match dir {
        None => corpus::builtin(),
        Some(path) => {
            let loaded = corpus::load_dir(path).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("{}: {}", path.display(), e),
            })?;
            let mut out = Vec::new();
            for item in loaded {
                out.push(item?);
            }
            out
        }
    };
    if entries.is_empty() {
        eprintln!("no corpus found");
        return Ok(ExitCode::from(1));
    }
    let mut ok = true;
    for e in &entries {
        let check = corpus::check_entry(e, &entries);
        if check.ok() {
            println!("ok   {}", e.name);
        } else {
            ok = false;
            println!("FAIL {}: {}", e.name, check.failures.join("; "));
        }
    }
    for (name, pass, detail) in corpus::battery(&entries) {
        if pass {
            println!("ok   battery:{}", name);
        } else {
            ok = false;
            println!("FAIL battery:{}: {}", name, detail);
        }
    }
    Ok(if ok {
        println!("selftest passed ({} entries)", entries.len());
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
