use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use lie2::field::{Fe, Field};
use lie2::fixtures::{self, Fixture};
use lie2::restricted::verify_two_map;
use lie2::rootspace::{classify_delta, is_standard, is_triangulable, root_decomposition, root_name};
use lie2::suite;
use lie2::theorems::{is_simple, simplicity_screen, ScreenResult, SIMPLE_BUDGET_BITS};
use lie2::tori::{maximal_torus, toral_rank, TorusMode};
use lie2::{io, LieAlgebra, TwoMap};

/// Exit code for input that cannot be read or processed.
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "lie2", version, about = "Restricted Lie algebras in characteristic 2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Greedy,
    Exhaustive,
}

impl From<Mode> for TorusMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Greedy => TorusMode::Greedy,
            Mode::Exhaustive => TorusMode::Exhaustive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie and 2-map axioms; exit 0 iff both hold.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Cartan subalgebra, roots and root-set class for a maximal torus.
    Decompose {
        file: PathBuf,
        /// Extend scalars to GF(2^k) first.
        #[arg(long)]
        field_degree: Option<u32>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        torus: Mode,
    },
    /// Toral rank over each field degree up to the given bound.
    Rank {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long)]
        max_field_degree: Option<u32>,
    },
    /// Necessary conditions for simplicity (exit 0 pass, 10 not simple, 20 out of scope, 1 contradiction).
    Screen { file: PathBuf },
    /// Brute-force simplicity oracle (exit 0 simple, 10 not simple, 20 over budget).
    Simple {
        file: PathBuf,
        /// Largest field degree times dimension to enumerate.
        #[arg(long, default_value_t = SIMPLE_BUDGET_BITS)]
        budget: usize,
    },
    /// Run every structural check over the fixture corpus; exit 1 on any failure.
    PaperSuite {
        /// Directory of algebra files to use instead of the built-in corpus.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a built-in fixture (`F6`, `torus:3`, `gl:2`, `pattern:2111111`, ...) to a file.
    Fixture { spec: String, out: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn load(path: &Path) -> Result<Fixture> {
    io::load(path).with_context(|| format!("reading {}", path.display()))
}

fn fmt_vec(v: &[Fe]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn extend(g: &LieAlgebra, tm: &TwoMap, k: u32) -> Result<Fixture> {
    let target = Field::new(k)?;
    let Some(emb) = g.field().embedding_into(target) else {
        bail!("GF(2^{}) does not embed in GF(2^{k})", g.field().degree());
    };
    Ok((g.extend_scalars(target)?, tm.extend_scalars(&emb)))
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Verify { file, report } => verify(&file, report),
        Command::Decompose { file, field_degree, torus } => decompose(&file, field_degree, torus.into()),
        Command::Rank { file, mode, max_field_degree } => rank(&file, mode.into(), max_field_degree),
        Command::Screen { file } => screen(&file),
        Command::Simple { file, budget } => simple(&file, budget),
        Command::PaperSuite { fixtures, seed } => paper_suite(fixtures.as_deref(), seed),
        Command::Fixture { spec, out } => {
            let (g, tm) = fixtures::by_name(&spec)?;
            io::save(&g, &tm, &out).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {} (dim {}) to {}", spec, g.dim(), out.display());
            Ok(0)
        }
    }
}

fn verify(file: &Path, report: ReportFormat) -> Result<u8> {
    let (g, tm) = load(file)?;
    let lie = g.verify_lie();
    // the 2-map axioms presuppose a Lie bracket
    let two = lie.is_clean().then(|| verify_two_map(&g, &tm));
    let clean = lie.is_clean() && two.as_ref().is_some_and(|t| t.is_clean());
    match report {
        ReportFormat::Json => {
            let value = serde_json::json!({ "clean": clean, "lie": lie, "two_map": two });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        ReportFormat::Text => {
            println!("lie\t{}\tviolations={}", status(lie.is_clean()), lie.violations.len());
            for v in &lie.violations {
                println!("  {v:?}");
            }
            match &two {
                Some(t) => {
                    println!(
                        "two_map\t{}\tviolations={} exhaustive={}",
                        status(t.is_clean()),
                        t.violations.len(),
                        t.exhaustive
                    );
                    for v in &t.violations {
                        println!("  {v:?}");
                    }
                }
                None => println!("two_map\tskipped"),
            }
        }
    }
    Ok(if clean { 0 } else { 1 })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn decompose(file: &Path, field_degree: Option<u32>, mode: TorusMode) -> Result<u8> {
    let (mut g, mut tm) = load(file)?;
    if let Some(k) = field_degree {
        (g, tm) = extend(&g, &tm, k)?;
    }
    let t = maximal_torus(&g, &tm, mode)?;
    let d = root_decomposition(&g, &tm, &t)?;
    println!("field_degree {}", g.field().degree());
    println!("dim {}", g.dim());
    println!("torus {}{}", d.rank(), if mode == TorusMode::Greedy { " (greedy)" } else { "" });
    for t in d.toral_basis() {
        println!("  {}", fmt_vec(t));
    }
    println!("cartan {}", d.cartan.dim());
    println!("nil {}", d.nil.dim());
    println!("roots {}", d.roots.len());
    for (&r, s) in &d.roots {
        println!("  {} {}", root_name(r), s.dim());
    }
    let class = classify_delta(&d);
    match class.basis_change {
        Some(p) => println!("class {} basis_change {:?}", class.label.name(), p),
        None => println!("class {}", class.label.name()),
    }
    println!("triangulable {}", is_triangulable(&g, &d)?);
    println!("standard {}", is_standard(&g, &d)?);
    Ok(0)
}

fn rank(file: &Path, mode: TorusMode, max_field_degree: Option<u32>) -> Result<u8> {
    let (g, tm) = load(file)?;
    let base = g.field().degree();
    let max = max_field_degree.unwrap_or(base);
    if max < base {
        bail!("--max-field-degree {max} is below the file's field degree {base}");
    }
    let mut ranks: Vec<(u32, usize)> = Vec::new();
    for k in (base..=max).filter(|k| k % base == 0) {
        let (gk, tk) = extend(&g, &tm, k)?;
        match toral_rank(&gk, &tk, mode) {
            Ok(r) => {
                let bound = if r.lower_bound_only { " (lower bound)" } else { "" };
                println!("field_degree {k}\trank {}{bound}", r.rank);
                ranks.push((k, r.rank));
            }
            Err(lie2::Error::BudgetExceeded { needed, limit }) => {
                println!("field_degree {k}\tskipped: {needed} bits exceeds budget {limit}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    let stable: Vec<String> = ranks
        .iter()
        .filter(|(k, r)| ranks.iter().any(|(k2, r2)| *k2 == 2 * k && r2 == r))
        .map(|(k, _)| format!("{k}->{}", 2 * k))
        .collect();
    if stable.is_empty() {
        println!("note: no degree k with k and 2k both computed and equal; rank over larger fields may differ");
    } else {
        println!("note: rank unchanged for {}; larger fields may still raise it", stable.join(", "));
    }
    Ok(0)
}

fn screen(file: &Path) -> Result<u8> {
    let (g, tm) = load(file)?;
    let r = simplicity_screen(&g, &tm);
    match &r {
        ScreenResult::NotSimpleWitness(w) => {
            println!("{}\tlemma={:?} dim={}", r.kind(), w.lemma, w.subspace.dim());
            if let Some(p) = w.basis_change {
                println!("basis_change {p:?}");
            }
            for v in &w.subspace.basis_vectors() {
                println!("  {}", fmt_vec(v));
            }
        }
        ScreenResult::DimsUnequal(a, b) => println!("{}\t{} {}", r.kind(), root_name(*a), root_name(*b)),
        ScreenResult::PassesNecessaryConditions => println!("{}", r.kind()),
        ScreenResult::OutOfScope(why) | ScreenResult::Contradiction(why) => println!("{}\t{why}", r.kind()),
    }
    Ok(r.exit_code() as u8)
}

fn simple(file: &Path, budget: usize) -> Result<u8> {
    let (g, _) = load(file)?;
    match is_simple(&g, budget) {
        Ok(v) if v.simple => {
            println!("simple\tclosures={}", v.closures);
            Ok(0)
        }
        Ok(v) => {
            match &v.counterexample {
                Some(x) => println!("not_simple\tcounterexample={}", fmt_vec(x)),
                None => println!("not_simple\tdimension {} is at most 1", g.dim()),
            }
            Ok(10)
        }
        Err(lie2::Error::BudgetExceeded { needed, limit }) => {
            println!("out_of_budget\t{needed} bits exceeds {limit}");
            Ok(20)
        }
        Err(e) => Err(e.into()),
    }
}

fn load_dir(dir: &Path) -> Result<Vec<(String, Fixture)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "lie"));
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let fixture = load(p)?;
            let name = match fixture.0.name() {
                Some(n) => n.to_string(),
                None => p.file_stem().unwrap_or_default().to_string_lossy().into_owned(),
            };
            Ok((name, fixture))
        })
        .collect()
}

fn paper_suite(dir: Option<&Path>, seed: u64) -> Result<u8> {
    let corpus = match dir {
        Some(d) => load_dir(d)?,
        None => suite::shipped_corpus()?,
    };
    if corpus.is_empty() {
        bail!("no fixtures found");
    }
    let report = suite::paper_suite(&corpus, seed);
    print!("{}", report.render());
    Ok(if report.failures() == 0 { 0 } else { 1 })
}
