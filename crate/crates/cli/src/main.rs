use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use modal_dialectica::calculus::System;
use modal_dialectica::corpus::{self, ProofRun};
use modal_dialectica::dialectica::{translate, Flavor};
use modal_dialectica::syntax::{formula_from_str, parse_file, ProofFile};
use modal_dialectica::verify::{check_obligation, mutate_obligation, Domain};

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const COUNTEREXAMPLE: u8 = 2;
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "mdial", version, about = "Modal Dialectica proof checking and program extraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and type-check a proof file.
    Typecheck { file: PathBuf },
    /// Print the translation of the named formulas of a file, or of one formula.
    Translate {
        file: Option<PathBuf>,
        /// A formula to translate instead of a file's formulas.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value = "modal")]
        flavor: String,
    },
    /// Check the proofs of a file against the calculus restrictions.
    Check(Target),
    /// Check and extract realizers.
    Extract(Target),
    /// Check, extract and test the extracted obligation on a bounded domain.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Corrupt the extracted terms and report which corruptions verification catches.
    Mutate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Run the bundled example proofs against their golden outputs.
    CorpusRun {
        #[command(flatten)]
        domain: DomainArgs,
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        golden_update: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Only this corpus file.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Args)]
struct Target {
    file: PathBuf,
    /// Only this proof.
    #[arg(long)]
    proof: Option<String>,
    /// Override the file's system (V, I, M, ML).
    #[arg(long)]
    system: Option<String>,
    /// Pick the system matching an interpretation (light, modal, lightmodal).
    #[arg(long, conflicts_with = "system")]
    flavor: Option<String>,
}

#[derive(Args)]
struct DomainArgs {
    #[arg(long)]
    nat_bound: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
}

impl DomainArgs {
    fn domain(&self, file: &ProofFile) -> Domain {
        let mut d = corpus::file_domain(file, &Domain::default());
        if let Some(n) = self.nat_bound {
            d.nat_bound = n;
        }
        if let Some(s) = self.samples {
            d.samples = s;
        }
        d.seed = self.seed;
        d
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Typecheck { file } => {
            let f = load(&file)?;
            println!(
                "{}: {} params, {} formulas, {} proofs, system {}",
                file.display(),
                f.params.len(),
                f.formulas.len(),
                f.proofs.len(),
                f.system().name()
            );
            Ok(OK)
        }
        Command::Translate { file, expr, flavor } => {
            let flavor = Flavor::from_name(&flavor).with_context(|| format!("unknown flavor {flavor}"))?;
            let formulas = match (file, expr) {
                (_, Some(src)) => vec![("expr".to_string(), formula_from_str(&src, &[])?)],
                (Some(path), None) => load(&path)?.formulas,
                (None, None) => bail!("give a file or --expr"),
            };
            for (name, a) in formulas {
                let t = translate(&a, flavor).with_context(|| format!("translating {name}"))?;
                println!("{name}: {a}");
                println!("  witnesses  {}", show_vars(&t.witnesses));
                println!("  challenges {}", show_vars(&t.challenges));
                println!("  matrix     {}", t.matrix);
            }
            Ok(OK)
        }
        Command::Check(target) => {
            let (f, names) = target.load()?;
            let mut code = OK;
            for name in names {
                let run = corpus::run_proof(&f, &name, None).expect("listed proof");
                if run.violations.is_empty() {
                    println!("{name}: ok");
                } else {
                    code = VIOLATION;
                    println!("{name}: rejected");
                    for v in &run.violations {
                        println!("  {v}");
                    }
                }
            }
            Ok(code)
        }
        Command::Extract(target) => {
            let (f, names) = target.load()?;
            let mut code = OK;
            for name in names {
                let run = corpus::run_proof(&f, &name, None).expect("listed proof");
                code = code.max(outcome(&run));
                print!("{run}");
            }
            Ok(code)
        }
        Command::Verify { target, domain } => {
            let (f, names) = target.load()?;
            let dom = domain.domain(&f);
            let mut code = OK;
            for name in names {
                let run = corpus::run_proof(&f, &name, Some(&dom)).expect("listed proof");
                code = code.max(outcome(&run));
                print!("{run}");
            }
            Ok(code)
        }
        Command::Mutate { target, domain, count } => {
            let (f, names) = target.load()?;
            let dom = domain.domain(&f);
            let mut code = OK;
            for name in names {
                let run = corpus::run_proof(&f, &name, None).expect("listed proof");
                let Some(e) = run.extraction else {
                    println!("{name}: not extracted");
                    code = VIOLATION;
                    continue;
                };
                let mutants = mutate_obligation(&e.obligation, domain.seed, count);
                let mut caught = 0;
                for m in &mutants {
                    let r = check_obligation(&m.obligation, &dom)?;
                    let hit = r.counterexample.is_some();
                    caught += usize::from(hit);
                    println!("  {} {}: {}", m.mutator, m.target, if hit { "caught" } else { "survived" });
                }
                println!("{name}: {caught}/{} mutants caught", mutants.len());
            }
            Ok(code)
        }
        Command::CorpusRun {
            domain,
            golden_update,
            golden_dir,
            only,
        } => corpus_run(&domain, golden_update, golden_dir.as_deref(), only.as_deref()),
    }
}

impl Target {
    fn load(&self) -> Result<(ProofFile, Vec<String>)> {
        let mut f = load(&self.file)?;
        if let Some(s) = &self.system {
            f.system = Some(System::from_name(s).with_context(|| format!("unknown system {s}"))?);
        }
        if let Some(fl) = &self.flavor {
            let fl = Flavor::from_name(fl).with_context(|| format!("unknown flavor {fl}"))?;
            f.system = Some(System::of_flavor(fl));
        }
        let names = match &self.proof {
            Some(p) if f.proof(p).is_none() => bail!("no proof named {p}"),
            Some(p) => vec![p.clone()],
            None => f.proofs.iter().map(|(n, _)| n.clone()).collect(),
        };
        Ok((f, names))
    }
}

fn load(path: &Path) -> Result<ProofFile> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_file(&src).with_context(|| format!("parsing {}", path.display()))
}

fn show_vars(vs: &[modal_dialectica::kernel::Var]) -> String {
    if vs.is_empty() {
        return "(none)".into();
    }
    vs.iter().map(|v| format!("{} {}", v.name, v.ty)).collect::<Vec<_>>().join(", ")
}

/// Exit code for a single proof, ignoring its file's expectation.
fn outcome(run: &ProofRun) -> u8 {
    if !run.violations.is_empty() || run.extraction.as_ref().is_some_and(|e| !e.fvc.ok()) {
        return VIOLATION;
    }
    match &run.verification {
        Some(Ok(r)) if !r.passed => COUNTEREXAMPLE,
        Some(Err(_)) => COUNTEREXAMPLE,
        _ => OK,
    }
}

fn corpus_run(domain: &DomainArgs, update: bool, dir: Option<&Path>, only: Option<&str>) -> Result<u8> {
    let dir = dir.map_or_else(|| PathBuf::from(corpus::GOLDEN_DIR), Path::to_path_buf);
    let mut code = OK;
    for cf in corpus::corpus() {
        if only.is_some_and(|o| o != cf.name) {
            continue;
        }
        let f = cf.parse().with_context(|| format!("parsing corpus file {}", cf.name))?;
        let dom = domain.domain(&f);
        let runs = corpus::run_file(&f, Some(&dom));
        let text = corpus::golden_text(&runs);
        let path = dir.join(format!("{}.txt", cf.name));
        let golden = if update {
            fs::create_dir_all(&dir)?;
            fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            "updated"
        } else {
            match fs::read_to_string(&path) {
                Ok(g) if g == text => "matches golden",
                Ok(_) => {
                    code = code.max(VIOLATION);
                    "DIFFERS FROM GOLDEN"
                }
                Err(_) => {
                    code = code.max(VIOLATION);
                    "NO GOLDEN"
                }
            }
        };
        println!("# {} ({golden})", cf.name);
        for r in &runs {
            if !r.as_expected() {
                code = code.max(match r.verification {
                    Some(Ok(ref v)) if !v.passed => COUNTEREXAMPLE,
                    _ => VIOLATION,
                });
            }
            print!("{r}");
        }
    }
    Ok(code)
}
