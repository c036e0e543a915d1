mod config;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewhecke::hecke::HeckeContext;

use config::{Job, JobConfig};

#[derive(Parser)]
#[command(name = "skewhecke", version, about = "Skew Hecke algebras of finite groups: dimensions, products and checks")]
struct Cli {
    /// Job configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree cap for polynomial coefficients; overrides the configuration.
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    /// Write the output here instead of stdout. For `sc` this receives the
    /// tab-separated table.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group, coset and dimension data.
    Dims,
    /// Product of two element literals, e.g. `[(id, [(1, 1)]), ((23), [(1, 2)])]`.
    Mul { phi: String, psi: String },
    /// Structure constants on the module basis.
    Sc,
    /// Run verification suites.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Run the `[job] commands` list of the configuration.
    Run,
    /// Print the configuration in canonical form.
    Canonical,
}

fn load(cli: &Cli) -> Result<JobConfig> {
    let path = cli.config.as_ref().context("--config is required")?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    JobConfig::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn build(cli: &Cli, cfg: &JobConfig) -> Result<Job> {
    let where_ = cli.config.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
    cfg.build(cli.degree_cap).with_context(|| format!("in {where_}"))
}

fn dims(ctx: &HeckeContext) -> Result<String> {
    let g = ctx.group();
    let cs = ctx.cosets();
    let a = ctx.algebra();
    let mut out = String::new();
    out.push_str(&format!("|G| = {}\n|H| = {}\n|G/H| = {}\n", g.order(), ctx.subgroup().order(), cs.len()));
    out.push_str(&format!("double cosets = {}\n", ctx.orbit_count()));
    let degrees: Vec<u32> = match ctx.degree_cap().filter(|_| ctx.is_graded()) {
        Some(cap) => (0..=cap).collect(),
        None => vec![0],
    };
    let graded = ctx.is_graded();
    let tag = |d: u32| if graded { format!("_{d}") } else { String::new() };
    for &d in &degrees {
        let n = if graded { a.basis_of_degree(d)?.len() } else { a.enumerable_basis()?.len() };
        out.push_str(&format!("dim A{} = {n}\n", tag(d)));
    }
    for (o, orbit) in cs.orbits().iter().enumerate() {
        let rep = g.name(cs.rep(orbit.rep));
        let dims: Vec<String> = degrees
            .iter()
            .map(|&d| ctx.stabilizer_invariants(o, d).map(|b| format!("{}", b.len())))
            .collect::<skewhecke::Result<_>>()?;
        out.push_str(&format!(
            "H {rep} H: {} cosets, stabilizer order {}, dim A^stab = {}\n",
            orbit.cosets.len(),
            orbit.stabilizer.order(),
            dims.join(" + ")
        ));
    }
    if graded {
        for &d in &degrees {
            out.push_str(&format!("dim H{} = {}\n", tag(d), ctx.module_basis_of_degree(d).len()));
        }
    }
    out.push_str(&format!("dim H = {}\n", ctx.dimension()));
    Ok(out)
}

fn structure_constants(ctx: &HeckeContext) -> Result<(String, String)> {
    let sc = ctx.structure_constants()?;
    let mut text = String::new();
    for (i, b) in sc.basis.iter().enumerate() {
        text.push_str(&format!("b{i} = {b}\n"));
    }
    for (i, j, k, c) in &sc.rows {
        text.push_str(&format!("b{i} * b{j} : {c} b{k}\n"));
    }
    Ok((text, sc.to_tsv()))
}

/// Output of one command and whether every check passed.
fn execute(cli: &Cli, job: &Job, command: &Command) -> Result<(String, Option<String>, bool)> {
    let ctx = &job.ctx;
    match command {
        Command::Dims => Ok((dims(ctx)?, None, true)),
        Command::Mul { phi, psi } => {
            let x = ctx.parse(phi).context("first factor")?;
            let y = ctx.parse(psi).context("second factor")?;
            Ok((format!("{}\n", x.convolve(&y)?.format()), None, true))
        }
        Command::Sc => {
            let (text, tsv) = structure_constants(ctx)?;
            Ok((text, Some(tsv), true))
        }
        Command::Verify { suite } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut report = suites::Report::default();
            suites::run(suite, job, &mut rng, &mut report).map_err(anyhow::Error::msg)?;
            let header = format!(
                "# verify {suite} seed={} config={}\n",
                cli.seed,
                cli.config.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
            );
            let footer = format!("# {} passed, {} failed, {} skipped\n", report.passed, report.failed, report.skipped);
            Ok((format!("{header}{}{footer}", report.text), None, report.failed == 0))
        }
        Command::Run | Command::Canonical => unreachable!("handled by the caller"),
    }
}

fn parse_command(word: &str) -> Result<Command> {
    let parts: Vec<&str> = word.split_whitespace().collect();
    Ok(match parts.as_slice() {
        ["dims"] => Command::Dims,
        ["sc"] => Command::Sc,
        ["verify"] => Command::Verify { suite: "all".into() },
        ["verify", s] => Command::Verify { suite: (*s).into() },
        _ => bail!("unsupported job command {word:?}; expected dims, sc or verify [suite]"),
    })
}

fn main_inner(cli: &Cli) -> Result<bool> {
    let cfg = load(cli)?;
    if let Command::Canonical = cli.command {
        emit(cli, &cfg.canonical())?;
        return Ok(true);
    }
    let job = build(cli, &cfg)?;
    let commands = match &cli.command {
        Command::Run => {
            let list = cfg.commands();
            if list.is_empty() {
                bail!("the configuration has no [job] commands");
            }
            list.iter().map(|c| parse_command(c)).collect::<Result<Vec<_>>>()?
        }
        _ => Vec::new(),
    };
    let mut text = String::new();
    let mut all_ok = true;
    let single = [&cli.command];
    let todo: Vec<&Command> = if commands.is_empty() { single.to_vec() } else { commands.iter().collect() };
    let mut table = None;
    for c in todo {
        let (out, tsv, ok) = execute(cli, &job, c)?;
        text.push_str(&out);
        table = tsv.or(table);
        all_ok &= ok;
    }
    match (&cli.out, table) {
        (Some(path), Some(tsv)) => {
            std::fs::write(path, tsv).with_context(|| format!("writing {}", path.display()))?;
            print!("{text}");
        }
        _ => emit(cli, &text)?,
    }
    Ok(all_ok)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
