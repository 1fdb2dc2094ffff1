use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use dgcyc_core::cache::Cache;
use dgcyc_core::check::{CheckReport, DimCell};
use dgcyc_core::complex::{dim_cells, Window};
use dgcyc_core::input::parse_input;
use dgcyc_core::report::{emit_report, sha256_hex, Format, Report};
use dgcyc_core::theorems::{self, ComplexKind, Pres};

#[derive(Parser)]
#[command(name = "dgcyc", version, about = "Cyclic homology of finitely presented dg categories over Q")]
struct Cli {
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Record wall-clock time per stage (makes reports run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    /// Label filtration cells by (p, q) = (2r, d - r).
    #[arg(long, global = true)]
    gs_grading: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// Adams weights, as `a..b`.
    #[arg(long, value_parser = parse_range::<u32>)]
    weights: (u32, u32),
    /// Homological degrees, as `a..b`. Homology is reported strictly inside.
    #[arg(long, value_parser = parse_range::<i64>, allow_hyphen_values = true)]
    degrees: (i64, i64),
}

impl WindowArgs {
    fn window(&self) -> Window {
        Window::new(self.degrees, self.weights)
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "md")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an input document.
    Validate { input: PathBuf },
    /// Homology dimensions of one complex.
    Homology {
        input: PathBuf,
        /// CH, CC, Clambda, CN, CP, X:n, scX:n or Xtot.
        #[arg(long)]
        complex: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Take the cone over the unit inclusion.
        #[arg(long)]
        reduced: bool,
        /// Filtration index for Xtot.
        #[arg(long, default_value_t = 0)]
        hodge_r: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Run one theorem check.
    Check {
        /// structural, homotopy, pi-qiso, master-diagram, cone-iso,
        /// feigin-tsygan, cc-clambda, hodge, periodic or sbi.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(theorems::CHECK_NAMES))]
        which: String,
        input: PathBuf,
        /// Target of a quasi-isomorphism asserted by the user (hodge, periodic).
        #[arg(long)]
        target: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArgs,
        /// Largest column or Hodge count.
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        hodge_r: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Run every check and the standard homology tables.
    Report {
        input: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_range<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, found {s:?}"))?;
    let p = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad bound {x:?}"));
    Ok((p(a)?, p(b)?))
}

struct Loaded {
    pres: Pres,
    text: String,
}

fn load(path: &PathBuf) -> anyhow::Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pres = parse_input(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok(Loaded { pres: Arc::new(pres), text })
}

fn dims_deep(c: &CheckReport, out: &mut Vec<DimCell>) {
    out.extend(c.dims.iter().cloned());
    for s in &c.sub {
        dims_deep(s, out);
    }
}

fn input_hash_text(main: &Loaded, target: Option<&Loaded>) -> String {
    match target {
        Some(t) => format!("{}\0{}", main.text, t.text),
        None => main.text.clone(),
    }
}

fn emit(report: Report, out: &Output, gs: bool) -> anyhow::Result<ExitCode> {
    let format: Format = out.format.parse().map_err(|e: String| anyhow!(e))?;
    let report = if gs { report.with_gs_grading() } else { report };
    let text = emit_report(&report, format);
    match &out.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn timed<T>(report: &mut Report, on: bool, stage: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let v = f();
    if on {
        report.add_timing(stage, t.elapsed().as_millis());
    }
    v
}

fn homology_table(
    p: &Pres,
    hash: &str,
    kind: &str,
    reduced: bool,
    r: u32,
    w: &Window,
) -> anyhow::Result<(String, dgcyc_core::cache::Table)> {
    let key = format!("{hash}|{kind}|reduced={reduced}|r={r}|{:?}|{:?}", w.degrees, w.weights);
    let cache = Cache::from_env();
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(hit);
    }
    let k: ComplexKind = kind.parse()?;
    let (name, table) = theorems::homology_of(p, k, reduced, r, w)?;
    if let Some(c) = cache {
        // A failed write only loses the memo.
        let _ = c.put(&key, &name, &table);
    }
    Ok((name, table))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global().ok();
    match cli.command {
        Command::Validate { input } => {
            let l = load(&input)?;
            println!(
                "{}: valid ({}, {} objects, {} generators, cofibrant: {})",
                l.pres.name,
                if l.pres.is_semi_free() { "semi-free" } else { "finite-dimensional" },
                l.pres.num_objects(),
                l.pres.letters_decl().len(),
                l.pres.is_cofibrant()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { input, complex, window, reduced, hodge_r, out } => {
            let l = load(&input)?;
            let w = window.window();
            let mut report = Report::new(&l.pres.name, &l.text);
            let (name, table) = timed(&mut report, cli.timings, "homology", || {
                homology_table(&l.pres, &sha256_hex(l.text.as_bytes()), &complex, reduced, hodge_r, &w)
            })?;
            let r = matches!(complex.parse(), Ok(ComplexKind::XTot)).then_some(hodge_r);
            report.add_dims(dim_cells(&name, &table, None, r));
            emit(report, &out, cli.gs_grading)
        }
        Command::Check { which, input, target, window, n_max, hodge_r, out } => {
            let l = load(&input)?;
            let t = target.as_ref().map(load).transpose()?;
            let w = window.window();
            let mut report = Report::new(&l.pres.name, &input_hash_text(&l, t.as_ref()));
            let c = timed(&mut report, cli.timings, "check", || {
                theorems::run_named_check(&which, &l.pres, t.as_ref().map(|t| &t.pres), &w, n_max, hodge_r)
            })?;
            let mut dims = Vec::new();
            dims_deep(&c, &mut dims);
            report.add_dims(dims);
            report.add_check(c);
            emit(report, &out, cli.gs_grading)
        }
        Command::Report { input, target, window, n_max, out } => {
            let l = load(&input)?;
            let t = target.as_ref().map(load).transpose()?;
            let w = window.window();
            let tp = t.as_ref().map(|t| &t.pres);
            let mut report = Report::new(&l.pres.name, &input_hash_text(&l, t.as_ref()));
            let results: Vec<(CheckReport, &str, u128)> = theorems::CHECK_NAMES
                .par_iter()
                .map(|&name| {
                    let t0 = Instant::now();
                    let c = theorems::run_named_check(name, &l.pres, tp, &w, n_max, 1);
                    (c, name, t0.elapsed().as_millis())
                })
                .map(|(c, name, ms)| c.map(|c| (c, name, ms)))
                .collect::<dgcyc_core::Result<_>>()?;
            for (c, label, ms) in results {
                if cli.timings {
                    report.add_timing(label, ms);
                }
                report.add_check(c);
            }
            let hash = sha256_hex(l.text.as_bytes());
            for kind in ["CH", "CC", "CN", "CP"] {
                let (name, table) = homology_table(&l.pres, &hash, kind, false, 0, &w)?;
                report.add_dims(dim_cells(&name, &table, None, None));
            }
            emit(report, &out, cli.gs_grading)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = match &cli.command {
        Command::Homology { out, .. } | Command::Check { out, .. } | Command::Report { out, .. } => out.format == "json",
        Command::Validate { .. } => false,
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if json {
                println!("{}", serde_json::json!({ "all_passed": false, "error": format!("{e:#}") }));
            }
            ExitCode::from(2)
        }
    }
}
