//! The `hbg` command: search, verification and reporting over offset
//! patterns, plus an SVG renderer.

pub mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use hbg::catalog::{
    bounds_table, non_existence_report, parse_certificate, parse_resume, read_file, verify_witness,
    write_certificate, write_file, write_resume, CatalogEntry, CatalogError, Evidence, EvidenceSource,
    LowerBoundConfig,
};
use hbg::search::{resume, Budget, ExhaustionCertificate, OrderResult, SearchOutcome};
use hbg::{girth_fast, min_order, SearchMode, SearchSpec};

pub use render::{render, RenderError, RenderStyle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hbg", version, about = "Search and verify trivalent Hamiltonian bipartite graphs of given girth")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search a range of orders for patterns of a given girth.
    Search(SearchArgs),
    /// Check a witness file independently of the search engine.
    Verify { file: PathBuf },
    /// Print the girth of a witness file's pattern.
    Girth { file: PathBuf },
    /// Rewrite a witness file in canonical form.
    Canon {
        file: PathBuf,
        /// Write here instead of overwriting the input.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate lower and upper order bounds per symmetry factor.
    Table(TableArgs),
    /// List the orders proven empty by certificate files.
    Report(ReportArgs),
    /// Draw a verified witness as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, required_unless_present = "resume")]
    pub girth: Option<u32>,
    /// Symmetry factor b; only orders divisible by 2b are searched.
    #[arg(long = "sym", required_unless_present = "resume")]
    pub sym: Option<u32>,
    #[arg(long, required_unless_present = "resume")]
    pub min: Option<u32>,
    #[arg(long, required_unless_present = "resume")]
    pub max: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub step: u32,
    /// first, all, count or prove.
    #[arg(long, default_value = "first")]
    pub mode: SearchMode,
    /// Worker threads; the first-position range is split this many ways.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Stop after this many search nodes and write a resume file.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Stop after this many seconds and write a resume file.
    #[arg(long)]
    pub wall_budget: Option<u64>,
    /// Continue from a resume file; girth, b, orders and mode come from it.
    #[arg(long, conflicts_with_all = ["girth", "sym", "min", "max", "mode", "reduce"])]
    pub resume: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Skip patterns that a reflection maps to a smaller first offset.
    #[arg(long)]
    pub reduce: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub girth: u32,
    /// Symmetry factors, as `3-16` or `3,5,8`. Defaults to every b with evidence.
    #[arg(long = "sym", value_parser = parse_factor_list)]
    pub sym: Option<FactorList>,
    /// Directories holding `.hbg` witnesses and `.cert` certificates.
    #[arg(long = "results")]
    pub results: Vec<PathBuf>,
    /// A claims file of externally reported bounds.
    #[arg(long)]
    pub claims: Option<PathBuf>,
    /// Lower-bound overrides, one `girth bound` pair per line.
    #[arg(long)]
    pub bounds: Option<PathBuf>,
    /// Print the machine-readable form.
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub girth: u32,
    #[arg(long = "sym")]
    pub sym: u32,
    /// Directories or individual `.cert` files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Fail unless every listed order is proven empty, e.g. `258,264`.
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub file: PathBuf,
    /// Output path; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 300.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 4.0)]
    pub vertex_size: f64,
}

/// Parsed `--sym` list for `table`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList(pub Vec<u32>);

fn parse_factor_list(s: &str) -> Result<FactorList, String> {
    let bad = || format!("expected `lo-hi` or a comma list, found `{s}`");
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi): (u32, u32) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
                if lo > hi {
                    return Err(bad());
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.trim().parse().map_err(|_| bad())?),
        }
    }
    if out.contains(&0) {
        return Err("symmetry factors must be positive".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(FactorList(out))
}

/// Parses arguments and runs the command, returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_FAIL } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAIL
        }
    }
}

type CmdResult = Result<i32, String>;

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Search(a) => cmd_search(&a),
        Command::Verify { file } => cmd_verify(&file),
        Command::Girth { file } => cmd_girth(&file),
        Command::Canon { file, out } => cmd_canon(&file, out.as_deref()),
        Command::Table(a) => cmd_table(&a),
        Command::Report(a) => cmd_report(&a),
        Command::Render(a) => cmd_render(&a),
    }
}

/// Orders in `min..=max` (stepping by `step`) that can carry symmetry factor `b`.
pub fn orders_in_range(b: u32, min: u32, max: u32, step: u32) -> Vec<u32> {
    if step == 0 || b == 0 {
        return Vec::new();
    }
    (min..=max)
        .step_by(step as usize)
        .filter(|&n| n >= 6 && n % (2 * b) == 0)
        .collect()
}

fn cert_name(c: &ExhaustionCertificate) -> String {
    format!("g{}-b{}-n{}.cert", c.girth, c.symmetry_factor, c.order)
}

fn resume_name(girth: u32, b: u32) -> String {
    format!("g{girth}-b{b}.resume")
}

fn cmd_search(a: &SearchArgs) -> CmdResult {
    if a.shards == 0 {
        return Err("--shards must be at least 1".into());
    }
    let budget = Budget {
        max_nodes: a.node_budget,
        max_wall: a.wall_budget.map(Duration::from_secs),
    };
    std::fs::create_dir_all(&a.out).map_err(|e| format!("{}: {e}", a.out.display()))?;

    let start = Instant::now();
    let (outcome, mode) = match &a.resume {
        Some(path) => {
            let state = read_file(path, parse_resume).map_err(|e| e.to_string())?;
            eprintln!(
                "resuming g={} b={} at order {} ({} pending range(s))",
                state.girth,
                state.symmetry_factor,
                state.orders.first().copied().unwrap_or(0),
                state.pending.len()
            );
            let mode = state.mode;
            (resume(&state, budget, a.shards).map_err(|e| e.to_string())?, mode)
        }
        None => {
            let (girth, b) = (a.girth.unwrap_or(0), a.sym.unwrap_or(0));
            let (min, max) = (a.min.unwrap_or(0), a.max.unwrap_or(0));
            if a.step == 0 {
                return Err("--step must be positive".into());
            }
            if b == 0 {
                return Err("--sym must be positive".into());
            }
            let orders = orders_in_range(b, min, max, a.step);
            if orders.is_empty() {
                return Err(format!(
                    "no order in {min}..={max} (step {}) is a multiple of 2b = {}; b must divide n/2",
                    a.step,
                    2 * b
                ));
            }
            let spec = SearchSpec::new(girth, b, orders, a.mode)
                .map_err(|e| e.to_string())?
                .with_budget(budget)
                .with_shards(a.shards)
                .with_symmetry_reduction(a.reduce);
            eprintln!("searching g={girth} b={b} orders {}..={} mode {}", spec.orders[0], spec.orders[spec.orders.len() - 1], a.mode);
            (min_order(&spec), a.mode)
        }
    };
    let code = write_outcome(&outcome, mode, &a.out)?;
    eprintln!("done in {:.3} s", start.elapsed().as_secs_f64());
    Ok(code)
}

fn write_outcome(outcome: &SearchOutcome, mode: SearchMode, dir: &Path) -> CmdResult {
    let (g, b) = (outcome.girth, outcome.symmetry_factor);
    let write = |name: &str, text: &str| write_file(&dir.join(name), text).map_err(|e| e.to_string());
    let mut code = EXIT_OK;
    for o in &outcome.orders {
        match &o.result {
            OrderResult::Exhausted(cert) => {
                write(&cert_name(cert), &write_certificate(cert))?;
                eprintln!("order {}: exhausted, {} nodes", o.order, cert.total_nodes());
                println!("order {} exhausted", o.order);
            }
            OrderResult::Witnesses {
                witnesses,
                leaves,
                certificate,
            } => {
                for (i, w) in witnesses.iter().enumerate() {
                    let entry = CatalogEntry::from_witness(g, w, None);
                    write(&format!("{}.hbg", entry.file_stem(i)), &entry.to_text())?;
                }
                if let Some(cert) = certificate {
                    write(&cert_name(cert), &write_certificate(cert))?;
                }
                let shown = match mode {
                    SearchMode::CountOnly => format!("{leaves} labeled pattern(s)"),
                    _ => format!("{} witness(es)", witnesses.len()),
                };
                eprintln!("order {}: {shown}", o.order);
                println!("order {} found {shown}", o.order);
            }
            OrderResult::Undecided(state) => {
                let path = dir.join(resume_name(g, b));
                write_file(&path, &write_resume(state)).map_err(|e| e.to_string())?;
                eprintln!("order {}: budget exceeded; resume with --resume {}", o.order, path.display());
                println!("order {} undecided", o.order);
                code = EXIT_BUDGET;
            }
        }
    }
    if code == EXIT_OK {
        let stale = dir.join(resume_name(g, b));
        if stale.exists() {
            std::fs::remove_file(&stale).map_err(|e| format!("{}: {e}", stale.display()))?;
        }
    }
    match outcome.minimal_order {
        Some(n) => println!("minimal order {n}"),
        None if code == EXIT_OK => println!("no witness in range"),
        None => {}
    }
    Ok(code)
}

fn read_entry(path: &Path) -> Result<CatalogEntry, String> {
    read_file(path, CatalogEntry::parse).map_err(|e| e.to_string())
}

fn cmd_verify(path: &Path) -> CmdResult {
    let report = verify_witness(&read_entry(path)?);
    print!("{report}");
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_girth(path: &Path) -> CmdResult {
    let entry = read_entry(path)?;
    let pattern = entry.pattern().map_err(|e| format!("{}: {e}", path.display()))?;
    println!("girth {}", girth_fast(&pattern, pattern.order()));
    Ok(EXIT_OK)
}

fn cmd_canon(path: &Path, out: Option<&Path>) -> CmdResult {
    let entry = read_entry(path)?;
    let pattern = entry.pattern().map_err(|e| format!("{}: {e}", path.display()))?;
    let canon = CatalogEntry::from_pattern(entry.girth, &pattern.canonical_form(), entry.note.clone());
    let target = out.unwrap_or(path);
    write_file(target, &canon.to_text()).map_err(|e| e.to_string())?;
    println!("{}", canon.offsets.iter().map(i64::to_string).collect::<Vec<_>>().join(" "));
    Ok(EXIT_OK)
}

/// Files with the given extension directly inside `dir`, in name order.
fn files_with_ext(dir: &Path, ext: &str) -> Result<Vec<PathBuf>, String> {
    let read = std::fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut out = Vec::new();
    for item in read {
        let path = item.map_err(|e| format!("{}: {e}", dir.display()))?.path();
        if path.extension().is_some_and(|e| e == ext) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn read_cert(path: &Path) -> Result<ExhaustionCertificate, String> {
    read_file(path, parse_certificate).map_err(|e| e.to_string())
}

/// Evidence gathered from result directories. Certificates must prove
/// non-existence and witnesses must pass verification; anything else is an
/// error rather than silently ignored.
fn collect_evidence(girth: u32, dirs: &[PathBuf]) -> Result<BTreeMap<u32, Evidence>, String> {
    let mut out: BTreeMap<u32, Evidence> = BTreeMap::new();
    for dir in dirs {
        for path in files_with_ext(dir, "cert")? {
            let cert = read_cert(&path)?;
            if cert.girth != girth {
                continue;
            }
            if !cert.complete {
                return Err(format!("{}: certificate is incomplete", path.display()));
            }
            cert.check_consistency().map_err(|e| format!("{}: {e}", path.display()))?;
            if cert.counts.leaves == 0 {
                out.entry(cert.symmetry_factor).or_insert_with(Evidence::verified).exhausted.insert(cert.order);
            }
        }
        for path in files_with_ext(dir, "hbg")? {
            let entry = read_entry(&path)?;
            if entry.girth != girth {
                continue;
            }
            let report = verify_witness(&entry);
            if let Some(c) = report.failure() {
                return Err(format!("{}: {}: {}", path.display(), c.name, c.detail));
            }
            out.entry(entry.symmetry_factor).or_insert_with(Evidence::verified).witnesses.insert(entry.order);
        }
    }
    Ok(out)
}

fn cmd_table(a: &TableArgs) -> CmdResult {
    let mut config = LowerBoundConfig::default();
    if let Some(path) = &a.bounds {
        read_file(path, |t| config.parse_overrides(t)).map_err(|e| e.to_string())?;
    }
    let mut evidence = collect_evidence(a.girth, &a.results)?;
    if let Some(path) = &a.claims {
        let (g, claims) = read_file(path, Evidence::parse_claims).map_err(|e| e.to_string())?;
        if g != a.girth {
            return Err(format!("{}: claims are for girth {g}, not {}", path.display(), a.girth));
        }
        for (b, claim) in claims {
            let e = evidence.entry(b).or_insert_with(Evidence::verified);
            e.exhausted.extend(claim.exhausted);
            e.witnesses.extend(claim.witnesses);
            e.source = EvidenceSource::Claimed;
        }
    }
    let factors = a.sym.clone().map(|l| l.0).unwrap_or_else(|| evidence.keys().copied().collect());
    if factors.is_empty() {
        return Err("no symmetry factors given and no evidence found".into());
    }
    let table = bounds_table(a.girth, &factors, &config, &evidence);
    if a.machine {
        print!("{}", table.to_machine_text());
    } else {
        print!("{table}");
    }
    Ok(EXIT_OK)
}

fn cmd_report(a: &ReportArgs) -> CmdResult {
    let mut certs = Vec::new();
    for input in &a.inputs {
        let paths = if input.is_dir() { files_with_ext(input, "cert")? } else { vec![input.clone()] };
        for path in paths {
            let cert = read_cert(&path)?;
            // Other instances and orders where patterns were found are not
            // part of this report.
            if (cert.girth, cert.symmetry_factor) == (a.girth, a.sym) && cert.counts.leaves == 0 {
                certs.push(cert);
            }
        }
    }
    let report = non_existence_report(a.girth, a.sym, &certs).map_err(|e| e.to_string())?;
    println!("g={} b={} no pattern at orders: {report}", a.girth, a.sym);
    match report.require(&a.orders) {
        Ok(()) => Ok(EXIT_OK),
        Err(CatalogError::MissingCertificate(n)) => {
            eprintln!("order {n} has no non-existence certificate");
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_render(a: &RenderArgs) -> CmdResult {
    let entry = read_entry(&a.file)?;
    let style = RenderStyle {
        radius: a.radius,
        vertex_size: a.vertex_size,
        ..RenderStyle::default()
    };
    if !(style.radius > 0.0 && style.vertex_size > 0.0) {
        return Err("--radius and --vertex-size must be positive".into());
    }
    let svg = render(&entry, &style).map_err(|e| format!("{}: {e}", a.file.display()))?;
    match &a.out {
        Some(path) => write_file(path, &svg).map_err(|e| e.to_string())?,
        None => print!("{svg}"),
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_range_filters_by_period() {
        assert_eq!(orders_in_range(3, 258, 276, 2), vec![258, 264, 270, 276]);
        assert_eq!(orders_in_range(1, 6, 12, 2), vec![6, 8, 10, 12]);
        assert!(orders_in_range(3, 8, 8, 2).is_empty());
        assert_eq!(orders_in_range(3, 258, 384, 2).len(), 22);
    }

    #[test]
    fn factor_lists() {
        assert_eq!(parse_factor_list("3-5,8").unwrap().0, vec![3, 4, 5, 8]);
        assert!(parse_factor_list("5-3").is_err());
        assert!(parse_factor_list("0").is_err());
        assert!(parse_factor_list("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
