use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use vbol::config::{parse_index_flag, ConfigError, FileConfig, OneOrMany, Suite, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "vbol", about = "Exact verification of holomorphic differential operator identities")]
struct Cli {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suites to run (comma separated or repeated).
    #[arg(long, value_enum, value_delimiter = ',')]
    suite: Vec<Suite>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long)]
    m_max: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    /// Index matrix, rows separated by ';', entries by ','.
    #[arg(long)]
    index: Option<String>,
    /// Also run with the weight left as a free parameter.
    #[arg(long)]
    symbolic_k: bool,
    /// Report machine-derived constants without failing on a mismatch.
    #[arg(long)]
    derive: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Output prefix for the .json, .md and .timings.json files.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(cli: Cli) -> Result<SuiteConfig, ConfigError> {
    let base = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        suite: (!cli.suite.is_empty()).then(|| OneOrMany::Many(cli.suite)),
        n: cli.n,
        j: cli.j,
        r_max: cli.r_max,
        m_max: cli.m_max,
        l: cli.l,
        index: cli.index.as_deref().map(parse_index_flag).transpose()?,
        symbolic_k: cli.symbolic_k.then_some(true),
        derive: cli.derive.then_some(true),
        threads: cli.threads,
        out: cli.out,
    };
    SuiteConfig::resolve(base.overlay(flags), std::env::var("VB_DEGREE_CAP").ok())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn main() -> ExitCode {
    let cfg = match config(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("vbol: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let (report, code) = vbol::run(&cfg);
    let total = start.elapsed();
    let files = [
        (".json", report.to_json()),
        (".md", report.to_markdown()),
        (".timings.json", report.timings_json(total)),
    ];
    for (suffix, body) in files {
        let path = with_suffix(&cfg.out, suffix);
        if let Err(e) = std::fs::write(&path, body) {
            eprintln!("vbol: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let s = report.summary;
    println!("{} pass, {} fail, {} derived", s.pass, s.fail, s.derived);
    ExitCode::from(code as u8)
}
