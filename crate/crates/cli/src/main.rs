//! Command-line driver for the verification suite and cohomology computations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use xmodlab::lie::{load_algebra, FiniteLieAlgebra};
use xmodlab::modules::{builtin_algebra, load_module, LieModule};
use xmodlab::report::{Report, RunConfig};
use xmodlab::suite;
use xmodlab::LieAlgebra;

#[derive(Parser)]
#[command(name = "xmodlab", version, about = "Exact computations with Lie algebra crossed modules and 3-cocycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Upper index of the W1 window [-1, N].
    #[arg(long, global = true, default_value_t = 8)]
    window: i64,

    /// Top degree of density modules and top index of Verma duals.
    #[arg(long, global = true, default_value_t = 12)]
    module_window: i64,

    /// Compute weight slices with |w| <= R.
    #[arg(long, global = true, default_value_t = 8)]
    weight_range: i64,

    /// Maximal PBW monomial length.
    #[arg(long, global = true, default_value_t = 2)]
    pbw_length: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification, `all`, or `list`.
    Verify { name: String },
    /// Cohomology dimensions per weight.
    Betti {
        /// sl2, sl3, w1, or a TOML algebra file.
        #[arg(long, default_value = "sl2")]
        algebra: String,
        /// trivial, F<λ>, M, N, L, pbw, pbw+, or a TOML module file.
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long)]
        q_max: Option<usize>,
    },
    /// Long exact sequence of a built-in sequence: de-rham, de-rham-w1, verma, pbw.
    Connecting {
        #[arg(long, default_value = "de-rham")]
        ses: String,
    },
    /// Crossed modules from the principal construction.
    Crossed {
        #[arg(value_parser = ["build", "check", "equiv"])]
        action: String,
        /// verma, density or w1.
        #[arg(long, default_value = "verma")]
        data: String,
    },
    /// List catalog entries, check one, or evaluate one on a tuple.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value = "sl2")]
        algebra: String,
        /// Comma-separated basis labels, e.g. e,f,h.
        #[arg(long, value_delimiter = ',')]
        tuple: Option<Vec<String>>,
    },
    /// Printed tables against computed values.
    Reconcile,
    /// Hochschild-Serre E2 page relative to a diagonal subalgebra.
    E2 {
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long, default_value = "M")]
        module: String,
        /// Comma-separated basis labels spanning the subalgebra.
        #[arg(long, value_delimiter = ',', default_value = "h")]
        subalgebra: Vec<String>,
        #[arg(long, default_value_t = 3)]
        p_max: usize,
    },
    /// Relative cohomology H^*(g, h; M).
    Relative {
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long, default_value = "M")]
        module: String,
        #[arg(long, value_delimiter = ',', default_value = "h")]
        subalgebra: Vec<String>,
        #[arg(long, default_value_t = 3)]
        p_max: usize,
    },
}

struct Resolved {
    algebra: Arc<dyn LieAlgebra>,
    module: Arc<dyn LieModule>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn resolve(algebra: &str, module: &str, cfg: &RunConfig) -> Result<Resolved> {
    let (alg, finite): (Arc<dyn LieAlgebra>, Option<Arc<FiniteLieAlgebra>>) = if Path::new(algebra).is_file() {
        let a = Arc::new(load_algebra(&read(Path::new(algebra))?)?);
        (a.clone(), Some(a))
    } else {
        let a = suite::algebra_by_name(algebra, cfg)?;
        let finite = builtin_algebra(algebra).ok();
        (a, finite)
    };
    let module = if Path::new(module).is_file() {
        let m = load_module(&read(Path::new(module))?)?;
        if m.algebra().name() != alg.name() {
            bail!("module {} is over {}, not {}", m.name(), m.algebra().name(), alg.name());
        }
        m
    } else {
        suite::module_by_name(module, &alg, finite, cfg)?
    };
    Ok(Resolved { algebra: alg, module })
}

fn indices(alg: &dyn LieAlgebra, labels: &[String]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| alg.index_of(l).with_context(|| format!("unknown basis element {l} of {}", alg.name())))
        .collect()
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Report> {
    Ok(match &cli.command {
        Command::Verify { name } if name == "list" => {
            let mut r = Report::new(cfg);
            let mut t = xmodlab::report::Table::new("verifications", &["name", "description"]);
            for (n, d) in suite::VERIFICATIONS {
                t.row(vec![n.to_string(), d.to_string()]);
            }
            r.table(t);
            r
        }
        Command::Verify { name } => suite::verify(name, cfg)?,
        Command::Betti { algebra, module, q_max } => {
            let r = resolve(algebra, module, cfg)?;
            let q = q_max.unwrap_or(r.algebra.dim().min(8));
            suite::betti_report(r.algebra.as_ref(), r.module.as_ref(), q, cfg)?
        }
        Command::Connecting { ses } => suite::connecting_report(ses, cfg)?,
        Command::Crossed { action, data } => suite::crossed_report(action, data, cfg)?,
        Command::Catalog { name, algebra, tuple } => {
            suite::catalog_report(name.as_deref(), algebra, tuple.as_deref(), cfg)?
        }
        Command::Reconcile => suite::verify("reconcile", cfg)?,
        Command::E2 { algebra, module, subalgebra, p_max } => {
            let r = resolve(algebra, module, cfg)?;
            let h = indices(r.algebra.as_ref(), subalgebra)?;
            suite::e2_report(r.algebra.as_ref(), &h, r.module.as_ref(), *p_max, cfg)?
        }
        Command::Relative { algebra, module, subalgebra, p_max } => {
            let r = resolve(algebra, module, cfg)?;
            let h = indices(r.algebra.as_ref(), subalgebra)?;
            suite::relative_report(r.algebra.as_ref(), &h, r.module.as_ref(), *p_max, cfg)?
        }
    })
}

/// The invocation echoed into reports, without the output destination.
fn command_line() -> String {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--out" {
            args.next();
        } else if !a.starts_with("--out=") {
            out.push(a);
        }
    }
    out.join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        command: command_line(),
        witt_lo: -1,
        witt_hi: cli.window,
        density_hi: cli.module_window,
        verma_hi: cli.module_window,
        pbw_length: cli.pbw_length,
        weight_range: cli.weight_range,
    };
    if cli.window < 1 || cli.module_window < 2 || cli.pbw_length < 1 || cli.weight_range < 0 {
        eprintln!("error: windows must be positive (--window >= 1, --module-window >= 2, --pbw-length >= 1)");
        return ExitCode::from(2);
    }
    let report = match run(&cli, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
