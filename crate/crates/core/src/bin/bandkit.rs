//! Batch CLI for band computations. All searches are exhaustive in
//! canonical order; given identical inputs the output is byte-identical
//! across runs and thread counts.

use clap::{Parser, Subcommand};

use bandkit::cli::{parse_presentation, run, Registry};
use bandkit::core::DEFAULT_BOUND;

#[derive(Parser)]
#[command(name = "bandkit", version, about = "commutative algebra of bands and band schemes")]
struct Cli {
    /// Presentation file with band/scheme/graded definitions.
    #[arg(long, global = true)]
    file: Option<std::path::PathBuf>,
    /// Degree bound for saturations and searches (env: BANDKIT_BOUND).
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Internal parallelism; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Band axioms, fusion and hereditary-fusion flags with bounds.
    Check { band: String },
    /// Prime spectrum: points, opens, specialization.
    Spec {
        name: String,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rational points of a scheme, optionally with a topology.
    Points {
        scheme: String,
        #[arg(long)]
        over: String,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Grassmannian points over a band, optionally as matroids.
    Grassmannian {
        r: usize,
        n: usize,
        #[arg(long)]
        over: String,
        #[arg(long)]
        matroids: bool,
    },
    /// Tits space: closed points of the K-point space.
    Tits { scheme: String },
    /// Kernel space: prime k-ideals, chart-wise.
    Kernel { scheme: String },
    /// Null-kernel points over the idyll library, with the map to the
    /// kernel space.
    Nullpoints { scheme: String },
    /// Integer polynomial presentation of the universal ring.
    UniversalRing { band: String },
    /// Division test: does T - a divide the polynomial?
    Divides { band: String, poly: String, element: String },
    /// Continuity and commutativity of the comparison diagram.
    Compare {
        scheme: String,
        #[arg(long)]
        over: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: &Cli) -> bandkit::Result<run::Outcome> {
    if cli.jobs > 1 {
        // the library is deterministic regardless; the pool only sizes
        // internal parallel enumerations
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let bound = cli
        .bound
        .or_else(|| std::env::var("BANDKIT_BOUND").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_BOUND);
    let mut reg = Registry::new();
    if let Some(path) = &cli.file {
        let src = std::fs::read_to_string(path)
            .map_err(|e| bandkit::Error::Other(format!("cannot read {}: {e}", path.display())))?;
        let file = parse_presentation(&src)?;
        reg.load(&file)?;
    }
    match &cli.command {
        Cmd::Check { band } => run::cmd_check(&reg, band, bound),
        Cmd::Spec { name, dot, .. } => run::cmd_spec(&reg, name, *dot, bound),
        Cmd::Points { scheme, over, topology } => {
            run::cmd_points(&reg, scheme, over, topology.as_deref(), bound)
        }
        Cmd::Grassmannian { r, n, over, matroids } => {
            run::cmd_grassmannian(&reg, *r, *n, over, *matroids, bound)
        }
        Cmd::Tits { scheme } => run::cmd_tits(&reg, scheme, bound),
        Cmd::Kernel { scheme } => run::cmd_kernel(&reg, scheme, bound),
        Cmd::Nullpoints { scheme } => run::cmd_nullpoints(&reg, scheme, bound),
        Cmd::UniversalRing { band } => run::cmd_universal_ring(&reg, band, bound),
        Cmd::Divides { band, poly, element } => {
            run::cmd_divides(&reg, band, poly, element, bound)
        }
        Cmd::Compare { scheme, over } => run::cmd_compare(&reg, scheme, over, bound),
    }
}
