//! `hgm`: Euler factors, Hodge data and cross-checks for rank-2
//! hypergeometric motives.

mod cmd;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "hgm",
    version,
    about = "Rank-2 hypergeometric motives: traces, Euler factors, Hodge data"
)]
pub struct Cli {
    /// Emit JSON (errors become {"error":{"code","message"}})
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads for per-prime sweeps (verify, congr)
    #[arg(long, global = true, value_name = "M")]
    pub jobs: Option<usize>,
    /// Not supported: every algorithm here is deterministic
    #[arg(long, global = true, hide = true)]
    pub seed: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Point {
    /// Parameters "a,b;c,d" (alpha;beta)
    #[arg(long)]
    pub params: String,
    /// Specialisation point, a rational
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long)]
    pub p: u64,
    /// Residue degree (default: least f making the sum defined)
    #[arg(long)]
    pub f: Option<u32>,
    /// p-adic precision k (default from the precision policy)
    #[arg(long)]
    pub prec: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The hypergeometric sum H_q(alpha, beta | z)
    Trace {
        #[command(flatten)]
        pt: Point,
        /// Reconstruct the value as a rational
        #[arg(long)]
        recognize: bool,
    },
    /// Degree-2 L-polynomial from H_q and H_{q^2}
    Frob {
        #[command(flatten)]
        pt: Point,
        /// Integral Weil normalisation (multiply c_i by q^{t i})
        #[arg(long)]
        integral: bool,
        /// Print p-adic coefficients without reconstruction
        #[arg(long)]
        padic: bool,
    },
    /// Zig-zag Hodge polynomials
    Hodge {
        #[arg(long)]
        params: String,
        /// One polynomial per unit j mod N
        #[arg(long)]
        all_embeddings: bool,
        /// Embedding index (default 1)
        #[arg(long)]
        j: Option<i64>,
    },
    /// Symmetry group H and the field of definition
    Basefield {
        #[arg(long)]
        params: String,
    },
    /// Good / tame / wild, with monodromy orders
    Classify {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        p: u64,
    },
    /// Exact point-count trace vs p-adic sum at every split good prime <= pmax
    Verify {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Trace at a tame prime (conditional formula, hypotheses reported)
    Tame {
        #[command(flatten)]
        pt: Point,
        /// Cusp: 0, 1 or inf
        #[arg(long)]
        at: String,
    },
    /// Jacobi-motive value, weight, Hodge data and infinity type
    Jacobi {
        /// "t1:n1,t2:n2,..."
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: Option<u32>,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Trace congruences mod l between ~_l-related data
    Congr {
        #[arg(long)]
        params1: String,
        #[arg(long)]
        params2: String,
        #[arg(long)]
        l: u64,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Ordering, inversion, Galois, twist and non-generic identities
    Props {
        #[command(flatten)]
        pt: Point,
        /// Twist parameter (default 1/N)
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
    },
    /// Euler-curve point counts and their character decomposition
    Count {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let result = cmd::run(&cli);
    let (text, code) = match result {
        Ok(out) => (
            render::render(&out.value, out.plain.as_deref(), json),
            out.exit,
        ),
        Err(e) => {
            let obj = render::error_object(&e);
            if json {
                (obj.to_string(), 2)
            } else {
                eprintln!("error[{}]: {}", e.code(), e.message());
                return ExitCode::from(2);
            }
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => writeln!(std::io::stdout(), "{text}"),
    };
    if let Err(e) = written {
        eprintln!("error[io]: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
