//! Command-line front end: compute invariants, export posets, build and
//! certify antichain covers, or sweep every partition up to a bound.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a checked mathematical
//! property failed, 3 the machinery failed its own certification.

use clap::{Args, Parser, Subcommand};

use jtlab::commutant::{q_closed_form, q_estimate};
use jtlab::cover::general_cover;
use jtlab::greene::lambda_of;
use jtlab::partition::{mu, r_of, spread_decompose, Partition};
use jtlab::poset::PartitionPoset;
use jtlab::report::{
    vertex_triple, CoverEdgeReport, CoverReport, IdempotenceReport, InvariantsReport, PosetReport,
    ReportDocument,
};
use jtlab::uchains::{lambda_u_of, oblak_index};
use jtlab::verify::{self, VerifyConfig};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_VIOLATION: i32 = 2;
const EXIT_CERTIFICATION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "jtlab",
    version,
    about = "Chain and antichain invariants of partition posets, with a finite-field cross-check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one partition and print a JSON report
    Invariants(InvariantsArgs),
    /// Print the poset of a partition as DOT or JSON
    Poset {
        /// Partition, e.g. "6^2,4,3,2^3,1" or "4 3 3"
        partition: String,
        /// Graphviz DOT on standard output
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// JSON report on standard output (the default)
        #[arg(long)]
        json: bool,
    },
    /// Build and certify the full family of disjoint maximum antichains
    Cover {
        /// Partition, e.g. "6^2,5,4,3^2"
        partition: String,
    },
    /// Sweep all partitions up to a size and check every invariant
    Verify {
        /// Largest partition size to sweep (at most 16)
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
        /// Monte Carlo trials per partition
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Global seed; per-partition seeds derive from it
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct InvariantsArgs {
    /// Partition, e.g. "6^2,4,3,2^3,1" or "4 3 3"
    partition: String,
    /// Smallest part of all three profiles; also the number of disjoint
    /// maximum antichains
    #[arg(long)]
    mu: bool,
    /// Number of parts of all three profiles (the poset width)
    #[arg(long)]
    r: bool,
    /// Greene chain profile of the poset
    #[arg(long)]
    lambda: bool,
    /// U-chain profile, with the witness specs that realize it
    #[arg(long = "lambda-u")]
    lambda_u: bool,
    /// Largest simple U-chain; the largest part of q
    #[arg(long)]
    oblak: bool,
    /// Sampled generic commutant Jordan type
    #[arg(long = "q-mc")]
    q_mc: bool,
    /// Closed form for q where one is known (null otherwise)
    #[arg(long = "q-closed")]
    q_closed: bool,
    /// Spread decomposition, largest sizes first
    #[arg(long)]
    spreads: bool,
    /// All of the above
    #[arg(long)]
    all: bool,
    /// Monte Carlo trials
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Seed for the sampler
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also sample q of the sampled q and report whether it stayed fixed
    #[arg(long = "check-idempotent")]
    check_idempotent: bool,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Invariants(args) => cmd_invariants(args),
        Command::Poset {
            partition,
            dot,
            json,
        } => cmd_poset(&partition, dot, json),
        Command::Cover { partition } => cmd_cover(&partition),
        Command::Verify {
            max_n,
            trials,
            seed,
        } => cmd_verify(max_n, trials, seed),
    }
}

fn parse_partition(text: &str) -> Result<Partition, i32> {
    Partition::parse(text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn cmd_invariants(args: InvariantsArgs) -> i32 {
    let partition = match parse_partition(&args.partition) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let any_flag = args.mu
        || args.r
        || args.lambda
        || args.lambda_u
        || args.oblak
        || args.q_mc
        || args.q_closed
        || args.spreads
        || args.check_idempotent;
    let all = args.all || !any_flag;

    let mut inv = InvariantsReport::default();
    if all || args.mu {
        inv.mu = Some(mu(&partition));
    }
    if all || args.r {
        inv.r = Some(r_of(&partition));
    }
    if all || args.lambda {
        inv.lambda = Some(lambda_of(&partition).lambda.parts().to_vec());
    }
    if all || args.lambda_u {
        let profile = lambda_u_of(&partition);
        inv.lambda_u = Some(profile.lambda_u.parts().to_vec());
        inv.lambda_u_witnesses = Some(
            profile
                .witnesses
                .iter()
                .map(|w| w.bases().to_vec())
                .collect(),
        );
    }
    if all || args.oblak {
        inv.oblak = Some(oblak_index(&partition));
    }
    let need_q = all || args.q_mc || args.check_idempotent;
    let mut sampled_q: Option<Partition> = None;
    if need_q {
        match q_estimate(&partition, args.trials, args.seed) {
            Ok(q) => {
                inv.q_mc = Some(q.parts().to_vec());
                sampled_q = Some(q);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CERTIFICATION;
            }
        }
    }
    if all || args.q_closed {
        inv.q_closed = Some(q_closed_form(&partition).map(|q| q.parts().to_vec()));
    }
    if all || args.spreads {
        inv.spreads = Some(
            spread_decompose(&partition)
                .spreads
                .iter()
                .map(|s| s.parts().to_vec())
                .collect(),
        );
    }
    if args.check_idempotent {
        let q = sampled_q.as_ref().expect("sampled when requested");
        match q_estimate(q, args.trials, args.seed) {
            Ok(qq) => {
                inv.check_idempotent = Some(IdempotenceReport {
                    fixed_point: &qq == q,
                    q_of_q: qq.parts().to_vec(),
                });
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CERTIFICATION;
            }
        }
    }

    let mut doc = ReportDocument::new("invariants", partition.parts().to_vec());
    if need_q {
        doc.metadata.trials = Some(args.trials);
        doc.metadata.seed = Some(args.seed);
    }
    doc.invariants = Some(inv);
    print!("{}", doc.to_json_string());
    EXIT_OK
}

fn cmd_poset(text: &str, dot: bool, _json: bool) -> i32 {
    let partition = match parse_partition(text) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let poset = PartitionPoset::build(&partition);
    if dot {
        print!("{}", poset.to_dot());
        return EXIT_OK;
    }
    let mut doc = ReportDocument::new("poset", partition.parts().to_vec());
    doc.poset = Some(PosetReport {
        vertex_count: poset.vertex_count(),
        vertices: poset.vertices().iter().map(|&v| vertex_triple(v)).collect(),
        covers: poset
            .covers()
            .iter()
            .map(|&(source, target, kind)| CoverEdgeReport {
                source,
                target,
                kind: kind.label().to_string(),
            })
            .collect(),
    });
    print!("{}", doc.to_json_string());
    EXIT_OK
}

fn cmd_cover(text: &str) -> i32 {
    let partition = match parse_partition(text) {
        Ok(p) => p,
        Err(code) => return code,
    };
    match general_cover(&partition) {
        Ok(family) => {
            let mut doc = ReportDocument::new("cover", partition.parts().to_vec());
            doc.cover = Some(CoverReport {
                count: family.len(),
                size: r_of(&partition),
                antichains: family
                    .antichains()
                    .iter()
                    .map(|chain| chain.iter().map(|&v| vertex_triple(v)).collect())
                    .collect(),
                certified: true,
            });
            print!("{}", doc.to_json_string());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CERTIFICATION
        }
    }
}

fn cmd_verify(max_n: usize, trials: usize, seed: u64) -> i32 {
    if !(1..=verify::MAX_N_CEILING).contains(&max_n) {
        eprintln!(
            "error: --max-n must lie in 1..={} (got {max_n})",
            verify::MAX_N_CEILING
        );
        return EXIT_USAGE;
    }
    if trials == 0 {
        eprintln!("error: --trials must be at least 1");
        return EXIT_USAGE;
    }
    let config = VerifyConfig {
        max_n,
        trials,
        seed,
    };
    let summary = verify::run(&config);
    print!("{}", summary.render(&config));
    if !summary.internal_errors.is_empty() {
        EXIT_CERTIFICATION
    } else if !summary.violations.is_empty() {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}
