//! The property sweep: every identity the crate promises, on every partition
//! up to a size bound.
//!
//! For each partition the sweep checks
//!
//! - the smallest part of `lambda` and `lambda_U` equals `mu`;
//! - both profiles have `r(P)` parts, and so does the sampled `Q`;
//! - `lambda_U <= Q <= lambda` in dominance order, with `min Q = mu` and
//!   `max Q` equal to the largest simple U-chain;
//! - the antichain cover construction yields exactly `mu(P)` certified
//!   antichains;
//! - the chain profile is conjugate to the brute-force antichain-union
//!   profile (small `n` only — the oracle enumerates subsets);
//! - the closed form for `Q`, where defined, matches the sampled `Q`.
//!
//! Partitions are processed in a fixed order and per-partition seeds are
//! derived from the partition itself, so summaries are byte-identical across
//! runs and across worker counts. `JTLAB_THREADS` caps the worker pool.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::commutant::{q_closed_form, q_estimate};
use crate::cover::general_cover;
use crate::field::mix64;
use crate::greene::{antichain_union_profile_bruteforce, lambda_of};
use crate::partition::{all_partitions, mu, r_of, Partition};
use crate::poset::PartitionPoset;
use crate::uchains::{lambda_u_of, oblak_index};

/// Largest `n` the brute-force antichain oracle is consulted for.
const CONJUGACY_ORACLE_MAX_N: usize = 10;

/// Hard ceiling on `max_n`; the sweep is exponential in it.
pub const MAX_N_CEILING: usize = 16;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default)]
pub struct VerifySummary {
    pub partitions_checked: usize,
    /// Pass counts per property, keyed by a stable name.
    pub pass_counts: BTreeMap<String, usize>,
    /// Violated properties: honest mathematical counterexamples.
    pub violations: Vec<String>,
    /// Failures of the machinery itself (certification, sampling).
    pub internal_errors: Vec<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.internal_errors.is_empty()
    }

    /// Deterministic plain-text rendering.
    pub fn render(&self, config: &VerifyConfig) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify: max n = {}, trials = {}, seed = {}",
            config.max_n, config.trials, config.seed
        );
        let _ = writeln!(out, "partitions checked: {}", self.partitions_checked);
        for (name, count) in &self.pass_counts {
            let _ = writeln!(out, "  pass {count:>5}  {name}");
        }
        for v in &self.violations {
            let _ = writeln!(out, "VIOLATION: {v}");
        }
        for e in &self.internal_errors {
            let _ = writeln!(out, "INTERNAL ERROR: {e}");
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.passed() { "all checks passed" } else { "FAILED" }
        );
        out
    }
}

#[derive(Default)]
struct PartitionOutcome {
    passes: Vec<&'static str>,
    violations: Vec<String>,
    internal_errors: Vec<String>,
}

/// A per-partition seed that depends only on the partition and the global
/// seed, so results do not depend on scheduling.
fn partition_seed(global: u64, p: &Partition) -> u64 {
    let mut acc = mix64(global ^ 0x6a09e667f3bcc908);
    for &part in p.parts() {
        acc = mix64(acc.rotate_left(7) ^ part as u64);
    }
    acc
}

fn check_partition(p: &Partition, config: &VerifyConfig) -> PartitionOutcome {
    let mut out = PartitionOutcome::default();
    let pass = |name: &'static str, ok: bool, detail: String, sink: &mut PartitionOutcome| {
        if ok {
            sink.passes.push(name);
        } else {
            sink.violations.push(format!("{p}: {name}: {detail}"));
        }
    };

    let lambda = lambda_of(p);
    let uprofile = lambda_u_of(p);
    let m = mu(p);
    let r = r_of(p);
    let ob = oblak_index(p);

    pass(
        "profile minima equal mu",
        *lambda.lambda.parts().last().unwrap() == m
            && *uprofile.lambda_u.parts().last().unwrap() == m,
        format!(
            "min lambda = {}, min lambda_U = {}, mu = {m}",
            lambda.lambda.parts().last().unwrap(),
            uprofile.lambda_u.parts().last().unwrap()
        ),
        &mut out,
    );
    pass(
        "profile lengths equal r",
        lambda.lambda.num_parts() == r && uprofile.lambda_u.num_parts() == r,
        format!(
            "parts(lambda) = {}, parts(lambda_U) = {}, r = {r}",
            lambda.lambda.num_parts(),
            uprofile.lambda_u.num_parts()
        ),
        &mut out,
    );

    match q_estimate(p, config.trials, partition_seed(config.seed, p)) {
        Ok(q) => {
            let sandwich = uprofile
                .lambda_u
                .dominated_by(&q)
                .expect("profiles share n")
                && q.dominated_by(&lambda.lambda).expect("profiles share n");
            pass(
                "dominance sandwich lambda_U <= q <= lambda",
                sandwich,
                format!(
                    "lambda_U = {}, q = {q}, lambda = {}",
                    uprofile.lambda_u, lambda.lambda
                ),
                &mut out,
            );
            pass(
                "q minimum equals mu",
                *q.parts().last().unwrap() == m,
                format!("q = {q}, mu = {m}"),
                &mut out,
            );
            pass(
                "q maximum equals the largest simple u-chain",
                q.largest() == ob,
                format!("q = {q}, index = {ob}"),
                &mut out,
            );
            pass(
                "q has r parts",
                q.num_parts() == r,
                format!("q = {q}, r = {r}"),
                &mut out,
            );
            if let Some(closed) = q_closed_form(p) {
                pass(
                    "closed form matches sampled q",
                    closed == q,
                    format!("closed = {closed}, sampled = {q}"),
                    &mut out,
                );
            }
        }
        Err(e) => out.internal_errors.push(format!("{p}: sampling q: {e}")),
    }

    match general_cover(p) {
        Ok(family) => pass(
            "cover yields exactly mu certified antichains",
            family.len() == m,
            format!("{} antichains, mu = {m}", family.len()),
            &mut out,
        ),
        Err(e) => out.internal_errors.push(format!("{p}: cover: {e}")),
    }

    if p.n() <= CONJUGACY_ORACLE_MAX_N {
        let poset = PartitionPoset::build(p);
        match antichain_union_profile_bruteforce(&poset) {
            Ok(profile) => {
                let diffs: Vec<usize> = profile.windows(2).map(|w| w[1] - w[0]).collect();
                let mut diffs_with_first = vec![profile[0]];
                diffs_with_first.extend(diffs);
                let anti = Partition::new(diffs_with_first)
                    .expect("antichain profile increments form a partition");
                pass(
                    "antichain profile is conjugate to the chain profile",
                    anti == lambda.lambda.conjugate(),
                    format!(
                        "antichain increments = {anti}, conjugate lambda = {}",
                        lambda.lambda.conjugate()
                    ),
                    &mut out,
                );
            }
            Err(e) => out
                .internal_errors
                .push(format!("{p}: antichain oracle: {e}")),
        }
    }

    out
}

/// Runs the sweep over all partitions of `1..=max_n`, in parallel, and folds
/// the outcomes in deterministic order.
pub fn run(config: &VerifyConfig) -> VerifySummary {
    assert!(
        config.max_n >= 1 && config.max_n <= MAX_N_CEILING,
        "max_n must lie in 1..={MAX_N_CEILING}"
    );
    let partitions: Vec<Partition> = (1..=config.max_n).flat_map(all_partitions).collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = std::env::var("JTLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
    {
        builder = builder.num_threads(threads);
    }
    let pool = builder.build().expect("worker pool");

    let outcomes: Vec<PartitionOutcome> = pool.install(|| {
        partitions
            .par_iter()
            .map(|p| check_partition(p, config))
            .collect()
    });

    let mut summary = VerifySummary {
        partitions_checked: partitions.len(),
        ..VerifySummary::default()
    };
    for outcome in outcomes {
        for name in outcome.passes {
            *summary.pass_counts.entry(name.to_string()).or_insert(0) += 1;
        }
        summary.violations.extend(outcome.violations);
        summary.internal_errors.extend(outcome.internal_errors);
    }
    summary
}
