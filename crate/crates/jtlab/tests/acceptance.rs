//! Acceptance gate: one test per promised behavior, each printing a single
//! `acceptance C#: PASS/FAIL` verdict line before asserting. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line; under a
//! plain `cargo test` the lines surface only for failures.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use jtlab::commutant::{q_closed_form, q_estimate};
use jtlab::cover::blocks::{match_eta_le_theta, match_theta_le_eta, TwoLevelProfile};
use jtlab::cover::general_cover;
use jtlab::partition::{mu, mu_components, r_of, Partition};
use jtlab::poset::PartitionPoset;
use jtlab::uchains::{lambda_u_of, oblak_index};
use jtlab::verify::{self, VerifyConfig};

fn report(criterion: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} — {detail}");
    assert!(ok, "acceptance {criterion} failed: {detail}");
}

fn pt(text: &str) -> Partition {
    Partition::parse(text).unwrap()
}

#[test]
fn c1_uchain_profile_with_cumulative_sizes() {
    let start = Instant::now();
    let profile = lambda_u_of(&pt("6^2,4,3,2^3,1"));
    let elapsed = start.elapsed();
    let ok = profile.lambda_u.parts() == [15, 8, 3]
        && profile.u == [0, 15, 23, 26]
        && elapsed < Duration::from_secs(1);
    report(
        "C1",
        ok,
        &format!(
            "lambda_U = {:?}, u = {:?}, took {elapsed:?}",
            profile.lambda_u.parts(),
            profile.u
        ),
    );
}

#[test]
fn c2_mu_closed_form_examples() {
    let start = Instant::now();
    let deep = pt("11,10,9^2,8,6,5,3,2,1^2");
    let deep_mu = mu(&deep);
    let mut components = mu_components(&deep);
    components.sort_unstable();
    let values = [
        mu(&pt("4,3^2")),
        mu(&pt("2,1^2")),
        mu(&pt("6^2,5,4,3^2")),
    ];
    let elapsed = start.elapsed();
    let ok = deep_mu == 1
        && components == [1, 3, 5]
        && values == [10, 4, 10]
        && elapsed < Duration::from_secs(1);
    report(
        "C2",
        ok,
        &format!(
            "mu(deep) = {deep_mu} from components {components:?}, \
             [mu(4,3^2), mu(2,1^2), mu(6^2,5,4,3^2)] = {values:?}, took {elapsed:?}"
        ),
    );
}

#[test]
fn c3_generic_commutant_types_closed_and_sampled() {
    let start = Instant::now();
    let three = pt("8^2,7,6,5^2,3,2^4");
    let four = pt("10^2,9,8,7^2,5,4^4,2^3,1^4");

    let closed3 = q_closed_form(&three).map(|q| q.parts().to_vec());
    let closed4 = q_closed_form(&four).map(|q| q.parts().to_vec());
    let sampled3 = q_estimate(&three, 3, 0).unwrap();
    let sampled4 = q_estimate(&four, 3, 0).unwrap();
    let top3 = oblak_index(&three);
    let elapsed = start.elapsed();

    let ok = closed3.as_deref() == Some(&[23, 17, 10][..])
        && top3 == 23
        && sampled3.parts() == [23, 17, 10]
        && closed4.as_deref() == Some(&[33, 23, 16, 10][..])
        && sampled4.parts() == [33, 23, 16, 10]
        && elapsed < Duration::from_secs(5);
    report(
        "C3",
        ok,
        &format!(
            "q(8^2,7,6,5^2,3,2^4): closed {closed3:?} sampled {:?} top {top3}; \
             q(10^2,9,8,7^2,5,4^4,2^3,1^4): closed {closed4:?} sampled {:?}; took {elapsed:?}",
            sampled3.parts(),
            sampled4.parts()
        ),
    );
}

#[test]
fn c4_antichain_covers_are_complete_and_valid() {
    let cases = [("6^2,5,4,3^2", 10usize), ("10,9,6^2,5,4,3^2", 10), ("4^2,2,1^2", 4)];
    let mut details = Vec::new();
    let mut ok = true;
    for (text, want) in cases {
        let start = Instant::now();
        let p = pt(text);
        let family = general_cover(&p).unwrap();
        let elapsed = start.elapsed();

        // Re-check validity from scratch instead of trusting the constructor:
        // every member an antichain of size r(P), no vertex used twice.
        let poset = PartitionPoset::build(&p);
        let r = r_of(&p);
        let mut seen = HashSet::new();
        let mut valid = family.len() == want;
        for antichain in family.antichains() {
            valid &= antichain.len() == r;
            valid &= poset.is_antichain(antichain);
            valid &= antichain.iter().all(|&v| seen.insert(v));
        }
        valid &= elapsed < Duration::from_secs(1);
        ok &= valid;
        details.push(format!("{text}: {} antichains in {elapsed:?}", family.len()));
    }
    report("C4", ok, &details.join("; "));
}

#[test]
fn c5_block_matching_tables() {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();

    // Fixed lower step (p = 6, eta = 4, delta = 2, d = 2, theta = 1) against a
    // growing gap: the flat upper level is consumed whole each time.
    let upper_sweep = [
        (7usize, 13usize, TwoLevelProfile::LowerStep { eta: 2, theta: 0, delta: 1, d: 2 }),
        (9, 15, TwoLevelProfile::LowerStep { eta: 1, theta: 0, delta: 5, d: 1 }),
        (11, 17, TwoLevelProfile::LowerStep { eta: 1, theta: 0, delta: 3, d: 2 }),
    ];
    for (g, pairs, residual) in upper_sweep {
        let bm = match_theta_le_eta(6, g, 4, 1, 2, 2).unwrap();
        ok &= bm.pairs.len() == pairs && bm.residual == residual;
        details.push(format!("g={g}: {} pairs", bm.pairs.len()));
    }

    // Fixed notched upper (p = 2, g = 6, eps = 3, d = 2, theta = 2) against a
    // shrinking lower level: the flat lower level is consumed whole each time.
    let lower_sweep = [
        (3usize, 6usize, TwoLevelProfile::UpperNotch { eta: 0, theta: 1, eps: 1, d: 2 }),
        (2, 4, TwoLevelProfile::UpperNotch { eta: 0, theta: 2, eps: 7, d: 1 }),
        (1, 2, TwoLevelProfile::UpperNotch { eta: 0, theta: 2, eps: 5, d: 2 }),
    ];
    for (eta, pairs, residual) in lower_sweep {
        let bm = match_eta_le_theta(2, 6, eta, 2, 3, 2).unwrap();
        ok &= bm.pairs.len() == pairs && bm.residual == residual;
        details.push(format!("eta={eta}: {} pairs", bm.pairs.len()));
    }

    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    details.push(format!("took {elapsed:?}"));
    report("C5", ok, &details.join("; "));
}

#[test]
fn c6_full_sweep_of_small_partitions() {
    let start = Instant::now();
    let config = VerifyConfig {
        max_n: 12,
        trials: 3,
        seed: 0,
    };
    let summary = verify::run(&config);
    let elapsed = start.elapsed();
    let ok = summary.passed()
        && summary.partitions_checked == 271
        && elapsed < Duration::from_secs(600);
    report(
        "C6",
        ok,
        &format!(
            "{} partitions, {} violations, {} internal errors, took {elapsed:?}",
            summary.partitions_checked,
            summary.violations.len(),
            summary.internal_errors.len()
        ),
    );
}

#[test]
fn c7_verify_runs_are_byte_identical() {
    let start = Instant::now();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_jtlab"))
            .args(["verify", "--max-n", "12", "--trials", "3", "--seed", "7"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    let elapsed = start.elapsed();
    let ok = first.status.success()
        && second.status.success()
        && first.stdout == second.stdout
        && !first.stdout.is_empty()
        && elapsed < Duration::from_secs(1200);
    report(
        "C7",
        ok,
        &format!(
            "two runs, {} bytes each, identical: {}, took {elapsed:?}",
            first.stdout.len(),
            first.stdout == second.stdout
        ),
    );
}
