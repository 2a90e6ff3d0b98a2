//! U-chains: the structured chain families whose unions realize `lambda_U(P)`.
//!
//! A chain spec is a list of bases `a_1 < a_2 < ... < a_k` with pairwise
//! separation at least 2. Chain `i` hugs the band `{a_i, a_i + 1}`: on those
//! two levels it takes all columns `i..=p-i+1` (every row), and on every
//! level strictly above the band it takes only the two boundary columns `i`
//! and `p-i+1`. Bands of different chains never meet, so the union size is a
//! sum of per-chain closed forms; `lambda_U` maximizes that sum over specs of
//! each size `k = 1..=r(P)`.

use std::fmt;

use thiserror::Error;

use crate::partition::{r_of, Partition};
use crate::poset::PosetVertex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UChainError {
    #[error("invalid chain bases {0}: need a strictly increasing list with gaps >= 2")]
    InvalidBases(String),
}

/// A valid list of chain bases: strictly increasing positive integers with
/// pairwise separation at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChainSpec {
    bases: Vec<usize>,
}

impl UChainSpec {
    pub fn new(bases: Vec<usize>) -> Result<Self, UChainError> {
        let ok = !bases.is_empty()
            && bases[0] >= 1
            && bases.windows(2).all(|w| w[0] + 2 <= w[1]);
        if !ok {
            return Err(UChainError::InvalidBases(format!("{bases:?}")));
        }
        Ok(UChainSpec { bases })
    }

    pub fn bases(&self) -> &[usize] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }
}

impl fmt::Display for UChainSpec {
    /// Base-set notation, e.g. `{1,3,5}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.bases.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Number of vertices chain `i` (1-based) with base `a` picks up in `D_P`.
///
/// Band levels `a` and `a+1` contribute all columns `i..=p-i+1`; higher
/// levels contribute their two boundary columns (one if they coincide, none
/// if the level is too narrow). Absent levels contribute nothing.
pub fn chain_size(p: &Partition, i: usize, a: usize) -> usize {
    debug_assert!(i >= 1 && a >= 1);
    let mut total = 0;
    for (size, m) in p.exponent_form() {
        if size == a || size == a + 1 {
            total += m * (size + 2).saturating_sub(2 * i);
        } else if size > a + 1 {
            let cols = if size >= 2 * i {
                2
            } else if size == 2 * i - 1 {
                1
            } else {
                0
            };
            total += m * cols;
        }
    }
    total
}

/// `|U_{a,a+1}|`: the one-chain closed form
/// `a*n_a + (a+1)*n_{a+1} + 2 * sum_{q > a+1} n_q`.
pub fn simple_uchain_size(p: &Partition, a: usize) -> usize {
    debug_assert!(a >= 1);
    p.exponent_form()
        .into_iter()
        .map(|(size, m)| {
            if size == a || size == a + 1 {
                size * m
            } else if size > a + 1 {
                2 * m
            } else {
                0
            }
        })
        .sum()
}

/// The vertex sets of the chains in `spec`, one `Vec` per chain, each sorted
/// by `(level, column, row)`. Chains are pairwise disjoint; levels absent
/// from `P` contribute nothing.
pub fn u_chain_vertices(p: &Partition, spec: &UChainSpec) -> Vec<Vec<PosetVertex>> {
    let mut chains = Vec::with_capacity(spec.len());
    for (idx, &a) in spec.bases().iter().enumerate() {
        let i = idx + 1;
        let mut chain = Vec::new();
        for (size, m) in p.exponent_form().into_iter().rev() {
            if size == a || size == a + 1 {
                for u in i..=(size + 1).saturating_sub(i) {
                    for k in 1..=m {
                        chain.push(PosetVertex::new(u, size, k));
                    }
                }
            } else if size > a + 1 && size + 1 >= 2 * i {
                let mut cols = vec![i];
                if size - i + 1 != i {
                    cols.push(size - i + 1);
                }
                for u in cols {
                    for k in 1..=m {
                        chain.push(PosetVertex::new(u, size, k));
                    }
                }
            }
        }
        chain.sort_by_key(|v| (v.p, v.u, v.k));
        chains.push(chain);
    }
    chains
}

/// The U-chain profile of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChainProfile {
    /// `u[k]` = best union size over specs of `k` chains; `u[0] = 0`,
    /// `u[r] = n`.
    pub u: Vec<usize>,
    /// First differences of `u`: a partition of `n` with `r(P)` parts.
    pub lambda_u: Partition,
    /// Lexicographically smallest optimal spec for each `k = 1..=r`.
    pub witnesses: Vec<UChainSpec>,
}

/// `lambda_U(P)`: maximizes the union size over specs of each length
/// `k = 1..=r(P)` with bases drawn from `max(1, smallest-1)..=largest`, and
/// reports lexicographically smallest witnesses. Panics if the profile fails
/// its structural guarantees (saturation at `r` chains, weakly decreasing
/// positive differences) — those hold for every partition.
pub fn lambda_u_of(p: &Partition) -> UChainProfile {
    let r = r_of(p);
    let lo = p.smallest().saturating_sub(1).max(1);
    let hi = p.largest();
    let bases: Vec<usize> = (lo..=hi).collect();
    let m = bases.len();

    let mut u = vec![0usize];
    let mut witnesses = Vec::with_capacity(r);
    for k in 1..=r {
        // f[j][ai] = best total of chains j..=k when chain j uses bases[ai];
        // None where no valid completion exists
        let mut f: Vec<Vec<Option<usize>>> = vec![vec![None; m]; k + 1];
        for ai in 0..m {
            f[k][ai] = Some(chain_size(p, k, bases[ai]));
        }
        for j in (1..k).rev() {
            // best continuation with a base at least bases[ai] + 2
            for ai in 0..m {
                let next = (ai..m)
                    .filter(|&bi| bases[bi] >= bases[ai] + 2)
                    .filter_map(|bi| f[j + 1][bi])
                    .max();
                f[j][ai] = next.map(|v| v + chain_size(p, j, bases[ai]));
            }
        }
        let best = (0..m)
            .filter_map(|ai| f[1][ai])
            .max()
            .expect("some spec of each length up to r(P) fits the base range");
        // lexicographically smallest witness: greedily take the smallest
        // base at each position that still achieves the optimum
        let mut picked = Vec::with_capacity(k);
        let mut need = best;
        let mut min_base = 0usize;
        for (j, row) in f.iter().enumerate().skip(1).take(k) {
            let ai = (0..m)
                .find(|&ai| bases[ai] >= min_base && row[ai] == Some(need))
                .expect("witness reconstruction follows the DP");
            picked.push(bases[ai]);
            need -= chain_size(p, j, bases[ai]);
            min_base = bases[ai] + 2;
        }
        u.push(best);
        witnesses.push(UChainSpec::new(picked).expect("reconstructed bases are valid"));
    }

    assert_eq!(u[r], p.n(), "r(P) chains must cover all of D_P");
    let mut diffs = Vec::with_capacity(r);
    for k in 1..=r {
        diffs.push(u[k] - u[k - 1]);
    }
    assert!(
        diffs.windows(2).all(|w| w[0] >= w[1]),
        "differences of u must be weakly decreasing"
    );
    let lambda_u = Partition::new(diffs).expect("positive differences up to r(P)");
    UChainProfile {
        u,
        lambda_u,
        witnesses,
    }
}

/// The largest single-chain size `max_a |U_{a,a+1}|` — the top part of every
/// profile the crate computes.
pub fn oblak_index(p: &Partition) -> usize {
    let lo = p.smallest().saturating_sub(1).max(1);
    let hi = p.largest();
    (lo..=hi)
        .map(|a| simple_uchain_size(p, a))
        .max()
        .expect("nonempty base range")
}
