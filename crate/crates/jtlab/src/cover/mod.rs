//! Constructs `mu(P)` pairwise disjoint maximum antichains in `D_P`.
//!
//! For a spread (consecutive distinct part sizes), [`spread_cover`] works in
//! window coordinates: level `i` (counted from the bottom, 1-based) exposes a
//! window of `p` columns if `i` is odd and `p + 1` columns if `i` is even,
//! shifted right by `ceil(i/2) - 1`, where `p` is the smallest part. Vertices
//! in a common window column taken across all odd levels (or across all even
//! levels) form a maximum antichain, and rows are consumed top-down so the
//! antichains stay disjoint. When the odd and even sweeps cannot both run to
//! the budget, the loop pairs leftover odd-level columns with leftover
//! even-level columns through the block engine in [`blocks`].
//!
//! [`general_cover`] splits a partition at gaps of two or more, covers the
//! lowest spread directly, recurses on the rest (shifted down so it stands
//! alone), and stitches the two families with a maximum matching on the pairs
//! whose union is still an antichain.
//!
//! Both constructors finish with [`AntichainFamily::certify`], which rechecks
//! every claimed property against the poset itself, so a bug here surfaces as
//! an error rather than an invalid family.

pub mod blocks;

use std::collections::HashSet;

use thiserror::Error;

use crate::matching::max_bipartite_matching;
use crate::partition::{mu, r_of, spread_decompose, Partition};
use crate::poset::{leq_labels, PartitionPoset, PosetVertex};

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("partition {0} is not a spread")]
    NotSpread(Partition),
    #[error("invalid block parameters: {0}")]
    InvalidParams(String),
    #[error("block precondition failed: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

/// A collection of pairwise disjoint maximum antichains of one `D_P`.
#[derive(Clone, Debug)]
pub struct AntichainFamily {
    partition: Partition,
    antichains: Vec<Vec<PosetVertex>>,
}

impl AntichainFamily {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn antichains(&self) -> &[Vec<PosetVertex>] {
        &self.antichains
    }

    pub fn len(&self) -> usize {
        self.antichains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.antichains.is_empty()
    }

    /// Rechecks the family against `D_P` itself: exactly `mu(P)` antichains,
    /// each of the maximum size `r(P)`, members pairwise incomparable, all
    /// vertices real and used at most once.
    pub fn certify(&self) -> Result<(), CoverError> {
        let poset = PartitionPoset::build(&self.partition);
        let want_count = mu(&self.partition);
        if self.antichains.len() != want_count {
            return Err(CoverError::Certification(format!(
                "family for {} has {} antichains, the invariant promises {}",
                self.partition,
                self.antichains.len(),
                want_count
            )));
        }
        let want_size = r_of(&self.partition);
        let mut seen: HashSet<PosetVertex> = HashSet::new();
        for chain in &self.antichains {
            if chain.len() != want_size {
                return Err(CoverError::Certification(format!(
                    "antichain of size {} in a width-{} poset",
                    chain.len(),
                    want_size
                )));
            }
            for &v in chain {
                if !poset.contains(v) {
                    return Err(CoverError::Certification(format!(
                        "vertex {v} does not belong to the poset of {}",
                        self.partition
                    )));
                }
                if !seen.insert(v) {
                    return Err(CoverError::Certification(format!(
                        "vertex {v} is used by two antichains"
                    )));
                }
            }
            if !poset.is_antichain(chain) {
                return Err(CoverError::Certification(format!(
                    "claimed antichain {:?} contains a comparable pair",
                    chain
                )));
            }
        }
        Ok(())
    }
}

/// Window geometry of a spread level: odd levels are `p` wide, even levels
/// `p + 1` wide, and both shift right as the levels alternate upward.
fn window_offset(idx: usize) -> usize {
    idx.div_ceil(2) - 1
}

fn window_width(p: usize, idx: usize) -> usize {
    if idx % 2 == 1 {
        p
    } else {
        p + 1
    }
}

/// Takes the top remaining row of `(level index, window column)` and returns
/// the materialized vertex.
fn take_vertex(
    pools: &mut [Vec<usize>],
    sizes: &[usize],
    idx: usize,
    w: usize,
) -> Result<PosetVertex, CoverError> {
    let left = &mut pools[idx - 1][w - 1];
    if *left == 0 {
        return Err(CoverError::Certification(format!(
            "level index {idx} has no rows left in window column {w}"
        )));
    }
    let k = *left;
    *left -= 1;
    Ok(PosetVertex::new(w + window_offset(idx), sizes[idx - 1], k))
}

/// Pointwise minimum of the remaining counts over a club of levels, parsed as
/// a flat base with one `+1` run anchored at the left edge.
fn left_bump_capacity(
    pools: &[Vec<usize>],
    indices: &[usize],
    width: usize,
) -> Result<(usize, usize), CoverError> {
    let min_profile: Vec<usize> = (0..width)
        .map(|w| indices.iter().map(|&idx| pools[idx - 1][w]).min().unwrap())
        .collect();
    match blocks::parse_step(&min_profile) {
        Some((base, run, 0)) => Ok((base, run)),
        _ => Err(CoverError::Certification(format!(
            "odd-level capacity {min_profile:?} is not a left-anchored step"
        ))),
    }
}

/// Builds the full family of `mu(S)` disjoint maximum antichains of a spread.
pub fn spread_cover(partition: &Partition) -> Result<AntichainFamily, CoverError> {
    if !partition.is_spread() {
        return Err(CoverError::NotSpread(partition.clone()));
    }
    let sizes = partition.sizes();
    let s = sizes.len();
    let p = partition.smallest();
    let mults: Vec<usize> = sizes.iter().map(|&q| partition.mult(q)).collect();
    let mut pools: Vec<Vec<usize>> = (1..=s)
        .map(|idx| vec![mults[idx - 1]; window_width(p, idx)])
        .collect();

    let odd_indices: Vec<usize> = (1..=s).step_by(2).collect();
    let even_indices: Vec<usize> = (2..=s).step_by(2).collect();
    let r = odd_indices.len();

    let mut family: Vec<Vec<PosetVertex>> = Vec::new();

    // odd sweep: one antichain per window column and spare row, down to the
    // scarcest odd level
    let o0 = odd_indices.iter().map(|&i| mults[i - 1]).min().unwrap();
    for _ in 0..o0 {
        for x in 1..=p {
            let chain = odd_indices
                .iter()
                .map(|&idx| take_vertex(&mut pools, &sizes, idx, x))
                .collect::<Result<Vec<_>, _>>()?;
            family.push(chain);
        }
    }

    if s.is_multiple_of(2) {
        // even sweep, mirror image on the wider windows
        let e0 = even_indices.iter().map(|&i| mults[i - 1]).min().unwrap();
        for _ in 0..e0 {
            for y in 1..=p + 1 {
                let chain = even_indices
                    .iter()
                    .map(|&idx| take_vertex(&mut pools, &sizes, idx, y))
                    .collect::<Result<Vec<_>, _>>()?;
                family.push(chain);
            }
        }

        // if some scarcest odd level sits below some scarcest even level the
        // two sweeps already spend the whole budget; otherwise leftover odd
        // columns below the exhausted even levels pair with leftover even
        // columns above them
        let bmin = odd_indices.iter().find(|&&i| mults[i - 1] == o0).unwrap();
        let tmax = even_indices
            .iter()
            .rev()
            .find(|&&i| mults[i - 1] == e0)
            .unwrap();
        if bmin > tmax {
            loop {
                // the highest even level already drained
                let t = (1..=r)
                    .filter(|j| 2 * j <= s && pools[2 * j - 1].iter().all(|&c| c == 0))
                    .max()
                    .ok_or_else(|| {
                        CoverError::Certification(
                            "pairing loop entered with no drained even level".to_string(),
                        )
                    })?;
                if t == r {
                    break;
                }
                let lower_club: Vec<usize> = odd_indices.iter().copied().filter(|&i| i < 2 * t).collect();
                let upper_club: Vec<usize> = even_indices.iter().copied().filter(|&i| i > 2 * t).collect();
                let (o, delta) = left_bump_capacity(&pools, &lower_club, p)?;
                let mut e = usize::MAX;
                for &idx in &upper_club {
                    let level = &pools[idx - 1];
                    let first = level[0];
                    if level.iter().any(|&c| c != first) {
                        return Err(CoverError::Certification(format!(
                            "even-level capacity {level:?} is not flat"
                        )));
                    }
                    e = e.min(first);
                }
                if e == 0 || upper_club.is_empty() {
                    return Err(CoverError::Certification(
                        "undrained even level has zero capacity".to_string(),
                    ));
                }
                let lower_total = p * o + delta;
                if lower_total == 0 {
                    break;
                }
                let pairs = blocks::column_pairs_reduce_lower_step(p, 1, o, e, delta, 0)?;
                for &(x, y) in &pairs {
                    let mut chain: Vec<PosetVertex> = Vec::with_capacity(r);
                    for &idx in &lower_club {
                        chain.push(take_vertex(&mut pools, &sizes, idx, x)?);
                    }
                    for &idx in &upper_club {
                        chain.push(take_vertex(&mut pools, &sizes, idx, y)?);
                    }
                    family.push(chain);
                }
                if pairs.len() == lower_total {
                    break;
                }
            }
        }
    }

    let family = AntichainFamily {
        partition: partition.clone(),
        antichains: family,
    };
    family.certify()?;
    Ok(family)
}

/// Builds the full family of `mu(P)` disjoint maximum antichains for any
/// partition by covering each spread and stitching the families together.
pub fn general_cover(partition: &Partition) -> Result<AntichainFamily, CoverError> {
    let decomposition = spread_decompose(partition);
    if decomposition.spreads.len() == 1 {
        return spread_cover(partition);
    }
    // spreads come highest first; split off the lowest and let the rest
    // stand alone, shifted down to close the gap
    let lowest = decomposition.spreads.last().unwrap();
    let r1 = r_of(lowest);
    let upper_parts: Vec<usize> = partition
        .parts()
        .iter()
        .take(partition.parts().len() - lowest.parts().len())
        .map(|&q| q - 2 * r1)
        .collect();
    let upper_partition = Partition::new(upper_parts).map_err(|e| {
        CoverError::Certification(format!("shifted upper spreads are not a partition: {e}"))
    })?;

    let lower_family = spread_cover(lowest)?;
    let upper_family = general_cover(&upper_partition)?;

    // re-embed the upper family into D_P
    let mut lower: Vec<Vec<PosetVertex>> = lower_family.antichains.clone();
    let mut upper: Vec<Vec<PosetVertex>> = upper_family
        .antichains
        .iter()
        .map(|chain| {
            chain
                .iter()
                .map(|v| PosetVertex::new(v.u + r1, v.p + 2 * r1, v.k))
                .collect()
        })
        .collect();
    for chain in lower.iter_mut().chain(upper.iter_mut()) {
        chain.sort_by_key(|v| (v.p, v.u, v.k));
    }
    lower.sort();
    upper.sort();

    // stitch: a lower and an upper antichain may merge exactly when their
    // union stays an antichain
    let adj: Vec<Vec<usize>> = lower
        .iter()
        .map(|lo| {
            (0..upper.len())
                .filter(|&j| {
                    lo.iter().all(|&a| {
                        upper[j]
                            .iter()
                            .all(|&b| !leq_labels(a, b) && !leq_labels(b, a))
                    })
                })
                .collect()
        })
        .collect();
    let (size, match_of_right, _) = max_bipartite_matching(lower.len(), upper.len(), &adj);
    let need = lower.len().min(upper.len());
    if size != need {
        return Err(CoverError::Certification(format!(
            "stitch for {} matched {} of {} families",
            partition, size, need
        )));
    }

    let mut merged: Vec<Vec<PosetVertex>> = Vec::with_capacity(need);
    for (j, matched) in match_of_right.iter().enumerate() {
        if let Some(i) = matched {
            let mut chain = lower[*i].clone();
            chain.extend(upper[j].iter().copied());
            chain.sort_by_key(|v| (v.p, v.u, v.k));
            merged.push(chain);
        }
    }
    merged.sort();

    let family = AntichainFamily {
        partition: partition.clone(),
        antichains: merged,
    };
    family.certify()?;
    Ok(family)
}
