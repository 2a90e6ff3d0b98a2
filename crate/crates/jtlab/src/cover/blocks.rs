//! Column-matching engine for joining two stacked antichain families.
//!
//! Everything here works in *window coordinates*: a lower level with `p`
//! columns and an upper level with `p + g` columns sitting two levels higher,
//! normalized so that a lower member ending in column `x` joins an upper
//! member starting in column `y` into an antichain exactly when
//! `x <= y <= x + g`.
//!
//! Column multiplicities say how many members still end (lower) or start
//! (upper) in each column. Two shapes arise and stay closed under reduction:
//!
//! - a *lower step*: `eta` per column with `eta + 1` on the run
//!   `d+1..=d+delta`, upper flat `theta`;
//! - an *upper notch*: `theta` per column with `theta - 1` on the run
//!   `d+1..=d+eps`, lower flat `eta`.
//!
//! [`match_theta_le_eta`] consumes the whole upper side in one sweep (both
//! sides expanded column-major and zipped rank by rank); [`match_eta_le_theta`]
//! does the mirror image and consumes the whole lower side. [`reduce_block`]
//! dispatches on the profile and consumes whichever side runs out first,
//! peeling top rows to bridge the shapes when neither sweep applies directly.
//!
//! Every emitted pair is checked against the window condition and every
//! column against its capacity, and totals against the closed forms, so a bad
//! parameterization fails loudly instead of producing an invalid family.

use crate::poset::PosetVertex;

use super::CoverError;

/// Column-multiplicity profile of a two-level block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoLevelProfile {
    /// Lower level `eta` per column, `eta + 1` on columns `d+1..=d+delta`;
    /// upper level flat `theta`.
    LowerStep {
        eta: usize,
        theta: usize,
        delta: usize,
        d: usize,
    },
    /// Upper level `theta` per column, `theta - 1` on columns `d+1..=d+eps`;
    /// lower level flat `eta`.
    UpperNotch {
        eta: usize,
        theta: usize,
        eps: usize,
        d: usize,
    },
}

impl TwoLevelProfile {
    pub(crate) fn validate(&self, p: usize, g: usize) -> Result<(), CoverError> {
        let bad = |msg: String| Err(CoverError::InvalidParams(msg));
        if p == 0 {
            return bad("lower level needs at least one column".to_string());
        }
        match *self {
            TwoLevelProfile::LowerStep { delta, d, .. } => {
                if delta >= p || d > p - delta {
                    return bad(format!("step run {delta} at offset {d} does not fit {p} columns"));
                }
            }
            TwoLevelProfile::UpperNotch { theta, eps, d, .. } => {
                if eps >= p + g || d > p + g - eps {
                    return bad(format!(
                        "notch run {eps} at offset {d} does not fit {} columns",
                        p + g
                    ));
                }
                if theta == 0 && eps > 0 {
                    return bad("a notch needs at least one upper row".to_string());
                }
            }
        }
        Ok(())
    }

    pub(crate) fn lower_caps(&self, p: usize) -> Vec<usize> {
        match *self {
            TwoLevelProfile::LowerStep { eta, delta, d, .. } => (1..=p)
                .map(|x| eta + usize::from(x > d && x <= d + delta))
                .collect(),
            TwoLevelProfile::UpperNotch { eta, .. } => vec![eta; p],
        }
    }

    pub(crate) fn upper_caps(&self, p: usize, g: usize) -> Vec<usize> {
        match *self {
            TwoLevelProfile::LowerStep { theta, .. } => vec![theta; p + g],
            TwoLevelProfile::UpperNotch { theta, eps, d, .. } => (1..=p + g)
                .map(|y| theta - usize::from(y > d && y <= d + eps))
                .collect(),
        }
    }
}

fn in_run(x: usize, lo: usize, hi: usize) -> bool {
    lo <= x && x <= hi
}

/// Parses per-column counts as a flat base plus one contiguous `+1` run.
/// Returns `(base, run length, run offset)`; flat counts give runs of zero.
pub(crate) fn parse_step(counts: &[usize]) -> Option<(usize, usize, usize)> {
    let &min = counts.iter().min()?;
    let &max = counts.iter().max()?;
    if min == max {
        return Some((min, 0, 0));
    }
    if max != min + 1 {
        return None;
    }
    let first = counts.iter().position(|&c| c == max).unwrap();
    let last = counts.iter().rposition(|&c| c == max).unwrap();
    if counts[first..=last].iter().all(|&c| c == max) {
        Some((min, last - first + 1, first))
    } else {
        None
    }
}

/// Parses per-column counts as a flat base with one contiguous `-1` run.
/// Returns `(base, run length, run offset)`; flat counts give runs of zero.
pub(crate) fn parse_notch(counts: &[usize]) -> Option<(usize, usize, usize)> {
    let &min = counts.iter().min()?;
    let &max = counts.iter().max()?;
    if min == max {
        return Some((max, 0, 0));
    }
    if max != min + 1 {
        return None;
    }
    let first = counts.iter().position(|&c| c == min).unwrap();
    let last = counts.iter().rposition(|&c| c == min).unwrap();
    if counts[first..=last].iter().all(|&c| c == min) {
        Some((max, last - first + 1, first))
    } else {
        None
    }
}

fn expand_columns(used: &[usize]) -> Vec<usize> {
    used.iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
        .collect()
}

fn zip_columns(lower_used: &[usize], upper_used: &[usize]) -> Vec<(usize, usize)> {
    let lo = expand_columns(lower_used);
    let hi = expand_columns(upper_used);
    debug_assert_eq!(lo.len(), hi.len());
    lo.into_iter().zip(hi).collect()
}

/// Pairs off the entire flat-`theta` upper side against a lower step
/// `(eta, delta, d)`. Requires `(p+g)*theta <= p*eta + delta`. Emits
/// `(p+g)*theta` column pairs.
pub(crate) fn column_pairs_theta_le_eta(
    p: usize,
    g: usize,
    eta: usize,
    theta: usize,
    delta: usize,
    d: usize,
) -> Result<Vec<(usize, usize)>, CoverError> {
    TwoLevelProfile::LowerStep {
        eta,
        theta,
        delta,
        d,
    }
    .validate(p, g)?;
    if theta == 0 {
        return Ok(Vec::new());
    }
    if (p + g) * theta > p * eta + delta {
        return Err(CoverError::Precondition(format!(
            "(p+g)*theta = {} exceeds p*eta + delta = {}",
            (p + g) * theta,
            p * eta + delta
        )));
    }
    let a = g * theta / p;
    let b = g * theta % p;
    let lower_used: Vec<usize> = (1..=p)
        .map(|x| {
            let extra = if b <= delta {
                in_run(x, d + delta - b + 1, d + delta)
            } else if b <= delta + d {
                in_run(x, 1, b - delta) || in_run(x, d + 1, d + delta)
            } else {
                in_run(x, 1, d + delta) || in_run(x, p - b + d + delta + 1, p)
            };
            theta + a + usize::from(extra)
        })
        .collect();
    debug_assert_eq!(lower_used.iter().sum::<usize>(), (p + g) * theta);
    let upper_used = vec![theta; p + g];
    let pairs = zip_columns(&lower_used, &upper_used);
    check_window(p, g, &pairs)?;
    Ok(pairs)
}

/// Pairs off the entire flat-`eta` lower side against an upper notch
/// `(theta, eps, d)`. Requires `p*eta <= (p+g)*theta - eps`. Emits `p*eta`
/// column pairs.
pub(crate) fn column_pairs_eta_le_theta(
    p: usize,
    g: usize,
    eta: usize,
    theta: usize,
    eps: usize,
    d: usize,
) -> Result<Vec<(usize, usize)>, CoverError> {
    TwoLevelProfile::UpperNotch {
        eta,
        theta,
        eps,
        d,
    }
    .validate(p, g)?;
    if eta == 0 {
        return Ok(Vec::new());
    }
    if p * eta + eps > (p + g) * theta {
        return Err(CoverError::Precondition(format!(
            "p*eta = {} exceeds (p+g)*theta - eps = {}",
            p * eta,
            (p + g) * theta - eps
        )));
    }
    // p*eta = (p+g)*a - b with 0 <= b < p+g
    let a = (p * eta).div_ceil(p + g);
    let b = (p + g) * a - p * eta;
    let upper_used: Vec<usize> = (1..=p + g)
        .map(|y| {
            let reduced = if b < eps {
                in_run(y, d + eps - b + 1, d + eps)
            } else if b < d + eps {
                in_run(y, 1, b - eps) || in_run(y, d + 1, d + eps)
            } else {
                let b_mirror = p + g - b;
                !in_run(y, d + eps + 1, d + eps + b_mirror)
            };
            a - usize::from(reduced)
        })
        .collect();
    debug_assert_eq!(upper_used.iter().sum::<usize>(), p * eta);
    let lower_used = vec![eta; p];
    let pairs = zip_columns(&lower_used, &upper_used);
    check_window(p, g, &pairs)?;
    Ok(pairs)
}

/// One reduction step on a lower-step profile: consumes the whole upper side
/// if it fits under the lower counts, otherwise the whole lower side (the
/// step first, then the flat remainder through the notch sweep). Emits
/// `min((p+g)*theta, p*eta + delta)` pairs.
pub(crate) fn column_pairs_reduce_lower_step(
    p: usize,
    g: usize,
    eta: usize,
    theta: usize,
    delta: usize,
    d: usize,
) -> Result<Vec<(usize, usize)>, CoverError> {
    TwoLevelProfile::LowerStep {
        eta,
        theta,
        delta,
        d,
    }
    .validate(p, g)?;
    if (p + g) * theta <= p * eta + delta {
        return column_pairs_theta_le_eta(p, g, eta, theta, delta, d);
    }
    // the upper side is larger: clear the step with straight pairs on the
    // bump columns (top upper rows), then sweep the flat remainder
    let mut pairs: Vec<(usize, usize)> = (d + 1..=d + delta).map(|c| (c, c)).collect();
    pairs.extend(column_pairs_eta_le_theta(p, g, eta, theta, delta, d)?);
    debug_assert_eq!(pairs.len(), p * eta + delta);
    check_window(p, g, &pairs)?;
    Ok(pairs)
}

/// One reduction step on an upper-notch profile: consumes the whole lower
/// side if it fits under the upper counts, otherwise the whole upper side.
/// Emits `min(p*eta, (p+g)*theta - eps)` pairs.
pub(crate) fn column_pairs_reduce_upper_notch(
    p: usize,
    g: usize,
    eta: usize,
    theta: usize,
    eps: usize,
    d: usize,
) -> Result<Vec<(usize, usize)>, CoverError> {
    TwoLevelProfile::UpperNotch {
        eta,
        theta,
        eps,
        d,
    }
    .validate(p, g)?;
    let upper_total = (p + g) * theta - eps;
    if upper_total == 0 {
        return Ok(Vec::new());
    }
    if p * eta <= upper_total {
        return column_pairs_eta_le_theta(p, g, eta, theta, eps, d);
    }
    // the lower side is larger: consume all of the upper, starting with its
    // top row, whose pairing depends on how the notch compares to the gap
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if eps >= g {
        // straight pairs left of the notch, shift-by-g pairs right of it;
        // what's left is a lower step (eta-1, eps-g, d) under a flat theta-1
        for y in 1..=d {
            pairs.push((y, y));
        }
        for y in d + eps + 1..=p + g {
            pairs.push((y - g, y));
        }
        pairs.extend(column_pairs_reduce_lower_step(
            p,
            g,
            eta - 1,
            theta - 1,
            eps - g,
            d,
        )?);
    } else {
        // eps < g: the top upper row wraps around the lower columns
        let mut top_row: Vec<(usize, usize)> = Vec::new();
        if d > g - eps {
            for c in 1..=g - eps {
                top_row.push(((c - 1) % p + 1, c));
            }
            for c in g - eps + 1..=d {
                top_row.push((c + eps - g, c));
            }
            for c in d + eps + 1..=p + g {
                top_row.push((c - g, c));
            }
        } else {
            for c in 1..=d {
                top_row.push(((c - 1) % p + 1, c));
            }
            let wrap_end = if d == 0 { 0 } else { (d - 1) % p + 1 };
            for (off, c) in (d + eps + 1..=d + eps + p - wrap_end).enumerate() {
                top_row.push((wrap_end + off + 1, c));
            }
            for c in d + eps + p - wrap_end + 1..=p + g {
                let j = p + g + 1 - c;
                top_row.push((p - (j - 1) % p, c));
            }
        }
        let mut consumed = vec![0usize; p];
        for &(x, _) in &top_row {
            consumed[x - 1] += 1;
        }
        pairs.extend(top_row);
        // parse what is left of the lower level and keep reducing under the
        // remaining flat theta-1 upper rows
        let mut residual = vec![0usize; p];
        for x in 0..p {
            residual[x] = eta.checked_sub(consumed[x]).ok_or_else(|| {
                CoverError::Certification(format!(
                    "top-row wrap overdraws lower column {}",
                    x + 1
                ))
            })?;
        }
        let (eta2, delta2, d2) = parse_step(&residual).ok_or_else(|| {
            CoverError::Certification(
                "lower residual after the top-row wrap is not a step".to_string(),
            )
        })?;
        pairs.extend(column_pairs_reduce_lower_step(p, g, eta2, theta - 1, delta2, d2)?);
    }
    if pairs.len() != upper_total {
        return Err(CoverError::Certification(format!(
            "upper side not fully consumed: {} of {} pairs",
            pairs.len(),
            upper_total
        )));
    }
    check_window(p, g, &pairs)?;
    Ok(pairs)
}

fn check_window(p: usize, g: usize, pairs: &[(usize, usize)]) -> Result<(), CoverError> {
    for &(x, y) in pairs {
        if !(1 <= x && x <= p && 1 <= y && y <= p + g && x <= y && y <= x + g) {
            return Err(CoverError::Certification(format!(
                "column pair ({x}, {y}) violates the window x <= y <= x + {g} with p = {p}"
            )));
        }
    }
    Ok(())
}

/// A matched block with materialized vertices.
#[derive(Clone, Debug)]
pub struct BlockMatching {
    /// Matched (lower, upper) vertices in emission order. Lower vertices sit
    /// on level `p`, upper vertices on level `p + g + 2` (window column `y`
    /// is actual column `y + 1`); rows are consumed top-down.
    pub pairs: Vec<(PosetVertex, PosetVertex)>,
    /// Rows left per lower column `1..=p`.
    pub residual_lower: Vec<usize>,
    /// Rows left per upper window column `1..=p+g`.
    pub residual_upper: Vec<usize>,
    /// The leftovers as a parsed profile; the consumed side shows as zeros.
    pub residual: TwoLevelProfile,
}

fn materialize(
    p: usize,
    g: usize,
    profile: TwoLevelProfile,
    column_pairs: Vec<(usize, usize)>,
) -> Result<BlockMatching, CoverError> {
    let mut lower_left = profile.lower_caps(p);
    let mut upper_left = profile.upper_caps(p, g);
    let mut pairs = Vec::with_capacity(column_pairs.len());
    for (x, y) in column_pairs {
        let kl = lower_left[x - 1];
        let ku = upper_left[y - 1];
        if kl == 0 || ku == 0 {
            return Err(CoverError::Certification(format!(
                "column pair ({x}, {y}) exceeds the column capacities"
            )));
        }
        lower_left[x - 1] -= 1;
        upper_left[y - 1] -= 1;
        let lower_v = PosetVertex::new(x, p, kl);
        let upper_v = PosetVertex::new(y + 1, p + g + 2, ku);
        if crate::poset::leq_labels(lower_v, upper_v) || crate::poset::leq_labels(upper_v, lower_v)
        {
            return Err(CoverError::Certification(format!(
                "matched vertices {lower_v} and {upper_v} are comparable"
            )));
        }
        pairs.push((lower_v, upper_v));
    }
    let residual = if lower_left.iter().all(|&c| c == 0) {
        let (theta, eps, d) = parse_notch(&upper_left).ok_or_else(|| {
            CoverError::Certification("upper residual is not a notch".to_string())
        })?;
        TwoLevelProfile::UpperNotch {
            eta: 0,
            theta,
            eps,
            d,
        }
    } else {
        if !upper_left.iter().all(|&c| c == 0) {
            return Err(CoverError::Certification(
                "reduction left both sides unconsumed".to_string(),
            ));
        }
        let (eta, delta, d) = parse_step(&lower_left).ok_or_else(|| {
            CoverError::Certification("lower residual is not a step".to_string())
        })?;
        TwoLevelProfile::LowerStep {
            eta,
            theta: 0,
            delta,
            d,
        }
    };
    Ok(BlockMatching {
        pairs,
        residual_lower: lower_left,
        residual_upper: upper_left,
        residual,
    })
}

/// Sweeps the whole flat upper side into a lower step; see
/// [`column_pairs_theta_le_eta`] for the counting.
pub fn match_theta_le_eta(
    p: usize,
    g: usize,
    eta: usize,
    theta: usize,
    delta: usize,
    d: usize,
) -> Result<BlockMatching, CoverError> {
    let pairs = column_pairs_theta_le_eta(p, g, eta, theta, delta, d)?;
    materialize(
        p,
        g,
        TwoLevelProfile::LowerStep {
            eta,
            theta,
            delta,
            d,
        },
        pairs,
    )
}

/// Sweeps the whole flat lower side into an upper notch; see
/// [`column_pairs_eta_le_theta`] for the counting.
pub fn match_eta_le_theta(
    p: usize,
    g: usize,
    eta: usize,
    theta: usize,
    eps: usize,
    d: usize,
) -> Result<BlockMatching, CoverError> {
    let pairs = column_pairs_eta_le_theta(p, g, eta, theta, eps, d)?;
    materialize(
        p,
        g,
        TwoLevelProfile::UpperNotch {
            eta,
            theta,
            eps,
            d,
        },
        pairs,
    )
}

/// One reduction step: consumes whichever side of the block runs out first
/// and returns the matched pairs plus the parsed residual profile.
pub fn reduce_block(
    p: usize,
    g: usize,
    profile: TwoLevelProfile,
) -> Result<BlockMatching, CoverError> {
    let pairs = match profile {
        TwoLevelProfile::LowerStep {
            eta,
            theta,
            delta,
            d,
        } => column_pairs_reduce_lower_step(p, g, eta, theta, delta, d)?,
        TwoLevelProfile::UpperNotch {
            eta,
            theta,
            eps,
            d,
        } => column_pairs_reduce_upper_notch(p, g, eta, theta, eps, d)?,
    };
    materialize(p, g, profile, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn lower_step(eta: usize, theta: usize, delta: usize, d: usize) -> TwoLevelProfile {
        TwoLevelProfile::LowerStep {
            eta,
            theta,
            delta,
            d,
        }
    }

    fn upper_notch(eta: usize, theta: usize, eps: usize, d: usize) -> TwoLevelProfile {
        TwoLevelProfile::UpperNotch {
            eta,
            theta,
            eps,
            d,
        }
    }

    /// Per-column consumption derived from a matching's pairs.
    fn used(bm: &BlockMatching, p: usize, g: usize) -> (Vec<usize>, Vec<usize>) {
        let mut lo = vec![0usize; p];
        let mut hi = vec![0usize; p + g];
        for &(lv, uv) in &bm.pairs {
            lo[lv.u - 1] += 1;
            hi[uv.u - 2] += 1; // window column = actual column - 1
        }
        (lo, hi)
    }

    #[test]
    fn upper_sweep_tables_for_growing_gaps() {
        // p = 6, eta = 4, delta = 2, d = 2, theta = 1; caps [4,4,5,5,4,4]
        let cases = [
            // (g, expected lower consumption, expected lower residual)
            (7, vec![2, 2, 2, 3, 2, 2], vec![2, 2, 3, 2, 2, 2]),
            (9, vec![3, 2, 3, 3, 2, 2], vec![1, 2, 2, 2, 2, 2]),
            (11, vec![3, 3, 3, 3, 2, 3], vec![1, 1, 2, 2, 2, 1]),
        ];
        for (g, want_used, want_left) in cases {
            let bm = match_theta_le_eta(6, g, 4, 1, 2, 2).unwrap();
            assert_eq!(bm.pairs.len(), 6 + g, "pair count for g = {g}");
            let (lo, hi) = used(&bm, 6, g);
            assert_eq!(lo, want_used, "lower consumption for g = {g}");
            assert_eq!(hi, vec![1; 6 + g], "upper consumption for g = {g}");
            assert_eq!(bm.residual_lower, want_left, "lower residual for g = {g}");
            assert!(bm.residual_upper.iter().all(|&c| c == 0));
        }
        // parsed residual shapes: (eta', delta', d') = (2,1,2), (1,5,1), (1,3,2)
        let shapes: Vec<TwoLevelProfile> = [7, 9, 11]
            .iter()
            .map(|&g| match_theta_le_eta(6, g, 4, 1, 2, 2).unwrap().residual)
            .collect();
        assert_eq!(shapes[0], lower_step(2, 0, 1, 2));
        assert_eq!(shapes[1], lower_step(1, 0, 5, 1));
        assert_eq!(shapes[2], lower_step(1, 0, 3, 2));
    }

    #[test]
    fn lower_sweep_tables_for_shrinking_lower() {
        // p = 2, g = 6, d = 2, eps = 3, theta = 2; upper caps [2,2,1,1,1,2,2,2]
        let cases = [
            // (eta, expected upper consumption, expected upper residual)
            (
                3,
                vec![1, 1, 1, 0, 0, 1, 1, 1],
                vec![1, 1, 0, 1, 1, 1, 1, 1],
            ),
            (
                2,
                vec![0, 1, 0, 0, 0, 1, 1, 1],
                vec![2, 1, 1, 1, 1, 1, 1, 1],
            ),
            (
                1,
                vec![0, 0, 0, 0, 0, 1, 1, 0],
                vec![2, 2, 1, 1, 1, 1, 1, 2],
            ),
        ];
        for (eta, want_used, want_left) in cases {
            let bm = match_eta_le_theta(2, 6, eta, 2, 3, 2).unwrap();
            assert_eq!(bm.pairs.len(), 2 * eta, "pair count for eta = {eta}");
            let (lo, hi) = used(&bm, 2, 6);
            assert_eq!(lo, vec![eta; 2], "lower consumption for eta = {eta}");
            assert_eq!(hi, want_used, "upper consumption for eta = {eta}");
            assert_eq!(bm.residual_upper, want_left, "upper residual for eta = {eta}");
            assert!(bm.residual_lower.iter().all(|&c| c == 0));
        }
        // parsed residual shapes: (theta', eps', d') = (1,1,2), (2,7,1), (2,5,2)
        let shapes: Vec<TwoLevelProfile> = [3, 2, 1]
            .iter()
            .map(|&eta| match_eta_le_theta(2, 6, eta, 2, 3, 2).unwrap().residual)
            .collect();
        assert_eq!(shapes[0], upper_notch(0, 1, 1, 2));
        assert_eq!(shapes[1], upper_notch(0, 2, 7, 1));
        assert_eq!(shapes[2], upper_notch(0, 2, 5, 2));
    }

    #[test]
    fn preconditions_are_enforced() {
        // upper too big for the lower step
        assert!(matches!(
            match_theta_le_eta(3, 1, 1, 2, 0, 0),
            Err(CoverError::Precondition(_))
        ));
        // lower too big for the notched upper
        assert!(matches!(
            match_eta_le_theta(3, 1, 3, 2, 1, 0),
            Err(CoverError::Precondition(_))
        ));
        // malformed runs
        assert!(matches!(
            match_theta_le_eta(3, 1, 1, 1, 3, 0),
            Err(CoverError::InvalidParams(_))
        ));
        assert!(matches!(
            match_eta_le_theta(3, 1, 1, 0, 2, 0),
            Err(CoverError::InvalidParams(_))
        ));
    }

    #[test]
    fn reduce_consumes_the_smaller_side() {
        // lower step, upper bigger: all 3 lower rows go, notch remains
        let bm = reduce_block(3, 1, lower_step(1, 2, 0, 0)).unwrap();
        assert_eq!(bm.pairs.len(), 3);
        assert_eq!(bm.residual, upper_notch(0, 2, 3, 0));
        assert_eq!(bm.residual_upper, vec![1, 1, 1, 2]);

        // upper notch, lower bigger: all upper rows go, step remains
        let bm = reduce_block(2, 1, upper_notch(4, 2, 1, 0)).unwrap();
        assert_eq!(bm.pairs.len(), (2 + 1) * 2 - 1); // (p+g)*theta - eps = 5
        assert!(matches!(bm.residual, TwoLevelProfile::LowerStep { theta: 0, .. }));
        let total_left: usize = bm.residual_lower.iter().sum();
        assert_eq!(total_left, 2 * 4 - 5);
    }

    #[test]
    fn reduce_handles_degenerate_inputs() {
        // nothing to do
        let bm = reduce_block(2, 3, lower_step(0, 0, 0, 0)).unwrap();
        assert!(bm.pairs.is_empty());
        assert_eq!(bm.residual, upper_notch(0, 0, 0, 0));

        // empty upper leaves the lower untouched
        let bm = reduce_block(2, 3, lower_step(2, 0, 1, 1)).unwrap();
        assert!(bm.pairs.is_empty());
        assert_eq!(bm.residual, lower_step(2, 0, 1, 1));

        // empty lower leaves the upper untouched
        let bm = reduce_block(2, 3, upper_notch(0, 2, 2, 1)).unwrap();
        assert!(bm.pairs.is_empty());
        assert_eq!(bm.residual, upper_notch(0, 2, 2, 1));

        // a zero-gap block pairs columns straight across
        let bm = reduce_block(3, 0, lower_step(2, 1, 0, 0)).unwrap();
        assert_eq!(bm.pairs.len(), 3);
        for (lv, uv) in &bm.pairs {
            assert_eq!(lv.u + 1, uv.u);
        }
    }

    /// Exhaustive micro-sweep: every parameterization in a small box must
    /// either be rejected for its bounds or produce a fully checked matching
    /// with the predicted pair count, disjoint vertices, and a window-valid
    /// residual. This exercises every case of every reduction table, including
    /// the wrap-around top-row pairings.
    #[test]
    fn reduction_sweep_is_total_and_checked() {
        let mut reductions = 0usize;
        for p in 1..=4usize {
            for g in 0..=5usize {
                for eta in 0..=4 {
                    for theta in 0..=4 {
                        for run in 0..p.max(p + g) {
                            for d in 0..=(p + g).saturating_sub(run) {
                                // lower step input
                                if run < p && d <= p - run {
                                    let profile = lower_step(eta, theta, run, d);
                                    let bm = reduce_block(p, g, profile).unwrap_or_else(|e| {
                                        panic!("p={p} g={g} eta={eta} theta={theta} delta={run} d={d}: {e}")
                                    });
                                    assert_eq!(
                                        bm.pairs.len(),
                                        ((p + g) * theta).min(p * eta + run),
                                        "p={p} g={g} eta={eta} theta={theta} delta={run} d={d}"
                                    );
                                    check_block(&bm, p, g);
                                    reductions += 1;
                                }
                                // upper notch input
                                if run < p + g && d <= p + g - run && !(theta == 0 && run > 0) {
                                    let profile = upper_notch(eta, theta, run, d);
                                    let bm = reduce_block(p, g, profile).unwrap_or_else(|e| {
                                        panic!("p={p} g={g} eta={eta} theta={theta} eps={run} d={d}: {e}")
                                    });
                                    assert_eq!(
                                        bm.pairs.len(),
                                        (p * eta).min((p + g) * theta - run),
                                        "p={p} g={g} eta={eta} theta={theta} eps={run} d={d}"
                                    );
                                    check_block(&bm, p, g);
                                    reductions += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(reductions > 5000, "sweep covered {reductions} reductions");
    }

    fn check_block(bm: &BlockMatching, p: usize, g: usize) {
        let mut seen: HashSet<PosetVertex> = HashSet::new();
        for &(lv, uv) in &bm.pairs {
            assert_eq!(lv.p, p);
            assert_eq!(uv.p, p + g + 2);
            assert!(lv.u >= 1 && lv.u <= p && lv.k >= 1);
            assert!(uv.u >= 2 && uv.u <= p + g + 1 && uv.k >= 1);
            assert!(seen.insert(lv), "duplicate lower vertex {lv}");
            assert!(seen.insert(uv), "duplicate upper vertex {uv}");
            assert!(
                !crate::poset::leq_labels(lv, uv) && !crate::poset::leq_labels(uv, lv),
                "comparable pair {lv}, {uv}"
            );
        }
        // the parsed residual matches the leftover counts
        match bm.residual {
            TwoLevelProfile::LowerStep {
                eta,
                theta,
                delta,
                d,
            } => {
                assert_eq!(theta, 0);
                let want: Vec<usize> = (1..=p)
                    .map(|x| eta + usize::from(x > d && x <= d + delta))
                    .collect();
                assert_eq!(bm.residual_lower, want);
                assert!(bm.residual_upper.iter().all(|&c| c == 0));
            }
            TwoLevelProfile::UpperNotch {
                eta,
                theta,
                eps,
                d,
            } => {
                assert_eq!(eta, 0);
                let want: Vec<usize> = (1..=p + g)
                    .map(|y| theta - usize::from(y > d && y <= d + eps))
                    .collect();
                assert_eq!(bm.residual_upper, want);
                assert!(bm.residual_lower.iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn parse_helpers() {
        assert_eq!(parse_step(&[2, 2, 2]), Some((2, 0, 0)));
        assert_eq!(parse_step(&[2, 3, 3, 2]), Some((2, 2, 1)));
        assert_eq!(parse_step(&[3, 2, 3]), None);
        assert_eq!(parse_step(&[4, 2, 2]), None);
        assert_eq!(parse_notch(&[2, 1, 1, 2]), Some((2, 2, 1)));
        assert_eq!(parse_notch(&[1, 2, 1]), None);
        assert_eq!(parse_notch(&[0, 0]), Some((0, 0, 0)));
    }
}
