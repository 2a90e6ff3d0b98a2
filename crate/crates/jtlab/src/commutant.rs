//! The generic Jordan type `Q(P)` of nilpotent matrices commuting with a
//! nilpotent matrix of Jordan type `P`.
//!
//! Two independent routes:
//!
//! - [`q_estimate`] samples random elements of the nilpotent commutant over
//!   GF(2^61 - 1) and reads off their Jordan type from ranks of powers. A
//!   generic sample realizes `Q(P)`; degenerate samples land strictly below
//!   it in dominance order, so the trials are folded with a dominance
//!   maximum.
//! - [`q_closed_form`] evaluates the closed forms available when the poset
//!   width `r(P)` is at most 3, plus the one reduction known for width 4.
//!
//! The sampler draws coefficients along the standard stripe basis of the
//! centralizer. Stripes pairing equal part sizes carry the reductive part of
//! the centralizer; forcing their leading coefficients to zero on and above
//! the block diagonal makes that part strictly triangular, hence the sample
//! nilpotent, without giving up genericity anywhere else.

use thiserror::Error;

use crate::field::{mix64, PrimeFieldMatrix, SplitMix64};
use crate::partition::Partition;
use crate::partition::{mu, r_of, spread_decompose};
use crate::uchains::oblak_index;

#[derive(Debug, Error)]
pub enum CommutantError {
    #[error("matrix of size {0} is not nilpotent")]
    NotNilpotent(usize),
    #[error("trial Jordan types {0} and {1} are dominance-incomparable")]
    IncomparableTrials(Partition, Partition),
}

/// The nilpotent Jordan matrix of type `p`: blocks in decreasing size, ones
/// on the superdiagonal inside each block.
pub fn jordan_matrix(p: &Partition) -> PrimeFieldMatrix {
    let n = p.n();
    let mut m = PrimeFieldMatrix::zero(n, n);
    let mut offset = 0;
    for &q in p.parts() {
        for i in 0..q - 1 {
            m.set(offset + i, offset + i + 1, crate::field::Fp::ONE);
        }
        offset += q;
    }
    m
}

/// One random element of the nilpotent commutant of `jordan_matrix(p)`.
///
/// Block `(i, j)` of a commuting matrix is constant along diagonals, with
/// free diagonals exactly those ending on the block's right edge at rows
/// `q_i - t` for `t` in `max(0, q_i - q_j)..q_i`. The `t = 0` stripe of an
/// equal-size pair is the reductive coordinate and is forced to zero for
/// `j >= i`, leaving a strictly triangular reductive part.
pub fn sample_nilpotent_commutant(p: &Partition, rng: &mut SplitMix64) -> PrimeFieldMatrix {
    let parts = p.parts();
    let n = p.n();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &q in parts {
        offsets.push(acc);
        acc += q;
    }
    let mut a = PrimeFieldMatrix::zero(n, n);
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            let (qi, qj) = (parts[i], parts[j]);
            for t in qi.saturating_sub(qj)..qi {
                if t == 0 && qi == qj && j >= i {
                    continue;
                }
                let coeff = rng.next_fp();
                for m in 0..qj.min(qi - t) {
                    let row = offsets[i] + (qi - t - m) - 1;
                    let col = offsets[j] + (qj - m) - 1;
                    a.set(row, col, coeff);
                }
            }
        }
    }
    a
}

/// Jordan type from ranks of powers: the rank drops `rank(A^{k-1}) -
/// rank(A^k)` count the blocks of size at least `k`, so they spell out the
/// conjugate of the type.
pub fn jordan_type(a: &PrimeFieldMatrix) -> Result<Partition, CommutantError> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "Jordan type needs a square matrix");
    let mut ranks = vec![n];
    let mut power = a.clone();
    loop {
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n {
            return Err(CommutantError::NotNilpotent(n));
        }
        power = power.mul(a);
    }
    let diffs: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let conj = Partition::new(diffs).expect("rank drops of a nilpotent matrix form a partition");
    Ok(conj.conjugate())
}

/// Monte Carlo estimate of `Q(P)`: Jordan types of `trials` independent
/// samples, folded by dominance. With overwhelming probability every sample
/// already realizes the generic type, so this is exact in practice; a
/// degenerate sample is dominated and absorbed. Incomparable trial types
/// cannot both be degenerations of one generic type and are reported as an
/// error.
pub fn q_estimate(p: &Partition, trials: usize, seed: u64) -> Result<Partition, CommutantError> {
    assert!(trials >= 1, "at least one trial");
    let mut stream = SplitMix64::new(mix64(seed));
    let mut best: Option<Partition> = None;
    for _ in 0..trials {
        let mut rng = SplitMix64::new(stream.next_u64());
        let sample = sample_nilpotent_commutant(p, &mut rng);
        let jt = jordan_type(&sample)?;
        best = Some(match best {
            None => jt,
            Some(b) => {
                if b.dominated_by(&jt).expect("trial types share |P|") {
                    jt
                } else if jt.dominated_by(&b).expect("trial types share |P|") {
                    b
                } else {
                    return Err(CommutantError::IncomparableTrials(b, jt));
                }
            }
        });
    }
    Ok(best.expect("trials >= 1"))
}

/// Closed forms for `Q(P)`, where they are known.
///
/// - width 1: the commutant acts on a chain, `Q = (n)`;
/// - width 2: `Q = (i, n - i)` with `i` the largest simple U-chain;
/// - width 3: `Q = (i, n - i - mu, mu)`;
/// - width 4: if the lowest spread `P''` is almost rectangular and stays the
///   bottleneck after the rest `P'` shifts down (`|P''| <= mu(P' - 2)`), then
///   `Q(P)` is `Q(P')` with `|P''|` appended.
///
/// Anything else returns `None`.
pub fn q_closed_form(p: &Partition) -> Option<Partition> {
    let n = p.n();
    match r_of(p) {
        1 => Some(Partition::new(vec![n]).expect("n >= 1")),
        2 => {
            let i = oblak_index(p);
            Some(Partition::new(vec![i, n - i]).expect("both rows are nonempty"))
        }
        3 => {
            let i = oblak_index(p);
            let m = mu(p);
            Some(Partition::new(vec![i, n - i - m, m]).expect("all three rows are nonempty"))
        }
        4 => {
            let dec = spread_decompose(p);
            let lowest = dec.spreads.last().unwrap();
            if !lowest.is_almost_rectangular() {
                return None;
            }
            let rest_parts: Vec<usize> = p
                .parts()
                .iter()
                .take(p.parts().len() - lowest.parts().len())
                .copied()
                .collect();
            let rest = Partition::new(rest_parts).expect("upper spreads are nonempty");
            let shifted = rest
                .shift_down(2)
                .expect("the gap above the lowest spread absorbs the shift");
            if mu(&shifted) < lowest.n() {
                return None;
            }
            let upper_q = q_closed_form(&rest)?;
            let mut parts = upper_q.parts().to_vec();
            parts.push(lowest.n());
            Some(Partition::new(parts).expect("appending the bottleneck row"))
        }
        _ => None,
    }
}
