//! Integer partitions and their basic invariants.
//!
//! Everything downstream keys off a handful of combinatorial quantities
//! defined here:
//!
//! - the *spread decomposition*: the coarsest split of the part sizes into
//!   blocks of consecutive integers separated by gaps of at least 2;
//! - `r(P)`: the sum over spreads of ceil(s/2), where `s` counts distinct
//!   sizes in the spread — the common number of parts of every profile the
//!   crate computes;
//! - `mu(P)`: a closed-form minimum that reappears as the smallest part of
//!   each of those profiles.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("empty partition")]
    Empty,
    #[error("invalid part `{0}`: expected a positive integer")]
    InvalidPart(String),
    #[error("invalid multiplicity `{0}`: expected part^count with count >= 1")]
    InvalidMultiplicity(String),
    #[error("cannot subtract {amount} from every part: smallest part is {smallest}")]
    ShiftTooLarge { amount: usize, smallest: usize },
    #[error("dominance compares partitions of the same integer, got {0} and {1}")]
    SizeMismatch(usize, usize),
}

/// A partition of a positive integer, stored as weakly decreasing parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts given in any order.
    ///
    /// # Edge cases
    /// Rejects an empty list and any zero part.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        if parts.contains(&0) {
            return Err(PartitionError::InvalidPart("0".to_string()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Parses either a plain list of parts (`"6 6 4 3"`, `"6,6,4,3"`) or
    /// exponent form (`"6^2,4,3"`). The two spellings of the same multiset
    /// parse to equal partitions.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let mut parts = Vec::new();
        for token in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            match token.split_once('^') {
                None => {
                    let p: usize = token
                        .parse()
                        .map_err(|_| PartitionError::InvalidPart(token.to_string()))?;
                    if p == 0 {
                        return Err(PartitionError::InvalidPart(token.to_string()));
                    }
                    parts.push(p);
                }
                Some((base, exponent)) => {
                    let p: usize = base
                        .parse()
                        .map_err(|_| PartitionError::InvalidPart(token.to_string()))?;
                    if p == 0 {
                        return Err(PartitionError::InvalidPart(token.to_string()));
                    }
                    let e: usize = exponent
                        .parse()
                        .map_err(|_| PartitionError::InvalidMultiplicity(token.to_string()))?;
                    if e == 0 {
                        return Err(PartitionError::InvalidMultiplicity(token.to_string()));
                    }
                    parts.extend(std::iter::repeat_n(p, e));
                }
            }
        }
        Partition::new(parts)
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    pub fn smallest(&self) -> usize {
        *self.parts.last().expect("partitions are nonempty")
    }

    /// Multiplicity of `p` as a part; zero off the support.
    pub fn mult(&self, p: usize) -> usize {
        self.parts.iter().filter(|&&q| q == p).count()
    }

    /// Distinct part sizes, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.parts.clone();
        sizes.dedup();
        sizes.reverse();
        sizes
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn exponent_form(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Transpose of the diagram: column counts, weakly decreasing.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.largest());
        for col in 1..=self.largest() {
            parts.push(self.parts.iter().take_while(|&&p| p >= col).count());
        }
        Partition { parts }
    }

    /// Dominance order: every prefix sum of `self` is at most the matching
    /// prefix sum of `other`. Only partitions of the same integer compare.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool, PartitionError> {
        if self.n() != other.n() {
            return Err(PartitionError::SizeMismatch(self.n(), other.n()));
        }
        let mut a = 0usize;
        let mut b = 0usize;
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subtracts `amount` from every part; errors if any part would reach 0.
    pub fn shift_down(&self, amount: usize) -> Result<Partition, PartitionError> {
        if amount >= self.smallest() {
            return Err(PartitionError::ShiftTooLarge {
                amount,
                smallest: self.smallest(),
            });
        }
        Ok(Partition {
            parts: self.parts.iter().map(|&p| p - amount).collect(),
        })
    }

    /// Whether the distinct part sizes are consecutive integers.
    pub fn is_spread(&self) -> bool {
        self.sizes().windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Whether parts take at most two (necessarily consecutive) values.
    pub fn is_almost_rectangular(&self) -> bool {
        self.largest() - self.smallest() <= 1
    }
}

impl fmt::Display for Partition {
    /// Exponent form, e.g. `(6^2, 4, 3, 2^3, 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, m)) in self.exponent_form().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The spread decomposition of a partition: maximal blocks of consecutive
/// part sizes, separated by gaps of at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadDecomposition {
    /// The spreads, highest parts first.
    pub spreads: Vec<Partition>,
    /// `offsets[i]` sums `r` over the spreads strictly below `spreads[i]`.
    pub offsets: Vec<usize>,
}

/// Splits `p` at every gap of 2 or more between adjacent distinct sizes.
pub fn spread_decompose(p: &Partition) -> SpreadDecomposition {
    let mut spreads: Vec<Partition> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for &part in p.parts() {
        if let Some(&prev) = current.last() {
            if prev - part >= 2 {
                spreads.push(Partition {
                    parts: std::mem::take(&mut current),
                });
            }
        }
        current.push(part);
    }
    spreads.push(Partition { parts: current });

    let mut offsets = vec![0usize; spreads.len()];
    for i in (0..spreads.len().saturating_sub(1)).rev() {
        offsets[i] = offsets[i + 1] + spread_r(&spreads[i + 1]);
    }
    SpreadDecomposition { spreads, offsets }
}

fn spread_r(spread: &Partition) -> usize {
    debug_assert!(spread.is_spread());
    spread.sizes().len().div_ceil(2)
}

/// `r(P)`: the number of parts of every chain/antichain profile of `D_P`.
pub fn r_of(p: &Partition) -> usize {
    spread_decompose(p).spreads.iter().map(spread_r).sum()
}

/// `mu(P)`: the common smallest part of `lambda`, `lambda_U` and `Q`, and the
/// number of disjoint maximum antichains `D_P` carries.
///
/// For a single spread with smallest part `p` and multiplicities `n_1..n_s`
/// (indexed by size, `n_{s+1} = 0`), this is
/// `min { p*n_{2i-1} + (p+1)*n_{2j} : 1 <= i <= j <= r }`; in general each
/// spread is first shifted down by twice the total `r` of the spreads below
/// it, and the minimum is taken over spreads.
pub fn mu(p: &Partition) -> usize {
    mu_components(p)
        .into_iter()
        .min()
        .expect("decomposition is nonempty")
}

/// The per-spread values `mu` minimizes over, in decomposition order
/// (largest sizes first): each spread's own `mu` after shifting it down by
/// twice the total `r` of the spreads below it.
pub fn mu_components(p: &Partition) -> Vec<usize> {
    let dec = spread_decompose(p);
    dec.spreads
        .iter()
        .zip(&dec.offsets)
        .map(|(spread, &off)| {
            let shifted = if off == 0 {
                spread.clone()
            } else {
                spread
                    .shift_down(2 * off)
                    .expect("spread gaps keep shifted parts positive")
            };
            mu_spread(&shifted)
        })
        .collect()
}

fn mu_spread(p: &Partition) -> usize {
    debug_assert!(p.is_spread());
    let base = p.smallest();
    let s = p.sizes().len();
    let r = s.div_ceil(2);
    // multiplicity by 1-based size index; zero beyond the top size
    let m = |i: usize| if i <= s { p.mult(base + i - 1) } else { 0 };
    let mut best = usize::MAX;
    for i in 1..=r {
        for j in i..=r {
            best = best.min(base * m(2 * i - 1) + (base + 1) * m(2 * j));
        }
    }
    best
}

/// All partitions of `n`, parts listed in weakly decreasing order, in
/// lexicographically decreasing order of part lists. Empty for `n == 0`.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}
