//! Arithmetic in the prime field of order 2^61 - 1, a deterministic
//! generator, and the dense matrices the commutant sampler works with.
//!
//! The Mersenne modulus keeps reduction branch-free: a 122-bit product folds
//! into the field with one shift and one add. Inverses go through Fermat
//! (the modulus is prime), which is plenty for the handful of pivots the
//! rank computation needs.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

pub const MODULUS: u64 = (1 << 61) - 1;

/// Name of the generator, for report metadata.
pub const RNG_NAME: &str = "splitmix64";

/// An element of GF(2^61 - 1), kept in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    /// Folds an arbitrary word into the field.
    pub fn new(value: u64) -> Self {
        let v = (value & MODULUS) + (value >> 61);
        Fp(if v >= MODULUS { v - MODULUS } else { v })
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// On zero, which has none.
    pub fn inv(self) -> Self {
        assert!(!self.is_zero(), "zero has no inverse");
        self.pow(MODULUS - 2)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        Fp::new(self.0 + rhs.0)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp::new(self.0 + MODULUS - rhs.0)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::ZERO - self
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let wide = u128::from(self.0) * u128::from(rhs.0);
        Fp::new((wide & u128::from(MODULUS)) as u64 + (wide >> 61) as u64)
    }
}

/// The 64-bit finalizer of the generator; also used on its own to derive
/// independent seeds from structured data.
pub fn mix64(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// The splitmix64 generator: a counter plus [`mix64`]. Deterministic across
/// platforms, trivially seedable, and more than random enough for picking
/// field coefficients.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        mix64(self.state)
    }

    /// A uniform field element by 61-bit rejection sampling. At most one word
    /// in 2^61 is rejected, so the loop effectively never spins.
    pub fn next_fp(&mut self) -> Fp {
        loop {
            let v = self.next_u64() >> 3;
            if v < MODULUS {
                return Fp(v);
            }
        }
    }
}

/// A dense row-major matrix over the field.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

impl PrimeFieldMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PrimeFieldMatrix {
            rows,
            cols,
            data: vec![Fp::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PrimeFieldMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Fp::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fp) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &PrimeFieldMatrix) -> PrimeFieldMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = PrimeFieldMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Rank by Gauss-Jordan elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Fp>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].inv();
            for x in &mut m[rank][col..] {
                *x = *x * inv;
            }
            let pivot_row = m[rank][col..].to_vec();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && !row[col].is_zero() {
                    let f = row[col];
                    for (x, &pv) in row[col..].iter_mut().zip(&pivot_row) {
                        *x = *x - f * pv;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl Index<(usize, usize)> for PrimeFieldMatrix {
    type Output = Fp;
    fn index(&self, (i, j): (usize, usize)) -> &Fp {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeFieldMatrix({}x{})", self.rows, self.cols)
    }
}
