//! Chain and antichain invariants of partition posets.
//!
//! For an integer partition `P` the crate builds a layered poset `D_P` (one
//! vertex per cell of the diagram, with a level per part size) and computes,
//! by independent routes, the family of invariants that all meet in the same
//! numbers:
//!
//! - `lambda(P)`: the chain-union profile of `D_P`, via min-cost flow
//!   ([`greene`]);
//! - `lambda_U(P)`: the profile realized by a structured family of chains
//!   ([`uchains`]);
//! - `Q(P)`: the generic Jordan type of a nilpotent element commuting with a
//!   fixed nilpotent of type `P`, by Monte Carlo over a large prime field and
//!   by closed forms where those exist ([`commutant`]);
//! - `mu(P)`: a closed-form minimum shared by all three profiles
//!   ([`partition`]);
//! - `mu(P)` pairwise-disjoint maximum antichains of `D_P`, produced
//!   constructively and certified ([`cover`]).
//!
//! [`verify`] sweeps every partition up to a bound and checks all the
//! cross-properties against each other; the `jtlab` binary exposes the whole
//! thing on the command line.

pub mod commutant;
pub mod cover;
pub mod field;
pub mod greene;
pub mod matching;
pub mod partition;
pub mod poset;
pub mod report;
pub mod uchains;
pub mod verify;
