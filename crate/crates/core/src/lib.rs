//! Exact poly-Bernoulli and Genocchi numbers, m-barred Callan sequences,
//! Dumont permutations, and the bijections relating their alternating sums.
//!
//! - [`series`]: truncated power series over exact rationals.
//! - [`numbers`]: Genocchi and (C-)poly-Bernoulli numbers from their
//!   generating functions.
//! - [`combinat`]: data model, validators and enumerators.
//! - [`bijections`]: the maps `phi`, `psi = psi_r . psi_b` and the blue
//!   relabelling, with inverses.
//! - [`harness`]: exhaustive certification of every identity and bijection.

pub mod bijections;
pub mod combinat;
pub mod harness;
pub mod numbers;
pub mod par;
pub mod series;

pub use par::Exec;
