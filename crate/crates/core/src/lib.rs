//! Constructive pieces of computable analysis over exact rationals.
//!
//! * [`reals`]: digit streams and interval-oracle reals with field operations.
//! * [`codec`]: carry-free digit spreading, pair and join encodings, and the
//!   eight-term sum representation.
//! * [`rcf`]: sign-change root isolation for odd-degree polynomials.
//! * [`cantor`]: the doubling map between bit strings and the ternary Cantor set.
//! * [`monotone`]: countable codes for monotone functions and their families.
//! * [`cover`]: monotone covers of finite point sets, behind a strategy registry.
//! * [`bitswap`]: the pair-swapping permutation and its density obstructions.

pub mod bits;
pub mod bitswap;
pub mod cantor;
pub mod codec;
pub mod cover;
pub mod monotone;
pub mod rational;
pub mod rcf;
pub mod reals;
