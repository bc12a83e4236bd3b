//! Permutation codes under the Kendall tau metric, as used for rank
//! modulation in flash memory.
//!
//! * [`perm`]: permutations, the Kendall metric, inversion vectors and the
//!   footrule / Cayley / Hamming embeddings.
//! * [`enumeration`]: exact counts of inversions, ball volumes and an
//!   exact max-clique solver for `A(n, d)` on tiny `n`.
//! * [`bounds`]: upper and lower bounds on `A(n, d)`.
//! * [`construction`]: `t`-error-correcting codes from Bose-Chowla sets,
//!   with a syndrome decoder and a codebook file format.

pub mod bounds;
mod combinatorics;
pub mod construction;
pub mod enumeration;
mod error;
pub mod perm;

pub use combinatorics::{binomial, factorial, ln_big};
pub use error::{Error, Result};
pub use perm::{HammingImage, InversionVector, Permutation};
