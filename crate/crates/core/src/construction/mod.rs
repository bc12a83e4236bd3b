//! `t`-error-correcting permutation codes from Bose-Chowla sets.
//!
//! Pipeline: [`field`] arithmetic, a Sidon set from [`sidon`], shifted check
//! coefficients from [`parity`], then the most populated coset of inversion
//! vectors in [`code`]. [`codebook`] reads and writes the resulting codes.

pub mod code;
pub mod codebook;
pub mod field;
pub mod parity;
pub mod sidon;

pub use code::{build_code, code_parity, coset_profile, MinDistance, RankCode};
pub use field::FiniteField;
pub use parity::{lift_check, syndromes_distinct, ParityCheck, SyndromeTable};
pub use sidon::{bose_chowla_set, is_sidon, SidonSet};
