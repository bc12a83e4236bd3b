//! Sets of `q + 1` residues modulo `m = (q^{t+1} − 1)/(q − 1)` whose
//! `t`-element multiset sums are pairwise distinct (Bose-Chowla sets).
//!
//! Construction: take a primitive `θ` of `GF(q^{t+1})` and the `q + 1`
//! elements `1` and `θ + a`, `a ∈ GF(q)`. A product of at most `t` of them is
//! a monic polynomial in `θ` of degree `<= t`, and distinct multisets give
//! distinct polynomials, hence distinct elements modulo the scalars
//! `GF(q)^*`. Taking logarithms modulo `m` turns products into sums.

use num_integer::gcd;

use super::field::{prime_power, FiniteField};
use crate::error::{domain, Error, Result};

/// Exhaustive search is only attempted for moduli up to this size.
pub const EXHAUSTIVE_SEARCH_MAX_M: u64 = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidonSet {
    q: u64,
    t: u32,
    m: u64,
    elements: Vec<u64>,
}

impl SidonSet {
    /// Validates the parameters and the sum-distinctness property.
    pub fn new(q: u64, t: u32, mut elements: Vec<u64>) -> Result<Self> {
        let m = sidon_modulus(q, t)?;
        elements.sort_unstable();
        if elements.len() as u64 != q + 1 {
            return Err(Error::Verification(format!(
                "expected {} elements, found {}",
                q + 1,
                elements.len()
            )));
        }
        if elements.first() != Some(&0) || elements.iter().any(|&j| j >= m) {
            return Err(Error::Verification(format!(
                "elements must be residues modulo {m} including 0"
            )));
        }
        if !is_sidon(&elements, t, m) {
            return Err(Error::Verification(format!(
                "{t}-fold sums of {elements:?} are not distinct modulo {m}"
            )));
        }
        Ok(SidonSet { q, t, m, elements })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Ascending, starting with `0`.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }
}

/// `(q^{t+1} − 1)/(q − 1) = 1 + q + … + q^t`.
pub fn sidon_modulus(q: u64, t: u32) -> Result<u64> {
    if q < 2 {
        return Err(domain("q must be at least 2"));
    }
    if t < 1 {
        return Err(domain("t must be at least 1"));
    }
    let mut m: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..=t {
        m = m
            .checked_add(power)
            .ok_or_else(|| domain("modulus overflows"))?;
        power = power.saturating_mul(q);
    }
    Ok(m)
}

/// True iff all sums `j_{i_1} + … + j_{i_t}`, `i_1 <= … <= i_t`, are distinct
/// modulo `m`.
pub fn is_sidon(elements: &[u64], t: u32, m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut seen = vec![false; m as usize];
    fn walk(
        elements: &[u64],
        start: usize,
        left: u32,
        acc: u64,
        m: u64,
        seen: &mut [bool],
    ) -> bool {
        if left == 0 {
            return !std::mem::replace(&mut seen[acc as usize], true);
        }
        (start..elements.len())
            .all(|i| walk(elements, i, left - 1, (acc + elements[i] % m) % m, m, seen))
    }
    walk(elements, 0, t, 0, m, &mut seen)
}

/// A Bose-Chowla set for `q` a prime power and `t >= 1`.
pub fn bose_chowla_set(q: u64, t: u32) -> Result<SidonSet> {
    let (p, e) = prime_power(q).ok_or_else(|| domain(format!("{q} is not a prime power")))?;
    let m = sidon_modulus(q, t)?;
    let field = FiniteField::new(p, e * (t + 1))?;

    if let Some(set) = algebraic_candidates(&field, q, m).find(|set| is_sidon(set, t, m)) {
        return SidonSet::new(q, t, set);
    }
    if m <= EXHAUSTIVE_SEARCH_MAX_M {
        if let Some(set) = exhaustive_sidon_search(q as usize + 1, t, m) {
            return SidonSet::new(q, t, set);
        }
    }
    Err(Error::Internal(format!(
        "no Bose-Chowla set found for q = {q}, t = {t}"
    )))
}

/// Candidate sets from every primitive element `θ^k`, `gcd(k, |F|−1) = 1`,
/// in increasing `k`.
fn algebraic_candidates<'a>(
    field: &'a FiniteField,
    q: u64,
    m: u64,
) -> impl Iterator<Item = Vec<u64>> + 'a {
    let group = field.size() - 1;
    // GF(q) inside GF(q^{t+1}): zero and the powers θ^{k m}
    let subfield: Vec<u32> = std::iter::once(0)
        .chain((0..q - 1).map(move |k| field.antilog(k * m)))
        .collect();
    (1..group)
        .filter(move |&k| gcd(k, group) == 1)
        .map(move |k| {
            let theta = field.antilog(k);
            let k_inv = mod_inverse(k, group).expect("k is a unit");
            let mut set = vec![0u64];
            for &a in &subfield {
                let x = field.add(theta, a);
                let log_theta =
                    field.log(x).expect("θ + a is nonzero") as u128 * k_inv as u128 % group as u128;
                set.push((log_theta as u64) % m);
            }
            set.sort_unstable();
            set
        })
}

fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(modulus as i128) as u64)
}

/// Depth-first search for `size` residues modulo `m`, starting at `0`, with
/// distinct `t`-fold sums. Returns the lexicographically first such set.
pub fn exhaustive_sidon_search(size: usize, t: u32, m: u64) -> Option<Vec<u64>> {
    fn extend(set: &mut Vec<u64>, size: usize, t: u32, m: u64) -> bool {
        if set.len() == size {
            return true;
        }
        let start = set.last().map_or(0, |&x| x + 1);
        for x in start..m {
            // not enough residues left
            if (m - x) < (size - set.len()) as u64 {
                return false;
            }
            set.push(x);
            if is_sidon(set, t, m) && extend(set, size, t, m) {
                return true;
            }
            set.pop();
        }
        false
    }
    let mut set = vec![0];
    (size >= 1 && extend(&mut set, size, t, m)).then_some(set)
}
