use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::field::next_prime_power;
use super::parity::{lift_check, ParityCheck, SyndromeTable};
use super::sidon::{bose_chowla_set, SidonSet};
use crate::combinatorics::factorial;
use crate::enumeration::kendall_ball_volume;
use crate::error::{cap, domain, Error, Result};
use crate::perm::{
    from_inversion_vector, kendall_ball, kendall_distance, l1_distance, max_distance,
    to_inversion_vector, InversionVector, Permutation,
};

pub const CODEBOOK_SIZE_CAP: u64 = 1_000_000;
pub const MIN_CODE_N: usize = 4;

/// A `t`-error-correcting code in `S_n`: every permutation whose inversion
/// vector `x` satisfies `Σ h_i x_i ≡ a (mod m_t)`.
#[derive(Debug, Clone)]
pub struct RankCode {
    n: usize,
    t: u32,
    sidon: Option<SidonSet>,
    parity: ParityCheck,
    coset: u64,
    codebook: Vec<Permutation>,
    table: SyndromeTable,
}

/// Minimum pairwise distance of a codebook; a codebook with fewer than two
/// words has no pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistance {
    Finite(u64),
    /// No pairs. [`MinDistance::value`] reports `N + 1`.
    Unbounded {
        sentinel: u64,
    },
}

impl MinDistance {
    pub fn value(self) -> u64 {
        match self {
            MinDistance::Finite(d) => d,
            MinDistance::Unbounded { sentinel } => sentinel,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, MinDistance::Unbounded { .. })
    }
}

/// `entry[a] = |{x ∈ G_n : Σ h_i x_i ≡ a (mod m_t)}|`.
pub fn coset_profile(n: usize, parity: &ParityCheck) -> Result<Vec<BigUint>> {
    if n < 2 || parity.len() != n - 1 {
        return Err(domain(format!(
            "check length {} does not match n - 1 = {}",
            parity.len(),
            n.saturating_sub(1)
        )));
    }
    let m_t = parity.m_t() as usize;
    let mut counts = vec![BigUint::zero(); m_t];
    counts[0] = BigUint::from(1u32);
    for (idx, &h) in parity.h().iter().enumerate() {
        let h = (h % m_t as u64) as usize;
        let mut next = vec![BigUint::zero(); m_t];
        for (r, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut target = r;
            for _ in 0..=idx + 1 {
                next[target] += c;
                target = (target + h) % m_t;
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// `reach[i][r]`: coordinates `i..L` can contribute residue `r`.
fn reachability(parity: &ParityCheck) -> Vec<Vec<bool>> {
    let m_t = parity.m_t() as usize;
    let len = parity.len();
    let mut reach = vec![vec![false; m_t]; len + 1];
    reach[len][0] = true;
    for i in (0..len).rev() {
        let h = (parity.h()[i] % m_t as u64) as usize;
        for r in 0..m_t {
            if !reach[i + 1][r] {
                continue;
            }
            let mut target = r;
            for _ in 0..=i + 1 {
                reach[i][target] = true;
                target = (target + h) % m_t;
            }
        }
    }
    reach
}

struct CosetWalk {
    h: Vec<u64>,
    reach: Vec<Vec<bool>>,
    coset: u64,
    m_t: u64,
    coords: Vec<u32>,
    out: Vec<InversionVector>,
}

impl CosetWalk {
    fn walk(&mut self, pos: usize, acc: u64) {
        if pos == self.coords.len() {
            let x = InversionVector::from_coords_unchecked(self.coords.clone());
            self.out.push(x);
            return;
        }
        for x in 0..=pos as u64 + 1 {
            let acc = (acc + self.h[pos] * x) % self.m_t;
            let needed = (self.coset + self.m_t - acc) % self.m_t;
            if self.reach[pos + 1][needed as usize] {
                self.coords[pos] = x as u32;
                self.walk(pos + 1, acc);
            }
        }
    }
}

/// Inversion vectors in the coset `a`, lexicographically ordered.
fn enumerate_coset(parity: &ParityCheck, coset: u64) -> Vec<InversionVector> {
    let m_t = parity.m_t();
    let mut walk = CosetWalk {
        h: parity.h().iter().map(|&h| h % m_t).collect(),
        reach: reachability(parity),
        coset,
        m_t,
        coords: vec![0; parity.len()],
        out: Vec::new(),
    };
    if walk.reach[0][coset as usize] {
        walk.walk(0, 0);
    }
    walk.out
}

/// Check coefficients used by [`build_code`] for `(n, t)`, together with the
/// Sidon set they came from.
pub fn code_parity(n: usize, t: u32) -> Result<(Option<SidonSet>, ParityCheck)> {
    if n < MIN_CODE_N {
        return Err(domain(format!("codes need n >= {MIN_CODE_N}, got {n}")));
    }
    if t == 0 {
        return Err(domain("t must be at least 1"));
    }
    let len = n - 1;
    if t == 1 {
        return Ok((None, ParityCheck::single_error(len)?));
    }
    let q = next_prime_power(n as u64 - 2);
    let set = bose_chowla_set(q, t)?;
    let parity = lift_check(&set)?.shorten(len)?;
    Ok((Some(set), parity))
}

/// Builds the code for `n >= 4`, `t >= 1`: check coefficients from a
/// Bose-Chowla set over the smallest prime power `q >= n − 2`, shortened to
/// `n − 1`, then the most populated coset of `G_n`.
pub fn build_code(n: usize, t: u32) -> Result<RankCode> {
    let (sidon, parity) = code_parity(n, t)?;
    let profile = coset_profile(n, &parity)?;
    let (coset, best) = profile
        .iter()
        .enumerate()
        .fold(
            (0usize, &profile[0]),
            |acc, (a, c)| if c > acc.1 { (a, c) } else { acc },
        );
    if best > &BigUint::from(CODEBOOK_SIZE_CAP) {
        return Err(cap("codebook size", best, CODEBOOK_SIZE_CAP));
    }
    let codebook: Vec<Permutation> = enumerate_coset(&parity, coset as u64)
        .iter()
        .map(from_inversion_vector)
        .collect();
    debug_assert_eq!(BigUint::from(codebook.len()), *best);
    let table = parity
        .syndrome_table()
        .ok_or_else(|| Error::Internal("syndrome table collision".into()))?;
    Ok(RankCode {
        n,
        t,
        sidon,
        parity,
        coset: coset as u64,
        codebook,
        table,
    })
}

impl RankCode {
    /// Assembles a code from stored parts; the check gates run, the codebook
    /// is taken as given (see [`RankCode::verify`]).
    pub fn from_parts(
        n: usize,
        t: u32,
        sidon: Option<SidonSet>,
        parity: ParityCheck,
        coset: u64,
        codebook: Vec<Permutation>,
    ) -> Result<RankCode> {
        if parity.t() != t {
            return Err(Error::Verification("check built for a different t".into()));
        }
        if n < 2 || parity.len() != n - 1 {
            return Err(Error::Verification(format!(
                "check length {} does not match n = {n}",
                parity.len()
            )));
        }
        if coset >= parity.m_t() {
            return Err(Error::Verification(format!(
                "coset {coset} is not a residue modulo {}",
                parity.m_t()
            )));
        }
        if let Some(w) = codebook.iter().find(|w| w.len() != n) {
            return Err(Error::Verification(format!("codeword {w} has wrong size")));
        }
        let table = parity
            .syndrome_table()
            .ok_or_else(|| Error::Verification("syndromes are not distinct".into()))?;
        Ok(RankCode {
            n,
            t,
            sidon,
            parity,
            coset,
            codebook,
            table,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> Option<u64> {
        self.sidon.as_ref().map(SidonSet::q)
    }

    pub fn m(&self) -> Option<u64> {
        self.parity.m()
    }

    pub fn m_t(&self) -> u64 {
        self.parity.m_t()
    }

    pub fn sidon(&self) -> Option<&SidonSet> {
        self.sidon.as_ref()
    }

    pub fn parity(&self) -> &ParityCheck {
        &self.parity
    }

    pub fn coset(&self) -> u64 {
        self.coset
    }

    pub fn codebook(&self) -> &[Permutation] {
        &self.codebook
    }

    pub fn len(&self) -> usize {
        self.codebook.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codebook.is_empty()
    }

    pub fn syndrome_table(&self) -> &SyndromeTable {
        &self.table
    }

    /// `⌈n!/m_t⌉`, the pigeonhole guarantee for the largest coset.
    pub fn guaranteed_size(&self) -> BigUint {
        let m_t = BigUint::from(self.m_t());
        (factorial(self.n as u64) + &m_t - 1u32) / m_t
    }

    /// `|C| / (n!/|B_t|)`: the fraction of the ball-packing bound achieved.
    pub fn packing_efficiency(&self) -> f64 {
        let ball = kendall_ball_volume(self.n, self.t as u64).expect("n >= 1");
        let num = BigUint::from(self.codebook.len()) * ball;
        let total = factorial(self.n as u64);
        // both fit f64 for every n that passes the codebook cap
        num.to_f64().unwrap_or(f64::INFINITY) / total.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `(Σ h_i x_i − a) mod m_t`; zero exactly on the code.
    pub fn syndrome(&self, x: &InversionVector) -> Result<u64> {
        if x.n() != self.n {
            return Err(Error::SizeMismatch {
                left: x.n(),
                right: self.n,
            });
        }
        let m_t = self.m_t() as u128;
        let s: u128 = x
            .coords()
            .iter()
            .zip(self.parity.h())
            .map(|(&xi, &hi)| xi as u128 * hi as u128 % m_t)
            .sum();
        Ok(((s + m_t - self.coset as u128 % m_t) % m_t) as u64)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        Ok(self.syndrome(&to_inversion_vector(p)?)? == 0)
    }

    /// Bounded-distance decoding in the inversion-vector space: returns the
    /// codeword whose inversion vector is within ℓ1 distance `t` of that of
    /// `received`, or `None` when there is none. Every codeword within Kendall
    /// distance `t` qualifies, since ℓ1 never exceeds the Kendall distance.
    pub fn decode(&self, received: &Permutation) -> Result<Option<Permutation>> {
        if received.len() != self.n {
            return Err(Error::SizeMismatch {
                left: received.len(),
                right: self.n,
            });
        }
        let y = to_inversion_vector(received)?;
        let s = self.syndrome(&y)?;
        let Some(e) = self.table.get(s) else {
            return Ok(None);
        };
        let mut coords = Vec::with_capacity(y.coords().len());
        for (i, (&yi, &ei)) in y.coords().iter().zip(e).enumerate() {
            let xi = yi as i64 - ei as i64;
            if xi < 0 || xi > i as i64 + 1 {
                return Ok(None);
            }
            coords.push(xi as u32);
        }
        Ok(Some(from_inversion_vector(
            &InversionVector::from_coords_unchecked(coords),
        )))
    }

    /// The `index`-th codeword in canonical (lexicographic inversion vector)
    /// order.
    pub fn codeword(&self, index: usize) -> Result<&Permutation> {
        self.codebook.get(index).ok_or_else(|| {
            domain(format!(
                "codeword index {index} out of range 0..{}",
                self.codebook.len()
            ))
        })
    }

    /// Exact pairwise minimum of the Kendall distance.
    pub fn min_kendall_distance(&self) -> MinDistance {
        self.pairwise_min(|a, b| kendall_distance(a, b).expect("same size"))
    }

    /// Exact pairwise minimum of the ℓ1 distance between inversion vectors.
    pub fn min_l1_distance(&self) -> MinDistance {
        let vectors: Vec<InversionVector> = self
            .codebook
            .iter()
            .map(|p| to_inversion_vector(p).expect("n >= 2"))
            .collect();
        pairwise_min(&vectors, max_distance(self.n) + 1, |a, b| {
            l1_distance(a, b).expect("same size")
        })
    }

    fn pairwise_min(&self, dist: impl Fn(&Permutation, &Permutation) -> u64 + Sync) -> MinDistance {
        pairwise_min(&self.codebook, max_distance(self.n) + 1, dist)
    }

    /// Whether every pair of codewords is at Kendall distance `>= d`. Uses
    /// ball enumeration around each codeword when that is cheaper than the
    /// pairwise scan.
    pub fn has_min_distance_at_least(&self, d: u64) -> bool {
        if d == 0 || self.codebook.len() < 2 {
            return true;
        }
        let m = self.codebook.len() as f64;
        let ball = kendall_ball_volume(self.n, d - 1)
            .ok()
            .and_then(|b| b.to_f64())
            .unwrap_or(f64::INFINITY);
        if m / 2.0 <= ball {
            return self.min_kendall_distance().value() >= d;
        }
        let words: HashSet<&Permutation> = self.codebook.iter().collect();
        if words.len() != self.codebook.len() {
            return false;
        }
        self.codebook.par_iter().all(|c| {
            kendall_ball(c, d - 1)
                .iter()
                .skip(1)
                .all(|p| !words.contains(p))
        })
    }

    /// Reruns every gate on the code: Sidon property, check ranges and
    /// syndrome distinctness, coset membership and completeness, canonical
    /// order, and minimum distance `>= 2t + 1`.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        if let Some(set) = &self.sidon {
            if !super::sidon::is_sidon(set.elements(), set.t(), set.m()) {
                return fail("Sidon set fails the sum-distinctness check".into());
            }
            let shift = super::parity::lift_shift(set.m(), set.t());
            let expected: Vec<u64> = set.elements().iter().map(|&j| j + shift).collect();
            if !expected.starts_with(self.parity.h()) {
                return fail("check coefficients do not come from the Sidon set".into());
            }
        } else if self.t != 1 || self.parity.m().is_some() {
            return fail("only the single-error check may omit its Sidon set".into());
        }
        if !self.parity.ranges_hold() || !self.parity.sum_properties_hold() {
            return fail("check coefficients violate the lifting ranges".into());
        }
        if !self.parity.syndromes_distinct() {
            return fail("syndromes are not distinct".into());
        }
        for (i, w) in self.codebook.iter().enumerate() {
            if !self.contains(w)? {
                return fail(format!("codeword {i} ({w}) is not in coset {}", self.coset));
            }
        }
        let vectors: Vec<InversionVector> = self
            .codebook
            .iter()
            .map(to_inversion_vector)
            .collect::<Result<_>>()?;
        if !vectors.windows(2).all(|w| w[0] < w[1]) {
            return fail("codebook is not in strictly increasing canonical order".into());
        }
        let profile = coset_profile(self.n, &self.parity)?;
        if BigUint::from(self.codebook.len()) != profile[self.coset as usize] {
            return fail(format!(
                "codebook has {} words but the coset holds {}",
                self.codebook.len(),
                profile[self.coset as usize]
            ));
        }
        let d = 2 * self.t as u64 + 1;
        if !self.has_min_distance_at_least(d) {
            return fail(format!("minimum Kendall distance is below {d}"));
        }
        Ok(())
    }
}

fn pairwise_min<T: Sync>(
    items: &[T],
    sentinel: u64,
    dist: impl Fn(&T, &T) -> u64 + Sync,
) -> MinDistance {
    if items.len() < 2 {
        return MinDistance::Unbounded { sentinel };
    }
    let min = (0..items.len())
        .into_par_iter()
        .map(|i| {
            items[i + 1..]
                .iter()
                .map(|b| dist(&items[i], b))
                .min()
                .unwrap_or(u64::MAX)
        })
        .min()
        .expect("nonempty");
    MinDistance::Finite(min)
}
