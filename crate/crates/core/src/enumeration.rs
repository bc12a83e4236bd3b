//! Exact counting in the Kendall space and in `H_n = {1..n}^n`.
//!
//! Everything here works on arbitrary-precision integers; `n!` leaves `u64`
//! at `n = 21`. The coefficient table of [`weight_distribution`] has
//! `n(n−1)/2 + 1` entries, so a few hundred is a practical ceiling for `n`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, binomial_signed};
use crate::error::{cap, domain, Result};
use crate::perm::{all_permutations, kendall_distance, max_distance, Permutation};

pub const BRUTE_WEIGHT_MAX_N: usize = 8;
pub const BRUTE_Q_MAX_N: usize = 6;
pub const OPTIMAL_MAX_N: usize = 5;

/// `K_n(k)` for `k = 0..=n(n−1)/2`: how many permutations of `[n]` have
/// exactly `k` inversions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `K_n(k)`, zero beyond the diameter.
    pub fn get(&self, k: u64) -> BigUint {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.counts.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `Σ_{k <= r} K_n(k)`.
    pub fn cumulative(&self, r: u64) -> BigUint {
        let end = usize::try_from(r).map_or(self.counts.len(), |r| (r + 1).min(self.counts.len()));
        self.counts[..end].iter().sum()
    }
}

/// Coefficients of `Π_{i=1}^{n} (1 − z^i)/(1 − z)`, built one factor at a
/// time with a sliding-window sum.
pub fn weight_distribution(n: usize) -> Result<WeightDistribution> {
    if n == 0 {
        return Err(domain("weight distribution needs n >= 1"));
    }
    let mut counts = vec![BigUint::one()];
    for i in 2..=n {
        // multiply by 1 + z + … + z^{i−1}
        let new_len = counts.len() + i - 1;
        let mut next = Vec::with_capacity(new_len);
        let mut window = BigUint::zero();
        for k in 0..new_len {
            if let Some(c) = counts.get(k) {
                window += c;
            }
            if k >= i {
                window -= &counts[k - i];
            }
            next.push(window.clone());
        }
        counts = next;
    }
    Ok(WeightDistribution { n, counts })
}

/// Closed form for `K_n(k)` valid for `1 <= k <= n`, with pentagonal
/// offsets `u_j = (3j² − j)/2`.
pub fn kn_explicit(n: usize, k: usize) -> Result<BigUint> {
    if k < 1 || k > n {
        return Err(domain(format!(
            "closed form for K_n(k) needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let (n, k) = (n as i64, k as i64);
    let mut total: BigInt = binomial_signed(n + k - 2, k) - binomial_signed(n + k - 3, k - 2);
    for j in 2i64.. {
        let u = (3 * j * j - j) / 2;
        if k - u < 0 {
            break;
        }
        let term =
            binomial_signed(n + k - u - 1, k - u) + binomial_signed(n + k - u - j - 1, k - u - j);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    debug_assert!(!total.is_negative());
    Ok(total.to_biguint().expect("count is nonnegative"))
}

/// `|B_r|` in the Kendall space; the same for every center.
pub fn kendall_ball_volume(n: usize, r: u64) -> Result<BigUint> {
    Ok(weight_distribution(n)?.cumulative(r))
}

/// `Q(n, r)`: solutions of `x_1 + … + x_n = r` with `0 <= x_i <= n−1`,
/// by inclusion-exclusion.
pub fn q_count(n: usize, r: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(domain("Q(n, r) needs n >= 1"));
    }
    let (n, r) = (n as i64, r as i64);
    let mut total = BigInt::zero();
    let mut i = 0i64;
    while r - n * i >= 0 && i <= n {
        let term = binomial_signed(n, i) * binomial_signed(n + r - n * i - 1, r - n * i);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        i += 1;
    }
    Ok(total.to_biguint().expect("count is nonnegative"))
}

/// `|B_s(1)|` in `H_n` with the ℓ1 metric: `Σ_{r <= s} Q(n, r)`.
pub fn h_ball_volume(n: usize, s: u64) -> Result<BigUint> {
    let top = s.min((n * n.saturating_sub(1)) as u64);
    (0..=top).map(|r| q_count(n, r)).sum()
}

/// Bracket `C(n+r−1, r) − n·C(r−1, r−n) <= Q(n, r) <= C(n+r−1, r)`, valid
/// while `r < n² / ln n`.
pub fn qnr_sandwich(n: usize, r: u64) -> Result<(BigUint, BigUint)> {
    if n == 0 {
        return Err(domain("Q(n, r) needs n >= 1"));
    }
    if !sandwich_applies(n, r) {
        return Err(domain(format!(
            "bracket needs r < n^2 / ln n, got n = {n}, r = {r}"
        )));
    }
    let (ni, ri) = (n as i64, r as i64);
    let upper = binomial(ni + ri - 1, ri);
    let correction = binomial(ri - 1, ri - ni) * BigUint::from(n);
    let lower = if correction > upper {
        BigUint::zero()
    } else {
        &upper - correction
    };
    Ok((lower, upper))
}

/// Whether `r < n² / ln n` (always true for `n = 1`).
pub fn sandwich_applies(n: usize, r: u64) -> bool {
    if n <= 1 {
        return true;
    }
    let nf = n as f64;
    (r as f64) < nf * nf / nf.ln()
}

/// Exhaustive count of inversions over all of `S_n`.
pub fn brute_weight_distribution(n: usize) -> Result<WeightDistribution> {
    if n == 0 {
        return Err(domain("weight distribution needs n >= 1"));
    }
    if n > BRUTE_WEIGHT_MAX_N {
        return Err(cap("n", n, BRUTE_WEIGHT_MAX_N));
    }
    let mut counts = vec![0u64; max_distance(n) as usize + 1];
    for p in all_permutations(n) {
        counts[p.inversion_count() as usize] += 1;
    }
    Ok(WeightDistribution {
        n,
        counts: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// Exhaustive count of bounded compositions `x ∈ {0..n−1}^n` summing to `r`.
pub fn brute_q_count(n: usize, r: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(domain("Q(n, r) needs n >= 1"));
    }
    if n > BRUTE_Q_MAX_N {
        return Err(cap("n", n, BRUTE_Q_MAX_N));
    }
    let mut digits = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if digits.iter().sum::<u64>() == r {
            count += 1;
        }
        // odometer increment in base n
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(BigUint::from(count));
            }
            digits[pos] += 1;
            if digits[pos] < n as u64 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// `A(n, d)`: the largest code in `S_n` with minimum Kendall distance `d`,
/// found as a maximum clique of the graph joining permutations at distance
/// at least `d`.
pub fn exact_optimal_size(n: usize, d: u64) -> Result<u64> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    if n > OPTIMAL_MAX_N {
        return Err(cap("n", n, OPTIMAL_MAX_N));
    }
    let diameter = max_distance(n);
    if d < 1 || d > diameter.max(1) {
        return Err(domain(format!(
            "distance must lie in 1..={diameter}, got {d}"
        )));
    }
    if n == 1 {
        return Ok(1);
    }
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let graph = CliqueGraph::from_predicate(perms.len(), |a, b| {
        kendall_distance(&perms[a], &perms[b]).expect("same size") >= d
    });
    // The graph is vertex-transitive (right multiplication), so some optimum
    // contains the identity, which is vertex 0 in lexicographic order.
    let identity = graph.label[0];
    Ok(1 + graph.max_clique_within(graph.adj[identity]) as u64)
}

/// Dense graph on at most 128 vertices, adjacency as bit masks.
struct CliqueGraph {
    adj: Vec<u128>,
    /// original vertex -> internal label
    label: Vec<usize>,
}

impl CliqueGraph {
    fn from_predicate(size: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        assert!(size <= 128);
        // relabel by nonincreasing degree so the colouring bound is tighter
        let mut raw = vec![0u128; size];
        for a in 0..size {
            for b in a + 1..size {
                if edge(a, b) {
                    raw[a] |= 1 << b;
                    raw[b] |= 1 << a;
                }
            }
        }
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(raw[v].count_ones()), v));
        let mut label = vec![0usize; size];
        for (new, &old) in order.iter().enumerate() {
            label[old] = new;
        }
        let mut adj = vec![0u128; size];
        for old in 0..size {
            let mut bits = raw[old];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                adj[label[old]] |= 1 << label[b];
            }
        }
        CliqueGraph { adj, label }
    }

    fn max_clique_within(&self, candidates: u128) -> usize {
        let mut best = 0;
        self.expand(0, candidates, &mut best);
        best
    }

    fn expand(&self, depth: usize, mut candidates: u128, best: &mut usize) {
        let (order, colours) = self.colour(candidates);
        for idx in (0..order.len()).rev() {
            if depth + colours[idx] <= *best {
                return;
            }
            let v = order[idx];
            let next = candidates & self.adj[v];
            if next == 0 {
                *best = (*best).max(depth + 1);
            } else {
                self.expand(depth + 1, next, best);
            }
            candidates &= !(1u128 << v);
        }
    }

    /// Greedy sequential colouring; returns vertices with nondecreasing colours.
    fn colour(&self, candidates: u128) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(candidates.count_ones() as usize);
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = candidates;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut available = uncoloured;
            while available != 0 {
                let v = available.trailing_zeros() as usize;
                available &= !(1u128 << v) & !self.adj[v];
                uncoloured &= !(1u128 << v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigUint {
    crate::combinatorics::factorial(n as u64)
}
