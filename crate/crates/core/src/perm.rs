//! Permutations of `[n]` in one-line notation, the Kendall tau metric and the
//! maps into inversion vectors, the footrule space and the binary Hamming
//! space.
//!
//! Composition follows `compose(s, t)(i) = s(t(i))`. With that convention the
//! Kendall distance is `d(s, p) = I(p ∘ s⁻¹)` and is right-invariant:
//! `d(s ∘ u, p ∘ u) = d(s, p)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Below this length inversions are counted by pair enumeration.
const NAIVE_INVERSION_LIMIT: usize = 64;

/// A permutation of `{1, …, n}` stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Validates that `entries` is a bijection of `[n]` onto itself.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty sequence".into()));
        }
        let mut seen = vec![false; n];
        for (pos, &v) in entries.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {} at position {} is outside 1..={}",
                    v,
                    pos + 1,
                    n
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "entry {} repeated at position {}",
                    v,
                    pos + 1
                )));
            }
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations need n >= 1");
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    /// The opposite permutation `(n, n-1, …, 1)`.
    pub fn reversal(n: usize) -> Self {
        assert!(n >= 1, "permutations need n >= 1");
        Permutation {
            entries: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; a permutation has at least one element.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { entries: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        same_size(self.len(), other.len())?;
        Ok(Permutation {
            entries: other
                .entries
                .iter()
                .map(|&j| self.entries[j as usize - 1])
                .collect(),
        })
    }

    pub fn inversion_count(&self) -> u64 {
        count_inversions(&self.entries)
    }

    pub fn cycle_count(&self) -> usize {
        let mut visited = vec![false; self.len()];
        let mut cycles = 0;
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.entries[i] as usize - 1;
            }
        }
        cycles
    }

    /// Exchanges the symbols `k` and `k + 1`, i.e. `(k k+1) ∘ self`. This is
    /// a Kendall neighbour: `d(self, result) = 1`.
    pub fn adjacent_transposition(&self, k: usize) -> Result<Permutation> {
        if k == 0 || k >= self.len() {
            return Err(Error::Domain(format!(
                "adjacent transposition symbol {} outside 1..{}",
                k,
                self.len()
            )));
        }
        let mut entries = self.entries.clone();
        swap_symbols(&mut entries, k as u32);
        Ok(Permutation { entries })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.entries.iter())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_list(s)?;
        let entries = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                u32::try_from(v).map_err(|_| Error::Parse {
                    position: i + 1,
                    message: format!("{v} does not fit a permutation entry"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }
}

/// An element of `G_n = Z_2 × … × Z_n`; coordinate `i` (1-based) lies in `0..=i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionVector {
    coords: Vec<u32>,
}

impl InversionVector {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        for (idx, &c) in coords.iter().enumerate() {
            if c as usize > idx + 1 {
                return Err(Error::CoordinateOutOfRange {
                    index: idx + 1,
                    value: c as usize,
                    max: idx + 1,
                });
            }
        }
        Ok(InversionVector { coords })
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<u32>) -> Self {
        debug_assert!(InversionVector::new(coords.clone()).is_ok());
        InversionVector { coords }
    }

    /// Size of the ambient permutation, `len + 1`.
    pub fn n(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// ℓ1 weight, which equals the inversion count of the permutation.
    pub fn weight(&self) -> u64 {
        self.coords.iter().map(|&c| c as u64).sum()
    }
}

impl fmt::Display for InversionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.coords.iter())
    }
}

impl FromStr for InversionVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = parse_list(s)?
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                u32::try_from(v).map_err(|_| Error::Parse {
                    position: i + 1,
                    message: format!("{v} does not fit a coordinate"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        InversionVector::new(coords)
    }
}

/// Binary image in `{0,1}^N`, one bit per position pair `(i, j)`, `i < j`,
/// ordered lexicographically. A bit is set when the pair is an inversion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HammingImage {
    n: usize,
    bits: Vec<bool>,
}

impl HammingImage {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn weight(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    pub fn hamming_distance(&self, other: &HammingImage) -> Result<u64> {
        same_size(self.n, other.n)?;
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count() as u64)
    }

    /// Index of the pair `(i, j)`, `1 <= i < j <= n`, in the canonical order.
    pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= n);
        // pairs with first element a < i contribute (n - a) each
        (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
    }
}

fn same_size(left: usize, right: usize) -> Result<()> {
    if left != right {
        Err(Error::SizeMismatch { left, right })
    } else {
        Ok(())
    }
}

fn write_joined<'a, T: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = &'a T>,
) -> fmt::Result {
    for (i, v) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses a comma-separated list of nonnegative integers. Positions in
/// errors are 1-based item indices.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse {
            position: 1,
            message: "empty list".into(),
        });
    }
    s.split(',')
        .enumerate()
        .map(|(i, tok)| {
            let tok = tok.trim();
            tok.parse::<u64>().map_err(|_| Error::Parse {
                position: i + 1,
                message: format!("expected a nonnegative integer, found {tok:?}"),
            })
        })
        .collect()
}

/// Number of pairs `i < j` with `s(i) > s(j)`.
pub fn inversion_count(s: &Permutation) -> u64 {
    s.inversion_count()
}

pub(crate) fn count_inversions(values: &[u32]) -> u64 {
    if values.len() <= NAIVE_INVERSION_LIMIT {
        count_inversions_naive(values)
    } else {
        count_inversions_merge(values)
    }
}

#[doc(hidden)]
pub fn count_inversions_naive(values: &[u32]) -> u64 {
    let mut count = 0;
    for (i, &a) in values.iter().enumerate() {
        count += values[i + 1..].iter().filter(|&&b| a > b).count() as u64;
    }
    count
}

#[doc(hidden)]
pub fn count_inversions_merge(values: &[u32]) -> u64 {
    fn sort_count(buf: &mut [u32], scratch: &mut [u32]) -> u64 {
        let len = buf.len();
        if len < 2 {
            return 0;
        }
        let mid = len / 2;
        let mut count = {
            let (lo, hi) = buf.split_at_mut(mid);
            let (slo, shi) = scratch.split_at_mut(mid);
            sort_count(lo, slo) + sort_count(hi, shi)
        };
        let (mut i, mut j, mut k) = (0, mid, 0);
        while i < mid && j < len {
            if buf[i] <= buf[j] {
                scratch[k] = buf[i];
                i += 1;
            } else {
                scratch[k] = buf[j];
                count += (mid - i) as u64;
                j += 1;
            }
            k += 1;
        }
        scratch[k..k + mid - i].copy_from_slice(&buf[i..mid]);
        k += mid - i;
        scratch[k..k + len - j].copy_from_slice(&buf[j..len]);
        buf.copy_from_slice(&scratch[..len]);
        count
    }
    let mut buf = values.to_vec();
    let mut scratch = vec![0; values.len()];
    sort_count(&mut buf, &mut scratch)
}

/// Kendall tau distance: the number of position pairs on which `s` and `p`
/// disagree about relative order, i.e. the fewest adjacent transpositions
/// turning one into the other.
pub fn kendall_distance(s: &Permutation, p: &Permutation) -> Result<u64> {
    same_size(s.len(), p.len())?;
    Ok(p.compose(&s.inverse())?.inversion_count())
}

/// `x(i) = |{j <= i : s(j) > s(i+1)}|` for `i = 1..n-1`.
pub fn to_inversion_vector(s: &Permutation) -> Result<InversionVector> {
    let n = s.len();
    if n < 2 {
        return Err(Error::Domain("inversion vectors need n >= 2".into()));
    }
    // Fenwick tree over values seen so far.
    let mut tree = vec![0u32; n + 1];
    let mut coords = Vec::with_capacity(n - 1);
    for (pos, &v) in s.entries().iter().enumerate() {
        if pos > 0 {
            let mut not_greater = 0;
            let mut k = v as usize;
            while k > 0 {
                not_greater += tree[k];
                k &= k - 1;
            }
            coords.push(pos as u32 - not_greater);
        }
        let mut k = v as usize;
        while k <= n {
            tree[k] += 1;
            k += k & k.wrapping_neg();
        }
    }
    Ok(InversionVector { coords })
}

/// Inverse of [`to_inversion_vector`].
pub fn from_inversion_vector(x: &InversionVector) -> Permutation {
    let n = x.n();
    // Fill positions right to left: position k holds the (x(k-1)+1)-th
    // largest of the values not used yet.
    let mut remaining: Vec<u32> = (1..=n as u32).collect();
    let mut entries = vec![0u32; n];
    for pos in (0..n).rev() {
        let larger_before = if pos == 0 {
            0
        } else {
            x.coords[pos - 1] as usize
        };
        let idx = remaining.len() - 1 - larger_before;
        entries[pos] = remaining.remove(idx);
    }
    Permutation { entries }
}

pub fn compose(s: &Permutation, t: &Permutation) -> Result<Permutation> {
    s.compose(t)
}

pub fn inverse(s: &Permutation) -> Permutation {
    s.inverse()
}

/// ℓ1 distance between inversion vectors, computed over the integers.
pub fn l1_distance(x: &InversionVector, y: &InversionVector) -> Result<u64> {
    same_size(x.n(), y.n())?;
    Ok(x.coords
        .iter()
        .zip(&y.coords)
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum())
}

/// Spearman footrule `Σ |s(i) − p(i)|`. Sandwiches the Kendall distance of
/// the same pair: `D/2 <= d(s, p) <= D − cayley_distance(s, p)`.
pub fn footrule(s: &Permutation, p: &Permutation) -> Result<u64> {
    same_size(s.len(), p.len())?;
    Ok(s.entries
        .iter()
        .zip(&p.entries)
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum())
}

/// Cayley distance: fewest arbitrary transpositions, `n − cycles(p ∘ s⁻¹)`.
pub fn cayley_distance(s: &Permutation, p: &Permutation) -> Result<u64> {
    same_size(s.len(), p.len())?;
    let quotient = p.compose(&s.inverse())?;
    Ok((s.len() - quotient.cycle_count()) as u64)
}

pub fn to_hamming_image(s: &Permutation) -> HammingImage {
    let n = s.len();
    let e = s.entries();
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            bits.push(e[i] > e[j]);
        }
    }
    HammingImage { n, bits }
}

/// `n(n−1)/2`, the diameter of the Kendall space.
pub fn max_distance(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// All permutations of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> Permutations {
    Permutations {
        next: Some((1..=n as u32).collect()),
    }
}

pub struct Permutations {
    next: Option<Vec<u32>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { entries: current })
    }
}

fn next_lexicographic(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations within Kendall distance `radius` of `center`, found by
/// breadth-first search over adjacent transpositions. The center comes first.
fn swap_symbols(entries: &mut [u32], k: u32) {
    for e in entries.iter_mut() {
        if *e == k {
            *e = k + 1;
        } else if *e == k + 1 {
            *e = k;
        }
    }
}

pub fn kendall_ball(center: &Permutation, radius: u64) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(center.clone());
    queue.push_back((center.clone(), 0u64));
    while let Some((p, depth)) = queue.pop_front() {
        if depth < radius {
            let inv = p.inverse();
            for k in 0..p.len().saturating_sub(1) {
                let (a, b) = (inv.entries[k] as usize - 1, inv.entries[k + 1] as usize - 1);
                let mut entries = p.entries.clone();
                entries.swap(a, b);
                let q = Permutation { entries };
                if seen.insert(q.clone()) {
                    queue.push_back((q, depth + 1));
                }
            }
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn v(s: &str) -> InversionVector {
        s.parse().unwrap()
    }

    #[test]
    fn validation_rejects_bad_sequences() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![1]).is_ok());
    }

    #[test]
    fn parse_reports_position() {
        match "1,x,3".parse::<Permutation>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(p(" 2, 1,4 ,3").to_string(), "2,1,4,3");
    }

    #[test]
    fn kendall_examples() {
        assert_eq!(kendall_distance(&p("2,1,4,3"), &p("2,3,4,1")).unwrap(), 3);
        assert_eq!(kendall_distance(&p("1,2,3,4"), &p("1,2,3,4")).unwrap(), 0);
        assert_eq!(kendall_distance(&p("1,2,3,4"), &p("4,3,2,1")).unwrap(), 6);
        assert!(matches!(
            kendall_distance(&p("1,2,3"), &p("1,2")),
            Err(Error::SizeMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn inversion_count_examples() {
        assert_eq!(inversion_count(&p("3,1,2")), 2);
        assert_eq!(inversion_count(&Permutation::identity(9)), 0);
        assert_eq!(inversion_count(&p("2,1,4,3")), 2);
    }

    #[test]
    fn inversion_vector_examples() {
        assert_eq!(to_inversion_vector(&p("2,1,4,3")).unwrap(), v("1,0,1"));
        assert_eq!(to_inversion_vector(&p("2,3,4,1")).unwrap(), v("0,0,3"));
        assert_eq!(to_inversion_vector(&p("1,2,3,4")).unwrap(), v("0,0,0"));
        assert!(to_inversion_vector(&p("1")).is_err());
    }

    #[test]
    fn from_inversion_vector_examples() {
        assert_eq!(from_inversion_vector(&v("1,0,1")), p("2,1,4,3"));
        assert_eq!(
            from_inversion_vector(&v("0,0,0,0")),
            Permutation::identity(5)
        );
        assert_eq!(
            from_inversion_vector(&v("1,2,3,4,5")),
            Permutation::reversal(6)
        );
    }

    #[test]
    fn out_of_range_coordinate_is_named() {
        assert_eq!(
            InversionVector::new(vec![1, 3, 1]),
            Err(Error::CoordinateOutOfRange {
                index: 2,
                value: 3,
                max: 2
            })
        );
    }

    #[test]
    fn compose_and_inverse_examples() {
        assert_eq!(compose(&p("2,1,3"), &p("1,3,2")).unwrap(), p("2,3,1"));
        assert_eq!(inverse(&p("2,1,4,3")), p("2,1,4,3"));
        let s = p("3,1,4,2");
        assert_eq!(compose(&s, &Permutation::identity(4)).unwrap(), s);
        assert!(compose(&s, &s.inverse()).unwrap().is_identity());
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_distance(&v("1,0,1"), &v("0,0,3")).unwrap(), 3);
        assert_eq!(l1_distance(&v("1,0,1"), &v("1,0,1")).unwrap(), 0);
        assert_eq!(l1_distance(&v("0,1,2"), &v("0,0,0")).unwrap(), 3);
        assert!(l1_distance(&v("0,1"), &v("0,0,0")).is_err());
    }

    #[test]
    fn footrule_examples() {
        assert_eq!(footrule(&p("1,2,3,4"), &p("4,3,2,1")).unwrap(), 8);
        assert_eq!(footrule(&p("2,1,4,3"), &p("2,1,4,3")).unwrap(), 0);
        let (a, b) = (p("2,1,4,3"), p("2,3,4,1"));
        assert_eq!(footrule(&a, &b).unwrap(), 4);
        let k = kendall_distance(&a, &b).unwrap();
        assert!((2..=4).contains(&k));
        assert!(k + cayley_distance(&a, &b).unwrap() <= 4);
    }

    #[test]
    fn cayley_examples() {
        let e = Permutation::identity(4);
        assert_eq!(cayley_distance(&e, &e).unwrap(), 0);
        assert_eq!(cayley_distance(&e, &p("2,1,3,4")).unwrap(), 1);
        assert_eq!(cayley_distance(&e, &p("4,3,2,1")).unwrap(), 2);
    }

    #[test]
    fn hamming_image_examples() {
        let e = to_hamming_image(&Permutation::identity(5));
        assert_eq!(e.bits().len(), 10);
        assert_eq!(e.weight(), 0);
        assert_eq!(to_hamming_image(&p("2,1")).bits(), &[true]);

        let a = to_hamming_image(&p("2,1,4,3"));
        let mut expected = [false; 6];
        expected[HammingImage::pair_index(4, 1, 2)] = true;
        expected[HammingImage::pair_index(4, 3, 4)] = true;
        assert_eq!(a.bits(), &expected[..]);
        let b = to_hamming_image(&p("2,3,4,1"));
        assert_eq!(a.hamming_distance(&b).unwrap(), 3);
    }

    #[test]
    fn pair_index_is_lexicographic() {
        let n = 6;
        let mut expect = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                assert_eq!(HammingImage::pair_index(n, i, j), expect);
                expect += 1;
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(1).count(), 1);
    }

    #[test]
    fn ball_sizes_around_identity() {
        // K_4 = (1,3,5,6,5,3,1)
        let e = Permutation::identity(4);
        assert_eq!(kendall_ball(&e, 0).len(), 1);
        assert_eq!(kendall_ball(&e, 1).len(), 4);
        assert_eq!(kendall_ball(&e, 2).len(), 9);
        assert_eq!(kendall_ball(&e, 6).len(), 24);
    }

    #[test]
    fn adjacent_transposition_bounds() {
        let s = p("1,2,3");
        assert_eq!(s.adjacent_transposition(2).unwrap(), p("1,3,2"));
        let r = p("3,1,2");
        let swapped = r.adjacent_transposition(1).unwrap();
        assert_eq!(swapped, p("3,2,1"));
        assert_eq!(kendall_distance(&r, &swapped).unwrap(), 1);
        assert!(s.adjacent_transposition(0).is_err());
        assert!(s.adjacent_transposition(3).is_err());
    }
}
