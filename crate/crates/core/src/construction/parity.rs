//! Check coefficients `h_1, …, h_L` modulo `m_t` whose syndromes
//! `Σ e_i h_i mod m_t` separate every integer error vector with `‖e‖₁ <= t`.

use super::sidon::SidonSet;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheck {
    t: u32,
    /// Sidon modulus `m`; absent for the single-error check.
    m: Option<u64>,
    m_t: u64,
    h: Vec<u64>,
}

/// Maps each syndrome residue to the unique error vector of weight `<= t`
/// producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeTable {
    entries: Vec<Option<Box<[i32]>>>,
    len: usize,
}

impl SyndromeTable {
    pub fn get(&self, residue: u64) -> Option<&[i32]> {
        self.entries.get(residue as usize)?.as_deref()
    }

    /// Number of correctable error patterns, the zero pattern included.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Calls `visit` on every `e ∈ Z^len` with `‖e‖₁ <= t`, the zero vector first.
pub fn for_each_error(len: usize, t: u32, mut visit: impl FnMut(&[i32]) -> bool) -> bool {
    fn walk(e: &mut [i32], pos: usize, left: i32, visit: &mut impl FnMut(&[i32]) -> bool) -> bool {
        if pos == e.len() {
            return visit(e);
        }
        for v in 0..=left {
            for sign in [1, -1] {
                if v == 0 && sign == -1 {
                    continue;
                }
                e[pos] = sign * v;
                if !walk(e, pos + 1, left - v, visit) {
                    e[pos] = 0;
                    return false;
                }
            }
        }
        e[pos] = 0;
        true
    }
    let mut e = vec![0i32; len];
    walk(&mut e, 0, t as i32, &mut visit)
}

fn syndrome_of(e: &[i32], h: &[u64], m_t: u64) -> u64 {
    let m = m_t as i128;
    let s: i128 = e
        .iter()
        .zip(h)
        .map(|(&ei, &hi)| ei as i128 * hi as i128)
        .sum();
    s.rem_euclid(m) as u64
}

/// The syndrome table, or `None` when two error vectors of weight `<= t`
/// collide or a nonzero one has syndrome zero.
pub fn syndrome_table(h: &[u64], m_t: u64, t: u32) -> Option<SyndromeTable> {
    if m_t == 0 {
        return None;
    }
    let mut entries: Vec<Option<Box<[i32]>>> = vec![None; m_t as usize];
    let mut len = 0;
    let ok = for_each_error(h.len(), t, |e| {
        let s = syndrome_of(e, h, m_t) as usize;
        if entries[s].is_some() {
            return false;
        }
        entries[s] = Some(e.into());
        len += 1;
        true
    });
    ok.then_some(SyndromeTable { entries, len })
}

/// True iff the syndromes of all `e` with `‖e‖₁ <= t` are pairwise distinct
/// modulo `m_t` and nonzero for `e != 0`.
pub fn syndromes_distinct(h: &[u64], m_t: u64, t: u32) -> bool {
    syndrome_table(h, m_t, t).is_some()
}

/// `m_t = t(t+1)m` for odd `t`, `t(t+2)m` for even `t`.
pub fn lifted_modulus(m: u64, t: u32) -> u64 {
    let t = t as u64;
    if t % 2 == 1 {
        t * (t + 1) * m
    } else {
        t * (t + 2) * m
    }
}

/// Shift added to every Sidon element: `(t−1)m/2` for odd `t`, `tm/2` for even `t`.
pub fn lift_shift(m: u64, t: u32) -> u64 {
    let t = t as u64;
    if t % 2 == 1 {
        (t - 1) * m / 2
    } else {
        t * m / 2
    }
}

/// Lifts a Bose-Chowla set to check coefficients `h_i = j_{i−1} + shift`.
/// Needs `t >= 2`: at `t = 1` the shift is zero and `h_1 = j_0 = 0`.
pub fn lift_check(set: &SidonSet) -> Result<ParityCheck> {
    let t = set.t();
    if t < 2 {
        return Err(domain(
            "lifting needs t >= 2; use ParityCheck::single_error for t = 1",
        ));
    }
    let m = set.m();
    let shift = lift_shift(m, t);
    let check = ParityCheck {
        t,
        m: Some(m),
        m_t: lifted_modulus(m, t),
        h: set.elements().iter().map(|&j| j + shift).collect(),
    };
    check.verify()?;
    Ok(check)
}

impl ParityCheck {
    /// `h_i = i` for `i = 1..=len` modulo `2·len + 1`: the syndromes `±i` are
    /// distinct and nonzero.
    pub fn single_error(len: usize) -> Result<ParityCheck> {
        if len == 0 {
            return Err(domain("single-error check needs length >= 1"));
        }
        let check = ParityCheck {
            t: 1,
            m: None,
            m_t: 2 * len as u64 + 1,
            h: (1..=len as u64).collect(),
        };
        check.verify()?;
        Ok(check)
    }

    /// Rebuilds a check from stored parts and runs every gate.
    pub fn from_parts(t: u32, m: Option<u64>, m_t: u64, h: Vec<u64>) -> Result<ParityCheck> {
        let check = ParityCheck { t, m, m_t, h };
        check.verify()?;
        Ok(check)
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn m(&self) -> Option<u64> {
        self.m
    }

    pub fn m_t(&self) -> u64 {
        self.m_t
    }

    pub fn h(&self) -> &[u64] {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// Keeps the first `len` coefficients. Any subset of the coordinates
    /// inherits the distinct-syndrome property; it is re-checked anyway.
    pub fn shorten(&self, len: usize) -> Result<ParityCheck> {
        if len > self.h.len() {
            return Err(domain(format!(
                "cannot shorten length {} to {len}",
                self.h.len()
            )));
        }
        let check = ParityCheck {
            h: self.h[..len].to_vec(),
            ..self.clone()
        };
        check.verify()?;
        Ok(check)
    }

    pub fn syndromes_distinct(&self) -> bool {
        syndromes_distinct(&self.h, self.m_t, self.t)
    }

    pub fn syndrome_table(&self) -> Option<SyndromeTable> {
        syndrome_table(&self.h, self.m_t, self.t)
    }

    /// Coefficients of a lifted check lie in `[(t−1)m/2, (t+1)m/2)` for odd
    /// `t` and in `[tm/2, (t+2)m/2]` for even `t`. Always true for the
    /// single-error check.
    pub fn ranges_hold(&self) -> bool {
        let Some(m) = self.m else { return true };
        let t = self.t as u64;
        self.h.iter().all(|&h| {
            if t % 2 == 1 {
                2 * h >= (t - 1) * m && 2 * h < (t + 1) * m
            } else {
                2 * h >= t * m && 2 * h <= (t + 2) * m
            }
        })
    }

    /// For `H = {0} ∪ {h_i}`: any `2t` elements of `H` sum below `m_t`, and
    /// for nonzero elements and `1 <= r < t` the `r` largest of `2t` sum below
    /// the `2t − r` smallest. Checked on the extreme multisets.
    pub fn sum_properties_hold(&self) -> bool {
        let (Some(&max), Some(&min)) = (self.h.iter().max(), self.h.iter().min()) else {
            return true;
        };
        let t = self.t as u64;
        let two_t = 2 * t;
        let below_modulus = (two_t as u128 * max as u128) < self.m_t as u128;
        let ordered = (1..t).all(|r| (r as u128 * max as u128) < (two_t - r) as u128 * min as u128);
        below_modulus && ordered
    }

    fn verify(&self) -> Result<()> {
        if self.t == 0 {
            return Err(domain("t must be at least 1"));
        }
        if self.h.iter().any(|&h| h == 0 || h >= self.m_t) {
            return Err(Error::Verification(format!(
                "check coefficients must lie in 1..{}",
                self.m_t
            )));
        }
        if let Some(m) = self.m {
            if self.m_t != lifted_modulus(m, self.t) {
                return Err(Error::Verification(format!(
                    "m_t = {} does not match m = {m}, t = {}",
                    self.m_t, self.t
                )));
            }
            if !self.ranges_hold() {
                return Err(Error::Verification(
                    "lifted coefficients out of range".into(),
                ));
            }
        }
        if !self.syndromes_distinct() {
            return Err(Error::Verification(format!(
                "syndromes of weight <= {} errors are not distinct modulo {}",
                self.t, self.m_t
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_errors(len: usize, t: u32) -> usize {
        let mut c = 0;
        for_each_error(len, t, |_| {
            c += 1;
            true
        });
        c
    }

    #[test]
    fn error_enumeration_counts() {
        // |{e ∈ Z^L : ‖e‖₁ <= t}| = Σ_k 2^k C(L,k) C(t,k)
        assert_eq!(count_errors(4, 2), 1 + 8 + (4 * 2 + 6 * 4));
        assert_eq!(count_errors(0, 3), 1);
        assert_eq!(count_errors(3, 1), 7);
        let mut first = None;
        for_each_error(3, 2, |e| {
            first.get_or_insert_with(|| e.to_vec());
            true
        });
        assert_eq!(first.unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn syndromes_distinct_examples() {
        assert!(syndromes_distinct(&[13, 14, 16, 22], 104, 2));
        assert!(!syndromes_distinct(&[1, 2], 4, 1));
        assert!(syndromes_distinct(&[], 5, 3));
    }

    #[test]
    fn lift_examples() {
        let set = SidonSet::new(3, 2, vec![0, 1, 3, 9]).unwrap();
        let check = lift_check(&set).unwrap();
        assert_eq!(check.h(), &[13, 14, 16, 22]);
        assert_eq!(check.m_t(), 104);

        let set = SidonSet::new(2, 2, vec![0, 1, 3]).unwrap();
        let check = lift_check(&set).unwrap();
        assert_eq!(check.h(), &[7, 8, 10]);
        assert_eq!(check.m_t(), 56);
    }

    #[test]
    fn odd_t_shift_and_modulus() {
        assert_eq!(lift_shift(40, 3), 40);
        assert_eq!(lifted_modulus(40, 3), 480);
        let set = super::super::sidon::bose_chowla_set(3, 3).unwrap();
        let check = lift_check(&set).unwrap();
        let m = set.m();
        assert_eq!(check.m_t(), 12 * m);
        assert!(check.h().iter().all(|&h| h >= m && h < 2 * m));
        assert!(check.sum_properties_hold());
    }

    #[test]
    fn lift_rejects_t1() {
        let set = SidonSet::new(2, 1, vec![0, 1, 2]).unwrap();
        assert!(lift_check(&set).is_err());
    }

    #[test]
    fn single_error_check() {
        let c = ParityCheck::single_error(6).unwrap();
        assert_eq!(c.m_t(), 13);
        assert_eq!(c.h(), &[1, 2, 3, 4, 5, 6]);
        assert!(c.syndromes_distinct());
        // one coordinate short of the modulus collides: ±i mod 2L
        assert!(!syndromes_distinct(&[1, 2, 3], 6, 1));
    }

    #[test]
    fn shorten_examples() {
        let set = SidonSet::new(3, 2, vec![0, 1, 3, 9]).unwrap();
        let check = lift_check(&set).unwrap();
        assert_eq!(check.shorten(3).unwrap().h(), &[13, 14, 16]);
        assert_eq!(check.shorten(4).unwrap(), check);
        assert!(check.shorten(0).unwrap().is_empty());
        assert!(check.shorten(5).is_err());
    }

    #[test]
    fn table_lookup_matches_unit_errors() {
        let check = ParityCheck::single_error(4).unwrap();
        let table = check.syndrome_table().unwrap();
        assert_eq!(table.len(), 9);
        assert_eq!(table.get(0), Some(&[0, 0, 0, 0][..]));
        assert_eq!(table.get(3), Some(&[0, 0, 1, 0][..]));
        assert_eq!(table.get(9 - 2), Some(&[0, -1, 0, 0][..]));
    }

    #[test]
    fn from_parts_rejects_tampering() {
        assert!(ParityCheck::from_parts(2, Some(13), 104, vec![13, 14, 16, 22]).is_ok());
        assert!(ParityCheck::from_parts(2, Some(13), 100, vec![13, 14, 16, 22]).is_err());
        assert!(ParityCheck::from_parts(2, Some(13), 104, vec![13, 14, 15, 22]).is_err());
        assert!(ParityCheck::from_parts(1, None, 13, vec![1, 2, 3, 4, 5, 6]).is_ok());
        assert!(ParityCheck::from_parts(1, None, 13, vec![0, 2, 3]).is_err());
    }
}
