//! Upper and lower bounds on `A(n, d)`, the largest code in `S_n` with
//! minimum Kendall distance `d`.
//!
//! Bounds that come out as fractions are kept exact. When they are combined
//! into [`BoundsReport::best_upper`] / [`BoundsReport::best_lower`], uppers
//! are floored and lowers ceiled, since `A(n, d)` is an integer.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, factorial, ln_big};
use crate::enumeration::{h_ball_volume, kendall_ball_volume, sandwich_applies};
use crate::error::{domain, Result};
use crate::perm::max_distance;

fn check_range(n: usize, d: u64) -> Result<()> {
    let diameter = max_distance(n);
    if n < 2 || d < 1 || d > diameter {
        return Err(domain(format!(
            "need n >= 2 and 1 <= d <= n(n-1)/2 = {diameter}, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn floor_of(r: &BigRational) -> BigUint {
    r.floor().to_integer().to_biguint().unwrap_or_default()
}

fn ceil_of(r: &BigRational) -> BigUint {
    r.ceil().to_integer().to_biguint().unwrap_or_default()
}

/// Exact `⌊n!/den⌋` and `⌈n!/den⌉`.
fn div_floor(num: &BigUint, den: &BigUint) -> BigUint {
    num / den
}

fn div_ceil(num: &BigUint, den: &BigUint) -> BigUint {
    num.div_ceil(den)
}

/// `t = ⌊(d−1)/2⌋`, the number of errors a distance-`d` code corrects.
pub fn correctable_errors(d: u64) -> u64 {
    d.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonBound {
    pub value: BigUint,
    /// `d <= n − 1`: the projection argument gives nothing and `n!` is reported.
    pub trivial: bool,
}

/// Projection bound `A(n, d) <= ⌊3/2 + √(n(n−1) − 2d + 1/4)⌋!` for `d > n − 1`.
pub fn singleton_upper(n: usize, d: u64) -> Result<SingletonBound> {
    check_range(n, d)?;
    if d < n as u64 {
        return Ok(SingletonBound {
            value: factorial(n as u64),
            trivial: true,
        });
    }
    // ⌊3/2 + √(x + 1/4)⌋ = ⌊(3 + √(4x+1))/2⌋ = ⌊(3 + ⌊√(4x+1)⌋)/2⌋
    let x = (n as u64) * (n as u64 - 1) - 2 * d;
    let root = (4 * x + 1).sqrt();
    let k = (3 + root) / 2;
    Ok(SingletonBound {
        value: factorial(k),
        trivial: false,
    })
}

/// Ball-packing bound `⌊n!/|B_t|⌋`, `t = ⌊(d−1)/2⌋`.
pub fn sphere_upper(n: usize, d: u64) -> Result<BigUint> {
    check_range(n, d)?;
    let ball = kendall_ball_volume(n, correctable_errors(d))?;
    Ok(div_floor(&factorial(n as u64), &ball))
}

/// Greedy covering bound `⌈n!/|B_{d−1}|⌉`. Stated for odd `d` in the
/// literature on this metric; the same argument covers even `d`.
pub fn gilbert_lower(n: usize, d: u64) -> Result<BigUint> {
    check_range(n, d)?;
    let ball = kendall_ball_volume(n, d - 1)?;
    Ok(div_ceil(&factorial(n as u64), &ball))
}

/// Upper bound from the footrule embedding into `H_n`:
/// `⌊n^n / Σ_{r=0}^{t} Q(n, r)⌋`.
pub fn l1_upper(n: usize, d: u64) -> Result<BigUint> {
    check_range(n, d)?;
    let volume = h_ball_volume(n, correctable_errors(d))?;
    Ok(div_floor(&BigUint::from(n).pow(n as u32), &volume))
}

/// Lower bound from the footrule embedding:
/// `⌈n! / (2^n Σ_{r=0}^{2d−1} Q(n, r))⌉`.
pub fn l1_lower(n: usize, d: u64) -> Result<BigUint> {
    check_range(n, d)?;
    let volume = h_ball_volume(n, 2 * d - 1)? << n;
    Ok(div_ceil(&factorial(n as u64), &volume))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L1ClosedForms {
    /// `n! / (2^n C(n+2d−1, 2d−1))`
    pub lower: BigRational,
    /// `n^n / Σ_{r=0}^{t} (C(n+r−1, r) − n C(r−1, r−n))`
    pub upper: BigRational,
    /// Some summand of the upper form was negative and was replaced by zero.
    pub clamped: bool,
    /// Every `r <= t` satisfies `r < n²/ln n`, so the upper form is a valid
    /// bound.
    pub upper_valid: bool,
}

pub fn l1_closed_forms(n: usize, d: u64) -> Result<L1ClosedForms> {
    check_range(n, d)?;
    let (ni, di) = (n as i64, d as i64);
    let lower = ratio(
        factorial(n as u64),
        binomial(ni + 2 * di - 1, 2 * di - 1) << n,
    );
    let t = correctable_errors(d);
    let mut clamped = false;
    let mut denominator = BigInt::zero();
    for r in 0..=t as i64 {
        let term =
            BigInt::from(binomial(ni + r - 1, r)) - BigInt::from(binomial(r - 1, r - ni)) * ni;
        if term < BigInt::zero() {
            clamped = true;
        } else {
            denominator += term;
        }
    }
    // the r = 0 summand is 1, so the denominator is positive
    let upper = BigRational::new(BigInt::from(BigUint::from(n).pow(n as u32)), denominator);
    let upper_valid = (0..=t).all(|r| sandwich_applies(n, r));
    Ok(L1ClosedForms {
        lower,
        upper,
        clamped,
        upper_valid,
    })
}

/// `2d / (2d − N)` when `2d > N`, via the isometric image in `{0,1}^N`.
pub fn plotkin_upper(n: usize, d: u64) -> Result<Option<BigRational>> {
    check_range(n, d)?;
    let diameter = max_distance(n);
    if 2 * d <= diameter {
        return Ok(None);
    }
    Ok(Some(BigRational::new(
        BigInt::from(2 * d),
        BigInt::from(2 * d - diameter),
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BchBound {
    /// `n! / 2^{t ⌈log₂(N+1)⌉}`, from a shortened binary BCH code.
    pub lower: BigRational,
    /// `n! / (N+1)^t`, exact only when `N + 1` is a power of two.
    pub idealized: BigRational,
    /// `⌈log₂(N+1)⌉`
    pub redundancy_per_error: u32,
}

/// Existence bound for a `t`-error-correcting code from cosets of a binary
/// BCH code of length `N = n(n−1)/2`. No codebook is produced.
pub fn bch_existence_lower(n: usize, t: u64) -> Result<BchBound> {
    if n < 2 {
        return Err(domain("need n >= 2"));
    }
    let diameter = max_distance(n);
    let redundancy_per_error = 64 - diameter.leading_zeros();
    let nf = factorial(n as u64);
    let t32 = u32::try_from(t).map_err(|_| domain("t too large"))?;
    let lower = ratio(
        nf.clone(),
        BigUint::one() << (redundancy_per_error as u64 * t),
    );
    let idealized = ratio(nf, BigUint::from(diameter + 1).pow(t32));
    Ok(BchBound {
        lower,
        idealized,
        redundancy_per_error,
    })
}

/// Every bound on `A(n, d)` for one `(n, d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub d: u64,
    pub t: u64,
    pub singleton_upper: BigUint,
    pub singleton_trivial: bool,
    pub sphere_upper: BigUint,
    pub l1_upper: BigUint,
    pub l1_upper_closed: BigRational,
    pub l1_upper_closed_clamped: bool,
    pub l1_upper_closed_valid: bool,
    pub plotkin_upper: Option<BigRational>,
    pub gilbert_lower: BigUint,
    /// `d` is even, so the greedy bound is the generalised form.
    pub gilbert_even_d: bool,
    pub l1_lower: BigUint,
    pub l1_lower_closed: BigRational,
    /// Error count the BCH bound is evaluated at: `⌈(d−1)/2⌉`, so `2t+1 >= d`.
    pub bch_t: u64,
    pub bch_lower: BigRational,
    pub bch_lower_idealized: BigRational,
    pub best_upper: BigUint,
    pub best_lower: BigUint,
    pub rate_lower: f64,
    pub rate_upper: f64,
}

pub fn bounds_report(n: usize, d: u64) -> Result<BoundsReport> {
    check_range(n, d)?;
    let singleton = singleton_upper(n, d)?;
    let sphere = sphere_upper(n, d)?;
    let l1_up = l1_upper(n, d)?;
    let closed = l1_closed_forms(n, d)?;
    let plotkin = plotkin_upper(n, d)?;
    let gilbert = gilbert_lower(n, d)?;
    let l1_lo = l1_lower(n, d)?;
    let bch_t = d / 2;
    let bch = bch_existence_lower(n, bch_t)?;

    let nf = factorial(n as u64);
    let mut uppers = vec![
        nf.clone(),
        singleton.value.clone(),
        sphere.clone(),
        l1_up.clone(),
    ];
    if let Some(p) = &plotkin {
        uppers.push(floor_of(p));
    }
    if closed.upper_valid && !closed.clamped {
        uppers.push(floor_of(&closed.upper));
    }
    let best_upper = uppers.into_iter().min().expect("nonempty");

    let best_lower = [
        BigUint::one(),
        gilbert.clone(),
        l1_lo.clone(),
        ceil_of(&closed.lower),
        ceil_of(&bch.lower),
    ]
    .into_iter()
    .max()
    .expect("nonempty");

    let ln_total = ln_big(&nf);
    Ok(BoundsReport {
        n,
        d,
        t: correctable_errors(d),
        singleton_upper: singleton.value,
        singleton_trivial: singleton.trivial,
        sphere_upper: sphere,
        l1_upper: l1_up,
        l1_upper_closed: closed.upper,
        l1_upper_closed_clamped: closed.clamped,
        l1_upper_closed_valid: closed.upper_valid,
        plotkin_upper: plotkin,
        gilbert_lower: gilbert,
        gilbert_even_d: d.is_multiple_of(2),
        l1_lower: l1_lo,
        l1_lower_closed: closed.lower,
        bch_t,
        bch_lower: bch.lower,
        bch_lower_idealized: bch.idealized,
        rate_lower: ln_big(&best_lower) / ln_total,
        rate_upper: ln_big(&best_upper) / ln_total,
        best_upper,
        best_lower,
    })
}

/// `p/q` with an explicit denominator even when it is 1.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl BoundsReport {
    /// Flat key/value view with a fixed key order. Integers are decimal,
    /// fractions are `p/q`, rates carry six fractional digits.
    pub fn to_record(&self) -> Vec<(&'static str, String)> {
        vec![
            ("n", self.n.to_string()),
            ("d", self.d.to_string()),
            ("t", self.t.to_string()),
            ("singleton_upper", self.singleton_upper.to_string()),
            ("singleton_trivial", self.singleton_trivial.to_string()),
            ("sphere_upper", self.sphere_upper.to_string()),
            ("l1_upper", self.l1_upper.to_string()),
            ("l1_upper_closed", format_rational(&self.l1_upper_closed)),
            (
                "l1_upper_closed_clamped",
                self.l1_upper_closed_clamped.to_string(),
            ),
            (
                "l1_upper_closed_valid",
                self.l1_upper_closed_valid.to_string(),
            ),
            (
                "plotkin_upper",
                self.plotkin_upper
                    .as_ref()
                    .map_or_else(|| "n/a".to_string(), format_rational),
            ),
            ("gilbert_lower", self.gilbert_lower.to_string()),
            ("gilbert_even_d", self.gilbert_even_d.to_string()),
            ("l1_lower", self.l1_lower.to_string()),
            ("l1_lower_closed", format_rational(&self.l1_lower_closed)),
            ("bch_t", self.bch_t.to_string()),
            ("bch_lower", format_rational(&self.bch_lower)),
            (
                "bch_lower_idealized",
                format_rational(&self.bch_lower_idealized),
            ),
            ("best_lower", self.best_lower.to_string()),
            ("best_upper", self.best_upper.to_string()),
            ("rate_lower", format!("{:.6}", self.rate_lower)),
            ("rate_upper", format!("{:.6}", self.rate_upper)),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.to_record()
                .into_iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn singleton_examples() {
        let s = singleton_upper(4, 4).unwrap();
        assert_eq!((s.value, s.trivial), (big(6), false));
        assert_eq!(singleton_upper(5, 5).unwrap().value, big(24));
        let s = singleton_upper(4, 3).unwrap();
        assert_eq!((s.value, s.trivial), (big(24), true));
    }

    #[test]
    fn singleton_matches_float_evaluation() {
        for n in 2..40usize {
            for d in n as u64..=max_distance(n) {
                let x = (n * (n - 1)) as f64 - 2.0 * d as f64 + 0.25;
                let k = (1.5 + x.sqrt()).floor() as u64;
                assert_eq!(
                    singleton_upper(n, d).unwrap().value,
                    factorial(k),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn sphere_and_gilbert_examples() {
        assert_eq!(sphere_upper(4, 3).unwrap(), big(6));
        assert_eq!(gilbert_lower(4, 3).unwrap(), big(3));
        for n in 2..7 {
            let nf = factorial(n as u64);
            assert_eq!(sphere_upper(n, 1).unwrap(), nf);
            assert_eq!(gilbert_lower(n, 1).unwrap(), nf);
        }
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_upper(4, 1).unwrap(), big(256));
        assert_eq!(l1_upper(3, 2).unwrap(), big(27));
        // Q(4,0..3) = 1,4,10,20 → 24 / (16·35) < 1
        assert_eq!(l1_lower(4, 2).unwrap(), big(1));
    }

    #[test]
    fn l1_closed_examples() {
        let c = l1_closed_forms(3, 2).unwrap();
        assert_eq!(c.lower, rat(6, 160));
        assert_eq!(c.upper, rat(27, 1));
        let c = l1_closed_forms(5, 1).unwrap();
        assert_eq!(c.upper, rat(3125, 1));
        let c = l1_closed_forms(4, 3).unwrap();
        assert!(c.lower <= rat(5, 1));
    }

    #[test]
    fn plotkin_examples() {
        assert_eq!(plotkin_upper(4, 4).unwrap(), Some(rat(4, 1)));
        assert_eq!(plotkin_upper(4, 3).unwrap(), None);
        assert_eq!(plotkin_upper(3, 3).unwrap(), Some(rat(2, 1)));
    }

    #[test]
    fn bch_examples() {
        let b = bch_existence_lower(5, 1).unwrap();
        assert_eq!(b.idealized, rat(120, 11));
        assert_eq!(b.lower, rat(120, 16));
        assert_eq!(bch_existence_lower(4, 1).unwrap().idealized, rat(24, 7));
        let b = bch_existence_lower(6, 0).unwrap();
        assert_eq!((b.lower.clone(), b.idealized), (rat(720, 1), rat(720, 1)));
    }

    #[test]
    fn report_examples() {
        let r = bounds_report(4, 3).unwrap();
        assert!(r.best_upper <= big(6));
        assert!(r.best_lower >= big(3));
        let r = bounds_report(3, 1).unwrap();
        assert_eq!(
            (r.best_lower.clone(), r.best_upper.clone()),
            (big(6), big(6))
        );
        assert!((r.rate_lower - 1.0).abs() < 1e-12);
        assert!(bounds_report(4, 7).is_err());
        assert!(bounds_report(4, 0).is_err());
    }

    #[test]
    fn record_formatting() {
        let rec = bounds_report(4, 4).unwrap().to_record();
        let get = |k: &str| rec.iter().find(|(key, _)| *key == k).unwrap().1.clone();
        assert_eq!(get("plotkin_upper"), "4/1");
        assert_eq!(get("singleton_upper"), "6");
        assert_eq!(get("rate_upper").split('.').nth(1).unwrap().len(), 6);
        let rec = bounds_report(4, 3).unwrap().to_record();
        assert_eq!(
            rec.iter().find(|(k, _)| *k == "plotkin_upper").unwrap().1,
            "n/a"
        );
    }
}
