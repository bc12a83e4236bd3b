//! `GF(p^e)` with log/antilog tables.
//!
//! Elements are polynomials over `GF(p)` of degree below `e`, encoded as the
//! integer `Σ c_i p^i`. The modulus is the first monic irreducible polynomial
//! `x^e + Σ c_i x^i` in increasing order of that same encoding of its lower
//! coefficients, and the primitive element is the smallest encoded element of
//! full multiplicative order.

use crate::error::{cap, domain, Error, Result};

/// Largest field the tables are built for.
pub const FIELD_SIZE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    size: u32,
    /// low to high, monic, length `degree + 1`
    modulus: Vec<u32>,
    primitive: u32,
    /// `exp[k] = θ^k` for `k < size − 1`
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, e))` when `q = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Smallest prime power `>= lower` (and `>= 2`).
pub fn next_prime_power(lower: u64) -> u64 {
    (lower.max(2)..)
        .find(|&q| prime_power(q).is_some())
        .expect("prime powers are unbounded")
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomial remainder over `GF(p)` by a monic divisor. Coefficients low to high.
fn poly_rem_monic(mut a: Vec<u32>, divisor: &[u32], p: u32) -> Vec<u32> {
    let dd = divisor.len() - 1;
    while a.len() > dd {
        let lead = *a.last().expect("nonempty");
        let shift = a.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in divisor.iter().enumerate() {
                let idx = shift + i;
                a[idx] = ((a[idx] as u64 + p as u64 - (lead as u64 * c as u64) % p as u64)
                    % p as u64) as u32;
            }
        }
        a.pop();
    }
    a
}

fn decode_coeffs(mut index: u64, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let c = (index % p as u64) as u32;
            index /= p as u64;
            c
        })
        .collect()
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let degree = poly.len() - 1;
    for d in 1..=degree / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = decode_coeffs(low, p, d);
            divisor.push(1);
            if poly_rem_monic(poly.to_vec(), &divisor, p)
                .iter()
                .all(|&c| c == 0)
            {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(domain("extension degree must be at least 1"));
        }
        let size = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if size > FIELD_SIZE_CAP as u128 {
            return Err(cap("field size", format!("{p}^{degree}"), FIELD_SIZE_CAP));
        }
        let p32 = p as u32;
        let size = size as u32;
        let e = degree as usize;

        let modulus = (0..size as u64)
            .map(|low| {
                let mut m = decode_coeffs(low, p32, e);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p32))
            .ok_or_else(|| {
                Error::Internal(format!("no irreducible of degree {degree} over GF({p})"))
            })?;

        let mut field = FiniteField {
            p: p32,
            degree,
            size,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };

        let group_order = size as u64 - 1;
        let factors = distinct_prime_factors(group_order);
        let primitive = (1..size)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| field.pow_slow(g, group_order / r) != 1)
            })
            .ok_or_else(|| Error::Internal("no primitive element found".into()))?;
        field.primitive = primitive;

        let mut exp = Vec::with_capacity(group_order as usize);
        let mut log = vec![u32::MAX; size as usize];
        let mut x = 1u32;
        for k in 0..group_order as u32 {
            if log[x as usize] != u32::MAX {
                return Err(Error::Internal(format!(
                    "element {primitive} is not primitive"
                )));
            }
            exp.push(x);
            log[x as usize] = k;
            x = field.mul_slow(x, primitive);
        }
        if x != 1 {
            return Err(Error::Internal("θ^(q−1) != 1".into()));
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn coeffs(&self, x: u32) -> Vec<u32> {
        decode_coeffs(x as u64, self.p, self.degree as usize)
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64) as u32
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; ca.len() + cb.len() - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let rem = poly_rem_monic(prod, &self.modulus, self.p);
        let mut padded = rem;
        padded.resize(self.degree as usize, 0);
        self.encode(&padded)
    }

    fn pow_slow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements, `p^e`.
    pub fn size(&self) -> u64 {
        self.size as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed generator `θ` of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .map(|(&x, &y)| ((x as u64 + y as u64) % self.p as u64) as u32)
            .collect();
        self.encode(&sum)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k =
            (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.size as u64 - 1);
        self.exp[k as usize]
    }

    /// `θ^k`.
    pub fn antilog(&self, k: u64) -> u32 {
        self.exp[(k % (self.size as u64 - 1)) as usize]
    }

    /// Discrete logarithm base `θ`; `None` for zero.
    pub fn log(&self, x: u32) -> Option<u64> {
        if x == 0 || x >= self.size {
            None
        } else {
            Some(self.log[x as usize] as u64)
        }
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        match self.log(x) {
            None => {
                if k == 0 {
                    1
                } else {
                    0
                }
            }
            Some(l) => self.antilog((l as u128 * k as u128 % (self.size as u128 - 1)) as u64),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: u32) -> Option<u64> {
        let l = self.log(x)?;
        let group = self.size as u64 - 1;
        Some(group / num_integer::gcd(l, group))
    }
}
