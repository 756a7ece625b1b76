//! Finite fields GF(p^k) of small order, backed by full operation tables.
//!
//! Element `x` encodes the polynomial `sum d_i t^i` where `d_i` is the i-th
//! base-p digit of `x` (constant term in the lowest digit). Element 0 is the
//! additive identity and element 1 the multiplicative identity.

use crate::error::{Error, Result};

/// Largest order `make_field` will build.
pub const MAX_FIELD_ORDER: u64 = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

pub fn is_prime(n: u32) -> bool {
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

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

/// Builds GF(p^k) with the first irreducible monic modulus in lexicographic
/// coefficient order, constant term compared first.
pub fn make_field(p: u32, k: u32) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidInput("extension degree must be at least 1".into()));
    }
    let q = (p as u64)
        .checked_pow(k)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(Error::FieldTooLarge {
            order: (p as u64).saturating_pow(k),
            cap: MAX_FIELD_ORDER,
        })? as usize;

    let modulus = first_irreducible(p, k as usize);
    let k_us = k as usize;

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a, p, k_us);
        for b in 0..q {
            let db = digits(b, p, k_us);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = undigits(&sum, p) as u8;
            let prod = poly_mulmod(&da, &db, &modulus, p);
            mul[a * q + b] = undigits(&prod, p) as u8;
        }
    }
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
        if a != 0 {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
        }
    }

    Ok(FiniteField {
        p,
        k,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
    })
}

/// The field of order `q`, or an error when `q` is not a prime power.
pub fn field_of_order(q: u64) -> Result<FiniteField> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, k)
}

impl FiniteField {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Coefficients of the modulus, constant term first, length `k + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.q {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: a,
                order: self.q,
            })
        }
    }

    pub fn add(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn mul(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inv(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv[a] as usize)
    }

    pub fn neg(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        Ok(self.neg[a] as usize)
    }

    #[inline]
    pub(crate) fn add_unchecked(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub(crate) fn inv_unchecked(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

fn digits(mut x: usize, p: u32, k: usize) -> Vec<u32> {
    let mut d = vec![0u32; k];
    for slot in d.iter_mut() {
        *slot = (x % p as usize) as u32;
        x /= p as usize;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

fn first_irreducible(p: u32, k: usize) -> Vec<u32> {
    let count = (p as usize).pow(k as u32);
    for idx in 0..count {
        // c0 is the most significant position of the enumeration.
        let mut coeffs = vec![0u32; k + 1];
        let mut rest = idx;
        for i in (0..k).rev() {
            coeffs[i] = (rest % p as usize) as u32;
            rest /= p as usize;
        }
        coeffs[k] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero residue mod a prime")
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = degree(m).expect("nonzero divisor");
    let lead_inv = inv_mod_p(m[dm], p);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            r[i + shift] = (r[i + shift] + p * p - factor * c % p) % p;
        }
    }
    r.truncate(dm.max(1));
    r.resize(dm.max(1), 0);
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(k, 0);
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let Some(deg) = degree(poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
