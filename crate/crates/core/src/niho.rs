//! Parameter validation and exponent construction for the Niho power
//! function family x^(s(2^m - 1) + 1) over GF(2^(2m)), s = (2^k + 1)^(-1)
//! modulo 2^m + 1.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated parameters (m, k, s, d) with d = s(2^m - 1) + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NihoParams {
    pub m: u32,
    pub k: u32,
    pub s: u64,
    pub d: u64,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The unique r in [1, modulus - 1] with a * r = 1 (mod modulus), by the
/// extended Euclidean algorithm.
pub fn inv_mod(a: u64, modulus: u64) -> Result<u64> {
    let g = gcd(a % modulus, modulus);
    if g != 1 {
        return Err(Error::NotCoprime { a, modulus, gcd: g });
    }
    let (mut r0, mut r1) = (modulus as i128, (a % modulus) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(t0.rem_euclid(modulus as i128) as u64)
}

/// Validates the gcd hypotheses and computes s and d.
pub fn build_niho(m: u32, k: u32) -> Result<NihoParams> {
    if m < 2 {
        return Err(Error::Parameter(format!("m = {m}, need m >= 2")));
    }
    if k < 1 {
        return Err(Error::Parameter("k must be positive".into()));
    }
    let g = gcd(k as u64, m as u64);
    if g != 1 {
        return Err(Error::GcdKm {
            m: m as u64,
            k: k as u64,
            gcd: g,
        });
    }
    let pm = (1u64 << m) + 1;
    // 2^k mod (2^m + 1) has period 2m in k, so reduce before forming 2^k + 1.
    let pk = pow_mod(2, (k % (2 * m)) as u64, pm) + 1;
    let g = gcd(pk % pm, pm);
    if g != 1 {
        return Err(Error::GcdPow {
            pk: (1u64.checked_shl(k).map(|v| v + 1)).unwrap_or(pk),
            pm,
            gcd: g,
        });
    }
    let s = inv_mod(pk % pm, pm)?;
    let d = s * ((1u64 << m) - 1) + 1;
    Ok(NihoParams { m, k, s, d })
}

fn pow_mod(mut base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while e != 0 {
        if e & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        e >>= 1;
    }
    acc
}

/// Whether gcd(2^k + 1, 2^m + 1) = 1, by the parity rule: the gcd is 1 iff
/// one of m/gcd(k, m) and k/gcd(k, m) is even.
pub fn gcd_criterion(m: u32, k: u32) -> bool {
    let g = gcd(k as u64, m as u64);
    (m as u64 / g).is_multiple_of(2) || (k as u64 / g).is_multiple_of(2)
}

/// Exponents known to share the differential spectrum of s: the conjugate
/// pair {s, 1 - s} always, extended by {s/(2s - 1), (s - 1)/(2s - 1)} when
/// 2s - 1 is invertible modulo 2^m + 1.
pub fn exponent_orbit(s: u64, m: u32) -> BTreeSet<u64> {
    let modulus = (1u64 << m) + 1;
    let s = s % modulus;
    let mut orbit = BTreeSet::new();
    orbit.insert(s);
    orbit.insert((modulus + 1 - s) % modulus);
    let t = (2 * s + modulus - 1) % modulus; // 2s - 1
    if let Ok(tinv) = inv_mod(t, modulus) {
        orbit.insert(s * tinv % modulus);
        orbit.insert((s + modulus - 1) % modulus * tinv % modulus);
    }
    orbit
}

/// Whether x^d permutes GF(2^(2m)): gcd(2s - 1, 2^m + 1) = 1.
pub fn is_permutation_exponent(params: &NihoParams) -> bool {
    let modulus = (1u64 << params.m) + 1;
    gcd((2 * params.s + modulus - 1) % modulus, modulus) == 1
}
