//! Exact arithmetic in GF(2^n) for 2 <= n <= 30.
//!
//! Elements are coefficient vectors in the polynomial basis, packed into a
//! `u32` (bit i = coefficient of x^i). Addition is XOR; multiplication is a
//! carryless shift-and-xor product reduced modulo an irreducible polynomial.
//! For even n the field contains GF(2^m), m = n/2, reachable through the
//! conjugation map x -> x^(2^m); the unit circle and polar decomposition
//! live in that setting.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A field element, packed coefficients of the polynomial basis.
pub type Elt = u32;

/// Lexicographically smallest irreducible monic polynomial per degree,
/// indexed by n - 2. Regenerated and re-verified by the test suite.
pub const DEFAULT_MODULI: [u64; 29] = [
    0x00000007, // n = 2
    0x0000000b, // n = 3
    0x00000013, // n = 4
    0x00000025, // n = 5
    0x00000043, // n = 6
    0x00000083, // n = 7
    0x0000011b, // n = 8
    0x00000203, // n = 9
    0x00000409, // n = 10
    0x00000805, // n = 11
    0x00001009, // n = 12
    0x0000201b, // n = 13
    0x00004021, // n = 14
    0x00008003, // n = 15
    0x0001002b, // n = 16
    0x00020009, // n = 17
    0x00040009, // n = 18
    0x00080027, // n = 19
    0x00100009, // n = 20
    0x00200005, // n = 21
    0x00400003, // n = 22
    0x00800021, // n = 23
    0x0100001b, // n = 24
    0x02000009, // n = 25
    0x0400001b, // n = 26
    0x08000027, // n = 27
    0x10000003, // n = 28
    0x20000005, // n = 29
    0x40000003, // n = 30
];

/// Degree of the smallest nontrivial monic factor of `p` (degree n), or
/// `None` if `p` is irreducible. Deterministic trial division.
pub fn smallest_factor_degree(p: u64, n: u32) -> Option<u32> {
    for deg in 1..=n / 2 {
        for q in (1u64 << deg)..(1u64 << (deg + 1)) {
            if poly_rem(p, q) == 0 {
                return Some(deg);
            }
        }
    }
    None
}

/// Remainder of polynomial division over GF(2).
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Lexicographically smallest irreducible monic polynomial of degree n.
pub fn smallest_irreducible(n: u32) -> u64 {
    ((1u64 << n)..(1u64 << (n + 1)))
        .find(|&p| smallest_factor_degree(p, n).is_none())
        .expect("an irreducible polynomial of every degree exists")
}

/// Discrete log/antilog tables over a generator of the multiplicative group.
struct LogTables {
    /// exp[i] = g^i for 0 <= i < 2^n - 1.
    exp: Vec<Elt>,
    /// log[x] = i with g^i = x, for x != 0. log[0] is unused.
    log: Vec<u32>,
}

/// An immutable GF(2^n) context. Safe to share across threads; every
/// operation is a pure function of (ctx, inputs).
pub struct FieldCtx {
    n: u32,
    modulus: u64,
    m: Option<u32>,
    tables: OnceLock<LogTables>,
}

impl FieldCtx {
    /// Builds GF(2^n) with the default (lexicographically smallest)
    /// irreducible modulus for the degree.
    pub fn new(n: u32) -> Result<FieldCtx> {
        if !(2..=30).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        Self::with_modulus(n, DEFAULT_MODULI[(n - 2) as usize])
    }

    /// Builds GF(2^n) with an explicit monic irreducible modulus.
    pub fn with_modulus(n: u32, modulus: u64) -> Result<FieldCtx> {
        if !(2..=30).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        if modulus >> n != 1 {
            return Err(Error::BadModulusDegree {
                expected: n,
                got: modulus,
            });
        }
        if let Some(factor_degree) = smallest_factor_degree(modulus, n) {
            return Err(Error::ReducibleModulus {
                modulus,
                factor_degree,
            });
        }
        Ok(FieldCtx {
            n,
            modulus,
            m: if n.is_multiple_of(2) { Some(n / 2) } else { None },
            tables: OnceLock::new(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Subfield degree m = n/2, present only for even n.
    pub fn m(&self) -> Option<u32> {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Field size 2^n.
    pub fn order(&self) -> u64 {
        1u64 << self.n
    }

    /// Multiplicative group order 2^n - 1.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.order() as Elt
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        a ^ b
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        let mut acc = 0u64;
        let mut a = a as u64;
        let mut b = b as u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            if a >> self.n != 0 {
                a ^= self.modulus;
            }
            b >>= 1;
        }
        acc as Elt
    }

    pub fn sqr(&self, a: Elt) -> Elt {
        self.mul(a, a)
    }

    /// a^e by square-and-multiply; the exponent is reduced modulo 2^n - 1
    /// for a nonzero base, and 0^e = 0 for e > 0, 0^0 = 1.
    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut e = e % self.group_order();
        let mut base = a;
        let mut acc: Elt = 1;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sqr(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, a^(2^n - 2).
    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Absolute trace Tr_1^n(a), in {0, 1}.
    pub fn trace_abs(&self, a: Elt) -> Elt {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.n {
            t ^= x;
            x = self.sqr(x);
        }
        debug_assert!(t <= 1);
        t
    }

    /// Conjugate over the subfield, a^(2^m). Requires even n.
    pub fn conjugate(&self, a: Elt) -> Result<Elt> {
        let m = self.m.ok_or(Error::OddDegree(self.n))?;
        Ok(self.pow(a, 1u64 << m))
    }

    /// Whether a lies in the subfield GF(2^m), i.e. conjugate(a) = a.
    pub fn is_in_subfield(&self, a: Elt) -> Result<bool> {
        Ok(self.conjugate(a)? == a)
    }

    /// Subfield trace Tr_1^m(a) for a in GF(2^m).
    pub fn subfield_trace(&self, a: Elt) -> Result<Elt> {
        let m = self.m.ok_or(Error::OddDegree(self.n))?;
        if !self.is_in_subfield(a)? {
            return Err(Error::NotInSubfield(a));
        }
        let mut t = 0;
        let mut x = a;
        for _ in 0..m {
            t ^= x;
            x = self.sqr(x);
        }
        debug_assert!(t <= 1);
        Ok(t)
    }

    /// Whether v lies on the unit circle, v^(2^m + 1) = 1.
    pub fn in_unit_circle(&self, v: Elt) -> Result<bool> {
        let m = self.m.ok_or(Error::OddDegree(self.n))?;
        if v == 0 {
            return Ok(false);
        }
        Ok(self.pow(v, (1u64 << m) + 1) == 1)
    }

    /// Unique factorization a = u * v with u in GF(2^m)* and v on the unit
    /// circle: u = sqrt(a * conj(a)) in the subfield, v = a / u.
    pub fn polar_decompose(&self, a: Elt) -> Result<(Elt, Elt)> {
        let m = self.m.ok_or(Error::OddDegree(self.n))?;
        if a == 0 {
            return Err(Error::ZeroDecompose);
        }
        let norm = self.mul(a, self.conjugate(a)?);
        // subfield square root: y -> y^(2^(m-1))
        let u = self.pow(norm, 1u64 << (m - 1));
        let v = self.mul(a, self.inv(u)?);
        Ok((u, v))
    }

    /// Elements of the subfield GF(2^m), in increasing bit order.
    pub fn subfield_elements(&self) -> Result<Vec<Elt>> {
        let m = self.m.ok_or(Error::OddDegree(self.n))?;
        let out: Vec<Elt> = self
            .elements()
            .filter(|&a| self.pow(a, 1u64 << m) == a)
            .collect();
        debug_assert_eq!(out.len(), 1 << m);
        Ok(out)
    }

    /// The unit circle mu_(2^m + 1), enumerated as powers of g^(2^m - 1)
    /// for a generator g of the multiplicative group.
    pub fn unit_circle(&self) -> Result<Vec<Elt>> {
        let m = self.m.ok_or(Error::OddDegree(self.n))?;
        let g = self.generator();
        let h = self.pow(g, (1u64 << m) - 1);
        let size = (1u64 << m) + 1;
        let mut out = Vec::with_capacity(size as usize);
        let mut v: Elt = 1;
        for _ in 0..size {
            out.push(v);
            v = self.mul(v, h);
        }
        debug_assert_eq!(v, 1);
        Ok(out)
    }

    /// Smallest generator of the multiplicative group, found by order test
    /// against the prime factors of 2^n - 1.
    pub fn generator(&self) -> Elt {
        let order = self.group_order();
        let primes = prime_factors(order);
        for g in 2..self.order() as Elt {
            if primes.iter().all(|&p| self.pow(g, order / p) != 1) {
                return g;
            }
        }
        unreachable!("GF(2^n)* is cyclic")
    }

    fn log_tables(&self) -> &LogTables {
        self.tables.get_or_init(|| {
            let order = self.group_order() as usize;
            let g = self.generator();
            let mut exp = Vec::with_capacity(order);
            let mut log = vec![0u32; self.order() as usize];
            let mut v: Elt = 1;
            for i in 0..order {
                exp.push(v);
                log[v as usize] = i as u32;
                v = self.mul(v, g);
            }
            LogTables { exp, log }
        })
    }

    /// Evaluation table of x^d over the whole field, via discrete logs for
    /// small fields and direct exponentiation otherwise.
    pub fn power_table(&self, d: u64) -> Vec<Elt> {
        let size = self.order() as usize;
        if self.n <= 20 {
            let order = self.group_order();
            let d = d % order;
            let t = self.log_tables();
            let mut out = vec![0 as Elt; size];
            out[0] = if d == 0 { 1 } else { 0 };
            for (x, slot) in out.iter_mut().enumerate().skip(1) {
                let e = (t.log[x] as u64 * d) % order;
                *slot = t.exp[e as usize];
            }
            out
        } else {
            (0..size).map(|x| self.pow(x as Elt, d)).collect()
        }
    }
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

/// Distinct prime factors by trial division; fine for 2^30 - 1.
fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}
