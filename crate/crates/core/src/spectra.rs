//! Brute-force differential and boomerang spectra of power functions.
//!
//! For a power function x^d every DDT row is a rescaling of the row a = 1,
//! and likewise for the BCT, so all spectra here come from that single row.
//! The BCT row is computed inverse-free: the pair-counting system holds at
//! a = 1 exactly when D(x) = D(y) and b = F(x) + F(y), with
//! D(x) = F(x + 1) + F(x), so grouping x by D(x) and histogramming
//! F(x) + F(y) over within-fiber pairs yields the whole row.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};

/// Largest degree accepted by the quadratic-time naive BCT oracle.
pub const NAIVE_BCT_LIMIT: u32 = 12;

/// A power function x -> x^d over GF(2^n), materialized as its value table.
pub struct PowerFunction<'a> {
    ctx: &'a FieldCtx,
    d: u64,
    table: Vec<Elt>,
}

impl<'a> PowerFunction<'a> {
    /// Rejects exponents congruent to 0 modulo 2^n - 1 (constant on the
    /// nonzero elements, outside the scope of row-based spectra).
    pub fn new(ctx: &'a FieldCtx, d: u64) -> Result<PowerFunction<'a>> {
        if d == 0 || d.is_multiple_of(ctx.group_order()) {
            return Err(Error::DegenerateExponent(d));
        }
        let table = ctx.power_table(d);
        debug_assert_eq!(table[0], 0);
        debug_assert_eq!(table[1], 1);
        Ok(PowerFunction { ctx, d, table })
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ctx
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn eval(&self, x: Elt) -> Elt {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[Elt] {
        &self.table
    }
}

/// Differential spectrum: nonzero row-value frequencies and the uniformity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSpectrum {
    /// omega[i] = number of b with DDT(1, b) = i; only nonzero entries.
    #[serde(with = "crate::report::pairs")]
    pub omega: BTreeMap<u64, u64>,
    /// Differential uniformity: the largest i > 0 with omega[i] > 0.
    pub delta: u64,
}

impl DiffSpectrum {
    pub fn from_counts(omega: BTreeMap<u64, u64>) -> DiffSpectrum {
        let delta = *omega.keys().filter(|&&i| i > 0).max().unwrap_or(&0);
        DiffSpectrum { omega, delta }
    }
}

/// Boomerang spectrum: nonzero BCT row-value frequencies and the uniformity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoomSpectrum {
    /// nu[i] = number of b != 0 with BCT(1, b) = i; only nonzero entries.
    #[serde(with = "crate::report::pairs")]
    pub nu: BTreeMap<u64, u64>,
    /// Boomerang uniformity: the largest i > 0 with nu[i] > 0.
    pub beta: u64,
}

impl BoomSpectrum {
    pub fn from_counts(nu: BTreeMap<u64, u64>) -> BoomSpectrum {
        let beta = *nu.keys().filter(|&&i| i > 0).max().unwrap_or(&0);
        BoomSpectrum { nu, beta }
    }
}

/// The DDT row at a = 1: entry[b] = |{x : F(x) + F(x + 1) = b}|.
pub fn ddt_row(f: &PowerFunction) -> Vec<u32> {
    let mut row = vec![0u32; f.table.len()];
    for x in 0..f.table.len() {
        row[(f.table[x] ^ f.table[x ^ 1]) as usize] += 1;
    }
    row
}

/// Histogram of the DDT row.
pub fn diff_spectrum(f: &PowerFunction) -> DiffSpectrum {
    let mut omega = BTreeMap::new();
    for &c in &ddt_row(f) {
        *omega.entry(c as u64).or_insert(0) += 1;
    }
    DiffSpectrum::from_counts(omega)
}

/// Whether max{DDT(1, b) : b outside F_2} = 2.
pub fn is_locally_apn(f: &PowerFunction) -> bool {
    let row = ddt_row(f);
    row.iter()
        .enumerate()
        .filter(|&(b, _)| b > 1)
        .map(|(_, &c)| c)
        .max()
        .unwrap_or(0)
        == 2
}

/// Quadratic-time BCT oracle: counts pairs (x, y) solving the inverse-free
/// system F(x + a) + F(y + a) = b, F(x) + F(y) = b. Valid for
/// non-permutations; restricted to small fields.
pub fn bct_naive(f: &PowerFunction, a: Elt, b: Elt) -> Result<u64> {
    let n = f.ctx.n();
    if n > NAIVE_BCT_LIMIT {
        return Err(Error::FieldTooLarge {
            n,
            limit: NAIVE_BCT_LIMIT,
        });
    }
    if a == 0 || b == 0 {
        return Err(Error::Parameter("BCT is indexed by nonzero (a, b)".into()));
    }
    let t = &f.table;
    let size = t.len();
    let mut count = 0u64;
    for x in 0..size {
        for y in 0..size {
            if t[x ^ a as usize] ^ t[y ^ a as usize] == b && t[x] ^ t[y] == b {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The full naive BCT row at input difference a: one quadratic sweep over
/// all pairs (x, y), binning by b = F(x) + F(y) when the second equation
/// F(x + a) + F(y + a) = b also holds. Entry[0] is forced to 0 to match
/// `bct_fiber`; the spectrum is over nonzero b only.
pub fn bct_naive_row(f: &PowerFunction, a: Elt) -> Result<Vec<u64>> {
    let n = f.ctx.n();
    if n > NAIVE_BCT_LIMIT {
        return Err(Error::FieldTooLarge {
            n,
            limit: NAIVE_BCT_LIMIT,
        });
    }
    if a == 0 {
        return Err(Error::Parameter("BCT is indexed by nonzero (a, b)".into()));
    }
    let t = &f.table;
    let size = t.len();
    let a = a as usize;
    let mut row = vec![0u64; size];
    for x in 0..size {
        for y in 0..size {
            let b = t[x] ^ t[y];
            if t[x ^ a] ^ t[y ^ a] == b {
                row[b as usize] += 1;
            }
        }
    }
    row[0] = 0;
    Ok(row)
}

/// The full BCT row at a = 1 via fiber decomposition: entry[b] = BCT(1, b)
/// for b != 0; entry[0] is forced to 0 (the diagonal pairs land there and
/// the spectrum ranges over nonzero b only).
pub fn bct_fiber(f: &PowerFunction) -> Vec<u64> {
    let t = &f.table;
    let size = t.len();
    // group x by c = D(x); fibers kept as index lists
    let mut fibers: BTreeMap<Elt, Vec<u32>> = BTreeMap::new();
    for x in 0..size {
        fibers
            .entry(t[x] ^ t[x ^ 1])
            .or_default()
            .push(x as u32);
    }
    let mut row = vec![0u64; size];
    for members in fibers.values() {
        for &x in members {
            for &y in members {
                row[(t[x as usize] ^ t[y as usize]) as usize] += 1;
            }
        }
    }
    row[0] = 0;
    row
}

/// Histogram of the BCT row over b != 0.
pub fn boom_spectrum(f: &PowerFunction) -> BoomSpectrum {
    let row = bct_fiber(f);
    let mut nu = BTreeMap::new();
    for &c in &row[1..] {
        *nu.entry(c).or_insert(0) += 1;
    }
    BoomSpectrum::from_counts(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::niho::build_niho;

    fn spec(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn degenerate_exponent_rejected() {
        let f = FieldCtx::new(4).unwrap();
        assert!(PowerFunction::new(&f, 0).is_err());
        assert!(PowerFunction::new(&f, 15).is_err());
        assert!(PowerFunction::new(&f, 30).is_err());
    }

    #[test]
    fn ddt_row_x7_gf16() {
        let ctx = FieldCtx::new(4).unwrap();
        let f = PowerFunction::new(&ctx, 7).unwrap();
        let row = ddt_row(&f);
        assert_eq!(row[1], 4); // DDT(1, 1) = 2^m
        assert_eq!(row.iter().filter(|&&c| c == 2).count(), 6);
        assert_eq!(row.iter().map(|&c| c as u64).sum::<u64>(), 16);
    }

    #[test]
    fn ddt_row_linear() {
        let ctx = FieldCtx::new(6).unwrap();
        let f = PowerFunction::new(&ctx, 1).unwrap();
        let row = ddt_row(&f);
        assert_eq!(row[1], 64);
        assert_eq!(row.iter().map(|&c| c as u64).sum::<u64>(), 64);
    }

    #[test]
    fn ddt_row_entries_even_and_sum_to_field_size() {
        for n in [4u32, 5, 6, 7, 8] {
            let ctx = FieldCtx::new(n).unwrap();
            for d in 1..ctx.group_order() {
                let f = PowerFunction::new(&ctx, d).unwrap();
                let row = ddt_row(&f);
                assert!(row.iter().all(|&c| c % 2 == 0));
                assert_eq!(
                    row.iter().map(|&c| c as u64).sum::<u64>(),
                    ctx.order()
                );
            }
        }
    }

    #[test]
    fn diff_spectrum_examples() {
        let ctx = FieldCtx::new(4).unwrap();
        let ds = diff_spectrum(&PowerFunction::new(&ctx, 7).unwrap());
        assert_eq!(ds.omega, spec(&[(0, 9), (2, 6), (4, 1)]));
        assert_eq!(ds.delta, 4);

        let ctx = FieldCtx::new(6).unwrap();
        let ds = diff_spectrum(&PowerFunction::new(&ctx, 15).unwrap());
        assert_eq!(ds.omega, spec(&[(0, 35), (2, 28), (8, 1)]));
        assert_eq!(ds.delta, 8);

        // Gold exponent 3 is APN over GF(16)
        let ctx = FieldCtx::new(4).unwrap();
        let ds = diff_spectrum(&PowerFunction::new(&ctx, 3).unwrap());
        assert_eq!(ds.delta, 2);
    }

    #[test]
    fn diff_spectrum_identities() {
        for n in [4u32, 6, 8] {
            let ctx = FieldCtx::new(n).unwrap();
            for d in (1..ctx.group_order()).step_by(3) {
                let ds = diff_spectrum(&PowerFunction::new(&ctx, d).unwrap());
                let total: u64 = ds.omega.values().sum();
                let weighted: u64 =
                    ds.omega.iter().map(|(&i, &w)| i * w).sum();
                assert_eq!(total, ctx.order());
                assert_eq!(weighted, ctx.order());
            }
        }
    }

    #[test]
    fn locally_apn_examples() {
        let ctx = FieldCtx::new(4).unwrap();
        assert!(is_locally_apn(&PowerFunction::new(&ctx, 7).unwrap()));
        assert!(is_locally_apn(&PowerFunction::new(&ctx, 3).unwrap()));

        // Remark 4 instance: (m, k) = (4, 2), s = 7, d = 106
        let ctx = FieldCtx::new(8).unwrap();
        assert!(!is_locally_apn(&PowerFunction::new(&ctx, 106).unwrap()));
    }

    #[test]
    fn bct_naive_examples() {
        let ctx = FieldCtx::new(4).unwrap();
        let f = PowerFunction::new(&ctx, 7).unwrap();
        // b = 1 lies in F_4* but not in Omega_2, so BCT(1, 1) = 2^m
        assert_eq!(bct_naive(&f, 1, 1).unwrap(), 4);
        let mut histogram = BTreeMap::new();
        for b in 1..16u32 {
            *histogram
                .entry(bct_naive(&f, 1, b).unwrap())
                .or_insert(0u64) += 1;
        }
        assert_eq!(histogram, spec(&[(0, 8), (2, 4), (4, 1), (6, 2)]));

        // identity function: both equations collapse to x + y = b
        let id = PowerFunction::new(&ctx, 1).unwrap();
        assert_eq!(bct_naive(&id, 1, 3).unwrap(), 16);

        assert!(bct_naive(&f, 0, 1).is_err());
        let big = FieldCtx::new(14).unwrap();
        let g = PowerFunction::new(&big, 7).unwrap();
        assert!(matches!(
            bct_naive(&g, 1, 1),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn bct_fiber_matches_naive_small_fields() {
        for n in [4u32, 6] {
            let ctx = FieldCtx::new(n).unwrap();
            for d in 1..ctx.group_order() {
                if d % ctx.group_order() == 0 {
                    continue;
                }
                let f = PowerFunction::new(&ctx, d).unwrap();
                let fiber = bct_fiber(&f);
                for b in 1..ctx.order() as u32 {
                    assert_eq!(
                        fiber[b as usize],
                        bct_naive(&f, 1, b).unwrap(),
                        "n = {n}, d = {d}, b = {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn bct_naive_row_matches_per_entry_counts() {
        let ctx = FieldCtx::new(4).unwrap();
        for d in [3u64, 7, 9] {
            let f = PowerFunction::new(&ctx, d).unwrap();
            for a in 1..16u32 {
                let row = bct_naive_row(&f, a).unwrap();
                assert_eq!(row[0], 0);
                for b in 1..16u32 {
                    assert_eq!(row[b as usize], bct_naive(&f, a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn boom_spectrum_examples() {
        let ctx = FieldCtx::new(4).unwrap();
        let bs = boom_spectrum(&PowerFunction::new(&ctx, 7).unwrap());
        assert_eq!(bs.nu, spec(&[(0, 8), (2, 4), (4, 1), (6, 2)]));
        assert_eq!(bs.beta, 6);

        let bs = boom_spectrum(&PowerFunction::new(&ctx, 1).unwrap());
        assert_eq!(bs.nu, spec(&[(16, 15)]));

        let ctx = FieldCtx::new(6).unwrap();
        let bs = boom_spectrum(&PowerFunction::new(&ctx, 15).unwrap());
        assert_eq!(bs.nu, spec(&[(0, 32), (2, 24), (8, 4), (10, 3)]));

        let ctx = FieldCtx::new(8).unwrap();
        let bs = boom_spectrum(&PowerFunction::new(&ctx, 91).unwrap());
        assert_eq!(bs.nu, spec(&[(0, 128), (2, 112), (16, 7), (18, 8)]));
    }

    #[test]
    fn boom_spectrum_sums_over_nonzero_b() {
        for n in [4u32, 6, 8] {
            let ctx = FieldCtx::new(n).unwrap();
            for d in (1..ctx.group_order()).step_by(5) {
                let bs = boom_spectrum(&PowerFunction::new(&ctx, d).unwrap());
                assert_eq!(bs.nu.values().sum::<u64>(), ctx.order() - 1);
            }
        }
    }

    #[test]
    fn fiber_structure_of_the_niho_family() {
        for (m, k) in [(2u32, 1u32), (3, 2), (4, 1), (5, 2)] {
            let p = build_niho(m, k).unwrap();
            let ctx = FieldCtx::new(2 * m).unwrap();
            let f = PowerFunction::new(&ctx, p.d).unwrap();
            let mut fibers: BTreeMap<Elt, Vec<Elt>> = BTreeMap::new();
            for x in ctx.elements() {
                fibers
                    .entry(f.eval(x) ^ f.eval(x ^ 1))
                    .or_default()
                    .push(x);
            }
            for (c, members) in &fibers {
                if members.len() == 2 {
                    assert_eq!(members[0] ^ members[1], 1, "fiber of {c:#x}");
                }
            }
            assert_eq!(
                fibers[&1],
                ctx.subfield_elements().unwrap(),
                "(m, k) = ({m}, {k})"
            );
        }
    }
}
