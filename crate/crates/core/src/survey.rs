//! Exhaustive sweeps over the normalized Niho exponents: the coverage
//! experiment (every locally-APN s in [1, 2^m] is reached by the orbits of
//! the theorem-valid parameters) and the negative instances with
//! gcd(k, m) > 1.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::niho::{build_niho, exponent_orbit, gcd, inv_mod};
use crate::spectra::{diff_spectrum, is_locally_apn, DiffSpectrum, PowerFunction};

/// One row of the sweep, keyed by s.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurveyRow {
    pub s: u64,
    pub d: u64,
    pub delta: u64,
    pub locally_apn: bool,
    pub in_theorem_orbit: bool,
    /// s = 1 gives the linearized monomial x^(2^m); it is reported but
    /// cannot be locally-APN (its row is a single spike at b = 1).
    pub degenerate: bool,
}

/// Result of the coverage sweep for one m.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurveyReport {
    pub m: u32,
    pub rows: Vec<SurveyRow>,
    pub locally_apn_s: BTreeSet<u64>,
    pub theorem_orbit_s: BTreeSet<u64>,
    /// Set equality of the two sets above.
    pub covered: bool,
    /// Whether every orbit shares a single differential spectrum.
    pub orbit_spectra_consistent: bool,
    pub wall_seconds: f64,
}

/// Union of exponent orbits over the theorem-valid k for this m,
/// deduplicated by the resulting s (2^k mod 2^m + 1 has period 2m).
pub fn theorem_orbit_union(m: u32) -> BTreeSet<u64> {
    let mut union = BTreeSet::new();
    for k in 1..=2 * m {
        if let Ok(p) = build_niho(m, k) {
            union.extend(exponent_orbit(p.s, m));
        }
    }
    union
}

/// Sweeps every s in [1, 2^m] over GF(2^(2m)) and reports whether the
/// locally-APN set equals the theorem orbit union.
pub fn survey_niho(m: u32) -> Result<SurveyReport> {
    if !(2..=10).contains(&m) {
        return Err(Error::SurveyRange(m));
    }
    let started = Instant::now();
    let ctx = FieldCtx::new(2 * m)?;
    let orbit_union = theorem_orbit_union(m);
    let sub_order = (1u64 << m) - 1;

    let per_s: Vec<(SurveyRow, DiffSpectrum)> = (1..=(1u64 << m))
        .into_par_iter()
        .map(|s| {
            let d = s * sub_order + 1;
            let f = PowerFunction::new(&ctx, d).expect("1 <= d < 2^n - 1");
            let ds = diff_spectrum(&f);
            let row = SurveyRow {
                s,
                d,
                delta: ds.delta,
                locally_apn: is_locally_apn(&f),
                in_theorem_orbit: orbit_union.contains(&s),
                degenerate: s == 1,
            };
            (row, ds)
        })
        .collect();

    let spectra: BTreeMap<u64, DiffSpectrum> =
        per_s.iter().map(|(r, ds)| (r.s, ds.clone())).collect();
    let mut orbit_spectra_consistent = true;
    for k in 1..=2 * m {
        if let Ok(p) = build_niho(m, k) {
            let orbit = exponent_orbit(p.s, m);
            let mut it = orbit.iter().map(|s| &spectra[s]);
            let first = it.next().expect("orbit is nonempty");
            orbit_spectra_consistent &= it.all(|ds| ds == first);
        }
    }

    let rows: Vec<SurveyRow> = per_s.into_iter().map(|(r, _)| r).collect();
    let locally_apn_s: BTreeSet<u64> =
        rows.iter().filter(|r| r.locally_apn).map(|r| r.s).collect();
    let covered = locally_apn_s == orbit_union;
    Ok(SurveyReport {
        m,
        rows,
        locally_apn_s,
        theorem_orbit_s: orbit_union,
        covered,
        orbit_spectra_consistent,
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}

/// A gcd(k, m) > 1 instance with coprime 2^k + 1 and 2^m + 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Remark4Instance {
    pub m: u32,
    pub k: u32,
    pub s: u64,
    pub d: u64,
    pub locally_apn: bool,
}

/// Enumerates (m, k) with m <= limit_m, k < 2m, gcd(k, m) > 1 and
/// gcd(2^k + 1, 2^m + 1) = 1, and classifies each exponent by brute force.
/// The source experiments report none of them as locally-APN.
pub fn remark4_instances(limit_m: u32) -> Result<Vec<Remark4Instance>> {
    if limit_m > 8 {
        return Err(Error::Parameter(format!(
            "remark-4 enumeration capped at m <= 8, got {limit_m}"
        )));
    }
    let mut out = Vec::new();
    for m in 2..=limit_m {
        let ctx = FieldCtx::new(2 * m)?;
        let pm = (1u64 << m) + 1;
        for k in 1..2 * m {
            if gcd(k as u64, m as u64) <= 1 {
                continue;
            }
            let pk = ((1u64 << (k % (2 * m))) + 1) % pm;
            if gcd(pk, pm) != 1 {
                continue;
            }
            let s = inv_mod(pk, pm)?;
            let d = s * ((1u64 << m) - 1) + 1;
            let f = PowerFunction::new(&ctx, d)?;
            out.push(Remark4Instance {
                m,
                k,
                s,
                d,
                locally_apn: is_locally_apn(&f),
            });
        }
    }
    Ok(out)
}
