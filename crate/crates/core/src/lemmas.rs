//! Executable checkers for the auxiliary lemmas and for the root set Phi
//! that controls the DDT row values of the Niho family.
//!
//! Each checker compares a stated criterion against brute force over the
//! field and returns whether the two agree; a `false` anywhere is a bug,
//! either here or in the source statement.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::niho::{gcd, NihoParams};

/// Lemma 1: for theta outside GF(2^m), x -> (x + conj(theta))/(x + theta)
/// maps GF(2^m) bijectively onto the unit circle minus {1}.
pub fn check_lemma1(ctx: &FieldCtx, theta: Elt) -> Result<bool> {
    if ctx.is_in_subfield(theta)? {
        return Err(Error::ThetaInSubfield(theta));
    }
    let theta_bar = ctx.conjugate(theta)?;
    let mut image = BTreeSet::new();
    for x in ctx.subfield_elements()? {
        // x + theta != 0 because theta is not in the subfield
        let v = ctx.mul(x ^ theta_bar, ctx.inv(x ^ theta)?);
        if v == 1 || !ctx.in_unit_circle(v)? || !image.insert(v) {
            return Ok(false);
        }
    }
    let m = ctx.m().expect("subfield access already checked");
    Ok(image.len() as u64 == 1u64 << m)
}

/// Lemma 2: x^2 + ax + b has two roots on the unit circle iff
/// b = a^(1 - 2^m) and Tr_1^m(b/a^2) = 1. Returns whether brute force
/// agrees. The trace here is the one down to F_2 from the half-degree
/// subfield: b = a^(1 - 2^m) forces b/a^2 = 1/a^(2^m + 1) into that
/// subfield, where the full-field absolute trace vanishes identically.
pub fn check_lemma2(ctx: &FieldCtx, a: Elt, b: Elt) -> Result<bool> {
    if a == 0 || b == 0 {
        return Err(Error::Parameter("lemma 2 needs nonzero a, b".into()));
    }
    let mut roots = 0u32;
    for v in ctx.unit_circle()? {
        if ctx.sqr(v) ^ ctx.mul(a, v) ^ b == 0 {
            roots += 1;
        }
    }
    let a_bar = ctx.conjugate(a)?;
    let criterion = b == ctx.mul(a, ctx.inv(a_bar)?)
        && ctx.subfield_trace(ctx.mul(b, ctx.inv(ctx.sqr(a))?))? == 1;
    Ok((roots == 2) == criterion)
}

/// Lemma 3: for gcd(r, n) = 1, x^(2^r) + x = a has 2 solutions iff
/// Tr(a) = 0 and none otherwise. Returns whether brute force agrees.
pub fn check_lemma3(ctx: &FieldCtx, r: u32, a: Elt) -> Result<bool> {
    let g = gcd(r as u64, ctx.n() as u64);
    if g != 1 {
        return Err(Error::GcdRn {
            r,
            n: ctx.n(),
            gcd: g,
        });
    }
    let frob = ctx.power_table(1u64 << r);
    let roots = ctx
        .elements()
        .filter(|&x| frob[x as usize] ^ x == a)
        .count();
    let expected = if ctx.trace_abs(a) == 0 { 2 } else { 0 };
    Ok(roots == expected)
}

/// Lemma 4: the splitting identity for x^(2^k + 1) + y^(2^k + 1). Evaluates
/// both sides directly; x = y degenerates to 0 = 0 (every summand carries a
/// positive power of x + y).
pub fn check_lemma4(ctx: &FieldCtx, k: u32, x: Elt, y: Elt) -> bool {
    assert!((1..=32).contains(&k));
    let pk = 1u64 << k;
    let lhs = ctx.pow(x, pk + 1) ^ ctx.pow(y, pk + 1);
    let sum = x ^ y;
    let prod = ctx.mul(x, y);
    let mut rhs = ctx.pow(sum, pk + 1);
    for i in 0..k {
        let e = pk - (1u64 << (i + 1)) + 1; // >= 1 for all i < k
        rhs ^= ctx.mul(ctx.pow(prod, 1u64 << i), ctx.pow(sum, e));
    }
    lhs == rhs
}

/// Lemma 5: Q(x) = x^(2^r + 1) + a x^(2^r) + b x + c has 0, 1, 2 or
/// 2^r0 + 1 roots, r0 = gcd(r, n); with three roots on the unit circle the
/// count there is 2^r1 + 1, r1 = gcd(r0, m), and the remaining circle roots
/// follow the three-point parameterization over F_(2^r1) \ F_2.
pub fn check_lemma5(ctx: &FieldCtx, r: u32, a: Elt, b: Elt, c: Elt) -> bool {
    let n = ctx.n();
    let r0 = gcd(r as u64, n as u64) as u32;
    let frob = ctx.power_table(1u64 << r);
    let roots: Vec<Elt> = ctx
        .elements()
        .filter(|&x| {
            let xr = frob[x as usize];
            ctx.mul(xr, x) ^ ctx.mul(a, xr) ^ ctx.mul(b, x) ^ c == 0
        })
        .collect();
    let allowed = [0, 1, 2, (1usize << r0) + 1];
    if !allowed.contains(&roots.len()) {
        return false;
    }
    let Some(m) = ctx.m() else { return true };
    let circle_roots: Vec<Elt> = roots
        .iter()
        .copied()
        .filter(|&x| ctx.in_unit_circle(x).unwrap_or(false))
        .collect();
    if circle_roots.len() < 3 {
        return true;
    }
    let r1 = gcd(r0 as u64, m as u64) as u32;
    if circle_roots.len() != (1usize << r1) + 1 {
        return false;
    }
    let (x0, x1, x2) = (circle_roots[0], circle_roots[1], circle_roots[2]);
    // F_(2^r1) sits inside GF(2^n) because r1 divides n
    let coeff_field: Vec<Elt> = ctx
        .elements()
        .filter(|&e| ctx.pow(e, 1u64 << r1) == e)
        .collect();
    // the denominator must not vanish for any A in F_(2^r1)
    for &aa in &coeff_field {
        if x0 ^ ctx.mul(aa, x1) ^ ctx.mul(aa ^ 1, x2) == 0 {
            return false;
        }
    }
    for &x in &circle_roots[3..] {
        let matched = coeff_field.iter().any(|&aa| {
            if aa <= 1 {
                return false; // parameterization runs over A outside F_2
            }
            let num =
                ctx.mul(x1, x2) ^ ctx.mul(aa, ctx.mul(x0, x2)) ^ ctx.mul(aa ^ 1, ctx.mul(x0, x1));
            let den = x0 ^ ctx.mul(aa, x1) ^ ctx.mul(aa ^ 1, x2);
            ctx.mul(num, ctx.inv(den).expect("den checked nonzero")) == x
        });
        if !matched {
            return false;
        }
    }
    true
}

/// The quartic coefficients of the root equation for a given output
/// difference b: c1 y^(E+1) + c2 y^E + c3 y + c4 with
/// c1 = b + conj(b)^(2^k), c2 = conj(b)^(2^k + 1) + 1,
/// c3 = b^(2^k + 1) + 1, c4 = b^(2^k) + conj(b).
pub fn root_equation_coeffs(
    ctx: &FieldCtx,
    k: u32,
    b: Elt,
) -> Result<[Elt; 4]> {
    let b_bar = ctx.conjugate(b)?;
    let pk = 1u64 << k;
    Ok([
        b ^ ctx.pow(b_bar, pk),
        ctx.pow(b_bar, pk + 1) ^ 1,
        ctx.pow(b, pk + 1) ^ 1,
        ctx.pow(b, pk) ^ b_bar,
    ])
}

/// The set Phi of unit-circle points driving DDT(1, b), for b != 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSet {
    pub b: Elt,
    pub members: BTreeSet<Elt>,
}

/// Membership filter shared by the two equation forms: y != 1,
/// y^(2^k) + b != 0, and y != z where z = (conj(b) y^(2^k) + 1)/(y^(2^k) + b).
fn phi_side_conditions(
    ctx: &FieldCtx,
    k: u32,
    b: Elt,
    y: Elt,
) -> Result<Option<Elt>> {
    if y == 1 {
        return Ok(None);
    }
    let yk = ctx.pow(y, 1u64 << k);
    if yk ^ b == 0 {
        return Ok(None);
    }
    let b_bar = ctx.conjugate(b)?;
    let z = ctx.mul(ctx.mul(b_bar, yk) ^ 1, ctx.inv(yk ^ b)?);
    if z == y {
        return Ok(None);
    }
    Ok(Some(z))
}

/// Computes Phi by sweeping the unit circle. Membership in the root
/// equation is tested through the elimination form of the defining system
/// (the involution partner z must solve the companion equation), which is
/// the quartic with Frobenius step 2^(2k); see `compare_root_equation_forms` for the
/// 2^k-step variant.
pub fn phi_set(ctx: &FieldCtx, params: &NihoParams, b: Elt) -> Result<PhiSet> {
    if b == 1 {
        return Err(Error::Parameter(
            "b = 1 is the subfield row; Phi is defined for b != 1".into(),
        ));
    }
    if ctx.n() != 2 * params.m {
        return Err(Error::Parameter(format!(
            "field degree {} does not match 2m = {}",
            ctx.n(),
            2 * params.m
        )));
    }
    if ctx.n() > 16 {
        return Err(Error::Parameter(
            "Phi sweeps the unit circle exhaustively; need 2m <= 16".into(),
        ));
    }
    let k = params.k;
    let [c1, c2, c3, c4] = root_equation_coeffs(ctx, k, b)?;
    let e = 1u64 << (2 * k); // Frobenius step 2^(2k)
    let mut members = BTreeSet::new();
    for y in ctx.unit_circle()? {
        if phi_side_conditions(ctx, k, b, y)?.is_none() {
            continue;
        }
        let ye = ctx.pow(y, e);
        let value =
            ctx.mul(c1, ctx.mul(ye, y)) ^ ctx.mul(c2, ye) ^ ctx.mul(c3, y) ^ c4;
        if value == 0 {
            members.insert(y);
        }
    }
    Ok(PhiSet { b, members })
}

/// Root sets of the quartic under its two printed exponent patterns,
/// restricted by the Phi side conditions, next to the defining two-equation
/// system as ground truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEquationComparison {
    /// Roots of the quartic with Frobenius step 2^k, the pattern shown in
    /// the theorem development.
    pub printed: BTreeSet<Elt>,
    /// Roots of the quartic with Frobenius step 2^(2k), the pattern the
    /// elimination actually produces.
    pub squared: BTreeSet<Elt>,
    /// y for which the partner z solves the companion equation
    /// (y + conj(b)) z^(2^k) + b y + 1 = 0.
    pub system: BTreeSet<Elt>,
}

impl RootEquationComparison {
    pub fn printed_matches_system(&self) -> bool {
        self.printed == self.system
    }

    pub fn squared_matches_system(&self) -> bool {
        self.squared == self.system
    }
}

/// Evaluates both exponent readings of the quartic against the
/// pre-substitution system, for one b.
pub fn compare_root_equation_forms(
    ctx: &FieldCtx,
    params: &NihoParams,
    b: Elt,
) -> Result<RootEquationComparison> {
    if b == 1 {
        return Err(Error::Parameter("b = 1 has no Phi".into()));
    }
    let k = params.k;
    let pk = 1u64 << k;
    let [c1, c2, c3, c4] = root_equation_coeffs(ctx, k, b)?;
    let b_bar = ctx.conjugate(b)?;
    let mut cmp = RootEquationComparison {
        printed: BTreeSet::new(),
        squared: BTreeSet::new(),
        system: BTreeSet::new(),
    };
    for y in ctx.unit_circle()? {
        let Some(z) = phi_side_conditions(ctx, k, b, y)? else {
            continue;
        };
        let quartic = |step: u64| {
            let ye = ctx.pow(y, step);
            ctx.mul(c1, ctx.mul(ye, y)) ^ ctx.mul(c2, ye) ^ ctx.mul(c3, y) ^ c4
        };
        if quartic(pk) == 0 {
            cmp.printed.insert(y);
        }
        if quartic(pk * pk) == 0 {
            cmp.squared.insert(y);
        }
        if ctx.mul(y ^ b_bar, ctx.pow(z, pk)) ^ ctx.mul(b, y) ^ 1 == 0 {
            cmp.system.insert(y);
        }
    }
    Ok(cmp)
}

/// Aggregated pass/fail tally for one checker over one field.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct LemmaTally {
    pub cases: u64,
    pub failures: u64,
}

impl LemmaTally {
    fn record(&mut self, ok: bool) {
        self.cases += 1;
        self.failures += u64::from(!ok);
    }
}

/// Lemma 1 over every theta outside the subfield. Even n only.
pub fn lemma1_suite(ctx: &FieldCtx) -> Result<LemmaTally> {
    let mut tally = LemmaTally::default();
    for theta in ctx.elements() {
        if !ctx.is_in_subfield(theta)? {
            tally.record(check_lemma1(ctx, theta)?);
        }
    }
    Ok(tally)
}

/// Lemma 2 over every nonzero pair (a, b). Even n only.
pub fn lemma2_suite(ctx: &FieldCtx) -> Result<LemmaTally> {
    let mut tally = LemmaTally::default();
    for a in ctx.elements().skip(1) {
        for b in ctx.elements().skip(1) {
            tally.record(check_lemma2(ctx, a, b)?);
        }
    }
    Ok(tally)
}

/// Lemma 3 over every a and every r < n coprime to n.
pub fn lemma3_suite(ctx: &FieldCtx) -> Result<LemmaTally> {
    let mut tally = LemmaTally::default();
    for r in 1..ctx.n() {
        if gcd(r as u64, ctx.n() as u64) != 1 {
            continue;
        }
        for a in ctx.elements() {
            tally.record(check_lemma3(ctx, r, a)?);
        }
    }
    Ok(tally)
}

/// Lemma 4 on seeded random (k, x, y) triples.
pub fn lemma4_suite(
    ctx: &FieldCtx,
    rng: &mut impl Rng,
    samples: u64,
) -> LemmaTally {
    let mut tally = LemmaTally::default();
    let size = ctx.order() as u32;
    for _ in 0..samples {
        let k = rng.gen_range(1..=12);
        let x = rng.gen_range(0..size);
        let y = rng.gen_range(0..size);
        tally.record(check_lemma4(ctx, k, x, y));
    }
    tally
}

/// Lemma 5 on seeded random (r, a, b, c) tuples.
pub fn lemma5_suite(
    ctx: &FieldCtx,
    rng: &mut impl Rng,
    samples: u64,
) -> LemmaTally {
    let mut tally = LemmaTally::default();
    let size = ctx.order() as u32;
    for _ in 0..samples {
        let r = rng.gen_range(1..=2 * ctx.n());
        let a = rng.gen_range(0..size);
        let b = rng.gen_range(0..size);
        let c = rng.gen_range(0..size);
        tally.record(check_lemma5(ctx, r, a, b, c));
    }
    tally
}
