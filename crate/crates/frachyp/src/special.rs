//! Mittag-Leffler functions and their derivatives.
//!
//! The basic function
//!
//! ```text
//! E_α(z) = Σ_{l≥0} z^l / Γ(αl + 1)
//! ```
//!
//! generalizes the exponential (α = 1). The three-parameter family
//!
//! ```text
//! E^ρ_{α,γ}(z) = Σ_{l≥0} (ρ)_l z^l / (Γ(αl + γ) l!)
//! ```
//!
//! covers the two-parameter function (ρ = 1) and the derivatives of E_α
//! through d^k/dz^k E_α(z) = k! E^{k+1}_{α,1+αk}(z).
//!
//! Evaluation is by direct summation of the defining series. For small
//! arguments a compensated double-precision sum suffices; once the terms
//! peak near exp(|z|^{1/α}) the cancellation on and beyond the sector
//! boundary |arg z| = απ/2 destroys double precision, and the sum is
//! carried out in MPFR floats at a working precision chosen from the
//! predicted peak-to-result gap. Asymptotic expansions are used only as
//! test envelopes, never as the evaluation path.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rug::Float;

use crate::cfloat::CFloat;
use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, rgamma};

/// Default relative tolerance of the series evaluations.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-10;

/// A fractional time order α ∈ (0, 1).
///
/// The diffusion-wave order β ∈ (1, 2) enters through α = β/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    alpha: f64,
}

impl FractionalOrder {
    /// Construct from α; rejects values outside the open interval (0, 1).
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid(format!(
                "fractional order must satisfy 0 < alpha < 1, got {alpha}"
            )));
        }
        Ok(FractionalOrder { alpha })
    }

    /// Construct from a diffusion-wave order β ∈ (1, 2), setting α = β/2.
    pub fn from_beta(beta: f64) -> Result<Self> {
        if !(beta > 1.0 && beta < 2.0) {
            return Err(Error::invalid(format!(
                "diffusion-wave order must satisfy 1 < beta < 2, got {beta}"
            )));
        }
        FractionalOrder::new(beta / 2.0)
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }

    /// The associated diffusion-wave order β = 2α.
    pub fn beta(&self) -> f64 {
        2.0 * self.alpha
    }
}

/// Parameters (α, γ, ρ) of the generalized Mittag-Leffler function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    alpha: f64,
    gamma: f64,
    rho: f64,
}

impl MLParams {
    pub fn new(alpha: f64, gamma: f64, rho: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::invalid(format!("alpha must be > 0, got {alpha}")));
        }
        if !gamma.is_finite() {
            return Err(Error::invalid("gamma must be finite"));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::invalid(format!("rho must be > 0, got {rho}")));
        }
        Ok(MLParams { alpha, gamma, rho })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// E_α(z) at the default tolerance.
pub fn mittag_leffler(alpha: f64, z: Complex64) -> Result<Complex64> {
    mittag_leffler_gen(&MLParams::new(alpha, 1.0, 1.0)?, z)
}

/// E^ρ_{α,γ}(z) at the default tolerance.
pub fn mittag_leffler_gen(params: &MLParams, z: Complex64) -> Result<Complex64> {
    mittag_leffler_gen_tol(params, z, DEFAULT_RELATIVE_TOL)
}

/// d^k/dz^k E_α(z) = k! E^{k+1}_{α,1+αk}(z) at the default tolerance.
pub fn mittag_leffler_deriv(alpha: f64, k: u32, z: Complex64) -> Result<Complex64> {
    mittag_leffler_deriv_tol(alpha, k, z, DEFAULT_RELATIVE_TOL)
}

pub fn mittag_leffler_deriv_tol(alpha: f64, k: u32, z: Complex64, tol: f64) -> Result<Complex64> {
    if k > 170 {
        return Err(Error::Overflow); // k! alone exceeds f64
    }
    let params = MLParams::new(alpha, 1.0 + alpha * k as f64, (k + 1) as f64)?;
    let mut k_fact = 1.0f64;
    for j in 2..=k as u64 {
        k_fact *= j as f64;
    }
    let v = mittag_leffler_gen_tol(&params, z, tol)?;
    let scaled = v * k_fact;
    if !scaled.re.is_finite() || !scaled.im.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(scaled)
}

/// E^ρ_{α,γ}(z) to a caller-chosen relative tolerance.
pub fn mittag_leffler_gen_tol(params: &MLParams, z: Complex64, tol: f64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::invalid("z must be finite"));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::invalid(format!("tolerance out of range: {tol}")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(rgamma(params.gamma), 0.0));
    }

    if cancellation_gap(params, z) <= tol.ln() + 30.5 {
        if let Some(v) = try_sum_double(params, z, tol) {
            return Ok(v);
        }
    }
    // the internal target is two digits below the caller tolerance, so
    // the returned values sit comfortably inside it
    sum_extended(params, z, tol * 1e-2)
}

/// z^p on the principal branch, arg z ∈ (−π, π].
pub(crate) fn principal_power(z: Complex64, p: f64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    (z.ln() * p).exp()
}

/// Predicted ln(peak term / |sum|): the amount of cancellation the
/// summation has to absorb. The terms peak near exp(|z|^{1/α}); the sum
/// is exponentially large inside the sector |arg z| ≤ απ/2 and only
/// algebraically small outside it.
fn cancellation_gap(p: &MLParams, z: Complex64) -> f64 {
    let r = z.norm();
    let peak = r.powf(1.0 / p.alpha);
    let alg_floor = -p.rho * (1.0 + r).ln() - 8.0;
    let in_sector = z.arg().abs() <= p.alpha * PI / 2.0;
    let ln_sum_lo = if in_sector {
        let w = principal_power(z, 1.0 / p.alpha).re;
        let corr = -((1.0 - p.gamma).abs() / p.alpha) * (1.0 + r).ln()
            - ln_gamma(p.rho).abs()
            - 15.0;
        alg_floor.max(w + corr)
    } else {
        alg_floor
    };
    (peak - ln_sum_lo).max(0.0)
}

/// Compensated double-precision summation. Returns None when the
/// posterior error estimate fails the tolerance, signalling the caller
/// to redo the sum in extended precision.
fn try_sum_double(p: &MLParams, z: Complex64, tol: f64) -> Option<Complex64> {
    let l_cap = (((190.0 - p.gamma.min(0.0)) / p.alpha) as usize + 80).min(4000);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0); // Kahan compensation
    let mut c = Complex64::new(1.0, 0.0); // (ρ)_l z^l / l!
    let mut max_term = 0.0f64;
    let mut peak_l = 0usize;
    let mut small_run = 0u32;
    for l in 0..l_cap {
        if !c.re.is_finite() || !c.im.is_finite() || c.norm() > 1e290 {
            return None; // prefactor left the f64 range before Γ caught up
        }
        let term = c * rgamma(p.alpha * l as f64 + p.gamma);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let m = term.norm();
        if m > max_term {
            max_term = m;
            peak_l = l;
        }
        if m <= 0.125 * tol * sum.norm() && l > peak_l + 2 {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        c *= z * ((p.rho + l as f64) / (l as f64 + 1.0));
    }
    if small_run < 3 {
        return None;
    }
    let s = sum.norm();
    if !s.is_finite() || s > 1e306 {
        return None; // let the extended path decide on overflow
    }
    // posterior: peak term inaccuracy survives the cancellation
    if max_term * 2.5e-14 > 0.5 * tol * s.max(1e-290) {
        return None;
    }
    Some(sum)
}

// ---------------------------------------------------------------------------
// extended-precision path
// ---------------------------------------------------------------------------

const PREC_TIER: u32 = 256;
const PREC_MAX: u32 = 12_288;

#[derive(Hash, PartialEq, Eq, Clone, Copy)]
struct SeqKey {
    alpha_bits: u64,
    gamma_bits: u64,
    prec: u32,
}

type GammaCache = Mutex<HashMap<SeqKey, Arc<Vec<Float>>>>;

fn cache() -> &'static GammaCache {
    static CACHE: OnceLock<GammaCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Reciprocals 1/Γ(γ + αl) for l = 0..len at the given precision,
/// memoized per (α, γ, precision).
fn recip_gammas(alpha: f64, gamma: f64, prec: u32, len: usize) -> Arc<Vec<Float>> {
    let key = SeqKey {
        alpha_bits: alpha.to_bits(),
        gamma_bits: gamma.to_bits(),
        prec,
    };
    {
        let map = cache().lock().unwrap();
        if let Some(v) = map.get(&key) {
            if v.len() >= len {
                return Arc::clone(v);
            }
        }
    }
    let existing = {
        let map = cache().lock().unwrap();
        map.get(&key).cloned()
    };
    let start = existing.as_ref().map_or(0, |v| v.len());
    let fresh: Vec<Float> = (start..len)
        .into_par_iter()
        .map(|l| recip_gamma_at(alpha, gamma, prec, l))
        .collect();
    let mut combined = existing.map_or_else(Vec::new, |v| (*v).clone());
    combined.extend(fresh);
    let arc = Arc::new(combined);
    cache().lock().unwrap().insert(key, Arc::clone(&arc));
    arc
}

fn recip_gamma_at(alpha: f64, gamma: f64, prec: u32, l: usize) -> Float {
    let x = Float::with_val(prec, Float::with_val(prec, alpha) * (l as u64)) + gamma;
    if x <= 0.0 && x.is_integer() {
        return Float::new(prec); // pole of Γ: reciprocal is exactly 0
    }
    Float::with_val(prec, x.gamma_ref()).recip()
}

struct PrecPlan {
    prec: u32,
    initial_len: usize,
}

fn plan_precision(p: &MLParams, z: Complex64, tol: f64) -> PrecPlan {
    let peak = z.norm().powf(1.0 / p.alpha);
    let l_est = 2.4 * peak / p.alpha + 400.0;
    let bits =
        (cancellation_gap(p, z) + (1.0 / tol).ln() + l_est.ln()) / std::f64::consts::LN_2 + 72.0;
    let prec = ((bits / PREC_TIER as f64).ceil() as u32).max(1) * PREC_TIER;
    PrecPlan {
        prec: prec.min(PREC_MAX),
        initial_len: l_est as usize,
    }
}

fn sum_extended(p: &MLParams, z: Complex64, tol: f64) -> Result<Complex64> {
    let mut plan = plan_precision(p, z, tol);
    for _escalation in 0..3 {
        match sum_extended_at(p, z, tol, plan.prec, plan.initial_len) {
            Ok(SumOutcome::Value(v)) => return Ok(v),
            Ok(SumOutcome::NeedMorePrecision) => {
                if plan.prec >= PREC_MAX {
                    return Err(Error::NonConvergence { terms: 0 });
                }
                plan.prec = (plan.prec * 3 / 2).div_ceil(PREC_TIER) * PREC_TIER;
                plan.prec = plan.prec.min(PREC_MAX);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonConvergence { terms: 0 })
}

enum SumOutcome {
    Value(Complex64),
    NeedMorePrecision,
}

fn sum_extended_at(
    p: &MLParams,
    z: Complex64,
    tol: f64,
    prec: u32,
    len_hint: usize,
) -> Result<SumOutcome> {
    const L_HARD_CAP: usize = 200_000;
    let mut rg = recip_gammas(p.alpha, p.gamma, prec, len_hint.clamp(64, L_HARD_CAP));
    let zf = CFloat::from_c64(prec, z);
    let mut zpow = CFloat::from_c64(prec, Complex64::new(1.0, 0.0));
    let mut poch = Float::with_val(prec, 1.0); // (ρ)_l / l!
    let mut sum = CFloat::zero(prec);
    let mut max_exp: i64 = i64::MIN;
    // all magnitude bookkeeping works on MPFR bit exponents; term peaks
    // like exp(|z|^{1/α}) are far outside the double range
    let mut prev: Option<(i64, Float)> = None;
    let mut peak_l = 0usize;
    let mut decreasing_run = 0u32;
    let tol_log2 = tol.log2().floor() as i64;
    let mut l = 0usize;
    loop {
        if l >= rg.len() {
            if l >= L_HARD_CAP {
                return Err(Error::NonConvergence { terms: l });
            }
            rg = recip_gammas(p.alpha, p.gamma, prec, (rg.len() * 3 / 2).min(L_HARD_CAP));
        }
        let term = zpow.scale(&poch).scale(&rg[l]);
        sum.add_assign(&term);
        let ta = term.abs();
        if let Some(e) = ta.get_exp().map(|e| e as i64) {
            if e > max_exp {
                max_exp = e;
                peak_l = l;
            }
            if let Some((pe, pa)) = &prev {
                if e < *pe || (e == *pe && ta < *pa) {
                    decreasing_run += 1;
                } else {
                    decreasing_run = 0;
                }
                // geometric tail majorant once the terms decay steadily
                if l > peak_l + 3 && decreasing_run >= 3 {
                    let q = Float::with_val(53, &ta / pa).to_f64();
                    if q < 0.9 {
                        let sum_abs = sum.abs();
                        if let Some(se) = sum_abs.get_exp() {
                            let tail_exp = e + (q / (1.0 - q)).log2().ceil() as i64;
                            if tail_exp <= se as i64 + tol_log2 - 3 {
                                break;
                            }
                        }
                    }
                }
            }
            prev = Some((e, ta));
        } else if l > peak_l + 3 && max_exp > i64::MIN {
            // exact-zero terms (Γ poles) after the peak: treat as decay
            decreasing_run += 1;
            if decreasing_run >= 8 {
                break;
            }
        }
        poch *= Float::with_val(prec, p.rho + l as f64) / (l as f64 + 1.0);
        zpow = zpow.mul(&zf);
        l += 1;
    }
    // rounding certificate: accumulated roundoff on the peak terms must
    // stay below the tolerance relative to the achieved sum
    let sum_abs = sum.abs();
    let l_bits = (usize::BITS - l.leading_zeros()) as i64;
    let round_exp = max_exp + l_bits + 3 - prec as i64;
    let tol_exp = match sum_abs.get_exp() {
        Some(e) if !sum_abs.is_zero() => e as i64 + tol.log2().floor() as i64,
        _ => return Ok(SumOutcome::NeedMorePrecision),
    };
    if round_exp > tol_exp - 2 {
        return Ok(SumOutcome::NeedMorePrecision);
    }
    let v = sum.to_c64();
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(SumOutcome::Value(v))
}

// ---------------------------------------------------------------------------
// envelopes
// ---------------------------------------------------------------------------

/// Fitted constants of the derivative envelope; never taken from theory,
/// always calibrated on a sample by the test harness or caller.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeConstants {
    /// Multiplier of the sector-interior branch C·exp(ℜ z^{1/α}).
    pub c: f64,
    /// Multiplier of the exterior branch C_ε·(1+|z|)^{−k−1}.
    pub c_eps: f64,
}

impl Default for EnvelopeConstants {
    fn default() -> Self {
        EnvelopeConstants { c: 1.0, c_eps: 1.0 }
    }
}

/// The two-branch envelope dominating |d^k/dz^k E_α(z)|:
/// C·exp(ℜ z^{1/α}) for |arg z| ≤ απ/2, and C_ε·(1+|z|)^{−k−1} for
/// |arg z| > απ/2 + ε. Arguments in the transition band are rejected;
/// no bound is asserted there.
pub fn deriv_envelope(
    alpha: f64,
    k: u32,
    z: Complex64,
    eps: f64,
    consts: &EnvelopeConstants,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::invalid(format!("alpha out of range: {alpha}")));
    }
    if !(eps > 0.0) {
        return Err(Error::invalid("eps must be positive"));
    }
    let half_sector = alpha * PI / 2.0;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(consts.c); // exp(ℜ 0^{1/α}) = 1
    }
    let a = z.arg().abs();
    if a <= half_sector {
        Ok(consts.c * principal_power(z, 1.0 / alpha).re.exp())
    } else if a > half_sector + eps {
        Ok(consts.c_eps * (1.0 + z.norm()).powi(-(k as i32) - 1))
    } else {
        Err(Error::TransitionBand {
            lo: half_sector,
            hi: half_sector + eps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{ml_series_highprec, MlValue};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn order_construction_limits() {
        assert!(FractionalOrder::new(0.5).is_ok());
        assert!(FractionalOrder::new(0.0).is_err());
        assert!(FractionalOrder::new(1.0).is_err());
        assert!(FractionalOrder::new(-0.1).is_err());
        assert!(FractionalOrder::from_beta(1.5).unwrap().value() == 0.75);
        assert!(FractionalOrder::from_beta(2.0).is_err());
    }

    #[test]
    fn ml_at_zero_is_one() {
        assert_eq!(mittag_leffler(0.5, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        // general params: 1/Γ(γ)
        let p = MLParams::new(0.7, 2.0, 1.5).unwrap();
        let v = mittag_leffler_gen(&p, c(0.0, 0.0)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14 && v.im == 0.0);
    }

    #[test]
    fn alpha_one_reduces_to_exp() {
        for &z in &[c(2.0, 0.0), c(-3.0, 1.0), c(0.5, -7.0), c(15.0, 3.0)] {
            let v = mittag_leffler(1.0, z).unwrap();
            assert!(rel(v, z.exp()) < 1e-12, "z = {z}");
        }
        let v = mittag_leffler(1.0, c(2.0, 0.0)).unwrap();
        assert!((v.re - 7.389_056_098_930_65).abs() < 1e-10);
    }

    #[test]
    fn half_order_at_one_matches_erfc_form() {
        // E_{1/2}(1) = e·erfc(−1); erfc(−1) = 1 + erf(1) with erf(1)
        // summed from its Taylor series (independent of the ML code).
        let mut erf1 = 0.0f64;
        let mut term = 1.0f64;
        for n in 0..30 {
            erf1 += term / (2 * n + 1) as f64;
            term *= -1.0 / (n as f64 + 1.0);
        }
        erf1 *= 2.0 / PI.sqrt();
        let expected = 1.0f64.exp() * (1.0 + erf1);
        let v = mittag_leffler(0.5, c(1.0, 0.0)).unwrap();
        assert!((v.re - expected).abs() < 1e-10 * expected);
        assert!((v.re - 5.008_980_080_762_283).abs() < 1e-10);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn generalized_reduction_chain() {
        let p = MLParams::new(0.6, 1.0, 1.0).unwrap();
        for &z in &[c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 3.0)] {
            let a = mittag_leffler_gen(&p, z).unwrap();
            let b = mittag_leffler(0.6, z).unwrap();
            assert!(rel(a, b) < 1e-12);
        }
    }

    #[test]
    fn generalized_against_oracle() {
        let p = MLParams::new(0.7, 1.4, 2.0).unwrap();
        let z = c(-3.0, 0.0);
        let v = mittag_leffler_gen(&p, z).unwrap();
        match ml_series_highprec(&p, z, 1e-13).unwrap() {
            MlValue::Finite(w) => assert!(rel(v, w) < 1e-10, "{v} vs {w}"),
            MlValue::Overflow { .. } => panic!("unexpected overflow"),
        }
    }

    #[test]
    fn deep_cancellation_extended_path() {
        // α = 0.3 on the negative axis: term peak exp(8.5^{10/3}) ≈ e^1254
        // while the value is O(0.1); double precision cannot get near it.
        let p = MLParams::new(0.3, 1.0, 1.0).unwrap();
        let z = c(-8.5, 0.0);
        let v = mittag_leffler_gen_tol(&p, z, 1e-10).unwrap();
        match ml_series_highprec(&p, z, 1e-13).unwrap() {
            MlValue::Finite(w) => assert!(rel(v, w) < 1e-10, "{v} vs {w}"),
            MlValue::Overflow { .. } => panic!("unexpected overflow"),
        }
        assert!(v.re > 0.0 && v.re < 1.0);
    }

    #[test]
    fn overflow_is_distinct_from_nonconvergence() {
        // α = 0.3, z = 10: the value is ~exp(10^{10/3}) ≈ e^2154, far past
        // double range; the evaluation must say Overflow, not fail.
        match mittag_leffler(0.3, c(10.0, 0.0)) {
            Err(Error::Overflow) => {}
            other => panic!("expected Overflow, got {other:?}"),
        }
        // non-finite input is invalid, not overflow
        assert!(matches!(
            mittag_leffler(0.5, c(f64::NAN, 0.0)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn derivative_zeroth_is_identity() {
        let z = c(0.7, -0.4);
        let d0 = mittag_leffler_deriv(0.8, 0, z).unwrap();
        let e = mittag_leffler(0.8, z).unwrap();
        assert!(rel(d0, e) < 1e-12);
    }

    #[test]
    fn derivative_of_exponential_at_zero() {
        let d = mittag_leffler_deriv(1.0, 1, c(0.0, 0.0)).unwrap();
        assert!(rel(d, c(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        // central second difference at step h; the stencil values come
        // from the extended-precision oracle so that the h² amplification
        // of their errors stays far below the 1e-6 target
        let alpha = 0.7;
        let z = c(-3.0, 0.0);
        let h = 1e-5;
        let p = MLParams::new(alpha, 1.0, 1.0).unwrap();
        let f = |w: Complex64| {
            let (re, _) = crate::oracle::ml_series_highprec_float(&p, w, 1e-25).unwrap();
            re
        };
        let prec = 256;
        let num = rug::Float::with_val(prec, f(z + c(h, 0.0)) - 2.0 * f(z)) + f(z - c(h, 0.0));
        let d2 = num.to_f64() / (h * h);
        let v = mittag_leffler_deriv(alpha, 2, z).unwrap();
        assert!(v.im.abs() < 1e-12);
        assert!(
            (v.re - d2).abs() <= 1e-6 * d2.abs(),
            "{} vs finite difference {}",
            v.re,
            d2
        );
    }

    #[test]
    fn envelope_branches() {
        let consts = EnvelopeConstants { c: 2.0, c_eps: 3.0 };
        // positive real axis, α = 0.5: z^{1/α} = z² = 1
        let v = deriv_envelope(0.5, 0, c(1.0, 0.0), 0.1, &consts).unwrap();
        assert!((v - 2.0 * 1.0f64.exp()).abs() < 1e-12);
        // far outside the sector: algebraic branch
        let v = deriv_envelope(0.5, 0, c(-4.0, 0.0), 0.1, &consts).unwrap();
        assert!((v - 3.0 / 5.0).abs() < 1e-12);
        // transition band rejected
        let phi = 0.5 * PI / 2.0 + 0.05;
        let z = Complex64::from_polar(2.0, phi);
        assert!(matches!(
            deriv_envelope(0.5, 0, z, 0.1, &consts),
            Err(Error::TransitionBand { .. })
        ));
    }

    #[test]
    fn sector_decay_along_negative_axis() {
        // |E_α(z)|·|z| stays bounded along arg z = π (α = 0.5)
        let mut max_prod = 0.0f64;
        for i in 0..24 {
            let r = 1.0 * (50.0f64 / 1.0).powf(i as f64 / 23.0);
            let v = mittag_leffler(0.5, c(-r, 0.0)).unwrap();
            max_prod = max_prod.max(v.norm() * r);
        }
        assert!(max_prod.is_finite() && max_prod < 10.0, "max {max_prod}");
    }
}
