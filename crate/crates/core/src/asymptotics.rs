//! The limiting distribution of normalized Fekete values at arc midpoints.
//!
//! The twisted midpoint values `(-1)^k H_p((2k+1)/(2p)) / sqrt(p)`
//! equidistribute, as `p` grows, according to a law whose cumulative
//! distribution function is
//!
//! ```text
//! c(delta) = 1/2 + (1/pi) * int_0^inf sin(delta pi x) C(x) / x dx,
//! C(x) = prod_{k >= 0} cos^2(2x / (2k + 1)).
//! ```
//!
//! This module evaluates `C` with certified truncation ([`c_product`]),
//! integrates the distribution function ([`c_delta`]), and measures the
//! empirical counterpart on a concrete prime
//! ([`empirical_midpoint_fraction`]).

use crate::error::{Error, Result};
use crate::numtheory::Prime;
use crate::poly::fekete;
use crate::sum::NeumaierSum;
use num_complex::Complex64;
use std::cell::Cell;
use std::f64::consts::PI;

/// Largest admissible `|x|` for [`c_product`] and `|delta|` for
/// [`c_delta`]. Keeps the adaptive truncation depth bounded.
const MAX_ARGUMENT: f64 = 1.0e4;

/// Evaluate the cosine product `C(x) = prod_{k>=0} cos^2(2x/(2k+1))` with
/// absolute error below `tol` (`tol` in `[1e-13, 1e-2]`).
///
/// The product is truncated at an index `K` with `2x/(2K+1) <= 1/20`; the
/// discarded factors are restored analytically through
/// `-2 ln cos u = u^2 + u^4/6 + 2u^6/45 + O(u^8)`, whose tail sums reduce
/// to the exact odd zeta values `sum (2k+1)^{-2} = pi^2/8`,
/// `sum (2k+1)^{-4} = pi^4/96`, `sum (2k+1)^{-6} = pi^6/960`. `K` doubles
/// from `max(64, ceil(20 x))` until the rigorous remainder bound
/// `0.3 x^8 (2K+1)^{-7}` (the `u^8` envelope of the discarded series)
/// drops below `tol / 4`.
pub fn c_product(x: f64, tol: f64) -> Result<f64> {
    c_product_with_truncation(x, tol).map(|(v, _)| v)
}

/// [`c_product`] returning the truncation index actually used.
pub fn c_product_with_truncation(x: f64, tol: f64) -> Result<(f64, usize)> {
    if !x.is_finite() || x.abs() > MAX_ARGUMENT {
        return Err(Error::Domain(format!(
            "argument must be finite with |x| <= {MAX_ARGUMENT:e}, got {x}"
        )));
    }
    if !(1.0e-13..=1.0e-2).contains(&tol) {
        return Err(Error::Domain(format!(
            "tolerance must lie in [1e-13, 1e-2], got {tol}"
        )));
    }
    let x = x.abs();
    if x == 0.0 {
        return Ok((1.0, 0));
    }

    let mut k_cut = (20.0 * x).ceil().max(64.0) as usize;
    while 0.3 * x.powi(8) * (2.0 * k_cut as f64 + 1.0).powi(-7) >= tol / 4.0 {
        k_cut *= 2;
    }

    let mut product = 1.0f64;
    let mut s2 = NeumaierSum::new();
    let mut s4 = NeumaierSum::new();
    let mut s6 = NeumaierSum::new();
    for k in 0..=k_cut {
        let odd = 2.0 * k as f64 + 1.0;
        let c = (2.0 * x / odd).cos();
        product *= c * c;
        if product == 0.0 {
            return Ok((0.0, k_cut));
        }
        let inv2 = 1.0 / (odd * odd);
        s2.add(inv2);
        s4.add(inv2 * inv2);
        s6.add(inv2 * inv2 * inv2);
    }
    let t2 = (PI * PI / 8.0 - s2.value()).max(0.0);
    let t4 = (PI.powi(4) / 96.0 - s4.value()).max(0.0);
    let t6 = (PI.powi(6) / 960.0 - s6.value()).max(0.0);
    let neg_log_tail =
        4.0 * x * x * t2 + (8.0 / 3.0) * x.powi(4) * t4 + (128.0 / 45.0) * x.powi(6) * t6;
    Ok((product * (-neg_log_tail).exp(), k_cut))
}

/// Rigorous decreasing envelope for the cosine product: dropping the
/// factors with `2x/(2k+1) > pi/4` and using `ln cos^2 u <= -u^2` on the
/// rest gives `C(x) <= exp(-x^2 / (4x/pi + 1))` for all `x > 0`.
fn envelope(x: f64) -> f64 {
    (-x * x / (4.0 * x / PI + 1.0)).exp()
}

/// Result of a distribution-function evaluation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CdeltaResult {
    pub delta: f64,
    /// `c(delta)`, accurate to about `quad_tol`.
    pub value: f64,
    /// Largest cosine-product truncation index used across quadrature
    /// nodes.
    pub truncation_k: usize,
    /// Upper integration limit; the discarded tail is below `quad_tol/4`
    /// by the product envelope.
    pub cutoff_x: f64,
    pub quad_tol: f64,
}

/// Evaluate `c(delta) = 1/2 + (1/pi) int_0^inf sin(delta pi x) C(x)/x dx`
/// to absolute accuracy about `quad_tol` (`quad_tol` in `[1e-12, 1e-2]`,
/// `delta` nonzero with `|delta| <= 1e4`).
///
/// The integrand extends continuously with value `delta pi` at `x = 0`.
/// The infinite range is cut at the smallest whole `X >= 4` whose envelope
/// tail bound `exp(-g X) / (pi X g)`, `g = X/(4X/pi + 1)`, is below
/// `quad_tol / 4`; the remainder is integrated by adaptive Simpson
/// quadrature on segments split at the sign changes `x = n / |delta|` of
/// the sine factor.
pub fn c_delta(delta: f64, quad_tol: f64) -> Result<CdeltaResult> {
    if !delta.is_finite() || delta == 0.0 || delta.abs() > MAX_ARGUMENT {
        return Err(Error::Domain(format!(
            "delta must be finite, nonzero, and at most {MAX_ARGUMENT:e} in modulus, got {delta}"
        )));
    }
    if !(1.0e-12..=1.0e-2).contains(&quad_tol) {
        return Err(Error::Domain(format!(
            "quadrature tolerance must lie in [1e-12, 1e-2], got {quad_tol}"
        )));
    }

    let mut cutoff = 4.0f64;
    loop {
        // For x >= X the envelope decays at least as fast as e^{-g x} with
        // g = X/(4X/pi + 1), so the discarded integral is below
        // envelope(X) / (pi X g).
        let g = cutoff / (4.0 * cutoff / PI + 1.0);
        if envelope(cutoff) / (PI * cutoff * g) < quad_tol / 4.0 {
            break;
        }
        cutoff += 1.0;
    }

    let product_tol = (quad_tol * 1.0e-2).max(1.0e-13);
    let max_k = Cell::new(0usize);
    let mut integrand = |x: f64| -> Result<f64> {
        if x == 0.0 {
            return Ok(delta * PI);
        }
        let (c, k) = c_product_with_truncation(x, product_tol)?;
        max_k.set(max_k.get().max(k));
        Ok((delta * PI * x).sin() * c / x)
    };

    // Segment boundaries: sign changes of sin(delta pi x) interior to
    // [0, X], then X itself.
    let period = 1.0 / delta.abs();
    let mut bounds = vec![0.0f64];
    let mut n = 1.0f64;
    while n * period < cutoff {
        bounds.push(n * period);
        n += 1.0;
    }
    bounds.push(cutoff);

    let mut integral = NeumaierSum::new();
    for w in bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        let budget = 0.5 * PI * quad_tol * (b - a) / cutoff;
        let fa = integrand(a)?;
        let fm = integrand(0.5 * (a + b))?;
        let fb = integrand(b)?;
        integral.add(adaptive_simpson(&mut integrand, a, b, fa, fm, fb, budget, 40)?);
    }

    Ok(CdeltaResult {
        delta,
        value: 0.5 + integral.value() / PI,
        truncation_k: max_k.get(),
        cutoff_x: cutoff,
        quad_tol,
    })
}

/// One level of adaptive Simpson refinement: accept when the two-panel
/// refinement moves the estimate by at most `15 * budget`, else recurse
/// with half the budget per half. Plain Richardson termination; depth is
/// capped to keep pathological integrands from recursing forever.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    budget: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let refined = left + right;
    if depth == 0 || (refined - whole).abs() <= 15.0 * budget {
        return Ok(refined + (refined - whole) / 15.0);
    }
    let l = adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * budget, depth - 1)?;
    let r = adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * budget, depth - 1)?;
    Ok(l + r)
}

/// Empirical midpoint-distribution record for one prime.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MidpointFraction {
    pub p: u64,
    pub delta: f64,
    /// Number of `k` in `0..p` with twisted value strictly below
    /// `delta sqrt(p)`.
    pub below: usize,
    /// Values within `1e-9 sqrt(p)` of the threshold (near-ties the
    /// strict comparison may misclassify).
    pub ties: usize,
    /// `below / p`.
    pub fraction: f64,
}

/// Fraction of arc midpoints whose twisted value
/// `(-1)^k H_p((2k+1)/(2p))` lies strictly below `delta sqrt(p)`. As `p`
/// grows this converges to `c(delta)` from [`c_delta`].
///
/// The twists are applied in closed form — `e^{-i pi p t}` at
/// `t = (2k+1)/(2p)` is exactly `(-1)^k (-i)` — so the only numerical
/// content is the polynomial evaluation itself; imaginary leakage above
/// `1e-8 sqrt(p)` is rejected. Requires `p >= 100` (the regime the
/// distribution statement concerns) and finite `delta`.
pub fn empirical_midpoint_fraction(p: Prime, delta: f64) -> Result<MidpointFraction> {
    if p.get() < 100 {
        return Err(Error::Domain(format!(
            "midpoint distribution needs p >= 100, got {p}"
        )));
    }
    if !delta.is_finite() {
        return Err(Error::Domain("delta must be finite".into()));
    }
    let pn = p.index();
    let grid = fekete(p).eval_roots_of_unity(pn, PI)?;
    let sqrt_p = (p.get() as f64).sqrt();
    let threshold = delta * sqrt_p;
    let one_mod_four = p.is_one_mod_four();

    let mut below = 0usize;
    let mut ties = 0usize;
    for (k, v) in grid.values.iter().enumerate() {
        // e^{-i pi p t} at t = (2k+1)/(2p) is exactly (-1)^k (-i), so the
        // twist already carries the (-1)^k the statistic divides back out:
        // (-1)^k H_p(t_k) = -i f_p(z_k) for p = 1 (mod 4), and the extra
        // -i of the realization turns that into -f_p(z_k) for
        // p = 3 (mod 4).
        let value = if one_mod_four {
            v * Complex64::new(0.0, -1.0)
        } else {
            -v
        };
        if value.im.abs() >= 1e-8 * sqrt_p {
            return Err(Error::Numerical(format!(
                "imaginary leakage {:.3e} at midpoint {k} exceeds 1e-8 sqrt(p)",
                value.im.abs()
            )));
        }
        if value.re < threshold {
            below += 1;
        }
        if (value.re - threshold).abs() <= 1e-9 * sqrt_p {
            ties += 1;
        }
    }
    Ok(MidpointFraction {
        p: p.get(),
        delta,
        below,
        ties,
        fraction: below as f64 / pn as f64,
    })
}
