//! Zeros and sign structure of Fekete polynomials on the unit circle.
//!
//! Everything here works through the real renormalization
//!
//! ```text
//! H_p(t) = e^{-i pi p t} f_p(e^{2 pi i t})          for p = 1 (mod 4)
//! H_p(t) = -i e^{-i pi p t} f_p(e^{2 pi i t})       for p = 3 (mod 4)
//! ```
//!
//! which is real-valued with `|H_p(t)| = |f_p(e^{2 pi i t})|`, so zeros of
//! `H_p` in `t` in `[0, 1)` are exactly the unit-circle zeros of `f_p`. At
//! the rational points `k/p` it takes the closed form
//! `H_p(k/p) = (-1)^k (k|p) sqrt(p)`: consecutive equal Legendre symbols
//! force a sign change, which yields at least `(p-3)/2` zeros and is the
//! engine behind both the zero counter and the arc classifier.
//!
//! `H_p` has two independent evaluation routes — the defining cosine/sine
//! sum `2 sum_{a <= (p-1)/2} (a|p) cos((2a - p) pi t)` (sine for
//! `p = 3 (mod 4)`) and the complex route through `f_p` — and the grid
//! builder checks one against the other.

use crate::error::{Error, Result};
use crate::numtheory::{legendre_table, Prime};
use crate::poly::fekete;
use crate::sum::{compensated_sum, NeumaierSum};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Zero-detection threshold on grids: `|H| < 1e-8 sqrt(p)` is treated as a
/// zero sitting on the node.
const NODE_ZERO_TOL: f64 = 1e-8;

/// Imaginary leakage allowed when realizing `H_p` through the complex
/// route, relative to `sqrt(p)`.
const IMAG_TOL: f64 = 1e-8;

/// Evaluator for `H_p` carrying the per-prime symbol table.
///
/// [`h_eval`] is the one-shot convenience wrapper; loops that evaluate
/// many points (bisection refinement) build one of these once.
pub struct HFunction {
    p: Prime,
    /// `(a|p)` for `a = 1 ..= (p-1)/2`.
    half_symbols: Vec<f64>,
    one_mod_four: bool,
}

impl HFunction {
    pub fn new(p: Prime) -> Self {
        let table = legendre_table(p);
        let half = (p.index() - 1) / 2;
        Self {
            p,
            half_symbols: (1..=half).map(|a| f64::from(table[a])).collect(),
            one_mod_four: p.is_one_mod_four(),
        }
    }

    /// `H_p(t)` from the real cosine/sine sum; `t` is taken mod 1.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.rem_euclid(1.0);
        let pf = self.p.get() as f64;
        let mut acc = NeumaierSum::new();
        for (idx, &s) in self.half_symbols.iter().enumerate() {
            let a = (idx + 1) as f64;
            let phase = (2.0 * a - pf) * PI * t;
            acc.add(s * if self.one_mod_four { phase.cos() } else { phase.sin() });
        }
        2.0 * acc.value()
    }

    pub fn prime(&self) -> Prime {
        self.p
    }
}

/// `H_p(t)` by the real route. One-shot: builds the symbol table per call.
pub fn h_eval(p: Prime, t: f64) -> f64 {
    HFunction::new(p).eval(t)
}

/// `H_p` sampled on the uniform grid `t_j = j / (N p)`.
#[derive(Debug, Clone)]
pub struct HGrid {
    /// The prime.
    pub p: Prime,
    /// Nodes per `1/p` period: the grid has `N p` values.
    pub refinement: usize,
    /// `values[j] = H_p(j / (N p))`.
    pub values: Vec<f64>,
    /// Threshold below which a grid value counts as a node zero:
    /// `1e-8 sqrt(p)`.
    pub tol_zero: f64,
}

/// Build the `H_p` grid through the complex route (fast for large `N p`).
///
/// Construction verifies both type invariants: imaginary leakage below
/// `1e-8 sqrt(p)` at every node, and the closed form
/// `H_p(k/p) = (-1)^k (k|p) sqrt(p)` at every multiple of `1/p`.
/// Violations are reported as [`Error::Numerical`].
pub fn h_grid(p: Prime, refinement: usize) -> Result<HGrid> {
    if refinement < 2 {
        return Err(Error::Domain(format!(
            "refinement must be at least 2, got {refinement}"
        )));
    }
    let n = refinement;
    let m = n * p.index();
    let grid = fekete(p).eval_roots_of_unity(m, 0.0)?;
    let sqrt_p = (p.get() as f64).sqrt();

    // Twist e^{-i pi p t_j} = e^{-i pi j / N}: period 2N in j, computed
    // from the exactly reduced angle.
    let twists: Vec<Complex64> = (0..2 * n)
        .map(|r| {
            let ang = -PI * r as f64 / n as f64;
            let w = Complex64::new(ang.cos(), ang.sin());
            if p.is_one_mod_four() {
                w
            } else {
                w * Complex64::new(0.0, -1.0)
            }
        })
        .collect();

    let mut values = Vec::with_capacity(m);
    for (j, v) in grid.values.iter().enumerate() {
        let h = twists[j % (2 * n)] * v;
        if h.im.abs() >= IMAG_TOL * sqrt_p {
            return Err(Error::Numerical(format!(
                "imaginary leakage {:.3e} at node {j} exceeds {IMAG_TOL:e} sqrt(p)",
                h.im.abs()
            )));
        }
        values.push(h.re);
    }

    let table = legendre_table(p);
    for k in 0..p.index() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let expected = sign * f64::from(table[k]) * sqrt_p;
        let got = values[n * k];
        if (got - expected).abs() >= NODE_ZERO_TOL * sqrt_p {
            return Err(Error::Numerical(format!(
                "H_p({k}/{p}) = {got} but the closed form gives {expected}"
            )));
        }
    }

    Ok(HGrid {
        p,
        refinement,
        values,
        tol_zero: NODE_ZERO_TOL * sqrt_p,
    })
}

/// Number of `k` in `1 ..= p-2` with `(k|p) = (k+1|p)` — the exact count of
/// consecutive-symbol agreements, each of which forces a sign change of
/// `H_p` between `k/p` and `(k+1)/p`. Equals `(p-3)/2` for every odd prime.
pub fn sign_agreements(p: Prime) -> u64 {
    let table = legendre_table(p);
    (1..p.index() - 1)
        .filter(|&k| table[k] == table[k + 1])
        .count() as u64
}

/// Locate zeros of `H_p` in `[0, 1)`: sample on the `N p` grid, take
/// near-zero nodes as zeros directly, and refine every sign change by
/// bisection on the real-sum route.
///
/// Bisection runs until the bracket is shorter than `bisect_tol` (at most
/// 60 steps). Intervals adjacent to a node zero are skipped so a zero
/// sitting on a node is counted exactly once; the returned list is sorted
/// and deduplicated at resolution `bisect_tol` (cyclically, so a zero near
/// 1 is not double-counted against `t = 0`). The count is a lower bound on
/// the true number of distinct zeros — tangential zeros between nodes and
/// unresolved close pairs are missed, never double-counted.
///
/// Errors: [`Error::Domain`] for `refinement < 2` or
/// `bisect_tol <= 0`/non-finite.
pub fn locate_zeros(p: Prime, refinement: usize, bisect_tol: f64) -> Result<Vec<f64>> {
    if !(bisect_tol > 0.0) || !bisect_tol.is_finite() {
        return Err(Error::Domain(format!(
            "bisection tolerance must be positive, got {bisect_tol}"
        )));
    }
    let grid = h_grid(p, refinement)?;
    let m = grid.values.len();
    let h = HFunction::new(p);

    let node_zero: Vec<bool> = grid
        .values
        .iter()
        .map(|v| v.abs() < grid.tol_zero)
        .collect();

    let mut zeros: Vec<f64> = (0..m)
        .filter(|&j| node_zero[j])
        .map(|j| j as f64 / m as f64)
        .collect();

    // Sign-change intervals (t_j, t_{j+1}), wrapping at 1 where
    // H(1) = -H(0) by antiperiodicity. Intervals touching a node zero are
    // skipped: the zero is already recorded.
    let intervals: Vec<usize> = (0..m)
        .filter(|&j| {
            let next = (j + 1) % m;
            if node_zero[j] || node_zero[next] {
                return false;
            }
            let left = grid.values[j];
            let right = if j + 1 == m {
                -grid.values[0]
            } else {
                grid.values[next]
            };
            left.signum() != right.signum()
        })
        .collect();

    let refined: Vec<Option<f64>> = intervals
        .par_iter()
        .map(|&j| {
            let mut a = j as f64 / m as f64;
            let mut b = (j + 1) as f64 / m as f64;
            let mut ha = h.eval(a);
            let hb = h.eval(b);
            // Re-check the bracket on the bisection route; the grid came
            // from the complex route and the two differ near the noise
            // floor. A lost bracket is dropped (lower-bound semantics).
            if ha == 0.0 {
                return Some(a);
            }
            if hb == 0.0 || ha.signum() == hb.signum() {
                return None;
            }
            for _ in 0..60 {
                if b - a < bisect_tol {
                    break;
                }
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break; // bracket at floating-point resolution
                }
                let hm = h.eval(mid);
                if hm == 0.0 {
                    return Some(mid);
                }
                if hm.signum() == ha.signum() {
                    a = mid;
                    ha = hm;
                } else {
                    b = mid;
                }
            }
            Some(0.5 * (a + b))
        })
        .collect();

    zeros.extend(refined.into_iter().flatten());
    zeros.sort_by(|x, y| x.partial_cmp(y).unwrap());

    // Cyclic dedup at resolution bisect_tol.
    let mut out: Vec<f64> = Vec::with_capacity(zeros.len());
    for t in zeros {
        if let Some(&last) = out.last() {
            if t - last < bisect_tol {
                continue;
            }
        }
        out.push(t);
    }
    while out.len() > 1 {
        let first = out[0];
        let last = *out.last().unwrap();
        if (1.0 - last) + first < bisect_tol {
            out.pop();
        } else {
            break;
        }
    }
    Ok(out)
}

/// Per-arc classification record. Arc `k` is
/// `I_k = { e^{it} : |t - (2k+1) pi / p| <= pi / (2p) }`, the half-width
/// window around the midpoint between consecutive `p`-th roots of unity.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ArcReport {
    /// Arc index `k` in `0 .. p-1`.
    pub k: usize,
    /// `|f_p|` at the arc center `e^{i (2k+1) pi / p}`.
    pub center_value: f64,
    /// Sampled maximum of `|f_p'|` on `I_k` (33 nodes).
    pub deriv_max: f64,
    /// Certified zero-free on the inner window `I_{k, eta}`: the center
    /// value clears `delta sqrt(p)` and the derivative stays below
    /// `gamma p^{3/2}`.
    pub nonvanishing: bool,
    /// A located zero of `H_p` lies strictly between `k/p` and `(k+1)/p`.
    pub has_zero_in_ik: bool,
}

/// Arc classification summary.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ArcClassification {
    pub reports: Vec<ArcReport>,
    /// Arcs whose center value exceeds `delta sqrt(p)`.
    pub n_big_center: usize,
    /// Arcs whose sampled derivative maximum is at most `gamma p^{3/2}`.
    pub n_small_deriv: usize,
    /// Arcs satisfying both (the certified-nonvanishing set).
    pub n_qualifying: usize,
}

/// Classify all `p` arcs for the nonvanishing criterion: a center value
/// above `delta sqrt(p)` plus a derivative bound `gamma p^{3/2}` certify
/// that `f_p` cannot vanish on the inner window `I_{k, eta}` whenever
/// `eta < delta / gamma`.
///
/// Requires `delta > 0`, `gamma > 0`, and `0 < eta < min(delta/gamma,
/// pi/2)`.
pub fn arc_classify(p: Prime, delta: f64, gamma: f64, eta: f64) -> Result<ArcClassification> {
    if !(delta > 0.0) || !(gamma > 0.0) {
        return Err(Error::Domain(format!(
            "need delta > 0 and gamma > 0, got delta={delta}, gamma={gamma}"
        )));
    }
    if !(eta > 0.0 && eta < (delta / gamma).min(PI / 2.0)) {
        return Err(Error::Domain(format!(
            "need 0 < eta < min(delta/gamma, pi/2) = {}, got {eta}",
            (delta / gamma).min(PI / 2.0)
        )));
    }
    let pn = p.index();
    let pf = p.get() as f64;
    let f = fekete(p);

    // Arc centers e^{i (2k+1) pi / p}: one grid with offset pi.
    let centers = f.eval_roots_of_unity(pn, PI)?;
    let center_value: Vec<f64> = centers.values.iter().map(|v| v.norm()).collect();

    // 33 sample offsets per arc. Offset i contributes one p-point grid:
    // angle (2 pi k + pi + p s_i)/p with s_i in [-pi/(2p), pi/(2p)].
    let deriv = f.derivative();
    let mut deriv_max = vec![0.0f64; pn];
    for i in 0..33 {
        let s = -PI / 2.0 + PI * i as f64 / 32.0; // p * s_i
        let grid = deriv.eval_roots_of_unity(pn, PI + s)?;
        for (k, v) in grid.values.iter().enumerate() {
            deriv_max[k] = deriv_max[k].max(v.norm());
        }
    }

    let zeros = locate_zeros(p, 4, 1e-12)?;
    let mut has_zero = vec![false; pn];
    for &t in &zeros {
        let k = (t * pf).floor() as usize;
        if k < pn && t > k as f64 / pf && t < (k + 1) as f64 / pf {
            has_zero[k] = true;
        }
    }

    let delta_bar = delta * pf.sqrt();
    let gamma_bar = gamma * pf.powf(1.5);
    let reports: Vec<ArcReport> = (0..pn)
        .map(|k| ArcReport {
            k,
            center_value: center_value[k],
            deriv_max: deriv_max[k],
            nonvanishing: center_value[k] > delta_bar && deriv_max[k] <= gamma_bar,
            has_zero_in_ik: has_zero[k],
        })
        .collect();
    let n_big_center = reports.iter().filter(|r| r.center_value > delta_bar).count();
    let n_small_deriv = reports.iter().filter(|r| r.deriv_max <= gamma_bar).count();
    let n_qualifying = reports.iter().filter(|r| r.nonvanishing).count();
    Ok(ArcClassification {
        reports,
        n_big_center,
        n_small_deriv,
        n_qualifying,
    })
}

/// Outcome of a large sieve check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LargeSieveCheck {
    /// `sum_j |P(e^{i t_j})|^2`.
    pub lhs: f64,
    /// `((2n+1)/(2 pi) + 1/delta_sep) * integral of |P|^2`.
    pub rhs: f64,
    /// Minimal cyclic gap between the sample angles (`2 pi` for one angle).
    pub delta_sep: f64,
    /// `lhs <= rhs * (1 + 1e-9)`.
    pub holds: bool,
}

/// Large sieve inequality for a trigonometric polynomial
/// `P(e^{it}) = sum_{k=-n}^{n} a_k e^{ikt}`.
///
/// `coeffs` has odd length `2n + 1` with `coeffs[i] = a_{i-n}`. The
/// integral `int_0^{2 pi} |P|^2 = 2 pi sum |a_k|^2` is exact (Parseval),
/// so only the left side is sampled. Angles are sorted internally;
/// duplicates collapse `delta_sep` to 0 and are rejected.
pub fn large_sieve_check(coeffs: &[Complex64], angles: &[f64]) -> Result<LargeSieveCheck> {
    if coeffs.is_empty() || coeffs.len().is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "coefficients must have odd length 2n + 1, got {}",
            coeffs.len()
        )));
    }
    if angles.is_empty() {
        return Err(Error::Domain("need at least one sample angle".into()));
    }
    if angles.iter().any(|t| !(0.0..=2.0 * PI).contains(t)) {
        return Err(Error::Domain(
            "sample angles must lie in [0, 2 pi]".into(),
        ));
    }
    let n = (coeffs.len() - 1) / 2;

    let mut sorted = angles.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let delta_sep = if sorted.len() == 1 {
        2.0 * PI
    } else {
        let mut gap = 2.0 * PI - (sorted[sorted.len() - 1] - sorted[0]);
        for w in sorted.windows(2) {
            gap = gap.min(w[1] - w[0]);
        }
        gap
    };
    if !(delta_sep > 0.0) {
        return Err(Error::Domain(
            "sample angles must be pairwise distinct (delta_sep = 0)".into(),
        ));
    }

    let lhs = compensated_sum(sorted.iter().map(|&t| {
        let z = Complex64::new(t.cos(), t.sin());
        // P(e^{it}) = e^{-int} * (ordinary polynomial in e^{it}).
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        let low = Complex64::new((n as f64 * t).cos(), -(n as f64 * t).sin());
        (acc * low).norm_sqr()
    }));
    let mass: f64 = compensated_sum(coeffs.iter().map(|c| c.norm_sqr()));
    let integral = 2.0 * PI * mass;
    let rhs = ((2.0 * n as f64 + 1.0) / (2.0 * PI) + 1.0 / delta_sep) * integral;
    Ok(LargeSieveCheck {
        lhs,
        rhs,
        delta_sep,
        holds: lhs <= rhs * (1.0 + 1e-9),
    })
}

/// Centered coefficients of `z^{(3-p)/2} f_p'(z)`: a trigonometric
/// polynomial of degree `n = (p-1)/2` with `a_{k + (1-p)/2} = k (k|p)`,
/// i.e. slot `k` of the returned array holds `k (k|p)` for `k = 1..p-1`
/// and slot 0 is empty. `|g_p| = |f_p'|` on the circle.
pub fn gp_sieve_coefficients(p: Prime) -> Vec<Complex64> {
    let table = legendre_table(p);
    (0..p.index())
        .map(|k| Complex64::new(k as f64 * f64::from(table[k]), 0.0))
        .collect()
}

/// Maximum and minimum of `|f_p|` over an `M`-node midpoint grid on the
/// full circle. Requires `M >= 4p` so the grid resolves every arc.
pub fn max_modulus(p: Prime, samples: usize) -> Result<(f64, f64)> {
    if samples < 4 * p.index() {
        return Err(Error::Domain(format!(
            "need at least 4p = {} samples, got {samples}",
            4 * p.index()
        )));
    }
    let grid = fekete(p).eval_roots_of_unity(samples, PI)?;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for v in &grid.values {
        let r = v.norm();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((hi, lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::primes_in_range;
    use crate::rng::SplitMix64;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn h_eval_named_values() {
        // H_7(1/7) = -sqrt(7).
        let got = h_eval(p(7), 1.0 / 7.0);
        assert!((got + 7f64.sqrt()).abs() <= 1e-8, "{got}");
        // H_5(1/5) = -sqrt(5).
        let got = h_eval(p(5), 0.2);
        assert!((got + 5f64.sqrt()).abs() <= 1e-8, "{got}");
        // t = 0 is a zero for every p (f_p(1) = 0).
        assert!(h_eval(p(11), 0.0).abs() <= 1e-10);
        assert!(h_eval(p(13), 0.0).abs() <= 1e-10);
    }

    #[test]
    fn h_real_and_complex_routes_agree() {
        let mut g = SplitMix64::new(17);
        for q in [13u64, 31, 101, 499] {
            let pr = p(q);
            let f = fekete(pr);
            let sqrt_p = (q as f64).sqrt();
            for _ in 0..50 {
                let t = g.next_f64();
                let z = Complex64::new((2.0 * PI * t).cos(), (2.0 * PI * t).sin());
                let twist_ang = -PI * q as f64 * t;
                let mut w = Complex64::new(twist_ang.cos(), twist_ang.sin());
                if q % 4 == 3 {
                    w *= Complex64::new(0.0, -1.0);
                }
                let complex_route = w * f.eval_point(z);
                assert!(complex_route.im.abs() <= 1e-8 * sqrt_p);
                let real_route = h_eval(pr, t);
                assert!(
                    (complex_route.re - real_route).abs() <= 1e-8 * sqrt_p,
                    "p={q}, t={t}"
                );
            }
        }
    }

    #[test]
    fn h_grid_closed_form_at_rational_nodes() {
        let pr = p(13);
        let grid = h_grid(pr, 3).unwrap();
        assert_eq!(grid.values.len(), 39);
        let table = legendre_table(pr);
        let sqrt_p = 13f64.sqrt();
        for (k, &chi) in table.iter().enumerate() {
            let expected = if k % 2 == 0 { 1.0 } else { -1.0 } * f64::from(chi) * sqrt_p;
            assert!((grid.values[3 * k] - expected).abs() <= 1e-8 * sqrt_p);
        }
    }

    #[test]
    fn h_grid_rejects_tiny_refinement() {
        assert!(h_grid(p(7), 1).is_err());
    }

    #[test]
    fn sign_agreements_named_and_closed_form() {
        assert_eq!(sign_agreements(p(5)), 1);
        assert_eq!(sign_agreements(p(7)), 2);
        assert_eq!(sign_agreements(p(9973)), 4985);
        for q in primes_in_range(5, 500).unwrap() {
            assert_eq!(sign_agreements(q), (q.get() - 3) / 2, "p={q}");
        }
    }

    #[test]
    fn locate_zeros_small_cases() {
        // f_5 vanishes at z = 1 (t = 0) and z = -1 (t = 1/2).
        let zeros = locate_zeros(p(5), 4, 1e-12).unwrap();
        assert!(zeros.iter().any(|&t| t.abs() <= 1e-12));
        assert!(zeros.iter().any(|&t| (t - 0.5).abs() <= 1e-9));
        for q in [7u64, 11, 13, 101] {
            let zeros = locate_zeros(p(q), 4, 1e-12).unwrap();
            assert!(
                zeros.len() as u64 >= (q - 3) / 2,
                "p={q}: {} zeros",
                zeros.len()
            );
            // Sorted, in [0,1), and the refined angles really are zeros.
            let h = HFunction::new(p(q));
            for w in zeros.windows(2) {
                assert!(w[0] < w[1]);
            }
            for &t in &zeros {
                assert!((0.0..1.0).contains(&t));
                assert!(h.eval(t).abs() <= 1e-5 * (q as f64).sqrt(), "p={q}, t={t}");
            }
        }
    }

    #[test]
    fn locate_zeros_rejects_bad_parameters() {
        assert!(locate_zeros(p(7), 1, 1e-12).is_err());
        assert!(locate_zeros(p(7), 4, 0.0).is_err());
        assert!(locate_zeros(p(7), 4, f64::NAN).is_err());
    }

    #[test]
    fn zero_count_beats_sign_agreements() {
        for q in primes_in_range(11, 200).unwrap() {
            let zeros = locate_zeros(q, 4, 1e-12).unwrap();
            assert!(
                zeros.len() as u64 >= sign_agreements(q),
                "p={q}: {} < {}",
                zeros.len(),
                sign_agreements(q)
            );
        }
    }

    #[test]
    fn arc_classification_example() {
        let pr = p(101);
        let cls = arc_classify(pr, 0.3, 3.0, 0.09).unwrap();
        assert_eq!(cls.reports.len(), 101);
        assert!(cls.n_qualifying >= 1, "no qualifying arcs at p=101");
        assert_eq!(
            cls.n_qualifying,
            cls.reports.iter().filter(|r| r.nonvanishing).count()
        );
        // Consistency: no located zero may fall in the certified inner
        // window of a qualifying arc.
        let zeros = locate_zeros(pr, 4, 1e-12).unwrap();
        let eta = 0.09;
        let pf = 101.0;
        for r in cls.reports.iter().filter(|r| r.nonvanishing) {
            let center_t = (2.0 * r.k as f64 + 1.0) / (2.0 * pf);
            for &t in &zeros {
                let d = (t - center_t).abs().min(1.0 - (t - center_t).abs());
                assert!(
                    d * 2.0 * PI >= eta / pf,
                    "zero t={t} inside certified window of arc {}",
                    r.k
                );
            }
        }
    }

    #[test]
    fn tiny_delta_makes_almost_every_center_big() {
        // As delta -> 0 only the exact zeros of the center grid fail the
        // center test; f_p has none at arc centers.
        let cls = arc_classify(p(61), 1e-9, 3.0, 1e-10).unwrap();
        assert!(cls.n_big_center >= 60);
    }

    #[test]
    fn bad_arc_count_obeys_sieve_budget() {
        // With gamma = sqrt(8), at most p/16 arcs may have a large
        // derivative maximum.
        let gamma = 8f64.sqrt();
        for q in [101u64, 199, 499] {
            let cls = arc_classify(p(q), 0.5, gamma, 0.1).unwrap();
            let bad = q as usize - cls.n_small_deriv;
            assert!(
                (bad as f64) <= q as f64 / 16.0,
                "p={q}: {bad} bad arcs"
            );
        }
    }

    #[test]
    fn arc_classify_rejects_bad_eta() {
        assert!(arc_classify(p(31), 0.3, 3.0, 0.2).is_err()); // eta >= delta/gamma
        assert!(arc_classify(p(31), 0.3, 3.0, 0.0).is_err());
        assert!(arc_classify(p(31), -0.3, 3.0, 0.05).is_err());
    }

    #[test]
    fn large_sieve_single_constant() {
        // P = 1, one angle: lhs = 1, rhs = (1/(2pi) + 1/(2pi)) * 2pi = 2.
        let coeffs = [Complex64::new(1.0, 0.0)];
        let check = large_sieve_check(&coeffs, &[1.0]).unwrap();
        assert!((check.lhs - 1.0).abs() <= 1e-12);
        assert!((check.rhs - 2.0).abs() <= 1e-12);
        assert!((check.delta_sep - 2.0 * PI).abs() <= 1e-12);
        assert!(check.holds);
    }

    #[test]
    fn large_sieve_random_instances() {
        let mut g = SplitMix64::new(5);
        for trial in 0..200 {
            let n = 1 + (g.next_u64() % 32) as usize;
            let coeffs: Vec<Complex64> = (0..2 * n + 1)
                .map(|_| Complex64::new(2.0 * g.next_f64() - 1.0, 2.0 * g.next_f64() - 1.0))
                .collect();
            let m = 1 + (g.next_u64() % 64) as usize;
            let mut angles: Vec<f64> = (0..m).map(|_| g.next_f64() * 2.0 * PI).collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            angles.dedup();
            let check = large_sieve_check(&coeffs, &angles).unwrap();
            assert!(check.holds, "trial {trial}: lhs={} rhs={}", check.lhs, check.rhs);
        }
    }

    #[test]
    fn large_sieve_fekete_derivative_chain() {
        // g_p at the p arc centers: the classical application. Also check
        // the closed-form coefficient mass sum k^2 = (p-1)p(2p-1)/6.
        for q in [101u64, 199] {
            let pr = p(q);
            let coeffs = gp_sieve_coefficients(pr);
            assert_eq!(coeffs.len(), q as usize);
            let mass: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
            let expected = (q - 1) as f64 * q as f64 * (2 * q - 1) as f64 / 6.0;
            assert!((mass - expected).abs() <= 1e-6 * expected);
            let angles: Vec<f64> = (0..q)
                .map(|k| (2.0 * k as f64 + 1.0) * PI / q as f64)
                .collect();
            let check = large_sieve_check(&coeffs, &angles).unwrap();
            assert!(check.holds, "p={q}");
            assert!((check.delta_sep - 2.0 * PI / q as f64).abs() <= 1e-12);
            // And the sampled sum really is sum |f_p'(center)|^2.
            let deriv = fekete(pr).derivative();
            let direct = compensated_sum(
                angles
                    .iter()
                    .map(|&t| deriv.eval_point(Complex64::new(t.cos(), t.sin())).norm_sqr()),
            );
            assert!((check.lhs - direct).abs() <= 1e-8 * direct.max(1.0));
        }
    }

    #[test]
    fn large_sieve_rejects_bad_input() {
        let coeffs = [Complex64::new(1.0, 0.0); 2];
        assert!(large_sieve_check(&coeffs, &[1.0]).is_err()); // even length
        let coeffs = [Complex64::new(1.0, 0.0); 3];
        assert!(large_sieve_check(&coeffs, &[]).is_err());
        assert!(large_sieve_check(&coeffs, &[1.0, 1.0]).is_err()); // dup
        assert!(large_sieve_check(&coeffs, &[-1.0]).is_err()); // range
    }

    #[test]
    fn max_modulus_brackets_the_power_mean() {
        for q in [13u64, 101, 499] {
            let (hi, lo) = max_modulus(p(q), 8 * q as usize).unwrap();
            let m2 = ((q - 1) as f64).sqrt();
            assert!(lo < m2 && m2 < hi, "p={q}: {lo} {m2} {hi}");
            assert!(hi >= (q as f64).sqrt(), "max below sqrt(p) at p={q}");
        }
        assert!(max_modulus(p(13), 13).is_err());
    }
}
