//! Mahler measures: quadrature estimators, the root-product formula, and
//! the grid-product upper bounds they certify.
//!
//! For a polynomial `Q` and an arc `[alpha, beta]` of the unit circle,
//!
//! * `M_q(Q, [a,b]) = ( 1/(b-a) int_a^b |Q(e^{it})|^q dt )^{1/q}` for
//!   `q > 0`, and
//! * `M_0(Q, [a,b]) = exp( 1/(b-a) int_a^b log |Q(e^{it})| dt )`,
//!
//! both computed by midpoint quadrature. On the full circle `M_0` also has
//! the exact root formula (Jensen): `M_0(Q) = |lead| prod max(1, |z_k|)`.
//! Quadrature and root product are two genuinely independent routes and
//! the suite cross-validates them.
//!
//! The grid-product checks bound the geometric mean of `|Q|` over the
//! `p`-th roots of unity by multiples of `M_0(Q)`: the plain factor-2 bound
//! for any polynomial of degree at most `p`, and its refinement
//! `2 cos(eta/2)^{k/p}` when `Q` is known to have `k` unit-circle zeros
//! away from the odd multiples of `pi/p`.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::roots::{find_roots, RootSet};
use crate::rng::SplitMix64;
use crate::sum::{compensated_sum, NeumaierSum};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

pub use crate::roots::RootSet as Roots;

/// Default node count for `M_0` quadrature on a polynomial of degree `d`:
/// `max(2^14, 64 d)` puts dozens of nodes between adjacent circle zeros.
pub fn default_m0_nodes(degree: usize) -> usize {
    (1usize << 14).max(64 * degree)
}

/// How an estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MahlerMethod {
    /// Midpoint quadrature on a uniform grid.
    UniformQuadrature,
    /// Jensen's root product `|lead| prod max(1, |z_k|)`.
    RootsJensen,
    /// A grid-product inequality, not an estimate of the measure itself.
    ProductBound,
}

/// A Mahler-measure estimate with its provenance.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MahlerEstimate {
    /// The estimated value (nonnegative).
    pub value: f64,
    /// Route that produced it.
    pub method: MahlerMethod,
    /// Arc of integration in radians.
    pub arc: (f64, f64),
    /// Quadrature nodes or root count, depending on the method.
    pub samples_or_iters: usize,
    /// Diagnostic: half-grid refinement delta for quadrature (or, if any
    /// node had to be perturbed off a zero, the count of such nodes);
    /// largest absolute root residual `max |Q(root)|` for the root route.
    pub residual: f64,
}

/// Validate an arc `[alpha, beta]`: increasing, at most one full turn.
fn check_arc(arc: (f64, f64)) -> Result<()> {
    let (a, b) = arc;
    if !(a < b) || b - a > 2.0 * PI + 1e-12 || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "arc must satisfy alpha < beta <= alpha + 2 pi, got [{a}, {b}]"
        )));
    }
    Ok(())
}

/// `|Q|` at the `M` midpoint nodes of the arc.
///
/// A full-circle arc maps onto a root-of-unity grid with offset
/// `pi + M alpha` (so the fast evaluation path applies); general arcs are
/// evaluated pointwise.
fn moduli_on_arc(q: &IntPolynomial, arc: (f64, f64), m: usize) -> Vec<f64> {
    let (a, b) = arc;
    if ((b - a) - 2.0 * PI).abs() <= 1e-12 {
        let grid = q
            .eval_roots_of_unity(m, PI + m as f64 * a)
            .expect("m >= 8 checked by callers");
        grid.values.iter().map(|v| v.norm()).collect()
    } else {
        let step = (b - a) / m as f64;
        (0..m)
            .map(|j| {
                let t = a + step * (j as f64 + 0.5);
                q.eval_point(Complex64::new(t.cos(), t.sin())).norm()
            })
            .collect()
    }
}

/// Mean of `values` and of its even-index half, compensated. The half-grid
/// mean is a coarser midpoint rule and the difference serves as the
/// refinement diagnostic.
fn mean_with_refinement(values: &[f64]) -> (f64, f64) {
    let full = compensated_sum(values.iter().copied()) / values.len() as f64;
    let half: Vec<f64> = values.iter().copied().step_by(2).collect();
    let half_mean = compensated_sum(half.iter().copied()) / half.len() as f64;
    (full, (full - half_mean).abs())
}

/// `M_q` by midpoint quadrature, `q > 0`.
///
/// Errors: [`Error::Domain`] for `q <= 0`, bad arcs, or `samples < 8`.
pub fn mq_uniform(
    poly: &IntPolynomial,
    q: f64,
    arc: (f64, f64),
    samples: usize,
) -> Result<MahlerEstimate> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!(
            "mq_uniform needs q > 0 (got {q}); use m0_uniform for the geometric mean"
        )));
    }
    check_arc(arc)?;
    if samples < 8 {
        return Err(Error::Domain(format!(
            "need at least 8 quadrature nodes, got {samples}"
        )));
    }
    let moduli = moduli_on_arc(poly, arc, samples);
    let powers: Vec<f64> = moduli.iter().map(|&v| v.powf(q)).collect();
    let (mean, delta) = mean_with_refinement(&powers);
    Ok(MahlerEstimate {
        value: mean.powf(1.0 / q),
        method: MahlerMethod::UniformQuadrature,
        arc,
        samples_or_iters: samples,
        residual: delta,
    })
}

/// `M_0` (geometric mean) by midpoint quadrature.
///
/// Nodes where `|Q| < 1e-300` (a node landing essentially on a zero) are
/// re-evaluated half a sub-step away and the count is reported through
/// `residual`. Errors: [`Error::Domain`] as for [`mq_uniform`];
/// [`Error::Numerical`] if every node is degenerate.
pub fn m0_uniform(
    poly: &IntPolynomial,
    arc: (f64, f64),
    samples: usize,
) -> Result<MahlerEstimate> {
    check_arc(arc)?;
    if samples < 8 {
        return Err(Error::Domain(format!(
            "need at least 8 quadrature nodes, got {samples}"
        )));
    }
    let (a, b) = arc;
    let moduli = moduli_on_arc(poly, arc, samples);
    let step = (b - a) / samples as f64;
    let mut perturbed = 0usize;
    let logs: Vec<f64> = moduli
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            if v >= 1e-300 {
                v.ln()
            } else {
                perturbed += 1;
                let t = a + step * (j as f64 + 1.0);
                let v2 = poly.eval_point(Complex64::new(t.cos(), t.sin())).norm();
                v2.max(1e-300).ln()
            }
        })
        .collect();
    if perturbed == samples {
        return Err(Error::Numerical(
            "every quadrature node was degenerate (|Q| < 1e-300)".into(),
        ));
    }
    let (mean_log, delta) = mean_with_refinement(&logs);
    Ok(MahlerEstimate {
        value: mean_log.exp(),
        method: MahlerMethod::UniformQuadrature,
        arc,
        samples_or_iters: samples,
        residual: if perturbed > 0 { perturbed as f64 } else { delta },
    })
}

/// `M_0` over the full circle from a converged root set (Jensen):
/// `|lead| * prod_k max(1, |z_k|)`.
pub fn m0_from_roots(roots: &RootSet) -> MahlerEstimate {
    let mut log_acc = NeumaierSum::new();
    log_acc.add(roots.leading.norm().ln());
    for z in &roots.roots {
        let r = z.norm();
        if r > 1.0 {
            log_acc.add(r.ln());
        }
    }
    MahlerEstimate {
        value: log_acc.value().exp(),
        method: MahlerMethod::RootsJensen,
        arc: (0.0, 2.0 * PI),
        samples_or_iters: roots.roots.len(),
        residual: roots.max_residual,
    }
}

/// Outcome of a grid-product bound check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProductBoundCheck {
    /// Geometric mean of `|Q|` over the `p`-th roots of unity,
    /// `( prod_{j=0}^{p-1} |Q(zeta_p^j)| )^{1/p}`.
    pub lhs: f64,
    /// The bound it must not exceed.
    pub rhs: f64,
    /// Number of certified unit-circle zeros used by the refined bound
    /// (0 for the plain factor-2 bound).
    pub k_zeros: usize,
    /// `lhs <= rhs * (1 + 1e-9)`.
    pub holds: bool,
}

/// Geometric mean of `|Q|` over the `p`-th roots of unity, in compensated
/// log space; exactly 0 if any grid value vanishes.
fn grid_geometric_mean(q: &IntPolynomial, p: crate::numtheory::Prime) -> Result<f64> {
    let grid = q.eval_roots_of_unity(p.index(), 0.0)?;
    let mut acc = NeumaierSum::new();
    for v in &grid.values {
        let r = v.norm();
        if r == 0.0 {
            return Ok(0.0);
        }
        acc.add(r.ln());
    }
    Ok((acc.value() / p.get() as f64).exp())
}

/// Factor-2 grid-product bound: for any polynomial `Q` of degree at most
/// `p`, the geometric mean of `|Q|` over the `p`-th roots of unity is at
/// most `2 M_0(Q)`.
///
/// The right side uses the root-product (Jensen) route, so the two sides
/// share no machinery. Errors: [`Error::Domain`] if `deg Q > p` or `Q = 0`.
pub fn grid_product_check(q: &IntPolynomial, p: crate::numtheory::Prime) -> Result<ProductBoundCheck> {
    if q.is_zero() || q.degree() > p.index() {
        return Err(Error::Domain(format!(
            "bound needs a nonzero polynomial of degree <= p = {p}, got degree {}",
            q.degree()
        )));
    }
    let lhs = grid_geometric_mean(q, p)?;
    let rhs = 2.0 * m0_from_roots(&find_roots(q)?).value;
    Ok(ProductBoundCheck {
        lhs,
        rhs,
        k_zeros: 0,
        holds: lhs <= rhs * (1.0 + 1e-9),
    })
}

/// Refined grid-product bound using certified unit-circle zeros.
///
/// `zero_angles` lists angles `t_j` (radians) with `Q(e^{i t_j}) = 0`,
/// each lying outside every closed interval
/// `[(2 nu + 1) pi / p - eta / p, (2 nu + 1) pi / p + eta / p]`. With `k`
/// such zeros the factor 2 improves to `2 cos(eta/2)^{k/p}`.
///
/// Preconditions are checked: `0 < eta <= pi/2`; each angle must satisfy
/// `|Q(e^{it})| < 1e-6 ||Q||_1` (a verified zero) and must avoid the
/// forbidden intervals — violations give [`Error::Domain`] naming the
/// angle.
pub fn refined_grid_product_check(
    q: &IntPolynomial,
    p: crate::numtheory::Prime,
    eta: f64,
    zero_angles: &[f64],
) -> Result<ProductBoundCheck> {
    if q.is_zero() || q.degree() > p.index() {
        return Err(Error::Domain(format!(
            "bound needs a nonzero polynomial of degree <= p = {p}, got degree {}",
            q.degree()
        )));
    }
    if !(eta > 0.0 && eta <= PI / 2.0) {
        return Err(Error::Domain(format!(
            "need 0 < eta <= pi/2, got {eta}"
        )));
    }
    let pf = p.get() as f64;
    let zero_tol = 1e-6 * q.one_norm();
    for &t in zero_angles {
        let value = q.eval_point(Complex64::new(t.cos(), t.sin())).norm();
        if value >= zero_tol {
            return Err(Error::Domain(format!(
                "angle {t} is not a verified zero: |Q| = {value:.3e} >= {zero_tol:.3e}"
            )));
        }
        // Distance from the nearest odd multiple of pi/p. Writing
        // t = (2 nu + 1) pi / p + d means u = (t p / pi - 1) / 2 is within
        // |d| p / (2 pi) of the integer nu.
        let u = (t.rem_euclid(2.0 * PI) * pf / PI - 1.0) / 2.0;
        let dist = (u - u.round()).abs() * 2.0 * PI / pf;
        if dist < eta / pf {
            return Err(Error::Domain(format!(
                "angle {t} lies inside a forbidden interval around an odd \
                 multiple of pi/{p} (distance {dist:.3e} < eta/p = {:.3e})",
                eta / pf
            )));
        }
    }
    let k = zero_angles.len();
    let lhs = grid_geometric_mean(q, p)?;
    let factor = 2.0 * (eta / 2.0).cos().powf(k as f64 / pf);
    let rhs = factor * m0_from_roots(&find_roots(q)?).value;
    Ok(ProductBoundCheck {
        lhs,
        rhs,
        k_zeros: k,
        holds: lhs <= rhs * (1.0 + 1e-9),
    })
}

/// Ensemble statistics for random Littlewood polynomials of degree `n`:
/// the mean of `M_q(f, [0, 2 pi]) / sqrt(n)` (or `M_0 / sqrt(n)` when
/// `q = 0`) over `samples` independent draws, with its standard error.
///
/// Per-sample seeds are drawn from a splitmix64 stream over `seed`, and the
/// reduction runs in fixed order, so results are bit-identical for a given
/// `(n, q, samples, seed)` regardless of thread count.
///
/// Errors: [`Error::Domain`] for `q < 0`, `n = 0`, or `samples < 100`.
pub fn littlewood_ensemble(
    n: usize,
    q: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let ratios = littlewood_ensemble_values(n, q, samples, seed)?;
    let mean = compensated_sum(ratios.iter().copied()) / samples as f64;
    let var = compensated_sum(ratios.iter().map(|r| (r - mean) * (r - mean)))
        / (samples as f64 - 1.0);
    Ok((mean, (var / samples as f64).sqrt()))
}

/// The per-sample values behind [`littlewood_ensemble`]: one normalized
/// measure `M_q(f) / sqrt(n)` per draw, in draw order. Same seeding scheme
/// and the same validity requirements; the mean of the returned vector is
/// exactly the ensemble mean.
pub fn littlewood_ensemble_values(
    n: usize,
    q: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("ensemble degree must be positive".into()));
    }
    if q < 0.0 {
        return Err(Error::Domain(format!("need q >= 0, got {q}")));
    }
    if samples < 100 {
        return Err(Error::Domain(format!(
            "need at least 100 samples for a meaningful mean, got {samples}"
        )));
    }
    let mut seeder = SplitMix64::new(seed);
    let sample_seeds: Vec<u64> = (0..samples).map(|_| seeder.next_u64()).collect();
    let full = (0.0, 2.0 * PI);
    let scale = (n as f64).sqrt();
    let ratios: Vec<f64> = sample_seeds
        .par_iter()
        .map(|&s| {
            let f = crate::poly::random_littlewood(n, s);
            let est = if q == 0.0 {
                m0_uniform(&f, full, default_m0_nodes(n))
            } else {
                mq_uniform(&f, q, full, (4 * (n + 1)).max(256))
            };
            est.expect("full-circle arcs and node counts are valid").value / scale
        })
        .collect();
    Ok(ratios)
}
