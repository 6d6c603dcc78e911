//! Simultaneous polynomial root finding (Aberth-Ehrlich iteration).
//!
//! The Mahler-measure estimators need every root of polynomials whose
//! zeros crowd the unit circle (Fekete, Littlewood, Rudin-Shapiro). The
//! Aberth-Ehrlich method refines all approximations together — Newton's
//! correction plus a pairwise repulsion term — and converges cubically for
//! simple roots from a generic start.
//!
//! Two exact preprocessing steps keep the iteration on simple roots only:
//!
//! * zeros at the origin are stripped by removing low-order zero
//!   coefficients (exact);
//! * the zero at `z = 1` is removed with its full multiplicity by integer
//!   synthetic division (exact).
//!
//! The second step matters: Fekete polynomials with `p = 1 (mod 4)` have a
//! double zero at 1, and floating-point Newton corrections stagnate near
//! sqrt(eps) on a double root, which would make the `1e-13` relative
//! convergence target unreachable. After deflation the stripped roots are
//! reattached so the returned set always has exactly `degree` entries.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Degree cap for the solver.
const MAX_DEGREE: usize = 4096;

/// Iteration cap.
const MAX_ITERATIONS: usize = 200;

/// Convergence: every Newton correction below `1e-13 * (1 + |root|)`.
const CORRECTION_TOL: f64 = 1e-13;

/// A converged set of roots.
#[derive(Debug, Clone)]
pub struct RootSet {
    /// All `degree` roots, multiplicity included, in no particular order.
    pub roots: Vec<Complex64>,
    /// Leading coefficient of the input polynomial.
    pub leading: Complex64,
    /// Largest absolute residual `max_j |Q(z_j)|`. Meaningful when the
    /// roots sit on or near the unit circle (there `|Q|` is O(eps * ||Q||_1)
    /// at a converged root); at roots well outside the disk the evaluation
    /// itself scales like `|z|^degree`, so compare against
    /// [`RootSet::max_backward_error`] instead.
    pub max_residual: f64,
    /// Largest normalized residual `|Q(z_j)| / sum_k |c_k| |z_j|^k` — the
    /// backward-error scale of the evaluation. Dimensionless, and near
    /// machine epsilon for a converged root set regardless of where the
    /// roots lie.
    pub max_backward_error: f64,
}

/// Find all roots of `q`.
///
/// Errors: [`Error::Domain`] for degree 0, [`Error::SizeGuard`] above
/// degree 4096, [`Error::Numerical`] if the iteration has not met the
/// correction tolerance after 200 sweeps (the message carries the best
/// residual reached).
pub fn find_roots(q: &IntPolynomial) -> Result<RootSet> {
    let degree = q.degree();
    if degree < 1 || q.is_zero() {
        return Err(Error::Domain(
            "root finding needs degree >= 1".into(),
        ));
    }
    if degree > MAX_DEGREE {
        return Err(Error::SizeGuard(format!(
            "degree {degree} exceeds the root-finder cap of {MAX_DEGREE}"
        )));
    }

    let mut roots: Vec<Complex64> = Vec::with_capacity(degree);

    // Exact step 1: strip zeros at the origin (low-order zero coefficients).
    let first_nonzero = q.coeffs().iter().position(|&c| c != 0).unwrap();
    roots.resize(first_nonzero, Complex64::new(0.0, 0.0));
    let stripped = IntPolynomial::new(q.coeffs()[first_nonzero..].to_vec());

    // Exact step 2: deflate the zero at z = 1 with its multiplicity.
    let (reduced, mult_at_one) = stripped.deflate_at_one()?;
    roots.extend(std::iter::repeat_n(Complex64::new(1.0, 0.0), mult_at_one as usize));

    // Iterative step: Aberth-Ehrlich on the remaining simple-root part.
    if reduced.degree() >= 1 {
        roots.extend(aberth(&reduced)?);
    }

    let coeffs_f: Vec<f64> = q.coeffs().iter().map(|&c| c as f64).collect();
    let reversed_f: Vec<f64> = coeffs_f.iter().rev().copied().collect();
    let n = degree as f64;
    let mut max_residual = 0.0f64;
    let mut max_backward_error = 0.0f64;
    for &z in &roots {
        let r = z.norm();
        let (value, backward) = if r <= 1.0 {
            let v = q.eval_point(z).norm();
            let scale = coeffs_f
                .iter()
                .rev()
                .fold(0.0f64, |acc, &c| acc * r + c.abs());
            (v, if v == 0.0 { 0.0 } else { v / scale })
        } else {
            // Mirror through w = 1/z: |Q(z)| = |z|^n |R(w)| and the
            // coefficient scale transforms the same way, so the backward
            // error is the mirrored one and the absolute residual is
            // reassembled in log space (degree-n powers of |z| overflow
            // f64 long before the quantities themselves are meaningless).
            let w = z.finv();
            let rw = w.norm();
            let rv = eval_with_derivative(&reversed_f, w).0.norm();
            let scale = reversed_f
                .iter()
                .rev()
                .fold(0.0f64, |acc, &c| acc * rw + c.abs());
            ((n * r.ln() + rv.ln()).exp(), if rv == 0.0 { 0.0 } else { rv / scale })
        };
        max_residual = max_residual.max(value);
        max_backward_error = max_backward_error.max(backward);
    }
    Ok(RootSet {
        roots,
        leading: Complex64::new(q.leading() as f64, 0.0),
        max_residual,
        max_backward_error,
    })
}

/// Horner evaluation of value and derivative in one pass.
fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// Newton quotient `Q(z)/Q'(z)` without overflow: direct Horner inside the
/// closed unit disk; outside it, through the reversed polynomial
/// `R(w) = w^n Q(1/w)` at `w = 1/z` (all intermediates stay bounded by the
/// coefficient 1-norm), using `Q/Q' = z R / (n R - w R')`.
///
/// Returns `None` when `Q(z) = 0` exactly — the point already is a root
/// and must not move.
fn newton_quotient(coeffs: &[f64], reversed: &[f64], z: Complex64) -> Option<Complex64> {
    // When the derivative-side factor vanishes exactly, nudge off the
    // stationary point instead of dividing by zero.
    let nudge = Complex64::new(1e-8, 1e-8);
    if z.norm_sqr() <= 1.0 {
        let (value, deriv) = eval_with_derivative(coeffs, z);
        if value == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(if deriv == Complex64::new(0.0, 0.0) {
            nudge
        } else {
            value / deriv
        })
    } else {
        let n = (coeffs.len() - 1) as f64;
        let w = z.finv();
        let (rv, rd) = eval_with_derivative(reversed, w);
        if rv == Complex64::new(0.0, 0.0) {
            return None;
        }
        let denom = n * rv - w * rd;
        Some(if denom == Complex64::new(0.0, 0.0) {
            nudge
        } else {
            z * rv / denom
        })
    }
}

/// Aberth-Ehrlich sweep on a polynomial assumed free of multiple roots.
fn aberth(q: &IntPolynomial) -> Result<Vec<Complex64>> {
    let degree = q.degree();
    let coeffs: Vec<f64> = q.coeffs().iter().map(|&c| c as f64).collect();
    let reversed: Vec<f64> = coeffs.iter().rev().copied().collect();

    // Every root lies inside the Cauchy bound 1 + max |c_k| / |c_n|; an
    // estimate beyond `escape` is a blown-up step, not a candidate root.
    let escape = 2.0
        + coeffs[..degree]
            .iter()
            .map(|c| c.abs())
            .fold(0.0f64, f64::max)
            / coeffs[degree].abs();

    // Start on a circle just outside the unit disk (where the interesting
    // roots live), spread by the golden angle so no initial symmetry
    // survives.
    let golden = PI * (3.0 - 5f64.sqrt());
    let radius = 1.0 + 1.0 / degree as f64;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|i| {
            let ang = golden * i as f64;
            radius * Complex64::new(ang.cos(), ang.sin())
        })
        .collect();

    let mut rescues = 0usize;
    let mut best_residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut max_rel_correction = 0.0f64;
        // Gauss-Seidel sweep: updated positions feed the repulsion sums of
        // later roots within the same pass (faster and still deterministic).
        for i in 0..degree {
            let zi = z[i];
            let newton = match newton_quotient(&coeffs, &reversed, zi) {
                Some(nq) => nq,
                None => continue, // exact root: leave it in place
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    repulsion += (zi - zj).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let w = if denom == Complex64::new(0.0, 0.0) {
                newton
            } else {
                newton / denom
            };
            let mut znew = zi - w;
            // A near-cancelling Aberth denominator can fling the estimate
            // arbitrarily far out. Reseed such points deterministically on
            // the start circle (fresh golden-angle slots) rather than
            // letting one wild step poison the whole iteration.
            if !znew.is_finite() || znew.norm() > escape {
                rescues += 1;
                let ang = golden * (degree + rescues) as f64;
                znew = radius * Complex64::new(ang.cos(), ang.sin());
            }
            z[i] = znew;
            let rel = (znew - zi).norm() / (1.0 + znew.norm());
            if rel.is_finite() {
                max_rel_correction = max_rel_correction.max(rel);
            } else {
                max_rel_correction = f64::INFINITY;
            }
        }
        if max_rel_correction < CORRECTION_TOL {
            return Ok(z);
        }
        let residual = z
            .iter()
            .map(|&zi| backward_error(&coeffs, &reversed, zi))
            .fold(0.0f64, f64::max);
        best_residual = best_residual.min(residual);
    }
    Err(Error::Numerical(format!(
        "root iteration did not converge in {MAX_ITERATIONS} sweeps \
         (degree {degree}, best backward error {best_residual:.3e})"
    )))
}

/// Scale-free evaluation residual `|Q(z)| / sum_k |c_k| |z|^k`, mirrored
/// through the reversed polynomial outside the unit disk so neither side
/// overflows.
fn backward_error(coeffs: &[f64], reversed: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let (side, at) = if r <= 1.0 {
        (coeffs, z)
    } else {
        (reversed, z.finv())
    };
    let value = eval_with_derivative(side, at).0.norm();
    if value == 0.0 {
        return 0.0;
    }
    let m = at.norm();
    let scale = side.iter().rev().fold(0.0f64, |acc, &c| acc * m + c.abs());
    value / scale
}
