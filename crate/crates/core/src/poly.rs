//! Integer polynomials and their evaluation on the unit circle.
//!
//! Three families are constructed exactly, with `i64` coefficients:
//!
//! * **Fekete polynomials** `f_p(z) = sum_{k=1}^{p-1} (k|p) z^k` whose
//!   coefficients are Legendre symbols;
//! * **Rudin-Shapiro pairs** `P_{n+1} = P_n + z^{2^n} Q_n`,
//!   `Q_{n+1} = P_n - z^{2^n} Q_n`, the classical flat Littlewood family;
//! * **random Littlewood polynomials** with ±1 coefficients drawn from the
//!   crate's fixed deterministic generator.
//!
//! Evaluation on root-of-unity grids `z_j = e^{i(2 pi j + phi)/M}` has two
//! routes: direct per-point Horner (O(M deg), used for `M <= 4096`) and a
//! chirp-transform fast path (O(M log M), any `M`, including the prime
//! sizes that dominate here). The two routes are checked against each
//! other in the test suite; production code picks by grid size only.

use crate::dft::dft_arbitrary;
use crate::error::{Error, Result};
use crate::numtheory::{legendre_table, Prime};
use crate::rng::SplitMix64;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Grid sizes at or below this use the direct evaluation route.
pub(crate) const DIRECT_GRID_MAX: usize = 4096;

/// Degree cap for Rudin-Shapiro construction: `n <= 20` keeps the pair
/// within ~2 million coefficients.
const RUDIN_SHAPIRO_MAX_LEVEL: u32 = 20;

/// A polynomial with exact `i64` coefficients, stored low order first.
///
/// Invariants: the coefficient vector is never empty, and the last entry is
/// nonzero unless the polynomial is zero (then the vector is exactly
/// `[0]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// Build from coefficients (low order first), trimming trailing zeros.
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Self { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { coeffs: vec![0] }
    }

    /// Coefficients, low order first. Nonempty; trailing entry nonzero
    /// unless this is the zero polynomial.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Index of the last nonzero coefficient (0 for constants and for the
    /// zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    /// Leading coefficient (0 only for the zero polynomial).
    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap()
    }

    /// Sum of `|c_k|`, as a float (normalizes residual tolerances).
    pub fn one_norm(&self) -> f64 {
        self.coeffs.iter().map(|&c| (c as f64).abs()).sum()
    }

    /// Evaluate at a complex point by Horner's rule.
    pub fn eval_point(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c as f64, 0.0);
        }
        acc
    }

    /// Exact value at `z = 1` (the coefficient sum), with overflow check.
    pub fn eval_one_exact(&self) -> Result<i64> {
        self.coeffs.iter().try_fold(0i64, |acc, &c| {
            acc.checked_add(c)
                .ok_or_else(|| Error::Overflow("coefficient sum at z = 1".into()))
        })
    }

    /// Formal derivative, exactly.
    pub fn derivative(&self) -> IntPolynomial {
        if self.degree() == 0 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as i64 * c)
                .collect(),
        )
    }

    /// Remove the zero `z = 1` with its full multiplicity, exactly.
    ///
    /// Returns `(g, m)` with `self = (z-1)^m g` and `g(1) != 0`, computed by
    /// repeated synthetic division in `i64` arithmetic (every addition
    /// checked). `m = 0` and `g = self` when `self(1) != 0`.
    ///
    /// Errors: [`Error::Domain`] for the zero polynomial (infinite
    /// multiplicity), [`Error::Overflow`] if an intermediate sum leaves
    /// `i64`.
    pub fn deflate_at_one(&self) -> Result<(IntPolynomial, u32)> {
        if self.is_zero() {
            return Err(Error::Domain(
                "cannot deflate the zero polynomial at z = 1".into(),
            ));
        }
        let mut current = self.coeffs.clone();
        let mut multiplicity = 0u32;
        loop {
            // Synthetic division by (z - 1): b_{d-1} = a_d,
            // b_{i-1} = a_i + b_i, remainder = a_0 + b_0 = current(1).
            let d = current.len() - 1;
            if d == 0 {
                // Nonzero constant: remainder is the constant itself.
                break;
            }
            let mut quotient = vec![0i64; d];
            let mut carry = current[d];
            for i in (1..d).rev() {
                quotient[i] = carry;
                carry = current[i]
                    .checked_add(carry)
                    .ok_or_else(|| Error::Overflow("synthetic division by z - 1".into()))?;
            }
            quotient[0] = carry;
            let remainder = current[0]
                .checked_add(carry)
                .ok_or_else(|| Error::Overflow("synthetic division by z - 1".into()))?;
            if remainder != 0 {
                break;
            }
            current = quotient;
            multiplicity += 1;
        }
        Ok((IntPolynomial::new(current), multiplicity))
    }

    /// Evaluate on the root-of-unity grid `z_j = e^{i(2 pi j + offset)/M}`,
    /// `j = 0..M-1`.
    ///
    /// Route selection: direct Horner per node for `M <=` 4096, the chirp
    /// transform above (prime `M` rules out plain power-of-two FFTs).
    ///
    /// Errors: [`Error::Domain`] when `M = 0`.
    pub fn eval_roots_of_unity(&self, size: usize, offset: f64) -> Result<ComplexSampleGrid> {
        if size == 0 {
            return Err(Error::Domain("grid size must be positive".into()));
        }
        let values = if size <= DIRECT_GRID_MAX {
            self.eval_grid_direct(size, offset)
        } else {
            self.eval_grid_chirp(size, offset)
        };
        Ok(ComplexSampleGrid {
            size,
            offset,
            values,
        })
    }

    /// Direct route: independent Horner evaluation at every node.
    pub(crate) fn eval_grid_direct(&self, size: usize, offset: f64) -> Vec<Complex64> {
        (0..size)
            .map(|j| {
                let ang = (2.0 * PI * j as f64 + offset) / size as f64;
                self.eval_point(Complex64::new(ang.cos(), ang.sin()))
            })
            .collect()
    }

    /// Chirp route: fold coefficients into residue classes mod `M` (the
    /// offset phase does not wrap, so it is applied per coefficient before
    /// folding), then one Bluestein DFT.
    pub(crate) fn eval_grid_chirp(&self, size: usize, offset: f64) -> Vec<Complex64> {
        let mut folded = vec![Complex64::new(0.0, 0.0); size];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let ang = k as f64 * offset / size as f64;
            folded[k % size] += c as f64 * Complex64::new(ang.cos(), ang.sin());
        }
        dft_arbitrary(&folded)
    }
}

/// Samples of a polynomial on the grid `z_j = e^{i(2 pi j + offset)/M}`.
#[derive(Debug, Clone)]
pub struct ComplexSampleGrid {
    /// Number of nodes `M`.
    pub size: usize,
    /// Angular offset `phi`; node `j` sits at angle `(2 pi j + phi)/M`.
    pub offset: f64,
    /// `values[j] = Q(e^{i(2 pi j + phi)/M})`.
    pub values: Vec<Complex64>,
}

impl ComplexSampleGrid {
    /// Angle of node `j` in radians.
    pub fn angle(&self, j: usize) -> f64 {
        (2.0 * PI * j as f64 + self.offset) / self.size as f64
    }
}

/// The Fekete polynomial `f_p(z) = sum_{k=1}^{p-1} (k|p) z^k`.
///
/// Length exactly `p` (constant term 0, leading coefficient
/// `(p-1|p) = ±1`), built from one O(p) quadratic-residue table.
pub fn fekete(p: Prime) -> IntPolynomial {
    let table = legendre_table(p);
    IntPolynomial::new(table.iter().map(|&s| i64::from(s)).collect())
}

/// The Rudin-Shapiro pair `(P_n, Q_n)`.
///
/// `P_0 = Q_0 = 1`; `P_{n+1} = P_n + z^{2^n} Q_n`,
/// `Q_{n+1} = P_n - z^{2^n} Q_n`. Both have all coefficients ±1 and degree
/// `2^n - 1`.
///
/// Errors: [`Error::SizeGuard`] for `n > 20`.
pub fn rudin_shapiro(n: u32) -> Result<(IntPolynomial, IntPolynomial)> {
    if n > RUDIN_SHAPIRO_MAX_LEVEL {
        return Err(Error::SizeGuard(format!(
            "Rudin-Shapiro level {n} exceeds the cap of {RUDIN_SHAPIRO_MAX_LEVEL}"
        )));
    }
    let mut p = vec![1i64];
    let mut q = vec![1i64];
    for _ in 0..n {
        // Degrees match 2^k - 1, so concatenation realizes the z^{2^k} shift.
        let mut next_p = p.clone();
        next_p.extend(q.iter().copied());
        let mut next_q = p;
        next_q.extend(q.iter().map(|&c| -c));
        p = next_p;
        q = next_q;
    }
    Ok((IntPolynomial::new(p), IntPolynomial::new(q)))
}

/// A random Littlewood polynomial of degree `n`: `n + 1` coefficients in
/// {-1, +1} drawn from the splitmix64 stream seeded with `seed` (top bit of
/// each output decides the sign). Equal seeds give equal polynomials.
pub fn random_littlewood(n: usize, seed: u64) -> IntPolynomial {
    let mut g = SplitMix64::new(seed);
    IntPolynomial::new((0..=n).map(|_| g.next_sign()).collect())
}
