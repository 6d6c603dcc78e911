//! Discrete Fourier transforms of arbitrary length.
//!
//! The grid evaluator needs `X_j = sum_r b_r e^{+2 pi i j r / M}` for grid
//! sizes `M` that are usually prime (one node per residue class mod p), so
//! power-of-two FFTs do not apply directly. The standard remedy is
//! Bluestein's chirp transform: with `c_n = e^{i pi n^2 / M}`,
//!
//! ```text
//! X_j = c_j * sum_r (b_r c_r) * conj(c_{j-r})
//! ```
//!
//! which is a linear convolution of length-`M` sequences, computable with a
//! zero-padded radix-2 FFT of size `L >= 2M - 1`. Cost O(M log M) for any
//! `M`, error O(eps log L) relative to the coefficient mass.
//!
//! The chirp phases use `n^2 mod 2M` in integer arithmetic before touching
//! floating point: `e^{i pi n^2 / M}` has period `2M` in `n^2`, and the
//! reduced angle stays in `[0, 2 pi)` where `sin`/`cos` are fully accurate.

use num_complex::Complex64;
use std::f64::consts::PI;

/// In-place iterative radix-2 Cooley-Tukey FFT.
///
/// `sign` is `+1.0` for the forward convention used here
/// (`e^{+2 pi i jk / L}`) and `-1.0` for the inverse direction (which the
/// caller scales by `1/L`). `data.len()` must be a power of two.
fn fft_pow2(data: &mut [Complex64], sign: f64) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }
    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
    // Butterflies, with per-stage twiddles from one table of L/2 roots.
    let mut len = 2usize;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        for chunk in data.chunks_mut(len) {
            let mut w = Complex64::new(1.0, 0.0);
            let half = len / 2;
            for i in 0..half {
                let u = chunk[i];
                let v = chunk[i + half] * w;
                chunk[i] = u + v;
                chunk[i + half] = u - v;
                w *= wlen;
            }
        }
        len <<= 1;
    }
}

/// Chirp phase `e^{i pi n^2 / m}` with the square reduced mod `2m` exactly.
fn chirp(n: u64, m: u64) -> Complex64 {
    // n^2 mod 2m via u128 to avoid overflow for any grid size in range.
    let sq = ((n as u128 * n as u128) % (2 * m as u128)) as f64;
    let ang = PI * sq / m as f64;
    Complex64::new(ang.cos(), ang.sin())
}

/// Forward DFT of arbitrary length: `out[j] = sum_r b[r] e^{+2 pi i jr/M}`.
///
/// Implements Bluestein's algorithm on top of [`fft_pow2`].
pub fn dft_arbitrary(b: &[Complex64]) -> Vec<Complex64> {
    let m = b.len();
    if m == 0 {
        return Vec::new();
    }
    if m == 1 {
        return vec![b[0]];
    }
    let l = (2 * m - 1).next_power_of_two();

    // u_r = b_r * c_r, zero-padded to L.
    let mut u = vec![Complex64::new(0.0, 0.0); l];
    for (r, &br) in b.iter().enumerate() {
        u[r] = br * chirp(r as u64, m as u64);
    }
    // v_n = conj(c_n) for |n| <= M-1, wrapped circularly into length L.
    let mut v = vec![Complex64::new(0.0, 0.0); l];
    v[0] = chirp(0, m as u64).conj();
    for n in 1..m {
        let c = chirp(n as u64, m as u64).conj();
        v[n] = c;
        v[l - n] = c;
    }

    fft_pow2(&mut u, 1.0);
    fft_pow2(&mut v, 1.0);
    for (ui, vi) in u.iter_mut().zip(v.iter()) {
        *ui *= *vi;
    }
    fft_pow2(&mut u, -1.0);

    let scale = 1.0 / l as f64;
    (0..m)
        .map(|j| u[j] * scale * chirp(j as u64, m as u64))
        .collect()
}
