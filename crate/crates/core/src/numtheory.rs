//! Primality, the Legendre symbol, and prime enumeration.
//!
//! Everything downstream is indexed by an odd prime `p`: the polynomial
//! constructors, the root-of-unity grids, and the certificate sweep. The
//! [`Prime`] newtype carries the "odd, certified prime, at least 3"
//! invariant so later preconditions become unrepresentable states.
//!
//! The Legendre symbol is computed by Euler's criterion
//! `(k|p) = k^((p-1)/2) mod p` with 128-bit modular arithmetic — exact for
//! the whole `u64` range and fast enough that callers needing bulk tables
//! (one symbol per residue class) build them by marking squares instead.

use crate::error::{Error, Result};

/// An odd prime `p >= 3`, certified at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Certify `value` as an odd prime `>= 3`.
    ///
    /// `2` is rejected: every construction in this crate (quadratic
    /// residues, half-integer cosine sums, `(p-1)/2` index ranges) needs an
    /// odd modulus.
    pub fn new(value: u64) -> Result<Self> {
        if value < 3 || value.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "{value} is not an odd prime >= 3"
            )));
        }
        if !is_prime(value)? {
            return Err(Error::Domain(format!("{value} is not prime")));
        }
        Ok(Self(value))
    }

    /// The prime as a `u64`.
    pub fn get(self) -> u64 {
        self.0
    }

    /// The prime as a `usize` (degrees, grid sizes).
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// True when `p = 1 (mod 4)`, i.e. `-1` is a quadratic residue.
    pub fn is_one_mod_four(self) -> bool {
        self.0 % 4 == 1
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `(a * b) mod m` without overflow.
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply.
fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test for the full `u64` range.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be deterministic for all `n < 3.3 * 10^24`, which covers `u64`.
///
/// Errors with [`Error::Domain`] for `n < 2`, where "prime" is undefined
/// in this crate's usage.
pub fn is_prime(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "primality is only defined here for n >= 2, got {n}"
        )));
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return Ok(true);
        }
        if n.is_multiple_of(q) {
            return Ok(false);
        }
    }
    // n is odd and > 37 here. Write n - 1 = d * 2^s with d odd.
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Legendre symbol `(k|p)` in `{-1, 0, 1}` by Euler's criterion.
///
/// `k` may be negative; it is reduced modulo `p` first. Euler's criterion
/// is used (one modular exponentiation) rather than quadratic reciprocity:
/// the cost is O(log p) multiplications and the code path has no recursion
/// or sign bookkeeping to get wrong.
pub fn legendre(k: i64, p: Prime) -> i32 {
    let m = p.get();
    let r = k.rem_euclid(m as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = powmod(r, (m - 1) / 2, m);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, m - 1, "Euler's criterion must give ±1 mod p");
        -1
    }
}

/// All symbols `(k|p)` for `k = 0..p-1`, built in O(p) by marking squares.
///
/// `table[k]` is `(k|p)`. Used by the bulk evaluators (coefficient
/// construction, sign scans) where calling [`legendre`] per index would
/// cost an extra O(log p) factor.
pub fn legendre_table(p: Prime) -> Vec<i8> {
    let m = p.get();
    let mut table = vec![-1i8; p.index()];
    table[0] = 0;
    for x in 1..m {
        table[mulmod(x, x, m) as usize] = 1;
    }
    table
}

/// Ordered odd primes in the inclusive range `[lo, hi]`.
///
/// Requires `2 <= lo <= hi`. The returned values are [`Prime`]s, so the
/// even prime 2 is never part of the result; ranges touching 2 simply
/// start at 3. Enumeration is by trial over odd candidates with
/// Miller-Rabin certification — sweeps here are desk-scale (at most a few
/// thousand primes), so a sieve would add state for no measurable win.
pub fn primes_in_range(lo: u64, hi: u64) -> Result<Vec<Prime>> {
    if lo < 2 || lo > hi {
        return Err(Error::Domain(format!(
            "need 2 <= lo <= hi, got lo={lo}, hi={hi}"
        )));
    }
    let mut out = Vec::new();
    let mut n = lo.max(3);
    if n.is_multiple_of(2) {
        n += 1;
    }
    while n <= hi {
        if is_prime(n)? {
            out.push(Prime(n));
        }
        n += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: trial division up to the square root.
    fn is_prime_oracle(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Brute-force oracle: `(k|p)` by enumerating the squares mod p.
    fn legendre_oracle(k: i64, p: u64) -> i32 {
        let r = k.rem_euclid(p as i64) as u64;
        if r == 0 {
            return 0;
        }
        for x in 1..p {
            if (x * x) % p == r {
                return 1;
            }
        }
        -1
    }

    #[test]
    fn is_prime_matches_trial_division() {
        for n in 2..=2_000u64 {
            assert_eq!(is_prime(n).unwrap(), is_prime_oracle(n), "n={n}");
        }
    }

    #[test]
    fn is_prime_named_cases() {
        assert!(is_prime(2).unwrap());
        assert!(!is_prime(9).unwrap());
        assert!(is_prime(10_007).unwrap());
        assert!(is_prime_oracle(10_007));
    }

    #[test]
    fn is_prime_rejects_below_two() {
        assert!(matches!(is_prime(0), Err(Error::Domain(_))));
        assert!(matches!(is_prime(1), Err(Error::Domain(_))));
    }

    #[test]
    fn prime_type_rejects_two_and_composites() {
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(0).is_err());
        assert_eq!(Prime::new(10_007).unwrap().get(), 10_007);
    }

    #[test]
    fn legendre_named_cases() {
        let p7 = Prime::new(7).unwrap();
        assert_eq!(legendre(1, p7), 1);
        assert_eq!(legendre(14, p7), 0);
        assert_eq!(legendre(3, p7), -1);
        assert_eq!(legendre(2, p7), 1);
        assert_eq!(legendre(-1, p7), legendre(6, p7));
    }

    #[test]
    fn legendre_matches_square_enumeration_small_primes() {
        for p in primes_in_range(3, 499).unwrap() {
            for k in 0..p.get() as i64 {
                assert_eq!(
                    legendre(k, p),
                    legendre_oracle(k, p.get()),
                    "k={k}, p={p}"
                );
            }
        }
    }

    #[test]
    fn legendre_table_matches_pointwise() {
        for p in primes_in_range(3, 199).unwrap() {
            let table = legendre_table(p);
            for k in 0..p.get() {
                assert_eq!(i32::from(table[k as usize]), legendre(k as i64, p));
            }
        }
    }

    #[test]
    fn legendre_squares_to_one_off_the_divisor() {
        let p = Prime::new(9973).unwrap();
        for k in 1..500i64 {
            let s = legendre(k, p);
            assert_eq!(s * s, 1);
        }
        assert_eq!(legendre(9973, p), 0);
    }

    #[test]
    fn legendre_is_multiplicative() {
        // (ab|p) = (a|p)(b|p): a complete character, not just a square test.
        let p = Prime::new(1009).unwrap();
        let mut g = crate::rng::SplitMix64::new(11);
        for _ in 0..2_000 {
            let a = (g.next_u64() % 5_000) as i64 - 2_500;
            let b = (g.next_u64() % 5_000) as i64 - 2_500;
            assert_eq!(legendre(a * b, p), legendre(a, p) * legendre(b, p));
        }
    }

    #[test]
    fn residue_count_is_half_for_all_primes_to_ten_thousand() {
        for p in primes_in_range(3, 10_000).unwrap() {
            let table = legendre_table(p);
            let residues = table.iter().filter(|&&s| s == 1).count() as u64;
            assert_eq!(residues, (p.get() - 1) / 2, "p={p}");
        }
    }

    #[test]
    fn primes_in_range_named_cases() {
        let got: Vec<u64> = primes_in_range(3, 12)
            .unwrap()
            .iter()
            .map(|p| p.get())
            .collect();
        assert_eq!(got, vec![3, 5, 7, 11]);
        assert!(primes_in_range(14, 16).unwrap().is_empty());
        let got: Vec<u64> = primes_in_range(9_970, 9_980)
            .unwrap()
            .iter()
            .map(|p| p.get())
            .collect();
        assert_eq!(got, vec![9_973]);
    }

    #[test]
    fn primes_in_range_matches_sieve_oracle() {
        // Independent oracle: classic sieve of Eratosthenes.
        let hi = 5_000usize;
        let mut sieve = vec![true; hi + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=hi {
            if sieve[i] {
                for j in (i * i..=hi).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        let oracle: Vec<u64> = (3..=hi as u64).filter(|&n| sieve[n as usize]).collect();
        let got: Vec<u64> = primes_in_range(2, hi as u64)
            .unwrap()
            .iter()
            .map(|p| p.get())
            .collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn primes_in_range_rejects_bad_bounds() {
        assert!(matches!(primes_in_range(1, 10), Err(Error::Domain(_))));
        assert!(matches!(primes_in_range(10, 3), Err(Error::Domain(_))));
    }
}
