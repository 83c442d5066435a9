//! Rational nullspace through elimination modulo word-size primes.
//!
//! Modulo each prime the matrix is brought to reduced row echelon form, and
//! for each free column `f` the vector with `x_f = 1` and zeros on the other
//! free columns is read off. Residues from successive primes are combined by
//! the Chinese remainder theorem and lifted to rationals by rational
//! reconstruction. A lift is accepted only after `m·x = 0` has been checked
//! exactly for every vector.
//!
//! The accepted basis is the one [`super::nullspace`] returns. Rank over Q is
//! at least the rank modulo p, so the rational nullity is at most the number
//! of free columns found modulo p. Each accepted vector is an exact null
//! vector supported on columns `<= f`, so each of those free columns is also
//! free over Q; the free sets coincide and the normalized vectors are the
//! unique ones with that shape.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{normalize_integer, RationalMatrix};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Give up after this many primes.
const MAX_PRIMES: usize = 20_000;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `n < 2^32`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^31`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    (1..(1u64 << 31)).rev().filter(|&n| is_prime(n))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

struct ModularNullspace {
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// `values[k][i]`: coordinate `pivots[i]` of the vector for `free[k]`.
    values: Vec<Vec<u64>>,
}

fn solve_mod(a: &[Vec<BigInt>], cols: usize, p: u64) -> ModularNullspace {
    let big_p = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&big_p).to_u64().expect("reduced below p")).collect())
        .collect();
    let n_rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(s) = (r..n_rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, s);
        let inv = inv_mod(m[r][c], p);
        for x in m[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = std::mem::take(&mut m[r]);
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + f * y) % p;
            }
        }
        m[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let values = free
        .iter()
        .map(|&f| (0..pivots.len()).map(|i| (p - m[i][f]) % p).collect())
        .collect();
    ModularNullspace { pivots, free, values }
}

/// `n/d` with `n ≡ a·d (mod m)` and `|n|, d <= sqrt(m/2)`, if one exists.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Lifts one vector. Entries share a denominator, so each residue is first
/// multiplied by the denominator found so far and only the remaining factor
/// has to be reconstructed.
fn lift_vector(residues: &[BigInt], modulus: &BigInt) -> Option<Vec<ExactScalar>> {
    let mut den = BigInt::one();
    let mut out = Vec::with_capacity(residues.len());
    for x in residues {
        let q = rational_reconstruct(&(x * &den).mod_floor(modulus), modulus)?;
        out.push(&q / BigRational::from_integer(den.clone()));
        den *= q.denom();
    }
    Some(out)
}

fn exact_null(a: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    a.iter().all(|row| {
        row.iter().zip(x).filter(|(_, v)| !v.is_zero()).fold(BigInt::zero(), |acc, (r, v)| acc + r * v).is_zero()
    })
}

/// Same contract and output as [`super::nullspace`], computed modulo primes
/// and certified by exact multiplication.
pub fn nullspace_multimodular(m: &RationalMatrix) -> Result<Vec<Vec<BigInt>>> {
    let a = m.integer_rows();
    let cols = m.cols();
    let mut reference: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0usize;
    let mut next_attempt = 2usize;

    for (n, p) in primes().enumerate() {
        if n >= MAX_PRIMES {
            break;
        }
        let sol = solve_mod(&a, cols, p);
        if sol.free.is_empty() {
            return Ok(Vec::new());
        }
        let keep = match &reference {
            Some((piv, _)) if *piv == sol.pivots => true,
            // An unlucky prime loses rank somewhere, which pushes its pivots
            // later; whichever pivot list is earlier wins.
            Some((piv, _)) => {
                let better = sol.pivots.len() > piv.len() || (sol.pivots.len() == piv.len() && sol.pivots < *piv);
                if !better {
                    continue;
                }
                false
            }
            None => false,
        };
        if !keep {
            reference = Some((sol.pivots.clone(), sol.free.clone()));
            residues = sol.values.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
            modulus = BigInt::from(p);
            used = 1;
            next_attempt = 2;
            continue;
        }

        // Garner step: x ← x + M·((r - x)·M⁻¹ mod p).
        let big_p = BigInt::from(p);
        let m_inv = inv_mod(modulus.mod_floor(&big_p).to_u64().expect("below p"), p);
        for (res, vals) in residues.iter_mut().zip(&sol.values) {
            for (x, &r) in res.iter_mut().zip(vals) {
                let xm = x.mod_floor(&big_p).to_u64().expect("below p");
                let t = (r + p - xm) % p * m_inv % p;
                if t != 0 {
                    *x += &modulus * t;
                }
            }
        }
        modulus *= &big_p;
        used += 1;

        if used < next_attempt {
            continue;
        }
        next_attempt = used + (used / 4).max(2);
        let (pivots, free) = reference.as_ref().expect("set above");
        if let Some(basis) = try_lift(&a, cols, pivots, free, &residues, &modulus) {
            return Ok(basis);
        }
    }
    Err(Error::NoConvergence(format!("nullspace did not lift after {MAX_PRIMES} primes")))
}

fn try_lift(
    a: &[Vec<BigInt>],
    cols: usize,
    pivots: &[usize],
    free: &[usize],
    residues: &[Vec<BigInt>],
    modulus: &BigInt,
) -> Option<Vec<Vec<BigInt>>> {
    let mut basis = Vec::with_capacity(free.len());
    for (&f, res) in free.iter().zip(residues) {
        let lifted = lift_vector(res, modulus)?;
        let mut x = vec![ExactScalar::zero(); cols];
        x[f] = ExactScalar::one();
        for (&c, v) in pivots.iter().zip(lifted) {
            x[c] = v;
        }
        let ints = normalize_integer(&x);
        if !exact_null(a, &ints) {
            return None;
        }
        basis.push(ints);
    }
    Some(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::nullspace;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_generator() {
        let first: Vec<u64> = primes().take(3).collect();
        assert_eq!(first, [2147483647, 2147483629, 2147483587]);
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        for (n, d) in [(3, 7), (-22, 9), (0, 1), (1, 1), (-1, 18)] {
            let q = BigRational::new(BigInt::from(n), BigInt::from(d));
            let a = (BigInt::from(n) * BigInt::from(d).modinv(&m).unwrap()).mod_floor(&m);
            assert_eq!(rational_reconstruct(&a, &m), Some(q));
        }
        // Too large for the modulus: no answer rather than a wrong one.
        let big = BigInt::from(1u64 << 62);
        assert!(rational_reconstruct(&(&big * 3u32 + 1u32).mod_floor(&m), &m).is_none_or(|q| q.numer() != &(&big * 3u32 + 1u32)));
    }

    #[test]
    fn agrees_with_fraction_free_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (rows, cols, r) in [(8, 12, 3), (20, 30, 11), (25, 25, 24), (15, 10, 10)] {
            let left: Vec<Vec<i64>> = (0..rows).map(|_| (0..r).map(|_| rng.random_range(-50..=50)).collect()).collect();
            let right: Vec<Vec<i64>> = (0..r).map(|_| (0..cols).map(|_| rng.random_range(-50..=50)).collect()).collect();
            let prod: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| (0..r).map(|k| left[i][k] * right[k][j]).sum()).collect())
                .collect();
            let m = RationalMatrix::from_i64_rows(&prod).unwrap();
            assert_eq!(nullspace_multimodular(&m).unwrap(), nullspace(&m));
        }
    }
}
