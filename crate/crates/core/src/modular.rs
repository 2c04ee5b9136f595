//! Multi-modular kernels of rational matrices.
//!
//! The reduced echelon form is computed modulo word-sized primes, lifted by
//! Chinese remaindering and rational reconstruction, and the resulting kernel
//! is checked exactly against the input. A verified kernel is complete: the
//! rank modulo a prime never exceeds the rank over the rationals.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Field, Rational};

const MAX_PRIMES: usize = 48;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = (v % BigInt::from(p)).to_i128().expect("residue fits");
    if r < 0 {
        (r + p as i128) as u64
    } else {
        r as u64
    }
}

/// Reduced echelon form mod `p`: pivot columns and, for each pivot row, the
/// entries in the non-pivot columns.
fn rref_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = pow_mod(m[r][c], p - 2, p);
        for v in m[r][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (pivots, m)
}

/// `a / b` with `|a|, b <= sqrt(m / 2)` and `a = b x mod m`, if one exists.
fn reconstruct(x: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Kernel basis of the integer matrix `rows`, one vector per non-pivot
/// column with that column set to one, or `None` if no lift verified.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Option<Vec<Vec<Rational>>> {
    let mut best: Option<Vec<usize>> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for &p in primes() {
        let reduced: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|v| reduce(v, p)).collect()).collect();
        let (pivots, rref) = rref_mod(&reduced, cols, p);
        let better = match &best {
            None => true,
            Some(b) => pivots.len() > b.len() || (pivots.len() == b.len() && pivots < *b),
        };
        if better {
            best = Some(pivots.clone());
            residues.clear();
            modulus = BigInt::one();
        } else if best.as_ref() != Some(&pivots) {
            continue;
        }
        let free: Vec<usize> = free_columns(&pivots, cols);
        let current: Vec<u64> = rref
            .iter()
            .flat_map(|row| free.iter().map(move |&j| row[j]))
            .collect();
        let pb = BigInt::from(p);
        if residues.is_empty() {
            residues = current.iter().map(|&v| BigInt::from(v)).collect();
        } else {
            // x = r + M ((v - r) M^{-1} mod p)
            let m_inv = pow_mod(reduce(&modulus, p), p - 2, p);
            for (r, &v) in residues.iter_mut().zip(&current) {
                let diff = (v + p - reduce(r, p)) % p;
                let k = mul_mod(diff, m_inv, p);
                *r += &modulus * BigInt::from(k);
            }
        }
        modulus *= &pb;
        let bound = (&modulus >> 1usize).sqrt();
        let lifted: Option<Vec<Rational>> = residues.iter().map(|r| reconstruct(r, &modulus, &bound)).collect();
        let Some(lifted) = lifted else { continue };
        let kernel = assemble(&pivots, &free, &lifted, cols);
        if verify(rows, &kernel) {
            return Some(kernel);
        }
    }
    None
}

fn free_columns(pivots: &[usize], cols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

fn assemble(pivots: &[usize], free: &[usize], entries: &[Rational], cols: usize) -> Vec<Vec<Rational>> {
    free.iter()
        .enumerate()
        .map(|(k, &j)| {
            let mut x = vec![Rational::zero(); cols];
            x[j] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -entries[i * free.len() + k].clone();
            }
            x
        })
        .collect()
}

fn verify(rows: &[Vec<BigInt>], kernel: &[Vec<Rational>]) -> bool {
    kernel.iter().all(|x| {
        let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        rows.iter().all(|row| {
            row.iter()
                .zip(&ints)
                .filter(|(a, b)| a.sign() != Sign::NoSign && b.sign() != Sign::NoSign)
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    })
}

/// Rows of a rational matrix scaled to integers.
pub fn integer_rows(rows: impl Iterator<Item = Vec<Rational>>) -> Vec<Vec<BigInt>> {
    rows.map(|r| {
        let refs: Vec<&Rational> = r.iter().collect();
        let s = Rational::integral_scale(&refs).unwrap_or_else(Rational::one);
        r.into_iter()
            .map(|v| {
                let v = v * &s;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn small_primes() {
        let ps: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn reconstructs_fractions() {
        let m = BigInt::from(1_000_003u64);
        let x = BigInt::from(2) * BigInt::from(3u64).modpow(&(&m - 2u32), &m) % &m;
        let bound = (&m >> 1usize).sqrt();
        assert_eq!(reconstruct(&x, &m, &bound), Some(rat(2, 3)));
    }

    #[test]
    fn kernel_with_large_answers() {
        let big = BigInt::from(10u64).pow(30) + 7u32;
        let rows = vec![vec![big.clone(), BigInt::from(3), BigInt::zero()], vec![BigInt::zero(), BigInt::one(), BigInt::from(-1)]];
        let k = integer_kernel(&rows, 3).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][2], int(1));
        assert_eq!(k[0][0], Rational::new(BigInt::from(-3), big));
    }
}
