use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub const RATIONAL_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Elimination modulo a random prime near 2^61. With `verify`, a second
    /// independent prime is used and the larger rank is kept.
    Modular { verify: bool },
    /// Exact fraction-free elimination over the integers, `n <= 64`.
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    /// Primes used; empty for rational mode.
    pub primes: Vec<u64>,
}

/// Rank of the 0/1 adjacency matrix over the rationals.
pub fn adjacency_rank<R: Rng + ?Sized>(g: &SimpleGraph, mode: RankMode, rng: &mut R) -> Result<RankResult> {
    match mode {
        RankMode::Rational => {
            if g.n() > RATIONAL_LIMIT {
                return Err(Error::Size(format!(
                    "rational rank supports n <= {RATIONAL_LIMIT}, got {}",
                    g.n()
                )));
            }
            Ok(RankResult {
                rank: rational_rank(g),
                primes: Vec::new(),
            })
        }
        RankMode::Modular { verify } => {
            let p = random_prime(rng);
            let mut rank = modular_rank(g, p);
            let mut primes = vec![p];
            if verify {
                let q = loop {
                    let q = random_prime(rng);
                    if q != p {
                        break q;
                    }
                };
                // A bad prime can only lower the rank.
                rank = rank.max(modular_rank(g, q));
                primes.push(q);
            }
            Ok(RankResult { rank, primes })
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Uniform random prime in `[2^61 - 2^40, 2^61)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    const HI: u64 = 1 << 61;
    const LO: u64 = HI - (1 << 40);
    loop {
        let p = rng.random_range(LO..HI) | 1;
        if is_prime(p) {
            return p;
        }
    }
}

fn modular_rank(g: &SimpleGraph, p: u64) -> usize {
    let n = g.n();
    let mut a = vec![vec![0u64; n]; n];
    for &(u, v) in g.edges() {
        a[u as usize][v as usize] = 1;
        a[v as usize][u as usize] = 1;
    }
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        let pivot_row = std::mem::take(&mut a[rank]);
        for row in a.iter_mut().skip(rank + 1) {
            if row[col] == 0 {
                continue;
            }
            let f = mul_mod(row[col], inv, p);
            for j in col..n {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        a[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Bareiss fraction-free elimination.
fn rational_rank(g: &SimpleGraph) -> usize {
    let n = g.n();
    let mut a = vec![vec![BigInt::from(0); n]; n];
    for &(u, v) in g.edges() {
        a[u as usize][v as usize] = BigInt::from(1);
        a[v as usize][u as usize] = BigInt::from(1);
    }
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r][col] != zero) else {
            continue;
        };
        a.swap(rank, piv);
        for i in rank + 1..n {
            for j in col + 1..n {
                let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = zero.clone();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}
