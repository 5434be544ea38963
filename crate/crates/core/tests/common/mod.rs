//! Independent oracles and generators shared by the integration suites.
#![allow(dead_code)]

use mdjohnson::magnus::{GroupWord, RingContext};
use mdjohnson::padic_linalg::PadicContext;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn free(rank: usize, prime: u64, degree: usize) -> RingContext {
    RingContext::free(rank, PadicContext::new(prime, 16).unwrap(), degree).unwrap()
}

pub fn surface(genus: usize, prime: u64, degree: usize) -> RingContext {
    RingContext::surface(genus, PadicContext::new(prime, 16).unwrap(), degree).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, generators: usize, max_syllables: usize) -> GroupWord {
    let len = rng.gen_range(1..=max_syllables);
    GroupWord::new((0..len).map(|_| {
        let e: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (rng.gen_range(0..generators), e)
    }))
}

/// Matrix of x_i ↦ (x_j ↦ x_i x_j − x_j x_i) over the full word basis of a
/// free algebra of rank r, built from the formula alone. Row (j, k, l) is
/// the coefficient of x_k x_l in the image of x_j.
pub fn naive_commutator_matrix(r: usize) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; r]; r * r * r];
    for i in 0..r {
        for j in 0..r {
            rows[j * r * r + i * r + j][i] += 1;
            rows[j * r * r + j * r + i][i] -= 1;
        }
    }
    rows
}

/// Rank over ℚ by fraction-exact Gaussian elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for k in c..cols {
                    let d = &f * &m[rank][k];
                    m[i][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over 𝔽_p; equal to the rational rank iff the cokernel has no p-torsion.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let s = inv(m[rank][c]);
        for k in 0..cols {
            m[rank][k] = m[rank][k] * s % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..cols {
                    m[i][k] = (m[i][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn one() -> BigRational {
    BigRational::one()
}
