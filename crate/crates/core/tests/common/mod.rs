#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use symschub_core::linalg::{rat, Rational, RationalMatrix};
use symschub_core::{BoxBound, FlagMatrix, Partition, Subspace};

pub fn bm(m: u32) -> BoxBound {
    BoxBound::new(m).unwrap()
}

pub fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Partitions of `n` with parts at most `max`, as descending vectors.
pub fn partitions_of(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions_of(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn horizontal_strips(lambda: &[u32], r: u32) -> Vec<Vec<u32>> {
    // mu_1 >= lambda_1 >= mu_2 >= lambda_2 >= ...
    fn go(lambda: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lambda.len() + 1 {
            if left == 0 {
                let mut mu = cur.clone();
                while mu.last() == Some(&0) {
                    mu.pop();
                }
                out.push(mu);
            }
            return;
        }
        let base = lambda.get(i).copied().unwrap_or(0);
        let cap = if i == 0 { base + left } else { lambda[i - 1].min(base + left) };
        for v in base..=cap {
            cur.push(v);
            go(lambda, i + 1, left - (v - base), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, r, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, n - 1);
            // moving n-1 left past (len - pos) entries
            let s = if (perm.len() - pos) % 2 == 0 { sign } else { -sign };
            out.push((q, s));
        }
    }
    out
}

/// `s_μ · s_ν` by Jacobi-Trudi for `s_μ` and the Pieri rule for each `h_k`.
pub fn schur_product(mu: &[u32], nu: &[u32]) -> HashMap<Vec<u32>, i64> {
    let l = mu.len();
    let mut total: HashMap<Vec<u32>, i64> = HashMap::new();
    for (sigma, sign) in permutations(l) {
        let ks: Vec<i64> = (0..l).map(|i| mu[i] as i64 - i as i64 + sigma[i] as i64).collect();
        if ks.iter().any(|&k| k < 0) {
            continue;
        }
        let mut cur: HashMap<Vec<u32>, i64> = HashMap::from([(nu.to_vec(), 1)]);
        for &k in &ks {
            let mut next = HashMap::new();
            for (lam, c) in &cur {
                for strip in horizontal_strips(lam, k as u32) {
                    *next.entry(strip).or_insert(0) += c;
                }
            }
            cur = next;
        }
        for (lam, c) in cur {
            *total.entry(lam).or_insert(0) += sign * c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Standard Young tableaux of shape `λ` by the hook length formula.
pub fn hook_count(lambda: &[u32]) -> BigUint {
    let n: u32 = lambda.iter().sum();
    let conj: Vec<u32> = (0..lambda.first().copied().unwrap_or(0))
        .map(|j| lambda.iter().filter(|&&r| r > j).count() as u32)
        .collect();
    let mut num = BigUint::from(1u32);
    for k in 2..=n {
        num *= k;
    }
    let mut den = BigUint::from(1u32);
    for (i, &r) in lambda.iter().enumerate() {
        for j in 0..r {
            den *= r - j - 1 + conj[j as usize] - i as u32 - 1 + 1;
        }
    }
    num / den
}

/// Degree of LG(m) in its Plücker embedding:
/// `2^{m(m-1)/2} N! Π_{i=1}^m (i-1)!/(2i-1)!` with `N = m(m+1)/2`.
pub fn lg_degree_formula(m: u32) -> BigUint {
    let fact = |k: u32| (1..=k).fold(BigUint::from(1u32), |a, b| a * b);
    let n = m * (m + 1) / 2;
    let mut num = fact(n) << (m * (m - 1) / 2);
    let mut den = BigUint::from(1u32);
    for i in 1..=m {
        num *= fact(i - 1);
        den *= fact(2 * i - 1);
    }
    num / den
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, range: i64) -> RationalMatrix {
    let data = (0..rows * cols).map(|_| rat(rng.gen_range(-range..=range))).collect();
    RationalMatrix::from_vec(rows, cols, data)
}

/// A full-rank `2m x m` subspace.
pub fn random_subspace(rng: &mut ChaCha8Rng, m: usize) -> Subspace<Rational> {
    loop {
        let h = random_matrix(rng, 2 * m, m, 3);
        if h.rank() == m {
            return Subspace::from_basis(h).unwrap();
        }
    }
}

/// A point of `X_λ F•`: the `i`-th basis vector is a random combination of
/// the first `m + i - λ_i` columns of the flag.
pub fn random_member(rng: &mut ChaCha8Rng, lambda: &Partition, flag: &FlagMatrix) -> Subspace<Rational> {
    let n = flag.dim();
    let m = n / 2;
    loop {
        let mut cols = Vec::new();
        for i in 1..=m {
            let k = m + i - lambda.part(i - 1) as usize;
            let coeffs = random_matrix(rng, k, 1, 4);
            cols.push(flag.matrix().leading_columns(k).mul(&coeffs).column(0));
        }
        let h = RationalMatrix::from_columns(&cols);
        if h.rank() == m {
            return Subspace::from_basis(h).unwrap();
        }
    }
}

pub fn random_box_partition(rng: &mut ChaCha8Rng, m: u32) -> Partition {
    let mut parts: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=m)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).unwrap()
}
