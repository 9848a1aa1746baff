//! Helpers shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use sgs_core::{GeneratorSet, Perm, TransversalSystem};

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Perm {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Perm::from_images(&images).unwrap()
}

/// `count` random generators of degree `n`.
pub fn random_gens<R: Rng>(n: usize, count: usize, rng: &mut R) -> GeneratorSet {
    let perms: Vec<Perm> = (0..count).map(|_| random_perm(n, rng)).collect();
    GeneratorSet::new(n, perms, format!("random:n={n}")).unwrap()
}

/// `sigma_1 * sigma_2 * ... * sigma_n` with each factor drawn uniformly from
/// the stored representatives of its level (identity included).
pub fn random_element<R: Rng>(sys: &TransversalSystem, rng: &mut R) -> Perm {
    let n = sys.degree();
    let mut acc = Perm::identity(n);
    for level in sys.levels() {
        let k = level.k();
        let pick = rng.random_range(0..level.s());
        let col = level.columns()[pick];
        if col != k {
            let rep = sys.transversal(k, col).unwrap();
            acc = acc.compose(&rep).unwrap();
        }
    }
    acc
}

/// Checks that `pairs` random products of group elements sift to members.
pub fn check_closure<R: Rng>(
    sys: &TransversalSystem,
    pairs: usize,
    rng: &mut R,
) -> Result<(), String> {
    for _ in 0..pairs {
        let a = random_element(sys, rng);
        let b = random_element(sys, rng);
        let ab = a.compose(&b).unwrap();
        if !sys.contains(&ab) {
            return Err(format!("{a} * {b} = {ab} not a member"));
        }
    }
    Ok(())
}

/// Every perm of degree `n`, in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Perm::from_images(prefix).unwrap());
            return;
        }
        for x in 1..=n {
            if !used[x - 1] {
                used[x - 1] = true;
                prefix.push(x);
                extend(prefix, used, out);
                prefix.pop();
                used[x - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `best[s]` is the least `prod s_k` over `1 <= s_k <= k` with
/// `sum(s_k - 1) = s`, by enumerating every tuple.
pub fn exhaustive_min_product(n: usize) -> Vec<BigUint> {
    let max = n * (n - 1) / 2;
    let mut best: Vec<Option<u64>> = vec![None; max + 1];
    fn walk(k: usize, n: usize, sum: usize, prod: u64, best: &mut [Option<u64>]) {
        if k > n {
            let slot = &mut best[sum];
            *slot = Some(slot.map_or(prod, |b| b.min(prod)));
            return;
        }
        for s in 1..=k {
            walk(k + 1, n, sum + s - 1, prod * s as u64, best);
        }
    }
    walk(1, n, 0, 1, &mut best);
    best.into_iter()
        .map(|b| BigUint::from(b.unwrap()))
        .collect()
}

/// The cycle `[a, a+1, ..., b]` at degree `n`.
pub fn run_cycle(a: usize, b: usize, n: usize) -> Perm {
    let mut images: Vec<usize> = (1..=n).collect();
    for x in a..b {
        images[x - 1] = x + 1;
    }
    images[b - 1] = a;
    Perm::from_images(&images).unwrap()
}

/// `x -> x - (k - j)` for `k - j < x <= k`, `x -> k + 1 - x` for `x <= k - j`.
pub fn descending_rep(k: usize, j: usize, n: usize) -> Perm {
    let d = k - j;
    let images: Vec<usize> = (1..=n)
        .map(|x| {
            if x > k {
                x
            } else if x > d {
                x - d
            } else {
                k + 1 - x
            }
        })
        .collect();
    Perm::from_images(&images).unwrap()
}
