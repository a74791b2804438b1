//! Brute-force oracles shared by the integration tests. These deliberately
//! avoid the enumeration code under test: messages are counted in plain
//! base q and encoded one by one.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use weightforge::linalg::{hamming_weight_generic, FqVector, GenMatrix, LinearCode};
use weightforge::Field;

pub fn random_code(rng: &mut impl Rng, q: u64, k: usize, n: usize) -> LinearCode {
    let f = Field::new(q).unwrap();
    loop {
        let rows: Vec<FqVector> = (0..k).map(|_| random_vec(rng, &f, n)).collect();
        if let Ok(c) = LinearCode::new(GenMatrix::new(&f, n, rows).unwrap()) {
            return c;
        }
    }
}

pub fn random_vec(rng: &mut impl Rng, f: &Field, n: usize) -> FqVector {
    let q = f.q() as u64;
    let v: Vec<u64> = (0..n).map(|_| rng.random_range(0..q)).collect();
    FqVector::from_u64s(f, &v).unwrap()
}

/// All messages of length k in lexicographic order.
pub fn all_messages(f: &Field, k: usize) -> Vec<FqVector> {
    let q = f.q() as u64;
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut r| {
            let mut digits = vec![0u64; k];
            for d in digits.iter_mut().rev() {
                *d = r % q;
                r /= q;
            }
            FqVector::from_u64s(f, &digits).unwrap()
        })
        .collect()
}

fn codewords(code: &LinearCode) -> Vec<(FqVector, FqVector)> {
    all_messages(code.field(), code.k())
        .into_iter()
        .map(|m| {
            let c = code.gen().combine(m.elems()).unwrap();
            (m, c)
        })
        .collect()
}

pub fn brute_spectrum(code: &LinearCode) -> Vec<(usize, u64)> {
    let mut counts = BTreeMap::new();
    for (_, c) in codewords(code) {
        *counts.entry(hamming_weight_generic(&c)).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

pub fn brute_distinct_nonzero(code: &LinearCode) -> usize {
    brute_spectrum(code).iter().filter(|(w, _)| *w != 0).count()
}

pub type Pair = (FqVector, FqVector);

/// Distance histogram and the lexicographically smallest colliding pair.
pub fn brute_coset(code: &LinearCode, x: &FqVector) -> (Vec<(usize, u64)>, Option<Pair>) {
    let words = codewords(code);
    let dist: Vec<usize> = words
        .iter()
        .map(|(_, c)| hamming_weight_generic(&c.sub(x).unwrap()))
        .collect();
    let mut counts = BTreeMap::new();
    for &d in &dist {
        *counts.entry(d).or_insert(0u64) += 1;
    }
    let mut pair = None;
    'outer: for i in 0..words.len() {
        for j in i + 1..words.len() {
            if dist[i] == dist[j] {
                pair = Some((words[i].0.clone(), words[j].0.clone()));
                break 'outer;
            }
        }
    }
    (counts.into_iter().collect(), pair)
}

pub fn brute_rank(code: &LinearCode) -> usize {
    // log_q of the number of distinct codewords
    let mut words: Vec<Vec<u8>> = codewords(code)
        .into_iter()
        .map(|(_, c)| c.into_elems())
        .collect();
    words.sort();
    words.dedup();
    let q = code.q() as usize;
    let mut size = words.len();
    let mut r = 0;
    while size > 1 {
        size /= q;
        r += 1;
    }
    r
}
