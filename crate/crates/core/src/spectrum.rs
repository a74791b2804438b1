//! Exhaustive weight spectra and coset-distance profiles.
//!
//! Codewords are visited in a minimal-change order: the message space is
//! walked as a base-p reflected counter over the additive basis
//! `{x^t · row_i}`, so each next codeword is the previous one plus a single
//! precomputed row and costs O(n) (O(n/64) on the packed binary path).
//! The walk is split into independent blocks which may run in parallel; the
//! merged result does not depend on how blocks are scheduled.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{pack, FqVector, LinearCode};

pub const DEFAULT_ENUM_CAP: u64 = 1 << 22;

static ENUM_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ENUM_CAP);

/// Current limit on q^k for any enumeration.
pub fn enum_cap() -> u64 {
    ENUM_CAP.load(Ordering::Relaxed)
}

pub fn set_enum_cap(cap: u64) {
    ENUM_CAP.store(cap, Ordering::Relaxed);
}

/// Returns q^k, or `EnumerationCapExceeded` if it is above the cap.
pub fn check_cap(q: u64, k: usize) -> Result<u64> {
    let cap = enum_cap();
    let size = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::EnumerationCapExceeded { size, cap });
    }
    Ok(size as u64)
}

/// (q^k − 1)/(q − 1) + 1: the most distinct weights, zero included, that a
/// k-dimensional code over GF(q) can have.
pub fn mws_bound(q: u64, k: usize) -> Result<u64> {
    if q < 2 || k < 1 {
        return Err(Error::Overflow(format!("bound undefined for q={q}, k={k}")));
    }
    let qk = q
        .checked_pow(k as u32)
        .filter(|&v| v <= 1 << 62)
        .ok_or_else(|| Error::Overflow(format!("{q}^{k} exceeds 2^62")))?;
    Ok((qk - 1) / (q - 1) + 1)
}

/// Selects the inner loop used for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Packed XOR/popcount for q = 2, table lookups otherwise.
    #[default]
    Auto,
    Generic,
}

/// The weight distribution of a code: sorted `(weight, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpectrum {
    q: u64,
    k: usize,
    n: usize,
    entries: Vec<(usize, u64)>,
}

impl WeightSpectrum {
    fn from_counts(q: u64, k: usize, n: usize, counts: &[u64]) -> WeightSpectrum {
        let entries = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
            .collect();
        let s = WeightSpectrum { q, k, n, entries };
        if let Ok(bound) = mws_bound(q, k) {
            assert!(
                s.distinct_total() as u64 <= bound,
                "distinct weight count {} exceeds the linearity bound {bound}",
                s.distinct_total()
            );
        }
        s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    pub fn distinct_total(&self) -> usize {
        self.entries.len()
    }

    pub fn distinct_nonzero(&self) -> usize {
        self.entries.iter().filter(|(w, _)| *w != 0).count()
    }

    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|(w, _)| *w != 0)
            .map(|(w, _)| *w)
            .collect()
    }

    pub fn max_weight(&self) -> usize {
        self.entries.last().map_or(0, |(w, _)| *w)
    }

    pub fn multiplicity(&self, weight: usize) -> u64 {
        self.entries
            .iter()
            .find(|(w, _)| *w == weight)
            .map_or(0, |(_, c)| *c)
    }

    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }
}

impl std::fmt::Display for WeightSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Distances from a vector `x` outside the code to every codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateWitness {
    pub x: FqVector,
    pub distinct_coset_weights: u64,
    /// Sorted `(distance, count)` pairs over all q^k codewords.
    pub distances: Vec<(usize, u64)>,
    /// The lexicographically smallest pair of distinct messages whose
    /// codewords are equidistant from `x`, present iff the count is below q^k.
    pub collision: Option<(FqVector, FqVector)>,
}

impl TranslateWitness {
    pub fn is_full(&self, q: u64, k: usize) -> bool {
        self.distinct_coset_weights == q.pow(k as u32)
    }
}

/// Additive generators of the message space: `x^t · row_i`, each stepped
/// through its p multiples by repeated addition.
struct Basis {
    field: Field,
    p: u64,
    /// `(message row, elems)`, grouped by row and ordered by t.
    rows: Vec<(usize, Vec<Elem>)>,
    packed: Option<Vec<Vec<u64>>>,
    /// Rank increment of one step of each basis digit.
    places: Vec<u64>,
}

impl Basis {
    fn new(code: &LinearCode, kernel: Kernel) -> Basis {
        let f = code.field();
        let q = f.q() as u64;
        let p = f.characteristic() as u64;
        let k = code.k();
        let mut rows = Vec::new();
        let mut places = Vec::new();
        for (i, row) in code.gen().rows().iter().enumerate() {
            let row_place = q.pow((k - 1 - i) as u32);
            for t in 0..f.degree() {
                let scalar = p.pow(t) as Elem;
                rows.push((i, row.scale(scalar).into_elems()));
                places.push(row_place * p.pow(t));
            }
        }
        let packed =
            (q == 2 && kernel == Kernel::Auto).then(|| rows.iter().map(|(_, r)| pack(r)).collect());
        Basis {
            field: f.clone(),
            p,
            rows,
            packed,
            places,
        }
    }

    /// Indices of basis rows belonging to message rows `from..`.
    fn free_from(&self, from: usize) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&b| self.rows[b].0 >= from)
            .collect()
    }

    /// Visits `start + span(free)`, calling `visit(weight, rank)` where rank
    /// is `base_rank` plus the message rank of the added combination.
    fn walk(
        &self,
        start: Vec<Elem>,
        free: &[usize],
        base_rank: u64,
        visit: &mut impl FnMut(usize, u64),
    ) {
        match &self.packed {
            Some(packed) => {
                let mut cw = pack(&start);
                let mut weight: usize = cw.iter().map(|w| w.count_ones() as usize).sum();
                self.gray(free, base_rank, weight, visit, |b| {
                    weight = 0;
                    for (c, r) in cw.iter_mut().zip(&packed[b]) {
                        *c ^= r;
                        weight += c.count_ones() as usize;
                    }
                    weight
                });
            }
            None => {
                let q = self.field.order();
                let table = self.field.add_table();
                let mut cw = start;
                let mut weight = cw.iter().filter(|&&e| e != 0).count();
                self.gray(free, base_rank, weight, visit, |b| {
                    let mut gained = 0usize;
                    let mut lost = 0usize;
                    for (c, &r) in cw.iter_mut().zip(&self.rows[b].1) {
                        if r == 0 {
                            continue;
                        }
                        let old = *c;
                        let new = table[old as usize * q + r as usize];
                        *c = new;
                        gained += (old == 0) as usize;
                        lost += (new == 0) as usize;
                    }
                    weight = weight + gained - lost;
                    weight
                });
            }
        }
    }

    fn gray(
        &self,
        free: &[usize],
        mut rank: u64,
        weight: usize,
        visit: &mut impl FnMut(usize, u64),
        mut step: impl FnMut(usize) -> usize,
    ) {
        let p = self.p as u8;
        visit(weight, rank);
        let mut counter = vec![0u8; free.len()];
        let mut digits = vec![0u8; free.len()];
        loop {
            let Some(i) = counter.iter().position(|&d| d != p - 1) else {
                return;
            };
            counter[..i].fill(0);
            counter[i] += 1;
            let b = free[i];
            let w = step(b);
            if digits[i] == p - 1 {
                digits[i] = 0;
                rank -= (self.p - 1) * self.places[b];
            } else {
                digits[i] += 1;
                rank += self.places[b];
            }
            visit(w, rank);
        }
    }
}

fn map_reduce<T, A>(
    items: Vec<T>,
    map: impl Fn(T) -> A + Sync + Send,
    reduce: impl Fn(A, A) -> A + Sync + Send,
) -> Option<A>
where
    T: Send,
    A: Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(map).reduce_with(reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(map).reduce(reduce)
    }
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Weight spectrum from one representative per projective message class
/// (first nonzero message entry equal to 1), each nonzero weight counted
/// q − 1 times.
pub fn spectrum(code: &LinearCode) -> Result<WeightSpectrum> {
    spectrum_with(code, Kernel::Auto)
}

pub fn spectrum_with(code: &LinearCode, kernel: Kernel) -> Result<WeightSpectrum> {
    let q = code.q();
    check_cap(q, code.k())?;
    let basis = Basis::new(code, kernel);
    let n = code.n();
    let leads: Vec<usize> = (0..code.k()).collect();
    let counts = map_reduce(
        leads,
        |lead| {
            let mut counts = vec![0u64; n + 1];
            let start = code.gen().rows()[lead].elems().to_vec();
            let free = basis.free_from(lead + 1);
            basis.walk(start, &free, 0, &mut |w, _| counts[w] += q - 1);
            counts
        },
        add_counts,
    )
    .unwrap_or_else(|| vec![0; n + 1]);
    let mut counts = counts;
    counts[0] += 1;
    Ok(WeightSpectrum::from_counts(q, code.k(), n, &counts))
}

/// Weight spectrum by visiting all q^k codewords.
pub fn spectrum_full(code: &LinearCode, kernel: Kernel) -> Result<WeightSpectrum> {
    let q = code.q();
    check_cap(q, code.k())?;
    let basis = Basis::new(code, kernel);
    let n = code.n();
    let mut counts = vec![0u64; n + 1];
    let free = basis.free_from(0);
    basis.walk(vec![0; n], &free, 0, &mut |w, _| counts[w] += 1);
    Ok(WeightSpectrum::from_counts(q, code.k(), n, &counts))
}

/// `(total, nonzero)` distinct weight counts.
pub fn distinct_weights(code: &LinearCode) -> Result<(usize, usize)> {
    let s = spectrum(code)?;
    Ok((s.distinct_total(), s.distinct_nonzero()))
}

pub fn is_mws(code: &LinearCode) -> Result<bool> {
    let bound = mws_bound(code.q(), code.k())?;
    Ok(spectrum(code)?.distinct_total() as u64 == bound)
}

struct CosetAcc {
    counts: Vec<u64>,
    /// Two smallest message ranks seen at each distance.
    least: Vec<[u64; 2]>,
}

impl CosetAcc {
    fn new(n: usize) -> CosetAcc {
        CosetAcc {
            counts: vec![0; n + 1],
            least: vec![[u64::MAX; 2]; n + 1],
        }
    }

    fn record(&mut self, d: usize, rank: u64) {
        self.counts[d] += 1;
        let slot = &mut self.least[d];
        if rank < slot[0] {
            slot[1] = slot[0];
            slot[0] = rank;
        } else if rank < slot[1] {
            slot[1] = rank;
        }
    }

    fn merge(mut self, other: CosetAcc) -> CosetAcc {
        for (d, (c, l)) in other.counts.into_iter().zip(other.least).enumerate() {
            self.counts[d] += c;
            let mut all = [self.least[d][0], self.least[d][1], l[0], l[1]];
            all.sort_unstable();
            self.least[d] = [all[0], all[1]];
        }
        self
    }
}

fn message_from_rank(field: &Field, k: usize, mut rank: u64) -> FqVector {
    let q = field.q() as u64;
    let mut elems = vec![0; k];
    for e in elems.iter_mut().rev() {
        *e = (rank % q) as Elem;
        rank /= q;
    }
    FqVector::from_trusted(field, elems)
}

/// Distances from `x` to every codeword, by full enumeration (cosets have
/// no scalar symmetry to exploit).
pub fn coset_profile(code: &LinearCode, x: &FqVector) -> Result<TranslateWitness> {
    coset_profile_with(code, x, Kernel::Auto)
}

pub fn coset_profile_with(
    code: &LinearCode,
    x: &FqVector,
    kernel: Kernel,
) -> Result<TranslateWitness> {
    if x.field() != code.field() {
        return Err(Error::FieldMismatch {
            left: code.field().q(),
            right: x.field().q(),
        });
    }
    let q = code.q();
    let k = code.k();
    let qk = check_cap(q, k)?;
    if code.contains(x)? {
        return Err(Error::XInCode);
    }
    let f = code.field();
    let n = code.n();
    let basis = Basis::new(code, kernel);
    let neg_x: Vec<Elem> = x.elems().iter().map(|&e| f.neg(e)).collect();

    // Block a covers messages whose first entry is a.
    let first_place = q.pow(k as u32 - 1);
    let free = basis.free_from(1);
    let acc = map_reduce(
        f.elements().collect(),
        |a: Elem| {
            let mut acc = CosetAcc::new(n);
            let row0 = code.gen().rows()[0].elems();
            let start = neg_x
                .iter()
                .zip(row0)
                .map(|(&nx, &r)| f.add(nx, f.mul(a, r)))
                .collect();
            basis.walk(start, &free, a as u64 * first_place, &mut |d, rank| {
                acc.record(d, rank)
            });
            acc
        },
        CosetAcc::merge,
    )
    .expect("a field has at least two elements");

    let distances: Vec<(usize, u64)> = acc
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(d, &c)| (d, c))
        .collect();
    let distinct = distances.len() as u64;
    debug_assert_eq!(distances.iter().map(|(_, c)| c).sum::<u64>(), qk);
    let collision = acc
        .least
        .iter()
        .filter(|l| l[1] != u64::MAX)
        .min_by_key(|l| l[0])
        .map(|l| (message_from_rank(f, k, l[0]), message_from_rank(f, k, l[1])));
    Ok(TranslateWitness {
        x: x.clone(),
        distinct_coset_weights: distinct,
        distances,
        collision,
    })
}
