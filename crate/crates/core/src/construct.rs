//! Code constructions.
//!
//! Every construction re-enumerates its output and checks the exact weight
//! count it promises; nothing is trusted on algebraic grounds alone.
//!
//! * [`simplex`]: one column per projective point, equidistant.
//! * [`extend_full_translate`]: given `x` whose q^k coset distances are all
//!   distinct, appends `m` (max weight) columns and a row `(x | 1…1)`,
//!   adding q^k new weights above `m`.
//! * [`refine_translate`]: triples every coordinate and moves `x` in one
//!   coordinate so that a colliding pair of coset distances splits.
//! * [`mws_construct`]: dimension-by-dimension induction from `⟨(1)⟩`.
//! * [`lemma3_extend`] / [`lemma4_extend`]: grow dimension by one while adding
//!   one, respectively q^k, distinct nonzero weights.
//! * [`binary_weight_count_code`]: binary codes with any admissible number of
//!   distinct nonzero weights.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{encode, FqVector, GenMatrix, LinearCode};
use crate::spectrum::{check_cap, coset_profile, mws_bound, spectrum, TranslateWitness};

pub const DEFAULT_SAMPLES: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    BaseDim1 {
        len: usize,
    },
    BaseSimplex {
        k: usize,
        len: usize,
    },
    /// Coordinate replication of a code that is the whole space, so that a
    /// translate outside it exists.
    Replicate {
        old_len: usize,
        new_len: usize,
    },
    FindTranslate {
        k: usize,
        len: usize,
        samples_tried: u64,
        best_count: u64,
    },
    Refine {
        old_count: u64,
        new_count: u64,
        old_len: usize,
        new_len: usize,
    },
    ExtendLemma1 {
        k: usize,
        m: usize,
        old_len: usize,
        new_len: usize,
    },
    ExtendLemma3 {
        k: usize,
        old_len: usize,
        new_len: usize,
    },
    ExtendLemma4 {
        k: usize,
        s_before: usize,
        s_after: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub q: u64,
    pub seed: u64,
    pub steps: Vec<Step>,
    pub final_len: usize,
    pub final_k: usize,
    pub final_distinct: usize,
}

impl ConstructionTrace {
    fn new(q: u64, seed: u64) -> Self {
        ConstructionTrace {
            q,
            seed,
            steps: Vec::new(),
            final_len: 0,
            final_k: 0,
            final_distinct: 0,
        }
    }

    fn finish(&mut self, code: &LinearCode, distinct: usize) {
        self.final_len = code.n();
        self.final_k = code.k();
        self.final_distinct = distinct;
    }

    fn wrap(&self, e: Error) -> Error {
        match e {
            e @ Error::Incomplete { .. } => e,
            e => Error::Incomplete {
                source: Box::new(e),
                trace: Box::new(self.clone()),
            },
        }
    }
}

fn postcondition(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Postcondition(what()))
    }
}

/// Per-step seed derived from the user seed.
fn derive_seed(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// The simplex code: columns are the nonzero vectors of GF(q)^k whose
/// topmost nonzero entry is 1, in increasing order as base-q numerals read
/// top to bottom.
pub fn simplex(q: u64, k: usize) -> Result<LinearCode> {
    let field = Field::new(q)?;
    if k == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let qk = check_cap(q, k)?;
    let mut rows = vec![Vec::with_capacity(((qk - 1) / (q - 1)) as usize); k];
    for value in 1..qk {
        let mut digits = vec![0 as Elem; k];
        let mut rest = value;
        for d in digits.iter_mut().rev() {
            *d = (rest % q) as Elem;
            rest /= q;
        }
        if digits.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        for (row, d) in rows.iter_mut().zip(digits) {
            row.push(d);
        }
    }
    let n = rows[0].len();
    let rows = rows
        .into_iter()
        .map(|r| FqVector::from_trusted(&field, r))
        .collect();
    LinearCode::new(GenMatrix::new(&field, n, rows)?)
}

fn replicate(code: &LinearCode, times: usize) -> LinearCode {
    LinearCode::new(code.gen().replicate_columns(times)).expect("replication preserves rank")
}

/// Full-translate extension: `[[G, 0], [x, 1…1]]` with `m` appended columns, `m` the
/// maximum codeword weight. Requires all q^k coset distances of `x` to differ.
pub fn extend_full_translate(code: &LinearCode, x: &FqVector) -> Result<LinearCode> {
    let q = code.q();
    let k = code.k();
    let witness = coset_profile(code, x)?;
    let qk = q.pow(k as u32);
    if witness.distinct_coset_weights != qk {
        return Err(Error::TranslateNotFull {
            count: witness.distinct_coset_weights,
            needed: qk,
        });
    }
    let before = spectrum(code)?;
    let m = before.max_weight();
    let f = code.field();

    let zeros = FqVector::zeros(f, m);
    let mut rows: Vec<FqVector> = code
        .gen()
        .rows()
        .iter()
        .map(|r| r.concat(&zeros))
        .collect::<Result<_>>()?;
    rows.push(x.concat(&FqVector::from_trusted(f, vec![1; m]))?);
    let extended = LinearCode::new(GenMatrix::new(f, code.n() + m, rows)?)?;

    let after = spectrum(&extended)?;
    let expected: BTreeSet<usize> = before
        .entries()
        .iter()
        .map(|(w, _)| *w)
        .chain(witness.distances.iter().map(|(d, _)| m + d))
        .collect();
    let got: BTreeSet<usize> = after.entries().iter().map(|(w, _)| *w).collect();
    postcondition(got == expected, || {
        format!("extension weights {got:?} differ from expected {expected:?}")
    })?;
    postcondition(
        after.distinct_total() as u64 == before.distinct_total() as u64 + qk,
        || "extension did not add q^k distinct weights".into(),
    )?;
    Ok(extended)
}

/// Result of one refinement step.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub code: LinearCode,
    pub x: FqVector,
    pub old_count: u64,
    /// Coset profile of the new `x` against the tripled code.
    pub witness: TranslateWitness,
}

/// Triples each coordinate of the code and of `x`, then changes the tripled
/// `x` in one coordinate where the smallest colliding codeword pair differs.
///
/// With α, β the pair's values there and γ the value of the tripled `x`:
/// if γ ∈ {α, β} the coordinate becomes the smallest element outside {α, β};
/// otherwise it becomes α. Over GF(2) no third element exists and the
/// coordinate is flipped instead; since every tripled distance is a multiple
/// of 3 and each moves by at most 1, classes cannot merge and the pair
/// splits either way.
pub fn refine_translate(code: &LinearCode, x: &FqVector) -> Result<Refinement> {
    let before = coset_profile(code, x)?;
    let (u1, u2) = before.collision.clone().ok_or(Error::NoCollision)?;
    let f = code.field();
    let c1 = encode(code, &u1)?;
    let c2 = encode(code, &u2)?;
    let j0 = c1
        .elems()
        .iter()
        .zip(c2.elems())
        .position(|(a, b)| a != b)
        .expect("distinct messages of a full-rank code give distinct codewords");

    let tripled = replicate(code, 3);
    let x3 = x.replicate(3);
    let j = 3 * j0;
    let (alpha, beta, gamma) = (c1.elems()[j0], c2.elems()[j0], x3.elems()[j]);
    let replacement = if f.q() == 2 {
        1 - gamma
    } else if gamma == alpha || gamma == beta {
        f.elements()
            .find(|&e| e != alpha && e != beta)
            .expect("q >= 3")
    } else {
        alpha
    };
    let x_new = x3.with_entry(j, replacement);

    let plain = coset_profile(&tripled, &x3)?;
    postcondition(
        plain.distances.iter().all(|(d, _)| d % 3 == 0)
            && plain.distinct_coset_weights == before.distinct_coset_weights,
        || "tripled coset distances are not multiples of 3".into(),
    )?;
    let after = coset_profile(&tripled, &x_new)?;
    postcondition(
        after.distinct_coset_weights > before.distinct_coset_weights,
        || {
            format!(
                "refinement did not increase the coset count ({} -> {})",
                before.distinct_coset_weights, after.distinct_coset_weights
            )
        },
    )?;
    Ok(Refinement {
        code: tripled,
        x: x_new,
        old_count: before.distinct_coset_weights,
        witness: after,
    })
}

/// Samples `samples` uniform vectors (0 is treated as 1), skips those inside
/// the code, and returns the one with the most distinct coset distances;
/// ties go to the lexicographically smaller vector.
pub fn find_translate(code: &LinearCode, samples: u64, seed: u64) -> Result<TranslateWitness> {
    find_translate_counted(code, samples, seed).map(|(w, _)| w)
}

fn find_translate_counted(
    code: &LinearCode,
    samples: u64,
    seed: u64,
) -> Result<(TranslateWitness, u64)> {
    if code.n() == code.k() {
        return Err(Error::NoVectorOutsideCode);
    }
    check_cap(code.q(), code.k())?;
    let f = code.field();
    let q = code.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<TranslateWitness> = None;
    let mut tried = 0u64;
    while tried < samples.max(1) || best.is_none() {
        tried += 1;
        let elems: Vec<Elem> = (0..code.n())
            .map(|_| rng.random_range(0..q) as Elem)
            .collect();
        let x = FqVector::from_trusted(f, elems);
        let w = match coset_profile(code, &x) {
            Ok(w) => w,
            Err(Error::XInCode) => continue,
            Err(e) => return Err(e),
        };
        let better = match &best {
            None => true,
            Some(b) => {
                w.distinct_coset_weights > b.distinct_coset_weights
                    || (w.distinct_coset_weights == b.distinct_coset_weights && w.x < b.x)
            }
        };
        if better {
            best = Some(w);
        }
    }
    Ok((best.expect("loop exits with a witness"), tried))
}

/// Finds a translate, refines it until its coset distances are all distinct,
/// then applies the full-translate extension. Works for any full-rank input.
fn grow_by_translate(
    mut code: LinearCode,
    samples: u64,
    seed: u64,
    trace: &mut ConstructionTrace,
) -> Result<LinearCode> {
    let q = code.q();
    let k = code.k();
    let qk = check_cap(q, k)?;
    if code.n() == k {
        let old_len = code.n();
        code = replicate(&code, 3);
        trace.steps.push(Step::Replicate {
            old_len,
            new_len: code.n(),
        });
    }
    let (mut witness, tried) = find_translate_counted(&code, samples, seed)?;
    trace.steps.push(Step::FindTranslate {
        k,
        len: code.n(),
        samples_tried: tried,
        best_count: witness.distinct_coset_weights,
    });
    let mut refines = 0;
    while witness.distinct_coset_weights < qk {
        refines += 1;
        assert!(refines < qk, "each refinement gains at least one distance");
        let old_len = code.n();
        let r = refine_translate(&code, &witness.x)?;
        trace.steps.push(Step::Refine {
            old_count: r.old_count,
            new_count: r.witness.distinct_coset_weights,
            old_len,
            new_len: r.code.n(),
        });
        code = r.code;
        witness = r.witness;
    }
    let old_len = code.n();
    let extended = extend_full_translate(&code, &witness.x)?;
    trace.steps.push(Step::ExtendLemma1 {
        k,
        m: extended.n() - old_len,
        old_len,
        new_len: extended.n(),
    });
    Ok(extended)
}

/// Builds a k-dimensional code over GF(q) with (q^k − 1)/(q − 1) + 1 distinct
/// weights, starting from `⟨(1)⟩` and growing one dimension at a time.
pub fn mws_construct(q: u64, k: usize, seed: u64) -> Result<(LinearCode, ConstructionTrace)> {
    mws_construct_with(q, k, seed, DEFAULT_SAMPLES)
}

pub fn mws_construct_with(
    q: u64,
    k: usize,
    seed: u64,
    samples: u64,
) -> Result<(LinearCode, ConstructionTrace)> {
    let bound = mws_bound(q, k)?;
    let mut trace = ConstructionTrace::new(q, seed);
    let mut code = simplex(q, 1)?;
    trace.steps.push(Step::BaseDim1 { len: code.n() });
    for dim in 1..k {
        code = grow_by_translate(code, samples, derive_seed(seed, dim as u64), &mut trace)
            .map_err(|e| trace.wrap(e))?;
        let distinct = spectrum(&code).map_err(|e| trace.wrap(e))?.distinct_total();
        let target = mws_bound(q, dim + 1)?;
        if distinct as u64 != target {
            return Err(trace.wrap(Error::Postcondition(format!(
                "dimension {} has {distinct} distinct weights, expected {target}",
                dim + 1
            ))));
        }
    }
    let distinct = spectrum(&code).map_err(|e| trace.wrap(e))?.distinct_total();
    postcondition(distinct as u64 == bound, || {
        format!("{distinct} distinct weights, bound is {bound}")
    })?;
    trace.finish(&code, distinct);
    Ok((code, trace))
}

/// `[[0, S], [G, S]]`-style extension: prepends a zero row to the input
/// generator and appends the simplex code of dimension k + 1, so every
/// nonzero weight shifts up by q^k and q^k itself joins the set.
pub fn lemma3_extend(code: &LinearCode) -> Result<LinearCode> {
    let q = code.q();
    let k = code.k();
    let f = code.field();
    let before = spectrum(code)?;
    let s = simplex(q, k + 1)?;
    let mut left = vec![FqVector::zeros(f, code.n())];
    left.extend(code.gen().rows().iter().cloned());
    let left = GenMatrix::new(f, code.n(), left)?;
    let out = LinearCode::new(left.hconcat(s.gen())?)?;

    let after = spectrum(&out)?;
    let shift = q.pow(k as u32) as usize;
    let expected: BTreeSet<usize> = std::iter::once(shift)
        .chain(before.nonzero_weights().into_iter().map(|w| w + shift))
        .collect();
    let got: BTreeSet<usize> = after.nonzero_weights().into_iter().collect();
    postcondition(got == expected, || {
        format!("lemma3 weights {got:?}, expected {expected:?}")
    })?;
    postcondition(
        after.distinct_nonzero() == before.distinct_nonzero() + 1,
        || "lemma3 did not add exactly one weight".into(),
    )?;
    Ok(out)
}

/// Grows an arbitrary code by one dimension while adding q^k distinct
/// nonzero weights.
pub fn lemma4_extend(code: &LinearCode, seed: u64) -> Result<(LinearCode, ConstructionTrace)> {
    let mut trace = ConstructionTrace::new(code.q(), seed);
    let out = lemma4_into(code, seed, DEFAULT_SAMPLES, &mut trace)?;
    let distinct = spectrum(&out)?.distinct_total();
    trace.finish(&out, distinct);
    Ok((out, trace))
}

fn lemma4_into(
    code: &LinearCode,
    seed: u64,
    samples: u64,
    trace: &mut ConstructionTrace,
) -> Result<LinearCode> {
    let k = code.k();
    let s = spectrum(code)?.distinct_nonzero();
    let out = grow_by_translate(code.clone(), samples, seed, trace).map_err(|e| trace.wrap(e))?;
    let s_after = spectrum(&out)?.distinct_nonzero();
    let qk = code.q().pow(k as u32) as usize;
    postcondition(s_after == qk + s, || {
        format!("lemma4 gave {s_after} nonzero weights, expected {}", qk + s)
    })?;
    trace.steps.push(Step::ExtendLemma4 {
        k,
        s_before: s,
        s_after,
    });
    Ok(out)
}

/// A binary code of dimension k with exactly s distinct nonzero weights,
/// 1 ≤ s ≤ 2^k − 1.
pub fn binary_weight_count_code(
    k: usize,
    s: u64,
    seed: u64,
) -> Result<(LinearCode, ConstructionTrace)> {
    if k == 0 || k >= 63 {
        return Err(Error::SOutOfRange { s, max: 0 });
    }
    let max = (1u64 << k) - 1;
    if s < 1 || s > max {
        return Err(Error::SOutOfRange { s, max });
    }
    let mut trace = ConstructionTrace::new(2, seed);
    let code = binary_rec(k, s, seed, &mut trace)?;
    let sp = spectrum(&code)?;
    postcondition(
        sp.distinct_nonzero() as u64 == s && code.rank() == k,
        || {
            format!(
                "built {} nonzero weights at dimension {}",
                sp.distinct_nonzero(),
                code.rank()
            )
        },
    )?;
    trace.finish(&code, sp.distinct_total());
    Ok((code, trace))
}

fn binary_rec(k: usize, s: u64, seed: u64, trace: &mut ConstructionTrace) -> Result<LinearCode> {
    let half = 1u64 << (k - 1);
    if s == 1 {
        let code = simplex(2, k).map_err(|e| trace.wrap(e))?;
        trace.steps.push(Step::BaseSimplex { k, len: code.n() });
        Ok(code)
    } else if s <= half {
        let inner = binary_rec(k - 1, s - 1, seed, trace)?;
        let out = lemma3_extend(&inner).map_err(|e| trace.wrap(e))?;
        trace.steps.push(Step::ExtendLemma3 {
            k: k - 1,
            old_len: inner.n(),
            new_len: out.n(),
        });
        Ok(out)
    } else {
        let inner = binary_rec(k - 1, s - half, seed, trace)?;
        lemma4_into(&inner, derive_seed(seed, k as u64), DEFAULT_SAMPLES, trace)
    }
}

const REACHABLE_MAX_SET: usize = 1 << 24;

/// Nonzero-weight counts obtainable at dimension k from s = 1 by the "+1"
/// (lemma3_extend) and "+q^j" (lemma4_extend) steps. Returned sorted.
pub fn reachable_counts(q: u64, k: usize) -> Result<Vec<u64>> {
    // Also rejects q^k > 2^62.
    mws_bound(q, k)?;
    let mut set = vec![1u64];
    for j in 1..k {
        let qj = q.pow(j as u32);
        let next = merge_dedup(
            &merge_dedup(&[1], &set.iter().map(|s| s + 1).collect::<Vec<_>>()),
            &set.iter().map(|s| s + qj).collect::<Vec<_>>(),
        );
        if next.len() > REACHABLE_MAX_SET {
            return Err(Error::Overflow(format!(
                "reachable set at dimension {} exceeds {REACHABLE_MAX_SET} entries",
                j + 1
            )));
        }
        set = next;
    }
    Ok(set)
}

fn merge_dedup(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let v = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x <= y => {
                i += 1;
                if x == y {
                    j += 1;
                }
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, None) => unreachable!(),
        };
        out.push(v);
    }
    out
}

/// Achieved length against `(3^(q^k − 1) + 1) · len_k` for one dimension step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthStep {
    pub k: usize,
    pub start_len: usize,
    pub refines: usize,
    pub achieved: usize,
    /// `None` when the bound exceeds the u128 range.
    pub bound: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthReport {
    pub steps: Vec<LengthStep>,
}

fn length_bound(q: u64, k: usize, len: usize) -> Option<u128> {
    let exponent = (q as u128).checked_pow(k as u32)? - 1;
    let exponent = u32::try_from(exponent).ok()?;
    3u128
        .checked_pow(exponent)?
        .checked_add(1)?
        .checked_mul(len as u128)
}

/// Checks each full-translate extension in a trace against the recursive length
/// bound. `len_k` is the length of the dimension-k code as it enters the
/// step (after replication, when the code was the whole space).
pub fn length_bound_check(trace: &ConstructionTrace) -> Result<LengthReport> {
    let mut report = LengthReport { steps: Vec::new() };
    let mut len: Option<usize> = None;
    let mut start: Option<usize> = None;
    let mut refines = 0;
    let bad = |msg: String| Err(Error::BadTrace(msg));
    for step in &trace.steps {
        match *step {
            Step::BaseDim1 { len: l } | Step::BaseSimplex { len: l, .. } => {
                len = Some(l);
                start = Some(l);
                refines = 0;
            }
            Step::Replicate { old_len, new_len } => {
                if len != Some(old_len) || new_len != 3 * old_len {
                    return bad(format!(
                        "replication {old_len} -> {new_len} out of sequence"
                    ));
                }
                len = Some(new_len);
                start = Some(new_len);
            }
            Step::FindTranslate { len: l, .. } => {
                if len != Some(l) {
                    return bad(format!("translate search at length {l}, expected {len:?}"));
                }
            }
            Step::Refine {
                old_count,
                new_count,
                old_len,
                new_len,
            } => {
                if len != Some(old_len) || new_len != 3 * old_len || new_count <= old_count {
                    return bad(format!("refinement {old_len} -> {new_len} is inconsistent"));
                }
                len = Some(new_len);
                refines += 1;
            }
            Step::ExtendLemma1 {
                k,
                m,
                old_len,
                new_len,
            } => {
                let Some(start_len) = start else {
                    return bad("extension before any base code".into());
                };
                let bound = length_bound(trace.q, k, start_len);
                if bound.is_some_and(|b| new_len as u128 > b) {
                    return Err(Error::BoundViolated {
                        k,
                        achieved: new_len as u64,
                        bound: bound.unwrap().to_string(),
                    });
                }
                if len != Some(old_len) || new_len != old_len + m || m > old_len {
                    return bad(format!(
                        "extension {old_len} + {m} -> {new_len} is inconsistent"
                    ));
                }
                report.steps.push(LengthStep {
                    k,
                    start_len,
                    refines,
                    achieved: new_len,
                    bound,
                });
                len = Some(new_len);
                start = Some(new_len);
                refines = 0;
            }
            Step::ExtendLemma3 { new_len, .. } => {
                len = Some(new_len);
                start = Some(new_len);
                refines = 0;
            }
            Step::ExtendLemma4 { .. } => {}
        }
    }
    Ok(report)
}
