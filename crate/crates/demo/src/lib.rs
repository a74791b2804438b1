//! Browser bindings for weightforge. Every export returns a JSON string; on
//! failure the object has a single `error` field.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use weightforge::report::CodeReport;
use weightforge::{binary_weight_count_code, mws_bound, mws_construct, reachable_counts};

/// Enumeration is capped lower than on the command line to keep the page
/// responsive.
pub const BROWSER_ENUM_CAP: u64 = 1 << 8;

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn to_json<T: Serialize>(r: weightforge::Result<T>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::to_string(&Failure {
            error: e.to_string(),
        })
        .expect("serializable"),
    }
}

fn capped<T>(
    q: u64,
    k: usize,
    f: impl FnOnce() -> weightforge::Result<T>,
) -> weightforge::Result<T> {
    weightforge::spectrum::set_enum_cap(BROWSER_ENUM_CAP);
    weightforge::spectrum::check_cap(q, k)?;
    f()
}

/// Builds a code attaining the maximum number of distinct weights.
pub fn mws_report(q: u64, k: usize, seed: u64) -> weightforge::Result<CodeReport> {
    capped(q, k, || {
        let (code, trace) = mws_construct(q, k, seed)?;
        CodeReport::new(&code, Some(trace))
    })
}

/// Builds a binary code of dimension k with s distinct nonzero weights.
pub fn weights_report(k: usize, s: u64, seed: u64) -> weightforge::Result<CodeReport> {
    capped(2, k, || {
        let (code, trace) = binary_weight_count_code(k, s, seed)?;
        CodeReport::new(&code, Some(trace))
    })
}

#[derive(Debug, Serialize)]
pub struct Reachable {
    pub q: u64,
    pub k: usize,
    pub max_nonzero: u64,
    pub reachable: Vec<u64>,
    pub gaps: Vec<u64>,
}

pub fn reachable_report(q: u64, k: usize) -> weightforge::Result<Reachable> {
    let max_nonzero = mws_bound(q, k)? - 1;
    let reachable = reachable_counts(q, k)?;
    let gaps = if max_nonzero <= 1 << 16 {
        (1..=max_nonzero)
            .filter(|s| reachable.binary_search(s).is_err())
            .collect()
    } else {
        Vec::new()
    };
    Ok(Reachable {
        q,
        k,
        max_nonzero,
        reachable,
        gaps,
    })
}

#[wasm_bindgen]
pub fn construct_mws(q: u32, k: u32, seed: u32) -> String {
    to_json(mws_report(q as u64, k as usize, seed as u64))
}

#[wasm_bindgen]
pub fn construct_weights(k: u32, s: u32, seed: u32) -> String {
    to_json(weights_report(k as usize, s as u64, seed as u64))
}

#[wasm_bindgen]
pub fn reachable(q: u32, k: u32) -> String {
    to_json(reachable_report(q as u64, k as usize))
}
