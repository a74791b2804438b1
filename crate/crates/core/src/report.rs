//! JSON summaries of codes and constructions.

use serde::Serialize;

use crate::construct::ConstructionTrace;
use crate::error::Result;
use crate::linalg::LinearCode;
use crate::spectrum::{mws_bound, spectrum};

#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub bound: u64,
    pub distinct_nonzero: usize,
    pub distinct_total: usize,
    pub is_mws: bool,
    pub k: usize,
    pub n: usize,
    pub q: u64,
    /// `[weight, multiplicity]` pairs.
    pub spectrum: Vec<(usize, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConstructionTrace>,
}

impl CodeReport {
    pub fn new(code: &LinearCode, trace: Option<ConstructionTrace>) -> Result<CodeReport> {
        let s = spectrum(code)?;
        let bound = mws_bound(code.q(), code.k())?;
        Ok(CodeReport {
            bound,
            distinct_nonzero: s.distinct_nonzero(),
            distinct_total: s.distinct_total(),
            is_mws: s.distinct_total() as u64 == bound,
            k: code.k(),
            n: code.n(),
            q: code.q(),
            spectrum: s.entries().to_vec(),
            trace,
        })
    }

    /// Pretty JSON with every object's keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }
}
