//! WebAssembly bindings behind the static page in `www/`: build a witness,
//! draw a partition on the e-abacus with its core, and run small scans.
//!
//! Each export returns a JSON string; the plain functions are usable natively.

use blockwitness_core::arith::PrimePower;
use blockwitness_core::conjectures::{scan_conjectures, PairSelection, ScanKind};
use blockwitness_core::partitions::Partition;
use blockwitness_core::symbols::Family;
use blockwitness_core::witnesses::verify_witness;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `n` the page scans; enumeration beyond this stalls a browser tab.
pub const MAX_SCAN_N: usize = 24;

pub fn witness_json(family: &str, n: usize, p: u64, ell: u64, f: u32) -> Result<String, String> {
    let family: Family = family.parse().map_err(|e| format!("{e}"))?;
    let q = match family {
        Family::Symmetric => None,
        _ => Some(PrimePower::new(ell, f).map_err(|e| e.to_string())?),
    };
    let report = verify_witness(family, n, p, q.as_ref()).map_err(|e| e.to_string())?;
    Ok(report.to_json())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbacusView {
    pub partition: String,
    pub e: usize,
    /// Row lengths, for drawing the diagram.
    pub rows: Vec<usize>,
    /// Hook length of every cell, row by row.
    pub hooks: Vec<Vec<usize>>,
    /// Bead positions (first-column hook lengths).
    pub beads: Vec<usize>,
    /// For each runner, the levels holding a bead.
    pub runners: Vec<Vec<usize>>,
    pub core: String,
    pub core_rows: Vec<usize>,
    /// Number of e-hooks removed.
    pub weight: usize,
    pub degree: String,
}

pub fn abacus_view(partition: &str, e: usize) -> Result<AbacusView, String> {
    if e < 2 {
        return Err("e must be at least 2".into());
    }
    let lambda: Partition = partition
        .parse()
        .map_err(|e: blockwitness_core::Error| e.to_string())?;
    let conj = lambda.conjugate();
    let hooks = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &len)| (0..len).map(|j| len - j + conj.parts()[j] - i - 1).collect())
        .collect();
    let beads = lambda.beta_set(lambda.len());
    let mut runners = vec![Vec::new(); e];
    for &b in &beads {
        runners[b % e].push(b / e);
    }
    for runner in &mut runners {
        runner.sort_unstable();
    }
    let core = lambda.e_core(e);
    Ok(AbacusView {
        partition: lambda.to_string(),
        e,
        rows: lambda.parts().to_vec(),
        hooks,
        beads,
        runners,
        core: core.to_string(),
        core_rows: core.parts().to_vec(),
        weight: (lambda.size() - core.size()) / e,
        degree: lambda.degree().to_string(),
    })
}

pub fn scan_json(kind: &str, n_min: usize, n_max: usize, pairs: &str) -> Result<String, String> {
    let kind: ScanKind = kind
        .parse()
        .map_err(|e: blockwitness_core::Error| e.to_string())?;
    let pairs: PairSelection = pairs
        .parse()
        .map_err(|e: blockwitness_core::Error| e.to_string())?;
    if n_max > MAX_SCAN_N {
        return Err(format!("n-max is limited to {MAX_SCAN_N} in the browser"));
    }
    if n_min == 0 {
        return Err("n-min must be positive".into());
    }
    let rows = scan_conjectures(kind, n_min, n_max, pairs).map_err(|e| e.to_string())?;
    let values: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| serde_json::to_value(row).expect("rows serialise"))
        .collect();
    Ok(serde_json::Value::Array(values).to_string())
}

#[wasm_bindgen]
pub fn witness(family: &str, n: usize, p: u32, ell: u32, f: u32) -> Result<String, JsValue> {
    witness_json(family, n, p as u64, ell as u64, f).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn abacus(partition: &str, e: usize) -> Result<String, JsValue> {
    abacus_view(partition, e)
        .map(|view| serde_json::to_string(&view).expect("view serialises"))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn scan(kind: &str, n_min: usize, n_max: usize, pairs: &str) -> Result<String, JsValue> {
    scan_json(kind, n_min, n_max, pairs).map_err(|e| JsValue::from_str(&e))
}
