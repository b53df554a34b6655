//! Browser bindings. Each export takes plain numbers or a csv string and
//! returns a JSON document; errors surface as JavaScript exceptions.

use double_a::certify::{certify, verify_certificate, ClassSystem, ConstructiveBuilder};
use double_a::slope::{bielliptic_table, polarization_slope, trigonal_comparison};
use double_a::RhoWeights;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest `k·m` accepted by [`certify_json`]; keeps the page responsive.
pub const CERTIFY_LIMIT: u32 = 30;

fn parse_weights(csv: &str) -> Result<Vec<i64>, String> {
    csv.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("{t:?} is not an integer")))
        .collect()
}

fn to_json(v: &impl serde::Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Certificate for the m-th Hilbert point in genus `2k`, plus its re-check.
pub fn certify_json(k: u32, m: u32) -> Result<String, String> {
    if k < 2 || m < 2 {
        return Err("need k >= 2 and m >= 2".into());
    }
    if k * m > CERTIFY_LIMIT {
        return Err(format!("k·m = {} exceeds the demo limit {CERTIFY_LIMIT}", k * m));
    }
    let sys = ClassSystem::new(k as usize, m).map_err(|e| e.to_string())?;
    let cert = certify(&sys).map_err(|e| e.to_string())?;
    let verification = verify_certificate(&cert, &sys);
    to_json(&json!({
        "k": k,
        "g": 2 * k,
        "m": m,
        "classes": sys.classes().len(),
        "monomials": sys.monomial_count(),
        "certificate": cert,
        "verification": verification,
    }))
}

/// Minimum-weight monomial basis for ρ (2k integers, λ then ν), next to the
/// basis assembled from the explicit constructions.
pub fn min_weight_basis_json(k: u32, m: u32, weights: &str) -> Result<String, String> {
    if k < 2 || m < 2 {
        return Err("need k >= 2 and m >= 2".into());
    }
    let values = parse_weights(weights)?;
    if values.len() != 2 * k as usize {
        return Err(format!("expected {} weights, got {}", 2 * k, values.len()));
    }
    let r = RhoWeights::from_flat(&values).map_err(|e| e.to_string())?;
    let sys = ClassSystem::new(k as usize, m).map_err(|e| e.to_string())?;
    let (basis, weight) = sys.min_weight_basis(&r).map_err(|e| e.to_string())?;
    let constructive = ConstructiveBuilder::new(k as usize, m)
        .and_then(|b| b.build(&r))
        .map_err(|e| e.to_string())?;
    let basis: Vec<_> = basis
        .into_iter()
        .map(|(label, mon)| json!({ "label": label, "monomial": mon }))
        .collect();
    to_json(&json!({
        "k": k,
        "m": m,
        "rho": values,
        "weight": weight,
        "basis": basis,
        "constructive": constructive,
    }))
}

/// Rows `{g, m, s_m, weight_bound, verdict, slope}` over inclusive ranges,
/// with the trigonal comparison per genus.
pub fn bielliptic_json(g_lo: u32, g_hi: u32, m_lo: u32, m_hi: u32) -> Result<String, String> {
    if g_lo > g_hi || m_lo > m_hi {
        return Err("empty range".into());
    }
    if (g_hi - g_lo + 1) * (m_hi - m_lo + 1) > 2000 {
        return Err("table too large".into());
    }
    let gs = g_lo as u64..=g_hi as u64;
    let rows = bielliptic_table(gs.clone(), m_lo as u64..=m_hi as u64).map_err(|e| e.to_string())?;
    let trigonal = gs
        .filter(|&g| g >= 3)
        .map(trigonal_comparison)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    to_json(&json!({ "rows": rows, "trigonal": trigonal }))
}

pub fn slope_json(g: u32, m: u32) -> Result<String, String> {
    polarization_slope(g as u64, m as u64)
        .map_err(|e| e.to_string())
        .and_then(|s| to_json(&s))
}

#[wasm_bindgen(js_name = certify)]
pub fn js_certify(k: u32, m: u32) -> Result<String, JsError> {
    certify_json(k, m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = minWeightBasis)]
pub fn js_min_weight_basis(k: u32, m: u32, weights: &str) -> Result<String, JsError> {
    min_weight_basis_json(k, m, weights).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = bielliptic)]
pub fn js_bielliptic(g_lo: u32, g_hi: u32, m_lo: u32, m_hi: u32) -> Result<String, JsError> {
    bielliptic_json(g_lo, g_hi, m_lo, m_hi).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = slope)]
pub fn js_slope(g: u32, m: u32) -> Result<String, JsError> {
    slope_json(g, m).map_err(|e| JsError::new(&e))
}
