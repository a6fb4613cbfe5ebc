//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function wraps a plain Rust function that returns
//! `Result<_, String>`, so the numerics are testable natively.

use ggf::generators::{random_op, window_box, window_gaussian, window_random};
use ggf::gframe::{cohen_map, frame_bounds, janssen_residual, janssen_sufficient};
use ggf::spreading::spreading_of;
use ggf::tfcore::random::{gaussian_signal, seeded};
use ggf::tfcore::{rank_one, unit_root, Op};
use ggf::{Lattice, Signal};
use wasm_bindgen::prelude::*;

/// Largest `L` the page offers; keeps the frame-bound grid interactive.
pub const MAX_LEN: usize = 48;

fn check_len(len: usize) -> Result<(), String> {
    if (2..=MAX_LEN).contains(&len) {
        Ok(())
    } else {
        Err(format!("L must be between 2 and {MAX_LEN}, got {len}"))
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("{what}: cannot parse '{s}'"))
}

/// `gaussian | box:w | randwin:seed | random:rank:seed`.
pub fn generator(len: usize, spec: &str) -> Result<Op, String> {
    check_len(len)?;
    let err = |e: ggf::Error| e.to_string();
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let window = match parts.as_slice() {
        ["gaussian"] => window_gaussian(len).map_err(err)?,
        ["box", w] => window_box(len, parse_num(w, "box width")?).map_err(err)?,
        ["randwin", seed] => window_random(len, parse_num(seed, "seed")?).map_err(err)?,
        ["random", rank, seed] => {
            return random_op(len, parse_num(rank, "rank")?, parse_num(seed, "seed")?).map_err(err)
        }
        _ => return Err(format!("unknown generator '{spec}'")),
    };
    rank_one(&window, &window).map_err(err)
}

/// `chirp | gaussian | basis:n | random:seed`.
pub fn test_signal(len: usize, spec: &str) -> Result<Signal, String> {
    check_len(len)?;
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let sig = match parts.as_slice() {
        ["chirp"] => {
            // discrete chirp e^{pi i t^2 / L}, taken mod 2L so it stays periodic
            let data = (0..len)
                .map(|t| unit_root((t * t) % (2 * len), 2 * len))
                .collect();
            Signal::new(data)
        }
        ["gaussian"] => window_gaussian(len),
        ["basis", n] => Signal::basis(len, parse_num::<usize>(n, "basis index")? % len),
        ["random", seed] => Ok(gaussian_signal(&mut seeded(parse_num(seed, "seed")?), len)),
        _ => return Err(format!("unknown signal '{spec}'")),
    };
    sig.map_err(|e| e.to_string())
}

fn lattice(len: usize, a: usize, b: usize) -> Result<Lattice, String> {
    Lattice::separable(len, a, b).map_err(|e| e.to_string())
}

/// Row-major `L x L` Cohen map `Q(k, l) = ||alpha_(k,l)(S) psi||^2`.
pub fn cohen_values(len: usize, gen: &str, signal: &str) -> Result<Vec<f64>, String> {
    let s = generator(len, gen)?;
    let psi = test_signal(len, signal)?;
    Ok(cohen_map(&s, &psi).map_err(|e| e.to_string())?.into_vec())
}

/// Row-major `L x L` magnitudes of the spreading coefficients of `S^* S`.
pub fn spreading_values(len: usize, gen: &str) -> Result<Vec<f64>, String> {
    let s = generator(len, gen)?;
    let c = spreading_of(&(&s.adjoint() * &s));
    Ok(c.table().as_slice().iter().map(|v| v.norm()).collect())
}

/// Row-major `L x L` indicator of the adjoint lattice of `sep(a, b)`.
pub fn adjoint_mask(len: usize, a: usize, b: usize) -> Result<Vec<u8>, String> {
    let adjoint = lattice(len, a, b)?.adjoint();
    let mut mask = vec![0u8; len * len];
    for z in adjoint.enumerate() {
        mask[z.k * len + z.l] = 1;
    }
    Ok(mask)
}

/// `[A, B, card, adjoint_card, janssen_residual, sufficient_passes,
/// guaranteed_A]` for `sep(a, b)`.
pub fn frame_summary(len: usize, gen: &str, a: usize, b: usize) -> Result<Vec<f64>, String> {
    let s = generator(len, gen)?;
    let lat = lattice(len, a, b)?;
    let err = |e: ggf::Error| e.to_string();
    let r = frame_bounds(&s, &lat).map_err(err)?;
    let test = janssen_sufficient(&s, &lat).map_err(err)?;
    Ok(vec![
        r.lower,
        r.upper,
        lat.card() as f64,
        lat.adjoint().card() as f64,
        janssen_residual(&s, &lat).map_err(err)?,
        if test.passes { 1.0 } else { 0.0 },
        test.guaranteed_lower,
    ])
}

pub fn divisor_list(len: usize) -> Vec<u32> {
    (1..=len)
        .filter(|d| len.is_multiple_of(*d))
        .map(|d| d as u32)
        .collect()
}

/// Frame bounds over every separable lattice: for divisors `d_0 < d_1 < ...`
/// the entry for `sep(d_i, d_j)` sits at `2 * (i * n + j)` (`A`) and the
/// next index (`B`).
pub fn bounds_grid(len: usize, gen: &str) -> Result<Vec<f64>, String> {
    let s = generator(len, gen)?;
    let divs = divisor_list(len);
    let mut out = Vec::with_capacity(2 * divs.len() * divs.len());
    for &a in &divs {
        for &b in &divs {
            let r = frame_bounds(&s, &lattice(len, a as usize, b as usize)?)
                .map_err(|e| e.to_string())?;
            out.push(r.lower);
            out.push(r.upper);
        }
    }
    Ok(out)
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = cohenMap)]
pub fn cohen_map_js(len: usize, gen: &str, signal: &str) -> Result<Vec<f64>, JsValue> {
    js(cohen_values(len, gen, signal))
}

#[wasm_bindgen(js_name = spreadingMagnitude)]
pub fn spreading_magnitude_js(len: usize, gen: &str) -> Result<Vec<f64>, JsValue> {
    js(spreading_values(len, gen))
}

#[wasm_bindgen(js_name = adjointMask)]
pub fn adjoint_mask_js(len: usize, a: usize, b: usize) -> Result<Vec<u8>, JsValue> {
    js(adjoint_mask(len, a, b))
}

#[wasm_bindgen(js_name = frameSummary)]
pub fn frame_summary_js(len: usize, gen: &str, a: usize, b: usize) -> Result<Vec<f64>, JsValue> {
    js(frame_summary(len, gen, a, b))
}

#[wasm_bindgen(js_name = divisors)]
pub fn divisors_js(len: usize) -> Vec<u32> {
    divisor_list(len)
}

#[wasm_bindgen(js_name = boundsGrid)]
pub fn bounds_grid_js(len: usize, gen: &str) -> Result<Vec<f64>, JsValue> {
    js(bounds_grid(len, gen))
}
