//! Browser bindings. Every function returns a JSON string; errors come
//! back as `{"error": "..."}` rather than as exceptions.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use g2flop::bundles::{cohomology_f, parse_expr};
use g2flop::rootdata::{RootSystem, Weight};
use g2flop::sod::{replay, ReplayOptions};
use g2flop::totalspace::hom_v;
use g2flop::weylbott::{dot_normalize, weyl_dim, BottOutcome};

/// Largest side of a Bott grid, to keep the page responsive.
const MAX_GRID: i64 = 41;

fn to_json(v: impl Serialize) -> String {
    serde_json::to_string(&v).unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string())
}

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

#[derive(Serialize)]
struct Cell {
    a: i64,
    b: i64,
    /// `None` when `λ + ρ` is singular.
    degree: Option<usize>,
    nu: Option<Weight>,
    dim: u64,
    word: Vec<usize>,
}

/// Bott's theorem over the rectangle `[a0,a1] × [b0,b1]`: for each `λ`, the
/// degree and highest weight of the only non-zero cohomology of `𝒪(λ)`.
#[wasm_bindgen]
pub fn bott_grid(a0: i32, a1: i32, b0: i32, b1: i32) -> String {
    let (a0, a1, b0, b1) = (a0 as i64, a1 as i64, b0 as i64, b1 as i64);
    if a1 < a0 || b1 < b0 || a1 - a0 >= MAX_GRID || b1 - b0 >= MAX_GRID {
        return error(format!("grid must be non-empty and at most {MAX_GRID} wide"));
    }
    let rs = RootSystem::g2();
    let mut cells = Vec::new();
    for b in (b0..=b1).rev() {
        for a in a0..=a1 {
            let lambda = Weight::g2(a, b);
            let cell = match dot_normalize(&rs, &lambda) {
                Ok(BottOutcome::Singular) => Cell {
                    a,
                    b,
                    degree: None,
                    nu: None,
                    dim: 0,
                    word: Vec::new(),
                },
                Ok(BottOutcome::Regular { w, nu }) => match weyl_dim(&rs, &nu) {
                    Ok(dim) => Cell {
                        a,
                        b,
                        degree: Some(w.length),
                        nu: Some(nu),
                        dim,
                        word: w.word,
                    },
                    Err(e) => return error(e),
                },
                Err(e) => return error(e),
            };
            cells.push(cell);
        }
    }
    to_json(json!({ "a0": a0, "a1": a1, "b0": b0, "b1": b1, "cells": cells }))
}

/// Cohomology on `F` of a bundle expression, with every route's verdict.
#[wasm_bindgen]
pub fn cohomology(expr: &str) -> String {
    let rs = RootSystem::g2();
    let e = match parse_expr(expr) {
        Ok(e) => e,
        Err(p) => return to_json(json!({ "error": p.message, "pos": p.pos })),
    };
    match cohomology_f(&rs, &e) {
        Ok(c) => {
            let resolved = c.resolved().map(|p| p.to_string());
            to_json(json!({
                "expr": e.to_string(),
                "status": if resolved.is_some() { "determined" } else { "indeterminate" },
                "result": resolved,
                "routes": c,
            }))
        }
        Err(err) => error(err),
    }
}

/// `hom_V(a, b)` on the total space, through the two Koszul terms.
#[wasm_bindgen]
pub fn ext_v(a: &str, b: &str) -> String {
    let rs = RootSystem::g2();
    let parsed: Result<Vec<_>, (usize, String, usize)> = [a, b]
        .iter()
        .enumerate()
        .map(|(i, s)| parse_expr(s).map_err(|p| (i, p.message, p.pos)))
        .collect();
    let exprs = match parsed {
        Ok(v) => v,
        Err((which, message, pos)) => {
            return to_json(json!({ "error": message, "pos": pos, "argument": which }));
        }
    };
    match hom_v(&rs, &exprs[0], &exprs[1]) {
        Ok(r) => to_json(json!({
            "a": exprs[0].to_string(),
            "b": exprs[1].to_string(),
            "status": r.status,
            "result": r.profile.as_ref().map(|p| p.to_string()),
            "euler_characteristic": r.euler_characteristic,
            "terms": [
                r.first.resolved().map(|p| p.to_string()),
                r.second.resolved().map(|p| p.to_string()),
            ],
        })),
        Err(e) => error(e),
    }
}

/// The certified mutation replay; `skip` (0 for none) leaves out one step.
#[wasm_bindgen]
pub fn replay_table(skip: u32) -> String {
    let rs = RootSystem::g2();
    let skip_steps = if skip == 0 { Vec::new() } else { vec![skip as usize] };
    let report = replay(&rs, &ReplayOptions { skip_steps });
    to_json(report)
}
