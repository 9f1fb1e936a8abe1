//! Browser bindings: every function takes presentation source text and returns
//! a JSON string, or throws with the parse/compute error.

use graded_lie::algebra::DEFAULT_WORD_CAP;
use graded_lie::enveloping::{build_enveloping, lie_components};
use graded_lie::homology::{is_koszul, BettiTable};
use graded_lie::kurosh::kurosh_decompose;
use graded_lie::linalg::{SVec, Subspace};
use graded_lie::presentation::{parse_file, LiePresentation};
use graded_lie::series::pbw_product;
use graded_lie::strategy::Strategy;
use graded_lie::{with_field, Field};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest truncation the page accepts; keeps the tab responsive.
pub const MAX_TRUNCATION: usize = 8;

fn algebras(source: &str, truncation: Option<usize>) -> Result<Vec<LiePresentation>, String> {
    let mut all = parse_file(source).map_err(|e| e.to_string())?;
    for p in all.iter_mut() {
        if let Some(n) = truncation {
            *p = p.with_truncation(n).map_err(|e| e.to_string())?;
        }
        if p.truncation > MAX_TRUNCATION {
            return Err(format!("truncation {} is above the demo limit {MAX_TRUNCATION}", p.truncation));
        }
    }
    Ok(all)
}

fn first(source: &str, truncation: Option<usize>) -> Result<LiePresentation, String> {
    algebras(source, truncation)?.into_iter().next().ok_or_else(|| "no algebra in the input".to_string())
}

#[derive(Serialize)]
pub struct BettiView {
    pub algebra: String,
    pub dims: Vec<usize>,
    pub betti: BettiTable,
    pub table: String,
    pub verdict: String,
}

pub fn betti_view(source: &str, truncation: Option<usize>) -> Result<BettiView, String> {
    let p = first(source, truncation)?;
    with_field!(p.field, |k| {
        let u = build_enveloping(&k, &p, DEFAULT_WORD_CAP).map_err(|e| e.to_string())?;
        let cert = is_koszul(&u).map_err(|e| e.to_string())?;
        Ok(BettiView {
            algebra: p.to_string(),
            dims: u.dims().to_vec(),
            table: cert.betti.render(),
            verdict: cert.verdict(),
            betti: cert.betti,
        })
    })
}

#[derive(Serialize)]
pub struct SeriesView {
    pub algebra: String,
    pub enveloping: Vec<usize>,
    pub lie: Vec<usize>,
    /// Coefficients of `prod (1 - t^m)^{-dim L_m}`.
    pub pbw: Vec<i128>,
    pub pbw_holds: bool,
}

pub fn series_view(source: &str, truncation: Option<usize>) -> Result<SeriesView, String> {
    let p = first(source, truncation)?;
    with_field!(p.field, |k| {
        let u = build_enveloping(&k, &p, DEFAULT_WORD_CAP).map_err(|e| e.to_string())?;
        let lie = lie_components(&u).dims();
        let pbw = pbw_product(&lie, u.bound());
        let pbw_holds = pbw.iter().zip(u.dims()).all(|(&a, &b)| a == b as i128);
        Ok(SeriesView { algebra: p.to_string(), enveloping: u.dims().to_vec(), lie, pbw, pbw_holds })
    })
}

fn parse_h1<K: Field>(k: &K, text: &str, dim: usize) -> Result<Subspace<K>, String> {
    let mut vecs = Vec::new();
    for row in text.split([';', '\n']).map(str::trim).filter(|r| !r.is_empty()) {
        let entries = row
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map(|n| k.from_i64(n)).map_err(|_| format!("bad entry `{t}`")))
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != dim {
            return Err(format!("vector `{row}` has {} entries, expected {dim}", entries.len()));
        }
        vecs.push(SVec::from_dense(k, &entries));
    }
    Ok(Subspace::from_vectors(k, dim, vecs.iter()))
}

/// Decomposition of the subalgebra generated by `h1` in the free product of
/// the first two stanzas, as the report JSON.
pub fn kurosh_json(source: &str, h1: &str, truncation: Option<usize>) -> Result<String, String> {
    let all = algebras(source, truncation)?;
    let [a, b] = match &all[..] {
        [a, b, ..] => [a, b],
        _ => return Err("need two algebra stanzas".into()),
    };
    with_field!(a.field, |k| {
        let h = parse_h1(&k, h1, a.gens() + b.gens())?;
        let strategy =
            if a.field.is_finite() { Strategy::Exhaustive } else { Strategy::CoordinateRandom { count: 8, seed: 0 } };
        let d = kurosh_decompose(&k, a, b, &h, strategy, DEFAULT_WORD_CAP).map_err(|e| e.to_string())?;
        serde_json::to_string(&d).map_err(|e| e.to_string())
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn betti(source: &str, truncation: Option<usize>) -> Result<String, JsError> {
    to_js(betti_view(source, truncation))
}

#[wasm_bindgen]
pub fn hilbert(source: &str, truncation: Option<usize>) -> Result<String, JsError> {
    to_js(series_view(source, truncation))
}

#[wasm_bindgen]
pub fn kurosh(source: &str, h1: &str, truncation: Option<usize>) -> Result<String, JsError> {
    kurosh_json(source, h1, truncation).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_relator_view() {
        let v = betti_view("generators x1,y1,x2,y2; relations [x1,y1]+[x2,y2];", Some(4)).unwrap();
        assert_eq!(v.betti.diagonal_trimmed(), vec![1, 4, 1]);
        assert_eq!(v.verdict, "koszul-up-to-4");
    }

    #[test]
    fn series_free() {
        let v = series_view("generators x,y;", Some(5)).unwrap();
        assert_eq!(v.enveloping, vec![1, 2, 4, 8, 16, 32]);
        assert_eq!(v.lie[1..], [2, 1, 2, 3, 6]);
        assert!(v.pbw_holds);
    }

    #[test]
    fn kurosh_example() {
        let src = "field = F2\nalgebra A { generators = a1,a2; relations = [a1,a2]; }\nalgebra B { generators = b; }";
        let out = kurosh_json(src, "1 0 0; 0 1 1", Some(5)).unwrap();
        assert!(out.contains("\"verdict\":\"verified\""), "{out}");
        assert!(kurosh_json(src, "1 0", Some(5)).is_err());
        assert!(betti_view("generators x;", Some(12)).is_err());
    }
}
