//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes a ring specification string and returns a JSON string.
//! Time budgets are not used here: the clock is unavailable on
//! `wasm32-unknown-unknown`, so enumeration is bounded by node counts only.

use serde_json::json;
use wasm_bindgen::prelude::*;

use unicayley::cayley::build_graph_with_cap;
use unicayley::constructions::refutation_seeds;
use unicayley::indsets::{is_well_covered_streaming, Budget};
use unicayley::structure::{classify as classify_spec, Question};
use unicayley::{parse_spec, Ring, VertexSet};

/// Largest graph the page will build and draw.
pub const DEMO_VERTEX_CAP: usize = 512;

/// Maximal sets shipped back for highlighting.
pub const DEMO_SET_LIMIT: usize = 400;

fn ring(spec: &str) -> Result<Ring, String> {
    let spec = parse_spec(spec).map_err(|e| e.to_string())?;
    Ring::with_cap(&spec, DEMO_VERTEX_CAP).map_err(|e| e.to_string())
}

/// Ring summary, its three classification verdicts, and the graph.
pub fn ring_view(spec: &str) -> Result<String, String> {
    let r = ring(spec)?;
    let g = build_graph_with_cap(&r, DEMO_VERTEX_CAP).map_err(|e| e.to_string())?;
    let meta = r.metadata();
    let verdicts = r.spec().map(|s| {
        json!({
            "wellcovered": classify_spec(s, Question::WellCovered),
            "cm": classify_spec(s, Question::Cm),
            "gorenstein": classify_spec(s, Question::Gorenstein),
        })
    });
    let labels: Vec<String> = (0..r.order()).map(|x| r.describe(x)).collect();
    Ok(json!({
        "ring": meta.spec,
        "order": meta.order,
        "unit_count": meta.unit_count,
        "radical_size": meta.radical_size,
        "verdicts": verdicts,
        "graph": g.to_json(),
        "labels": labels,
    })
    .to_string())
}

pub fn classify_json(spec: &str, question: &str) -> Result<String, String> {
    let s = parse_spec(spec).map_err(|e| e.to_string())?;
    let q: Question = question.parse()?;
    Ok(json!(classify_spec(&s, q)).to_string())
}

/// Enumeration report plus up to [`DEMO_SET_LIMIT`] maximal sets.
pub fn well_covered_json(spec: &str, max_nodes: u64) -> Result<String, String> {
    let r = ring(spec)?;
    let g = build_graph_with_cap(&r, DEMO_VERTEX_CAP).map_err(|e| e.to_string())?;
    let budget = Budget { max_nodes: (max_nodes > 0).then_some(max_nodes), max_time: None };
    let mut sets: Vec<VertexSet> = Vec::new();
    let report = is_well_covered_streaming(&g, budget, &refutation_seeds(&r), |s| {
        if sets.len() < DEMO_SET_LIMIT {
            sets.push(s.clone());
        }
    });
    for w in [&report.witness_small, &report.witness_large].into_iter().flatten() {
        if !sets.contains(w) {
            sets.push(w.clone());
        }
    }
    Ok(json!({"ring": r.label(), "report": report, "sets": sets}).to_string())
}

#[wasm_bindgen(js_name = ringView)]
pub fn ring_view_js(spec: &str) -> Result<String, JsValue> {
    ring_view(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(spec: &str, question: &str) -> Result<String, JsValue> {
    classify_json(spec, question).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = wellCovered)]
pub fn well_covered_js(spec: &str, max_nodes: u32) -> Result<String, JsValue> {
    well_covered_json(spec, u64::from(max_nodes)).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn ring_view_of_z6() {
        let v = parse(ring_view("Z(6)").unwrap());
        assert_eq!(v["order"], 6);
        assert_eq!(v["graph"]["N"], 6);
        assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 6);
        assert_eq!(v["verdicts"]["wellcovered"]["answer"], false);
        assert_eq!(v["labels"][5], "5");
    }

    #[test]
    fn ring_view_rejects_bad_input() {
        assert!(ring_view("Z(6").is_err());
        assert!(ring_view("M(3,GF(3))").is_err());
    }

    #[test]
    fn classify_questions() {
        let v = parse(classify_json("T(3,GF(2))", "wellcovered").unwrap());
        assert_eq!(v["clause"], "Z_2^k");
        assert_eq!(parse(classify_json("Z(4)", "cm").unwrap())["answer"], false);
        assert!(classify_json("Z(4)", "shellable").is_err());
    }

    #[test]
    fn well_covered_sets() {
        let v = parse(well_covered_json("Z(6)", 0).unwrap());
        assert_eq!(v["report"]["answer"], "no");
        assert_eq!(v["sets"].as_array().unwrap().len(), 5);
        let v = parse(well_covered_json("M(2,GF(2))", 0).unwrap());
        assert_eq!(v["report"]["answer"], "yes");
        assert_eq!(v["sets"].as_array().unwrap().len(), 24);
        let v = parse(well_covered_json("M(2,GF(3))", 3).unwrap());
        assert_eq!(v["report"]["answer"], "inconclusive");
        let v = parse(well_covered_json("M(3,GF(2))", 0).unwrap());
        assert_eq!(v["report"]["answer"], "no");
        assert_eq!(v["sets"].as_array().unwrap().len(), 2);
    }
}
