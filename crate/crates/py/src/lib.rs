//! Python extension module for the solver: thin wrappers over the analysis
//! layer that accept equation strings and return JSON strings whose integer
//! leaves are exact decimal strings.

use dioph_core::{
    analyze, automorph_search, exit_code, oracle_points, parse_equation, render_json,
    render_oracle_json, route, AnalyzeOptions, DiagonalForm, Int, ParsedEquation, Problem,
    RenderOptions,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn routed(equation: &str) -> PyResult<(ParsedEquation, Problem)> {
    let parsed = parse_equation(equation).map_err(value_err)?;
    let problem = route(&parsed).map_err(value_err)?;
    Ok((parsed, problem))
}

fn options(bound: Option<&Int>) -> PyResult<AnalyzeOptions> {
    let mut opts = AnalyzeOptions::default();
    if let Some(b) = bound {
        if b < &Int::from(0) {
            return Err(value_err("bound must be nonnegative"));
        }
        opts.solve.y_bound = Some(b.clone());
        opts.box_bound = b.clone();
    }
    Ok(opts)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json rendering never fails")
}

/// Solves `equation`; the document carries a `status` key with the same
/// meaning as the CLI exit code (0 settled, 2 inconclusive).
#[pyfunction]
#[pyo3(signature = (equation, terms = 5, bound = None, positive = false))]
fn solve_json(equation: &str, terms: i64, bound: Option<Int>, positive: bool) -> PyResult<String> {
    let (parsed, problem) = routed(equation)?;
    let opts = options(bound.as_ref())?;
    let analysis = analyze(parsed, problem, &opts).map_err(value_err)?;
    let mut doc = render_json(&analysis, &RenderOptions { terms, positive });
    doc["status"] = json!(exit_code(&analysis));
    Ok(pretty(&doc))
}

/// Names the solving regime for `equation` without solving it.
#[pyfunction]
fn classify_text(equation: &str) -> PyResult<String> {
    let (parsed, problem) = routed(equation)?;
    dioph_core::classify_text(&parsed, &problem).map_err(value_err)
}

/// Reports the substitution, canonical form, and recurrence for a conic.
#[pyfunction]
fn reduce_text(equation: &str) -> PyResult<String> {
    let (parsed, problem) = routed(equation)?;
    dioph_core::reduce_text(&parsed, &problem).map_err(value_err)
}

/// Eigenvalue closed forms for the solution families of `equation`.
#[pyfunction]
fn closed_form_text(equation: &str) -> PyResult<String> {
    let (parsed, problem) = routed(equation)?;
    let analysis = analyze(parsed, problem, &AnalyzeOptions::default()).map_err(value_err)?;
    dioph_core::closed_form_text(&analysis).map_err(value_err)
}

/// Exhaustive points of `equation` with every coordinate within `bound`.
#[pyfunction]
#[pyo3(signature = (equation, bound, positive = false))]
fn oracle_json(equation: &str, bound: Int, positive: bool) -> PyResult<String> {
    let (parsed, problem) = routed(equation)?;
    let points = oracle_points(&problem, &bound).map_err(value_err)?;
    Ok(pretty(&render_oracle_json(&parsed, &points, positive)))
}

/// Automorphs of the diagonal form with entries within `bound`.
#[pyfunction]
#[pyo3(signature = (form, bound = Int::from(5), include_trivial = false))]
fn automorph_json(form: Vec<Int>, bound: Int, include_trivial: bool) -> PyResult<String> {
    let form = DiagonalForm::new(form, Int::from(0)).map_err(value_err)?;
    let mats: Vec<Value> = automorph_search(&form, &bound, !include_trivial)
        .iter()
        .map(|m| {
            Value::Array(
                m.rows()
                    .iter()
                    .map(|r| {
                        Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect())
                    })
                    .collect(),
            )
        })
        .collect();
    let count = mats.len();
    let doc = json!({
        "automorphs": mats,
        "bound": bound.to_string(),
        "count": count,
        "include_trivial": include_trivial,
    });
    Ok(pretty(&doc))
}

#[pymodule]
fn dioph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(solve_json, m)?)?;
    m.add_function(wrap_pyfunction!(classify_text, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_text, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_text, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_json, m)?)?;
    m.add_function(wrap_pyfunction!(automorph_json, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
