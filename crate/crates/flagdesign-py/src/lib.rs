//! Python bindings. Structured results cross the boundary as JSON strings.

use flagdesign::constructions::{ag32_design, example1_psl2_11, example2_baer, paley_complement_11};
use flagdesign::design::{is_flag_transitive, verify_2design, DesignJson};
use flagdesign::filters::{admissible_params as admissible, case_filter as cases, params_from_r};
use flagdesign::group::{coset_action, Bounds};
use flagdesign::lattice::Strategy;
use flagdesign::psl2::{build_group_str, Catalog, GroupSpec, SubgroupTag};
use flagdesign::search::{base_block_search, classify_bounds, classify_theorem_main, SearchTask};
use flagdesign::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BoundExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn json<T: serde::Serialize>(x: &T) -> PyResult<String> {
    serde_json::to_string(x).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Order of a group such as `"PSL(2,11)"` or `"M10"`.
#[pyfunction]
fn group_order(spec: &str) -> PyResult<u64> {
    let g: GroupSpec = spec.parse().map_err(py_err)?;
    Ok(g.order())
}

/// `(v, b, r, k)` for every admissible parameter set on `v` points.
#[pyfunction]
#[pyo3(signature = (v, lam = 3))]
fn admissible_params(v: u64, lam: u64) -> Vec<(u64, u64, u64, u64)> {
    admissible(v, lam).iter().map(|c| c.tuple()).collect()
}

/// Subdegrees on the cosets of a catalog subgroup of the socle, as `"1, 7^3, 14"`.
#[pyfunction]
fn subdegrees(group: &str, stab: &str) -> PyResult<String> {
    let x = build_group_str(group).map_err(py_err)?;
    let tag: SubgroupTag = stab.parse().map_err(py_err)?;
    let h = Catalog::new(&x.socle()).build(tag).map_err(py_err)?;
    let (action, _) = coset_action(&x.group, &h, &Bounds::default()).map_err(py_err)?;
    Ok(action.subdegrees().map_err(py_err)?.display())
}

/// Design JSON of `example1`, `example2` (with `q`), `ag32` or `paley11`.
#[pyfunction]
#[pyo3(signature = (name, q = 25))]
fn construct(name: &str, q: u64) -> PyResult<String> {
    let d = match name {
        "example1" => example1_psl2_11().map_err(py_err)?.0,
        "example2" => example2_baer(q).map_err(py_err)?.0,
        "ag32" => ag32_design().map_err(py_err)?.0,
        "paley11" => paley_complement_11().map_err(py_err)?.0,
        other => return Err(PyValueError::new_err(format!("unknown construction `{other}`"))),
    };
    json(&DesignJson::from_design(&d))
}

/// `(v, b, r, k, lambda)` of a Design JSON string, with flag-transitivity under `group`
/// in its natural action when given.
#[pyfunction]
#[pyo3(signature = (design_json, group = None))]
fn verify(design_json: &str, group: Option<&str>) -> PyResult<((u64, u64, u64, u64, u64), Option<bool>)> {
    let dj: DesignJson = serde_json::from_str(design_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let d = dj.structure().map_err(py_err)?;
    let p = verify_2design(&d).map_err(py_err)?;
    let ft = match group {
        Some(g) => {
            let x = build_group_str(g).map_err(py_err)?;
            if x.degree() != d.v {
                return Err(py_err(Error::DegreeMismatch {
                    expected: d.v,
                    got: x.degree(),
                }));
            }
            Some(is_flag_transitive(&x.group, &d).0)
        }
        None => None,
    };
    Ok(((p.v, p.b, p.r, p.k, p.lambda), ft))
}

/// Search verdict as JSON.
#[pyfunction]
#[pyo3(signature = (group, v, b, r, k, strategy = "exhaustive"))]
fn search(group: &str, v: u64, b: u64, r: u64, k: u64, strategy: &str) -> PyResult<String> {
    let p = params_from_r(v, r, 3)
        .filter(|p| p.b == b && p.k == k)
        .ok_or_else(|| PyValueError::new_err("parameters are not admissible"))?;
    let strategy = match strategy {
        "exhaustive" => Strategy::Exhaustive,
        "catalog" => Strategy::Catalog,
        other => return Err(PyValueError::new_err(format!("unknown strategy `{other}`"))),
    };
    let task = SearchTask::new(group.parse().map_err(py_err)?, p).with_strategy(strategy);
    json(&base_block_search(&task).map_err(py_err)?)
}

/// `[(design, [groups])]` for every `q ≤ q_max`.
#[pyfunction]
fn classify(py: Python<'_>, q_max: u64) -> PyResult<Vec<(String, Vec<String>)>> {
    let report = py
        .detach(|| classify_theorem_main(q_max, &classify_bounds()))
        .map_err(py_err)?;
    Ok(report.lines())
}

/// Survivors `(q, v, b, r, k)` of one case chain over `lo..=hi`.
#[pyfunction]
fn case_filter(case: u8, lo: u64, hi: u64) -> PyResult<Vec<(u64, u64, u64, u64, u64)>> {
    let rep = cases(case, lo..=hi).map_err(py_err)?;
    Ok(rep.survivors().iter().map(|(c, w)| (w.q, c.v, c.b, c.r, c.k)).collect())
}

#[pymodule]
fn flagdesign_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_params, m)?)?;
    m.add_function(wrap_pyfunction!(subdegrees, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(case_filter, m)?)?;
    Ok(())
}
