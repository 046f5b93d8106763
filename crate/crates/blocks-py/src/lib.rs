//! Python bindings for the block-decomposition library.
//!
//! The bridge is deliberately thin: systems are specified by plain values
//! (family letter, rank, simple-root index lists, coordinate lists), weights
//! cross the boundary as lists of floats (half-integers are exact in binary
//! floating point), and structured results come back as JSON strings that
//! mirror the library's serde formats.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use blocks_core::blocks::{block_decomposition_oracle, linkage_graph, same_block};
use blocks_core::jantzen::jantzen_row;
use blocks_core::partitions::{count_from_partitions, nonempty_criterion};
use blocks_core::separability::{all_separable_pairs, predicted_block_count};
use blocks_core::weights::{
    canonical_dominant, enumerate_coset, is_dominant, singular_set, SingularData, Weight,
};
use blocks_core::{factorize, Family, ParabolicData, RootSystem};

fn value_err(msg: impl ToString) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

fn parse_family(family: &str) -> PyResult<Family> {
    family
        .chars()
        .next()
        .and_then(Family::from_char)
        .ok_or_else(|| value_err(format!("unknown family {family:?} (expected A, B, C or D)")))
}

fn parse_weight(coords: Vec<f64>) -> PyResult<Weight> {
    let mut coords2 = Vec::with_capacity(coords.len());
    for c in coords {
        let doubled = 2.0 * c;
        if doubled.fract() != 0.0 {
            return Err(value_err(format!("coordinate {c} is not a half-integer")));
        }
        coords2.push(doubled as i64);
    }
    Ok(Weight::from_doubled(coords2))
}

fn weight_out(w: &Weight) -> Vec<f64> {
    w.coords2.iter().map(|&c| c as f64 / 2.0).collect()
}

struct SystemHandle {
    pd: ParabolicData,
    lambda_bar: Weight,
}

fn resolve(family: &str, rank: usize, included: Vec<usize>, weight: Vec<f64>) -> PyResult<SystemHandle> {
    let family = parse_family(family)?;
    let rs = RootSystem::new(family, rank).map_err(value_err)?;
    let ns = rs.num_simple();
    if let Some(&bad) = included.iter().find(|&&i| i < 1 || i > ns) {
        return Err(value_err(format!("simple-root index {bad} out of range 1..={ns}")));
    }
    let lambda_bar = parse_weight(weight)?;
    if lambda_bar.len() != rank {
        return Err(value_err(format!(
            "weight has {} coordinates, expected {rank}",
            lambda_bar.len()
        )));
    }
    if !is_dominant(&rs, &lambda_bar) {
        return Err(value_err(format!("weight {lambda_bar} is not dominant")));
    }
    Ok(SystemHandle {
        pd: ParabolicData::new(rs, &included),
        lambda_bar,
    })
}

fn singular(sys: &SystemHandle) -> PyResult<SingularData> {
    singular_set(&sys.pd.rs, &sys.lambda_bar).map_err(value_err)
}

/// The canonical dominant weight whose singular simple roots are exactly `j`.
#[pyfunction]
#[pyo3(name = "canonical_dominant")]
fn py_canonical_dominant(family: &str, rank: usize, j: Vec<usize>) -> PyResult<Vec<f64>> {
    let family = parse_family(family)?;
    let rs = RootSystem::new(family, rank).map_err(value_err)?;
    let w = canonical_dominant(&rs, &j).map_err(value_err)?;
    Ok(weight_out(&w))
}

/// The coset Wλ̄ ∩ Λ_I^+ in lexicographic order, as coordinate lists.
#[pyfunction]
#[pyo3(name = "enumerate_coset")]
fn py_enumerate_coset(
    family: &str,
    rank: usize,
    included: Vec<usize>,
    weight: Vec<f64>,
) -> PyResult<Vec<Vec<f64>>> {
    let sys = resolve(family, rank, included, weight)?;
    Ok(enumerate_coset(&sys.pd, &sys.lambda_bar)
        .iter()
        .map(weight_out)
        .collect())
}

/// All Jantzen coefficients of the coset as a JSON string:
/// a list of {source, target, c, witnesses} objects.
#[pyfunction]
#[pyo3(name = "jantzen_rows")]
fn py_jantzen_rows(
    family: &str,
    rank: usize,
    included: Vec<usize>,
    weight: Vec<f64>,
) -> PyResult<String> {
    let sys = resolve(family, rank, included, weight)?;
    let mut rows = Vec::new();
    for lam in enumerate_coset(&sys.pd, &sys.lambda_bar) {
        for (_, e) in jantzen_row(&sys.pd, &lam) {
            rows.push(serde_json::json!({
                "source": weight_out(&e.source),
                "target": weight_out(&e.target),
                "c": e.c,
                "witnesses": e.witnesses.iter()
                    .map(|(r, p)| serde_json::json!([r.to_string(), p]))
                    .collect::<Vec<_>>(),
            }));
        }
    }
    serde_json::to_string(&rows).map_err(value_err)
}

/// The block decomposition as a JSON string: {"count": int,
/// "blocks": [[weight, ...], ...]} with weights as coordinate lists.
#[pyfunction]
#[pyo3(name = "block_decomposition")]
fn py_block_decomposition(
    family: &str,
    rank: usize,
    included: Vec<usize>,
    weight: Vec<f64>,
) -> PyResult<String> {
    let sys = resolve(family, rank, included, weight)?;
    let graph = linkage_graph(&sys.pd, &sys.lambda_bar);
    let dec = block_decomposition_oracle(&sys.pd, &sys.lambda_bar);
    let blocks: Vec<Vec<Vec<f64>>> = dec
        .blocks
        .iter()
        .map(|b| b.iter().map(|&v| weight_out(&graph.vertices[v])).collect())
        .collect();
    serde_json::to_string(&serde_json::json!({
        "count": dec.oracle_count,
        "blocks": blocks,
    }))
    .map_err(value_err)
}

/// Block counts from all four pipelines plus an agreement flag, as a JSON
/// string: {"oracle", "separability", "partitions", "factorize", "agree"}.
#[pyfunction]
#[pyo3(name = "block_counts")]
fn py_block_counts(
    family: &str,
    rank: usize,
    included: Vec<usize>,
    weight: Vec<f64>,
) -> PyResult<String> {
    let sys = resolve(family, rank, included, weight)?;
    let sd = singular(&sys)?;
    let pd_j = ParabolicData::new(sys.pd.rs, &sd.j_included);
    let oracle = block_decomposition_oracle(&sys.pd, &sys.lambda_bar).oracle_count as u64;
    let separability = predicted_block_count(&sys.pd, &sd).map_err(value_err)?;
    let partitions = count_from_partitions(&sys.pd, &pd_j).map_err(value_err)?;
    let factorized = if oracle == 0 {
        0
    } else {
        factorize(&sys.pd, &sys.lambda_bar)
            .map_err(value_err)?
            .block_count_product()
    };
    let agree = oracle == separability && oracle == partitions && oracle == factorized;
    serde_json::to_string(&serde_json::json!({
        "oracle": oracle,
        "separability": separability,
        "partitions": partitions,
        "factorize": factorized,
        "agree": agree,
    }))
    .map_err(value_err)
}

/// The separable pairs 𝒟 with equivalence classes, serialized to JSON.
#[pyfunction]
#[pyo3(name = "separable_pairs")]
fn py_separable_pairs(
    family: &str,
    rank: usize,
    included: Vec<usize>,
    weight: Vec<f64>,
) -> PyResult<String> {
    let sys = resolve(family, rank, included, weight)?;
    let sd = singular(&sys)?;
    let classes = all_separable_pairs(&sys.pd, &sd).map_err(value_err)?;
    serde_json::to_string(&classes).map_err(value_err)
}

/// Whether the system (I as `included`, J as `j`) has any simple modules.
#[pyfunction]
#[pyo3(name = "nonempty")]
fn py_nonempty(family: &str, rank: usize, included: Vec<usize>, j: Vec<usize>) -> PyResult<bool> {
    let family = parse_family(family)?;
    let rs = RootSystem::new(family, rank).map_err(value_err)?;
    let pd_i = ParabolicData::new(rs, &included);
    let pd_j = ParabolicData::new(rs, &j);
    nonempty_criterion(&pd_i, &pd_j).map_err(value_err)
}

/// Whether λ and μ lie in the same block of the coset of λ̄.
#[pyfunction]
#[pyo3(name = "same_block")]
fn py_same_block(
    family: &str,
    rank: usize,
    included: Vec<usize>,
    weight: Vec<f64>,
    lam: Vec<f64>,
    mu: Vec<f64>,
) -> PyResult<bool> {
    let sys = resolve(family, rank, included, weight)?;
    let lam = parse_weight(lam)?;
    let mu = parse_weight(mu)?;
    same_block(&sys.pd, &sys.lambda_bar, &lam, &mu).map_err(value_err)
}

/// The factorization tree into pseudo-indecomposable systems, serialized to
/// JSON (the library's serde format).
#[pyfunction]
#[pyo3(name = "factor_tree")]
fn py_factor_tree(
    family: &str,
    rank: usize,
    included: Vec<usize>,
    weight: Vec<f64>,
) -> PyResult<String> {
    let sys = resolve(family, rank, included, weight)?;
    let tree = factorize(&sys.pd, &sys.lambda_bar).map_err(value_err)?;
    serde_json::to_string(&tree).map_err(value_err)
}

#[pymodule]
fn blocks_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(py_canonical_dominant, m)?)?;
    m.add_function(wrap_pyfunction!(py_enumerate_coset, m)?)?;
    m.add_function(wrap_pyfunction!(py_jantzen_rows, m)?)?;
    m.add_function(wrap_pyfunction!(py_block_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(py_block_counts, m)?)?;
    m.add_function(wrap_pyfunction!(py_separable_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(py_nonempty, m)?)?;
    m.add_function(wrap_pyfunction!(py_same_block, m)?)?;
    m.add_function(wrap_pyfunction!(py_factor_tree, m)?)?;
    Ok(())
}
