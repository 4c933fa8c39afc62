//! Global sum by spectral rounds.
//!
//! Each round every vertex adds its neighbours' values and subtracts `λ`
//! times its own, i.e. applies `A − λI`. Running one round per distinct
//! eigenvalue `λ ≠ d` annihilates everything orthogonal to the constant
//! vector, leaving every vertex with `Σx · ∏(d − λ) / P`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::group::CayleyGraph;

/// Largest vertex count handled by the dense eigensolver.
pub const MAX_SPECTRAL_VERTICES: usize = 2048;

/// Relative tolerance used to merge numerically equal eigenvalues.
pub const EIGEN_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GlobalSumError {
    #[error("adjacency matrix is not symmetric")]
    NotSymmetric,
    #[error("graph has more than {MAX_SPECTRAL_VERTICES} vertices")]
    TooLarge,
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// Distinct adjacency eigenvalues, largest first. `Q_d` uses its exact
/// spectrum `d, d − 2, …, −d`.
pub fn distinct_eigenvalues(graph: &CayleyGraph) -> Result<Vec<f64>, GlobalSumError> {
    if !graph.is_bidirectional() {
        return Err(GlobalSumError::NotSymmetric);
    }
    if let Some(d) = graph.hypercube_dim() {
        return Ok((0..=d).map(|i| d as f64 - 2.0 * i as f64).collect());
    }
    let p = graph.vertex_count();
    if p > MAX_SPECTRAL_VERTICES {
        return Err(GlobalSumError::TooLarge);
    }
    let adj = graph.adjacency();
    let m = DMatrix::from_fn(p, p, |i, j| adj[i * p + j] as f64);
    if m != m.transpose() {
        return Err(GlobalSumError::NotSymmetric);
    }
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let radius = values
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    let mut out: Vec<f64> = Vec::new();
    for v in values {
        match out.last() {
            Some(&last) if (last - v).abs() <= EIGEN_TOLERANCE * radius => {}
            _ => out.push(v),
        }
    }
    // The principal eigenvalue of a connected d-regular graph is d.
    let d = graph.degree() as f64;
    if let Some(first) = out.first_mut() {
        if (*first - d).abs() <= EIGEN_TOLERANCE * radius {
            *first = d;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumPlan {
    /// `λ_t` for each round, in application order.
    pub steps: Vec<f64>,
    /// Final entries divided by `scale` give the sum.
    pub scale: f64,
    pub rounds: usize,
    pub diameter: u32,
}

pub fn build_sum_plan(graph: &CayleyGraph) -> Result<SumPlan, GlobalSumError> {
    let values = distinct_eigenvalues(graph)?;
    let d = graph.degree() as f64;
    let steps: Vec<f64> = values.into_iter().skip(1).collect();
    let scale = steps.iter().map(|l| d - l).product::<f64>() / graph.vertex_count() as f64;
    Ok(SumPlan {
        rounds: steps.len(),
        steps,
        scale,
        diameter: graph.diameter(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumOutcome {
    /// Per-vertex values after the last round.
    pub values: Vec<f64>,
    /// Vertex 0's value divided by the plan scale.
    pub recovered_sum: f64,
    /// Largest spread of the rescaled values, `max |v/scale − recovered|`.
    pub max_deviation: f64,
}

/// One round: every vertex adds what it receives and subtracts `λ` times
/// its own value.
pub fn sum_round(neighbors: &[Vec<usize>], x: &[f64], lambda: f64) -> Vec<f64> {
    neighbors
        .iter()
        .enumerate()
        .map(|(v, nb)| nb.iter().map(|&u| x[u]).sum::<f64>() - lambda * x[v])
        .collect()
}

pub fn run_sum_plan(
    graph: &CayleyGraph,
    plan: &SumPlan,
    x: &[f64],
) -> Result<SumOutcome, GlobalSumError> {
    let p = graph.vertex_count();
    if x.len() != p {
        return Err(GlobalSumError::WrongLength {
            expected: p,
            got: x.len(),
        });
    }
    // Symmetric graph: in-neighbours equal out-neighbours.
    let neighbors: Vec<Vec<usize>> = (0..p as u32)
        .map(|v| graph.out_neighbors(v).map(|(u, _)| u as usize).collect())
        .collect();
    let mut cur = x.to_vec();
    for &lambda in &plan.steps {
        cur = sum_round(&neighbors, &cur, lambda);
    }
    let recovered_sum = cur.first().map_or(0.0, |v| v / plan.scale);
    let max_deviation = cur
        .iter()
        .map(|v| (v / plan.scale - recovered_sum).abs())
        .fold(0.0, f64::max);
    Ok(SumOutcome {
        values: cur,
        recovered_sum,
        max_deviation,
    })
}

/// Euclidean norm, for tolerance checks.
pub fn norm(x: &[f64]) -> f64 {
    libm::sqrt(x.iter().map(|v| v * v).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete, cycle, hypercube, petersen};
    use alloc::vec;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn spectra() {
        assert!(close(
            &distinct_eigenvalues(&hypercube(3).unwrap()).unwrap(),
            &[3.0, 1.0, -1.0, -3.0]
        ));
        assert!(close(
            &distinct_eigenvalues(&petersen()).unwrap(),
            &[3.0, 1.0, -2.0]
        ));
        assert!(close(
            &distinct_eigenvalues(&complete(2).unwrap()).unwrap(),
            &[1.0, -1.0]
        ));
        assert!(close(
            &distinct_eigenvalues(&complete(5).unwrap()).unwrap(),
            &[4.0, -1.0]
        ));
    }

    #[test]
    fn hypercube_spectrum_matches_numeric() {
        // Same graph as an abelian product, forcing the numeric path.
        for d in 1..=6u32 {
            let moduli = vec![2u32; d as usize];
            let gens: Vec<Vec<i64>> = (0..d as usize)
                .map(|i| (0..d as usize).map(|j| (i == j) as i64).collect())
                .collect();
            let refs: Vec<&[i64]> = gens.iter().map(|g| g.as_slice()).collect();
            let g =
                crate::group::build_cayley_graph(&crate::group::GroupSpec::abelian(&moduli, &refs))
                    .unwrap();
            assert!(g.hypercube_dim().is_none());
            let numeric = distinct_eigenvalues(&g).unwrap();
            let exact = distinct_eigenvalues(&hypercube(d).unwrap()).unwrap();
            assert!(close(&numeric, &exact), "d={d}");
        }
    }

    #[test]
    fn plans() {
        let p = build_sum_plan(&hypercube(3).unwrap()).unwrap();
        assert_eq!(p.steps, vec![1.0, -1.0, -3.0]);
        assert!((p.scale - 6.0).abs() < 1e-12);
        let p = build_sum_plan(&hypercube(1).unwrap()).unwrap();
        assert_eq!(p.steps, vec![-1.0]);
        assert!((p.scale - 1.0).abs() < 1e-12);
        let p = build_sum_plan(&petersen()).unwrap();
        assert_eq!((p.rounds, p.diameter), (2, 2));
    }

    #[test]
    fn running_plans() {
        let g = hypercube(3).unwrap();
        let plan = build_sum_plan(&g).unwrap();
        let r = run_sum_plan(&g, &plan, &[1.0; 8]).unwrap();
        assert!((r.recovered_sum - 8.0).abs() < 1e-12);
        let mut e0 = [0.0; 8];
        e0[0] = 1.0;
        let r = run_sum_plan(&g, &plan, &e0).unwrap();
        assert!((r.recovered_sum - 1.0).abs() < 1e-9);
        assert!(r.max_deviation < 1e-9);
        assert!(run_sum_plan(&g, &plan, &[1.0; 3]).is_err());
    }

    #[test]
    fn step_order_is_irrelevant() {
        let g = cycle(7).unwrap();
        let plan = build_sum_plan(&g).unwrap();
        let x: Vec<f64> = (0..7).map(|i| (i * i) as f64 - 3.5).collect();
        let a = run_sum_plan(&g, &plan, &x).unwrap();
        let mut rev = plan.clone();
        rev.steps.reverse();
        let b = run_sum_plan(&g, &rev, &x).unwrap();
        assert!(a
            .values
            .iter()
            .zip(&b.values)
            .all(|(p, q)| (p - q).abs() < 1e-9 * norm(&x)));
        assert!((a.recovered_sum - x.iter().sum::<f64>()).abs() < 1e-9);
    }

    #[test]
    fn directed_graphs_are_refused() {
        let g = crate::group::build_cayley_graph(&crate::group::GroupSpec::abelian(&[5], &[&[1]]))
            .unwrap();
        assert_eq!(distinct_eigenvalues(&g), Err(GlobalSumError::NotSymmetric));
    }
}
