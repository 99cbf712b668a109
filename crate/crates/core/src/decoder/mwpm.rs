//! Defect graph construction, exact minimum-weight perfect matching and the
//! resulting Pauli-frame correction.

use crate::decoder::blossom::max_weight_matching;
use crate::decoder::paths::ShortestPaths;
use crate::error::{Error, Result};
use crate::rhg::RhgInstance;
use crate::scalar::MatchWeight;

/// Complete graph on the defects with shortest-path weights.
#[derive(Debug, Clone)]
pub struct MatchingProblem {
    pub defects: Vec<usize>,
    /// Row-major `k × k` matrix of pair weights.
    pub pair_weights: Vec<f64>,
    trees: Vec<ShortestPaths>,
}

impl MatchingProblem {
    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn weight(&self, a: usize, b: usize) -> f64 {
        self.pair_weights[a * self.defects.len() + b]
    }
}

/// One Dijkstra run per defect; the weight of pair `(a, b)`, `a < b`, comes
/// from the tree rooted at `a` and is mirrored to `(b, a)`.
pub fn defect_pair_weights(
    lat: &RhgInstance,
    per_qubit_weight: &[f64],
    defects: &[usize],
) -> Result<MatchingProblem> {
    if per_qubit_weight.len() != lat.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: lat.num_qubits(),
            got: per_qubit_weight.len(),
        });
    }
    if defects.len() % 2 == 1 {
        return Err(Error::OddDefects(defects.len()));
    }
    let k = defects.len();
    let mut pair_weights = vec![0.0; k * k];
    let mut trees = Vec::with_capacity(k.saturating_sub(1));
    for a in 0..k.saturating_sub(1) {
        let tree = ShortestPaths::run(lat, per_qubit_weight, defects[a], &defects[a + 1..]);
        for b in a + 1..k {
            let w = tree.dist[defects[b]];
            pair_weights[a * k + b] = w;
            pair_weights[b * k + a] = w;
        }
        trees.push(tree);
    }
    Ok(MatchingProblem {
        defects: defects.to_vec(),
        pair_weights,
        trees,
    })
}

/// Exact minimum-weight perfect matching on a complete graph of `n` vertices
/// with row-major weights. Returns pairs `(a, b)` with `a < b`, sorted.
///
/// Weights are mapped to integers by [`MatchWeight::quantize`] and matched
/// as `C − w` under maximum cardinality, which is exact over the integers.
pub fn min_weight_perfect_matching<W: MatchWeight>(n: usize, weights: &[W]) -> Result<Vec<(usize, usize)>> {
    if n % 2 == 1 {
        return Err(Error::OddDefects(n));
    }
    if weights.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: weights.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            upper.push(weights[a * n + b]);
        }
    }
    let q = W::quantize(&upper);
    let top = q.iter().copied().max().unwrap_or(0);
    let mut edges = Vec::with_capacity(q.len());
    let mut it = q.into_iter();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b, top + 1 - it.next().unwrap()));
        }
    }
    let mate = max_weight_matching(n, &edges, true);
    let mut pairs = Vec::with_capacity(n / 2);
    for (a, m) in mate.iter().enumerate() {
        let b = m.expect("complete graph on an even vertex count has a perfect matching");
        if a < b {
            pairs.push((a, b));
        }
    }
    Ok(pairs)
}

/// Matching over defect positions (indices into `problem.defects`).
pub fn mwpm(problem: &MatchingProblem) -> Result<Vec<(usize, usize)>> {
    min_weight_perfect_matching(problem.len(), &problem.pair_weights)
}

/// XOR of the shortest paths joining every matched pair.
pub fn correction_from_matching(
    lat: &RhgInstance,
    problem: &MatchingProblem,
    matching: &[(usize, usize)],
) -> Vec<bool> {
    let mut c = vec![false; lat.num_qubits()];
    for &(a, b) in matching {
        let (a, b) = (a.min(b), a.max(b));
        for q in problem.trees[a].path_to(lat, problem.defects[b]) {
            c[q] ^= true;
        }
    }
    c
}
