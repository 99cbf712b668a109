//! Single-source shortest paths on the weighted periodic lattice.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::rhg::RhgInstance;

const NO_EDGE: u32 = u32::MAX;

/// Dijkstra tree rooted at one check.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub source: usize,
    pub dist: Vec<f64>,
    pred: Vec<u32>,
}

impl ShortestPaths {
    /// Runs until every vertex in `targets` is settled (all vertices when
    /// `targets` is empty). Among equal-length routes the one whose final
    /// edge has the smaller index wins.
    pub fn run(lat: &RhgInstance, weights: &[f64], source: usize, targets: &[usize]) -> Self {
        let n = lat.num_checks();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![NO_EDGE; n];
        let mut done = vec![false; n];
        let mut is_target = vec![targets.is_empty(); n];
        for &t in targets {
            is_target[t] = true;
        }
        let mut remaining = if targets.is_empty() {
            n
        } else {
            targets.iter().filter(|&&t| t != source).count() + 1
        };
        dist[source] = 0.0;
        // Non-negative floats order like their bit patterns, so the heap keys
        // are (distance bits, vertex) pairs popped smallest first.
        let mut heap = BinaryHeap::from([Reverse((0u64, source as u32))]);
        while let Some(Reverse((bits, v))) = heap.pop() {
            let v = v as usize;
            let d = f64::from_bits(bits);
            if done[v] {
                continue;
            }
            done[v] = true;
            if is_target[v] || v == source {
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
            for (q, u) in lat.neighbors(v) {
                if done[u] {
                    continue;
                }
                let nd = d + weights[q];
                if nd < dist[u] || (nd == dist[u] && (q as u32) < pred[u]) {
                    dist[u] = nd;
                    pred[u] = q as u32;
                    heap.push(Reverse((nd.to_bits(), u as u32)));
                }
            }
        }
        ShortestPaths { source, dist, pred }
    }

    /// Qubits on the tree path from `target` back to the source.
    pub fn path_to(&self, lat: &RhgInstance, target: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut v = target;
        while v != self.source {
            let q = self.pred[v];
            assert_ne!(q, NO_EDGE, "target {target} not reached");
            let q = q as usize;
            out.push(q);
            let (a, b) = lat.endpoints(q);
            v = if a == v { b } else { a };
        }
        out
    }
}
