//! From the interaction matrix G to the cluster adjacency A, weight pruning,
//! and degree-based topology classification.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hgraph::{write_edge_file, GMatrix};
use crate::modes::{FieldKind, ModeSet};
use crate::scalar::Real;

/// Cluster adjacency `A = [[0, A0], [A0ᵀ, 0]]`, split at row `n/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AMatrix<T: Real> {
    entries: DMatrix<T>,
    mode_map: Option<ModeSet>,
}

impl<T: Real> AMatrix<T> {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<T> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[(i, j)]
    }

    pub fn mode_map(&self) -> Option<&ModeSet> {
        self.mode_map.as_ref()
    }

    /// The upper-right `n/2 × n/2` block.
    pub fn off_block(&self) -> DMatrix<T> {
        let h = self.n() / 2;
        self.entries.view((0, h), (h, h)).into_owned()
    }

    pub fn to_edge_file(&self) -> String {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = self.entries[(i, j)];
                if w != T::zero() {
                    edges.push((i, j, w));
                }
            }
        }
        write_edge_file(n, &edges)
    }
}

/// `‖V D Vᵀ − G‖_max` for an eigendecomposition of `g`.
pub fn reconstruction_residual<T: Real>(g: &DMatrix<T>, values: &[T], vectors: &DMatrix<T>) -> T {
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values));
    let r = vectors * d * vectors.transpose() - g;
    r.iter().fold(T::zero(), |m, &x| Float::max(m, Float::abs(x)))
}

/// Eigen-decomposes `g` and assembles A. The decomposition must reproduce
/// `g` to `T::recon_tol()` relative to `max(1, ‖G‖_max)`.
pub fn a_from_g<T: Real>(g: &GMatrix<T>) -> Result<AMatrix<T>> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: 0,
        });
    }
    let eig = SymmetricEigen::new(g.entries().clone());
    let values: Vec<T> = eig.eigenvalues.iter().copied().collect();
    let residual = reconstruction_residual(g.entries(), &values, &eig.eigenvectors);
    let scale = Float::max(T::one(), g.max_abs());
    if !(residual < T::recon_tol() * scale) {
        return Err(Error::EigenFailure(residual.to_f64().unwrap_or(f64::NAN)));
    }
    let entries = a_from_decomposition(&values, &eig.eigenvectors)?;
    Ok(AMatrix {
        entries,
        mode_map: g.mode_map().cloned(),
    })
}

/// A from a given eigendecomposition (`vectors` holds eigenvectors as
/// columns, in any order). Eigenpairs are sorted by descending eigenvalue,
/// then `A0 = −V12 V22⁻¹`.
pub fn a_from_decomposition<T: Real>(values: &[T], vectors: &DMatrix<T>) -> Result<DMatrix<T>> {
    let n = values.len();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if vectors.nrows() != n || vectors.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: vectors.ncols(),
        });
    }
    let h = n / 2;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("finite eigenvalues"));
    let gap = values[order[h - 1]] - values[order[h]];
    if gap < T::gap_tol() {
        return Err(Error::AmbiguousPartition(gap.to_f64().unwrap_or(f64::NAN)));
    }

    let v12 = DMatrix::from_fn(h, h, |r, c| vectors[(r, order[h + c])]);
    let v22 = DMatrix::from_fn(h, h, |r, c| vectors[(h + r, order[h + c])]);
    let sv = v22.clone().svd(false, false).singular_values;
    let smax = sv.iter().fold(T::zero(), |m, &x| Float::max(m, x));
    let smin = sv.iter().fold(T::infinity(), |m, &x| Float::min(m, x));
    if !(smin >= T::singular_tol() * smax) || smax == T::zero() {
        let ratio = if smax > T::zero() { smin / smax } else { T::zero() };
        return Err(Error::SingularBlock(ratio.to_f64().unwrap_or(f64::NAN)));
    }
    let inv = v22
        .try_inverse()
        .ok_or(Error::SingularBlock(0.0))?;
    let a0 = -(v12 * inv);
    Ok(assemble(&a0))
}

/// `[[0, A0], [A0ᵀ, 0]]`, symmetric bit-for-bit.
pub fn assemble<T: Real>(a0: &DMatrix<T>) -> DMatrix<T> {
    let h = a0.nrows();
    let mut a = DMatrix::zeros(2 * h, 2 * h);
    for r in 0..h {
        for c in 0..h {
            a[(r, h + c)] = a0[(r, c)];
            a[(h + c, r)] = a0[(r, c)];
        }
    }
    a
}

/// Pruned graph: edges `(i, j, |A_ij|)` with `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterGraph<T: Real> {
    pub n: usize,
    pub edges: Vec<(usize, usize, T)>,
    pub mode_map: Option<ModeSet>,
}

impl<T: Real> ClusterGraph<T> {
    pub fn to_edge_file(&self) -> String {
        write_edge_file(self.n, &self.edges)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }
}

/// Keeps the entries with `|A_ij| > threshold`.
pub fn prune<T: Real>(a: &AMatrix<T>, threshold: T) -> Result<ClusterGraph<T>> {
    if !(threshold >= T::zero()) {
        return Err(Error::InvalidThreshold(threshold.to_f64().unwrap_or(f64::NAN)));
    }
    let n = a.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = Float::abs(a.get(i, j));
            if w > threshold {
                edges.push((i, j, w));
            }
        }
    }
    Ok(ClusterGraph {
        n,
        edges,
        mode_map: a.mode_map.clone(),
    })
}

/// `10·log10(w)` for a weight in `(0, 1]`.
pub fn weight_to_db(w: f64) -> Result<f64> {
    if !(w > 0.0 && w <= 1.0) {
        return Err(Error::InvalidWeight(w));
    }
    Ok(10.0 * w.log10())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyClass {
    Path,
    Grid2D,
    Cubic3D,
    BicolorableComplete,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyDetail {
    Path { nodes: usize },
    Grid2D { rows: usize, cols: usize },
    Cubic3D { dims: [usize; 3] },
    BicolorableComplete { left: usize, right: usize },
    Other { nodes: usize, edges: usize, components: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyReport {
    pub class: TopologyClass,
    pub detail: TopologyDetail,
}

impl fmt::Display for TopologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for TopologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{class: {}, detail: {{", self.class)?;
        match &self.detail {
            TopologyDetail::Path { nodes } => write!(f, "nodes: {nodes}")?,
            TopologyDetail::Grid2D { rows, cols } => write!(f, "rows: {rows}, cols: {cols}")?,
            TopologyDetail::Cubic3D { dims } => {
                write!(f, "dims: [{}, {}, {}]", dims[0], dims[1], dims[2])?
            }
            TopologyDetail::BicolorableComplete { left, right } => {
                write!(f, "left: {left}, right: {right}")?
            }
            TopologyDetail::Other {
                nodes,
                edges,
                components,
            } => write!(f, "nodes: {nodes}, edges: {edges}, components: {components}")?,
        }
        write!(f, "}}}}")
    }
}

/// Degree-based classification; checks run in the order Path, Grid2D,
/// Cubic3D, BicolorableComplete.
pub fn classify_graph<T: Real>(c: &ClusterGraph<T>) -> TopologyReport {
    let n = c.n;
    let adj = c.adjacency();
    let degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
    let components = count_components(&adj);
    let connected = n > 0 && components == 1;
    let coloring = two_coloring(&adj);

    if connected && n >= 2 {
        let ones = degrees.iter().filter(|&&d| d == 1).count();
        let twos = degrees.iter().filter(|&&d| d == 2).count();
        if ones == 2 && ones + twos == n {
            return TopologyReport {
                class: TopologyClass::Path,
                detail: TopologyDetail::Path { nodes: n },
            };
        }
    }

    if connected && coloring.is_some() {
        let hist = histogram(&degrees);
        let max_deg = degrees.iter().copied().max().unwrap_or(0);
        if max_deg <= 4 {
            for dims in box_shapes(n, 2) {
                if box_histogram(&dims) == hist && box_edges(&dims) == c.edges.len() {
                    return TopologyReport {
                        class: TopologyClass::Grid2D,
                        detail: TopologyDetail::Grid2D {
                            rows: dims[0],
                            cols: dims[1],
                        },
                    };
                }
            }
        }
        if max_deg <= 6 {
            for dims in box_shapes(n, 3) {
                if box_histogram(&dims) == hist && box_edges(&dims) == c.edges.len() {
                    return TopologyReport {
                        class: TopologyClass::Cubic3D,
                        detail: TopologyDetail::Cubic3D {
                            dims: [dims[0], dims[1], dims[2]],
                        },
                    };
                }
            }
        }
    }

    let sides: Option<Vec<bool>> = match &c.mode_map {
        Some(map) => Some(map.iter().map(|m| m.kind == FieldKind::Signal).collect()),
        None if connected => coloring,
        None => None,
    };
    if let Some(side) = sides {
        let left = side.iter().filter(|&&s| s).count();
        let right = n - left;
        let cross = c.edges.iter().all(|&(i, j, _)| side[i] != side[j]);
        if left > 0 && right > 0 && cross && c.edges.len() == left * right {
            return TopologyReport {
                class: TopologyClass::BicolorableComplete,
                detail: TopologyDetail::BicolorableComplete { left, right },
            };
        }
    }

    TopologyReport {
        class: TopologyClass::Other,
        detail: TopologyDetail::Other {
            nodes: n,
            edges: c.edges.len(),
            components,
        },
    }
}

fn count_components(adj: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut count = 0;
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    count
}

/// BFS two-coloring; `None` if some component has an odd cycle.
fn two_coloring(adj: &[Vec<usize>]) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; adj.len()];
    for s in 0..adj.len() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(true);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for &u in &adj[v] {
                match color[u] {
                    None => {
                        color[u] = Some(!cv);
                        queue.push_back(u);
                    }
                    Some(cu) if cu == cv => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

fn histogram(degrees: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &d in degrees {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

/// Non-decreasing factorizations of `n` into `k` factors, each at least 2.
fn box_shapes(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            if n >= min {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let mut f = min;
        while f.pow(k as u32) <= n {
            if n.is_multiple_of(f) {
                cur.push(f);
                rec(n / f, k - 1, f, cur, out);
                cur.pop();
            }
            f += 1;
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        rec(n, k, 2, &mut Vec::new(), &mut out);
    }
    out
}

/// Degree histogram of the open box lattice with side lengths `dims`.
fn box_histogram(dims: &[usize]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::from([(0usize, 1usize)]);
    for &s in dims {
        let mut next = BTreeMap::new();
        for (&deg, &count) in &hist {
            *next.entry(deg + 1).or_insert(0) += 2 * count;
            if s > 2 {
                *next.entry(deg + 2).or_insert(0) += (s - 2) * count;
            }
        }
        hist = next;
    }
    hist
}

fn box_edges(dims: &[usize]) -> usize {
    let n: usize = dims.iter().product();
    dims.iter().map(|&s| n / s * (s - 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn g_from(n: usize, data: &[f64]) -> GMatrix<f64> {
        GMatrix::from_dense(DMatrix::from_row_slice(n, n, data), None).unwrap()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> ClusterGraph<f64> {
        ClusterGraph {
            n,
            edges: edges.iter().map(|&(i, j)| (i, j, 1.0)).collect(),
            mode_map: None,
        }
    }

    fn grid_edges(dims: &[usize]) -> (usize, Vec<(usize, usize)>) {
        let n: usize = dims.iter().product();
        let mut edges = Vec::new();
        for v in 0..n {
            let mut stride = 1;
            let mut rest = v;
            for &s in dims.iter().rev() {
                let c = rest % s;
                rest /= s;
                if c + 1 < s {
                    edges.push((v, v + stride));
                }
                stride *= s;
            }
        }
        (n, edges)
    }

    #[test]
    fn two_mode_reduction() {
        let a = a_from_g(&g_from(2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_abs_diff_eq!(a.get(0, 1), 1.0, epsilon = 1e-12);
        assert_eq!(a.get(0, 0), 0.0);
        assert_eq!(a.get(1, 1), 0.0);
    }

    #[test]
    fn reduction_errors() {
        let odd = GMatrix::from_dense(DMatrix::<f64>::zeros(3, 3), None).unwrap();
        assert_eq!(a_from_g(&odd).unwrap_err(), Error::OddDimension(3));
        let zero = GMatrix::from_dense(DMatrix::<f64>::zeros(2, 2), None).unwrap();
        assert!(matches!(a_from_g(&zero), Err(Error::AmbiguousPartition(_))));
        // Two disconnected pairs stacked so V22 loses rank.
        let g = g_from(
            4,
            &[
                0.0, 2.0, 0.0, 0.0, //
                2.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        );
        assert!(matches!(a_from_g(&g), Err(Error::SingularBlock(_))));
    }

    #[test]
    fn reduction_in_f32() {
        let g = GMatrix::<f32>::from_dense(DMatrix::from_row_slice(2, 2, &[0.0, 3.0, 3.0, 0.0]), None)
            .unwrap();
        let a = a_from_g(&g).unwrap();
        assert!((a.get(0, 1) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn prune_edges() {
        let a = a_from_g(&g_from(2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_eq!(prune(&a, 0.0).unwrap().edges.len(), 1);
        assert!(prune(&a, 2.0).unwrap().edges.is_empty());
        assert!(matches!(prune(&a, -0.1), Err(Error::InvalidThreshold(_))));
    }

    #[test]
    fn db_mapping() {
        assert_eq!(weight_to_db(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(weight_to_db(0.5).unwrap(), -3.0103, epsilon = 1e-4);
        assert_abs_diff_eq!(weight_to_db(0.1).unwrap(), -10.0, epsilon = 1e-12);
        assert!(weight_to_db(0.0).is_err());
        assert!(weight_to_db(1.5).is_err());
        assert!(weight_to_db(f64::NAN).is_err());
    }

    #[test]
    fn classify_shapes() {
        let path: Vec<_> = (0..47).map(|i| (i, i + 1)).collect();
        assert_eq!(
            classify_graph(&graph(48, &path)).detail,
            TopologyDetail::Path { nodes: 48 }
        );
        let (n, e) = grid_edges(&[6, 8]);
        assert_eq!(
            classify_graph(&graph(n, &e)).detail,
            TopologyDetail::Grid2D { rows: 6, cols: 8 }
        );
        let (n, e) = grid_edges(&[3, 3, 2]);
        assert_eq!(
            classify_graph(&graph(n, &e)).detail,
            TopologyDetail::Cubic3D { dims: [2, 3, 3] }
        );
        let k23: Vec<_> = (0..2).flat_map(|i| (2..5).map(move |j| (i, j))).collect();
        assert_eq!(classify_graph(&graph(5, &k23)).class, TopologyClass::BicolorableComplete);
        assert_eq!(classify_graph(&graph(1, &[])).class, TopologyClass::Other);
        assert_eq!(classify_graph(&graph(4, &[])).class, TopologyClass::Other);
        // A ring is neither a path nor a grid.
        let mut ring = path.clone();
        ring.push((0, 47));
        assert_eq!(classify_graph(&graph(48, &ring)).class, TopologyClass::Other);
    }

    #[test]
    fn report_line() {
        let r = classify_graph(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!(r.to_string(), "{class: Path, detail: {nodes: 3}}");
    }

    #[test]
    fn box_degree_histograms() {
        assert_eq!(
            box_histogram(&[3, 4]),
            BTreeMap::from([(2, 4), (3, 6), (4, 2)])
        );
        assert_eq!(box_edges(&[3, 4]), 17);
        assert_eq!(box_shapes(18, 3), vec![vec![2, 3, 3]]);
    }

    fn bipartite(b: &DMatrix<f64>) -> GMatrix<f64> {
        GMatrix::from_dense(assemble(b), None).unwrap()
    }

    /// Cyclic Jacobi rotations; returns eigenvalues and column eigenvectors.
    fn jacobi(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
        let n = m.nrows();
        let mut a = m.clone();
        let mut v = DMatrix::identity(n, n);
        for _ in 0..100 {
            let off: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| a[(i, j)].powi(2)).sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    let mut r = DMatrix::identity(n, n);
                    r[(p, p)] = c;
                    r[(q, q)] = c;
                    r[(p, q)] = s;
                    r[(q, p)] = -s;
                    a = r.transpose() * &a * &r;
                    v = &v * &r;
                }
            }
        }
        ((0..n).map(|i| a[(i, i)]).collect(), v)
    }

    #[test]
    fn self_inverse_g_is_its_own_a() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for trial in 0..10 {
            let h = 2 + trial % 3;
            let m = DMatrix::from_fn(h, h, |_, _| rng.gen_range(-1.0..1.0));
            let q = m.qr().q();
            let g = bipartite(&q);
            let a = a_from_g(&g).unwrap();
            assert!((a.entries() - g.entries()).amax() < 1e-8);
        }
    }

    #[test]
    fn off_block_is_the_polar_factor() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let b = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
            let svd = b.clone().svd(true, true);
            let polar = svd.u.unwrap() * svd.v_t.unwrap();
            let a = a_from_g(&bipartite(&b)).unwrap();
            assert!((a.off_block() - polar).amax() < 1e-9);
        }
    }

    #[test]
    fn independent_eigensolver_agrees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(15);
        for _ in 0..20 {
            let b = DMatrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
            let g = bipartite(&b);
            let (values, vectors) = jacobi(g.entries());
            assert!(reconstruction_residual(g.entries(), &values, &vectors) < 1e-10);
            let oracle = a_from_decomposition(&values, &vectors).unwrap();
            let a = a_from_g(&g).unwrap();
            assert!((a.entries() - oracle).amax() < 1e-8);
        }
    }

    proptest! {
        #[test]
        fn eigenvector_signs_and_order_do_not_matter(seed in any::<u64>(), flips in any::<u8>(), rot in 0usize..6) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let b = DMatrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
            let g = bipartite(&b);
            let eig = SymmetricEigen::new(g.entries().clone());
            let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            let base = a_from_decomposition(&values, &eig.eigenvectors);
            prop_assume!(base.is_ok());
            let perm: Vec<usize> = (0..6).map(|i| (i + rot) % 6).collect();
            let pv: Vec<f64> = perm.iter().map(|&i| values[i]).collect();
            let mut vecs = DMatrix::from_fn(6, 6, |r, c| eig.eigenvectors[(r, perm[c])]);
            for c in 0..6 {
                if flips >> c & 1 == 1 {
                    vecs.column_mut(c).neg_mut();
                }
            }
            let moved = a_from_decomposition(&pv, &vecs).unwrap();
            prop_assert!((base.unwrap() - moved).amax() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn prune_is_monotone(seed in any::<u64>(), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let h = 3;
            let a0 = DMatrix::from_fn(h, h, |_, _| rng.gen_range(-1.0..1.0));
            let a = AMatrix { entries: assemble(&a0), mode_map: None };
            let (hi, lo) = if t1 >= t2 { (t1, t2) } else { (t2, t1) };
            let strong = prune(&a, hi).unwrap();
            let weak = prune(&a, lo).unwrap();
            for e in &strong.edges {
                prop_assert!(weak.edges.contains(e));
            }
        }
    }
}
