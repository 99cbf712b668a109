//! Hamiltonian-graph (G matrix) construction from pump specifications and
//! phase-modulation ladders, plus the plain-text edge file format.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::modes::{dc_partners, ModeSet, PumpSpec};
use crate::scalar::Real;

/// Symmetric, zero-diagonal interaction matrix. Row `i` belongs to
/// `mode_map[i]` when labels are known; matrices loaded from edge files carry
/// no labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GMatrix<T: Real> {
    entries: DMatrix<T>,
    mode_map: Option<ModeSet>,
}

impl<T: Real> GMatrix<T> {
    pub fn from_dense(entries: DMatrix<T>, mode_map: Option<ModeSet>) -> Result<Self> {
        let n = entries.nrows();
        if entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: entries.ncols(),
            });
        }
        if let Some(m) = &mode_map {
            if m.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: m.len(),
                });
            }
        }
        for i in 0..n {
            if entries[(i, i)] != T::zero() {
                return Err(Error::InvalidMode(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(Error::InvalidMode(format!("asymmetric entry ({i},{j})")));
                }
            }
        }
        Ok(GMatrix { entries, mode_map })
    }

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

    /// Nonzero upper-triangle entries `(i, j, w)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, T)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = self.entries[(i, j)];
                if w != T::zero() {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |m, &x| Float::max(m, Float::abs(x)))
    }

    /// True when no two modes of the same field kind are coupled.
    pub fn is_kind_bipartite(&self) -> bool {
        let Some(map) = &self.mode_map else {
            return false;
        };
        self.edges()
            .iter()
            .all(|&(i, j, _)| map[i].kind != map[j].kind)
    }

    /// Connected components, each sorted ascending, ordered by smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in 0..n {
                    if !seen[u] && self.entries[(v, u)] != T::zero() {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Principal sub-matrix on `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> GMatrix<T> {
        let k = indices.len();
        let entries = DMatrix::from_fn(k, k, |a, b| self.entries[(indices[a], indices[b])]);
        GMatrix {
            entries,
            mode_map: self.mode_map.as_ref().map(|m| m.select(indices)),
        }
    }

    /// The connected H graph containing mode `index`.
    pub fn component_of(&self, index: usize) -> GMatrix<T> {
        let comp = self
            .components()
            .into_iter()
            .find(|c| c.binary_search(&index).is_ok())
            .expect("index within matrix");
        self.restrict(&comp)
    }

    /// Serialize as an edge file: `N` then one `i j w` line per nonzero
    /// upper-triangle entry.
    pub fn to_edge_file(&self) -> String {
        write_edge_file(self.n(), &self.edges())
    }

    pub fn from_edge_file(text: &str) -> Result<Self> {
        let (n, entries) = parse_edge_file::<T>(text)?;
        let mut m = DMatrix::zeros(n, n);
        for (i, j, w) in entries {
            m[(i, j)] = w;
            m[(j, i)] = w;
        }
        Ok(GMatrix {
            entries: m,
            mode_map: None,
        })
    }
}

/// Phase-modulation coupling between neighbouring sidebands.
#[derive(Debug, Clone, PartialEq)]
pub struct PmSpec<T: Real> {
    pub chi_weight: T,
    /// Lower sideband indices `k` whose `k ↔ k+1` link is driven; `None`
    /// drives every adjacent pair.
    pub k_links: Option<BTreeSet<i32>>,
}

impl<T: Real> PmSpec<T> {
    pub fn new(chi_weight: T) -> Result<Self> {
        if !(chi_weight > T::zero()) {
            return Err(Error::InvalidPump(format!(
                "chi_weight {chi_weight} must be positive"
            )));
        }
        Ok(PmSpec {
            chi_weight,
            k_links: None,
        })
    }

    pub fn with_links(mut self, links: impl IntoIterator<Item = i32>) -> Self {
        self.k_links = Some(links.into_iter().collect());
        self
    }

    fn drives(&self, lower_k: i32) -> bool {
        self.k_links.as_ref().is_none_or(|s| s.contains(&lower_k))
    }
}

/// G[i][j] accumulates the amplitude of every pump component coupling the
/// pair.
pub fn build_g_downconversion<T: Real>(pumps: &PumpSpec, modes: &ModeSet) -> Result<GMatrix<T>> {
    if pumps.is_empty() {
        return Err(Error::EmptyPumpSpec);
    }
    if modes.is_empty() {
        return Err(Error::EmptyEnumeration("modes"));
    }
    for (p, comp) in pumps.components.iter().enumerate() {
        for &(s, i) in &comp.pairs {
            for sp in [s, i] {
                if !modes.contains_spatial(sp) {
                    return Err(Error::DanglingPumpPair {
                        pump: p,
                        spatial: sp.to_string(),
                    });
                }
            }
        }
    }
    let n = modes.len();
    let mut g = DMatrix::<T>::zeros(n, n);
    for comp in &pumps.components {
        let amp = T::lit(comp.amplitude);
        for (a, b) in dc_partners(comp, modes) {
            g[(a, b)] += amp;
            g[(b, a)] = g[(a, b)];
        }
    }
    Ok(GMatrix {
        entries: g,
        mode_map: Some(modes.clone()),
    })
}

/// Adds `chi_weight` between modes of equal kind, spatial content and comb
/// line whose sidebands differ by one.
pub fn add_phase_modulation<T: Real>(g: &GMatrix<T>, pm: &PmSpec<T>) -> Result<GMatrix<T>> {
    let map = g
        .mode_map()
        .ok_or_else(|| Error::InvalidMode("phase modulation needs mode labels".into()))?;
    if map.distinct_sidebands().len() < 2 {
        return Err(Error::NoPmTargets);
    }
    let mut out = g.entries.clone();
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (map[a], map[b]);
            if x.kind == y.kind
                && x.spatial == y.spatial
                && x.comb == y.comb
                && (x.sideband - y.sideband).abs() == 1
                && pm.drives(x.sideband.min(y.sideband))
            {
                out[(a, b)] += pm.chi_weight;
                out[(b, a)] = out[(a, b)];
            }
        }
    }
    Ok(GMatrix {
        entries: out,
        mode_map: g.mode_map.clone(),
    })
}

pub(crate) fn write_edge_file<T: Real>(n: usize, edges: &[(usize, usize, T)]) -> String {
    let mut s = String::with_capacity(16 * (edges.len() + 1));
    let _ = writeln!(s, "{n}");
    for (i, j, w) in edges {
        let _ = writeln!(s, "{i} {j} {w}");
    }
    s
}

type Edges<T> = Vec<(usize, usize, T)>;

/// Parses an edge file into `(N, entries)` with each entry normalized to
/// `i < j`. Duplicate entries must agree.
pub(crate) fn parse_edge_file<T: Real>(text: &str) -> Result<(usize, Edges<T>)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let n: usize = header.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        msg: format!("bad mode count `{}`", header.trim()),
    })?;
    let mut seen = std::collections::HashMap::new();
    let mut out = Vec::new();
    for (lineno, line) in lines {
        let line_no = lineno + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!("expected `i j w`, got `{line}`")));
        }
        let i: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("bad index `{}`", fields[0])))?;
        let j: usize = fields[1]
            .parse()
            .map_err(|_| err(format!("bad index `{}`", fields[1])))?;
        let w: T = fields[2]
            .parse()
            .map_err(|_| err(format!("bad weight `{}`", fields[2])))?;
        if !Float::is_finite(w) {
            return Err(err(format!("non-finite weight `{}`", fields[2])));
        }
        if i >= n || j >= n {
            return Err(err(format!("index out of range for N = {n}")));
        }
        if i == j {
            return Err(err(format!("diagonal entry ({i},{i})")));
        }
        let key = (i.min(j), i.max(j));
        match seen.get(&key) {
            Some(&prev) if prev != w => {
                return Err(err(format!(
                    "conflicting weight for ({},{}): {prev} vs {w}",
                    key.0, key.1
                )))
            }
            Some(_) => {}
            None => {
                seen.insert(key, w);
                out.push((key.0, key.1, w));
            }
        }
    }
    Ok((n, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{FieldKind, ModeId, PumpComponent, Spatial};
    use proptest::prelude::*;

    fn sp(m: i32, u: u32) -> Spatial {
        Spatial::new(m, u).unwrap()
    }

    fn pair_set() -> ModeSet {
        ModeSet::new(vec![
            ModeId::new(FieldKind::Signal, sp(0, 0), 0, 1),
            ModeId::new(FieldKind::Idler, sp(0, 0), 1, -1),
        ])
        .unwrap()
    }

    #[test]
    fn two_mode_build() {
        let pumps = PumpSpec::new(vec![PumpComponent::new(sp(0, 0), 1, 1.0, vec![]).unwrap()]);
        let g: GMatrix<f64> = build_g_downconversion(&pumps, &pair_set()).unwrap();
        assert_eq!(g.entries(), &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        assert!(g.is_kind_bipartite());
    }

    #[test]
    fn empty_pump_rejected() {
        let r = build_g_downconversion::<f64>(&PumpSpec::default(), &pair_set());
        assert_eq!(r.unwrap_err(), Error::EmptyPumpSpec);
    }

    #[test]
    fn dangling_pair_rejected() {
        let pumps = PumpSpec::new(vec![PumpComponent::new(
            sp(0, 2),
            1,
            1.0,
            vec![(sp(0, 1), sp(1, 0))],
        )
        .unwrap()]);
        let r = build_g_downconversion::<f64>(&pumps, &pair_set());
        assert!(matches!(r, Err(Error::DanglingPumpPair { pump: 0, .. })));
    }

    /// Two DC pairs, one at k=±1 and one at k=±2, sharing labels otherwise.
    fn two_k_set() -> ModeSet {
        ModeSet::new(vec![
            ModeId::new(FieldKind::Signal, sp(0, 0), 0, 1),
            ModeId::new(FieldKind::Signal, sp(0, 0), 0, 2),
            ModeId::new(FieldKind::Idler, sp(0, 0), 1, -2),
            ModeId::new(FieldKind::Idler, sp(0, 0), 1, -1),
        ])
        .unwrap()
    }

    #[test]
    fn phase_modulation_adds_ladder() {
        let pumps = PumpSpec::new(vec![PumpComponent::new(sp(0, 0), 1, 1.0, vec![]).unwrap()]);
        let g: GMatrix<f64> = build_g_downconversion(&pumps, &two_k_set()).unwrap();
        assert_eq!(g.edges().len(), 2);
        let pm = PmSpec::new(0.5).unwrap();
        let h = add_phase_modulation(&g, &pm).unwrap();
        let added: Vec<_> = h
            .edges()
            .into_iter()
            .filter(|e| !g.edges().contains(e))
            .collect();
        assert_eq!(added, vec![(0, 1, 0.5), (2, 3, 0.5)]);
        assert!(!h.is_kind_bipartite());
        for (i, j, w) in g.edges() {
            assert_eq!(h.get(i, j), w);
        }
    }

    #[test]
    fn phase_modulation_needs_two_sidebands() {
        let pumps = PumpSpec::new(vec![PumpComponent::new(sp(0, 0), 1, 1.0, vec![]).unwrap()]);
        let set = ModeSet::new(vec![
            ModeId::new(FieldKind::Signal, sp(0, 0), 0, 0),
            ModeId::new(FieldKind::Idler, sp(0, 0), 1, 0),
        ])
        .unwrap();
        let g: GMatrix<f64> = build_g_downconversion(&pumps, &set).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(
            add_phase_modulation(&g, &PmSpec::new(1.0).unwrap()).unwrap_err(),
            Error::NoPmTargets
        );
    }

    #[test]
    fn phase_modulation_is_additive_over_links() {
        let mut modes = Vec::new();
        for k in 1..=3 {
            modes.push(ModeId::new(FieldKind::Signal, sp(0, 0), 0, k));
            modes.push(ModeId::new(FieldKind::Idler, sp(0, 0), 1, -k));
        }
        let set = ModeSet::new(modes).unwrap();
        let pumps = PumpSpec::new(vec![PumpComponent::new(sp(0, 0), 1, 1.0, vec![]).unwrap()]);
        let g: GMatrix<f64> = build_g_downconversion(&pumps, &set).unwrap();
        let w = 0.75;
        let low = PmSpec::new(w).unwrap().with_links([1, -2]);
        let high = PmSpec::new(w).unwrap().with_links([2, -3]);
        let staged = add_phase_modulation(&add_phase_modulation(&g, &low).unwrap(), &high).unwrap();
        let single = add_phase_modulation(&g, &PmSpec::new(w).unwrap()).unwrap();
        assert_eq!(staged, single);
    }

    #[test]
    fn edge_file_round_trip_small() {
        let pumps = PumpSpec::new(vec![PumpComponent::new(sp(0, 0), 1, 1.0, vec![]).unwrap()]);
        let g: GMatrix<f64> = build_g_downconversion(&pumps, &pair_set()).unwrap();
        let text = g.to_edge_file();
        assert_eq!(text, "2\n0 1 1\n");
        let back = GMatrix::<f64>::from_edge_file(&text).unwrap();
        assert_eq!(back.entries(), g.entries());
    }

    #[test]
    fn edge_file_errors() {
        let diag = GMatrix::<f64>::from_edge_file("2\n0 0 1\n").unwrap_err();
        assert!(matches!(diag, Error::Parse { line: 2, .. }));
        let range = GMatrix::<f64>::from_edge_file("2\n0 2 1\n").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 2, .. }));
        let malformed = GMatrix::<f64>::from_edge_file("3\n0 1 1\n1 2\n").unwrap_err();
        assert!(matches!(malformed, Error::Parse { line: 3, .. }));
        let conflict = GMatrix::<f64>::from_edge_file("3\n0 1 1\n1 0 2\n").unwrap_err();
        assert!(matches!(conflict, Error::Parse { line: 3, .. }));
        assert!(GMatrix::<f64>::from_edge_file("3\n0 1 1\n1 0 1\n").is_ok());
        assert!(GMatrix::<f64>::from_edge_file("x\n").is_err());
    }

    #[test]
    fn components_and_restriction() {
        let g = GMatrix::<f64>::from_edge_file("5\n0 3 1\n1 2 1\n2 4 1\n").unwrap();
        assert_eq!(g.components(), vec![vec![0, 3], vec![1, 2, 4]]);
        let c = g.component_of(4);
        assert_eq!(c.n(), 3);
        assert_eq!(c.edges(), vec![(0, 1, 1.0), (1, 2, 1.0)]);
    }

    proptest! {
        #[test]
        fn edge_file_round_trip(weights in proptest::collection::vec(-1e3f64..1e3, 45)) {
            let n = 10;
            let mut m = DMatrix::zeros(n, n);
            let mut it = weights.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let w = it.next().unwrap();
                    m[(i, j)] = w;
                    m[(j, i)] = w;
                }
            }
            let g = GMatrix::from_dense(m, None).unwrap();
            let back = GMatrix::<f64>::from_edge_file(&g.to_edge_file()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn build_invariant_under_pump_order(rot in 0usize..4) {
            let s: Vec<_> = (0..=2).map(|m| sp(m, 2 - m as u32)).collect();
            let set = crate::modes::enumerate_modes(&s, -1..=1, &[1, -1], &[FieldKind::Signal, FieldKind::Idler]).unwrap();
            let mut comps = vec![
                PumpComponent::new(sp(0, 4), 1, 1.0, vec![(s[0], s[0])]).unwrap(),
                PumpComponent::new(sp(2, 2), -1, 0.5, vec![(s[1], s[1])]).unwrap(),
                PumpComponent::new(sp(1, 3), 0, 2.0, vec![(s[0], s[1]), (s[1], s[0])]).unwrap(),
                PumpComponent::new(sp(3, 1), 1, 1.5, vec![(s[1], s[2])]).unwrap(),
            ];
            let a: GMatrix<f64> = build_g_downconversion(&PumpSpec::new(comps.clone()), &set).unwrap();
            comps.rotate_left(rot);
            comps.swap(0, 1);
            let b: GMatrix<f64> = build_g_downconversion(&PumpSpec::new(comps), &set).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
