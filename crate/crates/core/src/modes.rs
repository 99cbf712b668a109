//! Spatiospectral mode labels and the conservation rules that decide which
//! signal/idler pairs a pump component couples.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    Signal,
    Idler,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Signal => "signal",
            FieldKind::Idler => "idler",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hermite-Gaussian transverse content `(azimuthal, radial)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spatial {
    pub azimuthal: i32,
    pub radial: u32,
}

impl Spatial {
    pub fn new(azimuthal: i32, radial: u32) -> Result<Self> {
        if azimuthal < 0 {
            return Err(Error::InvalidMode(format!(
                "azimuthal index {azimuthal} is negative"
            )));
        }
        Ok(Spatial { azimuthal, radial })
    }

    pub fn order(self) -> i64 {
        self.azimuthal as i64 + self.radial as i64
    }
}

impl fmt::Display for Spatial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.azimuthal, self.radial)
    }
}

/// One cavity mode: field kind, spatial content, comb line `j` (offset `jΔ`)
/// and sideband `k` (offset `kΩ`). Field order gives the canonical
/// lexicographic ordering `(kind, spatial, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeId {
    pub kind: FieldKind,
    pub spatial: Spatial,
    pub comb: i32,
    pub sideband: i32,
}

impl ModeId {
    pub fn new(kind: FieldKind, spatial: Spatial, comb: i32, sideband: i32) -> Self {
        ModeId {
            kind,
            spatial,
            comb,
            sideband,
        }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.kind, self.spatial, self.comb, self.sideband
        )
    }
}

/// One spatial component of a pump field at frequency `2ω₀ + PΔ`.
///
/// `pairs` lists the `(signal, idler)` spatial contents this component
/// down-converts into. When empty, every signal/idler pair whose orders both
/// equal the pump order is coupled.
#[derive(Debug, Clone, PartialEq)]
pub struct PumpComponent {
    pub spatial: Spatial,
    pub freq_offset: i32,
    pub amplitude: f64,
    pub pairs: Vec<(Spatial, Spatial)>,
}

impl PumpComponent {
    pub fn new(
        spatial: Spatial,
        freq_offset: i32,
        amplitude: f64,
        pairs: Vec<(Spatial, Spatial)>,
    ) -> Result<Self> {
        if !(amplitude > 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidPump(format!(
                "amplitude {amplitude} must be positive"
            )));
        }
        let pump_order = spatial.order();
        for &(s, i) in &pairs {
            if s.order() != i.order() {
                return Err(Error::InvalidPump(format!(
                    "pair {s}->{i} has unequal signal/idler orders"
                )));
            }
            // Order conservation: the pump order either matches each
            // down-converted order or equals their sum.
            let o = s.order();
            if pump_order != o && pump_order != 2 * o {
                return Err(Error::InvalidPump(format!(
                    "pair {s}->{i} violates order conservation against pump {spatial}"
                )));
            }
        }
        Ok(PumpComponent {
            spatial,
            freq_offset,
            amplitude,
            pairs,
        })
    }

    /// Whether this component couples a signal with spatial content `s` to an
    /// idler with content `i`.
    pub fn couples(&self, s: Spatial, i: Spatial) -> bool {
        if self.pairs.is_empty() {
            let o = self.spatial.order();
            s.order() == o && i.order() == o
        } else {
            self.pairs.iter().any(|&(ps, pi)| ps == s && pi == i)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PumpSpec {
    pub components: Vec<PumpComponent>,
}

impl PumpSpec {
    pub fn new(components: Vec<PumpComponent>) -> Self {
        PumpSpec { components }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Ordered, duplicate-free list of modes; position is the matrix index.
#[derive(Debug, Clone)]
pub struct ModeSet {
    modes: Vec<ModeId>,
    index: HashMap<ModeId, usize>,
}

impl PartialEq for ModeSet {
    fn eq(&self, other: &Self) -> bool {
        self.modes == other.modes
    }
}

impl ModeSet {
    pub fn new(modes: Vec<ModeId>) -> Result<Self> {
        let mut index = HashMap::with_capacity(modes.len());
        for (i, m) in modes.iter().enumerate() {
            if index.insert(*m, i).is_some() {
                return Err(Error::DuplicateMode(m.to_string()));
            }
        }
        Ok(ModeSet { modes, index })
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&ModeId> {
        self.modes.get(i)
    }

    pub fn index_of(&self, m: &ModeId) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ModeId> {
        self.modes.iter()
    }

    pub fn as_slice(&self) -> &[ModeId] {
        &self.modes
    }

    pub fn distinct_sidebands(&self) -> BTreeSet<i32> {
        self.modes.iter().map(|m| m.sideband).collect()
    }

    pub fn contains_spatial(&self, s: Spatial) -> bool {
        self.modes.iter().any(|m| m.spatial == s)
    }

    /// Sub-set keeping the listed indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> ModeSet {
        ModeSet::new(indices.iter().map(|&i| self.modes[i]).collect())
            .expect("selection of a duplicate-free set")
    }
}

impl std::ops::Index<usize> for ModeSet {
    type Output = ModeId;
    fn index(&self, i: usize) -> &ModeId {
        &self.modes[i]
    }
}

/// Cartesian product of the inputs in lexicographic `(kind, spatial, j, k)`
/// order. Each input is treated as a set.
pub fn enumerate_modes(
    spatial_orders: &[Spatial],
    j_range: RangeInclusive<i32>,
    k_values: &[i32],
    kinds: &[FieldKind],
) -> Result<ModeSet> {
    if spatial_orders.is_empty() {
        return Err(Error::EmptyEnumeration("spatial_orders"));
    }
    if j_range.is_empty() {
        return Err(Error::EmptyEnumeration("j_range"));
    }
    if k_values.is_empty() {
        return Err(Error::EmptyEnumeration("k_values"));
    }
    if kinds.is_empty() {
        return Err(Error::EmptyEnumeration("kinds"));
    }
    let kinds: BTreeSet<_> = kinds.iter().copied().collect();
    let spatial: BTreeSet<_> = spatial_orders.iter().copied().collect();
    let ks: BTreeSet<_> = k_values.iter().copied().collect();

    let mut modes = Vec::with_capacity(kinds.len() * spatial.len() * ks.len());
    for &kind in &kinds {
        for &s in &spatial {
            for j in j_range.clone() {
                for &k in &ks {
                    modes.push(ModeId::new(kind, s, j, k));
                }
            }
        }
    }
    ModeSet::new(modes)
}

/// Signal/idler index pairs coupled by one pump component: comb indices sum
/// to the pump offset, sidebands cancel, and the spatial contents are allowed
/// by the component. Pairs come back as `(min, max)` in ascending order.
pub fn dc_partners(pump: &PumpComponent, modes: &ModeSet) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (a, ma) in modes.iter().enumerate() {
        if ma.kind != FieldKind::Signal {
            continue;
        }
        for (b, mb) in modes.iter().enumerate() {
            if mb.kind != FieldKind::Idler {
                continue;
            }
            if ma.comb + mb.comb == pump.freq_offset
                && ma.sideband + mb.sideband == 0
                && pump.couples(ma.spatial, mb.spatial)
            {
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Rough count of modes available in parallel:
/// `floor(Δ/Ω) · spectral · spatial · 2` (signal and idler).
pub fn capacity_estimate(
    delta_over_omega: f64,
    spectral_modes: i64,
    spatial_modes: i64,
) -> Result<u64> {
    let sidebands = delta_over_omega.floor();
    if !(sidebands >= 1.0) || !sidebands.is_finite() {
        return Err(Error::InvalidCapacityInput(format!(
            "delta_over_omega = {delta_over_omega} yields no sideband"
        )));
    }
    if spectral_modes < 1 || spatial_modes < 1 {
        return Err(Error::InvalidCapacityInput(format!(
            "spectral = {spectral_modes}, spatial = {spatial_modes}"
        )));
    }
    Ok(sidebands as u64 * spectral_modes as u64 * spatial_modes as u64 * 2)
}
