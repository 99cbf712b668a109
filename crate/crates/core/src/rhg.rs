//! Primal error sector of the RHG lattice, written as a periodic simple-cubic
//! lattice of side `d`: one qubit per edge, one parity check per vertex.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X = 0,
    Y = 1,
    Z = 2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhgInstance {
    d: usize,
    membrane: Vec<usize>,
    adjacency: Vec<[(usize, usize); 6]>,
}

impl RhgInstance {
    /// Lattice of odd side `d ≥ 3`. Vertex `(x, y, z)` has index
    /// `(x·d + y)·d + z`; the edge leaving it in direction `dir` has index
    /// `3·vertex + dir`.
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::InvalidDistance(d));
        }
        let mut membrane = Vec::with_capacity(d * d);
        for y in 0..d {
            for z in 0..d {
                membrane.push(3 * ((d - 1) * d * d + y * d + z) + Direction::X as usize);
            }
        }
        let mut lat = RhgInstance {
            d,
            membrane,
            adjacency: Vec::new(),
        };
        lat.adjacency = (0..lat.num_checks()).map(|v| lat.compute_neighbors(v)).collect();
        Ok(lat)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_qubits(&self) -> usize {
        3 * self.d * self.d * self.d
    }

    pub fn num_checks(&self) -> usize {
        self.d * self.d * self.d
    }

    pub fn vertex(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.d + y) * self.d + z
    }

    pub fn coords(&self, v: usize) -> (usize, usize, usize) {
        let d = self.d;
        (v / (d * d), (v / d) % d, v % d)
    }

    pub fn edge(&self, v: usize, dir: Direction) -> usize {
        3 * v + dir as usize
    }

    /// Both checks touched by qubit `q`: its base vertex and the next vertex
    /// along its direction, wrapping around.
    pub fn endpoints(&self, q: usize) -> (usize, usize) {
        let v = q / 3;
        let (x, y, z) = self.coords(v);
        let d = self.d;
        let w = match q % 3 {
            0 => self.vertex((x + 1) % d, y, z),
            1 => self.vertex(x, (y + 1) % d, z),
            _ => self.vertex(x, y, (z + 1) % d),
        };
        (v, w)
    }

    /// The six incident qubits of check `v` with the neighbor across each.
    pub fn neighbors(&self, v: usize) -> [(usize, usize); 6] {
        self.adjacency[v]
    }

    fn compute_neighbors(&self, v: usize) -> [(usize, usize); 6] {
        let (x, y, z) = self.coords(v);
        let d = self.d;
        let xm = self.vertex((x + d - 1) % d, y, z);
        let ym = self.vertex(x, (y + d - 1) % d, z);
        let zm = self.vertex(x, y, (z + d - 1) % d);
        [
            (3 * v, self.endpoints(3 * v).1),
            (3 * v + 1, self.endpoints(3 * v + 1).1),
            (3 * v + 2, self.endpoints(3 * v + 2).1),
            (3 * xm, xm),
            (3 * ym + 1, ym),
            (3 * zm + 2, zm),
        ]
    }

    /// X-edges from the `x = d−1` plane to `x = 0`.
    pub fn logical_membrane(&self) -> &[usize] {
        &self.membrane
    }

    fn check_len(&self, flips: &[bool]) -> Result<()> {
        if flips.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                got: flips.len(),
            });
        }
        Ok(())
    }

    /// Checks with an odd number of flipped incident qubits, ascending.
    pub fn syndrome_from_flips(&self, flips: &[bool]) -> Result<Vec<usize>> {
        self.check_len(flips)?;
        let mut parity = vec![false; self.num_checks()];
        for (q, _) in flips.iter().enumerate().filter(|(_, &f)| f) {
            let (a, b) = self.endpoints(q);
            parity[a] ^= true;
            parity[b] ^= true;
        }
        Ok(parity
            .iter()
            .enumerate()
            .filter_map(|(v, &p)| p.then_some(v))
            .collect())
    }

    /// Parity of the flips on the logical membrane.
    pub fn logical_parity(&self, flips: &[bool]) -> Result<bool> {
        self.check_len(flips)?;
        Ok(self.membrane.iter().fold(false, |acc, &q| acc ^ flips[q]))
    }
}
