//! Coordinates on `Λ ∪ Λ₀` and lattice points of `Γ = ℕ^Λ × ℤ^{Λ₀}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coordinate `(k, i)`. `string == 0` addresses the torus part `Λ₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub string: usize,
    pub index: usize,
}

impl Coord {
    pub const fn new(string: usize, index: usize) -> Self {
        Self { string, index }
    }

    pub const fn torus(index: usize) -> Self {
        Self { string: 0, index }
    }

    pub fn is_torus(&self) -> bool {
        self.string == 0
    }
}

// Canonical order: N-part first with strings descending and indices ascending,
// then the torus part by index.
impl Ord for Coord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |c: &Coord| (c.string == 0, std::cmp::Reverse(c.string), c.index);
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.string, self.index)
    }
}

/// The ordered coordinate set `Λ ∪ Λ₀` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordSystem {
    coords: Vec<Coord>,
    lookup: BTreeMap<Coord, usize>,
    n_dim: usize,
}

impl CoordSystem {
    /// `strings` lists `Λ_t, …, Λ_1` as sorted generator indices.
    pub(crate) fn new(ell: usize, strings: &[Vec<usize>]) -> Self {
        let t = strings.len();
        let mut coords = Vec::new();
        for (pos, string) in strings.iter().enumerate() {
            let k = t - pos;
            coords.extend(string.iter().map(|&i| Coord::new(k, i)));
        }
        let n_dim = coords.len();
        coords.extend((1..=ell).map(Coord::torus));
        let lookup = coords.iter().enumerate().map(|(idx, c)| (*c, idx)).collect();
        Self { coords, lookup, n_dim }
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Number of `ℕ` coordinates; they occupy positions `0..n_dim()`.
    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn is_n_slot(&self, slot: usize) -> bool {
        slot < self.n_dim
    }

    pub fn slot(&self, coord: Coord) -> Option<usize> {
        self.lookup.get(&coord).copied()
    }

    pub fn require_slot(&self, coord: Coord) -> Result<usize> {
        self.slot(coord).ok_or(Error::UnknownCoord(coord))
    }

    pub fn coord(&self, slot: usize) -> Coord {
        self.coords[slot]
    }

    pub fn zero(&self) -> LatticePoint {
        LatticePoint(vec![0; self.dim()])
    }

    /// Builds a point from `(coord, value)` pairs; unspecified coordinates are zero.
    pub fn point(&self, entries: &[(Coord, i64)]) -> Result<LatticePoint> {
        let mut p = self.zero();
        for &(c, v) in entries {
            p.0[self.require_slot(c)?] = v;
        }
        self.check(&p)?;
        Ok(p)
    }

    /// Checks dimension and the `ℕ` constraint.
    pub fn check(&self, p: &LatticePoint) -> Result<()> {
        if p.0.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.0.len() });
        }
        if let Some(slot) = (0..self.n_dim).find(|&s| p.0[s] < 0) {
            return Err(Error::NegativeNCoordinate { coord: self.coords[slot] });
        }
        Ok(())
    }

    /// Parses `"(4,2)=1, (0,1)=-1"`.
    pub fn parse_point(&self, text: &str) -> Result<LatticePoint> {
        let mut entries = Vec::new();
        let bad = |m: &str| Error::Syntax { pos: 0, msg: format!("point: {m}") };
        let mut rest = text.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches([',', ' ', ';']);
            if rest.is_empty() {
                break;
            }
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("expected ')'"))?;
            let (k, i) = open[..close].split_once(',').ok_or_else(|| bad("expected (k,i)"))?;
            let k: usize = k.trim().parse().map_err(|_| bad("bad string index"))?;
            let i: usize = i.trim().parse().map_err(|_| bad("bad generator index"))?;
            let after = open[close + 1..].trim_start();
            let after = after.strip_prefix('=').ok_or_else(|| bad("expected '='"))?.trim_start();
            let end = after.find([',', ';']).unwrap_or(after.len());
            let v: i64 = after[..end].trim().parse().map_err(|_| bad("bad value"))?;
            entries.push((Coord::new(k, i), v));
            rest = &after[end..];
        }
        self.point(&entries)
    }

    /// Sparse `(coord, value)` listing of the non-zero entries, canonical order.
    pub fn sparse(&self, v: &[i64]) -> Vec<(Coord, i64)> {
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(s, &x)| (self.coords[s], x)).collect()
    }

    pub fn format_point(&self, p: &LatticePoint) -> String {
        let parts: Vec<String> = self.sparse(&p.0).iter().map(|(c, v)| format!("{c}={v}")).collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(",")
        }
    }
}

/// An element `γ` of `Γ`, stored densely in canonical coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn get(&self, slot: usize) -> i64 {
        self.0[slot]
    }

    pub fn at(&self, sys: &CoordSystem, coord: Coord) -> i64 {
        sys.slot(coord).map_or(0, |s| self.0[s])
    }

    /// `self + times · delta`, without validity checks.
    pub fn shifted(&self, delta: &[i64], times: i64) -> LatticePoint {
        LatticePoint(self.0.iter().zip(delta).map(|(a, d)| a + times * d).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn is_valid(&self, sys: &CoordSystem) -> bool {
        self.0[..sys.n_dim()].iter().all(|&x| x >= 0)
    }
}
