//! Moves (left-to-right paths of the diagram), their vectors `m_p`, diagonal
//! components, and the `c(γ, p)` weight.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::diagram::{Column, Diagram, EdgeKind};
use crate::error::{Error, Result};
use crate::lattice::{Coord, CoordSystem, LatticePoint};
use crate::weyl::WeylDecomposition;

/// A path through the diagram, stored as the edge taken in every column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    start: usize,
    edges: Vec<EdgeKind>,
    /// `(i_t, j_t), …, (i_1, j_1), (i_0, j_0)`.
    segments: Vec<(usize, usize)>,
    m_p: Vec<i64>,
    diagonal_slots: Vec<usize>,
}

impl Move {
    fn from_path(diagram: &Diagram, start: usize, edges: Vec<EdgeKind>, levels: &[usize]) -> Self {
        let d = diagram.decomposition();
        let mut segments = Vec::with_capacity(d.t() + 1);
        let mut col = 0;
        for k in (1..=d.t()).rev() {
            let len = d.string(k).len();
            segments.push((levels[col], levels[col + len]));
            col += len;
        }
        let end = *levels.last().expect("nonempty level trace");
        segments.push((end, end));
        let m_p = move_vector(d, &segments);
        let sys = d.coords();
        let diagonal_slots = diagonal_components(d, &segments)
            .into_iter()
            .map(|c| sys.slot(c).expect("diagonal component lies in Λ"))
            .collect();
        Self { start, edges, segments, m_p, diagonal_slots }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.segments.last().expect("0th segment").1
    }

    pub fn i0(&self) -> usize {
        self.end()
    }

    pub fn edges(&self) -> &[EdgeKind] {
        &self.edges
    }

    pub fn segments(&self) -> &[(usize, usize)] {
        &self.segments
    }

    /// The `k`-th segment, `0 ≤ k ≤ t`.
    pub fn segment(&self, k: usize) -> (usize, usize) {
        self.segments[self.segments.len() - 1 - k]
    }

    /// `m_p` as a dense vector in canonical coordinate order.
    pub fn vector(&self) -> &[i64] {
        &self.m_p
    }

    pub fn diagonal_slots(&self) -> &[usize] {
        &self.diagonal_slots
    }

    /// Number of `UpDiag` edges, `u(p)`.
    pub fn up_count(&self) -> usize {
        self.edges.iter().filter(|&&e| e == EdgeKind::UpDiag).count()
    }

    pub fn is_horizontal(&self) -> bool {
        self.segments.iter().all(|&(i, j)| i == j && i == self.start)
    }

    /// `c(γ, p)`: sum of `γ` over the diagonal components.
    pub fn c_weight(&self, gamma: &LatticePoint) -> i64 {
        self.diagonal_slots.iter().map(|&s| gamma.get(s)).sum()
    }

    pub fn summary(&self, sys: &CoordSystem) -> MoveSummary {
        MoveSummary {
            from: self.start,
            to: self.end(),
            segments: self.segments.clone(),
            m_p: sys.sparse(&self.m_p).into_iter().map(|(c, v)| (c.to_string(), v)).collect(),
            diagonals: self
                .diagonal_slots
                .iter()
                .map(|&s| {
                    let c = sys.coord(s);
                    (c.string, c.index)
                })
                .collect(),
        }
    }

    /// Compact id: `[(i_t,j_t) … (i_0,j_0)]`.
    pub fn id(&self) -> String {
        let segs: Vec<String> = self.segments.iter().map(|(i, j)| format!("({i},{j})")).collect();
        segs.join("")
    }
}

/// Serialized form of a move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSummary {
    pub from: usize,
    pub to: usize,
    pub segments: Vec<(usize, usize)>,
    pub m_p: IndexMap<String, i64>,
    pub diagonals: Vec<(usize, usize)>,
}

/// `m_p` from the segment tuple:
/// for `r ≥ 1` and `j_r ≥ i_r`, `−1` at `(r, j_r)` and `+1` at `(r, i_r − 1)`
/// (when those lie in `Λ_r`); on `Λ₀`, `+1` at `(0, i_0)` and `−1` at `(0, i_0 − 1)`.
pub fn move_vector(d: &WeylDecomposition, segments: &[(usize, usize)]) -> Vec<i64> {
    let sys = d.coords();
    let t = d.t();
    let mut m = vec![0i64; sys.dim()];
    let mut set = |c: Coord, v: i64| {
        if let Some(s) = sys.slot(c) {
            m[s] = v;
        }
    };
    for (pos, &(i, j)) in segments[..t].iter().enumerate() {
        let r = t - pos;
        if j >= i {
            set(Coord::new(r, j), -1);
            if i >= 2 {
                set(Coord::new(r, i - 1), 1);
            }
        }
    }
    let (i0, _) = segments[t];
    if i0 >= 2 {
        set(Coord::torus(i0 - 1), -1);
    }
    set(Coord::torus(i0), 1);
    m
}

/// Coordinates `(r, s)` with `i_r < j_r, s ∈ [i_r, j_r)` or `j_r = i_r − 1 = s`.
pub fn diagonal_components(d: &WeylDecomposition, segments: &[(usize, usize)]) -> Vec<Coord> {
    let t = d.t();
    let mut out = Vec::new();
    for (pos, &(i, j)) in segments[..t].iter().enumerate() {
        let r = t - pos;
        if i < j {
            out.extend((i..j).map(|s| Coord::new(r, s)));
        } else if j + 1 == i {
            out.push(Coord::new(r, j));
        }
    }
    out
}

/// `c(γ, p)` as a free function.
pub fn c_weight(gamma: &LatticePoint, p: &Move) -> i64 {
    p.c_weight(gamma)
}

/// All moves from left level `i` to right level `j` (the set `P_ij`),
/// ordered lexicographically by edge choice, horizontals first.
pub fn enumerate_moves(diagram: &Diagram, i: usize, j: usize) -> Vec<Move> {
    let mut out = Vec::new();
    walk(diagram, i, &mut |p| {
        if p.end() == j {
            out.push(p)
        }
    });
    out
}

/// `P_ij` for all `(i, j)`, ordered by `i`, then by edge choice.
pub fn enumerate_all_moves(diagram: &Diagram) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 1..=diagram.levels() {
        walk(diagram, i, &mut |p| out.push(p));
    }
    out
}

fn walk(diagram: &Diagram, start: usize, sink: &mut impl FnMut(Move)) {
    fn rec(
        diagram: &Diagram,
        start: usize,
        edges: &mut Vec<EdgeKind>,
        levels: &mut Vec<usize>,
        sink: &mut impl FnMut(Move),
    ) {
        let col = edges.len();
        if col == diagram.columns().len() {
            sink(Move::from_path(diagram, start, edges.clone(), levels));
            return;
        }
        let level = *levels.last().unwrap();
        for (kind, next) in diagram.edges_from(col, level) {
            edges.push(kind);
            levels.push(next);
            rec(diagram, start, edges, levels, sink);
            levels.pop();
            edges.pop();
        }
    }
    rec(diagram, start, &mut Vec::new(), &mut vec![start], sink);
}

/// The all-horizontal move `H_r`, if present in the diagram.
pub fn horizontal_move(diagram: &Diagram, r: usize) -> Option<Move> {
    enumerate_moves(diagram, r, r).into_iter().find(Move::is_horizontal)
}

/// The coordinate singled out by the disagreement argument for two moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovetempWitness {
    pub coord: Coord,
    pub first: i64,
    pub second: i64,
}

impl MovetempWitness {
    /// One value is `0` and the other `±1`.
    pub fn holds(&self) -> bool {
        (self.first == 0 && self.second.abs() == 1) || (self.second == 0 && self.first.abs() == 1)
    }
}

/// `r` = largest string index where `m_p` and `m_p′` disagree on `Λ_r`,
/// `n` = smallest disagreeing index in `Λ_r`.
pub fn movetemp_witness(d: &WeylDecomposition, p: &Move, q: &Move) -> Result<MovetempWitness> {
    if p == q {
        return Err(Error::MovesEqual);
    }
    let sys = d.coords();
    // N-slots are ordered by string descending, then index ascending, so the
    // first disagreeing N-slot is exactly (max r, min n).
    let slot = (0..sys.n_dim())
        .find(|&s| p.vector()[s] != q.vector()[s])
        .ok_or_else(|| Error::Precondition("moves agree on every N-coordinate".into()))?;
    Ok(MovetempWitness { coord: sys.coord(slot), first: p.vector()[slot], second: q.vector()[slot] })
}

/// `γ + times · m_p`, rejecting results with a negative `ℕ` coordinate.
pub fn apply_move(sys: &CoordSystem, gamma: &LatticePoint, p: &Move, times: i64) -> Result<LatticePoint> {
    apply_delta(sys, gamma, p.vector(), times)
}

pub fn apply_delta(sys: &CoordSystem, gamma: &LatticePoint, delta: &[i64], times: i64) -> Result<LatticePoint> {
    let out = gamma.shifted(delta, times);
    if let Some(s) = (0..sys.n_dim()).find(|&s| out.get(s) < 0) {
        return Err(Error::NegativeNCoordinate { coord: sys.coord(s) });
    }
    Ok(out)
}

/// Diagonal slots read off the edge path directly (independent of the
/// segment bookkeeping).
pub fn diagonal_slots_from_edges(diagram: &Diagram, p: &Move) -> Vec<usize> {
    diagram
        .columns()
        .iter()
        .zip(p.edges())
        .filter(|(c, e)| matches!(c, Column::Block { .. }) && e.is_diagonal())
        .map(|(c, _)| c.slot())
        .collect()
}
