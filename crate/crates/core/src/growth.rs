//! Growth graphs on a window: the commutator bound for moves, the
//! `d`-independent guaranteed edges, partitions, and vertex-disjoint path
//! (ladder) counting.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::expr::DiracCandidate;
use crate::flow::FlowNetwork;
use crate::lattice::{CoordSystem, LatticePoint};
use crate::moves::{enumerate_all_moves, Move};
use crate::repr::{w_monomial_of, StateVector, TruncationSpec};

/// The two sides of `sup_γ |d(γ+m_p) − d(γ)| q^{c(γ,p)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bdd3 {
    /// Combinatorial form.
    pub combinatorial: f64,
    /// `sup_γ ‖[D, W_p] e_γ‖ / q^{u(p)}`.
    pub operator: f64,
}

impl Bdd3 {
    pub fn discrepancy(&self) -> f64 {
        (self.combinatorial - self.operator).abs()
    }
}

pub fn bdd3_sup(d: &DiracCandidate, diagram: &Diagram, p: &Move, window: &TruncationSpec) -> Bdd3 {
    let sys = diagram.decomposition().coords();
    let q = window.q;
    let w = w_monomial_of(diagram, p, q);
    let qu = q.powi(p.up_count() as i32);
    let (combinatorial, operator) = window
        .points(sys)
        .par_iter()
        .map(|g| {
            let to = g.shifted(p.vector(), 1);
            let comb =
                if to.is_valid(sys) { (d.eval(&to) - d.eval(g)).abs() * q.powi(p.c_weight(g) as i32) } else { 0.0 };
            let e = StateVector::basis(g.clone());
            let mut comm = diagonal(d, &w_apply(&w, &e));
            comm.axpy(Complex64::new(-1.0, 0.0), &w_apply(&w, &diagonal(d, &e)));
            (comb, comm.norm() / qu)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    Bdd3 { combinatorial, operator }
}

fn w_apply(w: &crate::repr::MonomialOperator, v: &StateVector) -> StateVector {
    let mut out = StateVector::zero();
    for (g, &x) in &v.0 {
        if let Some((g2, c)) = w.apply_basis(g) {
            out.add(g2, c * x);
        }
    }
    out
}

fn diagonal(d: &DiracCandidate, v: &StateVector) -> StateVector {
    StateVector(v.0.iter().map(|(g, &x)| (g.clone(), x * d.eval(g))).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub from: usize,
    pub to: usize,
    pub id: String,
    pub sup: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub c: f64,
    pub moves_checked: usize,
    pub worst: f64,
    pub violators: Vec<Violation>,
}

impl CertificateReport {
    pub fn pass(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Checks the combinatorial commutator bound `≤ c` for every move.
pub fn commutator_certificate(
    d: &DiracCandidate,
    diagram: &Diagram,
    window: &TruncationSpec,
    c: f64,
) -> CertificateReport {
    let moves = enumerate_all_moves(diagram);
    let sups: Vec<f64> = moves.iter().map(|p| bdd3_sup(d, diagram, p, window).combinatorial).collect();
    let violators = moves
        .iter()
        .zip(&sups)
        .filter(|(_, &s)| s > c)
        .map(|(p, &sup)| Violation { from: p.start(), to: p.end(), id: p.id(), sup })
        .collect();
    CertificateReport { c, moves_checked: moves.len(), worst: sups.iter().copied().fold(0.0, f64::max), violators }
}

/// An edge `γ → γ ± m_p` with `c(γ, p) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuaranteedEdge {
    pub id: String,
    /// `+1` for `γ + m_p`, `−1` for the inverse.
    pub sign: i64,
    pub to: LatticePoint,
}

/// All moves and inverses applicable at `γ` with vanishing `c`-weight and
/// landing in the window. Diagonal coordinates are never shifted by `m_p`,
/// so the `c`-weight is the same at both ends of every edge.
pub fn guaranteed_edges(diagram: &Diagram, gamma: &LatticePoint, window: &TruncationSpec) -> Vec<GuaranteedEdge> {
    edges_with(&enumerate_all_moves(diagram), diagram.decomposition().coords(), gamma, window)
}

fn edges_with(moves: &[Move], sys: &CoordSystem, gamma: &LatticePoint, window: &TruncationSpec) -> Vec<GuaranteedEdge> {
    let mut out = Vec::new();
    for p in moves {
        if p.c_weight(gamma) != 0 || p.vector().iter().all(|&x| x == 0) {
            continue;
        }
        for sign in [1, -1] {
            let to = gamma.shifted(p.vector(), sign);
            if to.is_valid(sys) && window.contains(sys, &to) {
                out.push(GuaranteedEdge { id: p.id(), sign, to });
            }
        }
    }
    out
}

/// `γ ↦ {+, −}`; `true` is the `+` class.
#[derive(Clone)]
pub struct Partition {
    name: String,
    classify: Arc<dyn Fn(&LatticePoint) -> bool + Send + Sync>,
}

impl Partition {
    pub fn new(name: impl Into<String>, f: impl Fn(&LatticePoint) -> bool + Send + Sync + 'static) -> Self {
        Self { name: name.into(), classify: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_plus(&self, p: &LatticePoint) -> bool {
        (self.classify)(p)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Partition").field("name", &self.name).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderStep {
    pub point: LatticePoint,
    /// Signed move id used to reach `point`; `None` for the first step.
    pub via: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder {
    pub paths: Vec<Vec<LadderStep>>,
}

impl Ladder {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.paths.iter().flatten().all(|s| seen.insert(&s.point))
    }

    /// Every consecutive pair of points differs by `±m_p` for some move
    /// with vanishing `c`-weight at the earlier point.
    pub fn uses_guaranteed_edges(&self, diagram: &Diagram) -> bool {
        let moves = enumerate_all_moves(diagram);
        let sys = diagram.decomposition().coords();
        self.paths.iter().all(|path| {
            path.windows(2).all(|w| {
                let d = w[1].point.sub(&w[0].point);
                w[1].point.is_valid(sys)
                    && moves.iter().any(|p| {
                        p.c_weight(&w[0].point) == 0
                            && (p.vector() == d.as_slice() || p.vector().iter().zip(&d).all(|(a, b)| *a == -b))
                    })
            })
        })
    }
}

/// The guaranteed subgraph restricted to a window.
#[derive(Clone, Debug)]
pub struct GrowthGraph {
    vertices: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
    adj: Vec<Vec<(usize, String)>>,
}

impl GrowthGraph {
    pub fn build(diagram: &Diagram, window: &TruncationSpec) -> Self {
        let sys = diagram.decomposition().coords();
        let moves = enumerate_all_moves(diagram);
        let vertices = window.points(sys);
        let index: HashMap<LatticePoint, usize> = vertices.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let adj = vertices
            .par_iter()
            .map(|g| {
                let mut nbrs: Vec<(usize, String)> = Vec::new();
                for e in edges_with(&moves, sys, g, window) {
                    let v = index[&e.to];
                    if !nbrs.iter().any(|(w, _)| *w == v) {
                        let sign = if e.sign > 0 { '+' } else { '-' };
                        nbrs.push((v, format!("{sign}{}", e.id)));
                    }
                }
                nbrs
            })
            .collect();
        Self { vertices, index, adj }
    }

    /// A graph from explicit vertices and undirected edges (tests, oracles).
    pub fn from_edges(vertices: Vec<LatticePoint>, edges: &[(usize, usize)]) -> Self {
        let index = vertices.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(u, v) in edges {
            adj[u].push((v, format!("{u}-{v}")));
            adj[v].push((u, format!("{v}-{u}")));
        }
        Self { vertices, index, adj }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn index_of(&self, g: &LatticePoint) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|(w, _)| *w)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Maximum number of vertex-disjoint paths from the `+` class to the
    /// `−` class (Menger, via unit vertex capacities), with a witness ladder.
    pub fn disjoint_paths(&self, part: &Partition) -> (usize, Ladder) {
        let n = self.vertices.len();
        let (s, t) = (2 * n, 2 * n + 1);
        let mut net = FlowNetwork::new(2 * n + 2);
        let plus: Vec<bool> = self.vertices.par_iter().map(|g| part.is_plus(g)).collect();
        for (v, &is_plus) in plus.iter().enumerate() {
            net.add_arc(2 * v, 2 * v + 1, 1);
            if is_plus {
                net.add_arc(s, 2 * v, 1);
            } else {
                net.add_arc(2 * v + 1, t, 1);
            }
            for (w, _) in &self.adj[v] {
                net.add_arc(2 * v + 1, 2 * w, 1);
            }
        }
        let count = net.max_flow(s, t) as usize;

        let mut ladder = Ladder::default();
        let starts: Vec<usize> = net.arcs_from(s).filter(|&(id, _)| net.flow(id) > 0).map(|(_, to)| to / 2).collect();
        for start in starts {
            let mut path = vec![LadderStep { point: self.vertices[start].clone(), via: None }];
            let mut v = start;
            loop {
                let next = net.arcs_from(2 * v + 1).find(|&(id, _)| net.flow(id) > 0).map(|(_, to)| to);
                match next {
                    Some(to) if to == t => break,
                    Some(to) => {
                        let w = to / 2;
                        let via = self.adj[v].iter().find(|(x, _)| *x == w).map(|(_, id)| id.clone());
                        path.push(LadderStep { point: self.vertices[w].clone(), via });
                        v = w;
                    }
                    None => break,
                }
            }
            ladder.paths.push(path);
        }
        (count, ladder)
    }
}

/// `disjoint_path_count` on the guaranteed subgraph of `window`.
pub fn disjoint_path_count(diagram: &Diagram, part: &Partition, window: &TruncationSpec) -> (usize, Ladder) {
    GrowthGraph::build(diagram, window).disjoint_paths(part)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthEntry {
    pub n_max: i64,
    pub z_max: i64,
    pub vertices: usize,
    pub edges: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCurve {
    pub partition: String,
    pub entries: Vec<GrowthEntry>,
}

impl GrowthCurve {
    pub fn counts(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.count).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.counts().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.counts().windows(2).all(|w| w[0] < w[1])
    }

    /// The last two windows agree.
    pub fn is_eventually_constant(&self) -> bool {
        let c = self.counts();
        c.len() >= 2 && c[c.len() - 1] == c[c.len() - 2]
    }
}

/// Growth curve of the disjoint-path count over a list of windows.
pub fn sign_determining_probe(diagram: &Diagram, part: &Partition, windows: &[TruncationSpec]) -> GrowthCurve {
    let entries = windows
        .par_iter()
        .map(|w| {
            let g = GrowthGraph::build(diagram, w);
            let (count, _) = g.disjoint_paths(part);
            GrowthEntry { n_max: w.n_max, z_max: w.z_max, vertices: g.vertices().len(), edges: g.edge_count(), count }
        })
        .collect();
    GrowthCurve { partition: part.name().to_string(), entries }
}
