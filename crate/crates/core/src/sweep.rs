//! Free planes, the complementary axis, the `C₀`/`C₁`/`C` functionals, and
//! the path constructions: sweep5, sweep4 with Algorithm A(r,n), the ladder
//! joins and the two escapes.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, Diagram, EdgeLabel};
use crate::error::{Error, Result};
use crate::growth::{Ladder, LadderStep, Partition};
use crate::lattice::{Coord, CoordSystem, LatticePoint};
use crate::moves::{enumerate_all_moves, horizontal_move, Move};
use crate::repr::TruncationSpec;
use crate::weyl::{axis_constants, AxisConstants, WeylDecomposition};

/// `𝓕_γ = γ + 𝓕`, where `𝓕` is the lattice spanned by the `m_{H_r}`:
/// `δ ∈ 𝓕 ⇔ δ(j,i) = −δ(0,i)` for all `j ∈ J_i`. A coset is parametrised by
/// `u_i = δ(0,i)`, `i = 1..ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreePlaneCoset {
    #[serde(skip)]
    decomposition: Option<WeylDecomposition>,
    pub base: LatticePoint,
}

impl FreePlaneCoset {
    pub fn new(d: &WeylDecomposition, base: LatticePoint) -> Result<Self> {
        d.coords().check(&base)?;
        Ok(Self { decomposition: Some(d.clone()), base })
    }

    fn d(&self) -> &WeylDecomposition {
        self.decomposition.as_ref().expect("coset carries its decomposition")
    }

    /// Whether `δ` lies in the subgroup `𝓕`.
    pub fn in_subgroup(d: &WeylDecomposition, delta: &[i64]) -> bool {
        let sys = d.coords();
        (1..=d.ell()).all(|i| {
            let z = delta[sys.slot(Coord::torus(i)).expect("torus slot")];
            d.j_set(i).iter().all(|&j| delta[sys.slot(Coord::new(j, i)).expect("slot")] == -z)
        })
    }

    pub fn contains(&self, g: &LatticePoint) -> bool {
        let sys = self.d().coords();
        sys.check(g).is_ok() && Self::in_subgroup(self.d(), &g.sub(&self.base))
    }

    /// `𝓕_γ = 𝓕_γ′` (cosets are equal or disjoint).
    pub fn same_as(&self, other: &FreePlaneCoset) -> bool {
        self.contains(&other.base)
    }

    /// `γ(k,i) + γ(0,i)` for `k ∈ J_i`: constant on the coset.
    pub fn invariant(&self, k: usize, i: usize) -> i64 {
        let sys = self.d().coords();
        self.base.at(sys, Coord::new(k, i)) + self.base.at(sys, Coord::torus(i))
    }

    /// `base + δ(u)`; may violate the `ℕ` constraint.
    pub fn point(&self, u: &[i64]) -> LatticePoint {
        let d = self.d();
        let sys = d.coords();
        let mut delta = vec![0; sys.dim()];
        for i in 1..=d.ell() {
            delta[sys.slot(Coord::torus(i)).unwrap()] = u[i - 1];
            for j in d.j_set(i) {
                delta[sys.slot(Coord::new(j, i)).unwrap()] = -u[i - 1];
            }
        }
        self.base.shifted(&delta, 1)
    }

    /// Members of the coset inside `window`.
    pub fn members(&self, window: &TruncationSpec) -> Vec<LatticePoint> {
        let sys = self.d().coords();
        window.points(sys).into_iter().filter(|g| self.contains(g)).collect()
    }

    pub fn partition(&self) -> Partition {
        let c = self.clone();
        Partition::new("free-plane-coset", move |g| c.contains(g))
    }
}

/// `𝒞 = {γ : ∏_{j∈J_i} γ(j,i) = 0 for all i}`.
pub fn in_complementary_axis(d: &WeylDecomposition, g: &LatticePoint) -> bool {
    let sys = d.coords();
    (1..=d.ell()).all(|i| {
        let j = d.j_set(i);
        j.is_empty() || j.iter().any(|&k| g.at(sys, Coord::new(k, i)) == 0)
    })
}

/// `j_i`: the smallest `j ∈ J_i` minimising `γ(j,i)`.
pub fn minimizer_j(d: &WeylDecomposition, g: &LatticePoint, i: usize) -> Result<usize> {
    let sys = d.coords();
    d.j_set(i).into_iter().min_by_key(|&j| (g.at(sys, Coord::new(j, i)), j)).ok_or(Error::EmptyJ(i))
}

fn j_index(d: &WeylDecomposition, g: &LatticePoint, i: usize) -> usize {
    minimizer_j(d, g, i).unwrap_or(0)
}

/// `C₀`, `C₁` and `C`.
#[derive(Clone, Debug)]
pub struct AxisFunctionals {
    pub constants: AxisConstants,
    c0: (usize, usize),
    c1: usize,
}

impl AxisFunctionals {
    pub fn new(d: &WeylDecomposition) -> Result<Self> {
        let k = axis_constants(d)?;
        let sys = d.coords();
        Ok(Self {
            c0: (sys.require_slot(Coord::new(k.j_min, k.i_min))?, sys.require_slot(Coord::torus(k.i_0))?),
            c1: sys.require_slot(Coord::new(k.j_max, k.i_min))?,
            constants: k,
        })
    }

    /// `γ(j_min, i_min) + γ(0, i_0)`.
    pub fn c0(&self, g: &LatticePoint) -> i64 {
        g.get(self.c0.0) + g.get(self.c0.1)
    }

    /// `γ(j_max, i_min)`.
    pub fn c1(&self, g: &LatticePoint) -> i64 {
        g.get(self.c1)
    }
}

/// `C(γ) = γ(j_ℓ, ℓ)` (`j_ℓ = 0` when `J_ℓ` is empty).
pub fn c_value(d: &WeylDecomposition, g: &LatticePoint) -> i64 {
    g.at(d.coords(), Coord::new(j_index(d, g, d.ell()), d.ell()))
}

/// Partition `+ ⇔ C₀(γ) > 0`.
pub fn c0_sign_partition(d: &WeylDecomposition) -> Result<Partition> {
    let f = AxisFunctionals::new(d)?;
    Ok(Partition::new("sign-of-C0", move |g| f.c0(g) > 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepStep {
    pub label: String,
    pub id: String,
    pub delta: Vec<i64>,
    pub times: i64,
}

/// A sequence of `(move, times)` applications with the unit-step trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPath {
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub steps: Vec<SweepStep>,
    pub trace: Vec<LatticePoint>,
}

impl SweepPath {
    pub fn new(start: LatticePoint) -> Self {
        Self { end: start.clone(), trace: vec![start.clone()], start, steps: Vec::new() }
    }

    /// Applies `p` `times` times, one unit at a time, checking the `ℕ` constraint.
    pub fn apply(&mut self, sys: &CoordSystem, label: &str, p: &Move, times: i64) -> Result<()> {
        self.apply_delta(sys, label, &p.id(), p.vector(), times)
    }

    fn apply_delta(&mut self, sys: &CoordSystem, label: &str, id: &str, delta: &[i64], times: i64) -> Result<()> {
        if times == 0 {
            return Ok(());
        }
        let sign = times.signum();
        for _ in 0..times.abs() {
            let next = self.end.shifted(delta, sign);
            sys.check(&next)?;
            self.trace.push(next.clone());
            self.end = next;
        }
        self.steps.push(SweepStep { label: label.to_string(), id: id.to_string(), delta: delta.to_vec(), times });
        Ok(())
    }

    pub fn unit_steps(&self) -> usize {
        self.trace.len() - 1
    }

    /// `end = start + Σ times · m_p`, and every trace point is valid.
    pub fn is_consistent(&self, sys: &CoordSystem) -> bool {
        let mut g = self.start.clone();
        for s in &self.steps {
            g = g.shifted(&s.delta, s.times);
        }
        g == self.end && self.trace.iter().all(|p| p.is_valid(sys)) && self.trace.last() == Some(&self.end)
    }

    pub fn check_window(&self, sys: &CoordSystem, window: &TruncationSpec) -> Result<()> {
        match self.trace.iter().find(|p| !window.contains(sys, p)) {
            None => Ok(()),
            Some(p) => Err(Error::WindowTooSmall(format!("trace leaves the window at {}", sys.format_point(p)))),
        }
    }

    pub fn reversed(&self) -> SweepPath {
        SweepPath {
            start: self.end.clone(),
            end: self.start.clone(),
            steps: self.steps.iter().rev().map(|s| SweepStep { times: -s.times, ..s.clone() }).collect(),
            trace: self.trace.iter().rev().cloned().collect(),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: &SweepPath) {
        assert_eq!(self.end, other.start, "paths do not meet");
        self.steps.extend(other.steps.iter().cloned());
        self.trace.extend(other.trace.iter().skip(1).cloned());
        self.end = other.end.clone();
    }

    /// The path as ladder steps (one per unit application).
    pub fn ladder_steps(&self) -> Vec<LadderStep> {
        let mut out = vec![LadderStep { point: self.start.clone(), via: None }];
        let mut idx = 1;
        for s in &self.steps {
            let sign = if s.times > 0 { '+' } else { '-' };
            for _ in 0..s.times.abs() {
                out.push(LadderStep { point: self.trace[idx].clone(), via: Some(format!("{sign}{}", s.id)) });
                idx += 1;
            }
        }
        out
    }

    pub fn table(&self, sys: &CoordSystem) -> SweepTable {
        let mut rows = Vec::new();
        let mut g = self.start.clone();
        for (k, s) in self.steps.iter().enumerate() {
            g = g.shifted(&s.delta, s.times);
            rows.push(TableRow {
                name: s.label.clone(),
                times: s.times,
                delta: s.delta.clone(),
                point: g.0.clone(),
                result: if k + 1 == self.steps.len() { "γ'".to_string() } else { format!("γ{}", k + 1) },
            });
        }
        SweepTable {
            columns: sys.coords().iter().map(|c| c.to_string()).collect(),
            n_columns: sys.n_dim(),
            start: self.start.0.clone(),
            rows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub times: i64,
    pub delta: Vec<i64>,
    pub point: Vec<i64>,
    pub result: String,
}

/// A sweep table: a `move` row and a resulting-point row per step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub n_columns: usize,
    pub start: Vec<i64>,
    pub rows: Vec<TableRow>,
}

impl SweepTable {
    pub fn render(&self) -> String {
        let mut lines: Vec<(String, Vec<String>)> = vec![
            ("coordinate".into(), self.columns.clone()),
            ("γ".into(), self.start.iter().map(|v| v.to_string()).collect()),
        ];
        let prev = |k: usize| if k == 0 { "γ".to_string() } else { format!("γ{k}") };
        for (k, r) in self.rows.iter().enumerate() {
            lines.push((
                format!("move {}", r.name),
                r.delta.iter().map(|&v| if v > 0 { format!("+{v}") } else { v.to_string() }).collect(),
            ));
            lines.push((
                format!("{} = {}·{}({})", r.result, r.times, r.name, prev(k)),
                r.point.iter().map(|v| v.to_string()).collect(),
            ));
        }
        let label_w = lines.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
        let col_w = lines.iter().flat_map(|(_, c)| c.iter().map(|x| x.chars().count())).max().unwrap_or(1);
        let mut out = String::new();
        for (label, cells) in &lines {
            let _ = write!(out, "{label}{} |", " ".repeat(label_w - label.chars().count()));
            for (k, c) in cells.iter().enumerate() {
                if k == self.n_columns {
                    out.push_str(" |");
                }
                let _ = write!(out, " {c:>col_w$}");
            }
            out.push('\n');
        }
        out
    }
}

fn singleton_labels(d: &WeylDecomposition) -> BTreeSet<EdgeLabel> {
    EdgeLabel::all_for_generators(d, &d.singleton_generators())
}

/// Diagram with the singleton labels and everything above `(r, n)` removed.
pub fn reduced_diagram(d: &WeylDecomposition, r: usize, n: usize) -> Result<Diagram> {
    let mut removed = singleton_labels(d);
    removed.extend(EdgeLabel::above(d, r, n));
    build_diagram(d, &removed)
}

/// Diagram with every labelled horizontal removed.
pub fn fully_reduced_diagram(d: &WeylDecomposition) -> Result<Diagram> {
    build_diagram(d, &EdgeLabel::all(d))
}

fn unique_move(candidates: Vec<Move>, not_found: Error, what: &str) -> Result<Move> {
    match candidates.len() {
        0 => Err(not_found),
        1 => Ok(candidates.into_iter().next().unwrap()),
        k => Err(Error::AmbiguousMove(format!("{k} moves {what}"))),
    }
}

/// The move whose `r`-th segment is `(n+1, max Λ_r + 1)` in the diagram
/// reduced at `(r, n)`.
pub fn algorithm_a_move(d: &WeylDecomposition, r: usize, n: usize) -> Result<Move> {
    if r == 0 || r > d.t() || !d.contains(r, n) {
        return Err(Error::Precondition(format!("({r},{n}) is not in Λ")));
    }
    let seg = (n + 1, d.string_max(r) + 1);
    let g = reduced_diagram(d, r, n)?;
    let found = enumerate_all_moves(&g).into_iter().filter(|p| p.segment(r) == seg).collect();
    unique_move(
        found,
        Error::MoveNotFound { string: r, from: seg.0, to: seg.1 },
        &format!("with segment {seg:?} in string {r}"),
    )
}

/// Applies the negative of the Algorithm A(r,n) move `δ(r,n)` times. The
/// reduced diagram guarantees that coordinates `(j, i)` with `j > r`, or
/// `j = r, i > n`, are untouched.
pub fn algorithm_a(
    d: &WeylDecomposition,
    delta: &LatticePoint,
    r: usize,
    n: usize,
) -> Result<(Option<(Move, i64)>, LatticePoint)> {
    let sys = d.coords();
    let v = delta.at(sys, Coord::new(r, n));
    if !d.contains(r, n) {
        return Err(Error::Precondition(format!("({r},{n}) is not in Λ")));
    }
    if v == 0 {
        return Ok((None, delta.clone()));
    }
    let p = algorithm_a_move(d, r, n)?;
    let mut path = SweepPath::new(delta.clone());
    path.apply(sys, "A", &p, -v)?;
    Ok((Some((p, -v)), path.end))
}

fn check_singletons_zero(d: &WeylDecomposition, g: &LatticePoint) -> Result<()> {
    let sys = d.coords();
    sys.check(g)?;
    for i in d.singleton_generators() {
        for j in d.j_set(i) {
            if g.at(sys, Coord::new(j, i)) != 0 {
                return Err(Error::Precondition(format!("coordinate ({j},{i}) has |J_{i}| = 1 and must be zero")));
            }
        }
    }
    Ok(())
}

/// Step III moves: the unique fully reduced move ending at `level`.
fn ending_at(full: &[Move], level: usize) -> Result<Move> {
    unique_move(
        full.iter().filter(|p| p.end() == level).cloned().collect(),
        Error::MoveNotFound { string: 0, from: level, to: level },
        &format!("ending at {level}"),
    )
}

/// Sweepout of `γ` to the point with `(0, i_0) = C₀(γ)` and all other
/// coordinates zero, keeping `C₀` constant.
///
/// The sweepout only needs the singleton-`J` coordinates of `γ` to vanish,
/// which every point of `𝒞` satisfies.
pub fn sweep4(d: &WeylDecomposition, gamma: &LatticePoint) -> Result<SweepPath> {
    check_singletons_zero(d, gamma)?;
    let f = AxisFunctionals::new(d)?;
    let k = f.constants;
    let sys = d.coords();
    let c0 = f.c0(gamma);
    let mut path = SweepPath::new(gamma.clone());
    let mut label = 0;
    let mut next_label = || {
        label += 1;
        format!("m{label}")
    };

    for r in (1..=d.t()).rev() {
        for &n in d.string(r).iter().rev() {
            let cur = path.end.clone();
            let above_zero = sys
                .coords()
                .iter()
                .filter(|c| c.string > r || (c.string == r && c.index > n))
                .all(|&c| cur.at(sys, c) == 0);
            if !above_zero {
                return Err(Error::Precondition(format!("coordinates above ({r},{n}) are not zero")));
            }
            let v = cur.at(sys, Coord::new(r, n));
            if v == 0 {
                continue;
            }
            if (r, n) == (k.j_min, k.i_min) {
                let g = reduced_diagram(d, r, n)?;
                let found =
                    enumerate_all_moves(&g).into_iter().filter(|p| p.segment(k.j_min) == (k.i_min, k.i_min)).collect();
                let p = unique_move(
                    found,
                    Error::MoveNotFound { string: k.j_min, from: k.i_min, to: k.i_min },
                    "for the C0 step",
                )?;
                path.apply(sys, &next_label(), &p, v)?;
            } else {
                let p = algorithm_a_move(d, r, n)?;
                path.apply(sys, &next_label(), &p, -v)?;
            }
        }
    }

    let full = enumerate_all_moves(&fully_reduced_diagram(d)?);
    for i in k.i_0 + 1..=d.ell() {
        let v = path.end.at(sys, Coord::torus(i));
        if v != 0 {
            path.apply(sys, &next_label(), &ending_at(&full, i + 1)?, v)?;
        }
    }
    for i in (1..k.i_0).rev() {
        let v = path.end.at(sys, Coord::torus(i));
        if v != 0 {
            path.apply(sys, &next_label(), &ending_at(&full, i)?, -v)?;
        }
    }

    debug_assert!(path.trace.iter().all(|g| f.c0(g) == c0));
    if path.trace.iter().any(|g| f.c0(g) != c0) {
        return Err(Error::Precondition("C0 changed along the sweepout".into()));
    }
    Ok(path)
}

/// The point `γ′` of the sweepout: `(0, i_0) = C₀(γ)`, all else zero.
pub fn sweep4_target(d: &WeylDecomposition, c0: i64) -> Result<LatticePoint> {
    let k = axis_constants(d)?;
    d.coords().point(&[(Coord::torus(k.i_0), c0)])
}

/// Path in `𝓕_γ` from `γ′` to the point with `(j_i, i) = 0` for `i < ℓ` and
/// the same `C`, applying multiples of `H_{ℓ−1}, …, H_1`.
pub fn sweep5(coset: &FreePlaneCoset, start: &LatticePoint) -> Result<SweepPath> {
    if !coset.contains(start) {
        return Err(Error::CosetMismatch);
    }
    let d = coset.d();
    let sys = d.coords();
    let full = build_diagram(d, &BTreeSet::new())?;
    let js: Vec<usize> = (1..=d.ell()).map(|i| j_index(d, start, i)).collect();
    let mut path = SweepPath::new(start.clone());
    for r in (1..d.ell()).rev() {
        let v = path.end.at(sys, Coord::new(js[r - 1], r));
        if v == 0 {
            continue;
        }
        let h = horizontal_move(&full, r).ok_or(Error::MoveNotFound { string: 0, from: r, to: r })?;
        // H_r lowers (j, r) for j ≥ 1 and raises (0, r)
        let times = if js[r - 1] >= 1 { v } else { -v };
        path.apply(sys, &format!("H{r}"), &h, times)?;
    }
    Ok(path)
}

/// Disjoint paths joining interleaved pairs `(γ_n, δ_n)` in one coset:
/// sweep5 from both ends, joined by `H_{ℓ+1}` applied `C(δ_n) − C(γ_n)` times.
pub fn ladder_free_plane(coset: &FreePlaneCoset, pairs: &[(LatticePoint, LatticePoint)]) -> Result<Ladder> {
    let d = coset.d();
    let sys = d.coords();
    let cs: Vec<i64> = pairs.iter().flat_map(|(a, b)| [c_value(d, a), c_value(d, b)]).collect();
    if cs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Inapplicable("C-values of the pairs must strictly interleave".into()));
    }
    let full = build_diagram(d, &BTreeSet::new())?;
    let top = d.ell() + 1;
    let h = horizontal_move(&full, top).ok_or(Error::MoveNotFound { string: 0, from: top, to: top })?;
    let mut ladder = Ladder::default();
    for (a, b) in pairs {
        let mut p = sweep5(coset, a)?;
        let tail = sweep5(coset, b)?.reversed();
        let mut join = SweepPath::new(p.end.clone());
        join.apply(sys, &format!("H{top}"), &h, c_value(d, b) - c_value(d, a))?;
        if join.end != tail.start {
            return Err(Error::Inapplicable("swept endpoints are not joined by H_{ℓ+1}".into()));
        }
        p.extend(&join);
        p.extend(&tail);
        ladder.paths.push(p.ladder_steps());
    }
    if !ladder.is_vertex_disjoint() {
        return Err(Error::Inapplicable("constructed paths are not disjoint".into()));
    }
    Ok(ladder)
}

/// From each start (distinct `(j_i, i)` values for some `i < ℓ`), apply
/// `H_{ℓ+1}` `2K+1` times.
pub fn ladder_free_plane_escape(coset: &FreePlaneCoset, starts: &[LatticePoint], k: i64) -> Result<Ladder> {
    let d = coset.d();
    let sys = d.coords();
    let full = build_diagram(d, &BTreeSet::new())?;
    let top = d.ell() + 1;
    let h = horizontal_move(&full, top).ok_or(Error::MoveNotFound { string: 0, from: top, to: top })?;
    let mut ladder = Ladder::default();
    for s in starts {
        if !coset.contains(s) {
            return Err(Error::CosetMismatch);
        }
        let mut p = SweepPath::new(s.clone());
        p.apply(sys, &format!("H{top}"), &h, 2 * k + 1)?;
        ladder.paths.push(p.ladder_steps());
    }
    if !ladder.is_vertex_disjoint() {
        return Err(Error::Inapplicable("start points do not give disjoint paths".into()));
    }
    Ok(ladder)
}

/// The fully reduced moves `m_i` with 0th segment `(i, i)`.
fn zero_segment_move(full: &[Move], i: usize) -> Result<Move> {
    unique_move(
        full.iter().filter(|p| p.segment(0) == (i, i)).cloned().collect(),
        Error::MoveNotFound { string: 0, from: i, to: i },
        &format!("with 0th segment ({i},{i})"),
    )
}

/// `n` disjoint paths joining `γ_k` (`C₀ = 2k`) to `δ_k` (`C₀ = 2k+1`):
/// sweep4 from both ends joined by the composite `m_{i_0}, …, m_1`.
pub fn ladder_c0(d: &WeylDecomposition, n: usize, window: Option<&TruncationSpec>) -> Result<Ladder> {
    let f = AxisFunctionals::new(d)?;
    let k = f.constants;
    let sys = d.coords();
    if let Some(w) = window {
        let need = 2 * n as i64;
        if need > w.z_max {
            return Err(Error::WindowTooSmall(format!("z_max = {} < {need} needed for {n} paths", w.z_max)));
        }
    }
    let full = enumerate_all_moves(&fully_reduced_diagram(d)?);
    let composite: Vec<Move> = (1..=k.i_0).rev().map(|i| zero_segment_move(&full, i)).collect::<Result<_>>()?;
    let endpoint = |c0: i64| sys.point(&[(Coord::new(k.j_min, k.i_min), 1), (Coord::torus(k.i_0), c0 - 1)]);
    let mut ladder = Ladder::default();
    for idx in 1..=n as i64 {
        let a = endpoint(2 * idx)?;
        let b = endpoint(2 * idx + 1)?;
        let mut p = sweep4(d, &a)?;
        let tail = sweep4(d, &b)?.reversed();
        for (pos, m) in composite.iter().enumerate() {
            p.apply(sys, &format!("m{}", k.i_0 - pos), m, 1)?;
        }
        p.extend(&tail);
        ladder.paths.push(p.ladder_steps());
    }
    if !ladder.is_vertex_disjoint() {
        return Err(Error::Inapplicable("constructed paths are not disjoint".into()));
    }
    Ok(ladder)
}

/// A(r,n) over the schedule `r = t..j_max+1` (all `n`), `r = j_max`
/// (`n > i_min`), `r < j_max` (all `n`), then `m_{i_0}` applied `3K` times.
/// `C₁` stays constant; `C₀` of the end point is `γ(0,i_0)`-part plus `3K`.
pub fn c1_escape(d: &WeylDecomposition, gamma: &LatticePoint, k: i64) -> Result<SweepPath> {
    check_singletons_zero(d, gamma)?;
    let f = AxisFunctionals::new(d)?;
    let c = f.constants;
    let sys = d.coords();
    let mut path = SweepPath::new(gamma.clone());
    let mut label = 0;
    for r in (1..=d.t()).rev() {
        for &n in d.string(r).iter().rev() {
            if r == c.j_max && n <= c.i_min {
                continue;
            }
            let v = path.end.at(sys, Coord::new(r, n));
            if v == 0 {
                continue;
            }
            let p = algorithm_a_move(d, r, n)?;
            label += 1;
            path.apply(sys, &format!("m{label}"), &p, -v)?;
        }
    }
    let full = enumerate_all_moves(&fully_reduced_diagram(d)?);
    let m = zero_segment_move(&full, c.i_0)?;
    label += 1;
    path.apply(sys, &format!("m{label}"), &m, 3 * k)?;
    let c1 = f.c1(gamma);
    if path.trace.iter().any(|g| f.c1(g) != c1) {
        return Err(Error::Precondition("C1 changed along the escape".into()));
    }
    Ok(path)
}

/// `H_{ℓ+1}, H_ℓ, …, H_{i_min+1}`, each `K+1` times: raises `C₁` by `K+1`.
pub fn coordinate_escape(d: &WeylDecomposition, gamma: &LatticePoint, k: i64) -> Result<SweepPath> {
    let c = axis_constants(d)?;
    let sys = d.coords();
    sys.check(gamma)?;
    let full = build_diagram(d, &BTreeSet::new())?;
    let mut path = SweepPath::new(gamma.clone());
    for r in (c.i_min + 1..=d.ell() + 1).rev() {
        let h = horizontal_move(&full, r).ok_or(Error::MoveNotFound { string: 0, from: r, to: r })?;
        path.apply(sys, &format!("H{r}"), &h, k + 1)?;
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_four() -> WeylDecomposition {
        WeylDecomposition::from_word_text("(s2 s3 s4)(s3)(s2)(s1)", 4).unwrap()
    }

    fn small() -> WeylDecomposition {
        WeylDecomposition::from_word_text("(s1 s2)(s1)", 2).unwrap()
    }

    #[test]
    fn complementary_axis() {
        let d = rank_four();
        let sys = d.coords();
        assert!(in_complementary_axis(&d, &sys.zero()));
        let ones = LatticePoint((0..sys.dim()).map(|s| i64::from(s < sys.n_dim())).collect());
        assert!(!in_complementary_axis(&d, &ones));
        let g = sys.parse_point("(4,2)=1,(4,3)=2,(2,2)=0,(3,3)=0").unwrap();
        assert!(in_complementary_axis(&d, &g));
    }

    #[test]
    fn minimizer() {
        let d = rank_four();
        let sys = d.coords();
        assert_eq!(minimizer_j(&d, &sys.zero(), 2), Ok(2));
        let g = sys.parse_point("(2,2)=3,(4,2)=1").unwrap();
        assert_eq!(minimizer_j(&d, &g, 2), Ok(4));
        let e = WeylDecomposition::from_word_text("s1", 2).unwrap();
        assert_eq!(minimizer_j(&e, &e.coords().zero(), 2), Err(Error::EmptyJ(2)));
    }

    #[test]
    fn h_moves_span_the_free_plane() {
        for d in [rank_four(), small()] {
            let g = build_diagram(&d, &BTreeSet::new()).unwrap();
            for r in 1..=d.ell() + 1 {
                let h = horizontal_move(&g, r).unwrap();
                assert!(FreePlaneCoset::in_subgroup(&d, h.vector()), "H_{r}");
            }
        }
    }

    #[test]
    fn algorithm_a_first_moves() {
        let d = rank_four();
        let sys = d.coords();
        let m1 = algorithm_a_move(&d, 4, 3).unwrap();
        assert_eq!(sys.sparse(m1.vector()), vec![(Coord::new(4, 3), 1), (Coord::torus(4), -1)]);
        let m2 = algorithm_a_move(&d, 4, 2).unwrap();
        assert_eq!(sys.sparse(m2.vector()), vec![(Coord::new(4, 2), 1), (Coord::torus(4), -1)]);
        let (applied, out) = algorithm_a(&d, &sys.zero(), 4, 3).unwrap();
        assert!(applied.is_none());
        assert_eq!(out, sys.zero());
    }

    #[test]
    fn sweep5_small() {
        let d = small();
        let sys = d.coords();
        let coset = FreePlaneCoset::new(&d, sys.parse_point("(2,1)=3,(1,1)=1,(2,2)=2").unwrap()).unwrap();
        let start = coset.base.clone();
        let p = sweep5(&coset, &start).unwrap();
        assert_eq!(p.steps.len(), 1);
        assert_eq!(p.steps[0].label, "H1");
        assert_eq!(p.steps[0].times, 1);
        let c = c_value(&d, &start);
        assert!(p.trace.iter().all(|g| c_value(&d, g) == c && coset.contains(g)));
        assert_eq!(p.end.at(sys, Coord::new(1, 1)), 0);
        assert!(p.is_consistent(sys));
    }

    #[test]
    fn sweep4_zero_is_trivial() {
        let d = rank_four();
        let p = sweep4(&d, &d.coords().zero()).unwrap();
        assert!(p.steps.is_empty());
    }

    #[test]
    fn coordinate_escape_counts() {
        let d = small();
        let sys = d.coords();
        let f = AxisFunctionals::new(&d).unwrap();
        let p = coordinate_escape(&d, &sys.zero(), 2).unwrap();
        assert_eq!(p.unit_steps(), 3 * (d.ell() + 1 - f.constants.i_min));
        assert_eq!(f.c1(&p.end), 3);
    }

    #[test]
    fn ladder_c0_small() {
        let d = small();
        assert!(ladder_c0(&d, 0, None).unwrap().is_empty());
        let l = ladder_c0(&d, 3, None).unwrap();
        assert_eq!(l.len(), 3);
        assert!(l.is_vertex_disjoint());
        let w = TruncationSpec::new(2, 2, 1, 0.5).unwrap();
        assert!(matches!(ladder_c0(&d, 3, Some(&w)), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn table_render_has_rows() {
        let d = rank_four();
        let g = d.coords().parse_point("(2,2)=2,(0,1)=-1").unwrap();
        let p = sweep4(&d, &g).unwrap();
        let text = p.table(d.coords()).render();
        assert!(text.starts_with("coordinate"));
        assert!(text.contains("move m1"));
    }
}
