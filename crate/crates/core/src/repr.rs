//! Lazy operator semantics on `ℓ²(Γ)`: per-coordinate factors, the monomials
//! `T_p` and `W_p`, the entries `π_ω(u_ij)`, adjoints, and the numerical
//! identity checks (unitarity, `m_p` uniqueness, phase averaging).

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, Diagram, EdgeKind};
use crate::error::{Error, Result};
use crate::lattice::{CoordSystem, LatticePoint};
use crate::moves::{enumerate_moves, Move};
use crate::weyl::WeylDecomposition;

/// Finite window `0 ≤ γ(k,i) ≤ n_max`, `|γ(0,i)| ≤ z_max`, with an interior
/// margin and the deformation parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub n_max: i64,
    pub z_max: i64,
    pub margin: i64,
    pub q: f64,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self { n_max: 4, z_max: 4, margin: 1, q: 0.5 }
    }
}

impl TruncationSpec {
    pub fn new(n_max: i64, z_max: i64, margin: i64, q: f64) -> Result<Self> {
        let spec = Self { n_max, z_max, margin, q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidWindow(format!("q = {} not in (0,1)", self.q)));
        }
        if self.margin < 1 {
            return Err(Error::InvalidWindow(format!("margin = {} < 1", self.margin)));
        }
        if self.n_max < 2 * self.margin || self.z_max < 2 * self.margin {
            return Err(Error::InvalidWindow(format!(
                "need n_max, z_max >= 2*margin (n_max={}, z_max={}, margin={})",
                self.n_max, self.z_max, self.margin
            )));
        }
        Ok(())
    }

    pub fn contains(&self, sys: &CoordSystem, p: &LatticePoint) -> bool {
        p.0.iter().enumerate().all(
            |(s, &x)| {
                if sys.is_n_slot(s) {
                    (0..=self.n_max).contains(&x)
                } else {
                    x.abs() <= self.z_max
                }
            },
        )
    }

    /// Distance at least `margin` from the window boundary. The `ℕ` boundary
    /// `γ(k,i) = 0` is exact algebra and does not count as window boundary.
    pub fn is_interior(&self, sys: &CoordSystem, p: &LatticePoint) -> bool {
        p.0.iter().enumerate().all(|(s, &x)| {
            if sys.is_n_slot(s) {
                (0..=self.n_max - self.margin).contains(&x)
            } else {
                x.abs() <= self.z_max - self.margin
            }
        })
    }

    /// Every point of the window, lexicographic in canonical coordinates.
    pub fn points(&self, sys: &CoordSystem) -> Vec<LatticePoint> {
        self.box_points(sys, 0)
    }

    pub fn interior_points(&self, sys: &CoordSystem) -> Vec<LatticePoint> {
        self.box_points(sys, self.margin)
    }

    fn box_points(&self, sys: &CoordSystem, shrink: i64) -> Vec<LatticePoint> {
        let ranges: Vec<(i64, i64)> = (0..sys.dim())
            .map(|s| {
                if sys.is_n_slot(s) {
                    (0, self.n_max - shrink)
                } else {
                    (-(self.z_max - shrink), self.z_max - shrink)
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return out;
        }
        loop {
            out.push(LatticePoint(cur.clone()));
            let mut s = cur.len();
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                if cur[s] < ranges[s].1 {
                    cur[s] += 1;
                    break;
                }
                cur[s] = ranges[s].0;
            }
        }
    }
}

/// Action of one tensor factor on a basis vector `e_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    Identity,
    /// `√(I−q^{2N+2}) S`: `e_n ↦ √(1−q^{2n}) e_{n−1}`, zero at `n = 0`.
    MinusHoriz,
    /// `S* √(I−q^{2N+2})`: `e_n ↦ √(1−q^{2n+2}) e_{n+1}`.
    PlusHoriz,
    /// `S` on `ℓ²(ℕ)`.
    PureMinus,
    /// `S*` on `ℓ²(ℕ)`.
    PurePlus,
    /// `−q^{N+1}`.
    UpDiag,
    /// `q^N`.
    DownDiag,
    /// `e_z ↦ e_{z+d}` on `ℓ²(ℤ)`.
    ShiftZ(i64),
}

impl Factor {
    pub fn shift(self) -> i64 {
        match self {
            Factor::MinusHoriz | Factor::PureMinus => -1,
            Factor::PlusHoriz | Factor::PurePlus => 1,
            Factor::ShiftZ(d) => d,
            _ => 0,
        }
    }

    /// `(new index, coefficient)`, or `None` when `e_n` is annihilated.
    pub fn eval(self, n: i64, q: f64) -> Option<(i64, f64)> {
        match self {
            Factor::Identity => Some((n, 1.0)),
            Factor::MinusHoriz if n <= 0 => None,
            Factor::MinusHoriz => Some((n - 1, (1.0 - q.powi(2 * n as i32)).sqrt())),
            Factor::PlusHoriz => Some((n + 1, (1.0 - q.powi(2 * n as i32 + 2)).sqrt())),
            Factor::PureMinus if n <= 0 => None,
            Factor::PureMinus => Some((n - 1, 1.0)),
            Factor::PurePlus => Some((n + 1, 1.0)),
            Factor::UpDiag => Some((n, -q.powi(n as i32 + 1))),
            Factor::DownDiag => Some((n, q.powi(n as i32))),
            Factor::ShiftZ(d) => Some((n + d, 1.0)),
        }
    }

    pub fn adjoint(self) -> Factor {
        match self {
            Factor::MinusHoriz => Factor::PlusHoriz,
            Factor::PlusHoriz => Factor::MinusHoriz,
            Factor::PureMinus => Factor::PurePlus,
            Factor::PurePlus => Factor::PureMinus,
            Factor::ShiftZ(d) => Factor::ShiftZ(-d),
            f => f,
        }
    }

    fn of_edge(kind: EdgeKind, pure: bool) -> Factor {
        match kind {
            EdgeKind::Identity => Factor::Identity,
            EdgeKind::MinusHoriz if pure => Factor::PureMinus,
            EdgeKind::MinusHoriz => Factor::MinusHoriz,
            EdgeKind::PlusHoriz if pure => Factor::PurePlus,
            EdgeKind::PlusHoriz => Factor::PlusHoriz,
            EdgeKind::UpDiag => Factor::UpDiag,
            EdgeKind::DownDiag => Factor::DownDiag,
            EdgeKind::PlusZ => Factor::ShiftZ(1),
            EdgeKind::MinusZ => Factor::ShiftZ(-1),
        }
    }
}

/// A product of one factor per coordinate, times a scalar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialOperator {
    pub coeff: Complex64,
    pub factors: Vec<Factor>,
    pub delta: Vec<i64>,
    pub q: f64,
}

impl MonomialOperator {
    pub fn new(factors: Vec<Factor>, q: f64) -> Self {
        let delta = factors.iter().map(|f| f.shift()).collect();
        Self { coeff: Complex64::new(1.0, 0.0), factors, delta, q }
    }

    pub fn identity(dim: usize, q: f64) -> Self {
        Self::new(vec![Factor::Identity; dim], q)
    }

    /// `T e_γ = c(γ) e_{γ+δ}`; `None` when annihilated.
    pub fn apply_basis(&self, gamma: &LatticePoint) -> Option<(LatticePoint, Complex64)> {
        let mut c = self.coeff;
        let mut out = Vec::with_capacity(gamma.0.len());
        for (f, &n) in self.factors.iter().zip(&gamma.0) {
            let (m, x) = f.eval(n, self.q)?;
            c *= x;
            out.push(m);
        }
        Some((LatticePoint(out), c))
    }

    pub fn adjoint(&self) -> Self {
        let factors: Vec<Factor> = self.factors.iter().map(|f| f.adjoint()).collect();
        Self { coeff: self.coeff.conj(), delta: self.delta.iter().map(|d| -d).collect(), factors, q: self.q }
    }
}

/// `T_p`: product of the per-edge factors of the move.
pub fn monomial_of(diagram: &Diagram, p: &Move, q: f64) -> MonomialOperator {
    monomial(diagram, p, q, false)
}

/// `W_p`: as `T_p` but with both `√`-horizontals replaced by pure shifts.
pub fn w_monomial_of(diagram: &Diagram, p: &Move, q: f64) -> MonomialOperator {
    monomial(diagram, p, q, true)
}

fn monomial(diagram: &Diagram, p: &Move, q: f64, pure: bool) -> MonomialOperator {
    let dim = diagram.decomposition().coords().dim();
    let mut factors = vec![Factor::Identity; dim];
    for (col, &kind) in diagram.columns().iter().zip(p.edges()) {
        factors[col.slot()] = Factor::of_edge(kind, pure);
    }
    MonomialOperator::new(factors, q)
}

/// Sparse vector over the basis `{e_γ}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StateVector(pub BTreeMap<LatticePoint, Complex64>);

impl StateVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(gamma: LatticePoint) -> Self {
        Self(BTreeMap::from([(gamma, Complex64::new(1.0, 0.0))]))
    }

    pub fn add(&mut self, gamma: LatticePoint, amp: Complex64) {
        *self.0.entry(gamma).or_default() += amp;
    }

    pub fn axpy(&mut self, a: Complex64, other: &StateVector) {
        for (g, &x) in &other.0 {
            self.add(g.clone(), a * x);
        }
    }

    pub fn scaled(&self, a: Complex64) -> StateVector {
        Self(self.0.iter().map(|(g, &x)| (g.clone(), a * x)).collect())
    }

    pub fn amplitude(&self, gamma: &LatticePoint) -> Complex64 {
        self.0.get(gamma).copied().unwrap_or_default()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.0.iter().map(|(g, x)| x.conj() * other.amplitude(g)).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.values().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Support after discarding exact zeros.
    pub fn support(&self) -> Vec<&LatticePoint> {
        self.0.iter().filter(|(_, x)| **x != Complex64::default()).map(|(g, _)| g).collect()
    }
}

#[derive(Serialize)]
struct AmplitudeEntry<'a> {
    point: &'a LatticePoint,
    re: f64,
    im: f64,
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|(point, x)| AmplitudeEntry { point, re: x.re, im: x.im }))
    }
}

/// Result of a windowed application: the exact image plus the points of its
/// support that left the window.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Applied {
    pub state: StateVector,
    pub escaped: BTreeSet<LatticePoint>,
}

/// A finite sum of monomials, e.g. `π_ω(u_ij) = Σ_{p∈P_ij} T_p`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OperatorSum {
    pub terms: Vec<MonomialOperator>,
}

impl OperatorSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(dim: usize, q: f64) -> Self {
        Self { terms: vec![MonomialOperator::identity(dim, q)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn adjoint(&self) -> Self {
        Self { terms: self.terms.iter().map(MonomialOperator::adjoint).collect() }
    }

    /// Exact image, no window.
    pub fn apply_exact(&self, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (g, &x) in &v.0 {
            for t in &self.terms {
                if let Some((g2, c)) = t.apply_basis(g) {
                    out.add(g2, c * x);
                }
            }
        }
        out
    }

    /// Exact image; points landing outside `window` are reported, not dropped.
    pub fn apply(&self, sys: &CoordSystem, v: &StateVector, window: &TruncationSpec) -> Applied {
        let state = self.apply_exact(v);
        let escaped = state.0.keys().filter(|g| !window.contains(sys, g)).cloned().collect();
        Applied { state, escaped }
    }
}

pub fn adjoint(op: &OperatorSum) -> OperatorSum {
    op.adjoint()
}

/// `π_ω(u_ij)` as the sum of `T_p` over `P_ij`.
pub fn entry_operator(d: &WeylDecomposition, i: usize, j: usize, q: f64) -> Result<OperatorSum> {
    let g = build_diagram(d, &BTreeSet::new())?;
    Ok(OperatorSum { terms: enumerate_moves(&g, i, j).iter().map(|p| monomial_of(&g, p, q)).collect() })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UnitarityDefect {
    /// `‖Σ_k π(u_ik)π(u_jk)* e_γ − δ_ij e_γ‖`.
    pub row: f64,
    /// `‖Σ_k π(u_ki)*π(u_kj) e_γ − δ_ij e_γ‖`.
    pub column: f64,
}

impl UnitarityDefect {
    pub fn max(&self) -> f64 {
        self.row.max(self.column)
    }
}

/// `π_ω` with all entries and their adjoints precomputed.
#[derive(Clone, Debug)]
pub struct Representation {
    diagram: Diagram,
    q: f64,
    moves: Vec<Vec<Move>>,
    entries: Vec<OperatorSum>,
    adjoints: Vec<OperatorSum>,
}

impl Representation {
    pub fn new(d: &WeylDecomposition, q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidWindow(format!("q = {q} not in (0,1)")));
        }
        let diagram = build_diagram(d, &BTreeSet::new())?;
        let n = diagram.levels();
        let mut moves = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                moves.push(enumerate_moves(&diagram, i, j));
            }
        }
        let entries: Vec<OperatorSum> = moves
            .iter()
            .map(|ps| OperatorSum { terms: ps.iter().map(|p| monomial_of(&diagram, p, q)).collect() })
            .collect();
        let adjoints = entries.iter().map(OperatorSum::adjoint).collect();
        Ok(Self { diagram, q, moves, entries, adjoints })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn coords(&self) -> &CoordSystem {
        self.diagram.decomposition().coords()
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Matrix size `ℓ + 1`.
    pub fn size(&self) -> usize {
        self.diagram.levels()
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.size() + (j - 1)
    }

    pub fn moves(&self, i: usize, j: usize) -> &[Move] {
        &self.moves[self.idx(i, j)]
    }

    pub fn entry(&self, i: usize, j: usize) -> &OperatorSum {
        &self.entries[self.idx(i, j)]
    }

    pub fn entry_adjoint(&self, i: usize, j: usize) -> &OperatorSum {
        &self.adjoints[self.idx(i, j)]
    }

    pub fn unitarity_defect(
        &self,
        i: usize,
        j: usize,
        gamma: &LatticePoint,
        window: &TruncationSpec,
    ) -> Result<UnitarityDefect> {
        let sys = self.coords();
        sys.check(gamma)?;
        if !window.is_interior(sys, gamma) {
            return Err(Error::NotInterior);
        }
        let e = StateVector::basis(gamma.clone());
        let mut row = StateVector::zero();
        let mut column = StateVector::zero();
        for k in 1..=self.size() {
            let v = self.entry_adjoint(j, k).apply_exact(&e);
            row.axpy(Complex64::new(1.0, 0.0), &self.entry(i, k).apply_exact(&v));
            let v = self.entry(k, j).apply_exact(&e);
            column.axpy(Complex64::new(1.0, 0.0), &self.entry_adjoint(k, i).apply_exact(&v));
        }
        if i == j {
            row.add(gamma.clone(), Complex64::new(-1.0, 0.0));
            column.add(gamma.clone(), Complex64::new(-1.0, 0.0));
        }
        Ok(UnitarityDefect { row: row.norm(), column: column.norm() })
    }

    /// Largest row/column defect over all interior points and all `(i, j)`.
    pub fn max_unitarity_defect(&self, window: &TruncationSpec) -> f64 {
        let n = self.size();
        window
            .interior_points(self.coords())
            .par_iter()
            .map(|g| {
                let mut worst = 0.0f64;
                for i in 1..=n {
                    for j in 1..=n {
                        let d = self.unitarity_defect(i, j, g, window).expect("interior point");
                        worst = worst.max(d.max());
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }
}

pub fn unitarity_defect(
    d: &WeylDecomposition,
    i: usize,
    j: usize,
    gamma: &LatticePoint,
    window: &TruncationSpec,
) -> Result<UnitarityDefect> {
    Representation::new(d, window.q)?.unitarity_defect(i, j, gamma, window)
}

/// For every interior `γ` with `W_p e_γ ≠ 0`, the only `δ ∈ {−1,0,1}^Λ∪Λ₀`
/// with `⟨W_p e_γ, e_{γ+δ}⟩ ≠ 0` is `m_p`.
///
/// `W_p` is a monomial, so `W_p e_γ` has at most one basis vector in its
/// support; the scan over `δ` reduces to comparing that vector with
/// `γ + m_p`.
pub fn mp_uniqueness(diagram: &Diagram, p: &Move, window: &TruncationSpec) -> bool {
    let sys = diagram.decomposition().coords();
    let w = w_monomial_of(diagram, p, window.q);
    window.interior_points(sys).par_iter().all(|g| match w.apply_basis(g) {
        None => true,
        Some((g2, c)) => {
            let d = g2.sub(g);
            let in_cube = d.iter().all(|x| x.abs() <= 1);
            c == Complex64::default() || !in_cube || d == p.vector()
        }
    })
}

/// `U_z e_γ = z^{γ(slot)} e_γ`.
pub fn phase_twist(v: &StateVector, slot: usize, z: Complex64) -> StateVector {
    StateVector(v.0.iter().map(|(g, &x)| (g.clone(), x * z.powi(g.get(slot) as i32))).collect())
}

/// `(1/m) Σ_{z^m = 1} U_z op U_z* v`.
pub fn phase_average(op: &OperatorSum, v: &StateVector, slot: usize, order: u32) -> StateVector {
    let mut out = StateVector::zero();
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / order as f64);
    for k in 0..order {
        let z = w.powu(k);
        let inner = phase_twist(v, slot, z.conj());
        let outer = phase_twist(&op.apply_exact(&inner), slot, z);
        out.axpy(Complex64::new(1.0 / order as f64, 0.0), &outer);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Coord;

    fn omega(text: &str, ell: usize) -> WeylDecomposition {
        WeylDecomposition::from_word_text(text, ell).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn window_validation() {
        assert!(TruncationSpec::new(4, 4, 1, 0.5).is_ok());
        assert!(TruncationSpec::new(1, 4, 1, 0.5).is_err());
        assert!(TruncationSpec::new(4, 4, 0, 0.5).is_err());
        assert!(TruncationSpec::new(4, 4, 1, 1.0).is_err());
    }

    #[test]
    fn window_points() {
        let d = omega("s1", 1);
        let w = TruncationSpec::new(2, 2, 1, 0.5).unwrap();
        assert_eq!(w.points(d.coords()).len(), 3 * 5);
        assert_eq!(w.interior_points(d.coords()).len(), 2 * 3);
    }

    #[test]
    fn s1_monomials() {
        let d = omega("s1", 1);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        let q = 0.5;
        let p11 = &enumerate_moves(&g, 1, 1)[0];
        let t = monomial_of(&g, p11, q);
        let (to, x) = t.apply_basis(&LatticePoint(vec![3, 5])).unwrap();
        assert_eq!(to, LatticePoint(vec![2, 6]));
        assert!((x.re - (1.0 - q.powi(6)).sqrt()).abs() < 1e-15);
        assert!(t.apply_basis(&LatticePoint(vec![0, 5])).is_none());

        let w = w_monomial_of(&g, p11, q);
        assert_eq!(w.apply_basis(&LatticePoint(vec![3, 5])), Some((LatticePoint(vec![2, 6]), c(1.0))));

        let p12 = &enumerate_moves(&g, 1, 2)[0];
        let t = monomial_of(&g, p12, q);
        let (to, x) = t.apply_basis(&LatticePoint(vec![2, 0])).unwrap();
        assert_eq!(to, LatticePoint(vec![2, -1]));
        assert!((x.re + q.powi(3)).abs() < 1e-15);
    }

    #[test]
    fn entry_operator_at_origin() {
        let d = omega("s1", 1);
        let sys = d.coords();
        let w = TruncationSpec::default();
        let e = StateVector::basis(sys.zero());
        // the √ term of π(u_11) dies at n = 0
        assert!(entry_operator(&d, 1, 1, 0.5).unwrap().apply(sys, &e, &w).state.0.is_empty());
        let out = entry_operator(&d, 1, 2, 0.5).unwrap().apply(sys, &e, &w).state;
        assert_eq!(out, StateVector(BTreeMap::from([(LatticePoint(vec![0, -1]), c(-0.5))])));
    }

    #[test]
    fn identity_and_zero() {
        let d = omega("(s1 s2)(s1)", 2);
        let sys = d.coords();
        let w = TruncationSpec::default();
        let v = StateVector::basis(sys.point(&[(Coord::new(2, 1), 2)]).unwrap());
        let id = OperatorSum::identity(sys.dim(), 0.5);
        assert_eq!(id.apply(sys, &v, &w).state, v);
        assert!(id.apply(sys, &StateVector::zero(), &w).state.0.is_empty());
    }

    #[test]
    fn boundary_loss_is_reported() {
        let d = omega("s1", 1);
        let sys = d.coords();
        let w = TruncationSpec::new(2, 2, 1, 0.5).unwrap();
        let op = OperatorSum { terms: vec![MonomialOperator::new(vec![Factor::Identity, Factor::ShiftZ(1)], 0.5)] };
        let out = op.apply(sys, &StateVector::basis(LatticePoint(vec![0, 2])), &w);
        assert_eq!(out.escaped, BTreeSet::from([LatticePoint(vec![0, 3])]));
        assert_eq!(out.state.norm(), 1.0);
    }

    #[test]
    fn adjoint_matrix_elements() {
        let q = 0.5;
        for f in [Factor::MinusHoriz, Factor::PlusHoriz, Factor::UpDiag, Factor::DownDiag, Factor::PureMinus] {
            let m = MonomialOperator::new(vec![f], q);
            let a = m.adjoint();
            assert_eq!(a.adjoint(), m);
            for n in 0..6 {
                for k in 0..6 {
                    let lhs =
                        m.apply_basis(&LatticePoint(vec![n])).filter(|(g, _)| g.0[0] == k).map_or(0.0, |x| x.1.re);
                    let rhs =
                        a.apply_basis(&LatticePoint(vec![k])).filter(|(g, _)| g.0[0] == n).map_or(0.0, |x| x.1.re);
                    assert!((lhs - rhs).abs() < 1e-15, "{f:?} {n} {k}");
                }
            }
        }
        assert_eq!(Factor::PlusHoriz.adjoint(), Factor::MinusHoriz);
        assert_eq!(Factor::DownDiag.adjoint(), Factor::DownDiag);
    }

    #[test]
    fn unitarity_s1() {
        let d = omega("s1", 1);
        let r = Representation::new(&d, 0.5).unwrap();
        let w = TruncationSpec::new(4, 4, 1, 0.5).unwrap();
        assert!(r.max_unitarity_defect(&w) <= 1e-12);
        let edge = LatticePoint(vec![4, 0]);
        assert_eq!(r.unitarity_defect(1, 1, &edge, &w), Err(Error::NotInterior));
    }

    #[test]
    fn monomial_delta_is_m_p() {
        let d = omega("(s2 s3 s4)(s3)(s2)(s1)", 4);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        for p in crate::moves::enumerate_all_moves(&g) {
            assert_eq!(monomial_of(&g, &p, 0.5).delta, p.vector());
        }
    }

    #[test]
    fn mp_uniqueness_s1() {
        let d = omega("s1", 1);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        let w = TruncationSpec::new(3, 3, 1, 0.5).unwrap();
        assert!(crate::moves::enumerate_all_moves(&g).iter().all(|p| mp_uniqueness(&g, p, &w)));
    }

    #[test]
    fn phase_average_separates_frequencies() {
        // P_22 ∪ P_21 style: two monomials differing by ±1 at slot 0
        let q = 0.5;
        let keep = MonomialOperator::new(vec![Factor::DownDiag, Factor::ShiftZ(1)], q);
        let kill = MonomialOperator::new(vec![Factor::PureMinus, Factor::ShiftZ(1)], q);
        let op = OperatorSum { terms: vec![keep.clone(), kill] };
        let v = StateVector::basis(LatticePoint(vec![2, 0]));
        let avg = phase_average(&op, &v, 0, 3);
        let expected = OperatorSum { terms: vec![keep] }.apply_exact(&v);
        let mut diff = avg.clone();
        diff.axpy(c(-1.0), &expected);
        assert!(diff.norm() < 1e-12);
    }
}
