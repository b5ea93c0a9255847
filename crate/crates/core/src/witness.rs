//! Candidate signs built from free-plane cosets, the witness operator
//! `T = π_ω(u_{r+1,r})`, and the non-compactness sequences refuting every
//! nontrivial candidate.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, EdgeKind};
use crate::error::{Error, Result};
use crate::growth::sign_determining_probe;
use crate::lattice::{Coord, LatticePoint};
use crate::moves::{enumerate_moves, Move};
use crate::repr::{monomial_of, w_monomial_of, OperatorSum, StateVector, TruncationSpec};
use crate::sweep::{c0_sign_partition, c1_escape, coordinate_escape, ladder_c0, AxisFunctionals, FreePlaneCoset};
use crate::weyl::{axis_constants, WeylDecomposition};

/// `2P − I` (`orientation = +1`) or `I − 2P` (`−1`), with `P` the projection
/// onto the span of the union of the cosets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCandidate {
    pub cosets: Vec<FreePlaneCoset>,
    pub orientation: i8,
}

impl SignCandidate {
    pub fn new(cosets: Vec<FreePlaneCoset>) -> Self {
        Self { cosets, orientation: 1 }
    }

    pub fn contains(&self, g: &LatticePoint) -> bool {
        self.cosets.iter().any(|c| c.contains(g))
    }

    /// `P = 0`: the sign is `∓I`.
    pub fn is_trivial(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// Amplitude-wise restriction to the coset union.
pub fn project(candidate: &SignCandidate, v: &StateVector) -> StateVector {
    StateVector(v.0.iter().filter(|(g, _)| candidate.contains(g)).map(|(g, &x)| (g.clone(), x)).collect())
}

/// `T = π_ω(u_{r+1,r})`, `r = max Λ_t`, as a single path.
#[derive(Clone, Debug)]
pub struct WitnessOperator {
    pub r: usize,
    pub path: Move,
    pub t_op: OperatorSum,
    pub w_op: OperatorSum,
    /// The factor pattern `(t,r) = q^N`, `(0,r−1) = S`, `(0,r) = S*`, and an
    /// `S*`-type factor at `(t−1, r−1)` exactly when `t−1 ∈ J_{r−1}`.
    pub pattern_holds: bool,
}

pub fn witness_operator(d: &WeylDecomposition, q: f64) -> Result<WitnessOperator> {
    let t = d.t();
    if t == 0 {
        return Err(Error::Precondition("ω is the identity".into()));
    }
    let r = d.string_max(t);
    let g = build_diagram(d, &BTreeSet::new())?;
    let paths = enumerate_moves(&g, r + 1, r);
    if paths.len() != 1 {
        return Err(Error::MultiplePaths { from: r + 1, to: r, count: paths.len() });
    }
    let path = paths.into_iter().next().unwrap();
    let sys = d.coords();
    let kind_at = |c: Coord| {
        let slot = sys.slot(c)?;
        g.columns().iter().position(|col| col.slot() == slot).map(|i| path.edges()[i])
    };
    let mut ok =
        kind_at(Coord::new(t, r)) == Some(EdgeKind::DownDiag) && kind_at(Coord::torus(r)) == Some(EdgeKind::PlusZ);
    if r >= 2 {
        ok &= kind_at(Coord::torus(r - 1)) == Some(EdgeKind::MinusZ);
        let lower = t >= 2 && d.contains(t - 1, r - 1);
        ok &= (kind_at(Coord::new(t - 1, r - 1)) == Some(EdgeKind::PlusHoriz)) == lower;
    }
    // every other column is the identity
    let special: Vec<Option<usize>> = [
        Coord::new(t, r),
        Coord::torus(r),
        Coord::torus(r.saturating_sub(1)),
        Coord::new(t.saturating_sub(1), r.saturating_sub(1)),
    ]
    .iter()
    .map(|&c| sys.slot(c))
    .collect();
    ok &= g
        .columns()
        .iter()
        .zip(path.edges())
        .filter(|(col, _)| !special.contains(&Some(col.slot())))
        .all(|(_, &e)| e == EdgeKind::Identity);
    let t_op = OperatorSum { terms: vec![monomial_of(&g, &path, q)] };
    let w_op = OperatorSum { terms: vec![w_monomial_of(&g, &path, q)] };
    Ok(WitnessOperator { r, path, t_op, w_op, pattern_holds: ok })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessNorm {
    pub gamma: LatticePoint,
    pub endpoint: LatticePoint,
    /// `‖[P, W(T)^{2n+1}] e_γ‖`.
    pub w_norm: f64,
    /// `‖[P, T^{2n+1}] e_γ‖`.
    pub t_norm: f64,
    pub endpoint_outside: bool,
    /// `γ′(0,r) = γ(0,r)+2n+1`, `γ′(0,r−1) = γ(0,r−1)−(2n+1)`, `γ′(t,r) = γ(t,r)`.
    pub identities_hold: bool,
}

/// `n = max |γ_i(t,r) + γ_i(0,r)|` over the coset base points.
pub fn coset_bound(d: &WeylDecomposition, candidate: &SignCandidate) -> i64 {
    let r = d.string_max(d.t());
    candidate.cosets.iter().map(|c| c.invariant(d.t(), r).abs()).max().unwrap_or(0)
}

/// `count` eligible points of the first coset: `γ(t,r) = 0`, the other
/// coset parameters running downward.
pub fn eligible_points(d: &WeylDecomposition, coset: &FreePlaneCoset, count: usize) -> Result<Vec<LatticePoint>> {
    let t = d.t();
    let r = d.string_max(t);
    let sys = d.coords();
    if count > 1 && d.ell() < 2 {
        return Err(Error::Inapplicable("only one eligible point when ℓ = 1".into()));
    }
    let base_tr = coset.base.at(sys, Coord::new(t, r));
    (0..count as i64)
        .map(|m| {
            let u: Vec<i64> = (1..=d.ell()).map(|i| if i == r { base_tr } else { -m }).collect();
            let g = coset.point(&u);
            sys.check(&g)?;
            Ok(g)
        })
        .collect()
}

pub fn noncompactness_sequence(
    d: &WeylDecomposition,
    candidate: &SignCandidate,
    count: usize,
    q: f64,
) -> Result<Vec<WitnessNorm>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let first = candidate.cosets.first().ok_or_else(|| Error::Inapplicable("candidate has no cosets".into()))?;
    let w = witness_operator(d, q)?;
    let n = coset_bound(d, candidate);
    let power = 2 * n + 1;
    let sys = d.coords();
    let (t, r) = (d.t(), w.r);
    let points = eligible_points(d, first, count)?;
    Ok(points
        .par_iter()
        .map(|g| {
            let e = StateVector::basis(g.clone());
            let comm = |op: &OperatorSum| {
                let mut x = e.clone();
                for _ in 0..power {
                    x = op.apply_exact(&x);
                }
                let mut c = project(candidate, &x);
                c.axpy(Complex64::new(-1.0, 0.0), &op_power(op, &project(candidate, &e), power));
                (c.norm(), x)
            };
            let (w_norm, image) = comm(&w.w_op);
            let (t_norm, _) = comm(&w.t_op);
            let endpoint = image.support().first().map(|p| (*p).clone()).unwrap_or_else(|| g.clone());
            let mut ok = endpoint.at(sys, Coord::torus(r)) == g.at(sys, Coord::torus(r)) + power
                && endpoint.at(sys, Coord::new(t, r)) == g.at(sys, Coord::new(t, r));
            if r >= 2 {
                ok &= endpoint.at(sys, Coord::torus(r - 1)) == g.at(sys, Coord::torus(r - 1)) - power;
            }
            WitnessNorm {
                gamma: g.clone(),
                endpoint_outside: !candidate.contains(&endpoint),
                endpoint,
                w_norm,
                t_norm,
                identities_hold: ok,
            }
        })
        .collect())
}

fn op_power(op: &OperatorSum, v: &StateVector, k: i64) -> StateVector {
    let mut x = v.clone();
    for _ in 0..k {
        x = op.apply_exact(&x);
    }
    x
}

/// `∏_{m≥0} √(1 − q^{2m+2})`, the infimum of the `T`-version norms.
pub fn t_norm_lower_bound(q: f64) -> f64 {
    (0..200).map(|m| (1.0 - q.powi(2 * m + 2)).sqrt()).product()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateVerdict {
    pub cosets: usize,
    pub trivial: bool,
    pub norms: Vec<WitnessNorm>,
    pub refuted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// No generator repeats: the representation behaves like `SU_q(2)`.
    Degenerate { omega: String, reason: String },
    Report {
        omega: String,
        c0_growth: Vec<usize>,
        c0_ladder_paths: usize,
        c1_escape_ok: bool,
        coordinate_escape_ok: bool,
        coset_dichotomy_ok: bool,
        candidates: Vec<CandidateVerdict>,
        consistent: bool,
    },
}

impl Verdict {
    pub fn consistent(&self) -> bool {
        match self {
            Verdict::Degenerate { .. } => true,
            Verdict::Report { consistent, .. } => *consistent,
        }
    }
}

/// Bundles the ladder evidence and the witness sequences for each candidate.
pub fn verdict(
    d: &WeylDecomposition,
    window: &TruncationSpec,
    candidates: &[SignCandidate],
    count: usize,
) -> Result<Verdict> {
    let omega = d.to_word_text();
    let constants = match axis_constants(d) {
        Err(Error::NoRepeatedGenerator) => {
            return Ok(Verdict::Degenerate {
                omega,
                reason: "no generator repeats across strings; the candidate spectral triples are those of SU_q(2)"
                    .into(),
            })
        }
        other => other?,
    };
    if d.ell() < 2 {
        return Ok(Verdict::Degenerate { omega, reason: "rank 1: SU_q(2)".into() });
    }
    let sys = d.coords();
    let diagram = build_diagram(d, &BTreeSet::new())?;
    let windows: Vec<TruncationSpec> =
        (2..=window.n_max.max(2)).map(|m| TruncationSpec { n_max: m, z_max: m, margin: 1, q: window.q }).collect();
    let curve = sign_determining_probe(&diagram, &c0_sign_partition(d)?, &windows);
    let ladder = ladder_c0(d, 3, None)?;

    let f = AxisFunctionals::new(d)?;
    let seed = sys.point(&[(Coord::new(constants.j_max, constants.i_min), 2)])?;
    let c1_ok = c1_escape(d, &seed, 1).map(|p| f.c1(&p.end) == 2 && f.c0(&p.end) > 1).unwrap_or(false);
    let esc_ok = coordinate_escape(d, &seed, 1).map(|p| f.c1(&p.end) == 4).unwrap_or(false);

    let small = TruncationSpec { n_max: 1, z_max: 1, margin: 1, q: window.q };
    let pts = small.points(sys);
    let dichotomy_ok = pts.iter().all(|a| {
        let ca = FreePlaneCoset::new(d, a.clone()).expect("valid point");
        pts.iter().all(|b| {
            let cb = FreePlaneCoset::new(d, b.clone()).expect("valid point");
            ca.same_as(&cb) == cb.same_as(&ca)
                && (ca.same_as(&cb) || !pts.iter().any(|x| ca.contains(x) && cb.contains(x)))
        })
    });

    let mut out = Vec::new();
    for c in candidates {
        if c.is_trivial() {
            out.push(CandidateVerdict { cosets: 0, trivial: true, norms: Vec::new(), refuted: false });
            continue;
        }
        let norms = noncompactness_sequence(d, c, count, window.q)?;
        let refuted = norms.iter().all(|n| (n.w_norm - 1.0).abs() <= 1e-12 && n.endpoint_outside && n.identities_hold);
        out.push(CandidateVerdict { cosets: c.cosets.len(), trivial: false, norms, refuted });
    }
    let consistent = curve.is_strictly_increasing()
        && ladder.len() == 3
        && ladder.is_vertex_disjoint()
        && c1_ok
        && esc_ok
        && dichotomy_ok
        && out.iter().all(|c| c.trivial || c.refuted);
    Ok(Verdict::Report {
        omega,
        c0_growth: curve.counts(),
        c0_ladder_paths: ladder.len(),
        c1_escape_ok: c1_ok,
        coordinate_escape_ok: esc_ok,
        coset_dichotomy_ok: dichotomy_ok,
        candidates: out,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> WeylDecomposition {
        WeylDecomposition::from_word_text("(s1 s2)(s1)", 2).unwrap()
    }

    #[test]
    fn projection_laws() {
        let d = small();
        let sys = d.coords();
        let cand = SignCandidate::new(vec![FreePlaneCoset::new(&d, sys.zero()).unwrap()]);
        let inside = sys.zero();
        let outside = sys.parse_point("(0,1)=1").unwrap();
        let mut v = StateVector::basis(inside.clone());
        assert_eq!(project(&cand, &v), v);
        assert!(project(&cand, &StateVector::basis(outside.clone())).0.is_empty());
        v.add(outside, Complex64::new(2.0, 0.0));
        let p = project(&cand, &v);
        assert_eq!(project(&cand, &p), p);
        assert_eq!(p, StateVector::basis(inside));
    }

    #[test]
    fn witness_rank_four() {
        let d = WeylDecomposition::from_word_text("(s2 s3 s4)(s3)(s2)(s1)", 4).unwrap();
        let w = witness_operator(&d, 0.5).unwrap();
        assert_eq!(w.r, 4);
        assert!(w.pattern_holds);
        let sys = d.coords();
        assert_eq!(
            sys.sparse(w.path.vector()),
            vec![(Coord::new(3, 3), 1), (Coord::torus(3), -1), (Coord::torus(4), 1)]
        );
    }

    #[test]
    fn witness_s1() {
        let d = WeylDecomposition::from_word_text("s1", 1).unwrap();
        let w = witness_operator(&d, 0.5).unwrap();
        assert_eq!(w.r, 1);
        assert_eq!(w.t_op.len(), 1);
        assert!(w.pattern_holds);
    }

    #[test]
    fn lower_bound() {
        assert!(t_norm_lower_bound(0.5) > 0.8);
        assert!(t_norm_lower_bound(0.5) < 0.83);
    }

    #[test]
    fn sequence_basic() {
        let d = small();
        let cand = SignCandidate::new(vec![FreePlaneCoset::new(&d, d.coords().zero()).unwrap()]);
        assert!(noncompactness_sequence(&d, &cand, 0, 0.5).unwrap().is_empty());
        let s = noncompactness_sequence(&d, &cand, 4, 0.5).unwrap();
        assert_eq!(s.len(), 4);
        for n in s {
            assert!((n.w_norm - 1.0).abs() <= 1e-12);
            assert!(n.t_norm >= 0.8);
            assert!(n.identities_hold && n.endpoint_outside);
        }
    }

    #[test]
    fn degenerate() {
        let d = WeylDecomposition::from_word_text("s1", 1).unwrap();
        let v = verdict(&d, &TruncationSpec::default(), &[], 10).unwrap();
        assert!(matches!(v, Verdict::Degenerate { .. }));
    }

    #[test]
    fn trivial_candidate() {
        let d = small();
        let w = TruncationSpec::new(3, 3, 1, 0.5).unwrap();
        let v = verdict(&d, &w, &[SignCandidate::new(Vec::new())], 3).unwrap();
        match v {
            Verdict::Report { candidates, .. } => assert!(candidates[0].trivial),
            _ => panic!("expected a report"),
        }
    }
}
