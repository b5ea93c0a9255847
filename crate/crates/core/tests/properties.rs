use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;

use ladder_core::diagram::build_diagram;
use ladder_core::growth::{guaranteed_edges, sign_determining_probe, GrowthGraph, Partition};
use ladder_core::moves::{enumerate_all_moves, horizontal_move};
use ladder_core::repr::{monomial_of, w_monomial_of, TruncationSpec};
use ladder_core::sweep::{in_complementary_axis, sweep4, sweep4_target, AxisFunctionals, FreePlaneCoset};
use ladder_core::weyl::{decompose, WeylElement};
use ladder_core::{Coord, LatticePoint, WeylDecomposition};

const OMEGAS: &[(&str, usize)] =
    &[("s1", 1), ("(s1 s2)(s1)", 2), ("(s2)(s1 s2)", 2), ("(s2 s3)(s1 s2)(s1)", 3), ("(s2 s3 s4)(s3)(s2)(s1)", 4)];

fn omega(idx: usize) -> WeylDecomposition {
    let (w, ell) = OMEGAS[idx % OMEGAS.len()];
    WeylDecomposition::from_word_text(w, ell).unwrap()
}

/// A point with ℕ entries in `0..=n` and torus entries in `-z..=z`,
/// drawn from a flat seed vector.
fn point_from(d: &WeylDecomposition, seed: &[i64], n: i64, z: i64) -> LatticePoint {
    let sys = d.coords();
    LatticePoint(
        (0..sys.dim())
            .map(|s| {
                let x = seed[s % seed.len()];
                if sys.is_n_slot(s) {
                    x.rem_euclid(n + 1)
                } else {
                    x.rem_euclid(2 * z + 1) - z
                }
            })
            .collect(),
    )
}

/// Forces `γ ∈ 𝒞`: for each `i`, zeroes one `J_i` coordinate chosen by
/// `pick`.
fn into_axis(d: &WeylDecomposition, g: &mut LatticePoint, pick: &[usize]) {
    let sys = d.coords();
    for i in 1..=d.ell() {
        let js = d.j_set(i);
        if !js.is_empty() {
            let j = js[pick[i % pick.len()] % js.len()];
            g.0[sys.slot(Coord::new(j, i)).unwrap()] = 0;
        }
    }
}

fn seed() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 12)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn cosets_are_equal_or_disjoint(idx in 0usize..5, a in seed(), b in seed(), u in prop::collection::vec(-3i64..3, 4)) {
        let d = omega(idx);
        let ga = point_from(&d, &a, 4, 4);
        let gb = point_from(&d, &b, 4, 4);
        let ca = FreePlaneCoset::new(&d, ga.clone()).unwrap();
        let cb = FreePlaneCoset::new(&d, gb.clone()).unwrap();
        prop_assert_eq!(ca.same_as(&cb), cb.same_as(&ca));
        prop_assert_eq!(ca.same_as(&cb), ca.contains(&gb));
        let same_invariants = (1..=d.ell()).all(|i| d.j_set(i).iter().all(|&k| ca.invariant(k, i) == cb.invariant(k, i)));
        prop_assert_eq!(ca.same_as(&cb), same_invariants);
        // members stay members and keep the invariants
        let p = ca.point(&u[..d.ell()]);
        if p.is_valid(d.coords()) {
            prop_assert!(ca.contains(&p));
            let cp = FreePlaneCoset::new(&d, p).unwrap();
            prop_assert!(cp.same_as(&ca));
        }
    }

    #[test]
    fn w_coefficients_are_pure_powers(idx in 0usize..5, a in seed(), pick in any::<prop::sample::Index>(), q in 0.05f64..0.95) {
        let d = omega(idx);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        let moves = enumerate_all_moves(&g);
        let p = &moves[pick.index(moves.len())];
        let gamma = point_from(&d, &a, 5, 5);
        let w = w_monomial_of(&g, p, q);
        let t = monomial_of(&g, p, q);
        match (w.apply_basis(&gamma), t.apply_basis(&gamma)) {
            (Some((gw, cw)), Some((gt, ct))) => {
                prop_assert_eq!(&gw, &gt);
                prop_assert_eq!(gw.sub(&gamma), p.vector().to_vec());
                let expect = q.powi((p.c_weight(&gamma) + p.up_count() as i64) as i32);
                prop_assert!((cw.norm() - expect).abs() <= 1e-12 * expect.max(1.0));
                prop_assert!(ct.norm() <= cw.norm() + 1e-15);
            }
            (None, None) => {}
            (w, t) => prop_assert!(false, "W and T disagree on support: {:?} vs {:?}", w, t),
        }
    }

    #[test]
    fn c_weight_is_constant_along_guaranteed_edges(idx in 0usize..4, a in seed()) {
        let d = omega(idx);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        let window = TruncationSpec::new(4, 4, 1, 0.5).unwrap();
        let gamma = point_from(&d, &a, 4, 4);
        let moves = enumerate_all_moves(&g);
        for e in guaranteed_edges(&g, &gamma, &window) {
            let p = moves.iter().find(|p| p.id() == e.id).unwrap();
            prop_assert_eq!(p.c_weight(&gamma), 0);
            prop_assert_eq!(p.c_weight(&e.to), 0);
            prop_assert_eq!(e.to.sub(&gamma), p.vector().iter().map(|x| x * e.sign).collect::<Vec<_>>());
        }
    }

    #[test]
    fn horizontal_moves_are_always_guaranteed(idx in 0usize..4, a in seed()) {
        let d = omega(idx);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        let window = TruncationSpec::new(4, 4, 1, 0.5).unwrap();
        let sys = d.coords();
        let gamma = point_from(&d, &a, 4, 4);
        let edges: BTreeSet<LatticePoint> = guaranteed_edges(&g, &gamma, &window).into_iter().map(|e| e.to).collect();
        for r in 1..=d.ell() + 1 {
            let h = horizontal_move(&g, r).unwrap();
            prop_assert!(h.diagonal_slots().is_empty());
            for sign in [1, -1] {
                let to = gamma.shifted(h.vector(), sign);
                if to.is_valid(sys) && window.contains(sys, &to) && to != gamma {
                    prop_assert!(edges.contains(&to), "H{} x{} missing", r, sign);
                }
            }
        }
    }

    #[test]
    fn sweep4_lands_on_the_axis_point(idx in 1usize..5, a in seed(), pick in prop::collection::vec(0usize..4, 5)) {
        let d = omega(idx);
        let sys = d.coords();
        let mut gamma = point_from(&d, &a, 3, 3);
        into_axis(&d, &mut gamma, &pick);
        prop_assert!(in_complementary_axis(&d, &gamma));
        let f = AxisFunctionals::new(&d).unwrap();
        let path = sweep4(&d, &gamma).unwrap();
        prop_assert!(path.is_consistent(sys));
        prop_assert_eq!(&path.start, &gamma);
        prop_assert_eq!(&path.end, &sweep4_target(&d, f.c0(&gamma)).unwrap());
        prop_assert!(path.trace.iter().all(|g| f.c0(g) == f.c0(&gamma) && g.is_valid(sys)));
        let back = path.reversed();
        prop_assert!(back.is_consistent(sys));
        prop_assert_eq!(&back.end, &gamma);
    }

    #[test]
    fn max_flow_matches_min_vertex_cut(n in 2usize..12, edges in prop::collection::vec((0usize..12, 0usize..12), 0..30), mask in 0u32..4096) {
        let vertices: Vec<LatticePoint> = (0..n as i64).map(|i| LatticePoint(vec![i])).collect();
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
        let graph = GrowthGraph::from_edges(vertices, &edges);
        let part = Partition::new("mask", move |g| mask >> g.0[0] & 1 == 1);
        let (count, ladder) = graph.disjoint_paths(&part);
        let plus: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        prop_assert_eq!(count, min_vertex_cut(n, &edges, &plus));
        prop_assert_eq!(ladder.len(), count);
        prop_assert!(ladder.is_vertex_disjoint());
        for path in &ladder.paths {
            let idx: Vec<usize> = path.iter().map(|s| s.point.0[0] as usize).collect();
            prop_assert!(plus[idx[0]] && !plus[*idx.last().unwrap()]);
            for w in idx.windows(2) {
                prop_assert!(edges.contains(&(w[0], w[1])) || edges.contains(&(w[1], w[0])));
            }
        }
    }
}

/// Smallest vertex set meeting every path from the `+` class to the `−`
/// class, by subset enumeration.
fn min_vertex_cut(n: usize, edges: &[(usize, usize)], plus: &[bool]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let separated = |cut: u32| {
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| plus[v] && cut >> v & 1 == 0).collect();
        for &v in &queue {
            seen[v] = true;
        }
        while let Some(u) = queue.pop_front() {
            if !plus[u] {
                return false;
            }
            for &v in &adj[u] {
                if !seen[v] && cut >> v & 1 == 0 {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        true
    };
    (0u32..1 << n).filter(|&c| separated(c)).map(|c| c.count_ones() as usize).min().unwrap()
}

#[test]
fn growth_counts_are_monotone_in_the_window() {
    let d = WeylDecomposition::from_word_text("s1", 1).unwrap();
    let g = build_diagram(&d, &BTreeSet::new()).unwrap();
    let windows: Vec<TruncationSpec> = (2..=5).map(|n| TruncationSpec::new(n, n, 1, 0.5).unwrap()).collect();
    for (name, part) in [
        ("n even", Partition::new("n even", |g: &LatticePoint| g.0[0] % 2 == 0)),
        ("z positive", Partition::new("z positive", |g: &LatticePoint| g.0[1] > 0)),
        ("sum", Partition::new("sum", |g: &LatticePoint| g.0[0] + g.0[1] > 1)),
    ] {
        let curve = sign_determining_probe(&g, &part, &windows);
        assert!(curve.is_monotone(), "{name}: {:?}", curve.counts());
    }
}

#[test]
fn flow_agrees_with_cut_on_a_real_growth_graph() {
    let d = WeylDecomposition::from_word_text("s1", 1).unwrap();
    let g = build_diagram(&d, &BTreeSet::new()).unwrap();
    let window = TruncationSpec::new(2, 2, 1, 0.5).unwrap();
    let graph = GrowthGraph::build(&g, &window);
    let n = graph.vertices().len();
    assert!(n <= 20, "{n} vertices");
    let mut edges = Vec::new();
    for u in 0..n {
        edges.extend(graph.neighbours(u).filter(|&v| u < v).map(|v| (u, v)));
    }
    let part = Partition::new("z > 0", |g: &LatticePoint| g.0[1] > 0);
    let plus: Vec<bool> = graph.vertices().iter().map(|g| part.is_plus(g)).collect();
    let (count, _) = graph.disjoint_paths(&part);
    assert_eq!(count, min_vertex_cut(n, &edges, &plus));
}

#[test]
fn every_element_of_small_groups_has_consistent_axis_data() {
    for ell in 2..=4 {
        for w in WeylElement::all(ell).unwrap() {
            let d = decompose(&w);
            if let Ok(f) = AxisFunctionals::new(&d) {
                let zero = d.coords().zero();
                assert_eq!(f.c0(&zero), 0);
                assert_eq!(f.c1(&zero), 0);
            }
        }
    }
}
