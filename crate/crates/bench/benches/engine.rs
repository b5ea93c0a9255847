use std::collections::BTreeSet;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use ladder_core::diagram::build_diagram;
use ladder_core::expr::DiracCandidate;
use ladder_core::growth::{bdd3_sup, sign_determining_probe, GrowthGraph};
use ladder_core::moves::enumerate_all_moves;
use ladder_core::sweep::{c0_sign_partition, sweep4};
use ladder_core::weyl::{decompose, WeylElement};
use ladder_core::{Representation, TruncationSpec, WeylDecomposition};

const RANK_FOUR: &str = "(s2 s3 s4)(s3)(s2)(s1)";
const SMALL: &str = "(s1 s2)(s1)";

fn omega(text: &str, ell: usize) -> WeylDecomposition {
    WeylDecomposition::from_word_text(text, ell).unwrap()
}

fn decomposition(c: &mut Criterion) {
    let all = WeylElement::all(5).unwrap();
    c.bench_function("decompose all of S6", |b| {
        b.iter(|| all.iter().map(|w| decompose(black_box(w)).length()).sum::<usize>())
    });
}

fn moves(c: &mut Criterion) {
    let d = omega(RANK_FOUR, 4);
    let g = build_diagram(&d, &BTreeSet::new()).unwrap();
    c.bench_function("enumerate moves (rank-four ω)", |b| b.iter(|| enumerate_all_moves(black_box(&g)).len()));
}

fn unitarity(c: &mut Criterion) {
    let d = omega(SMALL, 2);
    let rep = Representation::new(&d, 0.5).unwrap();
    let mut group = c.benchmark_group("unitarity defect");
    group.sample_size(10);
    for n in [2, 3] {
        let w = TruncationSpec::new(n, n, 1, 0.5).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &w, |b, w| b.iter(|| rep.max_unitarity_defect(w)));
    }
    group.finish();
}

fn bdd3(c: &mut Criterion) {
    let d = omega(SMALL, 2);
    let g = build_diagram(&d, &BTreeSet::new()).unwrap();
    let dirac = DiracCandidate::sum_abs(d.coords());
    let w = TruncationSpec::new(3, 3, 1, 0.5).unwrap();
    let moves = enumerate_all_moves(&g);
    c.bench_function("bdd3 sup, all moves, window 3", |b| {
        b.iter(|| moves.iter().map(|p| bdd3_sup(&dirac, &g, p, &w).operator).fold(0.0, f64::max))
    });
}

fn growth(c: &mut Criterion) {
    let d = omega(SMALL, 2);
    let g = build_diagram(&d, &BTreeSet::new()).unwrap();
    let part = c0_sign_partition(&d).unwrap();
    let mut group = c.benchmark_group("growth graph");
    group.sample_size(10);
    for n in [2, 3] {
        let w = TruncationSpec::new(n, n, 1, 0.5).unwrap();
        group.bench_with_input(BenchmarkId::new("build", n), &w, |b, w| {
            b.iter(|| GrowthGraph::build(&g, w).edge_count())
        });
        let graph = GrowthGraph::build(&g, &w);
        group.bench_with_input(BenchmarkId::new("max flow", n), &graph, |b, graph| {
            b.iter(|| graph.disjoint_paths(&part).0)
        });
    }
    let windows: Vec<TruncationSpec> = (2..=3).map(|n| TruncationSpec::new(n, n, 1, 0.5).unwrap()).collect();
    group.bench_function("probe 2..3", |b| b.iter(|| sign_determining_probe(&g, &part, &windows).counts()));
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let d = omega(RANK_FOUR, 4);
    let gamma = d.coords().parse_point("(4,2)=1,(4,3)=2,(3,3)=1,(2,2)=2,(0,1)=-1,(0,2)=-1,(0,3)=3").unwrap();
    c.bench_function("sweep4 (first table)", |b| b.iter(|| sweep4(&d, black_box(&gamma)).unwrap().unit_steps()));
}

criterion_group!(benches, decomposition, moves, unitarity, bdd3, growth, sweeps);
criterion_main!(benches);
