use blobrep::alcoves::GeometryParams;
use blobrep::characters::{graded_decomposition_matrix, tilting_delta_multiplicities, TiltingMode};
use blobrep::exactmath::rank;
use blobrep::klr::{build_specht, gram_matrix, jones_wenzl, EtaFamily, KlrEnv};
use blobrep::tlblob::{enumerate_basis, BlobCellModule, BlobElement, BlobParams};
use blobrep::weights::Bipartition;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn geometry() -> GeometryParams {
    GeometryParams::new(4, 0, 2).unwrap()
}

fn characters(c: &mut Criterion) {
    let g = geometry();
    let mut group = c.benchmark_group("characters");
    for n in [8, 12, 16] {
        group.bench_function(format!("decomp_n{n}"), |b| {
            b.iter(|| graded_decomposition_matrix(black_box(n), &g))
        });
        group.bench_function(format!("tilting_construction_n{n}"), |b| {
            b.iter(|| tilting_delta_multiplicities(black_box(n), &g, TiltingMode::Construction))
        });
    }
    group.finish();
}

fn specht(c: &mut Criterion) {
    let g = geometry();
    let mut group = c.benchmark_group("specht");
    group.sample_size(10);
    for (a, b2) in [(4, 4), (5, 5), (6, 4)] {
        let l = Bipartition::new(a, b2);
        group.bench_function(format!("build_{a}_{b2}"), |b| {
            b.iter(|| build_specht(black_box(&l), &g).unwrap())
        });
        let m = build_specht(&l, &g).unwrap();
        group.bench_function(format!("gram_rank_{a}_{b2}"), |b| {
            b.iter(|| rank(&gram_matrix(black_box(&m))).unwrap())
        });
    }
    group.finish();
}

fn projector(c: &mut Criterion) {
    let g = geometry();
    let mut group = c.benchmark_group("jones_wenzl");
    group.sample_size(10);
    let eta = Bipartition::new(10, 0);
    group.bench_function("jw_eta_n10", |b| {
        b.iter(|| jones_wenzl(black_box(&eta), &g).unwrap())
    });
    let env = KlrEnv::build(10, &g).unwrap();
    let jw = jones_wenzl(&eta, &g).unwrap();
    group.bench_function("act_jw_n10", |b| {
        b.iter(|| env.act(black_box(&jw)).unwrap())
    });
    let fam = EtaFamily::new(10, &g).unwrap();
    group.bench_function("layered_witness_n10", |b| {
        b.iter(|| fam.layered_witness().unwrap())
    });
    group.finish();
}

fn diagrams(c: &mut Criterion) {
    let p = BlobParams::new(4, 2).unwrap();
    let mut group = c.benchmark_group("diagrams");
    group.sample_size(10);
    group.bench_function("enumerate_n8", |b| b.iter(|| enumerate_basis(black_box(8))));
    let x = BlobElement::word(8, &[0, 1, 2, 3, 0, 5, 1], &p).unwrap();
    let y = BlobElement::word(8, &[4, 0, 6, 2, 1, 7, 0], &p).unwrap();
    group.bench_function("multiply_words_n8", |b| {
        b.iter(|| black_box(&x).mul(black_box(&y), &p).unwrap())
    });
    for w in [2, 0] {
        let m = BlobCellModule::new(w, 8, &p).unwrap();
        group.bench_function(format!("cyclotomic_gram_rank_n8_w{w}"), |b| {
            b.iter(|| rank(&black_box(&m).gram()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(kernels, characters, specht, projector, diagrams);
criterion_main!(kernels);
