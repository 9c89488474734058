//! Cell modules, diamonds and the identity suite on explicit modules.

use blobrep::alcoves::{singular_labels, GeometryParams};
use blobrep::characters::simple_dimensions;
use blobrep::exactmath::{rank, rat};
use blobrep::klr::{
    build_specht, build_specht_with, diamond, extension_space, gram_matrix, parameter_sets,
    verify_identity, EtaFamily, KlrEnv, Status, IDENTITIES,
};
use blobrep::weights::{all_bipartitions, Bipartition, WordRule};
use num_bigint::BigInt;

fn geometry() -> GeometryParams {
    GeometryParams::new(4, 0, 2).unwrap()
}

fn statuses(n: usize, rule: WordRule) -> Vec<(String, Status, Option<i32>)> {
    let g = geometry();
    let fam = EtaFamily::with_rule(n, &g, rule).unwrap();
    let env = fam.environment().unwrap();
    let mut out = Vec::new();
    for id in IDENTITIES {
        for p in parameter_sets(id.short, &fam).unwrap() {
            let r = verify_identity(id.short, p, &fam, &env).unwrap();
            out.push((format!("{} {:?}", r.identity, r.params), r.status, r.sign));
        }
    }
    out
}

#[test]
fn gram_ranks_match_simple_dimensions_at_e5() {
    let g = GeometryParams::new(5, 0, 2).unwrap();
    for n in 1..=7 {
        let dims = simple_dimensions(n, &g).unwrap();
        for l in all_bipartitions(n) {
            let r = rank(&gram_matrix(&build_specht(&l, &g).unwrap())).unwrap();
            assert_eq!(BigInt::from(r), dims[&l], "n={n} {l}");
        }
    }
}

#[test]
fn reduced_word_choice_does_not_change_the_modules() {
    let g = geometry();
    for l in all_bipartitions(7) {
        let a = build_specht_with(&l, &g, WordRule::SmallestDescent).unwrap();
        let b = build_specht_with(&l, &g, WordRule::LargestDescent).unwrap();
        assert_eq!(
            rank(&gram_matrix(&a)).unwrap(),
            rank(&gram_matrix(&b)).unwrap(),
            "{l}"
        );
    }
}

#[test]
fn identity_suite_is_robust_under_the_word_rule() {
    for n in [6, 10] {
        let a = statuses(n, WordRule::SmallestDescent);
        let b = statuses(n, WordRule::LargestDescent);
        assert_eq!(a, b, "n={n}");
        assert!(a.iter().all(|(_, s, _)| *s != Status::Fails));
    }
}

#[test]
fn layers_of_the_witness_have_one_dimensional_ext() {
    let g = geometry();
    let fam = EtaFamily::new(10, &g).unwrap();
    let mut top = build_specht(&fam.labels[0], &g).unwrap().to_graded();
    for k in 1..=fam.m {
        let cell = build_specht(&fam.labels[k], &g).unwrap();
        let space = extension_space(&cell, k as i64, &top).unwrap();
        assert_eq!(space.ext_dim(), 1, "layer {k}");
        top = blobrep::klr::glue(
            &cell,
            k as i64,
            &top,
            &space,
            &blobrep::klr::generic_cocycle(&space),
        )
        .unwrap();
    }
}

#[test]
fn diamond_squares_to_the_loop_parameter() {
    let g = geometry();
    let eta = Bipartition::new(10, 0);
    assert_eq!(singular_labels(&eta, &g).unwrap().len(), 3);
    let env = KlrEnv::build(10, &g).unwrap();
    let u = env.act(&diamond(&eta, 1, &g).unwrap()).unwrap();
    assert!(!u.is_zero());
    // δ = 2(-1)^(e-1) = -2 at e = 4.
    assert_eq!(u.compose(&u), u.scaled(&rat(-2)));
}

#[test]
fn diamonds_out_of_range_are_rejected() {
    let g = geometry();
    assert!(diamond(&Bipartition::new(6, 0), 0, &g).is_err());
    assert!(diamond(&Bipartition::new(10, 0), 5, &g).is_err());
}

/// Double crossings on either side of a diamond need m >= 3, which first
/// happens at n = 14. Slow: run with `--ignored`.
#[test]
#[ignore]
fn double_crossing_lemmas_at_n14() {
    let g = geometry();
    let fam = EtaFamily::new(14, &g).unwrap();
    assert_eq!(fam.m, 3);
    let env = fam.environment().unwrap();
    for id in ["e", "f"] {
        let sets = parameter_sets(id, &fam).unwrap();
        assert!(!sets.is_empty());
        for p in sets {
            let r = verify_identity(id, p, &fam, &env).unwrap();
            assert_ne!(r.status, Status::Fails, "{id} {:?}", r.params);
        }
    }
}
