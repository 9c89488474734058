//! Ring and field laws of the exact scalars, and exact linear algebra.

use blobrep::exactmath::{
    bar, inverse, quantum_integer, rank, rat, Cyclotomic, ExactMatrix, Field, Laurent, Rational,
};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-6i32..=6, -4i64..=4), 0..5).prop_map(|terms| {
        let mut p = Laurent::zero();
        for (k, c) in terms {
            p = &p + &Laurent::monomial(k, c);
        }
        p
    })
}

fn cyclotomic(conductor: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-5i64..=5, 1i64..=3), 0..8).prop_map(move |cs| {
        let poly = cs
            .into_iter()
            .map(|(n, d)| Rational::new(n.into(), d.into()))
            .collect();
        Cyclotomic::from_poly(conductor, poly)
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(rat), cols), rows)
}

fn product(a: &[Vec<Rational>], b: &ExactMatrix<Rational>, n: usize) -> Vec<Vec<Rational>> {
    let zero = rat(0);
    (0..a.len())
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| &a[i][k] * b.get(k, j).unwrap_or(&zero))
                        .sum()
                })
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Laurent::one(), a.clone());
    }

    #[test]
    fn bar_is_a_ring_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(bar(&bar(&a)), a.clone());
        prop_assert_eq!(bar(&(&a * &b)), &bar(&a) * &bar(&b));
        prop_assert_eq!(bar(&(&a + &b)), &bar(&a) + &bar(&b));
        prop_assert_eq!(bar(&a).eval_one(), a.eval_one());
    }

    #[test]
    fn cyclotomic_field_laws(a in cyclotomic(8), b in cyclotomic(8), c in cyclotomic(8)) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        if !a.is_zero_elem() {
            prop_assert_eq!(a.mul_ref(&a.inv_ref()), a.one_like());
        }
    }

    #[test]
    fn cyclotomic_inverse_at_odd_conductor(a in cyclotomic(5)) {
        prop_assume!(!a.is_zero_elem());
        prop_assert_eq!(a.inv_ref().inv_ref(), a);
    }

    #[test]
    fn rank_is_transpose_invariant(rows in 1usize..6, cols in 1usize..6, seed in matrix(6, 6)) {
        let data: Vec<Vec<Rational>> = seed.iter().take(rows).map(|r| r[..cols].to_vec()).collect();
        let m = ExactMatrix::from_rows(rows, cols, &data);
        let r = rank(&m).unwrap();
        prop_assert!(r <= rows.min(cols));
        prop_assert_eq!(r, rank(&m.transpose()).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(data in matrix(4, 4)) {
        let m = ExactMatrix::from_rows(4, 4, &data);
        match inverse(&m) {
            Ok(inv) => {
                prop_assert_eq!(rank(&m).unwrap(), 4);
                let id: Vec<Vec<Rational>> =
                    (0..4).map(|i| (0..4).map(|j| rat((i == j) as i64)).collect()).collect();
                prop_assert_eq!(product(&data, &inv, 4), id);
            }
            Err(_) => prop_assert!(rank(&m).unwrap() < 4),
        }
    }
}

#[test]
fn quantum_integers_satisfy_the_recursion() {
    for c in [5, 8, 10, 12] {
        let q = Cyclotomic::generator(c);
        let two = quantum_integer(2, &q);
        for k in 1..12 {
            let lhs = two.mul_ref(&quantum_integer(k, &q));
            let rhs = quantum_integer(k + 1, &q).add_ref(&quantum_integer(k - 1, &q));
            assert_eq!(lhs, rhs, "conductor {c}, k = {k}");
        }
        // q is a primitive c-th root for even c = 2e, so [e] = 0.
        if c % 2 == 0 {
            assert!(quantum_integer(i64::from(c / 2), &q).is_zero_elem());
        }
    }
}
