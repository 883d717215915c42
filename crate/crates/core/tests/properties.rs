use proptest::prelude::*;

use matgroup_interp::word::{decompose_sl, sigma_pad, ut_from_coefficients, ut_normal_form, SigmaSchedule};
use matgroup_interp::{Matrix, RingSpec};

fn ring_strategy() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        Just(RingSpec::prime_field(2).unwrap()),
        Just(RingSpec::prime_field(3).unwrap()),
        Just(RingSpec::prime_field(7).unwrap()),
        Just(RingSpec::prime_field(13).unwrap()),
        Just(RingSpec::modular(6).unwrap()),
        Just(RingSpec::modular(12).unwrap()),
    ]
}

fn field_strategy() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        Just(RingSpec::prime_field(2).unwrap()),
        Just(RingSpec::prime_field(3).unwrap()),
        Just(RingSpec::prime_field(5).unwrap()),
        Just(RingSpec::prime_field(7).unwrap()),
    ]
}

/// A product of transvections given as (i, j, value) triples.
fn sl_from(ring: RingSpec, n: usize, moves: &[(usize, usize, i64)]) -> Matrix {
    let mut m = Matrix::identity(ring, n);
    for &(i, j, a) in moves {
        let (i, j) = (i % n + 1, j % n + 1);
        if i != j {
            m = m.mul(&Matrix::transvection(ring, n, i, j, &ring.from_i64(a)).unwrap());
        }
    }
    m
}

fn matrix_from(ring: RingSpec, n: usize, vals: &[i64]) -> Matrix {
    Matrix::from_entries(ring, n, vals[..n * n].iter().map(|&v| ring.from_i64(v)).collect()).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(r in ring_strategy(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (a, b, c) = (r.from_i64(a), r.from_i64(b), r.from_i64(c));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        if r.is_unit(&a) {
            prop_assert!(r.is_one(&r.mul(&a, &r.inv(&a).unwrap())));
        } else {
            prop_assert!(r.inv(&a).is_err());
        }
    }

    #[test]
    fn rational_field_axioms(a in -20i64..20, b in 1i64..20, c in -20i64..20, d in 1i64..20) {
        let q = RingSpec::Rationals;
        let x = q.from_rational(a, b).unwrap();
        let y = q.from_rational(c, d).unwrap();
        prop_assert_eq!(q.mul(&x, &y), q.mul(&y, &x));
        prop_assert_eq!(q.sub(&q.add(&x, &y), &y), x.clone());
        if !q.is_zero(&x) {
            prop_assert!(q.is_one(&q.mul(&x, &q.inv(&x).unwrap())));
        }
    }

    #[test]
    fn inverse_of_product(
        r in field_strategy(),
        n in 2usize..5,
        a in prop::collection::vec(-9i64..9, 16),
        b in prop::collection::vec(-9i64..9, 16),
    ) {
        let x = matrix_from(r, n, &a);
        let y = matrix_from(r, n, &b);
        if x.is_invertible() && y.is_invertible() {
            let lhs = x.mul(&y).inv().unwrap();
            let rhs = y.inv().unwrap().mul(&x.inv().unwrap());
            prop_assert_eq!(lhs, rhs);
        } else {
            prop_assert!(x.mul(&y).inv().is_err());
        }
    }

    #[test]
    fn decompose_round_trip(
        r in field_strategy(),
        n in 2usize..5,
        moves in prop::collection::vec((0usize..4, 0usize..4, -6i64..6), 0..30),
    ) {
        let g = sl_from(r, n, &moves);
        let w = decompose_sl(&g).unwrap();
        prop_assert_eq!(w.eval().unwrap(), g);
    }

    #[test]
    fn sigma_pad_preserves_value(
        r in field_strategy(),
        n in 2usize..5,
        moves in prop::collection::vec((0usize..4, 0usize..4, -6i64..6), 0..30),
    ) {
        let g = sl_from(r, n, &moves);
        let w = decompose_sl(&g).unwrap();
        let s = SigmaSchedule::default_for(n);
        let padded = sigma_pad(&w, &s).unwrap();
        prop_assert_eq!(padded.len(), s.len());
        prop_assert_eq!(padded.eval().unwrap(), g);
    }

    #[test]
    fn ut_normal_form_round_trip(
        r in ring_strategy(),
        n in 2usize..6,
        vals in prop::collection::vec(-20i64..20, 15),
    ) {
        let mut m = Matrix::identity(r, n);
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.set_entry(i, j, r.from_i64(vals[idx]));
                idx += 1;
            }
        }
        let coeffs = ut_normal_form(&m).unwrap();
        prop_assert_eq!(coeffs.len(), n * (n - 1) / 2);
        prop_assert_eq!(ut_from_coefficients(r, n, &coeffs), m);
    }
}
