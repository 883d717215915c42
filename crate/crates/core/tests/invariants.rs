use rayon::prelude::*;

use matgroup_interp::interp::{ring_iso_check, Host, InterpretedRing};
use matgroup_interp::matgroup::steinberg_suite;
use matgroup_interp::word::decompose_gl;
use matgroup_interp::{Matrix, RingSpec};

#[test]
fn steinberg_over_small_rings() {
    for ring in ["gf:2", "gf:3", "gf:5", "gf:7", "zmod:6"] {
        let r: RingSpec = ring.parse().unwrap();
        for n in [3, 4] {
            let rep = steinberg_suite(r, n).unwrap();
            assert!(rep.pass, "{ring} n={n}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn every_carrier_is_a_ring_copy() {
    for ring in ["gf:3", "zmod:6"] {
        let r: RingSpec = ring.parse().unwrap();
        for n in [3, 4] {
            for i in 1..=n {
                for k in (1..=n).filter(|&k| k != i) {
                    let rep = ring_iso_check(&InterpretedRing::new(r, n, Host::GL, i, k).unwrap()).unwrap();
                    assert!(rep.pass, "{ring} n={n} ({i},{k})");
                }
            }
        }
    }
}

#[test]
fn decompose_gl_on_all_of_gl3_gf5() {
    let r = RingSpec::prime_field(5).unwrap();
    let total = 5u32.pow(9);
    let (count, bad) = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut entries = Vec::with_capacity(9);
            for _ in 0..9 {
                entries.push(r.from_i64((idx % 5) as i64));
                idx /= 5;
            }
            let g = Matrix::from_entries(r, 3, entries).unwrap();
            let det = g.det();
            if r.is_zero(&det) {
                return (0u64, 0u64);
            }
            let w = decompose_gl(&g).unwrap();
            let beta_ok = match &w.diag {
                Some(d) => d.value == det,
                None => r.is_one(&det),
            };
            (1, u64::from(w.eval().unwrap() != g || !beta_ok))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    assert_eq!(count, 1_488_000);
    assert_eq!(bad, 0);
}
