//! Named verification suites, each producing one report for a ring and a
//! matrix size.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::cohom::{coboundary_from, cohom_suite, cocycle_violations, is_coboundary, FinAbGroup};
use crate::defsets::{a4_sequence_report, d1_power_identity, definable_report};
use crate::deform::deform_suite;
use crate::error::{Error, Result};
use crate::interp::{connecting_iso, ring_iso_check, Host, InterpretedRing};
use crate::matgroup::{enumerate_group, predicted_order, steinberg_suite, DEFAULT_CAP};
use crate::matrix::{GroupKind, Matrix};
use crate::report::Report;
use crate::ring::RingSpec;
use crate::word::{
    decompose_gl, decompose_sl, default_repeats, entry_polynomials, lower_central_series, sigma_pad,
    ut_from_coefficients, ut_normal_form, ut_power_member, width_of, word_length_bound, SigmaSchedule,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Steinberg,
    Decompose,
    Interp,
    Definable,
    A4,
    Cohom,
    Deform,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Steinberg,
        Suite::Decompose,
        Suite::Interp,
        Suite::Definable,
        Suite::A4,
        Suite::Cohom,
        Suite::Deform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Steinberg => "steinberg",
            Suite::Decompose => "decompose",
            Suite::Interp => "interp",
            Suite::Definable => "definable",
            Suite::A4 => "a4",
            Suite::Cohom => "cohom",
            Suite::Deform => "deform",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            cap: DEFAULT_CAP,
        }
    }
}

/// Runs a suite; operation errors inside a suite become failed checks,
/// while errors about the inputs themselves are returned.
pub fn run(suite: Suite, ring: RingSpec, n: usize, opts: SuiteOptions) -> Result<Report> {
    let mut report = match suite {
        Suite::Steinberg => steinberg_suite(ring, n)?,
        Suite::Decompose => decompose_suite(ring, n, opts)?,
        Suite::Interp => interp_suite(ring, n, opts)?,
        Suite::Definable => {
            ring.require_field()?;
            definable_report(ring, n, opts.cap)?
        }
        Suite::A4 => a4_suite(ring, n, opts)?,
        Suite::Cohom => cohom_full(opts)?,
        Suite::Deform => deform_suite(opts.cap)?,
        Suite::All => {
            let mut all = Report::new("all");
            for s in Suite::EACH {
                match run(s, ring, n, opts) {
                    Ok(r) => all.absorb(r),
                    Err(e) => all.record_error(s.name(), "suite runs for these parameters", &e),
                }
            }
            all
        }
    };
    report.param("ring", ring.to_string()).param("n", n as u64);
    if matches!(suite, Suite::Decompose | Suite::Interp | Suite::Cohom | Suite::All) {
        report.param("seed", opts.seed);
    }
    if suite != Suite::Steinberg {
        report.param("cap", opts.cap as u64);
    }
    Ok(report)
}

/// A product of random transvections; over Q the parameters are small
/// integers.
pub fn random_sl(ring: RingSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = Matrix::identity(ring, n);
    for _ in 0..2 * n * n {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..n);
        if j >= i {
            j += 1;
        }
        let a = match ring.order() {
            Some(q) => ring.from_i64(rng.gen_range(0..q as i64)),
            None => ring.from_i64(rng.gen_range(-3..=3)),
        };
        m = m.mul(&Matrix::transvection(ring, n, i, j, &a).expect("valid indices"));
    }
    m
}

/// A random invertible matrix: integer entries in [-9, 9] over Q,
/// uniform entries over a finite field.
pub fn random_gl(ring: RingSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let entries = (0..n * n)
            .map(|_| match ring.order() {
                Some(q) => ring.from_i64(rng.gen_range(0..q as i64)),
                None => ring.from_i64(rng.gen_range(-9..=9)),
            })
            .collect();
        let m = Matrix::from_entries(ring, n, entries).expect("sizes match");
        if m.is_invertible() {
            return m;
        }
    }
}

const SAMPLES: usize = 1000;

fn failures(report: &mut Report, check: &str, anchor: &str, cases: usize, failed: usize) {
    report.expect_eq(
        check,
        anchor,
        json!({"cases": cases, "failures": 0}),
        json!({"cases": cases, "failures": failed}),
    );
}

pub fn decompose_suite(ring: RingSpec, n: usize, opts: SuiteOptions) -> Result<Report> {
    ring.require_field()?;
    let mut report = Report::new("decompose");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let schedule = SigmaSchedule::default_for(n);
    report.param("schedule_repeats", schedule.repeats as u64);

    let sl_small = ring.is_finite() && predicted_order(ring, n, GroupKind::SL)? <= opts.cap as u128;
    let sl_elems: Vec<Matrix> = if sl_small {
        report.param("sl_mode", "exhaustive");
        enumerate_group(ring, n, GroupKind::SL, opts.cap)?.elements.into_iter().collect()
    } else {
        report.param("sl_mode", "sampled");
        (0..SAMPLES).map(|_| random_sl(ring, n, &mut rng)).collect()
    };
    let w = width_of(sl_elems.iter(), n)?;
    failures(&mut report, "sl_round_trip", "eval(decompose_sl(g)) = g", w.elements, w.round_trip_failures);
    report.record(
        "sl_length_bound",
        "decompose_sl uses at most (n-1)(n+2) letters",
        json!({"max": word_length_bound(n)}),
        json!({"max": w.max_length}),
        w.max_length <= word_length_bound(n),
    );
    report.record(
        "sl_schedule_fits",
        "every word fits the default schedule",
        json!({"repeats": default_repeats(n)}),
        json!({"max_runs": w.max_runs}),
        w.max_runs <= default_repeats(n),
    );
    let pad_fail = sl_elems
        .par_iter()
        .take(SAMPLES)
        .filter(|g| {
            let word = decompose_sl(g).expect("SL element");
            sigma_pad(&word, &schedule).and_then(|p| p.eval()).map(|m| m != **g).unwrap_or(true)
        })
        .count();
    failures(&mut report, "sigma_pad_preserves", "eval(sigma_pad(w, s)) = eval(w)", sl_elems.len().min(SAMPLES), pad_fail);

    let gl_small = ring.is_finite() && predicted_order(ring, n, GroupKind::GL)? <= opts.cap as u128;
    let gl_elems: Vec<Matrix> = if gl_small {
        report.param("gl_mode", "exhaustive");
        enumerate_group(ring, n, GroupKind::GL, opts.cap)?.elements.into_iter().collect()
    } else {
        report.param("gl_mode", "sampled");
        let count = if ring.is_finite() { SAMPLES } else { 100 };
        (0..count).map(|_| random_gl(ring, n, &mut rng)).collect()
    };
    let gl_fail = gl_elems
        .par_iter()
        .filter(|g| {
            decompose_gl(g)
                .and_then(|w| {
                    let beta = w.diag.as_ref().map(|d| d.value.clone());
                    Ok(w.eval()? == **g && beta == Some(g.det()))
                })
                .map(|ok| !ok)
                .unwrap_or(true)
        })
        .count();
    failures(&mut report, "gl_round_trip", "eval(decompose_gl(g)) = g with beta = det g", gl_elems.len(), gl_fail);

    if let Some(q) = ring.order() {
        // Entry polynomials of a single pass, evaluated at random points.
        let one_pass = SigmaSchedule::new(n, SigmaSchedule::row_major(n), 1)?;
        match entry_polynomials(&one_pass, 1 << 16) {
            Ok(polys) => {
                let bad = (0..500)
                    .filter(|_| {
                        let vals: Vec<_> = (0..one_pass.len()).map(|_| ring.from_i64(rng.gen_range(0..q as i64))).collect();
                        let mut direct = Matrix::identity(ring, n);
                        for ((i, j), v) in one_pass.slots().zip(&vals) {
                            direct = direct.mul(&Matrix::transvection(ring, n, i, j, v).expect("valid"));
                        }
                        polys.eval(ring, &vals) != direct
                    })
                    .count();
                failures(&mut report, "entry_polynomials", "P_ij(a) equals the scheduled product", 500, bad);
            }
            Err(e) => report.record_error("entry_polynomials", "P_ij(a) equals the scheduled product", &e),
        }

        if predicted_order(ring, n, GroupKind::UT)? <= opts.cap as u128 {
            let ut = enumerate_group(ring, n, GroupKind::UT, opts.cap)?;
            let forms: HashSet<Vec<_>> = ut.elements.iter().map(|u| ut_normal_form(u).expect("UT element")).collect();
            let back = ut
                .elements
                .par_iter()
                .filter(|u| ut_from_coefficients(ring, n, &ut_normal_form(u).expect("UT element")) != **u)
                .count();
            report.record(
                "ut_normal_form",
                "UT normal form is a bijection",
                json!({"elements": ut.len(), "distinct_forms": ut.len(), "failures": 0}),
                json!({"elements": ut.len(), "distinct_forms": forms.len(), "failures": back}),
                forms.len() == ut.len() && back == 0,
            );
            let series = lower_central_series(ring, n, opts.cap)?;
            let mut observed = Vec::new();
            let mut ok = true;
            for (k, g) in series.iter().enumerate() {
                observed.push(g.len());
                let analytic = ut.elements.iter().filter(|u| ut_power_member(u, k + 1)).count();
                ok &= analytic == g.len() && g.elements.iter().all(|u| ut_power_member(u, k + 1));
            }
            let expected: Vec<u128> = (1..=n)
                .map(|k| (q as u128).pow(((n - k) * (n - k + 1) / 2) as u32))
                .collect();
            report.record(
                "lower_central_series",
                "gamma_k(UT_n) = UT_n^k",
                json!(expected),
                json!(observed),
                ok && observed.iter().map(|&x| x as u128).eq(expected.iter().copied()),
            );
        }
    }
    Ok(report)
}

fn all_carriers(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..=n).filter(move |&k| k != i).map(move |k| (i, k))).collect()
}

pub fn interp_suite(ring: RingSpec, n: usize, opts: SuiteOptions) -> Result<Report> {
    let mut report = Report::new("interp");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if ring.is_finite() {
        for (i, k) in all_carriers(n) {
            let ir = InterpretedRing::new(ring, n, Host::GL, i, k)?;
            let mut r = ring_iso_check(&ir)?;
            r.suite = format!("carrier_{i}{k}");
            report.absorb(r);
        }
        let tri = InterpretedRing::standard(ring, n, Host::T)?;
        let mut r = ring_iso_check(&tri)?;
        r.suite = "triangular_host".into();
        report.absorb(r);
    }
    let sample: Vec<_> = match ring.elements() {
        Ok(e) => e,
        Err(_) => (0..20).map(|_| ring.from_rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)).expect("nonzero")).collect(),
    };

    // μ(α) = t_1n(α) respects both operations.
    let ir = InterpretedRing::standard(ring, n, Host::GL)?;
    let mut bad = 0;
    let mut cases = 0;
    for a in &sample {
        for b in &sample {
            cases += 1;
            let add = ir.add(&ir.mu(a), &ir.mu(b))? == ir.mu(&ring.add(a, b));
            let mul = ir.mul(&ir.mu(a), &ir.mu(b))? == ir.mu(&ring.mul(a, b));
            bad += usize::from(!(add && mul));
        }
    }
    failures(&mut report, "mu_hom", "mu(a + b) = mu(a) (+) mu(b) and mu(ab) = mu(a) (x) mu(b)", cases, bad);

    // Witness independence in the triangular host.
    let tri = InterpretedRing::standard(ring, n, Host::T)?;
    let mut bad = 0;
    let mut witnesses = 0;
    for a in sample.iter().take(8) {
        for b in sample.iter().take(8) {
            match tri.tn_variant_mul(&tri.encode(a), &tri.encode(b)) {
                Ok(p) if p.product == tri.encode(&ring.mul(a, b)) => witnesses += p.witnesses,
                _ => bad += 1,
            }
        }
    }
    let pairs = sample.len().min(8).pow(2);
    report.record(
        "tn_witness_independent",
        "every witness pair in T_n gives the same product",
        json!({"pairs": pairs, "failures": 0}),
        json!({"pairs": pairs, "failures": bad, "witnesses": witnesses}),
        bad == 0,
    );

    // Connecting isomorphisms compose and respect ⊕ and ⊗.
    let carriers = all_carriers(n);
    let few: Vec<_> = sample.iter().take(5).cloned().collect();
    let mut comp_bad = 0;
    let mut comp_cases = 0;
    for &(i, j) in &carriers {
        for &(k, m) in &carriers {
            if i == m {
                continue;
            }
            for a in &few {
                comp_cases += 1;
                let x = Matrix::transvection(ring, n, i, j, a)?;
                let direct = connecting_iso(ring, n, (i, j), (k, m), &x)?;
                let via = connecting_iso(ring, n, (i, m), (k, m), &connecting_iso(ring, n, (i, j), (i, m), &x)?)?;
                comp_bad += usize::from(direct != via);
            }
        }
    }
    failures(&mut report, "connecting_iso_composition", "f_(ij->km) = f_(im->km) o f_(ij->im)", comp_cases, comp_bad);
    let mut iso_bad = 0;
    let mut iso_cases = 0;
    for &from in &carriers {
        let src = InterpretedRing::new(ring, n, Host::GL, from.0, from.1)?;
        for &to in &carriers {
            let dst = InterpretedRing::new(ring, n, Host::GL, to.0, to.1)?;
            for a in &few {
                for b in &few {
                    iso_cases += 1;
                    let (x, y) = (src.encode(a), src.encode(b));
                    let f = |z: &Matrix| connecting_iso(ring, n, from, to, z);
                    let ok = f(&src.add(&x, &y)?)? == dst.add(&f(&x)?, &f(&y)?)?
                        && f(&src.mul(&x, &y)?)? == dst.mul(&f(&x)?, &f(&y)?)?;
                    iso_bad += usize::from(!ok);
                }
            }
        }
    }
    failures(&mut report, "connecting_iso_ring_hom", "connecting isomorphisms commute with (+) and (x)", iso_cases, iso_bad);

    if ring.is_field() {
        let pairs = if ring.is_finite() { 10_000 } else { 200 };
        report.absorb(lambda_report(ring, n, opts, pairs)?);
    }
    Ok(report)
}

/// λ as a bijective homomorphism: exhaustive over all pairs when `SL_n`
/// has at most 200 elements, on seeded random pairs otherwise.
pub fn lambda_report(ring: RingSpec, n: usize, opts: SuiteOptions, pairs: usize) -> Result<Report> {
    let ir = InterpretedRing::standard(ring, n, Host::SL)?;
    let s = SigmaSchedule::default_for(n);
    let mut report = Report::new("lambda");
    report.param("schedule_repeats", s.repeats as u64);
    let exhaustive = ring.is_finite() && predicted_order(ring, n, GroupKind::SL)? <= 200;
    if exhaustive {
        let sl = enumerate_group(ring, n, GroupKind::SL, opts.cap)?;
        let elems: Vec<Matrix> = sl.elements.iter().cloned().collect();
        let lam: Vec<_> = elems.par_iter().map(|g| ir.lambda(g, &s)).collect::<Result<_>>()?;
        let decoded: Vec<Matrix> = lam.iter().map(|l| ir.decode_matrix(l)).collect::<Result<_>>()?;
        let image: HashSet<_> = lam.iter().collect();
        let identity_coords = decoded.iter().zip(&elems).filter(|(d, g)| d != g).count();
        report.expect_eq("lambda_injective", "lambda is injective on SL_n", elems.len() as u64, image.len() as u64);
        failures(&mut report, "lambda_coordinates", "lambda(g) decodes to g", elems.len(), identity_coords);
        let bad: usize = (0..elems.len())
            .into_par_iter()
            .map(|a| {
                (0..elems.len())
                    .filter(|&b| {
                        let gh = sl.elements.get_index_of(&elems[a].mul(&elems[b])).expect("closed");
                        ir.carrier_mul(&lam[a], &lam[b]).map(|p| p != lam[gh]).unwrap_or(true)
                    })
                    .count()
            })
            .sum();
        report.param("lambda_mode", "exhaustive");
        failures(&mut report, "lambda_hom", "lambda(gh) = lambda(g) (.) lambda(h)", elems.len() * elems.len(), bad);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x1a3b);
        let samples: Vec<(Matrix, Matrix)> = (0..pairs).map(|_| (random_sl(ring, n, &mut rng), random_sl(ring, n, &mut rng))).collect();
        let results: Vec<(bool, bool)> = samples
            .par_iter()
            .map(|(g, h)| {
                let lg = ir.lambda(g, &s)?;
                let lh = ir.lambda(h, &s)?;
                let lgh = ir.lambda(&g.mul(h), &s)?;
                Ok((ir.carrier_mul(&lg, &lh)? == lgh, ir.decode_matrix(&lg)? == *g))
            })
            .collect::<Result<_>>()?;
        report.param("lambda_mode", "sampled");
        failures(&mut report, "lambda_hom", "lambda(gh) = lambda(g) (.) lambda(h)", pairs, results.iter().filter(|r| !r.0).count());
        failures(&mut report, "lambda_coordinates", "lambda(g) decodes to g", pairs, results.iter().filter(|r| !r.1).count());
    }
    Ok(report)
}

pub fn a4_suite(ring: RingSpec, n: usize, opts: SuiteOptions) -> Result<Report> {
    let mut report = a4_sequence_report(ring, n, opts.cap)?;
    report.absorb(d1_power_identity(ring, n)?);
    Ok(report)
}

/// The fixed cohomology examples plus seeded coboundary round trips.
pub fn cohom_full(opts: SuiteOptions) -> Result<Report> {
    let mut report = cohom_suite()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let shapes: [(&[u64], &[u64]); 5] = [(&[2], &[2]), (&[3], &[3]), (&[4], &[2]), (&[2, 2], &[4]), (&[6], &[3])];
    let mut bad = 0;
    for t in 0..100 {
        let (bo, ao) = shapes[t % shapes.len()];
        let b = FinAbGroup::new(bo.to_vec())?;
        let a = FinAbGroup::new(ao.to_vec())?;
        let mut psi = vec![0usize];
        psi.extend((1..b.order()).map(|_| rng.gen_range(0..a.order())));
        let cb = coboundary_from(&b, &a, &psi)?;
        let ok = cocycle_violations(&cb).is_empty()
            && is_coboundary(&cb)
                .and_then(|w| coboundary_from(&b, &a, &w))
                .map(|back| back == cb)
                .unwrap_or(false);
        bad += usize::from(!ok);
    }
    failures(&mut report, "seeded_round_trips", "delta(psi) is a cocycle whose recovered witness reproduces it", 100, bad);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn decompose_gf3() {
        let r = run(Suite::Decompose, RingSpec::prime_field(3).unwrap(), 3, SuiteOptions::default()).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.parameters["sl_mode"], "exhaustive");
    }

    #[test]
    fn decompose_rationals() {
        let r = run(Suite::Decompose, RingSpec::Rationals, 3, SuiteOptions::default()).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn interp_zmod6() {
        let r = run(Suite::Interp, RingSpec::modular(6).unwrap(), 3, SuiteOptions::default()).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn interp_gf2_exhaustive_lambda() {
        let r = run(Suite::Interp, RingSpec::prime_field(2).unwrap(), 3, SuiteOptions::default()).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.check == "lambda/lambda_hom" && c.observed["cases"] == 168 * 168));
    }

    #[test]
    fn deterministic_reports() {
        let opts = SuiteOptions::default();
        let a = run(Suite::Cohom, RingSpec::prime_field(3).unwrap(), 3, opts).unwrap();
        let b = run(Suite::Cohom, RingSpec::prime_field(3).unwrap(), 3, opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
