//! The ring R recovered inside a matrix group: the one-parameter subgroup
//! T_ik with `x ⊕ y = xy` and `x ⊗ y = [x₁, y₁]` for commutator witnesses
//! `x₁ ∈ T_ij`, `y₁ ∈ T_jk`. Also the isomorphisms between carriers and the
//! coordinate maps λ (matrices to carrier matrices) and μ (ring to carrier).

use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::{RingElem, RingSpec};
use crate::word::{decompose_sl, sigma_pad, EntryPolynomials, SigmaSchedule};

/// The group the interpretation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Host {
    GL,
    SL,
    /// Upper triangular group; carriers and witnesses must stay upper.
    T,
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Host::GL => "GL",
            Host::SL => "SL",
            Host::T => "T",
        })
    }
}

impl std::str::FromStr for Host {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Host::GL),
            "SL" => Ok(Host::SL),
            "T" => Ok(Host::T),
            _ => Err(Error::Parse(format!("unknown host group {s:?}"))),
        }
    }
}

/// `⟨T_ik; ⊕, ⊗⟩` with auxiliary index `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterpretedRing {
    pub ring: RingSpec,
    pub n: usize,
    pub host: Host,
    pub i: usize,
    pub k: usize,
    pub j: usize,
}

/// Result of a witness-enumerating product in a triangular host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessedProduct {
    pub product: Matrix,
    pub witnesses: usize,
}

fn bad(msg: String) -> Error {
    Error::BadIndices(msg)
}

impl InterpretedRing {
    /// Carrier `T_ik`; the auxiliary index is the least admissible one.
    pub fn new(ring: RingSpec, n: usize, host: Host, i: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(bad(format!("interpretation needs n >= 3, got {n}")));
        }
        if i == 0 || k == 0 || i > n || k > n || i == k {
            return Err(bad(format!("carrier ({i},{k}) for n = {n}")));
        }
        let j = match host {
            Host::GL | Host::SL => (1..=n).find(|&j| j != i && j != k).expect("n >= 3"),
            Host::T => {
                if i >= k || k - i < 2 {
                    return Err(bad(format!(
                        "carrier ({i},{k}) in a triangular host needs i < j < k for some j"
                    )));
                }
                i + 1
            }
        };
        Ok(InterpretedRing {
            ring,
            n,
            host,
            i,
            k,
            j,
        })
    }

    /// The default carrier `T_1n`.
    pub fn standard(ring: RingSpec, n: usize, host: Host) -> Result<Self> {
        InterpretedRing::new(ring, n, host, 1, n)
    }

    fn t(&self, i: usize, j: usize, a: &RingElem) -> Matrix {
        Matrix::transvection(self.ring, self.n, i, j, a).expect("indices checked")
    }

    pub fn encode(&self, a: &RingElem) -> Matrix {
        self.t(self.i, self.k, a)
    }

    pub fn zero(&self) -> Matrix {
        self.encode(&self.ring.zero())
    }

    pub fn one(&self) -> Matrix {
        self.encode(&self.ring.one())
    }

    /// The parameter α of `x = t_ik(α)`.
    pub fn decode(&self, x: &Matrix) -> Result<RingElem> {
        decode_in(x, self.ring, self.n, self.i, self.k)
    }

    pub fn add(&self, x: &Matrix, y: &Matrix) -> Result<Matrix> {
        self.decode(x)?;
        self.decode(y)?;
        Ok(x.mul(y))
    }

    /// `x ⊗ y = [x₁, y₁]` with witnesses built from the parameters of `x`
    /// and `y`, then checked against `[x₁, t_jk(1)] = x`, `[t_ij(1), y₁] = y`.
    pub fn mul(&self, x: &Matrix, y: &Matrix) -> Result<Matrix> {
        let (i, j, k) = (self.i, self.j, self.k);
        let r = self.ring;
        let a = self.decode(x)?;
        let b = self.decode(y)?;
        let x1 = self.t(i, j, &a);
        let x1_inv = self.t(i, j, &r.neg(&a));
        let y1 = self.t(j, k, &b);
        let y1_inv = self.t(j, k, &r.neg(&b));
        let one = r.one();
        let m_one = r.neg(&one);
        if comm(&x1, &x1_inv, &self.t(j, k, &one), &self.t(j, k, &m_one)) != *x {
            return Err(Error::WitnessCheckFailed(format!("[x1, t_{j}{k}(1)] != x")));
        }
        if comm(&self.t(i, j, &one), &self.t(i, j, &m_one), &y1, &y1_inv) != *y {
            return Err(Error::WitnessCheckFailed(format!("[t_{i}{j}(1), y1] != y")));
        }
        let p = comm(&x1, &x1_inv, &y1, &y1_inv);
        self.decode(&p)
            .map_err(|_| Error::WitnessCheckFailed("product left the carrier".into()))?;
        Ok(p)
    }

    /// Product in a triangular host with carrier `T_1n`, where the witness
    /// for x ranges over `scalars · T_12 · T_1n` and, for n = 3, the witness
    /// for y over `scalars · T_23 · T_13`. Every admissible witness pair is
    /// tried and all must give the same commutator.
    pub fn tn_variant_mul(&self, x: &Matrix, y: &Matrix) -> Result<WitnessedProduct> {
        if self.host != Host::T || self.i != 1 || self.k != self.n {
            return Err(bad("witness enlargement applies to the carrier T_1n of T_n".into()));
        }
        let r = self.ring;
        let n = self.n;
        let a = self.decode(x)?;
        let b = self.decode(y)?;
        let units = r.units()?;
        let elems = r.elements()?;
        let one = r.one();
        let t2n = self.t(2, n, &one);
        let t12 = self.t(1, 2, &one);
        let scalar = |s: &RingElem| Matrix::scalar(r, n, s).expect("unit");
        let mut x_wit = Vec::new();
        for s in &units {
            for g in &elems {
                let w = scalar(s).mul(&self.t(1, 2, &a)).mul(&self.t(1, n, g));
                if w.commutator(&t2n)? != *x {
                    return Err(Error::WitnessCheckFailed("x witness fails [x1, t_2n(1)] = x".into()));
                }
                x_wit.push(w);
            }
        }
        let mut y_wit = Vec::new();
        if n == 3 {
            for s in &units {
                for d in &elems {
                    y_wit.push(scalar(s).mul(&self.t(2, 3, &b)).mul(&self.t(1, 3, d)));
                }
            }
        } else {
            y_wit.push(self.t(2, n, &b));
        }
        for w in &y_wit {
            if t12.commutator(w)? != *y {
                return Err(Error::WitnessCheckFailed("y witness fails [t_12(1), y1] = y".into()));
            }
        }
        let x_inv: Vec<Matrix> = x_wit.iter().map(|w| w.inv()).collect::<Result<_>>()?;
        let y_inv: Vec<Matrix> = y_wit.iter().map(|w| w.inv()).collect::<Result<_>>()?;
        let reference = comm(&x_wit[0], &x_inv[0], &y_wit[0], &y_inv[0]);
        let all_agree = (0..x_wit.len()).into_par_iter().all(|p| {
            (0..y_wit.len()).all(|q| comm(&x_wit[p], &x_inv[p], &y_wit[q], &y_inv[q]) == reference)
        });
        if !all_agree {
            return Err(Error::WitnessCheckFailed("witness pairs give different commutators".into()));
        }
        self.decode(&reference)
            .map_err(|_| Error::WitnessCheckFailed("product left the carrier".into()))?;
        Ok(WitnessedProduct {
            product: reference,
            witnesses: x_wit.len() * y_wit.len(),
        })
    }

    /// `μ(α) = t_1n(α)`, only meaningful for the standard carrier.
    pub fn mu(&self, a: &RingElem) -> Matrix {
        self.t(1, self.n, a)
    }

    /// The identity matrix over the interpreted ring.
    pub fn carrier_identity(&self) -> CarrierMatrix {
        let n = self.n;
        let entries = (0..n * n)
            .map(|p| if p / n == p % n { self.one() } else { self.zero() })
            .collect();
        CarrierMatrix { n, entries }
    }

    /// `A ⊙ B` with entries combined by ⊕ and ⊗.
    pub fn carrier_mul(&self, a: &CarrierMatrix, b: &CarrierMatrix) -> Result<CarrierMatrix> {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = self.zero();
                for m in 0..n {
                    acc = self.add(&acc, &self.mul(a.get(r, m), b.get(m, c))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(CarrierMatrix { n, entries })
    }

    /// Reads a carrier matrix back as a matrix over R.
    pub fn decode_matrix(&self, a: &CarrierMatrix) -> Result<Matrix> {
        let entries = a.entries.iter().map(|x| self.decode(x)).collect::<Result<_>>()?;
        Matrix::from_entries(self.ring, self.n, entries)
    }

    /// λ(g): σ-decompose g, move each letter's parameter into the carrier
    /// through the connecting isomorphism, and evaluate the scheduled
    /// product with ⊕ and ⊗ only (column j ← column j ⊕ column i ⊗ h).
    pub fn lambda(&self, g: &Matrix, s: &SigmaSchedule) -> Result<CarrierMatrix> {
        let padded = sigma_pad(&decompose_sl(g)?, s)?;
        let mut acc = self.carrier_identity();
        let zero = self.zero();
        for l in &padded.letters {
            let h = connecting_iso(self.ring, self.n, (l.i, l.j), (self.i, self.k), &self.t(l.i, l.j, &l.alpha))?;
            if h == zero {
                continue;
            }
            for row in 0..self.n {
                let prod = self.mul(acc.get(row, l.i - 1), &h)?;
                let v = self.add(acc.get(row, l.j - 1), &prod)?;
                acc.set(row, l.j - 1, v);
            }
        }
        Ok(acc)
    }

    /// λ(g) by evaluating expanded entry polynomials in the carrier; only
    /// practical for short schedules.
    pub fn lambda_via_polynomials(&self, g: &Matrix, s: &SigmaSchedule, p: &EntryPolynomials) -> Result<CarrierMatrix> {
        let padded = sigma_pad(&decompose_sl(g)?, s)?;
        let hs: Vec<Matrix> = padded
            .letters
            .iter()
            .map(|l| connecting_iso(self.ring, self.n, (l.i, l.j), (self.i, self.k), &self.t(l.i, l.j, &l.alpha)))
            .collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(self.n * self.n);
        for poly in &p.entries {
            let mut acc = self.zero();
            for (mono, &c) in poly {
                let mut term = self.one();
                for &v in mono {
                    term = self.mul(&term, &hs[v as usize])?;
                }
                for _ in 0..c {
                    acc = self.add(&acc, &term)?;
                }
            }
            entries.push(acc);
        }
        Ok(CarrierMatrix { n: self.n, entries })
    }
}

/// Decodes `x = t_ik(α)` for the given carrier.
fn decode_in(x: &Matrix, ring: RingSpec, n: usize, i: usize, k: usize) -> Result<RingElem> {
    if x.ring() != ring || x.n() != n {
        return Err(Error::SpecMismatch(format!("carrier element over {} with n = {}", x.ring(), x.n())));
    }
    for r in 0..n {
        for c in 0..n {
            if (r, c) == (i - 1, k - 1) {
                continue;
            }
            let e = x.entry(r, c);
            let ok = if r == c { ring.is_one(e) } else { ring.is_zero(e) };
            if !ok {
                return Err(Error::NotInCarrier { i, k });
            }
        }
    }
    Ok(x.entry(i - 1, k - 1).clone())
}

/// `[a, b]` with precomputed inverses.
fn comm(a: &Matrix, ai: &Matrix, b: &Matrix, bi: &Matrix) -> Matrix {
    ai.mul(bi).mul(a).mul(b)
}

/// An `n × n` matrix whose entries are carrier elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CarrierMatrix {
    pub n: usize,
    pub entries: Vec<Matrix>,
}

impl CarrierMatrix {
    pub fn get(&self, r: usize, c: usize) -> &Matrix {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Matrix) {
        self.entries[r * self.n + c] = v;
    }
}

/// Moves `t_ij(α)` to `t_km(α)` using commutators with unit transvections.
///
/// Same row: `[x, t_jm(1)]`. Same column: `[t_ki(1), x]`. Otherwise through
/// `(i,m)` when `i ≠ m`; when `m = i` through `(k,j)` if `j ≠ k`, and for the
/// transpose `(i,j) → (j,i)` through `(i,p)` and `(j,p)` with `p ∉ {i,j}`.
pub fn connecting_iso(ring: RingSpec, n: usize, from: (usize, usize), to: (usize, usize), x: &Matrix) -> Result<Matrix> {
    let (i, j) = from;
    let (k, m) = to;
    for (a, b) in [from, to] {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(bad(format!("pair ({a},{b}) for n = {n}")));
        }
    }
    decode_in(x, ring, n, i, j)?;
    let one = ring.one();
    let t = |a: usize, b: usize| Matrix::transvection(ring, n, a, b, &one).expect("valid");
    if from == to {
        return Ok(x.clone());
    }
    if i == k {
        return x.commutator(&t(j, m));
    }
    if j == m {
        return t(k, i).commutator(x);
    }
    if i != m {
        let mid = connecting_iso(ring, n, from, (i, m), x)?;
        return connecting_iso(ring, n, (i, m), to, &mid);
    }
    if j != k {
        let mid = connecting_iso(ring, n, from, (k, j), x)?;
        return connecting_iso(ring, n, (k, j), to, &mid);
    }
    if n < 3 {
        return Err(bad("transposing a carrier needs n >= 3".into()));
    }
    let p = (1..=n).find(|&p| p != i && p != j).expect("n >= 3");
    let a = connecting_iso(ring, n, from, (i, p), x)?;
    let b = connecting_iso(ring, n, (i, p), (j, p), &a)?;
    connecting_iso(ring, n, (j, p), to, &b)
}

struct Count {
    cases: u64,
    failures: u64,
}

fn count(results: impl ParallelIterator<Item = Result<bool>>) -> Count {
    let (cases, failures) = results
        .map(|r| (1u64, u64::from(!matches!(r, Ok(true)))))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Count { cases, failures }
}

fn record(report: &mut Report, name: &str, anchor: &str, c: Count) {
    report.expect_eq(
        name,
        anchor,
        json!({"cases": c.cases, "failures": 0}),
        json!({"cases": c.cases, "failures": c.failures}),
    );
}

/// Exhaustively checks that `α ↦ t_ik(α)` is a ring isomorphism onto
/// `(T_ik, ⊕, ⊗)` and that the carrier satisfies the commutative-ring axioms.
pub fn ring_iso_check(ir: &InterpretedRing) -> Result<Report> {
    let r = ir.ring;
    let elems = r.elements()?;
    let mut report = Report::new("interp");
    report
        .param("ring", r.to_string())
        .param("n", ir.n as u64)
        .param("host", ir.host.to_string())
        .param("carrier", json!([ir.i, ir.k]))
        .param("aux", ir.j as u64);
    let carrier: Vec<Matrix> = elems.iter().map(|a| ir.encode(a)).collect();
    let distinct: std::collections::HashSet<&Matrix> = carrier.iter().collect();
    report.expect_eq("encoding_injective", "a -> t_ik(a) is injective", elems.len() as u64, distinct.len() as u64);
    let dec = count(elems.par_iter().map(|a| Ok(ir.decode(&ir.encode(a))? == *a)));
    record(&mut report, "decode_encode", "t_ik(a) decodes to a", dec);

    let pairs: Vec<(usize, usize)> = (0..elems.len())
        .flat_map(|a| (0..elems.len()).map(move |b| (a, b)))
        .collect();
    let triples: Vec<(usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(a, b)| (0..elems.len()).map(move |c| (a, b, c)))
        .collect();
    let x = |p: usize| &carrier[p];
    let e = |p: usize| &elems[p];

    record(
        &mut report,
        "hom_add",
        "t(a) (+) t(b) = t(a + b)",
        count(pairs.par_iter().map(|&(a, b)| Ok(ir.add(x(a), x(b))? == ir.encode(&r.add(e(a), e(b)))))),
    );
    record(
        &mut report,
        "hom_mul",
        "t(a) (x) t(b) = t(ab)",
        count(pairs.par_iter().map(|&(a, b)| Ok(ir.mul(x(a), x(b))? == ir.encode(&r.mul(e(a), e(b)))))),
    );
    record(
        &mut report,
        "add_commutative",
        "x (+) y = y (+) x",
        count(pairs.par_iter().map(|&(a, b)| Ok(ir.add(x(a), x(b))? == ir.add(x(b), x(a))?))),
    );
    record(
        &mut report,
        "mul_commutative",
        "x (x) y = y (x) x",
        count(pairs.par_iter().map(|&(a, b)| Ok(ir.mul(x(a), x(b))? == ir.mul(x(b), x(a))?))),
    );
    record(
        &mut report,
        "add_identity_inverse",
        "x (+) 0 = x and x has an additive inverse in T_ik",
        count(carrier.par_iter().map(|c| {
            let zero = ir.zero();
            Ok(ir.add(c, &zero)? == *c && carrier.iter().any(|d| ir.add(c, d).map(|s| s == zero).unwrap_or(false)))
        })),
    );
    record(
        &mut report,
        "mul_identity",
        "x (x) 1 = x",
        count(carrier.par_iter().map(|c| Ok(ir.mul(c, &ir.one())? == *c))),
    );
    record(
        &mut report,
        "add_associative",
        "(x (+) y) (+) z = x (+) (y (+) z)",
        count(triples.par_iter().map(|&(a, b, c)| {
            Ok(ir.add(&ir.add(x(a), x(b))?, x(c))? == ir.add(x(a), &ir.add(x(b), x(c))?)?)
        })),
    );
    record(
        &mut report,
        "mul_associative",
        "(x (x) y) (x) z = x (x) (y (x) z)",
        count(triples.par_iter().map(|&(a, b, c)| {
            Ok(ir.mul(&ir.mul(x(a), x(b))?, x(c))? == ir.mul(x(a), &ir.mul(x(b), x(c))?)?)
        })),
    );
    record(
        &mut report,
        "distributive",
        "x (x) (y (+) z) = x (x) y (+) x (x) z",
        count(triples.par_iter().map(|&(a, b, c)| {
            Ok(ir.mul(x(a), &ir.add(x(b), x(c))?)? == ir.add(&ir.mul(x(a), x(b))?, &ir.mul(x(a), x(c))?)?)
        })),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> RingSpec {
        RingSpec::prime_field(p).unwrap()
    }

    #[test]
    fn add_examples() {
        let f5 = gf(5);
        let ir = InterpretedRing::standard(f5, 3, Host::GL).unwrap();
        let s = ir.add(&ir.encode(&f5.from_i64(2)), &ir.encode(&f5.from_i64(3))).unwrap();
        assert_eq!(s, ir.zero());
        let x = ir.encode(&f5.from_i64(4));
        assert_eq!(ir.add(&x, &ir.zero()).unwrap(), x);
        let q = RingSpec::Rationals;
        let ir = InterpretedRing::standard(q, 3, Host::SL).unwrap();
        let s = ir
            .add(&ir.encode(&q.parse_elem("1/2").unwrap()), &ir.encode(&q.parse_elem("1/3").unwrap()))
            .unwrap();
        assert_eq!(ir.decode(&s).unwrap(), q.parse_elem("5/6").unwrap());
    }

    #[test]
    fn mul_examples() {
        let f7 = gf(7);
        let ir = InterpretedRing::standard(f7, 3, Host::GL).unwrap();
        let p = ir.mul(&ir.encode(&f7.from_i64(2)), &ir.encode(&f7.from_i64(3))).unwrap();
        assert_eq!(ir.decode(&p).unwrap(), f7.from_i64(6));
        let x = ir.encode(&f7.from_i64(5));
        assert_eq!(ir.mul(&x, &ir.one()).unwrap(), x);
        let z6 = RingSpec::modular(6).unwrap();
        let ir = InterpretedRing::standard(z6, 3, Host::SL).unwrap();
        let p = ir.mul(&ir.encode(&z6.from_i64(2)), &ir.encode(&z6.from_i64(3))).unwrap();
        assert_eq!(p, ir.zero());
        let off = Matrix::transvection(z6, 3, 1, 2, &z6.one()).unwrap();
        assert_eq!(ir.mul(&off, &ir.one()).unwrap_err().name(), "NotInCarrier");
    }

    #[test]
    fn triangular_host_witnesses() {
        let f5 = gf(5);
        let ir = InterpretedRing::standard(f5, 3, Host::T).unwrap();
        let w = ir.tn_variant_mul(&ir.encode(&f5.from_i64(2)), &ir.encode(&f5.from_i64(3))).unwrap();
        assert_eq!(ir.decode(&w.product).unwrap(), f5.from_i64(1));
        assert_eq!(w.witnesses, (4 * 5) * (4 * 5));
        let f7 = gf(7);
        let ir = InterpretedRing::standard(f7, 3, Host::T).unwrap();
        let x = ir.encode(&f7.from_i64(2));
        let y = ir.encode(&f7.from_i64(3));
        assert_eq!(ir.tn_variant_mul(&x, &y).unwrap().product, ir.mul(&x, &y).unwrap());
        assert_eq!(ir.tn_variant_mul(&ir.zero(), &y).unwrap().product, ir.zero());
        assert!(InterpretedRing::new(f7, 3, Host::T, 1, 2).is_err());
        assert!(InterpretedRing::new(f7, 3, Host::T, 3, 1).is_err());
    }

    #[test]
    fn connecting_iso_cases() {
        let f5 = gf(5);
        let a = f5.from_i64(3);
        let t = |i, j| Matrix::transvection(f5, 3, i, j, &a).unwrap();
        assert_eq!(connecting_iso(f5, 3, (1, 2), (1, 3), &t(1, 2)).unwrap(), t(1, 3));
        assert_eq!(connecting_iso(f5, 3, (1, 3), (2, 3), &t(1, 3)).unwrap(), t(2, 3));
        assert_eq!(connecting_iso(f5, 3, (1, 2), (1, 2), &t(1, 2)).unwrap(), t(1, 2));
        for from in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)] {
            for to in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)] {
                assert_eq!(connecting_iso(f5, 3, from, to, &t(from.0, from.1)).unwrap(), t(to.0, to.1));
            }
        }
        assert_eq!(connecting_iso(f5, 3, (1, 1), (1, 2), &t(1, 2)).unwrap_err().name(), "BadIndices");
        assert_eq!(connecting_iso(f5, 3, (1, 2), (1, 3), &t(1, 3)).unwrap_err().name(), "NotInCarrier");
    }

    #[test]
    fn iso_check_small() {
        for (ring, n) in [(gf(2), 3), (RingSpec::modular(6).unwrap(), 3), (gf(3), 4)] {
            let rep = ring_iso_check(&InterpretedRing::standard(ring, n, Host::GL).unwrap()).unwrap();
            assert!(rep.pass, "{ring}");
        }
        let rep = ring_iso_check(&InterpretedRing::new(gf(3), 3, Host::SL, 3, 2).unwrap()).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn mu_examples() {
        let f5 = gf(5);
        let ir = InterpretedRing::standard(f5, 3, Host::GL).unwrap();
        assert!(ir.mu(&f5.zero()).is_identity());
        for a in 0..5 {
            for b in 0..5 {
                let (a, b) = (f5.from_i64(a), f5.from_i64(b));
                assert_eq!(ir.mu(&a).mul(&ir.mu(&b)), ir.mu(&f5.add(&a, &b)));
                assert_eq!(ir.mul(&ir.mu(&a), &ir.mu(&b)).unwrap(), ir.mu(&f5.mul(&a, &b)));
            }
        }
    }

    #[test]
    fn lambda_examples() {
        let f2 = gf(2);
        let ir = InterpretedRing::standard(f2, 3, Host::SL).unwrap();
        let s = SigmaSchedule::default_for(3);
        let id = ir.lambda(&Matrix::identity(f2, 3), &s).unwrap();
        assert_eq!(id, ir.carrier_identity());
        let t12 = Matrix::transvection(f2, 3, 1, 2, &f2.one()).unwrap();
        let l = ir.lambda(&t12, &s).unwrap();
        assert_eq!(l.get(0, 1), &ir.one());
        assert_eq!(ir.decode_matrix(&l).unwrap(), t12);
    }

    #[test]
    fn lambda_agrees_with_polynomials_on_short_schedule() {
        let f3 = gf(3);
        let ir = InterpretedRing::standard(f3, 3, Host::SL).unwrap();
        let s = SigmaSchedule::new(3, SigmaSchedule::row_major(3), 2).unwrap();
        let polys = crate::word::entry_polynomials(&s, 100_000).unwrap();
        let g = Matrix::transvection(f3, 3, 1, 3, &f3.from_i64(2))
            .unwrap()
            .mul(&Matrix::transvection(f3, 3, 2, 1, &f3.one()).unwrap());
        let a = ir.lambda(&g, &s).unwrap();
        let b = ir.lambda_via_polynomials(&g, &s, &polys).unwrap();
        assert_eq!(a, b);
        assert_eq!(ir.decode_matrix(&a).unwrap(), g);
    }
}
