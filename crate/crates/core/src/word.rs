//! Transvection words: evaluation, elimination-based decompositions of SL_n
//! and GL_n over fields, schedules of index pairs, symbolic entry
//! polynomials, unitriangular normal forms and the lower central series.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group;
use crate::matgroup::{enumerate_group, GroupSet, MatrixGroup};
use crate::matrix::{elem_from_json, json_n, json_ring, GroupKind, Matrix};
use crate::ring::{RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub i: usize,
    pub j: usize,
    pub alpha: RingElem,
}

/// `d_index(value)` inserted before letter `at`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagFactor {
    pub at: usize,
    pub index: usize,
    pub value: RingElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransvectionWord {
    pub ring: RingSpec,
    pub n: usize,
    pub letters: Vec<Letter>,
    pub diag: Option<DiagFactor>,
}

/// Upper bound on the length of a [`decompose_sl`] word:
/// `n + 1` letters for each of the first `n - 1` columns, `n - 1` for the last.
pub fn word_length_bound(n: usize) -> usize {
    (n - 1) * (n + 2)
}

impl TransvectionWord {
    pub fn empty(ring: RingSpec, n: usize) -> Self {
        TransvectionWord {
            ring,
            n,
            letters: Vec::new(),
            diag: None,
        }
    }

    pub fn push(&mut self, i: usize, j: usize, alpha: RingElem) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n || i == j {
            return Err(Error::BadIndex { i, j, n: self.n });
        }
        self.ring.validate(&alpha)?;
        self.letters.push(Letter { i, j, alpha });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Left-to-right product of the letters and the diagonal factor.
    pub fn eval(&self) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.ring, self.n);
        for (k, l) in self.letters.iter().enumerate() {
            if let Some(d) = self.diag.as_ref().filter(|d| d.at == k) {
                acc = acc.mul(&Matrix::diag_elem(self.ring, self.n, d.index, &d.value)?);
            }
            acc = right_transvection(&acc, l.i, l.j, &l.alpha);
        }
        if let Some(d) = self.diag.as_ref().filter(|d| d.at >= self.letters.len()) {
            acc = acc.mul(&Matrix::diag_elem(self.ring, self.n, d.index, &d.value)?);
        }
        Ok(acc)
    }

    /// Joins adjacent letters on the same pair and drops zero letters.
    fn normalize(&mut self) {
        let r = self.ring;
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in self.letters.drain(..) {
            match out.last_mut() {
                Some(prev) if prev.i == l.i && prev.j == l.j => {
                    prev.alpha = r.add(&prev.alpha, &l.alpha);
                    if r.is_zero(&prev.alpha) {
                        out.pop();
                    }
                }
                _ if r.is_zero(&l.alpha) => {}
                _ => out.push(l),
            }
        }
        self.letters = out;
    }

    pub fn to_json(&self) -> Value {
        let letters: Vec<Value> = self
            .letters
            .iter()
            .map(|l| json!([l.i, l.j, l.alpha.to_string()]))
            .collect();
        let mut v = json!({
            "ring": self.ring.to_string(),
            "n": self.n,
            "letters": letters,
        });
        if let Some(d) = &self.diag {
            let mut dj = json!({"index": d.index, "value": d.value.to_string()});
            if d.at != self.letters.len() {
                dj["at"] = json!(d.at);
            }
            v["diag"] = dj;
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = json_ring(v)?;
        let n = json_n(v)?;
        let mut w = TransvectionWord::empty(ring, n);
        let letters = v
            .get("letters")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("word needs a \"letters\" array".into()))?;
        for l in letters {
            let parts = l
                .as_array()
                .filter(|p| p.len() == 3)
                .ok_or_else(|| Error::Parse(format!("letter must be [i, j, alpha], got {l}")))?;
            let idx = |k: usize| {
                parts[k]
                    .as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("bad index in letter {l}")))
            };
            w.push(idx(0)?, idx(1)?, elem_from_json(ring, &parts[2])?)?;
        }
        if let Some(d) = v.get("diag").filter(|d| !d.is_null()) {
            let index = d
                .get("index")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("diag needs an integer \"index\"".into()))?
                as usize;
            let value = elem_from_json(
                ring,
                d.get("value")
                    .ok_or_else(|| Error::Parse("diag needs a \"value\"".into()))?,
            )?;
            let at = match d.get("at") {
                Some(a) => a
                    .as_u64()
                    .ok_or_else(|| Error::Parse("diag \"at\" must be an integer".into()))?
                    as usize,
                None => w.letters.len(),
            };
            if index == 0 || index > n {
                return Err(Error::BadIndex { i: index, j: index, n });
            }
            if !ring.is_unit(&value) {
                return Err(Error::NonUnit(value.to_string()));
            }
            w.diag = Some(DiagFactor { at, index, value });
        }
        Ok(w)
    }
}

/// `m · t_ij(α)`: column j += α · column i.
fn right_transvection(m: &Matrix, i: usize, j: usize, alpha: &RingElem) -> Matrix {
    let r = m.ring();
    if r.is_zero(alpha) {
        return m.clone();
    }
    let mut out = m.clone();
    for row in 0..m.n() {
        let v = r.add(m.entry(row, j - 1), &r.mul(m.entry(row, i - 1), alpha));
        out.set_entry(row, j - 1, v);
    }
    out
}

/// `t_ij(α) · m`: row i += α · row j.
fn left_transvection(m: &mut Matrix, i: usize, j: usize, alpha: &RingElem) {
    let r = m.ring();
    for col in 0..m.n() {
        let v = r.add(m.entry(i - 1, col), &r.mul(alpha, m.entry(j - 1, col)));
        m.set_entry(i - 1, col, v);
    }
}

/// Writes `a ∈ SL_n(F)` as a product of transvections by row reduction
/// without row swaps.
///
/// Column by column, the pivot is first made 1 by adding a multiple of the
/// first row below with a nonzero entry (or, when there is none, by first
/// adding the pivot row to the next one), and the rest of the column is
/// then cleared. The word is the product of the inverse moves.
pub fn decompose_sl(a: &Matrix) -> Result<TransvectionWord> {
    let r = a.ring();
    r.require_field()?;
    let d = a.det();
    if r.is_zero(&d) {
        return Err(Error::NotInvertible);
    }
    if !r.is_one(&d) {
        return Err(Error::DetNotOne(d.to_string()));
    }
    let n = a.n();
    let mut m = a.clone();
    let mut moves: Vec<(usize, usize, RingElem)> = Vec::new();
    let mut apply = |m: &mut Matrix, i: usize, j: usize, c: RingElem| {
        left_transvection(m, i, j, &c);
        moves.push((i, j, c));
    };
    for k in 1..=n {
        let akk = m.entry(k - 1, k - 1).clone();
        if k < n && !r.is_one(&akk) {
            let one_minus = r.sub(&r.one(), &akk);
            if let Some(i) = (k + 1..=n).find(|&i| !r.is_zero(m.entry(i - 1, k - 1))) {
                let c = r.mul(&one_minus, &r.inv(m.entry(i - 1, k - 1))?);
                apply(&mut m, k, i, c);
            } else {
                apply(&mut m, k + 1, k, r.one());
                let c = r.mul(&one_minus, &r.inv(&akk)?);
                apply(&mut m, k, k + 1, c);
            }
        }
        debug_assert!(r.is_one(m.entry(k - 1, k - 1)));
        for i in 1..=n {
            if i != k && !r.is_zero(m.entry(i - 1, k - 1)) {
                let c = r.neg(m.entry(i - 1, k - 1));
                apply(&mut m, i, k, c);
            }
        }
    }
    debug_assert!(m.is_identity());
    // E_m ⋯ E_1 a = I, so a = E_1⁻¹ ⋯ E_m⁻¹.
    let mut w = TransvectionWord::empty(r, n);
    for (i, j, c) in moves {
        w.letters.push(Letter {
            i,
            j,
            alpha: r.neg(&c),
        });
    }
    w.normalize();
    Ok(w)
}

/// Writes `a ∈ GL_n(F)` as `w · d_n(β)` with `w` a transvection word and
/// `β = det(a)`.
pub fn decompose_gl(a: &Matrix) -> Result<TransvectionWord> {
    let r = a.ring();
    r.require_field()?;
    let beta = a.det();
    if r.is_zero(&beta) {
        return Err(Error::NotInvertible);
    }
    let n = a.n();
    let dinv = Matrix::diag_elem(r, n, n, &r.inv(&beta)?)?;
    let mut w = decompose_sl(&a.mul(&dinv))?;
    w.diag = Some(DiagFactor {
        at: w.letters.len(),
        index: n,
        value: beta,
    });
    Ok(w)
}

/// A fixed sequence of index pairs repeated `repeats` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSchedule {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub repeats: usize,
}

impl SigmaSchedule {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>, repeats: usize) -> Result<Self> {
        for &(i, j) in &pairs {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::BadIndex { i, j, n });
            }
        }
        Ok(SigmaSchedule { n, pairs, repeats })
    }

    /// All off-diagonal pairs in row-major order.
    pub fn row_major(n: usize) -> Vec<(usize, usize)> {
        (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }

    /// Row-major pairs repeated `3n - 2` times, enough for every
    /// [`decompose_sl`] word (see [`default_repeats`]).
    pub fn default_for(n: usize) -> Self {
        SigmaSchedule {
            n,
            pairs: Self::row_major(n),
            repeats: default_repeats(n),
        }
    }

    pub fn slots(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.repeats).flat_map(move |_| self.pairs.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.pairs.len() * self.repeats
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "pairs": self.pairs.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "repeats": self.repeats,
        })
    }
}

/// Number of row-major passes that always suffices for an elimination word.
///
/// Read left to right, the word lists the columns from 1 to `n`. Column
/// `k < n` contributes the pivot letters `(k+1,k), (k,k+1)` or `(k,i)` and
/// then the ascending clearing letters `(1,k), …, (n,k)`: at most three
/// passes. The last column needs one, `3n - 2` in total.
pub fn default_repeats(n: usize) -> usize {
    3 * n - 2
}

/// Number of row-major passes a word needs: one plus the number of
/// positions where the pair does not strictly advance in row-major order.
pub fn row_major_runs(w: &TransvectionWord) -> usize {
    if w.letters.is_empty() {
        return 0;
    }
    let rank = |i: usize, j: usize| (i - 1) * w.n + (j - 1);
    1 + w
        .letters
        .windows(2)
        .filter(|p| rank(p[1].i, p[1].j) <= rank(p[0].i, p[0].j))
        .count()
}

/// Embeds `w` into the schedule, one letter per slot, padding with zeros.
pub fn sigma_pad(w: &TransvectionWord, s: &SigmaSchedule) -> Result<TransvectionWord> {
    if w.diag.is_some() {
        return Err(Error::DiagonalFactor);
    }
    if s.n != w.n {
        return Err(Error::SpecMismatch(format!("word n = {}, schedule n = {}", w.n, s.n)));
    }
    let r = w.ring;
    let mut out = TransvectionWord::empty(r, w.n);
    let mut next = w.letters.iter().enumerate().peekable();
    for (i, j) in s.slots() {
        let alpha = match next.peek() {
            Some((_, l)) if l.i == i && l.j == j => {
                let a = l.alpha.clone();
                next.next();
                a
            }
            _ => r.zero(),
        };
        out.letters.push(Letter { i, j, alpha });
    }
    if let Some((k, _)) = next.next() {
        return Err(Error::ScheduleTooShort {
            letter: k,
            len: s.len(),
        });
    }
    Ok(out)
}

/// Multilinear integer polynomial: sorted variable indices to coefficient.
pub type Poly = BTreeMap<Vec<u32>, i64>;

/// Entry polynomials of the scheduled product `∏ t_{i_s j_s}(x_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryPolynomials {
    pub n: usize,
    pub vars: usize,
    /// Row-major `n × n` table.
    pub entries: Vec<Poly>,
}

/// Expands the scheduled product symbolically; `TooLarge` past `term_cap`
/// monomials in total.
pub fn entry_polynomials(s: &SigmaSchedule, term_cap: usize) -> Result<EntryPolynomials> {
    let n = s.n;
    let mut entries: Vec<Poly> = vec![Poly::new(); n * n];
    for i in 0..n {
        entries[i * n + i].insert(Vec::new(), 1);
    }
    let mut total = n;
    for (v, (i, j)) in s.slots().enumerate() {
        for row in 0..n {
            let src = entries[row * n + (i - 1)].clone();
            let dst = &mut entries[row * n + (j - 1)];
            for (mono, c) in src {
                let mut m = mono;
                m.push(v as u32);
                let e = dst.entry(m).or_insert(0);
                if *e == 0 {
                    total += 1;
                }
                *e += c;
            }
            if total > term_cap {
                return Err(Error::TooLarge {
                    predicted: total as u128,
                    cap: term_cap as u128,
                });
            }
        }
    }
    Ok(EntryPolynomials {
        n,
        vars: s.len(),
        entries,
    })
}

impl EntryPolynomials {
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Evaluates every entry at `values` in the ring.
    pub fn eval(&self, ring: RingSpec, values: &[RingElem]) -> Matrix {
        let entries = self
            .entries
            .iter()
            .map(|p| eval_poly(ring, p, values))
            .collect();
        Matrix::from_entries(ring, self.n, entries).expect("canonical entries")
    }
}

pub fn eval_poly(ring: RingSpec, p: &Poly, values: &[RingElem]) -> RingElem {
    let mut acc = ring.zero();
    for (mono, &c) in p {
        let mut t = ring.from_i64(c);
        for &v in mono {
            t = ring.mul(&t, &values[v as usize]);
        }
        acc = ring.add(&acc, &t);
    }
    acc
}

/// Coefficients of a unitriangular matrix in the layered product
/// `L_1 L_2 ⋯ L_{n-1}`, where `L_m = t_{n-m,n}(·) t_{n-m-1,n-1}(·) ⋯ t_{1,1+m}(·)`.
pub fn ut_normal_form(a: &Matrix) -> Result<Vec<((usize, usize), RingElem)>> {
    if !a.is_member(GroupKind::UT) {
        return Err(Error::NotUnitriangular);
    }
    let r = a.ring();
    let n = a.n();
    let mut rem = a.clone();
    let mut out = Vec::new();
    for m in 1..n {
        let coeffs: Vec<((usize, usize), RingElem)> = (1..=n - m)
            .rev()
            .map(|i| ((i, i + m), rem.entry(i - 1, i + m - 1).clone()))
            .collect();
        let layer = layer_matrix(r, n, &coeffs);
        rem = layer.inv()?.mul(&rem);
        out.extend(coeffs);
    }
    debug_assert!(rem.is_identity());
    Ok(out)
}

fn layer_matrix(r: RingSpec, n: usize, coeffs: &[((usize, usize), RingElem)]) -> Matrix {
    coeffs.iter().fold(Matrix::identity(r, n), |acc, ((i, j), a)| {
        right_transvection(&acc, *i, *j, a)
    })
}

/// Inverse of [`ut_normal_form`].
pub fn ut_from_coefficients(ring: RingSpec, n: usize, coeffs: &[((usize, usize), RingElem)]) -> Matrix {
    layer_matrix(ring, n, coeffs)
}

/// `UT_n^k`: unitriangular matrices whose first `k - 1` superdiagonals vanish.
pub fn ut_power_member(a: &Matrix, k: usize) -> bool {
    let r = a.ring();
    a.is_member(GroupKind::UT)
        && (1..k.min(a.n())).all(|d| (0..a.n() - d).all(|i| r.is_zero(a.entry(i, i + d))))
}

/// `γ_1 = UT_n`, `γ_{k+1} = [γ_k, UT_n]`, computed by commutator closure
/// until the trivial group is reached.
pub fn lower_central_series(ring: RingSpec, n: usize, cap: usize) -> Result<Vec<GroupSet>> {
    let ut = enumerate_group(ring, n, GroupKind::UT, cap)?;
    let g = MatrixGroup { ring, n };
    let all: Vec<Matrix> = ut.elements.iter().cloned().collect();
    let mut series = vec![ut.clone()];
    let mut k = 1;
    while series.last().unwrap().len() > 1 {
        let prev: Vec<Matrix> = series.last().unwrap().elements.iter().cloned().collect();
        let comms: indexmap::IndexSet<Matrix> = prev
            .par_iter()
            .flat_map_iter(|x| all.iter().map(|y| group::Group::commutator(&g, x, y)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        k += 1;
        let gens: Vec<Matrix> = comms.into_iter().collect();
        series.push(GroupSet::generated(ring, n, format!("gamma_{k}"), gens, cap)?);
    }
    Ok(series)
}

/// Result of decomposing every element of a finite SL_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub elements: usize,
    pub max_length: usize,
    pub max_runs: usize,
    pub length_bound: usize,
    pub round_trip_failures: usize,
}

pub fn width_report(ring: RingSpec, n: usize, cap: usize) -> Result<WidthReport> {
    let sl = enumerate_group(ring, n, GroupKind::SL, cap)?;
    width_of(sl.elements.iter(), n)
}

/// Width statistics for an explicit collection of SL_n elements.
pub fn width_of<'a>(elems: impl Iterator<Item = &'a Matrix>, n: usize) -> Result<WidthReport> {
    let elems: Vec<&Matrix> = elems.collect();
    let stats: Vec<Result<(usize, usize, bool)>> = elems
        .par_iter()
        .map(|g| {
            let w = decompose_sl(g)?;
            Ok((w.len(), row_major_runs(&w), w.eval()? == **g))
        })
        .collect();
    let mut rep = WidthReport {
        elements: elems.len(),
        max_length: 0,
        max_runs: 0,
        length_bound: word_length_bound(n),
        round_trip_failures: 0,
    };
    for s in stats {
        let (len, runs, ok) = s?;
        rep.max_length = rep.max_length.max(len);
        rep.max_runs = rep.max_runs.max(runs);
        rep.round_trip_failures += usize::from(!ok);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::DEFAULT_CAP;

    fn gf(p: u64) -> RingSpec {
        RingSpec::prime_field(p).unwrap()
    }

    fn word(r: RingSpec, n: usize, letters: &[(usize, usize, i64)]) -> TransvectionWord {
        let mut w = TransvectionWord::empty(r, n);
        for &(i, j, a) in letters {
            w.push(i, j, r.from_i64(a)).unwrap();
        }
        w
    }

    #[test]
    fn eval_examples() {
        let f5 = gf(5);
        assert!(TransvectionWord::empty(f5, 3).eval().unwrap().is_identity());
        let m = word(f5, 3, &[(1, 2, 2), (2, 3, 3)]).eval().unwrap();
        assert_eq!(m.entry(0, 2), &RingElem::Residue(1));
        let t = Matrix::transvection(f5, 3, 1, 2, &f5.from_i64(4)).unwrap();
        assert_eq!(word(f5, 3, &[(1, 2, 4)]).eval().unwrap(), t);
    }

    #[test]
    fn decompose_examples() {
        let f5 = gf(5);
        assert!(decompose_sl(&Matrix::identity(f5, 3)).unwrap().is_empty());
        let t = Matrix::transvection(f5, 3, 1, 3, &f5.from_i64(4)).unwrap();
        assert_eq!(decompose_sl(&t).unwrap(), word(f5, 3, &[(1, 3, 4)]));
        let f2 = gf(2);
        let p = Matrix::from_i64_rows(f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).unwrap();
        assert_eq!(decompose_sl(&p).unwrap().eval().unwrap(), p);
        let d = Matrix::diag_elem(f5, 3, 1, &f5.from_i64(2)).unwrap();
        assert_eq!(decompose_sl(&d).unwrap_err().name(), "DetNotOne");
        let z6 = RingSpec::modular(6).unwrap();
        assert_eq!(decompose_sl(&Matrix::identity(z6, 3)).unwrap_err().name(), "NotField");
    }

    #[test]
    fn decompose_gl_examples() {
        let f7 = gf(7);
        let d = Matrix::diag_elem(f7, 3, 3, &f7.from_i64(4)).unwrap();
        let w = decompose_gl(&d).unwrap();
        assert!(w.letters.is_empty());
        assert_eq!(w.diag.as_ref().unwrap().value, f7.from_i64(4));
        let sing = Matrix::from_i64_rows(f7, &[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]).unwrap();
        assert_eq!(decompose_gl(&sing).unwrap_err().name(), "NotInvertible");
        let q = RingSpec::Rationals;
        let m = Matrix::from_i64_rows(q, &[&[0, 3, -1], &[2, 0, 5], &[1, 1, 0]]).unwrap();
        let w = decompose_gl(&m).unwrap();
        assert_eq!(w.eval().unwrap(), m);
        assert_eq!(w.diag.as_ref().unwrap().value, m.det());
    }

    #[test]
    fn sl3_gf2_widths() {
        let rep = width_report(gf(2), 3, DEFAULT_CAP).unwrap();
        assert_eq!(rep.elements, 168);
        assert_eq!(rep.round_trip_failures, 0);
        assert!(rep.max_length <= word_length_bound(3));
        assert!(rep.max_runs <= default_repeats(3));
    }

    #[test]
    fn sigma_pad_examples() {
        let f5 = gf(5);
        let s = SigmaSchedule::new(3, vec![(1, 2), (2, 3), (1, 3)], 1).unwrap();
        let padded = sigma_pad(&word(f5, 3, &[(1, 2, 3)]), &s).unwrap();
        assert_eq!(padded, word(f5, 3, &[(1, 2, 3), (2, 3, 0), (1, 3, 0)]));
        let empty = sigma_pad(&TransvectionWord::empty(f5, 3), &s).unwrap();
        assert_eq!(empty.len(), 3);
        assert!(empty.eval().unwrap().is_identity());
        let long = word(f5, 3, &[(1, 2, 1), (2, 3, 1), (1, 2, 1)]);
        assert_eq!(sigma_pad(&long, &s).unwrap_err().name(), "ScheduleTooShort");
    }

    #[test]
    fn entry_polynomial_examples() {
        let s = SigmaSchedule::new(3, vec![(1, 2)], 1).unwrap();
        let p = entry_polynomials(&s, 1000).unwrap();
        assert_eq!(p.get(1, 2), &Poly::from([(vec![0], 1)]));
        assert_eq!(p.get(2, 2), &Poly::from([(vec![], 1)]));
        assert!(p.get(2, 1).is_empty());
        let s = SigmaSchedule::new(3, vec![(1, 2), (2, 3)], 1).unwrap();
        let p = entry_polynomials(&s, 1000).unwrap();
        assert_eq!(p.get(1, 3), &Poly::from([(vec![0, 1], 1)]));
        assert!(entry_polynomials(&SigmaSchedule::default_for(3), 10).is_err());
    }

    #[test]
    fn ut_normal_form_examples() {
        let f7 = gf(7);
        let i4 = Matrix::identity(f7, 4);
        assert!(ut_normal_form(&i4).unwrap().iter().all(|(_, a)| f7.is_zero(a)));
        let t = Matrix::transvection(f7, 3, 1, 3, &f7.from_i64(5)).unwrap();
        let nf = ut_normal_form(&t).unwrap();
        for ((i, j), a) in &nf {
            let want = if (*i, *j) == (1, 3) { 5 } else { 0 };
            assert_eq!(a, &f7.from_i64(want));
        }
        let d = Matrix::diag_elem(f7, 3, 1, &f7.from_i64(2)).unwrap();
        assert_eq!(ut_normal_form(&d).unwrap_err().name(), "NotUnitriangular");
    }

    #[test]
    fn lower_central_series_ut3() {
        let s = lower_central_series(gf(2), 3, DEFAULT_CAP).unwrap();
        assert_eq!(s.iter().map(|g| g.len()).collect::<Vec<_>>(), vec![8, 2, 1]);
    }

    #[test]
    fn word_json_round_trip() {
        let f5 = gf(5);
        let mut w = word(f5, 3, &[(1, 2, 2), (2, 3, 3)]);
        w.diag = Some(DiagFactor {
            at: 2,
            index: 3,
            value: f5.from_i64(4),
        });
        let v = w.to_json();
        assert!(v["diag"].get("at").is_none());
        assert_eq!(TransvectionWord::from_json(&v).unwrap(), w);
        let s = r#"{"ring":"gf:5","n":3,"letters":[[1,2,"2"],[2,3,"3"]],"diag":{"index":3,"value":"4"}}"#;
        let parsed = TransvectionWord::from_json(&serde_json::from_str(s).unwrap()).unwrap();
        assert_eq!(parsed, w);
    }
}
