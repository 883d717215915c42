//! Square matrices over a [`RingSpec`] and the named elements built from them.
//!
//! Public constructors use 1-based indices (`t_ij`, `d_i`); raw entry access
//! through [`Matrix::entry`] is 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    ring: RingSpec,
    n: usize,
    entries: Vec<RingElem>,
}

/// The classical subgroups recognised by [`Matrix::is_member`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    SL,
    /// Upper triangular with invertible diagonal entries.
    T,
    /// Upper unitriangular.
    UT,
    /// Diagonal with unit entries.
    D,
    Scalar,
    /// `UT_n ⋊ B_n`: upper triangular, invertible diagonal, last diagonal entry 1.
    K,
}

impl GroupKind {
    pub const ALL: [GroupKind; 7] = [
        GroupKind::GL,
        GroupKind::SL,
        GroupKind::T,
        GroupKind::UT,
        GroupKind::D,
        GroupKind::Scalar,
        GroupKind::K,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
            GroupKind::T => "T",
            GroupKind::UT => "UT",
            GroupKind::D => "D",
            GroupKind::Scalar => "scalar",
            GroupKind::K => "K",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown group kind {s:?}")))
    }
}

fn check_index(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::BadIndex { i, j, n });
    }
    Ok(())
}

impl Matrix {
    pub fn identity(ring: RingSpec, n: usize) -> Matrix {
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ring.one();
        }
        Matrix { ring, n, entries }
    }

    pub fn zero(ring: RingSpec, n: usize) -> Matrix {
        Matrix {
            ring,
            n,
            entries: vec![ring.zero(); n * n],
        }
    }

    /// Builds a matrix from row-major entries, validating canonical form.
    pub fn from_entries(ring: RingSpec, n: usize, entries: Vec<RingElem>) -> Result<Matrix> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::SpecMismatch(format!(
                "{} entries for an {n}x{n} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ring.validate(e)?;
        }
        Ok(Matrix { ring, n, entries })
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64_rows(ring: RingSpec, rows: &[&[i64]]) -> Result<Matrix> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SpecMismatch("matrix is not square".into()));
            }
            entries.extend(row.iter().map(|&v| ring.from_i64(v)));
        }
        Matrix::from_entries(ring, n, entries)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    /// Entry at 0-based row `r`, column `c`.
    pub fn entry(&self, r: usize, c: usize) -> &RingElem {
        &self.entries[r * self.n + c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: RingElem) {
        self.entries[r * self.n + c] = v;
    }

    /// `I + α e_ij`.
    pub fn transvection(ring: RingSpec, n: usize, i: usize, j: usize, alpha: &RingElem) -> Result<Matrix> {
        check_index(n, i, j)?;
        if i == j {
            return Err(Error::BadIndex { i, j, n });
        }
        ring.validate(alpha)?;
        let mut m = Matrix::identity(ring, n);
        m.entries[(i - 1) * n + (j - 1)] = alpha.clone();
        Ok(m)
    }

    /// `d_i(α)`: identity with α at position (i,i).
    pub fn diag_elem(ring: RingSpec, n: usize, i: usize, alpha: &RingElem) -> Result<Matrix> {
        check_index(n, i, i)?;
        ring.validate(alpha)?;
        if !ring.is_unit(alpha) {
            return Err(Error::NonUnit(alpha.to_string()));
        }
        let mut m = Matrix::identity(ring, n);
        m.entries[(i - 1) * n + (i - 1)] = alpha.clone();
        Ok(m)
    }

    /// `α I_n`.
    pub fn scalar(ring: RingSpec, n: usize, alpha: &RingElem) -> Result<Matrix> {
        ring.validate(alpha)?;
        if !ring.is_unit(alpha) {
            return Err(Error::NonUnit(alpha.to_string()));
        }
        Ok(Matrix::diag_unchecked(ring, &vec![alpha.clone(); n]))
    }

    /// `diag(α_1, …, α_n)`, every α a unit.
    pub fn diag_full(ring: RingSpec, alphas: &[RingElem]) -> Result<Matrix> {
        for a in alphas {
            ring.validate(a)?;
            if !ring.is_unit(a) {
                return Err(Error::NonUnit(a.to_string()));
            }
        }
        Ok(Matrix::diag_unchecked(ring, alphas))
    }

    pub(crate) fn diag_unchecked(ring: RingSpec, alphas: &[RingElem]) -> Matrix {
        let n = alphas.len();
        let mut m = Matrix::zero(ring, n);
        for (i, a) in alphas.iter().enumerate() {
            m.entries[i * n + i] = a.clone();
        }
        m
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring || self.n != other.n {
            return Err(Error::SpecMismatch(format!(
                "{}x{} over {} vs {}x{} over {}",
                self.n, self.n, self.ring, other.n, other.n, other.ring
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    /// Product; panics on incompatible operands (see [`Matrix::try_mul`]).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert!(
            self.ring == other.ring && self.n == other.n,
            "incompatible matrix product"
        );
        let n = self.n;
        let r = self.ring;
        let mut out = Vec::with_capacity(n * n);
        if let Some(m) = r.modulus() {
            // Fast path: accumulate residues in u128 and reduce once.
            let a: Vec<u64> = self.entries.iter().map(|e| e.residue().unwrap()).collect();
            let b: Vec<u64> = other.entries.iter().map(|e| e.residue().unwrap()).collect();
            for i in 0..n {
                for j in 0..n {
                    let mut acc: u128 = 0;
                    for k in 0..n {
                        acc += a[i * n + k] as u128 * b[k * n + j] as u128;
                    }
                    out.push(RingElem::Residue((acc % m as u128) as u64));
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = r.zero();
                    for k in 0..n {
                        let x = &self.entries[i * n + k];
                        let y = &other.entries[k * n + j];
                        if r.is_zero(x) || r.is_zero(y) {
                            continue;
                        }
                        acc = r.add(&acc, &r.mul(x, y));
                    }
                    out.push(acc);
                }
            }
        }
        Matrix {
            ring: r,
            n,
            entries: out,
        }
    }

    pub fn is_identity(&self) -> bool {
        let r = self.ring;
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.entry(i, j);
                if i == j {
                    r.is_one(e)
                } else {
                    r.is_zero(e)
                }
            })
        })
    }

    pub fn det(&self) -> RingElem {
        match self.ring {
            RingSpec::Rationals => self.det_bareiss(),
            RingSpec::PrimeField(_) => self.det_gauss(),
            RingSpec::ModularRing(_) if self.ring.is_field() => self.det_gauss(),
            RingSpec::ModularRing(_) => self.det_expansion(),
        }
    }

    /// Fraction-free elimination; every division is exact.
    fn det_bareiss(&self) -> RingElem {
        let r = self.ring;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut sign_neg = false;
        let mut prev = r.one();
        for k in 0..n {
            if r.is_zero(&a[k * n + k]) {
                let Some(p) = (k + 1..n).find(|&i| !r.is_zero(&a[i * n + k])) else {
                    return r.zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign_neg = !sign_neg;
            }
            let prev_inv = r.inv(&prev).expect("nonzero pivot");
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = r.sub(
                        &r.mul(&a[i * n + j], &a[k * n + k]),
                        &r.mul(&a[i * n + k], &a[k * n + j]),
                    );
                    a[i * n + j] = r.mul(&v, &prev_inv);
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if sign_neg {
            r.neg(&d)
        } else {
            d
        }
    }

    fn det_gauss(&self) -> RingElem {
        let r = self.ring;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut d = r.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !r.is_zero(&a[i * n + k])) else {
                return r.zero();
            };
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                d = r.neg(&d);
            }
            let piv = a[k * n + k].clone();
            d = r.mul(&d, &piv);
            let piv_inv = r.inv(&piv).expect("nonzero element of a field");
            for i in k + 1..n {
                let f = r.mul(&a[i * n + k], &piv_inv);
                if r.is_zero(&f) {
                    continue;
                }
                for c in k..n {
                    let v = r.sub(&a[i * n + c], &r.mul(&f, &a[k * n + c]));
                    a[i * n + c] = v;
                }
            }
        }
        d
    }

    /// Cofactor expansion along rows, memoised over column subsets.
    /// Division-free, so valid over rings with zero divisors.
    fn det_expansion(&self) -> RingElem {
        det_of_rows(self.ring, self.n, |i, j| self.entry(i, j).clone(), &(0..self.n).collect::<Vec<_>>(), &(0..self.n).collect::<Vec<_>>())
    }

    /// Inverse; `NotInvertible` when the determinant is not a unit.
    pub fn inv(&self) -> Result<Matrix> {
        if self.ring.is_field() {
            self.inv_gauss_jordan()
        } else {
            self.inv_adjugate()
        }
    }

    fn inv_gauss_jordan(&self) -> Result<Matrix> {
        let r = self.ring;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Matrix::identity(r, n).entries;
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !r.is_zero(&a[i * n + k]))
                .ok_or(Error::NotInvertible)?;
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                    b.swap(k * n + c, p * n + c);
                }
            }
            let piv_inv = r.inv(&a[k * n + k]).map_err(|_| Error::NotInvertible)?;
            for c in 0..n {
                a[k * n + c] = r.mul(&a[k * n + c], &piv_inv);
                b[k * n + c] = r.mul(&b[k * n + c], &piv_inv);
            }
            for i in 0..n {
                if i == k || r.is_zero(&a[i * n + k]) {
                    continue;
                }
                let f = a[i * n + k].clone();
                for c in 0..n {
                    a[i * n + c] = r.sub(&a[i * n + c], &r.mul(&f, &a[k * n + c]));
                    b[i * n + c] = r.sub(&b[i * n + c], &r.mul(&f, &b[k * n + c]));
                }
            }
        }
        Ok(Matrix {
            ring: r,
            n,
            entries: b,
        })
    }

    fn inv_adjugate(&self) -> Result<Matrix> {
        let r = self.ring;
        let n = self.n;
        let d = self.det();
        let d_inv = r.inv(&d).map_err(|_| Error::NotInvertible)?;
        let all: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // (adj A)_ij = (-1)^{i+j} det(A with row j and column i removed)
                let rows: Vec<usize> = all.iter().copied().filter(|&x| x != j).collect();
                let cols: Vec<usize> = all.iter().copied().filter(|&x| x != i).collect();
                let minor = det_of_rows(r, n - 1, |a, b| self.entry(a, b).clone(), &rows, &cols);
                let c = if (i + j) % 2 == 1 { r.neg(&minor) } else { minor };
                out.push(r.mul(&c, &d_inv));
            }
        }
        Ok(Matrix {
            ring: r,
            n,
            entries: out,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(&self.det())
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        Ok(self.inv()?.mul(&other.inv()?).mul(self).mul(other))
    }

    /// `a^b = b⁻¹ a b`.
    pub fn conjugate(&self, by: &Matrix) -> Result<Matrix> {
        self.check_compatible(by)?;
        Ok(by.inv()?.mul(self).mul(by))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.ring, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_upper_triangular(&self) -> bool {
        let r = self.ring;
        (0..self.n).all(|i| (0..i).all(|j| r.is_zero(self.entry(i, j))))
    }

    pub fn is_diagonal(&self) -> bool {
        let r = self.ring;
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || r.is_zero(self.entry(i, j))))
    }

    fn diagonal_units(&self) -> bool {
        (0..self.n).all(|i| self.ring.is_unit(self.entry(i, i)))
    }

    pub fn is_member(&self, kind: GroupKind) -> bool {
        let r = self.ring;
        match kind {
            GroupKind::GL => self.is_invertible(),
            GroupKind::SL => r.is_one(&self.det()),
            GroupKind::T => self.is_upper_triangular() && self.diagonal_units(),
            GroupKind::UT => {
                self.is_upper_triangular() && (0..self.n).all(|i| r.is_one(self.entry(i, i)))
            }
            GroupKind::D => self.is_diagonal() && self.diagonal_units(),
            GroupKind::Scalar => {
                self.is_diagonal()
                    && self.diagonal_units()
                    && (1..self.n).all(|i| self.entry(i, i) == self.entry(0, 0))
            }
            GroupKind::K => {
                self.is_upper_triangular()
                    && self.diagonal_units()
                    && r.is_one(self.entry(self.n - 1, self.n - 1))
            }
        }
    }

    /// Serialises to the matrix JSON object.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.n)
            .map(|i| {
                Value::Array(
                    (0..self.n)
                        .map(|j| elem_to_json(self.entry(i, j)))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "ring": self.ring.to_string(),
            "n": self.n,
            "entries": rows,
        })
    }

    pub fn from_json(v: &Value) -> Result<Matrix> {
        let ring = json_ring(v)?;
        let n = json_n(v)?;
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix needs an \"entries\" array".into()))?;
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, got {}", rows.len())));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::Parse(format!("each row must hold {n} entries")))?;
            for e in row {
                entries.push(elem_from_json(ring, e)?);
            }
        }
        Matrix::from_entries(ring, n, entries)
    }

    pub fn from_json_str(s: &str) -> Result<Matrix> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Matrix::from_json(&v)
    }
}

/// Determinant of the submatrix on the given rows and columns.
fn det_of_rows(
    r: RingSpec,
    k: usize,
    get: impl Fn(usize, usize) -> RingElem,
    rows: &[usize],
    cols: &[usize],
) -> RingElem {
    debug_assert_eq!(rows.len(), k);
    debug_assert_eq!(cols.len(), k);
    if k == 0 {
        return r.one();
    }
    // dp[mask]: signed sum over bijections of the first popcount(mask) rows
    // onto the columns in mask.
    let mut dp = vec![r.zero(); 1 << k];
    dp[0] = r.one();
    for mask in 0..(1usize << k) {
        if r.is_zero(&dp[mask]) {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == k {
            continue;
        }
        for c in 0..k {
            if mask & (1 << c) != 0 {
                continue;
            }
            let e = get(rows[row], cols[c]);
            if r.is_zero(&e) {
                continue;
            }
            // Sign from the number of chosen columns to the right of c.
            let above = (mask >> (c + 1)).count_ones();
            let mut t = r.mul(&dp[mask], &e);
            if above % 2 == 1 {
                t = r.neg(&t);
            }
            let next = mask | (1 << c);
            dp[next] = r.add(&dp[next], &t);
        }
    }
    dp[(1 << k) - 1].clone()
}

pub(crate) fn elem_to_json(e: &RingElem) -> Value {
    match e {
        RingElem::Residue(v) => Value::from(*v),
        RingElem::Rational(_) => Value::String(e.to_string()),
    }
}

pub(crate) fn elem_from_json(ring: RingSpec, v: &Value) -> Result<RingElem> {
    match v {
        Value::String(s) => ring.parse_elem(s),
        Value::Number(num) => ring.parse_elem(&num.to_string()),
        _ => Err(Error::Parse(format!("ring element must be a number or string, got {v}"))),
    }
}

pub(crate) fn json_ring(v: &Value) -> Result<RingSpec> {
    v.get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing \"ring\" field".into()))?
        .parse()
}

pub(crate) fn json_n(v: &Value) -> Result<usize> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer \"n\" field".into()))? as usize;
    if n < 2 {
        return Err(Error::Parse(format!("dimension n must be at least 2, got {n}")));
    }
    Ok(n)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> RingSpec {
        RingSpec::prime_field(p).unwrap()
    }

    fn t(r: RingSpec, n: usize, i: usize, j: usize, a: i64) -> Matrix {
        Matrix::transvection(r, n, i, j, &r.from_i64(a)).unwrap()
    }

    #[test]
    fn transvection_examples() {
        assert_eq!(t(gf(5), 3, 1, 2, 0), Matrix::identity(gf(5), 3));
        let m = t(gf(5), 3, 1, 3, 2);
        assert_eq!(m.entry(0, 2), &RingElem::Residue(2));
        let err = Matrix::transvection(gf(5), 3, 1, 1, &gf(5).one()).unwrap_err();
        assert_eq!(err.name(), "BadIndex");
        assert_eq!(
            Matrix::transvection(gf(5), 3, 1, 4, &gf(5).one()).unwrap_err().name(),
            "BadIndex"
        );
    }

    #[test]
    fn diagonal_examples() {
        let f7 = gf(7);
        assert_eq!(Matrix::diag_elem(f7, 3, 1, &f7.one()).unwrap(), Matrix::identity(f7, 3));
        let s = Matrix::scalar(f7, 3, &f7.from_i64(3)).unwrap();
        assert!(s.is_member(GroupKind::Scalar));
        let z6 = RingSpec::modular(6).unwrap();
        assert_eq!(Matrix::diag_elem(z6, 3, 1, &z6.from_i64(2)).unwrap_err().name(), "NonUnit");
    }

    #[test]
    fn commutator_and_conjugate_examples() {
        let f5 = gf(5);
        let c = t(f5, 3, 1, 2, 2).commutator(&t(f5, 3, 2, 3, 3)).unwrap();
        assert_eq!(c, t(f5, 3, 1, 3, 1));
        let c = t(f5, 4, 1, 3, 2).commutator(&t(f5, 4, 2, 4, 3)).unwrap();
        assert!(c.is_identity());
        let f7 = gf(7);
        let d = Matrix::diag_full(f7, &[f7.from_i64(2), f7.from_i64(3), f7.from_i64(5)]).unwrap();
        let x = t(f7, 3, 1, 2, 4).conjugate(&d).unwrap();
        // 2⁻¹ · 4 · 3 = 4 · 4 · 3 = 48 = 6 (mod 7)
        assert_eq!(x, t(f7, 3, 1, 2, 6));
    }

    #[test]
    fn determinant_examples() {
        let f7 = gf(7);
        assert!(f7.is_one(&Matrix::identity(f7, 3).det()));
        assert!(f7.is_one(&t(f7, 3, 2, 1, 5).det()));
        assert_eq!(Matrix::diag_elem(f7, 3, 1, &f7.from_i64(3)).unwrap().det(), f7.from_i64(3));
        let q = RingSpec::Rationals;
        let m = Matrix::from_i64_rows(q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
        assert_eq!(m.det(), q.from_i64(18));
        let z6 = RingSpec::modular(6).unwrap();
        let m = Matrix::from_i64_rows(z6, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
        assert_eq!(m.det(), z6.from_i64(0));
    }

    #[test]
    fn membership_examples() {
        let f5 = gf(5);
        let m = t(f5, 3, 1, 2, 4);
        assert!(m.is_member(GroupKind::UT));
        assert!(m.is_member(GroupKind::SL));
        assert!(!m.is_member(GroupKind::D));
        let f7 = gf(7);
        let d = Matrix::diag_elem(f7, 3, 1, &f7.from_i64(3)).unwrap();
        assert!(d.is_member(GroupKind::T));
        assert!(!d.is_member(GroupKind::UT));
        assert!(!d.is_member(GroupKind::SL));
        let d = Matrix::diag_full(f7, &[f7.from_i64(2), f7.from_i64(4), f7.one()]).unwrap();
        assert!(d.is_member(GroupKind::SL));
    }

    #[test]
    fn inverse_over_zero_divisor_ring() {
        let z6 = RingSpec::modular(6).unwrap();
        let m = Matrix::from_i64_rows(z6, &[&[1, 2, 3], &[0, 5, 4], &[2, 0, 1]]).unwrap();
        let d = m.det();
        if z6.is_unit(&d) {
            assert!(m.mul(&m.inv().unwrap()).is_identity());
        } else {
            assert_eq!(m.inv().unwrap_err(), Error::NotInvertible);
        }
        let m = t(z6, 3, 1, 2, 2).mul(&t(z6, 3, 3, 1, 5));
        assert!(m.mul(&m.inv().unwrap()).is_identity());
        let sing = Matrix::from_i64_rows(z6, &[&[2, 0], &[0, 1]]).unwrap();
        assert_eq!(sing.inv().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn json_round_trip() {
        let q = RingSpec::Rationals;
        let m = Matrix::from_entries(
            q,
            2,
            ["1/2", "3", "-4/7", "0"].iter().map(|s| q.parse_elem(s).unwrap()).collect(),
        )
        .unwrap();
        let back = Matrix::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        let s = r#"{"ring":"gf:5","n":2,"entries":[[1,7],[0,"1"]]}"#;
        let m = Matrix::from_json_str(s).unwrap();
        assert_eq!(m.entry(0, 1), &RingElem::Residue(2));
        assert!(Matrix::from_json_str(r#"{"ring":"gf:5","n":2,"entries":[[1]]}"#).is_err());
    }
}
