//! Exact arithmetic over GF(p), Z/m and Q.
//!
//! A [`RingSpec`] is a small `Copy` descriptor; elements are [`RingElem`]
//! values in canonical form, so structural equality is ring equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    /// GF(p), p prime.
    PrimeField(u64),
    /// Z/m, m >= 2; zero divisors allowed.
    ModularRing(u64),
    Rationals,
}

/// Canonical ring element: a residue in `[0, m)` or a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElem {
    Residue(u64),
    Rational(Box<BigRational>),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Prime factorisation as `(p, k)` pairs in increasing order of `p`.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            let mut k = 0;
            while m % d == 0 {
                m /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Extended Euclid on `i128`: returns `(g, x, y)` with `a x + b y = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("gf:{p} requires a prime modulus")));
        }
        Ok(RingSpec::PrimeField(p))
    }

    pub fn modular(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Parse(format!("zmod:{m} requires modulus >= 2")));
        }
        Ok(RingSpec::ModularRing(m))
    }

    pub fn modulus(&self) -> Option<u64> {
        match *self {
            RingSpec::PrimeField(m) | RingSpec::ModularRing(m) => Some(m),
            RingSpec::Rationals => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    /// True for GF(p), Q, and Z/p with p prime.
    pub fn is_field(&self) -> bool {
        match *self {
            RingSpec::PrimeField(_) | RingSpec::Rationals => true,
            RingSpec::ModularRing(m) => is_prime(m),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        self.modulus()
    }

    pub(crate) fn require_finite(&self) -> Result<u64> {
        self.modulus()
            .ok_or_else(|| Error::InfiniteRing(self.to_string()))
    }

    pub(crate) fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotField(self.to_string()))
        }
    }

    pub fn zero(&self) -> RingElem {
        match self {
            RingSpec::Rationals => RingElem::Rational(Box::new(BigRational::zero())),
            _ => RingElem::Residue(0),
        }
    }

    pub fn one(&self) -> RingElem {
        match self {
            RingSpec::Rationals => RingElem::Rational(Box::new(BigRational::one())),
            _ => RingElem::Residue(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> RingElem {
        match *self {
            RingSpec::PrimeField(m) | RingSpec::ModularRing(m) => {
                RingElem::Residue(v.rem_euclid(m as i64) as u64)
            }
            RingSpec::Rationals => RingElem::Rational(Box::new(BigRational::from_integer(v.into()))),
        }
    }

    pub fn from_rational(&self, num: i64, den: i64) -> Result<RingElem> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self {
            RingSpec::Rationals => Ok(RingElem::Rational(Box::new(BigRational::new(
                num.into(),
                den.into(),
            )))),
            _ => {
                let d = self.from_i64(den);
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_i64(num), &inv))
            }
        }
    }

    /// Parses `"3"`, `"-2"` or `"p/q"`; fractions over finite rings need a
    /// unit denominator.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad ring element {s:?} for {self}"));
        if let Some((p, q)) = s.split_once('/') {
            match self {
                RingSpec::Rationals => {
                    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                    if q.is_zero() {
                        return Err(bad());
                    }
                    Ok(RingElem::Rational(Box::new(BigRational::new(p, q))))
                }
                _ => {
                    let p: i64 = p.trim().parse().map_err(|_| bad())?;
                    let q: i64 = q.trim().parse().map_err(|_| bad())?;
                    self.from_rational(p, q)
                }
            }
        } else {
            match self {
                RingSpec::Rationals => {
                    let v: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(RingElem::Rational(Box::new(BigRational::from_integer(v))))
                }
                _ => {
                    let v: i64 = s.parse().map_err(|_| bad())?;
                    Ok(self.from_i64(v))
                }
            }
        }
    }

    /// Checks that `a` is a canonical element of this ring.
    pub fn validate(&self, a: &RingElem) -> Result<()> {
        match (self, a) {
            (RingSpec::PrimeField(m) | RingSpec::ModularRing(m), RingElem::Residue(v)) if v < m => {
                Ok(())
            }
            (RingSpec::Rationals, RingElem::Rational(_)) => Ok(()),
            _ => Err(Error::SpecMismatch(format!("{a} is not an element of {self}"))),
        }
    }

    fn residue(&self, a: &RingElem) -> u64 {
        match a {
            RingElem::Residue(v) => *v,
            RingElem::Rational(_) => panic!("rational element used with {self}"),
        }
    }

    fn rational<'a>(&self, a: &'a RingElem) -> &'a BigRational {
        match a {
            RingElem::Rational(r) => r,
            RingElem::Residue(_) => panic!("residue element used with {self}"),
        }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match *self {
            RingSpec::PrimeField(m) | RingSpec::ModularRing(m) => {
                let s = self.residue(a) + self.residue(b);
                RingElem::Residue(if s >= m { s - m } else { s })
            }
            RingSpec::Rationals => {
                RingElem::Rational(Box::new(self.rational(a) + self.rational(b)))
            }
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match *self {
            RingSpec::PrimeField(m) | RingSpec::ModularRing(m) => {
                let v = self.residue(a);
                RingElem::Residue(if v == 0 { 0 } else { m - v })
            }
            RingSpec::Rationals => RingElem::Rational(Box::new(-self.rational(a))),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match *self {
            RingSpec::PrimeField(m) | RingSpec::ModularRing(m) => {
                let p = (self.residue(a) as u128 * self.residue(b) as u128) % m as u128;
                RingElem::Residue(p as u64)
            }
            RingSpec::Rationals => {
                RingElem::Rational(Box::new(self.rational(a) * self.rational(b)))
            }
        }
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Residue(v) => *v == 0,
            RingElem::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Residue(v) => *v == 1,
            RingElem::Rational(r) => r.is_one(),
        }
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        match *self {
            RingSpec::PrimeField(m) | RingSpec::ModularRing(m) => gcd(self.residue(a), m) == 1,
            RingSpec::Rationals => !self.rational(a).is_zero(),
        }
    }

    /// Multiplicative inverse; `NonUnit` for zero divisors and zero.
    pub fn inv(&self, a: &RingElem) -> Result<RingElem> {
        match *self {
            RingSpec::PrimeField(m) | RingSpec::ModularRing(m) => {
                let v = self.residue(a);
                let (g, x, _) = ext_gcd(v as i128, m as i128);
                if g != 1 {
                    return Err(Error::NonUnit(format!("{v} in {self}")));
                }
                Ok(RingElem::Residue(x.rem_euclid(m as i128) as u64))
            }
            RingSpec::Rationals => {
                let r = self.rational(a);
                if r.is_zero() {
                    return Err(Error::NonUnit(format!("0 in {self}")));
                }
                Ok(RingElem::Rational(Box::new(r.recip())))
            }
        }
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Result<Vec<RingElem>> {
        let m = self.require_finite()?;
        Ok((0..m).map(RingElem::Residue).collect())
    }

    /// The unit group R^x, sorted canonically.
    pub fn units(&self) -> Result<Vec<RingElem>> {
        let m = self.require_finite()?;
        Ok((1..m)
            .filter(|&v| gcd(v, m) == 1)
            .map(RingElem::Residue)
            .collect())
    }

    /// The subgroup `(R^x)^n` of n-th powers of units and its index in R^x.
    pub fn nth_power_classes(&self, n: u64) -> Result<(Vec<RingElem>, u64)> {
        let units = self.units()?;
        let mut powers: Vec<RingElem> = units.iter().map(|u| self.pow(u, n)).collect();
        powers.sort();
        powers.dedup();
        let index = units.len() as u64 / powers.len() as u64;
        Ok((powers, index))
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, a: &RingElem) -> Result<u64> {
        let m = self.require_finite()?;
        if !self.is_unit(a) {
            return Err(Error::NonUnit(a.to_string()));
        }
        let mut x = a.clone();
        let mut k = 1;
        while !self.is_one(&x) {
            x = self.mul(&x, a);
            k += 1;
            debug_assert!(k <= m);
        }
        Ok(k)
    }

    /// Smallest generator of R^x, if the unit group is cyclic.
    pub fn primitive_root(&self) -> Result<Option<RingElem>> {
        let units = self.units()?;
        let phi = units.len() as u64;
        for u in &units {
            if self.unit_order(u)? == phi {
                return Ok(Some(u.clone()));
            }
        }
        Ok(None)
    }

    pub fn format_elem(&self, a: &RingElem) -> String {
        a.to_string()
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::PrimeField(p) => write!(f, "gf:{p}"),
            RingSpec::ModularRing(m) => write!(f, "zmod:{m}"),
            RingSpec::Rationals => write!(f, "q"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(RingSpec::Rationals);
        }
        let (kind, m) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad ring spec {s:?}; expected gf:p, zmod:m or q")))?;
        let m: u64 = m
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in ring spec {s:?}")))?;
        match kind {
            "gf" => RingSpec::prime_field(m),
            "zmod" => RingSpec::modular(m),
            _ => Err(Error::Parse(format!("unknown ring kind {kind:?}"))),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Residue(v) => write!(f, "{v}"),
            RingElem::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl RingElem {
    /// Residue value for finite rings.
    pub fn residue(&self) -> Option<u64> {
        match self {
            RingElem::Residue(v) => Some(*v),
            RingElem::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RingElem::Rational(r) => Some(r),
            RingElem::Residue(_) => None,
        }
    }

    /// Integer value when the element is an integral rational of small size.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            RingElem::Residue(v) => i64::try_from(*v).ok(),
            RingElem::Rational(r) if r.is_integer() => r.numer().to_i64(),
            RingElem::Rational(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, RingElem::Rational(r) if r.is_negative())
    }
}

/// Discrete logarithm table for a cyclic unit group.
///
/// Maps units to exponents of a fixed generator and back; used to identify
/// R^x with Z/(|R^x|).
#[derive(Clone, Debug)]
pub struct UnitLog {
    ring: RingSpec,
    generator: RingElem,
    powers: Vec<RingElem>,
    logs: Vec<Option<u64>>,
}

impl UnitLog {
    pub fn new(ring: RingSpec) -> Result<Self> {
        let m = ring.require_finite()?;
        let generator = ring
            .primitive_root()?
            .ok_or_else(|| Error::NotField(format!("{ring} has a non-cyclic unit group")))?;
        let mut powers = Vec::new();
        let mut logs = vec![None; m as usize];
        let mut x = ring.one();
        loop {
            let v = x.residue().expect("finite ring") as usize;
            if logs[v].is_some() {
                break;
            }
            logs[v] = Some(powers.len() as u64);
            powers.push(x.clone());
            x = ring.mul(&x, &generator);
        }
        Ok(UnitLog {
            ring,
            generator,
            powers,
            logs,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn generator(&self) -> &RingElem {
        &self.generator
    }

    /// Order of the unit group.
    pub fn order(&self) -> u64 {
        self.powers.len() as u64
    }

    pub fn log(&self, u: &RingElem) -> Result<u64> {
        u.residue()
            .and_then(|v| self.logs.get(v as usize).copied().flatten())
            .ok_or_else(|| Error::NonUnit(u.to_string()))
    }

    pub fn exp(&self, k: u64) -> RingElem {
        self.powers[(k % self.order()) as usize].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> RingSpec {
        RingSpec::prime_field(p).unwrap()
    }

    fn r(spec: RingSpec, s: &str) -> RingElem {
        spec.parse_elem(s).unwrap()
    }

    #[test]
    fn add_examples() {
        let f5 = gf(5);
        assert_eq!(f5.add(&r(f5, "2"), &r(f5, "3")), r(f5, "0"));
        let f7 = gf(7);
        assert_eq!(f7.add(&r(f7, "0"), &r(f7, "4")), r(f7, "4"));
        let q = RingSpec::Rationals;
        assert_eq!(q.add(&r(q, "1/2"), &r(q, "1/3")), r(q, "5/6"));
    }

    #[test]
    fn mul_neg_examples() {
        let f7 = gf(7);
        assert_eq!(f7.mul(&r(f7, "2"), &r(f7, "3")), r(f7, "6"));
        let z6 = RingSpec::modular(6).unwrap();
        assert_eq!(z6.mul(&r(z6, "2"), &r(z6, "3")), r(z6, "0"));
        let f5 = gf(5);
        assert_eq!(f5.neg(&r(f5, "2")), r(f5, "3"));
    }

    #[test]
    fn inverse_examples() {
        let f7 = gf(7);
        assert_eq!(f7.inv(&r(f7, "3")).unwrap(), r(f7, "5"));
        let z6 = RingSpec::modular(6).unwrap();
        assert_eq!(z6.inv(&r(z6, "5")).unwrap(), r(z6, "5"));
        assert_eq!(z6.inv(&r(z6, "2")).unwrap_err().name(), "NonUnit");
        assert_eq!(f7.inv(&f7.zero()).unwrap_err().name(), "NonUnit");
        let q = RingSpec::Rationals;
        assert_eq!(q.inv(&r(q, "-2/3")).unwrap(), r(q, "-3/2"));
    }

    #[test]
    fn unit_lists() {
        assert_eq!(gf(5).units().unwrap(), ["1", "2", "3", "4"].map(|s| r(gf(5), s)));
        let z6 = RingSpec::modular(6).unwrap();
        assert_eq!(z6.units().unwrap(), vec![r(z6, "1"), r(z6, "5")]);
        let z8 = RingSpec::modular(8).unwrap();
        assert_eq!(z8.units().unwrap().len(), 4);
        assert_eq!(
            RingSpec::Rationals.units().unwrap_err().name(),
            "InfiniteRing"
        );
    }

    #[test]
    fn power_class_index() {
        assert_eq!(gf(7).nth_power_classes(3).unwrap().1, 3);
        assert_eq!(gf(7).nth_power_classes(3).unwrap().0, vec![r(gf(7), "1"), r(gf(7), "6")]);
        assert_eq!(gf(5).nth_power_classes(3).unwrap().1, 1);
        assert_eq!(gf(7).nth_power_classes(1).unwrap().1, 1);
        assert!(RingSpec::Rationals.nth_power_classes(2).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("gf:5".parse::<RingSpec>().unwrap(), RingSpec::PrimeField(5));
        assert_eq!("zmod:6".parse::<RingSpec>().unwrap(), RingSpec::ModularRing(6));
        assert_eq!("q".parse::<RingSpec>().unwrap(), RingSpec::Rationals);
        assert!("gf:6".parse::<RingSpec>().is_err());
        assert!("zmod:1".parse::<RingSpec>().is_err());
        assert!("foo".parse::<RingSpec>().is_err());
        for s in ["gf:13", "zmod:8", "q"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn rational_canonical_form() {
        let q = RingSpec::Rationals;
        assert_eq!(r(q, "2/4"), r(q, "1/2"));
        assert_eq!(r(q, "3/-6").to_string(), "-1/2");
        assert_eq!(r(q, "4/2").to_string(), "2");
        let f7 = gf(7);
        assert_eq!(r(f7, "1/2"), r(f7, "4"));
        assert_eq!(r(f7, "-1"), r(f7, "6"));
    }

    #[test]
    fn unit_log_round_trip() {
        let log = UnitLog::new(gf(7)).unwrap();
        assert_eq!(log.order(), 6);
        for u in gf(7).units().unwrap() {
            assert_eq!(log.exp(log.log(&u).unwrap()), u);
        }
        assert!(UnitLog::new(RingSpec::modular(8).unwrap()).is_err());
    }
}
