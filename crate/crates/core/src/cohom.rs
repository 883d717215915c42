//! Finite abelian groups and normalized 2-cocycles between them, stored as
//! explicit tables. Codomains are written additively here; reports print
//! them as tuples.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::{CayleyTable, Group};
use crate::report::Report;
use crate::ring::gcd;

/// Largest `|B|²` accepted for cocycle tables.
pub const TABLE_CAP: usize = 1 << 20;
/// Largest number of candidate tables `ext_group` will enumerate.
pub const EXT_CAP: u128 = 1 << 22;

/// `Z/m_1 × ⋯ × Z/m_k`; elements are mixed-radix indices with the first
/// factor most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidCocycle("cyclic orders must be at least 1".into()));
        }
        let mut strides = vec![0usize; orders.len()];
        let mut size = 1usize;
        for (k, &m) in orders.iter().enumerate().rev() {
            strides[k] = size;
            size = size
                .checked_mul(m as usize)
                .ok_or(Error::TooLarge { predicted: u128::MAX, cap: usize::MAX as u128 })?;
        }
        Ok(FinAbGroup { orders, strides, size })
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("empty product")
    }

    /// Direct product, factors of `self` first.
    pub fn product(&self, other: &FinAbGroup) -> Self {
        let mut o = self.orders.clone();
        o.extend_from_slice(&other.orders);
        Self::new(o).expect("orders already valid")
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn coords(&self, x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| ((x / s) as u64) % m)
            .collect()
    }

    pub fn from_coords(&self, c: &[u64]) -> Result<usize> {
        if c.len() != self.orders.len() {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                c.len()
            )));
        }
        Ok(c.iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&v, &m), &s)| (v % m) as usize * s)
            .sum())
    }

    /// The k-th standard generator.
    pub fn gen(&self, k: usize) -> usize {
        if self.orders[k] == 1 {
            0
        } else {
            self.strides[k]
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut r = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let m = m as usize;
            r += ((a / s) % m + (b / s) % m) % m * s;
        }
        r
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut r = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let m = m as usize;
            r += (m - (a / s) % m) % m * s;
        }
        r
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: usize, k: u64) -> usize {
        let mut r = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            r += ((((a / s) as u64 % m) * (k % m)) % m) as usize * s;
        }
        r
    }

    pub fn elem_order(&self, a: usize) -> u64 {
        self.orders
            .iter()
            .zip(self.coords(a))
            .fold(1, |acc, (&m, c)| {
                let o = m / gcd(m, c);
                acc / gcd(acc, o) * o
            })
    }

    pub fn format(&self, a: usize) -> String {
        let c = self.coords(a);
        let parts: Vec<String> = c.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }

    /// Parses `(1,0)`, `1,0` or a bare integer for rank-1 groups.
    pub fn parse(&self, s: &str) -> Result<usize> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        let coords: Vec<u64> = if t.is_empty() {
            Vec::new()
        } else {
            t.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad group element {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        if self.orders.is_empty() && coords == [0] {
            return Ok(0);
        }
        for (c, m) in coords.iter().zip(&self.orders) {
            if c >= m {
                return Err(Error::Parse(format!("coordinate {c} out of range in {s:?}")));
            }
        }
        self.from_coords(&coords)
    }
}

/// A 2-cocycle table `B × B → A`, entry `(x, y)` at `x·|B| + y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    pub domain: FinAbGroup,
    pub codomain: FinAbGroup,
    pub table: Vec<usize>,
    pub symmetric: bool,
}

impl Cocycle {
    pub fn trivial(domain: FinAbGroup, codomain: FinAbGroup) -> Self {
        let n = domain.order();
        Cocycle {
            domain,
            codomain,
            table: vec![0; n * n],
            symmetric: true,
        }
    }

    pub fn from_fn(
        domain: FinAbGroup,
        codomain: FinAbGroup,
        symmetric: bool,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = domain.order();
        if n.saturating_mul(n) > TABLE_CAP {
            return Err(Error::TooLarge {
                predicted: (n as u128) * (n as u128),
                cap: TABLE_CAP as u128,
            });
        }
        let table = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Ok(Cocycle {
            domain,
            codomain,
            table,
            symmetric,
        })
    }

    /// The carry cocycle on factor `k` of the domain: `a` when the k-th
    /// coordinates overflow their modulus, zero otherwise. Its extension
    /// is cyclic of order `m_k · ord(a)` in that direction.
    pub fn carry(domain: FinAbGroup, codomain: FinAbGroup, k: usize, a: usize) -> Result<Self> {
        let m = domain.orders()[k];
        let d = domain.clone();
        Self::from_fn(domain, codomain, true, move |x, y| {
            if d.coords(x)[k] + d.coords(y)[k] >= m {
                a
            } else {
                0
            }
        })
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.domain.order() + y]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    fn same_shape(&self, other: &Cocycle) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpecMismatch(
                "cocycles have different domain or codomain".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise product (sum in additive notation).
    pub fn mul(&self, other: &Cocycle) -> Result<Cocycle> {
        self.same_shape(other)?;
        let a = &self.codomain;
        Ok(Cocycle {
            domain: self.domain.clone(),
            codomain: a.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&x, &y)| a.add(x, y))
                .collect(),
            symmetric: self.symmetric && other.symmetric,
        })
    }

    pub fn inverse(&self) -> Cocycle {
        let a = &self.codomain;
        Cocycle {
            domain: self.domain.clone(),
            codomain: a.clone(),
            table: self.table.iter().map(|&x| a.neg(x)).collect(),
            symmetric: self.symmetric,
        }
    }

    /// `f ∘ (e × e)` for a homomorphism `e` given by its values.
    pub fn pullback(&self, source: &FinAbGroup, image: &[usize]) -> Result<Cocycle> {
        Cocycle::from_fn(source.clone(), self.codomain.clone(), self.symmetric, |x, y| {
            self.get(image[x], image[y])
        })
    }

    pub fn to_json(&self) -> Value {
        let mut table = Map::new();
        let n = self.domain.order();
        for x in 0..n {
            for y in 0..n {
                let v = self.get(x, y);
                if v != 0 {
                    table.insert(
                        format!("{}|{}", self.domain.format(x), self.domain.format(y)),
                        Value::String(self.codomain.format(v)),
                    );
                }
            }
        }
        json!({
            "domain": self.domain.orders(),
            "codomain": self.codomain.orders(),
            "symmetric": self.symmetric,
            "table": table,
        })
    }

    /// Reads `{"domain":[..],"codomain":[..],"table":{"(x)|(y)":"(a)"}}`;
    /// omitted keys are the identity and `symmetric` defaults to true.
    pub fn from_json(v: &Value) -> Result<Cocycle> {
        let orders = |key: &str| -> Result<FinAbGroup> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("cocycle needs a {key:?} array")))?;
            let o = arr
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::Parse(format!("bad order in {key:?}"))))
                .collect::<Result<Vec<_>>>()?;
            FinAbGroup::new(o)
        };
        let domain = orders("domain")?;
        let codomain = orders("codomain")?;
        let symmetric = match v.get("symmetric") {
            None => true,
            Some(b) => b
                .as_bool()
                .ok_or_else(|| Error::Parse("\"symmetric\" must be a boolean".into()))?,
        };
        let mut f = Cocycle::trivial(domain.clone(), codomain.clone());
        f.symmetric = symmetric;
        if let Some(t) = v.get("table") {
            let t = t
                .as_object()
                .ok_or_else(|| Error::Parse("\"table\" must be an object".into()))?;
            let n = domain.order();
            for (k, val) in t {
                let (xs, ys) = k
                    .split_once('|')
                    .ok_or_else(|| Error::Parse(format!("table key {k:?} lacks '|'")))?;
                let x = domain.parse(xs)?;
                let y = domain.parse(ys)?;
                let a = match val {
                    Value::String(s) => codomain.parse(s)?,
                    Value::Number(num) => codomain.parse(&num.to_string())?,
                    _ => return Err(Error::Parse(format!("bad table value for {k:?}"))),
                };
                f.table[x * n + y] = a;
            }
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleViolations {
    pub normalization: Vec<(usize, usize)>,
    pub identity: Vec<(usize, usize, usize)>,
    pub identity_count: u64,
    pub symmetry: Vec<(usize, usize)>,
}

impl CocycleViolations {
    pub fn is_empty(&self) -> bool {
        self.normalization.is_empty() && self.identity_count == 0 && self.symmetry.is_empty()
    }
}

const LISTED: usize = 8;

pub fn cocycle_violations(f: &Cocycle) -> CocycleViolations {
    let b = &f.domain;
    let a = &f.codomain;
    let n = b.order();
    let mut v = CocycleViolations::default();
    for x in 0..n {
        if f.get(0, x) != 0 {
            v.normalization.push((0, x));
        }
        if x != 0 && f.get(x, 0) != 0 {
            v.normalization.push((x, 0));
        }
    }
    let bad: Vec<(usize, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            (0..n).flat_map(move |y| {
                (0..n).filter_map(move |z| {
                    let lhs = a.add(f.get(b.add(x, y), z), f.get(x, y));
                    let rhs = a.add(f.get(x, b.add(y, z)), f.get(y, z));
                    (lhs != rhs).then_some((x, y, z))
                })
            })
        })
        .collect();
    v.identity_count = bad.len() as u64;
    v.identity = bad.into_iter().take(LISTED).collect();
    if f.symmetric {
        for x in 0..n {
            for y in x + 1..n {
                if f.get(x, y) != f.get(y, x) {
                    v.symmetry.push((x, y));
                }
            }
        }
    }
    v
}

pub fn cocycle_check(f: &Cocycle) -> Report {
    let v = cocycle_violations(f);
    let b = &f.domain;
    let pair = |&(x, y): &(usize, usize)| format!("{}|{}", b.format(x), b.format(y));
    let mut r = Report::new("cocycle");
    r.param("domain", json!(b.orders()))
        .param("codomain", json!(f.codomain.orders()))
        .param("symmetric", f.symmetric);
    r.record(
        "normalization",
        "f(1,x) = f(x,1) = 1",
        json!([]),
        json!(v.normalization.iter().map(pair).collect::<Vec<_>>()),
        v.normalization.is_empty(),
    );
    r.record(
        "cocycle_identity",
        "f(xy,z) f(x,y) = f(x,yz) f(y,z)",
        json!({"violations": 0}),
        json!({
            "violations": v.identity_count,
            "first": v.identity.iter().map(|&(x, y, z)| format!("{}|{}|{}", b.format(x), b.format(y), b.format(z))).collect::<Vec<_>>(),
        }),
        v.identity_count == 0,
    );
    if f.symmetric {
        r.record(
            "symmetry",
            "f(x,y) = f(y,x)",
            json!([]),
            json!(v.symmetry.iter().map(pair).collect::<Vec<_>>()),
            v.symmetry.is_empty(),
        );
    }
    r
}

/// `g(x,y) = ψ(xy) ψ(x)⁻¹ ψ(y)⁻¹`.
pub fn coboundary_from(domain: &FinAbGroup, codomain: &FinAbGroup, psi: &[usize]) -> Result<Cocycle> {
    if psi.len() != domain.order() {
        return Err(Error::SpecMismatch(format!(
            "psi has {} values for a group of order {}",
            psi.len(),
            domain.order()
        )));
    }
    if psi[0] != 0 {
        return Err(Error::InvalidCocycle("psi must send the identity to the identity".into()));
    }
    Cocycle::from_fn(domain.clone(), codomain.clone(), true, |x, y| {
        codomain.sub(codomain.sub(psi[domain.add(x, y)], psi[x]), psi[y])
    })
}

/// A `ψ` with `f = δψ`, or `NotCoboundary`.
///
/// On `Z/m_1 × ⋯ × Z/m_k` a solution is fixed by its values on the standard
/// generators, and going once round the k-th cycle forces
/// `m_k ψ(e_k) = -Σ_t f(t e_k, e_k)`. Any solution of these k equations
/// extends to the whole group by `ψ(x + e_k) = ψ(x) + ψ(e_k) + f(x, e_k)`;
/// two choices differ by a homomorphism, which does not change `δψ`, so one
/// failed extension rules out all of them.
pub fn is_coboundary(f: &Cocycle) -> Result<Vec<usize>> {
    let b = &f.domain;
    let a = &f.codomain;
    let n = b.order();
    if n.saturating_mul(n) > TABLE_CAP {
        return Err(Error::TooLarge {
            predicted: (n as u128) * (n as u128),
            cap: TABLE_CAP as u128,
        });
    }
    if !cocycle_violations(&Cocycle { symmetric: true, ..f.clone() }).is_empty() {
        return Err(Error::NotCoboundary);
    }
    let mut gen_values = Vec::with_capacity(b.rank());
    for k in 0..b.rank() {
        let e = b.gen(k);
        let m = b.orders()[k];
        let mut s = 0;
        let mut t = 0;
        for _ in 0..m {
            s = a.add(s, f.get(t, e));
            t = b.add(t, e);
        }
        let target = a.neg(s);
        let choice = (0..a.order()).find(|&c| a.scale(c, m) == target);
        match choice {
            Some(c) => gen_values.push(c),
            None => return Err(Error::NotCoboundary),
        }
    }
    let mut psi = vec![usize::MAX; n];
    psi[0] = 0;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for k in 0..b.rank() {
            let e = b.gen(k);
            let y = b.add(x, e);
            if psi[y] == usize::MAX {
                psi[y] = a.add(a.add(psi[x], gen_values[k]), f.get(x, e));
                queue.push(y);
            }
        }
    }
    let ok = (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| f.get(x, y) == a.sub(a.sub(psi[b.add(x, y)], psi[x]), psi[y]))
    });
    if ok {
        Ok(psi)
    } else {
        Err(Error::NotCoboundary)
    }
}

/// A witness `ψ` with `f₂ = f₁ · δψ`, if the two are cohomologous. The map
/// `(b, a) ↦ (b, a·ψ(b))` is then an isomorphism `E(f₁) → E(f₂)`.
pub fn cohomologous(f1: &Cocycle, f2: &Cocycle) -> Result<Option<Vec<usize>>> {
    let d = f2.mul(&f1.inverse())?;
    match is_coboundary(&d) {
        Ok(psi) => Ok(Some(psi)),
        Err(Error::NotCoboundary) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub reps: Vec<Cocycle>,
    pub order: usize,
    /// Normalized symmetric cocycles found.
    pub cocycles: usize,
    /// Distinct normalized coboundaries.
    pub coboundaries: usize,
}

/// Classes of normalized symmetric cocycles `B × B → A` modulo
/// coboundaries, by exhaustive enumeration of tables.
pub fn ext_group(b: &FinAbGroup, a: &FinAbGroup) -> Result<ExtGroup> {
    let n = b.order();
    let q = a.order();
    let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    let candidates = (q as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    let psi_count = (q as u128).checked_pow(n.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if candidates > EXT_CAP || psi_count > EXT_CAP {
        return Err(Error::TooLarge {
            predicted: candidates.max(psi_count),
            cap: EXT_CAP,
        });
    }
    let decode = |mut idx: u128, len: usize| -> Vec<usize> {
        (0..len)
            .map(|_| {
                let d = (idx % q as u128) as usize;
                idx /= q as u128;
                d
            })
            .collect()
    };
    let cocycles: Vec<Vec<usize>> = (0..candidates)
        .into_par_iter()
        .filter_map(|idx| {
            let vals = decode(idx, free.len());
            let mut table = vec![0usize; n * n];
            for (&(x, y), &v) in free.iter().zip(&vals) {
                table[x * n + y] = v;
                table[y * n + x] = v;
            }
            let f = Cocycle {
                domain: b.clone(),
                codomain: a.clone(),
                table,
                symmetric: true,
            };
            cocycle_violations(&f).is_empty().then_some(f.table)
        })
        .collect();
    let mut coboundaries: Vec<Vec<usize>> = (0..psi_count)
        .into_par_iter()
        .map(|idx| {
            let mut psi = vec![0usize];
            psi.extend(decode(idx, n - 1));
            coboundary_from(b, a, &psi).expect("normalized psi").table
        })
        .collect();
    coboundaries.sort();
    coboundaries.dedup();
    let index: HashMap<&[usize], usize> = cocycles
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut classified = vec![false; cocycles.len()];
    let mut reps = Vec::new();
    for (i, t) in cocycles.iter().enumerate() {
        if classified[i] {
            continue;
        }
        reps.push(Cocycle {
            domain: b.clone(),
            codomain: a.clone(),
            table: t.clone(),
            symmetric: true,
        });
        for cb in &coboundaries {
            let sum: Vec<usize> = t.iter().zip(cb).map(|(&x, &y)| a.add(x, y)).collect();
            if let Some(&j) = index.get(sum.as_slice()) {
                classified[j] = true;
            }
        }
    }
    Ok(ExtGroup {
        order: reps.len(),
        reps,
        cocycles: cocycles.len(),
        coboundaries: coboundaries.len(),
    })
}

/// `∏_{i,j} gcd(m_i, n_j)`.
pub fn ext_order_formula(b: &FinAbGroup, a: &FinAbGroup) -> u64 {
    b.orders()
        .iter()
        .flat_map(|&m| a.orders().iter().map(move |&k| gcd(m, k)))
        .product()
}

/// `E(f)`: pairs `(b, a)` with `(b₁,a₁)(b₂,a₂) = (b₁b₂, a₁a₂f(b₁,b₂))`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub f: Cocycle,
}

impl Extension {
    pub fn new(f: Cocycle) -> Result<Self> {
        let v = cocycle_violations(&Cocycle { symmetric: false, ..f.clone() });
        if !v.is_empty() {
            return Err(Error::InvalidCocycle(format!(
                "{} normalization and {} identity violations",
                v.normalization.len(),
                v.identity_count
            )));
        }
        Ok(Extension { f })
    }

    pub fn elements(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let q = self.f.codomain.order();
        (0..self.f.domain.order()).flat_map(move |b| (0..q).map(move |a| (b, a)))
    }

    pub fn order(&self) -> usize {
        self.f.domain.order() * self.f.codomain.order()
    }
}

impl Group for Extension {
    type Elem = (usize, usize);

    fn identity(&self) -> (usize, usize) {
        (0, 0)
    }

    fn mul(&self, x: &(usize, usize), y: &(usize, usize)) -> (usize, usize) {
        let (b, a) = (&self.f.domain, &self.f.codomain);
        (b.add(x.0, y.0), a.add(a.add(x.1, y.1), self.f.get(x.0, y.0)))
    }

    fn inv(&self, x: &(usize, usize)) -> (usize, usize) {
        let (b, a) = (&self.f.domain, &self.f.codomain);
        let bi = b.neg(x.0);
        // (b,a)(b⁻¹,a') = (1, a a' f(b,b⁻¹)) = 1
        (bi, a.neg(a.add(x.1, self.f.get(x.0, bi))))
    }
}

/// Builds `E(f)` and its Cayley table (which verifies the group axioms).
pub fn extension_group(f: &Cocycle) -> Result<(Extension, CayleyTable<(usize, usize)>)> {
    let e = Extension::new(f.clone())?;
    let table = CayleyTable::new(&e, e.elements().collect())?;
    if !table.identity_ok() || !table.inverses_ok() || table.associativity_failures() != 0 {
        return Err(Error::InvalidCocycle("extension fails the group axioms".into()));
    }
    Ok((e, table))
}

/// Checks that `(b, a) ↦ (b, a·ψ(b))` is an isomorphism `E(f₁) → E(f₂)`.
pub fn witness_map_is_iso(f1: &Cocycle, f2: &Cocycle, psi: &[usize]) -> Result<bool> {
    let e1 = Extension::new(f1.clone())?;
    let e2 = Extension::new(f2.clone())?;
    let a = &f1.codomain;
    let map = |x: &(usize, usize)| (x.0, a.add(x.1, psi[x.0]));
    let elems: Vec<(usize, usize)> = e1.elements().collect();
    Ok(elems.par_iter().all(|x| {
        elems
            .iter()
            .all(|y| map(&e1.mul(x, y)) == e2.mul(&map(x), &map(y)))
    }))
}

/// A subgroup presented as `∏ Z/o_i → domain` from generators.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: FinAbGroup,
    pub image: Vec<usize>,
}

impl Embedding {
    pub fn from_generators(domain: &FinAbGroup, gens: &[usize]) -> Result<Self> {
        let source = FinAbGroup::new(gens.iter().map(|&g| domain.elem_order(g)).collect())?;
        let image = (0..source.order())
            .map(|s| {
                source
                    .coords(s)
                    .iter()
                    .zip(gens)
                    .fold(0, |acc, (&c, &g)| domain.add(acc, domain.scale(g, c)))
            })
            .collect();
        Ok(Embedding { source, image })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.image.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.image.len()
    }
}

#[derive(Clone, Debug)]
pub struct CotResult {
    /// Whether the restriction to the torsion factor is a coboundary.
    pub cot: bool,
    pub torsion_witness: Option<Vec<usize>>,
    pub torsion_part: Cocycle,
    pub free_part: Cocycle,
    /// `f` is cohomologous to the product of its restrictions to the two factors.
    pub split_holds: bool,
}

/// Coboundary-on-torsion test for a domain presented as `T × B` by
/// generators of each factor.
pub fn cot_check(f: &Cocycle, torsion_gens: &[usize], free_gens: &[usize]) -> Result<CotResult> {
    let d = &f.domain;
    let mut all = torsion_gens.to_vec();
    all.extend_from_slice(free_gens);
    let joint = Embedding::from_generators(d, &all)?;
    if joint.source.order() != d.order() || !joint.is_injective() {
        return Err(Error::BadSplit(format!(
            "generators give a map from a group of order {} that is not a bijection onto order {}",
            joint.source.order(),
            d.order()
        )));
    }
    let t = Embedding::from_generators(d, torsion_gens)?;
    let b = Embedding::from_generators(d, free_gens)?;
    let ft = f.pullback(&t.source, &t.image)?;
    let fb = f.pullback(&b.source, &b.image)?;
    // ft ⊕ fb transported back to the domain through the joint bijection
    let split_source = Cocycle::from_fn(joint.source.clone(), f.codomain.clone(), true, |x, y| {
        let (xt, xb) = split_index(b.source.order(), x);
        let (yt, yb) = split_index(b.source.order(), y);
        f.codomain.add(ft.get(xt, yt), fb.get(xb, yb))
    })?;
    let mut to_source = vec![0usize; d.order()];
    for (s, &img) in joint.image.iter().enumerate() {
        to_source[img] = s;
    }
    let split = Cocycle::from_fn(d.clone(), f.codomain.clone(), true, |x, y| {
        split_source.get(to_source[x], to_source[y])
    })?;
    let split_holds = cohomologous(f, &split)?.is_some();
    let torsion_witness = match is_coboundary(&ft) {
        Ok(psi) => Some(psi),
        Err(Error::NotCoboundary) => None,
        Err(e) => return Err(e),
    };
    Ok(CotResult {
        cot: torsion_witness.is_some(),
        torsion_witness,
        torsion_part: ft,
        free_part: fb,
        split_holds,
    })
}

/// Splits a joint index of `T × B` (T most significant) into its parts.
fn split_index(second_order: usize, x: usize) -> (usize, usize) {
    (x / second_order, x % second_order)
}

#[derive(Clone, Debug)]
pub struct BnFactorization {
    /// Restrictions of `f` to each factor.
    pub factors: Vec<Cocycle>,
    pub product_cohomologous: bool,
    /// The cocycle of the last diagonal direction, `d_n(α) = diag(α)·∏_{i<n} d_i(α)⁻¹`.
    pub fn_cocycle: Option<Cocycle>,
    /// `f_n ~ (f_1 ⋯ f_{n-1})⁻¹` on the common factor group.
    pub fn_inverse_cohomologous: Option<bool>,
}

/// Splits a cocycle on `B_1 × ⋯ × B_k` into its factor restrictions and
/// checks `f ~ ∏ f_i`. When all factors coincide (as for
/// `B_n ≅ (R^×)^{n-1}`) the last direction's cocycle `f_n` is computed from
/// the lift `α ↦ (α⁻¹, …, α⁻¹)` of `d_n(α)` modulo scalars, and `f_n` is
/// compared with the inverse of the pointwise product of the `f_i`.
pub fn bn_factorize(f: &Cocycle, factors: &[FinAbGroup]) -> Result<BnFactorization> {
    let d = &f.domain;
    let concat: Vec<u64> = factors.iter().flat_map(|g| g.orders().iter().copied()).collect();
    if concat != d.orders() {
        return Err(Error::SpecMismatch(format!(
            "factor orders {concat:?} do not match the domain {:?}",
            d.orders()
        )));
    }
    let mut offsets = Vec::with_capacity(factors.len());
    let mut o = 0;
    for g in factors {
        offsets.push(o);
        o += g.rank();
    }
    let inject = |i: usize, x: usize| -> usize {
        let mut c = vec![0u64; d.rank()];
        for (k, v) in factors[i].coords(x).into_iter().enumerate() {
            c[offsets[i] + k] = v;
        }
        d.from_coords(&c).expect("rank matches")
    };
    let mut parts = Vec::with_capacity(factors.len());
    for (i, g) in factors.iter().enumerate() {
        let image: Vec<usize> = (0..g.order()).map(|x| inject(i, x)).collect();
        parts.push(f.pullback(g, &image)?);
    }
    let a = &f.codomain;
    let project = |i: usize, x: usize| -> usize {
        let c = d.coords(x);
        factors[i]
            .from_coords(&c[offsets[i]..offsets[i] + factors[i].rank()])
            .expect("rank matches")
    };
    let product = Cocycle::from_fn(d.clone(), a.clone(), true, |x, y| {
        parts
            .iter()
            .enumerate()
            .fold(0, |acc, (i, p)| a.add(acc, p.get(project(i, x), project(i, y))))
    })?;
    let product_cohomologous = cohomologous(f, &product)?.is_some();
    let (fn_cocycle, fn_inverse_cohomologous) = if factors.windows(2).all(|w| w[0] == w[1]) && !factors.is_empty() {
        let g = &factors[0];
        let lift: Vec<usize> = (0..g.order())
            .map(|x| {
                let xi = g.neg(x);
                (0..factors.len()).fold(0, |acc, i| d.add(acc, inject(i, xi)))
            })
            .collect();
        let fnc = f.pullback(g, &lift)?;
        let mut pointwise = Cocycle::trivial(g.clone(), a.clone());
        for p in &parts {
            pointwise = pointwise.mul(p)?;
        }
        let ok = cohomologous(&fnc, &pointwise.inverse())?.is_some();
        (Some(fnc), Some(ok))
    } else {
        (None, None)
    };
    Ok(BnFactorization {
        factors: parts,
        product_cohomologous,
        fn_cocycle,
        fn_inverse_cohomologous,
    })
}

/// The cohomology examples and invariants as a report.
pub fn cohom_suite() -> Result<Report> {
    let mut r = Report::new("cohom");
    let z2 = FinAbGroup::cyclic(2)?;
    let carry = Cocycle::carry(z2.clone(), z2.clone(), 0, 1)?;
    r.expect_eq("carry_cocycle_valid", "f(1,1) = generator on Z/2 is a symmetric cocycle", true, cocycle_violations(&carry).is_empty());
    let (_, table) = extension_group(&carry)?;
    let orders: Vec<usize> = (0..table.len()).map(|x| table.order_of(x)).collect();
    let mut sorted = orders.clone();
    sorted.sort_unstable();
    r.expect_eq("carry_extension_cyclic", "E(f) = Z/4 for the carry cocycle", json!([1, 2, 4, 4]), json!(sorted));
    let (_, triv) = extension_group(&Cocycle::trivial(z2.clone(), z2.clone()))?;
    let mut t_orders: Vec<usize> = (0..triv.len()).map(|x| triv.order_of(x)).collect();
    t_orders.sort_unstable();
    r.expect_eq("trivial_extension_split", "E(1) = Z/2 x Z/2", json!([1, 2, 2, 2]), json!(t_orders));
    r.expect_eq(
        "carry_not_coboundary",
        "the Z/4 cocycle is not a coboundary",
        "NotCoboundary",
        is_coboundary(&carry).err().map(|e| e.name()).unwrap_or("coboundary"),
    );

    let mut mismatches = Vec::new();
    let mut cases = 0;
    for m in 1..=4u64 {
        for k in 1..=4u64 {
            let (b, a) = (FinAbGroup::cyclic(m)?, FinAbGroup::cyclic(k)?);
            let e = ext_group(&b, &a)?;
            cases += 1;
            if e.order as u64 != gcd(m, k) {
                mismatches.push(format!("Ext(Z/{m},Z/{k}) = {}", e.order));
            }
        }
    }
    r.record(
        "ext_order_gcd",
        "|Ext(Z/m, Z/k)| = gcd(m, k) for m, k <= 4",
        json!({"cases": cases, "mismatches": []}),
        json!({"cases": cases, "mismatches": mismatches}),
        mismatches.is_empty(),
    );

    let z3 = FinAbGroup::cyclic(3)?;
    let mut round_trips = 0;
    let mut total = 0;
    for p1 in 0..3 {
        for p2 in 0..3 {
            let cb = coboundary_from(&z3, &z3, &[0, p1, p2])?;
            total += 1;
            if cocycle_violations(&cb).is_empty() && is_coboundary(&cb).is_ok() {
                round_trips += 1;
            }
        }
    }
    r.expect_eq("coboundary_round_trip", "every delta(psi) on Z/3 is a cocycle with a recovered witness", total, round_trips);

    let v4 = z2.product(&z2);
    let on_first = Cocycle::carry(v4.clone(), z2.clone(), 0, 1)?;
    let cot_free = cot_check(&on_first, &[v4.gen(1)], &[v4.gen(0)])?;
    r.expect_eq("cot_supported_on_free_factor", "f supported on the B factor is CoT", true, cot_free.cot && cot_free.split_holds);
    let cot_whole = cot_check(&carry, &[z2.gen(0)], &[])?;
    r.expect_eq("cot_whole_domain_torsion", "the Z/4 cocycle with T the whole domain is not CoT", false, cot_whole.cot);

    let fac = bn_factorize(&on_first, &[z2.clone(), z2.clone()])?;
    r.expect_eq("bn_factor_restrictions", "f_1 is the restriction, f_2 trivial", json!([false, true]), json!(fac.factors.iter().map(Cocycle::is_trivial).collect::<Vec<_>>()));
    r.expect_eq("bn_product_cohomologous", "f ~ f_1 f_2", true, fac.product_cohomologous);
    r.expect_eq("bn_fn_inverse", "f_n ~ f^-1", Some(true), fac.fn_inverse_cohomologous);
    Ok(r)
}
