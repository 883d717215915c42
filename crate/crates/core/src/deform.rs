//! Abelian deformations of triangular and general linear groups over prime
//! fields.
//!
//! `T_n(R, f, Z) = UT_n(R) ⋊ D_n(R, f, Z)` where `D_n(R, f, Z)` is the
//! extension of `Z` by `B_n(R) ≅ (R^×)^{n-1}` given by a symmetric cocycle
//! `f`. Torus coordinates are discrete logarithms to a fixed primitive
//! root, so `B_n` is the finite abelian group `(Z/(q-1))^{n-1}`.

use std::collections::BTreeMap;

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cohom::{cocycle_violations, cohomologous, Cocycle, Extension, FinAbGroup};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, Group};
use crate::matgroup::{enumerate_group, predicted_order, DEFAULT_CAP};
use crate::matrix::{GroupKind, Matrix};
use crate::report::Report;
use crate::ring::{gcd, RingSpec, UnitLog};

/// Element of `D_n(R, f, Z)`: `z ∈ Z` and `b ∈ B_n` as group indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElem {
    pub z: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TnElem {
    pub u: Matrix,
    pub t: TorusElem,
}

/// A finite instance of `T_n(R, f, Z)`.
#[derive(Clone, Debug)]
pub struct TnDeformation {
    pub ring: RingSpec,
    pub n: usize,
    pub f: Cocycle,
    log: UnitLog,
    diags: Vec<Matrix>,
    diag_invs: Vec<Matrix>,
}

impl TnDeformation {
    pub fn new(ring: RingSpec, n: usize, f: Cocycle) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadIndices(format!("n = {n} must be at least 2")));
        }
        let log = UnitLog::new(ring)?;
        let b = Self::torus_group(ring, n)?;
        if f.domain != b {
            return Err(Error::SpecMismatch(format!(
                "cocycle domain {:?} is not B_n = {:?}",
                f.domain.orders(),
                b.orders()
            )));
        }
        if !f.symmetric {
            return Err(Error::InvalidCocycle("deformation cocycles must be symmetric".into()));
        }
        let v = cocycle_violations(&f);
        if !v.is_empty() {
            return Err(Error::InvalidCocycle(format!(
                "{} normalization, {} identity and {} symmetry violations",
                v.normalization.len(),
                v.identity_count,
                v.symmetry.len()
            )));
        }
        let mut diags = Vec::with_capacity(b.order());
        let mut diag_invs = Vec::with_capacity(b.order());
        for x in 0..b.order() {
            let mut vals: Vec<_> = b.coords(x).into_iter().map(|k| log.exp(k)).collect();
            vals.push(ring.one());
            let d = Matrix::diag_full(ring, &vals)?;
            diag_invs.push(d.inv()?);
            diags.push(d);
        }
        Ok(TnDeformation {
            ring,
            n,
            f,
            log,
            diags,
            diag_invs,
        })
    }

    /// `(Z/(q-1))^{n-1}`.
    pub fn torus_group(ring: RingSpec, n: usize) -> Result<FinAbGroup> {
        let q = ring.require_finite()?;
        FinAbGroup::new(vec![q - 1; n - 1])
    }

    pub fn trivial(ring: RingSpec, n: usize, z: FinAbGroup) -> Result<Self> {
        let b = Self::torus_group(ring, n)?;
        Self::new(ring, n, Cocycle::trivial(b, z))
    }

    pub fn z(&self) -> &FinAbGroup {
        &self.f.codomain
    }

    pub fn b(&self) -> &FinAbGroup {
        &self.f.domain
    }

    pub fn log(&self) -> &UnitLog {
        &self.log
    }

    /// `diag(b, 1)`.
    pub fn diag(&self, b: usize) -> &Matrix {
        &self.diags[b]
    }

    /// `u^{φ(b)} = diag(b,1)⁻¹ · u · diag(b,1)`.
    pub fn act(&self, b: usize, u: &Matrix) -> Matrix {
        self.diag_invs[b].mul(u).mul(&self.diags[b])
    }

    pub fn torus_product(&self, x: TorusElem, y: TorusElem) -> TorusElem {
        let z = self.z();
        TorusElem {
            z: z.add(z.add(x.z, y.z), self.f.get(x.b, y.b)),
            b: self.b().add(x.b, y.b),
        }
    }

    pub fn torus_inv(&self, x: TorusElem) -> TorusElem {
        let z = self.z();
        let bi = self.b().neg(x.b);
        TorusElem {
            z: z.neg(z.add(x.z, self.f.get(x.b, bi))),
            b: bi,
        }
    }

    pub fn order(&self) -> u128 {
        let q = self.ring.order().unwrap_or(0) as u128;
        let ut = q.pow((self.n * (self.n - 1) / 2) as u32);
        ut * self.b().order() as u128 * self.z().order() as u128
    }

    pub fn elements(&self, cap: usize) -> Result<IndexSet<TnElem>> {
        let total = self.order();
        if total > cap as u128 {
            return Err(Error::TooLarge {
                predicted: total,
                cap: cap as u128,
            });
        }
        let ut = enumerate_group(self.ring, self.n, GroupKind::UT, cap)?;
        let mut out = IndexSet::with_capacity(total as usize);
        for u in &ut.elements {
            for b in 0..self.b().order() {
                for z in 0..self.z().order() {
                    out.insert(TnElem {
                        u: u.clone(),
                        t: TorusElem { z, b },
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn table(&self, cap: usize) -> Result<CayleyTable<TnElem>> {
        CayleyTable::new(self, self.elements(cap)?)
    }

    /// `(u, (z, b)) ↦ u · diag(b,1)⁻¹ · g^z I` for `Z = Z/(q-1)` and trivial
    /// `f`, where `g` is the primitive root behind the torus coordinates.
    pub fn collapse(&self, x: &TnElem) -> Result<Matrix> {
        if !self.f.is_trivial() {
            return Err(Error::NotTrivialCocycle);
        }
        let q = self.ring.require_finite()?;
        if self.z().orders() != [q - 1] {
            return Err(Error::SpecMismatch(format!(
                "collapse needs Z = Z/{}, got {:?}",
                q - 1,
                self.z().orders()
            )));
        }
        let s = Matrix::scalar(self.ring, self.n, &self.log.exp(x.t.z as u64))?;
        Ok(x.u.mul(&self.diag_invs[x.t.b]).mul(&s))
    }

    pub fn center_expected(&self) -> Vec<TnElem> {
        (0..self.z().order())
            .map(|z| TnElem {
                u: Matrix::identity(self.ring, self.n),
                t: TorusElem { z, b: 0 },
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.to_string(),
            "n": self.n,
            "Z": self.z().orders(),
            "cocycle": self.f.to_json(),
        })
    }

    /// Reads `{"ring":"gf:3","n":3,"Z":[2],"cocycle":{…}}`; the cocycle's
    /// domain defaults to `B_n` and its codomain to `Z`, and a missing
    /// cocycle is trivial.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ring: RingSpec = v
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("deformation needs a \"ring\" string".into()))?
            .parse()?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("deformation needs an integer \"n\"".into()))? as usize;
        if n < 2 {
            return Err(Error::BadIndices(format!("n = {n} must be at least 2")));
        }
        let z_orders = v
            .get("Z")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("deformation needs a \"Z\" array".into()))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| Error::Parse("bad order in \"Z\"".into())))
            .collect::<Result<Vec<_>>>()?;
        let z = FinAbGroup::new(z_orders)?;
        let b = Self::torus_group(ring, n)?;
        let f = match v.get("cocycle") {
            None | Some(Value::Null) => Cocycle::trivial(b, z),
            Some(c) => {
                let mut c = c.clone();
                if let Some(obj) = c.as_object_mut() {
                    obj.entry("domain").or_insert_with(|| json!(b.orders()));
                    obj.entry("codomain").or_insert_with(|| json!(z.orders()));
                }
                let f = Cocycle::from_json(&c)?;
                if f.codomain != z {
                    return Err(Error::SpecMismatch("cocycle codomain differs from \"Z\"".into()));
                }
                f
            }
        };
        Self::new(ring, n, f)
    }
}

impl Group for TnDeformation {
    type Elem = TnElem;

    fn identity(&self) -> TnElem {
        TnElem {
            u: Matrix::identity(self.ring, self.n),
            t: TorusElem { z: 0, b: 0 },
        }
    }

    /// `(u₁,(z₁,b₁))(u₂,(z₂,b₂)) = (u₁ u₂^{φ(b₁)}, (z₁z₂f(b₁,b₂), b₁b₂))`.
    fn mul(&self, x: &TnElem, y: &TnElem) -> TnElem {
        TnElem {
            u: x.u.mul(&self.act(x.t.b, &y.u)),
            t: self.torus_product(x.t, y.t),
        }
    }

    fn inv(&self, x: &TnElem) -> TnElem {
        // u · v^{φ(b)} = 1 gives v = diag(b,1) u⁻¹ diag(b,1)⁻¹
        let ui = x.u.inv().expect("unitriangular");
        TnElem {
            u: self.diags[x.t.b].mul(&ui).mul(&self.diag_invs[x.t.b]),
            t: self.torus_inv(x.t),
        }
    }
}

/// Group axioms, center and derived subgroup of an enumerated instance.
pub fn tn_report(def: &TnDeformation, cap: usize) -> Result<Report> {
    let mut r = Report::new("deform");
    r.param("ring", def.ring.to_string())
        .param("n", def.n as u64)
        .param("Z", json!(def.z().orders()))
        .param("cocycle_trivial", def.f.is_trivial());
    let table = def.table(cap)?;
    r.param("order", table.len() as u64);
    r.expect_eq("order", "|T_n(R,f,Z)| = |UT_n| |B_n| |Z|", def.order() as u64, table.len() as u64);
    r.expect_eq("identity", "(1,(1,1)) is neutral", true, table.identity_ok());
    r.expect_eq("inverses", "every element has a two-sided inverse", true, table.inverses_ok());
    r.expect_eq("associativity", "the product is associative on all triples", 0u64, table.associativity_failures());

    let center: Vec<TnElem> = table.center().into_iter().map(|i| table.elems()[i].clone()).collect();
    let mut expected = def.center_expected();
    expected.sort();
    let mut observed = center.clone();
    observed.sort();
    r.record(
        "center",
        "Z(T_n(R,f,Z)) = Z",
        expected.len() as u64,
        observed.len() as u64,
        expected == observed,
    );

    let derived = table.derived();
    let derived_ok = derived.iter().all(|&i| {
        let e = &table.elems()[i];
        e.t == TorusElem { z: 0, b: 0 }
    });
    let ut_order = def.order() / (def.b().order() * def.z().order()) as u128;
    r.record(
        "derived_is_ut",
        "[T_n(R,f,Z), T_n(R,f,Z)] = UT_n(R)",
        ut_order as u64,
        derived.len() as u64,
        derived_ok && derived.len() as u128 == ut_order,
    );

    let q = def.ring.require_finite()?;
    if def.f.is_trivial() && def.z().orders() == [q - 1] {
        r.absorb(collapse_report(def, &table)?);
    }
    Ok(r)
}

/// Checks that the collapse map is a bijective homomorphism onto `T_n(R)`.
pub fn collapse_report(def: &TnDeformation, table: &CayleyTable<TnElem>) -> Result<Report> {
    let mut r = Report::new("collapse");
    let images: Vec<Matrix> = table
        .elems()
        .iter()
        .map(|x| def.collapse(x))
        .collect::<Result<_>>()?;
    let distinct: IndexSet<&Matrix> = images.iter().collect();
    let all_triangular = images.iter().all(|m| m.is_member(GroupKind::T));
    let t_order = predicted_order(def.ring, def.n, GroupKind::T)?;
    r.record(
        "bijective",
        "(u,(z,b)) -> u diag(b,1)^-1 zI is a bijection onto T_n(R)",
        t_order as u64,
        distinct.len() as u64,
        all_triangular && distinct.len() as u128 == t_order && images.len() as u128 == t_order,
    );
    r.expect_eq(
        "identity_image",
        "the identity maps to I",
        true,
        images[table.identity()].is_identity(),
    );
    let n = table.len();
    let failures: u64 = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .filter(|&b| images[table.mul(a, b)] != images[a].mul(&images[b]))
                .count() as u64
        })
        .sum();
    r.expect_eq(
        "homomorphism",
        "the collapse map respects products on all pairs",
        json!({"pairs": n * n, "failures": 0}),
        json!({"pairs": n * n, "failures": failures}),
    );
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The cocycles are cohomologous; `witness` gives the isomorphism
    /// `(u,(z,b)) ↦ (u,(z·ψ(b),b))`.
    ExtensionEquivalent { witness: Vec<usize>, map_verified: bool },
    /// Not cohomologous and an isomorphism invariant differs.
    GroupNonIsomorphic { invariant: String },
    /// Not cohomologous, but no computed invariant separates the groups.
    ExtensionInequivalent,
}

#[derive(Clone, Debug)]
pub struct Distinction {
    pub verdict: Verdict,
    pub invariants: BTreeMap<String, (Value, Value)>,
}

fn invariants(table: &CayleyTable<TnElem>) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    m.insert("order".to_string(), json!(table.len()));
    let om: BTreeMap<String, usize> = table
        .order_multiset()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    m.insert("order_multiset".to_string(), json!(om));
    m.insert("center_order".to_string(), json!(table.center().len()));
    m.insert("abelianization_order".to_string(), json!(table.len() / table.derived().len()));
    m
}

/// Compares two deformations: first by cohomology class, then by
/// isomorphism invariants of the enumerated groups.
pub fn distinguish(d1: &TnDeformation, d2: &TnDeformation, cap: usize) -> Result<Distinction> {
    let t1 = d1.table(cap)?;
    let t2 = d2.table(cap)?;
    let i1 = invariants(&t1);
    let i2 = invariants(&t2);
    let invariants: BTreeMap<String, (Value, Value)> = i1
        .iter()
        .map(|(k, v)| (k.clone(), (v.clone(), i2[k].clone())))
        .collect();
    let same_shape = d1.ring == d2.ring && d1.n == d2.n && d1.f.codomain == d2.f.codomain;
    if same_shape {
        if let Some(psi) = cohomologous(&d1.f, &d2.f)? {
            let z = d1.z();
            let map = |x: &TnElem| TnElem {
                u: x.u.clone(),
                t: TorusElem {
                    z: z.add(x.t.z, psi[x.t.b]),
                    b: x.t.b,
                },
            };
            let n = t1.len();
            let map_verified = (0..n).into_par_iter().all(|a| {
                (0..n).all(|b| {
                    map(&t1.elems()[t1.mul(a, b)]) == d2.mul(&map(&t1.elems()[a]), &map(&t1.elems()[b]))
                })
            });
            return Ok(Distinction {
                verdict: Verdict::ExtensionEquivalent {
                    witness: psi,
                    map_verified,
                },
                invariants,
            });
        }
    }
    let verdict = match invariants.iter().find(|(_, (a, b))| a != b) {
        Some((k, _)) => Verdict::GroupNonIsomorphic { invariant: k.clone() },
        None => Verdict::ExtensionInequivalent,
    };
    Ok(Distinction { verdict, invariants })
}

/// Element of `GL_n(L, h, B)` in normal form `(b, c·a_k)` with `c ∈ H₁` and
/// `a_k` the k-th coset representative of `H₁` in the foundation group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlElem {
    pub b: usize,
    pub c: Matrix,
    pub k: usize,
}

/// A finite central extension of `GL_n(GF(q))` twisted by `h` on
/// `Δ₁/(Σ₁·Z) ≅ Z/r`, `r = gcd(n, q-1)`.
///
/// `H₁ = SL_n · Z` has index `r`, with coset representatives
/// `a_k = d_1(g^k)`. The correction `p(k₁,k₂) ∈ Σ₁·Z` makes
/// `(c₁a₁)(c₂a₂) = c₁ c₂^{a₁} p(k₁,k₂) a_{k₁+k₂}`; the canonical choice is
/// `a_{k₁} a_{k₂} a_{k₁+k₂}⁻¹`, and any other table is accepted if the
/// context passes the axiom checks.
#[derive(Clone, Debug)]
pub struct GlDeformation {
    pub ring: RingSpec,
    pub n: usize,
    pub r: usize,
    pub reps: Vec<Matrix>,
    reps_inv: Vec<Matrix>,
    /// `p[k₁·r + k₂]`.
    pub p: Vec<Matrix>,
    pub h: Cocycle,
    log: UnitLog,
}

impl GlDeformation {
    pub fn new(ring: RingSpec, n: usize, h: Cocycle) -> Result<Self> {
        let (reps, log) = Self::representatives(ring, n)?;
        let r = reps.len();
        let mut p = Vec::with_capacity(r * r);
        for k1 in 0..r {
            for k2 in 0..r {
                let k = (k1 + k2) % r;
                p.push(reps[k1].mul(&reps[k2]).mul(&reps[k].inv()?));
            }
        }
        Self::with_p(ring, n, h, p, reps, log)
    }

    /// Uses a supplied correction table `p[k₁·r + k₂]`.
    pub fn with_correction(ring: RingSpec, n: usize, h: Cocycle, p: Vec<Matrix>) -> Result<Self> {
        let (reps, log) = Self::representatives(ring, n)?;
        Self::with_p(ring, n, h, p, reps, log)
    }

    fn representatives(ring: RingSpec, n: usize) -> Result<(Vec<Matrix>, UnitLog)> {
        if n < 2 {
            return Err(Error::BadIndices(format!("n = {n} must be at least 2")));
        }
        let log = UnitLog::new(ring)?;
        let r = gcd(n as u64, log.order()) as usize;
        let reps = (0..r)
            .map(|k| Matrix::diag_elem(ring, n, 1, &log.exp(k as u64)))
            .collect::<Result<Vec<_>>>()?;
        Ok((reps, log))
    }

    fn with_p(ring: RingSpec, n: usize, h: Cocycle, p: Vec<Matrix>, reps: Vec<Matrix>, log: UnitLog) -> Result<Self> {
        let r = reps.len();
        if h.domain != FinAbGroup::cyclic(r as u64)? {
            return Err(Error::SpecMismatch(format!(
                "h must be defined on Z/{r}, got {:?}",
                h.domain.orders()
            )));
        }
        let v = cocycle_violations(&h);
        if !h.symmetric || !v.is_empty() {
            return Err(Error::InvalidCocycle("h must be a normalized symmetric cocycle".into()));
        }
        if p.len() != r * r || p.iter().any(|m| m.ring() != ring || m.n() != n) {
            return Err(Error::InconsistentContext(format!("p must be an {r}x{r} table of {n}x{n} matrices")));
        }
        let reps_inv = reps.iter().map(Matrix::inv).collect::<Result<Vec<_>>>()?;
        let ctx = GlDeformation {
            ring,
            n,
            r,
            reps,
            reps_inv,
            p,
            h,
            log,
        };
        for k1 in 0..r {
            for k2 in 0..r {
                let pk = ctx.p_at(k1, k2);
                if !ctx.in_sigma_z(pk) {
                    return Err(Error::InconsistentContext(format!("p({k1},{k2}) is not in Sigma_1 Z")));
                }
                if (k1 == 0 || k2 == 0) && !pk.is_identity() {
                    return Err(Error::InconsistentContext("p is not normalized".into()));
                }
                if pk != ctx.p_at(k2, k1) {
                    return Err(Error::InconsistentContext("p is not symmetric".into()));
                }
            }
        }
        Ok(ctx)
    }

    pub fn p_at(&self, k1: usize, k2: usize) -> &Matrix {
        &self.p[k1 * self.r + k2]
    }

    /// `Σ₁·Z = {diag(λα^{n-1}, λα⁻¹, …, λα⁻¹)}`: diagonal, equal entries in
    /// positions `2..n`, and `d₁₁/d₂₂ = α^n` an n-th power.
    pub fn in_sigma_z(&self, m: &Matrix) -> bool {
        if !m.is_diagonal() {
            return false;
        }
        let ring = self.ring;
        let d2 = m.entry(1, 1);
        if (2..self.n).any(|i| m.entry(i, i) != d2) {
            return false;
        }
        let ratio = match ring.inv(d2) {
            Ok(i) => ring.mul(m.entry(0, 0), &i),
            Err(_) => return false,
        };
        (0..self.log.order()).any(|k| ring.pow(&self.log.exp(k), self.n as u64) == ratio)
    }

    pub fn b(&self) -> &FinAbGroup {
        &self.h.codomain
    }

    /// `|H₁| · r · |B|`.
    pub fn order(&self) -> Result<u128> {
        Ok(predicted_order(self.ring, self.n, GroupKind::GL)? * self.b().order() as u128)
    }

    /// `c ∈ H₁` iff `det c` is an n-th power.
    pub fn in_h1(&self, c: &Matrix) -> bool {
        let d = c.det();
        (0..self.log.order()).any(|k| self.ring.pow(&self.log.exp(k), self.n as u64) == d)
    }

    /// Normal form of `g ∈ GL_n`: the coset index of `det g` and `c = g a_k⁻¹`.
    pub fn split(&self, g: &Matrix) -> Result<(Matrix, usize)> {
        let k = (self.log.log(&g.det())? % self.r as u64) as usize;
        Ok((g.mul(&self.reps_inv[k]), k))
    }

    /// `c·a_k`, forgetting `b`.
    pub fn to_gl(&self, x: &GlElem) -> Matrix {
        x.c.mul(&self.reps[x.k])
    }

    pub fn random_elem(&self, rng: &mut impl Rng) -> GlElem {
        let ring = self.ring;
        let q = self.log.order() + 1;
        let mut c = Matrix::scalar(ring, self.n, &self.log.exp(rng.gen_range(0..q - 1))).expect("unit");
        for _ in 0..3 * self.n * self.n {
            let i = rng.gen_range(1..=self.n);
            let mut j = rng.gen_range(1..self.n);
            if j >= i {
                j += 1;
            }
            let a = ring.from_i64(rng.gen_range(0..q as i64));
            c = c.mul(&Matrix::transvection(ring, self.n, i, j, &a).expect("valid indices"));
        }
        GlElem {
            b: rng.gen_range(0..self.b().order()),
            c,
            k: rng.gen_range(0..self.r),
        }
    }

    /// Group axioms on `samples` random triples, plus the identity and
    /// inverses on each sampled element.
    pub fn validate(&self, samples: usize, seed: u64) -> Result<Report> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<[GlElem; 3]> = (0..samples)
            .map(|_| [self.random_elem(&mut rng), self.random_elem(&mut rng), self.random_elem(&mut rng)])
            .collect();
        let e = self.identity();
        let (assoc, ident, inv, closed) = triples
            .par_iter()
            .map(|[x, y, z]| {
                let assoc = self.mul(&self.mul(x, y), z) != self.mul(x, &self.mul(y, z));
                let ident = self.mul(x, &e) != *x || self.mul(&e, x) != *x;
                let xi = self.inv(x);
                let inv = self.mul(x, &xi) != e || self.mul(&xi, x) != e;
                let closed = !self.in_h1(&self.mul(x, y).c);
                (assoc as u64, ident as u64, inv as u64, closed as u64)
            })
            .reduce(|| (0, 0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3));
        let mut r = Report::new("gl_deform");
        r.param("ring", self.ring.to_string())
            .param("n", self.n as u64)
            .param("r", self.r as u64)
            .param("B", json!(self.b().orders()))
            .param("samples", samples as u64)
            .param("seed", seed)
            .param("order", self.order()?.to_string());
        let zero = json!({"samples": samples, "failures": 0});
        let obs = |k: u64| json!({"samples": samples, "failures": k});
        r.expect_eq("associativity", "sampled triples associate", zero.clone(), obs(assoc));
        r.expect_eq("identity", "(1, 1 a_0) is neutral", zero.clone(), obs(ident));
        r.expect_eq("inverses", "sampled elements have two-sided inverses", zero.clone(), obs(inv));
        r.expect_eq("h1_closure", "the H_1 component stays in SL_n Z", zero, obs(closed));
        Ok(r)
    }

    /// Axiom check that fails with `InconsistentContext`.
    pub fn check(&self, samples: usize, seed: u64) -> Result<Report> {
        let r = self.validate(samples, seed)?;
        if !r.pass {
            let failed: Vec<String> = r.failures().map(|c| c.check.clone()).collect();
            return Err(Error::InconsistentContext(format!("axioms fail: {}", failed.join(", "))));
        }
        Ok(r)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "gl",
            "ring": self.ring.to_string(),
            "n": self.n,
            "B": self.b().orders(),
            "h": self.h.to_json(),
        })
    }

    /// Reads `{"kind":"gl","ring":"gf:7","n":3,"B":[3],"h":{…}}`; `h`
    /// defaults to trivial on `Z/r`, and an optional `"p"` array of r·r
    /// matrices replaces the canonical correction table.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ring: RingSpec = v
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("deformation needs a \"ring\" string".into()))?
            .parse()?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("deformation needs an integer \"n\"".into()))? as usize;
        let b_orders = match v.get("B") {
            None => Vec::new(),
            Some(arr) => arr
                .as_array()
                .ok_or_else(|| Error::Parse("\"B\" must be an array".into()))?
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::Parse("bad order in \"B\"".into())))
                .collect::<Result<Vec<_>>>()?,
        };
        let b = FinAbGroup::new(b_orders)?;
        let (reps, log) = Self::representatives(ring, n)?;
        let dom = FinAbGroup::cyclic(reps.len() as u64)?;
        let h = match v.get("h") {
            None | Some(Value::Null) => Cocycle::trivial(dom.clone(), b.clone()),
            Some(c) => {
                let mut c = c.clone();
                if let Some(obj) = c.as_object_mut() {
                    obj.entry("domain").or_insert_with(|| json!(dom.orders()));
                    obj.entry("codomain").or_insert_with(|| json!(b.orders()));
                }
                Cocycle::from_json(&c)?
            }
        };
        match v.get("p") {
            None | Some(Value::Null) => Self::new(ring, n, h),
            Some(p) => {
                let p = p
                    .as_array()
                    .ok_or_else(|| Error::Parse("\"p\" must be an array of matrices".into()))?
                    .iter()
                    .map(|m| {
                        let mut m = m.clone();
                        if let Some(obj) = m.as_object_mut() {
                            obj.entry("ring").or_insert_with(|| json!(ring.to_string()));
                        }
                        Matrix::from_json(&m)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::with_p(ring, n, h, p, reps, log)
            }
        }
    }
}

impl Group for GlDeformation {
    type Elem = GlElem;

    fn identity(&self) -> GlElem {
        GlElem {
            b: 0,
            c: Matrix::identity(self.ring, self.n),
            k: 0,
        }
    }

    /// `(b₁, c₁a₁)(b₂, c₂a₂) = (b₁b₂h(k₁,k₂), c₁ c₂^{a₁} p(k₁,k₂) a_{k₁+k₂})`.
    fn mul(&self, x: &GlElem, y: &GlElem) -> GlElem {
        let bg = self.b();
        let conj = self.reps[x.k].mul(&y.c).mul(&self.reps_inv[x.k]);
        GlElem {
            b: bg.add(bg.add(x.b, y.b), self.h.get(x.k, y.k)),
            c: x.c.mul(&conj).mul(self.p_at(x.k, y.k)),
            k: (x.k + y.k) % self.r,
        }
    }

    fn inv(&self, x: &GlElem) -> GlElem {
        // Solve x·y = 1: k_y = -k, then b_y and c_y from the product law.
        let bg = self.b();
        let ky = (self.r - x.k) % self.r;
        let by = bg.neg(bg.add(x.b, self.h.get(x.k, ky)));
        // c · a c_y a⁻¹ · p = 1  ⇒  c_y = a⁻¹ c⁻¹ p⁻¹ a
        let ci = x.c.inv().expect("invertible");
        let pi = self.p_at(x.k, ky).inv().expect("invertible");
        GlElem {
            b: by,
            c: self.reps_inv[x.k].mul(&ci).mul(&pi).mul(&self.reps[x.k]),
            k: ky,
        }
    }
}

/// With trivial `h` and `B`, the normal-form product agrees with matrix
/// multiplication on every pair of an enumerable `GL_n`.
pub fn gl_reconstruction_report(ring: RingSpec, n: usize, cap: usize) -> Result<Report> {
    let dom = FinAbGroup::cyclic(gcd(n as u64, ring.require_finite()? - 1))?;
    let ctx = GlDeformation::new(ring, n, Cocycle::trivial(dom, FinAbGroup::trivial()))?;
    let gl = enumerate_group(ring, n, GroupKind::GL, cap)?;
    let forms: Vec<GlElem> = gl
        .elements
        .iter()
        .map(|g| {
            let (c, k) = ctx.split(g)?;
            Ok(GlElem { b: 0, c, k })
        })
        .collect::<Result<_>>()?;
    let failures: u64 = forms
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            forms
                .iter()
                .enumerate()
                .filter(|(j, y)| ctx.to_gl(&ctx.mul(x, y)) != gl.elements[i].mul(&gl.elements[*j]))
                .count() as u64
        })
        .sum();
    let mut r = Report::new("gl_reconstruction");
    r.param("ring", ring.to_string()).param("n", n as u64).param("r", ctx.r as u64);
    let pairs = forms.len() * forms.len();
    r.expect_eq(
        "foundation_product",
        "trivial twisting reproduces the GL_n multiplication table",
        json!({"pairs": pairs, "failures": 0}),
        json!({"pairs": pairs, "failures": failures}),
    );
    let in_h1 = forms.iter().all(|x| ctx.in_h1(&x.c));
    r.expect_eq("normal_form_in_h1", "every c component lies in SL_n Z", true, in_h1);
    Ok(r)
}

/// The deformation instances and their invariants as one report.
pub fn deform_suite(cap: usize) -> Result<Report> {
    let gf3 = RingSpec::prime_field(3)?;
    let z2 = FinAbGroup::cyclic(2)?;
    let z4 = FinAbGroup::cyclic(4)?;
    let b = TnDeformation::torus_group(gf3, 3)?;
    let mut all = Report::new("deform");
    all.param("ring", "gf:3").param("n", 3u64);

    let carry2 = Cocycle::carry(b.clone(), z2.clone(), 0, 1)?;
    let carry4 = Cocycle::carry(b.clone(), z4.clone(), 0, 1)?;
    let instances = [
        ("z2_trivial", Cocycle::trivial(b.clone(), z2.clone())),
        ("z2_carry", carry2.clone()),
        ("z4_trivial", Cocycle::trivial(b.clone(), z4.clone())),
        ("z4_carry", carry4),
    ];
    for (name, f) in instances {
        let def = TnDeformation::new(gf3, 3, f)?;
        let mut r = tn_report(&def, cap)?;
        r.suite = format!("tn_{name}");
        all.absorb(r);
    }
    let k3 = TnDeformation::trivial(gf3, 3, FinAbGroup::trivial())?;
    let kt = k3.table(cap)?;
    all.expect_eq("k_center_trivial", "Z trivial gives K_n with trivial center", 1u64, kt.center().len() as u64);

    // torus direction: an element of order 4 appears only for the carry
    let trivial = TnDeformation::trivial(gf3, 3, z2.clone())?;
    let carried = TnDeformation::new(gf3, 3, carry2.clone())?;
    let torus_orders = |d: &TnDeformation| -> Result<Vec<usize>> {
        let e = Extension::new(d.f.clone())?;
        let t = CayleyTable::new(&e, e.elements().collect())?;
        let mut o: Vec<usize> = t.order_multiset().into_keys().collect();
        o.sort_unstable();
        Ok(o)
    };
    all.expect_eq("torus_orders_trivial", "D_n(R,1,Z) has exponent 2", json!([1, 2]), json!(torus_orders(&trivial)?));
    all.expect_eq("torus_orders_carry", "the carry cocycle gives torus elements of order 4", json!([1, 2, 4]), json!(torus_orders(&carried)?));

    let one = gf3.one();
    let alpha = gf3.from_i64(2);
    let x = TnElem {
        u: Matrix::transvection(gf3, 3, 1, 2, &one)?,
        t: TorusElem { z: 0, b: 0 },
    };
    let bi = b.from_coords(&[trivial.log().log(&alpha)?, 0])?;
    let y = TnElem {
        u: Matrix::identity(gf3, 3),
        t: TorusElem { z: 0, b: bi },
    };
    let expected_rev = Matrix::transvection(gf3, 3, 1, 2, &gf3.inv(&alpha)?)?;
    all.expect_eq("action_forward", "(t12(1),1)(I,(1,b)) has u-part t12(1)", true, trivial.mul(&x, &y).u == x.u);
    all.expect_eq("action_reversed", "(I,(1,b))(t12(1),1) has u-part t12(a^-1)", true, trivial.mul(&y, &x).u == expected_rev);

    let d = distinguish(&trivial, &carried, cap)?;
    let separated = matches!(&d.verdict, Verdict::GroupNonIsomorphic { .. });
    let om = &d.invariants["order_multiset"];
    all.record(
        "distinguish_carry",
        "a non-coboundary deformation is not isomorphic to the undeformed group",
        json!({"verdict": "GroupNonIsomorphic"}),
        json!({"verdict": format!("{:?}", d.verdict), "order_multisets": [om.0, om.1]}),
        separated,
    );
    let same = distinguish(&carried, &carried, cap)?;
    all.expect_eq(
        "distinguish_self",
        "a deformation is extension-equivalent to itself",
        true,
        matches!(same.verdict, Verdict::ExtensionEquivalent { map_verified: true, .. }),
    );
    let psi: Vec<usize> = (0..b.order()).map(|x| usize::from(x % 3 == 1)).collect();
    let twisted = carry2.mul(&crate::cohom::coboundary_from(&b, &z2, &psi)?)?;
    let tw = TnDeformation::new(gf3, 3, twisted)?;
    let eq = distinguish(&carried, &tw, cap)?;
    all.expect_eq(
        "distinguish_cohomologous",
        "cohomologous cocycles give extension-equivalent deformations",
        true,
        matches!(eq.verdict, Verdict::ExtensionEquivalent { map_verified: true, .. }),
    );

    all.absorb(gl_reconstruction_report(RingSpec::prime_field(3)?, 2, cap)?);
    all.absorb(gl_reconstruction_report(RingSpec::prime_field(5)?, 2, cap)?);
    let gf7 = RingSpec::prime_field(7)?;
    let z3 = FinAbGroup::cyclic(3)?;
    let h = Cocycle::carry(z3.clone(), z3.clone(), 0, 1)?;
    let gl = GlDeformation::new(gf7, 3, h)?;
    all.expect_eq("gl_deform_r", "A/A^n = Z/gcd(3,6) = Z/3", 3u64, gl.r as u64);
    all.absorb(gl.validate(2000, 7)?);
    Ok(all)
}

pub fn default_deform_suite() -> Result<Report> {
    deform_suite(DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> RingSpec {
        RingSpec::prime_field(p).unwrap()
    }

    #[test]
    fn trivial_z2_instance() {
        let def = TnDeformation::trivial(gf(3), 3, FinAbGroup::cyclic(2).unwrap()).unwrap();
        let r = tn_report(&def, DEFAULT_CAP).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.parameters["order"], json!(216));
        assert!(r.checks.iter().any(|c| c.check == "collapse/homomorphism"));
    }

    #[test]
    fn carry_z4_instance() {
        let b = TnDeformation::torus_group(gf(3), 3).unwrap();
        let f = Cocycle::carry(b, FinAbGroup::cyclic(4).unwrap(), 0, 1).unwrap();
        let def = TnDeformation::new(gf(3), 3, f).unwrap();
        let r = tn_report(&def, DEFAULT_CAP).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.parameters["order"], json!(432));
    }

    #[test]
    fn collapse_needs_trivial() {
        let b = TnDeformation::torus_group(gf(3), 3).unwrap();
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let def = TnDeformation::new(gf(3), 3, Cocycle::carry(b, z2, 0, 1).unwrap()).unwrap();
        assert_eq!(def.collapse(&def.identity()).unwrap_err(), Error::NotTrivialCocycle);
        let triv = TnDeformation::trivial(gf(3), 3, FinAbGroup::cyclic(2).unwrap()).unwrap();
        assert!(triv.collapse(&triv.identity()).unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_cocycles() {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let wrong = Cocycle::trivial(z2.clone(), z2.clone());
        assert!(matches!(TnDeformation::new(gf(3), 3, wrong), Err(Error::SpecMismatch(_))));
        let b = TnDeformation::torus_group(gf(3), 3).unwrap();
        let mut bad = Cocycle::trivial(b, z2);
        bad.table[5] = 1;
        assert!(matches!(TnDeformation::new(gf(3), 3, bad), Err(Error::InvalidCocycle(_))));
    }

    #[test]
    fn json_round_trip() {
        let b = TnDeformation::torus_group(gf(3), 3).unwrap();
        let def = TnDeformation::new(gf(3), 3, Cocycle::carry(b, FinAbGroup::cyclic(2).unwrap(), 1, 1).unwrap()).unwrap();
        let back = TnDeformation::from_json(&def.to_json()).unwrap();
        assert_eq!(back.f, def.f);
        let plain = TnDeformation::from_json(&json!({"ring":"gf:3","n":3,"Z":[2]})).unwrap();
        assert!(plain.f.is_trivial());
    }

    #[test]
    fn gl_reconstruction() {
        let r = gl_reconstruction_report(gf(3), 2, DEFAULT_CAP).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn gl_synthetic_gf7() {
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let h = Cocycle::carry(z3.clone(), z3, 0, 1).unwrap();
        let ctx = GlDeformation::new(gf(7), 3, h).unwrap();
        assert_eq!(ctx.r, 3);
        let r = ctx.check(500, 1).unwrap();
        assert!(r.pass);
        // |GL_3(GF(7))| · |B|
        assert_eq!(ctx.order().unwrap(), 33_784_128u128 * 3);
    }

    #[test]
    fn gl_inconsistent_p() {
        let f7 = gf(7);
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let h = Cocycle::trivial(z3, FinAbGroup::trivial());
        let mut p = GlDeformation::new(f7, 3, h.clone()).unwrap().p;
        // replace p(1,1) and p(2,2) by an element outside Sigma_1 Z
        let off = Matrix::diag_elem(f7, 3, 2, &f7.from_i64(3)).unwrap();
        p[4] = off;
        assert!(matches!(
            GlDeformation::with_correction(f7, 3, h.clone(), p),
            Err(Error::InconsistentContext(_))
        ));
        // a symmetric table inside Sigma_1 Z that breaks associativity
        let mut p = GlDeformation::new(f7, 3, h.clone()).unwrap().p;
        let s = Matrix::scalar(f7, 3, &f7.from_i64(2)).unwrap();
        p[4] = p[4].mul(&s);
        let ctx = GlDeformation::with_correction(f7, 3, h, p).unwrap();
        assert!(matches!(ctx.check(200, 3), Err(Error::InconsistentContext(_))));
    }

    #[test]
    fn suite_passes() {
        let r = default_deform_suite().unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
    }
}
