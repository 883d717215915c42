//! Finite realisations of the classical matrix groups: enumeration by
//! closure, centers, central quotients, the isogeny kernel and the
//! exhaustive Steinberg-relation suite.

use std::collections::BTreeMap;

use indexmap::IndexSet;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::{self, Group};
use crate::matrix::{GroupKind, Matrix};
use crate::report::Report;
use crate::ring::{factorize, RingElem, RingSpec};

/// Default bound on the number of elements any enumeration may produce.
pub const DEFAULT_CAP: usize = 200_000;

/// The ambient group GL_n(R) acting on matrices; inverses panic for
/// singular input, so only feed it group elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    pub ring: RingSpec,
    pub n: usize,
}

impl Group for MatrixGroup {
    type Elem = Matrix;

    fn identity(&self) -> Matrix {
        Matrix::identity(self.ring, self.n)
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b)
    }

    fn inv(&self, a: &Matrix) -> Matrix {
        a.inv().expect("group element is invertible")
    }
}

/// An explicitly enumerated set of matrices, usually a subgroup.
#[derive(Clone, Debug)]
pub struct GroupSet {
    pub ring: RingSpec,
    pub n: usize,
    pub label: String,
    pub elements: IndexSet<Matrix>,
    /// Generators used to build the set; empty when it was filtered.
    pub generators: Vec<Matrix>,
    /// Whether closure under products and inverses has been established.
    pub closed: bool,
}

impl GroupSet {
    pub fn from_elements(
        ring: RingSpec,
        n: usize,
        label: impl Into<String>,
        elements: impl IntoIterator<Item = Matrix>,
    ) -> GroupSet {
        GroupSet {
            ring,
            n,
            label: label.into(),
            elements: elements.into_iter().collect(),
            generators: Vec::new(),
            closed: false,
        }
    }

    /// Subgroup generated by `gens`. Breadth-first closure under right
    /// multiplication by generators is closed in a finite group.
    pub fn generated(
        ring: RingSpec,
        n: usize,
        label: impl Into<String>,
        gens: Vec<Matrix>,
        cap: usize,
    ) -> Result<GroupSet> {
        ring.require_finite()?;
        let g = MatrixGroup { ring, n };
        let elements = group::closure(&g, &gens, cap)?;
        Ok(GroupSet {
            ring,
            n,
            label: label.into(),
            elements,
            generators: gens,
            closed: true,
        })
    }

    pub fn group(&self) -> MatrixGroup {
        MatrixGroup {
            ring: self.ring,
            n: self.n,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.elements.contains(m)
    }

    /// Checks identity, products and inverses; sets `closed` on success.
    pub fn verify_closure(&mut self) -> bool {
        let ok = group::is_subgroup(&self.group(), &self.elements);
        self.closed = ok;
        ok
    }

    /// Elements commuting with every member of `s`.
    pub fn centralizer(&self, s: &[Matrix], label: impl Into<String>) -> GroupSet {
        let g = self.group();
        let elems: Vec<Matrix> = self
            .elements
            .par_iter()
            .filter(|x| s.iter().all(|a| g.mul(x, a) == g.mul(a, x)))
            .cloned()
            .collect();
        GroupSet::from_elements(self.ring, self.n, label, elems)
    }

    /// The center, tested against the generators when known.
    pub fn center(&self) -> GroupSet {
        let probe: Vec<Matrix> = if self.generators.is_empty() {
            self.elements.iter().cloned().collect()
        } else {
            self.generators.clone()
        };
        let mut z = self.centralizer(&probe, format!("Z({})", self.label));
        z.closed = true;
        z
    }

    /// Same elements, compared as sets.
    pub fn same_elements(&self, other: &GroupSet) -> bool {
        self.len() == other.len() && self.elements.iter().all(|x| other.contains(x))
    }

    pub fn is_subset_of(&self, other: &GroupSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    pub fn order_multiset(&self) -> BTreeMap<usize, usize> {
        group::order_multiset(&self.group(), &self.elements)
    }
}

fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

fn upow(b: u128, e: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(b);
    }
    acc
}

/// Order of the named group over a finite ring, from closed formulas.
pub fn predicted_order(ring: RingSpec, n: usize, kind: GroupKind) -> Result<u128> {
    let m = ring.require_finite()?;
    let nn = n as u64;
    let phi = euler_phi(m) as u128;
    let tri = nn * (nn - 1) / 2;
    let gl = || {
        factorize(m).into_iter().fold(1u128, |acc, (p, k)| {
            let p = p as u128;
            let lifts = upow(p, (k as u64 - 1) * nn * nn);
            let field = (0..nn).fold(1u128, |a, i| a.saturating_mul(upow(p, nn) - upow(p, i)));
            acc.saturating_mul(lifts).saturating_mul(field)
        })
    };
    Ok(match kind {
        GroupKind::GL => gl(),
        GroupKind::SL => gl() / phi,
        GroupKind::T => upow(phi, nn).saturating_mul(upow(m as u128, tri)),
        GroupKind::UT => upow(m as u128, tri),
        GroupKind::D => upow(phi, nn),
        GroupKind::Scalar => phi,
        GroupKind::K => upow(phi, nn - 1).saturating_mul(upow(m as u128, tri)),
    })
}

/// A generating set for the named group over a finite ring.
pub fn generators(ring: RingSpec, n: usize, kind: GroupKind) -> Result<Vec<Matrix>> {
    let units = ring.units()?;
    let one = ring.one();
    let mut gens = Vec::new();
    let transvections = |upper_only: bool, out: &mut Vec<Matrix>| -> Result<()> {
        for i in 1..=n {
            for j in 1..=n {
                if i != j && (!upper_only || i < j) {
                    out.push(Matrix::transvection(ring, n, i, j, &one)?);
                }
            }
        }
        Ok(())
    };
    let diagonals = |rows: std::ops::RangeInclusive<usize>, out: &mut Vec<Matrix>| -> Result<()> {
        for i in rows {
            for u in &units {
                if !ring.is_one(u) {
                    out.push(Matrix::diag_elem(ring, n, i, u)?);
                }
            }
        }
        Ok(())
    };
    match kind {
        GroupKind::GL => {
            transvections(false, &mut gens)?;
            diagonals(1..=1, &mut gens)?;
        }
        GroupKind::SL => transvections(false, &mut gens)?,
        GroupKind::T => {
            transvections(true, &mut gens)?;
            diagonals(1..=n, &mut gens)?;
        }
        GroupKind::UT => transvections(true, &mut gens)?,
        GroupKind::D => diagonals(1..=n, &mut gens)?,
        GroupKind::Scalar => {
            for u in &units {
                if !ring.is_one(u) {
                    gens.push(Matrix::scalar(ring, n, u)?);
                }
            }
        }
        GroupKind::K => {
            transvections(true, &mut gens)?;
            diagonals(1..=n - 1, &mut gens)?;
        }
    }
    Ok(gens)
}

/// Enumerates the named group by closure from [`generators`].
///
/// Fails with `TooLarge` before any work when the predicted order exceeds
/// `cap`; the enumerated size is checked against the prediction.
pub fn enumerate_group(ring: RingSpec, n: usize, kind: GroupKind, cap: usize) -> Result<GroupSet> {
    let predicted = predicted_order(ring, n, kind)?;
    if predicted > cap as u128 {
        return Err(Error::TooLarge {
            predicted,
            cap: cap as u128,
        });
    }
    let label = format!("{}_{}({})", kind, n, ring);
    let set = GroupSet::generated(ring, n, label, generators(ring, n, kind)?, cap)?;
    if set.len() as u128 != predicted {
        return Err(Error::SpecMismatch(format!(
            "enumerated {} elements of {}, formula predicts {predicted}",
            set.len(),
            set.label
        )));
    }
    Ok(set)
}

/// Units u with `u^n = 1`.
pub fn roots_of_unity(ring: RingSpec, n: u64) -> Result<Vec<RingElem>> {
    Ok(ring
        .units()?
        .into_iter()
        .filter(|u| ring.is_one(&ring.pow(u, n)))
        .collect())
}

/// The center of the named group by formula rather than search.
pub fn analytic_center(ring: RingSpec, n: usize, kind: GroupKind) -> Result<GroupSet> {
    let units = ring.units()?;
    let label = format!("analytic Z({kind}_{n}({ring}))");
    let scalars = |us: &[RingElem]| -> Result<Vec<Matrix>> {
        us.iter().map(|u| Matrix::scalar(ring, n, u)).collect()
    };
    // t_1n(α) commutes with every d_1(u) iff α(u - 1) = 0 for all units u.
    let fixed_corner = || -> Result<Vec<Matrix>> {
        let elems = ring.elements()?;
        elems
            .iter()
            .filter(|a| {
                units
                    .iter()
                    .all(|u| ring.is_zero(&ring.mul(a, &ring.sub(u, &ring.one()))))
            })
            .map(|a| Matrix::transvection(ring, n, 1, n, a))
            .collect()
    };
    let elems: Vec<Matrix> = match kind {
        GroupKind::GL | GroupKind::Scalar => scalars(&units)?,
        GroupKind::SL => scalars(&roots_of_unity(ring, n as u64)?)?,
        GroupKind::T => {
            let mut out = Vec::new();
            for s in scalars(&units)? {
                for c in fixed_corner()? {
                    out.push(s.mul(&c));
                }
            }
            out
        }
        GroupKind::UT => ring
            .elements()?
            .iter()
            .map(|a| Matrix::transvection(ring, n, 1, n, a))
            .collect::<Result<_>>()?,
        GroupKind::D => enumerate_group(ring, n, GroupKind::D, DEFAULT_CAP)?
            .elements
            .into_iter()
            .collect(),
        GroupKind::K => fixed_corner()?,
    };
    let mut z = GroupSet::from_elements(ring, n, label, elems);
    z.closed = true;
    Ok(z)
}

/// `G / Z(G)` realised on canonical coset representatives.
#[derive(Clone, Debug)]
pub struct CentralQuotient {
    pub ring: RingSpec,
    pub n: usize,
    pub center: Vec<Matrix>,
    pub reps: IndexSet<Matrix>,
}

impl CentralQuotient {
    /// The canonical representative: the least element of the coset `xZ`.
    pub fn canonical(&self, x: &Matrix) -> Matrix {
        self.center
            .iter()
            .map(|z| x.mul(z))
            .min()
            .expect("center contains the identity")
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

impl Group for CentralQuotient {
    type Elem = Matrix;

    fn identity(&self) -> Matrix {
        self.canonical(&Matrix::identity(self.ring, self.n))
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.canonical(&a.mul(b))
    }

    fn inv(&self, a: &Matrix) -> Matrix {
        self.canonical(&a.inv().expect("group element is invertible"))
    }
}

pub fn quotient_by_center(g: &GroupSet) -> CentralQuotient {
    let center: Vec<Matrix> = g.center().elements.into_iter().collect();
    let mut q = CentralQuotient {
        ring: g.ring,
        n: g.n,
        center,
        reps: IndexSet::new(),
    };
    let reps: Vec<Matrix> = g.elements.par_iter().map(|x| q.canonical(x)).collect();
    q.reps = reps.into_iter().collect();
    q
}

/// Kernel of `SL_n × Z(GL_n) → GL_n, (h, z) ↦ hz`: the pairs
/// `(ωI, ω⁻¹I)` with `ωⁿ = 1`.
pub fn isogeny_kernel(ring: RingSpec, n: usize) -> Result<Vec<(Matrix, Matrix)>> {
    ring.require_field()?;
    roots_of_unity(ring, n as u64)?
        .iter()
        .map(|w| {
            let wi = ring.inv(w)?;
            Ok((Matrix::scalar(ring, n, w)?, Matrix::scalar(ring, n, &wi)?))
        })
        .collect()
}

struct Tally {
    cases: u64,
    failures: u64,
}

impl Tally {
    fn record(&self, report: &mut Report, check: &str, anchor: &str) {
        report.expect_eq(
            check,
            anchor,
            json!({"cases": self.cases, "failures": 0}),
            json!({"cases": self.cases, "failures": self.failures}),
        );
    }
}

fn tally(results: impl ParallelIterator<Item = bool>) -> Tally {
    let (cases, failures) = results
        .map(|ok| (1u64, u64::from(!ok)))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Tally { cases, failures }
}

/// `[a, b]` from precomputed inverses.
fn comm(a: &Matrix, ai: &Matrix, b: &Matrix, bi: &Matrix) -> Matrix {
    ai.mul(bi).mul(a).mul(b)
}

/// Exhaustive check of the Steinberg relations and the diagonal action on
/// transvections over every parameter choice.
pub fn steinberg_suite(ring: RingSpec, n: usize) -> Result<Report> {
    if n < 3 {
        return Err(Error::BadIndices(format!("the relations need n >= 3, got {n}")));
    }
    let elems = ring.elements()?;
    let units = ring.units()?;
    let mut report = Report::new("steinberg");
    report.param("ring", ring.to_string()).param("n", n as u64);

    let t = |i: usize, j: usize, a: &RingElem| Matrix::transvection(ring, n, i, j, a).expect("valid indices");
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let params: Vec<(RingElem, RingElem)> = elems
        .iter()
        .flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone())))
        .collect();

    let r1 = tally(pairs.par_iter().flat_map_iter(|&(i, j)| {
        params
            .iter()
            .map(move |(a, b)| t(i, j, a).mul(&t(i, j, b)) == t(i, j, &ring.add(a, b)))
    }));
    r1.record(&mut report, "relation1_additivity", "t_ij(a) t_ij(b) = t_ij(a + b)");

    let triples: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).flat_map(move |k| (1..=n).map(move |l| (i, k, l))))
        .filter(|&(i, k, l)| i != k && k != l && i != l)
        .collect();
    let r2 = tally(triples.par_iter().flat_map_iter(|&(i, k, l)| {
        params.iter().map(move |(a, b)| {
            let x = t(i, k, a);
            let y = t(k, l, b);
            comm(&x, &t(i, k, &ring.neg(a)), &y, &t(k, l, &ring.neg(b))) == t(i, l, &ring.mul(a, b))
        })
    }));
    r2.record(&mut report, "relation2_commutator", "[t_ik(a), t_kl(b)] = t_il(ab) for i != l");

    let quads: Vec<(usize, usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(i, k)| pairs.iter().map(move |&(j, l)| (i, k, j, l)))
        .filter(|&(i, k, j, l)| i != l && j != k)
        .collect();
    let identity = Matrix::identity(ring, n);
    let r3 = tally(quads.par_iter().flat_map_iter(|&(i, k, j, l)| {
        let identity = &identity;
        params.iter().map(move |(a, b)| {
            let x = t(i, k, a);
            let y = t(j, l, b);
            comm(&x, &t(i, k, &ring.neg(a)), &y, &t(j, l, &ring.neg(b))) == *identity
        })
    }));
    r3.record(&mut report, "relation3_commuting", "[t_ik(a), t_jl(b)] = 1 for i != l, j != k");

    let rd = tally(triples.par_iter().flat_map_iter(|&(i, j, k)| {
        params.iter().map(move |(a, b)| {
            let x = t(i, j, a);
            let y = t(k, i, b);
            comm(&x, &t(i, j, &ring.neg(a)), &y, &t(k, i, &ring.neg(b)))
                == t(k, j, &ring.neg(&ring.mul(a, b)))
        })
    }));
    rd.record(&mut report, "derived_relation", "[t_ij(a), t_ki(b)] = t_kj(-ab) for j != k");

    // All diagonal matrices with unit entries.
    let mut diags: Vec<Vec<RingElem>> = vec![Vec::new()];
    for _ in 0..n {
        diags = diags
            .into_iter()
            .flat_map(|d| {
                units.iter().map(move |u| {
                    let mut d = d.clone();
                    d.push(u.clone());
                    d
                })
            })
            .collect();
    }
    let diag_cases: Vec<(&Vec<RingElem>, (usize, usize))> = diags
        .iter()
        .flat_map(|d| pairs.iter().map(move |&p| (d, p)))
        .collect();
    let conj = |alphas: &Vec<RingElem>, i: usize, j: usize, b: &RingElem| -> (Matrix, Matrix, RingElem) {
        let d = Matrix::diag_unchecked(ring, alphas);
        let inv: Vec<RingElem> = alphas.iter().map(|a| ring.inv(a).expect("unit")).collect();
        let di = Matrix::diag_unchecked(ring, &inv);
        let predicted = ring.mul(&ring.mul(&inv[i - 1], b), &alphas[j - 1]);
        (d, di, predicted)
    };
    let e1 = tally(diag_cases.par_iter().flat_map_iter(|&(alphas, (i, j))| {
        elems.iter().map(move |b| {
            let (d, di, predicted) = conj(alphas, i, j, b);
            di.mul(&t(i, j, b)).mul(&d) == t(i, j, &predicted)
        })
    }));
    e1.record(
        &mut report,
        "diagonal_conjugation",
        "diag(a)^-1 t_ij(b) diag(a) = t_ij(a_i^-1 b a_j)",
    );
    let e2 = tally(diag_cases.par_iter().flat_map_iter(|&(alphas, (i, j))| {
        elems.iter().map(move |b| {
            let (d, di, predicted) = conj(alphas, i, j, b);
            let x = t(i, j, b);
            comm(&x, &t(i, j, &ring.neg(b)), &d, &di) == t(i, j, &ring.sub(&predicted, b))
        })
    }));
    e2.record(
        &mut report,
        "diagonal_commutator",
        "[t_ij(b), diag(a)] = t_ij(a_i^-1 b a_j - b)",
    );
    Ok(report)
}
