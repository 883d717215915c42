//! Subgroups cut out by commutator conditions, evaluated by enumeration:
//! centralizers, derived subgroups, the diagonal and torus formulas in
//! triangular groups, the Δ₁ formula in GL_n, isolators, and the index
//! computations for `GL_n / (SL_n · Z)`.

use indexmap::IndexSet;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::matgroup::{analytic_center, enumerate_group, isogeny_kernel, GroupSet};
use crate::matrix::{GroupKind, Matrix};
use crate::report::Report;
use crate::ring::{gcd, RingElem, RingSpec};

pub fn centralizer(host: &GroupSet, s: &[Matrix]) -> GroupSet {
    let mut c = host.centralizer(s, format!("C({})", host.label));
    c.closed = true;
    c
}

/// Conjugacy classes as lists of element indices into `host.elements`.
pub fn conjugacy_classes(host: &GroupSet) -> (Vec<Vec<usize>>, Vec<usize>) {
    let g = host.group();
    let conj: Vec<Matrix> = if host.generators.is_empty() {
        host.elements.iter().cloned().collect()
    } else {
        host.generators.clone()
    };
    let conj_inv: Vec<Matrix> = conj.iter().map(|c| g.inv(c)).collect();
    let mut class_of = vec![usize::MAX; host.len()];
    let mut classes = Vec::new();
    for start in 0..host.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        class_of[start] = id;
        let mut next = 0;
        while next < members.len() {
            let x = &host.elements[members[next]];
            next += 1;
            let images: Vec<usize> = conj
                .iter()
                .zip(&conj_inv)
                .map(|(c, ci)| {
                    host.elements
                        .get_index_of(&ci.mul(x).mul(c))
                        .expect("host closed under conjugation")
                })
                .collect();
            for y in images {
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
        }
        classes.push(members);
    }
    (classes, class_of)
}

/// Growth of the sets of products of at most `w` commutators.
#[derive(Clone, Debug)]
pub struct DerivedSubgroup {
    pub subgroup: GroupSet,
    /// `|P_1|, |P_2|, …` where `P_w` holds the products of `≤ w` commutators.
    pub sizes: Vec<usize>,
    /// Least `w` with `P_w = P_{w+1}`, if reached within the width limit.
    pub stable_width: Option<usize>,
}

/// The products of at most `max_width` commutators, flagged stable when one
/// more factor adds nothing (then it is the derived subgroup).
///
/// Commutators `x⁻¹ x^y` form a union of conjugacy classes, and so does
/// every `P_w`; `P_{w+1}` is the union of the classes of `p·c` with `p` a
/// class representative of `P_w` and `c` any commutator.
pub fn derived_subgroup(host: &GroupSet, max_width: usize) -> DerivedSubgroup {
    let g = host.group();
    let (classes, class_of) = conjugacy_classes(host);
    let mut in_c = vec![false; host.len()];
    for cl in &classes {
        let x_inv = g.inv(&host.elements[cl[0]]);
        for &k in cl {
            let c = x_inv.mul(&host.elements[k]);
            let idx = host.elements.get_index_of(&c).expect("closed host");
            for &m in &classes[class_of[idx]] {
                in_c[m] = true;
            }
        }
    }
    let comm: Vec<usize> = (0..host.len()).filter(|&i| in_c[i]).collect();
    let mut current = in_c.clone();
    let mut sizes = vec![comm.len()];
    let mut stable_width = None;
    for w in 1..=max_width {
        let reps: Vec<usize> = classes
            .iter()
            .filter(|cl| current[cl[0]])
            .map(|cl| cl[0])
            .collect();
        let hits: Vec<usize> = reps
            .par_iter()
            .flat_map_iter(|&p| {
                let pm = &host.elements[p];
                comm.iter().map(move |&c| {
                    host.elements
                        .get_index_of(&pm.mul(&host.elements[c]))
                        .expect("closed host")
                })
            })
            .collect();
        let mut next = current.clone();
        for h in hits {
            if !next[h] {
                for &m in &classes[class_of[h]] {
                    next[m] = true;
                }
            }
        }
        if next == current {
            stable_width = Some(w);
            break;
        }
        current = next;
        sizes.push(current.iter().filter(|&&b| b).count());
    }
    let elems: Vec<Matrix> = (0..host.len())
        .filter(|&i| current[i])
        .map(|i| host.elements[i].clone())
        .collect();
    let mut subgroup = GroupSet::from_elements(host.ring, host.n, format!("[{0},{0}]", host.label), elems);
    subgroup.closed = stable_width.is_some();
    DerivedSubgroup {
        subgroup,
        sizes,
        stable_width,
    }
}

fn minus_one_diagonals(ring: RingSpec, n: usize, rows: std::ops::RangeInclusive<usize>) -> Result<Vec<Matrix>> {
    if ring.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    let m1 = ring.neg(&ring.one());
    rows.map(|i| Matrix::diag_elem(ring, n, i, &m1)).collect()
}

/// `{x ∈ T_n : [x, d_i(-1)] = 1 for all i}`, which should be the diagonal
/// subgroup.
pub fn dn_formula(host: &GroupSet) -> Result<GroupSet> {
    let ds = minus_one_diagonals(host.ring, host.n, 1..=host.n)?;
    let mut s = host.centralizer(&ds, "D_n formula");
    s.closed = true;
    Ok(s)
}

/// `{x ∈ K_n : [x, d_i(-1)] = 1 for i < n}`, which should be `B_n`.
pub fn bn_formula(host: &GroupSet) -> Result<GroupSet> {
    let ds = minus_one_diagonals(host.ring, host.n, 1..=host.n - 1)?;
    let mut s = host.centralizer(&ds, "B_n formula");
    s.closed = true;
    Ok(s)
}

/// `{x ∈ B_n : [x, t_ij(1)] = 1 for all i < j with i, j ≠ k}`, which should
/// be `d_k(F^×)` for `k < n` (`d_n(F^×)` is not inside `B_n`).
pub fn dk_formula(host: &GroupSet, k: usize) -> Result<GroupSet> {
    let (ring, n) = (host.ring, host.n);
    if k == 0 || k >= n {
        return Err(Error::BadIndex { i: k, j: k, n });
    }
    let bn = bn_formula(host)?;
    let one = ring.one();
    let mut ts = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if i != k && j != k {
                ts.push(Matrix::transvection(ring, n, i, j, &one)?);
            }
        }
    }
    let mut s = bn.centralizer(&ts, format!("d_{k} formula"));
    s.closed = true;
    Ok(s)
}

/// `B_n = {diag(b_1, …, b_{n-1}, 1)}`.
pub fn analytic_bn(ring: RingSpec, n: usize) -> Result<GroupSet> {
    let d = enumerate_group(ring, n, GroupKind::D, usize::MAX)?;
    let elems = d
        .elements
        .into_iter()
        .filter(|m| ring.is_one(m.entry(n - 1, n - 1)));
    let mut s = GroupSet::from_elements(ring, n, "B_n", elems);
    s.closed = true;
    Ok(s)
}

/// `d_k(F^×)`.
pub fn analytic_dk(ring: RingSpec, n: usize, k: usize) -> Result<GroupSet> {
    let elems = ring
        .units()?
        .iter()
        .map(|u| Matrix::diag_elem(ring, n, k, u))
        .collect::<Result<Vec<_>>>()?;
    let mut s = GroupSet::from_elements(ring, n, format!("d_{k}(F^x)"), elems);
    s.closed = true;
    Ok(s)
}

/// The Δ₁ condition: conjugation by x maps `t_1j(1)` and `t_i1(1)` into
/// their root subgroups and fixes every other `t_ij(1)`.
pub fn delta1_condition(x: &Matrix, x_inv: &Matrix) -> bool {
    let ring = x.ring();
    let n = x.n();
    let one = ring.one();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let t = Matrix::transvection(ring, n, i, j, &one).expect("valid");
            let c = x.mul(&t).mul(x_inv);
            let ok = if i == 1 || j == 1 {
                (0..n).all(|r| {
                    (0..n).all(|s| {
                        (r, s) == (i - 1, j - 1)
                            || if r == s {
                                ring.is_one(c.entry(r, s))
                            } else {
                                ring.is_zero(c.entry(r, s))
                            }
                    })
                })
            } else {
                c == t
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Δ₁ evaluated over `domain`; pass the whole host when it is enumerable,
/// or a superset such as `D_n` otherwise.
pub fn delta1_formula(domain: &GroupSet) -> GroupSet {
    let g = domain.group();
    let elems: Vec<Matrix> = domain
        .elements
        .par_iter()
        .filter(|x| delta1_condition(x, &g.inv(x)))
        .cloned()
        .collect();
    GroupSet::from_elements(domain.ring, domain.n, "Delta_1 formula", elems)
}

/// `d_1(F^×) · Z(GL_n)`.
pub fn analytic_delta1(ring: RingSpec, n: usize) -> Result<GroupSet> {
    let d1 = analytic_dk(ring, n, 1)?;
    let z = analytic_center(ring, n, GroupKind::GL)?;
    Ok(product_set(&d1, &z, "d_1(F^x) Z"))
}

pub fn product_set(a: &GroupSet, b: &GroupSet, label: &str) -> GroupSet {
    let elems: IndexSet<Matrix> = a
        .elements
        .par_iter()
        .flat_map_iter(|x| b.elements.iter().map(move |y| x.mul(y)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    GroupSet::from_elements(a.ring, a.n, label, elems)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsolatorMode {
    /// `g^n ∈ M` for the given n.
    Fixed(u64),
    /// `g^k ∈ M` for some `1 ≤ k ≤ |G|`.
    Any,
}

pub fn is_normal(host: &GroupSet, m: &GroupSet) -> bool {
    let g = host.group();
    let conj: Vec<Matrix> = if host.generators.is_empty() {
        host.elements.iter().cloned().collect()
    } else {
        host.generators.clone()
    };
    conj.par_iter().all(|c| {
        let ci = g.inv(c);
        m.elements.iter().all(|x| m.contains(&ci.mul(x).mul(c)))
    })
}

/// `Is_G(M)` in the requested reading; `NotNormal` unless `M ⊴ G`.
pub fn isolator(host: &GroupSet, m: &GroupSet, mode: IsolatorMode) -> Result<GroupSet> {
    if !m.is_subset_of(host) || !is_normal(host, m) {
        return Err(Error::NotNormal);
    }
    let limit = host.len() as u64;
    let elems: Vec<Matrix> = host
        .elements
        .par_iter()
        .filter(|x| match mode {
            IsolatorMode::Fixed(n) => m.contains(&x.pow(n)),
            IsolatorMode::Any => {
                let mut p = (*x).clone();
                for _ in 0..limit {
                    if m.contains(&p) {
                        return true;
                    }
                    p = p.mul(x);
                }
                false
            }
        })
        .cloned()
        .collect();
    let label = match mode {
        IsolatorMode::Fixed(n) => format!("Is_{n}({})", m.label),
        IsolatorMode::Any => format!("Is({})", m.label),
    };
    let mut s = GroupSet::from_elements(host.ring, host.n, label, elems);
    s.closed = true;
    Ok(s)
}

/// Checks `d_1(α^n) = diag(α) ∏_{i=2..n} d_1(α) d_i(α⁻¹)` for every unit.
pub fn d1_power_identity(ring: RingSpec, n: usize) -> Result<Report> {
    let units = ring.units()?;
    let mut report = Report::new("d1_power_identity");
    report.param("ring", ring.to_string()).param("n", n as u64);
    let mut failures = 0u64;
    for a in &units {
        let lhs = Matrix::diag_elem(ring, n, 1, &ring.pow(a, n as u64))?;
        let ai = ring.inv(a)?;
        let mut rhs = Matrix::scalar(ring, n, a)?;
        for i in 2..=n {
            rhs = rhs
                .mul(&Matrix::diag_elem(ring, n, 1, a)?)
                .mul(&Matrix::diag_elem(ring, n, i, &ai)?);
        }
        failures += u64::from(lhs != rhs);
    }
    report.expect_eq(
        "d1_power_identity",
        "d_1(a^n) = diag(a) prod_{i=2..n} d_1(a) d_i(a^-1)",
        json!({"cases": units.len(), "failures": 0}),
        json!({"cases": units.len(), "failures": failures}),
    );
    Ok(report)
}

/// Index in GL_n of the subgroup `{g : det g ∈ image}`.
fn index_of_image(units: usize, image: &[RingElem]) -> u64 {
    (units / image.len()) as u64
}

/// Index computations for `1 → GL_n/(SL_n Z) ≅ F^×/(F^×)^n` and the chain
/// `G ≥ Is(G'Z) ≥ Is(G')Z ≥ Is(G') ≥ G'` in both isolator readings.
///
/// Hosts within `cap` are enumerated and every subgroup is built
/// explicitly. Larger hosts are handled through the quotient by SL_n,
/// realised on the representatives `d_n(β)` with `β = det g` read off the
/// middle factor of the GL decomposition.
pub fn a4_sequence_report(ring: RingSpec, n: usize, cap: usize) -> Result<Report> {
    let q = ring.require_finite()?;
    ring.require_field()?;
    let units = ring.units()?;
    let phi = units.len();
    let g = gcd(n as u64, q - 1);
    let mut report = Report::new("a4");
    report.param("ring", ring.to_string()).param("n", n as u64);

    // Determinant images of the subgroups in the chain, all containing SL_n.
    let powers: Vec<RingElem> = ring.nth_power_classes(n as u64)?.0;
    let roots: Vec<RingElem> = units
        .iter()
        .filter(|u| ring.is_one(&ring.pow(u, n as u64)))
        .cloned()
        .collect();
    let fixed_iso = |img: &[RingElem]| -> Vec<RingElem> {
        units
            .iter()
            .filter(|u| img.contains(&ring.pow(u, n as u64)))
            .cloned()
            .collect()
    };
    let mut roots_times_powers: Vec<RingElem> = roots
        .iter()
        .flat_map(|a| powers.iter().map(move |b| ring.mul(a, b)))
        .collect();
    roots_times_powers.sort();
    roots_times_powers.dedup();
    let predicted_fixed = [
        index_of_image(phi, &fixed_iso(&powers)),
        (fixed_iso(&powers).len() / roots_times_powers.len()) as u64,
        (roots_times_powers.len() / roots.len()) as u64,
        roots.len() as u64,
    ];
    // In a finite group every element has a power equal to 1, so each
    // isolator in the "some k" reading is the whole group.
    let predicted_any = [1u64, 1, 1, phi as u64];

    let (index_observed, chain_fixed, chain_any, mode) = if crate::matgroup::predicted_order(ring, n, GroupKind::GL)? <= cap as u128 {
        let host = enumerate_group(ring, n, GroupKind::GL, cap)?;
        let sl = enumerate_group(ring, n, GroupKind::SL, cap)?;
        let derived = derived_subgroup(&host, 8);
        let derived_ok = derived.stable_width.is_some() && derived.subgroup.same_elements(&sl);
        report.record(
            "derived_is_sl",
            "[GL_n, GL_n] = SL_n",
            json!({"order": sl.len(), "stable": true}),
            json!({"order": derived.subgroup.len(), "stable": derived.stable_width.is_some(), "width": derived.stable_width}),
            derived_ok,
        );
        let gp = derived.subgroup;
        let z = host.center();
        let gpz = product_set(&gp, &z, "G'Z");
        let d1 = analytic_dk(ring, n, 1)?;
        let whole = product_set(&gpz, &d1, "G'Z d_1(F^x)");
        report.expect_eq("g_is_gprime_z_d1", "G = G' Z d_1(F^x)", host.len() as u64, whole.len() as u64);
        let index = (host.len() / gpz.len()) as u64;
        let chain = |mode: IsolatorMode| -> Result<[u64; 4]> {
            let is_gpz = isolator(&host, &gpz, mode)?;
            let is_gp = isolator(&host, &gp, mode)?;
            let is_gp_z = product_set(&is_gp, &z, "Is(G')Z");
            Ok([
                (host.len() / is_gpz.len()) as u64,
                (is_gpz.len() / is_gp_z.len()) as u64,
                (is_gp_z.len() / is_gp.len()) as u64,
                (is_gp.len() / gp.len()) as u64,
            ])
        };
        let fixed = chain(IsolatorMode::Fixed(n as u64))?;
        let any = chain(IsolatorMode::Any)?;
        (index, fixed, any, "enumerated")
    } else {
        // Cosets of SL_n·Z among the representatives d_n(β).
        let mut seen: Vec<RingElem> = Vec::new();
        let mut cosets = 0u64;
        for b in &units {
            let rep = Matrix::diag_elem(ring, n, n, b)?;
            let beta = crate::word::decompose_gl(&rep)?.diag.expect("gl word").value;
            if !seen.contains(&beta) {
                cosets += 1;
                for z in &powers {
                    seen.push(ring.mul(&beta, z));
                }
            }
        }
        (cosets, predicted_fixed, predicted_any, "determinant quotient")
    };
    report.param("mode", mode);
    report.expect_eq(
        "quotient_index",
        "|GL_n / (SL_n Z)| = gcd(n, q - 1)",
        g,
        index_observed,
    );
    let (_, power_index) = ring.nth_power_classes(n as u64)?;
    report.expect_eq("power_class_index", "|F^x / (F^x)^n| = gcd(n, q - 1)", g, power_index);
    report.expect_eq(
        "isogeny_kernel_size",
        "|{(wI, w^-1 I) : w^n = 1}| = gcd(n, q - 1)",
        g,
        isogeny_kernel(ring, n)?.len() as u64,
    );
    let names = ["[G : Is(G'Z)]", "[Is(G'Z) : Is(G')Z]", "[Is(G')Z : Is(G')]", "[Is(G') : G']"];
    report.expect_eq(
        "chain_fixed_exponent",
        "G >= Is(G'Z) >= Is(G')Z >= Is(G') >= G' with g^n in M",
        json!(names.iter().zip(predicted_fixed).map(|(k, v)| json!({k.to_string(): v})).collect::<Vec<_>>()),
        json!(names.iter().zip(chain_fixed).map(|(k, v)| json!({k.to_string(): v})).collect::<Vec<_>>()),
    );
    report.expect_eq(
        "chain_any_exponent",
        "G >= Is(G'Z) >= Is(G')Z >= Is(G') >= G' with g^k in M for some k",
        json!(names.iter().zip(predicted_any).map(|(k, v)| json!({k.to_string(): v})).collect::<Vec<_>>()),
        json!(names.iter().zip(chain_any).map(|(k, v)| json!({k.to_string(): v})).collect::<Vec<_>>()),
    );
    Ok(report)
}

/// Evaluates the triangular-group formulas on `T_n` and `K_n`.
pub fn definable_report(ring: RingSpec, n: usize, cap: usize) -> Result<Report> {
    let mut report = Report::new("definable");
    report.param("ring", ring.to_string()).param("n", n as u64);
    let t = enumerate_group(ring, n, GroupKind::T, cap)?;
    let k = enumerate_group(ring, n, GroupKind::K, cap)?;
    if ring.characteristic() == 2 {
        report.expect_eq("char_two", "d_i(-1) = 1 makes the formulas degenerate", "CharTwo", dn_formula(&t).err().map(|e| e.name()).unwrap_or("none"));
        return Ok(report);
    }
    let d = enumerate_group(ring, n, GroupKind::D, cap)?;
    let dn = dn_formula(&t)?;
    report.record(
        "dn_formula",
        "{x in T_n : [x, d_i(-1)] = 1 for all i} = D_n",
        d.len() as u64,
        dn.len() as u64,
        dn.same_elements(&d),
    );
    let bn = bn_formula(&k)?;
    let bn_a = analytic_bn(ring, n)?;
    report.record(
        "bn_formula",
        "{x in K_n : [x, d_i(-1)] = 1 for i < n} = B_n",
        bn_a.len() as u64,
        bn.len() as u64,
        bn.same_elements(&bn_a),
    );
    for idx in 1..n {
        let dk = dk_formula(&k, idx)?;
        let dk_a = analytic_dk(ring, n, idx)?;
        report.record(
            format!("dk_formula_{idx}"),
            format!("{{x in B_n : [x, t_ij(1)] = 1 for i, j != {idx}}} = d_{idx}(F^x)"),
            dk_a.len() as u64,
            dk.len() as u64,
            dk.same_elements(&dk_a),
        );
    }
    let zk = k.center();
    report.expect_eq("k_center_trivial", "Z(K_n) = 1", 1u64, zk.len() as u64);
    let mut closed = 0u64;
    let mut sets = vec![dn, bn];
    for s in &mut sets {
        closed += u64::from(s.verify_closure());
    }
    report.expect_eq("formula_sets_are_subgroups", "formula outputs are closed under products and inverses", 2u64, closed);

    let gl_small = crate::matgroup::predicted_order(ring, n, GroupKind::GL)? <= cap as u128;
    let (mut delta, domain) = if gl_small {
        (delta1_formula(&enumerate_group(ring, n, GroupKind::GL, cap)?), "GL_n")
    } else {
        (delta1_formula(&d), "D_n")
    };
    report.param("delta1_domain", domain);
    let delta_a = analytic_delta1(ring, n)?;
    report.record(
        "delta1_formula",
        "Delta_1 = d_1(F^x) Z(GL_n)",
        delta_a.len() as u64,
        delta.len() as u64,
        delta.same_elements(&delta_a),
    );
    report.expect_eq("delta1_is_subgroup", "Delta_1 is closed under products and inverses", true, delta.verify_closure());
    if gl_small {
        let sl = enumerate_group(ring, n, GroupKind::SL, cap)?;
        let mut gens: Vec<Matrix> = delta.elements.iter().cloned().collect();
        gens.extend(sl.generators.iter().cloned());
        let joined = GroupSet::generated(ring, n, "<Delta_1, SL_n>", gens, cap)?;
        let gl_order = crate::matgroup::predicted_order(ring, n, GroupKind::GL)?;
        report.expect_eq("delta1_and_derived_generate", "<Delta_1, G'> = G", gl_order as u64, joined.len() as u64);
    }
    Ok(report)
}
