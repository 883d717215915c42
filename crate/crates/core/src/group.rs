//! Generic finite-group machinery shared by the matrix groups and the
//! deformed groups: closure, Cayley tables, axiom checks, centers, derived
//! subgroups and element-order statistics.

use std::collections::BTreeMap;
use std::hash::Hash;

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A group given by its operations on a concrete element type.
pub trait Group: Sync {
    type Elem: Clone + Eq + Hash + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ai = self.inv(a);
        let bi = self.inv(b);
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    /// `b⁻¹ a b`.
    fn conjugate(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(b), a), b)
    }

    /// Order of `a` (`None` past `limit`).
    fn elem_order(&self, a: &Self::Elem, limit: usize) -> Option<usize> {
        let e = self.identity();
        let mut x = a.clone();
        for k in 1..=limit {
            if x == e {
                return Some(k);
            }
            x = self.mul(&x, a);
        }
        None
    }
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// In a finite group this is the generated subgroup. Fails with `TooLarge`
/// once more than `cap` elements are found.
pub fn closure<G: Group>(g: &G, gens: &[G::Elem], cap: usize) -> Result<IndexSet<G::Elem>> {
    let mut set = IndexSet::new();
    set.insert(g.identity());
    let mut next = 0;
    while next < set.len() {
        let x = set[next].clone();
        next += 1;
        for s in gens {
            let y = g.mul(&x, s);
            if set.insert(y) && set.len() > cap {
                return Err(Error::TooLarge {
                    predicted: set.len() as u128,
                    cap: cap as u128,
                });
            }
        }
    }
    Ok(set)
}

/// Closure test: identity present, products and inverses stay inside.
pub fn is_subgroup<G: Group>(g: &G, set: &IndexSet<G::Elem>) -> bool {
    if !set.contains(&g.identity()) {
        return false;
    }
    let elems: Vec<&G::Elem> = set.iter().collect();
    elems.par_iter().all(|a| {
        set.contains(&g.inv(a)) && elems.iter().all(|b| set.contains(&g.mul(a, b)))
    })
}

/// Full multiplication table of an enumerated finite group.
#[derive(Clone, Debug)]
pub struct CayleyTable<E> {
    elems: IndexSet<E>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: u32,
}

impl<E: Clone + Eq + Hash + Send + Sync> CayleyTable<E> {
    /// Builds the table; every product must land in `elems`.
    pub fn new<G: Group<Elem = E>>(g: &G, elems: IndexSet<E>) -> Result<Self> {
        let n = elems.len();
        let rows: Vec<Result<Vec<u32>>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let a = &elems[i];
                (0..n)
                    .map(|j| {
                        elems
                            .get_index_of(&g.mul(a, &elems[j]))
                            .map(|k| k as u32)
                            .ok_or_else(|| Error::InconsistentContext("set is not closed under the product".into()))
                    })
                    .collect()
            })
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for r in rows {
            table.extend(r?);
        }
        let identity = elems
            .get_index_of(&g.identity())
            .ok_or_else(|| Error::InconsistentContext("identity missing".into()))? as u32;
        let mut inverse = vec![u32::MAX; n];
        for i in 0..n {
            if let Some(j) = (0..n).find(|&j| table[i * n + j] == identity) {
                inverse[i] = j as u32;
            }
        }
        Ok(CayleyTable {
            elems,
            table,
            inverse,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &IndexSet<E> {
        &self.elems
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.elems.get_index_of(e)
    }

    /// Number of triples violating associativity.
    pub fn associativity_failures(&self) -> u64 {
        let n = self.len();
        (0..n)
            .into_par_iter()
            .map(|a| {
                let mut bad = 0u64;
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            bad += 1;
                        }
                    }
                }
                bad
            })
            .sum()
    }

    pub fn identity_ok(&self) -> bool {
        let e = self.identity();
        (0..self.len()).all(|a| self.mul(a, e) == a && self.mul(e, a) == a)
    }

    pub fn inverses_ok(&self) -> bool {
        let e = self.identity();
        (0..self.len()).all(|a| {
            self.inverse[a] != u32::MAX && self.mul(self.inv(a), a) == e && self.mul(a, self.inv(a)) == e
        })
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Indices of central elements.
    pub fn center(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .into_par_iter()
            .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Subgroup generated by the given indices.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![self.identity()];
        seen[self.identity()] = true;
        let mut next = 0;
        while next < out.len() {
            let x = out[next];
            next += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The derived subgroup, generated by all commutators.
    pub fn derived(&self) -> Vec<usize> {
        let n = self.len();
        let mut comm = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comm[c] = true;
            }
        }
        let gens: Vec<usize> = (0..n).filter(|&c| comm[c]).collect();
        self.generated(&gens)
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Map from element order to the number of elements of that order.
    pub fn order_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.len() {
            *m.entry(self.order_of(a)).or_insert(0) += 1;
        }
        m
    }
}

/// Order statistics without a table; suitable for larger groups.
pub fn order_multiset<G: Group>(g: &G, elems: &IndexSet<G::Elem>) -> BTreeMap<usize, usize> {
    let limit = elems.len();
    let orders: Vec<usize> = elems
        .par_iter()
        .map(|x| g.elem_order(x, limit).expect("element of a finite group"))
        .collect();
    let mut m = BTreeMap::new();
    for o in orders {
        *m.entry(o).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z/m written additively.
    struct Cyclic(u32);

    impl Group for Cyclic {
        type Elem = u32;
        fn identity(&self) -> u32 {
            0
        }
        fn mul(&self, a: &u32, b: &u32) -> u32 {
            (a + b) % self.0
        }
        fn inv(&self, a: &u32) -> u32 {
            (self.0 - a) % self.0
        }
    }

    /// Permutations of {0,1,2} composed left to right.
    struct S3;

    impl Group for S3 {
        type Elem = [u8; 3];
        fn identity(&self) -> [u8; 3] {
            [0, 1, 2]
        }
        fn mul(&self, a: &[u8; 3], b: &[u8; 3]) -> [u8; 3] {
            [b[a[0] as usize], b[a[1] as usize], b[a[2] as usize]]
        }
        fn inv(&self, a: &[u8; 3]) -> [u8; 3] {
            let mut r = [0; 3];
            for i in 0..3 {
                r[a[i] as usize] = i as u8;
            }
            r
        }
    }

    #[test]
    fn cyclic_closure_and_orders() {
        let g = Cyclic(6);
        let all = closure(&g, &[1], 100).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(closure(&g, &[2], 100).unwrap().len(), 3);
        assert!(closure(&g, &[1], 3).is_err());
        let t = CayleyTable::new(&g, all).unwrap();
        assert_eq!(t.associativity_failures(), 0);
        assert!(t.is_abelian());
        assert_eq!(t.center().len(), 6);
        assert_eq!(t.derived(), vec![t.identity()]);
        let om = t.order_multiset();
        assert_eq!(om, BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)]));
    }

    #[test]
    fn symmetric_group_structure() {
        let g = S3;
        let all = closure(&g, &[[1, 0, 2], [0, 2, 1]], 100).unwrap();
        assert_eq!(all.len(), 6);
        assert!(is_subgroup(&g, &all));
        let t = CayleyTable::new(&g, all.clone()).unwrap();
        assert!(t.identity_ok() && t.inverses_ok());
        assert!(!t.is_abelian());
        assert_eq!(t.center().len(), 1);
        assert_eq!(t.derived().len(), 3);
        assert_eq!(order_multiset(&g, &all), t.order_multiset());
    }
}
