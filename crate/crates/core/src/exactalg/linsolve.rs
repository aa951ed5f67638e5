//! Exact sparse linear algebra over a [`Field`], and the degree-truncated
//! solver for linear systems over a polynomial ring.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use super::poly::{monomials_up_to, Monomial, Poly, PolyRing};
use crate::error::{Error, Result};

/// Sparse vector: coordinate index to nonzero scalar.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// `acc += c * v`, dropping cancelled entries.
pub fn axpy(field: Field, acc: &mut SparseVec, c: &Scalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in v {
        let add = field.mul(c, x);
        match acc.get_mut(&i) {
            Some(old) => {
                let s = field.add(old, &add);
                if s.is_zero() {
                    acc.remove(&i);
                } else {
                    *old = s;
                }
            }
            None => {
                acc.insert(i, add);
            }
        }
    }
}

/// Stable numbering of coordinate keys in first-registration order.
#[derive(Clone, Debug)]
pub struct CoordIndex<K> {
    map: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + Hash> Default for CoordIndex<K> {
    fn default() -> Self {
        CoordIndex { map: HashMap::new(), keys: Vec::new() }
    }
}

impl<K: Clone + Eq + Hash> CoordIndex<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, k: &K) -> usize {
        if let Some(&i) = self.map.get(k) {
            return i;
        }
        let i = self.keys.len();
        self.map.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Row echelon form keyed by leading (largest) index, kept fully reduced
/// on insertion so that `reduce` yields a canonical remainder. Optionally
/// tracks, for every stored row, the combination of inserted vectors that
/// produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    track: bool,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: BTreeMap::new(), track: false }
    }

    pub fn tracking(field: Field) -> Self {
        Echelon { field, rows: BTreeMap::new(), track: true }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Stored rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values().map(|(r, _)| r)
    }

    /// Reduces `v` against the stored rows; returns the remainder and the
    /// combination `c` (over tracked tags) with `v = remainder + c`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let f = self.field;
        let mut v = v.clone();
        let mut comb = SparseVec::new();
        let mut cursor = match v.keys().next_back() {
            Some(&k) => k,
            None => return (v, comb),
        };
        loop {
            let next = v
                .range(..=cursor)
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(&k, c)| (k, c.clone()));
            let Some((k, c)) = next else { break };
            let (row, tag) = &self.rows[&k];
            axpy(f, &mut v, &f.neg(&c), row);
            if self.track {
                axpy(f, &mut comb, &c, tag);
            }
            if k == 0 {
                break;
            }
            cursor = k - 1;
        }
        (v, comb)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v` with tag `tag`. Returns `Ok(())` if `v` was independent,
    /// otherwise `Err(c)` with `tag - c` a combination of tags of zero image.
    pub fn insert(&mut self, v: &SparseVec, tag: SparseVec) -> std::result::Result<(), SparseVec> {
        let f = self.field;
        let (mut r, comb) = self.reduce(v);
        let mut tag = tag;
        if self.track {
            axpy(f, &mut tag, &f.neg(&Scalar::one()), &comb);
        }
        let Some((&piv, lead)) = r.iter().next_back() else {
            return Err(tag);
        };
        let inv = f.inv(lead);
        for x in r.values_mut() {
            *x = f.mul(x, &inv);
        }
        if self.track {
            for x in tag.values_mut() {
                *x = f.mul(x, &inv);
            }
        }
        // Keep existing rows reduced with respect to the new pivot.
        let keys: Vec<usize> = self.rows.range(piv + 1..).map(|(&k, _)| k).collect();
        for k in keys {
            let (row, rtag) = self.rows.get_mut(&k).unwrap();
            if let Some(c) = row.get(&piv).cloned() {
                let nc = f.neg(&c);
                axpy(f, row, &nc, &r);
                if self.track {
                    axpy(f, rtag, &nc, &tag);
                }
            }
        }
        self.rows.insert(piv, (r, tag));
        Ok(())
    }

    pub fn push(&mut self, v: &SparseVec) -> bool {
        self.insert(v, SparseVec::new()).is_ok()
    }
}

/// Kernel of the linear map sending basis vector `j` to `images[j]`, as an
/// echelon basis in the domain coordinates.
pub fn kernel(field: Field, images: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::tracking(field);
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let tag: SparseVec = [(j, Scalar::one())].into_iter().collect();
        if let Err(k) = ech.insert(img, tag) {
            out.push(k);
        }
    }
    let mut basis = Echelon::new(field);
    for k in &out {
        basis.push(k);
    }
    basis.rows().cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Kernel,
    Membership(Vec<Poly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Module generators of `{v : A v = 0, deg v <= bound}`, reduced so that
    /// no generator is a polynomial combination of earlier ones within the
    /// bound.
    Kernel { generators: Vec<Vec<Poly>>, bound: u32 },
    /// `A * witness = target`.
    Member { witness: Vec<Poly>, bound: u32 },
    /// No witness with coefficient degrees at most `bound`.
    Inconclusive { bound: u32 },
}

impl SolveOutcome {
    pub fn bound(&self) -> u32 {
        match self {
            SolveOutcome::Kernel { bound, .. }
            | SolveOutcome::Member { bound, .. }
            | SolveOutcome::Inconclusive { bound } => *bound,
        }
    }
}

type DomKey = (Monomial, usize);

struct Linearised {
    ring: Arc<PolyRing>,
    cols: usize,
    dom: Vec<DomKey>,
    images: Vec<SparseVec>,
    cod: CoordIndex<(usize, Monomial)>,
}

fn poly_vec_to_sparse(v: &[Poly], cod: &mut CoordIndex<(usize, Monomial)>) -> SparseVec {
    let mut out = SparseVec::new();
    for (r, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            out.insert(cod.index(&(r, m.clone())), c.clone());
        }
    }
    out
}

fn linearise(a: &[Vec<Poly>], ring: &Arc<PolyRing>, bound: u32) -> Linearised {
    let cols = a.first().map_or(0, Vec::len);
    let monos = monomials_up_to(ring.nvars(), bound);
    let mut dom = Vec::new();
    for m in &monos {
        for j in 0..cols {
            dom.push((m.clone(), j));
        }
    }
    let mut cod = CoordIndex::new();
    let one = Scalar::one();
    let images = dom
        .iter()
        .map(|(m, j)| {
            let col: Vec<Poly> = a.iter().map(|row| row[*j].mul_monomial(m, &one)).collect();
            poly_vec_to_sparse(&col, &mut cod)
        })
        .collect();
    Linearised { ring: ring.clone(), cols, dom, images, cod }
}

impl Linearised {
    fn to_polys(&self, v: &SparseVec) -> Vec<Poly> {
        let mut out = vec![self.ring.zero(); self.cols];
        for (&i, c) in v {
            let (m, j) = &self.dom[i];
            out[*j] = &out[*j] + &self.ring.monomial(m.clone(), c.clone());
        }
        out
    }

    fn to_sparse(&self, v: &[Poly], index: &HashMap<DomKey, usize>) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                if let Some(&i) = index.get(&(m.clone(), j)) {
                    out.insert(i, c.clone());
                }
            }
        }
        out
    }
}

/// Makes the leading coefficient of the first nonzero entry equal to one.
fn normalise(v: Vec<Poly>) -> Vec<Poly> {
    let Some(first) = v.iter().find(|p| !p.is_zero()) else { return v };
    let f = first.field();
    let inv = f.inv(first.leading().unwrap().1);
    v.iter().map(|p| p.scale(&inv)).collect()
}

/// Solves `A v = 0` or `A v = target` over `ring`, restricted to
/// coefficient polynomials of total degree at most `bound`.
pub fn truncated_solve(
    a: &[Vec<Poly>],
    ring: &Arc<PolyRing>,
    mode: &SolveMode,
    bound: u32,
) -> Result<SolveOutcome> {
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|row| row.len() != cols) {
        return Err(Error::Structure("ragged matrix".into()));
    }
    let mut maxdeg = 0;
    for p in a.iter().flatten() {
        if !super::poly::same_ring(p.ring(), ring) {
            return Err(Error::RingMismatch("matrix entry outside the ring".into()));
        }
        maxdeg = maxdeg.max(p.degree().unwrap_or(0));
    }
    if let SolveMode::Membership(t) = mode {
        if t.len() != a.len() {
            return Err(Error::Structure(format!("target has {} rows, matrix {}", t.len(), a.len())));
        }
        for p in t {
            maxdeg = maxdeg.max(p.degree().unwrap_or(0));
        }
    }
    if bound < maxdeg {
        return Err(Error::BoundTooSmall(format!("bound {bound} below input degree {maxdeg}")));
    }
    let field = ring.field();
    let mut lin = linearise(a, ring, bound);
    match mode {
        SolveMode::Kernel => {
            let basis = kernel(field, &lin.images);
            let index: HashMap<DomKey, usize> =
                lin.dom.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
            let monos = monomials_up_to(ring.nvars(), bound);
            let one = Scalar::one();
            let mut span = Echelon::new(field);
            let mut generators = Vec::new();
            for v in &basis {
                if span.contains(v) {
                    continue;
                }
                let g = normalise(lin.to_polys(v));
                let gdeg = g.iter().filter_map(Poly::degree).max().unwrap_or(0);
                for m in monos.iter().filter(|m| m.degree() + gdeg <= bound) {
                    let shifted: Vec<Poly> = g.iter().map(|p| p.mul_monomial(m, &one)).collect();
                    span.push(&lin.to_sparse(&shifted, &index));
                }
                generators.push(g);
            }
            Ok(SolveOutcome::Kernel { generators, bound })
        }
        SolveMode::Membership(target) => {
            let t = poly_vec_to_sparse(target, &mut lin.cod);
            let mut ech = Echelon::tracking(field);
            for (j, img) in lin.images.iter().enumerate() {
                let _ = ech.insert(img, [(j, Scalar::one())].into_iter().collect());
            }
            let (rem, comb) = ech.reduce(&t);
            if rem.is_empty() {
                Ok(SolveOutcome::Member { witness: lin.to_polys(&comb), bound })
            } else {
                Ok(SolveOutcome::Inconclusive { bound })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, Scalar::from_integer(c.into()))).collect()
    }

    #[test]
    fn echelon_rank_and_reduction() {
        let f = Field::Rationals;
        let mut e = Echelon::new(f);
        assert!(e.push(&sv(&[(0, 1), (2, 1)])));
        assert!(e.push(&sv(&[(1, 1), (2, 1)])));
        assert!(!e.push(&sv(&[(0, 1), (1, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&sv(&[(0, 2), (1, -2)])));
        assert!(!e.contains(&sv(&[(0, 1)])));
    }

    #[test]
    fn kernel_over_f2() {
        let f = Field::Prime(2);
        // images of e0, e1, e2: (1,0), (0,1), (1,1)
        let k = kernel(f, &[sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(0, 1), (1, 1)])]);
        assert_eq!(k, vec![sv(&[(0, 1), (1, 1), (2, 1)])]);
    }

    #[test]
    fn membership_of_x_squared() {
        let r = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        let a = vec![vec![r.parse("x").unwrap()]];
        let out = truncated_solve(&a, &r, &SolveMode::Membership(vec![r.parse("x^2").unwrap()]), 2).unwrap();
        assert_eq!(out, SolveOutcome::Member { witness: vec![r.parse("x").unwrap()], bound: 2 });
        let out = truncated_solve(&a, &r, &SolveMode::Membership(vec![r.parse("y").unwrap()]), 4).unwrap();
        assert_eq!(out, SolveOutcome::Inconclusive { bound: 4 });
    }

    #[test]
    fn bound_below_input_degree_is_an_error() {
        let r = PolyRing::new(Field::Rationals, ["x"]).unwrap();
        let a = vec![vec![r.parse("x^3").unwrap()]];
        assert!(matches!(
            truncated_solve(&a, &r, &SolveMode::Kernel, 2),
            Err(Error::BoundTooSmall(_))
        ));
    }
}
