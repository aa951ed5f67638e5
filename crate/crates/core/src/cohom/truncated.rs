use std::collections::BTreeMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::linsolve::kernel;
use crate::exactalg::{monomials_up_to, CoordIndex, Echelon, Field, Monomial, Scalar, SparseVec};
use crate::quivalg::{AlgebraElement, PathWord, Presentation};

/// Truncation box: word length and coefficient degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub len: usize,
    pub polydeg: u32,
}

impl Bounds {
    pub fn new(len: usize, polydeg: u32) -> Self {
        Bounds { len, polydeg }
    }

    pub fn widen(self, by: usize) -> Self {
        self.plus(Bounds::new(by, by as u32))
    }

    pub fn plus(self, o: Bounds) -> Self {
        Bounds { len: self.len + o.len, polydeg: self.polydeg + o.polydeg }
    }
}

/// Preimages are taken from a box this much wider than the cycles.
pub const SLACK: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Same rank at the bound and at the bound widened by [`SLACK`].
    Stable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub degree: i32,
    pub rank: usize,
    pub generators: Vec<String>,
    pub bounds: Bounds,
    pub status: Status,
    pub rank_at_wider_bound: usize,
}

impl CohomologyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "rank": self.rank,
            "generators": self.generators,
            "bounds": {"len": self.bounds.len, "polydeg": self.bounds.polydeg},
            "status": self.status,
        })
    }
}

pub(crate) fn add_entry(field: Field, v: &mut SparseVec, i: usize, c: &Scalar) {
    let s = match v.get(&i) {
        Some(old) => field.add(old, c),
        None => c.clone(),
    };
    if num_traits::Zero::is_zero(&s) {
        v.remove(&i);
    } else {
        v.insert(i, s);
    }
}

/// `dim_k` of cycles in `domain` modulo boundaries of `pre`, plus one
/// representative per class (as combinations of domain positions).
/// Cycles listed earlier in `domain` are preferred as representatives.
pub(crate) fn box_cohomology<K, P, T>(
    field: Field,
    domain: &[K],
    d_out: impl Fn(&K) -> Vec<(T, Scalar)>,
    pre: &[P],
    d_in: impl Fn(&P) -> Vec<(K, Scalar)>,
) -> (usize, Vec<SparseVec>)
where
    K: Clone + Eq + Hash,
    T: Clone + Eq + Hash,
{
    let mut out_index = CoordIndex::<T>::new();
    let images: Vec<SparseVec> = domain
        .iter()
        .map(|k| {
            let mut v = SparseVec::new();
            for (t, c) in d_out(k) {
                add_entry(field, &mut v, out_index.index(&t), &c);
            }
            v
        })
        .collect();
    let mut cycles = kernel(field, &images);
    cycles.sort_by_key(|v| v.keys().next_back().copied());

    let mut index = CoordIndex::<K>::new();
    for k in domain {
        index.index(k);
    }
    // Boundaries are generated lazily and abandoned as soon as every cycle
    // is known to be one.
    let mut ech = Echelon::new(field);
    let mut pending: Vec<SparseVec> = cycles;
    let mut next_check = pending.len().max(16);
    for (n, p) in pre.iter().enumerate() {
        if pending.is_empty() {
            break;
        }
        let mut v = SparseVec::new();
        for (k, c) in d_in(p) {
            add_entry(field, &mut v, index.index(&k), &c);
        }
        ech.push(&v);
        if n + 1 == next_check {
            pending.retain(|z| !ech.contains(z));
            next_check *= 2;
        }
    }
    let mut gens = Vec::new();
    for z in pending {
        if ech.push(&z) {
            gens.push(z);
        }
    }
    (gens.len(), gens)
}

type Coord = (PathWord, Monomial);

/// Integer weights on arrows and coefficient variables under which every
/// rewrite rule and every arrow differential is homogeneous. The complex
/// then splits into weight blocks that are solved independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub arrows: Vec<Vec<i64>>,
    pub vars: Vec<Vec<i64>>,
}

impl Grading {
    fn weight(&self, w: &PathWord, m: &Monomial) -> Vec<i64> {
        let dim = self.vars.first().or(self.arrows.first()).map_or(0, Vec::len);
        let mut out = vec![0; dim];
        for &a in w.arrows() {
            out.iter_mut().zip(&self.arrows[a]).for_each(|(o, x)| *o += x);
        }
        for (e, v) in m.0.iter().zip(&self.vars) {
            out.iter_mut().zip(v).for_each(|(o, x)| *o += *e as i64 * x);
        }
        out
    }

    /// Fails unless the presentation is homogeneous for these weights.
    pub fn check(&self, pres: &Presentation) -> Result<()> {
        let q = pres.quiver();
        if self.arrows.len() != q.arrows().len() || self.vars.len() != pres.ring().nvars() {
            return Err(Error::Structure("grading has the wrong number of weights".into()));
        }
        let nv = pres.ring().nvars();
        let homogeneous = |lhs: Vec<i64>, e: &AlgebraElement| {
            e.terms().all(|(w, p)| p.terms().all(|(m, _)| self.weight(w, m) == lhs))
        };
        for r in pres.rules() {
            let lhs = PathWord::from_parts(vec![r.lhs.0, r.lhs.1], 0, 0);
            if !homogeneous(self.weight(&lhs, &Monomial::one(nv)), &r.rhs) {
                return Err(Error::Verification(format!("rule on `{}` is not homogeneous", q.fmt_word(&lhs))));
            }
        }
        for a in 0..q.arrows().len() {
            let w = PathWord::from_parts(vec![a], 0, 0);
            if !homogeneous(self.weight(&w, &Monomial::one(nv)), &pres.diff_of_arrow(a)) {
                return Err(Error::Verification(format!("d({}) is not homogeneous", q.arrows()[a].name)));
            }
        }
        Ok(())
    }
}

fn words_in_box(pres: &Presentation, source: &str, target: &str, degree: i32, b: Bounds) -> Result<Vec<Coord>> {
    let words = pres.graded_basis(source, target, degree, b.len)?;
    let monos = monomials_up_to(pres.ring().nvars(), b.polydeg);
    let mut out = Vec::new();
    for m in &monos {
        for w in &words {
            out.push((w.clone(), m.clone()));
        }
    }
    Ok(out)
}

fn apply_d(pres: &Presentation, (w, m): &Coord) -> Vec<(Coord, Scalar)> {
    let dw = pres.differential(&AlgebraElement::word(pres.ring(), w.clone()));
    let mut out = Vec::new();
    for (w2, p) in dw.terms() {
        for (m2, c) in p.terms() {
            out.push(((w2.clone(), m2.mul(m)), c.clone()));
        }
    }
    out
}

fn coords_to_element(pres: &Presentation, domain: &[Coord], v: &SparseVec) -> AlgebraElement {
    let mut e = AlgebraElement::zero(pres.ring());
    for (&i, c) in v {
        let (w, m) = &domain[i];
        e.add_term(w.clone(), pres.ring().monomial(m.clone(), c.clone()));
    }
    e
}

fn rank_at(
    pres: &Presentation,
    (source, target): (&str, &str),
    m: i32,
    b: Bounds,
    slack: Bounds,
    grading: Option<&Grading>,
) -> Result<(usize, Vec<String>)> {
    let domain = words_in_box(pres, source, target, -m, b)?;
    let pre = words_in_box(pres, source, target, -m - 1, b.plus(slack))?;
    let mut blocks: BTreeMap<Vec<i64>, (Vec<Coord>, Vec<Coord>)> = BTreeMap::new();
    let key = |(w, mono): &Coord| grading.map_or(Vec::new(), |g| g.weight(w, mono));
    for c in domain {
        blocks.entry(key(&c)).or_default().0.push(c);
    }
    for c in pre {
        if let Some(bl) = blocks.get_mut(&key(&c)) {
            bl.1.push(c);
        }
    }
    let mut rank = 0;
    let mut gens = Vec::new();
    for (dom, pre) in blocks.values() {
        let (r, g) = box_cohomology(pres.field(), dom, |k| apply_d(pres, k), pre, |k| apply_d(pres, k));
        rank += r;
        gens.extend(g.iter().map(|g| pres.display(&coords_to_element(pres, dom, g))));
    }
    Ok((rank, gens))
}

/// `H^{-m}(e_target · A · e_source)` over `k`, restricted to words of
/// length `<= bounds.len` with coefficients of degree `<= bounds.polydeg`.
/// Boundaries come from a box [`SLACK`] wider; the rank is recomputed at
/// bounds widened by [`SLACK`] to label the result stable or not.
pub fn truncated_cohomology(
    pres: &Presentation,
    source: &str,
    target: &str,
    m: i32,
    bounds: Bounds,
) -> Result<CohomologyReport> {
    truncated_cohomology_with(pres, source, target, m, bounds, Bounds::new(SLACK, SLACK as u32), None)
}

/// As [`truncated_cohomology`], with an explicit slack for both the
/// boundary box and the stability check, and an optional grading to split
/// the computation. Algebras whose cycles are built from long paths need a
/// length slack of at least one such path.
pub fn truncated_cohomology_with(
    pres: &Presentation,
    source: &str,
    target: &str,
    m: i32,
    bounds: Bounds,
    slack: Bounds,
    grading: Option<&Grading>,
) -> Result<CohomologyReport> {
    if !pres.has_differential() {
        return Err(Error::Unsupported("presentation has no differential".into()));
    }
    if let Some(g) = grading {
        g.check(pres)?;
    }
    let (rank, generators) = rank_at(pres, (source, target), m, bounds, slack, grading)?;
    let (wider, _) = rank_at(pres, (source, target), m, bounds.plus(slack), slack, grading)?;
    Ok(CohomologyReport {
        degree: -m,
        rank,
        generators,
        bounds,
        status: if rank == wider { Status::Stable } else { Status::Inconclusive },
        rank_at_wider_bound: wider,
    })
}
