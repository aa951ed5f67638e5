use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{structure, Error, Result};
use crate::exactalg::{Field, Poly, PolyRing};
use crate::quivalg::{AlgebraElement, PathWord, Presentation};

/// Linear combination of basis morphisms.
pub type Comb = BTreeMap<usize, Poly>;

pub(crate) fn comb_add(acc: &mut Comb, k: usize, c: Poly) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(old) => {
            let s = &*old + &c;
            if s.is_zero() {
                acc.remove(&k);
            } else {
                *old = s;
            }
        }
        None => {
            acc.insert(k, c);
        }
    }
}

pub(crate) fn comb_axpy(acc: &mut Comb, c: &Poly, v: &Comb) {
    for (&k, x) in v {
        comb_add(acc, k, c * x);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i32,
}

/// Finite A-infinity product table over a characteristic-2 coefficient
/// ring, so that all signs can be dropped. Arguments are written in
/// composition order: `mu(x_k, ..., x_1)` with `x_1` applied first.
#[derive(Clone, Debug)]
pub struct AInfTable {
    ring: Arc<PolyRing>,
    objects: Vec<String>,
    mors: Vec<Morphism>,
    units: Vec<Option<usize>>,
    mu: HashMap<Vec<usize>, Comb>,
    truncated: HashSet<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfViolation {
    pub args: Vec<String>,
    pub residue: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfReport {
    pub max_arity: usize,
    pub tuples_checked: usize,
    pub tuples_skipped: usize,
    pub violations: Vec<AInfViolation>,
}

impl AInfReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const MAX_MU_ARITY: usize = 3;

impl AInfTable {
    pub fn new(ring: &Arc<PolyRing>) -> Result<Self> {
        if ring.field() != Field::Prime(2) {
            return Err(Error::InvalidField(format!(
                "product tables are sign-free and need characteristic 2, not {}",
                ring.field()
            )));
        }
        Ok(AInfTable {
            ring: ring.clone(),
            objects: Vec::new(),
            mors: Vec::new(),
            units: Vec::new(),
            mu: HashMap::new(),
            truncated: HashSet::new(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Adds an object together with its strict unit `e<name>`.
    pub fn add_object(&mut self, name: &str) -> Result<usize> {
        if self.objects.iter().any(|o| o == name) {
            return Err(structure(format!("duplicate object `{name}`")));
        }
        self.objects.push(name.to_string());
        let o = self.objects.len() - 1;
        self.units.push(None);
        let u = self.add_morphism(&format!("e{name}"), name, name, 0)?;
        self.units[o] = Some(u);
        Ok(o)
    }

    pub fn add_morphism(&mut self, name: &str, src: &str, tgt: &str, deg: i32) -> Result<usize> {
        if self.morphism(name).is_some() {
            return Err(structure(format!("duplicate morphism `{name}`")));
        }
        let src = self.object(src).ok_or_else(|| structure(format!("unknown object `{src}`")))?;
        let tgt = self.object(tgt).ok_or_else(|| structure(format!("unknown object `{tgt}`")))?;
        self.mors.push(Morphism { name: name.to_string(), src, tgt, deg });
        Ok(self.mors.len() - 1)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.mors
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism(&self, name: &str) -> Option<usize> {
        self.mors.iter().position(|m| m.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.morphism(name).ok_or_else(|| structure(format!("unknown morphism `{name}`")))
    }

    pub fn unit(&self, obj: usize) -> Option<usize> {
        self.units[obj]
    }

    fn is_unit(&self, m: usize) -> bool {
        self.units[self.mors[m].src] == Some(m)
    }

    pub fn composable(&self, args: &[usize]) -> bool {
        args.windows(2).all(|w| self.mors[w[0]].src == self.mors[w[1]].tgt)
    }

    /// Sets `mu(args)`. Checks composability, endpoints and the degree
    /// `sum(deg) + 2 - k`.
    pub fn set_mu(&mut self, args: &[&str], out: &[(&str, Poly)]) -> Result<()> {
        let ids = args.iter().map(|a| self.require(a)).collect::<Result<Vec<_>>>()?;
        let mut comb = Comb::new();
        for (name, c) in out {
            comb_add(&mut comb, self.require(name)?, c.clone());
        }
        self.set_mu_ids(ids, comb)
    }

    pub fn set_mu_ids(&mut self, ids: Vec<usize>, comb: Comb) -> Result<()> {
        let k = ids.len();
        if k == 0 || k > MAX_MU_ARITY {
            return Err(structure(format!("mu of arity {k} not supported")));
        }
        if !self.composable(&ids) {
            return Err(structure(format!("mu({}) is not composable", self.names(&ids).join(","))));
        }
        let deg: i32 = ids.iter().map(|&m| self.mors[m].deg).sum::<i32>() + 2 - k as i32;
        let (src, tgt) = (self.mors[*ids.last().unwrap()].src, self.mors[ids[0]].tgt);
        for &o in comb.keys() {
            let m = &self.mors[o];
            if m.src != src || m.tgt != tgt || m.deg != deg {
                return Err(structure(format!(
                    "mu({}) cannot contain `{}`: expected degree {deg}",
                    self.names(&ids).join(","),
                    m.name
                )));
            }
        }
        for (&o, c) in &comb {
            if !crate::exactalg::poly_same_ring(c.ring(), &self.ring) {
                return Err(Error::RingMismatch(format!("coefficient of `{}`", self.mors[o].name)));
            }
        }
        if comb.is_empty() {
            self.mu.remove(&ids);
        } else {
            self.mu.insert(ids, comb);
        }
        Ok(())
    }

    pub fn mark_truncated(&mut self, ids: Vec<usize>) {
        self.truncated.insert(ids);
    }

    pub fn names(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&m| self.mors[m].name.clone()).collect()
    }

    /// `mu_k(args)`; `None` when the product leaves a truncated basis.
    /// Units are strict: `mu_2(e, x) = mu_2(x, e) = x` and every other
    /// product involving a unit vanishes.
    pub fn mu(&self, args: &[usize]) -> Option<Comb> {
        if args.is_empty() || args.len() > MAX_MU_ARITY || !self.composable(args) {
            return Some(Comb::new());
        }
        let one = self.ring.one();
        if args.len() == 2 {
            if self.is_unit(args[0]) {
                return Some([(args[1], one)].into_iter().collect());
            }
            if self.is_unit(args[1]) {
                return Some([(args[0], one)].into_iter().collect());
            }
        } else if args.iter().any(|&m| self.is_unit(m)) {
            return Some(Comb::new());
        }
        if self.truncated.contains(args) {
            return None;
        }
        Some(self.mu.get(args).cloned().unwrap_or_default())
    }

    /// Multilinear extension of `mu` to combinations.
    pub fn mu_comb(&self, args: &[Comb]) -> Option<Comb> {
        let mut out = Comb::new();
        let mut stack: Vec<(Vec<usize>, Poly)> = vec![(Vec::new(), self.ring.one())];
        for a in args {
            let mut next = Vec::new();
            for (ids, c) in &stack {
                for (&m, x) in a {
                    let mut ids = ids.clone();
                    ids.push(m);
                    next.push((ids, c * x));
                }
            }
            stack = next;
        }
        for (ids, c) in stack {
            comb_axpy(&mut out, &c, &self.mu(&ids)?);
        }
        Some(out)
    }

    pub fn fmt_comb(&self, c: &Comb) -> String {
        if c.is_empty() {
            return "0".into();
        }
        c.iter()
            .map(|(&m, x)| {
                let name = &self.mors[m].name;
                if x.is_one() {
                    name.clone()
                } else {
                    format!("({x})*{name}")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    fn composable_tuples(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.mors.len()).map(|m| vec![m]).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for t in &out {
                for m in 0..self.mors.len() {
                    if self.mors[m].src == self.mors[t[0]].tgt {
                        let mut v = vec![m];
                        v.extend_from_slice(t);
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Checks the sign-free A-infinity relations
    /// `sum mu(x_N..x_{s+j+1}, mu(x_{s+j}..x_{s+1}), x_s..x_1) = 0` on every
    /// composable tuple of basis morphisms of length at most `max_arity`.
    pub fn ainf_check(&self, max_arity: usize) -> Result<AInfReport> {
        if max_arity > MAX_MU_ARITY + 2 {
            return Err(structure(format!("A-infinity check supports arity <= {}", MAX_MU_ARITY + 2)));
        }
        let mut report = AInfReport { max_arity, tuples_checked: 0, tuples_skipped: 0, violations: Vec::new() };
        for n in 1..=max_arity {
            'tuples: for t in self.composable_tuples(n) {
                let mut acc = Comb::new();
                for j in 1..=n.min(MAX_MU_ARITY) {
                    if n - j + 1 > MAX_MU_ARITY {
                        continue;
                    }
                    for s in 0..=n - j {
                        let Some(inner) = self.mu(&t[s..s + j]) else {
                            report.tuples_skipped += 1;
                            continue 'tuples;
                        };
                        for (k, c) in inner {
                            let mut outer = t[..s].to_vec();
                            outer.push(k);
                            outer.extend_from_slice(&t[s + j..]);
                            let Some(o) = self.mu(&outer) else {
                                report.tuples_skipped += 1;
                                continue 'tuples;
                            };
                            comb_axpy(&mut acc, &c, &o);
                        }
                    }
                }
                report.tuples_checked += 1;
                if !acc.is_empty() {
                    report.violations.push(AInfViolation { args: self.names(&t), residue: self.fmt_comb(&acc) });
                }
            }
        }
        Ok(report)
    }

    /// Degree-0 algebra `pres` (over a characteristic-2 ring) as a table
    /// with `mu_2` only, on irreducible words of length at most
    /// `length_bound`. Products leaving that basis are marked truncated and
    /// the tuples needing them are skipped by [`AInfTable::ainf_check`].
    pub fn from_presentation(pres: &Presentation, length_bound: usize) -> Result<Self> {
        if pres.has_differential() || pres.quiver().arrows().iter().any(|a| a.deg != 0) {
            return Err(Error::Unsupported("only degree-0 algebras without differential".into()));
        }
        let mut t = AInfTable::new(pres.ring())?;
        for v in pres.quiver().vertices() {
            t.add_object(v)?;
        }
        let words: Vec<PathWord> = pres.irreducible_words(length_bound).into_iter().filter(|w| !w.is_lazy()).collect();
        let mut index = HashMap::new();
        for w in &words {
            let q = pres.quiver();
            let id = t.add_morphism(&q.fmt_word(w), &q.vertices()[w.src()], &q.vertices()[w.tgt()], 0)?;
            index.insert(w.clone(), id);
        }
        let unit_of = |w: &PathWord| t.units[w.src()].unwrap();
        let id_of = |w: &PathWord| if w.is_lazy() { Some(unit_of(w)) } else { index.get(w).copied() };
        let mut products = Vec::new();
        for x in &words {
            for y in &words {
                if x.src() != y.tgt() {
                    continue;
                }
                let prod = pres.multiply(
                    &AlgebraElement::word(pres.ring(), x.clone()),
                    &AlgebraElement::word(pres.ring(), y.clone()),
                );
                let mut comb = Comb::new();
                let mut inside = true;
                for (w, c) in prod.terms() {
                    match id_of(w) {
                        Some(id) => comb_add(&mut comb, id, c.clone()),
                        None => inside = false,
                    }
                }
                products.push((vec![index[x], index[y]], if inside { Some(comb) } else { None }));
            }
        }
        for (ids, comb) in products {
            match comb {
                Some(c) => t.set_mu_ids(ids, c)?,
                None => t.mark_truncated(ids),
            }
        }
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let mors: Vec<Value> = self
            .mors
            .iter()
            .map(|m| json!({"name": m.name, "src": self.objects[m.src], "tgt": self.objects[m.tgt], "deg": m.deg}))
            .collect();
        let mut entries: Vec<(Vec<String>, String)> =
            self.mu.iter().map(|(k, v)| (self.names(k), self.fmt_comb(v))).collect();
        entries.sort();
        let mu: Vec<Value> = entries
            .into_iter()
            .map(|(args, out)| json!({"arity": args.len(), "args": args, "out": out}))
            .collect();
        json!({"objects": self.objects, "morphisms": mors, "mu": mu})
    }
}
