use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::table::{comb_add, comb_axpy, AInfTable, Comb};
use crate::error::{structure, Error, Result};
use crate::exactalg::Poly;

/// One-sided twisted complex `(⊕ X_i[s_i], δ)`. `delta` is keyed by
/// `(from, to)` component indices with `from < to`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwComplex {
    pub terms: Vec<(usize, i32)>,
    pub delta: BTreeMap<(usize, usize), Comb>,
}

/// Matrix of combinations, keyed by `(source component, target component)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwMorphism {
    pub source: TwComplex,
    pub target: TwComplex,
    pub degree: i32,
    pub entries: BTreeMap<(usize, usize), Comb>,
}

/// Degree of a basis morphism `f: X[s] -> Y[t]` inside Tw.
fn tw_degree(t: &AInfTable, f: usize, s: i32, u: i32) -> i32 {
    t.morphisms()[f].deg + s - u
}

impl TwComplex {
    pub fn object(t: &AInfTable, name: &str, shift: i32) -> Result<TwComplex> {
        let o = t.object(name).ok_or_else(|| structure(format!("unknown object `{name}`")))?;
        Ok(TwComplex { terms: vec![(o, shift)], delta: BTreeMap::new() })
    }

    /// Builds and validates a complex: δ strictly lower-triangular, of
    /// Tw-degree 1, with matching endpoints, and satisfying Maurer–Cartan.
    pub fn new(t: &AInfTable, terms: &[(&str, i32)], delta: &[(usize, usize, &str)]) -> Result<TwComplex> {
        let mut c = TwComplex { terms: Vec::new(), delta: BTreeMap::new() };
        for (name, s) in terms {
            let o = t.object(name).ok_or_else(|| structure(format!("unknown object `{name}`")))?;
            c.terms.push((o, *s));
        }
        let one = t.ring().one();
        for &(i, j, f) in delta {
            if i >= j || j >= c.terms.len() {
                return Err(structure(format!("δ entry {i}->{j} is not strictly lower-triangular")));
            }
            comb_add(c.delta.entry((i, j)).or_default(), t.require(f)?, one.clone());
        }
        c.delta.retain(|_, v| !v.is_empty());
        c.validate(t)?;
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn validate(&self, t: &AInfTable) -> Result<()> {
        for (&(i, j), comb) in &self.delta {
            for &f in comb.keys() {
                let m = &t.morphisms()[f];
                if m.src != self.terms[i].0 || m.tgt != self.terms[j].0 {
                    return Err(structure(format!("δ entry `{}` has the wrong endpoints", m.name)));
                }
                if tw_degree(t, f, self.terms[i].1, self.terms[j].1) != 1 {
                    return Err(structure(format!("δ entry `{}` does not have degree 1", m.name)));
                }
            }
        }
        let mc = self.maurer_cartan(t)?;
        if let Some(((i, j), c)) = mc.iter().next() {
            return Err(Error::Verification(format!("Maurer–Cartan fails at {i}->{j}: {}", t.fmt_comb(c))));
        }
        Ok(())
    }

    /// `Σ_k μ_k(δ, …, δ)`, entrywise.
    pub fn maurer_cartan(&self, t: &AInfTable) -> Result<BTreeMap<(usize, usize), Comb>> {
        let mut out = BTreeMap::new();
        let mut walker = Walker { table: t, out: &mut out, truncated: false, routes: None };
        for start in 0..self.len() {
            walker.delta_only(self, start, start, &mut Vec::new(), t.ring().one());
        }
        if walker.truncated {
            return Err(Error::BoundTooSmall("Maurer–Cartan product leaves the table basis".into()));
        }
        out.retain(|_, v: &mut Comb| !v.is_empty());
        Ok(out)
    }

    pub fn display(&self, t: &AInfTable) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|&(o, s)| if s == 0 { t.objects()[o].clone() } else { format!("{}[{s}]", t.objects()[o]) })
            .collect();
        let delta: Vec<String> =
            self.delta.iter().map(|(&(i, j), c)| format!("{i}->{j}:{}", t.fmt_comb(c))).collect();
        format!("({} | {})", terms.join(" ⊕ "), delta.join(", "))
    }
}

impl TwMorphism {
    pub fn new(
        t: &AInfTable,
        source: &TwComplex,
        target: &TwComplex,
        degree: i32,
        entries: &[(usize, usize, &str)],
    ) -> Result<TwMorphism> {
        let one = t.ring().one();
        let mut m = BTreeMap::new();
        for &(i, j, f) in entries {
            comb_add(m.entry((i, j)).or_default(), t.require(f)?, one.clone());
        }
        Self::from_entries(t, source, target, degree, m)
    }

    pub fn from_entries(
        t: &AInfTable,
        source: &TwComplex,
        target: &TwComplex,
        degree: i32,
        mut entries: BTreeMap<(usize, usize), Comb>,
    ) -> Result<TwMorphism> {
        entries.retain(|_, v| !v.is_empty());
        for (&(i, j), comb) in &entries {
            if i >= source.len() || j >= target.len() {
                return Err(structure(format!("entry {i}->{j} out of range")));
            }
            let (so, ss) = source.terms[i];
            let (to, ts) = target.terms[j];
            for &f in comb.keys() {
                let m = &t.morphisms()[f];
                if m.src != so || m.tgt != to {
                    return Err(structure(format!("entry `{}` has the wrong endpoints", m.name)));
                }
                let d = tw_degree(t, f, ss, ts);
                if d != degree {
                    return Err(structure(format!("entry `{}` has degree {d}, expected {degree}", m.name)));
                }
            }
        }
        Ok(TwMorphism { source: source.clone(), target: target.clone(), degree, entries })
    }

    pub fn identity(t: &AInfTable, c: &TwComplex) -> Result<TwMorphism> {
        let mut e = BTreeMap::new();
        for (i, &(o, _)) in c.terms.iter().enumerate() {
            let u = t.unit(o).ok_or_else(|| structure("object without unit"))?;
            e.insert((i, i), [(u, t.ring().one())].into_iter().collect());
        }
        Ok(TwMorphism { source: c.clone(), target: c.clone(), degree: 0, entries: e })
    }

    pub fn zero(source: &TwComplex, target: &TwComplex, degree: i32) -> TwMorphism {
        TwMorphism { source: source.clone(), target: target.clone(), degree, entries: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &TwMorphism) -> Result<TwMorphism> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(structure("adding morphisms of different types"));
        }
        let mut e = self.entries.clone();
        for (k, v) in &other.entries {
            let acc = e.entry(*k).or_default();
            for (&m, c) in v {
                comb_add(acc, m, c.clone());
            }
        }
        e.retain(|_, v| !v.is_empty());
        Ok(TwMorphism { entries: e, ..self.clone() })
    }

    pub fn to_json(&self, t: &AInfTable) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(i, j), c)| {
                json!({
                    "from": format!("{}:{}", i, t.objects()[self.source.terms[i].0]),
                    "to": format!("{}:{}", j, t.objects()[self.target.terms[j].0]),
                    "value": t.fmt_comb(c),
                })
            })
            .collect();
        json!({"degree": self.degree, "entries": entries})
    }
}

struct Walker<'a> {
    table: &'a AInfTable,
    out: &'a mut BTreeMap<(usize, usize), Comb>,
    truncated: bool,
    routes: Option<Vec<Route>>,
}

/// A path through a diagram of twisted morphisms: source component,
/// target component and the table morphisms met, in written order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub from: usize,
    pub to: usize,
    pub args: Vec<usize>,
}

impl Walker<'_> {
    fn emit(&mut self, start: usize, end: usize, args: &[usize], coef: &Poly) {
        // args were collected in application order; mu wants written order
        let written: Vec<usize> = args.iter().rev().copied().collect();
        if let Some(r) = &mut self.routes {
            r.push(Route { from: start, to: end, args: written.clone() });
        }
        match self.table.mu(&written) {
            Some(v) => comb_axpy(self.out.entry((start, end)).or_default(), coef, &v),
            None => self.truncated = true,
        }
    }

    fn delta_only(&mut self, c: &TwComplex, start: usize, at: usize, args: &mut Vec<usize>, coef: Poly) {
        for (&(i, j), comb) in c.delta.range((at, 0)..(at + 1, 0)) {
            debug_assert_eq!(i, at);
            for (&f, x) in comb {
                args.push(f);
                let c2 = &coef * x;
                self.emit(start, j, args, &c2);
                self.delta_only(c, start, j, args, c2);
                args.pop();
            }
        }
    }

    /// Paths through `fs` (application order), inserting δ's of every
    /// complex on the way.
    fn chain(
        &mut self,
        cs: &[&TwComplex],
        fs: &[&TwMorphism],
        stage: usize,
        start: usize,
        at: usize,
        args: &mut Vec<usize>,
        coef: Poly,
    ) {
        if stage == fs.len() && !args.is_empty() {
            self.emit(start, at, args, &coef);
        }
        for (&(i, j), comb) in cs[stage].delta.range((at, 0)..(at + 1, 0)) {
            debug_assert_eq!(i, at);
            for (&f, x) in comb {
                args.push(f);
                self.chain(cs, fs, stage, start, j, args, &coef * x);
                args.pop();
            }
        }
        if stage < fs.len() {
            for (&(i, j), comb) in &fs[stage].entries {
                if i != at {
                    continue;
                }
                for (&f, x) in comb {
                    args.push(f);
                    self.chain(cs, fs, stage + 1, start, j, args, &coef * x);
                    args.pop();
                }
            }
        }
    }
}

/// `μ_k^Tw(f_k, …, f_1)`; `fs` is in written order, `f_1` applied first.
/// Every path from a source component to a target component contributes
/// `μ` of the table morphisms met on the way, δ's included.
pub fn mu_tw(t: &AInfTable, fs: &[&TwMorphism]) -> Result<TwMorphism> {
    walk(t, fs, false).map(|(m, _)| m)
}

/// The routes contributing to `mu_tw(fs)`.
pub fn tw_routes(t: &AInfTable, fs: &[&TwMorphism]) -> Result<Vec<Route>> {
    walk(t, fs, true).map(|(_, r)| r)
}

fn walk(t: &AInfTable, fs: &[&TwMorphism], collect: bool) -> Result<(TwMorphism, Vec<Route>)> {
    if fs.is_empty() {
        return Err(structure("mu_tw needs at least one morphism"));
    }
    let applied: Vec<&TwMorphism> = fs.iter().rev().copied().collect();
    for w in applied.windows(2) {
        if w[0].target != w[1].source {
            return Err(structure("mu_tw: morphisms are not composable"));
        }
    }
    let mut cs: Vec<&TwComplex> = vec![&applied[0].source];
    cs.extend(applied.iter().map(|f| &f.target));
    let degree = fs.iter().map(|f| f.degree).sum::<i32>() + 2 - fs.len() as i32;
    let mut out = BTreeMap::new();
    let mut w = Walker { table: t, out: &mut out, truncated: false, routes: collect.then(Vec::new) };
    for start in 0..cs[0].len() {
        w.chain(&cs, &applied, 0, start, start, &mut Vec::new(), t.ring().one());
    }
    if w.truncated {
        return Err(Error::BoundTooSmall("a product leaves the table basis".into()));
    }
    let routes = w.routes.take().unwrap_or_default();
    Ok((TwMorphism::from_entries(t, cs[0], cs[cs.len() - 1], degree, out)?, routes))
}
