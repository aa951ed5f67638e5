use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use super::element::AlgebraElement;
use super::quiver::{PathWord, Quiver};
use crate::error::{structure, Error, Result};
use crate::exactalg::{Field, Poly, PolyRing, RingMap};

/// Rewrite rule `x*y -> rhs` on a two-arrow word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: (usize, usize),
    pub rhs: AlgebraElement,
}

/// Order in which redexes are contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub word: PathWord,
    pub left: AlgebraElement,
    pub right: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub overlaps_checked: usize,
    pub unresolved: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Graded quiver with polynomial coefficients, length-reducing rewrite
/// rules and a differential on arrows.
#[derive(Clone, Debug)]
pub struct Presentation {
    quiver: Quiver,
    ring: Arc<PolyRing>,
    rules: Vec<RewriteRule>,
    rule_index: HashMap<(usize, usize), usize>,
    diff: BTreeMap<usize, AlgebraElement>,
    confluence: ConfluenceReport,
}

impl Presentation {
    /// Validates termination (every right-hand word has length at most
    /// one), endpoint and degree bookkeeping, `d^2 = 0` on arrows and
    /// compatibility of `d` with the rules, then runs the critical-pair
    /// check. Non-confluent rule sets are accepted but flagged.
    pub fn new(
        quiver: Quiver,
        ring: Arc<PolyRing>,
        rules: Vec<RewriteRule>,
        diff: BTreeMap<usize, AlgebraElement>,
    ) -> Result<Self> {
        let mut rule_index = HashMap::new();
        for (k, r) in rules.iter().enumerate() {
            let lhs = PathWord::from_arrows(&quiver, vec![r.lhs.0, r.lhs.1])?;
            let lhs_deg = quiver.word_degree(&lhs);
            let shown = quiver.fmt_word(&lhs);
            if rule_index.insert(r.lhs, k).is_some() {
                return Err(structure(format!("two rules rewrite `{shown}`")));
            }
            for (w, c) in r.rhs.terms() {
                if w.len() >= 2 {
                    return Err(structure(format!(
                        "rule for `{shown}` is not length-reducing; rewriting may not terminate"
                    )));
                }
                if (w.src(), w.tgt()) != (lhs.src(), lhs.tgt()) || quiver.word_degree(w) != lhs_deg {
                    return Err(structure(format!("rule for `{shown}` changes endpoints or degree")));
                }
                if !crate::exactalg::poly_same_ring(c.ring(), &ring) {
                    return Err(Error::RingMismatch(format!("rule for `{shown}`")));
                }
            }
        }
        for (&a, da) in &diff {
            let arrow = quiver.arrow(a);
            for (w, _) in da.terms() {
                if (w.src(), w.tgt()) != (arrow.src, arrow.tgt) || quiver.word_degree(w) != arrow.deg + 1 {
                    return Err(structure(format!(
                        "d({}) must have the endpoints of the arrow and degree {}",
                        arrow.name,
                        arrow.deg + 1
                    )));
                }
            }
        }
        let mut p = Presentation {
            quiver,
            ring,
            rules,
            rule_index,
            diff,
            confluence: ConfluenceReport { overlaps_checked: 0, unresolved: Vec::new() },
        };
        p.diff = p
            .diff
            .iter()
            .map(|(&a, e)| (a, p.normal_form(e)))
            .filter(|(_, e)| !e.is_zero())
            .collect();
        p.confluence = p.compute_confluence();
        for a in 0..p.quiver.arrows().len() {
            let dd = p.differential(&p.diff_of_arrow(a));
            if !dd.is_zero() {
                return Err(structure(format!(
                    "d^2({}) = {}",
                    p.quiver.arrow(a).name,
                    p.display(&dd)
                )));
            }
        }
        for r in &p.rules {
            let lhs = PathWord::from_arrows(&p.quiver, vec![r.lhs.0, r.lhs.1])?;
            let dl = p.d_raw_word(&lhs);
            let dr = p.differential(&r.rhs);
            if dl != dr {
                return Err(structure(format!(
                    "d does not respect the rule for `{}`",
                    p.quiver.fmt_word(&lhs)
                )));
            }
        }
        Ok(p)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule(&self, x: usize, y: usize) -> Option<&RewriteRule> {
        self.rule_index.get(&(x, y)).map(|&k| &self.rules[k])
    }

    pub fn has_differential(&self) -> bool {
        !self.diff.is_empty()
    }

    pub fn diff_of_arrow(&self, a: usize) -> AlgebraElement {
        self.diff.get(&a).cloned().unwrap_or_else(|| AlgebraElement::zero(&self.ring))
    }

    pub fn display(&self, e: &AlgebraElement) -> String {
        e.display(&self.quiver)
    }

    // ---- construction helpers -------------------------------------------

    pub fn word(&self, names: &[&str]) -> Result<PathWord> {
        self.quiver.word(names)
    }

    /// Normal form of the word spelled by `names`.
    pub fn el(&self, names: &[&str]) -> Result<AlgebraElement> {
        let w = self.word(names)?;
        Ok(self.normal_form(&AlgebraElement::word(&self.ring, w)))
    }

    pub fn idempotent(&self, label: &str) -> Result<AlgebraElement> {
        Ok(AlgebraElement::word(&self.ring, self.quiver.lazy(label)?))
    }

    /// The identity: sum of all lazy paths.
    pub fn unit(&self) -> AlgebraElement {
        let mut e = AlgebraElement::zero(&self.ring);
        for v in 0..self.quiver.vertices().len() {
            e.add_term(PathWord::lazy(v), self.ring.one());
        }
        e
    }

    pub fn scalar(&self, c: &Poly) -> AlgebraElement {
        self.unit().scale(c)
    }

    // ---- rewriting ------------------------------------------------------

    fn redexes(&self, w: &PathWord) -> Vec<usize> {
        w.arrows()
            .windows(2)
            .enumerate()
            .filter(|(_, p)| self.rule_index.contains_key(&(p[0], p[1])))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_irreducible(&self, w: &PathWord) -> bool {
        w.arrows()
            .windows(2)
            .all(|p| !self.rule_index.contains_key(&(p[0], p[1])))
    }

    fn rewrite_at(&self, w: &PathWord, pos: usize) -> Vec<(PathWord, Poly)> {
        let arrows = w.arrows();
        let rule = &self.rules[self.rule_index[&(arrows[pos], arrows[pos + 1])]];
        rule.rhs
            .terms()
            .map(|(rw, rc)| {
                let mut v = arrows[..pos].to_vec();
                v.extend_from_slice(rw.arrows());
                v.extend_from_slice(&arrows[pos + 2..]);
                (PathWord::from_parts(v, w.src(), w.tgt()), rc.clone())
            })
            .collect()
    }

    fn reduce_into(&self, w: PathWord, c: Poly, out: &mut AlgebraElement, strategy: Strategy, rng: &mut StdRng) {
        let mut stack = vec![(w, c)];
        while let Some((w, c)) = stack.pop() {
            let red = self.redexes(&w);
            if red.is_empty() {
                out.add_term(w, c);
                continue;
            }
            let pos = match strategy {
                Strategy::Leftmost => red[0],
                Strategy::Rightmost => red[red.len() - 1],
                Strategy::Random(_) => red[rng.gen_range(0..red.len())],
            };
            for (nw, nc) in self.rewrite_at(&w, pos) {
                stack.push((nw, &c * &nc));
            }
        }
    }

    pub fn normal_form(&self, e: &AlgebraElement) -> AlgebraElement {
        self.normal_form_with(e, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, e: &AlgebraElement, strategy: Strategy) -> AlgebraElement {
        let seed = match strategy {
            Strategy::Random(s) => s,
            _ => 0,
        };
        let mut rng = StdRng::seed_from_u64(seed);
        let mut out = AlgebraElement::zero(&self.ring);
        for (w, c) in e.terms() {
            self.reduce_into(w.clone(), c.clone(), &mut out, strategy, &mut rng);
        }
        out
    }

    /// Diamond-lemma check over all overlaps `x*y*z` of left-hand sides
    /// `x*y` and `y*z`.
    pub fn check_confluence(&self) -> &ConfluenceReport {
        &self.confluence
    }

    fn compute_confluence(&self) -> ConfluenceReport {
        let mut checked = 0;
        let mut unresolved = Vec::new();
        let mut rng = StdRng::seed_from_u64(0);
        for r1 in &self.rules {
            for r2 in &self.rules {
                if r1.lhs.1 != r2.lhs.0 {
                    continue;
                }
                let (x, y, z) = (r1.lhs.0, r1.lhs.1, r2.lhs.1);
                let Ok(word) = PathWord::from_arrows(&self.quiver, vec![x, y, z]) else { continue };
                checked += 1;
                let mut left = AlgebraElement::zero(&self.ring);
                for (w, c) in self.rewrite_at(&word, 0) {
                    self.reduce_into(w, c, &mut left, Strategy::Leftmost, &mut rng);
                }
                let mut right = AlgebraElement::zero(&self.ring);
                for (w, c) in self.rewrite_at(&word, 1) {
                    self.reduce_into(w, c, &mut right, Strategy::Leftmost, &mut rng);
                }
                if left != right {
                    unresolved.push(CriticalPair { word, left, right });
                }
            }
        }
        ConfluenceReport { overlaps_checked: checked, unresolved }
    }

    // ---- products and differential -------------------------------------

    /// Concatenate-or-die product, right-to-left composition.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ring);
        let mut rng = StdRng::seed_from_u64(0);
        for (w1, c1) in x.terms() {
            for (w2, c2) in y.terms() {
                if let Some(w) = w1.compose(w2) {
                    self.reduce_into(w, c1 * c2, &mut out, Strategy::Leftmost, &mut rng);
                }
            }
        }
        out
    }

    pub fn degree(&self, w: &PathWord) -> i32 {
        self.quiver.word_degree(w)
    }

    /// Graded Leibniz extension `d(vw) = d(v)w + (-1)^{|v|} v d(w)` applied
    /// to a word that need not be irreducible; the result is reduced.
    fn d_raw_word(&self, w: &PathWord) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ring);
        let arrows = w.arrows();
        let mut prefix_deg = 0;
        let mut rng = StdRng::seed_from_u64(0);
        for k in 0..arrows.len() {
            let a = arrows[k];
            if let Some(da) = self.diff.get(&a) {
                let sign_neg = prefix_deg % 2 != 0;
                for (dw, dc) in da.terms() {
                    let mut v = arrows[..k].to_vec();
                    v.extend_from_slice(dw.arrows());
                    v.extend_from_slice(&arrows[k + 1..]);
                    let nw = PathWord::from_parts(v, w.src(), w.tgt());
                    let c = if sign_neg { -dc } else { dc.clone() };
                    self.reduce_into(nw, c, &mut out, Strategy::Leftmost, &mut rng);
                }
            }
            prefix_deg += self.quiver.arrow(a).deg;
        }
        out
    }

    pub fn differential(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ring);
        for (w, c) in e.terms() {
            out = out.add(&self.d_raw_word(w).scale(c));
        }
        out
    }

    // ---- enumeration ----------------------------------------------------

    /// All irreducible words of length at most `length_bound`, in canonical
    /// order.
    pub fn irreducible_words(&self, length_bound: usize) -> Vec<PathWord> {
        let nv = self.quiver.vertices().len();
        let mut out: Vec<PathWord> = (0..nv).map(PathWord::lazy).collect();
        let mut frontier: Vec<PathWord> = Vec::new();
        for (a, arrow) in self.quiver.arrows().iter().enumerate() {
            if length_bound >= 1 {
                frontier.push(PathWord::from_parts(vec![a], arrow.src, arrow.tgt));
            }
        }
        while !frontier.is_empty() {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for w in &frontier {
                if w.len() >= length_bound {
                    continue;
                }
                let first = w.arrows()[0];
                for (a, arrow) in self.quiver.arrows().iter().enumerate() {
                    if arrow.src == w.tgt() && !self.rule_index.contains_key(&(a, first)) {
                        let mut v = vec![a];
                        v.extend_from_slice(w.arrows());
                        next.push(PathWord::from_parts(v, w.src(), arrow.tgt));
                    }
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    /// Irreducible words `source -> target` of the given homological degree
    /// and length at most `length_bound`, in canonical order.
    pub fn graded_basis(&self, source: &str, target: &str, degree: i32, length_bound: usize) -> Result<Vec<PathWord>> {
        let s = self.quiver.require_vertex(source)?;
        let t = self.quiver.require_vertex(target)?;
        let arrows = self.quiver.arrows();
        // distance to `t` along arrows, for pruning
        let nv = self.quiver.vertices().len();
        let mut dist = vec![usize::MAX; nv];
        dist[t] = 0;
        let mut queue = std::collections::VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for a in arrows.iter().filter(|a| a.tgt == v) {
                if dist[a.src] == usize::MAX {
                    dist[a.src] = dist[v] + 1;
                    queue.push_back(a.src);
                }
            }
        }
        let (lo, hi) = arrows.iter().fold((0, 0), |(lo, hi), a| (lo.min(a.deg), hi.max(a.deg)));
        let mut out = Vec::new();
        let mut stack = vec![(PathWord::lazy(s), 0i32)];
        while let Some((w, d)) = stack.pop() {
            if w.tgt() == t && d == degree {
                out.push(w.clone());
            }
            let room = (length_bound - w.len()) as i32;
            if room == 0 {
                continue;
            }
            for (a, arrow) in arrows.iter().enumerate() {
                if arrow.src != w.tgt() || w.arrows().first().is_some_and(|&f| self.rule_index.contains_key(&(a, f))) {
                    continue;
                }
                let nd = d + arrow.deg;
                let left = room - 1;
                if dist[arrow.tgt] as i64 > left as i64 || nd + lo * left > degree || nd + hi * left < degree {
                    continue;
                }
                let mut v = vec![a];
                v.extend_from_slice(w.arrows());
                stack.push((PathWord::from_parts(v, s, arrow.tgt), nd));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Random composable word of at most `len` arrows (possibly reducible).
    pub fn random_word<R: Rng>(&self, rng: &mut R, len: usize) -> PathWord {
        let nv = self.quiver.vertices().len();
        let start = rng.gen_range(0..nv);
        let mut w = PathWord::lazy(start);
        for _ in 0..len {
            let choices: Vec<usize> = (0..self.quiver.arrows().len())
                .filter(|&a| self.quiver.arrow(a).src == w.tgt())
                .collect();
            if choices.is_empty() {
                break;
            }
            let a = choices[rng.gen_range(0..choices.len())];
            let arrow = self.quiver.arrow(a);
            let mut v = vec![a];
            v.extend_from_slice(w.arrows());
            w = PathWord::from_parts(v, w.src(), arrow.tgt);
        }
        w
    }

    // ---- transformations -----------------------------------------------

    /// Coefficient base change along `m`.
    pub fn base_change(&self, m: &RingMap) -> Result<Presentation> {
        if !crate::exactalg::poly_same_ring(m.source(), &self.ring) {
            return Err(Error::RingMismatch("ring map does not start at the coefficient ring".into()));
        }
        let target = m.target().clone();
        let map = |e: &AlgebraElement| -> Result<AlgebraElement> {
            let mut out = AlgebraElement::zero(&target);
            for (w, c) in e.terms() {
                out.add_term(w.clone(), m.apply(c)?);
            }
            Ok(out)
        };
        let rules = self
            .rules
            .iter()
            .map(|r| Ok(RewriteRule { lhs: r.lhs, rhs: map(&r.rhs)? }))
            .collect::<Result<Vec<_>>>()?;
        let diff = self
            .diff
            .iter()
            .map(|(&a, e)| Ok((a, map(e)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Presentation::new(self.quiver.clone(), target, rules, diff)
    }

    /// Presentation with one extra arrow and no extra rules; used by
    /// Drinfeld localisation.
    pub(crate) fn with_arrow(&self, name: &str, vertex: &str, deg: i32, d: impl FnOnce(&Quiver, usize) -> Result<AlgebraElement>) -> Result<Presentation> {
        let mut q = self.quiver.clone();
        let a = q.add_arrow(name, vertex, vertex, deg)?;
        let mut diff = self.diff.clone();
        let da = d(&q, a)?;
        if !da.is_zero() {
            diff.insert(a, da);
        }
        Presentation::new(q, self.ring.clone(), self.rules.clone(), diff)
    }

    // ---- serialisation --------------------------------------------------

    fn element_json(&self, e: &AlgebraElement) -> Value {
        Value::Array(
            e.terms()
                .map(|(w, c)| {
                    let word: Vec<&str> = w.arrows().iter().map(|&a| self.quiver.arrow(a).name.as_str()).collect();
                    json!({
                        "word": word,
                        "src": self.quiver.vertices()[w.src()],
                        "tgt": self.quiver.vertices()[w.tgt()],
                        "coef": c.to_string(),
                    })
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        let q = &self.quiver;
        let arrows: Vec<Value> = q
            .arrows()
            .iter()
            .map(|a| json!({"name": a.name, "src": q.vertices()[a.src], "tgt": q.vertices()[a.tgt], "deg": a.deg}))
            .collect();
        let rules: Vec<Value> = self
            .rules
            .iter()
            .map(|r| json!({"lhs": [q.arrow(r.lhs.0).name, q.arrow(r.lhs.1).name], "rhs": self.element_json(&r.rhs)}))
            .collect();
        let mut diff = serde_json::Map::new();
        for (&a, e) in &self.diff {
            diff.insert(q.arrow(a).name.clone(), self.element_json(e));
        }
        json!({
            "ring": {"field": self.field().to_string(), "vars": self.ring.vars()},
            "vertices": q.vertices(),
            "arrows": arrows,
            "rules": rules,
            "diff": diff,
        })
    }

    pub fn from_json(v: &Value) -> Result<Presentation> {
        let bad = |what: &str| Error::Parse(format!("presentation JSON: {what}"));
        let ring_v = v.get("ring").ok_or_else(|| bad("missing ring"))?;
        let field: Field = ring_v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing field"))?
            .parse()?;
        let vars: Vec<String> = serde_json::from_value(ring_v.get("vars").cloned().unwrap_or(Value::Null))
            .map_err(|_| bad("vars"))?;
        let ring = PolyRing::new(field, vars)?;
        let vertices: Vec<String> = serde_json::from_value(v.get("vertices").cloned().unwrap_or(Value::Null))
            .map_err(|_| bad("vertices"))?;
        let mut q = Quiver::new(vertices)?;
        for a in v.get("arrows").and_then(Value::as_array).ok_or_else(|| bad("arrows"))? {
            let s = |k: &str| a.get(k).and_then(Value::as_str).ok_or_else(|| bad(k));
            let deg = a.get("deg").and_then(Value::as_i64).ok_or_else(|| bad("deg"))?;
            q.add_arrow(s("name")?, s("src")?, s("tgt")?, deg as i32)?;
        }
        let element = |e: &Value| -> Result<AlgebraElement> {
            let mut out = AlgebraElement::zero(&ring);
            for t in e.as_array().ok_or_else(|| bad("element"))? {
                let names: Vec<String> = serde_json::from_value(t.get("word").cloned().unwrap_or(Value::Null))
                    .map_err(|_| bad("word"))?;
                let coef = ring.parse(t.get("coef").and_then(Value::as_str).ok_or_else(|| bad("coef"))?)?;
                let w = if names.is_empty() {
                    q.lazy(t.get("src").and_then(Value::as_str).ok_or_else(|| bad("src"))?)?
                } else {
                    q.word(&names.iter().map(String::as_str).collect::<Vec<_>>())?
                };
                out.add_term(w, coef);
            }
            Ok(out)
        };
        let mut rules = Vec::new();
        for r in v.get("rules").and_then(Value::as_array).ok_or_else(|| bad("rules"))? {
            let lhs: Vec<String> = serde_json::from_value(r.get("lhs").cloned().unwrap_or(Value::Null))
                .map_err(|_| bad("lhs"))?;
            if lhs.len() != 2 {
                return Err(bad("lhs must have two arrows"));
            }
            let rhs = element(r.get("rhs").ok_or_else(|| bad("rhs"))?)?;
            rules.push(RewriteRule { lhs: (q.require_arrow(&lhs[0])?, q.require_arrow(&lhs[1])?), rhs });
        }
        let mut diff = BTreeMap::new();
        if let Some(d) = v.get("diff").and_then(Value::as_object) {
            for (name, e) in d {
                diff.insert(q.require_arrow(name)?, element(e)?);
            }
        }
        Presentation::new(q, ring, rules, diff)
    }

    /// Line-oriented canonical dump.
    pub fn text_dump(&self) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        s.push_str(&format!("ring {}[{}]\n", self.field(), self.ring.vars().join(",")));
        s.push_str(&format!("vertices {}\n", q.vertices().join(" ")));
        for a in q.arrows() {
            s.push_str(&format!("arrow {}: {} -> {} deg {}\n", a.name, q.vertices()[a.src], q.vertices()[a.tgt], a.deg));
        }
        for r in &self.rules {
            s.push_str(&format!(
                "rule {}*{} -> {}\n",
                q.arrow(r.lhs.0).name,
                q.arrow(r.lhs.1).name,
                self.display(&r.rhs)
            ));
        }
        for (&a, e) in &self.diff {
            s.push_str(&format!("d {} = {}\n", q.arrow(a).name, self.display(e)));
        }
        let c = &self.confluence;
        s.push_str(&format!(
            "confluence {} ({} overlaps)\n",
            if c.is_confluent() { "ok" } else { "FAILED" },
            c.overlaps_checked
        ));
        s
    }
}
