//! Cox-ring side of the tube algebra.
//!
//! The torus `T = G_m^n` acts on `x_0..x_n, y_0..y_n`, with `x_i` of weight
//! `χ_{i+1} - χ_i` and `y_i` of the opposite weight, where `χ_0 = χ_{n+1} = 0`.
//! Sections of `M_i` are the monomials of weight `χ_i`; homomorphisms
//! `M_i -> M_j` are those of weight `χ_j - χ_i`. Matching `a_k -> x_k`,
//! `b_k -> y_k`, `t_k -> x_k y_k` identifies `End(O ⊕ M)` with the tube
//! algebra, which [`end_algebra`] checks up to a length bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, PolyRing, RingMap, Scalar};
use crate::quivalg::{tube_algebra, AlgebraElement, PathWord, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMonomial {
    pub c: Vec<u32>,
    pub d: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusWeight(pub Vec<i64>);

impl TorusWeight {
    pub fn zero(n: usize) -> Self {
        TorusWeight(vec![0; n])
    }

    /// `χ_i`; `χ_0` and `χ_{n+1}` are trivial.
    pub fn chi(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        if (1..=n).contains(&i) {
            w[i - 1] = 1;
        }
        TorusWeight(w)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for &TorusWeight {
    type Output = TorusWeight;
    fn add(self, o: &TorusWeight) -> TorusWeight {
        TorusWeight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TorusWeight {
    type Output = TorusWeight;
    fn sub(self, o: &TorusWeight) -> TorusWeight {
        self + &-o
    }
}

impl Neg for &TorusWeight {
    type Output = TorusWeight;
    fn neg(self) -> TorusWeight {
        TorusWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl WeightMonomial {
    pub fn new(c: Vec<u32>, d: Vec<u32>) -> Result<Self> {
        if c.len() != d.len() || c.len() < 1 {
            return Err(Error::Structure("x and y exponent vectors must have equal positive length".into()));
        }
        Ok(WeightMonomial { c, d })
    }

    pub fn one(n: usize) -> Self {
        WeightMonomial { c: vec![0; n + 1], d: vec![0; n + 1] }
    }

    /// Index `n` (there are `n+1` of each variable).
    pub fn n(&self) -> usize {
        self.c.len() - 1
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.c[i] = 1;
        m
    }

    pub fn y(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.d[i] = 1;
        m
    }

    pub fn t(n: usize, i: usize) -> Self {
        &Self::x(n, i) * &Self::y(n, i)
    }

    pub fn u(n: usize) -> Self {
        WeightMonomial { c: vec![1; n + 1], d: vec![0; n + 1] }
    }

    pub fn v(n: usize) -> Self {
        WeightMonomial { c: vec![0; n + 1], d: vec![1; n + 1] }
    }

    /// `σ_i = x_0⋯x_{i-1}`.
    pub fn sigma(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.c[..i].fill(1);
        m
    }

    /// `τ_i = y_i⋯y_n`.
    pub fn tau(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.d[i..].fill(1);
        m
    }

    pub fn degree(&self) -> u32 {
        self.c.iter().chain(&self.d).sum()
    }

    pub fn divides(&self, o: &WeightMonomial) -> bool {
        self.c.iter().zip(&o.c).all(|(a, b)| a <= b) && self.d.iter().zip(&o.d).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &WeightMonomial) -> Option<WeightMonomial> {
        o.divides(self).then(|| WeightMonomial {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
            d: self.d.iter().zip(&o.d).map(|(a, b)| a - b).collect(),
        })
    }

    /// Exponents of the `t_k = x_k y_k` that divide the monomial.
    pub fn t_part(&self) -> Vec<u32> {
        self.c.iter().zip(&self.d).map(|(a, b)| *a.min(b)).collect()
    }

    pub fn is_t_free(&self) -> bool {
        self.t_part().iter().all(|&k| k == 0)
    }

    pub fn to_poly(&self, cox: &Arc<PolyRing>) -> Poly {
        let mut e = self.c.clone();
        e.extend_from_slice(&self.d);
        cox.monomial(crate::exactalg::Monomial(e), Scalar::from_integer(1.into()))
    }
}

impl Mul for &WeightMonomial {
    type Output = WeightMonomial;
    fn mul(self, o: &WeightMonomial) -> WeightMonomial {
        WeightMonomial {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
            d: self.d.iter().zip(&o.d).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for WeightMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, e) in [("x", &self.c), ("y", &self.d)] {
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(format!("{v}{i}")),
                    _ => parts.push(format!("{v}{i}^{k}")),
                }
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

pub fn weight(m: &WeightMonomial) -> TorusWeight {
    let n = m.n();
    let mut w = vec![0i64; n];
    for k in 0..=n {
        let g = m.c[k] as i64 - m.d[k] as i64;
        if k + 1 <= n {
            w[k] += g;
        }
        if k >= 1 {
            w[k - 1] -= g;
        }
    }
    TorusWeight(w)
}

/// Ring `k[x_0..x_n, y_0..y_n]`.
pub fn cox_ring(field: Field, n: usize) -> Arc<PolyRing> {
    let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).chain((0..=n).map(|i| format!("y{i}"))).collect();
    PolyRing::new(field, names).expect("valid names")
}

/// All monomials of weight `w` and total degree at most `bound`, ascending.
///
/// Weight `w` pins `g_k = c_k - d_k` up to a common shift:
/// `g_{k-1} - g_k = w_k`. Given `g`, the monomial is `t^m` times the
/// `t`-free monomial with exponents `max(±g_k, 0)`.
pub fn weight_monomials(n: usize, w: &TorusWeight, bound: u32) -> Vec<WeightMonomial> {
    let mut offs = vec![0i64; n + 1];
    for k in 1..=n {
        offs[k] = offs[k - 1] - w.0[k - 1];
    }
    let b = bound as i64;
    let mut out = Vec::new();
    let (lo, hi) = (-b - offs.iter().max().unwrap(), b - offs.iter().min().unwrap());
    for g0 in lo..=hi {
        let g: Vec<i64> = offs.iter().map(|o| g0 + o).collect();
        let base: i64 = g.iter().map(|x| x.abs()).sum();
        if base > b {
            continue;
        }
        let free = WeightMonomial {
            c: g.iter().map(|&x| x.max(0) as u32).collect(),
            d: g.iter().map(|&x| (-x).max(0) as u32).collect(),
        };
        let spare = ((b - base) / 2) as u32;
        for m in crate::exactalg::monomials_up_to(n + 1, spare) {
            let tm = WeightMonomial { c: m.0.clone(), d: m.0 };
            out.push(&free * &tm);
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
    out
}

/// `m = t^t · u^u · v^v` with at most one of `u`, `v` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantDecomposition {
    pub t: Vec<u32>,
    pub u: u32,
    pub v: u32,
}

impl InvariantDecomposition {
    pub fn monomial(&self, n: usize) -> WeightMonomial {
        let mut m = WeightMonomial { c: self.t.clone(), d: self.t.clone() };
        for _ in 0..self.u {
            m = &m * &WeightMonomial::u(n);
        }
        for _ in 0..self.v {
            m = &m * &WeightMonomial::v(n);
        }
        m
    }
}

impl fmt::Display for InvariantDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &k) in self.t.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("t{i}")),
                _ => parts.push(format!("t{i}^{k}")),
            }
        }
        for (s, k) in [("u", self.u), ("v", self.v)] {
            match k {
                0 => {}
                1 => parts.push(s.into()),
                _ => parts.push(format!("{s}^{k}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Factors an invariant monomial through `t_i`, `u`, `v`; `None` when the
/// monomial has nonzero weight.
pub fn invariant_decomposition(m: &WeightMonomial) -> Option<InvariantDecomposition> {
    let g: Vec<i64> = m.c.iter().zip(&m.d).map(|(&a, &b)| a as i64 - b as i64).collect();
    if g.iter().any(|&x| x != g[0]) {
        return None;
    }
    let t = m.t_part();
    Some(InvariantDecomposition { t, u: g[0].max(0) as u32, v: (-g[0]).max(0) as u32 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Sigma,
    Tau,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCertificate {
    pub monomial: WeightMonomial,
    pub generator: Generator,
    pub cofactor: InvariantDecomposition,
}

/// Identification of the sections of `M_i` with an ideal of the invariant
/// ring, by multiplying through by a fixed monomial of weight `-χ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleIdentification {
    pub multiplier: String,
    pub ideal: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct SectionBasis {
    pub i: usize,
    pub n: usize,
    pub bound: u32,
    pub weight: TorusWeight,
    pub monomials: Vec<WeightMonomial>,
    pub certificates: Vec<SectionCertificate>,
    pub identifications: Vec<ModuleIdentification>,
}

impl SectionBasis {
    /// Every listed monomial has the target weight and a certificate.
    pub fn verified(&self) -> bool {
        self.monomials.len() == self.certificates.len()
            && self.monomials.iter().all(|m| weight(m) == self.weight)
            && self.certificates.iter().all(|c| {
                let g = match c.generator {
                    Generator::Sigma => WeightMonomial::sigma(self.n, self.i),
                    Generator::Tau => WeightMonomial::tau(self.n, self.i),
                };
                &g * &c.cofactor.monomial(self.n) == c.monomial
            })
            && self.identifications.iter().all(|m| m.holds)
    }

    pub fn to_json(&self) -> Value {
        let certs: Vec<Value> = self
            .certificates
            .iter()
            .map(|c| json!({"section": c.monomial.to_string(), "generator": c.generator, "cofactor": c.cofactor.to_string()}))
            .collect();
        json!({
            "i": self.i, "n": self.n, "bound": self.bound, "weight": self.weight,
            "count": self.monomials.len(), "certificates": certs,
            "identifications": self.identifications, "verified": self.verified(),
        })
    }
}

/// Checks that `m ↦ m·mult` maps the sections of degree `<= bound` onto the
/// invariant monomials of the ideal `(gens)` of degree `<= bound + deg mult`.
fn identify(n: usize, sections: &[WeightMonomial], bound: u32, mult: &WeightMonomial, gens: &[WeightMonomial]) -> bool {
    let image: BTreeSet<WeightMonomial> = sections.iter().map(|s| s * mult).collect();
    let expected: BTreeSet<WeightMonomial> = weight_monomials(n, &TorusWeight::zero(n), bound + mult.degree())
        .into_iter()
        .filter(|m| gens.iter().any(|g| g.divides(m)) && mult.divides(m))
        .filter(|m| m.div(mult).is_some_and(|q| q.degree() <= bound))
        .collect();
    image == expected
}

pub fn section_basis(i: usize, n: usize, bound: u32) -> Result<SectionBasis> {
    if i < 1 || i > n {
        return Err(Error::Structure(format!("M_{i} needs 1 <= i <= n = {n}")));
    }
    let (sigma, tau) = (WeightMonomial::sigma(n, i), WeightMonomial::tau(n, i));
    if bound < sigma.degree().max(tau.degree()) {
        return Err(Error::BoundTooSmall(format!(
            "bound {bound} is below the generator degrees {} and {}",
            sigma.degree(),
            tau.degree()
        )));
    }
    let w = TorusWeight::chi(n, i);
    let monomials = weight_monomials(n, &w, bound);
    let mut certificates = Vec::new();
    for m in &monomials {
        let cert = [(Generator::Sigma, &sigma), (Generator::Tau, &tau)].into_iter().find_map(|(g, gen)| {
            let q = m.div(gen)?;
            Some(SectionCertificate { monomial: m.clone(), generator: g, cofactor: invariant_decomposition(&q)? })
        });
        match cert {
            Some(c) => certificates.push(c),
            None => return Err(Error::Verification(format!("section {m} is not generated by σ_{i}, τ_{i}"))),
        }
    }
    let t_prod = |r: std::ops::Range<usize>| r.fold(WeightMonomial::one(n), |acc, k| &acc * &WeightMonomial::t(n, k));
    let x_tail = (i..=n).fold(WeightMonomial::one(n), |acc, k| &acc * &WeightMonomial::x(n, k));
    let y_head = (0..i).fold(WeightMonomial::one(n), |acc, k| &acc * &WeightMonomial::y(n, k));
    let identifications = vec![
        ModuleIdentification {
            multiplier: x_tail.to_string(),
            ideal: vec!["u".into(), InvariantDecomposition { t: t_prod(i..n + 1).t_part(), u: 0, v: 0 }.to_string()],
            holds: identify(n, &monomials, bound, &x_tail, &[WeightMonomial::u(n), t_prod(i..n + 1)]),
        },
        ModuleIdentification {
            multiplier: y_head.to_string(),
            ideal: vec!["v".into(), InvariantDecomposition { t: t_prod(0..i).t_part(), u: 0, v: 0 }.to_string()],
            holds: identify(n, &monomials, bound, &y_head, &[WeightMonomial::v(n), t_prod(0..i)]),
        },
    ];
    Ok(SectionBasis { i, n, bound, weight: w, monomials, certificates, identifications })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeReport {
    pub n: usize,
    pub patterns: usize,
    pub degenerate_patterns: usize,
    pub counterexample: Option<String>,
}

impl WedgeReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Zero patterns of `x_0..x_n, y_0..y_n` under which every component
/// `σ_1⋯σ_{k-1}·τ_{k+1}⋯τ_n` (k = 1..n) of `s_1 ∧ ⋯ ∧ s_{n-1}` vanishes must
/// lie in the unstable locus `x_j = y_k = 0`, `j < k`.
pub fn wedge_nonvanishing(n: usize) -> Result<WedgeReport> {
    if n < 2 {
        return Err(Error::Structure(format!("wedge check needs n >= 2, got {n}")));
    }
    let vars = n + 1;
    let mut report = WedgeReport { n, patterns: 1 << (2 * vars), degenerate_patterns: 0, counterexample: None };
    for pat in 0u32..(1 << (2 * vars)) {
        let xz = |k: usize| pat >> k & 1 == 1;
        let yz = |k: usize| pat >> (vars + k) & 1 == 1;
        let sigma_zero = |i: usize| (0..i).any(xz);
        let tau_zero = |i: usize| (i..=n).any(yz);
        let all_vanish =
            (1..=n).all(|k| (1..k).any(sigma_zero) || (k + 1..=n).any(tau_zero));
        if !all_vanish {
            continue;
        }
        report.degenerate_patterns += 1;
        let unstable = (0..=n).any(|j| xz(j) && (j + 1..=n).any(yz));
        if !unstable && report.counterexample.is_none() {
            let zs: Vec<String> =
                (0..vars).filter(|&k| xz(k)).map(|k| format!("x{k}")).chain((0..vars).filter(|&k| yz(k)).map(|k| format!("y{k}"))).collect();
            report.counterexample = Some(format!("zero set {{{}}}", zs.join(",")));
        }
    }
    Ok(report)
}

/// Image of a tube-algebra word: `a_k -> x_k`, `b_k -> y_k`.
pub fn word_monomial(p: &Presentation, w: &PathWord, n: usize) -> Result<WeightMonomial> {
    let mut m = WeightMonomial::one(n);
    for &a in w.arrows() {
        let name = &p.quiver().arrows()[a].name;
        let (kind, idx) = name.split_at(1);
        let k: usize = idx.parse().map_err(|_| Error::Structure(format!("unexpected arrow `{name}`")))?;
        m = &m * &match kind {
            "a" => WeightMonomial::x(n, k),
            "b" => WeightMonomial::y(n, k),
            _ => return Err(Error::Structure(format!("unexpected arrow `{name}`"))),
        };
    }
    Ok(m)
}

/// `t_k -> x_k y_k`.
pub fn t_to_cox(r: &Arc<PolyRing>, cox: &Arc<PolyRing>, n: usize) -> Result<RingMap> {
    let imgs = (0..=n).map(|k| WeightMonomial::t(n, k).to_poly(cox)).collect();
    RingMap::new(r, cox, imgs)
}

#[derive(Clone, Debug, Serialize)]
pub struct EndReport {
    pub n: usize,
    pub bound: usize,
    /// `(i, j, ranks by length)` for `hom(M_i, M_j)`.
    pub ranks: Vec<(usize, usize, Vec<usize>)>,
    pub generator_images: BTreeMap<String, String>,
    pub pairs_checked: usize,
    pub counterexample: Option<String>,
}

impl EndReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Bases {
    pres: Presentation,
    words: Vec<Vec<Vec<PathWord>>>,
}

fn tube_bases(n: usize, bound: usize, field: Field) -> Result<Bases> {
    let pres = tube_algebra(n, &PolyRing::t_ring(field, n))?;
    let mut words = vec![vec![Vec::new(); n + 1]; n + 1];
    for w in pres.irreducible_words(bound) {
        words[w.src()][w.tgt()].push(w);
    }
    Ok(Bases { pres, words })
}

fn composable_pairs(b: &Bases) -> impl Iterator<Item = (&PathWord, &PathWord)> {
    let n1 = b.words.len();
    (0..n1).flat_map(move |i| {
        (0..n1).flat_map(move |j| {
            (0..n1).flat_map(move |k| {
                b.words[i][j].iter().flat_map(move |w1| b.words[j][k].iter().map(move |w2| (w2, w1)))
            })
        })
    })
}

/// Compares the tube algebra with `⊕ hom(M_i, M_j)` computed in the Cox ring:
/// graded bases must correspond bijectively under `a_k -> x_k`,
/// `b_k -> y_k`, and products of composable basis pairs must agree.
pub fn end_algebra(n: usize, length_bound: usize) -> Result<EndReport> {
    if n < 1 {
        return Err(Error::Structure("end_algebra needs n >= 1".into()));
    }
    let b = tube_bases(n, length_bound, Field::Rationals)?;
    let cox = cox_ring(Field::Rationals, n);
    let phi_r = t_to_cox(b.pres.ring(), &cox, n)?;
    let mut report = EndReport {
        n,
        bound: length_bound,
        ranks: Vec::new(),
        generator_images: BTreeMap::new(),
        pairs_checked: 0,
        counterexample: None,
    };
    for a in b.pres.quiver().arrows() {
        let w = b.pres.word(&[&a.name])?;
        report.generator_images.insert(a.name.clone(), word_monomial(&b.pres, &w, n)?.to_string());
    }
    for i in 0..=n {
        for j in 0..=n {
            let w = &TorusWeight::chi(n, j) - &TorusWeight::chi(n, i);
            let cox_basis: BTreeSet<WeightMonomial> = weight_monomials(n, &w, length_bound as u32)
                .into_iter()
                .filter(WeightMonomial::is_t_free)
                .collect();
            let images: Vec<WeightMonomial> =
                b.words[i][j].iter().map(|w| word_monomial(&b.pres, w, n)).collect::<Result<_>>()?;
            let image_set: BTreeSet<WeightMonomial> = images.iter().cloned().collect();
            let mut ranks = vec![0; length_bound + 1];
            for m in &cox_basis {
                ranks[m.degree() as usize] += 1;
            }
            if image_set.len() != images.len() || image_set != cox_basis {
                let extra = image_set.symmetric_difference(&cox_basis).next().map(|m| m.to_string());
                report.counterexample.get_or_insert(format!(
                    "hom(M_{i},M_{j}): {} path images vs {} Cox monomials, first difference {}",
                    images.len(),
                    cox_basis.len(),
                    extra.unwrap_or_else(|| "a repeated image".into())
                ));
            }
            report.ranks.push((i, j, ranks));
        }
    }
    for (w2, w1) in composable_pairs(&b) {
        report.pairs_checked += 1;
        let prod = b.pres.multiply(
            &AlgebraElement::word(b.pres.ring(), w2.clone()),
            &AlgebraElement::word(b.pres.ring(), w1.clone()),
        );
        let mut lhs = cox.zero();
        for (w, c) in prod.terms() {
            lhs = &lhs + &(&phi_r.apply(c)? * &word_monomial(&b.pres, w, n)?.to_poly(&cox));
        }
        let rhs = (&word_monomial(&b.pres, w2, n)? * &word_monomial(&b.pres, w1, n)?).to_poly(&cox);
        if lhs != rhs && report.counterexample.is_none() {
            let q = b.pres.quiver();
            report.counterexample =
                Some(format!("{} · {}: algebra gives {lhs}, Cox ring gives {rhs}", q.fmt_word(w2), q.fmt_word(w1)));
        }
    }
    Ok(report)
}

impl EndReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n, "bound": self.bound, "pass": self.passed(),
            "ranks": self.ranks.iter().map(|(i, j, r)| json!({"from": i, "to": j, "ranks": r})).collect::<Vec<_>>(),
            "generator_images": self.generator_images,
            "pairs_checked": self.pairs_checked,
            "counterexample": self.counterexample,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseChangeReport {
    pub n: usize,
    pub images: Vec<String>,
    pub pairs_checked: usize,
    pub counterexample: Option<String>,
}

impl BaseChangeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Structure constants read off in the Cox ring and then pushed along
/// `t_k -> f_k` agree with those of the base-changed tube algebra.
pub fn base_change_end(n: usize, f: &[Poly], length_bound: usize) -> Result<BaseChangeReport> {
    if f.len() != n + 1 {
        return Err(Error::Structure(format!("need {} images, got {}", n + 1, f.len())));
    }
    let s = f[0].ring().clone();
    let b = tube_bases(n, length_bound, s.field())?;
    let sub = RingMap::new(b.pres.ring(), &s, f.to_vec())?;
    let changed = b.pres.base_change(&sub)?;
    // basis words of length up to twice the bound, by endpoints and Cox
    // monomial; base change keeps vertex and arrow indices
    let mut lookup: HashMap<(usize, usize, WeightMonomial), PathWord> = HashMap::new();
    for w in b.pres.irreducible_words(2 * length_bound) {
        lookup.insert((w.src(), w.tgt(), word_monomial(&b.pres, &w, n)?), w);
    }
    let mut report = BaseChangeReport { n, images: f.iter().map(Poly::to_string).collect(), pairs_checked: 0, counterexample: None };
    for (w2, w1) in composable_pairs(&b) {
        report.pairs_checked += 1;
        let m = &word_monomial(&b.pres, w2, n)? * &word_monomial(&b.pres, w1, n)?;
        let tp = m.t_part();
        let free = m.div(&WeightMonomial { c: tp.clone(), d: tp.clone() }).expect("t part divides");
        let coef = tp.iter().enumerate().fold(s.one(), |acc, (k, &e)| &acc * &f[k].pow(e));
        let mut expected = AlgebraElement::zero(&s);
        let w = lookup
            .get(&(w1.src(), w2.tgt(), free.clone()))
            .ok_or_else(|| Error::BoundTooSmall(format!("no basis word for {free}")))?
            .clone();
        expected.add_term(w, coef);
        let got = changed.multiply(
            &AlgebraElement::word(&s, w2.clone()),
            &AlgebraElement::word(&s, w1.clone()),
        );
        if got != expected && report.counterexample.is_none() {
            let q = changed.quiver();
            report.counterexample = Some(format!(
                "{} · {}: base change gives {}, Cox ring gives {}",
                q.fmt_word(w2),
                q.fmt_word(w1),
                changed.display(&got),
                changed.display(&expected)
            ));
        }
    }
    Ok(report)
}

impl BaseChangeReport {
    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "images": self.images, "pairs_checked": self.pairs_checked, "pass": self.passed(), "counterexample": self.counterexample})
    }
}
