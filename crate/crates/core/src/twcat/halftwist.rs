use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::table::AInfTable;
use super::tw::{mu_tw, tw_routes, TwComplex, TwMorphism};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, PolyRing, RingMap};

/// Which partial wrapping decides the split of `μ3((b0,an),(α',β'),p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wrapping {
    Left,
    Right,
}

impl Wrapping {
    pub const BOTH: [Wrapping; 2] = [Wrapping::Left, Wrapping::Right];
}

impl fmt::Display for Wrapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wrapping::Left => "left",
            Wrapping::Right => "right",
        })
    }
}

impl FromStr for Wrapping {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Wrapping::Left),
            "right" => Ok(Wrapping::Right),
            _ => Err(Error::Parse(format!("unknown wrapping `{s}`"))),
        }
    }
}

pub const PSI: &str = "Psi";
pub const P: &str = "p";
pub const PBAR: &str = "pbar";
pub const ALPHA_P: &str = "alpha'";
pub const BETA_P: &str = "beta'";

/// Local product table near the half-twisted arc `Psi = ψ0(L0)`, over
/// `F2[t0..tn]`. Besides the intersection point `p: L0 -> Psi` (degree 1)
/// and its reverse `pbar`, the chords `b0: L1 -> L0`, `an: Ln -> L0`,
/// `alpha': Psi -> L1`, `beta': Psi -> Ln` all sit in degree 0.
///
/// The `pbar` entries are forced: without them the arity-4 relations
/// fail on tuples like `(b0, alpha', p, b0)`.
pub fn halftwist_tables(n: usize, wrapping: Wrapping) -> Result<AInfTable> {
    if n < 2 {
        return Err(Error::Unsupported(format!("half-twist tables need n >= 2, got {n}")));
    }
    let ring = PolyRing::t_ring(Field::Prime(2), n);
    let mut t = AInfTable::new(&ring)?;
    let (l0, l1, ln) = ("L0".to_string(), "L1".to_string(), format!("L{n}"));
    let (b0, an) = ("b0".to_string(), format!("a{n}"));
    for o in [&l0, &l1, &ln] {
        t.add_object(o)?;
    }
    t.add_object(PSI)?;
    t.add_morphism(&b0, &l1, &l0, 0)?;
    t.add_morphism(&an, &ln, &l0, 0)?;
    t.add_morphism(P, &l0, PSI, 1)?;
    t.add_morphism(ALPHA_P, PSI, &l1, 0)?;
    t.add_morphism(BETA_P, PSI, &ln, 0)?;
    t.add_morphism(PBAR, PSI, &l0, 0)?;
    let one = ring.one();
    let e = |o: &str| format!("e{o}");
    let mut set = |args: &[&str], out: &str| t.set_mu(args, &[(out, one.clone())]);
    set(&[&b0, ALPHA_P], PBAR)?;
    set(&[&an, BETA_P], PBAR)?;
    set(&[ALPHA_P, P, &b0], &e(&l1))?;
    set(&[BETA_P, P, &an], &e(&ln))?;
    set(&[PBAR, P, PBAR], PBAR)?;
    match wrapping {
        Wrapping::Left => {
            set(&[&b0, ALPHA_P, P], &e(&l0))?;
            set(&[P, &b0, ALPHA_P], &e(PSI))?;
            set(&[PBAR, P, &an], &an)?;
            set(&[BETA_P, P, PBAR], BETA_P)?;
        }
        Wrapping::Right => {
            set(&[&an, BETA_P, P], &e(&l0))?;
            set(&[P, &an, BETA_P], &e(PSI))?;
            set(&[PBAR, P, &b0], &b0)?;
            set(&[ALPHA_P, P, PBAR], ALPHA_P)?;
        }
    }
    Ok(t)
}

/// `L' = (L1 ⊕ Ln --(b0,an)--> L0[-1])`, `Psi`, and the mutually inverse
/// `q1: L' -> Psi`, `q2: Psi -> L'`.
#[derive(Clone, Debug)]
pub struct HalftwistData {
    pub lprime: TwComplex,
    pub psi: TwComplex,
    pub q1: TwMorphism,
    pub q2: TwMorphism,
}

pub fn halftwist_data(t: &AInfTable, n: usize) -> Result<HalftwistData> {
    let (l1, ln) = ("L1".to_string(), format!("L{n}"));
    let lprime = TwComplex::new(t, &[(&l1, 0), (&ln, 0), ("L0", -1)], &[(0, 2, "b0"), (1, 2, &format!("a{n}"))])?;
    let psi = TwComplex::object(t, PSI, 0)?;
    let q1 = TwMorphism::new(t, &lprime, &psi, 0, &[(2, 0, P)])?;
    let q2 = TwMorphism::new(t, &psi, &lprime, 0, &[(0, 0, ALPHA_P), (0, 1, BETA_P)])?;
    Ok(HalftwistData { lprime, psi, q1, q2 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({"check": self.name, "pass": self.passed, "detail": self.detail})
    }
}

fn first_difference(t: &AInfTable, got: &TwMorphism, want: &TwMorphism) -> Option<String> {
    let keys: std::collections::BTreeSet<_> = got.entries.keys().chain(want.entries.keys()).collect();
    keys.into_iter().find_map(|k| {
        let (g, w) = (got.entries.get(k).cloned().unwrap_or_default(), want.entries.get(k).cloned().unwrap_or_default());
        (g != w).then(|| format!("entry {}->{}: got {}, expected {}", k.0, k.1, t.fmt_comb(&g), t.fmt_comb(&w)))
    })
}

/// Runs every check of the half-twist argument against a table and data.
/// Split out so that corrupted inputs can be fed through the same code.
pub fn check_halftwist(t: &AInfTable, d: &HalftwistData) -> Result<(Vec<Check>, BTreeMap<String, Value>)> {
    let mut checks = Vec::new();
    let mut witnesses = BTreeMap::new();

    let a = t.ainf_check(4)?;
    let detail = match a.violations.first() {
        Some(v) => format!("({}) -> {}", v.args.join(","), v.residue),
        None => format!("{} tuples", a.tuples_checked),
    };
    checks.push(Check::new("ainf relations to arity 4", a.passed(), detail));

    let mc = d.lprime.maurer_cartan(t)?;
    checks.push(Check::new("L' satisfies Maurer-Cartan", mc.is_empty(), format!("{} nonzero entries", mc.len())));

    for (name, q) in [("q1", &d.q1), ("q2", &d.q2)] {
        let dq = mu_tw(t, &[q])?;
        let detail = first_difference(t, &dq, &TwMorphism::zero(&dq.source, &dq.target, dq.degree));
        checks.push(Check::new(&format!("{name} is closed"), dq.is_zero(), detail.unwrap_or_default()));
    }

    let q1q2 = mu_tw(t, &[&d.q1, &d.q2])?;
    let id_psi = TwMorphism::identity(t, &d.psi)?;
    let diff = first_difference(t, &q1q2, &id_psi);
    checks.push(Check::new("mu2(q1,q2) = id_Psi", diff.is_none(), diff.unwrap_or_default()));
    witnesses.insert("mu2(q1,q2)".into(), q1q2.to_json(t));

    let q2q1 = mu_tw(t, &[&d.q2, &d.q1])?;
    let id_l = TwMorphism::identity(t, &d.lprime)?;
    let diff = first_difference(t, &q2q1, &id_l);
    checks.push(Check::new("mu2(q2,q1) = id_L'", diff.is_none(), diff.unwrap_or_default()));
    witnesses.insert("mu2(q2,q1)".into(), q2q1.to_json(t));

    // Routes of length 2 and 4 through the q2∘q1 diagram land in hom
    // spaces with no basis element of the required degree.
    let mut bad = Vec::new();
    let mut seen = 0;
    for r in tw_routes(t, &[&d.q2, &d.q1])? {
        if r.args.len() != 2 && r.args.len() != 4 {
            continue;
        }
        seen += 1;
        let ms = t.morphisms();
        let (src, tgt) = (ms[*r.args.last().unwrap()].src, ms[r.args[0]].tgt);
        let deg = r.args.iter().map(|&m| ms[m].deg).sum::<i32>() + 2 - r.args.len() as i32;
        if ms.iter().any(|m| m.src == src && m.tgt == tgt && m.deg == deg) {
            bad.push(t.names(&r.args).join(","));
        }
    }
    checks.push(Check::new(
        "length-2 and length-4 routes vanish for degree reasons",
        bad.is_empty() && seen > 0,
        if bad.is_empty() { format!("{seen} routes") } else { format!("hom space not empty for ({})", bad.join("; ")) },
    ));
    Ok((checks, witnesses))
}

#[derive(Clone, Debug)]
pub struct WrappingReport {
    pub wrapping: Wrapping,
    pub checks: Vec<Check>,
    pub witnesses: BTreeMap<String, Value>,
}

impl WrappingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct HalftwistReport {
    pub n: usize,
    pub wrappings: Vec<WrappingReport>,
}

impl HalftwistReport {
    pub fn passed(&self) -> bool {
        self.wrappings.iter().all(WrappingReport::passed)
    }

    pub fn to_json(&self) -> Value {
        let ws: Vec<Value> = self
            .wrappings
            .iter()
            .map(|w| {
                json!({
                    "wrapping": w.wrapping,
                    "pass": w.passed(),
                    "checks": w.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
                    "witnesses": w.witnesses,
                })
            })
            .collect();
        json!({"n": self.n, "pass": self.passed(), "wrappings": ws})
    }
}

pub fn verify_halftwist(n: usize) -> Result<HalftwistReport> {
    let mut wrappings = Vec::new();
    for w in Wrapping::BOTH {
        let t = halftwist_tables(n, w)?;
        let d = halftwist_data(&t, n)?;
        let (checks, witnesses) = check_halftwist(&t, &d)?;
        wrappings.push(WrappingReport { wrapping: w, checks, witnesses });
    }
    Ok(HalftwistReport { n, wrappings })
}

/// Deliberately broken inputs; each must make some check fail.
/// Returns `(control, failed as expected, the failing check)`.
pub fn negative_controls(n: usize) -> Result<Vec<(String, bool, String)>> {
    let mut out = Vec::new();
    for w in Wrapping::BOTH {
        let t = halftwist_tables(n, w)?;
        let mut d = halftwist_data(&t, n)?;
        d.q2.entries.remove(&(0, 1));
        let (checks, _) = check_halftwist(&t, &d)?;
        out.push(verdict(&format!("{w}: q2 without beta'"), &checks));

        let mut broken = halftwist_tables(n, w)?;
        broken.set_mu(&[ALPHA_P, P, "b0"], &[])?;
        let d = halftwist_data(&broken, n)?;
        let (checks, _) = check_halftwist(&broken, &d)?;
        out.push(verdict(&format!("{w}: mu3(alpha',p,b0) = 0"), &checks));
    }
    Ok(out)
}

fn verdict(name: &str, checks: &[Check]) -> (String, bool, String) {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => (name.to_string(), true, format!("{}: {}", c.name, c.detail)),
        None => (name.to_string(), false, "all checks passed".into()),
    }
}

/// Object-level twisted complex with symbolic objects and chords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectImage {
    pub terms: Vec<(String, i32)>,
    pub delta: Vec<(usize, usize, String)>,
}

impl fmt::Display for ObjectImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.delta.is_empty() && self.terms.len() == 1 {
            return f.write_str(&self.terms[0].0);
        }
        let (src, tgt): (Vec<_>, Vec<_>) = self.terms.iter().partition(|(_, s)| *s == 0);
        let names = |v: &[&(String, i32)]| v.iter().map(|(o, _)| o.as_str()).collect::<Vec<_>>().join("⊕");
        let arrows: Vec<&str> = self.delta.iter().map(|(_, _, m)| m.as_str()).collect();
        write!(f, "[{} --({})--> {}]", names(&src), arrows.join(","), names(&tgt))
    }
}

/// `ψ_i(L_j)`: unchanged unless `i = j`, where it is the cone
/// `L_{i+1} ⊕ L_{i-1} --(b_i, a_{i-1})--> L_i`. Indices are mod `n+1`.
pub fn braid_object_image(n: usize, i: usize, j: usize) -> ObjectImage {
    let m = n + 1;
    let (i, j) = (i % m, j % m);
    if i != j {
        return ObjectImage { terms: vec![(format!("L{j}"), 0)], delta: Vec::new() };
    }
    let (up, down) = ((i + 1) % m, (i + m - 1) % m);
    ObjectImage {
        terms: vec![(format!("L{up}"), 0), (format!("L{down}"), 0), (format!("L{i}"), -1)],
        delta: vec![(0, 2, format!("b{i}")), (1, 2, format!("a{down}"))],
    }
}

pub fn braid_object_images(n: usize) -> BTreeMap<(usize, usize), ObjectImage> {
    let mut out = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=n {
            out.insert((i, j), braid_object_image(n, i, j));
        }
    }
    out
}

fn shift_label(s: &str, prefix: &str, n: usize) -> Option<String> {
    let k: usize = s.strip_prefix(prefix)?.parse().ok()?;
    Some(format!("{prefix}{}", (k + 1) % (n + 1)))
}

/// Cyclic relabelling `j -> j+1` of objects and chords.
pub fn rho(n: usize, img: &ObjectImage) -> ObjectImage {
    let relabel = |s: &str| {
        ["L", "a", "b"].iter().find_map(|p| shift_label(s, p, n)).unwrap_or_else(|| s.to_string())
    };
    ObjectImage {
        terms: img.terms.iter().map(|(o, s)| (relabel(o), *s)).collect(),
        delta: img.delta.iter().map(|(i, j, m)| (*i, *j, relabel(m))).collect(),
    }
}

/// The matching permutation `t_j -> t_{j+1}` of coefficients.
pub fn rho_coefficients(ring: &std::sync::Arc<PolyRing>) -> Result<RingMap> {
    let n = ring.nvars();
    let images: Vec<Poly> = (0..n).map(|j| ring.var((j + 1) % n)).collect();
    RingMap::new(ring, ring, images)
}

/// The twist by the boundary rotation acts trivially on objects.
pub fn delta_twist(img: &ObjectImage) -> ObjectImage {
    img.clone()
}

/// Realises an image as a twisted complex over a table whose objects are
/// the tube vertices `0..=n` and whose morphisms include the arrows.
pub fn realise(t: &AInfTable, img: &ObjectImage) -> Result<TwComplex> {
    let strip = |o: &str| o.strip_prefix('L').unwrap_or(o).to_string();
    let names: Vec<String> = img.terms.iter().map(|(o, _)| strip(o)).collect();
    let terms: Vec<(&str, i32)> = names.iter().zip(&img.terms).map(|(o, (_, s))| (o.as_str(), *s)).collect();
    let delta: Vec<(usize, usize, &str)> = img.delta.iter().map(|(i, j, m)| (*i, *j, m.as_str())).collect();
    TwComplex::new(t, &terms, &delta)
}
