use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::AlgebraElement;
use super::presentation::{Presentation, RewriteRule};
use super::quiver::{PathWord, Quiver};
use crate::error::{structure, Error, Result};
use crate::exactalg::{Poly, PolyRing};

fn rule(q: &Quiver, x: &str, y: &str, coef: Poly, vertex: &str) -> Result<RewriteRule> {
    Ok(RewriteRule {
        lhs: (q.require_arrow(x)?, q.require_arrow(y)?),
        rhs: AlgebraElement::term(q.lazy(vertex)?, coef),
    })
}

fn zero_rule(q: &Quiver, x: &str, ring: &Arc<PolyRing>) -> Result<RewriteRule> {
    let a = q.require_arrow(x)?;
    Ok(RewriteRule { lhs: (a, a), rhs: AlgebraElement::zero(ring) })
}

/// The tube algebra: cyclic quiver on vertices `0..=n` with `a_i: i -> i+1`
/// and `b_i: i+1 -> i` (indices mod `n+1`), and `a_i b_i = t_i e_{i+1}`,
/// `b_i a_i = t_i e_i`. `ring` must have `n+1` variables, used as `t_i`.
pub fn tube_algebra(n: usize, ring: &Arc<PolyRing>) -> Result<Presentation> {
    if ring.nvars() != n + 1 {
        return Err(structure(format!(
            "tube algebra with n = {n} needs {} coefficient variables, got {}",
            n + 1,
            ring.nvars()
        )));
    }
    let m = n + 1;
    let mut q = Quiver::new((0..m).map(|i| i.to_string()))?;
    for i in 0..m {
        let (s, t) = (i.to_string(), ((i + 1) % m).to_string());
        q.add_arrow(format!("a{i}"), &s, &t, 0)?;
        q.add_arrow(format!("b{i}"), &t, &s, 0)?;
    }
    let mut rules = Vec::new();
    for i in 0..m {
        let t = ring.var(i);
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        rules.push(rule(&q, &a, &b, t.clone(), &((i + 1) % m).to_string())?);
        rules.push(rule(&q, &b, &a, t, &i.to_string())?);
    }
    Presentation::new(q, ring.clone(), rules, BTreeMap::new())
}

/// Which idempotent the relation `a_i b_i = f_i e` lands on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowConvention {
    /// `a_i: i -> i+1`, so `a_i b_i = f_i e_{i+1}` and `b_i a_i = f_i e_i`,
    /// matching the tube algebra.
    #[default]
    Tube,
    /// `a_i: i+1 -> i`, so `a_i b_i = f_i e_i` and `b_i a_i = f_i e_{i+1}`.
    Reversed,
}

impl std::str::FromStr for ArrowConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tube" => Ok(ArrowConvention::Tube),
            "reversed" => Ok(ArrowConvention::Reversed),
            _ => Err(Error::Parse(format!("unknown arrow convention `{s}`"))),
        }
    }
}

/// The DG quiver obtained from the tube algebra by excising vertex 0:
/// vertices `1..=n`, degree-0 arrows `a_i, b_i` (`1 <= i < n`), degree -1
/// loops `alpha` at 1 and `beta` at `n` with `alpha^2 = beta^2 = 0`,
/// `d(alpha) = f_0 e_1`, `d(beta) = f_n e_n`.
pub fn contraction_quiver(
    n: usize,
    ring: &Arc<PolyRing>,
    f: &[Poly],
    convention: ArrowConvention,
) -> Result<Presentation> {
    if n == 0 {
        return Err(structure("contraction quiver needs n >= 1"));
    }
    if f.len() != n + 1 {
        return Err(structure(format!("need {} polynomials f_0..f_n, got {}", n + 1, f.len())));
    }
    if f.iter().any(|p| !crate::exactalg::poly_same_ring(p.ring(), ring)) {
        return Err(Error::RingMismatch("f must live in the coefficient ring".into()));
    }
    let mut q = Quiver::new((1..=n).map(|i| i.to_string()))?;
    for i in 1..n {
        let (lo, hi) = (i.to_string(), (i + 1).to_string());
        match convention {
            ArrowConvention::Tube => {
                q.add_arrow(format!("a{i}"), &lo, &hi, 0)?;
                q.add_arrow(format!("b{i}"), &hi, &lo, 0)?;
            }
            ArrowConvention::Reversed => {
                q.add_arrow(format!("a{i}"), &hi, &lo, 0)?;
                q.add_arrow(format!("b{i}"), &lo, &hi, 0)?;
            }
        }
    }
    q.add_arrow("alpha", "1", "1", -1)?;
    q.add_arrow("beta", &n.to_string(), &n.to_string(), -1)?;
    let mut rules = Vec::new();
    for (i, fi) in f.iter().enumerate().take(n).skip(1) {
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        let (ab_at, ba_at) = match convention {
            ArrowConvention::Tube => (i + 1, i),
            ArrowConvention::Reversed => (i, i + 1),
        };
        rules.push(rule(&q, &a, &b, fi.clone(), &ab_at.to_string())?);
        rules.push(rule(&q, &b, &a, fi.clone(), &ba_at.to_string())?);
    }
    rules.push(zero_rule(&q, "alpha", ring)?);
    rules.push(zero_rule(&q, "beta", ring)?);
    let mut diff = BTreeMap::new();
    diff.insert(q.require_arrow("alpha")?, AlgebraElement::term(q.lazy("1")?, f[0].clone()));
    diff.insert(q.require_arrow("beta")?, AlgebraElement::term(q.lazy(&n.to_string())?, f[n].clone()));
    Presentation::new(q, ring.clone(), rules, diff)
}

/// Adjoins a degree -1 loop `eps` at `vertex` with `d(eps) = e_vertex` and
/// no new relations.
pub fn drinfeld_localize(pres: &Presentation, vertex: &str) -> Result<Presentation> {
    if let Some(a) = pres.quiver().arrows().iter().find(|a| a.deg != 0) {
        return Err(structure(format!(
            "localisation expects a degree-0 algebra; `{}` has degree {}",
            a.name, a.deg
        )));
    }
    let ring = pres.ring().clone();
    pres.with_arrow("eps", vertex, -1, |q, _| Ok(AlgebraElement::term(q.lazy(vertex)?, ring.one())))
}

/// Monotone `a`-path of `len` arrows starting at vertex `from` in
/// `tube_algebra(n)`.
pub fn tube_a_path(pres: &Presentation, from: usize, len: usize) -> PathWord {
    tube_path(pres, from, len, true)
}

/// Monotone `b`-path of `len` arrows starting at vertex `from`.
pub fn tube_b_path(pres: &Presentation, from: usize, len: usize) -> PathWord {
    tube_path(pres, from, len, false)
}

fn tube_path(pres: &Presentation, from: usize, len: usize, forward: bool) -> PathWord {
    let q = pres.quiver();
    let m = q.vertices().len();
    let mut names = Vec::with_capacity(len);
    let mut v = from % m;
    for _ in 0..len {
        if forward {
            names.push(format!("a{v}"));
            v = (v + 1) % m;
        } else {
            let prev = (v + m - 1) % m;
            names.push(format!("b{prev}"));
            v = prev;
        }
    }
    if names.is_empty() {
        return PathWord::lazy(from % m);
    }
    names.reverse();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    q.word(&refs).expect("monotone path is composable")
}

/// `u`: sum over vertices of the full `a`-cycle based there.
pub fn tube_u(pres: &Presentation) -> AlgebraElement {
    tube_cycle(pres, true)
}

/// `v`: sum over vertices of the full `b`-cycle based there.
pub fn tube_v(pres: &Presentation) -> AlgebraElement {
    tube_cycle(pres, false)
}

fn tube_cycle(pres: &Presentation, forward: bool) -> AlgebraElement {
    let m = pres.quiver().vertices().len();
    let mut e = AlgebraElement::zero(pres.ring());
    for i in 0..m {
        e.add_term(tube_path(pres, i, m, forward), pres.ring().one());
    }
    e
}

/// Closed-form number of irreducible words `i -> j` of length at most
/// `len` in `tube_algebra(n)`: one `a`-path and one `b`-path per winding,
/// plus the lazy path when `i == j`.
pub fn tube_basis_count(n: usize, i: usize, j: usize, len: usize) -> usize {
    let m = n + 1;
    let count = |first: usize| -> usize {
        let first = if first == 0 { m } else { first };
        if first > len {
            0
        } else {
            (len - first) / m + 1
        }
    };
    let fwd = (j + m - i) % m;
    let back = (i + m - j) % m;
    count(fwd) + count(back) + usize::from(i == j)
}
