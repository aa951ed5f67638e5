use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::truncated::{box_cohomology, Bounds, CohomologyReport, Status, SLACK};
use crate::error::{Error, Result};
use crate::exactalg::{monomials_up_to, Echelon, Field, Monomial, Poly, PolyRing, Scalar, SparseVec};

/// Cochain complex of free modules over a polynomial ring; `∂` raises the
/// degree by one. `diff[&i][j][k]` is the coefficient of generator `j` of
/// degree `i+1` in `∂` of generator `k` of degree `i`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Arc<PolyRing>,
    gens: BTreeMap<i32, Vec<String>>,
    diff: BTreeMap<i32, Vec<Vec<Poly>>>,
}

impl FreeComplex {
    /// Builds the complex from `(source label, [(target label, coefficient)])`
    /// and fails unless `∂∘∂ = 0` exactly.
    pub fn new(
        ring: &Arc<PolyRing>,
        gens: &[(i32, &[&str])],
        d: &[(&str, &[(&str, &str)])],
    ) -> Result<FreeComplex> {
        let mut g = BTreeMap::new();
        let mut find = BTreeMap::new();
        for (deg, names) in gens {
            for (k, n) in names.iter().enumerate() {
                if find.insert(n.to_string(), (*deg, k)).is_some() {
                    return Err(Error::Structure(format!("duplicate generator `{n}`")));
                }
            }
            g.insert(*deg, names.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        }
        let mut diff: BTreeMap<i32, Vec<Vec<Poly>>> = BTreeMap::new();
        for (&deg, names) in &g {
            let rows = g.get(&(deg + 1)).map_or(0, Vec::len);
            diff.insert(deg, vec![vec![ring.zero(); names.len()]; rows]);
        }
        let lookup = |n: &str| find.get(n).copied().ok_or_else(|| Error::Structure(format!("unknown generator `{n}`")));
        for (src, terms) in d {
            let (ds, ks) = lookup(src)?;
            for (tgt, coef) in *terms {
                let (dt, kt) = lookup(tgt)?;
                if dt != ds + 1 {
                    return Err(Error::Structure(format!("∂{src} has a term in {tgt} of the wrong degree")));
                }
                diff.get_mut(&ds).unwrap()[kt][ks] = ring.parse(coef)?;
            }
        }
        let c = FreeComplex { ring: ring.clone(), gens: g, diff };
        c.check_d_squared()?;
        Ok(c)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.gens.keys().copied()
    }

    pub fn generators(&self, deg: i32) -> &[String] {
        self.gens.get(&deg).map_or(&[], Vec::as_slice)
    }

    pub fn ranks(&self) -> Vec<(i32, usize)> {
        self.gens.iter().map(|(&d, g)| (d, g.len())).collect()
    }

    fn d_of(&self, deg: i32, k: usize) -> Vec<(usize, Poly)> {
        let Some(m) = self.diff.get(&deg) else { return Vec::new() };
        m.iter().enumerate().filter(|(_, r)| !r[k].is_zero()).map(|(j, r)| (j, r[k].clone())).collect()
    }

    pub fn differential_text(&self, name: &str) -> Option<String> {
        let (&deg, names) = self.gens.iter().find(|(_, v)| v.iter().any(|n| n == name))?;
        let k = names.iter().position(|n| n == name)?;
        let terms: Vec<String> = self
            .d_of(deg, k)
            .into_iter()
            .map(|(j, c)| {
                let t = &self.gens[&(deg + 1)][j];
                if c.is_one() {
                    t.clone()
                } else {
                    format!("({c})*{t}")
                }
            })
            .collect();
        Some(if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for (&deg, names) in &self.gens {
            for (k, n) in names.iter().enumerate() {
                let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
                for (j, c) in self.d_of(deg, k) {
                    for (l, c2) in self.d_of(deg + 1, j) {
                        let e = acc.entry(l).or_insert_with(|| self.ring.zero());
                        *e = &*e + &(&c * &c2);
                    }
                }
                if let Some((l, c)) = acc.iter().find(|(_, c)| !c.is_zero()) {
                    return Err(Error::Verification(format!(
                        "∂∂{n} = ({c})*{} ≠ 0",
                        self.gens[&(deg + 2)][*l]
                    )));
                }
            }
        }
        Ok(())
    }

    fn rank_at(&self, deg: i32, bound: u32) -> (usize, Vec<String>) {
        let nv = self.ring.nvars();
        let boxed = |d: i32, b: u32| -> Vec<(usize, Monomial)> {
            let mut out = Vec::new();
            for m in monomials_up_to(nv, b) {
                for k in 0..self.generators(d).len() {
                    out.push((k, m.clone()));
                }
            }
            out
        };
        let apply = |d: i32| {
            move |(k, m): &(usize, Monomial)| -> Vec<((usize, Monomial), Scalar)> {
                let mut out = Vec::new();
                for (j, c) in self.d_of(d, *k) {
                    for (m2, s) in c.terms() {
                        out.push(((j, m2.mul(m)), s.clone()));
                    }
                }
                out
            }
        };
        let domain = boxed(deg, bound);
        let pre = boxed(deg - 1, bound + SLACK as u32);
        let (rank, gens) = box_cohomology(self.ring.field(), &domain, apply(deg), &pre, apply(deg - 1));
        let names = gens
            .iter()
            .map(|v| {
                let terms: Vec<String> = v
                    .iter()
                    .map(|(&i, c)| {
                        let (k, m) = &domain[i];
                        let p = self.ring.monomial(m.clone(), c.clone());
                        let g = &self.generators(deg)[*k];
                        if p.is_one() {
                            g.clone()
                        } else {
                            format!("({p})*{g}")
                        }
                    })
                    .collect();
                terms.join(" + ")
            })
            .collect();
        (rank, names)
    }

    /// `H^deg` over `k` with coefficients of degree `<= bound`.
    pub fn truncated_cohomology(&self, deg: i32, bound: u32) -> CohomologyReport {
        let (rank, generators) = self.rank_at(deg, bound);
        let (wider, _) = self.rank_at(deg, bound + SLACK as u32);
        CohomologyReport {
            degree: deg,
            rank,
            generators,
            bounds: Bounds { len: 0, polydeg: bound },
            status: if rank == wider { Status::Stable } else { Status::Inconclusive },
            rank_at_wider_bound: wider,
        }
    }

    pub fn cohomology(&self, bound: u32) -> Vec<CohomologyReport> {
        self.degrees().map(|d| self.truncated_cohomology(d, bound)).collect()
    }

    /// Cohomology dimensions of the `k`-complex obtained by evaluating the
    /// variables at `values`.
    pub fn specialised_cohomology(&self, values: &[Scalar]) -> Result<Vec<(i32, usize)>> {
        if values.len() != self.ring.nvars() {
            return Err(Error::Structure("wrong number of values".into()));
        }
        let f: Field = self.ring.field();
        let eval = |p: &Poly| -> Scalar {
            let mut acc = f.zero();
            for (m, c) in p.terms() {
                let mut t = c.clone();
                for (v, &e) in values.iter().zip(&m.0) {
                    for _ in 0..e {
                        t = f.mul(&t, v);
                    }
                }
                acc = f.add(&acc, &t);
            }
            acc
        };
        let rank_of = |deg: i32| -> usize {
            let Some(m) = self.diff.get(&deg) else { return 0 };
            let mut ech = Echelon::new(f);
            for k in 0..self.generators(deg).len() {
                let col: SparseVec = m
                    .iter()
                    .enumerate()
                    .map(|(j, r)| (j, eval(&r[k])))
                    .filter(|(_, c)| !num_traits::Zero::is_zero(c))
                    .collect();
                ech.push(&col);
            }
            ech.rank()
        };
        Ok(self.degrees().map(|d| (d, self.generators(d).len() - rank_of(d) - rank_of(d - 1))).collect())
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .gens
            .iter()
            .map(|(d, g)| {
                let ds: BTreeMap<&str, String> =
                    g.iter().map(|n| (n.as_str(), self.differential_text(n).unwrap_or_default())).collect();
                json!({"degree": d, "generators": g, "differential": ds})
            })
            .collect();
        json!({"ring": self.ring.vars(), "field": self.ring.field().to_string(), "terms": gens})
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereVariant {
    /// `∂e = 0`, `∂ȳ = 0`, `∂m = t0·x̄ − t1·z̄`.
    Amended,
    /// The differentials exactly as printed: `∂e = m`, `∂m = t1·x̄ − t0·z̄`.
    Printed,
}

/// Free resolution-like complex over `k[t0,t1]` for the 3-sphere, with
/// generators `y | x, z | e | m | x̄, z̄ | ȳ` in degrees −2..3.
///
/// The printed differentials do not square to zero: with
/// `∂m = t1·x̄ − t0·z̄` one gets `∂∂m = (t1² − t0²)·ȳ`, and `∂e = m`
/// gives `∂∂e ≠ 0`. Within the printed generator spans the only
/// assignment with `∂² = 0` that also has cohomology `k` in degrees 0 and 3
/// is `∂e = 0`, `∂ȳ = 0`, `∂m = t0·x̄ − t1·z̄`.
pub fn sphere_complex(field: Field, variant: SphereVariant) -> Result<FreeComplex> {
    let ring = PolyRing::t_ring(field, 1);
    let gens: &[(i32, &[&str])] =
        &[(-2, &["y"]), (-1, &["x", "z"]), (0, &["e"]), (1, &["m"]), (2, &["xbar", "zbar"]), (3, &["ybar"])];
    let common: [(&str, &[(&str, &str)]); 5] = [
        ("y", &[("z", "t1"), ("x", "-t0")]),
        ("x", &[("e", "t1")]),
        ("z", &[("e", "t0")]),
        ("xbar", &[("ybar", "t1")]),
        ("zbar", &[("ybar", "t0")]),
    ];
    let mut d: Vec<(&str, &[(&str, &str)])> = common.to_vec();
    match variant {
        SphereVariant::Amended => d.push(("m", &[("xbar", "t0"), ("zbar", "-t1")])),
        SphereVariant::Printed => {
            d.push(("e", &[("m", "1")]));
            d.push(("m", &[("xbar", "t1"), ("zbar", "-t0")]));
        }
    }
    FreeComplex::new(&ring, gens, &d)
}
