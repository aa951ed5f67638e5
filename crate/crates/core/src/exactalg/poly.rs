use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
///
/// Ordered degree-lexicographically: total degree first, then the
/// exponent of the first declared variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree at most `bound`, in
/// ascending degree-lexicographic order.
pub fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=bound {
        let mut level = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill_degree(&mut cur, 0, d, &mut level);
        level.sort();
        out.extend(level);
    }
    out
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 >= cur.len() {
        if cur.is_empty() {
            if remaining == 0 {
                out.push(Monomial(Vec::new()));
            }
            return;
        }
        cur[pos] = remaining;
        out.push(Monomial(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e;
        fill_degree(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// Polynomial ring `k[v_0, ..., v_{m-1}]` with declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(field: Field, vars: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = !v.is_empty()
                && v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Structure(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Structure(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    /// `k[t_0, ..., t_n]`.
    pub fn t_ring(field: Field, n: usize) -> Arc<Self> {
        Self::new(field, (0..=n).map(|i| format!("t{i}"))).expect("valid names")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: Scalar) -> Poly {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn int(self: &Arc<Self>, c: i64) -> Poly {
        self.constant(self.field.from_int(c))
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: Scalar) -> Poly {
        assert_eq!(m.0.len(), self.nvars(), "exponent vector length");
        let c = self.field.from_rational(&c).expect("coefficient not representable");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: self.clone(), terms }
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Poly {
        self.monomial(Monomial::var(self.nvars(), i), Scalar::one())
    }

    pub fn var_named(self: &Arc<Self>, name: &str) -> Result<Poly> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        Ok(self.var(i))
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Poly> {
        super::parse::parse_poly(self, text)
    }

    pub(crate) fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in self.vars.iter().zip(&m.0) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Sparse polynomial in canonical form: no zero coefficients, exponent
/// vectors sized to the ring.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.vars, other.ring.vars
            )))
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        let f = self.ring.field;
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = f.add(old, c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(m, c.clone());
                }
            }
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = self.ring.field;
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg_ref(&self) -> Poly {
        let f = self.ring.field;
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let f = self.ring.field;
        let c = f.from_rational(c).expect("scalar not representable");
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, &c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        let f = self.ring.field;
        let mut out = self.ring.zero();
        for (m2, c2) in &self.terms {
            out.add_term(m.mul(m2), &f.mul(c, c2));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `{"terms":[{"exp":[2,1],"coef":"3"}, ...]}` with terms in descending order.
    pub fn to_json(&self) -> Value {
        let f = self.ring.field;
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!({"exp": m.0, "coef": f.signed_repr(c).to_string()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(ring: &Arc<PolyRing>, v: &Value) -> Result<Poly> {
        let bad = || Error::Parse(format!("malformed polynomial JSON: {v}"));
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
        let mut out = ring.zero();
        for t in terms {
            let exp: Vec<u32> = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u32).ok_or_else(bad))
                .collect::<Result<_>>()?;
            if exp.len() != ring.nvars() {
                return Err(Error::Parse(format!(
                    "exponent vector {exp:?} does not match {} variables",
                    ring.nvars()
                )));
            }
            let coef_text = t.get("coef").and_then(Value::as_str).ok_or_else(bad)?;
            let coef: Scalar = coef_text
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{coef_text}`")))?;
            let coef = ring.field.from_rational(&coef)?;
            out.add_term(Monomial(exp), &coef);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    /// Canonical text form, e.g. `3*t0^2*t1 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let c = field.signed_repr(c);
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if m.is_one() {
                abs.to_string()
            } else if abs.is_one() {
                self.ring.fmt_monomial(m)
            } else {
                format!("{}*{}", abs, self.ring.fmt_monomial(m))
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(field: Field) -> Arc<PolyRing> {
        PolyRing::new(field, ["x", "y"]).unwrap()
    }

    #[test]
    fn monomial_order_is_deglex() {
        let ms = monomials_up_to(2, 2);
        let shown: Vec<_> = ms.iter().map(|m| m.0.clone()).collect();
        assert_eq!(
            shown,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(monomials_up_to(3, 3).len(), 20);
        assert_eq!(monomials_up_to(0, 4).len(), 1);
    }

    #[test]
    fn monomial_times_monomial() {
        let r = PolyRing::t_ring(Field::Rationals, 1);
        let p = &r.var(0) * &r.var(1);
        assert_eq!(p.to_string(), "t0*t1");
    }

    #[test]
    fn additive_inverse_is_empty() {
        let r = xy(Field::Rationals);
        let p = r.parse("3*x^2*y - 5*y + 7").unwrap();
        let z = &p + &(-&p);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn pagoda_sum_vanishes_only_in_characteristic_two() {
        for (field, expect_zero) in [(Field::Prime(2), true), (Field::Rationals, false), (Field::Prime(3), false)] {
            let r = xy(field);
            let a = r.parse("y + x^2").unwrap();
            let b = r.parse("y - x^2").unwrap();
            let s = &a + &b;
            assert_eq!(s.is_zero(), expect_zero, "{field}");
            if field == Field::Rationals {
                assert_eq!(s, r.parse("2*y").unwrap());
            }
            let d = &a - &b;
            assert_eq!(d.is_zero(), expect_zero);
        }
    }

    #[test]
    fn text_form_is_canonical() {
        let r = PolyRing::t_ring(Field::Rationals, 1);
        let p = r.parse("-1 + t1*t0^2*3").unwrap();
        assert_eq!(p.to_string(), "3*t0^2*t1 - 1");
        let q = r.parse(&p.to_string()).unwrap();
        assert_eq!(p, q);
        let h = r.parse("1/2*t0 - 3/4").unwrap();
        assert_eq!(h.to_string(), "1/2*t0 - 3/4");
    }

    #[test]
    fn json_form() {
        let r = PolyRing::t_ring(Field::Rationals, 1);
        let p = r.parse("3*t0^2*t1 - 1").unwrap();
        let v = p.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"terms":[{"coef":"3","exp":[2,1]},{"coef":"-1","exp":[0,0]}]}"#
        );
        assert_eq!(Poly::from_json(&r, &v).unwrap(), p);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = xy(Field::Rationals).var(0);
        let b = PolyRing::t_ring(Field::Rationals, 1).var(0);
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch(_))));
        let c = xy(Field::Prime(5)).var(0);
        assert!(a.try_add(&c).is_err());
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(PolyRing::new(Field::Rationals, ["x", "x"]).is_err());
        assert!(PolyRing::new(Field::Rationals, ["2x"]).is_err());
    }
}
