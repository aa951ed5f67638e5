use std::collections::BTreeMap;
use std::sync::Arc;

use super::quiver::{PathWord, Quiver};
use crate::exactalg::{Poly, PolyRing};

/// Finite linear combination of paths with polynomial coefficients. Whether
/// the words are irreducible is the responsibility of the presentation that
/// produced the element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    ring: Arc<PolyRing>,
    terms: BTreeMap<PathWord, Poly>,
}

impl AlgebraElement {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        AlgebraElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn term(word: PathWord, coef: Poly) -> Self {
        let mut e = Self::zero(coef.ring());
        e.add_term(word, coef);
        e
    }

    pub fn word(ring: &Arc<PolyRing>, word: PathWord) -> Self {
        Self::term(word, ring.one())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&PathWord, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &PathWord) -> Poly {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, word: PathWord, coef: Poly) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(old) => {
                let s = &*old + &coef;
                if s.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(word, coef);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    /// Multiplication by a central coefficient.
    pub fn scale(&self, c: &Poly) -> AlgebraElement {
        let mut out = Self::zero(&self.ring);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn map_coefficients(&self, ring: &Arc<PolyRing>, f: impl Fn(&Poly) -> Poly) -> AlgebraElement {
        let mut out = Self::zero(ring);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Text form such as `x*beta-y*alpha` or `(x^2 + y^3)*e1`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (w, c) in &self.terms {
            let word = q.fmt_word(w);
            let term = if c.is_one() {
                word
            } else if (-c).is_one() {
                format!("-{word}")
            } else if c.num_terms() == 1 {
                format!("{c}*{word}")
            } else {
                format!("({c})*{word}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}
