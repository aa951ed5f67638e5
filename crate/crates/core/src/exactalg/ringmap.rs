use std::sync::Arc;

use super::field::Field;
use super::poly::{same_ring, Poly, PolyRing};
use crate::error::{Error, Result};

/// Ring homomorphism `k[v_0..] -> k'[w_0..]` given by the images of the
/// source variables. The coefficient fields must agree, except that a
/// rational source may map into any field whose characteristic does not
/// divide the denominators involved.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: &Arc<PolyRing>, target: &Arc<PolyRing>, images: Vec<Poly>) -> Result<Self> {
        if source.field() != target.field() && source.field() != Field::Rationals {
            return Err(Error::RingMismatch(format!(
                "cannot map coefficients from {} to {}",
                source.field(),
                target.field()
            )));
        }
        if images.len() != source.nvars() {
            return Err(Error::Structure(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        for im in &images {
            if !same_ring(im.ring(), target) {
                return Err(Error::RingMismatch("image outside the target ring".into()));
            }
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    /// Images given in the target's text syntax.
    pub fn parse(source: &Arc<PolyRing>, target: &Arc<PolyRing>, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Arc<PolyRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if !same_ring(p.ring(), &self.source) {
            return Err(Error::RingMismatch(format!(
                "polynomial over {:?} given to a map from {:?}",
                p.ring().vars(),
                self.source.vars()
            )));
        }
        let tf = self.target.field();
        let mut out = self.target.zero();
        for (m, c) in p.terms() {
            let mut term = self.target.constant(tf.from_rational(c)?);
            for (img, &e) in self.images.iter().zip(&m.0) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        let images = self.images.iter().map(|p| other.apply(p)).collect::<Result<Vec<_>>>()?;
        RingMap::new(&self.source, &other.target, images)
    }
}

/// Free-function form of [`RingMap::apply`].
pub fn substitute(p: &Poly, m: &RingMap) -> Result<Poly> {
    m.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conifold_substitution() {
        let r = PolyRing::t_ring(Field::Rationals, 1);
        let s = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        let m = RingMap::parse(&r, &s, &["x", "y"]).unwrap();
        let p = r.parse("t0*t1").unwrap();
        assert_eq!(m.apply(&p).unwrap().to_string(), "x*y");
    }

    #[test]
    fn diagonal_substitution() {
        let r = PolyRing::t_ring(Field::Rationals, 2);
        let s = PolyRing::new(Field::Rationals, ["t"]).unwrap();
        let m = RingMap::parse(&r, &s, &["t", "t", "t"]).unwrap();
        let p = r.parse("t0*t1*t2").unwrap();
        assert_eq!(m.apply(&p).unwrap().to_string(), "t^3");
    }

    #[test]
    fn identity_is_identity() {
        let r = PolyRing::t_ring(Field::Prime(7), 2);
        let p = r.parse("3*t0^2*t2 - t1 + 5").unwrap();
        assert_eq!(RingMap::identity(&r).apply(&p).unwrap(), p);
    }

    #[test]
    fn rational_source_reduces_into_prime_target() {
        let r = PolyRing::t_ring(Field::Rationals, 0);
        let s = PolyRing::new(Field::Prime(2), ["x"]).unwrap();
        let m = RingMap::parse(&r, &s, &["x"]).unwrap();
        assert!(m.apply(&r.parse("2*t0 + 1").unwrap()).unwrap().is_one());
        assert!(RingMap::parse(&s, &r, &["t0"]).is_err());
    }

    #[test]
    fn wrong_source_rejected() {
        let r = PolyRing::t_ring(Field::Rationals, 1);
        let s = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        let m = RingMap::identity(&r);
        assert!(m.apply(&s.var(0)).is_err());
        assert!(RingMap::parse(&r, &s, &["x"]).is_err());
    }
}
