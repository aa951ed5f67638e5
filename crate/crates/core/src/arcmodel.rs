//! Marked surfaces encoded as ribbon-graph data, and the quiver
//! presentation they generate.
//!
//! A surface is cut by arcs into faces. Boundary cycles list arc-ends
//! (`L0+`, `L0-`) and stops in cyclic order; the segment `L0+>` runs from
//! the arc-end `L0+` to the next arc-end on its boundary cycle. Faces are
//! cyclic sequences of arc sides (`L0`) and segments.
//!
//! Generation rules:
//! - each stop-free segment from an end of `A` to an end of `B` is an
//!   arrow `A -> B`;
//! - a quadrilateral `[A, s, B, s']` marked `i` with arrows `x: A -> B`
//!   (from `s`) and `y: B -> A` emits `x*y -> t_i e_B`, `y*x -> t_i e_A`;
//! - a bigon `[A, s]` marked `i` makes the loop `g` from `s` a degree -1
//!   chord with `d(g) = t_i e_A` and `g*g -> 0`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{structure, Error, Result};
use crate::exactalg::{Field, PolyRing};
use crate::quivalg::{AlgebraElement, PathWord, Presentation, Quiver, RewriteRule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub name: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub cycle: Vec<String>,
    pub mark: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub boundaries: Vec<Vec<String>>,
    pub arcs: Vec<ArcSpec>,
    pub faces: Vec<Face>,
}

/// A presentation together with which face produced each rule or
/// differential.
#[derive(Clone, Debug)]
pub struct GeneratedPresentation {
    pub presentation: Presentation,
    pub provenance: Vec<String>,
}

fn seg(end: &str) -> String {
    format!("{end}>")
}

/// Annulus cut by arcs `L0..Ln`, each joining the two boundary circles, into
/// `n+1` quadrilaterals; face `i` lies between `L_i` and `L_{i+1}` and
/// carries the marked point `z_i`.
pub fn annulus(n: usize) -> MarkedSurface {
    let m = n + 1;
    let outer: Vec<String> = (0..m).map(|i| format!("L{i}+")).collect();
    let inner: Vec<String> = std::iter::once(0)
        .chain((1..m).rev())
        .map(|i| format!("L{i}-"))
        .collect();
    let arcs = (0..m)
        .map(|i| ArcSpec { name: format!("L{i}"), ends: [format!("L{i}+"), format!("L{i}-")] })
        .collect();
    let faces = (0..m)
        .map(|i| {
            let j = (i + 1) % m;
            Face {
                cycle: vec![format!("L{i}"), seg(&format!("L{i}+")), format!("L{j}"), seg(&format!("L{j}-"))],
                mark: Some(i),
            }
        })
        .collect();
    MarkedSurface { boundaries: vec![outer, inner], arcs, faces }
}

/// Disc left after excising `L0` from the annulus: arcs `L1..Ln`, `n-1`
/// quadrilaterals marked `1..n-1`, a bigon on `L1` marked 0 and a bigon on
/// `Ln` marked `n`.
pub fn disc(n: usize) -> Result<MarkedSurface> {
    if n == 0 {
        return Err(structure("disc needs at least one arc"));
    }
    let mut cycle: Vec<String> = (1..=n).map(|i| format!("L{i}+")).collect();
    cycle.extend((1..=n).rev().map(|i| format!("L{i}-")));
    let arcs = (1..=n)
        .map(|i| ArcSpec { name: format!("L{i}"), ends: [format!("L{i}+"), format!("L{i}-")] })
        .collect();
    let mut faces: Vec<Face> = (1..n)
        .map(|i| Face {
            cycle: vec![format!("L{i}"), seg(&format!("L{i}+")), format!("L{}", i + 1), seg(&format!("L{}-", i + 1))],
            mark: Some(i),
        })
        .collect();
    faces.push(Face { cycle: vec!["L1".into(), seg("L1-")], mark: Some(0) });
    faces.push(Face { cycle: vec![format!("L{n}"), seg(&format!("L{n}+"))], mark: Some(n) });
    Ok(MarkedSurface { boundaries: vec![cycle], arcs, faces })
}

struct Segment {
    from_arc: usize,
    to_arc: usize,
    blocked: bool,
}

impl MarkedSurface {
    fn arc_of_end(&self) -> Result<HashMap<&str, usize>> {
        let mut out = HashMap::new();
        for (k, a) in self.arcs.iter().enumerate() {
            for e in &a.ends {
                if out.insert(e.as_str(), k).is_some() {
                    return Err(structure(format!("arc-end `{e}` used twice")));
                }
            }
        }
        Ok(out)
    }

    fn segments(&self) -> Result<BTreeMap<String, Segment>> {
        let ends = self.arc_of_end()?;
        let mut seen = HashMap::new();
        let mut out = BTreeMap::new();
        for cyc in &self.boundaries {
            for s in cyc {
                if ends.contains_key(s.as_str()) && seen.insert(s.as_str(), ()).is_some() {
                    return Err(structure(format!("arc-end `{s}` appears twice on the boundary")));
                }
            }
            let positions: Vec<usize> = (0..cyc.len()).filter(|&i| ends.contains_key(cyc[i].as_str())).collect();
            for (k, &p) in positions.iter().enumerate() {
                let q = positions[(k + 1) % positions.len()];
                let blocked = if q > p {
                    q - p > 1
                } else {
                    cyc.len() - p + q > 1
                };
                out.insert(
                    seg(&cyc[p]),
                    Segment { from_arc: ends[cyc[p].as_str()], to_arc: ends[cyc[q].as_str()], blocked },
                );
            }
        }
        if let Some(e) = ends.keys().find(|e| !seen.contains_key(*e)) {
            return Err(structure(format!("arc-end `{e}` is not on any boundary")));
        }
        Ok(out)
    }

    /// `V - E + F` for the decomposition into boundary points, arcs plus
    /// boundary pieces, and faces.
    pub fn euler_characteristic(&self) -> i64 {
        let v: usize = self.boundaries.iter().map(Vec::len).sum();
        let e = self.arcs.len() + v;
        v as i64 - e as i64 + self.faces.len() as i64
    }

    pub fn total_marks(&self) -> usize {
        self.faces.iter().filter(|f| f.mark.is_some()).count()
    }

    pub fn generate_presentation(&self, field: Field) -> Result<GeneratedPresentation> {
        let segments = self.segments()?;
        let arc_index: HashMap<&str, usize> =
            self.arcs.iter().enumerate().map(|(k, a)| (a.name.as_str(), k)).collect();
        let max_mark = self.faces.iter().filter_map(|f| f.mark).max().unwrap_or(0);
        let ring = PolyRing::t_ring(field, max_mark);

        // Classify faces first so that every segment gets a degree.
        let mut seg_deg: HashMap<&str, i32> = HashMap::new();
        let mut seg_face: HashMap<&str, usize> = HashMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            match f.cycle.len() {
                2 | 4 => {}
                k if k >= 5 => {
                    return Err(Error::Unsupported(format!("face {fi} has {k} sides; only bigons and quadrilaterals")))
                }
                k => return Err(structure(format!("face {fi} has {k} sides"))),
            }
            if f.cycle.len() == 2 && f.mark.is_none() {
                return Err(structure(format!("bigon face {fi} carries no marked point")));
            }
            for (k, side) in f.cycle.iter().enumerate() {
                let is_seg = k % 2 == 1;
                if is_seg {
                    let s = segments
                        .get(side)
                        .ok_or_else(|| structure(format!("face {fi}: unknown segment `{side}`")))?;
                    let before = &f.cycle[k - 1];
                    let after = &f.cycle[(k + 1) % f.cycle.len()];
                    let (Some(&a), Some(&b)) = (arc_index.get(before.as_str()), arc_index.get(after.as_str())) else {
                        return Err(structure(format!("face {fi}: segments must alternate with arcs")));
                    };
                    if s.from_arc != a || s.to_arc != b {
                        return Err(structure(format!("face {fi}: segment `{side}` does not join `{before}` to `{after}`")));
                    }
                    if seg_face.insert(side.as_str(), fi).is_some() {
                        return Err(structure(format!("segment `{side}` borders two faces")));
                    }
                    seg_deg.insert(side.as_str(), if f.cycle.len() == 2 { -1 } else { 0 });
                } else if !arc_index.contains_key(side.as_str()) {
                    return Err(structure(format!("face {fi}: `{side}` is not an arc")));
                }
            }
        }

        let mut q = Quiver::new(self.arcs.iter().map(|a| a.name.clone()))?;
        let mut arrow_of_seg: HashMap<&str, usize> = HashMap::new();
        for (k, (name, s)) in segments.iter().enumerate() {
            if s.blocked {
                continue;
            }
            let deg = *seg_deg.get(name.as_str()).unwrap_or(&0);
            let a = q.add_arrow(
                format!("c{k}"),
                &self.arcs[s.from_arc].name,
                &self.arcs[s.to_arc].name,
                deg,
            )?;
            arrow_of_seg.insert(name.as_str(), a);
        }

        let mut rules = Vec::new();
        let mut diff = BTreeMap::new();
        let mut provenance = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            let Some(mark) = f.mark else { continue };
            let t = ring.var(mark);
            let arrow = |k: usize| -> Result<usize> {
                arrow_of_seg
                    .get(f.cycle[k].as_str())
                    .copied()
                    .ok_or_else(|| structure(format!("face {fi}: segment `{}` passes a stop", f.cycle[k])))
            };
            if f.cycle.len() == 4 {
                let (x, y) = (arrow(1)?, arrow(3)?);
                let (va, vb) = (q.arrow(x).src, q.arrow(x).tgt);
                let ea = PathWord::lazy(va);
                let eb = PathWord::lazy(vb);
                rules.push(RewriteRule { lhs: (x, y), rhs: AlgebraElement::term(eb, t.clone()) });
                rules.push(RewriteRule { lhs: (y, x), rhs: AlgebraElement::term(ea, t.clone()) });
                provenance.push(format!(
                    "face {fi} (quadrilateral, t{mark}): {x}*{y}, {y}*{x}",
                    x = q.arrow(x).name,
                    y = q.arrow(y).name
                ));
            } else {
                let g = arrow(1)?;
                let v = q.arrow(g).src;
                diff.insert(g, AlgebraElement::term(PathWord::lazy(v), t.clone()));
                rules.push(RewriteRule { lhs: (g, g), rhs: AlgebraElement::zero(&ring) });
                provenance.push(format!("face {fi} (bigon, t{mark}): d({}), {0}*{0}", q.arrow(g).name));
            }
        }
        let presentation = Presentation::new(q, ring, rules, diff)?;
        Ok(GeneratedPresentation { presentation, provenance })
    }
}

/// Structural equality of two presentations: vertices matched by the label
/// map, arrows by a bijection preserving endpoints and degree, under which
/// the rules and the differential coincide. Returns the arrow bijection
/// (indices of `a` to indices of `b`) on success.
pub fn structurally_equal(
    a: &Presentation,
    b: &Presentation,
    relabel: impl Fn(&str) -> String,
) -> std::result::Result<Vec<usize>, String> {
    let (qa, qb) = (a.quiver(), b.quiver());
    if **a.ring() != **b.ring() {
        return Err(format!("coefficient rings differ: {:?} vs {:?}", a.ring().vars(), b.ring().vars()));
    }
    if qa.vertices().len() != qb.vertices().len() || qa.arrows().len() != qb.arrows().len() {
        return Err("vertex or arrow counts differ".into());
    }
    let mut vmap = Vec::new();
    for v in qa.vertices() {
        let label = relabel(v);
        vmap.push(qb.vertex_index(&label).ok_or_else(|| format!("no vertex `{label}`"))?);
    }
    if a.rules().len() != b.rules().len() {
        return Err(format!("{} rules vs {}", a.rules().len(), b.rules().len()));
    }
    let key = |q: &Quiver, i: usize, map: Option<&[usize]>| {
        let ar = q.arrow(i);
        match map {
            Some(m) => (m[ar.src], m[ar.tgt], ar.deg),
            None => (ar.src, ar.tgt, ar.deg),
        }
    };
    let mut classes: BTreeMap<(usize, usize, i32), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for i in 0..qa.arrows().len() {
        classes.entry(key(qa, i, Some(&vmap))).or_default().0.push(i);
    }
    for i in 0..qb.arrows().len() {
        classes.entry(key(qb, i, None)).or_default().1.push(i);
    }
    if classes.values().any(|(x, y)| x.len() != y.len()) {
        return Err("arrow endpoint/degree classes differ".into());
    }
    let classes: Vec<(Vec<usize>, Vec<usize>)> = classes.into_values().collect();
    let mut amap = vec![usize::MAX; qa.arrows().len()];
    if search(a, b, &vmap, &classes, 0, &mut amap) {
        Ok(amap)
    } else {
        Err("no arrow bijection matches rules and differential".into())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn search(
    a: &Presentation,
    b: &Presentation,
    vmap: &[usize],
    classes: &[(Vec<usize>, Vec<usize>)],
    depth: usize,
    amap: &mut Vec<usize>,
) -> bool {
    if depth == classes.len() {
        return matches(a, b, vmap, amap);
    }
    let (xs, ys) = &classes[depth];
    for perm in permutations(xs.len()) {
        for (k, &x) in xs.iter().enumerate() {
            amap[x] = ys[perm[k]];
        }
        if search(a, b, vmap, classes, depth + 1, amap) {
            return true;
        }
    }
    false
}

/// Transports an element of `a` along the vertex and arrow maps.
pub fn transport(e: &AlgebraElement, ring: &Arc<PolyRing>, vmap: &[usize], amap: &[usize]) -> AlgebraElement {
    let mut out = AlgebraElement::zero(ring);
    for (w, c) in e.terms() {
        out.add_term(transport_word(w, vmap, amap), c.clone());
    }
    out
}

pub fn transport_word(w: &PathWord, vmap: &[usize], amap: &[usize]) -> PathWord {
    if w.is_lazy() {
        return PathWord::lazy(vmap[w.src()]);
    }
    PathWord::from_parts(w.arrows().iter().map(|&x| amap[x]).collect(), vmap[w.src()], vmap[w.tgt()])
}

fn matches(a: &Presentation, b: &Presentation, vmap: &[usize], amap: &[usize]) -> bool {
    for r in a.rules() {
        let Some(rb) = b.rule(amap[r.lhs.0], amap[r.lhs.1]) else { return false };
        if transport(&r.rhs, b.ring(), vmap, amap) != rb.rhs {
            return false;
        }
    }
    (0..a.quiver().arrows().len())
        .all(|x| transport(&a.diff_of_arrow(x), b.ring(), vmap, amap) == b.diff_of_arrow(amap[x]))
}

/// Vertex map used to compare generated presentations with the algebraic
/// constructors: arc `L{i}` corresponds to vertex `{i}`.
pub fn arc_label(v: &str) -> String {
    v.strip_prefix('L').unwrap_or(v).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quivalg::{contraction_quiver, tube_algebra, ArrowConvention};

    #[test]
    fn annulus_shapes() {
        let s = annulus(2);
        assert_eq!((s.arcs.len(), s.faces.len()), (3, 3));
        assert!(s.faces.iter().all(|f| f.cycle.len() == 4));
        let s0 = annulus(0);
        assert_eq!((s0.arcs.len(), s0.faces.len()), (1, 1));
        assert_eq!(s0.faces[0].mark, Some(0));
        for n in 0..=8 {
            assert_eq!(annulus(n).euler_characteristic(), 0);
            assert_eq!(annulus(n).total_marks(), n + 1);
        }
    }

    #[test]
    fn disc_shapes() {
        assert!(disc(0).is_err());
        let d1 = disc(1).unwrap();
        assert_eq!((d1.arcs.len(), d1.faces.len()), (1, 2));
        assert!(d1.faces.iter().all(|f| f.cycle.len() == 2 && f.cycle[0] == "L1"));
        let d2 = disc(2).unwrap();
        assert_eq!(d2.faces.len(), 3);
        assert_eq!(d2.faces[0].mark, Some(1));
        for n in 1..=8 {
            assert_eq!(disc(n).unwrap().euler_characteristic(), 1);
            assert_eq!(disc(n).unwrap().total_marks(), n + 1);
        }
    }

    #[test]
    fn degenerate_annulus() {
        let g = annulus(0).generate_presentation(Field::Rationals).unwrap().presentation;
        assert_eq!(g.quiver().arrows().len(), 2);
        assert!(g.quiver().arrows().iter().all(|a| a.src == 0 && a.tgt == 0 && a.deg == 0));
        for (x, y) in [("c0", "c1"), ("c1", "c0")] {
            assert_eq!(g.display(&g.el(&[x, y]).unwrap()), "t0*eL0");
        }
    }

    #[test]
    fn annulus_generates_the_tube_algebra() {
        for n in 0..=5 {
            let g = annulus(n).generate_presentation(Field::Rationals).unwrap().presentation;
            let t = tube_algebra(n, &PolyRing::t_ring(Field::Rationals, n)).unwrap();
            structurally_equal(&g, &t, arc_label).unwrap();
        }
    }

    #[test]
    fn disc_generates_the_contraction_quiver() {
        for n in 1..=5 {
            let g = disc(n).unwrap().generate_presentation(Field::Rationals).unwrap().presentation;
            let r = PolyRing::t_ring(Field::Rationals, n);
            let f: Vec<_> = (0..=n).map(|i| r.var(i)).collect();
            let c = contraction_quiver(n, &r, &f, ArrowConvention::Tube).unwrap();
            structurally_equal(&g, &c, arc_label).unwrap();
            let degs: Vec<i32> = g.quiver().arrows().iter().map(|a| a.deg).collect();
            assert_eq!(degs.iter().filter(|&&d| d == -1).count(), 2);
        }
    }

    #[test]
    fn distinct_presentations_are_told_apart() {
        let r = PolyRing::t_ring(Field::Rationals, 2);
        let t = tube_algebra(2, &r).unwrap();
        let g = annulus(2).generate_presentation(Field::Rationals).unwrap().presentation;
        // Swap the marked points of two faces: same quiver, different rules.
        let mut s = annulus(2);
        s.faces[0].mark = Some(1);
        s.faces[1].mark = Some(0);
        let h = s.generate_presentation(Field::Rationals).unwrap().presentation;
        assert!(structurally_equal(&g, &t, arc_label).is_ok());
        assert!(structurally_equal(&h, &t, arc_label).is_err());
    }

    #[test]
    fn unsupported_faces() {
        let mut s = annulus(2);
        s.faces[0].cycle.push("L9".into());
        assert!(matches!(s.generate_presentation(Field::Rationals), Err(Error::Unsupported(_))));
        let mut d = disc(1).unwrap();
        d.faces[0].mark = None;
        assert!(d.generate_presentation(Field::Rationals).is_err());
    }

    #[test]
    fn stops_block_boundary_paths() {
        let mut s = annulus(1);
        s.boundaries[0].insert(1, "s0".into());
        assert_eq!(s.euler_characteristic(), 0);
        // The blocked segment no longer yields an arrow, so its face cannot
        // produce relations.
        assert!(s.generate_presentation(Field::Rationals).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = disc(3).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        let back: MarkedSurface = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
