use serde::Serialize;
use serde_json::{json, Value};

use super::truncated::{truncated_cohomology_with, Bounds, CohomologyReport, Grading, Status, SLACK};
use crate::error::Result;
use crate::exactalg::{Poly, PolyRing, RingMap};
use crate::quivalg::{contraction_quiver, drinfeld_localize, tube_algebra, ArrowConvention, Presentation};

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationRow {
    pub m: i32,
    pub contraction: CohomologyReport,
    pub localized: CohomologyReport,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub f: [String; 2],
    pub rows: Vec<LocalizationRow>,
}

impl LocalizationReport {
    /// Every rank agrees and every computation is stable.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| {
            r.agree && r.contraction.status == Status::Stable && r.localized.status == Status::Stable
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": self.f,
            "passed": self.passed(),
            "rows": self.rows.iter().map(|r| json!({
                "m": r.m,
                "contraction": r.contraction.to_json(),
                "localized": r.localized.to_json(),
                "agree": r.agree,
            })).collect::<Vec<_>>(),
        })
    }
}

/// For monomial `f`: variables get weight 2 in their own coordinate, the
/// tube arrows `a_i, b_i` the exponent vector of `f_i`, the loops of `Γ`
/// twice that, and `eps` zero.
fn monomial_grading(pres: &Presentation, f: [&Poly; 2]) -> Option<Grading> {
    let exps: Vec<Vec<i64>> = f
        .iter()
        .map(|p| match p.terms().collect::<Vec<_>>()[..] {
            [(m, _)] => Some(m.0.iter().map(|&e| e as i64).collect()),
            _ => None,
        })
        .collect::<Option<_>>()?;
    let nv = pres.ring().nvars();
    let vars = (0..nv).map(|j| (0..nv).map(|k| if j == k { 2 } else { 0 }).collect()).collect();
    let arrows = pres
        .quiver()
        .arrows()
        .iter()
        .map(|a| match a.name.as_str() {
            "a0" | "b0" => exps[0].clone(),
            "a1" | "b1" => exps[1].clone(),
            "alpha" => exps[0].iter().map(|e| 2 * e).collect(),
            "beta" => exps[1].iter().map(|e| 2 * e).collect(),
            _ => vec![0; nv],
        })
        .collect();
    Some(Grading { arrows, vars })
}

/// Bounds on the `Γ` side at which every `m <= 4` is stable for `f = (x, y)`.
pub const DEFAULT_LOCALIZATION_BOUNDS: Bounds = Bounds { len: 4, polydeg: 4 };

/// Compares `H^{-m}` at the vertex of `Γ(1, (f0, f1))` with `H^{-m}` of the
/// `n = 1` tube algebra, base-changed along `t_i ↦ f_i` and localised at
/// vertex 0, for `m = 0..=max_m`.
///
/// A loop of `Γ` corresponds to a path `a·eps·b` of length 3 in the
/// localisation, so the localised box is three times longer and its length
/// slack is one such path.
pub fn localization_consistency(f0: &Poly, f1: &Poly, bounds: Bounds, max_m: i32) -> Result<LocalizationReport> {
    let s = f0.ring().clone();
    let gamma = contraction_quiver(1, &s, &[f0.clone(), f1.clone()], ArrowConvention::Tube)?;
    let tube = tube_algebra(1, &PolyRing::t_ring(s.field(), 1))?;
    let map = RingMap::new(tube.ring(), &s, vec![f0.clone(), f1.clone()])?;
    let loc = drinfeld_localize(&tube.base_change(&map)?, "0")?;
    let mut rows = Vec::new();
    let (gg, lg) = (monomial_grading(&gamma, [f0, f1]), monomial_grading(&loc, [f0, f1]));
    let slack = Bounds::new(SLACK, SLACK as u32);
    for m in 0..=max_m {
        let contraction = truncated_cohomology_with(&gamma, "1", "1", m, bounds, slack, gg.as_ref())?;
        let localized = truncated_cohomology_with(
            &loc,
            "1",
            "1",
            m,
            Bounds::new(3 * bounds.len, bounds.polydeg),
            Bounds::new(3, SLACK as u32),
            lg.as_ref(),
        )?;
        let agree = contraction.rank == localized.rank;
        rows.push(LocalizationRow { m, contraction, localized, agree });
    }
    Ok(LocalizationReport { f: [f0.to_string(), f1.to_string()], rows })
}
