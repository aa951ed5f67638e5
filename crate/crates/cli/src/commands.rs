use serde::Serialize;
use serde_json::{json, Value};
use tube_ncr::arcmodel::{annulus, arc_label, disc, structurally_equal};
use tube_ncr::cohom::{
    august_relations, char2_pagoda_check, h0_presentation, localization_consistency, name_august_cosets, pagoda,
    sphere_complex, truncated_cohomology, Bounds, SphereVariant, Status, DEFAULT_LOCALIZATION_BOUNDS,
};
use tube_ncr::quivalg::{
    contraction_quiver, drinfeld_localize, tube_algebra, tube_basis_count, tube_u, tube_v, ArrowConvention,
};
use tube_ncr::toric::{base_change_end, end_algebra, section_basis, wedge_nonvanishing};
use tube_ncr::twcat::{negative_controls, verify_halftwist};
use tube_ncr::{Error, PolyRing, Presentation, RingMap};

use crate::config::RunConfig;

/// Outcome of a check, ordered from best to worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub verdict: Verdict,
    pub body: Value,
    /// Short human-readable summary for `--format text`.
    pub lines: Vec<String>,
}

impl Report {
    fn new(verdict: Verdict, body: Value, lines: Vec<String>) -> Report {
        Report { verdict, body, lines }
    }
}

type Run = tube_ncr::Result<Report>;

fn stable_verdict<'a>(reports: impl IntoIterator<Item = &'a tube_ncr::cohom::CohomologyReport>) -> Verdict {
    if reports.into_iter().all(|r| r.status == Status::Stable) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    }
}

fn tube(cfg: &RunConfig) -> tube_ncr::Result<Presentation> {
    let (s, f) = cfg.base_change(cfg.n + 1)?;
    let t = tube_algebra(cfg.n, &PolyRing::t_ring(cfg.field, cfg.n))?;
    if cfg.f.is_empty() {
        return Ok(t);
    }
    t.base_change(&RingMap::new(t.ring(), &s, f)?)
}

fn contraction(cfg: &RunConfig) -> tube_ncr::Result<Presentation> {
    let (s, f) = cfg.base_change(cfg.n + 1)?;
    contraction_quiver(cfg.n, &s, &f, cfg.convention)
}

pub fn algebra_tube(cfg: &RunConfig) -> Run {
    let p = tube(cfg)?;
    let conf = p.check_confluence();
    let lines = vec![format!("{} arrows, {} rules, confluent: {}", p.quiver().arrows().len(), p.rules().len(), conf.is_confluent())];
    Ok(Report::new(
        Verdict::from_bool(conf.is_confluent()),
        json!({"presentation": p.to_json(), "overlaps_checked": conf.overlaps_checked, "confluent": conf.is_confluent()}),
        lines,
    ))
}

pub fn algebra_contraction(cfg: &RunConfig) -> Run {
    let p = contraction(cfg)?;
    let conf = p.check_confluence();
    Ok(Report::new(
        Verdict::from_bool(conf.is_confluent()),
        json!({"presentation": p.to_json(), "confluent": conf.is_confluent()}),
        p.text_dump().lines().map(str::to_string).collect(),
    ))
}

pub fn algebra_localize(cfg: &RunConfig, vertex: &str) -> Run {
    let p = drinfeld_localize(&tube(cfg)?, vertex)?;
    Ok(Report::new(Verdict::Pass, json!({"presentation": p.to_json()}), p.text_dump().lines().map(str::to_string).collect()))
}

pub fn arc_generate(cfg: &RunConfig, surface: &str) -> Run {
    let s = match surface {
        "annulus" => annulus(cfg.n),
        _ => disc(cfg.n)?,
    };
    let g = s.generate_presentation(cfg.field)?;
    let mut lines = g.provenance.clone();
    lines.extend(g.presentation.text_dump().lines().map(str::to_string));
    Ok(Report::new(
        Verdict::Pass,
        json!({"surface": surface, "euler_characteristic": s.euler_characteristic(), "presentation": g.presentation.to_json(), "faces": g.provenance}),
        lines,
    ))
}

pub fn arc_compare(cfg: &RunConfig) -> Run {
    let ann = annulus(cfg.n).generate_presentation(cfg.field)?.presentation;
    let t = tube_algebra(cfg.n, &PolyRing::t_ring(cfg.field, cfg.n))?;
    let a = structurally_equal(&ann, &t, arc_label);
    let mut rows = vec![json!({"surface": "annulus", "equal": a.is_ok(), "detail": a.as_ref().err()})];
    let mut ok = a.is_ok();
    if cfg.n >= 1 {
        let d = disc(cfg.n)?.generate_presentation(cfg.field)?.presentation;
        let r = PolyRing::t_ring(cfg.field, cfg.n);
        let f: Vec<_> = (0..=cfg.n).map(|i| r.var(i)).collect();
        let c = contraction_quiver(cfg.n, &r, &f, ArrowConvention::Tube)?;
        let e = structurally_equal(&d, &c, arc_label);
        ok &= e.is_ok();
        rows.push(json!({"surface": "disc", "equal": e.is_ok(), "detail": e.as_ref().err()}));
    }
    let lines = rows.iter().map(|r| format!("{}: {}", r["surface"].as_str().unwrap(), r["equal"])).collect();
    Ok(Report::new(Verdict::from_bool(ok), json!({"n": cfg.n, "comparisons": rows}), lines))
}

pub fn twcat_halftwist(cfg: &RunConfig) -> Run {
    let r = verify_halftwist(cfg.n)?;
    let controls = negative_controls(cfg.n)?;
    let ok = r.passed() && controls.iter().all(|c| c.1);
    let mut lines: Vec<String> = r
        .wrappings
        .iter()
        .flat_map(|w| w.checks.iter().map(move |c| format!("{}: {}: {}", w.wrapping, c.name, if c.passed { "ok" } else { "FAILED" })))
        .collect();
    lines.extend(controls.iter().map(|(n, f, _)| format!("control {n}: {}", if *f { "fails as designed" } else { "UNEXPECTEDLY PASSES" })));
    let controls: Vec<Value> =
        controls.iter().map(|(n, f, d)| json!({"control": n, "failed_as_expected": f, "detail": d})).collect();
    Ok(Report::new(Verdict::from_bool(ok), json!({"field": "f2", "halftwist": r.to_json(), "negative_controls": controls}), lines))
}

pub fn toric_sections(cfg: &RunConfig) -> Run {
    let bound = cfg.bounds_or(Bounds::new(0, 2 * (cfg.n as u32 + 1) + 2)).polydeg;
    let mut ok = true;
    let mut out = Vec::new();
    let mut lines = Vec::new();
    for i in 0..=cfg.n {
        let s = section_basis(i, cfg.n, bound)?;
        ok &= s.verified();
        lines.push(format!("M_{i}: {} monomials, verified: {}", s.monomials.len(), s.verified()));
        out.push(s.to_json());
    }
    Ok(Report::new(Verdict::from_bool(ok), json!({"n": cfg.n, "bound": bound, "sections": out}), lines))
}

pub fn toric_wedge(cfg: &RunConfig) -> Run {
    let r = wedge_nonvanishing(cfg.n)?;
    let lines = vec![format!("{} patterns, {} degenerate, holds: {}", r.patterns, r.degenerate_patterns, r.holds())];
    Ok(Report::new(Verdict::from_bool(r.holds()), json!({"wedge": r, "holds": r.holds()}), lines))
}

pub fn toric_end(cfg: &RunConfig) -> Run {
    let len = cfg.bounds_or(Bounds::new(2 * (cfg.n + 1) + 4, 0)).len;
    let r = end_algebra(cfg.n, len)?;
    let lines = vec![format!("bound {len}: {} composable pairs checked, pass: {}", r.pairs_checked, r.passed())];
    Ok(Report::new(Verdict::from_bool(r.passed()), r.to_json(), lines))
}

pub fn toric_base_change(cfg: &RunConfig) -> Run {
    let (_, f) = cfg.base_change(cfg.n + 1)?;
    let len = cfg.bounds_or(Bounds::new(2 * (cfg.n + 1) + 4, 0)).len;
    let r = base_change_end(cfg.n, &f, len)?;
    let lines = vec![format!("f = ({}): {} pairs checked, pass: {}", r.images.join(", "), r.pairs_checked, r.passed())];
    Ok(Report::new(Verdict::from_bool(r.passed()), json!({"bound": len, "base_change": r, "pass": r.passed()}), lines))
}

pub fn cohom_sphere(cfg: &RunConfig) -> Run {
    let c = sphere_complex(cfg.field, SphereVariant::Amended)?;
    let reports = c.cohomology(cfg.bounds_or(Bounds::new(0, 6)).polydeg);
    let lines = reports.iter().map(|r| format!("H^{} = {} {:?} ({:?})", r.degree, r.rank, r.generators, r.status)).collect();
    Ok(Report::new(
        stable_verdict(&reports),
        json!({
            "complex": c.to_json(),
            "ranks": reports.iter().map(|r| r.rank).collect::<Vec<_>>(),
            "cohomology": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        }),
        lines,
    ))
}

pub fn cohom_contraction_h0(cfg: &RunConfig) -> Run {
    let p = contraction(cfg)?;
    let b = cfg.bounds_or(Bounds::new(10, 10));
    let mut h = h0_presentation(&p, b.len, b.polydeg)?;
    let mut body = json!({"n": cfg.n});
    let mut ok = h.two_sided;
    let mut lines = vec![format!("two-sided at bound: {}", h.two_sided)];
    if cfg.n == 2 && p.ring().nvars() == 2 && p.ring().vars() == ["x", "y"] {
        name_august_cosets(&mut h)?;
        let rel = august_relations(&h)?;
        ok &= rel.iter().all(|r| r.holds);
        lines.extend(rel.iter().map(|r| format!("{}: {}", r.relation, if r.holds { "holds" } else { "not verified at bound" })));
        body["relations"] = serde_json::to_value(&rel).expect("serialisable");
    }
    body["h0"] = h.to_json();
    Ok(Report::new(Verdict::from_bool(ok), body, lines))
}

pub fn cohom_truncated(cfg: &RunConfig, ms: &[i32], source: &str, target: &str) -> Run {
    let p = contraction(cfg)?;
    if !p.quiver().vertices().iter().any(|v| v == source) || !p.quiver().vertices().iter().any(|v| v == target) {
        return Err(Error::Parse(format!("unknown vertex `{source}` or `{target}`")));
    }
    let b = cfg.bounds_or(Bounds::new(8, 8));
    let reports = ms.iter().map(|&m| truncated_cohomology(&p, source, target, m, b)).collect::<tube_ncr::Result<Vec<_>>>()?;
    let lines = reports.iter().map(|r| format!("H^{} = {} {:?} ({:?})", r.degree, r.rank, r.generators, r.status)).collect();
    Ok(Report::new(stable_verdict(&reports), json!({"cohomology": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()}), lines))
}

pub fn cohom_localization(cfg: &RunConfig) -> Run {
    let mut one = cfg.clone();
    one.n = 1;
    let (_, f) = one.base_change(2)?;
    let r = localization_consistency(&f[0], &f[1], cfg.bounds_or(DEFAULT_LOCALIZATION_BOUNDS), 4)?;
    let verdict = if r.rows.iter().any(|row| !row.agree) {
        Verdict::Fail
    } else if r.passed() {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    let lines = r
        .rows
        .iter()
        .map(|row| format!("H^{}: contraction {} / localised {} (agree: {})", -row.m, row.contraction.rank, row.localized.rank, row.agree))
        .collect();
    Ok(Report::new(verdict, r.to_json(), lines))
}

fn check(name: &str, run: impl FnOnce() -> Run) -> (String, Verdict, Value) {
    match run() {
        Ok(r) => (name.to_string(), r.verdict, r.body),
        Err(e) => (name.to_string(), Verdict::Fail, json!({"error": e.to_string()})),
    }
}

/// The fixed manifest behind `verify all`, in report order.
pub fn verify_all(cfg: &RunConfig) -> Run {
    let n = cfg.n;
    let bound = cfg.bounds_or(Bounds::new(8, 8));
    let generic = RunConfig { f: Vec::new(), bounds: None, ..cfg.clone() };
    let mut rows = vec![
        check("tube freeness", || {
            let p = tube_algebra(n, &PolyRing::t_ring(cfg.field, n))?;
            let mut ok = true;
            for i in 0..=n {
                for j in 0..=n {
                    let got = p.graded_basis(&i.to_string(), &j.to_string(), 0, bound.len)?.len();
                    ok &= got == tube_basis_count(n, i, j, bound.len);
                }
            }
            Ok(Report::new(Verdict::from_bool(ok), json!({"length_bound": bound.len}), Vec::new()))
        }),
        check("center relation", || {
            let p = tube_algebra(n, &PolyRing::t_ring(cfg.field, n))?;
            let r = p.ring();
            let want = p.unit().scale(&(0..=n).fold(r.one(), |acc, i| &acc * &r.var(i)));
            let (u, v) = (tube_u(&p), tube_v(&p));
            let ok = p.multiply(&u, &v) == want && p.multiply(&v, &u) == want;
            Ok(Report::new(Verdict::from_bool(ok), json!({"uv": p.display(&p.multiply(&u, &v))}), Vec::new()))
        }),
        check("arc round trip", || arc_compare(&generic)),
    ];
    if n >= 2 {
        rows.push(check("half-twist", || twcat_halftwist(&generic)));
        rows.push(check("wedge", || toric_wedge(&generic)));
    }
    if n >= 1 {
        rows.push(check("end algebra", || toric_end(&generic)));
        rows.push(check("base change (t,...,t)", || {
            let t = PolyRing::new(cfg.field, ["t"])?;
            let r = base_change_end(n, &vec![t.var(0); n + 1], 2 * (n + 1) + 4)?;
            Ok(Report::new(Verdict::from_bool(r.passed()), serde_json::to_value(&r).expect("serialisable"), Vec::new()))
        }));
    }
    rows.push(check("sphere complex", || {
        let r = cohom_sphere(&generic)?;
        let ok = r.body["ranks"] == json!([0, 0, 1, 0, 0, 1]);
        Ok(Report { verdict: r.verdict.max(Verdict::from_bool(ok)), ..r })
    }));
    rows.push(check("conifold", || {
        let c = RunConfig { n: 1, f: vec!["x".into(), "y".into()], vars: vec!["x".into(), "y".into()], bounds: Some(bound), ..cfg.clone() };
        let r = cohom_truncated(&c, &[0, 1, 2, 3, 4], "1", "1")?;
        let ranks: Vec<&Value> = r.body["cohomology"].as_array().unwrap().iter().map(|x| &x["rank"]).collect();
        let ok = ranks == [&json!(1), &json!(0), &json!(1), &json!(0), &json!(1)];
        Ok(Report { verdict: r.verdict.max(Verdict::from_bool(ok)), ..r })
    }));
    rows.push(check("pagoda", || {
        let k = (n as u32).max(1);
        let mut body = json!({"n": k});
        let mut verdict = Verdict::Pass;
        if cfg.field.characteristic() != 2 {
            let r = truncated_cohomology(&pagoda(k, cfg.field)?, "1", "1", 0, Bounds::new(2, k + 2))?;
            verdict = stable_verdict([&r]).max(Verdict::from_bool(r.rank == k as usize));
            body["h0"] = r.to_json();
        }
        let c2 = char2_pagoda_check(k)?;
        verdict = verdict.max(Verdict::from_bool(c2.nontrivial));
        body["char2"] = serde_json::to_value(&c2).expect("serialisable");
        Ok(Report::new(verdict, body, Vec::new()))
    }));
    rows.push(check("August example", || {
        let c = RunConfig {
            n: 2,
            f: vec!["x".into(), "x^2 + y^3".into(), "y".into()],
            vars: vec!["x".into(), "y".into()],
            bounds: Some(Bounds::new(10, 10)),
            ..cfg.clone()
        };
        cohom_contraction_h0(&c)
    }));
    rows.push(check("localisation", || {
        let c = RunConfig { f: vec!["x".into(), "y".into()], vars: vec!["x".into(), "y".into()], bounds: None, ..cfg.clone() };
        cohom_localization(&c)
    }));
    let verdict = rows.iter().map(|r| r.1).max().unwrap_or(Verdict::Pass);
    let lines = rows.iter().map(|(name, v, _)| format!("{name:<24} {}", serde_json::to_value(v).unwrap().as_str().unwrap())).collect();
    let checks: Vec<Value> = rows.into_iter().map(|(name, v, body)| json!({"check": name, "verdict": v, "report": body})).collect();
    Ok(Report::new(verdict, json!({"checks": checks}), lines))
}
