use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use cobweb_core::format::{
    gamma_from_json, gamma_to_json, layered_from_json, layered_to_json, parse_gamma_shorthand, stem_from_json,
    stem_to_json,
};
use cobweb_core::premetric::{
    classify, is_1_separating, is_2_separating, validate_premetric, FinitePremetricSpace, Labeled,
};
use cobweb_core::sampling::rng;
use cobweb_core::spaces::arens::ArensSpace;
use cobweb_core::topology::{
    is_basic, is_hereditary, is_seq_hausdorff_finite, MAX_EXHAUSTIVE_HEREDITARY, MAX_TOPOLOGY_POINTS,
};
use cobweb_core::tower::{Layered, TowerPoint, TowerSpace};
use cobweb_core::verify::{random_epoints, run_suite, SuiteOptions, Verdict};
use cobweb_core::{Cobweb, EResolution, Error, GammaPoint};
use serde_json::{json, Value};

use crate::load::{self, Loaded};

/// What a command produced, before it is wrapped into a report.
pub struct Outcome {
    pub verdicts: Vec<Verdict>,
    pub result: Value,
    /// Plain-text answer printed to stdout without `--json`.
    pub plain: String,
}

fn verdict(id: &str, pass: bool, checked: u64, detail: impl Into<String>, witness: Option<Value>) -> Verdict {
    Verdict { id: id.into(), pass, checked, detail: detail.into(), witness }
}

// ---------------------------------------------------------------- validate

/// Cantor truncations up to this many bits are classified exhaustively.
const CANTOR_EXHAUSTIVE_BITS: u32 = 8;

pub fn validate(spec: &str) -> Result<(Outcome, Vec<u8>)> {
    let source = load::load(spec)?;
    let (space, provenance) = match &source.loaded {
        Loaded::Finite(s) => (s.clone(), json!("exhaustive")),
        Loaded::Arens(a) => sampled(a, &ArensSpace::bounded(3).points()),
        Loaded::DoubleInterval(ii) => {
            let (s, p) = sampled(ii, &ii.grid(4));
            (s, json!({ "sampled": p["sampled"], "max_den": ii.max_den }))
        }
        Loaded::Cantor(c) if c.bits() <= CANTOR_EXHAUSTIVE_BITS => (c.to_finite(), json!("exhaustive")),
        Loaded::Cantor(c) => sampled(c, &c.points().take(1 << CANTOR_EXHAUSTIVE_BITS).collect::<Vec<_>>()),
        Loaded::Presentation(d) => sampled(d, &d.sample(4)),
    };
    Ok((validate_finite(&space, provenance), source.digest_input))
}

fn sampled<S: Labeled>(space: &S, sample: &[S::Point]) -> (FinitePremetricSpace, Value) {
    let finite = FinitePremetricSpace::from_sample(space, sample);
    let n = finite.len();
    (finite, json!({ "sampled": n }))
}

fn validate_finite(space: &FinitePremetricSpace, provenance: Value) -> Outcome {
    let label = |i: usize| space.label_of(i).to_string();
    let n = space.len() as u64;
    let premetric = match validate_premetric(space) {
        Ok(()) => verdict("validate.premetric", true, n, "d(x, x) = 0 for every point", None),
        Err(_) => {
            let x = space.points().find(|&x| !space.d(x, x).is_zero()).expect("violation has a witness");
            let witness = json!({ "point": label(x), "d": space.d(x, x).to_string() });
            verdict("validate.premetric", false, n, format!("d({0}, {0}) is not zero", label(x)), Some(witness))
        }
    };
    let valid = premetric.pass;
    let c = classify(space);
    let pair = |p: Option<(usize, usize)>| p.map(|(a, b)| json!([label(a), label(b)]));
    let triple = |p: Option<(usize, usize, usize)>| p.map(|(a, b, c)| json!([label(a), label(b), label(c)]));
    let mut flags = json!({
        "symmetric": c.is_symmetric,
        "pseudometric": c.is_pseudometric,
        "metric": c.is_metric,
        "ultrametric": c.is_ultrametric,
        "1-separating": is_1_separating(space),
        "2-separating": is_2_separating(space),
    });
    let witnesses = json!({
        "asymmetry": pair(c.asymmetry),
        "triangle": triple(c.triangle),
        "indiscernible": pair(c.indiscernible),
        "strong_triangle": triple(c.strong_triangle),
    });
    if valid && space.len() <= MAX_TOPOLOGY_POINTS {
        flags["basic"] = json!(is_basic(space).ok());
        flags["sequentially_hausdorff"] = json!(is_seq_hausdorff_finite(space).ok());
        if space.len() <= MAX_EXHAUSTIVE_HEREDITARY {
            flags["hereditary"] = json!(is_hereditary(space).ok());
        }
    }
    let set: Vec<&str> = flags
        .as_object()
        .expect("object")
        .iter()
        .filter(|(_, v)| v.as_bool() == Some(true))
        .map(|(k, _)| k.as_str())
        .collect();
    let plain = if valid {
        format!(
            "valid premetric on {} points: {}",
            space.len(),
            if set.is_empty() { "no further properties".into() } else { set.join(", ") }
        )
    } else {
        format!("not a premetric: {}", premetric.detail)
    };
    Outcome {
        verdicts: vec![premetric],
        result: json!({ "points": space.len(), "provenance": provenance, "flags": flags, "witnesses": witnesses }),
        plain,
    }
}

// -------------------------------------------------------------------- dist

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Gamma,
    Cobweb,
    Tower(usize),
    Omega,
    Eres,
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "gamma" => Construction::Gamma,
            "cobweb" => Construction::Cobweb,
            "omega" => Construction::Omega,
            "eres" => Construction::Eres,
            _ => match s.strip_prefix("tower:").map(str::parse::<usize>) {
                Some(Ok(n)) if n >= 1 => Construction::Tower(n),
                _ => return Err(format!("{s:?}: expected gamma, cobweb, tower:N (N ≥ 1), omega or eres")),
            },
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Gamma => f.write_str("gamma"),
            Construction::Cobweb => f.write_str("cobweb"),
            Construction::Tower(n) => write!(f, "tower:{n}"),
            Construction::Omega => f.write_str("omega"),
            Construction::Eres => f.write_str("eres"),
        }
    }
}

fn is_json(s: &str) -> bool {
    s.trim_start().starts_with(['{', '['])
}

fn json_arg(s: &str) -> Result<Value> {
    Ok(serde_json::from_str(s).map_err(|e| Error::parse("point", e.to_string()))?)
}

fn parse_gamma<S: Labeled>(space: &S, s: &str) -> Result<GammaPoint<S::Point>> {
    if is_json(s) {
        let v = json_arg(s)?;
        let parse = |w: &Value| match w.as_str() {
            Some(p) => space.parse_point(p),
            None => Err(Error::parse("point", format!("expected a point label, got {w}"))),
        };
        Ok(gamma_from_json(&v, &parse)?)
    } else {
        Ok(parse_gamma_shorthand(s, &|p| space.parse_point(p))?)
    }
}

fn parse_layered<S: Labeled>(space: &S, level: usize, s: &str) -> Result<Layered<S::Point>> {
    let x = if is_json(s) {
        layered_from_json(&json_arg(s)?, &|p| space.parse_point(p))?
    } else {
        Layered::level1(&parse_gamma(space, s)?)
    };
    if x.depth() != level {
        return Err(Error::LevelMismatch { expected: level, found: x.depth() }.into());
    }
    Ok(x)
}

fn parse_stem<S: Labeled>(tower: &TowerSpace<S>, s: &str) -> Result<TowerPoint<S::Point>> {
    let space = tower.base();
    let stem = if is_json(s) {
        let v = json_arg(s)?;
        if v.is_array() || v.get("stem").is_some() {
            stem_from_json(&v, &|p| space.parse_point(p))?
        } else {
            vec![parse_layered(space, 1, s)?]
        }
    } else {
        vec![parse_layered(space, 1, s)?]
    };
    Ok(tower.validate_stem(stem)?)
}

fn dist_in<S: Labeled + Clone>(space: &S, construction: Construction, a: &str, b: &str) -> Result<Value> {
    let label = |p: &S::Point| space.label(p);
    let vlabel = |p: &S::Point| Value::String(space.label(p));
    Ok(match construction {
        Construction::Gamma | Construction::Cobweb => {
            let (x, y) = (parse_gamma(space, a)?, parse_gamma(space, b)?);
            if construction == Construction::Cobweb {
                let web = Cobweb::new(space);
                if let Some(p) = [&x, &y].into_iter().find(|p| !web.contains(p)) {
                    bail!(Error::NotMember(gamma_to_json(p, &vlabel).to_string()));
                }
            }
            let d = cobweb_core::gamma_distance(&x, &y);
            json!({ "a": gamma_to_json(&x, &vlabel), "b": gamma_to_json(&y, &vlabel), "distance": d.to_string() })
        }
        Construction::Tower(n) => {
            let tower = TowerSpace::new(space);
            let (x, y) = (parse_layered(space, n, a)?, parse_layered(space, n, b)?);
            if let Some(p) = [&x, &y].into_iter().find(|p| !tower.is_member(n, p)) {
                bail!(Error::NotMember(format!("level {n}: {}", layered_to_json(p, &label))));
            }
            let d = tower.level_distance(n, &x, &y)?;
            json!({ "a": layered_to_json(&x, &label), "b": layered_to_json(&y, &label), "distance": d.to_string() })
        }
        Construction::Omega => {
            let tower = TowerSpace::new(space);
            let (x, y) = (parse_stem(&tower, a)?, parse_stem(&tower, b)?);
            let d = tower.omega_distance(&x, &y);
            json!({ "a": stem_to_json(&x, &label), "b": stem_to_json(&y, &label), "distance": d.to_string() })
        }
        Construction::Eres => unreachable!("handled with the presentation"),
    })
}

pub fn dist(spec: &str, construction: Construction, a: &str, b: &str) -> Result<(Outcome, Vec<u8>)> {
    let (mut result, digest_input) = if construction == Construction::Eres {
        let (pres, digest_input) = load::presentation(spec)?;
        let e = EResolution::new(pres);
        let label = |p: &_| e.presentation().label(p);
        let (x, y) = (parse_stem(e.tower(), a)?, parse_stem(e.tower(), b)?);
        let d = e.tower().omega_distance(&x, &y);
        let result = json!({
            "a": stem_to_json(&x, &label),
            "b": stem_to_json(&y, &label),
            "distance": d.to_string(),
            "resolution": [e.resolve(&x)?, e.resolve(&y)?],
        });
        (result, digest_input)
    } else {
        let source = load::load(spec)?;
        let result = match &source.loaded {
            Loaded::Finite(s) => dist_in(s, construction, a, b)?,
            Loaded::Arens(s) => dist_in(s, construction, a, b)?,
            Loaded::DoubleInterval(s) => dist_in(s, construction, a, b)?,
            Loaded::Cantor(s) => dist_in(s, construction, a, b)?,
            Loaded::Presentation(s) => dist_in(s, construction, a, b)?,
        };
        (result, source.digest_input)
    };
    result["construction"] = json!(construction.to_string());
    let plain = result["distance"].as_str().expect("distance is set").to_string();
    Ok((Outcome { verdicts: vec![], result, plain }, digest_input))
}

// ------------------------------------------------------------------ verify

pub fn verify(suite: &str, opts: &SuiteOptions) -> Result<Outcome> {
    let verdicts = run_suite(suite, opts)?;
    let plain = verdicts
        .iter()
        .map(|v| format!("{} {} ({} cases)", if v.pass { "PASS" } else { "FAIL" }, v.id, v.checked))
        .collect::<Vec<_>>()
        .join("\n");
    let result = json!({ "suite": suite, "grid": opts.grid, "sample": opts.sample });
    Ok(Outcome { verdicts, result, plain })
}

// ------------------------------------------------------------------ census

pub fn census(target: &str, sample: usize, seed: u64) -> Result<(Outcome, Vec<u8>)> {
    if let Some(k) = target.strip_prefix("cantor:") {
        let source = load::load(&format!("cantor:{k}"))?;
        let Loaded::Cantor(c) = source.loaded else { unreachable!("cantor: prefix") };
        return Ok((cantor_census(&c), source.digest_input));
    }
    let Some(spec) = target.strip_prefix("eres:") else {
        bail!(Error::OutOfBounds(format!("{target:?}: expected cantor:K or eres:SPEC")));
    };
    let (pres, digest_input) = load::presentation(spec)?;
    let e = EResolution::new(pres);
    let mut r = rng(seed);
    let points = random_epoints(&e, &mut r, sample.max(1), 3);
    let n = points.len() as u64;
    let pairs = n * (n + 1) / 2;
    let (verdicts, result) = match e.resolution_census(&points) {
        Ok(c) => {
            let fibers: BTreeMap<&str, usize> = c.fibers.iter().map(|(k, v)| (k.as_str(), v.len())).collect();
            let values: Vec<String> = c.census.distance_values.iter().map(ToString::to_string).collect();
            let verdicts = vec![
                verdict("census.max_attained", true, pairs, "every distance equals one of its level terms", None),
                verdict(
                    "census.bound",
                    c.census.within_bound(),
                    1,
                    format!("{} values ≤ 1 + Σ|π_n A|² = {}", values.len(), c.census.bound),
                    (!c.census.within_bound()).then(|| json!({ "values": values.len(), "bound": c.census.bound })),
                ),
            ];
            let result = json!({
                "target": target,
                "points": c.census.points,
                "values": values,
                "per_level_images": c.census.per_level_images,
                "bound": c.census.bound,
                "fibers": fibers,
            });
            (verdicts, result)
        }
        Err(Error::MaxNotAttained(w)) => (
            vec![verdict(
                "census.max_attained",
                false,
                pairs,
                "a distance is not attained by a level term",
                Some(json!(w)),
            )],
            json!({ "target": target, "points": n }),
        ),
        Err(other) => return Err(other.into()),
    };
    let plain = match result.get("values").and_then(Value::as_array) {
        Some(v) => format!("{} distance values over {n} points", v.len()),
        None => "maximum not attained".into(),
    };
    Ok((Outcome { verdicts, result, plain }, digest_input))
}

fn cantor_census(c: &cobweb_core::spaces::cantor::CantorTruncation) -> Outcome {
    let space = c.to_finite();
    let n = space.len() as u64;
    let values = space.realized_values();
    let expected: std::collections::BTreeSet<_> = std::iter::once(cobweb_core::NonNegRational::ZERO)
        .chain((0..c.bits()).map(cobweb_core::NonNegRational::pow2_neg))
        .collect();
    let mut verdicts = vec![verdict(
        "census.values",
        values == expected,
        n * n,
        format!("{} distinct distances over {n} points, expected {}", values.len(), expected.len()),
        (values != expected).then(|| json!(values.iter().map(ToString::to_string).collect::<Vec<_>>())),
    )];
    if c.bits() <= CANTOR_EXHAUSTIVE_BITS {
        let iso = cobweb_core::premetric::isoceles_check(&space);
        verdicts.push(verdict(
            "census.isoceles",
            matches!(iso, Ok(true)),
            n * n * n,
            "every triangle has its two longest sides equal",
            match iso {
                Ok(true) => None,
                Ok(false) => Some(json!("a non-isoceles triangle")),
                Err(e) => Some(json!(e.to_string())),
            },
        ));
    }
    Outcome {
        plain: format!("{} distance values over {n} points", values.len()),
        result: json!({
            "target": format!("cantor:{}", c.bits()),
            "points": n,
            "values": values.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        verdicts,
    }
}
