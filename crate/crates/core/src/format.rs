//! JSON documents: space specs, graph points, stems and presentations.
//!
//! Rationals are always strings, `"p/q"` or `"p"`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gamma::GammaPoint;
use crate::premetric::FinitePremetricSpace;
use crate::rational::NonNegRational;
use crate::seqdec::{Family, SeqPresentation, SeqTail, Sequence};
use crate::tower::{Layered, TowerPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    pub dist: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<String>,
}

fn rational(field: &str, s: &str) -> Result<NonNegRational> {
    s.parse().map_err(|e| Error::parse(field, format!("{e}")))
}

impl SpaceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))
    }

    /// Builds the table. Diagonal entries default to 0; any other omitted
    /// pair needs `default`. Does not check `d(x, x) = 0` for listed entries.
    pub fn to_space(&self) -> Result<FinitePremetricSpace> {
        let n = self.points.len();
        let index: BTreeMap<&str, usize> = self.points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        if index.len() != n {
            return Err(Error::parse("points", "duplicate point label"));
        }
        let mut table: Vec<Option<NonNegRational>> = vec![None; n * n];
        for (k, (a, b, v)) in self.dist.iter().enumerate() {
            let field = format!("dist[{k}]");
            let i = *index.get(a.as_str()).ok_or_else(|| Error::parse(&field, format!("unknown point {a:?}")))?;
            let j = *index.get(b.as_str()).ok_or_else(|| Error::parse(&field, format!("unknown point {b:?}")))?;
            if table[i * n + j].replace(rational(&field, v)?).is_some() {
                return Err(Error::parse(field, format!("pair ({a}, {b}) listed twice")));
            }
        }
        let default = self.default.as_deref().map(|d| rational("default", d)).transpose()?;
        let mut full = Vec::with_capacity(n * n);
        for (k, entry) in table.into_iter().enumerate() {
            let (i, j) = (k / n, k % n);
            full.push(match (entry, default) {
                (Some(v), _) => v,
                (None, _) if i == j => NonNegRational::ZERO,
                (None, Some(d)) => d,
                (None, None) => {
                    return Err(Error::parse(
                        "dist",
                        format!("pair ({}, {}) missing and no \"default\" given", self.points[i], self.points[j]),
                    ))
                }
            });
        }
        FinitePremetricSpace::new(self.points.clone(), full)
    }

    /// Canonical form: every off-diagonal pair listed in row order, no
    /// default.
    pub fn from_space(space: &FinitePremetricSpace) -> Self {
        let mut dist = Vec::new();
        for i in space.points() {
            for j in space.points() {
                if i != j || !space.d(i, j).is_zero() {
                    dist.push((
                        space.label_of(i).to_string(),
                        space.label_of(j).to_string(),
                        space.d(i, j).to_string(),
                    ));
                }
            }
        }
        SpaceSpec { points: space.labels().to_vec(), dist, default: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

pub fn parse_space(text: &str) -> Result<FinitePremetricSpace> {
    SpaceSpec::parse(text)?.to_space()
}

pub fn space_to_json(space: &FinitePremetricSpace) -> String {
    SpaceSpec::from_space(space).to_json()
}

/// `{"v": p}` or `{"e": [p, q, "t"]}`.
pub fn gamma_to_json<P>(g: &GammaPoint<P>, label: &dyn Fn(&P) -> Value) -> Value {
    match g {
        GammaPoint::Vertex(v) => json!({ "v": label(v) }),
        GammaPoint::Edge(x, y, t) => json!({ "e": [label(x), label(y), t.to_string()] }),
    }
}

/// Parses and normalizes a graph point.
pub fn gamma_from_json<P: Clone + Eq + std::fmt::Debug>(
    v: &Value,
    parse: &dyn Fn(&Value) -> Result<P>,
) -> Result<GammaPoint<P>> {
    let obj = v
        .as_object()
        .filter(|o| o.len() == 1)
        .ok_or_else(|| Error::parse("point", format!("expected {{\"v\":…}} or {{\"e\":[…]}}, got {v}")))?;
    if let Some(p) = obj.get("v") {
        return Ok(GammaPoint::Vertex(parse(p)?));
    }
    let e = obj
        .get("e")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::parse("point", format!("expected {{\"e\":[x, y, \"t\"]}}, got {v}")))?;
    let t = e[2].as_str().ok_or_else(|| Error::parse("point.e[2]", "edge parameter must be a string"))?;
    GammaPoint::normalize(parse(&e[0])?, parse(&e[1])?, rational("point.e[2]", t)?)
}

pub fn layered_to_json<P>(x: &Layered<P>, label: &dyn Fn(&P) -> String) -> Value {
    match x {
        Layered::Base(p) => Value::String(label(p)),
        Layered::Gamma(g) => gamma_to_json(g, &|y| layered_to_json(y, label)),
    }
}

/// Strings are base points; objects are graph points one level up.
pub fn layered_from_json<P: Clone + Eq + std::fmt::Debug>(
    v: &Value,
    parse: &dyn Fn(&str) -> Result<P>,
) -> Result<Layered<P>> {
    match v {
        Value::String(s) => Ok(Layered::Base(parse(s)?)),
        _ => {
            let g = gamma_from_json(v, &|w| layered_from_json(w, parse))?;
            let (a, b) = match &g {
                GammaPoint::Vertex(x) => (x.depth(), x.depth()),
                GammaPoint::Edge(x, y, _) => (x.depth(), y.depth()),
            };
            if a != b {
                return Err(Error::LevelMismatch { expected: a, found: b });
            }
            Ok(Layered::from_gamma(g))
        }
    }
}

/// `{"stem": [{"level": 1, "point": …}, …]}`.
pub fn stem_to_json<P: Clone + Eq + std::fmt::Debug>(a: &TowerPoint<P>, label: &dyn Fn(&P) -> String) -> Value {
    let stem: Vec<Value> = a
        .stem()
        .iter()
        .enumerate()
        .map(|(k, x)| json!({ "level": k + 1, "point": layered_to_json(x, label) }))
        .collect();
    json!({ "stem": stem })
}

/// Accepts the level-tagged form or a bare array of points.
pub fn stem_from_json<P: Clone + Eq + std::fmt::Debug>(
    v: &Value,
    parse: &dyn Fn(&str) -> Result<P>,
) -> Result<Vec<Layered<P>>> {
    let items = match v {
        Value::Array(a) => a,
        Value::Object(o) => {
            o.get("stem").and_then(Value::as_array).ok_or_else(|| Error::parse("stem", "expected {\"stem\": [...]}"))?
        }
        _ => return Err(Error::parse("stem", "expected an array or {\"stem\": [...]}")),
    };
    items
        .iter()
        .enumerate()
        .map(|(k, item)| {
            let point = match item.get("level") {
                Some(level) => {
                    let level = level
                        .as_u64()
                        .ok_or_else(|| Error::parse(format!("stem[{k}].level"), "expected an integer"))?;
                    if level != k as u64 + 1 {
                        return Err(Error::LevelMismatch { expected: k + 1, found: level as usize });
                    }
                    item.get("point").ok_or_else(|| Error::parse(format!("stem[{k}]"), "missing \"point\""))?
                }
                None => item,
            };
            layered_from_json(point, parse)
        })
        .collect()
}

/// `v:p` or `e:p,q,t` for level-1 points; labels may contain commas as long
/// as exactly one split parses.
pub fn parse_gamma_shorthand<P: Clone + Eq + std::fmt::Debug>(
    s: &str,
    parse: &dyn Fn(&str) -> Result<P>,
) -> Result<GammaPoint<P>> {
    if let Some(p) = s.strip_prefix("v:") {
        return Ok(GammaPoint::Vertex(parse(p)?));
    }
    let rest =
        s.strip_prefix("e:").ok_or_else(|| Error::parse("point", format!("{s:?}: expected v:p, e:p,q,t or JSON")))?;
    let (ends, t) =
        rest.rsplit_once(',').ok_or_else(|| Error::parse("point", format!("{s:?}: missing edge parameter")))?;
    let t = rational("point", t)?;
    let splits: Vec<(P, P)> = ends
        .match_indices(',')
        .filter_map(|(i, _)| Some((parse(&ends[..i]).ok()?, parse(&ends[i + 1..]).ok()?)))
        .collect();
    match <[(P, P); 1]>::try_from(splits) {
        Ok([(x, y)]) => GammaPoint::normalize(x, y, t),
        Err(v) if v.is_empty() => Err(Error::parse("point", format!("{s:?}: endpoints do not parse"))),
        Err(_) => Err(Error::parse("point", format!("{s:?}: ambiguous endpoints; use JSON"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub points: Vec<String>,
    #[serde(default)]
    pub sequences: Vec<SequenceSpecJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpecJson {
    pub id: String,
    pub limit: String,
    #[serde(default)]
    pub prefix: Vec<String>,
    pub tail: TailJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailJson {
    Constant(String),
    Indexed(String),
}

impl PresentationSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))
    }

    pub fn build(&self) -> Result<SeqPresentation> {
        let seqs = self
            .sequences
            .iter()
            .map(|s| {
                let tail = match &s.tail {
                    TailJson::Constant(c) => SeqTail::Constant(c.clone()),
                    TailJson::Indexed(f) => SeqTail::Indexed(f.parse::<Family>()?),
                };
                Ok(Sequence { id: s.id.clone(), limit: s.limit.clone(), prefix: s.prefix.clone(), tail })
            })
            .collect::<Result<Vec<_>>>()?;
        SeqPresentation::new(self.points.clone(), seqs)
    }

    /// The explicit (non-automatic) part of a presentation.
    pub fn from_presentation(pres: &SeqPresentation) -> Self {
        let auto: BTreeSet<String> = pres.points().iter().map(|p| format!("const:{p}")).collect();
        let sequences = pres
            .sequences()
            .iter()
            .filter(|s| !auto.contains(&s.id))
            .map(|s| SequenceSpecJson {
                id: s.id.clone(),
                limit: s.limit.clone(),
                prefix: s.prefix.clone(),
                tail: match &s.tail {
                    SeqTail::Constant(c) => TailJson::Constant(c.clone()),
                    SeqTail::Indexed(f) => TailJson::Indexed(f.to_string()),
                },
            })
            .collect();
        PresentationSpec { points: pres.points().to_vec(), sequences }
    }
}

pub fn parse_presentation(text: &str) -> Result<SeqPresentation> {
    PresentationSpec::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::TowerSpace;

    fn q(n: u64, d: u64) -> NonNegRational {
        NonNegRational::frac(n, d)
    }

    #[test]
    fn space_spec_round_trip() {
        let text = r#"{"points":["p","q"],"dist":[["p","q","1/3"],["q","p","1/2"]]}"#;
        let s = parse_space(text).unwrap();
        assert_eq!(s.d(0, 1), q(1, 3));
        assert_eq!(s.d(1, 1), q(0, 1));
        let out = space_to_json(&s);
        assert_eq!(parse_space(&out).unwrap(), s);
        assert_eq!(space_to_json(&parse_space(&out).unwrap()), out);
    }

    #[test]
    fn space_spec_defaults_and_errors() {
        let s = parse_space(r#"{"points":["p","q","r"],"dist":[["p","q","1/3"]],"default":"1"}"#).unwrap();
        assert_eq!(s.d(2, 0), q(1, 1));
        assert!(matches!(parse_space(r#"{"points":["p","q"],"dist":[["p","q","1/3"]]}"#), Err(Error::Parse { .. })));
        assert!(matches!(parse_space(r#"{"points":["p"],"dist":[["p","x","1"]]}"#), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_space(r#"{"points":["p","q"],"dist":[["p","q","0.5"]],"default":"1"}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_space("{"), Err(Error::Parse { .. })));
        // A nonzero diagonal parses; validation reports it.
        let bad = parse_space(r#"{"points":["p"],"dist":[["p","p","1"]]}"#).unwrap();
        assert_eq!(bad.d(0, 0), q(1, 1));
    }

    #[test]
    fn gamma_json() {
        let id = |s: &str| -> Result<String> { Ok(s.to_string()) };
        let v: Value = serde_json::from_str(r#"{"e":["p","q","1/3"]}"#).unwrap();
        let g = gamma_from_json(&v, &|w: &Value| id(w.as_str().unwrap())).unwrap();
        assert_eq!(g, GammaPoint::Edge("p".to_string(), "q".to_string(), q(1, 3)));
        assert_eq!(gamma_to_json(&g, &|p: &String| Value::String(p.clone())), v);
        let v: Value = serde_json::from_str(r#"{"e":["p","q","1"]}"#).unwrap();
        assert_eq!(
            gamma_from_json(&v, &|w: &Value| id(w.as_str().unwrap())).unwrap(),
            GammaPoint::Vertex("q".to_string())
        );
    }

    #[test]
    fn shorthand() {
        let id = |s: &str| -> Result<String> { Ok(s.to_string()) };
        assert_eq!(parse_gamma_shorthand("v:p", &id).unwrap(), GammaPoint::Vertex("p".to_string()));
        assert_eq!(parse_gamma_shorthand("e:p,q,1/3", &id).unwrap(), GammaPoint::Edge("p".into(), "q".into(), q(1, 3)));
        assert!(parse_gamma_shorthand("e:a,b,c,1/3", &id).is_err());
        let pair = |s: &str| -> Result<String> {
            if s.starts_with('(') && s.ends_with(')') {
                Ok(s.to_string())
            } else {
                Err(Error::parse("p", s))
            }
        };
        assert_eq!(
            parse_gamma_shorthand("e:(1,0),(0,0),1/2", &pair).unwrap(),
            GammaPoint::Edge("(1,0)".into(), "(0,0)".into(), q(1, 2))
        );
    }

    #[test]
    fn stem_json() {
        let t = TowerSpace::new(FinitePremetricSpace::with_default_labels(
            2,
            |i, j| if i == j { q(0, 1) } else { q(1, 2) },
        ));
        let x = Layered::edge(Layered::Base(0usize), Layered::Base(1), q(1, 4)).unwrap();
        let a = t.validate_stem(vec![x.clone(), x.lift()]).unwrap();
        let label = |p: &usize| format!("p{p}");
        let parse = |s: &str| s.strip_prefix('p').and_then(|n| n.parse().ok()).ok_or_else(|| Error::parse("p", s));
        let v = stem_to_json(&a, &label);
        assert_eq!(t.validate_stem(stem_from_json(&v, &parse).unwrap()).unwrap(), a);
        let bare: Value = serde_json::from_str(r#"[{"v":"p0"},{"v":{"v":"p0"}}]"#).unwrap();
        assert_eq!(t.validate_stem(stem_from_json(&bare, &parse).unwrap()).unwrap(), TowerPoint::from_base(0));
        let tagged: Value = serde_json::from_str(r#"{"stem":[{"level":2,"point":{"v":"p0"}}]}"#).unwrap();
        assert!(matches!(stem_from_json(&tagged, &parse), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn presentation_json() {
        let text = r#"{"points":["x0","x1","x2"],"sequences":[{"id":"f","limit":"x0","prefix":["x1","x2"],"tail":{"constant":"x0"}}]}"#;
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.sequence(p.sequence_index("f").unwrap()).unwrap().term(2), "x2");
        let spec = PresentationSpec::from_presentation(&p);
        assert_eq!(spec, PresentationSpec::parse(text).unwrap());
        let bad = r#"{"points":["x"],"sequences":[{"id":"f","limit":"x","tail":{"indexed":"nope"}}]}"#;
        assert!(matches!(parse_presentation(bad), Err(Error::Parse { .. })));
    }
}
