//! Resolving `--spec` into a space: a JSON file or a built-in name.

use std::fs;

use anyhow::{bail, Context, Result};
use cobweb_core::format::{parse_presentation, parse_space};
use cobweb_core::premetric::FinitePremetricSpace;
use cobweb_core::seqdec::{DSpace, SeqPresentation};
use cobweb_core::spaces::arens::{arens_presentation, ArensSpace};
use cobweb_core::spaces::cantor::CantorTruncation;
use cobweb_core::spaces::double_interval::DoubleInterval;

/// Rows and columns of Arens' space listed when it is used as a presentation.
pub const ARENS_PRESENTATION_BOUND: u64 = 4;

pub enum Loaded {
    Finite(FinitePremetricSpace),
    Arens(ArensSpace),
    DoubleInterval(DoubleInterval),
    Cantor(CantorTruncation),
    Presentation(DSpace),
}

pub struct Source {
    pub loaded: Loaded,
    /// Bytes the inputs digest is taken over.
    pub digest_input: Vec<u8>,
}

pub fn load(spec: &str) -> Result<Source> {
    let builtin = |loaded| Source { loaded, digest_input: format!("builtin:{spec}").into_bytes() };
    if spec == "arens" {
        return Ok(builtin(Loaded::Arens(ArensSpace::default())));
    }
    if spec == "double-interval" {
        return Ok(builtin(Loaded::DoubleInterval(DoubleInterval::default())));
    }
    if let Some(k) = spec.strip_prefix("cantor:") {
        let k: u32 = k.parse().with_context(|| format!("cantor:{k}: expected a bit count"))?;
        return Ok(builtin(Loaded::Cantor(CantorTruncation::new(k)?)));
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| cobweb_core::Error::parse(format!("line {}", e.line()), e.to_string()))?;
    let loaded = if value.get("sequences").is_some() {
        Loaded::Presentation(DSpace::new(parse_presentation(&text)?))
    } else {
        Loaded::Finite(parse_space(&text)?)
    };
    Ok(Source { loaded, digest_input: text.into_bytes() })
}

/// The presentation behind an `eres` query or census.
pub fn presentation(spec: &str) -> Result<(SeqPresentation, Vec<u8>)> {
    if spec == "arens" {
        return Ok((arens_presentation(ARENS_PRESENTATION_BOUND)?, b"builtin:arens".to_vec()));
    }
    let source = load(spec)?;
    match source.loaded {
        Loaded::Presentation(d) => Ok((d.presentation().clone(), source.digest_input)),
        _ => bail!("{spec}: expected a sequence presentation (a file with \"sequences\", or arens)"),
    }
}
