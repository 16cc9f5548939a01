//! Loading JSON inputs and telling their kinds apart by their top-level keys.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;
use zappa::category::{FiniteCategory, RawCategory};
use zappa::matched_pair::{MatchedPair, RawMatchedPair};
use zappa::odometer::{RawWeightedGraph, WeightedGraph};
use zappa::Error;

use crate::Failure;

pub enum Input {
    Category(FiniteCategory),
    Pair(MatchedPair),
    Graph(WeightedGraph),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Category(_) => "category",
            Input::Pair(_) => "matched pair",
            Input::Graph(_) => "weighted graph",
        }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Deserialise with serde_json's line/column in the message.
pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Lib(Error::Parse(format!("{}: {e}", path.display()))))
}

pub fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let v: Value = parse(path, &text)?;
    let has = |k: &str| v.get(k).is_some();
    if has("C") && has("D") {
        let raw: RawMatchedPair = parse(path, &text)?;
        Ok(Input::Pair(MatchedPair::from_raw(&raw)?))
    } else if has("vertices") && has("edges") {
        let raw: RawWeightedGraph = parse(path, &text)?;
        Ok(Input::Graph(WeightedGraph::from_raw(&raw)?))
    } else if has("objects") && has("morphisms") {
        let raw: RawCategory = parse(path, &text)?;
        Ok(Input::Category(FiniteCategory::from_raw(&raw)?))
    } else {
        Err(Failure::Lib(Error::Parse(format!(
            "{}: expected a category, matched pair or weighted graph",
            path.display()
        ))))
    }
}

pub fn pair(path: &Path) -> Result<MatchedPair, Failure> {
    match load(path)? {
        Input::Pair(mp) => Ok(mp),
        other => Err(Failure::Usage(format!("{}: expected a matched pair, found a {}", path.display(), other.kind()))),
    }
}

pub fn graph(path: &Path) -> Result<WeightedGraph, Failure> {
    match load(path)? {
        Input::Graph(g) => Ok(g),
        other => Err(Failure::Usage(format!("{}: expected a weighted graph, found a {}", path.display(), other.kind()))),
    }
}

/// A category, or the Zappa–Szép product of a matched pair.
pub fn category(path: &Path) -> Result<FiniteCategory, Failure> {
    match load(path)? {
        Input::Category(c) => Ok(c),
        Input::Pair(mp) => Ok(mp.zappa_szep()?.category),
        Input::Graph(_) => Err(Failure::Usage(format!("{}: expected a category, found a weighted graph", path.display()))),
    }
}
