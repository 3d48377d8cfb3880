//! Resource ceilings shared by the closure and the relation checker.

use std::env;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Closure rounds before giving up.
    pub iterations: usize,
    /// Crystal nodes before giving up.
    pub nodes: usize,
    /// Delta-calculus terms in a single product before giving up.
    pub terms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { iterations: 10, nodes: 100_000, terms: 200_000 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad caps string {0:?}: expected e.g. nodes=5000,iterations=4,terms=10000")]
pub struct CapsParseError(pub String);

impl Caps {
    /// Parse `key=value` pairs separated by commas, starting from `self`.
    pub fn overridden(mut self, text: &str) -> Result<Self, CapsParseError> {
        let bad = || CapsParseError(text.to_string());
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            match k.trim() {
                "iterations" => self.iterations = v,
                "nodes" => self.nodes = v,
                "terms" => self.terms = v,
                _ => return Err(bad()),
            }
        }
        Ok(self)
    }

    /// Defaults overridden by the FOLDCRYS_CAPS environment variable.
    pub fn from_env() -> Result<Self, CapsParseError> {
        match env::var("FOLDCRYS_CAPS") {
            Ok(text) => Caps::default().overridden(&text),
            Err(_) => Ok(Caps::default()),
        }
    }
}
