//! Embedded B2 reference tables and their verification against the crystal.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::caps::Caps;
use crate::cartan::{builtin, unfold, UnfoldedQuiver};
use crate::coweight::EvenCoweight;
use crate::crystal::{closure_minfty, labels, CrystalError};

pub const B2_TABLES: &str = include_str!("../data/b2_golden.txt");

/// Unfolded vertices in the column order used by the tables: 1̲, 2̲, 3̲.
const COLUMNS: [(usize, i64); 3] = [(0, 4), (1, 2), (0, 2)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub mu: Vec<i64>,
    pub weight: Vec<i64>,
    /// Display-form coweights; empty when the row only asserts presence.
    pub gammas: Vec<String>,
    pub within: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub tag: String,
    pub rho: String,
    pub nodes: usize,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CaseReport {
    pub case: String,
    pub rho: String,
    pub nodes: usize,
    pub expected_nodes: usize,
    pub rows: usize,
    pub labels_checked: usize,
    pub diffs: Vec<String>,
}

impl CaseReport {
    pub fn ok(&self) -> bool {
        self.diffs.is_empty()
    }
}

fn ints(text: &str) -> Result<Vec<i64>, String> {
    text.split(',').map(|t| t.trim().parse().map_err(|_| format!("bad integer list {text:?}"))).collect()
}

pub fn parse_tables(text: &str) -> Result<Vec<Case>, String> {
    let mut cases: Vec<Case> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| format!("line {}: {m}", no + 1);
        if let Some(rest) = line.strip_prefix("case ") {
            let mut parts = rest.split_whitespace();
            let tag = parts.next().ok_or_else(|| err("missing tag"))?.to_string();
            let mut rho = None;
            let mut nodes = None;
            for p in parts {
                match p.split_once('=') {
                    Some(("rho", v)) => rho = Some(v.to_string()),
                    Some(("nodes", v)) => nodes = Some(v.parse().map_err(|_| err("bad node count"))?),
                    _ => return Err(err("unknown case field")),
                }
            }
            cases.push(Case {
                tag,
                rho: rho.ok_or_else(|| err("missing rho"))?,
                nodes: nodes.ok_or_else(|| err("missing nodes"))?,
                rows: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("row ") {
            let case = cases.last_mut().ok_or_else(|| err("row before case"))?;
            let (rest, within) = match rest.split_once("within=") {
                Some((r, w)) => (r, Some(ints(w).map_err(|m| err(&m))?)),
                None => (rest, None),
            };
            let (head, gammas) = rest.split_once("gammas=").unwrap_or((rest, ""));
            let mut mu = None;
            let mut weight = None;
            for p in head.split_whitespace() {
                match p.split_once('=') {
                    Some(("mu", v)) => mu = Some(ints(v).map_err(|m| err(&m))?),
                    Some(("weight", v)) => weight = Some(ints(v).map_err(|m| err(&m))?),
                    _ => return Err(err("unknown row field")),
                }
            }
            case.rows.push(Row {
                mu: mu.ok_or_else(|| err("missing mu"))?,
                weight: weight.ok_or_else(|| err("missing weight"))?,
                gammas: gammas.split('|').map(str::trim).filter(|g| !g.is_empty()).map(String::from).collect(),
                within,
            });
        } else {
            return Err(err("expected `case` or `row`"));
        }
    }
    Ok(cases)
}

/// Reorder a weight over `uq.vertices()` into table columns.
fn to_columns(uq: &UnfoldedQuiver, w: &[i64]) -> Vec<i64> {
    COLUMNS.iter().map(|&v| w[uq.index_of(v).expect("B2 vertex")]).collect()
}

pub fn verify_case(uq: &UnfoldedQuiver, case: &Case, caps: &Caps) -> Result<CaseReport, CrystalError> {
    let datum = uq.base();
    let mut diffs = Vec::new();
    let rho = match EvenCoweight::parse_display(&case.rho, datum) {
        Ok(r) => r,
        Err(e) => {
            diffs.push(format!("rho {}: {e}", case.rho));
            return Ok(report(case, 0, 0, diffs));
        }
    };
    let closure = closure_minfty(uq, &rho, caps)?;
    let graph = &closure.graph;
    let labs = labels(uq, &rho, graph)?;
    let roots = graph.component_roots();
    if graph.len() != case.nodes {
        diffs.push(format!("node count {} expected {}", graph.len(), case.nodes));
    }

    // (mu, weight) -> [(label text, component highest weight)]
    let mut found: BTreeMap<(Vec<i64>, Vec<i64>), Vec<(String, Vec<i64>)>> = BTreeMap::new();
    for l in &labs {
        let Some(mu) = l.shift.clone() else {
            diffs.push(format!("node {} has no a-factorisation", l.monomial));
            continue;
        };
        let top = to_columns(uq, &labs[roots[l.node]].weight);
        let text = l.gamma_text.clone().unwrap_or_default();
        found.entry((mu, to_columns(uq, &l.weight))).or_default().push((text, top));
    }

    let expected: BTreeSet<(Vec<i64>, Vec<i64>)> = case.rows.iter().map(|r| (r.mu.clone(), r.weight.clone())).collect();
    for key in found.keys().filter(|k| !expected.contains(*k)) {
        diffs.push(format!("unexpected pair mu={:?} weight={:?}", key.0, key.1));
    }
    for key in expected.iter().filter(|k| !found.contains_key(*k)) {
        diffs.push(format!("missing pair mu={:?} weight={:?}", key.0, key.1));
    }

    let mut checked = 0;
    for row in case.rows.iter().filter(|r| !r.gammas.is_empty()) {
        let key = (row.mu.clone(), row.weight.clone());
        let mut want = BTreeSet::new();
        for g in &row.gammas {
            match EvenCoweight::parse_display(g, datum) {
                Ok(c) => {
                    want.insert(c.canonical().display(datum));
                }
                Err(e) => diffs.push(format!("gamma {g}: {e}")),
            }
        }
        let have: BTreeSet<String> = found
            .get(&key)
            .into_iter()
            .flatten()
            .filter(|(_, top)| row.within.as_ref().is_none_or(|w| w == top))
            .map(|(t, _)| t.clone())
            .collect();
        checked += want.len();
        if have != want {
            diffs.push(format!(
                "mu={:?} weight={:?}{}: labels {:?} expected {:?}",
                row.mu,
                row.weight,
                row.within.as_ref().map(|w| format!(" within {w:?}")).unwrap_or_default(),
                have,
                want
            ));
        }
    }
    Ok(report(case, graph.len(), checked, diffs))
}

fn report(case: &Case, nodes: usize, checked: usize, diffs: Vec<String>) -> CaseReport {
    CaseReport {
        case: case.tag.clone(),
        rho: case.rho.clone(),
        nodes,
        expected_nodes: case.nodes,
        rows: case.rows.len(),
        labels_checked: checked,
        diffs,
    }
}

/// Run every embedded case, optionally restricted to one tag.
pub fn verify_b2(only: Option<&str>, caps: &Caps) -> Result<Vec<CaseReport>, CrystalError> {
    let cases = parse_tables(B2_TABLES).expect("embedded tables parse");
    let uq = unfold(&builtin("B2").expect("builtin"), None).expect("B2 unfolds");
    cases.iter().filter(|c| only.is_none_or(|t| t == c.tag)).map(|c| verify_case(&uq, c, caps)).collect()
}
