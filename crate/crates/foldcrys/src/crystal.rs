//! The even monomial crystal over an unfolded quiver.
//!
//! For an unfolded vertex (i, r) the statistics run over the progression
//! k ≡ r mod 2d_i: ε_l = -Σ_{k≤l} u_k and φ_l = Σ_{k>l} u_k.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::caps::Caps;
use crate::cartan::UnfoldedQuiver;
use crate::coweight::EvenCoweight;
use crate::monomial::{a_factorize, a_monomial, z_rho, Monomial, MonomialError};
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("CapExceeded: {what} limit {limit} reached")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("NotDominantSeed: {0}")]
    NotDominantSeed(String),
    #[error("unknown unfolded vertex index {0}")]
    UnknownVertex(usize),
}

/// ε, φ and the extreme argmax positions at one unfolded vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub eps: i64,
    pub phi: i64,
    /// Smallest l maximising ε_l, present when ε > 0.
    pub m_l: Option<i64>,
    /// Largest l maximising φ_l, present when φ > 0.
    pub n_l: Option<i64>,
}

/// Exponents of m along the progression of unfolded vertex x, sorted by k.
fn progression(uq: &UnfoldedQuiver, m: &Monomial, x: usize) -> Vec<(i64, i64)> {
    let (i, r) = uq.vertices()[x];
    let step = 2 * uq.base().d(i);
    m.support().filter(|&(j, k, _)| j == i && (k - r).rem_euclid(step) == 0).map(|(_, k, e)| (k, e)).collect()
}

pub fn eps_phi(uq: &UnfoldedQuiver, m: &Monomial, x: usize) -> Result<Stats, CrystalError> {
    if x >= uq.len() {
        return Err(CrystalError::UnknownVertex(x));
    }
    m.check_even(uq)?;
    let step = 2 * uq.base().d(uq.vertices()[x].0);
    let pts = progression(uq, m, x);
    let total: i64 = pts.iter().map(|p| p.1).sum();
    // interval j covers [s_j, s_{j+1}); interval 0 is everything below s_1
    let mut values = vec![0i64];
    let mut prefix = 0;
    for &(_, e) in &pts {
        prefix += e;
        values.push(-prefix);
    }
    let eps = *values.iter().max().unwrap();
    let first = values.iter().position(|&v| v == eps).unwrap();
    let last = values.iter().rposition(|&v| v == eps).unwrap();
    let m_l = (eps > 0).then(|| pts[first - 1].0);
    let phi = eps + total;
    let n_l = (phi > 0).then(|| pts[last].0 - step);
    Ok(Stats { eps, phi, m_l, n_l })
}

/// Brute evaluation of ε_l and φ_l at one l, for tests and cross-checks.
pub fn eps_phi_at(uq: &UnfoldedQuiver, m: &Monomial, x: usize, l: i64) -> (i64, i64) {
    let pts = progression(uq, m, x);
    let below: i64 = pts.iter().filter(|p| p.0 <= l).map(|p| p.1).sum();
    let above: i64 = pts.iter().filter(|p| p.0 > l).map(|p| p.1).sum();
    (-below, above)
}

pub fn e_tilde(uq: &UnfoldedQuiver, m: &Monomial, x: usize) -> Result<Option<Monomial>, CrystalError> {
    let s = eps_phi(uq, m, x)?;
    let i = uq.vertices()[x].0;
    Ok(s.m_l.map(|l| m.mul(&a_monomial(uq.base(), i, l))))
}

pub fn f_tilde(uq: &UnfoldedQuiver, m: &Monomial, x: usize) -> Result<Option<Monomial>, CrystalError> {
    let s = eps_phi(uq, m, x)?;
    let i = uq.vertices()[x].0;
    Ok(s.n_l.map(|l| m.div(&a_monomial(uq.base(), i, l))))
}

/// A finite subcrystal: nodes in discovery order and f̃-edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrystalGraph {
    nodes: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// (from, unfolded vertex, to) with to = f̃_vertex(from).
    edges: BTreeSet<(usize, usize, usize)>,
}

impl CrystalGraph {
    pub fn nodes(&self) -> &[Monomial] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    fn insert(&mut self, m: Monomial) -> (usize, bool) {
        if let Some(&k) = self.index.get(&m) {
            return (k, false);
        }
        let k = self.nodes.len();
        self.index.insert(m.clone(), k);
        self.nodes.push(m);
        (k, true)
    }

    /// For each node, the index of the source node of its connected component.
    pub fn component_roots(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, _, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let has_in: BTreeSet<usize> = self.edges.iter().map(|e| e.2).collect();
        let mut source = HashMap::new();
        for k in 0..self.nodes.len() {
            if !has_in.contains(&k) {
                source.entry(find(&mut parent, k)).or_insert(k);
            }
        }
        (0..self.nodes.len()).map(|k| source[&find(&mut parent, k)]).collect()
    }

    /// Nodes annihilated by every ẽ.
    pub fn highest(&self, uq: &UnfoldedQuiver) -> Vec<usize> {
        let has_in: BTreeSet<usize> = self.edges.iter().map(|e| e.2).collect();
        (0..self.nodes.len())
            .filter(|k| !has_in.contains(k))
            .filter(|&k| (0..uq.len()).all(|x| e_tilde(uq, &self.nodes[k], x).unwrap().is_none()))
            .collect()
    }

    /// Multiset of weights, the character of the subcrystal.
    pub fn character(&self, uq: &UnfoldedQuiver) -> BTreeMap<Vec<i64>, usize> {
        let mut ch = BTreeMap::new();
        for m in &self.nodes {
            *ch.entry(m.weight(uq).expect("even node")).or_insert(0) += 1;
        }
        ch
    }

    /// Re-derive every edge from the operators and confirm closure.
    pub fn verify_closed(&self, uq: &UnfoldedQuiver) -> Result<(), String> {
        let mut seen = 0;
        for (k, m) in self.nodes.iter().enumerate() {
            for x in 0..uq.len() {
                let f = f_tilde(uq, m, x).map_err(|e| e.to_string())?;
                if let Some(y) = f {
                    let t = self.index_of(&y).ok_or_else(|| format!("f̃ leaves the graph at {m}"))?;
                    if !self.edges.contains(&(k, x, t)) {
                        return Err(format!("missing edge {m} -> {y}"));
                    }
                    seen += 1;
                }
                if let Some(y) = e_tilde(uq, m, x).map_err(|e| e.to_string())? {
                    if !self.contains(&y) {
                        return Err(format!("ẽ leaves the graph at {m}"));
                    }
                }
            }
        }
        if seen != self.edges.len() {
            return Err("graph has edges the operators do not produce".into());
        }
        Ok(())
    }

    fn absorb(&mut self, other: &CrystalGraph) {
        let map: Vec<usize> = other.nodes.iter().map(|m| self.insert(m.clone()).0).collect();
        for &(a, x, b) in &other.edges {
            self.edges.insert((map[a], x, map[b]));
        }
    }
}

/// Connected component of m under all ẽ and f̃, breadth first.
pub fn component(uq: &UnfoldedQuiver, m: &Monomial, cap: usize) -> Result<CrystalGraph, CrystalError> {
    m.check_even(uq)?;
    let mut g = CrystalGraph::default();
    g.insert(m.clone());
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let snapshot: Vec<Monomial> = frontier.iter().map(|&k| g.nodes[k].clone()).collect();
        let moves = par::map(&snapshot, |node| {
            (0..uq.len())
                .map(|x| {
                    let f = f_tilde(uq, node, x).expect("even node");
                    let e = e_tilde(uq, node, x).expect("even node");
                    (x, f, e)
                })
                .collect::<Vec<_>>()
        });
        let mut next = Vec::new();
        for (&from, node_moves) in frontier.iter().zip(moves) {
            for (x, f, e) in node_moves {
                if let Some(y) = f {
                    let (to, fresh) = g.insert(y);
                    g.edges.insert((from, x, to));
                    if fresh {
                        next.push(to);
                    }
                }
                if let Some(y) = e {
                    let (to, fresh) = g.insert(y);
                    g.edges.insert((to, x, from));
                    if fresh {
                        next.push(to);
                    }
                }
            }
            if g.len() > cap {
                return Err(CrystalError::CapExceeded { what: "nodes", limit: cap });
            }
        }
        frontier = next;
    }
    Ok(g)
}

/// Result of the closure: the generated subcrystal and its ℓ-dominant monomials.
#[derive(Debug, Clone)]
pub struct Closure {
    pub graph: CrystalGraph,
    pub dominant: Vec<Monomial>,
    pub rounds: usize,
}

/// All products taking one element from the component of each variable of
/// `seed`, variables counted with multiplicity.
pub fn first_layer(
    uq: &UnfoldedQuiver,
    seed: &Monomial,
    components: &mut HashMap<(usize, i64), CrystalGraph>,
    caps: &Caps,
) -> Result<BTreeSet<Monomial>, CrystalError> {
    if !seed.is_dominant() {
        return Err(CrystalError::NotDominantSeed(seed.to_string()));
    }
    let missing: Vec<(usize, i64)> =
        seed.support().map(|(i, k, _)| (i, k)).filter(|key| !components.contains_key(key)).collect();
    let built = par::map(&missing, |&(i, k)| component(uq, &Monomial::var(i, k), caps.nodes));
    for (key, g) in missing.into_iter().zip(built) {
        components.insert(key, g?);
    }
    let mut products: BTreeSet<Monomial> = [Monomial::one()].into();
    for (i, k, e) in seed.support() {
        let comp = &components[&(i, k)];
        for _ in 0..e {
            let mut next = BTreeSet::new();
            for p in &products {
                for b in comp.nodes() {
                    next.insert(p.mul(b));
                }
            }
            if next.len() > caps.nodes {
                return Err(CrystalError::CapExceeded { what: "nodes", limit: caps.nodes });
            }
            products = next;
        }
    }
    Ok(products)
}

/// Iterate M¹ over new ℓ-dominant monomials until no new ones appear, then
/// return the subcrystal generated by everything reached.
pub fn closure_minfty(uq: &UnfoldedQuiver, rho: &EvenCoweight, caps: &Caps) -> Result<Closure, CrystalError> {
    let seed = z_rho(uq, rho)?;
    closure_from(uq, &seed, caps)
}

pub fn closure_from(uq: &UnfoldedQuiver, seed: &Monomial, caps: &Caps) -> Result<Closure, CrystalError> {
    seed.check_even(uq)?;
    if !seed.is_dominant() {
        return Err(CrystalError::NotDominantSeed(seed.to_string()));
    }
    let mut components = HashMap::new();
    let mut reached: BTreeSet<Monomial> = BTreeSet::new();
    let mut dominant: BTreeSet<Monomial> = [seed.clone()].into();
    let mut frontier = vec![seed.clone()];
    let mut rounds = 0;
    while !frontier.is_empty() {
        if rounds == caps.iterations {
            return Err(CrystalError::CapExceeded { what: "iterations", limit: caps.iterations });
        }
        rounds += 1;
        let mut fresh = BTreeSet::new();
        for d in &frontier {
            for p in first_layer(uq, d, &mut components, caps)? {
                if p.is_dominant() && !dominant.contains(&p) {
                    fresh.insert(p.clone());
                }
                reached.insert(p);
            }
            if reached.len() > caps.nodes {
                return Err(CrystalError::CapExceeded { what: "nodes", limit: caps.nodes });
            }
        }
        dominant.extend(fresh.iter().cloned());
        frontier = fresh.into_iter().collect();
    }
    // the generated subcrystal: union of the components through every reached node
    let mut graph = CrystalGraph::default();
    for m in &reached {
        if graph.contains(m) {
            continue;
        }
        let c = component(uq, m, caps.nodes)?;
        graph.absorb(&c);
        if graph.len() > caps.nodes {
            return Err(CrystalError::CapExceeded { what: "nodes", limit: caps.nodes });
        }
    }
    let dominant = graph.nodes().iter().filter(|m| m.is_dominant()).cloned().collect();
    Ok(Closure { graph, dominant, rounds })
}

/// The label attached to one crystal node m: γ with z_ρ a_γ^{-1} = m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Label {
    pub node: usize,
    pub monomial: String,
    /// Doubled entries per vertex; absent when z_ρ / m is not an a-product.
    pub gamma: Option<Vec<Vec<i64>>>,
    pub gamma_text: Option<String>,
    /// Weight over the unfolded vertices (fundamental-weight coordinates).
    pub weight: Vec<i64>,
    /// Shift over the base vertices: l_i - Σ_j a_j c_ji.
    pub shift: Option<Vec<i64>>,
    pub dominant: bool,
}

pub fn labels(uq: &UnfoldedQuiver, rho: &EvenCoweight, graph: &CrystalGraph) -> Result<Vec<Label>, CrystalError> {
    let zr = z_rho(uq, rho)?;
    let datum = uq.base();
    let out = par::map(graph.nodes(), |m| {
        let gamma = a_factorize(uq, &zr.div(m)).map(|pairs| {
            let mut d = vec![Vec::new(); datum.n()];
            for (i, k) in pairs {
                d[i].push(k);
            }
            EvenCoweight::new(d).canonical()
        });
        let shift = gamma.as_ref().map(|g| crate::coweight::shift_mu(datum, &rho.dims(), &g.dims()));
        Label {
            node: graph.index_of(m).unwrap(),
            monomial: m.to_string(),
            gamma_text: gamma.as_ref().map(|g| g.display(datum)),
            gamma: gamma.map(|g| g.entries().to_vec()),
            weight: m.weight(uq).expect("even node"),
            shift,
            dominant: m.is_dominant(),
        }
    });
    Ok(out)
}

/// Graphviz rendering, edges labelled by unfolded vertex.
/// Every crystal axiom at every unfolded vertex for one even monomial;
/// returns the first violation found.
pub fn axiom_violation(uq: &UnfoldedQuiver, m: &Monomial) -> Result<Option<String>, CrystalError> {
    let weight = m.weight(uq)?;
    let cartan = uq.cartan();
    for x in 0..uq.len() {
        let label = uq.label(x);
        let s = eps_phi(uq, m, x)?;
        // ε and φ are the maxima of the pointwise values, whose difference is constant
        let pts = progression(uq, m, x);
        let probes: Vec<i64> = pts.iter().flat_map(|p| [p.0 - 1, p.0, p.0 + 1]).chain([i64::MIN / 4]).collect();
        let at: Vec<(i64, i64)> = probes.iter().map(|&l| eps_phi_at(uq, m, x, l)).collect();
        let gap = at[0].1 - at[0].0;
        if at.iter().any(|(e, f)| f - e != gap) {
            return Ok(Some(format!("φ_l - ε_l varies at {label}")));
        }
        let eps_max = at.iter().map(|p| p.0).max().unwrap_or(0).max(0);
        let phi_max = at.iter().map(|p| p.1).max().unwrap_or(0).max(0);
        if (s.eps, s.phi) != (eps_max, phi_max) {
            return Ok(Some(format!(
                "(ε, φ) = ({}, {}) at {label}, pointwise maxima ({eps_max}, {phi_max})",
                s.eps, s.phi
            )));
        }
        if s.phi - s.eps != weight[x] {
            return Ok(Some(format!("φ - ε = {} but the weight is {} at {label}", s.phi - s.eps, weight[x])));
        }
        let down = f_tilde(uq, m, x)?;
        if down.is_none() != (s.phi == 0) {
            return Ok(Some(format!("f̃ existence disagrees with φ = {} at {label}", s.phi)));
        }
        if let Some(n) = down {
            if !n.is_even(uq) {
                return Ok(Some(format!("f̃ at {label} leaves the even part")));
            }
            let t = eps_phi(uq, &n, x)?;
            if (t.eps, t.phi) != (s.eps + 1, s.phi - 1) {
                return Ok(Some(format!(
                    "f̃ at {label} moves (ε, φ) from ({}, {}) to ({}, {})",
                    s.eps, s.phi, t.eps, t.phi
                )));
            }
            let w = n.weight(uq)?;
            if (0..uq.len()).any(|y| w[y] != weight[y] - cartan[x][y]) {
                return Ok(Some(format!("f̃ at {label} shifts the weight by something other than a simple root")));
            }
            if e_tilde(uq, &n, x)?.as_ref() != Some(m) {
                return Ok(Some(format!("ẽ does not undo f̃ at {label}")));
            }
        }
        if let Some(n) = e_tilde(uq, m, x)? {
            if f_tilde(uq, &n, x)?.as_ref() != Some(m) {
                return Ok(Some(format!("f̃ does not undo ẽ at {label}")));
            }
        } else if s.eps != 0 {
            return Ok(Some(format!("ẽ vanishes with ε = {} at {label}", s.eps)));
        }
    }
    Ok(None)
}

pub fn to_dot(uq: &UnfoldedQuiver, g: &CrystalGraph) -> String {
    let mut s = String::from("digraph crystal {\n  node [shape=box];\n");
    for (k, m) in g.nodes().iter().enumerate() {
        s.push_str(&format!("  n{k} [label=\"{m}\"];\n"));
    }
    for (a, x, b) in g.edges() {
        s.push_str(&format!("  n{a} -> n{b} [label=\"{}\"];\n", uq.label(x)));
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct JsonNode {
    id: usize,
    monomial: String,
    triples: Vec<[i64; 3]>,
    weight: Vec<i64>,
}

#[derive(Serialize)]
struct JsonEdge {
    from: usize,
    to: usize,
    vertex: [i64; 2],
}

#[derive(Serialize)]
struct JsonGraph {
    vertices: Vec<[i64; 2]>,
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
    highest: Vec<usize>,
}

pub fn to_json(uq: &UnfoldedQuiver, g: &CrystalGraph) -> serde_json::Value {
    let v = |x: usize| {
        let (i, r) = uq.vertices()[x];
        [i as i64 + 1, r]
    };
    let doc = JsonGraph {
        vertices: (0..uq.len()).map(v).collect(),
        nodes: g
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, m)| JsonNode {
                id,
                monomial: m.to_string(),
                triples: m.to_triples(),
                weight: m.weight(uq).expect("even node"),
            })
            .collect(),
        edges: g.edges().map(|(a, x, b)| JsonEdge { from: a, to: b, vertex: v(x) }).collect(),
        highest: g.highest(uq),
    };
    serde_json::to_value(doc).expect("serialisable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin, unfold};
    use crate::lie::{weight_multiplicities, RootSystem};

    fn b2() -> UnfoldedQuiver {
        unfold(&builtin("B2").unwrap(), None).unwrap()
    }

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn single_variable_stats() {
        let uq = b2();
        let x = uq.index_of((0, 4)).unwrap();
        let s = eps_phi(&uq, &mono("z[1,4]"), x).unwrap();
        assert_eq!((s.eps, s.phi, s.m_l, s.n_l), (0, 1, None, Some(0)));
        let s = eps_phi(&uq, &mono("z[1,4]^-1"), x).unwrap();
        assert_eq!((s.eps, s.phi, s.m_l, s.n_l), (1, 0, Some(4), None));
        // the two factors cancel on every interval of the progression
        let m = mono("z[1,0] * z[1,4]^-1");
        let s = eps_phi(&uq, &m, x).unwrap();
        let brute = (-8..=8).step_by(4).map(|l| eps_phi_at(&uq, &m, x, l));
        assert_eq!(s.eps, brute.clone().map(|v| v.0).max().unwrap());
        assert_eq!(s.phi, brute.map(|v| v.1).max().unwrap());
        assert_eq!((s.eps, s.phi), (0, 0));
        assert!(matches!(eps_phi(&uq, &mono("z[1,1]"), x), Err(CrystalError::Monomial(_))));
    }

    #[test]
    fn kashiwara_examples() {
        let uq = b2();
        let x = uq.index_of((0, 4)).unwrap();
        // f̃ acts at the largest argmax, one step below the variable
        assert_eq!(f_tilde(&uq, &mono("z[1,4]"), x).unwrap(), Some(mono("z[1,0]^-1 * z[2,2]")));
        assert_eq!(e_tilde(&uq, &mono("z[1,0]^-1 * z[2,2]"), x).unwrap(), Some(mono("z[1,4]")));
        assert_eq!(f_tilde(&uq, &mono("z[1,0]"), x).unwrap(), Some(mono("z[1,-4]^-1 * z[2,-2]")));
        for y in 0..uq.len() {
            assert_eq!(f_tilde(&uq, &Monomial::one(), y).unwrap(), None);
            assert_eq!(e_tilde(&uq, &Monomial::one(), y).unwrap(), None);
        }
    }

    #[test]
    fn b2_components_are_a3_fundamentals() {
        let uq = b2();
        let rs = RootSystem::new(uq.cartan().to_vec()).unwrap();
        for (m, size) in [("z[1,4]", 4), ("z[2,2]", 6), ("z[1,2]", 4)] {
            let g = component(&uq, &mono(m), 1000).unwrap();
            assert_eq!(g.len(), size, "{m}");
            g.verify_closed(&uq).unwrap();
            let w = mono(m).weight(&uq).unwrap();
            let ch = weight_multiplicities(&rs, &w).unwrap();
            let expect: BTreeMap<Vec<i64>, usize> = ch.iter().map(|(k, &v)| (k.clone(), v as usize)).collect();
            assert_eq!(g.character(&uq), expect, "{m}");
            assert_eq!(g.highest(&uq), vec![0]);
        }
        assert_eq!(component(&uq, &Monomial::one(), 10).unwrap().len(), 1);
        assert!(matches!(component(&uq, &mono("z[2,2]"), 3), Err(CrystalError::CapExceeded { .. })));
    }

    #[test]
    fn g2_components_are_d4_fundamentals() {
        let uq = unfold(&builtin("G2").unwrap(), None).unwrap();
        let rs = RootSystem::new(uq.cartan().to_vec()).unwrap();
        // the long vertex splits into the three legs, the short one is the centre
        for (m, size) in [("z[1,6]", 8), ("z[1,4]", 8), ("z[1,2]", 8), ("z[2,1]", 28)] {
            let g = component(&uq, &mono(m), 1000).unwrap();
            assert_eq!(g.len(), size, "{m}");
            let w = mono(m).weight(&uq).unwrap();
            let total: u64 = weight_multiplicities(&rs, &w).unwrap().values().sum();
            assert_eq!(total as usize, size, "{m}");
        }
    }

    #[test]
    fn first_layer_is_order_independent() {
        let uq = b2();
        let caps = Caps::default();
        let mut cache = HashMap::new();
        let a = first_layer(&uq, &mono("z[1,0] * z[1,-2]"), &mut cache, &caps).unwrap();
        let mut cache2 = HashMap::new();
        let _ = first_layer(&uq, &mono("z[1,-2]"), &mut cache2, &caps).unwrap();
        let b = first_layer(&uq, &mono("z[1,-2] * z[1,0]"), &mut cache2, &caps).unwrap();
        assert_eq!(a, b);
        assert!(first_layer(&uq, &mono("z[1,0]^-1"), &mut cache, &caps).is_err());
    }

    #[test]
    fn single_factor_closure_is_component() {
        let uq = b2();
        let c = closure_from(&uq, &mono("z[2,0]"), &Caps::default()).unwrap();
        let comp = component(&uq, &mono("z[2,0]"), 100).unwrap();
        assert_eq!(c.graph.len(), comp.len());
        assert_eq!(c.dominant, vec![mono("z[2,0]")]);
    }

    #[test]
    fn exports() {
        let uq = b2();
        let g = component(&uq, &mono("z[1,4]"), 100).unwrap();
        let dot = to_dot(&uq, &g);
        assert!(dot.starts_with("digraph crystal {"));
        assert_eq!(dot.matches("->").count(), 3);
        let js = to_json(&uq, &g);
        assert_eq!(js["nodes"].as_array().unwrap().len(), 4);
        assert_eq!(js["highest"], serde_json::json!([0]));
    }
}
