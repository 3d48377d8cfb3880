//! Cartan data, the oriented quiver and the unfolding to a symmetric matrix.
//!
//! Vertices are 0-based internally. Everything that is printed or parsed
//! uses 1-based vertex labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// One broken invariant of a raw Cartan datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    NotSquare,
    SizeMismatch { field: &'static str, expected: usize, found: usize },
    BadDiagonal { i: Vertex },
    PositiveOffDiagonal { i: Vertex, j: Vertex },
    AsymmetricZero { i: Vertex, j: Vertex },
    NonPositiveSymmetrizer { i: Vertex },
    NonSymmetrizable { i: Vertex, j: Vertex },
    NotFiniteType { minor: usize },
    NotCoprime { gcd: i64 },
    BadParity { i: Vertex, j: Vertex },
    ParityValue { i: Vertex },
    BadOrder { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare => write!(f, "Cartan matrix is not square"),
            Violation::SizeMismatch { field, expected, found } => {
                write!(f, "{field} has length {found}, expected {expected}")
            }
            Violation::BadDiagonal { i } => write!(f, "c[{0}][{0}] != 2", i + 1),
            Violation::PositiveOffDiagonal { i, j } => write!(f, "c[{}][{}] > 0", i + 1, j + 1),
            Violation::AsymmetricZero { i, j } => {
                write!(f, "c[{}][{}] = 0 but c[{}][{}] != 0", i + 1, j + 1, j + 1, i + 1)
            }
            Violation::NonPositiveSymmetrizer { i } => write!(f, "d[{}] <= 0", i + 1),
            Violation::NonSymmetrizable { i, j } => {
                write!(f, "NonSymmetrizable: d[{a}]c[{a}][{b}] != d[{b}]c[{b}][{a}]", a = i + 1, b = j + 1)
            }
            Violation::NotFiniteType { minor } => {
                write!(f, "NotFiniteType: leading minor of order {minor} is not positive")
            }
            Violation::NotCoprime { gcd } => write!(f, "NotCoprime: gcd(d) = {gcd}"),
            Violation::BadParity { i, j } => {
                write!(f, "BadParity: adjacent vertices {} and {} share a parity", i + 1, j + 1)
            }
            Violation::ParityValue { i } => write!(f, "BadParity: p({}) is not 0 or 1", i + 1),
            Violation::BadOrder { detail } => write!(f, "bad vertex order: {detail}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("invalid Cartan datum: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("ClassCountMismatch: closure produced {0} classes, expected 2")]
    ClassCountMismatch(usize),
    #[error("UnknownVertex: ({0}, {1})")]
    UnknownVertex(Vertex, i64),
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("malformed datum input: {0}")]
    Malformed(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A validated Cartan datum with parity and a compatible total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    parity: Vec<u8>,
    /// Vertices listed from smallest to largest.
    order: Vec<Vertex>,
    name: Option<String>,
}

impl CartanDatum {
    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn c(&self, i: Vertex, j: Vertex) -> i64 {
        self.c[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn d(&self, i: Vertex) -> i64 {
        self.d[i]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// b_ij = d_i c_ij.
    pub fn b(&self, i: Vertex, j: Vertex) -> i64 {
        self.d[i] * self.c[i][j]
    }

    pub fn parity(&self, i: Vertex) -> u8 {
        self.parity[i]
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Position of `i` in the total order.
    pub fn rank(&self, i: Vertex) -> usize {
        self.order.iter().position(|&v| v == i).expect("vertex in order")
    }

    /// Edge i -> j of the oriented quiver: adjacent, i even, j odd.
    pub fn arrow(&self, i: Vertex, j: Vertex) -> bool {
        i != j && self.c[i][j] < 0 && self.parity[i] == 0 && self.parity[j] == 1
    }

    pub fn arrows(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.arrow(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn neighbours(&self, i: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).filter(move |&j| j != i && self.c[i][j] < 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.d.iter().all(|&x| x == self.d[0])
    }

    pub fn period(&self) -> i64 {
        2 * self.d.iter().fold(1i64, |acc, &x| acc.lcm(&x))
    }

    /// Replace the total order; it must refine the arrow orientation.
    pub fn with_order(mut self, order: Vec<Vertex>) -> Result<Self, CartanError> {
        if let Err(v) = check_order(&self.c, &self.parity, &order) {
            return Err(CartanError::Invalid(vec![v]));
        }
        self.order = order;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// Raw input, before validation.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatum {
    #[serde(default)]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub symmetrizer: Option<Vec<i64>>,
    #[serde(default)]
    pub parity: Option<Vec<i64>>,
    /// 1-based vertex and residue.
    #[serde(default)]
    pub seed: Option<[i64; 2]>,
    #[serde(default, rename = "type")]
    pub type_name: Option<String>,
}

impl RawDatum {
    pub fn from_json(text: &str) -> Result<Self, CartanError> {
        serde_json::from_str(text).map_err(|e| CartanError::Malformed(e.to_string()))
    }

    /// Validate, filling gaps from the named type when one is given.
    pub fn into_datum(self) -> Result<(CartanDatum, Option<(Vertex, i64)>), CartanError> {
        let seed = match self.seed {
            Some([i, r]) if i >= 1 => Some((i as usize - 1, r)),
            Some([i, r]) => return Err(CartanError::UnknownVertex(0, i.min(r))),
            None => None,
        };
        let base = match &self.type_name {
            Some(t) => Some(builtin(t)?),
            None => None,
        };
        let (c, d) = match (self.cartan, self.symmetrizer, &base) {
            (Some(c), Some(d), _) => (c, d),
            (Some(c), None, None) => {
                let n = c.len();
                (c, vec![1; n])
            }
            (c, d, Some(b)) => (c.unwrap_or_else(|| b.c.clone()), d.unwrap_or_else(|| b.d.clone())),
            (None, _, None) => return Err(CartanError::Malformed("need \"cartan\" or \"type\"".into())),
        };
        let parity = match (self.parity, &base) {
            (Some(p), _) => p,
            (None, Some(b)) if b.c == c => b.parity.iter().map(|&x| x as i64).collect(),
            (None, _) => default_parity(&c),
        };
        let mut datum = validate_datum(c, d, parity)?;
        if let Some(b) = base {
            if b.c == datum.c && b.d == datum.d {
                datum.name = b.name;
            }
        }
        Ok((datum, seed))
    }
}

/// Two-colouring by breadth-first search, vertex 1 even.
fn default_parity(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    let mut p = vec![-1i64; n];
    for start in 0..n {
        if p[start] >= 0 {
            continue;
        }
        p[start] = 0;
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for j in 0..n {
                if j != i && c[i].get(j).copied().unwrap_or(0) != 0 && p[j] < 0 {
                    p[j] = 1 - p[i];
                    queue.push(j);
                }
            }
        }
    }
    p
}

fn default_order(parity: &[u8]) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..parity.len()).collect();
    order.sort_by_key(|&i| (parity[i], i));
    order
}

fn check_order(c: &[Vec<i64>], parity: &[u8], order: &[Vertex]) -> Result<(), Violation> {
    let n = c.len();
    let set: BTreeSet<_> = order.iter().copied().collect();
    if order.len() != n || set.len() != n || set.iter().any(|&i| i >= n) {
        return Err(Violation::BadOrder { detail: "not a permutation of the vertices".into() });
    }
    let pos = |v: Vertex| order.iter().position(|&x| x == v).unwrap();
    for i in 0..n {
        for j in 0..n {
            if i != j && c[i][j] < 0 && parity[i] == 0 && parity[j] == 1 && pos(i) > pos(j) {
                return Err(Violation::BadOrder {
                    detail: format!("arrow {}->{} needs {} before {}", i + 1, j + 1, i + 1, j + 1),
                });
            }
        }
    }
    Ok(())
}

/// Leading principal minors of a symmetric integer matrix, by fraction-free elimination.
fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            // Positive definiteness already fails; the remaining minors are irrelevant.
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Check every invariant; collect all violations rather than stopping at the first.
pub fn validate_datum(c: Vec<Vec<i64>>, d: Vec<i64>, parity: Vec<i64>) -> Result<CartanDatum, CartanError> {
    let n = c.len();
    let mut bad = Vec::new();
    if c.iter().any(|row| row.len() != n) || n == 0 {
        return Err(CartanError::Invalid(vec![Violation::NotSquare]));
    }
    for (field, len) in [("symmetrizer", d.len()), ("parity", parity.len())] {
        if len != n {
            bad.push(Violation::SizeMismatch { field, expected: n, found: len });
        }
    }
    if !bad.is_empty() {
        return Err(CartanError::Invalid(bad));
    }
    for i in 0..n {
        if c[i][i] != 2 {
            bad.push(Violation::BadDiagonal { i });
        }
        if d[i] <= 0 {
            bad.push(Violation::NonPositiveSymmetrizer { i });
        }
        if parity[i] != 0 && parity[i] != 1 {
            bad.push(Violation::ParityValue { i });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if c[i][j] > 0 {
                bad.push(Violation::PositiveOffDiagonal { i, j });
            }
            if i < j && (c[i][j] == 0) != (c[j][i] == 0) {
                bad.push(Violation::AsymmetricZero { i, j });
            }
            if i < j && d[i] * c[i][j] != d[j] * c[j][i] {
                bad.push(Violation::NonSymmetrizable { i, j });
            }
            if i < j && c[i][j] != 0 && parity[i] == parity[j] {
                bad.push(Violation::BadParity { i, j });
            }
        }
    }
    let g = d.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        bad.push(Violation::NotCoprime { gcd: g });
    }
    let symmetrizable =
        !bad.iter().any(|v| matches!(v, Violation::NonSymmetrizable { .. } | Violation::NonPositiveSymmetrizer { .. }));
    if symmetrizable {
        let sym: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d[i] * c[i][j]).collect()).collect();
        if let Some(k) = leading_minors(&sym).iter().position(|m| !m.is_positive()) {
            bad.push(Violation::NotFiniteType { minor: k + 1 });
        }
    }
    if !bad.is_empty() {
        return Err(CartanError::Invalid(bad));
    }
    let parity: Vec<u8> = parity.iter().map(|&p| p as u8).collect();
    let order = default_order(&parity);
    Ok(CartanDatum { c, d, parity, order, name: None })
}

/// Built-in finite types. Numbering follows Bourbaki; parities follow the
/// per-type conventions used by the unfolding pictures.
pub fn builtin(name: &str) -> Result<CartanDatum, CartanError> {
    let upper = name.trim().to_ascii_uppercase();
    let unknown = || CartanError::UnknownType(name.to_string());
    let (letter, rank) = upper.split_at(1);
    let n: usize = rank.parse().map_err(|_| unknown())?;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    let mut d = vec![1i64; n];
    let mut parity: Option<Vec<i64>> = None;
    match letter {
        "A" if n >= 1 => (1..n).for_each(|i| link(&mut c, i, i + 1)),
        "B" if n >= 2 => {
            (1..n).for_each(|i| link(&mut c, i, i + 1));
            c[n - 1][n - 2] = -2;
            d = vec![2; n];
            d[n - 1] = 1;
            parity = Some((0..n).map(|i| ((n - 1 - i) % 2) as i64).collect());
        }
        "C" if n >= 2 => {
            (1..n).for_each(|i| link(&mut c, i, i + 1));
            c[n - 2][n - 1] = -2;
            d[n - 1] = 2;
            parity = Some((0..n).map(|i| ((n - i) % 2) as i64).collect());
        }
        "D" if n >= 4 => {
            (1..n - 1).for_each(|i| link(&mut c, i, i + 1));
            link(&mut c, n - 2, n);
        }
        "E" if (6..=8).contains(&n) => {
            link(&mut c, 1, 3);
            link(&mut c, 2, 4);
            (3..n).for_each(|i| link(&mut c, i, i + 1));
        }
        "F" if n == 4 => {
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            link(&mut c, 3, 4);
            c[2][1] = -2;
            d = vec![2, 2, 1, 1];
            parity = Some(vec![0, 1, 0, 1]);
        }
        "G" if n == 2 => {
            link(&mut c, 1, 2);
            c[1][0] = -3;
            d = vec![3, 1];
            parity = Some(vec![1, 0]);
        }
        _ => return Err(unknown()),
    }
    let parity = parity.unwrap_or_else(|| default_parity(&c));
    Ok(validate_datum(c, d, parity)?.with_name(upper))
}

/// A vertex (i, r) of the unfolded quiver, 1 <= r <= 2d_i.
pub type UVertex = (Vertex, i64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfoldedQuiver {
    base: CartanDatum,
    seed: UVertex,
    /// Sorted by (i, r).
    vertices: Vec<UVertex>,
    index: BTreeMap<UVertex, usize>,
    arrows: Vec<(usize, usize)>,
    cartan: Vec<Vec<i64>>,
    /// Per base vertex, the residues r in [1, 2d_i] that lie in the even class.
    residues: Vec<Vec<i64>>,
}

impl UnfoldedQuiver {
    pub fn base(&self) -> &CartanDatum {
        &self.base
    }

    pub fn seed(&self) -> UVertex {
        self.seed
    }

    pub fn vertices(&self) -> &[UVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: UVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Arrows as index pairs into `vertices()`.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn residues(&self, i: Vertex) -> &[i64] {
        &self.residues[i]
    }

    /// Comparison key on unfolded vertices: base order first, then r.
    pub fn order_key(&self, x: usize) -> (usize, i64) {
        let (i, r) = self.vertices[x];
        (self.base.rank(i), r)
    }

    /// Normalise k into the residue window [1, 2d_i].
    pub fn residue(&self, i: Vertex, k: i64) -> i64 {
        let p = 2 * self.base.d(i);
        let r = k.rem_euclid(p);
        if r == 0 {
            p
        } else {
            r
        }
    }

    pub fn is_even_pair(&self, ui: UVertex, k: i64) -> Result<bool, CartanError> {
        if !self.index.contains_key(&ui) {
            return Err(CartanError::UnknownVertex(ui.0, ui.1));
        }
        Ok((k - ui.1).rem_euclid(2 * self.base.d(ui.0)) == 0)
    }

    /// The unfolded vertex carrying (i, k), if the pair is even.
    pub fn zero_i_member(&self, i: Vertex, k: i64) -> Option<UVertex> {
        if i >= self.base.n() {
            return None;
        }
        let v = (i, self.residue(i, k));
        self.index.contains_key(&v).then_some(v)
    }

    pub fn is_even(&self, i: Vertex, k: i64) -> bool {
        self.zero_i_member(i, k).is_some()
    }

    /// Index of the unfolded vertex carrying (i, k).
    pub fn vertex_of(&self, i: Vertex, k: i64) -> Option<usize> {
        self.zero_i_member(i, k).and_then(|v| self.index_of(v))
    }

    pub fn label(&self, x: usize) -> String {
        let (i, r) = self.vertices[x];
        format!("({},{})", i + 1, r)
    }
}

/// Union-find over I x Z_P.
struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Default class representative: the first vertex of maximal symmetrizer, at r = 2d.
pub fn default_seed(datum: &CartanDatum) -> UVertex {
    let dmax = *datum.symmetrizer().iter().max().unwrap();
    let v = (0..datum.n()).find(|&i| datum.d(i) == dmax).unwrap();
    (v, 2 * dmax)
}

pub fn unfold(datum: &CartanDatum, seed: Option<UVertex>) -> Result<UnfoldedQuiver, CartanError> {
    let n = datum.n();
    let p = datum.period();
    let pu = p as usize;
    let node = |i: Vertex, r: i64| i * pu + r.rem_euclid(p) as usize;
    let mut dsu = Dsu((0..n * pu).collect());
    for i in 0..n {
        for j in 0..n {
            let b = datum.b(i, j);
            if b == 0 {
                continue;
            }
            for r in 0..p {
                dsu.union(node(i, r), node(j, r + b));
            }
        }
    }
    let roots: BTreeSet<usize> = (0..n * pu).map(|x| dsu.find(x)).collect();
    if roots.len() != 2 {
        return Err(CartanError::ClassCountMismatch(roots.len()));
    }
    let seed = seed.unwrap_or_else(|| default_seed(datum));
    if seed.0 >= n {
        return Err(CartanError::UnknownVertex(seed.0, seed.1));
    }
    let seed = {
        let dd = 2 * datum.d(seed.0);
        let r = seed.1.rem_euclid(dd);
        (seed.0, if r == 0 { dd } else { r })
    };
    let class = dsu.find(node(seed.0, seed.1));
    let mut vertices = Vec::new();
    let mut residues = vec![Vec::new(); n];
    for i in 0..n {
        for r in 1..=2 * datum.d(i) {
            if dsu.find(node(i, r)) == class {
                vertices.push((i, r));
                residues[i].push(r);
            }
        }
    }
    let index: BTreeMap<UVertex, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut arrows = Vec::new();
    for (x, &(i, r)) in vertices.iter().enumerate() {
        for (y, &(j, s)) in vertices.iter().enumerate() {
            if datum.arrow(i, j) {
                let modulus = 2 * datum.d(i).gcd(&datum.d(j));
                if (s - r + datum.b(i, j)).rem_euclid(modulus) == 0 {
                    arrows.push((x, y));
                }
            }
        }
    }
    let m = vertices.len();
    let mut cartan = vec![vec![0i64; m]; m];
    for (x, row) in cartan.iter_mut().enumerate() {
        row[x] = 2;
    }
    for &(x, y) in &arrows {
        cartan[x][y] -= 1;
        cartan[y][x] -= 1;
    }
    Ok(UnfoldedQuiver { base: datum.clone(), seed, vertices, index, arrows, cartan, residues })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_labels(uq: &UnfoldedQuiver) -> BTreeSet<(UVertex, UVertex)> {
        uq.arrows()
            .iter()
            .map(|&(x, y)| {
                let (i, r) = uq.vertices()[x];
                let (j, s) = uq.vertices()[y];
                ((i + 1, r), (j + 1, s))
            })
            .collect()
    }

    fn set(items: &[((usize, i64), (usize, i64))]) -> BTreeSet<(UVertex, UVertex)> {
        items.iter().copied().collect()
    }

    #[test]
    fn b2_accepts_and_asymmetric_rejects() {
        let ok = validate_datum(vec![vec![2, -1], vec![-2, 2]], vec![2, 1], vec![1, 0]).unwrap();
        assert_eq!(ok.arrows(), vec![(1, 0)]);
        assert!(validate_datum(vec![vec![2, -1], vec![-1, 2]], vec![1, 1], vec![0, 1]).is_ok());
        let err = validate_datum(vec![vec![2, -1], vec![-2, 2]], vec![1, 1], vec![1, 0]);
        match err {
            Err(CartanError::Invalid(v)) => {
                assert!(v.iter().any(|x| matches!(x, Violation::NonSymmetrizable { .. })))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_affine_noncoprime_and_parity() {
        let affine = validate_datum(vec![vec![2, -2], vec![-2, 2]], vec![1, 1], vec![0, 1]);
        assert!(matches!(affine, Err(CartanError::Invalid(ref v))
            if v.contains(&Violation::NotFiniteType { minor: 2 })));
        let scaled = validate_datum(vec![vec![2, -1], vec![-1, 2]], vec![2, 2], vec![0, 1]);
        assert!(matches!(scaled, Err(CartanError::Invalid(ref v))
            if v.contains(&Violation::NotCoprime { gcd: 2 })));
        let par = validate_datum(vec![vec![2, -1], vec![-1, 2]], vec![1, 1], vec![0, 0]);
        assert!(matches!(par, Err(CartanError::Invalid(ref v))
            if v.contains(&Violation::BadParity { i: 0, j: 1 })));
    }

    #[test]
    fn b2_unfolding_matches_picture() {
        let b2 = builtin("B2").unwrap();
        let uq = unfold(&b2, Some((0, 2))).unwrap();
        assert_eq!(uq.vertices(), &[(0, 2), (0, 4), (1, 2)]);
        assert_eq!(arrow_labels(&uq), set(&[((2, 2), (1, 2)), ((2, 2), (1, 4))]));
        let default = unfold(&b2, None).unwrap();
        assert_eq!(default.vertices(), uq.vertices());
    }

    #[test]
    fn c3_f4_g2_pictures() {
        let c3 = unfold(&builtin("C3").unwrap(), None).unwrap();
        assert_eq!(c3.vertices(), &[(0, 1), (1, 2), (2, 2), (2, 4)]);
        assert_eq!(arrow_labels(&c3), set(&[((2, 2), (1, 1)), ((2, 2), (3, 2)), ((2, 2), (3, 4))]));
        let f4 = unfold(&builtin("F4").unwrap(), None).unwrap();
        assert_eq!(
            arrow_labels(&f4),
            set(&[((1, 4), (2, 2)), ((1, 2), (2, 4)), ((3, 2), (2, 2)), ((3, 2), (2, 4)), ((3, 2), (4, 1)),])
        );
        let g2 = unfold(&builtin("G2").unwrap(), None).unwrap();
        assert_eq!(g2.vertices(), &[(0, 2), (0, 4), (0, 6), (1, 1)]);
        assert_eq!(arrow_labels(&g2), set(&[((2, 1), (1, 2)), ((2, 1), (1, 4)), ((2, 1), (1, 6))]));
    }

    #[test]
    fn bn_picture_tail() {
        for n in 3..=4usize {
            let uq = unfold(&builtin(&format!("B{n}")).unwrap(), None).unwrap();
            let arrows = arrow_labels(&uq);
            for a in [((n, 2), (n - 1, 2)), ((n, 2), (n - 1, 4)), ((n - 2, 4), (n - 1, 2)), ((n - 2, 2), (n - 1, 4))] {
                assert!(arrows.contains(&a), "B{n} missing {a:?}");
            }
            assert_eq!(uq.len(), 2 * n - 1);
        }
    }

    #[test]
    fn simply_laced_is_identity() {
        let a3 = unfold(&builtin("A3").unwrap(), None).unwrap();
        assert_eq!(a3.vertices(), &[(0, 2), (1, 1), (2, 2)]);
        assert_eq!(a3.cartan(), a3.base().matrix());
    }

    #[test]
    fn even_pairs_and_members() {
        let uq = unfold(&builtin("B2").unwrap(), None).unwrap();
        assert!(uq.is_even_pair((0, 4), -4).unwrap());
        assert!(!uq.is_even_pair((0, 4), -6).unwrap());
        assert!(uq.is_even_pair((0, 3), 3).is_err());
        assert_eq!(uq.zero_i_member(0, -6), Some((0, 2)));
        assert_eq!(uq.zero_i_member(0, -5), None);
        assert_eq!(uq.zero_i_member(1, 0), Some((1, 2)));
    }

    #[test]
    fn order_must_refine_arrows() {
        let b2 = builtin("B2").unwrap();
        assert_eq!(b2.order(), &[1, 0]);
        assert!(b2.clone().with_order(vec![0, 1]).is_err());
    }

    #[test]
    fn raw_json_round() {
        let raw = RawDatum::from_json(r#"{"cartan":[[2,-1],[-2,2]],"symmetrizer":[2,1],"parity":[1,0],"seed":[1,2]}"#)
            .unwrap();
        let (d, seed) = raw.into_datum().unwrap();
        assert_eq!(seed, Some((0, 2)));
        assert_eq!(d.b(0, 1), -2);
        let (g2, _) = RawDatum::from_json(r#"{"type":"G2"}"#).unwrap().into_datum().unwrap();
        assert_eq!(g2.name(), Some("G2"));
        assert!(RawDatum::from_json(r#"{"cartan":[[2]],"bogus":1}"#).is_err());
    }
}
