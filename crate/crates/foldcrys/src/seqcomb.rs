//! Dimension sequences, vertex tuples and the triples (x, v, κ) that index
//! idempotents of weighted and tensor product quiver Hecke algebras.
//!
//! Vertices are plain indices `0..n`; a [`VertexOrder`] supplies the total
//! order used inside level blocks. Levels are the strictly increasing
//! degrees l_1 < … < l_m carrying a nonzero framing part.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::UnfoldedQuiver;
use crate::coweight::GradedDims;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("SizeCap: more than {limit} candidates")]
    SizeCap { limit: usize },
    #[error("levels must be strictly increasing")]
    BadLevels,
    #[error("vector of length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
}

/// A total order on vertex indices, stored as ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        Self { rank: (0..n).collect() }
    }

    /// Rank vertices by sort key; ties keep index order.
    pub fn from_keys<K: Ord>(keys: &[K]) -> Self {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
        let mut rank = vec![0; keys.len()];
        for (r, &x) in idx.iter().enumerate() {
            rank[x] = r;
        }
        Self { rank }
    }

    pub fn unfolded(uq: &UnfoldedQuiver) -> Self {
        let keys: Vec<_> = (0..uq.len()).map(|x| uq.order_key(x)).collect();
        Self::from_keys(&keys)
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.rank[a] <= self.rank[b]
    }

    /// Vertices listed in increasing order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.rank.len()).collect();
        v.sort_by_key(|&x| self.rank[x]);
        v
    }
}

/// A finitely supported sequence k ↦ dimension vector; zero parts are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DimSequence {
    n: usize,
    parts: BTreeMap<i64, Vec<u32>>,
}

impl DimSequence {
    pub fn new(n: usize) -> Self {
        Self { n, parts: BTreeMap::new() }
    }

    pub fn from_parts(n: usize, parts: impl IntoIterator<Item = (i64, Vec<u32>)>) -> Result<Self, SeqError> {
        let mut s = Self::new(n);
        for (k, v) in parts {
            if v.len() != n {
                return Err(SeqError::Length { expected: n, found: v.len() });
            }
            for (x, &d) in v.iter().enumerate() {
                s.add(k, x, d);
            }
        }
        Ok(s)
    }

    pub fn from_graded(g: &GradedDims, n: usize) -> Self {
        let mut s = Self::new(n);
        for (x, k, d) in g.iter() {
            s.add(k, x, d as u32);
        }
        s
    }

    pub fn add(&mut self, k: i64, x: usize, d: u32) {
        if d == 0 {
            return;
        }
        self.parts.entry(k).or_insert_with(|| vec![0; self.n])[x] += d;
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &BTreeMap<i64, Vec<u32>> {
        &self.parts
    }

    pub fn get(&self, k: i64) -> Option<&[u32]> {
        self.parts.get(&k).map(Vec::as_slice)
    }

    pub fn total(&self) -> Vec<u32> {
        let mut t = vec![0; self.n];
        for v in self.parts.values() {
            for (a, b) in t.iter_mut().zip(v) {
                *a += b;
            }
        }
        t
    }

    /// h = |α|, the total dimension.
    pub fn size(&self) -> usize {
        self.parts.values().flatten().map(|&d| d as usize).sum()
    }

    /// Largest degree with a nonzero part.
    pub fn max_degree(&self) -> Option<i64> {
        self.parts.keys().next_back().copied()
    }

    /// Every nonzero (x, k) is an even pair of the unfolded quiver.
    pub fn is_even(&self, uq: &UnfoldedQuiver) -> bool {
        self.parts.iter().all(|(&k, v)| v.iter().enumerate().all(|(x, &d)| d == 0 || even_at(uq, x, k)))
    }
}

fn even_at(uq: &UnfoldedQuiver, x: usize, k: i64) -> bool {
    let (i, r) = uq.vertices()[x];
    (k - r).rem_euclid(2 * uq.base().d(i)) == 0
}

/// Strip the zero parts: (compressed tuple, levels). m is the common length.
pub fn tau(w: &DimSequence) -> (Vec<Vec<u32>>, Vec<i64>) {
    w.parts.iter().map(|(&k, v)| (v.clone(), k)).unzip()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TriplePoint {
    pub x: Vec<i64>,
    pub v: Vec<usize>,
    pub kappa: Vec<usize>,
}

fn check_levels(levels: &[i64]) -> Result<(), SeqError> {
    if levels.windows(2).all(|p| p[0] < p[1]) {
        Ok(())
    } else {
        Err(SeqError::BadLevels)
    }
}

/// Degree blocks in increasing order, each listing its vertices in the total
/// order with multiplicity; κ_s counts positions of degree ≤ l_s.
pub fn seq_to_triple(v: &DimSequence, levels: &[i64], order: &VertexOrder) -> Result<TriplePoint, SeqError> {
    check_levels(levels)?;
    if order.len() != v.n {
        return Err(SeqError::Length { expected: v.n, found: order.len() });
    }
    let mut x = Vec::new();
    let mut tuple = Vec::new();
    for (&k, part) in &v.parts {
        for vert in order.sorted() {
            for _ in 0..part[vert] {
                x.push(k);
                tuple.push(vert);
            }
        }
    }
    let kappa = levels.iter().map(|&l| x.partition_point(|&xk| xk <= l)).collect();
    Ok(TriplePoint { x, v: tuple, kappa })
}

/// Inverse of [`seq_to_triple`]: collect each position into its degree.
pub fn triple_to_seq(t: &TriplePoint, n: usize) -> DimSequence {
    let mut s = DimSequence::new(n);
    for (&k, &vert) in t.x.iter().zip(&t.v) {
        s.add(k, vert, 1);
    }
    s
}

fn kappa_ok(kappa: &[usize], h: usize) -> bool {
    kappa.windows(2).all(|p| p[0] <= p[1]) && kappa.iter().all(|&k| k <= h)
}

/// Conditions (1)–(3): equal neighbours ordered, x weakly increasing, and
/// x_{κ_s} ≤ l_s < x_{κ_s+1}.
pub fn in_j(t: &TriplePoint, levels: &[i64], order: &VertexOrder) -> bool {
    let h = t.x.len();
    if t.v.len() != h || t.kappa.len() != levels.len() || !kappa_ok(&t.kappa, h) {
        return false;
    }
    for k in 1..h {
        if t.x[k - 1] > t.x[k] || (t.x[k - 1] == t.x[k] && !order.le(t.v[k - 1], t.v[k])) {
            return false;
        }
    }
    t.kappa.iter().zip(levels).all(|(&ks, &l)| (ks == 0 || t.x[ks - 1] <= l) && (ks == h || l < t.x[ks]))
}

/// Condition (4): each (v_k, x_k) is an even pair.
pub fn is_even_triple(uq: &UnfoldedQuiver, t: &TriplePoint) -> bool {
    t.x.iter().zip(&t.v).all(|(&k, &vert)| even_at(uq, vert, k))
}

/// Per-position bounds lo_k ≤ x_k ≤ hi_k implied by (3) and monotonicity.
fn bounds(kappa: &[usize], levels: &[i64], h: usize) -> Vec<(Option<i64>, Option<i64>)> {
    (1..=h)
        .map(|k| {
            let lo = kappa.iter().zip(levels).filter(|(&ks, _)| ks < k).map(|(_, &l)| l + 1).max();
            let hi = kappa.iter().zip(levels).filter(|(&ks, _)| ks >= k).map(|(_, &l)| l).min();
            (lo, hi)
        })
        .collect()
}

/// Parity constraint per position: x ≡ residue mod modulus.
type Residues = Vec<(i64, i64)>;

fn residues(uq: &UnfoldedQuiver, v: &[usize]) -> Residues {
    v.iter()
        .map(|&x| {
            let (i, r) = uq.vertices()[x];
            (r, 2 * uq.base().d(i))
        })
        .collect()
}

/// Least y ≥ from with y ≡ r mod p.
fn next_in_class(from: i64, (r, p): (i64, i64)) -> i64 {
    from + (r - from).rem_euclid(p)
}

/// Greedy least-x scan. Lower bounds only grow along the tuple, so taking the
/// least admissible value at each position never hurts later ones.
fn greedy_x(
    v: &[usize],
    kappa: &[usize],
    levels: &[i64],
    order: Option<&VertexOrder>,
    res: Option<&Residues>,
) -> Option<Vec<i64>> {
    let h = v.len();
    if kappa.len() != levels.len() || !kappa_ok(kappa, h) || levels.windows(2).any(|p| p[0] >= p[1]) {
        return None;
    }
    let step = res.map_or(1, |r| r.iter().map(|p| p.1).max().unwrap_or(1));
    // positions without a lower bound form a prefix and may sit arbitrarily low
    let floor = levels.iter().min().copied().unwrap_or(0) - step * (h as i64 + 1);
    let bnd = bounds(kappa, levels, h);
    let mut x: Vec<i64> = Vec::with_capacity(h);
    for k in 0..h {
        let mut from = bnd[k].0.unwrap_or(floor);
        if let Some(&prev) = x.last() {
            let strict = order.is_some_and(|o| !o.le(v[k - 1], v[k]));
            from = from.max(if strict { prev + 1 } else { prev });
        }
        let y = match res {
            Some(r) => next_in_class(from, r[k]),
            None => from,
        };
        if bnd[k].1.is_some_and(|hi| y > hi) {
            return None;
        }
        x.push(y);
    }
    Some(x)
}

/// An x with (x, v, κ) satisfying (1)–(3), if any.
pub fn witness_j(v: &[usize], kappa: &[usize], levels: &[i64], order: &VertexOrder) -> Option<Vec<i64>> {
    greedy_x(v, kappa, levels, Some(order), None)
}

/// An x with (x, v, κ) satisfying (1)–(4), if any.
pub fn even_witness(uq: &UnfoldedQuiver, v: &[usize], kappa: &[usize], levels: &[i64]) -> Option<Vec<i64>> {
    let order = VertexOrder::unfolded(uq);
    greedy_x(v, kappa, levels, Some(&order), Some(&residues(uq, v)))
}

/// Whether the idempotent indexed by (v, κ) is even: some x satisfies (1)–(4).
pub fn is_even_idempotent(uq: &UnfoldedQuiver, v: &[usize], kappa: &[usize], levels: &[i64]) -> bool {
    even_witness(uq, v, kappa, levels).is_some()
}

/// The reduced test valid for simply-laced data: (2)–(4) only.
pub fn is_even_idempotent_reduced(
    uq: &UnfoldedQuiver,
    v: &[usize],
    kappa: &[usize],
    levels: &[i64],
) -> Option<Vec<i64>> {
    greedy_x(v, kappa, levels, None, Some(&residues(uq, v)))
}

/// All distinct orderings of a multiset given by multiplicities, lexicographic.
pub fn tuples_of(alpha: &[u32]) -> Vec<Vec<usize>> {
    fn rec(left: &mut Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for x in 0..left.len() {
            if left[x] > 0 {
                left[x] -= 1;
                cur.push(x);
                rec(left, cur, out);
                cur.pop();
                left[x] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut alpha.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Weakly increasing m-tuples in [0, h].
pub fn kappas(h: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(h: usize, m: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for k in from..=h {
            cur.push(k);
            rec(h, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(h, m, 0, &mut Vec::new(), &mut out);
    out
}

fn multinomial(alpha: &[u32]) -> Option<usize> {
    let mut acc: usize = 1;
    let mut seen: usize = 0;
    for &a in alpha {
        for j in 1..=a as usize {
            seen += 1;
            acc = acc.checked_mul(seen)? / j;
        }
    }
    Some(acc)
}

/// The pairs (v, κ) ∈ D(α, m) admitting some x with (x, v, κ) ∈ J(α, m).
pub fn e_w_mu_support(
    alpha: &[u32],
    levels: &[i64],
    order: &VertexOrder,
    cap: usize,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>, SeqError> {
    check_levels(levels)?;
    if alpha.len() != order.len() {
        return Err(SeqError::Length { expected: order.len(), found: alpha.len() });
    }
    let h: usize = alpha.iter().map(|&a| a as usize).sum();
    let m = levels.len();
    let nk = (1..=m).try_fold(1usize, |acc, j| acc.checked_mul(h + j).map(|p| p / j));
    let total = multinomial(alpha).zip(nk).and_then(|(a, b)| a.checked_mul(b));
    if total.is_none_or(|t| t > cap) {
        return Err(SeqError::SizeCap { limit: cap });
    }
    let ks = kappas(h, m);
    let tuples = tuples_of(alpha);
    let per = crate::par::map(&tuples, |v| {
        ks.iter()
            .filter(|k| witness_j(v, k, levels, order).is_some())
            .map(|k| (v.clone(), k.clone()))
            .collect::<Vec<_>>()
    });
    Ok(per.into_iter().flatten().collect())
}

/// All sequences with total `alpha` supported in [lo, hi].
pub fn sequences_in_window(alpha: &[u32], lo: i64, hi: i64) -> Vec<DimSequence> {
    fn spread(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[pos] = c;
            spread(pos + 1, left - c, cur, out);
        }
    }
    let width = (hi - lo + 1).max(0) as usize;
    let mut result = vec![DimSequence::new(alpha.len())];
    if width == 0 {
        return if alpha.iter().all(|&a| a == 0) { result } else { Vec::new() };
    }
    for (vert, &a) in alpha.iter().enumerate() {
        let mut options = Vec::new();
        spread(0, a, &mut vec![0; width], &mut options);
        let mut next = Vec::with_capacity(result.len() * options.len());
        for s in &result {
            for opt in &options {
                let mut t = s.clone();
                for (j, &d) in opt.iter().enumerate() {
                    t.add(lo + j as i64, vert, d);
                }
                next.push(t);
            }
        }
        result = next;
    }
    result
}

/// Weakly increasing tuples of length h with entries in [lo, hi].
fn increasing(h: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(h: usize, from: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for y in from..=hi {
            cur.push(y);
            rec(h, y, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(h, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Pairs (x, v) with x weakly increasing in [lo, hi] and v a vertex tuple of
/// total α; the candidates for the direct search of J(α, m).
fn window_candidates(alpha: &[u32], lo: i64, hi: i64) -> Vec<(Vec<i64>, Vec<usize>)> {
    let h: usize = alpha.iter().map(|&a| a as usize).sum();
    let tuples = tuples_of(alpha);
    let mut out = Vec::new();
    for x in increasing(h, lo, hi) {
        for v in &tuples {
            out.push((x.clone(), v.clone()));
        }
    }
    out
}

/// Condition (3) pins κ_s to the number of x entries ≤ l_s, so only that
/// candidate is tested for each (x, v).
fn j_points_among(cands: &[(Vec<i64>, Vec<usize>)], levels: &[i64], order: &VertexOrder) -> Vec<TriplePoint> {
    cands
        .iter()
        .filter_map(|(x, v)| {
            let kappa = levels.iter().map(|&l| x.partition_point(|&xk| xk <= l)).collect();
            let t = TriplePoint { x: x.clone(), v: v.clone(), kappa };
            in_j(&t, levels, order).then_some(t)
        })
        .collect()
}

/// Every point of J(α, m) whose x lies in [lo, hi], found by direct search.
pub fn j_points_in_window(alpha: &[u32], levels: &[i64], order: &VertexOrder, lo: i64, hi: i64) -> Vec<TriplePoint> {
    j_points_among(&window_candidates(alpha, lo, hi), levels, order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub alpha: Vec<u32>,
    pub levels: Vec<i64>,
    pub window: [i64; 2],
    pub sequences: usize,
    pub j_points: usize,
    pub injective: bool,
    pub into_j: bool,
    pub round_trip: bool,
    pub onto: bool,
    pub cyclotomic_agrees: bool,
    /// (sequence parts as (degree, vector) pairs, triple) in enumeration order;
    /// empty unless requested.
    pub pairs: Vec<(Vec<(i64, Vec<u32>)>, TriplePoint)>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.injective && self.into_j && self.round_trip && self.onto && self.cyclotomic_agrees
    }
}

/// Check P(α) → J(α, m) on the window: image inside J, inverse recovers the
/// sequence, no collisions, every directly found J point is hit, and the
/// cyclotomic condition max(w) < max(v) matches κ_m < h.
pub fn check_bijection(
    alpha: &[u32],
    levels: &[i64],
    order: &VertexOrder,
    window: (i64, i64),
) -> Result<BijectionReport, SeqError> {
    let mut reports = check_bijections(alpha, &[levels.to_vec()], order, window, true)?;
    Ok(reports.pop().expect("one level set"))
}

/// [`check_bijection`] for many level sets, enumerating the window once.
/// Without `keep_pairs` the reports carry no pair listing.
pub fn check_bijections(
    alpha: &[u32],
    level_sets: &[Vec<i64>],
    order: &VertexOrder,
    window: (i64, i64),
    keep_pairs: bool,
) -> Result<Vec<BijectionReport>, SeqError> {
    if alpha.len() != order.len() {
        return Err(SeqError::Length { expected: order.len(), found: alpha.len() });
    }
    for levels in level_sets {
        check_levels(levels)?;
    }
    let seqs = sequences_in_window(alpha, window.0, window.1);
    let cands = window_candidates(alpha, window.0, window.1);
    let mut out = Vec::with_capacity(level_sets.len());
    for levels in level_sets {
        let mut image = std::collections::BTreeSet::new();
        let mut pairs = Vec::new();
        let (mut into_j, mut round_trip, mut cyclo) = (true, true, true);
        for s in &seqs {
            let t = seq_to_triple(s, levels, order)?;
            into_j &= in_j(&t, levels, order);
            round_trip &= triple_to_seq(&t, alpha.len()) == *s;
            if let Some(&top) = levels.last() {
                let above = s.max_degree().is_some_and(|mv| top < mv);
                cyclo &= above == (*t.kappa.last().unwrap() < t.x.len());
            }
            if keep_pairs {
                pairs.push((s.parts().iter().map(|(&k, v)| (k, v.clone())).collect(), t.clone()));
            }
            image.insert(t);
        }
        let direct = j_points_among(&cands, levels, order);
        let onto = direct.len() == image.len() && direct.iter().all(|t| image.contains(t));
        out.push(BijectionReport {
            alpha: alpha.to_vec(),
            levels: levels.clone(),
            window: [window.0, window.1],
            sequences: seqs.len(),
            j_points: direct.len(),
            injective: image.len() == seqs.len(),
            into_j,
            round_trip,
            onto,
            cyclotomic_agrees: cyclo,
            pairs,
        });
    }
    Ok(out)
}
