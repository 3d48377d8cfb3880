//! Even coweights in doubled form and the graded dimension data they induce.
//!
//! An entry k at vertex i stands for the rational k / (2 d_i).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cartan::{CartanDatum, UnfoldedQuiver, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoweightError {
    #[error("OddCoweight: entry {k} at vertex {} is not even", .vertex + 1)]
    OddCoweight { vertex: Vertex, k: i64 },
    #[error("EmptyWindow: [{0}, {1}]")]
    EmptyWindow(i64, i64),
    #[error("cannot parse coweight {0:?}")]
    Parse(String),
    #[error("coweight has {found} vertices, expected {expected}")]
    Rank { expected: usize, found: usize },
}

/// Per-vertex lists of doubled entries 2 d_i γ_{i,r}.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenCoweight {
    doubled: Vec<Vec<i64>>,
}

impl EvenCoweight {
    pub fn new(doubled: Vec<Vec<i64>>) -> Self {
        Self { doubled }
    }

    pub fn empty(n: usize) -> Self {
        Self { doubled: vec![Vec::new(); n] }
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.doubled
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    /// Entry counts per vertex (the dimension vector a).
    pub fn dims(&self) -> Vec<usize> {
        self.doubled.iter().map(Vec::len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.iter().all(Vec::is_empty)
    }

    /// Dominant representative: entries weakly decreasing at every vertex.
    pub fn canonical(&self) -> Self {
        let mut d = self.doubled.clone();
        for v in &mut d {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        Self { doubled: d }
    }

    /// Within each residue block the entries are weakly decreasing.
    pub fn is_dominant(&self, uq: &UnfoldedQuiver) -> bool {
        self.doubled.iter().enumerate().all(|(i, v)| {
            let p = 2 * uq.base().d(i);
            v.iter().enumerate().all(|(a, &x)| v[a + 1..].iter().all(|&y| (x - y).rem_euclid(p) != 0 || x >= y))
        })
    }

    pub fn check_even(&self, uq: &UnfoldedQuiver) -> Result<(), CoweightError> {
        if self.doubled.len() != uq.base().n() {
            return Err(CoweightError::Rank { expected: uq.base().n(), found: self.doubled.len() });
        }
        for (i, v) in self.doubled.iter().enumerate() {
            if let Some(&k) = v.iter().find(|&&k| !uq.is_even(i, k)) {
                return Err(CoweightError::OddCoweight { vertex: i, k });
            }
        }
        Ok(())
    }

    /// Render with rational entries, e.g. `-1,-3/2;-2` (an empty vertex is `∅`).
    pub fn display(&self, datum: &CartanDatum) -> String {
        self.doubled
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.is_empty() {
                    "∅".to_string()
                } else {
                    v.iter().map(|&k| fraction(k, 2 * datum.d(i))).collect::<Vec<_>>().join(",")
                }
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Inverse of `display`; parentheses around a vertex block are allowed.
    pub fn parse_display(text: &str, datum: &CartanDatum) -> Result<Self, CoweightError> {
        let bad = || CoweightError::Parse(text.to_string());
        let blocks: Vec<&str> = text.split(';').collect();
        if blocks.len() != datum.n() {
            return Err(CoweightError::Rank { expected: datum.n(), found: blocks.len() });
        }
        let mut doubled = Vec::new();
        for (i, block) in blocks.iter().enumerate() {
            let b = block.trim().trim_start_matches('(').trim_end_matches(')').trim();
            let mut v = Vec::new();
            if !(b.is_empty() || b == "∅") {
                for part in b.split(',') {
                    let scale = 2 * datum.d(i);
                    let (num, den) = match part.trim().split_once('/') {
                        Some((n, d)) => (n.trim(), d.trim().parse::<i64>().map_err(|_| bad())?),
                        None => (part.trim(), 1),
                    };
                    let num: i64 = num.replace('−', "-").parse().map_err(|_| bad())?;
                    if den <= 0 || (num * scale) % den != 0 {
                        return Err(bad());
                    }
                    v.push(num * scale / den);
                }
            }
            doubled.push(v);
        }
        Ok(Self { doubled })
    }

    /// The command-line form `1:[-4,-6];2:[-4]` with 1-based vertices and doubled entries.
    pub fn parse_cli(text: &str, n: usize) -> Result<Self, CoweightError> {
        let bad = || CoweightError::Parse(text.to_string());
        let mut doubled = vec![Vec::new(); n];
        for block in text.split(';').map(str::trim).filter(|b| !b.is_empty()) {
            let (v, list) = block.split_once(':').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            if v == 0 || v > n {
                return Err(bad());
            }
            let list = list.trim().strip_prefix('[').and_then(|l| l.strip_suffix(']'));
            let list = list.ok_or_else(bad)?;
            for x in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                doubled[v - 1].push(x.parse().map_err(|_| bad())?);
            }
        }
        Ok(Self { doubled })
    }

    pub fn to_cli(&self) -> String {
        self.doubled
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("{}:[{}]", i + 1, xs.join(","))
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn fraction(num: i64, den: i64) -> String {
    let g = num_integer::gcd(num, den);
    let (n, d) = (num / g, den / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Graded dimensions over unfolded vertices: (vertex index, degree k) -> dim.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedDims {
    dims: BTreeMap<(usize, i64), u64>,
    size: usize,
}

impl GradedDims {
    pub fn new(size: usize) -> Self {
        Self { dims: BTreeMap::new(), size }
    }

    pub fn add(&mut self, x: usize, k: i64, by: u64) {
        *self.dims.entry((x, k)).or_insert(0) += by;
    }

    pub fn get(&self, x: usize, k: i64) -> u64 {
        self.dims.get(&(x, k)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.dims.iter().map(|(&(x, k), &d)| (x, k, d))
    }

    /// Total dimension at each unfolded vertex.
    pub fn vector(&self) -> Vec<i64> {
        let mut v = vec![0; self.size];
        for (&(x, _), &d) in &self.dims {
            v[x] += d as i64;
        }
        v
    }

    /// Degree-indexed parts, in increasing degree: the sequence form.
    pub fn sequence(&self) -> BTreeMap<i64, Vec<i64>> {
        let mut out: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (&(x, k), &d) in &self.dims {
            out.entry(k).or_insert_with(|| vec![0; self.size])[x] += d as i64;
        }
        out
    }

    /// dim of the part at x in degrees <= k (strict when `strict`).
    pub fn cumulative(&self, x: usize, k: i64, strict: bool) -> u64 {
        self.dims
            .range((x, i64::MIN)..=(x, i64::MAX))
            .filter(|(&(_, l), _)| if strict { l < k } else { l <= k })
            .map(|(_, &d)| d)
            .sum()
    }
}

/// Attach each entry k at vertex i to the unfolded vertex (i, k mod 2d_i).
pub fn grading_of(uq: &UnfoldedQuiver, gamma: &EvenCoweight) -> Result<GradedDims, CoweightError> {
    gamma.check_even(uq)?;
    let mut g = GradedDims::new(uq.len());
    for (i, v) in gamma.entries().iter().enumerate() {
        for &k in v {
            g.add(uq.vertex_of(i, k).expect("checked even"), k, 1);
        }
    }
    Ok(g)
}

/// Rebuild the dominant coweight from graded dimensions.
pub fn coweight_of(uq: &UnfoldedQuiver, dims: &GradedDims) -> EvenCoweight {
    let mut doubled = vec![Vec::new(); uq.base().n()];
    for (x, k, d) in dims.iter() {
        let i = uq.vertices()[x].0;
        doubled[i].extend(std::iter::repeat_n(k, d as usize));
    }
    EvenCoweight::new(doubled).canonical()
}

/// λ - C α over the unfolded quiver.
pub fn underline_mu(uq: &UnfoldedQuiver, lambda: &GradedDims, alpha: &GradedDims) -> Vec<i64> {
    weight_from_vectors(uq, &lambda.vector(), &alpha.vector())
}

pub fn weight_from_vectors(uq: &UnfoldedQuiver, lambda: &[i64], alpha: &[i64]) -> Vec<i64> {
    let c = uq.cartan();
    (0..uq.len()).map(|x| lambda[x] - (0..uq.len()).map(|y| c[x][y] * alpha[y]).sum::<i64>()).collect()
}

/// The shift μ = λ - c α over the base vertices, with λ_i = l_i.
pub fn shift_mu(datum: &CartanDatum, l: &[usize], a: &[usize]) -> Vec<i64> {
    (0..datum.n()).map(|i| l[i] as i64 - (0..datum.n()).map(|j| a[j] as i64 * datum.c(j, i)).sum::<i64>()).collect()
}

/// Σ_i d_i Σ_r γ_{i,r}, returned doubled.
pub fn norm(gamma: &EvenCoweight) -> i64 {
    gamma.entries().iter().flatten().sum()
}

/// All dominant even coweights with `alpha[i]` entries at vertex i, doubled
/// entries in `[kmin, kmax]`, in lexicographic order.
pub fn enumerate_dominant(
    uq: &UnfoldedQuiver,
    alpha: &[usize],
    kmin: i64,
    kmax: i64,
) -> Result<Vec<EvenCoweight>, CoweightError> {
    if kmin > kmax {
        return Err(CoweightError::EmptyWindow(kmin, kmax));
    }
    // per vertex: all weakly decreasing lists of the right length
    let per_vertex: Vec<Vec<Vec<i64>>> = alpha
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let values: Vec<i64> = (kmin..=kmax).rev().filter(|&k| uq.is_even(i, k)).collect();
            let mut out = Vec::new();
            decreasing_lists(&values, a, 0, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut result = vec![Vec::new()];
    for lists in &per_vertex {
        let mut next = Vec::with_capacity(result.len() * lists.len());
        for prefix in &result {
            for l in lists {
                let mut p: Vec<Vec<i64>> = prefix.clone();
                p.push(l.clone());
                next.push(p);
            }
        }
        result = next;
    }
    let mut out: Vec<EvenCoweight> = result.into_iter().map(EvenCoweight::new).collect();
    out.sort();
    Ok(out)
}

fn decreasing_lists(values: &[i64], len: usize, from: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for p in from..values.len() {
        cur.push(values[p]);
        decreasing_lists(values, len, p, cur, out);
        cur.pop();
    }
}

/// dim N_η^ρ = Σ_x Σ_k w^k_x v^{≤k}_x + Σ_{x→y} Σ_l v^l_x v^{<l}_y.
///
/// For G2 the degrees at the short vertex are lowered by 2 first, which
/// turns the arrow condition v^{<l-1} into v^{<l}.
pub fn dim_n_eta_rho(uq: &UnfoldedQuiver, eta: &EvenCoweight, rho: &EvenCoweight) -> Result<u64, CoweightError> {
    let v = shifted(uq, grading_of(uq, eta)?);
    let w = shifted(uq, grading_of(uq, rho)?);
    let mut total = 0;
    for (x, k, d) in w.iter() {
        total += d * v.cumulative(x, k, false);
    }
    for &(x, y) in uq.arrows() {
        for (z, l, d) in v.iter() {
            if z == x {
                total += d * v.cumulative(y, l, true);
            }
        }
    }
    Ok(total)
}

fn is_g2(datum: &CartanDatum) -> bool {
    datum.n() == 2 && datum.symmetrizer().iter().max() == Some(&3)
}

fn shifted(uq: &UnfoldedQuiver, g: GradedDims) -> GradedDims {
    if !is_g2(uq.base()) {
        return g;
    }
    let short = (0..uq.base().n()).find(|&i| uq.base().d(i) == 1).unwrap();
    let target = uq.index_of((short, 1));
    let mut out = GradedDims::new(uq.len());
    for (x, k, d) in g.iter() {
        out.add(x, if Some(x) == target { k - 2 } else { k }, d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin, unfold};
    use proptest::prelude::*;

    fn b2() -> UnfoldedQuiver {
        unfold(&builtin("B2").unwrap(), None).unwrap()
    }

    fn cw(uq: &UnfoldedQuiver, s: &str) -> EvenCoweight {
        EvenCoweight::parse_display(s, uq.base()).unwrap()
    }

    #[test]
    fn display_parse_and_cli() {
        let uq = b2();
        let g = cw(&uq, "(-1,-3/2);-2");
        assert_eq!(g.entries(), &[vec![-4, -6], vec![-4]]);
        assert_eq!(g.display(uq.base()), "-1,-3/2;-2");
        assert_eq!(cw(&uq, "∅;∅"), EvenCoweight::empty(2));
        let c = EvenCoweight::parse_cli("1:[-4,-6];2:[-4]", 2).unwrap();
        assert_eq!(c, g);
        assert_eq!(EvenCoweight::parse_cli(&c.to_cli(), 2).unwrap(), c);
        assert!(EvenCoweight::parse_cli("3:[1]", 2).is_err());
    }

    #[test]
    fn grading_examples() {
        let uq = b2();
        let one = uq.index_of((0, 4)).unwrap();
        let two = uq.index_of((1, 2)).unwrap();
        let three = uq.index_of((0, 2)).unwrap();
        let g = grading_of(&uq, &cw(&uq, "-1,-3/2;-2")).unwrap();
        assert_eq!(g.get(one, -4), 1);
        assert_eq!(g.get(three, -6), 1);
        assert_eq!(g.get(two, -4), 1);
        assert_eq!(g.vector(), vec![1, 1, 1]);
        assert!(grading_of(&uq, &EvenCoweight::empty(2)).unwrap().iter().next().is_none());
        let lam = grading_of(&uq, &cw(&uq, "-1;∅")).unwrap();
        let mut delta1 = vec![0; 3];
        delta1[one] = 1;
        assert_eq!(lam.vector(), delta1);
        let odd = EvenCoweight::new(vec![vec![-3], vec![]]);
        assert!(matches!(grading_of(&uq, &odd), Err(CoweightError::OddCoweight { .. })));
    }

    #[test]
    fn mu_examples() {
        let uq = b2();
        let one = uq.index_of((0, 4)).unwrap();
        let three = uq.index_of((0, 2)).unwrap();
        let lam = grading_of(&uq, &cw(&uq, "-1;∅")).unwrap();
        let alpha = grading_of(&uq, &cw(&uq, "-1,-3/2;-2")).unwrap();
        let mut expect = vec![0; 3];
        expect[three] = -1;
        assert_eq!(underline_mu(&uq, &lam, &alpha), expect);
        assert_eq!(underline_mu(&uq, &lam, &GradedDims::new(3)), lam.vector());
        let lam = grading_of(&uq, &cw(&uq, "∅;-1")).unwrap();
        let alpha = grading_of(&uq, &cw(&uq, "-1;-1")).unwrap();
        let mut expect = vec![0; 3];
        expect[one] = -1;
        expect[three] = 1;
        assert_eq!(underline_mu(&uq, &lam, &alpha), expect);
    }

    #[test]
    fn norms() {
        let uq = b2();
        assert_eq!(norm(&cw(&uq, "-1,-3/2;-2")), -14);
        assert_eq!(norm(&EvenCoweight::empty(2)), 0);
        assert_eq!(norm(&cw(&uq, "-1;∅")), -4);
    }

    #[test]
    fn enumerate_examples() {
        let uq = b2();
        let got = enumerate_dominant(&uq, &[1, 0], -4, 0).unwrap();
        let shown: Vec<String> = got.iter().map(|g| g.display(uq.base())).collect();
        assert_eq!(shown, vec!["-1;∅", "-1/2;∅", "0;∅"]);
        assert_eq!(enumerate_dominant(&uq, &[0, 0], -4, 0).unwrap(), vec![EvenCoweight::empty(2)]);
        assert!(enumerate_dominant(&uq, &[1, 0], 1, 0).is_err());
        let big = enumerate_dominant(&uq, &[2, 1], -8, 0).unwrap();
        for s in ["-1,-3/2;-2", "-1,-3/2;-3", "-3/2,-2;-3"] {
            assert!(big.contains(&cw(&uq, s)), "{s}");
        }
        assert!(big.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dim_n_example() {
        let uq = b2();
        let g = cw(&uq, "-1;∅");
        assert_eq!(dim_n_eta_rho(&uq, &g, &g).unwrap(), 1);
        assert_eq!(dim_n_eta_rho(&uq, &EvenCoweight::empty(2), &EvenCoweight::empty(2)).unwrap(), 0);
    }

    /// Independent count: list basis vectors with degrees and count admissible matrix entries.
    fn dim_oracle(uq: &UnfoldedQuiver, eta: &EvenCoweight, rho: &EvenCoweight) -> u64 {
        let g2 = is_g2(uq.base());
        let basis = |g: &EvenCoweight| -> Vec<(usize, i64)> {
            let mut out = Vec::new();
            for (i, v) in g.entries().iter().enumerate() {
                for &k in v {
                    out.push((uq.vertex_of(i, k).unwrap(), k));
                }
            }
            out
        };
        let vb = basis(eta);
        let wb = basis(rho);
        let mut count = 0;
        for &(x, k) in &wb {
            count += vb.iter().filter(|&&(y, l)| y == x && l <= k).count() as u64;
        }
        for &(x, y) in uq.arrows() {
            for &(p, l) in &vb {
                for &(q, m) in &vb {
                    // the G2 short vertex condition reads v^{<l-1} in original degrees
                    let bound = if g2 && uq.vertices()[x] == (1, 1) { l - 1 } else { l };
                    if p == x && q == y && m < bound {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    fn random_coweight(uq: &UnfoldedQuiver, seed: &[(usize, i64)]) -> EvenCoweight {
        let mut d = vec![Vec::new(); uq.base().n()];
        for &(i, k) in seed {
            let i = i % uq.base().n();
            let k = if uq.is_even(i, k) { k } else { k + 1 };
            if uq.is_even(i, k) {
                d[i].push(k);
            }
        }
        EvenCoweight::new(d).canonical()
    }

    proptest! {
        #[test]
        fn dim_n_matches_oracle(
            ty in prop::sample::select(vec!["B2", "G2", "C3", "A3", "F4"]),
            e in prop::collection::vec((0usize..4, -9i64..9), 0..6),
            r in prop::collection::vec((0usize..4, -9i64..9), 0..4),
        ) {
            let uq = unfold(&builtin(ty).unwrap(), None).unwrap();
            let eta = random_coweight(&uq, &e);
            let rho = random_coweight(&uq, &r);
            prop_assert_eq!(dim_n_eta_rho(&uq, &eta, &rho).unwrap(), dim_oracle(&uq, &eta, &rho));
        }

        #[test]
        fn grading_round_trip(
            ty in prop::sample::select(vec!["B2", "G2", "C3"]),
            e in prop::collection::vec((0usize..3, -9i64..9), 0..7),
        ) {
            let uq = unfold(&builtin(ty).unwrap(), None).unwrap();
            let g = random_coweight(&uq, &e);
            prop_assert!(g.is_dominant(&uq));
            let dims = grading_of(&uq, &g).unwrap();
            prop_assert_eq!(coweight_of(&uq, &dims), g.clone());
            prop_assert_eq!(
                EvenCoweight::parse_display(&g.display(uq.base()), uq.base()).unwrap(),
                g
            );
        }
    }
}
