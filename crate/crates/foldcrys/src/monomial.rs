//! Laurent monomials in the variables z[i,k], the mutation monomials a[i,k],
//! factorisation into a-products, and symbolic ℓ-weights.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::cartan::{CartanDatum, UnfoldedQuiver, Vertex};
use crate::coweight::EvenCoweight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("OddCoweight: entry {k} at vertex {} is not even", .vertex + 1)]
    OddCoweight { vertex: Vertex, k: i64 },
    #[error("OddMonomial: variable z[{},{k}] is not even", .vertex + 1)]
    OddMonomial { vertex: Vertex, k: i64 },
    #[error("cannot parse monomial: {0}")]
    Parse(String),
}

/// Finite-support exponent map (i, k) -> e, zero exponents never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: BTreeMap<(Vertex, i64), i64>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: Vertex, k: i64) -> Self {
        Self::power(i, k, 1)
    }

    pub fn power(i: Vertex, k: i64, e: i64) -> Self {
        let mut m = Self::one();
        m.bump(i, k, e);
        m
    }

    pub fn from_triples(items: impl IntoIterator<Item = (Vertex, i64, i64)>) -> Self {
        let mut m = Self::one();
        for (i, k, e) in items {
            m.bump(i, k, e);
        }
        m
    }

    fn bump(&mut self, i: Vertex, k: i64, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.exps.entry((i, k)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&(i, k));
        }
    }

    pub fn exp(&self, i: Vertex, k: i64) -> i64 {
        self.exps.get(&(i, k)).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (Vertex, i64, i64)> + '_ {
        self.exps.iter().map(|(&(i, k), &e)| (i, k, e))
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_pow(other, 1)
    }

    /// self * other^e
    pub fn mul_pow(&self, other: &Self, e: i64) -> Self {
        let mut out = self.clone();
        for (&(i, k), &x) in &other.exps {
            out.bump(i, k, x * e);
        }
        out
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul_pow(other, -1)
    }

    pub fn inv(&self) -> Self {
        Self::one().mul_pow(self, -1)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::one().mul_pow(self, e)
    }

    pub fn is_even(&self, uq: &UnfoldedQuiver) -> bool {
        self.exps.keys().all(|&(i, k)| uq.is_even(i, k))
    }

    pub fn check_even(&self, uq: &UnfoldedQuiver) -> Result<(), MonomialError> {
        match self.exps.keys().find(|&&(i, k)| !uq.is_even(i, k)) {
            Some(&(vertex, k)) => Err(MonomialError::OddMonomial { vertex, k }),
            None => Ok(()),
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.exps.values().all(|&e| e >= 0)
    }

    /// Weight in fundamental-weight coordinates of the unfolded quiver.
    pub fn weight(&self, uq: &UnfoldedQuiver) -> Result<Vec<i64>, MonomialError> {
        let mut w = vec![0; uq.len()];
        for (&(i, k), &e) in &self.exps {
            let x = uq.vertex_of(i, k).ok_or(MonomialError::OddMonomial { vertex: i, k })?;
            w[x] += e;
        }
        Ok(w)
    }

    /// Triples (i, k, e) with 1-based i.
    pub fn to_triples(&self) -> Vec<[i64; 3]> {
        self.support().map(|(i, k, e)| [i as i64 + 1, k, e]).collect()
    }

    pub fn from_json_triples(items: &[[i64; 3]]) -> Result<Self, MonomialError> {
        let mut m = Self::one();
        for &[i, k, e] in items {
            if i < 1 {
                return Err(MonomialError::Parse(format!("vertex {i} is not 1-based")));
            }
            m.bump(i as usize - 1, k, e);
        }
        Ok(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (n, (&(i, k), &e)) in self.exps.iter().enumerate() {
            if n > 0 {
                write!(f, " * ")?;
            }
            write!(f, "z[{},{}]", i + 1, k)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MonomialError::Parse(s.to_string());
        let t = s.trim();
        if t == "1" {
            return Ok(Self::one());
        }
        let mut m = Self::one();
        for factor in t.split('*') {
            let factor = factor.trim();
            let rest = factor.strip_prefix("z[").ok_or_else(bad)?;
            let close = rest.find(']').ok_or_else(bad)?;
            let (inside, tail) = (&rest[..close], &rest[close + 1..]);
            let (i, k) = inside.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            let e: i64 = match tail.trim() {
                "" => 1,
                x => x.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?,
            };
            if i == 0 || e == 0 {
                return Err(bad());
            }
            m.bump(i - 1, k, e);
        }
        Ok(m)
    }
}

/// a[i,k] = z[i,k] z[i,k+2d_i] prod_{c_ij<0} prod_{n=1}^{-c_ij} z[j, k+b_ij+2d_i n]^{-1}
pub fn a_monomial(datum: &CartanDatum, i: Vertex, k: i64) -> Monomial {
    let di = datum.d(i);
    let mut m = Monomial::var(i, k);
    m.bump(i, k + 2 * di, 1);
    for j in datum.neighbours(i) {
        for n in 1..=-datum.c(i, j) {
            m.bump(j, k + datum.b(i, j) + 2 * di * n, -1);
        }
    }
    m
}

fn check_coweight(uq: &UnfoldedQuiver, g: &EvenCoweight) -> Result<(), MonomialError> {
    for (i, entries) in g.entries().iter().enumerate() {
        for &k in entries {
            if !uq.is_even(i, k) {
                return Err(MonomialError::OddCoweight { vertex: i, k });
            }
        }
    }
    Ok(())
}

/// z_rho: one variable z[i, 2d_i + doubled] per entry.
pub fn z_rho(uq: &UnfoldedQuiver, rho: &EvenCoweight) -> Result<Monomial, MonomialError> {
    check_coweight(uq, rho)?;
    let mut m = Monomial::one();
    for (i, entries) in rho.entries().iter().enumerate() {
        for &k in entries {
            m.bump(i, k + 2 * uq.base().d(i), 1);
        }
    }
    Ok(m)
}

pub fn a_gamma(uq: &UnfoldedQuiver, gamma: &EvenCoweight) -> Result<Monomial, MonomialError> {
    check_coweight(uq, gamma)?;
    let mut m = Monomial::one();
    for (i, entries) in gamma.entries().iter().enumerate() {
        for &k in entries {
            m = m.mul(&a_monomial(uq.base(), i, k));
        }
    }
    Ok(m)
}

/// Per-vertex offsets making z[i,k] the strictly smallest variable of a[i,k]
/// under the key 2k + offset(i).
fn leading_offsets(datum: &CartanDatum) -> Vec<i64> {
    let n = datum.n();
    let mut t = vec![None; n];
    for start in 0..n {
        if t[start].is_some() {
            continue;
        }
        t[start] = Some(0i64);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in datum.neighbours(i).collect::<Vec<_>>() {
                if t[j].is_none() {
                    let gap = datum.d(i) * (datum.c(i, j) + 2) - datum.d(j) * (datum.c(j, i) + 2);
                    t[j] = Some(t[i].unwrap() - gap);
                    stack.push(j);
                }
            }
        }
    }
    t.into_iter().map(|x| x.unwrap()).collect()
}

/// Solve C x = b exactly for the positive definite unfolded Cartan matrix.
fn solve_counts(c: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let n = b.len();
    let mut a: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i128>> = c[i].iter().map(|&x| Ratio::from(x as i128)).collect();
            row.push(Ratio::from(b[i] as i128));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for cc in col..=n {
                    let v = a[col][cc] * f;
                    a[r][cc] -= v;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            let v = row[n];
            (v.is_integer() && v >= Ratio::zero()).then(|| v.to_integer() as i64)
        })
        .collect()
}

/// The unique multiset S with prod_{(i,k) in S} a[i,k] = m, if any.
pub fn a_factorize(uq: &UnfoldedQuiver, m: &Monomial) -> Option<Vec<(Vertex, i64)>> {
    if !m.is_even(uq) {
        return None;
    }
    let counts = solve_counts(uq.cartan(), &m.weight(uq).ok()?)?;
    let mut budget: i64 = counts.iter().sum();
    let offsets = leading_offsets(uq.base());
    let mut rest = m.clone();
    let mut out = Vec::new();
    while !rest.is_one() {
        let (i, k, e) = rest.support().min_by_key(|&(i, k, _)| (2 * k + offsets[i], i, k))?;
        if e <= 0 || e > budget {
            return None;
        }
        budget -= e;
        rest = rest.mul_pow(&a_monomial(uq.base(), i, k), -e);
        out.extend(std::iter::repeat_n((i, k), e as usize));
    }
    out.sort();
    Some(out)
}

/// An I-tuple of rational functions, each prod (1 - ζ^{e/2} u^{-1})^{mult}
/// times a prefactor ζ^{p/2}. All ζ exponents are stored doubled.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LWeight {
    comps: Vec<LComponent>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LComponent {
    pub prefactor: i64,
    pub factors: BTreeMap<i64, i64>,
}

impl LComponent {
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    fn push(&mut self, e: i64, mult: i64) {
        let slot = self.factors.entry(e).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.factors.remove(&e);
        }
    }
}

impl LWeight {
    pub fn one(n: usize) -> Self {
        Self { comps: vec![LComponent::default(); n] }
    }

    pub fn components(&self) -> &[LComponent] {
        &self.comps
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.comps.iter().map(LComponent::degree).collect()
    }

    pub fn is_one(&self) -> bool {
        self.comps.iter().all(|c| c.prefactor == 0 && c.factors.is_empty())
    }

    /// Z_{i,r}^{mult}: the factor (1 - ζ^r u^{-1}) at component i.
    pub fn z_factor(n: usize, i: Vertex, r: i64, mult: i64) -> Self {
        let mut w = Self::one(n);
        w.comps[i].push(2 * r, mult);
        w
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_pow(other, 1)
    }

    pub fn mul_pow(&self, other: &Self, e: i64) -> Self {
        let mut out = self.clone();
        for (c, o) in out.comps.iter_mut().zip(&other.comps) {
            c.prefactor += e * o.prefactor;
            for (&x, &m) in &o.factors {
                c.push(x, e * m);
            }
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self::one(self.comps.len()).mul_pow(self, -1)
    }
}

impl fmt::Display for LWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |x: i64| {
            if x % 2 == 0 {
                format!("{}", x / 2)
            } else {
                format!("{x}/2")
            }
        };
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| {
                let mut s = Vec::new();
                if c.prefactor != 0 {
                    s.push(format!("ζ^{}", half(c.prefactor)));
                }
                for (&e, &m) in &c.factors {
                    let base = if e == 0 { "(1-u^-1)".to_string() } else { format!("(1-ζ^{}u^-1)", half(e)) };
                    s.push(if m == 1 { base } else { format!("{base}^{m}") });
                }
                if s.is_empty() {
                    "1".into()
                } else {
                    s.join("")
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The ℓ-weight A_{i,k}: zeros at ζ^k, ζ^{k+2d_i} at component i, poles at
/// neighbours, with the prefactor split per component.
pub fn a_lweight(datum: &CartanDatum, i: Vertex, k: i64) -> LWeight {
    let n = datum.n();
    let mut w = LWeight::one(n);
    w.comps[i].prefactor -= 2 * k;
    w.comps[i].push(2 * k, 1);
    w.comps[i].push(2 * (k + 2 * datum.d(i)), 1);
    for j in datum.neighbours(i) {
        w.comps[j].prefactor += -datum.c(i, j) * k;
        for m in 1..=-datum.c(i, j) {
            w.comps[j].push(2 * (k + datum.b(i, j) + 2 * datum.d(i) * m), -1);
        }
    }
    w
}

/// Z_{rho,gamma} = Z_rho * A_gamma^{-1}.
pub fn lweight_of(uq: &UnfoldedQuiver, rho: &EvenCoweight, gamma: &EvenCoweight) -> Result<LWeight, MonomialError> {
    check_coweight(uq, rho)?;
    check_coweight(uq, gamma)?;
    let datum = uq.base();
    let n = datum.n();
    let mut w = LWeight::one(n);
    for (i, entries) in rho.entries().iter().enumerate() {
        for &k in entries {
            w = w.mul(&LWeight::z_factor(n, i, k + 2 * datum.d(i), 1));
        }
    }
    for (i, entries) in gamma.entries().iter().enumerate() {
        for &k in entries {
            w = w.mul_pow(&a_lweight(datum, i, k), -1);
        }
    }
    Ok(w)
}

/// Y_{i,r} = ζ_i (1 - ζ^{r-d_i} u^{-1}) / (1 - ζ^{r+d_i} u^{-1}) at component i.
pub fn y_monomial(datum: &CartanDatum, i: Vertex, r: i64) -> LWeight {
    let mut w = LWeight::one(datum.n());
    let di = datum.d(i);
    w.comps[i].prefactor = 2 * di;
    w.comps[i].push(2 * (r - di), 1);
    w.comps[i].push(2 * (r + di), -1);
    w
}
