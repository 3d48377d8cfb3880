//! Finite-type Lie theory oracle for simply-laced Cartan matrices: positive
//! roots, Freudenthal multiplicities, Weyl dimensions and Klimyk's rule.
//!
//! Weights are in fundamental-weight coordinates, roots in simple-root
//! coordinates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("NotSimplyLaced: the oracle needs a symmetric Cartan matrix")]
    NotSimplyLaced,
    #[error("NotDominant: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("Cartan matrix is singular or malformed")]
    Singular,
}

pub type Weight = Vec<i64>;
/// Weight -> multiplicity.
pub type Character = BTreeMap<Weight, u64>;

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    /// det(C) * C^{-1}, an integer matrix.
    adj: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(cartan: Vec<Vec<i64>>) -> Result<Self, LieError> {
        let n = cartan.len();
        if cartan.iter().any(|r| r.len() != n) {
            return Err(LieError::Singular);
        }
        for i in 0..n {
            for j in 0..n {
                if cartan[i][j] != cartan[j][i] {
                    return Err(LieError::NotSimplyLaced);
                }
            }
        }
        let (adj, _) = adjugate(&cartan).ok_or(LieError::Singular)?;
        let positive_roots = positive_roots(&cartan);
        Ok(Self { cartan, positive_roots, adj })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Half-sum of positive roots in fundamental-weight coordinates, doubled.
    pub fn rho_doubled(&self) -> Weight {
        let mut s = vec![0; self.rank()];
        for r in &self.positive_roots {
            for (a, b) in s.iter_mut().zip(self.root_weight(r)) {
                *a += b;
            }
        }
        s
    }

    /// Weight of a root given in simple-root coordinates.
    pub fn root_weight(&self, root: &[i64]) -> Weight {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.cartan[i][j] * root[j]).sum()).collect()
    }

    /// det(C) times the invariant form on weights.
    fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a[i] * self.adj[i][j] * b[j];
            }
        }
        s
    }

    pub fn reflect(&self, w: &[i64], i: usize) -> Weight {
        let c = w[i];
        (0..self.rank()).map(|j| w[j] - c * self.cartan[j][i]).collect()
    }

    /// Dominant conjugate of w with the parity of the reflections used.
    pub fn to_dominant(&self, w: &[i64]) -> (Weight, i64) {
        let mut w = w.to_vec();
        let mut sign = 1;
        while let Some(i) = w.iter().position(|&x| x < 0) {
            w = self.reflect(&w, i);
            sign = -sign;
        }
        (w, sign)
    }

    pub fn orbit(&self, w: &[i64]) -> BTreeSet<Weight> {
        let mut seen: BTreeSet<Weight> = [w.to_vec()].into();
        let mut queue: VecDeque<Weight> = [w.to_vec()].into();
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.reflect(&x, i);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, highest: &[i64]) -> Result<u64, LieError> {
        check_dominant(highest)?;
        let rho = vec![1; self.rank()];
        let shifted: Vec<i64> = highest.iter().map(|x| x + 1).collect();
        let mut q = BigRational::one();
        for r in &self.positive_roots {
            let rw = self.root_weight(r);
            q *= BigRational::new(BigInt::from(self.form(&shifted, &rw)), BigInt::from(self.form(&rho, &rw)));
        }
        Ok(q.to_integer().to_u64().expect("dimension fits"))
    }
}

fn check_dominant(w: &[i64]) -> Result<(), LieError> {
    if w.iter().any(|&x| x < 0) {
        return Err(LieError::NotDominant(w.to_vec()));
    }
    Ok(())
}

fn adjugate(c: &[Vec<i64>]) -> Option<(Vec<Vec<i64>>, i64)> {
    let n = c.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = c[i].iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let v = &a[col][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    if !det.is_integer() || det.is_negative() {
        return None;
    }
    let adj = (0..n).map(|i| (0..n).map(|j| (&a[i][n + j] * &det).to_integer().to_i64().unwrap()).collect()).collect();
    Some((adj, det.to_integer().to_i64()?))
}

/// Root strings: β + α_i is a root iff q > 0, where p - q = <β, α_i^∨>.
fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut all: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| c[i][j] * beta[j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

/// Dominant weights below `highest`, sorted by increasing depth.
fn dominant_weights(rs: &RootSystem, highest: &[i64]) -> Vec<Weight> {
    let mut seen: BTreeSet<Weight> = [highest.to_vec()].into();
    let mut queue: VecDeque<Weight> = [highest.to_vec()].into();
    let roots: Vec<Weight> = rs.positive_roots.iter().map(|r| rs.root_weight(r)).collect();
    while let Some(w) = queue.pop_front() {
        for r in &roots {
            let v: Weight = w.iter().zip(r).map(|(a, b)| a - b).collect();
            if v.iter().all(|&x| x >= 0) && seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    let form_rho = |w: &Weight| rs.form(highest, &vec![1; rs.rank()]) - rs.form(w, &vec![1; rs.rank()]);
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by_key(|w| (form_rho(w), w.clone()));
    out
}

/// Freudenthal's recursion over dominant weights, extended by Weyl symmetry.
pub fn weight_multiplicities(rs: &RootSystem, highest: &[i64]) -> Result<Character, LieError> {
    check_dominant(highest)?;
    let n = rs.rank();
    let rho = vec![1; n];
    let lr: Weight = highest.iter().map(|x| x + 1).collect();
    let top = rs.form(&lr, &lr);
    let roots: Vec<Weight> = rs.positive_roots.iter().map(|r| rs.root_weight(r)).collect();
    let mut dom: BTreeMap<Weight, u64> = BTreeMap::new();
    let lookup = |dom: &BTreeMap<Weight, u64>, w: &Weight| -> u64 {
        let (d, _) = rs.to_dominant(w);
        dom.get(&d).copied().unwrap_or(0)
    };
    for mu in dominant_weights(rs, highest) {
        if mu == highest {
            dom.insert(mu, 1);
            continue;
        }
        let mr: Weight = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let denom = top - rs.form(&mr, &mr);
        let mut num = 0i64;
        for a in &roots {
            let mut k = 1;
            loop {
                let v: Weight = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                let m = lookup(&dom, &v);
                if m == 0 {
                    // weights of an irreducible module are saturated along root strings
                    break;
                }
                num += 2 * m as i64 * rs.form(&v, a);
                k += 1;
            }
        }
        assert!(denom > 0 && num % denom == 0, "Freudenthal division");
        let m = (num / denom) as u64;
        if m > 0 {
            dom.insert(mu, m);
        }
    }
    let mut ch = Character::new();
    for (w, m) in dom {
        for x in rs.orbit(&w) {
            ch.insert(x, m);
        }
    }
    Ok(ch)
}

pub fn dimension(ch: &Character) -> u64 {
    ch.values().sum()
}

/// Multiplicities of the irreducible summands of L(λ) ⊗ L(μ).
pub fn tensor_decompose(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<BTreeMap<Weight, u64>, LieError> {
    check_dominant(lambda)?;
    let ch = weight_multiplicities(rs, mu)?;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, &m) in &ch {
        let shifted: Weight = lambda.iter().zip(nu).map(|(a, b)| a + b + 1).collect();
        let (d, sign) = rs.to_dominant(&shifted);
        if d.contains(&0) {
            continue;
        }
        let hw: Weight = d.iter().map(|x| x - 1).collect();
        *acc.entry(hw).or_insert(0) += sign * m as i64;
    }
    Ok(acc
        .into_iter()
        .filter(|&(_, m)| m != 0)
        .map(|(w, m)| {
            assert!(m > 0, "negative multiplicity in Klimyk sum");
            (w, m as u64)
        })
        .collect())
}

/// Multiplicity of weight μ in a direct sum of irreducibles.
pub fn weight_space_dim(rs: &RootSystem, summands: &BTreeMap<Weight, u64>, weight: &[i64]) -> Result<u64, LieError> {
    let mut total = 0;
    for (hw, &m) in summands {
        total += m * weight_multiplicities(rs, hw)?.get(weight).copied().unwrap_or(0);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin, unfold};

    fn rs(ty: &str) -> RootSystem {
        RootSystem::new(builtin(ty).unwrap().matrix().to_vec()).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(rs("A3").positive_roots().len(), 6);
        assert_eq!(rs("D4").positive_roots().len(), 12);
        assert_eq!(rs("E6").positive_roots().len(), 36);
        assert_eq!(rs("E8").positive_roots().len(), 120);
        assert_eq!(rs("A3").rho_doubled(), vec![2, 2, 2]);
        assert!(matches!(RootSystem::new(builtin("B2").unwrap().matrix().to_vec()), Err(LieError::NotSimplyLaced)));
    }

    #[test]
    fn a3_modules() {
        let a3 = rs("A3");
        let ch = weight_multiplicities(&a3, &[0, 1, 0]).unwrap();
        assert_eq!(dimension(&ch), 6);
        assert!(ch.values().all(|&m| m == 1));
        let adj = weight_multiplicities(&a3, &[1, 0, 1]).unwrap();
        assert_eq!(dimension(&adj), 15);
        assert_eq!(adj[&vec![0, 0, 0]], 3);
        let triv = weight_multiplicities(&a3, &[0, 0, 0]).unwrap();
        assert_eq!(triv.len(), 1);
        assert!(weight_multiplicities(&a3, &[-1, 0, 0]).is_err());
    }

    #[test]
    fn freudenthal_matches_weyl() {
        for ty in ["A3", "D4", "E6", "A5"] {
            let r = rs(ty);
            let n = r.rank();
            for i in 0..n {
                let mut w = vec![0; n];
                w[i] = 1;
                let ch = weight_multiplicities(&r, &w).unwrap();
                assert_eq!(dimension(&ch), r.weyl_dimension(&w).unwrap(), "{ty} {w:?}");
            }
            let twos = vec![1; n];
            if n <= 4 {
                let ch = weight_multiplicities(&r, &twos).unwrap();
                assert_eq!(dimension(&ch), r.weyl_dimension(&twos).unwrap());
            }
        }
    }

    #[test]
    fn characters_are_weyl_symmetric() {
        let r = rs("D4");
        let ch = weight_multiplicities(&r, &[1, 0, 1, 0]).unwrap();
        for (w, m) in &ch {
            for i in 0..4 {
                assert_eq!(ch.get(&r.reflect(w, i)), Some(m));
            }
        }
    }

    #[test]
    fn a3_tensor_products() {
        // the unfolded B2 quiver orders its vertices (1,2), (1,4), (2,2): ends, ends, middle
        let uq = unfold(&builtin("B2").unwrap(), None).unwrap();
        let r = RootSystem::new(uq.cartan().to_vec()).unwrap();
        let e = |x: usize| {
            let mut w = vec![0; 3];
            w[x] = 1;
            w
        };
        let (one, two, three) = (1usize, 2usize, 0usize);
        let got = tensor_decompose(&r, &e(one), &e(three)).unwrap();
        let sum: Weight = e(one).iter().zip(e(three)).map(|(a, b)| a + b).collect();
        assert_eq!(got, BTreeMap::from([(sum.clone(), 1), (vec![0, 0, 0], 1)]));
        let got = tensor_decompose(&r, &e(two), &e(two)).unwrap();
        let double: Weight = e(two).iter().map(|x| 2 * x).collect();
        assert_eq!(got, BTreeMap::from([(double.clone(), 1), (sum.clone(), 1), (vec![0, 0, 0], 1)]));
        let dims: Vec<u64> = got.keys().map(|w| r.weyl_dimension(w).unwrap()).collect();
        assert_eq!(dims.iter().sum::<u64>(), 36);
        assert_eq!(weight_space_dim(&r, &BTreeMap::from([(sum, 1)]), &[0, 0, 0]).unwrap(), 3);
        assert_eq!(weight_space_dim(&r, &BTreeMap::from([(double, 1)]), &[0, 0, 0]).unwrap(), 2);
        assert_eq!(weight_space_dim(&r, &BTreeMap::from([(e(one), 1)]), &[5, 0, 0]).unwrap(), 0);
        let with_trivial = tensor_decompose(&r, &e(two), &[0, 0, 0]).unwrap();
        assert_eq!(with_trivial, BTreeMap::from([(e(two), 1)]));
    }
}
