//! Sums of δ(c·u⁻¹)·f·D^γ terms in several formal variables.
//!
//! A term pins some formal variables to centres (monomials in ζ, w, z) and
//! carries a coefficient already evaluated at those centres. Multiplying
//! two terms moves the shift of the left factor through the right one:
//! centres and coefficient on the right are transported by σ_γ before the
//! pins of both sides are substituted.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::poly::{Mono, Poly, RatFun, Subst};
use super::{Ctx, GkloError, FORMAL};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub pins: Vec<Option<Mono>>,
    pub shift: Vec<i32>,
}

impl Key {
    pub fn plain(ctx: &Ctx, shift: Vec<i32>) -> Self {
        debug_assert_eq!(shift.len(), ctx.total_dim());
        Self { pins: vec![None; FORMAL], shift }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DeltaExpr {
    terms: BTreeMap<Key, RatFun>,
}

fn pin_subst(ctx: &Ctx, pins: &[Option<Mono>]) -> Subst {
    let mut s = Subst::identity(ctx.nv());
    for (k, p) in pins.iter().enumerate() {
        if let Some(c) = p {
            s.set(ctx.formal_var(k), c.clone());
        }
    }
    s
}

fn transport(m: &Mono, s: &Subst) -> Mono {
    let p = Poly::mono(m.clone()).subst(s);
    p.as_term().expect("monomial image").0.clone()
}

impl DeltaExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A function times D^shift, with no pinned variables.
    pub fn operator(ctx: &Ctx, coeff: RatFun, shift: Vec<i32>) -> Self {
        let mut e = Self::zero();
        e.push(Key::plain(ctx, shift), coeff);
        e
    }

    pub fn function(ctx: &Ctx, coeff: RatFun) -> Self {
        Self::operator(ctx, coeff, ctx.zero_shift())
    }

    pub fn push(&mut self, key: Key, coeff: RatFun) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &RatFun)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, f) in &other.terms {
            out.push(k.clone(), f.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, f)| (k.clone(), f.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, f) in &self.terms {
            out.push(k.clone(), f.scale(c));
        }
        out
    }

    /// Multiply on the left by a shift-free function, evaluated at each term's pins.
    pub fn left_fn(&self, ctx: &Ctx, f: &RatFun) -> Result<Self, GkloError> {
        let mut out = Self::zero();
        for (k, g) in &self.terms {
            let fe = f.subst(&pin_subst(ctx, &k.pins))?;
            out.push(k.clone(), fe.mul(g));
        }
        Ok(out)
    }

    /// The product self·other in the difference-operator algebra.
    pub fn mul(&self, ctx: &Ctx, other: &Self, budget: usize) -> Result<Self, GkloError> {
        let work = self.terms.len().saturating_mul(other.terms.len());
        if work > budget {
            return Err(GkloError::BudgetExceeded(format!("{work} term products exceed the budget of {budget}")));
        }
        let mut out = Self::zero();
        for (ka, fa) in &self.terms {
            let sigma = ctx.sigma(&ka.shift);
            for (kb, fb) in &other.terms {
                let mut pins = ka.pins.clone();
                for (slot, pb) in pins.iter_mut().zip(&kb.pins) {
                    if let Some(c) = pb {
                        if slot.is_some() {
                            return Err(GkloError::Dims("a formal variable is pinned twice".into()));
                        }
                        *slot = Some(transport(c, &sigma));
                    }
                }
                let coeff = fa.mul(&fb.subst(&sigma)?).subst(&pin_subst(ctx, &pins))?;
                let shift = ka.shift.iter().zip(&kb.shift).map(|(x, y)| x + y).collect();
                out.push(Key { pins, shift }, coeff);
            }
        }
        Ok(out)
    }

    /// Coefficient of u^{-n} in the formal variable `k`: each δ(c/u) contributes c^n.
    /// Terms not pinned in `k` are dropped.
    pub fn mode(&self, k: usize, n: i32) -> Self {
        let mut out = Self::zero();
        for (key, f) in &self.terms {
            let mut key = key.clone();
            if let Some(c) = key.pins[k].take() {
                let cn: Mono = c.iter().map(|e| e * n).collect();
                out.push(key, f.mul(&RatFun::mono(cn)));
            }
        }
        out
    }

    /// The only coefficient of a single-term expression.
    pub fn sole(&self) -> Option<&RatFun> {
        if self.terms.len() == 1 {
            self.terms.values().next()
        } else {
            None
        }
    }

    pub fn fmt_term(ctx: &Ctx, key: &Key, f: &RatFun) -> String {
        let names = ctx.names();
        let mut parts = Vec::new();
        for (k, p) in key.pins.iter().enumerate() {
            if let Some(c) = p {
                parts.push(format!("δ({}/{})", Poly::mono(c.clone()).fmt_with(&names), names[ctx.formal_var(k)]));
            }
        }
        parts.push(f.fmt_with(&names));
        if key.shift.iter().any(|&s| s != 0) {
            parts.push(format!("D{:?}", key.shift));
        }
        parts.join(" · ")
    }
}
