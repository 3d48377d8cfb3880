//! Exact difference-operator images of the shifted quantum loop generators,
//! a delta-function calculus to check their defining relations, and the
//! structure constants of the graded multiplication.

pub mod delta;
pub mod images;
pub mod poly;
pub mod relations;
pub mod structure;

use thiserror::Error;

use crate::cartan::{CartanDatum, Vertex};
use poly::{Mono, PoleHit};

pub use delta::{DeltaExpr, Key};
pub use images::{image_a1, image_a2, Generator, Image, SeriesClass};
pub use poly::{Poly, RatFun};
pub use relations::{check_all, check_relation, parse_relations, Relation, RelationReport};
pub use structure::{a_gamma_eta, a_gamma_eta_oracle, conforming};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GkloError {
    #[error("non-simple pole: {0}")]
    NonSimplePole(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("bad dimensions: {0}")]
    Dims(String),
}

impl From<PoleHit> for GkloError {
    fn from(p: PoleHit) -> Self {
        GkloError::NonSimplePole(p.0)
    }
}

/// Number of formal current variables available to products.
pub const FORMAL: usize = 4;

/// Variable layout for one (datum, dims, framing): ζ, then w_{i,r}, then
/// z_{i,s}, then the formal variables.
#[derive(Debug, Clone)]
pub struct Ctx {
    datum: CartanDatum,
    dims: Vec<usize>,
    framing: Vec<usize>,
    w_start: Vec<usize>,
    z_start: Vec<usize>,
    formal_start: usize,
}

impl Ctx {
    pub fn new(datum: &CartanDatum, dims: &[usize], framing: &[usize]) -> Result<Self, GkloError> {
        let n = datum.n();
        if dims.len() != n || framing.len() != n {
            return Err(GkloError::Dims(format!(
                "expected {n} dimensions and {n} framings, got {} and {}",
                dims.len(),
                framing.len()
            )));
        }
        let mut next = 1;
        let mut w_start = Vec::with_capacity(n);
        for &a in dims {
            w_start.push(next);
            next += a;
        }
        let mut z_start = Vec::with_capacity(n);
        for &l in framing {
            z_start.push(next);
            next += l;
        }
        Ok(Self {
            datum: datum.clone(),
            dims: dims.to_vec(),
            framing: framing.to_vec(),
            w_start,
            z_start,
            formal_start: next,
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn framing(&self) -> &[usize] {
        &self.framing
    }

    pub fn nv(&self) -> usize {
        self.formal_start + FORMAL
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn zeta_var(&self) -> usize {
        0
    }

    pub fn w_var(&self, i: Vertex, r: usize) -> usize {
        self.w_start[i] + r
    }

    pub fn z_var(&self, i: Vertex, s: usize) -> usize {
        self.z_start[i] + s
    }

    pub fn formal_var(&self, k: usize) -> usize {
        self.formal_start + k
    }

    /// Position of w_{i,r} inside a shift vector.
    pub fn slot(&self, i: Vertex, r: usize) -> usize {
        self.w_start[i] - 1 + r
    }

    pub fn unit(&self) -> Mono {
        vec![0; self.nv()]
    }

    /// var^e with e counted in halves.
    pub fn half_power(&self, var: usize, half_e: i32) -> Mono {
        let mut m = self.unit();
        m[var] = half_e;
        m
    }

    pub fn w(&self, i: Vertex, r: usize, e: i32) -> Mono {
        self.half_power(self.w_var(i, r), 2 * e)
    }

    pub fn z(&self, i: Vertex, s: usize, e: i32) -> Mono {
        self.half_power(self.z_var(i, s), 2 * e)
    }

    pub fn u(&self, k: usize, e: i32) -> Mono {
        self.half_power(self.formal_var(k), 2 * e)
    }

    /// ζ^e.
    pub fn zeta(&self, e: i64) -> Mono {
        self.half_power(0, 2 * e as i32)
    }

    /// ζ_i^e = ζ^{d_i e}.
    pub fn zeta_i(&self, i: Vertex, e: i64) -> Mono {
        self.zeta(self.datum.d(i) * e)
    }

    /// Variable names for printing.
    pub fn names(&self) -> Vec<String> {
        let mut names = vec![String::new(); self.nv()];
        names[0] = "ζ".into();
        for i in 0..self.datum.n() {
            for r in 0..self.dims[i] {
                names[self.w_var(i, r)] = format!("w[{},{}]", i + 1, r + 1);
            }
            for s in 0..self.framing[i] {
                names[self.z_var(i, s)] = format!("z[{},{}]", i + 1, s + 1);
            }
        }
        let formal = ["u", "v", "u2", "u3"];
        for (k, n) in formal.iter().enumerate() {
            names[self.formal_var(k)] = (*n).into();
        }
        names
    }

    /// The automorphism w_{i,r} ↦ ζ_i^{2 γ_{i,r}} w_{i,r} for a shift vector γ.
    pub fn sigma(&self, shift: &[i32]) -> poly::Subst {
        let mut s = poly::Subst::identity(self.nv());
        for i in 0..self.datum.n() {
            for r in 0..self.dims[i] {
                let g = shift[self.slot(i, r)];
                if g != 0 {
                    let mut img = self.w(i, r, 1);
                    img[0] += 4 * self.datum.d(i) as i32 * g;
                    s.set(self.w_var(i, r), img);
                }
            }
        }
        s
    }

    pub fn zero_shift(&self) -> Vec<i32> {
        vec![0; self.total_dim()]
    }

    pub fn unit_shift(&self, i: Vertex, r: usize, e: i32) -> Vec<i32> {
        let mut s = self.zero_shift();
        s[self.slot(i, r)] = e;
        s
    }
}

pub(crate) fn mono_mul(a: &[i32], b: &[i32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn mono_pow(a: &[i32], k: i32) -> Mono {
    a.iter().map(|x| x * k).collect()
}
