//! The constant a_{γ,η} in the product of two orbit classes.
//!
//! [`a_gamma_eta`] evaluates the closed product over index triples
//! (m, m', m''). [`a_gamma_eta_oracle`] recomputes it from the torus
//! characters of z^γ N_O by intersecting the three lattices and taking
//! Euler classes of the quotients.

use super::poly::{Mono, RatFun};
use super::{mono_mul, Ctx, GkloError};
use crate::cartan::Vertex;

/// One cocharacter value per (i, r).
pub type Cochar = Vec<Vec<i64>>;

fn check_shape(ctx: &Ctx, v: &Cochar, what: &str) -> Result<(), GkloError> {
    let ok = v.len() == ctx.dims().len() && v.iter().zip(ctx.dims()).all(|(x, &a)| x.len() == a);
    if ok {
        Ok(())
    } else {
        Err(GkloError::Dims(format!("{what} must have {:?} entries per vertex", ctx.dims())))
    }
}

/// m with (m, m - g, m - g - h) in one of the two admissible sign patterns.
fn admissible(g: i64, h: i64) -> impl Iterator<Item = i64> {
    let first = 0.max(g + h)..g;
    let second = g..0.min(g + h);
    first.chain(second)
}

fn factor(ctx: &Ctx, zeta: i64, num: Mono, den: Mono) -> RatFun {
    RatFun::one_minus(mono_mul(&mono_mul(&ctx.zeta(zeta), &num), &den))
}

/// Arrow pairs (i → j) with the family they contribute to.
fn arrow_pairs(ctx: &Ctx) -> Vec<(Vertex, Vertex)> {
    ctx.datum().arrows()
}

pub fn a_gamma_eta(ctx: &Ctx, gamma: &Cochar, eta: &Cochar) -> Result<RatFun, GkloError> {
    check_shape(ctx, gamma, "gamma")?;
    check_shape(ctx, eta, "eta")?;
    let dt = ctx.datum();
    let mut out = RatFun::one(ctx.nv());
    for (i, j) in arrow_pairs(ctx) {
        let (di, dj, cij, cji) = (dt.d(i), dt.d(j), dt.c(i, j), dt.c(j, i));
        let unit = if cij == -1 { dj } else { di };
        for r in 0..ctx.dims()[i] {
            for s in 0..ctx.dims()[j] {
                let x = dj * gamma[j][s] - di * gamma[i][r];
                let y = dj * eta[j][s] - di * eta[i][r];
                if x % unit != 0 || y % unit != 0 {
                    return Err(GkloError::Dims(format!("weights not divisible by {unit}")));
                }
                for m in admissible(x / unit, y / unit) {
                    // ζ_j^{-c_ji-2-2m} or ζ_i^{c_ij-2m}
                    let z = if cij == -1 { dj * (-cji - 2 - 2 * m) } else { di * (cij - 2 * m) };
                    out = out.mul(&factor(ctx, z, ctx.w(i, r, 1), ctx.w(j, s, -1)));
                }
            }
        }
    }
    for i in 0..dt.n() {
        for r in 0..ctx.dims()[i] {
            for t in 0..ctx.framing()[i] {
                for m in admissible(gamma[i][r], eta[i][r]) {
                    out = out.mul(&factor(ctx, -2 * dt.d(i) * m, ctx.z(i, t, 1), ctx.w(i, r, -1)));
                }
            }
        }
    }
    Ok(out)
}

/// A lattice {base + step·n : n ≥ 0} of doubled ℂ^×-weights.
#[derive(Debug, Clone, Copy)]
struct Ray {
    base: i64,
    step: i64,
}

fn meet(a: Ray, b: Ray) -> Ray {
    debug_assert_eq!((a.base - b.base).rem_euclid(a.step), 0);
    Ray { base: a.base.max(b.base), step: a.step }
}

/// Weights in `outer` but not in `inner` (inner ⊂ outer).
fn quotient(outer: Ray, inner: Ray) -> impl Iterator<Item = i64> {
    (outer.base..inner.base).step_by(outer.step as usize)
}

/// Euler class contribution Λ(V) for the weights of V: Π (1 - [χ]⁻¹).
fn euler(ctx: &Ctx, weights: impl Iterator<Item = i64>, wz: &Mono) -> RatFun {
    weights.fold(RatFun::one(ctx.nv()), |acc, e| acc.mul(&RatFun::one_minus(mono_mul(&ctx.zeta(-e), wz))))
}

fn family(ctx: &Ctx, ray: impl Fn(&Cochar) -> Ray, gamma: &Cochar, eta: &Cochar, wz: &Mono) -> RatFun {
    let zero: Cochar = ctx.dims().iter().map(|&a| vec![0; a]).collect();
    let sum: Cochar = gamma.iter().zip(eta).map(|(g, e)| g.iter().zip(e).map(|(x, y)| x + y).collect()).collect();
    let (n, zg, zgh) = (ray(&zero), ray(gamma), ray(&sum));
    let all = meet(meet(n, zg), zgh);
    let q1 = euler(ctx, quotient(zg, meet(n, zg)), wz);
    let q2 = euler(ctx, quotient(meet(n, zgh), all), wz);
    let q3 = euler(ctx, quotient(meet(zg, zgh), all), wz);
    q1.mul(&q2).mul(&q3.inv().expect("products of atoms invert"))
}

/// The same constant from the Euler classes of the lattice quotients.
pub fn a_gamma_eta_oracle(ctx: &Ctx, gamma: &Cochar, eta: &Cochar) -> Result<RatFun, GkloError> {
    check_shape(ctx, gamma, "gamma")?;
    check_shape(ctx, eta, "eta")?;
    let dt = ctx.datum();
    let mut out = RatFun::one(ctx.nv());
    for (i, j) in arrow_pairs(ctx) {
        let (di, dj) = (dt.d(i), dt.d(j));
        let simple = dt.c(i, j) == -1;
        for r in 0..ctx.dims()[i] {
            for s in 0..ctx.dims()[j] {
                // doubled weights of z^γ N_O on Hom(V_i, V_j)
                let ray = |g: &Cochar| {
                    if simple {
                        Ray { base: 2 * dj * (g[j][s] + 1) - di * (2 * g[i][r] + 1), step: 2 * dj }
                    } else {
                        Ray { base: dj * (2 * g[j][s] + 1) - 2 * di * g[i][r], step: 2 * di }
                    }
                };
                // [χ]⁻¹ carries w_{j,s}⁻¹ w_{i,r}
                let wz = mono_mul(&ctx.w(j, s, -1), &ctx.w(i, r, 1));
                out = out.mul(&family(ctx, ray, gamma, eta, &wz));
            }
        }
    }
    for i in 0..dt.n() {
        let di = dt.d(i);
        for r in 0..ctx.dims()[i] {
            for t in 0..ctx.framing()[i] {
                let ray = |g: &Cochar| Ray { base: 2 * di * g[i][r], step: 2 * di };
                let wz = mono_mul(&ctx.w(i, r, -1), &ctx.z(i, t, 1));
                out = out.mul(&family(ctx, ray, gamma, eta, &wz));
            }
        }
    }
    Ok(out)
}

/// The sign conditions under which the constant is known to be 1.
pub fn conforming(ctx: &Ctx, gamma: &Cochar, eta: &Cochar) -> bool {
    let dt = ctx.datum();
    let framed = ctx.framing().iter().any(|&l| l > 0);
    if framed && gamma.iter().flatten().zip(eta.iter().flatten()).any(|(g, e)| g * e < 0) {
        return false;
    }
    for i in 0..dt.n() {
        for j in 0..dt.n() {
            if i == j || dt.c(i, j) >= 0 {
                continue;
            }
            for r in 0..ctx.dims()[i] {
                for s in 0..ctx.dims()[j] {
                    let x = dt.d(j) * gamma[j][s] - dt.d(i) * gamma[i][r];
                    let y = dt.d(j) * eta[j][s] - dt.d(i) * eta[i][r];
                    if x * y < 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}
