//! Images of the loop generators and of the Coulomb branch series classes
//! as difference operators in the w_{i,r}.

use super::delta::{DeltaExpr, Key};
use super::poly::{q, Mono, RatFun};
use super::{mono_mul, mono_pow, Ctx};
use crate::cartan::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    E(Vertex),
    F(Vertex),
    /// Both ψ± share one rational image; they differ only in expansion.
    Psi(Vertex),
    APlus(Vertex),
    AMinus(Vertex),
    PhiPlus(Vertex),
    PhiMinus(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesClass {
    S(Vertex, i32),
    Q(Vertex, i32),
}

pub type Image = DeltaExpr;

/// Π_t w_{i,t}^{1/2}.
pub fn d_i(ctx: &Ctx, i: Vertex) -> Mono {
    let mut m = ctx.unit();
    for t in 0..ctx.dims()[i] {
        m[ctx.w_var(i, t)] += 1;
    }
    m
}

fn d_side(ctx: &Ctx, i: Vertex, outgoing: bool) -> Mono {
    let dt = ctx.datum();
    let mut m = ctx.unit();
    for j in 0..dt.n() {
        let linked = if outgoing { dt.arrow(i, j) } else { dt.arrow(j, i) };
        if linked {
            m = mono_mul(&m, &mono_pow(&d_i(ctx, j), -dt.c(j, i) as i32));
        }
    }
    m
}

pub fn d_plus(ctx: &Ctx, i: Vertex) -> Mono {
    d_side(ctx, i, true)
}

pub fn d_minus(ctx: &Ctx, i: Vertex) -> Mono {
    d_side(ctx, i, false)
}

pub fn a_plus(ctx: &Ctx, i: Vertex) -> i64 {
    let dt = ctx.datum();
    -(0..dt.n()).filter(|&j| dt.arrow(i, j)).map(|j| ctx.dims()[j] as i64 * dt.c(j, i)).sum::<i64>()
}

pub fn a_minus(ctx: &Ctx, i: Vertex) -> i64 {
    let dt = ctx.datum();
    -(0..dt.n()).filter(|&j| dt.arrow(i, j)).map(|j| ctx.dims()[j] as i64 * dt.c(i, j)).sum::<i64>()
}

/// Π_s (1 - w_{i,s} x⁻¹) for a monomial argument x.
pub fn w_poly(ctx: &Ctx, i: Vertex, x: &Mono) -> RatFun {
    let inv = mono_pow(x, -1);
    (0..ctx.dims()[i])
        .fold(RatFun::one(ctx.nv()), |acc, s| acc.mul(&RatFun::one_minus(mono_mul(&ctx.w(i, s, 1), &inv))))
}

/// Π_{s≠r} (1 - w_{i,r}⁻¹ w_{i,s}).
pub fn w_ir(ctx: &Ctx, i: Vertex, r: usize) -> RatFun {
    (0..ctx.dims()[i])
        .filter(|&s| s != r)
        .fold(RatFun::one(ctx.nv()), |acc, s| acc.mul(&RatFun::one_minus(mono_mul(&ctx.w(i, r, -1), &ctx.w(i, s, 1)))))
}

/// The cross factor over outgoing (`outgoing`) or incoming arrows at w_{i,r}.
pub fn w_cross(ctx: &Ctx, i: Vertex, r: usize, outgoing: bool) -> RatFun {
    let dt = ctx.datum();
    let mut acc = RatFun::one(ctx.nv());
    for j in 0..dt.n() {
        let linked = if outgoing { dt.arrow(i, j) } else { dt.arrow(j, i) };
        if !linked {
            continue;
        }
        let cji = dt.c(j, i);
        for s in 0..ctx.dims()[j] {
            for n in 1..=-cji {
                let mut m = mono_mul(&ctx.w(i, r, -1), &ctx.w(j, s, 1));
                m = mono_mul(&m, &ctx.zeta_i(j, 2 * n + cji));
                if outgoing {
                    m = mono_mul(&m, &ctx.zeta_i(i, -2));
                }
                acc = acc.mul(&RatFun::one_minus(m));
            }
        }
    }
    acc
}

/// Π_s (1 - ζ_i² z_{i,s} x⁻¹).
pub fn z_poly(ctx: &Ctx, i: Vertex, x: &Mono) -> RatFun {
    let inv = mono_pow(x, -1);
    (0..ctx.framing()[i]).fold(RatFun::one(ctx.nv()), |acc, s| {
        acc.mul(&RatFun::one_minus(mono_mul(&mono_mul(&ctx.zeta_i(i, 2), &ctx.z(i, s, 1)), &inv)))
    })
}

fn inv(f: &RatFun) -> RatFun {
    f.inv().expect("factored units invert")
}

/// ±m, negative when `negate`.
fn signed(negate: bool, m: Mono) -> RatFun {
    let f = RatFun::mono(m);
    if negate {
        f.scale(&q(-1))
    } else {
        f
    }
}

/// The rational function whose two expansions are the ψ± images.
pub fn psi_rational(ctx: &Ctx, i: Vertex, var: usize) -> RatFun {
    let dt = ctx.datum();
    let u = ctx.u(var, 1);
    let front = mono_mul(&mono_pow(&d_i(ctx, i), 2), &mono_pow(&mono_mul(&d_plus(ctx, i), &d_minus(ctx, i)), -1));
    let mut f = RatFun::mono(front).mul(&z_poly(ctx, i, &u)).mul(&inv(&w_poly(ctx, i, &u))).mul(&inv(&w_poly(
        ctx,
        i,
        &mono_mul(&ctx.zeta_i(i, -2), &u),
    )));
    for j in 0..dt.n() {
        let cji = dt.c(j, i);
        if j == i || cji >= 0 {
            continue;
        }
        for n in 1..=-cji {
            f = f.mul(&w_poly(ctx, j, &mono_mul(&ctx.zeta_i(j, -cji - 2 * n), &u)));
        }
    }
    f
}

/// Image of a generator; currents use the formal variable `var`.
pub fn image_a1(ctx: &Ctx, g: Generator, var: usize) -> Image {
    match g {
        Generator::E(i) => {
            let front = mono_mul(&mono_pow(&d_i(ctx, i), 2), &mono_pow(&d_minus(ctx, i), -1));
            let mut out = DeltaExpr::zero();
            for r in 0..ctx.dims()[i] {
                let centre = ctx.w(i, r, 1);
                let coeff = RatFun::mono(front.clone())
                    .mul(&z_poly(ctx, i, &centre))
                    .mul(&w_cross(ctx, i, r, false))
                    .mul(&inv(&w_ir(ctx, i, r)));
                let mut key = Key::plain(ctx, ctx.unit_shift(i, r, -1));
                key.pins[var] = Some(centre);
                out.push(key, coeff);
            }
            out
        }
        Generator::F(i) => {
            let front = mono_mul(&ctx.zeta_i(i, -1), &mono_pow(&d_plus(ctx, i), -1));
            let mut out = DeltaExpr::zero();
            for r in 0..ctx.dims()[i] {
                let coeff = signed(true, front.clone()).mul(&w_cross(ctx, i, r, true)).mul(&inv(&w_ir(ctx, i, r)));
                let mut key = Key::plain(ctx, ctx.unit_shift(i, r, 1));
                key.pins[var] = Some(mono_mul(&ctx.zeta_i(i, 2), &ctx.w(i, r, 1)));
                out.push(key, coeff);
            }
            out
        }
        Generator::Psi(i) => DeltaExpr::function(ctx, psi_rational(ctx, i, var)),
        Generator::APlus(i) => {
            DeltaExpr::function(ctx, RatFun::mono(mono_pow(&d_i(ctx, i), -1)).mul(&w_poly(ctx, i, &ctx.u(var, 1))))
        }
        Generator::AMinus(i) => {
            let a = ctx.dims()[i] as i64;
            let m = mono_mul(&mono_mul(&ctx.zeta_i(i, a), &ctx.u(var, a as i32)), &mono_pow(&d_i(ctx, i), -1));
            DeltaExpr::function(ctx, RatFun::mono(m).mul(&w_poly(ctx, i, &ctx.u(var, 1))))
        }
        Generator::PhiPlus(i) => DeltaExpr::function(ctx, RatFun::mono(d_i(ctx, i))),
        Generator::PhiMinus(i) => {
            let a = ctx.dims()[i] as i64;
            let m = mono_mul(&ctx.zeta_i(i, -a), &mono_pow(&d_i(ctx, i), -1));
            DeltaExpr::function(ctx, signed(a % 2 == 1, m))
        }
    }
}

/// Image of (S_i)^{⊗N} or (Q_i)^{⊗N} under the embedding into difference operators.
pub fn image_a2(ctx: &Ctx, class: SeriesClass) -> Image {
    let mut out = DeltaExpr::zero();
    match class {
        SeriesClass::S(i, n) => {
            let a = ctx.dims()[i] as i64;
            // -(-ζ_i²)^{-a} = (-1)^{a+1} ζ_i^{-2a}
            let pre = signed(a % 2 == 0, ctx.zeta_i(i, -2 * a));
            let d2 = mono_pow(&d_i(ctx, i), 2);
            for r in 0..ctx.dims()[i] {
                let centre = ctx.w(i, r, 1);
                let power = mono_pow(&mono_mul(&ctx.zeta_i(i, -2), &centre), n - a as i32);
                let coeff = pre
                    .mul(&RatFun::mono(mono_mul(&power, &d2)))
                    .mul(&z_poly(ctx, i, &centre))
                    .mul(&w_cross(ctx, i, r, false))
                    .mul(&inv(&w_ir(ctx, i, r)));
                out.push(Key::plain(ctx, ctx.unit_shift(i, r, -1)), coeff);
            }
        }
        SeriesClass::Q(i, n) => {
            let ap = a_plus(ctx, i);
            let am = a_minus(ctx, i);
            let pre = signed(ap % 2 == 1, mono_mul(&ctx.zeta_i(i, 2 * ap), &ctx.zeta_i(i, -am)));
            let dp = mono_pow(&d_plus(ctx, i), -2);
            for r in 0..ctx.dims()[i] {
                let power = ctx.w(i, r, n + ap as i32);
                let coeff = pre
                    .mul(&RatFun::mono(mono_mul(&power, &dp)))
                    .mul(&w_cross(ctx, i, r, true))
                    .mul(&inv(&w_ir(ctx, i, r)));
                out.push(Key::plain(ctx, ctx.unit_shift(i, r, 1)), coeff);
            }
        }
    }
    out
}

/// E_{i,n} rebuilt from series classes: (-1)^{a_i} (D_i^-)^{-1} (ζ_i² S_i)^{⊗(n+a_i)}.
pub fn e_mode_from_series(ctx: &Ctx, i: Vertex, n: i32) -> Image {
    let a = ctx.dims()[i] as i32;
    let pre = signed(a % 2 == 1, mono_mul(&mono_pow(&d_minus(ctx, i), -1), &ctx.zeta_i(i, 2 * (n + a) as i64)));
    image_a2(ctx, SeriesClass::S(i, n + a)).left_fn(ctx, &pre).expect("no pins")
}

/// F_{i,n} rebuilt from series classes: (-1)^{a_i^+} ζ_i^{a_i^- - 1} D_i^+ (ζ_i² Q_i)^{⊗(n-a_i^+)}.
pub fn f_mode_from_series(ctx: &Ctx, i: Vertex, n: i32) -> Image {
    let ap = a_plus(ctx, i);
    let am = a_minus(ctx, i);
    let m = mono_mul(&mono_mul(&ctx.zeta_i(i, am - 1), &d_plus(ctx, i)), &ctx.zeta_i(i, 2 * (n as i64 - ap)));
    let pre = signed(ap % 2 == 1, m);
    image_a2(ctx, SeriesClass::Q(i, n - ap as i32)).left_fn(ctx, &pre).expect("no pins")
}
