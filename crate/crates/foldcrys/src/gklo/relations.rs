//! Term-by-term verification of the defining relations on the images.
//!
//! Relations between currents are compared with their denominators cleared:
//! `(u - q v) A(u) B(v) = (q u - v) B(v) A(u)` stands for
//! `A(u) B(v) = B(v) A(u) g(u/v)`. Rational images of ψ are compared as
//! rational functions, which covers both expansions at once.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::delta::{DeltaExpr, Key};
use super::images::{e_mode_from_series, f_mode_from_series, image_a1, psi_rational, Generator};
use super::poly::{q, q_binomial, Mono, Poly, RatFun, Subst};
use super::{mono_mul, Ctx, GkloError, FORMAL};
use crate::caps::Caps;
use crate::cartan::Vertex;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Relation {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    /// Constant terms of the A± series against the φ±.
    A0,
    /// Modes of E and F rebuilt from the series classes.
    A2,
}

impl Relation {
    pub const LETTERS: [Relation; 8] =
        [Relation::A, Relation::B, Relation::C, Relation::D, Relation::E, Relation::F, Relation::G, Relation::H];

    pub fn tag(self) -> &'static str {
        match self {
            Relation::A => "a",
            Relation::B => "b",
            Relation::C => "c",
            Relation::D => "d",
            Relation::E => "e",
            Relation::F => "f",
            Relation::G => "g",
            Relation::H => "h",
            Relation::A0 => "A0",
            Relation::A2 => "A2",
        }
    }

    fn from_tag(t: &str) -> Option<Self> {
        let t = t.to_ascii_lowercase();
        Self::LETTERS.into_iter().chain([Relation::A0, Relation::A2]).find(|r| r.tag().to_ascii_lowercase() == t)
    }
}

/// Parse `a-h`, `a,c,g`, `all` or a mix such as `a-g,A0`.
pub fn parse_relations(text: &str) -> Result<Vec<Relation>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            out.extend(Relation::LETTERS);
            out.extend([Relation::A0, Relation::A2]);
        } else if let Some((a, b)) = part.split_once('-') {
            let lo = Relation::from_tag(a).filter(|r| Relation::LETTERS.contains(r));
            let hi = Relation::from_tag(b).filter(|r| Relation::LETTERS.contains(r));
            match (lo, hi) {
                (Some(lo), Some(hi)) if lo <= hi => {
                    out.extend(Relation::LETTERS.into_iter().filter(|r| lo <= *r && *r <= hi))
                }
                _ => return Err(format!("bad relation range {part:?}")),
            }
        } else {
            out.push(Relation::from_tag(part).ok_or_else(|| format!("unknown relation {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("no relations selected".into());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: String,
    pub instance: String,
    pub holds: bool,
    /// First differing coefficient when the check fails.
    pub witness: Option<String>,
    /// The exact identity compared, where it differs from the textbook form.
    pub form: Option<String>,
}

#[derive(Debug, Clone, Copy)]
enum Job {
    A(Vertex),
    B(Vertex, Vertex, bool),
    C(Vertex, Vertex, bool, bool),
    D(Vertex, Vertex),
    E(Vertex, Vertex, bool),
    F(Vertex, Vertex, bool),
    G(Vertex, Vertex),
    H(Vertex, Vertex, bool),
    A0(Vertex),
    A2(Vertex, i32),
}

const U: usize = 0;
const V: usize = 1;
const SERRE_V: usize = FORMAL - 1;

fn pm(b: bool) -> char {
    if b {
        '+'
    } else {
        '-'
    }
}

fn jobs(ctx: &Ctx, rel: Relation) -> Vec<Job> {
    let n = ctx.datum().n();
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let signs = [true, false];
    match rel {
        Relation::A => (0..n).map(Job::A).collect(),
        Relation::B => pairs.iter().flat_map(|&(j, i)| signs.map(|s| Job::B(j, i, s))).collect(),
        Relation::C => pairs
            .iter()
            .flat_map(|&(j, i)| signs.into_iter().flat_map(move |s| signs.map(|t| Job::C(j, i, s, t))))
            .collect(),
        Relation::D => pairs.iter().map(|&(i, j)| Job::D(i, j)).collect(),
        Relation::E => pairs.iter().flat_map(|&(i, j)| signs.map(|s| Job::E(i, j, s))).collect(),
        Relation::F => pairs.iter().flat_map(|&(i, j)| signs.map(|s| Job::F(i, j, s))).collect(),
        Relation::G => pairs.iter().map(|&(i, j)| Job::G(i, j)).collect(),
        Relation::H => {
            pairs.iter().filter(|(i, j)| i != j).flat_map(|&(i, j)| signs.map(|s| Job::H(i, j, s))).collect()
        }
        Relation::A0 => (0..n).map(Job::A0).collect(),
        Relation::A2 => (0..n).flat_map(|i| (-2..=2).map(move |k| Job::A2(i, k))).collect(),
    }
}

/// Check one relation family on every instance for the context.
pub fn check_relation(ctx: &Ctx, rel: Relation, caps: &Caps) -> Result<Vec<RelationReport>, GkloError> {
    check_all(ctx, &[rel], caps)
}

/// Check several relation families; instances run as independent jobs.
pub fn check_all(ctx: &Ctx, rels: &[Relation], caps: &Caps) -> Result<Vec<RelationReport>, GkloError> {
    if rels.contains(&Relation::H) {
        serre_budget(ctx)?;
    }
    let all: Vec<(Relation, Job)> = rels.iter().flat_map(|&r| jobs(ctx, r).into_iter().map(move |j| (r, j))).collect();
    par::map(&all, |&(rel, job)| run(ctx, rel, job, caps.terms)).into_iter().collect()
}

fn serre_budget(ctx: &Ctx) -> Result<(), GkloError> {
    let dt = ctx.datum();
    let worst =
        (0..dt.n()).flat_map(|i| (0..dt.n()).filter(move |&j| j != i).map(move |j| 1 - dt.c(i, j))).max().unwrap_or(0);
    if worst > 3 {
        return Err(GkloError::BudgetExceeded(format!("Serre relation of degree {worst} exceeds 3")));
    }
    if ctx.total_dim() > 3 {
        return Err(GkloError::BudgetExceeded(format!(
            "Serre relations are checked up to total dimension 3, got {}",
            ctx.total_dim()
        )));
    }
    Ok(())
}

fn report(rel: Relation, instance: String, verdict: Option<String>, form: Option<&str>) -> RelationReport {
    RelationReport {
        relation: rel.tag().into(),
        instance,
        holds: verdict.is_none(),
        witness: verdict,
        form: form.map(String::from),
    }
}

/// None when equal, otherwise a description of the first differing term.
fn compare(ctx: &Ctx, lhs: &DeltaExpr, rhs: &DeltaExpr) -> Option<String> {
    let diff = lhs.sub(rhs);
    let first = diff.terms().next().map(|(k, f)| DeltaExpr::fmt_term(ctx, k, f));
    first
}

fn compare_fn(ctx: &Ctx, what: &str, have: &RatFun, want: &RatFun) -> Option<String> {
    let d = have.sub(want);
    if d.is_zero() {
        None
    } else {
        let names = ctx.names();
        Some(format!(
            "{what}: {} differs from {} by {}",
            have.fmt_with(&names),
            want.fmt_with(&names),
            d.fmt_with(&names)
        ))
    }
}

fn x(ctx: &Ctx, i: Vertex, plus: bool, var: usize) -> DeltaExpr {
    image_a1(ctx, if plus { Generator::E(i) } else { Generator::F(i) }, var)
}

fn phi(ctx: &Ctx, i: Vertex, plus: bool) -> DeltaExpr {
    image_a1(ctx, if plus { Generator::PhiPlus(i) } else { Generator::PhiMinus(i) }, U)
}

fn binomial(a: &Mono, b: &Mono) -> RatFun {
    RatFun::from_poly(Poly::mono(a.clone()).sub(&Poly::mono(b.clone())))
}

/// (u - q v) for formal slots a, b.
fn linear(ctx: &Ctx, a: usize, qa: &Mono, b: usize, qb: &Mono) -> RatFun {
    binomial(&mono_mul(qa, &ctx.u(a, 1)), &mono_mul(qb, &ctx.u(b, 1)))
}

fn run(ctx: &Ctx, rel: Relation, job: Job, budget: usize) -> Result<RelationReport, GkloError> {
    let one = ctx.unit();
    Ok(match job {
        Job::A(i) => {
            let (verdict, form) = leading_terms(ctx, i);
            report(rel, format!("i={}", i + 1), verdict, Some(form))
        }
        Job::B(j, i, s) => {
            let p = phi(ctx, j, s);
            let psi = image_a1(ctx, Generator::Psi(i), U);
            let v = compare(ctx, &p.mul(ctx, &psi, budget)?, &psi.mul(ctx, &p, budget)?);
            report(rel, format!("φ{}_{} ψ_{}", pm(s), j + 1, i + 1), v, None)
        }
        Job::C(j, i, s, t) => {
            let p = phi(ctx, j, s);
            let cur = x(ctx, i, t, U);
            let e = if i == j {
                if s == t {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            let lhs = p.mul(ctx, &cur, budget)?;
            let rhs = cur.mul(ctx, &p, budget)?.left_fn(ctx, &RatFun::mono(ctx.zeta_i(j, e)))?;
            report(rel, format!("φ{}_{} x{}_{}", pm(s), j + 1, pm(t), i + 1), compare(ctx, &lhs, &rhs), None)
        }
        Job::D(i, j) => {
            let a = image_a1(ctx, Generator::Psi(i), U);
            let b = image_a1(ctx, Generator::Psi(j), V);
            let v = compare(ctx, &a.mul(ctx, &b, budget)?, &b.mul(ctx, &a, budget)?);
            report(rel, format!("ψ_{}(u) ψ_{}(v)", i + 1, j + 1), v, None)
        }
        Job::E(i, j, s) => {
            let qm = ctx.zeta_i(i, ctx.datum().c(i, j));
            let psi = image_a1(ctx, Generator::Psi(i), U);
            let cur = x(ctx, j, s, V);
            let (pl, pr) = (linear(ctx, U, &one, V, &qm), linear(ctx, U, &qm, V, &one));
            let (pl, pr) = if s { (pl, pr) } else { (pr, pl) };
            let lhs = psi.mul(ctx, &cur, budget)?.left_fn(ctx, &pl)?;
            let rhs = cur.mul(ctx, &psi, budget)?.left_fn(ctx, &pr)?;
            let form = if s {
                "(u - q v) ψ(u) x(v) = (q u - v) x(v) ψ(u)"
            } else {
                "(q u - v) ψ(u) x(v) = (u - q v) x(v) ψ(u)"
            };
            report(rel, format!("ψ_{}(u) x{}_{}(v)", i + 1, pm(s), j + 1), compare(ctx, &lhs, &rhs), Some(form))
        }
        Job::F(i, j, s) => {
            let qm = ctx.zeta_i(i, ctx.datum().c(i, j));
            let a = x(ctx, i, s, U);
            let b = x(ctx, j, s, V);
            let (pl, pr) = (linear(ctx, U, &one, V, &qm), linear(ctx, U, &qm, V, &one));
            let (pl, pr) = if s { (pl, pr) } else { (pr, pl) };
            let lhs = a.mul(ctx, &b, budget)?.left_fn(ctx, &pl)?;
            let rhs = b.mul(ctx, &a, budget)?.left_fn(ctx, &pr)?;
            let form = if s {
                "(u - q v) x(u) x(v) = (q u - v) x(v) x(u)"
            } else {
                "(q u - v) x(u) x(v) = (u - q v) x(v) x(u)"
            };
            report(
                rel,
                format!("x{}_{}(u) x{}_{}(v)", pm(s), i + 1, pm(s), j + 1),
                compare(ctx, &lhs, &rhs),
                Some(form),
            )
        }
        Job::G(i, j) => {
            let e = x(ctx, i, true, U);
            let f = x(ctx, j, false, V);
            let lhs = e.mul(ctx, &f, budget)?.sub(&f.mul(ctx, &e, budget)?);
            let rhs = if i == j { diagonal_side(ctx, i)? } else { DeltaExpr::zero() };
            report(rel, format!("[E_{}(u), F_{}(v)]", i + 1, j + 1), compare(ctx, &lhs, &rhs), None)
        }
        Job::H(i, j, s) => {
            let v = compare(ctx, &serre_sum(ctx, i, j, s, budget)?, &DeltaExpr::zero());
            report(rel, format!("i={} j={} x{}", i + 1, j + 1, pm(s)), v, None)
        }
        Job::A0(i) => {
            let u = ctx.formal_var(U);
            let mut verdict = None;
            for (g, p, top) in [(Generator::APlus(i), true, true), (Generator::AMinus(i), false, false)] {
                let img = image_a1(ctx, g, U);
                let (deg, c) = img.sole().expect("function").extreme(u, top).expect("nonzero");
                let want = phi(ctx, i, p).sole().expect("function").inv().expect("monomial");
                let v = if deg != 0 {
                    Some(format!("A{}_{} constant term sits at u-degree {}", pm(p), i + 1, deg / 2))
                } else {
                    compare_fn(ctx, &format!("A{}_{},0", pm(p), i + 1), &c, &want)
                };
                verdict = verdict.or(v);
            }
            report(rel, format!("i={}", i + 1), verdict, None)
        }
        Job::A2(i, n) => {
            let mut verdict = None;
            for plus in [true, false] {
                let direct = x(ctx, i, plus, U).mode(U, n);
                let rebuilt = if plus { e_mode_from_series(ctx, i, n) } else { f_mode_from_series(ctx, i, n) };
                verdict = verdict.or(compare(ctx, &rebuilt, &direct.neg()));
            }
            report(rel, format!("i={} n={n}", i + 1), verdict, Some("series rebuild = -(mode of the current)"))
        }
    })
}

/// The extreme coefficients of the ψ images against products of φ's.
fn leading_terms(ctx: &Ctx, i: Vertex) -> (Option<String>, &'static str) {
    let form = "ψ+_{i,0} = Π_j (φ+_j)^{c_ji}; ψ-_{i,m_i} = Π_j (φ-_j)^{c_ji} Π_s (-ζ_i² z_{i,s})";
    let dt = ctx.datum();
    let u = ctx.formal_var(U);
    let r = psi_rational(ctx, i, U);
    let phis = |plus: bool| {
        (0..dt.n()).fold(RatFun::one(ctx.nv()), |acc, j| {
            acc.mul(&phi(ctx, j, plus).sole().expect("function").pow(dt.c(j, i) as i32).expect("monomial"))
        })
    };
    let (hd, hc) = r.extreme(u, true).expect("nonzero");
    if hd != 0 {
        return (Some(format!("ψ+ starts at u-degree {}", hd / 2)), form);
    }
    if let Some(v) = compare_fn(ctx, "ψ+ leading coefficient", &hc, &phis(true)) {
        return (Some(v), form);
    }
    let m_i = ctx.framing()[i] as i64 - (0..dt.n()).map(|j| dt.c(j, i) * ctx.dims()[j] as i64).sum::<i64>();
    let (ld, lc) = r.extreme(u, false).expect("nonzero");
    if i64::from(ld / 2) != -m_i {
        return (Some(format!("ψ- starts at u-degree {} instead of {}", ld / 2, -m_i)), form);
    }
    let l = ctx.framing()[i];
    let zs = (0..l).fold(ctx.unit(), |m, s| mono_mul(&mono_mul(&m, &ctx.zeta_i(i, 2)), &ctx.z(i, s, 1)));
    let sign = if l % 2 == 1 { q(-1) } else { BigRational::one() };
    let want = phis(false).mul(&RatFun::mono(zs)).scale(&sign);
    (compare_fn(ctx, "ψ- trailing coefficient", &lc, &want), form)
}

/// (ζ_i - ζ_i^{-1}) δ(u/v) (ψ+ - ψ-) as a sum of double deltas at the poles.
fn diagonal_side(ctx: &Ctx, i: Vertex) -> Result<DeltaExpr, GkloError> {
    let r = psi_rational(ctx, i, U);
    let scale = binomial(&ctx.zeta_i(i, 1), &ctx.zeta_i(i, -1));
    let mut out = DeltaExpr::zero();
    for (p, res) in simple_poles(ctx, &r, ctx.formal_var(U))? {
        let mut key = Key::plain(ctx, ctx.zero_shift());
        key.pins[U] = Some(p.clone());
        key.pins[V] = Some(p);
        out.push(key, res.mul(&scale));
    }
    Ok(out)
}

/// Poles p of f in `var` with residues lim_{u→p} (1 - p/u) f(u).
pub fn simple_poles(ctx: &Ctx, f: &RatFun, var: usize) -> Result<Vec<(Mono, RatFun)>, GkloError> {
    let mut out = Vec::new();
    for (atom, &e) in f.atoms() {
        if e > 0 || !atom.involves(var) {
            continue;
        }
        let terms: Vec<_> = atom.terms().collect();
        if e < -1 || terms.len() != 2 || (terms[0].0[var] - terms[1].0[var]).abs() != 2 {
            return Err(GkloError::NonSimplePole(atom.fmt_with(&ctx.names())));
        }
        let (hi, lo) = if terms[0].0[var] > terms[1].0[var] { (terms[0], terms[1]) } else { (terms[1], terms[0]) };
        if -lo.1 / hi.1 != BigRational::one() {
            return Err(GkloError::NonSimplePole(format!(
                "pole with a scalar factor in {}",
                atom.fmt_with(&ctx.names())
            )));
        }
        let mut p: Mono = lo.0.iter().zip(hi.0).map(|(a, b)| a - b).collect();
        p[var] = 0;
        let mut pu = p.clone();
        pu[var] = -2;
        let unit = RatFun::one_minus(pu).mul(&RatFun::from_poly(atom.clone()).inv().expect("normalised atom"));
        let mut s = Subst::identity(ctx.nv());
        s.set(var, p.clone());
        let res = f.without_atom(atom).mul(&unit).subst(&s)?;
        out.push((p, res));
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// The symmetrised q-Serre combination for the ordered pair (i, j).
fn serre_sum(ctx: &Ctx, i: Vertex, j: Vertex, plus: bool, budget: usize) -> Result<DeltaExpr, GkloError> {
    let s = (1 - ctx.datum().c(i, j)) as usize;
    let xi: Vec<DeltaExpr> = (0..s).map(|k| x(ctx, i, plus, k)).collect();
    let xj = x(ctx, j, plus, SERRE_V);
    let mut total = DeltaExpr::zero();
    for perm in permutations(s) {
        for r in 0..=s {
            let mut word = DeltaExpr::function(ctx, RatFun::one(ctx.nv()));
            for (pos, &k) in perm.iter().enumerate() {
                if pos == r {
                    word = word.mul(ctx, &xj, budget)?;
                }
                word = word.mul(ctx, &xi[k], budget)?;
            }
            if r == s {
                word = word.mul(ctx, &xj, budget)?;
            }
            let mut coeff = Poly::zero();
            for (e, c) in q_binomial(s as u32, r as u32) {
                let sign = if r % 2 == 1 { -c } else { c };
                coeff = coeff.add(&Poly::term(ctx.zeta_i(i, e as i64), q(sign)));
            }
            total = total.add(&word.left_fn(ctx, &RatFun::from_poly(coeff))?);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::builtin;

    fn all_hold(reports: &[RelationReport]) {
        for r in reports {
            assert!(r.holds, "{} {}: {:?}", r.relation, r.instance, r.witness);
        }
    }

    #[test]
    fn parses_relation_lists() {
        assert_eq!(parse_relations("a-h").unwrap(), Relation::LETTERS.to_vec());
        assert_eq!(parse_relations("g,a,A0").unwrap(), vec![Relation::A, Relation::G, Relation::A0]);
        assert_eq!(parse_relations("all").unwrap().len(), 10);
        assert!(parse_relations("h-a").is_err());
        assert!(parse_relations("z").is_err());
    }

    #[test]
    fn rank_one_relations_hold() {
        let a1 = builtin("A1").unwrap();
        for a in 1..=2 {
            for l in 0..=2 {
                let ctx = Ctx::new(&a1, &[a], &[l]).unwrap();
                let rels = parse_relations("all").unwrap();
                all_hold(&check_all(&ctx, &rels, &Caps::default()).unwrap());
            }
        }
    }

    #[test]
    fn b2_relations_hold() {
        let b2 = builtin("B2").unwrap();
        let rels = parse_relations("all").unwrap();
        for l in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let ctx = Ctx::new(&b2, &[1, 1], &l).unwrap();
            let reports = check_all(&ctx, &rels, &Caps::default()).unwrap();
            assert_eq!(reports.iter().filter(|r| r.relation == "h").count(), 4);
            all_hold(&reports);
        }
    }

    #[test]
    fn simply_laced_serre_with_two_strands() {
        let ctx = Ctx::new(&builtin("A2").unwrap(), &[2, 1], &[0, 1]).unwrap();
        all_hold(&check_all(&ctx, &[Relation::F, Relation::G, Relation::H], &Caps::default()).unwrap());
    }

    #[test]
    fn poles_are_found_with_residues() {
        let ctx = Ctx::new(&builtin("A1").unwrap(), &[1], &[0]).unwrap();
        let r = psi_rational(&ctx, 0, U);
        let poles = simple_poles(&ctx, &r, ctx.formal_var(U)).unwrap();
        assert_eq!(poles.len(), 2);
    }

    #[test]
    fn a_broken_image_is_caught() {
        // drop the sign of F: the commutator no longer matches ψ+ - ψ-
        let ctx = Ctx::new(&builtin("A1").unwrap(), &[1], &[1]).unwrap();
        let e = x(&ctx, 0, true, U);
        let f = x(&ctx, 0, false, V).neg();
        let lhs = e.mul(&ctx, &f, 100).unwrap().sub(&f.mul(&ctx, &e, 100).unwrap());
        assert!(compare(&ctx, &lhs, &diagonal_side(&ctx, 0).unwrap()).is_some());
    }

    #[test]
    fn serre_budget_is_enforced() {
        let ctx = Ctx::new(&builtin("A2").unwrap(), &[2, 2], &[0, 0]).unwrap();
        assert!(matches!(check_relation(&ctx, Relation::H, &Caps::default()), Err(GkloError::BudgetExceeded(_))));
    }
}
