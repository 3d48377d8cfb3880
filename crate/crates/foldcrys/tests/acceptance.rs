//! One line per acceptance criterion, with wall-clock time. Runs without the
//! libtest harness so the lines show up in plain `cargo test` output.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use foldcrys::caps::Caps;
use foldcrys::cartan::{builtin, unfold, UnfoldedQuiver};
use foldcrys::crystal::{axiom_violation, component};
use foldcrys::gklo::{a_gamma_eta, a_gamma_eta_oracle, check_all, conforming, parse_relations, Ctx, RatFun};
use foldcrys::golden::verify_b2;
use foldcrys::lie::{tensor_decompose, weight_multiplicities, RootSystem};
use foldcrys::monomial::Monomial;
use foldcrys::par;
use foldcrys::seqcomb::{check_bijections, VertexOrder};

type Outcome = Result<String, String>;
type Arrow = ((usize, i64), (usize, i64));
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dynkin_graph(c: &[Vec<i64>]) -> UnGraph<(), ()> {
    let mut g = UnGraph::new_undirected();
    let nodes: Vec<_> = c.iter().map(|_| g.add_node(())).collect();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c[i][j] != 0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    g
}

fn arrow_set(uq: &UnfoldedQuiver) -> BTreeSet<Arrow> {
    let v = |x: usize| {
        let (i, r) = uq.vertices()[x];
        (i + 1, r)
    };
    uq.arrows().iter().map(|&(a, b)| (v(a), v(b))).collect()
}

fn unfoldings() -> Outcome {
    for (folded, simple) in [("B2", "A3"), ("B3", "A5"), ("C3", "D4"), ("F4", "E6"), ("G2", "D4")] {
        let uq = unfold(&builtin(folded).unwrap(), None).map_err(|e| e.to_string())?;
        let target = builtin(simple).unwrap();
        ensure(
            uq.cartan().iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == uq.cartan()[j][i])),
            || format!("{folded}: unfolded matrix not symmetric"),
        )?;
        ensure(is_isomorphic(&dynkin_graph(uq.cartan()), &dynkin_graph(target.matrix())), || {
            format!("{folded} does not unfold to {simple}")
        })?;
    }
    let pictures: [(&str, Vec<Arrow>); 4] = [
        ("B2", vec![((2, 2), (1, 2)), ((2, 2), (1, 4))]),
        ("C3", vec![((2, 2), (1, 1)), ((2, 2), (3, 2)), ((2, 2), (3, 4))]),
        ("F4", vec![((1, 4), (2, 2)), ((1, 2), (2, 4)), ((3, 2), (2, 2)), ((3, 2), (2, 4)), ((3, 2), (4, 1))]),
        ("G2", vec![((2, 1), (1, 2)), ((2, 1), (1, 4)), ((2, 1), (1, 6))]),
    ];
    for (name, arrows) in pictures {
        let uq = unfold(&builtin(name).unwrap(), None).unwrap();
        let want: BTreeSet<_> = arrows.into_iter().collect();
        ensure(arrow_set(&uq) == want, || format!("{name} arrows {:?}", arrow_set(&uq)))?;
    }
    Ok("B2→A3 B3→A5 C3→D4 F4→E6 G2→D4, arrows of B2 C3 F4 G2 as drawn".into())
}

fn random_even(rng: &mut ChaCha8Rng, slots: &[(usize, i64)]) -> Monomial {
    let len = rng.random_range(1..8);
    Monomial::from_triples((0..len).map(|_| {
        let (i, k) = slots[rng.random_range(0..slots.len())];
        (i, k, rng.random_range(-3..=3))
    }))
}

fn crystal_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total = 0;
    for name in ["B2", "G2", "C3"] {
        let uq = unfold(&builtin(name).unwrap(), None).unwrap();
        let slots: Vec<(usize, i64)> = (0..uq.base().n())
            .flat_map(|i| (-12..=12).map(move |k| (i, k)))
            .filter(|&(i, k)| uq.is_even(i, k))
            .collect();
        let sample: Vec<Monomial> = (0..1000).map(|_| random_even(&mut rng, &slots)).collect();
        let found = par::map(&sample, |m| axiom_violation(&uq, m).map_err(|e| e.to_string()));
        for (m, v) in sample.iter().zip(found) {
            if let Some(bad) = v? {
                return Err(format!("{name} {m}: {bad}"));
            }
        }
        total += sample.len();
    }
    Ok(format!("{total} random even monomials over B2, G2, C3"))
}

fn character_matches(uq: &UnfoldedQuiver, m: &str, size: usize) -> Result<(), String> {
    let m: Monomial = m.parse().unwrap();
    let g = component(uq, &m, 10_000).map_err(|e| e.to_string())?;
    ensure(g.len() == size, || format!("|component({m})| = {}, expected {size}", g.len()))?;
    let rs = RootSystem::new(uq.cartan().to_vec()).map_err(|e| e.to_string())?;
    let want: BTreeMap<Vec<i64>, usize> = weight_multiplicities(&rs, &m.weight(uq).unwrap())
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(w, k)| (w, k as usize))
        .collect();
    ensure(g.character(uq) == want, || format!("character of component({m}) differs"))
}

fn component_characters() -> Outcome {
    let b2 = unfold(&builtin("B2").unwrap(), None).unwrap();
    character_matches(&b2, "z[1,4]", 4)?;
    character_matches(&b2, "z[2,2]", 6)?;
    let g2 = unfold(&builtin("G2").unwrap(), None).unwrap();
    character_matches(&g2, "z[1,4]", 8)?;
    Ok("B2 z[1,4]: 4, z[2,2]: 6; G2 z[1,4]: 8 (D4 leg); characters equal".into())
}

fn golden_b2() -> Outcome {
    let reports = verify_b2(None, &Caps::default()).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(r.ok(), || format!("case {}: {:?}", r.case, r.diffs))?;
    }
    let rows: usize = reports.iter().map(|r| r.rows).sum();
    Ok(format!("cases a to e, {rows} rows"))
}

fn tensor_products() -> Outcome {
    let uq = unfold(&builtin("B2").unwrap(), None).unwrap();
    let rs = RootSystem::new(uq.cartan().to_vec()).map_err(|e| e.to_string())?;
    let delta = |i: usize, k: i64| {
        let mut w = vec![0; uq.len()];
        w[uq.vertex_of(i, k).unwrap()] = 1;
        w
    };
    let (one, two, three) = (delta(0, 4), delta(1, 2), delta(0, 2));
    let sum = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();
    let zero = vec![0; uq.len()];
    let got = tensor_decompose(&rs, &one, &three).map_err(|e| e.to_string())?;
    ensure(got == BTreeMap::from([(sum(&one, &three), 1), (zero.clone(), 1)]), || format!("δ1⊗δ3 = {got:?}"))?;
    let got = tensor_decompose(&rs, &two, &two).map_err(|e| e.to_string())?;
    let want = BTreeMap::from([(sum(&two, &two), 1), (sum(&one, &three), 1), (zero, 1)]);
    ensure(got == want, || format!("δ2⊗δ2 = {got:?}"))?;
    let dims: Vec<u64> = got.keys().map(|w| rs.weyl_dimension(w).unwrap()).collect();
    let mut sorted = dims.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    ensure(sorted == [20, 15, 1] && rs.weyl_dimension(&two).unwrap() == 6, || format!("dimensions {dims:?}"))?;
    Ok("L(δ1)⊗L(δ3) = L(δ1+δ3)⊕L(0); L(δ2)⊗L(δ2) = L(2δ2)⊕L(δ1+δ3)⊕L(0), 36 = 20+15+1".into())
}

/// Compositions of every total up to `max` over `n` parts.
fn dimension_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max - used).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Strictly increasing level lists in [lo, hi] of length at most `m`.
fn level_sets(lo: i64, hi: i64, m: usize) -> Vec<Vec<i64>> {
    fn rec(from: i64, hi: i64, m: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        if cur.len() == m {
            return;
        }
        for l in from..=hi {
            cur.push(l);
            rec(l + 1, hi, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lo, hi, m, &mut Vec::new(), &mut out);
    out
}

fn bijections() -> Outcome {
    let levels = level_sets(-3, 3, 3);
    let mut cases = Vec::new();
    for (n, keys) in [(1usize, vec![0]), (2, vec![1, 0]), (3, vec![2, 0, 1])] {
        let order = VertexOrder::from_keys(&keys);
        for alpha in dimension_vectors(n, 5) {
            cases.push((alpha, order.clone()));
        }
    }
    let results = par::map(&cases, |(alpha, order)| check_bijections(alpha, &levels, order, (-3, 3), false));
    let (mut checked, mut points) = (0, 0);
    for ((alpha, _), r) in cases.iter().zip(results) {
        for r in r.map_err(|e| e.to_string())? {
            ensure(r.ok(), || format!("α={alpha:?} levels={:?}: {r:?}", r.levels))?;
            checked += 1;
            points += r.sequences;
        }
    }
    Ok(format!("{checked} (α, levels) cases, {points} sequences, ranks 1 to 3, |α| ≤ 5, m ≤ 3"))
}

fn gklo_relations() -> Outcome {
    let letters = parse_relations("a-h,A0").unwrap();
    let mut configs = Vec::new();
    for a in 1..=2 {
        for l in 0..=2 {
            configs.push(("A1", vec![a], vec![l]));
        }
    }
    for l in [[0, 0], [1, 0], [0, 1], [1, 1]] {
        configs.push(("B2", vec![1, 1], l.to_vec()));
    }
    let mut instances = 0;
    let mut serre = 0;
    for (name, dims, framing) in &configs {
        let ctx = Ctx::new(&builtin(name).unwrap(), dims, framing).map_err(|e| e.to_string())?;
        let reports = check_all(&ctx, &letters, &Caps::default()).map_err(|e| e.to_string())?;
        for r in &reports {
            ensure(r.holds, || {
                format!("{name} a={dims:?} l={framing:?} ({}) {}: {:?}", r.relation, r.instance, r.witness)
            })?;
        }
        instances += reports.len();
        serre += reports.iter().filter(|r| r.relation == "h").count();
    }
    ensure(serre == 16, || format!("expected 16 B2 Serre instances, saw {serre}"))?;
    Ok(format!("{} configurations, {instances} instances incl. {serre} Serre and A0", configs.len()))
}

fn random_cochar(rng: &mut ChaCha8Rng, dims: &[usize]) -> Vec<Vec<i64>> {
    dims.iter().map(|&a| (0..a).map(|_| rng.random_range(-3..=3)).collect()).collect()
}

fn structure_constants() -> Outcome {
    let configs: Vec<(&str, Vec<usize>, Vec<usize>)> = vec![
        ("A1", vec![2], vec![1]),
        ("A1", vec![4], vec![2]),
        ("A2", vec![2, 1], vec![0, 1]),
        ("A3", vec![1, 2, 1], vec![1, 0, 0]),
        ("B2", vec![1, 1], vec![1, 0]),
        ("B2", vec![2, 2], vec![0, 0]),
        ("G2", vec![1, 2], vec![1, 1]),
        ("C3", vec![1, 1, 1], vec![0, 0, 1]),
        ("B3", vec![1, 2, 1], vec![0, 1, 0]),
    ];
    let ctxs: Vec<Ctx> = configs.iter().map(|(n, d, l)| Ctx::new(&builtin(n).unwrap(), d, l).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut conforming_seen = 0;
    while conforming_seen < 200 {
        let ctx = &ctxs[conforming_seen % ctxs.len()];
        let (g, e) = (random_cochar(&mut rng, ctx.dims()), random_cochar(&mut rng, ctx.dims()));
        if !conforming(ctx, &g, &e) {
            continue;
        }
        let a = a_gamma_eta(ctx, &g, &e).map_err(|x| x.to_string())?;
        ensure(a == RatFun::one(ctx.nv()), || format!("a_(γ,η) ≠ 1 for γ={g:?} η={e:?}"))?;
        conforming_seen += 1;
    }
    let mut nontrivial = 0;
    for ctx in &ctxs {
        for _ in 0..40 {
            let (g, e) = (random_cochar(&mut rng, ctx.dims()), random_cochar(&mut rng, ctx.dims()));
            let a = a_gamma_eta(ctx, &g, &e).map_err(|x| x.to_string())?;
            let b = a_gamma_eta_oracle(ctx, &g, &e).map_err(|x| x.to_string())?;
            ensure(a.sub(&b).is_zero(), || format!("oracle disagrees at γ={g:?} η={e:?}"))?;
            nontrivial += usize::from(a != RatFun::one(ctx.nv()));
        }
    }
    Ok(format!(
        "200 conforming pairs give 1; {} random pairs match the oracle ({nontrivial} nontrivial)",
        40 * ctxs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("unfoldings", unfoldings, Some(Duration::from_secs(1))),
        ("crystal axioms", crystal_axioms, Some(Duration::from_secs(10))),
        ("component characters", component_characters, None),
        ("B2 golden tables", golden_b2, Some(Duration::from_secs(60))),
        ("A3 tensor products", tensor_products, None),
        ("sequence bijections", bijections, Some(Duration::from_secs(30))),
        ("GKLO relations", gklo_relations, Some(Duration::from_secs(300))),
        ("structure constants", structure_constants, None),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > *l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS [{took:.2?}] {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL [{took:.2?}] {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
