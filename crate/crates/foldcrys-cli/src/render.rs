//! Plain-text tables and JSON documents for each subcommand.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use foldcrys::cartan::UnfoldedQuiver;
use foldcrys::coweight::EvenCoweight;
use foldcrys::crystal::{Closure, CrystalGraph, Label};
use foldcrys::gklo::RelationReport;
use foldcrys::golden::CaseReport;
use foldcrys::seqcomb::BijectionReport;

pub fn print_json(doc: &Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serialisable"));
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> =
            cells.iter().zip(&width).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    out += &line(width.iter().map(|&w| "-".repeat(w)).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}

fn ints(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn vertex(uq: &UnfoldedQuiver, x: usize) -> [i64; 2] {
    let (i, r) = uq.vertices()[x];
    [i as i64 + 1, r]
}

pub fn unfold_json(uq: &UnfoldedQuiver) -> Value {
    let base = uq.base();
    let (si, sr) = uq.seed();
    json!({
        "type": base.name(),
        "base": {
            "cartan": base.matrix(),
            "symmetrizer": base.symmetrizer(),
            "parity": (0..base.n()).map(|i| base.parity(i)).collect::<Vec<_>>(),
            "order": base.order().iter().map(|&i| i + 1).collect::<Vec<_>>(),
        },
        "seed": [si + 1, sr],
        "vertices": (0..uq.len()).map(|x| vertex(uq, x)).collect::<Vec<_>>(),
        "arrows": uq.arrows().iter().map(|&(a, b)| [vertex(uq, a), vertex(uq, b)]).collect::<Vec<_>>(),
        "cartan": uq.cartan(),
        "residues": (0..base.n())
            .map(|i| json!({ "vertex": i + 1, "period": 2 * base.d(i), "residues": uq.residues(i) }))
            .collect::<Vec<_>>(),
    })
}

pub fn unfold_table(uq: &UnfoldedQuiver) -> String {
    let base = uq.base();
    let mut s = String::new();
    if let Some(n) = base.name() {
        s += &format!("type {n}\n");
    }
    s += &format!("seed ({},{})\n", uq.seed().0 + 1, uq.seed().1);
    let names: Vec<String> = (0..uq.len()).map(|x| uq.label(x)).collect();
    s += &format!("vertices {}\n", names.join(" "));
    let arrows: Vec<String> = uq.arrows().iter().map(|&(a, b)| format!("{}->{}", names[a], names[b])).collect();
    s += &format!("arrows {}\n", if arrows.is_empty() { "none".into() } else { arrows.join(" ") });
    s += "cartan\n";
    for row in uq.cartan() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        s += &format!("  {}\n", cells.join(""));
    }
    s += "even residues\n";
    for i in 0..base.n() {
        let rs: Vec<String> = uq.residues(i).iter().map(|r| r.to_string()).collect();
        s += &format!("  vertex {} mod {}: {}\n", i + 1, 2 * base.d(i), rs.join(" "));
    }
    s
}

pub fn graph_table(uq: &UnfoldedQuiver, g: &CrystalGraph) -> String {
    let rows: Vec<Vec<String>> = g
        .nodes()
        .iter()
        .enumerate()
        .map(|(k, m)| vec![k.to_string(), m.to_string(), ints(&m.weight(uq).expect("even node"))])
        .collect();
    let mut s = table(&["node", "monomial", "weight"], &rows);
    let edges: Vec<Vec<String>> = g.edges().map(|(a, x, b)| vec![a.to_string(), uq.label(x), b.to_string()]).collect();
    s += &format!("\n{} nodes, {} edges\n", g.len(), edges.len());
    if !edges.is_empty() {
        s += &table(&["from", "f", "to"], &edges);
    }
    s
}

pub fn closure_table(uq: &UnfoldedQuiver, rho: &EvenCoweight, c: &Closure) -> String {
    let mut s = format!("rho {}  ({})\n", rho.display(uq.base()), rho.to_cli());
    s += &format!("rounds {}\n", c.rounds);
    let dom: Vec<String> = c.dominant.iter().map(|m| m.to_string()).collect();
    s += &format!("dominant {}\n", dom.join("  "));
    s += &graph_table(uq, &c.graph);
    s
}

pub fn labels_table(ls: &[Label]) -> String {
    let rows: Vec<Vec<String>> = ls
        .iter()
        .map(|l| {
            vec![
                l.node.to_string(),
                l.monomial.clone(),
                ints(&l.weight),
                l.shift.as_deref().map_or("-".into(), ints),
                l.gamma_text.clone().unwrap_or_else(|| "-".into()),
                if l.dominant { "yes".into() } else { "".into() },
            ]
        })
        .collect();
    table(&["node", "monomial", "weight", "shift", "gamma", "dominant"], &rows)
}

pub fn verify_table(reports: &[CaseReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.case.clone(),
                r.rho.clone(),
                format!("{}/{}", r.nodes, r.expected_nodes),
                r.rows.to_string(),
                r.labels_checked.to_string(),
                if r.ok() { "pass".into() } else { "FAIL".into() },
            ]
        })
        .collect();
    let mut s = table(&["case", "rho", "nodes", "rows", "labels", "result"], &rows);
    for r in reports.iter().filter(|r| !r.ok()) {
        s += &format!("\ncase {} differences:\n", r.case);
        for d in &r.diffs {
            s += &format!("  {d}\n");
        }
    }
    s
}

pub fn relations_table(reports: &[RelationReport]) -> String {
    let mut notes: BTreeMap<String, usize> = BTreeMap::new();
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let note = r.form.as_ref().map(|f| {
                let next = notes.len() + 1;
                format!("[{}]", *notes.entry(f.clone()).or_insert(next))
            });
            vec![
                r.relation.clone(),
                r.instance.clone(),
                if r.holds { "pass".into() } else { "FAIL".into() },
                note.unwrap_or_default(),
                r.witness.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut s = table(&["relation", "instance", "result", "form", "first failing coefficient"], &rows);
    let passed = reports.iter().filter(|r| r.holds).count();
    s += &format!("\n{passed}/{} instances hold\n", reports.len());
    let mut ordered: Vec<(usize, &String)> = notes.iter().map(|(f, &k)| (k, f)).collect();
    ordered.sort();
    for (k, f) in ordered {
        s += &format!("[{k}] {f}\n");
    }
    s
}

pub fn bijection_table(r: &BijectionReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "NO" };
    let alpha: Vec<i64> = r.alpha.iter().map(|&a| a as i64).collect();
    let mut s =
        format!("alpha {}  levels {}  window [{},{}]\n", ints(&alpha), ints(&r.levels), r.window[0], r.window[1]);
    s += &format!("sequences {}  J points {}\n", r.sequences, r.j_points);
    s += &format!(
        "injective {}  into J {}  round trip {}  onto {}  cyclotomic {}\n",
        yes(r.injective),
        yes(r.into_j),
        yes(r.round_trip),
        yes(r.onto),
        yes(r.cyclotomic_agrees)
    );
    s
}

pub fn dim_table(highest: &[i64], ch: &BTreeMap<Vec<i64>, u64>, weyl: u64) -> String {
    let rows: Vec<Vec<String>> = ch.iter().rev().map(|(w, m)| vec![ints(w), m.to_string()]).collect();
    let mut s = format!("L{} has dimension {} (Weyl formula {weyl})\n", ints(highest), ch.values().sum::<u64>());
    s += &table(&["weight", "multiplicity"], &rows);
    s
}

pub fn tensor_table(left: &[i64], right: &[i64], dl: u64, dr: u64, summands: &[(Vec<i64>, u64, u64)]) -> String {
    let parts: Vec<String> = summands
        .iter()
        .map(|(hw, m, _)| if *m == 1 { format!("L{}", ints(hw)) } else { format!("{m}·L{}", ints(hw)) })
        .collect();
    let dims: Vec<String> =
        summands.iter().map(|(_, m, d)| if *m == 1 { d.to_string() } else { format!("{m}·{d}") }).collect();
    format!("L{} ⊗ L{} = {}\n{dl}·{dr} = {}\n", ints(left), ints(right), parts.join(" ⊕ "), dims.join(" + "))
}
