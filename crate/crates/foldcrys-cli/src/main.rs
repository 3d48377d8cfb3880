//! `foldcrys`: unfolding reports, monomial crystals, B2 verification,
//! relation checks and the small combinatorial oracles, from the command line.

mod fail;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use foldcrys::caps::Caps;
use foldcrys::cartan::{unfold, CartanDatum, RawDatum, UnfoldedQuiver};
use foldcrys::coweight::EvenCoweight;
use foldcrys::crystal::{closure_minfty, component, labels, to_dot, to_json, Closure};
use foldcrys::gklo::{check_all, parse_relations, Ctx};
use foldcrys::golden::verify_b2;
use foldcrys::lie::{dimension, tensor_decompose, weight_multiplicities, RootSystem};
use foldcrys::monomial::Monomial;
use foldcrys::par;
use foldcrys::seqcomb::{check_bijection, VertexOrder};

use fail::Fail;

#[derive(Parser, Debug)]
#[command(name = "foldcrys", version, about = "Unfolded Cartan data, even monomial crystals and GKLO relation checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; 1 runs everything inline.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap overrides such as `nodes=5000,iterations=4`, applied after FOLDCRYS_CAPS.
    #[arg(long, global = true)]
    caps: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
struct DatumArgs {
    /// Built-in Cartan type such as B2 or G2.
    #[arg(long = "type", value_name = "TYPE")]
    type_name: Option<String>,
    /// JSON datum file {cartan, symmetrizer, parity, seed?, type?}.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct CoweightArgs {
    /// Coweight in display form, e.g. `-1,-3/2;∅`.
    #[arg(long, conflicts_with = "gamma", allow_hyphen_values = true)]
    rho: Option<String>,
    /// Coweight as doubled integers, e.g. `1:[-4,-6];2:[-4]`.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unfold a Cartan datum: vertices, arrows, unfolded Cartan matrix, even residues.
    Unfold {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// The crystal component through one even monomial.
    CrystalComponent {
        #[command(flatten)]
        datum: DatumArgs,
        /// Monomial such as `z[1,4]^2 * z[2,2]`.
        #[arg(long, required_unless_present = "triples")]
        monomial: Option<String>,
        /// Monomial as JSON [i,k,e] triples.
        #[arg(long, conflicts_with = "monomial")]
        triples: Option<String>,
    },
    /// The closure subcrystal generated from z_ρ.
    Closure {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        coweight: CoweightArgs,
    },
    /// Labels γ of every node of the closure of z_ρ.
    Labels {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        coweight: CoweightArgs,
    },
    /// Compare closures and labels against the embedded B2 tables.
    VerifyB2 {
        /// Restrict to one case tag (a to e).
        #[arg(long)]
        case: Option<String>,
    },
    /// Check the defining relations on the difference-operator images.
    CheckRelations {
        #[command(flatten)]
        datum: DatumArgs,
        /// Dimension a_i per vertex, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Framing l_i per vertex, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        framing: Vec<usize>,
        /// Relations such as `a-h`, `a,c,e`, `all`, `A0`.
        #[arg(long, default_value = "a-h")]
        relations: String,
    },
    /// Sequence combinatorics.
    Seq {
        #[command(subcommand)]
        command: SeqCommand,
    },
    /// Dimension and weight multiplicities of an irreducible module.
    Dim {
        #[command(flatten)]
        datum: DatumArgs,
        /// Use the unfolded Cartan matrix.
        #[arg(long)]
        unfolded: bool,
        /// Highest weight in fundamental-weight coordinates.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        highest: Vec<i64>,
    },
    /// Decompose a tensor product of two irreducible modules.
    Tensor {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        unfolded: bool,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        left: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        right: Vec<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum SeqCommand {
    /// Check the sequence to triple bijection for one α and level set.
    Bijection {
        /// Dimension vector α, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<u32>,
        /// Strictly increasing levels; empty for m = 0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "")]
        levels: Vec<String>,
        /// Support window lo,hi.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "-3,3")]
        window: Vec<i64>,
        /// Order keys per vertex; smaller keys come first inside a level block.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        order: Option<Vec<i64>>,
    },
}

/// Whether a completed run found what it was asked to confirm.
enum Verdict {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved here for budgets
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Mismatch) => ExitCode::from(1),
        Err(f) => {
            f.report(format == Format::Json);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<Verdict, Fail> {
    let mut caps = Caps::from_env().map_err(Fail::invalid)?;
    if let Some(text) = &cli.caps {
        caps = caps.overridden(text).map_err(Fail::invalid)?;
    }
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Fail::usage("--jobs must be positive"));
        }
        par::configure_jobs(j);
    }
    let fmt = cli.format;
    match cli.command {
        Command::Unfold { datum } => {
            let uq = load_unfolded(&datum)?;
            only(fmt, &[Format::Table, Format::Json])?;
            emit(fmt, render::unfold_json(&uq), || render::unfold_table(&uq));
            Ok(Verdict::Pass)
        }
        Command::CrystalComponent { datum, monomial, triples } => {
            let uq = load_unfolded(&datum)?;
            let m = match (monomial, triples) {
                (Some(text), _) => text.parse::<Monomial>().map_err(Fail::invalid)?,
                (None, Some(json)) => {
                    let items: Vec<[i64; 3]> = serde_json::from_str(&json).map_err(Fail::invalid)?;
                    Monomial::from_json_triples(&items).map_err(Fail::invalid)?
                }
                (None, None) => return Err(Fail::usage("need --monomial or --triples")),
            };
            let g = component(&uq, &m, caps.nodes).map_err(Fail::crystal)?;
            match fmt {
                Format::Dot => print!("{}", to_dot(&uq, &g)),
                Format::Json => render::print_json(&to_json(&uq, &g)),
                Format::Table => print!("{}", render::graph_table(&uq, &g)),
            }
            Ok(Verdict::Pass)
        }
        Command::Closure { datum, coweight } => {
            let uq = load_unfolded(&datum)?;
            let rho = load_coweight(&coweight, uq.base())?;
            let c = closure_minfty(&uq, &rho, &caps).map_err(Fail::crystal)?;
            match fmt {
                Format::Dot => print!("{}", to_dot(&uq, &c.graph)),
                Format::Json => render::print_json(&closure_json(&uq, &rho, &c)),
                Format::Table => print!("{}", render::closure_table(&uq, &rho, &c)),
            }
            Ok(Verdict::Pass)
        }
        Command::Labels { datum, coweight } => {
            let uq = load_unfolded(&datum)?;
            let rho = load_coweight(&coweight, uq.base())?;
            let c = closure_minfty(&uq, &rho, &caps).map_err(Fail::crystal)?;
            let ls = labels(&uq, &rho, &c.graph).map_err(Fail::crystal)?;
            only(fmt, &[Format::Table, Format::Json])?;
            emit(fmt, json!({ "rho": rho.display(uq.base()), "gamma": rho.to_cli(), "labels": ls }), || {
                render::labels_table(&ls)
            });
            Ok(Verdict::Pass)
        }
        Command::VerifyB2 { case } => {
            if let Some(t) = &case {
                if !["a", "b", "c", "d", "e"].contains(&t.as_str()) {
                    return Err(Fail::usage(format!("unknown case {t:?}; expected one of a to e")));
                }
            }
            only(fmt, &[Format::Table, Format::Json])?;
            let reports = verify_b2(case.as_deref(), &caps).map_err(Fail::crystal)?;
            let ok = reports.iter().all(|r| r.ok());
            emit(fmt, json!({ "passed": ok, "cases": reports }), || render::verify_table(&reports));
            Ok(if ok { Verdict::Pass } else { Verdict::Mismatch })
        }
        Command::CheckRelations { datum, dims, framing, relations } => {
            let (d, _) = load_datum(&datum)?;
            let rels = parse_relations(&relations).map_err(Fail::usage)?;
            let ctx = Ctx::new(&d, &dims, &framing).map_err(Fail::gklo)?;
            only(fmt, &[Format::Table, Format::Json])?;
            let reports = check_all(&ctx, &rels, &caps).map_err(Fail::gklo)?;
            let ok = reports.iter().all(|r| r.holds);
            emit(
                fmt,
                json!({
                    "type": d.name(),
                    "dims": dims,
                    "framing": framing,
                    "relations": rels.iter().map(|r| r.tag()).collect::<Vec<_>>(),
                    "passed": ok,
                    "reports": reports,
                }),
                || render::relations_table(&reports),
            );
            Ok(if ok { Verdict::Pass } else { Verdict::Mismatch })
        }
        Command::Seq { command: SeqCommand::Bijection { alpha, levels, window, order } } => {
            let levels = parse_levels(&levels)?;
            if window.len() != 2 || window[0] > window[1] {
                return Err(Fail::usage("--window needs lo,hi with lo <= hi"));
            }
            let order = match order {
                Some(keys) if keys.len() != alpha.len() => return Err(Fail::usage("--order needs one key per vertex")),
                Some(keys) => VertexOrder::from_keys(&keys),
                None => VertexOrder::identity(alpha.len()),
            };
            only(fmt, &[Format::Table, Format::Json])?;
            let r = check_bijection(&alpha, &levels, &order, (window[0], window[1])).map_err(Fail::seq)?;
            let ok = r.ok();
            emit(fmt, serde_json::to_value(&r).expect("serialisable"), || render::bijection_table(&r));
            Ok(if ok { Verdict::Pass } else { Verdict::Mismatch })
        }
        Command::Dim { datum, unfolded, highest } => {
            let rs = root_system(&datum, unfolded)?;
            let ch = weight_multiplicities(&rs, &highest).map_err(Fail::invalid)?;
            let weyl = rs.weyl_dimension(&highest).map_err(Fail::invalid)?;
            only(fmt, &[Format::Table, Format::Json])?;
            let weights: Vec<_> = ch.iter().map(|(w, m)| json!({ "weight": w, "multiplicity": m })).collect();
            emit(
                fmt,
                json!({ "highest": highest, "dimension": dimension(&ch), "weyl_dimension": weyl, "weights": weights }),
                || render::dim_table(&highest, &ch, weyl),
            );
            Ok(if weyl == dimension(&ch) { Verdict::Pass } else { Verdict::Mismatch })
        }
        Command::Tensor { datum, unfolded, left, right } => {
            let rs = root_system(&datum, unfolded)?;
            let parts = tensor_decompose(&rs, &left, &right).map_err(Fail::invalid)?;
            let dl = rs.weyl_dimension(&left).map_err(Fail::invalid)?;
            let dr = rs.weyl_dimension(&right).map_err(Fail::invalid)?;
            let mut summands = Vec::new();
            let mut total = 0;
            for (hw, &m) in &parts {
                let d = rs.weyl_dimension(hw).map_err(Fail::invalid)?;
                total += m * d;
                summands.push((hw.clone(), m, d));
            }
            only(fmt, &[Format::Table, Format::Json])?;
            let items: Vec<_> =
                summands.iter().map(|(hw, m, d)| json!({ "highest": hw, "multiplicity": m, "dimension": d })).collect();
            emit(
                fmt,
                json!({
                    "left": left, "right": right,
                    "left_dimension": dl, "right_dimension": dr,
                    "summands": items, "total_dimension": total,
                }),
                || render::tensor_table(&left, &right, dl, dr, &summands),
            );
            Ok(if total == dl * dr { Verdict::Pass } else { Verdict::Mismatch })
        }
    }
}

fn only(fmt: Format, allowed: &[Format]) -> Result<(), Fail> {
    if allowed.contains(&fmt) {
        Ok(())
    } else {
        Err(Fail::usage(format!("format {fmt:?} is not available for this subcommand").to_lowercase()))
    }
}

fn emit(fmt: Format, doc: serde_json::Value, table: impl FnOnce() -> String) {
    match fmt {
        Format::Json => render::print_json(&doc),
        _ => print!("{}", table()),
    }
}

fn load_datum(args: &DatumArgs) -> Result<(CartanDatum, Option<(usize, i64)>), Fail> {
    let raw = match (&args.input, &args.type_name) {
        (Some(path), t) => {
            let text = fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
            let mut raw = RawDatum::from_json(&text).map_err(Fail::cartan)?;
            if t.is_some() {
                raw.type_name = t.clone();
            }
            raw
        }
        (None, Some(t)) => RawDatum { type_name: Some(t.clone()), ..RawDatum::default() },
        (None, None) => return Err(Fail::usage("need --type or --input")),
    };
    raw.into_datum().map_err(Fail::cartan)
}

fn load_unfolded(args: &DatumArgs) -> Result<UnfoldedQuiver, Fail> {
    let (d, seed) = load_datum(args)?;
    unfold(&d, seed).map_err(Fail::cartan)
}

fn load_coweight(args: &CoweightArgs, datum: &CartanDatum) -> Result<EvenCoweight, Fail> {
    match (&args.rho, &args.gamma) {
        (Some(text), _) => EvenCoweight::parse_display(text, datum).map_err(Fail::invalid),
        (None, Some(text)) => EvenCoweight::parse_cli(text, datum.n()).map_err(Fail::invalid),
        (None, None) => Err(Fail::usage("need --rho or --gamma")),
    }
}

fn root_system(args: &DatumArgs, unfolded: bool) -> Result<RootSystem, Fail> {
    let cartan = if unfolded { load_unfolded(args)?.cartan().to_vec() } else { load_datum(args)?.0.matrix().to_vec() };
    RootSystem::new(cartan).map_err(Fail::invalid)
}

fn parse_levels(items: &[String]) -> Result<Vec<i64>, Fail> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Fail::usage(format!("bad level {s:?}"))))
        .collect()
}

fn closure_json(uq: &UnfoldedQuiver, rho: &EvenCoweight, c: &Closure) -> serde_json::Value {
    json!({
        "rho": rho.display(uq.base()),
        "gamma": rho.to_cli(),
        "rounds": c.rounds,
        "dominant": c.dominant.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "graph": to_json(uq, &c.graph),
    })
}
