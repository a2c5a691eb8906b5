mod relation;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use qcf_core::axioms::{gen_domain_adapter, gen_sa, gen_sk, AxiomError, AxiomSet, Fragment, FragmentError};
use qcf_core::finder::{find_weak_model, FinderError, SearchConfig, SearchResult};
use qcf_core::formula::{print_formula, qcf_templates, translate_to_fo, SignatureError, Theory, TheoryError};
use qcf_core::order::{
    check_conditions34, check_connection, cofinality, connected_decision, LazyRelation, OrderError, OrderExpr,
};
use qcf_core::weak::{eval_c_finite, eval_weak, Assignment, CofinalitySpec, EvalError, StructureError, WeakStructure};
use thiserror::Error;

use relation::RelationSpec;

#[derive(Parser, Debug)]
#[command(name = "qcf", version, about = "First-order logic with the cofinality quantifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the sentences of a theory file in canonical form.
    Parse {
        #[arg(long, value_name = "FILE")]
        theory: PathBuf,
    },
    /// Replace every Qcf node by the atom of its template.
    Translate {
        #[arg(long, value_name = "FILE")]
        theory: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Emit axiom instances over a fragment, each preceded by its tag.
    #[command(group(ArgGroup::new("schema").args(["sa", "sk", "adapter"]).required(true).multiple(true)))]
    Axioms {
        #[arg(long, value_name = "FILE")]
        frag: PathBuf,
        /// Order and no-connection axioms.
        #[arg(long)]
        sa: bool,
        /// Connection axioms with fresh symbols V_i.
        #[arg(long)]
        sk: bool,
        /// Domain adapter with fresh symbols O_i and H_i.
        #[arg(long)]
        adapter: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Evaluate every sentence of a theory in a finite structure.
    #[command(group(ArgGroup::new("semantics").args(["weak", "cfinite"]).required(true)))]
    Eval {
        #[arg(long, value_name = "FILE")]
        theory: PathBuf,
        #[arg(long, value_name = "FILE")]
        structure: PathBuf,
        /// Read Qcf through the structure's tables.
        #[arg(long)]
        weak: bool,
        /// Read Qcf with the cofinality class given by --cof.
        #[arg(long, requires = "cof")]
        cfinite: bool,
        /// `omega`, `omega,aleph1` or `all-except:omega`.
        #[arg(long, value_name = "SPEC", value_parser = parse_cof, conflicts_with = "weak")]
        cof: Option<CofinalitySpec>,
    },
    /// Search for a finite weak model of the theory plus its order axioms.
    FindModel {
        #[arg(long, value_name = "FILE")]
        theory: PathBuf,
        #[arg(long, value_name = "FILE")]
        frag: PathBuf,
        #[arg(long, value_name = "N")]
        max_size: usize,
        /// Decision budget shared by all sizes.
        #[arg(long, value_name = "N", default_value_t = SearchConfig::default().node_budget)]
        budget: u64,
    },
    /// Cofinality of an order expression.
    OrderCf {
        #[arg(long, value_name = "EXPR", value_parser = parse_order)]
        x: OrderExpr,
    },
    /// Decide whether two orders are connected.
    OrderConnect {
        #[arg(long, value_name = "EXPR", value_parser = parse_order)]
        x: OrderExpr,
        #[arg(long, value_name = "EXPR", value_parser = parse_order)]
        y: OrderExpr,
        /// Check the sparse construction instead of the full one.
        #[arg(long, requires = "check")]
        sparse: bool,
        /// Check the connection properties of the construction up to BOUND.
        #[arg(long, value_name = "BOUND")]
        check: Option<usize>,
    },
    /// Check the connection properties and the monotonicity conditions of a named relation.
    OrderCheck {
        #[arg(long, value_name = "EXPR", value_parser = parse_order)]
        x: OrderExpr,
        #[arg(long, value_name = "EXPR", value_parser = parse_order)]
        y: OrderExpr,
        #[arg(long, value_name = "NAME", value_parser = RelationSpec::parse, long_help = relation::NAMES)]
        relation: RelationSpec,
        #[arg(long, value_name = "N")]
        bound: usize,
    },
}

fn parse_order(text: &str) -> Result<OrderExpr, String> {
    OrderExpr::parse(text).map_err(|e| e.to_string())
}

fn parse_cof(text: &str) -> Result<CofinalitySpec, String> {
    CofinalitySpec::parse(text).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Theory { path: PathBuf, source: TheoryError },
    #[error("{path}: {source}")]
    Fragment { path: PathBuf, source: FragmentError },
    #[error("{path}: {source}")]
    Structure { path: PathBuf, source: StructureError },
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Finder(#[from] FinderError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_theory(path: &Path) -> Result<Theory, CliError> {
    let name = path.file_stem().map_or_else(|| "theory".into(), |s| s.to_string_lossy().into_owned());
    Theory::parse(name, &read(path)?).map_err(|source| CliError::Theory { path: path.to_owned(), source })
}

fn load_fragment(path: &Path) -> Result<Fragment, CliError> {
    Fragment::parse(&read(path)?).map_err(|source| CliError::Fragment { path: path.to_owned(), source })
}

fn load_structure(path: &Path) -> Result<WeakStructure, CliError> {
    WeakStructure::from_json(&read(path)?).map_err(|source| CliError::Structure { path: path.to_owned(), source })
}

fn translate(t: &Theory) -> String {
    let mut out = String::new();
    let mut keys = Vec::new();
    for s in &t.sentences {
        out.push_str(&print_formula(&translate_to_fo(s)));
        out.push('\n');
        for tpl in qcf_templates(s) {
            if !keys.iter().any(|(k, _)| k == tpl.key()) {
                keys.push((tpl.key().to_string(), tpl.arity()));
            }
        }
    }
    for (key, arity) in keys {
        out.push_str(&format!("# template/{arity}: {key}\n"));
    }
    out
}

fn axioms(frag: &Fragment, sa: bool, sk: bool, adapter: bool) -> Result<String, CliError> {
    let mut sig = frag.signature.clone();
    let mut set = AxiomSet::default();
    if sa {
        set.extend(gen_sa(frag));
    }
    type Gen = fn(&Fragment, &qcf_core::formula::Signature) -> Result<(qcf_core::formula::Signature, AxiomSet), AxiomError>;
    for (on, gen) in [(sk, gen_sk as Gen), (adapter, gen_domain_adapter as Gen)] {
        if on {
            let (ext, more) = gen(frag, &sig)?;
            sig.extend(&ext)?;
            set.extend(more);
        }
    }
    Ok(set.to_text(&sig))
}

fn eval(t: &Theory, m: &WeakStructure, cof: Option<&CofinalitySpec>) -> Result<String, CliError> {
    let a = Assignment::new();
    let mut out = String::new();
    let mut falsified = 0;
    for s in &t.sentences {
        let v = match cof {
            Some(c) => eval_c_finite(m, s, &a, c)?,
            None => eval_weak(m, s, &a)?,
        };
        falsified += usize::from(!v);
        out.push_str(&format!("{} {}\n", if v { "TRUE " } else { "FALSE" }, print_formula(s)));
    }
    let n = t.sentences.len();
    if falsified == 0 {
        out.push_str(&format!("SATISFIED {n}/{n}\n"));
    } else {
        out.push_str(&format!("FALSIFIED {falsified}/{n}\n"));
    }
    Ok(out)
}

fn find_model(t: &Theory, frag: &Fragment, max_size: usize, budget: u64) -> Result<String, CliError> {
    let cfg = SearchConfig { max_size, node_budget: budget, ..SearchConfig::default() };
    let result = find_weak_model(t, frag, &cfg)?;
    let mut out = format!("{result}\n");
    if let SearchResult::Found { model, .. } = &result {
        out.push_str(&model.to_json());
        out.push('\n');
    }
    Ok(out)
}

fn verdict_lines(g: &LazyRelation, bound: usize, with34: bool) -> Result<String, CliError> {
    let (x, y) = (g.x_order(), g.y_order());
    let (one, two) = check_connection(g, x, y, bound)?;
    let mut out = format!("(1) {one}\n(2) {two}\n");
    if with34 {
        let (three, four) = check_conditions34(g, x, y, bound)?;
        out.push_str(&format!("(3) {three}\n(4) {four}\n"));
    }
    Ok(out)
}

fn run(cmd: Command) -> Result<(String, Option<PathBuf>), CliError> {
    Ok(match cmd {
        Command::Parse { theory } => (load_theory(&theory)?.to_text(), None),
        Command::Translate { theory, out } => (translate(&load_theory(&theory)?), out),
        Command::Axioms { frag, sa, sk, adapter, out } => (axioms(&load_fragment(&frag)?, sa, sk, adapter)?, out),
        Command::Eval { theory, structure, cof, .. } => {
            if let Some(c) = &cof {
                for w in c.warnings() {
                    eprintln!("warning: {w}");
                }
            }
            (eval(&load_theory(&theory)?, &load_structure(&structure)?, cof.as_ref())?, None)
        }
        Command::FindModel { theory, frag, max_size, budget } => {
            (find_model(&load_theory(&theory)?, &load_fragment(&frag)?, max_size, budget)?, None)
        }
        Command::OrderCf { x } => (format!("{}\n", cofinality(&x)), None),
        Command::OrderConnect { x, y, sparse, check } => {
            let connected = connected_decision(&x, &y)?;
            let mut out = format!("cf(x) = {}\ncf(y) = {}\nconnected: {connected}\n", cofinality(&x), cofinality(&y));
            if let Some(bound) = check {
                let (nx, ny) = (x.normalize(), y.normalize());
                let g = if sparse { LazyRelation::sparse(&nx, &ny)? } else { LazyRelation::connection(&nx, &ny)? };
                out.push_str(&format!("relation: {}\n", g.describe()));
                out.push_str(&verdict_lines(&g, bound, false)?);
            }
            (out, None)
        }
        Command::OrderCheck { x, y, relation, bound } => {
            let g = relation.build(&x.normalize(), &y.normalize(), bound)?;
            (format!("relation: {}\n{}", g.describe(), verdict_lines(&g, bound, true)?), None)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, out) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &out {
        Some(path) => fs::write(path, &text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
