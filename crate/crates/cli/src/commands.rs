use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ihall_core::hallcore::{verify_quantum_serre, HallAlgebra, HallElement};
use ihall_core::ihallalg::{IHall, IHallElement, Parity};
use ihall_core::iqgverify::{
    aux_binomial_identities, verify_drinfeld_double, verify_iserre, verify_presentation, verify_tilde_t_range,
    Style,
};
use ihall_core::quiver::{BoundQuiver, IQuiver, IQuiverSpec};
use ihall_core::reflectors::{commuting_square, reflect_iquiver, verify_inverse, Direction, Reflection};
use ihall_core::report::{Report, Status};
use ihall_core::repmod::{hom_dim, FqRep, ModCat};
use ihall_core::symfun::{
    aut_formula_check, hl_p, hl_q, ihl_q, jordan_iso_check, steinitz_product_check, Partition,
};
use serde::Serialize;

use crate::element::{hall_to_json, ihall_to_json};
use crate::error::CliError;
use crate::expr::{parse_expression, Token};

#[derive(Parser, Debug)]
#[command(name = "ihall", version, about = "Exact Hall and iHall algebra computations for quivers with involution")]
struct Cli {
    /// iquiver description (JSON)
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,

    /// Size of the finite field; must be prime
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest total dimension of the modules a command may build
    #[arg(long, global = true, default_value_t = 6)]
    max_dim: usize,

    /// Largest Hom-space dimension between two factors of a product
    #[arg(long, global = true, default_value_t = 8)]
    max_hom_dim: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply expression tokens in the iHall algebra (or the Hall algebra with --hall)
    Product {
        /// Use the twisted Hall algebra of the underlying quiver
        #[arg(long)]
        hall: bool,
        #[arg(required = true)]
        tokens: Vec<String>,
    },
    /// Run one of the verification suites
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Apply the reflection isomorphism at a sink or source orbit
    Reflect(ReflectArgs),
    /// Hall-Littlewood and iHL functions and the two isomorphism checks
    Symfun(SymfunArgs),
    /// List isoclasses up to --max-dim
    Enumerate {
        /// Enumerate modules of the iquiver algebra instead of kQ
        #[arg(long)]
        ialgebra: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Both,
}

impl ParityArg {
    fn parities(self) -> Vec<Parity> {
        match self {
            ParityArg::Even => vec![Parity::Even],
            ParityArg::Odd => vec![Parity::Odd],
            ParityArg::Both => vec![Parity::Even, Parity::Odd],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StyleArg {
    Ikm,
    Idynkin,
    DrinfeldDouble,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Quantum Serre relations in the twisted Hall algebra of a rank-two quiver
    Serre {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// The iSerre relation for a split rank-two quiver
    Iserre {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::Both)]
        parity: ParityArg,
    },
    /// Every defining relation of the presentation, evaluated in the iHall algebra
    Presentation {
        #[arg(long, value_enum, default_value_t = StyleArg::Ikm)]
        style: StyleArg,
    },
    /// The q-binomial identity behind the iSerre formula
    TildeT {
        #[arg(long, default_value_t = 4)]
        max_ab: i64,
    },
    /// The two auxiliary q-binomial identities
    AuxBinomial {
        #[arg(long, default_value_t = 8)]
        max_p: u32,
        #[arg(long, default_value_t = 6)]
        max_d: u32,
    },
    /// Drinfeld double relations through the diagonal iquiver
    DrinfeldDouble,
    /// Braid operator against the reflection isomorphism at a sink
    Square {
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, default_value_t = ParityArg::Both)]
        parity: ParityArg,
    },
}

#[derive(Args, Debug)]
struct ReflectArgs {
    #[arg(long, conflicts_with = "source", required_unless_present = "source")]
    sink: Option<String>,
    #[arg(long)]
    source: Option<String>,
    /// Product expression to push through the reflection
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
    /// Run the commuting square on every generator, and the inverse check
    #[arg(long)]
    verify_square: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SymKind {
    Hl,
    Ihl,
    JordanIso,
    Steinitz,
    Aut,
}

#[derive(Args, Debug)]
struct SymfunArgs {
    #[arg(value_enum)]
    kind: SymKind,
    /// Comma-separated parts, e.g. 2,1
    #[arg(long, default_value = "")]
    partition: String,
    /// Second partition for `steinitz`
    #[arg(long, default_value = "")]
    with: String,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok((out, ok)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn load_quiver(path: Option<&Path>) -> Result<IQuiver, CliError> {
    let path = path.ok_or_else(|| CliError::Input("this command needs --quiver".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(IQuiverSpec::from_json(&text)?)
}

fn vertex_index(iq: &IQuiver, name: &str) -> Result<usize, CliError> {
    Ok(iq.quiver.vertex_index(name)?)
}

fn dispatch(cli: &Cli) -> Result<(String, bool), CliError> {
    if !is_prime(cli.q) {
        return Err(CliError::Input(format!("q = {} is not prime", cli.q)));
    }
    if cli.max_dim == 0 || cli.max_hom_dim == 0 {
        return Err(CliError::Input("budgets must be positive".into()));
    }
    let q = cli.q;
    match &cli.command {
        Command::Product { hall, tokens } => {
            let iq = load_quiver(cli.quiver.as_deref())?;
            let toks = parse_expression(tokens)?;
            if *hall {
                let h = HallAlgebra::new(BoundQuiver::path_algebra(iq.quiver.clone()), q);
                let x = hall_product(cli, &h, &toks)?;
                let out = match cli.format {
                    Format::Text => format!("{}\n", h.render(&x)),
                    Format::Json => to_json(&hall_to_json(&h, &x)?)?,
                };
                Ok((out, true))
            } else {
                let h = IHall::new(iq, q);
                let x = ihall_product(cli, &h, &toks)?;
                Ok((render_ihall(cli.format, &h, &x)?, true))
            }
        }
        Command::Verify { which } => report_output(cli.format, verify(cli, which)?),
        Command::Reflect(args) => reflect(cli, args),
        Command::Symfun(args) => symfun(cli, args),
        Command::Enumerate { ialgebra } => enumerate(cli, *ialgebra),
    }
}

fn to_json<T: Serialize>(x: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(x)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn render_ihall(format: Format, h: &IHall, x: &IHallElement) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(format!("{}\n", h.render(x))),
        Format::Json => to_json(&ihall_to_json(h, x)?),
    }
}

fn report_output(format: Format, rep: Report) -> Result<(String, bool), CliError> {
    let ok = rep.all_ok();
    let out = match format {
        Format::Json => to_json(&rep)?,
        Format::Text => {
            let mut s = String::new();
            for c in &rep.checks {
                s.push_str(&format!("{} {} {}\n", c.status, c.id, c.detail));
            }
            let failed = rep.checks.iter().filter(|c| c.status == Status::Fail).count();
            let skipped = rep.checks.iter().filter(|c| c.status == Status::Skip).count();
            s.push_str(&format!(
                "{}: {} checks, {failed} failed, {skipped} skipped\n",
                if ok { "OK" } else { "FAIL" },
                rep.checks.len()
            ));
            s
        }
    };
    Ok((out, ok))
}

fn read_module(bq: &BoundQuiver, q: u32, path: &Path) -> Result<FqRep, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let m = FqRep::from_json(bq, q, &text)?;
    m.validate(bq)?;
    Ok(m)
}

/// Checks the dimension and Hom budgets before anything is multiplied.
fn check_budgets(cli: &Cli, bq: &BoundQuiver, modules: &[FqRep]) -> Result<(), CliError> {
    let total: usize = modules.iter().map(FqRep::total_dim).sum();
    if total > cli.max_dim {
        return Err(CliError::Capacity(format!(
            "the product has total dimension {total}, above --max-dim {}",
            cli.max_dim
        )));
    }
    for w in modules.windows(2) {
        let d = hom_dim(bq, &w[0], &w[1]);
        if d > cli.max_hom_dim {
            return Err(CliError::Capacity(format!(
                "a Hom space between factors has dimension {d}, above --max-hom-dim {}",
                cli.max_hom_dim
            )));
        }
    }
    Ok(())
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut a = vec![0; n];
    a[i] = s;
    a
}

fn ihall_factors(h: &IHall, toks: &[Token]) -> Result<Vec<(IHallElement, FqRep)>, CliError> {
    let n = h.n();
    let idx = |v: &str| vertex_index(&h.iq, v);
    toks.iter()
        .map(|t| -> Result<(IHallElement, FqRep), CliError> {
            Ok(match t {
                Token::Simple(v) => {
                    let i = idx(v)?;
                    (h.simple(i), FqRep::simple(&h.bq, h.q(), i))
                }
                Token::GenSimple(v) => {
                    let m = h.generalized_simple(idx(v)?);
                    (h.class_of(&m)?, m)
                }
                Token::Torus(v) => {
                    let i = idx(v)?;
                    (h.torus(unit(n, i, 1)), h.generalized_simple(i))
                }
                Token::TorusInv(v) => (h.torus(unit(n, idx(v)?, -1)), FqRep::zero(&h.bq, h.q())),
                Token::Module(p) => {
                    let m = read_module(&h.bq, h.q(), p)?;
                    (h.class_of(&m)?, m)
                }
            })
        })
        .collect()
}

fn ihall_product(cli: &Cli, h: &IHall, toks: &[Token]) -> Result<IHallElement, CliError> {
    let factors = ihall_factors(h, toks)?;
    let modules: Vec<FqRep> = factors.iter().map(|(_, m)| m.clone()).collect();
    check_budgets(cli, &h.bq, &modules)?;
    let mut x = h.one();
    for (f, _) in &factors {
        x = h.mul(&x, f)?;
    }
    Ok(x)
}

fn hall_product(cli: &Cli, h: &HallAlgebra, toks: &[Token]) -> Result<HallElement, CliError> {
    let bq = &h.cat.bq;
    let mut factors = Vec::new();
    for t in toks {
        let m = match t {
            Token::Simple(v) => h.cat.simple(bq.qbar.vertex_index(v)?),
            Token::Module(p) => read_module(bq, h.q(), p)?,
            other => {
                return Err(CliError::Input(format!(
                    "{other:?} only exists in the iHall algebra; drop --hall"
                )))
            }
        };
        factors.push(m);
    }
    check_budgets(cli, bq, &factors)?;
    let mut x = h.one();
    for m in &factors {
        let b = HallElement::basis(h.cat.identify(m)?, h.q());
        x = h.mul(&x, &b)?;
    }
    Ok(x)
}

fn verify(cli: &Cli, which: &Verify) -> Result<Report, CliError> {
    let q = cli.q;
    Ok(match which {
        Verify::Serre { a, b } => {
            if a + b > cli.max_dim {
                return Err(CliError::Capacity(format!("a + b = {} above --max-dim", a + b)));
            }
            verify_quantum_serre(*a, *b, q)?
        }
        Verify::Iserre { a, b, parity } => {
            let mut rep = Report::new();
            for p in parity.parities() {
                rep.extend(verify_iserre(*a, *b, q, p)?);
            }
            rep
        }
        Verify::Presentation { style } => {
            let iq = load_quiver(cli.quiver.as_deref())?;
            let st = match style {
                StyleArg::Ikm => Style::Ikm,
                StyleArg::Idynkin => Style::IDynkin,
                StyleArg::DrinfeldDouble => Style::DrinfeldDoubleSerre,
            };
            verify_presentation(&iq, q, st)?
        }
        Verify::TildeT { max_ab } => verify_tilde_t_range(*max_ab),
        Verify::AuxBinomial { max_p, max_d } => aux_binomial_identities(*max_p, *max_d),
        Verify::DrinfeldDouble => {
            let iq = load_quiver(cli.quiver.as_deref())?;
            verify_drinfeld_double(&iq.quiver, q)?
        }
        Verify::Square { vertex, parity } => {
            let iq = load_quiver(cli.quiver.as_deref())?;
            let l = vertex_index(&iq, vertex)?;
            let r = Reflection::new(iq, l, q, Direction::Sink)?;
            let mut rep = Report::new();
            for p in parity.parities() {
                rep.extend(commuting_square(&r, p)?);
            }
            rep
        }
    })
}

fn describe_iquiver(iq: &IQuiver) -> String {
    let qv = &iq.quiver;
    let arrows: Vec<String> = qv
        .arrows
        .iter()
        .map(|a| format!("{}: {} -> {}", a.label, qv.vertices[a.source], qv.vertices[a.target]))
        .collect();
    let tau: Vec<String> = (0..iq.n())
        .filter(|&i| iq.tau[i] != i)
        .map(|i| format!("{} <-> {}", qv.vertices[i], qv.vertices[iq.tau[i]]))
        .collect();
    format!(
        "vertices: {}\narrows: {}\ntau: {}\n",
        qv.vertices.join(" "),
        if arrows.is_empty() { "none".into() } else { arrows.join(", ") },
        if tau.is_empty() { "identity".into() } else { tau.join(", ") }
    )
}

fn reflect(cli: &Cli, args: &ReflectArgs) -> Result<(String, bool), CliError> {
    let iq = load_quiver(cli.quiver.as_deref())?;
    let (name, dir) = match (&args.sink, &args.source) {
        (Some(v), None) => (v, Direction::Sink),
        (None, Some(v)) => (v, Direction::Source),
        _ => return Err(CliError::Input("give exactly one of --sink and --source".into())),
    };
    let l = vertex_index(&iq, name)?;
    let r = Reflection::new(iq.clone(), l, cli.q, dir)?;
    let mut out = String::new();
    let mut ok = true;
    if args.expr.is_none() && !args.verify_square {
        out.push_str(&describe_iquiver(&reflect_iquiver(&iq, l)?));
    }
    if let Some(e) = &args.expr {
        let toks = parse_expression(&[e.as_str()])?;
        let x = ihall_product(cli, &r.src, &toks)?;
        let y = r.gamma(&x)?;
        out.push_str(&render_ihall(cli.format, &r.dst, &y)?);
    }
    if args.verify_square {
        if dir != Direction::Sink {
            return Err(CliError::Input("--verify-square runs at a sink".into()));
        }
        let mut rep = Report::new();
        for p in [Parity::Even, Parity::Odd] {
            rep.extend(commuting_square(&r, p)?);
        }
        rep.extend(verify_inverse(&r)?);
        let (s, pass) = report_output(cli.format, rep)?;
        out.push_str(&s);
        ok &= pass;
    }
    Ok((out, ok))
}

#[derive(Serialize)]
struct SymOut {
    name: String,
    value: String,
}

fn symfun(cli: &Cli, args: &SymfunArgs) -> Result<(String, bool), CliError> {
    let lambda = Partition::parse(&args.partition)?;
    let q = cli.q;
    let values = |items: Vec<(String, String)>| -> Result<(String, bool), CliError> {
        let out = match cli.format {
            Format::Text => items.iter().map(|(n, v)| format!("{n} = {v}\n")).collect(),
            Format::Json => to_json(
                &items
                    .into_iter()
                    .map(|(name, value)| SymOut { name, value })
                    .collect::<Vec<_>>(),
            )?,
        };
        Ok((out, true))
    };
    match args.kind {
        SymKind::Hl => values(vec![
            (format!("Q{lambda}"), hl_q(&lambda).to_string()),
            (format!("P{lambda}"), hl_p(&lambda).to_string()),
        ]),
        SymKind::Ihl => values(vec![(format!("Qi{lambda}"), ihl_q(&lambda.as_i64()).to_string())]),
        SymKind::JordanIso => {
            if lambda.size() as usize > cli.max_dim {
                return Err(CliError::Capacity(format!("|lambda| = {} above --max-dim", lambda.size())));
            }
            report_output(cli.format, jordan_iso_check(&lambda, q)?)
        }
        SymKind::Aut => report_output(cli.format, aut_formula_check(&lambda, q)?),
        SymKind::Steinitz => {
            let nu = Partition::parse(&args.with)?;
            report_output(
                cli.format,
                steinitz_product_check(&lambda, &nu, q, cli.max_dim as u32)?,
            )
        }
    }
}

#[derive(Serialize)]
struct ClassOut {
    id: usize,
    dims: Vec<usize>,
    label: String,
    aut: String,
}

fn enumerate(cli: &Cli, ialgebra: bool) -> Result<(String, bool), CliError> {
    let iq = load_quiver(cli.quiver.as_deref())?;
    let bq = if ialgebra {
        ihall_core::quiver::bound_quiver(&iq)
    } else {
        BoundQuiver::path_algebra(iq.quiver.clone())
    };
    let cat = ModCat::new(bq, cli.q);
    let mut rows = Vec::new();
    for id in cat.enumerate_isoclasses(cli.max_dim)? {
        let cls = cat.class(id);
        rows.push(ClassOut {
            id,
            dims: cls.dims().to_vec(),
            label: cls.label.clone(),
            aut: cat.aut_count(id)?.to_string(),
        });
    }
    let out = match cli.format {
        Format::Json => to_json(&rows)?,
        Format::Text => {
            let mut s: String = rows
                .iter()
                .map(|r| format!("{:>4}  {:?}  {}  |Aut| = {}\n", r.id, r.dims, r.label, r.aut))
                .collect();
            s.push_str(&format!("{} isoclasses\n", rows.len()));
            s
        }
    };
    Ok((out, true))
}
