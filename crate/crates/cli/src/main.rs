//! `confmat`: exact computations and identity checks for configuration
//! polynomials, forms, and their Jacobian/minor ideals.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 resource cap hit.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confmat::{checks, env_field, exit_code_for, parse_input, CheckContext, Input};
use confmat_core::catalog;
use confmat_core::config::Realization;
use confmat_core::families::{generic_uniform, graph_configuration, wheel_whirl_realization, Graph};
use confmat_core::groebner::{GbOptions, Ideal};
use confmat_core::io;
use confmat_core::matroid::mask_elements;
use confmat_core::poly::{MonomialOrder, MultiPoly};
use confmat_core::{Error, FieldSpec, Result};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "confmat",
    version,
    about = "Configuration polynomials, forms, and ideals of matroid realizations"
)]
struct Cli {
    /// Coefficient field: Q or Fp:<prime> (overrides CONFMAT_FIELD and file fields).
    #[arg(long, global = true)]
    field: Option<String>,

    /// Budget on Gröbner S-pair reductions.
    #[arg(long, global = true, default_value_t = 200_000)]
    max_pairs: usize,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Configuration polynomial ψ_W of a realization (Kirchhoff polynomial for graphs).
    Poly(InputArgs),
    /// Configuration form Q_W as a symmetric matrix of polynomials, with determinant.
    Form(InputArgs),
    /// Generators of the Jacobian or submaximal-minor ideal.
    Ideal(IdealArgs),
    /// Matroid of a realization: bases, circuits, connectivity, handles.
    Matroid(InputArgs),
    /// Reduced Gröbner basis of the selected ideal.
    Gb(IdealArgs),
    /// Normal form of a polynomial modulo the selected ideal.
    Nf(PolyArgs),
    /// Krull dimension and codimension of the selected ideal.
    Dim(IdealArgs),
    /// Ideal quotient (colon ideal) by a polynomial.
    Quotient(PolyArgs),
    /// Saturation by a polynomial, with the stabilization step count.
    Saturate(PolyArgs),
    /// Built-in instance generators.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run named identity checks.
    Check(CheckArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance JSON file; "-" reads standard input.
    #[arg(long, conflicts_with = "instance")]
    file: Option<String>,

    /// Built-in catalog instance name (see `check --list` for instance-bearing checks).
    #[arg(long)]
    instance: Option<String>,
}

#[derive(Args)]
struct IdealArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Which ideal of a realization input (ignored when the input is already an ideal).
    #[arg(long, value_enum)]
    ideal: Option<IdealKind>,
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    ideal_args: IdealArgs,

    /// A polynomial in the input's variables, e.g. "x1*x2 - 3*x3^2".
    #[arg(long)]
    poly: String,
}

#[derive(Copy, Clone, ValueEnum)]
enum IdealKind {
    /// ⟨ψ, ∂ψ/∂x_1, …, ∂ψ/∂x_n⟩.
    Jacobian,
    /// Submaximal minors of the configuration form.
    Minors,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Wheel realization (t = 1), rows w¹ = s1+r1−t·rn, wⁱ = si+ri−r(i−1).
    Wheel {
        #[arg(long)]
        n: usize,
        /// Wheel parameter; must be 1.
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Whirl realization (t ∉ {0,1}), same row pattern.
    Whirl {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2")]
        t: String,
    },
    /// The rank-4 prism realization on six elements.
    Prism,
    /// Seeded generic realization of the uniform matroid U(r,n).
    Uniform {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Configuration realization of a graph JSON file.
    Graph {
        #[arg(long)]
        file: String,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Check name; omit with --all to run everything.
    name: Option<String>,

    /// Run every named check, ordered by name.
    #[arg(long, conflicts_with = "name")]
    all: bool,

    /// List the available check names and references.
    #[arg(long, conflicts_with_all = ["name", "all"])]
    list: bool,

    #[command(flatten)]
    input: InputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let field = match &cli.field {
        Some(s) => Some(FieldSpec::parse(s)?),
        None => env_field()?,
    };
    let gb = GbOptions::with_max_pairs(cli.max_pairs);
    let text = cli.text;
    match cli.command {
        Command::Poly(input) => {
            let (_, w, _) = load_realization(&input, field)?;
            let psi = w.config_poly()?;
            emit(
                text,
                json!({
                    "field": io::field_to_json(w.field()),
                    "variables": w.vars().labels(),
                    "polynomial": psi.to_string(),
                }),
                psi.to_string(),
            );
            Ok(0)
        }
        Command::Form(input) => {
            let (_, w, _) = load_realization(&input, field)?;
            let q = w.q_form();
            let det = w.det_form()?;
            let rows: Vec<Vec<String>> = q
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect())
                .collect();
            let mut lines: Vec<String> = rows.iter().map(|r| r.join(", ")).collect();
            lines.push(format!("det = {det}"));
            emit(
                text,
                json!({
                    "field": io::field_to_json(w.field()),
                    "variables": w.vars().labels(),
                    "matrix": rows,
                    "determinant": det.to_string(),
                }),
                lines.join("\n"),
            );
            Ok(0)
        }
        Command::Ideal(args) => {
            let ideal = load_ideal(&args, field)?;
            emit_ideal(text, &ideal, &[]);
            Ok(0)
        }
        Command::Matroid(input) => {
            let (_, w, _) = load_realization(&input, field)?;
            emit_matroid(text, &w);
            Ok(0)
        }
        Command::Gb(args) => {
            let ideal = load_ideal(&args, field)?;
            let basis = ideal.groebner_basis(&MonomialOrder::DegRevLex, &gb)?;
            let strings: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
            emit(
                text,
                json!({
                    "field": io::field_to_json(ideal.field()),
                    "variables": ideal.vars().labels(),
                    "order": "degrevlex",
                    "basis": strings,
                }),
                strings.join("\n"),
            );
            Ok(0)
        }
        Command::Nf(args) => {
            let ideal = load_ideal(&args.ideal_args, field)?;
            let f = MultiPoly::parse(ideal.field(), ideal.vars(), &args.poly)?;
            let nf = ideal.normal_form(&f, &MonomialOrder::DegRevLex, &gb)?;
            emit(
                text,
                json!({
                    "normal_form": nf.to_string(),
                    "member": nf.is_zero(),
                }),
                nf.to_string(),
            );
            Ok(0)
        }
        Command::Dim(args) => {
            let ideal = load_ideal(&args, field)?;
            let dimension = ideal.krull_dimension(&gb)?;
            let codimension = ideal.codimension(&gb)?;
            emit(
                text,
                json!({
                    "dimension": dimension,
                    "codimension": codimension,
                }),
                match codimension {
                    Some(c) => format!("dimension {dimension}, codimension {c}"),
                    None => format!("dimension {dimension} (empty vanishing locus)"),
                },
            );
            Ok(0)
        }
        Command::Quotient(args) => {
            let ideal = load_ideal(&args.ideal_args, field)?;
            let f = MultiPoly::parse(ideal.field(), ideal.vars(), &args.poly)?;
            let colon = ideal.quotient(&f, &gb)?;
            emit_ideal(text, &colon, &[]);
            Ok(0)
        }
        Command::Saturate(args) => {
            let ideal = load_ideal(&args.ideal_args, field)?;
            let f = MultiPoly::parse(ideal.field(), ideal.vars(), &args.poly)?;
            let (saturated, steps) = ideal.saturate(&f, &gb)?;
            emit_ideal(text, &saturated, &[("steps", json!(steps))]);
            Ok(0)
        }
        Command::Gen { what } => {
            gen_instance(what, field, text)?;
            Ok(0)
        }
        Command::Check(args) => run_checks(args, field, gb, text),
    }
}

/// Reads a file argument, with "-" meaning standard input.
fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))
    }
}

/// Resolves `--file`/`--instance` to a realization; graph inputs are
/// converted to their graph configuration and also returned as graphs.
fn load_realization(
    args: &InputArgs,
    field: Option<FieldSpec>,
) -> Result<(String, Realization, Option<Graph>)> {
    match (&args.file, &args.instance) {
        (Some(path), None) => {
            let name = if path == "-" { "stdin".to_string() } else { path.clone() };
            match parse_input(&read_source(path)?, field)? {
                Input::Realization(w) => Ok((name, w, None)),
                Input::Graph(g) => {
                    let w = graph_configuration(field.unwrap_or(FieldSpec::Q), &g)?;
                    Ok((name, w, Some(g)))
                }
                Input::Ideal(_) => Err(Error::BadParameter(
                    "this command needs a realization or graph, not an ideal".into(),
                )),
            }
        }
        (None, Some(name)) => {
            let w = match field {
                Some(f) => catalog::build_over(name, f)?,
                None => catalog::build(name)?,
            };
            Ok((name.clone(), w, None))
        }
        (None, None) => Err(Error::BadParameter("provide --file or --instance".into())),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

/// Resolves the ideal a Gröbner-flavored command operates on: either an
/// ideal file as-is, or the selected ideal of a realization input.
fn load_ideal(args: &IdealArgs, field: Option<FieldSpec>) -> Result<Ideal> {
    if let Some(path) = &args.input.file {
        if let Input::Ideal(ideal) = parse_input(&read_source(path)?, field)? {
            if args.ideal.is_some() {
                return Err(Error::BadParameter(
                    "--ideal does not apply when the input is already an ideal".into(),
                ));
            }
            return Ok(ideal);
        }
    }
    let (_, w, _) = load_realization(&args.input, field)?;
    match args.ideal.unwrap_or(IdealKind::Jacobian) {
        IdealKind::Jacobian => w.jacobian_ideal(),
        IdealKind::Minors => w.minors_ideal(),
    }
}

fn emit(text: bool, payload: Value, human: String) {
    use std::io::Write as _;
    let line = if text {
        human
    } else {
        serde_json::to_string_pretty(&payload).expect("serializable")
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{line}").and_then(|()| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // Downstream closed the pipe; there is nothing left to say.
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

fn emit_ideal(text: bool, ideal: &Ideal, extra: &[(&str, Value)]) {
    let mut payload = io::ideal_to_json(ideal);
    for (k, v) in extra {
        payload[*k] = v.clone();
    }
    let human = ideal
        .generators()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    emit(text, payload, human);
}

fn emit_matroid(text: bool, w: &Realization) {
    let m = w.matroid();
    let labels = w.vars().labels();
    let of_mask = |mask: u32| -> Vec<String> {
        mask_elements(mask).into_iter().map(|e| labels[e].clone()).collect()
    };
    let list = |masks: &[u32]| -> Vec<Vec<String>> { masks.iter().map(|&s| of_mask(s)).collect() };
    let connectivity = match m.tutte_connectivity() {
        Some(k) => json!(k),
        None => json!("infinite"),
    };
    let decomposition = match m.handle_decomposition() {
        Ok(blocks) => json!(list(&blocks)),
        Err(_) => Value::Null,
    };
    let payload = json!({
        "rank": w.rank(),
        "bases": list(m.bases()),
        "circuits": list(m.circuits()),
        "components": list(&m.components()),
        "connectivity": connectivity,
        "handle_partition": list(&m.handle_partition()),
        "decomposition": decomposition,
    });
    let human = format!(
        "rank {} on {{{}}}\nbases: {}\ncircuits: {}\ncomponents: {}\nconnectivity: {}\nhandles: {}\ndecomposition: {}",
        w.rank(),
        labels.join(", "),
        join_sets(&list(m.bases())),
        join_sets(&list(m.circuits())),
        join_sets(&list(&m.components())),
        match m.tutte_connectivity() {
            Some(k) => k.to_string(),
            None => "infinite".to_string(),
        },
        join_sets(&list(&m.handle_partition())),
        match m.handle_decomposition() {
            Ok(blocks) => join_sets(&list(&blocks)),
            Err(_) => "undefined".to_string(),
        },
    );
    emit(text, payload, human);
}

fn join_sets(sets: &[Vec<String>]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn gen_instance(what: GenCommand, field: Option<FieldSpec>, text: bool) -> Result<()> {
    let f = field.unwrap_or(FieldSpec::Q);
    let (payload, w) = match what {
        GenCommand::Wheel { n, t } => {
            let t = io::scalar_from_str(f, &t)?;
            if !t.is_one() {
                return Err(Error::BadParameter(
                    "a wheel has t = 1; use `gen whirl` for other parameters".into(),
                ));
            }
            let w = wheel_whirl_realization(f, n, &t)?;
            (io::realization_to_json(&w), w)
        }
        GenCommand::Whirl { n, t } => {
            let t = io::scalar_from_str(f, &t)?;
            if t.is_one() || t.is_zero() {
                return Err(Error::BadParameter("a whirl needs t outside {0, 1}".into()));
            }
            let w = wheel_whirl_realization(f, n, &t)?;
            (io::realization_to_json(&w), w)
        }
        GenCommand::Prism => {
            let w = match field {
                Some(f) => catalog::build_over("prism", f)?,
                None => catalog::build("prism")?,
            };
            (io::realization_to_json(&w), w)
        }
        GenCommand::Uniform { r, n, seed } => {
            let w = generic_uniform(f, r, n, seed)?;
            let mut v = io::realization_to_json(&w);
            v["seed"] = json!(seed);
            (v, w)
        }
        GenCommand::Graph { file } => {
            let g = io::graph_from_json(
                &serde_json::from_str(&read_source(&file)?)
                    .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?,
            )?;
            let w = graph_configuration(f, &g)?;
            (io::realization_to_json(&w), w)
        }
    };
    let human = format!(
        "{} over {}, rank {}, elements {}",
        "realization",
        w.field(),
        w.rank(),
        w.vars().labels().join(" ")
    );
    emit(text, payload, human);
    Ok(())
}

fn run_checks(args: CheckArgs, field: Option<FieldSpec>, gb: GbOptions, text: bool) -> Result<u8> {
    if args.list {
        let listing: Vec<Value> = checks::CHECK_NAMES
            .iter()
            .map(|&n| json!({ "check": n, "reference": checks::reference(n).unwrap() }))
            .collect();
        let human = checks::CHECK_NAMES
            .iter()
            .map(|&n| format!("{:<24} {}", n, checks::reference(n).unwrap()))
            .collect::<Vec<_>>()
            .join("\n");
        emit(text, json!(listing), human);
        return Ok(0);
    }
    let names: Vec<&str> = if args.all {
        checks::CHECK_NAMES.to_vec()
    } else {
        match &args.name {
            Some(n) => {
                if !checks::CHECK_NAMES.contains(&n.as_str()) {
                    return Err(Error::UnknownLabel(n.clone()));
                }
                vec![n.as_str()]
            }
            None => {
                return Err(Error::BadParameter(
                    "name a check, or pass --all (see --list)".into(),
                ))
            }
        }
    };
    let mut ctx = CheckContext {
        field,
        gb,
        ..Default::default()
    };
    if args.input.file.is_some() || args.input.instance.is_some() {
        let (name, w, g) = load_realization(&args.input, field)?;
        ctx.realization = Some((name, w));
        ctx.graph = g;
    }
    let mut reports = Vec::new();
    for name in names {
        reports.extend(checks::run(name, &ctx)?);
    }
    for r in &reports {
        eprintln!(
            "{} [{}]: {:.3}s",
            r.check,
            r.instance,
            r.elapsed.as_secs_f64()
        );
    }
    let all_passed = reports.iter().all(|r| r.passed());
    let payload: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
    let human = reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
    emit(text, json!(payload), human);
    Ok(if all_passed { 0 } else { 1 })
}
