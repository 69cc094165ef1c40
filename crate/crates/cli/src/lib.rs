//! Command-line front end: loads scenes, runs one task or a scene's task
//! list, and writes a text report or a single JSON document.

pub mod report;
pub mod scene;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qclass_core::obstruction::reduced_expansion;
use qclass_core::{
    degree_audit, euler_obstruction, expand_euler, hofer_bound, leading_qc_class,
    loop_hofer_bound, minimality_certificate, psi, qmul, seidel_full, seidel_leading,
    validate_model, virtual_index, BoundKind, QDegree, QuantumElement,
};
use serde_json::{json, Value};

use crate::report::{class_json, element_inline, element_json, Section, Style};
use crate::scene::Scene;

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invalid(String),
    Compute(qclass_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Compute(e) => write!(f, "computation failed: {e}"),
        }
    }
}

impl From<qclass_core::Error> for CliError {
    fn from(e: qclass_core::Error) -> Self {
        CliError::Compute(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "qclass", version, about = "Exact quantum characteristic class computations")]
pub struct Cli {
    /// Write the structured report to FILE instead of text to stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Append labelled decimal approximations to exact rationals.
    #[arg(long, global = true)]
    pub decimal: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Scene file, model file, or manifold reference such as `cpn:2`.
    pub target: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the structural invariants of a manifold model.
    Validate(Target),
    /// Quantum products of all pairs of basis elements.
    QmulTable(Target),
    /// Seidel element of the scene's circle action.
    Seidel(Target),
    /// Virtual index of a weight list or of the scene's action.
    Index {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "target")]
        weights: Option<Vec<i64>>,
        #[arg(required_unless_present = "weights")]
        target: Option<String>,
    },
    /// Obstruction-bundle Euler class and its expansion in eK.
    Euler(Target),
    /// Leading-order total characteristic class over the base.
    Qcclass(Target),
    /// Evaluation of the leading class on the fundamental class of the base.
    Psi(Target),
    /// Valuation lower bounds for the positive max-length measure.
    Bound(Target),
    /// Minimality certificate for the family over the base.
    Certify(Target),
    /// Run every task listed in the scene's `tasks` array.
    Run(Target),
}

const TASKS: [&str; 9] =
    ["validate", "qmul-table", "seidel", "index", "euler", "qcclass", "psi", "bound", "certify"];

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.json),
                None => stdout.write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "usage error: cannot write report: {e}");
                return EXIT_USAGE;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

/// A finished report. `code` is nonzero only for a failed `validate`.
pub struct Output {
    pub text: String,
    pub json: String,
    pub code: i32,
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let style = Style { decimal: cli.decimal };
    let (name, source, tasks, scene) = match &cli.command {
        Command::Index { weights: Some(w), .. } => {
            let section = index_section(w)?;
            return Ok(finish("index", None, vec![section], 0));
        }
        Command::Index { target, .. } => {
            let t = target.as_deref().expect("clap requires a target without --weights");
            ("index", t, vec!["index".to_string()], Scene::load(t)?)
        }
        Command::Run(t) => {
            let scene = Scene::load(&t.target)?;
            if scene.tasks.is_empty() {
                return Err(CliError::Usage(format!("{} lists no tasks", t.target)));
            }
            ("run", t.target.as_str(), scene.tasks.clone(), scene)
        }
        Command::Validate(t) => single("validate", t)?,
        Command::QmulTable(t) => single("qmul-table", t)?,
        Command::Seidel(t) => single("seidel", t)?,
        Command::Euler(t) => single("euler", t)?,
        Command::Qcclass(t) => single("qcclass", t)?,
        Command::Psi(t) => single("psi", t)?,
        Command::Bound(t) => single("bound", t)?,
        Command::Certify(t) => single("certify", t)?,
    };
    for t in &tasks {
        if !TASKS.contains(&t.as_str()) {
            return Err(CliError::Usage(format!("unknown task `{t}`")));
        }
    }
    // a failed validation is reported as such and stops the run
    if tasks.iter().any(|t| t == "validate") {
        let (section, ok) = run_task("validate", &scene, style)?;
        if !ok {
            return Ok(finish(name, Some(source), vec![section], EXIT_INVALID));
        }
    }
    if tasks.iter().any(|t| t != "validate") {
        scene.ensure_valid()?;
    }
    let mut sections = Vec::new();
    for t in &tasks {
        sections.push(run_task(t, &scene, style)?.0);
    }
    Ok(finish(name, Some(source), sections, 0))
}

fn single<'a>(task: &'static str, t: &'a Target) -> Result<(&'static str, &'a str, Vec<String>, Scene), CliError> {
    Ok((task, t.target.as_str(), vec![task.to_string()], Scene::load(&t.target)?))
}

fn finish(command: &str, source: Option<&str>, sections: Vec<Section>, code: i32) -> Output {
    Output {
        text: report::render_text(&sections),
        json: report::render_json(command, source, &sections),
        code,
    }
}

fn section(task: &str, text: String, data: Value) -> Section {
    Section { task: task.to_string(), text, data }
}

fn run_task(task: &str, scene: &Scene, style: Style) -> Result<(Section, bool), CliError> {
    let s = match task {
        "validate" => {
            let report = validate_model(&scene.model);
            let ok = report.is_valid();
            let data = serde_json::to_value(&report).expect("report serializes");
            return Ok((section(task, report.to_string(), data), ok));
        }
        "qmul-table" => qmul_table(scene)?,
        "seidel" => seidel(scene, style)?,
        "index" => index_section(&scene.action()?.weights)?,
        "euler" => euler(scene)?,
        "qcclass" => qcclass(scene)?,
        "psi" => psi_section(scene, style)?,
        "bound" => bound(scene, style)?,
        "certify" => certify(scene, style)?,
        other => return Err(CliError::Usage(format!("unknown task `{other}`"))),
    };
    Ok((s, true))
}

fn qmul_table(scene: &Scene) -> Result<Section, CliError> {
    let m = &scene.model;
    let mut text = format!("quantum products in {}\n", m.name);
    let mut rows = Vec::new();
    for i in 0..m.rank() {
        for j in 0..m.rank() {
            let p = qmul(&QuantumElement::basis(m, i), &QuantumElement::basis(m, j))?;
            let (a, b) = (&m.basis[i].label, &m.basis[j].label);
            text.push_str(&format!("{a} * {b} = {}\n", element_inline(&p)));
            rows.push(json!({ "left": a, "right": b, "product": element_json(&p) }));
        }
    }
    Ok(section("qmul-table", text, json!({ "model": m.name, "products": rows })))
}

fn qdegree_text(d: &QDegree) -> String {
    match d {
        QDegree::Homogeneous(k) => k.to_string(),
        QDegree::Inhomogeneous => "inhomogeneous".into(),
    }
}

fn qdegree_json(d: &QDegree) -> Value {
    match d {
        QDegree::Homogeneous(k) => json!(k),
        QDegree::Inhomogeneous => json!("inhomogeneous"),
    }
}

fn seidel(scene: &Scene, style: Style) -> Result<Section, CliError> {
    let a = scene.action()?;
    let lead = seidel_leading(a)?;
    let full = seidel_full(a)?;
    let degree = lead.qdegree()?;
    let expected = a.expected_degree()?;
    let bound = loop_hofer_bound(a)?;
    let mut text = format!("action {} on {}\n", a.name, a.model.name);
    text.push_str(&format!("weights: {:?}\n", a.weights));
    text.push_str(&format!("m_max = {}\n", a.m_max()));
    text.push_str(&format!("h_max = {}\n", style.num(&a.h_max)));
    text.push_str(&format!("leading term: {}\n", element_inline(&lead)));
    if a.is_leading_term_only() {
        text.push_str("corrections: none supplied (leading term only)\n");
    } else {
        text.push_str(&format!("full element: {}\n", element_inline(&full)));
    }
    text.push_str(&format!("degree: {} (expected {expected})\n", qdegree_text(&degree)));
    text.push_str(&format!("valuation: {}\n", style.num(&bound)));
    let data = json!({
        "action": a.name,
        "model": a.model.name,
        "weights": a.weights,
        "m_max": a.m_max(),
        "h_max": style.num_json(&a.h_max),
        "semifree": a.is_semifree(),
        "leading": element_json(&lead),
        "full": element_json(&full),
        "leading_term_only": a.is_leading_term_only(),
        "degree": qdegree_json(&degree),
        "expected_degree": expected,
        "valuation": style.num_json(&bound),
    });
    Ok(section("seidel", text, data))
}

fn index_section(weights: &[i64]) -> Result<Section, CliError> {
    let i = virtual_index(weights)?;
    Ok(section("index", format!("{i}\n"), json!({ "weights": weights, "virtual_index": i })))
}

fn euler(scene: &Scene) -> Result<Section, CliError> {
    let a = scene.action()?;
    let e = euler_obstruction(a, &scene.base, &scene.el)?;
    let index = virtual_index(&a.weights)?;
    let top = scene.base.top();
    let mut text = format!("I(γ) = {index}\n");
    text.push_str(&format!("e(E) = {}\n", e.free));
    text.push_str("expansion in eK:\n");
    let mut coeffs = Vec::new();
    for (p, c) in expand_euler(&e) {
        text.push_str(&format!("  a_{p} = {c}\n"));
        coeffs.push(json!({ "p": p, "a_p": c.to_string() }));
    }
    let names: Vec<String> = (0..e.substitution.len())
        .map(|i| if i == 0 { "eK".to_string() } else { format!("eL{i}") })
        .collect();
    let subst: Vec<String> =
        names.iter().zip(&e.substitution).map(|(n, v)| format!("{n} = {v}")).collect();
    text.push_str(&format!("over {}: {}\n", scene.base.name(), subst.join(", ")));
    let mut reduced_terms = Vec::new();
    for (p, r) in reduced_expansion(&e, top) {
        text.push_str(&format!("  eK^{p} a_{p} = {r}\n"));
        reduced_terms.push(json!({ "p": p, "value": r.to_string() }));
    }
    let pd = scene.base.poincare_dual(&e.reduced);
    text.push_str(&format!("e(E) = {}\n", e.reduced));
    text.push_str(&format!("PD e(E) = {pd}\n"));
    let data = json!({
        "virtual_index": index,
        "free": e.free.to_string(),
        "coefficients": coeffs,
        "base": scene.base.name(),
        "substitution": names.iter().zip(&e.substitution)
            .map(|(n, v)| (n.clone(), Value::String(v.to_string())))
            .collect::<serde_json::Map<_, _>>(),
        "reduced_terms": reduced_terms,
        "reduced": e.reduced.to_string(),
        "poincare_dual": pd.to_string(),
    });
    Ok(section("euler", text, data))
}

fn leading_class(scene: &Scene) -> Result<qclass_core::QCClass, CliError> {
    Ok(leading_qc_class(scene.action()?, &scene.base, &scene.el)?)
}

fn qcclass(scene: &Scene) -> Result<Section, CliError> {
    let c = leading_class(scene)?;
    let audit = degree_audit(&c, scene.model.dim, scene.base.dim);
    let text = format!("base {}\n{c}{audit}", scene.base.name());
    let data = json!({
        "base": scene.base.name(),
        "class": class_json(&c),
        "degree_audit": serde_json::to_value(&audit).expect("audit serializes"),
    });
    Ok(section("qcclass", text, data))
}

fn psi_section(scene: &Scene, style: Style) -> Result<Section, CliError> {
    let c = leading_class(scene)?;
    let p = psi(&c)?;
    let mut text = format!("Ψ = {}\n", element_inline(&p));
    let mut data = json!({ "psi": element_json(&p), "complete": c.complete });
    if p.is_zero() {
        text.push_str("degree: undefined (zero element)\n");
        data["degree"] = Value::Null;
        data["valuation"] = Value::Null;
    } else {
        let d = p.qdegree()?;
        let v = p.valuation()?;
        text.push_str(&format!("degree: {}\n", qdegree_text(&d)));
        text.push_str(&format!("valuation: {}\n", style.num(&v)));
        data["degree"] = qdegree_json(&d);
        data["valuation"] = style.num_json(&v);
    }
    Ok(section("psi", text, data))
}

fn bound(scene: &Scene, style: Style) -> Result<Section, CliError> {
    let a = scene.action()?;
    let lb = loop_hofer_bound(a)?;
    let mut text = format!("loop: ν(S(γ)) = {}\n", style.num(&lb));
    let mut data = json!({ "loop": style.num_json(&lb) });
    let c = leading_class(scene)?;
    for kind in [BoundKind::HomotopyClass, BoundKind::BordismClass] {
        let key = match kind {
            BoundKind::HomotopyClass => "homotopy-class",
            BoundKind::BordismClass => "bordism-class",
        };
        match hofer_bound(&c, kind) {
            Ok(cert) => {
                let note = if cert.complete { "" } else { " (leading order)" };
                text.push_str(&format!("{key}: {} ≥ {}{note}\n", cert.source, style.num(&cert.bound())));
                data[key] = json!({
                    "source": cert.source,
                    "bound": style.num_json(&cert.bound()),
                    "complete": cert.complete,
                });
            }
            Err(qclass_core::Error::ZeroElement) => {
                text.push_str(&format!("{key}: none (class vanishes)\n"));
                data[key] = Value::Null;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(section("bound", text, data))
}

fn certify(scene: &Scene, style: Style) -> Result<Section, CliError> {
    let v = minimality_certificate(scene.action()?, &scene.base)?;
    let mut text = format!("{v}\n");
    if style.decimal && v.certified {
        let b: qclass_core::Rational = v.bound.parse().expect("bound is rendered from a rational");
        text.push_str(&format!("bound: {}\n", style.num(&b)));
    }
    let data = serde_json::to_value(&v).expect("verdict serializes");
    Ok(section("certify", text, data))
}
