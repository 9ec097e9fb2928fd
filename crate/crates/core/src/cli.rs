//! The `twist` command-line front end.
//!
//! Every subcommand builds a [`Report`] holding both a JSON value (tagged
//! with `"schema": "twist/1"`) and a text rendering. Validation failures exit
//! with status 2 and name the offending flag.

use std::ffi::OsString;
use std::fmt::Display;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::chevalley::{fe_json, SignConvention, StructureConstants, UnipotentElement, UnipotentGroup};
use crate::error::Error;
use crate::field::{AdditiveEndo, Fe, Field, FieldSpec};
use crate::linalg::Matrix;
use crate::rootsystem::RootSystem;
use crate::solvable::{
    gan_reidemeister, tga_has_rinf, witt_add, witt_fixed_points, witt_homothety, witt_homothety_verdict, witt_inverse,
    witt_mul, LinearAutomorphism, SemidirectAutomorphism, SemidirectGroup, TorusActionOnVector, VectorPart,
    WittVector,
};
use crate::torus::{IntMatrix, TorusAutomorphism};
use crate::unipotent::{CentralParams, Character, ExtremalParams, TwistMatrix, UnipotentAutomorphism};
use crate::Verdict;

pub const SCHEMA: &str = "twist/1";

#[derive(Parser, Debug)]
#[command(name = "twist", version, about = "Twisted conjugacy in tori, unipotent groups and solvable groups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for every sampled quantity.
    #[arg(long, env = "TWIST_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads for exhaustive enumerations.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots, heights, Cartan matrix and diagram symmetries.
    RootSystem {
        #[arg(long = "type")]
        ty: String,
    },
    /// Structure constants N and C.
    StructConsts {
        #[arg(long = "type")]
        ty: String,
        /// positive | negative | diagram
        #[arg(long)]
        convention: Option<String>,
    },
    /// Automorphisms of split tori given by an integer matrix.
    Torus(TorusArgs),
    /// Automorphisms of a maximal unipotent subgroup.
    Unipotent(UnipotentArgs),
    /// Linear automorphisms of G_a^m.
    Gan {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Automorphisms of T ⋉ G_a^m.
    Semidirect(SemidirectArgs),
    /// Truncated Witt vectors over F_p.
    Witt(WittArgs),
    /// Exhaustive twisted-class counts.
    OrbitCount {
        #[command(subcommand)]
        target: OrbitTarget,
    },
    /// Runs the built-in examples and oracle agreements.
    Selftest,
}

#[derive(Args, Debug)]
pub struct TorusArgs {
    #[arg(long)]
    pub matrix: String,
    /// Closed-form class count over F_q.
    #[arg(long)]
    pub count_over: Option<u64>,
    /// Solve t⁻¹φ(t) = x; x as a JSON list of field elements.
    #[arg(long)]
    pub solve: Option<String>,
    /// Field for --solve.
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct UnipotentArgs {
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long, default_value = "Fq:p=5")]
    pub field: String,
    /// Character on the simple roots, JSON list; defaults to all ones.
    #[arg(long)]
    pub chi: Option<String>,
    #[arg(long, default_value = "id")]
    pub rho: String,
    #[arg(long, default_value = "0")]
    pub u: String,
    /// Second extremal parameter (C branch).
    #[arg(long)]
    pub u_prime: Option<String>,
    /// Central endomorphisms: JSON list of p-polynomial coefficient lists.
    #[arg(long)]
    pub central: Option<String>,
    /// Inner part, e.g. "x[3](2)*x[1](4)".
    #[arg(long)]
    pub inner: Option<String>,
    /// Sample a random automorphism from --seed instead of the data flags.
    #[arg(long)]
    pub random: bool,
    /// Exhaustive orbit count.
    #[arg(long)]
    pub count: bool,
    /// Solve x⁻¹φ(x) = y for this element.
    #[arg(long)]
    pub solve: Option<String>,
    #[arg(long)]
    pub show_matrix: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SemidirectArgs {
    /// m×r weight matrix.
    #[arg(long)]
    pub weights: String,
    /// Torus part, r×r integer matrix.
    #[arg(long)]
    pub torus: String,
    /// Vector part, m×m; entries are scalars or p-polynomial coefficient lists {"poly":[a0,a1,..]}.
    #[arg(long)]
    pub vector: String,
    #[arg(long, default_value = "Fq:p=5")]
    pub field: String,
    #[arg(long)]
    pub count: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WittOp {
    Add,
    Mul,
    Homothety,
    Fixed,
    Inverse,
}

#[derive(Args, Debug)]
pub struct WittArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub op: WittOp,
    /// JSON coordinate list.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub lambda: u64,
}

#[derive(Subcommand, Debug)]
pub enum OrbitTarget {
    Torus {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        field: String,
    },
    Unipotent(UnipotentArgs),
    Semidirect(SemidirectArgs),
}

/// A failed run: exit status and diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn invalid(flag: &str, e: impl Display) -> CliError {
    CliError { code: 2, message: format!("invalid value for {flag}: {e}") }
}

fn failure(e: impl Display) -> CliError {
    CliError { code: 1, message: e.to_string() }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(command: &str, fields: Value, text: String) -> Report {
        let mut map = Map::new();
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("command".into(), json!(command));
        if let Value::Object(m) = fields {
            map.extend(m);
        }
        Report { json: Value::Object(map), text }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).unwrap() + "\n",
            Format::Text => self.text.clone(),
        }
    }
}

/// Parses `args` and runs; returns (exit code, stdout, stderr).
pub fn run_capture<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 { (0, msg, String::new()) } else { (code, String::new(), msg) };
        }
    };
    match execute(&cli) {
        Ok(r) => (0, r.render(cli.format), String::new()),
        Err(e) => (e.code, String::new(), format!("error: {}\n", e.message)),
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_capture(args);
    print!("{out}");
    eprint!("{err}");
    code
}

pub fn execute(cli: &Cli) -> CliResult<Report> {
    if cli.jobs == 0 {
        return Err(invalid("--jobs", "must be at least 1"));
    }
    let ctx = Ctx { seed: cli.seed, jobs: cli.jobs };
    match &cli.command {
        Command::RootSystem { ty } => root_system(ty),
        Command::StructConsts { ty, convention } => struct_consts(ty, convention.as_deref()),
        Command::Torus(a) => torus(a),
        Command::Unipotent(a) => unipotent(a, &ctx),
        Command::Gan { matrix, field } => gan(matrix, field),
        Command::Semidirect(a) => semidirect(a, &ctx),
        Command::Witt(a) => witt(a),
        Command::OrbitCount { target } => orbit_count(target, &ctx),
        Command::Selftest => selftest(&ctx),
    }
}

struct Ctx {
    seed: u64,
    jobs: usize,
}

fn parse_json(flag: &str, s: &str) -> CliResult<Value> {
    serde_json::from_str(s).map_err(|e| invalid(flag, e))
}

fn parse_int_matrix(flag: &str, s: &str) -> CliResult<IntMatrix> {
    let v = parse_json(flag, s)?;
    let rows = v.as_array().ok_or_else(|| invalid(flag, "expected a JSON list"))?;
    if rows.iter().all(|r| r.is_i64()) {
        // a flat list is one row, so "[-1]" is the 1×1 matrix
        return Ok(vec![rows.iter().map(|x| x.as_i64().unwrap()).collect()]);
    }
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid(flag, "expected a list of integer rows"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| invalid(flag, format!("{x} is not an integer"))))
                .collect()
        })
        .collect()
}

fn parse_field(flag: &str, s: &str) -> CliResult<Field> {
    let spec: FieldSpec = s.parse().map_err(|e| invalid(flag, e))?;
    Field::new(spec).map_err(|e| invalid(flag, e))
}

fn fe_from_value(f: &Field, v: &Value) -> Result<Fe, String> {
    match v {
        Value::Number(n) => n.as_i64().map(|k| f.from_i64(k)).ok_or_else(|| format!("{n} is not an integer")),
        Value::String(s) => f.parse(s).map_err(|e| e.to_string()),
        Value::Array(cs) => {
            let coeffs: Option<Vec<u64>> = cs.iter().map(|c| c.as_u64()).collect();
            let coeffs = coeffs.ok_or("coefficients must be nonnegative integers")?;
            f.from_coeffs(&coeffs).map_err(|e| e.to_string())
        }
        _ => Err(format!("{v} is not a field element")),
    }
}

fn parse_fe_list(flag: &str, f: &Field, s: &str) -> CliResult<Vec<Fe>> {
    let v = parse_json(flag, s)?;
    v.as_array()
        .ok_or_else(|| invalid(flag, "expected a JSON list"))?
        .iter()
        .map(|x| fe_from_value(f, x).map_err(|e| invalid(flag, e)))
        .collect()
}

fn parse_fe(flag: &str, f: &Field, s: &str) -> CliResult<Fe> {
    let v = serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()));
    fe_from_value(f, &v).map_err(|e| invalid(flag, e))
}

fn parse_root_system(flag: &str, s: &str) -> CliResult<RootSystem> {
    RootSystem::parse(s).map_err(|e| invalid(flag, e))
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::One => "R(phi) = 1",
        Verdict::Infinite => "R(phi) = infinity",
    }
}

fn matrix_json(f: &Field, m: &Matrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(|x| fe_json(f, x)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_text(f: &Field, m: &Matrix, labels: Option<&[String]>) -> String {
    let cells = m.format(f);
    let width = cells.iter().flatten().map(|c| c.len()).chain(labels.into_iter().flatten().map(|l| l.len())).max().unwrap_or(1);
    let mut out = String::new();
    let pad = |s: &str| format!("{s:>width$}");
    let row_label_width = labels.map_or(0, |l| l.iter().map(|x| x.len()).max().unwrap_or(0));
    if let Some(ls) = labels {
        out += &format!("  {:row_label_width$}  {}\n", "", ls.iter().map(|l| pad(l)).collect::<Vec<_>>().join(" "));
    }
    for (i, row) in cells.iter().enumerate() {
        let lab = labels.map_or(String::new(), |l| format!("{:row_label_width$}  ", l[i]));
        out += &format!("  {lab}{}\n", row.iter().map(|c| pad(c)).collect::<Vec<_>>().join(" "));
    }
    out
}

fn root_system(ty: &str) -> CliResult<Report> {
    let rs = parse_root_system("--type", ty)?;
    let roots: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|r| json!({"root": r.to_string(), "coefficients": r.0, "height": r.height()}))
        .collect();
    let syms: Vec<String> = rs.diagram_symmetries().iter().map(|d| d.describe()).collect();
    let mut text = format!(
        "type {}  rank {}  positive roots {}\nhighest root {}\n",
        rs.root_type(),
        rs.rank(),
        rs.num_positive(),
        rs.highest_root()
    );
    for (k, r) in rs.positive_roots().iter().enumerate() {
        text += &format!("  {:>3}  h={}  {}\n", k + 1, r.height(), r);
    }
    text += &format!("cartan {:?}\ndiagram symmetries {}\n", rs.cartan(), syms.join(" "));
    let ext: Vec<usize> = rs.extremal_simple_roots().iter().map(|i| i + 1).collect();
    Ok(Report::new(
        "root-system",
        json!({
            "type": rs.root_type().to_string(),
            "rank": rs.rank(),
            "positive_roots": roots,
            "highest_root": rs.highest_root().to_string(),
            "cartan": rs.cartan(),
            "diagram_symmetries": syms,
            "extremal_simple_roots": ext,
        }),
        text,
    ))
}

fn struct_consts(ty: &str, convention: Option<&str>) -> CliResult<Report> {
    let rs = parse_root_system("--type", ty)?;
    let conv = match convention {
        Some(c) => c.parse::<SignConvention>().map_err(|e| invalid("--convention", e))?,
        None => SignConvention::default_for(&rs),
    };
    let sc = StructureConstants::with_convention(rs.clone(), conv);
    let n = rs.num_positive();
    let mut n_entries = vec![];
    let mut text = format!("type {}  convention {:?}\nN(a,b) for a < b:\n", rs.root_type(), conv);
    for a in 0..n {
        for b in a + 1..n {
            if let Some(s) = sc.sum_pos(a, b) {
                let v = sc.n_pos(a, b);
                text += &format!("  N({}, {}) = {}  -> {}\n", rs.root(a), rs.root(b), v, rs.root(s));
                n_entries.push(json!({"a": rs.root(a).to_string(), "b": rs.root(b).to_string(), "n": v}));
            }
        }
    }
    let mut c: Vec<_> = sc.c_entries().map(|(k, v)| (k, v)).collect();
    c.sort();
    text += "C(i,j,a,b):\n";
    let mut c_entries = vec![];
    for ((i, j, a, b), v) in c {
        text += &format!("  C{i}{j}({}, {}) = {v}\n", rs.root(a), rs.root(b));
        c_entries.push(json!({"i": i, "j": j, "a": rs.root(a).to_string(), "b": rs.root(b).to_string(), "c": v}));
    }
    Ok(Report::new(
        "struct-consts",
        json!({"type": rs.root_type().to_string(), "convention": format!("{conv:?}"), "n": n_entries, "c": c_entries}),
        text,
    ))
}

fn torus(a: &TorusArgs) -> CliResult<Report> {
    let m = parse_int_matrix("--matrix", &a.matrix)?;
    let phi = TorusAutomorphism::new(m.clone()).map_err(|e| invalid("--matrix", e))?;
    let verdict = phi.reidemeister();
    let smith = phi.smith().invariants();
    let mut fields = json!({"matrix": m, "verdict": verdict, "smith": smith});
    let mut text = format!("{}\nSmith invariants of A - I: {:?}\n", verdict_text(verdict), smith);
    if let Some(q) = a.count_over {
        let c = phi.class_count_finite(q).map_err(|e| invalid("--count-over", e))?;
        fields["count"] = json!(c);
        text += &format!("classes over F_{q}: {c}\n");
    }
    if let Some(x) = &a.solve {
        let spec = a.field.as_deref().ok_or_else(|| invalid("--field", "required with --solve"))?;
        let f = parse_field("--field", spec)?;
        let xs = parse_fe_list("--solve", &f, x)?;
        let sol = phi.solve_twist(&f, &xs).map_err(|e| match e {
            Error::SingularTwist | Error::WrongDimension { .. } | Error::ZeroEntry(_) => invalid("--solve", e),
            other => failure(other),
        })?;
        let t: Vec<Value> = sol.t.iter().map(|v| fe_json(&sol.field, v)).collect();
        fields["solution"] =
            json!({"field": sol.field.spec().to_string(), "extension_degree": sol.extension_degree, "t": t});
        let ts: Vec<String> = sol.t.iter().map(|v| sol.field.format(v)).collect();
        text += &format!("solution t = ({}) in {}\n", ts.join(", "), sol.field.spec());
    }
    Ok(Report::new("torus", fields, text))
}

fn unipotent_group(a: &UnipotentArgs) -> CliResult<UnipotentGroup> {
    let rs = parse_root_system("--type", &a.ty)?;
    let f = parse_field("--field", &a.field)?;
    if matches!(f.characteristic(), 2 | 3) {
        return Err(invalid("--field", Error::BadCharacteristic(f.characteristic())));
    }
    Ok(UnipotentGroup::new(Arc::new(StructureConstants::new(rs)), f))
}

fn build_automorphism(a: &UnipotentArgs, g: &UnipotentGroup, ctx: &Ctx) -> CliResult<UnipotentAutomorphism> {
    if a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        return UnipotentAutomorphism::random(g, &mut rng).map_err(failure);
    }
    let f = g.field();
    let rs = g.root_system();
    let l = rs.rank();
    let chi = match &a.chi {
        Some(s) => parse_fe_list("--chi", f, s)?,
        None => vec![f.one(); l],
    };
    if chi.len() != l {
        return Err(invalid("--chi", format!("expected {l} values, got {}", chi.len())));
    }
    if let Some(i) = chi.iter().position(|c| f.is_zero(c)) {
        return Err(invalid("--chi", Error::ZeroEntry(i + 1)));
    }
    let rho = rs.parse_symmetry(&a.rho).map_err(|e| invalid("--rho", e))?;
    let u = parse_fe("--u", f, &a.u)?;
    let u_prime = a.u_prime.as_ref().map(|s| parse_fe("--u-prime", f, s)).transpose()?;
    if u_prime.as_ref().is_some_and(|v| !f.is_zero(v)) && !rs.has_c_branch() {
        return Err(invalid("--u-prime", format!("type {} has no second extremal family", rs.root_type())));
    }
    let central = match &a.central {
        None => CentralParams::zero(l),
        Some(s) => {
            let v = parse_json("--central", s)?;
            let list = v.as_array().ok_or_else(|| invalid("--central", "expected a JSON list"))?;
            if list.len() != l {
                return Err(invalid("--central", format!("expected {l} endomorphisms, got {}", list.len())));
            }
            let endos = list
                .iter()
                .map(|e| {
                    let cs = match e {
                        Value::Array(cs) => cs.clone(),
                        other => vec![other.clone()],
                    };
                    let coeffs =
                        cs.iter().map(|c| fe_from_value(f, c)).collect::<Result<Vec<_>, _>>().map_err(|e| invalid("--central", e))?;
                    AdditiveEndo::new(f, coeffs).map_err(|e| invalid("--central", e))
                })
                .collect::<CliResult<Vec<_>>>()?;
            CentralParams { endos }
        }
    };
    let inner = match &a.inner {
        None => g.identity(),
        Some(s) => g.parse(s).map_err(|e| invalid("--inner", e))?,
    };
    UnipotentAutomorphism::new(
        g,
        rho,
        Character { simple_values: chi },
        ExtremalParams { u, u_prime },
        central,
        inner,
    )
    .map_err(|e| match e {
        Error::NotAnAutomorphism(ref m) if m.contains("central") => invalid("--central", e),
        Error::NotAnAutomorphism(_) => invalid("--u", e),
        Error::BadCharacteristic(_) => invalid("--field", e),
        other => invalid("--type", other),
    })
}

fn block_labels(rs: &RootSystem, m: &TwistMatrix) -> Vec<Vec<String>> {
    let mut k = 0;
    m.blocks
        .iter()
        .map(|b| {
            let labels = (k..k + b.rows).map(|i| rs.root(i).to_string()).collect();
            k += b.rows;
            labels
        })
        .collect()
}

fn parse_element(flag: &str, g: &UnipotentGroup, s: &str) -> CliResult<UnipotentElement> {
    if s.trim_start().starts_with('{') || s.trim_start().starts_with('[') {
        let v = parse_json(flag, s)?;
        let coords = v.get("coords").unwrap_or(&v);
        let cs = coords.as_array().ok_or_else(|| invalid(flag, "expected coords"))?;
        let fes = cs.iter().map(|c| fe_from_value(g.field(), c)).collect::<Result<Vec<_>, _>>().map_err(|e| invalid(flag, e))?;
        g.element(fes).map_err(|e| invalid(flag, e))
    } else {
        g.parse(s).map_err(|e| invalid(flag, e))
    }
}

fn unipotent(a: &UnipotentArgs, ctx: &Ctx) -> CliResult<Report> {
    let g = unipotent_group(a)?;
    let phi = build_automorphism(a, &g, ctx)?;
    let f = g.field();
    let rs = g.root_system();
    let m = phi.twist_matrix();
    let verdict = m.verdict(f);
    let dets = m.determinants(f);
    let mut fields = json!({
        "type": rs.root_type().to_string(),
        "field": f.spec().to_string(),
        "rho": phi.rho.describe(),
        "chi": phi.chi.simple_values.iter().map(|c| fe_json(f, c)).collect::<Vec<_>>(),
        "u": fe_json(f, &phi.omega.u),
        "verdict": verdict,
        "blocks": m.heights.iter().zip(&dets).map(|(h, d)| json!({"height": h, "det": fe_json(f, d)})).collect::<Vec<_>>(),
        "shortcut": phi.shortcut_verdict(),
    });
    let mut text = format!("type {} over {}  rho {}\n{}\n", rs.root_type(), f.spec(), phi.rho.describe(), verdict_text(verdict));
    for (h, d) in m.heights.iter().zip(&dets) {
        text += &format!("  height {h}: det {}\n", f.format(d));
    }
    if a.show_matrix {
        let labels = block_labels(rs, &m);
        fields["matrix"] = json!(m
            .blocks
            .iter()
            .zip(&labels)
            .map(|(b, l)| json!({"roots": l, "rows": matrix_json(f, b)}))
            .collect::<Vec<_>>());
        for ((h, b), l) in m.heights.iter().zip(&m.blocks).zip(&labels) {
            text += &format!("M{h}:\n{}", matrix_text(f, b, Some(l)));
        }
    }
    if a.count {
        let c = phi.orbit_count(ctx.jobs).map_err(|e| match e {
            Error::TooLarge(_) | Error::Unsupported(_) => invalid("--count", e),
            other => failure(other),
        })?;
        fields["count"] = json!(c);
        text += &format!("twisted classes over {}: {c}\n", f.spec());
    }
    if let Some(s) = &a.solve {
        let y = parse_element("--solve", &g, s)?;
        let x = phi.solve_twist(&y).map_err(|e| match e {
            Error::SingularBlock(_) => invalid("--solve", e),
            other => failure(other),
        })?;
        fields["solution"] = g.to_json(&x);
        text += &format!("solution x = {}\n", g.format(&x));
    }
    Ok(Report::new("unipotent", fields, text))
}

fn gan(matrix: &str, field: &str) -> CliResult<Report> {
    let f = parse_field("--field", field)?;
    let rows = parse_json("--matrix", matrix)?;
    let rows = rows.as_array().ok_or_else(|| invalid("--matrix", "expected a JSON list of rows"))?;
    let m = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid("--matrix", "expected rows"))?
                .iter()
                .map(|x| fe_from_value(&f, x).map_err(|e| invalid("--matrix", e)))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let m = Matrix::from_rows(m).map_err(|e| invalid("--matrix", e))?;
    let l = LinearAutomorphism::new(&f, m.clone()).map_err(|e| invalid("--matrix", e))?;
    let v = gan_reidemeister(&f, &l);
    let det = m.minus_identity(&f).det(&f);
    Ok(Report::new(
        "gan",
        json!({"field": f.spec().to_string(), "matrix": matrix_json(&f, &m), "det_minus_identity": fe_json(&f, &det), "verdict": v}),
        format!("det(L - I) = {}\n{}\n", f.format(&det), verdict_text(v)),
    ))
}

fn build_semidirect(a: &SemidirectArgs) -> CliResult<SemidirectAutomorphism> {
    let f = parse_field("--field", &a.field)?;
    let w = parse_json("--weights", &a.weights)?;
    let weights: IntMatrix = w
        .as_array()
        .ok_or_else(|| invalid("--weights", "expected a JSON list"))?
        .iter()
        .map(|r| match r {
            Value::Array(xs) => xs.iter().map(|x| x.as_i64().ok_or_else(|| invalid("--weights", "integers only"))).collect(),
            Value::Number(n) => n.as_i64().map(|k| vec![k]).ok_or_else(|| invalid("--weights", "integers only")),
            _ => Err(invalid("--weights", "expected integer rows")),
        })
        .collect::<CliResult<_>>()?;
    let action = TorusActionOnVector::new(weights).map_err(|e| invalid("--weights", e))?;
    let mut t = parse_int_matrix("--torus", &a.torus)?;
    if t.len() == 1 && t[0].len() > 1 && action.torus_rank() == t[0].len() {
        t = t[0].iter().map(|&x| vec![x]).collect();
    }
    let torus = TorusAutomorphism::new(t).map_err(|e| invalid("--torus", e))?;
    if torus.rank() != action.torus_rank() {
        return Err(invalid("--torus", format!("expected a {0}x{0} matrix", action.torus_rank())));
    }
    let v = parse_json("--vector", &a.vector)?;
    let entries = v
        .as_array()
        .ok_or_else(|| invalid("--vector", "expected a JSON list of rows"))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid("--vector", "expected rows"))?
                .iter()
                .map(|x| {
                    let coeffs = match x.get("poly") {
                        Some(Value::Array(cs)) => cs.clone(),
                        Some(_) => return Err(invalid("--vector", "poly must be a list")),
                        None => vec![x.clone()],
                    };
                    let fes = coeffs.iter().map(|c| fe_from_value(&f, c)).collect::<Result<Vec<_>, _>>().map_err(|e| invalid("--vector", e))?;
                    AdditiveEndo::new(&f, fes).map_err(|e| invalid("--vector", e))
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    SemidirectAutomorphism::new(SemidirectGroup::new(f, action), torus, VectorPart { entries }).map_err(|e| invalid("--vector", e))
}

fn semidirect(a: &SemidirectArgs, ctx: &Ctx) -> CliResult<Report> {
    let phi = build_semidirect(a)?;
    let v = phi.reidemeister().map_err(|e| invalid("--vector", e))?;
    let tv = phi.torus_part.reidemeister();
    let mut fields = json!({
        "field": phi.group.field.spec().to_string(),
        "weights": phi.group.action.weights,
        "torus": phi.torus_part.matrix(),
        "torus_verdict": tv,
        "verdict": v,
    });
    let mut text = format!("torus part: {}\n{}\n", verdict_text(tv), verdict_text(v));
    if phi.group.action.dim() == 1 {
        let r = tga_has_rinf(&phi.group.action).unwrap();
        fields["group_has_r_infinity"] = json!(r);
        text += &format!("every automorphism of the group has R = infinity: {r}\n");
    }
    if a.count {
        let c = phi.orbit_count(ctx.jobs).map_err(|e| invalid("--count", e))?;
        fields["count"] = json!(c);
        text += &format!("twisted classes over {}: {c}\n", phi.group.field.spec());
    }
    Ok(Report::new("semidirect", fields, text))
}

fn parse_witt(flag: &str, p: u64, n: usize, s: Option<&String>) -> CliResult<WittVector> {
    let s = s.ok_or_else(|| invalid(flag, "required for this operation"))?;
    let v = parse_json(flag, s)?;
    let coords: Vec<i64> = v
        .as_array()
        .ok_or_else(|| invalid(flag, "expected a JSON list"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| invalid(flag, "integers only")))
        .collect::<CliResult<_>>()?;
    if coords.len() != n {
        return Err(invalid(flag, format!("expected {n} coordinates, got {}", coords.len())));
    }
    WittVector::from_i64(p, &coords).map_err(|e| invalid("--p", e))
}

fn witt(a: &WittArgs) -> CliResult<Report> {
    let (p, n) = (a.p, a.n);
    if !crate::field::is_prime(p) {
        return Err(invalid("--p", Error::NonPrimeModulus(p)));
    }
    if n == 0 || n > 6 {
        return Err(invalid("--n", "length must be between 1 and 6"));
    }
    let (result, text): (Value, String) = match a.op {
        WittOp::Add | WittOp::Mul => {
            let x = parse_witt("--a", p, n, a.a.as_ref())?;
            let y = parse_witt("--b", p, n, a.b.as_ref())?;
            let z = if a.op == WittOp::Add { witt_add(&x, &y) } else { witt_mul(&x, &y) }.map_err(failure)?;
            (json!(z.coords), format!("{x} {} {y} = {z}\n", if a.op == WittOp::Add { "+" } else { "*" }))
        }
        WittOp::Homothety => {
            let x = parse_witt("--a", p, n, a.a.as_ref())?;
            let z = witt_homothety(a.lambda, &x).map_err(|e| invalid("--lambda", e))?;
            (json!(z.coords), format!("[{}] * {x} = {z}\n", a.lambda % p))
        }
        WittOp::Fixed => {
            let fixed = witt_fixed_points(p, n, a.lambda).map_err(|e| invalid("--n", e))?;
            let v = witt_homothety_verdict(p, a.lambda).map_err(|e| invalid("--lambda", e))?;
            let list: Vec<String> = fixed.iter().map(|x| x.to_string()).collect();
            (
                json!({"fixed_points": fixed.iter().map(|x| x.coords.clone()).collect::<Vec<_>>(), "verdict": v}),
                format!("fixed points of [{}]: {}\n{}\n", a.lambda % p, list.join(" "), verdict_text(v)),
            )
        }
        WittOp::Inverse => {
            let x = parse_witt("--a", p, n, a.a.as_ref())?;
            match witt_inverse(&x) {
                Some(y) => (json!(y.coords), format!("{x}^-1 = {y}\n")),
                None => (Value::Null, format!("{x} is not invertible\n")),
            }
        }
    };
    let op = format!("{:?}", a.op).to_lowercase();
    Ok(Report::new("witt", json!({"p": p, "n": n, "op": op, "result": result}), text))
}

fn orbit_count(target: &OrbitTarget, ctx: &Ctx) -> CliResult<Report> {
    match target {
        OrbitTarget::Torus { matrix, field } => {
            let m = parse_int_matrix("--matrix", matrix)?;
            let phi = TorusAutomorphism::new(m.clone()).map_err(|e| invalid("--matrix", e))?;
            let f = parse_field("--field", field)?;
            let q = f.order().ok_or_else(|| invalid("--field", "finite field required"))?;
            let exhaustive = phi.class_count_exhaustive(&f, ctx.jobs).map_err(|e| invalid("--field", e))?;
            let formula = phi.class_count_finite(q).map_err(failure)?;
            if exhaustive != formula {
                return Err(failure(Error::OracleMismatch(format!("exhaustive {exhaustive} vs formula {formula}"))));
            }
            Ok(Report::new(
                "orbit-count",
                json!({"group": "torus", "matrix": m, "field": f.spec().to_string(), "count": exhaustive}),
                format!("twisted classes over {}: {exhaustive}\n", f.spec()),
            ))
        }
        OrbitTarget::Unipotent(a) => {
            let g = unipotent_group(a)?;
            let phi = build_automorphism(a, &g, ctx)?;
            let c = phi.orbit_count(ctx.jobs).map_err(|e| invalid("--type", e))?;
            let v = phi.reidemeister();
            Ok(Report::new(
                "orbit-count",
                json!({"group": "unipotent", "type": a.ty, "field": g.field().spec().to_string(), "count": c, "verdict": v}),
                format!("twisted classes over {}: {c}\n{}\n", g.field().spec(), verdict_text(v)),
            ))
        }
        OrbitTarget::Semidirect(a) => {
            let phi = build_semidirect(a)?;
            let c = phi.orbit_count(ctx.jobs).map_err(|e| invalid("--field", e))?;
            Ok(Report::new(
                "orbit-count",
                json!({"group": "semidirect", "field": phi.group.field.spec().to_string(), "count": c}),
                format!("twisted classes over {}: {c}\n", phi.group.field.spec()),
            ))
        }
    }
}

/// Named checks run by `twist selftest`.
pub fn selftest_checks(seed: u64, jobs: usize) -> Vec<(&'static str, std::result::Result<(), String>)> {
    let mut out = vec![];
    let check = |cond: bool, msg: String| if cond { Ok(()) } else { Err(msg) };

    out.push(("D4 triality matrix over F_7", (|| {
        let f = Field::prime(7).unwrap();
        let g = UnipotentGroup::build("D4", f.clone()).unwrap();
        let rho = g.root_system().parse_symmetry("cycle134").unwrap();
        let phi = UnipotentAutomorphism::new(
            &g,
            rho,
            Character::from_i64(&f, &[2, 3, 2, 3]),
            ExtremalParams::zero(&f),
            CentralParams::zero(4),
            g.identity(),
        )
        .map_err(|e| e.to_string())?;
        let want: [&[&[i64]]; 5] = [
            &[&[-1, 0, 0, 3], &[0, 2, 0, 0], &[2, 0, -1, 0], &[0, 0, 2, -1]],
            &[&[-1, 0, 2], &[6, -1, 0], &[0, 6, -1]],
            &[&[-1, 4, 0], &[0, -1, 4], &[5, 0, -1]],
            &[&[0]],
            &[&[2]],
        ];
        let m = phi.twist_matrix();
        for (b, w) in m.blocks.iter().zip(want) {
            let w: Vec<Vec<i64>> = w.iter().map(|r| r.to_vec()).collect();
            check(*b == Matrix::from_i64(&f, &w).unwrap(), format!("block {:?}", b.format(&f)))?;
        }
        Ok(())
    })()));

    out.push(("A2 identity has q^2+q-1 classes", (|| {
        for q in [5u64, 7] {
            let g = UnipotentGroup::build("A2", Field::prime(q).unwrap()).unwrap();
            let c = UnipotentAutomorphism::identity(&g).unwrap().orbit_count(jobs).map_err(|e| e.to_string())?;
            check(c == q * q + q - 1, format!("F_{q}: {c}"))?;
        }
        Ok(())
    })()));

    out.push(("A2 diagonal chi=(2,2) over F_5 has one class", (|| {
        let f = Field::prime(5).unwrap();
        let g = UnipotentGroup::build("A2", f.clone()).unwrap();
        let phi = UnipotentAutomorphism::diagonal(&g, Character::from_i64(&f, &[2, 2])).unwrap();
        let c = phi.orbit_count(jobs).map_err(|e| e.to_string())?;
        check(c == 1 && phi.reidemeister() == Verdict::One, format!("count {c}"))
    })()));

    out.push(("unipotent criterion matches orbit counts", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (t, q) in [("A2", 5), ("C2", 5), ("A3", 5)] {
            let g = UnipotentGroup::build(t, Field::prime(q).unwrap()).unwrap();
            for _ in 0..6 {
                let phi = UnipotentAutomorphism::random(&g, &mut rng).map_err(|e| e.to_string())?;
                let c = phi.orbit_count(jobs).map_err(|e| e.to_string())?;
                check((c == 1) == (phi.reidemeister() == Verdict::One), format!("{t} F_{q}: count {c}"))?;
            }
        }
        Ok(())
    })()));

    out.push(("torus closed form matches enumeration", (|| {
        let f = Field::prime(7).unwrap();
        for m in [vec![vec![2, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 0]], vec![vec![-1, 0], vec![0, 1]], vec![vec![1, 2], vec![0, 1]]] {
            let phi = TorusAutomorphism::new(m.clone()).unwrap();
            let a = phi.class_count_exhaustive(&f, jobs).map_err(|e| e.to_string())?;
            let b = phi.class_count_finite(7).map_err(|e| e.to_string())?;
            check(a == b, format!("{m:?}: {a} vs {b}"))?;
        }
        Ok(())
    })()));

    out.push(("semidirect theta2 with inversion is rejected", (|| {
        let f = Field::prime(5).unwrap();
        let g = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta2());
        let vp = VectorPart::from_matrix(&Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]).unwrap());
        let r = SemidirectAutomorphism::new(g, TorusAutomorphism::new(vec![vec![-1]]).unwrap(), vp);
        check(matches!(r, Err(Error::IncompatiblePair(_))), format!("{:?}", r.err()))
    })()));

    out.push(("W_2(F_5) ring axioms and homothety fixed points", (|| {
        let bad = crate::solvable::witt_ring_axioms(5, 2).map_err(|e| e.to_string())?;
        check(bad.is_none(), format!("{bad:?}"))?;
        let fixed = witt_fixed_points(5, 2, 2).map_err(|e| e.to_string())?;
        check(fixed == vec![WittVector::zero(5, 2)], format!("{fixed:?}"))
    })()));

    out
}

fn selftest(ctx: &Ctx) -> CliResult<Report> {
    let checks = selftest_checks(ctx.seed, ctx.jobs);
    let mut text = String::new();
    let mut items = vec![];
    let mut failed = 0;
    for (name, r) in &checks {
        match r {
            Ok(()) => text += &format!("ok    {name}\n"),
            Err(m) => {
                failed += 1;
                text += &format!("FAIL  {name}: {m}\n");
            }
        }
        items.push(json!({"name": name, "ok": r.is_ok(), "detail": r.as_ref().err()}));
    }
    if failed > 0 {
        return Err(CliError { code: 1, message: format!("{failed} selftest check(s) failed\n{text}") });
    }
    Ok(Report::new("selftest", json!({"checks": items}), text))
}
