//! `ncgeo`: JSON reports for the geometry of finite groups.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncgeo::calculus::{exterior_dimension, quadratic_dimension, Calculus, GroupFunction, RankMethod, ScaleLimits};
use ncgeo::cohomology::{
    check_flat_lines, conjugate_calculus_check, de_rham_h1, flat_constant_grid_search, on_flat_lines,
    s4_cross_relations_check,
};
use ncgeo::dirac::{DiracError, SpinGeometry};
use ncgeo::group::{ClassCalculus, FiniteGroup, GroupError, ProductPattern};
use ncgeo::linalg::{parse_rational, Cyclotomic};
use ncgeo::riemann::{self, Connection, Lift, Metric, PatternParameters, RiemannError};

use report::Report;

const EXIT_PRECONDITION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_GROUP_SPEC: u8 = 65;

#[derive(Parser)]
#[command(name = "ncgeo", version, about = "Exact noncommutative Riemannian geometry on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Builtin group (a4, s3, s4, sl2z3, klein, cyclic(n)) or a group-spec JSON file.
    #[arg(long, default_value = "a4")]
    group: String,
    /// Label of an element of the conjugacy class to use.
    #[arg(long)]
    class: Option<String>,
}

#[derive(Args, Clone)]
struct MuArg {
    /// Metric parameter μ as a rational "p/q".
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    mu: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Modular,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftArg {
    Canonical,
    Antisymmetrizer,
}

impl LiftArg {
    fn lift(self) -> Lift {
        match self {
            LiftArg::Canonical => Lift::Canonical,
            LiftArg::Antisymmetrizer => Lift::Antisymmetrizer,
        }
    }

    fn name(self) -> &'static str {
        match self {
            LiftArg::Canonical => "canonical",
            LiftArg::Antisymmetrizer => "antisymmetrizer",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Group, class, cyclicity and product pattern.
    Info(GroupArgs),
    /// Dimensions of the exterior algebra by degree.
    Extdims {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Lift the default scale caps.
        #[arg(long)]
        unsupported_scale: bool,
        /// Also report the quadratic-algebra dimensions.
        #[arg(long)]
        quadratic: bool,
    },
    /// Degree-two relations and the chosen basis of 2-forms.
    Relations(GroupArgs),
    /// Invariant metrics and η for a given μ.
    Metric {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        mu: MuArg,
    },
    /// Torsion-free and torsion+cotorsion-free connection moduli.
    Connections {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        mu: MuArg,
    },
    /// The connection e_a − θ/n and its properties.
    LeviCivita {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        mu: MuArg,
    },
    /// Curvature 2-forms and Riemann tensor of a connection.
    Curvature {
        #[command(flatten)]
        group: GroupArgs,
        /// Connection JSON file; defaults to e_a − θ/n.
        #[arg(long)]
        connection: Option<PathBuf>,
    },
    /// Ricci tensor of a connection.
    Ricci {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        connection: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "canonical")]
        lift: LiftArg,
    },
    /// Ricci-flat connections within the torsion-free family.
    RicciFlat {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "canonical")]
        lift: LiftArg,
    },
    /// Dirac operator on A4 spinors.
    Dirac {
        #[command(flatten)]
        mu: MuArg,
        #[arg(long)]
        spectrum: bool,
        #[arg(long)]
        eigenbasis: bool,
    },
    /// Wave operator on A4.
    Laplacian {
        #[arg(long)]
        spectrum: bool,
    },
    /// Nonabelian Fourier coefficients of a function on A4.
    Fourier {
        /// JSON object mapping element names to values.
        function: PathBuf,
    },
    /// First de Rham cohomology.
    Cohomology(GroupArgs),
    /// Constant flat U(1) connections.
    FlatU1 {
        #[command(flatten)]
        group: GroupArgs,
        /// Verify the five constant flat lines.
        #[arg(long)]
        check_families: bool,
    },
    /// S4 cross relations and the conjugate calculus on A4.
    S4Check,
}

enum Failure {
    Usage(String),
    GroupSpec(Value),
    Precondition(Value),
}

fn precondition(kind: &str, message: impl ToString) -> Failure {
    Failure::Precondition(json!({ "kind": kind, "message": message.to_string() }))
}

fn group_failure(e: GroupError) -> Failure {
    let mut diag = json!({ "kind": "malformed-group-spec", "message": e.to_string() });
    if let GroupError::NotAssociative { a, b, c } = &e {
        diag["triple"] = json!([a, b, c]);
    }
    Failure::GroupSpec(diag)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report.into_json()).expect("report serializes"));
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, error) = match failure {
                Failure::Usage(msg) => (EXIT_USAGE, json!({ "kind": "usage", "message": msg })),
                Failure::GroupSpec(diag) => (EXIT_GROUP_SPEC, diag),
                Failure::Precondition(diag) => (EXIT_PRECONDITION, diag),
            };
            eprintln!("{}", serde_json::to_string_pretty(&json!({ "schema": report::SCHEMA, "error": error })).expect("diagnostic serializes"));
            ExitCode::from(code)
        }
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup, Failure> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| group_failure(GroupError::Malformed(e.to_string())))?;
        return FiniteGroup::from_json(&text).map_err(group_failure);
    }
    FiniteGroup::builtin(spec).map_err(|_| {
        Failure::GroupSpec(json!({
            "kind": "malformed-group-spec",
            "message": format!("`{spec}` is neither a builtin group nor a readable group-spec file"),
        }))
    })
}

fn load_class(args: &GroupArgs) -> Result<ClassCalculus, Failure> {
    let group = load_group(&args.group)?;
    let label = match &args.class {
        Some(l) => l.clone(),
        None if group.index_of("t").is_ok() => "t".to_string(),
        None => group.names().get(1).cloned().ok_or_else(|| precondition("trivial-group", "group has no class to use"))?,
    };
    ClassCalculus::from_label(group, &label).map_err(|e| precondition("class", e))
}

fn group_inputs(args: &GroupArgs, class: &ClassCalculus) -> Value {
    json!({ "group": args.group, "class": class.labels() })
}

fn parse_mu(text: &str) -> Result<Cyclotomic, Failure> {
    parse_rational(text)
        .map(Cyclotomic::from_rational)
        .map_err(|e| Failure::Usage(format!("--mu expects a rational p/q: {e}")))
}

fn riemann_failure(e: RiemannError) -> Failure {
    let kind = match e {
        RiemannError::DegenerateMetric(_) | RiemannError::SingularMetric => "degenerate-metric",
        RiemannError::NeedsSquaresMixed => "needs-squares-mixed",
        _ => "solver",
    };
    precondition(kind, e)
}

fn dirac_failure(e: DiracError) -> Failure {
    match e {
        DiracError::Metric(m) => riemann_failure(m),
        other => precondition("dirac", other),
    }
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Info(args) => info(&args),
        Command::Extdims { group, max_degree, method, unsupported_scale, quadratic } => {
            extdims(&group, max_degree, method, unsupported_scale, quadratic)
        }
        Command::Relations(args) => relations(&args),
        Command::Metric { group, mu } => metric(&group, &mu.mu),
        Command::Connections { group, mu } => connections(&group, &mu.mu),
        Command::LeviCivita { group, mu } => levi_civita(&group, &mu.mu),
        Command::Curvature { group, connection } => curvature(&group, connection.as_deref()),
        Command::Ricci { group, connection, lift } => ricci(&group, connection.as_deref(), lift),
        Command::RicciFlat { group, lift } => ricci_flat(&group, lift),
        Command::Dirac { mu, spectrum, eigenbasis } => dirac(&mu.mu, spectrum, eigenbasis),
        Command::Laplacian { spectrum } => laplacian(spectrum),
        Command::Fourier { function } => fourier(&function),
        Command::Cohomology(args) => cohomology(&args),
        Command::FlatU1 { group, check_families } => flat_u1(&group, check_families),
        Command::S4Check => s4_check(),
    }
}

fn pattern_name(p: ProductPattern) -> &'static str {
    match p {
        ProductPattern::SquaresSeparate => "squares-separate",
        ProductPattern::SquaresMixed => "squares-mixed",
        ProductPattern::Other => "other",
    }
}

fn info(args: &GroupArgs) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let group = class.group();
    let mut r = Report::new("info", group_inputs(args, &class));
    r.group(group);
    let cyc = class.cyclicity();
    let gen = class.generation();
    r.result("order", json!(group.order()));
    r.result("elements", json!(group.names()));
    r.result("class", json!(class.labels()));
    r.result(
        "ad",
        json!(class.ad().iter().map(|row| row.iter().map(|&b| class.label(b)).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    r.result(
        "cyclic",
        json!({
            "cyclic": cyc.cyclic,
            "witness": cyc.witness.map(|w| class.label(w).to_string()),
            "witnesses": cyc.witnesses.iter().map(|&w| class.label(w)).collect::<Vec<_>>(),
        }),
    );
    r.result("product_pattern", json!(class.classify_products().ok().map(pattern_name)));
    r.result(
        "generation",
        json!({
            "generates": gen.generates,
            "closure": gen.closure.iter().map(|&g| group.name(g)).collect::<Vec<_>>(),
        }),
    );
    r.check("group_axioms", true);
    r.check("class_closed_under_conjugation", true);
    Ok(r)
}

fn extdims(args: &GroupArgs, max_degree: usize, method: MethodArg, unsupported: bool, quadratic: bool) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mut inputs = group_inputs(args, &class);
    inputs["max_degree"] = json!(max_degree);
    inputs["method"] = json!(match method {
        MethodArg::Auto => "auto",
        MethodArg::Exact => "exact",
        MethodArg::Modular => "modular",
    });
    inputs["unsupported_scale"] = json!(unsupported);
    let mut r = Report::new("extdims", inputs);
    r.group(class.group());
    let limits = ScaleLimits { unsupported_scale: unsupported, ..ScaleLimits::default() };
    let method = match method {
        MethodArg::Auto => RankMethod::Auto,
        MethodArg::Exact => RankMethod::Exact,
        MethodArg::Modular => RankMethod::Modular,
    };
    let braid = ncgeo::calculus::BraidData::new(&class);
    let mut dims = Vec::new();
    let mut details = Vec::new();
    for m in 0..=max_degree {
        let d = exterior_dimension(&braid, m, method, &limits).map_err(|e| precondition("scale-cap", e))?;
        if let Some(cert) = &d.certificate {
            let agreeing = cert.ranks.iter().filter(|&&k| k == cert.rank).count();
            r.check(&format!("degree_{m}_two_primes_agree"), agreeing >= 2);
        }
        dims.push(d.dimension);
        details.push(serde_json::to_value(&d).expect("serializes"));
    }
    r.result("dims", json!(dims));
    r.result("degrees", Value::Array(details));
    if quadratic {
        let q = (0..=max_degree)
            .map(|m| match m {
                0 => Ok(1),
                1 => Ok(class.size()),
                _ => quadratic_dimension(&braid, m, &limits).map_err(|e| precondition("scale-cap", e)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let first_gap = q.iter().zip(&dims).position(|(a, b)| a != b);
        r.result("quadratic_dims", json!(q));
        r.result("first_non_quadratic_degree", json!(first_gap));
    }
    r.check("degree_0_is_1", dims[0] == 1);
    if max_degree >= 1 {
        r.check("degree_1_is_class_size", dims[1] == class.size());
    }
    Ok(r)
}

fn tensor_label(class: &ClassCalculus, index: usize) -> String {
    let n = class.size();
    format!("e_{}(x)e_{}", class.label(index / n), class.label(index % n))
}

fn relations(args: &GroupArgs) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mut r = Report::new("relations", group_inputs(args, &class));
    r.group(class.group());
    let calc = Calculus::new(class.clone());
    let rels: Vec<Value> = calc
        .relations()
        .iter()
        .map(|v| {
            let mut m = serde_json::Map::new();
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    m.insert(tensor_label(&class, i), report::cyc(c));
                }
            }
            Value::Object(m)
        })
        .collect();
    r.result("relation_dim", json!(rels.len()));
    r.result("relations", Value::Array(rels));
    r.result("two_form_dim", json!(calc.two_form_dim()));
    r.result("two_form_basis", json!((0..calc.two_form_dim()).map(|b| calc.two_form_label(b)).collect::<Vec<_>>()));
    if class.size() == 4 && class.is_cyclic() {
        let same = ncgeo::cohomology::same_span(calc.relations(), &ncgeo::cohomology::cyclic_class_relations());
        r.check("cyclic_relation_pattern", same);
    }
    let theta = calc.theta();
    r.check("theta_wedge_theta_zero", calc.wedge(&theta, &theta).is_zero());
    Ok(r)
}

fn metric(args: &GroupArgs, mu_text: &str) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mu = parse_mu(mu_text)?;
    let mut inputs = group_inputs(args, &class);
    inputs["mu"] = json!(mu_text);
    let mut r = Report::new("metric", inputs);
    r.group(class.group());
    let calc = Calculus::new(class);
    let space = riemann::invariant_bilinear_space(&calc);
    let m = Metric::from_mu(&calc, &mu).map_err(riemann_failure)?;
    r.result("invariant_dim", json!(space.len()));
    r.result("invariant_basis", Value::Array(space.iter().map(report::matrix).collect()));
    r.result("eta", report::matrix(&m.eta));
    r.result("eta_inverse", report::matrix(&m.eta_inv));
    r.result("degenerate_mu", report::cyc(&Cyclotomic::from_ratio(-1, calc.generators() as i64)));
    r.check("eta_times_inverse_is_identity", m.eta.mul(&m.eta_inv) == ncgeo::linalg::ExactMatrix::identity(calc.generators()));
    r.check("wedge_of_metric_zero", calc.wedge_tensor(&m.tensor(&calc).coeffs).is_zero());
    r.check("eta_in_invariant_space", {
        let flat: Vec<Vec<Cyclotomic>> = space.iter().map(|s| s.to_rows().concat()).collect();
        ncgeo::linalg::in_span(&flat, &m.eta.to_rows().concat())
    });
    Ok(r)
}

fn affine_json(calc: &Calculus, space: &ncgeo::linalg::AffineSpace) -> Value {
    json!({
        "dimension": space.dimension(),
        "particular": report::connection(calc, &Connection::from_vector(calc, &space.particular)),
        "basis": space.basis.iter().map(|v| report::connection(calc, &Connection::from_vector(calc, v))).collect::<Vec<_>>(),
    })
}

fn connections(args: &GroupArgs, mu_text: &str) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mu = parse_mu(mu_text)?;
    let mut inputs = group_inputs(args, &class);
    inputs["mu"] = json!(mu_text);
    let mut r = Report::new("connections", inputs);
    r.group(class.group());
    let calc = Calculus::new(class);
    let m = Metric::from_mu(&calc, &mu).map_err(riemann_failure)?;
    let tf = riemann::solve_torsion_free(&calc).map_err(riemann_failure)?;
    let tcf = riemann::solve_torsion_cotorsion_free(&calc, &m).map_err(riemann_failure)?;
    let lc = riemann::levi_civita(&calc);
    r.check("levi_civita_in_torsion_free", tf.contains(&lc.to_vector()));
    let sums_vanish = Connection::from_vector(&calc, &tf.particular).sum().is_zero()
        && tf.basis.iter().all(|v| Connection::from_vector(&calc, v).sum().is_zero());
    r.check("sum_of_components_zero", sums_vanish);
    if calc.generators() == 4 {
        let patterned = PatternParameters::extract(&calc, &Connection::from_vector(&calc, &tf.particular), false).is_some()
            && tf.basis.iter().all(|v| PatternParameters::extract(&calc, &Connection::from_vector(&calc, v), true).is_some());
        r.check("torsion_free_pattern", patterned);
    }
    r.result("torsion_free", affine_json(&calc, &tf));
    r.result("torsion_cotorsion_free", affine_json(&calc, &tcf));
    Ok(r)
}

fn levi_civita(args: &GroupArgs, mu_text: &str) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mu = parse_mu(mu_text)?;
    let mut inputs = group_inputs(args, &class);
    inputs["mu"] = json!(mu_text);
    let mut r = Report::new("levi-civita", inputs);
    r.group(class.group());
    let calc = Calculus::new(class.clone());
    let m = Metric::from_mu(&calc, &mu).map_err(riemann_failure)?;
    let lc = riemann::levi_civita(&calc);
    let n = calc.generators();
    let torsion_free = (0..n).all(|a| riemann::torsion(&calc, &lc, a).is_zero());
    let cotorsion_free = (0..n).all(|a| riemann::cotorsion(&calc, &m, &lc, a).is_zero());
    let regular = riemann::is_regular(&calc, &lc);
    let ricci_i = riemann::ricci(&calc, &lc, Lift::Canonical).is_zero();
    let ricci_ip = riemann::ricci(&calc, &lc, Lift::Antisymmetrizer).is_zero();
    let mut flags = json!({
        "torsion_free": torsion_free,
        "cotorsion_free": cotorsion_free,
        "regular": regular,
        "ricci_flat_canonical": ricci_i,
        "ricci_flat_antisymmetrizer": ricci_ip,
    });
    r.check("torsion_zero", torsion_free);
    r.check("cotorsion_zero", cotorsion_free);
    r.check("regular", regular);
    r.check("ricci_zero_canonical", ricci_i);
    r.check("ricci_zero_antisymmetrizer", ricci_ip);
    if n == 4 && class.classify_products() == Ok(ProductPattern::SquaresMixed) {
        let table = riemann::regularity_system_squares_mixed(&calc, &lc).iter().all(|w| w.is_zero());
        flags["squares_mixed_regularity"] = json!(table);
        r.check("squares_mixed_regularity", table);
    }
    if let Some(p) = PatternParameters::extract(&calc, &lc, false) {
        let constant = |f: &GroupFunction| f.as_constant().map(report::cyc);
        r.result(
            "pattern",
            json!({
                "alpha": constant(&p.alpha),
                "beta": constant(&p.beta),
                "gamma": constant(&p.gamma),
                "lambda": constant(&p.lambda),
            }),
        );
    }
    r.result("connection", json!({ "comps": report::connection(&calc, &lc), "flags": flags }));
    Ok(r)
}

fn load_connection(calc: &Calculus, path: Option<&Path>) -> Result<(Connection, Value), Failure> {
    match path {
        None => Ok((riemann::levi_civita(calc), json!("levi-civita"))),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| precondition("connection-file", e))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| precondition("connection-file", e))?;
            let conn = report::parse_connection(calc, &value).map_err(|e| precondition("connection-file", e))?;
            Ok((conn, json!(p.display().to_string())))
        }
    }
}

fn curvature(args: &GroupArgs, path: Option<&Path>) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let calc = Calculus::new(class.clone());
    let (conn, source) = load_connection(&calc, path)?;
    let mut inputs = group_inputs(args, &class);
    inputs["connection"] = source;
    let mut r = Report::new("curvature", inputs);
    r.group(class.group());
    let f = riemann::curvature(&calc, &conn);
    let rm: Vec<Value> = (0..calc.generators())
        .map(|a| report::two_form_tensor_one(&calc, &riemann::riemann_on(&calc, &f, &calc.e(a))))
        .collect();
    r.result("curvature", Value::Array(f.iter().map(|w| report::two_form(&calc, w)).collect()));
    r.result("riemann", Value::Array(rm));
    r.check("regular", riemann::is_regular(&calc, &conn));
    r.check("torsion_zero", (0..calc.generators()).all(|a| riemann::torsion(&calc, &conn, a).is_zero()));
    Ok(r)
}

fn ricci(args: &GroupArgs, path: Option<&Path>, lift: LiftArg) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let calc = Calculus::new(class.clone());
    let (conn, source) = load_connection(&calc, path)?;
    let mut inputs = group_inputs(args, &class);
    inputs["connection"] = source;
    inputs["lift"] = json!(lift.name());
    let mut r = Report::new("ricci", inputs);
    r.group(class.group());
    let ric = riemann::ricci(&calc, &conn, lift.lift());
    r.check("lift_splits_wedge", {
        (0..calc.two_form_dim()).all(|beta| {
            let (a, b) = calc.two_form_basis()[beta];
            let w = calc.wedge(&calc.e(a), &calc.e(b));
            lift != LiftArg::Canonical || calc.wedge_tensor(&riemann::lift(&calc, &w, lift.lift()).coeffs) == w
        })
    });
    r.result("ricci_zero", json!(ric.is_zero()));
    r.result("ricci", report::tensor_square(&calc, &ric));
    Ok(r)
}

impl PartialEq for LiftArg {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name()
    }
}

fn ricci_flat(args: &GroupArgs, lift: LiftArg) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mut inputs = group_inputs(args, &class);
    inputs["lift"] = json!(lift.name());
    let mut r = Report::new("ricci-flat", inputs);
    r.group(class.group());
    let calc = Calculus::new(class);
    let sol = riemann::solve_ricci_flat(&calc, lift.lift()).map_err(riemann_failure)?;
    let lc = riemann::levi_civita(&calc);
    r.check("unique_solution", sol.solution.basis.is_empty());
    r.check("diagonal_rank_full", sol.diagonal_rank == sol.family_dimension);
    r.check("ricci_zero", riemann::ricci(&calc, &sol.connection, lift.lift()).is_zero());
    r.check("equals_levi_civita", sol.connection == lc);
    r.result("family_dimension", json!(sol.family_dimension));
    r.result("diagonal_equations", json!(sol.diagonal_equations));
    r.result("diagonal_rank", json!(sol.diagonal_rank));
    r.result("connection", json!({ "comps": report::connection(&calc, &sol.connection) }));
    if let Some(p) = &sol.parameters {
        let constant = |f: &GroupFunction| f.as_constant().map(report::cyc);
        r.result(
            "pattern",
            json!({
                "alpha": constant(&p.alpha),
                "beta": constant(&p.beta),
                "gamma": constant(&p.gamma),
                "lambda": constant(&p.lambda),
            }),
        );
    }
    Ok(r)
}

fn spectrum_json(s: &ncgeo::dirac::Spectrum) -> Value {
    Value::Array(s.pairs.iter().map(|(v, m)| json!({ "eigenvalue": report::cyc(v), "multiplicity": m })).collect())
}

fn dirac(mu_text: &str, spectrum: bool, eigenbasis: bool) -> Result<Report, Failure> {
    let mu = parse_mu(mu_text)?;
    let mut r = Report::new("dirac", json!({ "group": "a4", "mu": mu_text, "spectrum": spectrum, "eigenbasis": eigenbasis }));
    let s = SpinGeometry::a4();
    r.group(s.group());
    let d = s.levi_civita_dirac(&mu).map_err(dirac_failure)?;
    let offset = s.partial_gamma(&mu).map_err(dirac_failure)?.sub(&ncgeo::linalg::ExactMatrix::scalar(36, &Cyclotomic::from_int(4)));
    r.check("equals_partial_gamma_minus_4", d == offset);
    let gammas = s.gamma_matrices(&mu).map_err(dirac_failure)?;
    r.result("gamma", Value::Array(gammas.iter().map(report::matrix).collect()));
    r.result("casimir", report::matrix(&s.casimir_action(&mu).map_err(dirac_failure)?));
    r.result("matrix", report::matrix(&d));
    if spectrum {
        let spec = s.dirac_spectrum(&mu).map_err(dirac_failure)?;
        r.check("spectrum_complete", spec.total() == 36);
        r.result("spectrum", spectrum_json(&spec));
        r.result("spectrum_source", json!(if mu.is_zero() { "closed-form" } else { "oracle-candidates" }));
    }
    if eigenbasis {
        if !mu.is_zero() {
            return Err(precondition("eigenbasis", "the explicit eigenbasis is for mu = 0"));
        }
        let basis = s.dirac_eigenbasis();
        let ok = basis.iter().all(|m| d.mul_vec(&m.values) == m.values.iter().map(|v| v * &m.eigenvalue).collect::<Vec<_>>());
        r.check("eigenvectors_verified", ok);
        r.check(
            "eigenbasis_rank_36",
            ncgeo::linalg::span_rank(&basis.iter().map(|m| m.values.clone()).collect::<Vec<_>>()) == 36,
        );
        let chi = s.chi_operator();
        r.check("chi_commutes", chi.mul(&d) == d.mul(&chi));
        let gamma = s.chirality_gamma();
        r.check("gamma_anticommutes", gamma.mul(&d).add(&d.mul(&gamma)).is_zero());
        r.result("eigenbasis", serde_json::to_value(&basis).expect("serializes"));
    }
    Ok(r)
}

fn laplacian(spectrum: bool) -> Result<Report, Failure> {
    let mut r = Report::new("laplacian", json!({ "group": "a4", "spectrum": spectrum }));
    let s = SpinGeometry::a4();
    r.group(s.group());
    let lap = s.laplacian();
    let shifted = s.d0().shift(&Cyclotomic::from_int(4));
    r.check("square_of_d0_form", lap == shifted.mul(&shifted).scale(&Cyclotomic::from_ratio(-1, 4)));
    r.check("metric_form", Ok(&lap) == s.laplacian_from_metric(&Cyclotomic::zero()).as_ref());
    r.result("matrix", report::matrix(&lap));
    if spectrum {
        let spec = s.laplacian_spectrum().map_err(dirac_failure)?;
        r.check("spectrum_complete", spec.total() == 12);
        r.result("spectrum", spectrum_json(&spec));
        r.result("d0_spectrum", spectrum_json(&s.d0_spectrum().map_err(dirac_failure)?));
    }
    Ok(r)
}

fn fourier(path: &Path) -> Result<Report, Failure> {
    let s = SpinGeometry::a4();
    let group = s.group();
    let text = std::fs::read_to_string(path).map_err(|e| precondition("function-file", e))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| precondition("function-file", e))?;
    let obj = value.as_object().ok_or_else(|| precondition("function-file", "expected an object of element values"))?;
    let mut f = vec![Cyclotomic::zero(); group.order()];
    for (name, v) in obj {
        let g = group.index_of(name).map_err(|e| precondition("function-file", e))?;
        f[g] = serde_json::from_value(v.clone()).map_err(|e| precondition("function-file", e))?;
    }
    let mut r = Report::new("fourier", json!({ "group": "a4", "function": path.display().to_string() }));
    r.group(group);
    let coeffs = s.fourier_decompose(&f).map_err(dirac_failure)?;
    r.check("reconstruction_exact", s.fourier_reconstruct(&coeffs) == f);
    r.result("coefficients", serde_json::to_value(&coeffs).expect("serializes"));
    Ok(r)
}

fn cohomology(args: &GroupArgs) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mut r = Report::new("cohomology", group_inputs(args, &class));
    r.group(class.group());
    let calc = Calculus::new(class);
    let h = de_rham_h1(&calc);
    r.result("h1_dim", json!(h.dim));
    r.result("ker_d1", json!(h.ker_d1_dim));
    r.result("im_d0", json!(h.im_d0_dim));
    r.result("representative", json!(if h.theta_closed && !h.theta_exact && h.dim == 1 { Some("theta") } else { None }));
    r.result("theta", report::one_form(&calc, &calc.theta()));
    r.check("d1_d0_zero", h.composite_zero);
    r.check("theta_closed", h.theta_closed);
    r.check("theta_not_exact", !h.theta_exact);
    Ok(r)
}

fn flat_u1(args: &GroupArgs, check_families: bool) -> Result<Report, Failure> {
    let class = load_class(args)?;
    let mut inputs = group_inputs(args, &class);
    inputs["check_families"] = json!(check_families);
    let mut r = Report::new("flat-u1", inputs);
    r.group(class.group());
    let calc = Calculus::new(class);
    let params = [
        Cyclotomic::zero(),
        Cyclotomic::one(),
        Cyclotomic::from_int(-2),
        Cyclotomic::omega(),
        Cyclotomic::from_ratio(5, 3),
    ];
    if check_families {
        let checks = check_flat_lines(&calc, &params);
        for ch in &checks {
            r.check(&format!("flat:{}", ch.line), ch.flat.iter().all(|f| *f));
        }
        r.result("families", serde_json::to_value(&checks).expect("serializes"));
    }
    let grid: Vec<Cyclotomic> = (-2..=2).map(Cyclotomic::from_int).collect();
    if calc.generators() <= 4 {
        let found = flat_constant_grid_search(&calc, &grid);
        r.check("grid_solutions_on_lines", found.iter().all(|c| on_flat_lines(c)));
        r.result("grid", json!({ "values": [-2, -1, 0, 1, 2], "flat_points": found.len(), "heuristic": true }));
    }
    Ok(r)
}

fn s4_check() -> Result<Report, Failure> {
    let mut r = Report::new("s4-check", json!({ "group": "s4", "class": "(123)" }));
    r.group(&FiniteGroup::symmetric4());
    let s4 = s4_cross_relations_check().map_err(|e| precondition("s4", e))?;
    for (name, ok) in &s4.cross_relations {
        r.check(&format!("cross:{name}"), *ok);
    }
    r.check("unbarred_cyclic_relations", s4.unbarred_subalgebra);
    r.check("barred_opposite_relations", s4.barred_subalgebra);
    let a4 = ClassCalculus::from_label(FiniteGroup::alternating4(), "t").expect("builtin");
    let conj = conjugate_calculus_check(&a4).map_err(|e| precondition("conjugate", e))?;
    r.check("partial_transpose_is_square", conj.transpose_is_square);
    r.check("conjugate_class_cyclic", conj.conjugate_cyclic);
    r.check("conjugate_relations_standard", conj.conjugate_relations_standard);
    r.result("s4", serde_json::to_value(&s4).expect("serializes"));
    r.result("conjugate", serde_json::to_value(&conj).expect("serializes"));
    Ok(r)
}
