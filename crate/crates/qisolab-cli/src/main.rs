//! Command-line front end.
//!
//! Every subcommand prints one machine-readable report to stdout (JSON by
//! default, CSV for flat tables) and exits with 0 when all checks pass,
//! 1 when any check fails, and 2 on usage or input errors.  Reports are
//! deterministic: identical invocations produce byte-identical output.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qisolab::action::{build_action, check_action};
use qisolab::group::Group;
use qisolab::laplacian;
use qisolab::matrix::is_magic_unitary;
use qisolab::model::MatrixModel;
use qisolab::presentation::{check, coproduct_check, evaluate, Presentation};
use qisolab::presets::{catalog, preset};
use qisolab::real::{support_certificate, t_operator};

/// Environment variable overriding the ball-radius cap for infinite groups.
const BALL_CAP_ENV: &str = "QISOLAB_BALL_CAP";

#[derive(Parser)]
#[command(
    name = "qisolab",
    version,
    about = "Exact verification workbench for isometric quantum symmetries of group C*-algebras"
)]
struct Cli {
    /// Output format (csv is available for flat tables only).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere cardinalities |W_0|, ..., |W_N| of a group.
    Spheres {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_n: usize,
        /// Also list the elements of each sphere.
        #[arg(long)]
        elements: bool,
    },
    /// Truncated heat trace with a certified tail bound.
    HeatTrace {
        #[arg(long)]
        group: String,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        max_n: usize,
    },
    /// Exact Laplacian coefficient reports.
    Laplacian {
        #[command(subcommand)]
        which: LaplacianCmd,
    },
    /// Check a presentation file against a model file.
    Verify {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        model: String,
    },
    /// Check a built-in preset: relations, corep unitarity, coproduct
    /// consistency, and the magic-unitary grid where applicable.
    VerifyPreset { name: String },
    /// Build the induced action of a preset and run all structural checks.
    ActionCheck {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Support certificate for T(g,h) = [rho_{g^-1}, [D, lambda_h]].
    TOperator {
        #[arg(long)]
        group: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        r0: usize,
        #[arg(long)]
        r: usize,
    },
    /// Real-structure extension checks for a preset.
    RealCheck {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// List the preset catalog.
    Presets,
}

#[derive(Subcommand)]
enum LaplacianCmd {
    /// Per-element exact coefficients of a finite group.
    Finite {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Stabilized sphere ratios of a free group, both readings.
    Free {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        probe_depth: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { report, all_pass, csv }) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                }
                Format::Csv => match csv {
                    Some(text) => print!("{text}"),
                    None => {
                        eprintln!("error: this report does not flatten to csv; use --format json");
                        return ExitCode::from(2);
                    }
                },
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    report: Value,
    all_pass: bool,
    /// Flat rendering, when the report is a flat table.
    csv: Option<String>,
}

/// Rounds to 15 significant digits so reports are byte-stable across runs.
fn sig15(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        format!("{x:.14e}").parse().unwrap_or(x)
    }
}

fn parse_group(spec: &str) -> Result<Group, String> {
    let group = Group::parse_spec(spec).map_err(|e| e.to_string())?;
    match std::env::var(BALL_CAP_ENV) {
        Ok(v) => {
            let cap: usize = v
                .parse()
                .map_err(|_| format!("{BALL_CAP_ENV} must be a positive integer, got `{v}`"))?;
            Ok(group.with_cap(cap))
        }
        Err(_) => Ok(group),
    }
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Spheres { group, max_n, elements } => spheres(group, *max_n, *elements),
        Command::HeatTrace { group, t, max_n } => heat_trace(group, *t, *max_n),
        Command::Laplacian { which } => match which {
            LaplacianCmd::Finite { group, max_length } => laplacian_finite(group, *max_length),
            LaplacianCmd::Free { rank, max_len, probe_depth } => {
                laplacian_free(*rank, *max_len, probe_depth.unwrap_or(max_len + 4))
            }
        },
        Command::Verify { presentation, model } => verify_files(presentation, model),
        Command::VerifyPreset { name } => verify_preset(name),
        Command::ActionCheck { preset, radius } => action_check(preset, *radius),
        Command::TOperator { group, g, h, r0, r } => t_operator_cmd(group, g, h, *r0, *r),
        Command::RealCheck { preset, radius } => real_check(preset, *radius),
        Command::Presets => presets_cmd(),
    }
}

fn spheres(spec: &str, max_n: usize, elements: bool) -> Result<Outcome, String> {
    let group = parse_group(spec)?;
    let ball = group.ball_with_words(max_n).map_err(|e| e.to_string())?;
    let mut terms = Vec::new();
    let mut csv = String::from("n,count\n");
    for n in 0..=max_n {
        let sphere: Vec<&qisolab::Elem> = ball
            .iter()
            .filter(|(_, w)| w.len() == n)
            .map(|(e, _)| e)
            .collect();
        if sphere.is_empty() && n > 0 {
            continue;
        }
        let mut entry = Map::new();
        entry.insert("n".into(), json!(n));
        entry.insert("count".into(), json!(sphere.len()));
        if elements {
            entry.insert(
                "elements".into(),
                json!(sphere.iter().map(|e| group.display_element(e)).collect::<Vec<_>>()),
            );
        }
        csv.push_str(&format!("{n},{}\n", sphere.len()));
        terms.push(Value::Object(entry));
    }
    let mut report = header(&format!("spheres --group {spec} --max-n {max_n}"));
    report.insert("group".into(), json!(group.spec()));
    report.insert("spheres".into(), json!(terms));
    Ok(Outcome { report: Value::Object(report), all_pass: true, csv: Some(csv) })
}

fn heat_trace(spec: &str, t: f64, max_n: usize) -> Result<Outcome, String> {
    let group = parse_group(spec)?;
    let h = qisolab::dirac::heat_trace(&group, t, max_n).map_err(|e| e.to_string())?;
    let mut report = header(&format!("heat-trace --group {spec} --t {t} --max-n {max_n}"));
    report.insert("group".into(), json!(group.spec()));
    report.insert("t".into(), json!(sig15(t)));
    report.insert("value".into(), json!(sig15(h.value)));
    report.insert("tail_bound".into(), json!(sig15(h.tail_bound)));
    report.insert(
        "terms".into(),
        json!(h
            .terms
            .iter()
            .map(|(n, card, term)| json!({"n": n, "card": card, "term": sig15(*term)}))
            .collect::<Vec<_>>()),
    );
    let mut csv = String::from("n,card,term\n");
    for (n, card, term) in &h.terms {
        csv.push_str(&format!("{n},{card},{}\n", sig15(*term)));
    }
    Ok(Outcome { report: Value::Object(report), all_pass: true, csv: Some(csv) })
}

fn class_json(c: &qisolab::laplacian::LengthClass) -> Value {
    let mut m = Map::new();
    m.insert("length".into(), json!(c.length));
    if let Some(v) = &c.coefficient {
        m.insert("coefficient".into(), json!(v.to_string()));
    }
    if let Some(v) = &c.letterwise {
        m.insert("letterwise".into(), json!(v.to_string()));
    }
    m.insert(
        "values".into(),
        json!(c
            .values
            .iter()
            .map(|(e, v)| json!({"element": e, "coefficient": v.to_string()}))
            .collect::<Vec<_>>()),
    );
    Value::Object(m)
}

fn report_flags(report: &qisolab::laplacian::LaplacianReport, out: &mut Map<String, Value>) {
    out.insert("constant_on_spheres".into(), json!(report.constant_on_spheres));
    out.insert(
        "injective_across_lengths".into(),
        json!(report.injective_across_lengths),
    );
    out.insert("kernel_dim_one".into(), json!(report.kernel_dim_one));
    out.insert("increasing".into(), json!(report.increasing));
    out.insert("all_classes_bounded".into(), json!(report.all_classes_bounded));
    if let Some((lo, hi)) = report.stabilization_window {
        out.insert("stabilization_window".into(), json!([lo, hi]));
    }
    if let Some(agree) = report.readings_agree {
        out.insert("readings_agree".into(), json!(agree));
    }
}

fn laplacian_finite(spec: &str, max_length: usize) -> Result<Outcome, String> {
    let group = parse_group(spec)?;
    let rep = laplacian::admissibility_finite(&group, max_length).map_err(|e| e.to_string())?;
    let mut report = header(&format!("laplacian finite --group {spec}"));
    report.insert("group".into(), json!(rep.group));
    report.insert("classes".into(), json!(rep.classes.iter().map(class_json).collect::<Vec<_>>()));
    report_flags(&rep, &mut report);
    let mut csv = String::from("length,element,coefficient\n");
    for c in &rep.classes {
        for (e, v) in &c.values {
            csv.push_str(&format!("{},{e},{v}\n", c.length));
        }
    }
    // Admissibility findings are report content, not check failures.
    Ok(Outcome { report: Value::Object(report), all_pass: true, csv: Some(csv) })
}

fn laplacian_free(rank: usize, max_len: usize, probe: usize) -> Result<Outcome, String> {
    let rep = laplacian::admissibility_free(rank, max_len, probe).map_err(|e| e.to_string())?;
    let mut report = header(&format!(
        "laplacian free --rank {rank} --max-len {max_len} --probe-depth {probe}"
    ));
    report.insert("group".into(), json!(rep.group));
    report.insert("classes".into(), json!(rep.classes.iter().map(class_json).collect::<Vec<_>>()));
    report_flags(&rep, &mut report);
    let mut csv = String::from("length,sphere_value,letterwise_value\n");
    for c in &rep.classes {
        csv.push_str(&format!(
            "{},{},{}\n",
            c.length,
            c.coefficient.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            c.letterwise.as_ref().map(|v| v.to_string()).unwrap_or_default()
        ));
    }
    // Admissibility findings are report content, not check failures.
    Ok(Outcome { report: Value::Object(report), all_pass: true, csv: Some(csv) })
}

fn check_report_json(report: &qisolab::presentation::CheckReport) -> (Value, bool) {
    let relations: Vec<Value> = report
        .relations
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("relation".into(), json!(r.relation));
            m.insert("pass".into(), json!(r.pass));
            if let Some(res) = &r.residual_norm_sq {
                m.insert("residual_norm_sq".into(), json!(res));
            }
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("model".into(), json!(report.model));
    m.insert("relations".into(), json!(relations));
    if let Some(u) = report.corep_unitary {
        m.insert("corep_unitary".into(), json!(u));
    }
    m.insert("pass".into(), json!(report.pass));
    (Value::Object(m), report.pass)
}

fn verify_files(pres_path: &str, model_path: &str) -> Result<Outcome, String> {
    let pres_text = std::fs::read_to_string(pres_path)
        .map_err(|e| format!("cannot read {pres_path}: {e}"))?;
    let model_text = std::fs::read_to_string(model_path)
        .map_err(|e| format!("cannot read {model_path}: {e}"))?;
    let pres = Presentation::parse(pres_path, &pres_text).map_err(|e| e.to_string())?;
    let model = MatrixModel::from_json_str(model_path, &model_text).map_err(|e| e.to_string())?;
    let rel = check(&pres, &model).map_err(|e| e.to_string())?;
    let (rel_json, mut all_pass) = check_report_json(&rel);
    let mut report = header(&format!("verify --presentation {pres_path} --model {model_path}"));
    report.insert("presentation".into(), json!(pres.name));
    report.insert("check".into(), rel_json);
    if pres.corep.is_some() {
        let cop = coproduct_check(&pres, &model).map_err(|e| e.to_string())?;
        let (cop_json, cop_pass) = check_report_json(&cop);
        all_pass &= cop_pass;
        report.insert("coproduct_check".into(), cop_json);
    }
    Ok(Outcome { report: Value::Object(report), all_pass, csv: None })
}

fn verify_preset(name: &str) -> Result<Outcome, String> {
    let bundle = preset(name).map_err(|e| e.to_string())?;
    let mut report = header(&format!("verify-preset {name}"));
    report.insert("preset".into(), json!(bundle.name));
    report.insert("group".into(), json!(bundle.group.spec()));
    report.insert("model".into(), json!(bundle.model.name));
    report.insert("dim".into(), json!(bundle.model.dim));
    report.insert("root_order".into(), json!(bundle.model.root_order));
    if !bundle.notes.is_empty() {
        report.insert("notes".into(), json!(bundle.notes));
    }

    let rel = check(&bundle.presentation, &bundle.model).map_err(|e| e.to_string())?;
    let (rel_json, mut all_pass) = check_report_json(&rel);
    report.insert("check".into(), rel_json);

    let cop = coproduct_check(&bundle.presentation, &bundle.model).map_err(|e| e.to_string())?;
    let (cop_json, cop_pass) = check_report_json(&cop);
    all_pass &= cop_pass;
    report.insert("coproduct_check".into(), cop_json);

    if bundle.has_magic_grid {
        let grid = bundle.magic_grid().map_err(|e| e.to_string())?;
        let magic = is_magic_unitary(&grid).map_err(|e| e.to_string())?;
        all_pass &= magic.pass;
        let mut m = Map::new();
        m.insert("pass".into(), json!(magic.pass));
        if let Some(fail) = magic.first_failure {
            m.insert("first_failure".into(), json!(fail));
        }
        report.insert("magic_unitary".into(), Value::Object(m));
    }

    if let Some((poly_text, expected)) = &bundle.group_like_probe {
        let poly = qisolab::parse::parse_polynomial(poly_text).map_err(|e| e.to_string())?;
        let is_group_like =
            qisolab::presentation::group_like(&bundle.presentation, &bundle.model, &poly)
                .map_err(|e| e.to_string())?;
        let ok = is_group_like == *expected;
        all_pass &= ok;
        report.insert(
            "group_like_probe".into(),
            json!({
                "element": poly_text,
                "group_like": is_group_like,
                "expected": expected,
                "pass": ok,
            }),
        );
    }

    if let Some((x, y)) = &bundle.noncommutativity_witness {
        let poly = qisolab::parse::parse_polynomial(&format!("{x} {y} - {y} {x}"))
            .map_err(|e| e.to_string())?;
        let commutator = evaluate(&poly, &bundle.model).map_err(|e| e.to_string())?;
        let nonzero = !commutator.is_zero();
        all_pass &= nonzero;
        report.insert(
            "noncommutativity_witness".into(),
            json!({
                "commutator": format!("{x} {y} - {y} {x}"),
                "nonzero": nonzero,
                "residual_norm_sq": commutator.residual_norm_sq().to_string(),
            }),
        );
    }

    report.insert("pass".into(), json!(all_pass));
    Ok(Outcome { report: Value::Object(report), all_pass, csv: None })
}

fn action_check(name: &str, radius: Option<usize>) -> Result<Outcome, String> {
    let bundle = preset(name).map_err(|e| e.to_string())?;
    let radius = radius.unwrap_or_else(|| bundle.default_radius());
    let table = build_action(&bundle.group, &bundle.grid, radius).map_err(|e| e.to_string())?;
    let action = check_action(&bundle.group, &bundle.grid, &table).map_err(|e| e.to_string())?;

    // Row derivation consistency: rebuild every nontrivial row from shorter
    // rows and compare.
    let mut derive_pass = true;
    let mut derive_detail = None;
    for (w, _) in table.rows() {
        let (_, matches) = qisolab::action::derive_word_coefficients(&bundle.group, &table, w)
            .map_err(|e| e.to_string())?;
        if !matches {
            derive_pass = false;
            derive_detail = Some(format!(
                "derived row differs from stored row at w = {}",
                bundle.group.display_element(w)
            ));
            break;
        }
    }

    let mut checks: Vec<Value> = action
        .checks
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("name".into(), json!(c.name));
            m.insert("pass".into(), json!(c.pass));
            if let Some(d) = &c.detail {
                m.insert("detail".into(), json!(d));
            }
            Value::Object(m)
        })
        .collect();
    let mut derive_check = Map::new();
    derive_check.insert("name".into(), json!("derive_word_coefficients"));
    derive_check.insert("pass".into(), json!(derive_pass));
    if let Some(d) = derive_detail {
        derive_check.insert("detail".into(), json!(d));
    }
    checks.push(Value::Object(derive_check));

    let all_pass = action.pass && derive_pass;
    let mut report = header(&format!("action-check --preset {name} --radius {radius}"));
    report.insert("preset".into(), json!(bundle.name));
    report.insert("group".into(), json!(bundle.group.spec()));
    report.insert("radius".into(), json!(radius));
    report.insert("rows".into(), json!(table.rows().len()));
    report.insert("checks".into(), json!(checks));
    report.insert("pass".into(), json!(all_pass));
    Ok(Outcome { report: Value::Object(report), all_pass, csv: None })
}

fn t_operator_cmd(spec: &str, g: &str, h: &str, r0: usize, r: usize) -> Result<Outcome, String> {
    let group = parse_group(spec)?;
    let ge = group.parse_element(g).map_err(|e| e.to_string())?;
    let he = group.parse_element(h).map_err(|e| e.to_string())?;
    let cert = support_certificate(&group, &ge, &he, r0, r).map_err(|e| e.to_string())?;
    // Spot check the symbolic operator against the closed form on the ball.
    let op = t_operator(&group, &ge, &he).map_err(|e| e.to_string())?;
    let mut symbolic_matches = true;
    for a in group.ball(r0.min(4)).map_err(|e| e.to_string())? {
        let image = op.apply(&group, &a).map_err(|e| e.to_string())?;
        let coeff = qisolab::real::t_coefficient(&group, &ge, &he, &a).map_err(|e| e.to_string())?;
        let ok = match (coeff, image.as_slice()) {
            (0, []) => true,
            (c, [(ic, _)]) => c == *ic,
            _ => false,
        };
        symbolic_matches &= ok;
    }
    let all_pass = cert.stable && symbolic_matches;
    let mut report = header(&format!(
        "t-operator --group {spec} --g {g} --h {h} --r0 {r0} --r {r}"
    ));
    report.insert("group".into(), json!(group.spec()));
    report.insert("g".into(), json!(cert.g));
    report.insert("h".into(), json!(cert.h));
    report.insert("probe_inner".into(), json!(cert.probe_inner));
    report.insert("probe_outer".into(), json!(cert.probe_outer));
    report.insert("support_size".into(), json!(cert.support.len()));
    report.insert(
        "support".into(),
        json!(cert
            .support
            .iter()
            .map(|(a, c)| json!({"a": a, "coefficient": c}))
            .collect::<Vec<_>>()),
    );
    report.insert("stable".into(), json!(cert.stable));
    report.insert("symbolic_matches_closed_form".into(), json!(symbolic_matches));
    report.insert("pass".into(), json!(all_pass));
    Ok(Outcome { report: Value::Object(report), all_pass, csv: None })
}

fn real_check(name: &str, radius: Option<usize>) -> Result<Outcome, String> {
    let bundle = preset(name).map_err(|e| e.to_string())?;
    let radius = radius.unwrap_or_else(|| bundle.default_radius());
    let ext = qisolab::real::real_extension(&bundle, radius).map_err(|e| e.to_string())?;
    let mut report = header(&format!("real-check --preset {name} --radius {radius}"));
    report.insert("preset".into(), json!(bundle.name));
    report.insert("radius".into(), json!(radius));
    report.insert(
        "q_self_adjoint_unitary".into(),
        json!(ext.q_self_adjoint_unitary),
    );
    report.insert(
        "q_commutes_with_generators".into(),
        json!(ext.q_commutes_with_generators),
    );
    report.insert("q_commutes_with_action".into(), json!(ext.q_commutes_with_action));
    report.insert("relations_pass".into(), json!(ext.relations_pass));
    report.insert("pass".into(), json!(ext.pass));
    Ok(Outcome { report: Value::Object(report), all_pass: ext.pass, csv: None })
}

fn presets_cmd() -> Result<Outcome, String> {
    let list: Vec<Value> = catalog()
        .iter()
        .map(|p| {
            json!({
                "name": p.name,
                "params": p.params,
                "description": p.description,
            })
        })
        .collect();
    let mut report = header("presets");
    report.insert("presets".into(), json!(list));
    report.insert(
        "ball_cap_env".into(),
        json!(format!("{BALL_CAP_ENV} overrides the enumeration cap for infinite groups")),
    );
    let mut csv = String::from("name,params\n");
    for p in catalog() {
        csv.push_str(&format!("{},\"{}\"\n", p.name, p.params));
    }
    Ok(Outcome { report: Value::Object(report), all_pass: true, csv: Some(csv) })
}
