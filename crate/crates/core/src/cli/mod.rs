//! Problem files, the expression grammar, command dispatch and reports.

mod parser;
mod problem;
mod report;

pub use parser::parse_polynomial;
pub use problem::{PhaseSpaceDecl, ProblemFile, ReducibilityDecl, RunSettings};
pub use report::{extract_json, Check, Report, JSON_FENCE_CLOSE, JSON_FENCE_OPEN};

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::brst::BrstDifferential;
use crate::cohomology::cohomology_dim;
use crate::differentials::Derivation;
use crate::error::{Error, Result};
use crate::maurer_cartan::{derivation_defects, extract, gauge_closure, jacobi_check, lemma_check, lie_closure, round_trip};
use crate::random::Sampler;
use crate::reducible::{auxiliary_differential, delta_squared_on_shell, verify_reducibility};
use crate::superalgebra::{GeneratorTable, SuperElement};
use crate::symplectic::{ConstraintSystem, VectorField};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "brst", version, about = "Exact BRST complexes for first-class constraint systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Problem file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Highest antighost order of the charge.
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    /// z-degree bound for ideal solves and cohomology truncations.
    #[arg(long, visible_alias = "deg", global = true)]
    pub deg_bound: Option<u32>,
    /// Ghost number for `cohomology`; repeatable.
    #[arg(long = "gh", global = true, allow_negative_numbers = true)]
    pub ghost_numbers: Vec<i64>,
    /// Print only the JSON document.
    #[arg(long, global = true)]
    pub json_only: bool,
    /// Seed for randomized check inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// First-class check, solving for structure functions when absent.
    Verify,
    /// Build the charge and certify [Ω, Ω] = 0.
    Charge,
    /// Expansion S = δ + d + s₁ + ⋯ and its structure identities.
    Expand,
    /// Maurer-Cartan form of S and the lemma identities.
    Mc,
    /// Closure of the ρ fields and off-shell gauge closure.
    Closure,
    /// Truncated cohomology dimensions.
    Cohomology,
    /// Reducibility relations and the auxiliary differential.
    Reducible,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Charge => "charge",
            Command::Expand => "expand",
            Command::Mc => "mc",
            Command::Closure => "closure",
            Command::Cohomology => "cohomology",
            Command::Reducible => "reducible",
        }
    }
}

/// What a process run produces.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::StructureNotFound { .. }
        | Error::NotInIdeal { .. }
        | Error::OrderExceeded { .. }
        | Error::ObstructionNotInIdeal { .. } => EXIT_BOUND,
        Error::NotFirstClass(_)
        | Error::NotInMultiGhostSpan(_)
        | Error::NotInProductSpan(_)
        | Error::ParityMismatch(..)
        | Error::OrderOutOfRange { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

struct Settings {
    max_order: usize,
    bound: u32,
    ghost_numbers: Vec<i64>,
    seed: u64,
}

/// Runs one command; never panics on bad input.
pub fn run(cli: &Cli) -> Outcome {
    let fail = |e: &Error| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: exit_code(e),
    };
    let Some(path) = &cli.input else {
        return fail(&Error::Invalid("--input FILE is required".into()));
    };
    let problem = match ProblemFile::load(path) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    let settings = Settings {
        max_order: cli.max_order.unwrap_or(problem.run.max_order),
        bound: cli.deg_bound.unwrap_or(problem.run.z_degree_bound),
        ghost_numbers: if cli.ghost_numbers.is_empty() {
            problem.run.ghost_numbers.clone()
        } else {
            cli.ghost_numbers.clone()
        },
        seed: cli.seed,
    };
    let mut report = Report::new(cli.command.name(), &path.display().to_string());
    match dispatch(cli.command, &problem, &settings, &mut report) {
        Ok(()) => Outcome {
            stdout: report.render(cli.json_only),
            stderr: String::new(),
            code: if report.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED },
        },
        Err(e) => {
            let code = exit_code(&e);
            // a charge that did not truncate is still worth printing
            if let Error::OrderExceeded { partial, .. } = &e {
                if let Ok(cs) = problem.system(settings.bound) {
                    charge_terms(&mut report, cs.table(), partial.terms());
                    report.check("charge truncates", false, Some(e.to_string()));
                    return Outcome {
                        stdout: report.render(cli.json_only),
                        stderr: format!("error: {e}\n"),
                        code,
                    };
                }
            }
            Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code,
            }
        }
    }
}

fn dispatch(cmd: Command, problem: &ProblemFile, s: &Settings, r: &mut Report) -> Result<()> {
    if cmd == Command::Reducible {
        return reducible(problem, s, r);
    }
    let cs = problem.system(s.bound)?;
    describe_system(&cs, r);
    match cmd {
        Command::Verify => verify(&cs, problem.structure_functions.is_none(), r),
        Command::Reducible => unreachable!(),
        _ => {
            let brst = BrstDifferential::build(&cs, s.max_order, s.bound)?;
            charge_terms(r, cs.table(), brst.charge().terms());
            match cmd {
                Command::Charge => charge(&brst, r),
                Command::Expand => expand(&brst, r),
                Command::Mc => mc(&brst, s, r),
                Command::Closure => closure(&brst, s, r),
                Command::Cohomology => cohomology(&brst, s, r),
                _ => unreachable!(),
            }
        }
    }
}

fn text(t: &GeneratorTable, e: &SuperElement) -> String {
    e.to_text(t)
}

fn field_json(t: &GeneratorTable, v: &VectorField) -> Value {
    Value::Object(v.components().map(|(g, c)| (t.name(g).to_string(), json!(text(t, c)))).collect())
}

fn field_text(t: &GeneratorTable, v: &VectorField) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.components()
        .map(|(g, c)| format!("{} -> {}", t.name(g), text(t, c)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn derivation_json(t: &GeneratorTable, d: &Derivation) -> Value {
    Value::Object(
        d.action()
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(g, v)| (t.name(*g).to_string(), json!(text(t, v))))
            .collect(),
    )
}

fn nonzero(t: &GeneratorTable, m: &BTreeMap<crate::superalgebra::GenId, SuperElement>) -> Vec<String> {
    m.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(g, v)| format!("{}: {}", t.name(*g), text(t, v)))
        .collect()
}

fn describe_system(cs: &ConstraintSystem, r: &mut Report) {
    let t = cs.table();
    let m = cs.len();
    let mut lines: Vec<String> = (0..m).map(|a| format!("G{} = {}", a + 1, text(t, cs.constraint(a)))).collect();
    let mut entries = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in 0..m {
                let v = cs.structure(a, b, c);
                if !v.is_zero() {
                    lines.push(format!("C^{}_{}{} = {}", c + 1, a + 1, b + 1, text(t, v)));
                    entries.push(json!({"a": a + 1, "b": b + 1, "c": c + 1, "value": text(t, v)}));
                }
            }
        }
    }
    r.section("system", lines);
    r.data("constraints", json!(cs.constraints().iter().map(|g| text(t, g)).collect::<Vec<_>>()));
    r.data("structure_functions", Value::Array(entries));
}

fn verify(cs: &ConstraintSystem, solved: bool, r: &mut Report) -> Result<()> {
    let t = cs.table();
    let rep = cs.verify_first_class();
    let mut defects = Vec::new();
    for p in &rep.pairs {
        let ok = p.defect.is_zero();
        r.check(
            format!("[G{}, G{}] = C^c G_c", p.a + 1, p.b + 1),
            ok,
            (!ok).then(|| text(t, &p.defect)),
        );
        defects.push(json!({"a": p.a + 1, "b": p.b + 1, "defect": text(t, &p.defect)}));
    }
    r.data("structure_solved", json!(solved));
    r.data("defects", Value::Array(defects));
    Ok(())
}

fn charge_terms(r: &mut Report, t: &GeneratorTable, terms: &[SuperElement]) {
    r.section(
        "charge",
        terms.iter().enumerate().map(|(k, w)| format!("Omega{k} = {}", text(t, w))).collect(),
    );
    r.data("charge", json!(terms.iter().map(|w| text(t, w)).collect::<Vec<_>>()));
}

fn charge(s: &BrstDifferential, r: &mut Report) -> Result<()> {
    let t = s.system().table();
    let total = s.charge().total();
    let bracket = s.system().space().extended_bracket(&total, &total);
    r.check("[Omega, Omega] = 0 by full expansion", bracket.is_zero(), (!bracket.is_zero()).then(|| text(t, &bracket)));
    let cert = s.nilpotency_certificate();
    let bad = nonzero(t, &cert);
    r.check("S^2 = 0 on every generator", bad.is_empty(), (!bad.is_empty()).then(|| bad.join(", ")));
    r.data("order", json!(s.charge().order()));
    r.data("certified", json!(s.charge().is_certified()));
    Ok(())
}

fn expand(s: &BrstDifferential, r: &mut Report) -> Result<()> {
    let t = s.system().table();
    let mut lines = Vec::new();
    let mut terms = Vec::new();
    for k in -1..=s.max_expansion_order() {
        let d = s.expansion_term(k)?;
        let name = match k {
            -1 => "delta".to_string(),
            0 => "d".to_string(),
            k => format!("s{k}"),
        };
        for (g, v) in d.action() {
            if !v.is_zero() {
                lines.push(format!("{name}({}) = {}", t.name(*g), text(t, v)));
            }
        }
        terms.push(json!({"k": k, "name": name, "action": derivation_json(t, d)}));
    }
    r.section("expansion", lines);
    r.data("expansion", Value::Array(terms));
    let ids = s.structure_identities();
    for (name, m) in [
        ("delta^2 = 0", &ids.delta_squared),
        ("[delta, d] = 0", &ids.delta_d),
        ("d^2 + [delta, s1] = 0", &ids.d_squared_plus_delta_s1),
    ] {
        let bad = nonzero(t, m);
        r.check(name, bad.is_empty(), (!bad.is_empty()).then(|| bad.join(", ")));
    }
    // s1(eta) = 0 is a gauge choice available once d^2 eta = 0.
    let d = s.expansion_term(0)?;
    let premise = t.ghosts().iter().all(|&g| d.apply(&d.value(g)).is_zero());
    let s1_eta: Vec<String> = if s.max_expansion_order() >= 1 {
        let s1 = s.expansion_term(1)?;
        t.ghosts()
            .iter()
            .filter(|&&g| !s1.value(g).is_zero())
            .map(|&g| t.name(g).to_string())
            .collect()
    } else {
        Vec::new()
    };
    if premise {
        r.check("s1(eta) = 0", s1_eta.is_empty(), (!s1_eta.is_empty()).then(|| s1_eta.join(", ")));
    } else {
        r.section(
            "notes",
            vec![format!("d^2 eta != 0, so s1(eta) = 0 is not available; nonzero on: {}", s1_eta.join(", "))],
        );
    }
    r.data("d_squared_eta_zero", json!(premise));
    r.data("s1_eta_nonzero", json!(s1_eta));
    r.data("d_squared_zero", json!(ids.d_squared_zero));
    Ok(())
}

fn random_functions(t: &GeneratorTable, seed: u64, n: usize) -> Vec<SuperElement> {
    let mut smp = Sampler::new(seed);
    (0..n).map(|_| smp.coordinate_polynomial(t, 3, 4)).collect()
}

fn mc(s: &BrstDifferential, set: &Settings, r: &mut Report) -> Result<()> {
    let t = s.system().table();
    let data = extract(s, None)?;
    let mut lines = Vec::new();
    let mut rho = serde_json::Map::new();
    for (i, v) in data.indices.iter().zip(&data.rho) {
        if !v.is_zero() {
            lines.push(format!("rho{i}: {}", field_text(t, v)));
            rho.insert(i.to_string(), field_json(t, v));
        }
    }
    let mut structure = Vec::new();
    for ((i, j, k), c) in &data.structure {
        if i < j {
            lines.push(format!("C^{}_{}{} = {}", data.indices[*k], data.indices[*i], data.indices[*j], text(t, c)));
            structure.push(json!({
                "K": data.indices[*k].to_string(),
                "I": data.indices[*i].to_string(),
                "J": data.indices[*j].to_string(),
                "value": text(t, c),
            }));
        }
    }
    r.section("maurer-cartan", lines);
    r.data("multi_ghosts", json!(data.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>()));
    r.data("rho", Value::Object(rho));
    r.data("structure", Value::Array(structure));

    let bad: Vec<String> = round_trip(s, &data)
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(n, _)| n)
        .collect();
    r.check("S rebuilt from rho and C", bad.is_empty(), (!bad.is_empty()).then(|| bad.join(", ")));

    let mut fs: Vec<SuperElement> = t.coordinates().iter().map(|&z| SuperElement::generator(t, z)).collect();
    fs.extend(random_functions(t, set.seed, 3));
    let rows = lemma_check(s, &data, &fs);
    let failures = rows.iter().filter(|row| !row.residual().is_zero()).count();
    r.check("S^2 f agrees with the rho/C formula", failures == 0, (failures > 0).then(|| format!("{failures} functions")));
    let jac = jacobi_check(s, &data).iter().filter(|v| !v.is_zero()).count();
    r.check("S^2 omega^K agrees with the Jacobi form", jac == 0, (jac > 0).then(|| format!("{jac} multi-ghosts")));
    let pairs: Vec<(SuperElement, SuperElement)> = random_functions(t, set.seed.wrapping_add(1), 10)
        .chunks(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect();
    let der = derivation_defects(t, &data, &pairs).iter().filter(|v| !v.is_zero()).count();
    r.check("every rho_I is a derivation", der == 0, None);
    r.data("seed", json!(set.seed));
    Ok(())
}

fn closure(s: &BrstDifferential, set: &Settings, r: &mut Report) -> Result<()> {
    let t = s.system().table();
    let data = extract(s, None)?;
    let lie = lie_closure(t, &data, set.bound);
    let mut lines = Vec::new();
    let mut pairs = Vec::new();
    for p in &lie.pairs {
        if p.commutator.is_zero() {
            continue;
        }
        let (i, j) = (&data.indices[p.i], &data.indices[p.j]);
        let status = match (&p.coefficients, p.structure_valid) {
            (None, _) => "not closed",
            (Some(_), Some(true)) => "closed by C",
            (Some(_), _) => "closed",
        };
        lines.push(format!("[rho{i}, rho{j}]: {status}"));
        pairs.push(json!({
            "I": i.to_string(),
            "J": j.to_string(),
            "commutator": field_json(t, &p.commutator),
            "closed": p.coefficients.is_some(),
            "structure_valid": p.structure_valid,
        }));
    }
    r.section("lie closure", lines);
    r.data("lie_closure", Value::Array(pairs));
    let unclosed = lie.pairs.iter().filter(|p| p.coefficients.is_none()).count();
    r.check(
        "{rho_I} closes under commutators",
        unclosed == 0,
        (unclosed > 0).then(|| format!("{unclosed} pairs outside the module at degree {}", set.bound)),
    );
    let wrong = lie.pairs.iter().filter(|p| p.structure_valid == Some(false)).count();
    r.check("C^K_IJ solves closure where unique", wrong == 0, None);

    let gauge = gauge_closure(s.system(), &data, set.bound)?;
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for p in &gauge.pairs {
        let rho: Vec<Value> = p.rho.iter().map(|v| field_json(t, v)).collect();
        for (c, v) in p.rho.iter().enumerate() {
            if !v.is_zero() {
                lines.push(format!("rho^{}_{}{}: {}", c + 1, p.i + 1, p.j + 1, field_text(t, v)));
            }
        }
        out.push(json!({
            "i": p.i + 1,
            "j": p.j + 1,
            "defect": field_json(t, &p.defect),
            "rho": rho,
            "agrees_exactly": p.agrees_exactly,
            "agrees_modulo_syzygy": p.agrees_modulo_syzygy,
        }));
    }
    r.section("gauge closure", lines);
    r.data("gauge_closure", Value::Array(out));
    let disagree = gauge.pairs.iter().filter(|p| p.agrees_modulo_syzygy == Some(false)).count();
    r.check("extracted rho_(ij;c) matches the gauge closure", disagree == 0, None);
    Ok(())
}

fn cohomology(s: &BrstDifferential, set: &Settings, r: &mut Report) -> Result<()> {
    let t = s.system().table();
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for &g in &set.ghost_numbers {
        let c = cohomology_dim(s, g, set.bound);
        lines.push(format!(
            "H^{g} (z-degree <= {}): {}  [{}; D+1 gives {}]",
            set.bound,
            c.dimension,
            if c.stable { "stable" } else { "unstable" },
            c.next_dimension
        ));
        let closed = c.representatives.iter().all(|e| s.apply(e).is_zero());
        r.check(format!("H^{g} representatives are cocycles"), closed, None);
        r.check(format!("H^{g} fraction-free rank agrees"), c.rank_cross_checked, None);
        out.push(json!({
            "ghost_number": g,
            "z_degree_bound": set.bound,
            "dimension": c.dimension,
            "cycles": c.cycles,
            "boundaries": c.boundaries,
            "stable": c.stable,
            "next_dimension": c.next_dimension,
            "window": c.window,
            "window_stable": c.window_stable,
            "representatives": c.representatives.iter().map(|e| text(t, e)).collect::<Vec<_>>(),
        }));
    }
    r.section("cohomology", lines);
    r.data("cohomology", Value::Array(out));
    Ok(())
}

fn reducible(problem: &ProblemFile, s: &Settings, r: &mut Report) -> Result<()> {
    let (t, g, rd) = problem
        .reducibility()?
        .ok_or_else(|| Error::Invalid("the problem file has no reducibility block".into()))?;
    let rep = verify_reducibility(&g, &rd)?;
    let mut lines = Vec::new();
    let mut rels = Vec::new();
    for rel in &rep.relations {
        let label = match rel.lower {
            None => format!("level 1, a1 = {}", rel.upper + 1),
            Some(l) => format!("level {}, a{} = {}, a{} = {}", rel.level, rel.level, rel.upper + 1, rel.level - 2, l + 1),
        };
        lines.push(format!("{label}: defect {}", text(&t, &rel.defect)));
        rels.push(json!({
            "level": rel.level,
            "upper": rel.upper + 1,
            "lower": rel.lower.map(|l| l + 1),
            "defect": text(&t, &rel.defect),
        }));
    }
    r.section("reducibility relations", lines);
    r.data("relations", Value::Array(rels));
    let failed = rep.relations.iter().filter(|x| !x.defect.is_zero()).count();
    r.check("reducibility relations hold", failed == 0, (failed > 0).then(|| format!("{failed} relations")));

    let delta = auxiliary_differential(&t, &rd)?;
    r.section(
        "auxiliary differential",
        nonzero(&t, delta.action()).into_iter().map(|l| format!("Delta {l}")).collect(),
    );
    r.data("delta", derivation_json(&t, &delta));
    match delta_squared_on_shell(&t, &g, &delta, s.bound) {
        Ok(entries) => {
            let aux = entries.iter().all(|e| e.aux_ok);
            let lines = entries
                .iter()
                .map(|e| format!("Delta^2 {} = {}", t.name(e.generator), text(&t, &e.value)))
                .collect();
            r.section("Delta squared", lines);
            r.data(
                "delta_squared",
                Value::Object(
                    entries
                        .iter()
                        .map(|e| (t.name(e.generator).to_string(), json!(text(&t, &e.value))))
                        .collect(),
                ),
            );
            r.check("Delta^2 vanishes on the constraint surface", true, None);
            r.check("aux(Delta^2 e) = aux(e) + 2", aux, None);
        }
        Err(e @ Error::ObstructionNotInIdeal { .. }) => {
            r.check("Delta^2 vanishes on the constraint surface", false, Some(e.to_string()));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}
