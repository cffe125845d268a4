//! The ten acceptance criteria, each exact, each reported on one line.
//!
//! Runs with its own harness: `cargo test --test acceptance`.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;

use brst::brst::{build_charge, BrstDifferential};
use brst::cli::{self, parse_polynomial, Cli};
use brst::cohomology::{ce_complex, cohomology_dim, su2_structure, Representation};
use brst::differentials::{anticommutator, d_squared_formula, koszul_tate, longitudinal};
use brst::fixtures;
use brst::maurer_cartan::{
    derivation_defects, extract, gauge_closure, jacobi_check, lemma_check, lie_closure, round_trip,
};
use brst::random::Sampler;
use brst::reducible::{
    self, auxiliary_differential, delta_squared_on_shell, exterior_derivative, from_ce, generalized_mc_extract,
    generalized_round_trip, verify_reducibility,
};
use brst::superalgebra::{GeneratorTable, Parity, SuperElement};
use brst::symplectic::ConstraintSystem;
use brst::Error;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn all_zero<'a>(it: impl IntoIterator<Item = &'a SuperElement>) -> bool {
    it.into_iter().all(SuperElement::is_zero)
}

fn brst(cs: &ConstraintSystem) -> BrstDifferential {
    BrstDifferential::build(cs, 3, 4).expect("fixture charge builds")
}

fn sign(p: Parity, q: Parity) -> i64 {
    if p.is_odd() && q.is_odd() {
        -1
    } else {
        1
    }
}

fn superalgebra_laws() -> Outcome {
    const N: usize = 200;
    let t = reducible::fixtures::level_one(false).0;
    let mut smp = Sampler::new(1);
    for i in 0..N {
        let (p, q) = (smp.parity(), smp.parity());
        let a = smp.homogeneous(&t, p);
        let b = smp.homogeneous(&t, q);
        let c = smp.element(&t);
        ensure(&a * &b == (&b * &a).scale_int(sign(p, q)), || format!("supercommutativity, sample {i}"))?;
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity, sample {i}"))?;
        let odd = smp.homogeneous(&t, Parity::Odd);
        ensure((&odd * &odd).is_zero(), || format!("odd nilpotence, sample {i}"))?;
        for g in t.ids() {
            let gp = Parity::from_count(t.is_odd(g) as usize);
            let lhs = (&a * &c).left_derivative(&t, g);
            let rhs = &(&a.left_derivative(&t, g) * &c) + &(&a * &c.left_derivative(&t, g)).scale_int(sign(gp, p));
            ensure(lhs == rhs, || format!("Leibniz in {}, sample {i}", t.name(g)))?;
        }
    }
    Ok(format!("{N} samples per law"))
}

fn koszul_tate_and_longitudinal() -> Outcome {
    for (name, cs) in [("abelian_r4", fixtures::abelian_r4()), ("so3", fixtures::so3())] {
        let t = cs.table();
        let delta = koszul_tate(&cs);
        let d = longitudinal(&cs);
        ensure(delta.is_nilpotent(t), || format!("{name}: delta^2 != 0"))?;
        let dd = anticommutator(t, &delta, &d).map_err(|e| e.to_string())?;
        ensure(all_zero(dd.action().values()), || format!("{name}: [delta, d] != 0"))?;
        let mut smp = Sampler::new(2);
        for i in 0..50 {
            let f = smp.coordinate_polynomial(t, 3, 4);
            ensure(d.apply(&d.apply(&f)) == d_squared_formula(&cs, &f), || format!("{name}: d^2 f, sample {i}"))?;
        }
    }
    Ok("abelian_r4, so3; 50 functions each".into())
}

fn brst_charge() -> Outcome {
    let full_bracket_zero = |cs: &ConstraintSystem, k: usize| -> Result<usize, String> {
        let omega = build_charge(cs, k, 4).map_err(|e| e.to_string())?;
        let total = omega.total();
        ensure(cs.space().extended_bracket(&total, &total).is_zero(), || "[Omega, Omega] != 0".into())?;
        ensure(omega.is_certified(), || "not certified".into())?;
        Ok(omega.order())
    };
    let a = full_bracket_zero(&fixtures::abelian_r4(), 3)?;
    ensure(a == 0, || format!("abelian charge has order {a}"))?;
    let s = full_bracket_zero(&fixtures::so3(), 3)?;
    ensure(s == 1, || format!("so3 charge has order {s}"))?;
    let o = full_bracket_zero(&fixtures::open_m2(), 3)?;
    let o3 = full_bracket_zero(&fixtures::open_m3(), 3)?;
    ensure(o3 == 2, || format!("open_m3 charge has order {o3}"))?;
    Ok(format!("orders: abelian 0, so3 1, open_m2 {o}, open_m3 {o3}"))
}

fn expansion_identities() -> Outcome {
    for (name, cs) in [
        ("abelian_r4", fixtures::abelian_r4()),
        ("so3", fixtures::so3()),
        ("open_m2", fixtures::open_m2()),
    ] {
        let s = brst(&cs);
        let t = cs.table();
        ensure(s.structure_identities().passed(), || format!("{name}: structure identities"))?;
        if s.max_expansion_order() >= 1 {
            let s1 = s.expansion_term(1).map_err(|e| e.to_string())?;
            ensure(t.ghosts().iter().all(|&g| s1.value(g).is_zero()), || format!("{name}: s1(eta) != 0"))?;
        }
    }
    let open = brst(&fixtures::open_m2());
    ensure(!open.structure_identities().d_squared_zero, || "open_m2: d^2 vanished on its own".into())?;
    Ok("abelian_r4, so3, open_m2".into())
}

fn round_trip_and_derivations() -> Outcome {
    for (name, cs) in [
        ("abelian_r4", fixtures::abelian_r4()),
        ("so3", fixtures::so3()),
        ("open_m2", fixtures::open_m2()),
        ("open_m3", fixtures::open_m3()),
    ] {
        let s = brst(&cs);
        let t = cs.table();
        let mc = extract(&s, None).map_err(|e| format!("{name}: {e}"))?;
        let bad: Vec<String> = round_trip(&s, &mc).into_iter().filter(|(_, r)| !r.is_zero()).map(|(k, _)| k).collect();
        ensure(bad.is_empty(), || format!("{name}: residual on {}", bad.join(", ")))?;
        let mut smp = Sampler::new(5);
        let pairs: Vec<_> = (0..50)
            .map(|_| (smp.coordinate_polynomial(t, 3, 3), smp.coordinate_polynomial(t, 3, 3)))
            .collect();
        ensure(all_zero(&derivation_defects(t, &mc, &pairs)), || format!("{name}: derivation defect"))?;
    }
    Ok("abelian_r4, so3, open_m2, open_m3".into())
}

fn lemma_and_lie_closure() -> Outcome {
    let mut certified = 0;
    for (name, cs) in [
        ("abelian_r4", fixtures::abelian_r4()),
        ("so3", fixtures::so3()),
        ("open_m2", fixtures::open_m2()),
    ] {
        let s = brst(&cs);
        let t = cs.table();
        let mc = extract(&s, None).map_err(|e| format!("{name}: {e}"))?;
        let mut smp = Sampler::new(6);
        let fs: Vec<_> = (0..20).map(|_| smp.coordinate_polynomial(t, 3, 4)).collect();
        ensure(lemma_check(&s, &mc, &fs).iter().all(|r| r.residual().is_zero()), || format!("{name}: lemma"))?;
        ensure(all_zero(&jacobi_check(&s, &mc)), || format!("{name}: Jacobi sum"))?;
        let lc = lie_closure(t, &mc, 3);
        ensure(lc.passed(), || format!("{name}: lie closure"))?;
        certified += lc.pairs.iter().filter(|p| p.structure_valid == Some(true)).count();
    }
    Ok(format!("abelian_r4, so3, open_m2; {certified} pairs certified by C"))
}

fn gauge_closure_criterion() -> Outcome {
    let so3 = fixtures::so3();
    let mc = extract(&brst(&so3), None).map_err(|e| e.to_string())?;
    let r = gauge_closure(&so3, &mc, 3).map_err(|e| e.to_string())?;
    ensure(r.passed(), || "so3: closure".into())?;
    ensure(r.pairs.iter().all(|p| p.defect.is_zero()), || "so3: nonzero defect".into())?;

    let open = fixtures::open_m2();
    let mc = extract(&brst(&open), None).map_err(|e| e.to_string())?;
    let r = gauge_closure(&open, &mc, 3).map_err(|e| e.to_string())?;
    ensure(r.passed(), || "open_m2: closure".into())?;
    for p in &r.pairs {
        let rebuilt = open
            .constraints()
            .iter()
            .zip(&p.rho)
            .fold(brst::symplectic::VectorField::zero(), |acc, (g, f)| acc.add(&f.scale(g)));
        ensure(rebuilt == p.defect, || format!("open_m2: ({}, {}) not G_c rho^c", p.i, p.j))?;
        ensure(p.agrees_exactly == Some(true), || format!("open_m2: ({}, {}) differs from extraction", p.i, p.j))?;
    }
    ensure(r.pairs.iter().any(|p| !p.defect.is_zero()), || "open_m2: defect vanished".into())?;
    Ok("so3 defect 0; open_m2 matches extracted rho".into())
}

/// Gauge-invariant monomials on the constraint surface of an abelian
/// system `G_a = p_a` for `a ∈ gauged`, found by enumerating exponent
/// vectors over `(x¹..xⁿ, p₁..pₙ)`.
fn invariant_monomial_count(n: usize, gauged: &[usize], d: u32) -> usize {
    fn exponents(vars: usize, d: u32) -> Vec<Vec<u32>> {
        if vars == 0 {
            return vec![vec![]];
        }
        (0..=d)
            .flat_map(|e| {
                exponents(vars - 1, d - e).into_iter().map(move |mut rest| {
                    rest.insert(0, e);
                    rest
                })
            })
            .collect()
    }
    exponents(2 * n, d)
        .into_iter()
        // p_a vanishes on Σ; ∂/∂x^a kills a monomial iff x^a is absent
        .filter(|e| gauged.iter().all(|&a| e[n + a] == 0 && e[a] == 0))
        .count()
}

fn cohomology_oracle() -> Outcome {
    let mut dims = Vec::new();
    for (name, cs, n, gauged) in [
        ("abelian_r4_single", fixtures::abelian_r4_single(), 2, vec![0]),
        ("abelian_r4", fixtures::abelian_r4(), 2, vec![0, 1]),
        ("abelian_r2", fixtures::abelian_r2(), 1, vec![0]),
    ] {
        let s = brst(&cs);
        for d in 0..=4 {
            let got = cohomology_dim(&s, 0, d).dimension;
            let want = invariant_monomial_count(n, &gauged, d);
            ensure(got == want, || format!("{name} d={d}: {got} vs oracle {want}"))?;
            if name == "abelian_r4_single" {
                dims.push(got);
            }
        }
    }
    ensure(dims == [1, 3, 6, 10, 15], || format!("R4 dims {dims:?}"))?;
    let ce = ce_complex(&su2_structure(), &Representation::Trivial).map_err(|e| e.to_string())?;
    let su2: Vec<usize> = (0..=3).map(|g| ce.cohomology(g, 0).dimension).collect();
    ensure(su2 == [1, 0, 0, 1], || format!("su2 dims {su2:?}"))?;
    Ok(format!("R4 {dims:?}; su2 {su2:?}"))
}

fn reducible_machinery() -> Outcome {
    type Fixture = fn(bool) -> (GeneratorTable, Vec<SuperElement>, reducible::ReducibilityData);
    for (name, fx) in [("level 1", reducible::fixtures::level_one as Fixture), ("level 2", reducible::fixtures::level_two)] {
        let (t, g, rd) = fx(false);
        ensure(verify_reducibility(&g, &rd).map_err(|e| e.to_string())?.passed(), || format!("{name}: relations"))?;
        let delta = auxiliary_differential(&t, &rd).map_err(|e| e.to_string())?;
        let d2 = delta_squared_on_shell(&t, &g, &delta, 3).map_err(|e| format!("{name}: {e}"))?;
        ensure(d2.iter().all(|e| e.aux_ok), || format!("{name}: aux degree"))?;

        let (t, g, bad) = fx(true);
        let relations_fail = !verify_reducibility(&g, &bad).map_err(|e| e.to_string())?.passed();
        ensure(relations_fail, || format!("{name}: corrupted Z accepted"))?;
        let delta = auxiliary_differential(&t, &bad).map_err(|e| e.to_string())?;
        if name == "level 2" {
            let rejected = matches!(delta_squared_on_shell(&t, &g, &delta, 3), Err(Error::ObstructionNotInIdeal { .. }));
            ensure(rejected, || "level 2: corrupted Delta^2 in ideal".into())?;
        }
    }
    let (rc, d) = exterior_derivative(3).map_err(|e| e.to_string())?;
    let mc = generalized_mc_extract(&d, &rc).map_err(|e| e.to_string())?;
    ensure(all_zero(&generalized_round_trip(&d, &rc, &mc)), || "exterior derivative round trip".into())?;
    let ce = ce_complex(&su2_structure(), &Representation::Trivial).map_err(|e| e.to_string())?;
    let rc = from_ce(&ce).map_err(|e| e.to_string())?;
    let mc = generalized_mc_extract(&ce.differential, &rc).map_err(|e| e.to_string())?;
    ensure(all_zero(&generalized_round_trip(&ce.differential, &rc, &mc)), || "CE round trip".into())?;
    Ok("level 1, level 2, corrupted controls, exterior derivative, su2 CE".into())
}

fn problem(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("problems")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn invoke(args: &[&str]) -> cli::Outcome {
    let argv = std::iter::once("brst").chain(args.iter().copied());
    cli::run(&Cli::try_parse_from(argv).expect("arguments parse"))
}

fn cli_criterion() -> Outcome {
    let t = reducible::fixtures::level_one(false).0;
    let mut smp = Sampler::new(10);
    for i in 0..100 {
        let e = smp.element(&t);
        let printed = e.to_text(&t);
        let back = parse_polynomial(&printed, &t).map_err(|err| format!("sample {i}: {err}"))?;
        ensure(back == e && back.to_text(&t) == printed, || format!("sample {i}: {printed}"))?;
    }

    for (cmd, file) in [("mc", "open_m2"), ("expand", "so3"), ("cohomology", "abelian_r4_single")] {
        let path = problem(file);
        let args = [cmd, "--input", &path, "--seed", "7"];
        let (a, b) = (invoke(&args), invoke(&args));
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("{cmd} {file}: report bytes differ"))?;
    }

    let expect = [
        (vec!["verify", "--input", "so3"], cli::EXIT_PASS),
        (vec!["cohomology", "--input", "abelian_r4_single", "--gh", "0", "--deg", "3"], cli::EXIT_PASS),
        (vec!["reducible", "--input", "reducible_level2_corrupt"], cli::EXIT_CHECK_FAILED),
        (vec!["closure", "--input", "open_m3"], cli::EXIT_CHECK_FAILED),
        (vec!["verify", "--input", "malformed"], cli::EXIT_INPUT),
        (vec!["verify", "--input", "does_not_exist"], cli::EXIT_INPUT),
        (vec!["verify", "--input", "second_class"], cli::EXIT_BOUND),
        (vec!["charge", "--input", "so3", "--max-order", "0"], cli::EXIT_BOUND),
    ];
    for (args, code) in expect {
        let path = problem(args[2]);
        let mut argv = args.clone();
        argv[2] = &path;
        let got = invoke(&argv).code;
        ensure(got == code, || format!("{}: exit {got}, expected {code}", args.join(" ")))?;
    }
    Ok("100 round trips; identical bytes over two runs; exit codes 0-3".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("superalgebra laws", 10, superalgebra_laws),
        ("Koszul-Tate and longitudinal identities", 30, koszul_tate_and_longitudinal),
        ("BRST charge", 120, brst_charge),
        ("expansion identities", 0, expansion_identities),
        ("Maurer-Cartan round trip", 0, round_trip_and_derivations),
        ("lemma and Lie closure", 0, lemma_and_lie_closure),
        ("off-shell gauge closure", 0, gauge_closure_criterion),
        ("cohomology oracle", 60, cohomology_oracle),
        ("reducible machinery", 0, reducible_machinery),
        ("CLI", 0, cli_criterion),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let over = *limit > 0 && took > Duration::from_secs(*limit);
        let (mark, note) = match (&result, over) {
            (Ok(n), false) => ("PASS", n.clone()),
            (Ok(n), true) => ("FAIL", format!("{n}; over the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {mark} {name} [{:.2} s]: {note}", i + 1, took.as_secs_f64());
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
