//! Reducible constraints: the Z chain, the auxiliary differential Δ, and
//! the generalized Maurer-Cartan form on reducible complexes.

use brst::cohomology::{ce_complex, su2_structure, Representation};
use brst::reducible::{
    auxiliary_differential, delta_squared_on_shell, exterior_derivative, fixtures, from_ce, generalized_mc_extract,
    generalized_round_trip, verify_reducibility,
};

fn main() -> brst::Result<()> {
    let (t, g, rd) = fixtures::level_two(false);
    println!("constraints: {}", g.iter().map(|e| e.to_text(&t)).collect::<Vec<_>>().join(", "));
    for r in verify_reducibility(&g, &rd)?.relations {
        let lower = r.lower.map(|l| format!(", a0 = {l}")).unwrap_or_default();
        println!("level {}, a = {}{lower}: defect {}", r.level, r.upper, r.defect.display(&t));
    }
    let delta = auxiliary_differential(&t, &rd)?;
    println!("Delta: {}", delta.to_text(&t));
    for e in delta_squared_on_shell(&t, &g, &delta, 3)? {
        if !e.value.is_zero() {
            println!("Delta^2 {} = {} (in the ideal)", t.name(e.generator), e.value.display(&t));
        }
    }

    let (_, g, bad) = fixtures::level_two(true);
    println!("corrupted Z passes: {}", verify_reducibility(&g, &bad)?.passed());

    let (rc, d) = exterior_derivative(3)?;
    let mc = generalized_mc_extract(&d, &rc)?;
    for (i, r) in mc.rho.iter().enumerate() {
        if !r.is_zero() {
            println!("d on forms: rho_{} = {}", i + 1, r.to_text(&rc.table));
        }
    }

    let ce = ce_complex(&su2_structure(), &Representation::Trivial)?;
    let rc = from_ce(&ce)?;
    let mc = generalized_mc_extract(&ce.differential, &rc)?;
    for ((i, j, k, n), c) in &mc.structure {
        println!("su(2): C^{i}_{{{j} {k} {n}}} = {}", c.display(&rc.table));
    }
    let ok = generalized_round_trip(&ce.differential, &rc, &mc).iter().all(|e| e.is_zero());
    println!("round trip: {ok}");
    Ok(())
}
