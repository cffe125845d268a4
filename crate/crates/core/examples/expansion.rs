//! S = δ + d + s₁ + ⋯ read off the charge by antighost grading.

use brst::brst::{s1_on_antighosts, s1_residual, BrstDifferential};
use brst::fixtures;

fn main() -> brst::Result<()> {
    let cs = fixtures::open_m2();
    let t = cs.table();
    let s = BrstDifferential::build(&cs, 3, 4)?;
    for k in -1..=s.max_expansion_order() {
        println!("s_{k}: {}", s.expansion_term(k)?.to_text(t));
    }
    let ids = s.structure_identities();
    println!("delta^2 = 0, [delta, d] = 0, d^2 = -[delta, s1]: {}", ids.passed());
    println!("d^2 = 0 on its own: {}", ids.d_squared_zero);

    // s1 on the antighosts solved directly from d^2 = -[delta, s1]
    let d = s.expansion_term(0)?;
    let direct = s1_on_antighosts(&cs, d, 4)?;
    for &p in t.antighosts() {
        println!("s1 {} = {}", t.name(p), direct.value(p).display(t));
    }
    let residual = s1_residual(&cs, d, &direct);
    println!("defining equation holds: {}", residual.values().all(|v| v.is_zero()));
    Ok(())
}
