//! Koszul-Tate and longitudinal differentials, and the obstruction d² on an
//! open algebra.

use brst::differentials::{anticommutator, d_squared_formula, koszul_tate, longitudinal};
use brst::fixtures;
use brst::random::Sampler;

fn main() -> brst::Result<()> {
    for (name, cs) in [("so3", fixtures::so3()), ("open_m2", fixtures::open_m2())] {
        let t = cs.table();
        let delta = koszul_tate(&cs);
        let d = longitudinal(&cs);
        println!("== {name}");
        println!("delta: {}", delta.to_text(t));
        println!("d:     {}", d.to_text(t));
        println!("delta^2 = 0: {}", delta.is_nilpotent(t));
        let dd = anticommutator(t, &delta, &d)?;
        println!("[delta, d] = 0: {}", dd.action().values().all(|v| v.is_zero()));
        for (g, v) in d.nilpotency_defect(t) {
            println!("d^2 {} = {}", t.name(g), v.display(t));
        }
        let f = Sampler::new(3).coordinate_polynomial(t, 3, 3);
        let lhs = d.apply(&d.apply(&f));
        println!("f = {}", f.display(t));
        println!("d^2 f = {}", lhs.display(t));
        println!("matches 1/2([X_i,X_j] - C X_k) eta eta: {}", lhs == d_squared_formula(&cs, &f));
    }
    Ok(())
}
