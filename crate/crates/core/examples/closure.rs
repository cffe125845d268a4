//! Closure of the ρ fields and the off-shell closure of the gauge fields.

use brst::brst::BrstDifferential;
use brst::fixtures;
use brst::maurer_cartan::{extract, gauge_closure, lie_closure};

fn main() -> brst::Result<()> {
    for (name, cs) in [("so3", fixtures::so3()), ("open_m2", fixtures::open_m2()), ("open_m3", fixtures::open_m3())] {
        let t = cs.table();
        let s = BrstDifferential::build(&cs, 3, 4)?;
        let mc = extract(&s, None)?;
        println!("== {name}");

        let lc = lie_closure(t, &mc, 3);
        for p in lc.pairs.iter().filter(|p| p.coefficients.is_none()) {
            println!(
                "  [rho{}, rho{}] = {} leaves the module",
                mc.indices[p.i],
                mc.indices[p.j],
                p.commutator.to_text(t)
            );
        }
        println!("  rho closure: {}", lc.passed());

        let gc = gauge_closure(&cs, &mc, 3)?;
        for p in gc.pairs.iter().filter(|p| !p.defect.is_zero()) {
            println!("  [X{}, X{}] - C X = {}", p.i + 1, p.j + 1, p.defect.to_text(t));
            for (c, r) in p.rho.iter().enumerate() {
                if !r.is_zero() {
                    println!("    rho^{} = {}", c + 1, r.to_text(t));
                }
            }
            println!("    agrees with extraction: {:?}", p.agrees_exactly);
        }
        println!("  gauge closure: {}", gc.passed());
    }
    Ok(())
}
