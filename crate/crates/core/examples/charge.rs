//! The BRST charge order by order, certified by the full bracket [Ω, Ω].

use brst::brst::build_charge;
use brst::fixtures;
use brst::Error;

fn main() -> brst::Result<()> {
    for (name, cs) in [
        ("abelian_r4", fixtures::abelian_r4()),
        ("so3", fixtures::so3()),
        ("open_m2", fixtures::open_m2()),
        ("open_m3", fixtures::open_m3()),
    ] {
        let t = cs.table();
        let omega = build_charge(&cs, 3, 4)?;
        println!("== {name}: order {}", omega.order());
        for (k, term) in omega.terms().iter().enumerate() {
            println!("  Omega_{k} = {}", term.display(t));
        }
        let total = omega.total();
        println!("  [Omega, Omega] = {}", cs.space().extended_bracket(&total, &total).display(t));
    }

    // a cap below the needed order keeps the partial charge
    match build_charge(&fixtures::open_m3(), 1, 4) {
        Err(Error::OrderExceeded { .. }) => println!("open_m3 with K = 1: order exceeded"),
        other => println!("open_m3 with K = 1: {other:?}"),
    }
    Ok(())
}
