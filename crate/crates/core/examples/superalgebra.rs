//! Supercommutative arithmetic over coordinates, ghosts and antighosts.

use brst::cli::parse_polynomial;
use brst::superalgebra::{GeneratorTable, Grading, SuperElement};

fn main() -> brst::Result<()> {
    let t = GeneratorTable::phase_space(2, 2);
    let e = |s: &str| parse_polynomial(s, &t);

    let (eta1, eta2) = (e("eta1")?, e("eta2")?);
    println!("eta1*eta2       = {}", (&eta1 * &eta2).display(&t));
    println!("eta2*eta1       = {}", (&eta2 * &eta1).display(&t));
    println!("eta1*eta1       = {}", (&eta1 * &eta1).display(&t));

    // odd elements square to zero, even ones do not
    let odd = e("x1*eta1 + p2*P1*eta1*eta2")?;
    let even = e("x1 + P1*eta2")?;
    println!("(odd)^2         = {}", (&odd * &odd).display(&t));
    println!("(even)^2        = {}", (&even * &even).display(&t));

    let omega0 = e("eta1*p1 + eta2*p2")?;
    for g in [Grading::GhostNumber, Grading::PureGhost, Grading::AntiGhost, Grading::ZDegree] {
        println!("{g:?} of eta^a G_a: {:?}", omega0.degree(&t, g));
    }

    // left derivatives pick up the sign of the odd factors they pass
    let f = e("P1*eta1*eta2")?;
    for name in ["P1", "eta1", "eta2"] {
        let g = t.lookup(name).expect("declared");
        println!("d/d{name} (P1 eta1 eta2) = {}", f.left_derivative(&t, g).display(&t));
    }

    let mixed = SuperElement::named(&t, "x2").pow(3) - e("1/2*x1*P2*eta2")?;
    println!("printed {}  reparses: {}", mixed.display(&t), parse_polynomial(&mixed.to_text(&t), &t)? == mixed);
    Ok(())
}
