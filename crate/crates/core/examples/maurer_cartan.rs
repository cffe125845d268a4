//! The Maurer-Cartan form of S over the multi-ghosts ω^I.

use brst::brst::BrstDifferential;
use brst::fixtures;
use brst::maurer_cartan::{extract, jacobi_check, lemma_check, round_trip};
use brst::random::Sampler;

fn main() -> brst::Result<()> {
    let cs = fixtures::open_m3();
    let t = cs.table();
    let s = BrstDifferential::build(&cs, 3, 4)?;
    let mc = extract(&s, None)?;
    for (i, idx) in mc.indices.iter().enumerate() {
        println!("omega{idx} = {}", mc.elements[i].display(t));
        if !mc.rho[i].is_zero() {
            println!("  rho = {}", mc.rho[i].to_text(t));
        }
    }
    for ((i, j, k), c) in &mc.structure {
        if i < j {
            println!("C^{}_{{{} {}}} = {}", mc.indices[*k], mc.indices[*i], mc.indices[*j], c.display(t));
        }
    }
    let worst = round_trip(&s, &mc).into_iter().filter(|(_, r)| !r.is_zero()).count();
    println!("round trip residuals: {worst} nonzero");
    let fs: Vec<_> = (0..5).map(|i| Sampler::new(i).coordinate_polynomial(t, 2, 3)).collect();
    let lemma = lemma_check(&s, &mc, &fs).iter().all(|r| r.residual().is_zero());
    println!("S^2 f identity: {lemma}");
    println!("Jacobi sums vanish: {}", jacobi_check(&s, &mc).iter().all(|e| e.is_zero()));
    Ok(())
}
