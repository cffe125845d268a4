//! Truncated BRST cohomology and Chevalley-Eilenberg cohomology.

use brst::brst::BrstDifferential;
use brst::cohomology::{ce_complex, cohomology_dim, su2_structure, Representation};
use brst::fixtures;

fn main() -> brst::Result<()> {
    // R⁴ with G = p1: observables are polynomials in x2, p2, so the
    // truncated dimension keeps growing and is never flagged stable
    let cs = fixtures::abelian_r4_single();
    let t = cs.table();
    let s = BrstDifferential::build(&cs, 3, 4)?;
    for d in 0..=3 {
        let r = cohomology_dim(&s, 0, d);
        println!("H^0, z-degree <= {d}: {} (stable: {})", r.dimension, r.stable);
    }
    let reps: Vec<String> = cohomology_dim(&s, 0, 1).representatives.iter().map(|e| e.to_text(t)).collect();
    println!("representatives at degree 1: {}", reps.join(", "));

    let f = su2_structure();
    let trivial = ce_complex(&f, &Representation::Trivial)?;
    let dims: Vec<usize> = (0..=3).map(|g| trivial.cohomology(g, 0).dimension).collect();
    println!("su(2), trivial module: {dims:?}");

    // adjoint action on linear functions; the Casimir shows up at degree 2
    let e = |a: usize, b: usize, c: usize| f[a][b][c].clone();
    let adjoint: Vec<Vec<Vec<_>>> = (0..3)
        .map(|a| (0..3).map(|j| (0..3).map(|i| e(a, i, j)).collect()).collect())
        .collect();
    let adj = ce_complex(&f, &Representation::Matrices(adjoint))?;
    let r = adj.cohomology(0, 2);
    println!("su(2), adjoint polynomials of degree <= 2: H^0 = {}", r.dimension);
    for rep in &r.representatives {
        println!("  {}", rep.display(&adj.table));
    }
    Ok(())
}
