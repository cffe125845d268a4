//! Poisson brackets, first-class checks and the on-shell closure of the
//! Hamiltonian fields.

use brst::cli::parse_polynomial;
use brst::fixtures;
use brst::symplectic::{solve_structure_functions, ConstraintSystem, PhaseSpace};

fn main() -> brst::Result<()> {
    // angular momentum: solve for C instead of supplying it
    let space = PhaseSpace::canonical(3, 3);
    let t = space.table().clone();
    let g = ["x2*p3 - x3*p2", "x3*p1 - x1*p3", "x1*p2 - x2*p1"]
        .iter()
        .map(|s| parse_polynomial(s, &t))
        .collect::<brst::Result<Vec<_>>>()?;
    let c = solve_structure_functions(&space, &g, 2)?;
    for a in 0..3 {
        for b in a + 1..3 {
            let bracket = space.poisson_bracket(&g[a], &g[b])?;
            let rhs: Vec<String> = (0..3)
                .filter(|&k| !c[a][b][k].is_zero())
                .map(|k| format!("({})*G{}", c[a][b][k].display(&t), k + 1))
                .collect();
            println!("[G{}, G{}] = {} = {}", a + 1, b + 1, bracket.display(&t), rhs.join(" + "));
        }
    }
    let so3 = ConstraintSystem::new(space, g, c)?;
    println!("first class: {}", so3.verify_first_class().passed());

    // second class: [x1, p1] = 1 is not in the ideal
    let space = PhaseSpace::canonical(1, 2);
    let t = space.table().clone();
    let pair = vec![parse_polynomial("x1", &t)?, parse_polynomial("p1", &t)?];
    match ConstraintSystem::with_solved_structure(space, pair, 3) {
        Err(e) => println!("x1, p1: {e}"),
        Ok(_) => println!("x1, p1: unexpectedly first class"),
    }

    // open algebra: the fields close only on shell
    let open = fixtures::open_m2();
    let t = open.table();
    for a in 0..2 {
        println!("X{} = {}", a + 1, open.hamiltonian_vector_field(a).to_text(t));
    }
    let (lhs, rhs) = open.closure_decomposition(0, 1);
    println!("[X2, X1]            = {}", lhs.to_text(t));
    println!("C X + G X_C         = {}", rhs.to_text(t));
    Ok(())
}
