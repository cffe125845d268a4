//! Small constraint systems used by tests, examples and the CLI.

use crate::cli::parse_polynomial;
use crate::superalgebra::SuperElement;
use crate::symplectic::{ConstraintSystem, PhaseSpace};

/// Builds a system on R^{2n} from constraint strings and sparse structure
/// entries `(a, b, c, C^c_{ab})` with `a < b`, 1-based.
pub fn system(n: usize, constraints: &[&str], structure: &[(usize, usize, usize, &str)]) -> ConstraintSystem {
    let m = constraints.len();
    let space = PhaseSpace::canonical(n, m);
    let t = space.table();
    let g: Vec<SuperElement> = constraints.iter().map(|s| parse_polynomial(s, t).expect("fixture")).collect();
    let mut c = vec![vec![vec![SuperElement::zero(); m]; m]; m];
    for &(a, b, k, s) in structure {
        let v = parse_polynomial(s, t).expect("fixture");
        c[b - 1][a - 1][k - 1] = -&v;
        c[a - 1][b - 1][k - 1] = v;
    }
    ConstraintSystem::new(space, g, c).expect("fixture is well formed")
}

/// R⁴ with `G = (p₁, p₂)`.
pub fn abelian_r4() -> ConstraintSystem {
    system(2, &["p1", "p2"], &[])
}

/// R² with `G = p₁`.
pub fn abelian_r2() -> ConstraintSystem {
    system(1, &["p1"], &[])
}

/// R⁴ with the single constraint `G = p₁`.
pub fn abelian_r4_single() -> ConstraintSystem {
    system(2, &["p1"], &[])
}

/// Angular momentum on R⁶: `G_a = ε_{abc} x^b p^c`, `C^c_{ab} = ε_{abc}`.
pub fn so3() -> ConstraintSystem {
    system(
        3,
        &["x2*p3 - x3*p2", "x3*p1 - x1*p3", "x1*p2 - x2*p1"],
        &[(1, 2, 3, "1"), (2, 3, 1, "1"), (1, 3, 2, "-1")],
    )
}

/// Open algebra on R⁴: `G₁ = p₁`, `G₂ = p₂ + (x¹)²p₁`, `C¹₁₂ = −2x¹`.
pub fn open_m2() -> ConstraintSystem {
    system(2, &["p1", "p2 + x1^2*p1"], &[(1, 2, 1, "-2*x1")])
}

/// Three constraints whose structure functions carry a field-dependent
/// trivial part `x³(G₂e₁ − G₁e₂)` on top of the open pair of [`open_m2`].
/// Off shell the Jacobi identity fails, which forces a nonzero Ω₂.
pub fn open_m3() -> ConstraintSystem {
    system(
        3,
        &["p1", "p2 + x1^2*p1", "p3"],
        &[(1, 2, 1, "-2*x1 + x3*p2 + x3*x1^2*p1"), (1, 2, 2, "-x3*p1")],
    )
}
