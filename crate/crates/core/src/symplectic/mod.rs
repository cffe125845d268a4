//! Phase-space geometry: brackets, Hamiltonian vector fields, constraint
//! systems and bounded-degree ideal membership.

mod constraints;
mod ideal;
mod vector_field;

pub use constraints::{hamiltonian_field, ConstraintSystem, FirstClassReport, PairDefect, StructureFunctions};
pub use ideal::{default_degree_bound, ideal_membership, solve_structure_functions};
pub use vector_field::VectorField;

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::superalgebra::{integer, GenId, GeneratorTable, Scalar, SuperElement};

/// Symplectic vector space R^{2n} with constant symplectic form.
///
/// `sigma` is the Poisson tensor σ^{λμ}, the inverse of ω_{μν}; the bracket
/// of coordinate functions is `[f, g] = ∂_λf σ^{λμ} ∂_μg`. The default
/// ordering of coordinates is `(x¹..xⁿ, p₁..pₙ)` with `[x^i, p_j] = δ^i_j`.
#[derive(Clone, Debug)]
pub struct PhaseSpace {
    table: Arc<GeneratorTable>,
    omega: Vec<Vec<Scalar>>,
    sigma: Vec<Vec<Scalar>>,
}

impl PhaseSpace {
    /// R^{2n} with `m` ghost/antighost pairs and the canonical form.
    pub fn canonical(n: usize, m: usize) -> Self {
        Self::from_table(GeneratorTable::phase_space(n, m)).expect("2n coordinates")
    }

    /// Canonical form on a custom table: the first half of the coordinates
    /// are positions, the second half their conjugate momenta.
    pub fn from_table(table: GeneratorTable) -> Result<Self> {
        let dim = table.coordinates().len();
        if dim % 2 != 0 {
            return Err(Error::Invalid(format!("phase space dimension {dim} is odd")));
        }
        let n = dim / 2;
        let mut omega = vec![vec![Scalar::zero(); dim]; dim];
        for i in 0..n {
            omega[i][n + i] = integer(-1);
            omega[n + i][i] = integer(1);
        }
        Self::with_symplectic_form(table, omega)
    }

    /// Arbitrary constant symplectic matrix ω_{μν}.
    pub fn with_symplectic_form(table: GeneratorTable, omega: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = table.coordinates().len();
        if omega.len() != dim || omega.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid(format!("symplectic matrix must be {dim}x{dim}")));
        }
        for i in 0..dim {
            for j in 0..dim {
                if omega[i][j] != -omega[j][i].clone() {
                    return Err(Error::Invalid("symplectic matrix is not antisymmetric".into()));
                }
            }
        }
        let sigma = invert(&omega).ok_or_else(|| Error::Invalid("symplectic matrix is singular".into()))?;
        Ok(PhaseSpace {
            table: Arc::new(table),
            omega,
            sigma,
        })
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn shared_table(&self) -> Arc<GeneratorTable> {
        self.table.clone()
    }

    pub fn dimension(&self) -> usize {
        self.sigma.len()
    }

    pub fn omega(&self) -> &[Vec<Scalar>] {
        &self.omega
    }

    pub fn sigma(&self) -> &[Vec<Scalar>] {
        &self.sigma
    }

    fn coordinate_pairs(&self) -> impl Iterator<Item = (GenId, GenId, &Scalar)> + '_ {
        let coords = self.table.coordinates();
        self.sigma.iter().enumerate().flat_map(move |(l, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(move |(m, s)| (coords[l], coords[m], s))
        })
    }

    fn coordinate_bracket(&self, f: &SuperElement, g: &SuperElement) -> SuperElement {
        let t = &*self.table;
        let mut out = SuperElement::zero();
        for (l, m, s) in self.coordinate_pairs() {
            let df = f.right_derivative(t, l);
            if df.is_zero() {
                continue;
            }
            let dg = g.left_derivative(t, m);
            if dg.is_zero() {
                continue;
            }
            out += (&df * &dg).scale(s);
        }
        out
    }

    /// Poisson bracket of coordinate-only functions.
    pub fn poisson_bracket(&self, f: &SuperElement, g: &SuperElement) -> Result<SuperElement> {
        if !f.is_coordinate_only(&self.table) || !g.is_coordinate_only(&self.table) {
            return Err(Error::GhostInBracket);
        }
        Ok(self.coordinate_bracket(f, g))
    }

    /// Graded Poisson bracket on the extended phase space.
    ///
    /// Ghosts pair with antighosts as `[P_a, η^b] = [η^b, P_a] = δ^b_a`:
    ///
    /// `[F, G] = ∂^R_λF σ^{λμ} ∂^L_μG + ∂^R F/∂η^a ∂^L G/∂P_a + ∂^R F/∂P_a ∂^L G/∂η^a`.
    ///
    /// With this pairing the left-acting BRST differential
    /// `s F = (−1)^{|F|} [F, Ω]` sends `P_a` to `−G_a` at lowest order.
    /// Higher ghosts carry no conjugates and behave as constants here.
    pub fn extended_bracket(&self, f: &SuperElement, g: &SuperElement) -> SuperElement {
        let t = &*self.table;
        let mut out = self.coordinate_bracket(f, g);
        let pairs = t.ghosts().len().min(t.antighosts().len());
        for a in 0..pairs {
            let (eta, p) = (t.ghost(a), t.antighost(a));
            for (x, y) in [(eta, p), (p, eta)] {
                let df = f.right_derivative(t, x);
                if df.is_zero() {
                    continue;
                }
                let dg = g.left_derivative(t, y);
                if !dg.is_zero() {
                    out += &df * &dg;
                }
            }
        }
        out
    }
}

fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(pivot_row) {
                    *v = &*v - &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &PhaseSpace, n: &str) -> SuperElement {
        SuperElement::named(s.table(), n)
    }

    #[test]
    fn canonical_bracket() {
        let s = PhaseSpace::canonical(1, 0);
        assert_eq!(s.poisson_bracket(&e(&s, "x1"), &e(&s, "p1")).unwrap(), SuperElement::one());
        assert_eq!(s.poisson_bracket(&e(&s, "p1"), &e(&s, "x1")).unwrap(), SuperElement::integer(-1));
        let f = &e(&s, "x1").pow(2) * &e(&s, "p1");
        assert!(s.poisson_bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn sigma_inverts_omega() {
        let s = PhaseSpace::canonical(2, 0);
        let n = s.dimension();
        for i in 0..n {
            for j in 0..n {
                let v: Scalar = (0..n).map(|k| &s.sigma()[i][k] * &s.omega()[k][j]).sum();
                assert_eq!(v, if i == j { Scalar::one() } else { Scalar::zero() });
            }
        }
    }

    #[test]
    fn ghosts_rejected_by_plain_bracket() {
        let s = PhaseSpace::canonical(1, 1);
        let r = s.poisson_bracket(&e(&s, "eta1"), &e(&s, "x1"));
        assert!(matches!(r, Err(Error::GhostInBracket)));
    }

    #[test]
    fn ghost_pairing() {
        let s = PhaseSpace::canonical(1, 2);
        assert_eq!(s.extended_bracket(&e(&s, "P1"), &e(&s, "eta1")), SuperElement::one());
        assert_eq!(s.extended_bracket(&e(&s, "eta1"), &e(&s, "P1")), SuperElement::one());
        assert!(s.extended_bracket(&e(&s, "eta1"), &e(&s, "eta2")).is_zero());
        assert!(s.extended_bracket(&e(&s, "P1"), &e(&s, "eta2")).is_zero());
        // [P_a, η^b G_b] = G_a
        let om = &(&e(&s, "eta1") * &e(&s, "p1")) + &(&e(&s, "eta2") * &e(&s, "x1"));
        assert_eq!(s.extended_bracket(&e(&s, "P1"), &om), e(&s, "p1"));
        assert_eq!(s.extended_bracket(&e(&s, "P2"), &om), e(&s, "x1"));
    }

    #[test]
    fn singular_form_rejected() {
        let t = GeneratorTable::phase_space(1, 0);
        let z = vec![vec![Scalar::zero(); 2]; 2];
        assert!(PhaseSpace::with_symplectic_form(t, z).is_err());
    }
}
