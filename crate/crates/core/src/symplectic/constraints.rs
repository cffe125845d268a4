use crate::error::{Error, Result};
use crate::superalgebra::{GeneratorTable, SuperElement};

use super::{solve_structure_functions, PhaseSpace, VectorField};

/// `C[a][b][c] = C^c_{ab}`.
pub type StructureFunctions = Vec<Vec<Vec<SuperElement>>>;

/// Bosonic constraints `G_a` with structure functions, `[G_a,G_b] = C^c_{ab}G_c`.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    space: PhaseSpace,
    constraints: Vec<SuperElement>,
    structure: StructureFunctions,
}

#[derive(Clone, Debug)]
pub struct PairDefect {
    pub a: usize,
    pub b: usize,
    /// `[G_a,G_b] − C^c_{ab}G_c`
    pub defect: SuperElement,
}

#[derive(Clone, Debug)]
pub struct FirstClassReport {
    pub pairs: Vec<PairDefect>,
}

impl FirstClassReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.defect.is_zero())
    }

    pub fn failures(&self) -> usize {
        self.pairs.iter().filter(|p| !p.defect.is_zero()).count()
    }
}

impl ConstraintSystem {
    /// Validates shapes and gradings. The first-class identity itself is
    /// checked by [`ConstraintSystem::verify_first_class`].
    pub fn new(space: PhaseSpace, constraints: Vec<SuperElement>, structure: StructureFunctions) -> Result<Self> {
        let t = space.table();
        let m = constraints.len();
        if t.ghosts().len() != m || t.antighosts().len() != m {
            return Err(Error::Invalid(format!(
                "{m} constraints need {m} ghosts and {m} antighosts, table has {} and {}",
                t.ghosts().len(),
                t.antighosts().len()
            )));
        }
        for (a, g) in constraints.iter().enumerate() {
            if !g.is_coordinate_only(t) {
                return Err(Error::Invalid(format!("constraint G{} must be a bosonic function of coordinates", a + 1)));
            }
        }
        if structure.len() != m || structure.iter().any(|r| r.len() != m || r.iter().any(|c| c.len() != m)) {
            return Err(Error::Invalid(format!("structure functions must be {m}x{m}x{m}")));
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let s = &structure[a][b][c];
                    if !s.is_coordinate_only(t) {
                        return Err(Error::Invalid("structure functions must contain coordinates only".into()));
                    }
                    if !(s + &structure[b][a][c]).is_zero() {
                        return Err(Error::Invalid(format!(
                            "structure functions not antisymmetric at a={}, b={}, c={}",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(ConstraintSystem {
            space,
            constraints,
            structure,
        })
    }

    /// Constraints with structure functions found by the bounded solver.
    pub fn with_solved_structure(space: PhaseSpace, constraints: Vec<SuperElement>, bound: u32) -> Result<Self> {
        let c = solve_structure_functions(&space, &constraints, bound)?;
        Self::new(space, constraints, c)
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn table(&self) -> &GeneratorTable {
        self.space.table()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraint(&self, a: usize) -> &SuperElement {
        &self.constraints[a]
    }

    pub fn constraints(&self) -> &[SuperElement] {
        &self.constraints
    }

    /// `C^c_{ab}`
    pub fn structure(&self, a: usize, b: usize, c: usize) -> &SuperElement {
        &self.structure[a][b][c]
    }

    pub fn structure_functions(&self) -> &StructureFunctions {
        &self.structure
    }

    /// True when every `C^c_{ab}` is a constant.
    pub fn has_constant_structure(&self) -> bool {
        let t = self.table();
        self.structure
            .iter()
            .flatten()
            .flatten()
            .all(|c| c.max_degree(t, crate::superalgebra::Grading::ZDegree).unwrap_or(0) == 0)
    }

    /// `X_a^λ = σ^{λμ} ∂_μ G_a`, so that `X_a f = [f, G_a]`.
    pub fn hamiltonian_vector_field(&self, a: usize) -> VectorField {
        hamiltonian_field(&self.space, &self.constraints[a])
    }

    pub fn verify_first_class(&self) -> FirstClassReport {
        let m = self.len();
        let mut pairs = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let br = self
                    .space
                    .poisson_bracket(&self.constraints[a], &self.constraints[b])
                    .expect("constraints are coordinate-only");
                let rhs: SuperElement = (0..m).map(|c| &self.structure[a][b][c] * &self.constraints[c]).sum();
                pairs.push(PairDefect {
                    a,
                    b,
                    defect: &br - &rhs,
                });
            }
        }
        FirstClassReport { pairs }
    }

    /// Both sides of the on-shell closure of the Hamiltonian fields:
    /// `[X_b, X_a] = C^c_{ab} X_c + G_c X_{C^c_{ab}}`, where `X_F` is the
    /// Hamiltonian field of `F`.
    pub fn closure_decomposition(&self, a: usize, b: usize) -> (VectorField, VectorField) {
        let t = self.table();
        let xa = self.hamiltonian_vector_field(a);
        let xb = self.hamiltonian_vector_field(b);
        let lhs = xb.commutator(t, &xa);
        let mut rhs = VectorField::zero();
        for c in 0..self.len() {
            let cab = &self.structure[a][b][c];
            rhs = rhs.add(&self.hamiltonian_vector_field(c).scale(cab));
            rhs = rhs.add(&hamiltonian_field(&self.space, cab).scale(&self.constraints[c]));
        }
        (lhs, rhs)
    }
}

/// Hamiltonian vector field of a coordinate function.
pub fn hamiltonian_field(space: &PhaseSpace, g: &SuperElement) -> VectorField {
    let t = space.table();
    let coords = t.coordinates();
    let sigma = space.sigma();
    let mut v = VectorField::zero();
    for (mu, &zm) in coords.iter().enumerate() {
        let d = g.left_derivative(t, zm);
        if d.is_zero() {
            continue;
        }
        for (l, &zl) in coords.iter().enumerate() {
            if !num_traits::Zero::is_zero(&sigma[l][mu]) {
                v.add_component(zl, &d.scale(&sigma[l][mu]));
            }
        }
    }
    v
}
