//! Exact cohomology of finite truncations `Ω^g_{≤D}` of a differential
//! algebra, and the Chevalley-Eilenberg complex of a Lie algebra.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::brst::BrstDifferential;
use crate::differentials::{Derivation, Differential};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank, rank_fraction_free, Column, Echelon};
use crate::superalgebra::{
    combinations, monomials_up_to, rational, GenId, GeneratorTable, Grading, Monomial, Parity, Scalar, SuperElement,
};
use crate::symplectic::VectorField;

/// Default extra z-degree allowed for preimages when counting boundaries.
pub const DEFAULT_WINDOW: u32 = 2;

/// Basis monomials of ghost number `g` with z-degree ≤ `d`. The ghost
/// sector is built from the odd non-coordinate generators.
pub fn basis(table: &GeneratorTable, g: i64, d: u32) -> Vec<Monomial> {
    let odd: Vec<GenId> = table
        .ids()
        .filter(|&id| !table.get(id).is_coordinate() && table.is_odd(id))
        .collect();
    let coords = monomials_up_to(table.coordinates(), d);
    let mut out = Vec::new();
    for k in 0..=odd.len() {
        for subset in combinations(&odd, k) {
            let ghost = SuperElement::normalize(table, &[(Scalar::one(), subset)]).expect("distinct odd generators");
            let Some((gm, _)) = ghost.terms().next() else { continue };
            if Grading::GhostNumber.of_monomial(table, gm) != g {
                continue;
            }
            for z in &coords {
                out.push(crate::superalgebra::join(z, gm));
            }
        }
    }
    out.sort();
    out
}

/// Matrix of a differential on `Ω^g_{≤D}`, stored by columns.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub ghost_number: i64,
    pub z_degree_bound: u32,
    pub domain: Vec<Monomial>,
    /// Every monomial that occurs in the image, sorted.
    pub codomain: Vec<Monomial>,
    pub columns: Vec<Column<Monomial>>,
}

impl Truncation {
    pub fn rank(&self) -> usize {
        rank(&self.columns)
    }

    /// Dense matrix, rows indexed by `codomain`.
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        let row_of: BTreeMap<&Monomial, usize> = self.codomain.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = vec![vec![Scalar::zero(); self.domain.len()]; self.codomain.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for (m, v) in col {
                out[row_of[m]][j] = v.clone();
            }
        }
        out
    }
}

fn column(e: SuperElement) -> Column<Monomial> {
    e.into_terms().collect()
}

/// Applies `diff` to every basis monomial of `Ω^g_{≤D}`.
pub fn assemble_matrix(table: &GeneratorTable, diff: &dyn Differential, g: i64, d: u32) -> Truncation {
    let domain = basis(table, g, d);
    let columns: Vec<Column<Monomial>> = domain
        .iter()
        .map(|m| column(diff.apply(&SuperElement::term(m.clone(), Scalar::one()))))
        .collect();
    let codomain: BTreeSet<Monomial> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
    Truncation {
        ghost_number: g,
        z_degree_bound: d,
        domain,
        codomain: codomain.into_iter().collect(),
        columns,
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub ghost_number: i64,
    pub z_degree_bound: u32,
    pub dimension: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub representatives: Vec<SuperElement>,
    /// Preimages of boundaries were taken from z-degree ≤ D + window.
    pub window: u32,
    /// Boundary count unchanged with window + 1.
    pub window_stable: bool,
    /// Dimension of the same computation at D + 1.
    pub next_dimension: usize,
    /// `dimension == next_dimension`.
    pub stable: bool,
    /// Fraction-free rank agrees with the rational one.
    pub rank_cross_checked: bool,
}

struct Core {
    dimension: usize,
    cycles: Vec<Vec<Scalar>>,
    boundary_vectors: Vec<Column<Monomial>>,
    domain: Vec<Monomial>,
    rank_ok: bool,
}

/// A basis of `im S ∩ Ω^g_{≤D}` from preimages in `Ω^{g−1}_{≤D+L}`.
///
/// Images are eliminated with the z-degree > D keys ordered first; the
/// echelon rows whose pivot lies among the low keys then span exactly the
/// images with no high part.
fn boundaries(table: &GeneratorTable, diff: &dyn Differential, g: i64, d: u32, window: u32) -> Vec<Column<Monomial>> {
    let pre = assemble_matrix(table, diff, g - 1, d + window);
    let low = |m: &Monomial| Grading::ZDegree.of_monomial(table, m) <= d as i64;
    let mut keys: Vec<&Monomial> = pre.codomain.iter().collect();
    keys.sort_by_key(|m| low(m));
    let high = keys.iter().filter(|m| !low(m)).count();
    let index: BTreeMap<&Monomial, usize> = keys.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut ech = Echelon::new(keys.len(), 0);
    for col in &pre.columns {
        let mut row: Vec<(usize, Scalar)> = col.iter().map(|(m, v)| (index[m], v.clone())).collect();
        row.sort_by_key(|e| e.0);
        ech.insert(row);
    }
    ech.rows()
        .filter(|(p, _)| *p >= high)
        .map(|(_, row)| row.iter().map(|(i, v)| (keys[*i].clone(), v.clone())).collect())
        .collect()
}

fn core(table: &GeneratorTable, diff: &dyn Differential, g: i64, d: u32, window: u32) -> Core {
    let a = assemble_matrix(table, diff, g, d);
    let r = a.rank();
    let rank_ok = rank_fraction_free(&a.columns) == r;
    let cycles = nullspace(&a.columns);
    let boundary_vectors = boundaries(table, diff, g, d, window);
    Core {
        dimension: cycles.len() - boundary_vectors.len(),
        cycles,
        boundary_vectors,
        domain: a.domain,
        rank_ok,
    }
}

/// `dim H^g` of the truncation `Ω^g_{≤D}` with explicit preimage window.
pub fn cohomology_with_window(table: &GeneratorTable, diff: &dyn Differential, g: i64, d: u32, window: u32) -> CohomologyReport {
    let c = core(table, diff, g, d, window);
    let index: BTreeMap<&Monomial, usize> = c.domain.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(c.domain.len(), 0);
    let mut boundaries = 0;
    for v in &c.boundary_vectors {
        let mut row: Vec<(usize, Scalar)> = v.iter().map(|(m, x)| (index[m], x.clone())).collect();
        row.sort_by_key(|e| e.0);
        boundaries += ech.insert(row) as usize;
    }
    let mut representatives = Vec::new();
    for z in &c.cycles {
        let row: Vec<(usize, Scalar)> = z
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        if ech.insert(row) {
            let mut e = SuperElement::zero();
            for (i, v) in z.iter().enumerate() {
                if !v.is_zero() {
                    e.add_term(c.domain[i].clone(), v.clone());
                }
            }
            representatives.push(e);
        }
    }
    debug_assert_eq!(representatives.len(), c.dimension);
    debug_assert_eq!(boundaries, c.cycles.len() - c.dimension);
    let wider = self::boundaries(table, diff, g, d, window + 1).len();
    let next = core(table, diff, g, d + 1, window);
    CohomologyReport {
        ghost_number: g,
        z_degree_bound: d,
        dimension: c.dimension,
        cycles: c.cycles.len(),
        boundaries,
        representatives,
        window,
        window_stable: wider == boundaries,
        next_dimension: next.dimension,
        stable: next.dimension == c.dimension,
        rank_cross_checked: c.rank_ok && next.rank_ok,
    }
}

pub fn cohomology(table: &GeneratorTable, diff: &dyn Differential, g: i64, d: u32) -> CohomologyReport {
    cohomology_with_window(table, diff, g, d, DEFAULT_WINDOW)
}

/// BRST cohomology `H^g(S)` truncated at z-degree `d`.
pub fn cohomology_dim(s: &BrstDifferential, g: i64, d: u32) -> CohomologyReport {
    cohomology(s.system().table(), s, g, d)
}

/// Representation of a Lie algebra for the Chevalley-Eilenberg complex.
#[derive(Clone, Debug)]
pub enum Representation {
    /// Trivial action on the constants.
    Trivial,
    /// Linear action on coordinates `z1..zn`: `e_a · z^i = Σ_j M_a[j][i] z^j`.
    Matrices(Vec<Vec<Vec<Scalar>>>),
}

/// The Chevalley-Eilenberg complex `A = 𝒜 ⊗ Λ[η]`.
#[derive(Clone, Debug)]
pub struct CeComplex {
    pub table: GeneratorTable,
    pub differential: Derivation,
}

impl CeComplex {
    pub fn cohomology(&self, g: i64, d: u32) -> CohomologyReport {
        cohomology(&self.table, &self.differential, g, d)
    }
}

fn check_jacobi(f: &[Vec<Vec<Scalar>>]) -> Result<()> {
    let m = f.len();
    for a in 0..m {
        for b in 0..m {
            if f[a][b] != f[b][a].iter().map(|x| -x).collect::<Vec<_>>() {
                return Err(Error::Invalid(format!("structure constants not antisymmetric in ({}, {})", a + 1, b + 1)));
            }
        }
    }
    // f^d_{ab} f^e_{dc} + cyclic(a, b, c) = 0
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for e in 0..m {
                    let s: Scalar = (0..m)
                        .map(|d| &f[a][b][d] * &f[d][c][e] + &f[b][c][d] * &f[d][a][e] + &f[c][a][d] * &f[d][b][e])
                        .sum();
                    if !s.is_zero() {
                        return Err(Error::JacobiFailure(a, b, c));
                    }
                }
            }
        }
    }
    Ok(())
}

/// CE differential on an existing table whose ghosts are `η^1..η^m`:
/// `df = (ρ_a f)η^a`, `dη^a = −½f^a_{bc}η^bη^c`, with `f[a][b][c] = f^c_{ab}`
/// and `[ρ_a, ρ_b] = f^c_{ab}ρ_c`.
pub fn ce_differential(table: &GeneratorTable, f: &[Vec<Vec<Scalar>>], rho: &[VectorField]) -> Result<Derivation> {
    let m = f.len();
    if table.ghosts().len() != m || rho.len() != m {
        return Err(Error::Invalid(format!("expected {m} ghosts and {m} fields")));
    }
    check_jacobi(f)?;
    for a in 0..m {
        for b in 0..m {
            let lhs = rho[a].commutator(table, &rho[b]);
            let rhs = (0..m).fold(VectorField::zero(), |acc, c| {
                acc.add(&rho[c].scale(&SuperElement::constant(f[a][b][c].clone())))
            });
            if lhs != rhs {
                return Err(Error::NotARepresentation(format!("on [e{}, e{}]", a + 1, b + 1)));
            }
        }
    }
    let eta = |a: usize| SuperElement::generator(table, table.ghost(a));
    let mut d = Derivation::new(Parity::Odd, (1, 0));
    for &z in table.coordinates() {
        let zf = SuperElement::generator(table, z);
        let v: SuperElement = (0..m).map(|a| &rho[a].apply(table, &zf) * &eta(a)).sum();
        d.set(z, v);
    }
    let half = rational(-1, 2);
    for a in 0..m {
        let mut v = SuperElement::zero();
        for b in 0..m {
            for c in 0..m {
                if !f[b][c][a].is_zero() {
                    v += (&eta(b) * &eta(c)).scale(&(&half * &f[b][c][a]));
                }
            }
        }
        d.set(table.ghost(a), v);
    }
    if let Some((g, _)) = d.nilpotency_defect(table).into_iter().find(|(_, v)| !v.is_zero()) {
        return Err(Error::NotARepresentation(format!("on {}", table.name(g))));
    }
    Ok(d)
}

/// CE complex of `f^c_{ab}` in the given representation.
pub fn ce_complex(f: &[Vec<Vec<Scalar>>], rep: &Representation) -> Result<CeComplex> {
    let m = f.len();
    let n = match rep {
        Representation::Trivial => 0,
        Representation::Matrices(ms) => {
            if ms.len() != m {
                return Err(Error::Invalid(format!("expected {m} representation matrices")));
            }
            ms.first().map_or(0, Vec::len)
        }
    };
    let mut b = GeneratorTable::builder();
    for i in 1..=n {
        b = b.coordinate(format!("z{i}"));
    }
    for a in 1..=m {
        b = b.ghost(format!("eta{a}"));
    }
    let table = b.build()?;
    let rho: Vec<VectorField> = match rep {
        Representation::Trivial => vec![VectorField::zero(); m],
        Representation::Matrices(ms) => ms
            .iter()
            .map(|mat| {
                if mat.len() != n || mat.iter().any(|r| r.len() != n) {
                    return Err(Error::Invalid(format!("representation matrices must be {n}x{n}")));
                }
                let z = table.coordinates();
                Ok(VectorField::from_components((0..n).map(|i| {
                    let c: SuperElement = (0..n)
                        .map(|j| SuperElement::generator(&table, z[j]).scale(&mat[j][i]))
                        .sum();
                    (z[i], c)
                })))
            })
            .collect::<Result<_>>()?,
    };
    let differential = ce_differential(&table, f, &rho)?;
    Ok(CeComplex { table, differential })
}

/// `f^c_{ab} = ε_{abc}`.
pub fn su2_structure() -> Vec<Vec<Vec<Scalar>>> {
    let mut f = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        f[a][b][c] = Scalar::one();
        f[b][a][c] = -Scalar::one();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::superalgebra::integer;

    fn brst(cs: &crate::symplectic::ConstraintSystem) -> BrstDifferential {
        BrstDifferential::build(cs, 3, 4).unwrap()
    }

    #[test]
    fn abelian_r2_matrix() {
        let s = brst(&fixtures::abelian_r2());
        let t = s.system().table();
        let tr = assemble_matrix(t, &s, 0, 1);
        let names: Vec<String> = tr
            .domain
            .iter()
            .map(|m| SuperElement::term(m.clone(), Scalar::one()).to_text(t))
            .collect();
        assert!(["1", "x1", "p1"].iter().all(|n| names.contains(&n.to_string())));
        for (m, col) in tr.domain.iter().zip(&tr.columns) {
            let e = SuperElement::term(m.clone(), Scalar::one());
            assert_eq!(*col, column(s.apply(&e)));
        }
        let x1 = tr.domain.iter().position(|m| SuperElement::term(m.clone(), Scalar::one()).to_text(t) == "x1").unwrap();
        assert_eq!(SuperElement::term(tr.columns[x1].keys().next().unwrap().clone(), Scalar::one()).to_text(t), "eta1");
        let empty = assemble_matrix(t, &s, 5, 1);
        assert!(empty.domain.is_empty() && empty.matrix().is_empty());
    }

    #[test]
    fn complex_property() {
        for cs in [fixtures::abelian_r4(), fixtures::so3(), fixtures::open_m2()] {
            let s = brst(&cs);
            let t = s.system().table();
            for g in -1..=1 {
                let a = assemble_matrix(t, &s, g, 2);
                for col in &a.columns {
                    let e: SuperElement = col.iter().map(|(m, v)| SuperElement::term(m.clone(), v.clone())).sum();
                    assert!(s.apply(&e).is_zero());
                }
            }
        }
    }

    /// Invariant monomials on Σ = {p1 = 0}: polynomials in (x2, p2) of degree ≤ d.
    #[test]
    fn abelian_oracle() {
        let s = brst(&fixtures::abelian_r4_single());
        for d in 0..=3u32 {
            let r = cohomology_dim(&s, 0, d);
            assert_eq!(r.dimension, ((d + 1) * (d + 2) / 2) as usize, "d = {d}");
            assert!(r.rank_cross_checked && r.window_stable);
            for rep in &r.representatives {
                assert!(s.apply(rep).is_zero());
            }
        }
        let s = brst(&fixtures::abelian_r2());
        for d in 0..=4 {
            let r = cohomology_dim(&s, 0, d);
            assert_eq!(r.dimension, 1);
            assert!(r.stable);
        }
    }

    #[test]
    fn constants_at_degree_zero() {
        for cs in [fixtures::so3(), fixtures::open_m2()] {
            let r = cohomology_dim(&brst(&cs), 0, 0);
            assert_eq!(r.dimension, 1);
            assert_eq!(r.representatives[0].to_text(cs.table()), "1");
        }
    }

    #[test]
    fn su2_trivial() {
        let ce = ce_complex(&su2_structure(), &Representation::Trivial).unwrap();
        let dims: Vec<usize> = (0..=3).map(|g| ce.cohomology(g, 0).dimension).collect();
        assert_eq!(dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn su2_adjoint() {
        // adjoint: M_a[j][i] = f^j_{ai}
        let f = su2_structure();
        let ms: Vec<Vec<Vec<Scalar>>> = (0..3)
            .map(|a| (0..3).map(|j| (0..3).map(|i| f[a][i][j].clone()).collect()).collect())
            .collect();
        let ce = ce_complex(&f, &Representation::Matrices(ms)).unwrap();
        assert!(ce.differential.is_nilpotent(&ce.table));
        assert_eq!(ce.cohomology(0, 0).dimension, 1);
        // no invariant vectors in the adjoint, but the Casimir z·z is one
        assert_eq!(ce.cohomology(0, 1).dimension, 1);
        assert_eq!(ce.cohomology(0, 2).dimension, 2);
    }

    #[test]
    fn ce_rejects_bad_input() {
        // [e1,e2] = e3, [e1,e3] = e1: the cyclic sum on (e1,e2,e3) is e3
        let mut f = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        for (a, b, c) in [(0, 1, 2), (0, 2, 0)] {
            f[a][b][c] = integer(1);
            f[b][a][c] = integer(-1);
        }
        assert!(matches!(ce_complex(&f, &Representation::Trivial), Err(Error::JacobiFailure(..))));
        let abelian = vec![vec![vec![Scalar::zero(); 2]; 2]; 2];
        let ce = ce_complex(&abelian, &Representation::Trivial).unwrap();
        assert!(ce.differential.action().values().all(SuperElement::is_zero));
        let f = su2_structure();
        let ident = |k: i64| (0..2).map(|i| (0..2).map(|j| integer(if i == j { k } else { 0 })).collect()).collect();
        let bad = Representation::Matrices(vec![ident(1), ident(0), ident(0)]);
        assert!(matches!(ce_complex(&f, &bad), Err(Error::NotARepresentation(_))));
    }
}
