use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Column, KeyedSystem};
use crate::superalgebra::{join, monomials_up_to, Grading, GeneratorTable, Monomial, SuperElement};

use super::{PhaseSpace, StructureFunctions};

/// `deg(r) − min deg(G) + 2`, never negative.
pub fn default_degree_bound(table: &GeneratorTable, r: &SuperElement, gens: &[SuperElement]) -> u32 {
    let dr = r.max_degree(table, Grading::ZDegree).unwrap_or(0);
    let dg = gens
        .iter()
        .filter_map(|g| g.max_degree(table, Grading::ZDegree))
        .min()
        .unwrap_or(0);
    (dr - dg).max(0) as u32 + 2
}

/// Finds `h^c` with `r = h^c G_c` and `deg h^c ≤ bound`.
///
/// The multiplier degree is deepened one step at a time; within a step the
/// candidate columns `z^α G_c` are ordered by `(deg α, graded lex α, c)`, and
/// the elimination keeps leftmost pivots, so the returned multipliers have
/// minimal degree and a reproducible shape.
pub fn ideal_membership(
    table: &GeneratorTable,
    r: &SuperElement,
    gens: &[SuperElement],
    bound: u32,
) -> Result<Vec<SuperElement>> {
    ideal_membership_many(table, std::slice::from_ref(r), gens, bound)?
        .pop()
        .expect("one target")
        .ok_or(Error::NotInIdeal { bound })
}

/// Batched form of [`ideal_membership`]; `None` marks targets outside the
/// ideal within the bound.
pub(crate) fn ideal_membership_many(
    table: &GeneratorTable,
    targets: &[SuperElement],
    gens: &[SuperElement],
    bound: u32,
) -> Result<Vec<Option<Vec<SuperElement>>>> {
    for e in targets.iter().chain(gens) {
        if !e.is_coordinate_only(table) {
            return Err(Error::Invalid("ideal membership needs coordinate-only elements".into()));
        }
    }
    let mut out: Vec<Option<Vec<SuperElement>>> = targets
        .iter()
        .map(|r| r.is_zero().then(|| vec![SuperElement::zero(); gens.len()]))
        .collect();
    let max_g = gens
        .iter()
        .filter_map(|g| g.max_degree(table, Grading::ZDegree))
        .max();
    let Some(max_g) = max_g else {
        return Ok(out);
    };
    let coords = table.coordinates();
    for d in 0..=bound {
        let pending: Vec<usize> = (0..targets.len())
            .filter(|&i| out[i].is_none())
            .filter(|&i| {
                // high-degree targets need high-degree multipliers
                targets[i].max_degree(table, Grading::ZDegree).unwrap_or(0) <= d as i64 + max_g
            })
            .collect();
        if pending.is_empty() {
            if out.iter().all(Option::is_some) {
                break;
            }
            continue;
        }
        let alphas = monomials_up_to(coords, d);
        let mut cols: Vec<Column<Monomial>> = Vec::new();
        let mut labels: Vec<(Monomial, usize)> = Vec::new();
        for alpha in &alphas {
            for (c, g) in gens.iter().enumerate() {
                let mut col = Column::new();
                for (m, v) in g.terms() {
                    col.insert(join(alpha, m), v.clone());
                }
                cols.push(col);
                labels.push((alpha.clone(), c));
            }
        }
        let rhs: Vec<Column<Monomial>> = pending
            .iter()
            .map(|&i| targets[i].terms().map(|(m, v)| (m.clone(), v.clone())).collect())
            .collect();
        let sols = KeyedSystem::from_columns(&cols).solve_many(&rhs);
        for (&i, sol) in pending.iter().zip(sols) {
            if let Some(x) = sol {
                let mut h = vec![SuperElement::zero(); gens.len()];
                for ((alpha, c), v) in labels.iter().zip(x) {
                    if !v.is_zero() {
                        h[*c].add_term(alpha.clone(), v);
                    }
                }
                out[i] = Some(h);
            }
        }
    }
    Ok(out)
}

/// Solves `[G_a, G_b] = C^c_{ab} G_c` pair by pair; `C` is antisymmetric.
pub fn solve_structure_functions(
    space: &PhaseSpace,
    gens: &[SuperElement],
    bound: u32,
) -> Result<StructureFunctions> {
    let m = gens.len();
    let t = space.table();
    let mut c = vec![vec![vec![SuperElement::zero(); m]; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let r = space.poisson_bracket(&gens[a], &gens[b])?;
            let h = ideal_membership(t, &r, gens, bound).map_err(|e| match e {
                Error::NotInIdeal { bound } => Error::StructureNotFound { bound },
                e => e,
            })?;
            for (k, hk) in h.into_iter().enumerate() {
                c[b][a][k] = -&hk;
                c[a][b][k] = hk;
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(t: &GeneratorTable, s: &str) -> SuperElement {
        crate::cli::parse_polynomial(s, t).unwrap()
    }

    #[test]
    fn generator_itself() {
        let t = GeneratorTable::phase_space(2, 0);
        let g = vec![e(&t, "p1"), e(&t, "p2 + x1^2*p1")];
        let h = ideal_membership(&t, &g[0], &g, 2).unwrap();
        assert_eq!(h, vec![SuperElement::one(), SuperElement::zero()]);
    }

    #[test]
    fn constructed_member() {
        let t = GeneratorTable::phase_space(2, 0);
        let g = vec![e(&t, "p1"), e(&t, "p2")];
        let r = e(&t, "x2^2*p1 + 3*p2");
        let h = ideal_membership(&t, &r, &g, 3).unwrap();
        assert_eq!(h, vec![e(&t, "x2^2"), SuperElement::integer(3)]);
    }

    #[test]
    fn one_is_not_in_proper_ideal() {
        let t = GeneratorTable::phase_space(1, 0);
        let r = ideal_membership(&t, &SuperElement::one(), &[e(&t, "p1")], 5);
        assert!(matches!(r, Err(Error::NotInIdeal { bound: 5 })));
    }

    #[test]
    fn second_class_pair_has_no_structure() {
        let s = PhaseSpace::canonical(1, 0);
        let g = vec![e(s.table(), "x1"), e(s.table(), "p1")];
        for bound in [0, 2, 4] {
            assert!(matches!(
                solve_structure_functions(&s, &g, bound),
                Err(Error::StructureNotFound { .. })
            ));
        }
    }

    #[test]
    fn so3_structure_is_epsilon() {
        let s = PhaseSpace::canonical(3, 0);
        let t = s.table();
        let g = vec![e(t, "x2*p3 - x3*p2"), e(t, "x3*p1 - x1*p3"), e(t, "x1*p2 - x2*p1")];
        let c = solve_structure_functions(&s, &g, 2).unwrap();
        assert_eq!(c[0][1][2], SuperElement::one());
        assert_eq!(c[1][0][2], SuperElement::integer(-1));
        assert_eq!(c[1][2][0], SuperElement::one());
        assert_eq!(c[2][0][1], SuperElement::one());
        assert!(c[0][1][0].is_zero() && c[0][1][1].is_zero());
    }
}
