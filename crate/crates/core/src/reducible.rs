//! Reducible constraints: reducibility chains `Z`, the auxiliary
//! differential Δ on ghosts of ghosts, p-th reducible complexes and the
//! generalized Maurer-Cartan form `dω_m^i = −½ Σ_n C^i_{jkn} ω_{m−n+1}^j ω_n^k`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::differentials::Derivation;
use crate::error::{Error, Result};
use crate::superalgebra::{rational, GenId, GeneratorTable, Grading, Monomial, Parity, Scalar, SuperElement};
use crate::symplectic::{ideal_membership, VectorField};

/// Reducibility functions of a chain `G ← Z₁ ← Z₂ ← ⋯ ← Z_L`.
#[derive(Clone, Debug, Default)]
pub struct ReducibilityData {
    /// `m_0..m_L`; `m_0` is the number of constraints.
    pub counts: Vec<usize>,
    /// `z[k−1][a_k][a_{k−1}] = Z^{a_{k−1}}_{a_k}`, `k = 1..L`.
    pub z: Vec<Vec<Vec<SuperElement>>>,
    /// `c[k−2][a_k][a_{k−2}][a_0] = C^{a_{k−2},a_0}_{a_k}`, `k = 2..L`.
    pub c: Vec<Vec<Vec<Vec<SuperElement>>>>,
    /// `ε_{a_k}` per level.
    pub parities: Vec<Vec<u32>>,
}

impl ReducibilityData {
    pub fn levels(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Counts and parities agree; enough to build the table.
    pub fn validate_counts(&self) -> Result<()> {
        let ok = self.parities.len() == self.counts.len()
            && self.parities.iter().zip(&self.counts).all(|(p, &m)| p.len() == m);
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("reducibility data: parities do not match counts".into()))
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_counts()?;
        let l = self.levels();
        let bad = |what: &str| Err(Error::Invalid(format!("reducibility data: {what}")));
        if self.z.len() != l || self.c.len() != l.saturating_sub(1) {
            return bad("level counts disagree");
        }
        for k in 1..=l {
            let zk = &self.z[k - 1];
            if zk.len() != self.counts[k] || zk.iter().any(|r| r.len() != self.counts[k - 1]) {
                return bad(&format!("Z at level {k} must be {}x{}", self.counts[k], self.counts[k - 1]));
            }
        }
        for k in 2..=l {
            let ck = &self.c[k - 2];
            let shape_ok = ck.len() == self.counts[k]
                && ck
                    .iter()
                    .all(|r| r.len() == self.counts[k - 2] && r.iter().all(|s| s.len() == self.counts[0]));
            if !shape_ok {
                return bad(&format!("C at level {k} has the wrong shape"));
            }
        }
        Ok(())
    }

    /// Phase space `x1..xn, p1..pn` with `P_a`, `η^a` and ghosts of ghosts
    /// `etaK_i` at level `K`.
    pub fn table(&self, n: usize) -> Result<GeneratorTable> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("p{i}"))).collect();
        self.table_with_coordinates(&names)
    }

    pub fn table_with_coordinates(&self, coordinates: &[String]) -> Result<GeneratorTable> {
        self.validate_counts()?;
        let m = self.counts.first().copied().unwrap_or(0);
        let mut b = GeneratorTable::builder();
        for name in coordinates {
            b = b.coordinate(name.clone());
        }
        for a in 1..=m {
            b = b.antighost(format!("P{a}")).ghost(format!("eta{a}"));
        }
        for k in 1..=self.levels() {
            for i in 0..self.counts[k] {
                b = b.higher_ghost(format!("eta{k}_{}", i + 1), k, self.parities[k][i]);
            }
        }
        b.build()
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub level: usize,
    pub upper: usize,
    /// `a_{k−2}`; absent at level 1 where the relation is `Z^{a₀}_{a₁}G_{a₀} = 0`.
    pub lower: Option<usize>,
    pub defect: SuperElement,
}

#[derive(Clone, Debug, Default)]
pub struct ReducibilityReport {
    pub relations: Vec<Relation>,
}

impl ReducibilityReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.defect.is_zero())
    }
}

/// Checks `Z^{a₀}_{a₁}G_{a₀} = 0` and, for `k ≥ 2`,
/// `Z^{a_{k−1}}_{a_k}Z^{a_{k−2}}_{a_{k−1}} = (−1)^{ε_{a_{k−2}}}C^{a_{k−2},a_0}_{a_k}G_{a_0}`.
pub fn verify_reducibility(gens: &[SuperElement], rd: &ReducibilityData) -> Result<ReducibilityReport> {
    rd.validate()?;
    if rd.counts.first().is_some_and(|&m| m != gens.len()) {
        return Err(Error::Invalid(format!("{} constraints but m_0 = {}", gens.len(), rd.counts[0])));
    }
    let mut relations = Vec::new();
    if rd.levels() >= 1 {
        for (a1, row) in rd.z[0].iter().enumerate() {
            let defect: SuperElement = row.iter().zip(gens).map(|(z, g)| z * g).sum();
            relations.push(Relation {
                level: 1,
                upper: a1,
                lower: None,
                defect,
            });
        }
    }
    for k in 2..=rd.levels() {
        for ak in 0..rd.counts[k] {
            for ak2 in 0..rd.counts[k - 2] {
                let mut defect: SuperElement = (0..rd.counts[k - 1])
                    .map(|ak1| &rd.z[k - 1][ak][ak1] * &rd.z[k - 2][ak1][ak2])
                    .sum();
                let cg: SuperElement = rd.c[k - 2][ak][ak2].iter().zip(gens).map(|(c, g)| c * g).sum();
                if rd.parities[k - 2][ak2] % 2 == 0 {
                    defect -= &cg;
                } else {
                    defect += cg;
                }
                relations.push(Relation {
                    level: k,
                    upper: ak,
                    lower: Some(ak2),
                    defect,
                });
            }
        }
    }
    Ok(ReducibilityReport { relations })
}

fn level_ghosts(table: &GeneratorTable, k: usize) -> &[GenId] {
    if k == 0 {
        table.ghosts()
    } else {
        table.higher_ghosts(k)
    }
}

/// `ΔF = 0` on functions and
/// `Δη^{a_k} = η^{a_{k+1}} Z^{a_k}_{a_{k+1}} (−1)^{ε_{a_k}+k+1}`.
pub fn auxiliary_differential(table: &GeneratorTable, rd: &ReducibilityData) -> Result<Derivation> {
    rd.validate()?;
    let l = rd.levels();
    if table.higher_levels() != l {
        return Err(Error::Invalid(format!("table has {} ghost levels, data has {l}", table.higher_levels())));
    }
    let mut delta = Derivation::new(Parity::Odd, (1, 0));
    for k in 0..l {
        let up = level_ghosts(table, k + 1);
        for (ak, &g) in level_ghosts(table, k).iter().enumerate() {
            let sign = if (rd.parities[k][ak] as usize + k + 1) % 2 == 0 { 1 } else { -1 };
            let v: SuperElement = up
                .iter()
                .enumerate()
                .map(|(ak1, &h)| (&SuperElement::generator(table, h) * &rd.z[k][ak1][ak]).scale_int(sign))
                .sum();
            delta.set(g, v);
        }
    }
    Ok(delta)
}

#[derive(Clone, Debug)]
pub struct DeltaSquaredEntry {
    pub generator: GenId,
    pub value: SuperElement,
    /// Per ghost monomial: `h^c` with coefficient `= h^c G_c`.
    pub multipliers: Vec<(Monomial, Vec<SuperElement>)>,
    /// `aux(Δ²e) = aux(e) + 2` whenever `Δ²e ≠ 0`.
    pub aux_ok: bool,
}

/// `Δ²` on every ghost generator, each coefficient located in the ideal of
/// the constraints.
pub fn delta_squared_on_shell(
    table: &GeneratorTable,
    gens: &[SuperElement],
    delta: &Derivation,
    bound: u32,
) -> Result<Vec<DeltaSquaredEntry>> {
    let mut out = Vec::new();
    for l in 0..=table.higher_levels() {
        for &g in level_ghosts(table, l) {
            let value = delta.apply(&delta.apply(&SuperElement::generator(table, g)));
            let mut multipliers = Vec::new();
            for (ghost, coeff) in value.by_ghost_part(table) {
                let h = ideal_membership(table, &coeff, gens, bound).map_err(|_| Error::ObstructionNotInIdeal {
                    context: format!("Δ² on {}", table.name(g)),
                    bound,
                })?;
                multipliers.push((ghost, h));
            }
            let aux = table.get(g).aux as i64;
            let aux_ok = value.is_zero() || value.degree(table, Grading::Aux) == Some(aux + 2);
            out.push(DeltaSquaredEntry {
                generator: g,
                value,
                multipliers,
                aux_ok,
            });
        }
    }
    Ok(out)
}

/// Graded algebra over coordinate polynomials generated by `ω_n^i` of
/// degree `n ≤ p`. Each `ω` is a single monomial, possibly composite.
#[derive(Clone, Debug)]
pub struct ReducibleComplex {
    pub table: GeneratorTable,
    pub grading: Grading,
    /// `(n, ω_n^i)` in a fixed order; indices below refer to this list.
    pub generators: Vec<(u32, SuperElement)>,
}

impl ReducibleComplex {
    pub fn new(table: GeneratorTable, grading: Grading, generators: Vec<(u32, SuperElement)>) -> Result<Self> {
        for (n, w) in &generators {
            let single = w.len() == 1 && w.terms().all(|(m, c)| (c.is_one() || (-c).is_one()) && !m.is_one());
            if !single || !w.terms().all(|(m, _)| m.split_coordinates(&table).0.is_one()) {
                return Err(Error::Invalid("generators must be single ghost monomials".into()));
            }
            if *n == 0 || w.degree(&table, grading) != Some(*n as i64) {
                return Err(Error::Invalid(format!("generator {} is not of degree {n}", w.to_text(&table))));
            }
        }
        Ok(ReducibleComplex {
            table,
            grading,
            generators,
        })
    }

    pub fn level(&self) -> u32 {
        self.generators.iter().map(|(n, _)| *n).max().unwrap_or(0)
    }

    fn monomial(&self, i: usize) -> &Monomial {
        self.generators[i].1.terms().next().expect("nonzero").0
    }

    fn of_degree(&self, n: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.generators.len()).filter(move |&i| self.generators[i].0 == n)
    }

    /// Ghost-sector monomials of degree `k`, built from the non-coordinate
    /// generators (odd ones at most once).
    fn ghost_monomials(&self, k: i64) -> Vec<Monomial> {
        let t = &self.table;
        let gens: Vec<GenId> = t.ids().filter(|&g| !t.get(g).is_coordinate()).collect();
        let weight = |g: GenId| self.grading.of_monomial(t, &Monomial::generator(t, g));
        let mut out = Vec::new();
        fn walk(
            t: &GeneratorTable,
            gens: &[GenId],
            weight: &dyn Fn(GenId) -> i64,
            i: usize,
            acc: SuperElement,
            left: i64,
            out: &mut Vec<Monomial>,
        ) {
            if i == gens.len() {
                if left == 0 {
                    if let Some((m, _)) = acc.terms().next() {
                        out.push(m.clone());
                    }
                }
                return;
            }
            let g = gens[i];
            let w = weight(g);
            let max_power = if t.is_odd(g) {
                1
            } else if w > 0 {
                (left.max(0) / w) as u32
            } else {
                0
            };
            for e in 0..=max_power {
                let next = &acc * &SuperElement::generator(t, g).pow(e);
                walk(t, gens, weight, i + 1, next, left - w * e as i64, out);
            }
        }
        walk(t, &gens, &weight, 0, SuperElement::one(), k, &mut out);
        out
    }

    fn factorizes(&self, m: &Monomial) -> bool {
        if m.is_one() {
            return true;
        }
        (0..self.generators.len()).any(|i| m.quotient(self.monomial(i)).is_some_and(|q| self.factorizes(&q)))
    }

    /// Ghost monomials of degree `1..=bound` that are not products of the
    /// `ω_n^i`; empty when the generation property holds at this truncation.
    pub fn generation_failures(&self, bound: u32) -> Vec<Monomial> {
        (1..=bound as i64)
            .flat_map(|k| self.ghost_monomials(k))
            .filter(|m| !self.factorizes(m))
            .collect()
    }
}

/// `ρ¹_j` and `C^i_{jkn}` of a differential on a reducible complex.
#[derive(Clone, Debug)]
pub struct GeneralizedMc {
    /// Indexed like `generators`; zero for generators of degree > 1.
    pub rho: Vec<VectorField>,
    /// `(i, j, k, n) ↦ C^i_{jkn}` with `j` of degree `m−n+1`, `k` of degree `n`.
    pub structure: BTreeMap<(usize, usize, usize, u32), SuperElement>,
}

/// Expands `d` against the product basis `ω_{m−n+1}^j ω_n^k`.
///
/// Pairs with `n ≤ m−n+1` are kept; a pair of distinct degrees takes the
/// whole coefficient, and same-degree pairs `j < k` split it between
/// `(j, k)` and `(k, j)` so the ½ is absorbed. Coinciding products go to
/// the first pair in this order.
pub fn generalized_mc_extract(d: &Derivation, rc: &ReducibleComplex) -> Result<GeneralizedMc> {
    let t = &rc.table;
    if let Some((g, _)) = d.nilpotency_defect(t).into_iter().find(|(_, v)| !v.is_zero()) {
        return Err(Error::Invalid(format!("d² ≠ 0 on {}", t.name(g))));
    }
    let mut by_monomial: BTreeMap<Monomial, (usize, Scalar)> = BTreeMap::new();
    for i in rc.of_degree(1) {
        let (m, c) = rc.generators[i].1.terms().next().expect("nonzero");
        by_monomial.insert(m.clone(), (i, c.clone()));
    }
    let mut rho = vec![VectorField::zero(); rc.generators.len()];
    for &z in t.coordinates() {
        let dz = d.apply(&SuperElement::generator(t, z));
        for (ghost, coeff) in dz.by_ghost_part(t) {
            let (i, sign) = by_monomial
                .get(&ghost)
                .ok_or_else(|| Error::NotInProductSpan(format!("d{}", t.name(z))))?;
            rho[*i].add_component(z, &coeff.scale(sign));
        }
    }
    let mut structure = BTreeMap::new();
    for (i, (m, w)) in rc.generators.iter().enumerate() {
        let mut pairs: BTreeMap<Monomial, (usize, usize, u32, Scalar, bool)> = BTreeMap::new();
        for n in 1..=*m {
            let hi = m - n + 1;
            if n > hi {
                break;
            }
            for j in rc.of_degree(hi) {
                for k in rc.of_degree(n) {
                    // same degree: unordered pairs, squares only for even ω
                    let even = rc.generators[j].1.parity() == Some(Parity::Even);
                    if hi == n && (j > k || (j == k && !even)) {
                        continue;
                    }
                    let p = &rc.generators[j].1 * &rc.generators[k].1;
                    let first = p.terms().next().map(|(mm, c)| (mm.clone(), c.clone()));
                    if let Some((mono, sign)) = first {
                        pairs.entry(mono).or_insert((j, k, n, sign, hi == n));
                    }
                }
            }
        }
        for (ghost, coeff) in d.apply(w).by_ghost_part(t) {
            let (j, k, n, sign, same) = pairs
                .get(&ghost)
                .cloned()
                .ok_or_else(|| Error::NotInProductSpan(format!("d({})", w.to_text(t))))?;
            // −½ C ω^jω^k = coeff·μ and ω^jω^k = sign·μ
            let c = coeff.scale(&(rational(-2, 1) * sign));
            if same && j != k {
                let swap = (&rc.generators[k].1 * &rc.generators[j].1).coefficient(&ghost)
                    / (&rc.generators[j].1 * &rc.generators[k].1).coefficient(&ghost);
                let half = c.scale(&rational(1, 2));
                structure.insert((i, k, j, n), half.scale(&swap));
                structure.insert((i, j, k, n), half);
            } else {
                structure.insert((i, j, k, n), c);
            }
        }
    }
    Ok(GeneralizedMc { rho, structure })
}

/// Rebuilds `d` from the generalized form and returns residuals on every
/// coordinate and every `ω`.
pub fn generalized_round_trip(d: &Derivation, rc: &ReducibleComplex, mc: &GeneralizedMc) -> Vec<SuperElement> {
    let t = &rc.table;
    let mut out = Vec::new();
    for &z in t.coordinates() {
        let zf = SuperElement::generator(t, z);
        let rebuilt: SuperElement = mc
            .rho
            .iter()
            .zip(&rc.generators)
            .map(|(r, (_, w))| &r.apply(t, &zf) * w)
            .sum();
        out.push(&d.apply(&zf) - &rebuilt);
    }
    let minus_half = rational(-1, 2);
    for (i, (_, w)) in rc.generators.iter().enumerate() {
        let mut rebuilt = SuperElement::zero();
        for ((ii, j, k, _), c) in mc.structure.range((i, 0, 0, 0)..(i + 1, 0, 0, 0)) {
            debug_assert_eq!(*ii, i);
            rebuilt += (c * &(&rc.generators[*j].1 * &rc.generators[*k].1)).scale(&minus_half);
        }
        out.push(&d.apply(w) - &rebuilt);
    }
    out
}

/// The exterior derivative on `R^n` as a 1-reducible complex: coordinates
/// `x1..xn`, odd generators `dx1..dxn`, `df = (∂_i f)dx^i`, `d(dx^i) = 0`.
pub fn exterior_derivative(n: usize) -> Result<(ReducibleComplex, Derivation)> {
    let mut b = GeneratorTable::builder();
    for i in 1..=n {
        b = b.coordinate(format!("x{i}"));
    }
    for i in 1..=n {
        b = b.ghost(format!("dx{i}"));
    }
    let table = b.build()?;
    let mut d = Derivation::new(Parity::Odd, (1, 0));
    for i in 0..n {
        d.set(table.coordinates()[i], SuperElement::generator(&table, table.ghost(i)));
        d.set(table.ghost(i), SuperElement::zero());
    }
    let gens = (0..n).map(|i| (1, SuperElement::generator(&table, table.ghost(i)))).collect();
    Ok((ReducibleComplex::new(table, Grading::PureGhost, gens)?, d))
}

/// A CE complex viewed as 1-reducible with `ω_1 = η`.
pub fn from_ce(ce: &crate::cohomology::CeComplex) -> Result<ReducibleComplex> {
    let t = &ce.table;
    let gens = t.ghosts().iter().map(|&g| (1, SuperElement::generator(t, g))).collect();
    ReducibleComplex::new(t.clone(), Grading::PureGhost, gens)
}

/// Fixtures with explicitly constructed chains, all parities even.
pub mod fixtures {
    use super::*;

    fn int(n: i64) -> SuperElement {
        SuperElement::integer(n)
    }

    fn named(t: &GeneratorTable, s: &str) -> SuperElement {
        SuperElement::named(t, s)
    }

    /// `G = (p1, p1)` on R², `Z = (1, −1)`. With `corrupt`, `Z = (1, −2)`.
    pub fn level_one(corrupt: bool) -> (GeneratorTable, Vec<SuperElement>, ReducibilityData) {
        let rd = ReducibilityData {
            counts: vec![2, 1],
            z: vec![vec![vec![int(1), int(if corrupt { -2 } else { -1 })]]],
            c: vec![],
            parities: vec![vec![0, 0], vec![0]],
        };
        let t = rd.table(1).expect("valid names");
        let p1 = named(&t, "p1");
        (t, vec![p1.clone(), p1], rd)
    }

    /// `G = (p1, p1, p1)`; `Z₁` rows `(1,−1,0), (0,1,−1), (1,0,−1)`;
    /// `Z₂ = (1, 1, −1 + p1)` with `C^{1,1} = 1`, `C^{3,1} = −1`.
    /// With `corrupt`, `Z₂ = (1, 1, −1 + x1)`.
    pub fn level_two(corrupt: bool) -> (GeneratorTable, Vec<SuperElement>, ReducibilityData) {
        let mut rd = ReducibilityData {
            counts: vec![3, 3, 1],
            z: vec![
                vec![
                    vec![int(1), int(-1), int(0)],
                    vec![int(0), int(1), int(-1)],
                    vec![int(1), int(0), int(-1)],
                ],
                vec![vec![int(1), int(1), int(0)]],
            ],
            c: vec![vec![vec![
                vec![int(1), int(0), int(0)],
                vec![int(0), int(0), int(0)],
                vec![int(-1), int(0), int(0)],
            ]]],
            parities: vec![vec![0; 3], vec![0; 3], vec![0]],
        };
        let t = rd.table(1).expect("valid names");
        let last = if corrupt { "x1" } else { "p1" };
        rd.z[1][0][2] = &named(&t, last) - &int(1);
        let p1 = named(&t, "p1");
        (t, vec![p1.clone(), p1.clone(), p1], rd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{ce_complex, su2_structure, Representation};

    #[test]
    fn irreducible_is_vacuous() {
        let rd = ReducibilityData {
            counts: vec![1],
            parities: vec![vec![0]],
            ..Default::default()
        };
        let t = rd.table(1).unwrap();
        let r = verify_reducibility(&[SuperElement::named(&t, "p1")], &rd).unwrap();
        assert!(r.relations.is_empty() && r.passed());
    }

    #[test]
    fn level_one() {
        let (t, g, rd) = fixtures::level_one(false);
        assert!(verify_reducibility(&g, &rd).unwrap().passed());
        let delta = auxiliary_differential(&t, &rd).unwrap();
        // Δη^{a₀} = −η^{a₁}Z^{a₀}_{a₁} at k = 0
        assert_eq!(delta.value(t.ghost(0)).to_text(&t), "-eta1_1");
        assert_eq!(delta.value(t.ghost(1)).to_text(&t), "eta1_1");
        assert!(delta.value(t.higher_ghosts(1)[0]).is_zero());
        assert!(delta.apply(&SuperElement::named(&t, "x1")).is_zero());
        let d2 = delta_squared_on_shell(&t, &g, &delta, 2).unwrap();
        assert!(d2.iter().all(|e| e.value.is_zero()));

        let (_, g, bad) = fixtures::level_one(true);
        let r = verify_reducibility(&g, &bad).unwrap();
        assert!(!r.passed());
        assert_eq!(r.relations[0].defect.to_text(&t), "-p1");
    }

    #[test]
    fn level_two() {
        let (t, g, rd) = fixtures::level_two(false);
        assert!(verify_reducibility(&g, &rd).unwrap().passed());
        let delta = auxiliary_differential(&t, &rd).unwrap();
        let d2 = delta_squared_on_shell(&t, &g, &delta, 2).unwrap();
        assert!(d2.iter().any(|e| !e.value.is_zero()));
        assert!(d2.iter().all(|e| e.aux_ok));
        for e in &d2 {
            for (ghost, h) in &e.multipliers {
                let rebuilt: SuperElement = h.iter().zip(&g).map(|(a, b)| a * b).sum();
                assert_eq!(rebuilt, e.value.by_ghost_part(&t)[ghost]);
            }
        }
        let (t, g, bad) = fixtures::level_two(true);
        assert!(!verify_reducibility(&g, &bad).unwrap().passed());
        let delta = auxiliary_differential(&t, &bad).unwrap();
        assert!(matches!(
            delta_squared_on_shell(&t, &g, &delta, 3),
            Err(Error::ObstructionNotInIdeal { .. })
        ));
    }

    #[test]
    fn aux_and_pure_ghost() {
        let (t, _, rd) = fixtures::level_two(false);
        let delta = auxiliary_differential(&t, &rd).unwrap();
        for l in 0..=2 {
            for &g in level_ghosts(&t, l) {
                let e = SuperElement::generator(&t, g);
                let m = e.terms().next().unwrap().0.clone();
                // one ghost factor: puregh = aux + 1
                assert_eq!(Grading::PureGhost.of_monomial(&t, &m), Grading::Aux.of_monomial(&t, &m) + 1);
                let de = delta.apply(&e);
                if !de.is_zero() {
                    assert_eq!(de.degree(&t, Grading::Aux), Some(l as i64 + 1));
                }
            }
        }
    }

    #[test]
    fn exterior_derivative_example() {
        let (rc, d) = exterior_derivative(3).unwrap();
        assert!(rc.generation_failures(3).is_empty());
        let mc = generalized_mc_extract(&d, &rc).unwrap();
        for (i, r) in mc.rho.iter().enumerate() {
            assert_eq!(*r, VectorField::partial(rc.table.coordinates()[i]));
        }
        assert!(mc.structure.is_empty());
        assert!(generalized_round_trip(&d, &rc, &mc).iter().all(SuperElement::is_zero));
    }

    #[test]
    fn ce_recovers_structure_constants() {
        let f = su2_structure();
        let ce = ce_complex(&f, &Representation::Trivial).unwrap();
        let rc = from_ce(&ce).unwrap();
        let mc = generalized_mc_extract(&ce.differential, &rc).unwrap();
        assert!(generalized_round_trip(&ce.differential, &rc, &mc).iter().all(SuperElement::is_zero));
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let got = mc.structure.get(&(c, a, b, 1)).cloned().unwrap_or_default();
                    assert_eq!(got, SuperElement::constant(f[a][b][c].clone()));
                }
            }
        }
    }

    #[test]
    fn brst_multi_ghosts_as_reducible() {
        use crate::brst::BrstDifferential;
        use crate::maurer_cartan::extract;
        let cs = crate::fixtures::so3();
        let s = BrstDifferential::build(&cs, 3, 4).unwrap();
        let mc = extract(&s, None).unwrap();
        let t = cs.table().clone();
        // S restricted to coordinates, ghosts and antighosts as a derivation
        let d = Derivation::from_action(
            Parity::Odd,
            (1, 0),
            t.ids().map(|g| (g, crate::differentials::Differential::apply(&s, &SuperElement::generator(&t, g)))),
        );
        let rc = ReducibleComplex::new(t, Grading::GhostNumber, mc.elements.iter().map(|w| (1, w.clone())).collect())
            .unwrap();
        assert!(rc.generation_failures(3).is_empty());
        let g = generalized_mc_extract(&d, &rc).unwrap();
        assert_eq!(g.rho, mc.rho);
        for ((i, j, k, _), c) in &g.structure {
            assert_eq!(*c, mc.structure_constant(*j, *k, *i));
        }
        assert!(generalized_round_trip(&d, &rc, &g).iter().all(SuperElement::is_zero));
    }
}
