//! The BRST charge Ω built order by order in antighost number, and the
//! differential `S F = (−1)^{|F|}[F, Ω]` with its expansion `S = δ + d + s₁ + ⋯`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::differentials::{anticommutator, koszul_tate, Derivation, Differential};
use crate::error::{Error, Result};
use crate::linalg::{Column, KeyedSystem};
use crate::superalgebra::{
    combinations, join, monomials_up_to, odd_monomial, GenId, Grading, Monomial, Parity, SuperElement,
};
use crate::symplectic::{ideal_membership, ConstraintSystem};

/// `Ω = Σ_k Ω_k`, `Ω_k` of antighost number `k` and pure ghost number `k+1`.
#[derive(Clone, Debug)]
pub struct BrstCharge {
    terms: Vec<SuperElement>,
    certified: bool,
}

impl BrstCharge {
    /// Highest antighost order present.
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, k: usize) -> &SuperElement {
        &self.terms[k]
    }

    pub fn terms(&self) -> &[SuperElement] {
        &self.terms
    }

    pub fn total(&self) -> SuperElement {
        self.terms.iter().cloned().sum()
    }

    /// True when `[Ω, Ω] = 0` was verified by a full bracket expansion.
    pub fn is_certified(&self) -> bool {
        self.certified
    }
}

/// Solves `δX = r` over candidates with one more antighost than `r`,
/// deepening the coordinate degree of `X` up to `bound`.
///
/// Returns `None` when no solution exists within the bound.
pub fn koszul_preimage(cs: &ConstraintSystem, r: &SuperElement, bound: u32) -> Option<SuperElement> {
    if r.is_zero() {
        return Some(SuperElement::zero());
    }
    let t = cs.table();
    let delta = koszul_tate(cs);
    let antis: BTreeSet<GenId> = t.antighosts().iter().copied().collect();
    let all_antis = t.antighosts().to_vec();

    let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
    for (m, _) in r.terms() {
        let (_, rest) = m.split_coordinates(t);
        let spectator_odd: Vec<GenId> = rest.odd_part().iter().copied().filter(|g| !antis.contains(g)).collect();
        let a = rest.odd_part().len() - spectator_odd.len();
        let spectator_even = Monomial::from_parts(rest.even_part().to_vec(), Vec::new());
        for subset in combinations(&all_antis, a + 1) {
            let mut odd = spectator_odd.clone();
            odd.extend(subset);
            candidates.insert(join(&spectator_even, &odd_monomial(&odd)));
        }
    }
    let images: Vec<(Monomial, SuperElement)> = candidates
        .into_iter()
        .map(|nu| {
            let img = delta.apply(&SuperElement::term(nu.clone(), crate::superalgebra::integer(1)));
            (nu, img)
        })
        .filter(|(_, img)| !img.is_zero())
        .collect();
    let max_g = cs
        .constraints()
        .iter()
        .filter_map(|g| g.max_degree(t, Grading::ZDegree))
        .max()
        .unwrap_or(0);
    let dr = r.max_degree(t, Grading::ZDegree).unwrap_or(0);
    let target: Column<Monomial> = r.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    for d in 0..=bound {
        if dr > d as i64 + max_g {
            continue;
        }
        let alphas = monomials_up_to(t.coordinates(), d);
        let mut cols = Vec::with_capacity(alphas.len() * images.len());
        let mut labels = Vec::with_capacity(cols.capacity());
        for alpha in &alphas {
            for (nu, img) in &images {
                cols.push(img.terms().map(|(m, c)| (join(alpha, m), c.clone())).collect::<Column<Monomial>>());
                labels.push(join(alpha, nu));
            }
        }
        let sol = KeyedSystem::from_columns(&cols)
            .solve_many(std::slice::from_ref(&target))
            .pop()
            .flatten();
        if let Some(x) = sol {
            let mut out = SuperElement::zero();
            for (m, v) in labels.into_iter().zip(x) {
                if !v.is_zero() {
                    out.add_term(m, v);
                }
            }
            return Some(out);
        }
    }
    None
}

/// Builds Ω with `[Ω, Ω] = 0`, starting from `Ω₀ = η^a G_a` and
/// `Ω₁ = ½η^bη^c C^a_{cb} P_a`.
///
/// At order `k` the lowest nonvanishing part `B_k` of `[Ω_{≤k}, Ω_{≤k}]`
/// has antighost number `k`, and `Ω_{k+1}` solves `δΩ_{k+1} = ½B_k`.
/// The series stops as soon as the full bracket vanishes.
pub fn build_charge(cs: &ConstraintSystem, max_order: usize, bound: u32) -> Result<BrstCharge> {
    let report = cs.verify_first_class();
    if !report.passed() {
        return Err(Error::NotFirstClass(report.failures()));
    }
    let t = cs.table();
    let space = cs.space();
    let omega0: SuperElement = (0..cs.len())
        .map(|a| &SuperElement::generator(t, t.ghost(a)) * cs.constraint(a))
        .sum();
    // Ω₁ is fixed by the declared structure functions so that the
    // antighost-0 part of S is the longitudinal differential of `cs`
    let mut omega1 = SuperElement::zero();
    for a in 0..cs.len() {
        for b in 0..cs.len() {
            for c in 0..cs.len() {
                let s = cs.structure(c, b, a);
                if !s.is_zero() {
                    let ee = &SuperElement::generator(t, t.ghost(b)) * &SuperElement::generator(t, t.ghost(c));
                    omega1 += (&(&ee * s) * &SuperElement::generator(t, t.antighost(a)))
                        .scale(&crate::superalgebra::rational(1, 2));
                }
            }
        }
    }
    let mut terms = vec![omega0];
    if !omega1.is_zero() {
        if max_order == 0 {
            return Err(Error::OrderExceeded {
                max_order,
                partial: Box::new(BrstCharge {
                    terms,
                    certified: false,
                }),
            });
        }
        terms.push(omega1);
    }
    loop {
        let k = terms.len() - 1;
        let total: SuperElement = terms.iter().cloned().sum();
        let full = space.extended_bracket(&total, &total);
        if full.is_zero() {
            return Ok(BrstCharge { terms, certified: true });
        }
        if k >= max_order {
            return Err(Error::OrderExceeded {
                max_order,
                partial: Box::new(BrstCharge {
                    terms,
                    certified: false,
                }),
            });
        }
        let parts = full.grade(t, Grading::AntiGhost);
        let (&low, _) = parts.iter().next().expect("nonzero");
        debug_assert_eq!(low, k as i64, "lower antighost parts vanish by induction");
        let half_b = parts[&(k as i64)].scale(&crate::superalgebra::rational(1, 2));
        let next = koszul_preimage(cs, &half_b, bound).ok_or_else(|| Error::ObstructionNotInIdeal {
            context: format!("charge order {}", k + 1),
            bound,
        })?;
        terms.push(next);
    }
}

/// `S F = (−1)^{|F|}[F, Ω]`, a left derivation of ghost number one.
#[derive(Clone, Debug)]
pub struct BrstDifferential {
    system: ConstraintSystem,
    charge: BrstCharge,
    omega: SuperElement,
    /// `expansion[k + 1]` is `s_k`.
    expansion: Vec<Derivation>,
}

impl BrstDifferential {
    pub fn new(system: ConstraintSystem, charge: BrstCharge) -> Self {
        let omega = charge.total();
        let mut s = BrstDifferential {
            system,
            charge,
            omega,
            expansion: Vec::new(),
        };
        let t = s.system.table().clone();
        let top = s.charge.order() as i64;
        let mut exp: Vec<Derivation> = (-1..=top).map(|k| Derivation::new(Parity::Odd, (k + 1, k))).collect();
        for g in t.ids() {
            let base = t.get(g).anti_ghost as i64;
            let img = s.apply(&SuperElement::generator(&t, g));
            for (a, part) in img.grade(&t, Grading::AntiGhost) {
                let k = a - base;
                exp[(k + 1) as usize].set(g, part);
            }
        }
        s.expansion = exp;
        s
    }

    /// Builds the charge and wraps it.
    pub fn build(system: &ConstraintSystem, max_order: usize, bound: u32) -> Result<Self> {
        let charge = build_charge(system, max_order, bound)?;
        Ok(Self::new(system.clone(), charge))
    }

    pub fn system(&self) -> &ConstraintSystem {
        &self.system
    }

    pub fn charge(&self) -> &BrstCharge {
        &self.charge
    }

    pub fn apply(&self, e: &SuperElement) -> SuperElement {
        let space = self.system.space();
        let (even, odd) = e.split_parity();
        &space.extended_bracket(&even, &self.omega) - &space.extended_bracket(&odd, &self.omega)
    }

    /// Highest `k` with a (possibly zero) expansion term.
    pub fn max_expansion_order(&self) -> i64 {
        self.expansion.len() as i64 - 2
    }

    /// `s_k`, the part of S raising antighost number by exactly `k`.
    pub fn expansion_term(&self, k: i64) -> Result<&Derivation> {
        let max = self.max_expansion_order();
        if k < -1 || k > max {
            return Err(Error::OrderOutOfRange {
                requested: k,
                min: -1,
                max,
            });
        }
        Ok(&self.expansion[(k + 1) as usize])
    }

    /// `s_k`, or the zero derivation beyond the truncation.
    fn term_or_zero(&self, k: i64) -> Derivation {
        self.expansion_term(k)
            .cloned()
            .unwrap_or_else(|_| Derivation::new(Parity::Odd, (k + 1, k)))
    }

    /// `g ↦ S(S(g))` on every generator.
    pub fn nilpotency_certificate(&self) -> BTreeMap<GenId, SuperElement> {
        let t = self.system.table();
        t.ids()
            .map(|g| (g, self.apply(&self.apply(&SuperElement::generator(t, g)))))
            .collect()
    }

    pub fn structure_identities(&self) -> StructureIdentities {
        let t = self.system.table();
        let delta = self.term_or_zero(-1);
        let d = self.term_or_zero(0);
        let s1 = self.term_or_zero(1);
        let dd = anticommutator(t, &delta, &delta).expect("odd");
        let delta_d = anticommutator(t, &delta, &d).expect("odd");
        let d_sq = anticommutator(t, &d, &d).expect("odd");
        let delta_s1 = anticommutator(t, &delta, &s1).expect("odd");
        let collect = |f: &dyn Fn(GenId) -> SuperElement| -> BTreeMap<GenId, SuperElement> {
            t.ids().map(|g| (g, f(g))).collect()
        };
        StructureIdentities {
            // [D, D] = 2D² for odd D
            delta_squared: collect(&|g| dd.value(g).scale(&crate::superalgebra::rational(1, 2))),
            delta_d: collect(&|g| delta_d.value(g)),
            d_squared_plus_delta_s1: collect(&|g| {
                &d_sq.value(g).scale(&crate::superalgebra::rational(1, 2)) + &delta_s1.value(g)
            }),
            d_squared_zero: d_sq.action().is_empty(),
        }
    }
}

impl Differential for BrstDifferential {
    fn apply(&self, e: &SuperElement) -> SuperElement {
        BrstDifferential::apply(self, e)
    }
}

/// Defects of `δ² = 0`, `[δ, d] = 0` and `d² + [δ, s₁] = 0` per generator.
#[derive(Clone, Debug)]
pub struct StructureIdentities {
    pub delta_squared: BTreeMap<GenId, SuperElement>,
    pub delta_d: BTreeMap<GenId, SuperElement>,
    pub d_squared_plus_delta_s1: BTreeMap<GenId, SuperElement>,
    /// Whether `d² = 0` holds on its own.
    pub d_squared_zero: bool,
}

impl StructureIdentities {
    pub fn passed(&self) -> bool {
        [&self.delta_squared, &self.delta_d, &self.d_squared_plus_delta_s1]
            .iter()
            .all(|m| m.values().all(SuperElement::is_zero))
    }
}

/// `s₁` with `s₁η^a = 0`, fixed on coordinates and antighosts by
/// `[δ, s₁] = −d²` using exact ideal solves.
///
/// On a coordinate `z` the `η^iη^j` coefficient of `d²z` is written as
/// `G_c ρ^c_{ij}` and `s₁z = Σ_{i<j} ρ^c_{ij} η^iη^j P_c`; then
/// `δ(s₁P_a) = −d²P_a + s₁(G_a)` is solved for `s₁P_a`.
pub fn s1_on_antighosts(cs: &ConstraintSystem, d: &Derivation, bound: u32) -> Result<Derivation> {
    let t = cs.table();
    let m = cs.len();
    let mut s1 = Derivation::new(Parity::Odd, (2, 1));
    for &z in t.coordinates() {
        let d2 = d.apply(&d.apply(&SuperElement::generator(t, z)));
        let mut v = SuperElement::zero();
        for (ghosts, coeff) in d2.by_ghost_part(t) {
            let h = ideal_membership(t, &coeff, cs.constraints(), bound).map_err(|_| Error::ObstructionNotInIdeal {
                context: format!("d^2 {}", t.name(z)),
                bound,
            })?;
            let gm = SuperElement::term(ghosts, crate::superalgebra::integer(1));
            for (c, hc) in h.iter().enumerate() {
                if !hc.is_zero() {
                    v += &(hc * &gm) * &SuperElement::generator(t, t.antighost(c));
                }
            }
        }
        s1.set(z, v);
    }
    for a in 0..m {
        let pa = SuperElement::generator(t, t.antighost(a));
        let rhs = &s1.apply(cs.constraint(a)) - &d.apply(&d.apply(&pa));
        let x = koszul_preimage(cs, &rhs, bound).ok_or_else(|| Error::ObstructionNotInIdeal {
            context: format!("s1 {}", t.name(t.antighost(a))),
            bound,
        })?;
        s1.set(t.antighost(a), x);
    }
    Ok(s1)
}

/// `d² + [δ, s₁]` on every generator of `cs`.
pub fn s1_residual(cs: &ConstraintSystem, d: &Derivation, s1: &Derivation) -> BTreeMap<GenId, SuperElement> {
    let t = cs.table();
    let delta = koszul_tate(cs);
    let d_sq = anticommutator(t, d, d).expect("odd");
    let ds1 = anticommutator(t, &delta, s1).expect("odd");
    t.ids()
        .map(|g| {
            let v = &d_sq.value(g).scale(&crate::superalgebra::rational(1, 2)) + &ds1.value(g);
            (g, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differentials::longitudinal;
    use crate::fixtures;
    use crate::random::Sampler;

    fn n(t: &crate::superalgebra::GeneratorTable, s: &str) -> SuperElement {
        SuperElement::named(t, s)
    }

    #[test]
    fn abelian_charge_truncates_at_zero() {
        let cs = fixtures::abelian_r4();
        let q = build_charge(&cs, 3, 4).unwrap();
        assert_eq!(q.order(), 0);
        let t = cs.table();
        let want = &(&n(t, "eta1") * &n(t, "p1")) + &(&n(t, "eta2") * &n(t, "p2"));
        assert_eq!(q.total(), want);
    }

    #[test]
    fn so3_charge() {
        let cs = fixtures::so3();
        let q = build_charge(&cs, 3, 4).unwrap();
        assert_eq!(q.order(), 1);
        let t = cs.table();
        // Ω₁ = ½ η^bη^c C^a_{cb} P_a
        let mut want = SuperElement::zero();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let s = cs.structure(c, b, a);
                    if !s.is_zero() {
                        let e = &(&(&SuperElement::generator(t, t.ghost(b)) * &SuperElement::generator(t, t.ghost(c))) * s)
                            * &SuperElement::generator(t, t.antighost(a));
                        want += e.scale(&crate::superalgebra::rational(1, 2));
                    }
                }
            }
        }
        assert_eq!(*q.term(1), want);
        assert!(cs.space().extended_bracket(&q.total(), &q.total()).is_zero());
    }

    #[test]
    fn open_charges() {
        let cs = fixtures::open_m2();
        let q = build_charge(&cs, 3, 4).unwrap();
        assert!(q.is_certified());
        assert_eq!(q.order(), 1);
        let cs = fixtures::open_m3();
        let q = build_charge(&cs, 3, 4).unwrap();
        assert!(q.is_certified());
        assert_eq!(q.order(), 2, "Ω₂ = {}", q.term(q.order()).to_text(cs.table()));
        assert!(!q.term(2).is_zero());
    }

    #[test]
    fn not_first_class() {
        let so3 = fixtures::so3();
        let zero = vec![vec![vec![SuperElement::zero(); 3]; 3]; 3];
        let cs = ConstraintSystem::new(so3.space().clone(), so3.constraints().to_vec(), zero).unwrap();
        assert!(matches!(build_charge(&cs, 3, 4), Err(Error::NotFirstClass(3))));
    }

    #[test]
    fn order_exceeded_returns_partial() {
        let cs = fixtures::so3();
        match build_charge(&cs, 0, 4) {
            Err(Error::OrderExceeded { partial, .. }) => {
                assert!(!partial.is_certified());
                assert_eq!(partial.order(), 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn differential_lowest_terms() {
        for cs in [fixtures::abelian_r4(), fixtures::so3(), fixtures::open_m2(), fixtures::open_m3()] {
            let s = BrstDifferential::build(&cs, 3, 4).unwrap();
            let t = cs.table();
            assert!(s.apply(&SuperElement::one()).is_zero());
            for a in 0..cs.len() {
                let pa = SuperElement::generator(t, t.antighost(a));
                let low = s.apply(&pa).component(t, Grading::AntiGhost, 0);
                assert_eq!(low, -cs.constraint(a));
            }
            let delta = koszul_tate(&cs);
            let d = longitudinal(&cs);
            for g in t.ids() {
                assert_eq!(s.expansion_term(-1).unwrap().value(g), delta.value(g));
                assert_eq!(s.expansion_term(0).unwrap().value(g), d.value(g));
            }
            assert!(s.nilpotency_certificate().values().all(SuperElement::is_zero));
            assert!(s.structure_identities().passed());
            assert!(matches!(s.expansion_term(-2), Err(Error::OrderOutOfRange { .. })));
        }
    }

    #[test]
    fn expansion_sums_to_s() {
        let cs = fixtures::open_m3();
        let s = BrstDifferential::build(&cs, 3, 4).unwrap();
        let t = cs.table();
        for g in t.ids() {
            let sum: SuperElement = (-1..=s.max_expansion_order())
                .map(|k| s.expansion_term(k).unwrap().value(g))
                .sum();
            assert_eq!(sum, s.apply(&SuperElement::generator(t, g)));
        }
    }

    #[test]
    fn s_is_a_derivation_raising_ghost_number() {
        let cs = fixtures::open_m3();
        let s = BrstDifferential::build(&cs, 3, 4).unwrap();
        let t = cs.table();
        let mut smp = Sampler::new(3);
        for _ in 0..20 {
            let p = smp.parity();
            let a = smp.homogeneous(t, p);
            let b = smp.element(t);
            let sign = if p.is_odd() { -1 } else { 1 };
            let rhs = &(&s.apply(&a) * &b) + &(&a * &s.apply(&b)).scale_int(sign);
            assert_eq!(s.apply(&(&a * &b)), rhs);
            assert!(s.apply(&s.apply(&b)).is_zero());
            let h = smp.ghost_homogeneous(t);
            let sh = s.apply(&h);
            if !sh.is_zero() {
                assert_eq!(
                    sh.degree(t, Grading::GhostNumber),
                    h.degree(t, Grading::GhostNumber).map(|g| g + 1)
                );
            }
        }
    }

    #[test]
    fn s1_gauge_and_antighost_solution() {
        for cs in [fixtures::abelian_r4(), fixtures::so3(), fixtures::open_m2()] {
            let s = BrstDifferential::build(&cs, 3, 4).unwrap();
            let t = cs.table();
            let s1 = s.term_or_zero(1);
            for a in 0..cs.len() {
                assert!(s1.value(t.ghost(a)).is_zero());
            }
            let d = longitudinal(&cs);
            let mine = s1_on_antighosts(&cs, &d, 4).unwrap();
            let r1 = s1_residual(&cs, &d, &mine);
            let r2 = s1_residual(&cs, &d, &s1);
            assert_eq!(r1, r2);
            assert!(r1.values().all(SuperElement::is_zero));
        }
        for cs in [fixtures::abelian_r4(), fixtures::so3()] {
            let d = longitudinal(&cs);
            let mine = s1_on_antighosts(&cs, &d, 4).unwrap();
            assert!(mine.action().is_empty());
        }
        let cs = fixtures::open_m2();
        let mine = s1_on_antighosts(&cs, &longitudinal(&cs), 4).unwrap();
        assert!(!mine.action().is_empty());
    }
}
