//! Graded derivations given by their values on generators.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::superalgebra::{integer, rational, GenId, GeneratorTable, Grading, Monomial, Parity, SuperElement};
use crate::symplectic::ConstraintSystem;

/// Anything that acts linearly on the algebra.
pub trait Differential {
    fn apply(&self, e: &SuperElement) -> SuperElement;
}

/// A graded derivation determined by its action on generators and extended
/// by the left Leibniz rule
/// `D(ab) = (Da)b + (−1)^{|D||a|} a(Db)`.
///
/// Generators missing from the action are annihilated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    parity: Parity,
    /// `(Δ pureGhost, Δ antiGhost)`
    shift: (i64, i64),
    action: BTreeMap<GenId, SuperElement>,
}

impl Derivation {
    pub fn new(parity: Parity, shift: (i64, i64)) -> Self {
        Derivation {
            parity,
            shift,
            action: BTreeMap::new(),
        }
    }

    pub fn from_action(parity: Parity, shift: (i64, i64), action: impl IntoIterator<Item = (GenId, SuperElement)>) -> Self {
        let mut d = Self::new(parity, shift);
        for (g, v) in action {
            d.set(g, v);
        }
        d
    }

    pub fn set(&mut self, g: GenId, value: SuperElement) {
        if value.is_zero() {
            self.action.remove(&g);
        } else {
            self.action.insert(g, value);
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn shift(&self) -> (i64, i64) {
        self.shift
    }

    pub fn value(&self, g: GenId) -> SuperElement {
        self.action.get(&g).cloned().unwrap_or_default()
    }

    pub fn action(&self) -> &BTreeMap<GenId, SuperElement> {
        &self.action
    }

    pub fn apply(&self, e: &SuperElement) -> SuperElement {
        let mut out = SuperElement::zero();
        for (m, c) in e.terms() {
            out += self.apply_monomial(m).scale(c);
        }
        out
    }

    fn apply_monomial(&self, m: &Monomial) -> SuperElement {
        let mut out = SuperElement::zero();
        let odd = m.odd_part();
        let odd_tail = SuperElement::term(crate::superalgebra::odd_monomial(odd), integer(1));
        // even factors sit in front of every odd one, so no sign arises
        for &(g, _) in m.even_part() {
            let Some(v) = self.action.get(&g) else { continue };
            let (k, rest) = m.lower_even(g).expect("present");
            let even_rest = SuperElement::term(rest.even_only(), integer(k as i64));
            out += &(&even_rest * v) * &odd_tail;
        }
        let head = SuperElement::term(m.even_only(), integer(1));
        for (i, &g) in odd.iter().enumerate() {
            let Some(v) = self.action.get(&g) else { continue };
            let before = SuperElement::term(crate::superalgebra::odd_monomial(&odd[..i]), integer(1));
            let after = SuperElement::term(crate::superalgebra::odd_monomial(&odd[i + 1..]), integer(1));
            let t = &(&(&head * &before) * v) * &after;
            if self.parity.is_odd() && i % 2 == 1 {
                out -= &t;
            } else {
                out += t;
            }
        }
        out
    }

    /// Checks that every value is homogeneous with the declared parity and
    /// grading shift relative to its generator.
    pub fn check_homogeneity(&self, table: &GeneratorTable) -> Result<()> {
        for (g, v) in &self.action {
            let gen = table.get(*g);
            let want_parity = gen.parity.add(self.parity);
            let pg = gen.pure_ghost as i64 + self.shift.0;
            let ag = gen.anti_ghost as i64 + self.shift.1;
            let ok = v.parity() == Some(want_parity)
                && v.degree(table, Grading::PureGhost) == Some(pg)
                && v.degree(table, Grading::AntiGhost) == Some(ag);
            if !ok {
                return Err(Error::Invalid(format!(
                    "derivation value on {} is not homogeneous of the declared degree",
                    table.name(*g)
                )));
            }
        }
        Ok(())
    }

    /// `g ↦ D(D(g))` for every generator of `table`.
    pub fn nilpotency_defect(&self, table: &GeneratorTable) -> BTreeMap<GenId, SuperElement> {
        table.ids().map(|g| (g, self.apply(&self.value(g)))).collect()
    }

    pub fn is_nilpotent(&self, table: &GeneratorTable) -> bool {
        self.nilpotency_defect(table).values().all(SuperElement::is_zero)
    }

    pub fn to_text(&self, table: &GeneratorTable) -> String {
        let parts: Vec<String> = self
            .action
            .iter()
            .map(|(g, v)| format!("{} -> {}", table.name(*g), v.to_text(table)))
            .collect();
        parts.join("; ")
    }
}

impl Differential for Derivation {
    fn apply(&self, e: &SuperElement) -> SuperElement {
        Derivation::apply(self, e)
    }
}

/// `[D1, D2] = D1∘D2 + D2∘D1` for odd derivations, itself an even derivation,
/// materialized by its values on the generators of `table`.
pub fn anticommutator(table: &GeneratorTable, d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    if !d1.parity.is_odd() || !d2.parity.is_odd() {
        return Err(Error::ParityMismatch(d1.parity, d2.parity));
    }
    let shift = (d1.shift.0 + d2.shift.0, d1.shift.1 + d2.shift.1);
    Ok(Derivation::from_action(
        Parity::Even,
        shift,
        table.ids().map(|g| (g, &d1.apply(&d2.value(g)) + &d2.apply(&d1.value(g)))),
    ))
}

/// δ: `P_a ↦ −G_a`, coordinates and ghosts annihilated.
pub fn koszul_tate(cs: &ConstraintSystem) -> Derivation {
    let t = cs.table();
    Derivation::from_action(
        Parity::Odd,
        (0, -1),
        (0..cs.len()).map(|a| (t.antighost(a), -cs.constraint(a))),
    )
}

/// d: `z ↦ (X_a z)η^a`, `η^a ↦ −½C^a_{cb}η^bη^c`, `P_a ↦ η^c C^b_{ac} P_b`.
pub fn longitudinal(cs: &ConstraintSystem) -> Derivation {
    let t = cs.table();
    let m = cs.len();
    let eta = |a: usize| SuperElement::generator(t, t.ghost(a));
    let anti = |a: usize| SuperElement::generator(t, t.antighost(a));
    let mut d = Derivation::new(Parity::Odd, (1, 0));
    let fields: Vec<_> = (0..m).map(|a| cs.hamiltonian_vector_field(a)).collect();
    for &z in t.coordinates() {
        let zf = SuperElement::generator(t, z);
        d.set(z, (0..m).map(|a| &fields[a].apply(t, &zf) * &eta(a)).sum());
    }
    let half = rational(-1, 2);
    for a in 0..m {
        let mut v = SuperElement::zero();
        for b in 0..m {
            for c in 0..m {
                let s = cs.structure(c, b, a);
                if !s.is_zero() {
                    v += (&(s * &eta(b)) * &eta(c)).scale(&half);
                }
            }
        }
        d.set(t.ghost(a), v);
    }
    for a in 0..m {
        let mut v = SuperElement::zero();
        for b in 0..m {
            for c in 0..m {
                let s = cs.structure(a, c, b);
                if !s.is_zero() {
                    v += &(&eta(c) * s) * &anti(b);
                }
            }
        }
        d.set(t.antighost(a), v);
    }
    d
}

/// Right-hand side of the `d²` formula on a coordinate function:
/// `Σ_{i<j} ([X_i,X_j] − C^k_{ji}X_k)(f) η^iη^j`.
pub fn d_squared_formula(cs: &ConstraintSystem, f: &SuperElement) -> SuperElement {
    let t = cs.table();
    let m = cs.len();
    let fields: Vec<_> = (0..m).map(|a| cs.hamiltonian_vector_field(a)).collect();
    let mut out = SuperElement::zero();
    for i in 0..m {
        for j in i + 1..m {
            let mut v = fields[i].commutator(t, &fields[j]).apply(t, f);
            for (k, xk) in fields.iter().enumerate() {
                let c = cs.structure(j, i, k);
                if !c.is_zero() {
                    v -= &(c * &xk.apply(t, f));
                }
            }
            let pair = &SuperElement::generator(t, t.ghost(i)) * &SuperElement::generator(t, t.ghost(j));
            out += &v * &pair;
        }
    }
    out
}
