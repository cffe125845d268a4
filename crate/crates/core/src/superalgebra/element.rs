use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::generator::{GenId, GeneratorTable, Parity};
use super::monomial::{Monomial, Product};
use super::Scalar;
use crate::error::Result;

/// An element of the supercommutative algebra, stored as a sparse map from
/// canonical monomials to nonzero rational coefficients.
///
/// Elements do not own their generator table; every [`GenId`] refers to the
/// table the element was built against.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SuperElement {
    terms: BTreeMap<Monomial, Scalar>,
}

/// Which grading to decompose by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    PureGhost,
    AntiGhost,
    GhostNumber,
    Aux,
    Parity,
    ZDegree,
}

impl Grading {
    pub fn of_monomial(self, table: &GeneratorTable, m: &Monomial) -> i64 {
        if self == Grading::Parity {
            return m.parity().as_int();
        }
        m.factors()
            .map(|g| {
                let gen = table.get(g);
                match self {
                    Grading::PureGhost => gen.pure_ghost as i64,
                    Grading::AntiGhost => gen.anti_ghost as i64,
                    Grading::GhostNumber => gen.ghost_number(),
                    Grading::Aux => gen.aux as i64,
                    Grading::ZDegree => gen.is_coordinate() as i64,
                    Grading::Parity => unreachable!(),
                }
            })
            .sum()
    }
}

impl SuperElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Scalar::from_integer(n.into()))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SuperElement { terms }
    }

    pub fn generator(table: &GeneratorTable, g: GenId) -> Self {
        Self::term(Monomial::generator(table, g), Scalar::one())
    }

    /// Looks a generator up by name; panics on unknown names, for fixtures.
    pub fn named(table: &GeneratorTable, name: &str) -> Self {
        let g = table
            .lookup(name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        Self::generator(table, g)
    }

    /// Canonicalizes a list of raw products `coefficient · g₁ g₂ ⋯ gₖ`.
    pub fn normalize(table: &GeneratorTable, raw: &[(Scalar, Vec<GenId>)]) -> Result<Self> {
        let mut out = SuperElement::zero();
        for (c, word) in raw {
            let mut t = SuperElement::constant(c.clone());
            for &g in word {
                table.try_get(g)?;
                t = &t * &SuperElement::generator(table, g);
                if t.is_zero() {
                    break;
                }
            }
            out += &t;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The constant term.
    pub fn constant_part(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SuperElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Scalar::from_integer(n.into()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Parity of every term, if they agree.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Splits into (even part, odd part).
    pub fn split_parity(&self) -> (SuperElement, SuperElement) {
        let mut even = SuperElement::zero();
        let mut odd = SuperElement::zero();
        for (m, c) in &self.terms {
            let target = if m.parity().is_odd() { &mut odd } else { &mut even };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    /// True when no generator other than coordinates occurs.
    pub fn is_coordinate_only(&self, table: &GeneratorTable) -> bool {
        self.terms
            .keys()
            .all(|m| m.factors().all(|g| table.get(g).is_coordinate()))
    }

    /// Keeps the terms whose monomial satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&Monomial) -> bool) -> Self {
        SuperElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous decomposition by `which`.
    pub fn grade(&self, table: &GeneratorTable, which: Grading) -> BTreeMap<i64, SuperElement> {
        let mut out: BTreeMap<i64, SuperElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(which.of_monomial(table, m))
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, table: &GeneratorTable, which: Grading, d: i64) -> Self {
        self.filter(|m| which.of_monomial(table, m) == d)
    }

    /// The degree of a homogeneous element (None for zero or inhomogeneous).
    pub fn degree(&self, table: &GeneratorTable, which: Grading) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| which.of_monomial(table, m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self, table: &GeneratorTable, which: Grading) -> Option<i64> {
        self.terms.keys().map(|m| which.of_monomial(table, m)).max()
    }

    pub fn min_degree(&self, table: &GeneratorTable, which: Grading) -> Option<i64> {
        self.terms.keys().map(|m| which.of_monomial(table, m)).min()
    }

    /// Graded left partial derivative ∂/∂g: the generator is moved to the
    /// front before being stripped.
    pub fn left_derivative(&self, table: &GeneratorTable, g: GenId) -> Self {
        self.derivative(table, g, false)
    }

    /// Graded right partial derivative: the generator is moved to the back.
    pub fn right_derivative(&self, table: &GeneratorTable, g: GenId) -> Self {
        self.derivative(table, g, true)
    }

    fn derivative(&self, table: &GeneratorTable, g: GenId, from_right: bool) -> Self {
        let mut out = SuperElement::zero();
        if table.is_odd(g) {
            for (m, c) in &self.terms {
                if let Some((pos, rest)) = m.remove_odd(g) {
                    let passed = if from_right {
                        m.odd_part().len() - 1 - pos
                    } else {
                        pos
                    };
                    let c = if passed % 2 == 1 { -c.clone() } else { c.clone() };
                    out.add_term(rest, c);
                }
            }
        } else {
            for (m, c) in &self.terms {
                if let Some((k, rest)) = m.lower_even(g) {
                    out.add_term(rest, c * Scalar::from_integer(k.into()));
                }
            }
        }
        out
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        let mut out = SuperElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Groups terms by their non-coordinate factor: returns
    /// `ghost monomial → coordinate coefficient`.
    pub fn by_ghost_part(&self, table: &GeneratorTable) -> BTreeMap<Monomial, SuperElement> {
        let mut out: BTreeMap<Monomial, SuperElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (z, rest) = m.split_coordinates(table);
            out.entry(rest).or_default().add_term(z, c.clone());
        }
        out
    }

    pub fn display<'a>(&'a self, table: &'a GeneratorTable) -> Displayed<'a> {
        Displayed { element: self, table }
    }

    pub fn to_text(&self, table: &GeneratorTable) -> String {
        self.display(table).to_string()
    }
}

fn mul_into(out: &mut SuperElement, a: &SuperElement, b: &SuperElement) {
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Product::Term { negate, monomial } = ma.mul(mb) {
                let c = ca * cb;
                out.add_term(monomial, if negate { -c } else { c });
            }
        }
    }
}

impl Mul for &SuperElement {
    type Output = SuperElement;
    fn mul(self, rhs: &SuperElement) -> SuperElement {
        let mut out = SuperElement::zero();
        mul_into(&mut out, self, rhs);
        out
    }
}

impl Mul for SuperElement {
    type Output = SuperElement;
    fn mul(self, rhs: SuperElement) -> SuperElement {
        &self * &rhs
    }
}

impl AddAssign<&SuperElement> for SuperElement {
    fn add_assign(&mut self, rhs: &SuperElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for SuperElement {
    fn add_assign(&mut self, rhs: SuperElement) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&SuperElement> for SuperElement {
    fn sub_assign(&mut self, rhs: &SuperElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &SuperElement {
    type Output = SuperElement;
    fn add(self, rhs: &SuperElement) -> SuperElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SuperElement {
    type Output = SuperElement;
    fn add(mut self, rhs: SuperElement) -> SuperElement {
        self += rhs;
        self
    }
}

impl Sub for &SuperElement {
    type Output = SuperElement;
    fn sub(self, rhs: &SuperElement) -> SuperElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for SuperElement {
    type Output = SuperElement;
    fn sub(mut self, rhs: SuperElement) -> SuperElement {
        self -= &rhs;
        self
    }
}

impl Neg for &SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        SuperElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        -&self
    }
}

impl std::iter::Sum for SuperElement {
    fn sum<I: Iterator<Item = SuperElement>>(iter: I) -> Self {
        let mut out = SuperElement::zero();
        for e in iter {
            out += e;
        }
        out
    }
}

/// Textual form: `c*g1^k*g2 + ...`, coefficients as `p/q`.
pub struct Displayed<'a> {
    element: &'a SuperElement,
    table: &'a GeneratorTable,
}

pub(crate) fn write_rational(f: &mut impl fmt::Write, q: &Scalar) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.element.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                f.write_str("*")?;
            }
            let mut first = true;
            for &(g, k) in m.even_part() {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.table.name(g))?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
            for &g in m.odd_part() {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.table.name(g))?;
            }
        }
        Ok(())
    }
}

