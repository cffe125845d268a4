use std::collections::BTreeMap;

use crate::superalgebra::{GenId, GeneratorTable, SuperElement};

/// Polynomial vector field `X = X^λ ∂_λ` on the coordinate algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorField {
    components: BTreeMap<GenId, SuperElement>,
}

impl VectorField {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_components(components: impl IntoIterator<Item = (GenId, SuperElement)>) -> Self {
        let mut v = Self::zero();
        for (g, c) in components {
            v.add_component(g, &c);
        }
        v
    }

    /// The coordinate derivation ∂/∂g.
    pub fn partial(g: GenId) -> Self {
        Self::from_components([(g, SuperElement::one())])
    }

    pub fn component(&self, g: GenId) -> SuperElement {
        self.components.get(&g).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (GenId, &SuperElement)> {
        self.components.iter().map(|(g, c)| (*g, c))
    }

    pub fn add_component(&mut self, g: GenId, c: &SuperElement) {
        let slot = self.components.entry(g).or_default();
        *slot += c;
        if slot.is_zero() {
            self.components.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `X(f) = X^λ ∂_λ f`.
    pub fn apply(&self, table: &GeneratorTable, f: &SuperElement) -> SuperElement {
        self.components
            .iter()
            .map(|(g, c)| c * &f.left_derivative(table, *g))
            .sum()
    }

    /// Lie bracket `[X, Y]^λ = X(Y^λ) − Y(X^λ)`.
    pub fn commutator(&self, table: &GeneratorTable, other: &VectorField) -> VectorField {
        let mut out = VectorField::zero();
        let keys: std::collections::BTreeSet<GenId> =
            self.components.keys().chain(other.components.keys()).copied().collect();
        for g in keys {
            let c = &self.apply(table, &other.component(g)) - &other.apply(table, &self.component(g));
            out.add_component(g, &c);
        }
        out
    }

    /// `f · X`.
    pub fn scale(&self, f: &SuperElement) -> VectorField {
        VectorField::from_components(self.components.iter().map(|(g, c)| (*g, f * c)))
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        for (g, c) in &other.components {
            out.add_component(*g, c);
        }
        out
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        for (g, c) in &other.components {
            out.add_component(*g, &-c);
        }
        out
    }

    /// Maximum z-degree over components.
    pub fn max_degree(&self, table: &GeneratorTable) -> i64 {
        self.components
            .values()
            .filter_map(|c| c.max_degree(table, crate::superalgebra::Grading::ZDegree))
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self, table: &GeneratorTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(g, c)| format!("({})*d/d{}", c.to_text(table), table.name(*g)))
            .collect();
        parts.join(" + ")
    }
}
