//! Seeded random elements for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::superalgebra::{
    combinations, join, monomials_up_to, odd_monomial, rational, GenId, GeneratorTable, Monomial, Parity, Scalar,
    SuperElement,
};

/// Deterministic source of random algebra elements.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn parity(&mut self) -> Parity {
        if self.rng.gen_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Nonzero coefficient: a small integer, sometimes a fraction.
    pub fn coefficient(&mut self) -> Scalar {
        let mut n = self.rng.gen_range(1..=5);
        if self.rng.gen_bool(0.5) {
            n = -n;
        }
        let d = if self.rng.gen_bool(0.25) { self.rng.gen_range(2..=4) } else { 1 };
        rational(n, d)
    }

    fn coordinate_monomial(&mut self, table: &GeneratorTable, max_degree: u32) -> Monomial {
        let all = monomials_up_to(table.coordinates(), max_degree);
        all.choose(&mut self.rng).cloned().unwrap_or_default()
    }

    fn odd_generators(table: &GeneratorTable) -> Vec<GenId> {
        table.ids().filter(|&g| table.is_odd(g)).collect()
    }

    fn even_ghosts(table: &GeneratorTable) -> Vec<GenId> {
        table
            .ids()
            .filter(|&g| !table.is_odd(g) && !table.get(g).is_coordinate())
            .collect()
    }

    /// Coordinate-only polynomial with up to `terms` terms of degree ≤ `max_degree`.
    pub fn coordinate_polynomial(&mut self, table: &GeneratorTable, max_degree: u32, terms: usize) -> SuperElement {
        let mut out = SuperElement::zero();
        let k = self.rng.gen_range(1..=terms.max(1));
        for _ in 0..k {
            let m = self.coordinate_monomial(table, max_degree);
            out.add_term(m, self.coefficient());
        }
        out
    }

    fn ghost_factor(&mut self, table: &GeneratorTable, parity: Option<Parity>) -> Monomial {
        let odd = Self::odd_generators(table);
        let max = odd.len().min(3);
        let mut k = self.rng.gen_range(0..=max);
        if let Some(p) = parity {
            if (k % 2 == 1) != p.is_odd() {
                k = if k == 0 { 1.min(max) } else { k - 1 };
            }
        }
        let mut pick: Vec<GenId> = odd.choose_multiple(&mut self.rng, k).copied().collect();
        pick.sort();
        let mut m = odd_monomial(&pick);
        let even = Self::even_ghosts(table);
        if !even.is_empty() && self.rng.gen_bool(0.3) {
            let g = *even.choose(&mut self.rng).expect("nonempty");
            m = join(&Monomial::generator(table, g), &m);
        }
        m
    }

    fn build(&mut self, table: &GeneratorTable, parity: Option<Parity>) -> SuperElement {
        let mut out = SuperElement::zero();
        let k = self.rng.gen_range(1..=4);
        for _ in 0..k {
            let z = self.coordinate_monomial(table, 2);
            let g = self.ghost_factor(table, parity);
            out.add_term(join(&z, &g), self.coefficient());
        }
        out
    }

    /// Inhomogeneous element with a few terms.
    pub fn element(&mut self, table: &GeneratorTable) -> SuperElement {
        self.build(table, None)
    }

    /// Element of definite parity (possibly zero when no odd generators exist
    /// and odd parity is requested).
    pub fn homogeneous(&mut self, table: &GeneratorTable, parity: Parity) -> SuperElement {
        let e = self.build(table, Some(parity));
        e.filter(|m| m.parity() == parity)
    }

    /// Element homogeneous in both pure-ghost and antighost degree.
    pub fn ghost_homogeneous(&mut self, table: &GeneratorTable) -> SuperElement {
        let ghosts = table.ghosts().to_vec();
        let antis = table.antighosts().to_vec();
        let kg = self.rng.gen_range(0..=ghosts.len().min(2));
        let ka = self.rng.gen_range(0..=antis.len().min(2));
        let gs = combinations(&ghosts, kg);
        let as_ = combinations(&antis, ka);
        let mut out = SuperElement::zero();
        for _ in 0..self.rng.gen_range(1..=3) {
            let mut pick = gs.choose(&mut self.rng).cloned().unwrap_or_default();
            pick.extend(as_.choose(&mut self.rng).cloned().unwrap_or_default());
            let z = self.coordinate_monomial(table, 2);
            out.add_term(join(&z, &odd_monomial(&pick)), self.coefficient());
        }
        out
    }
}
