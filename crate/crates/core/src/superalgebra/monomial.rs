use super::generator::{GenId, GeneratorTable, Parity};

/// Canonical monomial: a multidegree over even generators times a strictly
/// increasing product of odd generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    even: Vec<(GenId, u32)>,
    odd: Vec<GenId>,
}

/// Outcome of multiplying two canonical monomials.
pub(crate) enum Product {
    Zero,
    Term { negate: bool, monomial: Monomial },
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(table: &GeneratorTable, g: GenId) -> Self {
        if table.is_odd(g) {
            Monomial {
                even: Vec::new(),
                odd: vec![g],
            }
        } else {
            Monomial {
                even: vec![(g, 1)],
                odd: Vec::new(),
            }
        }
    }

    /// Builds a monomial from parts already in canonical form.
    pub(crate) fn from_parts(even: Vec<(GenId, u32)>, odd: Vec<GenId>) -> Self {
        debug_assert!(even.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(odd.windows(2).all(|w| w[0] < w[1]));
        Monomial { even, odd }
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn even_part(&self) -> &[(GenId, u32)] {
        &self.even
    }

    pub fn odd_part(&self) -> &[GenId] {
        &self.odd
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.len())
    }

    pub fn exponent(&self, g: GenId) -> u32 {
        self.even
            .binary_search_by_key(&g, |&(id, _)| id)
            .map(|i| self.even[i].1)
            .unwrap_or(0)
    }

    pub fn contains_odd(&self, g: GenId) -> bool {
        self.odd.binary_search(&g).is_ok()
    }

    /// Total multiplicity of generators satisfying `pred`.
    pub fn count_where(&self, mut pred: impl FnMut(GenId) -> bool) -> u32 {
        let e: u32 = self.even.iter().filter(|(g, _)| pred(*g)).map(|(_, k)| k).sum();
        e + self.odd.iter().filter(|g| pred(**g)).count() as u32
    }

    /// Splits into the coordinate factor and the remaining (ghost) factor.
    pub fn split_coordinates(&self, table: &GeneratorTable) -> (Monomial, Monomial) {
        let (ze, ge): (Vec<_>, Vec<_>) = self
            .even
            .iter()
            .partition(|(g, _)| table.get(*g).is_coordinate());
        (
            Monomial { even: ze, odd: Vec::new() },
            Monomial {
                even: ge,
                odd: self.odd.clone(),
            },
        )
    }

    /// Generators with multiplicity, even part first then odd part, in the
    /// order the canonical product is written.
    pub fn factors(&self) -> impl Iterator<Item = GenId> + '_ {
        self.even
            .iter()
            .flat_map(|&(g, k)| std::iter::repeat(g).take(k as usize))
            .chain(self.odd.iter().copied())
    }

    /// `self / other` as a set of factors, ignoring sign; `None` unless
    /// `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        let mut even = Vec::with_capacity(self.even.len());
        for &(g, k) in &self.even {
            let j = other.exponent(g);
            if j < k {
                even.push((g, k - j));
            } else if j > k {
                return None;
            }
        }
        if other.even.iter().any(|&(g, _)| self.exponent(g) == 0) {
            return None;
        }
        if !other.odd.iter().all(|g| self.odd.contains(g)) {
            return None;
        }
        let odd = self.odd.iter().copied().filter(|g| !other.odd.contains(g)).collect();
        Some(Monomial { even, odd })
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Product {
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() && j < other.even.len() {
            let (a, b) = (self.even[i], other.even[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    even.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    even.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    even.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        even.extend_from_slice(&self.even[i..]);
        even.extend_from_slice(&other.even[j..]);

        // Merge the odd lists; every time an element of `other` overtakes
        // the remaining elements of `self` it passes them all.
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut swaps = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() && j < other.odd.len() {
            let (a, b) = (self.odd[i], other.odd[j]);
            if a == b {
                return Product::Zero;
            }
            if a < b {
                odd.push(a);
                i += 1;
            } else {
                odd.push(b);
                swaps += self.odd.len() - i;
                j += 1;
            }
        }
        odd.extend_from_slice(&self.odd[i..]);
        odd.extend_from_slice(&other.odd[j..]);
        Product::Term {
            negate: swaps % 2 == 1,
            monomial: Monomial { even, odd },
        }
    }

    /// Removes one factor of even generator `g`, returning its former exponent.
    pub(crate) fn lower_even(&self, g: GenId) -> Option<(u32, Monomial)> {
        let pos = self.even.iter().position(|&(id, _)| id == g)?;
        let mut even = self.even.clone();
        let k = even[pos].1;
        if k == 1 {
            even.remove(pos);
        } else {
            even[pos].1 -= 1;
        }
        Some((
            k,
            Monomial {
                even,
                odd: self.odd.clone(),
            },
        ))
    }

    /// Removes odd generator `g`, returning its position in the odd list.
    pub(crate) fn remove_odd(&self, g: GenId) -> Option<(usize, Monomial)> {
        let pos = self.odd.binary_search(&g).ok()?;
        let mut odd = self.odd.clone();
        odd.remove(pos);
        Some((
            pos,
            Monomial {
                even: self.even.clone(),
                odd,
            },
        ))
    }

    pub(crate) fn even_only(&self) -> Monomial {
        Monomial {
            even: self.even.clone(),
            odd: Vec::new(),
        }
    }
}
