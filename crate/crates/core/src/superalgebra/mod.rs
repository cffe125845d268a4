//! Supercommutative polynomial algebra over the rationals.
//!
//! Coordinates and even higher ghosts commute with everything; ghosts and
//! antighosts anticommute among themselves and square to zero. Every element
//! is kept in a unique canonical form so equality is structural.

mod element;
mod generator;
mod monomial;

pub use element::{Displayed, Grading, SuperElement};
pub use generator::{GenId, Generator, GeneratorKind, GeneratorTable, Parity, TableBuilder};
pub use monomial::Monomial;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact coefficient field.
pub type Scalar = BigRational;

pub fn rational(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// All monomials in `vars` of total degree at most `max_degree`, ordered by
/// degree and then lexicographically by exponent vector (larger leading
/// exponents first).
pub fn monomials_up_to(vars: &[GenId], max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        monomials_of_degree(vars, d, &mut Vec::new(), &mut out);
    }
    out
}

fn monomials_of_degree(vars: &[GenId], d: u32, prefix: &mut Vec<(GenId, u32)>, out: &mut Vec<Monomial>) {
    match vars.split_first() {
        None => {
            if d == 0 {
                out.push(Monomial::from_parts(prefix.clone(), Vec::new()));
            }
        }
        Some((&v, rest)) => {
            for k in (0..=d).rev() {
                if k > 0 {
                    prefix.push((v, k));
                }
                monomials_of_degree(rest, d - k, prefix, out);
                if k > 0 {
                    prefix.pop();
                }
            }
        }
    }
}

/// k-element subsets of `items`, each in increasing order, lexicographic.
pub fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn rec<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Odd monomial `g₁⋯g_k` for an increasing list of odd generators.
pub fn odd_monomial(gens: &[GenId]) -> Monomial {
    let mut v = gens.to_vec();
    v.sort();
    Monomial::from_parts(Vec::new(), v)
}

/// Product of an even monomial `z` with any monomial (no sign arises).
pub fn join(z: &Monomial, other: &Monomial) -> Monomial {
    let mut even: std::collections::BTreeMap<GenId, u32> = z.even_part().iter().copied().collect();
    for &(g, k) in other.even_part() {
        *even.entry(g).or_insert(0) += k;
    }
    Monomial::from_parts(even.into_iter().collect(), other.odd_part().to_vec())
}
