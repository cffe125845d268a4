//! Exact sparse linear algebra over the rationals.
//!
//! Systems are assembled from "column vectors" keyed by an arbitrary ordered
//! type (usually a monomial). Elimination keeps the leftmost possible pivot
//! columns and sets free variables to zero, so callers control which
//! solution is returned through the order of their candidate columns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::superalgebra::Scalar;

type Row = Vec<(usize, Scalar)>;

/// Sparse column: row key → value.
pub type Column<K> = BTreeMap<K, Scalar>;

/// `a - f·b` on sorted sparse rows.
fn axpy(a: &Row, f: &Scalar, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form with normalized pivots.
///
/// Columns `0..unknowns` are variables; columns at or beyond `unknowns`
/// are right-hand sides.
#[derive(Clone, Debug)]
pub struct Echelon {
    unknowns: usize,
    pivots: BTreeMap<usize, Row>,
    inconsistent: Vec<bool>,
}

impl Echelon {
    pub fn new(unknowns: usize, rhs: usize) -> Self {
        Echelon {
            unknowns,
            pivots: BTreeMap::new(),
            inconsistent: vec![false; rhs],
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Stored rows with their pivot column, in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &[(usize, Scalar)])> + '_ {
        self.pivots.iter().map(|(&p, r)| (p, r.as_slice()))
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the current pivots; returns the remainder.
    pub fn reduce(&self, mut row: Row) -> Row {
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if col >= self.unknowns {
                break;
            }
            match self.pivots.get(&col) {
                Some(p) => {
                    let f = row[k].1.clone();
                    row = axpy(&row, &f, p);
                }
                None => k += 1,
            }
        }
        row
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: Row) -> bool {
        let mut row = row;
        row.retain(|(_, v)| !v.is_zero());
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                return false;
            };
            if lead >= self.unknowns {
                for (c, _) in &row {
                    self.inconsistent[c - self.unknowns] = true;
                }
                return false;
            }
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &lv, p),
                None => {
                    let inv = lv.recip();
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn is_consistent(&self, rhs: usize) -> bool {
        !self.inconsistent[rhs]
    }

    /// Particular solution for right-hand side `rhs` with free variables 0.
    pub fn solution(&self, rhs: usize) -> Option<Vec<Scalar>> {
        if self.inconsistent[rhs] {
            return None;
        }
        let target = self.unknowns + rhs;
        Some(self.back_substitute(|row| {
            row.iter()
                .find(|(c, _)| *c == target)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(Scalar::zero)
        }, None))
    }

    fn back_substitute(&self, rhs_of: impl Fn(&Row) -> Scalar, free: Option<usize>) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); self.unknowns];
        if let Some(f) = free {
            x[f] = Scalar::one();
        }
        for (&pc, row) in self.pivots.iter().rev() {
            let mut v = rhs_of(row);
            for (c, a) in row.iter().skip(1) {
                if *c >= self.unknowns {
                    break;
                }
                if !x[*c].is_zero() {
                    v -= a * &x[*c];
                }
            }
            x[pc] = v;
        }
        x
    }

    /// Basis of the null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        (0..self.unknowns)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|f| self.back_substitute(|_| Scalar::zero(), Some(f)))
            .collect()
    }
}

/// Row-indexed system assembled from keyed columns.
pub struct KeyedSystem<K: Ord + Clone> {
    rows: BTreeMap<K, Row>,
    unknowns: usize,
}

impl<K: Ord + Clone> KeyedSystem<K> {
    pub fn from_columns(columns: &[Column<K>]) -> Self {
        let mut rows: BTreeMap<K, Row> = BTreeMap::new();
        for (j, col) in columns.iter().enumerate() {
            for (k, v) in col {
                if !v.is_zero() {
                    rows.entry(k.clone()).or_default().push((j, v.clone()));
                }
            }
        }
        KeyedSystem {
            rows,
            unknowns: columns.len(),
        }
    }

    /// Solves `Σ x_j column_j = target` for every target at once.
    pub fn solve_many(mut self, targets: &[Column<K>]) -> Vec<Option<Vec<Scalar>>> {
        for (t, col) in targets.iter().enumerate() {
            for (k, v) in col {
                if !v.is_zero() {
                    self.rows
                        .entry(k.clone())
                        .or_default()
                        .push((self.unknowns + t, v.clone()));
                }
            }
        }
        let mut ech = Echelon::new(self.unknowns, targets.len());
        for (_, row) in self.rows {
            ech.insert(row);
        }
        (0..targets.len()).map(|t| ech.solution(t)).collect()
    }

    pub fn echelon(self) -> Echelon {
        let mut ech = Echelon::new(self.unknowns, 0);
        for (_, row) in self.rows {
            ech.insert(row);
        }
        ech
    }
}

/// Solves `Σ x_j columns[j] = target`; free variables are zero.
pub fn solve<K: Ord + Clone>(columns: &[Column<K>], target: &Column<K>) -> Option<Vec<Scalar>> {
    KeyedSystem::from_columns(columns)
        .solve_many(std::slice::from_ref(target))
        .pop()
        .flatten()
}

/// Rank of the span of `columns`.
pub fn rank<K: Ord + Clone>(columns: &[Column<K>]) -> usize {
    KeyedSystem::from_columns(columns).echelon().rank()
}

/// Null-space basis of the matrix whose columns are `columns`.
pub fn nullspace<K: Ord + Clone>(columns: &[Column<K>]) -> Vec<Vec<Scalar>> {
    KeyedSystem::from_columns(columns).echelon().nullspace()
}

type IntRow = Vec<(usize, BigInt)>;

fn content_normalize(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
}

/// Rank by fraction-free integer elimination.
///
/// Each column is scaled to an integer vector; reduction uses
/// `r ← p_lead·r − r_lead·p` followed by content division, so no rational
/// arithmetic is performed.
pub fn rank_fraction_free<K: Ord + Clone>(columns: &[Column<K>]) -> usize {
    // eliminate over the transposed matrix: rank(A) = rank(Aᵀ), and columns
    // are already sparse vectors keyed by K
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    for col in columns {
        for k in col.keys() {
            let n = keys.len();
            keys.entry(k.clone()).or_insert(n);
        }
    }
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for col in columns {
        let lcm = col.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut row: IntRow = col
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (keys[k], (v * Scalar::from_integer(lcm.clone())).to_integer()))
            .collect();
        row.sort_by_key(|e| e.0);
        loop {
            if row.is_empty() {
                break;
            }
            content_normalize(&mut row);
            let lead = row[0].0;
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, row);
                    break;
                }
                Some(p) => {
                    let (pl, rl) = (p[0].1.clone(), row[0].1.clone());
                    row = int_combine(&row, &pl, p, &rl);
                }
            }
        }
    }
    pivots.len()
}

/// `a·r − b·p` on sorted sparse integer rows.
fn int_combine(r: &IntRow, a: &BigInt, p: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        if j >= p.len() || (i < r.len() && r[i].0 < p[j].0) {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if i >= r.len() || p[j].0 < r[i].0 {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{integer, rational};
    use proptest::prelude::*;

    fn col(entries: &[(u32, i64)]) -> Column<u32> {
        entries.iter().map(|&(k, v)| (k, integer(v))).collect()
    }

    #[test]
    fn solves_and_prefers_leftmost_columns() {
        // columns: e0, e0 + e1, e1
        let cols = vec![col(&[(0, 1)]), col(&[(0, 1), (1, 1)]), col(&[(1, 1)])];
        let x = solve(&cols, &col(&[(0, 2), (1, 3)])).unwrap();
        assert_eq!(x, vec![integer(-1), integer(3), integer(0)]);
    }

    #[test]
    fn detects_inconsistency() {
        let cols = vec![col(&[(0, 1), (1, 1)])];
        assert!(solve(&cols, &col(&[(0, 1)])).is_none());
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let cols = vec![col(&[(0, 1), (1, 2)]), col(&[(0, 2), (1, 4)]), col(&[(1, 1)])];
        let ns = nullspace(&cols);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        for k in 0..2u32 {
            let s: Scalar = cols.iter().zip(v).map(|(c, x)| c.get(&k).cloned().unwrap_or_default() * x).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn rational_entries() {
        let cols: Vec<Column<u32>> = vec![[(0, rational(1, 2))].into_iter().collect()];
        let x = solve(&cols, &[(0, rational(1, 3))].into_iter().collect()).unwrap();
        assert_eq!(x, vec![rational(2, 3)]);
    }

    proptest! {
        #[test]
        fn fraction_free_rank_matches_rational_rank(
            entries in proptest::collection::vec((0u32..6, 0usize..7, -3i64..4), 0..30)
        ) {
            let mut cols: Vec<Column<u32>> = vec![BTreeMap::new(); 7];
            for (k, j, v) in entries {
                *cols[j].entry(k).or_insert_with(Scalar::zero) += integer(v);
            }
            prop_assert_eq!(rank(&cols), rank_fraction_free(&cols));
        }

        #[test]
        fn solutions_satisfy_the_system(
            entries in proptest::collection::vec((0u32..5, 0usize..4, -3i64..4), 1..20),
            combo in proptest::collection::vec(-2i64..3, 4)
        ) {
            let mut cols: Vec<Column<u32>> = vec![BTreeMap::new(); 4];
            for (k, j, v) in entries {
                *cols[j].entry(k).or_insert_with(Scalar::zero) += integer(v);
            }
            // a target in the span is always solvable and the solution checks out
            let mut target: Column<u32> = BTreeMap::new();
            for (c, x) in cols.iter().zip(&combo) {
                for (k, v) in c {
                    *target.entry(*k).or_insert_with(Scalar::zero) += v * integer(*x);
                }
            }
            let sol = solve(&cols, &target).expect("target lies in the span");
            let mut back: Column<u32> = BTreeMap::new();
            for (c, x) in cols.iter().zip(&sol) {
                for (k, v) in c {
                    *back.entry(*k).or_insert_with(Scalar::zero) += v * x;
                }
            }
            back.retain(|_, v| !v.is_zero());
            target.retain(|_, v| !v.is_zero());
            prop_assert_eq!(back, target);
        }
    }
}
