//! Exact sparse linear algebra over ℚ.
//!
//! Rank and kernel use fraction-free (Bareiss) elimination: each row is first
//! scaled to a primitive integer row, elimination then stays in ℤ with exact
//! divisions by the previous pivot. [`SubspaceReducer`] keeps an echelon basis
//! of a subspace spanned by labelled vectors and reduces vectors to canonical
//! representatives modulo it, which is how quotient modules are realized.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lincomb::LinComb;
use crate::rational::ExactRational;

pub type SparseVector = LinComb<usize>;

/// Immutable `rows × cols` matrix with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, ExactRational>>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, ExactRational::one())))
    }

    /// Entries with the same position are summed; out-of-bounds indices panic.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, ExactRational)>,
    ) -> Self {
        let mut data = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let slot: &mut ExactRational = data[r].entry(c).or_insert_with(ExactRational::zero);
            *slot += v;
        }
        for row in &mut data {
            row.retain(|_, v: &mut ExactRational| !v.is_zero());
        }
        SparseRationalMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<ExactRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(i, row)| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    /// Stack rows given as sparse vectors.
    pub fn from_rows(cols: usize, rows: &[SparseVector]) -> Self {
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v.clone()))),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> ExactRational {
        self.data[r].get(&c).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &ExactRational)> {
        self.data[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<ExactRational>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.data
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone()))),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn mul_vec(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = ExactRational::zero();
            for (c, x) in row {
                let y = v.coeff(c);
                if !y.is_zero() {
                    acc += x * y;
                }
            }
            out.add_term(r, acc);
        }
        out
    }

    /// Vertical concatenation; column counts must agree.
    pub fn stack(blocks: &[SparseRationalMatrix], cols: usize) -> Self {
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        SparseRationalMatrix { rows: data.len(), cols, data }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rows.len()
    }

    /// Basis of `{v : M·v = 0}`, one primitive integral vector per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVector> {
        let ech = self.echelon();
        let pivots: BTreeSet<usize> = ech.rows.iter().map(|r| r.pivot).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut x: BTreeMap<usize, ExactRational> = BTreeMap::new();
            x.insert(free, ExactRational::one());
            for row in ech.rows.iter().rev() {
                let mut acc = ExactRational::zero();
                for (c, a) in row.entries.iter().filter(|(c, _)| **c > row.pivot) {
                    if let Some(xc) = x.get(c) {
                        acc += BigRational::from_integer(a.clone()) * xc;
                    }
                }
                if !acc.is_zero() {
                    let p = BigRational::from_integer(row.entries[&row.pivot].clone());
                    x.insert(row.pivot, -acc / p);
                }
            }
            basis.push(primitive(x.into_iter().collect()));
        }
        basis
    }

    fn echelon(&self) -> Echelon {
        let mut pending: Vec<BTreeMap<usize, BigInt>> =
            self.data.iter().filter(|r| !r.is_empty()).map(integral_row).collect();
        let mut rows = Vec::new();
        let mut prev_pivot = BigInt::one();
        let mut col = 0;
        while col < self.cols && !pending.is_empty() {
            // leftmost remaining column with a nonzero entry
            let next = pending.iter().filter_map(|r| r.keys().next().copied()).min();
            let Some(c) = next else { break };
            col = c;
            // choose the sparsest row with a nonzero entry in this column
            let idx = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains_key(&col))
                .min_by_key(|(_, r)| r.len())
                .map(|(i, _)| i)
                .expect("column has a nonzero entry");
            let pivot_row = pending.swap_remove(idx);
            let p = pivot_row[&col].clone();
            let mut next_pending = Vec::with_capacity(pending.len());
            for row in pending {
                let updated = match row.get(&col) {
                    None => {
                        // Bareiss keeps every remaining row on the same scale
                        row.into_iter().map(|(k, v)| (k, (v * &p).div_exact(&prev_pivot))).collect()
                    }
                    Some(a) => {
                        let a = a.clone();
                        let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
                        let keys: BTreeSet<usize> =
                            row.keys().chain(pivot_row.keys()).copied().collect();
                        for k in keys.into_iter().filter(|k| *k != col) {
                            let lhs = row.get(&k).map(|v| v * &p).unwrap_or_default();
                            let rhs = pivot_row.get(&k).map(|v| v * &a).unwrap_or_default();
                            let v = (lhs - rhs).div_exact(&prev_pivot);
                            if !v.is_zero() {
                                out.insert(k, v);
                            }
                        }
                        out
                    }
                };
                if !updated.is_empty() {
                    next_pending.push(updated);
                }
            }
            pending = next_pending;
            rows.push(EchelonRow { pivot: col, entries: pivot_row });
            prev_pivot = p;
            col += 1;
        }
        Echelon { rows }
    }
}

struct EchelonRow {
    pivot: usize,
    entries: BTreeMap<usize, BigInt>,
}

struct Echelon {
    rows: Vec<EchelonRow>,
}

trait DivExact {
    fn div_exact(self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(self, d: &BigInt) -> BigInt {
        let (quot, rem) = self.div_rem(d);
        debug_assert!(rem.is_zero(), "Bareiss division must be exact");
        quot
    }
}

fn integral_row(row: &BTreeMap<usize, ExactRational>) -> BTreeMap<usize, BigInt> {
    let lcm = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|(c, v)| (*c, (v * BigRational::from_integer(lcm.clone())).to_integer())).collect()
}

/// Scale to an integral vector with coprime entries and positive leading (smallest index) entry.
fn primitive(v: SparseVector) -> SparseVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let ints: Vec<(usize, BigInt)> = v
        .iter()
        .map(|(k, x)| (*k, (x * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = if ints.first().is_some_and(|(_, x)| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|(k, x)| (k, BigRational::from_integer(x / &g * &sign))).collect()
}

/// Echelon basis of a subspace of the span of labels `K`.
///
/// Each stored vector is monic in its leading (largest) label and no two share
/// a leading label. After [`reduce`](Self::reduce) a vector has zero
/// coefficient on every pivot label, so reduced forms are canonical coset
/// representatives and the non-pivot labels index a basis of the quotient.
#[derive(Clone, Debug)]
pub struct SubspaceReducer<K: Ord + Clone> {
    basis: BTreeMap<K, LinComb<K>>,
}

impl<K: Ord + Clone> Default for SubspaceReducer<K> {
    fn default() -> Self {
        SubspaceReducer { basis: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SubspaceReducer<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_spanning(vectors: impl IntoIterator<Item = LinComb<K>>) -> Self {
        let mut r = Self::new();
        for v in vectors {
            r.insert(v);
        }
        r
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_pivot(&self, label: &K) -> bool {
        self.basis.contains_key(label)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.basis.keys()
    }

    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut v = v.clone();
        let mut cursor: Option<K> = None;
        loop {
            // largest pivot label present in v strictly below the cursor
            let next = v
                .labels()
                .rev()
                .filter(|k| cursor.as_ref().is_none_or(|c| *k < c))
                .find(|k| self.basis.contains_key(*k))
                .cloned();
            let Some(k) = next else { break };
            let c = v.coeff(&k);
            v.add_scaled(&self.basis[&k], &-c);
            cursor = Some(k);
        }
        v
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Returns whether the dimension grew.
    pub fn insert(&mut self, v: LinComb<K>) -> bool {
        let r = self.reduce(&v);
        let Some((lead, c)) = r.leading() else { return false };
        let lead = lead.clone();
        let inv = c.recip();
        self.basis.insert(lead, r.scaled(&inv));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> SparseRationalMatrix {
        SparseRationalMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(SparseRationalMatrix::identity(3).rank(), 3);
        assert!(SparseRationalMatrix::identity(2).kernel_basis().is_empty());
        let z = SparseRationalMatrix::zeros(2, 2);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 2);
        assert_eq!(z.nnz(), 0);
    }

    #[test]
    fn hand_reduced_examples() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        let k = m(&[&[2, -1], &[-4, 2]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].coeff(&0), q(1));
        assert_eq!(k[0].coeff(&1), q(2));
    }

    #[test]
    fn empty_matrix_has_full_kernel() {
        let e = SparseRationalMatrix::zeros(0, 3);
        assert_eq!(e.kernel_basis().len(), 3);
    }

    #[test]
    fn zeros_are_not_stored() {
        let a = SparseRationalMatrix::from_triplets(2, 2, [(0, 0, q(1)), (0, 0, q(-1)), (1, 1, q(0))]);
        assert_eq!(a.nnz(), 0);
    }

    #[test]
    fn reducer_canonical_forms() {
        let mut r = SubspaceReducer::new();
        r.insert(LinComb::from_iter([(0usize, q(1)), (1, q(1))]));
        assert!(!r.insert(LinComb::from_iter([(0usize, q(2)), (1, q(2))])));
        let a = r.reduce(&LinComb::basis(1));
        let b = r.reduce(&LinComb::term(0, q(-1)));
        assert_eq!(a, b);
        assert!(!r.is_pivot(&0));
    }
}
