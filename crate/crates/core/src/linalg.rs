//! Exact rank computations over Z/p.

use std::collections::{BTreeMap, HashMap};

use crate::field::{FieldScalar, PrimeField};

/// Below this many columns rank is computed on a dense copy.
pub const DENSE_COLUMN_LIMIT: usize = 1000;

/// Coordinate-list matrix over Z/p. Duplicate coordinates are summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, FieldScalar)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, row: usize, col: usize, value: FieldScalar) {
        assert!(row < self.rows && col < self.cols, "({row}, {col}) outside {}x{}", self.rows, self.cols);
        if !value.is_zero() {
            self.entries.push((row, col, value));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, FieldScalar)] {
        &self.entries
    }

    fn row_maps(&self, field: &PrimeField) -> Vec<BTreeMap<usize, FieldScalar>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for &(r, c, v) in &self.entries {
            let slot = rows[r].entry(c).or_insert(FieldScalar::ZERO);
            *slot = field.add(*slot, v);
        }
        for row in &mut rows {
            row.retain(|_, v| !v.is_zero());
        }
        rows
    }

    /// Entries with duplicates merged and zeros removed, sorted by (row, col).
    pub fn normalized(&self, field: &PrimeField) -> Vec<(usize, usize, FieldScalar)> {
        self.row_maps(field)
            .into_iter()
            .enumerate()
            .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v)))
            .collect()
    }

    pub fn is_zero(&self, field: &PrimeField) -> bool {
        self.normalized(field).is_empty()
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix, field: &PrimeField) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let rhs_rows = rhs.row_maps(field);
        let mut acc: HashMap<(usize, usize), FieldScalar> = HashMap::new();
        for &(r, k, v) in &self.entries {
            for (&c, &w) in &rhs_rows[k] {
                let slot = acc.entry((r, c)).or_insert(FieldScalar::ZERO);
                *slot = field.add(*slot, field.mul(v, w));
            }
        }
        let mut out = SparseMatrix::zeros(self.rows, rhs.cols);
        let mut keys: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        keys.sort();
        for ((r, c), v) in keys {
            out.push(r, c, v);
        }
        out
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        if self.rows == 0 || self.cols == 0 || self.entries.is_empty() {
            return 0;
        }
        if self.cols < DENSE_COLUMN_LIMIT {
            self.dense_rank(field)
        } else {
            self.sparse_rank(field)
        }
    }

    /// Gaussian elimination on a dense copy.
    pub fn dense_rank(&self, field: &PrimeField) -> usize {
        let mut a = vec![vec![FieldScalar::ZERO; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            a[r][c] = field.add(a[r][c], v);
        }
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = field.inv(a[rank][col]).expect("nonzero pivot");
            let (head, tail) = a.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = field.mul(row[col], inv);
                for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Row reduction keeping rows sparse; each new row is reduced against the
    /// pivots found so far.
    pub fn sparse_rank(&self, field: &PrimeField) -> usize {
        // pivot column -> normalized row with leading coefficient 1
        let mut pivots: BTreeMap<usize, BTreeMap<usize, FieldScalar>> = BTreeMap::new();
        for mut row in self.row_maps(field) {
            while let Some((&lead, &lv)) = row.iter().next() {
                match pivots.get(&lead) {
                    Some(prow) => {
                        for (&c, &pv) in prow {
                            let slot = row.entry(c).or_insert(FieldScalar::ZERO);
                            *slot = field.sub(*slot, field.mul(lv, pv));
                            if slot.is_zero() {
                                row.remove(&c);
                            }
                        }
                    }
                    None => {
                        let inv = field.inv(lv).expect("nonzero lead");
                        for v in row.values_mut() {
                            *v = field.mul(*v, inv);
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_dense(field: &PrimeField, rows: &[Vec<i64>]) -> SparseMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.push(r, c, field.from_i64(v));
            }
        }
        m
    }

    #[test]
    fn small_ranks() {
        let f = PrimeField::default();
        assert_eq!(from_dense(&f, &[vec![1, 2], vec![2, 4]]).rank(&f), 1);
        assert_eq!(from_dense(&f, &[vec![1, 0], vec![0, 1]]).rank(&f), 2);
        assert_eq!(from_dense(&f, &[vec![0, 0], vec![0, 0]]).rank(&f), 0);
        assert_eq!(SparseMatrix::zeros(0, 5).rank(&f), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        let m = |f: &PrimeField| from_dense(f, &[vec![1, 1], vec![1, -2]]);
        assert_eq!(m(&f3).rank(&f3), 1);
        assert_eq!(m(&f5).rank(&f5), 2);
    }

    #[test]
    fn product_and_duplicates() {
        let f = PrimeField::default();
        let a = from_dense(&f, &[vec![1, -1]]);
        let b = from_dense(&f, &[vec![1], vec![1]]);
        assert!(a.mul(&b, &f).is_zero(&f));
        let mut c = SparseMatrix::zeros(1, 1);
        c.push(0, 0, f.from_i64(1));
        c.push(0, 0, f.from_i64(-1));
        assert!(c.is_zero(&f));
        assert_eq!(c.rank(&f), 0);
    }

    proptest! {
        #[test]
        fn dense_and_sparse_rank_agree(rows in 0usize..8, cols in 0usize..8,
                                       vals in prop::collection::vec(-2i64..3, 64)) {
            let f = PrimeField::new(7).unwrap();
            let mut m = SparseMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.push(r, c, f.from_i64(vals[r * 8 + c]));
                }
            }
            let rank = m.dense_rank(&f);
            prop_assert_eq!(rank, m.sparse_rank(&f));
            prop_assert!(rank <= rows.min(cols));
        }
    }
}
