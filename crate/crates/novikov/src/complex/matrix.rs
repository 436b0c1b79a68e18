//! Sparse 1-based matrices over Z((t)) and the Morse-index partition of
//! their columns.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::Scalar;

/// Morse index of every column, non-decreasing in column order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexPartition {
    index_of: Vec<u8>,
}

impl IndexPartition {
    pub fn new(index_of: Vec<u8>) -> Result<Self> {
        if let Some(pos) = index_of.iter().position(|&k| k > 2) {
            return Err(Error::Structure(format!(
                "index {} of column {} is not in {{0,1,2}}",
                index_of[pos],
                pos + 1
            )));
        }
        if let Some(pos) = index_of.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Structure(format!(
                "indices decrease between columns {} and {}",
                pos + 1,
                pos + 2
            )));
        }
        Ok(Self { index_of })
    }

    /// Partition with the given number of generators of index 0, 1, 2.
    pub fn from_counts(n0: usize, n1: usize, n2: usize) -> Self {
        let mut v = vec![0u8; n0];
        v.extend(std::iter::repeat_n(1, n1));
        v.extend(std::iter::repeat_n(2, n2));
        Self { index_of: v }
    }

    pub fn m(&self) -> usize {
        self.index_of.len()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.index_of
    }

    /// Morse index of column `j` (1-based).
    pub fn index(&self, j: usize) -> u8 {
        self.index_of[j - 1]
    }

    /// 1-based column range of index-`k` generators (`J_k`).
    pub fn columns_of(&self, k: u8) -> Range<usize> {
        let start = self.index_of.iter().take_while(|&&x| x < k).count();
        let len = self.index_of.iter().filter(|&&x| x == k).count();
        start + 1..start + 1 + len
    }

    pub fn count(&self, k: u8) -> usize {
        self.columns_of(k).len()
    }

    /// κ: first column carrying the same index as column `j`.
    pub fn kappa(&self, j: usize) -> usize {
        self.columns_of(self.index(j)).start
    }
}

/// Sparse `m × m` matrix over Z((t)) with 1-based `(row, col)` keys; zero
/// entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NovikovMatrix {
    m: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl NovikovMatrix {
    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut id = Self::zeros(m);
        for i in 1..=m {
            id.set(i, i, Scalar::one());
        }
        id
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.entries.get(&(i, j))
    }

    /// Entry value, zero when absent.
    pub fn value(&self, i: usize, j: usize) -> Scalar {
        self.get(i, j).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.entries.contains_key(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(
            (1..=self.m).contains(&i) && (1..=self.m).contains(&j),
            "entry ({i},{j}) outside {m}×{m}",
            m = self.m
        );
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries of row `i`, by increasing column.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), v)| (j, v))
    }

    /// Nonzero entries of column `j`, by increasing row.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries
            .iter()
            .filter(move |(&(_, c), _)| c == j)
            .map(|(&(i, _), v)| (i, v))
    }

    pub fn row_is_null(&self, i: usize) -> bool {
        self.row(i).next().is_none()
    }

    pub fn column_is_null(&self, j: usize) -> bool {
        self.column(j).next().is_none()
    }

    pub fn is_strictly_upper(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i < j)
    }

    /// Exact sparse product.
    pub fn mul(&self, rhs: &NovikovMatrix) -> NovikovMatrix {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(k, j), v) in &rhs.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let slot = acc.entry((i, j)).or_insert_with(Scalar::zero);
                    *slot = &*slot + &(a * b);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        NovikovMatrix {
            m: self.m,
            entries: acc,
        }
    }

    pub fn squares_to_zero(&self) -> bool {
        self.mul(self).is_zero()
    }

    /// Column `dst` += `c` · column `src`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Scalar) {
        let src_col: Vec<(usize, Scalar)> = self.column(src).map(|(i, v)| (i, v.clone())).collect();
        for (i, v) in src_col {
            let nv = self.value(i, dst) + c * &v;
            self.set(i, dst, nv);
        }
    }

    /// Row `dst` += `c` · row `src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Scalar) {
        let src_row: Vec<(usize, Scalar)> = self.row(src).map(|(j, v)| (j, v.clone())).collect();
        for (j, v) in src_row {
            let nv = self.value(dst, j) + c * &v;
            self.set(dst, j, nv);
        }
    }

    /// Inverse of a unit upper-triangular matrix by back substitution.
    pub fn unit_upper_inverse(&self) -> Result<NovikovMatrix> {
        for i in 1..=self.m {
            if !self.value(i, i).numerator().is_one() || !self.value(i, i).is_polynomial() {
                return Err(Error::InternalInvariantViolation(format!(
                    "diagonal entry ({i},{i}) of a unipotent matrix is not 1"
                )));
            }
        }
        if self.entries.keys().any(|&(i, j)| i > j) {
            return Err(Error::InternalInvariantViolation(
                "matrix is not upper triangular".into(),
            ));
        }
        // X = U⁻¹ column by column: X_{ij} = −Σ_{i<k≤j} U_{ik} X_{kj}
        let mut inv = NovikovMatrix::identity(self.m);
        for j in 1..=self.m {
            for i in (1..j).rev() {
                let mut s = Scalar::zero();
                for (k, u) in self.row(i) {
                    if k > i && k <= j {
                        if let Some(x) = inv.get(k, j) {
                            s = s + u * x;
                        }
                    }
                }
                inv.set(i, j, -s);
            }
        }
        Ok(inv)
    }

    /// Submatrix on the given 1-based indices, renumbered `1..=keep.len()`.
    pub fn submatrix(&self, keep: &[usize]) -> NovikovMatrix {
        let pos: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(n, &x)| (x, n + 1)).collect();
        let mut out = NovikovMatrix::zeros(keep.len());
        for (&(i, j), v) in &self.entries {
            if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
                out.set(a, b, v.clone());
            }
        }
        out
    }

    /// Copy keeping only entries with row in `rows` and column in `cols`.
    pub fn restrict(&self, rows: Range<usize>, cols: Range<usize>) -> NovikovMatrix {
        let mut out = NovikovMatrix::zeros(self.m);
        for (&(i, j), v) in &self.entries {
            if rows.contains(&i) && cols.contains(&j) {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    /// Entry-wise map.
    pub fn map<F: FnMut(usize, usize, &Scalar) -> Scalar>(&self, mut f: F) -> NovikovMatrix {
        let mut out = NovikovMatrix::zeros(self.m);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, f(i, j, v));
        }
        out
    }
}
