//! Dense exact linear algebra over [`Scalar`].
//!
//! Elimination pivots on the entry of smallest height in the current column,
//! which keeps rational coefficient growth in check on the sparse, small-entry
//! matrices produced by differentials.

use crate::field::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    /// Build from column vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.data
            .iter()
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Kronecker product; `self` indexes the outer blocks.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.data[i][j].is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[i * other.rows + k][j * other.cols + l] = &self.data[i][j] * &other.data[k][l];
                    }
                }
            }
        }
        out
    }

    /// The block matrix `[[a, b], [c, d]]` of equally sized square blocks.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        let n = a.rows;
        let mut out = Matrix::zeros(2 * n, 2 * n);
        for (bi, bj, m) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
            assert_eq!((m.rows, m.cols), (n, n), "blocks must be square and equal");
            for i in 0..n {
                for j in 0..n {
                    out.data[bi * n + i][bj * n + j] = m.data[i][j].clone();
                }
            }
        }
        out
    }

    /// Block `(bi, bj)` of a matrix split into 2x2 equal square blocks.
    pub fn sub_block(&self, bi: usize, bj: usize) -> Matrix {
        let n = self.rows / 2;
        Matrix::from_rows((0..n).map(|i| self.data[bi * n + i][bj * n..bj * n + n].to_vec()).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.add(&self.transpose()).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Scalar::is_zero))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| (a[i][c].height(), i));
            let Some(p) = best else { continue };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("pivot is nonzero");
            for x in a[r].iter_mut().skip(c) {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &(&f * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: a }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel `{v : A v = 0}`, one vector per free
    /// column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }
}

/// An incrementally built echelon basis of a subspace, used to test
/// independence of vectors one at a time.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new() -> EchelonBasis {
        EchelonBasis::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Add `v`; returns false (and leaves the basis unchanged) if `v` is
    /// already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::identity(3);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let m = Matrix::zeros(2, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 3);
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel(), vec![ints(&[-2, 1])]);
    }

    #[test]
    fn kron_and_blocks() {
        let x = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let z = Matrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        let xz = x.kron(&z);
        assert_eq!(xz, Matrix::from_int_rows(&[&[0, 0, 1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, -1, 0, 0]]));
        let zero = Matrix::zeros(2, 2);
        assert_eq!(Matrix::block(&zero, &z, &z, &zero), xz);
        assert_eq!(xz.sub_block(1, 0), z);
        assert!(xz.is_symmetric());
        let e = x.mul(&z);
        assert!(e.is_antisymmetric() && !e.is_symmetric());
        assert_eq!(e.transpose(), e.scale(&Scalar::from_int(-1)));
        assert!(e.add(&e.transpose()).is_zero() && e.sub(&e).is_zero());
    }

    #[test]
    fn echelon_basis_detects_dependence() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&ints(&[1, 1, 0])));
        assert!(b.insert(&ints(&[0, 1, 1])));
        assert!(!b.insert(&ints(&[1, 2, 1])));
        assert!(b.contains(&ints(&[2, 0, -2])));
        assert!(b.insert(&ints(&[0, 0, 5])));
        assert_eq!(b.dim(), 3);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
                .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|r| ints(&r)).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
            }
            let mut span = EchelonBasis::new();
            for v in &k {
                prop_assert!(span.insert(v));
            }
        }

        #[test]
        fn rank_of_transpose(m in arb_matrix()) {
            let t = Matrix::from_columns(m.cols(), &(0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>());
            prop_assert_eq!(m.rank(), t.rank());
        }
    }
}
