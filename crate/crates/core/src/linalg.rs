//! Dense exact linear algebra: ranks, kernels and echelon forms over any [`Field`].

use crate::algebra::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &K, cols: usize, rows: Vec<Vec<K::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[K::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// In-place reduced row echelon form restricted to the first `limit` columns as
    /// pivot candidates. Returns the pivot columns in order.
    pub fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..limit.min(cols) {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| !f.is_zero(self.get(r, c))) else {
                continue;
            };
            if sel != prow {
                for k in 0..cols {
                    self.data.swap(sel * cols + k, prow * cols + k);
                }
            }
            let inv = f.inv(self.get(prow, c)).expect("nonzero pivot");
            for k in c..cols {
                let v = f.mul(self.get(prow, k), &inv);
                self.set(prow, k, v);
            }
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let factor = self.get(r, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for k in c..cols {
                    let sub = f.mul(&factor, self.get(prow, k));
                    let v = f.sub(self.get(r, k), &sub);
                    self.data[r * cols + k] = v;
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        self.clone().rref().len()
    }

    /// Basis of `{ x : M x = 0 }`.
    pub fn right_kernel(&self) -> Vec<Vec<K::Elem>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{ y : y M = 0 }`, i.e. linear relations among the rows.
    pub fn left_kernel(&self) -> Vec<Vec<K::Elem>> {
        let f = &self.field;
        let n = self.rows;
        let width = self.cols + n;
        let mut aug = Matrix::zeros(f, n, width);
        for r in 0..n {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols + r, f.one());
        }
        let pivots = aug.rref_limited(self.cols);
        (pivots.len()..n)
            .map(|r| aug.row(r)[self.cols..].to_vec())
            .collect()
    }

    /// A basis of the row space in reduced echelon form.
    pub fn row_basis(&self) -> Vec<Vec<K::Elem>> {
        let mut m = self.clone();
        let k = m.rref().len();
        (0..k).map(|r| m.row(r).to_vec()).collect()
    }
}
