//! Compressed-row sparse complex matrices.
//!
//! Entries are kept sorted by `(row, col)` and exact zeros are never
//! stored, so structural zeros survive products.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<Complex64>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, indptr: vec![0; rows + 1], indices: vec![], data: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        Self::from_triplets(diag.len(), diag.len(), diag.iter().enumerate().map(|(k, &v)| (k, k, v)))
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut t: Vec<_> = triplets.into_iter().collect();
        t.sort_by_key(|a| (a.0, a.1));
        let mut indptr = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(t.len());
        let mut data: Vec<Complex64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            if last == Some((r, c)) {
                *data.last_mut().unwrap() += v;
            } else {
                indptr[r + 1] += 1;
                indices.push(c);
                data.push(v);
                last = Some((r, c));
            }
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        Self { rows, cols, indptr, indices, data }.pruned()
    }

    fn pruned(self) -> Self {
        if self.data.iter().all(|v| *v != ZERO) {
            return self;
        }
        let triplets: Vec<_> = self.iter().filter(|t| t.2 != ZERO).collect();
        let mut indptr = vec![0usize; self.rows + 1];
        for &(r, _, _) in &triplets {
            indptr[r + 1] += 1;
        }
        for r in 0..self.rows {
            indptr[r + 1] += indptr[r];
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            indptr,
            indices: triplets.iter().map(|t| t.1).collect(),
            data: triplets.iter().map(|t| t.2).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let lo = self.indptr[r];
        let hi = self.indptr[r + 1];
        match self.indices[lo..hi].binary_search(&c) {
            Ok(k) => self.data[lo + k],
            Err(_) => ZERO,
        }
    }

    /// Stored entries in `(row, col)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.data[k]))
        })
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        if alpha == ZERO {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= alpha);
        out.pruned()
    }

    /// `alpha * self + beta * other`.
    pub fn axpby(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        Self::from_triplets(
            self.rows,
            self.cols,
            self.iter()
                .map(|(r, c, v)| (r, c, alpha * v))
                .chain(other.iter().map(|(r, c, v)| (r, c, beta * v))),
        )
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut acc = vec![ZERO; other.cols];
        let mut touched = vec![false; other.cols];
        let mut cols_hit = Vec::new();
        let mut indptr = vec![0usize; self.rows + 1];
        let mut indices = Vec::new();
        let mut data = Vec::new();
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let (mid, a) = (self.indices[k], self.data[k]);
                for kk in other.indptr[mid]..other.indptr[mid + 1] {
                    let c = other.indices[kk];
                    if !touched[c] {
                        touched[c] = true;
                        cols_hit.push(c);
                    }
                    acc[c] += a * other.data[kk];
                }
            }
            cols_hit.sort_unstable();
            for &c in &cols_hit {
                if acc[c] != ZERO {
                    indices.push(c);
                    data.push(acc[c]);
                }
                acc[c] = ZERO;
                touched[c] = false;
            }
            cols_hit.clear();
            indptr[r + 1] = indices.len();
        }
        Self { rows: self.rows, cols: other.cols, indptr, indices, data }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.iter().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(r, c, _)| r == c)
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k)).collect()
    }

    /// Largest entry modulus over columns `< col_limit`.
    pub fn max_abs_in_cols(&self, col_limit: usize) -> f64 {
        self.iter().filter(|t| t.1 < col_limit).map(|t| t.2.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_in_cols(self.cols)
    }

    /// Leading `rows x cols` block.
    pub fn leading_block(&self, rows: usize, cols: usize) -> Self {
        Self::from_triplets(rows, cols, self.iter().filter(|t| t.0 < rows && t.1 < cols))
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut out = vec![vec![ZERO; self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v;
        }
        out
    }
}
