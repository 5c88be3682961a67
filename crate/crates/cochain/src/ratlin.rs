//! Exact rational linear algebra.
//!
//! Everything downstream (root systems, Lie algebra cohomology, spectral
//! sequences) reduces to ranks and kernels of small dense matrices over the
//! rationals, so exactness is mandatory and performance is an afterthought.
//! Matrices are dense and row-major; entries are arbitrary-precision
//! rationals kept in lowest terms by `num`.

use num::{BigRational, Signed, Zero};
use thiserror::Error;

/// Ground field element: arbitrary-precision rational, always normalized.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatlinError {
    #[error("not a two-step complex: {0}")]
    ComplexViolation(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Result of reduced row echelon form: the canonical matrix, the pivot
/// columns in increasing order, and the rank.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack height mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form by Gauss-Jordan elimination with exact
    /// arithmetic. The result is the unique canonical form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(r) = found else { continue };
            m.swap_rows(pivot_row, r);
            let inv = m[(pivot_row, col)].recip();
            for j in col..m.cols {
                let v = &m[(pivot_row, j)] * &inv;
                m[(pivot_row, j)] = v;
            }
            for r2 in 0..m.rows {
                if r2 != pivot_row && !m[(r2, col)].is_zero() {
                    let factor = m[(r2, col)].clone();
                    for j in col..m.cols {
                        let v = &m[(r2, j)] - &factor * &m[(pivot_row, j)];
                        m[(r2, j)] = v;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel, one vector per free column of the rref.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().peekable();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, col) in pivots.iter().copied().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if piv_iter.peek() == Some(&free) {
                piv_iter.next();
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = rat(1);
            for (col, row) in pivot_of_col.iter().enumerate() {
                if let Some(row) = row {
                    v[col] = -matrix[(*row, free)].clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len(), "solve rhs length mismatch");
        let rhs = RationalMatrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        let aug = self.hstack(&rhs).rref();
        // Inconsistent iff a pivot lands in the rhs column.
        if aug.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, col) in aug.pivots.iter().copied().enumerate() {
            x[col] = aug.matrix[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Determinant by elimination; panics on non-square input.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = rat(1);
        for col in 0..n {
            let Some(r) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if r != col {
                m.swap_rows(col, r);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r2 in col + 1..n {
                if !m[(r2, col)].is_zero() {
                    let factor = &m[(r2, col)] / &pivot;
                    for j in col..n {
                        let v = &m[(r2, j)] - &factor * &m[(col, j)];
                        m[(r2, j)] = v;
                    }
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Dimension of `ker(d_out) / im(d_in)` for a two-step complex
/// `X --d_in--> Y --d_out--> Z`.
///
/// `d_in` is a `dim Y x dim X` matrix and `d_out` a `dim Z x dim Y` one;
/// the composite must vanish, otherwise the input is not a complex.
pub fn cohomology_dim(
    d_in: &RationalMatrix,
    d_out: &RationalMatrix,
) -> Result<usize, RatlinError> {
    if d_out.cols() != d_in.rows() {
        return Err(RatlinError::ComplexViolation(format!(
            "shape mismatch: d_in is {}x{}, d_out is {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(RatlinError::ComplexViolation(
            "d_out . d_in != 0".to_string(),
        ));
    }
    Ok(d_out.nullity() - d_in.rank())
}

/// Canonical basis (rref rows) of the span of the given vectors.
pub fn span_basis(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    assert!(vectors.iter().all(|v| v.len() == dim));
    let r = RationalMatrix::from_rows(vectors.to_vec()).rref();
    (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Vectors from `candidates` extending the span of `base` to the joint span,
/// in input order. Used to pick cohomology representatives: candidates that
/// add rank survive, the rest are discarded.
pub fn complement_basis(
    base: &[Vec<Rational>],
    candidates: &[Vec<Rational>],
    dim: usize,
) -> Vec<Vec<Rational>> {
    let mut acc: Vec<Vec<Rational>> = base.to_vec();
    let mut current = span_basis(&acc, dim).len();
    let mut picked = Vec::new();
    for cand in candidates {
        acc.push(cand.clone());
        let next = span_basis(&acc, dim).len();
        if next > current {
            current = next;
            picked.push(cand.clone());
        } else {
            acc.pop();
        }
    }
    picked
}

/// True if `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational], dim: usize) -> bool {
    let before = span_basis(basis, dim).len();
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    span_basis(&with, dim).len() == before
}

/// Scale a rational vector to integer entries with content 1 and positive
/// leading coefficient. Used for human-readable cohomology certificates.
pub fn normalize_integer_vector(v: &[Rational]) -> Vec<num::BigInt> {
    use num::{BigInt, Integer, One};
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if !gcd.is_zero() {
        for x in &mut ints {
            *x /= &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent rank oracle: fraction-free Bareiss elimination over i128.
    /// Deliberately shares no code with `rref`.
    fn bareiss_rank(rows: &[Vec<i128>]) -> usize {
        if rows.is_empty() || rows[0].is_empty() {
            return 0;
        }
        let mut m: Vec<Vec<i128>> = rows.to_vec();
        let (nr, nc) = (m.len(), m[0].len());
        let mut prev = 1i128;
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..nc {
            if row >= nr {
                break;
            }
            let Some(p) = (row..nr).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, p);
            for r in row + 1..nr {
                for c in col + 1..nc {
                    m[r][c] = (m[r][c] * m[row][col] - m[r][col] * m[row][c]) / prev;
                }
                m[r][col] = 0;
            }
            prev = m[row][col];
            rank += 1;
            row += 1;
        }
        rank
    }

    fn to_i128(m: &RationalMatrix) -> Vec<Vec<i128>> {
        use num::ToPrimitive;
        // Clear denominators row by row; row scaling preserves rank.
        (0..m.rows())
            .map(|i| {
                let mut lcm = num::BigInt::from(1);
                for x in m.row(i) {
                    lcm = num::Integer::lcm(&lcm, x.denom());
                }
                m.row(i)
                    .iter()
                    .map(|x| (x.numer() * &lcm / x.denom()).to_i128().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rref_identity() {
        let m = RationalMatrix::identity(3);
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_zero() {
        let m = RationalMatrix::zeros(2, 2);
        let r = m.rref();
        assert!(r.matrix.is_zero());
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, RationalMatrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let m = RationalMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat(rng.gen_range(-4..5))).collect())
                    .collect(),
            );
            let r1 = m.rref();
            let r2 = r1.matrix.rref();
            assert_eq!(r1.matrix, r2.matrix);
            assert_eq!(r1.pivots, r2.pivots);
        }
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(RationalMatrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_zero_matrix_full() {
        let m = RationalMatrix::zeros(2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_one_row() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn kernel_vectors_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..6);
            let m = RationalMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..4))).collect())
                    .collect(),
            );
            let k = m.kernel_basis();
            assert_eq!(m.rank() + k.len(), cols);
            for v in &k {
                assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn cohomology_zero_maps() {
        // 0 -> Q^n -> 0 has cohomology n.
        let n = 5;
        let d_in = RationalMatrix::zeros(n, 0);
        let d_out = RationalMatrix::zeros(0, n);
        assert_eq!(cohomology_dim(&d_in, &d_out).unwrap(), n);
    }

    #[test]
    fn cohomology_exact_case() {
        // Q --(1,0)--> Q^2 --(0 1)--> Q is exact in the middle.
        let d_in = RationalMatrix::from_i64_rows(&[&[1], &[0]]);
        let d_out = RationalMatrix::from_i64_rows(&[&[0, 1]]);
        assert_eq!(cohomology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn cohomology_rejects_nonzero_composite() {
        let d_in = RationalMatrix::from_i64_rows(&[&[1], &[0]]);
        let d_out = RationalMatrix::from_i64_rows(&[&[1, 0]]);
        assert!(matches!(
            cohomology_dim(&d_in, &d_out),
            Err(RatlinError::ComplexViolation(_))
        ));
    }

    #[test]
    fn cohomology_random_complex_vs_bareiss_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..25 {
            // Random 4 -> 6 -> 3 complex: pick d_out, then force im(d_in)
            // inside ker(d_out) by factoring through the kernel.
            let d_out = RationalMatrix::from_rows(
                (0..3)
                    .map(|_| (0..6).map(|_| rat(rng.gen_range(-3..4))).collect())
                    .collect(),
            );
            let kernel = d_out.kernel_basis();
            let k = kernel.len();
            let coeff = RationalMatrix::from_rows(
                (0..k)
                    .map(|_| (0..4).map(|_| rat(rng.gen_range(-3..4))).collect())
                    .collect(),
            );
            let kernel_mat = RationalMatrix::from_rows(kernel).transpose(); // 6 x k
            let d_in = kernel_mat.mul(&coeff); // 6 x 4
            let got = cohomology_dim(&d_in, &d_out).unwrap();
            let expect =
                (6 - bareiss_rank(&to_i128(&d_out))) - bareiss_rank(&to_i128(&d_in));
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let x = a.solve(&[rat(3), rat(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat(3), rat(6)]);
        assert!(a.solve(&[rat(3), rat(7)]).is_none());
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(RationalMatrix::identity(3).determinant(), rat(1));
        let m = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant(), rat(-1));
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]);
        assert_eq!(m.determinant(), rat(3));
    }

    #[test]
    fn complement_basis_picks_new_directions() {
        let base = vec![vec![rat(1), rat(0), rat(0)]];
        let cands = vec![
            vec![rat(2), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(5)],
        ];
        let picked = complement_basis(&base, &cands, 3);
        assert_eq!(picked.len(), 2);
        assert_eq!(picked[0], vec![rat(0), rat(1), rat(0)]);
        assert_eq!(picked[1], vec![rat(0), rat(0), rat(5)]);
    }

    #[test]
    fn normalize_integer_vector_content_one() {
        use num::BigInt;
        let v = vec![
            Rational::new(BigInt::from(2), BigInt::from(3)),
            Rational::new(BigInt::from(-4), BigInt::from(3)),
        ];
        assert_eq!(
            normalize_integer_vector(&v),
            vec![BigInt::from(1), BigInt::from(-2)]
        );
    }
}
