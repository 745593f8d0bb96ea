use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn scalar(field: Field, n: usize, s: &Scalar) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    /// Builds from row vectors; every row must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, field, data }
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, field, data: entries.iter().map(|&x| field.from_i64(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in difference");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Stacks `rhs` below `self`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, field: self.field, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(row + i, col + j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows(self.field, self.cols, &rows)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = idx.iter().map(|&j| self.column(j)).collect();
        Matrix::from_columns(self.field, self.rows, &cols)
    }

    pub fn pow(&self, mut exp: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(self.field.zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let r = rref(&aug);
        if r.pivots.iter().take_while(|&&p| p < n).count() < n {
            return None;
        }
        Some(r.matrix.block(0, n, n, n))
    }

    /// True if some power of the matrix vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows).is_zero()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination. The pivot in each column is the first nonzero
/// entry at or below the current row, so the output is a function of the input.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].inverse().expect("pivot is nonzero");
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let t = &factor * &a[(r, j)];
                a[(i, j)] = &a[(i, j)] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, rank: pivots.len(), pivots }
}

/// Basis of the null space, one vector per free column, in column order.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field;
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (row, &pc) in r.pivots.iter().enumerate() {
            v[pc] = -&r.matrix[(row, free)];
        }
        make_primitive(&mut v);
        basis.push(v);
    }
    basis
}

/// Over the rationals, rescales a vector to coprime integer entries with the
/// same sign pattern; keeps entry sizes down in later products.
pub fn make_primitive(v: &mut [Scalar]) {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for x in v.iter() {
        let Some(r) = x.as_rational() else { return };
        den = den.lcm(r.denom());
        num = num.gcd(r.numer());
    }
    if num.is_zero() {
        return;
    }
    let factor = BigRational::new(den, num);
    if factor.is_one() {
        return;
    }
    let factor = Scalar::Rational(factor);
    for x in v.iter_mut() {
        *x = &*x * &factor;
    }
}

/// Some `x` with `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows, "right-hand side has wrong length");
    let field = m.field;
    let rhs = Matrix::from_columns(field, m.rows, &[b.to_vec()]);
    let r = rref(&m.hstack(&rhs));
    if r.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![field.zero(); m.cols];
    for (row, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.matrix[(row, m.cols)].clone();
    }
    Some(x)
}

/// Rank of a family of vectors of common length `dim`.
pub fn rank_of(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    rref(&Matrix::from_rows(field, dim, vectors)).rank
}

/// `ambient_dim - rank(sub)`.
pub fn quotient_dim(field: Field, ambient_dim: usize, sub: &[Vec<Scalar>]) -> usize {
    ambient_dim - rank_of(field, ambient_dim, sub)
}

/// A maximal linearly independent subfamily, by first occurrence.
pub fn independent_subset(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // columns = vectors; pivot columns are the first-occurrence independent ones
    let m = Matrix::from_columns(field, dim, vectors);
    rref(&m).pivots
}

/// Quotient of `field^dim` by the span of some vectors: a complement made of
/// standard basis vectors plus the projection onto it.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub ambient: usize,
    /// Standard coordinates that survive in the quotient.
    pub complement: Vec<usize>,
    /// `complement.len() x ambient` projection matrix.
    pub projection: Matrix,
}

impl QuotientSpace {
    pub fn new(field: Field, ambient: usize, sub: &[Vec<Scalar>]) -> Self {
        if sub.is_empty() {
            let complement: Vec<usize> = (0..ambient).collect();
            return QuotientSpace { ambient, complement, projection: Matrix::identity(field, ambient) };
        }
        let r = rref(&Matrix::from_rows(field, ambient, sub));
        let mut is_pivot = vec![false; ambient];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        // x - sum_i x[p_i] R_i, read on the complement coordinates
        let mut projection = Matrix::zeros(field, complement.len(), ambient);
        for (k, &c) in complement.iter().enumerate() {
            projection[(k, c)] = field.one();
        }
        for (row, &p) in r.pivots.iter().enumerate() {
            for (k, &c) in complement.iter().enumerate() {
                let e = &r.matrix[(row, c)];
                if !e.is_zero() {
                    projection[(k, p)] = -e;
                }
            }
        }
        QuotientSpace { ambient, complement, projection }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }

    /// Section of the projection: complement coordinates to ambient vectors.
    pub fn section(&self, field: Field) -> Matrix {
        let mut s = Matrix::zeros(field, self.ambient, self.complement.len());
        for (k, &c) in self.complement.iter().enumerate() {
            s[(c, k)] = field.one();
        }
        s
    }
}
