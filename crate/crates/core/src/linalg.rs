//! Dense linear algebra over a prime field F_p.
//!
//! Everything downstream (Hom spaces, tensor quotients, resolutions) is
//! reduced to the handful of routines here. Elimination is deterministic:
//! pivots are chosen leftmost column first, topmost available row first, so
//! every basis produced from a reduced echelon form is reproducible.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

/// Largest modulus accepted. Products of two reduced entries fit in a `u32`.
pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

/// The prime field F_p. Primality is checked where rings are loaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        debug_assert!((2..MAX_PRIME).contains(&p));
        PrimeField { p }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }
}

/// An element of F_p together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub value: u32,
    pub field: PrimeField,
}

impl Scalar {
    pub fn new(field: PrimeField, value: i64) -> Self {
        Scalar {
            value: field.reduce(value),
            field,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Row-major dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over F_{}",
            self.rows, self.cols, self.field.p
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = u32;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &u32 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u32 {
        &mut self.data[r * self.cols + c]
    }
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = field.reduce(x);
            }
        }
        m
    }

    /// Builds a matrix from already-reduced row-major data.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < field.p));
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given (reduced) vectors of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c) % field.p;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "modulus mismatch in product");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.field.p as u64;
        let mut acc = vec![0u64; other.cols];
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * b as u64;
                }
                // keep the accumulator far from overflow
                if k % 4096 == 4095 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for (c, &x) in acc.iter().enumerate() {
                out[(r, c)] = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(
            self.cols,
            v.len(),
            "shape mismatch in matrix-vector product"
        );
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = f.add(*a, f.mul(s, b));
            }
        }
    }

    /// Linear combination `sum coeffs[i] * mats[i]`; `shape` is used when the list is empty.
    pub fn combination(
        field: PrimeField,
        shape: (usize, usize),
        coeffs: &[u32],
        mats: &[Matrix],
    ) -> Matrix {
        assert_eq!(coeffs.len(), mats.len());
        let mut out = Matrix::zeros(field, shape.0, shape.1);
        for (&c, m) in coeffs.iter().zip(mats) {
            out.add_scaled(c, m);
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)]
            } else {
                other[(r, c - self.cols)]
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_data(self.field, self.rows + other.rows, self.cols, data)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack_all(field: PrimeField, cols: usize, parts: &[Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
        }
        Matrix::from_data(field, rows, cols, data)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self[(r0 + r, c0 + c)])
    }

    /// Kronecker product. Basis ordering: `(i, k) -> i * dim2 + k`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::ModulusMismatch(self.field.p, other.field.p));
        }
        let f = self.field;
        let (p, q) = (other.rows, other.cols);
        let mut out = Matrix::zeros(f, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out[(i * p + k, j * q + l)] = f.mul(a, other[(k, l)]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form with leftmost-pivot, topmost-row elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        Rref {
            rank: pivots.len(),
            pivots,
            reduced: m,
        }
    }

    pub fn rank(&self) -> usize {
        // Fewer rows than columns eliminates faster on the transpose.
        if self.rows > self.cols {
            let mut t = self.transpose();
            t.eliminate(false).len()
        } else {
            self.clone().eliminate(false).len()
        }
    }

    /// Gaussian elimination in place; returns the pivot columns. With
    /// `reduce_above` the result is fully reduced, otherwise only echelon.
    fn eliminate(&mut self, reduce_above: bool) -> Vec<usize> {
        let f = self.field;
        let p = f.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut support: Vec<(usize, u32)> = Vec::new();
        let mut next = 0;
        for col in 0..cols {
            if next == self.rows {
                break;
            }
            let Some(found) = (next..self.rows).find(|&r| self[(r, col)] != 0) else {
                continue;
            };
            if found != next {
                for c in col..cols {
                    self.data.swap(found * cols + c, next * cols + c);
                }
            }
            let inv = f.inv(self[(next, col)]);
            if inv != 1 {
                for c in col..cols {
                    let x = &mut self.data[next * cols + c];
                    *x = f.mul(*x, inv);
                }
            }
            support.clear();
            support.extend(
                (col..cols)
                    .map(|c| (c, self.data[next * cols + c]))
                    .filter(|&(_, x)| x != 0),
            );
            let start = if reduce_above { 0 } else { next + 1 };
            for r in start..self.rows {
                if r == next {
                    continue;
                }
                let factor = self.data[r * cols + col];
                if factor == 0 {
                    continue;
                }
                let neg = p - factor as u64;
                let base = r * cols;
                for &(c, x) in &support {
                    let slot = &mut self.data[base + c];
                    *slot = ((*slot as u64 + neg * x as u64) % p) as u32;
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Columns form a basis of the null space, one per free column of the rref.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        kernel_from_rref(&reduced, &pivots)
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced[(k, self.cols)];
        }
        Some(x)
    }
}

/// Null-space basis read off a reduced echelon form.
pub fn kernel_from_rref(reduced: &Matrix, pivots: &[usize]) -> Matrix {
    let f = reduced.field;
    let n = reduced.cols;
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut k = Matrix::zeros(f, n, free.len());
    for (j, &fc) in free.iter().enumerate() {
        k[(fc, j)] = 1 % f.p;
        for (r, &pc) in pivots.iter().enumerate() {
            k[(pc, j)] = f.neg(reduced[(r, fc)]);
        }
    }
    k
}

/// Free (non-pivot) columns of an echelon form with `n` columns.
pub fn free_columns(pivots: &[usize], n: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..n).filter(|&c| !is_pivot[c]).collect()
}

/// A linear subspace of F_p^n stored as the rows of a reduced echelon matrix.
///
/// Coordinates of a member `v` with respect to the stored basis are the
/// entries of `v` at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix) -> Self {
        let Rref {
            reduced,
            rank,
            pivots,
        } = m.rref();
        let basis = reduced.block(0, 0, rank, m.cols());
        Subspace { basis, pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Subspace::row_span(&m.transpose())
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient);
            data.extend_from_slice(v);
        }
        Subspace::row_span(&Matrix::from_data(field, vectors.len(), ambient, data))
    }

    /// Null space of `m` as a subspace of its column space.
    pub fn kernel(m: &Matrix) -> Self {
        Subspace::column_span(&m.kernel_basis())
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a `dim x ambient` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vector(&self, k: usize) -> Vec<u32> {
        self.basis.row(k).to_vec()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|k| self.basis_vector(k)).collect()
    }

    /// Positions not used as pivots; the standard vectors there span a complement.
    pub fn complement_positions(&self) -> Vec<usize> {
        free_columns(&self.pivots, self.ambient())
    }

    /// Subtracts the projection onto the subspace; the result vanishes at every pivot.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut v = v.to_vec();
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(self.basis.row(k)) {
                if b != 0 {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Linear combination of the basis vectors.
    pub fn element(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let f = self.field();
        let mut v = vec![0; self.ambient()];
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(self.basis.row(k)) {
                *x = f.add(*x, f.mul(c, b));
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|k| other.contains(self.basis.row(k)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::row_span(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x in both iff x = a.B1 = b.B2, i.e. (a, -b) in the left kernel of [B1; B2].
        let f = self.field();
        let stacked = self.basis.vstack(&other.basis);
        let k = stacked.transpose().kernel_basis();
        let mut vecs = Vec::with_capacity(k.cols());
        for j in 0..k.cols() {
            let a: Vec<u32> = (0..self.dim()).map(|i| k[(i, j)]).collect();
            vecs.push(self.element(&a));
        }
        Subspace::span(f, self.ambient(), &vecs)
    }
}

/// Incrementally built echelon basis used for greedy independent selection.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    rows: Vec<(Vec<u32>, usize)>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let mut e = Echelon::new(s.field());
        for k in 0..s.dim() {
            e.rows.push((s.basis_vector(k), s.pivots()[k]));
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, pc) in &self.rows {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[pc]);
        for x in v.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push((v, pc));
        true
    }
}
