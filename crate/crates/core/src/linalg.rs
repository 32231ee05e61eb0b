//! Exact linear algebra over small prime fields.
//!
//! Entries are stored as `u8` residues; every matrix carries its field so
//! mixed-characteristic arithmetic is caught at the call site.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `F_p`, always reduced into `[0, p)`.
pub type FieldElem = u8;

/// The prime field `F_p`, `p ≤ 31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u8,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        let prime = (2..=31).contains(&p) && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field { p: p as u8 })
    }

    pub fn two() -> Self {
        Field { p: 2 }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> FieldElem {
        x.rem_euclid(self.p as i64) as u8
    }

    #[inline]
    pub fn add(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a as u16 + b as u16;
        (s % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a as u16 + self.p as u16 - b as u16;
        (s % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: FieldElem) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: FieldElem) -> FieldElem {
        assert!(a != 0, "zero has no inverse");
        let mut r = 1u8;
        for _ in 0..self.p - 2 {
            r = self.mul(r, a);
        }
        r
    }

    /// All field elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = FieldElem> {
        0..self.p
    }
}

impl TryFrom<u32> for Field {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p as u32
    }
}

/// Dense row-major matrix over `F_p`. Zero-sized shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: Field, n: usize, c: FieldElem) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Builds a matrix from raw data, reducing every entry mod p.
    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data: data.into_iter().map(|x| field.reduce(x)).collect(),
        })
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(field: Field, rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        let data = rows.iter().flatten().copied().collect();
        Matrix::from_data(field, rows.len(), cols, data)
    }

    #[inline]
    pub fn field(&self) -> Field {
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[FieldElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrices over different fields");
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.field.p as u32;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u32; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u32;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u32;
                }
            }
            for (c, x) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (x % p) as u8;
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElem) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Matrix, c: FieldElem) {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape());
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p as u32;
        (0..self.rows)
            .map(|r| {
                let s: u32 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.rows, other.rows, "hstack height mismatch");
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// Columns `start..start+width` as a new matrix.
    pub fn col_block(&self, start: usize, width: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, width);
        for r in 0..self.rows {
            out.data[r * width..(r + 1) * width]
                .copy_from_slice(&self.data[r * self.cols + start..r * self.cols + start + width]);
        }
        out
    }

    /// Rows `start..start+height` as a new matrix.
    pub fn row_block(&self, start: usize, height: usize) -> Matrix {
        Matrix {
            field: self.field,
            rows: height,
            cols: self.cols,
            data: self.data[start * self.cols..(start + height) * self.cols].to_vec(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    m.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(m.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    m.data[r * cols + k] = f.mul(m.data[r * cols + k], inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for k in c..cols {
                    let v = m.data[r * cols + k];
                    if v != 0 {
                        m.data[i * cols + k] = f.add(m.data[i * cols + k], f.mul(neg, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n)).rref();
        if aug.pivots.len() < n || aug.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.matrix.col_block(n, n))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Basis of `{x : A x = 0}` as the rows of the returned matrix.
    ///
    /// One vector per free column, with a 1 in that column; the result is
    /// already in reduced row echelon form up to row order.
    pub fn nullspace(&self) -> Matrix {
        let rr = self.rref();
        let cols = self.cols;
        let f = self.field;
        let mut is_pivot = vec![false; cols];
        for &c in &rr.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(f, free.len(), cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * cols + fc] = 1;
            for (r, &pc) in rr.pivots.iter().enumerate() {
                out.data[k * cols + pc] = f.neg(rr.matrix.get(r, fc));
            }
        }
        out
    }

    /// A particular solution of `A x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        let col = Matrix { field: self.field, rows: self.rows, cols: 1, data: b.to_vec() };
        let rr = self.hstack(&col).rref();
        if rr.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in rr.pivots.iter().enumerate() {
            x[pc] = rr.matrix.get(r, self.cols);
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F{}; {}x{}]{:?}", self.field.p, self.rows, self.cols, self.to_rows())
    }
}

/// `rref` as a free function.
pub fn rref(a: &Matrix) -> (Matrix, usize) {
    let r = a.rref();
    (r.matrix, r.rank)
}

/// `nullspace_basis` as a free function.
pub fn nullspace_basis(a: &Matrix) -> Matrix {
    a.nullspace()
}

/// A linear subspace of `F_p^n`, canonically represented by its RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `generators`.
    pub fn span(generators: &Matrix) -> Subspace {
        let rr = generators.rref();
        let basis = rr.matrix.row_block(0, rr.rank);
        Subspace { ambient: generators.cols(), basis, pivots: rr.pivots }
    }

    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace { ambient: n, basis: Matrix::zeros(field, 0, n), pivots: vec![] }
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        Subspace { ambient: n, basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn from_vectors(field: Field, n: usize, vectors: &[Vec<FieldElem>]) -> Subspace {
        let mut data = Vec::with_capacity(vectors.len() * n);
        for v in vectors {
            assert_eq!(v.len(), n);
            data.extend(v.iter().map(|&x| x as i64));
        }
        Subspace::span(&Matrix::from_data(field, vectors.len(), n, data).expect("shape"))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn field(&self) -> Field {
        self.basis.field()
    }
    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let f = self.field();
        let coords: Vec<FieldElem> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        for (r, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, x) in w.iter_mut().enumerate() {
                let b = self.basis.get(r, k);
                if b != 0 {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[FieldElem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok((0..other.dim()).all(|r| self.contains_vector(other.basis.row(r))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(&self.basis.nullspace())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Reduces `v` modulo the subspace and returns the coordinates of the
    /// class in the standard complement (the non-pivot coordinates).
    pub fn quotient_coordinates(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for (k, x) in w.iter_mut().enumerate() {
                let b = self.basis.get(r, k);
                if b != 0 {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&k| !is_pivot[k]).map(|k| w[k]).collect()
    }

    /// Matrix of the quotient map `F^n → F^n / U` in the standard complement basis.
    pub fn quotient_map(&self) -> Matrix {
        let f = self.field();
        let n = self.ambient;
        let q = n - self.dim();
        let mut out = Matrix::zeros(f, q, n);
        let mut e = vec![0; n];
        for j in 0..n {
            e[j] = 1;
            let col = self.quotient_coordinates(&e);
            for (i, &x) in col.iter().enumerate() {
                out.set(i, j, x);
            }
            e[j] = 0;
        }
        out
    }

    /// Image of the subspace under `a` (a `m × n` matrix acting on columns).
    pub fn image_under(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.cols(), self.ambient);
        // rows of (a · Bᵀ)ᵀ = B · aᵀ
        Subspace::span(&self.basis.mul(&a.transpose()))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F^{}, {:?})", self.ambient, self.basis.to_rows())
    }
}

/// Number of `k`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (p as u128).pow((n - i) as u32) - 1;
        den *= (p as u128).pow((i + 1) as u32) - 1;
    }
    (num / den).min(u64::MAX as u128) as u64
}

/// Total number of subspaces of `F_p^n`.
pub fn subspace_count(n: usize, p: u64) -> u64 {
    (0..=n).map(|k| gaussian_binomial(n, k, p)).fold(0u64, |a, b| a.saturating_add(b))
}

/// Every subspace of `F_p^n` in canonical form, ordered by dimension and
/// then by pivot pattern.
pub fn enumerate_subspaces(n: usize, field: Field, budget: u64) -> Result<Vec<Subspace>> {
    let total = subspace_count(n, field.p() as u64);
    if total > budget {
        return Err(Error::Budget { what: format!("subspaces of F_{}^{n}", field.p()), needed: total, cap: budget });
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free slots: row r, column c > pivots[r], c not a pivot
            let mut free = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..n {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let p = field.p() as usize;
            let count = p.pow(free.len() as u32);
            for code in 0..count {
                let mut m = Matrix::zeros(field, k, n);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, 1);
                }
                let mut x = code;
                for &(r, c) in &free {
                    m.set(r, c, (x % p) as u8);
                    x /= p;
                }
                out.push(Subspace { ambient: n, basis: m, pivots: pivots.clone() });
            }
        }
    }
    Ok(out)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Free-function forms of the subspace lattice operations.
pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.sum(v)
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.intersect(v)
}

pub fn subspace_contains(u: &Subspace, v: &Subspace) -> Result<bool> {
    u.contains(v)
}
