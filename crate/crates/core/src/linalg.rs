//! Exact integer linear algebra.
//!
//! Matrices hold arbitrary-precision integers. The Smith normal form drives
//! kernels, cokernels and saturation; the row Hermite normal form gives
//! canonical lattice bases so that every reported basis is reproducible.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::domain(alloc::format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Ragged input is rejected.
    pub fn from_rows<I, R, T>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut data = Vec::new();
        let mut nrows = 0;
        let mut ncols = None;
        for row in rows {
            let before = data.len();
            data.extend(row.into_iter().map(Into::into));
            let len = data.len() - before;
            match ncols {
                None => ncols = Some(len),
                Some(c) if c != len => return Err(Error::domain("ragged matrix rows")),
                _ => {}
            }
            nrows += 1;
        }
        Self::new(nrows, ncols.unwrap_or(0), data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::domain("column length does not match row count"));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal_matrix(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
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

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::domain(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        IntMatrix { data, ..*self }
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        IntMatrix { data, ..*self }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * k).collect();
        IntMatrix { data, ..*self }
    }

    /// `self - I`; the matrix must be square.
    pub fn minus_identity(&self) -> IntMatrix {
        assert!(self.is_square());
        self.sub(&Self::identity(self.rows))
    }

    /// Reduces every entry into `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a.mod_floor(modulus)).collect();
        IntMatrix { data, ..*self }
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[IntMatrix]) -> Result<IntMatrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::domain("vstack: column counts differ"));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Ok(IntMatrix { rows, cols, data })
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(rows: usize, blocks: &[IntMatrix]) -> Result<IntMatrix> {
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::domain("hstack: row counts differ"));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out[(i - r0, j - c0)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Exact inverse over the rationals, `None` when singular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self.row(i).iter().cloned().map(BigRational::from_integer).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let delta = &f * &a[col][c];
                        a[r][c] -= delta;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let inv = self
            .rational_inverse()
            .ok_or_else(|| Error::domain("matrix is singular"))?;
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for x in inv.into_iter().flatten() {
            if !x.is_integer() {
                return Err(Error::domain("matrix is not unimodular"));
            }
            data.push(x.to_integer());
        }
        IntMatrix::new(self.rows, self.cols, data)
    }

    /// Solves `self * X = rhs` for an integral `X`; `None` if `self` is
    /// singular or the solution is not integral.
    pub fn solve_integral(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        let inv = self.rational_inverse()?;
        let mut out = IntMatrix::zeros(self.cols, rhs.cols);
        for i in 0..self.cols {
            for j in 0..rhs.cols {
                let mut acc = BigRational::zero();
                for (k, coef) in inv[i].iter().enumerate() {
                    if !coef.is_zero() && !rhs[(k, j)].is_zero() {
                        acc += coef * BigRational::from_integer(rhs[(k, j)].clone());
                    }
                }
                if !acc.is_integer() {
                    return None;
                }
                out[(i, j)] = acc.to_integer();
            }
        }
        Some(out)
    }

    fn row_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = k * &self.data[src * self.cols + c];
            self.data[dst * self.cols + c] += v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = k * &self.data[r * self.cols + src];
            self.data[r * self.cols + dst] += v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -core::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -core::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions do not match")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` in Smith form.
///
/// The inverses of `U` and `V` are tracked alongside them.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct SnfWork {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWork {
    // row_dst += k * row_src
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.row_axpy(dst, src, k);
        self.u.row_axpy(dst, src, k);
        self.u_inv.col_axpy(src, dst, &-k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.col_axpy(dst, src, k);
        self.v.col_axpy(dst, src, k);
        self.v_inv.row_axpy(src, dst, &-k);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form. `D` is unique; `U` and `V` are one admissible choice.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (r, c) = (m.rows(), m.cols());
    let mut w = SnfWork {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = w.min_nonzero(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !w.a[(i, t)].is_zero() {
                    let q = &w.a[(i, t)] / &w.a[(t, t)];
                    w.add_row(i, t, &-q);
                    if !w.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !w.a[(t, j)].is_zero() {
                    let q = &w.a[(t, j)] / &w.a[(t, t)];
                    w.add_col(j, t, &-q);
                    if !w.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // a remainder is now smaller than the pivot; move it in
                let mut best = (t, t);
                for i in t + 1..r {
                    let x = &w.a[(i, t)];
                    if !x.is_zero() && x.abs() < w.a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = &w.a[(t, j)];
                    if !x.is_zero() && x.abs() < w.a[best].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&w.a[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SnfDecomposition {
        u: w.u,
        d: w.a,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Row Hermite normal form of the lattice spanned by `vectors`.
///
/// Returns the nonzero rows in echelon form: positive pivots, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(vectors: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::domain("vector length does not match ambient rank"));
    }
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let n = rows.len();
    let mut r = 0;
    for col in 0..dim {
        if r == n {
            break;
        }
        let mut found = false;
        loop {
            let piv = (r..n)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(piv) = piv else { break };
            found = true;
            rows.swap(r, piv);
            let mut done = true;
            for i in r + 1..n {
                if !rows[i][col].is_zero() {
                    let q = &rows[i][col] / &rows[r][col];
                    axpy(&mut rows, i, r, &-q);
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if found {
            if rows[r][col].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            for i in 0..r {
                let q = rows[i][col].div_floor(&rows[r][col]);
                if !q.is_zero() {
                    axpy(&mut rows, i, r, &-q);
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    Ok(rows)
}

fn axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for c in 0..rows[dst].len() {
        let v = k * &rows[src][c];
        rows[dst][c] += v;
    }
}

/// Finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/t_i` with
/// `t_1 | t_2 | ...` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        AbelianGroupStructure {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    /// Structure of `Z^n / diag(d)`: zero entries and missing entries give
    /// free summands, units disappear.
    pub fn from_diagonal(n: usize, diag: &[BigInt]) -> Self {
        let mut torsion: Vec<BigInt> = diag.iter().map(|d| d.abs()).filter(|d| *d > BigInt::one()).collect();
        torsion.sort();
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        AbelianGroupStructure {
            torsion,
            free_rank: n - nonzero,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group; `None` when infinite.
    pub fn cardinality(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// The torsion list is sorted, each entry divides the next, all `> 1`.
    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|t| *t > BigInt::one()) && self.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(alloc::format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Structure of `Z^rows / M Z^cols`.
pub fn cokernel_structure(m: &IntMatrix) -> AbelianGroupStructure {
    let snf = smith_normal_form(m);
    AbelianGroupStructure::from_diagonal(m.rows(), &snf.diagonal())
}

/// Saturated basis of `{v : M v = 0}`, in Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let basis: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| snf.v.column(j)).collect();
    hermite_normal_form(&basis, m.cols()).expect("kernel vectors have the ambient length")
}

/// Basis of `{v in Z^n : k v in span(basis) for some k >= 1}`, in Hermite
/// normal form.
pub fn saturate_lattice(basis: &[Vec<BigInt>], ambient_rank: usize) -> Result<Vec<Vec<BigInt>>> {
    if basis.iter().any(|v| v.len() != ambient_rank) {
        return Err(Error::domain("vector length does not match ambient rank"));
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let b = IntMatrix::from_columns(ambient_rank, basis)?;
    let snf = smith_normal_form(&b);
    let sat: Vec<Vec<BigInt>> = (0..snf.rank()).map(|j| snf.u_inv.column(j)).collect();
    hermite_normal_form(&sat, ambient_rank)
}

/// Index of the lattice spanned by `basis` inside its saturation.
pub fn saturation_index(basis: &[Vec<BigInt>], ambient_rank: usize) -> Result<BigInt> {
    if basis.iter().any(|v| v.len() != ambient_rank) {
        return Err(Error::domain("vector length does not match ambient rank"));
    }
    if basis.is_empty() {
        return Ok(BigInt::one());
    }
    let b = IntMatrix::from_columns(ambient_rank, basis)?;
    Ok(smith_normal_form(&b)
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero())
        .product())
}

/// A sublattice of `Z^dim` held by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_generators<I>(generators: I, dim: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let gens: Vec<Vec<BigInt>> = generators.into_iter().collect();
        let basis = hermite_normal_form(&gens, dim)?;
        let pivots = basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
            .collect();
        Ok(Lattice { dim, basis, pivots })
    }

    pub fn full(dim: usize) -> Self {
        Self::scaled(dim, &BigInt::one())
    }

    /// `n Z^dim`.
    pub fn scaled(dim: usize, n: &BigInt) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut v = vec![BigInt::zero(); dim];
                v[i] = n.abs();
                v
            })
            .collect();
        Lattice {
            dim,
            basis,
            pivots: (0..dim).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Matrix whose columns are the basis vectors.
    pub fn column_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis).expect("basis vectors have length dim")
    }

    /// `[Z^dim : self]` for a full-rank lattice.
    pub fn index(&self) -> Option<BigInt> {
        self.is_full_rank().then(|| {
            self.basis
                .iter()
                .zip(&self.pivots)
                .map(|(r, &p)| r[p].clone())
                .product()
        })
    }

    /// Canonical representative of `v` modulo the lattice.
    ///
    /// For a full-rank lattice the result has `0 <= r[p_i] < h_i` at every
    /// pivot.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = out[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (o, x) in out.iter_mut().zip(row) {
                    *o -= &q * x;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coefficients of `v` in the basis, `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (o, x) in rest.iter_mut().zip(row) {
                *o -= &q * x;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.dim != other.dim {
            return Err(Error::domain("lattices live in different ambient ranks"));
        }
        Lattice::from_generators(self.basis.iter().chain(&other.basis).cloned(), self.dim)
    }

    /// Image of the lattice under `m`.
    pub fn image(&self, m: &IntMatrix) -> Result<Lattice> {
        if m.cols() != self.dim {
            return Err(Error::domain("map does not act on this lattice"));
        }
        Lattice::from_generators(self.basis.iter().map(|v| m.mul_vec(v)), m.rows())
    }

    /// `{v in Z^cols : m v in target}`.
    pub fn preimage(m: &IntMatrix, target: &Lattice) -> Result<Lattice> {
        if m.rows() != target.dim {
            return Err(Error::domain("target lattice does not match the map"));
        }
        let t = target.column_matrix();
        let combined = IntMatrix::hstack(m.rows(), &[m.clone(), t.scale(&BigInt::from(-1))])?;
        let kernel = integer_kernel(&combined);
        Lattice::from_generators(kernel.into_iter().map(|v| v[..m.cols()].to_vec()), m.cols())
    }

    /// Structure of `self / sub`; `sub` must be contained in `self`.
    pub fn quotient_structure(&self, sub: &Lattice) -> Result<AbelianGroupStructure> {
        let mut columns = Vec::with_capacity(sub.rank());
        for v in &sub.basis {
            columns.push(
                self.coordinates(v)
                    .ok_or_else(|| Error::domain("sublattice is not contained in the lattice"))?,
            );
        }
        let coords = IntMatrix::from_columns(self.rank(), &columns)?;
        Ok(cokernel_structure(&coords))
    }
}
