//! Dense exact matrices, row reduction and incremental subspaces.
//!
//! Elimination is fraction-free (Bareiss) over ℚ and ℚ(ζ) and plain
//! Gauss–Jordan over F_p on machine words. Pivots are chosen as the first
//! nonzero entry in column order, so every result is a deterministic
//! function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{inv_mod, FieldDescriptor, Scalar};

/// Vector helpers on `&[Scalar]`.
pub mod vecops {
    use super::*;

    pub fn zeros(field: FieldDescriptor, n: usize) -> Vec<Scalar> {
        vec![field.zero(); n]
    }

    pub fn unit(field: FieldDescriptor, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zeros(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
        a.iter().map(|x| x * c).collect()
    }

    /// `acc += c * v`
    pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a = &*a + &(c * x);
            }
        }
    }

    pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
        let field = a.first().map(Scalar::field).unwrap_or(FieldDescriptor::Rationals);
        let mut acc = field.zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc = acc + x * y;
            }
        }
        acc
    }

    /// Linear combination `Σ c_i v_i`.
    pub fn combine(field: FieldDescriptor, n: usize, coeffs: &[Scalar], vs: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut out = zeros(field, n);
        for (c, v) in coeffs.iter().zip(vs) {
            axpy(&mut out, c, v);
        }
        out
    }
}

/// Dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ScalarMatrix,
    pub pivots: Vec<usize>,
}

/// Output of [`solve_and_kernel`].
#[derive(Clone, Debug)]
pub struct SolveResult {
    /// `Some(x)` when a right-hand side was given and `A·x = b` is consistent.
    pub particular: Option<ScalarMatrix>,
    /// Whether the system (if any) was consistent.
    pub consistent: bool,
    /// Kernel basis as rows in reduced echelon form.
    pub kernel: Vec<Vec<Scalar>>,
    pub rank: usize,
}

/// Solves `A·x = b` (if `b` is given) and returns the kernel of `A`.
pub fn solve_and_kernel(a: &ScalarMatrix, b: Option<&ScalarMatrix>) -> Result<SolveResult> {
    let rref = a.rref();
    let rank = rref.pivots.len();
    let kernel = echelon_rows(a.field, a.cols, &kernel_from_rref(&rref, a.cols));
    let (particular, consistent) = match b {
        None => (None, true),
        Some(b) => match a.solve(b)? {
            Some(x) => (Some(x), true),
            None => (None, false),
        },
    };
    Ok(SolveResult { particular, consistent, kernel, rank })
}

fn kernel_from_rref(rref: &Rref, cols: usize) -> Vec<Vec<Scalar>> {
    let field = rref.matrix.field;
    let mut is_pivot = vec![false; cols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vecops::zeros(field, cols);
        v[f] = field.one();
        for (i, &p) in rref.pivots.iter().enumerate() {
            let x = rref.matrix.get(i, f);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        out.push(v);
    }
    out
}

/// Row-reduces a list of vectors and drops zero rows.
pub fn echelon_rows(field: FieldDescriptor, n: usize, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = ScalarMatrix::from_rows(field, n, rows);
    let r = m.rref();
    (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect()
}

impl ScalarMatrix {
    pub fn new(field: FieldDescriptor, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(bad.field().to_string(), field.to_string()));
        }
        Ok(ScalarMatrix { field, rows, cols, data })
    }

    pub(crate) fn from_data_unchecked(field: FieldDescriptor, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        ScalarMatrix { field, rows, cols, data }
    }

    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        ScalarMatrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: FieldDescriptor, n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Builds from row vectors of length `cols`.
    pub fn from_rows(field: FieldDescriptor, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        ScalarMatrix { field, rows: rows.len(), cols, data }
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_cols(field: FieldDescriptor, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_ints(field: FieldDescriptor, rows: usize, cols: usize, ints: &[i64]) -> Self {
        assert_eq!(ints.len(), rows * cols);
        ScalarMatrix { field, rows, cols, data: ints.iter().map(|&k| field.from_int(k)).collect() }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ScalarMatrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ScalarMatrix { data, ..*self.shape_only() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ScalarMatrix { data, ..*self.shape_only() })
    }

    fn shape_only(&self) -> Box<ScalarMatrix> {
        Box::new(ScalarMatrix { field: self.field, rows: self.rows, cols: self.cols, data: Vec::new() })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let data = self.data.iter().map(|x| x * c).collect();
        ScalarMatrix { data, ..*self.shape_only() }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|x| -x).collect();
        ScalarMatrix { data, ..*self.shape_only() }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (a, x) in self.data.iter_mut().zip(&other.data) {
            if !x.is_zero() {
                *a = &*a + &(c * x);
            }
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if let FieldDescriptor::Prime(p) = self.field {
            let a = to_words(&self.data);
            let b = to_words(&other.data);
            let c = fp_mul(&a, &b, self.rows, self.cols, other.cols, p);
            return Ok(ScalarMatrix { field: self.field, rows: self.rows, cols: other.cols, data: from_words(&c, p) });
        }
        let mut out = ScalarMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = &*o + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `self · v` for a column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        if let FieldDescriptor::Prime(p) = self.field {
            let vw = to_words(v);
            let out: Vec<u64> = (0..self.rows)
                .map(|i| {
                    let mut acc: u64 = 0;
                    for (x, y) in self.row(i).iter().zip(&vw) {
                        let xw = x.residue().unwrap_or(0);
                        if xw != 0 && *y != 0 {
                            acc = (acc + mulm(xw, *y, p)) % p;
                        }
                    }
                    acc
                })
                .collect();
            return from_words(&out, p);
        }
        (0..self.rows).map(|i| vecops::dot(self.row(i), v)).collect()
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ScalarMatrix::zeros(self.field, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = ScalarMatrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        ScalarMatrix { field: self.field, rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ScalarMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Submatrix from selected rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        ScalarMatrix { field: self.field, rows: rows.len(), cols: cols.len(), data }
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self.get(i, i);
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = ScalarMatrix::identity(self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let (data, pivots) = rref_data(self.field, self.rows, self.cols, &self.data);
        Rref { matrix: ScalarMatrix { field: self.field, rows: self.rows, cols: self.cols, data }, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Right kernel basis: one vector per free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Solves `self · X = b`; `None` when inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &ScalarMatrix) -> Result<Option<ScalarMatrix>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let r = aug.rref();
        if r.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = ScalarMatrix::zeros(self.field, self.cols, b.cols);
        for (i, &p) in r.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.matrix.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<ScalarMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let r = self.hstack(&ScalarMatrix::identity(self.field, n)).rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.matrix.select(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    #[allow(clippy::needless_range_loop)]
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inv()?;
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] * &inv;
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
        Ok(det)
    }
}

#[inline]
pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    if p < (1 << 32) {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub(crate) fn to_words(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(|x| x.residue().expect("prime-field entry")).collect()
}

pub(crate) fn from_words(v: &[u64], p: u64) -> Vec<Scalar> {
    v.iter().map(|&value| Scalar::Mod { value, p }).collect()
}

fn fp_mul(a: &[u64], b: &[u64], n: usize, k: usize, m: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * m];
    let small = p < (1 << 31);
    for i in 0..n {
        let orow = &mut out[i * m..(i + 1) * m];
        for t in 0..k {
            let x = a[i * k + t];
            if x == 0 {
                continue;
            }
            let brow = &b[t * m..(t + 1) * m];
            if small {
                for (o, &y) in orow.iter_mut().zip(brow) {
                    *o = (*o + x * y) % p;
                }
            } else {
                for (o, &y) in orow.iter_mut().zip(brow) {
                    *o = (*o + mulm(x, y, p)) % p;
                }
            }
        }
    }
    out
}

/// Gauss–Jordan over F_p on words; returns (rref, pivots).
pub(crate) fn fp_rref(a: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = mulm(a[r * cols + j], inv, p);
        }
        let (before, rest) = a.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [u64]| {
            let f = row[c];
            if f != 0 {
                let nf = p - f;
                for j in c..cols {
                    if prow[j] != 0 {
                        row[j] = (row[j] + mulm(nf, prow[j], p)) % p;
                    }
                }
            }
        };
        for row in before.chunks_mut(cols) {
            eliminate(row);
        }
        for row in after.chunks_mut(cols) {
            eliminate(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Ring operations needed by fraction-free elimination.
trait BareissRing: Clone {
    fn is_zero_r(&self) -> bool;
    fn mul_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!((self % o).is_zero());
        self / o
    }
}

impl BareissRing for Scalar {
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.try_div(o).expect("nonzero Bareiss pivot")
    }
}

/// Fraction-free forward elimination; returns pivot columns (pivot rows are 0..len).
fn bareiss<R: BareissRing>(m: &mut [Vec<R>], cols: usize, one: R) -> Vec<usize> {
    let rows = m.len();
    let mut prev = one;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero_r()) else { continue };
        m.swap(r, piv);
        let (top, bottom) = m.split_at_mut(r + 1);
        let prow = &top[r];
        let pc = prow[c].clone();
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let t = pc.mul_r(&row[j]);
                let t = if f.is_zero_r() || prow[j].is_zero_r() { t } else { t.sub_r(&f.mul_r(&prow[j])) };
                row[j] = if t.is_zero_r() { t } else { t.div_exact(&prev) };
            }
            row[c] = f.sub_r(&f);
        }
        prev = pc;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Back-substitution from an echelon form to RREF, on field rows.
fn back_substitute(rows: &mut [Vec<Scalar>], pivots: &[usize]) {
    for (i, &c) in pivots.iter().enumerate() {
        let inv = rows[i][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[i][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
    }
    for (i, &c) in pivots.iter().enumerate().rev() {
        let (above, rest) = rows.split_at_mut(i);
        let prow = &rest[0];
        for row in above.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..prow.len() {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &(&f * &prow[j]);
                }
            }
        }
    }
}

fn rref_data(field: FieldDescriptor, rows: usize, cols: usize, data: &[Scalar]) -> (Vec<Scalar>, Vec<usize>) {
    match field {
        FieldDescriptor::Prime(p) => {
            let mut a = to_words(data);
            let piv = fp_rref(&mut a, rows, cols, p);
            (from_words(&a, p), piv)
        }
        FieldDescriptor::Rationals => {
            // clear denominators row by row, then eliminate over ℤ
            let mut m: Vec<Vec<BigInt>> = (0..rows)
                .map(|i| {
                    let row = &data[i * cols..(i + 1) * cols];
                    let lcm = row.iter().fold(BigInt::one(), |acc, x| match x {
                        Scalar::Rat(r) => acc.lcm(r.denom()),
                        _ => unreachable!(),
                    });
                    row.iter()
                        .map(|x| match x {
                            Scalar::Rat(r) => r.numer() * (&lcm / r.denom()),
                            _ => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            let pivots = bareiss(&mut m, cols, BigInt::one());
            let mut fr: Vec<Vec<Scalar>> = m
                .into_iter()
                .map(|row| row.into_iter().map(|x| Scalar::Rat(Box::new(BigRational::from_integer(x)))).collect())
                .collect();
            for row in fr.iter_mut().skip(pivots.len()) {
                for x in row.iter_mut() {
                    *x = field.zero();
                }
            }
            back_substitute(&mut fr, &pivots);
            (fr.into_iter().flatten().collect(), pivots)
        }
        FieldDescriptor::Cyclotomic(_) => {
            let mut m: Vec<Vec<Scalar>> = (0..rows).map(|i| data[i * cols..(i + 1) * cols].to_vec()).collect();
            let pivots = bareiss(&mut m, cols, field.one());
            for row in m.iter_mut().skip(pivots.len()) {
                for x in row.iter_mut() {
                    *x = field.zero();
                }
            }
            back_substitute(&mut m, &pivots);
            (m.into_iter().flatten().collect(), pivots)
        }
    }
}

/// A subspace of `field^ambient` kept in reduced echelon form.
///
/// With tracking enabled, every echelon row remembers its expression in
/// terms of the vectors inserted so far (the "generators"), so membership
/// queries can return coordinates with respect to those generators.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: FieldDescriptor,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<Scalar>>>,
    ngens: usize,
}

impl Subspace {
    pub fn new(field: FieldDescriptor, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new(), track: None, ngens: 0 }
    }

    pub fn tracking(field: FieldDescriptor, ambient: usize) -> Self {
        Subspace { track: Some(Vec::new()), ..Subspace::new(field, ambient) }
    }

    pub fn spanned_by(field: FieldDescriptor, ambient: usize, vs: &[Vec<Scalar>]) -> Self {
        let rows = echelon_rows(field, ambient, vs);
        let pivots = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero echelon row")).collect();
        Subspace { field, ambient, rows, pivots, track: None, ngens: 0 }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients on the echelon rows and the residual of `v`.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut r = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                let nc = -&c;
                vecops::axpy(&mut r, &nc, row);
            }
            coeffs.push(c);
        }
        (coeffs, r)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vecops::is_zero(&self.reduce(v).1)
    }

    /// Inserts `v`; returns true if the dimension grew.
    ///
    /// With tracking, `v` becomes generator number `ngens` regardless.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let gen_index = self.ngens;
        self.ngens += 1;
        let (coeffs, mut r) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            if let Some(t) = self.track.as_mut() {
                for row in t.iter_mut() {
                    row.push(self.field.zero());
                }
            }
            return false;
        };
        // residual as a combination of generators: e_new − Σ c_i T_i
        let mut tr = None;
        if let Some(t) = self.track.as_mut() {
            for row in t.iter_mut() {
                row.push(self.field.zero());
            }
            let mut combo = vecops::unit(self.field, gen_index + 1, gen_index);
            for (c, trow) in coeffs.iter().zip(t.iter()) {
                if !c.is_zero() {
                    vecops::axpy(&mut combo, &-c, trow);
                }
            }
            tr = Some(combo);
        }
        let inv = r[p].inv().expect("nonzero pivot");
        if !inv.is_one() {
            r = vecops::scale(&r, &inv);
            if let Some(c) = tr.as_mut() {
                *c = vecops::scale(c, &inv);
            }
        }
        // clear column p from the other rows
        for (i, row) in self.rows.iter_mut().enumerate() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            let nf = -&f;
            vecops::axpy(row, &nf, &r);
            if let (Some(t), Some(c)) = (self.track.as_mut(), tr.as_ref()) {
                vecops::axpy(&mut t[i], &nf, c);
            }
        }
        // keep rows sorted by pivot
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, r);
        self.pivots.insert(pos, p);
        if let (Some(t), Some(c)) = (self.track.as_mut(), tr) {
            t.insert(pos, c);
        }
        true
    }

    /// Coordinates of `v` in terms of the inserted generators (tracking only).
    pub fn generator_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let t = self.track.as_ref().expect("subspace built without tracking");
        let (coeffs, r) = self.reduce(v);
        if !vecops::is_zero(&r) {
            return None;
        }
        let mut out = vecops::zeros(self.field, self.ngens);
        for (c, trow) in coeffs.iter().zip(t) {
            vecops::axpy(&mut out, c, trow);
        }
        Some(out)
    }

    /// Coordinates of `v` on the echelon basis.
    pub fn echelon_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (coeffs, r) = self.reduce(v);
        if vecops::is_zero(&r) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔  [U^T | −W^T] (a, b)^T = 0
        let n = self.ambient;
        let k1 = self.dim();
        let k2 = other.dim();
        if k1 == 0 || k2 == 0 {
            return Subspace::new(self.field, n);
        }
        let mut cols: Vec<Vec<Scalar>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = ScalarMatrix::from_cols(self.field, n, &cols);
        let ker = m.kernel();
        let vs: Vec<Vec<Scalar>> = ker.iter().map(|k| vecops::combine(self.field, n, &k[..k1], &self.rows)).collect();
        Subspace::spanned_by(self.field, n, &vs)
    }

    /// Sum with another subspace.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::spanned_by(self.field, self.ambient, &vs)
    }

    /// Basis of a complement: standard vectors at the non-pivot positions.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ambient];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_p[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor as F;

    #[test]
    fn identity_solve() {
        let f = F::Rationals;
        let a = ScalarMatrix::identity(f, 3);
        let b = ScalarMatrix::from_cols(f, 3, &[vecops::unit(f, 3, 0)]);
        let res = solve_and_kernel(&a, Some(&b)).unwrap();
        assert_eq!(res.particular.unwrap(), b);
        assert!(res.kernel.is_empty());
        assert_eq!(res.rank, 3);
    }

    #[test]
    fn rank_one_kernel() {
        let f = F::Rationals;
        let a = ScalarMatrix::from_ints(f, 2, 2, &[1, 1, 1, 1]);
        let res = solve_and_kernel(&a, None).unwrap();
        assert_eq!(res.rank, 1);
        assert_eq!(res.kernel, vec![vec![f.one(), f.from_int(-1)]]);
    }

    #[test]
    fn inverse_over_each_field() {
        for f in [F::Rationals, F::Prime(7), F::Cyclotomic(3)] {
            let a = ScalarMatrix::from_ints(f, 3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
            let inv = a.inverse().unwrap();
            assert!(a.mul(&inv).is_identity(), "{f}");
        }
        let s = ScalarMatrix::from_ints(F::Rationals, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(s.inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn subspace_tracking() {
        let f = F::Rationals;
        let mut s = Subspace::tracking(f, 3);
        let g0 = vec![f.one(), f.one(), f.zero()];
        let g1 = vec![f.zero(), f.one(), f.one()];
        assert!(s.insert(&g0));
        assert!(s.insert(&g1));
        let v = vecops::add(&vecops::scale(&g0, &f.from_int(2)), &vecops::scale(&g1, &f.from_int(-3)));
        let c = s.generator_coords(&v).unwrap();
        assert_eq!(c, vec![f.from_int(2), f.from_int(-3)]);
        assert!(s.generator_coords(&vecops::unit(f, 3, 0)).is_none());
    }

    #[test]
    fn intersection_dimension() {
        let f = F::Prime(5);
        let a = Subspace::spanned_by(f, 3, &[vecops::unit(f, 3, 0), vecops::unit(f, 3, 1)]);
        let b = Subspace::spanned_by(f, 3, &[vecops::unit(f, 3, 1), vecops::unit(f, 3, 2)]);
        assert_eq!(a.intersect(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
