//! Dense matrices over ℚ and the exact elimination routines everything else
//! is built on.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`
pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// `cols` fixes the width when `rows` is empty. Panics on ragged input.
    pub fn from_rows_with_cols(rows: Vec<Vector>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, c)
    }

    /// `rows` fixes the height when `cols` is empty.
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
        )
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
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

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
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
                        let p = a * b;
                        out[(i, j)] += p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Self::from_rows_with_cols(idx.iter().map(|&i| self.row(i).to_vec()).collect(), self.cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip().expect("nonzero pivot");
            if !inv.is_one() {
                for x in m.row_mut(r)[c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_tail: Vector = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = -&m[(i, c)];
                add_scaled(&mut m.row_mut(i)[c..], &f, &pivot_tail);
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column, with that
    /// free variable set to 1.
    pub fn nullspace(&self) -> Vec<Vector> {
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = zero_vec(self.cols);
            v[free] = Scalar::one();
            for (i, &p) in rr.pivots.iter().enumerate() {
                v[p] = -&rr.matrix[(i, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self·x = b` with all free variables zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let rr = aug.rref();
        if rr.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (i, &p) in rr.pivots.iter().enumerate() {
            x[p] = rr.matrix[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Solves `self·X = B` with one reduction of `[self | B]`; free
    /// variables are zero, as in `solve`.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows, "right-hand side height mismatch");
        let n = self.cols;
        let rr = self.hstack(b).rref();
        if rr.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(n, b.cols);
        for (i, &p) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = rr.matrix[(i, n + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let rr = self.hstack(&Matrix::identity(n)).rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(rr.matrix.select_cols(&idx))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.recip().unwrap();
            let tail: Vector = m.row(c)[c..].to_vec();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = -(&m[(i, c)] * &inv);
                add_scaled(&mut m.row_mut(i)[c..], &f, &tail);
            }
        }
        det
    }

    /// Coefficients of `det(t·I − self)`, constant term first.
    pub fn char_poly(&self) -> Vec<Scalar> {
        // Faddeev–LeVerrier: exact over ℚ.
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            let tr: Scalar = (0..n).map(|i| am[(i, i)].clone()).sum();
            coeffs[n - k] = -(tr / Scalar::from_int(k as i64));
        }
        coeffs
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

impl fmt::Debug for Matrix {
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

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rational roots of a polynomial (constant term first), without multiplicity.
pub fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    let mut p: Vec<Scalar> = poly.to_vec();
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut low = 0;
    while p[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let p = &p[low..];
    // Clear denominators.
    let l = p.iter().fold(BigInt::from(1), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = BigInt::from(1);
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                out.push(d.clone());
                let e = n / &d;
                if e != d {
                    out.push(e);
                }
            }
            d += 1;
        }
        out
    };
    let eval = |x: &Scalar| -> Scalar {
        let mut acc = Scalar::zero();
        for c in p.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    };
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for s in [1i64, -1] {
                let cand = Scalar::from_bigint(&num * s) / Scalar::from_bigint(den.clone());
                if !roots.contains(&cand) && eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).rank(), 3);
    }

    #[test]
    fn nullspace_dimension() {
        let m = Matrix::from_ints(&[&[1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        let x = a.solve(&[q("3"), q("6")]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q("3"), q("6")]);
        assert!(a.solve(&[q("3"), q("7")]).is_none());
    }

    #[test]
    fn inverse_and_det() {
        let a = Matrix::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), q("1"));
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).det(), q("2"));
    }

    #[test]
    fn characteristic_polynomial() {
        // [[1,1],[0,2]] : t^2 - 3t + 2
        let a = Matrix::from_ints(&[&[1, 1], &[0, 2]]);
        assert_eq!(a.char_poly(), vec![q("2"), q("-3"), q("1")]);
        assert_eq!(rational_roots(&a.char_poly()), vec![q("1"), q("2")]);
        // rotation has no rational eigenvalue
        let r = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
        assert!(rational_roots(&r.char_poly()).is_empty());
        assert_eq!(rational_roots(&[q("-1/4"), q("0"), q("1")]), vec![q("-1/2"), q("1/2")]);
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::zeros(0, 3);
        assert_eq!(m.nullspace().len(), 3);
        assert_eq!(Matrix::zeros(2, 0).solve(&[q("0"), q("0")]), Some(vec![]));
        assert!(Matrix::zeros(2, 0).solve(&[q("1"), q("0")]).is_none());
    }

    #[test]
    fn solve_matrix_matches_column_solves() {
        let a = Matrix::from_ints(&[&[1, 2, 0], &[0, 0, 1], &[1, 2, 1]]);
        let b = Matrix::from_ints(&[&[3, 0], &[1, 2], &[4, 2]]);
        let x = a.solve_matrix(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        for j in 0..2 {
            assert_eq!(x.col(j), a.solve(&b.col(j)).unwrap());
        }
        let bad = Matrix::from_ints(&[&[1, 0], &[0, 0], &[0, 0]]);
        assert!(a.solve_matrix(&bad).is_none());
    }
}
