//! Subspaces of ℚ^d kept as a reduced row echelon basis, so equality of
//! subspaces is equality of bases.

use crate::linalg::{dot, is_zero_vec, zero_vec, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Rows of a reduced row echelon matrix.
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &Matrix::identity(ambient).row_vecs())
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let m = Matrix::from_rows_with_cols(vectors.to_vec(), ambient);
        let rr = m.rref();
        let basis = (0..rr.rank()).map(|i| rr.matrix.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Pivot column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
            .collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the stored basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient);
        // Reduced echelon basis: the coordinate on row i is v at its pivot.
        let piv = self.pivots();
        let coords: Vector = piv.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            crate::linalg::add_scaled(&mut r, &-c, b);
        }
        is_zero_vec(&r).then_some(coords)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Solve Σ a_i u_i = Σ b_j w_j.
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = Matrix::from_cols(self.ambient, &cols);
        let vecs: Vec<Vector> = m
            .nullspace()
            .iter()
            .map(|c| {
                let mut v = zero_vec(self.ambient);
                for (a, u) in c.iter().zip(&self.basis) {
                    crate::linalg::add_scaled(&mut v, a, u);
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vecs)
    }

    /// Image of the subspace under a linear map (matrix acting on columns).
    pub fn image(&self, map: &Matrix) -> Subspace {
        let vecs: Vec<Vector> = self.basis.iter().map(|v| map.mul_vec(v)).collect();
        Self::span(map.rows(), &vecs)
    }

    /// `{v : map·v ∈ self}`.
    pub fn preimage(&self, map: &Matrix) -> Subspace {
        let ann = self.annihilator_matrix();
        let ns = ann.mul(map).nullspace();
        Self::span(map.cols(), &ns)
    }

    pub fn is_invariant(&self, map: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&map.mul_vec(v)))
    }

    /// Rows spanning the linear functionals vanishing on the subspace.
    pub fn annihilator_matrix(&self) -> Matrix {
        let m = Matrix::from_rows_with_cols(self.basis.clone(), self.ambient);
        Matrix::from_rows_with_cols(m.nullspace(), self.ambient)
    }

    /// `{x : ⟨x, w⟩ = 0 ∀ w}` for the Gram matrix `gram`.
    pub fn orthogonal(&self, gram: &Matrix) -> Subspace {
        let rows: Vec<Vector> = self.basis.iter().map(|w| gram.mul_vec(w)).collect();
        let m = Matrix::from_rows_with_cols(rows, self.ambient);
        // ⟨x,w⟩ = xᵀ G w
        Self::span(self.ambient, &m.nullspace())
    }

    /// Lex-first standard complement: coordinate vectors on the non-pivot
    /// positions.
    pub fn standard_complement(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.ambient).filter(|j| !piv.contains(j)).collect()
    }

    pub fn is_isotropic(&self, gram: &Matrix) -> bool {
        self.basis
            .iter()
            .all(|u| self.basis.iter().all(|v| dot(u, &gram.mul_vec(v)).is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn hyperbolic_orthogonal() {
        let g = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let e1 = Subspace::span(2, &[v(&[1, 0])]);
        assert_eq!(e1.orthogonal(&g), e1);
        assert!(e1.is_isotropic(&g));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.standard_complement(), vec![2]);
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = Subspace::span(3, &[v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let x = v(&[2, 5, 1]);
        let c = a.coordinates(&x).unwrap();
        let mut y = zero_vec(3);
        for (ci, b) in c.iter().zip(a.basis()) {
            crate::linalg::add_scaled(&mut y, ci, b);
        }
        assert_eq!(y, x);
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn preimage_of_kernel() {
        let m = Matrix::from_ints(&[&[1, 1, 0], &[0, 0, 0]]);
        let k = Subspace::zero(2).preimage(&m);
        assert_eq!(k.dim(), 2);
    }
}
