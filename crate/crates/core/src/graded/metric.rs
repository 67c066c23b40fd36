use super::{canonical_tuples, fmt_tuple, koszul, tuple_parity, HomSuperAlgebra};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Scalar;

/// An algebra together with the Gram matrix of a bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricAlgebra {
    pub algebra: HomSuperAlgebra,
    pub gram: Matrix,
}

impl MetricAlgebra {
    pub fn new(algebra: HomSuperAlgebra, gram: Matrix) -> Self {
        MetricAlgebra { algebra, gram }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        crate::linalg::dot(x, &self.gram.mul_vec(y))
    }
}

/// Consistency, supersymmetry, invariance, nondegeneracy and α-symmetry
/// `⟨αx, y⟩ = ⟨x, αy⟩`.
pub fn verify_metric(a: &HomSuperAlgebra, gram: &Matrix) -> Report {
    let mut r = Report::new(&format!("metric on {}", a.name));
    let d = a.dim();
    let p = &a.parity;
    if gram.rows() != d || gram.cols() != d {
        r.fail("shape", format!("gram is {}×{}, expected {d}×{d}", gram.rows(), gram.cols()));
        return r;
    }
    let g = |i: usize, j: usize| &gram[(i, j)];

    let mut w = None;
    'c: for i in 0..d {
        for j in 0..d {
            if p[i] != p[j] && !g(i, j).is_zero() {
                w = Some(format!("⟨e{},e{}⟩ = {} across parities", i + 1, j + 1, g(i, j)));
                break 'c;
            }
        }
    }
    r.push("consistent", w);

    let mut w = None;
    's: for i in 0..d {
        for j in 0..d {
            let rhs = if koszul(p[i], p[j]) { -g(j, i) } else { g(j, i).clone() };
            if *g(i, j) != rhs {
                w = Some(format!("⟨e{},e{}⟩ = {} but ±⟨e{},e{}⟩ = {}", i + 1, j + 1, g(i, j), j + 1, i + 1, rhs));
                break 's;
            }
        }
    }
    r.push("supersymmetric", w);

    let mut w = None;
    'i: for x in canonical_tuples(p, a.n - 1) {
        let ad = a.ad(&x);
        let px = tuple_parity(&x, p);
        // ⟨[x,e_y], e_z⟩ = (adᵀ G)[y][z];  ⟨e_y, [x,e_z]⟩ = (G ad)[y][z]
        let lhs = ad.transpose().mul(gram);
        let rhs = gram.mul(&ad);
        for y in 0..d {
            for z in 0..d {
                let mut expect = -&rhs[(y, z)];
                if koszul(px, p[y]) {
                    expect = -expect;
                }
                if lhs[(y, z)] != expect {
                    w = Some(format!(
                        "x={} y=e{} z=e{}: ⟨[x,y],z⟩ = {} but −(−1)^(|x||y|)⟨y,[x,z]⟩ = {}",
                        fmt_tuple(&x),
                        y + 1,
                        z + 1,
                        lhs[(y, z)],
                        expect
                    ));
                    break 'i;
                }
            }
        }
    }
    r.push("invariant", w);

    let rank = gram.rank();
    r.push("nondegenerate", (rank < d).then(|| format!("rank {rank} < {d}")));

    let lhs = a.alpha.transpose().mul(gram);
    let rhs = gram.mul(&a.alpha);
    let mut w = None;
    'a: for i in 0..d {
        for j in 0..d {
            if lhs[(i, j)] != rhs[(i, j)] {
                w = Some(format!("⟨αe{0},e{1}⟩ = {2} but ⟨e{0},αe{1}⟩ = {3}", i + 1, j + 1, lhs[(i, j)], rhs[(i, j)]));
                break 'a;
            }
        }
    }
    r.push("alpha symmetric", w);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::examples::*;

    #[test]
    fn abelian_identity_form() {
        assert!(verify_metric(&abelian(2, 2, 0), &Matrix::identity(2)).all_passed());
    }

    #[test]
    fn heisenberg_identity_form_not_invariant() {
        let r = verify_metric(&heisenberg(), &Matrix::identity(3));
        assert!(!r.passed("invariant"));
        assert!(r.passed("nondegenerate"));
    }

    #[test]
    fn hyperbolic_plane() {
        let g = abelian(2, 2, 0);
        assert!(verify_metric(&g, &Matrix::from_ints(&[&[0, 1], &[1, 0]])).all_passed());
    }

    #[test]
    fn odd_form_must_be_skew() {
        let g = abelian(2, 0, 2);
        assert!(verify_metric(&g, &Matrix::from_ints(&[&[0, 1], &[-1, 0]])).all_passed());
        assert!(!verify_metric(&g, &Matrix::identity(2)).passed("supersymmetric"));
    }
}
