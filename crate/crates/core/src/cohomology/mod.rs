//! Fundamental objects, representations, cochains and the coboundary
//! operator.

mod cochain;
mod representation;
mod skew;

pub use cochain::{
    apply_mode, cochain_to_skew, skew_to_cochain, Cochain, CochainShape, CohomologyDims, Complex,
};
pub use representation::{adjoint_rep, module_bracket, verify_representation, Representation, Slot};
pub(crate) use skew::nullspace_of_columns;
pub use skew::{
    combine, skew_cochain_basis, skew_cocycle_basis, skew_is_closed, skew_is_compatible, SkewCoordinates, SkewMap,
};

use std::collections::HashMap;

use crate::graded::{canonical_tuples, fmt_tuple, fmt_vec, koszul, straighten_unchecked, tuple_parity, HomSuperAlgebra};
use crate::linalg::{add_scaled, zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;

/// Canonical (n−1)-tuples, the basis of g^∧(n−1).
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    pub degree: usize,
    pub space_parity: Vec<u8>,
    pub elements: Vec<Vec<usize>>,
    /// Parity of each element.
    pub parity: Vec<u8>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(space_parity: &[u8], degree: usize) -> Self {
        assert!(degree >= 1, "wedge degree must be at least 1");
        let elements = canonical_tuples(space_parity, degree);
        let parity = elements.iter().map(|t| tuple_parity(t, space_parity)).collect();
        let index = elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        WedgeBasis { degree, space_parity: space_parity.to_vec(), elements, parity, index }
    }

    pub fn for_algebra(a: &HomSuperAlgebra) -> Self {
        Self::new(&a.parity, a.n - 1)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(sign, position)` of any tuple; `None` when it vanishes.
    pub fn lookup(&self, tuple: &[usize]) -> Option<(i8, usize)> {
        let (sign, t) = straighten_unchecked(tuple, &self.space_parity);
        if sign == 0 {
            return None;
        }
        self.index.get(&t).map(|&i| (sign, i))
    }

    pub fn position(&self, canonical: &[usize]) -> Option<usize> {
        self.index.get(canonical).copied()
    }

    /// Wedge coordinates of `v_1 ∧ ⋯ ∧ v_k`, expanded multilinearly.
    pub fn wedge_of<V: AsRef<[Scalar]>>(&self, vectors: &[V]) -> Vector {
        assert_eq!(vectors.len(), self.degree);
        let mut acc = zero_vec(self.len());
        let supports: Vec<Vec<(usize, &Scalar)>> = vectors
            .iter()
            .map(|v| v.as_ref().iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) {
            return acc;
        }
        let mut tuple = vec![0; self.degree];
        self.wedge_rec(&supports, 0, &Scalar::one(), &mut tuple, &mut acc);
        acc
    }

    fn wedge_rec(
        &self,
        supports: &[Vec<(usize, &Scalar)>],
        slot: usize,
        coeff: &Scalar,
        tuple: &mut Vec<usize>,
        acc: &mut Vector,
    ) {
        if slot == supports.len() {
            if let Some((s, i)) = self.lookup(tuple) {
                if s > 0 {
                    acc[i] += coeff;
                } else {
                    acc[i] -= coeff;
                }
            }
            return;
        }
        for &(i, c) in &supports[slot] {
            tuple[slot] = i;
            let next = coeff * c;
            self.wedge_rec(supports, slot + 1, &next, tuple, acc);
        }
    }

    /// Matrix of `x_1∧⋯∧x_k ↦ φ(x_1)∧⋯∧φ(x_k)`.
    pub fn induced(&self, phi: &Matrix) -> Matrix {
        let cols: Vec<Vector> = (0..phi.cols()).map(|j| phi.col(j)).collect();
        let mut m = Matrix::zeros(self.len(), self.len());
        for (j, t) in self.elements.iter().enumerate() {
            let args: Vec<&Vector> = t.iter().map(|&k| &cols[k]).collect();
            for (i, v) in self.wedge_of(&args).into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }
}

/// Precomputed `[X, Y]_α` on wedge basis pairs, plus the ad matrices.
#[derive(Clone, Debug)]
pub struct FundamentalTable {
    pub wedge: WedgeBasis,
    /// `ad[X]` is the matrix of `z ↦ X·z`.
    pub ad: Vec<Matrix>,
    /// α induced on the wedge power.
    pub lambda: Matrix,
    /// `bracket[X][Y] = [X, Y]_α`.
    pub bracket: Vec<Vec<Vector>>,
}

impl FundamentalTable {
    pub fn new(a: &HomSuperAlgebra) -> Self {
        let wedge = WedgeBasis::for_algebra(a);
        let ad: Vec<Matrix> = wedge.elements.iter().map(|t| a.ad(t)).collect();
        let lambda = wedge.induced(&a.alpha);
        let alpha_cols: Vec<Vector> = (0..a.dim()).map(|j| a.alpha.col(j)).collect();
        let w = wedge.len();
        let bracket = (0..w)
            .map(|x| {
                (0..w)
                    .map(|y| fundamental_basis(&wedge, &ad[x], wedge.parity[x], &wedge.elements[y], &alpha_cols))
                    .collect()
            })
            .collect();
        FundamentalTable { wedge, ad, lambda, bracket }
    }

    /// `Σ_c w_c ad(c)`.
    pub fn ad_of(&self, w: &[Scalar]) -> Matrix {
        let d = self.ad.first().map_or(0, Matrix::rows);
        let mut m = Matrix::zeros(d, d);
        for (c, x) in w.iter().enumerate() {
            if !x.is_zero() {
                m = m.add(&self.ad[c].scale(x));
            }
        }
        m
    }

    /// Bilinear extension of the table.
    pub fn bracket_of(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut acc = zero_vec(self.wedge.len());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    add_scaled(&mut acc, &(a * b), &self.bracket[i][j]);
                }
            }
        }
        acc
    }

    /// Matrix of `Y ↦ [X, Y]_α` for a wedge vector X.
    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        let w = self.wedge.len();
        let mut m = Matrix::zeros(w, w);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for y in 0..w {
                for (k, v) in self.bracket[i][y].iter().enumerate() {
                    if !v.is_zero() {
                        m[(k, y)] += a * v;
                    }
                }
            }
        }
        m
    }
}

fn fundamental_basis(
    wedge: &WedgeBasis,
    ad_x: &Matrix,
    px: u8,
    y: &[usize],
    alpha_cols: &[Vector],
) -> Vector {
    let mut acc = zero_vec(wedge.len());
    let mut prefix = 0u8;
    for i in 0..y.len() {
        let mut args: Vec<Vector> = y.iter().map(|&k| alpha_cols[k].clone()).collect();
        args[i] = ad_x.col(y[i]);
        let term = wedge.wedge_of(&args);
        add_scaled(&mut acc, &Scalar::sign(koszul(px, prefix)), &term);
        prefix ^= wedge.space_parity[y[i]];
    }
    acc
}

/// `[X, Y]_α` for wedge coordinate vectors.
pub fn fundamental_bracket(a: &HomSuperAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    FundamentalTable::new(a).bracket_of(x, y)
}

/// The three identities relating `·`, `[·,·]_α` and α on all basis wedge
/// elements.
pub fn verify_fundamental_identities(a: &HomSuperAlgebra) -> Report {
    let t = FundamentalTable::new(a);
    let w = t.wedge.len();
    let wp = &t.wedge.parity;
    let mut r = Report::new(&format!("fundamental objects of {}", a.name));
    let lam_cols: Vec<Vector> = (0..w).map(|j| t.lambda.col(j)).collect();
    let ad_alpha: Vec<Matrix> = lam_cols.iter().map(|c| t.ad_of(c)).collect();
    let left_alpha: Vec<Matrix> = lam_cols.iter().map(|c| t.left_mul(c)).collect();
    let left: Vec<Matrix> = (0..w).map(|x| t.left_mul(&crate::linalg::unit_vec(w, x))).collect();

    let mut w1 = None;
    let mut w2 = None;
    let mut w3 = None;
    for x in 0..w {
        for y in 0..w {
            let s = Scalar::sign(koszul(wp[x], wp[y]));
            let xy = &t.bracket[x][y];
            let ad_xy_alpha = t.ad_of(xy).mul(&a.alpha);
            if w1.is_none() {
                let lhs = ad_alpha[x].mul(&t.ad[y]);
                let rhs = ad_alpha[y].mul(&t.ad[x]).scale(&s).add(&ad_xy_alpha);
                if lhs != rhs {
                    w1 = Some(format!(
                        "x={} y={}: α(x)·(y·z) = {:?} vs {:?}",
                        fmt_tuple(&t.wedge.elements[x]),
                        fmt_tuple(&t.wedge.elements[y]),
                        lhs,
                        rhs
                    ));
                }
            }
            if w2.is_none() {
                let lhs = left_alpha[x].mul(&left[y]);
                let rhs = left_alpha[y].mul(&left[x]).scale(&s).add(&t.left_mul(xy).mul(&t.lambda));
                if lhs != rhs {
                    let z = (0..w).find(|&z| lhs.col(z) != rhs.col(z)).unwrap();
                    w2 = Some(format!(
                        "x={} y={} z={}: lhs={} rhs={}",
                        fmt_tuple(&t.wedge.elements[x]),
                        fmt_tuple(&t.wedge.elements[y]),
                        fmt_tuple(&t.wedge.elements[z]),
                        fmt_vec(&lhs.col(z)),
                        fmt_vec(&rhs.col(z))
                    ));
                }
            }
            if w3.is_none() {
                let rhs = t.ad_of(&t.bracket[y][x]).mul(&a.alpha).scale(&-s);
                if ad_xy_alpha != rhs {
                    w3 = Some(format!(
                        "x={} y={}: [x,y]·α(z) = {:?} vs {:?}",
                        fmt_tuple(&t.wedge.elements[x]),
                        fmt_tuple(&t.wedge.elements[y]),
                        ad_xy_alpha,
                        rhs
                    ));
                }
            }
        }
    }
    r.push("action identity", w1);
    r.push("bracket identity", w2);
    r.push("skew identity", w3);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::examples::*;
    use crate::linalg::unit_vec;

    #[test]
    fn wedge_counts() {
        assert_eq!(WedgeBasis::new(&[0, 0, 0], 2).len(), 3);
        assert_eq!(WedgeBasis::new(&[1, 1], 2).len(), 3);
        let sh = WedgeBasis::new(&[0, 1, 1], 2);
        assert_eq!(sh.elements, vec![vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn wedge_count_matches_brute_force() {
        let p = [0u8, 1, 0, 1];
        for k in 1..=3 {
            let wb = WedgeBasis::new(&p, k);
            let mut seen = std::collections::BTreeSet::new();
            let mut t = vec![0usize; k];
            loop {
                let (s, c) = crate::graded::straighten(&t, &p).unwrap();
                if s != 0 {
                    seen.insert(c);
                }
                let mut i = 0;
                while i < k {
                    t[i] += 1;
                    if t[i] < p.len() {
                        break;
                    }
                    t[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
            assert_eq!(seen.len(), wb.len());
        }
    }

    #[test]
    fn fundamental_bracket_examples() {
        let h = heisenberg();
        let v = fundamental_bracket(&h, &unit_vec(3, 0), &unit_vec(3, 1));
        assert_eq!(v, unit_vec(3, 2));
        let ab = abelian(2, 3, 0);
        assert!(fundamental_bracket(&ab, &unit_vec(3, 0), &unit_vec(3, 1)).iter().all(Scalar::is_zero));

        let n = n4();
        let wb = WedgeBasis::for_algebra(&n);
        let x = unit_vec(wb.len(), wb.position(&[0, 1]).unwrap());
        let y = unit_vec(wb.len(), wb.position(&[0, 2]).unwrap());
        let expect = unit_vec(wb.len(), wb.position(&[0, 3]).unwrap());
        assert_eq!(fundamental_bracket(&n, &x, &y), expect);
    }

    #[test]
    fn identities_hold_on_examples() {
        for g in [abelian(2, 2, 1), heisenberg(), super_heisenberg(), n4(), a4(), sl2(), odd_square()] {
            let r = verify_fundamental_identities(&g);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn identities_fail_on_broken_algebra() {
        let r = verify_fundamental_identities(&broken_heisenberg());
        assert!(!r.all_passed());
    }
}
