//! Fully super-skew n-linear maps `g^∧n → V`, the form in which extension
//! cocycles and T*-cocycles enter a bracket.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{skew_to_cochain, Complex};
use crate::graded::{canonical_tuples, tuple_parity};
use crate::linalg::{add_scaled, is_zero_vec, sub_vec, zero_vec, Matrix, Vector};
use crate::scalar::Scalar;

pub type SkewMap = BTreeMap<Vec<usize>, Vector>;

/// Coordinates of a skew map of fixed parity: one unknown per (canonical
/// n-tuple, admissible output index).
#[derive(Clone, Debug)]
pub struct SkewCoordinates {
    pub keys: Vec<(Vec<usize>, usize)>,
    pub dv: usize,
}

impl SkewCoordinates {
    pub fn new(cx: &Complex, pf: u8) -> Self {
        let a = cx.algebra;
        let mut keys = Vec::new();
        for t in canonical_tuples(&a.parity, a.n) {
            let p = tuple_parity(&t, &a.parity) ^ pf;
            for v in 0..cx.rep.dim() {
                if cx.rep.parity[v] == p {
                    keys.push((t.clone(), v));
                }
            }
        }
        SkewCoordinates { keys, dv: cx.rep.dim() }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn to_map(&self, coords: &[Scalar]) -> SkewMap {
        let mut map = SkewMap::new();
        for ((t, v), c) in self.keys.iter().zip(coords) {
            if !c.is_zero() {
                map.entry(t.clone()).or_insert_with(|| zero_vec(self.dv))[*v] = c.clone();
            }
        }
        map
    }

    /// `None` if the map has entries outside these coordinates.
    pub fn from_map(&self, map: &SkewMap) -> Option<Vector> {
        let mut out = zero_vec(self.len());
        let mut used = 0;
        for (i, (t, v)) in self.keys.iter().enumerate() {
            if let Some(val) = map.get(t) {
                out[i] = val[*v].clone();
            }
        }
        for val in map.values() {
            used += val.iter().filter(|x| !x.is_zero()).count();
        }
        (out.iter().filter(|x| !x.is_zero()).count() == used).then_some(out)
    }
}

/// Basis (in `SkewCoordinates`) of the skew maps of parity `pf` that are
/// compatible cochains: `ν∘f = f∘α`.
pub fn skew_cochain_basis(cx: &Complex, pf: u8) -> (SkewCoordinates, Vec<Vector>) {
    let sc = SkewCoordinates::new(cx, pf);
    let n = sc.len();
    let residuals: Vec<Vector> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = zero_vec(n);
            e[j] = Scalar::one();
            let c = skew_to_cochain(cx.algebra, cx.wedge(), &sc.to_map(&e), sc.dv);
            sub_vec(&cx.nu_applied(1, &c), &cx.twisted(1, &c))
        })
        .collect();
    let basis = nullspace_of_columns(&residuals, n);
    (sc, basis)
}

/// Basis of the skew compatible maps of parity `pf` with `δ¹f = 0`.
pub fn skew_cocycle_basis(cx: &Complex, pf: u8) -> (SkewCoordinates, Vec<Vector>) {
    let (sc, basis) = skew_cochain_basis(cx, pf);
    let images: Vec<Vector> = basis
        .par_iter()
        .map(|b| {
            let c = skew_to_cochain(cx.algebra, cx.wedge(), &sc.to_map(b), sc.dv);
            cx.coboundary_raw(1, pf, &c)
        })
        .collect();
    let kernel = nullspace_of_columns(&images, basis.len());
    let out = kernel.iter().map(|k| combine(&basis, k, sc.len())).collect();
    (sc, out)
}

pub fn skew_is_closed(cx: &Complex, pf: u8, map: &SkewMap) -> bool {
    let c = skew_to_cochain(cx.algebra, cx.wedge(), map, cx.rep.dim());
    is_zero_vec(&cx.coboundary_raw(1, pf, &c))
}

pub fn skew_is_compatible(cx: &Complex, map: &SkewMap) -> bool {
    let c = skew_to_cochain(cx.algebra, cx.wedge(), map, cx.rep.dim());
    cx.is_compatible(1, &c)
}

/// `Σ_k coeffs[k] · basis[k]`.
pub fn combine(basis: &[Vector], coeffs: &[Scalar], len: usize) -> Vector {
    let mut v = zero_vec(len);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            add_scaled(&mut v, c, b);
        }
    }
    v
}

/// Nullspace of the matrix whose columns are `cols` (`ncols` of them),
/// dropping identically zero rows first.
pub(crate) fn nullspace_of_columns(cols: &[Vector], ncols: usize) -> Vec<Vector> {
    let rows = cols.first().map_or(0, Vec::len);
    let live: Vec<usize> = (0..rows).filter(|&r| cols.iter().any(|c| !c[r].is_zero())).collect();
    let mut m = Matrix::zeros(live.len(), ncols);
    for (j, c) in cols.iter().enumerate() {
        for (i, &r) in live.iter().enumerate() {
            m[(i, j)] = c[r].clone();
        }
    }
    m.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{adjoint_rep, Representation};
    use crate::graded::examples::*;

    #[test]
    fn abelian_plane_trivial_module() {
        // b = abelian(2), a = K with zero action: every skew bilinear map is a cocycle.
        let b = abelian(2, 2, 0);
        let r = Representation::trivial(2, vec![0], Matrix::identity(1));
        let cx = Complex::new(&b, &r).unwrap();
        let (sc, z) = skew_cocycle_basis(&cx, 0);
        assert_eq!(sc.len(), 1);
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn cocycles_are_closed_and_compatible() {
        for g in [heisenberg(), super_heisenberg(), n4()] {
            let ad = adjoint_rep(&g);
            let cx = Complex::new(&g, &ad).unwrap();
            let (sc, z) = skew_cocycle_basis(&cx, 0);
            for v in &z {
                let m = sc.to_map(v);
                assert!(skew_is_closed(&cx, 0, &m));
                assert!(skew_is_compatible(&cx, &m));
                assert_eq!(sc.from_map(&m).as_ref(), Some(v));
            }
        }
    }
}
