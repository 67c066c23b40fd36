use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{FundamentalTable, Representation, WedgeBasis};
use crate::error::{NambuError, Result};
use crate::graded::{canonical_tuples, koszul, HomSuperAlgebra};
use crate::linalg::{add_scaled, is_zero_vec, zero_vec, Matrix, Vector};
use crate::scalar::Scalar;

/// Layout of the raw coefficient tensor of an m-cochain: index
/// `((…(x_1·W + x_2)…)·d + z)·dv + v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainShape {
    pub m: usize,
    pub w: usize,
    pub d: usize,
    pub dv: usize,
}

impl CochainShape {
    pub fn inputs(&self) -> usize {
        self.w.pow(self.m as u32) * self.d
    }

    pub fn len(&self) -> usize {
        self.inputs() * self.dv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn input_index(&self, xs: &[usize], z: usize) -> usize {
        let mut i = 0;
        for &x in xs {
            i = i * self.w + x;
        }
        i * self.d + z
    }

    pub fn index(&self, xs: &[usize], z: usize, v: usize) -> usize {
        self.input_index(xs, z) * self.dv + v
    }

    /// Inverse of `input_index`.
    pub fn decode(&self, mut input: usize) -> (Vec<usize>, usize) {
        let z = input % self.d;
        input /= self.d;
        let mut xs = vec![0; self.m];
        for k in (0..self.m).rev() {
            xs[k] = input % self.w;
            input /= self.w;
        }
        (xs, z)
    }

    fn mode_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.w; self.m];
        dims.push(self.d);
        dims.push(self.dv);
        dims
    }
}

/// `g(…, e_a at mode k, …) = Σ_b M[b][a] · f(…, e_b, …)`: substitutes `M·`
/// into one argument slot of a multilinear tensor.
pub fn apply_mode(t: &[Scalar], dims: &[usize], mode: usize, m: &Matrix) -> Vector {
    let s = dims[mode];
    assert_eq!((m.rows(), m.cols()), (s, s));
    let inner: usize = dims[mode + 1..].iter().product();
    let outer: usize = dims[..mode].iter().product();
    let mut out = zero_vec(t.len());
    let entries: Vec<(usize, usize, Scalar)> = (0..s)
        .flat_map(|b| (0..s).map(move |a| (b, a)))
        .filter(|&(b, a)| !m[(b, a)].is_zero())
        .map(|(b, a)| (b, a, m[(b, a)].clone()))
        .collect();
    for o in 0..outer {
        let base = o * s * inner;
        for (b, a, c) in &entries {
            let src = &t[base + b * inner..base + (b + 1) * inner];
            let dst = &mut out[base + a * inner..base + (a + 1) * inner];
            add_scaled(dst, c, src);
        }
    }
    out
}

/// A homogeneous m-cochain in raw coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub m: usize,
    pub parity: u8,
    pub coeffs: Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CohomologyDims {
    pub c: usize,
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

/// Everything needed to evaluate coboundaries for one (algebra,
/// representation) pair.
pub struct Complex<'a> {
    pub algebra: &'a HomSuperAlgebra,
    pub rep: &'a Representation,
    pub table: FundamentalTable,
}

impl<'a> Complex<'a> {
    pub fn new(algebra: &'a HomSuperAlgebra, rep: &'a Representation) -> Result<Self> {
        let table = FundamentalTable::new(algebra);
        if rep.rho.len() != table.wedge.len() {
            return Err(NambuError::DimensionMismatch(format!(
                "representation has {} matrices, wedge basis has {}",
                rep.rho.len(),
                table.wedge.len()
            )));
        }
        Ok(Complex { algebra, rep, table })
    }

    pub fn wedge(&self) -> &WedgeBasis {
        &self.table.wedge
    }

    pub fn shape(&self, m: usize) -> CochainShape {
        CochainShape { m, w: self.table.wedge.len(), d: self.algebra.dim(), dv: self.rep.dim() }
    }

    fn output_parity(&self, xs: &[usize], z: usize, pf: u8) -> u8 {
        let wp = &self.table.wedge.parity;
        xs.iter().fold(pf ^ self.algebra.parity[z], |acc, &x| acc ^ wp[x])
    }

    /// Raw coordinates admitted by the parity of the cochain.
    pub fn allowed(&self, m: usize, pf: u8) -> Vec<usize> {
        let sh = self.shape(m);
        let mut out = Vec::new();
        for input in 0..sh.inputs() {
            let (xs, z) = sh.decode(input);
            let p = self.output_parity(&xs, z, pf);
            for v in 0..sh.dv {
                if self.rep.parity[v] == p {
                    out.push(input * sh.dv + v);
                }
            }
        }
        out
    }

    /// `f(αX_1, …, αX_m, αz)` in raw coordinates.
    pub(crate) fn twisted(&self, m: usize, f: &[Scalar]) -> Vector {
        let sh = self.shape(m);
        let dims = sh.mode_dims();
        let mut t = f.to_vec();
        for k in 0..m {
            t = apply_mode(&t, &dims, k, &self.table.lambda);
        }
        apply_mode(&t, &dims, m, &self.algebra.alpha)
    }

    /// `ν∘f` in raw coordinates.
    pub(crate) fn nu_applied(&self, m: usize, f: &[Scalar]) -> Vector {
        let sh = self.shape(m);
        let mut out = zero_vec(f.len());
        for input in 0..sh.inputs() {
            let src = &f[input * sh.dv..(input + 1) * sh.dv];
            if is_zero_vec(src) {
                continue;
            }
            let val = self.rep.nu.mul_vec(src);
            out[input * sh.dv..(input + 1) * sh.dv].clone_from_slice(&val);
        }
        out
    }

    /// `ν∘f(X, z) = f(αX, αz)` holds exactly.
    pub fn is_compatible(&self, m: usize, f: &[Scalar]) -> bool {
        self.nu_applied(m, f) == self.twisted(m, f)
    }

    pub fn has_parity(&self, m: usize, pf: u8, f: &[Scalar]) -> bool {
        let sh = self.shape(m);
        (0..sh.inputs()).all(|input| {
            let (xs, z) = sh.decode(input);
            let p = self.output_parity(&xs, z, pf);
            (0..sh.dv).all(|v| self.rep.parity[v] == p || f[input * sh.dv + v].is_zero())
        })
    }

    /// Basis (raw coordinates) of the compatible m-cochains of parity `pf`.
    pub fn cochain_space(&self, m: usize, pf: u8) -> Vec<Vector> {
        let sh = self.shape(m);
        let cols = self.allowed(m, pf);
        let n = sh.len();
        let unit = |j: usize| {
            let mut v = zero_vec(n);
            v[j] = Scalar::one();
            v
        };
        if self.algebra.alpha.is_identity() && self.rep.nu.is_identity() {
            return cols.iter().map(|&j| unit(j)).collect();
        }
        // Column j of the constraint map is ν∘e_j − e_j∘(α…α).
        let images: Vec<Vector> = cols
            .par_iter()
            .map(|&j| {
                let e = unit(j);
                crate::linalg::sub_vec(&self.nu_applied(m, &e), &self.twisted(m, &e))
            })
            .collect();
        let mut live_rows: Vec<usize> =
            (0..n).filter(|&r| images.iter().any(|c| !c[r].is_zero())).collect();
        live_rows.sort_unstable();
        let mut mat = Matrix::zeros(live_rows.len(), cols.len());
        for (jj, img) in images.iter().enumerate() {
            for (ii, &r) in live_rows.iter().enumerate() {
                mat[(ii, jj)] = img[r].clone();
            }
        }
        mat.nullspace()
            .into_iter()
            .map(|c| {
                let mut v = zero_vec(n);
                for (jj, x) in c.into_iter().enumerate() {
                    v[cols[jj]] = x;
                }
                v
            })
            .collect()
    }

    /// `δ^m f` for a homogeneous cochain of parity `pf`, without checking
    /// that `f` is compatible.
    pub fn coboundary_raw(&self, m: usize, pf: u8, f: &[Scalar]) -> Vector {
        let sh = self.shape(m);
        assert_eq!(f.len(), sh.len(), "cochain length mismatch");
        let out_sh = self.shape(m + 1);
        let (w, d, dv) = (sh.w, sh.d, sh.dv);
        let n = self.algebra.n;
        let wp = &self.table.wedge.parity;
        let gp = &self.algebra.parity;
        let dims = sh.mode_dims();

        // h[p]: Λ on every wedge slot except p, α on z.  k: Λ on all wedge slots.
        let mut k_t = f.to_vec();
        for s in 0..m {
            k_t = apply_mode(&k_t, &dims, s, &self.table.lambda);
        }
        let h: Vec<Vector> = (0..m)
            .map(|p| {
                let mut t = f.to_vec();
                for s in 0..m {
                    if s != p {
                        t = apply_mode(&t, &dims, s, &self.table.lambda);
                    }
                }
                apply_mode(&t, &dims, m, &self.algebra.alpha)
            })
            .collect();

        let lam_m = self.table.lambda.pow(m as u32);
        let rho_m: Vec<Matrix> = (0..w).map(|c| self.rep.rho_of(&lam_m.col(c))).collect();

        // Last term: for each wedge element X, slot i of X and z, the matrix
        // ρ(α^m x^1 ∧ … ^i … ∧ α^m x^{n−1} ∧ α^m z) with the sign of moving
        // the module entry from slot i to the end; two variants by the parity
        // P = |f| + Σ|X_k| of the leading cochain arguments.
        let am = self.algebra.alpha.pow(m as u32);
        let am_cols: Vec<Vector> = (0..d).map(|j| am.col(j)).collect();
        let deg = n - 1;
        let mut last: Vec<Vec<Vec<[Matrix; 2]>>> = Vec::with_capacity(w);
        for c in 0..w {
            let xt = &self.table.wedge.elements[c];
            let mut per_z = Vec::with_capacity(d);
            for z in 0..d {
                let mut per_i = Vec::with_capacity(deg);
                for i in 0..deg {
                    let mut rest: Vec<&Vector> =
                        (0..deg).filter(|&k| k != i).map(|k| &am_cols[xt[k]]).collect();
                    rest.push(&am_cols[z]);
                    let r = self.rep.rho_of(&self.table.wedge.wedge_of(&rest));
                    let before = xt[..i].iter().fold(0u8, |acc, &k| acc ^ gp[k]);
                    let after = xt[i + 1..].iter().fold(gp[z], |acc, &k| acc ^ gp[k]);
                    let mk = |pp: u8| {
                        let pv = pp ^ gp[xt[i]];
                        let neg = (m % 2 == 1) ^ koszul(pp, before) ^ ((n - 1 - i) % 2 == 1) ^ koszul(pv, after);
                        if neg {
                            r.scale(&-Scalar::one())
                        } else {
                            r.clone()
                        }
                    };
                    per_i.push([mk(0), mk(1)]);
                }
                per_z.push(per_i);
            }
            last.push(per_z);
        }

        let results: Vec<Vector> = (0..out_sh.inputs())
            .into_par_iter()
            .map(|input| {
                let (xs, z) = out_sh.decode(input);
                let mut acc = zero_vec(dv);
                let mut rem = Vec::with_capacity(m);
                // T1: pairs i < j (0-based here, signs use 1-based i).
                for i in 0..=m {
                    for j in i + 1..=m {
                        let mid = xs[i + 1..j].iter().fold(0u8, |a, &x| a ^ wp[x]);
                        let neg = ((i + 1) % 2 == 1) ^ koszul(wp[xs[i]], mid);
                        let br = &self.table.bracket[xs[i]][xs[j]];
                        rem.clear();
                        rem.extend(xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x));
                        let p = j - 1;
                        let sign = Scalar::sign(neg);
                        for (c, coef) in br.iter().enumerate() {
                            if coef.is_zero() {
                                continue;
                            }
                            rem[p] = c;
                            let r = sh.input_index(&rem, z) * dv;
                            add_scaled(&mut acc, &(&sign * coef), &h[p][r..r + dv]);
                        }
                    }
                }
                // T2
                for i in 0..=m {
                    let after = xs[i + 1..].iter().fold(0u8, |a, &x| a ^ wp[x]);
                    let neg = ((i + 1) % 2 == 1) ^ koszul(wp[xs[i]], after);
                    let sign = Scalar::sign(neg);
                    rem.clear();
                    rem.extend(xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x));
                    let ad = &self.table.ad[xs[i]];
                    for wz in 0..d {
                        let coef = &ad[(wz, z)];
                        if coef.is_zero() {
                            continue;
                        }
                        let r = sh.input_index(&rem, wz) * dv;
                        add_scaled(&mut acc, &(&sign * coef), &k_t[r..r + dv]);
                    }
                }
                // T3
                for i in 0..=m {
                    let before = xs[..i].iter().fold(pf, |a, &x| a ^ wp[x]);
                    let neg = ((i + 2) % 2 == 1) ^ koszul(wp[xs[i]], before);
                    rem.clear();
                    rem.extend(xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x));
                    let r = sh.input_index(&rem, z) * dv;
                    let fv = &f[r..r + dv];
                    if is_zero_vec(fv) {
                        continue;
                    }
                    let val = rho_m[xs[i]].mul_vec(fv);
                    add_scaled(&mut acc, &Scalar::sign(neg), &val);
                }
                // T4
                let lead = &xs[..m];
                let pp = lead.iter().fold(pf, |a, &x| a ^ wp[x]) as usize;
                let xt = &self.table.wedge.elements[xs[m]];
                for i in 0..deg {
                    let r = sh.input_index(lead, xt[i]) * dv;
                    let fv = &f[r..r + dv];
                    if is_zero_vec(fv) {
                        continue;
                    }
                    let val = last[xs[m]][z][i][pp].mul_vec(fv);
                    add_scaled(&mut acc, &Scalar::one(), &val);
                }
                acc
            })
            .collect();
        results.into_iter().flatten().collect()
    }

    /// `δ^m f`, rejecting inputs that are not compatible cochains of parity `pf`.
    pub fn coboundary(&self, f: &Cochain) -> Result<Cochain> {
        let sh = self.shape(f.m);
        if f.coeffs.len() != sh.len() {
            return Err(NambuError::DimensionMismatch(format!(
                "cochain has {} coordinates, expected {}",
                f.coeffs.len(),
                sh.len()
            )));
        }
        if !self.has_parity(f.m, f.parity, &f.coeffs) {
            return Err(NambuError::NotACochain(format!("not homogeneous of parity {}", f.parity)));
        }
        if !self.is_compatible(f.m, &f.coeffs) {
            return Err(NambuError::NotACochain("ν∘f ≠ f∘α".into()));
        }
        let out = self.coboundary_raw(f.m, f.parity, &f.coeffs);
        if !self.is_compatible(f.m + 1, &out) || !self.has_parity(f.m + 1, f.parity, &out) {
            return Err(NambuError::VerificationFailed("coboundary left the cochain space".into()));
        }
        Ok(Cochain { m: f.m + 1, parity: f.parity, coeffs: out })
    }

    /// Basis of C^m and the matrix of δ^m in it (rows: raw coordinates of
    /// the (m+1)-cochain tensor).
    pub fn coboundary_matrix(&self, m: usize, pf: u8) -> (Vec<Vector>, Matrix) {
        let basis = self.cochain_space(m, pf);
        let cols: Vec<Vector> = basis.par_iter().map(|b| self.coboundary_raw(m, pf, b)).collect();
        let rows = self.shape(m + 1).len();
        (basis, Matrix::from_cols(rows, &cols))
    }

    /// First basis vector b of C^m with δ^{m+1}δ^m b ≠ 0, if any.
    pub fn delta_squared_witness(&self, m: usize, pf: u8) -> Option<usize> {
        let basis = self.cochain_space(m, pf);
        basis
            .par_iter()
            .enumerate()
            .find_map_first(|(i, b)| {
                let d1 = self.coboundary_raw(m, pf, b);
                let d2 = self.coboundary_raw(m + 1, pf, &d1);
                (!is_zero_vec(&d2)).then_some(i)
            })
    }

    /// `(dim C^m, dim Z^m, dim B^m, dim H^m)`; B^0 = 0. Also asserts B ⊆ Z.
    pub fn cohomology_dims(&self, m: usize, pf: u8) -> Result<CohomologyDims> {
        let (basis, dm) = self.coboundary_matrix(m, pf);
        let c = basis.len();
        let z = c - dm.rank();
        let b = if m == 0 {
            0
        } else {
            let (prev, dprev) = self.coboundary_matrix(m - 1, pf);
            let _ = prev;
            for j in 0..dprev.cols() {
                let col = dprev.col(j);
                if !is_zero_vec(&self.coboundary_raw(m, pf, &col)) {
                    return Err(NambuError::VerificationFailed(format!(
                        "B^{m} ⊄ Z^{m}: δ^{m}δ^{} of basis cochain {} is nonzero",
                        m - 1,
                        j + 1
                    )));
                }
            }
            dprev.rank()
        };
        if b > z {
            return Err(NambuError::VerificationFailed(format!("dim B^{m} = {b} > dim Z^{m} = {z}")));
        }
        Ok(CohomologyDims { c, z, b, h: z - b })
    }

    /// Cocycle basis in raw coordinates.
    pub fn cocycles(&self, m: usize, pf: u8) -> Vec<Vector> {
        let (basis, dm) = self.coboundary_matrix(m, pf);
        dm.nullspace()
            .into_iter()
            .map(|c| {
                let mut v = zero_vec(self.shape(m).len());
                for (ci, b) in c.iter().zip(&basis) {
                    add_scaled(&mut v, ci, b);
                }
                v
            })
            .collect()
    }
}

/// The 1-cochain `(X, z) ↦ θ(x_1, …, x_{n−1}, z)` of a map stored on
/// canonical n-tuples (values of length `dv`).
pub fn skew_to_cochain(
    a: &HomSuperAlgebra,
    wedge: &WedgeBasis,
    map: &BTreeMap<Vec<usize>, Vector>,
    dv: usize,
) -> Vector {
    let sh = CochainShape { m: 1, w: wedge.len(), d: a.dim(), dv };
    let mut out = zero_vec(sh.len());
    for (xi, x) in wedge.elements.iter().enumerate() {
        for z in 0..a.dim() {
            let mut t = x.clone();
            t.push(z);
            let (s, key) = crate::graded::straighten_unchecked(&t, &a.parity);
            if s == 0 {
                continue;
            }
            if let Some(v) = map.get(&key) {
                let base = sh.index(&[xi], z, 0);
                for (k, c) in v.iter().enumerate() {
                    out[base + k] = if s < 0 { -c } else { c.clone() };
                }
            }
        }
    }
    out
}

/// Reads a 1-cochain back on canonical n-tuples; `None` unless the cochain
/// is fully super-skew.
pub fn cochain_to_skew(
    a: &HomSuperAlgebra,
    wedge: &WedgeBasis,
    f: &[Scalar],
    dv: usize,
) -> Option<BTreeMap<Vec<usize>, Vector>> {
    let sh = CochainShape { m: 1, w: wedge.len(), d: a.dim(), dv };
    let mut map = BTreeMap::new();
    for t in canonical_tuples(&a.parity, a.n) {
        let xi = wedge.position(&t[..a.n - 1])?;
        let base = sh.index(&[xi], t[a.n - 1], 0);
        let v = f[base..base + dv].to_vec();
        if !is_zero_vec(&v) {
            map.insert(t, v);
        }
    }
    (skew_to_cochain(a, wedge, &map, dv) == f).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::adjoint_rep;
    use crate::graded::examples::*;

    #[test]
    fn abelian_plane_dims() {
        let g = abelian(2, 2, 0);
        let ad = adjoint_rep(&g);
        let cx = Complex::new(&g, &ad).unwrap();
        assert_eq!(cx.cochain_space(1, 0).len(), 8);
        assert_eq!(cx.cohomology_dims(1, 0).unwrap(), CohomologyDims { c: 8, z: 8, b: 0, h: 8 });
        let (_, d0) = cx.coboundary_matrix(0, 0);
        assert!(d0.is_zero());
    }

    #[test]
    fn zero_dimensional_module() {
        let g = heisenberg();
        let r = Representation::trivial(3, vec![], Matrix::zeros(0, 0));
        let cx = Complex::new(&g, &r).unwrap();
        assert_eq!(cx.cohomology_dims(1, 0).unwrap(), CohomologyDims { c: 0, z: 0, b: 0, h: 0 });
    }

    #[test]
    fn alpha_zero_nu_zero_full_space() {
        let g = abelian(2, 2, 0).with_alpha(Matrix::zeros(2, 2));
        let r = Representation::trivial(2, vec![0, 0], Matrix::zeros(2, 2));
        let cx = Complex::new(&g, &r).unwrap();
        assert_eq!(cx.cochain_space(1, 0).len(), 8);
    }

    #[test]
    fn delta_squared_vanishes_on_examples() {
        for g in [heisenberg(), super_heisenberg(), n4(), sl2(), odd_square(), a4(), ternary_solvable()] {
            let ad = adjoint_rep(&g);
            let cx = Complex::new(&g, &ad).unwrap();
            for m in 0..2 {
                for pf in 0..2 {
                    assert_eq!(cx.delta_squared_witness(m, pf), None, "{} m={m} pf={pf}", g.name);
                }
            }
        }
    }

    #[test]
    fn m0_formula() {
        // δ⁰θ(x, z) = −θ(x·z) + ρ(x)θ(z) + [θ(x), z] for a Lie algebra acting on itself.
        let g = heisenberg();
        let ad = adjoint_rep(&g);
        let cx = Complex::new(&g, &ad).unwrap();
        let sh0 = cx.shape(0);
        let mut theta = zero_vec(sh0.len());
        // θ(e1) = e1
        theta[sh0.index(&[], 0, 0)] = Scalar::one();
        let out = cx.coboundary_raw(0, 0, &theta);
        let sh1 = cx.shape(1);
        // (x=e1, z=e2): −θ(e3) + [e1, θ(e2)] + [θ(e1), e2] = e3
        let at = |x: usize, z: usize| out[sh1.index(&[x], z, 0)..sh1.index(&[x], z, 0) + 3].to_vec();
        assert_eq!(at(0, 1), crate::linalg::unit_vec(3, 2));
        // (x=e2, z=e1): [θ(e2), e1] + [e2, θ(e1)] = −e3
        assert_eq!(at(1, 0), crate::linalg::scale_vec(&-Scalar::one(), &crate::linalg::unit_vec(3, 2)));
    }

    #[test]
    fn skew_roundtrip() {
        let g = super_heisenberg();
        let wb = WedgeBasis::for_algebra(&g);
        let mut map = BTreeMap::new();
        map.insert(vec![1, 2], vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        let c = skew_to_cochain(&g, &wb, &map, 3);
        assert_eq!(cochain_to_skew(&g, &wb, &c, 3), Some(map));
    }
}
