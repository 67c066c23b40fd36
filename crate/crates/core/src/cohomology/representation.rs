use super::{FundamentalTable, WedgeBasis};
use crate::error::{NambuError, Result};
use crate::graded::{canonical_tuples, fmt_tuple, koszul, tuple_parity, HomSuperAlgebra};
use crate::linalg::{zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;

/// A graded representation `(V, ρ, ν)`: one matrix per wedge basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub name: String,
    pub parity: Vec<u8>,
    pub rho: Vec<Matrix>,
    pub nu: Matrix,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Zero action on V with twist ν.
    pub fn trivial(wedge_len: usize, parity: Vec<u8>, nu: Matrix) -> Self {
        let dv = parity.len();
        Representation { name: "trivial".into(), parity, rho: vec![Matrix::zeros(dv, dv); wedge_len], nu }
    }

    /// `Σ_c w_c ρ(c)`.
    pub fn rho_of(&self, w: &[Scalar]) -> Matrix {
        let dv = self.dim();
        let mut m = Matrix::zeros(dv, dv);
        for (c, x) in w.iter().enumerate() {
            if !x.is_zero() {
                m = m.add(&self.rho[c].scale(x));
            }
        }
        m
    }
}

/// `ρ(x) = ad x`, `ν = α`.
pub fn adjoint_rep(a: &HomSuperAlgebra) -> Representation {
    let wb = WedgeBasis::for_algebra(a);
    Representation {
        name: format!("ad({})", a.name),
        parity: a.parity.clone(),
        rho: wb.elements.iter().map(|t| a.ad(t)).collect(),
        nu: a.alpha.clone(),
    }
}

fn check_shapes(r: &Representation, wb: &WedgeBasis) -> Result<()> {
    let dv = r.dim();
    if r.rho.len() != wb.len() {
        return Err(NambuError::DimensionMismatch(format!(
            "representation has {} matrices, wedge basis has {} elements",
            r.rho.len(),
            wb.len()
        )));
    }
    if r.nu.rows() != dv || r.nu.cols() != dv || r.rho.iter().any(|m| m.rows() != dv || m.cols() != dv) {
        return Err(NambuError::DimensionMismatch(format!("representation matrices must be {dv}×{dv}")));
    }
    Ok(())
}

/// Grading, the two defining identities, and `ν∘ρ(x) = ρ(α x)∘ν`.
pub fn verify_representation(r: &Representation, a: &HomSuperAlgebra) -> Result<Report> {
    let t = FundamentalTable::new(a);
    let wb = &t.wedge;
    check_shapes(r, wb)?;
    let mut rep = Report::new(&format!("representation {} of {}", r.name, a.name));
    let pv = &r.parity;
    let dv = r.dim();
    let w = wb.len();

    let mut g = None;
    'g: for (c, m) in r.rho.iter().enumerate() {
        for i in 0..dv {
            for j in 0..dv {
                if !m[(i, j)].is_zero() && pv[i] != pv[j] ^ wb.parity[c] {
                    g = Some(format!("ρ{} maps v{} to v{} against the grading", fmt_tuple(&wb.elements[c]), j + 1, i + 1));
                    break 'g;
                }
            }
        }
    }
    if g.is_none() {
        'n: for i in 0..dv {
            for j in 0..dv {
                if pv[i] != pv[j] && !r.nu[(i, j)].is_zero() {
                    g = Some(format!("ν entry ({},{}) is odd", i + 1, j + 1));
                    break 'n;
                }
            }
        }
    }
    rep.push("grading", g);

    let rho_alpha: Vec<Matrix> = (0..w).map(|c| r.rho_of(&t.lambda.col(c))).collect();

    let mut e6 = None;
    'e6: for x in 0..w {
        for y in 0..w {
            let lhs = rho_alpha[x].mul(&r.rho[y]);
            let s = Scalar::sign(koszul(wb.parity[x], wb.parity[y]));
            let rhs = rho_alpha[y].mul(&r.rho[x]).scale(&s).add(&r.rho_of(&t.bracket[x][y]).mul(&r.nu));
            if lhs != rhs {
                e6 = Some(format!(
                    "x={} y={}: ρ(αx)ρ(y) = {:?} vs {:?}",
                    fmt_tuple(&wb.elements[x]),
                    fmt_tuple(&wb.elements[y]),
                    lhs,
                    rhs
                ));
                break 'e6;
            }
        }
    }
    rep.push("commutator identity", e6);

    let alpha_cols: Vec<Vector> = (0..a.dim()).map(|j| a.alpha.col(j)).collect();
    let n = a.n;
    let mut e7 = None;
    'e7: for x in canonical_tuples(&a.parity, n - 2) {
        let px = tuple_parity(&x, &a.parity);
        for y in canonical_tuples(&a.parity, n) {
            let py = tuple_parity(&y, &a.parity);
            let mut args: Vec<Vector> = x.iter().map(|&k| alpha_cols[k].clone()).collect();
            args.push(a.bracket_basis(&y));
            let lhs = r.rho_of(&wb.wedge_of(&args)).mul(&r.nu);
            let mut rhs = Matrix::zeros(dv, dv);
            for i in 0..n {
                let yi = y[i];
                let after = y[i + 1..].iter().fold(0u8, |acc, &k| acc ^ a.parity[k]);
                let neg = ((n - 1 - i) % 2 == 1) ^ koszul(px, py ^ a.parity[yi]) ^ koszul(a.parity[yi], after);
                let rest: Vec<&Vector> =
                    y.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &k)| &alpha_cols[k]).collect();
                let left = r.rho_of(&wb.wedge_of(&rest));
                let mut xt = x.clone();
                xt.push(yi);
                let right = match wb.lookup(&xt) {
                    None => continue,
                    Some((s, pos)) => {
                        if s < 0 {
                            r.rho[pos].scale(&-Scalar::one())
                        } else {
                            r.rho[pos].clone()
                        }
                    }
                };
                rhs = rhs.add(&left.mul(&right).scale(&Scalar::sign(neg)));
            }
            if lhs != rhs {
                e7 = Some(format!("x={} y={}: lhs {:?} vs rhs {:?}", fmt_tuple(&x), fmt_tuple(&y), lhs, rhs));
                break 'e7;
            }
        }
    }
    rep.push("bracket identity", e7);

    let tw = (0..w).find(|&c| r.nu.mul(&r.rho[c]) != rho_alpha[c].mul(&r.nu)).map(|c| {
        format!("x={}: νρ(x) ≠ ρ(αx)ν", fmt_tuple(&wb.elements[c]))
    });
    rep.push("twist compatibility", tw);
    Ok(rep)
}

/// One argument of a mixed bracket `[x_1, …, v, …, x_{n−1}]`.
#[derive(Clone, Debug)]
pub enum Slot {
    G(Vector),
    V(Vector),
}

fn split_parity(v: &[Scalar], parity: &[u8]) -> [Vector; 2] {
    let mut out = [zero_vec(v.len()), zero_vec(v.len())];
    for (i, x) in v.iter().enumerate() {
        out[parity[i] as usize][i] = x.clone();
    }
    out
}

/// Bracket with exactly one module argument in any slot: the module entry is
/// moved to the last slot with straightening signs and ρ is applied. Two
/// module arguments give 0.
pub fn module_bracket(r: &Representation, a: &HomSuperAlgebra, args: &[Slot]) -> Result<Vector> {
    if args.len() != a.n {
        return Err(NambuError::ArityMismatch { expected: a.n, got: args.len() });
    }
    let vslots: Vec<usize> = (0..args.len()).filter(|&i| matches!(args[i], Slot::V(_))).collect();
    match vslots.len() {
        0 => return Err(NambuError::Precondition("mixed bracket needs a module argument".into())),
        1 => {}
        2 => return Ok(zero_vec(r.dim())),
        _ => return Err(NambuError::Precondition("more than two module arguments".into())),
    }
    let k = vslots[0];
    let wb = WedgeBasis::for_algebra(a);
    let Slot::V(v) = &args[k] else { unreachable!() };
    let mut acc = zero_vec(r.dim());
    let gs: Vec<[Vector; 2]> = args
        .iter()
        .filter_map(|s| match s {
            Slot::G(x) => Some(split_parity(x, &a.parity)),
            Slot::V(_) => None,
        })
        .collect();
    let vs = split_parity(v, &r.parity);
    // Iterate over parity choices of the algebra arguments.
    let m = gs.len();
    for mask in 0..(1usize << m) {
        let comps: Vec<&Vector> = (0..m).map(|i| &gs[i][(mask >> i) & 1]).collect();
        if comps.iter().any(|c| c.iter().all(Scalar::is_zero)) {
            continue;
        }
        let after: u8 = (k..m).fold(0u8, |acc, i| acc ^ ((mask >> i) & 1) as u8);
        let rho = r.rho_of(&wb.wedge_of(&comps));
        for pv in 0..2u8 {
            let vp = &vs[pv as usize];
            if vp.iter().all(Scalar::is_zero) {
                continue;
            }
            let neg = ((a.n - 1 - k) % 2 == 1) ^ koszul(pv, after);
            let val = rho.mul_vec(vp);
            crate::linalg::add_scaled(&mut acc, &Scalar::sign(neg), &val);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::examples::*;
    use crate::linalg::unit_vec;

    #[test]
    fn adjoint_examples() {
        let ab = adjoint_rep(&abelian(2, 2, 0));
        assert!(ab.rho.iter().all(Matrix::is_zero));
        let h = adjoint_rep(&heisenberg());
        assert_eq!(h.rho[0][(2, 1)], Scalar::one());
        assert_eq!(h.rho[0].rank(), 1);
        let n = n4();
        let an = adjoint_rep(&n);
        let wb = WedgeBasis::for_algebra(&n);
        let m = &an.rho[wb.position(&[0, 1]).unwrap()];
        assert_eq!(m[(3, 2)], Scalar::one());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn adjoint_is_representation_for_valid_algebras() {
        for g in [heisenberg(), super_heisenberg(), n4(), a4(), sl2(), odd_square(), ternary_solvable()] {
            let r = verify_representation(&adjoint_rep(&g), &g).unwrap();
            assert!(r.all_passed(), "{}: {r}", g.name);
        }
    }

    #[test]
    fn adjoint_of_broken_algebra_fails() {
        let g = broken_heisenberg();
        let r = verify_representation(&adjoint_rep(&g), &g).unwrap();
        assert!(!r.passed("commutator identity") || !r.passed("bracket identity"));
    }

    #[test]
    fn zero_rho_passes() {
        let g = heisenberg();
        let r = Representation::trivial(3, vec![0, 1], Matrix::identity(2));
        assert!(verify_representation(&r, &g).unwrap().all_passed());
    }

    #[test]
    fn module_bracket_signs() {
        let g = n4();
        let ad = adjoint_rep(&g);
        let e = |i| unit_vec(4, i);
        // [v, x1, x2] = [x1, x2, v] for even entries and n = 3 (two swaps)
        let v = module_bracket(&ad, &g, &[Slot::V(e(2)), Slot::G(e(0)), Slot::G(e(1))]).unwrap();
        assert_eq!(v, e(3));
        let v = module_bracket(&ad, &g, &[Slot::G(e(0)), Slot::V(e(2)), Slot::G(e(1))]).unwrap();
        assert_eq!(v, crate::linalg::scale_vec(&-Scalar::one(), &e(3)));
        let z = module_bracket(&ad, &g, &[Slot::V(e(2)), Slot::V(e(0)), Slot::G(e(1))]).unwrap();
        assert!(z.iter().all(Scalar::is_zero));
        assert!(module_bracket(&ad, &g, &[Slot::V(e(2)), Slot::V(e(0)), Slot::V(e(1))]).is_err());
    }
}
