use super::{canonical_tuples, vector_parity, verify_morphism, HomSuperAlgebra};
use crate::error::{NambuError, Result};
use crate::linalg::{zero_vec, Matrix, Vector};
use crate::subspace::Subspace;

/// True when the subspace is spanned by parity-homogeneous vectors. The rref
/// basis of a graded subspace is automatically homogeneous.
pub fn is_graded(h: &Subspace, parity: &[u8]) -> bool {
    h.basis().iter().all(|v| vector_parity(v, parity).is_some())
}

fn nondecreasing_tuples(count: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(count: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..count {
            cur.push(i);
            rec(count, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(count, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Span of all brackets of homogeneous spanning vectors taken slotwise from
/// `slots` (first slot from `first`, the rest from `rest`).
fn bracket_span(a: &HomSuperAlgebra, first: &Subspace, rest: &Subspace) -> Subspace {
    let d = a.dim();
    let mut vals = Vec::new();
    let rb = rest.basis();
    for u in first.basis() {
        for t in nondecreasing_tuples(rb.len(), a.n - 1) {
            let mut args: Vec<&Vector> = vec![u];
            args.extend(t.iter().map(|&i| &rb[i]));
            let v = a.eval(&args);
            if v.iter().any(|x| !x.is_zero()) {
                vals.push(v);
            }
        }
    }
    Subspace::span(d, &vals)
}

pub fn is_hom_subalgebra(h: &Subspace, a: &HomSuperAlgebra) -> Result<bool> {
    check_graded(h, a)?;
    if !h.is_invariant(&a.alpha) {
        return Ok(false);
    }
    let b = h.basis();
    for t in nondecreasing_tuples(b.len(), a.n) {
        let args: Vec<&Vector> = t.iter().map(|&i| &b[i]).collect();
        if !h.contains(&a.eval(&args)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// α(H) ⊆ H and [H, g, …, g] ⊆ H.
pub fn is_hom_ideal(h: &Subspace, a: &HomSuperAlgebra) -> Result<bool> {
    check_graded(h, a)?;
    if !h.is_invariant(&a.alpha) {
        return Ok(false);
    }
    let d = a.dim();
    for j in canonical_tuples(&a.parity, a.n - 1) {
        for u in h.basis() {
            let mut args: Vec<Vector> = vec![u.clone()];
            args.extend(j.iter().map(|&i| crate::linalg::unit_vec(d, i)));
            if !h.contains(&a.eval(&args)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_graded(h: &Subspace, a: &HomSuperAlgebra) -> Result<()> {
    if h.ambient() != a.dim() {
        return Err(NambuError::DimensionMismatch(format!(
            "subspace of ℚ^{} in algebra of dimension {}",
            h.ambient(),
            a.dim()
        )));
    }
    if !is_graded(h, &a.parity) {
        return Err(NambuError::NonGradedSubspace);
    }
    Ok(())
}

/// Terms of a descending series and the least index with a zero term
/// (`None` when the series stabilises at a nonzero subspace).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub terms: Vec<Subspace>,
    pub length: Option<usize>,
}

fn run_series(a: &HomSuperAlgebra, step: impl Fn(&Subspace) -> Subspace) -> Series {
    let mut terms = vec![Subspace::full(a.dim())];
    loop {
        let last = terms.last().unwrap();
        if last.is_zero() {
            let k = terms.len() - 1;
            return Series { terms, length: Some(k) };
        }
        let next = step(last);
        if &next == last {
            return Series { terms, length: None };
        }
        terms.push(next);
    }
}

/// `g^0 = g`, `g^{m+1} = [g^m, g, …, g]`.
pub fn lower_central_series(a: &HomSuperAlgebra) -> Series {
    let full = Subspace::full(a.dim());
    run_series(a, |t| bracket_span(a, t, &full))
}

/// `g^(0) = g`, `g^(m+1) = [g^(m), …, g^(m)]`.
pub fn derived_series(a: &HomSuperAlgebra) -> Series {
    run_series(a, |t| bracket_span(a, t, t))
}

/// Block bracket and block twist on `a ⊕ b`.
pub fn direct_sum(a: &HomSuperAlgebra, b: &HomSuperAlgebra) -> Result<HomSuperAlgebra> {
    if a.n != b.n {
        return Err(NambuError::ArityMismatch { expected: a.n, got: b.n });
    }
    let (da, db) = (a.dim(), b.dim());
    let mut parity = a.parity.clone();
    parity.extend(&b.parity);
    let mut g = HomSuperAlgebra::abelian_with_parity(&format!("{}⊕{}", a.name, b.name), a.n, parity)
        .with_alpha(a.alpha.direct_sum(&b.alpha));
    for (k, v) in &a.bracket {
        let mut w = v.clone();
        w.extend(zero_vec(db));
        g.bracket.insert(k.clone(), w);
    }
    for (k, v) in &b.bracket {
        let key: Vec<usize> = k.iter().map(|i| i + da).collect();
        let mut w = zero_vec(da);
        w.extend(v.iter().cloned());
        g.bracket.insert(key, w);
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: HomSuperAlgebra,
    /// `π : g → g/I`, rows indexed by the complement.
    pub projection: Matrix,
    /// Standard basis vectors of g whose images form the basis of g/I.
    pub complement: Vec<usize>,
}

/// Projection onto the coordinates of the lex-first standard complement of I.
pub fn complement_projection(i: &Subspace) -> (Vec<usize>, Matrix) {
    let comp = i.standard_complement();
    let piv = i.pivots();
    let d = i.ambient();
    let mut pi = Matrix::zeros(comp.len(), d);
    for (j, &c) in comp.iter().enumerate() {
        pi[(j, c)] = crate::scalar::Scalar::one();
    }
    for (r, &p) in i.basis().iter().zip(&piv) {
        for (j, &c) in comp.iter().enumerate() {
            pi[(j, p)] = -&r[c];
        }
    }
    (comp, pi)
}

pub fn quotient(a: &HomSuperAlgebra, i: &Subspace) -> Result<Quotient> {
    if !is_hom_ideal(i, a)? {
        return Err(NambuError::NotAnIdeal);
    }
    let (comp, pi) = complement_projection(i);
    let parity: Vec<u8> = comp.iter().map(|&c| a.parity[c]).collect();
    let lift = |j: usize| comp[j];
    let k = comp.len();
    let mut alpha = Matrix::zeros(k, k);
    for j in 0..k {
        let col = pi.mul_vec(&a.alpha.col(lift(j)));
        for (r, v) in col.into_iter().enumerate() {
            alpha[(r, j)] = v;
        }
    }
    let mut q = HomSuperAlgebra::abelian_with_parity(&format!("{}/I", a.name), a.n, parity.clone())
        .with_alpha(alpha);
    for t in canonical_tuples(&parity, a.n) {
        let lifted: Vec<usize> = t.iter().map(|&j| lift(j)).collect();
        let v = pi.mul_vec(&a.bracket_basis(&lifted));
        if v.iter().any(|x| !x.is_zero()) {
            q.bracket.insert(t, v);
        }
    }
    let m = verify_morphism(&pi, a, &q)?;
    if !m.all_passed() {
        return Err(NambuError::VerificationFailed(format!("projection is not a morphism:\n{m}")));
    }
    Ok(Quotient { algebra: q, projection: pi, complement: comp })
}

/// Isomorphic copy in the basis given by the columns of `p⁻¹`, i.e. new
/// coordinates are `p · old`.
pub fn transform_basis(a: &HomSuperAlgebra, p: &Matrix) -> Result<HomSuperAlgebra> {
    let pinv = p
        .inverse()
        .ok_or_else(|| NambuError::Precondition("change of basis is singular".into()))?;
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            if a.parity[i] != a.parity[j] && !p[(i, j)].is_zero() {
                return Err(NambuError::Precondition("change of basis is not even".into()));
            }
        }
    }
    let cols: Vec<Vector> = (0..a.dim()).map(|j| pinv.col(j)).collect();
    let mut out = HomSuperAlgebra::abelian_with_parity(&a.name, a.n, a.parity.clone())
        .with_alpha(p.mul(&a.alpha).mul(&pinv));
    for t in canonical_tuples(&a.parity, a.n) {
        let args: Vec<&Vector> = t.iter().map(|&k| &cols[k]).collect();
        let v = p.mul_vec(&a.eval(&args));
        if v.iter().any(|x| !x.is_zero()) {
            out.bracket.insert(t, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::examples::*;
    use crate::graded::verify_algebra;
    use crate::linalg::unit_vec;
    use crate::scalar::Scalar;

    #[test]
    fn heisenberg_ideals() {
        let h = heisenberg();
        assert!(is_hom_ideal(&Subspace::zero(3), &h).unwrap());
        assert!(is_hom_ideal(&Subspace::full(3), &h).unwrap());
        assert!(is_hom_ideal(&Subspace::span(3, &[unit_vec(3, 2)]), &h).unwrap());
        assert!(!is_hom_ideal(&Subspace::span(3, &[unit_vec(3, 0)]), &h).unwrap());
        assert!(is_hom_subalgebra(&Subspace::span(3, &[unit_vec(3, 0)]), &h).unwrap());
    }

    #[test]
    fn non_graded_subspace_rejected() {
        let sh = super_heisenberg();
        let v = vec![Scalar::one(), Scalar::one(), Scalar::zero()];
        assert_eq!(is_hom_ideal(&Subspace::span(3, &[v]), &sh), Err(NambuError::NonGradedSubspace));
    }

    #[test]
    fn series_lengths() {
        assert_eq!(lower_central_series(&abelian(2, 3, 0)).length, Some(1));
        let h = lower_central_series(&heisenberg());
        assert_eq!(h.length, Some(2));
        assert_eq!(h.terms[1], Subspace::span(3, &[unit_vec(3, 2)]));
        assert_eq!(derived_series(&heisenberg()).length, Some(2));
        assert_eq!(lower_central_series(&n4()).length, Some(2));
        assert_eq!(lower_central_series(&sl2()).length, None);
        assert_eq!(derived_series(&ternary_solvable()).length, Some(2));
        assert_eq!(lower_central_series(&ternary_solvable()).length, None);
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&abelian(2, 1, 0), &abelian(2, 2, 0)).unwrap();
        assert!(s.is_abelian() && s.dim() == 3);
        let h = direct_sum(&heisenberg(), &abelian(2, 1, 0)).unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(lower_central_series(&h).length, Some(2));
        let emb = Subspace::span(4, &[unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 2)]);
        assert!(is_hom_ideal(&emb, &h).unwrap());
        assert!(verify_algebra(&h).all_passed());
    }

    #[test]
    fn quotient_examples() {
        let h = heisenberg();
        let q0 = quotient(&h, &Subspace::zero(3)).unwrap();
        assert_eq!(q0.algebra.bracket, h.bracket);
        let q = quotient(&h, &Subspace::span(3, &[unit_vec(3, 2)])).unwrap();
        assert!(q.algebra.is_abelian() && q.algebra.dim() == 2);
        let qf = quotient(&h, &Subspace::full(3)).unwrap();
        assert_eq!(qf.algebra.dim(), 0);
        assert_eq!(
            quotient(&h, &Subspace::span(3, &[unit_vec(3, 0)])).unwrap_err(),
            NambuError::NotAnIdeal
        );
        // kernel of π is exactly I
        let i = Subspace::span(3, &[unit_vec(3, 2)]);
        let ker = Subspace::span(3, &q.projection.nullspace());
        assert_eq!(ker, i);
    }

    #[test]
    fn transform_preserves_validity() {
        let p = Matrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]]);
        let t = transform_basis(&heisenberg(), &p).unwrap();
        assert!(verify_algebra(&t).all_passed());
        assert!(verify_morphism(&p, &heisenberg(), &t).unwrap().all_passed());
    }
}
