//! Recognising a metric algebra as a T*-extension of a quotient.

use super::isotropic::{canonical_isotropic_ideal, extend_to_maximal_isotropic};
use super::{coadjoint, cyclic_violation, theta_closed, tstar_raw};
use crate::cohomology::SkewMap;
use crate::error::{NambuError, Result};
use crate::graded::{
    canonical_tuples, is_hom_ideal, lower_central_series, quotient, vector_parity, verify_algebra, verify_metric,
    verify_morphism, HomSuperAlgebra, MetricAlgebra,
};
use crate::linalg::{add_scaled, add_vec, is_zero_vec, scale_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub g1: HomSuperAlgebra,
    pub theta: SkewMap,
    /// Isomorphism `g → T*_θ(g1)`.
    pub phi: Matrix,
    pub tstar: MetricAlgebra,
    pub report: Report,
}

fn homogeneous_basis(i: &Subspace, parity: &[u8]) -> Result<Vec<(Vector, u8)>> {
    i.basis()
        .iter()
        .map(|v| vector_parity(v, parity).map(|p| (v.clone(), p)).ok_or(NambuError::NonGradedSubspace))
        .collect()
}

/// Lifts `x_j = e_{c_j} + L_j` (`L_j ∈ I`, same parity) spanning an
/// isotropic α-stable complement of I.
fn isotropic_complement(m: &MetricAlgebra, i: &Subspace, comp: &[usize], qalpha: &Matrix) -> Result<Vec<Vector>> {
    let a = &m.algebra;
    let d = m.dim();
    let ib = homogeneous_basis(i, &a.parity)?;
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for (j, &c) in comp.iter().enumerate() {
        for (k, (_, p)) in ib.iter().enumerate() {
            if *p == a.parity[c] {
                unknowns.push((j, k));
            }
        }
    }
    let nu = unknowns.len();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    let e = |c: usize| unit_vec(d, c);
    for (j, &cj) in comp.iter().enumerate() {
        for (l, &cl) in comp.iter().enumerate() {
            let mut row = zero_vec(nu);
            for (u, &(jj, k)) in unknowns.iter().enumerate() {
                if jj == j {
                    row[u] = &row[u] + &m.pair(&ib[k].0, &e(cl));
                }
                if jj == l {
                    row[u] = &row[u] + &m.pair(&e(cj), &ib[k].0);
                }
            }
            rows.push(row);
            rhs.push(-&m.pair(&e(cj), &e(cl)));
        }
    }
    let alpha_i: Vec<Vector> = ib.iter().map(|(v, _)| a.alpha.mul_vec(v)).collect();
    for (j, &cj) in comp.iter().enumerate() {
        // u_j = α e_{c_j} − Σ_l A[l, j] e_{c_l} lies in I.
        let mut u = a.alpha.col(cj);
        for (l, &cl) in comp.iter().enumerate() {
            let c = &qalpha[(l, j)];
            if !c.is_zero() {
                u[cl] = &u[cl] - c;
            }
        }
        for r in 0..d {
            let mut row = zero_vec(nu);
            for (x, &(jj, k)) in unknowns.iter().enumerate() {
                let mut v = if jj == j { alpha_i[k][r].clone() } else { Scalar::zero() };
                v = &v - &(&qalpha[(jj, j)] * &ib[k].0[r]);
                row[x] = v;
            }
            rows.push(row);
            rhs.push(-&u[r]);
        }
    }
    let sys = Matrix::from_rows_with_cols(rows, nu);
    let sol = sys
        .solve(&rhs)
        .ok_or_else(|| NambuError::ComplementNotFound(format!("{} equations in {nu} unknowns", sys.rows())))?;
    let mut lifts: Vec<Vector> = comp.iter().map(|&c| e(c)).collect();
    for (x, &(j, k)) in unknowns.iter().enumerate() {
        if !sol[x].is_zero() {
            add_scaled(&mut lifts[j], &sol[x], &ib[k].0);
        }
    }
    Ok(lifts)
}

/// For an isotropic Hom-ideal I of half the dimension, builds θ on `g/I` and
/// an isometric isomorphism `g → T*_θ(g/I)`.
pub fn reconstruct_as_tstar(m: &MetricAlgebra, i: &Subspace) -> Result<Reconstruction> {
    let a = &m.algebra;
    let d = m.dim();
    if d % 2 == 1 {
        return Err(NambuError::OddDimension);
    }
    if 2 * i.dim() != d {
        return Err(NambuError::NotHalfDimensional(format!("dim I = {}, dim g = {d}", i.dim())));
    }
    if !i.is_isotropic(&m.gram) {
        return Err(NambuError::NotHalfDimensional("I is not isotropic".into()));
    }
    if !is_hom_ideal(i, a)? {
        return Err(NambuError::NotAnIdeal);
    }
    if !super::isotropic_half_ideal_abelian_check(m, i)? {
        return Err(NambuError::VerificationFailed("[g, …, g, I, I] ≠ 0".into()));
    }
    let q = quotient(a, i)?;
    let g1 = q.algebra.clone();
    let h = d / 2;
    let lifts = isotropic_complement(m, i, &q.complement, &g1.alpha)?;
    // F(z)_j = ⟨z, x_j⟩.
    let f = |z: &[Scalar]| -> Vector { lifts.iter().map(|x| m.pair(z, x)).collect() };
    // Coordinates of g in the basis (x_1, …, x_h, i_1, …, i_h).
    let mut cols = lifts.clone();
    cols.extend(i.basis().iter().cloned());
    let b = Matrix::from_cols(d, &cols);
    let binv = b.inverse().ok_or_else(|| NambuError::VerificationFailed("lifts and I are dependent".into()))?;
    let mut theta = SkewMap::new();
    for t in canonical_tuples(&g1.parity, a.n) {
        let args: Vec<&Vector> = t.iter().map(|&k| &lifts[k]).collect();
        let br = a.eval(&args);
        let c = binv.mul_vec(&br);
        let mut ipart = zero_vec(d);
        for (k, iv) in i.basis().iter().enumerate() {
            add_scaled(&mut ipart, &c[h + k], iv);
        }
        let th = f(&ipart);
        if !is_zero_vec(&th) {
            theta.insert(t, th);
        }
    }
    let mut block = Matrix::zeros(d, d);
    for j in 0..h {
        block[(j, j)] = Scalar::one();
    }
    for (k, iv) in i.basis().iter().enumerate() {
        for (j, v) in f(iv).into_iter().enumerate() {
            block[(h + j, h + k)] = v;
        }
    }
    let phi = block.mul(&binv);

    let mut report = Report::new(&format!("{} as a T*-extension", a.name));
    let co = coadjoint(&g1);
    report.push("coadjoint of g/I", co.witness.clone());
    report.push("θ closed", (!theta_closed(&g1, &theta)?).then(|| "δθ ≠ 0 or θ not compatible".into()));
    report.push("θ cyclic", cyclic_violation(&g1, &theta));
    let tstar = tstar_raw(&g1, &theta)?;
    let ax = verify_algebra(&tstar.algebra);
    report.push("T* axioms", ax.first_failure().map(|c| c.name.clone()));
    let mor = verify_morphism(&phi, a, &tstar.algebra)?;
    report.push("φ morphism", mor.first_failure().map(|c| c.name.clone()));
    let iso = phi.transpose().mul(&tstar.gram).mul(&phi) == m.gram;
    report.push("φ isometry", (!iso).then(|| "φᵀ G φ ≠ G".into()));
    report.push("φ invertible", phi.inverse().is_none().then(|| "singular".into()));
    if !report.all_passed() {
        return Err(NambuError::VerificationFailed(format!("reconstruction post-checks:\n{report}")));
    }
    Ok(Reconstruction { g1, theta, phi, tstar, report })
}

/// `z ∈ I^⊥` with `⟨z, z⟩ = −1` and `αz ≡ μz mod I`.
#[derive(Clone, Debug)]
pub struct LinePartner {
    pub z: Vector,
    pub mu: Scalar,
}

/// Searches the rational α-eigenspaces of `I^⊥/I` (even part) for a vector
/// of norm −1.
pub fn find_line_partner(m: &MetricAlgebra, i: &Subspace) -> Result<LinePartner> {
    let a = &m.algebra;
    let d = m.dim();
    if !i.is_isotropic(&m.gram) || !i.is_invariant(&a.alpha) {
        return Err(NambuError::Precondition("I is not isotropic and α-stable".into()));
    }
    let perp = i.orthogonal(&m.gram);
    if !perp.is_invariant(&a.alpha) {
        return Err(NambuError::Precondition("α does not preserve I^⊥".into()));
    }
    let mut span = i.clone();
    let mut lifts: Vec<Vector> = Vec::new();
    for v in perp.basis() {
        if a.parity.iter().zip(v).all(|(&p, x)| p == 0 || x.is_zero()) && !span.contains(v) {
            span = span.sum(&Subspace::span(d, std::slice::from_ref(v)));
            lifts.push(v.clone());
        }
    }
    if lifts.is_empty() {
        return Err(NambuError::Precondition("I^⊥/I has no even part".into()));
    }
    let r = lifts.len();
    let mut cols = lifts.clone();
    cols.extend(i.basis().iter().cloned());
    let bmat = Matrix::from_cols(d, &cols);
    let mut amat = Matrix::zeros(r, r);
    for (j, v) in lifts.iter().enumerate() {
        let c = bmat.solve(&a.alpha.mul_vec(v)).expect("α preserves the even part of I^⊥");
        for k in 0..r {
            amat[(k, j)] = c[k].clone();
        }
    }
    let mut roots = crate::linalg::rational_roots(&amat.char_poly());
    roots.sort();
    let mut first_q = None;
    for mu in roots {
        let eig: Vec<Vector> = amat
            .sub(&Matrix::identity(r).scale(&mu))
            .nullspace()
            .iter()
            .map(|c| crate::cohomology::combine(&lifts, c, d))
            .collect();
        if let Some(z) = norm_minus_one(m, &eig, &mut first_q) {
            return Ok(LinePartner { z, mu });
        }
    }
    let q = first_q.ok_or_else(|| {
        NambuError::NoStableIsotropicVector("no rational α-eigenvector in I^⊥/I".into())
    })?;
    Err(NambuError::NeedsFieldExtension {
        discriminant: -&q.recip().expect("nonzero norm"),
        context: "scaling z to ⟨z, z⟩ = −1".into(),
    })
}

/// A vector of norm −1 in the span of `vs`, via an orthogonal basis; records
/// the first nonzero norm seen.
fn norm_minus_one(m: &MetricAlgebra, vs: &[Vector], first_q: &mut Option<Scalar>) -> Option<Vector> {
    let mut u: Vec<Vector> = vs.to_vec();
    for k in 0..u.len() {
        let qk = m.pair(&u[k], &u[k]);
        if qk.is_zero() {
            // A hyperbolic partner w (⟨u,w⟩ = 1) gives ⟨w + tu, w + tu⟩ = q_w + 2t.
            let w = u.iter().find(|w| !m.pair(&u[k], w).is_zero())?;
            let w = scale_vec(&m.pair(&u[k], w).recip()?, w);
            let t = &(-&(Scalar::one() + m.pair(&w, &w))) / &Scalar::from_int(2);
            return Some(add_vec(&w, &scale_vec(&t, &u[k])));
        }
        first_q.get_or_insert_with(|| qk.clone());
        if let Some(s) = (-&qk.recip()?).rational_sqrt() {
            return Some(scale_vec(&s, &u[k]));
        }
        for j in k + 1..u.len() {
            let c = &m.pair(&u[j], &u[k]) / &qk;
            let uk = u[k].clone();
            add_scaled(&mut u[j], &-c, &uk);
        }
    }
    None
}

/// `g′ = g ⊕ K·a` (a even, central, `⟨a, a⟩ = 1`, `α′(a) = μa`) and the
/// isotropic `I′ = I + K(a + z)`.
#[derive(Clone, Debug)]
pub struct Adjoined {
    pub algebra: MetricAlgebra,
    pub ideal: Subspace,
    pub partner: LinePartner,
}

pub fn adjoin_line(m: &MetricAlgebra, i: &Subspace) -> Result<Adjoined> {
    let partner = find_line_partner(m, i)?;
    let a = &m.algebra;
    let d = m.dim();
    let mut parity = a.parity.clone();
    parity.push(0);
    let mut out = HomSuperAlgebra::abelian_with_parity(&format!("{} ⊕ K", a.name), a.n, parity)
        .with_alpha(a.alpha.direct_sum(&Matrix::diagonal(std::slice::from_ref(&partner.mu))));
    for (t, v) in &a.bracket {
        let mut w = v.clone();
        w.push(Scalar::zero());
        out.bracket.insert(t.clone(), w);
    }
    let algebra = MetricAlgebra::new(out, m.gram.direct_sum(&Matrix::identity(1)));
    let pad = |v: &Vector| {
        let mut w = v.clone();
        w.push(Scalar::zero());
        w
    };
    let mut vecs: Vec<Vector> = i.basis().iter().map(pad).collect();
    vecs.push(add_vec(&pad(&partner.z), &unit_vec(d + 1, d)));
    let ideal = Subspace::span(d + 1, &vecs);
    if !ideal.is_isotropic(&algebra.gram) || !ideal.is_invariant(&algebra.algebra.alpha) {
        return Err(NambuError::VerificationFailed("I + K(a+z) is not isotropic and α-stable".into()));
    }
    Ok(Adjoined { algebra, ideal, partner })
}

/// Output of the full decomposition of a nilpotent metric algebra.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub g1: HomSuperAlgebra,
    pub theta: SkewMap,
    pub phi: Matrix,
    /// The half-dimensional isotropic ideal used (in the adjoined algebra when odd).
    pub ideal: Subspace,
    pub checks: Report,
    pub odd: bool,
    /// Nilpotent lengths of g and g1.
    pub lengths: (usize, usize),
}

pub fn decompose(m: &MetricAlgebra) -> Result<Certificate> {
    let a = &m.algebra;
    let d = m.dim();
    let v = verify_algebra(a);
    if !v.all_passed() {
        return Err(NambuError::Precondition(format!("not a Hom-Nambu-Lie superalgebra:\n{v}")));
    }
    let mr = verify_metric(a, &m.gram);
    if !mr.all_passed() {
        return Err(NambuError::Precondition(format!("form is not a valid metric:\n{mr}")));
    }
    let k = lower_central_series(a).length.ok_or(NambuError::NotNilpotent)?;
    if a.alpha.inverse().is_none() {
        return Err(NambuError::Precondition("α is not surjective".into()));
    }
    let j = canonical_isotropic_ideal(m).map_err(|e| e.at("canonical isotropic ideal"))?;
    let ideal = extend_to_maximal_isotropic(m, &j).map_err(|e| e.at("maximal isotropic extension"))?;
    let mut checks = Report::new(&format!("decomposition of {}", a.name));
    checks.pass("J isotropic Hom-ideal");
    checks.pass("maximal isotropic extension");
    let odd = d % 2 == 1;
    let (target, ideal) = if odd {
        let adj = adjoin_line(m, &ideal).map_err(|e| e.at("adjoin line"))?;
        checks.pass("line partner");
        (adj.algebra, adj.ideal)
    } else {
        (m.clone(), ideal)
    };
    let rec = reconstruct_as_tstar(&target, &ideal).map_err(|e| e.at("reconstruction"))?;
    checks.merge(rec.report);
    let k1 = lower_central_series(&rec.g1).length.ok_or(NambuError::NotNilpotent)?;
    let bound = k.div_ceil(2);
    checks.push("length of g/I", (k1 > bound).then(|| format!("{k1} > ⌊({k}+1)/2⌋ = {bound}")));
    if !checks.all_passed() {
        return Err(NambuError::VerificationFailed(format!("decomposition post-checks:\n{checks}")));
    }
    Ok(Certificate { g1: rec.g1, theta: rec.theta, phi: rec.phi, ideal, checks, odd, lengths: (k, k1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::examples::*;
    use crate::tstar::{embedded_dual, tstar_extend};

    #[test]
    fn tstar_zero_heisenberg_reconstructs_from_embedded_dual() {
        let t = tstar_extend(&heisenberg(), &SkewMap::new()).unwrap().result;
        let r = reconstruct_as_tstar(&t, &embedded_dual(3)).unwrap();
        assert!(r.report.all_passed());
        assert_eq!(r.g1.dim(), 3);
        assert!(r.theta.is_empty());
    }

    #[test]
    fn decompose_tstar_zero_heisenberg() {
        let t = tstar_extend(&heisenberg(), &SkewMap::new()).unwrap().result;
        let c = decompose(&t).unwrap();
        assert!(c.checks.all_passed(), "{}", c.checks);
        assert!(!c.odd);
        assert_eq!(c.g1.dim(), 3);
        assert!(c.lengths.1 <= 1);
    }

    #[test]
    fn odd_dimensional_abelian_needs_square_root_of_minus_one() {
        let g = abelian(2, 1, 0);
        let m = MetricAlgebra::new(g, Matrix::identity(1));
        let e = decompose(&m).unwrap_err();
        assert!(matches!(e.root(), NambuError::NeedsFieldExtension { .. }), "{e}");
    }

    #[test]
    fn odd_dimensional_with_hyperbolic_line() {
        // abelian(3) with ⟨e1,e1⟩ = −1 and e2, e3 hyperbolic: z = e1 works.
        let g = abelian(2, 3, 0);
        let gram = Matrix::from_ints(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let m = MetricAlgebra::new(g, gram);
        let c = decompose(&m).unwrap();
        assert!(c.odd);
        assert_eq!(c.g1.dim(), 2);
    }

    #[test]
    fn adjoin_line_examples() {
        let one = MetricAlgebra::new(abelian(2, 1, 0), Matrix::identity(1));
        match adjoin_line(&one, &Subspace::zero(1)).unwrap_err() {
            NambuError::NeedsFieldExtension { discriminant, .. } => assert_eq!(discriminant, Scalar::from_int(-1)),
            e => panic!("{e}"),
        }
        let plane = MetricAlgebra::new(abelian(2, 2, 0), Matrix::from_ints(&[&[1, 0], &[0, -1]]));
        let adj = adjoin_line(&plane, &Subspace::zero(2)).unwrap();
        assert_eq!(adj.partner.z, unit_vec(2, 1));
        assert_eq!(adj.ideal.dim(), 1);
        // ⟨x + λa, y + μa⟩ = ⟨x, y⟩ + λμ.
        assert_eq!(adj.algebra.gram, Matrix::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn reconstruct_rejects_bad_ideals() {
        let t = tstar_extend(&heisenberg(), &SkewMap::new()).unwrap().result;
        let small = Subspace::span(6, &[unit_vec(6, 3)]);
        assert!(matches!(reconstruct_as_tstar(&t, &small), Err(NambuError::NotHalfDimensional(_))));
        let odd = MetricAlgebra::new(abelian(2, 1, 0), Matrix::identity(1));
        assert_eq!(reconstruct_as_tstar(&odd, &Subspace::zero(1)).unwrap_err(), NambuError::OddDimension);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        // sl2 with its Killing form tr(ad x ad y).
        let g = sl2();
        let ads: Vec<Matrix> = (0..3).map(|i| g.ad(&[i])).collect();
        let gram = Matrix::from_rows(
            (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| {
                            let p = ads[i].mul(&ads[j]);
                            (0..3).fold(Scalar::zero(), |acc, k| &acc + &p[(k, k)])
                        })
                        .collect()
                })
                .collect(),
        );
        let m = MetricAlgebra::new(g, gram);
        assert_eq!(decompose(&m).unwrap_err(), NambuError::NotNilpotent);
    }
}
