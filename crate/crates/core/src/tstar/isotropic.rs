use crate::error::{NambuError, Result};
use crate::graded::{canonical_tuples, is_hom_ideal, lower_central_series, HomSuperAlgebra, MetricAlgebra};
use crate::linalg::{dot, rational_roots, scale_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

fn ad_matrices(a: &HomSuperAlgebra) -> Vec<Matrix> {
    canonical_tuples(&a.parity, a.n - 1).iter().map(|t| a.ad(t)).collect()
}

/// `[W, g, …, g] ⊆ W`.
pub fn is_ad_stable(a: &HomSuperAlgebra, w: &Subspace) -> bool {
    ad_matrices(a).iter().all(|m| w.is_invariant(m))
}

/// `C(V) = {x : [x, g, …, g] ⊆ V}` for a graded V.
pub fn centralizer_by_definition(a: &HomSuperAlgebra, v: &Subspace) -> Subspace {
    ad_matrices(a)
        .iter()
        .fold(Subspace::full(a.dim()), |acc, m| acc.intersect(&v.preimage(m)))
}

/// `[g, …, g, V^⊥]^⊥`.
pub fn centralizer_by_orthogonal(m: &MetricAlgebra, v: &Subspace) -> Subspace {
    let vp = v.orthogonal(&m.gram);
    let vecs: Vec<Vector> = ad_matrices(&m.algebra)
        .iter()
        .flat_map(|ad| vp.basis().iter().map(move |u| ad.mul_vec(u)))
        .collect();
    Subspace::span(m.dim(), &vecs).orthogonal(&m.gram)
}

/// `C_0 = 0`, `C_{i+1} = C(C_i)`, computed both ways, with `g^i = C_i^⊥`
/// checked up to stabilisation of both series.
#[derive(Clone, Debug)]
pub struct CentralizerSeries {
    pub terms: Vec<Subspace>,
    pub report: Report,
}

pub fn centralizer_series(m: &MetricAlgebra) -> CentralizerSeries {
    let a = &m.algebra;
    let d = m.dim();
    let mut terms = vec![Subspace::zero(d)];
    let mut agree = None;
    loop {
        let last = terms.last().unwrap();
        let c1 = centralizer_by_definition(a, last);
        let c2 = centralizer_by_orthogonal(m, last);
        if c1 != c2 && agree.is_none() {
            agree = Some(format!("C_{}: definition dim {} vs orthogonal dim {}", terms.len(), c1.dim(), c2.dim()));
        }
        if &c1 == last {
            break;
        }
        terms.push(c1);
    }
    let mut report = Report::new(&format!("centralizers of {}", a.name));
    report.push("C(V) two ways", agree);
    let lc = lower_central_series(a).terms;
    let steps = terms.len().max(lc.len());
    let at = |v: &[Subspace], i: usize| v[i.min(v.len() - 1)].clone();
    let w = (0..steps).find_map(|i| {
        let perp = at(&terms, i).orthogonal(&m.gram);
        (perp != at(&lc, i)).then(|| format!("g^{i} has dim {} but C_{i}^⊥ has dim {}", at(&lc, i).dim(), perp.dim()))
    });
    report.push("g^i = C_i^⊥", w);
    CentralizerSeries { terms, report }
}

/// `J = Σ_i g^i ∩ C_i`, post-checked to be an isotropic Hom-ideal containing
/// `g^{⌊(k+1)/2⌋}`.
pub fn canonical_isotropic_ideal(m: &MetricAlgebra) -> Result<Subspace> {
    let a = &m.algebra;
    let lc = lower_central_series(a);
    let k = lc.length.ok_or(NambuError::NotNilpotent)?;
    let cs = centralizer_series(m);
    let at = |v: &[Subspace], i: usize| v[i.min(v.len() - 1)].clone();
    let mut j = Subspace::zero(m.dim());
    for i in 0..=k.max(cs.terms.len()) {
        j = j.sum(&at(&lc.terms, i).intersect(&at(&cs.terms, i)));
    }
    if !j.is_isotropic(&m.gram) {
        return Err(NambuError::VerificationFailed("J is not isotropic".into()));
    }
    if !is_hom_ideal(&j, a)? {
        return Err(NambuError::VerificationFailed("J is not a Hom-ideal".into()));
    }
    if !j.contains_subspace(&at(&lc.terms, k.div_ceil(2))) {
        return Err(NambuError::VerificationFailed(format!("J does not contain g^{}", k.div_ceil(2))));
    }
    Ok(j)
}

fn pair(gram: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    dot(x, &gram.mul_vec(y))
}

/// Largest subspace T ⊆ S with `α(T) ⊆ T`.
fn largest_invariant(s: &Subspace, alpha: &Matrix) -> Subspace {
    let mut t = s.clone();
    loop {
        let next = t.intersect(&t.preimage(alpha));
        if next == t {
            return t;
        }
        t = next;
    }
}

/// Isotropic vector in the span of `vs` (a symmetric form), or the
/// discriminant that would be needed.
fn isotropic_in_span(gram: &Matrix, vs: &[Vector]) -> std::result::Result<Vector, Option<Scalar>> {
    let mut u: Vec<Vector> = vs.to_vec();
    let mut q = Vec::new();
    for i in 0..u.len() {
        let qi = pair(gram, &u[i], &u[i]);
        if qi.is_zero() {
            return Ok(u[i].clone());
        }
        for j in i + 1..u.len() {
            let c = &pair(gram, &u[j], &u[i]) / &qi;
            let ui = u[i].clone();
            crate::linalg::add_scaled(&mut u[j], &-c, &ui);
        }
        q.push(qi);
    }
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            if let Some(s) = (-&(&q[i] / &q[j])).rational_sqrt() {
                return Ok(crate::linalg::add_vec(&u[i], &scale_vec(&s, &u[j])));
            }
        }
    }
    Err((q.len() >= 2).then(|| -&(&q[0] * &q[1])))
}

/// Grows an isotropic, ad- and α-stable graded W to dimension ⌊dim/2⌋.
pub fn extend_to_maximal_isotropic(m: &MetricAlgebra, w: &Subspace) -> Result<Subspace> {
    let a = &m.algebra;
    let d = m.dim();
    let gram = &m.gram;
    if !w.is_isotropic(gram) {
        return Err(NambuError::Precondition("W is not isotropic".into()));
    }
    if !crate::graded::is_graded(w, &a.parity) {
        return Err(NambuError::NonGradedSubspace);
    }
    if !w.is_invariant(&a.alpha) || !is_ad_stable(a, w) {
        return Err(NambuError::Precondition("W is not α- and ad-stable".into()));
    }
    let ads = ad_matrices(a);
    let mut w = w.clone();
    while w.dim() < d / 2 {
        let wp = w.orthogonal(gram);
        let s = ads.iter().fold(wp, |acc, ad| acc.intersect(&w.preimage(ad)));
        let s = largest_invariant(&s, &a.alpha);
        // Homogeneous lifts of a basis of S_α/W.
        let mut span = w.clone();
        let mut lifts: Vec<Vector> = Vec::new();
        for v in s.basis() {
            if !span.contains(v) {
                span = span.sum(&Subspace::span(d, std::slice::from_ref(v)));
                lifts.push(v.clone());
            }
        }
        if lifts.is_empty() {
            return Err(NambuError::NoStableIsotropicVector(format!("S_α/W is zero at dim W = {}", w.dim())));
        }
        let r = lifts.len();
        let f = Matrix::from_rows(lifts.iter().map(|x| lifts.iter().map(|y| pair(gram, x, y)).collect()).collect());
        let radical = f.nullspace();
        if !radical.is_empty() {
            let vecs: Vec<Vector> = radical.iter().map(|c| crate::cohomology::combine(&lifts, c, d)).collect();
            w = w.sum(&Subspace::span(d, &vecs));
            continue;
        }
        // α on S_α/W in the lift basis.
        let mut basis_cols: Vec<Vector> = lifts.clone();
        basis_cols.extend(w.basis().iter().cloned());
        let bmat = Matrix::from_cols(d, &basis_cols);
        let mut amat = Matrix::zeros(r, r);
        for (j, v) in lifts.iter().enumerate() {
            let c = bmat.solve(&a.alpha.mul_vec(v)).expect("S_α is α-invariant");
            for i in 0..r {
                amat[(i, j)] = c[i].clone();
            }
        }
        let mut roots = rational_roots(&amat.char_poly());
        roots.sort();
        if roots.is_empty() {
            return Err(NambuError::NoStableIsotropicVector(format!(
                "α has no rational eigenvalue on S_α/W (dim {r})"
            )));
        }
        let mut found = None;
        let mut disc = None;
        for lam in &roots {
            let shifted = amat.sub(&Matrix::identity(r).scale(lam));
            let eig: Vec<Vector> =
                shifted.nullspace().iter().map(|c| crate::cohomology::combine(&lifts, c, d)).collect();
            let parts = split_by_parity(&eig, &a.parity);
            let odd: Vec<Vector> = parts.iter().filter(|(p, _)| *p == 1).map(|(_, v)| v.clone()).collect();
            let even: Vec<Vector> = parts.iter().filter(|(p, _)| *p == 0).map(|(_, v)| v.clone()).collect();
            if let Some(v) = odd.into_iter().next() {
                found = Some(v);
                break;
            }
            match isotropic_in_span(gram, &even) {
                Ok(v) => {
                    found = Some(v);
                    break;
                }
                Err(dd) => disc = disc.or(dd),
            }
        }
        match found {
            Some(v) => w = w.sum(&Subspace::span(d, &[v])),
            None => {
                return Err(match disc {
                    Some(discriminant) => NambuError::NeedsFieldExtension {
                        discriminant,
                        context: "isotropic vector in an α-eigenspace".into(),
                    },
                    None => NambuError::NoStableIsotropicVector(
                        "every rational α-eigenspace of S_α/W is an anisotropic line".into(),
                    ),
                })
            }
        }
    }
    if !w.is_isotropic(gram) || !is_ad_stable(a, &w) || !w.is_invariant(&a.alpha) || w.dim() != d / 2 {
        return Err(NambuError::VerificationFailed("extended subspace fails its post-checks".into()));
    }
    if d % 2 == 1 {
        let wp = w.orthogonal(gram);
        if !ads.iter().all(|ad| w.contains_subspace(&wp.image(ad))) {
            return Err(NambuError::VerificationFailed("[g, …, g, W^⊥] ⊄ W".into()));
        }
    }
    Ok(w)
}

/// Splits each vector into its homogeneous components, keeping nonzero ones
/// (as a spanning set of the graded hull).
fn split_by_parity(vs: &[Vector], parity: &[u8]) -> Vec<(u8, Vector)> {
    let mut out = Vec::new();
    for v in vs {
        for p in 0..2u8 {
            let c: Vector =
                v.iter().zip(parity).map(|(x, &q)| if q == p { x.clone() } else { Scalar::zero() }).collect();
            if !crate::linalg::is_zero_vec(&c) {
                out.push((p, c));
            }
        }
    }
    // Reduce to an independent set per parity.
    let mut res = Vec::new();
    for p in 0..2u8 {
        let vecs: Vec<Vector> = out.iter().filter(|(q, _)| *q == p).map(|(_, v)| v.clone()).collect();
        if !vecs.is_empty() {
            let d = vecs[0].len();
            for b in Subspace::span(d, &vecs).basis() {
                res.push((p, b.clone()));
            }
        }
    }
    res
}
