//! Coadjoint representation, T*-extensions `g ⊕ g*`, their metric, and the
//! equivalence test between two T*-extensions of the same algebra.

mod isotropic;
mod reconstruct;

pub use isotropic::{
    canonical_isotropic_ideal, centralizer_by_definition, centralizer_by_orthogonal, centralizer_series,
    extend_to_maximal_isotropic, is_ad_stable, CentralizerSeries,
};
pub use reconstruct::{
    adjoin_line, decompose, find_line_partner, reconstruct_as_tstar, Adjoined, Certificate, LinePartner, Reconstruction,
};

use crate::cohomology::{
    skew_cocycle_basis, skew_is_closed, skew_is_compatible, skew_to_cochain, verify_representation, Complex,
    FundamentalTable, Representation, SkewCoordinates, SkewMap, WedgeBasis,
};
use crate::error::{NambuError, Result};
use crate::graded::{
    canonical_tuples, derived_series, direct_sum, fmt_tuple, is_hom_ideal, koszul, lower_central_series,
    tuple_parity, verify_algebra, verify_metric, verify_morphism, HomSuperAlgebra, MetricAlgebra,
};
use crate::linalg::{is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// `ad*(x)(f)(z) = −(−1)^{|x||f|} f(ad x(z))` on the dual basis, `ν* = αᵀ`.
pub fn coadjoint_rep(a: &HomSuperAlgebra) -> Representation {
    let wb = WedgeBasis::for_algebra(a);
    let d = a.dim();
    let rho = wb
        .elements
        .iter()
        .zip(&wb.parity)
        .map(|(t, &px)| {
            let ad = a.ad(t);
            let mut m = Matrix::zeros(d, d);
            for j in 0..d {
                for k in 0..d {
                    let v = &ad[(k, j)];
                    if !v.is_zero() {
                        m[(j, k)] = if koszul(px, a.parity[k]) { v.clone() } else { -v };
                    }
                }
            }
            m
        })
        .collect();
    Representation { name: format!("ad*({})", a.name), parity: a.parity.clone(), rho, nu: a.alpha.transpose() }
}

/// The coadjoint matrices together with whether they form a representation.
#[derive(Clone, Debug)]
pub struct Coadjoint {
    pub rep: Representation,
    pub exists: bool,
    pub witness: Option<String>,
}

pub fn coadjoint(a: &HomSuperAlgebra) -> Coadjoint {
    let rep = coadjoint_rep(a);
    let r = verify_representation(&rep, a).expect("coadjoint shapes match");
    let witness = r.first_failure().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
    Coadjoint { rep, exists: witness.is_none(), witness }
}

/// Conditions (i) and (ii) of the coadjoint lemma, checked literally as
/// matrix identities on basis elements.
pub fn coadjoint_conditions(a: &HomSuperAlgebra) -> Report {
    let t = FundamentalTable::new(a);
    let wb = &t.wedge;
    let mut r = Report::new(&format!("coadjoint conditions for {}", a.name));
    let ad_alpha: Vec<Matrix> = (0..wb.len()).map(|c| t.ad_of(&t.lambda.col(c))).collect();
    let mut w = None;
    'i: for x in 0..wb.len() {
        for y in 0..wb.len() {
            let s = Scalar::sign(koszul(wb.parity[x], wb.parity[y]));
            let lhs = t.ad[x].mul(&ad_alpha[y]).sub(&t.ad[y].mul(&ad_alpha[x]).scale(&s));
            let rhs = a.alpha.mul(&t.ad_of(&t.bracket[x][y]));
            if lhs != rhs {
                w = Some(format!("x={} y={}", fmt_tuple(&wb.elements[x]), fmt_tuple(&wb.elements[y])));
                break 'i;
            }
        }
    }
    r.push("condition (i)", w);
    let alpha_cols: Vec<Vector> = (0..a.dim()).map(|j| a.alpha.col(j)).collect();
    let mut w = None;
    'ii: for x in canonical_tuples(&a.parity, a.n - 2) {
        let px = tuple_parity(&x, &a.parity);
        for y in canonical_tuples(&a.parity, a.n) {
            for i in 0..a.n {
                let mut xy = x.clone();
                xy.push(y[i]);
                let left = match wb.lookup(&xy) {
                    None => Matrix::zeros(a.dim(), a.dim()),
                    Some((s, pos)) => t.ad[pos].scale(&Scalar::from_int(s as i64)),
                };
                let rest: Vec<&Vector> =
                    y.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &k)| &alpha_cols[k]).collect();
                let right = t.ad_of(&wb.wedge_of(&rest));
                let prest = tuple_parity(&y, &a.parity) ^ a.parity[y[i]];
                let s = Scalar::sign(!koszul(px, prest));
                if left.mul(&right) != right.mul(&left).scale(&s) {
                    w = Some(format!("x={} y={} i={}", fmt_tuple(&x), fmt_tuple(&y), i + 1));
                    break 'ii;
                }
            }
        }
    }
    r.push("condition (ii)", w);
    r
}

/// `⟨x+f, y+g⟩ = f(y) + (−1)^{|x||y|} g(x)` on `g ⊕ g*`.
pub fn tstar_gram(parity: &[u8]) -> Matrix {
    let d = parity.len();
    let mut gm = Matrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        gm[(i, d + i)] = Scalar::sign(parity[i] == 1);
        gm[(d + i, i)] = Scalar::one();
    }
    gm
}

/// The T*-bracket on `g ⊕ g*` (dual coordinates after g), without any
/// validity checks on θ.
pub fn tstar_raw(g: &HomSuperAlgebra, theta: &SkewMap) -> Result<MetricAlgebra> {
    let d = g.dim();
    for (t, v) in theta {
        if t.len() != g.n || v.len() != d || t.iter().any(|&i| i >= d) {
            return Err(NambuError::DimensionMismatch(format!("θ entry {}", fmt_tuple(t))));
        }
    }
    let co = coadjoint_rep(g);
    let wb = WedgeBasis::for_algebra(g);
    let mut parity = g.parity.clone();
    parity.extend(&g.parity);
    let mut t = HomSuperAlgebra::abelian_with_parity(&format!("T*({})", g.name), g.n, parity.clone())
        .with_alpha(g.alpha.direct_sum(&g.alpha.transpose()));
    for tup in canonical_tuples(&parity, g.n) {
        let duals = tup.iter().filter(|&&i| i >= d).count();
        let mut val = zero_vec(2 * d);
        match duals {
            0 => {
                val[..d].clone_from_slice(&g.bracket_basis(&tup));
                if let Some(th) = theta.get(&tup) {
                    val[d..].clone_from_slice(th);
                }
            }
            1 => {
                let k = tup[g.n - 1] - d;
                let pos = wb.position(&tup[..g.n - 1]).expect("canonical prefix");
                val[d..].clone_from_slice(&co.rho[pos].col(k));
            }
            _ => {}
        }
        if !is_zero_vec(&val) {
            t.bracket.insert(tup, val);
        }
    }
    Ok(MetricAlgebra::new(t, tstar_gram(&g.parity)))
}

/// First violation of `θ(X,y)(z) + (−1)^{|y||z|} θ(X,z)(y) = 0`.
pub fn cyclic_violation(g: &HomSuperAlgebra, theta: &SkewMap) -> Option<String> {
    let probe = HomSuperAlgebra { bracket: theta.clone(), ..g.clone() };
    for x in canonical_tuples(&g.parity, g.n - 1) {
        let mut t = x.clone();
        t.push(0);
        for y in 0..g.dim() {
            t[g.n - 1] = y;
            let ty = probe.bracket_basis(&t);
            for z in 0..g.dim() {
                t[g.n - 1] = z;
                let tz = probe.bracket_basis(&t);
                let s = Scalar::sign(koszul(g.parity[y], g.parity[z]));
                if !(&ty[z] + &(&s * &tz[y])).is_zero() {
                    return Some(format!("X={} y=e{} z=e{}", fmt_tuple(&x), y + 1, z + 1));
                }
                t[g.n - 1] = y;
            }
        }
    }
    None
}

pub fn is_cyclic(g: &HomSuperAlgebra, theta: &SkewMap) -> bool {
    cyclic_violation(g, theta).is_none()
}

/// θ is even, compatible (`θ∘α = αᵀ∘θ`) and closed for the coadjoint module.
pub fn theta_closed(g: &HomSuperAlgebra, theta: &SkewMap) -> Result<bool> {
    let co = coadjoint_rep(g);
    let cx = Complex::new(g, &co)?;
    let even = theta
        .iter()
        .all(|(t, v)| v.iter().zip(&g.parity).all(|(x, &q)| x.is_zero() || q == tuple_parity(t, &g.parity)));
    Ok(even && skew_is_compatible(&cx, theta) && skew_is_closed(&cx, 0, theta))
}

#[derive(Clone, Debug)]
pub struct TStarExtension {
    pub base: HomSuperAlgebra,
    pub theta: SkewMap,
    pub result: MetricAlgebra,
}

/// Validated T*-extension: coadjoint exists, θ ∈ Z¹ and cyclic; the result
/// is post-checked against the axioms and the metric properties.
pub fn tstar_extend(g: &HomSuperAlgebra, theta: &SkewMap) -> Result<TStarExtension> {
    let co = coadjoint(g);
    if !co.exists {
        return Err(NambuError::CoadjointMissing(co.witness.unwrap_or_default()));
    }
    if !theta_closed(g, theta)? {
        return Err(NambuError::ThetaNotClosed);
    }
    if let Some(w) = cyclic_violation(g, theta) {
        return Err(NambuError::ThetaNotCyclic(w));
    }
    let result = tstar_raw(g, theta)?;
    let r = verify_algebra(&result.algebra);
    if !r.all_passed() {
        return Err(NambuError::VerificationFailed(format!("T*-extension fails the axioms:\n{r}")));
    }
    let m = verify_metric(&result.algebra, &result.gram);
    if !m.all_passed() {
        return Err(NambuError::VerificationFailed(format!("T*-extension is not metric:\n{m}")));
    }
    Ok(TStarExtension { base: g.clone(), theta: theta.clone(), result })
}

/// Basis of the even closed cyclic θ, as skew maps.
pub fn cyclic_cocycle_basis(g: &HomSuperAlgebra) -> Result<Vec<SkewMap>> {
    let co = coadjoint_rep(g);
    let cx = Complex::new(g, &co)?;
    let (sc, z) = skew_cocycle_basis(&cx, 0);
    let residual = |v: &Vector| -> Vector {
        let m = sc.to_map(v);
        let probe = HomSuperAlgebra { bracket: m, ..g.clone() };
        let mut out = Vec::new();
        for x in canonical_tuples(&g.parity, g.n - 1) {
            let mut t = x.clone();
            t.push(0);
            let cols: Vec<Vector> = (0..g.dim())
                .map(|y| {
                    t[g.n - 1] = y;
                    probe.bracket_basis(&t)
                })
                .collect();
            for y in 0..g.dim() {
                for z in 0..g.dim() {
                    let s = Scalar::sign(koszul(g.parity[y], g.parity[z]));
                    out.push(&cols[y][z] + &(&s * &cols[z][y]));
                }
            }
        }
        out
    };
    let cols: Vec<Vector> = z.iter().map(residual).collect();
    let kernel = crate::cohomology::nullspace_of_columns(&cols, z.len());
    Ok(kernel.iter().map(|k| sc.to_map(&crate::cohomology::combine(&z, k, sc.len()))).collect())
}

/// Coordinates for skew g*-valued maps of even parity.
pub fn theta_coordinates(g: &HomSuperAlgebra) -> SkewCoordinates {
    let co = coadjoint_rep(g);
    let cx = Complex::new(g, &co).expect("coadjoint shapes match");
    SkewCoordinates::new(&cx, 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Inequivalent,
    /// `θ′ : g → g*` as a matrix (column z is θ′(e_z)); its induced form is nonzero.
    Equivalent(Matrix),
    Isometric(Matrix),
}

/// `⟨x, y⟩_{θ′} = ½(θ′(x)(y) + (−1)^{|x||y|} θ′(y)(x))`.
pub fn induced_form(parity: &[u8], theta_prime: &Matrix) -> Matrix {
    let d = parity.len();
    let half = Scalar::new(1, 2);
    let mut s = Matrix::zeros(d, d);
    for x in 0..d {
        for y in 0..d {
            let a = &theta_prime[(y, x)];
            let b = &theta_prime[(x, y)];
            let v = if koszul(parity[x], parity[y]) { a - b } else { a + b };
            s[(x, y)] = &half * &v;
        }
    }
    s
}

/// `φ(x + f) = x + θ′(x) + f`.
pub fn equivalence_map(theta_prime: &Matrix) -> Matrix {
    let d = theta_prime.rows();
    let top = Matrix::identity(d).hstack(&Matrix::zeros(d, d));
    let bottom = theta_prime.hstack(&Matrix::identity(d));
    top.vstack(&bottom)
}

/// Solves `θ1 − θ2 = δ⁰θ′` over even compatible `θ′ : g → g*`; isometric iff
/// a solution with vanishing induced form exists.
pub fn equivalence(g: &HomSuperAlgebra, theta1: &SkewMap, theta2: &SkewMap) -> Result<Equivalence> {
    for th in [theta1, theta2] {
        if !theta_closed(g, th)? {
            return Err(NambuError::ThetaNotClosed);
        }
        if let Some(w) = cyclic_violation(g, th) {
            return Err(NambuError::ThetaNotCyclic(w));
        }
    }
    let d = g.dim();
    let co = coadjoint_rep(g);
    let cx = Complex::new(g, &co)?;
    let wb = cx.wedge();
    let diff = sub_vec(&skew_to_cochain(g, wb, theta1, d), &skew_to_cochain(g, wb, theta2, d));
    let (basis, d0) = cx.coboundary_matrix(0, 0);
    // Raw 0-cochain index z·d + v holds θ′(e_z)_v.
    let to_matrix = |c: &[Scalar]| {
        let raw = crate::cohomology::combine(&basis, c, d * d);
        let mut m = Matrix::zeros(d, d);
        for z in 0..d {
            for v in 0..d {
                m[(v, z)] = raw[z * d + v].clone();
            }
        }
        m
    };
    let Some(sol) = d0.solve(&diff) else {
        return Ok(Equivalence::Inequivalent);
    };
    // Induced form is linear in the C⁰ coordinates.
    let k = basis.len();
    let form_rows: Vec<Vector> = {
        let forms: Vec<Matrix> =
            (0..k).map(|j| induced_form(&g.parity, &to_matrix(&unit_vec(k, j)))).collect();
        let mut rows = Vec::new();
        for x in 0..d {
            for y in 0..d {
                rows.push(forms.iter().map(|f| f[(x, y)].clone()).collect());
            }
        }
        rows
    };
    let stacked = d0.vstack(&Matrix::from_rows_with_cols(form_rows, k));
    let mut rhs = diff.clone();
    rhs.extend(zero_vec(d * d));
    if let Some(iso) = stacked.solve(&rhs) {
        return Ok(Equivalence::Isometric(to_matrix(&iso)));
    }
    Ok(Equivalence::Equivalent(to_matrix(&sol)))
}

/// Checks that `φ` of an equivalence is a morphism `T*_{θ1} → T*_{θ2}` and
/// whether it is an isometry.
pub fn verify_equivalence(g: &HomSuperAlgebra, theta1: &SkewMap, theta2: &SkewMap, theta_prime: &Matrix) -> Result<Report> {
    let t1 = tstar_raw(g, theta1)?;
    let t2 = tstar_raw(g, theta2)?;
    let phi = equivalence_map(theta_prime);
    let mut r = verify_morphism(&phi, &t1.algebra, &t2.algebra)?;
    r.title = "equivalence map".into();
    let iso = phi.transpose().mul(&t2.gram).mul(&phi) == t1.gram;
    r.push("isometry", (!iso).then(|| "φᵀ G φ ≠ G".to_string()));
    Ok(r)
}

fn len_str(l: Option<usize>) -> String {
    l.map_or("∞".into(), |k| k.to_string())
}

/// Solvable length of T*_θ g is k or k+1; nilpotent length lies in
/// [k, 2k] (zero-based series), with equality when θ = 0.
pub fn tstar_series_laws(g: &HomSuperAlgebra, theta: &SkewMap) -> Result<Report> {
    let t = tstar_raw(g, theta)?;
    let mut r = Report::new(&format!("series laws for T*({})", g.name));
    let ks = derived_series(g).length;
    let ts = derived_series(&t.algebra).length;
    let ok = match (ks, ts) {
        (Some(k), Some(l)) => l == k || l == k + 1,
        (None, None) => true,
        _ => false,
    };
    r.push("solvable length", (!ok).then(|| format!("g: {}, T*: {}", len_str(ks), len_str(ts))));
    let kn = lower_central_series(g).length;
    let tn = lower_central_series(&t.algebra).length;
    let ok = match (kn, tn) {
        (Some(k), Some(l)) => k <= l && l <= 2 * k,
        (None, None) => true,
        _ => false,
    };
    r.push("nilpotent length", (!ok).then(|| format!("g: {}, T*: {}", len_str(kn), len_str(tn))));
    if theta.values().all(|v| is_zero_vec(v)) {
        r.push("nilpotent length at θ = 0", (kn != tn).then(|| format!("g: {}, T*₀: {}", len_str(kn), len_str(tn))));
    }
    Ok(r)
}

/// For `g = i ⊕ j`, T*₀g is the sum of the Hom-ideals T*₀i and T*₀j, each
/// embedded isomorphically.
pub fn direct_sum_law(i: &HomSuperAlgebra, j: &HomSuperAlgebra) -> Result<Report> {
    let g = direct_sum(i, j)?;
    let t = tstar_raw(&g, &SkewMap::new())?;
    let (di, dj) = (i.dim(), j.dim());
    let d = di + dj;
    let mut r = Report::new(&format!("T*₀({} ⊕ {})", i.name, j.name));
    let embed = |offset: usize, k: usize| -> Matrix {
        let mut m = Matrix::zeros(2 * d, 2 * k);
        for a in 0..k {
            m[(offset + a, a)] = Scalar::one();
            m[(d + offset + a, k + a)] = Scalar::one();
        }
        m
    };
    let mut spans = Vec::new();
    for (name, part, offset) in [("first", i, 0), ("second", j, di)] {
        let e = embed(offset, part.dim());
        let tp = tstar_raw(part, &SkewMap::new())?;
        let m = verify_morphism(&e, &tp.algebra, &t.algebra)?;
        r.push(&format!("{name} block embeds"), m.first_failure().map(|c| c.name.clone()));
        let s = Subspace::span(2 * d, &e.col_vecs());
        r.push(&format!("{name} block is a Hom-ideal"), (!is_hom_ideal(&s, &t.algebra)?).then(|| "not an ideal".into()));
        spans.push(s);
    }
    let whole = spans[0].sum(&spans[1]);
    let meet = spans[0].intersect(&spans[1]);
    r.push("blocks span", (whole.dim() != 2 * d || !meet.is_zero()).then(|| "blocks do not form a direct sum".into()));
    Ok(r)
}

/// Whether `[g, …, g, I, I] = 0` for a half-dimensional isotropic Hom-ideal.
pub fn isotropic_half_ideal_abelian_check(m: &MetricAlgebra, i: &Subspace) -> Result<bool> {
    let d = m.dim();
    if d % 2 == 1 {
        return Err(NambuError::OddDimension);
    }
    if i.dim() * 2 != d {
        return Err(NambuError::NotHalfDimensional(format!("dim I = {}, dim g = {d}", i.dim())));
    }
    if !i.is_isotropic(&m.gram) {
        return Err(NambuError::Precondition("I is not isotropic".into()));
    }
    if !is_hom_ideal(i, &m.algebra)? {
        return Err(NambuError::NotAnIdeal);
    }
    let a = &m.algebra;
    for x in canonical_tuples(&a.parity, a.n - 2) {
        let mut args: Vec<Vector> = x.iter().map(|&k| unit_vec(d, k)).collect();
        args.push(zero_vec(d));
        args.push(zero_vec(d));
        for u in i.basis() {
            for v in i.basis() {
                args[a.n - 2] = u.clone();
                args[a.n - 1] = v.clone();
                if !is_zero_vec(&a.bracket_eval(&args)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Embedded `g*` in a T*-extension of a d-dimensional algebra.
pub fn embedded_dual(d: usize) -> Subspace {
    Subspace::span(2 * d, &(d..2 * d).map(|k| unit_vec(2 * d, k)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::examples::*;

    #[test]
    fn coadjoint_examples() {
        assert!(coadjoint(&abelian(2, 2, 0)).rep.rho.iter().all(Matrix::is_zero));
        for g in [abelian(2, 2, 0), heisenberg(), super_heisenberg(), n4(), sl2(), a4()] {
            assert!(coadjoint(&g).exists, "{}", g.name);
        }
        assert!(coadjoint_conditions(&heisenberg()).all_passed());
        // (ii) as a termwise identity is stronger than what the representation needs.
        let sl = coadjoint_conditions(&sl2());
        assert!(sl.passed("condition (i)"));
        assert!(!sl.passed("condition (ii)"));
    }

    #[test]
    fn tstar_of_abelian_line_is_hyperbolic_plane() {
        let t = tstar_extend(&abelian(2, 1, 0), &SkewMap::new()).unwrap();
        assert!(t.result.algebra.is_abelian());
        assert_eq!(t.result.gram, Matrix::from_ints(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn tstar_zero_heisenberg() {
        let t = tstar_extend(&heisenberg(), &SkewMap::new()).unwrap();
        assert_eq!(t.result.dim(), 6);
        assert_eq!(lower_central_series(&t.result.algebra).length, Some(2));
        let r = tstar_series_laws(&heisenberg(), &SkewMap::new()).unwrap();
        assert!(r.all_passed(), "{r}");
        assert!(isotropic_half_ideal_abelian_check(&t.result, &embedded_dual(3)).unwrap());
    }

    #[test]
    fn non_cyclic_theta_breaks_only_the_metric() {
        // abelian(3): δ ≡ 0 so every even skew θ is closed; θ(e1,e2) = e1* is not cyclic.
        let g = abelian(2, 3, 0);
        let mut th = SkewMap::new();
        th.insert(vec![0, 1], vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        assert!(theta_closed(&g, &th).unwrap());
        assert!(!is_cyclic(&g, &th));
        let t = tstar_raw(&g, &th).unwrap();
        assert!(verify_algebra(&t.algebra).all_passed());
        assert!(!verify_metric(&t.algebra, &t.gram).passed("invariant"));
        assert!(matches!(tstar_extend(&g, &th), Err(NambuError::ThetaNotCyclic(_))));
        // θ(e1,e2) = e3* alone is not cyclic either; the alternating completion is.
        let mut th = SkewMap::new();
        th.insert(vec![0, 1], vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        assert!(!is_cyclic(&g, &th));
    }

    #[test]
    fn cyclic_basis_abelian() {
        // Fully skew and cyclic: alternating 3-forms.
        assert_eq!(cyclic_cocycle_basis(&abelian(2, 2, 0)).unwrap().len(), 0);
        let b = cyclic_cocycle_basis(&abelian(2, 3, 0)).unwrap();
        assert_eq!(b.len(), 1);
        assert!(tstar_extend(&abelian(2, 3, 0), &b[0]).is_ok());
    }

    #[test]
    fn coboundary_shift_is_an_equivalence() {
        let mut hits = 0;
        for g in [heisenberg(), n4(), super_heisenberg(), abelian(2, 3, 0)] {
            let co = coadjoint_rep(&g);
            let cx = Complex::new(&g, &co).unwrap();
            let d = g.dim();
            let (basis, _) = cx.coboundary_matrix(0, 0);
            let thetas: Vec<SkewMap> =
                std::iter::once(SkewMap::new()).chain(cyclic_cocycle_basis(&g).unwrap()).collect();
            for theta1 in &thetas {
                for b in &basis {
                    let shift = cx.coboundary_raw(0, 0, b);
                    let raw1 = skew_to_cochain(&g, cx.wedge(), theta1, d);
                    let raw2 = sub_vec(&raw1, &shift);
                    let Some(theta2) = crate::cohomology::cochain_to_skew(&g, cx.wedge(), &raw2, d) else {
                        continue;
                    };
                    if !is_cyclic(&g, &theta2) {
                        continue;
                    }
                    let mut tp = Matrix::zeros(d, d);
                    for z in 0..d {
                        for v in 0..d {
                            tp[(v, z)] = b[z * d + v].clone();
                        }
                    }
                    let r = verify_equivalence(&g, theta1, &theta2, &tp).unwrap();
                    let morphism_ok = r.checks.iter().filter(|c| c.name != "isometry").all(|c| c.passed);
                    assert!(morphism_ok, "{}: {r}", g.name);
                    assert_ne!(equivalence(&g, theta1, &theta2).unwrap(), Equivalence::Inequivalent);
                    hits += 1;
                }
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn equivalence_cases() {
        let g = abelian(2, 3, 0);
        let b = cyclic_cocycle_basis(&g).unwrap();
        let zero = SkewMap::new();
        assert_eq!(equivalence(&g, &b[0], &b[0]).unwrap(), Equivalence::Isometric(Matrix::zeros(3, 3)));
        assert_eq!(equivalence(&g, &b[0], &zero).unwrap(), Equivalence::Inequivalent);
    }

    #[test]
    fn direct_sum_blocks() {
        let r = direct_sum_law(&heisenberg(), &abelian(2, 1, 0)).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
