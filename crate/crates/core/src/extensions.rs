//! Extensions of b by an abelian ideal a from an even 1-cocycle, sections,
//! and cocycle extraction.

use crate::cohomology::{
    skew_is_closed, skew_is_compatible, skew_to_cochain, verify_representation, Complex, Representation, SkewMap,
    WedgeBasis,
};
use crate::error::{NambuError, Result};
use crate::graded::{canonical_tuples, fmt_tuple, koszul, tuple_parity, verify_algebra, verify_morphism, HomSuperAlgebra};
use crate::linalg::{is_zero_vec, sub_vec, zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// `(b, V = a, ρ, f)`: the fiber is `module.parity` with twist `module.nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    pub base: HomSuperAlgebra,
    pub module: Representation,
    /// Fully skew `f : b^∧n → a` on canonical tuples of b.
    pub cocycle: SkewMap,
}

impl ExtensionDatum {
    pub fn fiber_dim(&self) -> usize {
        self.module.dim()
    }

    pub fn cocycle_cochain(&self) -> Vector {
        let wb = WedgeBasis::for_algebra(&self.base);
        skew_to_cochain(&self.base, &wb, &self.cocycle, self.fiber_dim())
    }

    /// Module is a representation and `f ∈ Z¹(b, a)_0̄`.
    pub fn check(&self) -> Result<()> {
        let rep = verify_representation(&self.module, &self.base)?;
        if !rep.all_passed() {
            return Err(NambuError::Precondition(format!("module is not a representation:\n{rep}")));
        }
        check_even(&self.base, &self.module.parity, &self.cocycle)?;
        let cx = Complex::new(&self.base, &self.module)?;
        if !skew_is_compatible(&cx, &self.cocycle) {
            return Err(NambuError::NotACochain("ν∘f ≠ f∘β".into()));
        }
        if !skew_is_closed(&cx, 0, &self.cocycle) {
            return Err(NambuError::CocycleNotClosed);
        }
        Ok(())
    }
}

fn check_even(b: &HomSuperAlgebra, fiber_parity: &[u8], f: &SkewMap) -> Result<()> {
    for (t, v) in f {
        if t.len() != b.n || t.iter().any(|&i| i >= b.dim()) || v.len() != fiber_parity.len() {
            return Err(NambuError::DimensionMismatch(format!("cocycle entry {}", fmt_tuple(t))));
        }
        let p = tuple_parity(t, &b.parity);
        if v.iter().zip(fiber_parity).any(|(x, &q)| !x.is_zero() && q != p) {
            return Err(NambuError::CocycleNotEven);
        }
    }
    Ok(())
}

/// Bracket on `a ⊕ b` (a-coordinates first) without checking the cocycle.
pub fn build_extension_raw(d: &ExtensionDatum) -> Result<HomSuperAlgebra> {
    let b = &d.base;
    let da = d.fiber_dim();
    let db = b.dim();
    let n = b.n;
    let wb = WedgeBasis::for_algebra(b);
    if d.module.rho.len() != wb.len() {
        return Err(NambuError::DimensionMismatch("module does not match the base wedge basis".into()));
    }
    check_even(b, &d.module.parity, &d.cocycle).or_else(|e| match e {
        NambuError::CocycleNotEven => Ok(()),
        e => Err(e),
    })?;
    let mut parity = d.module.parity.clone();
    parity.extend(&b.parity);
    let mut g = HomSuperAlgebra::abelian_with_parity(&format!("{}.ext", b.name), n, parity.clone())
        .with_alpha(d.module.nu.direct_sum(&b.alpha));
    for t in canonical_tuples(&parity, n) {
        let in_a = t.iter().filter(|&&i| i < da).count();
        let mut val = zero_vec(da + db);
        match in_a {
            0 => {
                let tb: Vec<usize> = t.iter().map(|i| i - da).collect();
                if let Some(f) = d.cocycle.get(&tb) {
                    val[..da].clone_from_slice(f);
                }
                val[da..].clone_from_slice(&b.bracket_basis(&tb));
            }
            1 => {
                // Sorted tuples put the a-entry first; move it past the n−1 b-entries.
                let v = t[0];
                let tb: Vec<usize> = t[1..].iter().map(|i| i - da).collect();
                let pos = wb.position(&tb).expect("sub-tuple of a canonical tuple is canonical");
                let neg = ((n - 1) % 2 == 1) ^ koszul(d.module.parity[v], tuple_parity(&tb, &b.parity));
                let col = d.module.rho[pos].col(v);
                for (k, x) in col.into_iter().enumerate() {
                    val[k] = if neg { -x } else { x };
                }
            }
            _ => {}
        }
        if !is_zero_vec(&val) {
            g.bracket.insert(t, val);
        }
    }
    Ok(g)
}

/// Validated construction; the result is post-checked with `verify_algebra`.
pub fn build_extension(d: &ExtensionDatum) -> Result<HomSuperAlgebra> {
    d.check()?;
    let g = build_extension_raw(d)?;
    let r = verify_algebra(&g);
    if !r.all_passed() {
        return Err(NambuError::VerificationFailed(format!("extension fails the axioms:\n{r}")));
    }
    Ok(g)
}

/// An even `τ : b → g` with `π∘τ = id` and `α∘τ = τ∘β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub tau: Matrix,
}

/// The maps `ι : a → g`, `π : g → b` and `τ` of the canonical coordinates
/// of `build_extension`.
pub fn canonical_maps(d: &ExtensionDatum) -> (Matrix, Matrix, Section) {
    let (da, db) = (d.fiber_dim(), d.base.dim());
    let iota = Matrix::identity(da).vstack(&Matrix::zeros(db, da));
    let pi = Matrix::zeros(db, da).hstack(&Matrix::identity(db));
    let tau = Matrix::zeros(da, db).vstack(&Matrix::identity(db));
    (iota, pi, Section { tau })
}

fn section_violation(g: &HomSuperAlgebra, b: &HomSuperAlgebra, pi: &Matrix, tau: &Matrix) -> Option<String> {
    if (tau.rows(), tau.cols()) != (g.dim(), b.dim()) {
        return Some(format!("τ is {}×{}", tau.rows(), tau.cols()));
    }
    if !pi.mul(tau).is_identity() {
        return Some("π∘τ ≠ id".into());
    }
    if g.alpha.mul(tau) != tau.mul(&b.alpha) {
        return Some("α∘τ ≠ τ∘β".into());
    }
    for i in 0..g.dim() {
        for j in 0..b.dim() {
            if g.parity[i] != b.parity[j] && !tau[(i, j)].is_zero() {
                return Some(format!("τ is not even at ({},{})", i + 1, j + 1));
            }
        }
    }
    None
}

/// Solves `π∘τ = id`, `α∘τ = τ∘β`, τ even; free unknowns are set to 0.
pub fn find_section(g: &HomSuperAlgebra, b: &HomSuperAlgebra, pi: &Matrix) -> Result<Section> {
    let (dg, db) = (g.dim(), b.dim());
    if (pi.rows(), pi.cols()) != (db, dg) {
        return Err(NambuError::DimensionMismatch(format!("π is {}×{}", pi.rows(), pi.cols())));
    }
    // Unknowns τ[i][j] at index i·db + j, restricted to even positions.
    let vars: Vec<(usize, usize)> = (0..dg)
        .flat_map(|i| (0..db).map(move |j| (i, j)))
        .filter(|&(i, j)| g.parity[i] == b.parity[j])
        .collect();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    let nv = vars.len();
    for r in 0..db {
        for j in 0..db {
            let mut row = zero_vec(nv);
            for (k, &(i, jj)) in vars.iter().enumerate() {
                if jj == j {
                    row[k] = pi[(r, i)].clone();
                }
            }
            rows.push(row);
            rhs.push(if r == j { Scalar::one() } else { Scalar::zero() });
        }
    }
    for r in 0..dg {
        for j in 0..db {
            // (ατ)[r][j] − (τβ)[r][j]
            let mut row = zero_vec(nv);
            for (k, &(i, jj)) in vars.iter().enumerate() {
                if jj == j {
                    row[k] += &g.alpha[(r, i)];
                }
                if i == r {
                    row[k] -= &b.alpha[(jj, j)];
                }
            }
            rows.push(row);
            rhs.push(Scalar::zero());
        }
    }
    let sol = Matrix::from_rows_with_cols(rows, nv).solve(&rhs).ok_or(NambuError::NoCompatibleSection)?;
    let mut tau = Matrix::zeros(dg, db);
    for (k, &(i, j)) in vars.iter().enumerate() {
        tau[(i, j)] = sol[k].clone();
    }
    Ok(Section { tau })
}

/// Reads off the datum `(b, a, ρ, f)` of an extension with kernel basis `ι`
/// (columns), projection `π` onto `b` and section `τ`:
/// `ρ(B)v = ι⁻¹[τB, ιv]`, `f(B, b_n) = τ(B)·τ(b_n) − τ(B·b_n)`.
pub fn extract_datum(
    g: &HomSuperAlgebra,
    iota: &Matrix,
    b: &HomSuperAlgebra,
    pi: &Matrix,
    section: &Section,
) -> Result<ExtensionDatum> {
    let tau = &section.tau;
    if let Some(w) = section_violation(g, b, pi, tau) {
        return Err(NambuError::SectionInvalid(w));
    }
    let da = iota.cols();
    if iota.rows() != g.dim() || da + b.dim() != g.dim() || iota.rank() != da || !pi.mul(iota).is_zero() {
        return Err(NambuError::DimensionMismatch("ι must be a basis of ker π".into()));
    }
    let coords = |v: &[Scalar]| -> Result<Vector> {
        iota.solve(v).ok_or_else(|| NambuError::VerificationFailed("bracket leaves the fiber".into()))
    };
    let iota_cols = iota.col_vecs();
    let mut fiber_parity = Vec::with_capacity(da);
    for c in &iota_cols {
        fiber_parity.push(
            crate::graded::vector_parity(c, &g.parity).ok_or(NambuError::NonGradedSubspace)?,
        );
    }
    let mut nu = Matrix::zeros(da, da);
    for (k, c) in iota_cols.iter().enumerate() {
        for (r, x) in coords(&g.alpha.mul_vec(c))?.into_iter().enumerate() {
            nu[(r, k)] = x;
        }
    }
    let tau_cols = tau.col_vecs();
    let wb = WedgeBasis::for_algebra(b);
    let mut rho = Vec::with_capacity(wb.len());
    for t in &wb.elements {
        let mut m = Matrix::zeros(da, da);
        for (k, c) in iota_cols.iter().enumerate() {
            let mut args: Vec<&Vector> = t.iter().map(|&i| &tau_cols[i]).collect();
            args.push(c);
            for (r, x) in coords(&g.eval(&args))?.into_iter().enumerate() {
                m[(r, k)] = x;
            }
        }
        rho.push(m);
    }
    let mut cocycle = SkewMap::new();
    for t in canonical_tuples(&b.parity, b.n) {
        let args: Vec<&Vector> = t.iter().map(|&i| &tau_cols[i]).collect();
        let v = sub_vec(&g.eval(&args), &tau.mul_vec(&b.bracket_basis(&t)));
        let f = coords(&v)?;
        if !is_zero_vec(&f) {
            cocycle.insert(t, f);
        }
    }
    let module = Representation { name: format!("fiber of {}", g.name), parity: fiber_parity, rho, nu };
    let datum = ExtensionDatum { base: b.clone(), module, cocycle };
    datum.check().map_err(|e| NambuError::VerificationFailed(format!("extracted datum: {e}")))?;
    Ok(datum)
}

pub fn extract_cocycle(
    g: &HomSuperAlgebra,
    iota: &Matrix,
    b: &HomSuperAlgebra,
    pi: &Matrix,
    section: &Section,
) -> Result<SkewMap> {
    Ok(extract_datum(g, iota, b, pi, section)?.cocycle)
}

/// For a chain `g_0 → g_1 → … → g_k` checks each map is a morphism and
/// `ker f_{i+1} = im f_i` at every interior node (nodes numbered from 1).
pub fn verify_exact_sequence(algebras: &[&HomSuperAlgebra], maps: &[Matrix]) -> Result<Report> {
    if maps.len() + 1 != algebras.len() {
        return Err(NambuError::DimensionMismatch(format!(
            "{} algebras need {} maps, got {}",
            algebras.len(),
            algebras.len().saturating_sub(1),
            maps.len()
        )));
    }
    let mut r = Report::new("exact sequence");
    for (i, f) in maps.iter().enumerate() {
        let m = verify_morphism(f, algebras[i], algebras[i + 1])?;
        r.push(&format!("map {} morphism", i + 1), m.first_failure().map(|c| c.name.clone()));
    }
    for node in 1..algebras.len() - 1 {
        let d = algebras[node].dim();
        let image = Subspace::full(algebras[node - 1].dim()).image(&maps[node - 1]);
        let kernel = Subspace::span(d, &maps[node].nullspace());
        let w = (image != kernel)
            .then(|| format!("dim ker = {}, dim im = {}", kernel.dim(), image.dim()));
        r.push(&format!("exact at node {}", node + 1), w);
    }
    Ok(r)
}

/// The abelian algebra `(a, 0, ν)` of a module.
pub fn fiber_algebra(d: &ExtensionDatum) -> HomSuperAlgebra {
    HomSuperAlgebra::abelian_with_parity("a", d.base.n, d.module.parity.clone()).with_alpha(d.module.nu.clone())
}

/// `0 → a → g → b → 0` for a built extension in canonical coordinates.
pub fn verify_short_exact(d: &ExtensionDatum, g: &HomSuperAlgebra) -> Result<Report> {
    let a = fiber_algebra(d);
    let zero = HomSuperAlgebra::abelian_with_parity("0", d.base.n, vec![]);
    let (iota, pi, _) = canonical_maps(d);
    verify_exact_sequence(
        &[&zero, &a, g, &d.base, &zero],
        &[Matrix::zeros(a.dim(), 0), iota, pi, Matrix::zeros(0, d.base.dim())],
    )
}

/// Whether `f1 − f2 = δ⁰h` for an even compatible `h : b → a`.
pub fn differ_by_coboundary(base: &HomSuperAlgebra, module: &Representation, f1: &SkewMap, f2: &SkewMap) -> Result<bool> {
    let cx = Complex::new(base, module)?;
    let wb = cx.wedge();
    let dv = module.dim();
    let diff = sub_vec(&skew_to_cochain(base, wb, f1, dv), &skew_to_cochain(base, wb, f2, dv));
    let (_, d0) = cx.coboundary_matrix(0, 0);
    Ok(d0.solve(&diff).is_some())
}
