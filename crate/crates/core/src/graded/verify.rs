use rayon::prelude::*;

use super::{canonical_tuples, fmt_tuple, fmt_vec, koszul, straighten_unchecked, tuple_parity, HomSuperAlgebra};
use crate::error::{NambuError, Result};
use crate::linalg::{add_scaled, zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;

fn even_map_witness(m: &Matrix, rows_parity: &[u8], cols_parity: &[u8]) -> Option<String> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if rows_parity[i] != cols_parity[j] && !m[(i, j)].is_zero() {
                return Some(format!("entry ({},{}) = {} mixes parities", i + 1, j + 1, m[(i, j)]));
            }
        }
    }
    None
}

/// Grading, homogeneity, the twisted fundamental identity and
/// multiplicativity, each on all basis tuples.
pub fn verify_algebra(a: &HomSuperAlgebra) -> Report {
    let mut r = Report::new(&format!("algebra {}", a.name));
    let d = a.dim();
    let par = &a.parity;

    let shape_ok = a.alpha.rows() == d && a.alpha.cols() == d;
    r.push(
        "alpha even",
        if shape_ok { even_map_witness(&a.alpha, par, par) } else { Some("alpha has wrong shape".into()) },
    );
    if !shape_ok {
        return r;
    }

    let mut hom = None;
    for (key, val) in &a.bracket {
        let (sign, canon) = straighten_unchecked(key, par);
        if key.len() != a.n || sign != 1 || &canon != key {
            hom = Some(format!("stored key {} is not canonical", fmt_tuple(key)));
            break;
        }
        let p = tuple_parity(key, par);
        if let Some(k) = (0..d).find(|&k| !val[k].is_zero() && par[k] != p) {
            hom = Some(format!("[e{}] has a component on e{} of the wrong parity", fmt_tuple(key), k + 1));
            break;
        }
    }
    r.push("homogeneity", hom);

    let alpha_cols: Vec<Vector> = (0..d).map(|j| a.alpha.col(j)).collect();
    let xs = canonical_tuples(par, a.n - 1);
    let ys = canonical_tuples(par, a.n);
    let ads: Vec<Matrix> = xs.iter().map(|x| a.ad(x)).collect();
    let pairs: Vec<(usize, usize)> =
        (0..xs.len()).flat_map(|i| (0..ys.len()).map(move |j| (i, j))).collect();

    let fi = pairs.par_iter().find_map_first(|&(xi, yi)| {
        let x = &xs[xi];
        let y = &ys[yi];
        let px = tuple_parity(x, par);
        let mut lhs_args: Vec<Vector> = x.iter().map(|&i| alpha_cols[i].clone()).collect();
        lhs_args.push(a.bracket_basis(y));
        let lhs = a.eval(&lhs_args);
        let mut rhs = zero_vec(d);
        let mut prefix = 0u8;
        for i in 0..a.n {
            let xy = ads[xi].col(y[i]);
            let mut args: Vec<Vector> = y.iter().map(|&k| alpha_cols[k].clone()).collect();
            args[i] = xy;
            let term = a.eval(&args);
            let c = Scalar::sign(koszul(px, prefix));
            add_scaled(&mut rhs, &c, &term);
            prefix ^= par[y[i]];
        }
        (lhs != rhs).then(|| {
            format!("x={} y={}: lhs={} rhs={}", fmt_tuple(x), fmt_tuple(y), fmt_vec(&lhs), fmt_vec(&rhs))
        })
    });
    r.push("fundamental identity", fi);

    let mult = ys.par_iter().find_map_first(|y| {
        let lhs = a.alpha.mul_vec(&a.bracket_basis(y));
        let args: Vec<Vector> = y.iter().map(|&k| alpha_cols[k].clone()).collect();
        let rhs = a.eval(&args);
        (lhs != rhs).then(|| {
            format!("y={}: α[y]={} [αy]={}", fmt_tuple(y), fmt_vec(&lhs), fmt_vec(&rhs))
        })
    });
    r.push("multiplicativity", mult);
    r
}

/// `f[x_1,…,x_n] = [f x_1,…,f x_n]′` and `f∘α = α′∘f`.
pub fn verify_morphism(f: &Matrix, a: &HomSuperAlgebra, b: &HomSuperAlgebra) -> Result<Report> {
    if f.rows() != b.dim() || f.cols() != a.dim() {
        return Err(NambuError::DimensionMismatch(format!(
            "map is {}×{}, expected {}×{}",
            f.rows(),
            f.cols(),
            b.dim(),
            a.dim()
        )));
    }
    if a.n != b.n {
        return Err(NambuError::ArityMismatch { expected: a.n, got: b.n });
    }
    let mut r = Report::new(&format!("morphism {} → {}", a.name, b.name));
    r.push("even", even_map_witness(f, &b.parity, &a.parity));
    let cols: Vec<Vector> = (0..a.dim()).map(|j| f.col(j)).collect();
    let ys = canonical_tuples(&a.parity, a.n);
    let br = ys.par_iter().find_map_first(|y| {
        let lhs = f.mul_vec(&a.bracket_basis(y));
        let args: Vec<&Vector> = y.iter().map(|&k| &cols[k]).collect();
        let rhs = b.eval(&args);
        (lhs != rhs).then(|| {
            format!("y={}: f[y]={} [fy]={}", fmt_tuple(y), fmt_vec(&lhs), fmt_vec(&rhs))
        })
    });
    r.push("bracket", br);
    let fa = f.mul(&a.alpha);
    let af = b.alpha.mul(f);
    let tw = (0..a.dim()).find(|&j| fa.col(j) != af.col(j)).map(|j| {
        format!("e{}: fα={} α′f={}", j + 1, fmt_vec(&fa.col(j)), fmt_vec(&af.col(j)))
    });
    r.push("twist", tw);
    Ok(r)
}

/// `(g, ρ∘[·,…,·], ρ)` for a Nambu-Lie superalgebra `g` (α = id) and a
/// self-morphism ρ.
pub fn twist_by_endomorphism(a: &HomSuperAlgebra, rho: &Matrix) -> Result<HomSuperAlgebra> {
    if !a.is_alpha_identity() {
        return Err(NambuError::Precondition("twisting requires α = id".into()));
    }
    let base = verify_algebra(a);
    if !base.all_passed() {
        return Err(NambuError::Precondition(format!("{} is not valid:\n{base}", a.name)));
    }
    let m = verify_morphism(rho, a, a)?;
    if !m.all_passed() {
        let w = m.first_failure().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
        return Err(NambuError::EndomorphismCheckFailed(w.unwrap_or_default()));
    }
    let mut out = HomSuperAlgebra::abelian_with_parity(&format!("{}_ρ", a.name), a.n, a.parity.clone())
        .with_alpha(rho.clone());
    for (k, v) in &a.bracket {
        out.set_bracket(k, rho.mul_vec(v))?;
    }
    let post = verify_algebra(&out);
    if !post.all_passed() {
        return Err(NambuError::VerificationFailed(format!("twisted algebra:\n{post}")));
    }
    Ok(out)
}
