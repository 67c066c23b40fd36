//! Named test algebras: the valid examples and their twists, deliberately
//! broken variants, and metric algebras.

use crate::cohomology::SkewMap;
use crate::graded::examples::*;
use crate::graded::{direct_sum, twist_by_endomorphism, HomSuperAlgebra, MetricAlgebra};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::tstar::{cyclic_cocycle_basis, tstar_extend};

fn diag(v: &[i64]) -> Matrix {
    Matrix::diagonal(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
}

fn twisted(g: HomSuperAlgebra, rho: &[i64]) -> HomSuperAlgebra {
    let mut t = twist_by_endomorphism(&g, &diag(rho)).expect("corpus twist is a morphism");
    t.name = format!("{}_{:?}", g.name, rho);
    t
}

/// Untwisted valid examples.
pub fn base_algebras() -> Vec<HomSuperAlgebra> {
    vec![
        abelian(2, 2, 0),
        abelian(2, 1, 1),
        abelian(3, 2, 2),
        heisenberg(),
        super_heisenberg(),
        odd_square(),
        n4(),
        a4(),
        ternary_solvable(),
        sl2(),
    ]
}

/// Valid twists of the examples by diagonal self-morphisms (some singular).
pub fn twisted_algebras() -> Vec<HomSuperAlgebra> {
    vec![
        twisted(heisenberg(), &[2, 3, 6]),
        twisted(heisenberg(), &[-1, 1, -1]),
        twisted(heisenberg(), &[1, 0, 0]),
        twisted(super_heisenberg(), &[6, 2, 3]),
        twisted(super_heisenberg(), &[0, 1, 0]),
        twisted(odd_square(), &[4, 2]),
        twisted(n4(), &[1, 2, 3, 6]),
        twisted(n4(), &[0, 1, 1, 0]),
        twisted(a4(), &[-1, -1, 1, 1]),
        twisted(ternary_solvable(), &[5, 1, 1]),
    ]
}

pub fn valid_algebras() -> Vec<HomSuperAlgebra> {
    let mut v = base_algebras();
    v.extend(twisted_algebras());
    v
}

/// Invalid candidates, each with the name of a check it must fail.
pub fn broken_algebras() -> Vec<(HomSuperAlgebra, &'static str)> {
    let mut h_alpha = heisenberg().with_alpha(diag(&[2, 1, 1]));
    h_alpha.name = "H3 with α = diag(2,1,1)".into();
    let mut sh_mixed = super_heisenberg().with_alpha(Matrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]));
    sh_mixed.name = "SH(1|2) with odd-to-even α".into();
    let mut n4_broken = n4().with_bracket(&[0, 1, 3], crate::linalg::unit_vec(4, 0));
    n4_broken.name = "N4-broken".into();
    let mut sh_parity = super_heisenberg().with_bracket(&[0, 1], crate::linalg::unit_vec(3, 0));
    sh_parity.name = "SH(1|2) with [e1,f1] = e1".into();
    vec![
        (broken_heisenberg(), "fundamental identity"),
        (h_alpha, "multiplicativity"),
        (sh_mixed, "alpha even"),
        (n4_broken, "fundamental identity"),
        (sh_parity, "homogeneity"),
    ]
}

/// Orthogonal direct sum of metric algebras of the same arity.
pub fn metric_direct_sum(a: &MetricAlgebra, b: &MetricAlgebra) -> MetricAlgebra {
    let g = direct_sum(&a.algebra, &b.algebra).expect("same arity");
    MetricAlgebra::new(g, a.gram.direct_sum(&b.gram))
}

fn tstar_with(g: &HomSuperAlgebra, pick: usize) -> MetricAlgebra {
    let theta = if pick == 0 {
        SkewMap::new()
    } else {
        cyclic_cocycle_basis(g).expect("coadjoint shapes")[pick - 1].clone()
    };
    let mut m = tstar_extend(g, &theta).expect("corpus T*-extension").result;
    if pick > 0 {
        m.algebra.name = format!("T*_θ({})", g.name);
    }
    m
}

/// Metric algebras, even and odd dimensional, nilpotent and not.
pub fn metric_algebras() -> Vec<MetricAlgebra> {
    let hyperbolic = MetricAlgebra::new(abelian(2, 2, 0), Matrix::from_ints(&[&[0, 1], &[1, 0]]));
    let neg_line = MetricAlgebra::new(abelian(2, 1, 0), Matrix::from_ints(&[&[-1]]));
    let killing = {
        let g = sl2();
        let ads: Vec<Matrix> = (0..3).map(|i| g.ad(&[i])).collect();
        let rows = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let p = ads[i].mul(&ads[j]);
                        (0..3).fold(Scalar::zero(), |acc, k| &acc + &p[(k, k)])
                    })
                    .collect()
            })
            .collect();
        MetricAlgebra::new(g, Matrix::from_rows(rows))
    };
    let t0h3 = tstar_with(&heisenberg(), 0);
    vec![
        hyperbolic,
        neg_line.clone(),
        killing,
        MetricAlgebra::new(a4(), Matrix::identity(4)),
        t0h3.clone(),
        tstar_with(&super_heisenberg(), 0),
        tstar_with(&n4(), 0),
        tstar_with(&abelian(2, 1, 1), 0),
        tstar_with(&abelian(2, 3, 0), 1),
        tstar_with(&abelian(2, 1, 1), 1),
        tstar_with(&twisted(heisenberg(), &[-1, 1, -1]), 0),
        tstar_with(&direct_sum(&heisenberg(), &abelian(2, 1, 0)).unwrap(), 0),
        metric_direct_sum(&t0h3, &neg_line),
    ]
}
