//! ℤ₂-graded algebras given by structure constants on canonical tuples.

mod metric;
mod structure;
mod verify;

pub use metric::{verify_metric, MetricAlgebra};
pub use structure::{
    derived_series, direct_sum, is_graded, is_hom_ideal, is_hom_subalgebra, lower_central_series,
    quotient, transform_basis, Quotient, Series,
};
pub use verify::{twist_by_endomorphism, verify_algebra, verify_morphism};

use std::collections::BTreeMap;

use crate::error::{NambuError, Result};
use crate::linalg::{add_scaled, zero_vec, Matrix, Vector};
use crate::scalar::Scalar;

/// Parity of each basis vector; `parity[i] = |e_{i+1}|`.
pub type Parity = Vec<u8>;

/// Sorts `indices` by adjacent transpositions, each contributing
/// `−(−1)^{p_a p_b}`. Returns sign 0 when an even index repeats.
pub fn straighten(indices: &[usize], parity: &[u8]) -> Result<(i8, Vec<usize>)> {
    for &i in indices {
        if i >= parity.len() {
            return Err(NambuError::IndexOutOfRange { index: i, dim: parity.len() });
        }
    }
    Ok(straighten_unchecked(indices, parity))
}

pub(crate) fn straighten_unchecked(indices: &[usize], parity: &[u8]) -> (i8, Vec<usize>) {
    let mut t = indices.to_vec();
    let mut sign: i8 = 1;
    let k = t.len();
    for pass in 0..k {
        let mut swapped = false;
        for j in 0..k.saturating_sub(pass + 1) {
            if t[j] > t[j + 1] {
                if parity[t[j]] & parity[t[j + 1]] == 0 {
                    sign = -sign;
                }
                t.swap(j, j + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1] && parity[w[0]] == 0) {
        sign = 0;
    }
    (sign, t)
}

/// All canonical tuples of length `k` in lexicographic order: nondecreasing,
/// with repeats allowed only on odd indices.
pub fn canonical_tuples(parity: &[u8], k: usize) -> Vec<Vec<usize>> {
    fn rec(parity: &[u8], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..parity.len() {
            cur.push(i);
            let next = if parity[i] == 1 { i } else { i + 1 };
            rec(parity, k, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(parity, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn tuple_parity(tuple: &[usize], parity: &[u8]) -> u8 {
    tuple.iter().fold(0, |acc, &i| acc ^ parity[i])
}

/// `(−1)^{a·b}` as a boolean "negative" flag.
pub(crate) fn koszul(a: u8, b: u8) -> bool {
    a & b & 1 == 1
}

/// Parity of a vector when homogeneous; `None` for zero or mixed vectors.
pub fn vector_parity(v: &[Scalar], parity: &[u8]) -> Option<u8> {
    let mut p = None;
    for (x, &q) in v.iter().zip(parity) {
        if !x.is_zero() {
            match p {
                None => p = Some(q),
                Some(p0) if p0 != q => return None,
                _ => {}
            }
        }
    }
    p
}

pub fn fmt_tuple(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// An n-ary multiplicative Hom-Nambu-Lie superalgebra candidate
/// `(g, [·,…,·], α)`. Loading does not validate; see `verify_algebra`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSuperAlgebra {
    pub name: String,
    pub n: usize,
    pub parity: Parity,
    /// Canonical n-tuple → output coordinates. Zero values are not stored.
    pub bracket: BTreeMap<Vec<usize>, Vector>,
    /// Column j is α(e_j).
    pub alpha: Matrix,
}

impl HomSuperAlgebra {
    /// Zero bracket with α = id.
    pub fn abelian_with_parity(name: &str, n: usize, parity: Parity) -> Self {
        assert!(n >= 2, "arity must be at least 2");
        let d = parity.len();
        HomSuperAlgebra {
            name: name.to_string(),
            n,
            parity,
            bracket: BTreeMap::new(),
            alpha: Matrix::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn with_alpha(mut self, alpha: Matrix) -> Self {
        assert_eq!((alpha.rows(), alpha.cols()), (self.dim(), self.dim()));
        self.alpha = alpha;
        self
    }

    /// Sets `[e_args] = value`, storing it on the canonical tuple with the
    /// straightening sign.
    pub fn set_bracket(&mut self, args: &[usize], value: Vector) -> Result<()> {
        if args.len() != self.n {
            return Err(NambuError::ArityMismatch { expected: self.n, got: args.len() });
        }
        if value.len() != self.dim() {
            return Err(NambuError::DimensionMismatch(format!(
                "bracket value of length {} in dimension {}",
                value.len(),
                self.dim()
            )));
        }
        let (sign, key) = straighten(args, &self.parity)?;
        if sign == 0 {
            if value.iter().any(|x| !x.is_zero()) {
                return Err(NambuError::Precondition(format!(
                    "bracket {} repeats an even index but has a nonzero value",
                    fmt_tuple(args)
                )));
            }
            return Ok(());
        }
        let value: Vector =
            if sign < 0 { value.iter().map(|x| -x).collect() } else { value };
        if value.iter().all(Scalar::is_zero) {
            self.bracket.remove(&key);
        } else {
            self.bracket.insert(key, value);
        }
        Ok(())
    }

    pub fn with_bracket(mut self, args: &[usize], value: Vector) -> Self {
        self.set_bracket(args, value).expect("valid bracket entry");
        self
    }

    /// `[e_{t_1},…,e_{t_n}]` for any tuple of basis indices.
    pub fn bracket_basis(&self, tuple: &[usize]) -> Vector {
        let (sign, key) = straighten_unchecked(tuple, &self.parity);
        match (sign, self.bracket.get(&key)) {
            (0, _) | (_, None) => zero_vec(self.dim()),
            (1, Some(v)) => v.clone(),
            (_, Some(v)) => v.iter().map(|x| -x).collect(),
        }
    }

    /// Accumulates `c · [e_tuple]` into `acc`.
    pub(crate) fn add_bracket_basis(&self, acc: &mut [Scalar], c: &Scalar, tuple: &[usize]) {
        let (sign, key) = straighten_unchecked(tuple, &self.parity);
        if sign == 0 {
            return;
        }
        if let Some(v) = self.bracket.get(&key) {
            let c = if sign < 0 { -c } else { c.clone() };
            add_scaled(acc, &c, v);
        }
    }

    /// Multilinear evaluation of the bracket on coordinate vectors.
    pub fn bracket_eval(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.n {
            return Err(NambuError::ArityMismatch { expected: self.n, got: args.len() });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.dim()) {
            return Err(NambuError::DimensionMismatch(format!(
                "argument of length {} in dimension {}",
                a.len(),
                self.dim()
            )));
        }
        Ok(self.eval(args))
    }

    pub(crate) fn eval<V: AsRef<[Scalar]>>(&self, args: &[V]) -> Vector {
        let mut acc = zero_vec(self.dim());
        if self.bracket.is_empty() {
            return acc;
        }
        let supports: Vec<Vec<(usize, &Scalar)>> = args
            .iter()
            .map(|a| a.as_ref().iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) {
            return acc;
        }
        let mut tuple = vec![0usize; args.len()];
        self.eval_rec(&supports, 0, &Scalar::one(), &mut tuple, &mut acc);
        acc
    }

    fn eval_rec(
        &self,
        supports: &[Vec<(usize, &Scalar)>],
        slot: usize,
        coeff: &Scalar,
        tuple: &mut Vec<usize>,
        acc: &mut Vector,
    ) {
        if slot == supports.len() {
            self.add_bracket_basis(acc, coeff, tuple);
            return;
        }
        for &(i, c) in &supports[slot] {
            tuple[slot] = i;
            let next = coeff * c;
            self.eval_rec(supports, slot + 1, &next, tuple, acc);
        }
    }

    /// Matrix of `z ↦ [e_{x_1},…,e_{x_{n−1}}, z]`.
    pub fn ad(&self, x: &[usize]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        let mut t = x.to_vec();
        t.push(0);
        for z in 0..d {
            t[self.n - 1] = z;
            let col = self.bracket_basis(&t);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, z)] = v;
            }
        }
        m
    }

    pub fn alpha_col(&self, j: usize) -> Vector {
        self.alpha.col(j)
    }

    pub fn is_alpha_identity(&self) -> bool {
        self.alpha.is_identity()
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_empty()
    }
}

/// Example algebras used across the test suites and the CLI.
pub mod examples {
    use super::*;

    fn e(d: usize, i: usize) -> Vector {
        crate::linalg::unit_vec(d, i)
    }

    fn sc(d: usize, i: usize, c: i64) -> Vector {
        let mut v = zero_vec(d);
        v[i] = Scalar::from_int(c);
        v
    }

    pub fn abelian(n: usize, even: usize, odd: usize) -> HomSuperAlgebra {
        let mut parity = vec![0u8; even];
        parity.extend(std::iter::repeat_n(1u8, odd));
        let name = if odd == 0 { format!("abelian({even})") } else { format!("abelian({even}|{odd})") };
        HomSuperAlgebra::abelian_with_parity(&name, n, parity)
    }

    /// `[e1,e2] = e3`.
    pub fn heisenberg() -> HomSuperAlgebra {
        HomSuperAlgebra::abelian_with_parity("H3", 2, vec![0, 0, 0]).with_bracket(&[0, 1], e(3, 2))
    }

    /// `[e1,e2] = e3, [e1,e3] = e1`: the Jacobiator on (e1,e2,e3) is e3.
    pub fn broken_heisenberg() -> HomSuperAlgebra {
        let mut g = heisenberg();
        g.name = "H3-broken".into();
        g.set_bracket(&[0, 2], e(3, 0)).unwrap();
        g
    }

    /// e1 even, f1, f2 odd, `[f1,f2] = e1`.
    pub fn super_heisenberg() -> HomSuperAlgebra {
        HomSuperAlgebra::abelian_with_parity("SH(1|2)", 2, vec![0, 1, 1]).with_bracket(&[1, 2], e(3, 0))
    }

    /// e even, f odd, `[f,f] = e`.
    pub fn odd_square() -> HomSuperAlgebra {
        HomSuperAlgebra::abelian_with_parity("K(1|1)", 2, vec![0, 1]).with_bracket(&[1, 1], e(2, 0))
    }

    /// Ternary, `[e1,e2,e3] = e4`.
    pub fn n4() -> HomSuperAlgebra {
        HomSuperAlgebra::abelian_with_parity("N4", 3, vec![0; 4]).with_bracket(&[0, 1, 2], e(4, 3))
    }

    /// The simple 3-Lie algebra: `[e_j,e_k,e_l] = ε_{jkli} e_i`.
    pub fn a4() -> HomSuperAlgebra {
        let mut g = HomSuperAlgebra::abelian_with_parity("A4", 3, vec![0; 4]);
        // [e2,e3,e4]=e1, [e1,e3,e4]=−e2, [e1,e2,e4]=e3, [e1,e2,e3]=−e4
        g.set_bracket(&[1, 2, 3], sc(4, 0, 1)).unwrap();
        g.set_bracket(&[0, 2, 3], sc(4, 1, -1)).unwrap();
        g.set_bracket(&[0, 1, 3], sc(4, 2, 1)).unwrap();
        g.set_bracket(&[0, 1, 2], sc(4, 3, -1)).unwrap();
        g
    }

    /// Ternary, `[e1,e2,e3] = e1`.
    pub fn ternary_solvable() -> HomSuperAlgebra {
        HomSuperAlgebra::abelian_with_parity("T3", 3, vec![0; 3]).with_bracket(&[0, 1, 2], e(3, 0))
    }

    /// sl2 with basis (h, e, f).
    pub fn sl2() -> HomSuperAlgebra {
        let mut g = HomSuperAlgebra::abelian_with_parity("sl2", 2, vec![0; 3]);
        g.set_bracket(&[0, 1], sc(3, 1, 2)).unwrap();
        g.set_bracket(&[0, 2], sc(3, 2, -2)).unwrap();
        g.set_bracket(&[1, 2], e(3, 0)).unwrap();
        g
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn q(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    #[test]
    fn straighten_examples() {
        assert_eq!(straighten(&[1, 0], &[0, 0]).unwrap(), (-1, vec![0, 1]));
        assert_eq!(straighten(&[1, 0], &[1, 1]).unwrap(), (1, vec![0, 1]));
        assert_eq!(straighten(&[2, 2], &[0, 0, 0]).unwrap().0, 0);
        assert_eq!(straighten(&[2, 0, 1], &[0, 0, 0]).unwrap(), (1, vec![0, 1, 2]));
        assert!(straighten(&[3], &[0]).is_err());
    }

    #[test]
    fn canonical_tuple_counts() {
        assert_eq!(canonical_tuples(&[0, 0, 0], 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(canonical_tuples(&[1, 1], 2).len(), 3);
        let sh = canonical_tuples(&[0, 1, 1], 2);
        assert_eq!(sh, vec![vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn bracket_skew_examples() {
        let h = heisenberg();
        assert_eq!(h.bracket_basis(&[1, 0]), vec![q(0), q(0), q(-1)]);
        let sh = super_heisenberg();
        assert_eq!(sh.bracket_basis(&[2, 1]), vec![q(1), q(0), q(0)]);
        let zero = zero_vec(3);
        let v = h.bracket_eval(&[zero, crate::linalg::unit_vec(3, 1)]).unwrap();
        assert!(v.iter().all(Scalar::is_zero));
    }

    #[test]
    fn eval_matches_linearity() {
        let sh = super_heisenberg();
        // (f1+f2) with itself: [f1,f2] + [f2,f1] = 2 e1
        let v = vec![q(0), q(1), q(1)];
        assert_eq!(sh.eval(&[v.clone(), v]), vec![q(2), q(0), q(0)]);
    }

    #[test]
    fn ad_matrix() {
        let h = heisenberg();
        let a = h.ad(&[0]);
        assert_eq!(a[(2, 1)], q(1));
        assert_eq!(a.rank(), 1);
    }
}
