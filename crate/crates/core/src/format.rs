//! JSON algebra files. Indices are one-based on disk and zero-based in
//! memory; this module is the only place that translates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cohomology::{Representation, SkewMap, WedgeBasis};
use crate::error::{NambuError, Result};
use crate::graded::{fmt_tuple, straighten, tuple_parity, HomSuperAlgebra, MetricAlgebra};
use crate::linalg::{zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::tstar::Certificate;

/// `[e_args] = Σ value[k] e_k`, or a θ / cocycle entry.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub args: Vec<usize>,
    pub value: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RhoFile {
    pub args: Vec<usize>,
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub name: String,
    pub parity: Vec<u8>,
    pub nu: Vec<Vec<Scalar>>,
    pub rho: Vec<RhoFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub n: usize,
    pub dim: usize,
    pub parity: Vec<u8>,
    /// Rows of α; column j is α(e_{j+1}).
    pub alpha: Vec<Vec<Scalar>>,
    pub bracket: Vec<EntryFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<EntryFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<EntryFile>>,
}

/// A parsed and validated algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub algebra: HomSuperAlgebra,
    pub form: Option<Matrix>,
    pub representation: Option<Representation>,
    pub theta: Option<SkewMap>,
    pub cocycle: Option<SkewMap>,
}

impl Loaded {
    pub fn new(algebra: HomSuperAlgebra) -> Self {
        Loaded { algebra, form: None, representation: None, theta: None, cocycle: None }
    }

    pub fn metric(&self) -> Result<MetricAlgebra> {
        let gram = self.form.clone().ok_or_else(|| NambuError::Precondition("file has no form".into()))?;
        Ok(MetricAlgebra::new(self.algebra.clone(), gram))
    }
}

fn perr(msg: String) -> NambuError {
    NambuError::Parse(msg)
}

fn matrix(rows: &[Vec<Scalar>], r: usize, c: usize, field: &str) -> Result<Matrix> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(perr(format!("{field}: expected a {r}×{c} matrix")));
    }
    Ok(Matrix::from_rows_with_cols(rows.to_vec(), c))
}

fn parity_vec(p: &[u8], len: usize, field: &str) -> Result<Vec<u8>> {
    if p.len() != len {
        return Err(perr(format!("{field}: expected {len} entries, got {}", p.len())));
    }
    if let Some(i) = p.iter().position(|&x| x > 1) {
        return Err(perr(format!("{field}[{i}]: parity must be 0 or 1")));
    }
    Ok(p.to_vec())
}

fn zero_based(args: &[usize], dim: usize, field: &str) -> Result<Vec<usize>> {
    args.iter()
        .map(|&i| {
            if i == 0 || i > dim {
                Err(perr(format!("{field}: index {i} outside 1..={dim}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn value_vec(map: &BTreeMap<String, Scalar>, len: usize, field: &str) -> Result<Vector> {
    let mut v = zero_vec(len);
    for (k, x) in map {
        let i: usize = k.trim().parse().map_err(|_| perr(format!("{field}: output key {k:?} is not an index")))?;
        if i == 0 || i > len {
            return Err(perr(format!("{field}: output index {i} outside 1..={len}")));
        }
        v[i - 1] = x.clone();
    }
    Ok(v)
}

/// Canonicalises entries onto canonical tuples; rejects repeated even
/// indices with nonzero values and sign-inconsistent duplicates.
fn entries(
    list: &[EntryFile],
    parity: &[u8],
    arity: usize,
    out_parity: &[u8],
    field: &str,
) -> Result<SkewMap> {
    let mut map = SkewMap::new();
    for (pos, e) in list.iter().enumerate() {
        let ctx = format!("{field}[{pos}] args {:?}", e.args);
        if e.args.len() != arity {
            return Err(perr(format!("{ctx}: expected {arity} arguments")));
        }
        let args = zero_based(&e.args, parity.len(), &ctx)?;
        let v = value_vec(&e.value, out_parity.len(), &ctx)?;
        let (sign, key) = straighten(&args, parity)?;
        if sign == 0 {
            if v.iter().any(|x| !x.is_zero()) {
                return Err(perr(format!("{ctx}: repeated even index with a nonzero value")));
            }
            continue;
        }
        let v: Vector = if sign < 0 { v.iter().map(|x| -x).collect() } else { v };
        let p = tuple_parity(&key, parity);
        if let Some(k) = (0..v.len()).find(|&k| !v[k].is_zero() && out_parity[k] != p) {
            return Err(perr(format!("{ctx}: output e{} has the wrong parity", k + 1)));
        }
        match map.get(&key) {
            Some(old) if old != &v => {
                return Err(perr(format!("{ctx}: sign-inconsistent duplicate of {}", fmt_tuple(&key))));
            }
            _ => {}
        }
        if v.iter().any(|x| !x.is_zero()) {
            map.insert(key, v);
        }
    }
    Ok(map)
}

pub fn parse_algebra(text: &str) -> Result<Loaded> {
    let f: AlgebraFile = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    from_file(&f)
}

pub fn from_file(f: &AlgebraFile) -> Result<Loaded> {
    if f.n < 2 {
        return Err(perr(format!("n: arity must be at least 2, got {}", f.n)));
    }
    let d = f.dim;
    let parity = parity_vec(&f.parity, d, "parity")?;
    let alpha = matrix(&f.alpha, d, d, "alpha")?;
    let mut algebra = HomSuperAlgebra::abelian_with_parity(&f.name, f.n, parity.clone()).with_alpha(alpha);
    algebra.bracket = entries(&f.bracket, &parity, f.n, &parity, "bracket")?;
    let form = f.form.as_ref().map(|m| matrix(m, d, d, "form")).transpose()?;
    let representation = match &f.representation {
        None => None,
        Some(r) => {
            let dv = r.parity.len();
            let rp = parity_vec(&r.parity, dv, "representation.parity")?;
            let nu = matrix(&r.nu, dv, dv, "representation.nu")?;
            let wb = WedgeBasis::for_algebra(&algebra);
            let mut rho = vec![Matrix::zeros(dv, dv); wb.len()];
            for (pos, e) in r.rho.iter().enumerate() {
                let ctx = format!("representation.rho[{pos}] args {:?}", e.args);
                if e.args.len() != f.n - 1 {
                    return Err(perr(format!("{ctx}: expected {} arguments", f.n - 1)));
                }
                let args = zero_based(&e.args, d, &ctx)?;
                let m = matrix(&e.matrix, dv, dv, &ctx)?;
                match wb.lookup(&args) {
                    Some((s, i)) if s != 0 => rho[i] = if s < 0 { m.scale(&-Scalar::one()) } else { m },
                    _ => {
                        if !m.is_zero() {
                            return Err(perr(format!("{ctx}: vanishing wedge with a nonzero matrix")));
                        }
                    }
                }
            }
            Some(Representation { name: r.name.clone(), parity: rp, rho, nu })
        }
    };
    let theta = f.theta.as_ref().map(|t| entries(t, &parity, f.n, &parity, "theta")).transpose()?;
    let cocycle = match (&f.cocycle, &representation) {
        (None, _) => None,
        (Some(_), None) => return Err(perr("cocycle: needs a representation block".into())),
        (Some(c), Some(r)) => Some(entries(c, &parity, f.n, &r.parity, "cocycle")?),
    };
    Ok(Loaded { algebra, form, representation, theta, cocycle })
}

fn rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.row_vecs()
}

pub fn entries_to_file(map: &SkewMap) -> Vec<EntryFile> {
    map.iter()
        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
        .map(|(t, v)| EntryFile {
            args: t.iter().map(|&i| i + 1).collect(),
            value: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| ((k + 1).to_string(), x.clone()))
                .collect(),
        })
        .collect()
}

pub fn to_file(l: &Loaded) -> AlgebraFile {
    let a = &l.algebra;
    let representation = l.representation.as_ref().map(|r| {
        let wb = WedgeBasis::for_algebra(a);
        RepresentationFile {
            name: r.name.clone(),
            parity: r.parity.clone(),
            nu: rows(&r.nu),
            rho: wb
                .elements
                .iter()
                .zip(&r.rho)
                .filter(|(_, m)| !m.is_zero())
                .map(|(t, m)| RhoFile { args: t.iter().map(|&i| i + 1).collect(), matrix: rows(m) })
                .collect(),
        }
    });
    AlgebraFile {
        name: a.name.clone(),
        n: a.n,
        dim: a.dim(),
        parity: a.parity.clone(),
        alpha: rows(&a.alpha),
        bracket: entries_to_file(&a.bracket),
        form: l.form.as_ref().map(rows),
        representation,
        theta: l.theta.as_ref().map(entries_to_file),
        cocycle: l.cocycle.as_ref().map(entries_to_file),
    }
}

/// Canonical text: pretty JSON with a trailing newline.
pub fn dump(l: &Loaded) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(l)).expect("serialisable");
    s.push('\n');
    s
}

pub fn dump_algebra(a: &HomSuperAlgebra) -> String {
    dump(&Loaded::new(a.clone()))
}

pub fn dump_metric(m: &MetricAlgebra) -> String {
    dump(&Loaded { form: Some(m.gram.clone()), ..Loaded::new(m.algebra.clone()) })
}

/// θ from a file holding a `theta` block (an algebra file or `{"theta": [...]}`).
pub fn parse_theta(text: &str, g: &HomSuperAlgebra) -> Result<SkewMap> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    let t = v.get("theta").ok_or_else(|| perr("missing theta block".into()))?;
    let list: Vec<EntryFile> = serde_json::from_value(t.clone()).map_err(|e| perr(format!("theta: {e}")))?;
    entries(&list, &g.parity, g.n, &g.parity, "theta")
}

/// `{"name": "PASS" | "FAIL: witness"}` in check order, keyed for stable output.
pub fn checks_json(r: &Report) -> serde_json::Value {
    let mut m = serde_json::Map::new();
    for c in &r.checks {
        let v = match &c.witness {
            None => "PASS".to_string(),
            Some(w) => format!("FAIL: {w}"),
        };
        m.insert(c.name.clone(), serde_json::Value::String(v));
    }
    serde_json::Value::Object(m)
}

pub fn report_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("serialisable") + "\n"
}

pub fn certificate_json(c: &Certificate) -> String {
    let g1 = serde_json::to_value(to_file(&Loaded::new(c.g1.clone()))).expect("serialisable");
    let v = serde_json::json!({
        "g1": g1,
        "theta": entries_to_file(&c.theta),
        "phi": rows(&c.phi),
        "odd": c.odd,
        "nilpotent_lengths": {"g": c.lengths.0, "g1": c.lengths.1},
        "checks": checks_json(&c.checks),
    });
    serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
}

/// A `d×d` matrix given as rows, either bare or as `{"matrix": rows}`.
pub fn parse_matrix(text: &str, d: usize) -> Result<Matrix> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    let body = v.get("matrix").cloned().unwrap_or(v);
    let rows: Vec<Vec<Scalar>> = serde_json::from_value(body).map_err(|e| perr(format!("matrix: {e}")))?;
    matrix(&rows, d, d, "matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const H3: &str = r#"{
  "name": "H3",
  "n": 2,
  "dim": 3,
  "parity": [0, 0, 0],
  "alpha": [["1","0","0"],["0","1","0"],["0","0","1"]],
  "bracket": [{"args": [2, 1], "value": {"3": "-1"}}]
}"#;

    #[test]
    fn loads_and_canonicalises() {
        let l = parse_algebra(H3).unwrap();
        assert_eq!(l.algebra.bracket, crate::graded::examples::heisenberg().bracket);
    }

    #[test]
    fn dump_load_round_trip_is_byte_stable() {
        for g in corpus::valid_algebras() {
            let s = dump_algebra(&g);
            let l = parse_algebra(&s).unwrap();
            assert_eq!(l.algebra, g);
            assert_eq!(dump(&l), s);
        }
        for m in corpus::metric_algebras() {
            let s = dump_metric(&m);
            assert_eq!(dump(&parse_algebra(&s).unwrap()), s);
        }
    }

    #[test]
    fn parse_errors_carry_context() {
        let bad = H3.replace("\"-1\"", "\"1/0\"");
        let e = parse_algebra(&bad).unwrap_err();
        assert!(matches!(e, NambuError::Parse(ref m) if m.contains("line")), "{e}");
        let dup = H3.replace(
            r#"[{"args": [2, 1], "value": {"3": "-1"}}]"#,
            r#"[{"args": [2, 1], "value": {"3": "-1"}}, {"args": [1, 2], "value": {"3": "-1"}}]"#,
        );
        let e = parse_algebra(&dup).unwrap_err();
        assert!(e.to_string().contains("sign-inconsistent"), "{e}");
        let idx = H3.replace("[2, 1]", "[4, 1]");
        assert!(parse_algebra(&idx).unwrap_err().to_string().contains("bracket[0]"));
        let unknown = H3.replace("\"dim\"", "\"dimension\"");
        assert!(parse_algebra(&unknown).is_err());
    }

    #[test]
    fn representation_and_theta_blocks() {
        let g = crate::graded::examples::heisenberg();
        let rep = crate::cohomology::adjoint_rep(&g);
        let mut theta = SkewMap::new();
        theta.insert(vec![0, 1], vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        let l = Loaded { representation: Some(rep), cocycle: Some(theta.clone()), theta: Some(theta), ..Loaded::new(g) };
        let s = dump(&l);
        assert_eq!(parse_algebra(&s).unwrap(), l);
        assert_eq!(parse_theta(&s, &l.algebra).unwrap(), l.theta.clone().unwrap());
    }
}
