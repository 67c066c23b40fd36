#![allow(dead_code)]

use std::io::Write;

use nambu::cohomology::{skew_cocycle_basis, Complex, SkewMap};
use nambu::linalg::{add_scaled, zero_vec};
use nambu::random::Rand;
use nambu::tstar::{coadjoint_rep, cyclic_cocycle_basis, theta_coordinates};
use nambu::{HomSuperAlgebra, Scalar};
use rand::Rng;

/// Written straight to stdout so the line survives the test harness capture.
pub fn line(text: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").unwrap();
    out.flush().unwrap();
}

pub fn small(rng: &mut Rand) -> Scalar {
    Scalar::from_int(rng.gen_range(-2..=2))
}

pub fn combine_maps(rng: &mut Rand, maps: &[SkewMap], d: usize) -> SkewMap {
    let mut out = SkewMap::new();
    for m in maps {
        let c = small(rng);
        if c.is_zero() {
            continue;
        }
        for (t, v) in m {
            add_scaled(out.entry(t.clone()).or_insert_with(|| zero_vec(d)), &c, v);
        }
    }
    out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    out
}

/// θ samples cycling through four kinds: closed and cyclic, closed, arbitrary
/// even skew, and cyclic cocycle plus an arbitrary perturbation.
pub fn theta_samples(rng: &mut Rand, g: &HomSuperAlgebra, count: usize) -> Vec<SkewMap> {
    let d = g.dim();
    let sc = theta_coordinates(g);
    let co = coadjoint_rep(g);
    let cx = Complex::new(g, &co).unwrap();
    let (_, closed) = skew_cocycle_basis(&cx, 0);
    let closed: Vec<SkewMap> = closed.iter().map(|c| sc.to_map(c)).collect();
    let cyclic = cyclic_cocycle_basis(g).unwrap();
    let arbitrary = |rng: &mut Rand| -> SkewMap {
        let coords: Vec<Scalar> = (0..sc.len()).map(|_| small(rng)).collect();
        sc.to_map(&coords)
    };
    (0..count)
        .map(|i| match i % 4 {
            0 => combine_maps(rng, &cyclic, d),
            1 => combine_maps(rng, &closed, d),
            2 => arbitrary(rng),
            _ => {
                let a = combine_maps(rng, &cyclic, d);
                let b = arbitrary(rng);
                let mut out = a;
                for (t, v) in b {
                    add_scaled(out.entry(t).or_insert_with(|| zero_vec(d)), &Scalar::one(), &v);
                }
                out
            }
        })
        .collect()
}
