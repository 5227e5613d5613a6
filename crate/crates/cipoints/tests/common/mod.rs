//! Test corpus shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use cipoints_core::{GaloisField, SparsePolynomial, VarietyDescriptor};

pub fn variety(
    field: &GaloisField,
    nvars: usize,
    polys: &[String],
    dim: i64,
    s: i64,
) -> VarietyDescriptor {
    let gens = polys
        .iter()
        .map(|t| SparsePolynomial::parse(t, nvars, field).unwrap())
        .collect();
    VarietyDescriptor::new(field, nvars, gens, dim, s).unwrap()
}

/// A named corpus variety over a prime field, with the primitive Betti
/// number the estimates need when it cannot be derived.
pub struct Entry {
    pub name: &'static str,
    pub variety: VarietyDescriptor,
    pub betti: Option<u64>,
}

fn is_square(x: u64, p: u64) -> bool {
    (0..p).any(|y| y * y % p == x % p)
}

/// The six corpus varieties over `F_p`.
pub fn corpus(p: u64) -> Vec<Entry> {
    let f = GaloisField::prime(p).unwrap();
    let m1 = p - 1;
    // A binary quadratic form without F_p-zeros in P^1.
    let anisotropic = if p == 2 {
        "1:2,0 + 1:1,1 + 1:0,2".to_string()
    } else {
        let a = (1..p).find(|&a| !is_square(a, p)).unwrap();
        format!("1:2,0 + {}:0,2", p - a)
    };
    vec![
        Entry {
            name: "quadric cone",
            variety: variety(&f, 4, &[format!("1:1,1,0,0 + {m1}:0,0,2,0")], 2, 0),
            betti: None,
        },
        Entry {
            name: "smooth quadric",
            variety: variety(&f, 4, &[format!("1:1,1,0,0 + {m1}:0,0,1,1")], 2, -1),
            betti: Some(1),
        },
        Entry {
            name: "Fermat cubic",
            variety: variety(&f, 3, &["1:3,0,0 + 1:0,3,0 + 1:0,0,3".to_string()], 1, -1),
            betti: None,
        },
        Entry {
            name: "plane conic",
            variety: variety(&f, 3, &[format!("1:1,1,0 + {m1}:0,0,2")], 1, -1),
            betti: None,
        },
        Entry {
            name: "single point",
            variety: variety(&f, 2, &["1:0,1".to_string()], 0, -1),
            betti: Some(0),
        },
        Entry {
            name: "empty",
            variety: variety(&f, 2, &[anisotropic], 0, -1),
            betti: Some(1),
        },
    ]
}

pub fn cone(p: u64) -> VarietyDescriptor {
    corpus(p).swap_remove(0).variety
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Corpus files with the `--betti` value `verify` needs.
pub const CORPUS_FILES: [(&str, Option<u64>); 8] = [
    ("cone2.var", None),
    ("cone13.var", None),
    ("conic5.var", None),
    ("empty2.var", Some(1)),
    ("fermat_cubic7.var", None),
    ("point2.var", Some(0)),
    ("quadric4.var", None),
    ("smooth_quadric3.var", Some(1)),
];

/// Every `s >= 0` with `q^{(n+1)(s+1)} <= 2^22`.
pub fn moment_range(v: &VarietyDescriptor) -> Vec<i64> {
    let q = v.field().order() as u128;
    (0..)
        .take_while(|&s| {
            q.checked_pow((v.nvars() * (s as usize + 1)) as u32)
                .is_some_and(|t| t <= 1 << 22)
        })
        .collect()
}

/// Projective point count over a prime field by plain integer arithmetic,
/// independent of the polynomial evaluator: every nonzero vector of
/// `F_p^{nvars}` is tested and the total divided by `p - 1`.
pub fn brute_force_count(v: &VarietyDescriptor) -> u64 {
    let p = v.field().order() as u64;
    assert!(v.field().is_prime_field());
    let nvars = v.nvars();
    let terms: Vec<Vec<(u64, Vec<u32>)>> = v
        .generators()
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|t| (t.coeff.index() as u64, t.exponents.clone()))
                .collect()
        })
        .collect();
    let mut x = vec![0u64; nvars];
    let mut affine = 0u64;
    for code in 1..p.pow(nvars as u32) {
        let mut c = code;
        for xi in x.iter_mut().rev() {
            *xi = c % p;
            c /= p;
        }
        let zero = terms.iter().all(|g| {
            g.iter()
                .map(|(coeff, exps)| {
                    exps.iter()
                        .zip(&x)
                        .fold(*coeff, |acc, (&e, &xi)| acc * xi.pow(e) % p)
                })
                .sum::<u64>()
                % p
                == 0
        });
        affine += zero as u64;
    }
    affine / (p - 1)
}
