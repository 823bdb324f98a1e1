#![allow(dead_code)]

use std::path::PathBuf;

use mtg::codes::{build_code, MtgCode, MtgParams};
use mtg::gf::{FieldSpec, Felt};
use mtg::linalg::FMatrix;
use mtg::poly::Poly;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn params(name: &str) -> MtgParams {
    MtgParams::from_text(&fixture(name)).expect("fixture parses")
}

pub fn code(name: &str) -> MtgCode {
    build_code(&params(name)).expect("fixture builds")
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Element of the top field from an expression or digit string.
pub fn el(spec: &FieldSpec, s: &str) -> Felt {
    spec.parse(s, spec.top()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn els(spec: &FieldSpec, s: &str, level: usize) -> Vec<Felt> {
    s.split(',').map(|x| spec.parse(x.trim(), level).unwrap_or_else(|e| panic!("{x}: {e}"))).collect()
}

/// Polynomial from little-endian coefficient expressions.
pub fn poly(spec: &FieldSpec, s: &str) -> Poly {
    Poly::new(els(spec, s, spec.top()), spec.top())
}

pub fn same(a: &[Felt], b: &[Felt]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.value() == y.value())
}

/// Checks the four EEA identities at every index where they are stated:
/// `sigma_i tau_(i-1) - sigma_(i-1) tau_i = (-1)^i G`,
/// `u_i G + sigma_i S = tau_i`,
/// `deg sigma_i + deg tau_(i-1) = deg G`,
/// `u_i sigma_(i-1) - u_(i-1) sigma_i = (-1)^(i+1)`.
pub fn eea_identities(tr: &mtg::poly::EeaTrace, spec: &FieldSpec) -> [bool; 4] {
    let g = tr.g();
    let s = tr.s();
    let level = g.level();
    let signed = |p: &Poly, i: isize| if i.rem_euclid(2) == 0 { p.clone() } else { p.neg(spec) };
    let mut ok = [true; 4];
    for i in -1..=tr.last() {
        if tr.u(i).mul(g, spec).add(&tr.sigma(i).mul(s, spec), spec) != *tr.tau(i) {
            ok[1] = false;
        }
        if i < 0 {
            continue;
        }
        let lhs = tr.sigma(i).mul(tr.tau(i - 1), spec).sub(&tr.sigma(i - 1).mul(tr.tau(i), spec), spec);
        if lhs != signed(g, i) {
            ok[0] = false;
        }
        if tr.sigma(i).degree() + tr.tau(i - 1).degree() != g.degree() {
            ok[2] = false;
        }
        let lhs = tr.u(i).mul(tr.sigma(i - 1), spec).sub(&tr.u(i - 1).mul(tr.sigma(i), spec), spec);
        if lhs != signed(&Poly::one(level), i + 1) {
            ok[3] = false;
        }
    }
    ok
}

/// Top-level matrix from rows of `;`-separated expressions.
pub fn matrix_from_rows(spec: &FieldSpec, rows: &[&str]) -> FMatrix {
    let top = spec.top();
    let data: Vec<Vec<Felt>> = rows.iter().map(|r| r.split(';').map(|x| spec.parse(x.trim(), top).unwrap()).collect()).collect();
    let cols = data[0].len();
    FMatrix::from_rows(data, cols, top)
}

pub const EXAMPLE1_H: [&str; 3] = [
    "1; a; 1; ab; 1; (a+1)b; (a+1)b; ab; a; ab+1; ab+1; a; (a+1)b; ab+1",
    "(a+1)b; ab+a+1; ab+1; 1; b+a; b+1; ab+1; (a+1)b+a; 0; ab+1; a+1; b+a; (a+1)b+1; b+a",
    "ab; b+a+1; b+a; ab+a; (a+1)b+1; 1; ab; b+a+1; 0; 0; a; b+a; 1; b+1",
];

pub const EXAMPLE2_H: [&str; 3] = [
    "1; a; 1; ab; 1; (a+1)b; (a+1)b; ab; a; ab+1; ab+1; a; (a+1)b; ab+1",
    "((a+1)b+1)c+b+1; ((a+1)b)c+b+a; ((a+1)b+a)c+(a+1)b; c+b+1; c+a; ((a+1)b)c+ab; (b+a+1)c+a+1; \
     (ab+a)c+(a+1)b+1; 0; bc+(a+1)b+a+1; (ab+a+1)c+b; ((a+1)b)c+ab+a+1; ac+b+1; (ab+1)c+ab+1",
    "b+a+1; (a+1)b+a+1; ab+a+1; b+a; a+1; b; ab+a; (a+1)b+a; 0; 1; b+1; ab+a; (a+1)b+1; ab+1",
];
