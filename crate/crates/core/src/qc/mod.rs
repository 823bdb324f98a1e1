//! Quasi-cyclic twisted Goppa codes in odd characteristic.
//!
//! The involution `x -> b - x` splits the field into the fixed point `b/2`
//! and pairs `{x, b - x}`. A support made of whole pairs, together with a
//! Goppa polynomial satisfying `g(b - x) = g(x)` and a single twist of
//! degree 1 at hook `t - 2`, gives a code whose permutation group contains
//! the induced involution, i.e. a quasi-cyclic code of order `n/2`.

mod pack;

pub use pack::PackedMatrix;

use std::sync::Arc;

use thiserror::Error;

use crate::codes::{build_code, CodeError, MtgCode, MtgParams, Twist};
use crate::gf::{FieldSpec, Felt};
use crate::linalg::FMatrix;
use crate::pkc::{KeyFile, PkcError};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QcError {
    #[error("the involution x -> b - x needs odd characteristic")]
    EvenCharacteristic,
    #[error("shift b must be nonzero")]
    ZeroShift,
    #[error("orbit representative {0} is the fixed point b/2")]
    FixedPointInSupport(String),
    #[error("support point {index} is a root of g")]
    GoppaRootInSupport { index: usize },
    #[error("t = {t} is not 1 + p^s")]
    BadT { t: usize },
    #[error("support is empty")]
    EmptySupport,
    #[error("map does not leave the support invariant")]
    SupportNotInvariant,
    #[error("the multiplier of an affine map must be nonzero")]
    ZeroMultiplier,
    #[error("malformed QC description: {0}")]
    Format(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `x -> a x + b` with `a != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub a: Felt,
    pub b: Felt,
}

impl AffineMap {
    pub fn new(a: Felt, b: Felt) -> Result<AffineMap, QcError> {
        if a.is_zero() {
            return Err(QcError::ZeroMultiplier);
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity(level: usize) -> AffineMap {
        AffineMap { a: Felt::one(level), b: Felt::zero(level) }
    }

    /// `x -> b - x`.
    pub fn reflection(b: Felt, spec: &FieldSpec) -> AffineMap {
        AffineMap { a: spec.neg(Felt::one(b.level())), b }
    }

    pub fn apply(&self, x: Felt, spec: &FieldSpec) -> Felt {
        spec.add(spec.mul(self.a, x), self.b)
    }

    /// `self o other`: `(a, b) o (c, d) = (ac, ad + b)`.
    pub fn compose(&self, other: &AffineMap, spec: &FieldSpec) -> AffineMap {
        AffineMap { a: spec.mul(self.a, other.a), b: spec.add(spec.mul(self.a, other.b), self.b) }
    }

    pub fn inverse(&self, spec: &FieldSpec) -> AffineMap {
        let ai = spec.inv(self.a).expect("a != 0");
        AffineMap { a: ai, b: spec.neg(spec.mul(ai, self.b)) }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Order in the affine group.
    pub fn order(&self, spec: &FieldSpec) -> u64 {
        let mut cur = *self;
        let mut k = 1;
        while !cur.is_identity() {
            cur = cur.compose(self, spec);
            k += 1;
        }
        k
    }

    /// The polynomial `g(a x + b)`.
    pub fn pullback(&self, g: &Poly, spec: &FieldSpec) -> Poly {
        let level = g.level().max(self.a.level());
        let inner = Poly::new(vec![self.b.at(level), self.a.at(level)], level);
        g.compose(&inner, spec)
    }
}

/// Orbits of `x -> b - x`: the fixed point `b/2` and the 2-element orbits
/// `{x, b - x}` listed by their smaller element in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub map: AffineMap,
    pub fixed: Felt,
    pub orbits: Vec<(Felt, Felt)>,
}

impl OrbitPartition {
    /// The orbit containing `x`.
    pub fn orbit_of(&self, x: Felt) -> Vec<Felt> {
        if x.value() == self.fixed.value() {
            return vec![self.fixed];
        }
        self.orbits
            .iter()
            .find(|(u, v)| u.value() == x.value() || v.value() == x.value())
            .map(|&(u, v)| vec![u, v])
            .unwrap_or_default()
    }
}

fn half(spec: &FieldSpec, level: usize) -> Felt {
    spec.inv(spec.int(level, 2)).expect("odd characteristic")
}

pub fn orbit_partition(spec: &FieldSpec, b: Felt) -> Result<OrbitPartition, QcError> {
    if spec.p() == 2 {
        return Err(QcError::EvenCharacteristic);
    }
    if b.is_zero() {
        return Err(QcError::ZeroShift);
    }
    let level = b.level();
    let map = AffineMap::reflection(b, spec);
    let fixed = spec.mul(b, half(spec, level));
    let mut orbits = Vec::new();
    for v in 0..spec.order(level) {
        let x = spec.elem(level, v).expect("in range");
        let y = map.apply(x, spec);
        if x.value() < y.value() {
            orbits.push((x, y));
        }
    }
    Ok(OrbitPartition { map, fixed, orbits })
}

/// `f((x - b/2)^2)`, which satisfies `g(b - x) = g(x)`.
pub fn symmetric_goppa_poly(f: &Poly, b: Felt, spec: &FieldSpec) -> Result<Poly, QcError> {
    if spec.p() == 2 {
        return Err(QcError::EvenCharacteristic);
    }
    let level = f.level().max(b.level());
    let c = spec.mul(b.at(level), half(spec, level));
    let shifted = Poly::linear(spec, c, level);
    Ok(f.embed(level).compose(&shifted.mul(&shifted, spec), spec))
}

/// Inputs of the quasi-cyclic construction.
#[derive(Clone, Debug)]
pub struct QcSpec {
    pub field: Arc<FieldSpec>,
    pub base: usize,
    pub b: Felt,
    /// One representative per orbit; the support lists `x, b - x` for each.
    pub reps: Vec<Felt>,
    /// Seed polynomial, `g(x) = f((x - b/2)^2)`.
    pub f: Poly,
    pub eta: Felt,
}

pub const QC_HEADER: &str = "mtg-qc-params v1";

impl QcSpec {
    fn write_keys(&self, kf: &mut KeyFile) {
        let spec = self.field.as_ref();
        kf.set("field", spec.to_text());
        kf.set("base", self.base);
        kf.set("b", spec.format(self.b));
        let reps: Vec<String> = self.reps.iter().map(|&x| spec.format(x)).collect();
        kf.set("reps", reps.join(" "));
        kf.set("f", self.f.to_text(spec));
        kf.set("eta", spec.format(self.eta));
    }

    fn read_keys(kf: &KeyFile) -> Result<QcSpec, QcError> {
        let fe = |e: PkcError| QcError::Format(e.to_string());
        let field = Arc::new(FieldSpec::from_text(kf.get("field").map_err(fe)?).map_err(|e| QcError::Format(e.to_string()))?);
        let top = field.top();
        let base = kf.get_usize("base").map_err(fe)?;
        if base > top {
            return Err(QcError::Format("base level above the tower top".into()));
        }
        let parse = |s: &str| field.parse(s, top).map_err(|e| QcError::Format(e.to_string()));
        let b = parse(kf.get("b").map_err(fe)?)?;
        let reps = kf.get("reps").map_err(fe)?.split_whitespace().map(parse).collect::<Result<Vec<_>, _>>()?;
        let f_text: String = kf.get("f").map_err(fe)?.split_whitespace().collect();
        let f = Poly::parse(&f_text, &field, top).map_err(|e| QcError::Format(e.to_string()))?;
        let eta = parse(kf.get("eta").map_err(fe)?)?;
        Ok(QcSpec { field, base, b, reps, f, eta })
    }

    pub fn to_text(&self) -> String {
        let mut kf = KeyFile::new(QC_HEADER);
        self.write_keys(&mut kf);
        kf.to_text()
    }

    /// Elements may be digit strings or generator expressions.
    pub fn from_text(text: &str) -> Result<QcSpec, QcError> {
        let kf = KeyFile::parse(text, QC_HEADER).map_err(|e| QcError::Format(e.to_string()))?;
        QcSpec::read_keys(&kf)
    }
}

pub const QC_KEY_HEADER: &str = "mtg-qc-key v1";

/// QC parameters with the packed `F_q` parity check of the code.
#[derive(Clone, Debug)]
pub struct QcKey {
    pub spec: QcSpec,
    pub n: usize,
    pub k: usize,
    pub packed: PackedMatrix,
}

impl QcKey {
    pub fn new(spec: &QcSpec, qc: &QcCode) -> Option<QcKey> {
        let f = qc.code.spec();
        let packed = PackedMatrix::pack(&qc.code.h_expanded, &qc.perm, f)?;
        Some(QcKey { spec: spec.clone(), n: qc.code.n(), k: qc.code.k(), packed })
    }

    pub fn to_text(&self) -> String {
        let mut kf = KeyFile::new(QC_KEY_HEADER);
        self.spec.write_keys(&mut kf);
        kf.set("n", self.n);
        kf.set("k", self.k);
        self.packed.write_section(&mut kf, &self.spec.field);
        kf.to_text()
    }

    pub fn from_text(text: &str) -> Result<QcKey, QcError> {
        let fe = |e: PkcError| QcError::Format(e.to_string());
        let kf = KeyFile::parse(text, QC_KEY_HEADER).map_err(fe)?;
        let spec = QcSpec::read_keys(&kf)?;
        let packed = PackedMatrix::read_section(&kf, &spec.field, spec.base).map_err(fe)?;
        let (n, k) = (kf.get_usize("n").map_err(fe)?, kf.get_usize("k").map_err(fe)?);
        if packed.reps.cols() != n {
            return Err(QcError::Format(format!("packed matrix has {} columns, n = {n}", packed.reps.cols())));
        }
        Ok(QcKey { spec, n, k, packed })
    }
}

/// A quasi-cyclic code with its certifying involution.
#[derive(Clone, Debug)]
pub struct QcCode {
    pub code: MtgCode,
    pub map: AffineMap,
    /// The induced permutation of positions.
    pub perm: Vec<usize>,
    /// `n / 2`.
    pub order: usize,
}

fn is_one_plus_prime_power(t: usize, p: u64) -> bool {
    let mut v = (t as u64).saturating_sub(1);
    if v < p {
        return false;
    }
    while v.is_multiple_of(p) {
        v /= p;
    }
    v == 1
}

/// Builds `Gamma(L, f((x - b/2)^2), 1, t - 2, eta)` with `L` the union of
/// the orbits of the representatives.
pub fn build_qc_code(qc: &QcSpec) -> Result<QcCode, QcError> {
    let spec = qc.field.as_ref();
    let top = spec.top();
    let part = orbit_partition(spec, qc.b.at(top))?;
    if qc.reps.is_empty() {
        return Err(QcError::EmptySupport);
    }
    let goppa = symmetric_goppa_poly(&qc.f, qc.b, spec)?.embed(top);
    let t = goppa.deg().unwrap_or(0);
    let p = spec.p();
    if !is_one_plus_prime_power(t, p) {
        return Err(QcError::BadT { t });
    }
    assert_eq!(crate::codes::binomial(t, 2) % p as u128, 0, "p divides binom(t, 2) for t = 1 + p^s");
    let mut support = Vec::with_capacity(2 * qc.reps.len());
    for &x in &qc.reps {
        let x = x.at(top);
        if x.value() == part.fixed.value() {
            return Err(QcError::FixedPointInSupport(spec.display(x)));
        }
        support.push(x);
        support.push(part.map.apply(x, spec));
    }
    if let Some(index) = support.iter().position(|&a| goppa.eval(a, spec).is_zero()) {
        return Err(QcError::GoppaRootInSupport { index });
    }
    let params = MtgParams {
        field: qc.field.clone(),
        base: qc.base,
        s0: top,
        support,
        goppa,
        twists: vec![Twist { degree: 1, hook: t - 2, eta: qc.eta.at(top) }],
    };
    let code = build_code(&params)?;
    let perm = induced_permutation(&part.map, &code.params.support, spec)?;
    let order = code.n() / 2;
    Ok(QcCode { code, map: part.map, perm, order })
}

/// `perm[i] = j` with `a_j = a a_i + b`.
pub fn induced_permutation(map: &AffineMap, support: &[Felt], spec: &FieldSpec) -> Result<Vec<usize>, QcError> {
    support
        .iter()
        .map(|&x| {
            let y = map.apply(x, spec);
            support.iter().position(|s| s.value() == y.value()).ok_or(QcError::SupportNotInvariant)
        })
        .collect()
}

/// Whether `c -> (c_perm[0], .., c_perm[n-1])` maps the code onto itself.
pub fn permutation_preserves(code: &MtgCode, perm: &[usize]) -> bool {
    let g = &code.generator;
    let moved: FMatrix = g.permute_columns(perm);
    g.row_space_eq(&moved, code.spec())
}

/// Whether the permutation induced by `map` is an automorphism of the code.
pub fn paut_membership(code: &MtgCode, map: &AffineMap) -> Result<bool, QcError> {
    let perm = induced_permutation(map, &code.params.support, code.spec())?;
    Ok(permutation_preserves(code, &perm))
}
