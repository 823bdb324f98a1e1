//! Niederreiter encryption with twisted Goppa codes.
//!
//! The public key is `H_pub = S H_base P` where `H_base` is the reduced
//! `F_q` parity check of a secret single-twist code, `S` an invertible
//! scramble and `P` a column permutation. A ciphertext is the syndrome
//! `H_pub e^T` of an error of weight `floor(t/2)`, the radius the decoder
//! certifies.
//!
//! All randomness comes from ChaCha20 seeded with a `u64`; each purpose draws
//! from its own stream, so changing how one component is sampled leaves the
//! others untouched.

mod format;

pub use format::{ciphertext_from_text, ciphertext_to_text, KeyFile, PUBLIC_HEADER, SECRET_HEADER};

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::codes::{build_code, tower_distance_guarantee, CodeError, MtgCode, MtgParams, Twist};
use crate::decoder::{DecodeError, Decoder};
use crate::gf::{FieldSpec, Felt};
use crate::linalg::{FMatrix, LinalgError};
use crate::poly::Poly;

/// Identifier of the generator recorded in key files.
pub const RNG_ID: &str = "chacha20";

const MAX_RETRIES: usize = 10_000;

/// Independent random streams derived from one seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Goppa = 1,
    Support = 2,
    Twist = 3,
    Scramble = 4,
    Permutation = 5,
    Errors = 6,
    Factor = 7,
    Experiment = 8,
}

/// The seeded generator for one stream.
pub fn rng_for(seed: u64, stream: Stream) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PkcError {
    #[error("infeasible parameters: {0}")]
    ParamInfeasible(String),
    #[error("gave up after {0} attempts")]
    RetryExhausted(usize),
    #[error("error vector has weight {got}, expected {expected}")]
    WrongWeight { expected: usize, got: usize },
    #[error("length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weight {w} outside 0..={n}")]
    WeightOutOfRange { w: usize, n: usize },
    #[error("decryption failed: {0}")]
    DecryptFailure(String),
    #[error("malformed key or ciphertext: {0}")]
    Format(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

/// A vector of length `n` with `w` nonzero positions chosen by a partial
/// Fisher-Yates shuffle and magnitudes uniform over the nonzero symbols.
pub fn random_error<R: Rng + ?Sized>(spec: &FieldSpec, base: usize, n: usize, w: usize, rng: &mut R) -> Vec<Felt> {
    let mut idx: Vec<usize> = (0..n).collect();
    let (chosen, _) = idx.partial_shuffle(rng, w.min(n));
    let mut e = vec![Felt::zero(base); n];
    for &i in chosen.iter() {
        e[i] = spec.random_nonzero(base, rng);
    }
    e
}

/// [`random_error`] on the error stream of `seed`.
pub fn sample_error(spec: &FieldSpec, base: usize, n: usize, w: usize, seed: u64) -> Result<Vec<Felt>, PkcError> {
    if w > n {
        return Err(PkcError::WeightOutOfRange { w, n });
    }
    Ok(random_error(spec, base, n, w, &mut rng_for(seed, Stream::Errors)))
}

/// Field tower and code shape for key generation.
#[derive(Clone, Debug)]
pub struct KeygenConfig {
    pub field: Arc<FieldSpec>,
    /// Level of the symbol field.
    pub base: usize,
    /// Level holding the support and `g`; `eta` is drawn outside it.
    pub s0: usize,
    pub n: usize,
    pub t: usize,
    pub twist_degree: usize,
    pub hook: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub field: Arc<FieldSpec>,
    pub base: usize,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub twist_degree: usize,
    pub hook: usize,
    pub h_pub: FMatrix,
}

impl PublicKey {
    /// Weight of the errors this key encrypts.
    pub fn weight(&self) -> usize {
        self.t / 2
    }
}

#[derive(Clone, Debug)]
pub struct SecretKey {
    pub params: MtgParams,
    pub scramble: FMatrix,
    /// Column `j` of the public matrix is column `perm[j]` of `S H_base`.
    pub perm: Vec<usize>,
    pub seed: u64,
    code: MtgCode,
    h_base: FMatrix,
    scramble_inv: FMatrix,
}

impl PartialEq for SecretKey {
    fn eq(&self, other: &Self) -> bool {
        self.params.to_text() == other.params.to_text() && self.scramble == other.scramble && self.perm == other.perm && self.seed == other.seed
    }
}

impl SecretKey {
    /// Rebuilds the derived data (code, reduced parity check, `S^-1`).
    pub fn from_parts(params: MtgParams, scramble: FMatrix, perm: Vec<usize>, seed: u64) -> Result<SecretKey, PkcError> {
        let code = build_code(&params)?;
        let spec = params.field.clone();
        let h_base = code.h_expanded.row_basis(spec.as_ref());
        let r = h_base.rows();
        if scramble.rows() != r || scramble.cols() != r {
            return Err(PkcError::Format(format!("scramble must be {r}x{r}")));
        }
        let scramble_inv = scramble.inverse(spec.as_ref())?;
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..code.n()).collect::<Vec<_>>() {
            return Err(PkcError::Format("perm is not a permutation of 0..n".into()));
        }
        Ok(SecretKey { params, scramble, perm, seed, code, h_base, scramble_inv })
    }

    pub fn code(&self) -> &MtgCode {
        &self.code
    }

    /// The public key belonging to this secret key.
    pub fn public_key(&self) -> PublicKey {
        let spec = self.params.field.as_ref();
        let sh = self.scramble.mul(&self.h_base, spec).expect("square scramble");
        let tw = self.params.twists.first();
        PublicKey {
            field: self.params.field.clone(),
            base: self.params.base,
            n: self.code.n(),
            k: self.code.k(),
            t: self.params.t(),
            twist_degree: tw.map_or(0, |tw| tw.degree),
            hook: tw.map_or(0, |tw| tw.hook),
            h_pub: sh.permute_columns(&self.perm),
        }
    }
}

pub(crate) fn random_monic_irreducible<R: Rng + ?Sized>(spec: &FieldSpec, level: usize, t: usize, rng: &mut R) -> Result<Poly, PkcError> {
    for _ in 0..MAX_RETRIES {
        let mut c: Vec<Felt> = (0..t).map(|_| spec.random(level, rng)).collect();
        c.push(Felt::one(level));
        let g = Poly::new(c, level);
        if g.is_irreducible(spec) {
            return Ok(g);
        }
    }
    Err(PkcError::RetryExhausted(MAX_RETRIES))
}

pub(crate) fn random_invertible<R: Rng + ?Sized>(spec: &FieldSpec, level: usize, r: usize, rng: &mut R) -> Result<FMatrix, PkcError> {
    for _ in 0..MAX_RETRIES {
        let rows = (0..r).map(|_| (0..r).map(|_| spec.random(level, rng)).collect()).collect();
        let m = FMatrix::from_rows(rows, r, level);
        if m.rank(spec) == r {
            return Ok(m);
        }
    }
    Err(PkcError::RetryExhausted(MAX_RETRIES))
}

/// Draws a random key pair: irreducible monic `g` of degree `t` over
/// `F_s0`, `n` distinct nonzero support points from `F_s0`, `eta` outside
/// `F_s0`, a random invertible scramble and a random permutation.
pub fn keygen(cfg: &KeygenConfig, seed: u64) -> Result<(PublicKey, SecretKey), PkcError> {
    let spec = cfg.field.as_ref();
    let top = spec.top();
    if cfg.t / 2 == 0 {
        return Err(PkcError::ParamInfeasible(format!("t = {} corrects no errors", cfg.t)));
    }
    if cfg.s0 >= top || cfg.base > cfg.s0 {
        return Err(PkcError::ParamInfeasible("need base <= s0 < top".into()));
    }
    let points = spec.order(cfg.s0) - 1;
    if cfg.n as u64 > points {
        return Err(PkcError::ParamInfeasible(format!("n = {} exceeds the {points} nonzero elements of F_s0", cfg.n)));
    }
    if cfg.hook >= cfg.t || cfg.twist_degree == 0 {
        return Err(PkcError::ParamInfeasible("need hook < t and twist degree >= 1".into()));
    }
    let goppa = random_monic_irreducible(spec, cfg.s0, cfg.t, &mut rng_for(seed, Stream::Goppa))?.embed(top);

    let mut pool: Vec<Felt> = (1..spec.order(cfg.s0))
        .map(|v| spec.elem(cfg.s0, v).expect("in range"))
        .filter(|&a| !goppa.eval(a, spec).is_zero())
        .map(|a| a.at(top))
        .collect();
    if pool.len() < cfg.n {
        return Err(PkcError::ParamInfeasible("not enough non-roots of g in F_s0".into()));
    }
    pool.shuffle(&mut rng_for(seed, Stream::Support));
    pool.truncate(cfg.n);

    let mut twist_rng = rng_for(seed, Stream::Twist);
    let eta = (0..MAX_RETRIES)
        .map(|_| spec.random(top, &mut twist_rng))
        .find(|&x| !spec.in_subfield(x, cfg.s0))
        .ok_or(PkcError::RetryExhausted(MAX_RETRIES))?;

    let params = MtgParams {
        field: cfg.field.clone(),
        base: cfg.base,
        s0: cfg.s0,
        support: pool,
        goppa,
        twists: vec![Twist { degree: cfg.twist_degree, hook: cfg.hook, eta }],
    };
    params.validate()?;
    if !tower_distance_guarantee(&params) {
        return Err(PkcError::ParamInfeasible("generated parameters miss the tower distance guarantee".into()));
    }
    let code = build_code(&params)?;
    if code.k() == 0 {
        return Err(PkcError::ParamInfeasible("code has dimension 0".into()));
    }
    let r = code.h_expanded.rank(spec);
    let scramble = random_invertible(spec, cfg.base, r, &mut rng_for(seed, Stream::Scramble))?;
    let mut perm: Vec<usize> = (0..cfg.n).collect();
    perm.shuffle(&mut rng_for(seed, Stream::Permutation));
    let sk = SecretKey::from_parts(params, scramble, perm, seed)?;
    Ok((sk.public_key(), sk))
}

/// `H_pub e^T` for an error of weight exactly `floor(t/2)`.
pub fn encrypt(pk: &PublicKey, e: &[Felt]) -> Result<Vec<Felt>, PkcError> {
    if e.len() != pk.n {
        return Err(PkcError::LengthMismatch { expected: pk.n, got: e.len() });
    }
    let w = e.iter().filter(|x| !x.is_zero()).count();
    if w != pk.weight() {
        return Err(PkcError::WrongWeight { expected: pk.weight(), got: w });
    }
    Ok(syndrome(pk, e))
}

fn syndrome(pk: &PublicKey, e: &[Felt]) -> Vec<Felt> {
    pk.h_pub.mul_vec(e, pk.field.as_ref()).expect("length checked")
}

/// Recovers the error behind a ciphertext. The result always satisfies
/// `H_pub e^T = c`; anything else is reported as a failure.
pub fn decrypt(sk: &SecretKey, c: &[Felt]) -> Result<Vec<Felt>, PkcError> {
    let spec = sk.params.field.as_ref();
    let r = sk.h_base.rows();
    if c.len() != r {
        return Err(PkcError::LengthMismatch { expected: r, got: c.len() });
    }
    let y = sk.scramble_inv.mul_vec(c, spec)?;
    let x = sk.h_base.solve_particular(&y, spec).ok_or_else(|| PkcError::DecryptFailure("inconsistent syndrome".into()))?;
    let base = sk.params.base;
    let x: Vec<Felt> = x.into_iter().map(|v| v.at(base)).collect();
    let report = Decoder::new(&sk.code)?.decode(&x).map_err(|e| match e {
        DecodeError::DecodeFailure(msg) => PkcError::DecryptFailure(msg),
        other => PkcError::Decode(other),
    })?;
    let e: Vec<Felt> = sk.perm.iter().map(|&p| report.error[p]).collect();
    let pk = sk.public_key();
    if syndrome(&pk, &e).iter().zip(c).any(|(a, b)| a.value() != b.value()) {
        return Err(PkcError::DecryptFailure("recovered error does not match the ciphertext".into()));
    }
    Ok(e)
}
