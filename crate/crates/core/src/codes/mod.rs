//! Multi-twisted Goppa codes.
//!
//! A code is given by a support `L = (a_1..a_n)`, a Goppa polynomial `g` of
//! degree `t`, and twists `(t_j, h_j, eta_j)`. Its parity-check matrix over
//! the top level has rows `a_i^r / g(a_i)` for `r = 0..t`, where row `h_j`
//! additionally carries `eta_j a_i^(t-1+t_j) / g(a_i)`; the code itself is
//! the kernel of that matrix restricted to the base field `F_q`.

mod brute;
mod criteria;
mod params_file;

pub use brute::{min_distance_bruteforce, Codebook};
pub use criteria::{
    distance_criterion_check, mds_matrix_criterion, mtrs_generator, tower_distance_guarantee, MtrsParams, twisted_vanishing_matrix,
};

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FieldOps, FieldSpec, Felt, GfError};
use crate::linalg::{FMatrix, LinalgError};
use crate::poly::{Poly, PolyError};

/// Default bound on `binomial(n, t)` for subset-enumerating criteria.
pub const DEFAULT_SUBSET_BOUND: u128 = 1_000_000;
/// Default bound on the number of codewords enumerated by brute force.
pub const DEFAULT_CODEWORD_BOUND: u128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("g vanishes at support position {index}")]
    GoppaRootInSupport { index: usize },
    #[error("invalid parameters: {0}")]
    ParamViolation(String),
    #[error("enumeration of {count} items exceeds the bound {bound}")]
    TooLarge { count: u128, bound: u128 },
    #[error("malformed parameter file: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One twist: degree `t_j`, hook row `h_j` (0-based) and coefficient `eta_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Twist {
    pub degree: usize,
    pub hook: usize,
    pub eta: Felt,
}

/// Everything that defines an MTG code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtgParams {
    pub field: Arc<FieldSpec>,
    /// Level of the symbol field `F_q`.
    pub base: usize,
    /// Level of `F_s0`, the subfield holding the support and `g` in tower
    /// constructions (the top level when there is no such structure).
    pub s0: usize,
    pub support: Vec<Felt>,
    pub goppa: Poly,
    pub twists: Vec<Twist>,
}

impl MtgParams {
    pub fn top(&self) -> usize {
        self.field.top()
    }

    pub fn n(&self) -> usize {
        self.support.len()
    }

    pub fn t(&self) -> usize {
        self.goppa.deg().unwrap_or(0)
    }

    /// Extension degree `m` of the top level over `F_q`.
    pub fn m(&self) -> usize {
        self.field.degree_over(self.top(), self.base)
    }

    pub fn q(&self) -> u64 {
        self.field.order(self.base)
    }

    /// Checks the structural constraints on the parameters.
    pub fn validate(&self) -> Result<(), CodeError> {
        let spec = &self.field;
        let top = self.top();
        let bad = |s: String| Err(CodeError::ParamViolation(s));
        if self.base > self.s0 || self.s0 > top {
            return bad(format!("levels must satisfy base <= s0 <= top, got {} {} {}", self.base, self.s0, top));
        }
        let t = self.t();
        if t == 0 {
            return bad("the Goppa polynomial must have degree at least 1".into());
        }
        let order = spec.order(top);
        if self.support.is_empty() || self.support.len() as u64 > order {
            return bad(format!("support size {} outside 1..={order}", self.support.len()));
        }
        let mut sorted: Vec<u64> = self.support.iter().map(|a| a.value()).collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return bad("support elements must be distinct".into());
        }
        for (j, tw) in self.twists.iter().enumerate() {
            if tw.degree < 1 || (tw.degree as u64) >= order.saturating_sub(t as u64) {
                return bad(format!("twist degree t_{} = {} outside 1..q^m-t", j + 1, tw.degree));
            }
            if tw.hook >= t {
                return bad(format!("hook h_{} = {} must be below t = {t}", j + 1, tw.hook));
            }
            if j > 0 {
                let prev = &self.twists[j - 1];
                if prev.degree >= tw.degree {
                    return bad("twist degrees must be strictly increasing".into());
                }
                if prev.hook > tw.hook {
                    return bad("hooks must be non-decreasing".into());
                }
            }
        }
        for (i, &a) in self.support.iter().enumerate() {
            if self.goppa.eval(a, spec.as_ref()).is_zero() {
                return Err(CodeError::GoppaRootInSupport { index: i });
            }
        }
        Ok(())
    }

    /// The classical Goppa parameters with the same support and `g`.
    pub fn classical(&self) -> MtgParams {
        MtgParams { twists: Vec::new(), ..self.clone() }
    }
}

/// `U^(h+1)(z) . g`, i.e. `sum_{j=0}^{t-h-1} g_{j+h+1} z^j`.
pub fn shift_dot(g: &Poly, h: usize) -> Poly {
    Poly::new(g.coeffs().iter().skip(h + 1).copied().collect(), g.level())
}

/// The `t x n` parity-check matrix over the top level.
pub fn build_parity_check(params: &MtgParams) -> Result<FMatrix, CodeError> {
    params.validate()?;
    let spec = params.field.as_ref();
    let top = params.top();
    let t = params.t();
    let n = params.n();
    let mut h = FMatrix::zeros(t, n, top);
    for (i, &a) in params.support.iter().enumerate() {
        let ginv = spec.inv(params.goppa.eval(a, spec))?;
        let mut pw = Felt::one(top);
        for r in 0..t {
            h.set(r, i, spec.mul(pw, ginv));
            pw = spec.mul(pw, a);
        }
        for tw in &params.twists {
            let term = spec.mul(spec.mul(tw.eta, spec.pow(a, (t - 1 + tw.degree) as u64)), ginv);
            h.set(tw.hook, i, spec.add(h.get(tw.hook, i), term));
        }
    }
    Ok(h)
}

/// Per-position polynomials `P_i` with `sum c_i P_i = 0 mod g` exactly for
/// codewords `c`, computed from the defining congruence
/// `sum c_i ((z - a_i)^-1 - sum_j eta_j a_i^(t-1+t_j) g(a_i)^-1 U^(h_j+1)(z).g)`.
#[derive(Clone, Debug)]
pub struct CongruenceForm {
    goppa: Poly,
    columns: Vec<Poly>,
}

impl CongruenceForm {
    pub fn new(params: &MtgParams, modulus: &Poly) -> Result<CongruenceForm, CodeError> {
        let spec = params.field.as_ref();
        let top = params.top();
        let t = params.t();
        let g = modulus.embed(top);
        let columns = params
            .support
            .iter()
            .map(|&a| {
                let inv = Poly::linear(spec, a, top).inv_mod(&g, spec)?;
                let ginv = spec.inv(g.eval(a, spec))?;
                let mut col = inv;
                for tw in &params.twists {
                    let s = spec.mul(spec.mul(tw.eta, spec.pow(a, (t - 1 + tw.degree) as u64)), ginv);
                    col = col.sub(&shift_dot(&g, tw.hook).scale(s, spec), spec);
                }
                Ok(col.rem(&g, spec)?)
            })
            .collect::<Result<Vec<_>, CodeError>>()?;
        Ok(CongruenceForm { goppa: g, columns })
    }

    /// `sum c_i P_i mod g`.
    pub fn residue(&self, c: &[Felt], spec: &FieldSpec) -> Poly {
        let level = self.goppa.level();
        let mut acc = Poly::zero(level);
        for (ci, col) in c.iter().zip(&self.columns) {
            if !ci.is_zero() {
                acc = acc.add(&col.scale(*ci, spec), spec);
            }
        }
        acc
    }
}

/// Whether `c` satisfies the defining congruence modulo `g`, evaluated
/// symbolically without the parity-check matrix.
pub fn syndrome_congruence_check(params: &MtgParams, c: &[Felt]) -> Result<bool, CodeError> {
    if c.len() != params.n() {
        return Err(CodeError::ParamViolation(format!("word of length {} for n = {}", c.len(), params.n())));
    }
    let form = CongruenceForm::new(params, &params.goppa)?;
    Ok(form.residue(c, &params.field).is_zero())
}

/// A built code with the quantities the decoder needs cached.
#[derive(Clone, Debug)]
pub struct MtgCode {
    pub params: MtgParams,
    /// Parity-check matrix over the top level (with the all-ones row last for
    /// expurgated codes).
    pub h: FMatrix,
    /// `h` expanded into `F_q` coordinates; dependent rows are kept.
    pub h_expanded: FMatrix,
    /// Generator matrix over `F_q` (a null-space basis of `h_expanded`).
    pub generator: FMatrix,
    pub expurgated: bool,
    /// `g(a_i)`, `g(a_i)^-1` and `a_i^-1` (absent for `a_i = 0`).
    pub g_at: Vec<Felt>,
    pub g_inv: Vec<Felt>,
    pub alpha_inv: Vec<Option<Felt>>,
}

impl MtgCode {
    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn t(&self) -> usize {
        self.params.t()
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.params.field
    }

    /// `H c^T` over the top level.
    pub fn syndrome(&self, c: &[Felt]) -> Vec<Felt> {
        self.h.mul_vec(c, self.spec()).expect("length checked by caller")
    }

    pub fn is_codeword(&self, c: &[Felt]) -> bool {
        c.len() == self.n() && self.syndrome(c).iter().all(|s| s.is_zero())
    }

    /// `m G` for a message `m` of length `k`.
    pub fn encode(&self, msg: &[Felt]) -> Vec<Felt> {
        let spec = self.spec();
        let mut c = vec![Felt::zero(self.params.base); self.n()];
        for (r, &m) in msg.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (ci, &g) in c.iter_mut().zip(self.generator.row(r)) {
                *ci = spec.add(*ci, spec.mul(m, g));
            }
        }
        c
    }

    /// Rank of the expanded parity check, `n - k`.
    pub fn redundancy(&self) -> usize {
        self.n() - self.k()
    }
}

fn assemble(params: &MtgParams, h: FMatrix, expurgated: bool) -> Result<MtgCode, CodeError> {
    let spec = params.field.as_ref();
    let h_expanded = h.subfield_expand(spec, params.base)?;
    let generator = h_expanded.null_space_basis(spec);
    let mut g_at = Vec::with_capacity(params.n());
    let mut g_inv = Vec::with_capacity(params.n());
    let mut alpha_inv = Vec::with_capacity(params.n());
    for &a in &params.support {
        let v = params.goppa.eval(a, spec).at(params.top());
        g_at.push(v);
        g_inv.push(spec.inv(v)?);
        alpha_inv.push(spec.inv(a.at(params.top())).ok());
    }
    let code = MtgCode { params: params.clone(), h, h_expanded, generator, expurgated, g_at, g_inv, alpha_inv };
    let form = CongruenceForm::new(params, &params.goppa)?;
    for r in 0..code.generator.rows() {
        let row = code.generator.row(r);
        if !form.residue(row, spec).is_zero() {
            return Err(CodeError::Internal(format!("generator row {r} violates the defining congruence")));
        }
        if expurgated && row.iter().fold(Felt::zero(params.base), |a, &b| spec.add(a, b)) != Felt::zero(params.base) {
            return Err(CodeError::Internal(format!("generator row {r} has nonzero coordinate sum")));
        }
    }
    Ok(code)
}

/// Builds the code: parity check, expansion, generator, and a check of the
/// defining congruence on every generator row.
pub fn build_code(params: &MtgParams) -> Result<MtgCode, CodeError> {
    let h = build_parity_check(params)?;
    assemble(params, h, false)
}

/// The subcode whose coordinates also sum to zero (an all-ones parity row is
/// appended).
pub fn build_expurgated(params: &MtgParams) -> Result<MtgCode, CodeError> {
    let h = build_parity_check(params)?;
    let ones = FMatrix::from_rows(vec![vec![Felt::one(params.top()); params.n()]], params.n(), params.top());
    assemble(params, h.vstack(&ones), true)
}

/// Whether two codes over the same field have the same codewords.
pub fn same_code(a: &MtgCode, b: &MtgCode) -> bool {
    a.generator.row_space_eq(&b.generator, a.spec())
}

/// Binomial coefficient as `u128` (saturating).
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Generic `FieldOps` evaluation helper used by the criteria: product of
/// `(x - a)` over the given points.
pub(crate) fn vanishing_poly(points: &[Felt], level: usize, f: &(impl FieldOps + ?Sized)) -> Poly {
    points.iter().fold(Poly::one(level), |acc, &a| acc.mul(&Poly::linear(f.spec(), a, level), f))
}
