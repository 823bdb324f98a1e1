//! Partial key-recovery attacks on twisted Goppa keys.
//!
//! The attacker holds the public parity check, the twist shape and `eta`,
//! and some support points. A candidate Goppa polynomial `f` is tested by
//! substituting it for `g` in the defining congruence of the shortened code.
//! Candidates come from factoring
//! `N_c(z) = sum_i c_i prod_{j != i} (z - a_j)` for a known codeword `c`:
//! the twist part of the congruence needs `g` itself, so only this part is
//! computable. It is divisible by `g` whenever the twist contribution of `c`
//! vanishes, which is the case for every codeword of a tower code (support
//! and `g` over `F_s0`, `eta` outside it).

mod experiments;

pub use experiments::{
    fp_bound_table, random_instance, support_recovery_probe, FpCell, FpRow, InstanceConfig, ProbeConfig, ProbeReport,
};

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::codes::{CodeError, CongruenceForm, MtgParams, Twist};
use crate::gf::{FieldSpec, Felt};
use crate::linalg::{FMatrix, LinalgError};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttackError {
    #[error("candidate has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: isize },
    #[error("no candidate passes the syndrome test")]
    NoCandidate,
    #[error("{} candidates pass the syndrome test", .0.len())]
    MultipleCandidates(Vec<Poly>),
    #[error("{eps} known positions, need more than {bound}")]
    EpsilonTooSmall { eps: usize, bound: usize },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// What the attacker sees: the public check matrix over `F_q`, the twist
/// configuration and the known support points.
#[derive(Clone, Debug)]
pub struct AttackInstance {
    pub field: Arc<FieldSpec>,
    pub base: usize,
    pub t: usize,
    pub twists: Vec<Twist>,
    /// `F_q` parity check of the full code, columns in support order.
    pub h_expanded: FMatrix,
    /// Known positions (0-based, ascending) and their support points.
    pub known: Vec<usize>,
    pub points: Vec<Felt>,
    /// Ground truth, for scoring only.
    pub truth: Option<MtgParams>,
}

impl AttackInstance {
    /// Instance with the positions `known` of `params` revealed.
    pub fn from_params(params: &MtgParams, h_expanded: FMatrix, known: Vec<usize>) -> AttackInstance {
        let points = known.iter().map(|&i| params.support[i]).collect();
        AttackInstance {
            field: params.field.clone(),
            base: params.base,
            t: params.t(),
            twists: params.twists.clone(),
            h_expanded,
            known,
            points,
            truth: Some(params.clone()),
        }
    }

    /// `[top : base]`, the `m` of `F_{q^m}`.
    pub fn m(&self) -> usize {
        self.field.degree_over(self.field.top(), self.base)
    }

    pub fn epsilon(&self) -> usize {
        self.known.len()
    }

    /// Generator of the code shortened on the unknown positions.
    pub fn shortened_generator(&self) -> Result<FMatrix, AttackError> {
        let h = self.h_expanded.restrict_columns(&self.known)?;
        Ok(h.null_space_basis(self.field.as_ref()))
    }

    /// Whether `f` equals the true `g` up to a unit.
    pub fn is_true_goppa(&self, f: &Poly) -> bool {
        self.truth.as_ref().is_some_and(|p| same_up_to_unit(&p.goppa, f, &self.field))
    }
}

/// Compares two polynomials after making both monic.
pub fn same_up_to_unit(a: &Poly, b: &Poly, spec: &FieldSpec) -> bool {
    let top = spec.top();
    a.embed(top).make_monic(spec) == b.embed(top).make_monic(spec)
}

/// Checks `s_u(z) = 0 mod f` for every row `u` of `g_short`, where `s_u` is
/// the defining congruence over `points` with `f` in place of `g` (including
/// inside the twist terms). A candidate vanishing at a known point cannot
/// be the Goppa polynomial and is rejected.
pub fn shortened_syndrome_test(
    f: &Poly,
    t: usize,
    twists: &[Twist],
    points: &[Felt],
    g_short: &FMatrix,
    spec: &Arc<FieldSpec>,
) -> Result<bool, AttackError> {
    if f.degree() != t as isize {
        return Err(AttackError::DegreeMismatch { expected: t, got: f.degree() });
    }
    if g_short.cols() != points.len() {
        return Err(AttackError::Inconsistent(format!("{} columns for {} points", g_short.cols(), points.len())));
    }
    let top = spec.top();
    let f = f.embed(top);
    if points.iter().any(|&a| f.eval(a, spec.as_ref()).is_zero()) {
        return Ok(false);
    }
    let view = MtgParams {
        field: spec.clone(),
        base: g_short.level(),
        s0: top,
        support: points.to_vec(),
        goppa: f.clone(),
        twists: twists.to_vec(),
    };
    let form = CongruenceForm::new(&view, &f)?;
    Ok(g_short.row_vecs().iter().all(|u| form.residue(u, spec).is_zero()))
}

/// `sum_{i in supp c} c_i prod_{j in supp c, j != i} (z - a_j)`.
pub fn numerator_poly(c: &[Felt], points: &[Felt], spec: &FieldSpec) -> Poly {
    let top = spec.top();
    let supp: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
    let mut acc = Poly::zero(top);
    for &i in &supp {
        let mut term = Poly::constant(c[i].at(top), top);
        for &j in supp.iter().filter(|&&j| j != i) {
            term = term.mul(&Poly::linear(spec, points[j], top), spec);
        }
        acc = acc.add(&term, spec);
    }
    acc
}

/// Monic irreducible factors of degree `t`, over the coefficient field of
/// `p` and over the top field, embedded at the top level.
pub fn degree_t_factors<R: Rng + ?Sized>(p: &Poly, t: usize, spec: &FieldSpec, rng: &mut R) -> Vec<Poly> {
    if p.is_zero() {
        return Vec::new();
    }
    let top = spec.top();
    let low = p.coeffs().iter().map(|&c| spec.min_level(c)).max().unwrap_or(0);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for level in [low, top] {
        let Some(q) = p.restrict(level, spec) else { continue };
        let Ok(factors) = q.factor(spec, rng) else { continue };
        for (fac, _) in factors {
            if fac.degree() == t as isize {
                let fac = fac.embed(top);
                if seen.insert(fac.clone()) {
                    out.push(fac);
                }
            }
        }
    }
    out
}

/// Outcome of candidate enumeration from one or more codewords.
#[derive(Clone, Debug, Default)]
pub struct CandidateReport {
    /// Monic candidates that passed the test, in discovery order.
    pub candidates: Vec<Poly>,
    /// Every tested factor with its verdict.
    pub trace: Vec<(Poly, bool)>,
    /// Codewords whose numerator was factored.
    pub codewords_used: usize,
    pub factors_tested: usize,
}

impl CandidateReport {
    pub fn accepted(&self) -> usize {
        self.candidates.len()
    }
}

fn enumerate_candidates<R: Rng + ?Sized>(
    inst: &AttackInstance,
    gen: &FMatrix,
    words: usize,
    rng: &mut R,
) -> Result<CandidateReport, AttackError> {
    let spec = &inst.field;
    let mut report = CandidateReport::default();
    let mut tested = BTreeSet::new();
    for c in gen.row_vecs().into_iter().take(words.max(1)) {
        report.codewords_used += 1;
        let nc = numerator_poly(&c, &inst.points, spec);
        for f in degree_t_factors(&nc, inst.t, spec, rng) {
            if !tested.insert(f.clone()) {
                continue;
            }
            report.factors_tested += 1;
            let ok = shortened_syndrome_test(&f, inst.t, &inst.twists, &inst.points, gen, spec)?;
            if ok {
                report.candidates.push(f.clone());
            }
            report.trace.push((f, ok));
        }
        if !report.candidates.is_empty() {
            break;
        }
    }
    Ok(report)
}

/// Recovers `g` (monic) from the public check and the full support.
/// Codewords are taken from a null-space basis in order until some factor
/// passes the test over the whole code.
pub fn basic_mtg_recover<R: Rng + ?Sized>(inst: &AttackInstance, rng: &mut R) -> Result<Poly, AttackError> {
    let n = inst.h_expanded.cols();
    if inst.known != (0..n).collect::<Vec<_>>() {
        return Err(AttackError::Inconsistent("full recovery needs every support point".into()));
    }
    let gen = inst.shortened_generator()?;
    if gen.rows() == 0 {
        return Err(AttackError::NoCandidate);
    }
    let report = enumerate_candidates(inst, &gen, gen.rows(), rng)?;
    match report.candidates.len() {
        0 => Err(AttackError::NoCandidate),
        1 => Ok(report.candidates[0].clone()),
        _ => Err(AttackError::MultipleCandidates(report.candidates)),
    }
}

/// Lists the candidates consistent with the known points: factors of the
/// numerator of a nonzero shortened codeword that pass the shortened test.
pub fn advanced_mtg_candidates<R: Rng + ?Sized>(inst: &AttackInstance, rng: &mut R) -> Result<CandidateReport, AttackError> {
    let bound = inst.m() * inst.t;
    if inst.epsilon() <= bound {
        return Err(AttackError::EpsilonTooSmall { eps: inst.epsilon(), bound });
    }
    let gen = inst.shortened_generator()?;
    if gen.rows() == 0 {
        return Err(AttackError::NoCandidate);
    }
    enumerate_candidates(inst, &gen, gen.rows(), rng)
}
