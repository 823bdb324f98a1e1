//! Euclidean decoding of single-twist Goppa codes up to `t/2` errors.
//!
//! The syndrome `s = H r^T` is rearranged into
//! `s_pi(x) = E + sum_j P_j x^j` with `P_j = sum_i a_i^j g(a_i)^-1 e_i` and
//! twist constant `E = eta sum_i a_i^(t-1+t_1) g(a_i)^-1 e_i`. Only
//! `s_h = P_h + E` mixes the two, so `E` has to be separated first: for
//! `h = 0` no separation is needed, in the tower setting `s_h` splits
//! uniquely as `u + v eta` over `F_s0`, and otherwise every candidate `E` is
//! tried. The extended Euclidean algorithm on `(x^t, s_pi)` then yields the
//! locator and evaluator, either directly (fewer than `t/2` errors) or as a
//! combination of two consecutive remainders (exactly `t/2` errors).

mod profile;
mod transcript;

pub use profile::{op_count_profile, ProfileRow};
pub use transcript::Transcript;

use std::collections::HashMap;

use thiserror::Error;

use crate::codes::MtgCode;
use crate::gf::{CountingField, FieldOps, FieldSpec, Felt, OpCounts};
use crate::poly::{EeaTrace, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("received word has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("decoding supports at most one twist, the code has {0}")]
    UnsupportedTwistCount(usize),
    #[error("received symbol at position {0} is outside the code alphabet")]
    SymbolOutsideAlphabet(usize),
    #[error("decoding failed: {0}")]
    DecodeFailure(String),
    #[error("internal error: locator degree {deg} exceeds t/2 for t = {t}")]
    UnexpectedDegree { deg: usize, t: usize },
}

fn fail<T>(reason: impl Into<String>) -> Result<T, DecodeError> {
    Err(DecodeError::DecodeFailure(reason.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Zero syndrome: the word is a codeword.
    Zero,
    /// Fewer than `t/2` errors: a single remainder gives the locator.
    A,
    /// Exactly `t/2` errors: two consecutive remainders are combined.
    B,
}

/// How the free coefficient `mu_1` is found when `t/2` errors occurred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CaseBStrategy {
    /// Every error position `i` forces `mu_1 = -mu_2 sigma_nu(b_i)/sigma_(nu-1)(b_i)`
    /// with `b_i = a_i^-1`; only values forced by exactly `t/2` positions can
    /// work, and they are tried in canonical order.
    #[default]
    RootVote,
    /// Try every field element in canonical order.
    Sweep,
}

/// Syndrome data of a received word.
#[derive(Clone, Debug)]
pub struct SyndromeState {
    /// `H r^T`.
    pub s: Vec<Felt>,
    /// `s(x)` with coefficient `l` equal to `s_((l + h) mod t)`.
    pub s_poly: Poly,
    /// `s_pi(x)` once the twist constant is known.
    pub s_pi: Option<Poly>,
    /// The twist constant `E` when it could be separated from `s_h`.
    pub twist_constant: Option<Felt>,
}

/// A locator/evaluator pair together with the error it describes.
#[derive(Clone, Debug)]
pub struct LocatorPair {
    pub sigma: Poly,
    pub tau: Poly,
    /// Error positions, 0-based and ascending.
    pub support: Vec<usize>,
    pub magnitudes: Vec<Felt>,
}

/// Operation counts per decoding phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseCounts {
    pub syndrome: OpCounts,
    pub eea: OpCounts,
    pub locator: OpCounts,
}

impl PhaseCounts {
    pub fn total(&self) -> OpCounts {
        self.syndrome + self.eea + self.locator
    }
}

#[derive(Clone, Debug)]
pub struct DecodeReport {
    pub error: Vec<Felt>,
    pub codeword: Vec<Felt>,
    pub branch: Branch,
    pub nu: Option<isize>,
    pub kappa: Option<isize>,
    pub counts: PhaseCounts,
    pub transcript: Option<Transcript>,
}

impl DecodeReport {
    pub fn weight(&self) -> usize {
        self.error.iter().filter(|e| !e.is_zero()).count()
    }
}

/// How the twist constant is recovered from `s_h`.
#[derive(Clone, Debug)]
enum TwistSplit {
    /// `E` is not needed separately (`eta = 0` or `h = 0`).
    Direct,
    /// `s_h = u + v eta` with `u, v` in level `s0`; coordinate `k` of `eta`
    /// over `s0` is nonzero.
    Tower { s0: usize, eta_coords: Vec<Felt>, k: usize },
    /// Try every `E` in the top field.
    Sweep,
}

/// A code prepared for decoding.
#[derive(Clone, Debug)]
pub struct Decoder<'c> {
    code: &'c MtgCode,
    t: usize,
    hook: usize,
    eta: Felt,
    /// `a_i^(t-1+t_1) g(a_i)^-1`.
    twist_weight: Vec<Felt>,
    /// Position of the zero support point, if any.
    zero_pos: Option<usize>,
    split: TwistSplit,
    pub case_b: CaseBStrategy,
    pub record_transcript: bool,
}

impl<'c> Decoder<'c> {
    pub fn new(code: &'c MtgCode) -> Result<Decoder<'c>, DecodeError> {
        let params = &code.params;
        if params.twists.len() > 1 {
            return Err(DecodeError::UnsupportedTwistCount(params.twists.len()));
        }
        let spec = code.spec();
        let top = params.top();
        let t = params.t();
        let (hook, eta, t1) = match params.twists.first() {
            Some(tw) => (tw.hook, tw.eta.at(top), tw.degree),
            None => (0, Felt::zero(top), 1),
        };
        let twist_weight = params
            .support
            .iter()
            .zip(&code.g_inv)
            .map(|(&a, &gi)| spec.mul(spec.pow(a, (t - 1 + t1) as u64), gi).at(top))
            .collect();
        let split = if eta.is_zero() || hook == 0 {
            TwistSplit::Direct
        } else {
            let s0 = params.s0;
            let tower = s0 < top
                && !spec.in_subfield(eta, s0)
                && params.support.iter().all(|&a| spec.in_subfield(a, s0))
                && params.goppa.coeffs().iter().all(|&c| spec.in_subfield(c, s0));
            if tower {
                let eta_coords = spec.coords(eta, s0);
                let k = (1..eta_coords.len()).find(|&k| !eta_coords[k].is_zero()).expect("eta outside F_s0");
                TwistSplit::Tower { s0, eta_coords, k }
            } else {
                TwistSplit::Sweep
            }
        };
        Ok(Decoder {
            code,
            t,
            hook,
            eta,
            twist_weight,
            zero_pos: params.support.iter().position(|a| a.is_zero()),
            split,
            case_b: CaseBStrategy::default(),
            record_transcript: false,
        })
    }

    pub fn with_case_b(mut self, strategy: CaseBStrategy) -> Self {
        self.case_b = strategy;
        self
    }

    pub fn with_transcript(mut self, on: bool) -> Self {
        self.record_transcript = on;
        self
    }

    pub fn code(&self) -> &MtgCode {
        self.code
    }

    /// `H r^T` and the rotated syndrome polynomial.
    pub fn compute_syndrome(&self, r: &[Felt], f: &impl FieldOps) -> Result<SyndromeState, DecodeError> {
        let code = self.code;
        if r.len() != code.n() {
            return Err(DecodeError::LengthMismatch { got: r.len(), expected: code.n() });
        }
        let spec = code.spec();
        let base = code.params.base;
        if let Some(i) = r.iter().position(|&x| x.level() > base && !spec.in_subfield(x, base)) {
            return Err(DecodeError::SymbolOutsideAlphabet(i));
        }
        let top = code.params.top();
        let t = self.t;
        let mut s = vec![Felt::zero(top); t];
        for (row, si) in s.iter_mut().enumerate() {
            let mut acc = Felt::zero(top);
            for (&hij, &rj) in code.h.row(row).iter().zip(r) {
                acc = f.add(acc, f.mul(hij, rj));
            }
            *si = acc.at(top);
        }
        let rotated = (0..t).map(|l| s[(l + self.hook) % t]).collect();
        let s_poly = Poly::new(rotated, top);
        let mut state = SyndromeState { s, s_poly, s_pi: None, twist_constant: None };
        if let Some(e) = self.split_twist(&state.s, f) {
            state.s_pi = Some(self.s_pi_for(&state.s, e, f));
            state.twist_constant = Some(e);
        }
        Ok(state)
    }

    /// The twist constant, when it is determined by the syndrome alone.
    fn split_twist(&self, s: &[Felt], f: &impl FieldOps) -> Option<Felt> {
        let top = self.code.params.top();
        match &self.split {
            TwistSplit::Direct => Some(Felt::zero(top)),
            TwistSplit::Tower { s0, eta_coords, k } => {
                let spec = f.spec();
                let sc = spec.coords(s[self.hook], *s0);
                let v = f.div(sc[*k], eta_coords[*k]).expect("nonzero coordinate");
                // every coordinate beyond the first must be v times eta's
                let consistent = (1..sc.len()).all(|j| f.mul(v, eta_coords[j]).value() == sc[j].value());
                consistent.then(|| f.mul(v, self.eta).at(top))
            }
            TwistSplit::Sweep => None,
        }
    }

    /// `E + sum_j P_j x^j` where `P_j = s_j`, except `P_h = s_h - E`.
    fn s_pi_for(&self, s: &[Felt], e: Felt, f: &impl FieldOps) -> Poly {
        let top = self.code.params.top();
        if matches!(self.split, TwistSplit::Direct) {
            // with h = 0 the constant term already is P_0 + E
            return Poly::new(s.to_vec(), top);
        }
        let mut c = s.to_vec();
        c[self.hook] = f.sub(c[self.hook], e).at(top);
        c[0] = f.add(c[0], e).at(top);
        Poly::new(c, top)
    }

    /// Decodes with operation counting; see [`DecodeReport`].
    pub fn decode(&self, r: &[Felt]) -> Result<DecodeReport, DecodeError> {
        let code = self.code;
        let spec = code.spec();
        let f = CountingField::new(spec);
        let syn = self.compute_syndrome(r, &f)?;
        let after_syndrome = f.counts();
        let mut transcript = self.record_transcript.then(|| Transcript::new(&syn));
        if syn.s.iter().all(|x| x.is_zero()) {
            let counts = PhaseCounts { syndrome: after_syndrome, ..Default::default() };
            return Ok(DecodeReport {
                error: vec![Felt::zero(code.params.base); code.n()],
                codeword: r.to_vec(),
                branch: Branch::Zero,
                nu: None,
                kappa: None,
                counts,
                transcript: transcript.map(|t| t.finish_zero()),
            });
        }
        let mut phase = PhaseCounts { syndrome: after_syndrome, ..Default::default() };
        let outcome = match (&syn.s_pi, &self.split) {
            (Some(s_pi), _) => self.solve(s_pi, &syn.s, &f, &mut phase, transcript.as_mut()),
            (None, TwistSplit::Sweep) => self.sweep_twist_constant(&syn, &f, &mut phase, transcript.as_mut()),
            (None, _) => fail("twisted syndrome row is not of the form u + v eta over F_s0"),
        };
        let (pair, branch, trace) = outcome?;
        let base = code.params.base;
        let mut error = vec![Felt::zero(base); code.n()];
        for (&i, &m) in pair.support.iter().zip(&pair.magnitudes) {
            error[i] = m.at(base);
        }
        let codeword: Vec<Felt> = r.iter().zip(&error).map(|(&ri, &ei)| spec.sub(ri, ei).at(base)).collect();
        let (nu, kappa) = (trace.1, trace.0);
        let transcript = transcript.map(|t| t.finish(&pair, branch, nu, &error));
        Ok(DecodeReport { error, codeword, branch, nu: Some(nu), kappa: Some(kappa), counts: phase, transcript })
    }

    /// Runs the Euclidean phase and the locator phase for a known `s_pi`.
    /// Returns the pair, the branch and `(kappa, nu)`.
    fn solve(
        &self,
        s_pi: &Poly,
        s: &[Felt],
        f: &CountingField,
        phase: &mut PhaseCounts,
        transcript: Option<&mut Transcript>,
    ) -> Result<(LocatorPair, Branch, (isize, isize)), DecodeError> {
        let top = self.code.params.top();
        let t = self.t;
        let before = f.counts();
        let g = Poly::monomial(Felt::one(top), t, top);
        let trace = EeaTrace::run(&g, s_pi, f).expect("deg s_pi < t");
        let nu = (0..=trace.last()).find(|&i| 2 * trace.tau(i).degree() < t as isize).expect("tau_(kappa+1) = 0");
        let after_eea = f.counts();
        phase.eea = phase.eea + (after_eea - before);
        if let Some(tr) = transcript {
            tr.record_eea(&trace, nu, s_pi);
        }
        let sigma_nu = trace.sigma(nu);
        let deg = sigma_nu.deg().unwrap_or(0);
        let result = if 2 * deg < t {
            self.case_a(&trace, nu, s, f).map(|p| (p, Branch::A))
        } else if 2 * deg == t {
            self.case_b(&trace, nu, s, f).map(|p| (p, Branch::B))
        } else {
            Err(DecodeError::UnexpectedDegree { deg, t })
        };
        phase.locator = phase.locator + (f.counts() - after_eea);
        result.map(|(p, b)| (p, b, (trace.kappa, nu)))
    }

    fn case_a(&self, trace: &EeaTrace, nu: isize, s: &[Felt], f: &CountingField) -> Result<LocatorPair, DecodeError> {
        if trace.tau(nu).is_zero() {
            return fail("remainder tau_nu vanished for a nonzero syndrome");
        }
        let sigma_nu = trace.sigma(nu);
        let mu = f.inv(sigma_nu.lead()).expect("nonzero");
        let sigma = sigma_nu.scale(mu, f);
        let tau = trace.tau(nu).scale(mu, f);
        let support = self.roots_in_support(&sigma, f);
        self.verify_pair(sigma, tau, support, s, f)
    }

    fn case_b(&self, trace: &EeaTrace, nu: isize, s: &[Felt], f: &CountingField) -> Result<LocatorPair, DecodeError> {
        let spec = f.spec();
        let top = self.code.params.top();
        let (s_prev, s_nu) = (trace.sigma(nu - 1), trace.sigma(nu));
        let (t_prev, t_nu) = (trace.tau(nu - 1), trace.tau(nu));
        let mu2 = f.inv(s_nu.lead()).expect("nonzero");
        let combine = |mu1: Felt| {
            let sigma = s_prev.scale(mu1, f).add(&s_nu.scale(mu2, f), f);
            let tau = t_prev.scale(mu1, f).add(&t_nu.scale(mu2, f), f);
            (sigma, tau)
        };
        let half = self.t / 2;
        match self.case_b {
            CaseBStrategy::RootVote => {
                let mut votes: HashMap<Felt, Vec<usize>> = HashMap::new();
                for (i, b) in self.code.alpha_inv.iter().enumerate() {
                    let Some(b) = *b else { continue };
                    let a = s_prev.eval(b, f);
                    if a.is_zero() {
                        continue;
                    }
                    let mu1 = f.neg(f.mul(mu2, f.div(s_nu.eval(b, f), a).expect("nonzero")));
                    votes.entry(mu1.at(top)).or_default().push(i);
                }
                let mut candidates: Vec<(Felt, Vec<usize>)> = votes.into_iter().filter(|(_, v)| v.len() == half).collect();
                candidates.sort_by_key(|(m, _)| m.value());
                for (mu1, support) in candidates {
                    let (sigma, tau) = combine(mu1);
                    if let Ok(pair) = self.verify_pair(sigma, tau, support, s, f) {
                        return Ok(pair);
                    }
                }
                fail("no admissible combination of the last two Euclidean pairs")
            }
            CaseBStrategy::Sweep => {
                for v in 0..spec.order(top) {
                    let mu1 = spec.elem(top, v).expect("in range");
                    let (sigma, tau) = combine(mu1);
                    let support = self.roots_in_support(&sigma, f);
                    if let Ok(pair) = self.verify_pair(sigma, tau, support, s, f) {
                        return Ok(pair);
                    }
                }
                fail("no admissible combination of the last two Euclidean pairs")
            }
        }
    }

    /// Positions `i` with `sigma(a_i^-1) = 0`; zero support points are skipped.
    fn roots_in_support(&self, sigma: &Poly, f: &CountingField) -> Vec<usize> {
        self.code
            .alpha_inv
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.filter(|&b| sigma.eval(b, f).is_zero()).map(|_| i))
            .collect()
    }

    /// Checks every locator/evaluator condition and computes magnitudes:
    /// `|J| = deg sigma`, `sigma` square-free, `e_i` nonzero in `F_q`,
    /// `deg(tau - a sigma) < deg sigma` for `a = eta sum g(a_i)^-1 e_i a_i^(t-1+t_1)`,
    /// and finally that the error reproduces the syndrome.
    ///
    /// An error at a zero support point has no locator root; it only adds a
    /// constant to the syndrome and a multiple of `sigma` to `tau`. When the
    /// code has such a point, `deg(tau - a sigma) = deg sigma` is allowed and
    /// the remaining syndrome must be a symbol multiple of that column.
    fn verify_pair(
        &self,
        sigma: Poly,
        tau: Poly,
        mut support: Vec<usize>,
        s: &[Felt],
        f: &CountingField,
    ) -> Result<LocatorPair, DecodeError> {
        let code = self.code;
        let spec = f.spec();
        let base = code.params.base;
        let deg = sigma.deg().unwrap_or(0);
        if support.len() != deg || (deg == 0 && self.zero_pos.is_none()) {
            return fail(format!("locator of degree {deg} has {} roots in the support", support.len()));
        }
        let ds = sigma.derivative(spec);
        if deg > 0 && !sigma.gcd(&ds, f).is_one() {
            return fail("locator has a repeated root");
        }
        let mut magnitudes = Vec::with_capacity(deg + 1);
        for &i in &support {
            let b = code.alpha_inv[i].expect("support roots avoid zero");
            let num = f.mul(f.mul(code.params.support[i], code.g_at[i]), tau.eval(b, f));
            let den = ds.eval(b, f);
            let e = f.neg(f.div(num, den).map_err(|_| DecodeError::DecodeFailure("sigma' vanishes at a root".into()))?);
            if e.is_zero() || !spec.in_subfield(e, base) {
                return fail(format!("magnitude at position {} is not a nonzero symbol", i + 1));
            }
            magnitudes.push(e);
        }
        let mut a = Felt::zero(self.eta.level());
        for (&i, &e) in support.iter().zip(&magnitudes) {
            a = f.add(a, f.mul(self.twist_weight[i], e));
        }
        let a = f.mul(self.eta, a);
        let w = tau.sub(&sigma.scale(a, f), f);
        let allowed = if self.zero_pos.is_some() { sigma.degree() + 1 } else { sigma.degree() };
        if w.degree() >= allowed {
            return fail("evaluator is not of the form a sigma + w with deg w < deg sigma");
        }
        // the error must reproduce the syndrome
        let mut residual = s.to_vec();
        for (row, r) in residual.iter_mut().enumerate() {
            for (&i, &e) in support.iter().zip(&magnitudes) {
                *r = f.sub(*r, f.mul(code.h.get(row, i), e));
            }
        }
        if residual.iter().any(|r| !r.is_zero()) {
            let e0 = self.zero_pos.and_then(|z| self.zero_magnitude(z, &residual, f));
            let (Some(z), Some(e0)) = (self.zero_pos, e0) else {
                return fail("decoded error does not reproduce the syndrome");
            };
            support.push(z);
            magnitudes.push(e0);
            let mut order: Vec<usize> = (0..support.len()).collect();
            order.sort_by_key(|&k| support[k]);
            support = order.iter().map(|&k| support[k]).collect();
            magnitudes = order.iter().map(|&k| magnitudes[k]).collect();
        } else if deg == 0 {
            return fail("zero locator with a reproduced syndrome");
        }
        Ok(LocatorPair { sigma, tau, support, magnitudes })
    }

    /// `e` with `residual = e * column z`, if it is a nonzero symbol.
    fn zero_magnitude(&self, z: usize, residual: &[Felt], f: &CountingField) -> Option<Felt> {
        let h = &self.code.h;
        let pivot = (0..h.rows()).find(|&r| !h.get(r, z).is_zero())?;
        let e = f.div(residual[pivot], h.get(pivot, z)).ok()?;
        if e.is_zero() || !f.spec().in_subfield(e, self.code.params.base) {
            return None;
        }
        let consistent = residual.iter().enumerate().all(|(r, &x)| f.mul(h.get(r, z), e).value() == x.value());
        consistent.then_some(e)
    }

    /// Tries every twist constant; keeps the lightest verified error (first
    /// in canonical order on ties).
    fn sweep_twist_constant(
        &self,
        syn: &SyndromeState,
        f: &CountingField,
        phase: &mut PhaseCounts,
        transcript: Option<&mut Transcript>,
    ) -> Result<(LocatorPair, Branch, (isize, isize)), DecodeError> {
        let spec = f.spec();
        let top = self.code.params.top();
        let mut best: Option<(LocatorPair, Branch, (isize, isize), Felt, Poly)> = None;
        for v in 0..spec.order(top) {
            let e = spec.elem(top, v).expect("in range");
            let s_pi = self.s_pi_for(&syn.s, e, f);
            if let Ok((pair, branch, idx)) = self.solve(&s_pi, &syn.s, f, phase, None) {
                if best.as_ref().is_none_or(|b| pair.support.len() < b.0.support.len()) {
                    best = Some((pair, branch, idx, e, s_pi));
                }
            }
        }
        match best {
            Some((pair, branch, idx, e, s_pi)) => {
                if let Some(tr) = transcript {
                    tr.set_twist_constant(e, &s_pi);
                    let trace = EeaTrace::run(&Poly::monomial(Felt::one(top), self.t, top), &s_pi, spec).expect("valid");
                    tr.record_eea(&trace, idx.1, &s_pi);
                }
                Ok((pair, branch, idx))
            }
            None => fail("no twist constant leads to a valid error pattern"),
        }
    }
}

/// Convenience wrapper: prepare and decode once.
pub fn decode(code: &MtgCode, r: &[Felt]) -> Result<DecodeReport, DecodeError> {
    Decoder::new(code)?.decode(r)
}

/// Residual `(s_pi sigma - tau) mod x^t`, zero for a valid pair.
pub fn key_equation_residual(s_pi: &Poly, sigma: &Poly, tau: &Poly, t: usize, spec: &FieldSpec) -> Poly {
    s_pi.mul(sigma, spec).sub(tau, spec).truncate(t)
}
