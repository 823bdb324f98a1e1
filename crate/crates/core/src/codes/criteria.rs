//! Distance and MDS criteria for twisted codes.
//!
//! Both criteria reduce to one question: given points `a_w` (`w` in a
//! subset of size `d`), is there a nonzero
//! `f(x) = sum_{r<d} f_r x^r + sum_j eta_j f_{h_j} x^(d-1+t_j)` vanishing on
//! all of them? Writing `f = sigma . gamma` with `sigma = prod (x - a_w)`
//! and `deg gamma < t_l` turns this into a square system in `gamma`.

use itertools::Itertools;

use super::{binomial, vanishing_poly, CodeError, MtgParams, Twist};
use crate::gf::{FieldSpec, Felt};
use crate::linalg::FMatrix;
use crate::poly::Poly;

/// The `t_l x t_l` system for `sigma` of degree `d`.
///
/// Row `r` is the coefficient of `x^(d + t_l - 1 - r)` in `sigma . gamma`
/// and column `c` multiplies `gamma_(t_l - 1 - c)`. Rows at twist exponents
/// are scaled by `eta_j^-1` and have the `x^(h_j)` row of `sigma . gamma`
/// subtracted (rows sharing an exponent cannot occur since the twist degrees
/// are distinct). A zero `eta_j` leaves the plain coefficient row.
pub fn twisted_vanishing_matrix(sigma: &Poly, twists: &[Twist], spec: &FieldSpec) -> FMatrix {
    let level = sigma.level();
    let d = sigma.deg().expect("nonzero vanishing polynomial");
    let tl = twists.last().map_or(0, |tw| tw.degree);
    let coef = |e: isize| if e < 0 { Felt::zero(level) } else { sigma.coeff(e as usize) };
    let mut m = FMatrix::zeros(tl, tl, level);
    for r in 0..tl {
        let e = (d + tl - 1 - r) as isize;
        let twist = twists.iter().find(|tw| tw.degree == tl - r);
        for c in 0..tl {
            let i = (tl - 1 - c) as isize;
            let mut v = coef(e - i);
            if let Some(tw) = twist.filter(|tw| !tw.eta.is_zero()) {
                let scale = spec.inv(tw.eta).expect("nonzero");
                v = spec.sub(spec.mul(scale, v), coef(tw.hook as isize - i));
            }
            m.set(r, c, v);
        }
    }
    m
}

fn subset_matrix_nonsingular(points: &[Felt], twists: &[Twist], level: usize, spec: &FieldSpec) -> bool {
    if twists.is_empty() {
        return true;
    }
    let sigma = vanishing_poly(points, level, spec);
    let m = twisted_vanishing_matrix(&sigma, twists, spec);
    m.rank(spec) == m.rows()
}

/// Whether every `t` columns of the parity-check matrix are independent, via
/// the vanishing system on each `t`-subset of the support. A `true` result
/// certifies minimum distance at least `t + 1`.
pub fn distance_criterion_check(params: &MtgParams, bound: u128) -> Result<bool, CodeError> {
    params.validate()?;
    let spec = params.field.as_ref();
    let (n, t) = (params.n(), params.t());
    let count = binomial(n, t);
    if count > bound {
        return Err(CodeError::TooLarge { count, bound });
    }
    if t > n {
        return Ok(true);
    }
    let top = params.top();
    let support: Vec<Felt> = params.support.iter().map(|a| a.at(top)).collect();
    Ok((0..n)
        .combinations(t)
        .all(|idx| subset_matrix_nonsingular(&idx.iter().map(|&i| support[i]).collect::<Vec<_>>(), &params.twists, top, spec)))
}

/// Checks the tower hypothesis certifying `d >= t + 1`: support and `g` lie
/// in `F_s0`, and some strictly increasing chain of tower levels
/// `s0 = l_0 < l_1 < .. < l_ell = top` has `eta_i` in level `l_i` but not in
/// level `l_(i-1)`.
pub fn tower_distance_guarantee(params: &MtgParams) -> bool {
    let spec = params.field.as_ref();
    let s0 = params.s0;
    if !params.support.iter().all(|&a| spec.in_subfield(a, s0)) {
        return false;
    }
    if !params.goppa.coeffs().iter().all(|&c| spec.in_subfield(c, s0)) {
        return false;
    }
    fn chain(spec: &FieldSpec, etas: &[Felt], prev: usize, top: usize) -> bool {
        match etas.split_first() {
            None => prev == top,
            Some((&eta, rest)) => {
                if spec.in_subfield(eta, prev) {
                    return false;
                }
                let last = rest.is_empty();
                (prev + 1..=top)
                    .filter(|&l| !last || l == top)
                    .any(|l| spec.in_subfield(eta, l) && chain(spec, rest, l, top))
            }
        }
    }
    if params.twists.is_empty() {
        return true;
    }
    let etas: Vec<Felt> = params.twists.iter().map(|tw| tw.eta).collect();
    chain(spec, &etas, s0, params.top())
}

/// Multi-twisted Reed-Solomon parameters over a single field level.
#[derive(Clone, Debug)]
pub struct MtrsParams {
    pub level: usize,
    pub k: usize,
    pub alpha: Vec<Felt>,
    pub twists: Vec<Twist>,
}

impl MtrsParams {
    fn validate(&self) -> Result<(), CodeError> {
        let n = self.alpha.len();
        let top_deg = self.k - 1 + self.twists.last().map_or(0, |tw| tw.degree);
        if self.k == 0 || self.k >= n {
            return Err(CodeError::ParamViolation(format!("need 0 < k < n, got k = {} n = {n}", self.k)));
        }
        if top_deg >= n {
            return Err(CodeError::ParamViolation(format!("twisted degree {top_deg} must be below n = {n}")));
        }
        for w in self.twists.windows(2) {
            if w[0].degree >= w[1].degree || w[0].hook >= w[1].hook {
                return Err(CodeError::ParamViolation("twist degrees and hooks must strictly increase".into()));
            }
        }
        if self.twists.iter().any(|tw| tw.hook >= self.k || tw.degree == 0) {
            return Err(CodeError::ParamViolation("hooks must be below k and twist degrees positive".into()));
        }
        Ok(())
    }
}

/// `k x n` generator: row `i` evaluates `x^i + sum_{h_j = i} eta_j x^(k-1+t_j)`.
pub fn mtrs_generator(params: &MtrsParams, spec: &FieldSpec) -> Result<FMatrix, CodeError> {
    params.validate()?;
    let n = params.alpha.len();
    let mut g = FMatrix::zeros(params.k, n, params.level);
    for (c, &a) in params.alpha.iter().enumerate() {
        for i in 0..params.k {
            let mut v = spec.pow(a, i as u64);
            for tw in params.twists.iter().filter(|tw| tw.hook == i) {
                v = spec.add(v, spec.mul(tw.eta, spec.pow(a, (params.k - 1 + tw.degree) as u64)));
            }
            g.set(i, c, v.at(params.level));
        }
    }
    Ok(g)
}

/// MDS test for an MTRS code: the vanishing system must be nonsingular for
/// every `k`-subset of the evaluation points.
pub fn mds_matrix_criterion(params: &MtrsParams, spec: &FieldSpec, bound: u128) -> Result<bool, CodeError> {
    params.validate()?;
    let n = params.alpha.len();
    let count = binomial(n, params.k);
    if count > bound {
        return Err(CodeError::TooLarge { count, bound });
    }
    Ok((0..n).combinations(params.k).all(|idx| {
        let pts: Vec<Felt> = idx.iter().map(|&i| params.alpha[i]).collect();
        subset_matrix_nonsingular(&pts, &params.twists, params.level, spec)
    }))
}
