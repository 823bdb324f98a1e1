//! Monte-Carlo experiments: false-positive rate of the shortened syndrome
//! test and per-point support recovery.

use std::sync::Arc;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{same_up_to_unit, shortened_syndrome_test, AttackError};
use crate::codes::{build_code, shift_dot, CongruenceForm, MtgParams, Twist};
use crate::gf::{FieldSpec, Felt};
use crate::linalg::FMatrix;
use crate::pkc::{random_invertible, random_monic_irreducible};
use crate::poly::Poly;

/// Shape of a randomly drawn code.
#[derive(Clone, Debug)]
pub struct InstanceConfig {
    pub field: Arc<FieldSpec>,
    pub base: usize,
    /// Level of the support and `g`.
    pub s0: usize,
    pub n: usize,
    pub t: usize,
    /// `(degree, hook)`; `None` gives a classical Goppa code.
    pub twist: Option<(usize, usize)>,
}

impl InstanceConfig {
    pub fn q(&self) -> u64 {
        self.field.order(self.base)
    }

    pub fn m(&self) -> usize {
        self.field.degree_over(self.field.top(), self.base)
    }
}

/// Random irreducible `g` over `F_s0`, `n` distinct non-roots from
/// `F_s0` and, for twisted codes, `eta` outside `F_s0` (any nonzero element
/// when `s0` is the top).
pub fn random_instance<R: Rng + ?Sized>(cfg: &InstanceConfig, rng: &mut R) -> Result<MtgParams, AttackError> {
    let spec = cfg.field.as_ref();
    let top = spec.top();
    let pe = |e: crate::pkc::PkcError| AttackError::Inconsistent(e.to_string());
    let goppa = random_monic_irreducible(spec, cfg.s0, cfg.t, rng).map_err(pe)?.embed(top);
    let order = spec.order(cfg.s0);
    let mut support: Vec<Felt> = Vec::with_capacity(cfg.n);
    for v in index::sample(rng, order as usize, order as usize).into_iter() {
        let a = spec.elem(cfg.s0, v as u64).expect("in range").at(top);
        if !goppa.eval(a, spec).is_zero() {
            support.push(a);
            if support.len() == cfg.n {
                break;
            }
        }
    }
    if support.len() < cfg.n {
        return Err(AttackError::Inconsistent(format!("F_s0 has fewer than {} usable points", cfg.n)));
    }
    let twists = match cfg.twist {
        None => Vec::new(),
        Some((degree, hook)) => {
            let eta = loop {
                let e = spec.random_nonzero(top, rng);
                if cfg.s0 == top || !spec.in_subfield(e, cfg.s0) {
                    break e;
                }
            };
            vec![Twist { degree, hook, eta }]
        }
    };
    let params = MtgParams { field: cfg.field.clone(), base: cfg.base, s0: cfg.s0, support, goppa, twists };
    params.validate()?;
    Ok(params)
}

fn sorted_subset<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut v = index::sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}

/// One cell of the false-positive experiment.
#[derive(Clone, Debug)]
pub struct FpCell {
    pub instance: InstanceConfig,
    /// Known positions.
    pub eps: usize,
    /// Shortened codewords used as checks.
    pub j: usize,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FpRow {
    pub q: u64,
    pub m: usize,
    pub t: usize,
    pub j: usize,
    pub trials: usize,
    pub accepted: usize,
    /// `q^-(m t j)`.
    pub predicted: f64,
    pub empirical: f64,
    /// Binomial standard deviation of the empirical rate at `predicted`.
    pub sigma: f64,
    /// `M_t = q^(m t)`, the number of monic degree-`t` polynomials.
    pub m_t: f64,
    /// `(M_t - 1) q^-(m t j)`.
    pub union_bound: f64,
    /// Trials skipped because the shortened code had dimension below `j`.
    pub skipped: usize,
}

impl FpRow {
    pub const CSV_HEADER: &'static str = "q,m,t,j,trials,accepted,predicted,empirical,sigma,m_t,union_bound,skipped";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{}",
            self.q,
            self.m,
            self.t,
            self.j,
            self.trials,
            self.accepted,
            self.predicted,
            self.empirical,
            self.sigma,
            self.m_t,
            self.union_bound,
            self.skipped
        )
    }

    /// `|empirical - predicted| <= k sigma`.
    pub fn within(&self, k: f64) -> bool {
        (self.empirical - self.predicted).abs() <= k * self.sigma
    }
}

/// Fresh random code, random known set of size `eps`, `j` random independent
/// shortened codewords, and a random monic irreducible `f != g` of degree
/// `t` that does not vanish on the known points; counts how often `f`
/// passes the shortened test.
pub fn fp_bound_table<R: Rng + ?Sized>(cells: &[FpCell], rng: &mut R) -> Result<Vec<FpRow>, AttackError> {
    let mut rows = Vec::with_capacity(cells.len());
    for cell in cells {
        let cfg = &cell.instance;
        let spec = cfg.field.clone();
        let top = spec.top();
        let (mut accepted, mut skipped) = (0, 0);
        for _ in 0..cell.trials {
            let params = random_instance(cfg, rng)?;
            let code = build_code(&params)?;
            let known = sorted_subset(cfg.n, cell.eps, rng);
            let points: Vec<Felt> = known.iter().map(|&i| params.support[i]).collect();
            let short = code.h_expanded.restrict_columns(&known)?.null_space_basis(spec.as_ref());
            let d = short.rows();
            if d < cell.j {
                skipped += 1;
                continue;
            }
            let mix = random_invertible(&spec, cfg.base, d, rng).map_err(|e| AttackError::Inconsistent(e.to_string()))?;
            let mixed = mix.mul(&short, spec.as_ref())?;
            let checks = FMatrix::from_rows(mixed.row_vecs().into_iter().take(cell.j).collect(), cell.eps, cfg.base);
            let f = loop {
                let f = random_monic_irreducible(&spec, top, cfg.t, rng).map_err(|e| AttackError::Inconsistent(e.to_string()))?;
                if !same_up_to_unit(&f, &params.goppa, &spec) && points.iter().all(|&a| !f.eval(a, spec.as_ref()).is_zero()) {
                    break f;
                }
            };
            if shortened_syndrome_test(&f, cfg.t, &params.twists, &points, &checks, &spec)? {
                accepted += 1;
            }
        }
        let q = cfg.q();
        let m = cfg.m();
        let done = cell.trials - skipped;
        let predicted = (q as f64).powf(-((m * cfg.t * cell.j) as f64));
        let m_t = (q as f64).powi((m * cfg.t) as i32);
        rows.push(FpRow {
            q,
            m,
            t: cfg.t,
            j: cell.j,
            trials: done,
            accepted,
            predicted,
            empirical: accepted as f64 / done.max(1) as f64,
            sigma: (predicted * (1.0 - predicted) / done.max(1) as f64).sqrt(),
            m_t,
            union_bound: (m_t - 1.0) * predicted,
            skipped,
        });
    }
    Ok(rows)
}

/// Per-point support recovery with `g` and `eps` support points known.
#[derive(Clone, Debug)]
pub struct ProbeConfig {
    pub instance: InstanceConfig,
    pub eps: usize,
    pub trials: usize,
    /// A new random code is drawn every this many trials.
    pub trials_per_instance: usize,
    /// Trials (from the start) on which every scalar is also tried and
    /// filtered by self-consistency.
    pub enumerate_trials: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProbeReport {
    pub trials: usize,
    /// Trials where a codeword with exactly one unknown position existed.
    pub attempted: usize,
    /// Blind guesses of the unknown scalar that recovered the point.
    pub successes: usize,
    pub rate: f64,
    /// `q^-m`, or 1 for an untwisted code.
    pub predicted: f64,
    /// `2^-m` with the same `m`.
    pub predicted_binary: f64,
    pub sigma: f64,
    pub enumerated: usize,
    /// Enumerated trials where exactly one scalar was self-consistent.
    pub consistent_unique: usize,
    /// ... and that scalar gave the true point.
    pub consistent_recovered: usize,
}

impl ProbeReport {
    pub const CSV_HEADER: &'static str =
        "trials,attempted,successes,rate,predicted,predicted_binary,sigma,enumerated,consistent_unique,consistent_recovered";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{:.6e},{:.6e},{:.6e},{:.6e},{},{},{}",
            self.trials,
            self.attempted,
            self.successes,
            self.rate,
            self.predicted,
            self.predicted_binary,
            self.sigma,
            self.enumerated,
            self.consistent_unique,
            self.consistent_recovered
        )
    }

    pub fn within(&self, k: f64) -> bool {
        (self.rate - self.predicted).abs() <= k * self.sigma
    }
}

/// The point `a` with `1/(z - a) = rhs mod g`, if `rhs` has that form.
fn invert_to_point(rhs: &Poly, g: &Poly, spec: &FieldSpec) -> Option<Felt> {
    let p = rhs.inv_mod(g, spec).ok()?;
    (p.degree() == 1 && p.lead().is_one()).then(|| spec.neg(p.coeff(0)))
}

/// For each trial: pick an unknown position `r`, find a codeword supported
/// on the known positions plus `r` with `c_r = 1`, and try to recover `a_r`
/// from `1/(z - a_r) = -A(z) + eta lambda U(z) mod g`, where `A` collects
/// the known positions and `lambda = a_r^(t-1+t_1) / g(a_r)` is guessed
/// uniformly. Untwisted codes have no unknown scalar.
pub fn support_recovery_probe<R: Rng + ?Sized>(cfg: &ProbeConfig, rng: &mut R) -> Result<ProbeReport, AttackError> {
    let icfg = &cfg.instance;
    if icfg.t < 2 {
        return Err(AttackError::Inconsistent("need t >= 2 so that z - a is reduced mod g".into()));
    }
    let spec = icfg.field.clone();
    let top = spec.top();
    let mut rep = ProbeReport { trials: cfg.trials, ..Default::default() };
    let mut current: Option<(MtgParams, FMatrix, CongruenceForm)> = None;
    for trial in 0..cfg.trials {
        if trial % cfg.trials_per_instance.max(1) == 0 {
            let params = random_instance(icfg, rng)?;
            let code = build_code(&params)?;
            let form = CongruenceForm::new(&params, &params.goppa)?;
            current = Some((params, code.h_expanded, form));
        }
        let (params, h, form) = current.as_ref().expect("drawn above");
        let n = params.n();
        if cfg.eps >= n {
            rep.attempted += 1;
            rep.successes += 1;
            continue;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let r = order[cfg.eps];
        let mut known = order[..cfg.eps].to_vec();
        known.sort_unstable();
        let h_known = h.restrict_columns(&known)?;
        let rhs: Vec<Felt> = h.column(r).iter().map(|&x| spec.neg(x)).collect();
        let Some(x) = h_known.solve_particular(&rhs, spec.as_ref()) else { continue };
        rep.attempted += 1;
        let mut c = vec![Felt::zero(params.base); n];
        for (&i, &xi) in known.iter().zip(&x) {
            c[i] = xi;
        }
        let g = &params.goppa;
        let a_part = form.residue(&c, &spec).neg(spec.as_ref());
        let truth = params.support[r];
        let twist = params.twists.first();
        let rhs_for = |lambda: Felt| match twist {
            Some(tw) => a_part.add(&shift_dot(g, tw.hook).scale(spec.mul(tw.eta, lambda), spec.as_ref()), spec.as_ref()),
            None => a_part.clone(),
        };
        let guess = spec.random(top, rng);
        if invert_to_point(&rhs_for(guess), g, &spec).is_some_and(|a| a == truth) {
            rep.successes += 1;
        }
        if trial < cfg.enumerate_trials {
            rep.enumerated += 1;
            let exponent = twist.map_or(0, |tw| (icfg.t - 1 + tw.degree) as u64);
            let mut consistent = Vec::new();
            for v in 0..spec.order(top) {
                let lambda = spec.elem(top, v).expect("in range");
                let Some(a) = invert_to_point(&rhs_for(lambda), g, &spec) else { continue };
                let ga = g.eval(a, spec.as_ref());
                if ga.is_zero() || known.iter().any(|&i| params.support[i] == a) {
                    continue;
                }
                let implied = spec.div(spec.pow(a, exponent), ga).expect("nonzero");
                if twist.is_none() || implied == lambda {
                    consistent.push(a);
                }
                if twist.is_none() {
                    break;
                }
            }
            if consistent.len() == 1 {
                rep.consistent_unique += 1;
                if consistent[0] == truth {
                    rep.consistent_recovered += 1;
                }
            }
        }
    }
    let q = icfg.q() as f64;
    let m = icfg.m() as f64;
    rep.predicted = if icfg.twist.is_some() { q.powf(-m) } else { 1.0 };
    rep.predicted_binary = if icfg.twist.is_some() { 2f64.powf(-m) } else { 1.0 };
    rep.rate = rep.successes as f64 / rep.attempted.max(1) as f64;
    rep.sigma = (rep.predicted * (1.0 - rep.predicted) / rep.attempted.max(1) as f64).sqrt();
    Ok(rep)
}
