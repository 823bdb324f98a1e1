use super::{Poly, PolyError};
use crate::gf::FieldOps;

/// Full record of the extended Euclidean algorithm on `(G, S)`.
///
/// Indices run from -1 to `kappa + 1`: `tau_{-1} = G`, `tau_0 = S`,
/// `tau_{i-2} = q_i tau_{i-1} + tau_i`, with cofactors
/// `u_i = u_{i-2} - q_i u_{i-1}` (`u_{-1} = 1`, `u_0 = 0`) and
/// `sigma_i = sigma_{i-2} - q_i sigma_{i-1}` (`sigma_{-1} = 0`, `sigma_0 = 1`),
/// so that `u_i G + sigma_i S = tau_i`. `tau_{kappa+1}` is the first zero
/// remainder.
#[derive(Clone, Debug)]
pub struct EeaTrace {
    pub kappa: isize,
    tau: Vec<Poly>,
    u: Vec<Poly>,
    sigma: Vec<Poly>,
    q: Vec<Poly>,
}

impl EeaTrace {
    /// Runs the algorithm to completion.
    pub fn run(g: &Poly, s: &Poly, f: &(impl FieldOps + ?Sized)) -> Result<EeaTrace, PolyError> {
        if g.is_zero() {
            return Err(PolyError::ZeroModulus);
        }
        if s.degree() >= g.degree() {
            return Err(PolyError::BadDegrees { deg_g: g.degree(), deg_s: s.degree() });
        }
        let level = g.level().max(s.level());
        let mut tau = vec![g.embed(level), s.embed(level)];
        let mut u = vec![Poly::one(level), Poly::zero(level)];
        let mut sigma = vec![Poly::zero(level), Poly::one(level)];
        let mut q = vec![Poly::zero(level), Poly::zero(level)];
        while !tau.last().unwrap().is_zero() {
            let n = tau.len();
            let (qi, ti) = tau[n - 2].divmod(&tau[n - 1], f)?;
            let ui = u[n - 2].sub(&qi.mul(&u[n - 1], f), f);
            let si = sigma[n - 2].sub(&qi.mul(&sigma[n - 1], f), f);
            tau.push(ti);
            u.push(ui);
            sigma.push(si);
            q.push(qi);
        }
        let kappa = tau.len() as isize - 3;
        Ok(EeaTrace { kappa, tau, u, sigma, q })
    }

    fn idx(i: isize) -> usize {
        (i + 1) as usize
    }

    /// Largest valid index, `kappa + 1`.
    pub fn last(&self) -> isize {
        self.kappa + 1
    }

    pub fn tau(&self, i: isize) -> &Poly {
        &self.tau[Self::idx(i)]
    }

    pub fn u(&self, i: isize) -> &Poly {
        &self.u[Self::idx(i)]
    }

    pub fn sigma(&self, i: isize) -> &Poly {
        &self.sigma[Self::idx(i)]
    }

    /// Quotient `q_i` for `1 <= i <= kappa + 1`.
    pub fn q(&self, i: isize) -> &Poly {
        assert!(i >= 1, "quotients start at index 1");
        &self.q[Self::idx(i)]
    }

    pub fn g(&self) -> &Poly {
        self.tau(-1)
    }

    pub fn s(&self) -> &Poly {
        self.tau(0)
    }

    /// `tau_kappa`, the last nonzero remainder (G itself when S = 0).
    pub fn gcd_remainder(&self) -> &Poly {
        self.tau(self.kappa)
    }
}
