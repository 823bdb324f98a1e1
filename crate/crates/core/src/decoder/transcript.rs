use super::{Branch, LocatorPair, SyndromeState};
use crate::gf::{FieldSpec, Felt};
use crate::poly::{EeaTrace, Poly};

pub const TRANSCRIPT_VERSION: &str = "mtg-decode-transcript v1";

/// Every intermediate quantity of one decoding run.
#[derive(Clone, Debug, Default)]
pub struct Transcript {
    pub syndrome: Vec<Felt>,
    pub s_poly: Option<Poly>,
    pub twist_constant: Option<Felt>,
    pub s_pi: Option<Poly>,
    /// `(q_i, tau_i, sigma_i)` for `i = 1 ..= kappa + 1`.
    pub steps: Vec<(Poly, Poly, Poly)>,
    pub nu: Option<isize>,
    pub branch: Option<Branch>,
    pub sigma: Option<Poly>,
    pub tau: Option<Poly>,
    /// 0-based error positions.
    pub positions: Vec<usize>,
    pub error: Vec<Felt>,
}

impl Transcript {
    pub(super) fn new(syn: &SyndromeState) -> Transcript {
        Transcript {
            syndrome: syn.s.clone(),
            s_poly: Some(syn.s_poly.clone()),
            twist_constant: syn.twist_constant,
            s_pi: syn.s_pi.clone(),
            ..Default::default()
        }
    }

    pub(super) fn set_twist_constant(&mut self, e: Felt, s_pi: &Poly) {
        self.twist_constant = Some(e);
        self.s_pi = Some(s_pi.clone());
    }

    pub(super) fn record_eea(&mut self, trace: &EeaTrace, nu: isize, s_pi: &Poly) {
        self.s_pi = Some(s_pi.clone());
        self.steps = (1..=trace.last()).map(|i| (trace.q(i).clone(), trace.tau(i).clone(), trace.sigma(i).clone())).collect();
        self.nu = Some(nu);
    }

    pub(super) fn finish_zero(mut self) -> Transcript {
        self.branch = Some(Branch::Zero);
        self
    }

    pub(super) fn finish(mut self, pair: &LocatorPair, branch: Branch, nu: isize, error: &[Felt]) -> Transcript {
        self.branch = Some(branch);
        self.nu = Some(nu);
        self.sigma = Some(pair.sigma.clone());
        self.tau = Some(pair.tau.clone());
        self.positions = pair.support.clone();
        self.error = error.to_vec();
        self
    }

    /// Line-oriented rendering in the generator names; positions are
    /// printed 1-based.
    pub fn to_text(&self, spec: &FieldSpec) -> String {
        let poly = |p: &Option<Poly>| p.as_ref().map_or("-".to_string(), |p| p.display(spec));
        let mut out = vec![TRANSCRIPT_VERSION.to_string()];
        let s: Vec<String> = self.syndrome.iter().map(|&x| spec.display(x)).collect();
        out.push(format!("syndrome = ({})", s.join(", ")));
        out.push(format!("s(x) = {}", poly(&self.s_poly)));
        if let Some(e) = self.twist_constant {
            out.push(format!("twist constant = {}", spec.display(e)));
        }
        out.push(format!("s_pi(x) = {}", poly(&self.s_pi)));
        for (i, (q, tau, sigma)) in self.steps.iter().enumerate() {
            out.push(format!(
                "step {}: q = {} ; tau = {} ; sigma = {}",
                i + 1,
                q.display(spec),
                tau.display(spec),
                sigma.display(spec)
            ));
        }
        if let Some(nu) = self.nu {
            out.push(format!("nu = {nu}"));
        }
        let branch = match self.branch {
            Some(Branch::Zero) => "zero syndrome",
            Some(Branch::A) => "A",
            Some(Branch::B) => "B",
            None => "-",
        };
        out.push(format!("branch = {branch}"));
        if self.branch != Some(Branch::Zero) {
            out.push(format!("sigma(x) = {}", poly(&self.sigma)));
            out.push(format!("tau(x) = {}", poly(&self.tau)));
            let j: Vec<String> = self.positions.iter().map(|i| (i + 1).to_string()).collect();
            out.push(format!("J = {{{}}}", j.join(", ")));
            let e: Vec<String> = self.positions.iter().map(|&i| format!("e_{} = {}", i + 1, spec.display(self.error[i]))).collect();
            out.push(e.join(" ; "));
        }
        out.join("\n") + "\n"
    }
}
