use rand::Rng;

use super::{DecodeError, Decoder};
use crate::codes::MtgCode;
use crate::pkc::random_error;

/// Mean per-decode operation counts over a batch of trials.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub n: usize,
    pub t: usize,
    pub trials: usize,
    pub mean_mul_add: f64,
    pub mean_inv: f64,
    pub mean_syndrome: f64,
    pub mean_eea: f64,
    pub mean_locator: f64,
}

impl ProfileRow {
    pub const CSV_HEADER: &'static str = "n,t,trials,mean_mul_add,mean_inv,mean_syndrome,mean_eea,mean_locator";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{:.2},{:.2},{:.2},{:.2},{:.2}",
            self.n, self.t, self.trials, self.mean_mul_add, self.mean_inv, self.mean_syndrome, self.mean_eea, self.mean_locator
        )
    }
}

/// Decodes `trials` random codewords hit by `floor(t/2)` errors and averages
/// the counted field operations (mul + add per phase, inversions overall).
pub fn op_count_profile<R: Rng + ?Sized>(code: &MtgCode, trials: usize, rng: &mut R) -> Result<ProfileRow, DecodeError> {
    let dec = Decoder::new(code)?;
    let spec = code.spec();
    let base = code.params.base;
    let w = code.t() / 2;
    let (mut total, mut inv, mut syn, mut eea, mut loc) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for _ in 0..trials {
        let msg: Vec<_> = (0..code.k()).map(|_| spec.random(base, rng)).collect();
        let c = code.encode(&msg);
        let e = random_error(spec, base, code.n(), w, rng);
        let r: Vec<_> = c.iter().zip(&e).map(|(&a, &b)| spec.add(a, b)).collect();
        let rep = dec.decode(&r)?;
        let all = rep.counts.total();
        total += all.mul_add();
        inv += all.inv;
        syn += rep.counts.syndrome.mul_add();
        eea += rep.counts.eea.mul_add();
        loc += rep.counts.locator.mul_add();
    }
    let d = trials.max(1) as f64;
    Ok(ProfileRow {
        n: code.n(),
        t: code.t(),
        trials,
        mean_mul_add: total as f64 / d,
        mean_inv: inv as f64 / d,
        mean_syndrome: syn as f64 / d,
        mean_eea: eea as f64 / d,
        mean_locator: loc as f64 / d,
    })
}
