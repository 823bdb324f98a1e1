//! Exhaustive codeword enumeration.

use super::{CodeError, MtgCode};
use crate::gf::{FieldSpec, Felt};
use crate::linalg::FMatrix;

/// Visits every codeword spanned by `generator` over the level-`base` field,
/// the zero word included. Consecutive words differ by one generator row
/// multiple, so each step costs `O(n)`.
fn for_each_codeword(generator: &FMatrix, base: usize, spec: &FieldSpec, mut visit: impl FnMut(&[Felt])) {
    let (k, n) = (generator.rows(), generator.cols());
    let q = spec.order(base) as usize;
    let elems: Vec<Felt> = (0..q as u64).map(|v| spec.elem(base, v).expect("in range")).collect();
    // delta[j][v]: change to the word when digit j steps from elems[v] to elems[v+1 mod q]
    let delta: Vec<Vec<Vec<Felt>>> = (0..k)
        .map(|j| {
            (0..q)
                .map(|v| {
                    let step = spec.sub(elems[(v + 1) % q], elems[v]);
                    generator.row(j).iter().map(|&g| spec.mul(step, g)).collect()
                })
                .collect()
        })
        .collect();
    let mut digits = vec![0usize; k];
    let mut word = vec![Felt::zero(base); n];
    loop {
        visit(&word);
        let mut j = 0;
        loop {
            if j == k {
                return;
            }
            let v = digits[j];
            for (w, &d) in word.iter_mut().zip(&delta[j][v]) {
                *w = spec.add(*w, d);
            }
            digits[j] = (v + 1) % q;
            if digits[j] != 0 {
                break;
            }
            j += 1;
        }
    }
}

fn check_count(code: &MtgCode, bound: u128) -> Result<(), CodeError> {
    let q = code.params.q() as u128;
    let count = q.checked_pow(code.k() as u32).unwrap_or(u128::MAX);
    if count > bound {
        return Err(CodeError::TooLarge { count, bound });
    }
    Ok(())
}

/// Exact minimum distance by enumerating all `q^k` codewords; `None` for the
/// zero code.
pub fn min_distance_bruteforce(code: &MtgCode, bound: u128) -> Result<Option<usize>, CodeError> {
    check_count(code, bound)?;
    if code.k() == 0 {
        return Ok(None);
    }
    let spec = code.spec();
    let base = code.params.base;
    if spec.order(base) == 2 && code.n() <= 64 {
        return Ok(Some(binary_min_distance(&code.generator)));
    }
    let mut best = usize::MAX;
    for_each_codeword(&code.generator, base, spec, |w| {
        let wt = w.iter().filter(|x| !x.is_zero()).count();
        if wt > 0 && wt < best {
            best = wt;
        }
    });
    Ok(Some(best))
}

/// Gray-code walk over a binary code with words packed into `u64`.
fn binary_min_distance(generator: &FMatrix) -> usize {
    let rows: Vec<u64> = (0..generator.rows())
        .map(|r| generator.row(r).iter().enumerate().fold(0u64, |acc, (i, x)| acc | ((x.value() & 1) << i)))
        .collect();
    let mut word = 0u64;
    let mut best = u32::MAX;
    for step in 1u64..(1u64 << rows.len()) {
        word ^= rows[step.trailing_zeros() as usize];
        best = best.min(word.count_ones());
    }
    best as usize
}

/// All codewords in memory, for nearest-codeword queries.
#[derive(Clone, Debug)]
pub struct Codebook {
    n: usize,
    words: Vec<Felt>,
}

impl Codebook {
    pub fn new(code: &MtgCode, bound: u128) -> Result<Codebook, CodeError> {
        check_count(code, bound)?;
        let mut words = Vec::new();
        for_each_codeword(&code.generator, code.params.base, code.spec(), |w| words.extend_from_slice(w));
        Ok(Codebook { n: code.n(), words })
    }

    pub fn len(&self) -> usize {
        self.words.len() / self.n.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &[Felt] {
        &self.words[i * self.n..(i + 1) * self.n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Felt]> {
        self.words.chunks(self.n)
    }

    /// The distance to the closest codewords and every codeword achieving it.
    pub fn nearest(&self, r: &[Felt]) -> (usize, Vec<Vec<Felt>>) {
        let mut best = usize::MAX;
        let mut hits = Vec::new();
        for w in self.iter() {
            let d = w.iter().zip(r).filter(|(a, b)| a.value() != b.value()).count();
            if d < best {
                best = d;
                hits.clear();
            }
            if d == best {
                hits.push(w.to_vec());
            }
        }
        (best, hits)
    }

    /// Minimum nonzero weight, `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        self.iter().map(|w| w.iter().filter(|x| !x.is_zero()).count()).filter(|&w| w > 0).min()
    }
}
