//! Irreducibility testing and factorization: square-free decomposition,
//! distinct-degree splitting and randomized equal-degree splitting.

use rand::Rng;

use super::{Poly, PolyError};
use crate::gf::{prime_factors, FieldSpec, Felt};

/// Fields up to this order use a root search for degrees 2 and 3.
const ROOT_SEARCH_MAX_ORDER: u64 = 1 << 12;

impl Poly {
    /// Whether the polynomial is irreducible over its coefficient level.
    pub fn is_irreducible(&self, spec: &FieldSpec) -> bool {
        let d = match self.deg() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let q = spec.order(self.level);
        if d <= 3 && q <= ROOT_SEARCH_MAX_ORDER {
            return (0..q).all(|v| !self.eval(Felt::raw(self.level, v), spec).is_zero());
        }
        self.distinct_degree_irreducible(spec)
    }

    /// Rabin's test: `x^(Q^d) = x mod f` and `gcd(x^(Q^(d/r)) - x, f) = 1`
    /// for every prime `r | d`.
    pub fn distinct_degree_irreducible(&self, spec: &FieldSpec) -> bool {
        let d = match self.deg() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        let f = self.make_monic(spec);
        let q = spec.order(self.level);
        let x = Poly::x(self.level).rem(&f, spec).expect("nonzero");
        let mut frob = vec![x.clone()];
        for i in 1..=d {
            let next = frob[i - 1].powmod(q, &f, spec);
            frob.push(next);
        }
        if frob[d] != x {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|r| {
            let h = frob[d / r as usize].sub(&x, spec);
            h.gcd(&f, spec).is_one()
        })
    }

    /// Square-free decomposition of a monic polynomial: pairs of square-free
    /// coprime parts and their multiplicities.
    pub fn square_free(&self, spec: &FieldSpec) -> Vec<(Poly, usize)> {
        let f = self.make_monic(spec);
        let mut out = Vec::new();
        if f.degree() <= 0 {
            return out;
        }
        let mut c = f.gcd(&f.derivative(spec), spec);
        let mut w = f.div_exact(&c, spec);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c, spec);
            let fac = w.div_exact(&y, spec);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w, spec);
            i += 1;
        }
        if !c.is_one() {
            let p = spec.p() as usize;
            let root = c.pth_root(spec);
            for (g, m) in root.square_free(spec) {
                out.push((g, m * p));
            }
        }
        out
    }

    /// `h` with `h(x)^p = self(x)`; every exponent must be a multiple of p.
    fn pth_root(&self, spec: &FieldSpec) -> Poly {
        let p = spec.p() as usize;
        let c = self.coeffs.iter().step_by(p).map(|&c| spec.pth_root(c)).collect();
        Poly::new(c, self.level)
    }

    /// Splits a monic square-free polynomial into products of irreducible
    /// factors sharing one degree: pairs `(product, factor degree)`.
    pub fn distinct_degree(&self, spec: &FieldSpec) -> Vec<(Poly, usize)> {
        let q = spec.order(self.level);
        let mut f = self.make_monic(spec);
        let x = Poly::x(self.level);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while f.degree() >= 2 * d as isize {
            h = h.powmod(q, &f, spec);
            let g = h.sub(&x, spec).gcd(&f, spec);
            if !g.is_one() {
                f = f.div_exact(&g, spec);
                h = h.rem(&f, spec).expect("nonzero");
                out.push((g, d));
            }
            d += 1;
        }
        if f.degree() > 0 {
            let deg = f.deg().unwrap();
            out.push((f, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a monic product of distinct irreducible
    /// factors of degree `d`.
    pub fn equal_degree<R: Rng + ?Sized>(&self, d: usize, spec: &FieldSpec, rng: &mut R) -> Vec<Poly> {
        let n = self.deg().unwrap_or(0);
        if n <= d {
            return vec![self.make_monic(spec)];
        }
        let level = self.level;
        let q = spec.order(level);
        loop {
            let a = Poly::new((0..n).map(|_| spec.random(level, rng)).collect(), level);
            if a.degree() <= 0 {
                continue;
            }
            let b = if spec.p() == 2 {
                // absolute trace a + a^2 + ... + a^(2^(k d - 1)) mod f
                let k = q.trailing_zeros() as usize * d;
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..k {
                    t = t.mulmod(&t, self, spec);
                    acc = acc.add(&t, spec);
                }
                acc
            } else {
                // a^((Q^d - 1) / 2) = (a^(1 + Q + .. + Q^(d-1)))^((Q - 1) / 2)
                let mut conj = a.clone();
                let mut norm = a.clone();
                for _ in 1..d {
                    conj = conj.powmod(q, self, spec);
                    norm = norm.mulmod(&conj, self, spec);
                }
                norm.powmod((q - 1) / 2, self, spec).sub(&Poly::one(level), spec)
            };
            let g = b.gcd(self, spec);
            if g.degree() > 0 && g.degree() < self.degree() {
                let rest = self.div_exact(&g, spec);
                let mut out = g.equal_degree(d, spec, rng);
                out.extend(rest.equal_degree(d, spec, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducible factors with
    /// multiplicities, sorted by degree then coefficients. The leading
    /// coefficient is dropped.
    pub fn factor<R: Rng + ?Sized>(&self, spec: &FieldSpec, rng: &mut R) -> Result<Vec<(Poly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (part, mult) in self.square_free(spec) {
            for (block, d) in part.distinct_degree(spec) {
                for fac in block.equal_degree(d, spec, rng) {
                    match out.iter_mut().find(|(g, _)| *g == fac) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((fac, mult)),
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    /// Roots in the coefficient level, by exhaustive evaluation.
    pub fn roots_by_search(&self, spec: &FieldSpec) -> Vec<Felt> {
        (0..spec.order(self.level))
            .map(|v| Felt::raw(self.level, v))
            .filter(|&x| self.eval(x, spec).is_zero())
            .collect()
    }
}
