//! Dense univariate polynomials over a tower level.
//!
//! Arithmetic is schoolbook throughout so that operation counts follow the
//! classical cost model. All routines take the field as an explicit
//! [`FieldOps`] handle, which lets the decoder pass a counting wrapper.

mod eea;
mod factor;

pub use eea::EeaTrace;

use std::fmt;

use thiserror::Error;

use crate::gf::{FieldOps, FieldSpec, Felt, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("deg S = {deg_s} must be below deg G = {deg_g}")]
    BadDegrees { deg_g: isize, deg_s: isize },
    #[error("the modulus G is zero")]
    ZeroModulus,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("not invertible modulo the given polynomial")]
    NotInvertible,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A polynomial with little-endian coefficients, all at one level; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    level: usize,
    coeffs: Vec<Felt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<u64> = self.coeffs.iter().map(|c| c.value()).collect();
        write!(f, "Poly@{}{:?}", self.level, vals)
    }
}

impl Poly {
    /// Builds a polynomial at `level`, trimming trailing zeros. Coefficients
    /// from lower levels are embedded.
    pub fn new(coeffs: Vec<Felt>, level: usize) -> Poly {
        let mut coeffs: Vec<Felt> = coeffs.into_iter().map(|c| c.at(level)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { level, coeffs }
    }

    pub fn zero(level: usize) -> Poly {
        Poly { level, coeffs: Vec::new() }
    }

    pub fn one(level: usize) -> Poly {
        Poly::constant(Felt::one(level), level)
    }

    pub fn constant(c: Felt, level: usize) -> Poly {
        Poly::new(vec![c], level)
    }

    /// `c x^k`.
    pub fn monomial(c: Felt, k: usize, level: usize) -> Poly {
        let mut coeffs = vec![Felt::zero(level); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs, level)
    }

    /// `x`.
    pub fn x(level: usize) -> Poly {
        Poly::monomial(Felt::one(level), 1, level)
    }

    /// `x - a`.
    pub fn linear(spec: &FieldSpec, a: Felt, level: usize) -> Poly {
        Poly::new(vec![spec.neg(a), Felt::one(level)], level)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Felt {
        self.coeffs.get(i).copied().unwrap_or(Felt::zero(self.level))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree with the zero polynomial mapped to -1 (standing in for -inf).
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Felt {
        self.coeffs.last().copied().unwrap_or(Felt::zero(self.level))
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    /// The same polynomial viewed at a higher level.
    pub fn embed(&self, level: usize) -> Poly {
        Poly::new(self.coeffs.clone(), level.max(self.level))
    }

    /// The same polynomial viewed at a lower level, if every coefficient
    /// lies in that subfield.
    pub fn restrict(&self, level: usize, spec: &FieldSpec) -> Option<Poly> {
        self.coeffs.iter().all(|&c| spec.min_level(c) <= level).then(|| Poly::new(self.coeffs.clone(), level))
    }

    fn lvl(&self, other: &Poly) -> usize {
        self.level.max(other.level)
    }

    pub fn add(&self, other: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(&a), Some(&b)) => f.add(a, b),
                (Some(&a), None) => a,
                (None, Some(&b)) => b,
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(c, self.lvl(other))
    }

    pub fn sub(&self, other: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(&a), Some(&b)) => f.sub(a, b),
                (Some(&a), None) => a,
                (None, Some(&b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(c, self.lvl(other))
    }

    pub fn neg(&self, f: &(impl FieldOps + ?Sized)) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect(), self.level)
    }

    pub fn scale(&self, s: Felt, f: &(impl FieldOps + ?Sized)) -> Poly {
        let level = self.level.max(s.level());
        if s.is_zero() {
            return Poly::zero(level);
        }
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, s)).collect(), level)
    }

    /// `self * x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Felt::zero(self.level); k];
        c.extend_from_slice(&self.coeffs);
        Poly { level: self.level, coeffs: c }
    }

    /// Drops every term of degree `k` and above.
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(k).copied().collect(), self.level)
    }

    pub fn mul(&self, other: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        let level = self.lvl(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(level);
        }
        let mut c = vec![Felt::zero(level); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                c[i + j] = f.add(c[i + j], t);
            }
        }
        Poly::new(c, level)
    }

    /// Long division: `(q, r)` with `self = q * d + r` and `deg r < deg d`.
    pub fn divmod(&self, d: &Poly, f: &(impl FieldOps + ?Sized)) -> Result<(Poly, Poly), PolyError> {
        let level = self.lvl(d);
        let dd = d.deg().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = f.inv(d.lead())?;
        let mut r: Vec<Felt> = self.coeffs.iter().map(|c| c.at(level)).collect();
        if r.len() <= dd {
            return Ok((Poly::zero(level), Poly::new(r, level)));
        }
        let mut q = vec![Felt::zero(level); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = f.mul(r[k], lead_inv);
            q[k - dd] = c;
            for j in 0..dd {
                let t = f.mul(c, d.coeffs[j]);
                r[k - dd + j] = f.sub(r[k - dd + j], t);
            }
            r[k] = Felt::zero(level);
        }
        r.truncate(dd);
        Ok((Poly::new(q, level), Poly::new(r, level)))
    }

    pub fn rem(&self, d: &Poly, f: &(impl FieldOps + ?Sized)) -> Result<Poly, PolyError> {
        Ok(self.divmod(d, f)?.1)
    }

    /// Exact quotient; the caller knows the division leaves no remainder.
    pub fn div_exact(&self, d: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        let (q, r) = self.divmod(d, f).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Felt, f: &(impl FieldOps + ?Sized)) -> Felt {
        let level = self.level.max(x.level());
        let mut acc = Felt::zero(level);
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            acc = if i + 1 == self.coeffs.len() { c.at(level) } else { f.add(f.mul(acc, x), c) };
        }
        acc
    }

    /// Formal derivative; `x^(kp)` terms vanish in characteristic `p`.
    pub fn derivative(&self, spec: &FieldSpec) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| spec.mul(c, spec.int(self.level, i as i64)))
            .collect();
        Poly::new(c, self.level)
    }

    pub fn make_monic(&self, f: &(impl FieldOps + ?Sized)) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let li = f.inv(self.lead()).expect("nonzero lead");
        self.scale(li, f)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        self.mul(other, f).rem(m, f).expect("nonzero modulus")
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        let level = self.lvl(m);
        let mut base = self.rem(m, f).expect("nonzero modulus");
        let mut acc = Poly::one(level).rem(m, f).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m, f);
            }
        }
        acc
    }

    /// Inverse modulo `m` via the extended Euclidean algorithm.
    pub fn inv_mod(&self, m: &Poly, f: &(impl FieldOps + ?Sized)) -> Result<Poly, PolyError> {
        let level = self.lvl(m);
        let (mut r0, mut r1) = (m.clone(), self.rem(m, f)?);
        let (mut s0, mut s1) = (Poly::zero(level), Poly::one(level));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, f)?;
            let s = s0.sub(&q.mul(&s1, f), f);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != 0 {
            return Err(PolyError::NotInvertible);
        }
        let c = f.inv(r0.lead())?;
        s0.scale(c, f).rem(m, f)
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &Poly, f: &(impl FieldOps + ?Sized)) -> Poly {
        let level = self.lvl(inner);
        let mut acc = Poly::zero(level);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner, f).add(&Poly::constant(c, level), f);
        }
        acc
    }

    /// Comma-separated digit strings, little-endian.
    pub fn to_text(&self, spec: &FieldSpec) -> String {
        if self.is_zero() {
            return spec.format(Felt::zero(self.level));
        }
        self.coeffs.iter().map(|&c| spec.format(c)).collect::<Vec<_>>().join(",")
    }

    /// Parses a comma-separated little-endian coefficient list; brackets are
    /// optional and each entry may be a digit string or an expression.
    pub fn parse(s: &str, spec: &FieldSpec, level: usize) -> Result<Poly, GfError> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coeffs = body.split(',').map(|c| spec.parse(c, level)).collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs, level))
    }

    /// Readable form such as `x^3 + (a)x^2 + ...` using the generator names.
    pub fn display(&self, spec: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let cs = spec.display(c);
            terms.push(match (i, c.is_one()) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("({cs}){mono}"),
            });
        }
        terms.join(" + ")
    }
}
