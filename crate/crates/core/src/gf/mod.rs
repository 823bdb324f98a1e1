//! Arithmetic in towers of finite fields.
//!
//! A tower starts at the prime field `F_p` (level 0); every further level is
//! an extension of the previous one by a monic irreducible modulus. Elements
//! are kept in the flattened polynomial basis over `F_p`: the little-endian
//! digit vector `(d_0, d_1, ..)` is packed into the integer `sum d_i p^i`.
//!
//! With this packing the copy of level `i` inside any higher level is exactly
//! the set of values below `order(i)`, so embedding an element only relabels
//! its level. Binary operations on elements of different levels therefore
//! work directly and return a result at the higher of the two levels.
//!
//! Levels of order up to [`LOG_TABLE_MAX_ORDER`] get exp/log tables; the
//! tables are an accelerator only and never change a result.

mod expr;
mod ops;

pub use ops::{CountingField, FieldOps, OpCounts};

use rand::Rng;
use thiserror::Error;

use crate::poly::Poly;

/// Largest level order that gets exp/log multiplication tables.
pub const LOG_TABLE_MAX_ORDER: u64 = 1 << 20;

/// Default bound on the number of elements [`FieldSpec::enumerate`] will list.
pub const DEFAULT_ENUM_BOUND: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not a supported prime")]
    NotPrime(u64),
    #[error("modulus of stage {stage} is reducible over the previous stage")]
    ReducibleModulus { stage: usize },
    #[error("modulus of stage {stage}: {reason}")]
    DegreeMismatch { stage: usize, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },
    #[error("field of order {order} exceeds the bound {bound}")]
    TooLarge { order: u128, bound: u128 },
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

impl GfError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        GfError::Parse { input: input.to_string(), reason: reason.into() }
    }
}

/// A field element: a tower level plus its packed digit vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Felt {
    level: u8,
    value: u64,
}

impl Felt {
    pub(crate) const fn raw(level: usize, value: u64) -> Felt {
        Felt { level: level as u8, value }
    }

    pub const fn zero(level: usize) -> Felt {
        Felt::raw(level, 0)
    }

    pub const fn one(level: usize) -> Felt {
        Felt::raw(level, 1)
    }

    pub fn level(self) -> usize {
        self.level as usize
    }

    /// The packed little-endian digit vector; also the element's position in
    /// the canonical enumeration order of its level.
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_one(self) -> bool {
        self.value == 1
    }

    /// Same element viewed at another level. The caller guarantees the value
    /// fits; use [`FieldSpec::embed`] for a checked version.
    pub(crate) fn at(self, level: usize) -> Felt {
        Felt::raw(level, self.value)
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
struct LevelData {
    degree: usize,
    digits: usize,
    order: u64,
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

/// An immutable, validated field tower.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u64,
    levels: Vec<LevelData>,
    names: Vec<char>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

const DEFAULT_NAMES: &str = "abcdefghijklmnopqrsuvwy";

impl FieldSpec {
    /// The prime field `F_p` alone.
    pub fn prime(p: u64) -> Result<FieldSpec, GfError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(GfError::NotPrime(p));
        }
        let mut spec = FieldSpec {
            p,
            levels: vec![LevelData { degree: 1, digits: 1, order: p, modulus: Vec::new(), tables: None }],
            names: Vec::new(),
        };
        spec.levels[0].tables = spec.build_tables(0);
        Ok(spec)
    }

    /// Builds a tower from `p` and one modulus per stage. Each modulus is a
    /// little-endian coefficient list of packed elements of the previous
    /// level and must be monic, of degree at least one, and irreducible.
    pub fn build(p: u64, moduli: &[Vec<u64>]) -> Result<FieldSpec, GfError> {
        let mut spec = FieldSpec::prime(p)?;
        for m in moduli {
            spec = spec.extend(m)?;
        }
        Ok(spec)
    }

    /// Adds one stage on top of the current tower.
    pub fn extend(mut self, modulus: &[u64]) -> Result<FieldSpec, GfError> {
        let stage = self.levels.len();
        let base = stage - 1;
        let base_order = self.order(base);
        if modulus.len() < 2 {
            return Err(GfError::DegreeMismatch { stage, reason: "degree must be at least 1".into() });
        }
        if *modulus.last().unwrap() != 1 {
            return Err(GfError::DegreeMismatch { stage, reason: "modulus must be monic".into() });
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= base_order) {
            return Err(GfError::DegreeMismatch {
                stage,
                reason: format!("coefficient {c} is not an element of the previous stage"),
            });
        }
        let degree = modulus.len() - 1;
        let digits = self.levels[base].digits * degree;
        let order = (self.p as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
        if order > u64::MAX as u128 {
            return Err(GfError::TooLarge { order, bound: u64::MAX as u128 });
        }
        let poly = Poly::new(modulus.iter().map(|&c| Felt::raw(base, c)).collect(), base);
        if !poly.is_irreducible(&self) {
            return Err(GfError::ReducibleModulus { stage });
        }
        self.levels.push(LevelData { degree, digits, order: order as u64, modulus: modulus.to_vec(), tables: None });
        self.levels[stage].tables = self.build_tables(stage);
        Ok(self)
    }

    /// Replaces the generator names used by the expression parser and by
    /// [`FieldSpec::display`]. One character per stage, e.g. `"z"`.
    pub fn with_names(mut self, names: &str) -> FieldSpec {
        self.names = names.chars().collect();
        self
    }

    fn build_tables(&self, level: usize) -> Option<LogTables> {
        let q = self.order(level);
        if !(3..=LOG_TABLE_MAX_ORDER).contains(&q) {
            return None;
        }
        let n = q - 1;
        let factors = prime_factors(n);
        let generator = (2..q)
            .find(|&x| factors.iter().all(|&r| self.pow_generic(level, x, n / r) != 1))
            .unwrap_or(1);
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..n as usize {
            exp[i] = x as u32;
            exp[i + n as usize] = x as u32;
            log[x as usize] = i as u32;
            x = self.mul_generic(level, x, generator);
        }
        Some(LogTables { exp, log })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Index of the top level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn order(&self, level: usize) -> u64 {
        self.levels[level].order
    }

    /// Number of `F_p` digits of an element at `level`.
    pub fn digits(&self, level: usize) -> usize {
        self.levels[level].digits
    }

    /// Extension degree of `level` over the level directly below.
    pub fn stage_degree(&self, level: usize) -> usize {
        self.levels[level].degree
    }

    /// Extension degree of `level` over `base`.
    pub fn degree_over(&self, level: usize, base: usize) -> usize {
        self.digits(level) / self.digits(base)
    }

    /// Modulus of `level` as elements of the level below (little-endian).
    pub fn modulus(&self, level: usize) -> Vec<Felt> {
        self.levels[level].modulus.iter().map(|&c| Felt::raw(level - 1, c)).collect()
    }

    pub fn name(&self, level: usize) -> char {
        self.names
            .get(level - 1)
            .copied()
            .unwrap_or_else(|| DEFAULT_NAMES.chars().nth(level - 1).unwrap_or('?'))
    }

    /// The root of the modulus adjoined at `level` (level >= 1).
    pub fn generator(&self, level: usize) -> Felt {
        Felt::raw(level, self.order(level - 1))
    }

    /// Checked constructor from a packed value.
    pub fn elem(&self, level: usize, value: u64) -> Result<Felt, GfError> {
        if level > self.top() {
            return Err(GfError::LevelMismatch { left: level, right: self.top() });
        }
        if value >= self.order(level) {
            return Err(GfError::parse(&value.to_string(), "value exceeds field order"));
        }
        Ok(Felt::raw(level, value))
    }

    /// The prime-field image of an integer at `level`.
    pub fn int(&self, level: usize, n: i64) -> Felt {
        Felt::raw(level, n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_digits(&self, level: usize, digits: &[u64]) -> Result<Felt, GfError> {
        if digits.len() > self.digits(level) || digits.iter().any(|&d| d >= self.p) {
            return Err(GfError::parse(&format!("{digits:?}"), "bad digit vector"));
        }
        let v = digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d);
        Ok(Felt::raw(level, v))
    }

    /// Full-length little-endian digit vector.
    pub fn to_digits(&self, x: Felt) -> Vec<u64> {
        let mut v = x.value;
        (0..self.digits(x.level()))
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// Coordinates of `x` over the level `base` in the flattened basis.
    pub fn coords(&self, x: Felt, base: usize) -> Vec<Felt> {
        let bo = self.order(base);
        let k = self.degree_over(x.level().max(base), base);
        let mut v = x.value;
        (0..k)
            .map(|_| {
                let c = v % bo;
                v /= bo;
                Felt::raw(base, c)
            })
            .collect()
    }

    /// Inverse of [`FieldSpec::coords`].
    pub fn from_coords(&self, level: usize, coords: &[Felt]) -> Felt {
        let bo = self.order(coords.first().map_or(0, |c| c.level()));
        let v = coords.iter().rev().fold(0u64, |acc, c| acc * bo + c.value);
        Felt::raw(level, v)
    }

    /// Embeds `x` into a level at or above its own.
    pub fn embed(&self, x: Felt, level: usize) -> Result<Felt, GfError> {
        if level < x.level() || level > self.top() {
            return Err(GfError::LevelMismatch { left: x.level(), right: level });
        }
        Ok(x.at(level))
    }

    /// Smallest tower level containing `x`.
    pub fn min_level(&self, x: Felt) -> usize {
        (0..=x.level()).find(|&l| x.value < self.order(l)).unwrap_or(x.level())
    }

    /// Whether `x` lies in the subfield given by `level`, decided by the
    /// Frobenius test `x^order(level) == x`.
    pub fn in_subfield(&self, x: Felt, level: usize) -> bool {
        self.pow(x, self.order(level)) == x
    }

    /// All elements of `level` in canonical order (ascending packed value,
    /// i.e. lexicographic on the reversed digit vector: 0, 1, a, a+1, ..).
    pub fn enumerate(&self, level: usize, bound: u64) -> Result<impl Iterator<Item = Felt>, GfError> {
        let q = self.order(level);
        if q > bound {
            return Err(GfError::TooLarge { order: q as u128, bound: bound as u128 });
        }
        Ok((0..q).map(move |v| Felt::raw(level, v)))
    }

    pub fn random<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Felt {
        Felt::raw(level, rng.gen_range(0..self.order(level)))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Felt {
        Felt::raw(level, rng.gen_range(1..self.order(level)))
    }

    // ---- arithmetic on packed values ----

    fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let (mut r, mut m) = (0u64, 1u64);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * m;
            a /= p;
            b /= p;
            m = m.wrapping_mul(p);
        }
        r
    }

    fn neg_raw(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let (p, mut a) = (self.p, a);
        let (mut r, mut m) = (0u64, 1u64);
        while a > 0 {
            r += ((p - a % p) % p) * m;
            a /= p;
            m = m.wrapping_mul(p);
        }
        r
    }

    fn mul_raw(&self, level: usize, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if level == 0 {
            return a * b % self.p;
        }
        let lv = &self.levels[level];
        if let Some(t) = &lv.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64;
        }
        let below = self.levels[level - 1].order;
        if a < below && b < below {
            return self.mul_raw(level - 1, a, b);
        }
        self.mul_generic(level, a, b)
    }

    /// Schoolbook multiplication in the stage basis followed by reduction
    /// modulo the stage modulus; used to seed tables and for large levels.
    fn mul_generic(&self, level: usize, a: u64, b: u64) -> u64 {
        if level == 0 {
            return a * b % self.p;
        }
        let lv = &self.levels[level];
        let d = lv.degree;
        let below = self.levels[level - 1].order;
        let split = |mut v: u64| -> Vec<u64> {
            (0..d)
                .map(|_| {
                    let c = v % below;
                    v /= below;
                    c
                })
                .collect()
        };
        let (xa, xb) = (split(a), split(b));
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &ai) in xa.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in xb.iter().enumerate() {
                let t = self.mul_raw(level - 1, ai, bj);
                prod[i + j] = self.add_raw(prod[i + j], t);
            }
        }
        for k in (d..2 * d - 1).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            for j in 0..d {
                let t = self.mul_raw(level - 1, lead, lv.modulus[j]);
                prod[k - d + j] = self.add_raw(prod[k - d + j], self.neg_raw(t));
            }
            prod[k] = 0;
        }
        prod[..d].iter().rev().fold(0u64, |acc, &c| acc * below + c)
    }

    fn pow_generic(&self, level: usize, mut x: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_generic(level, r, x);
            }
            x = self.mul_generic(level, x, x);
            e >>= 1;
        }
        r
    }

    fn pow_raw(&self, level: usize, x: u64, e: u64) -> u64 {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if let Some(t) = &self.levels[level].tables {
            let n = self.order(level) - 1;
            let l = (t.log[x as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return t.exp[l] as u64;
        }
        let (mut r, mut x, mut e) = (1u64, x, e);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_raw(level, r, x);
            }
            x = self.mul_raw(level, x, x);
            e >>= 1;
        }
        r
    }

    // ---- public arithmetic; mixed levels are promoted to the higher one ----

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        Felt::raw(a.level().max(b.level()), self.add_raw(a.value, b.value))
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        Felt::raw(a.level().max(b.level()), self.add_raw(a.value, self.neg_raw(b.value)))
    }

    pub fn neg(&self, a: Felt) -> Felt {
        Felt::raw(a.level(), self.neg_raw(a.value))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        let level = a.level().max(b.level());
        Felt::raw(level, self.mul_raw(level, a.value, b.value))
    }

    pub fn pow(&self, x: Felt, e: u64) -> Felt {
        Felt::raw(x.level(), self.pow_raw(x.level(), x.value, e))
    }

    pub fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let level = a.level();
        if let Some(t) = &self.levels[level].tables {
            let n = self.order(level) - 1;
            let l = (n - t.log[a.value as usize] as u64) % n;
            return Ok(Felt::raw(level, t.exp[l as usize] as u64));
        }
        Ok(self.pow(a, self.order(level) - 2))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The unique `y` with `y^p = x`.
    pub fn pth_root(&self, x: Felt) -> Felt {
        self.pow(x, self.order(x.level()) / self.p)
    }

    // ---- strict variants that refuse mixed levels ----

    fn same_level(a: Felt, b: Felt) -> Result<(), GfError> {
        if a.level != b.level {
            return Err(GfError::LevelMismatch { left: a.level(), right: b.level() });
        }
        Ok(())
    }

    pub fn f_add(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Self::same_level(a, b)?;
        Ok(self.add(a, b))
    }

    pub fn f_sub(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Self::same_level(a, b)?;
        Ok(self.sub(a, b))
    }

    pub fn f_mul(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Self::same_level(a, b)?;
        Ok(self.mul(a, b))
    }

    pub fn f_inv(&self, a: Felt) -> Result<Felt, GfError> {
        self.inv(a)
    }

    pub fn f_pow(&self, a: Felt, e: u64) -> Felt {
        self.pow(a, e)
    }

    // ---- text forms ----

    /// Digit-string form of `x`: one character per digit, little-endian, for
    /// `p < 10`; dot-separated decimal digits otherwise.
    pub fn format(&self, x: Felt) -> String {
        let digits = self.to_digits(x);
        if self.p < 10 {
            digits.iter().map(|d| char::from(b'0' + *d as u8)).collect()
        } else {
            digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
        }
    }

    /// Parses a digit string (as produced by [`FieldSpec::format`], possibly
    /// shorter, meaning an element of a subfield) or an expression in the
    /// generator names such as `(a+1)b+a` or `a^3c+a^17`.
    pub fn parse(&self, s: &str, level: usize) -> Result<Felt, GfError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GfError::parse(s, "empty"));
        }
        let digit_string = s.chars().all(|c| c.is_ascii_digit() || (self.p >= 10 && c == '.'));
        if !digit_string {
            return expr::parse_expr(self, s, level);
        }
        let digits: Vec<u64> = if self.p < 10 {
            s.bytes().map(|b| (b - b'0') as u64).collect()
        } else {
            s.split('.')
                .map(|d| d.parse::<u64>().map_err(|_| GfError::parse(s, "bad digit")))
                .collect::<Result<_, _>>()?
        };
        self.from_digits(level, &digits).map_err(|_| GfError::parse(s, "digit out of range or too many digits"))
    }

    /// Human-readable form in the generator names, e.g. `a^3*c + a^17` is
    /// rendered as a sum of coefficient-times-monomial terms.
    pub fn display(&self, x: Felt) -> String {
        expr::display(self, x)
    }

    /// `p` followed by one comma-separated coefficient list per stage, then
    /// the generator names when they differ from the defaults.
    pub fn to_text(&self) -> String {
        let mut out = self.p.to_string();
        for level in 1..=self.top() {
            let coeffs: Vec<String> = self.modulus(level).iter().map(|&c| self.format(c)).collect();
            out.push(' ');
            out.push_str(&coeffs.join(","));
        }
        if !self.names.is_empty() {
            out.push_str(" names=");
            out.extend(self.names.iter());
        }
        out
    }

    pub fn from_text(s: &str) -> Result<FieldSpec, GfError> {
        let mut tokens = s.split_whitespace();
        let p: u64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GfError::parse(s, "missing characteristic"))?;
        let mut spec = FieldSpec::prime(p)?;
        let rest: Vec<&str> = tokens.collect();
        if let Some(n) = rest.iter().find_map(|t| t.strip_prefix("names=")) {
            spec = spec.with_names(n);
        }
        for tok in rest.iter().filter(|t| !t.starts_with("names=")) {
            let base = spec.top();
            let coeffs = tok
                .split(',')
                .map(|c| spec.parse(c, base).map(|f| f.value))
                .collect::<Result<Vec<_>, _>>()?;
            let names = spec.names.clone();
            spec = spec.extend(&coeffs)?;
            spec.names = names;
        }
        Ok(spec)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a.modulus == b.modulus)
    }
}

impl Eq for FieldSpec {}

/// Towers used throughout the examples and tests.
pub mod towers {
    use super::FieldSpec;

    /// `F_2 < F_4 = F_2(a) < F_16 = F_4(b) < F_256 = F_16(c)` with moduli
    /// `x^2+x+1`, `x^2+x+a`, `x^2+ax+ab`.
    pub fn f2_4_16_256() -> FieldSpec {
        FieldSpec::from_text("2 1,1,1 01,10,10 0001,01,10").expect("built-in tower")
    }

    /// `F_2 < F_4 < F_16`.
    pub fn f2_4_16() -> FieldSpec {
        FieldSpec::from_text("2 1,1,1 01,10,10").expect("built-in tower")
    }

    /// `F_2 < F_32 = F_2(a) < F_1024 = F_32(c)` with moduli `x^5+x^2+1` and
    /// `x^2+x+1`.
    pub fn f2_32_1024() -> FieldSpec {
        FieldSpec::from_text("2 1,0,1,0,0,1 10000,10000,10000 names=ac").expect("built-in tower")
    }

    /// `F_2 < F_64 < F_4096` with moduli `x^6+x+1` and `x^2+x+a^5`.
    pub fn f2_64_4096() -> FieldSpec {
        FieldSpec::from_text("2 1,1,0,0,0,0,1 000001,100000,100000").expect("built-in tower")
    }

    /// `F_2 < F_512 < F_2^18` with moduli `x^9+x^4+1` and `x^2+x+1`.
    pub fn f2_512_2p18() -> FieldSpec {
        FieldSpec::from_text("2 1,0,0,0,1,0,0,0,0,1 100000000,100000000,100000000").expect("built-in tower")
    }

    /// `F_3 < F_9 = F_3(z)` with modulus `z^2+2z+2`.
    pub fn f3_9() -> FieldSpec {
        FieldSpec::from_text("3 2,2,1 names=z").expect("built-in tower")
    }

    /// `F_3 < F_9 = F_3(z) < F_81 = F_9(w)` with moduli `z^2+2z+2`, `x^2+x+z`.
    pub fn f3_9_81() -> FieldSpec {
        FieldSpec::from_text("3 2,2,1 01,10,10 names=zw").expect("built-in tower")
    }

    /// `F_2 < F_8` with modulus `x^3+x+1`.
    pub fn f2_8() -> FieldSpec {
        FieldSpec::from_text("2 1,1,0,1").expect("built-in tower")
    }

    pub const NAMES: [&str; 8] = ["f2_4_16_256", "f2_4_16", "f2_32_1024", "f2_64_4096", "f2_512_2p18", "f3_9", "f3_9_81", "f2_8"];

    /// A built-in tower by its function name.
    pub fn by_name(name: &str) -> Option<FieldSpec> {
        let spec = match name {
            "f2_4_16_256" => f2_4_16_256(),
            "f2_4_16" => f2_4_16(),
            "f2_32_1024" => f2_32_1024(),
            "f2_64_4096" => f2_64_4096(),
            "f2_512_2p18" => f2_512_2p18(),
            "f3_9" => f3_9(),
            "f3_9_81" => f3_9_81(),
            "f2_8" => f2_8(),
            _ => return None,
        };
        Some(spec)
    }
}
