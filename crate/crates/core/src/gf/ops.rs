use std::cell::Cell;
use std::ops::{Add, Sub};

use super::{FieldSpec, Felt, GfError};

/// Field arithmetic as seen by polynomial and decoding code. Implemented by
/// [`FieldSpec`] directly and by [`CountingField`], which tallies operations.
pub trait FieldOps {
    fn spec(&self) -> &FieldSpec;
    fn add(&self, a: Felt, b: Felt) -> Felt;
    fn sub(&self, a: Felt, b: Felt) -> Felt;
    fn mul(&self, a: Felt, b: Felt) -> Felt;
    fn inv(&self, a: Felt) -> Result<Felt, GfError>;

    fn neg(&self, a: Felt) -> Felt {
        self.spec().neg(a)
    }

    fn div(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, bi))
    }
}

impl FieldOps for FieldSpec {
    fn spec(&self) -> &FieldSpec {
        self
    }
    fn add(&self, a: Felt, b: Felt) -> Felt {
        FieldSpec::add(self, a, b)
    }
    fn sub(&self, a: Felt, b: Felt) -> Felt {
        FieldSpec::sub(self, a, b)
    }
    fn mul(&self, a: Felt, b: Felt) -> Felt {
        FieldSpec::mul(self, a, b)
    }
    fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        FieldSpec::inv(self, a)
    }
}

/// Operation tallies. Subtractions count as additions; negations are free.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub mul: u64,
    pub add: u64,
    pub inv: u64,
}

impl OpCounts {
    pub fn mul_add(&self) -> u64 {
        self.mul + self.add
    }
}

impl Add for OpCounts {
    type Output = OpCounts;
    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts { mul: self.mul + o.mul, add: self.add + o.add, inv: self.inv + o.inv }
    }
}

impl Sub for OpCounts {
    type Output = OpCounts;
    fn sub(self, o: OpCounts) -> OpCounts {
        OpCounts { mul: self.mul - o.mul, add: self.add - o.add, inv: self.inv - o.inv }
    }
}

/// A per-call counting wrapper around a [`FieldSpec`].
pub struct CountingField<'a> {
    spec: &'a FieldSpec,
    counts: Cell<OpCounts>,
}

impl<'a> CountingField<'a> {
    pub fn new(spec: &'a FieldSpec) -> Self {
        CountingField { spec, counts: Cell::new(OpCounts::default()) }
    }

    pub fn counts(&self) -> OpCounts {
        self.counts.get()
    }

    fn bump(&self, f: impl FnOnce(&mut OpCounts)) {
        let mut c = self.counts.get();
        f(&mut c);
        self.counts.set(c);
    }
}

impl FieldOps for CountingField<'_> {
    fn spec(&self) -> &FieldSpec {
        self.spec
    }
    fn add(&self, a: Felt, b: Felt) -> Felt {
        self.bump(|c| c.add += 1);
        self.spec.add(a, b)
    }
    fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.bump(|c| c.add += 1);
        self.spec.sub(a, b)
    }
    fn mul(&self, a: Felt, b: Felt) -> Felt {
        self.bump(|c| c.mul += 1);
        self.spec.mul(a, b)
    }
    fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        self.bump(|c| c.inv += 1);
        self.spec.inv(a)
    }
}
