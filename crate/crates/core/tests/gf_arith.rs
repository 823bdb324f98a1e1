mod common;

use common::el;
use mtg::gf::{towers, FieldSpec, Felt, GfError};
use proptest::prelude::*;

/// Schoolbook tower arithmetic written only against digit vectors and the
/// stage moduli, used as an oracle for the library's multiplication.
mod oracle {
    use mtg::gf::{FieldSpec, Felt};

    pub fn add(spec: &FieldSpec, a: Felt, b: Felt) -> Felt {
        let p = spec.p();
        let d: Vec<u64> = spec.to_digits(a).iter().zip(spec.to_digits(b)).map(|(x, y)| (x + y) % p).collect();
        spec.from_digits(a.level(), &d).unwrap()
    }

    pub fn neg(spec: &FieldSpec, a: Felt) -> Felt {
        let p = spec.p();
        let d: Vec<u64> = spec.to_digits(a).iter().map(|x| (p - x) % p).collect();
        spec.from_digits(a.level(), &d).unwrap()
    }

    pub fn mul(spec: &FieldSpec, a: Felt, b: Felt) -> Felt {
        let level = a.level();
        if level == 0 {
            return spec.elem(0, a.value() * b.value() % spec.p()).unwrap();
        }
        let below = level - 1;
        let ca = spec.coords(a, below);
        let cb = spec.coords(b, below);
        let k = ca.len();
        let zero = spec.elem(below, 0).unwrap();
        let mut prod = vec![zero; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = add(spec, prod[i + j], mul(spec, ca[i], cb[j]));
            }
        }
        let m = spec.modulus(level);
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            for j in 0..k {
                prod[i - k + j] = add(spec, prod[i - k + j], neg(spec, mul(spec, c, m[j])));
            }
        }
        spec.from_coords(level, &prod[..k])
    }

    pub fn pow(spec: &FieldSpec, a: Felt, e: u64) -> Felt {
        let mut acc = spec.elem(a.level(), 1).unwrap();
        for _ in 0..e {
            acc = mul(spec, acc, a);
        }
        acc
    }
}

fn all_towers() -> Vec<FieldSpec> {
    towers::NAMES.iter().map(|n| towers::by_name(n).unwrap()).collect()
}

fn tower_and_level() -> impl Strategy<Value = (usize, usize)> {
    (0..towers::NAMES.len()).prop_flat_map(|i| {
        let top = towers::by_name(towers::NAMES[i]).unwrap().top();
        (Just(i), 0..=top)
    })
}

fn elements(spec: &FieldSpec, level: usize, raw: &[u64]) -> Vec<Felt> {
    raw.iter().map(|&r| spec.elem(level, r % spec.order(level)).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn mul_matches_schoolbook_oracle((i, level) in tower_and_level(), raw in proptest::collection::vec(any::<u64>(), 2)) {
        let spec = towers::by_name(towers::NAMES[i]).unwrap();
        let x = elements(&spec, level, &raw);
        prop_assert_eq!(spec.mul(x[0], x[1]), oracle::mul(&spec, x[0], x[1]));
        prop_assert_eq!(spec.add(x[0], x[1]), oracle::add(&spec, x[0], x[1]));
    }

    #[test]
    fn field_axioms((i, level) in tower_and_level(), raw in proptest::collection::vec(any::<u64>(), 3)) {
        let spec = towers::by_name(towers::NAMES[i]).unwrap();
        let x = elements(&spec, level, &raw);
        let (a, b, c) = (x[0], x[1], x[2]);
        prop_assert_eq!(spec.mul(spec.mul(a, b), c), spec.mul(a, spec.mul(b, c)));
        prop_assert_eq!(spec.add(spec.add(a, b), c), spec.add(a, spec.add(b, c)));
        prop_assert_eq!(spec.mul(a, b), spec.mul(b, a));
        prop_assert_eq!(spec.mul(a, spec.add(b, c)), spec.add(spec.mul(a, b), spec.mul(a, c)));
        prop_assert!(spec.add(a, spec.neg(a)).is_zero());
        prop_assert_eq!(spec.sub(a, b), spec.add(a, spec.neg(b)));
        if !a.is_zero() {
            let ai = spec.inv(a).unwrap();
            prop_assert!(spec.mul(a, ai).is_one());
            prop_assert_eq!(spec.div(b, a).unwrap(), spec.mul(b, ai));
        }
    }

    #[test]
    fn frobenius_and_order((i, level) in tower_and_level(), raw in proptest::collection::vec(any::<u64>(), 2)) {
        let spec = towers::by_name(towers::NAMES[i]).unwrap();
        let x = elements(&spec, level, &raw);
        let p = spec.p();
        prop_assert_eq!(spec.pow(x[0], spec.order(level)), x[0]);
        prop_assert_eq!(spec.pow(spec.add(x[0], x[1]), p), spec.add(spec.pow(x[0], p), spec.pow(x[1], p)));
        prop_assert_eq!(spec.pow(x[0], 5), oracle::pow(&spec, x[0], 5));
    }

    #[test]
    fn subfield_membership_matches_min_level((i, level) in tower_and_level(), r in any::<u64>()) {
        let spec = towers::by_name(towers::NAMES[i]).unwrap();
        let x = elements(&spec, level, &[r])[0];
        let low = spec.min_level(x);
        for l in 0..=level {
            prop_assert_eq!(spec.in_subfield(x, l), l >= low);
        }
        prop_assert_eq!(spec.embed(x, spec.top()).unwrap().value(), x.value());
    }

    #[test]
    fn text_round_trips((i, level) in tower_and_level(), r in any::<u64>()) {
        let spec = towers::by_name(towers::NAMES[i]).unwrap();
        let x = elements(&spec, level, &[r])[0];
        prop_assert_eq!(spec.parse(&spec.format(x), level).unwrap(), x);
        prop_assert_eq!(spec.parse(&spec.display(x), level).unwrap(), x);
        for base in 0..=level {
            let c = spec.coords(x, base);
            prop_assert_eq!(c.len(), spec.degree_over(level, base));
            prop_assert_eq!(spec.from_coords(level, &c), x);
        }
    }
}

#[test]
fn small_tables() {
    let f = towers::f2_4_16_256();
    let a = el(&f, "a");
    // a^2 + a + 1 = 0, b^2 + b + a = 0, c^2 + a c + a b = 0
    assert_eq!(f.mul(a, a), el(&f, "a+1"));
    let b = el(&f, "b");
    assert_eq!(f.mul(b, b), el(&f, "b+a"));
    let c = el(&f, "c");
    assert_eq!(f.mul(c, c), el(&f, "ac+ab"));

    let f9 = towers::f3_9();
    let z = el(&f9, "z");
    assert_eq!(f9.mul(z, z), el(&f9, "z+1"));
    assert_eq!(f9.display(f9.mul(z, z)), "z+1");
}

#[test]
fn generator_orders() {
    let f = towers::f2_32_1024();
    let a = f.parse("a", 1).unwrap();
    let order = (1..=31).find(|&k| f.pow(a, k).is_one()).unwrap();
    assert_eq!(order, 31);
    // a^5 = a^2 + 1
    assert_eq!(f.pow(a, 5), f.parse("a^2+1", 1).unwrap());
    assert_eq!(f.parse("a^8", 1).unwrap(), f.parse("a^3+a^2+1", 1).unwrap());
}

#[test]
fn every_nonzero_element_is_invertible_in_small_fields() {
    for spec in [towers::f2_4_16(), towers::f3_9(), towers::f2_8()] {
        let top = spec.top();
        for x in spec.enumerate(top, 1 << 10).unwrap().skip(1) {
            let inv = spec.enumerate(top, 1 << 10).unwrap().filter(|&y| spec.mul(x, y).is_one()).collect::<Vec<_>>();
            assert_eq!(inv, vec![spec.inv(x).unwrap()]);
        }
    }
}

#[test]
fn canonical_order_and_levels() {
    let f = towers::f2_4_16();
    let listed: Vec<String> = f.enumerate(1, 16).unwrap().map(|x| f.display(x)).collect();
    assert_eq!(listed, ["0", "1", "a", "a+1"]);
    assert_eq!(f.order(2), 16);
    assert_eq!(f.degree_over(2, 0), 4);
    assert_eq!(f.degree_over(2, 1), 2);
    assert!(f.enumerate(2, 8).is_err());
}

#[test]
fn field_text_round_trips() {
    for spec in all_towers() {
        let again = FieldSpec::from_text(&spec.to_text()).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.to_text(), spec.to_text());
    }
}

#[test]
fn rejects_bad_towers() {
    assert!(matches!(FieldSpec::prime(4), Err(GfError::NotPrime(4))));
    // x^2 + 1 = (x + 1)^2 over F_2
    assert!(matches!(FieldSpec::from_text("2 1,0,1"), Err(GfError::ReducibleModulus { stage: 1 })));
    assert!(matches!(FieldSpec::from_text("2 1,1,0"), Err(GfError::DegreeMismatch { .. })));
    assert!(FieldSpec::from_text("x 1,1,1").is_err());
}

#[test]
fn division_by_zero_and_bad_input() {
    let f = towers::f2_4_16();
    assert_eq!(f.inv(Felt::zero(2)), Err(GfError::DivisionByZero));
    assert!(f.parse("q", 2).is_err());
    assert!(f.parse("12", 2).is_err());
    assert!(f.parse("00001", 2).is_err());
    assert!(f.elem(2, 16).is_err());
}
